"""Finite groups, finite abelian groups, their duals, and group actions"""

from __future__ import annotations

import functools
import itertools
import math
import typing

import numpy as np
import pydantic
from pydantic import ConfigDict
from sympy.combinatorics.named_groups import SymmetricGroup

from .scalars import Cyclotomic, root_of_unity


class FiniteGroup(pydantic.BaseModel):
    """A finite group given by its multiplication table on the indices 0..n-1."""

    table: tuple[tuple[pydantic.NonNegativeInt, ...], ...]

    model_config = ConfigDict(frozen=True)

    @pydantic.model_validator(mode='after')
    def validate_table(self) -> FiniteGroup:
        n = len(self.table)
        if n == 0:
            raise ValueError('a group table needs at least one element')
        if any(len(row) != n for row in self.table):
            raise ValueError(f'the multiplication table must be square ({n}x{n})')
        if any(entry >= n for row in self.table for entry in row):
            raise ValueError(f'table entries must be element indices in 0..{n - 1}')
        t = self.array
        mismatch = np.argwhere(t[t, :] != t[:, t])
        if len(mismatch):
            g, h, k = (int(v) for v in mismatch[0])
            raise ValueError(f'table is not associative: (g·h)·k != g·(h·k) at (g, h, k)={(g, h, k)}')
        candidates = [e for e in range(n) if all(t[e, g] == g and t[g, e] == g for g in range(n))]
        if not candidates:
            raise ValueError('table has no identity element')
        e = candidates[0]
        for g in range(n):
            if not any(t[g, h] == e and t[h, g] == e for h in range(n)):
                raise ValueError(f'element {g} has no inverse')
        return self

    # equality is by table alone; cached derived data never takes part
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    @functools.cached_property
    def identity(self) -> int:
        t = self.table
        return next(e for e in self.elements if all(t[e][g] == g for g in self.elements))

    @functools.cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(h for h in self.elements if self.table[g][h] == e) for g in self.elements)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def conj(self, g: int, x: int) -> int:
        """g x g⁻¹"""
        return self.table[self.table[g][x]][self.inverses[g]]

    def product(self, *elements: int) -> int:
        return functools.reduce(self.mul, elements, self.identity)

    def commutes(self, g: int, h: int) -> bool:
        return self.table[g][h] == self.table[h][g]

    @functools.cached_property
    def is_abelian(self) -> bool:
        return bool((self.array == self.array.T).all())

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k


class AbelianGroup(pydantic.BaseModel):
    """Z_{n1} × ... × Z_{nk}; elements are exponent tuples, enumerated in lexicographic order."""

    factors: tuple[pydantic.PositiveInt, ...] = ()

    model_config = ConfigDict(frozen=True)

    @functools.cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*(range(n) for n in self.factors)))

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def elements_range(self) -> range:
        return range(self.order)

    @property
    def zero(self) -> int:
        return 0

    @functools.cached_property
    def exponent(self) -> int:
        return math.lcm(*self.factors) if self.factors else 1

    def index(self, element: typing.Sequence[int] | int) -> int:
        if isinstance(element, int):
            if not 0 <= element < self.order:
                raise ValueError(f'{element} is not an element index of {self}')
            return element
        if len(element) != len(self.factors):
            raise ValueError(f'{element} has the wrong length for factors {self.factors}')
        idx = 0
        for value, n in zip(element, self.factors):
            idx = idx * n + value % n
        return idx

    def element(self, index: int) -> tuple[int, ...]:
        return self.elements[index]

    @functools.cached_property
    def _add_table(self) -> tuple[tuple[int, ...], ...]:
        lookup = {el: i for i, el in enumerate(self.elements)}
        return tuple(
            tuple(
                lookup[tuple((x + y) % n for x, y, n in zip(a, b, self.factors))]
                for b in self.elements
            )
            for a in self.elements
        )

    @functools.cached_property
    def _neg_table(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self._add_table)

    def add(self, a: int, b: int) -> int:
        return self._add_table[a][b]

    def neg(self, a: int) -> int:
        return self._neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self._add_table[a][self._neg_table[b]]

    def sum(self, *terms: int) -> int:
        return functools.reduce(self.add, terms, 0)

    def generators(self) -> tuple[int, ...]:
        """Indices of the unit exponent vectors."""
        return tuple(
            self.index(tuple(int(m == k) for m in range(len(self.factors))))
            for k in range(len(self.factors))
        )


class DualCharacter(pydantic.BaseModel):
    """A homomorphism ρ: A → μ_∞ given by exponents, ρ(a) = Π ζ_{n_m}^{ρ_m a_m}."""

    group: AbelianGroup
    exponents: tuple[int, ...]

    model_config = ConfigDict(frozen=True)

    @pydantic.model_validator(mode='before')
    @classmethod
    def reduce_exponents(cls, data: typing.Any) -> typing.Any:
        if isinstance(data, dict) and 'group' in data and 'exponents' in data:
            group = data['group']
            factors = group.factors if isinstance(group, AbelianGroup) else tuple(group['factors'])
            exponents = tuple(data['exponents'])
            if len(exponents) != len(factors):
                raise ValueError(
                    f'character exponents {exponents} do not match factors {factors}'
                )
            data = {**data, 'exponents': tuple(r % n for r, n in zip(exponents, factors))}
        return data

    def phase(self, a: int) -> int:
        """ρ(a) = ζ_E^phase with E the exponent of the group."""
        E = self.group.exponent
        element = self.group.element(a)
        return sum(r * x * (E // n) for r, x, n in zip(self.exponents, element, self.group.factors)) % E

    def __call__(self, a: int) -> Cyclotomic:
        return root_of_unity(self.group.exponent, self.phase(a))

    def __mul__(self, other: DualCharacter) -> DualCharacter:
        return DualCharacter(
            group=self.group, exponents=tuple(x + y for x, y in zip(self.exponents, other.exponents))
        )

    def conjugate(self) -> DualCharacter:
        return DualCharacter(group=self.group, exponents=tuple(-x for x in self.exponents))

    def precompose(self, automorphism: typing.Sequence[int]) -> DualCharacter:
        """The character a ↦ ρ(automorphism[a])."""
        E = self.group.exponent
        exps = tuple(
            self.phase(automorphism[gen]) // (E // n)
            for gen, n in zip(self.group.generators(), self.group.factors)
        )
        return DualCharacter(group=self.group, exponents=exps)

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)

    @classmethod
    def from_values(cls, group: AbelianGroup, values: typing.Callable[[int], Cyclotomic]):
        """Identify the character whose values on the generators are given; None if none matches."""
        E = group.exponent
        exps = []
        for gen, n in zip(group.generators(), group.factors):
            value = values(gen)
            match = next((r for r in range(n) if root_of_unity(E, r * (E // n)) == value), None)
            if match is None:
                return None
            exps.append(match)
        candidate = cls(group=group, exponents=tuple(exps))
        if all(candidate(a) == values(a) for a in range(group.order)):
            return candidate
        return None

    def label(self) -> str:
        return 'ρ' + ''.join(str(x) for x in self.exponents) if self.exponents else 'ρ'


class GroupAction(pydantic.BaseModel):
    """The π₁-action on π₂: ``table[g][a]`` is g▷a."""

    pi1: FiniteGroup
    pi2: AbelianGroup
    table: tuple[tuple[pydantic.NonNegativeInt, ...], ...]

    model_config = ConfigDict(frozen=True)

    @pydantic.model_validator(mode='after')
    def validate_action_laws(self) -> GroupAction:
        G, A = self.pi1, self.pi2
        if len(self.table) != G.order or any(len(row) != A.order for row in self.table):
            raise ValueError(f'action table must have shape ({G.order}, {A.order})')
        for g, row in enumerate(self.table):
            if any(v >= A.order for v in row):
                raise ValueError(f'g={g} sends some element outside π₂')
            if len(set(row)) != A.order:
                raise ValueError(f'g={g} does not act by an automorphism: {row} is not injective')
            for a, b in itertools.product(A.elements_range, repeat=2):
                if row[A.add(a, b)] != A.add(row[a], row[b]):
                    raise ValueError(
                        f'g={g} does not act by an automorphism: witness (a, b)={(a, b)}'
                    )
        if any(self.table[G.identity][a] != a for a in A.elements_range):
            raise ValueError('the identity must act trivially')
        for g, h in itertools.product(G.elements, repeat=2):
            for a in A.elements_range:
                if self.table[G.mul(g, h)][a] != self.table[g][self.table[h][a]]:
                    raise ValueError(
                        f'action is not a homomorphism: (gh)▷a != g▷(h▷a) at (g, h, a)={(g, h, a)}'
                    )
        return self

    def apply(self, g: int, a: int) -> int:
        return self.table[g][a]

    @classmethod
    def trivial(cls, pi1: FiniteGroup, pi2: AbelianGroup) -> GroupAction:
        row = tuple(range(pi2.order))
        return cls(pi1=pi1, pi2=pi2, table=(row,) * pi1.order)


# group specifications


class CyclicSpec(pydantic.BaseModel):
    kind: typing.Literal['cyclic']
    n: pydantic.PositiveInt


class SymmetricSpec(pydantic.BaseModel):
    kind: typing.Literal['symmetric']
    n: pydantic.PositiveInt


class TableSpec(pydantic.BaseModel):
    kind: typing.Literal['table']
    mul: list[list[pydantic.NonNegativeInt]]


class ProductSpec(pydantic.BaseModel):
    kind: typing.Literal['product']
    factors: list[GroupSpec]


GroupSpec = typing.Annotated[
    CyclicSpec | SymmetricSpec | TableSpec | ProductSpec, pydantic.Field(discriminator='kind')
]
ProductSpec.model_rebuild()

_group_spec_adapter = pydantic.TypeAdapter(GroupSpec)


@pydantic.validate_call
def cyclic_group(n: pydantic.PositiveInt) -> FiniteGroup:
    return FiniteGroup(table=tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


@pydantic.validate_call
def symmetric_group(n: pydantic.PositiveInt) -> FiniteGroup:
    """S_n from sympy's permutation group; the product g·h applies h first."""
    perms = sorted(SymmetricGroup(n).generate(), key=lambda p: tuple(p.array_form))
    lookup = {tuple(p.array_form): i for i, p in enumerate(perms)}
    # sympy's p*q applies p first, then q
    return FiniteGroup(
        table=tuple(tuple(lookup[tuple((q * p).array_form)] for q in perms) for p in perms)
    )


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    """Pairs ordered lexicographically, with the last factor varying fastest."""
    elements = list(itertools.product(*(G.elements for G in groups)))
    lookup = {el: i for i, el in enumerate(elements)}
    return FiniteGroup(
        table=tuple(
            tuple(
                lookup[tuple(G.mul(x, y) for G, x, y in zip(groups, a, b))] for b in elements
            )
            for a in elements
        )
    )


def build_group(spec: dict[str, typing.Any] | CyclicSpec | SymmetricSpec | TableSpec | ProductSpec) -> FiniteGroup:
    """Build and validate a finite group from a JSON-style specification.

    Parameters
    ----------
    spec : dict or spec model
        ``{"kind": "cyclic", "n": 2}``, ``{"kind": "symmetric", "n": 3}``,
        ``{"kind": "product", "factors": [...]}`` or ``{"kind": "table", "mul": [[...]]}``.

    Returns
    -------
    FiniteGroup
    """
    if isinstance(spec, dict):
        spec = _group_spec_adapter.validate_python(spec)
    if isinstance(spec, CyclicSpec):
        return cyclic_group(spec.n)
    if isinstance(spec, SymmetricSpec):
        return symmetric_group(spec.n)
    if isinstance(spec, ProductSpec):
        return direct_product(*(build_group(f) for f in spec.factors))
    return FiniteGroup(table=tuple(tuple(row) for row in spec.mul))


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Orbits of conjugation, each sorted, ordered by their least-index representative."""
    seen: set[int] = set()
    classes = []
    for x in G.elements:
        if x in seen:
            continue
        orbit = tuple(sorted({G.conj(g, x) for g in G.elements}))
        seen.update(orbit)
        classes.append(orbit)
    return classes


def class_representatives(G: FiniteGroup) -> list[int]:
    return [cls[0] for cls in conjugacy_classes(G)]


def dual_group(A: AbelianGroup) -> list[DualCharacter]:
    """All |A| characters, in lexicographic order of their exponent tuples."""
    return [
        DualCharacter(group=A, exponents=exps)
        for exps in itertools.product(*(range(n) for n in A.factors))
    ]


def validate_action(
    G: FiniteGroup, A: AbelianGroup, table: typing.Sequence[typing.Sequence[int]]
) -> GroupAction:
    """Check the automorphism and homomorphism laws; raises ``pydantic.ValidationError``."""
    return GroupAction(pi1=G, pi2=A, table=tuple(tuple(row) for row in table))


# subgroups and cosets


def generated_subgroup(G: FiniteGroup, generators: typing.Iterable[int]) -> tuple[int, ...]:
    members = {G.identity}
    frontier = set(generators) - members
    while frontier:
        members |= frontier
        frontier = {G.mul(a, b) for a in members for b in members} - members
    return tuple(sorted(members))


def is_subgroup(G: FiniteGroup, H: typing.Iterable[int]) -> bool:
    members = set(H)
    return (
        G.identity in members
        and all(G.mul(a, b) in members for a in members for b in members)
        and all(G.inv(a) in members for a in members)
    )


def subgroups(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Every subgroup, as the join closure of the cyclic subgroups."""
    found = {generated_subgroup(G, [g]) for g in G.elements}
    frontier = set(found)
    while frontier:
        new = {
            generated_subgroup(G, set(H) | set(K)) for H in frontier for K in found
        } - found
        found |= new
        frontier = new
    return sorted(found, key=lambda H: (len(H), H))


def subgroup_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """One least representative per conjugacy class of subgroups."""
    reps = []
    seen: set[tuple[int, ...]] = set()
    for H in subgroups(G):
        if H in seen:
            continue
        orbit = {tuple(sorted(G.conj(g, h) for h in H)) for g in G.elements}
        seen |= orbit
        reps.append(min(orbit))
    return sorted(reps, key=lambda H: (len(H), H))


def cosets(G: FiniteGroup, H: typing.Sequence[int]) -> list[tuple[int, ...]]:
    """Left cosets gH with least-index representatives first; the coset of e comes first."""
    covered: set[int] = set()
    result = []
    for g in G.elements:
        if g in covered:
            continue
        coset = tuple(sorted({G.mul(g, h) for h in H}))
        covered.update(coset)
        result.append(coset)
    result.sort(key=lambda c: (G.identity not in c, c[0]))
    return result


def double_cosets(
    G: FiniteGroup, H: typing.Sequence[int], K: typing.Sequence[int]
) -> list[tuple[int, ...]]:
    covered: set[int] = set()
    result = []
    for g in G.elements:
        if g in covered:
            continue
        dc = tuple(sorted({G.product(h, g, k) for h in H for k in K}))
        covered.update(dc)
        result.append(dc)
    return result


def subgroup_label(G: FiniteGroup, H: typing.Sequence[int]) -> str:
    if len(H) == 1:
        return 'e'
    if len(H) == G.order:
        return 'G'
    if any(G.element_order(h) == len(H) for h in H):
        return f'Z{len(H)}'
    return f'H{len(H)}'



"""Monomial finite semisimple 2-representations.

A monomial 2-representation of a 2-group acts on ``Vect^n``: the object g permutes the simple
objects by σ_g, the coherence isomorphism ``F_g∘F_h ⇒ F_gh`` has component ``c(g, h, i)`` at the
simple i, and a morphism ``a: g → g`` acts on ``F_g(v_i) = v_{σ_g i}`` by ``tau(g, a, i)``.

The coherence laws, with the associator orientation of :mod:`twochar.twogroup`, read

* twisted 2-cocycle: ``c(g,h,σ_k i)·c(gh,k,i) = tau(ghk, α(g,h,k), i)·c(g,hk,i)·c(h,k,i)``
* interchange: ``tau(gh, a + g▷b, i) = tau(g, a, σ_h i)·tau(h, b, i)``
"""

from __future__ import annotations

import functools
import itertools
import typing
from fractions import Fraction

import pandas as pd
import pydantic
from pydantic import ConfigDict

from .groups import DualCharacter, cosets, is_subgroup
from .scalars import Cyclotomic, root_of_unity
from .twogroup import FiniteTwoGroup, ensure_same_ambient
from .utils import OPTIONS

ONE = Cyclotomic.one()

Scalar = Cyclotomic | int | Fraction
ScalarTable = tuple[tuple[tuple[Cyclotomic, ...], ...], ...]


class InvalidRepresentationError(Exception):
    pass


class InductionError(Exception):
    pass


def as_scalar(value: Scalar | str | dict) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    return Cyclotomic.from_json(value)


class Violation(pydantic.BaseModel):
    check: str
    witness: tuple[typing.Any, ...]
    detail: str = ''


class ValidationReport(pydantic.BaseModel):
    """Outcome of an exhaustive invariant check: one flag per invariant family, plus witnesses."""

    subject: str = ''
    checks: dict[str, bool] = pydantic.Field(default_factory=dict)
    violations: list[Violation] = pydantic.Field(default_factory=list)

    def start(self, *names: str) -> ValidationReport:
        for name in names:
            self.checks.setdefault(name, True)
        return self

    def record(
        self, check: str, ok: bool, witness: typing.Sequence[typing.Any] = (), detail: str = ''
    ) -> bool:
        self.checks[check] = self.checks.get(check, True) and bool(ok)
        if not ok:
            limit = OPTIONS['max_witnesses']
            if not limit or len(self.witnesses(check)) < limit:
                self.violations.append(Violation(check=check, witness=tuple(witness), detail=detail))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok

    def witnesses(self, check: str) -> list[tuple[typing.Any, ...]]:
        return [v.witness for v in self.violations if v.check == check]

    def failed(self) -> list[str]:
        return [name for name, passed in self.checks.items() if not passed]

    def merge(self, other: ValidationReport, prefix: str = '') -> ValidationReport:
        for name, passed in other.checks.items():
            self.checks[prefix + name] = self.checks.get(prefix + name, True) and passed
        self.violations.extend(
            v.model_copy(update={'check': prefix + v.check}) for v in other.violations
        )
        return self

    def to_dataframe(self) -> pd.DataFrame:
        """One row per check with its flag and the number of recorded witnesses."""
        rows = [
            {
                'check': name,
                'passed': passed,
                'witnesses': len(self.witnesses(name)),
                'first_witness': next(iter(self.witnesses(name)), None),
            }
            for name, passed in self.checks.items()
        ]
        return pd.DataFrame(rows, columns=['check', 'passed', 'witnesses', 'first_witness'])

    def __str__(self) -> str:
        lines = [f'{self.subject or "report"}: {"ok" if self.ok else "FAILED"}']
        for name, passed in self.checks.items():
            lines.append(f'  {name}: {"ok" if passed else "failed"}')
            for v in self.violations:
                if v.check == name:
                    lines.append(f'    witness {v.witness} {v.detail}'.rstrip())
        return '\n'.join(lines)


class MonomialTwoRep(pydantic.BaseModel):
    """A 2-representation on ``Vect^n`` given by permutations and scalar tables.

    ``perm[g][i] = σ_g(i)``, ``c[g][h][i] = c(g, h, i)`` and ``tau[g][a][i] = tau(g, a, i)``.
    """

    group: FiniteTwoGroup
    n: pydantic.NonNegativeInt
    perm: tuple[tuple[pydantic.NonNegativeInt, ...], ...]
    c: ScalarTable
    tau: ScalarTable
    name: str = ''

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    _derived: dict[str, typing.Any] = pydantic.PrivateAttr(default_factory=dict)

    @pydantic.model_validator(mode='after')
    def validate_shapes(self) -> MonomialTwoRep:
        G = self.group
        order, n, m = G.pi1.order, self.n, G.pi2.order
        if len(self.perm) != order or any(len(row) != n for row in self.perm):
            raise ValueError(f'perm must have shape ({order}, {n})')
        if any(v >= n for row in self.perm for v in row):
            raise ValueError(f'perm entries must be simple indices in 0..{n - 1}')
        if len(self.c) != order or any(
            len(row) != order or any(len(col) != n for col in row) for row in self.c
        ):
            raise ValueError(f'c must have shape ({order}, {order}, {n})')
        if len(self.tau) != order or any(
            len(row) != m or any(len(col) != n for col in row) for row in self.tau
        ):
            raise ValueError(f'tau must have shape ({order}, {m}, {n})')
        return self

    @classmethod
    def build(
        cls,
        group: FiniteTwoGroup,
        perm: typing.Sequence[typing.Sequence[int]] | dict[int, typing.Sequence[int]],
        c: dict[tuple[int, int, int], Scalar] | None = None,
        tau: dict[tuple[int, int, int], Scalar] | None = None,
        name: str = '',
    ) -> MonomialTwoRep:
        """Build from sparse scalar tables; omitted c and tau entries are 1."""
        order = group.pi1.order
        if isinstance(perm, dict):
            perm = [perm[g] for g in range(order)]
        rows = tuple(tuple(row) for row in perm)
        n = len(rows[0]) if rows else 0
        c, tau = c or {}, tau or {}
        c_table = tuple(
            tuple(tuple(as_scalar(c.get((g, h, i), 1)) for i in range(n)) for h in range(order))
            for g in range(order)
        )
        tau_table = tuple(
            tuple(
                tuple(as_scalar(tau.get((g, a, i), 1)) for i in range(n))
                for a in range(group.pi2.order)
            )
            for g in range(order)
        )
        return cls(group=group, n=n, perm=rows, c=c_table, tau=tau_table, name=name)

    @classmethod
    def from_characters(
        cls,
        group: FiniteTwoGroup,
        perm: typing.Sequence[typing.Sequence[int]],
        characters: typing.Sequence[DualCharacter],
        c: dict[tuple[int, int, int], Scalar] | None = None,
        name: str = '',
    ) -> MonomialTwoRep:
        """tau(g, a, i) = λ_{σ_g i}(a) for one π₂-character λ_j per simple index."""
        tau = {
            (g, a, i): characters[perm[g][i]](a)
            for g in group.pi1.elements
            for a in group.pi2.elements_range
            for i in range(len(characters))
        }
        return cls.build(group, perm, c=c, tau=tau, name=name)

    def sigma(self, g: int, i: int) -> int:
        return self.perm[g][i]

    def fixed_points(self, g: int) -> list[int]:
        return [i for i, j in enumerate(self.perm[g]) if i == j]

    @functools.cached_property
    def report(self) -> ValidationReport:
        return validate_rep(self.group, self)

    def cached(self, key: str, factory: typing.Callable[[], typing.Any]) -> typing.Any:
        """Memoize data derived from this immutable rep, such as its 2-character."""
        if key not in self._derived:
            self._derived[key] = factory()
        return self._derived[key]

    def require_valid(self) -> MonomialTwoRep:
        if not self.report.ok:
            raise InvalidRepresentationError(
                f'{self.name or "representation"} fails {self.report.failed()}:\n{self.report}'
            )
        return self

    def relabel(self, name: str) -> MonomialTwoRep:
        return self.replace(name=name)

    def replace(self, **changes: typing.Any) -> MonomialTwoRep:
        """A new, revalidated rep with some fields replaced; cached reports are not carried over."""
        fields = {key: getattr(self, key) for key in type(self).model_fields}
        return type(self)(**{**fields, **changes})


def _twisted_cocycle_defects(
    G: FiniteTwoGroup,
    perm: typing.Sequence[typing.Sequence[int]],
    c: ScalarTable,
    tau: ScalarTable,
    n: int,
) -> typing.Iterator[tuple[int, int, int, int]]:
    E = G.pi1.elements
    for g, h, k in itertools.product(E, repeat=3):
        gh, hk = G.mul(g, h), G.mul(h, k)
        a = G.alpha(g, h, k)
        ghk = G.mul(gh, k)
        for i in range(n):
            lhs = c[g][h][perm[k][i]] * c[gh][k][i]
            rhs = tau[ghk][a][i] * c[g][hk][i] * c[h][k][i]
            if lhs != rhs:
                yield (g, h, k, i)


def validate_rep(G: FiniteTwoGroup, R: MonomialTwoRep) -> ValidationReport:
    """Check every coherence law of ``R`` exhaustively.

    Parameters
    ----------
    G : FiniteTwoGroup
        The ambient 2-group.
    R : MonomialTwoRep

    Returns
    -------
    ValidationReport
        Flags ``homomorphism``, ``normalization``, ``character_law``, ``twisted_cocycle`` and
        ``interchange``; every violated equation is listed with its witness tuple.
    """
    report = ValidationReport(subject=f'rep {R.name}'.strip()).start(
        'homomorphism', 'normalization', 'character_law', 'twisted_cocycle', 'interchange'
    )
    if R.group is not G and R.group != G:
        report.record('ambient', False, (), 'representation is defined over another 2-group')
        return report

    A, E, n = G.pi2, G.pi1.elements, R.n
    perm, c, tau, e = R.perm, R.c, R.tau, G.e

    for g in E:
        if sorted(perm[g]) != list(range(n)):
            report.record('homomorphism', False, (g,), 'σ_g is not a permutation')
    report.record('homomorphism', list(perm[e]) == list(range(n)), (e,), 'σ_e is not the identity')
    for g, h in itertools.product(E, repeat=2):
        gh = G.mul(g, h)
        for i in range(n):
            if perm[gh][i] != perm[g][perm[h][i]]:
                report.record('homomorphism', False, (g, h, i), 'σ_gh(i) != σ_g(σ_h(i))')

    for g in E:
        for i in range(n):
            if c[e][g][i] != 1 or c[g][e][i] != 1:
                report.record('normalization', False, (g, i), 'c(e,g,i) or c(g,e,i) is not 1')
            if tau[g][0][i] != 1:
                report.record('normalization', False, (g, 0, i), 'tau(g,0,i) is not 1')

    for g in E:
        for a, b in itertools.product(A.elements_range, repeat=2):
            ab = A.add(a, b)
            for i in range(n):
                if tau[g][ab][i] != tau[g][a][i] * tau[g][b][i]:
                    report.record('character_law', False, (g, a, b, i))

    for witness in _twisted_cocycle_defects(G, perm, c, tau, n):
        report.record('twisted_cocycle', False, witness)

    for g, h in itertools.product(E, repeat=2):
        gh = G.mul(g, h)
        for a, b in itertools.product(A.elements_range, repeat=2):
            shifted = A.add(a, G.act(g, b))
            for i in range(n):
                if tau[gh][shifted][i] != tau[g][a][perm[h][i]] * tau[h][b][i]:
                    report.record('interchange', False, (g, h, a, b, i))
    return report


# constructors


def trivial_rep(G: FiniteTwoGroup, name: str = '𝟙') -> MonomialTwoRep:
    """Vect with every object acting as the identity."""
    return MonomialTwoRep.build(G, [[0] for _ in G.pi1.elements], name=name)


def direct_sum(R: MonomialTwoRep, S: MonomialTwoRep, name: str = '') -> MonomialTwoRep:
    """Concatenate the simple objects of R and S."""
    G = ensure_same_ambient(R, S)
    shift = R.n
    perm = tuple(
        R.perm[g] + tuple(j + shift for j in S.perm[g]) for g in G.pi1.elements
    )
    c = tuple(tuple(R.c[g][h] + S.c[g][h] for h in G.pi1.elements) for g in G.pi1.elements)
    tau = tuple(
        tuple(R.tau[g][a] + S.tau[g][a] for a in G.pi2.elements_range) for g in G.pi1.elements
    )
    return MonomialTwoRep(
        group=G, n=R.n + S.n, perm=perm, c=c, tau=tau, name=name or f'{R.name} ⊕ {S.name}'
    )


def deligne_tensor(R: MonomialTwoRep, S: MonomialTwoRep, name: str = '') -> MonomialTwoRep:
    """R ⊠ S with the diagonal action; the simple (i, j) gets index ``i * S.n + j``."""
    G = ensure_same_ambient(R, S)
    pairs = list(itertools.product(range(R.n), range(S.n)))
    perm = tuple(
        tuple(R.perm[g][i] * S.n + S.perm[g][j] for i, j in pairs) for g in G.pi1.elements
    )
    c = tuple(
        tuple(tuple(R.c[g][h][i] * S.c[g][h][j] for i, j in pairs) for h in G.pi1.elements)
        for g in G.pi1.elements
    )
    tau = tuple(
        tuple(tuple(R.tau[g][a][i] * S.tau[g][a][j] for i, j in pairs) for a in G.pi2.elements_range)
        for g in G.pi1.elements
    )
    return MonomialTwoRep(
        group=G, n=R.n * S.n, perm=perm, c=c, tau=tau, name=name or f'{R.name} ⊠ {S.name}'
    )


def opposite(R: MonomialTwoRep, name: str = '') -> MonomialTwoRep:
    """V^op: the same permutations with every c and tau scalar inverted."""
    invert = lambda table: tuple(tuple(tuple(v.inverse() for v in col) for col in row) for row in table)  # noqa: E731
    return R.replace(c=invert(R.c), tau=invert(R.tau), name=name or f'{R.name}^op')


def solve_cochain(
    G: FiniteTwoGroup,
    perm: typing.Sequence[typing.Sequence[int]],
    characters: typing.Sequence[DualCharacter],
    name: str = '',
) -> MonomialTwoRep:
    """Search for a cochain c making the permutation/character data a 2-representation.

    Candidates assign a ``scalar_order``-th root of unity to every c(g, h, i) with g, h ≠ e and
    are tried in lexicographic order of their exponents; at most ``OPTIONS['search_limit']``
    candidates are examined.

    Raises
    ------
    InvalidRepresentationError
        When no candidate within the search limit satisfies the twisted 2-cocycle condition.
    """
    base = MonomialTwoRep.from_characters(G, perm, characters, name=name)
    N = G.scalar_order
    roots = [root_of_unity(N, k) for k in range(N)]
    free = [
        (g, h, i)
        for g, h in itertools.product(G.pi1.elements, repeat=2)
        if G.e not in (g, h)
        for i in range(base.n)
    ]
    candidates = itertools.islice(itertools.product(range(N), repeat=len(free)), OPTIONS['search_limit'])
    for exponents in candidates:
        values = dict(zip(free, exponents))
        c = tuple(
            tuple(
                tuple(roots[values[g, h, i]] if (g, h, i) in values else ONE for i in range(base.n))
                for h in G.pi1.elements
            )
            for g in G.pi1.elements
        )
        if next(_twisted_cocycle_defects(G, base.perm, c, base.tau, base.n), None) is None:
            return base.replace(c=c)
    raise InvalidRepresentationError(
        f'no cochain with {N}-th roots of unity found within {OPTIONS["search_limit"]} candidates '
        f'for {name or "the given permutation data"}'
    )


def induced_rep(
    G: FiniteTwoGroup,
    H: typing.Sequence[int],
    beta: dict[tuple[int, int], Scalar] | typing.Callable[[int, int], Scalar] | None = None,
    name: str = '',
) -> MonomialTwoRep:
    """The 2-representation Vect[G/H] twisted by a 2-cocycle β on H.

    Requires a 2-group with trivial π₂ and α. Cosets are listed with least-index representatives
    r_i, the coset of e first; ``g·r_i = r_{σ_g i}·η(g, i)`` with η(g, i) ∈ H, and
    ``c(g, h, i) = β(η(g, σ_h i), η(h, i))⁻¹``.

    Raises
    ------
    InductionError
        When π₂ or α is nontrivial, H is not a subgroup, or β is not a normalized 2-cocycle.
    """
    if G.pi2.order != 1 or not G.is_trivial_associator():
        raise InductionError('induced representations need a 2-group with trivial π₂ and α')
    P = G.pi1
    H = tuple(sorted(set(H)))
    if not H or not is_subgroup(P, H):
        raise InductionError(f'{H} is not a subgroup of π₁')
    if beta is None:
        beta_of = lambda h1, h2: ONE  # noqa: E731
    elif callable(beta):
        beta_of = lambda h1, h2: as_scalar(beta(h1, h2))  # noqa: E731
    else:
        beta_of = lambda h1, h2: as_scalar(beta.get((h1, h2), 1))  # noqa: E731

    for h in H:
        if beta_of(P.identity, h) != 1 or beta_of(h, P.identity) != 1:
            raise InductionError(f'beta is not normalized at h={h}')
    for h1, h2, h3 in itertools.product(H, repeat=3):
        lhs = beta_of(h1, h2) * beta_of(P.mul(h1, h2), h3)
        rhs = beta_of(h1, P.mul(h2, h3)) * beta_of(h2, h3)
        if lhs != rhs:
            raise InductionError(f'beta is not a 2-cocycle on H: witness (h1, h2, h3)={(h1, h2, h3)}')

    classes = cosets(P, H)
    reps = [P.identity if P.identity in coset else coset[0] for coset in classes]
    where = {g: i for i, coset in enumerate(classes) for g in coset}
    n = len(classes)
    perm = tuple(tuple(where[P.mul(g, reps[i])] for i in range(n)) for g in P.elements)

    def eta(g: int, i: int) -> int:
        return P.product(P.inv(reps[perm[g][i]]), g, reps[i])

    c = tuple(
        tuple(
            tuple(beta_of(eta(g, perm[h][i]), eta(h, i)).inverse() for i in range(n))
            for h in P.elements
        )
        for g in P.elements
    )
    tau = tuple(((ONE,) * n,) for _ in P.elements)
    return MonomialTwoRep(group=G, n=n, perm=perm, c=c, tau=tau, name=name)


def twisted_vect_rep(
    G: FiniteTwoGroup,
    beta: dict[tuple[int, int], Scalar] | typing.Callable[[int, int], Scalar],
    name: str = 'Vect^β',
) -> MonomialTwoRep:
    """Vect^β: one simple object, with the coherence twisted by β on all of π₁."""
    return induced_rep(G, tuple(G.pi1.elements), beta, name=name)


def builtin_irreps(G: FiniteTwoGroup) -> dict[str, MonomialTwoRep]:
    """The named irreducible 2-representations of a catalogue 2-group, in catalogue order."""
    from .catalog import irreps_for

    return irreps_for(G)

"""2-characters as class functors.

A class functor assigns to every g ∈ π₁ a π₂-representation ``F(g)`` (stored diagonalized, one
:class:`~twochar.groups.DualCharacter` per basis vector) and to every pair (k, g) an isomorphism
``psi(k, g): F(g) → F(k g k⁻¹)``. The 2-character of a monomial 2-representation, the Day
convolution of class functors, inner products, joint 2-characters and fusion-rule extraction
live here.
"""

from __future__ import annotations

import collections
import concurrent.futures
import itertools
import typing
import warnings

import pandas as pd
import pydantic
from fastprogress.fastprogress import progress_bar
from pydantic import ConfigDict

from ._linalg import SparseMatrix, Vector, nullspace, rank, solve
from .groups import AbelianGroup, DualCharacter, class_representatives, dual_group
from .scalars import Cyclotomic
from .twogroup import FiniteTwoGroup, JointInput, ensure_same_ambient
from .twrep import InvalidRepresentationError, MonomialTwoRep, ValidationReport, deligne_tensor
from .utils import OPTIONS


class DegenerateBasisError(Exception):
    pass


class DecompositionError(Exception):
    pass


class FingerprintEscalationWarning(UserWarning):
    pass


class Pi2Rep(pydantic.BaseModel):
    """A finite-dimensional π₂-representation with diagonal action, one character per basis vector."""

    group: AbelianGroup
    characters: tuple[DualCharacter, ...] = ()

    model_config = ConfigDict(frozen=True)

    @property
    def dim(self) -> int:
        return len(self.characters)

    def value(self, index: int, a: int) -> Cyclotomic:
        return self.characters[index](a)

    def diagonal(self, a: int) -> list[Cyclotomic]:
        """The action of a ∈ π₂, as the diagonal of its matrix."""
        return [rho(a) for rho in self.characters]

    def multiset(self) -> collections.Counter:
        return collections.Counter(rho.exponents for rho in self.characters)

    def conjugate(self) -> Pi2Rep:
        return Pi2Rep(group=self.group, characters=tuple(rho.conjugate() for rho in self.characters))

    def labels(self) -> list[str]:
        return sorted(rho.label() for rho in self.characters)

    def __str__(self) -> str:
        return f'{self.dim} ({", ".join(self.labels())})' if self.dim else '0'


class ClassFunctor(pydantic.BaseModel):
    """An object of fun(G, Vect)^G: values ``F(g)`` with conjugation isomorphisms ``psi(k, g)``."""

    group: FiniteTwoGroup
    values: tuple[Pi2Rep, ...]
    psi: dict[tuple[int, int], SparseMatrix]
    name: str = ''

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @pydantic.model_validator(mode='after')
    def validate_shapes(self) -> ClassFunctor:
        G = self.group
        if len(self.values) != G.pi1.order:
            raise ValueError(f'expected one value per element of π₁, got {len(self.values)}')
        for k, g in itertools.product(G.pi1.elements, repeat=2):
            if (k, g) not in self.psi:
                raise ValueError(f'psi{(k, g)} is missing')
            expected = (self.values[G.pi1.conj(k, g)].dim, self.values[g].dim)
            if self.psi[k, g].shape != expected:
                raise ValueError(f'psi{(k, g)} has shape {self.psi[k, g].shape}, expected {expected}')
        return self

    def value(self, g: int) -> Pi2Rep:
        return self.values[g]

    def dim(self, g: int) -> int:
        return self.values[g].dim


# the 2-character


def _character_at(R: MonomialTwoRep, x: int, i: int) -> DualCharacter:
    A = R.group.pi2
    rho = DualCharacter.from_values(A, lambda a: R.tau[x][a][i])
    if rho is None:
        raise InvalidRepresentationError(
            f'tau({x}, ·, {i}) of {R.name or "the representation"} is not a character of π₂'
        )
    return rho


def two_character(R: MonomialTwoRep) -> ClassFunctor:
    """The 2-character χ_R as a class functor.

    ``χ_R(x)`` has one basis vector per fixed point i of σ_x, on which π₂ acts by
    ``a ↦ tau(x, a, i)``. ``psi(g, x)`` sends the vector at i to the one at ``j = σ_g(i)`` with
    scalar ``tau(e, coev g, j)·c(g, x, i)·c(gx, g⁻¹, j) / c(g, g⁻¹, j)``.

    Raises
    ------
    InvalidRepresentationError
        When ``R`` fails :func:`~twochar.twrep.validate_rep`.
    """
    return R.cached('two_character', lambda: _two_character(R))


def _two_character(R: MonomialTwoRep) -> ClassFunctor:
    R.require_valid()
    G = R.group
    P, e = G.pi1, G.e
    fixed = {x: R.fixed_points(x) for x in P.elements}
    position = {x: {i: p for p, i in enumerate(fixed[x])} for x in P.elements}
    values = tuple(
        Pi2Rep(group=G.pi2, characters=tuple(_character_at(R, x, i) for i in fixed[x]))
        for x in P.elements
    )
    psi = {}
    for g, x in itertools.product(P.elements, repeat=2):
        y, gx, gi = P.conj(g, x), P.mul(g, x), P.inv(g)
        coev = G.coev(g)
        images = []
        for p, i in enumerate(fixed[x]):
            j = R.perm[g][i]
            scalar = R.tau[e][coev][j] * R.c[g][x][i] * R.c[gx][gi][j] / R.c[g][gi][j]
            images.append((p, position[y][j], scalar))
        psi[g, x] = SparseMatrix.monomial((len(fixed[y]), len(fixed[x])), images)
    return ClassFunctor(group=G, values=values, psi=psi, name=f'χ_{R.name}' if R.name else '')


def unit_class_functor(G: FiniteTwoGroup) -> ClassFunctor:
    """Φ(e): the unit for Day convolution. Its value at e carries every π₂-character once."""
    P = G.pi1
    characters = dual_group(G.pi2)
    where = {rho.exponents: i for i, rho in enumerate(characters)}
    empty = Pi2Rep(group=G.pi2)
    values = tuple(
        Pi2Rep(group=G.pi2, characters=tuple(characters)) if g == G.e else empty for g in P.elements
    )
    psi = {}
    for k, g in itertools.product(P.elements, repeat=2):
        if g != G.e:
            psi[k, g] = SparseMatrix((0, 0))
            continue
        images = []
        for i, rho in enumerate(characters):
            target = rho.precompose(G.action.table[P.inv(k)])
            images.append((i, where[target.exponents], target(G.coev(k))))
        psi[k, g] = SparseMatrix.monomial((len(characters), len(characters)), images)
    return ClassFunctor(group=G, values=values, psi=psi, name='Φ(e)')


# validation


def validate_class_functor(F: ClassFunctor) -> ValidationReport:
    """Exhaustively check the equivariance laws of ``F``.

    ``identity``: psi(e, g) is the identity. ``naturality``: every entry of psi(k, g) links
    characters with ``ρ_source = ρ_target∘(k▷)``. ``morphism_invariance``: characters in F(y) are
    invariant under y▷. ``composition``: ``psi(g, hxh⁻¹)∘psi(h, x) = F(β(g, h, x))∘psi(gh, x)``.
    """
    G = F.group
    P, A = G.pi1, G.pi2
    report = ValidationReport(subject=f'class functor {F.name}'.strip()).start(
        'identity', 'naturality', 'morphism_invariance', 'composition'
    )
    for g in P.elements:
        report.record('identity', F.psi[G.e, g].is_identity(), (G.e, g), 'psi(e, g) is not the identity')

    for k, g in itertools.product(P.elements, repeat=2):
        target = F.values[P.conj(k, g)]
        source = F.values[g]
        for (r, s), _ in F.psi[k, g].entries.items():
            rho_r, rho_s = target.characters[r], source.characters[s]
            if rho_r.precompose(G.action.table[k]).exponents != rho_s.exponents:
                a = next(
                    a for a in A.elements_range if rho_s.phase(a) != rho_r.phase(G.act(k, a))
                )
                report.record('naturality', False, (k, g, a), f'entry ({r}, {s})')

    for y in P.elements:
        for index, rho in enumerate(F.values[y].characters):
            if rho.precompose(G.action.table[y]).exponents != rho.exponents:
                report.record('morphism_invariance', False, (y, index))

    for g, h, x in itertools.product(P.elements, repeat=3):
        y, gh = P.conj(h, x), P.mul(g, h)
        lhs = F.psi[g, y] @ F.psi[h, x]
        target = F.values[P.conj(gh, x)]
        rhs = F.psi[gh, x].scale_rows(target.diagonal(G.psi_correction(g, h, x)))
        if lhs != rhs:
            report.record('composition', False, (g, h, x))
    return report


# Day convolution


def _convolution_basis(
    F: ClassFunctor, H: ClassFunctor, g: int
) -> tuple[list[tuple[int, int, int]], list[DualCharacter]]:
    """Surviving vectors (k, p, q), p ∈ F(gk⁻¹), q ∈ H(k), with ρ_p∘(gk⁻¹)▷ = ρ_q."""
    G = F.group
    P = G.pi1
    keys, characters = [], []
    for k in P.elements:
        left = P.mul(g, P.inv(k))
        twisted = [rho.precompose(G.action.table[left]).exponents for rho in F.values[left].characters]
        for p, q in itertools.product(range(F.dim(left)), range(H.dim(k))):
            if twisted[p] == H.values[k].characters[q].exponents:
                keys.append((k, p, q))
                characters.append(F.values[left].characters[p])
    return keys, characters


def _convolution_psi(
    F: ClassFunctor,
    H: ClassFunctor,
    l: int,
    g: int,
    source: list[tuple[int, int, int]],
    target: dict[tuple[int, int, int], int],
) -> SparseMatrix:
    P = F.group.pi1
    left_columns = {k: F.psi[l, P.mul(g, P.inv(k))].columns() for k in P.elements}
    right_columns = {k: H.psi[l, k].columns() for k in P.elements}
    entries: dict[tuple[int, int], Cyclotomic] = {}
    for s, (k, p, q) in enumerate(source):
        k_out = P.conj(l, k)
        for p_out, v in left_columns[k].get(p, ()):
            for q_out, w in right_columns[k].get(q, ()):
                t = target.get((k_out, p_out, q_out))
                if t is None:
                    continue
                entries[t, s] = entries[t, s] + v * w if (t, s) in entries else v * w
    return SparseMatrix((len(target), len(source)), entries)


def day_convolution(F: ClassFunctor, H: ClassFunctor) -> ClassFunctor:
    """(F ⊛ H)(g) = ⊕_k F(g k⁻¹) ⊗ H(k), restricted to the vectors surviving the coend.

    A vector p ⊗ q survives when ``ρ_p∘((gk⁻¹)▷) = ρ_q`` and then carries ρ_p. The conjugation
    isomorphism acts factorwise: ``(k, p, q) ↦ (lkl⁻¹, psi_F(l, gk⁻¹) p, psi_H(l, k) q)``.

    Raises
    ------
    AmbientMismatchError
    """
    G = ensure_same_ambient(F, H)
    P = G.pi1
    bases = {g: _convolution_basis(F, H, g) for g in P.elements}
    index = {g: {key: i for i, key in enumerate(keys)} for g, (keys, _) in bases.items()}
    values = tuple(Pi2Rep(group=G.pi2, characters=tuple(bases[g][1])) for g in P.elements)
    psi = {
        (l, g): _convolution_psi(F, H, l, g, bases[g][0], index[P.conj(l, g)])
        for l, g in itertools.product(P.elements, repeat=2)
    }
    return ClassFunctor(group=G, values=values, psi=psi, name=f'{F.name} ⊛ {H.name}'.strip())


def braiding(F: ClassFunctor, H: ClassFunctor, g: int) -> SparseMatrix:
    """The braiding (F ⊛ H)(g) → (H ⊛ F)(g).

    The summand k vector p ⊗ q goes to the summand gk⁻¹ vector ``psi_H(g, k) q ⊗ p``.
    """
    G = ensure_same_ambient(F, H)
    P = G.pi1
    source, _ = _convolution_basis(F, H, g)
    target_keys, _ = _convolution_basis(H, F, g)
    target = {key: i for i, key in enumerate(target_keys)}
    entries = {}
    for s, (k, p, q) in enumerate(source):
        k_out = P.mul(g, P.inv(k))
        for q_out, w in H.psi[g, k].columns().get(q, ()):
            t = target.get((k_out, q_out, p))
            if t is not None:
                entries[t, s] = w
    return SparseMatrix((len(target_keys), len(source)), entries)


# the π₁-action on F(e) and inner products


def loop_action(F: ClassFunctor, g: int) -> SparseMatrix:
    """The π₁-action on F(e): ``F(-coev g)∘psi(g, e)``."""
    G = F.group
    return F.psi[g, G.e].scale_rows(F.values[G.e].diagonal(G.loop_correction(g)))


def invariant_subspace(actions: typing.Iterable[SparseMatrix], dim: int) -> list[Vector]:
    """Exact basis of the common fixed vectors of the given dim × dim matrices."""
    identity = SparseMatrix.identity(dim)
    rows = []
    for M in actions:
        rows.extend(row for row in (M - identity).rows() if row)
    return nullspace(rows, dim)


class InnerProduct(pydantic.BaseModel):
    dimension: pydantic.NonNegativeInt
    basis: list[dict[int, Cyclotomic]]

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def __int__(self) -> int:
        return self.dimension


def inner_product(F: ClassFunctor, H: ClassFunctor) -> InnerProduct:
    """⟨F, H⟩: the π₁-invariant subspace of (F ⊛ H)(e).

    Returns
    -------
    InnerProduct
        Its dimension and an exact basis in the coordinates of (F ⊛ H)(e).
    """
    G = ensure_same_ambient(F, H)
    P, e = G.pi1, G.e
    keys, characters = _convolution_basis(F, H, e)
    index = {key: i for i, key in enumerate(keys)}
    values = Pi2Rep(group=G.pi2, characters=tuple(characters))
    actions = [
        _convolution_psi(F, H, g, e, keys, index).scale_rows(values.diagonal(G.loop_correction(g)))
        for g in P.elements
    ]
    basis = invariant_subspace(actions, len(keys))
    return InnerProduct(dimension=len(basis), basis=basis)


def dimension_character(F: ClassFunctor) -> dict[int, Cyclotomic]:
    """Trace of the π₁-action on F(e) at each conjugacy-class representative."""
    return {g: loop_action(F, g).trace() for g in class_representatives(F.group.pi1)}


# joint 2-characters and modular transformations


def class_functor_joint(F: ClassFunctor, j: JointInput | tuple[int, int, int]) -> Cyclotomic:
    """tr(F(a + correction)∘psi(g, h)) on F(h)."""
    G = F.group
    g, h, a = G.check_joint(j)
    b = G.add(a, G.joint_correction(g, h))
    diagonal = F.values[h].diagonal(b)
    total = Cyclotomic.zero()
    for (r, s), v in F.psi[g, h].entries.items():
        if r == s:
            total = total + diagonal[r] * v
    return total


def joint_character(R: MonomialTwoRep, j: JointInput | tuple[int, int, int]) -> Cyclotomic:
    """The joint 2-character χ^(2)_R(g, h, a) for a morphism a: g⊗h → h⊗g.

    Raises
    ------
    NotCommutingError
        When gh ≠ hg.
    """
    R.group.check_joint(j)
    return class_functor_joint(two_character(R), j)


def modular_S(G: FiniteTwoGroup, j: JointInput | tuple[int, int, int]) -> JointInput:
    g, h, a = G.check_joint(j)
    hi = G.inv(h)
    hig = G.mul(hi, g)
    alpha = G.alpha
    shifted = G.add(
        G.act(hig, G.coev(h)),
        alpha(hig, h, hi),
        G.neg(alpha(hi, g, h)),
        G.act(hi, a),
        alpha(hi, h, g),
        G.ev(h),
    )
    return JointInput(hi, g, shifted)


def modular_T(G: FiniteTwoGroup, j: JointInput | tuple[int, int, int]) -> JointInput:
    g, h, a = G.check_joint(j)
    return JointInput(g, G.mul(g, h), G.add(G.act(g, a), G.alpha(g, h, g)))


def conjugate_joint(G: FiniteTwoGroup, k: int, j: JointInput | tuple[int, int, int]) -> JointInput:
    g, h, a = G.check_joint(j)
    return JointInput(G.pi1.conj(k, g), G.pi1.conj(k, h), G.act(k, a))


def left_dual_input(G: FiniteTwoGroup, j: JointInput | tuple[int, int, int]) -> JointInput:
    g, h, a = G.check_joint(j)
    return JointInput(G.inv(g), G.inv(h), G.act(G.inv(G.mul(g, h)), a))


# fingerprints and decomposition


def fingerprint_labels(G: FiniteTwoGroup, extended: bool = False) -> list[str]:
    labels = [
        f'({g}, {rho.label()})'
        for g in class_representatives(G.pi1)
        for rho in dual_group(G.pi2)
    ]
    if extended:
        labels += [f'joint{tuple(j)}' for j in G.joint_inputs()]
    return labels


def fingerprint(F: ClassFunctor, extended: bool = False) -> tuple[Cyclotomic, ...]:
    """Multiplicity of every ρ ∈ dual(π₂) in F(g) for every class representative g.

    With ``extended``, the joint-trace values over all canonical joint inputs are appended.
    """
    G = F.group
    entries = []
    for g in class_representatives(G.pi1):
        counts = F.values[g].multiset()
        entries.extend(Cyclotomic.from_rational(counts[rho.exponents]) for rho in dual_group(G.pi2))
    if extended:
        entries.extend(class_functor_joint(F, j) for j in G.joint_inputs())
    return tuple(entries)


def _as_rows(vectors: typing.Sequence[tuple[Cyclotomic, ...]]) -> list[Vector]:
    return [{m: v for m, v in enumerate(vector) if v} for vector in vectors]


def is_separating(basis: typing.Sequence[ClassFunctor], extended: bool = False) -> bool:
    return rank(_as_rows([fingerprint(B, extended) for B in basis])) == len(basis)


def decompose(
    F: ClassFunctor, basis: typing.Sequence[ClassFunctor], extended: bool = False
) -> tuple[int, ...]:
    """Multiplicities n with fingerprint(F) = Σ n_i fingerprint(basis_i).

    Raises
    ------
    DegenerateBasisError
        When the basis fingerprints are linearly dependent.
    DecompositionError
        When no nonnegative integer solution exists.
    """
    ensure_same_ambient(F, *basis)
    vectors = [fingerprint(B, extended) for B in basis]
    if rank(_as_rows(vectors)) < len(basis):
        raise DegenerateBasisError(
            'the fingerprints of the basis are linearly dependent'
            + ('' if extended else '; retry with extended=True')
        )
    target = fingerprint(F, extended)
    equations = [
        ({i: v[m] for i, v in enumerate(vectors) if v[m]}, target[m]) for m in range(len(target))
    ]
    solution = solve(equations, len(basis))
    if solution is None:
        raise DecompositionError(f'{F.name or "class functor"} is not in the span of the basis')
    multiplicities = []
    for i in range(len(basis)):
        value = solution.get(i, Cyclotomic.zero())
        if not value.is_integer() or value.rational() < 0:
            raise DecompositionError(
                f'multiplicity of {basis[i].name or i} is {value}, not a nonnegative integer'
            )
        multiplicities.append(int(value.rational()))
    return tuple(multiplicities)


# tables


def _evaluate_cells(
    cells: dict[typing.Any, typing.Callable[[], typing.Any]], parallel: bool
) -> dict[typing.Any, typing.Any]:
    if not parallel:
        return {key: func() for key, func in cells.items()}
    results = {}

    def _run(key, func):
        return key, func()

    with concurrent.futures.ThreadPoolExecutor(max_workers=OPTIONS['max_workers']) as executor:
        future_tasks = [executor.submit(_run, key, func) for key, func in cells.items()]
        if OPTIONS['progressbar']:
            gen = progress_bar(concurrent.futures.as_completed(future_tasks), total=len(cells))
        else:
            gen = concurrent.futures.as_completed(future_tasks)
        for task in gen:
            key, value = task.result()
            results[key] = value
    return results


def _irreps(G: FiniteTwoGroup, irreps: dict[str, MonomialTwoRep] | None) -> dict[str, MonomialTwoRep]:
    if irreps is not None:
        return irreps
    from .twrep import builtin_irreps

    return builtin_irreps(G)


def fusion_table(
    G: FiniteTwoGroup,
    irreps: dict[str, MonomialTwoRep] | None = None,
    parallel: bool = False,
) -> pd.DataFrame:
    """Decompose R ⊠ S for every ordered pair of irreducibles.

    Basic fingerprints are tried first; when they are degenerate a
    :class:`FingerprintEscalationWarning` is issued and extended fingerprints are used.

    Returns
    -------
    pandas.DataFrame
        Rows and columns are irrep names; each cell is the multiplicity tuple in column order.

    Raises
    ------
    DegenerateBasisError
        When even the extended fingerprints do not separate the irreducibles.
    """
    irreps = _irreps(G, irreps)
    names = list(irreps)
    basis = [two_character(irreps[name]) for name in names]
    extended = False
    if not is_separating(basis):
        warnings.warn(
            f'basic fingerprints do not separate the irreducibles of {G.name or "this 2-group"}; '
            'using extended fingerprints',
            FingerprintEscalationWarning,
            stacklevel=2,
        )
        extended = True
        if not is_separating(basis, extended=True):
            raise DegenerateBasisError(
                f'the irreducibles of {G.name or "this 2-group"} are not separated by extended fingerprints'
            )

    cells = {
        (a, b): (
            lambda a=a, b=b: decompose(
                two_character(deligne_tensor(irreps[a], irreps[b])), basis, extended
            )
        )
        for a, b in itertools.product(names, repeat=2)
    }
    results = _evaluate_cells(cells, parallel)
    return pd.DataFrame(
        [[results[a, b] for b in names] for a in names], index=names, columns=names
    )


def inner_product_matrix(
    G: FiniteTwoGroup,
    irreps: dict[str, MonomialTwoRep] | None = None,
    parallel: bool = False,
) -> pd.DataFrame:
    """dim⟨χ_a, χ_b⟩ for every ordered pair of irreducibles."""
    irreps = _irreps(G, irreps)
    names = list(irreps)
    characters = {name: two_character(R) for name, R in irreps.items()}
    cells = {
        (a, b): (lambda a=a, b=b: inner_product(characters[a], characters[b]).dimension)
        for a, b in itertools.product(names, repeat=2)
    }
    results = _evaluate_cells(cells, parallel)
    return pd.DataFrame(
        [[results[a, b] for b in names] for a in names], index=names, columns=names
    )


def class_label(G: FiniteTwoGroup, g: int) -> str:
    return 'e' if g == G.e else str(g)


def character_table(
    G: FiniteTwoGroup, irreps: dict[str, MonomialTwoRep] | None = None
) -> pd.DataFrame:
    """Rows are irreps, columns conjugacy-class representatives, cells the values χ(g)."""
    irreps = _irreps(G, irreps)
    reps = class_representatives(G.pi1)
    return pd.DataFrame(
        [[two_character(R).values[g] for g in reps] for R in irreps.values()],
        index=list(irreps),
        columns=[class_label(G, g) for g in reps],
    )


def joint_table(
    G: FiniteTwoGroup, irreps: dict[str, MonomialTwoRep] | None = None
) -> pd.DataFrame:
    """Joint 2-characters of every irrep over all canonical joint inputs (rows)."""
    irreps = _irreps(G, irreps)
    inputs = G.joint_inputs()
    characters = {name: two_character(R) for name, R in irreps.items()}
    return pd.DataFrame(
        [[class_functor_joint(F, j) for F in characters.values()] for j in inputs],
        index=pd.MultiIndex.from_tuples([tuple(j) for j in inputs], names=['g', 'h', 'a']),
        columns=list(irreps),
    )

"""Drinfeld-center objects of the 2-group algebra, the Fourier 2-transform, and Lagrangian algebras.

Center objects are modeled by equivariantization: a π₁-graded space with a π₂-character per basis
vector and equivariant structure ``u(k, g): X_g → X_{kgk⁻¹}``. The Fourier transform keeps grades
and matrices and conjugates the π₂-characters.
"""

from __future__ import annotations

import itertools

import pydantic
from pydantic import ConfigDict

from ._linalg import SparseMatrix, Vector, solve
from .charfun import (
    ClassFunctor,
    InnerProduct,
    Pi2Rep,
    _convolution_basis,
    invariant_subspace,
    validate_class_functor,
    two_character,
)
from .groups import DualCharacter
from .scalars import Cyclotomic
from .twogroup import FiniteTwoGroup, ensure_same_ambient
from .twrep import InvalidRepresentationError, MonomialTwoRep, ValidationReport, opposite

ONE = Cyclotomic.one()


class CenterObject(pydantic.BaseModel):
    """A π₁-graded space with per-grade π₂-action and half-braiding data ``u(k, g)``."""

    group: FiniteTwoGroup
    grades: tuple[Pi2Rep, ...]
    u: dict[tuple[int, int], SparseMatrix]
    name: str = ''

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @pydantic.model_validator(mode='after')
    def validate_shapes(self) -> CenterObject:
        G = self.group
        if len(self.grades) != G.pi1.order:
            raise ValueError(f'expected one graded piece per element of π₁, got {len(self.grades)}')
        for k, g in itertools.product(G.pi1.elements, repeat=2):
            if (k, g) not in self.u:
                raise ValueError(f'u{(k, g)} is missing')
            expected = (self.grades[G.pi1.conj(k, g)].dim, self.grades[g].dim)
            if self.u[k, g].shape != expected:
                raise ValueError(f'u{(k, g)} has shape {self.u[k, g].shape}, expected {expected}')
        return self

    def dims(self) -> tuple[int, ...]:
        return tuple(piece.dim for piece in self.grades)


class AlgebraStructure(pydantic.BaseModel):
    """Unit and structure constants of an algebra on a class functor or a center object.

    ``mult[h, k, p, q]`` is the product of basis vector p of grade h with basis vector q of
    grade k, as a sparse vector in grade hk.
    """

    owner: CenterObject | ClassFunctor
    unit: dict[int, Cyclotomic]
    mult: dict[tuple[int, int, int, int], dict[int, Cyclotomic]]
    name: str = ''

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def group(self) -> FiniteTwoGroup:
        return self.owner.group

    def pieces(self) -> tuple[Pi2Rep, ...]:
        owner = self.owner
        return owner.grades if isinstance(owner, CenterObject) else owner.values

    def basis_product(self, h: int, k: int, p: int, q: int) -> dict[int, Cyclotomic]:
        return self.mult.get((h, k, p, q), {})

    def product(self, h: int, k: int, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for p, v in x.items():
            for q, w in y.items():
                for r, m in self.basis_product(h, k, p, q).items():
                    out[r] = out[r] + v * w * m if r in out else v * w * m
        return {r: v for r, v in out.items() if v}


class LagrangianReport(ValidationReport):
    """Flags for the unit, associativity, commutativity, connectedness and separability checks."""

    unit_dimension: int | None = None

    @property
    def unit(self) -> bool:
        return self.checks.get('unit', False)

    @property
    def associativity(self) -> bool:
        return self.checks.get('associativity', False)

    @property
    def commutativity(self) -> bool:
        return self.checks.get('commutativity', False)

    @property
    def connectedness(self) -> bool:
        return self.checks.get('connectedness', False)

    @property
    def separability(self) -> bool:
        return self.checks.get('separability', False)


# the Fourier 2-transform


def phi_transform(X: CenterObject) -> ClassFunctor:
    """Φ: center objects to class functors. Grades and matrices are kept, characters conjugated."""
    return ClassFunctor(
        group=X.group,
        values=tuple(piece.conjugate() for piece in X.grades),
        psi=dict(X.u),
        name=f'Φ({X.name})' if X.name else '',
    )


def psi_transform(F: ClassFunctor) -> CenterObject:
    """Ψ: the quasi-inverse of Φ, exact on the nose in this normal form."""
    return CenterObject(
        group=F.group,
        grades=tuple(value.conjugate() for value in F.values),
        u=dict(F.psi),
        name=f'Ψ({F.name})' if F.name else '',
    )


def validate_center_object(X: CenterObject) -> ValidationReport:
    report = validate_class_functor(phi_transform(X))
    report.subject = f'center object {X.name}'.strip()
    return report


def transport_algebra(A: AlgebraStructure) -> AlgebraStructure:
    """Move an algebra between its class-functor and center-object owners."""
    owner = phi_transform(A.owner) if isinstance(A.owner, CenterObject) else psi_transform(A.owner)
    return AlgebraStructure(owner=owner, unit=dict(A.unit), mult=dict(A.mult), name=A.name)


# character algebras and full centers


def character_algebra(R: MonomialTwoRep) -> AlgebraStructure:
    """The algebra structure on χ_R: ``e_i ⊗ e_i ↦ c(h, k, i) e_i`` at common fixed points.

    The unit is the identity natural transformation, the sum of all basis vectors at e.
    """
    F = two_character(R)
    G = R.group
    P = G.pi1
    position = {x: {i: p for p, i in enumerate(R.fixed_points(x))} for x in P.elements}
    mult = {}
    for h, k in itertools.product(P.elements, repeat=2):
        hk = P.mul(h, k)
        for i, p in position[h].items():
            q = position[k].get(i)
            if q is not None:
                mult[h, k, p, q] = {position[hk][i]: R.c[h][k][i]}
    unit = {p: ONE for p in position[G.e].values()}
    return AlgebraStructure(owner=F, unit=unit, mult=mult, name=f'A({R.name})' if R.name else '')


def _internal_end_character(R: MonomialTwoRep, x: int, i: int) -> DualCharacter:
    rho = DualCharacter.from_values(R.group.pi2, lambda a: R.tau[x][a][i])
    if rho is None:
        raise InvalidRepresentationError(f'tau({x}, ·, {i}) is not a character of π₂')
    return rho


def full_center_oracle(R: MonomialTwoRep) -> AlgebraStructure:
    """The full center Z(R) built directly from internal endomorphisms of the simples.

    The grade-x piece is spanned by ``[v_i, v_i]`` for the fixed points i of σ_x; the
    half-braiding sends i to ``j = σ_k(i)`` with scalar
    ``c(k, k⁻¹, j) / (tau(e, coev k, j)·c(k, x, i)·c(kx, k⁻¹, j))`` and the multiplication is
    composition of internal homs, ``c(h, k, i)⁻¹`` at common fixed points.
    """
    R.require_valid()
    G = R.group
    P, e = G.pi1, G.e
    fixed = {x: [i for i in range(R.n) if R.perm[x][i] == i] for x in P.elements}
    position = {x: {i: p for p, i in enumerate(fixed[x])} for x in P.elements}
    grades = tuple(
        Pi2Rep(group=G.pi2, characters=tuple(_internal_end_character(R, x, i) for i in fixed[x]))
        for x in P.elements
    )
    u = {}
    for k, x in itertools.product(P.elements, repeat=2):
        ki, kx, y = P.inv(k), P.mul(k, x), P.conj(k, x)
        entries = {}
        for i in fixed[x]:
            j = R.perm[k][i]
            entries[position[y][j], position[x][i]] = R.c[k][ki][j] / (
                R.tau[e][G.coev(k)][j] * R.c[k][x][i] * R.c[kx][ki][j]
            )
        u[k, x] = SparseMatrix((len(fixed[y]), len(fixed[x])), entries)
    X = CenterObject(group=G, grades=grades, u=u, name=f'Z({R.name})' if R.name else '')
    mult = {}
    for h, k in itertools.product(P.elements, repeat=2):
        hk = P.mul(h, k)
        for i in fixed[h]:
            if i in position[k]:
                mult[h, k, position[h][i], position[k][i]] = {position[hk][i]: R.c[h][k][i].inverse()}
    unit = {position[e][i]: ONE for i in fixed[e]}
    return AlgebraStructure(owner=X, unit=unit, mult=mult, name=X.name)


def normalized_structure(A: AlgebraStructure) -> dict[tuple[int, int, int, int, int], Cyclotomic]:
    """Structure constants after scaling the grade-e basis so that the unit has all coefficients 1.

    Keys are ``(h, k, p, q, r)``.
    """
    e = A.group.e
    scale = {p: v for p, v in A.unit.items()}

    def s(grade: int, index: int) -> Cyclotomic:
        return scale.get(index, ONE) if grade == e else ONE

    P = A.group.pi1
    out = {}
    for (h, k, p, q), vector in A.mult.items():
        hk = P.mul(h, k)
        for r, value in vector.items():
            out[h, k, p, q, r] = value * s(h, p) * s(k, q) / s(hk, r)
    return dict(sorted(out.items()))


def open_closed_report(R: MonomialTwoRep) -> ValidationReport:
    """Compare Ψ(χ_{R^op}) with the full center of R: dims, characters, half-braidings, algebra."""
    report = ValidationReport(subject=f'open-closed {R.name}'.strip()).start(
        'graded_dims', 'characters', 'half_braiding', 'structure_constants'
    )
    closed = full_center_oracle(R)
    op = opposite(R)
    transported = transport_algebra(character_algebra(op))
    X, Y = closed.owner, transported.owner
    P = R.group.pi1
    for g in P.elements:
        report.record('graded_dims', X.grades[g].dim == Y.grades[g].dim, (g,))
        report.record('characters', X.grades[g].multiset() == Y.grades[g].multiset(), (g,))
    if X.dims() == Y.dims():
        for k, g in itertools.product(P.elements, repeat=2):
            report.record('half_braiding', X.u[k, g] == Y.u[k, g], (k, g))
        left, right = normalized_structure(closed), normalized_structure(transported)
        for key in sorted(set(left) | set(right)):
            report.record(
                'structure_constants', left.get(key, 0) == right.get(key, 0), key
            )
    else:
        report.record('half_braiding', False, (), 'graded dimensions differ')
        report.record('structure_constants', False, (), 'graded dimensions differ')
    return report


# tensor products and the pairing


def center_tensor(X: CenterObject, Y: CenterObject) -> CenterObject:
    """Graded convolution: grade g is ⊕_{hk=g} X_h ⊗ Y_k restricted to ρ_X = ρ_Y∘(h⁻¹▷).

    The half-braiding acts factorwise, ``(h, p, q) ↦ (lhl⁻¹, u_X(l, h) p, u_Y(l, k) q)``.
    """
    G = ensure_same_ambient(X, Y)
    P = G.pi1
    keys: dict[int, list[tuple[int, int, int]]] = {}
    characters: dict[int, list[DualCharacter]] = {}
    for g in P.elements:
        keys[g], characters[g] = [], []
        for h in P.elements:
            k = P.mul(P.inv(h), g)
            inverse_action = G.action.table[P.inv(h)]
            for p, rho_p in enumerate(X.grades[h].characters):
                for q, rho_q in enumerate(Y.grades[k].characters):
                    if rho_q.precompose(inverse_action).exponents == rho_p.exponents:
                        keys[g].append((h, p, q))
                        characters[g].append(rho_p)
    index = {g: {key: i for i, key in enumerate(keys[g])} for g in P.elements}
    u = {}
    for l, g in itertools.product(P.elements, repeat=2):
        target = index[P.conj(l, g)]
        entries: dict[tuple[int, int], Cyclotomic] = {}
        for s, (h, p, q) in enumerate(keys[g]):
            k = P.mul(P.inv(h), g)
            for p_out, v in X.u[l, h].columns().get(p, ()):
                for q_out, w in Y.u[l, k].columns().get(q, ()):
                    t = target.get((P.conj(l, h), p_out, q_out))
                    if t is not None:
                        entries[t, s] = entries[t, s] + v * w if (t, s) in entries else v * w
        u[l, g] = SparseMatrix((len(target), len(keys[g])), entries)
    grades = tuple(Pi2Rep(group=G.pi2, characters=tuple(characters[g])) for g in P.elements)
    return CenterObject(group=G, grades=grades, u=u, name=f'{X.name} ⊗ {Y.name}'.strip())


def unit_hom_space(X: CenterObject) -> InnerProduct:
    """Hom(1, X): the vectors of grade e fixed by ``ρ_X(coev g)·u(g, e)`` for all g."""
    G = X.group
    e = G.e
    piece = X.grades[e]
    actions = [X.u[g, e].scale_rows(piece.diagonal(G.coev(g))) for g in G.pi1.elements]
    basis = invariant_subspace(actions, piece.dim)
    return InnerProduct(dimension=len(basis), basis=basis)


def unit_hom_dim(X: CenterObject) -> int:
    return unit_hom_space(X).dimension


# Lagrangian checks


def lax_multiplication(A: AlgebraStructure, h: int, k: int) -> SparseMatrix:
    """The multiplication on the grades (h, k) summand as a matrix; column ``p * dim_k + q``."""
    pieces = A.pieces()
    P = A.group.pi1
    dim_k = pieces[k].dim
    entries = {}
    for p, q in itertools.product(range(pieces[h].dim), range(dim_k)):
        for r, value in A.basis_product(h, k, p, q).items():
            entries[r, p * dim_k + q] = value
    return SparseMatrix((pieces[P.mul(h, k)].dim, pieces[h].dim * dim_k), entries)


def _unit_vector(index: int) -> Vector:
    return {index: ONE}


def _separable(A: AlgebraStructure) -> bool:
    """Solve for a grade and character preserving bimodule map δ: A → A ⊛ A with μ∘δ = id."""
    F = A.owner
    G = F.group
    P = G.pi1
    bases = {g: _convolution_basis(F, F, g) for g in P.elements}
    index = {g: {key: t for t, key in enumerate(bases[g][0])} for g in P.elements}

    unknown: dict[tuple[int, int, int], int] = {}
    for g in P.elements:
        keys, chars = bases[g]
        for p, rho in enumerate(F.values[g].characters):
            for t, chi in enumerate(chars):
                if chi.exponents == rho.exponents:
                    unknown[g, p, t] = len(unknown)

    def mu(g: int, t: int) -> Vector:
        k, x, y = bases[g][0][t]
        return A.basis_product(P.mul(g, P.inv(k)), k, x, y)

    def left(h: int, a: int, g: int, t: int) -> dict[int, Cyclotomic]:
        """a ▹ (k, x, y) in (F⊛F)(hg)."""
        k, x, y = bases[g][0][t]
        first = P.mul(g, P.inv(k))
        out = {}
        for s, value in A.basis_product(h, first, a, x).items():
            target = index[P.mul(h, g)].get((k, s, y))
            if target is not None:
                rho = F.values[P.mul(h, first)].characters[s]
                out[target] = value * rho(G.neg(G.alpha(h, first, k)))
        return out

    def right(g: int, t: int, l: int, b: int) -> dict[int, Cyclotomic]:
        """(k, x, y) ◃ b in (F⊛F)(gl)."""
        k, x, y = bases[g][0][t]
        first = P.mul(g, P.inv(k))
        rho = F.values[first].characters[x]
        out = {}
        for s, value in A.basis_product(k, l, y, b).items():
            target = index[P.mul(g, l)].get((P.mul(k, l), x, s))
            if target is not None:
                out[target] = value * rho(G.alpha(first, k, l))
        return out

    equations: list[tuple[Vector, Cyclotomic]] = []

    def emit(rows: dict[int, Vector]) -> None:
        equations.extend((row, Cyclotomic.zero()) for row in rows.values() if row)

    def accumulate(rows: dict[int, Vector], coordinate: int, var: int, value: Cyclotomic) -> None:
        row = rows.setdefault(coordinate, {})
        row[var] = row[var] + value if var in row else value

    for g in P.elements:
        for p in range(F.dim(g)):
            rows: dict[int, Vector] = {}
            for t in range(len(bases[g][0])):
                var = unknown.get((g, p, t))
                if var is None:
                    continue
                for r, value in mu(g, t).items():
                    accumulate(rows, r, var, value)
            for r in range(F.dim(g)):
                equations.append((rows.get(r, {}), ONE if r == p else Cyclotomic.zero()))

    for h, g in itertools.product(P.elements, repeat=2):
        hg = P.mul(h, g)
        for a, p in itertools.product(range(F.dim(h)), range(F.dim(g))):
            rows = {}
            for r, value in A.basis_product(h, g, a, p).items():
                for t in range(len(bases[hg][0])):
                    var = unknown.get((hg, r, t))
                    if var is not None:
                        accumulate(rows, t, var, value)
            for t in range(len(bases[g][0])):
                var = unknown.get((g, p, t))
                if var is None:
                    continue
                for target, value in left(h, a, g, t).items():
                    accumulate(rows, target, var, -value)
            emit(rows)

    for g, l in itertools.product(P.elements, repeat=2):
        gl = P.mul(g, l)
        for p, b in itertools.product(range(F.dim(g)), range(F.dim(l))):
            rows = {}
            for r, value in A.basis_product(g, l, p, b).items():
                for t in range(len(bases[gl][0])):
                    var = unknown.get((gl, r, t))
                    if var is not None:
                        accumulate(rows, t, var, value)
            for t in range(len(bases[g][0])):
                var = unknown.get((g, p, t))
                if var is None:
                    continue
                for target, value in right(g, t, l, b).items():
                    accumulate(rows, target, var, -value)
            emit(rows)

    cleaned = [({k: v for k, v in row.items() if v}, rhs) for row, rhs in equations]
    return solve(cleaned, len(unknown)) is not None


def check_lagrangian(A: AlgebraStructure) -> LagrangianReport:
    """Verify that ``A`` is a connected separable commutative algebra.

    Checks run on the class-functor side (a center-object owner is moved there with Φ):
    unit laws; associativity ``m(m(x, y), z) = F(α(g, h, k)) m(x, m(y, z))``; commutativity
    ``μ∘β = F(θ(hk, k) + α(hkh⁻¹, h, k))∘μ``; connectedness ``dim Hom(1, A) = 1``; and
    separability through an exact solution of the bimodule splitting equations.
    """
    if isinstance(A.owner, CenterObject):
        center_side, A = A.owner, transport_algebra(A)
    else:
        center_side = psi_transform(A.owner)
    F = A.owner
    G = F.group
    P, e = G.pi1, G.e
    report = LagrangianReport(subject=f'lagrangian {A.name}'.strip()).start(
        'unit', 'associativity', 'commutativity', 'connectedness', 'separability'
    )

    for g in P.elements:
        for p in range(F.dim(g)):
            basis = _unit_vector(p)
            report.record('unit', A.product(e, g, A.unit, basis) == basis, (g, p), 'unit·x != x')
            report.record('unit', A.product(g, e, basis, A.unit) == basis, (g, p), 'x·unit != x')

    for g, h, k in itertools.product(P.elements, repeat=3):
        gh, hk, ghk = P.mul(g, h), P.mul(h, k), P.product(g, h, k)
        out = F.values[ghk]
        phase = out.diagonal(G.alpha(g, h, k))
        for x, y, z in itertools.product(range(F.dim(g)), range(F.dim(h)), range(F.dim(k))):
            lhs = A.product(gh, k, A.basis_product(g, h, x, y), _unit_vector(z))
            inner = A.product(g, hk, _unit_vector(x), A.basis_product(h, k, y, z))
            rhs = {r: phase[r] * v for r, v in inner.items()}
            report.record('associativity', lhs == rhs, (g, h, k, x, y, z))

    for h, k in itertools.product(P.elements, repeat=2):
        g = P.mul(h, k)
        conj = P.conj(h, k)
        phase = F.values[g].diagonal(G.commutativity_correction(h, k))
        twisted = [rho.precompose(G.action.table[h]).exponents for rho in F.values[h].characters]
        for p, q in itertools.product(range(F.dim(h)), range(F.dim(k))):
            if twisted[p] != F.values[k].characters[q].exponents:
                continue
            braided = {r: v for r, v in F.psi[g, k].columns().get(q, ())}
            lhs = A.product(conj, h, braided, _unit_vector(p))
            rhs = {r: phase[r] * v for r, v in A.basis_product(h, k, p, q).items()}
            report.record('commutativity', lhs == rhs, (h, k, p, q))

    report.unit_dimension = unit_hom_dim(center_side)
    report.record(
        'connectedness', report.unit_dimension == 1, (report.unit_dimension,), 'dim Hom(1, A) != 1'
    )
    report.record('separability', _separable(A), (), 'no bimodule splitting of the multiplication')
    return report


def algebra_direct_sum(A: AlgebraStructure, B: AlgebraStructure) -> AlgebraStructure:
    """A ⊕ B on a class-functor owner: grade-wise concatenation with block structure constants."""
    F, H = A.owner, B.owner
    if isinstance(F, CenterObject) or isinstance(H, CenterObject):
        raise TypeError('direct sums are formed on the class-functor side; use transport_algebra')
    G = ensure_same_ambient(F, H)
    P = G.pi1
    values = tuple(
        Pi2Rep(group=G.pi2, characters=F.values[g].characters + H.values[g].characters)
        for g in P.elements
    )
    psi = {}
    for k, g in itertools.product(P.elements, repeat=2):
        shift_row, shift_col = F.psi[k, g].shape
        entries = dict(F.psi[k, g].entries)
        entries.update(
            {(r + shift_row, c + shift_col): v for (r, c), v in H.psi[k, g].entries.items()}
        )
        psi[k, g] = SparseMatrix(
            (shift_row + H.psi[k, g].shape[0], shift_col + H.psi[k, g].shape[1]), entries
        )
    owner = ClassFunctor(group=G, values=values, psi=psi, name=f'{F.name} ⊕ {H.name}')
    mult = dict(A.mult)
    for (h, k, p, q), vector in B.mult.items():
        shift = F.dim(P.mul(h, k))
        mult[h, k, p + F.dim(h), q + F.dim(k)] = {r + shift: v for r, v in vector.items()}
    unit = dict(A.unit)
    unit.update({p + F.dim(G.e): v for p, v in B.unit.items()})
    return AlgebraStructure(owner=owner, unit=unit, mult=mult, name=f'{A.name} ⊕ {B.name}')


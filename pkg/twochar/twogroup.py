"""Skeletal finite 2-groups.

Objects are the elements of π₁; every object has automorphism group π₂, identified
with ``End(g)`` through ``a ↦ a ⊗ 1_g`` so that ``a ⊗ b = a + g▷b`` for ``a: g → g``,
``b: h → h``. ``alpha(g, h, k)`` is the automorphism attached to the associator
``g ⊗ (h ⊗ k) → (g ⊗ h) ⊗ k``.

Every scalar correction used by the character theory is derived from this one
orientation and lives on :class:`FiniteTwoGroup`.
"""

from __future__ import annotations

import functools
import itertools
import math
import typing

import pydantic
from pydantic import ConfigDict

from .groups import AbelianGroup, FiniteGroup, GroupAction, GroupSpec, build_group


class AmbientMismatchError(Exception):
    pass


class NotCommutingError(Exception):
    pass


class ThreeCocycle(pydantic.BaseModel):
    """Sparse table of α: π₁³ → π₂; missing entries are 0."""

    entries: dict[tuple[int, int, int], int] = pydantic.Field(default_factory=dict)

    model_config = ConfigDict(frozen=True)

    @pydantic.field_validator('entries')
    @classmethod
    def drop_zeros(cls, value: dict[tuple[int, int, int], int]) -> dict[tuple[int, int, int], int]:
        return {key: a for key, a in value.items() if a}

    def __call__(self, g: int, h: int, k: int) -> int:
        return self.entries.get((g, h, k), 0)

    @property
    def is_trivial(self) -> bool:
        return not self.entries


class DualityData(pydantic.BaseModel):
    """Evaluation and coevaluation scalars presenting g⁻¹ as the two-sided dual of g."""

    ev: tuple[int, ...]
    coev: tuple[int, ...]

    model_config = ConfigDict(frozen=True)


class JointInput(typing.NamedTuple):
    """(g, h, a): a commuting pair together with a morphism g⊗h → h⊗g."""

    g: int
    h: int
    a: int


class FiniteTwoGroup(pydantic.BaseModel):
    """A finite 2-group given by its classification data (π₁, π₂, ▷, α).

    ``scalar_order`` is the N of the cyclotomic field Q(ζ_N) in which all scalars live; it is
    always extended to a multiple of the exponent of π₂.
    """

    pi1: FiniteGroup
    pi2: AbelianGroup
    action: GroupAction
    alpha: ThreeCocycle = pydantic.Field(default_factory=ThreeCocycle)
    scalar_order: pydantic.PositiveInt = 1
    name: str = ''

    model_config = ConfigDict(frozen=True)

    @pydantic.field_validator('scalar_order')
    @classmethod
    def extend_scalar_order(cls, value: int, info: pydantic.ValidationInfo) -> int:
        pi2 = info.data.get('pi2')
        return math.lcm(value, pi2.exponent) if pi2 is not None else value

    @pydantic.model_validator(mode='after')
    def validate_classification_data(self) -> FiniteTwoGroup:
        G, A = self.pi1, self.pi2
        if self.action.pi1 != G or self.action.pi2 != A:
            raise ValueError('the action is defined on different groups than pi1 and pi2')
        for (g, h, k), a in self.alpha.entries.items():
            if not all(0 <= x < G.order for x in (g, h, k)):
                raise ValueError(f'alpha entry {(g, h, k)} is not a triple of π₁ elements')
            if not 0 <= a < A.order:
                raise ValueError(f'alpha{(g, h, k)} = {a} is not an element of π₂')
            if G.identity in (g, h, k):
                raise ValueError(
                    f'alpha is not normalized: alpha{(g, h, k)} = {a} but one argument is the identity'
                )
        alpha, act = self.alpha, self.action.table
        for g, h, k, l in itertools.product(G.elements, repeat=4):
            defect = A.sum(
                act[g][alpha(h, k, l)],
                A.neg(alpha(G.mul(g, h), k, l)),
                alpha(g, G.mul(h, k), l),
                A.neg(alpha(g, h, G.mul(k, l))),
                alpha(g, h, k),
            )
            if defect:
                raise ValueError(
                    f'alpha violates the cocycle identity at (g, h, k, l)={(g, h, k, l)}; '
                    f'defect {A.element(defect)}'
                )
        # raises when the zig-zag system has no solution
        self.duality
        return self

    # group plumbing

    def mul(self, *elements: int) -> int:
        return self.pi1.product(*elements)

    def inv(self, g: int) -> int:
        return self.pi1.inv(g)

    def act(self, g: int, a: int) -> int:
        return self.action.table[g][a]

    def add(self, *terms: int) -> int:
        return self.pi2.sum(*terms)

    def neg(self, a: int) -> int:
        return self.pi2.neg(a)

    @property
    def e(self) -> int:
        return self.pi1.identity

    # duality

    @functools.cached_property
    def duality(self) -> DualityData:
        """Lexicographically least (ev, coev) per g satisfying both zig-zag identities."""
        G, A, alpha = self.pi1, self.pi2, self.alpha
        ev, coev = [], []
        for g in G.elements:
            gi = G.inv(g)
            for e_val, c_val in itertools.product(A.elements_range, repeat=2):
                first = A.sum(c_val, A.neg(alpha(g, gi, g)), self.act(g, e_val))
                second = A.sum(self.act(gi, c_val), alpha(gi, g, gi), e_val)
                if not first and not second:
                    ev.append(e_val)
                    coev.append(c_val)
                    break
            else:
                raise ValueError(f'no duality data satisfies the zig-zag identities for g={g}')
        return DualityData(ev=tuple(ev), coev=tuple(coev))

    def ev(self, g: int) -> int:
        return self.duality.ev[g]

    def coev(self, g: int) -> int:
        return self.duality.coev[g]

    # conjugation calculus

    def theta(self, g: int, x: int) -> int:
        """The morphism correcting (g ⊗ x) ⊗ g* into g x g⁻¹ inside ψ(g, x)."""
        gi = self.inv(g)
        return self.pi2.sub(self.alpha(self.mul(g, x), gi, g), self.act(g, self.ev(g)))

    def psi_correction(self, g: int, h: int, x: int) -> int:
        """β(g, h, x) with ψ(g, y)∘ψ(h, x) = F(β)∘ψ(gh, x), y = h x h⁻¹."""
        alpha = self.alpha
        y = self.pi1.conj(h, x)
        z = self.pi1.conj(g, y)
        gh = self.mul(g, h)
        return self.add(
            alpha(g, y, h),
            self.neg(alpha(g, h, x)),
            self.neg(alpha(z, g, h)),
            self.theta(g, y),
            self.act(g, self.theta(h, x)),
            self.neg(self.theta(gh, x)),
        )

    def joint_correction(self, g: int, h: int) -> int:
        """Shift applied to the joint-input morphism before tracing ψ(g, h)."""
        return self.pi2.sub(
            self.neg(self.alpha(h, g, self.inv(g))), self.act(h, self.coev(g))
        )

    def loop_correction(self, g: int) -> int:
        """The morphism turning ψ(g, e) into the π₁-action on the value at e."""
        return self.neg(self.coev(g))

    def commutativity_correction(self, h: int, k: int) -> int:
        """Correction relating μ∘braiding to μ on the summand of grades (h, k)."""
        hk = self.mul(h, k)
        return self.add(self.theta(hk, k), self.alpha(self.pi1.conj(h, k), h, k))

    # joint inputs

    def commuting_pairs(self) -> list[tuple[int, int]]:
        return [
            (g, h) for g, h in itertools.product(self.pi1.elements, repeat=2) if self.pi1.commutes(g, h)
        ]

    def joint_inputs(self) -> list[JointInput]:
        """All valid (g, h, a), in lexicographic order."""
        return [
            JointInput(g, h, a)
            for g, h in self.commuting_pairs()
            for a in self.pi2.elements_range
        ]

    def check_joint(self, j: JointInput) -> JointInput:
        j = JointInput(*j)
        if not self.pi1.commutes(j.g, j.h):
            raise NotCommutingError(
                f'g={j.g} and h={j.h} do not commute, so no morphism g⊗h → h⊗g exists'
            )
        if not 0 <= j.a < self.pi2.order:
            raise ValueError(f'{j.a} is not an element of π₂')
        return j

    def is_trivial_associator(self) -> bool:
        return self.alpha.is_trivial


def ensure_same_ambient(*objects: typing.Any) -> FiniteTwoGroup:
    """Return the common 2-group of ``objects`` (anything with a ``group`` attribute)."""
    first = objects[0].group
    for obj in objects[1:]:
        if obj.group is not first and obj.group != first:
            raise AmbientMismatchError(
                f'objects live over different 2-groups: {first.name or first!r} and '
                f'{obj.group.name or obj.group!r}'
            )
    return first


def build_two_group(
    pi1: FiniteGroup | GroupSpec | dict[str, typing.Any],
    pi2: AbelianGroup | typing.Sequence[int] | dict[str, typing.Any],
    action: GroupAction | typing.Sequence[typing.Sequence[int]] | None = None,
    alpha: ThreeCocycle | dict[tuple[int, int, int], int] | None = None,
    scalar_order: int = 1,
    name: str = '',
) -> FiniteTwoGroup:
    """Assemble and validate a finite 2-group.

    Parameters
    ----------
    pi1 : FiniteGroup or group spec
        The group of isomorphism classes of objects.
    pi2 : AbelianGroup, factor list, or ``{"factors": [...]}``
        The automorphism group of the unit.
    action : table or GroupAction, optional
        ``action[g][a] = g▷a``. Defaults to the trivial action.
    alpha : mapping or ThreeCocycle, optional
        Nonzero associator entries ``{(g, h, k): a}``. Defaults to α ≡ 0.
    scalar_order : int, optional
        Requested cyclotomic order; extended to a multiple of the exponent of π₂.
    name : str, optional

    Returns
    -------
    FiniteTwoGroup

    Raises
    ------
    pydantic.ValidationError
        When α is not normalized or violates the cocycle identity; the message carries
        the witness quadruple.
    """
    if not isinstance(pi1, FiniteGroup):
        pi1 = build_group(pi1)
    if isinstance(pi2, dict):
        pi2 = AbelianGroup(**pi2)
    elif not isinstance(pi2, AbelianGroup):
        pi2 = AbelianGroup(factors=tuple(pi2))
    if action is None:
        action = GroupAction.trivial(pi1, pi2)
    elif not isinstance(action, GroupAction):
        action = GroupAction(pi1=pi1, pi2=pi2, table=tuple(tuple(row) for row in action))
    if alpha is None:
        alpha = ThreeCocycle()
    elif not isinstance(alpha, ThreeCocycle):
        alpha = ThreeCocycle(entries=dict(alpha))
    return FiniteTwoGroup(
        pi1=pi1, pi2=pi2, action=action, alpha=alpha, scalar_order=scalar_order, name=name
    )


def conjugate_object(G: FiniteTwoGroup, g: int, x: int) -> int:
    """g x g⁻¹, the object (g ⊗ x) ⊗ g* in the skeletal model."""
    return G.pi1.conj(g, x)


def conjugate_morphism(G: FiniteTwoGroup, g: int, a: int) -> int:
    """g▷a = 1_g ⊗ a ⊗ 1_{g*}."""
    return G.act(g, a)

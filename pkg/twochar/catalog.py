"""Named catalogue of built-in 2-groups and their irreducible 2-representations"""

from __future__ import annotations

import typing

import pydantic
import tlz

from .groups import (
    DualCharacter,
    FiniteGroup,
    build_group,
    dual_group,
    subgroup_classes,
    subgroup_label,
)
from .twogroup import FiniteTwoGroup, build_two_group
from .twrep import MonomialTwoRep, induced_rep, solve_cochain, trivial_rep

_SUBSCRIPTS = str.maketrans('₀₁₂₃₄₅₆₇₈₉', '0123456789')

IRREP_ALIASES = {'1': '𝟙', '1_c': '𝟙_c', 'one': '𝟙', 'one_c': '𝟙_c'}


class CatalogueError(KeyError):
    pass


def canonical_name(name: str) -> str:
    """Subscript digits are folded, so ``"BA(Z₂)"`` finds the registered ``"BA(Z2)"``."""
    return name.translate(_SUBSCRIPTS).strip()


class CatalogueEntry(pydantic.BaseModel):
    name: pydantic.StrictStr
    description: str = ''
    build: typing.Callable[[], FiniteTwoGroup]
    irreps: typing.Callable[[FiniteTwoGroup], list[MonomialTwoRep]]


@pydantic.dataclasses.dataclass
class TwoGroupCatalogue:
    """Registry of built-in 2-groups"""

    def __post_init__(self):
        self._registry = {}
        self._groups = {}
        self._irreps = {}

    @tlz.curry
    def register(
        self,
        irreps: typing.Callable[[FiniteTwoGroup], list[MonomialTwoRep]],
        *,
        name: str,
        build: typing.Callable[[], FiniteTwoGroup],
        description: str = '',
    ) -> typing.Callable:
        """Register a 2-group together with the constructor of its irreducibles

        Parameters
        ----------
        irreps : typing.Callable
            Function taking the built 2-group and returning its irreducible 2-representations
            in catalogue order.
        name : str
            The catalogue name, e.g. ``"G1"``.
        build : typing.Callable
            Zero-argument function building the 2-group.
        description : str, optional

        Returns
        -------
        typing.Callable
            The function that was registered.
        """
        self._registry[name] = CatalogueEntry(
            name=name, description=description, build=build, irreps=irreps
        )
        return irreps

    def _entry(self, name: str) -> CatalogueEntry:
        key = canonical_name(name)
        if key not in self._registry:
            raise CatalogueError(
                f'{name} is an unknown 2-group. Valid values include: {self.keys()} .'
            )
        return self._registry[key]

    def group(self, name: str) -> FiniteTwoGroup:
        entry = self._entry(name)
        if entry.name not in self._groups:
            self._groups[entry.name] = entry.build()
        return self._groups[entry.name]

    def irreps(self, name: str) -> list[MonomialTwoRep]:
        entry = self._entry(name)
        if entry.name not in self._irreps:
            self._irreps[entry.name] = entry.irreps(self.group(entry.name))
        return self._irreps[entry.name]

    def __contains__(self, item: str) -> bool:
        return canonical_name(item) in self._registry

    def __getitem__(self, item: str) -> FiniteTwoGroup:
        return self.group(item)

    def __iter__(self) -> typing.Iterator[str]:
        return iter(self._registry.keys())

    def __repr__(self) -> str:
        return f'TwoGroupCatalogue({self.keys()})'

    def __len__(self) -> int:
        return len(self._registry)

    def items(self) -> list[tuple[str, CatalogueEntry]]:
        return list(self._registry.items())

    def keys(self) -> list[str]:
        return list(self._registry.keys())

    def values(self) -> list[CatalogueEntry]:
        return list(self._registry.values())

    def search(self, name: str | list[str]) -> TwoGroupCatalogue:
        """Sub-catalogue with the given entries"""
        if isinstance(name, str):
            name = [name]
        wanted = {canonical_name(n) for n in name}
        reg = TwoGroupCatalogue()
        reg._registry = tlz.dicttoolz.keyfilter(lambda x: x in wanted, self._registry)
        return reg


catalogue = TwoGroupCatalogue()


def _z(n: int) -> FiniteGroup:
    return build_group({'kind': 'cyclic', 'n': n})


def _build_g1() -> FiniteTwoGroup:
    return build_two_group(_z(2), [3], action=[[0, 1, 2], [0, 2, 1]], name='G1')


def _build_g2() -> FiniteTwoGroup:
    return build_two_group(_z(2), [2], alpha={(1, 1, 1): 1}, name='G2')


def _build_ba(n: int) -> typing.Callable[[], FiniteTwoGroup]:
    return lambda: build_two_group(_z(1), [n], name=f'BA(Z{n})')


def _build_grp(spec: dict[str, typing.Any], label: str) -> typing.Callable[[], FiniteTwoGroup]:
    return lambda: build_two_group(spec, [], name=f'grp({label})')


SWAP = [[0, 1], [1, 0]]


@catalogue.register(
    name='G1', build=_build_g1, description='π₁ = Z2 acting on π₂ = Z3 by inversion, α ≡ 0'
)
def _g1_irreps(G: FiniteTwoGroup) -> list[MonomialTwoRep]:
    A = G.pi2
    return [
        trivial_rep(G, name='𝟙'),
        MonomialTwoRep.build(G, SWAP, name='𝟙_c'),
        MonomialTwoRep.from_characters(
            G,
            SWAP,
            [DualCharacter(group=A, exponents=(1,)), DualCharacter(group=A, exponents=(2,))],
            name='S',
        ),
    ]


@catalogue.register(
    name='G2', build=_build_g2, description='π₁ = Z2, π₂ = Z2, trivial action, nontrivial α'
)
def _g2_irreps(G: FiniteTwoGroup) -> list[MonomialTwoRep]:
    sign = DualCharacter(group=G.pi2, exponents=(1,))
    return [
        trivial_rep(G, name='𝟙'),
        MonomialTwoRep.build(G, SWAP, name='𝟙_c'),
        solve_cochain(G, SWAP, [sign, sign], name='T'),
    ]


def _ba_irreps(G: FiniteTwoGroup) -> list[MonomialTwoRep]:
    return [
        MonomialTwoRep.from_characters(
            G, [[0]], [rho], name='Vect^' + ''.join(map(str, rho.exponents))
        )
        for rho in dual_group(G.pi2)
    ]


def _grp_irreps(G: FiniteTwoGroup) -> list[MonomialTwoRep]:
    """Induced reps k[G/H] over subgroup classes: H = G, then H = e, then by increasing order."""
    P = G.pi1
    order = sorted(
        subgroup_classes(P), key=lambda H: (len(H) != P.order, len(H) != 1, len(H), H)
    )
    reps = []
    for H in order:
        if len(H) == P.order:
            name = '𝟙'
        elif len(H) == 1:
            name = '𝟙_c'
        else:
            name = f'k[G/{subgroup_label(P, H)}]'
        reps.append(induced_rep(G, H, name=name))
    return reps


for _n in (2, 3):
    catalogue.register(
        _ba_irreps, name=f'BA(Z{_n})', build=_build_ba(_n), description=f'π₁ trivial, π₂ = Z{_n}'
    )

for _label, _spec in (
    ('Z2', {'kind': 'cyclic', 'n': 2}),
    ('Z3', {'kind': 'cyclic', 'n': 3}),
    ('S3', {'kind': 'symmetric', 'n': 3}),
):
    catalogue.register(
        _grp_irreps,
        name=f'grp({_label})',
        build=_build_grp(_spec, _label),
        description=f'the ordinary group {_label}',
    )


def builtin_two_groups() -> dict[str, FiniteTwoGroup]:
    """Every catalogue 2-group, keyed by name."""
    return {name: catalogue.group(name) for name in catalogue}


def get_two_group(name: str) -> FiniteTwoGroup:
    """
    Get a built-in 2-group by name.

    Parameters
    ----------
    name : str
        e.g. ``"G1"``, ``"BA(Z2)"`` or ``"grp(S₃)"``.

    Returns
    -------
    FiniteTwoGroup
    """
    return catalogue.group(name)


def get_available_two_groups() -> list[str]:
    return catalogue.keys()


def irreps_for(G: FiniteTwoGroup) -> dict[str, MonomialTwoRep]:
    """The named irreducibles of a catalogue 2-group, in catalogue order."""
    if G.name not in catalogue:
        raise CatalogueError(
            f'{G.name or "this 2-group"} has no built-in irreducibles. '
            f'Valid values include: {catalogue.keys()} .'
        )
    reps = catalogue.irreps(G.name)
    if catalogue.group(G.name) is not G and catalogue.group(G.name) != G:
        # same name, different data: build the irreducibles over G itself
        reps = catalogue._entry(G.name).irreps(G)
    return {R.name: R for R in reps}


def find_irrep(irreps: dict[str, MonomialTwoRep], name: str) -> MonomialTwoRep:
    key = IRREP_ALIASES.get(name, name)
    if key not in irreps:
        raise CatalogueError(f'{name} is an unknown irrep. Valid values include: {list(irreps)} .')
    return irreps[key]

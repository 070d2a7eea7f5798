#!/usr/bin/env python3
# flake8: noqa
"""Top-level module for twochar."""

from twochar.catalog import get_available_two_groups, get_two_group, irreps_for
from twochar.center import (
    AlgebraStructure,
    CenterObject,
    LagrangianReport,
    character_algebra,
    check_lagrangian,
    full_center_oracle,
    phi_transform,
    psi_transform,
)
from twochar.charfun import (
    ClassFunctor,
    Pi2Rep,
    character_table,
    decompose,
    day_convolution,
    fusion_table,
    inner_product,
    inner_product_matrix,
    joint_character,
    joint_table,
    two_character,
)
from twochar.groups import AbelianGroup, DualCharacter, FiniteGroup, build_group
from twochar.scalars import Cyclotomic, root_of_unity
from twochar.twogroup import FiniteTwoGroup, JointInput, build_two_group
from twochar.twrep import MonomialTwoRep, ValidationReport, validate_rep
from twochar.utils import set_options, show_versions

try:
    from twochar._version import __version__
except ImportError:  # pragma: no cover
    __version__ = '999'

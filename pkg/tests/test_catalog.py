import pytest

import twochar
from twochar.catalog import (
    CatalogueError,
    TwoGroupCatalogue,
    builtin_two_groups,
    canonical_name,
    catalogue,
    find_irrep,
    get_available_two_groups,
    get_two_group,
    irreps_for,
)
from twochar.twrep import trivial_rep

from .utils import builtin_names


def test_available_two_groups():
    assert get_available_two_groups() == builtin_names
    assert set(builtin_two_groups()) == set(builtin_names)
    assert len(catalogue) == len(builtin_names)
    assert 'TwoGroupCatalogue' in repr(catalogue)


@pytest.mark.parametrize('name', ['BA(Z₂)', 'grp(S₃)', ' G1 '])
def test_canonical_names(name):
    assert canonical_name(name) in builtin_names
    assert name in catalogue


def test_groups_are_cached():
    assert get_two_group('G1') is get_two_group('G1')
    assert catalogue['grp(S₃)'] is get_two_group('grp(S3)')


def test_unknown_two_group():
    with pytest.raises(CatalogueError, match='unknown 2-group'):
        get_two_group('G3')


@pytest.mark.parametrize(
    'name, expected',
    [
        ('G1', ['𝟙', '𝟙_c', 'S']),
        ('G2', ['𝟙', '𝟙_c', 'T']),
        ('BA(Z2)', ['Vect^0', 'Vect^1']),
        ('grp(Z2)', ['𝟙', '𝟙_c']),
        ('grp(S3)', ['𝟙', '𝟙_c', 'k[G/Z2]', 'k[G/Z3]']),
    ],
)
def test_irrep_names(name, expected):
    assert list(irreps_for(get_two_group(name))) == expected


def test_irreps_over_renamed_copy(g1):
    copy = g1.model_copy(update={'name': 'renamed'})
    with pytest.raises(CatalogueError, match='no built-in irreducibles'):
        irreps_for(copy)


def test_irreps_follow_the_given_group(g1):
    same = twochar.build_two_group(g1.pi1, g1.pi2, action=g1.action, name='G1')
    irreps = irreps_for(same)
    assert all(R.group == same for R in irreps.values())


@pytest.mark.parametrize('alias', ['1', 'one', '𝟙'])
def test_find_irrep_aliases(g1_irreps, alias):
    assert find_irrep(g1_irreps, alias).name == '𝟙'


def test_find_irrep_unknown(g1_irreps):
    with pytest.raises(CatalogueError, match='unknown irrep'):
        find_irrep(g1_irreps, 'V')


def test_register_and_search():
    local = TwoGroupCatalogue()

    @local.register(name='Z2 trivial', build=lambda: twochar.build_two_group({'kind': 'cyclic', 'n': 2}, []))
    def _irreps(G):
        return [trivial_rep(G)]

    assert local.keys() == ['Z2 trivial']
    assert [R.name for R in local.irreps('Z2 trivial')] == ['𝟙']
    assert local.search('G1').keys() == []
    assert catalogue.search(['G1', 'G2']).keys() == ['G1', 'G2']

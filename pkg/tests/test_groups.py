import pydantic
import pytest

from twochar.groups import (
    AbelianGroup,
    DualCharacter,
    GroupAction,
    build_group,
    class_representatives,
    conjugacy_classes,
    cosets,
    cyclic_group,
    direct_product,
    double_cosets,
    dual_group,
    generated_subgroup,
    is_subgroup,
    subgroup_classes,
    subgroup_label,
    subgroups,
    symmetric_group,
    validate_action,
)
from twochar.scalars import root_of_unity

from .utils import grp_s3_inner


@pytest.mark.parametrize(
    'spec, order, abelian',
    [
        ({'kind': 'cyclic', 'n': 4}, 4, True),
        ({'kind': 'symmetric', 'n': 3}, 6, False),
        ({'kind': 'product', 'factors': [{'kind': 'cyclic', 'n': 2}, {'kind': 'cyclic', 'n': 2}]}, 4, True),
        ({'kind': 'table', 'mul': [[0, 1], [1, 0]]}, 2, True),
    ],
)
def test_build_group(spec, order, abelian):
    G = build_group(spec)
    assert G.order == order
    assert G.is_abelian == abelian
    assert G.identity == 0


@pytest.mark.parametrize(
    'table, message',
    [
        ([], 'at least one element'),
        ([[0, 1], [1]], 'square'),
        ([[0, 2], [1, 0]], 'element indices'),
        ([[0, 1, 2], [1, 0, 0], [2, 1, 0]], 'associative|identity|inverse'),
    ],
)
def test_invalid_table(table, message):
    with pytest.raises(pydantic.ValidationError, match=message):
        build_group({'kind': 'table', 'mul': table})


def test_unknown_spec_kind():
    with pytest.raises(pydantic.ValidationError):
        build_group({'kind': 'dihedral', 'n': 4})


def test_symmetric_group_structure():
    G = symmetric_group(3)
    orders = sorted(G.element_order(g) for g in G.elements)
    assert orders == [1, 2, 2, 2, 3, 3]
    assert sorted(len(c) for c in conjugacy_classes(G)) == [1, 2, 3]
    assert len(class_representatives(G)) == 3
    for g in G.elements:
        assert G.mul(g, G.inv(g)) == G.identity


def test_direct_product_order():
    G = direct_product(cyclic_group(2), cyclic_group(3))
    assert G.order == 6
    assert G.is_abelian
    assert max(G.element_order(g) for g in G.elements) == 6


def test_subgroups_of_s3():
    G = symmetric_group(3)
    assert sorted(len(H) for H in subgroups(G)) == [1, 2, 2, 2, 3, 6]
    classes = subgroup_classes(G)
    assert [len(H) for H in classes] == [1, 2, 3, 6]
    assert [subgroup_label(G, H) for H in classes] == ['e', 'Z2', 'Z3', 'G']
    for H in classes:
        assert is_subgroup(G, H)
    assert not is_subgroup(G, (0, 1, 2))


def test_generated_subgroup():
    G = cyclic_group(6)
    assert generated_subgroup(G, [2]) == (0, 2, 4)
    assert generated_subgroup(G, [2, 3]) == tuple(range(6))


def test_cosets_identity_first():
    G = symmetric_group(3)
    H = subgroup_classes(G)[1]
    classes = cosets(G, H)
    assert len(classes) == 3
    assert G.identity in classes[0]
    assert sorted(g for c in classes for g in c) == list(G.elements)


def test_double_cosets_of_s3():
    G = symmetric_group(3)
    e, Z2, Z3, _ = subgroup_classes(G)
    assert len(double_cosets(G, Z2, Z2)) == 2
    assert len(double_cosets(G, Z3, Z3)) == 2
    assert len(double_cosets(G, Z2, Z3)) == 1
    assert len(double_cosets(G, e, e)) == 6


def test_abelian_group_arithmetic():
    A = AbelianGroup(factors=(2, 3))
    assert A.order == 6
    assert A.exponent == 6
    a = A.index((1, 2))
    assert A.element(a) == (1, 2)
    assert A.add(a, A.neg(a)) == A.zero
    assert A.sub(a, a) == A.zero
    assert A.sum(a, a, a) == A.index((1, 0))
    with pytest.raises(ValueError):
        A.index((1, 2, 3))


def test_dual_characters():
    A = AbelianGroup(factors=(3,))
    characters = dual_group(A)
    assert len(characters) == 3
    rho = characters[1]
    assert rho(1) == root_of_unity(3, 1)
    assert (rho * rho).exponents == (2,)
    assert (rho * rho.conjugate()).is_trivial
    assert rho.label() == 'ρ1'
    assert DualCharacter(group=A, exponents=(4,)).exponents == (1,)


def test_dual_character_from_values():
    A = AbelianGroup(factors=(3,))
    rho = DualCharacter.from_values(A, lambda a: root_of_unity(3, 2 * a))
    assert rho is not None and rho.exponents == (2,)
    assert DualCharacter.from_values(A, lambda a: root_of_unity(2, a)) is None


def test_precompose_with_inversion():
    A = AbelianGroup(factors=(3,))
    rho = DualCharacter(group=A, exponents=(1,))
    assert rho.precompose([0, 2, 1]).exponents == (2,)


def test_group_action_laws():
    G = cyclic_group(2)
    A = AbelianGroup(factors=(3,))
    action = validate_action(G, A, [[0, 1, 2], [0, 2, 1]])
    assert action.apply(1, 1) == 2
    assert GroupAction.trivial(G, A).apply(1, 1) == 1
    with pytest.raises(pydantic.ValidationError, match='identity'):
        validate_action(G, A, [[0, 2, 1], [0, 2, 1]])
    with pytest.raises(pydantic.ValidationError, match='injective'):
        validate_action(G, A, [[0, 1, 2], [0, 0, 1]])


@pytest.mark.parametrize('builder', [cyclic_group, symmetric_group])
def test_builders_reject_nonpositive_order(builder):
    with pytest.raises(pydantic.ValidationError):
        builder(0)


def test_separately_built_groups_compare_equal():
    a = build_group({'kind': 'table', 'mul': [[0, 1], [1, 0]]})
    b = cyclic_group(2)
    assert a is not b
    assert a == b
    assert hash(a) == hash(b)
    # touching derived data must not disturb equality
    assert a.is_abelian and b.is_abelian
    assert a.array.shape == (2, 2)
    assert a == b and b == a
    assert a != cyclic_group(3)
    assert cyclic_group(4) != build_group({'kind': 'product', 'factors': [{'kind': 'cyclic', 'n': 2}] * 2})
    assert len({a, b, cyclic_group(2)}) == 1


@pytest.mark.parametrize('factors', [(2,), (3,), (2, 2), (2, 3), (4, 2)])
def test_dual_group_separates_points(factors):
    A = AbelianGroup(factors=factors)
    characters = dual_group(A)
    assert len(characters) == A.order
    assert len({rho.exponents for rho in characters}) == A.order
    for a in A.elements_range:
        for b in A.elements_range:
            if a != b:
                assert any(rho.phase(a) != rho.phase(b) for rho in characters), (a, b)


def _class_count(G, members):
    return len({frozenset(G.conj(s, x) for s in members) for x in members})


def test_mackey_sum_over_double_cosets_of_s3():
    G = symmetric_group(3)
    e, Z2, Z3, whole = subgroup_classes(G)
    ordered = [whole, e, Z2, Z3]
    table = [
        [
            sum(
                _class_count(G, set(H) & {G.conj(dc[0], k) for k in K})
                for dc in double_cosets(G, H, K)
            )
            for K in ordered
        ]
        for H in ordered
    ]
    assert table == grp_s3_inner

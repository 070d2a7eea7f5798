import itertools

import pydantic
import pytest

import twochar
from twochar._linalg import SparseMatrix
from twochar.center import (
    CenterObject,
    LagrangianReport,
    algebra_direct_sum,
    center_tensor,
    character_algebra,
    check_lagrangian,
    full_center_oracle,
    lax_multiplication,
    normalized_structure,
    open_closed_report,
    phi_transform,
    psi_transform,
    transport_algebra,
    unit_hom_dim,
    unit_hom_space,
    validate_center_object,
)
from twochar.charfun import ClassFunctor, inner_product, two_character, validate_class_functor
from twochar.scalars import Cyclotomic
from twochar.twrep import opposite, twisted_vect_rep

ONE = Cyclotomic.one()
SMALL = ['G1', 'G2', 'BA(Z2)', 'BA(Z3)', 'grp(Z2)', 'grp(Z3)']


def _irreps(name):
    G = twochar.get_two_group(name)
    return G, twochar.irreps_for(G)


@pytest.mark.parametrize('name', SMALL)
def test_fourier_round_trip(name):
    G, irreps = _irreps(name)
    for R in irreps.values():
        F = two_character(R)
        X = psi_transform(F)
        assert validate_center_object(X).ok
        back = phi_transform(X)
        assert back.values == F.values
        assert all(back.psi[key] == F.psi[key] for key in F.psi)


def test_fourier_conjugates_characters(g1, g1_irreps):
    F = two_character(g1_irreps['S'])
    X = psi_transform(F)
    assert X.name == 'Ψ(χ_S)'
    assert X.dims() == (2, 0)
    assert X.grades[g1.e].multiset() == F.values[g1.e].conjugate().multiset()


@pytest.mark.parametrize('name', SMALL)
def test_full_center_matches_transported_opposite(name):
    G, irreps = _irreps(name)
    for R in irreps.values():
        closed = full_center_oracle(R)
        Y = psi_transform(two_character(opposite(R)))
        assert closed.owner.dims() == Y.dims()
        for key in Y.u:
            assert closed.owner.u[key] == Y.u[key]
        report = open_closed_report(R)
        assert report.ok, str(report)


@pytest.mark.slow
def test_open_closed_over_grp_s3(grp_s3_irreps):
    for R in grp_s3_irreps.values():
        assert open_closed_report(R).ok


@pytest.mark.parametrize('name', SMALL)
def test_character_algebras_are_lagrangian(name):
    G, irreps = _irreps(name)
    for R in irreps.values():
        report = check_lagrangian(character_algebra(R))
        assert isinstance(report, LagrangianReport)
        assert report.ok, str(report)
        assert report.unit_dimension == 1
        assert report.unit and report.associativity and report.commutativity
        assert report.connectedness and report.separability


def test_lagrangian_on_center_side(g1_irreps):
    report = check_lagrangian(full_center_oracle(g1_irreps['S']))
    assert report.ok, str(report)


def test_twisted_group_algebra_is_lagrangian():
    G = twochar.get_two_group('grp(Z2)')
    R = twisted_vect_rep(G, {(1, 1): -1})
    A = character_algebra(R)
    assert A.basis_product(1, 1, 0, 0) == {0: -1}
    assert check_lagrangian(A).ok


def test_direct_sum_is_not_connected(g1_irreps):
    A = character_algebra(g1_irreps['𝟙'])
    report = check_lagrangian(algebra_direct_sum(A, A))
    assert not report.ok
    assert not report.connectedness
    assert report.unit_dimension == 2
    assert report.unit and report.associativity


def test_direct_sum_needs_class_functor_owner(g1_irreps):
    A = character_algebra(g1_irreps['S'])
    with pytest.raises(TypeError, match='class-functor side'):
        algebra_direct_sum(transport_algebra(A), A)


def test_transport_round_trip(g1_irreps):
    A = character_algebra(g1_irreps['S'])
    B = transport_algebra(A)
    assert isinstance(B.owner, CenterObject)
    C = transport_algebra(B)
    assert isinstance(C.owner, ClassFunctor)
    assert C.mult == A.mult and C.unit == A.unit


def test_lax_multiplication(g1, g1_irreps):
    A = character_algebra(g1_irreps['S'])
    M = lax_multiplication(A, g1.e, g1.e)
    assert M.shape == (2, 4)
    assert set(M.entries) == {(0, 0), (1, 3)}


def test_normalized_structure_of_unit(g1_irreps):
    A = character_algebra(g1_irreps['𝟙'])
    structure = normalized_structure(A)
    assert structure[0, 0, 0, 0, 0] == 1
    assert all(value == 1 for value in structure.values())


@pytest.mark.parametrize('name', ['G1', 'G2'])
def test_center_pairing_matches_inner_product(name):
    G, irreps = _irreps(name)
    centers = {a: full_center_oracle(R).owner for a, R in irreps.items()}
    for a, b in itertools.product(irreps, repeat=2):
        expected = inner_product(two_character(irreps[a]), two_character(irreps[b])).dimension
        assert unit_hom_dim(center_tensor(centers[a], centers[b])) == expected


def test_unit_hom_space(g1_irreps):
    X = psi_transform(two_character(g1_irreps['𝟙_c']))
    space = unit_hom_space(X)
    assert space.dimension == 1
    assert len(space.basis) == 1


def test_corrupted_psi_scalar_is_detected(g1, g1_irreps):
    F = two_character(g1_irreps['𝟙_c'])
    x = 1
    broken = dict(F.psi)
    broken[x, g1.e] = F.psi[x, g1.e].map(lambda v: v * 2)
    G = ClassFunctor(group=g1, values=F.values, psi=broken)
    report = validate_class_functor(G)
    assert not report.ok
    assert 'composition' in report.failed()
    assert (x, x, g1.e) in report.witnesses('composition')


def test_corrupted_identity_is_detected(g1, g1_irreps):
    F = two_character(g1_irreps['S'])
    broken = dict(F.psi)
    broken[g1.e, g1.e] = SparseMatrix.monomial((2, 2), [(0, 1, ONE), (1, 0, ONE)])
    report = validate_class_functor(ClassFunctor(group=g1, values=F.values, psi=broken))
    assert 'identity' in report.failed()


def test_center_object_shapes(g1, g1_irreps):
    X = psi_transform(two_character(g1_irreps['S']))
    u = dict(X.u)
    del u[1, 0]
    with pytest.raises(pydantic.ValidationError, match='missing'):
        CenterObject(group=g1, grades=X.grades, u=u)


@pytest.mark.parametrize('group', ['g1', 'g2'])
def test_check_lagrangian_over_irreps(group, request):
    G = request.getfixturevalue(group)
    irreps = request.getfixturevalue(f'{group}_irreps')
    for name, R in irreps.items():
        report = check_lagrangian(character_algebra(R))
        assert report.checks['associativity'], report.witnesses('associativity')
        assert report.ok, str(report)
        assert not report.violations
    # three-fold products land in the grade of g·h·k
    if G.pi1.order > 1:
        g = G.pi1.elements[-1]
        assert G.pi1.product(g, g, g) == G.pi1.mul(G.pi1.mul(g, g), g)


def test_swap_irrep_of_g2_is_lagrangian_on_both_sides(g2_irreps):
    T = g2_irreps['T']
    assert psi_transform(two_character(T)).dims() == (2, 0)
    assert check_lagrangian(character_algebra(T)).ok
    assert check_lagrangian(full_center_oracle(T)).ok

import os

import pytest

import twochar

here = os.path.abspath(os.path.dirname(__file__))


@pytest.fixture
def sample_g1_input():
    return os.path.join(here, 'sample-inputs/g1-input.json')


@pytest.fixture
def sample_grp_z2_input():
    return os.path.join(here, 'sample-inputs/grp-z2.json')


@pytest.fixture
def sample_no_irreps_input():
    return os.path.join(here, 'sample-inputs/no-irreps.json')


@pytest.fixture
def sample_bad_syntax():
    return os.path.join(here, 'sample-inputs/bad-syntax.json')


@pytest.fixture
def sample_bad_schema():
    return os.path.join(here, 'sample-inputs/bad-schema.json')


@pytest.fixture
def sample_bad_cocycle():
    return os.path.join(here, 'sample-inputs/bad-cocycle.json')


@pytest.fixture
def sample_corrupted_tau():
    return os.path.join(here, 'sample-inputs/corrupted-tau.json')


@pytest.fixture(scope='session')
def g1():
    return twochar.get_two_group('G1')


@pytest.fixture(scope='session')
def g2():
    return twochar.get_two_group('G2')


@pytest.fixture(scope='session')
def g1_irreps(g1):
    return twochar.irreps_for(g1)


@pytest.fixture(scope='session')
def g2_irreps(g2):
    return twochar.irreps_for(g2)


@pytest.fixture(scope='session')
def grp_s3():
    return twochar.get_two_group('grp(S3)')


@pytest.fixture(scope='session')
def grp_s3_irreps(grp_s3):
    return twochar.irreps_for(grp_s3)

import json
from fractions import Fraction

import pandas as pd
import pydantic
import pytest

from twochar import _io
from twochar.scalars import Cyclotomic, root_of_unity


def test_load_document(sample_g1_input):
    document = _io.load_document(sample_g1_input)
    assert document.name == 'G1 from file'
    assert list(document.irreps) == ['𝟙', '𝟙_c', 'S']
    G, irreps = document.build()
    assert G.pi2.factors == (3,)
    assert irreps['S'].report.ok


def test_read_input_matches_builtin(sample_g1_input, g1):
    G, irreps = _io.read_input(sample_g1_input)
    assert G.pi1 == g1.pi1
    assert G.action == g1.action
    assert [R.n for R in irreps.values()] == [1, 2, 2]


def test_bad_syntax(sample_bad_syntax):
    with pytest.raises(json.JSONDecodeError):
        _io.load_document(sample_bad_syntax)


def test_bad_schema(sample_bad_schema):
    with pytest.raises(pydantic.ValidationError, match='pi3'):
        _io.load_document(sample_bad_schema)


def test_bad_cocycle(sample_bad_cocycle):
    with pytest.raises(_io.InvalidInputError, match='cocycle identity'):
        _io.read_input(sample_bad_cocycle)


def test_perm_rows_must_match_n(g1):
    document = _io.RepDocument(n=2, perm=[[0], [0]])
    with pytest.raises(ValueError, match='length n=2'):
        document.build(g1)


@pytest.mark.parametrize(
    'value, expected',
    [
        (Cyclotomic.from_rational(3), 3),
        (Cyclotomic.from_rational(Fraction(-1, 2)), '-1/2'),
        (root_of_unity(3, 1), {'order': 3, 'coefficients': ['0', '1']}),
    ],
)
def test_scalar_to_json(value, expected):
    assert _io.scalar_to_json(value) == expected


def test_rep_to_json_omits_ones(g1_irreps):
    data = _io.rep_to_json(g1_irreps['𝟙_c'])
    assert data == {'n': 2, 'perm': [[0, 1], [1, 0]], 'c': [], 'tau': []}
    assert len(_io.rep_to_json(g1_irreps['S'])['tau']) == 8


def test_document_round_trip(g1, g1_irreps, tmp_path):
    text = _io.dumps(_io.document_to_json(g1, g1_irreps))
    path = tmp_path / 'g1.json'
    _io.write_text(text, str(path))
    G, irreps = _io.read_input(str(path))
    assert _io.dumps(_io.document_to_json(G, irreps)) == text


def test_format_fusion():
    df = pd.DataFrame(
        [[(1, 0), (0, 1)], [(0, 1), (0, 2)]], index=['a', 'b'], columns=['a', 'b']
    )
    assert _io.format_fusion(df) == ['a ⊠ a = a', 'a ⊠ b = b', 'b ⊠ a = b', 'b ⊠ b = 2·b']
    empty = pd.DataFrame([[(0,)]], index=['a'], columns=['a'])
    assert _io.format_fusion(empty) == ['a ⊠ a = 0']


def test_dataframe_to_json():
    df = pd.DataFrame([[1, 2], [3, 4]], index=['x', 'y'], columns=['p', 'q'])
    data = _io.dataframe_to_json(df)
    assert data == {'index': ['x', 'y'], 'index_names': [], 'columns': ['p', 'q'], 'data': [[1, 2], [3, 4]]}
    json.dumps(data)


def test_write_text_to_stdout(capsys):
    _io.write_text('hello')
    assert capsys.readouterr().out == 'hello\n'

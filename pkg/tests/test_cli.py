import json

import pytest

from twochar.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, JobSpec, main, run_checks

from .utils import builtin_names, g1_inner


def test_list_two_groups(capsys):
    assert main(['irreps']) == EXIT_OK
    assert capsys.readouterr().out.split() == builtin_names


def test_describe_builtin(capsys):
    assert main(['describe', '--builtin', 'G1']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'name: G1' in out
    assert '|π₁|: 2 (abelian)' in out
    assert 'π₂: Z3 (order 3)' in out
    assert 'scalar field: Q(ζ3)' in out
    assert 'irreps: 𝟙, 𝟙_c, S' in out


def test_describe_json_is_normalized(sample_g1_input, tmp_path, capsys):
    first, second = tmp_path / 'first.json', tmp_path / 'second.json'
    assert main(['describe', '--input', sample_g1_input, '--format', 'json', '--output', str(first)]) == EXIT_OK
    assert main(['describe', '--input', str(first), '--format', 'json', '--output', str(second)]) == EXIT_OK
    assert first.read_text(encoding='utf-8') == second.read_text(encoding='utf-8')
    data = json.loads(first.read_text(encoding='utf-8'))
    assert data['name'] == 'G1 from file'
    assert data['two_group']['pi1'] == {'kind': 'table', 'mul': [[0, 1], [1, 0]]}


def test_irreps_json(capsys):
    assert main(['irreps', '--builtin', 'G2', '--format', 'json']) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert list(data) == ['𝟙', '𝟙_c', 'T']
    assert data['T']['n'] == 2


def test_chartable(capsys):
    assert main(['chartable', '--builtin', 'G1']) == EXIT_OK
    out = capsys.readouterr().out
    assert '2 (ρ1, ρ2)' in out


def test_jointtable_json(capsys):
    assert main(['jointtable', '--builtin', 'G2', '--format', 'json']) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data['index_names'] == ['g', 'h', 'a']
    assert data['columns'] == ['𝟙', '𝟙_c', 'T']
    assert len(data['index']) == 8


def test_fusion_text(capsys):
    assert main(['fusion', '--builtin', 'G1']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert 'S ⊠ S = 𝟙_c + S' in lines
    assert '𝟙_c ⊠ 𝟙_c = 2·𝟙_c' in lines
    assert '𝟙 ⊠ S = S' in lines


def test_fusion_parallel_to_file(tmp_path, capsys):
    path = tmp_path / 'fusion.json'
    assert main(['fusion', '--builtin', 'G2', '--format', 'json', '--parallel', '--output', str(path)]) == EXIT_OK
    assert capsys.readouterr().out == ''
    data = json.loads(path.read_text(encoding='utf-8'))
    assert data['data'][2][2] == [0, 2, 0]


def test_parallel_json_on_stdout_is_clean(capsys):
    assert main(['fusion', '--builtin', 'G2', '--format', 'json', '--parallel']) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data['data'][2][2] == [0, 2, 0]


def test_fusion_undetermined(capsys):
    assert main(['fusion', '--builtin', 'grp(S3)']) == EXIT_FAILED
    assert 'extended fingerprints' in capsys.readouterr().err


def test_inner_from_input(sample_g1_input, capsys):
    assert main(['inner', '--input', sample_g1_input, '--format', 'json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['data'] == g1_inner


def test_inner_uses_catalogue_irreps(sample_grp_z2_input, capsys):
    assert main(['inner', '--input', sample_grp_z2_input, '--format', 'json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['data'] == [[2, 1], [1, 2]]


@pytest.mark.parametrize('irrep', ['S', '1_c', '1'])
def test_center(irrep, capsys):
    assert main(['center', '--builtin', 'G1', irrep]) == EXIT_OK
    out = capsys.readouterr().out
    assert 'dim Hom(1, Z) = 1' in out
    assert 'lagrangian' in out


def test_center_json(capsys):
    assert main(['center', '--builtin', 'G2', 'T', '--format', 'json']) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data['irrep'] == 'T'
    assert data['lagrangian']['ok'] is True
    assert data['open_closed']['ok'] is True
    assert [grade['dim'] for grade in data['center_object']['grades']] == [2, 0]


def test_center_unknown_irrep(capsys):
    assert main(['center', '--builtin', 'G1', 'V']) == EXIT_USAGE
    assert 'unknown irrep' in capsys.readouterr().err


@pytest.mark.parametrize('name', ['G1', 'G2'])
def test_check_builtin(name, capsys):
    assert main(['check', '--builtin', name]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.rstrip().endswith(f'{name}: ok')
    assert 'joint.modular_S' in out


@pytest.mark.slow
def test_check_grp_s3(capsys):
    assert main(['check', '--builtin', 'grp(S3)']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'undetermined: charfun.fusion' in out
    assert out.rstrip().endswith('grp(S3): ok')


def test_run_checks_frame(g2, g2_irreps):
    df = run_checks(g2, g2_irreps)
    assert list(df.columns) == ['family', 'subject', 'status', 'detail']
    assert set(df['status']) == {'ok'}
    assert {'rep.validate', 'center.lagrangian', 'center.unit_hom_dim', 'charfun.fusion'} <= set(df['family'])


def test_check_corrupted_tau(sample_corrupted_tau, capsys):
    assert main(['check', '--input', sample_corrupted_tau, '--format', 'json']) == EXIT_FAILED
    data = json.loads(capsys.readouterr().out)
    assert data['ok'] is False
    failed = [r for r in data['results'] if r['status'] == 'failed']
    assert failed[0]['family'] == 'rep.validate'
    assert failed[0]['subject'] == 'S'
    assert 'character_law' in failed[0]['detail']


def test_chartable_corrupted_tau(sample_corrupted_tau, capsys):
    assert main(['chartable', '--input', sample_corrupted_tau]) == EXIT_FAILED
    assert 'character_law' in capsys.readouterr().err


def test_bad_syntax(sample_bad_syntax, capsys):
    assert main(['describe', '--input', sample_bad_syntax]) == EXIT_USAGE
    assert 'invalid JSON at line 4' in capsys.readouterr().err


def test_bad_schema(sample_bad_schema, capsys):
    assert main(['describe', '--input', sample_bad_schema]) == EXIT_USAGE
    assert 'pi3' in capsys.readouterr().err


def test_bad_cocycle(sample_bad_cocycle, capsys):
    assert main(['describe', '--input', sample_bad_cocycle]) == EXIT_FAILED
    assert 'cocycle identity' in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(['describe', '--input', str(tmp_path / 'absent.json')]) == EXIT_USAGE


def test_input_without_irreps(sample_no_irreps_input, capsys):
    assert main(['describe', '--input', sample_no_irreps_input]) == EXIT_OK
    assert main(['fusion', '--input', sample_no_irreps_input]) == EXIT_USAGE
    assert 'has no irreps' in capsys.readouterr().err


def test_unknown_builtin(capsys):
    assert main(['describe', '--builtin', 'G3']) == EXIT_USAGE
    assert 'unknown 2-group' in capsys.readouterr().err


@pytest.mark.parametrize(
    'argv',
    [
        ['describe'],
        ['describe', '--builtin', 'G1', '--input', 'x.json'],
    ],
)
def test_source_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert 'twochar: error:' in capsys.readouterr().err


@pytest.mark.parametrize('argv', [[], ['center', '--builtin', 'G1'], ['fusion', '--format', 'xml']])
def test_argparse_errors(argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == EXIT_USAGE


def test_jobspec_requires_irrep_for_center():
    with pytest.raises(ValueError, match='center needs an irrep'):
        JobSpec(command='center', builtin='G1')


def test_versions(capsys):
    assert main(['versions']) == EXIT_OK
    assert 'INSTALLED VERSIONS' in capsys.readouterr().out

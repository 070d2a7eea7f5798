"""Command-line front end: ``twochar <command> --builtin G1`` or ``--input document.json``.

Exit codes are 0 on success, 1 when a validation or verification fails, 2 on usage and parse errors.
"""

from __future__ import annotations

import argparse
import collections
import io
import itertools
import json
import sys
import typing
import warnings

import pandas as pd
import pydantic

from . import _io
from .catalog import CatalogueError, find_irrep, get_available_two_groups, get_two_group, irreps_for
from .center import (
    center_tensor,
    character_algebra,
    check_lagrangian,
    full_center_oracle,
    open_closed_report,
    phi_transform,
    psi_transform,
    unit_hom_dim,
)
from .charfun import (
    DegenerateBasisError,
    DecompositionError,
    character_table,
    conjugate_joint,
    fingerprint,
    fusion_table,
    inner_product,
    inner_product_matrix,
    joint_character,
    joint_table,
    left_dual_input,
    modular_S,
    modular_T,
    two_character,
    validate_class_functor,
)
from .twogroup import FiniteTwoGroup
from .twrep import InvalidRepresentationError, MonomialTwoRep, deligne_tensor, direct_sum, opposite
from .utils import set_options, show_versions

COMMANDS = (
    'describe',
    'irreps',
    'chartable',
    'jointtable',
    'fusion',
    'inner',
    'center',
    'check',
    'versions',
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class JobSpec(pydantic.BaseModel):
    command: typing.Literal[COMMANDS]  # type: ignore[valid-type]
    builtin: str | None = None
    input: str | None = None
    format: typing.Literal['text', 'json'] = 'text'
    output: str | None = None
    parallel: bool = False
    irrep: str | None = None

    @pydantic.model_validator(mode='after')
    def validate_source(self) -> JobSpec:
        if self.builtin is not None and self.input is not None:
            raise ValueError('use either --builtin or --input, not both')
        needs_source = self.command not in {'irreps', 'versions'}
        if needs_source and self.builtin is None and self.input is None:
            raise ValueError(f'{self.command} needs --builtin <name> or --input <path>')
        if self.command == 'center' and not self.irrep:
            raise ValueError('center needs an irrep name')
        return self


# loading


def _load(job: JobSpec) -> tuple[FiniteTwoGroup, dict[str, MonomialTwoRep] | None]:
    if job.builtin is not None:
        G = get_two_group(job.builtin)
        return G, irreps_for(G)
    G, irreps = _io.read_input(job.input)
    if irreps is None and G.name in get_available_two_groups():
        irreps = irreps_for(G)
    return G, irreps


def _require_irreps(G: FiniteTwoGroup, irreps: dict[str, MonomialTwoRep] | None) -> dict:
    if not irreps:
        raise UsageError(f'{G.name or "the input"} has no irreps; add an "irreps" section')
    return irreps


# commands


def describe(G: FiniteTwoGroup, irreps: dict[str, MonomialTwoRep] | None) -> str:
    P, A = G.pi1, G.pi2
    lines = [
        f'name: {G.name or "(unnamed)"}',
        f'|π₁|: {P.order}' + (' (abelian)' if P.is_abelian else ''),
        f'π₂: {" × ".join(f"Z{n}" for n in A.factors) or "trivial"} (order {A.order})',
        f'action trivial: {all(G.act(g, a) == a for g in P.elements for a in A.elements_range)}',
        f'α trivial: {G.is_trivial_associator()} ({len(G.alpha.entries)} nonzero entries)',
        f'scalar field: Q(ζ{G.scalar_order})',
        'duality (g: ev, coev): '
        + ', '.join(f'{g}: ({G.ev(g)}, {G.coev(g)})' for g in P.elements),
    ]
    if irreps:
        lines.append(f'irreps: {", ".join(irreps)}')
    return '\n'.join(lines)


def _emit_table(df: pd.DataFrame, job: JobSpec) -> str:
    if job.format == 'json':
        return _io.dumps(_io.dataframe_to_json(df))
    return _io.dataframe_to_text(df)


def _irrep_summary(irreps: dict[str, MonomialTwoRep]) -> pd.DataFrame:
    rows = []
    for name, R in irreps.items():
        F = two_character(R)
        rows.append(
            {
                'irrep': name,
                'n': R.n,
                'valid': R.report.ok,
                'dims': tuple(F.dim(g) for g in R.group.pi1.elements),
            }
        )
    return pd.DataFrame(rows).set_index('irrep')


def center_command(G: FiniteTwoGroup, irreps: dict, job: JobSpec) -> tuple[str, bool]:
    R = find_irrep(irreps, job.irrep)
    A = character_algebra(R)
    X = psi_transform(A.owner)
    report = check_lagrangian(A)
    closed = open_closed_report(R)
    ok = report.ok and closed.ok
    if job.format == 'json':
        data = {
            'irrep': R.name,
            'center_object': _io.center_object_to_json(X),
            'lagrangian': _io.report_to_json(report),
            'open_closed': _io.report_to_json(closed),
        }
        return _io.dumps(data), ok
    lines = [f'Ψ(χ_{R.name}): graded pieces']
    for g in G.pi1.elements:
        lines.append(f'  grade {g}: {X.grades[g]}')
    lines.append(f'dim Hom(1, Z) = {report.unit_dimension}')
    lines.append(str(report))
    lines.append(str(closed))
    return '\n'.join(lines), ok


# the check suite


class CheckResult(typing.NamedTuple):
    family: str
    subject: str
    status: str
    detail: str = ''


def _status(ok: bool) -> str:
    return 'ok' if ok else 'failed'


def _joint_checks(R: MonomialTwoRep) -> list[CheckResult]:
    G = R.group
    F = two_character(R)
    failures = collections.defaultdict(list)
    for j in G.joint_inputs():
        value = joint_character(R, j)
        images = {'modular_S': modular_S(G, j), 'modular_T': modular_T(G, j)}
        for family, image in images.items():
            if joint_character(R, image) != value:
                failures[family].append(tuple(j))
        for k in G.pi1.elements:
            if joint_character(R, conjugate_joint(G, k, j)) != value:
                failures['conjugate_joint'].append((k, *j))
        double = modular_S(G, modular_S(G, j))
        if joint_character(R, double) != joint_character(R, left_dual_input(G, j)):
            failures['double_S'].append(tuple(j))
    for g in G.pi1.elements:
        if joint_character(R, (g, G.e, G.pi2.zero)) != F.dim(g):
            failures['dimension'].append((g,))
    return [
        CheckResult(
            f'joint.{family}',
            R.name,
            _status(not failures[family]),
            f'witnesses {failures[family][:3]}' if failures[family] else '',
        )
        for family in ('modular_S', 'modular_T', 'conjugate_joint', 'double_S', 'dimension')
    ]


def _multiset_product(
    left: collections.Counter, right: collections.Counter, factors: tuple[int, ...]
) -> collections.Counter:
    """Eigencharacter multiset of a tensor product: exponents add."""
    out = collections.Counter()
    for (x, m), (y, n) in itertools.product(left.items(), right.items()):
        product = tuple((a + b) % f for a, b, f in zip(x, y, factors))
        out[product] += m * n
    return out


def _structural_checks(R: MonomialTwoRep, S: MonomialTwoRep) -> list[CheckResult]:
    G = R.group
    P = G.pi1
    subject = f'{R.name}, {S.name}'
    FR, FS = two_character(R), two_character(S)
    total = tuple(a + b for a, b in zip(fingerprint(FR), fingerprint(FS)))
    additive = fingerprint(two_character(direct_sum(R, S))) == total
    FT = two_character(deligne_tensor(R, S))
    multiplicative = all(
        FT.values[g].multiset()
        == _multiset_product(FR.values[g].multiset(), FS.values[g].multiset(), G.pi2.factors)
        for g in P.elements
    )
    return [
        CheckResult('structure.additivity', subject, _status(additive)),
        CheckResult('structure.multiplicativity', subject, _status(multiplicative)),
    ]


def _duality_check(R: MonomialTwoRep) -> CheckResult:
    P = R.group.pi1
    op = two_character(opposite(R))
    F = two_character(R)
    ok = all(
        op.values[g].multiset() == F.values[P.inv(g)].conjugate().multiset() for g in P.elements
    )
    return CheckResult('structure.op_duality', R.name, _status(ok))


def run_checks(
    G: FiniteTwoGroup, irreps: dict[str, MonomialTwoRep], parallel: bool = False
) -> pd.DataFrame:
    """Run every invariant family over a 2-group and its irreducibles.

    Returns
    -------
    pandas.DataFrame
        Columns ``family``, ``subject``, ``status`` (ok, failed or undetermined) and ``detail``.
    """
    results: list[CheckResult] = []
    valid = {}
    for name, R in irreps.items():
        report = R.report
        results.append(CheckResult('rep.validate', name, _status(report.ok), ', '.join(report.failed())))
        if report.ok:
            valid[name] = R

    for name, R in valid.items():
        F = two_character(R)
        report = validate_class_functor(F)
        results.append(
            CheckResult('charfun.validate', name, _status(report.ok), ', '.join(report.failed()))
        )
        round_trip = phi_transform(psi_transform(F))
        same = round_trip.values == F.values and all(round_trip.psi[key] == F.psi[key] for key in F.psi)
        results.append(CheckResult('center.fourier_round_trip', name, _status(same)))
        closed = open_closed_report(R)
        results.append(
            CheckResult('center.open_closed', name, _status(closed.ok), ', '.join(closed.failed()))
        )
        lagrangian = check_lagrangian(character_algebra(R))
        results.append(
            CheckResult(
                'center.lagrangian', name, _status(lagrangian.ok), ', '.join(lagrangian.failed())
            )
        )
        results.extend(_joint_checks(R))
        results.append(_duality_check(R))

    centers = {name: full_center_oracle(R).owner for name, R in valid.items()}
    for a, b in itertools.product(valid, repeat=2):
        pairing = inner_product(two_character(valid[a]), two_character(valid[b])).dimension
        closed = unit_hom_dim(center_tensor(centers[a], centers[b]))
        results.append(
            CheckResult(
                'center.unit_hom_dim',
                f'{a}, {b}',
                _status(pairing == closed),
                '' if pairing == closed else f'⟨χ, χ⟩ = {pairing}, dim Hom(1, Z ⊗ Z) = {closed}',
            )
        )
        results.extend(_structural_checks(valid[a], valid[b]))

    if valid:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter('ignore')
                fusion_table(G, valid, parallel=parallel)
            results.append(CheckResult('charfun.fusion', G.name, 'ok'))
        except DegenerateBasisError as exc:
            results.append(CheckResult('charfun.fusion', G.name, 'undetermined', str(exc)))
        except DecompositionError as exc:
            results.append(CheckResult('charfun.fusion', G.name, 'failed', str(exc)))

    return pd.DataFrame(results, columns=list(CheckResult._fields))


def _summarize_checks(df: pd.DataFrame) -> pd.DataFrame:
    """One row per family: counts of ok, failed and undetermined results."""
    counts = df.groupby(['family', 'status']).size().unstack(fill_value=0)
    for status in ('ok', 'failed', 'undetermined'):
        if status not in counts:
            counts[status] = 0
    return counts[['ok', 'failed', 'undetermined']]


def check_command(G: FiniteTwoGroup, irreps: dict, job: JobSpec) -> tuple[str, bool]:
    df = run_checks(G, irreps, parallel=job.parallel)
    ok = not (df['status'] == 'failed').any()
    if job.format == 'json':
        data = {'name': G.name, 'ok': bool(ok), 'results': df.to_dict(orient='records')}
        return _io.dumps(data), ok
    lines = [_io.dataframe_to_text(_summarize_checks(df))]
    for row in df[df['status'] != 'ok'].itertuples(index=False):
        lines.append(f'{row.status}: {row.family} [{row.subject}] {row.detail}'.rstrip())
    lines.append(f'{G.name or "input"}: {"ok" if ok else "FAILED"}')
    return '\n'.join(lines), ok


def run(job: JobSpec) -> int:
    """Execute one job and write its artifact; returns the exit code."""
    if job.command == 'versions':
        buffer = io.StringIO()
        show_versions(file=buffer)
        _io.write_text(buffer.getvalue().rstrip(), job.output)
        return EXIT_OK
    if job.command == 'irreps' and job.builtin is None and job.input is None:
        names = get_available_two_groups()
        text = _io.dumps(names) if job.format == 'json' else '\n'.join(names)
        _io.write_text(text, job.output)
        return EXIT_OK

    G, irreps = _load(job)
    ok = True
    if job.command == 'describe':
        if job.format == 'json':
            text = _io.dumps(_io.document_to_json(G, irreps))
        else:
            text = describe(G, irreps)
    elif job.command == 'irreps':
        irreps = _require_irreps(G, irreps)
        if job.format == 'json':
            text = _io.dumps({name: _io.rep_to_json(R) for name, R in irreps.items()})
        else:
            text = _io.dataframe_to_text(_irrep_summary(irreps))
        ok = all(R.report.ok for R in irreps.values())
    elif job.command == 'chartable':
        text = _emit_table(character_table(G, _require_irreps(G, irreps)), job)
    elif job.command == 'jointtable':
        text = _emit_table(joint_table(G, _require_irreps(G, irreps)), job)
    elif job.command == 'fusion':
        df = fusion_table(G, _require_irreps(G, irreps), parallel=job.parallel)
        text = _emit_table(df, job) if job.format == 'json' else '\n'.join(_io.format_fusion(df))
    elif job.command == 'inner':
        text = _emit_table(inner_product_matrix(G, _require_irreps(G, irreps), parallel=job.parallel), job)
    elif job.command == 'center':
        text, ok = center_command(G, _require_irreps(G, irreps), job)
    else:
        text, ok = check_command(G, _require_irreps(G, irreps), job)
    _io.write_text(text, job.output)
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='twochar', description='2-characters of finite 2-groups, computed exactly'
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--builtin', help='catalogue 2-group, e.g. G1, G2, BA(Z2), grp(S3)')
    common.add_argument('--input', help='path or fsspec URL of a JSON input document')
    common.add_argument('--format', choices=('text', 'json'), default='text')
    common.add_argument('--output', help='write to this path instead of standard output')
    common.add_argument(
        '--parallel', action='store_true', help='evaluate fusion and inner-product cells in threads'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    helps = {
        'describe': 'summary of the 2-group; with --format json the normalized input document',
        'irreps': 'the catalogue names, or the irreducibles of a 2-group',
        'chartable': 'character table over conjugacy-class representatives',
        'jointtable': 'joint 2-characters over all canonical joint inputs',
        'fusion': 'fusion rules of the irreducibles',
        'inner': 'matrix of inner-product dimensions',
        'center': 'Lagrangian algebra of an irreducible and its verification report',
        'check': 'run the full invariant suite',
        'versions': 'versions of twochar and its dependencies',
    }
    for command in COMMANDS:
        sub = subparsers.add_parser(command, parents=[common], help=helps[command])
        if command == 'center':
            sub.add_argument('irrep', help='irrep name; "1" and "1_c" are accepted for 𝟙 and 𝟙_c')
    return parser


def main(argv: typing.Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        job = JobSpec(**{k: v for k, v in vars(args).items() if v is not None})
    except pydantic.ValidationError as exc:
        parser.print_usage(sys.stderr)
        print(f'twochar: error: {exc.errors()[0]["msg"]}', file=sys.stderr)
        return EXIT_USAGE
    try:
        # fastprogress writes to stdout, so the bar is shown only on an interactive terminal
        with set_options(progressbar=job.parallel and sys.stdout.isatty()):
            return run(job)
    except json.JSONDecodeError as exc:
        location = f'line {exc.lineno}, column {exc.colno}'
        print(f'twochar: {job.input}: invalid JSON at {location}: {exc.msg}', file=sys.stderr)
        return EXIT_USAGE
    except pydantic.ValidationError as exc:
        print(f'twochar: {job.input or job.builtin}: {exc}', file=sys.stderr)
        return EXIT_USAGE
    except (CatalogueError, UsageError, FileNotFoundError, ValueError) as exc:
        print(f'twochar: {exc.args[0] if exc.args else exc}', file=sys.stderr)
        return EXIT_USAGE
    except (
        _io.InvalidInputError,
        InvalidRepresentationError,
        DegenerateBasisError,
        DecompositionError,
    ) as exc:
        print(f'twochar: {exc}', file=sys.stderr)
        return EXIT_FAILED


if __name__ == '__main__':  # pragma: no cover
    sys.exit(main())

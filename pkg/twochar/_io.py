"""JSON documents for 2-groups and 2-representations, and emitters for tables and reports"""

from __future__ import annotations

import json
import typing

import fsspec
import pandas as pd
import pydantic
from pydantic import ConfigDict

from ._linalg import SparseMatrix
from .charfun import Pi2Rep
from .groups import GroupSpec
from .scalars import Cyclotomic
from .twogroup import FiniteTwoGroup, build_two_group
from .twrep import MonomialTwoRep, ValidationReport, as_scalar

JsonScalar = int | str | dict[str, typing.Any]


class InvalidInputError(Exception):
    pass


class AbelianDocument(pydantic.BaseModel):
    factors: list[pydantic.PositiveInt] = pydantic.Field(default_factory=list)

    model_config = ConfigDict(extra='forbid')


class TwoGroupDocument(pydantic.BaseModel):
    """``{"pi1": group spec, "pi2": {"factors": [...]}, "action": [[...]], "alpha": [[g, h, k, a]]}``"""

    pi1: GroupSpec
    pi2: AbelianDocument = pydantic.Field(default_factory=AbelianDocument)
    action: list[list[pydantic.NonNegativeInt]] | None = None
    alpha: list[tuple[int, int, int, int]] = pydantic.Field(default_factory=list)
    scalar_order: pydantic.PositiveInt = 1

    model_config = ConfigDict(extra='forbid')

    @pydantic.field_validator('alpha', mode='before')
    @classmethod
    def accept_entries_mapping(cls, value: typing.Any) -> typing.Any:
        if isinstance(value, dict):
            return value.get('entries', [])
        return value

    def build(self, name: str = '') -> FiniteTwoGroup:
        return build_two_group(
            self.pi1.model_dump(),
            self.pi2.factors,
            action=self.action,
            alpha={(g, h, k): a for g, h, k, a in self.alpha},
            scalar_order=self.scalar_order,
            name=name,
        )


class RepDocument(pydantic.BaseModel):
    """``{"n": 2, "perm": [[...]], "c": [[g, h, i, scalar]], "tau": [[g, a, i, scalar]]}``

    Omitted c and tau entries are 1. A scalar is an integer, a ``"p/q"`` string,
    ``{"root": [N, k]}`` or ``{"order": N, "coefficients": [...]}``.
    """

    n: pydantic.NonNegativeInt
    perm: list[list[pydantic.NonNegativeInt]] | dict[str, list[pydantic.NonNegativeInt]]
    c: list[tuple[int, int, int, JsonScalar]] = pydantic.Field(default_factory=list)
    tau: list[tuple[int, int, int, JsonScalar]] = pydantic.Field(default_factory=list)

    model_config = ConfigDict(extra='forbid')

    def build(self, G: FiniteTwoGroup, name: str = '') -> MonomialTwoRep:
        perm = self.perm
        if isinstance(perm, dict):
            perm = [perm[str(g)] for g in G.pi1.elements]
        if any(len(row) != self.n for row in perm):
            raise ValueError(f'{name or "rep"}: every perm row must have length n={self.n}')
        return MonomialTwoRep.build(
            G,
            perm,
            c={(g, h, i): as_scalar(v) for g, h, i, v in self.c},
            tau={(g, a, i): as_scalar(v) for g, a, i, v in self.tau},
            name=name,
        )


class InputDocument(pydantic.BaseModel):
    """``{"name": ..., "two_group": {...}, "irreps": {name: rep, ...}}``"""

    name: str = ''
    two_group: TwoGroupDocument
    irreps: dict[str, RepDocument] | None = None

    model_config = ConfigDict(extra='forbid')

    def build(self) -> tuple[FiniteTwoGroup, dict[str, MonomialTwoRep] | None]:
        G = self.two_group.build(self.name)
        if self.irreps is None:
            return G, None
        return G, {name: rep.build(G, name) for name, rep in self.irreps.items()}


def load_document(path: str, storage_options: dict[str, typing.Any] | None = None) -> InputDocument:
    """Read an input document from any fsspec location.

    Raises
    ------
    json.JSONDecodeError
        With line and column of the syntax error.
    pydantic.ValidationError
        With the location of the offending field.
    """
    with fsspec.open(str(path), **(storage_options or {})) as fobj:
        data = json.loads(fobj.read())
    return InputDocument.model_validate(data)


def read_input(
    path: str, storage_options: dict[str, typing.Any] | None = None
) -> tuple[FiniteTwoGroup, dict[str, MonomialTwoRep] | None]:
    """Load and build a document.

    Raises
    ------
    InvalidInputError
        When the document is well formed but its data violates a group, cocycle or shape law.
    """
    document = load_document(path, storage_options)
    try:
        return document.build()
    except ValueError as exc:
        raise InvalidInputError(f'{path}: {exc}') from exc


# normalized emission


def scalar_to_json(value: Cyclotomic) -> JsonScalar:
    if value.is_integer():
        return int(value.rational())
    if value.is_rational():
        return str(value.rational())
    return value.to_json()


def two_group_to_json(G: FiniteTwoGroup) -> dict[str, typing.Any]:
    return {
        'pi1': {'kind': 'table', 'mul': [list(row) for row in G.pi1.table]},
        'pi2': {'factors': list(G.pi2.factors)},
        'action': [list(row) for row in G.action.table],
        'alpha': [[g, h, k, a] for (g, h, k), a in sorted(G.alpha.entries.items())],
        'scalar_order': G.scalar_order,
    }


def rep_to_json(R: MonomialTwoRep) -> dict[str, typing.Any]:
    """Only the entries different from 1 are written."""
    G = R.group
    order = G.pi1.order
    return {
        'n': R.n,
        'perm': [list(row) for row in R.perm],
        'c': [
            [g, h, i, scalar_to_json(R.c[g][h][i])]
            for g in range(order)
            for h in range(order)
            for i in range(R.n)
            if R.c[g][h][i] != 1
        ],
        'tau': [
            [g, a, i, scalar_to_json(R.tau[g][a][i])]
            for g in range(order)
            for a in range(G.pi2.order)
            for i in range(R.n)
            if R.tau[g][a][i] != 1
        ],
    }


def document_to_json(
    G: FiniteTwoGroup, irreps: dict[str, MonomialTwoRep] | None = None
) -> dict[str, typing.Any]:
    data: dict[str, typing.Any] = {'name': G.name, 'two_group': two_group_to_json(G)}
    if irreps is not None:
        data['irreps'] = {name: rep_to_json(R) for name, R in irreps.items()}
    return data


def dumps(data: typing.Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def write_text(text: str, path: str | None = None, storage_options: dict | None = None) -> None:
    """Write to an fsspec location, or to standard output when ``path`` is None."""
    if path is None:
        print(text)
        return
    with fsspec.open(str(path), 'w', encoding='utf-8', **(storage_options or {})) as outfile:
        outfile.write(text if text.endswith('\n') else text + '\n')


# tables, center objects and reports


def _jsonable(value: typing.Any) -> typing.Any:
    if isinstance(value, Cyclotomic):
        return scalar_to_json(value)
    if isinstance(value, Pi2Rep):
        return {'dim': value.dim, 'characters': value.labels()}
    if isinstance(value, SparseMatrix):
        return {'shape': list(value.shape), 'entries': value.to_json()}
    if isinstance(value, tuple | list):
        return [_jsonable(v) for v in value]
    if hasattr(value, 'item'):
        return value.item()
    return value


def _cell_text(value: typing.Any) -> str:
    if isinstance(value, tuple):
        return '(' + ', '.join(_cell_text(v) for v in value) + ')'
    return str(value)


def dataframe_to_text(df: pd.DataFrame) -> str:
    return df.map(_cell_text).to_string()


def dataframe_to_json(df: pd.DataFrame) -> dict[str, typing.Any]:
    index = [list(i) if isinstance(i, tuple) else i for i in df.index]
    return {
        'index': index,
        'index_names': [n for n in df.index.names if n is not None],
        'columns': list(df.columns),
        'data': [[_jsonable(v) for v in row] for row in df.itertuples(index=False)],
    }


def format_fusion(df: pd.DataFrame) -> list[str]:
    """One line per ordered pair, e.g. ``S ⊠ S = 𝟙_c + S``."""
    names = list(df.columns)
    lines = []
    for a in df.index:
        for b in names:
            terms = [
                name if m == 1 else f'{m}·{name}'
                for name, m in zip(names, df.loc[a, b])
                if m
            ]
            lines.append(f'{a} ⊠ {b} = {" + ".join(terms) or "0"}')
    return lines


def center_object_to_json(X: typing.Any) -> dict[str, typing.Any]:
    """Grades with dims and eigencharacters, and the half-braiding matrices."""
    G = X.group
    return {
        'name': X.name,
        'grades': [
            {'grade': g, 'dim': X.grades[g].dim, 'characters': X.grades[g].labels()}
            for g in G.pi1.elements
        ],
        'u': [
            {'k': k, 'g': g, **_jsonable(X.u[k, g])} for (k, g) in sorted(X.u)
        ],
    }


def report_to_json(report: ValidationReport) -> dict[str, typing.Any]:
    data = report.model_dump(mode='json')
    data['ok'] = report.ok
    return data

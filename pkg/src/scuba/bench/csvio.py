"""CSV schemas, emission and parsing.

Every schema lists its columns with a value kind and the key columns rows
are sorted by. Missing values are written as empty fields.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

_FORMATS = {
    "str": str,
    "int": lambda v: str(int(v)),
    "f2": lambda v: f"{float(v):.2f}",
    "f4": lambda v: f"{float(v):.4f}",
    "f6": lambda v: f"{float(v):.6f}",
}

_PARSERS = {
    "str": str,
    "int": int,
    "f2": float,
    "f4": float,
    "f6": float,
}


@dataclass(frozen=True)
class Schema:
    name: str
    columns: tuple[tuple[str, str], ...]
    keys: tuple[str, ...]

    @property
    def header(self) -> list[str]:
        return [c for c, _ in self.columns]


SCHEMAS = {
    s.name: s
    for s in (
        Schema("neutral_degree",
               (("problem", "str"), ("q", "int"), ("k", "int"), ("l", "int"),
                ("samples", "int"), ("mean_degree", "f4")),
               ("problem", "q", "k", "l")),
        Schema("neutral_proportion",
               (("problem", "str"), ("n", "int"), ("l", "int"), ("samples", "int"),
                ("mean_proportion", "f6")),
               ("problem", "n", "l")),
        # fitness columns are normalized (NKq, 4 places) or lattice units (TSPn)
        Schema("performance",
               (("problem", "str"), ("heuristic", "str"), ("q", "int"), ("k", "int"),
                ("l", "int"), ("runs", "int"), ("mean_fitness", "f4"),
                ("std_fitness", "f4"), ("best_fitness", "f4"), ("mean_evaluations", "f2")),
               ("problem", "q", "k", "l", "heuristic")),
        Schema("evaluations",
               (("problem", "str"), ("heuristic", "str"), ("q", "int"), ("k", "int"),
                ("l", "int"), ("runs", "int"), ("mean_evaluations", "f2"),
                ("mean_steps", "f2"), ("mean_flat", "f2"), ("mean_gate", "f2")),
               ("problem", "heuristic", "q", "k", "l")),
        Schema("runs",
               (("run", "int"), ("seed", "int"), ("heuristic", "str"),
                ("initial_fitness", "int"), ("fitness", "int"), ("normalized", "f6"),
                ("steps", "int"), ("flat_count", "int"), ("gate_count", "int"),
                ("evaluations", "int")),
               ("run",)),
        Schema("trace",
               (("run", "int"), ("move", "int"), ("kind", "str"), ("fitness_before", "int"),
                ("fitness_after", "int"), ("evaluations", "int")),
               ("run", "move")),
    )
}

_HEURISTIC_ORDER = {"hc": 0, "ss": 1, "hc2": 2}


def _sort_value(column: str, value):
    if value is None:
        return (1, 0)
    if column == "heuristic":
        return (0, _HEURISTIC_ORDER.get(value, len(_HEURISTIC_ORDER)), value)
    return (0, value)


def get_schema(name: str) -> Schema:
    try:
        return SCHEMAS[name]
    except KeyError:
        raise ValueError(f"unknown CSV schema {name!r}") from None


def emit_csv(rows, schema_name: str) -> str:
    """Render ``rows`` (mappings) as CSV text under the named schema."""
    schema = get_schema(schema_name)
    header = schema.header
    for row in rows:
        if set(row) != set(header):
            raise ValueError(
                f"row does not match schema {schema.name!r}: "
                f"missing {sorted(set(header) - set(row))}, extra {sorted(set(row) - set(header))}"
            )
    ordered = sorted(rows, key=lambda r: tuple(_sort_value(k, r[k]) for k in schema.keys))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in ordered:
        writer.writerow(["" if row[c] is None else _FORMATS[kind](row[c]) for c, kind in schema.columns])
    return buf.getvalue()


def parse_csv(text: str, schema_name: str) -> list[dict]:
    schema = get_schema(schema_name)
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != schema.header:
        raise ValueError(f"header {header} does not match schema {schema.name!r}")
    kinds = dict(schema.columns)
    return [
        {c: (None if v == "" else _PARSERS[kinds[c]](v)) for c, v in zip(header, record)}
        for record in reader
    ]

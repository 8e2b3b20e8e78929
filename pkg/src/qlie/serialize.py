"""JSON / CSV export of bracket tables, root data, Killing Gram matrices and R-matrices.

JSON is canonical: one record per nonzero entry, records sorted by their
labels, scalars in the ``str(Scalar)`` grammar, keys sorted, two-space
indent and a trailing newline, so equal inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .algebra import RootData, StructureConstants, basis_labels, label_H, label_X
from .scalar import Scalar, parse_scalar

__all__ = [
    "table_records", "table_from_records", "dumps_table", "loads_table",
    "root_records", "killing_records", "r_records", "dumps_records", "to_csv",
    "table_csv", "loads_table_csv", "format_value",
]


def format_value(v) -> str:
    """Scalars use their grammar; exact rationals are written as ``a`` or ``a/b``."""
    if isinstance(v, Scalar):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    return str(v)


def table_records(sc: StructureConstants, value=format_value) -> list:
    recs = []
    for (a, b) in sorted(sc.table):
        entry = sc.table[a, b]
        if entry:
            recs.append({"bracket": [a, b], "result": {t: value(c) for t, c in sorted(entry.items())}})
    return recs


def table_from_records(records: list, n: int, kind: str) -> StructureConstants:
    labels = basis_labels(n, kind)
    known = set(labels)
    table = {}
    for rec in records:
        a, b = rec["bracket"]
        if a not in known or b not in known:
            raise ValueError(f"label outside the {kind}_{n} basis in {rec['bracket']}")
        entry = {}
        for t, text in rec["result"].items():
            if t not in known:
                raise ValueError(f"label {t!r} outside the basis")
            c = parse_scalar(text)
            if c:
                entry[t] = c
        if entry:
            table[a, b] = entry
    return StructureConstants(n, kind, labels, table)


def dumps_records(records: list) -> str:
    return json.dumps(records, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def dumps_table(sc: StructureConstants, value=format_value) -> str:
    return dumps_records(table_records(sc, value))


def loads_table(text: str, n: int, kind: str) -> StructureConstants:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("a bracket table file is a single JSON array")
    return table_from_records(data, n, kind)


def root_records(rd: RootData, value=format_value) -> list:
    recs = []
    for fam, data in (("a", rd.a), ("l", rd.l), ("r", rd.r)):
        for (i, j) in sorted(data):
            vals = {label_H(k + 1): value(c) for k, c in enumerate(data[i, j]) if c}
            if vals:
                recs.append({"family": fam, "root": label_X(i, j), "result": dict(sorted(vals.items()))})
    return recs


def killing_records(gram: dict, labels: list, value=format_value) -> list:
    recs = []
    for a in sorted(labels):
        for b in sorted(labels):
            v = gram[a, b]
            if v:
                recs.append({"pair": [a, b], "value": value(v)})
    return recs


def r_records(rmats: dict, value=format_value) -> list:
    recs = []
    for label in sorted(rmats):
        body = rmats[label].body
        for idx in sorted(body.data):
            v = body.data[idx]
            if v:
                recs.append({"r": label, "index": list(idx), "value": value(v)})
    return recs


# ---------------------------------------------------------------------------
# CSV

def to_csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def table_csv(sc: StructureConstants, value=format_value) -> str:
    rows = []
    for rec in table_records(sc, value):
        a, b = rec["bracket"]
        for t, v in rec["result"].items():
            rows.append([a, b, t, v])
    return to_csv(["bra", "ket", "target", "scalar"], rows)


def loads_table_csv(text: str, n: int, kind: str) -> StructureConstants:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != ["bra", "ket", "target", "scalar"]:
        raise ValueError(f"unexpected CSV header {header}")
    records: dict = {}
    for row in reader:
        if not row:
            continue
        a, b, t, v = row
        records.setdefault((a, b), {})[t] = v
    return table_from_records([{"bracket": list(k), "result": v} for k, v in records.items()], n, kind)


def root_csv(rd: RootData, value=format_value) -> str:
    rows = []
    for rec in root_records(rd, value):
        for h, v in rec["result"].items():
            rows.append([rec["family"], rec["root"], h, v])
    return to_csv(["family", "root", "target", "scalar"], rows)


def killing_csv(gram: dict, labels: list, value=format_value) -> str:
    rows = [[*rec["pair"], rec["value"]] for rec in killing_records(gram, labels, value)]
    return to_csv(["bra", "ket", "scalar"], rows)


def r_csv(rmats: dict, value=format_value) -> str:
    rows = [[rec["r"], *rec["index"], rec["value"]] for rec in r_records(rmats, value)]
    return to_csv(["r", "i", "j", "k", "l", "scalar"], rows)

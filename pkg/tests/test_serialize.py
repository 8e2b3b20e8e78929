import json

import pytest

from qlie.algebra import compute_structure_constants, roots
from qlie.killing import killing_form
from qlie.rmatrix import r_matrices
from qlie.serialize import (
    dumps_records, dumps_table, killing_csv, killing_records, loads_table, loads_table_csv,
    r_csv, r_records, root_records, table_csv, table_records,
)


@pytest.mark.parametrize("n,kind", [(2, "gl"), (3, "sl"), (3, "gl")])
def test_json_round_trip(n, kind):
    sc = compute_structure_constants(n, kind)
    text = dumps_table(sc)
    back = loads_table(text, n, kind)
    assert back == sc
    assert dumps_table(back) == text


@pytest.mark.parametrize("n,kind", [(2, "gl"), (3, "sl")])
def test_csv_round_trip(n, kind):
    sc = compute_structure_constants(n, kind)
    text = table_csv(sc)
    assert text.splitlines()[0] == "bra,ket,target,scalar"
    assert loads_table_csv(text, n, kind) == sc


def test_record_shape_and_order():
    recs = table_records(compute_structure_constants(2, "gl"))
    assert recs[0] == {"bracket": ["H_1", "H_1"], "result": {"H_1": "(q^(2) - q^(-2))"}}
    keys = [tuple(r["bracket"]) for r in recs]
    assert keys == sorted(keys)
    assert all("K" not in r["bracket"] for r in recs)


def test_deterministic_bytes():
    a = dumps_table(compute_structure_constants(3, "gl"))
    b = dumps_table(compute_structure_constants(3, "gl"))
    assert a == b and a.endswith("\n")
    assert isinstance(json.loads(a), list)


def test_loads_rejects_foreign_labels():
    with pytest.raises(ValueError):
        loads_table('[{"bracket": ["X_1_3", "H_1"], "result": {"H_1": "(1)"}}]', 2, "gl")
    with pytest.raises(ValueError):
        loads_table('{"bracket": []}', 2, "gl")
    with pytest.raises(ValueError):
        loads_table('[{"bracket": ["H_1", "H_1"], "result": {"H_1": "q"}}]', 2, "gl")


def test_side_files():
    rd = roots(2)
    recs = root_records(rd)
    assert {r["family"] for r in recs} == {"a", "l", "r"}
    kd = killing_form(2, "gl", check=False)
    kr = killing_records(kd.gram, kd.labels)
    assert {"pair": ["H_1", "H_1"], "value": "(q^(1) + q^(-1))"} in kr
    assert killing_csv(kd.gram, kd.labels).splitlines()[0] == "bra,ket,scalar"
    rr = r_records(r_matrices(2))
    assert rr[0]["r"] == "pi pi*" and rr[0]["index"] == [1, 1, 1, 1]
    assert r_csv(r_matrices(2)).splitlines()[1] == "pi pi*,1,1,1,1,(q^(-1))"
    assert dumps_records([]) == "[]\n"

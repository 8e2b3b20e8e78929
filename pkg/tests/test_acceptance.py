"""Acceptance criteria 1-7, each checked exactly as stated.

Four criteria cannot hold as written. Their tests still assert the literal
statement and are marked ``xfail(strict=True)``: they run in full, print a
FAIL line with the counterexample, and would turn the suite red if they ever
started passing. The reasons are summarized in ``BLOCKED``.
"""
import time

import pytest

from conftest import record_acceptance
from qlie import algebra
from qlie.algebra import (
    basis_labels, closed_form, closed_form_families, compare_families,
    compute_structure_constants, table_from_families,
)
from qlie.killing import killing_form
from qlie.oracle import oracle_structure_constants, symbolic_basis
from qlie.rmatrix import check_intertwining, projector_identity, r_matrices, r_pistar_rho
from qlie.scalar import ONE, NotClassicalError, PoleError
from qlie.verify import verify_all

CASES = [(n, kind) for n in (2, 3, 4) for kind in ("gl", "sl")]

BLOCKED = {
    1: "printed M_kij = conj(N_kij) has the wrong sign for every n >= 3: the computed "
       "M is -conj(N), which is the value forced by q-antisymmetry of the printed N "
       "and by [e_ij, e_ki] = -e_kj at q = 1; all other families agree exactly",
    3: "'N = M = 1' contradicts the classical bracket it is meant to reproduce: "
       "[e_ij, e_ki] = -e_kj gives M = -1; the q = 1 table equals the gl_n/sl_n "
       "commutator table exactly",
    4: "printed lowered relations g_ijk = q^(j-i) r_ij(H_k) and N_kij = -q^(j-i) N_ijk "
       "fail for n = 3; ad-invariance gives g_ijk = q^(i-j) conj(r_ij(H_k)) and "
       "N_kij = +q^(j-i) N_ijk, which hold",
    5: "item (k) carries the printed lowered relations, which fail for n >= 3 "
       "(see criterion 4); items (a)-(j) and (l) pass for every n, kind",
}


def _blocked(k):
    return pytest.mark.xfail(strict=True, reason=BLOCKED[k])


def _cold():
    # time the R-matrix path from scratch, not from cached arrays
    for f in (algebra._raw_adjoint_arrays, algebra._adjoint_T, algebra._adjoint_tauT,
              algebra._adjoint_V):
        f.cache_clear()


# ---------------------------------------------------------------------------

@_blocked(1)
def test_criterion_1_closed_form_match():
    diffs = []
    times = {}
    for n, kind in CASES:
        t0 = time.perf_counter()
        _cold()
        sc = compute_structure_constants(n, kind)
        cf = closed_form(n, kind)
        d = sc.first_difference(cf)
        times[n, kind] = time.perf_counter() - t0
        fam = compare_families(sc.families(), cf.families())
        diffs.append((n, kind, d, fam))
    slow = [(k, t) for k, t in times.items() if t > (60 if k[0] <= 3 else 600)]
    bad = [x for x in diffs if x[2] is not None]
    if bad:
        n, kind, (a, b, t, got, want), fam = bad[0]
        total = sum(len(x[3]) for x in bad)
        families = sorted({f[0] for x in bad for f in x[3]})
        text = (f"{total} entries differ across {len(bad)}/{len(CASES)} cases, families {families}; "
                f"first {kind}_{n} [{a} o {b}]_{t}: computed {got}, printed {want}")
    else:
        text = f"all {len(CASES)} tables identical; slowest {max(times.values()):.2f}s"
    record_acceptance(1, not bad and not slow, text)
    assert not slow
    assert not bad


def test_criterion_2_oracle_equivalence():
    details = []
    ok = True
    for n in (2, 3):
        for kind in ("gl", "sl"):
            sb = symbolic_basis(n, kind)
            cert = sb.rank_certificate == len(basis_labels(n, kind))
            d = oracle_structure_constants(n, kind).first_difference(compute_structure_constants(n, kind))
            ok &= cert and d is None
            details.append(f"{kind}_{n} rank {sb.rank_certificate}{'' if d is None else ' DIFF ' + str(d[:3])}")
    record_acceptance(2, ok, "oracle == R-matrix path; " + ", ".join(details))
    assert ok


def _classical_expectations(n, kind):
    """[H,H] = 0, roots delta_ki - delta_k,i-1 + delta_k,j-1 - delta_kj, N = M = 1."""
    want = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for k in range(1, n):
                v = (k == i) - (k == i - 1) + (k == j - 1) - (k == j)
                want["l", i, j, k] = v
                want["r", i, j, k] = v
            for l in range(1, n + 1):
                if len({i, j, l}) == 3:
                    want["N", i, j, l] = 1
                    want["M", l, i, j] = 1
    for i in range(1, n):
        for j in range(1, n):
            for k in range(1, n):
                want["f", i, j, k] = 0
    return want


@_blocked(3)
def test_criterion_3_classical_limit():
    bad = []
    checked = 0
    for n, kind in CASES:
        fam = compute_structure_constants(n, kind).families()
        for (name, *idx), v in _classical_expectations(n, kind).items():
            checked += 1
            try:
                got = fam[name][tuple(idx)].classical_limit()
            except (NotClassicalError, PoleError):
                got = None
            if got != v:
                bad.append((kind, n, name, tuple(idx), got, v))
    commut = all(verify_all(n, kind, items="a").passed for n, kind in CASES)
    if bad:
        kind, n, name, idx, got, v = bad[0]
        names = sorted({b[2] for b in bad})
        text = (f"{len(bad)}/{checked} values off, all in {names}; first {kind}_{n} {name}{idx} "
                f"= {got} at q=1, stated {v}; full commutator-table match: "
                f"{'pass' if commut else 'FAIL'}")
    else:
        text = f"{checked} values exact; commutator-table match: {'pass' if commut else 'FAIL'}"
    record_acceptance(3, not bad and commut, text)
    assert commut
    assert not bad


@_blocked(4)
def test_criterion_4_killing_form():
    parts = []
    ok = True
    for n in (2, 3):
        for kind in ("gl", "sl"):
            kd = killing_form(n, kind, check=False)
            mism = kd.mismatches()
            rep = verify_all(n, kind, items="jk")
            ok &= not mism and rep.passed
            status = "values ok" if not mism else f"B({mism[0][0]},{mism[0][1]}) off"
            status += ", ad-inv " + ("ok" if rep["j"].passed else "FAIL")
            status += ", lowered " + ("ok" if rep["k"].passed else "FAIL: " + rep["k"].counterexample)
            parts.append(f"{kind}_{n} {status}")
    record_acceptance(4, ok, "; ".join(parts))
    assert ok


@_blocked(5)
def test_criterion_5_property_suite():
    failures = []
    for n, kind in CASES:
        rep = verify_all(n, kind)
        for r in rep.items:
            if not r.passed or r.skipped:
                failures.append((kind, n, r.key, r.counterexample))
    if failures:
        keys = sorted({f[2] for f in failures})
        kind, n, key, ce = failures[0]
        text = (f"{len(failures)} item failures, items {keys}; first {kind}_{n} ({key}): {ce}")
    else:
        text = f"items (a)-(l) pass for all {len(CASES)} cases"
    record_acceptance(5, not failures, text)
    assert not failures


def test_criterion_6_r_matrix_certificates():
    ok = True
    notes = []
    for n in (2, 3, 4):
        rs = list(r_matrices(n).values()) + [r_pistar_rho(n, "pi", True), r_pistar_rho(n, "pi*", True)]
        for R in rs:
            rep = check_intertwining(R)
            if not rep:
                ok = False
                notes.append(f"n={n} {R.label} fails on {rep.failing_generator}")
        p = projector_identity(n)
        if not p.passed:
            ok = False
            notes.append(f"n={n} projector coeff {p.coefficient}, rank {p.rank}")
    text = "; ".join(notes) if notes else (
        "5 R-matrices intertwine every generator for n=2,3,4; projector coefficient "
        "q^(-2n) - 1, rank 1, idempotent")
    record_acceptance(6, ok, text)
    assert ok


def _mutations(n, convention):
    fam = closed_form_families(n, convention)
    for name in ("l", "r", "f", "g", "N", "M"):
        for key in sorted(fam[name]):
            mutated = {f: dict(v) for f, v in fam.items()}
            mutated[name][key] = mutated[name][key] + ONE
            yield name, key, mutated


def test_criterion_7_fault_sensitivity():
    missed = []
    count = 0
    for n, kind in CASES:
        computed = compute_structure_constants(n, kind)
        cfam = computed.families()
        for convention in ("printed", "corrected"):
            for name, key, mutated in _mutations(n, convention):
                count += 1
                named = [(d[0], d[1]) for d in compare_families(cfam, mutated)]
                if (name, key) not in named:
                    missed.append((kind, n, convention, name, key))
                    continue
                if convention == "corrected":
                    # the mutation is the only difference, and the bracket table sees it
                    if named != [(name, key)]:
                        missed.append((kind, n, convention, name, key))
                    elif computed.first_difference(table_from_families(n, kind, mutated)) is None:
                        missed.append((kind, n, convention, name, key))
    text = (f"{count} single-coefficient mutations, each named by the closed-form comparison"
            if not missed else f"{len(missed)}/{count} mutations not named; first {missed[0]}")
    record_acceptance(7, not missed, text)
    assert not missed

"""Property suite for a bracket table.

Each item returns pass/fail with the first counterexample. The table under
test is passed in explicitly, so corrupted tables can be checked too; the
symbolic data (involution images, Killing Gram matrix) never depend on it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import (
    LABEL_K, StructureConstants, basis_labels, compute_structure_constants, label_H,
    label_X, parse_label, roots,
)
from .killing import killing_form, trace_form
from .linalg import Matrix, SpanSolver
from .oracle import basis_images, symbolic_basis
from .scalar import ZERO, NotClassicalError, PoleError, Scalar, q, q_power
from .uq import qconj_U, antipode, tilde_S, tilde_theta

__all__ = ["ItemResult", "VerificationReport", "verify_all", "classical_table", "ITEMS",
           "CONVENTIONS"]

ITEMS = {
    "a": "classical limit",
    "b": "Cartan commutativity",
    "c": "root lattice",
    "d": "dagger antiautomorphism",
    "e": "q-antisymmetry",
    "f": "K decoupling",
    "g": "tilde symmetries of l, r, f",
    "h": "tilde theta / tilde S / dagger images",
    "i": "tau images",
    "j": "Killing ad-invariance",
    "k": "lowered-index relations",
    "l": "Killing symmetry chain",
}

CONVENTIONS = ("printed", "corrected")
IMAGE_MAX_N = 4


@dataclass
class ItemResult:
    key: str
    passed: bool
    checked: int = 0
    counterexample: str | None = None
    skipped: bool = False

    @property
    def name(self) -> str:
        return ITEMS[self.key]

    def line(self) -> str:
        status = "skip" if self.skipped else ("pass" if self.passed else "FAIL")
        text = f"({self.key}) {self.name}: {status} [{self.checked} checks]"
        if self.counterexample:
            text += f" -- {self.counterexample}"
        return text


@dataclass
class VerificationReport:
    n: int
    kind: str
    items: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.items)

    def __getitem__(self, key: str) -> ItemResult:
        for r in self.items:
            if r.key == key:
                return r
        raise KeyError(key)

    def failed(self) -> list:
        return [r.key for r in self.items if not r.passed]

    def format(self) -> str:
        head = f"verify n={self.n} kind={self.kind}: {'all pass' if self.passed else 'FAILED ' + ','.join(self.failed())}"
        return "\n".join([head] + ["  " + r.line() for r in self.items])


# ---------------------------------------------------------------------------
# helpers on coefficient dicts

def _add(acc: dict, x: dict, c: Scalar) -> dict:
    for k, v in x.items():
        w = acc.get(k, ZERO) + c * v
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)
    return acc


def _bracket(sc: StructureConstants, x: dict, y: dict) -> dict:
    """Bilinear extension of the table (the adjoint action is linear in both slots)."""
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            _add(out, sc.bracket(a, b), ca * cb)
    return out


def _qlin_map(images: dict, x: dict) -> dict:
    """Apply a q-linear map given by basis images."""
    out: dict = {}
    for a, c in x.items():
        _add(out, images[a], c.qconj())
    return out


def _lin_map(images: dict, x: dict) -> dict:
    out: dict = {}
    for a, c in x.items():
        _add(out, images[a], c)
    return out


def _fmt(d: dict) -> str:
    if not d:
        return "0"
    return " + ".join(f"{v}*{k}" for k, v in sorted(d.items()))


# ---------------------------------------------------------------------------
# classical reference

def _classical_matrix(label: str, n: int) -> Matrix:
    p = parse_label(label)
    if p[0] == "X":
        return Matrix.unit(n, p[1], p[2])
    if p[0] == "H":
        return Matrix.unit(n, p[1], p[1]) - Matrix.unit(n, p[1] + 1, p[1] + 1)
    return Matrix.identity(n)


@lru_cache(maxsize=None)
def classical_table(n: int, kind: str = "gl") -> StructureConstants:
    """gl_n / sl_n commutators [A, B] = AB - BA with X_ij = e_ij, H_i = e_ii - e_i+1,i+1, K = 1."""
    labels = basis_labels(n, kind)
    mats = {l: _classical_matrix(l, n) for l in labels}
    cols = [mats[l].flat() for l in labels]
    solver = SpanSolver(Matrix([list(r) for r in zip(*cols)]))
    table = {}
    for a in labels:
        for b in labels:
            c = mats[a] @ mats[b] - mats[b] @ mats[a]
            if c.is_zero():
                continue
            coeffs = solver.coefficients(c.flat())
            table[a, b] = {t: v for t, v in zip(labels, coeffs) if v}
    return StructureConstants(n, kind, labels, table)


# ---------------------------------------------------------------------------
# items

def _item_a(sc: StructureConstants) -> ItemResult:
    ref = classical_table(sc.n, sc.kind)
    count = 0
    for a in sc.labels:
        for b in sc.labels:
            got = sc.bracket(a, b)
            want = ref.bracket(a, b)
            for t in sc.labels:
                count += 1
                c = got.get(t, ZERO)
                try:
                    v = c.classical_limit()
                except (NotClassicalError, PoleError):
                    return ItemResult("a", False, count, f"[{a} o {b}]_{t} = {c} has a pole at q = 1")
                w = want.get(t, ZERO).classical_limit()
                if v != w:
                    return ItemResult("a", False, count,
                                      f"[{a} o {b}]_{t} at q=1 is {v}, classical value {w}")
    return ItemResult("a", True, count)


def _hs(sc):
    return [l for l in sc.labels if l.startswith("H_")]


def _item_b(sc: StructureConstants) -> ItemResult:
    hs = _hs(sc)
    count = 0
    for a in hs:
        for b in hs:
            count += 1
            if sc.bracket(a, b) != sc.bracket(b, a):
                return ItemResult("b", False, count,
                                  f"[{a} o {b}] = {_fmt(sc.bracket(a, b))} but [{b} o {a}] = {_fmt(sc.bracket(b, a))}")
    return ItemResult("b", True, count)


def _item_c(sc: StructureConstants) -> ItemResult:
    rd = roots(sc.n, families=sc.families())
    bad = rd.lattice_violations()
    n = sc.n
    count = n * (n - 1) + len(rd.a) ** 2
    if bad:
        return ItemResult("c", False, count, f"a_ij law broken at {bad[0]}")
    return ItemResult("c", True, count)


def _dagger_label(label: str) -> str:
    p = parse_label(label)
    return label_X(p[2], p[1]) if p[0] == "X" else label


def _item_d(sc: StructureConstants) -> ItemResult:
    count = 0
    dag = {l: {_dagger_label(l): Scalar(1)} for l in sc.labels}
    for a in sc.labels:
        for b in sc.labels:
            count += 1
            lhs = sc.bracket(_dagger_label(a), _dagger_label(b))
            rhs = _lin_map(dag, sc.bracket(b, a))
            if lhs != rhs:
                return ItemResult("d", False, count,
                                  f"[{a}^+ o {b}^+] = {_fmt(lhs)} but [{b} o {a}]^+ = {_fmt(rhs)}")
    return ItemResult("d", True, count)


def _item_e(sc: StructureConstants) -> ItemResult:
    count = 0
    for a in sc.labels:
        for b in sc.labels:
            count += 1
            lhs = sc.bracket(a, b)
            rhs = {t: -c.qconj() for t, c in sc.bracket(b, a).items()}
            if lhs != rhs:
                return ItemResult("e", False, count,
                                  f"[{a}^q o {b}^q] = {_fmt(lhs)} but -[{b} o {a}]^q = {_fmt(rhs)}")
    return ItemResult("e", True, count)


def _item_f(sc: StructureConstants) -> ItemResult:
    if sc.kind == "sl":
        ok = LABEL_K not in sc.labels and not any(LABEL_K in v for v in sc.table.values())
        return ItemResult("f", ok, 1, None if ok else "K appears in an sl table")
    count = 0
    for a in sc.labels:
        for b, direction in ((LABEL_K, "right"), (LABEL_K, "left")):
            count += 1
            x = sc.bracket(a, LABEL_K) if direction == "right" else sc.bracket(LABEL_K, a)
            if x:
                pair = f"[{a} o K]" if direction == "right" else f"[K o {a}]"
                return ItemResult("f", False, count, f"{pair} = {_fmt(x)}")
    for (a, b), v in sc.table.items():
        count += 1
        if LABEL_K in v:
            return ItemResult("f", False, count, f"[{a} o {b}] has K component {v[LABEL_K]}")
    return ItemResult("f", True, count)


def _item_g(sc: StructureConstants) -> ItemResult:
    fam = sc.families()
    n = sc.n
    count = 0
    for (i, j, k), v in sorted(fam["l"].items()):
        count += 2
        if fam["l"][j, i, k] != -v.qconj():
            return ItemResult("g", False, count, f"l_{j}{i}(H_{k}) != -conj(l_{i}{j}(H_{k}))")
        if fam["r"][j, i, k] != -fam["r"][i, j, k].qconj():
            return ItemResult("g", False, count, f"r_{j}{i}(H_{k}) != -conj(r_{i}{j}(H_{k}))")
    for (i, j, k), v in sorted(fam["f"].items()):
        count += 1
        if v != -v.qconj():
            return ItemResult("g", False, count, f"f_{i}{j}^{k} = {v} is not q-odd")
    return ItemResult("g", True, count)


@lru_cache(maxsize=None)
def _images(n: int, kind: str) -> tuple:
    return tuple(basis_images(n, kind))


def _image_maps(n: int, kind: str) -> dict:
    out: dict = {}
    for c in _images(n, kind):
        out.setdefault(c.map_name, {})[c.label] = c.actual
    return out


def _item_h(sc: StructureConstants) -> ItemResult:
    if sc.n > IMAGE_MAX_N:
        return ItemResult("h", True, 0, "symbolic images skipped for n > %d" % IMAGE_MAX_N, skipped=True)
    checks = [c for c in _images(sc.n, sc.kind) if c.map_name in ("tilde_theta", "tilde_S", "dagger")]
    count = 0
    for c in checks:
        count += 1
        if not c.passed:
            got = "outside the span" if c.actual is None else _fmt(c.actual)
            return ItemResult("h", False, count, f"{c.map_name}({c.label}) = {got}, expected {_fmt(c.expected)}")
    # tau-closure of H_i
    for c in _images(sc.n, sc.kind):
        if c.map_name == "tau" and c.actual is None:
            return ItemResult("h", False, count, f"tau({c.label}) leaves the span")
    # compatibility of the table with tilde theta: theta~(a) o theta~(b) = theta~(a o b)
    th = _image_maps(sc.n, sc.kind)["tilde_theta"]
    for a in sc.labels:
        for b in sc.labels:
            count += 1
            lhs = _bracket(sc, th[a], th[b])
            rhs = _qlin_map(th, sc.bracket(a, b))
            if lhs != rhs:
                return ItemResult("h", False, count,
                                  f"[theta~({a}) o theta~({b})] = {_fmt(lhs)} but theta~([{a} o {b}]) = {_fmt(rhs)}")
    return ItemResult("h", True, count)


def _item_i(sc: StructureConstants) -> ItemResult:
    if sc.n > IMAGE_MAX_N:
        return ItemResult("i", True, 0, "symbolic images skipped for n > %d" % IMAGE_MAX_N, skipped=True)
    count = 0
    for c in _images(sc.n, sc.kind):
        if c.map_name != "tau":
            continue
        count += 1
        if not c.passed:
            got = "outside the span" if c.actual is None else _fmt(c.actual)
            return ItemResult("i", False, count, f"tau({c.label}) = {got}, expected {_fmt(c.expected)}")
    return ItemResult("i", True, count)


@lru_cache(maxsize=None)
def _killing(n: int, kind: str):
    return killing_form(n, kind)


def _item_j(sc: StructureConstants) -> ItemResult:
    if sc.n > IMAGE_MAX_N:
        return ItemResult("j", True, 0, "Killing form skipped for n > %d" % IMAGE_MAX_N, skipped=True)
    B = _killing(sc.n, sc.kind)
    S = _image_maps(sc.n, sc.kind)["tilde_S"]
    count = 0
    unit = {l: {l: Scalar(1)} for l in sc.labels}
    for c in sc.labels:
        Sc = S[c]
        for a in sc.labels:
            left_arg = _bracket(sc, Sc, unit[a])
            for b in sc.labels:
                count += 1
                lhs = B.pair(unit[a], sc.bracket(c, b))
                rhs = B.pair(left_arg, unit[b])
                if lhs != rhs:
                    return ItemResult("j", False, count,
                                      f"B({a}, {c} o {b}) = {lhs} but B(S~({c}) o {a}, {b}) = {rhs}")
    return ItemResult("j", True, count)


def _item_k(sc: StructureConstants, convention: str) -> ItemResult:
    """Lowered relations; each of the three is checked on all indices.

    Lowering is numeric, x_ijk = sum_l B(H_k, H_l) x_ij^l. ``"printed"``
    checks g_ijk = q^(j-i) r_ij(H_k) and N_kij = -q^(j-i) N_ijk;
    ``"corrected"`` checks the forms that ad-invariance yields,
    g_ijk = q^(i-j) conj(r_ij(H_k)) and N_kij = q^(j-i) N_ijk.
    f_ijk = f_ikj is common to both.
    """
    if sc.n > IMAGE_MAX_N:
        return ItemResult("k", True, 0, "Killing form skipped for n > %d" % IMAGE_MAX_N, skipped=True)
    B = _killing(sc.n, sc.kind)
    n = sc.n
    fam = sc.families()
    hs = range(1, n)
    printed = convention == "printed"
    count = 0
    failures = []

    def low_H(vec_of, k):
        return sum((B(label_H(k), label_H(l)) * vec_of(l) for l in hs), ZERO)

    first = None
    for i in hs:
        for j in hs:
            for k in hs:
                count += 1
                fijk = low_H(lambda l: fam["f"][i, j, l], k)
                fikj = low_H(lambda l: fam["f"][i, k, l], j)
                if fijk != fikj and first is None:
                    first = f"f_{i}{j}{k} = {fijk} but f_{i}{k}{j} = {fikj}"
    if first:
        failures.append(first)
    first = None
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for k in hs:
                count += 1
                g = low_H(lambda l: fam["g"][i, j, l], k)
                r = fam["r"][i, j, k]
                want = q_power(j - i) * r if printed else q_power(i - j) * r.qconj()
                if g != want and first is None:
                    rel = "q^(j-i) r_ij(H_k)" if printed else "q^(i-j) conj(r_ij(H_k))"
                    first = f"g_{i}{j}{k} = {g} but {rel} = {want}"
    if first:
        failures.append(first)

    def low_N(a, b, c):
        # B(X_ca, [X_ab o X_bc])
        return B.pair({label_X(c, a): Scalar(1)}, sc.bracket(label_X(a, b), label_X(b, c)))

    sign = -1 if printed else 1
    first = None
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if len({i, j, k}) < 3:
                    continue
                count += 1
                lhs = low_N(k, i, j)
                rhs = sign * q_power(j - i) * low_N(i, j, k)
                if lhs != rhs and first is None:
                    s = "-" if sign < 0 else ""
                    first = f"N_{k}{i}{j} = {lhs} but {s}q^(j-i) N_{i}{j}{k} = {rhs}"
    if first:
        failures.append(first)
    if failures:
        return ItemResult("k", False, count, "; ".join(failures))
    return ItemResult("k", True, count)


def _item_l(sc: StructureConstants) -> ItemResult:
    if sc.n > IMAGE_MAX_N:
        return ItemResult("l", True, 0, "Killing form skipped for n > %d" % IMAGE_MAX_N, skipped=True)
    B = _killing(sc.n, sc.kind)
    sb = symbolic_basis(sc.n, sc.kind)
    th = _image_maps(sc.n, sc.kind)["tilde_theta"]
    count = 0
    for a in sc.labels:
        for b in sc.labels:
            count += 3
            ba = B(b, a)
            if ba != B(a, b).qconj():
                return ItemResult("l", False, count, f"B({b}, {a}) != conj B({a}, {b})")
            if B.pair(th[a], th[b]) != ba:
                return ItemResult("l", False, count, f"B(theta~{a}, theta~{b}) != B({b}, {a})")
            x = tilde_S(sb.elements[a])
            y = antipode(qconj_U(sb.elements[b]))
            if trace_form(x, y, B.u) != ba:
                return ItemResult("l", False, count, f"B(S~{a}, S({b}~)) != B({b}, {a})")
    return ItemResult("l", True, count)


def verify_all(n: int, kind: str = "gl", table: StructureConstants | None = None,
               convention: str = "printed", items: str = "abcdefghijkl") -> VerificationReport:
    """Run items (a)-(l) on ``table`` (default: the R-matrix-path table).

    ``convention`` selects the form of the lowered relations in item (k).
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    sc = table if table is not None else compute_structure_constants(n, kind)
    if (sc.n, sc.kind) != (n, kind):
        raise ValueError("table does not match n / kind")
    run = {
        "a": _item_a, "b": _item_b, "c": _item_c, "d": _item_d, "e": _item_e, "f": _item_f,
        "g": _item_g, "h": _item_h, "i": _item_i, "j": _item_j,
        "k": lambda s: _item_k(s, convention), "l": _item_l,
    }
    report = VerificationReport(n, kind)
    for key in items:
        report.items.append(run[key](sc))
    return report

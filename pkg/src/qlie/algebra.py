"""The quantum Lie algebras L_q(gl_n) and L_q(sl_n).

The adjoint module is spanned by the tensor-operator elements T_ij and
their diagram-reflected partners V_ij. Every element handled here is a
coordinate vector on the 2n^2 symbols {T_ij} u {V_ij}; both families
transform by the same matrices

    a o T_ij = sum_kl T_kl (pi_ki (x) pi*_lj) Delta(a)      (same for V),

so a bracket [A o B] is obtained by applying the n^2 x n^2 matrix
``(pi (x) pi*) Delta(A)`` to the T- and V-coordinates of B separately.
That matrix is assembled from four numerical R-matrices, using
Delta(R^T R) = R^T_12 R^T_13 R_13 R_12, without ever touching U_q itself.

Basis labels are strings: ``"X_i_j"`` (i != j), ``"H_i"`` (1 <= i < n)
and ``"K"`` (gl only). Brackets are stored as ``[first o second]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .linalg import InconsistentSystemError, Matrix, SpanSolver, Tensor, einsum
from .rmatrix import bar, r_matrices
from .scalar import ONE, ZERO, Scalar, q, q_power

__all__ = [
    "casimir_weights", "label_X", "label_H", "LABEL_K", "parse_label", "basis_labels",
    "QLieBasis", "build_basis", "adjoint_coeffs", "StructureConstants",
    "compute_structure_constants", "closed_form", "closed_form_families", "compare_families",
    "table_from_families", "CONVENTIONS", "act",
    "roots", "RootData", "xii_expansion", "SpanViolationError", "Table",
]

LABEL_K = "K"
_QQ = q - q.inv()


class SpanViolationError(ArithmeticError):
    """A bracket of two basis elements left the span of the basis."""


def label_X(i: int, j: int) -> str:
    return f"X_{i}_{j}"


def label_H(i: int) -> str:
    return f"H_{i}"


_LABEL_RE = re.compile(r"^(?:X_(\d+)_(\d+)|H_(\d+)|K)$")


def parse_label(label: str) -> tuple:
    """``"X_1_2"`` -> ("X", 1, 2), ``"H_3"`` -> ("H", 3), ``"K"`` -> ("K",)."""
    m = _LABEL_RE.match(label)
    if not m:
        raise ValueError(f"bad basis label {label!r}")
    if m.group(1):
        return ("X", int(m.group(1)), int(m.group(2)))
    if m.group(3):
        return ("H", int(m.group(3)))
    return ("K",)


def _check_kind(n: int, kind: str):
    if n < 2:
        raise ValueError("n must be at least 2")
    if kind not in ("gl", "sl"):
        raise ValueError("kind must be 'gl' or 'sl'")


def basis_labels(n: int, kind: str = "gl") -> list:
    _check_kind(n, kind)
    labels = [label_X(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    labels += [label_H(i) for i in range(1, n)]
    if kind == "gl":
        labels.append(LABEL_K)
    return labels


@lru_cache(maxsize=None)
def casimir_weights(n: int) -> dict:
    """w_i = (1 - q^-2) q^i / (q^2n - 1): C = sum_i w_i T_ii."""
    c = (1 - q_power(-2)) / (q_power(2 * n) - 1)
    return {i: c * q_power(i) for i in range(1, n + 1)}


# ---------------------------------------------------------------------------
# coordinates on {T_ij} u {V_ij}

def _t(n: int, i: int, j: int) -> int:
    return (i - 1) * n + (j - 1)


def _v(n: int, i: int, j: int) -> int:
    return n * n + (i - 1) * n + (j - 1)


@dataclass
class QLieBasis:
    """Basis elements as coordinate vectors on (T_11..T_nn, V_11..V_nn)."""

    n: int
    kind: str
    labels: list
    coords: dict                       # label -> list of 2n^2 Scalars
    casimir_C: list = field(repr=False, default=None)
    casimir_B: list = field(repr=False, default=None)
    traceless_T: dict = field(repr=False, default=None)   # (i, j) -> coords of calT_ij
    traceless_V: dict = field(repr=False, default=None)

    def matrix(self) -> Matrix:
        """2n^2 x dim matrix whose columns are the basis coordinates."""
        cols = [self.coords[l] for l in self.labels]
        return Matrix([list(row) for row in zip(*cols)])

    def solver(self) -> SpanSolver:
        return SpanSolver(self.matrix())

    @property
    def dim(self) -> int:
        return len(self.labels)


def _vec(n: int) -> list:
    return [ZERO] * (2 * n * n)


def _axpy(acc: list, c: Scalar, x: list) -> list:
    return [a + c * b if b else a for a, b in zip(acc, x)]


def build_basis(n: int, kind: str = "gl") -> QLieBasis:
    """Assemble C, B, calT, calV, calX and the basis X_ij, H_i, K."""
    _check_kind(n, kind)
    w = casimir_weights(n)
    C = _vec(n)
    B = _vec(n)
    for i in range(1, n + 1):
        C[_t(n, i, i)] = w[i]
        B[_v(n, i, i)] = w[i]
    calT, calV, calX = {}, {}, {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            t = _vec(n)
            t[_t(n, i, j)] = ONE
            v = _vec(n)
            v[_v(n, i, j)] = ONE
            if i == j:
                t = _axpy(t, -q_power(i), C)
                v = _axpy(v, -q_power(i), B)
            calT[i, j] = t
            calV[i, j] = v
            half = Scalar(1) / 2
            calX[i, j] = [half * (a + b) for a, b in zip(t, v)]
    coords = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                f = q_power(_half_exp(j - i - 1))
                coords[label_X(i, j)] = [f * x for x in calX[i, j]]
    for i in range(1, n):
        coords[label_H(i)] = _axpy(calX[i, i], -q.inv(), calX[i + 1, i + 1])
    if kind == "gl":
        coords[LABEL_K] = _axpy(C, q_power(n), B)
    return QLieBasis(n, kind, basis_labels(n, kind), coords, C, B, calT, calV)


def _half_exp(k: int):
    from fractions import Fraction
    return Fraction(k, 2)


# ---------------------------------------------------------------------------
# adjoint coefficient arrays from R-matrices

@lru_cache(maxsize=None)
def _raw_adjoint_arrays(n: int) -> tuple:
    """(Y_T, Y_tauT): the four-R contractions, 6-index tensors (i, j, r, s, k, l)."""
    R = r_matrices(n)
    Rpps = R["pi pi*"].body
    Rpsp = R["pi* pi"].body
    Rpsps = R["pi* pi*"].body
    # (pi*_ij (x) pi_rk (x) pi*_sl)(R21 R31 R13 R12)
    YT = einsum("rifa,sahb,bhcl,cfjk->ijrskl", Rpps, Rpsps, Rpsps, Rpsp)
    # (pi*_ab (x) pi*_RK (x) pi_SL)(R21 R31 R13 R12), barred indices restored below
    Ytau = einsum("Rafx,SxhY,YhcL,cfbK->abRSKL", Rpsps, Rpps, Rpsp, Rpsps)
    Ytau = Tensor(Ytau.dims, {
        (a, b, bar(r, n), bar(s, n), bar(k, n), bar(l, n)): v
        for (a, b, r, s, k, l), v in Ytau.data.items()
    })
    return YT, Ytau


def _assemble(n: int, Y: Tensor, i: int, j: int, pref: Scalar) -> Tensor:
    data = {}
    for (a, b, r, s, k, l), v in Y.data.items():
        if a == i and b == j:
            data[(r, s, k, l)] = -v
    if i == j:
        for r in range(1, n + 1):
            for s in range(1, n + 1):
                key = (r, s, r, s)
                data[key] = data.get(key, ZERO) + ONE
    return Tensor((n,) * 4, {k: v * pref for k, v in data.items() if v})


@lru_cache(maxsize=None)
def _adjoint_T(n: int) -> dict:
    YT, _ = _raw_adjoint_arrays(n)
    return {(i, j): _assemble(n, YT, i, j, q_power(i) / _QQ)
            for i in range(1, n + 1) for j in range(1, n + 1)}


@lru_cache(maxsize=None)
def _adjoint_tauT(n: int) -> dict:
    _, Ytau = _raw_adjoint_arrays(n)
    return {(a, b): _assemble(n, Ytau, a, b, q_power(a) / _QQ)
            for a in range(1, n + 1) for b in range(1, n + 1)}


@lru_cache(maxsize=None)
def _adjoint_V(n: int) -> dict:
    """V_ij = -tau(T_{kbar lbar}) (R_{pi pi*})_{lkij}."""
    Rb = r_matrices(n)["pi pi*"].body
    tauT = _adjoint_tauT(n)
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = Tensor((n,) * 4)
            for (l, k, ii, jj), c in Rb.data.items():
                if (ii, jj) == (i, j):
                    acc = acc - tauT[bar(k, n), bar(l, n)].scale(c)
            out[i, j] = acc
    return out


def adjoint_coeffs(generator: str, i: int, j: int, n: int) -> Tensor:
    """C with  X o T_kl = sum_rs T_rs C[r, s, k, l]  for X = T_ij, V_ij or tau(T_ij).

    ``generator`` is ``"T"``, ``"V"`` or ``"tauT"``; C is the matrix of X in
    the representation pi (x) pi*.
    """
    if generator == "T":
        return _adjoint_T(n)[i, j]
    if generator == "V":
        return _adjoint_V(n)[i, j]
    if generator == "tauT":
        return _adjoint_tauT(n)[i, j]
    raise ValueError("generator must be 'T', 'V' or 'tauT'")


def _module_matrix(n: int, coords: list) -> dict:
    """(pi (x) pi*)Delta of an element given by T/V coordinates, as {(r,s,k,l): Scalar}."""
    T = _adjoint_T(n)
    V = _adjoint_V(n)
    acc: dict = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for c, arrays in ((coords[_t(n, i, j)], T), (coords[_v(n, i, j)], V)):
                if not c:
                    continue
                for key, v in arrays[i, j].data.items():
                    p = c * v
                    acc[key] = acc[key] + p if key in acc else p
    return {k: v for k, v in acc.items() if v}


def act(n: int, module_matrix: dict, coords: list) -> list:
    """Coordinates of A o B given the module matrix of A and coordinates of B."""
    out = _vec(n)
    by_col: dict = {}
    for (r, s, k, l), v in module_matrix.items():
        by_col.setdefault((k, l), []).append((r, s, v))
    for (k, l), entries in by_col.items():
        bt = coords[_t(n, k, l)]
        bv = coords[_v(n, k, l)]
        for r, s, v in entries:
            if bt:
                out[_t(n, r, s)] = out[_t(n, r, s)] + v * bt
            if bv:
                out[_v(n, r, s)] = out[_v(n, r, s)] + v * bv
    return out


# ---------------------------------------------------------------------------
# structure constants

Table = dict  # (label_a, label_b) -> {label: Scalar}


@dataclass
class StructureConstants:
    n: int
    kind: str
    labels: list
    table: Table

    def bracket(self, a: str, b: str) -> dict:
        return self.table.get((a, b), {})

    def coeff(self, a: str, b: str, target: str) -> Scalar:
        return self.table.get((a, b), {}).get(target, ZERO)

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return (self.n, self.kind, self.labels, self.table) == (other.n, other.kind, other.labels, other.table)

    def first_difference(self, other: "StructureConstants"):
        """First (a, b, target, mine, theirs) where the tables differ, or None."""
        for a in self.labels:
            for b in self.labels:
                x = self.bracket(a, b)
                y = other.bracket(a, b)
                for t in self.labels:
                    u, v = x.get(t, ZERO), y.get(t, ZERO)
                    if u != v:
                        return (a, b, t, u, v)
        return None

    def families(self) -> dict:
        return _extract_families(self)

    def mapped(self, fn) -> "StructureConstants":
        return StructureConstants(self.n, self.kind, list(self.labels), {
            k: {t: fn(c) for t, c in v.items()} for k, v in self.table.items()
        })


def compute_structure_constants(n: int, kind: str = "gl") -> StructureConstants:
    """Bracket table from the R-matrix contractions; closure is checked exactly."""
    basis = build_basis(n, kind)
    solver = basis.solver()
    table: Table = {}
    for a in basis.labels:
        mm = _module_matrix(n, basis.coords[a])
        for b in basis.labels:
            res = act(n, mm, basis.coords[b])
            if not any(res):
                continue
            try:
                coeffs = solver.coefficients(res)
            except InconsistentSystemError as exc:
                raise SpanViolationError(f"[{a} o {b}] is not in the span (row {exc.row})") from None
            entry = {t: c for t, c in zip(basis.labels, coeffs) if c}
            if entry:
                table[a, b] = entry
    return StructureConstants(n, kind, basis.labels, table)


# ---------------------------------------------------------------------------
# printed closed forms

def _d(cond: bool) -> int:
    return 1 if cond else 0


def _l(i: int, j: int, k: int, n: int) -> Scalar:
    half = Scalar(1) / 2
    inner = q_power(-k) * (q * _d(k == i) - q.inv() * _d(k == i - 1)) \
        + q_power(k - n) * (q * _d(k == j - 1) - q.inv() * _d(k == j))
    return half * (1 + q_power(n)) * inner


def _f(i: int, j: int, k: int, n: int) -> Scalar:
    half = Scalar(1) / 2
    qp = q + q.inv()
    P = q_power
    v = ZERO
    if i == j:
        v = v + half * (
            _d(k < i) * qp * (P(k) - P(-k))
            + _d(k > i) * qp * (P(n - k) - P(-n + k))
            + _d(k == i) * (P(i + 1) - P(-i - 1) + P(n + 1 - i) - P(-n - 1 + i))
        )
    if i == j - 1:
        v = v + half * (_d(k <= i) * (P(-k) - P(k)) + _d(k > i) * (P(k - n) - P(-k + n)))
    if i == j + 1:
        v = v + half * (_d(k < i) * (P(-k) - P(k)) + _d(k >= i) * (P(k - n) - P(-k + n)))
    return v


def _g(i: int, j: int, k: int, n: int) -> Scalar:
    half = Scalar(1) / 2
    P = q_power
    return half * P(i - j) * (
        _d(k < j) * (P(k) - P(-k))
        + _d(k >= i) * (P(-k) + P(-k + n))
        - _d(k >= j) * (P(-k) + P(k - n))
    )


def _N(i: int, j: int, l: int, n: int) -> Scalar:
    from fractions import Fraction
    return Scalar(1) / 2 * q_power(Fraction(1, 2) - j) * (1 + q_power(n))


def _M(k: int, i: int, j: int, n: int) -> Scalar:
    return _N(k, i, j, n).qconj()


CONVENTIONS = ("printed", "corrected")


def _check_convention(convention: str):
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")


def closed_form_families(n: int, convention: str = "printed") -> dict:
    """The coefficient families l, r, f, g, N, M as dicts.

    ``convention="printed"`` takes M_kij = qconj(N_kij) verbatim.
    ``"corrected"`` takes M_kij = -qconj(N_kij), the sign forced by
    q-antisymmetry of [X_ki o X_ij] against [X_ij o X_ki] and by the q = 1
    limit [e_ij, e_ki] = -e_kj. All other families are the same.
    """
    _check_convention(convention)
    sign = 1 if convention == "printed" else -1
    idx = range(1, n + 1)
    hs = range(1, n)
    pairs = [(i, j) for i in idx for j in idx if i != j]
    return {
        "l": {(i, j, k): _l(i, j, k, n) for (i, j) in pairs for k in hs},
        "r": {(i, j, k): -_l(j, i, k, n) for (i, j) in pairs for k in hs},
        "f": {(i, j, k): _f(i, j, k, n) for i in hs for j in hs for k in hs},
        "g": {(i, j, k): _g(i, j, k, n) for (i, j) in pairs for k in hs},
        "N": {(i, j, l): _N(i, j, l, n) for i in idx for j in idx for l in idx
              if len({i, j, l}) == 3},
        "M": {(k, i, j): sign * _M(k, i, j, n) for k in idx for i in idx for j in idx
              if len({k, i, j}) == 3},
    }


def table_from_families(n: int, kind: str, fam: dict) -> StructureConstants:
    """Assemble the bracket table from coefficient families l, r, f, g, N, M."""
    labels = basis_labels(n, kind)
    table: Table = {}

    def put(a, b, t, c):
        if c:
            table.setdefault((a, b), {})[t] = c

    idx = range(1, n + 1)
    for i in idx:
        for j in idx:
            if i == j:
                continue
            X = label_X(i, j)
            for k in range(1, n):
                put(label_H(k), X, X, fam["l"][i, j, k])
                put(X, label_H(k), X, -fam["r"][i, j, k])
                put(X, label_X(j, i), label_H(k), fam["g"][i, j, k])
            for k in idx:
                for l in idx:
                    if k == l or (k == j and l == i):
                        continue
                    if j == k and i != l:
                        put(X, label_X(k, l), label_X(i, l), fam["N"][i, j, l])
                    if i == l and j != k:
                        put(X, label_X(k, l), label_X(k, j), fam["M"][k, i, j])
    for i in range(1, n):
        for j in range(1, n):
            for k in range(1, n):
                put(label_H(i), label_H(j), label_H(k), fam["f"][i, j, k])
    return StructureConstants(n, kind, labels, table)


def closed_form(n: int, kind: str = "gl", families: dict | None = None,
                convention: str = "printed") -> StructureConstants:
    """The bracket table generated from the closed formulas alone."""
    _check_kind(n, kind)
    return table_from_families(n, kind, families or closed_form_families(n, convention))


def compare_families(computed: dict, candidate: dict) -> list:
    """Every (family, index, computed, candidate) where two family dicts differ."""
    out = []
    for name in ("l", "r", "f", "g", "N", "M"):
        for key in sorted(computed[name]):
            a, b = computed[name][key], candidate[name].get(key, ZERO)
            if a != b:
                out.append((name, key, a, b))
    return out


def _extract_families(sc: StructureConstants) -> dict:
    n = sc.n
    idx = range(1, n + 1)
    hs = range(1, n)
    pairs = [(i, j) for i in idx for j in idx if i != j]
    c = sc.coeff
    return {
        "l": {(i, j, k): c(label_H(k), label_X(i, j), label_X(i, j)) for (i, j) in pairs for k in hs},
        "r": {(i, j, k): -c(label_X(i, j), label_H(k), label_X(i, j)) for (i, j) in pairs for k in hs},
        "f": {(i, j, k): c(label_H(i), label_H(j), label_H(k)) for i in hs for j in hs for k in hs},
        "g": {(i, j, k): c(label_X(i, j), label_X(j, i), label_H(k)) for (i, j) in pairs for k in hs},
        "N": {(i, j, l): c(label_X(i, j), label_X(j, l), label_X(i, l))
              for i in idx for j in idx for l in idx if len({i, j, l}) == 3},
        "M": {(k, i, j): c(label_X(i, j), label_X(k, i), label_X(k, j))
              for k in idx for i in idx for j in idx if len({k, i, j}) == 3},
    }


# ---------------------------------------------------------------------------
# roots

@dataclass
class RootData:
    n: int
    l: dict   # (i, j) -> [l_ij(H_1), ..., l_ij(H_{n-1})]
    r: dict
    a: dict

    def lattice_violations(self) -> list:
        """Index tuples breaking a_ji = -a_ij or the addition law.

        The addition law a_ij + a_kl = d_jk a_il + d_il a_kj (with a_ii = 0)
        is checked on composable pairs, j == k or i == l; for disjoint pairs
        it fails already at q = 1.
        """
        n = self.n
        bad = []
        zero = [ZERO] * (n - 1)

        def a(i, j):
            return zero if i == j else self.a[i, j]

        pairs = list(self.a)
        for (i, j) in pairs:
            if [-x for x in self.a[i, j]] != self.a[j, i]:
                bad.append(("antisym", i, j))
            for (k, l) in pairs:
                if j != k and i != l:
                    continue
                lhs = [x + y for x, y in zip(a(i, j), a(k, l))]
                rhs = list(zero)
                if j == k:
                    rhs = [x + y for x, y in zip(rhs, a(i, l))]
                if i == l:
                    rhs = [x + y for x, y in zip(rhs, a(k, j))]
                if lhs != rhs:
                    bad.append(("lattice", i, j, k, l))
        return bad


def roots(n: int, families: dict | None = None) -> RootData:
    """Left and right roots l_ij, r_ij and their average a_ij = (l + r) / 2."""
    fam = families or closed_form_families(n)
    half = Scalar(1) / 2
    l, r, a = {}, {}, {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                l[i, j] = [fam["l"][i, j, k] for k in range(1, n)]
                r[i, j] = [fam["r"][i, j, k] for k in range(1, n)]
                a[i, j] = [half * (x + y) for x, y in zip(l[i, j], r[i, j])]
    return RootData(n, l, r, a)


# ---------------------------------------------------------------------------

def xii_expansion(i: int, n: int) -> dict:
    """Printed expansion of the diagonal X_ii in {H_k, K}.

    X_ii = -sum_k q^(i-k) (q^2k - 1)/(q^2n - 1) H_k + sum_{k>=i} q^(i-k) H_k + q^i K.
    Its H-part is calX_ii and its K coefficient is q^i.
    """
    if not 1 <= i <= n:
        raise IndexError("i out of range")
    out = {}
    den = q_power(2 * n) - 1
    for k in range(1, n):
        c = -q_power(i - k) * (q_power(2 * k) - 1) / den
        if k >= i:
            c = c + q_power(i - k)
        if c:
            out[label_H(k)] = c
    out[LABEL_K] = q_power(i)
    return out

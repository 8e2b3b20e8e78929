"""Symbolic realization of the basis inside U_q(gl_n) and the slow bracket path.

Here every basis element is an honest element of U_q: T_ij from the
Ehat products, V_ij = -sum_kl tau(T_{kbar lbar}) (R_{pi pi*})_{lkij}, and
X_ij, H_i, K by the same coordinate vectors :func:`qlie.algebra.build_basis`
uses. Brackets are the Sweedler sums a_(1) b S(a_(2)) evaluated in the
family pi + (pi (x) pi), whose joint evaluation map is certified injective
on the basis by a rank computation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    LABEL_K, StructureConstants, _t, _v, build_basis, label_H, label_X, parse_label,
)
from .linalg import Matrix
from .rmatrix import bar, r_pi_pistar
from .scalar import ZERO, Scalar, q_power
from .uq import (
    AdjointOperator, AlgebraElement, EvaluationSpan, ResourceError, build_T, coproduct,
    dagger, rep_pi, tau, tensor_rep, tilde_S, tilde_theta,
)

__all__ = [
    "ORACLE_TERM_CAP", "symbolic_T", "symbolic_V", "symbolic_basis", "separating_family",
    "SymbolicBasis", "oracle_structure_constants", "ImageCheck", "basis_images",
    "casimir_elements", "sweedler_size", "symbolic_elements",
]

# work estimate cap (see sweedler_size): gl_3 needs ~8e3, sl_4 ~1.3e5, gl_4 ~4e5
ORACLE_TERM_CAP = 100_000


@lru_cache(maxsize=None)
def symbolic_T(n: int) -> dict:
    return {(i, j): build_T(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1)}


@lru_cache(maxsize=None)
def symbolic_V(n: int) -> dict:
    """V_ij = -sum_kl tau(T_{kbar lbar}) (R_{pi pi*})_{lkij}."""
    T = symbolic_T(n)
    R = r_pi_pistar(n).body
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = AlgebraElement(n)
            for (l, k, ii, jj), c in R.data.items():
                if (ii, jj) == (i, j) and c:
                    acc = acc - tau(T[bar(k, n), bar(l, n)]).scale(c)
            out[i, j] = acc
    return out


def _from_coords(n: int, coords: list) -> AlgebraElement:
    T = symbolic_T(n)
    V = symbolic_V(n)
    acc = AlgebraElement(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ct = coords[_t(n, i, j)]
            cv = coords[_v(n, i, j)]
            if ct:
                acc = acc + T[i, j].scale(ct)
            if cv:
                acc = acc + V[i, j].scale(cv)
    return acc


def casimir_elements(n: int) -> tuple:
    """(C, B) as elements of U_q."""
    b = build_basis(n, "gl")
    return _from_coords(n, b.casimir_C), _from_coords(n, b.casimir_B)


@lru_cache(maxsize=None)
def separating_family(n: int) -> tuple:
    pi = rep_pi(n)
    return (pi, tensor_rep(pi, pi))


@dataclass
class SymbolicBasis:
    n: int
    kind: str
    labels: list
    elements: dict            # label -> AlgebraElement
    span: EvaluationSpan

    @property
    def rank_certificate(self) -> int:
        return self.span.rank

    def expand(self, x: AlgebraElement) -> dict:
        return {l: c for l, c in zip(self.labels, self.span.expand(x)) if c}


@lru_cache(maxsize=None)
def symbolic_elements(n: int, kind: str = "gl") -> dict:
    """label -> U_q element for X_ij, H_i (and K)."""
    basis = build_basis(n, kind)
    return {l: _from_coords(n, basis.coords[l]) for l in basis.labels}


@lru_cache(maxsize=None)
def symbolic_basis(n: int, kind: str = "gl") -> SymbolicBasis:
    """X_ij, H_i (and K) as U_q elements, with a certified separating family."""
    basis = build_basis(n, kind)
    elements = symbolic_elements(n, kind)
    span = EvaluationSpan([elements[l] for l in basis.labels], separating_family(n))
    if span.rank != len(basis.labels):
        raise ArithmeticError(f"rank certificate {span.rank} != {len(basis.labels)}")
    return SymbolicBasis(n, kind, basis.labels, elements, span)


def sweedler_size(n: int, kind: str = "gl") -> int:
    """Work estimate for the oracle: sum over basis a of |Delta(a)| times the largest word count."""
    elements = symbolic_elements(n, kind)
    longest = max(len(e) for e in elements.values())
    return sum(len(coproduct(e)) for e in elements.values()) * longest


def oracle_structure_constants(n: int, kind: str = "gl",
                               term_cap: int = ORACLE_TERM_CAP) -> StructureConstants:
    """Bracket table from Sweedler sums and span extraction; slow, n <= 3 by default."""
    size = sweedler_size(n, kind)
    if size > term_cap:
        raise ResourceError(f"oracle needs ~{size} terms for n = {n} (cap {term_cap})")
    sb = symbolic_basis(n, kind)
    reps = separating_family(n)
    images = {l: [r.evaluate(sb.elements[l]) for r in reps] for l in sb.labels}
    table = {}
    for a in sb.labels:
        ops = [AdjointOperator(sb.elements[a], r) for r in reps]
        for b in sb.labels:
            res = [op.apply(img) for op, img in zip(ops, images[b])]
            if all(m.is_zero() for m in res):
                continue
            coeffs = sb.span.coefficients_of_images(res)
            entry = {t: c for t, c in zip(sb.labels, coeffs) if c}
            if entry:
                table[a, b] = entry
    return StructureConstants(n, kind, list(sb.labels), table)


# ---------------------------------------------------------------------------
# images under tau, tilde theta, tilde S and dagger

def expected_image(kind_of_map: str, label: str) -> dict:
    """Printed images: theta~(X_ij) = (-1)^(i+j+1) X_ji, S~(X_ij) = -q^(j-i) X_ij, ..."""
    p = parse_label(label)
    if p[0] == "K":
        return {LABEL_K: Scalar(1) if kind_of_map == "dagger" else Scalar(-1)}
    if p[0] == "H":
        return {label: Scalar(1) if kind_of_map == "dagger" else Scalar(-1)}
    _, i, j = p
    if kind_of_map == "tilde_theta":
        return {label_X(j, i): Scalar((-1) ** (i + j + 1))}
    if kind_of_map == "tilde_S":
        return {label: -q_power(j - i)}
    if kind_of_map == "dagger":
        return {label_X(j, i): Scalar(1)}
    raise ValueError(kind_of_map)


def expected_tau_X(i: int, j: int, n: int) -> dict:
    """tau(X_ij) = -sum_kl X_{kbar lbar} (R_{pi pi*})_{lkij} restricted to the X/H/K span.

    Computed in the T/V coordinates: the diagonal X_kk are replaced by their
    H/K expansion.
    """
    from .algebra import xii_expansion
    R = r_pi_pistar(n).body
    out: dict = {}

    def add(lbl, c):
        out[lbl] = out.get(lbl, ZERO) + c

    for (l, k, ii, jj), c in R.data.items():
        if (ii, jj) != (i, j) or not c:
            continue
        a, b = bar(k, n), bar(l, n)
        if a != b:
            add(label_X(a, b), -c)
        else:
            for lbl, d in xii_expansion(a, n).items():
                add(lbl, -c * d)
    return {k: v for k, v in out.items() if v}


_MAPS = {"tau": tau, "tilde_theta": tilde_theta, "tilde_S": tilde_S, "dagger": dagger}


@dataclass
class ImageCheck:
    map_name: str
    label: str
    expected: dict
    actual: dict | None     # None when the image left the span
    passed: bool


def basis_images(n: int, kind: str = "gl", maps=("tau", "tilde_theta", "tilde_S", "dagger")) -> list:
    """Expand the image of every basis element under each map; compare with the printed images."""
    from .uq import SpanViolation
    sb = symbolic_basis(n, kind)
    out = []
    for name in maps:
        fn = _MAPS[name]
        for label in sb.labels:
            try:
                actual = sb.expand(fn(sb.elements[label]))
            except SpanViolation:
                out.append(ImageCheck(name, label, {}, None, False))
                continue
            if name == "tau":
                p = parse_label(label)
                if p[0] == "X":
                    expected = expected_tau_X(p[1], p[2], n)
                elif p[0] == "K":
                    expected = {LABEL_K: Scalar(-1)}
                else:
                    # tau(H_i) is whatever lies in the span; only closure is asserted
                    expected = actual
            else:
                expected = expected_image(name, label)
            if kind == "sl":
                expected = {k: v for k, v in expected.items() if k != LABEL_K}
            out.append(ImageCheck(name, label, expected, actual, actual == expected))
    return out

"""The quantum Killing form B(a, b) = -q^-1 Tr_pi(S~(a) b u).

``u`` implements the square of the antipode, S^2(a) = u a u^-1. In the
vector representation it is diagonal; the ratios of its entries are read
off from pi(S^2(x_i^+)) and the remaining overall factor is fixed by
B(H_1, H_1) = q + 1/q.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import LABEL_K, basis_labels, label_H, parse_label
from .linalg import Matrix, inverse, matmul, trace
from .oracle import symbolic_basis
from .rmatrix import _generators
from .scalar import ONE, ZERO, Scalar, q
from .uq import AlgebraElement, antipode, rep_pi, tilde_S, x_plus

__all__ = ["KillingData", "NormalizationError", "pi_u", "killing_form", "printed_killing",
           "trace_form"]


class NormalizationError(ArithmeticError):
    """No normalization of u reproduces the printed Killing values."""


def pi_u(n: int) -> Matrix:
    """Diagonal pi(u) with u pi(g) u^-1 = pi(S^2 g) on every generator, u_11 = 1."""
    pi = rep_pi(n)
    d = [ONE]
    for i in range(1, n):
        img = pi.evaluate(antipode(antipode(x_plus(i, n))))
        ratio = img[i - 1, i]
        if not ratio:
            raise ArithmeticError("S^2 kills a raising generator")
        d.append(d[-1] / ratio)
    u = Matrix.diagonal(d)
    uinv = inverse(u)
    for g in _generators(n):
        a = AlgebraElement.word(n, [g])
        lhs = pi.evaluate(antipode(antipode(a)))
        if matmul(matmul(u, pi.evaluate(a)), uinv) != lhs:
            raise ArithmeticError(f"no diagonal u implements S^2 on {g!r}")
    return u


def trace_form(x: AlgebraElement, y: AlgebraElement, u: Matrix) -> Scalar:
    """-q^-1 Tr_pi(S~(x) y u) for arbitrary elements."""
    pi = rep_pi(x.n)
    return -q.inv() * trace(matmul(matmul(pi.evaluate(tilde_S(x)), pi.evaluate(y)), u))


def printed_killing(n: int, kind: str = "sl") -> dict:
    """B(H_i,H_k) = (q+1/q) d_ik - d_i,k-1 - d_i,k+1, B(X_ij,X_kl) = d_jk d_li, B(H,X) = 0."""
    labels = [l for l in basis_labels(n, kind) if l != LABEL_K]
    out = {}
    for a in labels:
        for b in labels:
            pa, pb = parse_label(a), parse_label(b)
            v = ZERO
            if pa[0] == pb[0] == "H":
                i, k = pa[1], pb[1]
                v = (q + q.inv()) * (i == k) - (1 if i == k - 1 else 0) - (1 if i == k + 1 else 0)
            elif pa[0] == pb[0] == "X":
                (_, i, j), (_, k, l) = pa, pb
                v = Scalar(1 if (j == k and l == i) else 0)
            out[a, b] = v
    return out


@dataclass
class KillingData:
    n: int
    kind: str
    labels: list
    u: Matrix                 # pi(u), normalized
    normalization: Scalar     # factor applied to the S^2-solving diagonal
    gram: dict                # (a, b) -> B(a, b)

    def __call__(self, a: str, b: str) -> Scalar:
        return self.gram[a, b]

    def pair(self, x: dict, y: dict) -> Scalar:
        """B on coefficient dicts; q-linear in the first argument, linear in the second."""
        acc = ZERO
        for a, ca in x.items():
            for b, cb in y.items():
                g = self.gram[a, b]
                if g:
                    acc = acc + ca.qconj() * cb * g
        return acc

    def mismatches(self) -> list:
        """Entries differing from the printed values (K row and column excluded)."""
        want = printed_killing(self.n, self.kind)
        return [(a, b, self.gram[a, b], v) for (a, b), v in want.items() if self.gram[a, b] != v]


def killing_form(n: int, kind: str = "gl", check: bool = True) -> KillingData:
    """Gram matrix of B on the basis, u normalized so B(H_1, H_1) = q + 1/q."""
    sb = symbolic_basis(n, kind)
    u0 = pi_u(n)
    h1 = sb.elements[label_H(1)]
    raw = trace_form(h1, h1, u0)
    if not raw:
        raise NormalizationError("B(H_1, H_1) vanishes for every normalization")
    lam = (q + q.inv()) / raw
    u = u0.scale(lam)
    pi = rep_pi(n)
    left = {l: pi.evaluate(tilde_S(sb.elements[l])) for l in sb.labels}
    right = {l: matmul(pi.evaluate(sb.elements[l]), u) for l in sb.labels}
    gram = {}
    for a in sb.labels:
        for b in sb.labels:
            gram[a, b] = -q.inv() * trace(matmul(left[a], right[b]))
    data = KillingData(n, kind, list(sb.labels), u, lam, gram)
    if check:
        bad = data.mismatches()
        if bad:
            a, b, got, want = bad[0]
            raise NormalizationError(f"B({a}, {b}) = {got}, printed value {want}")
    return data

"""Exact dense matrices and sparse tensors over :class:`~qlie.scalar.Scalar`.

``Matrix`` is dense and 0-indexed like a list of lists. ``Tensor`` is sparse
(a dict of nonzero entries) and its indices run from 1 to the axis
dimension, so formulas with 1-based subscripts can be typed verbatim. A
four-index tensor ``T[a, b, c, d]`` is read as (first-out, second-out,
first-in, second-in), i.e. as the matrix entry ``((a, b), (c, d))`` of an
operator on a tensor product.

Elimination is fraction-free (Bareiss): every row is first cleared of
denominators, then all intermediate entries stay Laurent polynomials in s.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterable, Sequence

from .scalar import ONE, ZERO, Scalar, poly_gcd, _pexquo, _pmul

__all__ = [
    "Matrix", "Tensor", "DimensionError", "InconsistentSystemError",
    "matmul", "kron", "transpose", "trace", "rank", "solve_exact", "inverse",
    "einsum", "contract", "SpanSolver",
]


class DimensionError(ValueError):
    pass


class InconsistentSystemError(ArithmeticError):
    """A linear system has no solution; ``row`` is the first residual row."""

    def __init__(self, message: str, row: int | None = None, residual=None):
        super().__init__(message)
        self.row = row
        self.residual = residual


def _as_scalar(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


class Matrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        self.entries = [[_as_scalar(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else (cols or 0)
        if any(len(r) != self.cols for r in self.entries):
            raise DimensionError("ragged matrix rows")

    @classmethod
    def _wrap(cls, entries: list, rows: int, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.entries, m.rows, m.cols = entries, rows, cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._wrap([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.entries[i][i] = ONE
        return m

    @classmethod
    def diagonal(cls, values: Iterable) -> "Matrix":
        values = [_as_scalar(v) for v in values]
        m = cls.zeros(len(values), len(values))
        for i, v in enumerate(values):
            m.entries[i][i] = v
        return m

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        """Elementary matrix e_ij (1-based i, j)."""
        m = cls.zeros(n, n)
        m.entries[i - 1][j - 1] = ONE
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.entries[i][j] = _as_scalar(value)

    def copy(self) -> "Matrix":
        return Matrix._wrap([list(r) for r in self.entries], self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.entries))

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)

    def nonzeros(self):
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                if x:
                    yield i, j, x

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        return Matrix._wrap(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.rows, self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._wrap([[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = _as_scalar(c)
        if not c:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix._wrap([[c * a if a else ZERO for a in r] for r in self.entries], self.rows, self.cols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def map(self, fn: Callable[[Scalar], Scalar]) -> "Matrix":
        return Matrix._wrap([[fn(a) for a in r] for r in self.entries], self.rows, self.cols)

    def T(self) -> "Matrix":
        return transpose(self)

    def trace(self) -> Scalar:
        return trace(self)

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def flat(self) -> list:
        return [x for r in self.entries for x in r]

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, nnz={sum(1 for _ in self.nonzeros())})"

    def pretty(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    brows = [[(j, x) for j, x in enumerate(r) if x] for r in b.entries]
    out = []
    for row in a.entries:
        acc: dict = {}
        for k, x in enumerate(row):
            if not x:
                continue
            for j, y in brows[k]:
                p = x * y
                if j in acc:
                    acc[j] = acc[j] + p
                else:
                    acc[j] = p
        new = [ZERO] * b.cols
        for j, v in acc.items():
            new[j] = v
        out.append(new)
    return Matrix._wrap(out, a.rows, b.cols)


def kron(a: Matrix, b: Matrix) -> Matrix:
    out = Matrix.zeros(a.rows * b.rows, a.cols * b.cols)
    bnz = list(b.nonzeros())
    for i, j, x in a.nonzeros():
        for k, l, y in bnz:
            out.entries[i * b.rows + k][j * b.cols + l] = x * y
    return out


def transpose(a: Matrix) -> Matrix:
    return Matrix._wrap([list(col) for col in zip(*a.entries)], a.cols, a.rows) if a.rows else Matrix.zeros(a.cols, 0)


def trace(a: Matrix) -> Scalar:
    if a.rows != a.cols:
        raise DimensionError("trace of a non-square matrix")
    acc = ZERO
    for i in range(a.rows):
        acc = acc + a.entries[i][i]
    return acc


# ---------------------------------------------------------------------------
# fraction-free elimination

def _clear_row(row: list) -> list:
    """Multiply a row by the lcm of its denominators (result is Laurent)."""
    lcm = (1,)
    for x in row:
        if x and x.den != (1,):
            g = poly_gcd(lcm, x.den)
            lcm = _pmul(lcm, _pexquo(x.den, g))
    if lcm == (1,):
        return list(row)
    m = Scalar.from_parts(0, lcm)
    return [x * m if x else ZERO for x in row]


def _bareiss(rows: list, pivot_cols: int) -> tuple[list, list]:
    """In-place fraction-free row echelon form on the first ``pivot_cols`` columns.

    Returns (rows, pivots) where pivots[r] is the pivot column of row r.
    """
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    prev = ONE
    r = 0
    pivots = []
    for c in range(pivot_cols):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    v = piv * row[j] - f * prow[j] if prow[j] else piv * row[j]
                    row[j] = v / prev if prev != ONE and v else v
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        v = piv * row[j]
                        row[j] = v / prev if prev != ONE else v
            row[c] = ZERO
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rank(a: Matrix) -> int:
    rows = [_clear_row(r) for r in a.entries]
    if not rows:
        return 0
    _, pivots = _bareiss(rows, a.cols)
    return len(pivots)


def solve_exact(a: Matrix, b: Matrix) -> Matrix:
    """A particular exact solution X of A X = B.

    Free variables (if A is column-rank deficient) are set to zero. Raises
    :class:`InconsistentSystemError` naming the residual row if no solution
    exists.
    """
    if a.rows != b.rows:
        raise DimensionError("row count mismatch in solve_exact")
    rows = [_clear_row(ra + rb) for ra, rb in zip(a.entries, b.entries)]
    rows, pivots = _bareiss(rows, a.cols)
    nb = b.cols
    for r in range(len(pivots), a.rows):
        tail = rows[r][a.cols:a.cols + nb]
        if any(tail):
            raise InconsistentSystemError(
                "linear system is inconsistent", row=r, residual=tail,
            )
    x = Matrix.zeros(a.cols, nb)
    for r in reversed(range(len(pivots))):
        c = pivots[r]
        row = rows[r]
        inv = row[c].inv()
        for k in range(nb):
            acc = row[a.cols + k]
            for cc in pivots[r + 1:]:
                if row[cc] and x.entries[cc][k]:
                    acc = acc - row[cc] * x.entries[cc][k]
            x.entries[c][k] = acc * inv if acc else ZERO
    return x


def inverse(a: Matrix) -> Matrix:
    if a.rows != a.cols:
        raise DimensionError("inverse of a non-square matrix")
    if rank(a) != a.rows:
        raise ZeroDivisionError("matrix is singular")
    return solve_exact(a, Matrix.identity(a.rows))


class SpanSolver:
    """Repeatedly express vectors in the column span of a fixed matrix.

    The columns must be linearly independent (checked); the certificate rank
    is kept in :attr:`rank`. Each :meth:`coefficients` call solves on a set of
    independent rows and then checks every row, so a vector outside the span
    raises :class:`InconsistentSystemError`.
    """

    def __init__(self, columns: Matrix):
        self.matrix = columns
        rows_t = [_clear_row(r) for r in transpose(columns).entries]
        _, pivots = _bareiss(rows_t, columns.rows)
        self.rank = len(pivots)
        if self.rank != columns.cols:
            raise ArithmeticError(
                f"columns are not independent: rank {self.rank} < {columns.cols}"
            )
        self.pivot_rows = pivots
        sub = Matrix([columns.entries[i] for i in pivots])
        self._inv = inverse(sub)

    def coefficients(self, vec: Sequence[Scalar]) -> list:
        if len(vec) != self.matrix.rows:
            raise DimensionError("vector length does not match the span matrix")
        picked = [vec[i] for i in self.pivot_rows]
        coeffs = []
        for row in self._inv.entries:
            acc = ZERO
            for a, b in zip(row, picked):
                if a and b:
                    acc = acc + a * b
            coeffs.append(acc)
        nz = [(j, c) for j, c in enumerate(coeffs) if c]
        for i, row in enumerate(self.matrix.entries):
            acc = ZERO
            for j, c in nz:
                if row[j]:
                    acc = acc + row[j] * c
            if acc != vec[i]:
                raise InconsistentSystemError(
                    "vector is not in the span", row=i, residual=vec[i] - acc,
                )
        return coeffs


# ---------------------------------------------------------------------------
# sparse tensors

class Tensor:
    """Sparse tensor over Scalar; index tuples are 1-based."""

    __slots__ = ("dims", "data")

    def __init__(self, dims: Sequence[int], data: dict | None = None):
        self.dims = tuple(dims)
        self.data = {k: v for k, v in (data or {}).items() if v}

    @classmethod
    def from_function(cls, dims: Sequence[int], fn: Callable[..., Scalar]) -> "Tensor":
        data = {}
        for idx in itertools.product(*(range(1, d + 1) for d in dims)):
            v = fn(*idx)
            if v:
                data[idx] = _as_scalar(v)
        return cls(dims, data)

    @classmethod
    def identity4(cls, n: int) -> "Tensor":
        """delta_ik delta_jl."""
        return cls((n,) * 4, {(i, j, i, j): ONE for i in range(1, n + 1) for j in range(1, n + 1)})

    @property
    def ndim(self) -> int:
        return len(self.dims)

    def __getitem__(self, idx) -> Scalar:
        return self.data.get(tuple(idx), ZERO)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.dims == other.dims and self.data == other.data

    def __add__(self, other: "Tensor") -> "Tensor":
        if self.dims != other.dims:
            raise DimensionError("tensor shape mismatch")
        data = dict(self.data)
        for k, v in other.data.items():
            data[k] = data[k] + v if k in data else v
        return Tensor(self.dims, data)

    def __neg__(self) -> "Tensor":
        return Tensor(self.dims, {k: -v for k, v in self.data.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c) -> "Tensor":
        c = _as_scalar(c)
        return Tensor(self.dims, {k: c * v for k, v in self.data.items()})

    def map(self, fn: Callable[[Scalar], Scalar]) -> "Tensor":
        return Tensor(self.dims, {k: fn(v) for k, v in self.data.items()})

    def permute(self, order: Sequence[int]) -> "Tensor":
        """New tensor whose axis a is this tensor's axis order[a] (0-based axes)."""
        return Tensor(
            tuple(self.dims[o] for o in order),
            {tuple(k[o] for o in order): v for k, v in self.data.items()},
        )

    def is_zero(self) -> bool:
        return not self.data

    def as_matrix(self, row_axes: int | None = None) -> Matrix:
        """Flatten: the first ``row_axes`` axes index rows (row-major)."""
        if row_axes is None:
            row_axes = self.ndim // 2
        rdims, cdims = self.dims[:row_axes], self.dims[row_axes:]
        nr = 1
        for d in rdims:
            nr *= d
        nc = 1
        for d in cdims:
            nc *= d
        m = Matrix.zeros(nr, nc)
        for k, v in self.data.items():
            m.entries[_flat(k[:row_axes], rdims)][_flat(k[row_axes:], cdims)] = v
        return m

    @classmethod
    def from_matrix(cls, m: Matrix, rdims: Sequence[int], cdims: Sequence[int]) -> "Tensor":
        data = {}
        for i, j, x in m.nonzeros():
            data[_unflat(i, rdims) + _unflat(j, cdims)] = x
        return cls(tuple(rdims) + tuple(cdims), data)

    def __repr__(self):
        return f"Tensor(dims={self.dims}, nnz={len(self.data)})"


def _flat(idx: tuple, dims: tuple) -> int:
    f = 0
    for i, d in zip(idx, dims):
        f = f * d + (i - 1)
    return f


def _unflat(f: int, dims: Sequence[int]) -> tuple:
    out = []
    for d in reversed(dims):
        f, r = divmod(f, d)
        out.append(r + 1)
    return tuple(reversed(out))


def _diag_filter(labels: str, tensor: Tensor) -> tuple[str, dict, dict]:
    """Handle repeated labels inside one operand; returns unique labels, data, dims."""
    uniq = "".join(dict.fromkeys(labels))
    dims = {}
    for lab, d in zip(labels, tensor.dims):
        if dims.setdefault(lab, d) != d:
            raise DimensionError(f"label {lab!r} used with dims {dims[lab]} and {d}")
    if len(uniq) == len(labels):
        return uniq, tensor.data, dims
    pos = {lab: [i for i, l in enumerate(labels) if l == lab] for lab in uniq}
    data = {}
    for k, v in tensor.data.items():
        if all(len({k[i] for i in p}) == 1 for p in pos.values()):
            data[tuple(k[p[0]] for p in pos.values())] = v
    return uniq, data, dims


def einsum(subscripts: str, *tensors: Tensor):
    """Exact sparse Einstein summation, e.g. ``einsum("rifa,fajk->rijk", A, B)``.

    Labels are single characters; repeated labels not in the output are
    summed. With an empty output the result is a Scalar.
    """
    lhs, _, out = subscripts.replace(" ", "").partition("->")
    ops = lhs.split(",")
    if len(ops) != len(tensors):
        raise ValueError("number of operands does not match subscripts")
    prepared = []
    dims: dict = {}
    for labels, t in zip(ops, tensors):
        if len(labels) != t.ndim:
            raise DimensionError(f"subscript {labels!r} does not match a {t.ndim}-index tensor")
        uniq, data, d = _diag_filter(labels, t)
        for lab, size in d.items():
            if dims.setdefault(lab, size) != size:
                raise DimensionError(f"label {lab!r} has inconsistent dimensions")
        prepared.append((uniq, data))
    if any(lab not in dims for lab in out):
        raise ValueError("output label not present in inputs")

    acc_labels, acc = prepared[0]
    for step, (labels, data) in enumerate(prepared[1:], start=1):
        later = set(out).union(*(set(l) for l, _ in prepared[step + 1:]))
        shared = [l for l in acc_labels if l in labels]
        keep = [l for l in dict.fromkeys(acc_labels + labels) if l in later]
        a_sh = [acc_labels.index(l) for l in shared]
        b_sh = [labels.index(l) for l in shared]
        src = [(0, acc_labels.index(l)) if l in acc_labels else (1, labels.index(l)) for l in keep]
        index: dict = {}
        for kb, vb in data.items():
            index.setdefault(tuple(kb[i] for i in b_sh), []).append((kb, vb))
        new: dict = {}
        for ka, va in acc.items():
            bucket = index.get(tuple(ka[i] for i in a_sh))
            if not bucket:
                continue
            for kb, vb in bucket:
                key = tuple(ka[i] if w == 0 else kb[i] for w, i in src)
                p = va * vb
                if key in new:
                    new[key] = new[key] + p
                else:
                    new[key] = p
        acc_labels, acc = "".join(keep), new

    # sum out labels that never met another operand, then order as requested
    if set(acc_labels) != set(out):
        pos = [acc_labels.index(l) for l in out]
        red: dict = {}
        for k, v in acc.items():
            key = tuple(k[i] for i in pos)
            red[key] = red[key] + v if key in red else v
        acc = red
    else:
        pos = [acc_labels.index(l) for l in out]
        acc = {tuple(k[i] for i in pos): v for k, v in acc.items()}
    if not out:
        return acc.get((), ZERO)
    return Tensor(tuple(dims[l] for l in out), acc)


def contract(t: Tensor, pairs: Sequence[tuple[int, int]]):
    """Contract a tensor with itself over pairs of (0-based) axes."""
    letters = [chr(ord("a") + i) for i in range(t.ndim)]
    for a, b in pairs:
        if t.dims[a] != t.dims[b]:
            raise DimensionError("paired axes have different dimensions")
        letters[b] = letters[a]
    paired = {x for p in pairs for x in p}
    out = "".join(letters[i] for i in range(t.ndim) if i not in paired)
    return einsum("".join(letters) + "->" + out, t)

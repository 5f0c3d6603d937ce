"""Dense exact matrices over Q and Q(i): rank, column echelon form, inertia.

Rank and inertia run on integer images of the input (denominators cleared,
Gaussian matrices realified) so the inner loops only touch Python ints.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple

from .errors import NotHermitian, ParseError
from .scalars import (GaussianRational, format_scalar, imag_part, parse_scalar,
                      real_part)

QQ = "QQ"
QQI = "QQi"


def _to_field(x, field):
    if field == QQI:
        return x if isinstance(x, GaussianRational) else GaussianRational(x)
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ValueError("non-real entry in a rational matrix")
        return x.re
    return Fraction(x)


class Matrix:
    """Immutable dense matrix. ``field`` is "QQ" or "QQi"."""

    __slots__ = ("rows", "cols", "data", "field", "_hash")

    def __init__(self, data, rows=None, cols=None, field=None):
        data = [list(r) for r in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("ragged or mis-sized matrix data")
        if field is None:
            field = QQI if any(isinstance(x, GaussianRational) for r in data for x in r) else QQ
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "data", tuple(tuple(_to_field(x, field) for x in r) for r in data))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # construction helpers
    @classmethod
    def zeros(cls, rows, cols, field=QQ):
        return cls([[0] * cols for _ in range(rows)], rows, cols, field)

    @classmethod
    def identity(cls, n, field=QQ):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n, field)

    @classmethod
    def from_columns(cls, columns, rows, field=None):
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns), field)

    def with_field(self, field):
        if field == self.field:
            return self
        return Matrix(self.data, self.rows, self.cols, field)

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(r[j] for r in self.data)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def submatrix(self, row_idx, col_idx):
        row_idx, col_idx = list(row_idx), list(col_idx)
        return Matrix([[self.data[i][j] for j in col_idx] for i in row_idx],
                      len(row_idx), len(col_idx), self.field)

    def trailing(self, p, q):
        """Rows p.., columns q.. (0-based)."""
        return self.submatrix(range(p, self.rows), range(q, self.cols))

    # algebra
    def _join(self, other):
        return QQI if QQI in (self.field, other.field) else QQ

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                      self.rows, self.cols, self._join(other))

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                      self.rows, self.cols, self._join(other))

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.data], self.rows, self.cols, self.field)

    def scale(self, c):
        field = QQI if isinstance(c, GaussianRational) else self.field
        return Matrix([[c * a for a in r] for r in self.data], self.rows, self.cols, field)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.col
        cols = [ocols(j) for j in range(other.cols)]
        out = []
        for r in self.data:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, self.rows, other.cols, self._join(other))

    @property
    def T(self):
        return Matrix([[r[j] for r in self.data] for j in range(self.cols)],
                      self.cols, self.rows, self.field)

    @property
    def H(self):
        """Conjugate transpose."""
        if self.field == QQ:
            return self.T
        return Matrix([[r[j].conjugate() for r in self.data] for j in range(self.cols)],
                      self.cols, self.rows, self.field)

    def conjugate(self):
        if self.field == QQ:
            return self
        return Matrix([[x.conjugate() for x in r] for r in self.data], self.rows, self.cols, self.field)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix([list(a) + list(b) for a, b in zip(self.data, other.data)],
                      self.rows, self.cols + other.cols, self._join(other))

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return Matrix(list(self.data) + list(other.data), self.rows + other.rows, self.cols,
                      self._join(other))

    # predicates
    def is_square(self):
        return self.rows == self.cols

    def is_hermitian(self):
        return self.is_square() and self == self.H

    def is_upper_triangular(self):
        return all(self.data[i][j] == 0 for i in range(self.rows) for j in range(min(i, self.cols)))

    def is_zero(self):
        return not any(x for r in self.data for x in r)

    def is_integral(self):
        return all(imag_part(x) == 0 and real_part(x).denominator == 1 for r in self.data for x in r)

    def to_int_rows(self):
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return [[int(real_part(x)) for x in r] for r in self.data]

    def inverse(self):
        """Gauss-Jordan inverse. Raises ValueError when singular."""
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.data)]
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                raise ValueError("singular matrix")
            a[c], a[piv] = a[piv], a[c]
            inv = 1 / a[c][c] if isinstance(a[c][c], GaussianRational) else Fraction(1) / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for i in range(n):
                if i != c and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return Matrix([r[n:] for r in a], n, n, self.field)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.cols, self.data)))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix[{self.rows}x{self.cols}, {self.field}]({body})"

    # serialization
    def to_json(self):
        g = self.field == QQI
        return {"rows": self.rows, "cols": self.cols,
                "data": [[format_scalar(x, g) for x in r] for r in self.data]}

    @classmethod
    def from_json(cls, obj, field=None):
        try:
            rows, cols, data = obj["rows"], obj["cols"], obj["data"]
        except (KeyError, TypeError) as exc:
            raise ParseError("matrix JSON needs rows, cols and data") from exc
        if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
            raise ParseError("rows and cols must be nonnegative integers")
        if not isinstance(data, list) or len(data) != rows or any(
                not isinstance(r, list) or len(r) != cols for r in data):
            raise ParseError(f"data does not match declared shape {rows}x{cols}")
        entries = [[parse_scalar(x) for x in r] for r in data]
        if field is None:
            field = QQI if any(isinstance(x, dict) for r in data for x in r) else QQ
        try:
            return cls(entries, rows, cols, field)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


class Inertia(NamedTuple):
    p: int
    q: int
    r: int

    def __sub__(self, other):
        return (self.p - other.p, self.q - other.q, self.r - other.r)


# integer images ---------------------------------------------------------

def _common_denominator(m):
    d = 1
    for r in m.data:
        for x in r:
            d = lcm(d, real_part(x).denominator, imag_part(x).denominator)
    return d


def _integer_image(m):
    """Rows of a positive integer multiple of m, realified when m is Gaussian.

    Realification sends A + iB to [[A, -B], [B, A]], which doubles the rank and
    both inertia counts.
    """
    d = _common_denominator(m)
    re = [[int(real_part(x) * d) for x in r] for r in m.data]
    if m.field == QQ or all(imag_part(x) == 0 for r in m.data for x in r):
        return re, 1
    im = [[int(imag_part(x) * d) for x in r] for r in m.data]
    top = [a + [-b for b in bi] for a, bi in zip(re, im)]
    bottom = [bi + a for a, bi in zip(re, im)]
    return top + bottom, 2


def _bareiss_rank(a, ncols):
    a = [list(r) for r in a]
    nrows = len(a)
    rank, prev, col = 0, 1, 0
    while rank < nrows and col < ncols:
        piv = None
        best = None
        for i in range(rank, nrows):
            v = a[i][col]
            if v and (best is None or abs(v) < best):
                piv, best = i, abs(v)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        prow = a[rank]
        for i in range(rank + 1, nrows):
            ai = a[i]
            f = ai[col]
            for j in range(col + 1, ncols):
                ai[j] = (p * ai[j] - f * prow[j]) // prev
            ai[col] = 0
        prev = p
        rank += 1
        col += 1
    return rank


def rank(m):
    """Exact rank over the fraction field."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a, k = _integer_image(m)
    return _bareiss_rank(a, len(a[0])) // k


def _int_symmetric_inertia(s):
    """Inertia of an integer symmetric matrix by congruence elimination."""
    s = [list(r) for r in s]
    p = q = z = 0
    while s:
        n = len(s)
        k = None
        for i in range(n):
            if s[i][i] and (k is None or abs(s[i][i]) < abs(s[k][k])):
                k = i
        if k is not None:
            d = s[k][k]
            if d > 0:
                p += 1
            else:
                q += 1
            sg = 1 if d > 0 else -1
            rest = [i for i in range(n) if i != k]
            sk = s[k]
            # |d| times the Schur complement; positive scaling keeps inertia
            s = [[sg * (d * s[i][j] - s[i][k] * sk[j]) for j in rest] for i in rest]
        else:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if s[i][j]), None)
            if pair is None:
                z += n
                break
            k, l = pair
            a = s[k][l]
            p += 1
            q += 1
            rest = [i for i in range(n) if i not in pair]
            # a^2 times the Schur complement of the block [[0, a], [a, 0]]
            s = [[a * a * s[i][j] - a * (s[i][k] * s[l][j] + s[i][l] * s[k][j]) for j in rest]
                 for i in rest]
        g = 0
        for r in s:
            for x in r:
                g = gcd(g, x)
        if g > 1:
            s = [[x // g for x in r] for r in s]
    return Inertia(p, q, z)


def check_hermitian(m):
    if not m.is_hermitian():
        raise NotHermitian(f"{m.rows}x{m.cols} matrix is not {'Hermitian' if m.field == QQI else 'symmetric'}")


def inertia(h):
    """(p, q, r) of a Hermitian or symmetric matrix."""
    check_hermitian(h)
    if h.rows == 0:
        return Inertia(0, 0, 0)
    a, k = _integer_image(h)
    res = _int_symmetric_inertia(a)
    return Inertia(res.p // k, res.q // k, res.r // k)


def reduced_column_echelon(m):
    """(E, G) with E = M G, G invertible.

    E is the transpose of the reduced row echelon form of the transpose of M:
    each nonzero column has a leading 1 (its topmost nonzero entry), the
    leading rows increase from left to right, every other entry of a pivot
    row is zero, and zero columns come last.
    """
    rows, cols, field = m.rows, m.cols, m.field
    one = GaussianRational(1) if field == QQI else Fraction(1)
    # work on columns of M, tracking G's columns alongside
    ecols = [list(m.col(j)) for j in range(cols)]
    gcols = [[one if i == j else 0 * one for i in range(cols)] for j in range(cols)]
    r = 0
    for i in range(rows):
        if r == cols:
            break
        piv = next((j for j in range(r, cols) if ecols[j][i] != 0), None)
        if piv is None:
            continue
        ecols[r], ecols[piv] = ecols[piv], ecols[r]
        gcols[r], gcols[piv] = gcols[piv], gcols[r]
        inv = one / ecols[r][i]
        ecols[r] = [x * inv for x in ecols[r]]
        gcols[r] = [x * inv for x in gcols[r]]
        for j in range(cols):
            if j != r and ecols[j][i] != 0:
                f = ecols[j][i]
                ecols[j] = [x - f * y for x, y in zip(ecols[j], ecols[r])]
                gcols[j] = [x - f * y for x, y in zip(gcols[j], gcols[r])]
        r += 1
    return Matrix.from_columns(ecols, rows, field), Matrix.from_columns(gcols, cols, field)


def pivot_rows(e):
    """0-based leading rows of the nonzero columns of an echelon matrix."""
    out = []
    for j in range(e.cols):
        i = next((i for i in range(e.rows) if e[i, j] != 0), None)
        if i is None:
            break
        out.append(i)
    return out


def ech_set(m):
    """Pivot rows of the reduced column echelon form, as a sorted 1-based tuple."""
    e, _ = reduced_column_echelon(m)
    return tuple(i + 1 for i in pivot_rows(e))

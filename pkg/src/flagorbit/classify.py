"""Borel-orbit classification of Hermitian matrices and Lagrangian frames.

A Hermitian z of size m is classified by its profile: the ranks of all
trailing blocks z[p:, q:] (p <= q) and the inertia of every trailing
principal block z[p:, p:]. The profile is unchanged by z -> b z b* for upper
triangular invertible b, and it determines a unique signed partial
involution with nonnegative arcs (the normal form), which is rebuilt from the
profile one trailing index at a time.

An independent elimination route (``borel_reduce_witness``) produces an
explicit b; its output agrees with the normal form up to positive rational
factors on the diagonal.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotHermitian, ParseError, RankDeficient, UnrealizableProfile, ValidationError
from .linalg import (QQ, QQI, Inertia, Matrix, _bareiss_rank, _int_symmetric_inertia,
                     _integer_image, check_hermitian, rank, reduced_column_echelon, pivot_rows)
from .params import SignedPartialInvolution, canonicalize_spi, int_matrix_json
from .scalars import GaussianRational


@dataclass(frozen=True)
class InvariantProfile:
    """ranks[p][q - p] = rank z[p:, q:], signatures[p] = inertia z[p:, p:] (0-based)."""

    m: int
    ranks: tuple
    signatures: tuple

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(tuple(int(x) for x in r) for r in self.ranks))
        object.__setattr__(self, "signatures", tuple(Inertia(*map(int, s)) for s in self.signatures))
        if len(self.ranks) != self.m or len(self.signatures) != self.m:
            raise ValidationError("profile arrays do not match m")
        for p, r in enumerate(self.ranks):
            if len(r) != self.m - p:
                raise ValidationError(f"rank row {p} should have {self.m - p} entries")

    def rank(self, p, q):
        """rank z[p:, q:]; zero once either index runs off the end."""
        if p >= self.m or q >= self.m:
            return 0
        if p > q:
            p, q = q, p
        return self.ranks[p][q - p]

    def signature(self, p):
        return self.signatures[p] if p < self.m else Inertia(0, 0, 0)

    def consistency_errors(self):
        """Violations of the structural identities every genuine profile obeys."""
        errs = []
        for p in range(self.m):
            s = self.signatures[p]
            if min(s) < 0 or sum(s) != self.m - p:
                errs.append(f"signature {p} does not sum to {self.m - p}")
            if self.rank(p, p) != s.p + s.q:
                errs.append(f"rank of principal block {p} differs from p + q")
            for q in range(p, self.m):
                a, b = self.rank(p, q), self.rank(p + 1, q)
                if not (b <= a <= b + 1):
                    errs.append(f"rank ({p},{q}) not within one of rank ({p + 1},{q})")
        return errs

    def to_json(self):
        return {"m": self.m, "ranks": [list(r) for r in self.ranks],
                "signatures": [list(s) for s in self.signatures]}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(obj["m"], obj["ranks"], obj["signatures"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("profile JSON needs m, ranks and signatures") from exc


def invariant_profile(z):
    check_hermitian(z)
    m = z.rows
    if m == 0:
        return InvariantProfile(0, (), ())
    a, k = _integer_image(z)
    # block index sets inside the (possibly realified) integer image
    def idx(start):
        return [i + t * m for t in range(k) for i in range(start, m)]

    ranks = []
    sigs = []
    for p in range(m):
        rows = [a[i] for i in idx(p)]
        row_ranks = []
        for q in range(p, m):
            cols = idx(q)
            sub = [[r[j] for j in cols] for r in rows]
            row_ranks.append(_bareiss_rank(sub, len(cols)) // k)
        ranks.append(row_ranks)
        cols = idx(p)
        s = _int_symmetric_inertia([[r[j] for j in cols] for r in rows])
        sigs.append(Inertia(s.p // k, s.q // k, s.r // k))
    return InvariantProfile(m, ranks, sigs)


def _spi_profile_row(g, p):
    """Ranks of g[p:, q:] for q >= p when g is a signed partial involution."""
    m = len(g)
    return [sum(1 for i in range(p, m) for j in range(q, m) if g[i][j]) for q in range(p, m)]


def _spi_trailing_signature(g, p):
    m = len(g)
    pos = neg = 0
    for i in range(p, m):
        x = g[i][i]
        if x > 0:
            pos += 1
        elif x < 0:
            neg += 1
        else:
            j = next((j for j in range(p, m) if g[i][j]), None)
            if j is not None and j > i:
                pos += 1
                neg += 1
    return Inertia(pos, neg, (m - p) - pos - neg)


def reconstruct_spi_with_trace(profile):
    """Rebuild the normal form; also return one (p, case, k) step per index.

    Steps run from p = m-1 down to 0, comparing signature p with signature
    p+1. Growth by (1,0,0), (0,1,0) or (0,0,1) places +1, -1 or 0 on the
    diagonal. Growth by (1,1,-1) places an arc from p to p+k, where k is the
    largest offset at which deleting row p lowers the rank of z[p:, p+k:].
    """
    m = profile.m
    g = [[0] * m for _ in range(m)]
    trace = []
    for p in range(m - 1, -1, -1):
        diff = profile.signature(p) - profile.signature(p + 1)
        k = None
        if diff == (1, 0, 0):
            g[p][p], case = 1, "+"
        elif diff == (0, 1, 0):
            g[p][p], case = -1, "-"
        elif diff == (0, 0, 1):
            case = "0"
        elif diff == (1, 1, -1):
            gaps = [j for j in range(1, m - p)
                    if profile.rank(p, p + j) - profile.rank(p + 1, p + j) == 1]
            if not gaps:
                raise UnrealizableProfile(f"arc step at p={p} has no rank gap")
            k = max(gaps)
            c = p + k
            if g[c][c] or any(g[c][j] for j in range(p + 1, m)):
                raise UnrealizableProfile(f"arc target {c} at p={p} is already occupied")
            g[p][c] = g[c][p] = 1
            case = "arc"
        else:
            raise UnrealizableProfile(f"signature step {diff} at p={p} matches no case")
        trace.append((p, case, k))
        if _spi_profile_row(g, p) != list(profile.ranks[p]):
            raise UnrealizableProfile(f"ranks at p={p} are not those of the rebuilt block")
        if _spi_trailing_signature(g, p) != profile.signature(p):
            raise UnrealizableProfile(f"signature at p={p} is not that of the rebuilt block")
    return SignedPartialInvolution(tuple(tuple(r) for r in g)), trace


def reconstruct_spi(profile):
    return reconstruct_spi_with_trace(profile)[0]


def borel_normal_form(z):
    return reconstruct_spi(invariant_profile(z))


def _one(field):
    return GaussianRational(1) if field == QQI else Fraction(1)


def borel_reduce_witness(z):
    """(b, w) with b upper triangular invertible and w = b z b*.

    w has the support of a signed partial involution with arc entries 1 and
    nonzero rational diagonal entries whose signs match the normal form.
    Indices are retired from the largest down; a zero pivot with a nonzero
    column is paired with the largest index still carrying an entry there.
    """
    check_hermitian(z)
    m, fld = z.rows, z.field
    one = _one(fld)
    w = [[one * x for x in r] for r in z.data]
    b = [[one if i == j else 0 * one for j in range(m)] for i in range(m)]

    def row_op(i, j, c):
        # row_i -= c row_j, then col_i -= conj(c) col_j
        if not c:
            return
        cc = c.conjugate()
        w[i] = [x - c * y for x, y in zip(w[i], w[j])]
        b[i] = [x - c * y for x, y in zip(b[i], b[j])]
        for r in w:
            r[i] = r[i] - cc * r[j]

    def scale(i, c):
        cc = c.conjugate()
        w[i] = [c * x for x in w[i]]
        b[i] = [c * x for x in b[i]]
        for r in w:
            r[i] = r[i] * cc

    active = list(range(m))
    while active:
        j = active[-1]
        if w[j][j] != 0:
            for i in active[:-1]:
                if w[i][j] != 0:
                    row_op(i, j, w[i][j] / w[j][j])
            active.pop()
            continue
        nz = [i for i in active[:-1] if w[i][j] != 0]
        if not nz:
            active.pop()
            continue
        k = nz[-1]
        for i in nz[:-1]:
            row_op(i, k, w[i][j] / w[k][j])
        scale(k, one / w[k][j])
        for i in active:
            if i not in (j, k) and w[i][k] != 0:
                row_op(i, j, w[i][k])
        if w[k][k] != 0:
            row_op(k, j, w[k][k] / 2)
        active.remove(j)
        active.remove(k)
    return Matrix(b, m, m, fld), Matrix(w, m, m, fld)


def sign_pattern(w):
    """Replace each real entry by its sign; raises if an entry is not real."""
    out = []
    for r in w.data:
        row = []
        for x in r:
            if isinstance(x, GaussianRational):
                if x.im != 0:
                    raise ValueError("sign of a non-real entry")
                x = x.re
            row.append((x > 0) - (x < 0))
        out.append(tuple(row))
    return SignedPartialInvolution(tuple(out))


# frames -----------------------------------------------------------------

@dataclass(frozen=True)
class LagrangianFrame:
    """(C; D) with C* D Hermitian and [C; D] of rank n.

    Case "A" admits Gaussian rational entries, case "B" only rationals.
    """

    C: Matrix
    D: Matrix
    case: str = "A"

    def __post_init__(self):
        C, D = self.C, self.D
        if self.case not in ("A", "B"):
            raise ValidationError(f"unknown case {self.case!r}")
        if not (C.is_square() and D.is_square() and C.rows == D.rows):
            raise ValidationError("C and D must be square of the same size")
        if self.case == "B":
            for M in (C, D):
                if M.field == QQI and any(x.im for r in M.data for x in r):
                    raise ValidationError("case B frames must have rational entries")
            object.__setattr__(self, "C", C.with_field(QQ))
            object.__setattr__(self, "D", D.with_field(QQ))
        if not (self.C.H @ self.D).is_hermitian():
            raise NotHermitian("C* D is not Hermitian")
        if rank(self.C.vstack(self.D)) != C.rows:
            raise RankDeficient("stacked frame does not have full rank")

    @property
    def n(self):
        return self.C.rows

    def to_json(self):
        return {"C": self.C.to_json(), "D": self.D.to_json(), "case": self.case}

    @classmethod
    def from_json(cls, obj, case=None):
        try:
            C, D = Matrix.from_json(obj["C"]), Matrix.from_json(obj["D"])
        except (KeyError, TypeError) as exc:
            raise ParseError("frame JSON needs C and D") from exc
        return cls(C, D, case or obj.get("case", "A"))


def act_on_frame(frame, b, g):
    """(C, D) -> (b C g, (b*)^{-1} D g)."""
    return LagrangianFrame(b @ frame.C @ g, b.H.inverse() @ frame.D @ g, frame.case)


@dataclass(frozen=True)
class OrbitLabel:
    """Echelon set I (1-based, sorted) within [n] and the normal form on I."""

    n: int
    I: tuple
    spi: SignedPartialInvolution

    def __post_init__(self):
        I = tuple(sorted(int(i) for i in self.I))
        object.__setattr__(self, "I", I)
        if len(set(I)) != len(I) or any(not 1 <= i <= self.n for i in I):
            raise ValidationError(f"I={I} is not a subset of [1..{self.n}]")
        spi = self.spi
        if not isinstance(spi, SignedPartialInvolution):
            spi = SignedPartialInvolution(spi)
            object.__setattr__(self, "spi", spi)
        if spi.n != len(I):
            raise ValidationError("spi size differs from |I|")
        if not spi.is_plus:
            raise ValidationError("spi has a negative arc entry")

    def to_json(self):
        return {"n": self.n, "I": list(self.I), "spi": int_matrix_json(self.spi.entries)}

    @classmethod
    def from_json(cls, obj):
        try:
            spi = SignedPartialInvolution.from_json(obj["spi"])
            I = obj["I"]
            n = obj.get("n", max(I, default=0))
            return cls(n, tuple(I), spi)
        except (KeyError, TypeError) as exc:
            raise ParseError("label JSON needs I and spi") from exc


@dataclass
class FrameSteps:
    """Intermediate matrices of ``classify_frame``, kept for witnesses."""

    E: Matrix
    G: Matrix
    b: Matrix
    z11: Matrix
    extras: dict = field(default_factory=dict)


def classify_frame_steps(frame):
    """Right-normalize D to echelon form, clear the non-pivot rows with a lower
    unitriangular (b*)^{-1}, and read off the Hermitian block on the pivot rows."""
    C, D, n = frame.C, frame.D, frame.n
    one = _one(C.field if C.field == QQI else D.field)
    E, G = reduced_column_echelon(D)
    piv = pivot_rows(E)
    m = len(piv)
    C1 = C @ G
    pivset = set(piv)
    L = [[one if i == j else 0 * one for j in range(n)] for i in range(n)]
    for k, ik in enumerate(piv):
        for r in range(ik + 1, n):
            if r not in pivset and E[r, k] != 0:
                L[r][ik] = -E[r, k]
    Lm = Matrix(L, n, n, E.field)
    b = Lm.inverse().H
    C2 = b @ C1
    z11 = C2.submatrix(piv, range(m))
    if not z11.is_hermitian() or not C2.submatrix(piv, range(m, n)).is_zero():
        raise NotHermitian("frame failed to normalize; is C* D Hermitian?")
    return FrameSteps(E, G, b, z11, {"pivots": piv})


def classify_frame(frame):
    st = classify_frame_steps(frame)
    I = tuple(i + 1 for i in st.extras["pivots"])
    return OrbitLabel(frame.n, I, borel_normal_form(st.z11))


def omega_frame(omega, case="A"):
    """View a stacked pair as a frame with C = tau1, D = tau2."""
    return LagrangianFrame(omega.tau1.to_matrix(), omega.tau2.to_matrix(), case)


def omega_block(omega):
    """Pivot rows of tau2 and the signed involution they cut out of tau1.

    Columns of tau2 are ordered by their pivot row and made positive, which
    is the column echelon form of a signed partial permutation; the block is
    then rows I of tau1 in those columns.
    """
    g1, g2 = omega.tau1.entries, omega.tau2.entries
    supports = [omega.tau2.column(j) for j in range(omega.n)]
    cols = sorted((r, j, s) for j, (r, s) in enumerate(supports) if r)
    I = tuple(r for r, _, _ in cols)
    block = tuple(tuple(g1[a - 1][j] * s for _, j, s in cols) for a in I)
    return I, SignedPartialInvolution(block)


def normalize_omega(omega):
    I, block = omega_block(omega)
    return OrbitLabel(omega.n, I, canonicalize_spi(block))

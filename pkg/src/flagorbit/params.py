"""Finite parameter sets: signed partial permutations and involutions, stacked
pairs (tau1; tau2) of signed partial permutations, their unsigned analogues,
and the sign/permutation group acting on pairs.

Columns of a stacked pair are encoded as ``(row1, row2)``: the 1-based row of
the nonzero entry in each block, 0 for a zero column. Enumeration and the
canonical column order both use this encoding.
"""

from dataclasses import dataclass
from itertools import permutations

from .errors import (NotInRCircle, NotSPI, NotSPP, NotSymmetricProduct, ParseError,
                     RankDeficient, SizeGuardExceeded, ValidationError)
from .linalg import Matrix

DEFAULT_MAX_N = 6


def _grid(entries, allowed):
    try:
        g = tuple(tuple(int(x) for x in row) for row in entries)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"not an integer grid: {entries!r}") from exc
    n = len(g)
    if any(len(r) != n for r in g):
        raise ValidationError("grid must be square")
    for r in g:
        for x in r:
            if x not in allowed:
                raise NotSPP(f"entry {x} outside {sorted(allowed)}")
    return g


def _column_support(g, j):
    """(1-based row, sign) of the nonzero entry of column j, or (0, 0)."""
    for i, r in enumerate(g):
        if r[j]:
            return i + 1, r[j]
    return 0, 0


def int_matrix_json(g):
    n = len(g)
    cols = len(g[0]) if g else n
    return {"rows": n, "cols": cols, "data": [list(r) for r in g]}


def int_grid_from_json(obj):
    m = Matrix.from_json(obj)
    if not m.is_integral():
        raise ParseError("expected an integer matrix")
    return tuple(tuple(r) for r in m.to_int_rows())


@dataclass(frozen=True)
class SignedPartialPermutation:
    """Square {-1,0,1} grid with at most one nonzero per row and column."""

    entries: tuple

    def __post_init__(self):
        g = _grid(self.entries, {-1, 0, 1})
        for i, r in enumerate(g):
            if sum(1 for x in r if x) > 1:
                raise NotSPP(f"row {i + 1} has more than one nonzero entry")
        for j in range(len(g)):
            if sum(1 for r in g if r[j]) > 1:
                raise NotSPP(f"column {j + 1} has more than one nonzero entry")
        object.__setattr__(self, "entries", g)

    @property
    def n(self):
        return len(self.entries)

    def column(self, j):
        return _column_support(self.entries, j)

    def nonzeros(self):
        return sum(1 for r in self.entries for x in r if x)

    def is_symmetric(self):
        g = self.entries
        return all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(i))

    def to_matrix(self):
        return Matrix(self.entries, self.n, self.n)

    def to_json(self):
        return int_matrix_json(self.entries)

    def __str__(self):
        return "\n".join(" ".join(f"{x:2d}" for x in r) for r in self.entries)


@dataclass(frozen=True)
class SignedPartialInvolution(SignedPartialPermutation):
    """Symmetric signed partial permutation."""

    def __post_init__(self):
        try:
            super().__post_init__()
        except NotSPP as exc:
            raise NotSPI(str(exc)) from exc
        if not self.is_symmetric():
            raise NotSPI("matrix is not symmetric")

    @property
    def is_plus(self):
        g = self.entries
        return all(g[i][j] >= 0 for i in range(len(g)) for j in range(len(g)) if i != j)

    def arcs(self):
        g = self.entries
        return [(i, j) for i in range(len(g)) for j in range(i + 1, len(g)) if g[i][j]]

    @classmethod
    def from_json(cls, obj):
        return cls(int_grid_from_json(obj))


def canonicalize_spi(tau):
    """The representative with every arc entry +1; the diagonal is untouched."""
    if not isinstance(tau, SignedPartialInvolution):
        tau = SignedPartialInvolution(tau.entries if hasattr(tau, "entries") else tau)
    return SignedPartialInvolution(tuple(
        tuple(abs(x) if i != j else x for j, x in enumerate(r)) for i, r in enumerate(tau.entries)))


def spi_sign_witness(tau):
    """Sign vector eps with eps * tau * eps == canonicalize_spi(tau)."""
    eps = [1] * tau.n
    for i, j in tau.arcs():
        if tau.entries[i][j] < 0:
            eps[j] = -1
    return tuple(eps)


def conjugate_by_signs(tau, eps):
    g = tau.entries
    return SignedPartialInvolution(tuple(
        tuple(eps[i] * x * eps[j] for j, x in enumerate(r)) for i, r in enumerate(g)))


def _symmetric_product(g1, g2):
    """Whether transpose(g1) @ g2 is symmetric, for signed partial permutations."""
    n = len(g1)
    c1 = [_column_support(g1, j) for j in range(n)]
    c2 = [_column_support(g2, j) for j in range(n)]

    def dot(a, b):
        return a[1] * b[1] if a[0] and a[0] == b[0] else 0

    return all(dot(c1[a], c2[b]) == dot(c1[b], c2[a]) for a in range(n) for b in range(a))


@dataclass(frozen=True)
class OmegaPair:
    """Stacked pair (tau1; tau2) with symmetric transpose(tau1) tau2 and full rank."""

    tau1: SignedPartialPermutation
    tau2: SignedPartialPermutation

    def __post_init__(self):
        t1, t2 = self.tau1, self.tau2
        if not isinstance(t1, SignedPartialPermutation):
            object.__setattr__(self, "tau1", t1 := SignedPartialPermutation(t1))
        if not isinstance(t2, SignedPartialPermutation):
            object.__setattr__(self, "tau2", t2 := SignedPartialPermutation(t2))
        if t1.n != t2.n:
            raise ValidationError("tau1 and tau2 differ in size")
        if not _symmetric_product(t1.entries, t2.entries):
            raise NotSymmetricProduct("transpose(tau1) tau2 is not symmetric")
        # column supports are disjoint, so full rank means no zero column
        for j in range(t1.n):
            if not t1.column(j)[0] and not t2.column(j)[0]:
                raise RankDeficient(f"column {j + 1} of the stacked pair is zero")

    @property
    def n(self):
        return self.tau1.n

    def column_codes(self):
        return tuple((self.tau1.column(j), self.tau2.column(j)) for j in range(self.n))

    def stacked(self):
        return self.tau1.to_matrix().vstack(self.tau2.to_matrix())

    def key(self):
        return (self.tau1.entries, self.tau2.entries)

    def to_json(self):
        return {"tau1": self.tau1.to_json(), "tau2": self.tau2.to_json()}

    @classmethod
    def from_json(cls, obj):
        try:
            return validate_omega(int_grid_from_json(obj["tau1"]), int_grid_from_json(obj["tau2"]))
        except (KeyError, TypeError) as exc:
            raise ParseError("omega JSON needs tau1 and tau2") from exc


def validate_omega(tau1, tau2):
    """Build an OmegaPair from two integer grids, naming the first violated condition."""
    t1 = SignedPartialPermutation(tau1)
    t2 = SignedPartialPermutation(tau2)
    return OmegaPair(t1, t2)


@dataclass(frozen=True)
class TauPair:
    """Stacked pair of {0,1} partial permutations of full rank."""

    tau1: tuple
    tau2: tuple

    def __post_init__(self):
        g1 = _grid(self.tau1, {0, 1})
        g2 = _grid(self.tau2, {0, 1})
        if len(g1) != len(g2):
            raise ValidationError("tau1 and tau2 differ in size")
        for g in (g1, g2):
            SignedPartialPermutation(g)
        for j in range(len(g1)):
            if not _column_support(g1, j)[0] and not _column_support(g2, j)[0]:
                raise RankDeficient(f"column {j + 1} of the stacked pair is zero")
        object.__setattr__(self, "tau1", g1)
        object.__setattr__(self, "tau2", g2)

    @property
    def n(self):
        return len(self.tau1)

    def column_codes(self):
        return tuple((_column_support(self.tau1, j)[0], _column_support(self.tau2, j)[0])
                     for j in range(self.n))

    @classmethod
    def from_codes(cls, codes):
        n = len(codes)
        g1 = [[0] * n for _ in range(n)]
        g2 = [[0] * n for _ in range(n)]
        for j, (a, b) in enumerate(codes):
            if a:
                g1[a - 1][j] = 1
            if b:
                g2[b - 1][j] = 1
        return cls(g1, g2)

    def in_r_circle(self):
        return _symmetric_product(self.tau1, self.tau2)

    def require_r_circle(self):
        if not self.in_r_circle():
            raise NotInRCircle("transpose(tau1) tau2 is not symmetric")
        return self

    def permute_columns(self, w):
        codes = self.column_codes()
        return TauPair.from_codes([codes[w[j]] for j in range(self.n)])

    def to_json(self):
        return {"tau1": int_matrix_json(self.tau1), "tau2": int_matrix_json(self.tau2)}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(int_grid_from_json(obj["tau1"]), int_grid_from_json(obj["tau2"]))
        except (KeyError, TypeError) as exc:
            raise ParseError("tau JSON needs tau1 and tau2") from exc


def canonical_tau_rep(tau):
    """Sort columns by their (row1, row2) codes: the minimal column ordering."""
    return TauPair.from_codes(sorted(tau.column_codes()))


@dataclass(frozen=True)
class GroupElement:
    """(eps, eta, w) acting by (t1, t2) -> (eps t1 eta w, eps t2 eta w).

    ``w`` is a tuple of 0-based images with w e_j = e_{w[j]}, so column j of
    ``tau w`` is column w[j] of tau.
    """

    eps: tuple
    eta: tuple
    w: tuple

    def act(self, omega):
        n = omega.n
        out = []
        for g in (omega.tau1.entries, omega.tau2.entries):
            out.append(tuple(tuple(self.eps[i] * g[i][self.w[j]] * self.eta[self.w[j]]
                                   for j in range(n)) for i in range(n)))
        return OmegaPair(SignedPartialPermutation(out[0]), SignedPartialPermutation(out[1]))

    @classmethod
    def identity(cls, n):
        return cls((1,) * n, (1,) * n, tuple(range(n)))


# enumeration ------------------------------------------------------------

def check_guard(n, max_n, what):
    if n < 0:
        raise ValidationError(f"size must be nonnegative, got {n}")
    if max_n is not None and n > max_n:
        raise SizeGuardExceeded(f"{what} for n={n} exceeds the size guard n <= {max_n}")


def _signed_options(n):
    """Signed unit-vector choices for one column or row, in encoding order."""
    opts = [(0, 0)]
    for k in range(1, n + 1):
        opts.append((k, 1))
        opts.append((k, -1))
    return opts


def enumerate_spp(n, max_n=DEFAULT_MAX_N):
    """All n x n signed partial permutations, rows chosen in encoding order."""
    check_guard(n, max_n, "SPP enumeration")
    opts = _signed_options(n)
    rows = []

    def rec(i, used):
        if i == n:
            yield SignedPartialPermutation(tuple(rows))
            return
        for k, s in opts:
            if k and k in used:
                continue
            row = [0] * n
            if k:
                row[k - 1] = s
            rows.append(tuple(row))
            yield from rec(i + 1, used | {k} if k else used)
            rows.pop()

    yield from rec(0, frozenset())


def enumerate_spi_plus(m, max_n=DEFAULT_MAX_N):
    """All SPI+ of size m.

    The smallest unassigned index takes, in order, diagonal 1, -1, 0, then an
    arc to each larger unassigned index.
    """
    check_guard(m, max_n, "SPI+ enumeration")
    g = [[0] * m for _ in range(m)]

    def rec(free):
        if not free:
            yield SignedPartialInvolution(tuple(tuple(r) for r in g))
            return
        i, rest = free[0], free[1:]
        for v in (1, -1, 0):
            g[i][i] = v
            yield from rec(rest)
        g[i][i] = 0
        for idx, j in enumerate(rest):
            g[i][j] = g[j][i] = 1
            yield from rec(rest[:idx] + rest[idx + 1:])
            g[i][j] = g[j][i] = 0

    yield from rec(tuple(range(m)))


def _enumerate_pairs(n, block_opts, build):
    cols = [(a, b) for a in block_opts for b in block_opts if a[0] or b[0]]
    chosen = []

    def dot(a, b):
        return a[1] * b[1] if a[0] and a[0] == b[0] else 0

    def rec(used1, used2):
        if len(chosen) == n:
            yield build(chosen)
            return
        for c1, c2 in cols:
            if (c1[0] and c1[0] in used1) or (c2[0] and c2[0] in used2):
                continue
            if any(dot(c1, p2) != dot(p1, c2) for p1, p2 in chosen):
                continue
            chosen.append((c1, c2))
            yield from rec(used1 | {c1[0]}, used2 | {c2[0]})
            chosen.pop()

    yield from rec(frozenset(), frozenset())


def _grids_from_columns(n, chosen):
    g1 = [[0] * n for _ in range(n)]
    g2 = [[0] * n for _ in range(n)]
    for j, ((r1, s1), (r2, s2)) in enumerate(chosen):
        if r1:
            g1[r1 - 1][j] = s1
        if r2:
            g2[r2 - 1][j] = s2
    return tuple(map(tuple, g1)), tuple(map(tuple, g2))


def enumerate_omega(n, max_n=DEFAULT_MAX_N):
    """Every stacked pair in Omega, columns in lexicographic code order."""
    check_guard(n, max_n, "Omega enumeration")

    def build(chosen):
        g1, g2 = _grids_from_columns(n, chosen)
        return OmegaPair(SignedPartialPermutation(g1), SignedPartialPermutation(g2))

    yield from _enumerate_pairs(n, _signed_options(n), build)


def enumerate_R_circle(n, max_n=DEFAULT_MAX_N):
    """Every unsigned pair with symmetric product, columns in code order."""
    check_guard(n, max_n, "unsigned pair enumeration")
    opts = [(0, 0)] + [(k, 1) for k in range(1, n + 1)]

    def build(chosen):
        return TauPair(*_grids_from_columns(n, chosen))

    yield from _enumerate_pairs(n, opts, build)


def enumerate_R_circle_classes(n, max_n=DEFAULT_MAX_N):
    """Canonical representatives of the column-permutation classes, sorted."""
    check_guard(n, max_n, "unsigned pair enumeration")
    reps = {canonical_tau_rep(t).column_codes() for t in enumerate_R_circle(n, max_n)}
    return [TauPair.from_codes(c) for c in sorted(reps)]


def all_column_permutations(n):
    return permutations(range(n))

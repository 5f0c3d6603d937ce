"""Decorated clans and (p,q)-clans, and the maps between clans, stacked pairs
and orbit labels.

A decorated clan on n vertices gives each vertex one of "+", "-", "c", "d" or
the (1-based) index of its arc partner. A (p,q)-clan uses only "+", "-" and
arcs, with #plus - #minus = p - q.
"""

from dataclasses import dataclass
from math import comb

from .classify import OrbitLabel
from .errors import ContainsD, InvalidClan, ParseError, SizeMismatch
from .linalg import Inertia
from .params import OmegaPair, SignedPartialInvolution, SignedPartialPermutation

DECORATIONS = ("+", "-", "c", "d")
TEXT_MINUS = "−"


def _normalize_token(x):
    if isinstance(x, bool):
        raise InvalidClan(f"bad clan entry {x!r}")
    if isinstance(x, int):
        return x
    if x == TEXT_MINUS:
        return "-"
    if isinstance(x, str) and x.isdigit():
        return int(x)
    return x


def _check_arcs(gamma, allowed):
    n = len(gamma)
    for i, g in enumerate(gamma, start=1):
        if isinstance(g, int):
            if not 1 <= g <= n or g == i:
                raise InvalidClan(f"vertex {i} has arc target {g} outside [1..{n}] or itself")
            if gamma[g - 1] != i:
                raise InvalidClan(f"arc {i}->{g} is not matched by {g}->{i}")
        elif g not in allowed:
            raise InvalidClan(f"vertex {i} has decoration {g!r}")


def _arc_text(gamma):
    labels, out, nxt = {}, [], 1
    for i, g in enumerate(gamma, start=1):
        if isinstance(g, int):
            key = (min(i, g), max(i, g))
            if key not in labels:
                labels[key] = nxt
                nxt += 1
            out.append(str(labels[key]))
        else:
            out.append(TEXT_MINUS if g == "-" else g)
    return " ".join(out)


def _parse_arc_text(text, allowed):
    tokens = text.split()
    gamma = [None] * len(tokens)
    seen = {}
    for i, tok in enumerate(tokens):
        tok = _normalize_token(tok)
        if isinstance(tok, int):
            seen.setdefault(tok, []).append(i)
        elif tok in allowed:
            gamma[i] = tok
        else:
            raise ParseError(f"unknown clan token {tok!r}")
    for lab, where in seen.items():
        if len(where) != 2:
            raise ParseError(f"arc label {lab} appears {len(where)} times, expected 2")
        a, b = where
        gamma[a], gamma[b] = b + 1, a + 1
    return tuple(gamma)


@dataclass(frozen=True)
class DecoratedClan:
    gamma: tuple

    def __post_init__(self):
        g = tuple(_normalize_token(x) for x in self.gamma)
        _check_arcs(g, DECORATIONS)
        object.__setattr__(self, "gamma", g)

    @property
    def n(self):
        return len(self.gamma)

    def arcs(self):
        return [(i, g) for i, g in enumerate(self.gamma, start=1) if isinstance(g, int) and i < g]

    def to_text(self):
        """Space-separated tokens; arcs numbered by first occurrence, minus as U+2212."""
        return _arc_text(self.gamma)

    @classmethod
    def from_text(cls, text):
        return cls(_parse_arc_text(text, DECORATIONS))

    def to_json(self):
        return {"n": self.n, "gamma": list(self.gamma)}

    @classmethod
    def from_json(cls, obj):
        try:
            gamma = obj["gamma"]
            n = obj.get("n", len(gamma))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError("clan JSON needs gamma") from exc
        if n != len(gamma):
            raise ParseError(f"clan JSON declares n={n} but has {len(gamma)} vertices")
        return cls(tuple(gamma))

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class PQClan:
    p: int
    q: int
    gamma: tuple

    def __post_init__(self):
        g = tuple(_normalize_token(x) for x in self.gamma)
        if len(g) != self.p + self.q:
            raise InvalidClan(f"{len(g)} vertices for a ({self.p},{self.q})-clan")
        _check_arcs(g, ("+", "-"))
        if g.count("+") - g.count("-") != self.p - self.q:
            raise InvalidClan(f"#plus - #minus must equal p - q = {self.p - self.q}")
        object.__setattr__(self, "gamma", g)

    def to_text(self):
        return _arc_text(self.gamma)

    @classmethod
    def from_text(cls, text, p, q):
        return cls(p, q, _parse_arc_text(text, ("+", "-")))


# stacked pairs <-> clans ------------------------------------------------

def omega_to_clan(omega):
    """Read each column of the pair: a vertex for each row it touches."""
    gamma = [None] * omega.n
    for (r1, s1), (r2, s2) in omega.column_codes():
        if not r1:
            gamma[r2 - 1] = "c"
        elif not r2:
            gamma[r1 - 1] = "d"
        elif r1 == r2:
            gamma[r1 - 1] = "+" if s1 * s2 > 0 else "-"
        else:
            gamma[r1 - 1], gamma[r2 - 1] = r2, r1
    return DecoratedClan(tuple(gamma))


def clan_to_omega(clan):
    """One column per vertex k: d -> (e_k; 0), c -> (0; e_k), + -> (e_k; e_k),
    - -> (-e_k; e_k), and an arc k ~ l puts (e_l; e_k) in column k."""
    n = clan.n
    g1 = [[0] * n for _ in range(n)]
    g2 = [[0] * n for _ in range(n)]
    for k, g in enumerate(clan.gamma):
        if g == "d":
            g1[k][k] = 1
        elif g == "c":
            g2[k][k] = 1
        elif g == "+":
            g1[k][k] = g2[k][k] = 1
        elif g == "-":
            g1[k][k], g2[k][k] = -1, 1
        else:
            g1[g - 1][k] = 1
            g2[k][k] = 1
    return OmegaPair(SignedPartialPermutation(g1), SignedPartialPermutation(g2))


# restriction to the non-d vertices --------------------------------------

def clan_decompose(clan):
    """(I, restricted clan) with I the 1-based non-d vertices and the restricted
    clan relabelled onto [1..|I|] in increasing order."""
    I = tuple(i for i, g in enumerate(clan.gamma, start=1) if g != "d")
    pos = {v: a for a, v in enumerate(I, start=1)}
    sub = tuple(pos[g] if isinstance(g, int) else g for i, g in enumerate(clan.gamma, start=1)
                if g != "d")
    return I, DecoratedClan(sub)


def clan_compose(n, I, restricted):
    """Inverse of clan_decompose: put the restricted clan back on I, d elsewhere."""
    I = tuple(I)
    if len(I) != restricted.n:
        raise SizeMismatch(f"|I|={len(I)} but the restricted clan has {restricted.n} vertices")
    if "d" in restricted.gamma:
        raise ContainsD("restricted clan carries a d decoration")
    gamma = ["d"] * n
    for a, v in enumerate(I):
        g = restricted.gamma[a]
        gamma[v - 1] = I[g - 1] if isinstance(g, int) else g
    return DecoratedClan(tuple(gamma))


def restricted_on(clan):
    """The restriction as a dict from original vertex to original target."""
    return {i: g for i, g in enumerate(clan.gamma, start=1) if g != "d"}


def gamma_prime_to_spi(clan):
    m = clan.n
    if "d" in clan.gamma:
        raise ContainsD("clan has a d decoration")
    g = [[0] * m for _ in range(m)]
    for i, x in enumerate(clan.gamma):
        if x == "+":
            g[i][i] = 1
        elif x == "-":
            g[i][i] = -1
        elif isinstance(x, int):
            g[i][x - 1] = 1
    return SignedPartialInvolution(tuple(map(tuple, g)))


def spi_to_gamma_prime(spi):
    if not spi.is_plus:
        raise InvalidClan("arc entries must be +1")
    gamma = []
    for i, r in enumerate(spi.entries):
        if r[i] == 1:
            gamma.append("+")
        elif r[i] == -1:
            gamma.append("-")
        else:
            j = next((j for j, x in enumerate(r) if x), None)
            gamma.append("c" if j is None else j + 1)
    return DecoratedClan(tuple(gamma))


def pq_clan_embed(clan, J, m):
    """Move a (p,q)-clan onto J inside [1..m] along the order isomorphism; c off J."""
    J = tuple(sorted(J))
    if len(J) != clan.p + clan.q or len(set(J)) != len(J) or any(not 1 <= j <= m for j in J):
        raise SizeMismatch(f"J={J} is not a {clan.p + clan.q}-subset of [1..{m}]")
    gamma = ["c"] * m
    for a, j in enumerate(J):
        g = clan.gamma[a]
        gamma[j - 1] = J[g - 1] if isinstance(g, int) else g
    return DecoratedClan(tuple(gamma))


def pq_clan_extract(clan):
    """Inverse of pq_clan_embed: ((p,q)-clan, J, m)."""
    if "d" in clan.gamma:
        raise ContainsD("clan has a d decoration")
    J = tuple(i for i, g in enumerate(clan.gamma, start=1) if g != "c")
    pos = {v: a for a, v in enumerate(J, start=1)}
    sub = tuple(pos[g] if isinstance(g, int) else g for g in clan.gamma if g != "c")
    arcs = sum(1 for g in sub if isinstance(g, int)) // 2
    p = sub.count("+") + arcs
    q = sub.count("-") + arcs
    return PQClan(p, q, sub), J, clan.n


def spi_signature(tau):
    g = tau.entries
    m = len(g)
    arcs = len(tau.arcs())
    plus = sum(1 for i in range(m) if g[i][i] == 1)
    minus = sum(1 for i in range(m) if g[i][i] == -1)
    return Inertia(plus + arcs, minus + arcs, m - plus - minus - 2 * arcs)


# labels -----------------------------------------------------------------

def label_to_clan(label):
    return clan_compose(label.n, label.I, spi_to_gamma_prime(label.spi))


def clan_to_label(clan):
    I, sub = clan_decompose(clan)
    return OrbitLabel(clan.n, I, gamma_prime_to_spi(sub))


# counting and enumeration -----------------------------------------------

def double_factorial_odd(k):
    """(2k-1)!!, with the empty product for k = 0."""
    out = 1
    for j in range(1, 2 * k, 2):
        out *= j
    return out


def count_clans(n):
    return sum(double_factorial_odd(k) * comb(n, 2 * k) * 4 ** (n - 2 * k) for k in range(n // 2 + 1))


def count_pq_clans(p, q):
    """Choose k arcs, then p-k pluses and q-k minuses on the rest."""
    n = p + q
    return sum(comb(n, 2 * k) * double_factorial_odd(k) * comb(n - 2 * k, p - k)
               for k in range(min(p, q) + 1))


def _enumerate_arc_decorations(n, decorations, accept=None):
    gamma = [None] * n

    def rec():
        try:
            i = gamma.index(None)
        except ValueError:
            if accept is None or accept(gamma):
                yield tuple(gamma)
            return
        for d in decorations:
            gamma[i] = d
            yield from rec()
        for j in range(i + 1, n):
            if gamma[j] is None:
                gamma[i], gamma[j] = j + 1, i + 1
                yield from rec()
                gamma[j] = None
        gamma[i] = None

    yield from rec()


def enumerate_clans(n):
    """The smallest open vertex takes +, -, c, d, then an arc to each later open vertex."""
    for g in _enumerate_arc_decorations(n, DECORATIONS):
        yield DecoratedClan(g)


def enumerate_pq_clans(p, q):
    n = p + q

    def accept(g):
        return g.count("+") - g.count("-") == p - q

    for g in _enumerate_arc_decorations(n, ("+", "-"), accept):
        yield PQClan(p, q, g)

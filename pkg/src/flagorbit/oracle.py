"""Independent certification: brute-force orbits on stacked pairs and random
Borel-invariance sampling."""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .classify import (borel_normal_form, classify_frame, invariant_profile, normalize_omega,
                       omega_frame)
from .clans import count_clans, label_to_clan, omega_to_clan
from .errors import CertificationFailure
from .linalg import QQ, Matrix, rank
from .params import GroupElement, check_guard, enumerate_omega, enumerate_spi_plus
from .scalars import GaussianRational

BRUTE_MAX_N = 3
SAMPLE_MAX_M = 6
DEFAULT_SEED = 1729


class UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller index wins so the final partition is schedule independent
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass
class OrbitTable:
    elements: list
    parent: list
    classes: list = field(default_factory=list)

    def members(self):
        """Map from class representative index to member indices."""
        out = {c: [] for c in self.classes}
        for i, p in enumerate(self.parent):
            out[p].append(i)
        return out


def generators(n):
    """Left sign flips, right sign flips and adjacent column swaps."""
    ident = tuple(range(n))
    ones = (1,) * n
    gens = []
    for i in range(n):
        flip = tuple(-1 if k == i else 1 for k in range(n))
        gens.append(GroupElement(flip, ones, ident))
        gens.append(GroupElement(ones, flip, ident))
    for j in range(n - 1):
        w = list(ident)
        w[j], w[j + 1] = w[j + 1], w[j]
        gens.append(GroupElement(ones, ones, tuple(w)))
    return gens


def brute_force_orbit_count(n, max_n=BRUTE_MAX_N):
    check_guard(n, max_n, "brute-force orbit enumeration")
    elements = list(enumerate_omega(n, max_n=None))
    index = {om.key(): i for i, om in enumerate(elements)}
    uf = UnionFind(len(elements))
    for g in generators(n):
        for i, om in enumerate(elements):
            uf.union(i, index[g.act(om).key()])
    parent = [uf.find(i) for i in range(len(elements))]
    classes = sorted(set(parent))
    return len(classes), OrbitTable(elements, parent, classes)


def certify_classifier(n, max_n=BRUTE_MAX_N):
    """Check labels and clans are class functions and separate classes.

    Both the integer block route and the exact frame route are checked, as is
    the label -> clan map against the direct column reading.
    """
    t0 = time.perf_counter()
    count, table = brute_force_orbit_count(n, max_n)
    clan_of_class = {}
    for rep, members in table.members().items():
        first = table.elements[rep]
        label = normalize_omega(first)
        clan = omega_to_clan(first)
        for i in members:
            om = table.elements[i]
            fast = normalize_omega(om)
            slow = classify_frame(omega_frame(om))
            direct = omega_to_clan(om)
            if fast != label or slow != label or direct != clan or label_to_clan(fast) != direct:
                raise CertificationFailure(
                    f"class of element {rep} is not sent to a single label and clan",
                    {"first": first.to_json(), "other": om.to_json(),
                     "labels": [label.to_json(), fast.to_json(), slow.to_json()],
                     "clans": [clan.to_text(), direct.to_text()]})
        if clan in clan_of_class:
            other = table.elements[clan_of_class[clan]]
            raise CertificationFailure(
                f"two classes share clan {clan.to_text()}",
                {"first": other.to_json(), "other": first.to_json()})
        clan_of_class[clan] = rep
    expected = count_clans(n)
    if count != expected:
        raise CertificationFailure(f"{count} classes but the count formula gives {expected}",
                                   {"n": n, "classes": count, "formula": expected})
    return {"pass": True, "n": n, "elements": len(table.elements), "classes": count,
            "formula": expected, "seconds": round(time.perf_counter() - t0, 3)}


# random sampling --------------------------------------------------------

def random_rational(rng, nonzero=False):
    while True:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if x or not nonzero:
            return x


def random_scalar(rng, fld, nonzero=False):
    if fld == QQ:
        return random_rational(rng, nonzero)
    while True:
        x = GaussianRational(random_rational(rng), random_rational(rng))
        if x or not nonzero:
            return x


def random_hermitian(m, fld, rng):
    g = [[0] * m for _ in range(m)]
    for i in range(m):
        g[i][i] = random_rational(rng)
        for j in range(i + 1, m):
            x = random_scalar(rng, fld)
            g[i][j] = x
            g[j][i] = x.conjugate()
    return Matrix(g, m, m, fld)


def random_upper_triangular(m, fld, rng):
    g = [[0] * m for _ in range(m)]
    for i in range(m):
        g[i][i] = random_scalar(rng, fld, nonzero=True)
        for j in range(i + 1, m):
            g[i][j] = random_scalar(rng, fld)
    return Matrix(g, m, m, fld)


def random_invertible(m, fld, rng):
    while True:
        g = Matrix([[random_scalar(rng, fld) for _ in range(m)] for _ in range(m)], m, m, fld)
        if rank(g) == m:
            return g


@lru_cache(maxsize=None)
def _normal_forms(m):
    return tuple(enumerate_spi_plus(m))


def random_structured_hermitian(m, fld, rng):
    """A random normal form moved by a random upper triangular matrix."""
    tau = rng.choice(_normal_forms(m))
    b = random_upper_triangular(m, fld, rng)
    return tau, b @ tau.to_matrix().with_field(fld) @ b.H


def borel_invariance_sample(m, trials, seed=DEFAULT_SEED, fld=QQ, fault=False):
    """Profiles and normal forms must survive z -> b z b*.

    Even trials use a generic random z; odd trials start from a random normal
    form so that low-rank orbits are exercised too. With ``fault`` set, b is
    a general invertible matrix, which should break invariance.
    """
    check_guard(m, SAMPLE_MAX_M, "Borel sampling")
    rng = random.Random(seed)
    t0 = time.perf_counter()
    for t in range(trials):
        tau = None
        if t % 2 and m:
            tau, z = random_structured_hermitian(m, fld, rng)
        else:
            z = random_hermitian(m, fld, rng)
        b = random_invertible(m, fld, rng) if fault else random_upper_triangular(m, fld, rng)
        moved = b @ z @ b.H
        pz, pm = invariant_profile(z), invariant_profile(moved)
        nz = borel_normal_form(z)
        ok = pz == pm and nz == borel_normal_form(moved)
        if tau is not None:
            ok = ok and nz == tau
        if not ok:
            raise CertificationFailure(
                f"invariance broke at trial {t} (m={m}, field={fld})",
                {"trial": t, "seed": seed, "z": z.to_json(), "b": b.to_json(),
                 "profile_z": pz.to_json(), "profile_bzb": pm.to_json()})
    return {"pass": True, "m": m, "trials": trials, "seed": seed, "field": fld, "fault": fault,
            "seconds": round(time.perf_counter() - t0, 3)}

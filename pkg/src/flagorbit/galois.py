"""Real orbits over a complex orbit with real points.

An unsigned pair tau has real points exactly when transpose(tau1) tau2 is
symmetric. Its columns split the row indices into four kinds (tau1 only,
tau2 only, matched, crossed); the real orbits above tau are indexed by sign
vectors that are free on the matched rows, so there are 2^d of them with d
the number of matched columns.
"""

from dataclasses import dataclass
from itertools import product

from .classify import normalize_omega
from .params import OmegaPair, SignedPartialPermutation, TauPair, canonical_tau_rep


@dataclass(frozen=True)
class KPartition:
    """1-based row indices: tau2 only (c), tau1 only (d), matched (one), crossed (two)."""

    c: tuple
    d: tuple
    one: tuple
    two: tuple

    def to_json(self):
        return {"c": list(self.c), "d": list(self.d), "one": list(self.one), "two": list(self.two)}


def rational_point_test(tau):
    return tau.in_r_circle()


def k_partition(tau):
    tau.require_r_circle()
    c, d, one, two = [], [], [], []
    for a, b in tau.column_codes():
        if not a:
            c.append(b)
        elif not b:
            d.append(a)
        elif a == b:
            one.append(a)
        else:
            two.extend((a, b))
    return KPartition(*(tuple(sorted(set(x))) for x in (c, d, one, two)))


def d_of_tau(tau):
    """Number of columns on which tau1 and tau2 agree."""
    tau.require_r_circle()
    return sum(1 for a, b in tau.column_codes() if a == b)


def sign_set(tau):
    """Sign vectors free on the matched rows, all-ones first."""
    matched = k_partition(tau).one
    n = tau.n
    for signs in product((1, -1), repeat=len(matched)):
        t = [1] * n
        for i, s in zip(matched, signs):
            t[i - 1] = s
        yield tuple(t)


def real_fiber(tau):
    """One stacked pair (t tau1; tau2) per sign vector t."""
    out = []
    for t in sign_set(tau):
        g1 = tuple(tuple(t[i] * x for x in r) for i, r in enumerate(tau.tau1))
        out.append(OmegaPair(SignedPartialPermutation(g1), SignedPartialPermutation(tau.tau2)))
    return out


def strip_signs(omega):
    g1 = tuple(tuple(abs(x) for x in r) for r in omega.tau1.entries)
    g2 = tuple(tuple(abs(x) for x in r) for r in omega.tau2.entries)
    return canonical_tau_rep(TauPair(g1, g2).require_r_circle())


def fiber_report(tau, case="A"):
    fiber = real_fiber(tau)
    return {
        "case": case,
        "tau": tau.to_json(),
        "d": d_of_tau(tau),
        "K": k_partition(tau).to_json(),
        "fiber": [om.to_json() for om in fiber],
        "labels": [normalize_omega(om).to_json() for om in fiber],
    }

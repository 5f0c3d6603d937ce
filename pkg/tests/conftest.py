import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from flagorbit.linalg import QQ, QQI, Matrix  # noqa: E402
from flagorbit.scalars import GaussianRational  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
nonzero_rationals = rationals.filter(bool)
gaussians = st.builds(GaussianRational, rationals, rationals)


def scalars(field):
    return rationals if field == QQ else gaussians


@st.composite
def hermitian(draw, m=None, field=None, max_m=5):
    field = field or draw(st.sampled_from([QQ, QQI]))
    m = draw(st.integers(0, max_m)) if m is None else m
    g = [[0] * m for _ in range(m)]
    for i in range(m):
        g[i][i] = draw(rationals)
        for j in range(i + 1, m):
            x = draw(scalars(field))
            g[i][j] = x
            g[j][i] = x.conjugate()
    return Matrix(g, m, m, field)


@st.composite
def sparse_hermitian(draw, m=None, field=None, max_m=5):
    """Hermitian with many zeros, so degenerate orbits show up often."""
    z = draw(hermitian(m, field, max_m))
    keep = draw(st.lists(st.booleans(), min_size=z.rows * z.rows, max_size=z.rows * z.rows))
    n = z.rows
    g = [list(r) for r in z.data]
    for i in range(n):
        for j in range(i, n):
            if not keep[i * n + j]:
                g[i][j] = g[j][i] = 0 * g[i][j]
    return Matrix(g, n, n, z.field)


@st.composite
def upper_triangular(draw, m, field):
    g = [[0] * m for _ in range(m)]
    for i in range(m):
        g[i][i] = draw(nonzero_rationals if field == QQ else gaussians.filter(bool))
        for j in range(i + 1, m):
            g[i][j] = draw(scalars(field))
    return Matrix(g, m, m, field)


@st.composite
def invertible(draw, m, field):
    """Lower unitriangular times upper triangular: always invertible, never triangular."""
    u = draw(upper_triangular(m, field))
    g = [[0] * m for _ in range(m)]
    for i in range(m):
        g[i][i] = 1
        for j in range(i):
            g[i][j] = draw(scalars(field))
    return Matrix(g, m, m, field) @ u


@st.composite
def dense(draw, rows, cols, field):
    """Random matrix whose entries are zero about a third of the time."""
    entry = st.one_of(st.just(Fraction(0)), scalars(field))
    return Matrix([[draw(entry) for _ in range(cols)] for _ in range(rows)], rows, cols, field)


@st.composite
def matrices(draw, max_dim=5, field=None):
    field = field or draw(st.sampled_from([QQ, QQI]))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    return Matrix([[draw(scalars(field)) for _ in range(c)] for _ in range(r)], r, c, field)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)

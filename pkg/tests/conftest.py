import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import settings

from nkoszul.classification import antisymmetriser
from nkoszul.exactlin import Tensor
from nkoszul.presentation import Presentation

settings.register_profile("pkg", max_examples=60, deadline=None)
settings.load_profile("pkg")


def x(*word, c=1):
    return Tensor.monomial(word, c)


def single(n, N, f, **kw):
    return Presentation(n, N, (f,), **kw)


def symplectic():
    return single(2, 2, antisymmetriser([0, 1]))


def ant3():
    return single(3, 3, antisymmetriser([0, 1, 2]))


def dense_rank(tensors, n, m):
    """Plain Gaussian elimination over Fractions on dense coordinate vectors.

    Shares no code with the package; used as an oracle for subspace dimensions.
    """
    index = {w: i for i, w in enumerate(itertools.product(range(n), repeat=m))}
    rows = []
    for t in tensors:
        v = [Fraction(0)] * len(index)
        for w, c in t.coeffs.items():
            v[index[w]] = Fraction(int(c.numerator), int(c.denominator))
        rows.append(v)
    r = 0
    cols = len(index)
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def brute_monomial_dims(ws, n, D):
    """Graded dims of k<x>/(monomials) by listing words avoiding every forbidden factor."""
    ws = [tuple(w) for w in ws]
    out = []
    for d in range(D + 1):
        cnt = 0
        for w in itertools.product(range(n), repeat=d):
            if not any(w[i:i + len(f)] == f for f in ws for i in range(d - len(f) + 1)):
                cnt += 1
        out.append(cnt)
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

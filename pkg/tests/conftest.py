import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from nondeg import PolyRing

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

P = 65521
SMALL_P = 101


@pytest.fixture
def xyz():
    return PolyRing(["x", "y", "z"], P)


def polys(ring, max_terms=4, max_deg=2):
    """Hypothesis strategy for polynomials of total degree <= max_deg."""
    return _polys(ring, max_terms, max_deg, 0)


def _exps(n, max_deg):
    # a multiset of variable indices of size <= max_deg
    def count(idx):
        e = [0] * n
        for i in idx:
            e[i] += 1
        return e

    return st.lists(st.integers(0, n - 1), max_size=max_deg).map(count)


def _polys(ring, max_terms, max_deg, min_terms):
    term = st.tuples(_exps(ring.nvars, max_deg), st.integers(1, ring.p - 1))
    return st.lists(term, min_size=min_terms, max_size=max_terms).map(ring.from_terms)


def nonzero_polys(ring, max_terms=4, max_deg=2):
    return _polys(ring, max_terms, max_deg, 1).filter(lambda f: bool(f.monos))


def random_poly(ring, rnd: random.Random, max_terms=3, max_deg=2, nonzero=True):
    n = ring.nvars
    while True:
        terms = []
        for _ in range(rnd.randint(1, max_terms)):
            d = rnd.randint(0, max_deg)
            e = [0] * n
            for _ in range(d):
                e[rnd.randrange(n)] += 1
            terms.append((e, rnd.randrange(1, ring.p)))
        f = ring.from_terms(terms)
        if f.monos or not nonzero:
            return f


def random_system(seed: int, p: int = P, max_vars=3, max_gens=3, max_deg=2):
    """Seeded small system: <= max_vars variables, <= max_gens generators."""
    rnd = random.Random(seed)
    n = rnd.randint(2, max_vars)
    ring = PolyRing(["x", "y", "z", "w"][:n], p)
    c = rnd.randint(1, max_gens)
    return ring, [random_poly(ring, rnd, 3, max_deg) for _ in range(c)]

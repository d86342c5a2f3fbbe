"""Shared fixtures and independent oracles for the test suite."""

import itertools
import random

import pytest

import jcforge as jf
from jcforge.fields import RatFuncElem
from jcforge.linalg import Mat


@pytest.fixture
def Q():
    return jf.rationals()


@pytest.fixture
def GF2():
    return jf.prime_field(2)


@pytest.fixture
def GF3():
    return jf.prime_field(3)


@pytest.fixture
def GF2t():
    return jf.rational_functions(2)


@pytest.fixture
def GF3t():
    return jf.rational_functions(3)


@pytest.fixture
def f_2t(GF2t):
    """T^2 - t over GF(2)(t): inseparable, q = 2."""
    return jf.parse_poly_text("T^2 - t", GF2t)


@pytest.fixture
def f_3t(GF3t):
    """T^3 - t over GF(3)(t): inseparable, q = 3."""
    return jf.parse_poly_text("T^3 - t", GF3t)


@pytest.fixture
def f_gf2(GF2):
    """T^2 + T + 1 over GF(2): separable, q = 1."""
    return jf.parse_poly_text("T^2 + T + 1", GF2)


def random_element(spec, rng, tprob=0.0, tdeg=1):
    if spec.kind == "RationalFunctions":
        if rng.random() < tprob:
            num = [rng.randrange(spec.p) for _ in range(tdeg + 1)]
            while num and num[-1] == 0:
                num.pop()
            if num:
                return RatFuncElem.make(spec, tuple(num), (1,))
        return spec.from_int(rng.randrange(spec.p))
    if spec.kind == "PrimeField":
        return spec.from_int(rng.randrange(spec.p))
    return spec.from_int(rng.randint(-3, 3))


def rand_invertible(spec, n, rng, tprob=0.0, tdeg=1):
    """Random invertible n x n matrix; entries are prime-subfield values
    except a tprob fraction of t-polynomials over GF(p)(t)."""
    while True:
        m = Mat.from_rows(spec, [[random_element(spec, rng, tprob, tdeg)
                                  for _ in range(n)] for _ in range(n)])
        if jf.rank(m) == n:
            return m


def det_oracle(m: Mat):
    """Determinant by Laplace expansion; brute-force oracle for tiny sizes."""
    n = m.rows
    if n == 0:
        return m.spec.one()
    if n == 1:
        return m.entry(0, 0)
    acc = m.spec.zero()
    rest_cols = list(range(1, n))
    for i in range(n):
        e = m.entry(i, 0)
        if e.is_zero():
            continue
        rows = [r for r in range(n) if r != i]
        sub = Mat.from_rows(m.spec, [[m.entry(r, c) for c in rest_cols]
                                     for r in rows])
        term = e * det_oracle(sub)
        acc = acc + term if i % 2 == 0 else acc - term
    return acc


def rank_oracle(m: Mat) -> int:
    """Largest k with a nonzero k x k minor; for sizes <= 4."""
    n, c = m.rows, m.cols
    for k in range(min(n, c), 0, -1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(c), k):
                sub = Mat.from_rows(m.spec, [[m.entry(r, cc) for cc in cols]
                                             for r in rows])
                if not det_oracle(sub).is_zero():
                    return k
    return 0


def irreducible_oracle(f) -> bool:
    """Brute-force factorization search over GF(p), monic f, deg <= 4."""
    spec = f.spec
    p = spec.p
    d = f.degree()
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for tail_g in itertools.product(range(p), repeat=k):
            g = jf.Poly(spec, [spec.from_int(v) for v in tail_g] + [spec.one()])
            for tail_h in itertools.product(range(p), repeat=d - k):
                h = jf.Poly(spec, [spec.from_int(v) for v in tail_h] + [spec.one()])
                if g * h == f:
                    return False
    return True


def seeded(seed: int) -> random.Random:
    return random.Random(seed)

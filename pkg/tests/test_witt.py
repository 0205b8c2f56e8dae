import itertools
import json
import random
from math import comb

import pytest

from helpers import random_truncated
from oracles import GaloisRing
from monoid_witt.monoid_algebra import MonoidAlgebraElement, bracket
from monoid_witt.perfect import finite_field, perfect_closure
from monoid_witt.truncated import TruncatedElement, from_digits, reduce
from monoid_witt.witt import (
    IntPolynomial, WittRing, alpha2, alpha_n, alpha_n_inverse, ghost_polynomial,
    teichmuller_frobenius_check, witt_structure_polys)


def ghost_value(p, m, xs):
    return sum(p ** i * xs[i] ** (p ** (m - i)) for i in range(m + 1))


def witt_value(ring, u):
    """Oracle: a Witt vector over F_q as an element of the Galois ring, sum p^i T(x_i^(p^-i))."""
    gr = GaloisRing(ring.ctx, ring.n)
    acc = (0,) * gr.k
    for i, c in enumerate(u.coords):
        for _ in range(i):
            c = c.pth_root()
        acc = gr.add(acc, gr.scale(gr.teichmuller(c), ring.ctx.p ** i))
    return acc


# -- structure polynomials ------------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5])
def test_w2_polynomials_by_hand(p):
    wc = witt_structure_polys(p, 2)
    X0, X1, Y0, Y1 = (IntPolynomial.var(4, i) for i in range(4))
    assert wc.sum_polys[0] == X0 + Y0
    assert wc.prod_polys[0] == X0 * Y0
    s1 = X1 + Y1
    for k in range(1, p):
        s1 = s1 - X0 ** k * Y0 ** (p - k) * (comb(p, k) // p)
    assert wc.sum_polys[1] == s1
    assert wc.prod_polys[1] == X1 * Y0 ** p + X0 ** p * Y1 + X1 * Y1 * p


def test_w2_p2_text():
    wc = witt_structure_polys(2, 2)
    names = wc.variable_names
    assert wc.sum_polys[1] == IntPolynomial(4, {(0, 1, 0, 0): 1, (0, 0, 0, 1): 1,
                                                (1, 0, 1, 0): -1})
    neg = wc.neg_polys[1]
    assert neg == IntPolynomial(2, {(2, 0): -1, (0, 1): -1})
    assert "X1" in wc.sum_polys[1].format(names)


@pytest.mark.parametrize("p, n", [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_ghost_identities_at_integer_points(p, n):
    wc = witt_structure_polys(p, n)
    rng = random.Random(p * 10 + n)
    for _ in range(20):
        xs = [rng.randint(-6, 6) for _ in range(n)]
        ys = [rng.randint(-6, 6) for _ in range(n)]
        s = [q.evaluate(xs + ys, 1) for q in wc.sum_polys]
        pr = [q.evaluate(xs + ys, 1) for q in wc.prod_polys]
        neg = [q.evaluate(xs, 1) for q in wc.neg_polys]
        for m in range(n):
            assert ghost_value(p, m, s) == ghost_value(p, m, xs) + ghost_value(p, m, ys)
            assert ghost_value(p, m, pr) == ghost_value(p, m, xs) * ghost_value(p, m, ys)
            assert ghost_value(p, m, neg) == -ghost_value(p, m, xs)


def test_ghost_identities_symbolic():
    for p in (2, 3):
        for n in (1, 2, 3):
            wc = witt_structure_polys(p, n)
            nv = 2 * n
            for m in range(n):
                ws = sum((wc.sum_polys[i] ** (p ** (m - i)) * p ** i for i in range(m + 1)),
                         IntPolynomial(nv))
                wp = sum((wc.prod_polys[i] ** (p ** (m - i)) * p ** i for i in range(m + 1)),
                         IntPolynomial(nv))
                wx, wy = ghost_polynomial(p, m, 0, nv), ghost_polynomial(p, m, n, nv)
                assert ws == wx + wy
                assert wp == wx * wy


def test_structure_polys_lower_components_stable():
    for p in (2, 3):
        small, big = witt_structure_polys(p, 2), witt_structure_polys(p, 3)
        # re-index Y variables from positions 2,3 to 3,4
        def widen(q):
            out = {}
            for e, c in q.terms.items():
                out[(e[0], e[1], 0, e[2], e[3], 0)] = c
            return IntPolynomial(6, out)
        for i in range(2):
            assert widen(small.sum_polys[i]) == big.sum_polys[i]
            assert widen(small.prod_polys[i]) == big.prod_polys[i]


def test_caps():
    with pytest.raises(ValueError):
        witt_structure_polys(2, 5)
    with pytest.raises(ValueError):
        witt_structure_polys(7, 2)


def test_export_is_json():
    data = witt_structure_polys(3, 2).export()
    text = json.dumps(data)
    assert json.loads(text)["p"] == 3
    assert len(data["sum"]) == 2 and len(data["product"]) == 2


# -- Witt arithmetic ------------------------------------------------------------

@pytest.mark.parametrize("p, n", [(2, 3), (3, 2), (5, 2), (2, 4)])
def test_prime_field_witt_is_z_mod_pn(p, n):
    ctx = finite_field(p)
    ring = WittRing(ctx, n)
    elems = list(ctx.elements())
    q = p ** n

    def value(u):
        return sum(p ** i * (pow(c.data[0], p ** (n - 1), q) if c else 0)
                   for i, c in enumerate(u.coords)) % q

    vectors = [ring(c) for c in itertools.product(elems, repeat=n)]
    assert sorted(value(u) for u in vectors) == list(range(q))
    rng = random.Random(p + n)
    for u, v in (rng.sample(vectors, 2) for _ in range(60)):
        assert value(u + v) == (value(u) + value(v)) % q
        assert value(u * v) == value(u) * value(v) % q
        assert value(-u) == -value(u) % q
        assert value(u * 5) == 5 * value(u) % q


@pytest.mark.parametrize("q", [4, 9, 8])
def test_witt_over_fq_matches_galois_ring(q):
    ctx = finite_field(q)
    ring = WittRing(ctx, 2)
    gr = GaloisRing(ctx, 2)
    rng = random.Random(q)
    for _ in range(40):
        u = ring(ctx.random_element(rng) for _ in range(2))
        v = ring(ctx.random_element(rng) for _ in range(2))
        assert witt_value(ring, u + v) == gr.add(witt_value(ring, u), witt_value(ring, v))
        assert witt_value(ring, u * v) == gr.mul(witt_value(ring, u), witt_value(ring, v))


def test_witt_examples():
    ctx = finite_field(2)
    one, zero = ctx.one, ctx.zero
    ring = WittRing(ctx, 3)
    assert ring.one + ring.one == ring((zero, one, zero))
    assert ring.one * 2 == ring((zero, one, zero))
    assert -ring.one == ring((one, one, one))
    assert ring.one * 8 == ring.zero


def test_witt_ring_axioms_perfect_closure():
    ctx = perfect_closure(2, "t")
    ring = WittRing(ctx, 2)
    rng = random.Random(4)
    for _ in range(15):
        u, v, w = (ring(ctx.random_element(rng) for _ in range(2)) for _ in range(3))
        assert u + v == v + u
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w
        assert u - u == ring.zero


def test_mismatched_rings():
    a = WittRing(finite_field(4), 2).one
    b = WittRing(finite_field(4), 3).one
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        WittRing(finite_field(4), 2)([finite_field(4).one])


# -- the comparison maps --------------------------------------------------------

def test_alpha2_examples(F4):
    g = F4.generator()
    x = reduce(bracket(F4.one) + bracket(g), 2)
    assert alpha2(x).coords == (g + 1, g)
    assert alpha_n(x).coords == (g + 1, g)


def test_alpha_n_of_two():
    ctx = finite_field(2)
    two = reduce(MonoidAlgebraElement.integer(ctx, 2), 3)
    assert alpha_n(two).coords == (ctx.zero, ctx.one, ctx.zero)


def test_alpha2_rejects_other_precisions(F4):
    with pytest.raises(ValueError):
        alpha2(TruncatedElement.one(F4, 3))


def test_alpha_exhaustive_f2_n3():
    ctx = finite_field(2)
    elems = [TruncatedElement(ctx, 3, {0: c}) for c in range(8)]
    images = [alpha_n(x) for x in elems]
    assert len(set(u.coords for u in images)) == 8
    for x, u in zip(elems, images):
        for y, v in zip(elems, images):
            assert alpha_n(x + y) == u + v
            assert alpha_n(x * y) == u * v
        assert alpha_n_inverse(u) == x


@pytest.mark.parametrize("q", [4, 9])
def test_alpha_random_pairs(q):
    ctx = finite_field(q)
    rng = random.Random(q * 3)
    for _ in range(40):
        x, y = random_truncated(ctx, 2, rng), random_truncated(ctx, 2, rng)
        assert alpha_n(x + y) == alpha_n(x) + alpha_n(y)
        assert alpha_n(x * y) == alpha_n(x) * alpha_n(y)
        assert alpha_n_inverse(alpha_n(x)) == x


def test_alpha2_agrees_with_alpha_n_on_f4(F4):
    g = F4.generator()
    elems = [reduce(bracket(F4.one) * a + bracket(g) * b, 2) for a in range(4) for b in range(4)]
    for x in elems:
        assert alpha2(x) == alpha_n(x)
    for x, y in itertools.combinations(elems, 2):
        assert alpha2(x * y) == alpha2(x) * alpha2(y)


def test_alpha_on_teichmuller_digits(F9):
    rng = random.Random(1)
    for _ in range(10):
        digits = [F9.random_element(rng) for _ in range(3)]
        u = alpha_n(from_digits(digits))
        ring = u.ring
        # sum p^i [r_i] corresponds to sum V^i of Teichmuller (r_i^(p^i)) vectors
        expected = ring.zero
        for i, r in enumerate(digits):
            coords = [F9.zero] * 3
            coords[i] = r ** (3 ** i)
            expected = expected + ring(coords)
        assert u == expected


def test_alpha_perfect_closure_round_trip():
    ctx = perfect_closure(2, "t")
    rng = random.Random(6)
    for _ in range(8):
        x = from_digits([ctx.random_element(rng) for _ in range(2)])
        assert alpha_n_inverse(alpha_n(x)) == x


@pytest.mark.parametrize("ctx", [finite_field(4), finite_field(9), perfect_closure(2, "t")],
                         ids=lambda c: c.spec)
def test_frobenius_on_teichmuller_coordinates(ctx):
    rng = random.Random(2)
    for _ in range(6):
        assert teichmuller_frobenius_check(ctx.random_element(rng), 2)

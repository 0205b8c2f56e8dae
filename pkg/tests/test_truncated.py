import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_ideal_element, random_ideal_power_element, random_truncated, random_zr
from oracles import GaloisRing
from monoid_witt.errors import NotDivisibleError, NotInvertibleError
from monoid_witt.monoid_algebra import MonoidAlgebraElement, bracket
from monoid_witt.perfect import PerfectClosure, RingHom, find_embedding, finite_field, perfect_closure
from monoid_witt.truncated import (
    TruncatedElement, _divide_by_p, basis_valuation, divide_by_p, frobenius, frobenius_inv, from_digits,
    induced_map, invert, reduce, teichmuller, teichmuller_expand, valuation, verschiebung)


def labelled(x):
    return x.labelled_coeffs()


# -- reduce ---------------------------------------------------------------------

def test_reduce_zero_bracket(F4, P2):
    for n in range(5):
        assert reduce(bracket(F4.zero), n).is_zero()
    assert reduce(bracket(P2.zero), 3).is_zero()


def test_reduce_f4_golden(F4):
    g = F4.generator()
    assert labelled(reduce(bracket(g + 1), 2)) == {"1": 3, "g": 3}
    assert str(reduce(bracket(g + 1), 2)) == "3*[1] + 3*[g] (mod I^2)"


def test_reduce_perfect_closure_golden(P2):
    t = P2.generator("t")
    assert labelled(reduce(bracket(1 + t), 2)) == {"1": 1, "t^(1/2)": 2, "t": 1}


def test_reduce_kills_pn(F4, F9, P2, rng):
    for ctx in (F4, F9, P2):
        for n in range(4):
            x = random_zr(ctx, rng)
            assert reduce(x * ctx.p ** n, n).is_zero()


@pytest.mark.parametrize("q, n", [(2, 4), (3, 3), (5, 2), (4, 3), (8, 2), (9, 2), (27, 2)])
def test_reduce_matches_galois_ring(q, n):
    """ZF_q/I^n is the Galois ring of length n with [r] the Teichmuller lift."""
    ctx = finite_field(q)
    gr = GaloisRing(ctx, n)
    rng = random.Random(q * 100 + n)
    for _ in range(25):
        x = random_zr(ctx, rng, terms=4, coeff=50)
        assert reduce(x, n).coeffs == gr.basis_coordinates(gr.image(x))


def test_prime_field_is_z_mod_pn():
    # the oracle for F_p: [r] -> r^(p^(n-1)) mod p^n
    for p in (2, 3, 5):
        ctx = finite_field(p)
        for n in range(1, 4):
            q = p ** n
            for r in ctx.elements():
                expected = pow(r.data[0], p ** (n - 1), q) if r else 0
                assert reduce(bracket(r), n).coeffs.get(0, 0) == expected


@pytest.mark.parametrize("ctx", [finite_field(4), finite_field(9), perfect_closure(2, "t")],
                         ids=lambda c: c.spec)
def test_reduce_is_idempotent_on_lifts(ctx, rng):
    for n in range(4):
        for _ in range(5):
            x = reduce(random_zr(ctx, rng), n)
            assert reduce(x.lift(), n) == x


@pytest.mark.parametrize("ctx", [finite_field(4), finite_field(3), perfect_closure(2, "t")],
                         ids=lambda c: c.spec)
def test_reduce_vanishes_on_ideal_powers(ctx, rng):
    for n in (1, 2, 3):
        for _ in range(4):
            assert reduce(random_ideal_power_element(ctx, n, rng), n).is_zero()


@pytest.mark.parametrize("ctx", [finite_field(4), finite_field(9)], ids=lambda c: c.spec)
def test_arithmetic_independent_of_lifts(ctx, rng):
    n = 2
    for _ in range(10):
        x, y = random_zr(ctx, rng), random_zr(ctx, rng)
        x2 = x + random_ideal_power_element(ctx, n, rng)
        y2 = y + random_ideal_power_element(ctx, n, rng)
        assert reduce(x, n) == reduce(x2, n)
        assert reduce(x * y, n) == reduce(x2 * y2, n)
        assert reduce(x, n) * reduce(y, n) == reduce(x * y, n)
        assert reduce(x, n) + reduce(y, n) == reduce(x + y, n)


# -- division by p --------------------------------------------------------------

def test_divide_by_p_examples(F4, F9):
    g = F4.generator()
    z = bracket(g + 1) - bracket(F4.one) - bracket(g)
    assert labelled(divide_by_p(z, 2)) == {"1": 1, "g": 1}
    for r in F9.elements():
        assert divide_by_p(bracket(r) * 3, 3) == reduce(bracket(r), 2)


def test_divide_by_p_precision_one(F4, rng):
    z = random_ideal_element(F4, rng)
    out = divide_by_p(z, 1)
    assert out.precision == 0 and out.is_zero()


@pytest.mark.parametrize("ctx", [finite_field(4), finite_field(9), finite_field(5),
                                 perfect_closure(2, "t"), perfect_closure(3, "t")],
                         ids=lambda c: c.spec)
def test_divide_by_p_routes_agree(ctx, rng):
    """Coefficient division and the delta fixed-point iteration give the same class."""
    top = 3 if isinstance(ctx, PerfectClosure) and ctx.p > 2 else 4
    for n in range(2, top + 1):
        for _ in range(4):
            z = random_ideal_element(ctx, rng)
            assert divide_by_p(z, n) == _divide_by_p(z, n)


def test_divide_by_p_rejects_non_ideal(F4):
    with pytest.raises(NotDivisibleError):
        divide_by_p(bracket(F4.one), 3)


@pytest.mark.parametrize("ctx", [finite_field(4), finite_field(9), finite_field(8),
                                 perfect_closure(2, "t"), perfect_closure(3, "t")],
                         ids=lambda c: c.spec)
def test_divide_by_p_inverts_multiplication(ctx, rng):
    for n in (2, 3):
        for _ in range(5):
            z = random_ideal_element(ctx, rng) + random_ideal_element(ctx, rng)
            a = divide_by_p(z, n)
            assert reduce(a.lift() * ctx.p - z, n).is_zero()


# -- arithmetic -----------------------------------------------------------------

def test_z_mod_4(F2):
    three = reduce(MonoidAlgebraElement.integer(F2, 3), 2)
    assert three * three == reduce(MonoidAlgebraElement.integer(F2, 1), 2)


def test_additive_identities(F4, rng):
    x = random_truncated(F4, 2, rng)
    assert x + TruncatedElement.zero(F4, 2) == x
    g = F4.generator()
    y = reduce(bracket(F4.one) + bracket(g), 2)
    assert y + y == y * 2


def test_precision_mismatch(F4):
    with pytest.raises(ValueError):
        TruncatedElement.one(F4, 2) + TruncatedElement.one(F4, 3)
    with pytest.raises(ValueError):
        TruncatedElement.one(F4, 2) * TruncatedElement.one(finite_field(8), 2)


def test_lowering_is_canonical_surjection(F9, rng):
    for _ in range(10):
        x, y = random_zr(F9, rng), random_zr(F9, rng)
        assert reduce(x, 3).lower(2) == reduce(x, 2)
        assert (reduce(x, 3) * reduce(y, 3)).lower(1) == reduce(x, 1) * reduce(y, 1)


def test_precision_zero_ring(F4, rng):
    z = reduce(random_zr(F4, rng), 0)
    assert z.is_zero()
    assert z * z == z and z + z == z
    assert invert(z) == z
    assert teichmuller_expand(z) == []
    assert from_digits([], F4) == z


@pytest.mark.parametrize("ctx", [finite_field(4), finite_field(9)], ids=lambda c: c.spec)
@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2 ** 32), n=st.integers(1, 3))
def test_ring_axioms(ctx, seed, n):
    rng = random.Random(seed)
    x, y, z = (random_truncated(ctx, n, rng) for _ in range(3))
    one = TruncatedElement.one(ctx, n)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * one == x
    assert x - x == TruncatedElement.zero(ctx, n)


# -- Teichmuller digits -----------------------------------------------------------

def test_teichmuller_expand_examples(F4, F9):
    p_times_one = reduce(MonoidAlgebraElement.integer(F4, 2), 3)
    assert teichmuller_expand(p_times_one) == [F4.zero, F4.one, F4.zero]
    g = F4.generator()
    digits = teichmuller_expand(reduce(bracket(F4.one) + bracket(g), 2))
    assert digits == [g + 1, g + 1]
    for r in F9.elements():
        assert teichmuller_expand(reduce(bracket(r), 3)) == [r, F9.zero, F9.zero]


def test_from_digits_examples(F4):
    g = F4.generator()
    z = F4.zero
    assert from_digits([g, z, z]) == reduce(bracket(g), 3)
    assert from_digits([z, F4.one, z]) == reduce(MonoidAlgebraElement.integer(F4, 2), 3)


def test_round_trip_exhaustive_f2():
    ctx = finite_field(2)
    for n in range(1, 5):
        for c in range(2 ** n):
            x = TruncatedElement(ctx, n, {0: c})
            assert from_digits(teichmuller_expand(x)) == x


@pytest.mark.parametrize("ctx", [finite_field(9), perfect_closure(2, "t")], ids=lambda c: c.spec)
def test_round_trip_sampled(ctx, rng):
    for _ in range(10):
        x = reduce(random_zr(ctx, rng), 3)
        assert from_digits(teichmuller_expand(x)) == x


def test_digits_are_unique_f4():
    ctx = finite_field(4)
    elems = list(ctx.elements())
    seen = set()
    for digits in itertools.product(elems, repeat=2):
        seen.add(from_digits(digits))
    assert len(seen) == 16


# -- Frobenius and Verschiebung -------------------------------------------------

def test_frobenius_on_teichmuller(F9):
    for r in F9.elements():
        assert frobenius(teichmuller(r, 3)) == teichmuller(r ** 3, 3)


def test_verschiebung_of_one(F4):
    for n in range(1, 4):
        assert verschiebung(TruncatedElement.one(F4, n)) == reduce(
            MonoidAlgebraElement.integer(F4, 2), n)


@pytest.mark.parametrize("ctx", [finite_field(4), finite_field(9), perfect_closure(2, "t")],
                         ids=lambda c: c.spec)
def test_frobenius_verschiebung_relations(ctx, rng):
    for _ in range(6):
        x, y = reduce(random_zr(ctx, rng), 3), reduce(random_zr(ctx, rng), 3)
        px = x * ctx.p
        assert frobenius(verschiebung(x)) == px
        assert verschiebung(frobenius(x)) == px
        assert frobenius_inv(frobenius(x)) == x
        assert frobenius(x * y) == frobenius(x) * frobenius(y)
        assert verschiebung(x + y) == verschiebung(x) + verschiebung(y)


def test_image_of_v_is_p_multiples(F4):
    # Im V^i = p^i (ZR/I^n): V^2 of a unit has valuation exactly 2
    x = reduce(bracket(F4.generator()) + 4, 3)
    assert valuation(verschiebung(verschiebung(x))) == 2


# -- inversion and valuation ----------------------------------------------------

def test_invert_examples(F4):
    g = F4.generator()
    assert invert(reduce(bracket(g), 2)) == reduce(bracket(g * g), 2)
    assert reduce(bracket(g) * bracket(g * g), 2) == TruncatedElement.one(F4, 2)
    x = reduce(bracket(g) * 2 + 1, 2)
    assert invert(x) == reduce(1 - bracket(g) * 2, 2)
    with pytest.raises(NotInvertibleError):
        invert(reduce(MonoidAlgebraElement.integer(F4, 2), 3))


def test_invert_perfect_closure(P2):
    t = P2.generator("t")
    x = reduce(bracket(1 + t) - bracket(t) + 2 * bracket(t), 3)   # residue 1
    assert x * invert(x) == TruncatedElement.one(P2, 3)
    with pytest.raises(NotInvertibleError):
        invert(reduce(bracket(t), 2))


def test_valuation_examples(F4, F2):
    g = F4.generator()
    for n in range(1, 4):
        assert valuation(reduce(bracket(g), n)) == 0
        assert valuation(TruncatedElement.zero(F4, n)) is None
    assert valuation(reduce(bracket(F4.one) * 4 + bracket(g) * 2, 3)) == 1
    assert valuation(reduce(MonoidAlgebraElement.integer(F2, 4), 3)) == 2
    with pytest.raises(ValueError):
        valuation(reduce(bracket(perfect_closure(2, "t").one), 2))


def test_valuation_matches_basis_coefficients(F9, rng):
    for _ in range(30):
        x = random_truncated(F9, 3, rng) * 3 ** rng.randint(0, 3)
        assert valuation(x) == basis_valuation(x)


# -- induced maps ---------------------------------------------------------------

def test_induced_map_examples(F2, F4):
    inc = RingHom(F2, F4)
    three = reduce(MonoidAlgebraElement.integer(F2, 3), 2)
    assert induced_map(inc, three) == reduce(MonoidAlgebraElement.integer(F4, 3), 2)
    ident = RingHom.identity(F4)
    for digits in itertools.product(list(F4.elements()), repeat=2):
        x = from_digits(digits)
        assert induced_map(ident, x) == x


def test_induced_map_injective_f2_to_f4(F2, F4):
    inc = RingHom(F2, F4)
    images = {induced_map(inc, TruncatedElement(F2, 4, {0: c})) for c in range(16)}
    assert len(images) == 16


def test_induced_map_is_ring_hom():
    hom = find_embedding(finite_field(4), finite_field(16))
    rng = random.Random(8)
    for _ in range(6):
        x, y = random_truncated(hom.source, 2, rng), random_truncated(hom.source, 2, rng)
        assert induced_map(hom, x * y) == induced_map(hom, x) * induced_map(hom, y)
        assert induced_map(hom, x + y) == induced_map(hom, x) + induced_map(hom, y)


def test_induced_map_surjective_perfect_closure():
    # t -> u^2, u is hit by t^(1/2): every basis element of the target lies in the image
    src, tgt = perfect_closure(2, "t"), perfect_closure(2, "u")
    hom = RingHom(src, tgt, (tgt.generator("u") ** 2,))
    x = reduce(bracket(src.monomial([Fraction(1, 2)])) * 3, 2)
    assert induced_map(hom, x) == reduce(bracket(tgt.generator("u")) * 3, 2)


# -- structural invariants ------------------------------------------------------

def test_strictness(F4, rng):
    for _ in range(40):
        x = random_truncated(F4, 3, rng)
        px = x * 2
        if px.is_zero():
            assert x.lower(2).is_zero()
        assert divide_by_p(px.lift(), 3) == x.lower(2)


@pytest.mark.parametrize("ctx", [finite_field(4), finite_field(3)], ids=lambda c: c.spec)
def test_ideal_power_decomposition(ctx, rng):
    """x in I^n splits as y + p^n w with y in I^(n+1)."""
    p = ctx.p
    for n in (1, 2):
        for _ in range(5):
            x = random_ideal_power_element(ctx, n, rng)
            canon = reduce(x, n + 1)
            assert all(c % p ** n == 0 for c in canon.coeffs.values())
            w = MonoidAlgebraElement(
                ctx, {ctx.basis_element(k): c // p ** n for k, c in canon.coeffs.items()})
            y = x - w * p ** n
            assert reduce(y, n + 1).is_zero()


def test_graded_pieces(F4):
    elems = list(F4.elements())
    for n in range(3):
        pn = 2 ** n
        for r in elems:
            for s in elems:
                assert reduce((bracket(r) + bracket(s) - bracket(r + s)) * pn, n + 1).is_zero()
        assert len({reduce(bracket(r) * pn, n + 1) for r in elems}) == 4


@pytest.mark.parametrize("q", [4, 8, 9])
def test_teichmuller_limit(q):
    ctx = finite_field(q)
    for n in (1, 2, 3):
        for r in ctx.elements():
            root = r
            for _ in range(n - 1):
                root = root.pth_root()
            lift = MonoidAlgebraElement(
                ctx, {ctx.basis_element(k): c for k, c in ctx.basis_decompose(root).items()})
            assert reduce(lift ** (ctx.p ** (n - 1)), n) == reduce(bracket(r), n)


def test_monomial_fast_path(rng):
    ctx = perfect_closure(2, "t", "u")
    for _ in range(15):
        terms = {ctx.basis_element(ctx.random_monomial(rng)): rng.randint(-20, 20)
                 for _ in range(3)}
        x = MonoidAlgebraElement(ctx, terms)
        y = MonoidAlgebraElement(ctx, {ctx.basis_element(ctx.random_monomial(rng)): 3})
        for n in (1, 2, 3):
            expected = {r.data[0][0]: c % 2 ** n for r, c in x.terms.items() if c % 2 ** n}
            assert reduce(x, n).coeffs == expected
            prod = {(r * s).data[0][0]: (a * b) % 2 ** n
                    for r, a in x.terms.items() for s, b in y.terms.items() if (a * b) % 2 ** n}
            assert (reduce(x, n) * reduce(y, n)).coeffs == prod


def test_dvr_laws(F4, rng):
    n = 4
    for _ in range(40):
        x = random_truncated(F4, n, rng) * 2 ** rng.randint(0, 2)
        y = random_truncated(F4, n, rng) * 2 ** rng.randint(0, 1)
        vx, vy = valuation(x), valuation(y)
        if vx is None or vy is None or vx + vy >= n:
            continue
        assert valuation(x * y) == vx + vy
        vs = valuation(x + y)
        assert vs is None or vs >= min(vx, vy)

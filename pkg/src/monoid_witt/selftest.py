"""Exhaustive checks on small rings, run by ``monoid-witt selftest``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .idempotent import (
    compute_idempotent, explicit_e_prime_field, format_group_ring, splitting_check)
from .monoid_algebra import MonoidAlgebraElement, bracket
from .perfect import finite_field
from .truncated import TruncatedElement, from_digits, reduce, teichmuller_expand
from .witt import (
    IntPolynomial, WittRing, alpha2, alpha_n, alpha_n_inverse, ghost_polynomial,
    witt_structure_polys)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    finding: bool = False

    def line(self):
        tag = "NOTE" if self.finding else ("PASS" if self.passed else "FAIL")
        return f"{tag} {self.name}" + (f": {self.detail}" if self.detail else "")


def w2_reference(p):
    """The W_2 sum and product polynomials written out by hand."""
    X0, X1, Y0, Y1 = (IntPolynomial.var(4, i) for i in range(4))
    s1 = X1 + Y1
    for k in range(1, p):
        s1 = s1 - X0 ** k * Y0 ** (p - k) * (comb(p, k) // p)
    p1 = Y0 ** p * X1 + Y1 * X0 ** p + X1 * Y1 * p
    return s1, p1


def check_w2_formulas(primes=(2, 3, 5)):
    for p in primes:
        wc = witt_structure_polys(p, 2)
        s1, p1 = w2_reference(p)
        if wc.sum_polys[1] != s1 or wc.prod_polys[1] != p1:
            return CheckResult("w2-formulas", False, f"mismatch at p={p}")
    return CheckResult("w2-formulas", True, f"p in {list(primes)}")


def ghost_identities_hold(p, n):
    wc = witt_structure_polys(p, n)
    nv = 2 * n
    for m in range(n):
        wx = ghost_polynomial(p, m, 0, nv)
        wy = ghost_polynomial(p, m, n, nv)
        ws = IntPolynomial(nv)
        wp = IntPolynomial(nv)
        for i in range(m + 1):
            ws = ws + wc.sum_polys[i] ** (p ** (m - i)) * p ** i
            wp = wp + wc.prod_polys[i] ** (p ** (m - i)) * p ** i
        if ws != wx + wy or wp != wx * wy:
            return False
    return True


def check_ghost_identities():
    cases = [(p, n) for p in (2, 3) for n in (1, 2, 3)]
    bad = [c for c in cases if not ghost_identities_hold(*c)]
    return CheckResult("ghost-identities", not bad, f"failed {bad}" if bad else "p in {2,3}, n <= 3")


def all_truncated(ctx, n):
    """Every element of ZR/I^n for finite R."""
    keys = ctx.basis_keys()
    q = ctx.p ** n
    for cs in itertools.product(range(q), repeat=len(keys)):
        yield TruncatedElement(ctx, n, dict(zip(keys, cs)))


def check_alpha_isomorphism_f2():
    ctx = finite_field(2)
    n = 3
    ring = WittRing(ctx, n)
    elems = list(all_truncated(ctx, n))
    images = {x: alpha_n(x, ring) for x in elems}
    if len(set(images.values())) != len(elems):
        return CheckResult("alpha-iso-F2-n3", False, "not injective")
    for x, y in itertools.product(elems, repeat=2):
        if images[x + y] != images[x] + images[y] or images[x * y] != images[x] * images[y]:
            return CheckResult("alpha-iso-F2-n3", False, f"fails at {x}, {y}")
    for u in images.values():
        if images[alpha_n_inverse(u)] != u:
            return CheckResult("alpha-iso-F2-n3", False, f"inverse fails at {u}")
    return CheckResult("alpha-iso-F2-n3", True, f"{len(elems)} elements, {len(elems) ** 2} pairs")


def check_alpha2_agreement():
    for ctx in (finite_field(2), finite_field(4)):
        for x in all_truncated(ctx, 2):
            if alpha2(x) != alpha_n(x):
                return CheckResult("alpha2-vs-alphan", False, f"{ctx.spec}: {x}")
    return CheckResult("alpha2-vs-alphan", True, "all of ZF2/I^2 and ZF4/I^2")


def check_teichmuller_round_trip():
    ctx = finite_field(2)
    elems = list(all_truncated(ctx, 4))
    bad = [x for x in elems if from_digits(teichmuller_expand(x)) != x]
    return CheckResult("teichmuller-round-trip-F2-n4", not bad, f"{len(elems)} elements")


def check_graded_additivity():
    ctx = finite_field(4)
    elems = list(ctx.elements())
    for n in (0, 1, 2):
        pn = ctx.p ** n
        images = set()
        for r in elems:
            images.add(reduce(bracket(r) * pn, n + 1))
            for s in elems:
                if reduce((bracket(r) + bracket(s) - bracket(r + s)) * pn, n + 1):
                    return CheckResult("graded-additivity-F4", False, f"n={n}, r={r}, s={s}")
        if len(images) != len(elems):
            return CheckResult("graded-additivity-F4", False, f"not injective at n={n}")
    return CheckResult("graded-additivity-F4", True, "n <= 2")


def check_strictness_f4():
    ctx = finite_field(4)
    for x in all_truncated(ctx, 2):
        px = reduce(x.lift() * ctx.p, 3)
        if px.lower(2) != reduce(x.lift() * ctx.p, 2):
            return CheckResult("strictness-F4", False, str(x))
        if not px and x:
            return CheckResult("strictness-F4", False, f"p*{x} vanished")
    return CheckResult("strictness-F4", True, "p-multiplication ZF4/I^2 -> ZF4/I^3 injective")


def check_idempotents():
    golden = {(2, 2): "[0] (mod 4)", (3, 2): "5*[1] + 5*[2] (mod 9)"}
    for q in (2, 3, 4):
        ctx = finite_field(q)
        for n in (1, 2, 3):
            e = compute_idempotent(ctx, n)
            report = splitting_check(e, n)
            if not report.ok:
                return CheckResult("idempotent-splitting", False, f"{ctx.spec}, n={n}")
            want = golden.get((q, n))
            if want and report.idempotent != want:
                return CheckResult("idempotent-splitting", False,
                                   f"{ctx.spec}: {report.idempotent} != {want}")
    return CheckResult("idempotent-splitting", True, "F2, F3, F4 with n <= 3")


def check_explicit_formula():
    for p in (3, 5):
        ctx = finite_field(p)
        for n in (1, 2, 3):
            if explicit_e_prime_field(p, n, ctx) != compute_idempotent(ctx, n):
                return CheckResult("explicit-idempotent", False, f"p={p}, n={n}")
    return CheckResult("explicit-idempotent", True, "p in {3,5}, n <= 3")


def finding_p2_formula():
    ctx = finite_field(2)
    computed = format_group_ring(compute_idempotent(ctx, 3), 8)
    # the formula at p = 2: 1 - e = omega(1)^-1 [1] = [1], i.e. e = 0
    formula = format_group_ring(MonoidAlgebraElement(ctx), 8)
    return CheckResult(
        "p2-explicit-formula", True,
        f"formula gives e = {formula}, kernel unit is e = {computed}; formula used for odd p only",
        finding=True)


CHECKS = [
    check_w2_formulas,
    check_ghost_identities,
    check_alpha_isomorphism_f2,
    check_alpha2_agreement,
    check_teichmuller_round_trip,
    check_graded_additivity,
    check_strictness_f4,
    check_idempotents,
    check_explicit_formula,
    finding_p2_formula,
]


def run_selftest():
    return [check() for check in CHECKS]

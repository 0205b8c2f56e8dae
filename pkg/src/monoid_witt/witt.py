"""Classical truncated p-typical Witt vectors W_n(R), used as an oracle.

Addition, multiplication and negation come from the universal structure
polynomials, generated from the ghost components
w_m = sum_{i<=m} p^i X_i^(p^(m-i)) by solving for the top variable.
The maps ``alpha2`` and ``alpha_n`` compare ZR/I^n against W_n(R).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .monoid_algebra import bracket
from .truncated import TruncatedElement, from_digits, reduce

MAX_LENGTH = 4
MAX_PRIME = 5


class IntPolynomial:
    """Sparse multivariate polynomial over Z: {exponent tuple: coefficient}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(self.nvars, other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntPolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = IntPolynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, d):
        out = {}
        for e, c in self.terms.items():
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {d}")
            out[e] = q
        return IntPolynomial(self.nvars, out)

    def mod(self, m):
        return IntPolynomial(self.nvars, {e: c % m for e, c in self.terms.items()})

    def sorted_terms(self):
        """Monomials as (exponents, coefficient), graded then lexicographic."""
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]))

    def format(self, names):
        out = []
        for e, c in sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), ec[0])):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out).replace("+ -", "- ") or "0"

    def evaluate(self, values, one):
        """Evaluate at ring elements; integer coefficients act by repeated addition."""
        powers = [{0: one, 1: v} for v in values]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = values[i] ** k
            return cache[k]

        acc = one * 0
        for e, c in self.terms.items():
            term = one * c
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc


def ghost_polynomial(p, m, offset, nvars):
    """w_m in the variables offset .. offset+m."""
    acc = IntPolynomial(nvars)
    for i in range(m + 1):
        acc = acc + IntPolynomial.var(nvars, offset + i) ** (p ** (m - i)) * p ** i
    return acc


def _solve_top(p, m, target, lower, nvars):
    """Polynomial Q_m with w_m(Q_0..Q_m) = target, given Q_0..Q_{m-1}."""
    rest = target
    for i, q in enumerate(lower):
        rest = rest - q ** (p ** (m - i)) * p ** i
    return rest.exact_div(p ** m)


@dataclass(frozen=True)
class WittContext:
    """Structure polynomials for W_n over Z.

    ``sum_polys`` and ``prod_polys`` are in X_0..X_{n-1}, Y_0..Y_{n-1};
    ``neg_polys`` in X_0..X_{n-1}.
    """

    p: int
    n: int
    sum_polys: tuple
    prod_polys: tuple
    neg_polys: tuple

    @property
    def variable_names(self):
        return [f"X{i}" for i in range(self.n)] + [f"Y{i}" for i in range(self.n)]

    def export(self):
        """Structure polynomials as sorted monomial lists over Z."""
        def dump(polys):
            return [[[list(e), c] for e, c in q.sorted_terms()] for q in polys]
        return {"p": self.p, "n": self.n, "sum": dump(self.sum_polys),
                "product": dump(self.prod_polys), "negation": dump(self.neg_polys)}


@lru_cache(maxsize=None)
def witt_structure_polys(p: int, n: int) -> WittContext:
    if n < 1 or n > MAX_LENGTH or p > MAX_PRIME:
        raise ValueError(f"Witt structure polynomials supported for n <= {MAX_LENGTH}, "
                         f"p <= {MAX_PRIME}")
    nv = 2 * n
    sums, prods, negs = [], [], []
    for m in range(n):
        wx = ghost_polynomial(p, m, 0, nv)
        wy = ghost_polynomial(p, m, n, nv)
        sums.append(_solve_top(p, m, wx + wy, sums, nv))
        prods.append(_solve_top(p, m, wx * wy, prods, nv))
        if p == 2:
            negs.append(_solve_top(p, m, -ghost_polynomial(p, m, 0, n), negs, n))
        else:
            negs.append(-IntPolynomial.var(n, m))
    return WittContext(p, n, tuple(sums), tuple(prods), tuple(negs))


@lru_cache(maxsize=None)
def _reduced_polys(p, n):
    wc = witt_structure_polys(p, n)
    return (tuple(q.mod(p) for q in wc.sum_polys),
            tuple(q.mod(p) for q in wc.prod_polys),
            tuple(q.mod(p) for q in wc.neg_polys))


class WittRing:
    """W_n(R) for a perfect algebra context R."""

    def __init__(self, ctx, n: int):
        self.ctx = ctx
        self.n = n
        self.structure = witt_structure_polys(ctx.p, n)
        self._sum, self._prod, self._neg = _reduced_polys(ctx.p, n)

    def __eq__(self, other):
        return isinstance(other, WittRing) and self.ctx == other.ctx and self.n == other.n

    def __hash__(self):
        return hash((self.ctx, self.n))

    def __call__(self, coords):
        coords = tuple(coords)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        return WittVector(self, coords)

    @property
    def zero(self):
        return self((self.ctx.zero,) * self.n)

    @property
    def one(self):
        return self.teichmuller(self.ctx.one)

    def teichmuller(self, r):
        return self((r,) + (self.ctx.zero,) * (self.n - 1))

    def _eval(self, polys, values):
        one = self.ctx.one
        return self(q.evaluate(values, one) for q in polys)

    def add(self, u, v):
        return self._eval(self._sum, u.coords + v.coords)

    def mul(self, u, v):
        return self._eval(self._prod, u.coords + v.coords)

    def neg(self, u):
        return self._eval(self._neg, u.coords)

    def scalar(self, k: int, u):
        """k * u by double-and-add."""
        if k < 0:
            return self.scalar(-k, self.neg(u))
        acc = self.zero
        base = u
        while k:
            if k & 1:
                acc = self.add(acc, base)
            k >>= 1
            if k:
                base = self.add(base, base)
        return acc


@dataclass(frozen=True)
class WittVector:
    ring: WittRing
    coords: tuple

    def _check(self, other):
        if not isinstance(other, WittVector) or other.ring != self.ring:
            raise ValueError("Witt vectors of different rings or lengths")

    def __add__(self, other):
        self._check(other)
        return self.ring.add(self, other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.ring.scalar(other, self)
        self._check(other)
        return self.ring.mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.ring.neg(self)

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def alpha2(x: TruncatedElement) -> WittVector:
    """(pi, delta-bar) on a lift of x: the explicit isomorphism ZR/I^2 -> W_2(R)."""
    if x.precision != 2:
        raise ValueError(f"alpha2 needs precision 2, got {x.precision}")
    lift = x.lift()
    return WittRing(x.ctx, 2)((lift.augmentation(), lift.delta().augmentation()))


def alpha_n(x: TruncatedElement, ring: WittRing | None = None) -> WittVector:
    """The ring isomorphism ZR/I^n -> W_n(R) extending r -> (r, 0, ..., 0)."""
    ring = ring or WittRing(x.ctx, x.precision)
    if ring.n != x.precision or ring.ctx != x.ctx:
        raise ValueError("Witt ring does not match the element's algebra/precision")
    acc = ring.zero
    for k, c in x.sorted_items():
        acc = acc + ring.scalar(c, ring.teichmuller(x.ctx.basis_element(k)))
    return acc


def alpha_n_inverse(u: WittVector) -> TruncatedElement:
    """sum p^i [x_i^(p^-i)] modulo I^n."""
    digits = []
    for i, c in enumerate(u.coords):
        for _ in range(i):
            c = c.pth_root()
        digits.append(c)
    return from_digits(digits, u.ring.ctx)


def teichmuller_frobenius_check(r, n: int) -> bool:
    """alpha_n(F([r])) equals alpha_n([r]) with coordinates raised to the p-th power."""
    x = reduce(bracket(r), n)
    image = alpha_n(reduce(bracket(r).frobenius(), n))
    expected = WittRing(r.ctx, n)(c ** r.ctx.p for c in alpha_n(x).coords)
    return image == expected

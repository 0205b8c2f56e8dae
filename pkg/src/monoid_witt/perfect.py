"""Concrete perfect F_p-algebras.

Two kinds are supported:

* ``FiniteField`` -- F_q given by a monic irreducible modulus over F_p, with
  the power basis {1, g, ..., g^(k-1)}.
* ``PerfectClosure`` -- F_p[t_1^(p^-inf), ..., t_d^(p^-inf)], whose basis is
  the (multiplicatively closed) set of monomials with p-power denominators.

Elements are immutable ``PerfectElement`` values; all arithmetic is delegated
to the owning context so the two kinds share one element type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import HomomorphismError, NotInvertibleError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                break
            return p, k
    raise ValueError(f"{q} is not a prime power")


# -- polynomials over F_p as coefficient tuples, low degree first -----------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _poly_trim(a)
    return a


def _is_irreducible(modulus, p):
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_rem(modulus, low + (1,), p):
                return False
    return True


@lru_cache(maxsize=1 << 16)
def _ff_mul(p, modulus, a, b):
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    # reduce using x^k = -(m_0 + ... + m_{k-1} x^{k-1})
    for deg in range(2 * k - 2, k - 1, -1):
        c = prod[deg] % p
        if c:
            for i in range(k):
                prod[deg - k + i] -= c * modulus[i]
        prod[deg] = 0
    return tuple(c % p for c in prod[:k])


# -- exponents for perfect closures ------------------------------------------
# An exponent is a pair (num, e) meaning num / p**e, normalized so that
# p does not divide num unless e == 0.

def _norm_exp(num, e, p):
    if num == 0:
        return (0, 0)
    while e > 0 and num % p == 0:
        num //= p
        e -= 1
    return (num, e)


@lru_cache(maxsize=1 << 16)
def _add_exp(a, b, p):
    if not a[0]:
        return b
    if not b[0]:
        return a
    if a[1] == b[1] == 0:
        return (a[0] + b[0], 0)
    e = max(a[1], b[1])
    return _norm_exp(a[0] * p ** (e - a[1]) + b[0] * p ** (e - b[1]), e, p)


@lru_cache(maxsize=1 << 18)
def _monomial_mul(m1, m2, p):
    return tuple(_add_exp(a, b, p) for a, b in zip(m1, m2))


def _exp_fraction(a, p):
    return Fraction(a[0], p ** a[1])


class PerfectElement:
    """An immutable element of a perfect F_p-algebra."""

    __slots__ = ("ctx", "data", "_hash")

    def __init__(self, ctx, data):
        self.ctx = ctx
        self.data = data
        self._hash = hash(data)

    def _coerce(self, other):
        if isinstance(other, PerfectElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("elements belong to different algebras")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, PerfectElement):
            return NotImplemented
        return self.data == other.data and (self.ctx is other.ctx or self.ctx == other.ctx)

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PerfectElement(self.ctx, self.ctx._add(self.data, other.data))

    __radd__ = __add__

    def __neg__(self):
        return PerfectElement(self.ctx, self.ctx._neg(self.data))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PerfectElement(self.ctx, self.ctx._mul(self.data, other.data))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.ctx.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __bool__(self):
        return not self.ctx._is_zero(self.data)

    def inverse(self):
        return self.ctx.inverse(self)

    def pth_root(self):
        return self.ctx.pth_root(self)

    def frobenius(self):
        return self ** self.ctx.p

    def __str__(self):
        return self.ctx.format(self)

    def __repr__(self):
        return f"PerfectElement({self.ctx.spec}, {self})"


class AlgebraContext:
    """Behaviour shared by the concrete perfect algebras."""

    p: int
    is_field = False
    is_finite = False

    @cached_property
    def zero(self):
        return PerfectElement(self, self._zero_data())

    @cached_property
    def one(self):
        return self.from_int(1)

    def basis_decompose(self, a: PerfectElement) -> dict:
        """Return {basis key: scalar in [1, p)} with sum scalar*b == a."""
        raise NotImplementedError

    def from_decomposition(self, coeffs: dict) -> PerfectElement:
        acc = self.zero
        for key, c in coeffs.items():
            acc = acc + c * self.basis_element(key)
        return acc

    def basis_sort(self, keys):
        return sorted(keys, key=self.basis_sort_key)


@dataclass(frozen=True, eq=True)
class FiniteField(AlgebraContext):
    """F_q = F_p[g]/(modulus); ``modulus`` is low-degree-first and monic."""

    p: int
    modulus: tuple

    is_field = True
    is_finite = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        m = tuple(c % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", m)
        if len(m) < 2 or m[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        if not _is_irreducible(m, self.p):
            raise ValueError(f"modulus {_format_poly(m, 'x')} is reducible over F_{self.p}")

    @property
    def degree(self):
        return len(self.modulus) - 1

    @property
    def order(self):
        return self.p ** self.degree

    @property
    def generator_names(self):
        return ("g",) if self.degree > 1 else ()

    @property
    def spec(self):
        if self.degree == 1:
            return f"gf({self.p})"
        return f"gf({self.order},{_format_poly(self.modulus, 'x')})"

    def __str__(self):
        return self.spec

    # raw data operations
    def _zero_data(self):
        return (0,) * self.degree

    def _is_zero(self, a):
        return not any(a)

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _mul(self, a, b):
        if self.degree == 1:
            return (a[0] * b[0] % self.p,)
        return _ff_mul(self.p, self.modulus, a, b)

    def from_int(self, n):
        return PerfectElement(self, (n % self.p,) + (0,) * (self.degree - 1))

    def element(self, coeffs):
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) > self.degree:
            raise ValueError("too many coefficients")
        return PerfectElement(self, coeffs + (0,) * (self.degree - len(coeffs)))

    def generator(self, name="g"):
        if name not in self.generator_names:
            raise KeyError(name)
        return self.basis_element(1)

    def inverse(self, a):
        if not a:
            raise NotInvertibleError("0 has no inverse")
        return a ** (self.order - 2)

    def pth_root(self, a):
        return a ** (self.p ** (self.degree - 1))

    def elements(self):
        """All field elements, ordered by the integer sum c_i p^i."""
        for digits in itertools.product(range(self.p), repeat=self.degree):
            yield PerfectElement(self, tuple(reversed(digits)))

    def random_element(self, rng):
        return PerfectElement(self, tuple(rng.randrange(self.p) for _ in range(self.degree)))

    def element_sort_key(self, a):
        return sum(c * self.p ** i for i, c in enumerate(a.data))

    # basis
    def basis_keys(self):
        return list(range(self.degree))

    def basis_element(self, i):
        data = [0] * self.degree
        data[i] = 1
        return PerfectElement(self, tuple(data))

    def basis_decompose(self, a):
        return {i: c for i, c in enumerate(a.data) if c}

    def basis_sort_key(self, key):
        return key

    def basis_label(self, key):
        return _monomial_label("g", key)

    def format(self, a):
        if self.degree == 1:
            return str(a.data[0])
        return _format_poly(a.data, "g")


@dataclass(frozen=True, eq=True)
class PerfectClosure(AlgebraContext):
    """F_p[t_1^(p^-inf), ..., t_d^(p^-inf)].

    Element data is a tuple of (monomial, scalar) pairs sorted by monomial;
    a monomial is a tuple of normalized exponents (num, e) = num/p^e, one per
    variable.
    """

    p: int
    names: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if not self.names or len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be non-empty and distinct")
        for name in self.names:
            if not name.isidentifier():
                raise ValueError(f"bad variable name {name!r}")

    @property
    def generator_names(self):
        return tuple(self.names)

    @property
    def spec(self):
        return f"perfect({self.p};{','.join(self.names)})"

    def __str__(self):
        return self.spec

    @cached_property
    def _unit_monomial(self):
        return ((0, 0),) * len(self.names)

    def _zero_data(self):
        return ()

    def _is_zero(self, a):
        return not a

    def _add(self, a, b):
        acc = dict(a)
        for m, c in b:
            acc[m] = (acc.get(m, 0) + c) % self.p
        return tuple(sorted((m, c) for m, c in acc.items() if c))

    def _neg(self, a):
        return tuple((m, -c % self.p) for m, c in a)

    def monomial_mul(self, m1, m2):
        return _monomial_mul(m1, m2, self.p)

    def _mul(self, a, b):
        p = self.p
        acc = {}
        for m1, c1 in a:
            for m2, c2 in b:
                m = self.monomial_mul(m1, m2)
                acc[m] = (acc.get(m, 0) + c1 * c2) % p
        return tuple(sorted((m, c) for m, c in acc.items() if c))

    def from_int(self, n):
        n %= self.p
        return PerfectElement(self, ((self._unit_monomial, n),) if n else ())

    def monomial(self, exponents) -> PerfectElement:
        """Monomial from per-variable exponents (ints or Fractions)."""
        return self.basis_element(self.monomial_key(exponents))

    def monomial_key(self, exponents):
        if len(exponents) != len(self.names):
            raise ValueError("wrong number of exponents")
        key = []
        for q in exponents:
            q = Fraction(q)
            if q < 0:
                raise ValueError("exponents must be nonnegative")
            den, e = q.denominator, 0
            while den % self.p == 0:
                den //= self.p
                e += 1
            if den != 1:
                raise ValueError(f"exponent {q} does not have a {self.p}-power denominator")
            key.append(_norm_exp(q.numerator, e, self.p))
        return tuple(key)

    def generator(self, name):
        i = self.names.index(name)
        exps = [0] * len(self.names)
        exps[i] = 1
        return self.monomial(exps)

    def inverse(self, a):
        if len(a.data) == 1 and a.data[0][0] == self._unit_monomial:
            return self.from_int(pow(a.data[0][1], -1, self.p))
        raise NotInvertibleError(f"{a} is not a unit")

    def _root_monomial(self, m):
        return tuple(_norm_exp(num, e + 1, self.p) for num, e in m)

    def pth_root(self, a):
        # scalars in F_p are their own p-th roots
        return PerfectElement(
            self, tuple(sorted((self._root_monomial(m), c) for m, c in a.data)))

    def frobenius_monomial(self, m):
        return tuple(_norm_exp(num * self.p, e, self.p) for num, e in m)

    def random_element(self, rng, terms=3, max_root=2, max_num=4):
        acc = self.zero
        for _ in range(rng.randint(1, terms)):
            exps = []
            for _ in self.names:
                e = rng.randint(0, max_root)
                exps.append(Fraction(rng.randint(0, max_num), self.p ** e))
            acc = acc + rng.randrange(1, self.p) * self.monomial(exps)
        return acc

    def random_monomial(self, rng, max_root=2, max_num=4):
        exps = [Fraction(rng.randint(0, max_num), self.p ** rng.randint(0, max_root))
                for _ in self.names]
        return self.monomial_key(exps)

    def element_sort_key(self, a):
        return tuple((self.basis_sort_key(m), c) for m, c in a.data)

    # basis: monomials
    def basis_element(self, key):
        return PerfectElement(self, ((key, 1),))

    def basis_decompose(self, a):
        return dict(a.data)

    def basis_sort_key(self, key):
        fr = tuple(_exp_fraction(e, self.p) for e in key)
        return (sum(fr), fr)

    def basis_label(self, key):
        parts = []
        for name, (num, e) in zip(self.names, key):
            if num == 0:
                continue
            if e == 0:
                parts.append(name if num == 1 else f"{name}^{num}")
            else:
                parts.append(f"{name}^({num}/{self.p ** e})")
        return "*".join(parts) or "1"

    def format(self, a):
        if not a.data:
            return "0"
        terms = sorted(a.data, key=lambda mc: self.basis_sort_key(mc[0]), reverse=True)
        out = []
        for m, c in terms:
            label = self.basis_label(m)
            if label == "1":
                out.append(str(c))
            else:
                out.append(label if c == 1 else f"{c}*{label}")
        return "+".join(out)


def _monomial_label(name, i):
    if i == 0:
        return "1"
    if i == 1:
        return name
    return f"{name}^{i}"


def _format_poly(coeffs, name):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        label = _monomial_label(name, i)
        if label == "1":
            terms.append(str(c))
        else:
            terms.append(label if c == 1 else f"{c}*{label}")
    return "+".join(terms) or "0"


# built-in moduli, low degree first
CONWAY_TABLE = {
    4: (1, 1, 1),          # x^2+x+1
    8: (1, 1, 0, 1),       # x^3+x+1
    9: (2, 2, 1),          # x^2-x-1
    16: (1, 1, 0, 0, 1),   # x^4+x+1
    25: (2, 4, 1),         # x^2+4x+2
    27: (1, 2, 0, 1),      # x^3-x+1
}


def finite_field(q: int, modulus=None) -> FiniteField:
    p, k = prime_power(q)
    if modulus is None:
        if k == 1:
            modulus = (0, 1)
        elif q in CONWAY_TABLE:
            modulus = CONWAY_TABLE[q]
        else:
            raise ValueError(f"no built-in modulus for F_{q}; supply one")
    if len(modulus) - 1 != k:
        raise ValueError(f"modulus degree {len(modulus) - 1} does not match q = {p}^{k}")
    return FiniteField(p, tuple(modulus))


def perfect_closure(p: int, *names: str) -> PerfectClosure:
    return PerfectClosure(p, tuple(names or ("t",)))


class RingHom:
    """An F_p-algebra homomorphism given by the images of generators.

    Finite field sources have one generator ``g`` (none for F_p); perfect
    closure sources have one image per variable.  The defining relation of a
    finite field source is checked on construction.
    """

    def __init__(self, source, target, images=()):
        if source.p != target.p:
            raise HomomorphismError("source and target have different characteristic")
        images = tuple(images)
        if len(images) != len(source.generator_names):
            raise HomomorphismError(
                f"expected {len(source.generator_names)} generator images, got {len(images)}")
        for h in images:
            if h.ctx != target:
                raise HomomorphismError(f"image {h} is not in the target algebra")
        if isinstance(source, FiniteField) and images:
            h = images[0]
            value = target.zero
            for i, c in enumerate(source.modulus):
                value = value + c * h ** i
            if value:
                raise HomomorphismError(
                    f"image {h} does not satisfy {_format_poly(source.modulus, 'g')} = 0")
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, ctx, tuple(ctx.generator(n) for n in ctx.generator_names))

    def __call__(self, a: PerfectElement) -> PerfectElement:
        if a.ctx != self.source:
            raise ValueError("element is not in the source algebra")
        tgt = self.target
        if isinstance(self.source, FiniteField):
            if not self.images:
                return tgt.from_int(a.data[0])
            h = self.images[0]
            acc = tgt.zero
            for i, c in enumerate(a.data):
                if c:
                    acc = acc + c * h ** i
            return acc
        acc = tgt.zero
        for m, c in a.data:
            term = tgt.from_int(c)
            for h, (num, e) in zip(self.images, m):
                if num:
                    root = h
                    for _ in range(e):
                        root = root.pth_root()
                    term = term * root ** num
            acc = acc + term
        return acc


def find_embedding(source: FiniteField, target: FiniteField) -> RingHom:
    """First homomorphism source -> target found by exhausting generator images."""
    if source.degree == 1:
        return RingHom(source, target)
    for h in target.elements():
        try:
            return RingHom(source, target, (h,))
        except HomomorphismError:
            continue
    raise HomomorphismError(f"no homomorphism {source.spec} -> {target.spec}")

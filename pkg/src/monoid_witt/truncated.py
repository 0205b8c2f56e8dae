"""Canonical computation in ZR / I^n.

Every class in ZR / I^n has a unique representative sum c_b [b] with b running
over the distinguished F_p-basis of R and 0 <= c_b < p^n.  These coordinates
are additive, so ``reduce`` sums cached forms of single brackets [r].  For [r]
it splits off the residue digits, divides the remainder (which lies in I) by p
and recurses at precision n - 1.

Division by p of z in I uses the arithmetic derivation: if p*a = z mod I^n then
delta(z) = F(a) - p^(p-1) a^p mod I^(n-1), so a is the fixed point of
a -> F^-1(delta(z) + p^(p-1) a^p), which gains p - 1 powers of I per step.
"""

from __future__ import annotations

from functools import lru_cache
from math import ceil

from .errors import NotDivisibleError, NotInvertibleError
from .linalg import vp
from .monoid_algebra import MonoidAlgebraElement, bracket


class TruncatedElement:
    """A class in ZR / I^n stored as basis coefficients in [0, p^n)."""

    __slots__ = ("ctx", "precision", "coeffs")

    def __init__(self, ctx, precision: int, coeffs=None):
        if precision < 0:
            raise ValueError("precision must be >= 0")
        m = ctx.p ** precision
        self.ctx = ctx
        self.precision = precision
        self.coeffs = {k: c % m for k, c in (coeffs or {}).items() if c % m}

    @property
    def modulus(self):
        return self.ctx.p ** self.precision

    @classmethod
    def zero(cls, ctx, n):
        return cls(ctx, n)

    @classmethod
    def one(cls, ctx, n):
        return cls(ctx, n, dict.fromkeys(ctx.basis_decompose(ctx.one), 1))

    def _check(self, other):
        if not isinstance(other, TruncatedElement):
            raise TypeError(f"cannot combine TruncatedElement with {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError("elements belong to different algebras")
        if other.precision != self.precision:
            raise ValueError(
                f"precision mismatch: {self.precision} vs {other.precision}")

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedElement):
            return NotImplemented
        return (self.precision == other.precision and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.precision, frozenset(self.coeffs.items())))

    # Addition is coefficientwise: sum c_b[b] + sum d_b[b] is already a
    # basis combination, whose canonical form is its coefficients mod p^n.
    def __add__(self, other):
        if isinstance(other, int):
            other = self.one(self.ctx, self.precision) * other
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return TruncatedElement(self.ctx, self.precision, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedElement(self.ctx, self.precision,
                                {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedElement(self.ctx, self.precision,
                                    {k: c * other for k, c in self.coeffs.items()})
        self._check(other)
        return reduce(self.lift() * other.lift(), self.precision)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return invert(self) ** (-exponent)
        result = self.one(self.ctx, self.precision)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def lift(self) -> MonoidAlgebraElement:
        """The representative sum c_b [b] in ZR."""
        ctx = self.ctx
        return MonoidAlgebraElement(
            ctx, {ctx.basis_element(k): c for k, c in self.coeffs.items()})

    def lower(self, m: int) -> TruncatedElement:
        """Image under the canonical surjection ZR/I^n -> ZR/I^m."""
        if m > self.precision:
            raise ValueError("cannot raise precision")
        return TruncatedElement(self.ctx, m, self.coeffs)

    def residue(self):
        return self.lift().augmentation()

    def sorted_items(self):
        return [(k, self.coeffs[k]) for k in self.ctx.basis_sort(self.coeffs)]

    def labelled_coeffs(self) -> dict:
        return {self.ctx.basis_label(k): c for k, c in self.sorted_items()}

    def __str__(self):
        terms = []
        for k, c in self.sorted_items():
            label = self.ctx.basis_label(k)
            terms.append(f"[{label}]" if c == 1 else f"{c}*[{label}]")
        return f"{' + '.join(terms) or '0'} (mod I^{self.precision})"

    def __repr__(self):
        return f"TruncatedElement({self.ctx.spec}, {self})"


def reduce(x: MonoidAlgebraElement, n: int) -> TruncatedElement:
    """Canonical form of x modulo I^n.

    The canonical coordinates are additive, so this sums cached forms of the
    individual brackets [r]; only those go through division by p.
    """
    ctx = x.ctx
    if n < 0:
        raise ValueError("precision must be >= 0")
    if n == 0:
        return TruncatedElement(ctx, 0)
    m = ctx.p ** n
    coeffs = {}
    for r, c in x.terms.items():
        c %= m  # p^n ZR lies in I^n
        if not c:
            continue
        for k, d in _bracket_coeffs(ctx, r, n):
            coeffs[k] = coeffs.get(k, 0) + c * d
    return TruncatedElement(ctx, n, coeffs)


@lru_cache(maxsize=1 << 16)
def _bracket_coeffs(ctx, r, n):
    """Canonical coefficients of [r] mod I^n, as a tuple of items."""
    p = ctx.p
    digits = ctx.basis_decompose(r)
    coeffs = dict(digits)
    z = bracket(r) - MonoidAlgebraElement(
        ctx, {ctx.basis_element(k): c for k, c in digits.items()})
    if z:
        for k, d in _divide_by_p(z, n).coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + p * d
    m = p ** n
    return tuple((k, c % m) for k, c in coeffs.items() if c % m)


def _divide_by_p(z: MonoidAlgebraElement, n: int) -> TruncatedElement:
    """Division by p through the Frobenius fixed point; meant for small z."""
    ctx = z.ctx
    p = ctx.p
    if n < 1:
        raise ValueError("division by p needs precision >= 1")
    if z.augmentation():
        raise NotDivisibleError(f"{z} is not in I, so not divisible by {p}")
    if n == 1 or not z:
        return TruncatedElement(ctx, n - 1)
    m = p ** (n - 1)
    d = z.mod_coefficients(p ** n).delta().mod_coefficients(m)
    base = reduce(d.frobenius_inv(), n - 1)
    if p - 1 >= n - 1:
        return base  # the p^(p-1) a^p term vanishes mod p^(n-1)
    a = base
    boost = p ** (p - 1)
    for _ in range(ceil((n - 1) / (p - 1)) + 1):
        power = a.lift().mod_coefficients(p ** (n - p)) ** p
        a = base + reduce((power * boost).frobenius_inv(), n - 1)
    return a


def divide_by_p(z: MonoidAlgebraElement, n: int) -> TruncatedElement:
    """The unique a in ZR/I^(n-1) with p * a = z mod I^n, for z in I.

    For z in I the canonical coefficients of z mod I^n are all divisible by p,
    and dividing them gives a.
    """
    p = z.ctx.p
    if n < 1:
        raise ValueError("division by p needs precision >= 1")
    if z.augmentation():
        raise NotDivisibleError(f"{z} is not in I, so not divisible by {p}")
    canon = reduce(z, n)
    if any(c % p for c in canon.coeffs.values()):
        raise AssertionError("canonical coefficients of an element of I not divisible by p")
    return TruncatedElement(z.ctx, n - 1, {k: c // p for k, c in canon.coeffs.items()})


def teichmuller(r, n: int) -> TruncatedElement:
    return reduce(bracket(r), n)


def teichmuller_expand(x: TruncatedElement) -> list:
    """Digits (r_0, ..., r_{n-1}) with x = sum p^i [r_i] mod I^n."""
    digits = []
    cur = x.lift()
    for i in range(x.precision):
        r = cur.augmentation()
        digits.append(r)
        if i == x.precision - 1:
            break
        cur = divide_by_p(cur - bracket(r), x.precision - i).lift()
    return digits


def from_digits(digits, ctx=None) -> TruncatedElement:
    """sum p^i [r_i] reduced modulo I^len(digits)."""
    digits = list(digits)
    if not digits:
        if ctx is None:
            raise ValueError("empty digit list needs an explicit context")
        return TruncatedElement(ctx, 0)
    ctx = digits[0].ctx
    p = ctx.p
    acc = MonoidAlgebraElement(ctx)
    for i, r in enumerate(digits):
        acc = acc + bracket(r) * p ** i
    return reduce(acc, len(digits))


def frobenius(x: TruncatedElement) -> TruncatedElement:
    return reduce(x.lift().frobenius(), x.precision)


def frobenius_inv(x: TruncatedElement) -> TruncatedElement:
    return reduce(x.lift().frobenius_inv(), x.precision)


def verschiebung(x: TruncatedElement) -> TruncatedElement:
    """V(x) = p * F^-1(x)."""
    return reduce(x.lift().frobenius_inv() * x.ctx.p, x.precision)


def invert(x: TruncatedElement) -> TruncatedElement:
    """Multiplicative inverse by Newton iteration y <- y(2 - xy)."""
    n = x.precision
    if n == 0:
        return x
    try:
        r_inv = x.residue().inverse()
    except NotInvertibleError as exc:
        raise NotInvertibleError(f"{x} has non-invertible residue: {exc}") from None
    y = teichmuller(r_inv, n)
    one = TruncatedElement.one(x.ctx, n)
    for _ in range(max(n - 1, 1).bit_length() + 1):
        y = y * (2 - x * y)
    if x * y != one:
        raise AssertionError("Newton inversion did not converge")
    return y


def valuation(x: TruncatedElement):
    """Index of the first nonzero Teichmuller digit, or None when x = 0.

    None means the valuation is >= the precision.  Only defined over fields.
    """
    if not x.ctx.is_field:
        raise ValueError(f"valuation needs a field, got {x.ctx.spec}")
    if x.is_zero():
        return None
    for i, r in enumerate(teichmuller_expand(x)):
        if r:
            return i
    raise AssertionError("nonzero element with all digits zero")


def basis_valuation(x: TruncatedElement):
    """min v_p(c_b) over the canonical coefficients (None for zero)."""
    if x.is_zero():
        return None
    return min(vp(c, x.ctx.p) for c in x.coeffs.values())


def induced_map(hom, x: TruncatedElement) -> TruncatedElement:
    """ZR_1/I^n -> ZR_2/I^n applying hom inside each bracket."""
    if x.ctx != hom.source:
        raise ValueError("element is not over the homomorphism's source")
    return reduce(x.lift().map(hom), x.precision)

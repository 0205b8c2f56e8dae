"""The monoid algebra ZR of the multiplicative monoid of R.

Elements are finite formal sums sum n_r [r] with exact integer
coefficients.  [1] is the identity and [0] is a nonzero element.
"""

from __future__ import annotations

from collections import defaultdict

from .perfect import PerfectElement


class MonoidAlgebraElement:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        self.terms = {r: c for r, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, {ctx.one: 1})

    @classmethod
    def integer(cls, ctx, n):
        return cls(ctx, {ctx.one: n})

    def _coerce(self, other):
        if isinstance(other, MonoidAlgebraElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("elements belong to different monoid algebras")
            return other
        if isinstance(other, int):
            return MonoidAlgebraElement.integer(self.ctx, other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for r, c in other.terms.items():
            out[r] = out.get(r, 0) + c
        return MonoidAlgebraElement(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return MonoidAlgebraElement(self.ctx, {r: -c for r, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return MonoidAlgebraElement(self.ctx, {r: c * other for r, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = defaultdict(int)
        for r, a in self.terms.items():
            for s, b in other.terms.items():
                out[r * s] += a * b
        return MonoidAlgebraElement(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not defined in ZR")
        result = MonoidAlgebraElement.one(self.ctx)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base._square()
        return result

    def _square(self):
        # each cross term once, doubled
        items = list(self.terms.items())
        out = defaultdict(int)
        for i, (r, a) in enumerate(items):
            out[r * r] += a * a
            for s, b in items[i + 1:]:
                out[r * s] += 2 * a * b
        return MonoidAlgebraElement(self.ctx, out)

    def mod_coefficients(self, m: int) -> MonoidAlgebraElement:
        """Reduce every coefficient into [0, m)."""
        return MonoidAlgebraElement(self.ctx, {r: c % m for r, c in self.terms.items()})

    def coefficient(self, r):
        return self.terms.get(r, 0)

    def augmentation(self) -> PerfectElement:
        acc = self.ctx.zero
        for r, c in self.terms.items():
            acc = acc + c * r
        return acc

    def is_in_I(self) -> bool:
        return not self.augmentation()

    def frobenius(self) -> MonoidAlgebraElement:
        return MonoidAlgebraElement(self.ctx, {r.frobenius(): c for r, c in self.terms.items()})

    def frobenius_inv(self) -> MonoidAlgebraElement:
        return MonoidAlgebraElement(self.ctx, {r.pth_root(): c for r, c in self.terms.items()})

    def delta(self) -> MonoidAlgebraElement:
        """(F(x) - x^p) / p, divided exactly."""
        p = self.ctx.p
        diff = self.frobenius() - self ** p
        out = {}
        for r, c in diff.terms.items():
            q, rem = divmod(c, p)
            if rem:
                raise AssertionError(f"F(x) - x^p not divisible by {p} at [{r}]")
            out[r] = q
        return MonoidAlgebraElement(self.ctx, out)

    def map(self, hom) -> MonoidAlgebraElement:
        """Apply an algebra homomorphism inside every bracket."""
        out = defaultdict(int)
        for r, c in self.terms.items():
            out[hom(r)] += c
        return MonoidAlgebraElement(hom.target, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda rc: self.ctx.element_sort_key(rc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for r, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = f"[{r}]" if mag == 1 else f"{mag}*[{r}]"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MonoidAlgebraElement({self.ctx.spec}, {self})"


def bracket(r: PerfectElement) -> MonoidAlgebraElement:
    return MonoidAlgebraElement(r.ctx, {r: 1})


def augmentation(x: MonoidAlgebraElement) -> PerfectElement:
    return x.augmentation()


def frobenius(x: MonoidAlgebraElement) -> MonoidAlgebraElement:
    return x.frobenius()


def frobenius_inv(x: MonoidAlgebraElement) -> MonoidAlgebraElement:
    return x.frobenius_inv()


def delta(x: MonoidAlgebraElement) -> MonoidAlgebraElement:
    return x.delta()


def additive_generator(r: PerfectElement, s: PerfectElement) -> MonoidAlgebraElement:
    """[r] + [s] - [r + s], an element of I."""
    return bracket(r) + bracket(s) - bracket(r + s)


def express_in_additive_generators(x: MonoidAlgebraElement) -> dict:
    """Write x in I as a Z-combination of additive generators.

    Returns {(r, s): n} with sum n * ([r] + [s] - [r+s]) == x.  Each [r] is
    first split along its basis decomposition, which leaves sum m_b [b] with
    p | m_b; then p[b] = sum_{k<p} ([kb] + [b] - [(k+1)b]).
    """
    if not x.is_in_I():
        raise ValueError("element is not in the augmentation ideal")
    ctx = x.ctx
    p = ctx.p
    combo = defaultdict(int)
    basis_coeffs = defaultdict(int)
    for r, n in x.terms.items():
        atoms = []
        for key, lam in ctx.basis_decompose(r).items():
            atoms.extend([key] * lam)
        if not atoms:
            # [0] = [0] + [0] - [0]
            combo[(ctx.zero, ctx.zero)] += n
            continue
        # [a_1 + ... + a_m] = sum [a_i] - sum_i g(a_i, a_{i+1} + ... + a_m)
        rest = ctx.zero
        for key in reversed(atoms[1:]):
            rest = rest + ctx.basis_element(key)
        for i, key in enumerate(atoms[:-1]):
            b = ctx.basis_element(key)
            combo[(b, rest)] -= n
            rest = rest - ctx.basis_element(atoms[i + 1])
        for key in atoms:
            basis_coeffs[key] += n
    for key, m in basis_coeffs.items():
        q, rem = divmod(m, p)
        assert rem == 0, "augmentation vanished but basis sum is not divisible by p"
        b = ctx.basis_element(key)
        for k in range(p):
            combo[(k * b, b)] += q
    return {pair: n for pair, n in combo.items() if n}

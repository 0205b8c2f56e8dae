"""The splitting idempotent of Z_pR for a finite perfect algebra R.

Working in (Z/p^n)R, the image A_n of I^n is an idempotent ideal.  Its unit
element e_n is found mod p by a linear solve and lifted by the Newton
iteration e <- 3e^2 - 2e^3.  Then e(Z/p^n)R = A_n is the kernel of
(Z/p^n)R -> ZR/I^n and (1 - e)(Z/p^n)R maps isomorphically onto ZR/I^n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .monoid_algebra import MonoidAlgebraElement, additive_generator, bracket
from .perfect import finite_field
from .truncated import reduce


def _require_finite(ctx):
    if not ctx.is_finite:
        raise ValueError(f"{ctx.spec} is infinite; the idempotent needs a finite algebra")


class GroupRingCoordinates:
    """Coordinates of (Z/p^n)R in the basis {[r] : r in R}."""

    def __init__(self, ctx):
        _require_finite(ctx)
        self.ctx = ctx
        self.elements = list(ctx.elements())
        self.index = {r: i for i, r in enumerate(self.elements)}

    def vector(self, x: MonoidAlgebraElement, q: int):
        vec = [0] * len(self.elements)
        for r, c in x.terms.items():
            vec[self.index[r]] = c % q
        return vec

    def element(self, vec) -> MonoidAlgebraElement:
        return MonoidAlgebraElement(self.ctx, {r: c for r, c in zip(self.elements, vec)})


@dataclass
class ResidueModule:
    """A Z/p^n-submodule of (Z/p^n)R held in Howell form."""

    ctx: object
    n: int
    pivots: list
    coords: GroupRingCoordinates = field(repr=False)

    @classmethod
    def span(cls, ctx, n, gens, coords=None):
        coords = coords or GroupRingCoordinates(ctx)
        q = ctx.p ** n
        rows = [coords.vector(g, q) for g in gens]
        return cls(ctx, n, linalg.howell_form(rows, ctx.p, n, len(coords.elements)), coords)

    @property
    def modulus(self):
        return self.ctx.p ** self.n

    @property
    def rank(self):
        return len(self.coords.elements)

    def log_size(self):
        return linalg.span_log_size(self.pivots, self.n)

    def generators(self):
        return [self.coords.element(row) for _, _, row in self.pivots]

    def rows(self):
        return [list(row) for _, _, row in self.pivots]

    def contains(self, x) -> bool:
        vec = x if isinstance(x, list) else self.coords.vector(x, self.modulus)
        return not any(linalg.reduce_vector(vec, self.pivots, self.ctx.p, self.n))

    def __le__(self, other):
        return all(other.contains(row) for row in self.rows())

    def __eq__(self, other):
        if not isinstance(other, ResidueModule):
            return NotImplemented
        return self.n == other.n and self <= other and other <= self


def _mod(x: MonoidAlgebraElement, q: int) -> MonoidAlgebraElement:
    return x.mod_coefficients(q)


def kernel_ideal_mod_pn(ctx, n: int) -> ResidueModule:
    """Image of I in (Z/p^n)R.

    Computed as the kernel of sum n_r [r] -> sum n_r r and, independently, as
    the span of {[r] + [s] - [r+s]} and p[1]; the two must agree.
    """
    _require_finite(ctx)
    if n < 1:
        raise ValueError("precision must be >= 1")
    p = ctx.p
    coords = GroupRingCoordinates(ctx)
    keys = ctx.basis_keys()
    # R ~ F_p^k embedded in (Z/p^n)^k via multiplication by p^(n-1)
    images = []
    for r in coords.elements:
        dec = ctx.basis_decompose(r)
        images.append([dec.get(k, 0) * p ** (n - 1) for k in keys])
    direct = ResidueModule(ctx, n, linalg.kernel(images, p, n, len(keys)), coords)

    gens = [additive_generator(r, s) for r in coords.elements for s in coords.elements]
    gens.append(MonoidAlgebraElement.integer(ctx, p))
    spanned = ResidueModule.span(ctx, n, gens, coords)
    if direct != spanned:
        raise AssertionError("kernel of the augmentation differs from the additive span")
    return direct


def ideal_power_image(ctx, n: int, power: int | None = None) -> ResidueModule:
    """Image of I^power (default I^n) in (Z/p^n)R, from products of generators."""
    power = n if power is None else power
    a1 = kernel_ideal_mod_pn(ctx, n)
    q = ctx.p ** n
    current = a1
    for _ in range(power - 1):
        prods = [_mod(a * b, q) for a in current.generators() for b in a1.generators()]
        current = ResidueModule.span(ctx, n, prods, a1.coords)
    return current


def reduction_kernel(ctx, n: int) -> ResidueModule:
    """Kernel of (Z/p^n)R -> ZR/I^n, computed with ``reduce``."""
    _require_finite(ctx)
    coords = GroupRingCoordinates(ctx)
    keys = ctx.basis_keys()
    images = []
    for r in coords.elements:
        c = reduce(bracket(r), n).coeffs
        images.append([c.get(k, 0) for k in keys])
    return ResidueModule(ctx, n, linalg.kernel(images, ctx.p, n, len(keys)), coords)


def image_of_ideal_power(ctx, n: int) -> ResidueModule:
    """A_n, cross-checked between the product and the reduce-kernel routes."""
    products = ideal_power_image(ctx, n)
    if products != reduction_kernel(ctx, n):
        raise AssertionError("image of I^n disagrees with the kernel of reduction")
    return products


def unit_idempotent_mod_p(a1: ResidueModule) -> MonoidAlgebraElement:
    """The unit element e_1 of A_1, solved as a linear system over F_p."""
    if a1.n != 1:
        raise ValueError("expected the image of I modulo p")
    p = a1.ctx.p
    basis = a1.generators()
    coords = a1.coords
    products = [[coords.vector(a * g, p) for a in basis] for g in basis]
    matrix, rhs = [], []
    for j, g in enumerate(basis):
        gvec = coords.vector(g, p)
        for pos in range(a1.rank):
            matrix.append([products[j][i][pos] for i in range(len(basis))])
            rhs.append(gvec[pos])
    lam = linalg.solve_mod_p(matrix, rhs, p) if basis else []
    if lam is None:
        raise ArithmeticError("A_1 has no unit element")
    e = MonoidAlgebraElement(a1.ctx)
    for c, a in zip(lam, basis):
        e = e + a * c
    e = _mod(e, p)
    if _mod(e * e - e, p):
        raise AssertionError("unit element of A_1 is not idempotent")
    return e


def newton_lift_idempotent(e1: MonoidAlgebraElement, n: int) -> MonoidAlgebraElement:
    """Unique idempotent of (Z/p^n)R congruent to e1 mod p."""
    ctx = e1.ctx
    q = ctx.p ** n
    e = _mod(e1, q)
    for _ in range(max(n - 1, 1).bit_length() + 1):
        e2 = e * e
        e = _mod(e2 * 3 - e2 * e * 2, q)
    if _mod(e * e - e, q):
        raise AssertionError("Newton lift is not idempotent")
    for g in ideal_power_image(ctx, n).generators():
        if _mod(e * g - g, q):
            raise AssertionError("lifted idempotent is not a unit for A_n")
    return e


def compute_idempotent(ctx, n: int) -> MonoidAlgebraElement:
    return newton_lift_idempotent(unit_idempotent_mod_p(kernel_ideal_mod_pn(ctx, 1)), n)


@dataclass
class SplittingReport:
    ring: str
    precision: int
    modulus: int
    idempotent: str
    idempotent_coeffs: dict
    is_idempotent: bool
    unit_for_kernel: bool
    bijective: bool
    exact_sequence: bool
    matrix: list
    basis: list

    @property
    def ok(self):
        return self.is_idempotent and self.unit_for_kernel and self.bijective and self.exact_sequence

    def to_dict(self):
        return {
            "ring": self.ring,
            "precision": self.precision,
            "modulus": self.modulus,
            "idempotent": self.idempotent_coeffs,
            "is_idempotent": self.is_idempotent,
            "unit_for_kernel": self.unit_for_kernel,
            "bijective": self.bijective,
            "exact_sequence": self.exact_sequence,
            "matrix": self.matrix,
            "basis": self.basis,
            "status": "ok" if self.ok else "failure",
        }


def format_group_ring(x: MonoidAlgebraElement, q: int) -> str:
    terms = [(r, c % q) for r, c in x.sorted_terms() if c % q]
    body = " + ".join(f"[{r}]" if c == 1 else f"{c}*[{r}]" for r, c in terms)
    return f"{body or '0'} (mod {q})"


def splitting_check(e: MonoidAlgebraElement, n: int) -> SplittingReport:
    """Check e A_n = A_n and that (1-e)(Z/p^n)R -> ZR/I^n is bijective."""
    ctx = e.ctx
    p = ctx.p
    q = p ** n
    e = _mod(e, q)
    a_n = image_of_ideal_power(ctx, n)
    coords = a_n.coords
    keys = ctx.basis_sort(ctx.basis_keys())
    is_idem = not _mod(e * e - e, q)
    unit = a_n.contains(e) and all(not _mod(e * g - g, q) for g in a_n.generators())

    comp = _mod(1 - e, q)
    parts = [_mod(comp * bracket(r), q) for r in coords.elements]
    part_size = ResidueModule.span(ctx, n, parts, coords).log_size()
    matrix = []
    for x in parts:
        c = reduce(x, n).coeffs
        matrix.append([c.get(k, 0) for k in keys])
    image = linalg.howell_form(matrix, p, n, len(keys))
    full = n * len(keys)
    bijective = linalg.span_log_size(image, n) == full and part_size == full
    exact = a_n.log_size() + full == n * a_n.rank
    return SplittingReport(
        ring=ctx.spec, precision=n, modulus=q,
        idempotent=format_group_ring(e, q),
        idempotent_coeffs={str(r): c for r, c in e.sorted_terms()},
        is_idempotent=is_idem, unit_for_kernel=unit, bijective=bijective,
        exact_sequence=exact, matrix=matrix,
        basis=[ctx.basis_label(k) for k in keys])


def teichmuller_character(p: int, n: int, r: int) -> int:
    """The Teichmuller representative of r in F_p^x, modulo p^n."""
    if r % p == 0:
        raise ValueError("the Teichmuller character is defined on F_p^x")
    return pow(r, p ** (n - 1), p ** n)


def explicit_e_prime_field(p: int, n: int, ctx=None) -> MonoidAlgebraElement:
    """e = 1 - (p-1)^-1 sum_{r != 0} omega(r)^-1 [r] in (Z/p^n)F_p, for odd p.

    For p = 2 the sum has the single term [1], giving e = 0, whereas the unit
    of the kernel is [0]; the formula is therefore refused there.
    """
    if p == 2:
        raise ValueError(
            "explicit idempotent formula not applicable at p = 2: it yields e = 0, "
            "but the kernel unit computed directly is e = [0]")
    ctx = ctx or finite_field(p)
    q = p ** n
    scale = pow(p - 1, -1, q)
    comp = MonoidAlgebraElement(ctx)
    for r in range(1, p):
        w_inv = pow(teichmuller_character(p, n, r), -1, q)
        comp = comp + bracket(ctx.from_int(r)) * (scale * w_inv)
    return _mod(1 - comp, q)

"""Random element builders shared by the tests."""

from monoid_witt.monoid_algebra import MonoidAlgebraElement, additive_generator
from monoid_witt.truncated import TruncatedElement


def random_zr(ctx, rng, terms=3, coeff=5):
    elems = {}
    for _ in range(rng.randint(1, terms)):
        r = ctx.random_element(rng)
        elems[r] = elems.get(r, 0) + rng.randint(-coeff, coeff)
    return MonoidAlgebraElement(ctx, elems)


def random_truncated(ctx, n, rng):
    q = ctx.p ** n
    return TruncatedElement(ctx, n, {k: rng.randrange(q) for k in ctx.basis_keys()})


def random_ideal_element(ctx, rng):
    r, s = ctx.random_element(rng), ctx.random_element(rng)
    return additive_generator(r, s) * rng.randint(1, 3)


def random_ideal_power_element(ctx, n, rng):
    """A product of n elements of I, hence in I^n."""
    acc = MonoidAlgebraElement.one(ctx)
    for _ in range(n):
        acc = acc * random_ideal_element(ctx, rng)
    return acc

"""Row echelon (Howell) forms over Z/p^n.

Z/p^n is a chain ring: every nonzero entry is p^v times a unit.  Eliminating
with a pivot of minimal valuation and feeding back the saturated row
p^(n-v) * pivot_row gives a Howell form, which is canonical and makes
membership decidable by top-down reduction.
"""

from __future__ import annotations


def vp(c: int, p: int) -> int:
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


def howell_form(rows, p: int, n: int, ncols: int | None = None):
    """Canonical Howell basis of the Z/p^n-span of ``rows``.

    Returns a list of (pivot column, pivot valuation, row) triples; each
    pivot entry equals p^v and entries above a pivot are reduced into
    [0, p^v).
    """
    q = p ** n
    rows = [[c % q for c in r] for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pending = [r for r in rows if any(r)]
    pivots = []
    for j in range(ncols):
        cands = [r for r in pending if r[j]]
        if not cands:
            continue
        best = min(range(len(cands)), key=lambda i: vp(cands[i][j], p))
        row = cands[best]
        v = vp(row[j], p)
        inv = pow(row[j] // p ** v, -1, q)
        piv = [c * inv % q for c in row]
        rest = []
        for r in pending:
            if r is row:
                continue
            if r[j]:
                f = r[j] // p ** v
                r = [(a - f * b) % q for a, b in zip(r, piv)]
            if any(r):
                rest.append(r)
        if v:
            sat = [c * p ** (n - v) % q for c in piv]
            if any(sat):
                rest.append(sat)
        pending = rest
        pivots.append((j, v, piv))
    # reduce entries above each pivot
    for idx, (j, v, piv) in enumerate(pivots):
        pv = p ** v
        for k in range(idx):
            cj, cv, crow = pivots[k]
            f = crow[j] // pv
            if f:
                pivots[k] = (cj, cv, [(a - f * b) % q for a, b in zip(crow, piv)])
    return pivots


def reduce_vector(vec, pivots, p, n):
    """Remainder of vec modulo the span; zero iff vec is in the span."""
    q = p ** n
    vec = [c % q for c in vec]
    for j, v, piv in pivots:
        f = vec[j] // p ** v
        if f:
            vec = [(a - f * b) % q for a, b in zip(vec, piv)]
    return vec


def span_log_size(pivots, n: int) -> int:
    """log_p of the number of elements in the span."""
    return sum(n - v for _, v, _ in pivots)


def kernel(images, p: int, n: int, target_dim: int):
    """Generators of the kernel of e_i -> images[i], as Howell rows."""
    dim = len(images)
    aug = []
    for i, img in enumerate(images):
        unit = [0] * dim
        unit[i] = 1
        aug.append(list(img) + unit)
    pivots = howell_form(aug, p, n, target_dim + dim)
    gens = [row[target_dim:] for _, _, row in pivots if not any(row[:target_dim])]
    return howell_form(gens, p, n, dim)


def solve_mod_p(matrix, rhs, p: int):
    """One solution x of matrix @ x = rhs over F_p, or None if inconsistent."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    aug = [[c % p for c in row] + [b % p] for row, b in zip(matrix, rhs)]
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [a * inv % p for a in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
    if any(row[-1] for row in aug[r:]):
        return None
    x = [0] * ncols
    for i, c in enumerate(pivot_cols):
        x[c] = aug[i][-1]
    return x

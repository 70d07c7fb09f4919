"""Exact linear algebra over ZZ, QQ and prime fields.

Row-vector convention throughout: a module is spanned by its basis *rows*,
and linear maps act on the right (image of v is v @ M).
"""

from __future__ import annotations

import math
from fractions import Fraction


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with g = gcd(a, b) = u*a + v*b and g >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def hnf_rows(rows) -> list[tuple[int, ...]]:
    """Row Hermite normal form of the ZZ-module spanned by `rows`.

    Pivots are positive, entries above each pivot lie in [0, pivot).
    Zero rows are dropped; result rows are ordered by pivot column.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return []
    n = len(mat[0])
    out = []
    for col in range(n):
        pivot = None
        rest = []
        for r in mat:
            if r[col]:
                if pivot is None:
                    pivot = r
                else:
                    g, u, v = xgcd(pivot[col], r[col])
                    pa, ra = pivot[col] // g, r[col] // g
                    newp = [u * x + v * y for x, y in zip(pivot, r)]
                    newr = [ra * x - pa * y for x, y in zip(pivot, r)]
                    pivot = newp
                    if any(newr):
                        rest.append(newr)
            else:
                rest.append(r)
        mat = rest
        if pivot is not None:
            if pivot[col] < 0:
                pivot = [-x for x in pivot]
            out.append(pivot)
    for i in range(len(out)):
        pc = next(j for j, x in enumerate(out[i]) if x)
        piv = out[i][pc]
        for k in range(i):
            q = out[k][pc] // piv
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return [tuple(r) for r in out]


def hnf_with_transform(rows) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """HNF together with the combination matrix: trans[i] @ rows == hnf[i]."""
    orig = [list(r) for r in rows]
    m = len(orig)
    if not orig:
        return [], []
    n = len(orig[0])
    mat = []
    for i, r in enumerate(orig):
        t = [0] * m
        t[i] = 1
        mat.append((list(r), t))
    out = []
    for col in range(n):
        pivot = None
        rest = []
        for r, t in mat:
            if r[col]:
                if pivot is None:
                    pivot = (r, t)
                else:
                    pr, pt = pivot
                    g, u, v = xgcd(pr[col], r[col])
                    pa, ra = pr[col] // g, r[col] // g
                    newp = ([u * x + v * y for x, y in zip(pr, r)],
                            [u * x + v * y for x, y in zip(pt, t)])
                    newr = ([ra * x - pa * y for x, y in zip(pr, r)],
                            [ra * x - pa * y for x, y in zip(pt, t)])
                    pivot = newp
                    if any(newr[0]):
                        rest.append(newr)
            else:
                rest.append((r, t))
        mat = rest
        if pivot is not None:
            if pivot[0][col] < 0:
                pivot = ([-x for x in pivot[0]], [-x for x in pivot[1]])
            out.append(pivot)
    for i in range(len(out)):
        pc = next(j for j, x in enumerate(out[i][0]) if x)
        piv = out[i][0][pc]
        for k in range(i):
            q = out[k][0][pc] // piv
            if q:
                out[k] = ([x - q * y for x, y in zip(out[k][0], out[i][0])],
                          [x - q * y for x, y in zip(out[k][1], out[i][1])])
    return [tuple(r) for r, _ in out], [tuple(t) for _, t in out]


def solve_upper_int(hrows, target):
    """Solve c @ hrows == target over ZZ for HNF rows; None when unsolvable.

    Rows must have strictly increasing pivot columns (hnf_rows output).
    Processing ascends through pivots: once earlier rows are subtracted,
    no later row touches an earlier pivot column.
    """
    v = list(target)
    pivots = [next(j for j, x in enumerate(r) if x) for r in hrows]
    coeffs = [0] * len(hrows)
    for i in range(len(hrows)):
        pc = pivots[i]
        q, rem = divmod(v[pc], hrows[i][pc])
        if rem:
            return None
        if q:
            coeffs[i] = q
            v = [a - q * b for a, b in zip(v, hrows[i])]
    if any(v):
        return None
    return coeffs


def solve_in_module(rows, target):
    """Express `target` as an integer combination of `rows`; None when impossible."""
    h, t = hnf_with_transform(rows)
    c = solve_upper_int(h, target)
    if c is None:
        return None
    m = len(rows)
    combo = [0] * m
    for ci, ti in zip(c, t):
        if ci:
            combo = [a + ci * b for a, b in zip(combo, ti)]
    return combo


def rref_mod_p(rows, p):
    """Reduced row echelon form over GF(p); returns (rref_rows, pivot_cols)."""
    mat = [[x % p for x in r] for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                sel = i
                break
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return mat[:rank], pivots


def left_kernel_mod_p(rows, p):
    """Basis of {v : v @ M == 0 mod p} where M has the given rows."""
    m = len(rows)
    if m == 0:
        return []
    # transpose: columns of M become rows; solve M^T v^T = 0
    ncols = len(rows[0])
    tr = [[rows[i][j] % p for i in range(m)] for j in range(ncols)]
    rref, pivots = rref_mod_p(tr, p)
    pivset = set(pivots)
    basis = []
    for free in range(m):
        if free in pivset:
            continue
        v = [0] * m
        v[free] = 1
        for rr, pc in zip(rref, pivots):
            v[pc] = (-rr[free]) % p
        basis.append(tuple(v))
    return basis


def mat_mul_mod_p(a, b, p):
    rows = []
    nb = len(b[0])
    for ra in a:
        out = [0] * nb
        for i, x in enumerate(ra):
            if x:
                rb = b[i]
                for j in range(nb):
                    out[j] = (out[j] + x * rb[j]) % p
        rows.append(out)
    return rows


class FractionSpan:
    """Incrementally row-reduced QQ-span that can express new vectors
    as combinations of the originally added ones."""

    def __init__(self):
        self.rows = []  # (pivot_col, reduced_vec, combo dict idx->Fraction)
        self.count = 0

    @property
    def dim(self):
        return len(self.rows)

    def _reduce(self, vec):
        v = [Fraction(x) for x in vec]
        combo = {}
        for pc, rv, rc in self.rows:
            f = v[pc]
            if f:
                for j in range(pc, len(v)):
                    v[j] -= f * rv[j]
                for k, c in rc.items():
                    combo[k] = combo.get(k, Fraction(0)) + f * c
        return v, combo

    def express(self, vec):
        """Coefficients on previously added vectors, or None if independent."""
        v, combo = self._reduce(vec)
        if any(v):
            return None
        out = [Fraction(0)] * self.count
        for k, c in combo.items():
            out[k] = c
        return out

    def add(self, vec) -> bool:
        """Add a vector; True if it increased the span."""
        v, combo = self._reduce(vec)
        idx = self.count
        self.count += 1
        pc = next((j for j, x in enumerate(v) if x), None)
        if pc is None:
            return False
        lead = v[pc]
        v = [x / lead for x in v]
        newcombo = {k: -c / lead for k, c in combo.items()}
        newcombo[idx] = newcombo.get(idx, Fraction(0)) + Fraction(1) / lead
        self.rows.append((pc, v, newcombo))
        self.rows.sort(key=lambda r: r[0])
        return True


def det_bareiss(mat) -> int:
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def lcm_list(vals) -> int:
    out = 1
    for v in vals:
        out = out * v // math.gcd(out, v)
    return out

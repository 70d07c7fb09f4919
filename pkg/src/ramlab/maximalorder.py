"""p-maximal orders, the Dedekind criterion, and prime decomposition.

An order is held as an integer HNF basis over the power basis with a
common denominator; ideals of the order are integer HNF modules in
order coordinates.  Everything is exact integer linear algebra: the
p-radical is a Frobenius kernel, enlargement is the multiplier ring of
the radical, and the primes above p come from splitting the quotient by
the radical into its field components.
"""

from __future__ import annotations

import math
import random as _random
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded
from .exactpoly import (ModPPoly, RatPoly, _mp_distinct_degree,
                        _mp_equal_degree, _stable_seed, factor_mod_p,
                        is_prime, parse_poly)
from .linalg import (hnf_rows, lcm_list, left_kernel_mod_p, mat_mul_mod_p,
                     rref_mod_p, solve_in_module)
from .numberfield import EmbeddingMap, NFElement, NumberField, field_for

DEGREE_CAP = 24
PRIME_CAP = 1000

_ORDER_CACHE: dict[tuple, "Order"] = {}
_DECOMP_CACHE: dict[tuple, tuple] = {}


def _check_caps(degree: int, p: int, degree_cap, prime_bound):
    degree_cap = DEGREE_CAP if degree_cap is None else degree_cap
    prime_bound = PRIME_CAP if prime_bound is None else prime_bound
    if degree > degree_cap:
        raise CapExceeded(f"field degree {degree} exceeds cap {degree_cap}")
    if p >= prime_bound:
        raise CapExceeded(f"prime {p} exceeds bound {prime_bound}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


class Order:
    """An order in a number field: integer HNF basis rows / a denominator."""

    def __init__(self, field: NumberField, den: int, rows,
                 p_maximal_for=frozenset()):
        n = field.degree
        rows = [list(r) for r in rows]
        g = den
        for r in rows:
            for v in r:
                g = math.gcd(g, v)
        if g > 1:
            den //= g
            rows = [[v // g for v in r] for r in rows]
        self.field = field
        self.den = den
        self.rows = tuple(tuple(r) for r in rows)
        self.p_maximal_for = frozenset(p_maximal_for)
        if len(rows) != n or any(rows[i][i] == 0 for i in range(n)):
            raise ValueError("order basis must be a full-rank HNF matrix")
        # power basis must sit inside (the index matrix is integral)
        for i in range(n):
            unit = [0] * n
            unit[i] = den
            if self._solve_int(unit, 1) is None:
                raise ValueError("order does not contain the power basis")
        one = self._solve_int([den] + [0] * (n - 1), 1)
        if one is None:
            raise ValueError("order does not contain 1")
        self._one = tuple(one)
        self._table = None

    @property
    def degree(self):
        return self.field.degree

    def key(self):
        return (self.field.key, self.den, self.rows)

    def __eq__(self, other):
        return isinstance(other, Order) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Order(deg {self.degree}, den {self.den})"

    @property
    def basis_matrix(self):
        return tuple(tuple(Fraction(v, self.den) for v in r) for r in self.rows)

    def basis_elements(self):
        return [self.field.from_int_vec(self.den, r) for r in self.rows]

    def element_from_coords(self, coords) -> NFElement:
        n = self.degree
        acc = [0] * n
        for c, row in zip(coords, self.rows):
            if c:
                for k in range(n):
                    acc[k] += c * row[k]
        return self.field.from_int_vec(self.den, acc)

    def _solve_int(self, vec, scale):
        """Integer c with c @ rows == vec/scale; vec is in power coords
        premultiplied by den*scale.  None when no integer solution."""
        v = list(vec)
        n = self.degree
        out = [0] * n
        for j in range(n):
            piv = self.rows[j][j] * scale
            q, r = divmod(v[j], piv)
            if r:
                return None
            out[j] = q
            if q:
                for k in range(j, n):
                    v[k] -= q * scale * self.rows[j][k]
        return out if not any(v) else None

    def order_coords(self, x: NFElement):
        """Coordinates of x on the order basis, as Fractions."""
        n = self.degree
        v = [Fraction(num * self.den, x.den) for num in x.nums]
        out = [Fraction(0)] * n
        for j in range(n):
            c = v[j] / self.rows[j][j]
            out[j] = c
            if c:
                for k in range(j, n):
                    v[k] -= c * self.rows[j][k]
        return out

    def order_coords_int(self, x: NFElement):
        """Integer coordinates when x lies in the order, else None."""
        return self._solve_int([v * self.den for v in x.nums], x.den)

    def contains(self, x: NFElement) -> bool:
        return self.order_coords_int(x) is not None

    @property
    def table(self):
        """table[i][j] = order coordinates of basis_i * basis_j (integral)."""
        if self._table is None:
            n = self.degree
            elems = self.basis_elements()
            tab = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    c = self.order_coords_int(elems[i] * elems[j])
                    if c is None:
                        raise ValueError(
                            "order basis is not closed under multiplication")
                    tab[i][j] = tuple(c)
                    tab[j][i] = tuple(c)
            self._table = tab
        return self._table

    def mul_coords(self, u, v):
        """Order coordinates of the product of two order elements."""
        n = self.degree
        tab = self.table
        out = [0] * n
        for i, x in enumerate(u):
            if x:
                ti = tab[i]
                for j, y in enumerate(v):
                    if y:
                        row = ti[j]
                        xy = x * y
                        for k in range(n):
                            out[k] += xy * row[k]
        return out

    def product_module(self, arows, brows):
        """HNF basis of the module generated by pairwise products."""
        n = self.degree
        tab = self.table
        prods = []
        for a in arows:
            # mat[j] = coords of (sum_i a_i basis_i) * basis_j
            mat = [[0] * n for _ in range(n)]
            for i, x in enumerate(a):
                if x:
                    ti = tab[i]
                    for j in range(n):
                        row = ti[j]
                        mj = mat[j]
                        for k in range(n):
                            mj[k] += x * row[k]
            for b in brows:
                out = [0] * n
                for j, y in enumerate(b):
                    if y:
                        mj = mat[j]
                        for k in range(n):
                            out[k] += y * mj[k]
                prods.append(out)
        return hnf_rows(prods)


def _identity_order(field: NumberField) -> Order:
    n = field.degree
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return Order(field, 1, rows)


def _solve_in_hnf(hrows, vec):
    """Integer coordinates of vec on square full-rank HNF rows, or None."""
    v = list(vec)
    n = len(hrows)
    out = [0] * n
    for j in range(n):
        q, r = divmod(v[j], hrows[j][j])
        if r:
            return None
        out[j] = q
        if q:
            for k in range(j, n):
                v[k] -= q * hrows[j][k]
    return out if not any(v) else None


def _reduce_mod_hnf(hrows, vec):
    """Canonical representative of vec modulo the HNF module."""
    v = list(vec)
    n = len(hrows)
    for j in range(n):
        q = v[j] // hrows[j][j]
        if q:
            for k in range(j, n):
                v[k] -= q * hrows[j][k]
    return v


# ---------------------------------------------------------------------------
# Dedekind criterion


@dataclass
class DedekindResult:
    p_maximal: bool
    shape: list | None


def dedekind_criterion(f, p: int) -> DedekindResult:
    """Test whether ZZ[theta] is p-maximal; report the (e, f) shape if so."""
    f = parse_poly(f)
    if not f.is_monic:
        raise ValueError("polynomial must be monic")
    zz = f.int_coeffs()
    facs = factor_mod_p(f, p)
    gbar = ModPPoly(p, (1,))
    hbar = ModPPoly(p, (1,))
    for g, e in facs:
        gbar = gbar * g
        for _ in range(e - 1):
            hbar = hbar * g
    diff = RatPoly(gbar.coeffs) * RatPoly(hbar.coeffs) - RatPoly(zz)
    tpoly = ModPPoly(p, [int(c) // p for c in diff.int_coeffs()])
    d = tpoly.gcd(gbar).gcd(hbar)
    if d.degree > 0:
        return DedekindResult(False, None)
    return DedekindResult(True, sorted((e, g.degree) for g, e in facs))


# ---------------------------------------------------------------------------
# Round-2 style enlargement


def _p_radical_rows(order: Order, p: int):
    """HNF rows (order coords) of the radical of p*O in O; contains p*O."""
    n = order.degree
    frob = []
    for b in order.basis_elements():
        c = order.order_coords_int(b ** p)
        frob.append([v % p for v in c])
    reps = 1
    q = p
    while q < n:
        q *= p
        reps += 1
    a = frob
    for _ in range(reps - 1):
        a = mat_mul_mod_p(a, frob, p)
    rows = [list(v) for v in left_kernel_mod_p(a, p)]
    for i in range(n):
        unit = [0] * n
        unit[i] = p
        rows.append(unit)
    return hnf_rows(rows)


def _enlarge_once(order: Order, p: int):
    """One multiplier-ring step; None when the order is already stable."""
    n = order.degree
    rad = _p_radical_rows(order, p)
    bigrows = []
    for i in range(n):
        ei = [1 if t == i else 0 for t in range(n)]
        row_concat = []
        for k in range(n):
            prod = order.mul_coords(ei, rad[k])
            w = _solve_in_hnf(rad, prod)
            if w is None:
                raise ArithmeticError("radical is not an ideal (internal fault)")
            row_concat.extend(v % p for v in w)
        bigrows.append(row_concat)
    kern = left_kernel_mod_p(bigrows, p)
    if not kern:
        return None
    newrows = [[p * v for v in r] for r in order.rows]
    for u in kern:
        vec = [0] * n
        for i, c in enumerate(u):
            if c:
                for k in range(n):
                    vec[k] += c * order.rows[i][k]
        newrows.append(vec)
    return Order(order.field, order.den * p, hnf_rows(newrows))


def p_maximal_order(f, p: int, degree_cap=None, prime_bound=None) -> Order:
    """An order p-maximal at p containing ZZ[theta], by radical enlargement."""
    f = parse_poly(f)
    field = field_for(f)
    _check_caps(field.degree, p, degree_cap, prime_bound)
    key = (field.key, p)
    cached = _ORDER_CACHE.get(key)
    if cached is not None:
        return cached
    order = _identity_order(field)
    if not dedekind_criterion(f, p).p_maximal:
        for _ in range(4 * field.degree + 8):
            nxt = _enlarge_once(order, p)
            if nxt is None:
                break
            order = nxt
        else:
            raise ArithmeticError("radical enlargement failed to stabilize")
    order = Order(field, order.den, order.rows, order.p_maximal_for | {p})
    _ORDER_CACHE[key] = order
    return order


# ---------------------------------------------------------------------------
# prime ideals


class PrimeIdeal:
    """A prime of an order above p: HNF module, e, f, two-element form."""

    def __init__(self, order: Order, p: int, hnf, f: int):
        self.order = order
        self.p = p
        self.hnf = tuple(tuple(r) for r in hnf)
        self.f = f
        self.e = None
        self.second_gen = None
        self.uniformizer = None
        self.siblings = None
        self._powers = [self.hnf]
        self._residue_one = None
        self._anti_unif = None

    def key(self):
        return (self.order.field.key, self.p, self.hnf)

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"PrimeIdeal(p={self.p}, e={self.e}, f={self.f}, "
                f"deg {self.order.degree})")

    # -- power modules and membership

    def power_module(self, k: int):
        if k == 0:
            n = self.order.degree
            return tuple(tuple(1 if i == j else 0 for j in range(n))
                         for i in range(n))
        while len(self._powers) < k:
            nxt = self.order.product_module(self._powers[-1], self.hnf)
            self._powers.append(tuple(tuple(r) for r in nxt))
        return self._powers[k - 1]

    def member_coords(self, vec, k: int = 1) -> bool:
        return not any(_reduce_mod_hnf(self.power_module(k), vec))

    def _coords_unit_den(self, x: NFElement):
        """(integer order coords, denominator) with denominator coprime to p."""
        cs = self.order.order_coords(x)
        den = lcm_list([c.denominator for c in cs] or [1])
        if den % self.p == 0:
            return None
        return [int(c * den) for c in cs], den

    def val_at_least(self, x: NFElement, k: int) -> bool:
        got = self._coords_unit_den(x)
        if got is None:
            raise ValueError("element is not p-integral at this prime")
        return self.member_coords(got[0], k)

    def valuation_coords(self, vec) -> int:
        if not any(vec):
            raise ValueError("zero vector has infinite valuation")
        k = 0
        while self.member_coords(vec, k + 1):
            k += 1
            if k > 10000:
                raise ArithmeticError("valuation runaway")
        return k

    # -- residue field GF(p^f) via canonical representatives mod the module

    def residue_of_coords(self, vec):
        return tuple(_reduce_mod_hnf(self.hnf, vec))

    def residue_of(self, x: NFElement):
        got = self._coords_unit_den(x)
        if got is None:
            raise ValueError("element has p in its denominator")
        vec, den = got
        r = self.residue_of_coords(vec)
        if den != 1:
            r = self.residue_scale(r, pow(den % self.p, -1, self.p))
        return r

    def residue_scale(self, r, c):
        return tuple(_reduce_mod_hnf(self.hnf, [v * c for v in r]))

    def residue_mul(self, a, b):
        return self.residue_of_coords(self.order.mul_coords(a, b))

    def residue_one(self):
        if self._residue_one is None:
            self._residue_one = self.residue_of_coords(list(self.order._one))
        return self._residue_one

    def residue_inv(self, a):
        if not any(a):
            raise ZeroDivisionError("zero residue")
        e = self.p ** self.f - 2
        out = self.residue_one()
        base = a
        while e:
            if e & 1:
                out = self.residue_mul(out, base)
            base = self.residue_mul(base, base)
            e >>= 1
        return out

    def anti_uniformizer(self) -> NFElement:
        """Element of valuation -1 here and >= 0 at every prime over p."""
        if self._anti_unif is None:
            rows = self.power_module(self.e - 1)
            for s in self.siblings:
                if s is not self:
                    rows = self.order.product_module(rows, s.power_module(s.e))
            pick = next((r for r in rows if not self.member_coords(r, self.e)),
                        None)
            if pick is None:
                raise ArithmeticError("no exact-valuation element in module")
            self._anti_unif = self.order.element_from_coords(pick) / self.p
        return self._anti_unif


# ---------------------------------------------------------------------------
# splitting the quotient algebra O/radical into field components


def _modp_roots(mp: ModPPoly):
    """Roots in GF(p) of a polynomial splitting into distinct linear factors."""
    out = []
    for block, d in _mp_distinct_degree(mp.monic()):
        if d != 1:
            continue
        rng = _random.Random(_stable_seed(mp.p, 1, *block.coeffs))
        for lin in _mp_equal_degree(block, 1, rng):
            out.append((-lin.coeffs[0]) % mp.p)
    return sorted(out)


def _krylov_minpoly(w, op_rows, p):
    """Coefficients c with w@op^d = sum c[i] w@op^i, d minimal (mod p)."""
    span = []  # (pivot, reduced row, combo dict idx -> coeff)
    cur = [x % p for x in w]
    added = 0
    while True:
        v = list(cur)
        combo = {}
        for pc, rv, rc in span:
            fct = v[pc]
            if fct:
                for j in range(len(v)):
                    v[j] = (v[j] - fct * rv[j]) % p
                for kk, cc in rc.items():
                    combo[kk] = (combo.get(kk, 0) + fct * cc) % p
        if not any(v):
            out = [0] * added
            for kk, cc in combo.items():
                out[kk] = cc % p
            return out
        pc = next(j for j in range(len(v)) if v[j])
        inv = pow(v[pc], -1, p)
        rv = [(x * inv) % p for x in v]
        rc = {kk: (-cc * inv) % p for kk, cc in combo.items()}
        rc[added] = (rc.get(added, 0) + inv) % p
        span.append((pc, rv, rc))
        added += 1
        nxt = [0] * len(op_rows[0])
        for i, c in enumerate(cur):
            if c:
                for j in range(len(op_rows[i])):
                    nxt[j] = (nxt[j] + c * op_rows[i][j]) % p
        cur = nxt


def _split_quotient(order: Order, p: int, rad):
    """Field components of O/rad over GF(p).

    Returns (positions, components) where positions lists the order-basis
    indices spanning the quotient and each component is (rref_rows, pivots)
    in those coordinates.
    """
    n = order.degree
    diag = [rad[i][i] for i in range(n)]
    if any(d not in (1, p) for d in diag):
        raise ArithmeticError("radical module has a non-elementary diagonal")
    pos = [i for i in range(n) if diag[i] == p]
    r0 = len(pos)

    def project(vec):
        red = _reduce_mod_hnf(rad, vec)
        return [red[i] % p for i in pos]

    def lift(rvec):
        out = [0] * n
        for val, i in zip(rvec, pos):
            out[i] = val % p
        return out

    def qmul(a, b):
        return project(order.mul_coords(lift(a), lift(b)))

    elems = order.basis_elements()
    frob = []
    for i in pos:
        frob.append(project(order.order_coords_int(elems[i] ** p)))

    def apply_rows(vec, rows):
        out = [0] * len(rows[0])
        for i, c in enumerate(vec):
            if c:
                row = rows[i]
                for j in range(len(row)):
                    out[j] = (out[j] + c * row[j]) % p
        return out

    comps = []

    def process(sub):
        rows, piv = sub
        dim = len(rows)
        # frobenius restricted to the subalgebra, in its rref coordinates
        frows = []
        for b in rows:
            img = apply_rows(b, frob)
            coords = [img[c] % p for c in piv]
            chk = list(img)
            for co, rr in zip(coords, rows):
                if co:
                    for k in range(len(chk)):
                        chk[k] = (chk[k] - co * rr[k]) % p
            if any(chk):
                raise ArithmeticError("frobenius escaped a component")
            frows.append(coords)
        delta = [[(frows[i][j] - (1 if i == j else 0)) % p
                  for j in range(dim)] for i in range(dim)]
        fixed = left_kernel_mod_p(delta, p)
        if len(fixed) <= 1:
            comps.append(sub)
            return
        for v in fixed:
            velt = apply_rows(v, rows)
            op = []
            for b in rows:
                img = qmul(velt, b)
                op.append([img[c] % p for c in piv])
            roots = set()
            for st in range(dim):
                w = [1 if i == st else 0 for i in range(dim)]
                cfs = _krylov_minpoly(w, op, p)
                mp = ModPPoly(p, [(-c) % p for c in cfs] + [1])
                roots.update(_modp_roots(mp))
            if len(roots) < 2:
                continue
            pieces = []
            for lam in sorted(roots):
                shifted = [[(op[i][j] - (lam if i == j else 0)) % p
                            for j in range(dim)] for i in range(dim)]
                kern = left_kernel_mod_p(shifted, p)
                if kern:
                    sub_rows = [apply_rows(k, rows) for k in kern]
                    pieces.append(rref_mod_p(sub_rows, p))
            if sum(len(rw) for rw, _ in pieces) != dim:
                raise ArithmeticError("eigenspace split lost dimensions")
            for piece in pieces:
                process(piece)
            return
        raise ArithmeticError("no splitting element found in an etale algebra")

    ident = rref_mod_p([[1 if i == j else 0 for j in range(r0)]
                        for i in range(r0)], p)
    process(ident)
    comps.sort(key=lambda sub: (len(sub[0]), sub[0]))
    return pos, comps


def decompose_prime(order: Order, p: int, degree_cap=None, prime_bound=None):
    """All primes of the order above p, with e, f, a two-element generator
    and a uniformizer; asserts the fundamental identity sum(e*f) = n."""
    _check_caps(order.degree, p, degree_cap, prime_bound)
    if p not in order.p_maximal_for:
        raise ValueError(f"order is not certified p-maximal at {p}")
    key = (order.key(), p)
    cached = _DECOMP_CACHE.get(key)
    if cached is not None:
        return list(cached)
    n = order.degree
    rad = _p_radical_rows(order, p)
    pos, comps = _split_quotient(order, p, rad)

    def lift(rvec):
        out = [0] * n
        for val, i in zip(rvec, pos):
            out[i] = val % p
        return out

    primes = []
    for idx in range(len(comps)):
        module_rows = [list(r) for r in rad]
        for jdx, (orows, _) in enumerate(comps):
            if jdx != idx:
                module_rows.extend(lift(r) for r in orows)
        primes.append(PrimeIdeal(order, p, hnf_rows(module_rows),
                                 f=len(comps[idx][0])))
    pvec = [c * p for c in order._one]
    for q in primes:
        q.siblings = primes
        q.e = q.valuation_coords(pvec)
    if sum(q.e * q.f for q in primes) != n:
        raise ArithmeticError("fundamental identity sum(e*f) = n violated")
    one = list(order._one)
    for q in primes:
        pi_row = next((r for r in q.hnf if not q.member_coords(r, 2)), None)
        if pi_row is None:
            raise ArithmeticError("prime module has no valuation-1 element")
        if len(primes) == 1:
            beta = _reduce_mod_hnf(q.power_module(2), pi_row)
        else:
            # beta = pi mod Q^2 and 1 mod every sibling, via 1 = a + b
            q2 = q.power_module(2)
            jrows = None
            for s in primes:
                if s is not q:
                    jrows = (s.hnf if jrows is None
                             else order.product_module(jrows, s.hnf))
            stacked = [list(r) for r in q2] + [list(r) for r in jrows]
            combo = solve_in_module(stacked, one)
            if combo is None:
                raise ArithmeticError("prime-power modules are not comaximal")
            a = [0] * n
            for c, r in zip(combo[: len(q2)], q2):
                if c:
                    for k in range(n):
                        a[k] += c * r[k]
            b = [o - x for o, x in zip(one, a)]
            beta = [x + y for x, y in zip(order.mul_coords(pi_row, b), a)]
            # canonical small representative; Q^2 * prod(siblings) preserves
            # the whole valuation profile
            beta = _reduce_mod_hnf(order.product_module(q2, jrows), beta)
        if not (q.member_coords(beta, 1) and not q.member_coords(beta, 2)):
            raise ArithmeticError("second generator has the wrong valuation")
        for s in primes:
            if s is not q and s.member_coords(beta, 1):
                raise ArithmeticError("second generator vanishes at a sibling")
        q.second_gen = order.element_from_coords(beta)
        q.uniformizer = q.second_gen
    primes.sort(key=lambda q: (q.f, q.e, q.second_gen.sort_key()))
    _DECOMP_CACHE[key] = tuple(primes)
    return list(primes)


def valuation(x: NFElement, q: PrimeIdeal):
    """q-adic valuation of x (math.inf for zero); fractions allowed."""
    if x.is_zero:
        return math.inf
    cs = q.order.order_coords(x)
    den = lcm_list([c.denominator for c in cs] or [1])
    vec = [int(c * den) for c in cs]
    vp = 0
    while den % q.p == 0:
        den //= q.p
        vp += 1
    return q.valuation_coords(vec) - q.e * vp


def order_and_primes(poly, p: int, degree_cap=None, prime_bound=None):
    """Cached (p-maximal order, primes above p) for a defining polynomial."""
    poly = parse_poly(poly)
    order = p_maximal_order(poly, p, degree_cap, prime_bound)
    return order, decompose_prime(order, p, degree_cap, prime_bound)


def restrict_prime(q: PrimeIdeal, emb: EmbeddingMap) -> PrimeIdeal:
    """The unique prime of the embedding source lying below q."""
    if emb.target.key != q.order.field.key:
        raise ValueError("embedding target differs from the prime's field")
    p = q.p
    _, cand = order_and_primes(emb.source.poly, p,
                               degree_cap=max(DEGREE_CAP, q.order.degree),
                               prime_bound=p + 1)
    hits = [pp for pp in cand if q.val_at_least(emb.apply(pp.second_gen), 1)]
    if len(hits) != 1:
        raise ArithmeticError(
            f"restriction matched {len(hits)} primes instead of exactly one")
    return hits[0]

"""Dense exact polynomial arithmetic over QQ and over prime fields.

Polynomials are coefficient lists in ascending degree. RatPoly carries
Fraction coefficients and is immutable; ModPPoly carries residues in
[0, p).  Factorization is fully exact: squarefree + distinct-degree +
equal-degree splitting mod p, multifactor Hensel lifting, and
Zassenhaus-style recombination over ZZ with a Mignotte-type bound.

Two polynomial text forms are accepted everywhere: an ascending
coefficient list like "[-2,0,0,1]" and a symbolic string like "x^3-2".
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction

from .linalg import lcm_list

Rat = Fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the prime caps used here."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _stable_seed(*parts: int) -> int:
    h = 0x9E3779B97F4A7C15
    for v in parts:
        h = (h * 0x100000001B3 + (v & 0xFFFFFFFFFFFFFFFF) + 0x9E37) % (1 << 64)
    return h


# ---------------------------------------------------------------------------
# integer coefficient lists (ascending), module-private fast paths

def _zstrip(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _zadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _zstrip(out)


def _zneg(a):
    return [-x for x in a]


def _zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _zstrip(out)


def _zscale(a, c):
    if c == 0:
        return []
    return [x * c for x in a]


def _zcontent(a):
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g


def _zeval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# RatPoly


class RatPoly:
    """Immutable dense polynomial over QQ, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("RatPoly is immutable")

    # -- construction helpers

    @staticmethod
    def x():
        return RatPoly((0, 1))

    @staticmethod
    def const(c):
        return RatPoly((c,))

    # -- basic structure

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RatPoly({self.to_string()!r})"

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # -- arithmetic

    def __add__(self, other):
        other = _coerce_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return RatPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce_poly(other))

    def __rsub__(self, other):
        return _coerce_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        other = _coerce_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RatPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = _coerce_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d, lc = other.degree, other.lc
        while len(rem) - 1 >= d and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
        return RatPoly(q), RatPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate by Horner; works for Fraction arguments and for any
        ring element supporting + and * with Fractions."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero:
            return self
        lc = self.lc
        return RatPoly([c / lc for c in self.coeffs])

    def shift(self, k: int):
        """Multiply by x^k."""
        return RatPoly((Fraction(0),) * k + self.coeffs)

    # -- integer views

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self):
        if not self.is_integral:
            raise ValueError(f"polynomial {self.to_string()} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def denominator_lcm(self) -> int:
        return lcm_list([c.denominator for c in self.coeffs] or [1])

    def primitive_int(self):
        """(content, primitive integer polynomial with positive lc)."""
        if self.is_zero:
            return Fraction(0), RatPoly()
        den = self.denominator_lcm()
        zz = [int(c * den) for c in self.coeffs]
        cont = _zcontent(zz)
        if zz[-1] < 0:
            cont = -cont
        prim = RatPoly([c // cont for c in zz])
        return Fraction(cont, den), prim

    # -- text form

    def to_string(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                xs = var if i == 1 else f"{var}^{i}"
                body = xs if mag == 1 else f"{mag}*{xs}" if mag.denominator != 1 else f"{mag}{xs}"
            parts.append((sign, body))
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __str__(self):
        return self.to_string()


def _coerce_poly(v) -> RatPoly:
    if isinstance(v, RatPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return RatPoly((v,))
    raise TypeError(f"cannot coerce {v!r} to RatPoly")


_TERM_RE = re.compile(
    r"([+-]?)(\d+(?:/\d+)?)?(?:\*?([a-zA-Z])(?:\^(\d+))?)?"
)


def parse_poly(text) -> RatPoly:
    """Parse either "[-2,0,0,1]" (ascending coefficients) or "x^3-2"."""
    if isinstance(text, RatPoly):
        return text
    if isinstance(text, (list, tuple)):
        return RatPoly(text)
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial string")
    if s[0] == "[":
        if not s.endswith("]"):
            raise ValueError(f"unterminated coefficient list: {text!r}")
        inner = s[1:-1].strip()
        if not inner:
            return RatPoly()
        return RatPoly([Fraction(t.strip()) for t in inner.split(",")])
    s = s.replace(" ", "")
    pos = 0
    coeffs: dict[int, Fraction] = {}
    var = None
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        sign, num, v, exp = m.groups()
        if num is None and v is None:
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise ValueError("polynomials are univariate; mixed variables found")
        c = Fraction(num) if num else Fraction(1)
        if sign == "-":
            c = -c
        k = 0
        if v is not None:
            k = int(exp) if exp else 1
        coeffs[k] = coeffs.get(k, Fraction(0)) + c
        pos = m.end()
    deg = max(coeffs)
    return RatPoly([coeffs.get(i, Fraction(0)) for i in range(deg + 1)])


# ---------------------------------------------------------------------------
# ModPPoly


class ModPPoly:
    """Immutable dense polynomial over GF(p), residues in [0, p)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("ModPPoly is immutable")

    @staticmethod
    def from_ratpoly(f: RatPoly, p: int) -> "ModPPoly":
        den = f.denominator_lcm()
        if den % p == 0:
            raise ValueError("denominator not invertible mod p")
        dinv = pow(den % p, -1, p)
        return ModPPoly(p, [int(c * den) % p * dinv % p for c in f.coeffs])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, ModPPoly) and self.p == other.p
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"ModPPoly(p={self.p}, {list(self.coeffs)})"

    def _lift(self):
        return RatPoly(self.coeffs)

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return ModPPoly(self.p, out)

    def __sub__(self, other):
        a, b = list(self.coeffs), other.coeffs
        if len(a) < len(b):
            a += [0] * (len(b) - len(a))
        for i, x in enumerate(b):
            a[i] -= x
        return ModPPoly(self.p, a)

    def __neg__(self):
        return ModPPoly(self.p, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return ModPPoly(self.p, [c * other for c in self.coeffs])
        p = self.p
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ModPPoly(p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % p
        return ModPPoly(p, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        d = other.degree
        inv = pow(other.lc, -1, p)
        rem = list(self.coeffs)
        q = [0] * max(0, len(rem) - d)
        while len(rem) - 1 >= d:
            if rem[-1] == 0:
                rem.pop()
                continue
            k = len(rem) - 1 - d
            f = rem[-1] * inv % p
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] = (rem[k + i] - f * c) % p
            rem.pop()
        return ModPPoly(p, q), ModPPoly(p, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def monic(self):
        if self.is_zero or self.lc == 1:
            return self
        inv = pow(self.lc, -1, self.p)
        return ModPPoly(self.p, [c * inv for c in self.coeffs])

    def derivative(self):
        return ModPPoly(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def pow_mod(self, e: int, mod: "ModPPoly"):
        out = ModPPoly(self.p, (1,))
        base = self % mod
        while e:
            if e & 1:
                out = (out * base) % mod
            base = (base * base) % mod
            e >>= 1
        return out


# ---------------------------------------------------------------------------
# gcd / resultant / discriminant over QQ


def poly_gcd(a, b) -> RatPoly:
    """Monic gcd in QQ[x]; gcd(f, 0) = monic(f), gcd(0, 0) = 0."""
    a, b = _coerce_poly(a), _coerce_poly(b)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def resultant(a, b) -> Fraction:
    """Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots alpha of a.

    Computed by the Euclidean recursion; `sylvester_resultant` is the
    independent matrix-determinant route used to cross-check it.
    """
    a, b = _coerce_poly(a), _coerce_poly(b)
    if a.is_zero or b.is_zero:
        raise ValueError("resultant of the zero polynomial is not defined")
    res = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if da == 0:
            return res * a.lc ** db
        if db == 0:
            return res * b.lc ** da
        r = a % b
        if r.is_zero:
            return Fraction(0)
        res *= Fraction(-1) ** (da * db) * b.lc ** (da - r.degree)
        a, b = b, r


def sylvester_resultant(a, b) -> Fraction:
    """Resultant as the Sylvester-matrix determinant (oracle route)."""
    a, b = _coerce_poly(a), _coerce_poly(b)
    if a.is_zero or b.is_zero:
        raise ValueError("resultant of the zero polynomial is not defined")
    da, db = a.degree, b.degree
    if da == 0:
        return a.lc ** db
    if db == 0:
        return b.lc ** da
    n = da + db
    rows = []
    ac = list(reversed(a.coeffs))
    bc = list(reversed(b.coeffs))
    for i in range(db):
        rows.append([Fraction(0)] * i + ac + [Fraction(0)] * (n - da - 1 - i))
    for i in range(da):
        rows.append([Fraction(0)] * i + bc + [Fraction(0)] * (n - db - 1 - i))
    # fraction-tolerant Gaussian elimination
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for i in range(col + 1, n):
            f = rows[i][col] * inv
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return det


def discriminant(f) -> Fraction:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f), for deg f >= 1."""
    f = _coerce_poly(f)
    if f.degree < 1:
        raise ValueError("discriminant requires degree >= 1")
    n = f.degree
    fp = f.derivative()
    if fp.is_zero:
        return Fraction(0)
    r = resultant(f, fp)
    return Fraction(-1) ** (n * (n - 1) // 2) * r / f.lc


# ---------------------------------------------------------------------------
# factorization over GF(p)


def _mp_pth_root(f: ModPPoly) -> ModPPoly:
    # f = g(x^p) over GF(p)  =>  g has coefficients f[i*p]
    p = f.p
    return ModPPoly(p, [f.coeffs[i] for i in range(0, len(f.coeffs), p)])


def _mp_squarefree(f: ModPPoly):
    """Squarefree decomposition of a monic f: list of (g, multiplicity)."""
    p = f.p
    out = []
    if f.degree == 0:
        return out
    fp = f.derivative()
    if fp.is_zero:
        for g, m in _mp_squarefree(_mp_pth_root(f)):
            out.append((g, m * p))
        return out
    T = f.gcd(fp)
    V = f // T
    i = 1
    while V.degree > 0:
        W = T.gcd(V)
        A = V // W
        if A.degree > 0:
            out.append((A.monic(), i))
        V = W
        T = T // W
        i += 1
    if T.degree > 0:
        for g, m in _mp_squarefree(_mp_pth_root(T)):
            out.append((g, m * p))
    return out


def _mp_distinct_degree(f: ModPPoly):
    """Distinct-degree split of a monic squarefree f: list of (product, d)."""
    p = f.p
    out = []
    x = ModPPoly(p, (0, 1))
    h = x % f
    d = 0
    rest = f
    while rest.degree > 2 * (d + 1) - 1:
        d += 1
        h = h.pow_mod(p, rest)
        g = rest.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _mp_equal_degree(f: ModPPoly, d: int, rng):
    """Cantor-Zassenhaus split of monic squarefree f into irreducibles of degree d."""
    p = f.p
    if f.degree == d:
        return [f]
    n = f.degree
    while True:
        a = ModPPoly(p, [rng.randrange(p) for _ in range(n)])
        if a.degree < 1:
            continue
        if p == 2:
            # absolute trace map of GF(2^d) splits products of degree-d factors
            t = a
            acc = a
            for _ in range(d - 1):
                t = t.pow_mod(2, f)
                acc = acc + t
            b = acc
        else:
            b = a.pow_mod((p ** d - 1) // 2, f) - ModPPoly(p, (1,))
        g = f.gcd(b)
        if 0 < g.degree < f.degree:
            return sorted(
                _mp_equal_degree(g, d, rng) + _mp_equal_degree(f // g, d, rng),
                key=ModPPoly.sort_key)


def factor_mod_p(f, p: int):
    """Factor f modulo the prime p.

    Returns a list of (monic irreducible ModPPoly, multiplicity), sorted by
    degree then coefficient tuple, whose product times lc(f) equals f mod p.
    """
    import random as _random

    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    f = parse_poly(f)
    fb = ModPPoly(p, [int(c) % p for c in f.int_coeffs()])
    if fb.is_zero:
        raise ValueError("polynomial vanishes mod p")
    fb = fb.monic()
    out = []
    for g, mult in _mp_squarefree(fb):
        for block, d in _mp_distinct_degree(g):
            rng = _random.Random(_stable_seed(p, d, *block.coeffs))
            for irr in _mp_equal_degree(block, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: t[0].sort_key())
    return out


# ---------------------------------------------------------------------------
# Hensel lifting


def _zmod(a, m):
    return [x % m for x in a]


def _zmul_mod(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return _zstrip(out)


def _zdivmod_mod(a, b, m):
    """Division mod m by a polynomial whose leading coefficient is a unit."""
    d = len(b) - 1
    inv = pow(b[-1], -1, m)
    rem = list(a)
    q = [0] * max(0, len(rem) - d)
    while len(rem) - 1 >= d:
        if rem[-1] % m == 0:
            rem.pop()
            continue
        k = len(rem) - 1 - d
        f = rem[-1] * inv % m
        q[k] = f
        for i, c in enumerate(b):
            rem[k + i] = (rem[k + i] - f * c) % m
        rem.pop()
    return _zstrip([c % m for c in q]), _zstrip([c % m for c in rem])


def _bezout_mod_p(g, h, p):
    """(s, t) with s*g + t*h = 1 mod p for coprime g, h."""
    r0, r1 = [c % p for c in g], [c % p for c in h]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while _zstrip(r1):
        q, r = _zdivmod_mod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _zstrip([(a - b) % p for a, b in
                              itertools.zip_longest(s0, _zmul_mod(q, s1, p), fillvalue=0)])
        t0, t1 = t1, _zstrip([(a - b) % p for a, b in
                              itertools.zip_longest(t0, _zmul_mod(q, t1, p), fillvalue=0)])
    if len(r0) != 1:
        raise ValueError("factors are not coprime mod p")
    inv = pow(r0[0], -1, p)
    return _zscale(s0, inv), _zscale(t0, inv)


def _hensel_pair(f, g, h, s, t, p, k):
    """Lift f = g*h from mod p to mod p^k; g stays monic, h keeps lc(f).

    Invariants at modulus m: f = g*h (mod m), s*g + t*h = 1 (mod m),
    deg s < deg h, deg t < deg g.
    """
    m = p
    g, h, s, t = list(g), list(h), list(s), list(t)
    target = p ** k
    while m < target:
        m2 = min(m * m, target * target)  # lifting past target is harmless
        fm = _zmod(f, m2)
        e = _zstrip([(a - b) % m2 for a, b in
                     itertools.zip_longest(fm, _zmul_mod(g, h, m2), fillvalue=0)])
        # delta_g = t*e mod g;  delta_h = (e - h*delta_g) / g  (exact)
        dg = _zdivmod_mod(_zmul_mod(t, e, m2), g, m2)[1]
        num = _zstrip([(a - b) % m2 for a, b in
                       itertools.zip_longest(e, _zmul_mod(h, dg, m2), fillvalue=0)])
        dh, rem = _zdivmod_mod(num, g, m2)
        if _zstrip(rem):
            raise ArithmeticError("hensel step lost exact divisibility")
        g = _zstrip([(a + b) % m2 for a, b in itertools.zip_longest(g, dg, fillvalue=0)])
        h = _zstrip([(a + b) % m2 for a, b in itertools.zip_longest(h, dh, fillvalue=0)])
        # refresh the Bezout pair:  (s, t) *= (1 - b)  then reduce degrees
        b = _zstrip([(a - c) % m2 for a, c in itertools.zip_longest(
            _zadd(_zmul_mod(s, g, m2), _zmul_mod(t, h, m2)), [1], fillvalue=0)])
        s = _zstrip([(a - c) % m2 for a, c in
                     itertools.zip_longest(s, _zmul_mod(s, b, m2), fillvalue=0)])
        t = _zstrip([(a - c) % m2 for a, c in
                     itertools.zip_longest(t, _zmul_mod(t, b, m2), fillvalue=0)])
        q, s = _zdivmod_mod(s, h, m2)
        t = _zstrip([(a + c) % m2 for a, c in
                     itertools.zip_longest(t, _zmul_mod(q, g, m2), fillvalue=0)])
        m = m2
    gm = _zmod(g, target)
    hm = _zmod(h, target)
    sm = _zmod(s, target)
    tm = _zmod(t, target)
    return _zstrip(gm), _zstrip(hm), _zstrip(sm), _zstrip(tm)


def _hensel_monic_list(f_int, monic_factors, p, k):
    """Lift monic coprime factors of a monic f from mod p to mod p^k."""
    target = p ** k
    f_int = _zmod(f_int, target)
    facs = [list(g) for g in monic_factors]
    out = []
    cur = f_int
    for i, g in enumerate(facs):
        if i == len(facs) - 1:
            out.append(_zmod(cur, target))
            break
        h = [1]
        for other in facs[i + 1:]:
            h = _zmul_mod(h, other, p)
        s, t = _bezout_mod_p(g, h, p)
        G, H, _, _ = _hensel_pair(cur, g, h, s, t, p, k)
        out.append(G)
        cur = H
    return out


def hensel_lift(f, factors, k: int):
    """Lift a coprime factorization of f mod p to a factorization mod p^k.

    `factors` is a list of ModPPoly over a common prime p with pairwise
    gcd 1 and product congruent to f mod p.  The result is a list of
    integer-coefficient RatPoly, reduced into [0, p^k), whose product is
    congruent to f mod p^k and which reduce mod p to the inputs.
    """
    if not factors:
        raise ValueError("no factors to lift")
    p = factors[0].p
    for g in factors:
        if g.p != p:
            raise ValueError("factors live over different primes")
        if g.is_zero:
            raise ValueError("zero factor")
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if factors[i].gcd(factors[j]).degree != 0:
                raise ValueError("factors are not pairwise coprime mod p")
    f = parse_poly(f)
    fz = f.int_coeffs()
    prod = ModPPoly(p, (1,))
    for g in factors:
        prod = prod * g
    if prod != ModPPoly(p, fz):
        raise ValueError("product of factors does not match f mod p")
    if k < 1:
        raise ValueError("target exponent must be >= 1")
    target = p ** k
    u = prod.lc  # = lc(f) mod p
    uinv = pow(u, -1, target)
    f_monic = _zmod(_zscale(fz, uinv), target)
    monics = [g.monic() for g in factors]
    lifted = _hensel_monic_list(f_monic, [list(g.coeffs) for g in monics], p, k)
    # reattach leading units so each lift reduces to its input factor
    consts = [g.lc for g in factors]
    c0 = u
    for c in consts[1:]:
        c0 = c0 * pow(c, -1, target) % target
    consts = [c0] + [c % target for c in consts[1:]]
    out = []
    for c, g in zip(consts, lifted):
        out.append(RatPoly(_zmod(_zscale(g, c), target)))
    return out


# ---------------------------------------------------------------------------
# factorization over QQ


def _yun_squarefree(f: RatPoly):
    """Yun decomposition over QQ: list of (monic squarefree g_i, i)."""
    out = []
    g = poly_gcd(f, f.derivative())
    b = (f // g).monic()
    c = f.derivative() // g
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def _l2_norm_bound(zz) -> int:
    return math.isqrt(sum(c * c for c in zz)) + 1


def _factor_sqfree_primitive(g: RatPoly):
    """Irreducible factors of a primitive squarefree integer polynomial."""
    zz = g.int_coeffs()
    n = g.degree
    if n <= 1:
        return [g]
    lc = zz[-1]
    # choose the prime giving the fewest modular factors (first few usable primes)
    best = None
    count = 0
    p = 2
    while count < 5:
        if lc % p and is_prime(p):
            fb = ModPPoly(p, zz)
            if fb.gcd(fb.derivative()).degree == 0:
                count += 1
                dd = _mp_distinct_degree(fb.monic())
                nfac = sum(blk.degree // d for blk, d in dd)
                if nfac == 1:
                    return [g]
                if best is None or nfac < best[1]:
                    best = (p, nfac)
        p += 1
    p = best[0]
    modular = [irr for irr, _ in factor_mod_p(g, p)]
    bound = 2 * abs(lc) * (1 << n) * _l2_norm_bound(zz)
    k = 1
    while p ** k <= 2 * bound:
        k += 1
    pk = p ** k
    uinv = pow(lc % pk, -1, pk)
    f_monic = _zmod(_zscale(zz, uinv), pk)
    lifted = _hensel_monic_list(f_monic, [list(m.coeffs) for m in modular], p, k)

    def symmetric(c):
        c %= pk
        return c - pk if c > pk // 2 else c

    factors_found = []
    remaining = list(range(len(lifted)))
    current = zz
    cur_lc = lc
    card = 1
    while 2 * card <= len(remaining):
        hit = False
        for subset in itertools.combinations(remaining, card):
            prod = [cur_lc % pk]
            for idx in subset:
                prod = _zmul_mod(prod, lifted[idx], pk)
            cand = _zstrip([symmetric(c) for c in prod])
            if not cand:
                continue
            cont = _zcontent(cand)
            cand = [c // cont for c in cand]
            # cheap trailing-coefficient divisibility filter
            if current[0] != 0 and cand[0] != 0 and (cur_lc * current[0]) % cand[0] != 0:
                continue
            q, r = divmod(RatPoly(current), RatPoly(cand))
            if not r.is_zero and not all(c == 0 for c in r.coeffs):
                continue
            if not q.is_integral:
                continue
            factors_found.append(RatPoly(cand))
            remaining = [i for i in remaining if i not in subset]
            _, prim = q.primitive_int()
            current = prim.int_coeffs()
            cur_lc = current[-1]
            hit = True
            break
        if not hit:
            card += 1
    if len(current) > 1:
        factors_found.append(RatPoly(current))
    else:
        # leftover unit only
        pass
    out = []
    for f in factors_found:
        _, prim = f.primitive_int()
        out.append(prim)
    return out


def factor_over_q(f):
    """Factor f in QQ[x] into primitive irreducible integer polynomials.

    Returned with positive leading coefficients, repeated according to
    multiplicity, sorted by degree then coefficient tuple; the product
    equals f up to a rational constant.
    """
    f = parse_poly(f)
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    out = []
    # pull off powers of x so trailing-coefficient filters stay valid
    nz = next(i for i, c in enumerate(f.coeffs) if c)
    if nz:
        out.extend([RatPoly.x()] * nz)
        f = RatPoly(f.coeffs[nz:])
    for g, mult in _yun_squarefree(f):
        _, prim = g.primitive_int()
        if prim.degree == 0:
            continue
        for irr in _factor_sqfree_primitive(prim):
            out.extend([irr] * mult)
    out.sort(key=lambda h: (h.degree, h.coeffs))
    return out


def squarefree_radical(f) -> RatPoly:
    """Monic product of the distinct irreducible factors of f over QQ."""
    f = parse_poly(f)
    if f.is_zero:
        raise ValueError("radical of the zero polynomial is not defined")
    return (f // poly_gcd(f, f.derivative())).monic()


# ---------------------------------------------------------------------------
# bivariate resultant (modular), used for norms from a number field

_PRIME_POOL: list[int] = []


def _prime_pool(count: int):
    cand = _PRIME_POOL[-1] + 1 if _PRIME_POOL else (1 << 62) + 1
    while len(_PRIME_POOL) < count:
        while not is_prime(cand):
            cand += 1
        _PRIME_POOL.append(cand)
        cand += 1
    return _PRIME_POOL[:count]


def _res_mod(a, b, q):
    """Resultant of integer coefficient lists mod prime q (Euclidean PRS)."""
    a = _zstrip([x % q for x in a])
    b = _zstrip([x % q for x in b])
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if da == 0:
            return res * pow(a[0], db, q) % q
        if db == 0:
            return res * pow(b[0], da, q) % q
        _, r = _zdivmod_mod(a, b, q)
        if not r:
            return 0
        dr = len(r) - 1
        res = res * pow(b[-1], da - dr, q) % q
        if (da * db) & 1:
            res = q - res
        a, b = b, r


def _interp_mod(xs, ys, q):
    """Coefficients of the interpolating polynomial mod q (Newton form)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            inv = pow((xs[i] - xs[i - j]) % q, -1, q)
            coef[i] = (coef[i] - coef[i - 1]) * inv % q
    # expand Newton form
    poly = [0] * n
    acc = [1]
    for i in range(n):
        for k, c in enumerate(acc):
            poly[k] = (poly[k] + coef[i] * c) % q
        if i < n - 1:
            acc = _zstrip([(x - xs[i] * y) % q for x, y in
                           itertools.zip_longest([0] + acc, acc, fillvalue=0)])
            # acc = acc*(x - xs[i])
    return poly


def bivar_resultant_y(a_int, b_rows):
    """Res_y(A(y), B(x, y)) for monic integer A and B given by rows:
    b_rows[j] is the integer x-polynomial coefficient of y^j.

    Returns ascending integer coefficients in x.  Exact via CRT over
    64-bit primes with a Hadamard bound, and interpolation in x.
    """
    a_int = _zstrip(list(a_int))
    n = len(a_int) - 1
    if a_int[-1] != 1:
        raise ValueError("A must be monic in y")
    rows = [_zstrip(list(r)) for r in b_rows]
    while rows and not rows[-1]:
        rows.pop()
    if not rows or not any(rows):
        return []
    m = len(rows) - 1
    if m == 0 and len(rows[0]) == 0:
        return []
    ex = max((len(r) - 1 for r in rows if r), default=0)
    if m == 0:
        # Res(A, b0(x)) = b0(x)^n
        out = [1]
        for _ in range(n):
            out = _zmul(out, rows[0])
        return out
    deg_bound = n * ex
    npts = deg_bound + 1
    pts = [0]
    step = 1
    while len(pts) < npts:
        pts.append(step)
        if len(pts) < npts:
            pts.append(-step)
        step += 1
    # Hadamard-style bit bound on the Sylvester determinant entries
    x_abs = max(abs(t) for t in pts) or 1
    a_norm = sum(abs(c) for c in a_int) or 1
    b_norm = 0
    for r in rows:
        val = 0
        powx = 1
        for c in r:
            val += abs(c) * powx
            powx *= x_abs
        b_norm = max(b_norm, val)
    b_norm = b_norm or 1
    bits = m * a_norm.bit_length() + n * (b_norm.bit_length() + 1) + (n + m) + 8
    primes = _prime_pool(bits // 61 + 1)
    residues = []
    for q in primes:
        vals = []
        for t in pts:
            bt = _zstrip([_zeval(r, t) % q for r in rows])
            vals.append(_res_mod(a_int, bt, q))
        residues.append(_interp_mod([t % q for t in pts], vals, q))
    # CRT per coefficient, symmetric lift
    mod = 1
    acc = [0] * npts
    for q, poly in zip(primes, residues):
        poly = poly + [0] * (npts - len(poly))
        if mod == 1:
            acc = list(poly)
            mod = q
            continue
        inv = pow(mod % q, -1, q)
        for i in range(npts):
            diff = (poly[i] - acc[i]) % q
            acc[i] = acc[i] + mod * (diff * inv % q)
        mod *= q
    half = mod // 2
    out = [c - mod if c > half else c for c in acc]
    return _zstrip(out)

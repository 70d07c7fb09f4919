"""Number fields QQ[x]/(f), their elements, embeddings and composita.

Elements are power-basis coordinate vectors stored as an integer vector
with a common positive denominator, so the hot multiplication path stays
in integer arithmetic (the defining polynomial is monic integral, hence
reduction rows are integral).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import PrimitiveSearchExhausted
from .exactpoly import (RatPoly, bivar_resultant_y, factor_over_q, parse_poly,
                        poly_gcd)
from .linalg import FractionSpan, lcm_list

_FIELD_CACHE: dict[tuple, "NumberField"] = {}


class NumberField:
    """An absolute field QQ[x]/(f) for monic irreducible integral f."""

    def __init__(self, poly, check_irreducible: bool = True):
        poly = parse_poly(poly)
        if not poly.is_monic:
            raise ValueError("defining polynomial must be monic")
        zz = poly.int_coeffs()  # raises when not integral
        if poly.degree < 1:
            raise ValueError("defining polynomial must have degree >= 1")
        if check_irreducible and poly.degree > 1:
            facs = factor_over_q(poly)
            if len(facs) != 1:
                raise ValueError(
                    f"{poly.to_string()} is reducible over QQ: "
                    + " * ".join(g.to_string() for g in facs))
        self.poly = poly
        self.degree = poly.degree
        n = self.degree
        # integral reduction rows: x^(n+j) mod f for j = 0..n-2
        rows = []
        cur = [-c for c in zz[:n]]  # x^n mod f
        rows.append(list(cur))
        for _ in range(n - 2):
            nxt = [0] + cur[: n - 1]
            top = cur[n - 1]
            if top:
                for i in range(n):
                    nxt[i] -= top * zz[i]
            rows.append(nxt)
            cur = nxt
        self._red_rows = [tuple(r) for r in rows]

    @property
    def key(self):
        return tuple(int(c) for c in self.poly.coeffs)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"NumberField({self.poly.to_string()!r})"

    # -- element constructors

    def element(self, coords) -> "NFElement":
        cs = [Fraction(c) for c in coords]
        if len(cs) > self.degree:
            raise ValueError("coordinate vector longer than the field degree")
        cs += [Fraction(0)] * (self.degree - len(cs))
        den = lcm_list([c.denominator for c in cs] or [1])
        return NFElement(self, den, tuple(int(c * den) for c in cs))

    def from_int_vec(self, den: int, nums) -> "NFElement":
        return NFElement(self, den, tuple(nums))

    def zero(self):
        return NFElement(self, 1, (0,) * self.degree)

    def one(self):
        return NFElement(self, 1, (1,) + (0,) * (self.degree - 1))

    def gen(self):
        if self.degree == 1:
            # x - a: generator is the rational root a
            return self.element([-self.poly.coeffs[0]])
        return self.element([0, 1])

    def rational(self, c):
        return self.element([c])

    def from_poly(self, f: RatPoly) -> "NFElement":
        """Image of a rational polynomial evaluated at the generator."""
        return f(self.gen())

    def _reduce_int(self, conv):
        """Reduce an integer convolution (length <= 2n-1) mod the defining poly."""
        n = self.degree
        out = list(conv[:n]) + [0] * (n - len(conv[:n]))
        for k in range(n, len(conv)):
            c = conv[k]
            if c:
                row = self._red_rows[k - n]
                for i in range(n):
                    out[i] += c * row[i]
        return out


def field_for(poly, check_irreducible: bool = True) -> NumberField:
    """Cached field construction keyed on the defining coefficients."""
    poly = parse_poly(poly)
    key = tuple(int(c) for c in poly.coeffs)
    K = _FIELD_CACHE.get(key)
    if K is None:
        K = NumberField(poly, check_irreducible=check_irreducible)
        _FIELD_CACHE[key] = K
    return K


def _normalize(den, nums):
    g = den
    for v in nums:
        g = math.gcd(g, v)
        if g == 1:
            break
    if g > 1:
        den //= g
        nums = tuple(v // g for v in nums)
    return den, tuple(nums)


class NFElement:
    """Element of a NumberField in power-basis coordinates (nums/den)."""

    __slots__ = ("field", "den", "nums")

    def __init__(self, field: NumberField, den: int, nums):
        if den < 0:
            den, nums = -den, tuple(-v for v in nums)
        den, nums = _normalize(den, tuple(nums))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "nums", nums)

    def __setattr__(self, *a):
        raise AttributeError("NFElement is immutable")

    @property
    def coords(self):
        return tuple(Fraction(v, self.den) for v in self.nums)

    @property
    def is_zero(self):
        return not any(self.nums)

    @property
    def is_rational(self):
        return not any(self.nums[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("element is not rational")
        return Fraction(self.nums[0], self.den)

    def sort_key(self):
        return tuple((v.numerator, v.denominator) for v in self.coords)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        return (isinstance(other, NFElement) and self.field.key == other.field.key
                and self.den == other.den and self.nums == other.nums)

    def __hash__(self):
        return hash((self.field.key, self.den, self.nums))

    def __repr__(self):
        return f"<{[str(c) for c in self.coords]} in {self.field.poly.to_string()}>"

    def _check(self, other):
        if self.field.key != other.field.key:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        self._check(other)
        da, db = self.den, other.den
        g = math.gcd(da, db)
        l = da // g * db
        fa, fb = l // da, l // db
        return NFElement(self.field, l,
                         tuple(fa * a + fb * b for a, b in zip(self.nums, other.nums)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, self.den, tuple(-v for v in self.nums))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return NFElement(self.field, self.den, tuple(other * v for v in self.nums))
        if isinstance(other, Fraction):
            return NFElement(self.field, self.den * other.denominator,
                             tuple(other.numerator * v for v in self.nums))
        self._check(other)
        a, b = self.nums, other.nums
        n = self.field.degree
        conv = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        return NFElement(self.field, self.den * other.den,
                         tuple(self.field._reduce_int(conv)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "NFElement":
        if self.is_zero:
            raise ZeroDivisionError("inversion of zero")
        # extended euclid in QQ[x] against the defining polynomial
        f = self.field.poly
        a = RatPoly(self.coords)
        r0, r1 = f, a
        t0, t1 = RatPoly(), RatPoly((1,))
        while not r1.is_zero:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, t0 - q * t1
        if r0.degree != 0:
            raise ZeroDivisionError("element is a zero divisor (reducible modulus?)")
        inv_poly = t0 * (1 / r0.lc)
        return self.field.element(list(inv_poly.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            fr = Fraction(other)
            return NFElement(self.field, self.den * fr.numerator,
                             tuple(fr.denominator * v for v in self.nums))
        self._check(other)
        return self * other.inverse()


def nf_arith(op: str, x: NFElement, y: NFElement | None = None) -> NFElement:
    """Dispatch wrapper: op in {"add", "mul", "inv"}."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown operation {op!r}")


def min_poly(x: NFElement) -> RatPoly:
    """Monic minimal polynomial of x over QQ; its degree divides [K:QQ]."""
    span = FractionSpan()
    power = x.field.one()
    while True:
        vec = power.coords
        expr = span.express(vec)
        if expr is not None:
            k = span.count - 1  # powers added so far: x^0 .. x^(k-1)
            coeffs = [-c for c in expr] + [Fraction(1)]
            return RatPoly(coeffs)
        span.add(vec)
        power = power * x


# ---------------------------------------------------------------------------
# embeddings


class EmbeddingMap:
    """Field embedding K -> L given by the image of K's generator."""

    def __init__(self, source: NumberField, target: NumberField,
                 image_of_generator: NFElement):
        if image_of_generator.field.key != target.key:
            raise ValueError("image lives in the wrong field")
        if not source.poly(image_of_generator).is_zero:
            raise ValueError("defining polynomial does not vanish at the image")
        self.source = source
        self.target = target
        self.image_of_generator = image_of_generator
        n = source.degree
        pows = [target.one()]
        for _ in range(n - 1):
            pows.append(pows[-1] * image_of_generator)
        self._powers = pows

    def apply(self, x: NFElement) -> NFElement:
        if x.field.key != self.source.key:
            raise ValueError("element does not belong to the embedding source")
        acc = self.target.zero()
        for c, pw in zip(x.coords, self._powers):
            if c:
                acc = acc + pw * c
        return acc

    def __repr__(self):
        return (f"EmbeddingMap({self.source.poly.to_string()} -> "
                f"{self.target.poly.to_string()})")


def identity_embedding(K: NumberField) -> EmbeddingMap:
    return EmbeddingMap(K, K, K.gen())


def compose_embeddings(outer: EmbeddingMap, inner: EmbeddingMap) -> EmbeddingMap:
    if inner.target.key != outer.source.key:
        raise ValueError("embeddings do not compose")
    return EmbeddingMap(inner.source, outer.target,
                        outer.apply(inner.image_of_generator))


# ---------------------------------------------------------------------------
# polynomials with NFElement coefficients


class NfPoly:
    """Dense polynomial over a NumberField, ascending coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("NfPoly is immutable")

    @staticmethod
    def from_ratpoly(f: RatPoly, K: NumberField) -> "NfPoly":
        return NfPoly(K, [K.rational(c) for c in f.coeffs])

    def to_ratpoly(self) -> RatPoly:
        return RatPoly([c.as_fraction() for c in self.coeffs])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero()

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def __eq__(self, other):
        return (isinstance(other, NfPoly) and self.field.key == other.field.key
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def __repr__(self):
        return f"NfPoly({[str(RatPoly(c.coords).to_string()) for c in self.coeffs]})"

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in self.coeffs))

    def __add__(self, other):
        a, b = list(self.coeffs), list(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return NfPoly(self.field, out)

    def __neg__(self):
        return NfPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NFElement)):
            return NfPoly(self.field, [c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return NfPoly(self.field)
        out = [self.field.zero() for _ in range(len(a) + len(b) - 1)]
        for i, x in enumerate(a):
            if not x.is_zero:
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
        return NfPoly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        d = other.degree
        inv = other.lc.inverse()
        rem = list(self.coeffs)
        q = [self.field.zero()] * max(0, len(rem) - d)
        while len(rem) - 1 >= d:
            if rem[-1].is_zero:
                rem.pop()
                continue
            k = len(rem) - 1 - d
            f = rem[-1] * inv
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - f * c
            rem.pop()
        return NfPoly(self.field, q), NfPoly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: NFElement) -> NFElement:
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self):
        if self.is_zero or self.is_monic:
            return self
        inv = self.lc.inverse()
        return NfPoly(self.field, [c * inv for c in self.coeffs])

    def derivative(self):
        return NfPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def shift_arg(self, delta: NFElement) -> "NfPoly":
        """Compose with x + delta: returns self(x + delta)."""
        K = self.field
        out = NfPoly(K)
        lin = NfPoly(K, [delta, K.one()])
        for c in reversed(self.coeffs):
            out = out * lin + NfPoly(K, [c])
        return out

    def map_coeffs(self, emb: EmbeddingMap) -> "NfPoly":
        return NfPoly(emb.target, [emb.apply(c) for c in self.coeffs])


# ---------------------------------------------------------------------------
# norms and Trager factorization


def norm_to_q(g: NfPoly) -> RatPoly:
    """Norm of g from K[x] down to QQ[x]: Res_y(f_K(y), G(x, y))."""
    K = g.field
    n = K.degree
    den = lcm_list([c.den for c in g.coeffs] or [1])
    # rows[j] = integer x-polynomial coefficient of y^j in den*G(x,y)
    rows = [[0] * (g.degree + 1) for _ in range(n)]
    for i, c in enumerate(g.coeffs):
        scale = den // c.den
        for j, v in enumerate(c.nums):
            rows[j][i] = v * scale
    res_int = bivar_resultant_y(K.poly.int_coeffs(), rows)
    scale = Fraction(1, den ** n)
    return RatPoly([Fraction(c) * scale for c in res_int])


def _nf_squarefree(f: NfPoly):
    """Yun decomposition over a number field (characteristic zero)."""
    out = []
    g = f.gcd(f.derivative())
    b = (f // g).monic()
    c = f.derivative() // g
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = b.gcd(d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def _trager_factor_squarefree(g: NfPoly):
    """Irreducible monic factors of a squarefree monic g over its field."""
    K = g.field
    if g.degree <= 1:
        return [g]
    if K.degree == 1:
        f = g.to_ratpoly()
        return sorted((NfPoly.from_ratpoly(h.monic(), K) for h in factor_over_q(f)),
                      key=NfPoly.sort_key)
    theta = K.gen()
    s = 0
    seq = [0]
    for k in range(1, 40):
        seq.extend([k, -k])
    for s in seq:
        shifted = g.shift_arg(theta * (-s)) if s else g  # g(x - s*theta)
        nrm = norm_to_q(shifted)
        if poly_gcd(nrm, nrm.derivative()).degree == 0:
            break
    else:
        raise PrimitiveSearchExhausted("no squarefree norm shift found")
    factors = []
    for h in factor_over_q(nrm):
        cand = NfPoly.from_ratpoly(h, K).monic()
        w = shifted.gcd(cand)
        if w.degree > 0:
            factors.append(w.shift_arg(theta * s) if s else w)
    # sanity: degrees account for all of g
    if sum(w.degree for w in factors) != g.degree:
        raise ArithmeticError("norm factorization did not cover the input")
    return sorted(factors, key=NfPoly.sort_key)


def factor_over_nf(f, K: NumberField):
    """Factor f over the number field K into monic irreducible NfPoly.

    Accepts a RatPoly (or text form) or an NfPoly over K; repeated factors
    appear with multiplicity; the product equals f divided by its leading
    coefficient.
    """
    if isinstance(f, NfPoly):
        g = f
        if g.field.key != K.key:
            raise ValueError("polynomial lives over a different field")
    else:
        g = NfPoly.from_ratpoly(parse_poly(f), K)
    if g.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    g = g.monic()
    if g.degree == 0:
        return []
    out = []
    for part, mult in _nf_squarefree(g):
        for irr in _trager_factor_squarefree(part):
            out.extend([irr] * mult)
    out.sort(key=NfPoly.sort_key)
    return out


# ---------------------------------------------------------------------------
# primitive-element adjunction and composita


def adjoin_root(K: NumberField, h: NfPoly, mix_bound: int = 20):
    """Adjoin a root of the monic irreducible h over K.

    Returns (L, emb, alpha, c) with emb : K -> L, alpha in L a root of h,
    and L = QQ(alpha + c*theta_K) for the mixing integer c.
    When h is linear the field is unchanged (identity embedding).
    """
    if not h.is_monic:
        raise ValueError("relative polynomial must be monic")
    if h.degree == 1:
        alpha = -h.coeffs[0]
        return K, identity_embedding(K), alpha, 0
    d = h.degree
    n = K.degree
    D = d * n
    # arithmetic in A = K[y]/(h): elements are length-d lists of NFElement
    red = []
    cur = [-c for c in h.coeffs[:d]]
    red.append(list(cur))
    for _ in range(d - 2):
        nxt = [K.zero()] + cur[: d - 1]
        top = cur[d - 1]
        if not top.is_zero:
            for i in range(d):
                nxt[i] = nxt[i] - top * h.coeffs[i]
        red.append(nxt)
        cur = nxt

    def amul(a, b):
        conv = [K.zero()] * (2 * d - 1)
        for i, x in enumerate(a):
            if not x.is_zero:
                for j, y in enumerate(b):
                    conv[i + j] = conv[i + j] + x * y
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if not c.is_zero:
                row = red[k - d]
                for i in range(d):
                    out[i] = out[i] + c * row[i]
        return out

    def flatten(a):
        vec = []
        for comp in a:
            vec.extend(comp.coords)
        return vec

    alpha_rel = [K.zero(), K.one()] + [K.zero()] * (d - 2)
    theta_rel = [K.gen()] + [K.zero()] * (d - 1)
    one_rel = [K.one()] + [K.zero()] * (d - 1)

    cand = []
    for k in range(1, mix_bound + 1):
        cand.extend([k, -k])
    for c in cand:
        gamma = [a + t * c for a, t in zip(alpha_rel, theta_rel)]
        span = FractionSpan()
        pw = one_rel
        powers = [pw]
        ok = True
        for _ in range(D):
            if not span.add(flatten(pw)):
                ok = False
                break
            pw = amul(pw, gamma)
            powers.append(pw)
        if not ok:
            continue
        expr = span.express(flatten(pw))
        if expr is None:
            raise ArithmeticError("power of gamma escaped its own span")
        mp = RatPoly([-e for e in expr] + [Fraction(1)])
        if not mp.is_integral:
            raise ArithmeticError("primitive element is integral but its "
                                  "minimal polynomial is not")
        L = field_for(mp, check_irreducible=False)
        theta_expr = span.express(flatten(theta_rel))
        alpha_expr = span.express(flatten(alpha_rel))
        emb = EmbeddingMap(K, L, L.element(theta_expr))
        alpha = L.element(alpha_expr)
        if not h.map_coeffs(emb)(alpha).is_zero:
            raise ArithmeticError("adjoined root fails its defining relation")
        return L, emb, alpha, c
    raise PrimitiveSearchExhausted(
        f"no primitive element with |c| <= {mix_bound}")


class CompositumField:
    """One compositum of K1 and K2 with exact embeddings of both."""

    def __init__(self, index, field, embed1, embed2, mix_coeff):
        self.index = index
        self.field = field
        self.embed1 = embed1
        self.embed2 = embed2
        self.mix_coeff = mix_coeff

    def __repr__(self):
        return (f"CompositumField(#{self.index}, deg {self.field.degree}, "
                f"{self.field.poly.to_string()})")


def compositum(K1: NumberField, K2: NumberField, mix_bound: int = 20):
    """All composita of K1 and K2, one per irreducible factor of K1's
    defining polynomial over K2, each with embeddings of both fields.

    Every returned degree is a multiple of lcm(deg K1, deg K2) and is at
    most deg K1 * deg K2.
    """
    out = []
    for idx, h in enumerate(factor_over_nf(K1.poly, K2)):
        L, emb2, alpha, c = adjoin_root(K2, h)
        emb1 = EmbeddingMap(K1, L, alpha)
        D = L.degree
        n1, n2 = K1.degree, K2.degree
        l = n1 // math.gcd(n1, n2) * n2
        # both fields embed, so lcm(n1, n2) | D; and D = deg(h) * n2 <= n1*n2
        if D % l or D > n1 * n2:
            raise ArithmeticError(
                f"compositum degree {D} violates lcm/product bounds for "
                f"({n1}, {n2})")
        out.append(CompositumField(idx, L, emb1, emb2, c))
    return out


def embed_subfield(K_sub: NumberField, L: NumberField):
    """All embeddings of K_sub into L (roots of its defining poly in L)."""
    roots = []
    for h in factor_over_nf(K_sub.poly, L):
        if h.degree == 1:
            roots.append(-h.coeffs[0])
    roots.sort(key=NFElement.sort_key)
    return [EmbeddingMap(K_sub, L, r) for r in roots]

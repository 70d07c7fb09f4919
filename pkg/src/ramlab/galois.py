"""Splitting fields, automorphism groups, and ramification subgroups.

The automorphism group of a splitting field is found by extending the
identity along the tower QQ(r_1) <= QQ(r_1, r_2) <= ... of the tracked
roots: at each step the image of the next root must be a root of the
(coefficient-mapped) relative minimal polynomial.  This is exhaustive
exact linear algebra; no numerical approximation anywhere.

Group-side ramification data (decomposition, inertia and wild-inertia
subgroups) is computed from the prime decomposition of the splitting
field and cross-checks the ideal-theoretic path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded
from .exactpoly import RatPoly, factor_over_q, parse_poly, poly_gcd
from .linalg import FractionSpan, lcm_list
from .maximalorder import PrimeIdeal, order_and_primes
from .numberfield import (EmbeddingMap, NFElement, NfPoly, NumberField,
                          adjoin_root, factor_over_nf, field_for)

_SPLIT_CACHE: dict[tuple, object] = {}


class SplittingField:
    """A normal field containing every root of base_poly, with the roots."""

    def __init__(self, field: NumberField, roots, base_poly: RatPoly):
        self.field = field
        self.roots = list(roots)
        self.base_poly = base_poly
        self._auts = None
        self._mult = None
        self._inv = None
        self._chains = {}

    def __repr__(self):
        return (f"SplittingField(deg {self.field.degree} for "
                f"{self.base_poly.to_string()})")


def splitting_field(f, degree_cap: int = 24) -> SplittingField:
    """Splitting field of a monic squarefree integer polynomial.

    Roots are adjoined one at a time through a primitive element; the
    projected degree is checked against the cap before every adjunction.
    """
    f = parse_poly(f)
    if not f.is_monic:
        raise ValueError("polynomial must be monic")
    f.int_coeffs()
    if poly_gcd(f, f.derivative()).degree != 0:
        raise ValueError("polynomial must be squarefree")
    key = (tuple(f.coeffs), degree_cap)
    cached = _SPLIT_CACHE.get(key)
    if cached is not None:
        if isinstance(cached, CapExceeded):
            raise cached
        return cached
    try:
        result = _build_splitting_field(f, degree_cap)
    except CapExceeded as exc:
        _SPLIT_CACHE[key] = exc
        raise
    _SPLIT_CACHE[key] = result
    return result


def _build_splitting_field(f: RatPoly, degree_cap: int) -> SplittingField:
    L = field_for(RatPoly((0, 1)), check_irreducible=False)  # QQ as QQ[x]/(x)
    roots: list[NFElement] = []
    pending = [NfPoly.from_ratpoly(g, L) for g in factor_over_q(f)]
    while True:
        nonlinear = []
        for g in pending:
            if g.degree == 1:
                roots.append(-g.coeffs[0])
            else:
                nonlinear.append(g)
        if not nonlinear:
            break
        nonlinear.sort(key=NfPoly.sort_key)
        h = nonlinear[0]
        if L.degree * h.degree > degree_cap:
            raise CapExceeded(
                f"splitting field degree exceeds {degree_cap} "
                f"(at {L.degree} * {h.degree})")
        L2, emb, alpha, _ = adjoin_root(L, h)
        roots = [emb.apply(r) for r in roots]
        pending = []
        for g in nonlinear:
            gm = g.map_coeffs(emb)
            if g is h:
                gm = gm // NfPoly(L2, [-alpha, L2.one()])
                roots.append(alpha)
            if gm.degree >= 1:
                pending.extend(factor_over_nf(gm, L2))
        L = L2
    if len(roots) != f.degree:
        raise ArithmeticError("failed to collect all roots of the polynomial")
    if math.factorial(f.degree) % L.degree:
        raise ArithmeticError("splitting degree does not divide deg(f)!")
    roots.sort(key=NFElement.sort_key)
    prod = NfPoly(L, [L.one()])
    for r in roots:
        prod = prod * NfPoly(L, [-r, L.one()])
    if prod != NfPoly.from_ratpoly(f, L):
        raise ArithmeticError("collected roots do not multiply back to f")
    return SplittingField(L, roots, f)


# ---------------------------------------------------------------------------
# automorphisms


class Automorphism:
    """Automorphism of a splitting field: generator image + root permutation."""

    def __init__(self, parent: SplittingField, index: int,
                 image_of_generator: NFElement, root_permutation):
        self.parent = parent
        self.index = index
        self.image_of_generator = image_of_generator
        self.root_permutation = tuple(root_permutation)
        L = parent.field
        n = L.degree
        pows = [L.one()]
        for _ in range(n - 1):
            pows.append(pows[-1] * image_of_generator)
        den = lcm_list([pw.den for pw in pows])
        self._den = den
        self._rows = [tuple(v * (den // pw.den) for v in pw.nums) for pw in pows]

    def apply(self, x: NFElement) -> NFElement:
        L = self.parent.field
        n = L.degree
        out = [0] * n
        for t, c in enumerate(x.nums):
            if c:
                row = self._rows[t]
                for k in range(n):
                    out[k] += c * row[k]
        return NFElement(L, x.den * self._den, out)

    @property
    def is_identity(self):
        return all(i == j for i, j in enumerate(self.root_permutation))

    def __repr__(self):
        return f"Automorphism#{self.index}{self.root_permutation}"


def _tower_levels(Lp: SplittingField):
    """Relative minimal polynomial data for the root tower.

    Per level: (root, k, coeff_vectors) where the relative minimal
    polynomial is x^k - sum_i c_i x^i and each c_i is recorded by its
    coordinates on the current tower basis.
    """
    L = Lp.field
    basis = [L.one()]
    levels = []
    for r in Lp.roots:
        nb = len(basis)
        span = FractionSpan()
        prods = []  # layer i holds basis * r^i
        rp = L.one()
        k = 0
        coeffs = None
        while True:
            layer = [b * rp for b in basis]
            for el in layer:
                span.add(el.coords)
            prods.extend(layer)
            rp = rp * r
            k += 1
            expr = span.express(rp.coords)
            if expr is not None:
                coeffs = expr
                break
        # coefficient of x^i on basis element b sits at index i*nb + b
        cmat = [[coeffs[i * nb + b] for b in range(nb)] for i in range(k)]
        levels.append((r, k, cmat))
        if k > 1:
            basis = prods
    if len(basis) != L.degree:
        raise ArithmeticError("root tower does not span the splitting field")
    return levels, basis


def automorphism_group(Lp: SplittingField):
    """All automorphisms of the splitting field, faithful on the roots."""
    if Lp._auts is not None:
        return Lp._auts
    L = Lp.field
    roots = Lp.roots
    m = len(roots)
    levels, basis = _tower_levels(Lp)
    # root powers cache: powers[t][i] = roots[t]**i
    maxk = max(k for _, k, _ in levels)
    powers = []
    for t in roots:
        pw = [L.one()]
        for _ in range(maxk):
            pw.append(pw[-1] * t)
        powers.append(pw)

    found = []

    def extend(level: int, sigma_basis, used, perm):
        if level == len(levels):
            found.append((list(perm), list(sigma_basis)))
            return
        r, k, cmat = levels[level]
        nb = len(sigma_basis)
        # mapped minimal-polynomial coefficients
        mapped = []
        for i in range(k):
            acc = L.zero()
            for b in range(nb):
                c = cmat[i][b]
                if c:
                    acc = acc + sigma_basis[b] * c
            mapped.append(acc)
        for t_idx in range(m):
            if used[t_idx]:
                continue
            tpow = powers[t_idx]
            val = tpow[k]
            for i in range(k):
                if not mapped[i].is_zero:
                    val = val - mapped[i] * tpow[i]
            if not val.is_zero:
                continue
            if k > 1:
                new_sigma = []
                for i in range(k):
                    ti = tpow[i]
                    for b in sigma_basis:
                        new_sigma.append(b * ti)
            else:
                new_sigma = sigma_basis
            used[t_idx] = True
            perm.append(t_idx)
            extend(level + 1, new_sigma, used, perm)
            perm.pop()
            used[t_idx] = False

    extend(0, [L.one()], [False] * m, [])
    # express the generator on the tower basis once
    span = FractionSpan()
    for b in basis:
        span.add(b.coords)
    gen_coords = span.express(L.gen().coords)
    if gen_coords is None:
        raise ArithmeticError("generator escapes the tower basis")
    auts = []
    for idx, (perm, sigma_basis) in enumerate(sorted(found)):
        img = L.zero()
        for c, b in zip(gen_coords, sigma_basis):
            if c:
                img = img + b * c
        auts.append(Automorphism(Lp, idx, img, perm))
    if len(auts) != L.degree:
        raise ArithmeticError(
            f"found {len(auts)} automorphisms for a degree-{L.degree} "
            "normal field")
    perms = {a.root_permutation for a in auts}
    if len(perms) != len(auts):
        raise ArithmeticError("automorphisms are not faithful on the roots")
    Lp._auts = auts
    return auts


def _mult_table(Lp: SplittingField):
    """table[i][j] = index of (automorphism i after automorphism j)."""
    if Lp._mult is not None:
        return Lp._mult
    auts = automorphism_group(Lp)
    by_perm = {a.root_permutation: a.index for a in auts}
    size = len(auts)
    table = [[0] * size for _ in range(size)]
    for a in auts:
        pa = a.root_permutation
        for b in auts:
            pb = b.root_permutation
            comp = tuple(pa[pb[i]] for i in range(len(pa)))
            table[a.index][b.index] = by_perm[comp]
    inv = [0] * size
    ident = by_perm[tuple(range(len(auts[0].root_permutation)))]
    for a in auts:
        for b in auts:
            if table[a.index][b.index] == ident:
                inv[a.index] = b.index
    Lp._mult = (table, inv, ident)
    return Lp._mult


# ---------------------------------------------------------------------------
# subgroups


class SubgroupHandle:
    """Subgroup of the automorphism group as a member bitmask."""

    def __init__(self, parent: SplittingField, members: int, label: str = "other"):
        self.parent = parent
        self.members = members
        self.label = label
        table, inv, ident = _mult_table(parent)
        if not (members >> ident) & 1:
            raise ValueError("subgroup must contain the identity")
        for i in self.indices():
            if not (members >> inv[i]) & 1:
                raise ValueError("subgroup not closed under inversion")
            for j in self.indices():
                if not (members >> table[i][j]) & 1:
                    raise ValueError("subgroup not closed under composition")

    def indices(self):
        m = self.members
        i = 0
        while m:
            if m & 1:
                yield i
            m >>= 1
            i += 1

    @property
    def order(self) -> int:
        return bin(self.members).count("1")

    def contains(self, idx: int) -> bool:
        return (self.members >> idx) & 1 == 1

    def intersect(self, other: "SubgroupHandle", label: str = "other"):
        return SubgroupHandle(self.parent, self.members & other.members, label)

    def conjugate_mask(self, sigma: int) -> int:
        table, inv, _ = _mult_table(self.parent)
        out = 0
        si = inv[sigma]
        for i in self.indices():
            out |= 1 << table[table[sigma][i]][si]
        return out

    def is_normal_in(self, other: "SubgroupHandle") -> bool:
        for s in other.indices():
            if self.conjugate_mask(s) != self.members:
                return False
        return True

    def __repr__(self):
        return f"SubgroupHandle({self.label}, order {self.order})"


def full_group(Lp: SplittingField) -> SubgroupHandle:
    size = len(automorphism_group(Lp))
    return SubgroupHandle(Lp, (1 << size) - 1, "full")


def fixed_subgroup(Lp: SplittingField, emb: EmbeddingMap,
                   label: str = "other") -> SubgroupHandle:
    """Automorphisms fixing the embedded image of a subfield generator."""
    if emb.target.key != Lp.field.key:
        raise ValueError("embedding does not land in the splitting field")
    target = emb.image_of_generator
    mask = 0
    for a in automorphism_group(Lp):
        if a.apply(target) == target:
            mask |= 1 << a.index
    sub = SubgroupHandle(Lp, mask, label)
    expected, rem = divmod(Lp.field.degree, emb.source.degree)
    if rem or sub.order != expected:
        raise ArithmeticError("fixed subgroup order differs from the "
                              "degree-derived index")
    return sub


# ---------------------------------------------------------------------------
# inertia machinery


@dataclass
class InertiaChain:
    prime: PrimeIdeal
    decomposition: SubgroupHandle
    inertia: SubgroupHandle
    wild: SubgroupHandle
    all_primes: list


def _maps_module_into(aut: Automorphism, rows, q: PrimeIdeal, power: int) -> bool:
    order = q.order
    for r in rows:
        img = aut.apply(order.element_from_coords(r))
        if not q.val_at_least(img, power):
            return False
    return True


def inertia_chain(Lp: SplittingField, p: int, degree_cap=None,
                  prime_bound=None) -> InertiaChain:
    """Decomposition, inertia and wild-inertia groups at the first prime
    of the splitting field above p."""
    if p in Lp._chains:
        return Lp._chains[p]
    order, primes = order_and_primes(Lp.field.poly, p,
                                     degree_cap or Lp.field.degree,
                                     prime_bound)
    q = primes[0]
    auts = automorphism_group(Lp)
    dmask = 0
    for a in auts:
        if _maps_module_into(a, q.hnf, q, 1):
            dmask |= 1 << a.index
    D = SubgroupHandle(Lp, dmask, "decomposition")
    basis_elems = order.basis_elements()
    g0mask = 0
    for i in D.indices():
        a = auts[i]
        if all(q.val_at_least(a.apply(b) - b, 1) for b in basis_elems):
            g0mask |= 1 << i
    G0 = SubgroupHandle(Lp, g0mask, "inertia")
    g1mask = 0
    for i in G0.indices():
        a = auts[i]
        if all(q.val_at_least(a.apply(b) - b, 2) for b in basis_elems):
            g1mask |= 1 << i
    G1 = SubgroupHandle(Lp, g1mask, "wild_inertia")
    if G0.order != q.e:
        raise ArithmeticError(
            f"inertia order {G0.order} differs from ramification index {q.e}")
    chain = InertiaChain(q, D, G0, G1, primes)
    Lp._chains[p] = chain
    return chain


def e_via_groups(G0: SubgroupHandle, gamma: SubgroupHandle) -> int:
    """Ramification index from group data: |G0| / |G0 ∩ gamma|."""
    inter = G0.members & gamma.members
    a = G0.order
    b = bin(inter).count("1")
    if a % b:
        raise ArithmeticError("inertia order not divisible by the "
                              "intersection order (internal fault)")
    return a // b


@dataclass
class StructureReport:
    inertia_order: int
    wild_order: int
    wild_normal: bool
    wild_is_p_group: bool
    quotient_cyclic: bool
    quotient_order_coprime_p: bool
    residue_hom_multiplicative: bool
    residue_hom_kernel_is_wild: bool

    def all_hold(self) -> bool:
        return (self.wild_normal and self.wild_is_p_group
                and self.quotient_cyclic and self.quotient_order_coprime_p
                and self.residue_hom_multiplicative
                and self.residue_hom_kernel_is_wild)


def structure_report(G0: SubgroupHandle, G1: SubgroupHandle, q: PrimeIdeal,
                     p: int) -> StructureReport:
    """Exhaustive verification of the inertia-group structure at q."""
    Lp = G0.parent
    table, inv, ident = _mult_table(Lp)
    auts = automorphism_group(Lp)
    g0 = list(G0.indices())
    g1set = set(G1.indices())
    # normality of the wild subgroup inside the inertia group
    wild_normal = all(
        table[table[s][t]][inv[s]] in g1set for s in g0 for t in g1set)
    # wild order is a p-power
    w = G1.order
    while w % p == 0:
        w //= p
    wild_is_p_group = (w == 1)
    # cyclic tame quotient of order coprime to p
    qorder = G0.order // G1.order
    quotient_coprime = (qorder % p != 0) if qorder > 1 else True
    cyclic = False
    for s in g0:
        k = 1
        cur = s
        while cur not in g1set:
            cur = table[cur][s]
            k += 1
        if k == qorder:
            cyclic = True
            break
    if qorder == 1:
        cyclic = True
    # residue homomorphism s -> s(pi)/pi mod q on the inertia group
    pi = q.uniformizer
    tau = q.anti_uniformizer()
    base = q.residue_of(pi * tau)
    base_inv = q.residue_inv(base)
    values = {}
    for s in g0:
        num = q.residue_of(auts[s].apply(pi) * tau)
        values[s] = q.residue_mul(num, base_inv)
    one = q.residue_one()
    multiplicative = all(
        values[table[s][t]] == q.residue_mul(values[s], values[t])
        for s in g0 for t in g0)
    kernel = {s for s in g0 if values[s] == one}
    kernel_is_wild = (kernel == g1set)
    return StructureReport(
        inertia_order=G0.order,
        wild_order=G1.order,
        wild_normal=wild_normal,
        wild_is_p_group=wild_is_p_group,
        quotient_cyclic=cyclic,
        quotient_order_coprime_p=quotient_coprime,
        residue_hom_multiplicative=multiplicative,
        residue_hom_kernel_is_wild=kernel_is_wild,
    )


# ---------------------------------------------------------------------------
# helpers for per-prime matching used by the theorem harness


def prime_image_index(Lp: SplittingField, chain: InertiaChain, sigma: int):
    """Index (within chain.all_primes) of sigma(q') for the chain prime."""
    aut = automorphism_group(Lp)[sigma]
    order = chain.prime.order
    imgs = [aut.apply(order.element_from_coords(r)) for r in chain.prime.hnf]
    for l, cand in enumerate(chain.all_primes):
        if all(cand.val_at_least(im, 1) for im in imgs):
            return l
    raise ArithmeticError("automorphism image of the prime was not found")


def double_cosets(Lp: SplittingField, left: SubgroupHandle,
                  right: SubgroupHandle):
    """Partition of the group into left\\G/right cosets (sorted reps)."""
    table, _, _ = _mult_table(Lp)
    size = len(automorphism_group(Lp))
    seen = [False] * size
    out = []
    for s in range(size):
        if seen[s]:
            continue
        block = set()
        for g in left.indices():
            gs = table[g][s]
            for d in right.indices():
                block.add(table[gs][d])
        for b in block:
            seen[b] = True
        out.append((s, sorted(block)))
    return out

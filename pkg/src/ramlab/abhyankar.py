"""Theorem harness: per-prime lcm/divisibility laws for ramification in
composita, checked through two independent pathways.

Pathway A decomposes primes in a compositum by exact ideal arithmetic
and restricts them to both constituents.  Pathway B computes the same
ramification indices from inertia groups in the normal closure, when
the closure fits under the degree cap.  Every report carries per-prime
verdicts plus the group-theoretic identities behind the lcm law.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import CapExceeded
from .exactpoly import (RatPoly, discriminant, factor_over_q, is_prime,
                        parse_poly, squarefree_radical)
from .galois import (InertiaChain, SplittingField, StructureReport,
                     automorphism_group, double_cosets, e_via_groups,
                     fixed_subgroup, full_group, inertia_chain,
                     prime_image_index, splitting_field, structure_report)
from .maximalorder import order_and_primes, restrict_prime
from .numberfield import (CompositumField, EmbeddingMap, compose_embeddings,
                          compositum, field_for)

_COMPOSITA_CACHE: dict[tuple, list] = {}


@dataclass
class Instance:
    """A checker instance: two defining polynomials, a prime, and which
    compositum to use when several exist."""
    f1: RatPoly
    f2: RatPoly
    p: int
    compositum_index: int = 0

    def __post_init__(self):
        self.f1 = parse_poly(self.f1)
        self.f2 = parse_poly(self.f2)

    def key(self):
        return (tuple(self.f1.coeffs), tuple(self.f2.coeffs), self.p,
                self.compositum_index)


@dataclass
class PrimeCheck:
    """Per-prime verdict record for one prime of the compositum above p."""
    e_q: int
    f_q: int
    e1: int
    e2: int
    tame1: bool
    tame2: bool
    lcm: int
    divides_product: bool
    verdict_eq1: bool
    verdict_theorem: str
    verdict_corollary: str
    verdict_narkiewicz: str
    verdict_eq2: str = "not-applicable"
    d: int | None = None
    pathway_agreement: bool | None = None
    restriction_divides: bool | None = None

    def to_json_dict(self):
        return {
            "e_q": self.e_q, "f_q": self.f_q, "e1": self.e1, "e2": self.e2,
            "tame1": self.tame1, "tame2": self.tame2, "lcm": self.lcm,
            "d": self.d, "divides_product": self.divides_product,
            "verdict_eq1": self.verdict_eq1,
            "verdict_theorem": self.verdict_theorem,
            "verdict_eq2": self.verdict_eq2,
            "verdict_corollary": self.verdict_corollary,
            "verdict_narkiewicz": self.verdict_narkiewicz,
            "pathway_agreement": self.pathway_agreement,
            "restriction_divides": self.restriction_divides,
        }


@dataclass
class GaloisSummary:
    """Group-side data for an instance; skipped when the closure is too big."""
    skipped: bool
    reason: str | None = None
    closure_degree: int | None = None
    group_order: int | None = None
    inertia_order: int | None = None
    wild_order: int | None = None
    gamma_is_intersection: bool | None = None
    k1_normal: bool | None = None
    k2_normal: bool | None = None
    lcm_gcd_identity: bool | None = None
    eq_wild_gcd: str = "not-applicable"
    eq_tame_gcd: str = "not-applicable"
    wild_inside_tame_fixer: bool | None = None
    structure: StructureReport | None = None

    def to_json_dict(self):
        out = {
            "skipped": self.skipped, "reason": self.reason,
            "closure_degree": self.closure_degree,
            "group_order": self.group_order,
            "inertia_order": self.inertia_order,
            "wild_order": self.wild_order,
            "gamma_is_intersection": self.gamma_is_intersection,
            "k1_normal": self.k1_normal, "k2_normal": self.k2_normal,
            "lcm_gcd_identity": self.lcm_gcd_identity,
            "eq_wild_gcd": self.eq_wild_gcd,
            "eq_tame_gcd": self.eq_tame_gcd,
            "wild_inside_tame_fixer": self.wild_inside_tame_fixer,
            "structure": None,
        }
        if self.structure is not None:
            s = self.structure
            out["structure"] = {
                "inertia_order": s.inertia_order,
                "wild_order": s.wild_order,
                "wild_normal": s.wild_normal,
                "wild_is_p_group": s.wild_is_p_group,
                "quotient_cyclic": s.quotient_cyclic,
                "quotient_order_coprime_p": s.quotient_order_coprime_p,
                "residue_hom_multiplicative": s.residue_hom_multiplicative,
                "residue_hom_kernel_is_wild": s.residue_hom_kernel_is_wild,
            }
        return out


@dataclass
class RamificationReport:
    instance: Instance
    compositum_count: int
    compositum_degree: int
    compositum_poly: RatPoly
    mix_coeff: int
    primes: list
    galois: GaloisSummary
    ok: bool = True

    def to_json_dict(self):
        return {
            "instance": {
                "f1": self.instance.f1.to_string(),
                "f2": self.instance.f2.to_string(),
                "p": self.instance.p,
                "compositum": self.instance.compositum_index,
            },
            "compositum": {
                "count": self.compositum_count,
                "degree": self.compositum_degree,
                "poly": self.compositum_poly.to_string(),
                "mix_coeff": self.mix_coeff,
            },
            "primes": [pc.to_json_dict() for pc in self.primes],
            "pathways": self.galois.to_json_dict(),
            "ok": self.ok,
        }


def composita_for(f1, f2):
    """Cached composita for a polynomial pair."""
    f1, f2 = parse_poly(f1), parse_poly(f2)
    key = (tuple(f1.coeffs), tuple(f2.coeffs))
    got = _COMPOSITA_CACHE.get(key)
    if got is None:
        got = compositum(field_for(f1), field_for(f2))
        _COMPOSITA_CACHE[key] = got
    return got


def _pathway_a(inst: Instance, max_closure_degree: int, prime_bound: int):
    """(compositum, list of (q, e1, e2) restriction triples)."""
    comps = composita_for(inst.f1, inst.f2)
    if not 0 <= inst.compositum_index < len(comps):
        raise ValueError(
            f"compositum index {inst.compositum_index} out of range "
            f"(found {len(comps)} composita)")
    comp = comps[inst.compositum_index]
    _, primes = order_and_primes(comp.field.poly, inst.p,
                                 degree_cap=max_closure_degree,
                                 prime_bound=prime_bound)
    triples = []
    for q in primes:
        p1 = restrict_prime(q, comp.embed1)
        p2 = restrict_prime(q, comp.embed2)
        triples.append((q, p1, p2))
    return comps, comp, triples


def _embedding_into_closure(comp: CompositumField, Lp: SplittingField,
                            f1: RatPoly, f2: RatPoly) -> EmbeddingMap:
    """Embed the compositum into the splitting field via root matching."""
    L = comp.field
    c = comp.mix_coeff
    roots2 = [r for r in Lp.roots if f2(r).is_zero]
    if c == 0:
        cands = roots2
    else:
        roots1 = [r for r in Lp.roots if f1(r).is_zero]
        cands = [a + b * c for a in roots1 for b in roots2]
    for g in cands:
        if L.poly(g).is_zero:
            return EmbeddingMap(L, Lp.field, g)
    raise ArithmeticError("compositum generator has no image among root "
                          "combinations in the closure")


def _coset_count(members_mask, g1set, table):
    """Number of distinct cosets s*G1 hit by the masked subset."""
    reps = set()
    m = members_mask
    i = 0
    while m:
        if m & 1:
            reps.add(min(table[i][t] for t in g1set))
        m >>= 1
        i += 1
    return len(reps)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def check_instance(inst: Instance, max_closure_degree: int = 24,
                   max_field_degree: int = 12,
                   prime_bound: int = 1000) -> RamificationReport:
    """Evaluate the lcm law and its companion identities on one instance.

    Per prime q of the chosen compositum above p, with restrictions p1, p2:
    lcm(e1, e2) must divide e_q always; equal it when one side is tame;
    e_q must divide e1*e2 when one constituent is normal over QQ; and the
    product law must hold for coprime tame indices.  Group-side data is
    attached whenever the normal closure fits the degree cap.
    """
    p = inst.p
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if inst.f1.degree > max_field_degree or inst.f2.degree > max_field_degree:
        raise CapExceeded("constituent field degree exceeds the cap")
    comps, comp, triples = _pathway_a(inst, max_closure_degree, prime_bound)
    checks = []
    for q, p1, p2 in triples:
        e_q, e1, e2 = q.e, p1.e, p2.e
        tame1 = e1 % p != 0
        tame2 = e2 % p != 0
        m = e1 // math.gcd(e1, e2) * e2
        eq1 = e_q % m == 0
        if tame1 or tame2:
            theorem = "holds" if e_q == m else "fails"
        else:
            theorem = "not-applicable"
        if (tame1 or tame2) and math.gcd(e1, e2) == 1:
            corollary = "holds" if e_q == e1 * e2 else "fails"
        else:
            corollary = "not-applicable"
        if tame1 and e2 % e1 == 0:
            nark = "holds" if e_q == e2 else "fails"
        else:
            nark = "not-applicable"
        checks.append(PrimeCheck(
            e_q=e_q, f_q=q.f, e1=e1, e2=e2, tame1=tame1, tame2=tame2,
            lcm=m, divides_product=(e1 * e2) % e_q == 0,
            verdict_eq1=eq1, verdict_theorem=theorem,
            verdict_corollary=corollary, verdict_narkiewicz=nark))

    galois = _galois_side(inst, comp, triples, checks, max_closure_degree,
                          prime_bound)
    ok = all(pc.verdict_eq1 for pc in checks)
    for pc in checks:
        for v in (pc.verdict_theorem, pc.verdict_eq2, pc.verdict_corollary,
                  pc.verdict_narkiewicz):
            if v == "fails":
                ok = False
        if pc.pathway_agreement is False:
            ok = False
        if pc.restriction_divides is False:
            ok = False
    if not galois.skipped:
        if not (galois.gamma_is_intersection and galois.lcm_gcd_identity):
            ok = False
        if galois.structure is not None and not galois.structure.all_hold():
            ok = False
        if "fails" in (galois.eq_wild_gcd, galois.eq_tame_gcd):
            ok = False
        if galois.wild_inside_tame_fixer is False:
            ok = False
    return RamificationReport(
        instance=inst, compositum_count=len(comps),
        compositum_degree=comp.field.degree, compositum_poly=comp.field.poly,
        mix_coeff=comp.mix_coeff, primes=checks, galois=galois, ok=ok)


def _galois_side(inst, comp, triples, checks, max_closure_degree, prime_bound):
    p = inst.p
    rad = squarefree_radical(inst.f1 * inst.f2)
    try:
        Lp = splitting_field(rad, max_closure_degree)
    except CapExceeded as exc:
        return GaloisSummary(skipped=True, reason=str(exc))
    auts = automorphism_group(Lp)
    embL = _embedding_into_closure(comp, Lp, inst.f1, inst.f2)
    emb1 = compose_embeddings(embL, comp.embed1)
    emb2 = compose_embeddings(embL, comp.embed2)
    gamma = fixed_subgroup(Lp, embL_as := EmbeddingMap(
        comp.field, Lp.field, embL.image_of_generator), "fixes_compositum")
    gamma1 = fixed_subgroup(Lp, emb1, "fixes_left")
    gamma2 = fixed_subgroup(Lp, emb2, "fixes_right")
    G = full_group(Lp)
    chain = inertia_chain(Lp, p, degree_cap=max_closure_degree,
                          prime_bound=prime_bound)
    G0, G1 = chain.inertia, chain.wild
    struct = structure_report(G0, G1, chain.prime, p)
    summary = GaloisSummary(
        skipped=False,
        closure_degree=Lp.field.degree,
        group_order=len(auts),
        inertia_order=G0.order,
        wild_order=G1.order,
        gamma_is_intersection=(gamma.members == gamma1.members & gamma2.members),
        k1_normal=gamma1.is_normal_in(G),
        k2_normal=gamma2.is_normal_in(G),
        structure=struct,
    )

    # match pathway-A primes to double cosets and compare e-values q by q
    table, inv, ident = _mult_from(Lp)
    dcosets = double_cosets(Lp, gamma, chain.decomposition)
    if len(dcosets) != len(triples):
        raise ArithmeticError(
            f"{len(dcosets)} double cosets against {len(triples)} primes")
    images = {}
    for q, _, _ in triples:
        beta = embL.apply(q.second_gen)
        images[q] = {l for l, cand in enumerate(chain.all_primes)
                     if cand.val_at_least(beta, 1)}
    identity_ok = True
    for rep, _ in dcosets:
        l_rep = prime_image_index(Lp, chain, rep)
        hits = [idx for idx, (q, _, _) in enumerate(triples)
                if l_rep in images[q]]
        if len(hits) != 1:
            raise ArithmeticError("double coset matched a number of primes "
                                  "different from one")
        idx = hits[0]
        q, p1, p2 = triples[idx]
        pc = checks[idx]
        g0c = G0.conjugate_mask(rep)
        a_gamma = _popcount(g0c & gamma.members)
        a1 = _popcount(g0c & gamma1.members)
        a2 = _popcount(g0c & gamma2.members)
        eB_q = G0.order // a_gamma
        eB_1 = G0.order // a1
        eB_2 = G0.order // a2
        pc.d = math.gcd(a1, a2)
        pc.pathway_agreement = (q.e == eB_q and p1.e == eB_1 and p2.e == eB_2)
        mB = eB_1 // math.gcd(eB_1, eB_2) * eB_2
        if mB * pc.d != G0.order:
            identity_ok = False
        if summary.k1_normal or summary.k2_normal:
            pc.verdict_eq2 = ("holds" if pc.divides_product else "fails")
        rd = []
        if summary.k1_normal and q.e % p2.e == 0:
            rd.append(p1.e % (q.e // p2.e) == 0)
        elif summary.k1_normal:
            rd.append(False)
        if summary.k2_normal and q.e % p1.e == 0:
            rd.append(p2.e % (q.e // p1.e) == 0)
        elif summary.k2_normal:
            rd.append(False)
        if rd:
            pc.restriction_divides = all(rd)
    summary.lcm_gcd_identity = identity_ok

    # tameness-hypothesis gcd identities along the distinguished chain
    e1_0 = e_via_groups(G0, gamma1)
    e2_0 = e_via_groups(G0, gamma2)
    tame_idx = [i for i, e in ((1, e1_0), (2, e2_0)) if e % p != 0]
    if tame_idx:
        g1set = set(G1.indices())
        wild_ok = True
        eq4 = True
        eq5 = True
        for i in tame_idx:
            fixer = gamma1 if i == 1 else gamma2
            if G1.members & fixer.members != G1.members:
                wild_ok = False
        w_g = _popcount(G1.members & gamma.members)
        w_1 = _popcount(G1.members & gamma1.members)
        w_2 = _popcount(G1.members & gamma2.members)
        eq4 = w_g == math.gcd(w_1, w_2)
        pi_g = _coset_count(G0.members & gamma.members, g1set, table)
        pi_1 = _coset_count(G0.members & gamma1.members, g1set, table)
        pi_2 = _coset_count(G0.members & gamma2.members, g1set, table)
        eq5 = pi_g == math.gcd(pi_1, pi_2)
        summary.wild_inside_tame_fixer = wild_ok
        summary.eq_wild_gcd = "holds" if eq4 else "fails"
        summary.eq_tame_gcd = "holds" if eq5 else "fails"
    return summary


def _mult_from(Lp):
    from .galois import _mult_table
    return _mult_table(Lp)


def check_narkiewicz(inst: Instance, max_closure_degree: int = 24,
                     prime_bound: int = 1000) -> str:
    """Unramifiedness of the compositum over the bigger-index constituent.

    Applies to primes where the first restriction is tame and e1 | e2;
    asserts e(q/p2) = 1 there, i.e. e_q = e2.  Returns "holds",
    "not-applicable" (no prime meets the precondition) or "fails".
    """
    p = inst.p
    _, _, triples = _pathway_a(inst, max_closure_degree, prime_bound)
    verdicts = []
    for q, p1, p2 in triples:
        if p1.e % p != 0 and p2.e % p1.e == 0:
            verdicts.append(q.e == p2.e)
    if not verdicts:
        return "not-applicable"
    return "holds" if all(verdicts) else "fails"


def cross_validate(inst: Instance, max_closure_degree: int = 24,
                   prime_bound: int = 1000):
    """Compare pathway A (ideals) with pathway B (groups) on e_q, e1, e2."""
    report = check_instance(inst, max_closure_degree=max_closure_degree,
                            prime_bound=prime_bound)
    if report.galois.skipped:
        return {"skipped": True, "reason": report.galois.reason,
                "agree": None, "details": []}
    details = [
        {"e_q": pc.e_q, "e1": pc.e1, "e2": pc.e2,
         "agree": pc.pathway_agreement}
        for pc in report.primes
    ]
    return {"skipped": False, "reason": None,
            "agree": all(pc.pathway_agreement for pc in report.primes),
            "details": details}


# ---------------------------------------------------------------------------
# seeded instance generation


@dataclass
class RandomBounds:
    max_field_degree: int = 6
    max_product_degree: int = 24
    prime_bound: int = 50


_CYCLOTOMICS = {
    3: RatPoly((1, 1, 1)),
    4: RatPoly((1, 0, 1)),
    5: RatPoly((1, 1, 1, 1, 1)),
    7: RatPoly((1, 1, 1, 1, 1, 1, 1)),
    8: RatPoly((1, 0, 0, 0, 1)),
    9: RatPoly((1, 0, 0, 1, 0, 0, 1)),
    12: RatPoly((1, 0, -1, 0, 1)),
}

_RADICAL_BASES = (2, 3, 5, 6, 7, 10, 11, 13, 15)
_QUADRATIC_D = (-1, 2, -2, 3, -3, 5, -5, 6, 7, 10)
_CUBICS = ("x^3-x-1", "x^3+x-1", "x^3-3x-1", "x^3-2", "x^3-3", "x^3-5")


def _draw_poly(rng: random.Random, bounds: RandomBounds) -> RatPoly:
    while True:
        fam = rng.choice(("radical", "cyclotomic", "quadratic", "cubic"))
        if fam == "radical":
            n = rng.choice((2, 3, 4))
            a = rng.choice(_RADICAL_BASES)
            f = RatPoly((-a,) + (0,) * (n - 1) + (1,))
        elif fam == "cyclotomic":
            f = _CYCLOTOMICS[rng.choice(tuple(_CYCLOTOMICS))]
        elif fam == "quadratic":
            d = rng.choice(_QUADRATIC_D)
            f = RatPoly((-d, 0, 1))
        else:
            f = parse_poly(rng.choice(_CUBICS))
        if f.degree <= bounds.max_field_degree:
            return f


def random_instance(seed: int, bounds: RandomBounds | None = None) -> Instance:
    """Deterministic instance from a seed: curated polynomial families with
    the prime drawn from the ramified primes of the pair."""
    bounds = bounds or RandomBounds()
    rng = random.Random(seed)
    for _ in range(500):
        f1 = _draw_poly(rng, bounds)
        f2 = _draw_poly(rng, bounds)
        if f1.degree * f2.degree > bounds.max_product_degree:
            continue
        dd = int(discriminant(f1) * discriminant(f2))
        ps = sorted({q for q in _small_prime_factors(abs(dd))
                     if q < bounds.prime_bound})
        if not ps:
            ps = [2, 3, 5]
        p = rng.choice(ps)
        try:
            comps = composita_for(f1, f2)
        except Exception:
            continue
        idx = rng.randrange(len(comps))
        return Instance(f1, f2, p, idx)
    raise RuntimeError("could not draw an instance within bounds")


def _small_prime_factors(n: int):
    out = set()
    d = 2
    while d * d <= n and d < 10000:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if 1 < n < 10000 and is_prime(n):
        out.add(n)
    return out

"""Proj^Sigma E at desk scale: closed and open sets over finite prime families, and chart oracles."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product as iproduct
from math import comb

from .algebra import MonomialRing, SymAlgebra, tensor_algebra, word_index
from .errors import ConfigurationError, Unsupported
from .ideal import (SigmaIdeal, element_str, ideal_sum, intersection, is_prime_up_to, product, radical_up_to, sigma_closure, zero_ideal)
from .linalg import Matrix, QQ, Subspace, nullspace
from .report import Report


class PrimeFamily:
    """A finite list of prime Sigma-ideals not containing E_{>=1} (primality as a cutoff verdict)."""

    def __init__(self, algebra: SymAlgebra, primes: list[SigmaIdeal], dedupe: bool = True, verify: bool = True):
        self.algebra = algebra
        kept, self.rejected = [], []
        for P in primes:
            if P.algebra is not algebra:
                raise ConfigurationError("prime of a different algebra")
            if P.contains_positive():
                self.rejected.append({"ideal": P.name, "reason": "contains E_>=1"})
                continue
            if verify:
                v = is_prime_up_to(P)
                if not v["prime"]:
                    self.rejected.append({"ideal": P.name, "reason": "not prime", "witness": v["witness"]})
                    continue
            if dedupe and any(P == Q for Q in kept):
                continue
            kept.append(P)
        self.primes = kept

    def __len__(self):
        return len(self.primes)

    def names(self, idx) -> list[str]:
        return [self.primes[i].name for i in sorted(idx)]


def v_set(I: SigmaIdeal, fam: PrimeFamily) -> frozenset:
    """V(I): indices of family members containing I."""
    if I.algebra is not fam.algebra:
        raise ConfigurationError("ideal and family over different algebras")
    return frozenset(i for i, P in enumerate(fam.primes) if I.issubset(P))


def d_set(I: SigmaIdeal, fam: PrimeFamily) -> frozenset:
    return frozenset(range(len(fam))) - v_set(I, fam)


def d_element(fam: PrimeFamily, n: int, f: dict) -> frozenset:
    """D(f) for a homogeneous element f of degree n."""
    return frozenset(i for i, P in enumerate(fam.primes) if not P.contains(n, f))


def _law(name, ok, fam, extra=None):
    d = {"law": name, "status": "verified" if ok else "violated", "family_size": len(fam),
         "cutoff": fam.algebra.cutoff}
    if extra:
        d.update(extra)
    return d


def check_topology_laws(fam: PrimeFamily, ideals: list[SigmaIdeal], elements: list | None = None) -> dict:
    """V(IJ) = V(I) u V(J), V(I + J) = V(I) n V(J), V(sum) = n V, D(f) n D(g) = D(fg), monotonicity."""
    E = fam.algebra
    if elements is None:
        elements = [g for I in ideals for g in I.generators if g[0] >= 1]
    laws = []
    bad = []
    for I, J in combinations_with_replacement(ideals, 2):
        if v_set(product(I, J), fam) != v_set(I, fam) | v_set(J, fam):
            bad.append([I.name, J.name])
    laws.append(_law("V(IJ)=V(I)∪V(J)", not bad, fam, {"failures": bad, "pairs": len(ideals) * (len(ideals) + 1) // 2}))
    bad = []
    for I, J in combinations(ideals, 2):
        if v_set(ideal_sum([I, J]), fam) != v_set(I, fam) & v_set(J, fam):
            bad.append([I.name, J.name])
    if ideals:
        whole = frozenset(range(len(fam)))
        for I in ideals:
            whole &= v_set(I, fam)
        if v_set(ideal_sum(ideals), fam) != whole:
            bad.append(["sum of all"])
    laws.append(_law("V(ΣI)=∩V(I)", not bad, fam, {"failures": bad}))
    bad = []
    for (a, f), (b, g) in combinations_with_replacement(elements, 2):
        if a + b > E.cutoff:
            continue
        fg = E.mul(a, f, b, g)
        if d_element(fam, a, f) & d_element(fam, b, g) != d_element(fam, a + b, fg):
            bad.append([element_str(E, a, f), element_str(E, b, g)])
    laws.append(_law("D(f)∩D(g)=D(fg)", not bad, fam, {"failures": bad, "elements": len(elements)}))
    bad = []
    for I, J in iproduct(ideals, ideals):
        if I.issubset(J) and not v_set(J, fam) <= v_set(I, fam):
            bad.append([I.name, J.name])
    laws.append(_law("I⊆J ⇒ V(J)⊆V(I)", not bad, fam, {"failures": bad}))
    return {"laws": laws, "ok": all(l["status"] == "verified" for l in laws),
            "note": "relative to the supplied prime family"}


def point_closure(fam: PrimeFamily, i: int) -> frozenset:
    """Closure of a point: the smallest closed set V(P) containing it."""
    return v_set(fam.primes[i], fam)


def check_spectral_properties(fam: PrimeFamily, ideals: list[SigmaIdeal], elements: list | None = None) -> dict:
    """T0 separation, finite subcovers of basic opens, generic points of irreducible closed sets."""
    E = fam.algebra
    if elements is None:
        elements = [g for I in ideals for g in I.generators if g[0] >= 1]
    out = []
    # T0: distinct points are separated by a homogeneous element
    dup, seps = [], 0
    for i, j in combinations(range(len(fam)), 2):
        P, Q = fam.primes[i], fam.primes[j]
        wit = _separating_element(P, Q) or _separating_element(Q, P)
        if wit is None:
            dup.append([P.name, Q.name])
        else:
            seps += 1
    out.append({"property": "T0", "status": "verified" if not dup else "violated", "duplicates": dup,
                "separated_pairs": seps})
    # quasi-compactness: D((a_1..a_n)^Sigma) = D(a_1) u ... u D(a_n), and finite subcovers of D(a)
    bad = []
    for I in ideals:
        gens = [g for g in I.generators if g[0] >= 1]
        if not gens or len(gens) != len(I.generators):
            continue
        union = frozenset()
        for d, v in gens:
            union |= d_element(fam, d, v)
        if union != d_set(I, fam):
            bad.append(I.name)
    covers = []
    for a, f in elements:
        target = d_element(fam, a, f)
        pool = [(b, g, d_element(fam, b, g)) for b, g in elements]
        cover, covered = [], frozenset()
        for b, g, D in sorted(pool, key=lambda t: -len(t[2] & target)):
            if not D <= target or not (D - covered):
                continue
            cover.append(element_str(E, b, g))
            covered |= D
        if covered == target:
            covers.append({"open": f"D({element_str(E, a, f)})", "subcover": cover})
    out.append({"property": "quasi-compact basic opens", "status": "verified" if not bad else "violated",
                "failures": bad, "subcovers": covers,
                "note": "covers drawn from the supplied basic opens only"})
    # generic points: in a finite subspace a closed set is irreducible exactly when it is the
    # closure of one of its points; that point must be unique (T0) and, for V(I), equal sqrt(I)
    closed = {}
    for I in ideals:
        closed.setdefault(v_set(I, fam), I)
    for i in range(len(fam)):
        closed.setdefault(point_closure(fam, i), fam.primes[i])
    results, bad = [], []
    for V, I in sorted(closed.items(), key=lambda t: (sorted(t[0]), t[1].name)):
        if not V:
            continue
        generic = [i for i in sorted(V) if point_closure(fam, i) == V]
        entry = {"closed": f"V({I.name})", "irreducible": bool(generic),
                 "generic_point": fam.primes[generic[0]].name if generic else None}
        if len(generic) > 1:
            bad.append(I.name)
            entry["error"] = "several generic points"
        if generic and any(I is J for J in ideals):
            eq = radical_up_to(I) == fam.primes[generic[0]]
            entry["generic_is_radical"] = eq
            if not eq:
                bad.append(I.name)
        results.append(entry)
    out.append({"property": "generic points", "status": "verified" if not bad else "violated",
                "failures": bad, "closed_sets": results})
    return {"properties": out, "ok": all(p["status"] == "verified" for p in out),
            "note": "finite subspace induced by the family; evidence, not proof"}


def _separating_element(P: SigmaIdeal, Q: SigmaIdeal):
    for n in range(P.cutoff + 1):
        for v in P[n].basis():
            if not Q[n].contains(v):
                return (n, v)
    return None


def radical_vs_intersection(I: SigmaIdeal, fam: PrimeFamily) -> dict:
    """Compare the radical with the intersection of family primes containing I, levelwise."""
    V = v_set(I, fam)
    if not V:
        return {"ideal": I.name, "status": "empty V(I)", "equal": None}
    it = iter(sorted(V))
    inter = fam.primes[next(it)]
    for i in it:
        inter = intersection(inter, fam.primes[i])
    rad = radical_up_to(I)
    eq = rad == inter
    return {"ideal": I.name, "radical_dims": rad.dims(), "intersection_dims": inter.dims(),
            "V": fam.names(V), "equal": eq, "status": "verified" if eq else "violated"}


# ---------------------------------------------------------------- family builders

def monomial_primes(E: SymAlgebra) -> list[SigmaIdeal]:
    """Candidate monomial primes: the zero ideal and Sigma-closures of proper sets of degree-one basis letters."""
    if "ring" in E._cache:
        ring: MonomialRing = E._cache["ring"]
        letters = [(ring.degrees[i], {E._cache["monomials"][ring.degrees[i]].index(
            tuple(1 if k == i else 0 for k in range(ring.nvars))): 1}) for i in range(ring.nvars)]
    elif "tensor_dim" in E._cache:
        letters = [(1, {j: 1}) for j in range(E._cache["tensor_dim"])]
    else:
        raise Unsupported("monomial families are built for monomial rings and tensor algebras")
    out = [zero_ideal(E)]
    for r in range(1, len(letters)):
        for sub in combinations(letters, r):
            out.append(sigma_closure(E, list(sub)))
    return out


def monomial_family(E: SymAlgebra, extra: list[SigmaIdeal] = ()) -> PrimeFamily:
    return PrimeFamily(E, monomial_primes(E) + list(extra))


# ---------------------------------------------------------------- symmetric projective space

def commutator_ideal(T: SymAlgebra) -> SigmaIdeal:
    """Sigma-ideal of T(V) generated by all w - sigma(w)."""
    d = T._cache["tensor_dim"]
    gens = []
    for n in range(2, T.cutoff + 1):
        for w in iproduct(range(d), repeat=n):
            for i in range(n - 1):
                w2 = list(w)
                w2[i], w2[i + 1] = w2[i + 1], w2[i]
                a, b = word_index(w, d), word_index(tuple(w2), d)
                if a < b:
                    gens.append((n, {a: 1, b: -1}))
    return sigma_closure(T, gens, name="I_comm") if gens else zero_ideal(T)


def projective_space_embedding_check(d: int, cutoff: int) -> dict:
    """T(V)/I has the dimensions of S(V); pulled-back monomial primes of S(V) contain I and stay prime."""
    if d < 1:
        raise ConfigurationError("d >= 1 required")
    T = tensor_algebra(d, cutoff)
    I = commutator_ideal(T)
    qdims = [T.dim(n) - I[n].dim for n in range(cutoff + 1)]
    want = [comb(d + n - 1, n) for n in range(cutoff + 1)]
    pulled = []
    for r in range(1, d):
        for sub in combinations(range(d), r):
            P = ideal_sum([I, sigma_closure(T, [(1, {j: 1}) for j in sub])])
            # the preimage of (letters) in S(V) has codimension = number of monomials in the other letters
            codim = [comb(d - r + n - 1, n) for n in range(cutoff + 1)]
            ok = I.issubset(P) and [T.dim(n) - P[n].dim for n in range(cutoff + 1)] == codim
            pv = is_prime_up_to(P)
            pulled.append({"letters": [T.label(1, j) for j in sub], "contains_I": I.issubset(P),
                           "quotient_dims_match": ok, "prime_up_to_cutoff": pv["prime"]})
    ok = qdims == want and all(p["contains_I"] and p["quotient_dims_match"] and p["prime_up_to_cutoff"]
                               for p in pulled)
    return {"d": d, "cutoff": cutoff, "quotient_dims": qdims, "expected_dims": want,
            "ideal_dims": I.dims(), "pulled_back_primes": pulled,
            "status": "verified" if ok else "violated"}


# ---------------------------------------------------------------- commutative charts

Poly = dict  # exponent tuple -> Fraction


def pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def ppow(a: Poly, t: int, nvars: int) -> Poly:
    out = {(0,) * nvars: Fraction(1)}
    for _ in range(t):
        out = pmul(out, a)
    return out


def psub(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) - c
    return {e: c for e, c in out.items() if c}


def monomial(ring: MonomialRing, exps) -> Poly:
    return {tuple(exps): Fraction(1)}


class Fraction0:
    """a / f^t in the degree-zero part of R_f."""

    def __init__(self, num: Poly, t: int, f: tuple):
        self.num, self.t, self.f = num, t, f

    def __mul__(self, other: "Fraction0") -> "Fraction0":
        return Fraction0(pmul(self.num, other.num), self.t + other.t, self.f)

    def equals(self, other: "Fraction0") -> bool:
        n = len(self.f)
        fp = {self.f: Fraction(1)}
        return not psub(pmul(self.num, ppow(fp, other.t, n)), pmul(other.num, ppow(fp, self.t, n)))


def ratio_str(ring: MonomialRing, m: tuple, f: tuple) -> str:
    top = tuple(max(a - b, 0) for a, b in zip(m, f))
    bot = tuple(max(b - a, 0) for a, b in zip(m, f))
    num = ring.monomial_str(top)
    den = ring.monomial_str(bot)
    if den == "1":
        return num
    return f"{num}/{den}" if "*" not in den else f"{num}/({den})"


def _check_chart_ring(ring: MonomialRing, f: tuple):
    if ring.relations:
        raise Unsupported("charts are computed for polynomial rings without relations")
    if len(f) != ring.nvars or any(e < 0 for e in f):
        raise ConfigurationError("f must be a monomial exponent vector")
    if ring.degree(f) < 1:
        raise ConfigurationError("f must have positive degree")


def sections_commutative(ring: MonomialRing, f: tuple, bound: int = 4) -> dict:
    """Generators m/f (m monomial of degree deg f, m != f) of (R_f)_0 and their relations up to ``bound``."""
    _check_chart_ring(ring, f)
    d = ring.degree(f)
    mons = [m for m in ring.monomials(d) if m != tuple(f)]
    names = [ratio_str(ring, m, f) for m in mons]
    k = len(mons)
    # monomials in the generators of total degree <= bound
    exps = [e for t in range(bound + 1) for e in _compositions(t, k)]
    top = ring.monomials(bound * d)
    pos = {m: i for i, m in enumerate(top)}
    cols = []
    for e in exps:
        m = list(f)
        m = [x * (bound - sum(e)) for x in f]
        for i, a in enumerate(e):
            m = [x + a * y for x, y in zip(m, mons[i])]
        cols.append({pos[tuple(m)]: QQ.one})
    lift = Matrix.from_columns(len(top), cols, QQ)
    relations = _minimal_relations(exps, lift, k, bound)
    rank = lift.rank()
    return {"f": ring.monomial_str(tuple(f)), "generators": names,
            "relations": [_poly_str(r, names) for r in relations],
            "relation_polys": relations,
            "dims_by_degree": [len(_compositions_upto(t, k)) - _kernel_dim(exps, lift, t) for t in range(bound + 1)],
            "bound": bound, "rank_at_bound": rank,
            "status": f"presentation up to generator degree {bound}"}


def _compositions(t: int, k: int) -> list[tuple]:
    if k == 0:
        return [()] if t == 0 else []
    out = []
    for a in range(t, -1, -1):
        for rest in _compositions(t - a, k - 1):
            out.append((a,) + rest)
    return out


def _compositions_upto(t, k):
    return [e for s in range(t + 1) for e in _compositions(s, k)]


def _kernel_dim(exps, lift: Matrix, t: int) -> int:
    idx = [i for i, e in enumerate(exps) if sum(e) <= t]
    sub = lift.select_cols(idx)
    return len(idx) - sub.rank()


def _minimal_relations(exps, lift: Matrix, k: int, bound: int) -> list[dict]:
    """Kernel generators, filtered so that each new relation is not implied by earlier ones times monomials."""
    rels: list[dict] = []
    for t in range(1, bound + 1):
        idx = [i for i, e in enumerate(exps) if sum(e) <= t]
        sub = lift.select_cols(idx)
        ker = nullspace(sub.rows, len(idx), QQ)
        ker = [{exps[idx[j]]: c for j, c in v.items()} for v in ker]
        implied = Subspace(len(exps), QQ)
        epos = {e: i for i, e in enumerate(exps)}
        for r in rels:
            rd = max(sum(e) for e in r)
            for s in range(t - rd + 1):
                for m in _compositions(s, k):
                    implied.add({epos[tuple(a + b for a, b in zip(e, m))]: c for e, c in r.items()})
        for v in ker:
            vec = {epos[e]: c for e, c in v.items()}
            if implied.add(vec):
                rels.append(v)
    return rels


def _poly_str(p: dict, names: list[str]) -> str:
    terms = []
    for e in sorted(p, key=lambda e: (-sum(e), [-a for a in e])):
        c = Fraction(p[e])
        mon = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a)
        if not mon:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        elif c == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{c}*{mon}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def restrict(ring: MonomialRing, f: tuple, g: tuple, m: tuple) -> Fraction0:
    """Image of m/f^t (deg m = t deg f) under (R_f)_0 -> (R_fg)_0: m g^t / (fg)^t."""
    t = ring.degree(m) // ring.degree(f)
    fg = tuple(a + b for a, b in zip(f, g))
    num = pmul(monomial(ring, m), ppow(monomial(ring, g), t, ring.nvars))
    return Fraction0(num, t, fg)


def chart_cocycle(ring: MonomialRing, charts: list[tuple], bound: int = 3) -> Report:
    """Gluing checks on standard charts D(f_i) of a projective space.

    Pairwise: f_j/f_i and f_i/f_j are inverse in the overlap, and every generator m/f_i
    restricts to res_j(m/f_j) * res_i(f_j/f_i). Triple: restricting to D(f_i f_j f_k)
    directly or through D(f_i f_j) agrees. Restrictions are injective up to ``bound``.
    """
    rpt = Report("chart-cocycle")
    n = ring.nvars
    for f in charts:
        _check_chart_ring(ring, f)
    d = ring.degree(charts[0])
    if any(ring.degree(f) != d for f in charts):
        raise ConfigurationError("charts must have equal degree")
    for i, j in combinations(range(len(charts)), 2):
        f, g = charts[i], charts[j]
        fg = tuple(a + b for a, b in zip(f, g))
        one = Fraction0({(0,) * n: Fraction(1)}, 0, fg)
        g_over_f = restrict(ring, f, g, g)
        f_over_g = restrict(ring, g, f, f)
        rpt.checked += 1
        if not (g_over_f * f_over_g).equals(one):
            rpt.fail("inverse-transition", i, j)
        for m in ring.monomials(d):
            rpt.checked += 1
            if not restrict(ring, f, g, m).equals(restrict(ring, g, f, m) * g_over_f):
                rpt.fail("transition", i, j, ring.monomial_str(m))
        rpt.checked += 1
        if not _restriction_injective(ring, f, g, bound):
            rpt.fail("restriction-not-injective", i, j)
    for i, j, k in combinations(range(len(charts)), 3):
        f, g, h = charts[i], charts[j], charts[k]
        gh = tuple(a + b for a, b in zip(g, h))
        fgh = tuple(a + b + c for a, b, c in zip(f, g, h))
        for m in ring.monomials(d):
            rpt.checked += 1
            direct = restrict(ring, f, gh, m)
            step = restrict(ring, f, g, m)
            two = Fraction0(pmul(step.num, ppow(monomial(ring, h), step.t, n)), step.t, fgh)
            if not direct.equals(two):
                rpt.fail("triple", i, j, k, ring.monomial_str(m))
    return rpt


def _restriction_injective(ring, f, g, bound) -> bool:
    d = ring.degree(f)
    for t in range(bound + 1):
        mons = ring.monomials(t * d)
        imgs = [restrict(ring, f, g, m) for m in mons]
        for a, b in combinations(imgs, 2):
            if a.equals(b):
                return False
    return True

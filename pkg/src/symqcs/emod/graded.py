"""Non-symmetric graded modules, presentations, the functors U and V, and torsion tests."""
from __future__ import annotations

from math import ceil

from ..algebra import SymAlgebra, generator_degrees, indecomposables
from ..errors import ConfigurationError, InvariantViolation, Unsupported
from ..linalg import Matrix, Subspace, kron, matrix_from_json, matrix_to_json, nullspace, vkron
from .. import rep
from ..report import Report
from ..symseq import SymSeq
from .core import (EModule, EModuleMap, closure_levels, cover_map, direct_sum, free_module,
                   quotient_emodule)


class GradedModule:
    """Right graded module over the underlying graded algebra of E (symmetry forgotten)."""

    def __init__(self, algebra: SymAlgebra, dims: list[int], mult: dict, name: str = "M"):
        self.algebra = algebra
        self.field = algebra.field
        self.dims = list(dims)
        self.cutoff = len(dims) - 1
        if self.cutoff > algebra.cutoff:
            raise ConfigurationError("module cutoff exceeds algebra cutoff")
        self.mult = {}
        for n in range(self.cutoff + 1):
            for m in range(self.cutoff + 1 - n):
                a = mult.get((n, m))
                want = (self.dims[n + m], self.dims[n] * algebra.dim(m))
                if a is None or a.shape != want:
                    raise ValueError(f"multiplication ({n},{m}) missing or of wrong shape")
                self.mult[(n, m)] = a
        self.name = name

    def __repr__(self):
        return f"GradedModule({self.name}, dims={self.dims})"

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.cutoff else 0

    def act(self, n: int, v: dict, m: int, x: dict) -> dict:
        return self.mult[(n, m)].apply(vkron(v, x, self.algebra.dim(m)))

    def check_axioms(self) -> Report:
        rpt = Report("graded-module-axioms")
        E, f = self.algebra, self.field
        for n in range(self.cutoff + 1):
            for m in range(self.cutoff + 1 - n):
                for p in range(self.cutoff + 1 - n - m):
                    rpt.checked += 1
                    lhs = self.mult[(n + m, p)] @ kron(self.mult[(n, m)], Matrix.identity(E.dim(p), f))
                    rhs = self.mult[(n, m + p)] @ kron(Matrix.identity(self.dims[n], f), E.mults[(m, p)])
                    if lhs != rhs:
                        rpt.fail("associativity", n, m, p)
            rpt.checked += 1
            idn = Matrix.identity(self.dims[n], f)
            if self.mult[(n, 0)] @ kron(idn, Matrix.from_columns(1, [E.unit], f)) != idn:
                rpt.fail("unit", n)
        return rpt

    def same_as(self, other: "GradedModule") -> bool:
        return self.dims == other.dims and all(self.mult[k] == other.mult[k] for k in self.mult)

    def shift(self, m: int) -> "GradedModule":
        """M[m]_j = M_{j+m}."""
        N = self.cutoff - m
        mult = {(n, k): self.mult[(n + m, k)] for n in range(N + 1) for k in range(N + 1 - n)}
        return GradedModule(self.algebra, self.dims[m:], mult, f"{self.name}[{m}]")

    def truncate(self, cutoff: int) -> "GradedModule":
        mult = {k: v for k, v in self.mult.items() if k[0] + k[1] <= cutoff}
        return GradedModule(self.algebra, self.dims[:cutoff + 1], mult, self.name)

    def to_json(self) -> dict:
        return {"levels": self.dims,
                "mult": {f"{n},{m}": matrix_to_json(a) for (n, m), a in sorted(self.mult.items())}}

    @classmethod
    def from_json(cls, d, algebra: SymAlgebra) -> "GradedModule":
        dims = d["levels"]
        mult = {}
        for key, mat in d["mult"].items():
            n, m = (int(s) for s in key.split(","))
            mult[(n, m)] = matrix_from_json(mat, algebra.field, dims[n] * algebra.dim(m))
        return cls(algebra, dims, mult)


# ---------------------------------------------------------------- constructions

def algebra_graded(E: SymAlgebra, cutoff: int | None = None) -> GradedModule:
    N = E.cutoff if cutoff is None else cutoff
    mult = {k: v for k, v in E.mults.items() if k[0] + k[1] <= N}
    return GradedModule(E, E.dims()[:N + 1], mult, "A")


def free_graded(E: SymAlgebra, degrees: list[int], cutoff: int | None = None) -> GradedModule:
    """Direct sum of E(-n_i): level l has basis (i, e) with e in E_{l - n_i}."""
    N = E.cutoff if cutoff is None else cutoff
    f = E.field
    dims = [sum(E.dim(l - d) for d in degrees if d <= l) for l in range(N + 1)]

    def offsets(l):
        out, off = [], 0
        for d in degrees:
            out.append(off)
            off += E.dim(l - d) if d <= l else 0
        return out

    mult = {}
    for n in range(N + 1):
        for m in range(N + 1 - n):
            onm = offsets(n + m)
            cols = []
            for i, d in enumerate(degrees):
                if d > n:
                    continue
                mu = E.mults[(n - d, m)]
                for e in range(E.dim(n - d)):
                    for x in range(E.dim(m)):
                        cols.append({onm[i] + r: a for r, a in mu.cols[e * E.dim(m) + x].items()})
            mult[(n, m)] = Matrix.from_columns(dims[n + m], cols, f)
    G = GradedModule(E, dims, mult, "free")
    G.degrees = list(degrees)
    G.offsets = offsets
    return G


def graded_closure(G: GradedModule, seeds: dict) -> list[Subspace]:
    """Smallest graded submodule containing ``seeds[n]``."""
    indec = indecomposables(G.algebra)
    subs = []
    for n in range(G.cutoff + 1):
        S = Subspace(G.dim(n), G.field, seeds.get(n, []))
        for a in range(n):
            if subs[a].dim and indec[n - a]:
                for v in subs[a].basis():
                    for x in indec[n - a]:
                        S.add(G.act(a, v, n - a, x))
        subs.append(S)
    return subs


def graded_quotient(G: GradedModule, subs: list[Subspace], name: str = "Q"):
    """(G / S, projection matrices, free columns per level)."""
    E = G.algebra
    projs, frees = [], []
    for n, S in enumerate(subs):
        free, project = S.quotient_projector()
        frees.append(free)
        projs.append(Matrix.from_columns(len(free), [project({j: G.field.one}) for j in range(G.dim(n))], G.field))
    mult = {}
    for n in range(G.cutoff + 1):
        for m in range(G.cutoff + 1 - n):
            a = G.mult[(n, m)]
            dm = E.dim(m)
            cols = [projs[n + m].apply(a.cols[j * dm + x]) for j in frees[n] for x in range(dm)]
            mult[(n, m)] = Matrix.from_columns(len(frees[n + m]), cols, G.field)
    return GradedModule(E, [len(fr) for fr in frees], mult, name), projs


def graded_sub(G: GradedModule, subs: list[Subspace], name: str = "S") -> GradedModule:
    E = G.algebra
    mult = {}
    for n in range(G.cutoff + 1):
        for m in range(G.cutoff + 1 - n):
            cols = []
            for v in subs[n].basis():
                for x in range(E.dim(m)):
                    w = G.act(n, v, m, {x: G.field.one})
                    if subs[n + m].reduce(w):
                        raise InvariantViolation("not a submodule")
                    cols.append(subs[n + m].coords(w))
            mult[(n, m)] = Matrix.from_columns(subs[n + m].dim, cols, G.field)
    return GradedModule(E, [S.dim for S in subs], mult, name)


def tail_ideal(E: SymAlgebra, n: int, cutoff: int | None = None) -> GradedModule:
    """A_{>=n} as a graded submodule of A."""
    A = algebra_graded(E, cutoff)
    subs = [Subspace(A.dim(l), A.field, [{j: A.field.one} for j in range(A.dim(l))] if l >= n else [])
            for l in range(A.cutoff + 1)]
    return graded_sub(A, subs, f"A_>={n}")


def quotient_by_tail(E: SymAlgebra, n: int, cutoff: int | None = None) -> GradedModule:
    """A / A_{>=n}."""
    A = algebra_graded(E, cutoff)
    subs = [Subspace(A.dim(l), A.field, [{j: A.field.one} for j in range(A.dim(l))] if l >= n else [])
            for l in range(A.cutoff + 1)]
    return graded_quotient(A, subs, f"A/A_>={n}")[0]


# ---------------------------------------------------------------- presentations

class GradedPresentation:
    """Generators in degrees ``gen_degrees``; relation j has degree d_j and components
    ``relations[j][1][i]`` in E_{d_j - n_i}."""

    def __init__(self, algebra: SymAlgebra, gen_degrees: list[int], relations: list, cutoff: int | None = None):
        self.algebra = algebra
        self.cutoff = algebra.cutoff if cutoff is None else cutoff
        self.gen_degrees = list(gen_degrees)
        for d, comps in relations:
            for i, v in comps.items():
                if not 0 <= i < len(gen_degrees):
                    raise ConfigurationError(f"relation refers to missing generator {i}")
                if gen_degrees[i] > d:
                    raise ConfigurationError("relation degree below its generator degree")
                if any(k >= algebra.dim(d - gen_degrees[i]) for k in v):
                    raise ConfigurationError("relation component outside E")
        self.relations = [(d, dict(c)) for d, c in relations]

    def free(self) -> GradedModule:
        return free_graded(self.algebra, self.gen_degrees, self.cutoff)

    def relation_vector(self, F: GradedModule, j: int) -> dict:
        d, comps = self.relations[j]
        offs = F.offsets(d)
        out = {}
        for i, v in comps.items():
            for k, x in v.items():
                out[offs[i] + k] = x
        return out

    def cokernel(self) -> GradedModule:
        F = self.free()
        seeds: dict = {}
        for j, (d, _) in enumerate(self.relations):
            if d <= self.cutoff:
                seeds.setdefault(d, []).append(self.relation_vector(F, j))
        return graded_quotient(F, graded_closure(F, seeds), "coker")[0]


def graded_generators(G: GradedModule) -> list[tuple[int, dict]]:
    indec = indecomposables(G.algebra)
    gens, subs = [], []
    for n in range(G.cutoff + 1):
        S = Subspace(G.dim(n), G.field)
        for a in range(n):
            if subs[a].dim and indec[n - a]:
                for v in subs[a].basis():
                    for x in indec[n - a]:
                        S.add(G.act(a, v, n - a, x))
        for j in S.complement_indices():
            e = {j: G.field.one}
            gens.append((n, e))
            S.add(e)
        subs.append(S)
    return gens


def graded_cover(G: GradedModule, gens):
    """Free module on generator degrees with the cover matrices per level."""
    F = free_graded(G.algebra, [d for d, _ in gens], G.cutoff)
    E = G.algebra
    comps = []
    for l in range(G.cutoff + 1):
        cols = []
        for d, v in gens:
            if d > l:
                continue
            for e in range(E.dim(l - d)):
                cols.append(G.act(d, v, l - d, {e: G.field.one}))
        comps.append(Matrix.from_columns(G.dim(l), cols, G.field))
    return F, comps


def present(G: GradedModule) -> GradedPresentation:
    """A presentation of G valid up to its cutoff: generators, then generators of the kernel."""
    gens = graded_generators(G)
    F, comps = graded_cover(G, gens)
    kers = [Subspace(F.dim(l), G.field, nullspace(c.rows, c.ncols, G.field)) for l, c in enumerate(comps)]
    K = graded_sub(F, kers, "K")
    rels = []
    for d, v in graded_generators(K):
        vec = kers[d].basis_matrix().apply(v)
        offs = F.offsets(d)
        comps_j = {}
        for i, (gd, _) in enumerate(gens):
            if gd > d:
                continue
            size = G.algebra.dim(d - gd)
            part = {k - offs[i]: x for k, x in vec.items() if offs[i] <= k < offs[i] + size}
            if part:
                comps_j[i] = part
        rels.append((d, comps_j))
    pres = GradedPresentation(G.algebra, [d for d, _ in gens], rels, G.cutoff)
    pres.generator_vectors = gens
    return pres


# ---------------------------------------------------------------- U and V

def u_functor(M: EModule) -> GradedModule:
    """Forget the symmetric group actions."""
    return GradedModule(M.algebra, M.dims(), dict(M.actions), f"U({M.name})")


def v_functor(pres: GradedPresentation):
    """V of the presented module: E(-n) -> F_n E, then the levelwise cokernel.

    Returns (module, projection from the direct sum of free modules).
    """
    E = pres.algebra
    frees = [free_module(E, d, pres.cutoff) for d in pres.gen_degrees]
    if not frees:
        from .core import EModule as _EM
        zero = SymSeq([rep.zero(n, E.field) for n in range(pres.cutoff + 1)], E.field)
        acts = {(n, m): Matrix.zeros(0, 0, E.field) for n in range(pres.cutoff + 1)
                for m in range(pres.cutoff + 1 - n)}
        Z = _EM(E, zero, acts, "0")
        return Z, EModuleMap.identity(Z)
    P = frees[0] if len(frees) == 1 else direct_sum(frees, "free")
    seeds: dict = {}
    for d, comps in pres.relations:
        if d > pres.cutoff:
            continue
        vec: dict = {}
        off = 0
        for i, F in enumerate(frees):
            if i in comps:
                # (1, x) in k Sigma_d (x)_{Sigma_{d-n}} E_{d-n}: identity coset rep has index 0
                for k, x in comps[i].items():
                    vec[off + k] = x
            off += F.dim(d)
        seeds.setdefault(d, []).append(vec)
    subs = closure_levels(P, seeds)
    Q, proj = quotient_emodule(P, subs, "V")
    Q.meta["free"] = P
    Q.meta["relations"] = subs
    return Q, proj


def free_embedding_index(E: SymAlgebra, degrees: list[int], l: int, i: int, e: int) -> int:
    """Index of (1, e) from generator i inside level l of the direct sum of F_{n_i} E."""
    from math import factorial
    off = 0
    for j, d in enumerate(degrees):
        if j == i:
            return off + e
        if d <= l:
            off += factorial(l) // factorial(l - d) * E.dim(l - d)
    raise IndexError(i)


def unit_vector(E: SymAlgebra, degrees: list[int], l: int, x: dict) -> dict:
    """Graded cover coordinates (i, e) -> the element sum x_(i,e) iota_i e of the sum of F_{n_i} E."""
    vec: dict = {}
    k = 0
    for i, d in enumerate(degrees):
        if d > l:
            continue
        for e in range(E.dim(l - d)):
            c = x.get(k)
            if c:
                idx = free_embedding_index(E, degrees, l, i, e)
                vec[idx] = vec.get(idx, 0) + c
            k += 1
    return vec


def adjunction_triangle(M: EModule) -> Report:
    """U(counit) . unit = id on U(M), level by level."""
    from ..linalg import solve
    E = M.algebra
    rpt = Report("adjunction-triangle")
    G = u_functor(M)
    pres = present(G)
    VU, proj = v_functor(pres)
    gens = pres.generator_vectors
    degrees = pres.gen_degrees
    cov = cover_map(gens, M)
    counit_cols = []
    for l in range(M.cutoff + 1):
        C = cov.components[l]
        rels = VU.meta["relations"][l]
        rpt.checked += 1
        if any(C.apply(r) for r in rels.basis()):
            rpt.fail("counit-not-defined", l)
        free, _ = rels.quotient_projector()
        counit_cols.append(Matrix.from_columns(M.dim(l), [C.cols[j] for j in free], M.field))
    counit = EModuleMap(VU, M, counit_cols)
    for cell in counit.check().violations:
        rpt.fail("counit", *cell)
    _, gcover = graded_cover(G, gens)
    for l in range(M.cutoff + 1):
        rpt.checked += 1
        C = gcover[l]
        # the unit is well defined: graded relations die in V U(M)
        for z in nullspace(C.rows, C.ncols, M.field):
            if proj[l].apply(unit_vector(E, degrees, l, z)):
                rpt.fail("unit-not-defined", l)
                break
        for j in range(M.dim(l)):
            x = solve(C, {j: M.field.one})
            back = None if x is None else counit[l].apply(proj[l].apply(unit_vector(E, degrees, l, x)))
            if back != {j: M.field.one}:
                rpt.fail("triangle", l)
                break
    return rpt


# ---------------------------------------------------------------- torsion

def generation_bound(E: SymAlgebra) -> int:
    """N = max degree of a minimal homogeneous generating set of E_{>=1} within the cutoff."""
    degs = generator_degrees(E)
    if not degs:
        return 1
    return max(degs)


def annihilation_degree(G: GradedModule, d: int, vectors: list[dict] | None = None, N: int | None = None):
    """Least s with (piece or vectors) . A_j = 0 for all j >= s, decided inside the window; None if undecided."""
    E = G.algebra
    N = generation_bound(E) if N is None else N
    if vectors is None:
        vectors = [{j: G.field.one} for j in range(G.dim(d))]
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0

    def kills(j):
        return all(not G.act(d, v, j, {x: G.field.one}) for v in vectors for x in range(E.dim(j)))

    s = 1
    while d + s + N - 1 <= G.cutoff:
        if all(kills(j) for j in range(s, s + N)):
            return s
        s += 1
    return None


def is_torsion(G: GradedModule, cutoff: int | None = None) -> dict:
    """Per-piece annihilation verdicts; torsion verdicts are relative to the cutoff window."""
    if cutoff is not None and cutoff < G.cutoff:
        G = G.truncate(cutoff)
    E = G.algebra
    if E.cutoff < 1:
        raise Unsupported("algebra truncated below degree 1")
    N = generation_bound(E)
    pieces = []
    torsion = True
    undetermined = False
    for d in range(G.cutoff + 1):
        s = annihilation_degree(G, d, N=N)
        entry = {"degree": d, "dim": G.dim(d)}
        if s is None:
            if d + N > G.cutoff:
                entry["verdict"] = "undetermined (window edge)"
                undetermined = True
            else:
                entry["verdict"] = "not annihilated up to cutoff"
                torsion = False
        else:
            entry["verdict"] = "annihilated"
            entry["annihilation_degree"] = s
            entry["Nn"] = N * ceil(s / N)
        pieces.append(entry)
    return {"torsion": torsion, "window_edge_undetermined": undetermined, "N": N,
            "cutoff": G.cutoff, "pieces": pieces,
            "status": f"relative to cutoff {G.cutoff}"}


def max_annihilation(verdict: dict) -> int | None:
    vals = [p.get("annihilation_degree") for p in verdict["pieces"] if p["verdict"] == "annihilated"]
    return max(vals) if vals else 0


# ---------------------------------------------------------------- graded hom and Tors-closed modules

def graded_hom(X: GradedModule, G: GradedModule, d: int):
    """Hom(X, G[d]) computed inside the window; returns (pres, generator offsets, solution subspace)."""
    window = G.cutoff - d
    Xw = X.truncate(min(window, X.cutoff))
    gens = graded_generators(Xw)
    F, comps = graded_cover(Xw, gens)
    offsets, off = [], 0
    for gd, _ in gens:
        offsets.append(off)
        off += G.dim(gd + d)
    nvars = off
    E = G.algebra
    rows = []
    for l, C in enumerate(comps):
        for z in nullspace(C.rows, C.ncols, G.field):
            # phi_l(z) = sum over cover basis (i, e) of z * (v_i e)
            cols: dict = {}
            k = 0
            for i, (gd, _) in enumerate(gens):
                if gd > l:
                    continue
                for e in range(E.dim(l - gd)):
                    c = z.get(k)
                    if c:
                        for u in range(G.dim(gd + d)):
                            img = G.act(gd + d, {u: G.field.one}, l - gd, {e: G.field.one})
                            col = cols.setdefault(offsets[i] + u, {})
                            for r, x in img.items():
                                col[r] = col.get(r, 0) + c * x
                    k += 1
            byrow: dict = {}
            for var, col in cols.items():
                for r, x in col.items():
                    if x:
                        byrow.setdefault(r, {})[var] = x
            rows.extend(byrow.values())
    sol = Subspace(nvars, G.field, nullspace(rows, nvars, G.field))
    return gens, offsets, sol


def restriction_is_iso(G: GradedModule, n: int, d: int) -> bool:
    """Hom(A, G)_d -> Hom(A_{>=n}, G)_d is bijective (inside the window)."""
    E = G.algebra
    A = algebra_graded(E, G.cutoff)
    gensA, offA, solA = graded_hom(A, G, d)
    X = tail_ideal(E, n, G.cutoff)
    gensX, offX, solX = graded_hom(X, G, d)
    # X embeds in A levelwise by identity on levels >= n
    cols = []
    for f in solA.basis():
        v = {k - offA[0]: x for k, x in f.items()} if gensA else {}
        img: dict = {}
        for i, (gd, c) in enumerate(gensX):
            w = G.act(d, v, gd, c)
            img.update({offX[i] + k: x for k, x in w.items()})
        if solX.reduce(img):
            return False
        cols.append(solX.coords(img))
    R = Matrix.from_columns(solX.dim, cols, G.field)
    return solA.dim == solX.dim and R.rank() == solX.dim


def is_tors_closed(G: GradedModule, n_max: int, cutoff: int | None = None) -> dict:
    """Check Hom(A, G)_d -> Hom(A_{>=n}, G)_d bijective for 1 <= n <= n_max, 0 <= d <= cutoff - n."""
    if cutoff is not None and cutoff < G.cutoff:
        G = G.truncate(cutoff)
    failures = []
    checked = 0
    for n in range(1, n_max + 1):
        for d in range(0, G.cutoff - n + 1):
            checked += 1
            if not restriction_is_iso(G, n, d):
                failures.append([n, d])
    return {"closed": not failures, "failures": failures, "checked": checked,
            "status": f"closed up to (n_max={n_max}, cutoff={G.cutoff})" if not failures
            else "not closed"}


# ---------------------------------------------------------------- filtration

def l_filtration(G: GradedModule, N: int | None = None) -> Report:
    """L_{Nn} = (G_0..G_{Nn}, G_{Nn}A_1, ...): exhaustive chain of submodules with torsion quotients."""
    E = G.algebra
    N = generation_bound(E) if N is None else N
    rpt = Report("L-filtration")
    prev = None
    cut = G.cutoff
    for n in range(0, cut // N + 1):
        top = N * n
        L, Lge = [], []
        for l in range(cut + 1):
            if l <= top:
                full = Subspace(G.dim(l), G.field, [{j: G.field.one} for j in range(G.dim(l))])
                L.append(full)
                Lge.append(full.copy() if l == top else Subspace(G.dim(l), G.field))
            else:
                S = Subspace(G.dim(l), G.field)
                for j in range(G.dim(top)):
                    for x in range(E.dim(l - top)):
                        S.add(G.act(top, {j: G.field.one}, l - top, {x: G.field.one}))
                L.append(S)
                Lge.append(S.copy())
        rpt.checked += 1
        try:
            Lmod = graded_sub(G, L, f"L_{top}")
            graded_sub(G, Lge, f"L_>={top}")
        except InvariantViolation:
            rpt.fail("not-a-submodule", top)
            continue
        if prev is not None and not all(a.issubset(b) for a, b in zip(prev, L)):
            rpt.fail("not-a-chain", top)
        # L_{Nn} / L_{>=Nn} inside L_{Nn}
        rel = [Subspace(L[l].dim, G.field, [L[l].coords(v) for v in Lge[l].basis()]) for l in range(cut + 1)]
        Qt, _ = graded_quotient(Lmod, rel, f"L_{top}/L_>={top}")
        if any(Qt.dim(l) for l in range(top, cut + 1)):
            rpt.fail("quotient-not-bounded", top)
        v = is_torsion(Qt)
        if not v["torsion"]:
            rpt.fail("quotient-not-torsion", top)
        prev = L
    rpt.checked += 1
    if prev is None or not all(S.dim == G.dim(l) for l, S in enumerate(prev)):
        rpt.fail("not-exhaustive")
    return rpt

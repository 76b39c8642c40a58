"""Right E-modules in symmetric sequences: data, checks, free modules, shifts, covers."""
from __future__ import annotations

from collections import deque

from ..algebra import SymAlgebra, indecomposables
from ..errors import ConfigurationError, InvariantViolation
from ..linalg import Matrix, Subspace, kron, matrix_from_json, matrix_to_json, nullspace, vkron
from ..perm import Perm, block_sum, free_sizes, identity, shuffle_index, shuffles
from .. import rep
from ..rep import SnModule
from ..report import Report
from ..symseq import SymSeq, SymSeqMap


class EModule:
    """Right module over a symmetric algebra; ``actions[(n, m)]``: M_n (x) E_m -> M_{n+m}."""

    def __init__(self, algebra: SymAlgebra, underlying: SymSeq, actions: dict, name: str = "M"):
        if underlying.cutoff > algebra.cutoff:
            raise ConfigurationError("module cutoff exceeds algebra cutoff")
        if underlying.field != algebra.field:
            raise ConfigurationError("module and algebra over different fields")
        self.algebra = algebra
        self.underlying = underlying
        self.field = algebra.field
        self.cutoff = underlying.cutoff
        self.actions = {}
        for n in range(self.cutoff + 1):
            for m in range(self.cutoff + 1 - n):
                a = actions.get((n, m))
                want = (underlying.dim(n + m), underlying.dim(n) * algebra.dim(m))
                if a is None:
                    raise ValueError(f"missing action ({n},{m})")
                if a.shape != want:
                    raise ValueError(f"action ({n},{m}) has shape {a.shape}, expected {want}")
                self.actions[(n, m)] = a
        self.name = name
        self.meta: dict = {}

    def __repr__(self):
        return f"EModule({self.name}, dims={self.dims()})"

    def __getitem__(self, n: int) -> SnModule:
        return self.underlying[n]

    def dims(self) -> list[int]:
        return self.underlying.dims()

    def dim(self, n: int) -> int:
        return self.underlying.dim(n)

    def act(self, n: int, v: dict, m: int, x: dict) -> dict:
        return self.actions[(n, m)].apply(vkron(v, x, self.algebra.dim(m)))

    def perm_act(self, n: int, g: Perm, v: dict) -> dict:
        return self.underlying[n].apply(g, v) if n > 1 else dict(v)

    def truncate(self, cutoff: int) -> "EModule":
        acts = {k: v for k, v in self.actions.items() if k[0] + k[1] <= cutoff}
        return EModule(self.algebra, self.underlying.truncate(cutoff), acts, self.name)

    def check_axioms(self) -> Report:
        rpt = Report("module-axioms")
        E, M, f = self.algebra, self.underlying, self.field
        for n, lv in enumerate(M.levels):
            for rel in lv.check_relations():
                rpt.fail("relations", n, *rel)
        for (n, m), a in sorted(self.actions.items()):
            rpt.checked += 1
            idn, idm = Matrix.identity(M.dim(n), f), Matrix.identity(E.dim(m), f)
            big = M[n + m]
            ok = all(a @ kron(g, idm) == big.gen(i) @ a for i, g in enumerate(M[n].gens, 1))
            ok = ok and all(a @ kron(idn, g) == big.gen(n + j) @ a for j, g in enumerate(E[m].gens, 1))
            if not ok:
                rpt.fail("equivariance", n, m)
        for n in range(self.cutoff + 1):
            for m in range(self.cutoff + 1 - n):
                for p in range(self.cutoff + 1 - n - m):
                    rpt.checked += 1
                    lhs = self.actions[(n + m, p)] @ kron(self.actions[(n, m)], Matrix.identity(E.dim(p), f))
                    rhs = self.actions[(n, m + p)] @ kron(Matrix.identity(M.dim(n), f), E.mults[(m, p)])
                    if lhs != rhs:
                        rpt.fail("associativity", n, m, p)
        u = Matrix.from_columns(1, [E.unit], f)
        for n in range(self.cutoff + 1):
            rpt.checked += 1
            idn = Matrix.identity(M.dim(n), f)
            if self.actions[(n, 0)] @ kron(idn, u) != idn:
                rpt.fail("unit", n)
        return rpt

    def to_json(self) -> dict:
        return {
            "underlying": self.underlying.to_json(),
            "actions": {f"{n},{m}": matrix_to_json(a) for (n, m), a in sorted(self.actions.items())},
            "name": self.name,
        }

    @classmethod
    def from_json(cls, d, algebra: SymAlgebra) -> "EModule":
        M = SymSeq.from_json(d["underlying"], algebra.field)
        acts = {}
        for key, mat in d["actions"].items():
            n, m = (int(s) for s in key.split(","))
            acts[(n, m)] = matrix_from_json(mat, algebra.field, M.dim(n) * algebra.dim(m))
        return cls(algebra, M, acts, d.get("name", "M"))


class EModuleMap:
    """Levelwise maps f_n: source_n -> target_n."""

    def __init__(self, source: EModule, target: EModule, components: list[Matrix]):
        if source.cutoff != target.cutoff:
            raise ConfigurationError("cutoff mismatch")
        self.source = source
        self.target = target
        self.components = list(components)
        for n, c in enumerate(self.components):
            if c.shape != (target.dim(n), source.dim(n)):
                raise ValueError(f"component {n} has shape {c.shape}")

    def __getitem__(self, n):
        return self.components[n]

    @property
    def cutoff(self):
        return self.source.cutoff

    def as_seq_map(self) -> SymSeqMap:
        return SymSeqMap(self.source.underlying, self.target.underlying, self.components)

    def check(self) -> Report:
        rpt = Report("module-map")
        for n, i in self.as_seq_map().equivariance_failures():
            rpt.fail("equivariance", n, i)
        for (n, m), a in sorted(self.source.actions.items()):
            rpt.checked += 1
            lhs = self.components[n + m] @ a
            rhs = self.target.actions[(n, m)] @ kron(self.components[n],
                                                    Matrix.identity(self.source.algebra.dim(m), self.source.field))
            if lhs != rhs:
                rpt.fail("action", n, m)
        return rpt

    def is_injective(self) -> bool:
        return all(c.rank() == c.ncols for c in self.components)

    def is_surjective(self) -> bool:
        return all(c.rank() == c.nrows for c in self.components)

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def __matmul__(self, other: "EModuleMap") -> "EModuleMap":
        return EModuleMap(other.source, self.target, [a @ b for a, b in zip(self.components, other.components)])

    @classmethod
    def identity(cls, M: EModule) -> "EModuleMap":
        return cls(M, M, [Matrix.identity(M.dim(n), M.field) for n in range(M.cutoff + 1)])


# ---------------------------------------------------------------- builders

def algebra_as_module(E: SymAlgebra) -> EModule:
    return EModule(E, E.underlying, dict(E.mults), "E")


def free_module(E: SymAlgebra, m: int, cutoff: int | None = None) -> EModule:
    """F_m E: level n is k Sigma_n (x)_{Sigma_{n-m}} E_{n-m}, basis (coset rep, E basis)."""
    N = E.cutoff if cutoff is None else cutoff
    if m > N:
        raise ValueError(f"free module F_{m} beyond cutoff {N}")
    f = E.field
    levels = []
    for n in range(N + 1):
        if n < m:
            levels.append(rep.zero(n, f))
            continue
        sizes = free_sizes(n, m)
        de = E.dim(n - m)
        sub = E[n - m]
        gens = rep.induced_gens(sizes, de, lambda j, sub=sub: sub.gen(j - m), f)
        levels.append(SnModule(n, len(shuffles(sizes)) * de, gens, f))
    acts = {}
    for n in range(N + 1):
        for k in range(N + 1 - n):
            dim_src = levels[n].dim * E.dim(k)
            if n < m:
                acts[(n, k)] = Matrix.zeros(levels[n + k].dim, dim_src, f)
                continue
            reps = shuffles(free_sizes(n, m))
            idx = shuffle_index(free_sizes(n + k, m))
            de, de2, dk = E.dim(n - m), E.dim(n + k - m), E.dim(k)
            mu = E.mults[(n - m, k)]
            cols = []
            ext = identity(k)
            for g in reps:
                r2 = idx[block_sum(g, ext).images]
                for e in range(de):
                    for x in range(dk):
                        col = mu.cols[e * dk + x]
                        cols.append({r2 * de2 + i: a for i, a in col.items()})
            acts[(n, k)] = Matrix.from_columns(levels[n + k].dim, cols, f)
    M = EModule(E, SymSeq(levels, f), acts, f"F_{m}E")
    M.meta["free_degree"] = m
    return M


def free_generator(M: EModule) -> dict:
    """The generator id (x) 1 of a free module, in level m."""
    return {0: M.field.one}


def shift(M: EModule, k: int) -> EModule:
    """M[k]: level n is M_{k+n} restricted along 1_k x -, actions reindexed."""
    if k > M.cutoff:
        raise ValueError(f"shift {k} beyond cutoff {M.cutoff}")
    N = M.cutoff - k
    levels = [rep.restrict_tail(M[k + n], k) for n in range(N + 1)]
    acts = {(n, m): M.actions[(k + n, m)] for n in range(N + 1) for m in range(N + 1 - n)}
    return EModule(M.algebra, SymSeq(levels, M.field), acts, f"{M.name}[{k}]")


def direct_sum(mods: list[EModule], name: str = "") -> EModule:
    from ..linalg import block_diag
    E = mods[0].algebra
    N = mods[0].cutoff
    f = E.field
    levels = [rep.direct_sum([M[n] for M in mods], n, f) for n in range(N + 1)]
    acts = {}
    for n in range(N + 1):
        for m in range(N + 1 - n):
            acts[(n, m)] = block_diag([M.actions[(n, m)] for M in mods], f)
    return EModule(E, SymSeq(levels, f), acts, name or " + ".join(M.name for M in mods))


def sum_offsets(mods: list[EModule], n: int) -> list[int]:
    out, off = [], 0
    for M in mods:
        out.append(off)
        off += M.dim(n)
    return out


# ---------------------------------------------------------------- closures

def saturate(sub: Subspace, gens, vectors) -> None:
    """Add vectors to ``sub`` and close the span under the matrices ``gens``."""
    queue = deque()
    for v in vectors:
        if sub.add(v):
            queue.append(v)
    while queue:
        v = queue.popleft()
        for g in gens:
            w = g.apply(v)
            if sub.add(w):
                queue.append(w)


def closure_levels(M: EModule, seeds: dict, symmetric: bool = True) -> list[Subspace]:
    """Smallest levelwise family containing ``seeds[n]`` closed under right E-action (and Sigma)."""
    E = M.algebra
    indec = indecomposables(E)
    subs = []
    for n in range(M.cutoff + 1):
        S = Subspace(M.dim(n), M.field)
        vecs = list(seeds.get(n, []))
        for a in range(n):
            b = n - a
            if not subs[a].dim or not indec[b]:
                continue
            for v in subs[a].basis():
                for x in indec[b]:
                    vecs.append(M.act(a, v, b, x))
        if symmetric:
            saturate(S, M[n].gens, vecs)
        else:
            S.extend(vecs)
        subs.append(S)
    return subs


def sub_emodule(M: EModule, subs: list[Subspace], name: str = "S"):
    """Submodule on stable subspaces; returns (module, inclusion map)."""
    E = M.algebra
    levels, incs = [], []
    for n, S in enumerate(subs):
        mod, inc = rep.sub_module(M[n], S)
        levels.append(mod)
        incs.append(inc)
    acts = {}
    for n in range(M.cutoff + 1):
        for m in range(M.cutoff + 1 - n):
            cols = []
            for v in subs[n].basis():
                for x in range(E.dim(m)):
                    w = M.act(n, v, m, {x: M.field.one})
                    if subs[n + m].reduce(w):
                        raise InvariantViolation(f"subspace not closed under action ({n},{m})")
                    cols.append(subs[n + m].coords(w))
            acts[(n, m)] = Matrix.from_columns(subs[n + m].dim, cols, M.field)
    S = EModule(E, SymSeq(levels, M.field), acts, name)
    return S, EModuleMap(S, M, incs)


def quotient_emodule(M: EModule, subs: list[Subspace], name: str = "Q"):
    """M / S for a submodule given by stable subspaces; returns (module, projection map)."""
    E = M.algebra
    quots = [rep.quotient_module(M[n], S) for n, S in enumerate(subs)]
    acts = {}
    for n in range(M.cutoff + 1):
        for m in range(M.cutoff + 1 - n):
            a = M.actions[(n, m)]
            proj = quots[n + m].projection
            dm = E.dim(m)
            cols = []
            for j in quots[n].free_columns:
                for x in range(dm):
                    cols.append(proj.apply(a.cols[j * dm + x]))
            acts[(n, m)] = Matrix.from_columns(quots[n + m].dim, cols, M.field)
    Q = EModule(E, SymSeq([q.module for q in quots], M.field), acts, name)
    return Q, EModuleMap(M, Q, [q.projection for q in quots])


def kernel(f: EModuleMap):
    subs = [Subspace(c.ncols, f.source.field, nullspace(c.rows, c.ncols, f.source.field))
            for c in f.components]
    return sub_emodule(f.source, subs, "ker")


def cokernel(f: EModuleMap):
    subs = [Subspace(c.nrows, f.source.field, c.cols) for c in f.components]
    return quotient_emodule(f.target, subs, "coker")


def image_subspaces(f: EModuleMap) -> list[Subspace]:
    return [Subspace(c.nrows, f.source.field, c.cols) for c in f.components]


# ---------------------------------------------------------------- maps out of free modules

def free_map(F: EModule, M: EModule, v: dict) -> EModuleMap:
    """The module map F_m E -> M sending the generator to v in M_m: g (x) e -> g . (v e)."""
    m = F.meta["free_degree"]
    return cover_map([(m, v)], M, [F])


def cover_map(gens: list, M: EModule, frees: list[EModule] | None = None) -> EModuleMap:
    """Map from the direct sum of F_{deg c} E onto the span of generators c = (deg, vector)."""
    E = M.algebra
    if frees is None:
        frees = [free_module(E, d, M.cutoff) for d, _ in gens]
    src = frees[0] if len(frees) == 1 else direct_sum(frees, "cover")
    comps = []
    for l in range(M.cutoff + 1):
        cols = []
        for (d, v), F in zip(gens, frees):
            if l < d:
                continue
            de = E.dim(l - d)
            for g in shuffles(free_sizes(l, d)):
                for e in range(de):
                    w = M.act(d, v, l - d, {e: M.field.one})
                    cols.append(M.perm_act(l, g, w))
        comps.append(Matrix.from_columns(M.dim(l), cols, M.field))
    return EModuleMap(src, M, comps)


def minimal_generators(M: EModule, symmetric: bool = True) -> list[tuple[int, dict]]:
    """Greedy generating set (degree, unit vector) of M as a Sigma-E module (or plain E-module)."""
    E = M.algebra
    indec = indecomposables(E)
    gens = []
    subs: list[Subspace] = []
    for n in range(M.cutoff + 1):
        S = Subspace(M.dim(n), M.field)
        vecs = []
        for a in range(n):
            if subs[a].dim and indec[n - a]:
                for v in subs[a].basis():
                    for x in indec[n - a]:
                        vecs.append(M.act(a, v, n - a, x))
        if symmetric:
            saturate(S, M[n].gens, vecs)
        else:
            S.extend(vecs)
        for j in range(M.dim(n)):
            if j in S.rows or not S.reduce({j: M.field.one}):
                continue
            e = {j: M.field.one}
            gens.append((n, e))
            if symmetric:
                saturate(S, M[n].gens, [e])
            else:
                S.add(e)
        subs.append(S)
    return gens


def right_inverse_columns(c: Matrix) -> list[dict]:
    """For a surjective matrix, one preimage of each unit vector of the target."""
    from ..linalg import solve
    out = []
    for i in range(c.nrows):
        x = solve(c, {i: c.field.one})
        if x is None:
            raise ValueError("matrix is not surjective")
        out.append(x)
    return out

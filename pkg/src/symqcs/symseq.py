"""Truncated symmetric sequences, the Day tensor product and the twist."""
from __future__ import annotations

from math import comb

from .errors import ConfigurationError
from .linalg import QQ, Field, Matrix, Subspace, nullspace
from .perm import Perm, block_sum, chi, factor, identity, perm_index, shuffle_index, shuffles
from . import rep
from .rep import SnModule


class SymSeq:
    """Levels 0..cutoff, level n a Sigma_n-module."""

    def __init__(self, levels: list[SnModule], field: Field | None = None):
        self.levels = list(levels)
        for n, lv in enumerate(self.levels):
            if lv.n != n:
                raise ValueError(f"level {n} carries a Sigma_{lv.n}-module")
        self.field = field or (self.levels[0].field if self.levels else QQ)
        for lv in self.levels:
            if lv.field != self.field:
                raise ConfigurationError("levels over different fields")

    @property
    def cutoff(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, n: int) -> SnModule:
        return self.levels[n]

    def dims(self) -> list[int]:
        return [lv.dim for lv in self.levels]

    def dim(self, n: int) -> int:
        return self.levels[n].dim if 0 <= n <= self.cutoff else 0

    def __repr__(self):
        return f"SymSeq(dims={self.dims()})"

    def same_as(self, other: "SymSeq") -> bool:
        return self.cutoff == other.cutoff and all(a.same_as(b) for a, b in zip(self.levels, other.levels))

    def truncate(self, cutoff: int) -> "SymSeq":
        return SymSeq(self.levels[:cutoff + 1], self.field)

    def to_json(self) -> dict:
        return {"cutoff": self.cutoff, "levels": [lv.to_json() for lv in self.levels]}

    @classmethod
    def from_json(cls, d, field: Field = QQ) -> "SymSeq":
        levels = [SnModule.from_json(x, field) for x in d["levels"]]
        if "cutoff" in d and d["cutoff"] != len(levels) - 1:
            raise ValueError("cutoff does not match number of levels")
        return cls(levels, field)


def zero_seq(cutoff: int, field: Field = QQ) -> SymSeq:
    return SymSeq([rep.zero(n, field) for n in range(cutoff + 1)], field)


def unit(cutoff: int, field: Field = QQ) -> SymSeq:
    """(k, 0, 0, ...)."""
    return SymSeq([rep.trivial(0, 1, field)] + [rep.zero(n, field) for n in range(1, cutoff + 1)], field)


def representable(m: int, cutoff: int, field: Field = QQ) -> SymSeq:
    """F_m k: the regular representation in level m and zero elsewhere."""
    return SymSeq([rep.regular(n, field) if n == m else rep.zero(n, field)
                   for n in range(cutoff + 1)], field)


def seq_direct_sum(seqs: list[SymSeq]) -> SymSeq:
    cut = seqs[0].cutoff
    return SymSeq([rep.direct_sum([s[n] for s in seqs]) for n in range(cut + 1)], seqs[0].field)


class SymSeqMap:
    """Levelwise linear maps; component n has shape (dim target_n, dim source_n)."""

    def __init__(self, source: SymSeq, target: SymSeq, components: list[Matrix]):
        if source.cutoff != target.cutoff:
            raise ConfigurationError("cutoff mismatch")
        if len(components) != source.cutoff + 1:
            raise ValueError("one component per level required")
        for n, c in enumerate(components):
            if c.shape != (target.dim(n), source.dim(n)):
                raise ValueError(f"component {n} has shape {c.shape}")
        self.source = source
        self.target = target
        self.components = list(components)

    @property
    def cutoff(self):
        return self.source.cutoff

    def __getitem__(self, n):
        return self.components[n]

    def equivariance_failures(self) -> list[tuple[int, int]]:
        bad = []
        for n, f in enumerate(self.components):
            for i, (a, b) in enumerate(zip(self.source[n].gens, self.target[n].gens), 1):
                if f @ a != b @ f:
                    bad.append((n, i))
        return bad

    def is_equivariant(self) -> bool:
        return not self.equivariance_failures()

    def __matmul__(self, other: "SymSeqMap") -> "SymSeqMap":
        return SymSeqMap(other.source, self.target,
                         [a @ b for a, b in zip(self.components, other.components)])

    def __eq__(self, other):
        return isinstance(other, SymSeqMap) and all(
            a == b for a, b in zip(self.components, other.components))

    def is_iso(self) -> bool:
        return all(c.nrows == c.ncols and c.rank() == c.nrows for c in self.components)

    def is_injective(self) -> bool:
        return all(c.rank() == c.ncols for c in self.components)

    @classmethod
    def identity(cls, s: SymSeq) -> "SymSeqMap":
        return cls(s, s, [Matrix.identity(lv.dim, s.field) for lv in s.levels])

    @classmethod
    def zero(cls, s: SymSeq, t: SymSeq) -> "SymSeqMap":
        return cls(s, t, [Matrix.zeros(t.dim(n), s.dim(n), s.field) for n in range(s.cutoff + 1)])


def kernel(f: SymSeqMap):
    """Kernel sequence with its inclusion map."""
    levels, incs = [], []
    for n, c in enumerate(f.components):
        sub = Subspace(c.ncols, f.source.field, nullspace(c.rows, c.ncols, f.source.field))
        mod, inc = rep.sub_module(f.source[n], sub)
        levels.append(mod)
        incs.append(inc)
    k = SymSeq(levels, f.source.field)
    return k, SymSeqMap(k, f.source, incs)


def cokernel(f: SymSeqMap):
    """Cokernel sequence with its projection map."""
    levels, projs = [], []
    for n, c in enumerate(f.components):
        img = Subspace(c.nrows, f.source.field, c.cols)
        q = rep.quotient_module(f.target[n], img)
        levels.append(q.module)
        projs.append(q.projection)
    k = SymSeq(levels, f.source.field)
    return k, SymSeqMap(f.target, k, projs)


# ---------------------------------------------------------------- Day tensor

class DayLevel:
    """Bookkeeping for level t of M ^ N: summands p = 0..t in ascending order."""

    def __init__(self, t: int, dm: list[int], dn: list[int]):
        self.t = t
        self.offsets = {}
        off = 0
        for p in range(t + 1):
            q = t - p
            self.offsets[p] = off
            off += comb(t, p) * dm[p] * dn[q]
        self.dim = off
        self.dm = dm
        self.dn = dn

    def index(self, p: int, r: int, i: int, j: int) -> int:
        dn = self.dn[self.t - p]
        return self.offsets[p] + (r * self.dm[p] + i) * dn + j

    def decode(self, k: int):
        """Inverse of index: returns (p, shuffle, i, j)."""
        t = self.t
        for p in range(t, -1, -1):
            if k >= self.offsets[p] and self.dm[p] * self.dn[t - p]:
                local = k - self.offsets[p]
                dn = self.dn[t - p]
                dw = self.dm[p] * dn
                if local < comb(t, p) * dw:
                    r, rest = divmod(local, dw)
                    i, j = divmod(rest, dn)
                    return p, shuffles((p, t - p))[r], i, j
        raise IndexError(k)

    def basis(self):
        """Iterate (p, g, i, j) in basis order."""
        t = self.t
        for p in range(t + 1):
            q = t - p
            for g in shuffles((p, q)):
                for i in range(self.dm[p]):
                    for j in range(self.dn[q]):
                        yield p, g, i, j


class DayTensor(SymSeq):
    """M ^ N together with the layout needed to address its basis."""

    def __init__(self, m: SymSeq, n: SymSeq):
        if m.cutoff != n.cutoff:
            raise ConfigurationError("cutoff mismatch in Day tensor")
        if m.field != n.field:
            raise ConfigurationError("field mismatch in Day tensor")
        self.left = m
        self.right = n
        dm, dn = m.dims(), n.dims()
        self.layout = [DayLevel(t, dm, dn) for t in range(m.cutoff + 1)]
        levels = []
        for t in range(m.cutoff + 1):
            parts = [rep.induce_tensor(m[p], n[t - p]) for p in range(t + 1)]
            levels.append(rep.direct_sum(parts, t, m.field))
        super().__init__(levels, m.field)

    def element(self, p: int, pi: Perm, x: dict, y: dict) -> dict:
        """Vector of pi (x) x (x) y lying in the (p, t-p) summand; pi arbitrary."""
        t = pi.n
        q = t - p
        g, (h1, h2) = factor(pi, (p, q))
        lay = self.layout[t]
        r = shuffle_index((p, q))[g.images]
        hx = self.left[p].apply(h1, x) if p > 1 else x
        hy = self.right[q].apply(h2, y) if q > 1 else y
        out: dict = {}
        for i, a in hx.items():
            for j, b in hy.items():
                k = lay.index(p, r, i, j)
                out[k] = out.get(k, 0) + a * b
        return {k: v for k, v in out.items() if v}


def day_tensor(m: SymSeq, n: SymSeq) -> DayTensor:
    return DayTensor(m, n)


def day_map(src: DayTensor, tgt: DayTensor, f: SymSeqMap, g: SymSeqMap) -> SymSeqMap:
    """f ^ g : src -> tgt levelwise."""
    comps = []
    for t in range(src.cutoff + 1):
        cols = []
        for p, sh, i, j in src.layout[t].basis():
            fx = f[p].column(i)
            gy = g[t - p].column(j)
            cols.append(tgt.element(p, sh, fx, gy))
        comps.append(Matrix.from_columns(tgt.dim(t), cols, src.field))
    return SymSeqMap(src, tgt, comps)


def twist(mn: DayTensor, nm: DayTensor, naive: bool = False) -> SymSeqMap:
    """The symmetry M ^ N -> N ^ M: alpha (x) x (x) y -> alpha chi_{q,p} (x) y (x) x.

    ``naive=True`` drops the shuffle factor; the result is then generally not
    equivariant.
    """
    comps = []
    for t in range(mn.cutoff + 1):
        cols = []
        for p, g, i, j in mn.layout[t].basis():
            q = t - p
            alpha = g if naive else g * chi(q, p)
            cols.append(nm.element(q, alpha, {j: mn.field.one}, {i: mn.field.one}))
        comps.append(Matrix.from_columns(nm.dim(t), cols, mn.field))
    return SymSeqMap(mn, nm, comps)


def associator(ab_c: DayTensor, a_bc: DayTensor) -> SymSeqMap:
    """(A ^ B) ^ C -> A ^ (B ^ C) by reindexing triple shuffles."""
    ab = ab_c.left
    bc = a_bc.right
    if not isinstance(ab, DayTensor) or not isinstance(bc, DayTensor):
        raise TypeError("associator needs nested Day tensors")
    one = ab_c.field.one
    comps = []
    for t in range(ab_c.cutoff + 1):
        cols = []
        for s, G, u, z in ab_c.layout[t].basis():
            a_, g, x, y = ab.layout[s].decode(u)
            b_ = s - a_
            pi = G * block_sum(g, identity(t - s))
            # pi is an (a, b, c)-shuffle; split it as G' (1_a x h) with h a (b, c)-shuffle
            G2, (h1, h2) = factor(pi, (a_, t - a_))
            inner = bc.element(b_, h2, {y: one}, {z: one})
            cols.append(a_bc.element(a_, G2, {x: one}, inner))
        comps.append(Matrix.from_columns(a_bc.dim(t), cols, ab_c.field))
    return SymSeqMap(ab_c, a_bc, comps)


def inverse_map(f: SymSeqMap) -> SymSeqMap:
    """Inverse of a levelwise invertible map (each component a permutation-like iso)."""
    from .linalg import solve
    comps = []
    for c in f.components:
        cols = []
        for i in range(c.nrows):
            x = solve(c, {i: f.source.field.one})
            if x is None:
                raise ValueError("map is not invertible")
            cols.append(x)
        comps.append(Matrix.from_columns(c.ncols, cols, f.source.field))
    return SymSeqMap(f.target, f.source, comps)


def representable_product_iso(fm_fn: DayTensor, fmn: SymSeq, m: int, n: int) -> SymSeqMap:
    """F_m k ^ F_n k -> F_{m+n} k, (g, sigma, tau) -> g (sigma x tau)."""
    from .perm import all_perms
    comps = []
    for t in range(fm_fn.cutoff + 1):
        cols = []
        if t == m + n:
            pm, pn = all_perms(m), all_perms(n)
            for p, g, i, j in fm_fn.layout[t].basis():
                cols.append({perm_index(g * block_sum(pm[i], pn[j])): fm_fn.field.one})
        else:
            cols = [{} for _ in range(fm_fn.dim(t))]
        comps.append(Matrix.from_columns(fmn.dim(t), cols, fm_fn.field))
    return SymSeqMap(fm_fn, fmn, comps)


def day_dim_formula(dm: list[int], dn: list[int], t: int) -> int:
    return sum(comb(t, p) * dm[p] * dn[t - p] for p in range(t + 1))


def hexagon_maps(a: SymSeq, b: SymSeq, c: SymSeq) -> tuple[SymSeqMap, SymSeqMap]:
    """Both sides of the hexagon A ^ (B ^ C) -> (B ^ C) ^ A.

    Direct: the twist past B ^ C. Composite: reassociate, twist A past B, reassociate,
    twist A past C, reassociate.
    """
    ab, ba, ac, ca, bc = day_tensor(a, b), day_tensor(b, a), day_tensor(a, c), day_tensor(c, a), day_tensor(b, c)
    a_bc, bc_a = day_tensor(a, bc), day_tensor(bc, a)
    ab_c, ba_c = day_tensor(ab, c), day_tensor(ba, c)
    b_ac, b_ca = day_tensor(b, ac), day_tensor(b, ca)
    direct = twist(a_bc, bc_a)
    idb, idc = SymSeqMap.identity(b), SymSeqMap.identity(c)
    steps = [
        inverse_map(associator(ab_c, a_bc)),
        day_map(ab_c, ba_c, twist(ab, ba), idc),
        associator(ba_c, b_ac),
        day_map(b_ac, b_ca, idb, twist(ac, ca)),
        inverse_map(associator(bc_a, b_ca)),
    ]
    composite = steps[0]
    for s in steps[1:]:
        composite = s @ composite
    return direct, composite

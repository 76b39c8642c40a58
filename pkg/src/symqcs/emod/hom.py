"""Truncated internal hom [M, N] computed from a free cover of M."""
from __future__ import annotations

from ..linalg import Matrix, Subspace, nullspace, solve
from ..perm import block_sum, chi, free_sizes, identity, shuffles
from ..rep import SnModule
from ..symseq import SymSeq
from .core import EModule, EModuleMap, cover_map, minimal_generators


class Presentation:
    """Generators of M and the kernel of the cover map, level by level."""

    def __init__(self, M: EModule, symmetric: bool = True):
        self.module = M
        self.gens = minimal_generators(M, symmetric)
        self.cover = cover_map(self.gens, M)
        self.kernels = []
        for c in self.cover.components:
            self.kernels.append(nullspace(c.rows, c.ncols, M.field))
        # cover basis labels per level: (generator index, coset rep, E index)
        E = M.algebra
        self.labels = []
        for l in range(M.cutoff + 1):
            lab = []
            for ci, (d, _) in enumerate(self.gens):
                if l < d:
                    continue
                for g in shuffles(free_sizes(l, d)):
                    for e in range(E.dim(l - d)):
                        lab.append((ci, g, e))
            self.labels.append(lab)


class HomLevel:
    """[M, N]_k: maps M -> N[k], parametrised by generator values v_c in N_{k + deg c}."""

    def __init__(self, pres: Presentation, N: EModule, k: int):
        self.pres = pres
        self.N = N
        self.k = k
        self.window = N.cutoff - k
        M = pres.module
        self.gens = [(i, d) for i, (d, _) in enumerate(pres.gens) if d <= self.window]
        self.offsets = {}
        off = 0
        for i, d in self.gens:
            self.offsets[i] = off
            off += N.dim(k + d)
        self.nvars = off
        rows = []
        for l in range(min(self.window, M.cutoff) + 1):
            for z in pres.kernels[l]:
                rows.extend(self._constraint_rows(l, z))
        self.solutions = Subspace(self.nvars, N.field, nullspace(rows, self.nvars, N.field))

    @property
    def dim(self) -> int:
        return self.solutions.dim

    def _image_of_cover_basis(self, l: int, label, v: dict) -> dict:
        """phi(g (x) e on generator c) = (1_k x g) . (v_c e) in N_{k+l}."""
        ci, g, e = label
        d = self.pres.gens[ci][0]
        k = self.k
        w = self.N.act(k + d, v, l - d, {e: self.N.field.one})
        return self.N.perm_act(k + l, block_sum(identity(k), g), w)

    def _constraint_rows(self, l: int, z: dict) -> list[dict]:
        """Rows (over the unknowns) of the equations phi_l(z) = 0."""
        N, k = self.N, self.k
        cols = {}
        labels = self.pres.labels[l]
        for b, coeff in z.items():
            ci = labels[b][0]
            d = self.pres.gens[ci][0]
            off = self.offsets[ci]
            for u in range(N.dim(k + d)):
                img = self._image_of_cover_basis(l, labels[b], {u: N.field.one})
                col = cols.setdefault(off + u, {})
                for r, x in img.items():
                    y = col.get(r, 0) + coeff * x
                    if y:
                        col[r] = y
                    else:
                        col.pop(r, None)
        rows: dict = {}
        for var, col in cols.items():
            for r, x in col.items():
                rows.setdefault(r, {})[var] = x
        return [r for r in rows.values() if r]

    def generator_value(self, sol: dict, ci: int) -> dict:
        d = self.pres.gens[ci][0]
        off = self.offsets[ci]
        return {j - off: x for j, x in sol.items() if off <= j < off + self.N.dim(self.k + d)}

    def value(self, sol: dict, l: int, w: dict) -> dict:
        """f_l(w) for the hom given by the unknown vector ``sol``."""
        P = self.pres.cover.components[l]
        x = solve(P, w)
        if x is None:
            raise ValueError("element not in the module")
        out: dict = {}
        labels = self.pres.labels[l]
        for b, coeff in x.items():
            ci = labels[b][0]
            v = self.generator_value(sol, ci)
            for r, y in self._image_of_cover_basis(l, labels[b], v).items():
                out[r] = out.get(r, 0) + coeff * y
        return {r: y for r, y in out.items() if y}

    def basis(self) -> list[dict]:
        return self.solutions.basis()


def internal_hom(M: EModule, N: EModule) -> EModule:
    """[M, N] up to the common cutoff; level k is constrained only by levels <= cutoff - k."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    E = M.algebra
    cut = min(M.cutoff, N.cutoff)
    pres = Presentation(M)
    homs = [HomLevel(pres, N, k) for k in range(cut + 1)]
    levels = []
    for k, H in enumerate(homs):
        gens = []
        for i in range(1, k):
            cols = []
            for sol in H.basis():
                img: dict = {}
                for ci, d in H.gens:
                    v = H.generator_value(sol, ci)
                    w = N[k + d].gen(i).apply(v)
                    img.update({H.offsets[ci] + j: x for j, x in w.items()})
                cols.append(H.solutions.coords(img))
            gens.append(Matrix.from_columns(H.dim, cols, E.field))
        levels.append(SnModule(k, H.dim, gens, E.field))
    acts = {}
    for k in range(cut + 1):
        for l in range(cut + 1 - k):
            H, H2 = homs[k], homs[k + l]
            cols = []
            for sol in H.basis():
                for x in range(E.dim(l)):
                    img: dict = {}
                    for ci, d in H2.gens:
                        v = H.generator_value(sol, ci)
                        w = hom_structure(N, k, l, d, v, {x: E.field.one})
                        img.update({H2.offsets[ci] + j: y for j, y in w.items()})
                    if H2.solutions.reduce(img):
                        raise ValueError(f"structure map leaves the hom space at ({k},{l})")
                    cols.append(H2.solutions.coords(img))
            acts[(k, l)] = Matrix.from_columns(H2.dim, cols, E.field)
    out = EModule(E, SymSeq(levels, E.field), acts, f"[{M.name}, {N.name}]")
    out.meta["hom_levels"] = homs
    out.meta["valid_for_levels"] = {k: cut - k for k in range(cut + 1)}
    return out


def hom_structure(N: EModule, k: int, l: int, d: int, v: dict, x: dict) -> dict:
    """(f x) on a generator of degree d: (1_k x chi_{d,l}) . (f(c) x).

    The blocks of N_{k+l+d} are then ordered (hom level k | E_l | source degree d),
    which is the order the Sigma_k x Sigma_l equivariance of a right module needs.
    """
    w = N.act(k + d, v, l, x)
    return N.perm_act(k + l + d, block_sum(identity(k), chi(d, l)), w)


def internal_hom_level(M: EModule, N: EModule, k: int):
    """Level k of [M, N] with its validity window (levels <= cutoff - k)."""
    H = internal_hom(M, N)
    return H[k], {"valid_for_levels": H.meta["valid_for_levels"][k], "status": "truncation-approximate"}


def evaluation_iso(H: EModule, M: EModule, m: int) -> EModuleMap:
    """[F_m E, M] -> M[m]: f -> chi_{k,m} . f_m(iota_m), on levels 0..cutoff-m."""
    from .core import shift
    Mm = shift(M, m)
    cut = Mm.cutoff
    Ht = H.truncate(cut)
    homs = H.meta["hom_levels"]
    one = M.field.one
    comps = []
    for k in range(cut + 1):
        hk = homs[k]
        cols = []
        for sol in hk.basis():
            val = hk.value(sol, m, {0: one})
            cols.append(M.perm_act(k + m, chi(k, m), val))
        comps.append(Matrix.from_columns(Mm.dim(k), cols, M.field))
    return EModuleMap(Ht, Mm, comps)

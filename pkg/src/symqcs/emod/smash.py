"""The balanced smash product M ^_E N as a levelwise coequalizer inside M ^ N."""
from __future__ import annotations

from ..errors import ConfigurationError
from ..linalg import Matrix, Subspace
from ..perm import block_sum, chi, identity, shuffles
from .. import rep
from ..symseq import DayTensor, SymSeq
from .core import EModule, EModuleMap


class Smash(EModule):
    """M ^_E N with the Day tensor it is a quotient of and the level projections."""

    day: DayTensor
    relations: list
    quotients: list

    def project(self, t: int, v: dict) -> dict:
        return self.quotients[t].projection.apply(v)

    def element(self, a: int, pi, x: dict, y: dict) -> dict:
        """Class of pi (x) x (x) y with x in M_a, y in N_{t-a}."""
        return self.project(pi.n, self.day.element(a, pi, x, y))


def coequalizer_relations(M: EModule, N: EModule, t: int, day: DayTensor) -> Subspace:
    """Span of (m e) (x) n - m (x) (e n) over all triple shuffles, level t.

    The left action of E on N is e . n = chi . (n e) transported through the twist.
    """
    E = M.algebra
    one = M.field.one
    rel = Subspace(day.dim(t), M.field)
    for a in range(t + 1):
        if not M.dim(a):
            continue
        for b in range(1, t - a + 1):
            c = t - a - b
            if not N.dim(c) or not E.dim(b):
                continue
            twist_fix = block_sum(identity(a), chi(c, b))
            for G in shuffles((a, b, c)):
                G2 = G * twist_fix
                for i in range(M.dim(a)):
                    for e in range(E.dim(b)):
                        me = M.act(a, {i: one}, b, {e: one})
                        for j in range(N.dim(c)):
                            ne = N.act(c, {j: one}, b, {e: one})
                            v = day.element(a + b, G, me, {j: one})
                            w = day.element(a, G2, {i: one}, ne)
                            for k, x in w.items():
                                y = v.get(k, 0) - x
                                if y:
                                    v[k] = y
                                else:
                                    v.pop(k, None)
                            rel.add(v)
    return rel


def smash_over_E(M: EModule, N: EModule) -> Smash:
    if M.algebra is not N.algebra:
        raise ConfigurationError("smash product of modules over different algebras")
    cut = min(M.cutoff, N.cutoff)
    M, N = (M.truncate(cut) if M.cutoff > cut else M), (N.truncate(cut) if N.cutoff > cut else N)
    E = M.algebra
    day = DayTensor(M.underlying, N.underlying)
    rels = [coequalizer_relations(M, N, t, day) for t in range(cut + 1)]
    quots = [rep.quotient_module(day[t], rels[t]) for t in range(cut + 1)]
    one = M.field.one
    acts = {}
    for t in range(cut + 1):
        for k in range(cut + 1 - t):
            cols = []
            ext = identity(k)
            for col in quots[t].free_columns:
                p, G, i, j = day.layout[t].decode(col)
                Gx = block_sum(G, ext)
                for x in range(E.dim(k)):
                    nx = N.act(t - p, {j: one}, k, {x: one})
                    cols.append(quots[t + k].projection.apply(day.element(p, Gx, {i: one}, nx)))
            acts[(t, k)] = Matrix.from_columns(quots[t + k].dim, cols, M.field)
    S = Smash(E, SymSeq([q.module for q in quots], M.field), acts, f"{M.name} ^_E {N.name}")
    S.day = day
    S.relations = rels
    S.quotients = quots
    return S


def smash_map(src: Smash, tgt: Smash, f: EModuleMap, g: EModuleMap) -> EModuleMap:
    """f ^_E g between smash products."""
    comps = []
    for t in range(src.cutoff + 1):
        cols = []
        for col in src.quotients[t].free_columns:
            p, G, i, j = src.day.layout[t].decode(col)
            v = tgt.day.element(p, G, f[p].column(i), g[t - p].column(j))
            cols.append(tgt.project(t, v))
        comps.append(Matrix.from_columns(tgt.dim(t), cols, src.field))
    return EModuleMap(src, tgt, comps)


def relation_respecting(src: Smash, target: EModule, day_components: list[Matrix]) -> bool:
    """Whether levelwise maps out of the Day tensor vanish on the coequalizer relations."""
    for t, c in enumerate(day_components):
        for r in src.relations[t].basis():
            if c.apply(r):
                return False
    return True


def descend(src: Smash, target: EModule, day_components: list[Matrix]) -> EModuleMap:
    """Induced map on the quotient from maps defined on the Day tensor basis."""
    comps = []
    for t, c in enumerate(day_components):
        cols = [c.cols[j] for j in src.quotients[t].free_columns]
        comps.append(Matrix.from_columns(target.dim(t), cols, src.field))
    return EModuleMap(src, target, comps)


def free_smash_iso(F_mn: EModule, S: Smash, m: int, n: int) -> EModuleMap:
    """F_{m+n}E -> F_mE ^_E F_nE sending the generator to the class of id (x) iota_m (x) iota_n."""
    from .core import free_map
    one = S.field.one
    gen = S.element(m, identity(m + n), {0: one}, {0: one})
    return free_map(F_mn, S, gen)

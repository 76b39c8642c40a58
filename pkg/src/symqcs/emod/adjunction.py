"""Suspension modules, the maps a_n, and the finite checks of the V -| U adjunction."""
from __future__ import annotations

import numpy as np

from ..algebra import SymAlgebra
from ..errors import ConfigurationError, Unsupported
from ..linalg import Matrix
from ..perm import block_sum, chi, free_sizes, identity, shuffles
from .. import rep
from ..report import Report
from ..symseq import SymSeq
from .core import EModule, EModuleMap, cover_map, free_module, shift
from .graded import GradedModule, GradedPresentation, u_functor, v_functor
from .smash import descend, relation_respecting, smash_over_E


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def trivial_symmetric(G: GradedModule, name: str = "M") -> EModule:
    """A graded module over a trivial-action algebra, viewed as a symmetric module with trivial actions."""
    E = G.algebra
    if not E.has_trivial_action:
        raise Unsupported("trivial symmetric structure needs an algebra with trivial symmetric action")
    levels = [rep.trivial(n, G.dim(n), E.field) for n in range(G.cutoff + 1)]
    return EModule(E, SymSeq(levels, E.field), dict(G.mult), name)


def suspension_presentation(E: SymAlgebra, base_dim: int, degree: int, relations=(),
                            cutoff: int | None = None) -> GradedPresentation:
    """Base W = k^base_dim placed in ``degree``; relation (k, v) has v in W (x) E_k, index w * dim E_k + e."""
    rels = []
    for k, v in relations:
        if k < 1:
            raise ConfigurationError("suspension relations live in positive relative degree")
        de = E.dim(k)
        comps: dict = {}
        for idx, x in v.items():
            w, e = divmod(idx, de)
            if w >= base_dim:
                raise ConfigurationError("relation outside W (x) E_k")
            comps.setdefault(w, {})[e] = x
        rels.append((degree + k, comps))
    return GradedPresentation(E, [degree] * base_dim, rels, cutoff)


def suspension(E: SymAlgebra, base_dim: int, degree: int = 0, relations=(),
               cutoff: int | None = None) -> EModule:
    """(W, W E_1, W E_2, ...) placed from ``degree`` on, modulo the given relations.

    In degree 0 the symmetric groups act through the E factor; in positive degree the
    algebra must have trivial symmetric action.
    """
    pres = suspension_presentation(E, base_dim, degree, relations, cutoff)
    if degree == 0:
        M, _ = v_functor(pres)
    else:
        M = trivial_symmetric(pres.cokernel())
    M.name = f"Sigma^inf(k^{base_dim})[{degree}]" if degree else f"Sigma^inf(k^{base_dim})"
    M.meta["presentation"] = pres
    M.meta["bottom_degree"] = degree
    return M


def random_relations(E: SymAlgebra, base_dim: int, rng: np.random.Generator, count: int,
                     max_degree: int = 2, degree: int = 0) -> list:
    out = []
    for _ in range(count):
        k = int(rng.integers(1, max_degree + 1))
        size = base_dim * E.dim(k)
        if not size or degree + k > E.cutoff:
            continue
        vals = rng.integers(-2, 3, size=size)
        v = {i: int(x) for i, x in enumerate(vals) if x}
        if v:
            out.append((k, v))
    return out


def random_suspension_presentation(E: SymAlgebra, seed: int, cutoff: int | None = None) -> GradedPresentation:
    rng = rng_for(seed)
    base = int(rng.integers(1, 4))
    rels = random_relations(E, base, rng, int(rng.integers(1, 4)))
    return suspension_presentation(E, base, 0, rels, cutoff)


def random_presentation(E: SymAlgebra, seed: int, max_gen_degree: int = 2,
                        cutoff: int | None = None) -> GradedPresentation:
    """Random finitely generated graded module: generators in degrees <= max_gen_degree."""
    rng = rng_for(seed)
    ngens = int(rng.integers(1, 4))
    degs = sorted(int(rng.integers(0, max_gen_degree + 1)) for _ in range(ngens))
    rels = []
    for _ in range(int(rng.integers(1, 4))):
        d = int(rng.integers(min(degs) + 1, min(degs) + 3))
        comps = {}
        for i, gd in enumerate(degs):
            if gd > d or not E.dim(d - gd):
                continue
            vals = rng.integers(-2, 3, size=E.dim(d - gd))
            part = {j: int(x) for j, x in enumerate(vals) if x}
            if part:
                comps[i] = part
        if comps:
            rels.append((d, comps))
    return GradedPresentation(E, degs, rels, cutoff)


# ---------------------------------------------------------------- checks

def same_emodule(A: EModule, B: EModule) -> bool:
    return A.underlying.same_as(B.underlying) and all(A.actions[k] == B.actions[k] for k in A.actions)


def v_of_free(E: SymAlgebra, n: int, cutoff: int | None = None) -> bool:
    """V(E(-n)) equals F_n E on the nose."""
    V, _ = v_functor(GradedPresentation(E, [n], [], cutoff))
    return same_emodule(V, free_module(E, n, cutoff))


def uv_identity(pres: GradedPresentation) -> Report:
    """U V of a presented graded module over a trivial-action algebra equals the module itself."""
    rpt = Report("UV-identity")
    G = pres.cokernel()
    V, _ = v_functor(pres)
    UV = u_functor(V)
    rpt.checked += 1
    if UV.dims != G.dims:
        rpt.fail("dims", UV.dims, G.dims)
        return rpt
    for key in sorted(G.mult):
        rpt.checked += 1
        if UV.mult[key] != G.mult[key]:
            rpt.fail("multiplication", *key)
    rpt.details["dims"] = G.dims
    return rpt


def lemma_vu_smash(M: EModule, n: int) -> Report:
    """For M zero below n and generated in degree n: V U(M) is isomorphic to M[n] smash F_n E.

    The isomorphism sends the generator iota_n of the i-th free summand to the class of
    id (x) m_i (x) iota_n.
    """
    from .graded import present
    rpt = Report("VU-smash")
    E = M.algebra
    if any(M.dim(j) for j in range(n)):
        raise ConfigurationError("module is not zero below the generating degree")
    pres = present(u_functor(M))
    if any(d != n for d in pres.gen_degrees):
        raise ConfigurationError("module is not generated in a single degree")
    VU, _ = v_functor(pres)
    Mn = shift(M, n)
    S = smash_over_E(Mn, free_module(E, n, Mn.cutoff))
    rels = VU.meta["relations"]
    VU = VU.truncate(S.cutoff)
    one = M.field.one
    gens = [(n, S.element(0, identity(n), v, {0: one})) for _, v in pres.generator_vectors]
    cov = cover_map(gens, S)
    comps = []
    for l in range(S.cutoff + 1):
        C = cov.components[l]
        rpt.checked += 1
        if any(C.apply(r) for r in rels[l].basis()):
            rpt.fail("relations-not-killed", l)
        free, _ = rels[l].quotient_projector()
        comps.append(Matrix.from_columns(S.dim(l), [C.cols[j] for j in free], M.field))
    f = EModuleMap(VU, S, comps)
    for cell in f.check().violations:
        rpt.fail("map", *cell)
    for l, c in enumerate(comps):
        rpt.checked += 1
        if c.nrows != c.ncols or c.rank() != c.nrows:
            rpt.fail("not-bijective", l)
    rpt.details["dims"] = S.dims()
    return rpt


# ---------------------------------------------------------------- the maps a_n

def a_map(E: SymAlgebra, n: int, cutoff: int | None = None) -> EModuleMap:
    """a_n: E[n] smash_E F_n E -> E, adjoint to the identity E[n] -> [F_n E, E].

    On a Day tensor basis element G (x) x (x) (h (x) e') with x in E_{n+a}:
    G (1_a x h) . mu(chi_{n,a} x (x) e').
    """
    from .core import algebra_as_module
    N = E.cutoff if cutoff is None else cutoff
    if n > N:
        raise ValueError(f"a_{n} beyond cutoff {N}")
    EM = algebra_as_module(E).truncate(N)
    En = shift(EM, n)
    S = smash_over_E(En, free_module(E, n, En.cutoff))
    target = EM.truncate(S.cutoff)
    one = E.field.one
    day_comps = []
    for t in range(S.cutoff + 1):
        lay = S.day.layout[t]
        cols = []
        for col in range(S.day.dim(t)):
            a, G, i, j = lay.decode(col)
            b = t - a
            if b < n:
                cols.append({})
                continue
            reps = shuffles(free_sizes(b, n))
            de = E.dim(b - n)
            h, e2 = reps[j // de], j % de
            x = EM.perm_act(n + a, chi(n, a), {i: one})
            w = EM.act(n + a, x, b - n, {e2: one})
            g = G * block_sum(identity(a), h)
            cols.append(EM.perm_act(t, g, w))
        day_comps.append(Matrix.from_columns(target.dim(t), cols, E.field))
    f = descend(S, target, day_comps)
    f.relations_respected = relation_respecting(S, target, day_comps)
    return f


def a_map_cokernel(E: SymAlgebra, n: int, cutoff: int | None = None) -> GradedModule:
    from .core import cokernel
    f = a_map(E, n, cutoff)
    Q, _ = cokernel(f)
    return u_functor(Q)

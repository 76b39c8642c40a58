"""Seeded random monomorphisms and the injectivity check for F_mE smash -."""
from __future__ import annotations

import numpy as np

from ..algebra import SymAlgebra
from ..report import Report
from .core import EModuleMap, closure_levels, direct_sum, free_module, quotient_emodule, sub_emodule
from .smash import smash_map, smash_over_E


def _random_vector(dim: int, rng: np.random.Generator) -> dict:
    vals = rng.integers(-2, 3, size=dim)
    v = {i: int(x) for i, x in enumerate(vals) if x}
    if not v and dim:
        v = {int(rng.integers(0, dim)): 1}
    return v


def random_target(E: SymAlgebra, rng: np.random.Generator, cutoff: int):
    """F_0E, F_1E, their sum, or F_0E modulo a random cyclic submodule."""
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return free_module(E, 0, cutoff)
    if kind == 1:
        return free_module(E, 1, cutoff)
    if kind == 2:
        return direct_sum([free_module(E, 0, cutoff), free_module(E, 1, cutoff)])
    F = free_module(E, 0, cutoff)
    d = int(rng.integers(1, cutoff + 1))
    if not E.dim(d):
        return F
    Q, _ = quotient_emodule(F, closure_levels(F, {d: [_random_vector(E.dim(d), rng)]}), "F_0E/r")
    return Q


def random_monomorphism(E: SymAlgebra, seed: int, cutoff: int | None = None) -> EModuleMap:
    """Inclusion of the submodule generated by one or two random elements of a random target."""
    N_cut = E.cutoff if cutoff is None else cutoff
    rng = np.random.Generator(np.random.Philox(seed))
    N = random_target(E, rng, N_cut)
    seeds: dict = {}
    for _ in range(int(rng.integers(1, 3))):
        levels = [n for n in range(N.cutoff + 1) if N.dim(n)]
        if not levels:
            break
        n = levels[int(rng.integers(0, len(levels)))]
        seeds.setdefault(n, []).append(_random_vector(N.dim(n), rng))
    _, inc = sub_emodule(N, closure_levels(N, seeds), "S")
    return inc


def smash_preserves_injectivity(f: EModuleMap, m: int = 2) -> Report:
    """F_mE smash f is injective at every level, given f is."""
    rpt = Report(f"flatness-F{m}")
    E = f.source.algebra
    rpt.checked += 1
    if not f.is_injective():
        rpt.fail("input-not-injective")
        return rpt
    F = free_module(E, m, f.cutoff)
    S1, S2 = smash_over_E(F, f.source), smash_over_E(F, f.target)
    g = smash_map(S1, S2, EModuleMap.identity(F), f)
    for l, c in enumerate(g.components):
        rpt.checked += 1
        if c.ncols and c.rank() != c.ncols:
            rpt.fail("kernel", l)
    rpt.details["dims"] = [S1.dims(), S2.dims()]
    return rpt

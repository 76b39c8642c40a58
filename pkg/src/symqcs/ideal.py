"""Sigma-ideals of a symmetric algebra: closure, products, two-sidedness, cutoff primality, radicals."""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .algebra import SymAlgebra
from .errors import ConfigurationError
from .linalg import Matrix, Subspace, matrix_from_json, matrix_to_json, nullspace
from .report import Report


def algebra_module(E: SymAlgebra):
    from .emod.core import algebra_as_module
    if "as_module" not in E._cache:
        E._cache["as_module"] = algebra_as_module(E)
    return E._cache["as_module"]


def closure_in(M, seeds: dict, symmetric: bool = True) -> list[Subspace]:
    """Sigma-closure (or plain right-submodule closure) of homogeneous seeds inside a module."""
    from .emod.core import closure_levels
    return closure_levels(M, seeds, symmetric)


class SigmaIdeal:
    """Levelwise subspaces of E up to the cutoff, stable under Sigma and right multiplication."""

    def __init__(self, algebra: SymAlgebra, levels: list[Subspace], generators=(), name: str = "I",
                 symmetric: bool = True):
        if len(levels) != algebra.cutoff + 1:
            raise ConfigurationError("one subspace per level required")
        self.algebra = algebra
        self.levels = levels
        self.generators = list(generators)
        self.name = name
        self.symmetric = symmetric

    def __repr__(self):
        return f"SigmaIdeal({self.name}, dims={self.dims()})"

    @property
    def cutoff(self) -> int:
        return self.algebra.cutoff

    def dims(self) -> list[int]:
        return [S.dim for S in self.levels]

    def __getitem__(self, n: int) -> Subspace:
        return self.levels[n]

    def contains(self, n: int, v: dict) -> bool:
        return self.levels[n].contains(v)

    def issubset(self, other: "SigmaIdeal") -> bool:
        return all(a.issubset(b) for a, b in zip(self.levels, other.levels))

    __le__ = issubset

    def __eq__(self, other):
        return isinstance(other, SigmaIdeal) and self.issubset(other) and other.issubset(self)

    def __hash__(self):
        return hash(tuple(self.dims()))

    def contains_positive(self) -> bool:
        """Whether E_{>=1} is contained (up to the cutoff)."""
        return all(self.levels[n].is_full() for n in range(1, self.cutoff + 1))

    def is_stable(self) -> Report:
        """Sigma-stability and right absorption, level by level."""
        rpt = Report("ideal-stability")
        E = self.algebra
        for n, S in enumerate(self.levels):
            for i, g in enumerate(E[n].gens, 1):
                rpt.checked += 1
                if self.symmetric and any(not S.contains(g.apply(v)) for v in S.basis()):
                    rpt.fail("sigma", n, i)
            for m in range(1, self.cutoff + 1 - n):
                rpt.checked += 1
                if any(not self.levels[n + m].contains(E.mul(n, v, m, {x: E.field.one}))
                       for v in S.basis() for x in range(E.dim(m))):
                    rpt.fail("right", n, m)
        return rpt

    def to_json(self) -> dict:
        E = self.algebra
        return {
            "generators": [{"degree": d, "coords": [E.field.to_str(v.get(j, 0)) for j in range(E.dim(d))]}
                           for d, v in self.generators],
            "levels": [matrix_to_json(S.basis_matrix()) for S in self.levels],
            "dims": self.dims(),
        }

    @classmethod
    def from_json(cls, d, E: SymAlgebra) -> "SigmaIdeal":
        gens = []
        for g in d.get("generators", []):
            vec = {j: E.field.parse(x) for j, x in enumerate(g["coords"])}
            gens.append((g["degree"], {j: x for j, x in vec.items() if x}))
        if "levels" in d:
            levels = []
            for n, mat in enumerate(d["levels"]):
                B = matrix_from_json(mat, E.field, mat.get("ncols") if isinstance(mat, dict) else None)
                levels.append(Subspace(E.dim(n), E.field, B.cols))
            I = cls(E, levels, gens)
            if not I.is_stable().ok:
                raise ConfigurationError("levels are not a Sigma-ideal")
            return I
        return sigma_closure(E, gens)


# ---------------------------------------------------------------- constructions

def _check_gens(E: SymAlgebra, gens):
    out = []
    for g in gens:
        if not (isinstance(g, tuple) and len(g) == 2 and isinstance(g[1], dict)):
            raise ConfigurationError("generators must be homogeneous (degree, vector) pairs")
        d, v = g
        if not 0 <= d <= E.cutoff:
            raise ConfigurationError(f"generator degree {d} outside 0..{E.cutoff}")
        if any(not 0 <= j < E.dim(d) for j in v):
            raise ConfigurationError("generator coordinates outside its level")
        out.append((d, {j: E.field(x) for j, x in v.items() if x}))
    return out


def sigma_closure(E: SymAlgebra, gens, symmetric: bool = True, name: str = "") -> SigmaIdeal:
    """Smallest Sigma-ideal containing the homogeneous generators (right ideal if not symmetric)."""
    gens = _check_gens(E, gens)
    seeds: dict = {}
    for d, v in gens:
        seeds.setdefault(d, []).append(v)
    levels = closure_in(algebra_module(E), seeds, symmetric)
    return SigmaIdeal(E, levels, gens, name or "(" + ", ".join(element_str(E, d, v) for d, v in gens) + ")"
                      + ("^Sigma" if symmetric else "E"), symmetric)


def right_ideal(E: SymAlgebra, gens, name: str = "") -> SigmaIdeal:
    """The naive (non-symmetric) right ideal x_1 E + ... + x_n E."""
    return sigma_closure(E, gens, symmetric=False, name=name)


def zero_ideal(E: SymAlgebra) -> SigmaIdeal:
    return SigmaIdeal(E, [Subspace(E.dim(n), E.field) for n in range(E.cutoff + 1)], [], "0")


def tail_ideal(E: SymAlgebra, n: int) -> SigmaIdeal:
    """E_{>=n}."""
    levels = [Subspace(E.dim(l), E.field, [{j: E.field.one} for j in range(E.dim(l))] if l >= n else [])
              for l in range(E.cutoff + 1)]
    return SigmaIdeal(E, levels, [], f"E_>={n}")


def positive_ideal(E: SymAlgebra) -> SigmaIdeal:
    return tail_ideal(E, 1)


def unit_ideal(E: SymAlgebra) -> SigmaIdeal:
    return tail_ideal(E, 0)


def ideal_sum(ideals: list[SigmaIdeal]) -> SigmaIdeal:
    E = ideals[0].algebra
    levels = []
    for n in range(E.cutoff + 1):
        S = Subspace(E.dim(n), E.field)
        for I in ideals:
            S.extend(I[n].basis())
        levels.append(S)
    gens = [g for I in ideals for g in I.generators]
    return SigmaIdeal(E, levels, gens, " + ".join(I.name for I in ideals))


def intersection(I: SigmaIdeal, J: SigmaIdeal) -> SigmaIdeal:
    E = I.algebra
    return SigmaIdeal(E, [a.intersection(b) for a, b in zip(I.levels, J.levels)], [], f"{I.name} & {J.name}")


def naive_product_levels(I: SigmaIdeal, J: SigmaIdeal) -> dict:
    E = I.algebra
    seeds: dict = {}
    for a in range(E.cutoff + 1):
        if not I[a].dim:
            continue
        for b in range(E.cutoff + 1 - a):
            if not J[b].dim:
                continue
            for x in I[a].basis():
                for y in J[b].basis():
                    seeds.setdefault(a + b, []).append(E.mul(a, x, b, y))
    return seeds


def product(I: SigmaIdeal, J: SigmaIdeal) -> SigmaIdeal:
    """IJ: the Sigma-closure of the naive product of the two ideals."""
    if I.algebra is not J.algebra:
        raise ConfigurationError("ideals of different algebras")
    E = I.algebra
    levels = closure_in(algebra_module(E), naive_product_levels(I, J))
    return SigmaIdeal(E, levels, [], f"({I.name})({J.name})")


def is_two_sided(I: SigmaIdeal) -> Report:
    """Left absorption y x in I for x in I, y in E, basis by basis; witnesses on failure."""
    rpt = Report("two-sided")
    E = I.algebra
    for m in range(E.cutoff + 1):
        for n in range(E.cutoff + 1 - m):
            rpt.checked += 1
            for x in I[m].basis():
                bad = next((y for y in range(E.dim(n))
                            if not I[n + m].contains(E.mul(n, {y: E.field.one}, m, x))), None)
                if bad is not None:
                    rpt.fail("left-absorption", n, m)
                    rpt.details.setdefault("witnesses", []).append(
                        {"x": element_str(E, m, x), "y": element_str(E, n, {bad: E.field.one})})
                    break
    return rpt


# ---------------------------------------------------------------- primality

def search_family(S: Subspace, rng: np.random.Generator | None = None, random_count: int = 0) -> list[dict]:
    """Representatives of nonzero classes of E_a / P_a: complement basis vectors,
    their pairwise sums and differences, and optional random small-integer combinations."""
    free = S.complement_indices()
    one = S.field.one
    out = [{j: one} for j in free]
    for i, j in combinations(free, 2):
        out.append({i: one, j: one})
        out.append({i: one, j: -one})
    if rng is not None and len(free) > 2:
        for _ in range(random_count):
            vals = rng.integers(-3, 4, size=len(free))
            v = {j: S.field(int(c)) for j, c in zip(free, vals) if c}
            if v:
                out.append(v)
    return out


def _left_kernel_witness(E: SymAlgebra, P: SigmaIdeal, a: int, x: dict, b: int):
    """Some y in E_b outside P_b with x y in P_{a+b}, or None (exact for this fixed x)."""
    freeb = P[b].complement_indices()
    if not freeb:
        return None
    target = P[a + b]
    # unknowns: coefficients of y on the complement basis of P_b (P_b itself maps into P)
    cols = [target.reduce(E.mul(a, x, b, {j: E.field.one})) for j in freeb]
    M = Matrix.from_columns(E.dim(a + b), cols, E.field)
    ker = nullspace(M.rows, len(freeb), E.field)
    if not ker:
        return None
    return {freeb[k]: c for k, c in ker[0].items()}


def _right_kernel_witness(E: SymAlgebra, P: SigmaIdeal, a: int, b: int, y: dict):
    freea = P[a].complement_indices()
    if not freea:
        return None
    target = P[a + b]
    cols = [target.reduce(E.mul(a, {j: E.field.one}, b, y)) for j in freea]
    M = Matrix.from_columns(E.dim(a + b), cols, E.field)
    ker = nullspace(M.rows, len(freea), E.field)
    if not ker:
        return None
    return {freea[k]: c for k, c in ker[0].items()}


def is_prime_up_to(P: SigmaIdeal, cutoff: int | None = None, seed: int = 0, random_count: int = 8) -> dict:
    """Search for homogeneous x, y outside P with x y in P, in degrees a + b <= cutoff.

    For every x in the search family of E_a / P_a the set of y with x y in P is a linear
    space and is computed exactly, and symmetrically for y. The verdict is exact whenever a
    quotient E_a / P_a or E_b / P_b is at most one-dimensional or a witness is found; otherwise
    it is a necessary condition only, and the report lists those degree pairs.
    """
    E = P.algebra
    N = E.cutoff if cutoff is None else min(cutoff, E.cutoff)
    rng = np.random.Generator(np.random.Philox(seed))
    incomplete = []
    for t in range(N + 1):
        for a in range(t + 1):
            b = t - a
            qa, qb = E.dim(a) - P[a].dim, E.dim(b) - P[b].dim
            if not qa or not qb:
                continue
            for x in search_family(P[a], rng, random_count):
                y = _left_kernel_witness(E, P, a, x, b)
                if y is not None:
                    return _witness(E, a, x, b, y, N)
            for y in search_family(P[b], rng, random_count):
                x = _right_kernel_witness(E, P, a, b, y)
                if x is not None:
                    return _witness(E, a, x, b, y, N)
            if qa > 1 and qb > 1:
                incomplete.append([a, b])
    return {"prime": True, "cutoff": N, "exact": not incomplete, "incomplete_pairs": incomplete,
            "status": f"prime up to cutoff {N}" + ("" if not incomplete else " (search incomplete on some degree pairs)")}


def _witness(E, a, x, b, y, N):
    return {"prime": False, "cutoff": N, "exact": True,
            "witness": {"x": element_str(E, a, x), "x_degree": a, "y": element_str(E, b, y), "y_degree": b,
                        "xy": element_str(E, a + b, E.mul(a, x, b, y))},
            "status": "not prime"}


# ---------------------------------------------------------------- radicals and generation

def power(E: SymAlgebra, d: int, x: dict, t: int) -> dict:
    out, deg = {0: E.field.one}, 0
    for _ in range(t):
        out = E.mul(deg, out, d, x)
        deg += d
    return out


def radical_up_to(I: SigmaIdeal, cutoff: int | None = None) -> SigmaIdeal:
    """Sigma-closure of I and of every searched homogeneous b with some power b^t in I, t deg b <= cutoff.

    Candidates b are the search family of E_d / I_d (complement basis vectors and their
    pairwise sums and differences); exact for monomial ideals of monomial rings.
    """
    E = I.algebra
    N = E.cutoff if cutoff is None else min(cutoff, E.cutoff)
    found = []
    if I[0].dim:
        return unit_ideal(E)
    for d in range(1, N + 1):
        for b in search_family(I[d]):
            for t in range(2, N // d + 1):
                if I[t * d].contains(power(E, d, b, t)):
                    found.append((d, b))
                    break
    seeds: dict = {}
    for n in range(E.cutoff + 1):
        seeds[n] = I[n].basis()
    for d, b in found:
        seeds.setdefault(d, []).append(b)
    levels = closure_in(algebra_module(E), seeds)
    return SigmaIdeal(E, levels, I.generators + found, f"rad({I.name})")


def is_finitely_sigma_generated(E: SymAlgebra, gens, cutoff: int | None = None) -> dict:
    """Whether the Sigma-closure of the generators contains E_{>=1} up to the cutoff."""
    I = sigma_closure(E, gens)
    N = E.cutoff if cutoff is None else min(cutoff, E.cutoff)
    missing = [n for n in range(1, N + 1) if not I[n].is_full()]
    return {"generated": not missing, "first_missing_degree": missing[0] if missing else None,
            "cutoff": N, "status": f"generates E_>=1 up to cutoff {N}" if not missing else "does not generate"}


# ---------------------------------------------------------------- display

def element_str(E: SymAlgebra, n: int, v: dict) -> str:
    if not v:
        return "0"
    parts = []
    for j in sorted(v):
        c = v[j]
        lab = E.label(n, j)
        cs = E.field.pretty(c)
        if cs == "1":
            parts.append(lab)
        elif cs == "-1":
            parts.append("-" + lab)
        else:
            parts.append(f"{cs}*{lab}")
    s = " + ".join(parts)
    return s.replace("+ -", "- ")

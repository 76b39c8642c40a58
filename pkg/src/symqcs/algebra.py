"""Symmetric graded algebras: data, axiom checks and example builders."""
from __future__ import annotations

from itertools import product as iproduct

from .errors import ConfigurationError, InvariantViolation
from .linalg import QQ, Field, Matrix, Subspace, kron, matrix_from_json, matrix_to_json, vkron
from .perm import Perm, all_perms, block_sum, chi, perm_index
from . import rep
from .rep import SnModule
from .report import Report
from .symseq import SymSeq, SymSeqMap


def swap_matrix(da: int, db: int, field: Field = QQ) -> Matrix:
    """a (x) b -> b (x) a on lexicographic tensor bases."""
    return Matrix.permutation([j * da + i for i in range(da) for j in range(db)], field)


class SymAlgebra:
    """A symmetric graded algebra truncated at ``cutoff``.

    ``mults[(n, m)]`` is the matrix of mu_{n,m}: E_n (x) E_m -> E_{n+m}.
    """

    def __init__(self, underlying: SymSeq, mults: dict, unit: dict | None = None,
                 labels: list | None = None, name: str = "E"):
        self.underlying = underlying
        self.field = underlying.field
        self.cutoff = underlying.cutoff
        if underlying.dim(0) != 1:
            raise InvariantViolation("degree zero must be one-dimensional")
        self.mults = {}
        for n in range(self.cutoff + 1):
            for m in range(self.cutoff + 1 - n):
                mat = mults.get((n, m))
                if mat is None:
                    raise ValueError(f"missing multiplication ({n},{m})")
                want = (underlying.dim(n + m), underlying.dim(n) * underlying.dim(m))
                if mat.shape != want:
                    raise ValueError(f"mu_({n},{m}) has shape {mat.shape}, expected {want}")
                self.mults[(n, m)] = mat
        self.unit = unit if unit is not None else {0: self.field.one}
        self.labels = labels
        self.name = name
        self._cache: dict = {}

    def __repr__(self):
        return f"SymAlgebra({self.name}, dims={self.dims()})"

    def __getitem__(self, n: int) -> SnModule:
        return self.underlying[n]

    def dims(self) -> list[int]:
        return self.underlying.dims()

    def dim(self, n: int) -> int:
        return self.underlying.dim(n)

    def mult(self, n: int, m: int) -> Matrix:
        return self.mults[(n, m)]

    def mul(self, n: int, x: dict, m: int, y: dict) -> dict:
        """Product of x in E_n and y in E_m."""
        if n + m > self.cutoff:
            raise ValueError("product beyond cutoff")
        return self.mults[(n, m)].apply(vkron(x, y, self.dim(m)))

    def basis_vector(self, n: int, i: int) -> dict:
        return {i: self.field.one}

    def label(self, n: int, i: int) -> str:
        if self.labels is not None:
            return self.labels[n][i]
        return f"e{n}_{i}"

    def truncate(self, cutoff: int) -> "SymAlgebra":
        mults = {k: v for k, v in self.mults.items() if k[0] + k[1] <= cutoff}
        labels = self.labels[:cutoff + 1] if self.labels else None
        out = SymAlgebra(self.underlying.truncate(cutoff), mults, self.unit, labels, self.name)
        for key in ("commutative", "trivial_action", "ring"):
            if key in self._cache:
                out._cache[key] = self._cache[key]
        return out

    @property
    def ring(self):
        """The monomial presentation for trivial-action builders, else None."""
        return self._cache.get("ring")

    @property
    def has_trivial_action(self) -> bool:
        return all(g == Matrix.identity(lv.dim, self.field) for lv in self.underlying.levels for g in lv.gens)

    # ---------------------------------------------------------- checks
    def check_axioms(self) -> Report:
        rpt = Report("axioms")
        E = self.underlying
        f = self.field
        for n, lv in enumerate(E.levels):
            rpt.checked += 1
            for rel in lv.check_relations():
                rpt.fail("relations", n, *rel)
        for (n, m), mu in sorted(self.mults.items()):
            rpt.checked += 1
            idn, idm = Matrix.identity(E.dim(n), f), Matrix.identity(E.dim(m), f)
            big = E[n + m]
            ok = True
            for i, g in enumerate(E[n].gens, 1):
                if mu @ kron(g, idm) != big.gen(i) @ mu:
                    ok = False
            for j, g in enumerate(E[m].gens, 1):
                if mu @ kron(idn, g) != big.gen(n + j) @ mu:
                    ok = False
            if not ok:
                rpt.fail("equivariance", n, m)
        for n in range(self.cutoff + 1):
            for m in range(self.cutoff + 1 - n):
                for p in range(self.cutoff + 1 - n - m):
                    rpt.checked += 1
                    lhs = self.mults[(n + m, p)] @ kron(self.mults[(n, m)], Matrix.identity(E.dim(p), f))
                    rhs = self.mults[(n, m + p)] @ kron(Matrix.identity(E.dim(n), f), self.mults[(m, p)])
                    if lhs != rhs:
                        rpt.fail("associativity", n, m, p)
        u = Matrix.from_columns(1, [self.unit], f)
        for n in range(self.cutoff + 1):
            rpt.checked += 2
            idn = Matrix.identity(E.dim(n), f)
            if self.mults[(0, n)] @ kron(u, idn) != idn:
                rpt.fail("unit_left", n)
            if self.mults[(n, 0)] @ kron(idn, u) != idn:
                rpt.fail("unit_right", n)
        return rpt

    def check_commutative(self, naive: bool = False) -> Report:
        """mu_{m,n} . twist = chi_{n,m} . mu_{n,m}; with ``naive`` the chi factor is dropped."""
        rpt = Report("commutative-naive" if naive else "commutative")
        E = self.underlying
        for n in range(self.cutoff + 1):
            for m in range(self.cutoff + 1 - n):
                rpt.checked += 1
                lhs = self.mults[(m, n)] @ swap_matrix(E.dim(n), E.dim(m), self.field)
                rhs = self.mults[(n, m)]
                if not naive:
                    rhs = E[n + m].action_of(chi(n, m)) @ rhs
                if lhs != rhs:
                    rpt.fail("commutativity", n, m)
        return rpt

    # ---------------------------------------------------------- serialization
    def to_json(self) -> dict:
        d = {
            "underlying": self.underlying.to_json(),
            "mults": {f"{n},{m}": matrix_to_json(mu) for (n, m), mu in sorted(self.mults.items())},
            "unit": [[self.field.to_str(self.unit.get(0, 0))]],
            "field": self.field.to_json(),
            "name": self.name,
        }
        if self.labels is not None:
            d["labels"] = self.labels
        if "builder" in self._cache:
            d["builder"] = self._cache["builder"]
        return d

    @classmethod
    def from_json(cls, d) -> "SymAlgebra":
        field = Field.from_json(d.get("field", "Q"))
        E = SymSeq.from_json(d["underlying"], field)
        mults = {}
        for key, mat in d["mults"].items():
            n, m = (int(s) for s in key.split(","))
            mults[(n, m)] = matrix_from_json(mat, field, E.dim(n) * E.dim(m))
        u = d.get("unit", [["1/1"]])
        unit = {0: field.parse(u[0][0]) if isinstance(u[0][0], str) else field(u[0][0])}
        return cls(E, mults, unit, d.get("labels"), d.get("name", "E"))


def is_algebra_morphism(a: SymAlgebra, b: SymAlgebra, f: SymSeqMap) -> Report:
    """f_{n+m} mu_{n,m} = mu_{n,m} (f_n (x) f_m), equivariance and unit preservation."""
    rpt = Report("algebra-morphism")
    for n, i in f.equivariance_failures():
        rpt.fail("equivariance", n, i)
    for (n, m), mu in sorted(a.mults.items()):
        rpt.checked += 1
        if f[n + m] @ mu != b.mults[(n, m)] @ kron(f[n], f[m]):
            rpt.fail("multiplicative", n, m)
    rpt.checked += 1
    if f[0].apply(a.unit) != b.unit:
        rpt.fail("unit")
    return rpt


# ---------------------------------------------------------------- builders

def _letters(d: int) -> list[str]:
    return list("xyzw")[:d] if d <= 4 else [f"v{i + 1}" for i in range(d)]


def word_index(word: tuple, d: int) -> int:
    k = 0
    for a in word:
        k = k * d + a
    return k


def place_action_gens(n: int, d: int, field: Field) -> list[Matrix]:
    """s_i swaps the letters in positions i and i+1 of every word."""
    words = list(iproduct(range(d), repeat=n))
    gens = []
    for i in range(n - 1):
        imgs = []
        for w in words:
            w2 = list(w)
            w2[i], w2[i + 1] = w2[i + 1], w2[i]
            imgs.append(word_index(tuple(w2), d))
        gens.append(Matrix.permutation(imgs, field))
    return gens


def tensor_algebra(d: int, cutoff: int, field: Field = QQ) -> SymAlgebra:
    """T(V) with dim V = d; words in lex order, place permutation, concatenation."""
    if d < 0:
        raise ValueError("negative dimension")
    levels = [SnModule(n, d ** n, place_action_gens(n, d, field), field) for n in range(cutoff + 1)]
    E = SymSeq(levels, field)
    mults = {}
    for n in range(cutoff + 1):
        for m in range(cutoff + 1 - n):
            mults[(n, m)] = Matrix.identity(d ** (n + m), field)
    letters = _letters(d)
    labels = [["".join(letters[a] for a in w) or "1" for w in iproduct(range(d), repeat=n)]
              for n in range(cutoff + 1)]
    alg = SymAlgebra(E, mults, labels=labels, name=f"T(V), dim V = {d}")
    alg._cache["tensor_dim"] = d
    return alg


def _sort_sign(word: tuple):
    """(sign, sorted word) of a word with distinct letters, or (0, None)."""
    if len(set(word)) < len(word):
        return 0, None
    s = Perm([sorted(word).index(a) + 1 for a in word]).sign()
    return s, tuple(sorted(word))


def exterior_relations(n: int, d: int, field: Field) -> Subspace:
    """Span of v_1..v_n with v_i = v_j for arbitrary vectors: repeated-letter words and w + (ij)w."""
    words = list(iproduct(range(d), repeat=n))
    rel = Subspace(d ** n, field)
    one = field.one
    for w in words:
        k = word_index(w, d)
        if len(set(w)) < n:
            rel.add({k: one})
        for i in range(n):
            for j in range(i + 1, n):
                w2 = list(w)
                w2[i], w2[j] = w2[j], w2[i]
                k2 = word_index(tuple(w2), d)
                if k2 != k:
                    rel.add({k: one, k2: one})
    return rel


def exterior_algebra(d: int, cutoff: int, field: Field = QQ, verify: bool = True) -> SymAlgebra:
    """Lambda(V): quotient of T(V) by A^n; basis of strictly increasing words."""
    from itertools import combinations
    bases = [list(combinations(range(d), n)) for n in range(cutoff + 1)]
    pos = [{w: k for k, w in enumerate(b)} for b in bases]

    def project(n: int, word: tuple) -> dict:
        s, srt = _sort_sign(word)
        return {pos[n][srt]: field(s)} if s else {}

    levels = []
    for n in range(cutoff + 1):
        dim = len(bases[n])
        if verify:
            words = list(iproduct(range(d), repeat=n))
            proj = Matrix.from_columns(dim, [project(n, w) for w in words], field)
            from .linalg import nullspace
            ker = Subspace(d ** n, field, nullspace(proj.rows, d ** n, field))
            if ker != exterior_relations(n, d, field):
                raise InvariantViolation(f"exterior projection kernel mismatch at level {n}")
        g = Matrix(dim, dim, [{k: field(-1)} for k in range(dim)], field)
        levels.append(SnModule(n, dim, [g] * max(n - 1, 0), field))
    mults = {}
    for n in range(cutoff + 1):
        for m in range(cutoff + 1 - n):
            cols = []
            for a in bases[n]:
                for b in bases[m]:
                    cols.append(project(n + m, a + b))
            mults[(n, m)] = Matrix.from_columns(len(bases[n + m]), cols, field)
    letters = _letters(d)
    labels = [["^".join(letters[a] for a in w) or "1" for w in bases[n]] for n in range(cutoff + 1)]
    return SymAlgebra(SymSeq(levels, field), mults, labels=labels, name=f"Lambda(V), dim V = {d}")


def exterior_quotient_map(t: SymAlgebra, lam: SymAlgebra, d: int) -> SymSeqMap:
    """The canonical projection T(V) -> Lambda(V)."""
    from itertools import combinations
    field = t.field
    comps = []
    for n in range(t.cutoff + 1):
        pos = {w: k for k, w in enumerate(combinations(range(d), n))}
        cols = []
        for w in iproduct(range(d), repeat=n):
            s, srt = _sort_sign(w)
            cols.append({pos[srt]: field(s)} if s else {})
        comps.append(Matrix.from_columns(lam.dim(n), cols, field))
    return SymSeqMap(t.underlying, lam.underlying, comps)


def sym_group_algebra(cutoff: int, action: str = "left", field: Field = QQ) -> SymAlgebra:
    """k Sigma_* with mu(sigma (x) tau) = sigma x tau.

    ``action="left"`` uses the regular representation by left multiplication;
    ``action="conjugation"`` uses sigma . g = sigma g sigma^-1.
    """
    if action == "left":
        build = rep.regular
    elif action == "conjugation":
        build = rep.conjugation
    else:
        raise ValueError(f"unknown action {action!r}")
    levels = [build(n, field) for n in range(cutoff + 1)]
    perms = [all_perms(n) for n in range(cutoff + 1)]
    mults = {}
    for n in range(cutoff + 1):
        for m in range(cutoff + 1 - n):
            cols = [{perm_index(block_sum(s, t)): field.one} for s in perms[n] for t in perms[m]]
            mults[(n, m)] = Matrix.from_columns(len(perms[n + m]), cols, field)
    labels = [["".join(map(str, p.images)) or "()" for p in perms[n]] for n in range(cutoff + 1)]
    return SymAlgebra(SymSeq(levels, field), mults, labels=labels, name=f"k Sigma_* ({action})")


# ---------------------------------------------------------------- monomial rings

class MonomialRing:
    """k[x_1..x_r]/(monomials) with positive integer generator degrees."""

    def __init__(self, names: list[str], degrees: list[int] | None = None,
                 relations: list[tuple] = (), field: Field = QQ):
        names = list(names)
        degrees = list(degrees) if degrees is not None else [1] * len(names)
        if len(set(names)) != len(names):
            raise ConfigurationError(f"duplicate generator names in {names}")
        if len(degrees) != len(names):
            raise ConfigurationError("one degree per generator required")
        if any(int(d) != d or d < 1 for d in degrees):
            raise ConfigurationError("generator degrees must be positive integers")
        rels = []
        for r in relations:
            r = tuple(r)
            if len(r) != len(names) or any(e < 0 for e in r) or sum(r) == 0:
                raise ConfigurationError(f"bad monomial relation {r}")
            rels.append(r)
        self.names = names
        self.degrees = degrees
        self.relations = rels
        self.field = field

    def __repr__(self):
        rel = ", ".join(self.monomial_str(r) for r in self.relations)
        return f"{self.field!r}[{','.join(self.names)}]" + (f"/({rel})" if rel else "")

    @property
    def nvars(self):
        return len(self.names)

    def degree(self, mono: tuple) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def is_standard(self, mono: tuple) -> bool:
        return not any(all(a >= b for a, b in zip(mono, r)) for r in self.relations)

    def monomials(self, n: int) -> list[tuple]:
        """Standard monomials of degree n, exponent-lex descending."""
        out = []

        def rec(i, rest, acc):
            if i == self.nvars:
                if rest == 0:
                    out.append(tuple(acc))
                return
            d = self.degrees[i]
            for e in range(rest // d, -1, -1):
                rec(i + 1, rest - e * d, acc + [e])

        rec(0, n, [])
        return [m for m in out if self.is_standard(m)]

    def monomial_str(self, mono: tuple) -> str:
        parts = []
        for name, e in zip(self.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


def trivial_action(ring: MonomialRing, cutoff: int) -> SymAlgebra:
    """A commutative monomial ring as a symmetric algebra with trivial actions."""
    field = ring.field
    bases = [ring.monomials(n) for n in range(cutoff + 1)]
    pos = [{m: k for k, m in enumerate(b)} for b in bases]
    levels = [rep.trivial(n, len(bases[n]), field) for n in range(cutoff + 1)]
    mults = {}
    for n in range(cutoff + 1):
        for m in range(cutoff + 1 - n):
            cols = []
            for a in bases[n]:
                for b in bases[m]:
                    c = tuple(x + y for x, y in zip(a, b))
                    cols.append({pos[n + m][c]: field.one} if c in pos[n + m] else {})
            mults[(n, m)] = Matrix.from_columns(len(bases[n + m]), cols, field)
    labels = [[ring.monomial_str(mo) for mo in bases[n]] for n in range(cutoff + 1)]
    alg = SymAlgebra(SymSeq(levels, field), mults, labels=labels, name=repr(ring))
    alg._cache["ring"] = ring
    alg._cache["monomials"] = bases
    return alg


def monomial_basis(alg: SymAlgebra, n: int) -> list[tuple]:
    return alg._cache["monomials"][n]


def generator_degrees(alg: SymAlgebra) -> list[int]:
    """Degrees of a minimal non-symmetric generating set (degrees of indecomposables)."""
    out = []
    for n, V in enumerate(indecomposables(alg)):
        out.extend([n] * len(V))
    return out


def indecomposables(alg: SymAlgebra) -> list[list[dict]]:
    """Per level n >= 1, vectors spanning a complement of sum_{0<a<n} E_a E_{n-a}."""
    if "indec" in alg._cache:
        return alg._cache["indec"]
    out = [[]]
    for n in range(1, alg.cutoff + 1):
        dec = Subspace(alg.dim(n), alg.field)
        for a in range(1, n):
            mu = alg.mults[(a, n - a)]
            for col in mu.cols:
                if col:
                    dec.add(col)
        out.append([{j: alg.field.one} for j in dec.complement_indices()])
    alg._cache["indec"] = out
    return out


def corrupt(alg: SymAlgebra, n: int, m: int, row: int, col: int, delta=1) -> SymAlgebra:
    """Copy of ``alg`` with one entry of mu_{n,m} shifted by ``delta``."""
    mults = dict(alg.mults)
    mu = mults[(n, m)]
    rows = [dict(r) for r in mu.rows]
    rows[row][col] = rows[row].get(col, 0) + alg.field(delta)
    mults[(n, m)] = Matrix(mu.nrows, mu.ncols, rows, alg.field)
    return SymAlgebra(alg.underlying, mults, alg.unit, alg.labels, alg.name + " (corrupted)")

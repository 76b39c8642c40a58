"""Finite-dimensional Sigma_n representations stored by adjacent-transposition matrices."""
from __future__ import annotations

from math import comb, factorial
from typing import Callable, NamedTuple

from .errors import ConfigurationError, InvariantViolation, UnsupportedCharacteristic
from .linalg import QQ, Field, Matrix, Subspace, kron, matrix_from_json, matrix_to_json, vaxpy
from .perm import Perm, adjacent, all_perms, factor, identity, perm_index, shuffle_index, shuffles


class SnModule:
    """A representation of Sigma_n of dimension ``dim``.

    ``gens[i-1]`` is the matrix of the adjacent transposition s_i.
    """

    __slots__ = ("n", "dim", "gens", "field", "_cache")

    def __init__(self, n: int, dim: int, gens=None, field: Field = QQ, check: bool = False):
        self.n = n
        self.dim = dim
        self.field = field
        if gens is None:
            gens = [Matrix.identity(dim, field) for _ in range(max(n - 1, 0))]
        gens = list(gens)
        if len(gens) != max(n - 1, 0):
            raise ValueError(f"Sigma_{n} needs {max(n - 1, 0)} generator matrices, got {len(gens)}")
        for g in gens:
            if g.shape != (dim, dim):
                raise ValueError(f"generator of shape {g.shape} for dim {dim}")
            if g.field != field:
                raise ConfigurationError("generator field mismatch")
        self.gens = tuple(gens)
        self._cache: dict = {}
        if check:
            bad = self.check_relations()
            if bad:
                raise InvariantViolation(f"Coxeter relations fail: {bad}")

    def __repr__(self):
        return f"SnModule(n={self.n}, dim={self.dim})"

    def gen(self, i: int) -> Matrix:
        return self.gens[i - 1]

    def action_of(self, s: Perm) -> Matrix:
        if s.n != self.n:
            raise ValueError(f"permutation of degree {s.n} acting on a Sigma_{self.n}-module")
        m = self._cache.get(s.images)
        if m is None:
            m = Matrix.identity(self.dim, self.field)
            for i in s.reduced_word():
                m = m @ self.gens[i - 1]
            self._cache[s.images] = m
        return m

    def apply(self, s: Perm, v: dict) -> dict:
        """Action of a permutation on a sparse vector, without forming its matrix."""
        if s.n != self.n:
            raise ValueError("degree mismatch")
        if s.images in self._cache:
            return self._cache[s.images].apply(v)
        for i in reversed(s.reduced_word()):
            v = self.gens[i - 1].apply(v)
        return v

    def check_relations(self) -> list:
        """List of failing Coxeter relations as (kind, i, j)."""
        bad = []
        idm = Matrix.identity(self.dim, self.field)
        g = self.gens
        for i in range(len(g)):
            if g[i] @ g[i] != idm:
                bad.append(("involution", i + 1, i + 1))
            if i + 1 < len(g) and g[i] @ g[i + 1] @ g[i] != g[i + 1] @ g[i] @ g[i + 1]:
                bad.append(("braid", i + 1, i + 2))
            for j in range(i + 2, len(g)):
                if g[i] @ g[j] != g[j] @ g[i]:
                    bad.append(("commute", i + 1, j + 1))
        return bad

    def is_equivariant(self, other: "SnModule", f: Matrix) -> bool:
        """Whether f: self -> other commutes with every generator."""
        return all(f @ a == b @ f for a, b in zip(self.gens, other.gens))

    def same_as(self, other: "SnModule") -> bool:
        return self.n == other.n and self.dim == other.dim and self.gens == other.gens

    def to_json(self) -> dict:
        return {"n": self.n, "dim": self.dim, "gen_actions": [matrix_to_json(g) for g in self.gens]}

    @classmethod
    def from_json(cls, d, field: Field = QQ) -> "SnModule":
        dim = d["dim"]
        gens = [matrix_from_json(g, field, dim) for g in d.get("gen_actions", [])]
        return cls(d["n"], dim, gens, field, check=True)


# ---------------------------------------------------------------- builders

def trivial(n: int, dim: int = 1, field: Field = QQ) -> SnModule:
    return SnModule(n, dim, None, field)


def sign(n: int, field: Field = QQ) -> SnModule:
    m = Matrix(1, 1, [{0: field(-1)}], field)
    return SnModule(n, 1, [m] * max(n - 1, 0), field)


def regular(n: int, field: Field = QQ) -> SnModule:
    """k Sigma_n with left multiplication, basis all_perms(n) in lex order."""
    perms = all_perms(n)
    gens = []
    for i in range(1, n):
        s = adjacent(i, n)
        gens.append(Matrix.permutation([perm_index(s * p) for p in perms], field))
    return SnModule(n, len(perms), gens, field)


def conjugation(n: int, field: Field = QQ) -> SnModule:
    """k Sigma_n with the conjugation action sigma . g = sigma g sigma^-1."""
    perms = all_perms(n)
    gens = []
    for i in range(1, n):
        s = adjacent(i, n)
        gens.append(Matrix.permutation([perm_index(s * p * s) for p in perms], field))
    return SnModule(n, len(perms), gens, field)


def zero(n: int, field: Field = QQ) -> SnModule:
    return SnModule(n, 0, None, field)


# ---------------------------------------------------------------- operations

def restrict_tail(m: SnModule, k: int) -> SnModule:
    """Restrict a Sigma_{k+n}-module along 1_k x - : Sigma_n -> Sigma_{k+n}."""
    if k > m.n:
        raise ValueError("cannot restrict below degree 0")
    return SnModule(m.n - k, m.dim, list(m.gens[k:]), m.field)


def restrict(m: SnModule) -> SnModule:
    """Restriction along Sigma_n -> Sigma_{1+n}, tau -> 1 + tau."""
    return restrict_tail(m, 1)


def direct_sum(mods: list[SnModule], n: int | None = None, field: Field = QQ) -> SnModule:
    if not mods:
        return SnModule(n or 0, 0, None, field)
    from .linalg import block_diag
    n = mods[0].n
    fld = mods[0].field
    gens = [block_diag([mm.gens[i] for mm in mods], fld) for i in range(max(n - 1, 0))]
    return SnModule(n, sum(mm.dim for mm in mods), gens, fld)


def kron_modules(a: SnModule, b: SnModule) -> SnModule:
    """Internal tensor product (diagonal action)."""
    if a.n != b.n:
        raise ValueError("degree mismatch")
    return SnModule(a.n, a.dim * b.dim, [kron(x, y) for x, y in zip(a.gens, b.gens)], a.field)


def induced_gens(sizes: tuple, dim_w: int, sub_gen: Callable[[int], Matrix], field: Field):
    """Generator matrices of k Sigma_t tensor_{Young(sizes)} W.

    ``sub_gen(j)`` returns the matrix of s_j on W for every j that lies inside a
    single block.  Basis: (shuffle index major, W index minor).
    """
    t = sum(sizes)
    reps = shuffles(sizes)
    idx = shuffle_index(sizes)
    nreps = len(reps)
    gens = []
    for i in range(1, t):
        cols = []
        for r, g in enumerate(reps):
            im = list(g.images)
            # s_i * g swaps the values i and i+1
            a = im.index(i)
            b = im.index(i + 1)
            im[a], im[b] = i + 1, i
            tim = tuple(im)
            r2 = idx.get(tim)
            if r2 is not None:
                for w in range(dim_w):
                    cols.append({r2 * dim_w + w: field.one})
            else:
                # same block: s_i g = g s_j with j = min(a, b) + 1
                j = min(a, b) + 1
                h = sub_gen(j)
                for w in range(dim_w):
                    cols.append({r * dim_w + k: x for k, x in h.cols[w].items()})
        gens.append(Matrix.from_columns(nreps * dim_w, cols, field))
    return gens


def induce(p: int, q: int, w_left: list[Matrix], w_right: list[Matrix], dim_w: int,
           field: Field = QQ, check: bool = True) -> SnModule:
    """Induce a Sigma_p x Sigma_q representation on W up to Sigma_{p+q}.

    ``w_left`` holds the p-1 generator matrices of Sigma_p and ``w_right`` the
    q-1 generators of Sigma_q, all acting on W.
    """
    if len(w_left) != max(p - 1, 0) or len(w_right) != max(q - 1, 0):
        raise ValueError("wrong number of generator matrices")
    if check:
        for a in w_left:
            for b in w_right:
                if a @ b != b @ a:
                    raise InvariantViolation("the two factor actions do not commute")

    def sub_gen(j: int) -> Matrix:
        return w_left[j - 1] if j < p else w_right[j - p - 1]

    gens = induced_gens((p, q), dim_w, sub_gen, field)
    return SnModule(p + q, comb(p + q, p) * dim_w, gens, field)


def induce_tensor(a: SnModule, b: SnModule) -> SnModule:
    """Induce the outer tensor product a (x) b from Sigma_p x Sigma_q."""
    ia = Matrix.identity(a.dim, a.field)
    ib = Matrix.identity(b.dim, b.field)
    left = [kron(g, ib) for g in a.gens]
    right = [kron(ia, g) for g in b.gens]
    return induce(a.n, b.n, left, right, a.dim * b.dim, a.field, check=False)


def induced_element(sizes: tuple, dim_w: int, pi: Perm, w: dict, sub_act) -> dict:
    """Vector of pi (x) w in the induced basis; ``sub_act(hs, w)`` applies h_1 x ... x h_r."""
    g, hs = factor(pi, sizes)
    r = shuffle_index(sizes)[g.images]
    hw = sub_act(hs, w)
    return {r * dim_w + k: x for k, x in hw.items()}


class Quotient(NamedTuple):
    dim: int
    free_columns: list
    projection: Matrix
    module: SnModule


def sub_module(m: SnModule, sub: Subspace):
    """Restricted action on a stable subspace; returns (module, inclusion matrix)."""
    basis = sub.basis()
    gens = []
    for g in m.gens:
        cols = []
        for b in basis:
            img = g.apply(b)
            if sub.reduce(img):
                raise InvariantViolation("subspace is not stable")
            cols.append(sub.coords(img))
        gens.append(Matrix.from_columns(len(basis), cols, m.field))
    return SnModule(m.n, len(basis), gens, m.field), sub.basis_matrix()


def quotient_module(m: SnModule, sub: Subspace) -> Quotient:
    """Action on m / sub; basis of the quotient = classes of the non-pivot unit vectors."""
    free, project = sub.quotient_projector()
    proj_cols = [project({j: m.field.one}) for j in range(m.dim)]
    projection = Matrix.from_columns(len(free), proj_cols, m.field)
    gens = []
    for g in m.gens:
        cols = [projection.apply(g.cols[j]) for j in free]
        gens.append(Matrix.from_columns(len(free), cols, m.field))
    return Quotient(len(free), free, projection, SnModule(m.n, len(free), gens, m.field))


def coinvariants(m: SnModule) -> Quotient:
    """Quotient by span{v - s_i v}; the projection is surjective with that kernel."""
    sub = Subspace(m.dim, m.field)
    for g in m.gens:
        for j in range(m.dim):
            v = {j: m.field.one}
            vaxpy(v, g.cols[j], -1)
            sub.add(v)
    return quotient_module(m, sub)


def invariants(m: SnModule) -> Subspace:
    from .linalg import nullspace
    rows = []
    for g in m.gens:
        for i, r in enumerate(g.rows):
            row = dict(r)
            row[i] = row.get(i, 0) - 1
            rows.append({k: x for k, x in row.items() if x})
    return Subspace(m.dim, m.field, nullspace(rows, m.dim, m.field))


def maschke_average(m: SnModule) -> Matrix:
    """The projector (1/n!) sum_sigma rho(sigma) onto the invariants."""
    if m.field.divides_factorial(m.n):
        raise UnsupportedCharacteristic(f"characteristic {m.field.char} divides {m.n}!")
    total = Matrix.zeros(m.dim, m.dim, m.field)
    for s in all_perms(m.n):
        total = total + m.action_of(s)
    return total.scale(m.field.inv(m.field(factorial(m.n))))


def sign_of(s: Perm) -> int:
    return s.sign()


__all__ = [
    "SnModule", "trivial", "sign", "regular", "conjugation", "zero", "restrict", "restrict_tail",
    "direct_sum", "kron_modules", "induce", "induce_tensor", "induced_gens", "induced_element",
    "coinvariants", "invariants", "maschke_average", "sub_module", "quotient_module", "Quotient",
    "identity",
]

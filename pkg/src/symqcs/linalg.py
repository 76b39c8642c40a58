"""Exact scalars, sparse matrices and echelon subspaces over Q and GF(p).

Vectors are plain ``dict[int, scalar]`` holding nonzero entries only.  Matrices
keep their nonzero entries row-wise and act on column vectors.  Everything is
exact; nothing in the package ever produces a float.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ConfigurationError


class ModP:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ConfigurationError(f"mixed fields GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v} mod {self.p}"


class Field:
    """Ground field tag: characteristic 0 means Q, otherwise GF(char)."""

    __slots__ = ("char",)

    def __init__(self, char: int = 0):
        if char != 0 and (char < 2 or any(char % d == 0 for d in range(2, int(char ** 0.5) + 1))):
            raise ConfigurationError(f"GF({char}) is not a prime field")
        self.char = char

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("field", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        if self.char == 0:
            if isinstance(x, ModP):
                raise ConfigurationError("residue passed to QQ")
            if isinstance(x, Fraction):
                return int(x.numerator) if x.denominator == 1 else x
            if isinstance(x, int):
                return x
            if isinstance(x, str):
                return self.parse(x)
            raise ConfigurationError(f"cannot coerce {x!r} into QQ")
        if isinstance(x, ModP):
            if x.p != self.char:
                raise ConfigurationError(f"GF({x.p}) element passed to {self!r}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return ModP(x.numerator, self.char) / ModP(x.denominator, self.char)
        return ModP(int(x), self.char)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.char == 0:
            f = Fraction(1) / a
            return int(f.numerator) if f.denominator == 1 else f
        return 1 / a

    def div(self, a, b):
        return self(a) * self.inv(b)

    def to_str(self, a) -> str:
        if self.char == 0:
            f = Fraction(a)
            return f"{f.numerator}/{f.denominator}"
        return f"{self(a).v} mod {self.char}"

    def pretty(self, a) -> str:
        if self.char == 0:
            return str(Fraction(a))
        return str(self(a).v)

    def parse(self, s: str):
        s = s.strip()
        if " mod " in s:
            r, p = s.split(" mod ")
            if self.char != int(p):
                raise ConfigurationError(f"scalar {s!r} does not belong to {self!r}")
            return ModP(int(r), self.char)
        if self.char != 0:
            raise ConfigurationError(f"scalar {s!r} is rational but field is {self!r}")
        return self(Fraction(s))

    def divides_factorial(self, n: int) -> bool:
        return self.char != 0 and self.char <= n

    def to_json(self) -> str:
        return "Q" if self.char == 0 else f"GF({self.char})"

    @classmethod
    def from_json(cls, s: str) -> "Field":
        s = s.strip()
        if s in ("Q", "QQ"):
            return cls(0)
        if s.startswith("GF(") and s.endswith(")"):
            return cls(int(s[3:-1]))
        return cls(int(s))


QQ = Field(0)


# ---------------------------------------------------------------- vectors

def vadd(u: Mapping, v: Mapping, c=1) -> dict:
    """Return u + c*v as a new sparse vector."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vaxpy(out: dict, v: Mapping, c=1) -> None:
    """In-place out += c*v."""
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)


def vscale(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vkron(u: Mapping, v: Mapping, dim_v: int) -> dict:
    return {i * dim_v + j: a * b for i, a in u.items() for j, b in v.items()}


def _check_same(a: "Matrix", b: "Matrix") -> None:
    if a.field != b.field:
        raise ConfigurationError(f"field mismatch: {a.field!r} vs {b.field!r}")


# ---------------------------------------------------------------- matrices

class Matrix:
    """Immutable sparse matrix; ``rows[i]`` maps column index to nonzero entry."""

    __slots__ = ("nrows", "ncols", "rows", "field", "_cols")

    def __init__(self, nrows: int, ncols: int, rows=None, field: Field = QQ):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        self.rows = tuple({k: x for k, x in r.items() if x} for r in rows)
        self._cols = None

    # construction -----------------------------------------------------
    @classmethod
    def zeros(cls, nrows, ncols, field=QQ):
        return cls(nrows, ncols, None, field)

    @classmethod
    def identity(cls, n, field=QQ):
        one = field.one
        return cls(n, n, [{i: one} for i in range(n)], field)

    @classmethod
    def from_dense(cls, data, field=QQ, ncols=None):
        data = [list(r) for r in data]
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: field(x) for j, x in enumerate(r) if field(x)})
        return cls(nrows, ncols, rows, field)

    @classmethod
    def from_columns(cls, nrows, columns, field=QQ):
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, x in col.items():
                if x:
                    rows[i][j] = x
        return cls(nrows, len(columns), rows, field)

    @classmethod
    def permutation(cls, images, field=QQ):
        """Matrix sending basis vector j to basis vector images[j] (0-based)."""
        n = len(images)
        return cls.from_columns(n, [{images[j]: field.one} for j in range(n)], field)

    # access ------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def cols(self):
        if self._cols is None:
            cols = [{} for _ in range(self.ncols)]
            for i, r in enumerate(self.rows):
                for j, x in r.items():
                    cols[j][i] = x
            self._cols = tuple(cols)
        return self._cols

    def column(self, j) -> dict:
        return dict(self.cols[j])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, 0)

    def to_dense(self):
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def density(self):
        cells = self.nrows * self.ncols
        return self.nnz() / cells if cells else 0.0

    # arithmetic --------------------------------------------------------
    def apply(self, v: Mapping) -> dict:
        """Matrix times sparse column vector."""
        out: dict = {}
        cols = self.cols
        for j, x in v.items():
            for i, a in cols[j].items():
                y = out.get(i, 0) + a * x
                if y:
                    out[i] = y
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _check_same(self, other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.rows
        rows = []
        for r in self.rows:
            acc: dict = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    y = acc.get(j, 0) + a * b
                    if y:
                        acc[j] = y
                    else:
                        acc.pop(j, None)
            rows.append(acc)
        return Matrix(self.nrows, other.ncols, rows, self.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix(self.nrows, self.ncols,
                      [vadd(a, b) for a, b in zip(self.rows, other.rows)], self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_same(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix(self.nrows, self.ncols,
                      [vadd(a, b, -1) for a, b in zip(self.rows, other.rows)], self.field)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [vscale(r, c) for r in self.rows], self.field)

    def T(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, [dict(c) for c in self.cols], self.field)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and all(a == b for a, b in zip(self.rows, other.rows)))

    def __hash__(self):
        return hash((self.shape, self.nnz()))

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def __repr__(self):
        if self.nrows * self.ncols <= 64:
            return f"Matrix({self.to_dense()})"
        return f"Matrix<{self.nrows}x{self.ncols}, nnz={self.nnz()}>"

    # structure ---------------------------------------------------------
    def rank(self) -> int:
        return rref_kernel_image(self)[0]

    def select_rows(self, idx) -> "Matrix":
        return Matrix(len(idx), self.ncols, [self.rows[i] for i in idx], self.field)

    def select_cols(self, idx) -> "Matrix":
        pos = {j: k for k, j in enumerate(idx)}
        rows = [{pos[j]: x for j, x in r.items() if j in pos} for r in self.rows]
        return Matrix(self.nrows, len(idx), rows, self.field)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product on the lexicographic basis (left factor major)."""
    _check_same(a, b)
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append({ja * b.ncols + jb: x * y for ja, x in ra.items() for jb, y in rb.items()})
    return Matrix(a.nrows * b.nrows, a.ncols * b.ncols, rows, a.field)


def hstack(mats: list[Matrix], nrows: int | None = None, field: Field = QQ) -> Matrix:
    if not mats:
        return Matrix.zeros(nrows or 0, 0, field)
    rows = [{} for _ in range(mats[0].nrows)]
    off = 0
    for m in mats:
        _check_same(mats[0], m)
        for i, r in enumerate(m.rows):
            for j, x in r.items():
                rows[i][off + j] = x
        off += m.ncols
    return Matrix(mats[0].nrows, off, rows, mats[0].field)


def vstack(mats: list[Matrix], ncols: int | None = None, field: Field = QQ) -> Matrix:
    if not mats:
        return Matrix.zeros(0, ncols or 0, field)
    rows = []
    for m in mats:
        _check_same(mats[0], m)
        rows.extend(m.rows)
    return Matrix(len(rows), mats[0].ncols, rows, mats[0].field)


def block_diag(mats: list[Matrix], field: Field = QQ) -> Matrix:
    rows = []
    off = 0
    for m in mats:
        rows.extend({off + j: x for j, x in r.items()} for r in m.rows)
        off += m.ncols
    return Matrix(len(rows), off, rows, mats[0].field if mats else field)


# ---------------------------------------------------------------- subspaces

class Subspace:
    """Subspace of field^ambient kept in reduced row echelon form.

    Each stored row has a pivot equal to its smallest index, entry 1 there,
    and every pivot column is zero in all other rows, so the form is the
    canonical RREF regardless of insertion order.
    """

    __slots__ = ("ambient", "field", "rows", "_sorted")

    def __init__(self, ambient: int, field: Field = QQ, vectors: Iterable[Mapping] = ()):
        self.ambient = ambient
        self.field = field
        self.rows: dict[int, dict] = {}
        self._sorted = None
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        if self._sorted is None:
            self._sorted = sorted(self.rows)
        return self._sorted

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in self.pivots]

    def reduce(self, v: Mapping) -> dict:
        out = {k: x for k, x in v.items() if x}
        rows = self.rows
        for p in [k for k in out if k in rows]:
            c = out.get(p)
            if c:
                for k, x in rows[p].items():
                    y = out.get(k, 0) - c * x
                    if y:
                        out[k] = y
                    else:
                        out.pop(k, None)
        return out

    def add(self, v: Mapping) -> bool:
        """Insert v; return True when the dimension grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        c = r[p]
        if c != 1:
            inv = self.field.inv(c)
            r = {k: x * inv for k, x in r.items()}
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                for k, x in r.items():
                    y = row.get(k, 0) - a * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.rows[p] = r
        self._sorted = None
        return True

    def extend(self, vectors: Iterable[Mapping]) -> int:
        return sum(1 for v in vectors if self.add(v))

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    __contains__ = contains

    def copy(self) -> "Subspace":
        s = Subspace(self.ambient, self.field)
        s.rows = {p: dict(r) for p, r in self.rows.items()}
        return s

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows.values())

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.dim == other.dim and self.issubset(other)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def __add__(self, other: "Subspace") -> "Subspace":
        s = self.copy()
        s.extend(other.rows.values())
        return s

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus-style intersection through a kernel computation."""
        a, b = self.basis(), other.basis()
        if not a or not b:
            return Subspace(self.ambient, self.field)
        # x in both iff x = sum s_i a_i = sum t_j b_j
        m = Matrix.from_columns(self.ambient, a + [vscale(v, -1) for v in b], self.field)
        _, ker, _ = rref_kernel_image(m)
        out = Subspace(self.ambient, self.field)
        for col in ker.cols:
            vec: dict = {}
            for i, c in col.items():
                if i < len(a):
                    vaxpy(vec, a[i], c)
            out.add(vec)
        return out

    def is_full(self) -> bool:
        return self.dim == self.ambient

    # coordinates ---------------------------------------------------------
    def coords(self, v: Mapping) -> dict:
        """Coordinates of v (assumed in the span) in the RREF basis order."""
        return {k: v[p] for k, p in enumerate(self.pivots) if v.get(p)}

    def complement_indices(self) -> list[int]:
        piv = self.rows
        return [j for j in range(self.ambient) if j not in piv]

    def quotient_projector(self):
        """Return (free_columns, project) for the canonical quotient map."""
        free = self.complement_indices()
        pos = {j: k for k, j in enumerate(free)}

        def project(v: Mapping) -> dict:
            r = self.reduce(v)
            return {pos[k]: x for k, x in r.items()}

        return free, project

    def basis_matrix(self) -> Matrix:
        """Basis vectors as the columns of a matrix."""
        return Matrix.from_columns(self.ambient, self.basis(), self.field)


def span(ambient: int, vectors: Iterable[Mapping], field: Field = QQ) -> Subspace:
    return Subspace(ambient, field, vectors)


def rref_kernel_image(m: Matrix):
    """Return (rank, kernel_basis, image_basis) with bases stored as columns.

    ``image_basis`` consists of the pivot columns of ``m`` itself.
    """
    rs = Subspace(m.ncols, m.field)
    for r in m.rows:
        rs.add(r)
    piv = rs.pivots
    pset = set(piv)
    free = [j for j in range(m.ncols) if j not in pset]
    one = m.field.one
    kernel_cols = []
    for f in free:
        v = {f: one}
        for p in piv:
            a = rs.rows[p].get(f)
            if a:
                v[p] = -a
        kernel_cols.append(v)
    kernel = Matrix.from_columns(m.ncols, kernel_cols, m.field)
    image = Matrix.from_columns(m.nrows, [m.cols[p] for p in piv], m.field)
    return len(piv), kernel, image


def solve(a: Matrix, b: Mapping):
    """Return one x with a x = b, or None when the system is inconsistent."""
    n = a.ncols
    aug_rows = []
    for i, r in enumerate(a.rows):
        row = dict(r)
        if b.get(i):
            row[n] = b[i]
        aug_rows.append(row)
    rs = Subspace(n + 1, a.field, aug_rows)
    if n in rs.rows:
        return None
    x = {}
    for p, row in rs.rows.items():
        c = row.get(n)
        if c:
            x[p] = c
    return x


def nullspace(rows: Iterable[Mapping], nvars: int, field: Field = QQ) -> list[dict]:
    """Basis of {x : r.x = 0 for every row r} given sparse equation rows."""
    rs = Subspace(nvars, field, rows)
    piv = rs.pivots
    one = field.one
    out = []
    for f in rs.complement_indices():
        v = {f: one}
        for p in piv:
            a = rs.rows[p].get(f)
            if a:
                v[p] = -a
        out.append(v)
    return out


# ---------------------------------------------------------------- JSON

def matrix_to_json(m: Matrix) -> list:
    return [[m.field.to_str(x) for x in row] for row in m.to_dense()]


def matrix_from_json(data, field: Field = QQ, ncols: int | None = None) -> Matrix:
    if not data:
        return Matrix.zeros(0, ncols or 0, field)
    return Matrix.from_dense([[field.parse(s) if isinstance(s, str) else field(s) for s in r]
                              for r in data], field, ncols)

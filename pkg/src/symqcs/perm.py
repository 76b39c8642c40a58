"""Permutations in one-line notation, block sums, shuffles and coset representatives.

Convention: ``images[i-1] == sigma(i)`` (1-based values) and
``(s * t)(i) == s(t(i))``.
"""
from __future__ import annotations

from functools import lru_cache, total_ordering
from itertools import permutations as _itperms
from math import factorial


@total_ordering
class Perm:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images: tuple) -> "Perm":
        p = cls.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.n != self.n:
            raise ValueError(f"degree mismatch {self.n} vs {other.n}")
        im = self.images
        return Perm._raw(tuple(im[j - 1] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Perm._raw(tuple(inv))

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other):
        return (self.n, self.images) < (other.n, other.images)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Perm({list(self.images)})"

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))

    def reduced_word(self) -> list[int]:
        """Indices i_1..i_k with self = s_{i_1} s_{i_2} ... s_{i_k} (bubble sort)."""
        return list(_reduced_word(self.images))

    def sign(self) -> int:
        return -1 if len(_reduced_word(self.images)) % 2 else 1

    def to_json(self) -> dict:
        return {"n": self.n, "images": list(self.images)}

    @classmethod
    def from_json(cls, d) -> "Perm":
        p = cls(d["images"])
        if "n" in d and d["n"] != p.n:
            raise ValueError("degree does not match images")
        return p


@lru_cache(maxsize=None)
def _reduced_word(images: tuple) -> tuple:
    a = list(images)
    word = []
    # right-multiplying by s_i swaps positions i, i+1; peel descents off the right
    changed = True
    while changed:
        changed = False
        for i in range(len(a) - 1):
            if a[i] > a[i + 1]:
                a[i], a[i + 1] = a[i + 1], a[i]
                word.append(i + 1)
                changed = True
    return tuple(reversed(word))


def identity(n: int) -> Perm:
    return Perm._raw(tuple(range(1, n + 1)))


def adjacent(i: int, n: int) -> Perm:
    """The transposition s_i = (i, i+1) in Sigma_n."""
    if not 1 <= i < n:
        raise ValueError(f"s_{i} not in Sigma_{n}")
    im = list(range(1, n + 1))
    im[i - 1], im[i] = im[i], im[i - 1]
    return Perm._raw(tuple(im))


def chi(q: int, p: int) -> Perm:
    """Block shuffle in Sigma_{p+q}: i -> i+p for i <= q, i -> i-q otherwise."""
    if q < 0 or p < 0:
        raise ValueError("negative block size")
    return Perm._raw(tuple(i + p if i <= q else i - q for i in range(1, p + q + 1)))


def block_sum(s: Perm, t: Perm) -> Perm:
    p = s.n
    return Perm._raw(s.images + tuple(p + j for j in t.images))


def block_sum_many(perms) -> Perm:
    out: tuple = ()
    off = 0
    for s in perms:
        out += tuple(off + j for j in s.images)
        off += s.n
    return Perm._raw(out)


def all_perms(n: int) -> list[Perm]:
    """All of Sigma_n in lexicographic one-line order."""
    return [Perm._raw(tuple(t)) for t in _itperms(range(1, n + 1))]


@lru_cache(maxsize=None)
def _perm_index(n: int) -> dict:
    return {p.images: k for k, p in enumerate(all_perms(n))}


def perm_index(p: Perm) -> int:
    return _perm_index(p.n)[p.images]


# ---------------------------------------------------------------- shuffles

@lru_cache(maxsize=None)
def shuffles(sizes: tuple) -> tuple:
    """Permutations increasing on each consecutive block, in lex order.

    These represent the left cosets of the Young subgroup of the given block
    sizes; the count is the multinomial coefficient.
    """
    sizes = tuple(sizes)
    n = sum(sizes)
    out = []

    def rec(remaining: frozenset, k: int, acc: tuple):
        if k == len(sizes):
            out.append(acc)
            return
        from itertools import combinations
        for comb in combinations(sorted(remaining), sizes[k]):
            rec(remaining - set(comb), k + 1, acc + comb)

    rec(frozenset(range(1, n + 1)), 0, ())
    out.sort()
    return tuple(Perm._raw(t) for t in out)


@lru_cache(maxsize=None)
def shuffle_index(sizes: tuple) -> dict:
    return {g.images: k for k, g in enumerate(shuffles(sizes))}


def factor(pi: Perm, sizes: tuple):
    """Write pi = g * (h_1 x ... x h_r) with g a shuffle for the block sizes.

    Returns (g, [h_1, ..., h_r]).
    """
    im = pi.images
    g: list = []
    hs = []
    off = 0
    for b in sizes:
        block = im[off:off + b]
        srt = sorted(block)
        rank = {v: k + 1 for k, v in enumerate(srt)}
        hs.append(Perm._raw(tuple(rank[v] for v in block)))
        g.extend(srt)
        off += b
    if off != len(im):
        raise ValueError("block sizes do not sum to the degree")
    return Perm._raw(tuple(g)), hs


def pq_shuffles(p: int, q: int) -> tuple:
    return shuffles((p, q))


def coset_reps(l: int, q: int) -> list[Perm]:
    """Left coset representatives of Sigma_q acting on the last q letters of Sigma_l.

    The representative of a coset sorts the images of the last q positions.
    """
    if q > l or q < 0:
        raise ValueError(f"coset_reps needs 0 <= q <= l, got l={l}, q={q}")
    reps = list(shuffles(tuple([1] * (l - q) + [q])))
    assert len(reps) == factorial(l) // factorial(q)
    return reps


def free_sizes(n: int, m: int) -> tuple:
    """Block composition whose shuffles are the free-module coset reps of level n."""
    return tuple([1] * m + [n - m])

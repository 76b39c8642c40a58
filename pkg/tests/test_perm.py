from __future__ import annotations

from itertools import permutations
from math import factorial

from hypothesis import given, strategies as st

from symqcs.perm import Perm, all_perms, block_sum, chi, coset_reps, factor, identity, shuffles


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(Perm)


def test_chi_examples():
    assert chi(0, 3) == identity(3)
    assert chi(1, 1).images == (2, 1)
    assert chi(2, 1).images == (2, 3, 1)


def test_block_sum_examples():
    assert block_sum(identity(2), identity(3)) == identity(5)
    assert block_sum(Perm((2, 1)), identity(1)).images == (2, 1, 3)


def test_coset_reps_counts():
    assert coset_reps(2, 2) == [identity(2)]
    assert len(coset_reps(2, 1)) == 2
    assert len(coset_reps(4, 2)) == 12


def test_coset_reps_partition_the_group():
    for l in range(1, 7):
        for q in range(l + 1):
            seen = set()
            tail = [block_sum(identity(l - q), h) for h in all_perms(q)]
            for g in coset_reps(l, q):
                for h in tail:
                    s = (g * h).images
                    assert s not in seen
                    seen.add(s)
            assert len(seen) == factorial(l)


def test_chi_inverse():
    for q in range(9):
        for p in range(9 - q):
            assert chi(q, p).inverse() == chi(p, q)


def test_shuffles_lex_sorted_identity_first():
    s = shuffles((2, 2))
    assert len(s) == 6 and s[0] == identity(4)
    assert [g.images for g in s] == sorted(g.images for g in s)


def test_stated_conjugation_form_fails_somewhere():
    # chi(q,p) (s x t) chi(p,q) with s in Sigma_p, t in Sigma_q is not t x s in general
    s, t = identity(1), Perm((2, 1))
    assert chi(2, 1) * block_sum(s, t) * chi(1, 2) != block_sum(t, s)


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_chi_conjugates_block_sums(p, q, data):
    s = data.draw(perms(p)) if p else Perm(())
    t = data.draw(perms(q)) if q else Perm(())
    assert chi(p, q) * block_sum(s, t) * chi(q, p) == block_sum(t, s)


@given(st.integers(1, 5), st.data())
def test_group_laws(n, data):
    a, b, c = (data.draw(perms(n)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == identity(n)
    assert (a * b).sign() == a.sign() * b.sign()


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_factor_reconstructs(p, q, data):
    pi = data.draw(perms(p + q)) if p + q else Perm(())
    g, (h1, h2) = factor(pi, (p, q))
    assert g in shuffles((p, q))
    assert g * block_sum(h1, h2) == pi


def test_composition_is_functional():
    a, b = Perm((2, 3, 1)), Perm((2, 1, 3))
    assert (a * b)(1) == a(b(1))
    assert sorted(p.images for p in all_perms(3)) == sorted(permutations((1, 2, 3)))

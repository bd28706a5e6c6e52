import itertools
import random

import pytest

from kkweyl.rootsys import SimpleOrder
from kkweyl import weyl
from kkweyl.weyl import (
    WeylError, identity, simple_reflection, multiply, inverse, act_on_root,
    from_word, reduced_word, reflection, BruhatOrder, bruhat_interval_subword,
    parabolic_factorize, support, enumerate_involutions, enumerate_elements,
)


class TestGroupStructure:
    def test_simple_reflection_involutive(self, e6):
        for i in range(1, 7):
            s = simple_reflection(e6, i)
            assert multiply(s, s).is_identity()

    def test_e6_s1_s2_commute(self, e6):
        # Cartan entry (1,2) is zero, so the braid relation degenerates
        assert e6.cartan[0][1] == 0
        s1, s2 = simple_reflection(e6, 1), simple_reflection(e6, 2)
        assert multiply(s1, s2) == multiply(s2, s1)

    def test_identity_action(self, e6):
        for beta in e6.positive_roots:
            assert act_on_root(identity(e6), beta) == beta

    def test_action_respects_multiplication(self, a3):
        elements = list(enumerate_elements(a3, 6))
        rng = random.Random(7)
        for _ in range(50):
            a, b = rng.choice(elements), rng.choice(elements)
            beta = rng.choice(a3.positive_roots)
            assert act_on_root(multiply(a, b), beta) == \
                act_on_root(a, act_on_root(b, beta))

    def test_inverse(self, a3):
        for w in enumerate_elements(a3, 6):
            assert multiply(w, inverse(w)).is_identity()

    def test_mixed_systems_rejected(self, a2, a3):
        with pytest.raises(WeylError):
            multiply(identity(a2), identity(a3))


class TestLengthAndWords:
    def test_identity_length(self, e6):
        assert identity(e6).length == 0

    def test_simple_length(self, e6):
        for i in range(1, 7):
            assert simple_reflection(e6, i).length == 1

    def test_e6_eleven_letter_word(self, e6):
        w = from_word(e6, (2, 4, 3, 5, 6, 4, 5, 2, 4, 3, 1))
        assert w.length == 11

    def test_reduced_word_roundtrip(self, e6):
        for w in enumerate_elements(e6, 4):
            word = reduced_word(w)
            assert len(word) == w.length
            assert from_word(e6, word) == w

    def test_subadditivity_exhaustive_a3(self, a3):
        elements = list(enumerate_elements(a3, 6))
        assert len(elements) == 24
        for a in elements:
            for b in elements:
                ab = multiply(a, b)
                assert ab.length <= a.length + b.length
                word = reduced_word(a) + reduced_word(b)
                assert (ab.length == a.length + b.length) == \
                    (from_word(a3, word).length == len(word))


class TestBruhat:
    def test_identity_below_everything(self, e6):
        order = BruhatOrder(e6)
        for w in enumerate_elements(e6, 3):
            assert order.leq(identity(e6), w)

    def test_s1_below_s1s3(self, e6):
        order = BruhatOrder(e6)
        assert order.leq(simple_reflection(e6, 1), from_word(e6, (1, 3)))

    def test_agrees_with_subword_oracle_a3(self, a3):
        order = BruhatOrder(a3)
        elements = list(enumerate_elements(a3, 6))
        for w in elements:
            interval = bruhat_interval_subword(w)
            for v in elements:
                assert order.leq(v, w) == (v in interval)

    def test_agrees_with_subword_oracle_e6(self, e6):
        order = BruhatOrder(e6)
        elements = list(enumerate_elements(e6, 5))
        for w in elements:
            interval = bruhat_interval_subword(w)
            for v in elements:
                if v.length <= w.length:
                    assert order.leq(v, w) == (v in interval)


class TestParabolic:
    def test_w_in_parabolic(self, e6):
        I = {2, 3, 4, 5, 6}
        w = from_word(e6, (2, 4, 3))
        u, v = parabolic_factorize(w, I)
        assert u.is_identity() and v == w

    def test_e6_table_row_101000(self, e6):
        beta = e6.root_from_b((1, 0, 1, 0, 0, 0))
        u, v = parabolic_factorize(reflection(e6, beta), {2, 3, 4, 5, 6})
        assert u == from_word(e6, (3, 1))

    def test_length_additivity_random(self, e6):
        rng = random.Random(11)
        I = {1, 2, 4, 6}
        for _ in range(1000):
            word = tuple(rng.randrange(1, 7) for _ in range(rng.randrange(12)))
            w = from_word(e6, word)
            u, v = parabolic_factorize(w, I)
            assert multiply(u, v) == w
            assert u.length + v.length == w.length
            assert all(i in I for i in reduced_word(v))
            assert all(weyl.act_on_simple(u, i) > 0 for i in I)


class TestReflection:
    def test_simple_case(self, e6):
        for i in range(1, 7):
            assert reflection(e6, e6.simple_roots[i - 1]) == \
                simple_reflection(e6, i)

    def test_involutive(self, e6):
        for beta in e6.positive_roots:
            s = reflection(e6, beta)
            assert multiply(s, s).is_identity()

    def test_highest_root_length(self, e6):
        beta = e6.root_from_b((1, 2, 2, 3, 2, 1))
        assert reflection(e6, beta).length == 21

    def test_length_is_twice_height_minus_one(self, e6):
        for beta in e6.positive_roots:
            assert reflection(e6, beta).length == 2 * beta.height - 1


class TestSupport:
    def test_identity_empty(self, e6, e6_natural):
        assert support(identity(e6), e6_natural) == []

    def test_single_reflection(self, e6, e6_natural):
        for beta in e6.positive_roots:
            assert support(reflection(e6, beta), e6_natural) == [beta]

    def test_commuting_pair(self, e6, e6_natural):
        roots = e6.positive_roots
        found = 0
        for beta, gamma in itertools.combinations(roots[:12], 2):
            if e6.inner(beta, gamma) == 0:
                w = multiply(reflection(e6, beta), reflection(e6, gamma))
                assert set(support(w, e6_natural)) == {beta, gamma}
                found += 1
        assert found > 0

    def test_reconstruction_and_orthogonality(self, e6, e6_natural):
        for w in enumerate_involutions(e6, 5):
            supp = support(w, e6_natural)
            for a, b in itertools.combinations(supp, 2):
                assert e6.inner(a, b) == 0
            for perm in itertools.islice(itertools.permutations(supp), 6):
                prod = identity(e6)
                for beta in perm:
                    prod = multiply(prod, reflection(e6, beta))
                assert prod == w

    def test_non_involution_rejected(self, a3):
        with pytest.raises(WeylError):
            support(from_word(a3, (1, 2)), SimpleOrder((1, 2, 3), 1))


class TestEnumeration:
    def test_max_len_zero(self, e6):
        assert list(enumerate_involutions(e6, 0)) == [identity(e6)]

    def test_max_len_one(self, e6):
        got = set(enumerate_involutions(e6, 1))
        expect = {identity(e6)} | {simple_reflection(e6, i) for i in range(1, 7)}
        assert got == expect

    def test_a3_matches_brute_filter(self, a3):
        got = list(enumerate_involutions(a3, 6))
        brute = [w for w in enumerate_elements(a3, 6) if w.is_involution()]
        assert sorted(w.perm for w in got) == sorted(w.perm for w in brute)
        assert len(set(w.perm for w in got)) == len(got)

    def test_elements_unique_and_ordered(self, a3):
        elements = list(enumerate_elements(a3, 6))
        assert len(set(w.perm for w in elements)) == 24
        lengths = [w.length for w in elements]
        assert lengths == sorted(lengths)

import pytest

from kkweyl.rootsys import first_column
from kkweyl import weyl
from kkweyl.weyl import (
    identity, simple_reflection, multiply, from_word, reflection,
    enumerate_involutions,
)
from kkweyl.nilhecke import NilHeckeEngine
from kkweyl.analysis import (
    AnalysisError, NotAGoodPair, prop35_factor, gen_table,
    is_good_pair, certify_distinct, scan_good_pairs, recheck_certificate,
)


@pytest.fixture(scope="module")
def e6_engine(e6):
    return NilHeckeEngine(e6)


@pytest.fixture(scope="module")
def kk_cache():
    # shared across tests: d_w expansions are expensive and reused heavily
    return {}


class TestProp35Factor:
    def test_alpha1_row(self, e6, e6_natural):
        row = prop35_factor(e6, e6_natural, e6.simple_roots[0])
        assert row.u == simple_reflection(e6, 1)
        assert row.u_word == (1,)
        assert row.premise_ok

    def test_non_first_column_rejected(self, e6, e6_natural):
        with pytest.raises(AnalysisError):
            prop35_factor(e6, e6_natural, e6.simple_roots[1])

    def test_row_invariants_both_e6_orders(self, e6, e6_natural, e6_alternate):
        for order in (e6_natural, e6_alternate):
            c = order.distinguished
            for row in gen_table(e6, order):
                s_beta = reflection(e6, row.beta)
                v = from_word(e6, row.v_word)
                u = row.u
                assert multiply(u, v) == s_beta
                assert u.length + v.length == s_beta.length
                assert u.length == len(row.u_word)
                assert all(i != c for i in row.v_word)
                assert row.premise_ok
                assert u == multiply(weyl.inverse(v), simple_reflection(e6, c))
                assert u.length == v.length + 1
                # u has minimal length in its coset: no right descent inside I
                for i in range(1, 7):
                    if i != c:
                        assert weyl.act_on_simple(u, i) > 0

    def test_u_length_equals_height(self, e6, e6_natural):
        # l(u) = l(v)+1 and l(u)+l(v) = 2*height-1 force l(u) = height
        for row in gen_table(e6, e6_natural):
            assert len(row.u_word) == row.beta.height


class TestGenTable:
    def test_e6_sixteen_rows(self, e6, e6_natural, e6_alternate):
        for order in (e6_natural, e6_alternate):
            rows = gen_table(e6, order)
            assert len(rows) == 16
            betas = [r.beta for r in rows]
            assert betas == first_column(e6, order)

    def test_deterministic(self, e6, e6_natural):
        a = gen_table(e6, e6_natural)
        b = gen_table(e6, e6_natural)
        assert [(r.beta, r.u_word, r.v_word, r.premise_ok) for r in a] == \
            [(r.beta, r.u_word, r.v_word, r.premise_ok) for r in b]


class TestIsGoodPair:
    def test_equal_pair_rejected(self, e6, e6_natural):
        w = simple_reflection(e6, 1)
        with pytest.raises(NotAGoodPair):
            is_good_pair(w, w, e6, e6_natural)

    def test_reflection_pair_accepted(self, e6, e6_natural):
        col = first_column(e6, e6_natural)
        w1 = reflection(e6, col[0])   # alpha_1
        w2 = reflection(e6, col[2])   # height-3 root: s_{beta} not below s_{alpha_1}
        cert = is_good_pair(w1, w2, e6, e6_natural)
        assert {cert.beta1, cert.beta2} == {col[0], col[2]}
        assert cert.side1 or cert.side2

    def test_support_meets_c1_twice_rejected(self, e6, e6_natural):
        col = first_column(e6, e6_natural)
        pair = None
        for a in col:
            for b in col:
                if a != b and e6.inner(a, b) == 0:
                    pair = (a, b)
                    break
            if pair:
                break
        w = multiply(reflection(e6, pair[0]), reflection(e6, pair[1]))
        w2 = reflection(e6, col[0])
        with pytest.raises(NotAGoodPair, match="meets C1 in 2"):
            is_good_pair(w, w2, e6, e6_natural)

    def test_non_involution_rejected(self, e6, e6_natural):
        w = from_word(e6, (1, 3))
        assert not w.is_involution()
        with pytest.raises(AnalysisError):
            is_good_pair(w, w, e6, e6_natural)


class TestCertify:
    def test_computed_certificate(self, e6, e6_natural, e6_engine, kk_cache):
        col = first_column(e6, e6_natural)
        cert = is_good_pair(reflection(e6, col[0]), reflection(e6, col[2]),
                            e6, e6_natural)
        full = certify_distinct(cert, e6_engine, max_compute_len=8,
                                kk_cache=kk_cache)
        assert full.computed
        assert full.direct_inequality is True
        assert full.divides_evidence is not None

    def test_over_cap_stays_symbolic(self, e6, e6_natural, e6_engine, kk_cache):
        col = first_column(e6, e6_natural)
        cert = is_good_pair(reflection(e6, col[0]), reflection(e6, col[2]),
                            e6, e6_natural)
        sym = certify_distinct(cert, e6_engine, max_compute_len=2)
        assert not sym.computed
        assert sym.direct_inequality is None
        assert sym.divides_evidence is not None


class TestScan:
    def test_max_len_one_empty(self, e6, e6_natural, e6_engine):
        # only alpha_1 among the simple roots lies in C1, so no pairs exist
        certs = list(scan_good_pairs(e6, e6_natural, 1, e6_engine))
        assert certs == []

    def test_max_len_three_nonempty_and_rechecks(self, e6, e6_natural,
                                                 e6_engine, kk_cache):
        certs = list(scan_good_pairs(e6, e6_natural, 3, e6_engine,
                                     kk_cache=kk_cache))
        assert certs
        seen = set()
        for cert in certs:
            key = frozenset((cert.w1.perm, cert.w2.perm))
            assert key not in seen   # emitted once, not also reversed
            seen.add(key)
            assert recheck_certificate(cert, e6, e6_natural, e6_engine, kk_cache)

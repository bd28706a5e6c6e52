"""Property suite backing the `verify` command: ring identities, the Bruhat
support law, the denominator shape, the brute-force oracle, and the
direct-sum product formula, each reported with case counts and a minimal
counterexample on failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .rootsys import RootSystem, SimpleOrder, build_from_cartan, direct_sum
from . import weyl
from .weyl import WeylElt
from .nilhecke import NilHeckeEngine, NHElt, product_formula_check


@dataclass
class VerifyResult:
    name: str
    passed: int = 0
    failed: int = 0
    counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, instance: dict):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = instance


def _word(w: WeylElt) -> list[int]:
    return list(weyl.reduced_word(w))


def check_product_law(engine: NilHeckeEngine, max_len: int,
                      sample: Optional[int] = None,
                      seed: int = 0) -> VerifyResult:
    """Eq: x_v * x_w = x_{vw} when lengths add, 0 otherwise."""
    res = VerifyResult("product_law_2a")
    rs = engine.rs
    elements = list(weyl.enumerate_elements(rs, max_len))
    pairs = [(v, w) for v in elements for w in elements
             if v.length + w.length <= max_len]
    if sample is not None and len(pairs) > sample:
        pairs = random.Random(seed).sample(pairs, sample)
    for v, w in pairs:
        prod = engine.nh_mul(engine.x_of(v), engine.x_of(w))
        vw = weyl.multiply(v, w)
        if vw.length == v.length + w.length:
            ok = prod == engine.x_of(vw)
        else:
            ok = prod.is_zero()
        res.record(ok, {"v": _word(v), "w": _word(w)})
    return res


def check_recursions(engine: NilHeckeEngine, max_len: int,
                     sample: Optional[int] = None, seed: int = 1) -> VerifyResult:
    """Coefficient recursions over descents, both sided variants."""
    res = VerifyResult("recursions_2b_2c")
    rs = engine.rs
    elements = list(weyl.enumerate_elements(rs, max_len))
    triples = []
    for w in elements:
        if w.is_identity():
            continue
        for i in range(1, rs.rank + 1):
            right = weyl.act_on_simple(w, i) < 0          # l(w s_i) < l(w)
            left = weyl.act_on_simple(weyl.inverse(w), i) < 0  # l(s_i w) < l(w)
            if right or left:
                for v in elements:
                    if v.length <= w.length:
                        triples.append((w, v, i, right, left))
    if sample is not None and len(triples) > sample:
        triples = random.Random(seed).sample(triples, sample)
    for w, v, i, right, left in triples:
        ok = True
        if right:
            ok = ok and engine.recursion_check_b(w, v, i)
        if left:
            ok = ok and engine.recursion_check_c(w, v, i)
        res.record(ok, {"w": _word(w), "v": _word(v), "i": i})
    return res


def check_support_law(engine: NilHeckeEngine, max_len: int) -> VerifyResult:
    """support(x_w) = {v : v <= w}, with the Bruhat recursion itself validated
    against the subword oracle on the same range."""
    res = VerifyResult("support_law")
    rs = engine.rs
    elements = list(weyl.enumerate_elements(rs, max_len))
    for w, xw in engine.expand_by_length(max_len):
        interval = weyl.bruhat_interval_subword(w)
        ok = xw.support() == interval
        ok = ok and all(
            engine.bruhat.leq(v, w) == (v in interval)
            for v in elements if v.length <= w.length
        )
        res.record(ok, {"w": _word(w)})
    return res


def check_oracle_equivalence(engine: NilHeckeEngine, max_len: int) -> VerifyResult:
    """x_w coefficients match the signed-sequence brute-force sum."""
    res = VerifyResult("oracle_equivalence")
    for w, xw in engine.expand_by_length(max_len):
        brute = engine.bruteforce_expansion(weyl.reduced_word(w))
        ok = xw.as_dict() == brute
        res.record(ok, {"w": _word(w)})
    return res


def check_dyer_shape(engine: NilHeckeEngine, max_len: int,
                     id_only_above: Optional[int] = None) -> VerifyResult:
    """Denominators stay inside {alpha : s_alpha v <= w}, multiplicity one."""
    res = VerifyResult("dyer_shape")
    ident = weyl.identity(engine.rs)
    for w, xw in engine.expand_by_length(max_len):
        if id_only_above is not None and w.length > id_only_above:
            ok = engine.dyer_check(w, ident)
            res.record(ok, {"w": _word(w), "v": []})
            continue
        for v in xw.support():
            res.record(engine.dyer_check(w, v), {"w": _word(w), "v": _word(v)})
    return res


def check_supp_bruhat(rs: RootSystem, order: SimpleOrder, max_len: int) -> VerifyResult:
    """Strict support containment implies Bruhat comparability for involutions."""
    res = VerifyResult("support_containment_bruhat")
    bruhat = weyl.BruhatOrder(rs)
    invols = list(weyl.enumerate_involutions(rs, max_len))
    supports = [frozenset(r.b for r in weyl.support(w, order)) for w in invols]
    for a, w1 in enumerate(invols):
        for b, w2 in enumerate(invols):
            if a != b and supports[a] < supports[b]:
                res.record(bruhat.leq(w1, w2),
                           {"w1": _word(w1), "w2": _word(w2)})
    return res


def check_product_formula(seed: int = 2, samples: int = 20) -> VerifyResult:
    """Direct-sum product rule on A1+A1 (all involutions) and A2+A1 (sampled)."""
    res = VerifyResult("direct_sum_product_formula")
    a1 = build_from_cartan([[2]])
    a2 = build_from_cartan([[2, -1], [-1, 2]])
    sum11 = direct_sum(a1, a1)
    for w1 in weyl.enumerate_involutions(a1, 1):
        for w2 in weyl.enumerate_involutions(a1, 1):
            ok = product_formula_check(sum11, w1, w2)
            res.record(ok, {"sum": "A1+A1", "w1": _word(w1), "w2": _word(w2)})
    sum21 = direct_sum(a2, a1)
    e2 = list(weyl.enumerate_elements(a2, 3))
    e1 = list(weyl.enumerate_elements(a1, 1))
    rng = random.Random(seed)
    pairs = [(w1, w2) for w1 in e2 for w2 in e1]
    for w1, w2 in rng.choices(pairs, k=samples):
        ok = product_formula_check(sum21, w1, w2)
        res.record(ok, {"sum": "A2+A1", "w1": _word(w1), "w2": _word(w2)})
    return res


def run_suite(rs: RootSystem, order: SimpleOrder, max_len: int,
              engine: Optional[NilHeckeEngine] = None,
              sample: Optional[int] = 200) -> list[VerifyResult]:
    """The full property suite at the given length cap."""
    if engine is None:
        engine = NilHeckeEngine(rs)
    small = len(rs.positive_roots) <= 10
    pair_sample = None if small else sample
    results = [
        check_product_law(engine, max_len, sample=pair_sample),
        check_recursions(engine, max_len, sample=pair_sample),
        check_support_law(engine, min(max_len, 6)),
        check_oracle_equivalence(engine, min(max_len, engine.brute_cap)),
        check_dyer_shape(engine, max_len, id_only_above=None if small else 5),
        check_supp_bruhat(rs, order, max_len),
        check_product_formula(),
    ]
    return results

"""First-column factorizations, good pairs of involutions, and machine-checkable
certificates that two involutions have distinct Kostant-Kumar polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Optional

from .rootsys import Root, RootSystem, SimpleOrder, first_column, lex_key
from . import weyl
from .weyl import WeylElt, Word, BruhatOrder
from .polyring import root_linear_form, divide_by_linear
from .nilhecke import NilHeckeEngine, KKResult, BudgetExceeded


class AnalysisError(ValueError):
    pass


class NotAGoodPair(AnalysisError):
    """Raised by is_good_pair with the failing clause as the message."""


@dataclass(frozen=True)
class FactorRow:
    """One first-column root beta with the minimal-coset factor u of s_beta.

    s_beta = u * v with v in the parabolic subgroup avoiding the distinguished
    node c; when the premises hold, u = v^{-1} s_c and l(u) = l(v) + 1.
    """
    beta: Root
    u: WeylElt
    u_word: Word
    v_word: Word
    premise_ok: bool


def prop35_factor(rs: RootSystem, order: SimpleOrder, beta: Root) -> FactorRow:
    c = order.distinguished
    if beta.b[c - 1] == 0:
        raise AnalysisError("beta is not in the first column for this order")
    s_beta = weyl.reflection(rs, beta)
    I = {i for i in range(1, rs.rank + 1) if i != c}
    u, v = weyl.parabolic_factorize(s_beta, I)
    if weyl.multiply(u, v) != s_beta:
        raise AnalysisError("parabolic factorization failed to recompose")
    if u.length + v.length != s_beta.length:
        raise AnalysisError("length additivity violated")
    expected_u = weyl.multiply(weyl.inverse(v), weyl.simple_reflection(rs, c))
    premise_ok = (u == expected_u) and u.length == v.length + 1
    return FactorRow(
        beta=beta,
        u=u,
        u_word=weyl.reduced_word(u),
        v_word=weyl.reduced_word(v),
        premise_ok=premise_ok,
    )


def gen_table(rs: RootSystem, order: SimpleOrder) -> list[FactorRow]:
    """One factorization row per first-column root, in (height, lex) order.

    Rows whose premises fail are emitted with premise_ok=False, never dropped.
    """
    return [prop35_factor(rs, order, beta) for beta in first_column(rs, order)]


# -- good pairs -----------------------------------------------------------------


@dataclass(frozen=True)
class DividesEvidence:
    """A root dividing one of the two polynomials but not the other."""
    root: Root
    divides: str       # "w1" or "w2"
    not_divides: str


@dataclass(frozen=True)
class GoodPairCertificate:
    w1: WeylElt
    w2: WeylElt
    beta1: Root
    beta2: Root
    side1: bool   # s_{beta1} is not below w2 in Bruhat order
    side2: bool   # s_{beta2} is not below w1
    computed: bool = False
    divides_evidence: Optional[DividesEvidence] = None
    direct_inequality: Optional[bool] = None


def _c1_max(rs: RootSystem, order: SimpleOrder) -> Root:
    return max(first_column(rs, order), key=lambda r: lex_key(order, r))


def is_good_pair(w1: WeylElt, w2: WeylElt, rs: RootSystem, order: SimpleOrder,
                 bruhat: Optional[BruhatOrder] = None) -> GoodPairCertificate:
    """Check the four good-pair clauses; raises NotAGoodPair with the failing one."""
    if not (w1.is_involution() and w2.is_involution()):
        raise AnalysisError("good pairs are defined for involutions")
    if bruhat is None:
        bruhat = BruhatOrder(rs)
    c1 = {r.b for r in first_column(rs, order)}
    betas = []
    for label, w in (("w1", w1), ("w2", w2)):
        meet = [r for r in weyl.support(w, order) if r.b in c1]
        if len(meet) != 1:
            raise NotAGoodPair(
                f"support of {label} meets C1 in {len(meet)} roots, need exactly 1")
        betas.append(meet[0])
    beta1, beta2 = betas
    if beta1 == beta2:
        raise NotAGoodPair("beta1 = beta2")
    if rs.type_tag == "E8":
        top = _c1_max(rs, order)
        if beta1 == top or beta2 == top:
            raise NotAGoodPair("a beta is maximal in C1 (excluded for E8)")
    side1 = not bruhat.leq(weyl.reflection(rs, beta1), w2)
    side2 = not bruhat.leq(weyl.reflection(rs, beta2), w1)
    if not (side1 or side2):
        raise NotAGoodPair("both s_{beta1} <= w2 and s_{beta2} <= w1")
    return GoodPairCertificate(w1, w2, beta1, beta2, side1, side2)


def certify_distinct(cert: GoodPairCertificate, engine: NilHeckeEngine,
                     max_compute_len: int = 8,
                     kk_cache: Optional[dict[WeylElt, KKResult]] = None,
                     ) -> GoodPairCertificate:
    """Enrich a good-pair certificate with divisibility evidence.

    When both lengths fit under the cap, both d polynomials are computed, the
    divisibility asymmetry is verified with divide_by_linear, and the final
    inequality is checked directly; otherwise the certificate stays symbolic.
    """
    rs = engine.rs
    if cert.side1:
        root, div_label, nodiv_label = cert.beta1, "w2", "w1"
    else:
        root, div_label, nodiv_label = cert.beta2, "w1", "w2"
    evidence = DividesEvidence(root, div_label, nodiv_label)
    if cert.w1.length > max_compute_len or cert.w2.length > max_compute_len:
        return replace(cert, computed=False, divides_evidence=evidence)
    try:
        results = {}
        for label, w in (("w1", cert.w1), ("w2", cert.w2)):
            if kk_cache is not None and w in kk_cache:
                results[label] = kk_cache[w]
            else:
                results[label] = engine.kk_poly(w, expand=True)
                if kk_cache is not None:
                    kk_cache[w] = results[label]
    except BudgetExceeded:
        return replace(cert, computed=False, divides_evidence=evidence)
    form = root_linear_form(rs, root)
    _, r_div = divide_by_linear(results[div_label].d_w, form)
    _, r_nodiv = divide_by_linear(results[nodiv_label].d_w, form)
    if not r_div.is_zero():
        raise AnalysisError(
            f"certificate inconsistent: {root.b} should divide d_{div_label}")
    if r_nodiv.is_zero():
        raise AnalysisError(
            f"certificate inconsistent: {root.b} should not divide d_{nodiv_label}")
    distinct = results["w1"].d_w != results["w2"].d_w
    if not distinct:
        raise AnalysisError("good pair with equal polynomials; contradiction")
    return replace(cert, computed=True, divides_evidence=evidence,
                   direct_inequality=True)


def scan_good_pairs(rs: RootSystem, order: SimpleOrder, max_len: int,
                    engine: Optional[NilHeckeEngine] = None,
                    max_compute_len: int = 8,
                    certify: bool = True,
                    kk_cache: Optional[dict[WeylElt, KKResult]] = None,
                    ) -> Iterator[GoodPairCertificate]:
    """All good pairs among involutions of length <= max_len, each emitted once
    with (w1, w2) in deterministic enumeration order."""
    if engine is None:
        engine = NilHeckeEngine(rs)
    invols = [w for w in weyl.enumerate_involutions(rs, max_len)
              if not w.is_identity()]
    bruhat = engine.bruhat
    if kk_cache is None:
        kk_cache = {}
    for a in range(len(invols)):
        for b in range(a + 1, len(invols)):
            try:
                cert = is_good_pair(invols[a], invols[b], rs, order, bruhat)
            except NotAGoodPair:
                continue
            if certify:
                cert = certify_distinct(cert, engine, max_compute_len, kk_cache)
            yield cert


def recheck_certificate(cert: GoodPairCertificate, rs: RootSystem,
                        order: SimpleOrder,
                        engine: Optional[NilHeckeEngine] = None,
                        kk_cache: Optional[dict[WeylElt, KKResult]] = None) -> bool:
    """Re-derive every claim of a certificate from scratch."""
    if engine is None:
        engine = NilHeckeEngine(rs)
    fresh = is_good_pair(cert.w1, cert.w2, rs, order, engine.bruhat)
    if (fresh.beta1, fresh.beta2, fresh.side1, fresh.side2) != \
            (cert.beta1, cert.beta2, cert.side1, cert.side2):
        return False
    if cert.computed:
        redone = certify_distinct(fresh, engine, max_compute_len=10**9,
                                  kk_cache=kk_cache)
        return redone.computed and redone.direct_inequality is True
    return True

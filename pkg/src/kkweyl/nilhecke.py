"""The nil-Hecke ring: x_i generators, x_w expansions, coefficients c_{w,v},
the brute-force signed-sequence oracle, and the Kostant-Kumar polynomial d_w.

Elements are finite maps from Weyl elements to rational functions.  Products
follow the rule  f d_v * g d_w = f v(g) d_{vw}.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Optional

from .rootsys import RootSystem, direct_sum
from . import weyl
from .weyl import WeylElt, Word, BruhatOrder
from .polyring import (
    MPoly, RatFn, ratfn_zero, ratfn_const, ratfn_add, ratfn_neg, ratfn_mul,
    ratfn_normalize, ratfn_mul_root_inverse, ratfn_scale, root_linear_form,
    weyl_act_ratfn, divide_by_linear,
)


class NilHeckeError(ValueError):
    pass


class BudgetExceeded(NilHeckeError):
    """Support-term budget blown; refuse rather than thrash."""


@dataclass(frozen=True)
class NHElt:
    """Finite map WeylElt -> RatFn with zero coefficients pruned."""
    rs: RootSystem
    coeffs: tuple[tuple[WeylElt, RatFn], ...]  # sorted by (length, perm)

    @staticmethod
    def from_dict(rs: RootSystem, d: dict[WeylElt, RatFn]) -> "NHElt":
        items = [(w, f) for w, f in d.items() if not f.is_zero()]
        items.sort(key=lambda wf: (wf[0].length, wf[0].perm))
        return NHElt(rs, tuple(items))

    def as_dict(self) -> dict[WeylElt, RatFn]:
        return dict(self.coeffs)

    def support(self) -> set[WeylElt]:
        return {w for w, _ in self.coeffs}

    def coefficient(self, v: WeylElt) -> RatFn:
        for w, f in self.coeffs:
            if w == v:
                return f
        return ratfn_zero(self.rs)

    def term_count(self) -> int:
        return sum(f.num.term_count() for _, f in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def render(self) -> str:
        rows = [(w.length, weyl.reduced_word(w), f) for w, f in self.coeffs]
        rows.sort(key=lambda r: (r[0], r[1]))
        return "\n".join(
            f"{' '.join(str(i) for i in word) or 'id'} : {f.render()}"
            for _, word, f in rows
        )


@dataclass
class KKResult:
    w: WeylElt
    c_w: RatFn
    d_w: Optional[MPoly]          # expanded polynomial, when requested
    d_factored: "FactoredPoly"
    term_count: int
    elapsed: float


@dataclass(frozen=True)
class FactoredPoly:
    """unit * product of positive roots; equality cancels shared factors."""
    rs: RootSystem
    unit: MPoly
    root_factors: tuple[int, ...]

    def expand(self) -> MPoly:
        out = self.unit
        for k in self.root_factors:
            out = out * root_linear_form(self.rs, self.rs.positive_roots[k])
        return out

    def equals(self, other: "FactoredPoly") -> bool:
        if self.rs is not other.rs:
            return False
        a = list(self.root_factors)
        b = list(other.root_factors)
        for x in list(a):
            if x in b:
                a.remove(x)
                b.remove(x)
        lhs = self.unit
        for k in a:
            lhs = lhs * root_linear_form(self.rs, self.rs.positive_roots[k])
        rhs = other.unit
        for k in b:
            rhs = rhs * root_linear_form(self.rs, self.rs.positive_roots[k])
        return lhs == rhs


class NilHeckeEngine:
    """Per-system computation context with memoization and budgets."""

    def __init__(self, rs: RootSystem, term_budget: int = 2_000_000,
                 brute_cap: int = 12):
        self.rs = rs
        self.term_budget = term_budget
        self.brute_cap = brute_cap
        self.bruhat = BruhatOrder(rs)
        self._x_memo: dict[Word, NHElt] = {(): self.delta_id()}
        self._brute_memo: dict[Word, dict[WeylElt, RatFn]] = {}
        self._reflections: Optional[list[WeylElt]] = None

    # -- basics -----------------------------------------------------------------

    def delta_id(self) -> NHElt:
        return NHElt.from_dict(self.rs, {weyl.identity(self.rs): ratfn_const(self.rs, 1)})

    def x_gen(self, i: int) -> NHElt:
        """x_i = (1/alpha_i) (d_{s_i} - d_id)."""
        rs = self.rs
        s = weyl.simple_reflection(rs, i)
        idx = rs.index_of_b[tuple(1 if j == i - 1 else 0 for j in range(rs.rank))]
        inv_alpha = RatFn(rs, MPoly.const(rs.rank, 1), (idx,))
        return NHElt.from_dict(rs, {s: inv_alpha, weyl.identity(rs): ratfn_neg(inv_alpha)})

    def nh_mul(self, a: NHElt, b: NHElt) -> NHElt:
        """Bilinear extension of  f d_v * g d_w = f v(g) d_{vw}."""
        if a.rs is not b.rs:
            raise NilHeckeError("mixed root systems")
        out: dict[WeylElt, RatFn] = {}
        for v, f in a.coeffs:
            for w, g in b.coeffs:
                vg = weyl_act_ratfn(v, g)
                term = ratfn_mul(f, vg)
                if term.is_zero():
                    continue
                vw = weyl.multiply(v, w)
                cur = out.get(vw)
                out[vw] = term if cur is None else ratfn_add(cur, term)
        return NHElt.from_dict(self.rs, out)

    def _extend_right(self, a: NHElt, i: int) -> NHElt:
        """a * x_i without generic Weyl actions: only v(alpha_i) is needed."""
        rs = self.rs
        s = weyl.simple_reflection(rs, i)
        out: dict[WeylElt, RatFn] = {}
        for v, f in a.coeffs:
            img = weyl.act_on_simple(v, i)   # signed index of v(alpha_i)
            scaled = ratfn_mul_root_inverse(f, img)
            vs = weyl.multiply(v, s)
            cur = out.get(vs)
            out[vs] = scaled if cur is None else ratfn_add(cur, scaled)
            neg = ratfn_neg(scaled)
            cur = out.get(v)
            out[v] = neg if cur is None else ratfn_add(cur, neg)
        elt = NHElt.from_dict(rs, out)
        if elt.term_count() > self.term_budget:
            raise BudgetExceeded(
                f"support terms {elt.term_count()} exceed budget {self.term_budget}")
        return elt

    # -- x_w --------------------------------------------------------------------

    def x_w(self, word: Word) -> NHElt:
        """Expansion of x_w for a reduced word; memoized over word prefixes."""
        word = tuple(word)
        elt = weyl.from_word(self.rs, word)
        if elt.length != len(word):
            raise NilHeckeError(f"word {word} is not reduced")
        return self._x_prefix(word)

    def _x_prefix(self, word: Word) -> NHElt:
        hit = self._x_memo.get(word)
        if hit is not None:
            return hit
        prev = self._x_prefix(word[:-1])
        out = self._extend_right(prev, word[-1])
        self._x_memo[word] = out
        return out

    def x_of(self, w: WeylElt) -> NHElt:
        return self.x_w(weyl.reduced_word(w))

    def c_wv(self, w: WeylElt, v: WeylElt) -> RatFn:
        return self.x_of(w).coefficient(v)

    def c_w(self, w: WeylElt) -> RatFn:
        return self.c_wv(w, weyl.identity(self.rs))

    def clear_cache(self):
        self._x_memo = {(): self.delta_id()}

    def expand_by_length(self, max_len: int) -> Iterator[tuple[WeylElt, NHElt]]:
        """Yield (w, x_w) for every w with l(w) <= max_len, in BFS order,
        keeping only two layers of expansions in memory."""
        rs = self.rs
        ident = weyl.identity(rs)
        layer: dict[WeylElt, NHElt] = {ident: self.delta_id()}
        yield ident, layer[ident]
        for _ in range(max_len):
            nxt: dict[WeylElt, NHElt] = {}
            for w in sorted(layer, key=lambda e: e.perm):
                xw = layer[w]
                for i in range(1, rs.rank + 1):
                    if weyl.act_on_simple(w, i) > 0:
                        ws = weyl.multiply(w, weyl.simple_reflection(rs, i))
                        if ws not in nxt:
                            nxt[ws] = self._extend_right(xw, i)
            for w in sorted(nxt, key=lambda e: e.perm):
                yield w, nxt[w]
            layer = nxt
            if not layer:
                break

    # -- brute-force oracle --------------------------------------------------------

    def bruteforce_expansion(self, word: Word) -> dict[WeylElt, RatFn]:
        """Signed sum over all 0/1 sequences along a reduced word, grouped by
        the product element.  Independent of the x_i fold."""
        word = tuple(word)
        if len(word) > self.brute_cap:
            raise NilHeckeError(
                f"word length {len(word)} exceeds brute-force cap {self.brute_cap}")
        hit = self._brute_memo.get(word)
        if hit is not None:
            return hit
        rs = self.rs
        elt = weyl.from_word(rs, word)
        if elt.length != len(word):
            raise NilHeckeError(f"word {word} is not reduced")
        sums: dict[WeylElt, RatFn] = {}
        one = ratfn_const(rs, 1)

        def go(pos: int, prefix: WeylElt, acc: RatFn):
            if pos == len(word):
                cur = sums.get(prefix)
                sums[prefix] = acc if cur is None else ratfn_add(cur, acc)
                return
            i = word[pos]
            s = weyl.simple_reflection(rs, i)
            # epsilon = 0: prefix unchanged; denominator factor prefix(alpha_i)
            go(pos + 1, prefix, ratfn_mul_root_inverse(acc, weyl.act_on_simple(prefix, i)))
            # epsilon = 1: prefix gains s_i
            nxt = weyl.multiply(prefix, s)
            go(pos + 1, nxt, ratfn_mul_root_inverse(acc, weyl.act_on_simple(nxt, i)))

        go(0, weyl.identity(rs), one)
        sign = -1 if len(word) % 2 else 1
        out = {v: ratfn_scale(f, sign) for v, f in sums.items() if not f.is_zero()}
        self._brute_memo[word] = out
        return out

    def c_wv_bruteforce(self, word: Word, v: WeylElt) -> RatFn:
        return self.bruteforce_expansion(word).get(v, ratfn_zero(self.rs))

    # -- Kostant-Kumar polynomial -----------------------------------------------------

    def kk_poly(self, w: WeylElt, expand: bool = True) -> KKResult:
        """d_w = (-1)^{l(w)} c_w * product of all positive roots.

        The denominator of c_w must cancel entirely into that product; any
        residue signals an arithmetic bug.
        """
        t0 = time.monotonic()
        c = self.c_w(w)
        c = ratfn_normalize(c)
        if len(set(c.den)) != len(c.den):
            raise NilHeckeError(
                f"residual denominator with multiplicity: {c.den}; arithmetic bug")
        remaining = [k for k in range(len(self.rs.positive_roots)) if k not in set(c.den)]
        sign = -1 if w.length % 2 else 1
        unit = c.num.scale(sign)
        factored = FactoredPoly(self.rs, unit, tuple(remaining))
        d = factored.expand() if expand else None
        count = d.term_count() if d is not None else unit.term_count()
        return KKResult(w, c, d, factored, count, time.monotonic() - t0)

    # -- identity checks ---------------------------------------------------------------

    def recursion_check_b(self, w: WeylElt, v: WeylElt, i: int) -> bool:
        """c_{w,v} = -v(alpha_i)^{-1} (c_{w s_i, v} + c_{w s_i, v s_i}),
        valid when l(w s_i) = l(w) - 1."""
        rs = self.rs
        s = weyl.simple_reflection(rs, i)
        ws = weyl.multiply(w, s)
        if ws.length != w.length - 1:
            raise NilHeckeError("recursion (b) requires l(w s_i) = l(w) - 1")
        lhs = self.c_wv(w, v)
        inner = ratfn_add(self.c_wv(ws, v), self.c_wv(ws, weyl.multiply(v, s)))
        rhs = ratfn_neg(ratfn_mul_root_inverse(inner, weyl.act_on_simple(v, i)))
        return lhs == rhs

    def recursion_check_c(self, w: WeylElt, v: WeylElt, i: int) -> bool:
        """c_{w,v} = alpha_i^{-1} (s_i(c_{s_i w, s_i v}) - c_{s_i w, v}),
        valid when l(s_i w) = l(w) - 1."""
        rs = self.rs
        s = weyl.simple_reflection(rs, i)
        sw = weyl.multiply(s, w)
        if sw.length != w.length - 1:
            raise NilHeckeError("recursion (c) requires l(s_i w) = l(w) - 1")
        lhs = self.c_wv(w, v)
        acted = weyl_act_ratfn(s, self.c_wv(sw, weyl.multiply(s, v)))
        inner = ratfn_add(acted, ratfn_neg(self.c_wv(sw, v)))
        rhs = ratfn_mul_root_inverse(inner, weyl.act_on_simple(weyl.identity(rs), i))
        return lhs == rhs

    def reflections(self) -> list[WeylElt]:
        if self._reflections is None:
            self._reflections = [
                weyl.reflection(self.rs, r) for r in self.rs.positive_roots
            ]
        return self._reflections

    def dyer_check(self, w: WeylElt, v: WeylElt) -> bool:
        """The normalized denominator of c_{w,v} uses each root at most once and
        only roots alpha with s_alpha v <= w."""
        c = ratfn_normalize(self.c_wv(w, v))
        if c.is_zero():
            return True
        if len(set(c.den)) != len(c.den):
            return False
        refs = self.reflections()
        return all(
            self.bruhat.leq(weyl.multiply(refs[k], v), w)
            for k in c.den
        )


def product_formula_check(rs_sum: RootSystem, w1: WeylElt, w2: WeylElt) -> bool:
    """d_{w1 w2} over an orthogonal direct sum equals the product of the factor
    polynomials under the block variable embedding."""
    rs1, rs2 = w1.rs, w2.rs
    if rs_sum.rank != rs1.rank + rs2.rank:
        raise NilHeckeError("rank mismatch with the direct sum")
    word1 = weyl.reduced_word(w1)
    word2 = tuple(i + rs1.rank for i in weyl.reduced_word(w2))
    w = weyl.from_word(rs_sum, word1 + word2)
    d = NilHeckeEngine(rs_sum).kk_poly(w).d_w
    d1 = NilHeckeEngine(rs1).kk_poly(w1).d_w
    d2 = NilHeckeEngine(rs2).kk_poly(w2).d_w
    lifted1 = MPoly(rs_sum.rank, {
        k + (0,) * rs2.rank: c for k, c in d1.terms.items()
    })
    lifted2 = MPoly(rs_sum.rank, {
        (0,) * rs1.rank + k: c for k, c in d2.terms.items()
    })
    return d == lifted1 * lifted2

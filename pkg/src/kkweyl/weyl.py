"""Exact Weyl group elements as signed permutations of the positive roots.

An element stores, for each positive root index k (0-based), the signed
1-based index of its image.  Multiplication is table composition; the length
of an element is its number of inversions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .rootsys import Root, RootSystem, SimpleOrder, lex_key

Word = tuple[int, ...]


class WeylError(ValueError):
    pass


@dataclass(frozen=True)
class WeylElt:
    rs: RootSystem = field(compare=False, repr=False)
    perm: tuple[int, ...]

    def __hash__(self):
        return hash(self.perm)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.perm == other.perm

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return multiply(self, other)

    @property
    def length(self) -> int:
        return sum(1 for x in self.perm if x < 0)

    def is_identity(self) -> bool:
        return all(x == k + 1 for k, x in enumerate(self.perm))

    def is_involution(self) -> bool:
        return multiply(self, self).is_identity()


def identity(rs: RootSystem) -> WeylElt:
    return WeylElt(rs, tuple(range(1, len(rs.positive_roots) + 1)))


def simple_reflection(rs: RootSystem, i: int) -> WeylElt:
    """The reflection s_i in the simple root alpha_i (1-based)."""
    if not 1 <= i <= rs.rank:
        raise WeylError(f"simple index {i} out of range")
    return WeylElt(rs, rs.reflection_table[i - 1])


def multiply(a: WeylElt, b: WeylElt) -> WeylElt:
    """Composition a*b, acting as a(b(.))."""
    if a.rs is not b.rs:
        raise WeylError("elements from different root systems")
    pa = a.perm
    out = tuple(
        pa[x - 1] if x > 0 else -pa[-x - 1]
        for x in b.perm
    )
    return WeylElt(a.rs, out)


def inverse(a: WeylElt) -> WeylElt:
    out = [0] * len(a.perm)
    for k, x in enumerate(a.perm):
        if x > 0:
            out[x - 1] = k + 1
        else:
            out[-x - 1] = -(k + 1)
    return WeylElt(a.rs, tuple(out))


def act_on_root(w: WeylElt, root: Root) -> Root:
    rs = w.rs
    k = rs.index_of_b.get(root.b)
    if k is not None:
        return rs.root_at(w.perm[k])
    k = rs.index_of_b.get(tuple(-x for x in root.b))
    if k is None:
        raise WeylError(f"{root.b} is not a root of this system")
    return rs.root_at(-w.perm[k])


def act_on_simple(w: WeylElt, i: int) -> int:
    """Signed positive-root index of w(alpha_i), i 1-based."""
    k = w.rs.index_of_b[_unit(w.rs.rank, i - 1)]
    return w.perm[k]


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


def from_word(rs: RootSystem, word: Word) -> WeylElt:
    w = identity(rs)
    for i in word:
        w = multiply(w, simple_reflection(rs, i))
    return w


def length(w: WeylElt) -> int:
    return w.length


def first_left_descent(w: WeylElt) -> Optional[int]:
    """Smallest i with l(s_i w) < l(w), i.e. w^{-1}(alpha_i) negative."""
    winv = inverse(w)
    for i in range(1, w.rs.rank + 1):
        if act_on_simple(winv, i) < 0:
            return i
    return None


def first_right_descent(w: WeylElt) -> Optional[int]:
    """Smallest i with l(w s_i) < l(w), i.e. w(alpha_i) negative."""
    for i in range(1, w.rs.rank + 1):
        if act_on_simple(w, i) < 0:
            return i
    return None


def reduced_word(w: WeylElt) -> Word:
    """Canonical reduced word: repeatedly strip the smallest left descent."""
    out = []
    cur = w
    while True:
        i = first_left_descent(cur)
        if i is None:
            break
        out.append(i)
        cur = multiply(simple_reflection(cur.rs, i), cur)
    return tuple(out)


def reflection(rs: RootSystem, beta: Root) -> WeylElt:
    """The reflection s_beta for a positive root beta."""
    if not beta.positive:
        raise WeylError("reflection expects a positive root")
    gram_col = [rs.inner(rs.positive_roots[k], beta) for k in range(len(rs.positive_roots))]
    perm = []
    for k, c in enumerate(gram_col):
        if not c:
            perm.append(k + 1)
        else:
            b = tuple(g - c * bb for g, bb in zip(rs.positive_roots[k].b, beta.b))
            perm.append(rs._signed_index(b))
    return WeylElt(rs, tuple(perm))


# -- Bruhat order ------------------------------------------------------------

class BruhatOrder:
    """Bruhat comparison via the lifting-property recursion, memoized.

    The memo table only ever receives equal values for equal keys, so
    concurrent readers/writers under the GIL are safe.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._memo: dict[tuple[tuple[int, ...], tuple[int, ...]], bool] = {}

    def leq(self, v: WeylElt, w: WeylElt) -> bool:
        if v.rs is not self.rs or w.rs is not self.rs:
            raise WeylError("elements from a different root system")
        return self._leq(v, w)

    def _leq(self, v: WeylElt, w: WeylElt) -> bool:
        if v.is_identity():
            return True
        lv, lw = v.length, w.length
        if lv > lw:
            return False
        if lv == lw:
            return v == w
        key = (v.perm, w.perm)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        i = first_left_descent(w)
        s = simple_reflection(self.rs, i)
        sw = multiply(s, w)
        sv = multiply(s, v)
        if sv.length < lv:
            out = self._leq(sv, sw)
        else:
            out = self._leq(v, sw)
        self._memo[key] = out
        return out


def bruhat_interval_subword(w: WeylElt) -> set[WeylElt]:
    """Brute-force lower Bruhat interval: all products of subwords of a reduced
    word of w.  Test oracle only; exponential in l(w)."""
    rs = w.rs
    word = reduced_word(w)
    out: set[WeylElt] = set()

    def go(pos: int, cur: WeylElt):
        if pos == len(word):
            out.add(cur)
            return
        go(pos + 1, cur)
        go(pos + 1, multiply(cur, simple_reflection(rs, word[pos])))

    go(0, identity(rs))
    return out


def bruhat_leq_subword(v: WeylElt, w: WeylElt) -> bool:
    return v in bruhat_interval_subword(w)


# -- parabolic decomposition --------------------------------------------------

def parabolic_factorize(w: WeylElt, I: frozenset[int] | set[int]) -> tuple[WeylElt, WeylElt]:
    """Unique w = u*v with u of minimal length in its coset and v in W_I.

    l(u s_i) > l(u) for every i in I, and l(w) = l(u) + l(v).
    """
    rs = w.rs
    u = w
    v_word: list[int] = []
    while True:
        for i in sorted(I):
            if act_on_simple(u, i) < 0:
                u = multiply(u, simple_reflection(rs, i))
                v_word.insert(0, i)
                break
        else:
            break
    return u, from_word(rs, tuple(v_word))


# -- involutions ---------------------------------------------------------------

def support(w: WeylElt, order: SimpleOrder) -> list[Root]:
    """Orthogonal support of an involution: greedily extract the lex-maximal
    negated positive root and peel its reflection off, until the identity."""
    rs = w.rs
    if not w.is_involution():
        raise WeylError("support is defined for involutions only")
    out: list[Root] = []
    cur = w
    while not cur.is_identity():
        negated = [rs.positive_roots[k] for k, x in enumerate(cur.perm) if x == -(k + 1)]
        if not negated:
            raise WeylError("involution with no negated root; corrupted element")
        beta = max(negated, key=lambda r: lex_key(order, r))
        out.append(beta)
        cur = multiply(reflection(rs, beta), cur)
    return out


def enumerate_involutions(rs: RootSystem, max_len: int) -> Iterator[WeylElt]:
    """All involutions of length <= max_len, by length-capped BFS over the group."""
    for w in enumerate_elements(rs, max_len):
        if w.is_involution():
            yield w


def enumerate_elements(rs: RootSystem, max_len: int) -> Iterator[WeylElt]:
    """All elements of length <= max_len, in deterministic BFS order."""
    layer = [identity(rs)]
    yield layer[0]
    for _ in range(max_len):
        nxt = {}
        for w in layer:
            lw = w.length
            for i in range(1, rs.rank + 1):
                if act_on_simple(w, i) > 0:
                    ws = multiply(w, simple_reflection(rs, i))
                    nxt.setdefault(ws.perm, ws)
        layer = [nxt[k] for k in sorted(nxt)]
        yield from layer
        if not layer:
            break

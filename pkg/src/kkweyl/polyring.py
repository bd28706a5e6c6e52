"""Sparse multivariate polynomials over exact rationals, and rational functions
whose denominators are multisets of positive roots.

Variables a_1..a_n are the simple roots of the owning system.  Coefficients are
Python ints wherever possible and Fractions otherwise; both compare and hash
consistently, so mixed dicts stay canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootsys import Root, RootSystem
from . import weyl
from .weyl import WeylElt

Coeff = int | Fraction


class PolyError(ValueError):
    pass


def _div(c: Coeff, d: Coeff):
    if isinstance(c, int) and isinstance(d, int):
        q, r = divmod(c, d)
        if not r:
            return q
    out = Fraction(c) / Fraction(d)
    return int(out) if out.denominator == 1 else out


class MPoly:
    """Sparse polynomial: map from exponent tuples to nonzero coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[tuple[int, ...], Coeff] | None = None):
        self.n = n
        if terms and not all(terms.values()):
            terms = {k: c for k, c in terms.items() if c}
        self.terms = terms or {}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "MPoly":
        return cls(n)

    @classmethod
    def const(cls, n: int, c) -> "MPoly":
        c = _norm_coeff(c)
        return cls(n, {(0,) * n: c} if c else {})

    @classmethod
    def var(cls, n: int, i: int) -> "MPoly":
        """The variable a_i, 1-based."""
        e = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls(n, {e: 1})

    # -- ring operations -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other: "MPoly") -> "MPoly":
        if self.n != other.n:
            raise PolyError("mixed variable counts")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return MPoly(self.n, out)

    def __neg__(self) -> "MPoly":
        return MPoly(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        if self.n != other.n:
            raise PolyError("mixed variable counts")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        # b is the smaller operand; special-case tiny multipliers for speed
        out: dict[tuple[int, ...], Coeff] = {}
        for kb, cb in b.items():
            if not any(kb):
                for ka, ca in a.items():
                    v = out.get(ka)
                    p = ca * cb
                    if v is None:
                        out[ka] = p
                    else:
                        v = v + p
                        if v:
                            out[ka] = v
                        else:
                            del out[ka]
                continue
            for ka, ca in a.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                p = ca * cb
                v = out.get(k)
                if v is None:
                    out[k] = p
                else:
                    v = v + p
                    if v:
                        out[k] = v
                    else:
                        del out[k]
        return MPoly(self.n, out)

    def scale(self, c) -> "MPoly":
        c = _norm_coeff(c)
        if not c:
            return MPoly(self.n)
        return MPoly(self.n, {k: _norm_coeff(v * c) for k, v in self.terms.items()})

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(k) for k in self.terms), default=-1)

    def term_count(self) -> int:
        return len(self.terms)

    def coefficient(self, exponents: tuple[int, ...]) -> Coeff:
        return self.terms.get(exponents, 0)

    # -- rendering ---------------------------------------------------------------

    def render(self, varname: str = "a") -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[k]
            mono = "*".join(
                f"{varname}{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(k) if e
            )
            cf = _render_coeff(c)
            if mono:
                if cf == "1":
                    parts.append(mono)
                elif cf == "-1":
                    parts.append("-" + mono)
                else:
                    parts.append(f"{cf}*{mono}")
            else:
                parts.append(cf)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"MPoly({self.render()})"


def _norm_coeff(c) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _render_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def root_linear_form(rs: RootSystem, beta: Root) -> MPoly:
    """The root as a degree-1 polynomial in the simple-root variables."""
    n = rs.rank
    return MPoly(n, {
        tuple(1 if j == i else 0 for j in range(n)): b
        for i, b in enumerate(beta.b) if b
    })


def poly_add(p: MPoly, q: MPoly) -> MPoly:
    return p + q


def poly_mul(p: MPoly, q: MPoly) -> MPoly:
    return p * q


def poly_scale(p: MPoly, c) -> MPoly:
    return p.scale(c)


def divide_by_linear(p: MPoly, L: MPoly) -> tuple[MPoly, MPoly]:
    """Division with remainder by a linear form with zero constant term.

    Returns (q, r) with p = q*L + r and no monomial of r involving the leading
    variable of L (the lowest-index variable with nonzero coefficient).
    Divisibility of p by L is equivalent to r == 0.
    """
    if L.is_zero():
        raise PolyError("division by zero")
    keys = list(L.terms)
    if any(sum(k) != 1 for k in keys):
        raise PolyError("divisor must be linear with zero constant term")
    j = min(k.index(1) for k in keys)
    c0 = L.terms[tuple(1 if i == j else 0 for i in range(L.n))]
    rest = [(k.index(1), c) for k, c in L.terms.items() if k.index(1) != j]

    # bucket terms by their degree in the leading variable; eliminate top-down
    buckets: dict[int, dict[tuple[int, ...], Coeff]] = {}
    for k, c in p.terms.items():
        buckets.setdefault(k[j], {})[k] = c
    q: dict[tuple[int, ...], Coeff] = {}
    for d in range(max(buckets, default=0), 0, -1):
        layer = buckets.get(d)
        if not layer:
            continue
        below = buckets.setdefault(d - 1, {})
        for k, c in layer.items():
            t = _div(c, c0)
            kq = k[:j] + (d - 1,) + k[j + 1:]
            v = q.get(kq)
            if v is None:
                q[kq] = t
            else:
                v = v + t
                if v:
                    q[kq] = v
                else:
                    del q[kq]
            for (i, ci) in rest:
                k2 = list(kq)
                k2[i] += 1
                k2 = tuple(k2)
                v = below.get(k2)
                add = -t * ci
                if v is None:
                    below[k2] = add
                else:
                    v = v + add
                    if v:
                        below[k2] = v
                    else:
                        del below[k2]
    r = buckets.get(0, {})
    return MPoly(p.n, {k: c for k, c in q.items() if c}), MPoly(p.n, {k: c for k, c in r.items() if c})


def divides_linear(L: MPoly, p: MPoly) -> bool:
    return divide_by_linear(p, L)[1].is_zero()


# -- Weyl action ------------------------------------------------------------------


def _action_forms(w: WeylElt) -> list[MPoly]:
    """Images of the variables: w(alpha_i) as linear forms, i = 1..n."""
    rs = w.rs
    out = []
    for i in range(1, rs.rank + 1):
        signed = weyl.act_on_simple(w, i)
        form = root_linear_form(rs, rs.root_at(abs(signed) * (1 if signed > 0 else -1)))
        out.append(form)
    return out


def weyl_act_poly(w: WeylElt, p: MPoly) -> MPoly:
    """Substitute a_i -> w(alpha_i); a ring automorphism."""
    if p.n != w.rs.rank:
        raise PolyError("polynomial does not match the root system rank")
    forms = _action_forms(w)
    out = MPoly.zero(p.n)
    for k, c in p.terms.items():
        mono = MPoly.const(p.n, c)
        for i, e in enumerate(k):
            for _ in range(e):
                mono = mono * forms[i]
        out = out + mono
    return out


# -- rational functions --------------------------------------------------------------


@dataclass(frozen=True)
class RatFn:
    """num / product of positive roots; den is a sorted tuple of root indices."""
    rs: RootSystem
    num: MPoly
    den: tuple[int, ...]

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        # normalized RatFns are canonical: equal iff components are equal
        return (isinstance(other, RatFn) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def render(self) -> str:
        if not self.den:
            return self.num.render()
        den = "*".join(
            f"({root_linear_form(self.rs, self.rs.positive_roots[k]).render()})"
            for k in self.den
        )
        return f"({self.num.render()}) / {den}"

    def __repr__(self):
        return f"RatFn({self.render()})"


def ratfn_zero(rs: RootSystem) -> RatFn:
    return RatFn(rs, MPoly.zero(rs.rank), ())


def ratfn_const(rs: RootSystem, c) -> RatFn:
    return RatFn(rs, MPoly.const(rs.rank, c), ())


def ratfn_from_poly(rs: RootSystem, p: MPoly) -> RatFn:
    return RatFn(rs, p, ())


def ratfn_normalize(f: RatFn) -> RatFn:
    """Cancel every denominator root that divides the numerator."""
    if f.num.is_zero():
        return ratfn_zero(f.rs)
    num = f.num
    den = list(f.den)
    changed = True
    while changed:
        changed = False
        for idx in sorted(set(den)):
            form = root_linear_form(f.rs, f.rs.positive_roots[idx])
            q, r = divide_by_linear(num, form)
            if r.is_zero():
                num = q
                den.remove(idx)
                changed = True
    return RatFn(f.rs, num, tuple(sorted(den)))


def _den_product(rs: RootSystem, indices) -> MPoly:
    out = MPoly.const(rs.rank, 1)
    for k in indices:
        out = out * root_linear_form(rs, rs.positive_roots[k])
    return out


def _multiset_diff(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    out = list(a)
    for x in b:
        if x in out:
            out.remove(x)
    return out


def ratfn_add(f: RatFn, g: RatFn) -> RatFn:
    if f.rs is not g.rs:
        raise PolyError("mixed root systems")
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    extra_f = _multiset_diff(g.den, f.den)  # factors f is missing
    extra_g = _multiset_diff(f.den, g.den)
    lcm = tuple(sorted(list(f.den) + extra_f))
    num = f.num * _den_product(f.rs, extra_f) + g.num * _den_product(f.rs, extra_g)
    return ratfn_normalize(RatFn(f.rs, num, lcm))


def ratfn_neg(f: RatFn) -> RatFn:
    return RatFn(f.rs, -f.num, f.den)


def ratfn_mul(f: RatFn, g: RatFn) -> RatFn:
    if f.rs is not g.rs:
        raise PolyError("mixed root systems")
    if f.is_zero() or g.is_zero():
        return ratfn_zero(f.rs)
    return ratfn_normalize(RatFn(f.rs, f.num * g.num, tuple(sorted(f.den + g.den))))

def ratfn_scale(f: RatFn, c) -> RatFn:
    num = f.num.scale(c)
    if num.is_zero():
        return ratfn_zero(f.rs)
    return RatFn(f.rs, num, f.den)


def ratfn_mul_root_inverse(f: RatFn, signed_index: int) -> RatFn:
    """Multiply by 1/w(alpha): signed 1-based positive-root index; negative
    signs are absorbed into the numerator."""
    if f.is_zero():
        return f
    idx = abs(signed_index) - 1
    num = f.num if signed_index > 0 else -f.num
    # the new factor may now cancel against the numerator
    form = root_linear_form(f.rs, f.rs.positive_roots[idx])
    q, r = divide_by_linear(num, form)
    if r.is_zero():
        return RatFn(f.rs, q, f.den)
    return RatFn(f.rs, num, tuple(sorted(f.den + (idx,))))


def weyl_act_ratfn(w: WeylElt, f: RatFn) -> RatFn:
    """Weyl action; denominator roots map to roots up to sign, signs go to num."""
    if f.rs is not w.rs:
        raise PolyError("mixed root systems")
    num = weyl_act_poly(w, f.num)
    den = []
    sign = 1
    for k in f.den:
        img = w.perm[k]
        if img < 0:
            sign = -sign
        den.append(abs(img) - 1)
    if sign < 0:
        num = -num
    return ratfn_normalize(RatFn(f.rs, num, tuple(sorted(den))))

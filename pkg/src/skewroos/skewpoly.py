"""Skew polynomials over a finite field twisted by a power of Frobenius.

A ring is a field ``L`` over ``K = GF(q)`` together with a twist step ``s``;
multiplication obeys ``x * a = frob^s(a) * x`` where ``frob(a) = a**q``.
Coefficients are packed field ints, ascending in degree, with no trailing
zeros (the zero polynomial has no coefficients).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

from .errors import RingMismatch, SkewPolyError, ZeroDivision


@dataclass(frozen=True, eq=False)
class SkewRing:
    field: object
    s: int = 1
    label: str = "E"

    def twist(self, a: int, i: int = 1) -> int:
        """frob^(s*i)(a)."""
        return self.field.frobenius(a, self.s * i)

    def poly(self, coeffs) -> "SkewPoly":
        F = self.field
        return SkewPoly(self, _trim([F.check(c) for c in coeffs]))

    def constant(self, c: int) -> "SkewPoly":
        return self.poly([c])

    def monomial(self, i: int, c: int = 1) -> "SkewPoly":
        return self.poly([0] * i + [c])

    def linear(self, root: int) -> "SkewPoly":
        """x - root."""
        return self.poly([self.field.neg(root), 1])

    def x_n_minus_one(self, n: int) -> "SkewPoly":
        return self.poly([self.field.neg(1)] + [0] * (n - 1) + [1])

    def same(self, other: "SkewRing") -> bool:
        return self.field is other.field and self.s % self.field.degree == other.s % other.field.degree

    @property
    def zero(self) -> "SkewPoly":
        return SkewPoly(self, ())

    @property
    def one(self) -> "SkewPoly":
        return SkewPoly(self, (1,))


def _trim(cs) -> tuple[int, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class SkewPoly:
    ring: SkewRing
    coeffs: tuple[int, ...]

    # ------------------------------------------------------------ basics
    @property
    def degree(self) -> float | int:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.ring.same(other.ring) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check(self, other: "SkewPoly") -> None:
        if not isinstance(other, SkewPoly) or not self.ring.same(other.ring):
            raise RingMismatch("operands live in different skew polynomial rings")

    # --------------------------------------------------------- arithmetic
    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        F = self.ring.field
        m = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.ring, _trim(F.add(self[i], other[i]) for i in range(m)))

    def __neg__(self) -> "SkewPoly":
        F = self.ring.field
        return SkewPoly(self.ring, tuple(F.neg(c) for c in self.coeffs))

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return self.ring.zero
        F, R = self.ring.field, self.ring
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, fi in enumerate(self.coeffs):
            if not fi:
                continue
            for j, gj in enumerate(other.coeffs):
                if gj:
                    out[i + j] = F.add(out[i + j], F.mul(fi, R.twist(gj, i)))
        return SkewPoly(R, _trim(out))

    def lmul(self, c: int) -> "SkewPoly":
        """c * self for a constant c."""
        F = self.ring.field
        return SkewPoly(self.ring, _trim(F.mul(c, a) for a in self.coeffs))

    def monic(self) -> "SkewPoly":
        if not self.coeffs:
            raise ZeroDivision("the zero polynomial has no monic associate")
        return self.lmul(self.ring.field.inv(self.lc))

    def right_divmod(self, g: "SkewPoly") -> tuple["SkewPoly", "SkewPoly"]:
        """(q, r) with self = q*g + r and deg r < deg g."""
        self._check(g)
        if not g.coeffs:
            raise ZeroDivision("right division by the zero polynomial")
        F, R = self.ring.field, self.ring
        rem = list(self.coeffs)
        dg = len(g.coeffs) - 1
        q = [0] * max(len(rem) - dg, 0)
        while len(rem) - 1 >= dg and rem:
            d = len(rem) - 1 - dg
            c = F.div(rem[-1], R.twist(g.lc, d))
            q[d] = c
            for j, gj in enumerate(g.coeffs):
                if gj:
                    rem[j + d] = F.sub(rem[j + d], F.mul(c, R.twist(gj, d)))
            rem = list(_trim(rem))
        return SkewPoly(R, _trim(q)), SkewPoly(R, tuple(rem))

    def left_divmod(self, g: "SkewPoly") -> tuple["SkewPoly", "SkewPoly"]:
        """(q, r) with self = g*q + r and deg r < deg g."""
        self._check(g)
        if not g.coeffs:
            raise ZeroDivision("left division by the zero polynomial")
        F, R = self.ring.field, self.ring
        rem = list(self.coeffs)
        dg = len(g.coeffs) - 1
        q = [0] * max(len(rem) - dg, 0)
        while len(rem) - 1 >= dg and rem:
            d = len(rem) - 1 - dg
            c = R.twist(F.div(rem[-1], g.lc), -dg)
            q[d] = c
            for j, gj in enumerate(g.coeffs):
                if gj:
                    rem[j + d] = F.sub(rem[j + d], F.mul(gj, R.twist(c, j)))
            rem = list(_trim(rem))
        return SkewPoly(R, _trim(q)), SkewPoly(R, tuple(rem))

    def rem_right(self, g: "SkewPoly") -> "SkewPoly":
        return self.right_divmod(g)[1]

    def right_divides(self, f: "SkewPoly") -> bool:
        """True when self |_r f."""
        return f.rem_right(self).is_zero()

    # --------------------------------------------------------- evaluation
    def eval_right(self, a: int) -> int:
        """sum_i f_i N_i(a), the remainder of self by x - a."""
        F, R = self.ring.field, self.ring
        acc, nrm = 0, 1
        for i, c in enumerate(self.coeffs):
            if c:
                acc = F.add(acc, F.mul(c, nrm))
            nrm = F.mul(nrm, R.twist(a, i))
        return acc

    def reduce_mod_xn(self, n: int) -> "SkewPoly":
        """Reduce modulo x^n - 1 (two-sided when frob^(s*n) is the identity)."""
        F = self.ring.field
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            out[i % n] = F.add(out[i % n], c)
        return SkewPoly(self.ring, _trim(out))

    # ------------------------------------------------------------- text
    def to_text(self, fmt=None) -> str:
        fmt = fmt or (lambda c: str(c))
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = fmt(c)
            if mono and coef == "1":
                terms.append(mono)
            else:
                terms.append(f"{coef}*{mono}" if mono else coef)
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"SkewPoly[{self.ring.label}, s={self.ring.s}]({self.to_text()})"


_TERM = re.compile(r"^(?:(?P<c>.+?)\*)?x(?:\^(?P<e>\d+))?$")


def parse_poly(ring: SkewRing, text: str, parse_elem) -> SkewPoly:
    """Inverse of ``to_text``: ``c0 + c1*x + c2*x^2``; ``parse_elem`` reads coefficients."""
    F = ring.field
    coeffs: dict[int, int] = {}
    text = text.strip()
    if text == "0":
        return ring.zero
    for raw in text.split("+"):
        term = raw.strip()
        if not term:
            raise SkewPolyError(f"empty term in {text!r}")
        m = _TERM.match(term)
        if m:
            e = int(m.group("e") or 1)
            c = parse_elem(m.group("c")) if m.group("c") else 1
        else:
            e, c = 0, parse_elem(term)
        coeffs[e] = F.add(coeffs.get(e, 0), c)
    top = max(coeffs)
    return ring.poly([coeffs.get(i, 0) for i in range(top + 1)])


# ---------------------------------------------------------------- algorithms

def gcrd(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Monic greatest common right divisor."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise ZeroDivision("gcrd(0, 0) is undefined")
    a, b = f, g
    while b:
        a, b = b, a.rem_right(b)
    return a.monic()


def lclm_with_cofactor(f: SkewPoly, g: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """(L, u) with L = lclm(f, g) monic and u*f = L.

    Extended right Euclid: keep u_i f + v_i g = r_i; once r vanishes,
    u_k f = -v_k g is the least common left multiple.
    """
    f._check(g)
    if f.is_zero() or g.is_zero():
        raise ZeroDivision("lclm needs nonzero operands")
    R = f.ring
    r0, r1 = f, g
    u0, u1 = R.one, R.zero
    while r1:
        q, r = r0.right_divmod(r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
    # u1 f + v1 g = 0 with u1 minimal
    L = u1 * f
    c = R.field.inv(L.lc)
    return L.lmul(c), u1.lmul(c)


def lclm(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    return lclm_with_cofactor(f, g)[0]


def lclm_many(polys) -> SkewPoly:
    polys = list(polys)
    if not polys:
        raise SkewPolyError("lclm of an empty family")
    if len(polys) == 1:
        return polys[0].monic()
    return reduce(lclm, polys)


def truncated_norm(field, a: int, i: int, s: int = 1) -> int:
    """prod_{j<i} frob^(s*j)(a)."""
    if i < 0:
        raise SkewPolyError(f"negative norm index {i}")
    acc = 1
    for j in range(i):
        acc = field.mul(acc, field.frobenius(a, s * j))
    return acc


def promote(poly: SkewPoly, ring: SkewRing, embed) -> SkewPoly:
    """Carry a polynomial into another ring through an explicit coefficient map."""
    return ring.poly([embed(c) for c in poly.coeffs])


def pull_back(poly: SkewPoly, ring: SkewRing, restrict) -> SkewPoly:
    """Inverse of ``promote``; ``restrict`` raises ``NotInField`` off the subfield."""
    return ring.poly([restrict(c) for c in poly.coeffs])

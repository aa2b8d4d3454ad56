"""Finite fields GF(p) and GF(Q^m) built as towers over a base field.

Elements are plain Python ints.  An element of ``ExtensionField(base, f)`` is
its coordinate vector ``(c_0, ..., c_{m-1})`` over ``base`` in the power basis
of the modulus variable, packed as ``sum(c_i * base.order**i)``.  Since every
level of a tower packs this way, the base-``p`` digits of any element are its
coordinates over the prime field, and addition is digitwise mod ``p`` at every
level (plain XOR in characteristic 2).

Fields of order at most ``TABLE_LIMIT`` carry exp/log tables with respect to
the modulus variable (the modulus must then be primitive), plus Zech
logarithms in odd characteristic.  Larger fields fall back to schoolbook
polynomial arithmetic.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import InvalidModulus, NotInField, NotPrimePower, ZeroElement

TABLE_LIMIT = 1 << 24
LIST_LIMIT = 1 << 16
FULL_TABLE_LIMIT = 1 << 12
_CHUNK = 1 << 17


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; inputs here are at most ~2**40."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e`` or raise :class:`NotPrimePower`."""
    if not isinstance(q, int) or q < 2:
        raise NotPrimePower(f"{q!r} is not a prime power")
    f = factorize(q)
    if len(f) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    ((p, e),) = f.items()
    return p, e


def _digit_add(a: int, b: int, p: int) -> int:
    r, s = 0, 1
    while a or b:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        r += ((da + db) % p) * s
        s *= p
    return r


def _digit_neg(a: int, p: int) -> int:
    r, s = 0, 1
    while a:
        a, da = divmod(a, p)
        r += ((p - da) % p) * s
        s *= p
    return r


class PrimeField:
    """GF(p) with elements ``0..p-1``."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrimePower(f"{p} is not prime")
        self.p = p
        self.order = p
        self.degree = 1
        self.prime_degree = 1
        self.base = None
        self.name = f"GF({p})"

    zero = 0
    one = 1

    def __repr__(self) -> str:
        return self.name

    def __contains__(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroElement("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def coords(self, x: int) -> list[int]:
        return [x]

    # vectorized (numpy int64 arrays)
    def vadd(self, a, b):
        return (a + b) % self.p

    def vsub(self, a, b):
        return (a - b) % self.p

    def vneg(self, a):
        return (-a) % self.p

    def vmul(self, a, b):
        return (a * b) % self.p


class ExtensionField:
    """GF(Q^m) = base[x]/(modulus); ``modulus`` is ascending and monic."""

    def __init__(self, base, modulus, *, name: str | None = None, tables: bool | None = None,
                 check: bool = True):
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) < 2:
            raise InvalidModulus("modulus must have degree >= 1")
        if modulus[-1] != 1:
            raise InvalidModulus(f"modulus {list(modulus)} is not monic")
        if any(c not in base for c in modulus):
            raise InvalidModulus(f"modulus {list(modulus)} has coefficients outside {base}")
        self.base = base
        self.modulus = modulus
        self.p = base.p
        self.Qb = base.order
        self.degree = len(modulus) - 1
        self.prime_degree = base.prime_degree * self.degree
        self.order = self.Qb ** self.degree
        self.name = name or f"GF({self.Qb}^{self.degree})"
        self._fast_prime = isinstance(base, PrimeField)
        self.gen = self._reduce_poly([0, 1]) if self.degree == 1 else self.Qb
        if check:
            reason = primitivity_failure(base, modulus)
            if reason:
                raise InvalidModulus(f"modulus {list(modulus)} over {base} is {reason}")
        self.has_tables = False
        if tables is None:
            tables = self.order <= TABLE_LIMIT
        if tables:
            self._build_tables()

    zero = 0
    one = 1

    def __repr__(self) -> str:
        return self.name

    def __contains__(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < self.order

    def check(self, x) -> int:
        if x not in self:
            raise NotInField(f"{x!r} is not an element of {self.name}")
        return int(x)

    # ----------------------------------------------------------- coordinates
    def coords(self, x: int) -> list[int]:
        out = []
        Qb = self.Qb
        for _ in range(self.degree):
            x, c = divmod(x, Qb)
            out.append(c)
        return out

    def from_coords(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.degree:
            raise NotInField(f"{len(cs)} coordinates for a degree-{self.degree} field")
        x = 0
        for c in reversed(cs):
            if c not in self.base:
                raise NotInField(f"coordinate {c!r} outside {self.base}")
            x = x * self.Qb + int(c)
        return x

    def prime_digits(self, x: int) -> list[int]:
        out = []
        p = self.p
        for _ in range(self.prime_degree):
            x, c = divmod(x, p)
            out.append(c)
        return out

    # ---------------------------------------------------- generic arithmetic
    def _reduce_poly(self, prod: list[int]) -> int:
        base, mod, m = self.base, self.modulus, self.degree
        prod = list(prod)
        for d in range(len(prod) - 1, m - 1, -1):
            c = prod[d]
            if c:
                for i in range(m):
                    if mod[i]:
                        prod[d - m + i] = base.sub(prod[d - m + i], base.mul(c, mod[i]))
                prod[d] = 0
        return self.from_coords(prod[:m] + [0] * max(0, m - len(prod)))

    def _generic_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        m = self.degree
        if self._fast_prime and self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> m & 1:
                    a ^= self._mod_int
            return r
        ca, cb = self.coords(a), self.coords(b)
        if self._fast_prime:
            p = self.p
            prod = [0] * (2 * m - 1)
            for i, x in enumerate(ca):
                if x:
                    for j, y in enumerate(cb):
                        prod[i + j] += x * y
            mod = self.modulus
            for d in range(2 * m - 2, m - 1, -1):
                c = prod[d] % p
                if c:
                    for i in range(m):
                        prod[d - m + i] -= c * mod[i]
            x = 0
            for c in reversed(prod[:m]):
                x = x * p + c % p
            return x
        base = self.base
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        return self._reduce_poly(prod)

    @property
    def _mod_int(self) -> int:
        return sum(c << i for i, c in enumerate(self.modulus))

    def _generic_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._generic_mul(r, a)
            e >>= 1
            if e:
                a = self._generic_mul(a, a)
        return r

    # ----------------------------------------------------------------- tables
    def _mul_matrix(self, c: int) -> np.ndarray:
        p, D = self.p, self.prime_degree
        rows = [self.prime_digits(self._generic_mul(p ** d, c)) for d in range(D)]
        return np.array(rows, dtype=np.float64)

    def _build_tables(self) -> None:
        Q, p, D = self.order, self.p, self.prime_degree
        N = Q - 1
        pw = p ** np.arange(D, dtype=np.int64)
        exp = np.empty(N, dtype=np.int64)
        exp[0] = 1
        L = 1
        while L < N:
            M = self._mul_matrix(self._generic_pow(self.gen, L))
            cnt = min(L, N - L)
            for s in range(0, cnt, _CHUNK):
                blk = exp[s:min(cnt, s + _CHUNK)]
                dig = (blk[:, None] // pw) % p
                out = np.rint(dig.astype(np.float64) @ M).astype(np.int64) % p
                exp[L + s:L + s + len(blk)] = out @ pw
            L += cnt
        log = np.full(Q, -1, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if (log[1:] < 0).any():
            raise InvalidModulus(f"modulus {list(self.modulus)} is not primitive")
        small = np.int32 if Q < (1 << 31) else np.int64
        self._exp_np = exp.astype(small)
        self._log_np = log.astype(small)
        if p != 2:
            low = exp % p
            plus1 = exp - low + (low + 1) % p
            self._zech_np = self._log_np[plus1]
            digits = (np.arange(Q, dtype=np.int64)[:, None] // pw) % p if Q <= LIST_LIMIT else None
            self._neg_np = ((-digits) % p) @ pw if digits is not None else None
        if Q <= LIST_LIMIT:
            self._exp = exp.tolist()
            self._log = log.tolist()
            if p != 2:
                self._zech = self._zech_np.tolist()
        else:
            self._exp = self._exp_np
            self._log = self._log_np
            if p != 2:
                self._zech = self._zech_np
        self._N = N
        self.has_tables = True
        self._full = None

    def exp(self, k: int) -> int:
        """gamma**k for the modulus variable gamma."""
        if self.has_tables:
            return int(self._exp[k % self._N])
        return self.pow(self.gen, k)

    def log(self, x: int) -> int:
        if x == 0:
            raise ZeroElement("log of zero")
        if not self.has_tables:
            raise NotImplementedError(f"{self.name} has no log table")
        return int(self._log[x])

    # --------------------------------------------------------- scalar ops
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        if self.has_tables:
            la = self._log[a]
            z = self._zech[(self._log[b] - la) % self._N]
            if z < 0:
                return 0
            return int(self._exp[(la + z) % self._N])
        return _digit_add(a, b, self.p)

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.has_tables:
            return int(self._exp[(self._log[a] + self._N // 2) % self._N])
        return _digit_neg(a, self.p)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            return int(self._exp[(self._log[a] + self._log[b]) % self._N])
        return self._generic_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("inverse of zero")
        if self.has_tables:
            return int(self._exp[(-self._log[a]) % self._N])
        return self._generic_pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroElement("negative power of zero")
            return 1 if e == 0 else 0
        if self.has_tables:
            return int(self._exp[(int(self._log[a]) * e) % self._N])
        if e < 0:
            a, e = self.inv(a), -e
        return self._generic_pow(a, e % (self.order - 1))

    def frobenius(self, a: int, i: int = 1) -> int:
        """a**(Qb**i): the i-th power of the base-order Frobenius."""
        i %= self.degree
        if i == 0 or a == 0:
            return a
        if self.has_tables:
            return int(self._exp[(int(self._log[a]) * pow(self.Qb, i, self._N)) % self._N])
        return self._generic_pow(a, self.Qb ** i)

    def scale(self, c: int, a: int) -> int:
        """c*a with c in the base field (embedded as a constant)."""
        return self.mul(c, a)

    # ---------------------------------------------------- vectorized ops
    def _full_tables(self):
        if self._full is None:
            Q = self.order
            el = np.arange(Q, dtype=np.int64)
            self._full = (self.vmul(el[:, None], el[None, :]).astype(np.int32),
                          None if self.p == 2 else self.vadd(el[:, None], el[None, :]).astype(np.int32))
        return self._full

    def _need_tables(self):
        if not self.has_tables:
            raise NotImplementedError(f"vector arithmetic needs log tables ({self.name} too large)")

    def vmul(self, a, b):
        self._need_tables()
        if self.order <= FULL_TABLE_LIMIT and self._full is not None:
            return self._full[0][a, b].astype(np.int64)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp_np[(self._log_np[a].astype(np.int64) + self._log_np[b]) % self._N].astype(np.int64)
        return np.where((a == 0) | (b == 0), 0, r)

    def vadd(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        self._need_tables()
        if self.order <= FULL_TABLE_LIMIT and self._full is not None:
            return self._full[1][a, b].astype(np.int64)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self._log_np[a].astype(np.int64)
        z = self._zech_np[(self._log_np[b] - la) % self._N].astype(np.int64)
        r = np.where(z < 0, 0, self._exp_np[(la + z) % self._N])
        return np.where(a == 0, b, np.where(b == 0, a, r))

    def vneg(self, a):
        if self.p == 2:
            return a
        self._need_tables()
        if self._neg_np is not None:
            return self._neg_np[a]
        a = np.asarray(a, dtype=np.int64)
        r = self._exp_np[(self._log_np[a].astype(np.int64) + self._N // 2) % self._N].astype(np.int64)
        return np.where(a == 0, 0, r)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vfrobenius(self, a, i: int = 1):
        i %= self.degree
        a = np.asarray(a, dtype=np.int64)
        if i == 0:
            return a
        self._need_tables()
        e = pow(self.Qb, i, self._N)
        r = self._exp_np[(self._log_np[a].astype(np.int64) * e) % self._N].astype(np.int64)
        return np.where(a == 0, 0, r)

    def enable_full_tables(self) -> None:
        """Materialize Q x Q add/mul tables (small fields only) for faster vector ops."""
        if self.has_tables and self.order <= FULL_TABLE_LIMIT:
            self._full_tables()


# ------------------------------------------------------------------ polynomials
# Commutative polynomials over a field, ascending coefficient lists, used only
# to test moduli.

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], F) -> list[int]:
    a = _ptrim(list(a))
    df = len(f) - 1
    inv_lead = F.inv(f[-1])
    while len(a) - 1 >= df:
        c = F.mul(a[-1], inv_lead)
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            if fi:
                a[shift + i] = F.sub(a[shift + i], F.mul(c, fi))
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], F) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = F.add(prod[i + j], F.mul(x, y))
    return _pmod(prod, f, F)


def _ppowmod(a: list[int], e: int, f: list[int], F) -> list[int]:
    r = [1]
    while e:
        if e & 1:
            r = _pmulmod(r, a, f, F)
        e >>= 1
        if e:
            a = _pmulmod(a, a, f, F)
    return r


def _pgcd(a: list[int], b: list[int], F) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, F)
    return a


def is_irreducible(F, f) -> bool:
    """Rabin's test for ``f`` (ascending, monic) over the field ``F``."""
    f = list(f)
    m = len(f) - 1
    if m == 1:
        return True
    if f[0] == 0:
        return False
    Q = F.order
    x = [0, 1]
    powers = {}
    cur = x
    for j in range(1, m + 1):
        cur = _ppowmod(cur, Q, f, F)
        powers[j] = cur
    if _ptrim(list(powers[m])) != x:
        return False
    for ell in factorize(m):
        h = list(powers[m // ell]) + [0] * 2
        h[1] = F.sub(h[1], 1)
        if len(_pgcd(f, _ptrim(h), F)) > 1:
            return False
    return True


def primitivity_failure(F, f) -> str | None:
    """None if ``f`` is primitive over ``F``, else a short reason."""
    f = [int(c) for c in f]
    if not is_irreducible(F, f):
        return "reducible"
    Q = F.order ** (len(f) - 1)
    tmp = ExtensionField(F, f, check=False, tables=False)
    for ell in factorize(Q - 1):
        if tmp._generic_pow(tmp.gen, (Q - 1) // ell) == 1:
            return "irreducible but not primitive"
    return None


@lru_cache(maxsize=None)
def smallest_primitive(F, m: int) -> tuple[int, ...]:
    """Lexicographically smallest primitive polynomial of degree ``m`` over ``F``.

    Coefficient tuples ``(c_0, ..., c_{m-1})`` are compared low degree first,
    each coefficient as the integer encoding of a base-field element.
    """
    # the constant term of a primitive polynomial is (-1)^m times a generator of F*
    gens = {c for c in range(1, F.order)
            if all(F.pow(c, (F.order - 1) // ell) != 1 for ell in factorize(F.order - 1))}
    sign = F.one if m % 2 == 0 else F.neg(F.one)
    for cs in itertools.product(range(F.order), repeat=m):
        if cs[0] == 0 or F.mul(sign, cs[0]) not in gens:
            continue
        f = cs + (1,)
        if primitivity_failure(F, f) is None:
            return f
    raise InvalidModulus(f"no primitive polynomial of degree {m} over {F}")  # unreachable


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def base_field(q: int):
    """GF(q) for a prime power q; non-prime q uses the default primitive modulus over GF(p)."""
    p, e = prime_power(q)
    P = prime_field(p)
    if e == 1:
        return P
    return ExtensionField(P, smallest_primitive(P, e), name=f"GF({q})")


@lru_cache(maxsize=None)
def conway_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Conway polynomial C_{p,n}, ascending coefficients.

    The least primitive polynomial in Conway order whose root, raised to
    (p^n-1)/(p^d-1), is a root of C_{p,d} for every proper divisor d of n.
    Practical for the small cases that fix field representations in the
    bundled table data.
    """
    P = prime_field(p)
    if n == 1:
        g = 1 if p == 2 else next(c for c in range(1, p)
                                  if all(pow(c, (p - 1) // ell, p) != 1 for ell in factorize(p - 1)))
        return ((-g) % p, 1)
    subs = {d: conway_polynomial(p, d) for d in range(1, n) if n % d == 0}
    # compatibility with degree 1 pins the constant term
    a0 = ((-1) ** n * (-subs[1][0])) % p
    Q = p ** n
    # Conway order: f = x^n - b_{n-1} x^{n-1} + b_{n-2} x^{n-2} - ..., (b_{n-1}, ..., b_0) ascending
    for bs in itertools.product(range(p), repeat=n - 1):
        f = [a0] + [0] * (n - 1) + [1]
        for k, b in enumerate(bs):
            i = n - 1 - k
            f[i] = b if (n - i) % 2 == 0 else (-b) % p
        if primitivity_failure(P, f) is not None:
            continue
        if all(_compatible(P, f, cd, (Q - 1) // (p ** d - 1)) for d, cd in subs.items()):
            return tuple(f)
    raise InvalidModulus(f"no Conway polynomial found for ({p}, {n})")  # pragma: no cover


def _compatible(P, f, cd, k) -> bool:
    xk = _ppowmod([0, 1], k, f, P)
    acc: list[int] = []
    for c in reversed(cd):
        acc = _pmulmod(acc, xk, f, P) if acc else []
        acc = acc + [0] if not acc else acc
        acc[0] = P.add(acc[0], c)
        acc = _ptrim(acc)
    return not acc

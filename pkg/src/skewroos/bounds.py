"""BCH/Roos certificates over a defining set, Singleton bounds, MRD criteria.

A certificate ``(b, s, delta, r, k_0 < ... < k_r)`` is valid for T when
``(b + s*i + k_j) mod n`` lies in T for all ``0 <= i <= delta-2`` and all j,
with ``k_r - k_0 <= delta + r - 2`` as plain integers.  It proves a lower bound
of ``delta + r`` on both the Hamming and the rank distance.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .code import DefiningSet, mu_closure
from .errors import (BoundInvariantViolation, MalformedCertificate, SearchTooLarge,
                     UnsupportedInput)
from .fields import is_prime

DEFAULT_MAX_N = 100


@dataclass(frozen=True)
class RoosCertificate:
    b: int
    s: int
    delta: int
    r: int
    k: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))

    @property
    def value(self) -> int:
        return self.delta + self.r

    def validate(self, n: int) -> None:
        """Raise ``MalformedCertificate`` unless the structural invariants hold."""
        if not 0 <= self.b < n:
            raise MalformedCertificate(f"b = {self.b} outside [0, {n})")
        if not (1 <= self.s < max(n, 2)) or gcd(self.s, n) != 1:
            raise MalformedCertificate(f"s = {self.s} must lie in [1, n) and be coprime to n = {n}")
        if self.delta < 2:
            raise MalformedCertificate(f"delta = {self.delta} < 2")
        if self.r < 0:
            raise MalformedCertificate(f"r = {self.r} < 0")
        if len(self.k) != self.r + 1:
            raise MalformedCertificate(f"expected {self.r + 1} k values, got {len(self.k)}")
        if any(not 0 <= x < n for x in self.k):
            raise MalformedCertificate(f"k values {list(self.k)} outside [0, {n})")
        if any(a >= b for a, b in zip(self.k, self.k[1:])):
            raise MalformedCertificate(f"k values {list(self.k)} not strictly increasing")
        if self.k[-1] - self.k[0] > self.delta + self.r - 2:
            raise MalformedCertificate(
                f"k span {self.k[-1] - self.k[0]} exceeds delta + r - 2 = {self.delta + self.r - 2}")

    def positions(self, n: int) -> list[int]:
        """Every position the certificate requires to lie in T."""
        return sorted({(self.b + self.s * i + kj) % n
                       for i in range(self.delta - 1) for kj in self.k})

    def sort_key(self) -> tuple:
        # smaller is better
        return (-self.value, -self.delta, self.s, self.b, self.k)

    def to_dict(self) -> dict:
        return {"b": self.b, "s": self.s, "delta": self.delta, "r": self.r, "k": list(self.k)}


def verify_certificate(T: DefiningSet, cert: RoosCertificate) -> bool:
    cert.validate(T.n)
    return all(p in T for p in cert.positions(T.n))


# ------------------------------------------------------------------ search

def _runs(members: list[bool], n: int, b: int, s: int) -> list[int]:
    """run[k] = max m with (b + s*i + k) mod n in T for all i < m."""
    # walk the cycle k -> k + s once; run[k] = 1 + run[k + s] when k is a member
    run = [0] * n
    start = next(k for k in range(n) if not members[(b + k) % n])
    k = (start - s) % n
    for _ in range(n - 1):
        run[k] = run[(k + s) % n] + 1 if members[(b + k) % n] else 0
        k = (k - s) % n
    return run


def _best_for(members: list[bool], n: int, b: int, s: int, max_r: int | None):
    run = _runs(members, n, b, s)
    best = None
    for delta in range(2, max(run) + 2):
        K = [k for k in range(n) if run[k] >= delta - 1]
        if not K:
            break
        # longest block K[i..j] with (K[j] - j) - (K[i] - i) <= delta - 2
        r_best, i_best = 0, 0
        i = 0
        for j in range(len(K)):
            while (K[j] - j) - (K[i] - i) > delta - 2:
                i += 1
            r = j - i
            if max_r is not None and r > max_r:
                i = j - max_r
                r = max_r
            if r > r_best:
                r_best, i_best = r, i
        cert = RoosCertificate(b, s, delta, r_best, tuple(K[i_best:i_best + r_best + 1]))
        if best is None or cert.sort_key() < best.sort_key():
            best = cert
    return best


def _check_searchable(T: DefiningSet, max_n: int | None) -> None:
    if len(T) == 0:
        raise UnsupportedInput("defining set is empty: no bound beyond 1")
    if T.is_full:
        raise UnsupportedInput("defining set is all of C_n: the code is zero")
    limit = DEFAULT_MAX_N if max_n is None else max_n
    if T.n > limit:
        raise SearchTooLarge(f"n = {T.n} exceeds the search limit {limit}")


def search_roos(T: DefiningSet, *, max_r: int | None = None, threads: int = 1,
                max_n: int | None = None) -> tuple[RoosCertificate, int]:
    """Best certificate by value, then larger delta, smaller s, smaller b, lex-smallest k."""
    _check_searchable(T, max_n)
    n = T.n
    members = [t in T for t in range(n)]
    grid = [(b, s) for s in range(1, max(n, 2)) if gcd(s, n) == 1 for b in range(n)]

    def work(chunk):
        out = None
        for b, s in chunk:
            c = _best_for(members, n, b, s, max_r)
            if c is not None and (out is None or c.sort_key() < out.sort_key()):
                out = c
        return out

    if threads <= 1:
        results = [work(grid)]
    else:
        chunks = [grid[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(work, chunks))
    best = min((c for c in results if c is not None), key=RoosCertificate.sort_key)
    return best, best.value


def search_bch(T: DefiningSet, *, threads: int = 1,
               max_n: int | None = None) -> tuple[RoosCertificate, int]:
    return search_roos(T, max_r=0, threads=threads, max_n=max_n)


# ------------------------------------------------------------ upper bounds

def singleton_bounds(n: int, k: int, mu: int) -> tuple[int, int]:
    """(n - k + 1, floor(mu - k*mu/n) + 1)."""
    if mu < 1 or n % mu:
        raise UnsupportedInput(f"mu = {mu} does not divide n = {n}")
    if not 0 <= k <= n:
        raise UnsupportedInput(f"k = {k} outside [0, {n}]")
    return n - k + 1, (mu * n - k * mu) // n + 1


@dataclass(frozen=True)
class MRDVerdict:
    proven_mrd: bool
    lower: int
    upper: int
    reason: str

    def to_dict(self) -> dict:
        return {"proven_mrd": self.proven_mrd, "d_R_lower": self.lower, "d_R_upper": self.upper,
                "reason": self.reason}


def mrd_certify(T: DefiningSet, cert: RoosCertificate) -> MRDVerdict:
    if not T.is_mu_closed:
        raise UnsupportedInput("MRD certification needs a mu-closed defining set")
    if not verify_certificate(T, cert):
        raise MalformedCertificate("certificate does not hold for this defining set")
    tf = len(T.restricted)
    lower, upper = cert.value, tf + 1
    if lower > upper:
        raise BoundInvariantViolation(f"certified lower bound {lower} exceeds |T^F| + 1 = {upper}")
    proven = lower == upper
    reason = (f"|T^F| = {tf} = delta + r - 1" if proven
              else f"{lower} <= d_R <= {upper} (|T^F| = {tf}, delta + r = {lower})")
    return MRDVerdict(proven, lower, upper, reason)


def repeated_gabidulin(b: int, s: int, delta: int, mu: int, nu: int) -> DefiningSet:
    """mu-closure in C_n of {b, b+s, ..., b+(delta-2)s} mod mu."""
    n = mu * nu
    if not 2 <= delta <= mu:
        raise UnsupportedInput(f"delta' = {delta} outside [2, {mu}]")
    if gcd(s, n) != 1:
        raise UnsupportedInput(f"gcd(s, n) = gcd({s}, {n}) != 1")
    base = {(b + i * s) % mu for i in range(delta - 1)}
    return mu_closure(base, n, mu)


def repeated_gabidulin_certificate(b: int, s: int, delta: int, mu: int, nu: int) -> RoosCertificate:
    """The BCH certificate carried by the progression itself."""
    n = mu * nu
    return RoosCertificate(b % n, s % n if n > 1 else 1, delta, 0, (0,))


def vosper_explain(T: DefiningSet, cert: RoosCertificate, *, threads: int = 1) -> RoosCertificate:
    """BCH certificate of value delta + r when mu is prime and |T^F| = delta + r - 1."""
    if not is_prime(T.mu):
        raise UnsupportedInput(f"mu = {T.mu} is not prime")
    if not T.is_mu_closed:
        raise UnsupportedInput("defining set is not mu-closed")
    if not verify_certificate(T, cert):
        raise UnsupportedInput("certificate does not hold for this defining set")
    tf = len(T.restricted)
    if tf != cert.value - 1:
        raise UnsupportedInput(f"|T^F| = {tf} != delta + r - 1 = {cert.value - 1}")
    if tf >= T.mu:
        raise UnsupportedInput(f"delta + r - 1 = {tf} is not below mu = {T.mu}")
    bch, value = search_bch(T, threads=threads)
    if value < cert.value:
        raise BoundInvariantViolation(
            f"no BCH certificate of value {cert.value} although mu is prime (best {value})")
    return bch


# ------------------------------------------------------------------ report

@dataclass(frozen=True)
class BoundReport:
    T: DefiningSet
    k: int
    bch: RoosCertificate | None
    roos: RoosCertificate | None
    d_H_lower: int
    d_R_lower: int
    d_H_singleton: int
    d_R_singleton: int
    mds_proven: bool
    mrd_proven: bool
    mrd_proven_via_TF: bool
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "T": list(self.T.elements),
            "T_F": list(self.T.restricted),
            "n": self.T.n,
            "k": self.k,
            "bch": self.bch.to_dict() if self.bch else None,
            "roos": self.roos.to_dict() if self.roos else None,
            "d_H_lower": self.d_H_lower,
            "d_R_lower": self.d_R_lower,
            "d_H_singleton": self.d_H_singleton,
            "d_R_singleton": self.d_R_singleton,
            "mds_proven": self.mds_proven,
            "mrd_proven": self.mrd_proven,
            "mrd_proven_via_TF": self.mrd_proven_via_TF,
        }


def bound_report(T: DefiningSet, *, threads: int = 1, max_n: int | None = None) -> BoundReport:
    """Best certificates and the Singleton sandwich for the code with defining set T."""
    if len(T) == 0:
        raise UnsupportedInput("defining set is empty")
    if T.is_full:
        raise UnsupportedInput("defining set is all of C_n: the code is zero")
    k = T.n - len(T)
    bch, _ = search_bch(T, threads=threads, max_n=max_n)
    roos, value = search_roos(T, threads=threads, max_n=max_n)
    h_ub, r_ub = singleton_bounds(T.n, k, T.mu)
    if value > h_ub or value > r_ub:
        raise BoundInvariantViolation(f"lower bound {value} exceeds a Singleton bound ({h_ub}, {r_ub})")
    via_tf = T.is_mu_closed and mrd_certify(T, roos).proven_mrd
    return BoundReport(T, k, bch, roos, value, value, h_ub, r_ub,
                       value == h_ub, value == r_ub, via_tf)

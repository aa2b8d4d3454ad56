"""The field tower K <= F <= E with the Frobenius theta of order n = mu * nu."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from . import linalg
from .errors import (EmbeddingError, InvalidModulus, NoSolution, NotInField, NotNormal, TowerError,
                     ZeroElement)
from .fields import ExtensionField, base_field, prime_power, smallest_primitive


@dataclass(frozen=True, eq=False)
class Tower:
    """K = GF(q), F = K(a) of degree mu, E = K(gamma) of degree n = mu*nu.

    ``theta`` is the q-power Frobenius of E; it restricts to the q-power map on
    ``phi(F)`` and ``pi = theta**mu`` fixes ``phi(F)`` pointwise.
    """

    q: int
    mu: int
    nu: int
    K: object
    F: ExtensionField
    E: ExtensionField
    phi_a: int
    embed_exponent: int | None
    alpha: int | None = None
    _phi_basis: list = field(default=None, repr=False)
    _phi_inv: list = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.mu * self.nu

    @property
    def beta(self) -> int | None:
        if self.alpha is None:
            return None
        return self.E.div(self.theta(self.alpha), self.alpha)

    def with_alpha(self, alpha: int) -> "Tower":
        alpha = self.E.check(alpha)
        if not is_normal(self, alpha):
            raise NotNormal(f"alpha = {alpha} is not a normal element of {self.E.name}")
        return Tower(self.q, self.mu, self.nu, self.K, self.F, self.E, self.phi_a,
                     self.embed_exponent, alpha, self._phi_basis, self._phi_inv)

    # ------------------------------------------------------------- maps
    def theta(self, x: int, i: int = 1) -> int:
        return self.E.frobenius(x, i % self.n)

    def sigma(self, a: int, i: int = 1) -> int:
        return self.F.frobenius(a, i % self.mu)

    def phi(self, a: int) -> int:
        """Embed an F element into E."""
        F, E = self.F, self.E
        if a == 0:
            return 0
        if F.has_tables and self.embed_exponent is not None:
            return E.exp(self.embed_exponent * F.log(a))
        acc = 0
        for c, b in zip(F.coords(a), self._phi_basis):
            if c:
                acc = E.add(acc, E.mul(c, b))
        return acc

    def in_F(self, y: int) -> bool:
        return self.theta(y, self.mu) == y

    def phi_inverse(self, y: int) -> int:
        """Pull an element of phi(F) back to F; raises NotInField otherwise."""
        if not self.in_F(y):
            raise NotInField(f"{y} is not in phi(F)")
        if y == 0:
            return 0
        F, E = self.F, self.E
        if F.has_tables and E.has_tables and self.embed_exponent is not None:
            c = (E.order - 1) // (F.order - 1)
            t = E.log(y)
            u0 = self.embed_exponent // c
            return F.exp((t // c) * pow(u0, -1, F.order - 1))
        x = linalg.vecmat(self.K, self.K_coords(y), self._phi_inv)
        return F.from_coords(x[:self.mu])

    def K_coords(self, y: int) -> list[int]:
        return self.E.coords(y)


def _eval_in_E(E, poly, y: int) -> int:
    r = 0
    for c in reversed(poly):
        r = E.add(E.mul(r, y), c)
    return r


def build_tower(q: int, mu: int, nu: int, modF=None, modE=None, embed_hint: int | None = None,
                alpha=None) -> Tower:
    """Construct the tower GF(q) <= GF(q^mu) <= GF(q^(mu*nu)).

    Omitted moduli default to the lexicographically smallest primitive
    polynomial.  ``phi(a)`` is ``gamma**embed_hint`` when a hint is given,
    otherwise the root ``gamma**j`` of ``modF`` with the smallest ``j``.
    """
    prime_power(q)
    if not (isinstance(mu, int) and isinstance(nu, int)) or mu < 1 or nu < 1:
        raise TowerError(f"mu and nu must be positive integers (got {mu}, {nu})")
    return _build_tower(q, mu, nu, tuple(modF) if modF is not None else None,
                        tuple(modE) if modE is not None else None, embed_hint, alpha)


@lru_cache(maxsize=16)
def _build_tower(q, mu, nu, modF, modE, embed_hint, alpha) -> Tower:
    K = base_field(q)
    n = mu * nu
    if modF is None:
        modF = smallest_primitive(K, mu)
    if modE is None:
        modE = smallest_primitive(K, n)
    if len(modF) - 1 != mu:
        raise InvalidModulus(f"modF has degree {len(modF) - 1}, expected mu = {mu}")
    if len(modE) - 1 != n:
        raise InvalidModulus(f"modE has degree {len(modE) - 1}, expected n = {n}")
    F = ExtensionField(K, modF, name=f"GF({q}^{mu})")
    E = ExtensionField(K, modE, name=f"GF({q}^{n})")
    NE, NF = E.order - 1, F.order - 1
    c = NE // NF
    if embed_hint is not None:
        j = embed_hint % NE
        if _eval_in_E(E, F.modulus, E.exp(j)) != 0:
            raise EmbeddingError(f"gamma^{embed_hint} is not a root of modF")
    else:
        j = None
        for u in range(1, NF + 1):
            if gcd(u, NF) != 1:
                continue
            if _eval_in_E(E, F.modulus, E.exp(c * u)) == 0:
                j = c * u
                break
        if j is None:  # pragma: no cover - a primitive modF always splits in E
            raise EmbeddingError("modF has no root in E")
    phi_a = E.exp(j)
    basis = [E.pow(phi_a, i) for i in range(mu)]
    # K-matrix mapping E-coordinates of phi(F) elements back to F-coordinates
    rows = [E.coords(b) for b in basis]
    phi_inv = None
    if mu == n:
        phi_inv = linalg.inverse(K, rows)
    else:
        ext = _complete_basis(K, rows, n)
        full_inv = linalg.inverse(K, ext)
        phi_inv = full_inv
    tower = Tower(q, mu, nu, K, F, E, phi_a, j if F.has_tables and E.has_tables else None,
                  None, basis, phi_inv)
    if alpha is not None:
        tower = tower.with_alpha(alpha)
    return tower


def _complete_basis(K, rows, n):
    out = [list(r) for r in rows]
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        if linalg.rank(K, out + [e]) > len(out):
            out.append(e)
        if len(out) == n:
            break
    return out


def apply_theta(tower: Tower, i: int, x: int) -> int:
    return tower.theta(tower.E.check(x), i)


def orbit_matrix(tower: Tower, alpha: int, rows: int | None = None) -> list[list[int]]:
    """K-coordinate rows of theta^i(alpha), i = 0..rows-1."""
    rows = tower.n if rows is None else rows
    return [tower.E.coords(tower.theta(alpha, i)) for i in range(rows)]


def is_normal(tower: Tower, alpha: int) -> bool:
    alpha = tower.E.check(alpha)
    if alpha == 0:
        raise ZeroElement("zero is never normal")
    return linalg.rank(tower.K, orbit_matrix(tower, alpha)) == tower.n


def find_normal(tower: Tower) -> int:
    """gamma**j for the smallest j >= 1 whose theta-orbit is a K-basis."""
    j = 1
    while True:
        x = tower.E.exp(j)
        if is_normal(tower, x):
            return x
        j += 1


def theta_minus_beta_matrix(tower: Tower, beta: int) -> list[list[int]]:
    E = tower.E
    rows = []
    for i in range(tower.n):
        b = E.from_coords([1 if j == i else 0 for j in range(tower.n)])
        rows.append(E.coords(E.sub(tower.theta(b), E.mul(beta, b))))
    return rows


def hilbert90_solve(tower: Tower, beta: int) -> int:
    """Some alpha != 0 with theta(alpha)/alpha == beta."""
    beta = tower.E.check(beta)
    if beta == 0:
        raise ZeroElement("beta must be nonzero")
    ker = linalg.left_kernel(tower.K, theta_minus_beta_matrix(tower, beta))
    if not ker:
        raise NoSolution(f"N_n(beta) != 1 for beta = {beta}")
    return tower.E.from_coords(ker[0])


def norm(tower: Tower, beta: int, i: int | None = None, s: int = 1) -> int:
    """Truncated norm prod_{j<i} theta^{sj}(beta); full norm when i is None."""
    E = tower.E
    i = tower.n if i is None else i
    acc = 1
    for j in range(i):
        acc = E.mul(acc, tower.theta(beta, s * j))
    return acc


def field_trace(tower: Tower, x: int, target: str = "F") -> int:
    """Tr_{E/F} (returned as an F element) or Tr_{E/K} (a K element)."""
    E = tower.E
    x = E.check(x)
    if target == "F":
        acc = 0
        for j in range(tower.nu):
            acc = E.add(acc, tower.theta(x, tower.mu * j))
        return tower.phi_inverse(acc)
    if target == "K":
        acc = 0
        for j in range(tower.n):
            acc = E.add(acc, tower.theta(x, j))
        if acc >= tower.K.order:
            raise NotInField("trace left K")  # pragma: no cover
        return acc
    raise TowerError(f"unknown trace target {target!r}")

"""Skew cyclic codes from defining sets.

A code is fixed by a tower with a normal element alpha and a defining set T;
its generator is lclm{x - theta^i(beta) : i in T} with beta = theta(alpha)/alpha.
For mu-closed T the generator has coefficients in F and the code lives in
F^n; otherwise only the over-E code is available.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .errors import (CoefficientOutsideF, DimensionMismatch, NotADivisor, NotInField, NotMuClosed,
                     NotNormal, OutOfRange)
from .skewpoly import SkewPoly, SkewRing, lclm_many
from .tower import Tower


# ------------------------------------------------------------- defining sets

@dataclass(frozen=True)
class DefiningSet:
    n: int
    mu: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if self.mu < 1 or self.n % self.mu:
            raise OutOfRange(f"mu = {self.mu} does not divide n = {self.n}")
        bad = [t for t in self.elements if not 0 <= t < self.n]
        if bad:
            raise OutOfRange(f"elements {bad} outside [0, {self.n})")
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    def __contains__(self, t: int) -> bool:
        return t % self.n in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def nu(self) -> int:
        return self.n // self.mu

    @property
    def restricted(self) -> tuple[int, ...]:
        """T^F = {t mod mu}."""
        return tuple(sorted({t % self.mu for t in self.elements}))

    @property
    def is_mu_closed(self) -> bool:
        s = self._set
        return all((t + self.mu) % self.n in s for t in s)

    def closure(self) -> "DefiningSet":
        return mu_closure(self.elements, self.n, self.mu)

    @property
    def is_full(self) -> bool:
        return len(self.elements) == self.n


def mu_closure(T, n: int, mu: int) -> DefiningSet:
    """Smallest superset of T stable under t -> t + mu (mod n)."""
    base = DefiningSet(n, mu, tuple(T))
    out = {(t + j * mu) % n for t in base.elements for j in range(n // mu)}
    return DefiningSet(n, mu, tuple(out))


# ------------------------------------------------------------------- codes

@dataclass(frozen=True, eq=False)
class SkewCyclicCode:
    tower: Tower
    T: DefiningSet
    g: SkewPoly
    over_E: bool = False
    G: list = field(default=None, repr=False)
    H: list = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.tower.n

    @property
    def k(self) -> int:
        return self.n - len(self.g.coeffs) + 1

    @property
    def alpha(self) -> int:
        return self.tower.alpha

    @property
    def beta(self) -> int:
        return self.tower.beta

    @property
    def field(self):
        return self.tower.E if self.over_E else self.tower.F

    def ring(self) -> SkewRing:
        return self.g.ring

    def roots(self) -> list[int]:
        """theta^t(beta) for t in T."""
        return [self.tower.theta(self.beta, t) for t in self.T]

    def g_over_E(self) -> SkewPoly:
        if self.over_E:
            return self.g
        return ring_E(self.tower).poly([self.tower.phi(c) for c in self.g.coeffs])


def ring_F(tower: Tower) -> SkewRing:
    return SkewRing(tower.F, 1, "F")


def ring_E(tower: Tower) -> SkewRing:
    return SkewRing(tower.E, 1, "E")


def _with_alpha(tower: Tower, alpha) -> Tower:
    if alpha is None:
        if tower.alpha is None:
            raise NotNormal("no normal element supplied")
        return tower
    alpha = tower.E.check(alpha)
    if tower.alpha == alpha:
        return tower
    return tower.with_alpha(alpha)


def generator_from_set(tower: Tower, alpha, T, auto_close: bool = True,
                       over_E: bool = False) -> SkewCyclicCode:
    """Code with generator lclm{x - theta^i(beta) : i in T}.

    ``T`` may be a ``DefiningSet`` or an iterable of ints.  A set that is not
    mu-closed is closed when ``auto_close`` is set, kept as-is for an over-E
    code when ``over_E`` is set, and rejected otherwise.
    """
    tower = _with_alpha(tower, alpha)
    n, mu = tower.n, tower.mu
    if not isinstance(T, DefiningSet):
        T = DefiningSet(n, mu, tuple(T))
    if (T.n, T.mu) != (n, mu):
        raise DimensionMismatch(f"defining set for (n, mu) = {(T.n, T.mu)}, tower has {(n, mu)}")
    if not T.is_mu_closed:
        if auto_close:
            T = T.closure()
        elif not over_E:
            raise NotMuClosed(f"T = {list(T.elements)} is not {mu}-closed")
    SE = ring_E(tower)
    if len(T) == 0:
        gE = SE.one
    else:
        gE = lclm_many([SE.linear(tower.theta(tower.beta, t)) for t in T])
    if gE.degree != len(T):
        raise CoefficientOutsideF(f"generator degree {gE.degree} != |T| = {len(T)}")
    if over_E:
        code = SkewCyclicCode(tower, T, gE, True)
    else:
        try:
            g = ring_F(tower).poly([tower.phi_inverse(c) for c in gE.coeffs])
        except NotInField as exc:
            raise CoefficientOutsideF(f"generator coefficient outside F for mu-closed T: {exc}") from exc
        code = SkewCyclicCode(tower, T, g, False)
    return _attach_matrices(code)


def _attach_matrices(code: SkewCyclicCode) -> SkewCyclicCode:
    G = generator_matrix(code)
    H = linalg.nullspace(code.field, G, code.n) if G else _identity(code.n)
    object.__setattr__(code, "G", G)
    object.__setattr__(code, "H", H)
    return code


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def defining_set_of(g: SkewPoly, tower: Tower, alpha=None) -> DefiningSet:
    """{i : g(theta^i(beta)) = 0}, for g right-dividing x^n - 1."""
    tower = _with_alpha(tower, alpha)
    SE = ring_E(tower)
    if g.ring.field is tower.F:
        g = SE.poly([tower.phi(c) for c in g.coeffs])
    elif g.ring.field is not tower.E:
        raise DimensionMismatch("polynomial is over neither F nor E of this tower")
    if not g.right_divides(SE.x_n_minus_one(tower.n)):
        raise NotADivisor("g does not right-divide x^n - 1")
    beta = tower.beta
    return DefiningSet(tower.n, tower.mu,
                       tuple(i for i in range(tower.n) if g.eval_right(tower.theta(beta, i)) == 0))


# ---------------------------------------------------------------- matrices

def generator_matrix(code: SkewCyclicCode) -> list[list[int]]:
    """Row i is x^i * g, i < k (degree stays below n, so no reduction)."""
    R = code.g.ring
    n = code.n
    rows = []
    for i in range(code.k):
        c = (R.monomial(i) * code.g).coeffs
        rows.append(list(c) + [0] * (n - len(c)))
    return rows


@dataclass(frozen=True)
class CodeMatrices:
    norm: list       # n x t, entry N_i(beta_j)
    alpha_cols: list  # n x t, entry theta^i(alpha_j)


def norm_matrix(tower: Tower, points) -> list[list[int]]:
    """n x t matrix with entry (i, j) = N_i(points[j])."""
    E, n = tower.E, tower.n
    cols = []
    for b in points:
        col, acc = [], 1
        for i in range(n):
            col.append(acc)
            acc = E.mul(acc, tower.theta(b, i))
        cols.append(col)
    return linalg.transpose(cols) if cols else [[] for _ in range(n)]


def alpha_column_matrix(tower: Tower, alphas) -> list[list[int]]:
    """n x t matrix with columns (theta^i(alpha_j))_i."""
    n = tower.n
    cols = [[tower.theta(a, i) for i in range(n)] for a in alphas]
    return linalg.transpose(cols) if cols else [[] for _ in range(n)]


def matrices(code: SkewCyclicCode) -> CodeMatrices:
    tw = code.tower
    return CodeMatrices(norm_matrix(tw, code.roots()),
                        alpha_column_matrix(tw, [tw.theta(tw.alpha, t) for t in code.T]))


def to_E(code: SkewCyclicCode, v) -> list[int]:
    return list(v) if code.over_E else [code.tower.phi(c) for c in v]


def annihilates(tower: Tower, v, M) -> bool:
    """v * M == 0 over E."""
    if not M or not M[0]:
        return True
    return not any(linalg.vecmat(tower.E, list(v), M))


# ------------------------------------------------------- encode / membership

def encode(code: SkewCyclicCode, m) -> list[int]:
    m = list(m)
    if len(m) != code.k:
        raise DimensionMismatch(f"message length {len(m)} != k = {code.k}")
    F = code.field
    for c in m:
        F.check(c)
    R = code.g.ring
    c = (R.poly(m) * code.g).coeffs
    return list(c) + [0] * (code.n - len(c))


def is_codeword(code: SkewCyclicCode, v, over: str = "F") -> bool:
    """Membership in the code (``over="F"``) or in its over-E extension (``"E"``)."""
    v = list(v)
    if len(v) != code.n:
        raise DimensionMismatch(f"vector length {len(v)} != n = {code.n}")
    tw = code.tower
    if over == "F" and not code.over_E:
        R = code.g.ring
        try:
            poly = R.poly(v)
        except NotInField:
            return False
        return code.g.right_divides(poly)
    poly = ring_E(tw).poly(v)
    return code.g_over_E().right_divides(poly)


# -------------------------------------------------- skew RS and Gabidulin

def skew_rs(tower: Tower, alpha, b: int, delta: int) -> SkewCyclicCode:
    """Over-E code with consecutive roots theta^(b+i)(beta), 0 <= i <= delta-2."""
    n = tower.n
    if not 1 <= delta <= n:
        raise OutOfRange(f"delta = {delta} outside [1, {n}]")
    T = DefiningSet(n, tower.mu, tuple((b + i) % n for i in range(delta - 1)))
    return generator_from_set(tower, alpha, T, auto_close=False, over_E=True)


def rank_weight_E(tower: Tower, v) -> int:
    """K-dimension of the span of the entries of v (entries in E)."""
    return linalg.rank(tower.K, [tower.E.coords(x) for x in v])


def gabidulin_generator(tower: Tower, g_vec, k: int, step: int = 1) -> list[list[int]]:
    """k x N matrix with rows tau^i(g_vec), tau = theta^step."""
    g_vec = [tower.E.check(x) for x in g_vec]
    N = len(g_vec)
    if not 0 <= k <= N <= tower.n:
        raise OutOfRange(f"need 0 <= k <= N <= n (k={k}, N={N}, n={tower.n})")
    if rank_weight_E(tower, g_vec) != N:
        raise OutOfRange("g_vec does not have full rank weight")
    return [[tower.theta(x, step * i) for x in g_vec] for i in range(k)]


def srs_gabidulin_orthogonal(tower: Tower, alpha, b: int, delta: int) -> bool:
    """sRS(n, delta) rows are orthogonal to the Gabidulin code of dimension delta-1
    generated by theta^b applied to the orbit vector of alpha."""
    code = skew_rs(tower, alpha, b, delta)
    orbit = [tower.theta(code.alpha, b + i) for i in range(tower.n)]
    gab = gabidulin_generator(tower, orbit, delta - 1)
    if not gab or not code.G:
        return True
    prod = linalg.matmul(tower.E, code.G, linalg.transpose(gab))
    return not any(any(r) for r in prod)


"""Exact minimum Hamming and rank distance at desk scale.

Both searches exploit two symmetries of a skew cyclic code: the twisted cyclic
shift ``x * c`` (which rotates supports and applies Frobenius coordinatewise)
and scaling by nonzero field elements.  The Hamming search only needs supports
through position 0; the rank search only needs supports containing 1.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .code import SkewCyclicCode, alpha_column_matrix, is_codeword
from .errors import DistanceError, DistanceInvariantViolation, ZeroCode
from .fields import PrimeField

DEFAULT_SUBSET_BUDGET = 5_000_000
DEFAULT_SUBSPACE_BUDGET = 2_000_000
_CHUNKS = 64   # Hamming search: fixed job chunks
_WAVE = 8      # chunks searched independently before the best size is shared


@dataclass
class SearchResult:
    """Exact value (``lo == hi``) or an interval when the budget ran out."""

    lo: int
    hi: int
    witness: list | None
    method: str
    work: int
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.exact:
            raise DistanceError(f"distance only known to lie in [{self.lo}, {self.hi}]")
        return self.lo

    def to_json(self):
        return self.lo if self.exact else {"lo": self.lo, "hi": self.hi}


# -------------------------------------------------------------- rank weight

def coord_matrix(field_, v) -> list[list[int]]:
    """Rows are the base-field coordinates of the entries of v."""
    return [field_.coords(x) for x in v]


def rank_weight(tower, v, over: str = "F") -> int:
    """dim_K of the span of the entries of v (entries in F, or in E with ``over="E"``)."""
    fld = tower.E if over == "E" else tower.F
    rows = [fld.coords(fld.check(x)) for x in v if x]
    if not rows:
        return 0
    if isinstance(tower.K, PrimeField):
        return linalg.rank_mod_p(np.array(rows, dtype=np.int64), tower.K.p)
    return linalg.rank(tower.K, rows)


def hamming_weight(v) -> int:
    return sum(1 for x in v if x)


# ------------------------------------------------------- field vector ops

class _VecOps:
    """Row-wise elimination helpers over a table-backed field."""

    def __init__(self, fld):
        self.f = fld
        if getattr(fld, "has_tables", True) is False:
            raise DistanceError(f"{fld} is too large for vectorized search")
        if hasattr(fld, "enable_full_tables"):
            fld.enable_full_tables()

    def mul(self, a, b):
        f = self.f
        if isinstance(f, PrimeField):
            return (np.asarray(a, dtype=np.int64) * b) % f.p
        return f.vmul(a, b)

    def sub(self, a, b):
        f = self.f
        if isinstance(f, PrimeField):
            return (np.asarray(a, dtype=np.int64) - b) % f.p
        return f.vsub(a, b)


def _eliminate(ops: _VecOps, R: np.ndarray, v: np.ndarray):
    """Clear R's entries at v's first nonzero position using the pivot row v."""
    fld = ops.f
    p = int(np.flatnonzero(v)[0])
    vn = ops.mul(v, fld.inv(int(v[p])))
    fac = R[:, p]
    if not fac.any():
        return R
    return ops.sub(R, ops.mul(fac[:, None], vn[None, :]))


# --------------------------------------------------------- Hamming search

@dataclass
class _HamState:
    best: int
    best_set: tuple | None
    nodes: int = 0
    budget: int = DEFAULT_SUBSET_BUDGET
    exhausted: bool = False


def _ham_dfs(ops, cols: np.ndarray, idx: list[int], chosen: list[int], state: _HamState, stop_at: int):
    """Depth-first search over independent column sets in lexicographic order.

    ``cols`` holds the residuals (mod the span of ``chosen``) of the columns
    listed in ``idx``; a zero residual closes a dependency.
    """
    m = len(chosen)
    for pos, c in enumerate(idx):
        if m + 2 >= state.best or state.best <= stop_at:
            return
        if state.nodes >= state.budget:
            state.exhausted = True
            return
        state.nodes += 1
        rest = cols[pos + 1:]
        if rest.shape[0] == 0:
            continue
        R = _eliminate(ops, rest, cols[pos])
        zero = ~R.any(axis=1)
        if zero.any():
            j = int(np.flatnonzero(zero)[0])
            state.best = m + 2
            state.best_set = tuple(chosen + [c, idx[pos + 1 + j]])
            continue
        if m + 3 < state.best:
            _ham_dfs(ops, R, idx[pos + 1:], chosen + [c], state, stop_at)


def dependency_search(fld, columns, *, anchor: int | None = 0, upper: int | None = None,
                      lower: int = 1, budget: int = DEFAULT_SUBSET_BUDGET, threads: int = 1):
    """Smallest set of linearly dependent vectors among ``columns``.

    With ``anchor`` set, only sets containing that index are considered (valid
    when a weight-preserving symmetry moves every support onto the anchor).
    Ties are broken by the lexicographically smallest sorted index set, so the
    answer does not depend on ``threads``.  Returns
    ``(size or None, index set, nodes, exhausted)``.
    """
    ops = _VecOps(fld)
    cols = np.array(columns, dtype=np.int64)
    n = cols.shape[0]
    zero_cols = [j for j in range(n) if not cols[j].any()]
    if zero_cols and (anchor is None or anchor in zero_cols):
        return 1, (anchor if anchor is not None else zero_cols[0],), 1, False
    best0 = (upper if upper is not None else cols.shape[1] + 1) + 1
    roots = [anchor] if anchor is not None else list(range(n))
    # jobs are second-level nodes (root, pos); each owns a disjoint subtree
    jobs, pairs = [], []
    for r in roots:
        if not cols[r].any():
            continue
        others = [j for j in range(n) if j != r and (anchor is not None or j > r)]
        if not others:
            continue
        R = _eliminate(ops, cols[others], cols[r])
        zero = ~R.any(axis=1)
        if zero.any():
            pairs.append(tuple(sorted((r, others[int(np.flatnonzero(zero)[0])]))))
            continue
        jobs.extend((r, others, R, pos) for pos in range(len(others)))
    if pairs:
        return 2, min(pairs), len(roots), False

    def run(chunk, best, share):
        st = _HamState(best, None, 0, share)
        for r, others, R, pos in chunk:
            if st.best <= 3 or st.best <= lower:
                break
            if st.nodes >= st.budget:
                st.exhausted = True
                break
            st.nodes += 1
            rest = R[pos + 1:]
            if rest.shape[0] == 0:
                continue
            R2 = _eliminate(ops, rest, R[pos])
            z = ~R2.any(axis=1)
            if z.any():
                st.best = 3
                st.best_set = (r, others[pos], others[pos + 1 + int(np.flatnonzero(z)[0])])
                continue
            if 4 < st.best:
                _ham_dfs(ops, R2, others[pos + 1:], [r, others[pos]], st, lower)
        return st

    # The schedule (chunks, waves, per-chunk budgets) never depends on ``threads``:
    # chunks in a wave search independently and only share the best size between
    # waves, so node counts and witnesses are identical for any thread count.
    size = max(1, -(-len(jobs) // _CHUNKS))
    chunks = [jobs[i:i + size] for i in range(0, len(jobs), size)]
    best, nodes, exhausted, found = best0, 0, False, []
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for w in range(0, len(chunks), _WAVE):
            if best <= 3 or best <= lower:
                break
            left = budget - nodes
            if left <= 0:
                exhausted = True
                break
            wave = chunks[w:w + _WAVE]
            share = max(1, left // len(wave))
            task = lambda c, b=best, sh=share: run(c, b, sh)
            states = list(pool.map(task, wave)) if pool else [task(c) for c in wave]
            nodes += sum(st.nodes for st in states)
            exhausted |= any(st.exhausted for st in states)
            found += [(st.best, tuple(sorted(st.best_set))) for st in states if st.best_set is not None]
            if found:
                best = min(best, min(found)[0])
    finally:
        if pool:
            pool.shutdown()
    if not found:
        return None, None, nodes, exhausted
    size, S = min(found)
    return size, S, nodes, exhausted


def _kernel_on_support(fld, columns, S) -> list[int]:
    """Nonzero coefficients c_j (j in S) with sum c_j columns[j] = 0."""
    M = [list(columns[j]) for j in S]
    ker = linalg.left_kernel(fld, M)
    if not ker:
        raise DistanceInvariantViolation(f"columns {S} are independent")
    return ker[0]


def min_hamming_distance(code: SkewCyclicCode, *, lower: int = 1, budget: int | None = None,
                         threads: int = 1) -> SearchResult:
    """Minimum Hamming distance by column-dependency search on a parity-check matrix.

    ``lower`` is a proven lower bound (e.g. from a certificate); the search stops
    as soon as it meets a dependency of that size.
    """
    if code.k == 0:
        raise ZeroCode("the zero code has no minimum distance")
    t0 = time.perf_counter()
    n, k = code.n, code.k
    fld = code.field
    singleton = n - k + 1
    if k == n:
        w = [1] + [0] * (n - 1)
        return SearchResult(1, 1, w, "full-space", 0, time.perf_counter() - t0)
    cols = linalg.transpose(code.H)
    budget = DEFAULT_SUBSET_BUDGET if budget is None else budget
    size, S, nodes, exhausted = dependency_search(fld, cols, anchor=0, upper=singleton,
                                                  lower=lower, budget=budget, threads=threads)
    if size is None:
        if exhausted:
            return SearchResult(max(lower, 1), singleton, None, "column-dependency", nodes,
                                time.perf_counter() - t0)
        raise DistanceInvariantViolation("no dependency up to the Singleton bound")
    coeffs = _kernel_on_support(fld, cols, S)
    witness = [0] * n
    for j, c in zip(S, coeffs):
        witness[j] = c
    if hamming_weight(witness) != size or not is_codeword(code, witness, "E" if code.over_E else "F"):
        raise DistanceInvariantViolation("Hamming witness failed verification")
    if exhausted and size > lower:
        return SearchResult(lower, size, witness, "column-dependency", nodes,
                            time.perf_counter() - t0, {"partial": True})
    return SearchResult(size, size, witness, "column-dependency", nodes, time.perf_counter() - t0)


def min_hamming_distance_over_E(code: SkewCyclicCode, *, lower: int = 1, budget: int | None = None,
                                threads: int = 1) -> SearchResult:
    """d_H of the over-E code, using the alpha-column matrix as parity check."""
    if code.k == 0:
        raise ZeroCode("the zero code has no minimum distance")
    t0 = time.perf_counter()
    tw = code.tower
    A = alpha_column_matrix(tw, [tw.theta(tw.alpha, t) for t in code.T])
    n, k = code.n, code.k
    if not code.T.elements:
        return SearchResult(1, 1, [1] + [0] * (n - 1), "full-space", 0)
    budget = DEFAULT_SUBSET_BUDGET if budget is None else budget
    size, S, nodes, exhausted = dependency_search(tw.E, A, anchor=0, upper=n - k + 1, lower=lower,
                                                  budget=budget, threads=threads)
    if size is None:
        if exhausted:
            return SearchResult(lower, n - k + 1, None, "alpha-column-dependency", nodes)
        raise DistanceInvariantViolation("no dependency up to the Singleton bound")
    coeffs = _kernel_on_support(tw.E, A, S)
    witness = [0] * n
    for j, c in zip(S, coeffs):
        witness[j] = c
    if not is_codeword(code, witness, "E"):
        raise DistanceInvariantViolation("over-E Hamming witness failed verification")
    hi = size
    lo = lower if exhausted else size
    return SearchResult(lo, hi, witness, "alpha-column-dependency", nodes, time.perf_counter() - t0)


# ------------------------------------------------------------ rank search

def gaussian_binomial(m: int, w: int, q: int) -> int:
    if w < 0 or w > m:
        return 0
    num = den = 1
    for i in range(w):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def rref_subspaces(m: int, w: int, p: int):
    """Yield every w-dimensional subspace of GF(p)^m once, as its RREF (w x m array)."""
    from itertools import combinations, product
    for pivots in combinations(range(m), w):
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivots]
        for vals in product(range(p), repeat=len(free)):
            R = np.zeros((w, m), dtype=np.int64)
            for i, pc in enumerate(pivots):
                R[i, pc] = 1
            for (i, c), v in zip(free, vals):
                R[i, c] = v
            yield R


def expansion_tensor(code: SkewCyclicCode) -> np.ndarray:
    """(k*m, n, m) array: K-coordinates of the codeword of each K-basis message."""
    fld = code.field
    m = fld.degree
    G = code.G
    basis = [fld.from_coords([1 if j == b else 0 for j in range(m)]) for b in range(m)]
    out = np.zeros((code.k * m, code.n, m), dtype=np.int64)
    for a, row in enumerate(G):
        for b, e in enumerate(basis):
            for i, gi in enumerate(row):
                if gi:
                    out[a * m + b, i] = fld.coords(fld.mul(e, gi))
    return out


def _rank_deficient_witness(sys_mat: np.ndarray, p: int):
    ker = linalg.left_kernel_mod_p(sys_mat, p)
    return ker[0] if len(ker) else None


def min_rank_distance(code: SkewCyclicCode, *, lower: int = 1, budget: int | None = None,
                      threads: int = 1, normalize: bool = True) -> SearchResult:
    """Minimum rank distance by support-subspace search.

    A codeword has rank weight <= w iff all its entries lie in some w-dim
    K-subspace V.  After scaling, V may be assumed to contain 1, so V is
    ``K*1 + W`` with W a (w-1)-dim subspace of the coordinates 1..m-1, and the
    membership test only involves those coordinates.  ``normalize=False``
    enumerates every w-dim subspace instead (an independent cross-check).
    """
    if code.k == 0:
        raise ZeroCode("the zero code has no minimum distance")
    tw = code.tower
    K = tw.K
    if not isinstance(K, PrimeField):
        raise DistanceError("rank search needs a prime base field K")
    t0 = time.perf_counter()
    p = K.p
    fld = code.field
    m = fld.degree
    n, k = code.n, code.k
    T = expansion_tensor(code)           # (k*m, n, m)
    rows = k * m
    if normalize:
        Tsub, dim, shift = T[:, :, 1:], m - 1, 1   # coordinates outside K*1
    else:
        Tsub, dim, shift = T, m, 0
    budget = DEFAULT_SUBSPACE_BUDGET if budget is None else budget
    singleton = (m * n - k * m) // n + 1 if not code.over_E else None
    work = 0
    for w in range(max(lower, 1), m + 1):
        if w == m:
            # every codeword has rank <= m; the minimum is m when nothing smaller exists
            hit = _rank_witness_full(code)
            return SearchResult(m, m, hit, "support-subspace", work, time.perf_counter() - t0,
                                {"w": w})
        count = gaussian_binomial(dim, w - shift, p)
        if work + count > budget:
            return SearchResult(w, singleton or m, None, "support-subspace", work,
                                time.perf_counter() - t0, {"partial": True})
        found = _scan_subspaces(Tsub, rows, dim, w - shift, p, threads)
        work += found[1]
        if found[0] is not None:
            msg_k = found[0]
            witness = _message_to_codeword(code, msg_k)
            rw = rank_weight(tw, witness, "E" if code.over_E else "F")
            if rw != w or not any(witness):
                raise DistanceInvariantViolation(f"rank witness has weight {rw}, expected {w}")
            return SearchResult(w, w, witness, "support-subspace", work, time.perf_counter() - t0)
    raise DistanceInvariantViolation("rank search exhausted without a codeword")  # pragma: no cover


def _scan_subspaces(Tsub, rows, dim, w, p, threads):
    """First W (in RREF enumeration order) of dimension w in GF(p)^dim such that some
    nonzero codeword has all (projected) coordinates in W; returns (kernel vector, tested)."""
    subs = list(rref_subspaces(dim, w, p))

    def test(W):
        # annihilator of W: columns x with W x = 0
        if W.shape[0]:
            ann = linalg.nullspace_mod_p(W, p).T          # (dim, dim - w)
        else:
            ann = np.eye(dim, dtype=np.int64)
        S = np.tensordot(Tsub, ann, axes=([2], [0])) % p  # (rows, n, dim - w)
        S = S.reshape(rows, -1)
        if linalg.rank_mod_p(S, p) < rows:
            return _rank_deficient_witness(S, p)
        return None

    if threads <= 1:
        for i, W in enumerate(subs):
            v = test(W)
            if v is not None:
                return v, i + 1
        return None, len(subs)

    hits: dict[int, np.ndarray] = {}
    chunk = max(1, len(subs) // (threads * 4))

    def work(start):
        for i in range(start, min(start + chunk, len(subs))):
            v = test(subs[i])
            if v is not None:
                return i, v
        return None

    with ThreadPoolExecutor(max_workers=threads) as ex:
        for res in ex.map(work, range(0, len(subs), chunk)):
            if res is not None:
                hits[res[0]] = res[1]
                break
    if hits:
        i = min(hits)
        return hits[i], i + 1
    return None, len(subs)


def _message_to_codeword(code: SkewCyclicCode, msg_k) -> list[int]:
    fld = code.field
    m = fld.degree
    msg = [fld.from_coords([int(x) for x in msg_k[a * m:(a + 1) * m]]) for a in range(code.k)]
    out = [0] * code.n
    for a, c in enumerate(msg):
        if c:
            for i, gi in enumerate(code.G[a]):
                if gi:
                    out[i] = fld.add(out[i], fld.mul(c, gi))
    return out


def _rank_witness_full(code: SkewCyclicCode) -> list[int]:
    return list(code.G[0])


# ---------------------------------------------------------- naive oracles

def naive_min_hamming(code: SkewCyclicCode, limit: int = 1 << 24) -> int:
    """Minimum weight over all nonzero codewords (enumerates |field|^k messages)."""
    Q = code.field.order
    if Q ** code.k > limit:
        raise DistanceError(f"{Q}^{code.k} codewords exceed the enumeration limit")
    best = code.n
    for c in _all_codewords(code, projective=False):
        best = min(best, hamming_weight(c))
    return best


def naive_min_rank(code: SkewCyclicCode, limit: int = 1 << 22) -> int:
    """Minimum rank weight over codewords up to scalar (projective enumeration)."""
    Q = code.field.order
    if (Q ** code.k - 1) // (Q - 1) > limit:
        raise DistanceError("projective codeword count exceeds the enumeration limit")
    tw = code.tower
    over = "E" if code.over_E else "F"
    best = code.field.degree
    for c in _all_codewords(code, projective=True):
        best = min(best, rank_weight(tw, c, over))
    return best


def _all_codewords(code: SkewCyclicCode, projective: bool):
    from itertools import product
    fld = code.field
    Q, k = fld.order, code.k
    for msg in product(range(Q), repeat=k):
        nz = next((x for x in msg if x), None)
        if nz is None or (projective and nz != 1):
            continue
        c = [0] * code.n
        for a, x in enumerate(msg):
            if x:
                for i, gi in enumerate(code.G[a]):
                    if gi:
                        c[i] = fld.add(c[i], fld.mul(x, gi))
        yield c


# -------------------------------------------------------- classification

@dataclass(frozen=True)
class Classification:
    is_mds: bool
    is_mrd: bool
    is_almost_mrd: bool

    def to_dict(self) -> dict:
        return {"is_mds": self.is_mds, "is_mrd": self.is_mrd, "is_almost_mrd": self.is_almost_mrd}


def classify(n: int, k: int, mu: int, d_H: int | None, d_R: int | None) -> Classification:
    """MDS / MRD / almost-MRD flags from exact distances (None = unknown, reported False)."""
    h_ub = n - k + 1
    r_ub = (mu * n - k * mu) // n + 1
    almost = None
    if (k * mu) % n == 0:
        almost = mu - k * mu // n
    return Classification(d_H is not None and d_H == h_ub,
                          d_R is not None and d_R == r_ub,
                          d_R is not None and almost is not None and d_R == almost)


def check_subfield_distance_equality(code: SkewCyclicCode, *, threads: int = 1) -> bool:
    """d_H of the code over F equals d_H of its over-E extension."""
    if code.over_E:
        raise DistanceError("expected a code over F")
    if not code.T.is_mu_closed:
        raise DistanceError("defining set is not mu-closed")
    dF = min_hamming_distance(code, threads=threads).value
    dE = min_hamming_distance_over_E(code, threads=threads).value
    if dF != dE:
        raise DistanceInvariantViolation(f"d_H over F = {dF} but over E = {dE}")
    return True

"""Cosparse analysis machinery.

Closed-form nullspace bases of row-sampled Laplacians, cosparsity
measurement against the Laplacian, and the uniqueness diagnostics (maximal
cosparse subspace dimension, spark of the pseudoinverse dictionary, and a
randomized at-most-one-solution probe).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .graphs import Cosupport, Graph, connected_components, laplacian
from .linalg import ZERO_FLOOR, pseudoinverse, rank

__all__ = [
    "sampling_matrix",
    "zero_sum_basis",
    "NullspaceBasis",
    "nullspace_basis",
    "pairwise_difference_basis",
    "cosparsity",
    "max_cosparse_dim",
    "max_cosparse_dim_bruteforce",
    "uniqueness_bound",
    "UniquenessCheck",
    "randomized_uniqueness_check",
    "spark_pinv",
    "spark_bruteforce",
]


def sampling_matrix(indices, n: int) -> np.ndarray:
    """Row-selection matrix: row t holds a single 1 at column indices[t]."""
    idx = [int(i) for i in indices]
    for i in idx:
        if i < 0 or i >= n:
            raise ValueError(f"index {i} out of range for n={n}")
    psi = np.zeros((len(idx), n))
    if idx:
        psi[np.arange(len(idx)), idx] = 1.0
    return psi


def zero_sum_basis(m: int) -> np.ndarray:
    """Lower-triangular basis of the zero-sum subspace of R^m.

    Shape m x (m-1).  Column k (0-indexed) holds m-1-k on the diagonal row k
    and -1 on every row below, zeros above, so each column sums to zero and
    the columns are linearly independent.  Mirrors the zero-sum column
    structure of a transposed incidence matrix.
    """
    if m < 1:
        raise ValueError("need at least one support element")
    w = np.zeros((m, m - 1))
    for k in range(m - 1):
        w[k, k] = float(m - 1 - k)
        w[k + 1 :, k] = -1.0
    return w


@dataclass(frozen=True)
class NullspaceBasis:
    """Closed-form basis of the signals annihilated on a cosupport.

    Spans {z * 1 + smooth_part @ c}: the constant vector plus the
    pseudoinverse image of zero-sum impulse combinations living on the
    cosupport complement.
    """

    cosupport: Cosupport
    constant_part: np.ndarray
    smooth_part: np.ndarray

    def matrix(self) -> np.ndarray:
        return np.column_stack([self.constant_part, self.smooth_part])

    @property
    def dim(self) -> int:
        return 1 + self.smooth_part.shape[1]


def nullspace_basis(
    g: Graph, cosupport: Cosupport, l_pinv: np.ndarray | None = None
) -> NullspaceBasis:
    """Basis of the nullspace of the cosupport-sampled Laplacian rows.

    For a connected graph and cosupport with non-empty complement of size m,
    the nullspace has dimension exactly m and is spanned by the constant
    vector together with  L^+ Psi_complement^T W,  W the zero-sum basis.

    Raises for disconnected graphs (the per-component block model is out of
    scope) and for a full cosupport (annihilating every row leaves span{1};
    there is nothing left to sample).
    """
    if cosupport.n != g.n:
        raise ValueError("cosupport and graph sizes differ")
    if connected_components(g) != 1:
        raise ValueError("nullspace basis requires a connected graph")
    comp = cosupport.complement
    if not comp:
        raise ValueError(
            "cosupport covers every vertex: the nullspace is span{1} and no "
            "sampled basis is defined"
        )
    if l_pinv is None:
        l_pinv = pseudoinverse(laplacian(g))
    w = zero_sum_basis(len(comp))
    smooth = l_pinv @ sampling_matrix(comp, g.n).T @ w
    return NullspaceBasis(cosupport, np.ones(g.n), smooth)


def pairwise_difference_basis(cosupport: Cosupport) -> np.ndarray:
    """Alternative zero-sum parameterisation: columns e_i - e_j over
    consecutive complement vertices.  Spans the same space as
    Psi_complement^T @ zero_sum_basis."""
    comp = cosupport.complement
    if len(comp) < 2:
        raise ValueError("need at least two support vertices")
    mat = np.zeros((cosupport.n, len(comp) - 1))
    for col, (i, j) in enumerate(zip(comp, comp[1:])):
        mat[i, col] = 1.0
        mat[j, col] = -1.0
    return mat


def cosparsity(g: Graph, x, tol: float = 1e-9) -> tuple[int, Cosupport]:
    """Count of vertices where L x vanishes, with the vanishing set.

    The zero test is relative: |(Lx)_i| <= tol * ||Lx||_inf.  Once
    ||Lx||_inf itself drops to the 1e-12 floor every vertex counts as
    annihilated.
    """
    vec = np.asarray(x, dtype=float)
    if vec.shape != (g.n,):
        raise ValueError(f"signal shape {vec.shape} does not match n={g.n}")
    lx = laplacian(g) @ vec
    scale = float(np.abs(lx).max())
    if scale <= ZERO_FLOOR:
        members: tuple[int, ...] = tuple(range(g.n))
    else:
        members = tuple(int(i) for i in np.flatnonzero(np.abs(lx) <= tol * scale))
    return len(members), Cosupport(g.n, members)


def max_cosparse_dim(g: Graph, l: int) -> int:
    """Largest nullspace dimension over cosupports of size >= l.

    Closed form n - l for a connected graph and 0 <= l < n.  For l >= n the
    only fully annihilated signals are the constants, so the value clamps
    to 1 (outside the n - l formula's range).
    """
    if connected_components(g) != 1:
        raise ValueError("measure defined here for connected graphs only")
    if l < 0:
        raise ValueError("cosparsity level must be >= 0")
    if l >= g.n:
        return 1
    return g.n - l


def max_cosparse_dim_bruteforce(g: Graph, l: int) -> int:
    """Exhaustive counterpart of max_cosparse_dim; exponential, small n only."""
    lap = laplacian(g)
    best = 0
    for size in range(max(l, 0), g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            if size == 0:
                best = max(best, g.n)
                continue
            best = max(best, g.n - rank(lap[list(subset), :]))
    return best


def uniqueness_bound(n: int, l: int) -> int:
    """Measurements guaranteeing at most one signal of cosparsity >= l.

    Twice the maximal cosparse dimension, 2 * (n - l); zero at l = n where
    only constants remain.
    """
    if not 0 <= l <= n:
        raise ValueError("cosparsity level must lie in [0, n]")
    return 2 * (n - l)


@dataclass(frozen=True)
class UniquenessCheck:
    passed: bool
    min_gap: float
    trials: int
    gap_tol: float


def randomized_uniqueness_check(
    g: Graph,
    l: int,
    m: int,
    trials: int = 100,
    seed: int = 42,
    gap_tol: float = 1e-6,
    min_separation: float = 1e-2,
) -> UniquenessCheck:
    """Empirical at-most-one-solution probe (evidence, not proof).

    Per trial: draw two distinct unit-norm signals, each annihilated on its
    own random size-l cosupport, plus an i.i.d. Gaussian measurement matrix
    with m rows; record the smallest measurement gap seen.  Continuous
    random measurement rows have no non-trivial dependencies with the
    Laplacian rows almost surely, which is the regime the bound addresses.
    """
    if connected_components(g) != 1:
        raise ValueError("uniqueness probe requires a connected graph")
    if not 0 < l < g.n:
        raise ValueError("cosparsity level must lie in (0, n)")
    rng = np.random.default_rng(seed)
    l_pinv = pseudoinverse(laplacian(g))
    min_gap = np.inf
    for _ in range(trials):
        mat = rng.standard_normal((m, g.n))
        for _attempt in range(100):
            pair = []
            for _ in range(2):
                members = tuple(sorted(rng.choice(g.n, size=l, replace=False)))
                basis = nullspace_basis(g, Cosupport(g.n, members), l_pinv=l_pinv)
                vec = basis.matrix() @ rng.standard_normal(basis.dim)
                pair.append(vec / max(float(np.linalg.norm(vec)), ZERO_FLOOR))
            if float(np.linalg.norm(pair[0] - pair[1])) >= min_separation:
                break
        else:
            raise RuntimeError("could not draw two separated cosparse signals")
        gap = float(np.linalg.norm(mat @ (pair[0] - pair[1])))
        min_gap = min(min_gap, gap)
    return UniquenessCheck(min_gap > gap_tol, float(min_gap), trials, gap_tol)


def spark_pinv(g: Graph) -> int:
    """Spark of the Laplacian-pseudoinverse dictionary of a connected graph.

    Equals n: the columns carry exactly one linear dependency (inherited
    from the constant left-nullvector of the Laplacian), so every n-1 of
    them stay independent while the full set is dependent.
    """
    if connected_components(g) != 1:
        raise ValueError("spark formula holds for connected graphs")
    return g.n


def spark_bruteforce(a, independence_tol: float = 1e-8) -> int:
    """Smallest number of linearly dependent columns, by exhaustive search.

    A subset counts as dependent when its smallest singular value drops to
    ``independence_tol`` or below.  Returns ncols + 1 when every subset is
    independent.  Exponential; intended for n <= 8 cross-checks.
    """
    arr = np.atleast_2d(np.asarray(a, dtype=float))
    ncols = arr.shape[1]
    for size in range(1, ncols + 1):
        for subset in itertools.combinations(range(ncols), size):
            s = np.linalg.svd(arr[:, list(subset)], compute_uv=False)
            if s.size < size or s[size - 1] <= independence_tol:
                return size
    return ncols + 1

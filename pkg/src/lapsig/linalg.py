"""Dense symmetric eigendecomposition, Moore-Penrose pseudoinversion and
subspace comparison with explicit, scale-relative tolerances.

Conventions used throughout the package:
  * tolerances are relative to the data's magnitude with an absolute floor
    of 1e-12 (``ZERO_FLOOR``);
  * an eigenvalue or singular value counts as zero once it falls to or
    below ``size * machine_eps * largest``, the standard rank-revealing
    cutoff, so a connected-graph Laplacian always reports exactly one zero
    eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ZERO_FLOOR",
    "EigenDecomposition",
    "scaled_tol",
    "eig_symmetric",
    "pseudoinverse",
    "rank",
    "nullspace_oracle",
    "orthonormal_range",
    "column_space_equal",
    "mpp_axiom_residuals",
    "save_matrix_csv",
    "load_matrix_csv",
]

ZERO_FLOOR = 1e-12
_EPS = float(np.finfo(float).eps)


def scaled_tol(scale: float, rel: float = 1e-9) -> float:
    """Relative tolerance with the library-wide absolute floor."""
    return max(rel * abs(scale), ZERO_FLOOR)


def _require_finite(a, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def _zero_cutoff(dim: int, largest: float) -> float:
    return dim * _EPS * largest


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_symmetric(a, sym_rtol: float = 1e-12) -> EigenDecomposition:
    """Eigendecomposition of a symmetric matrix.

    Inputs whose asymmetry exceeds ``sym_rtol`` relative to the largest
    entry are rejected; the solve itself runs on the symmetrised matrix so
    tiny representational asymmetry cannot leak into the factors.
    """
    arr = _require_finite(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    gap = float(np.abs(arr - arr.T).max()) if arr.size else 0.0
    if gap > sym_rtol * max(float(np.abs(arr).max()), 1.0):
        raise ValueError(
            f"matrix is not symmetric: max |A - A^T| = {gap:.3e} exceeds the "
            f"{sym_rtol:.1e} relative tolerance"
        )
    w, u = np.linalg.eigh(0.5 * (arr + arr.T))
    return EigenDecomposition(w, u)


def pseudoinverse(a, zero_tol: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse of a symmetric matrix via eigendecomposition.

    Eigenvalues at or below the cutoff (``n * eps * |lambda|_max`` unless a
    ``zero_tol`` is supplied) are treated as exact zeros and excluded from
    inversion.  The result is symmetrised, so all four Penrose axioms hold
    to rounding accuracy.
    """
    dec = eig_symmetric(a)
    lam = dec.eigenvalues
    largest = float(np.abs(lam).max()) if lam.size else 0.0
    cut = _zero_cutoff(lam.size, largest) if zero_tol is None else zero_tol
    inv = np.zeros_like(lam)
    mask = np.abs(lam) > cut
    np.divide(1.0, lam, out=inv, where=mask)
    out = (dec.eigenvectors * inv) @ dec.eigenvectors.T
    return 0.5 * (out + out.T)


def rank(a, zero_tol: float | None = None) -> int:
    """Numerical rank: singular values above the rank-revealing cutoff."""
    arr = np.atleast_2d(_require_finite(a))
    if arr.size == 0:
        return 0
    s = np.linalg.svd(arr, compute_uv=False)
    cut = _zero_cutoff(max(arr.shape), float(s.max())) if zero_tol is None else zero_tol
    return int(np.count_nonzero(s > cut))


def nullspace_oracle(a, zero_tol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the nullspace, straight from the SVD.

    Deliberately independent of any closed-form nullspace construction so
    it can act as the ground truth those constructions are checked against.
    Returns a (cols x dim) matrix; the identity for a matrix with no rows.
    """
    arr = np.atleast_2d(_require_finite(a))
    rows, cols = arr.shape
    if rows == 0:
        return np.eye(cols)
    _, s, vt = np.linalg.svd(arr, full_matrices=True)
    cut = _zero_cutoff(max(rows, cols), float(s.max())) if zero_tol is None else zero_tol
    r = int(np.count_nonzero(s > cut))
    return vt[r:].T


def orthonormal_range(a, zero_tol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the column space."""
    arr = np.atleast_2d(_require_finite(a))
    if arr.shape[1] == 0:
        return np.zeros((arr.shape[0], 0))
    u, s, _ = np.linalg.svd(arr, full_matrices=False)
    if s.size == 0:
        return np.zeros((arr.shape[0], 0))
    cut = _zero_cutoff(max(arr.shape), float(s.max())) if zero_tol is None else zero_tol
    return u[:, s > cut]


def column_space_equal(a, b, tol: float = 1e-9) -> bool:
    """Whether two matrices span the same column space.

    True iff the numerical ranks agree and each orthonormal basis projects
    onto the other with entrywise residual at most ``tol`` (equivalently,
    all principal angles vanish at that resolution).
    """
    qa = orthonormal_range(a)
    qb = orthonormal_range(b)
    if qa.shape[0] != qb.shape[0]:
        raise ValueError("matrices must have the same number of rows")
    if qa.shape[1] != qb.shape[1]:
        return False
    if qa.shape[1] == 0:
        return True
    allow = max(tol, ZERO_FLOOR)
    res_a = float(np.abs(qa - qb @ (qb.T @ qa)).max())
    res_b = float(np.abs(qb - qa @ (qa.T @ qb)).max())
    return max(res_a, res_b) <= allow


def mpp_axiom_residuals(a, a_pinv) -> dict[str, float]:
    """Max-norm residuals of the four Penrose axioms for a candidate pseudoinverse."""
    arr = _require_finite(a)
    pinv = _require_finite(a_pinv, "pseudoinverse")
    prod_ap = arr @ pinv
    prod_pa = pinv @ arr
    return {
        "reconstruct": float(np.abs(prod_ap @ arr - arr).max()),
        "pinv_reconstruct": float(np.abs(prod_pa @ pinv - pinv).max()),
        "symmetry_ap": float(np.abs(prod_ap - prod_ap.T).max()),
        "symmetry_pa": float(np.abs(prod_pa - prod_pa.T).max()),
    }


def save_matrix_csv(path, a) -> None:
    """Write a dense matrix as CSV, one row per line, 17 significant digits."""
    arr = np.atleast_2d(_require_finite(a))
    np.savetxt(path, arr, fmt="%.16e", delimiter=",")


def load_matrix_csv(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)

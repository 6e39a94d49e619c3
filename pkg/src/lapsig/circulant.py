"""Exact machinery for symmetric circulant operators.

A banded symmetric circulant matrix is encoded by its representer
coefficients (l_0, ..., l_M): the first row reads
[l_0 l_1 ... l_M 0 ... 0 l_M ... l_1] and every later row is the previous
one shifted cyclically by one.  Evaluating the attached Laurent polynomial
l(z) = l_0 + sum_i l_i (z^i + z^-i) at the n-th roots of unity yields the
eigenvalues.  For even n a coefficient at hop n/2 lands on a single slot of
the row and is therefore counted once in the evaluation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .graphs import CirculantSpec, compile_circulant, laplacian
from .linalg import ZERO_FLOOR, pseudoinverse

__all__ = [
    "RepresenterPolynomial",
    "cycle_representer",
    "cycle_laplacian",
    "laplacian_representer",
    "poly_multiply_mod",
    "cycle_pinv_entry",
    "cycle_pinv",
    "perturbation_factor",
    "transform_inverse",
    "pinv_factorization",
    "DecayProfile",
    "decay_profile",
    "representer_to_json",
    "representer_from_json",
]


@dataclass(frozen=True)
class RepresenterPolynomial:
    """Symmetric Laurent-polynomial coefficients of a banded circulant."""

    n: int
    coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        if self.n < 1:
            raise ValueError("ambient size must be >= 1")
        co = tuple(float(c) for c in self.coeffs)
        if not co:
            raise ValueError("need at least the constant coefficient")
        if len(co) - 1 > self.n // 2:
            raise ValueError(f"bandwidth {len(co) - 1} exceeds n//2 = {self.n // 2}")
        if not all(np.isfinite(co)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", co)

    @property
    def bandwidth(self) -> int:
        return len(self.coeffs) - 1

    def first_row(self) -> np.ndarray:
        row = np.zeros(self.n)
        row[0] = self.coeffs[0]
        for i, c in enumerate(self.coeffs[1:], start=1):
            row[i] += c
            if self.n - i != i:
                row[self.n - i] += c
        return row

    def to_matrix(self) -> np.ndarray:
        row = self.first_row()
        return np.stack([np.roll(row, shift) for shift in range(self.n)])

    def eigenvalues(self) -> np.ndarray:
        """Values at the n-th roots of unity, ordered by frequency k = 0..n-1."""
        k = np.arange(self.n)
        lam = np.full(self.n, self.coeffs[0])
        for i, c in enumerate(self.coeffs[1:], start=1):
            mult = 1.0 if 2 * i == self.n else 2.0
            lam = lam + mult * c * np.cos(2.0 * np.pi * i * k / self.n)
        return lam

    @classmethod
    def from_first_row(cls, row, sym_rtol: float = 1e-10) -> "RepresenterPolynomial":
        """Fold a symmetric circulant first row back into coefficients."""
        arr = np.asarray(row, dtype=float)
        n = arr.size
        flipped = np.roll(arr[::-1], 1)  # flipped[i] == arr[(n - i) % n]
        if np.abs(arr - flipped).max() > sym_rtol * max(float(np.abs(arr).max()), 1.0):
            raise ValueError("first row is not symmetric")
        co = list(arr[: n // 2 + 1])
        while len(co) > 1 and co[-1] == 0.0:
            co.pop()
        return cls(n, tuple(co))


def representer_to_json(poly: RepresenterPolynomial) -> dict:
    return {"n": poly.n, "coeffs": list(poly.coeffs)}


def representer_from_json(obj) -> RepresenterPolynomial:
    """Build a RepresenterPolynomial from {"n": int, "coeffs": [...]}."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return RepresenterPolynomial(int(obj["n"]), tuple(obj["coeffs"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed representer JSON: {exc}") from exc


def cycle_representer(n: int) -> RepresenterPolynomial:
    """Representer of the simple-cycle Laplacian: 2 - z - z^{-1}."""
    if n < 3:
        raise ValueError("a simple cycle needs n >= 3")
    return RepresenterPolynomial(n, (2.0, -1.0))


def cycle_laplacian(n: int) -> np.ndarray:
    return cycle_representer(n).to_matrix()


def laplacian_representer(spec: CirculantSpec) -> RepresenterPolynomial:
    """Representer coefficients of a circulant-graph Laplacian.

    Constant term 2 * sum of weights (the common degree); hop s carries -d_s.
    Restricted to bandwidth M < n/2 so every hop contributes two symmetric
    band slots; specs touching the wrap hop n/2 are rejected.
    """
    if 2 * spec.bandwidth >= spec.n:
        raise ValueError(
            f"bandwidth {spec.bandwidth} must stay below n/2 for n={spec.n}"
        )
    co = np.zeros(spec.bandwidth + 1)
    co[0] = 2.0 * sum(d for _, d in spec.generators)
    for s, d in spec.generators:
        co[s] = -d
    return RepresenterPolynomial(spec.n, tuple(co))


def poly_multiply_mod(
    a: RepresenterPolynomial, b: RepresenterPolynomial
) -> RepresenterPolynomial:
    """Product of two representers modulo z^n = 1.

    Computed as an exact circular convolution of the first rows, so integer
    coefficients multiply without rounding and wrap-around (combined
    bandwidth at or beyond n/2) aliases exactly as the matrix product does.
    """
    if a.n != b.n:
        raise ValueError("operands must share the ambient size n")
    ra, rb = a.first_row(), b.first_row()
    out = np.zeros(a.n)
    for idx in np.flatnonzero(ra):
        out += ra[idx] * np.roll(rb, idx)
    return RepresenterPolynomial.from_first_row(out)


def cycle_pinv_entry(n: int, i: int, j: int) -> float:
    """Closed-form entry (i, j) of the simple-cycle Laplacian pseudoinverse."""
    if n < 3:
        raise ValueError("a simple cycle needs n >= 3")
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"indices ({i}, {j}) out of range for n={n}")
    shift = j - i
    return (n - 1) * (n + 1) / (12.0 * n) - abs(shift) / 2.0 + shift * shift / (2.0 * n)


def cycle_pinv(n: int) -> np.ndarray:
    """Simple-cycle Laplacian pseudoinverse from its closed form (no eigensolve)."""
    if n < 3:
        raise ValueError("a simple cycle needs n >= 3")
    idx = np.arange(n)
    shift = idx[None, :] - idx[:, None]
    return (
        (n - 1) * (n + 1) / (12.0 * n)
        - np.abs(shift) / 2.0
        + shift.astype(float) ** 2 / (2.0 * n)
    )


def perturbation_factor(spec: CirculantSpec) -> RepresenterPolynomial:
    """Banded positive-definite factor P with L = P @ L_cycle.

    Needs hop 1 in the generating set (which also forces connectivity) and
    bandwidth M < n/2.  Coefficients: constant term sum_i i*d_i, and band i
    carrying sum_{k>i} (k - i) d_k, where d_k = 0 for absent hops.
    """
    if 1 not in spec.hops:
        raise ValueError("cycle factorisation requires hop 1 in the generating set")
    if 2 * spec.bandwidth >= spec.n:
        raise ValueError(
            f"bandwidth {spec.bandwidth} must stay below n/2 for n={spec.n}"
        )
    m = spec.bandwidth
    d = [0.0] * (m + 1)
    for s, wt in spec.generators:
        d[s] = wt
    coeffs = [sum(i * d[i] for i in range(1, m + 1))]
    for i in range(1, m):
        coeffs.append(sum((k - i) * d[k] for k in range(i + 1, m + 1)))
    return RepresenterPolynomial(spec.n, tuple(coeffs))


def transform_inverse(poly: RepresenterPolynomial) -> np.ndarray:
    """Inverse of an invertible symmetric circulant via its spectrum.

    Cross-check path for the dense inverse: the first row is the inverse
    DFT of the reciprocal eigenvalues.
    """
    lam = poly.eigenvalues()
    if float(np.abs(lam).min()) <= ZERO_FLOOR:
        raise ValueError("representer has a (near-)zero eigenvalue; not invertible")
    row = np.real(np.fft.ifft(1.0 / lam))
    return np.stack([np.roll(row, shift) for shift in range(poly.n)])


def pinv_factorization(
    spec: CirculantSpec, l_pinv: np.ndarray | None = None
) -> tuple[np.ndarray, float]:
    """Split the Laplacian pseudoinverse as P^{-1} @ (cycle pseudoinverse).

    Returns the densely inverted factor P^{-1} together with the max-norm
    residual against the eigendecomposition pseudoinverse of the graph
    Laplacian (which the split must reproduce).
    """
    factor = perturbation_factor(spec)
    p_inv = np.linalg.inv(factor.to_matrix())
    if l_pinv is None:
        l_pinv = pseudoinverse(laplacian(compile_circulant(spec)))
    residual = float(np.abs(p_inv @ cycle_pinv(spec.n) - l_pinv).max())
    return p_inv, residual


@dataclass(frozen=True)
class DecayProfile:
    """Largest |entry| of a circulant matrix at each cyclic distance."""

    distances: tuple[int, ...]
    values: tuple[float, ...]
    strictly_decreasing: bool

    @property
    def pairs(self) -> tuple[tuple[int, float], ...]:
        return tuple(zip(self.distances, self.values))


def decay_profile(mat) -> DecayProfile:
    """Profile |entries| of a circulant matrix by cyclic distance from the diagonal."""
    arr = np.asarray(mat, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("expected a square matrix")
    n = arr.shape[0]
    idx = np.arange(n)
    gap = np.abs(idx[None, :] - idx[:, None])
    cyc = np.minimum(gap, n - gap)
    distances = tuple(range(n // 2 + 1))
    values = tuple(float(np.abs(arr[cyc == d]).max()) for d in distances)
    dec = all(later < prior for prior, later in zip(values, values[1:]))
    return DecayProfile(distances, values, dec)

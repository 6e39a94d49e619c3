"""Aggregated verification suites wiring the library's identities together.

Each suite exercises one family of claims end to end on randomized or
pinned instances and returns a SuiteResult carrying the measured residuals
next to the tolerance it enforced.  The CLI's verify command renders the
results as JSON and folds them into the exit status; the test suite reuses
them directly (including as negative-control targets).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import analysis, circulant, graphs, linalg, synthesis

__all__ = [
    "SuiteResult",
    "mpp_axiom_suite",
    "nullspace_vs_oracle_suite",
    "factorization_suite",
    "cycle_pinv_suite",
    "model_degree_suite",
    "closure_suite",
    "uniqueness_suite",
    "complete_graph_suite",
    "absorption_suite",
    "run_all",
]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details}


def _note_failure(details: dict, message: str) -> None:
    details.setdefault("first_failure", message)


def mpp_axiom_suite(seed: int = 42, graph_count: int = 50, max_n: int = 64) -> SuiteResult:
    """Penrose axioms plus the centring-projection identity on random graphs."""
    rng = np.random.default_rng(seed)
    details: dict = {"graphs": graph_count, "axiom_rtol": 1e-9, "projection_tol": 1e-9}
    passed = True
    worst_axiom = 0.0
    worst_proj = 0.0
    for _ in range(graph_count):
        n = int(rng.integers(3, max_n + 1))
        g = graphs.random_connected_graph(n, rng)
        lap = graphs.laplacian(g)
        l_pinv = linalg.pseudoinverse(lap)
        scale = max(1.0, float(np.abs(lap).max()))
        axioms = linalg.mpp_axiom_residuals(lap, l_pinv)
        rel = max(axioms.values()) / scale
        worst_axiom = max(worst_axiom, rel)
        proj = float(np.abs(lap @ l_pinv - (np.eye(n) - np.ones((n, n)) / n)).max())
        worst_proj = max(worst_proj, proj)
        if rel > 1e-9:
            passed = False
            _note_failure(details, f"penrose axiom residual {rel:.3e} on n={n}")
        if proj > 1e-9:
            passed = False
            _note_failure(details, f"projection residual {proj:.3e} on n={n}")
    details["max_axiom_residual_rel"] = worst_axiom
    details["max_projection_residual"] = worst_proj
    return SuiteResult("mpp_axioms", passed, details)


def nullspace_vs_oracle_suite(
    seed: int = 42, trials: int = 200, max_n: int = 24
) -> SuiteResult:
    """Closed-form sampled-Laplacian nullspace basis against the SVD oracle."""
    rng = np.random.default_rng(seed)
    details: dict = {"trials": trials, "subspace_tol": 1e-9}
    passed = True
    for _ in range(trials):
        n = int(rng.integers(3, max_n + 1))
        g = graphs.random_connected_graph(n, rng)
        size = int(rng.integers(0, n))  # |cosupport| < n
        members = tuple(sorted(int(i) for i in rng.choice(n, size=size, replace=False)))
        cos = graphs.Cosupport(n, members)
        basis = analysis.nullspace_basis(g, cos).matrix()
        sampled = analysis.sampling_matrix(cos.members, n) @ graphs.laplacian(g)
        m = len(cos.complement)
        if linalg.rank(basis) != m:
            passed = False
            _note_failure(details, f"basis rank != {m} on n={n}, |cosupport|={size}")
        if size and linalg.rank(sampled) != size:
            passed = False
            _note_failure(details, f"sampled rows not full rank on n={n}")
        if not linalg.column_space_equal(basis, linalg.nullspace_oracle(sampled)):
            passed = False
            _note_failure(details, f"basis span != oracle span on n={n}, |cosupport|={size}")
    return SuiteResult("nullspace_basis_vs_oracle", passed, details)


def factorization_suite(seed: int = 42, trials: int = 100) -> SuiteResult:
    """Cycle factorisation of circulant Laplacians and of their pseudoinverses."""
    rng = np.random.default_rng(seed)
    details: dict = {
        "trials": trials,
        "product_tol_float": 1e-12,
        "pinv_residual_rtol": 1e-8,
        "inverse_agreement_rtol": 1e-10,
    }
    passed = True
    worst_product = 0.0
    worst_pinv = 0.0
    worst_agreement = 0.0
    kinds = ("integer", "unit", "uniform")
    for t in range(trials):
        kind = kinds[t % len(kinds)]
        n = int(rng.integers(6, 64))
        spec = graphs.random_circulant_spec(n, rng, weights=kind)
        factor = circulant.perturbation_factor(spec)
        p_mat = factor.to_matrix()
        lap = graphs.laplacian(graphs.compile_circulant(spec))
        product_gap = float(np.abs(p_mat @ circulant.cycle_laplacian(n) - lap).max())
        worst_product = max(worst_product, product_gap)
        exact_ok = product_gap == 0.0 if kind in ("integer", "unit") else product_gap < 1e-12
        if not exact_ok:
            passed = False
            _note_failure(details, f"factor product gap {product_gap:.3e} (n={n}, {kind})")
        if float(factor.eigenvalues().min()) <= 0.0:
            passed = False
            _note_failure(details, f"factor not positive definite (n={n})")
        l_pinv = linalg.pseudoinverse(lap)
        p_inv, residual = circulant.pinv_factorization(spec, l_pinv=l_pinv)
        allow = 1e-8 * max(1.0, float(np.abs(l_pinv).max()))
        worst_pinv = max(worst_pinv, residual / max(allow, 1e-300))
        if residual > allow:
            passed = False
            _note_failure(details, f"pinv split residual {residual:.3e} (n={n})")
        via_transform = circulant.transform_inverse(factor)
        agree = float(np.abs(p_inv - via_transform).max())
        allow_inv = 1e-10 * max(1.0, float(np.abs(p_inv).max()))
        worst_agreement = max(worst_agreement, agree / allow_inv)
        if agree > allow_inv:
            passed = False
            _note_failure(details, f"dense vs transform inverse gap {agree:.3e} (n={n})")
    details["max_product_gap"] = worst_product
    details["max_pinv_residual_vs_allowance"] = worst_pinv
    details["max_inverse_gap_vs_allowance"] = worst_agreement
    return SuiteResult("cycle_factorization", passed, details)


def cycle_pinv_suite(n_min: int = 3, n_max: int = 128) -> SuiteResult:
    """Closed-form cycle pseudoinverse against the dense eigensolve."""
    details: dict = {"n_range": [n_min, n_max], "tol": 1e-9}
    passed = True
    worst = 0.0
    for n in range(n_min, n_max + 1):
        gap = float(
            np.abs(
                circulant.cycle_pinv(n)
                - linalg.pseudoinverse(circulant.cycle_laplacian(n))
            ).max()
        )
        worst = max(worst, gap)
        if gap > 1e-9:
            passed = False
            _note_failure(details, f"closed form off by {gap:.3e} at n={n}")
    details["max_gap"] = worst
    return SuiteResult("cycle_pinv_closed_form", passed, details)


def model_degree_suite() -> SuiteResult:
    """Piecewise-degree split between the models on pinned circulant cases."""
    cases = [
        (graphs.CirculantSpec(64, ((1, 1.0), (2, 1.0), (3, 1.0))), (21, 41)),
        (graphs.CirculantSpec(32, ((1, 1.0), (2, 1.0))), (4, 20)),
        (graphs.CirculantSpec(16, ((1, 1.0),)), (3, 11)),
    ]
    details: dict = {"cases": []}
    passed = True
    for spec, support in cases:
        cos = graphs.Cosupport.from_support(spec.n, support)
        report = synthesis.model_degree_report(spec, cos)
        details["cases"].append(
            {
                "n": spec.n,
                "hops": list(spec.hops),
                "analysis_max_degree": report.analysis_max_degree,
                "synthesis_max_degree": report.synthesis_max_degree,
                "factorization_residual": report.factorization_residual,
                "passed": report.passed,
            }
        )
        if not report.passed:
            passed = False
            _note_failure(details, f"degree report failed on n={spec.n}, hops={spec.hops}")
    return SuiteResult("model_degrees", passed, details)


def closure_suite(
    seed: int = 42, trials: int = 25, max_n: int = 20, inject_coeffs=None
) -> SuiteResult:
    """Analysis-to-synthesis loop closure.

    Signals built from a nullspace basis must be annihilated on their
    cosupport and their Laplacian image must pass the zero-sum structured
    sparsity test.  ``inject_coeffs`` lets tests feed extra coefficient
    vectors through the structured check (a failing vector must fail the
    suite, guarding against a vacuous test).
    """
    rng = np.random.default_rng(seed)
    details: dict = {"trials": trials}
    passed = True
    for _ in range(trials):
        n = int(rng.integers(4, max_n + 1))
        g = graphs.random_connected_graph(n, rng)
        size = int(rng.integers(1, n))
        members = tuple(sorted(int(i) for i in rng.choice(n, size=size, replace=False)))
        cos = graphs.Cosupport(n, members)
        basis = analysis.nullspace_basis(g, cos)
        x = basis.matrix() @ rng.standard_normal(basis.dim)
        count, recovered = analysis.cosparsity(g, x)
        if not set(members) <= set(recovered.members):
            passed = False
            _note_failure(details, f"cosupport not annihilated on n={n}")
        image = graphs.laplacian(g) @ x
        if count < n and not synthesis.structured_sparsity_check(image):
            passed = False
            _note_failure(details, f"Laplacian image failed the zero-sum test on n={n}")
    for vec in inject_coeffs or ():
        if not synthesis.structured_sparsity_check(vec):
            passed = False
            _note_failure(details, "injected coefficient vector is not zero-sum")
    return SuiteResult("analysis_synthesis_closure", passed, details)


def uniqueness_suite(seed: int = 42, trials: int = 100) -> SuiteResult:
    """Randomized at-most-one-solution probe at the measurement bound."""
    g = graphs.cycle_graph(6)
    level = 4
    m = analysis.uniqueness_bound(g.n, level)
    check = analysis.randomized_uniqueness_check(g, level, m, trials=trials, seed=seed)
    details = {
        "n": g.n,
        "cosparsity": level,
        "measurements": m,
        "trials": check.trials,
        "min_gap": check.min_gap,
        "gap_tol": check.gap_tol,
    }
    if not check.passed:
        _note_failure(details, f"measurement gap {check.min_gap:.3e} under {check.gap_tol:.0e}")
    return SuiteResult("uniqueness_randomized", check.passed, details)


def complete_graph_suite(n_max: int = 32) -> SuiteResult:
    """Closed-form pseudoinverse identities on complete graphs."""
    details: dict = {"n_range": [2, n_max], "tol": 1e-10}
    passed = True
    worst = 0.0
    for n in range(2, n_max + 1):
        res_s, res_l = synthesis.complete_graph_identities(n)
        worst = max(worst, res_s, res_l)
        if max(res_s, res_l) > 1e-10:
            passed = False
            _note_failure(details, f"complete-graph residual {max(res_s, res_l):.3e} at n={n}")
    details["max_residual"] = worst
    return SuiteResult("complete_graph_identities", passed, details)


def absorption_suite() -> SuiteResult:
    """Factor-absorbing coefficient constructions on pinned cases."""
    cases = [
        (graphs.CirculantSpec(12, ((1, 1.0),)), 3, 2, 7),
        (graphs.CirculantSpec(16, ((1, 1.0), (2, 1.0))), 0, 2, 9),
        (graphs.CirculantSpec(64, ((1, 1.0), (2, 1.0), (3, 1.0))), 0, 21, 41),
    ]
    details: dict = {"cases": []}
    passed = True
    for spec, j, k, l in cases:
        _, _, report = synthesis.absorb_discontinuity(spec, j, k, l)
        details["cases"].append(
            {
                "n": spec.n,
                "hops": list(spec.hops),
                "cycle_support": list(report.cycle_support),
                "laplacian_support": list(report.laplacian_support),
                "passed": report.passed,
            }
        )
        if not report.passed:
            passed = False
            _note_failure(details, f"absorption supports mismatch on n={spec.n}")
    return SuiteResult("discontinuity_absorption", passed, details)


def run_all(seed: int = 42, trials: int | None = None) -> list[SuiteResult]:
    """Run every suite; ``trials`` overrides each randomized suite's count."""
    return [
        mpp_axiom_suite(seed=seed, graph_count=trials or 50),
        nullspace_vs_oracle_suite(seed=seed, trials=trials or 200),
        factorization_suite(seed=seed, trials=trials or 100),
        cycle_pinv_suite(n_max=min(128, 3 + 5 * (trials or 100))),
        model_degree_suite(),
        closure_suite(seed=seed, trials=trials or 25),
        uniqueness_suite(seed=seed, trials=trials or 100),
        complete_graph_suite(),
        absorption_suite(),
    ]

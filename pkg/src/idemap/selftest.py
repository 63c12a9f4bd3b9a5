"""Built-in verification suites run by ``idemap selftest``.

Each suite exercises one headline property at a reduced, configurable
budget over dimensions 3..6 and both scalar fields.  ``tol_scale``
multiplies every pass threshold (1.0 reproduces the documented
tolerances); a budget of 0 makes every suite pass vacuously.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    AutomorphismTag,
    ScalarField,
    SemilinearOperator,
    up_to_scalar_distance,
)
from .errors import NotInduced
from .idempotents import decompose, default_relation_tol, majorant, relate
from .indefinite import (
    IndefiniteSpace,
    SymmetryKind,
    characterize,
    generate_eta_isometry,
    induced_ray_map,
    is_symmetry,
    recover_inducing_operator,
)
from .sampling import (
    random_idempotent,
    random_invertible,
    random_semilinear,
    remix_decomposition,
)
from .transform import (
    check_preservation,
    extend,
    induce,
    reconstruct,
    transpose_handle,
)

DIMS = (3, 4, 5, 6)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    cases: int
    detail: str


def _vacuous(name):
    return SuiteResult(name, True, 0, "vacuous pass (budget 0)")


def _tag_combos():
    combos = []
    for n in DIMS:
        combos.append((n, ScalarField.REAL, AutomorphismTag.IDENTITY))
        combos.append((n, ScalarField.COMPLEX, AutomorphismTag.IDENTITY))
        combos.append((n, ScalarField.COMPLEX, AutomorphismTag.CONJUGATION))
    return combos


def suite_roundtrip(rng, budget, tol_scale) -> SuiteResult:
    """Reconstruction inverts induction up to one scalar, with the right tag."""
    name = "roundtrip_reconstruction"
    if budget == 0:
        return _vacuous(name)
    combos = _tag_combos()
    cases = min(budget, 2 * len(combos))
    threshold = 1e-7 * tol_scale
    failures = 0
    worst = 0.0
    for i in range(cases):
        n, field, tag = combos[i % len(combos)]
        a = random_invertible(rng, n, field, max_cond=1e3)
        try:
            op = SemilinearOperator(a, tag)
            result = reconstruct(induce(op), validation_count=20,
                                 seed=int(rng.integers(2**32)))
            dist = up_to_scalar_distance(result.A.matrix, a / np.linalg.norm(a))
            worst = max(worst, dist)
            if dist > threshold or result.A.auto is not tag:
                failures += 1
        except Exception:
            failures += 1
    return SuiteResult(name, failures == 0, cases,
                       f"worst distance {worst:.2e} (threshold {threshold:.1e})")


def suite_preservation(rng, budget, tol_scale) -> SuiteResult:
    """Induced maps keep zero products; the transpose map must not."""
    name = "zero_product_preservation"
    if budget == 0:
        return _vacuous(name)
    tol = 1e-8 * tol_scale
    pairs = max(10, min(budget, 500))
    failures = 0
    instances = 0
    for n, field, tag in ((3, ScalarField.REAL, AutomorphismTag.IDENTITY),
                          (4, ScalarField.COMPLEX, AutomorphismTag.IDENTITY),
                          (5, ScalarField.COMPLEX, AutomorphismTag.CONJUGATION)):
        phi = induce(random_semilinear(rng, n, field, auto=tag))
        report = check_preservation(phi, sample_count=pairs,
                                    seed=int(rng.integers(2**32)), tol=tol)
        instances += 1
        if report.violations:
            failures += 1
    flipped = check_preservation(transpose_handle(3, ScalarField.COMPLEX),
                                 sample_count=pairs,
                                 seed=int(rng.integers(2**32)), tol=tol)
    instances += 1
    if not flipped.violations:
        failures += 1
    return SuiteResult(name, failures == 0, instances * pairs,
                       f"{instances} instances x {pairs} pairs")


def suite_trace_identity(rng, budget, tol_scale) -> SuiteResult:
    """``trace(ext(P) ext(Q)) = h(trace(P Q))`` for induced maps."""
    name = "trace_identity"
    if budget == 0:
        return _vacuous(name)
    threshold = 1e-8 * tol_scale
    cases = budget
    failures = 0
    worst = 0.0
    for i in range(cases):
        n = DIMS[i % len(DIMS)]
        field = ScalarField.COMPLEX if i % 3 else ScalarField.REAL
        op = random_semilinear(rng, n, field)
        phi = induce(op)
        p = random_idempotent(rng, n, int(rng.integers(1, n)), field)
        q = random_idempotent(rng, n, int(rng.integers(1, n)), field)
        lhs = np.trace(extend(phi, p).matrix @ extend(phi, q).matrix)
        rhs = op.auto.apply(np.trace(p.matrix @ q.matrix))
        err = abs(lhs - rhs)
        worst = max(worst, err)
        if err > threshold:
            failures += 1
    return SuiteResult(name, failures == 0, cases,
                       f"worst error {worst:.2e} (threshold {threshold:.1e})")


def suite_extension(rng, budget, tol_scale) -> SuiteResult:
    """Extension output does not depend on the chosen decomposition."""
    name = "extension_well_defined"
    if budget == 0:
        return _vacuous(name)
    threshold = 1e-8 * tol_scale
    cases = budget
    failures = 0
    worst = 0.0
    for i in range(cases):
        rank = 2 + (i % 2)
        n = DIMS[i % len(DIMS)]
        if n <= rank:
            n = rank + 1
        field = ScalarField.COMPLEX if i % 2 else ScalarField.REAL
        phi = induce(random_semilinear(rng, n, field))
        p = random_idempotent(rng, n, rank, field)
        first = extend(phi, p, decomposition=decompose(p))
        second = extend(phi, p, decomposition=remix_decomposition(rng, decompose(p)))
        err = float(np.linalg.norm(first.matrix - second.matrix))
        worst = max(worst, err)
        if err > threshold:
            failures += 1
    return SuiteResult(name, failures == 0, cases,
                       f"worst disagreement {worst:.2e}")


def suite_majorant(rng, budget, tol_scale) -> SuiteResult:
    """The common majorant dominates both inputs under ``relate``."""
    name = "majorant_order"
    if budget == 0:
        return _vacuous(name)
    cases = budget
    failures = 0
    for i in range(cases):
        n = DIMS[i % len(DIMS)]
        field = ScalarField.COMPLEX if i % 2 else ScalarField.REAL
        p1 = random_idempotent(rng, n, int(rng.integers(1, n)), field)
        p2 = random_idempotent(rng, n, int(rng.integers(1, n)), field)
        try:
            big = majorant(p1, p2)
        except Exception:
            failures += 1
            continue
        tol1 = default_relation_tol(p1.matrix, big.matrix) * tol_scale
        tol2 = default_relation_tol(p2.matrix, big.matrix) * tol_scale
        if not (relate(p1, big, tol=tol1).p_leq_q and relate(p2, big, tol=tol2).p_leq_q):
            failures += 1
    return SuiteResult(name, failures == 0, cases, f"{failures} failures")


def _eta_corpus(rng, n, field, index):
    """Cycle through structured metrics, non-self-adjoint ones included."""
    kind = index % 5
    dtype = field.dtype
    if kind == 0:
        return np.eye(n, dtype=dtype)
    if kind == 1:
        d = np.ones(n)
        d[-1] = -1.0
        return np.diag(d).astype(dtype)
    if kind == 2:  # non-self-adjoint: identity plus strict upper triangle
        upper = np.triu(random_invertible(rng, n, field, max_cond=1e3), 1)
        return np.eye(n, dtype=dtype) + 0.5 * upper
    if kind == 3 and field is ScalarField.COMPLEX:
        h = random_invertible(rng, n, field, max_cond=1e3)
        h = h + h.conj().T  # Hermitian, generically indefinite
        if np.linalg.cond(h) > 1e4:
            h = h + np.eye(n)
        return h
    return random_invertible(rng, n, field, max_cond=1e3)


CHAR_TOL_BASE = 1e-8


def induced_ray_map_scaled(v, c):
    return induced_ray_map(SemilinearOperator(c * v.matrix, v.auto))


def suite_sufficiency(rng, budget, tol_scale) -> SuiteResult:
    """Generated metric isometries are symmetries with the right constant."""
    name = "symmetry_sufficiency"
    if budget == 0:
        return _vacuous(name)
    count = max(4, min(50, budget // 4))
    pairs = max(10, min(budget, 300))
    failures = 0
    for i in range(count):
        n = DIMS[i % len(DIMS)]
        field = ScalarField.REAL if i % 4 == 3 else ScalarField.COMPLEX
        space = IndefiniteSpace(_eta_corpus(rng, n, field, i))
        scale = float(rng.uniform(0.5, 4.0))
        v = generate_eta_isometry(space, int(rng.integers(2**32)), scale=scale)
        ch = characterize(space, v, tol=CHAR_TOL_BASE * tol_scale)
        if ch.kind is not SymmetryKind.LINEAR or abs(ch.constant - scale) > \
                1e-8 * tol_scale * max(1.0, scale):
            failures += 1
            continue
        c = float(rng.uniform(0.5, 2.0))
        report = is_symmetry(space, induced_ray_map_scaled(v, c),
                             sample_count=pairs,
                             seed=int(rng.integers(2**32)),
                             tol=1e-8 * tol_scale)
        if report.violations:
            failures += 1
    return SuiteResult(name, failures == 0, count, f"{failures} failures")


def suite_necessity(rng, budget, tol_scale) -> SuiteResult:
    """Generic operators are flagged and their ray maps caught violating."""
    name = "symmetry_necessity"
    if budget == 0:
        return _vacuous(name)
    count = max(4, min(50, budget // 4))
    pairs = max(10, min(budget, 300))
    failures = 0
    for i in range(count):
        n = DIMS[i % len(DIMS)]
        field = ScalarField.COMPLEX if i % 2 else ScalarField.REAL
        space = IndefiniteSpace(_eta_corpus(rng, n, field, i))
        u = random_semilinear(rng, n, field, auto=AutomorphismTag.IDENTITY)
        ch = characterize(space, u, tol=CHAR_TOL_BASE * tol_scale)
        if ch.kind is not SymmetryKind.NONE:
            failures += 1
            continue
        report = is_symmetry(space, induced_ray_map(u), sample_count=pairs,
                             seed=int(rng.integers(2**32)), tol=1e-8 * tol_scale)
        if not report.violations:
            failures += 1
    return SuiteResult(name, failures == 0, count, f"{failures} failures")


def suite_recovery(rng, budget, tol_scale) -> SuiteResult:
    """The inducing operator of a symmetry is recovered up to a scalar."""
    name = "symmetry_recovery"
    if budget == 0:
        return _vacuous(name)
    count = max(4, min(50, budget // 4))
    threshold = 1e-6 * tol_scale
    failures = 0
    worst = 0.0
    for i in range(count):
        n = DIMS[i % len(DIMS)]
        conj_case = i % 3 == 2
        if conj_case:
            # real metric inside the complex space admits conjugate-linear
            # symmetries built from real isometries
            real_space = IndefiniteSpace(
                _eta_corpus(rng, n, ScalarField.REAL, i)
            )
            v = generate_eta_isometry(real_space, int(rng.integers(2**32)))
            c = complex(rng.standard_normal(), rng.standard_normal())
            u = SemilinearOperator(
                (c / abs(c)) * v.matrix.astype(np.complex128),
                AutomorphismTag.CONJUGATION,
            )
            space = IndefiniteSpace(real_space.eta.astype(np.complex128))
        else:
            field = ScalarField.REAL if i % 4 == 3 else ScalarField.COMPLEX
            space = IndefiniteSpace(_eta_corpus(rng, n, field, i))
            u = generate_eta_isometry(space, int(rng.integers(2**32)),
                                      scale=float(rng.uniform(0.5, 3.0)))
        try:
            result = recover_inducing_operator(space, induced_ray_map(u),
                                               validation_count=20,
                                               seed=int(rng.integers(2**32)))
        except NotInduced:
            failures += 1
            continue
        dist = up_to_scalar_distance(result.A.matrix,
                                     u.matrix / np.linalg.norm(u.matrix))
        worst = max(worst, dist)
        if dist > threshold or result.A.auto is not u.auto:
            failures += 1
    return SuiteResult(name, failures == 0, count,
                       f"worst distance {worst:.2e}")


SUITES = (
    suite_roundtrip,
    suite_preservation,
    suite_trace_identity,
    suite_extension,
    suite_majorant,
    suite_sufficiency,
    suite_necessity,
    suite_recovery,
)


def run_all(seed=42, budget=200, tol_scale=1.0) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    results = []
    for suite in SUITES:
        results.append(suite(rng, budget, tol_scale))
    return results

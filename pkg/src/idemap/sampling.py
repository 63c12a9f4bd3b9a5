"""Seeded random generators for test data at desk scale.

All functions take a ``numpy.random.Generator`` so streams stay
deterministic and independent per seed.
"""

from __future__ import annotations

import numpy as np

from .core import AutomorphismTag, ScalarField, SemilinearOperator
from .idempotents import FiniteRankIdempotent, RankOneIdempotent, rank_one_from_pair


def random_vector(rng, n, field: ScalarField):
    if field is ScalarField.COMPLEX:
        return rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return rng.standard_normal(n)


def random_matrix(rng, n, field: ScalarField):
    if field is ScalarField.COMPLEX:
        return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return rng.standard_normal((n, n))


def random_invertible(rng, n, field: ScalarField, max_cond=1e4, tries=100):
    """Gaussian matrix, resampled until its condition number is moderate."""
    for _ in range(tries):
        m = random_matrix(rng, n, field)
        if np.linalg.cond(m) <= max_cond:
            return m
    raise RuntimeError("could not draw a well-conditioned matrix")


def random_semilinear(rng, n, field: ScalarField, auto=None) -> SemilinearOperator:
    if auto is None:
        if field is ScalarField.COMPLEX and rng.integers(2):
            auto = AutomorphismTag.CONJUGATION
        else:
            auto = AutomorphismTag.IDENTITY
    return SemilinearOperator(random_invertible(rng, n, field), auto)


def random_rank_one(rng, n, field: ScalarField, min_cosine=0.05, tries=200) -> RankOneIdempotent:
    """Random normalized rank-one idempotent with a non-degenerate pairing."""
    for _ in range(tries):
        x = random_vector(rng, n, field)
        f = random_vector(rng, n, field)
        p = np.dot(x, f)
        if abs(p) >= min_cosine * np.linalg.norm(x) * np.linalg.norm(f):
            return rank_one_from_pair(x, f)
    raise RuntimeError("could not draw a non-degenerate rank-one pair")


def random_idempotent(rng, n, rank, field: ScalarField, max_cond=50) -> FiniteRankIdempotent:
    """Random idempotent ``S @ diag(1..1, 0..0) @ S^{-1}`` with mild cond(S)."""
    if not 0 <= rank <= n:
        raise ValueError(f"rank {rank} out of range for dimension {n}")
    s = random_invertible(rng, n, field, max_cond=max_cond)
    inv = np.linalg.inv(s)
    return FiniteRankIdempotent(s[:, :rank] @ inv[:rank, :])


def remix_decomposition(rng, pieces) -> list[RankOneIdempotent]:
    """Independent orthogonal rank-one decomposition of the same idempotent.

    Mixing the range basis by an invertible ``C`` (and the functionals by
    ``C^{-1}``) keeps the biorthogonality relations and the sum.
    """
    r = len(pieces)
    field = pieces[0].field
    u = np.column_stack([p.x for p in pieces])
    g = np.vstack([p.f for p in pieces])
    c = random_invertible(rng, r, field, max_cond=20) if r > 1 else np.eye(
        1, dtype=field.dtype
    ) * (1.0 + rng.uniform(0.5, 1.5))
    u2 = u @ c
    g2 = np.linalg.solve(c, g)
    return [RankOneIdempotent(u2[:, i], g2[i, :]) for i in range(r)]

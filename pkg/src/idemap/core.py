"""Dense real/complex linear-algebra substrate.

Vectors and functionals are plain 1-d numpy arrays.  The pairing
``pair(x, f)`` is bilinear (no conjugation appears); Hermitian geometry
lives only in :mod:`idemap.indefinite`.  A semilinear operator acts as
``x -> matrix @ h(x)`` where ``h`` is the identity or entrywise
conjugation, applied before the matrix.

Everything here is a pure function of its inputs, and all stored arrays
are frozen after construction, so unrestricted concurrent use is safe.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DimensionMismatch, SingularOperator

#: Relative singular-value floor below which a matrix counts as singular.
TOL_SINGULAR = 1e-10

#: Rank-threshold factor for kernel/range splits, relative to the largest
#: singular value of the input.
RANK_TOL = 1e-9


class ScalarField(enum.Enum):
    """Base field of a computation: real or complex coordinates."""

    REAL = "real"
    COMPLEX = "complex"

    @property
    def dtype(self):
        if self is ScalarField.COMPLEX:
            return np.complex128
        return np.float64


class AutomorphismTag(enum.Enum):
    """Involutive ring automorphism used entrywise: identity or conjugation.

    Conjugation is only meaningful over complex coordinates; the only
    continuous ring automorphisms implemented are these two.
    """

    IDENTITY = "id"
    CONJUGATION = "conj"

    def apply(self, values):
        """Apply the automorphism entrywise to a scalar or array."""
        if self is AutomorphismTag.CONJUGATION:
            return np.conjugate(values)
        return values

    def compose(self, other: "AutomorphismTag") -> "AutomorphismTag":
        if self is other:
            return AutomorphismTag.IDENTITY
        return AutomorphismTag.CONJUGATION


def field_of(a) -> ScalarField:
    """Infer the scalar field of an array-like from its dtype."""
    return ScalarField.COMPLEX if np.iscomplexobj(a) else ScalarField.REAL


def _as_vector(x, name="vector"):
    v = np.asarray(x)
    if v.dtype.kind not in "fc":
        v = v.astype(np.float64)
    if v.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-d, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    return v


def _as_matrix(a, name="matrix", square=True):
    m = np.asarray(a)
    if m.dtype.kind not in "fc":
        m = m.astype(np.float64)
    if m.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-d, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def _frozen(a, dtype=None):
    out = np.array(a, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def pair(x, f):
    """Bilinear pairing ``sum_j x_j f_j`` of a vector with a functional."""
    xv = _as_vector(x, "x")
    fv = _as_vector(f, "f")
    if xv.shape != fv.shape:
        raise DimensionMismatch(f"pair: shapes {xv.shape} vs {fv.shape}")
    return np.dot(xv, fv)


def tensor(x, f):
    """Rank-(<=1) operator ``z -> pair(z, f) * x`` as a dense matrix.

    Entry ``(j, k)`` is ``x[j] * f[k]``; the trace equals ``pair(x, f)``.
    """
    xv = _as_vector(x, "x")
    fv = _as_vector(f, "f")
    if xv.shape != fv.shape:
        raise DimensionMismatch(f"tensor: shapes {xv.shape} vs {fv.shape}")
    return np.outer(xv, fv)


def trace(a):
    """Trace of a square matrix; equals ``sum_i pair(x_i, f_i)`` for any
    decomposition of the matrix into a finite sum of ``tensor(x_i, f_i)``."""
    m = _as_matrix(a, "operator")
    return np.trace(m)


def kernel_and_range(a, tol=None):
    """Orthonormal bases of the kernel and the column space of ``a``.

    Rank is decided by a singular-value threshold.  ``tol`` defaults to
    ``RANK_TOL`` times the largest singular value.  Both bases are
    orthonormal in coordinates; for a square input the dimensions add up
    to ``n``.

    Returns
    -------
    (kernel, range_) : pair of ndarrays with shapes ``(m, m-r)``/``(n, r)``
        where ``a`` is ``n x m`` of numerical rank ``r``.
    """
    m = _as_matrix(a, "operator", square=False)
    u, s, vh = np.linalg.svd(m)
    if tol is None:
        smax = s[0] if s.size and s[0] > 0 else 1.0
        tol = RANK_TOL * smax
    rank = int(np.sum(s > tol))
    kernel = vh[rank:].conj().T
    range_ = u[:, :rank]
    return kernel, range_


def orthonormal_columns(a, tol=None):
    """Orthonormal basis of the column space of ``a`` (SVD based)."""
    m = _as_matrix(a, "matrix", square=False)
    if m.shape[1] == 0:
        return m.copy()
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if tol is None:
        smax = s[0] if s.size and s[0] > 0 else 1.0
        tol = RANK_TOL * smax
    rank = int(np.sum(s > tol))
    return u[:, :rank]


def subspace_sum(*bases):
    """Orthonormal basis of the sum of subspaces given by basis columns."""
    mats = [b for b in bases if b.shape[1] > 0]
    if not mats:
        n = bases[0].shape[0]
        return np.zeros((n, 0))
    return orthonormal_columns(np.hstack(mats), tol=1e-9)


def subspace_intersection(b1, b2):
    """Orthonormal basis of the intersection of two spanned subspaces.

    A vector lies in the intersection iff both orthogonal projectors fix
    it, so the intersection is the joint kernel of the two complements.
    """
    n = b1.shape[0]
    eye = np.eye(n, dtype=np.result_type(b1, b2, np.float64))
    c1 = eye - b1 @ b1.conj().T
    c2 = eye - b2 @ b2.conj().T
    kernel, _ = kernel_and_range(np.vstack([c1, c2]), tol=1e-9)
    return kernel


def complement_within(b_sub, b_whole):
    """Orthogonal complement of ``span(b_sub)`` inside ``span(b_whole)``."""
    if b_whole.shape[1] == 0:
        return b_whole.copy()
    proj_off = b_whole - b_sub @ (b_sub.conj().T @ b_whole)
    return orthonormal_columns(proj_off, tol=1e-9)


def orthogonal_complement(basis, n=None):
    """Orthonormal basis of the orthogonal complement in coordinates."""
    if n is None:
        n = basis.shape[0]
    if basis.shape[1] == 0:
        return np.eye(n, dtype=np.result_type(basis, np.float64))
    kernel, _ = kernel_and_range(basis.conj().T, tol=1e-9)
    return kernel


def subspace_contains(b_big, b_small, tol=1e-8):
    """True if every column of ``b_small`` lies in ``span(b_big)``."""
    if b_small.shape[1] == 0:
        return True
    resid = b_small - b_big @ (b_big.conj().T @ b_small)
    return bool(np.linalg.norm(resid, axis=0).max() <= tol)


def up_to_scalar_distance(b, a):
    """Frobenius distance ``min over scalars c of ||b - c*a||``."""
    am = np.asarray(a)
    bm = np.asarray(b)
    denom = np.vdot(am, am)
    if denom == 0:
        return float(np.linalg.norm(bm))
    c = np.vdot(am, bm) / denom
    return float(np.linalg.norm(bm - c * am))


class SemilinearOperator:
    """Invertible matrix together with an entrywise ring automorphism.

    The operator acts as ``x -> matrix @ h(x)`` and therefore satisfies
    ``A(c * x) = h(c) * A(x)``.  Composition follows the semilinear
    calculus: ``(M1, h1) o (M2, h2) = (M1 @ h1(M2), h1 o h2)``.

    Parameters
    ----------
    matrix : (n, n) array_like
        Invertible coordinate matrix.  Invertibility is enforced through
        the relative singular-value floor ``TOL_SINGULAR``.
    auto : AutomorphismTag
        Identity or conjugation; conjugation needs complex coordinates.
    """

    def __init__(self, matrix, auto: AutomorphismTag = AutomorphismTag.IDENTITY):
        m = _as_matrix(matrix, "operator")
        dtype = np.complex128 if np.iscomplexobj(m) else np.float64
        if auto is AutomorphismTag.CONJUGATION and dtype is np.float64:
            raise ValueError("conjugation tag requires complex coordinates")
        s = np.linalg.svd(m, compute_uv=False)
        if s[-1] <= TOL_SINGULAR * s[0]:
            raise SingularOperator(
                f"operator is numerically singular (smin/smax = {s[-1] / s[0]:.3e})"
            )
        self._matrix = _frozen(m, dtype=dtype)
        self._auto = auto
        self._inv = None

    @property
    def matrix(self):
        return self._matrix

    @property
    def auto(self) -> AutomorphismTag:
        return self._auto

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    @property
    def field(self) -> ScalarField:
        return field_of(self._matrix)

    @property
    def inverse_matrix(self):
        if self._inv is None:
            inv = np.linalg.inv(self._matrix)
            self._inv = _frozen(inv)
        return self._inv

    def __call__(self, x):
        xv = _as_vector(x, "x")
        if xv.shape[0] != self.n:
            raise DimensionMismatch(
                f"operator of dimension {self.n} applied to vector of "
                f"dimension {xv.shape[0]}"
            )
        return self._matrix @ self._auto.apply(xv)

    def apply(self, x):
        return self(x)

    def apply_functional(self, f):
        """Action of this operator on functional coordinates.

        Meaningful for operators produced by :meth:`adjoint`, which act on
        the dual side; the formula is the same ``f -> matrix @ h(f)``.
        """
        return self(f)

    def adjoint(self) -> "SemilinearOperator":
        """Dual-side operator ``A'`` with ``pair(A(x), f) = h(pair(x, A'(f)))``.

        For the identity tag this is the plain transpose; for conjugation
        it is the conjugated transpose carrying the conjugation tag.
        """
        return SemilinearOperator(self._auto.apply(self._matrix).T, self._auto)

    def inverse(self) -> "SemilinearOperator":
        return SemilinearOperator(self._auto.apply(self.inverse_matrix), self._auto)

    def compose(self, other: "SemilinearOperator") -> "SemilinearOperator":
        """Operator equal to ``x -> self(other(x))``."""
        if other.n != self.n:
            raise DimensionMismatch("composition of operators of different dimension")
        return SemilinearOperator(
            self._matrix @ self._auto.apply(other.matrix),
            self._auto.compose(other.auto),
        )

    def conjugate(self, operator_matrix):
        """Similarity action ``matrix @ h(P) @ matrix^{-1}`` on a matrix."""
        p = _as_matrix(operator_matrix, "operator")
        if p.shape[0] != self.n:
            raise DimensionMismatch("conjugation dimension mismatch")
        return self._matrix @ self._auto.apply(p) @ self.inverse_matrix

    def __repr__(self):
        return (
            f"SemilinearOperator(n={self.n}, field={self.field.value}, "
            f"auto={self._auto.value})"
        )


def identity_operator(n, field: ScalarField = ScalarField.COMPLEX) -> SemilinearOperator:
    return SemilinearOperator(np.eye(n, dtype=field.dtype))


def conjugation_operator(n) -> SemilinearOperator:
    """Entrywise conjugation as a semilinear operator on complex space."""
    return SemilinearOperator(np.eye(n, dtype=np.complex128), AutomorphismTag.CONJUGATION)

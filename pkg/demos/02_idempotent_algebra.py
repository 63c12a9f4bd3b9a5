"""The idempotent order and its constructions: product relations,
orthogonal rank-one decompositions (and their non-uniqueness), common
majorants, and how a map on rank-one idempotents extends to finite rank.
"""

import numpy as np

import idemap as im
from idemap.sampling import random_idempotent, remix_decomposition

rng = np.random.default_rng(7)

print("--- relations between idempotents ---")
e11 = np.diag([1.0, 0.0, 0.0])
e22 = np.diag([0.0, 1.0, 0.0])
plane = np.diag([1.0, 1.0, 0.0])
print("E11 vs E22:", im.relate(e11, e22))
print("E11 vs diag(1,1,0):", im.relate(e11, plane))

# one-sided zero products exist: P z = (z1 + z2) e1 against Q = E22
p = im.rank_one_from_pair([1.0, 0, 0], [1.0, 1.0, 0])
r = im.relate(p, e22)
print(f"oblique example: pq_zero={r.pq_zero}, qp_zero={r.qp_zero}")

print()
print("--- decomposition into orthogonal rank-one pieces ---")
q = random_idempotent(rng, 5, 3, im.ScalarField.COMPLEX)
pieces = im.decompose(q)
total = sum(piece.matrix for piece in pieces)
print(f"rank {q.rank} idempotent -> {len(pieces)} pieces, "
      f"sum residual {np.linalg.norm(total - q.matrix):.2e}")
cross = max(
    np.linalg.norm(a.matrix @ b.matrix)
    for i, a in enumerate(pieces) for j, b in enumerate(pieces) if i != j
)
print(f"worst cross product between pieces: {cross:.2e}")

other = remix_decomposition(rng, pieces)
print("a second, genuinely different decomposition sums to the same idempotent:",
      np.linalg.norm(sum(piece.matrix for piece in other) - q.matrix) < 1e-9)

print()
print("--- the extension of an induced map ignores that choice ---")
op = im.SemilinearOperator(
    rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)),
    im.AutomorphismTag.CONJUGATION,
)
phi = im.induce(op)
ext1 = im.extend(phi, q, decomposition=pieces)
ext2 = im.extend(phi, q, decomposition=other)
print(f"extension disagreement across decompositions: "
      f"{np.linalg.norm(ext1.matrix - ext2.matrix):.2e}")
print(f"rank preserved: {ext1.rank} == {q.rank}")

other_idem = np.diag([1.0 + 0j, 1.0, 0, 0, 0])
lhs = np.trace(ext1.matrix @ im.extend(phi, other_idem).matrix)
rhs = np.conj(np.trace(q.matrix @ other_idem))
print(f"trace pairing identity |lhs - h(rhs)| = {abs(lhs - rhs):.2e}")

print()
print("--- common majorants ---")
p1 = random_idempotent(rng, 4, 1, im.ScalarField.REAL)
p2 = random_idempotent(rng, 4, 2, im.ScalarField.REAL)
big = im.majorant(p1, p2)
print(f"majorant of ranks ({p1.rank}, {p2.rank}) has rank {big.rank}")
print("dominates both:",
      im.relate(p1, big).p_leq_q and im.relate(p2, big).p_leq_q)

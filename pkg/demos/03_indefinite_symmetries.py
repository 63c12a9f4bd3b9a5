"""Indefinite inner products and their symmetry transformations: the
metric product, null rays, checking a ray map for symmetry, generating
metric isometries (including for non-self-adjoint metrics), and
recovering the inducing operator from the ray map alone.
"""

import numpy as np

import idemap as im

print("--- a signature (2,1) metric and its null cone ---")
eta = np.diag([1.0, 1.0, -1.0])
space = im.IndefiniteSpace(eta)
x = np.array([1.0, 0.0, 1.0])
print(f"(x, x)_eta for x = {x}: {im.eta_product(space, x, x)}")
print("the ray of x is self-orthogonal:",
      im.ray_eta_orthogonal(space, im.Ray(x), im.Ray(x)))

print()
print("--- a hyperbolic rotation is a symmetry ---")
c, s = np.cosh(1.0), np.sinh(1.0)
u = im.SemilinearOperator(np.array([[1.0, 0, 0], [0, c, s], [0, s, c]]))
print("U^T eta U - eta:", np.linalg.norm(u.matrix.T @ eta @ u.matrix - eta))
report = im.is_symmetry(space, im.induced_ray_map(u), sample_count=1000, seed=0)
print(f"violations: {len(report.violations)} / {report.pairs_tested} pairs")
ch = im.characterize(space, u)
print(f"characterization: {ch.kind.value}, constant {ch.constant}")

print()
print("--- a generic operator is not ---")
rng = np.random.default_rng(5)
g = im.SemilinearOperator(rng.standard_normal((3, 3)))
print("characterize:", im.characterize(space, g).kind.value)
bad = im.is_symmetry(space, im.induced_ray_map(g), sample_count=1000, seed=1)
print(f"violations found: {len(bad.violations)}")

print()
print("--- isometries exist for non-self-adjoint metrics too ---")
eta2 = np.eye(4, dtype=complex) + 0.4j * np.triu(np.ones((4, 4)), 1)
space2 = im.IndefiniteSpace(eta2)
v = im.generate_eta_isometry(space2, seed=11, scale=2.0)
resid = np.linalg.norm(v.matrix.conj().T @ eta2 @ v.matrix - 2.0 * eta2)
print(f"V* eta V - 2 eta residual: {resid:.2e}")
print("characterize:", im.characterize(space2, v))

print()
print("--- conjugate-linear symmetries ---")
sp = im.IndefiniteSpace(np.eye(3, dtype=complex))
conj = im.conjugation_operator(3)
print("plain conjugation:", im.characterize(sp, conj))

print()
print("--- recover the operator from the ray map alone ---")
result = im.recover_inducing_operator(space, im.induced_ray_map(u),
                                      validation_count=25, seed=2)
dist = im.up_to_scalar_distance(result.A.matrix, u.matrix / np.linalg.norm(u.matrix))
print(f"recovered with tag {result.A.auto.value}, scalar-gauge distance {dist:.2e}, "
      f"residual {result.residual:.2e}")

result2 = im.recover_inducing_operator(sp, im.induced_ray_map(conj),
                                       validation_count=25, seed=3)
print(f"conjugation recovered with tag {result2.A.auto.value}")

try:
    im.recover_inducing_operator(space, im.induced_ray_map(g),
                                 validation_count=25, seed=4)
except im.NotInduced as exc:
    print(f"non-symmetry rejected as expected: {exc}")

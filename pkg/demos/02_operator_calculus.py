"""Operators as eigendata: domains, functional calculus, joint bases.

An operator here is a list of eigenpairs; its domain is the span of the
eigenvectors and everything else is undefined rather than zero.  All
calculus happens coordinate-wise on that basis.
"""

import numpy as np

from finobs import (
    OutsideDomain,
    apply,
    commeasurable,
    diagonalize,
    from_eigenpairs,
    functional_calculus,
    in_domain,
    joint_eigensystem,
    joint_generator,
    minimal_polynomial,
    orbit_span_dim,
    table_function,
)

print("== diagonalization ==")
m = np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]])
system = diagonalize(m)
print(f"eigenvalues: {system.values}")
print(f"reconstruction error: {np.max(np.abs(system.matrix() - m)):.2e}")

print()
print("== partial operators have genuine domains ==")
e = np.eye(3)
partial = from_eigenpairs([(1.0, e[0]), (4.0, e[1])], ambient_dim=3)
inside = (e[0] + e[1]) / np.sqrt(2.0)
print(f"in_domain(span vector): {in_domain(partial, inside)}")
print(f"apply on it: {np.round(apply(partial, inside).real, 6)}")
try:
    apply(partial, e[2])
except OutsideDomain as exc:
    print(f"apply(e2) rejected: {exc}")
print(f"orbit dimension from a generic start: {orbit_span_dim(m, np.array([1.0, 2.0, 3.0]), cap=10)}")
print(f"orbit dimension from an eigenvector:  {orbit_span_dim(m, e[2], cap=10)}")

print()
print("== functional calculus on commuting operators ==")
a = diagonalize(np.diag([1.0, 1.0, 2.0]))
b = diagonalize(np.diag([3.0, 4.0, 4.0]))
print(f"commeasurable: {commeasurable([a, b])}")
product = functional_calculus(lambda s, t: s * t, [a, b])
print(f"eigenvalues of a*b: {product.values}")
print(f"matches dense product: {np.allclose(product.matrix(), a.matrix() @ b.matrix())}")

flip = diagonalize(np.array([[0.0, 1.0], [1.0, 0.0]]))
updown = diagonalize(np.diag([1.0, -1.0]))
print(f"flip and updown commeasurable: {commeasurable([flip, updown])}")

print()
print("== one generator for the whole family ==")
joint = joint_eigensystem([a, b])
for vector, values in joint:
    print(f"  joint eigenvector {np.round(vector.real, 3)} -> values {values}")
generator, tables = joint_generator([a, b])
print(f"generator eigenvalues (basis positions): {generator.values}")
for i, table in enumerate(tables):
    rebuilt = functional_calculus(table_function(table), [generator])
    original = [a, b][i]
    print(f"  table {table} rebuilds operator {i}: "
          f"{np.allclose(rebuilt.matrix(), original.matrix())}")

print()
print("== minimal polynomial ==")
mp = minimal_polynomial(a)
print(f"coefficients (ascending): {np.round(mp.coeffs, 12)}")
annihilated = functional_calculus(mp, [a])
print(f"p(A) vanishes: {np.allclose(annihilated.matrix(), 0.0)}")

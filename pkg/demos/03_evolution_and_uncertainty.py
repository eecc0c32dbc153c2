"""Dynamics from eigendata: phases, concatenation, variance bounds.

Evolution multiplies each eigencomponent by a phase, so a state can be
propagated exactly as long as it lies in the operator domain.  Two
consecutive evolutions concatenate into a single generator with
eigenphases folded into [0, 2 pi).
"""

import numpy as np

from finobs import (
    complementarity_pair,
    compress_state,
    concatenate,
    evolve,
    expectation,
    oscillator_hamiltonian,
    propagator,
    diagonalize,
    subspace_intersection,
    variance,
)

print("== phase evolution ==")
h = np.array([[1.0, 0.5], [0.5, -1.0]])
system = diagonalize(h)
psi0 = np.array([1.0, 0.0], dtype=complex)
for t in (0.0, 0.5, 1.0, 2.0):
    psi = evolve(system, psi0, t)
    print(f"  t={t:3.1f}  |psi| = {np.linalg.norm(psi):.12f}  "
          f"P(up) = {abs(psi[0]) ** 2:.6f}")
u = propagator(system, 1.0)
print(f"propagator unitarity error: {np.max(np.abs(u.conj().T @ u - np.eye(2))):.2e}")

print()
print("== concatenating two evolutions ==")
rng = np.random.default_rng(11)
a = rng.standard_normal((3, 3))
a = a + a.T
b = rng.standard_normal((3, 3))
b = b + b.T
c = concatenate(a, b)
lhs = propagator(diagonalize(c), 1.0)
rhs = propagator(diagonalize(a), 1.0) @ propagator(diagonalize(b), 1.0)
print(f"exp(-iC) vs exp(-iA)exp(-iB): {np.max(np.abs(lhs - rhs)):.2e}")
print(f"eigenphases of C in [0, 2pi): {np.round(np.linalg.eigvalsh(c), 6)}")

print()
print("== expectations and state compression ==")
t_op = diagonalize(np.diag([1.0, 1.0, 3.0]))
psi = np.array([0.6, 0.48, 0.64])
rho = np.outer(psi, psi)
sigma = compress_state(t_op, rho)
for name, func in (("t", lambda x: x), ("t^2", lambda x: x * x)):
    before = expectation(func, t_op, rho)
    after = expectation(func, t_op, sigma)
    print(f"  <{name}>: original {before:.8f}  compressed {after:.8f}")
print("the compressed density forgets everything but the operator statistics:")
print(np.round(sigma.real, 4))

print()
print("== a pair of observables sharing a single domain ray ==")
gap = np.sqrt(2.0)
s_op, t2_op = complementarity_pair(dim=5, alphas=(0.0, gap))
shared = subspace_intersection(s_op.vectors, t2_op.vectors)
print(f"domain intersection dimension: {shared.shape[0]}")
e0 = np.zeros(5, dtype=complex)
e0[0] = 1.0
vs = variance(s_op, e0)
vt = variance(t2_op, e0)
print(f"variance of S at the shared ray: {vs:.12f}")
print(f"variance of T at the shared ray: {vt:.12f}")
print(f"uncertainty product: {vs * vt:.12f}  (>= 1/4)")

print()
print("== oscillator spectrum from a grid truncation ==")
grid = oscillator_hamiltonian(n=400, length=10.0)
levels = np.linalg.eigvalsh(grid)[:6]
print(f"lowest levels: {np.round(levels, 4)}")
print(f"gaps:          {np.round(np.diff(levels), 4)}")

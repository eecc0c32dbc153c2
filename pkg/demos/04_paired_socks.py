"""Indistinguishable pairs, alternating tensors, and the flip action.

Each pair contributes a one-dimensional space of sign-balanced vectors.
Products over one-sock-per-pair choices alternate under swaps, which
squeezes every pair count down to a single generator; operators built
on those generators interact with finite sock flips in a way that the
least-support computation makes visible.
"""

import numpy as np

from finobs import (
    ChoiceFunction,
    PairVector,
    TruncatedFockVector,
    apply_diagonal,
    flip,
    fock_basis_vector,
    generator_tensor,
    is_flip_invariant,
    least_support,
    pair_inner,
    pair_tensor,
    tensor_inner,
)

print("== one pair, one line ==")
x = PairVector(0, 0.75)
print(f"value at sock a: {x.a_value.real},  at sock b: {x.b_value.real}")
print(f"squared length (both socks count): {pair_inner(x, x).real}")

print()
print("== product tensors alternate under sock swaps ==")
vectors = [PairVector(0, 0.5), PairVector(1, -0.25), PairVector(2, 1.0)]
tensor = pair_tensor(vectors)
for index in (0, 1, 3, 7):
    choice = ChoiceFunction.from_index(3, index)
    print(f"  choice bits {choice.bits} -> value {tensor.value(choice).real:+.4f}")
print("swapping any single pair negates the value")

print()
print("== the inner product factorizes over pairs ==")
y_vectors = [PairVector(0, 0.25), PairVector(1, 1.0), PairVector(2, -0.5)]
other = pair_tensor(y_vectors)
full_sum = tensor_inner(tensor, other)
factored = np.prod([pair_inner(p, q) for p, q in zip(vectors, y_vectors)])
print(f"sum over all 8 choice functions: {full_sum.real:+.6f}")
print(f"product of pair inner products:  {factored.real:+.6f}")

norms = [tensor_inner(generator_tensor(n), generator_tensor(n)).real for n in range(6)]
print(f"generator norms for 0..5 pairs: {np.round(norms, 12)}")

print()
print("== truncated vectors and diagonal operators ==")
v = TruncatedFockVector([0.5, 0.0, 1.0, 0.25])
print(f"coefficients over u_0..u_3: {v.coeffs.real}")
scaled = apply_diagonal([1.0, 2.0, 3.0, 4.0], v)
print(f"after the diagonal [1, 2, 3, 4]: {scaled.coeffs.real}")

print()
print("== flips see exactly the least support ==")
print(f"least support of v: {sorted(least_support(v))}")
moved = flip({1}, v)
print(f"flip pair 1 (inside):  {moved.coeffs.real}")
unmoved = flip({7}, v)
print(f"flip pair 7 (outside): {unmoved.coeffs.real}")
u0 = fock_basis_vector(0, 3)
print(f"u_0 has empty support: {sorted(least_support(u0))} "
      f"-> any flip fixes it: {np.array_equal(flip({0, 1, 2}, u0).coeffs, u0.coeffs)}")

print()
print("== flip-invariant operators ==")
diag = np.diag([1.0, 2.0, 3.0, 4.0])
print(f"diagonal operator invariant under flipping pair 2: {is_flip_invariant(diag, {2})}")
hop = np.zeros((4, 4))
hop[0, 3] = hop[3, 0] = 1.0
print(f"hopping 0<->3 invariant under flipping pair 2: {is_flip_invariant(hop, {2})}")
print(f"hopping 0<->3 invariant under flipping pairs 0,1: {is_flip_invariant(hop, {0, 1})}")

"""Finite-block operators, probe recovery, and a two-valued state.

Operators here act as a finite matrix on a few named atoms and as one
scalar everywhere else.  The closed subspaces built from the same
finite-or-cofinite pattern form a modular lattice, and the dimension
state on it (0 for finite, 1 for cofinite) cannot come from any density
operator in the class: the refutation below exhibits the witness.
"""

import numpy as np

from finobs import (
    FHOperator,
    canonicalize,
    decompose_equivariant,
    fh_apply,
    fh_to_matrix,
    FiniteSupportVector,
    is_orthogonal,
    modularity_check,
    refute_density,
    represent_functional,
    subspace,
    subspace_equal,
    subspace_join,
    subspace_meet,
    two_valued_state,
    zero_sum_compatible,
)

print("== a block plus scalar operator ==")
op = FHOperator(
    support=("s0", "s1"),
    block=np.array([[2.0, 1.0], [1.0, 3.0]]),
    tail=4.0,
    symmetric=True,
)
probe = FiniteSupportVector({"s0": 1.0, "far_atom": 1.0})
print(f"image of e_s0 + e_far: {fh_apply(op, probe).as_dict()}")

window = ["s0", "s1", "w0", "w1", "w2"]
dense = fh_to_matrix(op, window)
print(f"dense truncation over {window}:")
print(np.round(dense.real, 1))
recovered = decompose_equivariant(dense, window)
print(f"recovered support {recovered.support}, tail {recovered.tail.real}, "
      f"block equal: {np.array_equal(recovered.block, op.block)}")

padded = FHOperator(("s0", "s1", "s2"), np.diag([2.0, 3.0, 4.0]), 4.0, symmetric=True)
print(f"canonicalize drops atoms that repeat the tail: "
      f"{canonicalize(padded).support}")

print()
print("== zero-sum compatibility ==")
balanced = FHOperator(("p", "q"), np.array([[1.0, 3.0], [4.0, 2.0]]), 5.0)
print(f"columns sum to the tail -> preserves zero sums: {zero_sum_compatible(balanced)}")
image = fh_apply(balanced, FiniteSupportVector({"p": 1.0, "z": -1.0}))
print(f"  image of e_p - e_z: {image.as_dict()}  (coordinate sum "
      f"{sum(image.as_dict().values()).real})")

print()
print("== recovering a functional from difference probes ==")
weights = {"n1": 2.0, "n3": -0.5}
atoms = ["n0", "n1", "n2", "n3", "n4"]
samples = {}
for i, a in enumerate(atoms):
    for b in atoms[i + 1:]:
        samples[(a, b)] = weights.get(a, 0.0) - weights.get(b, 0.0)
support, found = represent_functional(samples, atoms)
print(f"support: {support}")
print(f"weights: { {k: v.real for k, v in found.items()} }")

print()
print("== the subspace lattice and its dimension state ==")
line = subspace([{"p": 1.0}])
rest = subspace([], exclude=["p", "q"])
print(f"alpha(finite line) = {two_valued_state(line)}")
print(f"alpha(cofinite complement) = {two_valued_state(rest)}")
print(f"orthogonal: {is_orthogonal(line, rest)}")
joined = subspace_join(line, rest)
print(f"join excludes only q: {joined.exclude}  "
      f"alpha(join) = {two_valued_state(joined)}  (additive: 0 + 1 = 1)")

diag_line = subspace([{"p": 1 / np.sqrt(2), "q": 1 / np.sqrt(2)}])
met = subspace_meet(rest, diag_line)
print(f"meet of the complement with the diagonal line is zero: "
      f"{subspace_equal(met, subspace([]))}")
print(f"shearing identity on (line, rest, diagonal): "
      f"{modularity_check(line, rest, diag_line)}")

print()
print("== no density operator represents the dimension state ==")
candidate = FHOperator(("d0",), np.array([[0.5]]), 0.25, symmetric=True)
witness, verdict = refute_density(candidate)
print(f"witness projection: everything off atoms {witness.exclude}")
print(f"  symbolic trace of the candidate there: {verdict.trace}")
print(f"  dimension state value:                 {verdict.state_value}")
print(f"  candidate agrees with the state:       {verdict.agrees}")

"""Self-check suites behind the `verify` tool.

Every check recomputes a library claim with an independent method:
exhaustive enumeration for the finite combinatorics, dense linear
algebra oracles (scipy) for the operator calculus, closed forms where
one exists.  Reports carry counts and worst residuals only, never
timings, so a fixed seed yields byte-identical output.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np
import scipy.linalg

from . import dynamics, fhlogic, finitary, measurement, serial, socks
from .enumeration import all_functions, all_partial_functions, nondecreasing_functions, set_partitions


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _rng(seed, tag):
    return np.random.default_rng([int(seed), tag])


def _hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2.0


def _unit(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def _density(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


# ---------------------------------------------------------------------------
# measurement


def _check_partition_roundtrip(seed):
    del seed  # exhaustive
    total = 0
    failed = 0
    for nx in range(6):
        elements = tuple(f"x{i + 1}" for i in range(nx))
        objects = measurement.ObjectSet(elements, "a")
        labels = measurement.LabelSet(tuple(f"y{i + 1}" for i in range(max(nx, 1))))
        labelings = [
            measurement.PartialLabeling(objects, labels, entries)
            for entries in all_partial_functions(elements, labels.values)
        ]
        for blocks in set_partitions(objects.universe()):
            partition = measurement.PartitionPlus(
                objects, tuple(tuple(b) for b in blocks)
            )
            members = [
                f for f in labelings if measurement.ideal_contains(partition, f)
            ]
            back = measurement.partition_of_family(objects, labels, members)
            total += 1
            if back != partition:
                failed += 1
    detail = f"{total} partitions over bases of 0..5 objects, {failed} mismatched"
    return CheckResult("partition-ideal-roundtrip", failed == 0, detail)


def _le_oracle(f, g, relabelings):
    fd = f.as_dict()
    gd = g.as_dict()
    if any(x not in gd for x in fd):
        return False
    for h in relabelings:
        if all(h[gd[x]] == fd[x] for x in fd):
            return True
    return False


def _check_relabel_order(seed):
    del seed  # exhaustive
    pairs = 0
    failed = 0
    for nx, ny in product(range(4), range(4)):
        elements = tuple(f"x{i + 1}" for i in range(nx))
        objects = measurement.ObjectSet(elements, "a")
        values = tuple(range(ny))
        labels = measurement.LabelSet(values, ordered=True)
        labelings = [
            measurement.PartialLabeling(objects, labels, entries)
            for entries in all_partial_functions(elements, values)
        ]
        any_maps = list(all_functions(values, values))
        monotone_maps = list(nondecreasing_functions(values, values))
        for f in labelings:
            for g in labelings:
                pairs += 1
                if measurement.le(f, g) != _le_oracle(f, g, any_maps):
                    failed += 1
                if measurement.pref_le(f, g) != _le_oracle(f, g, monotone_maps):
                    failed += 1
    detail = f"{pairs} ordered pairs against relabeling enumeration, {failed} disagreements"
    return CheckResult("relabel-order-oracle", failed == 0, detail)


def _check_pushforward(seed):
    del seed  # exhaustive
    cases = 0
    failed = 0
    for nx in range(5):
        for ny in range(1, 4):
            elements = tuple(f"x{i + 1}" for i in range(nx))
            objects = measurement.ObjectSet(elements, "a")
            values = tuple(f"y{i + 1}" for i in range(ny))
            labels = measurement.LabelSet(values)
            relabelings = list(all_functions(values, values))
            for assignment in all_functions(elements, values):
                scale = measurement.Scale(objects, labels, assignment)
                for h in relabelings:
                    # members of the generated ideal only restrict or
                    # relabel these generators, so they separate nothing
                    # more and the coded partition is the same
                    generators = [
                        measurement.PartialLabeling(
                            objects,
                            labels,
                            {x: h[k[assignment[x]]] for x in elements},
                        )
                        for k in relabelings
                    ]
                    expected = measurement.partition_of_family(
                        objects, labels, generators
                    )
                    got = measurement.pushforward_partition(h, scale)
                    cases += 1
                    if got != expected:
                        failed += 1
    detail = f"{cases} (h, s) cases against the generated-family partition, {failed} mismatched"
    return CheckResult("scale-pushforward-oracle", failed == 0, detail)


# ---------------------------------------------------------------------------
# finitary


def _check_eigen_reconstruction(seed):
    rng = _rng(seed, 4)
    worst = 0.0
    for _ in range(100):
        d = int(rng.integers(2, 9))
        m = _hermitian(rng, d)
        system = finitary.diagonalize(m)
        rel = np.linalg.norm(system.matrix() - m) / np.linalg.norm(m)
        worst = max(worst, float(rel))
    detail = f"100 matrices of dimension 2..8, worst relative residual {worst:.3e}"
    return CheckResult("eigen-reconstruction", worst <= 1e-8, detail)


def _dense_apply(func, m):
    w, v = np.linalg.eigh(m)
    return (v * np.array([func(x) for x in w])) @ v.conj().T


def _check_functional_calculus(seed):
    rng = _rng(seed, 5)
    worst = 0.0
    for _ in range(50):
        d = int(rng.integers(2, 7))
        base = _hermitian(rng, d)
        base *= 1.0 / max(np.abs(np.linalg.eigvalsh(base)))
        p = finitary.Polynomial(tuple(rng.uniform(-1, 1, size=4)))
        q = finitary.Polynomial(tuple(rng.uniform(-1, 1, size=4)))
        am = _dense_apply(p, base)
        bm = _dense_apply(q, base)
        asys = finitary.diagonalize(am)
        bsys = finitary.diagonalize(bm)
        pair = [asys, bsys]
        checks = [
            (finitary.functional_calculus(lambda a, b: a + b, pair), am + bm),
            (finitary.functional_calculus(lambda a, b: a * b, pair), am @ bm),
            (finitary.functional_calculus(lambda a, b: a * a, pair), am @ am),
            (
                finitary.functional_calculus(lambda a, b: p(q(a)), pair),
                _dense_apply(lambda x: p(q(x)), am),
            ),
            (
                # product of functions maps to the product of operators
                finitary.functional_calculus(lambda a, b: p(a) * q(b), pair),
                _dense_apply(p, am) @ _dense_apply(q, bm),
            ),
        ]
        for got, want in checks:
            worst = max(worst, float(np.max(np.abs(got.matrix() - want))))
    detail = f"50 commuting pairs x 5 function forms, worst entry residual {worst:.3e}"
    return CheckResult("functional-calculus", worst <= 1e-8, detail)


# ---------------------------------------------------------------------------
# dynamics


def _check_evolution(seed):
    rng = _rng(seed, 6)
    worst_norm = 0.0
    worst_group = 0.0
    worst_oracle = 0.0
    for _ in range(50):
        d = int(rng.integers(2, 9))
        a = _hermitian(rng, d)
        a *= rng.uniform(0.5, 10.0) / np.linalg.norm(a, 2)
        system = finitary.diagonalize(a)
        psi = _unit(rng, d)
        t = float(rng.uniform(-10, 10))
        s = float(rng.uniform(-10, 10))
        out = dynamics.evolve(system, psi, t)
        worst_norm = max(worst_norm, abs(float(np.linalg.norm(out)) - 1.0))
        two_step = dynamics.evolve(system, dynamics.evolve(system, psi, s), t)
        one_step = dynamics.evolve(system, psi, s + t)
        worst_group = max(worst_group, float(np.linalg.norm(two_step - one_step)))
        oracle = scipy.linalg.expm(-1j * t * a) @ psi
        worst_oracle = max(worst_oracle, float(np.linalg.norm(out - oracle)))
    detail = (
        f"50 cases: norm drift {worst_norm:.3e}, group law {worst_group:.3e}, "
        f"exponential oracle {worst_oracle:.3e}"
    )
    passed = worst_norm <= 1e-10 and worst_group <= 1e-9 and worst_oracle <= 1e-8
    return CheckResult("unitary-evolution", passed, detail)


def _check_concatenation(seed):
    rng = _rng(seed, 7)
    worst_prod = 0.0
    worst_herm = 0.0
    spectrum_ok = True
    for _ in range(50):
        d = int(rng.integers(2, 7))
        a = _hermitian(rng, d)
        b = _hermitian(rng, d)
        a *= rng.uniform(0.5, 4.0) / np.linalg.norm(a, 2)
        b *= rng.uniform(0.5, 4.0) / np.linalg.norm(b, 2)
        c = dynamics.concatenate(a, b)
        target = scipy.linalg.expm(-1j * a) @ scipy.linalg.expm(-1j * b)
        worst_prod = max(
            worst_prod, float(np.linalg.norm(scipy.linalg.expm(-1j * c) - target))
        )
        worst_herm = max(worst_herm, float(np.max(np.abs(c - c.conj().T))))
        phases = np.linalg.eigvalsh(c)
        if phases.min() < -1e-10 or phases.max() >= 2.0 * np.pi:
            spectrum_ok = False
    worst_comm = 0.0
    for _ in range(50):
        d = int(rng.integers(2, 7))
        a = np.diag(rng.uniform(0.0, 3.0, size=d)).astype(complex)
        b = np.diag(rng.uniform(0.0, 3.0, size=d)).astype(complex)
        c = dynamics.concatenate(a, b)
        want = np.diag(np.mod(np.diag(a + b).real, 2.0 * np.pi)).astype(complex)
        worst_comm = max(worst_comm, float(np.max(np.abs(c - want))))
    detail = (
        f"50 pairs: product residual {worst_prod:.3e}, hermiticity {worst_herm:.3e}, "
        f"phases in [0, 2pi) {'yes' if spectrum_ok else 'NO'}; "
        f"50 commuting reductions, residual {worst_comm:.3e}"
    )
    passed = (
        worst_prod <= 1e-8
        and worst_herm <= 1e-10
        and spectrum_ok
        and worst_comm <= 1e-9
    )
    return CheckResult("concatenation", passed, detail)


def _check_compression(seed):
    rng = _rng(seed, 8)
    worst = 0.0
    for _ in range(20):
        d = int(rng.integers(3, 7))
        distinct = rng.uniform(-2, 2, size=int(rng.integers(2, d)))
        values = np.sort(distinct[rng.integers(0, len(distinct), size=d)])
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        basis, _ = np.linalg.qr(g)
        t = (basis * values) @ basis.conj().T
        system = finitary.diagonalize((t + t.conj().T) / 2.0)
        rho = _density(rng, d)
        compressed = dynamics.compress_state(system, rho)
        for _ in range(5):
            coeffs = rng.uniform(-1, 1, size=7)
            f = finitary.Polynomial(tuple(coeffs))
            before = dynamics.expectation(f, system, rho)
            after = dynamics.expectation(f, system, compressed)
            worst = max(worst, abs(before - after))
    detail = f"20 degenerate pairs x 5 polynomials of degree 6, worst drift {worst:.3e}"
    return CheckResult("state-compression", worst <= 1e-9, detail)


def _check_complementarity(seed):
    rng = _rng(seed, 9)
    gap = np.sqrt(2.0)
    s_sys, t_sys = dynamics.complementarity_pair(5, (gap, 0.0))
    e0 = np.zeros(5, dtype=complex)
    e0[0] = 1.0
    vs = dynamics.variance(s_sys, e0)
    vt = dynamics.variance(t_sys, e0)
    sw = finitary.apply(s_sys, e0)
    mean = np.vdot(e0, sw)
    oracle = float(np.linalg.norm(sw - mean * e0) ** 2)
    shared = dynamics.subspace_intersection(s_sys.vectors, t_sys.vectors)
    ray_ok = len(shared) == 1 and abs(abs(shared[0][0]) - 1.0) <= 1e-8
    residuals = [
        abs(vs - oracle),
        abs(vs - 0.5),
        abs(vt - vs),
        abs(vs * vt - 0.25),
    ]
    worst_extra = 0.0
    for _ in range(10):
        d = int(rng.integers(5, 10))
        a0, a1 = sorted(rng.uniform(-3, 3, size=2))
        if a1 - a0 < 1e-3:
            a1 = a0 + 1.0
        ss, tt = dynamics.complementarity_pair(d, (a0, a1))
        e = np.zeros(d, dtype=complex)
        e[0] = 1.0
        want = (a0 - a1) ** 2 / 4.0
        worst_extra = max(
            worst_extra,
            abs(dynamics.variance(ss, e) - want),
            abs(dynamics.variance(tt, e) - want),
        )
    worst = max(max(residuals), worst_extra)
    detail = (
        f"variance {vs:.3e} twice, product {vs * vt:.3e}, "
        f"{'one shared ray' if ray_ok else 'WRONG intersection'}, "
        f"10 seeded pairs residual {worst_extra:.3e}"
    )
    return CheckResult("variance-complementarity", worst <= 1e-12 and ray_ok, detail)


def _check_oscillator(seed):
    del seed  # fixed grid
    t = dynamics.oscillator_hamiltonian(400, 10.0)
    system = finitary.diagonalize(t)
    complete = finitary.is_complete(system)
    gaps = np.diff(system.values[:6])
    spread = float(gaps.max() / gaps.min() - 1.0)
    detail = (
        f"400-point grid: complete {'yes' if complete else 'NO'}, "
        f"first five gaps spread {spread:.3e}"
    )
    return CheckResult("oscillator-spectrum", complete and spread <= 0.01, detail)


# ---------------------------------------------------------------------------
# socks


def _dyadic(rng):
    return complex(int(rng.integers(-8, 9)), int(rng.integers(-8, 9))) / 4.0


def _choice_value(pair_vectors, index, length):
    out = 1.0 + 0.0j
    for n, p in enumerate(pair_vectors):
        bit = (index >> (length - 1 - n)) & 1
        out *= p.b_value if bit else p.a_value
    return out


def _check_tensor_inner(seed):
    rng = _rng(seed, 11)
    worst = 0.0
    for case in range(50):
        n = case % 7
        xs = [socks.PairVector(i, _dyadic(rng)) for i in range(n)]
        ys = [socks.PairVector(i, _dyadic(rng)) for i in range(n)]
        tx = socks.pair_tensor(xs)
        ty = socks.pair_tensor(ys)
        got = socks.tensor_inner(tx, ty)
        brute = sum(
            _choice_value(xs, i, n) * np.conj(_choice_value(ys, i, n))
            for i in range(1 << n)
        )
        closed = (2.0 ** n) * np.prod(
            [x.a_value * np.conj(y.a_value) for x, y in zip(xs, ys)]
        ) if n else 1.0 + 0.0j
        factored = np.prod(
            [socks.pair_inner(x, y) for x, y in zip(xs, ys)]
        ) if n else 1.0 + 0.0j
        for other in (brute, closed, factored):
            worst = max(worst, abs(got - other))
    unit_worst = 0.0
    for n in range(9):
        u = socks.generator_tensor(n)
        unit_worst = max(unit_worst, abs(socks.tensor_inner(u, u) - 1.0))
    detail = (
        f"50 tensor pairs with pair counts 0..6, identity residual {worst:.3e}; "
        f"unit generators 0..8, norm residual {unit_worst:.3e}"
    )
    return CheckResult("tensor-inner-identity", worst <= 1e-12 and unit_worst <= 1e-12, detail)


def _check_tensor_antisymmetry(seed):
    rng = _rng(seed, 12)
    cases = 0
    failed = 0
    for n in range(6):
        amplitude = complex(rng.standard_normal(), rng.standard_normal())
        tensors = [
            socks.generator_tensor(n),
            socks.SignedTensor(n, amplitude * (1.0 - 2.0 * socks._parities(1 << n))),
        ]
        for tensor in tensors:
            for i in range(1 << n):
                for j in range(1 << n):
                    swaps = bin(i ^ j).count("1")
                    lhs = tensor.value(socks.ChoiceFunction.from_index(n, i))
                    rhs = tensor.value(socks.ChoiceFunction.from_index(n, j))
                    cases += 1
                    if lhs != (-1.0) ** swaps * rhs:
                        failed += 1
    detail = f"{cases} choice-function pairs over 0..5 pair tensors, {failed} sign violations"
    return CheckResult("tensor-antisymmetry", failed == 0, detail)


def _check_flip_support(seed):
    rng = _rng(seed, 13)
    m = 6
    vectors = [
        socks.TruncatedFockVector(np.array(bits, dtype=complex))
        for bits in product((0, 1), repeat=m + 1)
    ]
    for _ in range(20):
        coeffs = rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1)
        vectors.append(socks.TruncatedFockVector(coeffs))
    cases = 0
    failed = 0
    for v in vectors:
        support = socks.least_support(v)
        for k in range(m + 2):
            flipped = socks.flip(socks.FlipAction(frozenset({k})), v)
            moved = not np.array_equal(flipped.coeffs, v.coeffs)
            cases += 1
            if moved != (k in support):
                failed += 1
    detail = (
        f"{len(vectors)} vectors x {m + 2} single flips, {failed} support mismatches"
    )
    return CheckResult("flip-support", failed == 0, detail)


# ---------------------------------------------------------------------------
# fhlogic


def _seeded_fh_operator(rng, symmetric):
    m = int(rng.integers(3, 13))
    atoms = [f"a{i:02d}" for i in range(m)]
    size = int(rng.integers(0, m - 1))
    chosen = sorted(rng.choice(m, size=size, replace=False))
    support = tuple(atoms[i] for i in chosen)
    g = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    if symmetric:
        block = (g + g.conj().T) / 2.0
        tail = complex(float(rng.uniform(-2, 2)))
    else:
        block = g
        if size:
            block[0, 0] += 0.7j
        tail = complex(float(rng.uniform(-2, 2)), 0.5)
    op = fhlogic.FHOperator(support, block, tail, symmetric)
    return fhlogic.canonicalize(op), atoms


def _check_fh_roundtrip(seed):
    rng = _rng(seed, 14)
    failed = 0
    for case in range(50):
        op, atoms = _seeded_fh_operator(rng, symmetric=case % 2 == 0)
        matrix = fhlogic.fh_to_matrix(op, atoms)
        back = fhlogic.decompose_equivariant(matrix, atoms)
        same = (
            back.support == op.support
            and np.array_equal(back.block, op.block)
            and back.tail == op.tail
            and back.symmetric == op.symmetric
        )
        if not same:
            failed += 1
    detail = f"50 operators over windows of 3..12 atoms, {failed} canonical-form mismatches"
    return CheckResult("fh-roundtrip", failed == 0, detail)


def _check_zero_sum(seed):
    rng = _rng(seed, 15)
    cases = 0
    failed = 0
    for case in range(50):
        size = int(rng.integers(2, 7))
        support = tuple(f"a{i:02d}" for i in range(size))
        block = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
        tail = complex(float(rng.uniform(-2, 2)), float(rng.uniform(-1, 1)))
        if case % 2 == 0:
            for j in range(size):
                block[size - 1, j] = tail - np.sum(block[: size - 1, j])
        else:
            block[0, int(rng.integers(0, size))] += float(rng.uniform(1e-4, 1.0))
        op = fhlogic.FHOperator(support, block, tail)
        window = list(support) + [f"z{i}" for i in range(3)]
        preserved = True
        for a in window:
            for b in window:
                if a == b:
                    continue
                image = fhlogic.fh_apply(
                    op, fhlogic.FiniteSupportVector({a: 1.0, b: -1.0})
                )
                total = sum(v for _, v in image.entries)
                scale = max(
                    1.0, abs(op.tail), float(np.max(np.abs(op.block), initial=0.0))
                )
                if abs(total) > 1e-9 * scale:
                    preserved = False
        cases += 1
        if preserved != fhlogic.zero_sum_compatible(op):
            failed += 1
    detail = f"{cases} operators, column-sum criterion vs exhaustive probes, {failed} disagreements"
    return CheckResult("zero-sum-criterion", failed == 0, detail)


def _check_functional_recovery(seed):
    rng = _rng(seed, 16)
    failed = 0
    worst = 0.0
    for _ in range(30):
        m = int(rng.integers(7, 11))
        window = [f"p{i:02d}" for i in range(m)]
        size = int(rng.integers(0, 4))
        chosen = sorted(rng.choice(m, size=size, replace=False))
        weights = {}
        for i in chosen:
            value = 0j
            while value == 0:
                value = _dyadic(rng)
            weights[window[i]] = value
        samples = {}
        for i in range(m):
            for j in range(i + 1, m):
                a, b = window[i], window[j]
                value = weights.get(a, 0j) - weights.get(b, 0j)
                if rng.random() < 0.5:
                    samples[(a, b)] = value
                else:
                    samples[(b, a)] = -value
        support, got = fhlogic.represent_functional(samples, window)
        if support != tuple(sorted(weights)):
            failed += 1
            continue
        for atom in support:
            worst = max(worst, abs(got[atom] - weights[atom]))
    detail = (
        f"30 probe tables over 7..10 atoms, {failed} support mismatches, "
        f"worst weight residual {worst:.3e}"
    )
    return CheckResult("functional-recovery", failed == 0 and worst <= 1e-9, detail)


def _random_subspace(rng, atoms):
    count = int(rng.integers(0, 4))
    vectors = []
    for _ in range(count):
        size = int(rng.integers(1, len(atoms) + 1))
        chosen = sorted(rng.choice(len(atoms), size=size, replace=False))
        entries = {
            atoms[i]: complex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
            for i in chosen
        }
        vectors.append(fhlogic.FiniteSupportVector(entries))
    if rng.random() < 0.4:
        return fhlogic.subspace(vectors, exclude=list(atoms))
    return fhlogic.subspace(vectors)


def _check_modular_law(seed):
    rng = _rng(seed, 17)
    atoms = [f"q{i}" for i in range(6)]
    failed = 0
    for _ in range(200):
        x = _random_subspace(rng, atoms)
        y = _random_subspace(rng, atoms)
        z = _random_subspace(rng, atoms)
        if not fhlogic.modularity_check(x, y, z):
            failed += 1
    detail = f"200 subspace triples over a 6-atom window, {failed} shearing failures"
    return CheckResult("modular-law", failed == 0, detail)


def _check_state_additivity(seed):
    rng = _rng(seed, 18)
    atoms = [f"q{i}" for i in range(6)]
    failed = 0
    families = 0
    for _ in range(60):
        k = int(rng.integers(1, 5))
        order = [atoms[i] for i in rng.permutation(6)]
        cuts = sorted(rng.choice(range(1, 6), size=k - 1, replace=False)) if k > 1 else []
        bounds = [0] + list(cuts) + [6]
        groups = [order[bounds[i] : bounds[i + 1]] for i in range(k)]
        cof_index = int(rng.integers(0, k)) if rng.random() < 0.5 else -1
        members = []
        for gi, group in enumerate(groups):
            count = int(rng.integers(0, len(group) + 1))
            vectors = []
            for _ in range(count):
                entries = {
                    a: complex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
                    for a in group
                }
                vectors.append(fhlogic.FiniteSupportVector(entries))
            if gi == cof_index:
                members.append(fhlogic.subspace(vectors, exclude=atoms))
            else:
                members.append(fhlogic.subspace(vectors))
        families += 1
        ok = all(
            fhlogic.is_orthogonal(members[i], members[j])
            for i in range(len(members))
            for j in range(i + 1, len(members))
        )
        joined = members[0]
        for member in members[1:]:
            joined = fhlogic.subspace_join(joined, member)
        total = sum(fhlogic.two_valued_state(m) for m in members)
        if not ok or fhlogic.two_valued_state(joined) != total:
            failed += 1
    cof_pairs_ok = True
    for _ in range(10):
        c1 = fhlogic.subspace([], exclude=[atoms[i] for i in rng.choice(6, size=2, replace=False)])
        c2 = fhlogic.subspace([], exclude=[atoms[i] for i in rng.choice(6, size=2, replace=False)])
        if fhlogic.is_orthogonal(c1, c2):
            cof_pairs_ok = False
    detail = (
        f"{families} orthogonal families of up to 4 members, {failed} additivity failures; "
        f"cofinite pairs never orthogonal {'yes' if cof_pairs_ok else 'NO'}"
    )
    return CheckResult("dimension-state-additivity", failed == 0 and cof_pairs_ok, detail)


def _check_density_refutation(seed):
    rng = _rng(seed, 19)
    failed = 0
    for case in range(20):
        m = 8
        atoms = [f"r{i:02d}" for i in range(m)]
        size = int(rng.integers(0, 5))
        chosen = sorted(rng.choice(m, size=size, replace=False))
        support = tuple(atoms[i] for i in chosen)
        g = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
        block = (g + g.conj().T) / 2.0
        tail = 0.0 if case % 2 == 0 else float(rng.uniform(0.1, 1.0))
        density = fhlogic.canonicalize(
            fhlogic.FHOperator(support, block, tail, symmetric=True)
        )
        witness, verdict = fhlogic.refute_density(density)
        ok = (
            witness.exclude == density.support
            and fhlogic.two_valued_state(witness) == 1
            and verdict.state_value == 1
            and verdict.agrees is False
            and verdict.trace.infinite == (density.tail != 0)
        )
        if not verdict.trace.infinite and verdict.trace.value != 0.0:
            ok = False
        if verdict.trace.infinite and str(verdict.trace) != "INFINITE":
            ok = False
        if not ok:
            failed += 1
    detail = f"20 density candidates, {failed} invalid witnesses or verdicts"
    return CheckResult("density-refutation", failed == 0, detail)


# ---------------------------------------------------------------------------
# serialization


def _seeded_values(seed):
    rng = _rng(seed, 20)
    operator = _hermitian(rng, 4)
    full = finitary.diagonalize(_hermitian(rng, 5))
    partial = finitary.EigenSystem(5, full.values[:3], full.vectors[:3])
    elements = ("x1", "x2", "x3", "x4")
    objects = measurement.ObjectSet(elements, "a")
    partition = measurement.PartitionPlus(
        objects, (("x1", "x3"), ("x2",), ("a", "x4"))
    )
    fock = socks.TruncatedFockVector(
        rng.standard_normal(7) + 1j * rng.standard_normal(7)
    )
    tensor = socks.pair_tensor([socks.PairVector(i, _dyadic(rng)) for i in range(3)])
    symmetric_op, _ = _seeded_fh_operator(rng, symmetric=True)
    plain_op, _ = _seeded_fh_operator(rng, symmetric=False)
    window = [f"q{i}" for i in range(5)]
    finite_space = _random_subspace(rng, window)
    cofinite_space = fhlogic.subspace(
        [fhlogic.FiniteSupportVector({"q0": 1.0, "q1": 2.0})], exclude=window
    )
    return [
        ("operator", operator),
        ("eigensystem", full),
        ("eigensystem", partial),
        ("state", _unit(rng, 4)),
        ("density", _density(rng, 3)),
        ("partition", partition),
        ("fockvector", fock),
        ("tensor", tensor),
        ("flips", frozenset({0, 2, 5})),
        ("fhoperator", symmetric_op),
        ("fhoperator", plain_op),
        ("subspace", finite_space),
        ("subspace", cofinite_space),
    ]


def _check_persistence(seed):
    cases = 0
    failed = 0
    for kind, value in _seeded_values(seed):
        text = serial.dumps_value(kind, value)
        back = serial.loads_value(kind, text)
        again = serial.dumps_value(kind, back)
        cases += 1
        if text != again:
            failed += 1
    detail = f"{cases} values across every kind, {failed} round trips changed bytes"
    return CheckResult("persistence-roundtrip", failed == 0, detail)


# ---------------------------------------------------------------------------
# harness

SUITES = {
    "measurement": (
        _check_partition_roundtrip,
        _check_relabel_order,
        _check_pushforward,
    ),
    "finitary": (
        _check_eigen_reconstruction,
        _check_functional_calculus,
    ),
    "dynamics": (
        _check_evolution,
        _check_concatenation,
        _check_compression,
        _check_complementarity,
        _check_oscillator,
    ),
    "socks": (
        _check_tensor_inner,
        _check_tensor_antisymmetry,
        _check_flip_support,
    ),
    "fhlogic": (
        _check_fh_roundtrip,
        _check_zero_sum,
        _check_functional_recovery,
        _check_modular_law,
        _check_state_additivity,
        _check_density_refutation,
    ),
    "serialization": (
        _check_persistence,
    ),
}

SUITE_ORDER = ("measurement", "finitary", "dynamics", "socks", "fhlogic", "serialization")


def run_suite(name, seed):
    """Run one named suite (or 'all') and return the CheckResults."""
    if name == "all":
        checks = [fn for suite in SUITE_ORDER for fn in SUITES[suite]]
    elif name in SUITES:
        checks = list(SUITES[name])
    else:
        from .errors import ValidationError

        raise ValidationError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_ORDER)} or all"
        )
    results = []
    for fn in checks:
        label = fn.__name__.removeprefix("_check_").replace("_", "-")
        try:
            results.append(fn(seed))
        except Exception as exc:  # a crash is a failed check, not a crash of the tool
            results.append(
                CheckResult(label, False, f"raised {type(exc).__name__}: {exc}")
            )
    return results


def render_report(results, name, seed):
    lines = [f"verify suite={name} seed={seed}"]
    for r in results:
        lines.append(f"{'ok' if r.passed else 'FAIL':<4} {r.name}: {r.detail}")
    good = sum(1 for r in results if r.passed)
    lines.append(f"{good} passed, {len(results) - good} failed")
    return "\n".join(lines) + "\n"

"""Finite-block operators over a countable atom set, and their logic.

An operator here acts as a finite matrix on finitely many named atoms
and as one scalar on every other atom.  The closed subspaces compatible
with that symmetry are spans of finitely many finite-support vectors,
optionally together with the full space over a cofinite set of atoms.
The lattice of such subspaces is modular but not distributive, and it
carries a two-valued dimension state that no density operator of the
class can reproduce.
"""

from dataclasses import dataclass

import numpy as np

from .errors import Inconsistent, NotEquivariant, ValidationError

TOL_SYM = 1e-9
TOL_SPAN = 1e-9
TOL_EQ = 1e-8


@dataclass(frozen=True)
class FiniteSupportVector:
    """Vector with finitely many nonzero coordinates, keyed by atom id."""

    entries: tuple

    def __post_init__(self):
        raw = self.entries.items() if isinstance(self.entries, dict) else self.entries
        cleaned = {}
        for atom, value in raw:
            if not isinstance(atom, str):
                raise ValidationError("atom ids must be strings")
            value = complex(value)
            if atom in cleaned:
                raise ValidationError(f"atom {atom!r} listed twice")
            if value != 0:
                cleaned[atom] = value
        object.__setattr__(
            self, "entries", tuple((a, cleaned[a]) for a in sorted(cleaned))
        )

    def as_dict(self):
        return dict(self.entries)

    def support(self):
        return tuple(a for a, _ in self.entries)

    def norm(self):
        return float(np.sqrt(sum(abs(v) ** 2 for _, v in self.entries)))

    def inner(self, other):
        mine = self.as_dict()
        return sum(v * np.conj(mine.get(a, 0.0)) for a, v in other.entries)


@dataclass(eq=False)
class FHOperator:
    """Finite matrix on the atoms in `support`, scalar `tail` elsewhere."""

    support: tuple
    block: np.ndarray
    tail: complex
    symmetric: bool = False

    def __post_init__(self):
        support = tuple(self.support)
        if sorted(support) != list(support) or len(set(support)) != len(support):
            raise ValidationError("support must be sorted distinct atom ids")
        block = np.asarray(self.block, dtype=complex)
        if len(support) == 0 and block.size == 0:
            block = block.reshape(0, 0)
        if block.shape != (len(support), len(support)):
            raise ValidationError(
                f"block shape {block.shape} does not match support size {len(support)}"
            )
        tail = complex(self.tail)
        if self.symmetric:
            if np.max(np.abs(block - block.conj().T), initial=0.0) > TOL_SYM:
                raise ValidationError("symmetric-flagged block is not Hermitian")
            if abs(tail.imag) > 1e-12 * (1.0 + abs(tail)):
                raise ValidationError("symmetric-flagged tail must be real")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "block", block)
        object.__setattr__(self, "tail", tail)


def fh_apply(op, v):
    """Apply the operator: block action on e, tail scalar off e."""
    index = {a: i for i, a in enumerate(op.support)}
    inside = np.zeros(len(op.support), dtype=complex)
    out = {}
    for atom, value in v.entries:
        if atom in index:
            inside[index[atom]] = value
        else:
            out[atom] = op.tail * value
    if len(op.support):
        image = op.block @ inside
        for i, atom in enumerate(op.support):
            out[atom] = image[i]
    return FiniteSupportVector(out)


def _removable(block, tail, i, tol):
    row_ok = all(abs(block[i, j]) <= tol for j in range(block.shape[0]) if j != i)
    col_ok = all(abs(block[j, i]) <= tol for j in range(block.shape[0]) if j != i)
    return row_ok and col_ok and abs(block[i, i] - tail) <= tol


def canonicalize(op, tol=0.0):
    """Drop every support atom whose row and column just repeat the tail."""
    keep = [
        i
        for i in range(len(op.support))
        if not _removable(op.block, op.tail, i, tol)
    ]
    support = tuple(op.support[i] for i in keep)
    block = op.block[np.ix_(keep, keep)]
    return FHOperator(support, block, op.tail, op.symmetric)


def zero_sum_compatible(op, tol=1e-12):
    """Does the operator preserve vanishing coordinate sums?

    Holds exactly when every column of the block sums to the tail
    scalar; probing with two-atom differences across the support
    boundary recovers the same criterion.
    """
    if len(op.support) == 0:
        return True
    sums = np.sum(op.block, axis=0)
    scale = max(1.0, abs(op.tail), float(np.max(np.abs(op.block), initial=0.0)))
    return bool(np.max(np.abs(sums - op.tail)) <= tol * scale)


def fh_to_matrix(op, atoms):
    """Dense truncation over `atoms`, which must cover the support."""
    atoms = list(atoms)
    if len(set(atoms)) != len(atoms):
        raise ValidationError("atom window has repeats")
    index = {a: i for i, a in enumerate(atoms)}
    missing = [a for a in op.support if a not in index]
    if missing:
        raise ValidationError(f"window is missing support atoms {missing}")
    out = np.zeros((len(atoms), len(atoms)), dtype=complex)
    for a in atoms:
        if a not in op.support:
            out[index[a], index[a]] = op.tail
    for i, a in enumerate(op.support):
        for j, b in enumerate(op.support):
            out[index[a], index[b]] = op.block[i, j]
    return out


def decompose_equivariant(matrix, atoms, tol=1e-10):
    """Recover finite-block form from a concrete truncation.

    Finds the smallest support such that the matrix commutes with every
    transposition of two atoms outside it and acts as one scalar off the
    block.  The candidate is found by scanning for scalar-patterned
    atoms and confirmed by explicit re-verification.
    """
    atoms = list(atoms)
    matrix = np.asarray(matrix, dtype=complex)
    m = len(atoms)
    if m < 3:
        raise ValidationError("need at least three atoms to detect a tail")
    if matrix.shape != (m, m):
        raise ValidationError(f"matrix shape {matrix.shape} does not match {m} atoms")
    if len(set(atoms)) != m:
        raise ValidationError("atom window has repeats")

    off = np.abs(matrix - np.diag(np.diag(matrix)))
    isolated = [
        i for i in range(m) if max(np.max(off[i, :]), np.max(off[:, i])) <= tol
    ]
    if len(isolated) < 2:
        raise NotEquivariant("no scalar tail pattern of size two or more")

    # cluster the isolated diagonal values, largest cluster wins
    diag = np.real_if_close(np.diag(matrix))
    ordered = sorted(isolated, key=lambda i: (diag[i].real, diag[i].imag, i))
    clusters = []
    for i in ordered:
        if clusters and abs(np.diag(matrix)[i] - np.diag(matrix)[clusters[-1][-1]]) <= tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    outside = max(clusters, key=len)
    if len(outside) < 2:
        raise NotEquivariant("no scalar tail pattern of size two or more")
    outside = sorted(outside)
    tail = complex(matrix[outside[0], outside[0]])
    keep = [i for i in range(m) if i not in set(outside)]

    # re-verify: transpositions outside the block leave the matrix fixed
    for u in outside:
        for v in outside:
            if u >= v:
                continue
            perm = list(range(m))
            perm[u], perm[v] = perm[v], perm[u]
            swapped = matrix[np.ix_(perm, perm)]
            if np.max(np.abs(swapped - matrix)) > tol:
                raise NotEquivariant(
                    f"transposition of atoms {atoms[u]!r}, {atoms[v]!r} moves the matrix"
                )
    # re-verify: off-block structure is exactly the scalar tail
    for u in outside:
        if abs(matrix[u, u] - tail) > tol:
            raise NotEquivariant(f"atom {atoms[u]!r} breaks the scalar tail")
        for j in range(m):
            if j != u and (abs(matrix[u, j]) > tol or abs(matrix[j, u]) > tol):
                raise NotEquivariant(
                    f"atom {atoms[u]!r} couples to {atoms[j]!r} beyond tolerance"
                )

    support_atoms = [atoms[i] for i in keep]
    order = np.argsort(support_atoms)
    support = tuple(support_atoms[i] for i in order)
    rows = [keep[i] for i in order]
    block = matrix[np.ix_(rows, rows)]
    symmetric = bool(
        np.max(np.abs(matrix - matrix.conj().T), initial=0.0) <= TOL_SYM
    )
    return canonicalize(FHOperator(support, block, tail, symmetric), tol=tol)


def represent_functional(samples, window, tol=1e-9):
    """Recover (support, weights) of a zero-sum functional from probes.

    `samples` maps ordered atom pairs (a, b) to the functional applied
    to the difference vector e_a - e_b; at least one orientation per
    pair over `window` must be present.  The weights g satisfy
    f(e_a - e_b) = g(a) - g(b) with g zero off the support; atoms whose
    probes disagree beyond `tol` raise Inconsistent.
    """
    window = sorted(window)
    if len(window) < 3:
        raise Inconsistent("window too small to isolate a zero class")

    def probe(a, b):
        if (a, b) in samples:
            return complex(samples[(a, b)])
        if (b, a) in samples:
            return -complex(samples[(b, a)])
        raise ValidationError(f"missing sample for atoms {a!r}, {b!r}")

    base = window[0]
    shifted = {a: (complex(probe(a, base)) if a != base else 0.0 + 0.0j) for a in window}

    # the zero class outside the support shows up as the largest cluster
    # of equal shifted values; cluster by transitive tolerance-closeness
    parent = {a: a for a in window}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in window:
        for b in window:
            if a < b and abs(shifted[a] - shifted[b]) <= tol:
                parent[find(a)] = find(b)
    groups = {}
    for a in window:
        groups.setdefault(find(a), []).append(a)
    clusters = sorted(groups.values(), key=lambda c: c[0])
    zero_class = max(clusters, key=len)
    if len(zero_class) < 2:
        raise Inconsistent("no candidate zero class of size two; enlarge the window")
    zero_class = sorted(zero_class)

    weights = {}
    for a in window:
        if a in zero_class:
            continue
        values = [probe(a, z) for z in zero_class]
        spread = max(abs(v - values[0]) for v in values)
        if spread > tol:
            raise Inconsistent(
                f"probe f(e_{a} - e_b) varies by {spread:.3e} over the zero class"
            )
        if abs(values[0]) > tol:
            weights[a] = values[0]

    support = tuple(sorted(weights))
    # full re-verification against every sampled pair
    for a in window:
        for b in window:
            if a == b:
                continue
            if (a, b) not in samples and (b, a) not in samples:
                continue
            predicted = weights.get(a, 0.0) - weights.get(b, 0.0)
            if abs(probe(a, b) - predicted) > 10 * tol:
                raise Inconsistent(
                    f"sample for ({a!r}, {b!r}) conflicts with the recovered weights"
                )
    return support, weights


@dataclass(eq=False)
class SymbolicSubspace:
    """Closed subspace: finite orthonormal span, plus an optional
    cofinite component holding everything off the `exclude` atoms.

    When the cofinite part is present the finite vectors live inside
    the excluded window, and no excluded atom's basis vector lies in
    the span (least exclusion set).  Use `subspace` to build one.
    """

    finite: tuple
    exclude: tuple = None


def _orth_rows(rows, tol=TOL_SPAN):
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    if rows.size == 0:
        return np.zeros((0, rows.shape[-1] if rows.ndim == 2 else 0), dtype=complex)
    u, s, vh = np.linalg.svd(rows, full_matrices=False)
    rank = int(np.sum(s > tol * max(float(s[0]), 1.0))) if len(s) else 0
    return vh[:rank]


def _vectors_to_rows(vectors, window):
    index = {a: i for i, a in enumerate(window)}
    rows = np.zeros((len(vectors), len(window)), dtype=complex)
    for r, v in enumerate(vectors):
        for atom, value in v.entries:
            rows[r, index[atom]] = value
    return rows


def _rows_to_vectors(rows, window):
    out = []
    for row in rows:
        entries = {
            window[i]: row[i] for i in range(len(window)) if abs(row[i]) > 1e-14
        }
        out.append(FiniteSupportVector(entries))
    return tuple(out)


def subspace(vectors, exclude=None, tol=TOL_SPAN):
    """Canonical SymbolicSubspace from spanning vectors and an optional
    excluded atom window.

    Coordinates of the spanning vectors on non-excluded atoms are
    absorbed by the cofinite component; excluded atoms whose basis
    vector ends up inside the span are released from the exclusion set.
    """
    vectors = [
        v if isinstance(v, FiniteSupportVector) else FiniteSupportVector(v)
        for v in vectors
    ]
    if exclude is None:
        window = sorted({a for v in vectors for a in v.support()})
        rows = _orth_rows(_vectors_to_rows(vectors, window)) if window else np.zeros((0, 0))
        return SymbolicSubspace(_rows_to_vectors(rows, window), None)

    window = sorted(str(a) for a in exclude)
    if len(set(window)) != len(window):
        raise ValidationError("excluded atoms must be distinct")
    trimmed = []
    for v in vectors:
        trimmed.append({a: x for a, x in v.entries if a in set(window)})
    rows = (
        _orth_rows(_vectors_to_rows([FiniteSupportVector(t) for t in trimmed], window))
        if window
        else np.zeros((0, 0))
    )
    # release excluded atoms already inside the span
    changed = True
    while changed and len(window):
        changed = False
        for pos, atom in enumerate(window):
            if rows.shape[0] == 0:
                break
            weight = float(np.sum(np.abs(rows[:, pos]) ** 2))
            if weight >= 1.0 - 10 * tol:
                unit = np.zeros(len(window), dtype=complex)
                unit[pos] = 1.0
                deflated = rows - np.outer(rows[:, pos], unit)
                keep = [i for i in range(len(window)) if i != pos]
                rows = _orth_rows(deflated[:, keep]) if keep else np.zeros((0, 0))
                window = [window[i] for i in keep]
                changed = True
                break
    return SymbolicSubspace(_rows_to_vectors(rows, window), tuple(window))


def checked_subspace(vectors, exclude, tol=TOL_SPAN):
    """SymbolicSubspace from data already in canonical shape.

    Validates without renormalizing, so stored coordinates survive a
    load/save cycle byte for byte.  Returns None when the data is not
    canonical; callers then fall back to `subspace`.
    """
    vectors = tuple(
        v if isinstance(v, FiniteSupportVector) else FiniteSupportVector(v)
        for v in vectors
    )
    if exclude is None:
        window = sorted({a for v in vectors for a in v.support()})
    else:
        window = [str(a) for a in exclude]
        if window != sorted(set(window)):
            return None
        allowed = set(window)
        if any(a not in allowed for v in vectors for a in v.support()):
            return None
    rows = _vectors_to_rows(list(vectors), window)
    if len(vectors):
        gram = rows @ rows.conj().T
        if np.max(np.abs(gram - np.eye(len(vectors)))) > tol:
            return None
    if exclude is not None and len(vectors):
        weights = np.sum(np.abs(rows) ** 2, axis=0)
        if np.any(weights >= 1.0 - 10 * tol):
            return None
    return SymbolicSubspace(vectors, None if exclude is None else tuple(window))


def _full_rows(space, window):
    """Rows spanning the subspace inside the window's coordinate space."""
    rows = _vectors_to_rows(list(space.finite), window)
    if space.exclude is not None:
        excluded = set(space.exclude)
        free = [a for a in window if a not in excluded]
        extra = np.zeros((len(free), len(window)), dtype=complex)
        index = {a: i for i, a in enumerate(window)}
        for r, a in enumerate(free):
            extra[r, index[a]] = 1.0
        rows = np.vstack([rows, extra]) if len(rows) else extra
    return _orth_rows(rows)


def _joint_window(*spaces):
    atoms = set()
    for s in spaces:
        for v in s.finite:
            atoms.update(v.support())
        if s.exclude is not None:
            atoms.update(s.exclude)
    return sorted(atoms)


def subspace_meet(s1, s2, tol=TOL_SPAN):
    """Lattice meet: the intersection, computed inside a shared window."""
    window = _joint_window(s1, s2)
    r1 = _full_rows(s1, window)
    r2 = _full_rows(s2, window)
    if r1.shape[0] == 0 or r2.shape[0] == 0:
        shared = np.zeros((0, len(window)), dtype=complex)
    else:
        overlap = r1.conj() @ r2.T
        u, s, vh = np.linalg.svd(overlap)
        count = int(np.sum(s >= 1.0 - tol))
        shared = u[:, :count].T @ r1
    vectors = _rows_to_vectors(shared, window)
    if s1.exclude is not None and s2.exclude is not None:
        return subspace(vectors, exclude=window, tol=tol)
    return subspace(vectors, exclude=None, tol=tol)


def subspace_join(s1, s2, tol=TOL_SPAN):
    """Lattice join: the closed sum, always inside the subspace class."""
    window = _joint_window(s1, s2)
    stacked = np.vstack([_full_rows(s1, window), _full_rows(s2, window)])
    vectors = _rows_to_vectors(_orth_rows(stacked), window)
    if s1.exclude is not None or s2.exclude is not None:
        return subspace(vectors, exclude=window, tol=tol)
    return subspace(vectors, exclude=None, tol=tol)


def subspace_equal(s1, s2, tol=TOL_EQ):
    """Equality of canonical forms: same exclusion set, same finite span."""
    if (s1.exclude is None) != (s2.exclude is None):
        return False
    if s1.exclude is not None and tuple(s1.exclude) != tuple(s2.exclude):
        return False
    if len(s1.finite) != len(s2.finite):
        return False
    window = _joint_window(s1, s2)
    r1 = _vectors_to_rows(list(s1.finite), window)
    r2 = _vectors_to_rows(list(s2.finite), window)
    p1 = r1.conj().T @ r1
    p2 = r2.conj().T @ r2
    return bool(np.max(np.abs(p1 - p2), initial=0.0) <= tol)


def is_orthogonal(s1, s2, tol=TOL_SPAN):
    """Orthogonality in the ambient space, cofinite parts included.

    Two subspaces with cofinite components always share directions far
    out in the atom set, so at most one member of an orthogonal family
    can carry one.
    """
    if s1.exclude is not None and s2.exclude is not None:
        return False
    window = _joint_window(s1, s2)
    r1 = _vectors_to_rows(list(s1.finite), window)
    r2 = _vectors_to_rows(list(s2.finite), window)
    if len(r1) and len(r2) and np.max(np.abs(r1.conj() @ r2.T)) > tol:
        return False
    for finite_side, cofinite_side in ((s1, s2), (s2, s1)):
        if cofinite_side.exclude is None:
            continue
        allowed = set(cofinite_side.exclude)
        for v in finite_side.finite:
            if any(a not in allowed for a in v.support()):
                return False
    return True


def two_valued_state(space):
    """Dimension state: 0 on finite-dimensional subspaces, 1 otherwise."""
    return 0 if space.exclude is None else 1


def modularity_check(x, y, z):
    """Shearing form of the modular law on a subspace triple."""
    lhs = subspace_meet(x, subspace_join(y, z))
    inner = subspace_join(subspace_meet(y, subspace_join(x, z)), z)
    rhs = subspace_meet(x, inner)
    return subspace_equal(lhs, rhs)


@dataclass(frozen=True)
class SymbolicTrace:
    """Trace over a cofinite family: a finite number or INFINITE."""

    infinite: bool
    value: complex = None

    def __str__(self):
        return "INFINITE" if self.infinite else str(self.value)


@dataclass(frozen=True)
class DensityRefutation:
    """Outcome of testing a density candidate against the dimension state."""

    trace: SymbolicTrace
    state_value: int
    agrees: bool


def refute_density(density):
    """Witness showing no finite-block density matches the dimension state.

    Returns the cofinite projection off the density's support and the
    verdict: its symbolic trace is INFINITE when the tail is nonzero and
    0 when the tail vanishes, never the state value 1.
    """
    if not density.symmetric:
        raise ValidationError("density candidate must be symmetric-flagged")
    canonical = canonicalize(density)
    witness = subspace([], exclude=canonical.support)
    if canonical.tail != 0:
        trace = SymbolicTrace(infinite=True)
    else:
        trace = SymbolicTrace(infinite=False, value=0.0)
    verdict = DensityRefutation(trace=trace, state_value=two_valued_state(witness), agrees=False)
    return witness, verdict

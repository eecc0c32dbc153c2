"""Eigen-data operators: construction, calculus, joint diagonalization."""

import numpy as np
import pytest

from finobs.errors import (
    NotCommeasurable,
    NotInvariant,
    OutsideDomain,
    ValidationError,
)
from finobs.finitary import (
    EigenSystem,
    Polynomial,
    apply,
    check_hermitian,
    commeasurable,
    complete_extension,
    deduplicate_values,
    diagonalize,
    from_eigenpairs,
    functional_calculus,
    in_domain,
    is_complete,
    is_extension,
    joint_eigensystem,
    joint_generator,
    minimal_polynomial,
    orbit_span_dim,
    project,
    restrict,
    table_function,
)

E0 = np.array([1.0, 0.0, 0.0])
E1 = np.array([0.0, 1.0, 0.0])
E2 = np.array([0.0, 0.0, 1.0])


def diag_system(*values):
    dim = len(values)
    return from_eigenpairs(
        [(v, np.eye(dim)[i]) for i, v in enumerate(values)], dim
    )


def test_diagonalize_literal_matrix():
    m = np.array([[2.0, 1.0], [1.0, 2.0]])
    system = diagonalize(m)
    assert np.allclose(system.values, [1.0, 3.0])
    assert np.allclose(system.matrix(), m)
    gram = system.vectors @ system.vectors.conj().T
    assert np.allclose(gram, np.eye(2))


def test_check_hermitian_rejects():
    with pytest.raises(ValidationError):
        check_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValidationError):
        check_hermitian(np.zeros((2, 3)))


def test_eigensystem_sorts_into_canonical_order():
    system = EigenSystem(2, np.array([3.0, 1.0]), np.array([[0, 1], [1, 0]], dtype=float))
    assert list(system.values) == [1.0, 3.0]
    assert np.allclose(system.vectors[0], [1.0, 0.0])


def test_eigensystem_rejects_bad_vector_families():
    with pytest.raises(ValidationError):
        EigenSystem(2, np.array([1.0, 2.0]), np.array([[1, 0], [1, 0]], dtype=float))
    with pytest.raises(ValidationError):
        EigenSystem(2, np.array([1.0]), np.array([[1, 0, 0]], dtype=float))
    with pytest.raises(ValidationError):
        EigenSystem(1, np.array([1.0, 2.0]), np.eye(2))


def test_from_eigenpairs_rejects_complex_values():
    with pytest.raises(ValidationError):
        from_eigenpairs([(1.0 + 0.1j, E0)], 3)


def test_partial_operator_domain():
    system = from_eigenpairs([(2.0, E0), (5.0, E1)], 3)
    assert system.count == 2 and not is_complete(system)
    assert in_domain(system, E0 + E1)
    assert not in_domain(system, E2)
    assert np.allclose(apply(system, 3 * E0), 6 * E0)
    with pytest.raises(OutsideDomain) as info:
        apply(system, E0 + E2)
    assert info.value.residual == pytest.approx(1.0)


def test_orbit_span_dim():
    m = np.diag([1.0, 2.0, 3.0])
    assert orbit_span_dim(m, np.ones(3), cap=5) == 3
    assert orbit_span_dim(m, E1, cap=5) == 1
    assert orbit_span_dim(m, np.ones(3), cap=2) == 2
    assert orbit_span_dim(m, np.zeros(3), cap=5) == 0
    with pytest.raises(ValidationError):
        orbit_span_dim(m, E0, cap=0)


def test_project_onto_plane():
    x = np.array([1.0, 2.0, 3.0])
    p = project([E0, E1], x)
    assert np.allclose(p, [1.0, 2.0, 0.0])
    with pytest.raises(ValidationError):
        project([E0, 2 * E0], x)


def test_restrict_to_invariant_subspace():
    system = diag_system(1.0, 2.0, 3.0)
    small = restrict(system, [E0, E1])
    assert list(small.values) == [1.0, 2.0]
    assert small.ambient_dim == 3


def test_restrict_flags_non_invariant_span():
    coupled = diagonalize(np.array([[0.0, 0.0, 1.0], [0.0, 5.0, 0.0], [1.0, 0.0, 0.0]]))
    with pytest.raises(NotInvariant) as info:
        restrict(coupled, [E0])
    assert np.allclose(np.abs(info.value.witness), E0)


def test_commeasurable_cases():
    a = diag_system(1.0, 2.0)
    b = diag_system(3.0, 3.5)
    assert commeasurable([a, b])
    flip = diagonalize(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert not commeasurable([a, flip])
    partial = from_eigenpairs([(1.0, np.array([1.0, 0.0]))], 2)
    assert not commeasurable([a, partial])
    with pytest.raises(ValidationError):
        commeasurable([])


def test_joint_eigensystem_tuples():
    a = diag_system(1.0, 1.0, 2.0)
    b = diag_system(3.0, 4.0, 4.0)
    joint = joint_eigensystem([a, b])
    assert [tup for _, tup in joint] == [(1.0, 3.0), (1.0, 4.0), (2.0, 4.0)]
    for v, (va, vb) in joint:
        assert np.allclose(apply(a, v), va * v)
        assert np.allclose(apply(b, v), vb * v)


def test_joint_eigensystem_needs_commuting_operators():
    a = diag_system(1.0, 2.0)
    flip = diagonalize(np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(NotCommeasurable):
        joint_eigensystem([a, flip])


def test_functional_calculus_product():
    a = diag_system(1.0, 1.0, 2.0)
    b = diag_system(3.0, 4.0, 4.0)
    ab = functional_calculus(lambda s, t: s * t, [a, b])
    assert np.allclose(ab.matrix(), a.matrix() @ b.matrix())


def test_functional_calculus_rejects_non_real_values():
    a = diag_system(1.0, 2.0)
    with pytest.raises(ValidationError):
        functional_calculus(lambda s: 1j * s, [a])
    with pytest.raises(ValidationError):
        functional_calculus(lambda s: float("inf"), [a])


def test_joint_generator_reproduces_the_family():
    a = diag_system(1.0, 1.0, 2.0)
    b = diag_system(3.0, 4.0, 4.0)
    generator, tables = joint_generator([a, b])
    assert list(generator.values) == [0.0, 1.0, 2.0]
    for original, table in zip([a, b], tables):
        rebuilt = functional_calculus(table_function(table), [generator])
        assert np.allclose(rebuilt.matrix(), original.matrix())


def test_polynomial_and_minimal_polynomial():
    p = Polynomial((1.0, 0.0, 2.0))  # 1 + 2 t^2
    assert p.degree == 2
    assert p(3.0) == 19.0
    system = diag_system(1.0, 1.0, 2.0)
    mp = minimal_polynomial(system)
    assert mp.degree == 2
    assert abs(mp(1.0)) < 1e-12 and abs(mp(2.0)) < 1e-12
    annihilated = functional_calculus(mp, [system])
    assert np.allclose(annihilated.matrix(), 0.0)


def test_deduplicate_values_clusters_at_scale():
    reps = deduplicate_values([1.0, 1.0 + 1e-12, 5.0])
    assert len(reps) == 2
    assert reps[0] == pytest.approx(1.0) and reps[1] == 5.0


def test_extension_roundtrip():
    partial = from_eigenpairs([(1.0, np.array([1.0, 0.0]))], 2)
    full = complete_extension(partial, [(2.0, np.array([0.0, 1.0]))])
    assert is_complete(full)
    assert is_extension(full, partial)
    other = diag_system(1.0, 3.0)
    assert not is_extension(other, from_eigenpairs([(2.0, np.array([0.0, 1.0]))], 2))
    with pytest.raises(ValidationError):
        complete_extension(partial, [])
    with pytest.raises(ValidationError):
        is_extension(partial, partial)


def test_table_function_lookup():
    f = table_function({0.0: 7.0, 1.0: 9.0})
    assert f(0.0) == 7.0
    assert f(1.0 + 1e-7) == 9.0
    with pytest.raises(ValidationError):
        f(0.5)

"""Unitary evolution and statistics generated by eigendata operators.

Evolution acts coordinate-wise on the eigenbasis: an eigenvector of
eigenvalue w picks up the phase exp(-i w t).  Expectations, state
compression, and the concatenation of two evolutions into one generator
all reduce to spectral bookkeeping on dense matrices.
"""

import numpy as np
import scipy.linalg

from . import finitary
from .errors import OutsideDomain, ToleranceError, ValidationError
from .finitary import EigenSystem, check_hermitian

TOL_STATE = 1e-9
TOL_DENSITY = 1e-9
TOL_PSD = 1e-10
TOL_UNITARY = 1e-8


def check_state(psi):
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValidationError("state must be a vector")
    if abs(np.linalg.norm(psi) - 1.0) > TOL_STATE:
        raise ValidationError(f"state norm {np.linalg.norm(psi):.6f} is not 1")
    return psi


def check_density(rho):
    rho = check_hermitian(rho)
    if abs(np.trace(rho).real - 1.0) > TOL_DENSITY or abs(np.trace(rho).imag) > TOL_DENSITY:
        raise ValidationError(f"density trace {np.trace(rho):.6f} is not 1")
    smallest = np.min(np.linalg.eigvalsh(rho))
    if smallest < -TOL_PSD:
        raise ValidationError(f"density has negative eigenvalue {smallest:.3e}")
    return rho


def check_unitary(u):
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) > TOL_UNITARY:
        raise ValidationError("matrix is not unitary within tolerance")
    return u


def evolve(system, psi0, t):
    """State at time t under the evolution generated by `system`.

    psi0 must be a unit vector inside the operator domain; each
    eigencomponent is rotated by exp(-i value t).
    """
    psi0 = check_state(psi0)
    coeff, resid = finitary._expand(system, psi0)
    if resid > finitary.TOL_DOM * np.linalg.norm(psi0):
        raise OutsideDomain(resid)
    return (coeff * np.exp(-1j * system.values * float(t))) @ system.vectors


def propagator(system, t):
    """Unitary exp(-i A t) of a full operator as a dense matrix."""
    if not system.is_full():
        raise ValidationError("propagator needs a full operator")
    phases = np.exp(-1j * system.values * float(t))
    return (system.vectors.T * phases) @ system.vectors.conj()


def _spectral_projectors(system):
    """Pairs (value, projector) grouped over near-degenerate clusters."""
    td = finitary.tol_dedup(system.norm())
    out = []
    start = 0
    values = system.values
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > td:
            rows = system.vectors[start:i]
            out.append((float(np.mean(values[start:i])), rows.T @ rows.conj()))
            start = i
    return out


def expectation(func, system, rho):
    """Trace of f(T) rho via the spectral decomposition of T."""
    if not system.is_full():
        raise ValidationError("expectation needs a full operator")
    rho = check_density(rho)
    if rho.shape[0] != system.ambient_dim:
        raise ValidationError("density and operator dimensions differ")
    total = 0.0
    for value, proj in _spectral_projectors(system):
        total += float(func(value)) * float(np.trace(proj @ rho).real)
    return total


def compress_state(system, rho):
    """Density with the same statistics for every function of `system`.

    Averages rho over each eigenspace: the weight tr(P rho) is spread
    uniformly across the eigenspace dimension.
    """
    if not system.is_full():
        raise ValidationError("compression needs a full operator")
    rho = check_density(rho)
    if rho.shape[0] != system.ambient_dim:
        raise ValidationError("density and operator dimensions differ")
    out = np.zeros_like(rho)
    for _, proj in _spectral_projectors(system):
        weight = float(np.trace(proj @ rho).real)
        dim = int(round(np.trace(proj).real))
        out = out + (weight / dim) * proj
    return out


def _exp_minus_i(h):
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w)) @ v.conj().T


def concatenate(a, b):
    """One Hermitian C with exp(-iC) = exp(-iA) exp(-iB).

    The eigenphases of the unitary product are mapped to [0, 2 pi); the
    branch choice is literal, with no smoothing across the cut.
    """
    a = check_hermitian(a)
    b = check_hermitian(b)
    if a.shape != b.shape:
        raise ValidationError(
            f"dimension mismatch: first operator is {a.shape[0]}, second is {b.shape[0]}"
        )
    r = _exp_minus_i(a) @ _exp_minus_i(b)
    t, z = scipy.linalg.schur(r, output="complex")
    diag = np.diag(t)
    diag = diag / np.abs(diag)
    theta = np.mod(-np.angle(diag), 2.0 * np.pi)
    theta[theta >= 2.0 * np.pi] = 0.0
    c = (z * theta) @ z.conj().T
    c = (c + c.conj().T) / 2.0
    check = np.max(np.abs(_exp_minus_i(c) - r))
    if check > 1e-8:
        raise ToleranceError(f"concatenation residual {check:.3e} out of tolerance")
    return c


def variance(operator, w):
    """Statistical variance of an observable in the unit state w.

    Accepts either an EigenSystem (w must be in its domain) or a dense
    Hermitian matrix.
    """
    w = check_state(w)
    if isinstance(operator, EigenSystem):
        sw = finitary.apply(operator, w)
    else:
        sw = check_hermitian(operator) @ w
    mean = float(np.vdot(w, sw).real)
    return float(np.vdot(sw, sw).real - mean * mean)


def subspace_intersection(basis1, basis2, tol=1e-9):
    """Orthonormal basis of the intersection of two orthonormal spans.

    Directions whose principal correlation falls within `tol` of 1 are
    counted as shared.
    """
    q1 = np.atleast_2d(np.asarray(basis1, dtype=complex))
    q2 = np.atleast_2d(np.asarray(basis2, dtype=complex))
    for q in (q1, q2):
        gram = q @ q.conj().T
        if np.max(np.abs(gram - np.eye(q.shape[0]))) > finitary.TOL_ORTH:
            raise ValidationError("input basis is not orthonormal")
    overlap = q1.conj() @ q2.T
    u, s, vh = np.linalg.svd(overlap)
    shared = int(np.sum(s >= 1.0 - tol))
    return u[:, :shared].T @ q1


def complementarity_pair(dim, alphas, rotation_seed=42):
    """Two operators with the same spectrum sharing only one domain ray.

    S lives on the mixed basis (e0 +- e1)/sqrt2, e2, ...; T uses the
    same construction over a seeded rotation of the block orthogonal to
    e0.  The trivial-intersection property is asserted, not assumed.
    """
    alphas = [float(x) for x in alphas]
    k = len(alphas)
    if k < 2:
        raise ValidationError("need at least two eigenvalues")
    if len(set(alphas)) != k:
        raise ValidationError("eigenvalues must be distinct")
    if dim < 2 * k + 1:
        raise ValidationError(f"ambient dimension {dim} below required {2 * k + 1}")
    eye = np.eye(dim, dtype=complex)
    sqrt2 = np.sqrt(2.0)

    s_rows = [(eye[0] + eye[1]) / sqrt2, (eye[0] - eye[1]) / sqrt2]
    s_rows += [eye[i] for i in range(2, k)]

    rng = np.random.default_rng(rotation_seed)
    gauss = rng.standard_normal((dim - 1, dim - 1))
    q, r = np.linalg.qr(gauss)
    q = q * np.sign(np.diag(r))
    rotated = np.zeros((dim - 1, dim), dtype=complex)
    rotated[:, 1:] = q.T

    t_rows = [(eye[0] + rotated[0]) / sqrt2, (eye[0] - rotated[0]) / sqrt2]
    t_rows += [rotated[i] for i in range(1, k - 1)]

    s_sys = finitary.from_eigenpairs(list(zip(alphas, s_rows)), dim)
    t_sys = finitary.from_eigenpairs(list(zip(alphas, t_rows)), dim)

    shared = subspace_intersection(s_sys.vectors, t_sys.vectors)
    if len(shared) != 1 or abs(abs(shared[0][0]) - 1.0) > 1e-8:
        raise ValidationError(
            "rotation seed produced a non-generic pair; domains share more than e0"
        )
    return s_sys, t_sys


def oscillator_hamiltonian(n, length, mass=1.0, stiffness=1.0, hbar=1.0):
    """Grid Hamiltonian (hbar/2m) P^2 + (f/2 hbar) Q^2 on [-L, L].

    Uniform interior grid with Dirichlet walls; P^2 is the three-point
    second difference.  Returns a real symmetric (n, n) matrix.
    """
    if n < 16:
        raise ValidationError("need at least 16 grid points")
    if length <= 0 or mass <= 0 or stiffness <= 0 or hbar <= 0:
        raise ValidationError("length, mass, stiffness, hbar must be positive")
    h = 2.0 * length / (n + 1)
    x = -length + h * (np.arange(n) + 1)
    lap = (
        2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
    ) / (h * h)
    return (hbar / (2.0 * mass)) * lap + (stiffness / (2.0 * hbar)) * np.diag(x * x)

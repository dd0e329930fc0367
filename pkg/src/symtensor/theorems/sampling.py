"""Random draws used by the suites.

Entries are i.i.d. complex standard normal: real and imaginary parts are
independent N(0, 1/2), so E|z|^2 = 1.  Everything flows from one
``numpy.random.Generator`` per suite, so a (seed, trials) pair replays exactly.
"""

import numpy as np


def rng_for(seed):
    return np.random.default_rng(seed)


def cnormal(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def unit_vector(rng, d):
    v = cnormal(rng, d)
    return v / np.linalg.norm(v)


def unitary(rng, d):
    """Haar-distributed unitary via QR with the phase correction."""
    q, r = np.linalg.qr(cnormal(rng, (d, d)))
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def hermitian(rng, d):
    x = cnormal(rng, (d, d))
    return (x + x.conj().T) / 2


def normal_matrix(rng, d, eigenvalues=None):
    u = unitary(rng, d)
    lam = cnormal(rng, d) if eigenvalues is None else np.asarray(eigenvalues, dtype=np.complex128)
    return (u * lam) @ u.conj().T


def complex_symmetric(rng, d):
    x = cnormal(rng, (d, d))
    return (x + x.T) / 2


def moduli_in(rng, size, lo, hi):
    """Complex numbers with |z| uniform in [lo, hi] and uniform phase."""
    r = rng.uniform(lo, hi, size)
    return r * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size))

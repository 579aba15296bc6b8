"""Shared builders for the test suite."""
import numpy as np

from randual import KrausChannel, UnitaryChannel, haar_unitary


def random_hermitian(rng, d):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return m + m.conj().T


def random_unitary_channel(d_a, d_b, seed):
    return UnitaryChannel(haar_unitary(d_a, seed), d_b=d_b)


def depolarizing(p):
    """Qubit depolarizing channel with Pauli error weight p."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    ops = np.array(
        [
            np.sqrt(1 - p) * np.eye(2, dtype=complex),
            np.sqrt(p / 3) * sx,
            np.sqrt(p / 3) * sy,
            np.sqrt(p / 3) * sz,
        ]
    )
    return KrausChannel(ops)


def amplitude_damping(gamma):
    ops = np.array(
        [
            [[1, 0], [0, np.sqrt(1 - gamma)]],
            [[0, np.sqrt(gamma)], [0, 0]],
        ],
        dtype=complex,
    )
    return KrausChannel(ops)


def random_kraus_channel(rng, d_a, d_b, r):
    """Random CPTP map: r Kraus operators sliced from a Haar isometry."""
    z = rng.normal(size=(d_b * r, d_a)) + 1j * rng.normal(size=(d_b * r, d_a))
    q = np.linalg.qr(z)[0]
    return KrausChannel(q.reshape(r, d_b, d_a))


def random_density_matrix(rng, d):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = m @ m.conj().T
    return rho / np.trace(rho)

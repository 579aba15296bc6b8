"""Quantum channel representations and the Choi calculus.

A channel X maps density matrices on a d_a-dimensional input space to
density matrices on a d_b-dimensional output space. Three presentations are
supported:

* KrausChannel: operators M_k (each d_b x d_a) with sum_k M_k^dag M_k = I.
* UnitaryChannel: X(rho) = tr_c[U rho U^dag] for a unitary U on the input
  space viewed as (d_b, d_c) with the output factor slowest; d_b * d_c = d_a.
* DilatedChannel: X(rho) = tr_env[U (rho (x) |0><0|) U^dag] for a unitary U
  on input (x) ancilla, the ancilla prepared in the first basis vector. The
  same space is read as (d_b, d_env) with the output factor slowest when the
  environment is traced out.

The Choi matrix lives on (input copy, output), input copy slowest:

    sigma = (1/d_a) sum_ij |i><j| (x) X(|i><j|),

and pairs with observables as tr[X(A) B] = d_a tr[sigma (A^t (x) B)].
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import assert_hermitian, hs_norm, partial_trace

# Construction-time tolerance on U^dag U = I and sum M^dag M = I.
UNITARY_ATOL = 1e-9
# Default eigenvalue cutoff for Kraus extraction is KRAUS_TOL_SCALE * d_a.
KRAUS_TOL_SCALE = 1e-10


def _as_complex(m: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(m, dtype=complex))


@dataclass(frozen=True)
class KrausChannel:
    """Channel in operator-sum form; operators stacked as (r, d_b, d_a)."""

    operators: np.ndarray

    def __post_init__(self) -> None:
        ops = _as_complex(self.operators)
        if ops.ndim != 3 or ops.shape[0] < 1:
            raise ValueError("operators must be a nonempty stack of matrices")
        object.__setattr__(self, "operators", ops)

    @property
    def d_a(self) -> int:
        return self.operators.shape[2]

    @property
    def d_b(self) -> int:
        return self.operators.shape[1]


@dataclass(frozen=True)
class UnitaryChannel:
    """Channel induced by a unitary on the input space, tracing down to the
    slowest factor of the (d_b, d_c) layout."""

    unitary: np.ndarray
    d_b: int

    def __post_init__(self) -> None:
        u = _as_complex(self.unitary)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError("unitary must be square")
        if self.d_b < 1 or u.shape[0] % self.d_b != 0:
            raise ValueError(f"d_b={self.d_b} must divide the unitary dimension {u.shape[0]}")
        object.__setattr__(self, "unitary", u)

    @property
    def d_a(self) -> int:
        return self.unitary.shape[0]

    @property
    def d_c(self) -> int:
        return self.d_a // self.d_b


@dataclass(frozen=True)
class DilatedChannel:
    """Channel given by a unitary dilation on input (x) ancilla."""

    unitary: np.ndarray
    d_a: int
    d_b: int

    def __post_init__(self) -> None:
        u = _as_complex(self.unitary)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError("unitary must be square")
        d_u = u.shape[0]
        if self.d_a < 1 or d_u % self.d_a != 0:
            raise ValueError(f"d_a={self.d_a} must divide the dilation dimension {d_u}")
        if self.d_b < 1 or d_u % self.d_b != 0:
            raise ValueError(f"d_b={self.d_b} must divide the dilation dimension {d_u}")
        object.__setattr__(self, "unitary", u)

    @property
    def d_u(self) -> int:
        return self.unitary.shape[0]

    @property
    def ancilla_dim(self) -> int:
        return self.d_u // self.d_a

    @property
    def env_dim(self) -> int:
        return self.d_u // self.d_b


Channel = KrausChannel | UnitaryChannel | DilatedChannel


@dataclass(frozen=True)
class ChoiMatrix:
    """Choi matrix on (input copy, output), input copy slowest."""

    matrix: np.ndarray
    d_a: int
    d_b: int

    def __post_init__(self) -> None:
        m = _as_complex(self.matrix)
        d = self.d_a * self.d_b
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} does not match d_a*d_b={d}")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class ChannelDiagnostics:
    """Validation report; residuals are Hilbert-Schmidt norms."""

    kind: str
    d_a: int
    d_b: int
    tp_residual: float
    choi_min_eigenvalue: float
    choi_trace: float
    unitarity_residual: float | None = None
    kraus_rank: int = 0
    choi_spectrum: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def is_valid(self) -> bool:
        ok = self.tp_residual <= UNITARY_ATOL and self.choi_min_eigenvalue >= -UNITARY_ATOL
        if self.unitarity_residual is not None:
            ok = ok and self.unitarity_residual <= UNITARY_ATOL
        return ok


def kind_of(ch: Channel) -> str:
    if isinstance(ch, KrausChannel):
        return "kraus"
    if isinstance(ch, UnitaryChannel):
        return "unitary_induced"
    if isinstance(ch, DilatedChannel):
        return "dilated"
    raise TypeError(f"not a channel: {type(ch)!r}")


def kraus_operators(ch: Channel) -> np.ndarray:
    """Operator-sum form of any channel variant, stacked as (r, d_b, d_a).

    For a UnitaryChannel the operators are M_c = (I (x) <c|) U; for a
    DilatedChannel they are M_e = (I (x) <e|) U (I (x) |0>), one per
    environment basis vector (some may vanish).
    """
    if isinstance(ch, KrausChannel):
        return ch.operators
    if isinstance(ch, UnitaryChannel):
        # U reshaped to (d_b, d_c, d_a): row block (m, c), column i.
        return ch.unitary.reshape(ch.d_b, ch.d_c, ch.d_a).transpose(1, 0, 2).copy()
    if isinstance(ch, DilatedChannel):
        u4 = ch.unitary.reshape(ch.d_b, ch.env_dim, ch.d_a, ch.ancilla_dim)
        return u4[:, :, :, 0].transpose(1, 0, 2).copy()
    raise TypeError(f"not a channel: {type(ch)!r}")


def apply_channel(ch: Channel, rho: np.ndarray) -> np.ndarray:
    """Apply the channel to a d_a x d_a matrix."""
    rho = np.asarray(rho, dtype=complex)
    d_a = ch.d_a
    if rho.shape != (d_a, d_a):
        raise ValueError(f"input shape {rho.shape} does not match d_a={d_a}")
    if isinstance(ch, KrausChannel):
        return np.einsum("kmi,ij,knj->mn", ch.operators, rho, ch.operators.conj())
    if isinstance(ch, UnitaryChannel):
        u = ch.unitary
        return partial_trace(u @ rho @ u.conj().T, (ch.d_b, ch.d_c), [0])
    if isinstance(ch, DilatedChannel):
        anc = np.zeros((ch.ancilla_dim, ch.ancilla_dim), dtype=complex)
        anc[0, 0] = 1.0
        big = np.kron(rho, anc)
        u = ch.unitary
        return partial_trace(u @ big @ u.conj().T, (ch.d_b, ch.env_dim), [0])
    raise TypeError(f"not a channel: {type(ch)!r}")


def choi_matrix(ch: Channel) -> ChoiMatrix:
    """Choi matrix (1/d_a) sum_ij |i><j| (x) X(|i><j|)."""
    ops = kraus_operators(ch)
    d_a, d_b = ch.d_a, ch.d_b
    s = np.einsum("kmi,knj->imjn", ops, ops.conj()) / d_a
    return ChoiMatrix(s.reshape(d_a * d_b, d_a * d_b), d_a, d_b)


def choi_pairing(choi: ChoiMatrix, a: np.ndarray, b: np.ndarray) -> float:
    """tr[X(A) B] evaluated against the Choi matrix as d_a tr[sigma (A^t (x) B)]."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (choi.d_a, choi.d_a) or b.shape != (choi.d_b, choi.d_b):
        raise ValueError("observable dimensions do not match the Choi layout")
    assert_hermitian(a, name="A")
    assert_hermitian(b, name="B")
    val = choi.d_a * np.einsum("imjn,ij,nm->",
                               choi.matrix.reshape(choi.d_a, choi.d_b, choi.d_a, choi.d_b),
                               a, b)
    return float(val.real)


def kraus_rank(ch: Channel, tol: float | None = None) -> int:
    """Number of Choi eigenvalues above tol (default KRAUS_TOL_SCALE * d_a)."""
    if tol is None:
        tol = KRAUS_TOL_SCALE * ch.d_a
    w = np.linalg.eigvalsh(choi_matrix(ch).matrix)
    return int(np.sum(w > tol))


def kraus_from_choi(choi: ChoiMatrix, tol: float | None = None) -> KrausChannel:
    """Extract Kraus operators from a Choi matrix.

    Eigendecomposes d_a * sigma; every eigenpair (lam, v) with lam > tol
    contributes the operator sqrt(lam) * reshape(v), where v on the
    (input copy, output) layout reshapes to a (d_a, d_b) table whose
    transpose is the operator. Eigenvalues below -tol mean the matrix is not
    a Choi matrix of a completely positive map.
    """
    if tol is None:
        tol = KRAUS_TOL_SCALE * choi.d_a
    assert_hermitian(choi.matrix, name="Choi matrix")
    w, v = np.linalg.eigh(choi.d_a * choi.matrix)
    if w[0] < -tol:
        raise ValueError(f"Choi matrix has negative eigenvalue {w[0]:.3e}; not completely positive")
    ops = [
        np.sqrt(lam) * vec.reshape(choi.d_a, choi.d_b).T
        for lam, vec in zip(w, v.T)
        if lam > tol
    ]
    if not ops:
        raise ValueError("Choi matrix has no eigenvalue above tolerance")
    return KrausChannel(np.array(ops))


def _dilation_ancilla(r: int, d_a: int, d_b: int) -> int:
    # smallest ancilla >= r whose dilated space carries the (d_b, env) layout
    # with room for r orthogonal environment records; r * d_b always works
    nu = r
    while (d_a * nu) % d_b != 0 or (d_a * nu) // d_b < r:
        nu += 1
    return nu


def dilation_dim(ch: Channel) -> int:
    """Dimension of the unitary the channel runs on once dilated.

    Sampling memory and time scale with this squared, so callers can budget
    before building anything.
    """
    if isinstance(ch, DilatedChannel):
        return ch.d_u
    if isinstance(ch, UnitaryChannel):
        return ch.d_a
    r, d_b, d_a = ch.operators.shape
    return d_a * _dilation_ancilla(r, d_a, d_b)


def stinespring_dilate(ch: Channel) -> DilatedChannel:
    """Unitary dilation of a channel with the ancilla in the first basis vector.

    For a KrausChannel with r operators the ancilla dimension is the smallest
    nu >= r such that the dilated space d_a * nu carries the (d_b, env)
    output layout, i.e. d_b divides d_a * nu and the environment can hold r
    orthogonal records. Columns U(|j> (x) |0>) = sum_k (M_k |j>) (x) |k> fix
    the action; the remaining columns are an arbitrary orthonormal
    completion, which does not affect the channel.
    """
    if isinstance(ch, DilatedChannel):
        return ch
    if isinstance(ch, UnitaryChannel):
        # already unitary: trivial ancilla of dimension 1
        return DilatedChannel(ch.unitary, d_a=ch.d_a, d_b=ch.d_b)
    ops = ch.operators
    r, d_b, d_a = ops.shape
    nu = _dilation_ancilla(r, d_a, d_b)
    d_u = d_a * nu
    d_env = d_u // d_b
    cols = np.zeros((d_b, d_env, d_a), dtype=complex)
    for k in range(r):
        cols[:, k, :] += ops[k]
    cols = cols.reshape(d_u, d_a)
    # cols already has orthonormal columns (trace preservation); QR is used
    # only for the orthogonal complement, the constructed columns go in as is.
    q = np.linalg.qr(cols, mode="complete")[0]
    complement = q[:, d_a:]
    u = np.zeros((d_u, d_u), dtype=complex)
    u[:, 0::nu] = cols  # input column j, ancilla |0>, at position j*nu
    rest = [c for c in range(d_u) if c % nu != 0]
    u[:, rest] = complement
    return DilatedChannel(u, d_a=d_a, d_b=d_b)


def validate_channel(ch: Channel) -> ChannelDiagnostics:
    """Numerical diagnostics: trace preservation, Choi positivity, unitarity."""
    ops = kraus_operators(ch)
    tp = hs_norm(np.einsum("kmi,kmj->ij", ops.conj(), ops) - np.eye(ch.d_a))
    choi = choi_matrix(ch)
    w = np.linalg.eigvalsh(choi.matrix)
    unit = None
    if isinstance(ch, (UnitaryChannel, DilatedChannel)):
        u = ch.unitary
        unit = hs_norm(u.conj().T @ u - np.eye(u.shape[0]))
    rank = int(np.sum(w > KRAUS_TOL_SCALE * ch.d_a))
    return ChannelDiagnostics(
        kind=kind_of(ch),
        d_a=ch.d_a,
        d_b=ch.d_b,
        tp_residual=float(tp),
        choi_min_eigenvalue=float(w[0]),
        choi_trace=float(np.trace(choi.matrix).real),
        unitarity_residual=None if unit is None else float(unit),
        kraus_rank=rank,
        choi_spectrum=w,
    )


# ---------------------------------------------------------------------------
# JSON channel specs
#
# {"kind": "kraus" | "unitary_induced" | "dilated",
#  "d_a": int, "d_b": int,
#  "matrices": [matrix, ...]}
#
# where each matrix is a list of rows and each entry is a [re, im] pair.
# kraus: one matrix per operator, each d_b x d_a. unitary_induced: a single
# d_a x d_a unitary. dilated: a single d_u x d_u unitary with d_a | d_u.
# ---------------------------------------------------------------------------


def _matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def _matrix_from_json(rows: list) -> np.ndarray:
    try:
        arr = np.array([[complex(re, im) for re, im in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix entry: {exc}") from exc
    if arr.ndim != 2:
        raise ValueError("matrix entries must form a rectangular table")
    return arr


def channel_to_dict(ch: Channel) -> dict:
    kind = kind_of(ch)
    if isinstance(ch, KrausChannel):
        matrices = [_matrix_to_json(m) for m in ch.operators]
    else:
        matrices = [_matrix_to_json(ch.unitary)]
    return {"kind": kind, "d_a": ch.d_a, "d_b": ch.d_b, "matrices": matrices}


def channel_from_dict(spec: dict) -> Channel:
    try:
        kind = spec["kind"]
        d_a = int(spec["d_a"])
        d_b = int(spec["d_b"])
        matrices = [_matrix_from_json(m) for m in spec["matrices"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed channel spec: {exc}") from exc
    if not matrices:
        raise ValueError("channel spec contains no matrices")
    if kind == "kraus":
        ops = np.array(matrices)
        if ops.shape[1:] != (d_b, d_a):
            raise ValueError(f"kraus operators must be d_b x d_a = {d_b} x {d_a}")
        return KrausChannel(ops)
    if kind == "unitary_induced":
        if len(matrices) != 1 or matrices[0].shape != (d_a, d_a):
            raise ValueError(f"unitary_induced spec needs a single {d_a} x {d_a} matrix")
        return UnitaryChannel(matrices[0], d_b=d_b)
    if kind == "dilated":
        if len(matrices) != 1:
            raise ValueError("dilated spec needs a single matrix")
        return DilatedChannel(matrices[0], d_a=d_a, d_b=d_b)
    raise ValueError(f"unknown channel kind {kind!r}")


def save_channel(ch: Channel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(channel_to_dict(ch), f, sort_keys=True)
        f.write("\n")


def load_channel(path: str) -> Channel:
    with open(path, "r", encoding="utf-8") as f:
        try:
            spec = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValueError(f"channel spec is not valid JSON: {exc}") from exc
    if not isinstance(spec, dict):
        raise ValueError("channel spec must be a JSON object")
    return channel_from_dict(spec)

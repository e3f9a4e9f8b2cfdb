"""Multiqubit pure states, density matrices, and the standard constructions.

Index convention: qubit labels are 1-based and qubit 1 is the most
significant bit of the flattened basis index, so the basis state
|i1 i2 ... iN> lives at index sum_k i_k * 2^(N - k).

Everything is dense. Pure states are capped at 16 qubits and density
matrices at 10; the BUNCHENT_MAX_QUBITS environment variable overrides
both caps with a single value.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import CapacityError, FileFormatError, InvariantError

MAX_MIXED_QUBITS = 10
MAX_PURE_QUBITS = 16
CAPACITY_ENV = "BUNCHENT_MAX_QUBITS"

_NORM_TOL = 1e-12
_HERMITIAN_TOL = 1e-10
_TRACE_TOL = 1e-10
_PSD_TOL = 1e-9


def capacity_caps() -> tuple[int, int]:
    """Return the (mixed, pure) qubit caps, honoring BUNCHENT_MAX_QUBITS."""
    raw = os.environ.get(CAPACITY_ENV)
    if raw is None:
        return MAX_MIXED_QUBITS, MAX_PURE_QUBITS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{CAPACITY_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{CAPACITY_ENV} must be positive, got {value}")
    return value, value


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _check_pure_cap(n_qubits: int) -> None:
    cap = capacity_caps()[1]
    if n_qubits > cap:
        raise CapacityError(
            f"pure state on {n_qubits} qubits exceeds the dense cap of {cap}"
        )


def _check_mixed_cap(n_qubits: int) -> None:
    cap = capacity_caps()[0]
    if n_qubits > cap:
        raise CapacityError(
            f"density matrix on {n_qubits} qubits exceeds the dense cap of {cap}"
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of n_qubits qubits as a flat amplitude vector.

    The amplitudes must already be normalized; use :func:`normalize` to
    build a state from a raw vector.
    """

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.n_qubits, int) or self.n_qubits < 1:
            raise ValueError(f"n_qubits must be a positive integer, got {self.n_qubits!r}")
        cap = capacity_caps()[1]
        if self.n_qubits > cap:
            raise CapacityError(
                f"pure state on {self.n_qubits} qubits exceeds the dense cap of {cap}"
            )
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != 2 ** self.n_qubits:
            raise ValueError(
                f"amplitude vector has length {amps.size}, expected {2 ** self.n_qubits}"
            )
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > _NORM_TOL:
            raise InvariantError(f"squared norm deviates from 1 by {abs(norm2 - 1.0):.3e}")
        object.__setattr__(self, "amplitudes", _freeze(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Mixed state of n_qubits qubits: Hermitian, trace one, positive semidefinite."""

    n_qubits: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.n_qubits, int) or self.n_qubits < 1:
            raise ValueError(f"n_qubits must be a positive integer, got {self.n_qubits!r}")
        cap = capacity_caps()[0]
        if self.n_qubits > cap:
            raise CapacityError(
                f"density matrix on {self.n_qubits} qubits exceeds the dense cap of {cap}"
            )
        mat = np.array(self.entries, dtype=np.complex128)
        d = 2 ** self.n_qubits
        if mat.shape != (d, d):
            raise ValueError(f"entries have shape {mat.shape}, expected {(d, d)}")
        herm = float(np.abs(mat - mat.conj().T).max())
        if herm > _HERMITIAN_TOL:
            raise InvariantError(f"not Hermitian: max asymmetry {herm:.3e}")
        tr = float(abs(mat.trace() - 1.0))
        if tr > _TRACE_TOL:
            raise InvariantError(f"trace deviates from 1 by {tr:.3e}")
        min_eig = float(np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))[0])
        if min_eig < -_PSD_TOL:
            raise InvariantError(f"not positive semidefinite: min eigenvalue {min_eig:.3e}")
        object.__setattr__(self, "entries", _freeze(mat))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class MixtureTerm:
    """One weighted pure component of a mixture."""

    weight: float
    state: StateVector

    def __post_init__(self) -> None:
        if not (0.0 < self.weight <= 1.0):
            raise ValueError(f"mixture weight must be in (0, 1], got {self.weight}")


def normalize(amplitudes) -> StateVector:
    """Rescale a raw amplitude vector to unit norm and wrap it as a state."""
    amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if amps.size < 2 or amps.size & (amps.size - 1):
        raise ValueError(f"amplitude vector length {amps.size} is not a power of two")
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return StateVector(int(math.log2(amps.size)), amps / norm)


def ket_basis(n_qubits: int, bits: Sequence[int]) -> StateVector:
    """Computational basis state |b1 b2 ... bn> with qubit 1 leftmost."""
    bits = tuple(int(b) for b in bits)
    if len(bits) != n_qubits:
        raise ValueError(f"got {len(bits)} bits for {n_qubits} qubits")
    _check_pure_cap(n_qubits)
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"bits must be 0 or 1, got {bits}")
    amps = np.zeros(2 ** n_qubits, dtype=np.complex128)
    index = 0
    for b in bits:
        index = 2 * index + b
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; the qubits of `a` become the most significant labels."""
    _check_pure_cap(a.n_qubits + b.n_qubits)
    return StateVector(a.n_qubits + b.n_qubits, np.kron(a.amplitudes, b.amplitudes))


def ghz(n_qubits: int) -> StateVector:
    """(|00...0> + |11...1>) / sqrt(2) on n_qubits >= 2 qubits."""
    if n_qubits < 2:
        raise ValueError(f"ghz needs at least 2 qubits, got {n_qubits}")
    _check_pure_cap(n_qubits)
    amps = np.zeros(2 ** n_qubits, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return StateVector(n_qubits, amps)


def bell_w_state(n_qubits: int, w: int) -> StateVector:
    """Two-branch state (|0..0 1..1> + |1..1 0..0>) / sqrt(2).

    The first branch has w leading zeros; the second is its bitwise
    complement. Requires 1 <= w < n_qubits.
    """
    if n_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {n_qubits}")
    if not (1 <= w < n_qubits):
        raise ValueError(f"w must satisfy 1 <= w < {n_qubits}, got {w}")
    _check_pure_cap(n_qubits)
    amps = np.zeros(2 ** n_qubits, dtype=np.complex128)
    lead = 2 ** (n_qubits - w) - 1
    amps[lead] = 1.0 / math.sqrt(2.0)
    amps[2 ** n_qubits - 1 - lead] = 1.0 / math.sqrt(2.0)
    return StateVector(n_qubits, amps)


def embedded_bell(m_total: int, subset: Sequence[int], w: int) -> StateVector:
    """Place the two-branch state on `subset` (ascending), rest in |0>.

    The k-th subset member receives the k-th bit of each branch, so the
    first w members carry 0 in the first branch and 1 in the second.
    """
    subset = tuple(int(s) for s in subset)
    n = len(subset)
    if n < 2:
        raise ValueError(f"subset needs at least 2 qubits, got {subset}")
    if list(subset) != sorted(set(subset)):
        raise ValueError(f"subset must be strictly ascending, got {subset}")
    if subset[0] < 1 or subset[-1] > m_total:
        raise ValueError(f"subset {subset} not contained in 1..{m_total}")
    if not (1 <= w < n):
        raise ValueError(f"w must satisfy 1 <= w < {n}, got {w}")
    _check_pure_cap(m_total)
    amps = np.zeros(2 ** m_total, dtype=np.complex128)
    for flip in (0, 1):
        index = 0
        for lab in range(1, m_total + 1):
            if lab in subset:
                bit = (0 if subset.index(lab) < w else 1) ^ flip
            else:
                bit = 0
            index = 2 * index + bit
        amps[index] = 1.0 / math.sqrt(2.0)
    return StateVector(m_total, amps)


def densify(psi: StateVector) -> DensityMatrix:
    """Rank-one density matrix |psi><psi|."""
    _check_mixed_cap(psi.n_qubits)
    amps = psi.amplitudes
    return DensityMatrix(psi.n_qubits, np.outer(amps, amps.conj()))


def mix(terms: Sequence[tuple[float, DensityMatrix]]) -> DensityMatrix:
    """Convex combination of density matrices on a common qubit count."""
    if not terms:
        raise ValueError("mix needs at least one term")
    weights = [float(w) for w, _ in terms]
    if any(w <= 0.0 for w in weights):
        raise ValueError(f"mixture weights must be positive, got {weights}")
    if abs(sum(weights) - 1.0) > 1e-12:
        raise ValueError(f"mixture weights sum to {sum(weights)!r}, expected 1")
    n = terms[0][1].n_qubits
    if any(rho.n_qubits != n for _, rho in terms):
        raise ValueError("all mixture terms must share the same qubit count")
    total = np.zeros_like(terms[0][1].entries)
    for w, rho in terms:
        total = total + w * rho.entries
    return DensityMatrix(n, total)


def entanglement_molecule(
    m_total: int, n: int, w: int, weights: Mapping[Sequence[int], float]
) -> DensityMatrix:
    """Mixture of embedded two-branch states over n-qubit subsets of 1..m_total.

    `weights` maps each ascending subset to its positive weight; the
    weights must sum to 1.
    """
    if not weights:
        raise ValueError("molecule needs at least one subset")
    _check_mixed_cap(m_total)
    terms: list[MixtureTerm] = []
    seen: set[tuple[int, ...]] = set()
    for subset, weight in weights.items():
        key = tuple(int(s) for s in subset)
        if len(key) != n:
            raise ValueError(f"subset {key} does not have {n} elements")
        if key in seen:
            raise ValueError(f"duplicate subset {key}")
        seen.add(key)
        terms.append(MixtureTerm(float(weight), embedded_bell(m_total, key, w)))
    if abs(sum(t.weight for t in terms) - 1.0) > 1e-12:
        raise ValueError("molecule weights must sum to 1")
    return mix([(t.weight, densify(t.state)) for t in terms])


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Trace out every qubit not listed in `keep` (ascending labels).

    The kept qubits preserve their relative order and are relabeled
    1..len(keep) in the result.
    """
    keep = tuple(int(k) for k in keep)
    if not keep:
        raise ValueError("keep list must not be empty")
    if list(keep) != sorted(set(keep)):
        raise ValueError(f"keep labels must be strictly ascending, got {keep}")
    n = rho.n_qubits
    if keep[0] < 1 or keep[-1] > n:
        raise ValueError(f"keep labels {keep} not contained in 1..{n}")
    kept = [k - 1 for k in keep]
    kept_set = set(kept)
    tens = rho.entries.reshape((2,) * (2 * n))
    subs = list(range(n)) + [n + q if q in kept_set else q for q in range(n)]
    out = kept + [n + q for q in kept]
    reduced = np.einsum(tens, subs, out)
    d = 2 ** len(keep)
    return DensityMatrix(len(keep), reduced.reshape(d, d))


# ---------------------------------------------------------------------------
# state files

def _complex_pairs(array: np.ndarray) -> list:
    stacked = np.stack([array.real, array.imag], axis=-1)
    return stacked.tolist()


def state_payload(state: StateVector | DensityMatrix) -> dict:
    """JSON-ready form of a state, with [re, im] pairs for every entry."""
    if isinstance(state, StateVector):
        return {
            "kind": "pure",
            "n_qubits": state.n_qubits,
            "amplitudes": _complex_pairs(state.amplitudes),
        }
    if isinstance(state, DensityMatrix):
        return {
            "kind": "mixed",
            "n_qubits": state.n_qubits,
            "matrix": _complex_pairs(state.entries),
        }
    raise ValueError(f"cannot serialize object of type {type(state).__name__}")


def save_state(state: StateVector | DensityMatrix, path) -> None:
    """Write a state to a JSON file."""
    payload = state_payload(state)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def read_state_file(path) -> tuple[str, int, np.ndarray]:
    """Parse a state file without enforcing state invariants.

    Returns (kind, n_qubits, array) where the array is the amplitude
    vector or the density matrix. Structural problems raise
    FileFormatError; invariants are checked by :func:`load_state`.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(payload, dict):
        raise FileFormatError(f"{path}: expected a JSON object at top level")
    kind = payload.get("kind")
    if kind not in ("pure", "mixed"):
        raise FileFormatError(f"{path}: kind must be 'pure' or 'mixed', got {kind!r}")
    field = "amplitudes" if kind == "pure" else "matrix"
    if field not in payload:
        raise FileFormatError(f"{path}: missing field {field!r}")
    try:
        raw = np.asarray(payload[field], dtype=np.float64)
    except (TypeError, ValueError):
        raise FileFormatError(f"{path}: field {field!r} is not a numeric array") from None
    expected_ndim = 2 if kind == "pure" else 3
    if raw.ndim != expected_ndim or raw.shape[-1] != 2:
        raise FileFormatError(f"{path}: field {field!r} has shape {raw.shape}")
    array = raw[..., 0] + 1j * raw[..., 1]
    size = array.shape[0]
    if kind == "mixed" and array.shape[0] != array.shape[1]:
        raise FileFormatError(f"{path}: matrix is not square: shape {array.shape}")
    n_qubits = payload.get("n_qubits")
    if n_qubits is None:
        if size < 2 or size & (size - 1):
            raise FileFormatError(f"{path}: dimension {size} is not a power of two")
        n_qubits = int(math.log2(size))
    elif not isinstance(n_qubits, int) or n_qubits < 1:
        raise FileFormatError(f"{path}: n_qubits must be a positive integer")
    return kind, n_qubits, array


def load_state(path) -> StateVector | DensityMatrix:
    """Load and validate a state file written by :func:`save_state`."""
    kind, n_qubits, array = read_state_file(path)
    if kind == "pure":
        return StateVector(n_qubits, array)
    return DensityMatrix(n_qubits, array)

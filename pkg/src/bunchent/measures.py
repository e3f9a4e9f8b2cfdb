"""Two-qubit entanglement measures applied to bunch reductions.

Concurrence follows the spin-flip construction: with rt = sqrt(rho), the
descending square roots l1 >= l2 >= l3 >= l4 of the eigenvalues of
rt @ flipped(rho) @ rt give C = max(0, l1 - l2 - l3 - l4), and the
entanglement of formation is h((1 + sqrt(1 - C^2)) / 2) with h the binary
entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bunching import BunchPartition, bunch_reduce, enumerate_partitions
from .errors import InvariantError
from .linalg import diagnose_density, hermitian_eig
from .states import DensityMatrix

_INPUT_EIG_FLOOR = 1e-10   # most negative input eigenvalue tolerated
_CHAIN_EIG_FLOOR = 1e-14   # clamp threshold inside the sqrt chain

# sigma_y (x) sigma_y; real because the i factors cancel pairwise
_SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ],
    dtype=np.complex128,
)


@dataclass(frozen=True, eq=False)
class EntanglementReport:
    """Concurrence, entanglement of formation and the spin-flip spectrum,
    optionally tagged with the partition and pattern weights it came from."""

    concurrence: float
    eof: float
    lambdas: tuple[float, float, float, float]
    partition: BunchPartition | None = None
    etas: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not (0.0 <= self.concurrence <= 1.0):
            raise ValueError(f"concurrence {self.concurrence} outside [0, 1]")
        if list(self.lambdas) != sorted(self.lambdas, reverse=True):
            raise ValueError(f"lambdas must be descending, got {self.lambdas}")
        expected = binary_entropy((1.0 + math.sqrt(max(0.0, 1.0 - self.concurrence**2))) / 2.0)
        if abs(self.eof - expected) > 1e-12:
            raise ValueError(f"eof {self.eof} inconsistent with concurrence {self.concurrence}")


def binary_entropy(x: float) -> float:
    """Binary entropy h(x) in bits, with h(0) = h(1) = 0."""
    x = float(x)
    if x < -1e-12 or x > 1.0 + 1e-12:
        raise ValueError(f"entropy argument {x} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    total = 0.0
    for t in (x, 1.0 - x):
        if t > 1e-300:
            total -= t * math.log2(t)
    return total


def _as_two_qubit(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        if rho.n_qubits != 2:
            raise ValueError(f"expected a two-qubit state, got {rho.n_qubits} qubits")
        return np.asarray(rho.entries)
    mat = np.asarray(rho, dtype=np.complex128)
    if mat.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {mat.shape}")
    diag = diagnose_density(mat)
    if diag.hermiticity_defect > 1e-10:
        raise InvariantError(f"not Hermitian: max asymmetry {diag.hermiticity_defect:.3e}")
    if diag.trace_defect > 1e-10:
        raise InvariantError(f"trace deviates from 1 by {diag.trace_defect:.3e}")
    if diag.min_eigenvalue < -_INPUT_EIG_FLOOR:
        raise InvariantError(
            f"not positive semidefinite: min eigenvalue {diag.min_eigenvalue:.3e}"
        )
    return mat


def spin_flip(rho) -> np.ndarray:
    """Spin-flipped companion (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y)."""
    mat = np.asarray(getattr(rho, "entries", rho), dtype=np.complex128)
    if mat.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {mat.shape}")
    return _SPIN_FLIP @ mat.conj() @ _SPIN_FLIP


def _spin_flip_spectrum(mat: np.ndarray) -> tuple[float, ...]:
    eig = hermitian_eig(mat)
    vals = np.where(eig.eigenvalues < _CHAIN_EIG_FLOOR, 0.0, eig.eigenvalues)
    root = (eig.eigenvectors * np.sqrt(vals)) @ eig.eigenvectors.conj().T
    chained = root @ spin_flip(mat) @ root
    chained = 0.5 * (chained + chained.conj().T)
    squares = hermitian_eig(chained).eigenvalues
    # the same floor as above: rounding residue must not leak into the
    # lambdas, where its square root would dominate small concurrences
    squares = np.where(squares < _CHAIN_EIG_FLOOR, 0.0, squares)
    return tuple(float(v) for v in np.sqrt(squares))


def concurrence(rho) -> float:
    """Concurrence of a two-qubit density matrix (DensityMatrix or 4x4 array)."""
    lam = _spin_flip_spectrum(_as_two_qubit(rho))
    return max(0.0, min(1.0, lam[0] - lam[1] - lam[2] - lam[3]))


def _report(
    mat: np.ndarray,
    partition: BunchPartition | None = None,
    etas: tuple[float, ...] | None = None,
) -> EntanglementReport:
    lam = _spin_flip_spectrum(mat)
    conc = max(0.0, min(1.0, lam[0] - lam[1] - lam[2] - lam[3]))
    formation = binary_entropy((1.0 + math.sqrt(max(0.0, 1.0 - conc * conc))) / 2.0)
    return EntanglementReport(conc, formation, lam, partition, etas)


def eof(rho) -> EntanglementReport:
    """Entanglement report for a two-qubit density matrix."""
    return _report(_as_two_qubit(rho))


def eof_bunches(rho: DensityMatrix, partition: BunchPartition) -> EntanglementReport:
    """Reduce onto a bunch pair and measure the resulting two-qubit state."""
    reduction = bunch_reduce(rho, partition)
    return _report(np.asarray(reduction.rho_ab.entries), partition, reduction.etas)


def survey(
    rho: DensityMatrix, max_bunch: int | None = None, full_cover: bool = False
) -> list[EntanglementReport]:
    """Measure every bunch pair of a state, in enumeration order."""
    return [
        eof_bunches(rho, partition)
        for partition in enumerate_partitions(rho.n_qubits, max_bunch, full_cover)
    ]


# ---------------------------------------------------------------------------
# report serialization

def format_float(x: float) -> str:
    """Decimal form with 12 significant digits."""
    return f"{float(x):.12g}"


def _join_labels(labels: tuple[int, ...]) -> str:
    return "-".join(str(x) for x in labels)


def report_json_dict(report: EntanglementReport) -> dict:
    """JSON-ready form of one report, floats rounded to 12 significant digits."""
    payload: dict = {
        "concurrence": float(format_float(report.concurrence)),
        "eof": float(format_float(report.eof)),
        "lambdas": [float(format_float(v)) for v in report.lambdas],
    }
    if report.partition is not None:
        payload["bunch_a"] = list(report.partition.bunch_a)
        payload["bunch_b"] = list(report.partition.bunch_b)
    if report.etas is not None:
        payload["etas"] = [float(format_float(v)) for v in report.etas]
    return payload


def survey_csv(reports: list[EntanglementReport]) -> str:
    """CSV table of survey results.

    Bunches are dash-joined label runs and eta_list is semicolon-joined,
    so every row stays a flat comma-separated record.
    """
    lines = ["bunch_a,bunch_b,m,n,concurrence,eof,eta_list"]
    for rep in reports:
        if rep.partition is None or rep.etas is None:
            raise ValueError("survey rows need partition context")
        lines.append(
            ",".join(
                [
                    _join_labels(rep.partition.bunch_a),
                    _join_labels(rep.partition.bunch_b),
                    str(rep.partition.m),
                    str(rep.partition.n),
                    format_float(rep.concurrence),
                    format_float(rep.eof),
                    ";".join(format_float(e) for e in rep.etas),
                ]
            )
        )
    return "\n".join(lines) + "\n"

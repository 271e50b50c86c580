"""Register Hamiltonian assembly and its exact 2x2 block decomposition.

The register is (probe ancilla) x (tag ancilla) x (n system qubits) with the
probe most significant: basis index a1*2^(n+1) + a2*2^n + s.  The assembled
operator is

    H = -1/2 sz (x) I  +  I (x) H_R  +  c sx (x) sx (x) I_N,
    H_R = eps0 |0><0| (x) I_N  +  |1><1| (x) H_S.

Restricted to span{|00 chi_j>, |11 chi_j>} it decouples into 2x2 blocks
[[eps0 - 1/2, c], [c, 1/2 + E_j]]; cooling runs sit on the resonance
eps0 = E_1 + 1, where the j = 1 block has equal diagonal entries.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import pi

import numpy as np

from .linalg import (
    DimensionMismatch,
    EigenSystem,
    kron_all,
    require_hermitian,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PROJ_0 = np.diag([1.0, 0.0]).astype(complex)
PROJ_1 = np.diag([0.0, 1.0]).astype(complex)

RESONANCE_ATOL = 1e-9


class OffResonanceConfig(UserWarning):
    """Reference eigenvalue is not on the cooling resonance eps0 = E_1 + 1."""


@dataclass(frozen=True)
class SystemModel:
    """A Hermitian system Hamiltonian on n qubits."""

    n_qubits: int
    h_s: np.ndarray
    label: str = ""

    def __post_init__(self):
        if self.n_qubits < 1:
            raise DimensionMismatch("system needs at least one qubit")
        h = require_hermitian(self.h_s)
        if h.shape[0] != 2**self.n_qubits:
            raise DimensionMismatch(
                f"h_s is {h.shape[0]}-dimensional, expected 2^{self.n_qubits}"
            )
        object.__setattr__(self, "h_s", h)

    @property
    def dimension(self) -> int:
        return 2**self.n_qubits


@dataclass
class AlgorithmConfig:
    """Cooling-run parameters.

    tau defaults to pi/(2*coupling), the half period of the resonant
    transfer.  trotter_steps = 0 selects the exact propagator.  omega is the
    probe splitting and is fixed at 1; it is a field only so reports can
    echo it.  max_iterations counts the consecutive excited outcomes the run
    must collect; restart_cap bounds how many failed attempts a stochastic
    run may discard before giving up.
    """

    epsilon0: float
    coupling: float
    tau: float | None = None
    trotter_steps: int = 0
    omega: float = 1.0
    max_iterations: int = 1
    seed: int = 0
    mode: str = "post-selected"
    restart_cap: int = 1000
    strict_resonance: bool = False

    def __post_init__(self):
        if self.coupling <= 0:
            raise ValueError(f"coupling must be positive, got {self.coupling}")
        if self.tau is None:
            self.tau = pi / (2.0 * self.coupling)
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if self.omega != 1.0:
            raise ValueError("the probe splitting is fixed at omega = 1")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.restart_cap < 0:
            raise ValueError("restart_cap must be >= 0")
        if self.mode not in ("stochastic", "post-selected"):
            raise ValueError(f"unknown mode {self.mode!r}")


def assemble_hamiltonian(h_s: np.ndarray, epsilon0: float, coupling: float) -> np.ndarray:
    """Full register Hamiltonian from raw pieces; coupling may be zero."""
    h = require_hermitian(h_s)
    n_dim = h.shape[0]
    eye_n = np.eye(n_dim, dtype=complex)
    eye_2n = np.eye(2 * n_dim, dtype=complex)
    h_r = np.kron(PROJ_0, epsilon0 * eye_n) + np.kron(PROJ_1, h)
    full = (
        np.kron(-0.5 * SIGMA_Z, eye_2n)
        + np.kron(np.eye(2, dtype=complex), h_r)
        + coupling * kron_all(SIGMA_X, SIGMA_X, eye_n)
    )
    return full


def build_algorithm_hamiltonian(model: SystemModel, config: AlgorithmConfig) -> np.ndarray:
    """Assemble the 2^(n+2)-dimensional register Hamiltonian for a run."""
    if model.h_s.shape[0] != 2**model.n_qubits:
        raise DimensionMismatch("system matrix does not match the qubit count")
    return assemble_hamiltonian(model.h_s, config.epsilon0, config.coupling)


def split_parts(model: SystemModel, config: AlgorithmConfig) -> tuple[np.ndarray, np.ndarray]:
    """The (diagonal-in-energy, coupling) splitting used by Trotterization.

    part_a collects the two commuting energy terms, part_b the transverse
    coupling; part_a + part_b equals build_algorithm_hamiltonian.
    """
    n_dim = model.dimension
    eye_n = np.eye(n_dim, dtype=complex)
    eye_2n = np.eye(2 * n_dim, dtype=complex)
    h_r = np.kron(PROJ_0, config.epsilon0 * eye_n) + np.kron(PROJ_1, model.h_s)
    part_a = np.kron(-0.5 * SIGMA_Z, eye_2n) + np.kron(np.eye(2, dtype=complex), h_r)
    part_b = config.coupling * kron_all(SIGMA_X, SIGMA_X, eye_n)
    return part_a, part_b


def extract_blocks(spectrum: EigenSystem, config: AlgorithmConfig) -> list[np.ndarray]:
    """Per-eigenstate 2x2 blocks [[eps0 - 1/2, c], [c, 1/2 + E_j]].

    The block basis is {|00 chi_j>, |11 chi_j>}.  When strict_resonance is
    set, a reference eigenvalue off the ground resonance raises an
    OffResonanceConfig warning rather than an error: the sweep deliberately
    scans through off-resonant values.
    """
    e_vals = np.asarray(spectrum.eigenvalues, dtype=float)
    if config.strict_resonance:
        miss = abs(config.epsilon0 - e_vals[0] - 1.0)
        if miss > RESONANCE_ATOL:
            warnings.warn(
                f"epsilon0 - E_1 - 1 = {config.epsilon0 - e_vals[0] - 1.0:.3e}",
                OffResonanceConfig,
                stacklevel=2,
            )
    blocks = []
    for e_j in e_vals:
        blocks.append(
            np.array(
                [
                    [config.epsilon0 - 0.5, config.coupling],
                    [config.coupling, 0.5 + e_j],
                ],
                dtype=complex,
            )
        )
    return blocks


def resonance_reference(e1: float) -> float:
    """Reference eigenvalue that puts the ground transition on resonance."""
    return e1 + 1.0


def load_matrix_file(path: str) -> np.ndarray:
    """Read a matrix file: header "dim N", then N rows of N "re,im" tokens."""
    with open(path, encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("dim "):
        raise ValueError(f"{path}: missing 'dim N' header")
    try:
        n_dim = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ValueError(f"{path}: bad dimension header {lines[0]!r}") from exc
    if len(lines) - 1 != n_dim:
        raise ValueError(f"{path}: expected {n_dim} rows, found {len(lines) - 1}")
    out = np.zeros((n_dim, n_dim), dtype=complex)
    for i, ln in enumerate(lines[1:]):
        tokens = ln.split()
        if len(tokens) != n_dim:
            raise ValueError(f"{path}: row {i} has {len(tokens)} entries, expected {n_dim}")
        for j, tok in enumerate(tokens):
            try:
                re_s, im_s = tok.split(",")
                out[i, j] = complex(float(re_s), float(im_s))
            except ValueError as exc:
                raise ValueError(f"{path}: bad entry {tok!r} at row {i}, col {j}") from exc
    return out


def save_matrix_file(path: str, matrix: np.ndarray) -> None:
    """Write a matrix in the load_matrix_file format."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"matrix file needs a square matrix, got {m.shape}")
    rows = [f"dim {m.shape[0]}"]
    for i in range(m.shape[0]):
        rows.append(" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in m[i]))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(rows) + "\n")

"""Operator algebra and state construction for N two-level emitters.

Basis convention, fixed globally: the full space is the tensor product of
two-level factors with emitter 1 as the most significant qubit, and |e⟩
ordered before |g⟩ within each factor.  For N=2 the basis is therefore
(|ee⟩, |eg⟩, |ge⟩, |gg⟩) at indices (0, 1, 2, 3).

Single-excitation collective states for an emitter pair (φ the
emitter-emitter coupling phase):

    |±φ⟩  = (|eg⟩ + e^{±iφ}|ge⟩)/√2
    |π±φ⟩ = (|eg⟩ − e^{∓iφ}|ge⟩)/√2
    |±⟩   = (|eg⟩ ± |ge⟩)/√2

The sign pairing of the |π±φ⟩ states is fixed by the directional-decay
requirement: |π+φ⟩ is annihilated by the left-going field operator (it
emits only to the right) and is orthogonal to |−φ⟩; |π−φ⟩ emits only to
the left and is orthogonal to |+φ⟩.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SizeLimitError

MAX_EMITTERS = 12  # dense 2^N matrices; guard against accidental blow-up

_SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |g⟩⟨e|
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)

COLLECTIVE_KINDS = (
    "plus_phi", "minus_phi", "pi_plus_phi", "pi_minus_phi",
    "plus", "minus", "eg", "ge", "ee", "gg",
)


def _check_n(n_emitters):
    if n_emitters < 1:
        raise ValueError(f"need at least one emitter, got {n_emitters}")
    if n_emitters > MAX_EMITTERS:
        raise SizeLimitError(
            f"{n_emitters} emitters exceeds the dense-matrix guard "
            f"(N <= {MAX_EMITTERS})")


def _embed(op, n_emitters, m):
    """Tensor-embed a single-emitter operator at (1-indexed) position m."""
    _check_n(n_emitters)
    if not 1 <= m <= n_emitters:
        raise ValueError(f"emitter index {m} out of range 1..{n_emitters}")
    out = np.array([[1.0 + 0.0j]])
    for k in range(1, n_emitters + 1):
        out = np.kron(out, op if k == m else _I2)
    return out


def identity(n_emitters):
    _check_n(n_emitters)
    return np.eye(2 ** n_emitters, dtype=complex)


def lowering_operator(n_emitters, m):
    """σ⁻ of emitter m embedded in the N-emitter space."""
    return _embed(_SIGMA_MINUS, n_emitters, m)


def raising_operator(n_emitters, m):
    return _embed(_SIGMA_MINUS.conj().T, n_emitters, m)


def number_operator(n_emitters, m):
    """σ⁺σ⁻ of emitter m (excited-state projector)."""
    return _embed(_SIGMA_MINUS.conj().T @ _SIGMA_MINUS, n_emitters, m)


def pauli_z(n_emitters, m):
    return _embed(_SIGMA_Z, n_emitters, m)


def basis_index(labels):
    """Index of a product basis state given per-emitter labels, e.g. 'eg'."""
    idx = 0
    for c in labels:
        if c not in "eg":
            raise ValueError(f"labels must consist of 'e'/'g', got {labels!r}")
        idx = 2 * idx + (0 if c == "e" else 1)
    return idx


def basis_ket(labels):
    """Product state vector, e.g. basis_ket('eg') for emitter 1 excited."""
    dim = 2 ** len(labels)
    v = np.zeros(dim, dtype=complex)
    v[basis_index(labels)] = 1.0
    return v


@dataclass(frozen=True)
class CollectiveStateSpec:
    """A named single-excitation (or product) state of an emitter pair."""
    kind: str
    phi: float = 0.0

    def __post_init__(self):
        if self.kind not in COLLECTIVE_KINDS:
            raise ValueError(
                f"unknown collective state {self.kind!r}; "
                f"expected one of {COLLECTIVE_KINDS}")


def collective_state(spec, phi=None):
    """Return the unit vector for a CollectiveStateSpec (or kind string).

    N=2 only; components are ordered over (|ee⟩, |eg⟩, |ge⟩, |gg⟩).
    """
    if isinstance(spec, str):
        spec = CollectiveStateSpec(spec, 0.0 if phi is None else phi)
    kind, ph = spec.kind, spec.phi
    s = 1.0 / np.sqrt(2.0)
    if kind == "plus_phi":
        v = [0.0, s, s * np.exp(1j * ph), 0.0]
    elif kind == "minus_phi":
        v = [0.0, s, s * np.exp(-1j * ph), 0.0]
    elif kind == "pi_plus_phi":
        v = [0.0, s, -s * np.exp(-1j * ph), 0.0]
    elif kind == "pi_minus_phi":
        v = [0.0, s, -s * np.exp(1j * ph), 0.0]
    elif kind == "plus":
        v = [0.0, s, s, 0.0]
    elif kind == "minus":
        v = [0.0, s, -s, 0.0]
    else:
        return basis_ket(kind)
    return np.array(v, dtype=complex)


class DensityState:
    """Dense density operator for N emitters with invariant checks.

    Invariants (see :meth:`validate`): Hermitian within 1e-10, unit trace
    within 1e-9, eigenvalues above −1e-8.  Positivity is checked, never
    enforced by projection, so integrator defects surface instead of being
    hidden.
    """

    HERMITICITY_TOL = 1e-10
    TRACE_TOL = 1e-9
    EIGENVALUE_FLOOR = -1e-8

    def __init__(self, matrix, validate=True):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("density matrix must be square")
        dim = matrix.shape[0]
        n = dim.bit_length() - 1
        if 2 ** n != dim:
            raise ValueError(f"dimension {dim} is not a power of 2")
        _check_n(n)
        self.matrix = matrix
        self.dim = dim
        self.n_emitters = n
        if validate:
            self.validate()

    @classmethod
    def from_ket(cls, ket):
        ket = np.asarray(ket, dtype=complex)
        ket = ket / np.linalg.norm(ket)
        return cls(np.outer(ket, ket.conj()))

    def validate(self):
        m = self.matrix
        herm = np.max(np.abs(m - m.conj().T))
        if herm > self.HERMITICITY_TOL:
            raise ValueError(f"not Hermitian: max |ρ − ρ†| = {herm:.3e}")
        tr = np.trace(m).real
        if abs(tr - 1.0) > self.TRACE_TOL:
            raise ValueError(f"trace {tr!r} deviates from 1 beyond tolerance")
        evals = np.linalg.eigvalsh((m + m.conj().T) / 2)
        if evals.min() < self.EIGENVALUE_FLOOR:
            raise ValueError(
                f"negative eigenvalue {evals.min():.3e} below floor "
                f"{self.EIGENVALUE_FLOOR}")
        return self

    def expectation(self, op):
        """⟨op⟩ = Tr(op ρ)."""
        return complex(np.trace(np.asarray(op) @ self.matrix))

    def copy(self):
        return DensityState(self.matrix.copy(), validate=False)

"""Dense N-qubit Pauli algebra, states, and basis-index helpers.

Conventions used throughout the package:

* Site 1 is the *most significant* tensor factor: the basis ket
  ``|b_1 b_2 ... b_N>`` has integer index ``sum_k b_k * 2**(N-k)``.
* ``|0>`` is the +1 eigenstate of Z, so Z = diag(1, -1).
* A Pauli word carries a unit phase in {+1, -1, +i, -i}; products
  accumulate phases via the standard single-site table (XY = iZ and
  cyclic permutations).

Everything here is an immutable value; all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_QUBITS = 12

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-8
NORM_TOL = 1e-12

PHASES = (1 + 0j, -1 + 0j, 1j, -1j)

_PHASE_LABEL = {1 + 0j: "+", -1 + 0j: "-", 1j: "+i", -1j: "-i"}

_SIGN_TOKENS = {
    "": 1 + 0j,
    "+": 1 + 0j,
    "+1": 1 + 0j,
    "1": 1 + 0j,
    "-": -1 + 0j,
    "-1": -1 + 0j,
    "i": 1j,
    "+i": 1j,
    "-i": -1j,
}

_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# (a, b) -> (phase, letter) for the single-site product a*b.
_PRODUCT = {
    ("X", "Y"): (1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("Y", "X"): (-1j, "Z"),
    ("Z", "Y"): (-1j, "X"),
    ("X", "Z"): (-1j, "Y"),
}


class ConfigError(ValueError):
    """Malformed user-supplied input (text, config files, CLI values)."""


class NumericalError(RuntimeError):
    """A numerical invariant was violated beyond tolerance."""


def _canonical_phase(phase: complex) -> complex:
    phase = complex(phase)
    for unit in PHASES:
        if abs(phase - unit) < 1e-12:
            return unit
    raise ConfigError(f"phase must be one of +1, -1, +i, -i, got {phase!r}")


@dataclass(frozen=True)
class PauliString:
    """A signed Pauli word: ``phase * L_1 (x) L_2 (x) ... (x) L_N``."""

    phase: complex
    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", _canonical_phase(self.phase))
        letters = tuple(self.letters)
        if len(letters) < 1:
            raise ConfigError("Pauli word must act on at least one site")
        for letter in letters:
            if letter not in "IXYZ":
                raise ConfigError(f"invalid Pauli letter {letter!r}")
        object.__setattr__(self, "letters", letters)

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def is_identity_word(self) -> bool:
        """True when every letter is I (the phase may still be nontrivial)."""
        return all(letter == "I" for letter in self.letters)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return pauli_product(self, other)

    def __str__(self) -> str:
        return _PHASE_LABEL[self.phase] + "".join(self.letters)


def parse_pauli(text, n: int) -> PauliString:
    """Parse a Pauli word from text like ``"-YYZ"`` or from (letter, site) pairs.

    Accepted forms:

    * a string: optional sign token (``+``, ``-``, ``+i``, ``-i``) followed
      by exactly ``n`` letters from {I, X, Y, Z};
    * a mapping ``{"sign": "-1", "word": "YYZ"}``;
    * a sequence of ``(letter, site)`` pairs with 1-based sites; unlisted
      sites are I.
    """
    if n < 1:
        raise ConfigError(f"register size must be >= 1, got {n}")
    if isinstance(text, PauliString):
        if text.n != n:
            raise ConfigError(f"Pauli word has {text.n} sites, expected {n}")
        return text
    if isinstance(text, dict):
        sign = str(text.get("sign", "+"))
        word = str(text.get("word", ""))
        return parse_pauli(sign + word, n)
    if isinstance(text, str):
        body = text.strip()
        phase = 1 + 0j
        for token in ("+i", "-i", "+", "-"):
            if body.startswith(token):
                phase = _SIGN_TOKENS[token]
                body = body[len(token):]
                break
        body = body.upper()
        if len(body) != n:
            raise ConfigError(
                f"expected {n} Pauli letters, got {len(body)} in {text!r}"
            )
        if any(ch not in "IXYZ" for ch in body):
            raise ConfigError(f"malformed Pauli word {text!r}")
        return PauliString(phase, tuple(body))
    # (letter, site) pairs
    letters = ["I"] * n
    seen: set[int] = set()
    try:
        pairs = [(str(letter), int(site)) for letter, site in text]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"cannot parse Pauli word from {text!r}") from exc
    for letter, site in pairs:
        letter = letter.upper()
        if letter not in "IXYZ":
            raise ConfigError(f"invalid Pauli letter {letter!r}")
        if not 1 <= site <= n:
            raise ConfigError(f"site {site} out of range 1..{n}")
        if site in seen:
            raise ConfigError(f"duplicate site {site}")
        seen.add(site)
        letters[site - 1] = letter
    return PauliString(1 + 0j, tuple(letters))


def pauli_product(a: PauliString, b: PauliString) -> PauliString:
    """Operator product a*b with the accumulated phase."""
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")
    phase = a.phase * b.phase
    letters = []
    for la, lb in zip(a.letters, b.letters):
        if la == "I":
            letters.append(lb)
        elif lb == "I":
            letters.append(la)
        elif la == lb:
            letters.append("I")
        else:
            extra, letter = _PRODUCT[(la, lb)]
            phase *= extra
            letters.append(letter)
    return PauliString(phase, tuple(letters))


def commutes(a: PauliString, b: PauliString) -> bool:
    """True if the two words commute (phases are irrelevant)."""
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")
    odd = sum(
        1
        for la, lb in zip(a.letters, b.letters)
        if la != "I" and lb != "I" and la != lb
    )
    return odd % 2 == 0


def _check_register_size(n: int) -> None:
    if n < 1:
        raise ValueError(f"register size must be >= 1, got {n}")
    if n > MAX_QUBITS:
        raise ValueError(
            f"register size {n} exceeds the dense-matrix cap of {MAX_QUBITS}"
        )


def realize(op: PauliString, n: int | None = None) -> np.ndarray:
    """Dense 2^n x 2^n matrix of a Pauli word (site 1 = leftmost kron factor)."""
    if n is None:
        n = op.n
    if op.n != n:
        raise ValueError(f"Pauli word has {op.n} sites, expected {n}")
    _check_register_size(n)
    out = np.array([[op.phase]], dtype=complex)
    for letter in op.letters:
        out = np.kron(out, _MATRICES[letter])
    return out


def site_bits(index: int, n: int) -> tuple[int, ...]:
    """Bits (b_1, ..., b_n) of a basis index, site 1 first.

    This is the one canonical index <-> bit-string conversion; every
    ordering-sensitive helper goes through it.
    """
    if not 0 <= index < 2**n:
        raise ValueError(f"basis index {index} out of range for n={n}")
    return tuple((index >> (n - k)) & 1 for k in range(1, n + 1))


def magnetization(basis_index: int, n: int) -> int:
    """Eigenvalue of sum_k Z_k on a basis ket: (#zeros) - (#ones)."""
    if not 0 <= basis_index < 2**n:
        raise ValueError(f"basis index {basis_index} out of range for n={n}")
    return n - 2 * int(basis_index).bit_count()


def hamming(i: int, j: int, n: int | None = None) -> int:
    """Number of bit positions where two basis indices differ."""
    if i < 0 or j < 0:
        raise ValueError("basis indices must be non-negative")
    if n is not None and (i >= 2**n or j >= 2**n):
        raise ValueError(f"basis index out of range for n={n}")
    return int(i ^ j).bit_count()


@dataclass(frozen=True)
class PureState:
    """Normalized state vector over 2^N basis kets."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        size = amps.size
        n = size.bit_length() - 1
        if size < 2 or 2**n != size:
            raise ValueError(f"amplitude vector length {size} is not a power of 2")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise NumericalError(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def overlap(self, other: "PureState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "PureState") -> float:
        """|<a|b>|^2, insensitive to global phase."""
        return abs(self.overlap(other)) ** 2


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite 2^N x 2^N matrix."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        rho = np.array(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {rho.shape}")
        dim = rho.shape[0]
        n = dim.bit_length() - 1
        if dim < 2 or 2**n != dim:
            raise ValueError(f"dimension {dim} is not a power of 2")
        herm = float(np.max(np.abs(rho - rho.conj().T)))
        if herm > HERMITICITY_TOL:
            raise NumericalError(f"Hermiticity violation {herm:.3e} > {HERMITICITY_TOL}")
        trace = complex(np.trace(rho))
        if abs(trace - 1.0) > TRACE_TOL:
            raise NumericalError(f"trace {trace} deviates from 1 beyond {TRACE_TOL}")
        lowest = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2).min())
        if lowest < -POSITIVITY_TOL:
            raise NumericalError(f"negative eigenvalue {lowest:.3e} < -{POSITIVITY_TOL}")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def n(self) -> int:
        return self.entries.shape[0].bit_length() - 1

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_pure(cls, state: PureState) -> "DensityMatrix":
        return state.density()

    @classmethod
    def maximally_mixed(cls, n: int) -> "DensityMatrix":
        _check_register_size(n)
        dim = 2**n
        return cls(np.eye(dim, dtype=complex) / dim)


def expectation(op: np.ndarray, rho: DensityMatrix) -> float:
    """Tr(op * rho) for a Hermitian operator, returned as a real number."""
    matrix = rho.entries
    if op.shape != matrix.shape:
        raise ValueError(f"dimension mismatch: {op.shape} vs {matrix.shape}")
    value = complex(np.trace(op @ matrix))
    if abs(value.imag) > HERMITICITY_TOL:
        raise NumericalError(
            f"expectation has imaginary residue {value.imag:.3e}; "
            "operator is not Hermitian on this state"
        )
    return float(value.real)


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2); 1 for pure states, 1/2^N for the maximally mixed state."""
    matrix = rho.entries
    return float(np.sum(np.abs(matrix) ** 2).real)

"""Binary quadratic models with exact rational coefficients.

Two equivalent forms are supported:

* QUBO over binary variables ``s_i in {0, 1}``::

      E(s) = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i

* Ising over spin variables ``sigma_i in {-1, +1}``, plus a constant offset.

The substitution ``sigma_i = 2 s_i - 1`` maps one onto the other. All
coefficients are stored as :class:`fractions.Fraction`, so conversions and
energy evaluations are exact and every equivalence check in the test suite
is a plain equality, with no tolerances. The substitution only ever
introduces denominators 2 and 4.

Quadratic terms are stored once per unordered pair, keyed in label order,
matching the ``i < j`` sum above.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "BitVector",
    "VarKind",
    "VarLabel",
    "QuboModel",
    "IsingModel",
    "Spectrum",
    "qubo_energy",
    "ising_energy",
    "qubo_to_ising",
    "ising_to_qubo",
    "exhaustive_solve",
    "EXHAUSTIVE_CAP",
]

# Exhaustive enumeration walks all 2^n assignments; the cap is a guard
# against accidentally asking for 2^512 of them.
EXHAUSTIVE_CAP = 24


class BitVector:
    """Immutable fixed-length sequence of 0/1 values.

    Index ``k`` holds bit ``k`` of the corresponding integer, i.e. index 0
    is the least significant bit.
    """

    __slots__ = ("_bits", "_value")

    def __init__(self, bits: Iterable[int]):
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"bits must be 0 or 1, got {bits!r}")
        self._bits = bits
        self._value = sum(b << k for k, b in enumerate(bits))

    @classmethod
    def from_integer(cls, value: int, n: int) -> "BitVector":
        """Bits of ``value`` in LSB-first order, padded/truncated to length ``n``."""
        if value < 0:
            raise ValueError("value must be non-negative")
        if value >> n:
            raise ValueError(f"value {value} does not fit in {n} bits")
        return cls._trusted(tuple((value >> k) & 1 for k in range(n)), value)

    @classmethod
    def _trusted(cls, bits: tuple[int, ...], value: int) -> "BitVector":
        # Internal fast path: caller guarantees bits are 0/1 and value matches.
        bv = object.__new__(cls)
        bv._bits = bits
        bv._value = value
        return bv

    def to_integer(self) -> int:
        return self._value

    @property
    def bits(self) -> tuple[int, ...]:
        return self._bits

    def popcount(self) -> int:
        return self._value.bit_count()

    def __xor__(self, other: "BitVector") -> "BitVector":
        if not isinstance(other, BitVector):
            return NotImplemented
        if len(other) != len(self):
            raise ValueError(
                f"length mismatch: {len(self)} vs {len(other)} bits"
            )
        return BitVector.from_integer(self._value ^ other._value, len(self))

    def __len__(self) -> int:
        return len(self._bits)

    def __getitem__(self, k):
        return self._bits[k]

    def __iter__(self) -> Iterator[int]:
        return iter(self._bits)

    def __eq__(self, other) -> bool:
        if isinstance(other, BitVector):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._bits)

    def __repr__(self) -> str:
        return f"BitVector({''.join(map(str, reversed(self._bits)))}={self._value}, n={len(self._bits)})"


class VarKind(enum.Enum):
    """Role of a model variable.

    W and Y are the bit variables of the two search integers; GW and GY are
    the two single-bit stand-ins for the black-box outputs in the literal
    Simon model; PLAIN is for generic models.
    """

    W = "w"
    Y = "y"
    GW = "gw"
    GY = "gy"
    PLAIN = "x"


@dataclass(frozen=True)
class VarLabel:
    """A model variable name: a kind plus an index (unused for GW/GY)."""

    kind: VarKind
    index: int = 0

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("label index must be non-negative")
        if self.kind in (VarKind.GW, VarKind.GY) and self.index != 0:
            raise ValueError(f"{self.kind.value} labels carry no index")

    @classmethod
    def w(cls, i: int) -> "VarLabel":
        return cls(VarKind.W, i)

    @classmethod
    def y(cls, i: int) -> "VarLabel":
        return cls(VarKind.Y, i)

    @classmethod
    def gw(cls) -> "VarLabel":
        return cls(VarKind.GW)

    @classmethod
    def gy(cls) -> "VarLabel":
        return cls(VarKind.GY)

    @classmethod
    def plain(cls, i: int) -> "VarLabel":
        return cls(VarKind.PLAIN, i)

    def __str__(self) -> str:
        if self.kind in (VarKind.GW, VarKind.GY):
            return self.kind.value
        return f"{self.kind.value}{self.index}"

    _PARSE_RE = re.compile(r"^(w|y|x)(\d+)$|^(gw|gy)$")

    @classmethod
    def parse(cls, text: str) -> "VarLabel":
        m = cls._PARSE_RE.match(text)
        if m is None:
            raise ValueError(f"unrecognized variable label {text!r}")
        if m.group(3) is not None:
            return cls(VarKind(m.group(3)))
        return cls(VarKind(m.group(1)), int(m.group(2)))


Coefficient = Fraction  # all model coefficients are exact rationals


def _as_coefficient(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError(
            f"coefficients must be exact (int, Fraction or string), got float {value!r}"
        )
    return Fraction(value)


def _normalize_terms(labels, linear, quadratic):
    pos = {lab: k for k, lab in enumerate(labels)}
    if len(pos) != len(labels):
        raise ValueError("duplicate labels in model")
    lin = {}
    for lab, coeff in (linear or {}).items():
        if lab not in pos:
            raise ValueError(f"linear term on unknown label {lab}")
        c = _as_coefficient(coeff)
        if c:
            lin[lab] = c
    quad = {}
    for pair, coeff in (quadratic or {}).items():
        a, b = pair
        if a not in pos or b not in pos:
            raise ValueError(f"quadratic term on unknown label pair {pair}")
        if a == b:
            raise ValueError(f"quadratic term pairs label {a} with itself")
        if pos[a] > pos[b]:
            a, b = b, a
        if (a, b) in quad:
            raise ValueError(f"duplicate quadratic term for pair ({a}, {b})")
        c = _as_coefficient(coeff)
        if c:
            quad[(a, b)] = c
    return lin, quad


@dataclass(frozen=True)
class QuboModel:
    """Labeled binary quadratic model over 0/1 variables.

    ``linear`` maps a label to its bias h_i; ``quadratic`` maps an ordered
    pair of distinct labels (in label order) to its coupler J_ij. Absent
    entries are zero; zero coefficients are dropped at construction so that
    equal models compare equal.
    """

    labels: tuple[VarLabel, ...]
    linear: dict[VarLabel, Fraction]
    quadratic: dict[tuple[VarLabel, VarLabel], Fraction]

    def __init__(self, labels: Sequence[VarLabel], linear: Mapping = None, quadratic: Mapping = None):
        labels = tuple(labels)
        lin, quad = _normalize_terms(labels, linear, quadratic)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "quadratic", quad)

    @property
    def n_vars(self) -> int:
        return len(self.labels)

    def position(self, label: VarLabel) -> int:
        return self.labels.index(label)

    def linear_coefficient(self, label: VarLabel) -> Fraction:
        return self.linear.get(label, Fraction(0))

    def quadratic_coefficient(self, a: VarLabel, b: VarLabel) -> Fraction:
        return self.quadratic.get((a, b), self.quadratic.get((b, a), Fraction(0)))

    def __add__(self, other: "QuboModel") -> "QuboModel":
        """Coefficient-wise sum over the union of labels (left order first)."""
        if not isinstance(other, QuboModel):
            return NotImplemented
        labels = list(self.labels)
        seen = set(labels)
        for lab in other.labels:
            if lab not in seen:
                labels.append(lab)
                seen.add(lab)
        linear = dict(self.linear)
        for lab, c in other.linear.items():
            linear[lab] = linear.get(lab, Fraction(0)) + c
        quadratic = {k: v for k, v in self.quadratic.items()}
        pos = {lab: k for k, lab in enumerate(labels)}
        for (a, b), c in other.quadratic.items():
            if pos[a] > pos[b]:
                a, b = b, a
            quadratic[(a, b)] = quadratic.get((a, b), Fraction(0)) + c
        return QuboModel(labels, linear, quadratic)


@dataclass(frozen=True)
class IsingModel:
    """Same structure as :class:`QuboModel` over spins, plus a constant offset."""

    labels: tuple[VarLabel, ...]
    linear: dict[VarLabel, Fraction]
    quadratic: dict[tuple[VarLabel, VarLabel], Fraction]
    offset: Fraction

    def __init__(self, labels, linear=None, quadratic=None, offset=0):
        labels = tuple(labels)
        lin, quad = _normalize_terms(labels, linear, quadratic)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "quadratic", quad)
        object.__setattr__(self, "offset", _as_coefficient(offset))

    @property
    def n_vars(self) -> int:
        return len(self.labels)


def _check_assignment_length(n_vars: int, values: Sequence) -> None:
    if len(values) != n_vars:
        raise ValueError(
            f"assignment has {len(values)} entries for a model with {n_vars} variables"
        )


def qubo_energy(model: QuboModel, s: Sequence[int]) -> Fraction:
    """Exact energy of a 0/1 assignment, in the model's label order."""
    _check_assignment_length(model.n_vars, s)
    bits = [int(b) for b in s]
    if any(b not in (0, 1) for b in bits):
        raise ValueError("QUBO assignments take values 0 or 1")
    pos = {lab: k for k, lab in enumerate(model.labels)}
    e = Fraction(0)
    for lab, h in model.linear.items():
        if bits[pos[lab]]:
            e += h
    for (a, b), j in model.quadratic.items():
        if bits[pos[a]] and bits[pos[b]]:
            e += j
    return e


def ising_energy(model: IsingModel, sigma: Sequence[int]) -> Fraction:
    """Exact energy of a +/-1 spin assignment, including the offset."""
    _check_assignment_length(model.n_vars, sigma)
    spins = [int(v) for v in sigma]
    if any(v not in (-1, 1) for v in spins):
        raise ValueError("spin values must be -1 or +1")
    pos = {lab: k for k, lab in enumerate(model.labels)}
    e = model.offset
    for lab, h in model.linear.items():
        e += h * spins[pos[lab]]
    for (a, b), j in model.quadratic.items():
        e += j * spins[pos[a]] * spins[pos[b]]
    return e


def qubo_to_ising(q: QuboModel) -> IsingModel:
    """Rewrite a QUBO in spin variables via s_i = (1 + sigma_i) / 2.

    Energies agree exactly on corresponding assignments: for every s,
    ``qubo_energy(q, s) == ising_energy(qubo_to_ising(q), 2s - 1)``.
    """
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    linear = {lab: h * half for lab, h in q.linear.items()}
    quadratic = {}
    offset = sum(q.linear.values(), Fraction(0)) * half
    for (a, b), j in q.quadratic.items():
        quadratic[(a, b)] = j * quarter
        linear[a] = linear.get(a, Fraction(0)) + j * quarter
        linear[b] = linear.get(b, Fraction(0)) + j * quarter
        offset += j * quarter
    return IsingModel(q.labels, linear, quadratic, offset)


def ising_to_qubo(m: IsingModel) -> tuple[QuboModel, Fraction]:
    """Inverse rewrite via sigma_i = 2 s_i - 1.

    Returns the QUBO together with the constant term the substitution
    leaves over (zero for any model produced by :func:`qubo_to_ising`).
    """
    linear = {lab: 2 * h for lab, h in m.linear.items()}
    quadratic = {}
    constant = m.offset - sum(m.linear.values(), Fraction(0))
    for (a, b), j in m.quadratic.items():
        quadratic[(a, b)] = 4 * j
        linear[a] = linear.get(a, Fraction(0)) - 2 * j
        linear[b] = linear.get(b, Fraction(0)) - 2 * j
        constant += j
    return QuboModel(m.labels, linear, quadratic), constant


def _scaled_energy_table(model: QuboModel) -> tuple[np.ndarray, int]:
    """Energies of all 2^n assignments as integers, times a common denominator.

    Index v of the returned array is the assignment whose bit k (LSB first)
    gives the value of the variable at position k in label order.
    """
    n = model.n_vars
    coeffs = list(model.linear.values()) + list(model.quadratic.values())
    den = math.lcm(1, *(c.denominator for c in coeffs))
    pos = {lab: k for k, lab in enumerate(model.labels)}
    v = np.arange(1 << n, dtype=np.uint64)
    energies = np.zeros(1 << n, dtype=np.int64)
    for lab, h in model.linear.items():
        bit = ((v >> pos[lab]) & 1).astype(np.int64)
        energies += int(h * den) * bit
    for (a, b), j in model.quadratic.items():
        both = ((v >> pos[a]) & (v >> pos[b]) & 1).astype(np.int64)
        energies += int(j * den) * both
    return energies, den


@dataclass(frozen=True, eq=False)
class Spectrum:
    """All 2^n assignments of a model, sorted by energy.

    Ties are broken by assignment-as-integer ascending, so the ordering is
    deterministic. Energies are exact rationals (stored internally as
    integers over one common denominator).
    """

    labels: tuple[VarLabel, ...]
    _order: np.ndarray  # assignment integers, sorted
    _scaled: np.ndarray  # scaled integer energies, same order
    _denominator: int

    @property
    def n_vars(self) -> int:
        return len(self.labels)

    @property
    def ground_energy(self) -> Fraction:
        return Fraction(int(self._scaled[0]), self._denominator)

    @property
    def ground_count(self) -> int:
        return int(np.count_nonzero(self._scaled == self._scaled[0]))

    def ground_states(self) -> list[BitVector]:
        """Minimizing assignments, in ascending integer order."""
        n = self.n_vars
        return [BitVector.from_integer(int(v), n) for v in self._order[: self.ground_count]]

    def iter_entries(self) -> Iterator[tuple[BitVector, Fraction]]:
        n = self.n_vars
        den = self._denominator
        for v, e in zip(self._order, self._scaled):
            yield BitVector.from_integer(int(v), n), Fraction(int(e), den)

    @property
    def entries(self) -> list[tuple[BitVector, Fraction]]:
        return list(self.iter_entries())

    def __len__(self) -> int:
        return len(self._order)


def exhaustive_solve(model: QuboModel, cap: int = EXHAUSTIVE_CAP) -> Spectrum:
    """Enumerate every assignment and return the full sorted spectrum.

    This is the verification oracle the rest of the package is checked
    against. Refuses models with more than ``cap`` variables.
    """
    n = model.n_vars
    if n > cap:
        raise ValueError(
            f"exhaustive enumeration of {n} variables would visit 2^{n} "
            f"assignments; cap is {cap}"
        )
    energies, den = _scaled_energy_table(model)
    order = np.argsort(energies, kind="stable")  # stable: ties by integer ascending
    return Spectrum(model.labels, order.astype(np.uint64), energies[order], den)

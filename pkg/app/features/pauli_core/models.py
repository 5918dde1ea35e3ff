"""
Phase-tracked Pauli strings and real-weighted Pauli sums.

A PauliString stores the operator

    P = i^phase * prod_q X_q^{x_q} Z_q^{z_q}

with the X factor written before the Z factor on every qubit. The x and z
parts are packed into Python ints (bit q is qubit q), so products and
commutation checks are a handful of word operations regardless of n.

Under this convention Y = i*X*Z, so a Hermitian string has
phase == popcount(x & z) (mod 2), and its real sign is i^(phase - popcount(x & z)).
"""
from dataclasses import dataclass

from app.core.errors import PauliError

_LETTERS = "IXZY"  # indexed by x | (z << 1)
_TEXT_PHASE = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True, slots=True)
class PauliString:
    """
    An n-qubit Pauli operator with an exact global phase i^phase.

    Attributes
    ----------
    n : int
        Number of qubits.
    x : int
        Packed X part, bit q for qubit q.
    z : int
        Packed Z part, bit q for qubit q.
    phase : int
        Exponent k in {0, 1, 2, 3} of the global factor i^k applied to the
        canonical operator prod X^x Z^z.
    """
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise PauliError(f"qubit count must be non-negative, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise PauliError(f"bit vectors do not fit in {self.n} qubits")
        if self.phase not in (0, 1, 2, 3):
            object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        """Hermitian single-qubit Pauli `letter` on `qubit`, sign +1."""
        if not 0 <= qubit < n:
            raise PauliError(f"qubit {qubit} out of range for n={n}")
        return cls.from_letters(n, {qubit: letter})

    @classmethod
    def from_letters(cls, n: int, letters: dict[int, str]) -> "PauliString":
        """Hermitian Pauli with sign +1 from a {qubit: letter} map."""
        x = z = 0
        for qubit, letter in letters.items():
            if letter in "XY":
                x |= 1 << qubit
            if letter in "ZY":
                z |= 1 << qubit
            if letter not in "IXYZ":
                raise PauliError(f"unknown Pauli letter {letter!r}")
        return cls(n, x, z, (x & z).bit_count() % 4)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """
        Parse text of the form "+XIZY", "-iXZ", "iZ" or "XX".

        The optional sign and `i` give the coefficient in front of the letters;
        the leftmost letter is qubit 0.
        """
        text = label.strip()
        coefficient = 0
        if text and text[0] in "+-":
            coefficient = 0 if text[0] == "+" else 2
            text = text[1:]
        if text[:1] == "i":
            coefficient += 1
            text = text[1:]
        if not text or any(ch not in "IXYZ" for ch in text):
            raise PauliError(f"malformed Pauli string {label!r}")
        x = z = 0
        for qubit, letter in enumerate(text):
            if letter in "XY":
                x |= 1 << qubit
            if letter in "ZY":
                z |= 1 << qubit
        return cls(len(text), x, z, (coefficient + (x & z).bit_count()) % 4)

    @property
    def label(self) -> str:
        """Render as sign, optional i, then letters (qubit 0 first)."""
        coefficient = (self.phase - (self.x & self.z).bit_count()) % 4
        letters = "".join(
            _LETTERS[((self.x >> q) & 1) | (((self.z >> q) & 1) << 1)] for q in range(self.n)
        )
        return _TEXT_PHASE[coefficient] + letters

    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> q) & 1 for q in range(self.n))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> q) & 1 for q in range(self.n))

    @property
    def symplectic(self) -> int:
        """The 2n-bit vector (x | z), phase dropped."""
        return self.x | (self.z << self.n)

    @property
    def is_hermitian(self) -> bool:
        return (self.phase - (self.x & self.z).bit_count()) % 2 == 0

    @property
    def sign(self) -> int:
        """Real sign of a Hermitian string."""
        if not self.is_hermitian:
            raise PauliError(f"{self.label} is not Hermitian")
        return 1 if (self.phase - (self.x & self.z).bit_count()) % 4 == 0 else -1

    def unsigned(self) -> "PauliString":
        """The same letters with coefficient +1."""
        return PauliString(self.n, self.x, self.z, (self.x & self.z).bit_count() % 4)

    def times_phase(self, k: int) -> "PauliString":
        """Multiply by i^k."""
        return PauliString(self.n, self.x, self.z, (self.phase + k) % 4)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def support(self) -> frozenset[int]:
        mask = self.x | self.z
        return frozenset(q for q in range(self.n) if (mask >> q) & 1)

    def letter(self, qubit: int) -> str:
        return _LETTERS[((self.x >> qubit) & 1) | (((self.z >> qubit) & 1) << 1)]

    def __mul__(self, other: "PauliString") -> "PauliString":
        return mul(self, other)

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"PauliString({self.label!r})"


def _check_size(p: PauliString, q: PauliString):
    if p.n != q.n:
        raise PauliError(f"size mismatch: {p.n} vs {q.n} qubits")


def mul(p: PauliString, q: PauliString) -> PauliString:
    """
    Phase-exact product p*q.

    Moving each Z of p past the X of q on the same qubit costs a factor -1,
    so the phase picks up 2 * popcount(p.z & q.x).
    """
    _check_size(p, q)
    phase = p.phase + q.phase + 2 * (p.z & q.x).bit_count()
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z, phase % 4)


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic form of p and q vanishes."""
    _check_size(p, q)
    return ((p.x & q.z) ^ (p.z & q.x)).bit_count() % 2 == 0


def weight(p: PauliString) -> int:
    return p.weight


def support(p: PauliString) -> frozenset[int]:
    return p.support


@dataclass(frozen=True, slots=True)
class Observable:
    """
    O = sum_i c_i P_i with real c_i.

    Every P_i is Hermitian with sign +1; signs of the input strings are folded
    into the coefficients. Use `from_terms` to build one.
    """
    n: int
    terms: tuple[tuple[float, PauliString], ...]

    @classmethod
    def from_terms(cls, terms: list[tuple[float, PauliString]]) -> "Observable":
        if not terms:
            raise PauliError("an observable needs at least one term")
        n = terms[0][1].n
        seen: set[tuple[int, int]] = set()
        normalized: list[tuple[float, PauliString]] = []
        for coefficient, pauli in terms:
            if pauli.n != n:
                raise PauliError(f"size mismatch: {pauli.n} vs {n} qubits")
            if not pauli.is_hermitian:
                raise PauliError(f"observable term {pauli.label} is not Hermitian")
            key = (pauli.x, pauli.z)
            if key in seen:
                raise PauliError(f"duplicate observable term {pauli.unsigned().label}")
            seen.add(key)
            normalized.append((float(coefficient) * pauli.sign, pauli.unsigned()))
        return cls(n, tuple(normalized))

    @classmethod
    def single(cls, pauli: PauliString) -> "Observable":
        return cls.from_terms([(1.0, pauli)])

    @classmethod
    def parse(cls, text: str) -> "Observable":
        """Parse "0.5 ZZI + -1 XIX"; a bare label counts with coefficient 1."""
        terms = []
        for chunk in text.split(" + "):
            parts = chunk.split()
            if len(parts) == 1:
                terms.append((1.0, PauliString.from_label(parts[0])))
            elif len(parts) == 2:
                terms.append((float(parts[0]), PauliString.from_label(parts[1])))
            else:
                raise PauliError(f"malformed observable term {chunk!r}")
        return cls.from_terms(terms)

    @property
    def paulis(self) -> tuple[PauliString, ...]:
        return tuple(pauli for _, pauli in self.terms)

    @property
    def label(self) -> str:
        return " + ".join(f"{c:g} {p.label}" for c, p in self.terms)

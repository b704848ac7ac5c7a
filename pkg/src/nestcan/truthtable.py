"""Bit-packed truth tables.

A function of ``n`` variables is stored as a Python integer ``mask`` whose bit
``s`` holds the output at state index ``s = sum(x_j * 2**(n-j))``, i.e. ``x_1``
is the most significant bit of the index.  Written as a binary string, index 0
comes first, so row order matches the usual truth-table listing
(000, 001, 010, ...).

Most kernels work on the whole mask at once with shifts and precomputed
"variable is zero" masks, so checks like essentiality or canalization cost a
handful of big-integer operations regardless of ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .dyadic import DyadicRational
from .errors import BadVariable, DimensionMismatch, InvalidLength

MAX_VARS = 24


@lru_cache(maxsize=None)
def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def zero_mask(n: int, i: int) -> int:
    """Mask of the states where variable ``x_i`` (1-based) is 0."""
    stride = 1 << (n - i)
    block = (1 << stride) - 1
    return full_mask(n) // ((1 << (2 * stride)) - 1) * block


def var_mask(n: int, i: int) -> int:
    """Truth table mask of the projection ``x_i``."""
    return full_mask(n) ^ zero_mask(n, i)


@dataclass(frozen=True)
class TruthTable:
    n: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VARS:
            raise InvalidLength(f"n must be in 0..{MAX_VARS}, got {self.n}")
        if self.mask < 0 or self.mask > full_mask(self.n):
            raise InvalidLength(f"mask does not fit in 2^{self.n} bits")

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> s) & 1 for s in range(self.size))

    def to_string(self) -> str:
        return format(self.mask, f"0{self.size}b")[::-1]

    def to_hex(self) -> str:
        width = max(1, -(-self.size // 4))
        return format(int(self.to_string(), 2), f"0{width}x")

    def to_array(self) -> np.ndarray:
        """Outputs as a uint8 array of length ``2**n`` in index order."""
        nbytes = max(1, self.size // 8)
        raw = np.frombuffer(self.mask.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.size]

    @classmethod
    def from_array(cls, n: int, arr) -> TruthTable:
        arr = np.asarray(arr, dtype=np.uint8).ravel()
        if arr.size != 1 << n:
            raise InvalidLength(f"expected {1 << n} bits, got {arr.size}")
        packed = np.packbits(arr, bitorder="little")
        return cls(n, int.from_bytes(packed.tobytes(), "little"))

    def __invert__(self) -> TruthTable:
        return TruthTable(self.n, self.mask ^ full_mask(self.n))

    def __str__(self) -> str:
        return self.to_string()


def make_truth_table(n: int, bits: str | Sequence[int] | Iterable[int]) -> TruthTable:
    """Build a table from ``2**n`` output bits listed in index order."""
    if not 0 <= n <= MAX_VARS:
        raise InvalidLength(f"n must be in 0..{MAX_VARS}, got {n}")
    if isinstance(bits, str):
        text = bits.strip()
        if set(text) - {"0", "1"}:
            raise InvalidLength(f"not a binary string: {bits!r}")
    else:
        text = "".join("1" if int(b) else "0" for b in bits)
    if len(text) != 1 << n:
        raise InvalidLength(f"expected {1 << n} bits for n={n}, got {len(text)}")
    return TruthTable(n, int(text[::-1], 2))


def parse_truth_table(text: str, n: int | None = None) -> TruthTable:
    """Parse the text format: a binary string, or ``0x``-prefixed hex with explicit ``n``.

    Hex is the binary string read as a big-endian number, so ``0xfb`` with
    ``n=3`` is ``11111011``.
    """
    text = text.strip().replace("_", "")
    if text.lower().startswith("0x"):
        if n is None:
            raise InvalidLength("hex truth tables need an explicit n")
        try:
            value = int(text[2:], 16)
        except ValueError:
            raise InvalidLength(f"not a hex string: {text!r}") from None
        if value.bit_length() > 1 << n:
            raise InvalidLength(f"hex value does not fit in 2^{n} bits")
        return make_truth_table(n, format(value, f"0{1 << n}b"))
    if n is None:
        size = len(text)
        if size == 0 or size & (size - 1):
            raise InvalidLength(f"length {size} is not a power of two")
        n = size.bit_length() - 1
    return make_truth_table(n, text)


def constant(n: int, b: int) -> TruthTable:
    return TruthTable(n, full_mask(n) if b else 0)


def projection(n: int, i: int) -> TruthTable:
    _check_var(n, i)
    return TruthTable(n, var_mask(n, i))


def state_index(n: int, state: Sequence[int]) -> int:
    if len(state) != n:
        raise DimensionMismatch(f"state has length {len(state)}, expected {n}")
    idx = 0
    for x in state:
        idx = (idx << 1) | (1 if x else 0)
    return idx


def index_state(n: int, idx: int) -> tuple[int, ...]:
    return tuple((idx >> (n - j)) & 1 for j in range(1, n + 1))


def evaluate(tt: TruthTable, state: Sequence[int]) -> int:
    return (tt.mask >> state_index(tt.n, state)) & 1


def hamming_weight(tt: TruthTable) -> int:
    return tt.mask.bit_count()


def _check_var(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise BadVariable(f"variable index {i} outside 1..{n}")


def _halves(tt: TruthTable, i: int) -> tuple[int, int]:
    # Both halves aligned onto the x_i = 0 positions.
    z = zero_mask(tt.n, i)
    stride = 1 << (tt.n - i)
    return tt.mask & z, (tt.mask >> stride) & z


def is_essential(tt: TruthTable, i: int) -> bool:
    _check_var(tt.n, i)
    lo, hi = _halves(tt, i)
    return lo != hi


def essential_variables(tt: TruthTable) -> set[int]:
    return {i for i in range(1, tt.n + 1) if is_essential(tt, i)}


def canalizing_pairs(tt: TruthTable) -> list[tuple[int, int, int]]:
    """All ``(i, a, b)`` with ``f(..., x_i=a, ...) == b`` identically.

    Sorted by variable, then canalizing input.
    """
    out = []
    for i in range(1, tt.n + 1):
        z = zero_mask(tt.n, i)
        for a, half in enumerate(_halves(tt, i)):
            if half == 0:
                out.append((i, a, 0))
            elif half == z:
                out.append((i, a, 1))
    return out


def restrict(tt: TruthTable, i: int, v: int) -> TruthTable:
    """The ``(n-1)``-variable function obtained by fixing ``x_i = v``."""
    _check_var(tt.n, i)
    if tt.mask == 0 or tt.mask == full_mask(tt.n):
        return constant(tt.n - 1, tt.mask & 1)
    arr = tt.to_array().reshape(1 << (i - 1), 2, 1 << (tt.n - i))
    return TruthTable.from_array(tt.n - 1, arr[:, 1 if v else 0, :])


def reduce(tt: TruthTable) -> tuple[TruthTable, list[int]]:
    """Project out non-essential variables.

    Returns the reduced table and the original indices of the kept variables,
    in order.
    """
    kept = sorted(essential_variables(tt))
    out = tt
    for i in reversed(range(1, tt.n + 1)):
        if i not in kept:
            out = restrict(out, i, 0)
    return out, kept


def permute(tt: TruthTable, perm: Sequence[int]) -> TruthTable:
    """Relabel variables: old variable ``i`` becomes new variable ``perm[i-1]``."""
    n = tt.n
    if sorted(perm) != list(range(1, n + 1)):
        raise DimensionMismatch(f"{perm!r} is not a permutation of 1..{n}")
    arr = tt.to_array().reshape((2,) * n) if n else tt.to_array()
    axes = [0] * n
    for old, new in enumerate(perm):
        axes[new - 1] = old
    return TruthTable.from_array(n, np.transpose(arr, axes) if n else arr)


def negate_input(tt: TruthTable, i: int) -> TruthTable:
    """Substitute ``x_i <- x_i + 1``."""
    lo, hi = _halves(tt, i)
    stride = 1 << (tt.n - i)
    return TruthTable(tt.n, hi | (lo << stride))


# Algebraic normal form


@dataclass(frozen=True)
class AnfPolynomial:
    """ANF coefficients; bit ``m`` is the coefficient of the monomial whose
    exponent vector, read with ``x_1`` as the most significant bit, equals ``m``.
    """

    n: int
    coefficients: int

    def monomials(self) -> list[tuple[int, ...]]:
        out = []
        for m in range(1 << self.n):
            if (self.coefficients >> m) & 1:
                out.append(tuple(j for j in range(1, self.n + 1) if (m >> (self.n - j)) & 1))
        out.sort(key=lambda t: (-len(t), t))
        return out

    @property
    def degree(self) -> int:
        terms = self.monomials()
        return max((len(t) for t in terms), default=0)

    def evaluate(self, state: Sequence[int]) -> int:
        s = state_index(self.n, state)
        total = 0
        for m in range(1 << self.n):
            if (self.coefficients >> m) & 1 and m & ~s == 0:
                total ^= 1
        return total

    def __str__(self) -> str:
        terms = self.monomials()
        if not terms:
            return "0"
        return " + ".join("".join(f"x{j}" for j in t) if t else "1" for t in terms)


def _moebius(n: int, mask: int) -> int:
    for i in range(1, n + 1):
        mask ^= (mask & zero_mask(n, i)) << (1 << (n - i))
    return mask


def anf(tt: TruthTable) -> AnfPolynomial:
    return AnfPolynomial(tt.n, _moebius(tt.n, tt.mask))


def from_anf(poly: AnfPolynomial) -> TruthTable:
    return TruthTable(poly.n, _moebius(poly.n, poly.coefficients))


# Brute-force sensitivity oracles


def activity_bruteforce(tt: TruthTable, i: int) -> DyadicRational:
    """Fraction of the ``2**(n-1)`` settings of the other variables on which
    toggling ``x_i`` changes the output."""
    _check_var(tt.n, i)
    lo, hi = _halves(tt, i)
    return DyadicRational((lo ^ hi).bit_count(), tt.n - 1)


def average_sensitivity_bruteforce(tt: TruthTable) -> DyadicRational:
    if tt.n < 1:
        raise DimensionMismatch("average sensitivity needs n >= 1")
    total = 0
    for i in range(1, tt.n + 1):
        lo, hi = _halves(tt, i)
        total += (lo ^ hi).bit_count()
    return DyadicRational(total, tt.n - 1)


def sensitivity_at(tt: TruthTable, state: Sequence[int]) -> int:
    """Number of Hamming neighbours of ``state`` with a different output."""
    s = state_index(tt.n, state)
    v = (tt.mask >> s) & 1
    return sum(((tt.mask >> (s ^ (1 << (tt.n - j)))) & 1) != v for j in range(1, tt.n + 1))

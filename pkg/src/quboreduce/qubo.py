"""Sparse symmetric QUBO matrices and exhaustive energy evaluation.

A QUBO instance is ``minimize offset + sum_{i<=j} x_i x_j Q[i,j]`` over binary
vectors ``x``.  Coefficients are stored upper-triangular; writing to ``(j, i)``
with ``j > i`` is normalized to ``(i, j)``, and writing an exact zero deletes
the entry so that coupling counts always reflect the stored structure.

Indices are 0-based throughout.  Integer coefficients are kept as Python ints,
so integer-valued QUBOs evaluate with exact arithmetic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

# Largest qubit count for which full 2^n enumeration is permitted by default.
ENUMERATION_GUARD = 24

# Comparison tolerance for QUBOs with non-integer coefficients.
FLOAT_TOL = 1e-9


class DimensionError(ValueError):
    """Solution length does not match the matrix size."""


class CapacityError(ValueError):
    """Requested exhaustive enumeration exceeds the configured guard."""


class ParameterError(ValueError):
    """Invalid argument or malformed input data."""


Bits = Sequence[int]


def bits_from_index(m: int, n: int) -> tuple[int, ...]:
    """Unpack assignment index ``m`` into a bit tuple (bit i of m = x_i)."""
    return tuple((m >> i) & 1 for i in range(n))


def index_from_bits(bits: Bits) -> int:
    """Inverse of :func:`bits_from_index`."""
    m = 0
    for i, b in enumerate(bits):
        if b:
            m |= 1 << i
    return m


class QuboMatrix:
    """Symmetric real QUBO matrix with sparse upper-triangular storage."""

    __slots__ = ("n", "offset", "_entries")

    def __init__(
        self,
        n: int,
        entries: Mapping[tuple[int, int], float] | Iterable[tuple[tuple[int, int], float]] | None = None,
        offset: float = 0,
    ):
        if n < 1:
            raise ParameterError(f"qubit count must be positive, got {n}")
        if not math.isfinite(offset):
            raise ParameterError("offset must be finite")
        self.n = n
        self.offset = offset
        self._entries: dict[tuple[int, int], float] = {}
        if entries is not None:
            items = entries.items() if isinstance(entries, Mapping) else entries
            for (i, j), value in items:
                self[i, j] = value

    def _key(self, i: int, j: int) -> tuple[int, int]:
        if i > j:
            i, j = j, i
        if i < 0 or j >= self.n:
            raise ParameterError(f"index pair ({i}, {j}) out of range for n={self.n}")
        return (i, j)

    def __setitem__(self, key: tuple[int, int], value: float) -> None:
        k = self._key(*key)
        if value == 0:
            self._entries.pop(k, None)
            return
        if not math.isfinite(value):
            raise ParameterError(f"non-finite coefficient at {k}")
        self._entries[k] = value

    def __getitem__(self, key: tuple[int, int]) -> float:
        return self._entries.get(self._key(*key), 0)

    def get(self, i: int, j: int) -> float:
        return self._entries.get(self._key(i, j), 0)

    def add(self, i: int, j: int, delta: float) -> None:
        self[i, j] = self.get(i, j) + delta

    def entries(self) -> Iterator[tuple[tuple[int, int], float]]:
        """Stored (pair, coefficient) items, sorted by (i, j)."""
        return iter(sorted(self._entries.items()))

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuboMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and self.offset == other.offset
            and self._entries == other._entries
        )

    def __repr__(self) -> str:
        return f"QuboMatrix(n={self.n}, entries={len(self._entries)}, offset={self.offset})"

    def copy(self, n: int | None = None) -> "QuboMatrix":
        """Copy, optionally enlarging to ``n`` qubits (trailing isolated qubits)."""
        if n is None:
            n = self.n
        if n < self.n:
            raise ParameterError("copy cannot shrink a matrix")
        out = QuboMatrix(n, offset=self.offset)
        out._entries = dict(self._entries)
        return out

    @property
    def is_integral(self) -> bool:
        """True when the offset and every coefficient are Python ints."""
        if not isinstance(self.offset, int):
            return False
        return all(isinstance(v, int) for v in self._entries.values())

    def row(self, i: int, diagonal: bool = True) -> dict[int, float]:
        """Symmetric row ``i`` as {other index: coefficient}."""
        out = {}
        for (a, b), v in self._entries.items():
            if a == i == b:
                if diagonal:
                    out[i] = v
            elif a == i:
                out[b] = v
            elif b == i:
                out[a] = v
        return out

    def to_dense(self) -> np.ndarray:
        """Dense upper-triangular matrix (offset not included)."""
        m = np.zeros((self.n, self.n))
        for (i, j), v in self._entries.items():
            m[i, j] = v
        return m

    # -- JSON file format: {"n": int, "offset": number, "entries": [[i, j, v], ...]}

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "offset": self.offset,
            "entries": [[i, j, v] for (i, j), v in self.entries()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "QuboMatrix":
        try:
            n = data["n"]
            offset = data["offset"]
            raw = data["entries"]
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed QUBO JSON: {exc}") from exc
        q = cls(n, offset=offset)
        seen = set()
        for item in raw:
            if len(item) != 3:
                raise ParameterError(f"malformed entry {item!r}")
            i, j, v = item
            if i > j:
                raise ParameterError(f"entry ({i}, {j}) violates i <= j")
            if (i, j) in seen:
                raise ParameterError(f"duplicate entry for pair ({i}, {j})")
            seen.add((i, j))
            q[i, j] = v
        return q

    @classmethod
    def loads(cls, text: str) -> "QuboMatrix":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class SpectrumEntry:
    bits: tuple[int, ...]
    energy: float


def energy(q: QuboMatrix, x: Bits) -> float:
    """Energy offset + sum_{i<=j} x_i x_j Q[i,j] of a binary assignment."""
    if len(x) != q.n:
        raise DimensionError(f"solution length {len(x)} != n={q.n}")
    total = q.offset
    for (i, j), v in q._entries.items():
        if x[i] and x[j]:
            total += v
    return total


def coupling_count(q: QuboMatrix) -> int:
    """Number of stored off-diagonal entries."""
    return sum(1 for (i, j) in q._entries if i < j)


def all_energies(q: QuboMatrix, guard: int = ENUMERATION_GUARD) -> np.ndarray:
    """Energies of all 2^n assignments, indexed so bit i of the index is x_i.

    Integer-valued QUBOs produce an int64 array (exact arithmetic).
    """
    if q.n > guard:
        raise CapacityError(f"n={q.n} exceeds enumeration guard {guard}")
    idx = np.arange(1 << q.n, dtype=np.int64)
    dtype = np.int64 if q.is_integral else np.float64
    energies = np.full(1 << q.n, q.offset, dtype=dtype)
    for (i, j), v in q._entries.items():
        both = ((idx >> i) & (idx >> j) & 1).astype(bool)
        energies[both] += v
    return energies


def spectrum(q: QuboMatrix, guard: int = ENUMERATION_GUARD) -> list[SpectrumEntry]:
    """All 2^n assignments sorted by energy, ties by assignment index."""
    energies = all_energies(q, guard=guard)
    idx = np.arange(energies.size)
    order = np.lexsort((idx, energies))
    cast = int if q.is_integral else float
    return [SpectrumEntry(bits_from_index(int(m), q.n), cast(energies[m])) for m in order]


def min_energy_over_ancillas(
    q_mod: QuboMatrix, base_n: int, x: Bits, guard: int = ENUMERATION_GUARD
) -> float:
    """Best energy of ``x`` extended by every possible ancilla assignment."""
    if len(x) != base_n or base_n > q_mod.n:
        raise DimensionError(f"base length {len(x)} incompatible with base_n={base_n}, n={q_mod.n}")
    num_anc = q_mod.n - base_n
    if num_anc > guard:
        raise CapacityError(f"{num_anc} ancillas exceed enumeration guard {guard}")
    base = tuple(x)
    best = None
    for a in range(1 << num_anc):
        e = energy(q_mod, base + bits_from_index(a, num_anc))
        if best is None or e < best:
            best = e
    return best

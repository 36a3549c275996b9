"""Ancilla-based factoring of shared coupling structure in QUBO matrices.

Two coupled qubits whose joint activation is never energetically favorable
("conflicting") and that share identical nonzero couplings to at least three
other qubits can have that shared structure moved onto a single ancilla qubit.
A penalty of weight ``z`` constrains the ancilla to equal the OR of the pair,
so the energies of all valid assignments are preserved while the number of
couplings strictly decreases.

The conflict test here is the syntactic row-sum sufficient condition used by
the factoring loop; the exact semantic test (exhaustive, small n only) is
available separately as :func:`is_conflicting` for validation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .qubo import (
    CapacityError,
    ENUMERATION_GUARD,
    ParameterError,
    QuboMatrix,
    all_energies,
    bits_from_index,
    energy,
)


@dataclass(frozen=True)
class SemiSymmetry:
    """A conflicting pair plus the qubits it shares identical couplings with."""

    pair: tuple[int, int]
    syms: frozenset = frozenset()

    @property
    def eligible(self) -> bool:
        return len(self.syms) >= 3


@dataclass(frozen=True)
class FactoringStep:
    ancilla: int
    i: int
    j: int
    syms: tuple[int, ...]


@dataclass
class FactoringReport:
    base_n: int
    final_n: int
    z: float
    steps: list[FactoringStep] = field(default_factory=list)

    @property
    def num_ancillas(self) -> int:
        return self.final_n - self.base_n

    def to_json_dict(self) -> dict:
        return {
            "base_n": self.base_n,
            "final_n": self.final_n,
            "z": self.z,
            "steps": [
                {"ancilla": s.ancilla, "i": s.i, "j": s.j, "syms": sorted(s.syms)}
                for s in self.steps
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "FactoringReport":
        try:
            steps = [
                FactoringStep(s["ancilla"], s["i"], s["j"], tuple(s["syms"]))
                for s in data["steps"]
            ]
            return cls(data["base_n"], data["final_n"], data["z"], steps)
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"malformed factoring report: {exc}") from exc

    @classmethod
    def loads(cls, text: str) -> "FactoringReport":
        return cls.from_json_dict(json.loads(text))


def get_conflict_list(q: QuboMatrix, include_diagonal: bool = True) -> list[tuple[int, int]]:
    """Coupled pairs (i, j) whose coupling exceeds the negative energy
    available to both rows: Q[i,j] > -Z[i] - Z[j].

    Z[i] sums the negative coefficients of symmetric row i; the diagonal term
    participates unless ``include_diagonal`` is false.
    """
    z_row = [0] * q.n
    for (i, j), v in q.entries():
        if v < 0:
            if i == j:
                if include_diagonal:
                    z_row[i] += v
            else:
                z_row[i] += v
                z_row[j] += v
    return sorted(
        (i, j)
        for (i, j), v in q.entries()
        if i < j and v > -z_row[i] - z_row[j]
    )


def get_most_sym_qubits(q: QuboMatrix, cl: list[tuple[int, int]]) -> SemiSymmetry:
    """Pair from ``cl`` sharing identical nonzero couplings with the most other
    qubits.  Ties go to the pair scanned last; an empty list yields the
    sentinel pair (0, 1) with no shared qubits."""
    best = SemiSymmetry((0, 1))
    for i, j in cl:
        row_i = q.row(i, diagonal=False)
        row_j = q.row(j, diagonal=False)
        syms = frozenset(
            k for k, v in row_i.items()
            if k != j and row_j.get(k) == v
        )
        if len(syms) >= len(best.syms):
            best = SemiSymmetry((i, j), syms)
    return best


def enhance(q: QuboMatrix, pair: tuple[int, int], syms, z) -> QuboMatrix:
    """Append one ancilla qubit and move the shared couplings of ``pair`` onto
    it, adding the OR-consistency penalty of weight ``z``."""
    i, j = pair
    if not z > 0:
        raise ParameterError(f"penalty z must be positive, got {z}")
    syms = frozenset(syms)
    if i in syms or j in syms:
        raise ParameterError("syms must exclude the factored pair")
    for k in syms:
        if q.get(i, k) == 0 or q.get(i, k) != q.get(j, k):
            raise ParameterError(f"qubit {k} does not share identical nonzero couplings")
    a = q.n
    out = q.copy(q.n + 1)
    out.add(i, i, z)
    out.add(j, j, z)
    out[a, a] = z
    out[i, a] = -2 * z
    out[j, a] = -2 * z
    out.add(i, j, 2 * z)
    for k in syms:
        out[k, a] = q.get(i, k)
        out[i, k] = 0
        out[j, k] = 0
    return out


def default_z(q: QuboMatrix):
    """Sum of absolute values of all stored coefficients; always a safe
    penalty weight for energy-landscape preservation."""
    return sum(abs(v) for _, v in q.entries())


def factor_step(q: QuboMatrix, z) -> tuple[QuboMatrix, FactoringStep] | None:
    """One factoring iteration, or None when no eligible structure remains."""
    cl = get_conflict_list(q)
    if not cl:
        return None
    best = get_most_sym_qubits(q, cl)
    if not best.eligible:
        return None
    step = FactoringStep(q.n, best.pair[0], best.pair[1], tuple(sorted(best.syms)))
    return enhance(q, best.pair, best.syms, z), step


def factor_out(q: QuboMatrix, num_ancillas: int, z) -> tuple[QuboMatrix, FactoringReport]:
    """Repeatedly factor the largest shared structure until no eligible pair
    remains or the ancilla budget is exhausted."""
    if num_ancillas < 0:
        raise ParameterError(f"ancilla budget must be non-negative, got {num_ancillas}")
    if not z > 0:
        raise ParameterError(f"penalty z must be positive, got {z}")
    report = FactoringReport(q.n, q.n, z)
    current = q
    for _ in range(num_ancillas):
        result = factor_step(current, z)
        if result is None:
            break
        current, step = result
        report.steps.append(step)
        report.final_n = current.n
    return current, report


def factoring_trajectory(q: QuboMatrix, num_ancillas: int, z) -> tuple[list[QuboMatrix], FactoringReport]:
    """Like :func:`factor_out` but returns every intermediate matrix,
    trajectory[k] being the matrix after k ancillas."""
    if num_ancillas < 0:
        raise ParameterError(f"ancilla budget must be non-negative, got {num_ancillas}")
    report = FactoringReport(q.n, q.n, z)
    trajectory = [q]
    for _ in range(num_ancillas):
        result = factor_step(trajectory[-1], z)
        if result is None:
            break
        nxt, step = result
        trajectory.append(nxt)
        report.steps.append(step)
        report.final_n = nxt.n
    return trajectory, report


def is_conflicting(q: QuboMatrix, i: int, j: int, guard: int = ENUMERATION_GUARD) -> bool:
    """Exact semantic conflict test by exhaustive enumeration: every
    assignment with both bits set is strictly worse than its three
    neighbors differing only on bits i and j."""
    if q.n > guard:
        raise CapacityError(f"n={q.n} exceeds enumeration guard {guard}")
    energies = all_energies(q, guard=guard)
    bi, bj = 1 << i, 1 << j
    for m in range(energies.size):
        if m & bi and m & bj:
            e_both = energies[m]
            others = (energies[m ^ bi], energies[m ^ bj], energies[m ^ bi ^ bj])
            if not all(e_both > e for e in others):
                return False
    return True


@dataclass(frozen=True)
class VerificationVerdict:
    valid_energies_preserved: bool
    invalid_energies_nondecreasing: bool
    minimum_preserved: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.valid_energies_preserved
            and self.invalid_energies_nondecreasing
            and self.minimum_preserved
        )


def _classify_valid(bits: tuple[int, ...], report: FactoringReport) -> bool:
    # Replay the factoring steps, forcing each ancilla to the OR of its pair.
    # The base assignment is valid iff no factored pair ends up fully set.
    extended = list(bits)
    for step in report.steps:
        bi, bj = extended[step.i], extended[step.j]
        if bi and bj:
            return False
        extended.append(bi | bj)
    return True


def verify_equivalence(
    q: QuboMatrix,
    q_mod: QuboMatrix,
    report: FactoringReport,
    guard: int = ENUMERATION_GUARD,
) -> VerificationVerdict:
    """Exhaustively compare the base matrix with its factored counterpart.

    Checks that best-ancilla energies of valid base assignments are preserved
    exactly, that invalid assignments never improve, and that the global
    minima agree.
    """
    if q.n != report.base_n or q_mod.n != report.final_n:
        raise ParameterError("report does not match the supplied matrices")
    if q_mod.n > guard:
        raise CapacityError(f"n={q_mod.n} exceeds enumeration guard {guard}")

    base_energies = all_energies(q, guard=guard)
    mod_energies = all_energies(q_mod, guard=guard)
    num_anc = q_mod.n - q.n
    # Assignment index packs base bits low, ancilla bits high.
    best_mod = mod_energies.reshape(1 << num_anc, 1 << q.n).min(axis=0)

    exact = q.is_integral and q_mod.is_integral
    tol = 0 if exact else 1e-9

    valid_ok = True
    invalid_ok = True
    for m in range(base_energies.size):
        diff = best_mod[m] - base_energies[m]
        if _classify_valid(bits_from_index(m, q.n), report):
            if abs(diff) > tol:
                valid_ok = False
        elif diff < -tol:
            invalid_ok = False
    minimum_ok = bool(abs(mod_energies.min() - base_energies.min()) <= tol)
    return VerificationVerdict(valid_ok, invalid_ok, minimum_ok)

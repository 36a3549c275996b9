"""QAOA gate-list construction, CNOT counting, depth scheduling, and a small
dense statevector evaluator for checking the diagonal cost layer.

The gate set is {H, RX, RZ, CNOT}; each coupling term compiles to
CNOT-RZ-CNOT, so a circuit over a QUBO with C couplings and p layers contains
exactly 2*C*p CNOT gates.  Connectivity is all-to-all (no routing) and every
gate occupies one time step on each operand qubit; depth is the ASAP schedule
length of the qubit-dependency DAG.

Angle convention: RZ(theta) = diag(exp(-i theta/2), exp(+i theta/2)), gamma
multiplies the cost layer and beta the mixer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .qubo import CapacityError, ParameterError, QuboMatrix, index_from_bits

STATEVECTOR_GUARD = 20


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.kind == "CNOT":
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ParameterError(f"CNOT needs two distinct operands, got {self.qubits}")
            if self.angle is not None:
                raise ParameterError("CNOT takes no angle")
        elif self.kind == "H":
            if len(self.qubits) != 1 or self.angle is not None:
                raise ParameterError("H takes one operand and no angle")
        elif self.kind in ("RX", "RZ"):
            if len(self.qubits) != 1 or self.angle is None:
                raise ParameterError(f"{self.kind} takes one operand and an angle")
        else:
            raise ParameterError(f"unknown gate kind {self.kind!r}")


@dataclass
class GateList:
    n: int
    gates: list[Gate] = field(default_factory=list)

    def append(self, gate: Gate) -> None:
        if any(qb < 0 or qb >= self.n for qb in gate.qubits):
            raise ParameterError(f"gate operands {gate.qubits} out of range for n={self.n}")
        self.gates.append(gate)

    def h(self, q: int) -> None:
        self.append(Gate("H", (q,)))

    def rx(self, q: int, angle: float) -> None:
        self.append(Gate("RX", (q,), angle))

    def rz(self, q: int, angle: float) -> None:
        self.append(Gate("RZ", (q,), angle))

    def cnot(self, control: int, target: int) -> None:
        self.append(Gate("CNOT", (control, target)))


@dataclass(frozen=True)
class QaoaParams:
    p: int
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if self.p < 1:
            raise ParameterError(f"layer count must be positive, got {self.p}")
        if len(self.gammas) != self.p or len(self.betas) != self.p:
            raise ParameterError("need exactly p gammas and p betas")

    @classmethod
    def constant(cls, p: int, gamma: float = 0.5, beta: float = 0.5) -> "QaoaParams":
        return cls(p, (gamma,) * p, (beta,) * p)


class IsingForm(NamedTuple):
    """Spin form of a QUBO under x_i = (1 - z_i)/2: sum J z z + sum h z + c."""

    h: dict
    couplings: dict
    constant: float


def qubo_to_ising(q: QuboMatrix) -> IsingForm:
    h: dict[int, float] = {}
    jj: dict[tuple[int, int], float] = {}
    c = float(q.offset)
    for (i, j), v in q.entries():
        if i == j:
            h[i] = h.get(i, 0.0) - v / 2
            c += v / 2
        else:
            jj[(i, j)] = jj.get((i, j), 0.0) + v / 4
            h[i] = h.get(i, 0.0) - v / 4
            h[j] = h.get(j, 0.0) - v / 4
            c += v / 4
    h = {i: v for i, v in h.items() if v != 0}
    jj = {k: v for k, v in jj.items() if v != 0}
    return IsingForm(h, jj, c)


def _coupling_rounds(pairs: list[tuple[int, int]], order: str) -> list[tuple[int, int]]:
    if order == "ascending":
        return pairs
    if order == "packed":
        # Greedy matching: emit rounds of couplings on pairwise-disjoint qubits.
        remaining = list(pairs)
        out = []
        while remaining:
            used: set[int] = set()
            round_pairs = []
            rest = []
            for i, k in remaining:
                if i in used or k in used:
                    rest.append((i, k))
                else:
                    round_pairs.append((i, k))
                    used.update((i, k))
            out.extend(round_pairs)
            remaining = rest
        return out
    raise ParameterError(f"unknown coupling order {order!r}")


def append_cost_layer(c: GateList, ising: IsingForm, gamma: float, order: str = "ascending") -> None:
    """Diagonal phase layer exp(-i gamma H_C) up to global phase."""
    for i in sorted(ising.h):
        c.rz(i, 2 * gamma * ising.h[i])
    for i, k in _coupling_rounds(sorted(ising.couplings), order):
        c.cnot(i, k)
        c.rz(k, 2 * gamma * ising.couplings[(i, k)])
        c.cnot(i, k)


def build_cost_layer(q: QuboMatrix, gamma: float, order: str = "ascending") -> GateList:
    c = GateList(q.n)
    append_cost_layer(c, qubo_to_ising(q), gamma, order)
    return c


def build_circuit(q: QuboMatrix, params: QaoaParams, order: str = "ascending") -> GateList:
    """Full QAOA circuit: H on every qubit, then p alternating cost and mixer
    layers."""
    ising = qubo_to_ising(q)
    c = GateList(q.n)
    for qb in range(q.n):
        c.h(qb)
    for layer in range(params.p):
        append_cost_layer(c, ising, params.gammas[layer], order)
        for qb in range(q.n):
            c.rx(qb, 2 * params.betas[layer])
    return c


def cnot_count(c: GateList) -> int:
    return sum(1 for g in c.gates if g.kind == "CNOT")


def depth(c: GateList) -> int:
    """ASAP schedule length: gates on disjoint qubits share a time step."""
    frontier = [0] * c.n
    total = 0
    for g in c.gates:
        t = 1 + max(frontier[qb] for qb in g.qubits)
        for qb in g.qubits:
            frontier[qb] = t
        if t > total:
            total = t
    return total


_INV_SQRT2 = 1 / np.sqrt(2)


def _apply_single(state: np.ndarray, qubit: int, u00, u01, u10, u11) -> None:
    idx = np.arange(state.size)
    lo = idx[(idx >> qubit) & 1 == 0]
    hi = lo | (1 << qubit)
    a, b = state[lo].copy(), state[hi].copy()
    state[lo] = u00 * a + u01 * b
    state[hi] = u10 * a + u11 * b


def evolve(c: GateList, state: np.ndarray) -> np.ndarray:
    """Dense statevector evolution of the full gate sequence."""
    state = state.astype(complex, copy=True)
    for g in c.gates:
        if g.kind == "H":
            _apply_single(state, g.qubits[0], _INV_SQRT2, _INV_SQRT2, _INV_SQRT2, -_INV_SQRT2)
        elif g.kind == "RX":
            cos, sin = np.cos(g.angle / 2), np.sin(g.angle / 2)
            _apply_single(state, g.qubits[0], cos, -1j * sin, -1j * sin, cos)
        elif g.kind == "RZ":
            _apply_single(state, g.qubits[0], np.exp(-1j * g.angle / 2), 0, 0, np.exp(1j * g.angle / 2))
        elif g.kind == "CNOT":
            ctrl, tgt = g.qubits
            idx = np.arange(state.size)
            on = idx[((idx >> ctrl) & 1 == 1) & ((idx >> tgt) & 1 == 0)]
            flipped = on | (1 << tgt)
            state[on], state[flipped] = state[flipped].copy(), state[on].copy()
    return state


def basis_phase(c: GateList, x: Sequence[int], cost_only: bool = False) -> complex:
    """Amplitude of |x> after applying the circuit to |x>.

    With ``cost_only`` the circuit must be diagonal (RZ and CNOT-conjugated RZ
    only) and the returned amplitude is the unit phase picked up by |x>.
    """
    if c.n > STATEVECTOR_GUARD:
        raise CapacityError(f"n={c.n} exceeds statevector guard {STATEVECTOR_GUARD}")
    if len(x) != c.n:
        raise ParameterError(f"basis state length {len(x)} != n={c.n}")
    if cost_only:
        for g in c.gates:
            if g.kind not in ("RZ", "CNOT"):
                raise ParameterError(f"non-diagonal gate {g.kind} under cost_only")
    state = np.zeros(1 << c.n, dtype=complex)
    m = index_from_bits(x)
    state[m] = 1.0
    return complex(evolve(c, state)[m])


# -- Line-oriented text format: header "qubits n", then "H q", "RX q angle",
#    "RZ q angle", "CNOT q1 q2".  Angles carry 17 significant digits.

def format_gate_list(c: GateList) -> str:
    lines = [f"qubits {c.n}"]
    for g in c.gates:
        if g.kind == "CNOT":
            lines.append(f"CNOT {g.qubits[0]} {g.qubits[1]}")
        elif g.kind == "H":
            lines.append(f"H {g.qubits[0]}")
        else:
            lines.append(f"{g.kind} {g.qubits[0]} {g.angle:.17g}")
    return "\n".join(lines) + "\n"


def parse_gate_list(text: str) -> GateList:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("qubits "):
        raise ParameterError("gate list must start with a 'qubits n' header")
    c = GateList(int(lines[0].split()[1]))
    for ln in lines[1:]:
        parts = ln.split()
        kind = parts[0]
        if kind == "CNOT":
            c.cnot(int(parts[1]), int(parts[2]))
        elif kind == "H":
            c.h(int(parts[1]))
        elif kind in ("RX", "RZ"):
            c.append(Gate(kind, (int(parts[1]),), float(parts[2])))
        else:
            raise ParameterError(f"unknown gate line {ln!r}")
    return c

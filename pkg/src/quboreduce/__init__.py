"""Coupling reduction for QAOA circuits by factoring shared QUBO structure
into ancilla qubits."""

from .circuits import (
    Gate,
    GateList,
    IsingForm,
    QaoaParams,
    basis_phase,
    build_circuit,
    build_cost_layer,
    cnot_count,
    depth,
    qubo_to_ising,
)
from .encoders import (
    graph_coloring_qubo,
    graph_isomorphism_qubo,
    hamilton_cycle_qubo,
    max_clique_qubo,
    vertex_cover_qubo,
)
from .experiments import (
    ParetoPoint,
    ProblemSetting,
    SweepRecord,
    aggregate,
    builtin_settings,
    pareto_front,
    run_sweep,
)
from .factoring import (
    FactoringReport,
    FactoringStep,
    SemiSymmetry,
    default_z,
    enhance,
    factor_out,
    get_conflict_list,
    get_most_sym_qubits,
    verify_equivalence,
)
from .graphs import Graph, complement, sample_graph
from .qubo import (
    CapacityError,
    DimensionError,
    ParameterError,
    QuboMatrix,
    SpectrumEntry,
    coupling_count,
    energy,
    min_energy_over_ancillas,
    spectrum,
)

__all__ = [name for name in dir() if not name.startswith("_")]

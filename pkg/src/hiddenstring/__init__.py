"""Hidden-string problems as annealing models.

Builds QUBO/Ising formulations of the two classic hidden-string problems
(parity oracles and two-to-one collision oracles), solves them exactly or
with simulated annealing, and measures the oracle-query and solver-call
cost of doing so.
"""

from .annealer import (
    AnnealResult,
    AnnealSchedule,
    anneal,
    anneal_black_box,
    default_schedule,
)
from .builders import (
    build_bv_qubo,
    build_bv_qubo_from_bits,
    build_simon_literal_qubo,
    bv_labels,
    inequality_penalty,
    simon_coupled_energy,
    simon_labels,
)
from .model import (
    EXHAUSTIVE_CAP,
    BitVector,
    IsingModel,
    QuboModel,
    Spectrum,
    VarKind,
    VarLabel,
    exhaustive_solve,
    ising_energy,
    ising_to_qubo,
    qubo_energy,
    qubo_to_ising,
)
from .oracles import (
    BvOracle,
    SimonOracle,
    random_hidden_string,
)
from .protocol import (
    BV_PROBES,
    ExperimentReport,
    bench_calls,
    check_collision,
    solve_bv,
    solve_simon,
    verify_simon,
    xor_recover,
)
from .qubofile import (
    QuboFormatError,
    export_qubo,
    import_qubo,
    model_from_dict,
    model_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "AnnealResult",
    "AnnealSchedule",
    "BV_PROBES",
    "BitVector",
    "BvOracle",
    "EXHAUSTIVE_CAP",
    "ExperimentReport",
    "IsingModel",
    "QuboFormatError",
    "QuboModel",
    "SimonOracle",
    "Spectrum",
    "VarKind",
    "VarLabel",
    "anneal",
    "anneal_black_box",
    "bench_calls",
    "build_bv_qubo",
    "build_bv_qubo_from_bits",
    "build_simon_literal_qubo",
    "bv_labels",
    "check_collision",
    "default_schedule",
    "exhaustive_solve",
    "export_qubo",
    "import_qubo",
    "inequality_penalty",
    "ising_energy",
    "ising_to_qubo",
    "model_from_dict",
    "model_to_dict",
    "qubo_energy",
    "qubo_to_ising",
    "random_hidden_string",
    "simon_coupled_energy",
    "simon_labels",
    "solve_bv",
    "solve_simon",
    "verify_simon",
    "xor_recover",
    "__version__",
]

"""End-to-end hidden-string protocols with query accounting.

Each solve builds the appropriate energy model, hands it to a solver (the
exhaustive enumerator or the annealer standing in for the annealing
hardware), recovers a hidden-string candidate from the returned state, and
verifies the candidate against the oracle with a fixed number of probe
queries. The resulting :class:`ExperimentReport` records the two resource
counters this package exists to measure:

* ``oracle_queries`` -- calls to the problem oracle (black-box function
  evaluations), counted by the oracle itself;
* ``aqc_calls`` -- annealing runs (one per restart), the unit a hardware
  budget would be quoted in.

Reports are deterministic for a fixed seed: ``wall_time_s`` is the single
field that varies between otherwise identical runs.
"""

from __future__ import annotations

import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .annealer import AnnealSchedule, anneal, anneal_black_box, default_schedule
from .builders import build_bv_qubo, build_simon_literal_qubo, simon_coupled_energy
from .model import BitVector, exhaustive_solve
from .oracles import BvOracle, SimonOracle, random_hidden_string

__all__ = [
    "BV_PROBES",
    "MIN_VERIFY_PROBES",
    "ExperimentReport",
    "xor_recover",
    "check_collision",
    "verify_simon",
    "solve_bv",
    "solve_simon",
    "bench_calls",
]

# Verification probes appended to every run. BV always uses exactly
# BV_PROBES, making its per-run oracle cost n + BV_PROBES queries flat.
BV_PROBES = 16
MIN_VERIFY_PROBES = 4
_VERIFY_PROBES = 16


@dataclass(frozen=True)
class ExperimentReport:
    """Outcome and resource counts of one protocol run.

    ``hidden_a`` is the planted string as an integer (None for blind runs),
    ``recovered_a`` the candidate the protocol settled on (None when it gave
    up). ``trace`` holds one dict per solver call. ``wall_time_s`` is the
    only field two identically seeded runs may disagree on.
    """

    problem: str
    n: int
    seed: int
    solver: str | None
    mode: str | None
    j_policy: str | None
    signal: str | None
    budget: int | None
    hidden_a: int | None
    recovered_a: int | None
    success: bool
    aqc_calls: int
    oracle_queries: int
    wall_time_s: float
    trace: tuple[dict, ...] = ()
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": 1,
            "problem": self.problem,
            "n": self.n,
            "seed": self.seed,
            "solver": self.solver,
            "mode": self.mode,
            "j_policy": self.j_policy,
            "signal": self.signal,
            "budget": self.budget,
            "hidden_a": self.hidden_a,
            "recovered_a": self.recovered_a,
            "success": self.success,
            "aqc_calls": self.aqc_calls,
            "oracle_queries": self.oracle_queries,
            "wall_time_s": self.wall_time_s,
            "trace": [dict(rec) for rec in self.trace],
            "diagnostics": dict(self.diagnostics),
        }


def _seeded_rng(*path: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(path))


def xor_recover(w: BitVector, y: BitVector) -> BitVector:
    """Hidden-string candidate from a colliding pair: a = w xor y."""
    if len(w) != len(y):
        raise ValueError("colliding strings must have equal length")
    if w == y:
        raise ValueError("w and y are identical; their xor carries no hidden string")
    return w ^ y


def check_collision(oracle: SimonOracle, w: BitVector, y: BitVector) -> bool:
    """Whether the oracle maps w and y to the same label (two queries)."""
    return oracle.query(w) == oracle.query(y)


def verify_simon(
    oracle: SimonOracle,
    candidate: BitVector,
    *,
    probes: int = _VERIFY_PROBES,
    seed: int = 0,
) -> bool:
    """Probe whether ``candidate`` behaves like the oracle's hidden string.

    Runs ``probes - 1`` collision probes (g(e) must equal g(e ^ candidate))
    plus one separation probe (g(e) must differ from g(e ^ d) for a random
    d outside {0, candidate}). Under the two-to-one promise the test is
    exact: a wrong nonzero candidate fails the first collision probe.
    """
    if probes < MIN_VERIFY_PROBES:
        raise ValueError(f"need at least {MIN_VERIFY_PROBES} probes")
    n = oracle.n
    if len(candidate) != n:
        raise ValueError("candidate length does not match the oracle")
    if candidate.to_integer() == 0:
        return False
    rng = _seeded_rng(seed, 0xC0111DE)
    for _ in range(probes - 1):
        e = random_hidden_string(n, rng)
        if oracle.query(e) != oracle.query(e ^ candidate):
            return False
    e = random_hidden_string(n, rng)
    while True:
        d = random_hidden_string(n, rng, nonzero=True)
        if d != candidate:
            break
    return oracle.query(e) != oracle.query(e ^ d)


def _model_floor(model) -> Fraction:
    """Sum of all negative coefficients: a lower bound on the energy.

    Tight for diagonal models, which makes it a safe early-stop target.
    """
    total = Fraction(0)
    for c in model.linear.values():
        if c < 0:
            total += c
    for c in model.quadratic.values():
        if c < 0:
            total += c
    return total


def solve_bv(
    oracle: BvOracle,
    *,
    solver: str = "anneal",
    schedule: AnnealSchedule | None = None,
    seed: int = 0,
    blind: bool = False,
) -> ExperimentReport:
    """Learn a parity-oracle hidden string and verify the answer.

    Builds the diagonal model from n unit-vector queries, finds its ground
    state with the chosen solver ("anneal" or "exhaustive"), reads the
    hidden-string candidate straight off the ground state, then checks it
    against the oracle on BV_PROBES random inputs. Total oracle cost is
    exactly ``n + BV_PROBES`` queries on every run, success or not.
    """
    if solver not in ("anneal", "exhaustive"):
        raise ValueError(f"unknown solver {solver!r}")
    start = time.perf_counter()
    n = oracle.n
    q0 = oracle.queries
    model = build_bv_qubo(oracle)

    diagnostics: dict[str, Any] = {}
    if solver == "exhaustive":
        spectrum = exhaustive_solve(model)
        candidate = spectrum.ground_states()[0]
        best_energy = spectrum.ground_energy
        aqc_calls = 1
        diagnostics["ground_count"] = spectrum.ground_count
    else:
        if schedule is None:
            schedule = default_schedule(model)
        result = anneal(
            model,
            schedule,
            seed=seed,
            target_energy=float(_model_floor(model)),
        )
        candidate = result.best_assignment
        best_energy = result.best_energy
        aqc_calls = result.restarts_used
        diagnostics["energy_evaluations"] = result.energy_evaluations

    rng = _seeded_rng(seed, 0xB5)
    mismatches = 0
    for _ in range(BV_PROBES):
        probe = random_hidden_string(n, rng)
        predicted = (probe.to_integer() & candidate.to_integer()).bit_count() & 1
        if oracle.query(probe) != predicted:
            mismatches += 1
    success = mismatches == 0
    diagnostics["best_energy"] = float(best_energy)
    diagnostics["probe_mismatches"] = mismatches

    return ExperimentReport(
        problem="bv",
        n=n,
        seed=seed,
        solver=solver,
        mode=None,
        j_policy=None,
        signal=None,
        budget=None,
        hidden_a=None if blind else oracle.reveal_hidden_string().to_integer(),
        recovered_a=candidate.to_integer(),
        success=success,
        aqc_calls=aqc_calls,
        oracle_queries=oracle.queries - q0,
        wall_time_s=time.perf_counter() - start,
        trace=(
            {
                "call": 1,
                "energy": float(best_energy),
                "recovered_a": candidate.to_integer(),
            },
        ),
        diagnostics=diagnostics,
    )


def _coupled_schedule(n: int) -> AnnealSchedule:
    # One hardware call per invocation; the ceiling 6.0 is the largest
    # single-flip move (signal step 1 plus constraint step 5).
    return AnnealSchedule(sweeps=48 * n, t_initial=6.0, t_final=0.01, restarts=1)


def _literal_schedule(n: int) -> AnnealSchedule:
    # Short cold-ish run: the four constrained variables settle in a few
    # sweeps and the unconstrained ones stay uniform.
    return AnnealSchedule(sweeps=40, t_initial=5.0, t_final=0.01, restarts=1)


def solve_simon(
    oracle: SimonOracle,
    *,
    mode: str = "coupled",
    j_policy: str = "cycle",
    j: int | None = None,
    budget: int | None = None,
    signal: str = "indicator",
    schedule: AnnealSchedule | None = None,
    seed: int = 0,
    blind: bool = False,
) -> ExperimentReport:
    """Search for a colliding pair and recover the hidden string as w xor y.

    Repeats solver calls until a verified collision is found or ``budget``
    calls are spent (default 64 * n). Each call pins one coordinate j where
    w and y are forced to differ; the "cycle" policy sweeps j over 1..n so
    some call lands on a coordinate where the hidden string has a 1, the
    "fixed" policy keeps the given j throughout.

    mode="coupled" anneals the oracle-coupled objective (every flip priced
    by two oracle queries); mode="literal" anneals the explicit constraint
    model, then asks the oracle (two queries) whether the sampled pair
    actually collides.
    """
    if mode not in ("coupled", "literal"):
        raise ValueError(f"unknown mode {mode!r}")
    if j_policy not in ("cycle", "fixed"):
        raise ValueError(f"unknown j policy {j_policy!r}")
    if j_policy == "fixed":
        if j is None:
            raise ValueError("fixed j policy needs an explicit j")
    elif j is not None:
        raise ValueError("explicit j only makes sense with the fixed policy")

    start = time.perf_counter()
    n = oracle.n
    if budget is None:
        budget = 64 * n
    if budget < 1:
        raise ValueError("budget must be positive")
    q0 = oracle.queries

    trace: list[dict] = []
    aqc_calls = 0
    success = False
    recovered: BitVector | None = None
    literal_model = None

    call = 0
    while aqc_calls < budget and not success:
        call += 1
        j_call = j if j_policy == "fixed" else ((call - 1) % n) + 1
        call_seed_pair = (seed, call)

        if mode == "coupled":
            sched = schedule if schedule is not None else _coupled_schedule(n)

            def energy(state: BitVector, _j: int = j_call) -> Fraction:
                w = BitVector(state[:n])
                y = BitVector(state[n:])
                return simon_coupled_energy(oracle, w, y, _j, signal=signal)

            result = anneal_black_box(
                energy,
                2 * n,
                sched,
                seed=_spawn_seed(call_seed_pair),
                target_energy=-1.0,
            )
            bits = result.best_assignment
            w = BitVector(bits[:n])
            y = BitVector(bits[n:])
            best_energy = float(result.best_energy)
        else:
            if literal_model is None or j_policy == "cycle":
                literal_model = build_simon_literal_qubo(n, j_call)
            sched = schedule if schedule is not None else _literal_schedule(n)
            result = anneal(literal_model, sched, seed=_spawn_seed(call_seed_pair))
            bits = result.best_assignment
            w = BitVector(bits[:n])
            y = BitVector(bits[n : 2 * n])
            best_energy = float(result.best_energy)
        aqc_calls += result.restarts_used

        accepted = w != y and check_collision(oracle, w, y)
        trace.append(
            {
                "call": call,
                "j": j_call,
                "w": w.to_integer(),
                "y": y.to_integer(),
                "energy": best_energy,
                "accepted": accepted,
            }
        )
        if accepted:
            candidate = xor_recover(w, y)
            if verify_simon(oracle, candidate, seed=_spawn_seed((seed, 0))):
                success = True
                recovered = candidate

    return ExperimentReport(
        problem="simon",
        n=n,
        seed=seed,
        solver="anneal",
        mode=mode,
        j_policy=j_policy,
        signal=signal if mode == "coupled" else None,
        budget=budget,
        hidden_a=None if blind else oracle.reveal_hidden_string().to_integer(),
        recovered_a=recovered.to_integer() if recovered is not None else None,
        success=success,
        aqc_calls=aqc_calls,
        oracle_queries=oracle.queries - q0,
        wall_time_s=time.perf_counter() - start,
        trace=tuple(trace),
        diagnostics={"calls": call},
    )


def _spawn_seed(path: tuple[int, ...]) -> int:
    """Deterministic 63-bit child seed from a path of integers."""
    return int(np.random.SeedSequence(path).generate_state(1, np.uint64)[0] >> 1)


def _bench_one(
    problem: str,
    n: int,
    trial: int,
    seed: int,
    options: dict[str, Any],
) -> tuple[int, int, ExperimentReport]:
    rng = _seeded_rng(seed, n, trial, 0)
    run_seed = _spawn_seed((seed, n, trial, 1))
    if problem == "bv":
        a = random_hidden_string(n, rng)
        oracle = BvOracle(a)
        report = solve_bv(
            oracle,
            solver=options["solver"],
            schedule=options["schedule"],
            seed=run_seed,
        )
    else:
        a = random_hidden_string(n, rng, nonzero=True)
        oracle = SimonOracle(a, seed=_spawn_seed((seed, n, trial, 2)))
        report = solve_simon(
            oracle,
            mode=options["mode"],
            j_policy=options["j_policy"],
            j=options["j"],
            budget=options["budget"],
            signal=options["signal"],
            schedule=options["schedule"],
            seed=run_seed,
        )
    return n, trial, report


def bench_calls(
    problem: str,
    n_values: Sequence[int],
    trials: int = 50,
    *,
    seed: int = 0,
    workers: int = 1,
    solver: str = "anneal",
    mode: str = "coupled",
    j_policy: str = "cycle",
    j: int | None = None,
    budget: int | None = None,
    signal: str = "indicator",
    schedule: AnnealSchedule | None = None,
) -> list[dict[str, Any]]:
    """Measure solver-call and oracle-query statistics across problem sizes.

    Runs ``trials`` independently seeded instances per n and aggregates one
    row per n: success and correctness counts plus mean/median/population
    stdev of the call and query counters over all trials. Rows and counters
    are deterministic in ``seed`` regardless of ``workers``.
    """
    if problem not in ("bv", "simon"):
        raise ValueError(f"unknown problem {problem!r}")
    if trials < 1:
        raise ValueError("trials must be positive")
    options = {
        "solver": solver,
        "mode": mode,
        "j_policy": j_policy,
        "j": j,
        "budget": budget,
        "signal": signal,
        "schedule": schedule,
    }
    jobs = [(n, t) for n in n_values for t in range(trials)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(lambda nt: _bench_one(problem, nt[0], nt[1], seed, options), jobs)
            )
    else:
        results = [_bench_one(problem, n, t, seed, options) for n, t in jobs]

    by_n: dict[int, list[ExperimentReport]] = {int(n): [] for n in n_values}
    for n, trial, report in sorted(results, key=lambda r: (r[0], r[1])):
        by_n[n].append(report)

    rows = []
    for n in n_values:
        reports = by_n[int(n)]
        calls = [r.aqc_calls for r in reports]
        queries = [r.oracle_queries for r in reports]
        correct = sum(
            1 for r in reports if r.success and r.recovered_a == r.hidden_a
        )
        rows.append(
            {
                "problem": problem,
                "n": int(n),
                "trials": trials,
                "success_count": sum(1 for r in reports if r.success),
                "correct_count": correct,
                "mean_calls": statistics.fmean(calls),
                "median_calls": float(statistics.median(calls)),
                "stdev_calls": statistics.pstdev(calls),
                "mean_queries": statistics.fmean(queries),
                "median_queries": float(statistics.median(queries)),
                "stdev_queries": statistics.pstdev(queries),
            }
        )
    return rows

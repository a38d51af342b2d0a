"""
Counting oracle queries and annealer calls across problem sizes
===============================================================

Two resource counters matter here: how often the hidden-string oracle is
queried, and how many annealing runs it takes before a usable answer
appears. This script shows the parity problem's flat n + 16 query bill,
benchmarks the collision search as n grows, and checks the literal
(oracle-blind) mode against its coin-flip analysis.
"""

from hiddenstring import (
    AnnealSchedule,
    BitVector,
    BvOracle,
    SimonOracle,
    bench_calls,
    solve_bv,
    solve_simon,
)

# --- parity: one matrix build + a fixed verification bill ------------------
# Building the model costs n unit-vector queries; checking the candidate
# against 16 random probes costs 16 more, no matter how the solve went.
light = AnnealSchedule(sweeps=60, t_initial=1.0, t_final=0.01, restarts=2)
print("parity queries are n + 16 regardless of size or outcome:")
for n in (8, 64, 512):
    oracle = BvOracle(BitVector.from_integer((1 << n) - 1, n))
    report = solve_bv(oracle, schedule=light, seed=n)
    print(f"  n={n:4d}: success={report.success}  "
          f"queries={report.oracle_queries} (= {n} + 16)  "
          f"aqc_calls={report.aqc_calls}")

# --- collision search: calls stay small as n grows --------------------------
print("\ncollision search, 20 random instances per size:")
print(f"  {'n':>3} {'ok':>5} {'mean calls':>11} {'median':>7} "
      f"{'mean queries':>13}")
for row in bench_calls("simon", [4, 6, 8], trials=20, seed=2):
    print(f"  {row['n']:>3} {row['success_count']:>2}/{row['trials']:<2} "
          f"{row['mean_calls']:>11.2f} {row['median_calls']:>7.1f} "
          f"{row['mean_queries']:>13.1f}")

# --- the literal mode is a fair coin per free bit ---------------------------
# Without oracle coupling, each annealing call returns a uniformly random
# pair that differs at coordinate j, so it collides with probability
# 2^-(n-1) when bit j of the hidden string is set. The mean number of
# calls before success should sit near 2^(n-1).
n = 4
a = BitVector.from_integer(0b1011, n)  # bit 1 of a is set, so j=1 can work
trials = 200
calls = []
for t in range(trials):
    report = solve_simon(
        SimonOracle(a, seed=t),
        mode="literal",
        j_policy="fixed",
        j=1,
        seed=t,
    )
    assert report.success and report.recovered_a == a.to_integer()
    calls.append(report.aqc_calls)
mean = sum(calls) / trials
print(f"\nliteral mode, n={n}, fixed j=1, {trials} trials:")
print(f"  mean calls to first collision: {mean:.2f} "
      f"(geometric prediction 2^(n-1) = {2 ** (n - 1)})")

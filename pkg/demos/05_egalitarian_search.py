"""Egalitarian committees: maximize the worst-off voter's value.

The trick: "is there a committee giving everyone at least L?" is a pure
committee-variable feasibility program whose rows are segment (or ballot)
incidence rows, so single-peaked structure keeps every probe integral, and a
binary search over the finitely many achievable per-voter values finds the
exact max-min level.

Run:  python demos/05_egalitarian_search.py
"""

from votelp import (
    OwaVector,
    RuleSpec,
    ScoringVector,
    brute_force_egalitarian,
    egalitarian_feasibility_ip,
    egalitarian_solve,
    generate_candidate_interval,
    generate_single_peaked,
    parse_profile,
    serialize_ip,
    solve_ip,
)

print("=== one feasibility probe, spelled out ===")
profile = parse_profile("3\na b c\n1: a > b > c\n1: b > a > c\n1: c > b > a\n")
rule = RuleSpec("cc", 1, weights=ScoringVector.borda(3))
inst = egalitarian_feasibility_ip(profile, rule, level=2)
print(serialize_ip(inst))
print("level 2 feasible:", solve_ip(inst).final.status == "optimal")
print("level 3 feasible:", solve_ip(egalitarian_feasibility_ip(profile, rule, 3)).final.status == "optimal")

print()
print("=== the search, with its probe trace ===")
result = egalitarian_solve(profile, rule)
print("best level:", result.best_level, " committee:", sorted(result.committee))
for level, report in result.probes:
    print(f"  probed L={level}: {report.final.status}"
          + (f", relaxation integral = {report.lp_integral}" if report.lp.status == "optimal" else ""))

print()
print("=== against brute force on generated structured inputs ===")
for seed in (1, 2, 3):
    sp, _ = generate_single_peaked(m=6, n=9, seed=seed)
    rule = RuleSpec("cc", 2, weights=ScoringVector.borda(6))
    mine = egalitarian_solve(sp, rule)
    brute = brute_force_egalitarian(rule, sp)
    print(f"seed {seed}: search={mine.best_level}  brute={brute.best_value}  "
          f"probes all integral={mine.all_relaxations_integral()}")

for seed in (4, 5):
    ci, _ = generate_candidate_interval(m=6, n=9, seed=seed)
    rule = RuleSpec("pav", 3, owa=OwaVector.harmonic(3))
    mine = egalitarian_solve(ci, rule)
    brute = brute_force_egalitarian(rule, ci)
    print(f"seed {seed}: search={mine.best_level}  brute={brute.best_value}  "
          f"probes all integral={mine.all_relaxations_integral()}")

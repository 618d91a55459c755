"""Deletion scores: how many voters can stay while a fixed alternative beats
every rival outright?

On single-crossing profiles the deletion program's relaxation is integral.
The walkthrough also shows the one place the printed formulation and the
exhaustive definition part ways, which reports surface rather than hide.

Run:  python demos/03_young_scores.py
"""

from votelp import (
    condorcet_winner,
    generate_single_crossing,
    is_single_crossing,
    parse_profile,
    serialize_ip,
    solve_ip,
    young_ip,
    young_score_bruteforce,
    young_score_median,
)

print("=== a Condorcet winner needs no deletions ===")
profile = parse_profile("2\na b\n2: a > b\n1: b > a\n")
print("winner:", condorcet_winner(profile))
report = solve_ip(young_ip(profile, "a"))
print("deletions for a:", report.final.objective)

print()
print("=== five voters, target needs four deletions ===")
e5 = parse_profile("3\na b c\n1: a > b > c\n1: b > a > c\n1: b > c > a\n2: c > b > a\n")
report = solve_ip(young_ip(e5, "a"))
print("deletions:", report.final.objective, " deleted voters:", sorted(report.extracted.deleted_voters))
score, witness = young_score_bruteforce(e5, "a")
print("exhaustive score (max voters kept):", score, " witness:", sorted(witness))
ordering = is_single_crossing(e5)
print("median-trimming score:", young_score_median(e5, ordering, "a"))

print()
print("=== the deletion program on a generated single-crossing profile ===")
sc, ordering = generate_single_crossing(m=5, n=9, seed=21)
target = sc.alternatives[2]
report = solve_ip(young_ip(sc, target))
print(f"target {target}: relaxation integral = {report.lp_integral}")
if report.final.status == "optimal":
    implied = sc.n - int(report.final.objective)
    print("implied score:", implied, " exhaustive:", young_score_bruteforce(sc, target)[0])

print()
print("=== where the printed formulation overreaches ===")
e3 = parse_profile("3\na b c\n2: c > a > b\n1: b > a > c\n")
inst = young_ip(e3, "a")
print(serialize_ip(inst))
report = solve_ip(inst)
print("program says: delete", report.final.objective, "voters")
print("exhaustive search says:", young_score_bruteforce(e3, "a"))
print("(no nonempty subprofile makes a the outright winner; the constraint for")
print(" challenger c can be satisfied by deletions that simultaneously hand the")
print(" election to b - the CLI flags exactly this as a formulation gap)")

"""Why the relaxations are integral: consecutive ones and total unimodularity.

A 0/1 matrix whose columns can be ordered so that every row's ones are
contiguous is totally unimodular, and totally unimodular matrices have integral
LP vertices.  The committee programs are built so their coefficient matrices
reduce to exactly the segment matrix (plus an all-ones row), which has the
consecutive-ones property whenever the profile is single-peaked.

Run:  python demos/04_total_unimodularity.py
"""

from votelp import (
    BinaryMatrix,
    ScoringVector,
    SignedMatrix,
    append_all_ones_row,
    apply_column_permutation,
    build_sp_matrix,
    cc_ip,
    committee_submatrix,
    dedup_rows,
    generate_single_peaked,
    has_c1p,
    is_totally_unimodular,
    parse_profile,
)


def show(matrix):
    for label, row in zip(matrix.row_labels, matrix.entries):
        print(f"  {label:>8}  {' '.join(f'{v:>2}' for v in row)}")


print("=== consecutive ones, found by column placement ===")
scrambled = BinaryMatrix(
    ((1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1)),
    ("r1", "r2", "r3"),
    ("c1", "c2", "c3", "c4"),
)
show(scrambled)
perm = has_c1p(scrambled)
print("column order that works:", perm)
show(apply_column_permutation(scrambled, perm))

print()
print("=== the signing test for total unimodularity ===")
identity_ish = SignedMatrix(((1, 1, 0), (0, 1, 1)), ("r1", "r2"), ("c1", "c2", "c3"))
print("interval matrix:", is_totally_unimodular(identity_ish).kind)
bad = SignedMatrix(((1, 1), (-1, 1)), ("r1", "r2"), ("c1", "c2"))
verdict = is_totally_unimodular(bad)
print(
    "2x2 counterexample:", verdict.kind,
    "- witness submatrix", verdict.witness_rows, "x", verdict.witness_cols,
    "has determinant", verdict.witness_det,
)

print()
print("=== structured constraint matrices pass, three ways ===")
profile, _ = generate_single_peaked(m=5, n=6, seed=4)
segment = build_sp_matrix(profile)
print("segment matrix + all-ones row:", is_totally_unimodular(append_all_ones_row(segment)).kind)
instance = cc_ip(profile, ScoringVector.borda(5), k=2)
reduced = dedup_rows(committee_submatrix(instance, include_cardinality=True))
print(f"reduced committee columns ({reduced.num_rows} rows):",
      is_totally_unimodular(reduced).kind)
small_profile, _ = generate_single_peaked(m=3, n=4, seed=4)
small_instance = cc_ip(small_profile, ScoringVector.borda(3), k=2)
from votelp import constraint_matrix

print("full coefficient matrix of a tiny instance:",
      is_totally_unimodular(constraint_matrix(small_instance)).kind)

print()
print("=== two voters suffice even without an axis ===")
two = parse_profile("4\na b c d\n1: a > b > c > d\n1: a > d > c > b\n")
from votelp import is_single_peaked

print("single-peaked?", is_single_peaked(two))
matrix = append_all_ones_row(build_sp_matrix(two))
print("segment matrix + ones row still tests:", is_totally_unimodular(matrix).kind)

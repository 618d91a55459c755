"""Profiles, structured generators, and recognition with certificates.

Run:  python demos/01_profiles_and_structure.py
"""

from votelp import (
    build_sc_matrix,
    build_sp_matrix,
    generate_single_crossing,
    generate_single_peaked,
    is_single_crossing,
    is_single_peaked,
    majority_margin,
    parse_profile,
    serialize_profile,
)

print("=== parsing the text format ===")
text = """\
3
a b c
1: a > b > c
1: b > a > c
1: c > b > a
"""
profile = parse_profile(text)
print(f"{profile.n} voters over {profile.m} alternatives")
print("round-trip:", serialize_profile(profile) == text)
print("majority margin of b over a:", majority_margin(profile, "b", "a"))

print()
print("=== the segment matrix behind single-peaked recognition ===")
matrix = build_sp_matrix(profile)
for label, row in zip(matrix.row_labels, matrix.entries):
    print(f"  {label:>6}  {''.join(map(str, row))}")
axis = is_single_peaked(profile)
print("recognized axis:", " < ".join(axis.ordering))

print()
print("=== a profile with no axis at all ===")
cycle = parse_profile("3\na b c\n1: a > b > c\n1: b > c > a\n1: c > a > b\n")
print("single-peaked:", is_single_peaked(cycle))
print("single-crossing:", is_single_crossing(cycle))

print()
print("=== seeded generators come with hidden certificates ===")
sp_profile, hidden_axis = generate_single_peaked(m=6, n=4, seed=11)
print(serialize_profile(sp_profile), end="")
print("hidden axis:      ", " < ".join(hidden_axis.ordering))
print("recovered axis:   ", " < ".join(is_single_peaked(sp_profile).ordering))

sc_profile, ordering = generate_single_crossing(m=4, n=5, seed=3)
print()
print("single-crossing sample, pairwise matrix columns are voters:")
msc = build_sc_matrix(sc_profile)
for label, row in list(zip(msc.row_labels, msc.entries))[:4]:
    print(f"  {label:>5}  {''.join(map(str, row))}")
print("certifying voter ordering:", is_single_crossing(sc_profile))

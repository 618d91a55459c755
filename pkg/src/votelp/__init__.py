"""Committee selection and deletion scores through exact LP relaxations.

Builds integer programs for approval-credit, best-representative and
ordered-weighted-average committee rules plus voter-deletion scores, solves
them with an exact rational simplex (relaxation first, branch-and-bound
only when needed), and reports when the relaxation alone was integral -
which it provably is on single-peaked / single-crossing inputs because the
constraint matrices become totally unimodular.  Structure tests
(consecutive ones, total unimodularity) and brute-force oracles round out
the toolkit.
"""

from .model import (
    ApprovalProfile,
    Axis,
    Profile,
    ProfileFormatError,
    WeakOrder,
    generate_candidate_interval,
    generate_random_linear,
    generate_single_crossing,
    generate_single_peaked,
    majority_margin,
    normalize_profile_text,
    parse_profile,
    rank_of,
    serialize_profile,
    top_initial_segment,
)
from .structure import (
    BinaryMatrix,
    SignedMatrix,
    TUResult,
    append_all_ones_row,
    apply_column_permutation,
    build_ballot_matrix,
    build_sc_matrix,
    build_sp_matrix,
    dedup_rows,
    has_c1p,
    is_candidate_interval,
    is_single_crossing,
    is_single_peaked,
    is_strong_c1p,
    is_totally_unimodular,
    parse_matrix,
    serialize_matrix,
)
from .formulate import (
    CARDINALITY_LABEL,
    COMMITTEE,
    DELETION,
    POINT,
    Constraint,
    EgalitarianResult,
    ExtractedSolution,
    IPInstance,
    OwaVector,
    RuleSpec,
    ScoringVector,
    Variable,
    cc_ip,
    committee_assignment,
    committee_submatrix,
    constraint_matrix,
    egalitarian_feasibility_ip,
    egalitarian_levels,
    egalitarian_solve,
    extract_solution,
    marginal_weights,
    owa_ip,
    pav_ip,
    relax_point_integrality,
    serialize_ip,
    young_ip,
)
from .simplex import LPSolution, SolveReport, is_integral, solve_ip, solve_lp
from .oracle import (
    OracleResult,
    brute_force_committee,
    brute_force_egalitarian,
    committee_value,
    condorcet_winner,
    voter_value,
    young_score_bruteforce,
    young_score_median,
)
from .rationals import rat, rat_str

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Shared test fixtures and tiny builders.

The worked profiles below are the regression anchors used across the test
modules; expected values asserted against them were computed independently
(by hand or by the enumeration oracles in this directory) before the
optimization path existed.
"""

from __future__ import annotations

import itertools
import random

from votelp import ApprovalProfile, Profile, parse_profile


def ranked(names: str, *orders: str) -> Profile:
    """Build a ranked profile from compact strings like ``"2: {a,b}>c"``."""
    alts = names.split()
    lines = [str(len(alts)), names]
    for order in orders:
        if ":" in order:
            lines.append(order)
        else:
            lines.append(f"1: {order}")
    return parse_profile("\n".join(lines) + "\n")


def approval(names: str, *ballots) -> ApprovalProfile:
    alts = names.split()
    lines = [str(len(alts)), names]
    for ballot in ballots:
        lines.append("1: {" + ",".join(sorted(ballot)) + "}")
    return parse_profile("\n".join(lines) + "\n", format="approval")


# the example profiles referenced throughout the tests
def profile_e1() -> Profile:
    return ranked("a b c", "a>b>c", "b>a>c", "c>b>a")


def profile_e2() -> ApprovalProfile:
    return approval("a b c d", {"a", "b"}, {"b", "c"}, {"c", "d"})


def profile_e3() -> Profile:
    return ranked("a b c", "2: c>a>b", "b>a>c")


def profile_e4() -> Profile:
    return ranked("a b", "2: a>b", "b>a")


def profile_e5() -> Profile:
    return ranked("a b c", "a>b>c", "b>a>c", "b>c>a", "2: c>b>a")


def profile_cycle3() -> Profile:
    return ranked("a b c", "a>b>c", "b>c>a", "c>a>b")


def coverage_gap_profile() -> Profile:
    """Weak orders whose top classes are all pairs from four alternatives.

    With top-class-only scoring and committees of two this has a strict
    LP/IP gap (relaxation 6 versus best committee 5), so it reliably
    exercises the branch-and-bound path.
    """
    alts = "abcd"
    orders = []
    for pair in itertools.combinations(alts, 2):
        top = ",".join(sorted(pair))
        rest = ",".join(sorted(set(alts) - set(pair)))
        orders.append(f"{{{top}}} > {{{rest}}}")
    return ranked("a b c d", *orders)


def random_binary_matrix(rng: random.Random, max_rows: int, max_cols: int):
    from votelp import BinaryMatrix

    nrows = rng.randint(1, max_rows)
    ncols = rng.randint(1, max_cols)
    entries = tuple(
        tuple(rng.randint(0, 1) for _ in range(ncols)) for _ in range(nrows)
    )
    return BinaryMatrix(
        entries,
        tuple(f"r{i}" for i in range(nrows)),
        tuple(f"c{j}" for j in range(ncols)),
    )


def random_signed_matrix(rng: random.Random, max_rows: int, max_cols: int):
    from votelp import SignedMatrix

    nrows = rng.randint(1, max_rows)
    ncols = rng.randint(1, max_cols)
    entries = tuple(
        tuple(rng.choice((-1, 0, 0, 1)) for _ in range(ncols)) for _ in range(nrows)
    )
    return SignedMatrix(
        entries,
        tuple(f"r{i}" for i in range(nrows)),
        tuple(f"c{j}" for j in range(ncols)),
    )


def random_weak_profile(rng: random.Random, m: int, n: int) -> Profile:
    """Random profile of weak orders (random linear order, random class breaks)."""
    from votelp import WeakOrder
    from votelp.model import default_alternative_names

    names = default_alternative_names(m)
    voters = []
    for _ in range(n):
        order = list(names)
        rng.shuffle(order)
        classes = []
        current = [order[0]]
        for name in order[1:]:
            if rng.random() < 0.3:
                current.append(name)
            else:
                classes.append(current)
                current = [name]
        classes.append(current)
        voters.append(WeakOrder.from_classes(classes))
    return Profile(tuple(names), tuple(voters))


def random_approval_profile(
    rng: random.Random, m: int, n: int, allow_empty: bool = False
) -> ApprovalProfile:
    from votelp.model import default_alternative_names

    names = default_alternative_names(m)
    ballots = []
    for _ in range(n):
        while True:
            ballot = frozenset(c for c in names if rng.random() < 0.5)
            if ballot or allow_empty:
                break
        ballots.append(ballot)
    return ApprovalProfile(tuple(names), tuple(ballots))


def tu_by_determinant_enumeration(matrix) -> bool:
    """Independent total-unimodularity oracle: check every square minor."""
    from votelp.structure import _int_det

    entries = matrix.entries
    nrows, ncols = len(entries), len(entries[0]) if entries else 0
    for size in range(1, min(nrows, ncols) + 1):
        for rsub in itertools.combinations(range(nrows), size):
            for csub in itertools.combinations(range(ncols), size):
                det = _int_det([[entries[i][j] for j in csub] for i in rsub])
                if det not in (-1, 0, 1):
                    return False
    return True


def c1p_by_permutation_search(matrix) -> bool:
    """Independent consecutive-ones oracle: try every column permutation."""
    rows = [tuple(row) for row in matrix.entries]
    ncols = len(matrix.col_labels)
    for perm in itertools.permutations(range(ncols)):
        ok = True
        for row in rows:
            ones = [pos for pos, j in enumerate(perm) if row[j]]
            if ones and ones[-1] - ones[0] + 1 != len(ones):
                ok = False
                break
        if ok:
            return True
    return False

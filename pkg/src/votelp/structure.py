"""Structural tests on profiles and 0/±1 matrices.

Builds the top-initial-segment incidence matrix (one row per voter/rank
pair) and the pairwise-comparison matrix (one column per voter), recognizes
the consecutive-ones property by backtracking column placement, and tests
total unimodularity with the Ghouila-Houri row-signing criterion at desk
scale.  Single-peaked, single-crossing and candidate-interval recognition
all reduce to the consecutive-ones test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import ApprovalProfile, Axis, Profile


def _validate_grid(entries, allowed, row_labels, col_labels):
    if len(entries) != len(row_labels):
        raise ValueError("row label count does not match matrix")
    ncols = len(col_labels)
    for row in entries:
        if len(row) != ncols:
            raise ValueError("ragged matrix row")
        for v in row:
            if v not in allowed:
                raise ValueError(f"entry {v!r} outside {sorted(allowed)}")


@dataclass(frozen=True)
class BinaryMatrix:
    """0/1 matrix with row and column labels."""

    entries: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    def __post_init__(self):
        _validate_grid(self.entries, {0, 1}, self.row_labels, self.col_labels)

    @property
    def num_rows(self) -> int:
        return len(self.entries)

    @property
    def num_cols(self) -> int:
        return len(self.col_labels)

    def to_signed(self) -> "SignedMatrix":
        return SignedMatrix(self.entries, self.row_labels, self.col_labels)


@dataclass(frozen=True)
class SignedMatrix:
    """Matrix over {-1, 0, +1} (the precondition of the TU definition)."""

    entries: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    def __post_init__(self):
        _validate_grid(self.entries, {-1, 0, 1}, self.row_labels, self.col_labels)

    @property
    def num_rows(self) -> int:
        return len(self.entries)

    @property
    def num_cols(self) -> int:
        return len(self.col_labels)

    def transpose(self) -> "SignedMatrix":
        cols = tuple(zip(*self.entries)) if self.entries else ()
        if not self.entries:
            cols = tuple(() for _ in self.col_labels)
        return SignedMatrix(cols, self.col_labels, self.row_labels)


def matrix_from_rows(rows, row_labels=None, col_labels=None) -> SignedMatrix:
    rows = tuple(tuple(r) for r in rows)
    ncols = len(rows[0]) if rows else 0
    if row_labels is None:
        row_labels = tuple(f"r{i + 1}" for i in range(len(rows)))
    if col_labels is None:
        col_labels = tuple(f"c{j + 1}" for j in range(ncols))
    return SignedMatrix(rows, tuple(row_labels), tuple(col_labels))


# ---------------------------------------------------------------------------
# profile-derived matrices


def build_sp_matrix(profile: Profile) -> BinaryMatrix:
    """Top-initial-segment incidence matrix: one column per alternative, one
    row per (voter, rank threshold) pair.  Duplicate rows are retained so
    rows stay aligned with constraints built elsewhere."""
    cols = profile.alternatives
    col_index = {c: j for j, c in enumerate(cols)}
    entries = []
    labels = []
    for i, order in enumerate(profile.voters):
        covered = [0] * len(cols)
        for t, cls in enumerate(order.indifference_classes, start=1):
            for name in cls:
                covered[col_index[name]] = 1
            entries.append(tuple(covered))
            labels.append(f"v{i + 1}:t{t}")
    return BinaryMatrix(tuple(entries), tuple(labels), cols)


def build_ballot_matrix(approval: ApprovalProfile) -> BinaryMatrix:
    """Ballot incidence matrix: rows are approval sets, columns alternatives."""
    cols = approval.alternatives
    entries = tuple(
        tuple(1 if c in ballot else 0 for c in cols) for ballot in approval.ballots
    )
    labels = tuple(f"v{i + 1}" for i in range(approval.n))
    return BinaryMatrix(entries, labels, cols)


def build_sc_matrix(profile: Profile) -> BinaryMatrix:
    """Pairwise-comparison matrix: one column per voter, one row per ordered
    pair (a, b) with a != b; entry 1 iff the voter strictly prefers a to b."""
    if not profile.is_linear():
        raise ValueError("single-crossing matrix requires linear orders")
    cols = tuple(f"v{i + 1}" for i in range(profile.n))
    entries = []
    labels = []
    for a in profile.alternatives:
        for b in profile.alternatives:
            if a == b:
                continue
            entries.append(
                tuple(1 if v.prefers(a, b) else 0 for v in profile.voters)
            )
            labels.append(f"{a}>{b}")
    return BinaryMatrix(tuple(entries), tuple(labels), cols)


# ---------------------------------------------------------------------------
# consecutive ones


def is_strong_c1p(matrix: BinaryMatrix) -> bool:
    """Do the 1s of every row already form a contiguous block?"""
    for row in matrix.entries:
        ones = [j for j, v in enumerate(row) if v]
        if ones and ones[-1] - ones[0] + 1 != len(ones):
            return False
    return True


def apply_column_permutation(matrix: BinaryMatrix, perm) -> BinaryMatrix:
    perm = tuple(perm)
    if sorted(perm) != list(range(matrix.num_cols)):
        raise ValueError("not a column permutation")
    entries = tuple(tuple(row[j] for j in perm) for row in matrix.entries)
    cols = tuple(matrix.col_labels[j] for j in perm)
    return BinaryMatrix(entries, matrix.row_labels, cols)


def has_c1p(matrix: BinaryMatrix):
    """Search for a column permutation making every row's 1s contiguous.

    Columns are placed left to right by depth-first search.  Once a row is
    split by the current prefix (some 1s placed, some not), its placed part
    must sit flush against the prefix end, so the next column is forced to
    lie in every split row; that intersection is exactly the candidate set,
    which makes the search complete.  Worst case is exponential, which is
    fine at desk scale; the returned permutation is re-verified before it is
    handed out.  Returns the permutation (new position -> old column index)
    or None.
    """
    m = matrix.num_cols
    row_sets = {
        frozenset(j for j, v in enumerate(row) if v) for row in matrix.entries
    }
    # rows with <2 ones never constrain contiguity; full rows are always fine
    rows = sorted(
        (r for r in row_sets if 1 < len(r) < m), key=lambda r: (len(r), sorted(r))
    )

    order: list[int] = []
    placed: set[int] = set()

    def extend() -> bool:
        if len(order) == m:
            return True
        open_parts = [r - placed for r in rows if placed & r and not r <= placed]
        if open_parts:
            candidates = set(open_parts[0])
            for part in open_parts[1:]:
                candidates &= part
        else:
            candidates = set(range(m)) - placed
        for col in sorted(candidates):
            order.append(col)
            placed.add(col)
            if extend():
                return True
            order.pop()
            placed.remove(col)
        return False

    if not extend():
        return None
    perm = tuple(order)
    if not is_strong_c1p(apply_column_permutation(matrix, perm)):  # pragma: no cover
        raise AssertionError("contiguity search produced an invalid permutation")
    return perm


def _axis_from_c1p(matrix: BinaryMatrix):
    perm = has_c1p(matrix)
    if perm is None:
        return None
    return Axis(tuple(matrix.col_labels[j] for j in perm)).canonical()


def is_single_peaked(profile: Profile):
    """Return a certifying axis (canonical direction) or None.

    The axis certifies that every top-initial segment of every voter is an
    interval of it, which is re-checked before returning.
    """
    axis = _axis_from_c1p(build_sp_matrix(profile))
    if axis is None:
        return None
    for order in profile.voters:
        for t in range(1, order.num_classes + 1):
            if not axis.is_interval(order.top_segment(t)):  # pragma: no cover
                raise AssertionError("reported axis fails the segment-interval check")
    return axis


def is_candidate_interval(approval: ApprovalProfile):
    """Return an axis on which every ballot is an interval, or None."""
    axis = _axis_from_c1p(build_ballot_matrix(approval))
    if axis is None:
        return None
    for ballot in approval.ballots:
        if not axis.is_interval(ballot):  # pragma: no cover
            raise AssertionError("reported axis fails the ballot-interval check")
    return axis


def is_single_crossing(profile: Profile):
    """Return a certifying voter ordering (0-based, canonical direction) or None."""
    perm = has_c1p(build_sc_matrix(profile))
    if perm is None:
        return None
    rev = tuple(reversed(perm))
    ordering = min(perm, rev)
    for a in profile.alternatives:
        for b in profile.alternatives:
            if a == b:
                continue
            supporters = {i for i, v in enumerate(profile.voters) if v.prefers(a, b)}
            positions = sorted(ordering.index(i) for i in supporters)
            if positions and positions[-1] - positions[0] + 1 != len(positions):
                raise AssertionError(  # pragma: no cover
                    "reported voter ordering fails the interval check"
                )
    return ordering


# ---------------------------------------------------------------------------
# total unimodularity


@dataclass(frozen=True)
class TUResult:
    """Verdict of the total-unimodularity test.

    ``kind`` is ``"tu"``, ``"not_tu"`` or ``"budget_exceeded"``.  For
    ``not_tu`` the witness fields name a square submatrix (row/column indices
    of the input matrix) whose determinant has absolute value at least 2.
    """

    kind: str
    witness_rows: tuple[int, ...] | None = None
    witness_cols: tuple[int, ...] | None = None
    witness_det: int | None = None

    @property
    def is_tu(self) -> bool:
        return self.kind == "tu"


def _int_det(rows) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    mat = [list(r) for r in rows]
    n = len(mat)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            for i in range(k + 1, n):
                if mat[i][k] != 0:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[n - 1][n - 1]


def _has_gh_signing(rows, subset, ncols) -> bool:
    """Is there a +/-1 signing of ``subset`` with all column sums in {-1,0,1}?"""
    k = len(subset)
    # remaining[t][j]: how many of rows subset[t:] have a nonzero in column j
    remaining = [[0] * ncols for _ in range(k + 1)]
    for t in range(k - 1, -1, -1):
        row = rows[subset[t]]
        nxt = remaining[t + 1]
        remaining[t] = [nxt[j] + (1 if row[j] else 0) for j in range(ncols)]
    sums = [0] * ncols
    nonzero_cols = [
        [j for j in range(ncols) if rows[idx][j]] for idx in subset
    ]

    def assign(t: int) -> bool:
        if t == k:
            return True
        row = rows[subset[t]]
        bound = remaining[t + 1]
        signs = (1,) if t == 0 else (1, -1)  # global sign symmetry
        for sign in signs:
            ok = True
            for j in nonzero_cols[t]:
                sums[j] += sign * row[j]
                if abs(sums[j]) > 1 + bound[j]:
                    ok = False
            if ok and assign(t + 1):
                return True
            for j in nonzero_cols[t]:
                sums[j] -= sign * row[j]
        return False

    return assign(0)


def _det_witness(rows, subset, ncols):
    """Find a square submatrix with |det| >= 2 using rows from ``subset``."""
    for size in range(2, len(subset) + 1):
        for rsub in itertools.combinations(subset, size):
            for csub in itertools.combinations(range(ncols), size):
                det = _int_det([[rows[i][j] for j in csub] for i in rsub])
                if abs(det) >= 2:
                    return rsub, csub, det
    raise AssertionError("signing violation without a determinant witness")


def is_totally_unimodular(matrix, row_budget: int = 16) -> TUResult:
    """Ghouila-Houri test: TU iff every row subset admits a +/-1 signing with
    all column sums in {-1, 0, 1}.

    The test runs over the smaller dimension (transposing first if needed;
    TU is transpose-invariant), enumerating subsets by increasing size.  If
    that dimension exceeds ``row_budget`` the verdict is ``budget_exceeded``.
    """
    if isinstance(matrix, BinaryMatrix):
        matrix = matrix.to_signed()
    transposed = matrix.num_rows > matrix.num_cols
    work = matrix.transpose() if transposed else matrix
    nrows, ncols = work.num_rows, work.num_cols
    if nrows > row_budget:
        return TUResult("budget_exceeded")
    rows = [list(r) for r in work.entries]
    for size in range(1, nrows + 1):
        for subset in itertools.combinations(range(nrows), size):
            if not _has_gh_signing(rows, subset, ncols):
                wr, wc, det = _det_witness(rows, subset, ncols)
                if transposed:
                    wr, wc = wc, wr
                return TUResult("not_tu", tuple(wr), tuple(wc), det)
    return TUResult("tu")


# ---------------------------------------------------------------------------
# small matrix manipulations used by tests and reports


def append_all_ones_row(matrix: BinaryMatrix, label: str = "ones") -> BinaryMatrix:
    row = tuple(1 for _ in range(matrix.num_cols))
    return BinaryMatrix(
        matrix.entries + (row,), matrix.row_labels + (label,), matrix.col_labels
    )


def dedup_rows(matrix):
    """Drop duplicate rows, keeping first occurrences (TU/C1P-irrelevant)."""
    seen = {}
    rows, labels = [], []
    for row, label in zip(matrix.entries, matrix.row_labels):
        if row not in seen:
            seen[row] = True
            rows.append(row)
            labels.append(label)
    cls = type(matrix)
    return cls(tuple(rows), tuple(labels), matrix.col_labels)


# ---------------------------------------------------------------------------
# matrix text format: first line "rows cols", then space-separated entries


def parse_matrix(text: str) -> SignedMatrix:
    lines = [ln for ln in (s.strip() for s in text.split("\n")) if ln]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be '<rows> <cols>'")
    nrows, ncols = int(head[0]), int(head[1])
    if len(lines) != nrows + 1:
        raise ValueError(f"expected {nrows} matrix rows, got {len(lines) - 1}")
    entries = []
    for ln in lines[1:]:
        row = tuple(int(tok) for tok in ln.split())
        if len(row) != ncols:
            raise ValueError(f"expected {ncols} entries per row")
        entries.append(row)
    return matrix_from_rows(entries)


def serialize_matrix(matrix) -> str:
    lines = [f"{matrix.num_rows} {matrix.num_cols}"]
    lines.extend(" ".join(str(v) for v in row) for row in matrix.entries)
    return "\n".join(lines) + "\n"

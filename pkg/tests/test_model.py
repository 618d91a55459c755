import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from votelp import (
    Profile,
    ProfileFormatError,
    WeakOrder,
    build_ballot_matrix,
    generate_candidate_interval,
    generate_single_crossing,
    generate_single_peaked,
    has_c1p,
    is_single_crossing,
    is_single_peaked,
    majority_margin,
    normalize_profile_text,
    parse_profile,
    rank_of,
    serialize_profile,
    top_initial_segment,
)
from votelp.model import default_alternative_names

from helpers import profile_e1, profile_e3, ranked


class TestParsing:
    def test_minimal_ranked(self):
        p = parse_profile("3\na b c\n1: a > b > c\n")
        assert p.m == 3 and p.n == 1
        assert p.voters[0].is_linear()
        assert p.voters[0].as_linear_sequence() == ("a", "b", "c")

    def test_multiplicity_expansion(self):
        p = parse_profile("3\na b c\n2: {a,b} > c\n")
        assert p.n == 2
        assert p.voters[0] == p.voters[1]
        assert p.voters[0].indifference_classes == (
            frozenset({"a", "b"}),
            frozenset({"c"}),
        )

    def test_approval_format(self):
        ap = parse_profile("4\na b c d\n1: {a,b}\n", format="approval")
        assert ap.ballots == (frozenset({"a", "b"}),)

    def test_empty_ballot(self):
        ap = parse_profile("2\na b\n1: {}\n", format="approval")
        assert ap.ballots == (frozenset(),)
        assert serialize_profile(ap) == "2\na b\n1: {}\n"

    @pytest.mark.parametrize(
        "text,fragment,line",
        [
            ("3\na b c\n1: a > a > c\n", "duplicate", 3),
            ("3\na b c\n1: a > b > z\n", "unknown", 3),
            ("3\na b c\n1: a > b\n", "missing", 3),
            ("3\na b c\nnonsense\n", "count", 3),
            ("3\na b c\n0: a > b > c\n", "multiplicity", 3),
            ("2\na a\n1: a > a\n", "duplicate", 2),
            ("2\na~x b\n1: a~x > b\n", "illegal", 2),
        ],
    )
    def test_errors_carry_line_numbers(self, text, fragment, line):
        with pytest.raises(ProfileFormatError) as err:
            parse_profile(text)
        assert fragment in str(err.value)
        assert f"line {line}" in str(err.value)

    def test_approval_conversion_is_dichotomous(self):
        ap = parse_profile(
            "3\na b c\n1: {a,b}\n1: {}\n1: {a,b,c}\n", format="approval"
        )
        profile = ap.to_profile()
        assert [v.num_classes for v in profile.voters] == [2, 1, 1]
        assert profile.voters[0].indifference_classes[0] == frozenset({"a", "b"})

    def test_round_trip_normalizes(self):
        text = "3\na b c\n1: {b,a} > c\n1: {a,b} > c\n"
        normalized = normalize_profile_text(text)
        assert normalized == "3\na b c\n2: {a,b} > c\n"
        # normal form is a fixed point
        assert normalize_profile_text(normalized) == normalized


@st.composite
def weak_profiles(draw):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 4))
    names = list(default_alternative_names(m))
    voters = []
    for _ in range(n):
        order = draw(st.permutations(names))
        breaks = sorted(draw(st.sets(st.integers(1, m - 1)))) if m > 1 else []
        classes = []
        last = 0
        for cut in breaks + [m]:
            classes.append(order[last:cut])
            last = cut
        voters.append(WeakOrder.from_classes(classes))
    return Profile(tuple(names), tuple(voters))


class TestRoundTripProperty:
    @given(weak_profiles())
    @settings(max_examples=60, deadline=None, derandomize=True)
    def test_serialize_parse_identity(self, profile):
        text = serialize_profile(profile)
        assert parse_profile(text) == profile
        assert serialize_profile(parse_profile(text)) == text

    @given(weak_profiles())
    @settings(max_examples=40, deadline=None, derandomize=True)
    def test_rank_consistency(self, profile):
        for order in profile.voters:
            for a in profile.alternatives:
                for b in profile.alternatives:
                    assert order.prefers(a, b) == (order.rank(a) < order.rank(b))


class TestDerivedQuantities:
    def test_rank_examples(self):
        e1 = profile_e1()
        assert rank_of(e1, 1, "a") == 2
        assert rank_of(e1, 0, "a") == 1
        tied = ranked("a b c", "{a,b}>c")
        assert rank_of(tied, 0, "a") == rank_of(tied, 0, "b") == 1
        assert rank_of(tied, 0, "c") == 2

    def test_top_initial_segment_examples(self):
        e1 = profile_e1()
        assert top_initial_segment(e1, 2, 2) == {"c", "b"}
        assert top_initial_segment(e1, 0, 3) == {"a", "b", "c"}
        tied = ranked("a b c", "{a,b}>c")
        assert top_initial_segment(tied, 0, 1) == {"a", "b"}

    def test_top_initial_segment_strictly_monotone(self):
        p = ranked("a b c d", "{a,b}>c>d", "d>c>b>a")
        for i in range(p.n):
            r = p.voters[i].num_classes
            for t in range(1, r):
                assert top_initial_segment(p, i, t) < top_initial_segment(p, i, t + 1)
        with pytest.raises(ValueError):
            top_initial_segment(p, 0, 4)

    def test_majority_margin_examples(self):
        assert majority_margin(profile_e1(), "b", "a") == 1
        assert majority_margin(profile_e3(), "c", "a") == 1

    def test_majority_margin_antisymmetric(self):
        p = profile_e1()
        for a in p.alternatives:
            for b in p.alternatives:
                if a != b:
                    assert majority_margin(p, b, a) == -majority_margin(p, a, b)

    def test_majority_margin_indifference_counts_neither(self):
        p = ranked("a b c", "{a,b}>c", "a>b>c")
        assert majority_margin(p, "a", "b") == 1

    def test_reversed_copy_cancels(self):
        rng = random.Random(5)
        from helpers import random_weak_profile

        for _ in range(10):
            p = random_weak_profile(rng, rng.randint(2, 5), rng.randint(1, 5))
            doubled = Profile(
                p.alternatives, p.voters + p.reversed_voters().voters
            )
            for a in p.alternatives:
                for b in p.alternatives:
                    if a != b:
                        assert majority_margin(doubled, a, b) == 0

    def test_rejects_equal_pair(self):
        with pytest.raises(ValueError):
            majority_margin(profile_e1(), "a", "a")


class TestGenerators:
    def test_single_peaked_passes_recognizer(self):
        for seed in range(20):
            rng = random.Random(900 + seed)
            m, n = rng.randint(1, 8), rng.randint(1, 20)
            profile, axis = generate_single_peaked(m, n, seed)
            assert profile.m == m and profile.n == n
            for order in profile.voters:
                for t in range(1, order.num_classes + 1):
                    assert axis.is_interval(order.top_segment(t))
            assert is_single_peaked(profile) is not None

    def test_single_peaked_trivial_m1(self):
        profile, _ = generate_single_peaked(1, 4, 3)
        assert len(set(profile.voters)) == 1

    def test_single_crossing_passes_recognizer(self):
        for seed in range(20):
            rng = random.Random(700 + seed)
            m, n = rng.randint(1, 6), rng.randint(1, 12)
            profile, ordering = generate_single_crossing(m, n, seed)
            assert ordering == tuple(range(n))
            assert is_single_crossing(profile) is not None

    def test_single_crossing_two_alternatives_contiguous(self):
        profile, _ = generate_single_crossing(2, 8, 13)
        firsts = [v.as_linear_sequence()[0] for v in profile.voters]
        # voters with the same top are contiguous
        assert len([i for i in range(1, 8) if firsts[i] != firsts[i - 1]]) <= 1

    def test_candidate_interval_ballots_are_intervals(self):
        for seed in range(20):
            rng = random.Random(300 + seed)
            m, n = rng.randint(1, 8), rng.randint(1, 15)
            approval, axis = generate_candidate_interval(m, n, seed)
            for ballot in approval.ballots:
                assert ballot and axis.is_interval(ballot)
            assert has_c1p(build_ballot_matrix(approval)) is not None

    def test_determinism(self):
        assert generate_single_peaked(5, 7, 42) == generate_single_peaked(5, 7, 42)
        assert generate_single_crossing(5, 7, 42) == generate_single_crossing(5, 7, 42)
        assert generate_candidate_interval(5, 7, 42) == generate_candidate_interval(5, 7, 42)

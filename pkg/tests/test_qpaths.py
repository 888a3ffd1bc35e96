"""Irrational path detection, line paths, tail equivalence, classes."""

import pytest

from shiftsocle.families import ArithmeticFamily
from shiftsocle.points import family_member, periodic
from shiftsocle.qpaths import (
    find_irrational_singletons,
    is_line_path,
    partition_classes,
    tail_equivalent,
)
from shiftsocle.subshift import Bounds, Subshift
from shiftsocle.usets import cardinality, describe
from shiftsocle.words import word


@pytest.fixture(scope="module")
def witnesses3x(example3x):
    return find_irrational_singletons(example3x, word_bound=1)


@pytest.fixture(scope="module")
def witnesses54(example54):
    return find_irrational_singletons(example54, word_bound=2)


@pytest.fixture(scope="module")
def witnesses55(example55):
    return find_irrational_singletons(example55, word_bound=2)


@pytest.fixture(scope="module")
def two_ladders():
    """Synthetic spec with two never-equivalent families: even and odd
    arithmetic ladders."""
    odd = ArithmeticFamily("odd", min_start=1, step=2)
    even = ArithmeticFamily("even", min_start=2, step=2)
    return Subshift(
        "enumerated",
        name="two-ladders",
        families=[odd, even],
        bounds=Bounds(word_bound=2),
    )


class TestDetection:
    def test_example3x_finds_the_singleton_generator(self, example3x, witnesses3x):
        ax = family_member("ax", ())
        hits = [w for w in witnesses3x if w.point == ax]
        assert hits
        assert any("C(c,a)" == describe(w.witness_set) for w in hits)

    def test_example3x_closure_contains_expected_points(self, witnesses3x):
        pts = {w.point for w in witnesses3x}
        assert family_member("ax", ()) in pts
        assert family_member("cx", ()) in pts
        assert family_member("x", (0,)) in pts
        assert family_member("x", (3,)) in pts

    def test_example3x_no_periodic_witnesses(self, witnesses3x):
        assert periodic(word("a")) not in {w.point for w in witnesses3x}
        assert periodic(word("b")) not in {w.point for w in witnesses3x}

    def test_golden_mean_has_no_witnesses(self, golden):
        assert find_irrational_singletons(golden, word_bound=3) == []

    def test_f001020_has_no_witnesses(self, f001020):
        assert find_irrational_singletons(f001020, word_bound=3) == []

    def test_example54_covers_ladder(self, witnesses54):
        pts = {w.point for w in witnesses54}
        for m in range(1, 9):
            assert family_member("t", (m,)) in pts

    def test_example54_first_witness_deterministic(self, witnesses54):
        # Z(2) is the first singleton in scan order: the pair family
        # excludes j=2, so t_2 is the only point starting with 2
        assert witnesses54[0].point == family_member("t", (2,))
        assert family_member("t", (1,)) in {w.point for w in witnesses54}

    def test_witnesses_reverify(self, witnesses3x, witnesses54, witnesses55):
        for batch in (witnesses3x, witnesses54, witnesses55):
            for w in batch:
                assert w.reverify()

    def test_witness_sets_are_singletons_of_their_point(
        self, example3x, witnesses3x
    ):
        for w in witnesses3x:
            size = cardinality(w.witness_set)
            assert size.is_singleton
            assert example3x.equals(size.point, w.point)

    def test_shift_closure_up_to_eight(self, example3x, witnesses3x):
        pts = {w.point for w in witnesses3x}
        seed = family_member("ax", ())
        cur = seed
        for _ in range(8):
            cur = example3x.shift(cur)
            assert cur in pts

    def test_dichotomy_growth(self, witnesses3x, witnesses54, witnesses55):
        for batch in (witnesses3x, witnesses54, witnesses55):
            assert len({w.point for w in batch}) >= 8


class TestLinePaths:
    def test_example3x_has_no_line_paths(self, example3x, witnesses3x):
        for w in witnesses3x[:6]:
            assert is_line_path(example3x, w.point).is_fails

    def test_periodic_point_is_not_a_line_path(self, example3x):
        assert is_line_path(example3x, periodic(word("b"))).is_fails

    def test_pure_ladder_has_line_paths(self):
        X = Subshift(
            "enumerated",
            name="ladder-only",
            families=[ArithmeticFamily("t", min_start=1)],
        )
        assert is_line_path(X, family_member("t", (1,))).is_holds
        # deeper points are not pinned by their first letter alone:
        # t_2 = (2,3,...) is the only point starting with 2 here
        assert is_line_path(X, family_member("t", (2,))).is_holds


class TestTailEquivalence:
    def test_same_family_witness(self, example54):
        t3 = family_member("t", (3,))
        t7 = family_member("t", (7,))
        v = tail_equivalent(example54, t3, t7)
        assert v.is_holds
        assert v.witness == (4, 0)

    def test_periodic_vs_aperiodic_fails(self, example54):
        v = tail_equivalent(example54, periodic(word(1, 3)), family_member("t", (1,)))
        assert v.is_fails

    def test_prepend_vs_base(self, example3x):
        ax = family_member("ax", ())
        x = family_member("x", (0,))
        v = tail_equivalent(example3x, ax, x)
        assert v.is_holds
        assert v.witness == (1, 0)

    def test_conjugate_periodic_points(self, example54):
        v = tail_equivalent(example54, periodic(word(1, 3)), periodic(word(3, 1)))
        assert v.is_holds

    def test_non_conjugate_periodic_points(self, example3x):
        v = tail_equivalent(example3x, periodic(word("a")), periodic(word("b")))
        assert v.is_fails

    def test_disjoint_ladders_fail(self, two_ladders):
        v = tail_equivalent(
            two_ladders, family_member("odd", (1,)), family_member("even", (2,))
        )
        assert v.is_fails
        assert "disjoint" in v.reason

    def test_reflexive_symmetric(self, example3x, example54):
        pairs = [
            (example3x, family_member("ax", ()), family_member("x", (2,))),
            (example54, family_member("t", (2,)), family_member("t", (5,))),
        ]
        for X, p, q in pairs:
            assert tail_equivalent(X, p, p).is_holds
            assert tail_equivalent(X, q, q).is_holds
            assert tail_equivalent(X, p, q).status == tail_equivalent(X, q, p).status

    def test_transitive_on_holds(self, example3x):
        pts = [
            family_member("ax", ()),
            family_member("cx", ()),
            family_member("x", (0,)),
            family_member("x", (2,)),
        ]
        for p in pts:
            for q in pts:
                for r in pts:
                    pq = tail_equivalent(example3x, p, q)
                    qr = tail_equivalent(example3x, q, r)
                    if pq.is_holds and qr.is_holds:
                        assert tail_equivalent(example3x, p, r).is_holds


class TestClasses:
    def test_example54_single_class_rep_base(self, example54, witnesses54):
        classes = partition_classes(example54, witnesses54)
        assert len(classes) == 1
        assert classes[0].representative == family_member("t", (1,))
        assert not classes[0].unresolved

    def test_example55_single_class(self, example55, witnesses55):
        classes = partition_classes(example55, witnesses55)
        assert len(classes) == 1
        assert classes[0].representative == family_member("t", (1,))

    def test_example3x_single_class(self, example3x, witnesses3x):
        classes = partition_classes(example3x, witnesses3x)
        assert len(classes) == 1

    def test_two_ladders_two_classes(self, two_ladders):
        witnesses = find_irrational_singletons(two_ladders, word_bound=2)
        classes = partition_classes(two_ladders, witnesses)
        assert len(classes) == 2
        reps = {cls.representative.family_id for cls in classes}
        assert reps == {"odd", "even"}
        assert not any(cls.unresolved for cls in classes)

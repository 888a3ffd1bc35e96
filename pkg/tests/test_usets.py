"""Boolean algebra of clopen sets: generators, laws, membership, sizes."""

import itertools
import random

import pytest

from shiftsocle.points import family_member, periodic
from shiftsocle.usets import (
    WordNotInLanguage,
    bottom,
    cardinality,
    complement,
    cylinder,
    decide_membership,
    finite_set,
    follower,
    generator,
    join,
    meet,
    prepend,
    relative_range,
    top,
)
from shiftsocle.words import EMPTY, word


def sft_points_in(a, depth_extra=6):
    """Oracle: all points of a small SFT lying in the set, approximated
    by deciding membership of every eventually periodic point with
    description size <= 3 (enough to separate the sets under test)."""
    spec = a.spec
    pts = spec.sample_points(60)
    return {p for p in pts if decide_membership(a, p)}


class TestGenerators:
    def test_cylinder_follower_full(self, golden):
        z = generator(golden, EMPTY, word("0"))
        assert z == cylinder(golden, word("0"))
        f = generator(golden, word("0"), EMPTY)
        assert f == follower(golden, word("0"))
        assert generator(golden, EMPTY, EMPTY) == top(golden)

    def test_word_not_in_language(self, golden):
        with pytest.raises(WordNotInLanguage):
            generator(golden, word("1", "1"), EMPTY)

    def test_follower_of_one_golden(self, golden):
        # after a 1 the next letter is 0: F_1 = Z_0
        assert follower(golden, word("1")) == cylinder(golden, word("0"))


class TestBooleanLaws:
    def gens(self, spec, max_len=2):
        vocab = [w for w in spec.scan_vocabulary(max_len)]
        out = []
        for a, b in itertools.product(vocab, repeat=2):
            try:
                out.append(generator(spec, a, b))
            except WordNotInLanguage:
                pass
        return out

    def test_identity_and_complement(self, golden):
        for a in self.gens(golden)[:12]:
            assert meet(a, top(golden)) == a
            assert meet(a, complement(a)) == bottom(golden)
            assert join(a, complement(a)) == top(golden)

    def test_absorption_exhaustive(self, golden):
        gens = self.gens(golden)
        for a, b in itertools.product(gens, repeat=2):
            assert join(a, meet(a, b)) == a
            assert meet(a, join(a, b)) == a

    def test_de_morgan_exhaustive(self, golden):
        gens = self.gens(golden)
        for a, b in itertools.product(gens, repeat=2):
            assert complement(meet(a, b)) == join(complement(a), complement(b))
            assert complement(join(a, b)) == meet(complement(a), complement(b))

    def test_depth_three_expressions(self, golden):
        gens = self.gens(golden)[:8]
        rng = random.Random(7)
        pool = list(gens)
        for _ in range(60):
            a, b = rng.choice(pool), rng.choice(pool)
            c = rng.choice([meet(a, b), join(a, b), complement(a)])
            pool.append(c)
            assert meet(c, c) == c
            assert join(c, bottom(golden)) == c

    def test_join_of_cylinders_covers_golden(self, golden):
        assert join(cylinder(golden, word("0")), cylinder(golden, word("1"))) == top(
            golden
        )


class TestMembership:
    def test_singleton_generator_example3x(self, example3x):
        ax = family_member("ax", ())
        a_inf = periodic(word("a"))
        c_a = generator(example3x, word("c"), word("a"))
        assert decide_membership(c_a, ax)
        assert not decide_membership(c_a, a_inf)
        assert decide_membership(top(example3x), ax)

    def test_membership_respects_meet_join_compl(self, example3x, golden):
        rng = random.Random(41)
        for spec in (example3x, golden):
            vocab = spec.scan_vocabulary(2)
            gens = []
            for a, b in itertools.product(vocab, repeat=2):
                try:
                    gens.append(generator(spec, a, b))
                except WordNotInLanguage:
                    pass
            pts = spec.sample_points(12)
            for _ in range(100):
                a, b = rng.choice(gens), rng.choice(gens)
                p = rng.choice(pts)
                in_a = decide_membership(a, p)
                in_b = decide_membership(b, p)
                assert decide_membership(meet(a, b), p) == (in_a and in_b)
                assert decide_membership(join(a, b), p) == (in_a or in_b)
                assert decide_membership(complement(a), p) == (not in_a)


class TestRelativeRange:
    def test_relative_range_of_cylinder(self, golden):
        for beta in [word("0"), word("1"), word("0", "1"), word("0", "0", "1")]:
            r = relative_range(cylinder(golden, beta), beta)
            assert r == follower(golden, beta)

    def test_relative_range_pointwise(self, golden):
        vocab = [w for w in golden.scan_vocabulary(2) if w]
        for alpha in vocab:
            for a in [cylinder(golden, w) for w in vocab]:
                r = relative_range(a, alpha)
                expect = set()
                for p in golden.sample_points(40):
                    q = golden.contains_prepend(alpha, p)
                    if q is not None and decide_membership(a, q):
                        expect.add(p)
                got = {p for p in golden.sample_points(40) if decide_membership(r, p)}
                assert got == expect

    def test_range_distributes_over_meet(self, golden):
        gens = []
        for a, b in itertools.product(golden.scan_vocabulary(2), repeat=2):
            try:
                gens.append(generator(golden, a, b))
            except WordNotInLanguage:
                pass
        rng = random.Random(5)
        for _ in range(40):
            a, b = rng.choice(gens), rng.choice(gens)
            alpha = rng.choice([w for w in golden.scan_vocabulary(2) if w])
            assert relative_range(meet(a, b), alpha) == meet(
                relative_range(a, alpha), relative_range(b, alpha)
            )

    def test_range_of_singleton(self, example3x):
        ax = family_member("ax", ())
        x = family_member("x", (0,))
        r = relative_range(finite_set(example3x, {ax}), word("a"))
        assert r == finite_set(example3x, {x})

    def test_range_empty_when_no_prefix(self, example3x):
        r = relative_range(finite_set(example3x, {family_member("ax", ())}), word("b"))
        assert r.is_empty()


class TestPrepend:
    def test_prepend_generator(self, example3x):
        f_c = follower(example3x, word("c"))
        assert prepend(word("a"), f_c) == generator(example3x, word("c"), word("a"))

    def test_prepend_finite(self, example3x):
        x = family_member("x", (0,))
        ax = family_member("ax", ())
        assert prepend(word("a"), finite_set(example3x, {x})) == finite_set(
            example3x, {ax}
        )

    def test_prepend_drops_points_outside(self, example3x):
        b_inf = periodic(word("b"))
        out = prepend(word("a"), finite_set(example3x, {b_inf}))
        assert out.is_empty()


class TestCardinality:
    def test_empty_forbidden_cylinder(self, golden):
        z = meet(cylinder(golden, word("1")), cylinder(golden, word("1")))
        assert cardinality(z).kind == "atleast"
        assert cardinality(bottom(golden)).is_empty

    def test_golden_cylinder_infinite(self, golden):
        assert cardinality(cylinder(golden, word("1"))).kind == "atleast"

    def test_example3x_cardinalities(self, example3x):
        c_a = generator(example3x, word("c"), word("a"))
        size = cardinality(c_a)
        assert size.is_singleton
        assert size.point == family_member("ax", ())
        for letter in "abc":
            assert cardinality(cylinder(example3x, word(letter))).kind == "atleast"

    def test_example54_singletons(self, example54):
        for m in (1, 2, 5):
            z = cylinder(example54, word(m, m + 1))
            size = cardinality(z)
            assert size.is_singleton
            assert size.point == family_member("t", (m,))

    def test_example54_single_letter_not_singleton(self, example54):
        assert cardinality(cylinder(example54, word(1))).kind == "atleast"
        assert cardinality(cylinder(example54, word(3))).kind == "atleast"

    def test_one_letter_full_shift_singleton(self):
        from shiftsocle.sft import SftSpec
        from shiftsocle.subshift import Subshift

        X = Subshift("sft", sft_spec=SftSpec("a", []))
        size = cardinality(top(X))
        assert size.is_singleton
        assert size.point == periodic(word("a"))


class TestCanonicalForms:
    def test_r5_shape_enumerated(self, example3x):
        # prepending the cylinder word to the meet of follower sets gives
        # back the generator: the identity behind the projection relation
        alpha, beta = word("c"), word("a")
        lhs = prepend(beta, meet(follower(example3x, alpha), follower(example3x, beta)))
        assert lhs == generator(example3x, alpha, beta)

    def test_canonical_is_deterministic(self, example54):
        a = meet(
            cylinder(example54, word(1)),
            generator(example54, word(2), word(1)),
        )
        b = meet(
            generator(example54, word(2), word(1)),
            cylinder(example54, word(1)),
        )
        assert a == b
        assert hash(a) == hash(b)

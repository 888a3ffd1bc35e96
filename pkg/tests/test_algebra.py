"""Rewriting engine: relations, grading, cycles, socle, matrix units."""

import itertools
import random

import pytest

from shiftsocle import algebra as alg
from shiftsocle import usets
from shiftsocle.points import family_member, periodic
from shiftsocle.qpaths import find_irrational_singletons
from shiftsocle.socle_graph import Edge, build_graph, build_layers
from shiftsocle.words import word


def t(m):
    return family_member("t", (m,))


def atoms_for(spec, letters, proj_words=2):
    out = []
    for l in letters:
        out.append(alg.letter(spec, l))
        out.append(alg.letter_star(spec, l))
    vocab = spec.scan_vocabulary(1)
    for a, b in itertools.product(vocab[:proj_words + 1], repeat=2):
        try:
            out.append(alg.projection(usets.generator(spec, a, b)))
        except usets.WordNotInLanguage:
            pass
    return out


class TestDefiningRelations:
    def test_partial_isometry(self, golden, example3x):
        for spec, letters in [(golden, "01"), (example3x, "abc")]:
            for a in letters:
                s = alg.letter(spec, a)
                s_star = alg.letter_star(spec, a)
                assert s * s_star * s == s
                assert s_star * s * s_star == s_star

    def test_star_mismatch_kills(self, golden):
        assert (alg.letter_star(golden, "1") * alg.letter(golden, "0")).is_zero

    def test_star_same_letter_gives_follower(self, golden):
        lhs = alg.letter_star(golden, "0") * alg.letter(golden, "0")
        assert lhs == alg.projection(usets.follower(golden, word("0")))

    def test_projection_relation_everywhere(self, golden, example3x, example54):
        # s_beta s_alpha* s_alpha s_beta* == p_C(alpha,beta) over the
        # scanned vocabulary of every bundled backend
        for spec, bound in [(golden, 2), (example3x, 2), (example54, 2)]:
            vocab = spec.scan_vocabulary(bound)
            checked = 0
            for a, b in itertools.product(vocab, repeat=2):
                try:
                    gen = usets.generator(spec, a, b)
                except usets.WordNotInLanguage:
                    continue
                lhs = (
                    alg.path(spec, b)
                    * alg.path_star(spec, a)
                    * alg.path(spec, a)
                    * alg.path_star(spec, b)
                )
                assert lhs == alg.projection(gen), (a, b)
                checked += 1
            assert checked >= 30

    def test_projection_push_through(self, example3x):
        # p_A s_alpha = s_alpha p_r(A, alpha)
        z_a = usets.cylinder(example3x, word("a"))
        lhs = alg.projection(z_a) * alg.letter(example3x, "a")
        rhs = alg.letter(example3x, "a") * alg.projection(
            usets.relative_range(z_a, word("a"))
        )
        assert lhs == rhs

    def test_boolean_relations(self, golden):
        z0 = alg.projection(usets.cylinder(golden, word("0")))
        z1 = alg.projection(usets.cylinder(golden, word("1")))
        assert z0 * z0 == z0
        meet = alg.projection(
            usets.meet(usets.cylinder(golden, word("0")), usets.cylinder(golden, word("1")))
        )
        assert z0 * z1 == meet
        assert (z0 * z1).is_zero  # disjoint cylinders

    def test_unit_and_zero(self, golden):
        one = alg.unit(golden)
        s = alg.letter(golden, "0")
        assert one * s == s
        assert s * one == s
        assert (alg.zero(golden) * s).is_zero
        assert one.degrees() == {0}

    def test_orthogonal_singletons(self, example3x):
        p1 = alg.singleton_projection(example3x, family_member("ax", ()))
        p2 = alg.singleton_projection(example3x, periodic(word("a")))
        assert (p1 * p2).is_zero
        assert p1 * p1 == p1


class TestNormalizeAndGrading:
    def test_normalize_formal_expressions(self, golden):
        s0 = alg.letter(golden, "0")
        s0s = alg.letter_star(golden, "0")
        expr = ["sum"]
        assert alg.normalize(golden, [s0, s0s, s0]) == s0
        total = alg.normalize(golden, ("sum", [s0, s0.scale(-1)]))
        assert total.is_zero
        assert alg.normalize(golden, 3) == alg.unit(golden).scale(3)

    def test_degrees(self, golden):
        s0 = alg.letter(golden, "0")
        assert s0.degrees() == {1}
        assert alg.path(golden, word("0", "1")).degrees() == {2}
        assert alg.path_star(golden, word("0")).degrees() == {-1}
        p = alg.projection(usets.cylinder(golden, word("0")))
        assert p.degrees() == {0}

    def test_graded_multiplication(self, golden, example3x):
        rng = random.Random(19)
        for spec, letters in [(golden, "01"), (example3x, "abc")]:
            atoms = atoms_for(spec, letters)
            for _ in range(250):
                x, y = rng.choice(atoms), rng.choice(atoms)
                (dx,) = x.degrees() or {0}
                (dy,) = y.degrees() or {0}
                prod = x * y
                assert prod.degrees() <= {dx + dy}

    def test_associativity_randomized(self, golden, example3x, example54):
        rng = random.Random(23)
        cases = [
            (golden, ["0", "1"]),
            (example3x, ["a", "b", "c"]),
            (example54, [1, 2, 3]),
        ]
        for spec, letters in cases:
            atoms = atoms_for(spec, letters)
            for _ in range(170):
                x, y, z = (rng.choice(atoms) for _ in range(3))
                assert (x * y) * z == x * (y * z)

    def test_two_order_confluence_smoke(self, golden, example3x):
        # multiplying the same factor list under two different
        # parenthesizations/orders of evaluation gives one normal form
        rng = random.Random(29)
        for spec, letters in [(golden, "01"), (example3x, "abc")]:
            atoms = atoms_for(spec, letters)
            for _ in range(100):
                factors = [rng.choice(atoms) for _ in range(4)]
                left = alg.unit(spec)
                for f in factors:
                    left = left * f
                right = factors[-1]
                for f in reversed(factors[:-1]):
                    right = f * right
                assert left == right

    def test_semiprime_sanity(self, golden):
        # no nilpotent behavior at test scale: for sampled nonzero
        # monomial elements m there is a middle g with m*g*m nonzero
        rng = random.Random(31)
        atoms = atoms_for(golden, "01")
        middles = atoms + [alg.unit(golden)]
        checked = 0
        while checked < 50:
            m = rng.choice(atoms)
            if m.is_zero:
                continue
            checked += 1
            assert any(
                not (m * g * m).is_zero for g in middles
            ), alg.format_normal_form(m)

    def test_rewrite_budget_guard(self, golden):
        # large products stay within the budget and terminate
        s0 = alg.letter(golden, "0")
        acc = alg.unit(golden)
        for _ in range(60):
            acc = acc * s0
        assert not acc.is_zero


class TestCycles:
    def test_golden_mean_cycles(self, golden):
        zero_inf = usets.finite_set(golden, {periodic(word("0"))})
        assert (
            alg.classify_cycle(golden, zero_inf, word("0"))
            is alg.CycleClass.MINIMAL_CYCLE_NO_EXIT
        )
        assert (
            alg.classify_cycle(golden, usets.cylinder(golden, word("0")), word("0"))
            is alg.CycleClass.CYCLE_WITH_EXIT
        )
        assert (
            alg.classify_cycle(golden, usets.cylinder(golden, word("1")), word("0"))
            is alg.CycleClass.NOT_CYCLE
        )

    def test_proper_power_not_minimal(self, golden):
        zero_inf = usets.finite_set(golden, {periodic(word("0"))})
        assert (
            alg.classify_cycle(golden, zero_inf, word("0", "0"))
            is alg.CycleClass.CYCLE_NO_EXIT
        )

    def test_periodic_pair_cycle(self, example54):
        pair = usets.finite_set(example54, {periodic(word(1, 3))})
        assert (
            alg.classify_cycle(example54, pair, word(1, 3))
            is alg.CycleClass.MINIMAL_CYCLE_NO_EXIT
        )


class TestMinimalIdempotents:
    def test_holds_on_irrational_singleton(self, example3x):
        c_a = usets.generator(example3x, word("c"), word("a"))
        assert alg.minimal_idempotent_test(example3x, c_a, 2).is_holds

    def test_fails_on_periodic_singleton_with_degree_witness(self, example3x):
        b_inf = usets.finite_set(example3x, {periodic(word("b"))})
        verdict = alg.minimal_idempotent_test(example3x, b_inf, 2)
        assert verdict.is_fails
        assert verdict.witness.degrees() == {1}

    def test_fails_on_large_set_with_subset_witness(self, example3x):
        verdict = alg.minimal_idempotent_test(
            example3x, usets.cylinder(example3x, word("a")), 2
        )
        assert verdict.is_fails
        assert "subset" in verdict.reason or "two points" in verdict.reason

    def test_agreement_with_irrationality(self, example3x):
        # scanned generator sets: Holds exactly on singletons of
        # aperiodic points
        vocab = example3x.scan_vocabulary(2)
        seen = set()
        for a, b in itertools.product(vocab, repeat=2):
            try:
                g = usets.generator(example3x, a, b)
            except usets.WordNotInLanguage:
                continue
            if g.canonical() in seen or g.is_empty():
                continue
            seen.add(g.canonical())
            size = usets.cardinality(g)
            verdict = alg.minimal_idempotent_test(example3x, g, 2)
            expect = size.is_singleton and (
                example3x.eventually_periodic_form(size.point) is None
            )
            assert verdict.is_holds == expect, usets.describe(g)


@pytest.fixture(scope="module")
def w3(example3x):
    return find_irrational_singletons(example3x, 1)


class TestSocleMembership:

    def test_witness_projection_in_socle(self, example3x, w3):
        for w in w3[:6]:
            nf = alg.projection(w.witness_set)
            assert alg.socle_membership(example3x, nf, w3).is_holds

    def test_unit_not_in_socle(self, example3x, example54, example55, w3):
        assert alg.socle_membership(example3x, alg.unit(example3x), w3).is_fails
        for X, bound in [(example54, 2), (example55, 2)]:
            ws = find_irrational_singletons(X, bound)
            assert ws
            assert alg.socle_membership(X, alg.unit(X), ws).is_fails

    def test_periodic_singleton_not_in_socle(self, example3x, w3):
        nf = alg.singleton_projection(example3x, periodic(word("b")))
        assert alg.socle_membership(example3x, nf, w3).is_fails

    def test_mixed_elements(self, example3x, w3):
        good = alg.singleton_projection(example3x, family_member("x", (2,)))
        s = alg.path(example3x, word("a")) * good
        assert alg.socle_membership(example3x, s, w3).is_holds
        mixed = good + alg.singleton_projection(example3x, periodic(word("a")))
        assert alg.socle_membership(example3x, mixed, w3).is_fails

    def test_zero_is_in_socle(self, example3x, w3):
        assert alg.socle_membership(example3x, alg.zero(example3x), w3).is_holds


class TestIdealRelations:
    def test_equivalent_singletons_equal(self, example3x):
        ax = usets.finite_set(example3x, {family_member("ax", ())})
        x0 = usets.finite_set(example3x, {family_member("x", (0,))})
        assert alg.ideal_relation(example3x, ax, x0) == "equal"

    def test_reflexive(self, example3x):
        ax = usets.finite_set(example3x, {family_member("ax", ())})
        assert alg.ideal_relation(example3x, ax, ax) == "equal"

    def test_inequivalent_orthogonal(self, example3x):
        ax = usets.finite_set(example3x, {family_member("ax", ())})
        a_inf = usets.finite_set(example3x, {periodic(word("a"))})
        assert alg.ideal_relation(example3x, ax, a_inf) == "orthogonal"

    def test_rejects_non_singletons(self, example3x):
        with pytest.raises(ValueError):
            alg.ideal_relation(
                example3x,
                usets.cylinder(example3x, word("a")),
                usets.cylinder(example3x, word("b")),
            )


class TestMatrixUnits:
    def test_degree_from_minimal_witness(self, example54):
        assert alg.matrix_unit(example54, t(3), t(5)).degree == 2
        assert alg.matrix_unit(example54, t(5), t(3)).degree == -2
        assert alg.matrix_unit(example54, t(4), t(4)).degree == 0

    def test_products(self, example54):
        u = alg.matrix_unit(example54, t(3), t(5))
        v = alg.matrix_unit(example54, t(5), t(9))
        w = alg.matrix_unit_product(u, v)
        assert w == alg.matrix_unit(example54, t(3), t(9))
        assert w.degree == u.degree + v.degree
        assert alg.matrix_unit_product(u, alg.matrix_unit(example54, t(6), t(9))) is None

    def test_faithful_realization_window(self, example54):
        # all pairs within a 6-point window: products of realized units
        # agree with the matrix-unit calculus
        window = [t(m) for m in range(1, 7)]
        realized = {
            (y, z): alg.realize_matrix_unit(
                example54, alg.matrix_unit(example54, y, z)
            )
            for y in window
            for z in window
        }
        for (y, z), f1 in realized.items():
            for (zp, w), f2 in realized.items():
                prod = f1 * f2
                if z == zp:
                    assert prod == realized[(y, w)]
                else:
                    assert prod.is_zero

    def test_realization_degree_matches(self, example54):
        for y, z in [(t(3), t(5)), (t(2), t(2)), (t(5), t(1))]:
            u = alg.matrix_unit(example54, y, z)
            nf = alg.realize_matrix_unit(example54, u)
            assert nf.degrees() == {u.degree}


class TestGradedIsomorphism:
    @pytest.mark.parametrize(
        "name,base",
        [
            ("example54", family_member("t", (1,))),
            ("example55", family_member("t", (1,))),
            ("example3x", family_member("ax", ())),
        ],
    )
    def test_phi_relations_pass(self, request, name, base):
        X = request.getfixturevalue(name.replace("-", ""))
        g = build_graph(build_layers(X, base, 16, 3), X)
        assert len(g.vertices) >= 16
        assert alg.phi_check(g, X) == []

    def test_fault_injected_range_map(self, example54):
        g = build_graph(build_layers(example54, t(1), 6, 2), example54)
        g.edges[2] = Edge(eid=2, source=2, target=0)
        violations = alg.phi_check(g, example54)
        assert any("range absorption" in v for v in violations)
        assert any("conjugate relation" in v for v in violations)

    def test_tower_dims(self, example54, example55):
        for X in (example54, example55):
            g = build_graph(build_layers(X, t(1), 16, 2), X)
            dims = alg.truncation_tower(g, X, 16)
            assert dims == [k * k for k in range(1, 17)]

    def test_tower_k1_unit(self, example54):
        g = build_graph(build_layers(example54, t(1), 4, 2), example54)
        assert alg.truncation_tower(g, example54, 1) == [1]
        u = alg.matrix_unit(example54, t(1), t(1))
        assert alg.realize_matrix_unit(example54, u) == alg.singleton_projection(
            example54, t(1)
        )


class TestPrinter:
    def test_monomial_format(self, example3x):
        # bc is the length-2 prefix of the base point, so the product is
        # the nonzero monomial s[bc] p{{x[2]}}
        nf = alg.path(example3x, word("b", "c")) * alg.singleton_projection(
            example3x, family_member("x", (2,))
        )
        text = alg.format_normal_form(nf)
        assert text.startswith("s[bc] p{")
        z = alg.zero(example3x)
        assert alg.format_normal_form(z) == "0"

    def test_coefficients_shown(self, golden):
        nf = alg.unit(golden).scale(3) + alg.letter(golden, "0").scale("1/2")
        text = alg.format_normal_form(nf)
        assert "3*" in text and "1/2*" in text

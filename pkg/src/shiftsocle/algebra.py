"""Monomial rewriting engine for the unital subshift algebra over Q.

Elements are finite rational combinations of monomials ``s_mu p_A s_nu*``
with ``A`` a clopen set contained in the follower sets of both words.
Products resolve the inner ``s_nu* s_rho`` block by longest-common-prefix
analysis; the three rewriting moves are

* mismatch kills the term,
* a surplus word ``d`` on the right passes through the projection as a
  relative range, and symmetrically on the left,
* a common last letter of ``mu`` and ``nu`` folds into the projection as
  a prepend, which keeps normal forms unique and realizes the relation
  ``s_beta s_alpha* s_alpha s_beta* = p_C(alpha,beta)``.

Projections that resolve to finite point sets split into singleton
terms, so socle elements always present with singleton projections.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from . import usets
from .points import PointDesc, Verdict, periodic
from .qpaths import IrrationalWitness, tail_equivalent
from .socle_graph import LayeredGraph
from .subshift import Subshift
from .usets import USet, cardinality, decide_membership, describe, finite_set
from .words import EMPTY, Word, format_word, is_proper_power


class NonTerminating(Exception):
    """The rewrite-step budget was exhausted (not expected to happen)."""


REWRITE_BUDGET = 200_000


@dataclass(frozen=True)
class Monomial:
    """``s_mu p_A s_nu*`` with the projection held as a clopen set."""

    mu: Word
    proj: USet
    nu: Word

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return (
            self.mu == other.mu
            and self.nu == other.nu
            and self.proj.canonical() == other.proj.canonical()
        )

    def __hash__(self):
        return hash((self.mu, self.nu, self.proj.canonical()))

    @property
    def degree(self) -> int:
        return len(self.mu) - len(self.nu)

    def __repr__(self):  # pragma: no cover - debugging aid
        return format_monomial(self)


def degree(m: Monomial) -> int:
    return m.degree


class NormalForm:
    """Finite map from monomials to nonzero rational coefficients."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: Subshift, terms: Optional[Dict[Monomial, Fraction]] = None):
        self.spec = spec
        self.terms: Dict[Monomial, Fraction] = {
            m: c for m, c in (terms or {}).items() if c != 0
        }

    # -- algebra ---------------------------------------------------------
    def __add__(self, other: "NormalForm") -> "NormalForm":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return NormalForm(self.spec, out)

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "NormalForm":
        c = Fraction(c)
        return NormalForm(self.spec, {m: c * k for m, k in self.terms.items()})

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        budget = [REWRITE_BUDGET]
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for m, c in _mono_mul(self.spec, m1, m2, budget):
                    key = m
                    out[key] = out.get(key, Fraction(0)) + c1 * c2 * c
        return NormalForm(self.spec, out)

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):  # pragma: no cover - debugging aid
        return format_normal_form(self)

    # -- queries ----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> Set[int]:
        return {m.degree for m in self.terms}

    def is_scalar_multiple_of(self, other: "NormalForm") -> Optional[Fraction]:
        """The scalar ``c`` with ``self == c * other``, if one exists."""
        if self.is_zero:
            return Fraction(0)
        if set(self.terms) != set(other.terms):
            return None
        ratios = {self.terms[m] / other.terms[m] for m in self.terms}
        return ratios.pop() if len(ratios) == 1 else None


# ----------------------------------------------------------------------
# constructors

def zero(spec: Subshift) -> NormalForm:
    return NormalForm(spec, {})


def unit(spec: Subshift) -> NormalForm:
    return projection(usets.top(spec))


def projection(a: USet) -> NormalForm:
    """``p_A``."""
    return NormalForm(a.spec, dict(_make_terms(a.spec, EMPTY, a, EMPTY)))


def letter(spec: Subshift, a) -> NormalForm:
    """``s_a`` for a single symbol (normal form ``s_a p_F(a)``)."""
    f = usets._gen(spec, (a,), EMPTY)
    return NormalForm(spec, dict(_make_terms(spec, (a,), f, EMPTY)))


def letter_star(spec: Subshift, a) -> NormalForm:
    """``s_a*``."""
    f = usets._gen(spec, (a,), EMPTY)
    return NormalForm(spec, dict(_make_terms(spec, EMPTY, f, (a,))))


def path(spec: Subshift, w: Word) -> NormalForm:
    """``s_w`` as a product of letters (``s_omega`` is the unit)."""
    out = unit(spec)
    for a in w:
        out = out * letter(spec, a)
    return out


def path_star(spec: Subshift, w: Word) -> NormalForm:
    out = unit(spec)
    for a in w:
        out = letter_star(spec, a) * out
    return out


def singleton_projection(spec: Subshift, p: PointDesc) -> NormalForm:
    return projection(finite_set(spec, {p}))


def normalize(spec: Subshift, expr) -> NormalForm:
    """Evaluate a formal expression into a normal form.

    ``expr`` is a NormalForm, a list/tuple of factors (a product), or a
    ``("sum", [...])`` node.  Atoms come from :func:`letter`,
    :func:`letter_star`, :func:`projection`, :func:`path`, and scalars.
    """
    if isinstance(expr, NormalForm):
        return expr
    if isinstance(expr, (int, Fraction)):
        return unit(spec).scale(Fraction(expr))
    if isinstance(expr, tuple) and expr and expr[0] == "sum":
        out = zero(spec)
        for part in expr[1]:
            out = out + normalize(spec, part)
        return out
    if isinstance(expr, (list, tuple)):
        out = unit(spec)
        for factor in expr:
            out = out * normalize(spec, factor)
        return out
    raise TypeError(f"cannot normalize {expr!r}")


# ----------------------------------------------------------------------
# monomial products

def _make_terms(
    spec: Subshift, mu: Word, proj: USet, nu: Word
) -> List[Tuple[Monomial, Fraction]]:
    """Canonical terms for ``s_mu p_proj s_nu*``: fold common last
    letters into the projection, then split finite projections into
    singletons (distinct singletons are orthogonal, so the split is the
    unique presentation)."""
    while mu and nu and mu[-1] == nu[-1]:
        c = (mu[-1],)
        proj = usets.prepend(c, proj)
        mu = mu[:-1]
        nu = nu[:-1]
    form = proj.canonical()
    if usets.form_is_empty(form):
        return []
    if form[0] == "finite":
        return [
            (Monomial(mu, finite_set(spec, {p}), nu), Fraction(1))
            for p in sorted(form[1], key=lambda d: d.sort_key())
        ]
    # keep the stored expression flat: products would otherwise chain
    # ranges and prepends into unbounded derivation trees
    return [(Monomial(mu, usets.rebuild_from_form(spec, form), nu), Fraction(1))]


def _mono_mul(
    spec: Subshift, m1: Monomial, m2: Monomial, budget: List[int]
) -> List[Tuple[Monomial, Fraction]]:
    budget[0] -= 1
    if budget[0] <= 0:
        raise NonTerminating("rewrite budget exhausted")
    nu, rho = m1.nu, m2.mu
    if rho[: len(nu)] == nu:
        d = rho[len(nu):]
        proj = usets.meet(usets.relative_range(m1.proj, d), m2.proj) if d else usets.meet(m1.proj, m2.proj)
        return _make_terms(spec, m1.mu + d, proj, m2.nu)
    if nu[: len(rho)] == rho:
        d = nu[len(rho):]
        proj = usets.meet(m1.proj, usets.relative_range(m2.proj, d))
        return _make_terms(spec, m1.mu, proj, m2.nu + d)
    return []


# ----------------------------------------------------------------------
# cycle classification

class CycleClass(enum.Enum):
    NOT_CYCLE = "not-cycle"
    CYCLE_WITH_EXIT = "cycle-with-exit"
    CYCLE_NO_EXIT = "cycle-no-exit"
    MINIMAL_CYCLE_NO_EXIT = "minimal-cycle-no-exit"


def classify_cycle(X: Subshift, A: USet, alpha: Word) -> CycleClass:
    """Classify the pair ``(A, alpha)``: a cycle when ``A`` lies in its
    own relative range; without exit when ``A`` pins the periodic point
    of ``alpha``; minimal when ``alpha`` is not a proper power."""
    if not alpha:
        raise ValueError("the cycle word must be nonempty")
    size = cardinality(A)
    if size.is_empty:
        raise ValueError("the cycle set must be nonempty")
    r = usets.relative_range(A, alpha)
    inside = usets.contains(r, A)
    if inside is None:
        raise usets.WordNotInLanguage("containment undecided at bound")  # pragma: no cover
    if not inside:
        return CycleClass.NOT_CYCLE
    if size.is_singleton and X.equals(size.point, periodic(alpha)):
        if is_proper_power(alpha):
            return CycleClass.CYCLE_NO_EXIT
        return CycleClass.MINIMAL_CYCLE_NO_EXIT
    return CycleClass.CYCLE_WITH_EXIT


# ----------------------------------------------------------------------
# minimal idempotents

def minimal_idempotent_test(
    X: Subshift, A: USet, word_bound: Optional[int] = None
) -> Verdict:
    """Bounded certificate that ``p_A (algebra) p_A`` is the scalars.

    Scans the generator monomials ``s_alpha p_B s_beta*`` over the scan
    vocabulary at the bound.  Singletons with at least two points fail
    with a proper-subset witness; singleton failures exhibit a monomial
    whose sandwich is no scalar multiple (a nonzero off-degree term).
    The Holds answer is a bounded certificate, not a proof beyond the
    scanned words.
    """
    word_bound = word_bound if word_bound is not None else X.bounds.word_bound
    size = cardinality(A)
    if size.kind == "unknown":
        return Verdict.unknown(word_bound, "cardinality unresolved")
    if size.is_empty:
        return Verdict.fails(reason="empty set: zero is not an idempotent", bound=word_bound)
    p_A = projection(A)
    if size.kind == "atleast":
        witness = _proper_subset_witness(X, A)
        if witness is not None:
            sandwich = p_A * witness * p_A
            if not sandwich.is_zero and sandwich.is_scalar_multiple_of(p_A) is None:
                return Verdict.fails(
                    witness=witness,
                    reason="proper nonempty subset splits the corner",
                    bound=word_bound,
                )
        return Verdict.fails(
            reason="at least two points: corner contains a proper projection",
            bound=word_bound,
        )
    pt = size.point
    prefixes = [X.expansion(pt, k) for k in range(word_bound + 1)]
    vocab = X.scan_vocabulary(word_bound)
    candidates: List[USet] = [usets.top(X)]
    seen = {usets.top(X).canonical()}
    for a in vocab:
        for b in vocab:
            try:
                g = usets.generator(X, a, b)
            except usets.WordNotInLanguage:
                continue
            if g.canonical() not in seen:
                seen.add(g.canonical())
                candidates.append(g)
    for beta in prefixes:
        for alpha in prefixes:
            for B in candidates:
                g = NormalForm(X, dict(_make_terms(X, alpha, B, beta)))
                sandwich = p_A * g * p_A
                if sandwich.is_zero:
                    continue
                if sandwich.is_scalar_multiple_of(p_A) is None:
                    return Verdict.fails(
                        witness=sandwich,
                        reason=(
                            "sandwich of a scanned monomial has a nonzero "
                            f"component of degree {sorted(sandwich.degrees())}"
                        ),
                        bound=word_bound,
                    )
    return Verdict.holds(
        reason="all scanned generator sandwiches are scalar multiples",
        bound=word_bound,
    )


def _proper_subset_witness(X: Subshift, A: USet) -> Optional[NormalForm]:
    """A projection onto a proper nonempty clopen subset of ``A``,
    built from a word separating two members."""
    members = _two_members(X, A)
    if members is None:
        return None
    p, q = members
    for j in range(64):
        if X.letter_at(p, j) != X.letter_at(q, j):
            w = X.expansion(p, j + 1)
            return projection(usets.meet(usets._gen(X, EMPTY, w), A))
    return None


def _two_members(X: Subshift, A: USet):
    form = A.canonical()
    if form[0] in ("finite", "sft-finite") and len(form[1]) >= 2:
        pts = sorted(form[1], key=lambda d: d.sort_key())
        return pts[0], pts[1]
    found = []
    for p in X.sample_points(X.bounds.cardinality_bound):
        if decide_membership(A, p):
            found.append(p)
            if len(found) == 2:
                return found[0], found[1]
    if X.kind == "enumerated":
        tag, ans = X.points_with_prefix(EMPTY)
        if tag == "infinite":
            for p in itertools.islice(ans(), X.bounds.cardinality_bound):
                if decide_membership(A, p) and p not in found:
                    found.append(p)
                    if len(found) == 2:
                        return found[0], found[1]
    return None


# ----------------------------------------------------------------------
# socle membership

def socle_membership(
    X: Subshift, x: NormalForm, witnesses: Sequence[IrrationalWitness]
) -> Verdict:
    """Membership of a normal form in the two-sided ideal generated by
    the irrational-path projections.

    Holds when every term's projection is a singleton on a point tail
    equivalent to a witness.  Fails when some projection provably meets
    the complement: a periodic member, a member with a never-equivalent
    certificate, or a certified-infinite projection (socle elements
    present with singleton projections only).
    """
    bound = X.bounds.tail_bound
    if x.is_zero:
        return Verdict.holds(reason="zero element", bound=bound)
    unknown_reason = None
    for m in x.terms:
        form = m.proj.canonical()
        if form[0] in ("finite", "sft-finite"):
            points = form[1]
        else:
            outside = _outside_point(X, m.proj, witnesses, bound)
            if outside is not None:
                return Verdict.fails(
                    witness=outside,
                    reason=f"projection contains the non-socle point {outside}",
                    bound=bound,
                )
            if _certified_infinite(X, m.proj):
                return Verdict.fails(
                    witness=describe(m.proj),
                    reason="projection is certifiably infinite",
                    bound=bound,
                )
            unknown_reason = f"projection {describe(m.proj)} unresolved"
            continue
        for p in points:
            verdict = _in_some_class(X, p, witnesses, bound)
            if verdict is False:
                return Verdict.fails(
                    witness=p,
                    reason=f"{p} is not tail equivalent to any witness",
                    bound=bound,
                )
            if verdict is None:
                unknown_reason = f"class membership of {p} unresolved"
    if unknown_reason:
        return Verdict.unknown(bound, unknown_reason)
    return Verdict.holds(reason="all projections sit on witness classes", bound=bound)


def _in_some_class(
    X: Subshift, p: PointDesc, witnesses: Sequence[IrrationalWitness], bound: int
) -> Optional[bool]:
    if X.eventually_periodic_form(p) is not None:
        return False
    seen_unknown = False
    for w in witnesses:
        if w.point == p:
            return True
        verdict = tail_equivalent(X, p, w.point, bound)
        if verdict.is_holds:
            return True
        if verdict.is_unknown:
            seen_unknown = True
    if not witnesses:
        return False
    return None if seen_unknown else False


def _outside_point(
    X: Subshift, proj: USet, witnesses: Sequence[IrrationalWitness], bound: int
) -> Optional[PointDesc]:
    for p in X.sample_points(24):
        if decide_membership(proj, p) and _in_some_class(X, p, witnesses, bound) is False:
            return p
    return None


def _certified_infinite(X: Subshift, proj: USet) -> bool:
    """Infinitude certificate: one of the declared families reports
    infinitely many members with the canonical prefix and no further
    condition filters them."""
    form = proj.canonical()
    if form == (usets.TOP,):
        base, firsts = EMPTY, ()
    elif form[0] == usets.MEET and form[1] is not None:
        base, firsts = form[1], form[2]
    else:
        return False
    if firsts:
        return False
    if X.kind != "enumerated":
        return False
    tag, _ = X.points_with_prefix(tuple(base))
    return tag == "infinite"


# ----------------------------------------------------------------------
# ideals of singleton projections

def ideal_relation(
    X: Subshift, A: USet, B: USet, bound: Optional[int] = None
) -> str:
    """Relation between the two-sided ideals of two singleton
    projections: "equal", "orthogonal", or "unknown".

    Equality is re-verified in the engine by conjugating one projection
    onto the shared tail; orthogonality by sampled products.
    """
    bound = bound if bound is not None else X.bounds.tail_bound
    size_a, size_b = cardinality(A), cardinality(B)
    if not size_a.is_singleton or not size_b.is_singleton:
        raise ValueError("ideal_relation expects singleton sets")
    p, q = size_a.point, size_b.point
    verdict = tail_equivalent(X, p, q, bound)
    if verdict.is_holds:
        m, n = verdict.witness
        z = X.shift_iter(p, m)
        a, b = X.expansion(p, m), X.expansion(q, n)
        pz = singleton_projection(X, z)
        lhs = path_star(X, a) * projection(A) * path(X, a)
        rhs = path_star(X, b) * projection(B) * path(X, b)
        if lhs == pz and rhs == pz:
            return "equal"
        return "unknown"  # pragma: no cover - conjugation always lands
    if verdict.is_fails:
        p_A, p_B = projection(A), projection(B)
        if not (p_A * p_B).is_zero:
            return "unknown"  # pragma: no cover - distinct singletons
        for w in X.scan_vocabulary(2)[:12]:
            sample = p_A * path(X, w) * p_B
            if not sample.is_zero:
                return "unknown"  # pragma: no cover
        return "orthogonal"
    return "unknown"


# ----------------------------------------------------------------------
# matrix units

@dataclass(frozen=True)
class MatrixUnit:
    """Formal matrix unit between two points of one tail class."""

    row: PointDesc
    col: PointDesc
    degree: int


def matrix_unit(X: Subshift, row: PointDesc, col: PointDesc, bound: Optional[int] = None) -> MatrixUnit:
    """Build the unit from the minimal shift witness of the class."""
    verdict = tail_equivalent(X, row, col, bound)
    if not verdict.is_holds:
        raise ValueError(f"{row} and {col} are not tail equivalent")
    m, n = _minimal_witness(X, row, col, verdict.witness)
    return MatrixUnit(row=row, col=col, degree=m - n)


def _minimal_witness(X, row, col, seed: Tuple[int, int]) -> Tuple[int, int]:
    m, n = seed
    while m > 0 and n > 0:
        if X.equals(X.shift_iter(row, m - 1), X.shift_iter(col, n - 1)):
            m, n = m - 1, n - 1
        else:
            break
    return (m, n)


def matrix_unit_product(u: MatrixUnit, v: MatrixUnit) -> Optional[MatrixUnit]:
    if u.col != v.row:
        return None
    return MatrixUnit(row=u.row, col=v.col, degree=u.degree + v.degree)


def realize_matrix_unit(X: Subshift, u: MatrixUnit, bound: Optional[int] = None) -> NormalForm:
    """Engine element of a matrix unit: ``s_a p_{{z}} s_b*`` along the
    minimal words into the shared tail."""
    verdict = tail_equivalent(X, u.row, u.col, bound)
    m, n = _minimal_witness(X, u.row, u.col, verdict.witness)
    z = X.shift_iter(u.row, m)
    return NormalForm(
        X,
        dict(
            _make_terms(
                X, X.expansion(u.row, m), finite_set(X, {z}), X.expansion(u.col, n)
            )
        ),
    )


# ----------------------------------------------------------------------
# graded isomorphism checks

def phi_check(g: LayeredGraph, X: Subshift) -> List[str]:
    """Verify the vertex/edge relations of the path-algebra presentation
    inside the rewriting engine, on the truncation window.

    Checked per vertex/edge pair: idempotence and orthogonality of the
    vertex projections, source and range absorption, the conjugate
    relation ``e_i* e_j = delta . r(e_i)``, the single-edge relation
    ``e_i e_i* = v_i`` at non-boundary vertices, and degree one for all
    edge images.  Returns the violation list.
    """
    violations: List[str] = []
    verts = [v for v in g.vertices if v.point is not None]
    phi_v: Dict[int, NormalForm] = {
        v.vid: singleton_projection(X, v.point) for v in verts
    }
    phi_e: Dict[int, Tuple[NormalForm, NormalForm, int]] = {}
    for v in verts:
        outs = g.out_edges(v.vid)
        if not outs:
            continue
        a = (X.letter_at(v.point, 0),)
        e = phi_v[v.vid] * path(X, a)
        e_star = path_star(X, a) * phi_v[v.vid]
        phi_e[outs[0].eid] = (e, e_star, outs[0].target)
    for v in verts:
        pv = phi_v[v.vid]
        if pv * pv != pv:
            violations.append(f"phi(v{v.vid}) is not idempotent")
    for v, w in itertools.combinations(verts, 2):
        if not (phi_v[v.vid] * phi_v[w.vid]).is_zero:
            violations.append(f"phi(v{v.vid}) and phi(v{w.vid}) are not orthogonal")
    for eid, (e, e_star, target) in phi_e.items():
        if {m.degree for m in e.terms} != {1}:
            violations.append(f"phi(e{eid}) is not homogeneous of degree 1")
        if phi_v[eid] * e != e:
            violations.append(f"source absorption fails at e{eid}")
        if target in phi_v and e * phi_v[target] != e:
            violations.append(f"range absorption fails at e{eid}")
        if target in phi_v and e_star * e != phi_v[target]:
            violations.append(f"conjugate relation e{eid}* e{eid} != r(e{eid})")
        v = g.vertex(eid)
        if not v.boundary and e * e_star != phi_v[eid]:
            violations.append(f"edge relation e{eid} e{eid}* != v{eid}")
    for (e1, (a1, s1, t1)), (e2, (a2, s2, t2)) in itertools.combinations(
        phi_e.items(), 2
    ):
        if not (s1 * a2).is_zero:
            violations.append(f"conjugate relation e{e1}* e{e2} != 0")
    return violations


def truncation_tower(
    g: LayeredGraph, X: Subshift, n: int, check_products: bool = True
) -> List[int]:
    """Dimensions of the nested matrix algebras over the first window
    points; verifies the matrix-unit calculus and the corner embedding
    on the way (full pairwise products up to a 6-point window, sampled
    beyond)."""
    points = [v.point for v in g.vertices if v.point is not None][:n]
    dims: List[int] = []
    realized: Dict[Tuple[PointDesc, PointDesc], NormalForm] = {}
    for k in range(1, len(points) + 1):
        window = points[:k]
        units = {}
        for y in window:
            for z in window:
                u = matrix_unit(X, y, z)
                if (y, z) not in realized:
                    realized[(y, z)] = realize_matrix_unit(X, u)
                units[(y, z)] = u
        forms = {key: realized[key] for key in units}
        distinct = {
            frozenset(f.terms.items()) for f in forms.values()
        }
        if len(distinct) != k * k:
            raise AssertionError("matrix units are not linearly independent")
        dims.append(k * k)
        if check_products:
            pairs = list(itertools.product(window, repeat=2))
            sample = (
                itertools.product(pairs, pairs)
                if k <= 6
                else zip(pairs, pairs[1:] + pairs[:1])
            )
            for (y, z), (zp, w) in sample:
                lhs = forms[(y, z)] * forms[(zp, w)]
                if z == zp:
                    if lhs != forms[(y, w)]:
                        raise AssertionError("unit product mismatch")
                elif not lhs.is_zero:
                    raise AssertionError("units with mismatched inner points")
            # corner embedding: the window unit absorbs every window element
            unit_k = zero(X)
            for y in window:
                unit_k = unit_k + forms[(y, y)]
            if unit_k * unit_k != unit_k:
                raise AssertionError("window unit is not idempotent")
            probe = forms[(window[0], window[-1])]
            if unit_k * probe != probe or probe * unit_k != probe:
                raise AssertionError("corner embedding fails")
    return dims


# ----------------------------------------------------------------------
# display

def format_monomial(m: Monomial) -> str:
    parts = []
    if m.mu:
        parts.append(f"s[{format_word(m.mu)}]")
    parts.append(f"p{{{describe(m.proj)}}}")
    if m.nu:
        parts.append(f"s*[{format_word(m.nu)}]")
    return " ".join(parts)


def format_normal_form(nf: NormalForm) -> str:
    if nf.is_zero:
        return "0"
    parts = []
    for m in sorted(nf.terms, key=lambda m: (m.degree, format_monomial(m))):
        c = nf.terms[m]
        prefix = "" if c == 1 else f"{c}*"
        parts.append(f"{prefix}{format_monomial(m)}")
    return " + ".join(parts)

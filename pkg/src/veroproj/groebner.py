"""Binomial Buchberger engine over the presentation ring of a monomial set.

The toric ideal of a monomial projection lives in a polynomial ring S
with one variable w_i per member of the defining MonomialSet.  Because
the ideal is prime and generated by binomials, the whole Groebner
machinery stays inside multiset arithmetic: S-monomials are exponent
vectors of length mu, S-polynomials of binomials are binomials, and
reduction never produces a coefficient other than +-1.  This module
provides the binomial types, the term orders (including the (r,c)-Lex
order for one-dimensional weight patterns (0,1,k) and the composite
orders used to lift a basis through a variable split), Buchberger with
a normal selection strategy, and a deterministic search for orders
that make the reduced basis quadratic.

Exponent-vector conventions: an S-monomial is a tuple of mu
non-negative ints; multiplication is componentwise addition, and
divisibility is componentwise <=.  Orders compare through `key`, which
returns a tuple so that Python's lexicographic tuple comparison does
the rest.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import Callable, Iterator, Sequence

from .errors import GuardExceeded, SpecParseError
from .fibers import DEFAULT_GUARD, GeneratorTable, minimal_generator_table
from .groups import DiagonalGroup, cyclic_group, invariants_of_degree, surface_normal_form
from .monomials import MonomialSet

ORDER_KINDS = ("lex", "deglex", "degrevlex", "revlex")


# ---------------------------------------------------------------------------
# exponent-vector arithmetic


def _vec_mul(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(u, v))


def _vec_divides(u: tuple[int, ...], v: tuple[int, ...]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def _vec_lcm(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a if a >= b else b for a, b in zip(u, v))


def _vec_strip(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Remove the common monomial factor of a pair (sound for prime ideals)."""
    common = tuple(a if a <= b else b for a, b in zip(u, v))
    if any(common):
        u = tuple(a - c for a, c in zip(u, common))
        v = tuple(b - c for b, c in zip(v, common))
    return u, v


def _rho_image(omega: MonomialSet, vec: Sequence[int]) -> tuple[int, ...]:
    """Product of the omega members selected by an S-exponent vector."""
    total = [0] * (omega.n + 1)
    for e, member in zip(vec, omega):
        if e:
            for j, exp in enumerate(member):
                total[j] += e * exp
    return tuple(total)


# ---------------------------------------------------------------------------
# binomials


@dataclass(frozen=True)
class Binomial:
    """A difference of two S-monomials, stored as exponent vectors.

    `plus` and `minus` play symmetric roles until an order orients the
    binomial; `oriented` returns a copy with `plus` the leading side.
    Construction goes through `make`, which checks the two sides are
    balanced (same product of omega members) and strips any common
    variable so the stored form is gcd-reduced.
    """

    plus: tuple[int, ...]
    minus: tuple[int, ...]

    @classmethod
    def make(cls, omega: MonomialSet, plus: Sequence[int], minus: Sequence[int]) -> "Binomial":
        mu = len(omega)
        plus = tuple(int(e) for e in plus)
        minus = tuple(int(e) for e in minus)
        if len(plus) != mu or len(minus) != mu:
            raise ValueError(
                f"exponent vectors must have length {mu}, got {len(plus)} and {len(minus)}"
            )
        if any(e < 0 for e in plus) or any(e < 0 for e in minus):
            raise ValueError("exponent vectors must be non-negative")
        if _rho_image(omega, plus) != _rho_image(omega, minus):
            raise ValueError(
                f"unbalanced binomial: sides map to different monomials "
                f"({_rho_image(omega, plus)} vs {_rho_image(omega, minus)})"
            )
        plus, minus = _vec_strip(plus, minus)
        if plus == minus:
            raise ValueError("degenerate binomial: the two sides are equal")
        return cls(plus, minus)

    @classmethod
    def from_indices(
        cls, omega: MonomialSet, lhs: Sequence[int], rhs: Sequence[int]
    ) -> "Binomial":
        """Build from two index multisets (as used by the fiber tables)."""
        mu = len(omega)
        plus = [0] * mu
        minus = [0] * mu
        for i in lhs:
            plus[i] += 1
        for i in rhs:
            minus[i] += 1
        return cls.make(omega, plus, minus)

    @property
    def degree(self) -> int:
        return sum(self.plus)

    @property
    def is_gcd_reduced(self) -> bool:
        return all(a == 0 or b == 0 for a, b in zip(self.plus, self.minus))

    def oriented(self, order) -> "Binomial":
        if order.key(self.plus) >= order.key(self.minus):
            return self
        return Binomial(self.minus, self.plus)

    def to_json_dict(self) -> dict:
        return {"plus": list(self.plus), "minus": list(self.minus), "lead": "plus"}


# ---------------------------------------------------------------------------
# term orders


@dataclass(frozen=True)
class TermOrder:
    """A monomial order on S given by a kind and a variable ranking.

    variable_rank[r] is the index of the variable of rank r, with rank 0
    the greatest.  `revlex` is accepted as an alias of the graded form:
    all comparisons made here are between monomials of equal degree
    (toric binomials are homogeneous), where the two agree, and the
    graded form is a genuine term order so the axioms below hold
    unconditionally.
    """

    kind: str
    variable_rank: tuple[int, ...]
    origin: str | None = field(default=None, compare=False)
    audit: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in ORDER_KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}; expected one of {ORDER_KINDS}")
        object.__setattr__(self, "kind", kind)
        ranks = tuple(int(r) for r in self.variable_rank)
        if sorted(ranks) != list(range(len(ranks))):
            raise ValueError(f"variable_rank must be a permutation of 0..{len(ranks) - 1}")
        object.__setattr__(self, "variable_rank", ranks)

    @property
    def mu(self) -> int:
        return len(self.variable_rank)

    def position_of(self, var: int) -> int:
        """Rank of a variable (0 = greatest)."""
        return self.variable_rank.index(var)

    def key(self, vec: Sequence[int]) -> tuple:
        by_rank = tuple(vec[i] for i in self.variable_rank)
        if self.kind == "lex":
            return by_rank
        if self.kind == "deglex":
            return (sum(vec),) + by_rank
        # degrevlex / revlex: higher degree wins, ties broken by the
        # smallest exponent on the least variable (negated reversal)
        return (sum(vec),) + tuple(-e for e in reversed(by_rank))

    def greater(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.key(u) > self.key(v)

    def spec_string(self) -> str:
        if self.origin is not None:
            return self.origin
        chain = " > ".join(f"w{i}" for i in self.variable_rank)
        return f"{self.kind} : {chain}"


@dataclass(frozen=True)
class LiftedOrder:
    """Composite order on a split ring: base order on images, then revlex.

    Comparison of monomials u, v of the split ring S~ proceeds in two
    stages: first their images under the merge map phi (sum the split
    blocks back together) are compared by the base order; on a tie, u
    and v are compared by graded revlex over the split variables, ranked
    so that variables with a greater base image come first and, within
    one image, the variable whose exponent tuple is lexicographically
    larger is greater (for a block split in two this is exactly the
    rule "larger first-split exponent wins").
    """

    base: object
    image: tuple[int, ...]
    variable_rank: tuple[int, ...]
    sizes: tuple[int, ...]
    origin: str | None = field(default=None, compare=False)

    kind = "lift"

    @property
    def mu(self) -> int:
        return len(self.variable_rank)

    def position_of(self, var: int) -> int:
        return self.variable_rank.index(var)

    def _phi(self, vec: Sequence[int]) -> tuple[int, ...]:
        base_mu = max(self.image) + 1 if self.image else 0
        out = [0] * base_mu
        for e, target in zip(vec, self.image):
            if e:
                out[target] += e
        return tuple(out)

    def key(self, vec: Sequence[int]) -> tuple:
        by_rank = tuple(vec[i] for i in self.variable_rank)
        tie = (sum(vec),) + tuple(-e for e in reversed(by_rank))
        return self.base.key(self._phi(vec)) + tie

    def greater(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.key(u) > self.key(v)

    def spec_string(self) -> str:
        if self.origin is not None:
            return self.origin
        sizes = ",".join(str(s) for s in self.sizes)
        return f"lift({self.base.spec_string()}; sizes={sizes})"


def validate_order(order, rng: random.Random | None = None, trials: int = 120) -> None:
    """Check the term-order axioms on random monomial triples.

    Raises ValueError on the first violation: the comparison must be a
    total order compatible with multiplication, with 1 strictly
    smallest.  Deterministic for a given rng seed.
    """
    rng = rng or random.Random(11)
    mu = order.mu
    one = (0,) * mu

    def rand_mono() -> tuple[int, ...]:
        return tuple(rng.randrange(0, 4) for _ in range(mu))

    for _ in range(trials):
        u, v, m = rand_mono(), rand_mono(), rand_mono()
        ku, kv = order.key(u), order.key(v)
        if (u == v) != (ku == kv):
            raise ValueError(f"order key not injective on monomials: {u} vs {v}")
        if u != one and not order.key(u) > order.key(one):
            raise ValueError(f"1 is not smallest: {u} compares below the empty monomial")
        if ku > kv and not order.key(_vec_mul(u, m)) > order.key(_vec_mul(v, m)):
            raise ValueError(f"multiplication does not preserve the order: {u} {v} times {m}")


# ---------------------------------------------------------------------------
# the (r,c)-Lex order for weight patterns (0,1,k)


def rc_term_order(d: int, k: int) -> tuple[TermOrder, MonomialSet]:
    """Lex order making the invariant ring of weights (0,1,k) quadratic.

    Requires d = t*k*(k-1) for an integer t >= 1 and k >= 2.  Every
    degree-d invariant of the cyclic weight pattern (0,1,k) mod d is
    determined by a pair (r, c): writing the exponents as (a, b, c),
    the congruence fixes b + k*c = r*d with 0 <= r <= k, and for each r
    the feasible c form the interval [(r-1)*t*k, r*t*(k-1)] (just {0}
    for r = 0).  Variables are ranked by the pair (r, c), the largest
    pair greatest, and monomials compare lexicographically.

    Returns the order together with the invariant set it ranks (tagged
    with its group so generator tables certify automatically); the
    (r, c) table is attached to the order as `audit`, one row
    (r, c, member) per variable in canonical member order.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    step = k * (k - 1)
    if d <= 0 or d % step != 0:
        raise ValueError(f"degree {d} is not a positive multiple of k(k-1) = {step}")
    t = d // step

    members: list[tuple[int, ...]] = []
    pair_of: dict[tuple[int, ...], tuple[int, int]] = {}
    rows: list[tuple[int, int]] = [(0, 0)]
    members.append((d, 0, 0))
    pair_of[(d, 0, 0)] = (0, 0)
    for r in range(1, k + 1):
        lo, hi = (r - 1) * t * k, r * t * (k - 1)
        for c in range(lo, hi + 1):
            a = (k - 1) * c - (r - 1) * d
            b = r * d - k * c
            m = (a, b, c)
            assert a >= 0 and b >= 0 and a + b + c == d
            rows.append((r, c))
            members.append(m)
            pair_of[m] = (r, c)

    group = cyclic_group(d, (0, 1, k % d))
    omega = invariants_of_degree(group, 1)
    if {tuple(m) for m in omega} != set(members):
        raise AssertionError(
            f"(r,c) table disagrees with the invariant enumeration for d={d}, k={k}"
        )

    ranked = sorted(range(len(omega)), key=lambda i: pair_of[tuple(omega[i])], reverse=True)
    audit = tuple((pair_of[tuple(m)][0], pair_of[tuple(m)][1], tuple(m)) for m in omega)
    order = TermOrder("lex", tuple(ranked), origin=f"rc({d},{k},{t})", audit=audit)
    return order, omega


# ---------------------------------------------------------------------------
# generators


def toric_generators(
    omega: MonomialSet,
    k_max: int | None = None,
    bound: str | None = None,
    guard: int = DEFAULT_GUARD,
    table: GeneratorTable | None = None,
) -> list[Binomial]:
    """Markov-style binomial generators of the toric ideal of omega.

    One binomial per excess fiber component, straight from the minimal
    generator table.  Without a certified completeness bound (2-normal
    or group-tagged omega, or an explicit k_max) the seed would be
    silently partial, so that case is an error instead.
    """
    if table is None or table.representatives is None:
        try:
            table = minimal_generator_table(
                omega, k_max=k_max, bound=bound, guard=guard, representatives=True
            )
        except ValueError as exc:
            raise ValueError(f"uncertified seed: {exc}") from exc
    gens: list[Binomial] = []
    for degree in sorted(table.representatives):
        for lhs, rhs in table.representatives[degree]:
            b = Binomial.from_indices(omega, lhs, rhs)
            assert b.degree == degree, "fiber representatives must not share a factor"
            gens.append(b)
    return gens


# ---------------------------------------------------------------------------
# Buchberger


class BuchbergerAborted(RuntimeError):
    """Raised when a run hits its step ceiling or the search degree cap.

    `reason` is "step-limit" or "degree-cap"; for step limits, `state`
    holds a resumable snapshot to pass back via buchberger(resume=...).
    """

    def __init__(self, reason: str, state: tuple | None = None, degree: int | None = None):
        self.reason = reason
        self.state = state
        self.degree = degree
        super().__init__(f"buchberger aborted: {reason}")


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis of oriented binomials.

    Elements are stored with `plus` the leading side under `order`.
    Reduced means: no leading monomial divides any monomial of another
    element, and every element is gcd-free (automatic for prime toric
    ideals, asserted anyway).
    """

    elements: tuple[Binomial, ...]
    order: object
    max_degree: int

    @property
    def is_quadratic(self) -> bool:
        return self.max_degree <= 2

    def normal_form(
        self, plus: Sequence[int], minus: Sequence[int]
    ) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        leads = [g.plus for g in self.elements]
        trails = [g.minus for g in self.elements]
        return _normal_form(tuple(plus), tuple(minus), leads, trails, self.order.key)

    def reduces_to_zero(self, b: Binomial) -> bool:
        return self.normal_form(b.plus, b.minus) is None

    def to_json_dict(self) -> dict:
        return {
            "order": self.order.spec_string(),
            "max_degree": self.max_degree,
            "elements": [g.to_json_dict() for g in self.elements],
        }


def _find_reducer(
    vec: tuple[int, ...],
    quad_leads: dict[tuple[int, int], int],
    other: list[int],
    leads: list[tuple[int, ...]],
    skip: int = -1,
) -> int | None:
    """Index of a basis element whose lead divides vec, or None.

    Degree-2 leads are found through a support-pair dictionary (the
    common case in quadratic runs); everything else by linear scan.
    The scan order is fixed, so reduction is deterministic.
    """
    support = [i for i, e in enumerate(vec) if e]
    for a in range(len(support)):
        i = support[a]
        if vec[i] >= 2:
            hit = quad_leads.get((i, i))
            if hit is not None and hit != skip:
                return hit
        for b in range(a + 1, len(support)):
            hit = quad_leads.get((i, support[b]))
            if hit is not None and hit != skip:
                return hit
    for idx in other:
        if idx != skip and _vec_divides(leads[idx], vec):
            return idx
    return None


def _index_leads(
    leads: list[tuple[int, ...]]
) -> tuple[dict[tuple[int, int], int], list[int]]:
    """Build the reducer lookup (support-pair dict + linear-scan rest)."""
    quad_leads: dict[tuple[int, int], int] = {}
    other: list[int] = []
    for idx, L in enumerate(leads):
        _register_lead(quad_leads, other, idx, L)
    return quad_leads, other


def _register_lead(
    quad_leads: dict[tuple[int, int], int],
    other: list[int],
    idx: int,
    L: tuple[int, ...],
) -> None:
    if sum(L) == 2:
        support = [i for i, e in enumerate(L) if e]
        pair = (support[0], support[0]) if len(support) == 1 else (support[0], support[1])
        quad_leads.setdefault(pair, idx)
    else:
        other.append(idx)


def _normal_form(
    u: tuple[int, ...],
    v: tuple[int, ...],
    leads: list[tuple[int, ...]],
    trails: list[tuple[int, ...]],
    key: Callable[[Sequence[int]], tuple],
    quad_leads: dict[tuple[int, int], int] | None = None,
    other: list[int] | None = None,
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Fully reduce the binomial u - v; None when it reduces to zero.

    Plain division-algorithm reduction: replace a side by (side -
    lead + trail) whenever some basis lead divides it.  Each step
    strictly decreases that side in the order, so this terminates; a
    binomial always reduces to a binomial or to zero.  The reducer
    index can be passed in by callers that maintain it incrementally;
    otherwise it is built here.
    """
    if quad_leads is None or other is None:
        quad_leads, other = _index_leads(leads)
    while True:
        if u == v:
            return None
        if key(u) < key(v):
            u, v = v, u
        hit = _find_reducer(u, quad_leads, other, leads)
        if hit is not None:
            u = tuple(a - b + c for a, b, c in zip(u, leads[hit], trails[hit]))
            continue
        hit = _find_reducer(v, quad_leads, other, leads)
        if hit is not None:
            v = tuple(a - b + c for a, b, c in zip(v, leads[hit], trails[hit]))
            continue
        return (u, v)


def buchberger(
    gens: Sequence[Binomial],
    order,
    *,
    step_limit: int | None = None,
    degree_cap: int | None = None,
    resume: tuple | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the binomial ideal generated by gens.

    Normal selection strategy: S-pairs are processed by ascending lcm
    degree (insertion order breaking ties), which keeps low-degree
    elements appearing early.  New basis elements are gcd-stripped
    before insertion; this is sound for prime toric ideals because the
    stripped binomial still lies in the ideal and generates the
    original one.  With `degree_cap`, insertion of an element of larger
    degree aborts immediately (search mode).  With `step_limit`, the
    run aborts after that many S-pair reductions carrying a resumable
    state; pass it back as `resume` (with the same gens and order) to
    continue.
    """
    key = order.key
    leads: list[tuple[int, ...]] = []
    trails: list[tuple[int, ...]] = []
    supports: list[frozenset[int]] = []
    quad_index: dict[tuple[int, int], int] = {}
    other_idx: list[int] = []
    pending: list[tuple[int, int, int, int]] = []
    counter = itertools.count()
    steps = 0

    def push_pairs(new_idx: int) -> None:
        Snew = supports[new_idx]
        Lnew = leads[new_idx]
        for i in range(new_idx):
            if supports[i].isdisjoint(Snew):
                continue  # coprime leads: the S-pair reduces to zero
            lcm = _vec_lcm(leads[i], Lnew)
            heappush(pending, (sum(lcm), next(counter), i, new_idx))

    def insert(u: tuple[int, ...], v: tuple[int, ...]) -> None:
        nf = _normal_form(u, v, leads, trails, key, quad_index, other_idx)
        if nf is None:
            return
        u, v = _vec_strip(*nf)
        if key(u) < key(v):
            u, v = v, u
        if degree_cap is not None and sum(u) > degree_cap:
            raise BuchbergerAborted("degree-cap", degree=sum(u))
        leads.append(u)
        trails.append(v)
        supports.append(frozenset(i for i, e in enumerate(u) if e))
        _register_lead(quad_index, other_idx, len(leads) - 1, u)
        push_pairs(len(leads) - 1)

    if resume is not None:
        leads, trails, pending, steps, count_start = resume
        leads, trails, pending = list(leads), list(trails), list(pending)
        supports = [frozenset(i for i, e in enumerate(L) if e) for L in leads]
        quad_index, other_idx = _index_leads(leads)
        counter = itertools.count(count_start)
    else:
        for g in gens:
            insert(g.plus, g.minus)

    while pending:
        if step_limit is not None and steps >= step_limit:
            state = (tuple(leads), tuple(trails), tuple(pending), steps, next(counter))
            raise BuchbergerAborted("step-limit", state=state)
        _, _, i, j = heappop(pending)
        lcm = _vec_lcm(leads[i], leads[j])
        u = tuple(l - a + b for l, a, b in zip(lcm, leads[i], trails[i]))
        v = tuple(l - a + b for l, a, b in zip(lcm, leads[j], trails[j]))
        steps += 1
        insert(u, v)

    # inter-reduce: keep the minimal leads, then reduce tails to a fixpoint
    by_key = sorted(range(len(leads)), key=lambda i: key(leads[i]))
    kept: list[int] = []
    for i in by_key:
        if not any(_vec_divides(leads[k], leads[i]) for k in kept):
            kept.append(i)
    rleads = [leads[i] for i in kept]
    rtrails = [trails[i] for i in kept]
    quad_leads, other = _index_leads(rleads)
    while True:
        progressed = False
        for i in range(len(rleads)):
            hit = _find_reducer(rtrails[i], quad_leads, other, rleads, skip=i)
            if hit is not None:
                rtrails[i] = tuple(
                    a - b + c for a, b, c in zip(rtrails[i], rleads[hit], rtrails[hit])
                )
                progressed = True
        if not progressed:
            break

    elements = []
    for L, T in zip(rleads, rtrails):
        assert all(a == 0 or b == 0 for a, b in zip(L, T)), "reduced element not gcd-free"
        assert key(L) > key(T)
        elements.append(Binomial(L, T))
    elements.sort(key=lambda g: (g.degree, g.plus, g.minus))
    max_degree = max((g.degree for g in elements), default=0)
    gb = GroebnerBasis(tuple(elements), order, max_degree)

    for g in gens:
        nf = _normal_form(g.plus, g.minus, rleads, rtrails, key, quad_leads, other)
        if nf is not None:
            raise AssertionError("input generator does not reduce to zero against the basis")
    return gb


def verify_groebner(gb: GroebnerBasis, gens: Sequence[Binomial] | None = None) -> bool:
    """Full Buchberger-criterion check of a claimed basis (for tests).

    Every pairwise S-binomial must reduce to zero, as must every
    supplied generator.
    """
    els = gb.elements
    key = gb.order.key
    leads = [g.plus for g in els]
    trails = [g.minus for g in els]
    quad_leads, other = _index_leads(leads)
    for a in range(len(els)):
        for b in range(a + 1, len(els)):
            lcm = _vec_lcm(els[a].plus, els[b].plus)
            u = tuple(l - p + m for l, p, m in zip(lcm, els[a].plus, els[a].minus))
            v = tuple(l - p + m for l, p, m in zip(lcm, els[b].plus, els[b].minus))
            if u != v and _normal_form(u, v, leads, trails, key, quad_leads, other) is not None:
                return False
    for g in gens or ():
        if _normal_form(g.plus, g.minus, leads, trails, key, quad_leads, other) is not None:
            return False
    return True


# ---------------------------------------------------------------------------
# order search


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a quadratic-order search.

    status is "found" or "not-found-within"; `impossible` is set when
    the generator table already rules out any quadratic basis (a cubic
    or worse minimal generator), in which case no candidates are tried
    and the warning says so.  A plain not-found is never a negative
    certificate.
    """

    status: str
    order: object | None
    basis: GroebnerBasis | None
    tried: int
    budget: int
    seed: int
    warning: str | None = None
    impossible: bool = False

    @property
    def found(self) -> bool:
        return self.status == "found"


def _rc_candidates(omega: MonomialSet) -> Iterator[TermOrder]:
    """The (r,c)-Lex orders applicable to omega, if any.

    omega qualifies when it is the degree-d invariant set of a cyclic
    surface action whose weights become (0,1,k), k >= 2 with k(k-1)
    dividing d, after a unit rescaling mod d; rescaling does not change
    the invariant set, only the (r,c) labels.
    """
    group = omega.origin_group
    if group is None or omega.origin_t != 1:
        return
    if group.n != 2 or not group.is_cyclic_presentation:
        return
    d = group.factors[0].order
    if d < 2:
        return
    weights = group.factors[0].weights
    seen: set[tuple[int, ...]] = set()
    for unit in range(1, d):
        if math.gcd(unit, d) != 1:
            continue
        scaled = [(unit * w) % d for w in weights]
        shift = scaled[0]
        scaled = [(w - shift) % d for w in scaled]
        perm = sorted(range(3), key=lambda i: scaled[i])
        nf = tuple(scaled[i] for i in perm)
        if nf[0] != 0 or nf[1] != 1:
            continue
        k = nf[2]
        if k < 2 or d % (k * (k - 1)) != 0:
            continue
        pairs = []
        ok = True
        for m in omega:
            b, c = m[perm[1]], m[perm[2]]
            total = b + k * c
            if total % d != 0:
                ok = False
                break
            pairs.append((total // d, c))
        if not ok:
            continue
        ranks = tuple(sorted(range(len(omega)), key=lambda i: pairs[i], reverse=True))
        if ranks in seen:
            continue
        seen.add(ranks)
        t = d // (k * (k - 1))
        yield TermOrder("lex", ranks, origin=f"rc({d},{k},{t})")


def _candidate_orders(omega: MonomialSet, seed: int) -> Iterator:
    """Deterministic stream of candidate term orders for the search.

    Stages: (r,c)-Lex orders first when applicable; then the canonical
    rankings under each kind; then rankings obtained by sorting the
    members under every variable permutation of the ambient x-ring
    (graded revlex and lex); then either all permutations (mu <= 8) or
    seeded random permutations, cycling through the kinds.
    """
    mu = len(omega)
    seen: set[tuple[str, tuple[int, ...]]] = set()

    def emit(kind: str, ranks: tuple[int, ...]):
        sig = (kind, ranks)
        if sig in seen:
            return None
        seen.add(sig)
        return TermOrder(kind, ranks)

    for order in _rc_candidates(omega):
        sig = (order.kind, order.variable_rank)
        if sig not in seen:
            seen.add(sig)
            yield order

    identity = tuple(range(mu))
    for kind in ("degrevlex", "revlex", "lex", "deglex"):
        order = emit(kind, identity)
        if order:
            yield order

    members = [tuple(m) for m in omega]
    nvars = omega.n + 1
    for xperm in itertools.permutations(range(nvars)):
        for xkind in ("degrevlex", "lex"):
            def xkey(m: tuple[int, ...]) -> tuple:
                p = tuple(m[i] for i in xperm)
                if xkind == "lex":
                    return p
                return tuple(-e for e in reversed(p))
            ranks = tuple(sorted(range(mu), key=lambda i: xkey(members[i]), reverse=True))
            for kind in ("revlex", "degrevlex", "lex"):
                order = emit(kind, ranks)
                if order:
                    yield order

    kinds = ("degrevlex", "lex", "deglex", "revlex")
    if mu <= 8:
        for ranks in itertools.permutations(range(mu)):
            for kind in kinds:
                order = emit(kind, ranks)
                if order:
                    yield order
    else:
        rng = random.Random(seed)
        while True:
            ranks = tuple(rng.sample(range(mu), mu))
            kind = kinds[rng.randrange(len(kinds))]
            order = emit(kind, ranks)
            if order:
                yield order


def search_quadratic_order(
    omega: MonomialSet,
    budget: int = 200,
    seed: int = 0,
    k_max: int | None = None,
    bound: str | None = None,
    step_limit: int | None = 200_000,
    guard: int = DEFAULT_GUARD,
    table: GeneratorTable | None = None,
) -> SearchResult:
    """Look for a term order whose reduced Groebner basis is quadratic.

    Candidates come from `_candidate_orders` and are tried in that
    fixed sequence, so the first success is deterministic for a given
    seed.  Runs abort as soon as a basis element of degree > 2 appears.
    When the generator table contains a minimal generator of degree 3
    or more, no quadratic basis can exist (basis degrees dominate
    minimal generator degrees) and the search returns immediately with
    a warning instead of burning the budget.
    """
    if table is None:
        table = minimal_generator_table(omega, k_max=k_max, bound=bound, guard=guard)
    answer = table.quadraticity()
    if answer.status == "no":
        return SearchResult(
            status="not-found-within",
            order=None,
            basis=None,
            tried=0,
            budget=budget,
            seed=seed,
            warning=(
                "no quadratic Groebner basis exists: the ideal has a minimal "
                f"generator of degree {answer.witness_degree} (table {table.degrees})"
            ),
            impossible=True,
        )
    warning = None
    if answer.status == "unknown-above":
        warning = (
            f"generator table only certified up to degree {answer.verified_up_to}; "
            "a found basis is quadratic for the ideal generated by that table"
        )
    gens = toric_generators(omega, k_max=k_max, bound=bound, guard=guard, table=None)
    tried = 0
    for order in _candidate_orders(omega, seed):
        if tried >= budget:
            break
        tried += 1
        try:
            gb = buchberger(gens, order, degree_cap=2, step_limit=step_limit)
        except BuchbergerAborted:
            continue
        if gb.max_degree <= 2:
            return SearchResult(
                status="found",
                order=order,
                basis=gb,
                tried=tried,
                budget=budget,
                seed=seed,
                warning=warning,
            )
    return SearchResult(
        status="not-found-within",
        order=None,
        basis=None,
        tried=tried,
        budget=budget,
        seed=seed,
        warning=warning,
    )


# ---------------------------------------------------------------------------
# lifting through a variable split


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def lift_omega(
    omega: MonomialSet, sizes: Sequence[int], guard: int = DEFAULT_GUARD
) -> MonomialSet:
    """Preimage of omega under the merge map of a variable split.

    Variable i of the base ring becomes a block of sizes[i] variables;
    a split monomial belongs to the lift exactly when summing each
    block reproduces a member of omega.  Pure counting first: the lift
    of a member multiplies binomial(e_i + l_i - 1, l_i - 1) over its
    exponents, and the guard is checked before enumeration.
    """
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != omega.n + 1:
        raise ValueError(f"need {omega.n + 1} block sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValueError(f"block sizes must be positive, got {sizes}")
    total = 0
    for m in omega:
        count = 1
        for e, l in zip(m, sizes):
            count *= math.comb(e + l - 1, l - 1)
        total += count
    if total > guard:
        raise GuardExceeded("split-variable lift", total, guard)
    members: list[tuple[int, ...]] = []
    for m in omega:
        blocks = [list(_weak_compositions(e, l)) for e, l in zip(m, sizes)]
        for choice in itertools.product(*blocks):
            members.append(tuple(itertools.chain.from_iterable(choice)))
    return MonomialSet(members)


def lift_order(order, omega: MonomialSet, lifted: MonomialSet, sizes: Sequence[int]) -> LiftedOrder:
    """Extend a term order on omega's ring to the ring of its lift.

    The comparison is staged exactly as the split construction wants
    it: monomials compare through their merge images under the base
    order first, and ties fall to graded revlex over the split
    variables, ranked by (rank of merge image, then lexicographically
    larger split exponent tuple first).
    """
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != omega.n + 1:
        raise ValueError(f"need {omega.n + 1} block sizes, got {len(sizes)}")
    image = []
    for m in lifted:
        merged = []
        pos = 0
        for l in sizes:
            merged.append(sum(m[pos : pos + l]))
            pos += l
        image.append(omega.index_of(merged))
    image = tuple(image)
    ranks = tuple(
        sorted(
            range(len(lifted)),
            key=lambda j: (order.position_of(image[j]), tuple(-e for e in tuple(lifted[j]))),
        )
    )
    return LiftedOrder(base=order, image=image, variable_rank=ranks, sizes=sizes)


# ---------------------------------------------------------------------------
# quadratic certificates from subalgebra structure


@dataclass(frozen=True)
class VeroneseCertificate:
    """Structural proof that a cyclic surface invariant ring is G-quadratic.

    case "veronese-subalgebra": the weights share a factor delta > 1
    with the order, so the ring is the delta-th Veronese of a smaller
    invariant ring of regularity at most 3, and Veronese powers at or
    above ceil(reg/2) have quadratic Groebner bases.
    case "even-reflection": weights (0, a, d-a) with d even and
    gcd(d, a) = 1 reduce along a unit rescaling to the pattern (0,1,2),
    whose (r,c)-Lex order is quadratic.
    """

    case: str
    d: int
    normal_form: tuple[int, int, int]
    delta: int
    reduced_group_spec: str | None
    regularity_bound: int | None
    verdict: str
    detail: str


def veronese_subalgebra_certificate(group: DiagonalGroup) -> VeroneseCertificate:
    """Certify G-quadraticity of a cyclic surface group structurally.

    Routes by gcd: a common divisor delta > 1 of the weights and the
    order yields the Veronese-subalgebra case; otherwise weights
    summing to d with d even and coprime smaller weight yield the
    reflection case.  Anything else is a domain error (no structural
    certificate applies; use the search instead).
    """
    if group.n != 2 or not group.is_cyclic_presentation:
        raise ValueError("certificate needs a cyclic group acting on 3 variables")
    d, nf = surface_normal_form(group)
    a0, a1, a2 = nf
    delta = math.gcd(d, math.gcd(a1, a2))
    if delta > 1:
        reduced = cyclic_group(d // delta, (0, a1 // delta, a2 // delta))
        return VeroneseCertificate(
            case="veronese-subalgebra",
            d=d,
            normal_form=nf,
            delta=delta,
            reduced_group_spec=reduced.spec_string(),
            regularity_bound=3,
            verdict="g-quadratic",
            detail=(
                f"invariant ring is the Veronese power of order {delta} of the invariant "
                f"ring of {reduced.spec_string()}, which has regularity <= 3; Veronese "
                f"powers >= ceil(3/2) = 2 of such rings have quadratic Groebner bases, "
                f"and {delta} >= 2"
            ),
        )
    if d % 2 == 0 and a1 + a2 == d and math.gcd(d, a1) == 1:
        return VeroneseCertificate(
            case="even-reflection",
            d=d,
            normal_form=nf,
            delta=1,
            reduced_group_spec=None,
            regularity_bound=None,
            verdict="g-quadratic",
            detail=(
                f"weights (0, {a1}, {d - a1}) with d = {d} even and gcd(d, {a1}) = 1 "
                "rescale to the pattern (0, 1, 2), settled by its (r,c)-Lex order"
            ),
        )
    raise ValueError(
        f"no structural certificate for weights {nf} mod {d}: common divisor is 1 "
        f"and the reflection hypothesis (d even, a1 + a2 = d, gcd(d, a1) = 1) fails"
    )


# ---------------------------------------------------------------------------
# order spec strings


def parse_order(text: str, omega: MonomialSet):
    """Parse an order spec string against a concrete monomial set.

    Grammar:  `rc(d,k,t)`  |  `lift(<base>; sizes=l0,l1,...)`  |
    `<kind> : w3 > w1 > ...`  |  bare `<kind>` (canonical ranking).
    The parsed order is validated against the term-order axioms and,
    for rc and lift, against omega itself.
    """
    text = text.strip()
    if text.startswith("rc(") and text.endswith(")"):
        body = text[3:-1]
        parts = [p.strip() for p in body.split(",")]
        if len(parts) != 3:
            raise SpecParseError("order", text, body, "expected rc(d,k,t)")
        try:
            d, k, t = (int(p) for p in parts)
        except ValueError:
            raise SpecParseError("order", text, body, "rc parameters must be integers") from None
        order, rc_omega = rc_term_order(d, k)
        if d != t * k * (k - 1):
            raise SpecParseError("order", text, body, f"t must be {d // (k * (k - 1))}")
        if [tuple(m) for m in rc_omega] != [tuple(m) for m in omega]:
            raise SpecParseError(
                "order", text, body, "rc order belongs to a different monomial set"
            )
        return order
    if text.startswith("lift(") and text.endswith(")"):
        body = text[5:-1]
        if ";" not in body:
            raise SpecParseError("order", text, body, "expected lift(<base>; sizes=...)")
        base_text, sizes_part = body.rsplit(";", 1)
        sizes_part = sizes_part.strip()
        if not sizes_part.startswith("sizes="):
            raise SpecParseError("order", text, sizes_part, "expected sizes=l0,l1,...")
        try:
            sizes = tuple(int(s) for s in sizes_part[len("sizes=") :].split(","))
        except ValueError:
            raise SpecParseError("order", text, sizes_part, "sizes must be integers") from None
        merged: list[tuple[int, ...]] = []
        for m in omega:
            out = []
            pos = 0
            for l in sizes:
                out.append(sum(m[pos : pos + l]))
                pos += l
            merged.append(tuple(out))
        base_omega = MonomialSet(sorted(set(merged), reverse=True))
        relift = lift_omega(base_omega, sizes)
        if [tuple(m) for m in relift] != [tuple(m) for m in omega]:
            raise SpecParseError(
                "order", text, sizes_part, "omega is not the full lift of its merge image"
            )
        base = parse_order(base_text.strip(), base_omega)
        return lift_order(base, base_omega, omega, sizes)
    if ":" in text:
        kind_part, chain = text.split(":", 1)
        kind = kind_part.strip().lower()
        if kind not in ORDER_KINDS:
            raise SpecParseError(
                "order", text, kind_part.strip(), f"kind must be one of {ORDER_KINDS}"
            )
        ranks = []
        for token in chain.split(">"):
            token = token.strip()
            if not token.startswith("w"):
                raise SpecParseError("order", text, token, "variables are written w<i>")
            try:
                ranks.append(int(token[1:]))
            except ValueError:
                raise SpecParseError("order", text, token, "bad variable index") from None
        if sorted(ranks) != list(range(len(omega))):
            raise SpecParseError(
                "order", text, chain.strip(), f"need each of w0..w{len(omega) - 1} exactly once"
            )
        order = TermOrder(kind, tuple(ranks))
        validate_order(order)
        return order
    kind = text.lower()
    if kind in ORDER_KINDS:
        return TermOrder(kind, tuple(range(len(omega))))
    raise SpecParseError("order", text, text, "unrecognized order spec")

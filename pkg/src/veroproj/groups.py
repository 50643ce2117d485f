"""Finite diagonal abelian group actions and their invariant monomials.

A finite abelian subgroup of GL(n+1, K) that acts diagonally (K large
enough, char 0 in mind) is presented here as a product of cyclic
factors.  A factor of order e with weights (w_0, ..., w_n) sends x_j to
zeta^{w_j} x_j for a primitive e-th root of unity zeta, so a monomial
x^a is invariant exactly when

    sum_j w_j a_j == 0  (mod e)

holds for every factor.  Everything downstream (Hilbert series slices,
h-vectors, the surface quadraticity criterion, block groups for lifts)
reduces to enumerating solutions of those congruences degree by degree.

Presentations are taken at face value: weights are reduced modulo the
factor order but a factor whose action has smaller order than presented
is kept as presented, with a diagnostic warning attached, because the
enumeration degree t * |G| depends on the presented order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import GuardExceeded, SpecParseError
from .monomials import Monomial, MonomialSet

DEFAULT_GUARD = 10**8


@dataclass(frozen=True)
class CyclicFactor:
    """One cyclic factor of a diagonal group presentation."""

    order: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"factor order must be positive, got {self.order}")
        if len(self.weights) < 1:
            raise ValueError("factor needs at least one weight")
        object.__setattr__(
            self, "weights", tuple(w % self.order for w in self.weights)
        )

    @property
    def effective_order(self) -> int:
        """Order of the image of this factor acting on the variables."""
        g = self.order
        for w in self.weights:
            g = math.gcd(g, w)
        return self.order // g

    def spec_string(self) -> str:
        return f"C({self.order};{','.join(str(w) for w in self.weights)})"


class DiagonalGroup:
    """Product of cyclic factors acting diagonally on n+1 variables."""

    __slots__ = ("factors", "warnings")

    def __init__(self, factors: Sequence[CyclicFactor], strict: bool = False):
        factors = tuple(factors)
        if not factors:
            raise ValueError("a group needs at least one factor")
        nv = len(factors[0].weights)
        for f in factors:
            if len(f.weights) != nv:
                raise ValueError(
                    f"factor {f.spec_string()} has {len(f.weights)} weights, "
                    f"expected {nv}"
                )
        warnings: list[str] = []
        for f in factors:
            if f.effective_order != f.order:
                warnings.append(
                    f"factor {f.spec_string()} acts with effective order "
                    f"{f.effective_order}, a proper divisor of the presented "
                    f"order {f.order}"
                )
        for a, b in zip(factors, factors[1:]):
            if b.order % a.order != 0:
                warnings.append(
                    f"invariant-factor chain broken: {a.order} does not divide "
                    f"{b.order}"
                )
        if strict and warnings:
            raise ValueError("; ".join(warnings))
        self.factors = factors
        self.warnings = tuple(warnings)

    @property
    def n(self) -> int:
        return len(self.factors[0].weights) - 1

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.order
        return out

    @property
    def is_cyclic_presentation(self) -> bool:
        return len(self.factors) == 1

    def is_invariant(self, m: Sequence[int]) -> bool:
        for f in self.factors:
            if sum(w * a for w, a in zip(f.weights, m)) % f.order != 0:
                return False
        return True

    def spec_string(self) -> str:
        return "+".join(f.spec_string() for f in self.factors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiagonalGroup):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        return f"DiagonalGroup({self.spec_string()!r})"


def cyclic_group(order: int, weights: Sequence[int], strict: bool = False) -> DiagonalGroup:
    return DiagonalGroup([CyclicFactor(order, tuple(weights))], strict=strict)


def parse_group(text: str, strict: bool = False) -> DiagonalGroup:
    """Parse a presentation like "C(4; 0,1,2,3)" or "C(2;0,1,1)+C(4;0,2,3)"."""
    factors = []
    for chunk in text.split("+"):
        token = chunk.strip()
        if not (token.startswith("C(") and token.endswith(")")):
            raise SpecParseError("group", text, token, "expected C(order; w0,...,wn)")
        body = token[2:-1]
        if ";" not in body:
            raise SpecParseError("group", text, token, "missing ';' between order and weights")
        order_part, weights_part = body.split(";", 1)
        try:
            order = int(order_part.strip())
        except ValueError:
            raise SpecParseError("group", text, order_part.strip(), "order is not an integer") from None
        weights = []
        for field in weights_part.split(","):
            field = field.strip()
            try:
                weights.append(int(field))
            except ValueError:
                raise SpecParseError("group", text, field, "weight is not an integer") from None
        try:
            factors.append(CyclicFactor(order, tuple(weights)))
        except ValueError as exc:
            raise SpecParseError("group", text, token, str(exc)) from None
    return DiagonalGroup(factors, strict=strict)


def _solve_linear_congruence(a: int, b: int, m: int) -> tuple[int, int] | None:
    """Solutions of a*x == b (mod m) as (residue, modulus), or None."""
    if m == 1:
        return (0, 1)
    a %= m
    b %= m
    g = math.gcd(a, m)
    if b % g != 0:
        return None
    m2 = m // g
    if m2 == 1:
        return (0, 1)
    x0 = (b // g) * pow(a // g, -1, m2) % m2
    return (x0, m2)


def _merge_congruences(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Intersect x == r1 (mod m1) with x == r2 (mod m2)."""
    g = math.gcd(m1, m2)
    if (r2 - r1) % g != 0:
        return None
    lcm = m1 // g * m2
    k = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    return ((r1 + m1 * k) % lcm, lcm)


def _invariant_monomials(
    group: DiagonalGroup, degree: int, cap: int | None = None, scale: int = 1
) -> Iterator[tuple[int, ...]]:
    """Monomials of the given total degree whose weighted exponent sums
    vanish modulo scale * order for every factor, optionally with every
    exponent bounded by cap, in descending lex order.

    With scale == 1 these are exactly the invariant monomials of the
    group.  Positions 0..n-2 are walked recursively with degree bounds;
    the last two exponents are then solutions of one linear congruence
    per factor, merged by CRT, so the innermost level steps straight
    through the arithmetic progression instead of scanning.
    """
    nv = group.n + 1
    factors = group.factors
    moduli = tuple(f.order * scale for f in factors)
    if cap is not None and cap * nv < degree:
        return
    if nv == 1:
        if cap is not None and degree > cap:
            return
        if all(
            (f.weights[0] * degree) % m == 0 for f, m in zip(factors, moduli)
        ):
            yield (degree,)
        return

    head = [0] * nv
    # residual sums per factor for the filled prefix
    def rec(pos: int, rem: int, residues: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if pos == nv - 2:
            # solve w_p * x + w_q * (rem - x) == -residue (mod modulus) per factor
            wp_idx, wq_idx = pos, pos + 1
            sol = (0, 1)
            for f, res, m in zip(factors, residues, moduli):
                a = f.weights[wp_idx] - f.weights[wq_idx]
                b = -(res + f.weights[wq_idx] * rem)
                s = _solve_linear_congruence(a, b, m)
                if s is None:
                    return
                sol = _merge_congruences(sol[0], sol[1], s[0], s[1])  # type: ignore[arg-type]
                if sol is None:
                    return
            r0, step = sol
            lo = 0 if cap is None else max(0, rem - cap)
            hi = rem if cap is None else min(rem, cap)
            # descending lex wants the larger x_pos first
            first = hi - ((hi - r0) % step)
            if first < lo:
                return
            for x in range(first, lo - 1, -step):
                head[wp_idx] = x
                head[wq_idx] = rem - x
                yield tuple(head)
            return
        top = rem if cap is None else min(rem, cap)
        for e in range(top, -1, -1):
            if cap is not None and rem - e > cap * (nv - pos - 1):
                continue  # the rest cannot absorb the remaining degree
            head[pos] = e
            new_res = tuple(
                (res + f.weights[pos] * e) % m
                for f, res, m in zip(factors, residues, moduli)
            )
            yield from rec(pos + 1, rem - e, new_res)

    yield from rec(0, degree, tuple(0 for _ in factors))


def invariants_of_degree(
    group: DiagonalGroup, t: int = 1, guard: int = DEFAULT_GUARD
) -> MonomialSet:
    """The generating slice B_t of the t-th extension of the group.

    Members are the monomials of degree t * |G| whose weighted exponent
    sums vanish modulo t * d_i for every cyclic factor of order d_i
    (weights taken in their reduced representatives).  For t == 1 this
    is exactly the set of invariant monomials of degree |G|; for larger
    t the scaled congruence carves the generators of the extension with
    the same weight pattern and t-fold order, a strict subset of the
    plain invariants of that degree.  Always contains every x_i^{t|G|}.

    Parameters
    ----------
    group : the acting group, taken at its presented order
    t     : which slice of the extension tower to enumerate, t >= 1
    guard : bail out before enumerating more candidates than this
    """
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    degree = t * group.order
    candidates = math.comb(group.n + degree, group.n)
    if candidates > guard:
        raise GuardExceeded(f"invariants of degree {degree} in {group.n + 1} variables", candidates, guard)
    members = list(_invariant_monomials(group, degree, scale=t))
    if not members:
        raise ValueError(
            f"group {group.spec_string()} has no invariants of degree {degree}"
        )
    return MonomialSet(members).tagged(group, t)


def count_invariants(group: DiagonalGroup, degree: int, cap: int | None = None) -> int:
    """Number of invariant monomials of a given total degree."""
    return sum(1 for _ in _invariant_monomials(group, degree, cap))


# ---------------------------------------------------------------------------
# surfaces: cyclic quadraticity criterion, Koszul classification, h-vectors
# ---------------------------------------------------------------------------


def surface_normal_form(group: DiagonalGroup) -> tuple[int, tuple[int, int, int]]:
    """Normalized weights (0, a1, a2) of a cyclic group acting on 3 variables.

    The first weight is shifted to zero (a constant shift acts trivially
    on monomials whose degree is a multiple of the order) and the rest
    are sorted ascending, which is a relabeling of the variables.
    """
    if group.n != 2:
        raise ValueError(f"surface normal form needs 3 variables, got {group.n + 1}")
    if not group.is_cyclic_presentation:
        raise ValueError("surface normal form is defined for cyclic presentations")
    f = group.factors[0]
    d = f.order
    shifted = sorted((w - f.weights[0]) % d for w in f.weights)
    return d, (shifted[0], shifted[1], shifted[2])


@dataclass(frozen=True)
class SurfaceCriterion:
    """Outcome of the gcd criterion for a cyclic surface group."""

    d: int
    normal_form: tuple[int, int, int]
    alpha1_prime: int | None
    d_prime: int | None
    lam: int | None
    mu: int | None
    gcd_product: int | None
    quadratic: bool
    degenerate: str | None = None


def lambda_decomposition(d: int, a1: int, a2: int) -> tuple[int, int, int, int, int]:
    """Arithmetic core of the surface criterion.

    For normalized weights (0, a1, a2) with 0 < a1 <= a2 < d, write
    g1 = gcd(a1, d), a1' = a1/g1, d' = d/g1, and let lam be the unique
    integer in (0, d'] with lam * a1' == a2 (mod d'), mu the matching
    integer quotient.  Returns (a1', d', lam, mu, product) where

        product = gcd(a1, d) * gcd(lam, d') * gcd(lam - g1, d')

    and the parameterized surface is cut out by quadrics exactly when
    the product exceeds 1.
    """
    if not (0 < a1 <= a2 < d):
        raise ValueError(f"need 0 < a1 <= a2 < d, got ({d}; 0,{a1},{a2})")
    g1 = math.gcd(a1, d)
    a1p = a1 // g1
    dp = d // g1
    if dp == 1:
        lam = 1
    else:
        lam = a2 * pow(a1p, -1, dp) % dp
        if lam == 0:
            lam = dp
    mu = (a2 - lam * a1p) // dp
    assert a2 == lam * a1p + mu * dp
    product = g1 * math.gcd(lam, dp) * math.gcd(lam - g1, dp)
    return a1p, dp, lam, mu, product


def surface_quadraticity(group: DiagonalGroup) -> SurfaceCriterion:
    """Apply the gcd criterion to a cyclic group acting on P^2.

    Degenerate actions (order 1, or all weights equal after the shift,
    or only one nonzero weight with a1 = 0 handled by the formula's
    gcd(0, .) = . convention) come out quadratic, matching the fact that
    the parameterization is then a full Veronese in disguise.
    """
    d, nf = surface_normal_form(group)
    a0, a1, a2 = nf
    assert a0 == 0
    if d == 1 or a2 == 0:
        return SurfaceCriterion(d, nf, None, None, None, None, None, True, "trivial-action")
    if a1 == 0:
        # gcd(0, d) = d, so d' = 1, lam = 1, and the product is d > 1
        return SurfaceCriterion(d, nf, 0, 1, 1, a2, d, True, "two-variable-action")
    a1p, dp, lam, mu, product = lambda_decomposition(d, a1, a2)
    return SurfaceCriterion(d, nf, a1p, dp, lam, mu, product, product > 1)


@dataclass(frozen=True)
class SurfaceKoszulVerdict:
    koszul: bool
    quadratic: bool
    route: str
    detail: str


def surface_koszul(group: DiagonalGroup) -> SurfaceKoszulVerdict:
    """Koszul classification for diagonal groups acting on 3 variables.

    For a cyclic presentation, Koszulness, quadraticity, and the gcd
    criterion all agree.  A presentation with at least two nontrivial
    factors forming a divisibility chain always has an invariant of the
    shape x0^e x1^(d-e), which settles Koszulness affirmatively.  Any
    other presentation falls back to the support-2 test on B_1, which is
    equivalent for every diagonal surface group.
    """
    if group.n != 2:
        raise ValueError(f"surface classification needs 3 variables, got {group.n + 1}")
    if group.is_cyclic_presentation:
        crit = surface_quadraticity(group)
        return SurfaceKoszulVerdict(
            crit.quadratic,
            crit.quadratic,
            "gcd-criterion",
            f"normal form {crit.normal_form}, gcd product {crit.gcd_product}",
        )
    orders = [f.order for f in group.factors]
    chain = all(b % a == 0 for a, b in zip(orders, orders[1:]))
    if chain and len(orders) >= 2 and all(o >= 2 for o in orders):
        return SurfaceKoszulVerdict(
            True, True, "noncyclic-invariant",
            f"nontrivial invariant-factor chain {orders}",
        )
    # fall back: quadratic iff some invariant of degree |G| uses exactly 2 variables
    b1 = invariants_of_degree(group, 1)
    witness = next((m for m in b1 if len(m.support()) == 2), None)
    if witness is not None:
        return SurfaceKoszulVerdict(True, True, "support-2", f"witness {tuple(witness)}")
    return SurfaceKoszulVerdict(False, False, "support-2", "no invariant uses exactly two variables")


@dataclass(frozen=True)
class HVector:
    h: tuple[int, ...]
    regularity: int


def h_vector_group(group: DiagonalGroup, guard: int = DEFAULT_GUARD) -> HVector:
    """The h-vector of the invariant-ring slice algebra, by direct count.

    h_i is the number of invariant monomials of degree i*d whose
    exponents are all strictly below d (d the group order); the vector
    has entries for i = 0..n and the regularity is one more than the
    index of its last nonzero entry.
    """
    d = group.order
    n = group.n
    if d == 1:
        # every exponent would need to be < 1, only the empty monomial counts
        return HVector((1,) + (0,) * n, 1)
    h = []
    for i in range(n + 1):
        degree = i * d
        candidates = math.comb(n + degree, n)
        if candidates > guard:
            raise GuardExceeded(
                f"h-vector slice {i} of {group.spec_string()}", candidates, guard
            )
        h.append(count_invariants(group, degree, cap=d - 1))
    last = max(i for i, v in enumerate(h) if v != 0)
    return HVector(tuple(h), last + 1)


def triple_projections(group: DiagonalGroup) -> list[tuple[tuple[int, int, int], DiagonalGroup]]:
    """All restrictions of a cyclic group to 3 of its n+1 variables.

    Returns (variable triple, restricted cyclic surface group) pairs;
    the restricted groups keep the presented order.
    """
    if not group.is_cyclic_presentation:
        raise ValueError("triple projections are defined for cyclic presentations")
    if group.n < 3:
        raise ValueError(f"need at least 4 variables, got {group.n + 1}")
    from itertools import combinations

    f = group.factors[0]
    out = []
    for triple in combinations(range(group.n + 1), 3):
        w = tuple(f.weights[i] for i in triple)
        out.append((triple, cyclic_group(f.order, w)))
    return out


def block_group(group: DiagonalGroup, sizes: Sequence[int]) -> DiagonalGroup:
    """Group acting on split variables: weight w_i is repeated sizes[i] times."""
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != group.n + 1:
        raise ValueError(
            f"need one block size per variable: {group.n + 1} sizes, got {len(sizes)}"
        )
    if any(s < 1 for s in sizes):
        raise ValueError(f"block sizes must be positive, got {sizes}")
    factors = []
    for f in group.factors:
        weights: list[int] = []
        for w, s in zip(f.weights, sizes):
            weights.extend([w] * s)
        factors.append(CyclicFactor(f.order, tuple(weights)))
    return DiagonalGroup(factors)

"""Fibers of the parameterizing monomial map and minimal generator counts.

Fix a MonomialSet omega with members m_0 > ... > m_(mu-1).  The toric
ideal of the projection it parameterizes lives in K[w_0..w_(mu-1)] and
is spanned, degree by degree, by differences of monomials w^u - w^v
with the same image.  The degree-k slice is controlled by the fibers:
for a target monomial of degree k*d, the fiber is the set of k-element
index multisets whose member product is the target.

Joining two multisets whenever they share an index gives the fiber
graph.  A fiber with c connected components contributes exactly c - 1
minimal generators in degree k: differences inside a component lie in
the degree-(k-1) slice times the irrelevant ideal, while differences
across components are independent modulo it (a graded Nakayama
argument).  In degree 2 two distinct multisets can never share an
index, so every fiber is an independent set and the count is just
(fiber size - 1), summed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import GuardExceeded
from .monomials import Monomial, MonomialSet, enumerate_degree

DEFAULT_GUARD = 10**8


@dataclass(frozen=True)
class Factorization:
    """A k-element multiset of omega indices, stored sorted ascending."""

    indices: tuple[int, ...]
    product: Monomial

    @classmethod
    def of(cls, omega: MonomialSet, indices: Sequence[int]) -> "Factorization":
        idx = tuple(sorted(int(i) for i in indices))
        if not idx:
            raise ValueError("a factorization needs at least one factor")
        if idx[0] < 0 or idx[-1] >= len(omega):
            raise ValueError(f"index out of range in {idx} for a set of size {len(omega)}")
        prod = [0] * (omega.n + 1)
        for i in idx:
            for p, e in enumerate(omega[i]):
                prod[p] += e
        return cls(idx, Monomial(prod))

    @property
    def degree(self) -> int:
        return len(self.indices)


@dataclass
class Fiber:
    """All factorizations of one target monomial, plus the fiber graph."""

    target: Monomial
    elements: list[tuple[int, ...]]  # sorted index multisets, ascending lex

    def __post_init__(self):
        self.elements = sorted(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def connected_components(self) -> list[list[tuple[int, ...]]]:
        """Components of the graph joining multisets that share an index."""
        parent = list(range(len(self.elements)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        owner: dict[int, int] = {}
        for pos, elem in enumerate(self.elements):
            for idx in set(elem):
                if idx in owner:
                    ra, rb = find(owner[idx]), find(pos)
                    if ra != rb:
                        parent[rb] = ra
                else:
                    owner[idx] = pos
        groups: dict[int, list[tuple[int, ...]]] = {}
        for pos, elem in enumerate(self.elements):
            groups.setdefault(find(pos), []).append(elem)
        # deterministic: components ordered by their lex-least element
        return sorted(groups.values(), key=lambda comp: comp[0])

    def component_count(self) -> int:
        if self.elements and len(self.elements[0]) == 2:
            # degree-2 multisets sharing an index and a product are equal
            return len(self.elements)
        return len(self.connected_components())

    def is_connected(self) -> bool:
        return self.component_count() <= 1


def _multiset_count(mu: int, k: int) -> int:
    return math.comb(mu + k - 1, k)


def fibers_of_degree(
    omega: MonomialSet, k: int, guard: int = DEFAULT_GUARD
) -> dict[Monomial, Fiber]:
    """Partition all k-element index multisets of omega by their product.

    Raises GuardExceeded before enumerating more than `guard` multisets;
    the exception carries the exact count.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    mu = len(omega)
    total = _multiset_count(mu, k)
    if total > guard:
        raise GuardExceeded(f"degree-{k} fibers over {mu} members", total, guard)
    members = [tuple(m) for m in omega]
    nv = omega.n + 1
    buckets: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    prefix = [0] * nv
    chosen: list[int] = []
    seen = 0

    def rec(start: int, left: int) -> None:
        nonlocal seen
        if left == 0:
            seen += 1
            buckets.setdefault(tuple(prefix), []).append(tuple(chosen))
            return
        for i in range(start, mu):
            m = members[i]
            for p in range(nv):
                prefix[p] += m[p]
            chosen.append(i)
            rec(i, left - 1)
            chosen.pop()
            for p in range(nv):
                prefix[p] -= m[p]

    rec(0, k)
    if seen != total:
        raise RuntimeError(
            f"fiber partition check failed: walked {seen} multisets, expected {total}"
        )
    return {
        Monomial(t): Fiber(Monomial(t), elems) for t, elems in buckets.items()
    }


def fiber_of(
    omega: MonomialSet, target: Sequence[int], guard: int = DEFAULT_GUARD
) -> Fiber:
    """Factorizations of one target monomial into members of omega.

    The factorization length is target degree / d; divisibility pruning
    plus memoization on (remaining monomial, minimum usable index) keeps
    the search well below the full multiset walk.
    """
    t = Monomial(target)
    if t.nvars != omega.n + 1:
        raise ValueError(f"target has {t.nvars} variables, omega has {omega.n + 1}")
    if t.degree % omega.d != 0:
        raise ValueError(
            f"target degree {t.degree} is not a multiple of the member degree {omega.d}"
        )
    k = t.degree // omega.d
    members = [tuple(m) for m in omega]
    mu = len(members)
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def rec(rem: tuple[int, ...], start: int, left: int) -> tuple[tuple[int, ...], ...]:
        if left == 0:
            return ((),) if all(e == 0 for e in rem) else ()
        out = []
        for i in range(start, mu):
            m = members[i]
            if all(a <= b for a, b in zip(m, rem)):
                nxt = tuple(b - a for a, b in zip(m, rem))
                for tail in rec(nxt, i, left - 1):
                    out.append((i,) + tail)
        return tuple(out)

    elements = [e for e in rec(tuple(t), 0, k)]
    return Fiber(t, elements)


def hilbert_function(
    omega: MonomialSet, k: int, guard: int = DEFAULT_GUARD
) -> int:
    """Number of distinct products of k members (the degree-k Hilbert value)."""
    return hilbert_values(omega, k, guard)[k]


def hilbert_values(
    omega: MonomialSet, k_max: int, guard: int = DEFAULT_GUARD
) -> list[int]:
    """Hilbert function values for degrees 0..k_max by iterated products."""
    if k_max < 0:
        raise ValueError(f"need k_max >= 0, got {k_max}")
    members = [tuple(m) for m in omega]
    values = [1]
    current: set[tuple[int, ...]] = {tuple([0] * (omega.n + 1))}
    for k in range(1, k_max + 1):
        work = len(current) * len(members)
        if work > guard:
            raise GuardExceeded(f"Hilbert value at degree {k}", work, guard)
        current = {
            tuple(a + b for a, b in zip(p, m)) for p in current for m in members
        }
        values.append(len(current))
    return values


def is_product_of_two(omega: MonomialSet, target: Sequence[int]) -> bool:
    """Whether the degree-2d target factors as a product of two members."""
    t = Monomial(target)
    if t.degree != 2 * omega.d or t.nvars != omega.n + 1:
        raise ValueError(
            f"target {tuple(t)} is not a degree-{2 * omega.d} monomial in "
            f"{omega.n + 1} variables"
        )
    for m in omega:
        if m.divides(t):
            if t.quotient(m) in omega:
                return True
    return False


def is_2_normal(
    omega: MonomialSet, guard: int = DEFAULT_GUARD
) -> tuple[bool, Monomial | None]:
    """Whether every degree-2d monomial is a product of two members.

    Returns (True, None) or (False, witness) with the lex-least
    unreachable monomial as witness.
    """
    n, d = omega.n, omega.d
    total = math.comb(n + 2 * d, n)
    if total > guard:
        raise GuardExceeded("2-normality check", total, guard)
    members = [tuple(m) for m in omega]
    products = {
        tuple(a + b for a, b in zip(members[i], members[j]))
        for i in range(len(members))
        for j in range(i, len(members))
    }
    if len(products) == total:
        return True, None
    missing = min(
        tuple(m) for m in enumerate_degree(n, 2 * d) if tuple(m) not in products
    )
    return False, Monomial(missing)


@dataclass(frozen=True)
class QuadraticityAnswer:
    """Tri-state answer: "yes", "no" (with witness degree), "unknown-above"."""

    status: str
    witness_degree: int | None
    verified_up_to: int

    def __bool__(self) -> bool:
        return self.status == "yes"


@dataclass
class GeneratorTable:
    """Minimal generator counts of the toric ideal, by degree.

    degrees holds only the nonzero counts.  bound records what certifies
    completeness up to verified_up_to: "two-normal" and "group" both cap
    the generation degree at 3, "user" means the caller chose the cap.
    """

    degrees: dict[int, int]
    verified_up_to: int
    bound: str
    representatives: dict[int, list[tuple[tuple[int, ...], tuple[int, ...]]]] | None = None

    def quadraticity(self) -> QuadraticityAnswer:
        beyond = sorted(k for k, c in self.degrees.items() if k > 2 and c > 0)
        if beyond:
            return QuadraticityAnswer("no", beyond[0], self.verified_up_to)
        certified = self.bound in ("two-normal", "group") and self.verified_up_to >= 3
        if certified:
            return QuadraticityAnswer("yes", None, self.verified_up_to)
        return QuadraticityAnswer("unknown-above", None, self.verified_up_to)

    def to_json_dict(self) -> dict:
        out = {
            "degrees": {str(k): v for k, v in sorted(self.degrees.items())},
            "verified_up_to": self.verified_up_to,
            "bound": self.bound,
        }
        if self.representatives is not None:
            out["representatives"] = {
                str(k): [{"lhs": list(a), "rhs": list(b)} for a, b in pairs]
                for k, pairs in sorted(self.representatives.items())
            }
        return out


def minimal_generator_table(
    omega: MonomialSet,
    k_max: int | None = None,
    bound: str | None = None,
    guard: int = DEFAULT_GUARD,
    representatives: bool = False,
) -> GeneratorTable:
    """Count minimal generators of the toric ideal degree by degree.

    Bound resolution: an explicit `bound` is honored ("two-normal" is
    re-checked, "group" requires omega to come from an invariant
    enumeration, "user" requires k_max).  With no bound given, an
    explicit k_max means "user"; otherwise a group-tagged omega gets the
    group bound, a 2-normal omega the two-normal bound (both cap the
    generation degree at 3), and anything else is an error because no
    finite k_max would be certified.
    """
    if bound is None:
        if k_max is not None:
            bound = "user"
        elif omega.origin_group is not None:
            bound = "group"
        else:
            normal, _ = is_2_normal(omega, guard)
            if normal:
                bound = "two-normal"
            else:
                raise ValueError(
                    "no completeness bound applies: omega is not 2-normal and not "
                    "group-tagged; pass k_max for an explicit user bound"
                )
    if bound == "two-normal":
        normal, witness = is_2_normal(omega, guard)
        if not normal:
            raise ValueError(
                f"two-normal bound requested but omega is not 2-normal; "
                f"witness {tuple(witness)}"  # type: ignore[arg-type]
            )
        k_max = 3 if k_max is None else k_max
    elif bound == "group":
        if omega.origin_group is None:
            raise ValueError("group bound requested but omega has no origin group")
        k_max = 3 if k_max is None else k_max
    elif bound == "user":
        if k_max is None:
            raise ValueError("user bound requires an explicit k_max")
    else:
        raise ValueError(f"unknown bound {bound!r}")

    degrees: dict[int, int] = {}
    reps: dict[int, list[tuple[tuple[int, ...], tuple[int, ...]]]] = {}
    for k in range(2, k_max + 1):
        count = 0
        found: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        fib_map = fibers_of_degree(omega, k, guard)
        for target in sorted(fib_map, reverse=True):
            fib = fib_map[target]
            if len(fib) <= 1:
                continue
            comps = fib.connected_components() if k > 2 else [[e] for e in fib.elements]
            if len(comps) <= 1:
                continue
            count += len(comps) - 1
            if representatives:
                principal = comps[0]  # holds the lex-least element
                for comp in comps[1:]:
                    found.append((comp[0], principal[0]))
        if count:
            degrees[k] = count
            if representatives:
                reps[k] = found
    return GeneratorTable(
        degrees, k_max, bound, reps if representatives else None
    )


def ik_sequence_witness(
    omega: MonomialSet,
    lhs: Sequence[int],
    rhs: Sequence[int],
    guard: int = DEFAULT_GUARD,
) -> list[tuple[int, ...]] | None:
    """A chain of trivial moves connecting two factorizations, if one exists.

    lhs and rhs are index multisets of equal length k with the same
    member product.  A trivial move keeps one index fixed and rewrites
    the rest by a relation one degree down, so consecutive entries of
    the returned chain share an index.  Returns the chain (starting at
    lhs, ending at rhs) or None when the two factorizations lie in
    different components of the fiber graph.  For k = 2 sharing an
    index forces equality, so distinct inputs are never connected.
    """
    a = tuple(sorted(int(i) for i in lhs))
    b = tuple(sorted(int(i) for i in rhs))
    if len(a) != len(b):
        raise ValueError(f"factorization lengths differ: {len(a)} vs {len(b)}")
    fa = Factorization.of(omega, a)
    fb = Factorization.of(omega, b)
    if fa.product != fb.product:
        raise ValueError(
            f"factorizations have different products: {tuple(fa.product)} vs {tuple(fb.product)}"
        )
    if a == b:
        return [a]
    if len(a) == 2:
        return None
    fib = fiber_of(omega, fa.product, guard)
    # breadth-first search over the share-an-index graph
    from collections import deque

    prev: dict[tuple[int, ...], tuple[int, ...] | None] = {a: None}
    queue = deque([a])
    elements = fib.elements
    while queue:
        cur = queue.popleft()
        if cur == b:
            chain = [cur]
            while prev[chain[-1]] is not None:
                chain.append(prev[chain[-1]])  # type: ignore[arg-type]
            return list(reversed(chain))
        cur_set = set(cur)
        for other in elements:
            if other not in prev and cur_set.intersection(other):
                prev[other] = cur
                queue.append(other)
    return None


def first_disconnected_fiber(
    omega: MonomialSet, k: int, guard: int = DEFAULT_GUARD
) -> Fiber | None:
    """The first (by descending target) degree-k fiber that is disconnected.

    Degree 2 uses the convention that any fiber with two or more
    factorizations is disconnected.
    """
    if k < 2:
        raise ValueError(f"connectivity starts at degree 2, got {k}")
    fib_map = fibers_of_degree(omega, k, guard)
    for target in sorted(fib_map, reverse=True):
        fib = fib_map[target]
        if len(fib) > 1 and not fib.is_connected():
            return fib
    return None


def h_polynomial(
    omega: MonomialSet, k_max: int | None = None, guard: int = DEFAULT_GUARD
) -> tuple[int, ...]:
    """Numerator coefficients of the Hilbert series over (1-z)^(n+1).

    Computes c_j = sum_i (-1)^i C(n+1, i) HF(j-i) for j = 0..k_max
    (default n+3) and demands that the last three vanish, the signal
    that enough values were used; increase k_max otherwise.  Requires
    all pure powers x_i^d in omega so that the algebra has the full
    Krull dimension n+1 matching the denominator.
    """
    n = omega.n
    if not omega.has_pure_powers():
        raise ValueError(
            "h-polynomial needs all pure powers x_i^d in omega; at least one is missing"
        )
    if k_max is None:
        k_max = n + 3
    if k_max < 3:
        raise ValueError(f"need k_max >= 3 to observe stabilization, got {k_max}")
    hf = hilbert_values(omega, k_max, guard)
    coeffs = []
    for j in range(k_max + 1):
        c = 0
        for i in range(0, min(j, n + 1) + 1):
            c += (-1) ** i * math.comb(n + 1, i) * hf[j - i]
        coeffs.append(c)
    if any(coeffs[j] != 0 for j in range(k_max - 2, k_max + 1)):
        raise ValueError(
            f"k_max={k_max} insufficient: trailing coefficients "
            f"{coeffs[k_max - 2:]} have not stabilized to zero"
        )
    last = max(j for j, c in enumerate(coeffs) if c != 0)
    length = max(n + 1, last + 1)
    return tuple(coeffs[:length])

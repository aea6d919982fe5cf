"""Partial actions and partial representations of finite groups.

A partial representation sends group elements into a unital semialgebra so
that the defining relations hold:

    pi(e) = 1
    pi(g) pi(h) pi(h^-1) = pi(gh) pi(h^-1)
    pi(g^-1) pi(g) pi(h) = pi(g^-1) pi(gh)

The canonical example lambda_p lands in the groupoid semialgebra and sends g
to the sum of all pairs (I, g). Every partial representation into an algebra
over cancellative scalars extends to a unital homomorphism out of the whole
groupoid semialgebra; the extension is computed coefficient-wise in the ring
of differences and pulled back, and the factorization (unitality,
multiplicativity, compatibility with lambda_p, uniqueness via span
generation) is verified rather than assumed.

Partial actions on finite sets are the set-level shadow of the same idea and
are verified against two equivalent axiom systems.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Any

from .group import FiniteGroup, from_table, indices_of_mask, make_group
from .groupoid import Gamma, GammaElement
from .semialgebra import (
    AlgebraElement,
    BasisMismatchError,
    GammaAlgebra,
    GroupAlgebra,
    MatrixAlgebra,
    MatrixElement,
    element_from_delta,
    element_to_delta,
    matrix_from_delta,
    matrix_to_delta,
)
from .semiring import DEFAULT_SEED, QNN, SemiringSpec, delta_of

_RANK_PRIME = 2**31 - 1


# ---------------------------------------------------------------------------
# Reports.

@dataclass(frozen=True)
class AxiomCheck:
    """One universally quantified check: its verdict and first counterexample."""

    name: str
    passed: bool
    witness: tuple | None = None
    note: str = ""


@dataclass(frozen=True)
class AxiomReport:
    subject: str
    checks: tuple[AxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def check(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(f"no check named {name!r} in report for {self.subject}")

    @property
    def failures(self) -> tuple[AxiomCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


# ---------------------------------------------------------------------------
# Partial actions on finite sets.

class PartialActionFormatError(ValueError):
    """The description of a partial action is structurally malformed."""


@dataclass
class PartialAction:
    """Per-element domains D_g with bijections alpha_g: D_{g^-1} -> D_g.

    domains[g] is the subset of {0..set_size-1} named D_g; maps[g] is the
    mapping alpha_g as a dict keyed by points of D_{g^-1}. Whether the axioms
    hold is a separate question answered by verify_partial_action; this type
    only pins the shape.
    """

    group: FiniteGroup
    set_size: int
    domains: tuple[frozenset[int], ...]
    maps: tuple[dict[int, int], ...]


def _structural_check(pa: PartialAction) -> None:
    G = pa.group
    n = G.order
    if pa.set_size < 0:
        raise PartialActionFormatError(f"ground set size must be >= 0, got {pa.set_size}")
    if len(pa.domains) != n or len(pa.maps) != n:
        raise PartialActionFormatError(
            f"need one domain and one map per group element; got "
            f"{len(pa.domains)} domains and {len(pa.maps)} maps for order {n}")
    for g in range(n):
        bad = [x for x in pa.domains[g] if not 0 <= x < pa.set_size]
        if bad:
            raise PartialActionFormatError(
                f"domain of {G.label(g)} contains {bad[0]}, outside the ground set "
                f"of size {pa.set_size}")
    for g in range(n):
        source = pa.domains[G.inverse(g)]
        target = pa.domains[g]
        mp = pa.maps[g]
        if set(mp) != source:
            raise PartialActionFormatError(
                f"map of {G.label(g)} is defined on {sorted(mp)} but its domain "
                f"D_({G.label(G.inverse(g))}) is {sorted(source)}")
        values = list(mp.values())
        if len(set(values)) != len(values) or set(values) != target:
            raise PartialActionFormatError(
                f"map of {G.label(g)} is not a bijection onto its declared "
                f"domain D_({G.label(g)}) = {sorted(target)}; images are {sorted(values)}")


def partial_action_from_json(doc: dict, group: FiniteGroup | None = None) -> PartialAction:
    """Ingest `{"X": n, "domains": {...}, "maps": {...}}`, validating shape.

    The group comes from the `group` argument when given, else from an
    optional "group" key in the document (a spec string such as "cyclic:2" or
    an inline Cayley-table object). Domains and maps are keyed by the decimal
    element index; every element must be present.
    """
    if not isinstance(doc, dict):
        raise PartialActionFormatError(f"expected an object, got {type(doc).__name__}")
    if group is None:
        inline = doc.get("group")
        if inline is None:
            raise PartialActionFormatError(
                'no group given: pass one explicitly or add a "group" key')
        if isinstance(inline, str):
            group = make_group(inline)
        elif isinstance(inline, dict):
            group = from_table(inline)
        else:
            raise PartialActionFormatError(
                f'"group" must be a spec string or a table object, '
                f"got {type(inline).__name__}")
    size = doc.get("X")
    if not isinstance(size, int) or isinstance(size, bool) or size < 0:
        raise PartialActionFormatError(f'"X" must be a non-negative integer, got {size!r}')
    raw_domains = doc.get("domains")
    raw_maps = doc.get("maps")
    if not isinstance(raw_domains, dict) or not isinstance(raw_maps, dict):
        raise PartialActionFormatError('"domains" and "maps" must both be objects')

    domains: list[frozenset[int]] = []
    maps: list[dict[int, int]] = []
    for g in range(group.order):
        key = str(g)
        if key not in raw_domains:
            raise PartialActionFormatError(
                f"missing domain for element {key} ({group.label(g)})")
        if key not in raw_maps:
            raise PartialActionFormatError(
                f"missing map for element {key} ({group.label(g)})")
        points = raw_domains[key]
        if (not isinstance(points, list)
                or any(not isinstance(x, int) or isinstance(x, bool) for x in points)):
            raise PartialActionFormatError(
                f"domain of element {key} must be a list of integers")
        if len(set(points)) != len(points):
            raise PartialActionFormatError(f"domain of element {key} has duplicates")
        pairs = raw_maps[key]
        if (not isinstance(pairs, list)
                or any(not isinstance(p, list) or len(p) != 2 for p in pairs)):
            raise PartialActionFormatError(
                f"map of element {key} must be a list of [from, to] pairs")
        mp: dict[int, int] = {}
        for src, dst in pairs:
            if not isinstance(src, int) or not isinstance(dst, int):
                raise PartialActionFormatError(
                    f"map of element {key} has a non-integer pair [{src!r}, {dst!r}]")
            if src in mp:
                raise PartialActionFormatError(
                    f"map of element {key} sends {src} to two different points")
            mp[src] = dst
        domains.append(frozenset(points))
        maps.append(mp)

    pa = PartialAction(group, size, tuple(domains), tuple(maps))
    _structural_check(pa)
    return pa


def verify_partial_action(pa: PartialAction) -> AxiomReport:
    """Check both axiom systems for a partial action, exhaustively.

    The first system is: the identity acts everywhere as the identity; the
    translated overlap of two domains matches the overlap law
    alpha_g(D_{g^-1} & D_h) = D_g & D_{gh}; and compositions agree wherever
    both sides are defined. The second replaces the overlap law by inverse
    compatibility and an extension property of composites. Both verdicts are
    reported along with whether they agree.
    """
    _structural_check(pa)
    G = pa.group
    D = pa.domains
    A = pa.maps
    inv = G.inverse
    ground = frozenset(range(pa.set_size))
    checks: list[AxiomCheck] = []

    dom_ok = D[0] == ground
    dom_w = None if dom_ok else (sorted(ground ^ D[0])[0],)
    checks.append(AxiomCheck("identity_domain", dom_ok, dom_w))

    id_w = next(((x,) for x in sorted(D[0] & ground) if A[0].get(x) != x), None)
    checks.append(AxiomCheck("identity_map", id_w is None, id_w))

    overlap_w = None
    for g in G.elements():
        for h in G.elements():
            lhs = {A[g][x] for x in D[inv(g)] & D[h]}
            rhs = D[g] & D[G.mul(g, h)]
            if lhs != rhs:
                overlap_w = (G.label(g), G.label(h))
                break
        if overlap_w:
            break
    checks.append(AxiomCheck("domain_compatibility", overlap_w is None, overlap_w))

    comp_w = None
    for g in G.elements():
        for h in G.elements():
            gh = G.mul(g, h)
            for x in sorted(D[inv(h)] & D[inv(gh)]):
                y = A[h][x]
                if y not in D[inv(g)] or A[g][y] != A[gh][x]:
                    comp_w = (G.label(g), G.label(h), x)
                    break
            if comp_w:
                break
        if comp_w:
            break
    checks.append(AxiomCheck("composition", comp_w is None, comp_w))

    pa1_ok = dom_ok and id_w is None
    checks.append(AxiomCheck("pa_identity", pa1_ok, dom_w or id_w))

    inv_w = None
    for g in G.elements():
        for x in sorted(D[inv(g)]):
            if A[inv(g)].get(A[g][x]) != x:
                inv_w = (G.label(g), x)
                break
        if inv_w:
            break
    checks.append(AxiomCheck("pa_inverse", inv_w is None, inv_w))

    ext_w = None
    for g in G.elements():
        for h in G.elements():
            gh = G.mul(g, h)
            for x in sorted(D[inv(h)]):
                y = A[h][x]
                if y not in D[inv(g)]:
                    continue
                if x not in D[inv(gh)] or A[gh][x] != A[g][y]:
                    ext_w = (G.label(g), G.label(h), x)
                    break
            if ext_w:
                break
        if ext_w:
            break
    checks.append(AxiomCheck("pa_extension", ext_w is None, ext_w))

    first = overlap_w is None and comp_w is None and pa1_ok
    second = pa1_ok and inv_w is None and ext_w is None
    checks.append(AxiomCheck(
        "formulations_agree", first == second, None,
        note=f"overlap system: {'pass' if first else 'fail'}, "
             f"inverse system: {'pass' if second else 'fail'}"))

    return AxiomReport(subject=f"partial action of {G.name} on {pa.set_size} points",
                       checks=tuple(checks))


# ---------------------------------------------------------------------------
# Partial representations.

class PartialRepMap:
    """A map from group elements into a unital algebra, one image per element.

    Whether the partial-representation relations hold is decided by
    verify_partial_rep; extend_to_gamma_hom additionally insists on a unital
    image for the identity.
    """

    __slots__ = ("group", "algebra", "images")

    def __init__(self, group: FiniteGroup, algebra, images):
        images = tuple(images)
        if len(images) != group.order:
            raise ValueError(
                f"need {group.order} images for {group.name}, got {len(images)}")
        self.group = group
        self.algebra = algebra
        self.images = images

    def image(self, g: int):
        return self.images[g]

    def __repr__(self) -> str:
        return f"PartialRepMap({self.group.name} -> {self.algebra!r})"


def verify_partial_rep(pi: PartialRepMap) -> AxiomReport:
    """Check the defining relations on all (g, h) pairs, plus the sandwich
    identity pi(g) pi(g^-1) pi(g) = pi(g) they imply."""
    G = pi.group
    im = pi.images
    inv = G.inverse
    one = pi.algebra.one()

    cache: dict[tuple[int, int], Any] = {}

    def prod(a: int, b: int):
        key = (a, b)
        if key not in cache:
            cache[key] = im[a] * im[b]
        return cache[key]

    def first_pair(pred) -> tuple | None:
        for g in G.elements():
            for h in G.elements():
                if not pred(g, h):
                    return (G.label(g), G.label(h))
        return None

    checks = [AxiomCheck("unit", im[0] == one, None if im[0] == one else (G.label(0),))]
    right_w = first_pair(
        lambda g, h: prod(g, h) * im[inv(h)] == prod(G.mul(g, h), inv(h)))
    checks.append(AxiomCheck("right_relation", right_w is None, right_w))
    left_w = first_pair(
        lambda g, h: im[inv(g)] * prod(g, h) == prod(inv(g), G.mul(g, h)))
    checks.append(AxiomCheck("left_relation", left_w is None, left_w))
    sandwich_w = next(((G.label(g),) for g in G.elements()
                       if prod(g, inv(g)) * im[g] != im[g]), None)
    checks.append(AxiomCheck("sandwich", sandwich_w is None, sandwich_w))

    return AxiomReport(subject=f"partial representation of {G.name} "
                               f"over {pi.algebra.scalars.name}",
                       checks=tuple(checks))


def lambda_p(algebra: GammaAlgebra) -> PartialRepMap:
    """The canonical partial representation g -> sum over I of (I, g).

    The image of the identity is the sum of all units, which is the identity
    of the semialgebra.
    """
    gamma = algebra.gamma
    one = algebra.scalars.one
    coeffs: list[dict[int, Any]] = [{} for _ in range(gamma.group.order)]
    for i, el in enumerate(gamma.elements):
        coeffs[el.g][i] = one
    images = tuple(AlgebraElement(algebra, c) for c in coeffs)
    return PartialRepMap(gamma.group, algebra, images)


def epsilon(pi: PartialRepMap, r: int):
    """The idempotent pi(r) pi(r^-1) attached to a group element."""
    return pi.image(r) * pi.image(pi.group.inverse(r))


class Epsilon:
    """The cached table of all idempotents epsilon(r) of one representation."""

    def __init__(self, pi: PartialRepMap):
        self.pi = pi
        self.table = tuple(epsilon(pi, r) for r in pi.group.elements())

    def __getitem__(self, r: int):
        return self.table[r]

    def validate(self) -> AxiomReport:
        """Idempotency and pairwise commutation; both follow from the
        partial-representation relations but are checked directly."""
        G = self.pi.group
        t = self.table
        one = self.pi.algebra.one()
        checks = [AxiomCheck("epsilon_unit", t[0] == one,
                             None if t[0] == one else (G.label(0),))]
        idem_w = next(((G.label(r),) for r in G.elements() if t[r] * t[r] != t[r]), None)
        checks.append(AxiomCheck("epsilon_idempotent", idem_w is None, idem_w))
        comm_w = None
        for r in G.elements():
            for s in range(r + 1, G.order):
                if t[r] * t[s] != t[s] * t[r]:
                    comm_w = (G.label(r), G.label(s))
                    break
            if comm_w:
                break
        checks.append(AxiomCheck("epsilon_commuting", comm_w is None, comm_w))
        return AxiomReport(subject=f"idempotent table for {G.name}", checks=tuple(checks))


# ---------------------------------------------------------------------------
# Extension to a homomorphism on the groupoid semialgebra.

class ExtensionMembershipError(Exception):
    """The extension formula left the non-negative part of the target.

    For a genuine partial representation this cannot happen; hitting it means
    the input map was not one (or the code is wrong), so the witnesses are
    kept for diagnosis.
    """

    def __init__(self, element: GammaElement, witnesses: list, target_name: str):
        self.element = element
        self.witnesses = list(witnesses)
        basis, pair = self.witnesses[0]
        super().__init__(
            f"extension value at {element} does not lie in {target_name}: "
            f"{len(self.witnesses)} coefficient(s) have no non-negative form, "
            f"first at {basis!r} with difference pair {pair!r}")


def _lift(x):
    if isinstance(x, MatrixElement):
        return matrix_to_delta(x)
    return element_to_delta(x)


def _lower(x, base):
    if isinstance(x, MatrixElement):
        return matrix_from_delta(x, base)
    return element_from_delta(x, base)


class GammaHom:
    """A linear map out of a groupoid semialgebra, fixed by its basis images."""

    __slots__ = ("domain", "target", "images")

    def __init__(self, domain: GammaAlgebra, target, images):
        images = tuple(images)
        if len(images) != domain.size:
            raise ValueError(f"need {domain.size} basis images, got {len(images)}")
        self.domain = domain
        self.target = target
        self.images = images

    def image_of(self, el: GammaElement):
        return self.images[self.domain.index[el]]

    def apply(self, x: AlgebraElement):
        if x.algebra is not self.domain:
            raise BasisMismatchError(f"element lives in {x.algebra!r}, not {self.domain!r}")
        acc = self.target.zero()
        for i in sorted(x.coeffs):
            acc = acc + self.images[i].scale(x.coeffs[i])
        return acc

    def with_image(self, el: GammaElement, value) -> "GammaHom":
        """A copy with one basis image replaced; used by mutation tests."""
        i = self.domain.index[el]
        images = self.images[:i] + (value,) + self.images[i + 1:]
        return GammaHom(self.domain, self.target, images)

    def is_unital(self) -> bool:
        return self.apply(self.domain.one()) == self.target.one()

    def multiplicative_report(self, *, pair_budget: int = 2500, samples: int = 300,
                              seed: int = DEFAULT_SEED) -> AxiomReport:
        """Check image(x) image(y) = image(xy) on basis pairs, exhaustively
        when the pair count fits the budget and on seeded samples otherwise,
        plus on random linear combinations either way."""
        dom = self.domain
        zero = self.target.zero()

        def basis_ok(i: int, j: int) -> bool:
            k = dom.basis_product(i, j)
            expected = zero if k is None else self.images[k]
            return self.images[i] * self.images[j] == expected

        size = dom.size
        if size * size <= pair_budget:
            pairs = ((i, j) for i in range(size) for j in range(size))
            note = f"exhaustive over {size * size} basis pairs"
        else:
            rng = Random(seed)
            pairs = ((rng.randrange(size), rng.randrange(size)) for _ in range(samples))
            note = f"sampled {samples} basis pairs, seed {seed:#x}"
        basis_w = next(((dom.describe_basis(i), dom.describe_basis(j))
                        for i, j in pairs if not basis_ok(i, j)), None)
        checks = [AxiomCheck("multiplicative_basis", basis_w is None, basis_w, note)]

        rng = Random(seed + 1)
        elem_w = None
        rounds = max(1, samples // 10)
        for _ in range(rounds):
            x = dom.random_element(rng)
            y = dom.random_element(rng)
            if self.apply(x * y) != self.apply(x) * self.apply(y):
                elem_w = (repr(x), repr(y))
                break
        checks.append(AxiomCheck("multiplicative_elements", elem_w is None, elem_w,
                                 f"{rounds} random element pairs, seed {seed + 1:#x}"))
        return AxiomReport(subject="homomorphism property", checks=tuple(checks))


def extend_to_gamma_hom(pi: PartialRepMap, domain: GammaAlgebra | None = None, *,
                        complement_idempotents: bool = True,
                        bound: int | None = None) -> GammaHom:
    """Extend a partial representation to a map on the whole basis (I, g).

    The image of (I, g) is pi(g) times the product of epsilon(r) over r in I
    times the product of (1 - epsilon(s)) over s outside I, evaluated in the
    ring of differences of the target scalars and then pulled back; a value
    that fails the pullback raises ExtensionMembershipError. Factors are
    multiplied in element order (the idempotents commute, so order does not
    matter; the commutation is itself checked by Epsilon.validate).

    complement_idempotents=False switches the second product to range over s
    in I instead. That reading makes every image zero, because the factor at
    the identity is 1 - 1; it exists so the failure is demonstrable rather
    than folklore.
    """
    if domain is None:
        if isinstance(pi.algebra, GammaAlgebra) and pi.algebra.gamma.group is pi.group:
            domain = pi.algebra
        else:
            domain = GammaAlgebra(Gamma(pi.group, bound), pi.algebra.scalars)
    if pi.image(0) != pi.algebra.one():
        raise ValueError("the identity must map to 1 before extending")

    S = pi.algebra.scalars
    dtarget = pi.algebra.with_scalars(delta_of(S))
    one_d = dtarget.one()
    eps = Epsilon(pi)
    im_d = [_lift(x) for x in pi.images]
    eps_d = [_lift(x) for x in eps.table]
    comp_d = [one_d - x for x in eps_d]

    n = pi.group.order
    images = []
    for el in domain.gamma.elements:
        acc = im_d[el.g]
        inside = indices_of_mask(el.mask)
        for r in inside:
            acc = acc * eps_d[r]
            if acc.is_zero:
                break
        if not acc.is_zero:
            if complement_idempotents:
                rest = (s for s in range(n) if not el.mask >> s & 1)
            else:
                rest = iter(inside)
            for s in rest:
                acc = acc * comp_d[s]
                if acc.is_zero:
                    break
        lowered, failures = _lower(acc, pi.algebra)
        if failures:
            raise ExtensionMembershipError(el, failures, repr(pi.algebra))
        images.append(lowered)
    return GammaHom(domain, pi.algebra, tuple(images))


# ---------------------------------------------------------------------------
# Span generation: the canonical images generate the whole semialgebra.

@dataclass(frozen=True)
class SpanReport:
    """Outcome of closing the canonical images under left multiplication.

    Every product is a 0/1 combination; `generated` counts the distinct
    supports reached and `rank` their linear rank over the rationals. The
    rank is certified modulo a large prime (a full-rank result mod p forces
    full rank over the rationals); only a short rank falls back to exact
    fraction elimination.
    """

    gamma_size: int
    generated: int
    rank: int
    complete: bool
    method: str
    products: int


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    if not rows:
        return 0
    cols = len(rows[0])
    rank = 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        base = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] * inv % p
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], base)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _rank_exact(rows: list[list[Fraction]]) -> int:
    if not rows:
        return 0
    cols = len(rows[0])
    rank = 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        base = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] / base[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], base)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def span_generation(algebra: GammaAlgebra) -> SpanReport:
    """Close {lambda_p(g)} under left multiplication and measure the span.

    The closure stays inside the family of sums over all supersets of a fixed
    subset, so coefficients remain 0/1 and distinct supports identify distinct
    products; reaching rank equal to the basis size shows any homomorphism is
    pinned down by its values on the canonical images.
    """
    lam = lambda_p(algebra)
    S = algebra.scalars
    gens = lam.images
    seen: dict[frozenset[int], AlgebraElement] = {}
    queue: deque[AlgebraElement] = deque()
    products = 0

    def admit(el: AlgebraElement) -> None:
        key = frozenset(el.coeffs)
        if not key or key in seen:
            return
        for c in el.coeffs.values():
            if not S.eq(c, S.one):
                raise AssertionError(
                    "left products of the canonical images left the 0/1 family")
        seen[key] = el
        queue.append(el)

    for g in gens:
        admit(g)
    while queue:
        cur = queue.popleft()
        for gen in gens:
            products += 1
            admit(gen * cur)

    supports = sorted(seen, key=lambda k: sorted(k))
    rows = [[1 if i in sup else 0 for i in range(algebra.size)] for sup in supports]
    rank = _rank_mod_p([row[:] for row in rows], _RANK_PRIME)
    method = "mod-p"
    if rank < algebra.size:
        # The modular rank only bounds from below; confirm exactly.
        rank = _rank_exact([[Fraction(v) for v in row] for row in rows])
        method = "exact"
    return SpanReport(gamma_size=algebra.size, generated=len(seen), rank=rank,
                      complete=rank == algebra.size, method=method, products=products)


# ---------------------------------------------------------------------------
# Factorization through the groupoid semialgebra.

@dataclass(frozen=True)
class FactorizationReport(AxiomReport):
    span: SpanReport | None = None


def verify_factorization(pi: PartialRepMap, pi_tilde: GammaHom, *,
                         span_limit: int = 6, pair_budget: int = 2500,
                         samples: int = 300, seed: int = DEFAULT_SEED
                         ) -> FactorizationReport:
    """Confirm that the extension is the factorization it claims to be.

    Checks that the extension is unital, multiplicative (exhaustively or
    sampled, per the homomorphism report), and composes with the canonical
    representation back to the original map; for groups small enough the span
    test pins uniqueness. The report is truthy exactly when everything passed.
    """
    if pi_tilde.target is not pi.algebra:
        raise BasisMismatchError(
            "the homomorphism's target is not the representation's algebra")
    G = pi.group
    checks = [AxiomCheck("unital", pi_tilde.is_unital())]
    hom = pi_tilde.multiplicative_report(pair_budget=pair_budget, samples=samples,
                                         seed=seed)
    checks.extend(hom.checks)

    lam = lambda_p(pi_tilde.domain)
    fact_w = next(((G.label(g),) for g in G.elements()
                   if pi_tilde.apply(lam.image(g)) != pi.image(g)), None)
    checks.append(AxiomCheck("factors_through_canonical", fact_w is None, fact_w))

    span = None
    if G.order <= span_limit:
        span = span_generation(pi_tilde.domain)
        checks.append(AxiomCheck(
            "uniqueness_span", span.complete,
            None if span.complete else (span.rank, span.gamma_size),
            note=f"rank {span.rank} of {span.gamma_size} via {span.method}"))
    return FactorizationReport(subject=f"factorization for {G.name}",
                               checks=tuple(checks), span=span)


def verify_kpar_relations(G: FiniteGroup, scalars: SemiringSpec = QNN, *,
                          span: bool | None = None,
                          bound: int | None = None) -> AxiomReport:
    """The canonical images satisfy the defining relations and span.

    Builds the groupoid semialgebra of G over the given scalars, checks the
    partial-representation relations for the canonical images exhaustively,
    and (by default for orders up to 6) confirms that their products span the
    whole semialgebra.
    """
    alg = GammaAlgebra(Gamma(G, bound), scalars)
    rep = verify_partial_rep(lambda_p(alg))
    checks = list(rep.checks)
    run_span = G.order <= 6 if span is None else span
    if run_span:
        sr = span_generation(alg)
        checks.append(AxiomCheck(
            "span_generation", sr.complete,
            None if sr.complete else (sr.rank, sr.gamma_size),
            note=f"rank {sr.rank} of {sr.gamma_size} via {sr.method}"))
    return AxiomReport(subject=f"canonical relations for {G.name} over {scalars.name}",
                       checks=tuple(checks))


# ---------------------------------------------------------------------------
# Stock representations.

def regular_representation(G: FiniteGroup, scalars: SemiringSpec) -> PartialRepMap:
    """The left regular representation as permutation matrices over K.

    The target is the matrix algebra over the group algebra of the trivial
    group, so entries are plain scalars in disguise and all the matrix
    machinery applies unchanged. Global representations are partial
    representations, so this is a stock input for the extension.
    """
    trivial = make_group("cyclic:1")
    entries = GroupAlgebra(trivial, scalars)
    target = MatrixAlgebra(entries, G.order)
    unit = entries.basis_element(0)
    zero = entries.zero()
    images = []
    for g in G.elements():
        rows = tuple(tuple(unit if G.mul(g, c) == r else zero
                           for c in range(G.order))
                     for r in range(G.order))
        images.append(MatrixElement(target, rows))
    return PartialRepMap(G, target, tuple(images))

"""Block structure of the groupoid semialgebra.

The unit graph splits into connected components; a component with m vertices
and isotropy H spans a subalgebra isomorphic to the m x m matrix semialgebra
over KH. Grouping components by (conjugacy class of isotropy, m) gives the
block table

    KGamma(G) = direct sum over classes [H] and m of c_m([H]) copies of
    M_m(KH),

with the dimension audit sum of c * m^2 * |H| equal to the basis size
sum over subsets I containing e of |I|.

Multiplicities are indexed by conjugacy classes because the isotropy groups
of the vertices of one component are only conjugation-equivalent; attributing
a component to a single subgroup is not well-defined. The exhaustive
enumeration is authoritative. The binomial recursion implemented alongside is
diagnostic only: the report carries a side-by-side diff, and equality is
reported rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .group import (
    FiniteGroup,
    Subgroup,
    _check_bound,
    conjugacy_classes_of_subgroups,
    generating_set,
    indices_of_mask,
    stabilizer_of_subset,
    subgroups,
)
from .groupoid import (
    ComponentIsomorphism,
    ComponentReport,
    Gamma,
    component_normal_form,
    connected_components,
)
from .semialgebra import (
    MatrixAlgebra,
    StandardAlgebra,
    matrix_algebra_for,
    standard_to_matrix,
)
from .semiring import QNN, SemiringSpec


def gamma_size_from_subsets(G: FiniteGroup) -> int:
    """Sum of |I| over subsets I containing the identity.

    This equals the number of pairs (I, g) but is computed without building
    any of them, so it serves as the independent side of the dimension audit.
    """
    n = G.order
    return sum(mask.bit_count() for mask in range(1, 1 << n, 2))


# ---------------------------------------------------------------------------
# Components at the level of unit masks (no groupoid construction needed).

def _mask_components(G: FiniteGroup) -> list[tuple[int, ...]]:
    parent: dict[int, int] = {m: m for m in range(1, 1 << G.order, 2)}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for mask in parent:
        for i in indices_of_mask(mask):
            other = G.left_translate(G.inverse(i), mask)
            ra, rb = find(mask), find(other)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for mask in parent:
        groups.setdefault(find(mask), []).append(mask)
    return [tuple(sorted(groups[root])) for root in sorted(groups)]


def _class_lookup(classes: list[list[Subgroup]]) -> tuple[dict[int, int], dict[int, Subgroup]]:
    rep_of = {H.mask: cls[0].mask for cls in classes for H in cls}
    rep_sub = {cls[0].mask: cls[0] for cls in classes}
    return rep_of, rep_sub


def multiplicity_enumeration(G: FiniteGroup,
                             bound: int | None = None) -> dict[tuple[int, int], int]:
    """Count components per (conjugacy class of isotropy, vertex count).

    Keys are (mask of the class representative, m); this is the authoritative
    multiplicity table.
    """
    _check_bound(G, bound, "multiplicity enumeration")
    classes = conjugacy_classes_of_subgroups(G, bound)
    rep_of, _ = _class_lookup(classes)
    counts: dict[tuple[int, int], int] = {}
    for vertices in _mask_components(G):
        base = vertices[0]
        iso = stabilizer_of_subset(G, base)
        m = len(vertices)
        if m * iso.order != base.bit_count():
            raise AssertionError(
                f"component at {G.subset_repr(base)}: {m} vertices with isotropy "
                f"order {iso.order} cannot tile a subset of size {base.bit_count()}")
        key = (rep_of[iso.mask], m)
        counts[key] = counts.get(key, 0) + 1
    return counts


def stabilizer_census(G: FiniteGroup,
                      bound: int | None = None) -> dict[tuple[int, int], int]:
    """Count subsets I containing e by (exact stabilizer mask, |I| / |S(I)|).

    Every I is a union of right cosets of its stabilizer, so the quotient is
    integral; the census feeds both counting identities below.
    """
    _check_bound(G, bound, "stabilizer census")
    census: dict[tuple[int, int], int] = {}
    for mask in range(1, 1 << G.order, 2):
        stab = stabilizer_of_subset(G, mask)
        m, rem = divmod(mask.bit_count(), stab.order)
        if rem:
            raise AssertionError(
                f"{G.subset_repr(mask)} is not a union of cosets of its stabilizer")
        key = (stab.mask, m)
        census[key] = census.get(key, 0) + 1
    return census


def vertex_count_identity(G: FiniteGroup,
                          bound: int | None = None) -> tuple[bool, tuple | None]:
    """c_m([H]) * m must equal the number of census subsets across the class.

    Each component contributes m vertices, and every subset with conjugate
    stabilizer and matching size is a vertex of exactly one such component.
    """
    counts = multiplicity_enumeration(G, bound)
    census = stabilizer_census(G, bound)
    classes = conjugacy_classes_of_subgroups(G, bound)
    rep_of, _ = _class_lookup(classes)
    by_class: dict[tuple[int, int], int] = {}
    for (mask, m), cnt in census.items():
        key = (rep_of[mask], m)
        by_class[key] = by_class.get(key, 0) + cnt
    for key in sorted(counts.keys() | by_class.keys()):
        lhs = counts.get(key, 0) * key[1]
        rhs = by_class.get(key, 0)
        if lhs != rhs:
            return False, (G.subset_repr(key[0]), key[1], lhs, rhs)
    return True, None


# ---------------------------------------------------------------------------
# The recursion and its dissenting opinions.

def multiplicity_recursion(G: FiniteGroup,
                           bound: int | None = None) -> dict[tuple[int, int], Fraction]:
    """Multiplicities from the binomial recursion; diagnostic, not trusted.

    Subsets containing e that are unions of m right H-cosets number
    binom((G:H)-1, m-1); removing those whose exact stabilizer is larger
    leaves N(H, m), computed top-down from the full group:

        N(H, m) = binom((G:H)-1, m-1)
                  - sum over H < B <= G with (B:H) | m of N(B, m / (B:H))

    and the class multiplicity is |class| * N(rep, m) / m as an exact
    fraction, left unreduced to integers so a wrong reading shows up as a
    non-integral value instead of a crash.
    """
    _check_bound(G, bound, "multiplicity recursion")
    subs = subgroups(G, bound)
    n_table: dict[tuple[int, int], int] = {}
    for H in sorted(subs, key=lambda s: -s.order):
        index = G.order // H.order
        for m in range(1, index + 1):
            total = comb(index - 1, m - 1)
            for B in subs:
                if B.order <= H.order or (H.mask & B.mask) != H.mask:
                    continue
                step = B.order // H.order
                if m % step == 0:
                    total -= n_table[(B.mask, m // step)]
            n_table[(H.mask, m)] = total

    classes = conjugacy_classes_of_subgroups(G, bound)
    out: dict[tuple[int, int], Fraction] = {}
    for cls in classes:
        rep = cls[0]
        index = G.order // rep.order
        for m in range(1, index + 1):
            value = Fraction(len(cls) * n_table[(rep.mask, m)], m)
            if value:
                out[(rep.mask, m)] = value
    return out


def coset_count_identity(G: FiniteGroup,
                         bound: int | None = None) -> tuple[bool, tuple | None]:
    """Check the partition behind the recursion against the census.

    For every subgroup H and every m, the subsets containing e that are
    unions of m right H-cosets split by exact stabilizer B >= H into census
    classes of size N(B, m/(B:H)); their total must be binom((G:H)-1, m-1).
    """
    census = stabilizer_census(G, bound)
    subs = subgroups(G, bound)
    for H in subs:
        index = G.order // H.order
        for m in range(1, index + 1):
            lhs = 0
            for B in subs:
                if (H.mask & B.mask) != H.mask:
                    continue
                step = B.order // H.order
                if m % step == 0:
                    lhs += census.get((B.mask, m // step), 0)
            rhs = comb(index - 1, m - 1)
            if lhs != rhs:
                return False, (G.subset_repr(H.mask), m, lhs, rhs)
    return True, None


def recursion_diff(G: FiniteGroup, bound: int | None = None) -> list[dict]:
    """Side-by-side rows comparing enumeration and recursion multiplicities."""
    enum = multiplicity_enumeration(G, bound)
    rec = multiplicity_recursion(G, bound)
    rows = []
    for mask, m in sorted(enum.keys() | rec.keys(),
                          key=lambda k: (k[0].bit_count(), k[1], k[0])):
        e = enum.get((mask, m), 0)
        r = rec.get((mask, m), Fraction(0))
        rows.append({
            "H_order": mask.bit_count(),
            "H_gens": generating_set(Subgroup(G, mask)),
            "m": m,
            "enumeration": e,
            "recursion": int(r) if r.denominator == 1 else str(r),
            "equal": r == e,
        })
    return rows


# ---------------------------------------------------------------------------
# Per-component matrix isomorphisms.

@dataclass(frozen=True)
class ComponentMatrixIso:
    """A verified isomorphism from one component onto a matrix semialgebra.

    Arrows map through the component's normal form to triples and on to
    matrix units: an arrow with normal form (h, i, j) becomes h times the
    (i, j) matrix unit.
    """

    component: ComponentReport
    normal_form: ComponentIsomorphism
    standard: StandardAlgebra
    matrix: MatrixAlgebra

    def arrow_to_matrix(self, el):
        s = self.normal_form.to_standard(el)
        return standard_to_matrix(self.standard.basis_element(s), self.matrix)


def _verify_component_iso(iso: ComponentMatrixIso) -> None:
    nf = iso.normal_form
    comp = iso.component
    gamma = comp.gamma
    arrows = nf.arrows()
    if len(arrows) != iso.standard.size:
        raise AssertionError(
            f"component at {gamma.group.subset_repr(comp.base_vertex)}: "
            f"{len(arrows)} arrows vs {iso.standard.size} triples")
    images = [nf.to_standard(x) for x in arrows]
    if len(set(images)) != len(arrows):
        raise AssertionError("normal form is not injective on arrows")
    for x, s in zip(arrows, images):
        if nf.from_standard(s) != x:
            raise AssertionError(f"normal form round trip fails at {gamma.describe(x)}")
    mats = {x: iso.arrow_to_matrix(x) for x in arrows}
    zero = iso.matrix.zero()
    for x in arrows:
        for y in arrows:
            p = gamma.product(x, y)
            expected = zero if p is None else mats[p]
            if mats[x] * mats[y] != expected:
                raise AssertionError(
                    f"matrix images fail multiplicativity at "
                    f"{gamma.describe(x)} * {gamma.describe(y)}")


def component_to_matrix_iso(comp: ComponentReport,
                            scalars: SemiringSpec = QNN,
                            verify: bool = True) -> ComponentMatrixIso:
    """The isomorphism of one component onto M_m(KH), verified by default.

    Verification checks bijectivity on arrows and multiplicativity of the
    matrix images over all arrow pairs of the component, with genuine matrix
    products on the right-hand side.
    """
    nf = component_normal_form(comp)
    standard = StandardAlgebra(nf.standard, scalars)
    iso = ComponentMatrixIso(comp, nf, standard, matrix_algebra_for(standard))
    if verify:
        _verify_component_iso(iso)
    return iso


def cross_component_orthogonality(gamma: Gamma) -> tuple[bool, tuple | None]:
    """No product is defined across two different components."""
    comp_of: dict[int, int] = {}
    for idx, comp in enumerate(connected_components(gamma)):
        for v in comp.vertices:
            comp_of[v] = idx
    for x in gamma.elements:
        for y in gamma.elements:
            if comp_of[x.mask] != comp_of[y.mask] and gamma.product(x, y) is not None:
                return False, (gamma.describe(x), gamma.describe(y))
    return True, None


# ---------------------------------------------------------------------------
# The decomposition itself.

@dataclass(frozen=True)
class BlockDescriptor:
    """One block: c copies of the m x m matrix semialgebra over KH."""

    subgroup: Subgroup
    m: int
    c: int

    @property
    def H_order(self) -> int:
        return self.subgroup.order

    def H_gens(self) -> list[int]:
        return generating_set(self.subgroup)

    def to_json(self) -> dict:
        return {"H_order": self.H_order, "H_gens": self.H_gens(),
                "m": self.m, "c": self.c}


@dataclass(frozen=True)
class DecompositionSummary:
    group: str
    blocks: tuple[BlockDescriptor, ...]
    gamma_size: int
    audit_lhs: int
    audit_rhs: int
    scalars_name: str | None = None
    components_verified: int | None = None

    @property
    def audit_ok(self) -> bool:
        return self.audit_lhs == self.audit_rhs

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "gamma_size": self.gamma_size,
            "blocks": [b.to_json() for b in self.blocks],
            "audit": {"lhs": self.audit_lhs, "rhs": self.audit_rhs,
                      "ok": self.audit_ok},
        }


def decompose(G: FiniteGroup, scalars: SemiringSpec | None = None,
              bound: int | None = None) -> DecompositionSummary:
    """The block table of the groupoid semialgebra of G.

    Without scalars this is purely combinatorial and never builds the
    groupoid. With scalars, the groupoid is built and every component's
    matrix isomorphism is verified exhaustively over those scalars before the
    summary is returned.
    """
    _check_bound(G, bound, "decomposing")
    counts = multiplicity_enumeration(G, bound)
    _, rep_sub = _class_lookup(conjugacy_classes_of_subgroups(G, bound))
    verified = None
    if scalars is not None:
        comps = connected_components(Gamma(G, bound))
        for comp in comps:
            component_to_matrix_iso(comp, scalars, verify=True)
        verified = len(comps)
    blocks = tuple(
        BlockDescriptor(rep_sub[mask], m, counts[(mask, m)])
        for mask, m in sorted(counts,
                              key=lambda k: (k[0].bit_count(), k[1], k[0])))
    lhs = sum(b.c * b.m * b.m * b.H_order for b in blocks)
    rhs = gamma_size_from_subsets(G)
    return DecompositionSummary(
        group=G.name, blocks=blocks, gamma_size=rhs,
        audit_lhs=lhs, audit_rhs=rhs,
        scalars_name=None if scalars is None else scalars.name,
        components_verified=verified)


def dimension_audit(G: FiniteGroup, bound: int | None = None) -> tuple[int, int, bool]:
    """Both sides of the dimension identity and whether they agree."""
    summary = decompose(G, bound=bound)
    return summary.audit_lhs, summary.audit_rhs, summary.audit_ok


def decomposition_report(G: FiniteGroup, scalars: SemiringSpec | None = None,
                         bound: int | None = None) -> dict:
    """The full report: block table, audit, and the recursion diff."""
    summary = decompose(G, scalars, bound)
    doc = summary.to_json()
    doc["recursion_diff"] = recursion_diff(G, bound)
    return doc

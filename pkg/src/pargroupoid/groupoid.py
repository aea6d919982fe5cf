"""The groupoid of subset-element pairs attached to a finite group.

Elements are pairs (I, g) where I is a subset of G containing both the
identity and g^-1. The partial product (I, g) * (J, h) is defined exactly when
I = h*J and then equals (J, g*h); units are the pairs (I, e). Connectivity of
the unit graph, isotropy, and the normal form onto the standard groupoid of
triples (h, i, j) over the isotropy group are computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .group import (
    FiniteGroup,
    GroupOrderBoundError,
    Subgroup,
    DEFAULT_ORDER_BOUND,
    indices_of_mask,
    stabilizer_of_subset,
    subgroup_as_group,
)


@dataclass(frozen=True, order=True)
class GammaElement:
    """A pair (I, g): the subset mask I and the group element index g."""

    mask: int
    g: int


class Gamma:
    """All pairs (I, g) of a group, in canonical (mask, g) order."""

    def __init__(self, group: FiniteGroup, bound: int | None = None):
        limit = DEFAULT_ORDER_BOUND if bound is None else bound
        if group.order > limit:
            raise GroupOrderBoundError(
                f"building the groupoid walks all subsets; order {group.order} "
                f"exceeds the bound {limit}")
        self.group = group
        elements: list[GammaElement] = []
        n = group.order
        for mask in range(1, 1 << n, 2):
            gs = sorted(group.inverse(x) for x in indices_of_mask(mask))
            elements.extend(GammaElement(mask, g) for g in gs)
        self.elements = tuple(elements)
        self.index = {el: i for i, el in enumerate(elements)}
        self._index_mg = {(el.mask, el.g): i for i, el in enumerate(elements)}
        self.unit_indices = tuple(i for i, el in enumerate(elements) if el.g == 0)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Gamma({self.group.name}, size={self.size})"

    def element(self, mask: int, g: int) -> GammaElement:
        """The validated pair (I, g); raises when it is not in the groupoid."""
        el = GammaElement(mask, g)
        if el not in self.index:
            raise ValueError(
                f"({self.group.subset_repr(mask)}, {self.group.label(g)}) is not "
                "a groupoid element: need e and the inverse of g inside I")
        return el

    def is_unit(self, x: GammaElement) -> bool:
        return x.g == 0

    def product(self, x: GammaElement, y: GammaElement) -> GammaElement | None:
        """(I,g) * (J,h) = (J, g*h) when I = h*J; None when undefined."""
        if x.mask != self.group.left_translate(y.g, y.mask):
            return None
        return GammaElement(y.mask, self.group.mul(x.g, y.g))

    def product_index(self, i: int, j: int) -> int | None:
        x = self.elements[i]
        y = self.elements[j]
        if x.mask != self.group.left_translate(y.g, y.mask):
            return None
        return self._index_mg[(y.mask, self.group.mul(x.g, y.g))]

    def source(self, x: GammaElement) -> GammaElement:
        return GammaElement(x.mask, 0)

    def range_of(self, x: GammaElement) -> GammaElement:
        return GammaElement(self.group.left_translate(x.g, x.mask), 0)

    def inverse(self, x: GammaElement) -> GammaElement:
        return GammaElement(self.group.left_translate(x.g, x.mask),
                            self.group.inverse(x.g))

    def describe(self, x: GammaElement) -> str:
        return f"({self.group.subset_repr(x.mask)},{self.group.label(x.g)})"


def build_gamma(group: FiniteGroup, bound: int | None = None) -> Gamma:
    return Gamma(group, bound)


def gamma_product(gamma: Gamma, x: GammaElement, y: GammaElement) -> GammaElement | None:
    return gamma.product(x, y)


# ---------------------------------------------------------------------------
# Connectivity.

class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class ComponentReport:
    """One connected component of the unit graph.

    Vertices are the subset masks of the units, ascending; the base vertex is
    the least mask. chosen_arrows[i] is one arrow base -> vertices[i] (the one
    with the least group element), so chosen_arrows[0] is the unit at the base.
    """

    gamma: Gamma
    vertices: tuple[int, ...]
    isotropy: Subgroup
    chosen_arrows: tuple[GammaElement, ...]

    @property
    def base_vertex(self) -> int:
        return self.vertices[0]

    @property
    def m(self) -> int:
        return len(self.vertices)

    def vertex_number(self, mask: int) -> int:
        """1-based position of a vertex, matching standard-groupoid indices."""
        return self.vertices.index(mask) + 1


def connected_components(gamma: Gamma) -> list[ComponentReport]:
    """Components of the unit graph, sorted by base vertex mask.

    Each component's vertex count m must equal |base| / |isotropy|; this is
    asserted because every later structure computation leans on it.
    """
    G = gamma.group
    masks = [gamma.elements[i].mask for i in gamma.unit_indices]
    uf = _UnionFind(masks)
    for el in gamma.elements:
        uf.union(el.mask, G.left_translate(el.g, el.mask))
    groups: dict[int, list[int]] = {}
    for mask in masks:
        groups.setdefault(uf.find(mask), []).append(mask)
    reports = []
    for root in sorted(groups):
        vertices = tuple(sorted(groups[root]))
        base = vertices[0]
        isotropy = stabilizer_of_subset(G, base)
        if len(vertices) * isotropy.order != base.bit_count():
            raise AssertionError(
                f"component at {G.subset_repr(base)}: {len(vertices)} vertices "
                f"with isotropy order {isotropy.order} cannot tile a subset of "
                f"size {base.bit_count()}")
        arrows = []
        for v in vertices:
            g = next(g for g in G.elements() if G.left_translate(g, base) == v)
            arrows.append(GammaElement(base, g))
        reports.append(ComponentReport(gamma, vertices, isotropy, tuple(arrows)))
    return reports


# ---------------------------------------------------------------------------
# The standard groupoid of triples over a group.

@dataclass(frozen=True, order=True)
class StandardElement:
    """A triple (h, i, j): group element h, range vertex i, source vertex j."""

    h: int
    i: int
    j: int


class StandardGroupoid:
    """Triples (h, i, j) with h in H and 1-based vertex indices i, j <= m."""

    def __init__(self, H: FiniteGroup, m: int):
        if m < 1:
            raise ValueError(f"need at least one vertex, got m={m}")
        self.H = H
        self.m = m
        self.elements = tuple(StandardElement(h, i, j)
                              for h in H.elements()
                              for i in range(1, m + 1)
                              for j in range(1, m + 1))

    @property
    def size(self) -> int:
        return len(self.elements)

    def product(self, a: StandardElement, b: StandardElement) -> StandardElement | None:
        """(g,i,j) * (h,j,k) = (g*h, i, k); None when the middle indices differ."""
        if a.j != b.i:
            return None
        return StandardElement(self.H.mul(a.h, b.h), a.i, b.j)

    def units(self) -> list[StandardElement]:
        return [StandardElement(0, i, i) for i in range(1, self.m + 1)]


def standard_product(groupoid: StandardGroupoid, a: StandardElement,
                     b: StandardElement) -> StandardElement | None:
    return groupoid.product(a, b)


@dataclass(frozen=True)
class ComponentIsomorphism:
    """Normal form of a component onto the standard groupoid of its isotropy.

    The isotropy subgroup is re-indexed as a standalone group H; iso_elements
    maps H's indices back to ambient group indices. An arrow x_j -> x_i with
    group element g maps to the triple (g_i^-1 * g * g_j, i, j) where the g_i
    are the chosen arrows' group elements.
    """

    component: ComponentReport
    standard: StandardGroupoid
    iso_elements: tuple[int, ...]

    def to_standard(self, x: GammaElement) -> StandardElement:
        comp = self.component
        G = comp.gamma.group
        j = comp.vertex_number(x.mask)
        i = comp.vertex_number(G.left_translate(x.g, x.mask))
        gi = comp.chosen_arrows[i - 1].g
        gj = comp.chosen_arrows[j - 1].g
        h_ambient = G.mul(G.inverse(gi), G.mul(x.g, gj))
        return StandardElement(self._to_iso[h_ambient], i, j)

    def from_standard(self, s: StandardElement) -> GammaElement:
        comp = self.component
        G = comp.gamma.group
        gi = comp.chosen_arrows[s.i - 1].g
        gj = comp.chosen_arrows[s.j - 1].g
        g = G.mul(gi, G.mul(self.iso_elements[s.h], G.inverse(gj)))
        return GammaElement(comp.vertices[s.j - 1], g)

    @cached_property
    def _to_iso(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.iso_elements)}

    def arrows(self) -> list[GammaElement]:
        """All arrows of the component, in the gamma's canonical order."""
        comp = self.component
        vset = set(comp.vertices)
        return [el for el in comp.gamma.elements if el.mask in vset]


def component_normal_form(comp: ComponentReport) -> ComponentIsomorphism:
    H, elems = subgroup_as_group(comp.gamma.group, comp.isotropy)
    return ComponentIsomorphism(comp, StandardGroupoid(H, comp.m), elems)

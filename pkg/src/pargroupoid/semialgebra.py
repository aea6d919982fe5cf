"""Semialgebras over a scalar system: free semimodules with convolution.

A SparseAlgebra is a free semimodule on a finite basis together with a partial
product on basis indices; multiplication of elements is convolution, with
undefined basis products contributing nothing. Instances cover the groupoid of
subset-element pairs, a group, and the standard groupoid of triples. Matrix
semialgebras over a group semialgebra are kept as genuine grids so that the
triple-basis / matrix-unit comparison is a real check rather than a tautology.

Every algebra is generic over its SemiringSpec; with_scalars produces the same
structure over different scalars (in particular over a ring of differences),
and the to/from difference helpers move elements across that bridge.
"""

from __future__ import annotations

from random import Random
from typing import Any, Callable, Iterable, Mapping

from .group import FiniteGroup
from .groupoid import Gamma, GammaElement, StandardElement, StandardGroupoid
from .semiring import (
    DeltaElement,
    SemiringPropertyError,
    SemiringSpec,
    delta_canonical,
    delta_of,
)


class BasisMismatchError(ValueError):
    """Arguments live in different algebras (or over different scalars)."""


class AlgebraElement:
    """A finitely supported scalar combination of basis indices.

    Equality is semantic: coefficients are compared with the scalar system's
    own equality over the union of supports, so unreduced difference pairs
    compare correctly. Elements of different algebra instances never mix.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "SparseAlgebra", coeffs: dict[int, Any]):
        is_zero = algebra.scalars.is_zero
        self.algebra = algebra
        self.coeffs = {i: c for i, c in coeffs.items() if not is_zero(c)}

    def _check_same(self, other: "AlgebraElement") -> None:
        if self.algebra is not other.algebra:
            raise BasisMismatchError(
                f"cannot combine elements of {self.algebra!r} and {other.algebra!r}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        add = self.algebra.scalars.add
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = add(out[i], c) if i in out else c
        return AlgebraElement(self.algebra, out)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        alg = self.algebra
        prod = alg.basis_product
        sadd = alg.scalars.add
        smul = alg.scalars.mul
        out: dict[int, Any] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = prod(i, j)
                if k is None:
                    continue
                c = smul(a, b)
                out[k] = sadd(out[k], c) if k in out else c
        return AlgebraElement(alg, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_same(other)
        neg = self.algebra.scalars.neg
        if neg is None:
            raise SemiringPropertyError(
                f"{self.algebra.scalars.name} has no negation; subtraction "
                "needs the ring of differences")
        add = self.algebra.scalars.add
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            nc = neg(c)
            out[i] = add(out[i], nc) if i in out else nc
        return AlgebraElement(self.algebra, out)

    def scale(self, c) -> "AlgebraElement":
        mul = self.algebra.scalars.mul
        return AlgebraElement(self.algebra, {i: mul(c, v) for i, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_same(other)
        S = self.algebra.scalars
        for i in self.coeffs.keys() | other.coeffs.keys():
            if not S.eq(self.coeffs.get(i, S.zero), other.coeffs.get(i, S.zero)):
                return False
        return True

    __hash__ = None  # semantic equality over unreduced scalars

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def terms(self) -> list[tuple[Any, Any]]:
        """(basis object, coefficient) pairs in canonical basis order."""
        basis = self.algebra.basis
        return [(basis[i], self.coeffs[i]) for i in sorted(self.coeffs)]

    def to_json(self) -> dict:
        alg = self.algebra
        fmt = alg.scalars.fmt
        return {"basis": alg.kind,
                "terms": [{"b": alg.basis_key(i), "c": fmt(self.coeffs[i])}
                          for i in sorted(self.coeffs)]}

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        alg = self.algebra
        fmt = alg.scalars.fmt
        parts = [f"{fmt(self.coeffs[i])}*{alg.describe_basis(i)}"
                 for i in sorted(self.coeffs)]
        return " + ".join(parts)


class SparseAlgebra:
    """Shared machinery: basis indexing, element builders, scalar changes."""

    kind: str = "abstract"

    def __init__(self, scalars: SemiringSpec, basis: tuple, unit_indices: tuple[int, ...]):
        self.scalars = scalars
        self.basis = basis
        self.index = {b: i for i, b in enumerate(basis)}
        self.unit_indices = unit_indices
        self._variants: dict[SemiringSpec, SparseAlgebra] = {scalars: self}

    @property
    def size(self) -> int:
        return len(self.basis)

    def basis_product(self, i: int, j: int) -> int | None:
        raise NotImplementedError

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def one(self) -> AlgebraElement:
        one = self.scalars.one
        return AlgebraElement(self, {i: one for i in self.unit_indices})

    def basis_element(self, b, coeff=None) -> AlgebraElement:
        if b not in self.index:
            raise ValueError(f"{b!r} is not a basis element of {self!r}")
        return AlgebraElement(self, {self.index[b]: self.scalars.one if coeff is None else coeff})

    def element(self, pairs: Mapping | Iterable[tuple[Any, Any]]) -> AlgebraElement:
        """Build an element from (basis object, coefficient) pairs."""
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        add = self.scalars.add
        out: dict[int, Any] = {}
        for b, c in items:
            if b not in self.index:
                raise ValueError(f"{b!r} is not a basis element of {self!r}")
            i = self.index[b]
            out[i] = add(out[i], c) if i in out else c
        return AlgebraElement(self, out)

    def random_element(self, rng: Random, terms: int = 3) -> AlgebraElement:
        S = self.scalars
        k = min(terms, self.size)
        picks = rng.sample(range(self.size), k)
        if S.sample is not None:
            draw: Callable[[], Any] = lambda: S.sample(rng)
        else:
            draw = lambda: rng.choice(S.carrier)
        return AlgebraElement(self, {i: draw() for i in picks})

    def with_scalars(self, scalars: SemiringSpec) -> "SparseAlgebra":
        """The same algebra over different scalars, cached per scalar system.

        The cache is shared across the whole family, so hopping base -> delta
        -> base lands on the original instance and element equality keeps
        working.
        """
        if scalars not in self._variants:
            variant = self._rebuild(scalars)
            variant._variants = self._variants
            self._variants[scalars] = variant
        return self._variants[scalars]

    def _rebuild(self, scalars: SemiringSpec) -> "SparseAlgebra":
        raise NotImplementedError

    def basis_key(self, i: int):
        raise NotImplementedError

    def basis_from_key(self, key):
        raise NotImplementedError

    def describe_basis(self, i: int) -> str:
        return repr(self.basis[i])


class GammaAlgebra(SparseAlgebra):
    """The semialgebra of the groupoid of subset-element pairs."""

    kind = "gamma"

    def __init__(self, gamma: Gamma, scalars: SemiringSpec):
        super().__init__(scalars, gamma.elements, gamma.unit_indices)
        self.gamma = gamma
        self._rows: list[dict[int, int]] | None = None

    def __repr__(self) -> str:
        return f"GammaAlgebra({self.gamma.group.name}, {self.scalars.name})"

    def _rebuild(self, scalars: SemiringSpec) -> "GammaAlgebra":
        other = GammaAlgebra(self.gamma, scalars)
        other._rows = self._rows
        return other

    def _build_rows(self) -> list[dict[int, int]]:
        # One sparse row per left factor. Defined products are rare: for a
        # fixed right factor y = (J, h) the left masks are pinned to h*J, so
        # the total is sum over y of |h*J|, far below size^2.
        gamma = self.gamma
        G = gamma.group
        rows: list[dict[int, int]] = [{} for _ in range(self.size)]
        by_mask: dict[int, list[int]] = {}
        for i, el in enumerate(gamma.elements):
            by_mask.setdefault(el.mask, []).append(i)
        for j, y in enumerate(gamma.elements):
            left_mask = G.left_translate(y.g, y.mask)
            for i in by_mask[left_mask]:
                x = gamma.elements[i]
                rows[i][j] = gamma._index_mg[(y.mask, G.mul(x.g, y.g))]
        return rows

    def basis_product(self, i: int, j: int) -> int | None:
        if self._rows is None:
            self._rows = self._build_rows()
        return self._rows[i].get(j)

    def basis_key(self, i: int):
        el = self.basis[i]
        return [[k for k in range(self.gamma.group.order) if el.mask >> k & 1], el.g]

    def basis_from_key(self, key) -> GammaElement:
        indices, g = key
        mask = 0
        for k in indices:
            mask |= 1 << int(k)
        return self.gamma.element(mask, int(g))

    def describe_basis(self, i: int) -> str:
        return self.gamma.describe(self.basis[i])


class GroupAlgebra(SparseAlgebra):
    """The semialgebra of a group; every basis product is defined."""

    kind = "group"

    def __init__(self, group: FiniteGroup, scalars: SemiringSpec):
        super().__init__(scalars, tuple(group.elements()), (0,))
        self.group = group

    def __repr__(self) -> str:
        return f"GroupAlgebra({self.group.name}, {self.scalars.name})"

    def _rebuild(self, scalars: SemiringSpec) -> "GroupAlgebra":
        return GroupAlgebra(self.group, scalars)

    def basis_product(self, i: int, j: int) -> int:
        return self.group.mul(i, j)

    def basis_key(self, i: int):
        return i

    def basis_from_key(self, key) -> int:
        g = int(key)
        if not 0 <= g < self.group.order:
            raise ValueError(f"group element index {g} out of range")
        return g

    def describe_basis(self, i: int) -> str:
        return self.group.label(i)


class StandardAlgebra(SparseAlgebra):
    """The semialgebra of the standard groupoid of triples (h, i, j).

    Basis order is h-major, then range index, then source index, so the index
    arithmetic in basis_product is closed-form.
    """

    kind = "matrix"

    def __init__(self, groupoid: StandardGroupoid, scalars: SemiringSpec):
        m = groupoid.m
        units = tuple((0 * m + (i - 1)) * m + (i - 1) for i in range(1, m + 1))
        super().__init__(scalars, groupoid.elements, units)
        self.groupoid = groupoid

    def __repr__(self) -> str:
        return (f"StandardAlgebra({self.groupoid.H.name}, "
                f"m={self.groupoid.m}, {self.scalars.name})")

    def _rebuild(self, scalars: SemiringSpec) -> "StandardAlgebra":
        return StandardAlgebra(self.groupoid, scalars)

    def basis_product(self, i: int, j: int) -> int | None:
        m = self.groupoid.m
        ha, rem = divmod(i, m * m)
        ia, ja = divmod(rem, m)
        hb, rem = divmod(j, m * m)
        ib, jb = divmod(rem, m)
        if ja != ib:
            return None
        return (self.groupoid.H.mul(ha, hb) * m + ia) * m + jb

    def basis_key(self, i: int):
        el = self.basis[i]
        return [el.h, el.i, el.j]

    def basis_from_key(self, key) -> StandardElement:
        h, i, j = (int(v) for v in key)
        el = StandardElement(h, i, j)
        if el not in self.index:
            raise ValueError(f"({h},{i},{j}) is not a triple of {self!r}")
        return el

    def describe_basis(self, i: int) -> str:
        el = self.basis[i]
        return f"({self.groupoid.H.label(el.h)},{el.i},{el.j})"


# ---------------------------------------------------------------------------
# Matrix semialgebras, kept as genuine grids of group-algebra entries.

class MatrixAlgebra:
    """m x m matrices over a group semialgebra, multiplied the usual way."""

    kind = "matrix"

    def __init__(self, entries: GroupAlgebra, m: int):
        if m < 1:
            raise ValueError(f"need at least one row, got m={m}")
        self.entries = entries
        self.m = m
        self._variants: dict[SemiringSpec, MatrixAlgebra] = {entries.scalars: self}

    @property
    def scalars(self) -> SemiringSpec:
        return self.entries.scalars

    def __repr__(self) -> str:
        return f"MatrixAlgebra({self.entries.group.name}, m={self.m}, {self.scalars.name})"

    def with_scalars(self, scalars: SemiringSpec) -> "MatrixAlgebra":
        if scalars not in self._variants:
            variant = MatrixAlgebra(self.entries.with_scalars(scalars), self.m)
            variant._variants = self._variants
            self._variants[scalars] = variant
        return self._variants[scalars]

    def zero(self) -> "MatrixElement":
        z = self.entries.zero()
        return MatrixElement(self, tuple(tuple(z for _ in range(self.m))
                                         for _ in range(self.m)))

    def one(self) -> "MatrixElement":
        z = self.entries.zero()
        e = self.entries.basis_element(0)
        return MatrixElement(self, tuple(tuple(e if r == c else z for c in range(self.m))
                                         for r in range(self.m)))

    def matrix_unit(self, i: int, j: int, entry: AlgebraElement | None = None) -> "MatrixElement":
        """The matrix with one nonzero entry at 1-based position (i, j)."""
        if not (1 <= i <= self.m and 1 <= j <= self.m):
            raise ValueError(f"matrix position ({i},{j}) out of range for m={self.m}")
        if entry is None:
            entry = self.entries.basis_element(0)
        if entry.algebra is not self.entries:
            raise BasisMismatchError("entry belongs to a different group algebra")
        z = self.entries.zero()
        return MatrixElement(self, tuple(
            tuple(entry if (r, c) == (i - 1, j - 1) else z for c in range(self.m))
            for r in range(self.m)))

    def element(self, rows: Iterable[Iterable[AlgebraElement]]) -> "MatrixElement":
        grid = tuple(tuple(row) for row in rows)
        if len(grid) != self.m or any(len(row) != self.m for row in grid):
            raise ValueError(f"need an {self.m}x{self.m} grid")
        for row in grid:
            for entry in row:
                if entry.algebra is not self.entries:
                    raise BasisMismatchError("entry belongs to a different group algebra")
        return MatrixElement(self, grid)

    def random_element(self, rng: Random, terms: int = 2) -> "MatrixElement":
        return MatrixElement(self, tuple(
            tuple(self.entries.random_element(rng, terms) for _ in range(self.m))
            for _ in range(self.m)))


class MatrixElement:
    """A grid of group-algebra elements with matrix addition and product."""

    __slots__ = ("algebra", "rows")

    def __init__(self, algebra: MatrixAlgebra, rows: tuple[tuple[AlgebraElement, ...], ...]):
        self.algebra = algebra
        self.rows = rows

    def _check_same(self, other: "MatrixElement") -> None:
        if self.algebra is not other.algebra:
            raise BasisMismatchError(
                f"cannot combine elements of {self.algebra!r} and {other.algebra!r}")

    def entry(self, i: int, j: int) -> AlgebraElement:
        """The entry at 1-based position (i, j)."""
        return self.rows[i - 1][j - 1]

    def __add__(self, other: "MatrixElement") -> "MatrixElement":
        self._check_same(other)
        return MatrixElement(self.algebra, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)))

    def __sub__(self, other: "MatrixElement") -> "MatrixElement":
        self._check_same(other)
        return MatrixElement(self.algebra, tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)))

    def __mul__(self, other: "MatrixElement") -> "MatrixElement":
        self._check_same(other)
        m = self.algebra.m
        zero = self.algebra.entries.zero()
        rows = []
        for r in range(m):
            # skipping zero entries keeps products of near-empty matrices
            # (matrix units, permutation matrices) cheap
            row = []
            for c in range(m):
                acc = None
                for k in range(m):
                    a = self.rows[r][k]
                    if not a.coeffs:
                        continue
                    b = other.rows[k][c]
                    if not b.coeffs:
                        continue
                    term = a * b
                    acc = term if acc is None else acc + term
                row.append(zero if acc is None else acc)
            rows.append(tuple(row))
        return MatrixElement(self.algebra, tuple(rows))

    def scale(self, c) -> "MatrixElement":
        return MatrixElement(self.algebra, tuple(
            tuple(entry.scale(c) for entry in row) for row in self.rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixElement):
            return NotImplemented
        self._check_same(other)
        return all(a == b for ra, rb in zip(self.rows, other.rows)
                   for a, b in zip(ra, rb))

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return all(entry.is_zero for row in self.rows for entry in row)

    def to_json(self) -> dict:
        fmt = self.algebra.scalars.fmt
        terms = []
        for r, row in enumerate(self.rows, start=1):
            for c, entry in enumerate(row, start=1):
                for h in sorted(entry.coeffs):
                    terms.append({"b": [h, r, c], "c": fmt(entry.coeffs[h])})
        terms.sort(key=lambda t: (t["b"][0], t["b"][1], t["b"][2]))
        return {"basis": "matrix", "terms": terms}

    def __repr__(self) -> str:
        body = "; ".join(" ".join(f"[{entry!r}]" for entry in row) for row in self.rows)
        return f"<{body}>"


# ---------------------------------------------------------------------------
# Convolution wrappers and units under their interface names.

def gamma_algebra_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Convolution in the groupoid semialgebra; undefined products drop out."""
    if not isinstance(x.algebra, GammaAlgebra):
        raise BasisMismatchError(f"expected groupoid-basis elements, got {x.algebra!r}")
    return x * y


def identity_element(algebra: SparseAlgebra) -> AlgebraElement:
    """The sum of all units with coefficient one; the two-sided identity."""
    return algebra.one()


# ---------------------------------------------------------------------------
# The triple-basis / matrix-unit comparison.

def standard_to_matrix(x: AlgebraElement, target: MatrixAlgebra) -> MatrixElement:
    """Send the triple (h, i, j) to h times the (i, j) matrix unit, linearly."""
    alg = x.algebra
    if not isinstance(alg, StandardAlgebra):
        raise BasisMismatchError(f"expected a triple-basis element, got {alg!r}")
    if target.m != alg.groupoid.m or target.entries.group is not alg.groupoid.H:
        raise BasisMismatchError(f"{target!r} does not match {alg!r}")
    grids: list[list[dict[int, Any]]] = [[{} for _ in range(target.m)]
                                         for _ in range(target.m)]
    add = target.scalars.add
    for i, c in x.coeffs.items():
        el = alg.basis[i]
        cell = grids[el.i - 1][el.j - 1]
        cell[el.h] = add(cell[el.h], c) if el.h in cell else c
    return MatrixElement(target, tuple(
        tuple(AlgebraElement(target.entries, cell) for cell in row) for row in grids))


def tensor_phi(A: Iterable[Iterable[Any]], w: AlgebraElement,
               target: MatrixAlgebra) -> MatrixElement:
    """The pure tensor of a scalar matrix with a group-algebra element.

    The (i, j) entry of the result is A[i][j] * w. Together with
    standard_to_matrix (its linear extension along the basis of pure tensors
    e_ij tensor h) this realizes the matrix algebra as a tensor product of
    the scalar matrix algebra with the group algebra.
    """
    if w.algebra is not target.entries:
        raise BasisMismatchError("entry element belongs to a different group algebra")
    grid = tuple(tuple(row) for row in A)
    if len(grid) != target.m or any(len(row) != target.m for row in grid):
        raise ValueError(f"need an {target.m}x{target.m} scalar grid")
    return MatrixElement(target, tuple(
        tuple(w.scale(a) for a in row) for row in grid))


def tensor_varphi(X: MatrixElement, target: StandardAlgebra) -> AlgebraElement:
    """Expand a matrix into the triple basis: entry h at (i, j) -> (h, i, j)."""
    alg = X.algebra
    if target.groupoid.m != alg.m or target.groupoid.H is not alg.entries.group:
        raise BasisMismatchError(f"{target!r} does not match {alg!r}")
    pairs = []
    for r, row in enumerate(X.rows, start=1):
        for c, entry in enumerate(row, start=1):
            for h, coeff in entry.coeffs.items():
                pairs.append((StandardElement(h, r, c), coeff))
    return target.element(pairs)


def matrix_algebra_for(standard: StandardAlgebra) -> MatrixAlgebra:
    """The matrix algebra a triple-basis algebra compares against."""
    entries = GroupAlgebra(standard.groupoid.H, standard.scalars)
    return MatrixAlgebra(entries, standard.groupoid.m)


# ---------------------------------------------------------------------------
# Moving across the ring-of-differences bridge.
#
# An element over the ring of differences has two equivalent representations:
# coefficients that are difference pairs, or a pair of elements over the base
# scalars. delta_extension converts the first into the second; DeltaPair
# carries the arithmetic of the second.

class DeltaPair:
    """A formal difference pos - neg of two elements over the base scalars.

    Equality is the cross-sum comparison pos + other.neg == other.pos + neg;
    the product expands the difference of products the usual way.
    """

    __slots__ = ("pos", "neg")

    def __init__(self, pos: AlgebraElement, neg: AlgebraElement):
        if pos.algebra is not neg.algebra:
            raise BasisMismatchError("both halves of a pair must share an algebra")
        self.pos = pos
        self.neg = neg

    def __add__(self, other: "DeltaPair") -> "DeltaPair":
        return DeltaPair(self.pos + other.pos, self.neg + other.neg)

    def __mul__(self, other: "DeltaPair") -> "DeltaPair":
        return DeltaPair(self.pos * other.pos + self.neg * other.neg,
                         self.pos * other.neg + self.neg * other.pos)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeltaPair):
            return NotImplemented
        return self.pos + other.neg == other.pos + self.neg

    __hash__ = None

    def __repr__(self) -> str:
        return f"({self.pos!r}) - ({self.neg!r})"


def delta_extension(x: AlgebraElement) -> DeltaPair:
    """Split pair-valued coefficients into a pair of base-scalar elements.

    The inverse direction is delta_extension_inverse; both are bijective up to
    the respective equalities and multiplicative, which the test suite checks
    on sampled elements.
    """
    S = x.algebra.scalars
    if not S.is_delta:
        raise SemiringPropertyError(
            f"{S.name} is not a ring of differences; nothing to split")
    base_alg = x.algebra.with_scalars(S.base)
    pos: dict[int, Any] = {}
    neg: dict[int, Any] = {}
    for i, c in x.coeffs.items():
        pos[i] = c.pos
        neg[i] = c.neg
    return DeltaPair(AlgebraElement(base_alg, pos), AlgebraElement(base_alg, neg))


def delta_extension_inverse(p: DeltaPair) -> AlgebraElement:
    """Merge a pair of base-scalar elements into pair-valued coefficients."""
    base_alg = p.pos.algebra
    S = base_alg.scalars
    dalg = base_alg.with_scalars(delta_of(S))
    out: dict[int, Any] = {}
    for i in p.pos.coeffs.keys() | p.neg.coeffs.keys():
        out[i] = DeltaElement(p.pos.coeffs.get(i, S.zero), p.neg.coeffs.get(i, S.zero))
    return AlgebraElement(dalg, out)


def element_to_delta(x: AlgebraElement) -> AlgebraElement:
    """The same element with coefficients embedded as difference pairs."""
    S = x.algebra.scalars
    dalg = x.algebra.with_scalars(delta_of(S))
    return AlgebraElement(dalg, {i: DeltaElement(c, S.zero) for i, c in x.coeffs.items()})


def element_from_delta(x: AlgebraElement, base: SparseAlgebra
                       ) -> tuple[AlgebraElement | None, list[tuple[Any, DeltaElement]]]:
    """Pull an element over a ring of differences back to the base scalars.

    Returns (element, []) when every coefficient is a difference of the form
    v - 0, and (None, failures) otherwise; failures lists the offending
    (basis object, difference pair) witnesses.
    """
    S = base.scalars
    dalg = base.with_scalars(delta_of(S))
    if x.algebra is not dalg:
        raise BasisMismatchError(
            f"element lives in {x.algebra!r}, not the difference variant of {base!r}")
    out: dict[int, Any] = {}
    failures: list[tuple[Any, DeltaElement]] = []
    for i, c in x.coeffs.items():
        v = delta_canonical(S, c)
        if v is None:
            failures.append((base.basis[i], c))
        else:
            out[i] = v
    if failures:
        failures.sort(key=lambda pair: base.index[pair[0]])
        return None, failures
    return AlgebraElement(base, out), []


def matrix_to_delta(X: MatrixElement) -> MatrixElement:
    S = X.algebra.scalars
    dalg = X.algebra.with_scalars(delta_of(S))
    return MatrixElement(dalg, tuple(
        tuple(AlgebraElement(dalg.entries,
                             {i: DeltaElement(c, S.zero) for i, c in entry.coeffs.items()})
              for entry in row)
        for row in X.rows))


def matrix_from_delta(X: MatrixElement, base: MatrixAlgebra
                      ) -> tuple[MatrixElement | None, list[tuple[Any, DeltaElement]]]:
    """Entrywise version of element_from_delta; witnesses are ((h, i, j), pair)."""
    S = base.scalars
    dalg = base.with_scalars(delta_of(S))
    if X.algebra is not dalg:
        raise BasisMismatchError(
            f"matrix lives in {X.algebra!r}, not the difference variant of {base!r}")
    rows = []
    failures: list[tuple[Any, DeltaElement]] = []
    for r, row in enumerate(X.rows, start=1):
        new_row = []
        for c, entry in enumerate(row, start=1):
            out: dict[int, Any] = {}
            for h, coeff in entry.coeffs.items():
                v = delta_canonical(S, coeff)
                if v is None:
                    failures.append(((h, r, c), coeff))
                else:
                    out[h] = v
            new_row.append(AlgebraElement(base.entries, out))
        rows.append(tuple(new_row))
    if failures:
        return None, failures
    return MatrixElement(base, tuple(rows)), []


# ---------------------------------------------------------------------------
# Serialization.

def element_from_json(algebra: SparseAlgebra, doc: dict) -> AlgebraElement:
    """Inverse of AlgebraElement.to_json for a known algebra."""
    if doc.get("basis") != algebra.kind:
        raise ValueError(f"basis tag {doc.get('basis')!r} does not match {algebra.kind!r}")
    parse = algebra.scalars.parse
    if parse is None:
        raise SemiringPropertyError(f"{algebra.scalars.name} has no coefficient parser")
    pairs = []
    for term in doc["terms"]:
        pairs.append((algebra.basis_from_key(term["b"]), parse(term["c"])))
    return algebra.element(pairs)


#: Elements of any free-basis semialgebra here share one concrete type.
SemialgebraElement = AlgebraElement

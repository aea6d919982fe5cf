"""Finite groups as validated Cayley tables, with subsets held as bitmasks.

Element indices run 0..order-1 with the identity at index 0. A subset of the
group is an int whose bit x is set when element x belongs to the subset; all
subset operations (translation, stabilizers, cosets) work on these masks.
Subset-enumerating operations refuse groups larger than a configurable bound
because they walk all 2^(order-1) subsets containing the identity.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

# Orders above this make full subset enumeration infeasible on a desk machine.
DEFAULT_ORDER_BOUND = 16

_SPEC_RE = re.compile(r"^(cyclic|sym|dihedral):([0-9]+)$")


class GroupTableError(ValueError):
    """A Cayley table fails validation; row/col point at the offending entry."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        super().__init__(message)
        self.row = row
        self.col = col


class GroupSpecError(ValueError):
    """A group specification string does not match the grammar."""


class GroupOrderBoundError(ValueError):
    """The group is larger than the configured enumeration bound."""


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for x in indices:
        mask |= 1 << x
    return mask


def indices_of_mask(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class FiniteGroup:
    """A finite group on element indices 0..order-1 with the identity at 0.

    The constructor validates the full set of axioms: identity row/column,
    Latin square property, two-sided inverses, and associativity (checked in
    one vectorized sweep over all triples).
    """

    def __init__(self, table: Sequence[Sequence[int]],
                 labels: Sequence[str] | None = None, name: str = "table"):
        n = len(table)
        if n == 0:
            raise GroupTableError("empty Cayley table")
        for i, row in enumerate(table):
            if len(row) != n:
                raise GroupTableError(
                    f"row {i} has {len(row)} entries, expected {n}", row=i)
        arr = np.asarray(table, dtype=np.int64)
        if arr.min() < 0 or arr.max() >= n:
            i, j = map(int, np.argwhere((arr < 0) | (arr >= n))[0])
            raise GroupTableError(
                f"entry {int(arr[i, j])} at row {i}, col {j} is outside 0..{n - 1}",
                row=i, col=j)
        idx = np.arange(n)
        if not np.array_equal(arr[0], idx):
            j = int(np.argwhere(arr[0] != idx)[0][0])
            raise GroupTableError(
                f"identity must sit at index 0: row 0, col {j} holds "
                f"{int(arr[0, j])}, expected {j}", row=0, col=j)
        if not np.array_equal(arr[:, 0], idx):
            i = int(np.argwhere(arr[:, 0] != idx)[0][0])
            raise GroupTableError(
                f"identity must sit at index 0: row {i}, col 0 holds "
                f"{int(arr[i, 0])}, expected {i}", row=i, col=0)
        if not np.array_equal(np.sort(arr, axis=1), np.tile(idx, (n, 1))):
            i = int(np.argwhere(np.sort(arr, axis=1) != idx)[0][0])
            raise GroupTableError(f"row {i} is not a permutation", row=i)
        if not np.array_equal(np.sort(arr, axis=0), np.tile(idx[:, None], (1, n))):
            j = int(np.argwhere(np.sort(arr, axis=0) != idx[:, None])[0][1])
            raise GroupTableError(f"col {j} is not a permutation", col=j)
        left = arr[arr, :]
        right = arr[:, arr]
        if not np.array_equal(left, right):
            i, j, k = map(int, np.argwhere(left != right)[0])
            raise GroupTableError(
                f"associativity fails at ({i}*{j})*{k} != {i}*({j}*{k})",
                row=i, col=j)

        inv = (arr == 0).argmax(axis=1)
        for i in range(n):
            if arr[inv[i], i] != 0:
                raise GroupTableError(
                    f"element {i} has no two-sided inverse", row=int(inv[i]), col=i)

        self.order = n
        self.cayley = tuple(tuple(int(x) for x in row) for row in table)
        self.inv = tuple(int(x) for x in inv)
        self.name = name
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise GroupTableError(
                    f"{len(labels)} labels for {n} elements")
            self.labels = labels
        else:
            self.labels = ("e",) + tuple(f"g{i}" for i in range(1, n))
        self._translate_cache: dict[tuple[int, int], int] = {}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def label(self, a: int) -> str:
        return self.labels[a]

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def left_translate(self, g: int, mask: int) -> int:
        """The subset g*I as a mask. Cached; masks are immutable ints."""
        key = (g, mask)
        cached = self._translate_cache.get(key)
        if cached is not None:
            return cached
        row = self.cayley[g]
        out = 0
        m = mask
        while m:
            low = m & -m
            out |= 1 << row[low.bit_length() - 1]
            m ^= low
        self._translate_cache[key] = out
        return out

    def conjugate_mask(self, g: int, mask: int) -> int:
        """The subset g*I*g^-1 as a mask."""
        gi = self.inv[g]
        out = 0
        m = mask
        while m:
            low = m & -m
            x = low.bit_length() - 1
            out |= 1 << self.mul(self.mul(g, x), gi)
            m ^= low
        return out

    def subset_repr(self, mask: int) -> str:
        return "{" + ",".join(self.labels[x] for x in indices_of_mask(mask)) + "}"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its element mask; closure is validated on build."""

    group: FiniteGroup
    mask: int

    def __post_init__(self):
        G = self.group
        if not self.mask & 1:
            raise ValueError(f"subgroup {G.subset_repr(self.mask)} misses the identity")
        elems = indices_of_mask(self.mask)
        for a in elems:
            if not self.mask >> G.inverse(a) & 1:
                raise ValueError(
                    f"subset {G.subset_repr(self.mask)} not closed under inverse of "
                    f"{G.label(a)}")
            for b in elems:
                if not self.mask >> G.mul(a, b) & 1:
                    raise ValueError(
                        f"subset {G.subset_repr(self.mask)} not closed under "
                        f"{G.label(a)}*{G.label(b)}")

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def elements(self) -> list[int]:
        return indices_of_mask(self.mask)

    def contains(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __repr__(self) -> str:
        return f"Subgroup({self.group.subset_repr(self.mask)})"


# ---------------------------------------------------------------------------
# Constructors.

def _cyclic(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["e"] + [f"a{i}" if i > 1 else "a" for i in range(1, n)]
    return FiniteGroup(table, labels[:n], name=f"cyclic:{n}")


def _klein4() -> FiniteGroup:
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return FiniteGroup(table, ("e", "a", "b", "c"), name="klein4")


def _sym(n: int) -> FiniteGroup:
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    labels = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(table, labels, name=f"sym:{n}")


def _dihedral(n: int) -> FiniteGroup:
    # Element s*n + k acts on Z_n as x -> (-1)^s * x + k.
    def compose(s1, k1, s2, k2):
        s = s1 ^ s2
        k = (k1 + (k2 if s1 == 0 else -k2)) % n
        return s * n + k

    table = [[compose(i // n, i % n, j // n, j % n)
              for j in range(2 * n)] for i in range(2 * n)]
    labels = ["e" if k == 0 else f"r{k}" if k > 1 else "r" for k in range(n)]
    labels += ["s" if k == 0 else f"sr{k}" if k > 1 else "sr" for k in range(n)]
    return FiniteGroup(table, labels, name=f"dihedral:{n}")


def from_table(doc: dict, name: str = "table") -> FiniteGroup:
    """Build a group from a parsed {"order", "table", "labels"?} document."""
    if not isinstance(doc, dict):
        raise GroupTableError(f"expected a JSON object, got {type(doc).__name__}")
    for key in ("order", "table"):
        if key not in doc:
            raise GroupTableError(f"missing key {key!r}")
    n = doc["order"]
    table = doc["table"]
    if not isinstance(n, int) or n < 1:
        raise GroupTableError(f"order must be a positive integer, got {n!r}")
    if not isinstance(table, list) or len(table) != n:
        raise GroupTableError(
            f"table must be a list of {n} rows, got {len(table) if isinstance(table, list) else type(table).__name__}")
    for i, row in enumerate(table):
        if not isinstance(row, list):
            raise GroupTableError(f"row {i} is not a list", row=i)
        for j, x in enumerate(row):
            if not isinstance(x, int):
                raise GroupTableError(
                    f"entry at row {i}, col {j} is not an integer", row=i, col=j)
    labels = doc.get("labels")
    return FiniteGroup(table, labels, name=name)


def make_group(spec: str) -> FiniteGroup:
    """Build a group from a spec string.

    Grammar: cyclic:n (n>=1) | klein4 | sym:n (1<=n<=5) | dihedral:n (n>=1,
    order 2n) | table:<path to JSON {"order", "table", "labels"?}>.
    Grammar violations raise GroupSpecError; a bad table raises GroupTableError.
    """
    if spec == "klein4":
        return _klein4()
    if spec.startswith("table:"):
        path = spec[len("table:"):]
        if not path:
            raise GroupSpecError("table: needs a file path")
        doc = json.loads(Path(path).read_text())
        return from_table(doc, name=spec)
    m = _SPEC_RE.match(spec)
    if m is None:
        raise GroupSpecError(
            f"bad group spec {spec!r}; expected cyclic:n, klein4, sym:n, "
            "dihedral:n, or table:<path>")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise GroupSpecError(f"{kind}:{n}: order parameter must be at least 1")
    if kind == "cyclic":
        return _cyclic(n)
    if kind == "sym":
        if n > 5:
            raise GroupSpecError(f"sym:{n}: factorial growth; n is capped at 5")
        return _sym(n)
    return _dihedral(n)


# ---------------------------------------------------------------------------
# Subset machinery.

def left_translate(G: FiniteGroup, g: int, mask: int) -> int:
    return G.left_translate(g, mask)


def stabilizer_of_subset(G: FiniteGroup, mask: int) -> Subgroup:
    """The subgroup {g : g*I = I} of a subset I containing the identity."""
    if not mask & 1:
        raise ValueError(f"subset {G.subset_repr(mask)} does not contain the identity")
    stab = 0
    for g in G.elements():
        if G.left_translate(g, mask) == mask:
            stab |= 1 << g
    return Subgroup(G, stab)


def _check_bound(G: FiniteGroup, bound: int | None, what: str) -> None:
    limit = DEFAULT_ORDER_BOUND if bound is None else bound
    if G.order > limit:
        raise GroupOrderBoundError(
            f"{what} walks all subsets of the group; order {G.order} exceeds "
            f"the bound {limit}")


def _closure_mask(G: FiniteGroup, mask: int) -> int:
    closed = 1
    frontier = mask | 1
    while frontier:
        new = 0
        for a in indices_of_mask(frontier):
            new |= 1 << G.inverse(a)
            for b in indices_of_mask(closed | frontier):
                new |= 1 << G.mul(a, b)
                new |= 1 << G.mul(b, a)
        closed |= frontier
        frontier = new & ~closed
    return closed


def subgroups(G: FiniteGroup, bound: int | None = None) -> list[Subgroup]:
    """All subgroups, by incremental closure; sorted by (order, mask)."""
    _check_bound(G, bound, "subgroup enumeration")
    found = {1}
    frontier = {1}
    while frontier:
        nxt = set()
        for hmask in frontier:
            for g in range(1, G.order):
                if hmask >> g & 1:
                    continue
                c = _closure_mask(G, hmask | (1 << g))
                if c not in found:
                    found.add(c)
                    nxt.add(c)
        frontier = nxt
    return [Subgroup(G, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]


def conjugacy_classes_of_subgroups(G: FiniteGroup,
                                   bound: int | None = None) -> list[list[Subgroup]]:
    """Subgroups grouped into conjugacy classes.

    Classes are sorted by (order, least mask); the first entry of each class,
    its least mask, is the canonical representative.
    """
    all_subs = subgroups(G, bound)
    seen: set[int] = set()
    classes: list[list[Subgroup]] = []
    for H in all_subs:
        if H.mask in seen:
            continue
        orbit = sorted({G.conjugate_mask(g, H.mask) for g in G.elements()})
        seen.update(orbit)
        classes.append([Subgroup(G, m) for m in orbit])
    classes.sort(key=lambda cls: (cls[0].order, cls[0].mask))
    return classes


def right_cosets(G: FiniteGroup, H: Subgroup) -> list[int]:
    """Masks of the right cosets H*t; the coset of the identity comes first."""
    if H.group is not G:
        raise ValueError("subgroup belongs to a different group")
    helems = H.elements()
    cosets = [H.mask]
    covered = H.mask
    for t in G.elements():
        if covered >> t & 1:
            continue
        cmask = mask_from_indices(G.mul(h, t) for h in helems)
        cosets.append(cmask)
        covered |= cmask
    return cosets


def subgroup_as_group(G: FiniteGroup, H: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Re-index a subgroup as a standalone group.

    Returns (K, elems) where elems[i] is the ambient index of K's element i;
    the ambient identity sits at 0 because masks list elements in index order.
    """
    elems = tuple(H.elements())
    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[G.mul(a, b)] for b in elems] for a in elems]
    labels = [G.label(x) for x in elems]
    name = f"{G.name}<{G.subset_repr(H.mask)}>"
    return FiniteGroup(table, labels, name=name), elems


def generating_set(H: Subgroup) -> list[int]:
    """A small generating set, chosen greedily by least element index."""
    G = H.group
    gens: list[int] = []
    closed = 1
    for x in H.elements():
        if closed >> x & 1:
            continue
        gens.append(x)
        closed = _closure_mask(G, closed | (1 << x))
        if closed == H.mask:
            break
    return gens

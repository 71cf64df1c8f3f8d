"""Finite posets stored as packed bitmask rows.

Elements are ids 0..n-1; a subset of the carrier is an int whose bit i is
element i (``ElementSet``).  The order keeps one row per element in both
directions: ``down[i]`` is the principal down-set of i and ``up[i]`` the
principal up-set, each as a bitmask.  Every cone computation is then a chain
of word-wide intersections, which keeps all the checkers in this package at
desk-scale cost without any third-party numerics.

Conventions used throughout:

* the lower/upper cone of the empty set is the whole carrier,
* bounds are detected from the order, never synthesized,
* an involution, when present, is stored as a total bijection ``inv[i]``;
  whether it is antitone or a complementation is a separate check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    CycleError,
    MissingBounds,
    MissingInvolution,
    NotAFunction,
    PosetError,
)
from .report import CheckReport

ElementSet = int  # bitmask over element ids


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def _transitive_closure(rows: list[int]) -> list[int]:
    # Boolean matrix squaring until fixpoint; at most log2(n)+1 rounds.
    while True:
        changed = False
        for i, row in enumerate(rows):
            acc = row
            rest = row
            while rest:
                low = rest & -rest
                rest ^= low
                acc |= rows[low.bit_length() - 1]
            if acc != row:
                rows[i] = acc
                changed = True
        if not changed:
            return rows


class FinitePoset:
    """Immutable finite poset, optionally carrying an involution.

    Instances should be built through :func:`build_poset` or the
    constructors module; ``__init__`` expects already-closed ``up`` rows and
    validates the order axioms.
    """

    __slots__ = ("n", "names", "up", "down", "inv", "bottom", "top", "full", "_ids")

    def __init__(self, names: tuple[str, ...], up: tuple[int, ...],
                 inv: tuple[int, ...] | None = None):
        n = len(names)
        if len(set(names)) != n:
            raise PosetError("duplicate element names")
        full = (1 << n) - 1
        for i in range(n):
            if not (up[i] >> i) & 1:
                raise PosetError(f"relation not reflexive at {names[i]}")
            if up[i] & ~full:
                raise PosetError("relation row mentions unknown element")
        down = [0] * n
        for i in range(n):
            row = up[i]
            for j in bits(row):
                down[j] |= 1 << i
        for i in range(n):
            for j in bits(up[i]):
                if i != j and (up[j] >> i) & 1:
                    raise CycleError(f"{names[i]} and {names[j]} are mutually comparable")
                if up[j] & ~up[i]:
                    raise PosetError(f"relation not transitive at {names[i]} <= {names[j]}")
        if inv is not None:
            if len(inv) != n or sorted(inv) != list(range(n)):
                raise NotAFunction("involution is not a total bijection")
        self.n = n
        self.names = tuple(names)
        self.up = tuple(up)
        self.down = tuple(down)
        self.inv = tuple(inv) if inv is not None else None
        self.full = full
        bottoms = [i for i in range(n) if up[i] == full]
        tops = [i for i in range(n) if down[i] == full]
        self.bottom = bottoms[0] if bottoms else None
        self.top = tops[0] if tops else None
        self._ids = {name: i for i, name in enumerate(names)}

    # -- element and subset helpers -------------------------------------

    def id_of(self, item: int | str) -> int:
        if isinstance(item, str):
            try:
                return self._ids[item]
            except KeyError:
                raise PosetError(f"unknown element {item!r}") from None
        if not 0 <= item < self.n:
            raise PosetError(f"element id {item} out of range")
        return item

    def mask(self, items: "int | str | Iterable[int | str]") -> ElementSet:
        """Build a subset mask from ids, names, or an existing mask."""
        if isinstance(items, (int, str)):
            return 1 << self.id_of(items)
        out = 0
        for item in items:
            out |= 1 << self.id_of(item)
        return out

    def names_of(self, mask: ElementSet) -> tuple[str, ...]:
        return tuple(self.names[i] for i in bits(mask))

    def leq(self, a: int | str, b: int | str) -> bool:
        return bool((self.up[self.id_of(a)] >> self.id_of(b)) & 1)

    # -- cones -----------------------------------------------------------

    def lower_cone(self, subset: ElementSet) -> ElementSet:
        """All common lower bounds; the whole carrier for the empty set."""
        out = self.full
        for i in bits(subset):
            out &= self.down[i]
        return out

    def upper_cone(self, subset: ElementSet) -> ElementSet:
        out = self.full
        for i in bits(subset):
            out &= self.up[i]
        return out

    def closure(self, subset: ElementSet) -> ElementSet:
        """Lower cone of the upper cone; the closure operator used by
        the completion."""
        return self.lower_cone(self.upper_cone(subset))

    # -- involution ------------------------------------------------------

    def require_involution(self) -> tuple[int, ...]:
        if self.inv is None:
            raise MissingInvolution("poset carries no involution")
        return self.inv

    def inv_image(self, subset: ElementSet) -> ElementSet:
        inv = self.require_involution()
        out = 0
        for i in bits(subset):
            out |= 1 << inv[i]
        return out

    def require_bounds(self) -> tuple[int, int]:
        if self.bottom is None or self.top is None:
            raise MissingBounds("poset has no bottom or no top")
        return self.bottom, self.top

    # -- extrema ----------------------------------------------------------

    def min_of(self, subset: ElementSet) -> int | None:
        """Least element of a subset, if it has one."""
        for i in bits(subset):
            if subset & ~self.up[i] == 0:
                return i
        return None

    def max_of(self, subset: ElementSet) -> int | None:
        for i in bits(subset):
            if subset & ~self.down[i] == 0:
                return i
        return None

    def maximal_of(self, subset: ElementSet) -> ElementSet:
        out = 0
        for i in bits(subset):
            if subset & self.up[i] == 1 << i:
                out |= 1 << i
        return out

    def join_of(self, subset: ElementSet) -> int | None:
        """Least upper bound of a subset of elements, or None."""
        return self.min_of(self.upper_cone(subset))

    def meet_of(self, subset: ElementSet) -> int | None:
        return self.max_of(self.lower_cone(subset))

    # -- small derived data ------------------------------------------------

    def atoms(self) -> ElementSet:
        """Elements covering the bottom."""
        bottom, _ = self.require_bounds()
        out = 0
        for i in range(self.n):
            if i != bottom and self.down[i] == (1 << bottom) | (1 << i):
                out |= 1 << i
        return out

    def is_orthogonal(self, subset: ElementSet) -> bool:
        """True iff all distinct members s, t satisfy s <= t'."""
        inv = self.require_involution()
        elems = list(bits(subset))
        for a in elems:
            for b in elems:
                if a != b and not (self.up[a] >> inv[b]) & 1:
                    return False
        return True

    def cover_pairs(self) -> list[tuple[int, int]]:
        """All cover edges (i, j) with j covering i, in id order."""
        out = []
        for i in range(self.n):
            strict_up = self.up[i] & ~(1 << i)
            for j in bits(strict_up):
                between = strict_up & self.down[j] & ~(1 << j)
                if between == 0:
                    out.append((i, j))
        return out

    def __repr__(self):
        return f"FinitePoset({self.n} elements)"


def build_poset(names: Iterable[object], relation: Iterable[tuple[object, object]],
                mode: str = "covers",
                involution: Iterable[tuple[object, object]] | None = None) -> FinitePoset:
    """Build a poset from Hasse data or a full order relation.

    ``relation`` lists pairs (a, b) meaning a <= b.  With ``mode="covers"``
    the reflexive-transitive closure is taken; with ``mode="full"`` the
    relation (plus reflexivity) must already be transitive.  ``involution``
    lists pairs (x, x'); pairs are symmetrized, so a self-paired element is
    written (x, x) and conflicting assignments raise :class:`NotAFunction`.
    """
    names = tuple(str(x) for x in names)
    ids = {name: i for i, name in enumerate(names)}
    if len(ids) != len(names):
        raise PosetError("duplicate element names")
    n = len(names)

    def lookup(x) -> int:
        key = str(x)
        if key not in ids:
            raise PosetError(f"relation mentions unknown element {key!r}")
        return ids[key]

    rows = [1 << i for i in range(n)]
    pairs = [(lookup(a), lookup(b)) for a, b in relation]
    for a, b in pairs:
        rows[a] |= 1 << b
    if mode == "covers":
        rows = _transitive_closure(rows)
    elif mode == "full":
        closed = _transitive_closure(list(rows))
        if closed != rows:
            raise PosetError("mode='full' requires a transitive relation")
    else:
        raise PosetError(f"unknown mode {mode!r}")

    inv = None
    if involution is not None:
        table: dict[int, int] = {}
        for a, b in involution:
            x, y = lookup(a), lookup(b)
            if table.setdefault(x, y) != y:
                raise NotAFunction(f"conflicting images for {names[x]}")
        for x, y in list(table.items()):
            # symmetrize pairs whose partner has no explicit image
            table.setdefault(y, x)
        if len(table) != n:
            missing = [names[i] for i in range(n) if i not in table][:3]
            raise NotAFunction(f"involution is not total; missing {missing}")
        if sorted(table.values()) != list(range(n)):
            raise NotAFunction("involution is not injective")
        inv = tuple(table[i] for i in range(n))

    return FinitePoset(names, tuple(rows), inv)


def is_antitone_involution(poset: FinitePoset) -> CheckReport:
    """Check x'' = x and that the involution reverses the order."""
    inv = poset.require_involution()
    for i in range(poset.n):
        if inv[inv[i]] != i:
            return CheckReport("antitone-involution", False,
                               witness={"x": poset.names[i]},
                               details="x'' differs from x")
    for i in range(poset.n):
        for j in bits(poset.up[i]):
            if not (poset.up[inv[j]] >> inv[i]) & 1:
                return CheckReport("antitone-involution", False,
                                   witness={"x": poset.names[i], "y": poset.names[j]},
                                   details="x <= y but y' is not below x'")
    return CheckReport("antitone-involution", True)


def is_complementation(poset: FinitePoset) -> CheckReport:
    """Antitone involution with L(x,x') = {0} and U(x,x') = {1}."""
    bottom, top = poset.require_bounds()
    inv = poset.require_involution()
    base = is_antitone_involution(poset)
    if not base.holds:
        return CheckReport("complementation", False, witness=base.witness,
                           details=base.details)
    for i in range(poset.n):
        if poset.down[i] & poset.down[inv[i]] != 1 << bottom:
            return CheckReport("complementation", False,
                               witness={"x": poset.names[i]},
                               details="L(x,x') is not {0}")
        if poset.up[i] & poset.up[inv[i]] != 1 << top:
            return CheckReport("complementation", False,
                               witness={"x": poset.names[i]},
                               details="U(x,x') is not {1}")
    return CheckReport("complementation", True)


def is_lattice(poset: FinitePoset) -> bool:
    for i in range(poset.n):
        for j in range(i + 1, poset.n):
            if poset.min_of(poset.up[i] & poset.up[j]) is None:
                return False
            if poset.max_of(poset.down[i] & poset.down[j]) is None:
                return False
    return True


def lattice_violation(poset: FinitePoset) -> dict | None:
    """First pair with no join or no meet, for witness reporting."""
    for i in range(poset.n):
        for j in range(i + 1, poset.n):
            if poset.min_of(poset.up[i] & poset.up[j]) is None:
                return {"x": poset.names[i], "y": poset.names[j], "missing": "join"}
            if poset.max_of(poset.down[i] & poset.down[j]) is None:
                return {"x": poset.names[i], "y": poset.names[j], "missing": "meet"}
    return None


def is_atomic(poset: FinitePoset) -> bool:
    bottom, _ = poset.require_bounds()
    atom_mask = poset.atoms()
    for i in range(poset.n):
        if i != bottom and poset.down[i] & atom_mask == 0:
            return False
    return True


def is_atomistic(poset: FinitePoset) -> bool:
    """Every element is the join of the atoms below it."""
    bottom, _ = poset.require_bounds()
    atom_mask = poset.atoms()
    for i in range(poset.n):
        if poset.join_of(poset.down[i] & atom_mask) != i:
            return False
    return True


def orthogonal_subsets(poset: FinitePoset, universe: ElementSet) -> Iterator[ElementSet]:
    """All orthogonal subsets of ``universe``, the empty set included."""
    inv = poset.require_involution()
    elems = list(bits(universe))
    compat = {}
    for a in elems:
        row = 0
        for b in elems:
            if b > a and (poset.up[a] >> inv[b]) & 1 and (poset.up[b] >> inv[a]) & 1:
                row |= 1 << b
        compat[a] = row

    def rec(chosen: int, candidates: int) -> Iterator[int]:
        yield chosen
        rest = candidates
        while rest:
            low = rest & -rest
            rest ^= low
            a = low.bit_length() - 1
            yield from rec(chosen | low, rest & compat[a])

    yield from rec(0, universe)


def max_orthogonal_size(poset: FinitePoset) -> int:
    """Largest orthogonal subset of nonzero elements.

    The bottom is orthogonal to everything, so counting it would shift
    every size by one; sizes are therefore taken over P minus {0}.
    """
    bottom, _ = poset.require_bounds()
    best = 0
    for subset in orthogonal_subsets(poset, poset.full & ~(1 << bottom)):
        best = max(best, popcount(subset))
    return best


def is_orthocomplete(poset: FinitePoset) -> bool:
    """Every orthogonal subset has a join."""
    bottom, _ = poset.require_bounds()
    for subset in orthogonal_subsets(poset, poset.full & ~(1 << bottom)):
        if poset.join_of(subset) is None:
            return False
    return True


@dataclass(frozen=True)
class StructuralProfile:
    atomic: bool
    atomistic: bool
    orthocomplete: bool
    lattice: bool
    max_orthogonal_size: int


def structural_profile(poset: FinitePoset) -> StructuralProfile:
    """Bundle of the basic shape predicates used all over the checkers."""
    return StructuralProfile(
        atomic=is_atomic(poset),
        atomistic=is_atomistic(poset),
        orthocomplete=is_orthocomplete(poset),
        lattice=is_lattice(poset),
        max_orthogonal_size=max_orthogonal_size(poset),
    )


def labeled_equal(left: FinitePoset, right: FinitePoset) -> bool:
    """Same names, same order, same involution under the name matching."""
    if set(left.names) != set(right.names) or left.n != right.n:
        return False
    to_right = [right.id_of(name) for name in left.names]
    for i in range(left.n):
        for j in range(left.n):
            if left.leq(i, j) != right.leq(to_right[i], to_right[j]):
                return False
    if (left.inv is None) != (right.inv is None):
        return False
    if left.inv is not None:
        for i in range(left.n):
            if to_right[left.inv[i]] != right.inv[to_right[i]]:
                return False
    return True

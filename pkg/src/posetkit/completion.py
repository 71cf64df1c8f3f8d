"""Dedekind-MacNeille completion of a finite poset.

A subset B is closed when L(U(B)) = B.  The closed sets ordered by
inclusion form a complete lattice into which the poset embeds via
x -> L(x); the embedding preserves all existing joins and meets.  Closed
sets are enumerated in lectic order with the NextClosure scheme, so the
enumeration index is the canonical order on completion elements.
"""

from __future__ import annotations

from .errors import SizeLimitExceeded
from .poset import ElementSet, FinitePoset, bits, is_antitone_involution
from .report import CheckReport

DEFAULT_MAX_CLOSED_SETS = 100_000


def closure(poset: FinitePoset, subset: ElementSet) -> ElementSet:
    """L(U(subset)); extensive, monotone and idempotent."""
    return poset.lower_cone(poset.upper_cone(subset))


class DMLattice:
    """Completion of ``base``: all closed subsets in lectic order."""

    __slots__ = ("base", "closed", "index", "embed", "inv", "bottom", "top", "_poset")

    def __init__(self, base: FinitePoset, closed: list[int]):
        self.base = base
        self.closed = tuple(closed)
        self.index = {mask: k for k, mask in enumerate(closed)}
        self.embed = tuple(self.index[base.down[i]] for i in range(base.n))
        self.bottom = self.index[closure(base, 0)]
        self.top = self.index[base.full]
        self.inv = None
        self._poset = None
        if base.inv is not None and is_antitone_involution(base).holds:
            self.inv = self._induced_involution()

    def __len__(self):
        return len(self.closed)

    def leq(self, i: int, j: int) -> bool:
        return self.closed[i] & ~self.closed[j] == 0

    def meet(self, i: int, j: int) -> int:
        return self.index[self.closed[i] & self.closed[j]]

    def join(self, i: int, j: int) -> int:
        return self.index[closure(self.base, self.closed[i] | self.closed[j])]

    def meet_all(self, indices) -> int:
        mask = self.base.full
        for k in indices:
            mask &= self.closed[k]
        return self.index[mask]

    def join_all(self, indices) -> int:
        mask = 0
        for k in indices:
            mask |= self.closed[k]
        return self.index[closure(self.base, mask)]

    def _induced_involution(self) -> tuple[int, ...]:
        """X -> L(X'-image), checked to be an involutive antitone
        extension of the base involution before it is trusted."""
        base = self.base
        star = []
        for mask in self.closed:
            image = base.lower_cone(base.inv_image(mask))
            assert image in self.index, "involution image is not closed"
            star.append(self.index[image])
        for k in range(len(self.closed)):
            assert star[star[k]] == k, "induced involution is not involutive"
        for i in range(base.n):
            assert self.closed[star[self.embed[i]]] == base.down[base.inv[i]], \
                "induced involution does not extend the base involution"
        if len(self.closed) <= 2000:
            for i, x in enumerate(self.closed):
                for j, y in enumerate(self.closed):
                    if x & ~y == 0 and self.closed[star[j]] & ~self.closed[star[i]]:
                        raise AssertionError("induced involution is not antitone")
        return tuple(star)

    def name_of(self, k: int) -> str:
        """Closed sets are down-sets, so the maximal elements identify
        them; principal sets get their generator's plain name."""
        mask = self.closed[k]
        if mask == 0:
            return "{}"
        tops = self.base.maximal_of(mask)
        return "∨".join(self.base.names[i] for i in bits(tops))

    def as_poset(self) -> FinitePoset:
        """The completion as a plain FinitePoset; element ids equal the
        lectic enumeration indices."""
        if self._poset is None:
            size = len(self.closed)
            names = tuple(self.name_of(k) for k in range(size))
            up = []
            for i in range(size):
                row = 0
                for j in range(size):
                    if self.closed[i] & ~self.closed[j] == 0:
                        row |= 1 << j
                up.append(row)
            self._poset = FinitePoset(names, tuple(up), self.inv)
        return self._poset


def complete(poset: FinitePoset,
             max_closed_sets: int = DEFAULT_MAX_CLOSED_SETS) -> DMLattice:
    """Enumerate all closed subsets in lectic order.

    NextClosure over the ground set in id order: the successor of A is
    closure((A & low_i) | {i}) for the largest i not in A whose closure
    adds nothing below i.  Raises SizeLimitExceeded past the cap.
    """
    n = poset.n
    current = closure(poset, 0)
    out = [current]
    full = poset.full
    while current != full:
        if len(out) >= max_closed_sets:
            raise SizeLimitExceeded(
                f"more than {max_closed_sets} closed sets; raise max_closed_sets")
        succ = None
        for i in reversed(range(n)):
            bit = 1 << i
            if current & bit:
                continue
            low = bit - 1
            candidate = closure(poset, (current & low) | bit)
            if candidate & low == current & low:
                succ = candidate
                break
        assert succ is not None, "lectic successor must exist below the full set"
        current = succ
        out.append(current)
    return DMLattice(poset, out)


def dm_join(lattice: DMLattice, i: int, j: int) -> int:
    return lattice.join(i, j)


def dm_meet(lattice: DMLattice, i: int, j: int) -> int:
    return lattice.meet(i, j)


def induced_involution(lattice: DMLattice) -> tuple[int, ...]:
    if lattice.inv is None:
        from .errors import MissingInvolution
        raise MissingInvolution("base poset has no antitone involution")
    return lattice.inv


def check_join_meet_density(poset: FinitePoset, lattice: DMLattice) -> CheckReport:
    """Every closed set is the join of embedded elements below it and the
    meet of embedded elements above it."""
    for k, mask in enumerate(lattice.closed):
        below = closure(poset, mask)  # join of {L(x) : x in mask}
        above = poset.full
        for j in bits(poset.upper_cone(mask)):
            above &= poset.down[j]
        if below != mask or above != mask:
            return CheckReport("join-meet-density", False,
                               witness={"closed-set": poset.names_of(mask)},
                               details="not recovered from embedded elements")
    return CheckReport("join-meet-density", True,
                       details=f"{len(lattice)} closed sets")

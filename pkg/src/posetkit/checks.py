"""Structural property checkers.

Every checker returns a :class:`CheckReport`; a failed report always
carries the first counterexample in canonical element order (ids
ascending, outer variable first).  Checkers that are stated through a
pair of equivalent identities evaluate both forms and assert that the
verdicts agree, so a divergence between the two routes is an internal
error rather than a silent wrong answer.
"""

from __future__ import annotations

import dataclasses
from typing import Iterator

from .completion import DMLattice, closure, complete, DEFAULT_MAX_CLOSED_SETS
from .errors import MissingInvolution, NotALattice, NotComplemented
from .poset import (
    ElementSet,
    FinitePoset,
    bits,
    is_antitone_involution,
    is_complementation,
    lattice_violation,
    orthogonal_subsets,
)
from .report import CheckReport


# -- distributivity -----------------------------------------------------


def _distributive_violation(poset: FinitePoset, dual: bool) -> tuple | None:
    n = poset.n
    lo, up = poset.lower_cone, poset.upper_cone
    for x in range(n):
        for y in range(n):
            pair = (1 << x) | (1 << y)
            outer = up(pair) if not dual else lo(pair)
            for z in range(n):
                zbit = 1 << z
                if not dual:
                    lhs = lo(outer | zbit)
                    rhs = lo(up(lo((1 << x) | zbit) | lo((1 << y) | zbit)))
                else:
                    lhs = up(outer | zbit)
                    rhs = up(lo(up((1 << x) | zbit) | up((1 << y) | zbit)))
                if lhs != rhs:
                    return (x, y, z)
    return None


def is_distributive_poset(poset: FinitePoset) -> CheckReport:
    """Cone distributivity, checked through both displayed identities."""
    lower_form = _distributive_violation(poset, dual=False)
    upper_form = _distributive_violation(poset, dual=True)
    assert (lower_form is None) == (upper_form is None), \
        "the two distributivity identities must agree"
    if lower_form is None:
        return CheckReport("distributive", True)
    x, y, z = lower_form
    return CheckReport("distributive", False,
                       witness={"x": poset.names[x], "y": poset.names[y],
                                "z": poset.names[z]},
                       details="L(U(x,y),z) differs from LU(L(x,z),L(y,z))")


def is_boolean_poset(poset: FinitePoset) -> CheckReport:
    comp = is_complementation(poset)
    if not comp.holds:
        return CheckReport("boolean", False, witness=comp.witness,
                           details="involution is not a complementation: " + comp.details)
    dist = is_distributive_poset(poset)
    if not dist.holds:
        return CheckReport("boolean", False, witness=dist.witness,
                           details=dist.details)
    return CheckReport("boolean", True)


# -- orthomodularity ----------------------------------------------------


def is_orthomodular_poset(poset: FinitePoset) -> CheckReport:
    """Orthogonal pairs have joins and ((x^y) v y')^ y = x^y holds,
    meets taken through De Morgan.

    The identity is evaluated only where its subterms exist; a missing
    subterm counts as a failure exactly on orthogonal pairs (where the
    axioms promise existence) and skips the pair otherwise.
    """
    comp = is_complementation(poset)
    if not comp.holds:
        raise NotComplemented(f"orthomodularity needs a complementation ({comp.details})")
    inv = poset.inv
    names = poset.names

    def join2(a: int, b: int) -> int | None:
        return poset.join_of((1 << a) | (1 << b))

    for x in range(poset.n):
        for y in range(poset.n):
            orthogonal = bool((poset.up[x] >> inv[y]) & 1)
            if orthogonal and join2(x, y) is None:
                return CheckReport("orthomodular-poset", False,
                                   witness={"x": names[x], "y": names[y]},
                                   details="orthogonal pair without a join")
            steps = []
            j = join2(inv[x], inv[y])
            if j is not None:
                meet_xy = inv[j]
                steps.append(meet_xy)
                j = join2(meet_xy, inv[y])
                if j is not None:
                    outer = join2(inv[j], inv[y])
                    if outer is not None:
                        if inv[outer] != meet_xy:
                            return CheckReport(
                                "orthomodular-poset", False,
                                witness={"x": names[x], "y": names[y]},
                                details="((x^y) v y') ^ y differs from x^y")
                        continue
            if orthogonal:
                return CheckReport("orthomodular-poset", False,
                                   witness={"x": names[x], "y": names[y]},
                                   details="identity subterm undefined on an orthogonal pair")
    return CheckReport("orthomodular-poset", True)


class _LatticeOps:
    """Uniform join/meet/complement access for a FinitePoset lattice or a
    completion, so lattice checkers can run on either without building
    quadratic tables they do not need."""

    def __init__(self, lattice: "FinitePoset | DMLattice"):
        if isinstance(lattice, DMLattice):
            dm = lattice
            self.size = len(dm)
            self.names = [dm.name_of(k) for k in range(self.size)]
            if dm.inv is None:
                raise MissingInvolution("completion carries no involution")
            self.inv = dm.inv
            self.bottom, self.top = dm.bottom, dm.top
            self.join, self.meet, self.leq = dm.join, dm.meet, dm.leq
        else:
            poset = lattice
            bad = lattice_violation(poset)
            if bad is not None:
                raise NotALattice(f"{bad['x']}, {bad['y']} have no {bad['missing']}")
            self.size = poset.n
            self.names = list(poset.names)
            self.inv = poset.require_involution()
            self.bottom, self.top = poset.require_bounds()
            joins = [[0] * poset.n for _ in range(poset.n)]
            meets = [[0] * poset.n for _ in range(poset.n)]
            for i in range(poset.n):
                for j in range(poset.n):
                    joins[i][j] = poset.join_of((1 << i) | (1 << j))
                    meets[i][j] = poset.meet_of((1 << i) | (1 << j))
            self.join = lambda i, j: joins[i][j]
            self.meet = lambda i, j: meets[i][j]
            self.leq = lambda i, j: bool((poset.up[i] >> j) & 1)

    def check_complemented(self):
        for k in range(self.size):
            if self.meet(k, self.inv[k]) != self.bottom or self.join(k, self.inv[k]) != self.top:
                raise NotComplemented(f"{self.names[k]} meets or joins its image improperly")


def is_orthomodular_lattice(lattice: "FinitePoset | DMLattice") -> CheckReport:
    """Lattice orthomodularity via x v y = ((x v y) ^ y') v y, cross
    checked against the x <= y, x' ^ y = 0 implies x = y condition."""
    if isinstance(lattice, FinitePoset) and lattice.inv is not None:
        anti = is_antitone_involution(lattice)
        if not anti.holds:
            raise NotComplemented("involution is not antitone: " + anti.details)
    ops = _LatticeOps(lattice)
    ops.check_complemented()

    identity = None
    for x in range(ops.size):
        if identity:
            break
        for y in range(ops.size):
            top = ops.join(x, y)
            if ops.join(ops.meet(top, ops.inv[y]), y) != top:
                identity = (x, y)
                break
    exchange = None
    for x in range(ops.size):
        if exchange:
            break
        for y in range(ops.size):
            if x != y and ops.leq(x, y) and ops.meet(ops.inv[x], y) == ops.bottom:
                exchange = (x, y)
                break
    assert (identity is None) == (exchange is None), \
        "orthomodular identity and exchange condition must agree"
    if identity is None:
        return CheckReport("orthomodular-lattice", True)
    x, y = identity
    return CheckReport("orthomodular-lattice", False,
                       witness={"x": ops.names[x], "y": ops.names[y]},
                       details="((x v y) ^ y') v y differs from x v y")


def find_modularity_violation(lattice: "FinitePoset | DMLattice") -> dict | None:
    """First x <= z and y with x v (y ^ z) != (x v y) ^ z, or None."""
    if isinstance(lattice, DMLattice):
        dm = lattice
        size, names = len(dm), [dm.name_of(k) for k in range(len(dm))]
        join, meet, leq = dm.join, dm.meet, dm.leq
    else:
        bad = lattice_violation(lattice)
        if bad is not None:
            raise NotALattice(f"{bad['x']}, {bad['y']} have no {bad['missing']}")
        size, names = lattice.n, list(lattice.names)
        join = lambda i, j: lattice.join_of((1 << i) | (1 << j))
        meet = lambda i, j: lattice.meet_of((1 << i) | (1 << j))
        leq = lattice.leq
    for x in range(size):
        for z in range(size):
            if x == z or not leq(x, z):
                continue
            for y in range(size):
                if join(x, meet(y, z)) != meet(join(x, y), z):
                    return {"x": names[x], "y": names[y], "z": names[z]}
    return None


def is_modular_lattice(lattice: "FinitePoset | DMLattice") -> CheckReport:
    bad = find_modularity_violation(lattice)
    if bad is None:
        return CheckReport("modular", True)
    return CheckReport("modular", False, witness=bad,
                       details="x v (y ^ z) differs from (x v y) ^ z for x <= z")


# -- pseudo-orthomodularity ---------------------------------------------


def _pseudo_om_violation(poset: FinitePoset, dual: bool) -> tuple | None:
    inv = poset.inv
    lo, up = poset.lower_cone, poset.upper_cone
    for x in range(poset.n):
        for y in range(poset.n):
            pair = (1 << x) | (1 << y)
            ybit = 1 << y
            prime = 1 << inv[y]
            if not dual:
                if lo(up(lo(pair) | prime) | ybit) != lo(pair):
                    return (x, y)
            else:
                if up(lo(up(pair) | prime) | ybit) != up(pair):
                    return (x, y)
    return None


def is_pseudo_orthomodular(poset: FinitePoset) -> CheckReport:
    """L(U(L(x,y),y'),y) = L(x,y) for all pairs, plus the dual form."""
    comp = is_complementation(poset)
    if not comp.holds:
        raise NotComplemented(f"pseudo-orthomodularity needs a complementation ({comp.details})")
    lower_form = _pseudo_om_violation(poset, dual=False)
    upper_form = _pseudo_om_violation(poset, dual=True)
    assert (lower_form is None) == (upper_form is None), \
        "the two pseudo-orthomodularity identities must agree"
    if lower_form is None:
        return CheckReport("pseudo-orthomodular", True)
    x, y = lower_form
    return CheckReport("pseudo-orthomodular", False,
                       witness={"x": poset.names[x], "y": poset.names[y]},
                       details="L(U(L(x,y),y'),y) differs from L(x,y)")


# -- strong D-continuity -------------------------------------------------


def is_strongly_d_continuous(poset: FinitePoset,
                             lattice: DMLattice | None = None,
                             max_closed_sets: int = DEFAULT_MAX_CLOSED_SETS) -> CheckReport:
    """For every B <= C: the elements of C together with the involution
    images of B meet only in 0 exactly when every lower bound of C is
    below every upper bound of B.

    The infimum-is-zero premise is read as a lower cone condition,
    L(C united with B-images) = {0}.  The quantification is reduced to
    closed representatives: (B, C) = (X, U(Y)) over closed X inside Y,
    which covers all subset pairs because both sides depend on (B, C)
    only through LU(B) and L(C).
    """
    comp = is_complementation(poset)
    if not comp.holds:
        raise NotComplemented(f"strong D-continuity needs a complementation ({comp.details})")
    if lattice is None:
        lattice = complete(poset, max_closed_sets)
    bottom_mask = 1 << poset.bottom
    upper_images = [poset.inv_image(poset.upper_cone(mask)) for mask in lattice.closed]
    for i, x_mask in enumerate(lattice.closed):
        # one-line direction: valid outright in any complemented poset
        assert x_mask & upper_images[i] == bottom_mask, \
            "a complemented poset cannot fail the backward direction"
        for j, y_mask in enumerate(lattice.closed):
            if i == j or x_mask & ~y_mask:
                continue
            if y_mask & upper_images[i] == bottom_mask:
                return CheckReport(
                    "strongly-d-continuous", False,
                    witness={"B": poset.names_of(x_mask),
                             "C": poset.names_of(poset.upper_cone(y_mask))},
                    details="cone meets in 0 but some lower bound of C "
                            "is not below some upper bound of B")
    return CheckReport("strongly-d-continuous", True,
                       details="infimum-is-zero read as L(C,B') = {0}")


def naive_strongly_d_continuous(poset: FinitePoset) -> CheckReport:
    """Every-subset-pair version, for cross validation on small posets."""
    comp = is_complementation(poset)
    if not comp.holds:
        raise NotComplemented("strong D-continuity needs a complementation")
    assert poset.n <= 14, "naive quantification is exponential"
    bottom_mask = 1 << poset.bottom
    for b_set in range(poset.full + 1):
        upper_b = poset.upper_cone(b_set)
        shifted = poset.lower_cone(poset.inv_image(b_set))
        for c_set in range(poset.full + 1):
            if c_set & ~upper_b:
                continue  # not B <= C
            lower_c = poset.lower_cone(c_set)
            zero_meet = lower_c & shifted == bottom_mask
            dominated = lower_c & ~poset.lower_cone(upper_b) == 0
            if zero_meet != dominated:
                return CheckReport(
                    "strongly-d-continuous", False,
                    witness={"B": poset.names_of(b_set), "C": poset.names_of(c_set)},
                    details="naive quantification")
    return CheckReport("strongly-d-continuous", True, details="naive quantification")


# -- completion orthomodularity through maximal orthogonal sets ----------


def _maximal_orthogonal_subsets(poset: FinitePoset, universe: ElementSet) -> Iterator[ElementSet]:
    inv = poset.inv
    members = list(bits(universe))
    compatible = {}
    for a in members:
        row = 0
        for b in members:
            if a != b and (poset.up[a] >> inv[b]) & 1 and (poset.up[b] >> inv[a]) & 1:
                row |= 1 << b
        compatible[a] = row

    def expand(chosen: int, candidates: int, excluded: int) -> Iterator[int]:
        if candidates == 0 and excluded == 0:
            yield chosen
            return
        rest = candidates
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            yield from expand(chosen | low, candidates & compatible[v],
                              excluded & compatible[v])
            candidates ^= low
            excluded |= low
            rest ^= low

    yield from expand(0, universe, 0)


def finch_criterion(poset: FinitePoset,
                    lattice: DMLattice | None = None,
                    max_closed_sets: int = DEFAULT_MAX_CLOSED_SETS) -> CheckReport:
    """Every maximal orthogonal subset of a closed set generates it.

    Equivalent to the completion being an orthomodular lattice; the
    closed set of 0 alone is excluded from the quantification.
    """
    comp = is_complementation(poset)
    if not comp.holds:
        raise NotComplemented(f"the criterion needs a complementation ({comp.details})")
    if lattice is None:
        lattice = complete(poset, max_closed_sets)
    zero_closed = closure(poset, 0)
    for mask in lattice.closed:
        if mask == zero_closed:
            continue
        for subset in _maximal_orthogonal_subsets(poset, mask):
            if closure(poset, subset) != mask:
                return CheckReport(
                    "finch", False,
                    witness={"closed-set": poset.names_of(mask),
                             "maximal-orthogonal": poset.names_of(subset)},
                    details="maximal orthogonal subset generates a smaller closed set")
    return CheckReport("finch", True)


# -- doubly dense subsets ------------------------------------------------


def is_complement_closed_doubly_dense(lattice: FinitePoset, subset: ElementSet) -> CheckReport:
    """subset contains the bounds, is involution closed, and every
    lattice element is both a join and a meet of subset elements."""
    bad = lattice_violation(lattice)
    if bad is not None:
        raise NotALattice(f"{bad['x']}, {bad['y']} have no {bad['missing']}")
    comp = is_complementation(lattice)
    if not comp.holds:
        raise NotComplemented("doubly dense subsets live in complemented lattices")
    bottom, top = lattice.require_bounds()
    name = "complement-closed-doubly-dense"
    for k in (bottom, top):
        if not (subset >> k) & 1:
            return CheckReport(name, False, witness={"missing": lattice.names[k]},
                               details="subset must contain the bounds")
    if lattice.inv_image(subset) != subset:
        stray = subset & ~lattice.inv_image(subset)
        culprit = next(bits(stray | (lattice.inv_image(subset) & ~subset)))
        return CheckReport(name, False, witness={"x": lattice.names[culprit]},
                           details="subset is not closed under the involution")
    for a in range(lattice.n):
        if lattice.join_of(lattice.down[a] & subset) != a:
            return CheckReport(name, False, witness={"a": lattice.names[a]},
                               details="element is not the join of subset elements below it")
        if lattice.meet_of(lattice.up[a] & subset) != a:
            return CheckReport(name, False, witness={"a": lattice.names[a]},
                               details="element is not the meet of subset elements above it")
    return CheckReport(name, True)


def doubly_dense_subsets(lattice: FinitePoset) -> Iterator[ElementSet]:
    """Exhaustively enumerate complement-closed doubly dense subsets."""
    bottom, top = lattice.require_bounds()
    inv = lattice.require_involution()
    base = (1 << bottom) | (1 << top)
    orbits = []
    seen = base
    for i in range(lattice.n):
        if not (seen >> i) & 1:
            orbit = (1 << i) | (1 << inv[i])
            orbits.append(orbit)
            seen |= orbit
    for combo in range(1 << len(orbits)):
        mask = base
        for k in bits(combo):
            mask |= orbits[k]
        if is_complement_closed_doubly_dense(lattice, mask).holds:
            yield mask


# -- named check registry ------------------------------------------------


class CheckContext:
    """Carries a poset and computes its completion at most once."""

    def __init__(self, poset: FinitePoset, max_closed_sets: int = DEFAULT_MAX_CLOSED_SETS):
        self.poset = poset
        self.max_closed_sets = max_closed_sets
        self._dm: DMLattice | None = None

    @property
    def dm(self) -> DMLattice:
        if self._dm is None:
            self._dm = complete(self.poset, self.max_closed_sets)
        return self._dm


def _report_bool(name: str, holds: bool, witness=None, details="") -> CheckReport:
    return CheckReport(name, holds, witness=witness if not holds else None,
                       details=details if not holds else "")


def _atomic_report(ctx: CheckContext) -> CheckReport:
    poset = ctx.poset
    bottom, _ = poset.require_bounds()
    atom_mask = poset.atoms()
    for i in range(poset.n):
        if i != bottom and poset.down[i] & atom_mask == 0:
            return CheckReport("atomic", False, witness={"x": poset.names[i]},
                               details="no atom below a nonzero element")
    return CheckReport("atomic", True)


def _atomistic_report(ctx: CheckContext) -> CheckReport:
    poset = ctx.poset
    atom_mask = poset.atoms()
    for i in range(poset.n):
        if poset.join_of(poset.down[i] & atom_mask) != i:
            return CheckReport("atomistic", False, witness={"x": poset.names[i]},
                               details="element is not the join of the atoms below it")
    return CheckReport("atomistic", True)


def _orthocomplete_report(ctx: CheckContext) -> CheckReport:
    poset = ctx.poset
    bottom, _ = poset.require_bounds()
    for subset in orthogonal_subsets(poset, poset.full & ~(1 << bottom)):
        if poset.join_of(subset) is None:
            return CheckReport("orthocomplete", False,
                               witness={"subset": poset.names_of(subset)},
                               details="orthogonal subset without a join")
    return CheckReport("orthocomplete", True)


def _lattice_report(ctx: CheckContext) -> CheckReport:
    bad = lattice_violation(ctx.poset)
    if bad is None:
        return CheckReport("lattice", True)
    return CheckReport("lattice", False,
                       witness={"x": bad["x"], "y": bad["y"]},
                       details=f"pair has no {bad['missing']}")


def _renamed(report: CheckReport, name: str) -> CheckReport:
    return dataclasses.replace(report, name=name)


PROPERTIES = {
    "antitone-involution": lambda ctx: is_antitone_involution(ctx.poset),
    "complementation": lambda ctx: is_complementation(ctx.poset),
    "lattice": _lattice_report,
    "atomic": _atomic_report,
    "atomistic": _atomistic_report,
    "orthocomplete": _orthocomplete_report,
    "distributive": lambda ctx: is_distributive_poset(ctx.poset),
    "boolean": lambda ctx: is_boolean_poset(ctx.poset),
    "modular": lambda ctx: is_modular_lattice(ctx.poset),
    "orthomodular-poset": lambda ctx: is_orthomodular_poset(ctx.poset),
    "orthomodular-lattice": lambda ctx: is_orthomodular_lattice(ctx.poset),
    "pseudo-orthomodular": lambda ctx: is_pseudo_orthomodular(ctx.poset),
    "strongly-d-continuous": lambda ctx: is_strongly_d_continuous(
        ctx.poset, ctx.dm, ctx.max_closed_sets),
    "finch": lambda ctx: finch_criterion(ctx.poset, ctx.dm, ctx.max_closed_sets),
    "completion-orthomodular": lambda ctx: _renamed(
        is_orthomodular_lattice(ctx.dm), "completion-orthomodular"),
    "completion-distributive": lambda ctx: _renamed(
        is_distributive_poset(ctx.dm.as_poset()), "completion-distributive"),
    "completion-modular": lambda ctx: _renamed(
        is_modular_lattice(ctx.dm), "completion-modular"),
}


def run_check(name: str, poset: FinitePoset, ctx: CheckContext | None = None,
              max_closed_sets: int = DEFAULT_MAX_CLOSED_SETS) -> CheckReport:
    if name not in PROPERTIES:
        raise KeyError(f"unknown property {name!r}")
    if ctx is None:
        ctx = CheckContext(poset, max_closed_sets)
    return PROPERTIES[name](ctx)

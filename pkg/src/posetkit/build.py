"""Higher-level constructors: horizontal sums, Greechie diagram pasting,
induced subposets, and small-poset generation for property suites.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .checks import is_orthomodular_poset, is_pseudo_orthomodular
from .completion import DEFAULT_MAX_CLOSED_SETS, complete
from .errors import (
    InvalidDiagram,
    MissingInvolution,
    NotComplementClosed,
    PosetError,
    SizeLimitExceeded,
    UnboundedPart,
)
from .poset import (
    ElementSet,
    FinitePoset,
    _transitive_closure,
    bits,
    is_complementation,
    is_lattice,
    labeled_equal,
    popcount,
)
from .report import CheckReport

EXHAUSTIVE_SIZE_CAP = 8
RANDOM_SIZE_CAP = 12


# -- horizontal sums -----------------------------------------------------


def horizontal_sum(parts: Sequence[FinitePoset]) -> FinitePoset:
    """Glue bounded posets at shared bounds; middles of different parts
    stay incomparable.  Bound names are taken from the first part."""
    parts = list(parts)
    if not parts:
        raise UnboundedPart("horizontal sum needs at least one part")
    for p in parts:
        if p.bottom is None or p.top is None:
            raise UnboundedPart("every part must be bounded")
        if p.bottom == p.top:
            raise UnboundedPart("every part must have distinct bounds")
    carried = [p.inv is not None for p in parts]
    if any(carried) and not all(carried):
        raise MissingInvolution("either every part carries an involution or none does")
    for p in parts:
        if p.inv is not None and p.inv[p.bottom] != p.top:
            raise PosetError("part involution must swap the bounds")

    first = parts[0]
    names = [first.names[first.bottom]]
    owner: list[tuple[int, int]] = []
    for pi, p in enumerate(parts):
        for i in range(p.n):
            if i not in (p.bottom, p.top):
                names.append(p.names[i])
                owner.append((pi, i))
    names.append(first.names[first.top])
    if len(set(names)) != len(names):
        seen, clash = set(), set()
        for x in names:
            (clash if x in seen else seen).add(x)
        raise PosetError(f"element names collide across parts: {sorted(clash)}")

    n = len(names)
    top_id = n - 1
    glob = {pair: g for g, pair in enumerate(owner, start=1)}
    up = [0] * n
    up[0] = (1 << n) - 1
    up[top_id] = 1 << top_id
    for g, (pi, i) in enumerate(owner, start=1):
        row = (1 << g) | (1 << top_id)
        p = parts[pi]
        for j in bits(p.up[i]):
            if j not in (p.bottom, p.top):
                row |= 1 << glob[(pi, j)]
        up[g] = row

    inv = None
    if all(carried):
        inv = [0] * n
        inv[0], inv[top_id] = top_id, 0
        for g, (pi, i) in enumerate(owner, start=1):
            inv[g] = glob[(pi, parts[pi].inv[i])]
        inv = tuple(inv)
    return FinitePoset(tuple(names), tuple(up), inv)


# -- Greechie diagrams ---------------------------------------------------


@dataclass(frozen=True)
class GreechieDiagram:
    atoms: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]


def _block_masks(diagram: GreechieDiagram) -> list[int] | None:
    ids = {a: i for i, a in enumerate(diagram.atoms)}
    if len(ids) != len(diagram.atoms):
        return None
    masks = []
    for block in diagram.blocks:
        mask = 0
        for a in block:
            if a not in ids:
                return None
            mask |= 1 << ids[a]
        if popcount(mask) != len(block):
            return None
        masks.append(mask)
    return masks


def _find_loop(blocks: list[int], order: int) -> list[int] | None:
    """A loop is a cyclic sequence of distinct blocks joined by mutually
    distinct atoms; returns block indices or None."""
    m = len(blocks)

    def extend(seq: list[int], used_blocks: int, used_atoms: int) -> list[int] | None:
        last = blocks[seq[-1]]
        if len(seq) == order:
            if last & blocks[seq[0]] & ~used_atoms:
                return seq
            return None
        for nxt in range(seq[0] + 1, m):
            if (used_blocks >> nxt) & 1:
                continue
            for atom in bits(last & blocks[nxt] & ~used_atoms):
                found = extend(seq + [nxt], used_blocks | (1 << nxt),
                               used_atoms | (1 << atom))
                if found:
                    return found
        return None

    for start in range(m):
        found = extend([start], 1 << start, 0)
        if found:
            return found
    return None


def min_loop_order(diagram: GreechieDiagram) -> int | None:
    masks = _block_masks(diagram)
    if masks is None:
        raise InvalidDiagram("blocks mention duplicate or unknown atoms")
    for order in range(2, len(masks) + 1):
        if _find_loop(masks, order):
            return order
    return None


def validate_greechie(diagram: GreechieDiagram) -> CheckReport:
    """The five diagram conditions; the minimum loop order (if any) is
    reported for the lattice criterion."""
    name = "greechie-diagram"
    if not diagram.atoms:
        return CheckReport(name, False, witness={"atoms": ()},
                           details="a diagram needs at least one atom")
    masks = _block_masks(diagram)
    if masks is None:
        return CheckReport(name, False, witness={"atoms": diagram.atoms},
                           details="blocks mention duplicate or unknown atoms")
    if len(set(masks)) != len(masks) or 0 in masks:
        return CheckReport(name, False, witness={"blocks": tuple(map(str, diagram.blocks))},
                           details="blocks must be distinct and nonempty")

    covered = 0
    for mask in masks:
        covered |= mask
    if covered != (1 << len(diagram.atoms)) - 1:
        missing = diagram.atoms[next(bits(((1 << len(diagram.atoms)) - 1) & ~covered))]
        return CheckReport(name, False, witness={"atom": missing},
                           details="every atom must belong to a block")
    if len(diagram.atoms) >= 2:
        for bi, mask in enumerate(masks):
            if popcount(mask) < 2:
                return CheckReport(name, False,
                                   witness={"block": " ".join(diagram.blocks[bi])},
                                   details="blocks must have at least 2 atoms")
    for bi, mask in enumerate(masks):
        touches = any(mask & other for oi, other in enumerate(masks) if oi != bi)
        if touches and popcount(mask) < 3:
            return CheckReport(name, False,
                               witness={"block": " ".join(diagram.blocks[bi])},
                               details="intersecting blocks must have at least 3 atoms")
    for bi, mask in enumerate(masks):
        for oi in range(bi + 1, len(masks)):
            if popcount(mask & masks[oi]) > 1:
                return CheckReport(name, False,
                                   witness={"blocks": (" ".join(diagram.blocks[bi]),
                                                       " ".join(diagram.blocks[oi]))},
                                   details="blocks may share at most one atom")
    triangle = _find_loop(masks, 3)
    if triangle:
        return CheckReport(name, False,
                           witness={"blocks": tuple(" ".join(diagram.blocks[k])
                                                    for k in triangle)},
                           details="loop of order 3")
    loop = min_loop_order(diagram)
    return CheckReport(name, True,
                       extra={"min-loop-order": "none" if loop is None else str(loop)})


def greechie_to_omp(diagram: GreechieDiagram) -> FinitePoset:
    """Paste the Boolean power sets of the blocks into one poset.

    Elements are classes of (block, atom subset) pairs under
    (e,S) ~ (f,T) iff S = T or e\\S = f\\T; the order holds between two
    classes when some representatives share a block and are included as
    subsets there; the involution is the in-block complement.  The
    orthomodularity of the result and the loop criterion for being a
    lattice are asserted rather than trusted.
    """
    valid = validate_greechie(diagram)
    if not valid.holds:
        raise InvalidDiagram(valid.details)
    for atom in diagram.atoms:
        if atom in ("0", "1") or atom.endswith("'") or "∨" in atom:
            raise InvalidDiagram(f"atom name {atom!r} collides with generated names")
    masks = _block_masks(diagram)

    nodes = [(bi, sub) for bi, mask in enumerate(masks)
             for sub in _submasks(mask)]
    parent = {node: node for node in nodes}

    def find(node):
        while parent[node] != node:
            parent[node] = parent[parent[node]]
            node = parent[node]
        return node

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    by_subset: dict[int, list] = {}
    by_complement: dict[int, list] = {}
    for bi, sub in nodes:
        by_subset.setdefault(sub, []).append((bi, sub))
        by_complement.setdefault(masks[bi] & ~sub, []).append((bi, sub))
    for group in list(by_subset.values()) + list(by_complement.values()):
        for other in group[1:]:
            union(group[0], other)

    classes: dict[tuple, list] = {}
    for node in nodes:
        classes.setdefault(find(node), []).append(node)
    members = list(classes.values())

    def class_name(nodes_of: list) -> str:
        subs = {sub for _, sub in nodes_of}
        if 0 in subs:
            return "0"
        if any(sub == masks[bi] for bi, sub in nodes_of):
            return "1"
        for bi, sub in nodes_of:
            if popcount(sub) == 1:
                return diagram.atoms[next(bits(sub))]
        for bi, sub in nodes_of:
            rest = masks[bi] & ~sub
            if popcount(rest) == 1:
                return diagram.atoms[next(bits(rest))] + "'"
        best = min(tuple(sorted(diagram.atoms[i] for i in bits(sub)))
                   for _, sub in nodes_of)
        return "∨".join(best)

    def sort_key(nodes_of: list):
        cname = class_name(nodes_of)
        if cname == "0":
            return (-1, 0, 0)
        if cname == "1":
            return (len(diagram.atoms) + 1, 0, 0)
        return min((popcount(sub), bi, sub) for bi, sub in nodes_of)

    members.sort(key=sort_key)
    index = {node: k for k, grp in enumerate(members) for node in grp}
    names = tuple(class_name(grp) for grp in members)

    n = len(members)
    up = [1 << k for k in range(n)]
    for k, grp in enumerate(members):
        for bi, sub in grp:
            for other in _submasks(masks[bi]):
                if sub & ~other == 0:
                    up[k] |= 1 << index[(bi, other)]
    inv = [None] * n
    for k, grp in enumerate(members):
        for bi, sub in grp:
            image = index[(bi, masks[bi] & ~sub)]
            if inv[k] is None:
                inv[k] = image
            elif inv[k] != image:
                raise InvalidDiagram("in-block complement is not well defined")

    try:
        result = FinitePoset(names, tuple(up), tuple(inv))
    except PosetError as exc:
        raise InvalidDiagram(f"pasting did not produce a poset: {exc}") from exc
    assert is_orthomodular_poset(result).holds, \
        "pasting must produce an orthomodular poset"
    assert is_lattice(result) == (_find_loop(masks, 4) is None), \
        "lattice exactly when the diagram has no loop of order 4"
    return result


def _submasks(mask: int) -> Iterator[int]:
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


# -- induced subposets ----------------------------------------------------


def induced_subposet(poset: FinitePoset, subset: ElementSet) -> FinitePoset:
    """Restrict order and involution to ``subset``."""
    if subset == 0:
        raise PosetError("induced subposet needs a nonempty carrier")
    if subset & ~poset.full:
        raise PosetError("subset mentions unknown elements")
    keep = list(bits(subset))
    if poset.inv is not None and poset.inv_image(subset) != subset:
        stray = next(i for i in keep if not (subset >> poset.inv[i]) & 1)
        raise NotComplementClosed(
            f"{poset.names[stray]} is kept but {poset.names[poset.inv[stray]]} is not")
    pos = {old: new for new, old in enumerate(keep)}
    names = tuple(poset.names[i] for i in keep)
    up = []
    for i in keep:
        row = 0
        for j in bits(poset.up[i] & subset):
            row |= 1 << pos[j]
        up.append(row)
    inv = tuple(pos[poset.inv[i]] for i in keep) if poset.inv is not None else None
    return FinitePoset(names, tuple(up), inv)


# -- completion of a horizontal sum ---------------------------------------


def _labeled_diff(left: FinitePoset, right: FinitePoset) -> dict | None:
    only_left = set(left.names) - set(right.names)
    only_right = set(right.names) - set(left.names)
    if only_left or only_right:
        return {"only-left": tuple(sorted(only_left)),
                "only-right": tuple(sorted(only_right))}
    to_right = [right.id_of(name) for name in left.names]
    for i in range(left.n):
        for j in range(left.n):
            if left.leq(i, j) != right.leq(to_right[i], to_right[j]):
                return {"x": left.names[i], "y": left.names[j], "reason": "order"}
    if (left.inv is None) != (right.inv is None):
        return {"reason": "involution present on one side only"}
    if left.inv is not None:
        for i in range(left.n):
            if to_right[left.inv[i]] != right.inv[to_right[i]]:
                return {"x": left.names[i], "reason": "involution"}
    return None


def dm_hsum_isomorphism(parts: Sequence[FinitePoset],
                        max_closed_sets: int = DEFAULT_MAX_CLOSED_SETS) -> CheckReport:
    """Completion of a horizontal sum against the horizontal sum of the
    parts' completions, compared edge for edge.

    Closed-set names make the expected bijection explicit: a proper
    closed set of the sum lies inside a single part and is named after
    the same maximal elements as the matching closed set of that part.
    """
    combined = complete(horizontal_sum(parts), max_closed_sets).as_poset()
    summed = horizontal_sum([complete(p, max_closed_sets).as_poset() for p in parts])
    witness = _labeled_diff(combined, summed)
    return CheckReport("dm-hsum-isomorphism", witness is None, witness=witness,
                       extra={"closed-sets": str(combined.n)})


# -- small poset generation ------------------------------------------------


def _labeled_middle_posets(k: int) -> Iterator[list[int]]:
    """All labeled strict orders on k points, one new point at a time:
    the down-set/up-set pair of the new point must already be fully
    related for the extension to stay transitive."""

    def extend(strict: list[int], size: int) -> Iterator[list[int]]:
        if size == k:
            yield strict
            return
        below = [0] * size
        for i in range(size):
            for j in bits(strict[i]):
                below[j] |= 1 << i
        full = (1 << size) - 1
        downs = [a for a in range(full + 1)
                 if all(below[i] & ~a == 0 for i in bits(a))]
        ups = [b for b in range(full + 1)
               if all(strict[i] & ~b == 0 for i in bits(b))]
        for a in downs:
            for b in ups:
                if a & b:
                    continue
                if any(b & ~strict[i] for i in bits(a)):
                    continue
                rows = [row | (1 << size if (a >> i) & 1 else 0)
                        for i, row in enumerate(strict)]
                rows.append(b)
                yield from extend(rows, size + 1)

    yield from extend([], 0)


def _involutive_middle_maps(strict: list[int]) -> Iterator[dict[int, int]]:
    """Order-reversing involutions of the strict middle order, fixed
    points allowed."""
    k = len(strict)

    def antitone(sigma: dict[int, int]) -> bool:
        for i in range(k):
            for j in bits(strict[i]):
                if not (strict[sigma[j]] >> sigma[i]) & 1:
                    return False
        return True

    def pairings(remaining: tuple[int, ...]) -> Iterator[dict[int, int]]:
        if not remaining:
            yield {}
            return
        head, rest = remaining[0], remaining[1:]
        for sub in pairings(rest):
            yield {head: head, **sub}
        for pos, partner in enumerate(rest):
            for sub in pairings(rest[:pos] + rest[pos + 1:]):
                yield {head: partner, partner: head, **sub}

    for sigma in pairings(tuple(range(k))):
        if antitone(sigma):
            yield sigma


def _assemble(strict: list[int], sigma: dict[int, int]) -> FinitePoset:
    k = len(strict)
    letters = "abcdefghij"
    names = ("0",) + tuple(letters[i] for i in range(k)) + ("1",)
    n = k + 2
    up = [0] * n
    up[0] = (1 << n) - 1
    up[n - 1] = 1 << (n - 1)
    for i in range(k):
        row = (1 << (i + 1)) | (1 << (n - 1))
        for j in bits(strict[i]):
            row |= 1 << (j + 1)
        up[i + 1] = row
    inv = [0] * n
    inv[0], inv[n - 1] = n - 1, 0
    for i in range(k):
        inv[i + 1] = sigma[i] + 1
    return FinitePoset(names, tuple(up), tuple(inv))


def _canonical_signature(poset: FinitePoset) -> tuple:
    bottom, top = poset.require_bounds()
    inv = poset.require_involution()
    middles = [i for i in range(poset.n) if i not in (bottom, top)]

    def invariant(i: int):
        return (popcount(poset.down[i]), popcount(poset.up[i]),
                popcount(poset.down[inv[i]]), inv[i] == i)

    middles.sort(key=lambda i: (invariant(i), i))
    groups = [list(g) for _, g in itertools.groupby(middles, key=invariant)]
    best = None
    for combo in itertools.product(*[itertools.permutations(g) for g in groups]):
        layout = [bottom] + [i for g in combo for i in g] + [top]
        place = {old: new for new, old in enumerate(layout)}
        rel = 0
        for a in layout:
            for b in bits(poset.up[a]):
                rel |= 1 << (place[a] * poset.n + place[b])
        sig = (rel, tuple(place[inv[a]] for a in layout))
        if best is None or sig < best:
            best = sig
    return (poset.n, *best)


def _passes(poset: FinitePoset, constraint: str) -> bool:
    if constraint == "any":
        return True
    if constraint == "complemented":
        return is_complementation(poset).holds
    if constraint == "pseudo_om":
        return is_complementation(poset).holds and is_pseudo_orthomodular(poset).holds
    raise ValueError(f"unknown constraint {constraint!r}")


def _random_structure(rng: random.Random, size: int, constraint: str) -> FinitePoset:
    k = size - 2
    if k == 0:
        return _assemble([], {})
    if constraint in ("complemented", "pseudo_om"):
        # half order plus its dual: complemented for every draw, with
        # symmetric cross relations sprinkled in when they survive the
        # checker
        half = k // 2
        for _ in range(12):
            strict = _random_strict_order(rng, half)
            rows = [0] * k
            for i in range(half):
                rows[i] = strict[i]
                # dual copy occupies ids half..k-1
                for j in range(half):
                    if (strict[j] >> i) & 1:
                        rows[half + i] |= 1 << (half + j)
            sigma = {i: half + i for i in range(half)}
            sigma.update({half + i: i for i in range(half)})
            if rng.random() < 0.5 and half > 1:
                x, y = rng.sample(range(half), 2)
                rows[x] |= 1 << (half + y)
                rows[y] |= 1 << (half + x)
                rows = _transitive_closure(rows)
            try:
                candidate = _assemble(rows, sigma)
            except PosetError:
                continue
            if _passes(candidate, constraint):
                return candidate
        # the MO-style antichain satisfies both orthogonality constraints
        fallback = _assemble([0] * k, {i: (i + half) % k for i in range(k)})
        assert _passes(fallback, constraint)
        return fallback
    for _ in range(12):
        strict = _random_strict_order(rng, k)
        sigmas = list(itertools.islice(_involutive_middle_maps(strict), 400))
        if sigmas:
            return _assemble(strict, rng.choice(sigmas))
    return _assemble([0] * k, {i: i for i in range(k)})


def _random_strict_order(rng: random.Random, k: int) -> list[int]:
    perm = rng.sample(range(k), k)
    rows = [1 << i for i in range(k)]
    density = rng.uniform(0.05, 0.5)
    for a in range(k):
        for b in range(a + 1, k):
            if rng.random() < density:
                rows[perm[a]] |= 1 << perm[b]
    rows = _transitive_closure(rows)
    return [rows[i] & ~(1 << i) for i in range(k)]


def generate_small(n: int, constraint: str = "any", *,
                   seed: int | None = None,
                   exhaustive: bool = False) -> Iterator[FinitePoset]:
    """Bounded posets with antitone involution, at most n elements.

    Exhaustive mode streams every structure up to isomorphism (sizes
    2..n, canonical-form deduplication); random mode is an endless
    seed-deterministic stream.  ``constraint`` filters by checker:
    "complemented" or "pseudo_om" or "any".
    """
    if constraint not in ("any", "complemented", "pseudo_om"):
        raise ValueError(f"unknown constraint {constraint!r}")
    if exhaustive:
        if n > EXHAUSTIVE_SIZE_CAP:
            raise SizeLimitExceeded(
                f"exhaustive generation is capped at {EXHAUSTIVE_SIZE_CAP} elements")
        yield from _exhaustive(n, constraint)
        return
    if n > RANDOM_SIZE_CAP:
        raise SizeLimitExceeded(
            f"random generation is capped at {RANDOM_SIZE_CAP} elements")
    if seed is None:
        raise ValueError("random mode needs a seed")
    rng = random.Random(seed)
    even_only = constraint in ("complemented", "pseudo_om")
    sizes = [m for m in range(2, n + 1) if not (even_only and m % 2)]
    if not sizes:
        return
    while True:
        yield _random_structure(rng, rng.choice(sizes), constraint)


def _exhaustive(n: int, constraint: str) -> Iterator[FinitePoset]:
    seen = set()
    for size in range(2, n + 1):
        for strict in _labeled_middle_posets(size - 2):
            for sigma in _involutive_middle_maps(strict):
                candidate = _assemble(strict, sigma)
                signature = _canonical_signature(candidate)
                if signature in seen:
                    continue
                seen.add(signature)
                if _passes(candidate, constraint):
                    yield candidate

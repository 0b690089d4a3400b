"""Bounded fixpoint closure of diagram sets under the four diagram operations.

The engine works on flat integer tuples for speed and wraps results into
Partition values at the API boundary.  Every member carries a derivation
record, so membership answers are sound; a diagram that is not found is
only "unknown at these bounds".
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .partition import (
    Partition,
    PartitionError,
    make_named,
    parse,
    render,
)

# a diagram key is (n_upper, block ids of all points, upper row first)
Key = tuple[int, ...]


def _canon(k: int, blocks) -> tuple[Key, int]:
    """Relabel block ids in reading order; returns (key, block count)."""
    relabel: dict[int, int] = {}
    out = [k]
    nxt = 0
    for b in blocks:
        r = relabel.get(b, -1)
        if r < 0:
            r = relabel[b] = nxt
            nxt += 1
        out.append(r)
    return tuple(out), nxt


def _key(p: Partition) -> Key:
    return (p.n_upper,) + p.upper + p.lower


def _part(key: Key) -> Partition:
    k = key[0]
    return Partition(key[1:1 + k], key[1 + k:])


def _size(key: Key) -> int:
    return len(key) - 1


@dataclass
class CategoryApprox:
    """Closure approximation with derivation records.

    `records` covers the whole working set (diagrams up to W points);
    `members` is the reported view up to B points.
    """

    generators: tuple[Partition, ...]
    point_bound: int
    work_bound: int
    cap: int
    records: dict = field(repr=False)
    saturated: bool = False
    stats: dict = field(default_factory=dict)

    @property
    def members(self) -> list[Partition]:
        out = [_part(k) for k in self.records if _size(k) <= self.point_bound]
        out.sort(key=lambda p: (p.n_points, p.upper, p.lower))
        return out

    def member_count(self) -> int:
        return sum(1 for k in self.records if _size(k) <= self.point_bound)

    def __contains__(self, p: Partition) -> bool:
        return _key(p) in self.records

    def contains(self, p: Partition) -> str:
        """'yes' (a certificate exists) or 'unknown' at these bounds."""
        return "yes" if _key(p) in self.records else "unknown"

    def certificate(self, p: Partition) -> list[str] | None:
        """Replayable derivation of p, one operation per line."""
        key = _key(p)
        if key not in self.records:
            return None
        steps: list[str] = []
        seen: dict[Key, str] = {}

        def walk(k: Key) -> str:
            if k in seen:
                return seen[k]
            rec = self.records[k]
            name = render(_part(k))
            op = rec[0]
            if op in ("generator", "base"):
                steps.append(f"{name} = {op} {rec[1]}")
            elif op == "inv":
                steps.append(f"{name} = involution({walk(rec[1])})")
            elif op == "rot":
                steps.append(f"{name} = rotate({walk(rec[1])}, {rec[2]}, {rec[3]})")
            elif op == "tensor":
                steps.append(f"{name} = tensor({walk(rec[1])}, {walk(rec[2])})")
            else:
                steps.append(f"{name} = compose({walk(rec[1])}, {walk(rec[2])})")
            seen[k] = name
            return name

        walk(key)
        return steps

    def replay(self, p: Partition) -> bool:
        """Recompute the derivation of p and check it lands on p."""
        from . import partition as pt

        key = _key(p)
        if key not in self.records:
            return False
        memo: dict[Key, Partition] = {}

        def build(k: Key) -> Partition:
            if k in memo:
                return memo[k]
            rec = self.records[k]
            op = rec[0]
            if op in ("generator", "base"):
                got = parse(rec[1])
            elif op == "inv":
                got = pt.involution(build(rec[1]))
            elif op == "rot":
                got = pt.rotate(build(rec[1]), rec[2], rec[3])
            elif op == "tensor":
                got = pt.tensor(build(rec[1]), build(rec[2]))
            else:
                got, _ = pt.compose(build(rec[1]), build(rec[2]))
            if _key(got) != k:
                raise PartitionError(f"certificate replay mismatch at {render(_part(k))}")
            memo[k] = got
            return got

        return build(key) == p


BASE_DIAGRAMS = ("empty", "pair", "unit")


def closure(
    generators,
    point_bound: int = 8,
    work_bound: int = 12,
    cap: int = 400_000,
    stop_targets=None,
) -> CategoryApprox:
    """Generate the bounded closure of `generators`.

    Diagrams up to `work_bound` points form the working set; the reported
    members are those up to `point_bound` points.  The pair and unit
    diagrams (and the empty diagram) are always seeded.  When every
    diagram in `stop_targets` has been found the search stops early and
    the result is flagged unsaturated.
    """
    if work_bound < point_bound:
        raise PartitionError("work bound must be at least the point bound")
    gens = tuple(generators)
    records: dict[Key, tuple] = {}
    nblocks: dict[Key, int] = {}
    pending: list[tuple[int, Key]] = []
    push = heapq.heappush
    targets = set()
    if stop_targets:
        targets = {_key(t) for t in stop_targets}
    remaining = set(targets)

    def add(key_nb: tuple[Key, int], rec: tuple):
        key, nb = key_nb
        if key in records:
            return
        records[key] = rec
        nblocks[key] = nb
        push(pending, (len(key) - 1, key))
        remaining.discard(key)

    for name in BASE_DIAGRAMS:
        base = make_named(name)
        add((_key(base), base.n_blocks), ("base", render(base)))
    for g in gens:
        if g.n_points > work_bound:
            raise PartitionError(f"generator {render(g)} exceeds the work bound")
        add((_key(g), g.n_blocks), ("generator", render(g)))

    by_size: dict[int, list[Key]] = {}
    by_upper: dict[int, list[Key]] = {}
    by_lower: dict[int, list[Key]] = {}
    capped = False
    stopped = False

    while pending:
        if len(records) >= cap:
            capped = True
            break
        if targets and not remaining:
            stopped = True
            break
        size, key = heapq.heappop(pending)
        k = key[0]
        up = key[1:1 + k]
        lo = key[1 + k:]
        l = size - k
        nb = nblocks[key]

        # unary moves first: they preserve the point count
        add(_canon(l, lo + up), ("inv", key))
        if up:
            add(_canon(k - 1, up[1:] + (up[0],) + lo), ("rot", key, "left", "down"))
            add(_canon(k - 1, up[:-1] + lo + (up[-1],)), ("rot", key, "right", "down"))
        if lo:
            add(_canon(k + 1, (lo[0],) + up + lo[1:]), ("rot", key, "left", "up"))
            add(_canon(k + 1, up + (lo[-1],) + lo[:-1]), ("rot", key, "right", "up"))

        # tensor against everything processed, small enough to fit
        budget = work_bound - size
        if size:
            for s2 in by_size:
                if s2 > budget or s2 == 0:
                    continue
                for other in by_size[s2]:
                    ko = other[0]
                    oup, olo = other[1:1 + ko], other[1 + ko:]
                    onb = nblocks[other]
                    add(
                        _canon(k + ko, up + tuple(b + nb for b in oup) + lo
                               + tuple(b + nb for b in olo)),
                        ("tensor", key, other),
                    )
                    add(
                        _canon(ko + k, oup + tuple(b + onb for b in up) + olo
                               + tuple(b + onb for b in lo)),
                        ("tensor", other, key),
                    )
            if size * 2 <= work_bound:
                add(
                    _canon(2 * k, up + tuple(b + nb for b in up) + lo
                           + tuple(b + nb for b in lo)),
                    ("tensor", key, key),
                )

        # compose: key on top of partners whose upper row matches key's lower
        for other in by_upper.get(l, ()):
            if k + (len(other) - 1 - other[0]) <= work_bound:
                add(_compose(other, key, nblocks[other], nb), ("compose", other, key))
        # compose: key under partners whose lower row matches key's upper
        for other in by_lower.get(k, ()):
            if other[0] + l <= work_bound:
                add(_compose(key, other, nb, nblocks[other]), ("compose", key, other))
        if k == l and k + l <= work_bound:
            add(_compose(key, key, nb, nb), ("compose", key, key))

        by_size.setdefault(size, []).append(key)
        by_upper.setdefault(k, []).append(key)
        by_lower.setdefault(l, []).append(key)

    return CategoryApprox(
        generators=gens,
        point_bound=point_bound,
        work_bound=work_bound,
        cap=cap,
        records=records,
        saturated=not pending and not capped and not stopped,
        stats={
            "work_set": len(records),
            "capped": capped,
            "stopped_on_targets": stopped,
        },
    )


def _compose(bot: Key, top: Key, nbot: int, ntop: int) -> tuple[Key, int]:
    """Glue top's lower row onto bot's upper row; returns (key, blocks)."""
    tk = top[0]
    bk = bot[0]
    parent = list(range(ntop + nbot))
    i = 1 + tk
    j = 1
    for idx in range(len(top) - i):
        a = top[i + idx]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = ntop + bot[j + idx]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[a] = b
    relabel: dict[int, int] = {}
    out = [tk]
    nxt = 0
    for b in top[1:i]:
        while parent[b] != b:
            b = parent[b]
        c = relabel.get(b, -1)
        if c < 0:
            c = relabel[b] = nxt
            nxt += 1
        out.append(c)
    for b in bot[1 + bk:]:
        b += ntop
        while parent[b] != b:
            b = parent[b]
        c = relabel.get(b, -1)
        if c < 0:
            c = relabel[b] = nxt
            nxt += 1
        out.append(c)
    return tuple(out), nxt


# ---------------------------------------------------------------------------
# Predicates


def contains(c: CategoryApprox, p: Partition) -> str:
    if p.n_points > c.point_bound:
        raise PartitionError("query diagram exceeds the point bound")
    return c.contains(p)


def is_hyperoctahedral_at_bound(c: CategoryApprox) -> str:
    """'no' is certified by the two-point double singleton; 'yes' needs
    the four block found and the double singleton absent at saturation."""
    if make_named("doubleton") in c:
        return "no"
    if make_named("fourblock") in c and c.saturated:
        return "yes"
    return "unknown"


def is_simplifiable_at_bound(c: CategoryApprox) -> str:
    return "yes" if make_named("primary") in c else "unknown"


def single_leg_members(c: CategoryApprox) -> list[Partition]:
    from .partition import is_single_leg

    return [p for p in c.members if p.n_points and is_single_leg(p) and p.n_upper == 0]


def connectability_check(c: CategoryApprox, neighbouring_only: bool = False,
                         max_points: int | None = None) -> dict:
    """Merge block pairs of every member and report merges that fall
    outside the member set.

    Only applicable when the four block (neighbouring merges) or the pair
    shifter (arbitrary merges) has been found; otherwise the check is
    vacuous and reports no violations.
    """
    from .partition import connect_blocks

    needed = "fourblock" if neighbouring_only else "primary"
    if make_named(needed) not in c:
        return {"applicable": False, "checked": 0, "violations": []}
    bound = max_points if max_points is not None else c.point_bound
    checked = 0
    violations: list[tuple[str, int, int]] = []
    for p in c.members:
        if p.n_points > bound:
            continue
        for b1, b2 in itertools.combinations(range(p.n_blocks), 2):
            if neighbouring_only and not _are_neighbouring(p, b1, b2):
                continue
            checked += 1
            q = connect_blocks(p, b1, b2)
            if q not in c:
                violations.append((render(p), b1, b2))
    return {"applicable": True, "checked": checked, "violations": violations}


def _are_neighbouring(p: Partition, b1: int, b2: int) -> bool:
    walk = p.clockwise()
    n = len(walk)
    return any({walk[i], walk[(i + 1) % n]} == {b1, b2} for i in range(n))

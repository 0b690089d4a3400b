"""Two-row set-partition diagrams and their diagram operations.

A diagram has k upper and l lower points, both rows stored left to right,
grouped into blocks.  Canonical block ids are assigned in reading order
(upper row, then lower row); the text form is ``<upper>:<lower>`` with one
letter per point.  Word extraction walks the boundary clockwise instead:
upper row left to right, then lower row right to left.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .words import Z2Word, reduce_z2

LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


class PartitionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    """An immutable diagram; `upper` and `lower` hold canonical block ids."""

    upper: tuple[int, ...] = ()
    lower: tuple[int, ...] = ()

    @staticmethod
    def from_rows(upper, lower) -> "Partition":
        """Build from arbitrary block labels, relabelling canonically."""
        relabel: dict = {}
        out = []
        for row in (upper, lower):
            ids = []
            for b in row:
                if b not in relabel:
                    relabel[b] = len(relabel)
                ids.append(relabel[b])
            out.append(tuple(ids))
        return Partition(out[0], out[1])

    @property
    def n_upper(self) -> int:
        return len(self.upper)

    @property
    def n_lower(self) -> int:
        return len(self.lower)

    @property
    def n_points(self) -> int:
        return len(self.upper) + len(self.lower)

    @property
    def n_blocks(self) -> int:
        m = -1
        for b in self.upper + self.lower:
            if b > m:
                m = b
        return m + 1

    def blocks(self) -> list[list[tuple[str, int]]]:
        """Points of each block as (row, index) with rows 'u'/'l'."""
        out: list[list[tuple[str, int]]] = [[] for _ in range(self.n_blocks)]
        for i, b in enumerate(self.upper):
            out[b].append(("u", i))
        for i, b in enumerate(self.lower):
            out[b].append(("l", i))
        return out

    def block_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.n_blocks
        for b in self.upper + self.lower:
            sizes[b] += 1
        return tuple(sizes)

    def clockwise(self) -> tuple[int, ...]:
        """Block ids along the clockwise boundary walk."""
        return self.upper + tuple(reversed(self.lower))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Partition({render(self)!r})"


EMPTY = Partition()


# ---------------------------------------------------------------------------
# Text form


def render(p: Partition) -> str:
    if p.n_blocks > len(LETTERS):
        raise PartitionError("more blocks than letters in the text alphabet")
    up = "".join(LETTERS[b] for b in p.upper)
    lo = "".join(LETTERS[b] for b in p.lower)
    return f"{up}:{lo}"


def parse(text: str) -> Partition:
    """Parse ``<upper>:<lower>``; equal letters mean one block."""
    text = text.strip()
    if text.count(":") != 1:
        raise PartitionError(f"partition text needs exactly one ':': {text!r}")
    up, lo = text.split(":")
    for c in up + lo:
        if c not in LETTERS:
            raise PartitionError(f"bad letter {c!r} in {text!r}")
    return Partition.from_rows(tuple(up), tuple(lo))


# ---------------------------------------------------------------------------
# Named diagrams


def make_named(name: str, s_or_l: int | None = None) -> Partition:
    """Return a named diagram; `h` and `k` take an integer parameter."""
    key = name.lower().replace("-", "").replace("_", "")
    if key in ("h", "hs"):
        if s_or_l is None or s_or_l < 1:
            raise PartitionError("h requires an integer parameter >= 1")
        return parse(":" + "ab" * s_or_l)
    if key in ("k", "kl"):
        if s_or_l is None or s_or_l < 1:
            raise PartitionError("k requires an integer parameter >= 1")
        l = s_or_l
        # four block on the outer columns, a vertical pair on each inner one
        upper = [0] + list(range(1, l + 1)) + [0]
        lower = [0] + list(range(1, l + 1)) + [0]
        return Partition.from_rows(upper, lower)
    if s_or_l is not None:
        raise PartitionError(f"{name!r} takes no parameter")
    fixed = {
        "empty": ":",
        "singleton": ":a",
        "doubleton": ":ab",
        "doublesingleton": ":ab",
        "pair": ":aa",
        "unit": "a:a",
        "identity": "a:a",
        "fourblock": ":aaaa",
        "crossing": "ab:ba",
        "halflib": "abc:cba",
        "halfliberating": "abc:cba",
        "fatcross": "aabb:bbaa",
        "primary": "aab:baa",
    }
    if key not in fixed:
        raise PartitionError(f"unknown partition name {name!r}")
    return parse(fixed[key])


# ---------------------------------------------------------------------------
# Category operations


def tensor(p: Partition, q: Partition) -> Partition:
    """Horizontal juxtaposition with disjoint blocks."""
    shift = p.n_blocks
    return Partition.from_rows(
        p.upper + tuple(b + shift for b in q.upper),
        p.lower + tuple(b + shift for b in q.lower),
    )


def compose(p: Partition, q: Partition) -> tuple[Partition, int]:
    """Stack q on top of p and erase the glued middle row.

    q has l lower points, p has l upper points; the result keeps q's upper
    row and p's lower row.  Also returns the number of join-blocks that
    lived entirely on the middle row.
    """
    l = q.n_lower
    if l != p.n_upper:
        raise PartitionError(
            f"cannot compose: q has {q.n_lower} lower points, p has {p.n_upper} upper"
        )
    nq, np_ = q.n_blocks, p.n_blocks
    parent = list(range(nq + np_))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(l):
        a, b = find(q.lower[i]), find(nq + p.upper[i])
        if a != b:
            parent[a] = b

    upper = tuple(find(b) for b in q.upper)
    lower = tuple(find(nq + b) for b in p.lower)
    middle = {find(b) for b in q.lower}
    loops = len(middle - set(upper) - set(lower))
    return Partition.from_rows(upper, lower), loops


def involution(p: Partition) -> Partition:
    """Swap the two rows."""
    return Partition.from_rows(p.lower, p.upper)


def rotate(p: Partition, side: str, direction: str) -> Partition:
    """Move one outer point to the other row, keeping block membership.

    `side` is "left"/"right", `direction` is "up"/"down"; the source row
    must be nonempty.
    """
    if side not in ("left", "right") or direction not in ("up", "down"):
        raise PartitionError(f"bad rotation {side!r}/{direction!r}")
    if direction == "down":
        if not p.upper:
            raise PartitionError("no upper point to rotate down")
        if side == "left":
            return Partition.from_rows(p.upper[1:], (p.upper[0],) + p.lower)
        return Partition.from_rows(p.upper[:-1], p.lower + (p.upper[-1],))
    if not p.lower:
        raise PartitionError("no lower point to rotate up")
    if side == "left":
        return Partition.from_rows((p.lower[0],) + p.upper, p.lower[1:])
    return Partition.from_rows(p.upper + (p.lower[-1],), p.lower[:-1])


def to_one_row(p: Partition) -> Partition:
    """Rotate all upper points down on the right."""
    while p.n_upper:
        p = rotate(p, "right", "down")
    return p


def cyclic_shift(p: Partition) -> Partition:
    """One-row diagrams only: move the leftmost point around to the right."""
    if p.n_upper:
        raise PartitionError("cyclic shift is defined on one-row diagrams")
    if not p.lower:
        return p
    return rotate(rotate(p, "left", "up"), "right", "down")


def rotation_orbit(p: Partition) -> set[Partition]:
    """All diagrams reachable from p by the four one-point moves."""
    one = to_one_row(p)
    orbit: set[Partition] = set()
    cur = one
    for _ in range(max(1, one.n_points)):
        q = cur
        orbit.add(q)
        for _ in range(q.n_points):
            q = rotate(q, "right", "up")
            orbit.add(q)
        cur = cyclic_shift(cur)
    return orbit


def connect_blocks(p: Partition, b1, b2) -> Partition:
    """Merge two blocks of p into one."""
    ids = []
    for b in (b1, b2):
        if isinstance(b, str):
            if b not in LETTERS:
                raise PartitionError(f"unknown block id {b!r}")
            b = LETTERS.index(b)
        if not 0 <= b < p.n_blocks:
            raise PartitionError(f"unknown block id {b!r}")
        ids.append(b)
    if ids[0] == ids[1]:
        raise PartitionError("cannot connect a block with itself")
    lo, hi = min(ids), max(ids)
    repl = lambda b: lo if b == hi else b
    return Partition.from_rows(tuple(map(repl, p.upper)), tuple(map(repl, p.lower)))


# ---------------------------------------------------------------------------
# Words of diagrams


@dataclass(frozen=True)
class BlockWord:
    """A one-row diagram as a word with letter multiplicities."""

    syllables: tuple[tuple[int, int], ...]
    length: int

    def __str__(self) -> str:
        return "".join(
            LETTERS[a] if k == 1 else f"{LETTERS[a]}^{k}" for a, k in self.syllables
        )


def block_word(p: Partition) -> BlockWord:
    """Group the lower row of a one-row diagram into maximal runs."""
    if p.n_upper:
        raise PartitionError("block_word needs a diagram without upper points")
    sylls: list[tuple[int, int]] = []
    for b in p.lower:
        if sylls and sylls[-1][0] == b:
            sylls[-1] = (b, sylls[-1][1] + 1)
        else:
            sylls.append((b, 1))
    return BlockWord(tuple(sylls), p.n_points)


def word_of(p: Partition, labelling=None) -> Z2Word:
    """Reduced image of the clockwise boundary word.

    With no labelling the result is relabelled by first occurrence after
    reduction, so two diagrams get equal words exactly when their words
    agree under some distinct-letter labellings.  An explicit labelling
    maps block ids to letter indices, is applied literally, and need not
    be injective.
    """
    walk = p.clockwise()
    if labelling is not None:
        return reduce_z2(labelling[b] for b in walk)
    reduced = reduce_z2(b + 1 for b in walk)
    order: dict[int, int] = {}
    out = []
    for a in reduced.letters:
        r = order.get(a)
        if r is None:
            r = order[a] = len(order) + 1
        out.append(r)
    return Z2Word(tuple(out))


# ---------------------------------------------------------------------------
# Simplification to single-leg form


def simplify_word(word: str) -> str:
    """One parity pass on a letter word: even runs vanish, odd runs shrink to 1."""
    out = []
    for ch, run in itertools.groupby(word):
        if len(list(run)) % 2 == 1:
            out.append(ch)
    return "".join(out)


def _parity_pass(row: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    for b, run in itertools.groupby(row):
        if len(list(run)) % 2 == 1:
            out.append(b)
    return tuple(out)


def is_single_leg(p: Partition) -> bool:
    """True when no two consecutive points of the one-row form share a block."""
    row = to_one_row(p).lower
    return all(a != b for a, b in zip(row, row[1:]))


def simplify(p: Partition) -> Partition:
    """Iterate the parity reduction down to a single-leg or empty diagram."""
    row = to_one_row(p).lower
    while True:
        new = _parity_pass(row)
        if new == row:
            break
        row = new
    return Partition.from_rows((), row)


def equivalent(p: Partition, q: Partition) -> bool:
    """Same single-leg representative up to relabelling."""
    return simplify(p) == simplify(q)


# ---------------------------------------------------------------------------
# Crossings


def is_noncrossing(p: Partition) -> bool:
    """No two blocks interleave in the clockwise circular order."""
    walk = p.clockwise()
    positions: dict[int, list[int]] = {}
    for i, b in enumerate(walk):
        positions.setdefault(b, []).append(i)
    blocks = sorted(positions)
    for x, y in itertools.combinations(blocks, 2):
        xs = positions[x]
        # arc index of position t: how many x-points precede it
        arcs = set()
        for t in positions[y]:
            lo, hi = 0, len(xs)
            while lo < hi:
                mid = (lo + hi) // 2
                if xs[mid] < t:
                    lo = mid + 1
                else:
                    hi = mid
            arcs.add(lo % len(xs))
        if len(arcs) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Enumeration helpers


def set_partitions(n: int):
    """Yield all set partitions of n points as restricted-growth tuples."""
    if n == 0:
        yield ()
        return
    word = [0] * n

    def rec(i: int, maxb: int):
        if i == n:
            yield tuple(word)
            return
        for b in range(maxb + 2):
            word[i] = b
            yield from rec(i + 1, max(maxb, b))

    yield from rec(1, 0)


def all_partitions(max_points: int, *, one_row_only: bool = False):
    """Yield every canonical diagram with at most `max_points` points."""
    for n in range(max_points + 1):
        for rgs in set_partitions(n):
            if one_row_only:
                yield Partition.from_rows((), rgs)
            else:
                for k in range(n + 1):
                    yield Partition.from_rows(rgs[:k], rgs[k:])

"""Diagram-indexed tensor maps and relation checks on concrete matrices.

All arithmetic is exact integer arithmetic on numpy int64 arrays; checks
compare entrywise with zero tolerance.  Representations are square arrays
of symmetric partial-isometry matrices subject to the standard flags
(row and column squares summing to one, orthogonality within rows and
columns).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .partition import Partition, PartitionError, is_single_leg, make_named, to_one_row


class BudgetError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Index-compatibility function and sparse tensor maps


def delta(p: Partition, i, j) -> int:
    """1 when the indices are constant on every block, else 0."""
    i, j = tuple(i), tuple(j)
    if len(i) != p.n_upper or len(j) != p.n_lower:
        raise PartitionError("multi-index lengths do not match the diagram")
    value: dict[int, int] = {}
    for b, x in zip(p.upper + p.lower, i + j):
        if value.setdefault(b, x) != x:
            return 0
    return 1


@dataclass(frozen=True)
class SparseTensorMap:
    """0/1 map between tensor powers, stored as admissible index pairs."""

    n: int
    k_in: int
    l_out: int
    entries: frozenset  # pairs (output index tuple, input index tuple)

    def entry(self, j, i) -> int:
        return 1 if (tuple(j), tuple(i)) in self.entries else 0

    def __len__(self) -> int:
        return len(self.entries)


def T_of(p: Partition, n: int, budget: int = 10_000_000) -> SparseTensorMap:
    """The linear map of a diagram on an n-dimensional base space."""
    if n < 1:
        raise PartitionError("base dimension must be >= 1")
    if n ** max(p.n_points, 1) > budget:
        raise BudgetError("tensor map exceeds the work budget")
    entries = set()
    for values in itertools.product(range(n), repeat=p.n_blocks):
        i = tuple(values[b] for b in p.upper)
        j = tuple(values[b] for b in p.lower)
        entries.add((j, i))
    return SparseTensorMap(n=n, k_in=p.n_upper, l_out=p.n_lower,
                           entries=frozenset(entries))


def compose_tensor_maps(tp: SparseTensorMap, tq: SparseTensorMap) -> dict:
    """Integer-coefficient matrix of tp applied after tq."""
    if tp.n != tq.n or tp.k_in != tq.l_out:
        raise PartitionError("tensor maps are not composable")
    by_mid: dict[tuple, list] = {}
    for j, i in tq.entries:
        by_mid.setdefault(j, []).append(i)
    out: dict[tuple, int] = {}
    for j, mid in tp.entries:
        for i in by_mid.get(mid, ()):
            out[(j, i)] = out.get((j, i), 0) + 1
    return out


def equals_scaled_map(coeffs: dict, t: SparseTensorMap, scale: int) -> bool:
    """coeffs == scale * t, entrywise over all index pairs."""
    support = {pair for pair, c in coeffs.items() if c}
    if support != set(t.entries):
        return False
    return all(coeffs[pair] == scale for pair in support)


# ---------------------------------------------------------------------------
# Concrete representations


@dataclass
class Representation:
    """An n-by-n family of integer matrices on a common carrier space."""

    n: int
    dim: int
    u: tuple  # n x n nested tuple of (dim x dim) int64 arrays

    def entry(self, i: int, j: int) -> np.ndarray:
        return self.u[i][j]

    def transpose_family(self) -> "Representation":
        return Representation(
            self.n, self.dim,
            tuple(tuple(self.u[j][i] for j in range(self.n)) for i in range(self.n)),
        )


def _as_family(n: int, dim: int, mats) -> Representation:
    u = tuple(
        tuple(np.array(mats[i][j], dtype=np.int64).reshape(dim, dim)
              for j in range(n))
        for i in range(n)
    )
    return Representation(n=n, dim=dim, u=u)


def check_flags(rep: Representation) -> dict:
    """The symmetric partial-isometry flags, each with a witness on failure."""
    n, dim = rep.n, rep.dim
    eye = np.eye(dim, dtype=np.int64)
    report = {"self_adjoint": True, "squares_projections": True,
              "row_col_sums": True, "orthogonality": True, "witness": None}

    def fail(flag, witness):
        report[flag] = False
        if report["witness"] is None:
            report["witness"] = witness

    for i in range(n):
        for j in range(n):
            m = rep.u[i][j]
            if not np.array_equal(m, m.T):
                fail("self_adjoint", f"u[{i}][{j}] not symmetric")
            sq = m @ m
            if not np.array_equal(sq @ sq, sq) or not np.array_equal(sq, sq.T):
                fail("squares_projections", f"u[{i}][{j}]^2 not a projection")
    for i in range(n):
        if not np.array_equal(sum(rep.u[i][k] @ rep.u[i][k] for k in range(n)), eye):
            fail("row_col_sums", f"row {i} squares do not sum to one")
    for j in range(n):
        if not np.array_equal(sum(rep.u[k][j] @ rep.u[k][j] for k in range(n)), eye):
            fail("row_col_sums", f"column {j} squares do not sum to one")
    for k in range(n):
        for i, j in itertools.combinations(range(n), 2):
            if np.any(rep.u[i][k] @ rep.u[j][k]) or np.any(rep.u[k][i] @ rep.u[k][j]):
                fail("orthogonality", f"entries {i},{j} against {k}")
    report["ok"] = all(report[f] for f in
                       ("self_adjoint", "squares_projections", "row_col_sums", "orthogonality"))
    return report


def relation_check(rep: Representation, kind: str) -> bool:
    """Exhaustive index check of one of the four relation families.

    i: entries are symmetries with projection squares; ii: squares sum to
    one along rows and columns; iii: squares commute with squares;
    iv: squares commute with every entry.
    """
    flags = check_flags(rep)
    if kind == "i":
        return flags["self_adjoint"] and flags["squares_projections"]
    if kind == "ii":
        return flags["row_col_sums"]
    n = rep.n
    squares = [[rep.u[i][j] @ rep.u[i][j] for j in range(n)] for i in range(n)]
    if kind == "iii":
        return all(
            np.array_equal(squares[i][j] @ squares[k][l], squares[k][l] @ squares[i][j])
            for i in range(n) for j in range(n) for k in range(n) for l in range(n)
        )
    if kind == "iv":
        return all(
            np.array_equal(squares[i][j] @ rep.u[k][l], rep.u[k][l] @ squares[i][j])
            for i in range(n) for j in range(n) for k in range(n) for l in range(n)
        )
    raise ValueError(f"unknown relation kind {kind!r}")


def intertwines(rep: Representation, p: Partition, budget: int = 10_000) -> bool:
    """Exact equality of the two composites of the diagram map with the
    tensor powers of the family."""
    flags = check_flags(rep)
    if not flags["ok"]:
        raise PartitionError(f"representation fails the basic flags: {flags['witness']}")
    n, dim = rep.n, rep.dim
    k, l = p.n_upper, p.n_lower
    if n ** max(k, l) > budget:
        raise BudgetError("intertwiner check exceeds the work budget")

    pairs = []  # admissible (i, j) with i upper, j lower
    for values in itertools.product(range(n), repeat=p.n_blocks):
        i = tuple(values[b] for b in p.upper)
        j = tuple(values[b] for b in p.lower)
        pairs.append((i, j))

    def product(row_idx, col_idx):
        m = np.eye(dim, dtype=np.int64)
        for r, c in zip(row_idx, col_idx):
            m = m @ rep.u[r][c]
        return m

    # left side: sum over admissible i of u_{i1 i'1} ... u_{ik i'k}
    lhs: dict[tuple, np.ndarray] = {}
    for i, j in pairs:
        for ip in itertools.product(range(n), repeat=k):
            key = (j, ip)
            m = product(i, ip)
            lhs[key] = m if key not in lhs else lhs[key] + m
    # right side: sum over admissible j' of u_{j1 j'1} ... u_{jl j'l}
    rhs: dict[tuple, np.ndarray] = {}
    for ip, jp in pairs:
        for j in itertools.product(range(n), repeat=l):
            key = (j, ip)
            m = product(j, jp)
            rhs[key] = m if key not in rhs else rhs[key] + m

    zero = np.zeros((dim, dim), dtype=np.int64)
    for j in itertools.product(range(n), repeat=l):
        for ip in itertools.product(range(n), repeat=k):
            a = lhs.get((j, ip), zero)
            b = rhs.get((j, ip), zero)
            if not np.array_equal(a, b):
                return False
    return True


# ---------------------------------------------------------------------------
# Built-in families


def counterexample_rep() -> Representation:
    """The 3-by-3 family separating the two commutation relation levels:
    squares commute with squares but not with every entry."""
    z = [[0] * 3 for _ in range(3)]
    swap12 = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    p1 = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
    p2 = [[0, 0, 0], [0, 1, 0], [0, 0, 0]]
    p3 = [[0, 0, 0], [0, 0, 0], [0, 0, 1]]
    p13 = [[1, 0, 0], [0, 0, 0], [0, 0, 1]]
    mats = [
        [swap12, p3, z],
        [p3, p1, p2],
        [z, p2, p13],
    ]
    return _as_family(3, 3, mats)


def diagonal_sign_rep(n: int, signs=None) -> Representation:
    """Diagonal family of one-dimensional signs; every relation holds."""
    if signs is None:
        signs = [1 if i % 2 == 0 else -1 for i in range(n)]
    mats = [[[[signs[i]]] if i == j else [[0]] for j in range(n)] for i in range(n)]
    return _as_family(n, 1, mats)


def _random_symmetry(rng, dim: int) -> np.ndarray:
    """Random signed symmetric permutation matrix with square one."""
    perm = list(range(dim))
    rng.shuffle(perm)
    # make the permutation involutive by composing cycles down to swaps
    invol = list(range(dim))
    used = set()
    for a in range(dim):
        if a in used:
            continue
        b = perm[a]
        if b == a or b in used:
            used.add(a)
            continue
        invol[a], invol[b] = b, a
        used.update((a, b))
    m = np.zeros((dim, dim), dtype=np.int64)
    for a in range(dim):
        b = invol[a]
        if b < a:
            continue
        s = rng.choice((-1, 1))
        m[a][b] = s
        m[b][a] = s
    return m


def random_signed_perm_rep(rng, n: int) -> Representation:
    """Random block family built from permutation rows of symmetries and,
    half the time for n = 3, a relabelled copy of the counterexample."""
    blocks: list[Representation] = []
    for _ in range(rng.randrange(1, 3)):
        perm = list(range(n))
        rng.shuffle(perm)
        dim = rng.randrange(1, 4)
        mats = [[np.zeros((dim, dim), dtype=np.int64) for _ in range(n)]
                for _ in range(n)]
        for i in range(n):
            mats[i][perm[i]] = _random_symmetry(rng, dim)
        blocks.append(Representation(n, dim, tuple(tuple(r) for r in mats)))
    if n == 3 and rng.random() < 0.5:
        base = counterexample_rep()
        rowp = list(range(3))
        colp = list(range(3))
        rng.shuffle(rowp)
        rng.shuffle(colp)
        mats = [[base.u[rowp[i]][colp[j]] for j in range(3)] for i in range(3)]
        blocks.append(Representation(3, 3, tuple(tuple(r) for r in mats)))
    return direct_sum(blocks)


def direct_sum(reps) -> Representation:
    reps = list(reps)
    n = reps[0].n
    if any(r.n != n for r in reps):
        raise PartitionError("direct sum needs a common family size")
    dim = sum(r.dim for r in reps)
    mats = []
    for i in range(n):
        row = []
        for j in range(n):
            m = np.zeros((dim, dim), dtype=np.int64)
            off = 0
            for r in reps:
                m[off:off + r.dim, off:off + r.dim] = r.u[i][j]
                off += r.dim
            row.append(m)
        mats.append(tuple(row))
    return Representation(n=n, dim=dim, u=tuple(mats))


# ---------------------------------------------------------------------------
# Word-level relation checks


def word_projection_check(rep: Representation, p: Partition, choice,
                          split: int | None = None) -> dict:
    """Substitute family entries for the letters of a single-leg word.

    `choice` maps each block id of the one-row form to an entry position
    (i, j).  Returns exact equalities: the substituted product against its
    range projection, and optionally the split form
    q a(1)..a(s) = q a(k)..a(s+1).
    """
    q = to_one_row(p)
    if not is_single_leg(q):
        raise PartitionError("word projection checks need a single-leg diagram")
    word = q.lower
    mats = [rep.u[choice[b][0]][choice[b][1]] for b in word]
    prod = np.eye(rep.dim, dtype=np.int64)
    for m in mats:
        prod = prod @ m
    proj = np.eye(rep.dim, dtype=np.int64)
    for m in mats:
        proj = proj @ (m @ m)
    out = {"product_equals_projection": bool(np.array_equal(prod, proj))}
    if split is not None:
        if not 1 <= split <= len(word):
            raise PartitionError("split position out of range")
        left = np.eye(rep.dim, dtype=np.int64)
        for m in mats[:split]:
            left = left @ m
        right = np.eye(rep.dim, dtype=np.int64)
        for m in reversed(mats[split:]):
            right = right @ m
        out["split_form"] = bool(np.array_equal(proj @ left, proj @ right))
    return out


def word_projection_all_choices(rep: Representation, p: Partition) -> dict:
    """Scan every entry assignment; reports the first failing choice."""
    q = to_one_row(p)
    nblocks = q.n_blocks
    failures = 0
    first_failure = None
    total = 0
    for combo in itertools.product(
            itertools.product(range(rep.n), repeat=2), repeat=nblocks):
        choice = dict(enumerate(combo))
        total += 1
        res = word_projection_check(rep, q, choice)
        if not res["product_equals_projection"]:
            failures += 1
            if first_failure is None:
                first_failure = choice
    return {"choices": total, "failures": failures, "first_failure": first_failure,
            "all_hold": failures == 0}


def transpose_symmetry_check(rep: Representation, diagrams=None) -> dict:
    """Relation flags and intertwiner answers are unchanged under
    transposing the family."""
    if diagrams is None:
        diagrams = [make_named("fourblock"), make_named("fatcross"),
                    make_named("primary")]
    t = rep.transpose_family()
    mismatches = []
    for kind in ("i", "ii", "iii", "iv"):
        if relation_check(rep, kind) != relation_check(t, kind):
            mismatches.append(f"relation {kind}")
    for p in diagrams:
        if intertwines(rep, p) != intertwines(t, p):
            mismatches.append(f"intertwiner {p}")
    return {"ok": not mismatches, "mismatches": mismatches}


# ---------------------------------------------------------------------------
# File format: n, dim, then n*n matrices row-major


def save_rep(rep: Representation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{rep.n} {rep.dim}\n")
        for i in range(rep.n):
            for j in range(rep.n):
                for row in rep.u[i][j]:
                    fh.write(" ".join(str(int(x)) for x in row) + "\n")


def load_rep(path: str) -> Representation:
    with open(path, encoding="utf-8") as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise PartitionError("representation file too short")
    n, dim = int(tokens[0]), int(tokens[1])
    need = 2 + n * n * dim * dim
    if len(tokens) != need:
        raise PartitionError(
            f"representation file has {len(tokens)} numbers, expected {need}")
    vals = [int(t) for t in tokens[2:]]
    mats = []
    pos = 0
    for _ in range(n):
        row = []
        for _ in range(n):
            block = np.array(vals[pos:pos + dim * dim], dtype=np.int64).reshape(dim, dim)
            row.append(block)
            pos += dim * dim
        mats.append(row)
    return _as_family(n, dim, mats)

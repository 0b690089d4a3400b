"""Both directions of the category/subgroup correspondence.

A diagram maps to the reduced image of its clockwise word; a category maps
to the set of all such images over all block labellings.  Conversely a
word subgroup pulls back to the diagrams whose word it accepts.  Exact
membership oracles cover the three classical example families; bounded
subgroup approximations cover everything else.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .closure import CategoryApprox, closure, is_simplifiable_at_bound
from .partition import (
    Partition,
    PartitionError,
    all_partitions,
    make_named,
    render,
    word_of,
)
from .words import (
    E,
    SubgroupApprox,
    WordError,
    Z2Word,
    abelianize,
    is_even,
    mult,
    reduce_z2,
    subgroup_closure,
    to_free,
)


def canonical_letters(w: Z2Word) -> Z2Word:
    """Relabel letters by first occurrence; the orbit representative under
    letter permutations."""
    order: dict[int, int] = {}
    out = []
    for a in w.letters:
        r = order.get(a)
        if r is None:
            r = order[a] = len(order) + 1
        out.append(r)
    return Z2Word(tuple(out))


@dataclass(frozen=True)
class MembershipOracle:
    """Word membership test: exact for the named kinds, sound for bounded.

    kinds: "trivial" (only the identity), "parity" (all free-basis
    exponents zero), "exponent" (all exponents divisible by s), and
    "bounded" (membership in a SubgroupApprox, yes/unknown only).  A
    letter_cap restricts to words over the first so-many letters.
    """

    kind: str
    s: int | None = None
    approx: SubgroupApprox | None = None
    letter_cap: int | None = None

    def decide(self, w: Z2Word) -> str:
        if self.letter_cap is not None and w.max_letter() > self.letter_cap:
            return "no"
        if self.kind == "trivial":
            return "yes" if w == E else "no"
        if self.kind in ("parity", "exponent"):
            if not is_even(w):
                return "no"
            vec = abelianize(to_free(w))
            mod = 1 if self.kind == "parity" else self.s
            if self.kind == "parity":
                return "yes" if all(e == 0 for e in vec) else "no"
            return "yes" if all(e % mod == 0 for e in vec) else "no"
        if self.kind == "bounded":
            # the stored sets are closed under letter permutations
            return "yes" if canonical_letters(w) in self.approx else "unknown"
        raise WordError(f"unknown oracle kind {self.kind!r}")

    def exact(self) -> bool:
        return self.kind in ("trivial", "parity", "exponent")

    def describe(self) -> str:
        base = f"exponent-{self.s}" if self.kind == "exponent" else self.kind
        if self.letter_cap is not None:
            base += f" (letters <= {self.letter_cap})"
        return base


def trivial_oracle() -> MembershipOracle:
    return MembershipOracle("trivial")


def parity_oracle() -> MembershipOracle:
    return MembershipOracle("parity")


def exponent_oracle(s: int) -> MembershipOracle:
    if s < 1:
        raise WordError("exponent oracle needs s >= 1")
    return MembershipOracle("exponent", s=s)


def bounded_oracle(approx: SubgroupApprox) -> MembershipOracle:
    return MembershipOracle("bounded", approx=approx)


# ---------------------------------------------------------------------------
# Words of a category


def _word_patterns(members) -> set[tuple[int, ...]]:
    pats = set()
    for p in members:
        walk = p.clockwise()
        order: dict[int, int] = {}
        for b in walk:
            order.setdefault(b, len(order))
        pats.add(tuple(order[b] for b in walk))
    return pats


def words_of_members(members, length_bound: int = 8, alphabet_bound: int = 4) -> set[Z2Word]:
    """Reduced images of member words under every block labelling.

    Non-injective labellings are admitted; they correspond to connecting
    blocks, which stays inside a simplifiable category.
    """
    words = {E}
    for pat in _word_patterns(members):
        nblocks = len(set(pat))
        if nblocks == 0:
            continue
        for img in itertools.product(range(1, alphabet_bound + 1), repeat=nblocks):
            w = reduce_z2(img[b] for b in pat)
            if len(w.letters) <= length_bound:
                words.add(w)
    return words


def F_of_category(c: CategoryApprox, length_bound: int = 8,
                  alphabet_bound: int = 4) -> SubgroupApprox:
    """Word subgroup approximation of a closure approximation.

    Refuses categories that are not known simplifiable at the bound or
    that contain the double singleton.
    """
    if make_named("doubleton") in c:
        raise PartitionError("category contains the double singleton; no word subgroup")
    if is_simplifiable_at_bound(c) != "yes":
        raise PartitionError("category not known simplifiable at this bound")
    words = words_of_members(c.members, length_bound, alphabet_bound)
    return SubgroupApprox(
        generators=(),
        length_bound=length_bound,
        semigroup="s0",
        alphabet_bound=alphabet_bound,
        elements=frozenset(words),
        witnesses={w: ("image of a member word", None) for w in words},
        saturated=c.saturated,
        even_only=all(is_even(w) for w in words),
    )


def reduced_words(length_bound: int, alphabet_bound: int):
    """All reduced involutive words up to the given bounds."""
    yield E
    stack: list[tuple[int, ...]] = [(a,) for a in range(alphabet_bound, 0, -1)]
    while stack:
        w = stack.pop()
        yield Z2Word(w)
        if len(w) < length_bound:
            for a in range(alphabet_bound, 0, -1):
                if a != w[-1]:
                    stack.append(w + (a,))


def subgroup_from_oracle(oracle: MembershipOracle, length_bound: int = 8,
                         alphabet_bound: int = 4) -> SubgroupApprox:
    """Slice an exact oracle to the word universe at the bounds."""
    if not oracle.exact():
        raise WordError("need an exact oracle")
    words = frozenset(
        w for w in reduced_words(length_bound, alphabet_bound)
        if oracle.decide(w) == "yes"
    )
    return SubgroupApprox(
        generators=(),
        length_bound=length_bound,
        semigroup="s0",
        alphabet_bound=alphabet_bound,
        elements=words,
        witnesses={w: (f"{oracle.describe()} oracle", None) for w in words},
        saturated=True,
        even_only=all(is_even(w) for w in words),
    )


# ---------------------------------------------------------------------------
# Categories of a subgroup


@dataclass
class CategoryPredicate:
    """Diagram membership induced by a word oracle.

    The distinct-letter word decides membership: the accepted subgroups
    are invariant under letter identifications, so non-injective
    labellings never accept more.
    """

    oracle: MembershipOracle
    point_bound: int

    def decide(self, p: Partition) -> str:
        if p.n_points > self.point_bound:
            raise PartitionError("diagram exceeds the point bound")
        return self.oracle.decide(word_of(p))

    def members(self) -> list[Partition]:
        return [
            p for p in all_partitions(self.point_bound)
            if self.oracle.decide(word_of(p)) == "yes"
        ]


def category_of_subgroup(oracle: MembershipOracle, point_bound: int = 8) -> CategoryPredicate:
    return CategoryPredicate(oracle=oracle, point_bound=point_bound)


# ---------------------------------------------------------------------------
# Round trips


def roundtrip_check(seed, point_bound: int = 8, length_bound: int = 8,
                    alphabet_bound: int = 4, work_bound: int = 10,
                    cap: int = 400_000, stop_targets=None) -> dict:
    """Check that the two directions invert each other as far as decided.

    `seed` is either an exact MembershipOracle or a list of generator
    diagrams.  The report lists every witness of disagreement.
    """
    disagreements: list[str] = []
    if isinstance(seed, MembershipOracle):
        cat = category_of_subgroup(seed, point_bound)
        # words of the induced category, computed from its member diagrams
        back = words_of_members(cat.members(), length_bound, alphabet_bound)
        for w in reduced_words(length_bound, alphabet_bound):
            want = seed.decide(w)
            got = "yes" if w in back else "no"
            if want != got:
                disagreements.append(f"word {w}: oracle {want}, roundtrip {got}")
        # diagram side: acceptance by the sliced subgroup matches the oracle
        sliced = bounded_oracle(subgroup_from_oracle(seed, length_bound, alphabet_bound))
        cat2 = category_of_subgroup(sliced, point_bound)
        for p in all_partitions(point_bound):
            want = cat.decide(p)
            got = cat2.decide(p)
            if (got == "yes") != (want == "yes"):
                disagreements.append(
                    f"diagram {render(p)}: oracle {want}, subgroup slice {got}")
        seed_desc = f"oracle {seed.describe()}"
        member_count = None
    else:
        gens = list(seed)
        c = closure(gens, point_bound, work_bound, cap, stop_targets=stop_targets)
        sub = F_of_category(c, length_bound, alphabet_bound)
        pred = category_of_subgroup(bounded_oracle(sub), point_bound)
        for p in c.members:
            if pred.decide(p) != "yes":
                disagreements.append(f"member {render(p)} rejected by its own word subgroup")
        back = words_of_members(pred.members(), length_bound, alphabet_bound)
        if back != set(sub.elements):
            for w in sorted(back.symmetric_difference(sub.elements)):
                disagreements.append(f"word set changed on the second pass: {w}")
        seed_desc = "generators " + ", ".join(render(g) for g in gens)
        member_count = c.member_count()
    return {
        "seed": seed_desc,
        "point_bound": point_bound,
        "length_bound": length_bound,
        "alphabet_bound": alphabet_bound,
        "member_count": member_count,
        "disagreements": disagreements,
        "ok": not disagreements,
    }


# ---------------------------------------------------------------------------
# Restriction to finitely many letters


def restrict_to_n(obj, n: int):
    """Keep only words over the first n letters."""
    if n < 1:
        raise WordError("restriction needs n >= 1")
    if isinstance(obj, SubgroupApprox):
        kept = frozenset(w for w in obj.elements if w.max_letter() <= n)
        return SubgroupApprox(
            generators=tuple(g for g in obj.generators if g.max_letter() <= n),
            length_bound=obj.length_bound,
            semigroup=obj.semigroup,
            alphabet_bound=min(obj.alphabet_bound, n),
            elements=kept,
            witnesses={w: obj.witnesses.get(w, ("restricted", None)) for w in kept},
            saturated=obj.saturated,
            even_only=obj.even_only,
        )
    if isinstance(obj, MembershipOracle):
        cap = n if obj.letter_cap is None else min(obj.letter_cap, n)
        return MembershipOracle(kind=obj.kind, s=obj.s, approx=obj.approx,
                                letter_cap=cap)
    raise WordError(f"cannot restrict {type(obj).__name__}")


# ---------------------------------------------------------------------------
# Quotients of the n-fold free product


@dataclass
class QuotientGroupTable:
    """Normal forms of the free product of n order-2 generators modulo a
    relator set, found breadth first with geodesic lengths."""

    n: int
    elements: tuple[Z2Word, ...]
    lengths: dict
    complete: bool
    relator_count: int

    def order(self) -> int | None:
        return len(self.elements) if self.complete else None


def _rewrite_rules(relators) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Each relator r = st (with s not below reverse(t)) gives s -> reverse(t)."""
    rules = set()
    for r in relators:
        letters = r.letters
        if not letters:
            continue
        for cut in range(len(letters) + 1):
            lhs = letters[:cut]
            rhs = tuple(reversed(letters[cut:]))
            if len(lhs) > len(rhs) or (len(lhs) == len(rhs) and lhs > rhs):
                rules.add((lhs, rhs))
    return sorted(rules, key=lambda st: (-len(st[0]), st))


def _canonical_form(w: Z2Word, rules, length_cap: int, orbit_cap: int = 4000) -> Z2Word:
    """Shortlex-least word reachable by the rewriting rules."""
    best = w
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for u in frontier:
            letters = u.letters
            for lhs, rhs in rules:
                m = len(lhs)
                if m > len(letters):
                    continue
                for i in range(len(letters) - m + 1):
                    if letters[i:i + m] == lhs:
                        v = reduce_z2(letters[:i] + rhs + letters[i + m:])
                        if len(v.letters) > length_cap or v in seen:
                            continue
                        seen.add(v)
                        nxt.append(v)
                        if (len(v.letters), v.letters) < (len(best.letters), best.letters):
                            best = v
                        if len(seen) >= orbit_cap:
                            return best
        frontier = nxt
    return best


def quotient_enumerate(n: int, relator_source, length_cap: int = 8,
                       size_cap: int = 10_000) -> QuotientGroupTable:
    """Breadth-first normal forms of the quotient by the given relators.

    `relator_source` is a SubgroupApprox, an iterable of words, or an
    exact oracle (sliced to words over n letters up to the length cap).
    """
    if n < 1:
        raise WordError("quotient needs n >= 1")
    if isinstance(relator_source, SubgroupApprox):
        relators = [w for w in relator_source.elements
                    if w.letters and w.max_letter() <= n]
    elif isinstance(relator_source, MembershipOracle):
        relators = [
            w for w in reduced_words(length_cap, n)
            if w.letters and relator_source.decide(w) == "yes"
        ]
    else:
        relators = [w for w in relator_source if w.letters]
        if any(w.max_letter() > n for w in relators):
            raise WordError("relator uses a letter beyond the generator count")
    rules = _rewrite_rules(relators)

    canon: dict[Z2Word, Z2Word] = {}

    def rep(w: Z2Word) -> Z2Word:
        r = canon.get(w)
        if r is None:
            r = canon[w] = _canonical_form(w, rules, length_cap)
        return r

    identity = rep(E)
    lengths = {identity: 0}
    frontier = [identity]
    complete = True
    depth = 0
    while frontier and complete:
        depth += 1
        if depth > length_cap:
            complete = False
            break
        nxt = []
        for g in frontier:
            for a in range(1, n + 1):
                h = rep(mult(g, Z2Word((a,))))
                if h not in lengths:
                    if len(lengths) >= size_cap:
                        complete = False
                        break
                    lengths[h] = depth
                    nxt.append(h)
            if not complete:
                break
        frontier = nxt
    elements = tuple(sorted(lengths, key=lambda w: (lengths[w], w.letters)))
    return QuotientGroupTable(
        n=n,
        elements=elements,
        lengths=lengths,
        complete=complete,
        relator_count=len(relators),
    )


def dihedral_profile(s: int) -> tuple[int, list[int]]:
    """Order and sorted geodesic lengths of the dihedral group on two
    involutive generators whose product has order s."""
    lengths = [0]
    for length in range(1, s):
        lengths.extend([length, length])
    lengths.append(s)
    return 2 * s, lengths


# ---------------------------------------------------------------------------
# Compatibility of restrictions


def inductive_limit_check(seed, n_max: int, length_bound: int = 8,
                          builder=None) -> dict:
    """Check (H)_n = (H)_{n+1} cap {words over the first n letters}.

    `seed` is an exact oracle, or a list of generator words whose bounded
    closures are rebuilt per alphabet (the default builder closes under
    the involutive-word semigroup).
    """
    failures = []
    for n in range(1, n_max):
        if isinstance(seed, MembershipOracle):
            small = {w for w in reduced_words(length_bound, n)
                     if seed.decide(w) == "yes"}
            big = {w for w in reduced_words(length_bound, n + 1)
                   if seed.decide(w) == "yes" and w.max_letter() <= n}
        else:
            if builder is None:
                builder = lambda words, a: subgroup_closure(
                    words, length_bound, "s0", alphabet_bound=a)
            gens_n = [w for w in seed if w.max_letter() <= n]
            small = set(builder(gens_n, n).elements)
            big = {w for w in builder(list(seed), n + 1).elements
                   if w.max_letter() <= n}
        if small != big:
            failures.append((n, sorted(str(w) for w in small ^ big)[:5]))
    return {"n_max": n_max, "failures": failures, "ok": not failures}

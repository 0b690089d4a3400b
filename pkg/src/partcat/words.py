"""Reduced words in the free product of order-2 groups and in a free group.

Letters of the involutive alphabet are positive integers (a1, a2, ...).
Free-group words are sequences of (letter, exponent) syllables over the
basis x1, x2, ... with the change of basis x_k = a1 a_{k+1}.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field


class WordError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Words in the involutive alphabet


@dataclass(frozen=True, order=True)
class Z2Word:
    """A reduced word over involutive letters; empty tuple is the identity."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.letters, self.letters[1:]):
            if a == b:
                raise WordError(f"word not reduced: {self.letters}")
        if any(a < 1 for a in self.letters):
            raise WordError("letter indices must be >= 1")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return ".".join(f"a{i}" for i in self.letters)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.letters)

    def max_letter(self) -> int:
        return max(self.letters, default=0)


E = Z2Word()


def reduce_z2(letters) -> Z2Word:
    """Cancel adjacent equal letters until none remain."""
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == a:
            stack.pop()
        else:
            stack.append(a)
    return Z2Word(tuple(stack))


def mult(u: Z2Word, v: Z2Word) -> Z2Word:
    return reduce_z2(u.letters + v.letters)


def inv(u: Z2Word) -> Z2Word:
    # every letter is an involution, so the inverse is the reverse word
    return Z2Word(tuple(reversed(u.letters)))


def is_even(u: Z2Word) -> bool:
    return len(u.letters) % 2 == 0


def identify(u: Z2Word, mapping: dict[int, int]) -> Z2Word:
    """Apply a finite identification of letters and reduce."""
    return reduce_z2(mapping.get(a, a) for a in u.letters)


def conjugate(u: Z2Word, k: int) -> Z2Word:
    """Conjugate by the involutive letter a_k."""
    return reduce_z2((k,) + u.letters + (k,))


# ---------------------------------------------------------------------------
# Free-group words over the basis x1, x2, ...


@dataclass(frozen=True, order=True)
class FreeWord:
    """A reduced free-group word as (letter, exponent) syllables."""

    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for (a, e) in self.syllables:
            if a < 1:
                raise WordError("letter indices must be >= 1")
            if e == 0:
                raise WordError("zero exponent in syllable")
        for (a, _), (b, _) in zip(self.syllables, self.syllables[1:]):
            if a == b:
                raise WordError(f"word not reduced: {self.syllables}")

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "e"
        parts = []
        for a, e in self.syllables:
            parts.append(f"x{a}" if e == 1 else f"x{a}^{e}")
        return ".".join(parts)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.syllables)

    def max_letter(self) -> int:
        return max((a for a, _ in self.syllables), default=0)


FREE_E = FreeWord()


def reduce_free(syllables) -> FreeWord:
    stack: list[list[int]] = []
    for a, e in syllables:
        if e == 0:
            continue
        if stack and stack[-1][0] == a:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([a, e])
    return FreeWord(tuple((a, e) for a, e in stack))


def free_mult(u: FreeWord, v: FreeWord) -> FreeWord:
    return reduce_free(u.syllables + v.syllables)


def free_inv(u: FreeWord) -> FreeWord:
    return FreeWord(tuple((a, -e) for a, e in reversed(u.syllables)))


def free_pow(u: FreeWord, n: int) -> FreeWord:
    if n < 0:
        return free_pow(free_inv(u), -n)
    out = FREE_E
    for _ in range(n):
        out = free_mult(out, u)
    return out


def exponent(w: FreeWord, i: int) -> int:
    """Sum of the powers of x_i appearing in w."""
    return sum(e for a, e in w.syllables if a == i)


def abelianize(w: FreeWord, upto: int | None = None) -> tuple[int, ...]:
    """Exponent vector of w, padded to `upto` coordinates."""
    n = upto if upto is not None else w.max_letter()
    return tuple(exponent(w, i) for i in range(1, n + 1))


# ---------------------------------------------------------------------------
# Change of basis between even involutive words and free words


def to_free(u: Z2Word) -> FreeWord:
    """Write an even word in the free basis x_k = a1 a_{k+1}.

    Uses a_j a_k = x_{j-1}^{-1} x_{k-1} with the convention x_0 = e,
    so a factor vanishes whenever the corresponding letter is a1.
    """
    if not is_even(u):
        raise WordError(f"word of odd length has no free form: {u}")
    sylls: list[tuple[int, int]] = []
    it = iter(u.letters)
    for j, k in zip(it, it):
        if j > 1:
            sylls.append((j - 1, -1))
        if k > 1:
            sylls.append((k - 1, 1))
    return reduce_free(sylls)


def from_free(w: FreeWord) -> Z2Word:
    letters: list[int] = []
    for a, e in w.syllables:
        if e > 0:
            letters.extend([1, a + 1] * e)
        else:
            letters.extend([a + 1, 1] * (-e))
    return reduce_z2(letters)


# ---------------------------------------------------------------------------
# Endomorphism semigroup generators


def free_identify(w: FreeWord, mapping: dict[int, int]) -> FreeWord:
    return reduce_free((mapping.get(a, a), e) for a, e in w.syllables)


def free_delete(w: FreeWord, k: int) -> FreeWord:
    """The endomorphism x_k -> e, all other letters fixed."""
    return reduce_free((a, e) for a, e in w.syllables if a != k)


def free_prefix(w: FreeWord, i: int) -> FreeWord:
    """The endomorphism x_k -> x_i^{-1} x_k applied to every letter.

    In particular x_i itself is sent to the identity.
    """
    gen_cache: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    sylls: list[tuple[int, int]] = []
    for a, e in w.syllables:
        img = gen_cache.get((a, e))
        if img is None:
            if a == i:
                img = ()
            else:
                base = ((i, -1), (a, 1))
                if e > 0:
                    img = base * e
                else:
                    img = tuple((l, -x) for l, x in reversed(base)) * (-e)
            gen_cache[(a, e)] = img
        sylls.extend(img)
    return reduce_free(sylls)


def free_invert_letters(w: FreeWord) -> FreeWord:
    """The endomorphism x_k -> x_k^{-1} (not the group inverse)."""
    return reduce_free((a, -e) for a, e in w.syllables)


def free_conjugate(w: FreeWord, v: FreeWord) -> FreeWord:
    return free_mult(free_mult(v, w), free_inv(v))


def apply_s0(kind: str, u: Z2Word, *, mapping=None, k=None) -> Z2Word:
    """Apply a named generator of the involutive-word endomorphism semigroup."""
    if kind == "identify":
        return identify(u, dict(mapping))
    if kind == "conjugate":
        return conjugate(u, k)
    raise WordError(f"unknown generator kind {kind!r}")


def apply_s(kind: str, w: FreeWord, *, mapping=None, i=None, k=None, by=None) -> FreeWord:
    """Apply a named generator of the free-word endomorphism semigroup."""
    if kind == "identify":
        return free_identify(w, dict(mapping))
    if kind == "prefix":
        return free_prefix(w, i)
    if kind == "delete":
        return free_delete(w, k)
    if kind == "invert":
        return free_invert_letters(w)
    if kind == "inner":
        return free_conjugate(w, by)
    raise WordError(f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------------------
# Bounded subgroup closures


@dataclass
class SubgroupApprox:
    """Length-bounded closure of a word set under group and semigroup moves.

    Membership answers are sound (a witness chain exists for every element);
    absence only means "not found within the bounds".
    """

    generators: tuple
    length_bound: int
    semigroup: str | None
    alphabet_bound: int
    elements: frozenset
    witnesses: dict
    saturated: bool
    even_only: bool

    def __contains__(self, w) -> bool:
        return w in self.elements

    def decide(self, w) -> str:
        return "yes" if w in self.elements else "unknown"

    def witness_chain(self, w, depth_cap: int = 64) -> list[str]:
        """Replay how w was reached, oldest step first."""
        chain: list[str] = []
        cur = w
        seen = set()
        while cur is not None and cur not in seen and len(chain) < depth_cap:
            seen.add(cur)
            op, parent = self.witnesses.get(cur, ("seed", None))
            chain.append(f"{cur} <- {op}")
            cur = parent
        chain.reverse()
        return chain


def _identification_maps(support, alphabet_bound):
    letters = sorted(support)
    for images in itertools.product(range(1, alphabet_bound + 1), repeat=len(letters)):
        yield dict(zip(letters, images))


def _s0_images(u: Z2Word, alphabet_bound: int):
    for mapping in _identification_maps(u.support, alphabet_bound):
        yield identify(u, mapping), f"identify {mapping}"
    for k in range(1, alphabet_bound + 1):
        yield conjugate(u, k), f"conjugate a{k}"


def _s_images(w: FreeWord, alphabet_bound: int):
    for mapping in _identification_maps(w.support, alphabet_bound):
        yield free_identify(w, mapping), f"identify {mapping}"
    for i in range(1, alphabet_bound + 1):
        yield free_prefix(w, i), f"prefix x{i}"
    for k in sorted(w.support):
        yield free_delete(w, k), f"delete x{k}"
    yield free_invert_letters(w), "invert letters"
    for j in range(1, alphabet_bound + 1):
        for e in (1, -1):
            v = FreeWord(((j, e),))
            yield free_conjugate(w, v), f"conjugate by {v}"


def subgroup_closure(generators, length_bound: int, semigroup: str | None = None,
                     alphabet_bound: int = 4, cap: int = 200_000) -> SubgroupApprox:
    """Close a word set under products, inverses and a semigroup action.

    `semigroup` is "s0" for involutive words, "s" for free words, or None
    for the plain group closure.  Words longer than `length_bound` or using
    letters above `alphabet_bound` are discarded, so the result is an
    approximation from below.
    """
    gens = tuple(generators)
    free_mode = any(isinstance(g, FreeWord) for g in gens) or semigroup == "s"
    identity = FREE_E if free_mode else E
    length = len
    if free_mode:
        product, inverse = free_mult, free_inv
        images = _s_images if semigroup == "s" else None
    else:
        product, inverse = mult, inv
        images = _s0_images if semigroup == "s0" else None

    def admissible(w):
        return length(w) <= length_bound and w.max_letter() <= alphabet_bound

    elements: dict = {identity: ("seed identity", None)}
    queue = []
    for g in gens:
        if not admissible(g):
            raise WordError(f"generator {g} exceeds bounds")
        if g not in elements:
            elements[g] = ("seed generator", None)
            queue.append(g)
    processed: list = []
    saturated = True

    def add(w, op, parent):
        nonlocal saturated
        if not admissible(w) or w in elements:
            return
        if len(elements) >= cap:
            saturated = False
            return
        elements[w] = (op, parent)
        queue.append(w)

    while queue:
        w = queue.pop()
        add(inverse(w), "inverse", w)
        if images is not None:
            for img, op in images(w, alphabet_bound):
                add(img, op, w)
        for v in processed:
            add(product(w, v), f"product with {v}", w)
            add(product(v, w), f"product by {v}", w)
        add(product(w, w), "square", w)
        processed.append(w)

    even_only = all(isinstance(w, FreeWord) or is_even(w) for w in elements)
    return SubgroupApprox(
        generators=gens,
        length_bound=length_bound,
        semigroup=semigroup,
        alphabet_bound=alphabet_bound,
        elements=frozenset(elements),
        witnesses=dict(elements),
        saturated=saturated,
        even_only=even_only,
    )


# ---------------------------------------------------------------------------
# Literals


_Z2_ATOM = re.compile(r"a(\d+)$")
_FREE_ATOM = re.compile(r"x(\d+)(?:\^(-?\d+))?$")


def parse_z2(text: str) -> Z2Word:
    """Parse literals like "a1.a2.a1", "(a1.a2)^3" or "e"."""
    text = text.strip()
    if text in ("", "e"):
        return E

    def parse_seq(s: str) -> list[int]:
        out: list[int] = []
        i = 0
        while i < len(s):
            if s[i] == ".":
                i += 1
                continue
            if s[i] == "(":
                depth, j = 1, i + 1
                while j < len(s) and depth:
                    depth += {"(": 1, ")": -1}.get(s[j], 0)
                    j += 1
                if depth:
                    raise WordError(f"unbalanced parentheses in {text!r}")
                inner = parse_seq(s[i + 1:j - 1])
                i = j
                power = 1
                if i < len(s) and s[i] == "^":
                    m = re.match(r"\^(\d+)", s[i:])
                    if not m:
                        raise WordError(f"bad power in {text!r}")
                    power = int(m.group(1))
                    i += m.end()
                out.extend(inner * power)
                continue
            m = re.match(r"a(\d+)(?:\^(\d+))?", s[i:])
            if not m:
                raise WordError(f"cannot parse word literal {text!r}")
            letter = int(m.group(1))
            power = int(m.group(2) or 1)
            out.extend([letter] * power)
            i += m.end()
        return out

    return reduce_z2(parse_seq(text))


def parse_free(text: str) -> FreeWord:
    """Parse literals like "x1^3.x2^-1" or "e"."""
    text = text.strip()
    if text in ("", "e"):
        return FREE_E
    sylls = []
    for atom in text.split("."):
        m = _FREE_ATOM.match(atom.strip())
        if not m:
            raise WordError(f"cannot parse free-word literal {text!r}")
        sylls.append((int(m.group(1)), int(m.group(2) or 1)))
    return reduce_free(sylls)

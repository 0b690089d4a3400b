"""Pinned regression facts replayed by the `facts` command.

Each fact is a small machine-checkable statement about the library:
canonical forms, word images, generation facts with certificates,
quotient orders, and the separating matrix family.  The runner reports
one pass/fail line per fact id.
"""

from __future__ import annotations

from . import intertwiner as tw
from .closure import closure
from .correspondence import (
    F_of_category,
    dihedral_profile,
    quotient_enumerate,
)
from .partition import involution, make_named, parse, rotation_orbit, simplify, simplify_word, tensor, word_of
from .words import E, parse_free, parse_z2, subgroup_closure, to_free


def _named_form(name, param, expected):
    return str(make_named(name, param)) == expected


def _generation(gen_names, target_name, B, W, cap):
    gens = [make_named(n, s) for n, s in gen_names]
    target = make_named(target_name)
    c = closure(gens, B, W, cap=cap, stop_targets=[target])
    return target in c and c.replay(target)


FACTS = (
    ("named-pair", "pair partition text form",
     lambda: _named_form("pair", None, ":aa")),
    ("named-halflib", "half-liberating partition text form",
     lambda: _named_form("halflib", None, "abc:cba")),
    ("named-h3", "alternating two-block partition, three repeats",
     lambda: _named_form("h", 3, ":ababab")),
    ("named-primary", "pair-shifting partition text form",
     lambda: _named_form("primary", None, "aab:baa")),
    ("named-fatcross", "thick crossing text form",
     lambda: _named_form("fatcross", None, "aabb:bbaa")),
    ("canon-relabel", "parse canonicalizes letters",
     lambda: str(parse("ba:ab")) == "ab:ba"),
    ("tensor-double-singleton", "tensor of two singletons",
     lambda: str(tensor(parse(":a"), parse(":a"))) == ":ab"),
    ("involution-antihomomorphism-form", "row swap with canonical letters",
     lambda: str(involution(parse("aab:baa"))) == "abb:bba"),
    ("rotate-primary-orbit", "one-row form of the pair shifter",
     lambda: parse(":aabaab") in rotation_orbit(make_named("primary"))),
    ("rotate-fatcross-orbit", "one-row form of the thick crossing",
     lambda: parse(":aabbaabb") in rotation_orbit(make_named("fatcross"))),
    ("simplify-step-1", "first parity pass of the worked example",
     lambda: simplify_word("abbacacaca") == "aacacaca"),
    ("simplify-step-2", "second parity pass of the worked example",
     lambda: simplify_word("aacacaca") == "cacaca"),
    ("simplify-full", "full simplification of the worked example",
     lambda: str(simplify(parse(":abbacacaca"))) == ":ababab"),
    ("word-halflib", "word image of the half-liberating partition",
     lambda: word_of(make_named("halflib")) == parse_z2("a1.a2.a3.a1.a2.a3")),
    ("word-halflib-free", "free form of the half-liberating word",
     lambda: to_free(word_of(make_named("halflib"))) == parse_free("x1.x2^-1.x1^-1.x2")),
    ("word-h3-free", "free form of the alternating word",
     lambda: to_free(word_of(make_named("h", 3))) == parse_free("x1^3")),
    ("word-fourblock", "four block word reduces to the identity",
     lambda: word_of(parse(":aaaa")) == E),
    ("gen-fourblock-in-fatcross", "four block generated from the thick crossing",
     lambda: _generation([("fatcross", None)], "fourblock", 8, 14, 400_000)),
    ("gen-fatcross-in-primary", "thick crossing generated from the pair shifter",
     lambda: _generation([("primary", None)], "fatcross", 8, 14, 400_000)),
    ("gen-primary-in-h3", "pair shifter generated from the alternating pair",
     lambda: _generation([("h", 3)], "primary", 8, 14, 400_000)),
    ("gen-primary-in-h4", "pair shifter from the four-repeat alternating pair",
     lambda: _generation([("h", 4)], "primary", 8, 14, 400_000)),
    ("gen-primary-in-halflib-fourblock", "pair shifter from half-liberating plus four block",
     lambda: _generation([("halflib", None), ("fourblock", None)], "primary", 8, 14, 400_000)),
    ("subgroup-trivial", "pair shifter category maps to the trivial subgroup",
     lambda: set(F_of_category(
         closure([make_named("primary")], 8, 10, cap=6_000)).elements) == {E}),
    ("quotient-dihedral-3", "two generators with sixth-power relator close at order six",
     lambda: quotient_enumerate(
         2, subgroup_closure([parse_z2("(a1.a2)^3")], 6, "s0", alphabet_bound=2),
         length_cap=8).order() == 6),
    ("separating-family-iii", "separating family satisfies square commutation",
     lambda: tw.relation_check(tw.counterexample_rep(), "iii")),
    ("separating-family-iv", "separating family breaks full commutation",
     lambda: not tw.relation_check(tw.counterexample_rep(), "iv")),
    ("separating-family-fatcross", "separating family intertwines the thick crossing",
     lambda: tw.intertwines(tw.counterexample_rep(), make_named("fatcross"))),
    ("separating-family-primary", "separating family rejects the pair shifter",
     lambda: not tw.intertwines(tw.counterexample_rep(), make_named("primary"))),
)


def run_facts() -> dict:
    results = []
    for fact_id, desc, check in FACTS:
        try:
            ok = bool(check())
            error = None
        except Exception as exc:  # report, never crash the runner
            ok = False
            error = f"{type(exc).__name__}: {exc}"
        results.append({"id": fact_id, "description": desc, "ok": ok, "error": error})
    return {
        "facts": results,
        "passed": sum(1 for r in results if r["ok"]),
        "total": len(results),
        "ok": all(r["ok"] for r in results),
    }

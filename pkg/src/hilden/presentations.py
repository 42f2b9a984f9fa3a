"""Finite presentations of the block-symmetric braid subgroups, and their
verification against the braid/sphere oracles.

Seven builders, all deterministic (byte-for-byte identical output for equal
parameters):

    build_LH(n)               block group on s_i, r_i, t_i, rho
    build_PH1(n)              pure block group, framed version (p/x/y/t)
    build_PH(n)               pure block group on the sphere (adds (Z), (F))
    build_VW(n)               the finite block-symmetric quotient
    build_intermediate_LH(n)  pure presentation extended by s_i, r_i, rho
    build_prop_LH(n)          redundant generating set with p/x/y and shift
    build_SH(n, k)            handlebody variant; k >= 3 twist order

Relators are stored as single freely reduced words ``lhs * rhs^-1``, each with
a family tag like ``(2)(d)`` and a unique id.  ``verify`` pushes every relator
through a generator assignment into the braid group on 2n + 2 strands and
reports where it closes: ``braid`` (Garside normal form trivial),
``sphere_mcg`` (trivial in the marked-sphere mapping class group), or
``permutation`` (for the finite quotient).  A relator that closes nowhere is
``FAILED``; an aborted sphere computation is ``UNRESOLVED``.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from . import braids as B
from . import perms as P
from . import spheremcg as M
from .words import Alphabet, Word, parse_word

# --- token helpers -------------------------------------------------------------

def _it(tok: str) -> str:
    return tok[:-3] if tok.endswith("^-1") else tok + "^-1"


def _iv(toks: Sequence[str]) -> list[str]:
    return [_it(t) for t in reversed(toks)]


def _pw(toks: Sequence[str], e: int) -> list[str]:
    return list(toks) if e == 1 else _iv(toks)


def _comm(a: Sequence[str], b: Sequence[str]) -> list[str]:
    return list(a) + list(b) + _iv(a) + _iv(b)


def _eq(lhs: Sequence[str], rhs: Sequence[str]) -> list[str]:
    return list(lhs) + _iv(rhs)


def _s(i: int) -> list[str]:
    return [f"s{i}"]


def _r(i: int) -> list[str]:
    return [f"r{i}"]


def _t(i: int) -> list[str]:
    return [f"t{i}"]


_RHO = ["rho"]
_SHIFT = ["s"]


def _pair(kind: str, i: int, j: int) -> list[str]:
    lo, hi = min(i, j), max(i, j)
    return [f"{kind}{lo}.{hi}"]


# Triple-commutation schedule: with strictly increasing indices a < b < c the
# three pair slots (a,b | a,c | b,c) commute in 24 kind patterns, 8 per
# leading slot.  ROW1 leads with the (a,b) pair, ROW2 with (a,c), ROW3 with
# (b,c); in each row the leader commutes with the product of the other two in
# the listed order.
ROW1 = [("p", "p", "p"), ("p", "y", "y"), ("x", "p", "p"), ("x", "x", "p"),
        ("x", "y", "y"), ("y", "p", "p"), ("y", "p", "x"), ("y", "y", "y")]
ROW2 = [("p", "p", "p"), ("p", "x", "y"), ("x", "p", "p"), ("x", "p", "x"),
        ("x", "x", "y"), ("y", "p", "p"), ("y", "x", "y"), ("y", "y", "p")]
ROW3 = [("p", "p", "p"), ("p", "x", "x"), ("x", "p", "p"), ("x", "x", "x"),
        ("x", "y", "p"), ("y", "p", "p"), ("y", "p", "y"), ("y", "x", "x")]


@dataclass(frozen=True)
class Presentation:
    name: str
    n: int
    k: int | None
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    tags: tuple[str, ...]
    ids: tuple[str, ...]

    def __post_init__(self) -> None:
        alph = Alphabet(self.generators)
        for w in self.relators:
            if w.alphabet != alph:
                raise ValueError("relator outside the presentation alphabet")
        if not (len(self.relators) == len(self.tags) == len(self.ids)):
            raise ValueError("relators, tags, ids must align")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("relator ids must be unique")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.generators)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "generators": list(self.generators),
            "relators": [str(w) for w in self.relators],
            "tags": list(self.tags),
            "ids": list(self.ids),
        }


def presentation_from_json(d: dict) -> Presentation:
    alph = Alphabet(tuple(d["generators"]))
    relators = tuple(parse_word(alph, s) for s in d["relators"])
    return Presentation(
        d["name"], d["n"], d.get("k"), tuple(d["generators"]),
        relators, tuple(d["tags"]), tuple(d["ids"]),
    )


class _Emitter:
    """Collects (id, tag, token-list) rows and words them up at the end."""

    def __init__(self, generators: Sequence[str]):
        self.alph = Alphabet(tuple(generators))
        self.generators = tuple(generators)
        self.rows: list[tuple[str, str, list[str]]] = []

    def add(self, tag: str, idx: str, toks: list[str]) -> None:
        self.rows.append((f"{tag}{idx}", tag, toks))

    def build(self, name: str, n: int, k: int | None = None) -> Presentation:
        words = tuple(parse_word(self.alph, " ".join(toks) if toks else "1")
                      for _, _, toks in self.rows)
        return Presentation(
            name, n, k, self.generators, words,
            tuple(tag for _, tag, _ in self.rows),
            tuple(rid for rid, _, _ in self.rows),
        )


def _lh_generators(n: int) -> list[str]:
    return ([f"s{i}" for i in range(1, n + 1)]
            + [f"r{i}" for i in range(1, n + 1)]
            + [f"t{i}" for i in range(1, n + 2)]
            + ["rho"])


def _pair_generators(n: int) -> list[str]:
    out = []
    for kind in "pxy":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 2):
                out.append(f"{kind}{i}.{j}")
    return out


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")


# --- family emitters (shared between builders) ----------------------------------

def _emit_lh_12(e: _Emitter, n: int) -> None:
    """Families (1)(a)-(e) and (2)(a)-(g) on s/r/t/rho."""
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            for a in "sr":
                for b in "sr":
                    wa = _s(i) if a == "s" else _r(i)
                    wb = _s(j) if b == "s" else _r(j)
                    e.add("(1)(a)", f"[{a}{i},{b}{j}]", _comm(wa, wb))
    for i in range(1, n + 1):
        for j in range(1, n + 2):
            if j in (i, i + 1):
                continue
            e.add("(1)(b)", f"[s{i},t{j}]", _comm(_s(i), _t(j)))
            e.add("(1)(b)", f"[r{i},t{j}]", _comm(_r(i), _t(j)))
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            e.add("(1)(c)", f"[t{i},t{j}]", _comm(_t(i), _t(j)))
    for i in range(1, n + 1):
        e.add("(1)(d)", f"[s{i}]", _comm(_s(i), _RHO))
    for i in range(1, n + 2):
        e.add("(1)(e)", f"[t{i}]", _comm(_t(i), _RHO))
    for i in range(1, n):
        for a in "sr":
            w1 = _s(i) if a == "s" else _r(i)
            w2 = _s(i + 1) if a == "s" else _r(i + 1)
            e.add("(2)(a)", f"[{a}{i}]", _eq(w1 + w2 + w1, w2 + w1 + w2))
        for ex in (1, -1):
            se_i, se_i1 = _pw(_s(i), ex), _pw(_s(i + 1), ex)
            e.add("(2)(b)", f"[i={i},e={ex}]",
                  _eq(se_i + se_i1 + _r(i), _r(i + 1) + se_i + se_i1))
        e.add("(2)(c)", f"[i={i}]",
              _eq(_r(i) + _r(i + 1) + _s(i), _s(i + 1) + _r(i) + _r(i + 1)))
    for i in range(1, n + 1):
        e.add("(2)(d)", f"[i={i}]",
              _eq(_r(i) + _RHO + _s(i), _RHO + _s(i) + _iv(_r(i))))
        for ex in (1, -1):
            se = _pw(_s(i), ex)
            e.add("(2)(e)", f"[i={i},e={ex}]", _eq(se + _t(i), _t(i + 1) + se))
        e.add("(2)(f)", f"[i={i}]", _eq(_r(i) + _t(i), _t(i + 1) + _r(i)))
        e.add("(2)(g)", f"[i={i}]",
              _eq(_t(i) + _s(i) + _s(i) + _r(i), _r(i) + _s(i) + _s(i) + _t(i + 1)))


def _emit_rho_square(e: _Emitter, n: int) -> None:
    rhs: list[str] = []
    for i in range(1, n + 2):
        rhs += _t(i)
    e.add("(3)", "", _eq(_RHO + _RHO, rhs))


def _zeta_tokens(n: int) -> list[str]:
    out: list[str] = []
    for i in range(1, n + 1):
        out += _r(i)
    for i in range(n, 0, -1):
        out += _s(i)
    out += _t(1)
    return out


def _emit_lh_45(e: _Emitter, n: int) -> None:
    e.add("(4)", "", _zeta_tokens(n))
    w5: list[str] = []
    for i in range(1, n + 2):
        w5 += _t(i)
    stairs: list[str] = []
    for a in range(1, n + 1):
        for b in range(a, 0, -1):
            stairs += _s(b)
    e.add("(5)", "", w5 + stairs + stairs)


def _emit_pure_families(e: _Emitter, n: int) -> None:
    """The pure-group families on p/x/y/t with increasing indices."""
    N = n + 1
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            for k in range(1, N + 1):
                e.add("(C-pt)", f"[{i},{j};{k}]", _comm(_pair("p", i, j), _t(k)))
                if k != i:
                    e.add("(C-xt)", f"[{i},{j};{k}]", _comm(_pair("x", i, j), _t(k)))
                if k != j:
                    e.add("(C-yt)", f"[{i},{j};{k}]", _comm(_pair("y", i, j), _t(k)))
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            e.add("(C-tt)", f"[{i},{j}]", _comm(_t(i), _t(j)))
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            for k in range(j + 1, N + 1):
                for l in range(k + 1, N + 1):
                    for a in "pxy":
                        for b in "pxy":
                            e.add("(C1)", f"[{a}{i}.{j},{b}{k}.{l}]",
                                  _comm(_pair(a, i, j), _pair(b, k, l)))
                            e.add("(C3)", f"[{a}{i}.{k},{b}{j}.{l}]",
                                  _comm(_pair(a, i, k),
                                        _pair("p", j, k) + _pair(b, j, l) + _iv(_pair("p", j, k))))
    for a_ in range(1, N + 1):
        for b_ in range(a_ + 1, N + 1):
            for c_ in range(b_ + 1, N + 1):
                for (al, be, ga) in ROW1:
                    e.add("(C2)", f"[ab|{al}{be}{ga};{a_},{b_},{c_}]",
                          _comm(_pair(al, a_, b_), _pair(be, a_, c_) + _pair(ga, b_, c_)))
                for (al, be, ga) in ROW2:
                    e.add("(C2)", f"[ac|{al}{be}{ga};{a_},{b_},{c_}]",
                          _comm(_pair(al, a_, c_), _pair(be, b_, c_) + _pair(ga, a_, b_)))
                for (al, be, ga) in ROW3:
                    e.add("(C2)", f"[bc|{al}{be}{ga};{a_},{b_},{c_}]",
                          _comm(_pair(al, b_, c_), _pair(be, a_, b_) + _pair(ga, a_, c_)))
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            e.add("(M-x)", f"[{i},{j}]", _comm(_pair("x", i, j), _pair("p", i, j) + _t(i)))
            e.add("(M-y)", f"[{i},{j}]", _comm(_pair("y", i, j), _pair("p", i, j) + _t(j)))


def _z_relator_tokens(n: int) -> list[str]:
    N = n + 1
    toks: list[str] = []
    for j in range(N, 1, -1):
        toks += _iv(_pair("x", 1, j))
    for j in range(2, N + 1):
        toks += _pair("p", 1, j)
    toks += _t(1)
    return toks


def _f_relator_tokens(n: int) -> list[str]:
    N = n + 1
    toks: list[str] = []
    for i in range(1, N + 1):
        toks += _t(i)
    for j in range(2, N + 1):
        for i in range(1, j):
            toks += _pair("p", i, j)
    return toks


# --- the seven builders ----------------------------------------------------------

def build_LH(n: int) -> Presentation:
    """Presentation on s_i, r_i, t_i, rho (families (1)-(5))."""
    _check_n(n)
    e = _Emitter(_lh_generators(n))
    _emit_lh_12(e, n)
    _emit_rho_square(e, n)
    _emit_lh_45(e, n)
    expected = (2 * (n - 1) * (n - 2) + 2 * n * (n - 1) + (n + 1) * n // 2
                + n + (n + 1) + 5 * (n - 1) + 5 * n + 3)
    pres = e.build("lh", n)
    assert len(pres.relators) == expected, (len(pres.relators), expected)
    return pres


def build_PH1(n: int) -> Presentation:
    """Pure block group, framed version: p/x/y pairs and block twists t."""
    _check_n(n)
    e = _Emitter(_pair_generators(n) + [f"t{i}" for i in range(1, n + 2)])
    _emit_pure_families(e, n)
    N = n + 1
    pairs = N * (N - 1) // 2
    triples = N * (N - 1) * (N - 2) // 6
    quads = N * (N - 1) * (N - 2) * (N - 3) // 24
    expected = (pairs * N + 2 * pairs * (N - 1) + pairs
                + 18 * quads + 24 * triples + 2 * pairs)
    pres = e.build("ph1", n)
    assert len(pres.relators) == expected, (len(pres.relators), expected)
    return pres


def build_PH(n: int) -> Presentation:
    """Pure block group on the sphere: adds the loop and full-twist relators."""
    _check_n(n)
    e = _Emitter(_pair_generators(n) + [f"t{i}" for i in range(1, n + 2)])
    _emit_pure_families(e, n)
    e.add("(Z)", "", _z_relator_tokens(n))
    e.add("(F)", "", _f_relator_tokens(n))
    pres = e.build("ph", n)
    assert len(pres.relators) == len(build_PH1(n).relators) + 2
    return pres


def build_VW(n: int) -> Presentation:
    """The finite block-symmetric quotient on involutions sbar_i, rbar."""
    _check_n(n)
    e = _Emitter([f"s{i}" for i in range(1, n + 1)] + ["rho"])
    for i in range(1, n + 1):
        e.add("(invol-s)", f"[{i}]", _s(i) + _s(i))
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            e.add("(far)", f"[{i},{j}]", _comm(_s(i), _s(j)))
    for i in range(1, n):
        e.add("(braid)", f"[{i}]", _eq(_s(i) + _s(i + 1) + _s(i), _s(i + 1) + _s(i) + _s(i + 1)))
    e.add("(invol-r)", "", _RHO + _RHO)
    for i in range(1, n + 1):
        e.add("(comm-sr)", f"[{i}]", _comm(_s(i), _RHO))
    expected = n + (n - 1) * (n - 2) // 2 + (n - 1) + 1 + n
    pres = e.build("vw", n)
    assert len(pres.relators) == expected
    return pres


def build_intermediate_LH(n: int) -> Presentation:
    """Pure presentation extended by s_i, r_i, rho with their action data."""
    _check_n(n)
    N = n + 1
    e = _Emitter(_lh_generators(n) + _pair_generators(n))
    _emit_pure_families(e, n)
    e.add("(Z)", "", _z_relator_tokens(n))
    e.add("(F)", "", _f_relator_tokens(n))
    for i in range(1, n + 1):
        e.add("(B-sq)", f"[{i}]", _eq(_s(i) + _s(i), _pair("p", i, i + 1)))
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            e.add("(B-far)", f"[{i},{j}]", _comm(_s(i), _s(j)))
    for i in range(1, n):
        e.add("(B-braid)", f"[{i}]", _eq(_s(i) + _s(i + 1) + _s(i), _s(i + 1) + _s(i) + _s(i + 1)))
    rhs: list[str] = []
    for i in range(1, N + 1):
        rhs += _t(i)
    e.add("(B-rho)", "", _eq(_RHO + _RHO, rhs))
    for i in range(1, n + 1):
        e.add("(B-srho)", f"[{i}]", _comm(_s(i), _RHO))
    for k in range(1, n + 1):
        for i in range(1, N + 1):
            if i == k:
                rhs = _t(k + 1)
            elif i == k + 1:
                rhs = _t(k)
            else:
                rhs = _t(i)
            e.add("(A1)(a)", f"[k={k},i={i}]", _eq(_s(k) + _t(i) + _iv(_s(k)), rhs))
    for i in range(1, n + 1):
        p_ = _pair("p", i, i + 1)
        e.add("(A1)(b)", f"[p,{i}]", _eq(_s(i) + p_ + _iv(_s(i)), p_))
        e.add("(A1)(b)", f"[x,{i}]",
              _eq(_s(i) + _pair("x", i, i + 1) + _iv(_s(i)), p_ + _pair("y", i, i + 1) + _iv(p_)))
        e.add("(A1)(b)", f"[y,{i}]",
              _eq(_s(i) + _pair("y", i, i + 1) + _iv(_s(i)), _pair("x", i, i + 1)))
    for al in "pxy":
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                for k in range(1, n + 1):
                    if k == i and j == i + 1:
                        continue  # covered by (A1)(b)
                    if k == i - 1:
                        rhs = _pair("p", i - 1, i) + _pair(al, i - 1, j) + _iv(_pair("p", i - 1, i))
                    elif k == i and j - i >= 2:
                        rhs = _pair(al, i + 1, j)
                    elif k == j - 1 and j - i >= 2:
                        rhs = _pair("p", j - 1, j) + _pair(al, i, j - 1) + _iv(_pair("p", j - 1, j))
                    elif k == j:
                        rhs = _pair(al, i, j + 1)
                    else:
                        rhs = _pair(al, i, j)
                    e.add("(A1)(c)", f"[{al},{i},{j};k={k}]",
                          _eq(_s(k) + _pair(al, i, j) + _iv(_s(k)), rhs))
    for i in range(1, N + 1):
        e.add("(A2)(a)", f"[{i}]", _comm(_RHO, _t(i)))
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            e.add("(A2)(b)", f"[{i},{j}]", _comm(_RHO, _pair("p", i, j)))
            for al in "xy":
                e.add("(A2)(c)", f"[{al},{i},{j}]",
                      _eq(_RHO + _pair(al, i, j) + _iv(_RHO),
                          _iv(_pair(al, i, j)) + _pair("p", i, j)))
    return e.build("intermediate-lh", n)


def build_prop_LH(n: int) -> Presentation:
    """Redundant generating set: families (1)-(5) plus the p/x/y and shift
    definitions and their conjugation schedule (6)(a)-(g)."""
    _check_n(n)
    N = n + 1
    e = _Emitter(_lh_generators(n) + ["s"] + _pair_generators(n))
    _emit_lh_12(e, n)
    _emit_rho_square(e, n)
    _emit_lh_45(e, n)
    for i in range(1, n + 1):
        e.add("(6)(a)", f"[p,{i}]", _eq(_pair("p", i, i + 1), _s(i) + _s(i)))
        e.add("(6)(a)", f"[x,{i}]", _eq(_pair("x", i, i + 1), _s(i) + _iv(_r(i))))
        e.add("(6)(a)", f"[y,{i}]", _eq(_pair("y", i, i + 1), _iv(_r(i)) + _s(i)))
    for al in "pxy":
        for i in range(1, N + 1):
            for j in range(i + 2, N + 1):
                chain: list[str] = []
                for a in range(j - 1, i, -1):
                    chain += _s(a)
                e.add("(6)(b)", f"[{al},{i},{j}]",
                      _eq(_pair(al, i, j), chain + _pair(al, i, i + 1) + _iv(chain)))
    shift_rhs: list[str] = []
    for i in range(n, 0, -1):
        shift_rhs += _s(i)
    shift_rhs += _t(1)
    e.add("(6)(c)", "", _eq(_SHIFT, shift_rhs))
    for j in range(2, N + 1):
        for (al, be) in [("p", "p"), ("x", "y"), ("y", "x")]:
            e.add("(6)(d)", f"[{al}->{be},j={j}]",
                  _eq(_SHIFT + _pair(al, 1, j) + _iv(_SHIFT), _pair(be, j - 1, N)))
    for i in range(2, N + 1):
        for j in range(i + 1, N + 1):
            for al in "pxy":
                e.add("(6)(e)", f"[{al},{i},{j}]",
                      _eq(_SHIFT + _pair(al, i, j) + _iv(_SHIFT), _pair(al, i - 1, j - 1)))
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            e.add("(6)(f)", f"[{i},{j}]", _comm(_RHO, _pair("p", i, j)))
            for al in "xy":
                e.add("(6)(g)", f"[{al},{i},{j}]",
                      _eq(_RHO + _pair(al, i, j) + _iv(_RHO),
                          _iv(_pair(al, i, j)) + _pair("p", i, j)))
    return e.build("prop-lh", n)


def build_SH(n: int, k: int) -> Presentation:
    """Handlebody variant: the zeta word has order dividing k, and rho
    inverts it."""
    _check_n(n)
    if k < 3:
        raise ValueError("k must be >= 3")
    e = _Emitter(_lh_generators(n))
    _emit_lh_12(e, n)
    _emit_rho_square(e, n)
    zeta = _zeta_tokens(n)
    e.add("(4)", "", zeta * k)
    w5: list[str] = []
    for i in range(n + 1, 0, -1):
        w5 += _t(i)
    blk: list[str] = []
    for j in range(1, n + 1):
        for b in range(n, j - 1, -1):
            blk += _s(b)
    e.add("(5)", "", w5 + blk + blk)
    e.add("(6)(a)", "[s1]", _comm(zeta, _s(1)))
    e.add("(6)(a)", "[r1]", _comm(zeta, _r(1)))
    rprod: list[str] = []
    for i in range(1, n + 1):
        rprod += _r(i)
    e.add("(6)(b)", "", _eq(rprod + _t(n + 1), _t(1) + rprod))
    e.add("(6)(c)", "", _eq(_RHO + zeta, _iv(zeta) + _RHO))
    return e.build("sh", n, k)


_BUILDERS: dict[str, Callable[..., Presentation]] = {
    "lh": build_LH,
    "ph1": build_PH1,
    "ph": build_PH,
    "vw": build_VW,
    "intermediate-lh": build_intermediate_LH,
    "prop-lh": build_prop_LH,
    "sh": build_SH,
}


def build_presentation(name: str, n: int, k: int | None = None) -> Presentation:
    if name not in _BUILDERS:
        raise ValueError(f"unknown presentation {name!r}; choose from {sorted(_BUILDERS)}")
    if name == "sh":
        if k is None:
            raise ValueError("sh needs k")
        return build_SH(n, k)
    if k is not None:
        raise ValueError(f"presentation {name!r} takes no k")
    return _BUILDERS[name](n)


# --- generator assignments --------------------------------------------------------

def braid_assignment(pres: Presentation) -> dict[str, B.BraidWord]:
    """The dictionary assignment sending each presentation generator to its
    braid word on 2n + 2 strands."""
    if pres.name == "vw":
        raise ValueError("vw verifies at the permutation level; use perm_assignment")
    n = pres.n
    out: dict[str, B.BraidWord] = {}
    for gname in pres.generators:
        if gname == "rho":
            out[gname] = B.build_generator("rho", n)
        elif gname == "s":
            out[gname] = B.build_generator("shift", n)
        elif gname[0] in "srt" and gname[1:].isdigit():
            out[gname] = B.build_generator(gname[0], n, int(gname[1:]))
        elif gname[0] in "pxy" and "." in gname:
            i, j = gname[1:].split(".")
            out[gname] = B.build_generator(gname[0], n, int(i), int(j))
        else:
            raise ValueError(f"no dictionary entry for generator {gname!r}")
    return out


def perm_assignment(pres: Presentation) -> dict[str, P.Perm]:
    """Assignment for the finite quotient: the point permutations of the
    corresponding braid words."""
    if pres.name != "vw":
        raise ValueError("perm_assignment is for the vw presentation")
    n = pres.n
    m = 2 * n + 2
    out: dict[str, P.Perm] = {}
    for gname in pres.generators:
        if gname == "rho":
            out[gname] = P.psi_of_braid_word(B.build_generator("rho", n).word, m)
        else:
            out[gname] = P.psi_of_braid_word(B.build_generator("s", n, int(gname[1:])).word, m)
    return out


def image_letters(relator: Word, assignment: dict[str, B.BraidWord]) -> list[int]:
    """Expand a presentation relator into braid letters via the assignment."""
    out: list[int] = []
    alph = relator.alphabet
    for c in relator.letters:
        w = assignment[alph.name(c)].letters
        out.extend(w if c > 0 else (-x for x in reversed(w)))
    return out


# --- verification ------------------------------------------------------------------

@dataclass(frozen=True)
class VerifyRow:
    id: str
    tag: str
    status: str  # ok | FAILED | UNRESOLVED
    closes_at: str | None  # permutation | braid | sphere_mcg
    micros: int

    def to_json_dict(self) -> dict:
        return {"id": self.id, "tag": self.tag, "status": self.status,
                "closes_at": self.closes_at, "micros": self.micros}


@dataclass(frozen=True)
class VerificationReport:
    name: str
    params: dict
    rows: tuple[VerifyRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.status == "ok" for r in self.rows)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.rows:
            key = r.closes_at if r.status == "ok" else r.status
            out[key] = out.get(key, 0) + 1
        return out


def _check_one_braid_image(m: int, letters: list[int], budget: int) -> tuple[str, str | None]:
    """Status and closing level for one braid-group image of a relator."""
    if not P.psi_of_braid_word(letters, m).is_identity():
        return "FAILED", None
    bw = B.braid_word(m, letters)
    if B.exponent_sum(bw) == 0 and B.braid_is_trivial(bw):
        return "ok", "braid"
    try:
        if M.sphere_trivial(bw, budget=budget):
            return "ok", "sphere_mcg"
        return "FAILED", None
    except M.BudgetExceededError:
        return "UNRESOLVED", None


def _verify_rows_serial(m: int, items: list[tuple[str, str, list[int]]],
                        budget: int) -> list[VerifyRow]:
    rows = []
    for rid, tag, letters in items:
        t0 = time.perf_counter_ns()
        status, closes = _check_one_braid_image(m, letters, budget)
        rows.append(VerifyRow(rid, tag, status, closes,
                              (time.perf_counter_ns() - t0) // 1000))
    return rows


def _worker_verify(args) -> tuple[str, str, str, str | None, int]:
    m, rid, tag, letters, budget = args
    t0 = time.perf_counter_ns()
    status, closes = _check_one_braid_image(m, letters, budget)
    return rid, tag, status, closes, (time.perf_counter_ns() - t0) // 1000


def _verify_rows(m: int, items: list[tuple[str, str, list[int]]],
                 budget: int, jobs: int) -> list[VerifyRow]:
    if jobs <= 1 or len(items) < 4:
        return _verify_rows_serial(m, items, budget)
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        results = ex.map(_worker_verify,
                         [(m, rid, tag, letters, budget) for rid, tag, letters in items],
                         chunksize=max(1, len(items) // (4 * jobs)))
        return [VerifyRow(*r) for r in results]


def default_jobs() -> int:
    return os.cpu_count() or 1


def verify(pres: Presentation, jobs: int = 1, budget: int = M.DEFAULT_BUDGET) -> VerificationReport:
    """Verify every relator of a presentation under its generator assignment.

    Braid-group presentations report per relator whether it closes at the
    braid or sphere level; the finite quotient closes at the permutation
    level and gets an extra row checking the order of the generated image.
    """
    params: dict = {"n": pres.n, "artin_convention": M.ARTIN_CONVENTION}
    if pres.k is not None:
        params["k"] = pres.k
    if pres.name == "vw":
        assign = perm_assignment(pres)
        rows = []
        for rid, tag, rel in zip(pres.ids, pres.tags, pres.relators):
            t0 = time.perf_counter_ns()
            acc = P.identity_perm(2 * pres.n + 2)
            for c in rel.letters:
                g = assign[rel.alphabet.name(c)]
                acc = P.compose(acc, g if c > 0 else P.inverse(g))
            status = "ok" if acc.is_identity() else "FAILED"
            rows.append(VerifyRow(rid, tag, status, "permutation" if status == "ok" else None,
                                  (time.perf_counter_ns() - t0) // 1000))
        t0 = time.perf_counter_ns()
        order = len(P.generated_subgroup(assign.values()))
        want = 2 * math.factorial(pres.n + 1)
        rows.append(VerifyRow("(order)", "(order)", "ok" if order == want else "FAILED",
                              "permutation" if order == want else None,
                              (time.perf_counter_ns() - t0) // 1000))
        return VerificationReport(pres.name, params, tuple(rows))
    assign = braid_assignment(pres)
    m = 2 * pres.n + 2
    items = [(rid, tag, image_letters(rel, assign))
             for rid, tag, rel in zip(pres.ids, pres.tags, pres.relators)]
    return VerificationReport(pres.name, params, tuple(_verify_rows(m, items, budget, jobs)))


# --- braid-level identity schedule (conjugation ladders etc.) -----------------------

def _lemma_schedule(n: int) -> list[tuple[str, str, list[int]]]:
    """(id, tag, braid letters of lhs*rhs^-1) for the identity suite."""
    N = n + 1
    m = 2 * n + 2

    def gw(name: str, *idx: int) -> tuple[int, ...]:
        return B.build_generator(name, n, *idx).letters

    def inv(ls) -> tuple[int, ...]:
        return tuple(-c for c in reversed(ls))

    def eq(u, v) -> list[int]:
        return list(u) + list(inv(v))

    def comm(u, v) -> list[int]:
        return list(u) + list(v) + list(inv(u)) + list(inv(v))

    def cat(*parts) -> tuple[int, ...]:
        out: tuple[int, ...] = ()
        for p in parts:
            out += tuple(p)
        return out

    out: list[tuple[str, str, list[int]]] = []

    def add(tag: str, idx: str, letters: list[int]) -> None:
        out.append((f"{tag}{idx}", tag, letters))

    # commutation and conjugation data of the s/r/t/rho dictionary: reuse the
    # presentation families, expanded through the assignment
    lh = build_LH(n)
    assign = braid_assignment(lh)
    for rid, tag, rel in zip(lh.ids, lh.tags, lh.relators):
        if tag in ("(4)", "(5)"):
            continue  # these are sphere-level words, scheduled below
        fam = "dict-square" if tag == "(3)" else (
            "dict-comm" if tag.startswith("(1)") else "dict-conj")
        add(fam, rid, image_letters(rel, assign))

    # definitional pair identities
    for i in range(1, n + 1):
        add("pxy-def", f"[p,{i}]", eq(gw("p", i, i + 1), cat(gw("s", i), gw("s", i))))
        add("pxy-def", f"[x,{i}]", eq(gw("x", i, i + 1), cat(gw("s", i), inv(gw("r", i)))))
        add("pxy-def", f"[y,{i}]", eq(gw("y", i, i + 1), cat(inv(gw("r", i)), gw("s", i))))

    # block-twist conjugation ladders
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            for ex in (1, -1):
                down = cat(*((gw("s", a) if ex == 1 else inv(gw("s", a)))
                             for a in range(j - 1, i - 1, -1)))
                up = cat(*((gw("s", a) if ex == 1 else inv(gw("s", a)))
                           for a in range(i, j)))
                add("t-ladder", f"[desc-bottom,{i},{j},e={ex}]",
                    eq(cat(down, gw("t", i)), cat(gw("t", j), down)))
                add("t-ladder", f"[asc-top,{i},{j},e={ex}]",
                    eq(cat(up, gw("t", j)), cat(gw("t", i), up)))
                for k in range(i + 1, j + 1):
                    add("t-ladder", f"[desc-mid,{i},{j},k={k},e={ex}]",
                        eq(cat(down, gw("t", k)), cat(gw("t", k - 1), down)))
                    add("t-ladder", f"[asc-mid,{i},{j},k={k},e={ex}]",
                        eq(cat(up, gw("t", k - 1)), cat(gw("t", k), up)))

    # pair-vs-twist and pair-vs-(pair*twist) commutation
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            for k in range(1, N + 1):
                add("pxy-t-comm", f"[p,{i},{j};{k}]", comm(gw("p", i, j), gw("t", k)))
                if k != i:
                    add("pxy-t-comm", f"[x,{i},{j};{k}]", comm(gw("x", i, j), gw("t", k)))
                if k != j:
                    add("pxy-t-comm", f"[y,{i},{j};{k}]", comm(gw("y", i, j), gw("t", k)))
            add("pxy-pt-comm", f"[x,{i},{j}]",
                comm(gw("x", i, j), cat(gw("p", i, j), gw("t", i))))
            add("pxy-pt-comm", f"[y,{i},{j}]",
                comm(gw("y", i, j), cat(gw("p", i, j), gw("t", j))))

    # index-slides and the hoist form of distant pairs
    for al in "pxy":
        for i in range(1, N + 1):
            for j in range(i + 2, N + 1):
                add("slide-left", f"[{al},{i},{j}]",
                    eq(cat(inv(gw("s", j - 1)), gw(al, i, j), gw("s", j - 1)), gw(al, i, j - 1)))
            for j in range(i + 1, N + 1):
                if i >= 2:
                    add("slide-up", f"[{al},{i},{j}]",
                        eq(cat(inv(gw("s", i - 1)), gw(al, i, j), gw("s", i - 1)), gw(al, i - 1, j)))
        for i in range(2, n + 1):
            for ex in (1, -1):
                sL = gw("s", i - 1) if ex == 1 else inv(gw("s", i - 1))
                sR = gw("s", i) if ex == 1 else inv(gw("s", i))
                add("swap-conj", f"[{al},i={i},e={ex}]",
                    eq(cat(sL, gw(al, i, i + 1), inv(sL)),
                       cat(inv(sR), gw(al, i - 1, i), sR)))
        for i in range(1, N + 1):
            for j in range(i + 2, N + 1):
                pre = cat(*(inv(gw("s", a)) for a in range(i, j - 1)))
                add("hoist", f"[{al},{i},{j}]",
                    eq(gw(al, i, j), cat(pre, gw(al, j - 1, j), inv(pre))))

    # distant-pair commutation schedules
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            for k in range(j + 1, N + 1):
                for l in range(k + 1, N + 1):
                    for a in "pxy":
                        for b in "pxy":
                            add("cross-comm", f"[{a}{i}.{j},{b}{k}.{l}]",
                                comm(gw(a, i, j), gw(b, k, l)))
                            add("conj-cross-comm", f"[{a}{i}.{k},{b}{j}.{l}]",
                                comm(gw(a, i, k),
                                     cat(gw("p", j, k), gw(b, j, l), inv(gw("p", j, k)))))
    for a_ in range(1, N + 1):
        for b_ in range(a_ + 1, N + 1):
            for c_ in range(b_ + 1, N + 1):
                for (al, be, ga) in ROW1:
                    add("triple-comm", f"[ab|{al}{be}{ga};{a_},{b_},{c_}]",
                        comm(gw(al, a_, b_), cat(gw(be, a_, c_), gw(ga, b_, c_))))
                for (al, be, ga) in ROW2:
                    add("triple-comm", f"[ac|{al}{be}{ga};{a_},{b_},{c_}]",
                        comm(gw(al, a_, c_), cat(gw(be, b_, c_), gw(ga, a_, b_))))
                for (al, be, ga) in ROW3:
                    add("triple-comm", f"[bc|{al}{be}{ga};{a_},{b_},{c_}]",
                        comm(gw(al, b_, c_), cat(gw(be, a_, b_), gw(ga, a_, c_))))

    # shift conjugation
    sw = gw("shift")
    for j in range(2, N + 1):
        for (al, be) in [("p", "p"), ("x", "y"), ("y", "x")]:
            add("shift-wrap", f"[{al}->{be},j={j}]",
                eq(cat(sw, gw(al, 1, j), inv(sw)), gw(be, j - 1, N)))
    for i in range(2, N + 1):
        for j in range(i + 1, N + 1):
            for al in "pxy":
                add("shift-diag", f"[{al},{i},{j}]",
                    eq(cat(sw, gw(al, i, j), inv(sw)), gw(al, i - 1, j - 1)))

    # rho conjugation
    for i in range(1, N + 1):
        add("rho-t-comm", f"[{i}]", comm(gw("rho"), gw("t", i)))
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            add("rho-p-comm", f"[{i},{j}]", comm(gw("rho"), gw("p", i, j)))
            for al in "xy":
                add("rho-flip", f"[{al},{i},{j}]",
                    eq(cat(gw("rho"), gw(al, i, j), inv(gw("rho"))),
                       cat(inv(gw(al, i, j)), gw("p", i, j))))

    # the loop word and the full twist
    zw: tuple[int, ...] = ()
    for j in range(N, 1, -1):
        zw += inv(gw("x", 1, j))
    for j in range(2, N + 1):
        zw += gw("p", 1, j)
    zw += gw("t", 1)
    add("z-word", "", eq(zw, gw("z")))
    fw: tuple[int, ...] = ()
    for i in range(1, N + 1):
        fw += gw("t", i)
    for j in range(2, N + 1):
        for i in range(1, j):
            fw += gw("p", i, j)
    add("fulltwist-word", "", eq(fw, B.full_twist(m).letters))
    zeta: tuple[int, ...] = ()
    for i in range(1, n + 1):
        zeta += gw("r", i)
    for i in range(n, 0, -1):
        zeta += gw("s", i)
    zeta += gw("t", 1)
    add("zeta-image", "", eq(zeta, gw("z")))
    return out


def verify_lemma_identities(n: int, jobs: int = 1,
                            budget: int = M.DEFAULT_BUDGET) -> VerificationReport:
    """Verify the worked braid identities behind the presentations: ladders,
    slides, commutation schedules, shift and rho conjugation, the loop and
    full-twist words.  Supported for n <= 3."""
    _check_n(n)
    if n > 3:
        raise ValueError("identity suite is sized for n <= 3")
    m = 2 * n + 2
    items = [(rid, tag, list(letters)) for rid, tag, letters in _lemma_schedule(n)]
    rows = _verify_rows(m, items, budget, jobs)
    return VerificationReport("lemmas", {"n": n, "artin_convention": M.ARTIN_CONVENTION},
                              tuple(rows))

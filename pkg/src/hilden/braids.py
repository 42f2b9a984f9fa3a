"""Braid words on m strands and their Garside left normal form.

A braid word is a freely reduced word over the band generators
``g1 .. g{m-1}``.  The word problem is solved exactly through the left
normal form ``delta^p . A_1 ... A_k`` where each factor ``A_t`` is a
permutation braid (recorded by its permutation) and each adjacent pair is
left-weighted: every generator starting ``A_{t+1}`` also finishes ``A_t``.
Two words are equal in the braid group iff their normal forms coincide.

Also here: the generator dictionary expanding the named elements of the
two-string-per-block setup (m = 2n + 2) into explicit band-generator words:

    s_i   = g_{2i} g_{2i+1} g_{2i-1} g_{2i}        (block swap, i = 1..n)
    r_i   = g_{2i}^-1 g_{2i+1}^-1 g_{2i-1} g_{2i}  (twisted block swap)
    t_i   = g_{2i-1}^2                             (block full twist, i = 1..n+1)
    rho   = g_1 g_3 ... g_{2n+1}                   (global block flip)
    h_i   = g_i g_{i+1} g_i                        (half twist on 3 points)
    p_{i,j}, x_{i,j}, y_{i,j}                      (pair elements, see below)
    shift = s_n ... s_2 s_1 t_1                    (block rotation)
    z     = g_1 .. g_{2n+1} g_{2n+1} .. g_1        (first-point loop)
    delta, full_twist                              (Garside element, its square)

Pair elements at adjacent indices are p = s_i^2, x = s_i r_i^-1,
y = r_i^-1 s_i; general p/x/y_{i,j} conjugate the adjacent case by a chain of
block swaps.  Stored words are freely reduced, so x_{i,j} at adjacent indices
shortens to g_{2i} g_{2i+1}^2 g_{2i}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .perms import Perm, psi_of_braid_word
from .words import Alphabet, Word, reduce as word_reduce


@lru_cache(maxsize=None)
def sigma_alphabet(m: int) -> Alphabet:
    if m < 2:
        raise ValueError("need at least 2 strands")
    return Alphabet(tuple(f"g{i}" for i in range(1, m)))


@dataclass(frozen=True)
class BraidWord:
    strands: int
    word: Word

    def __post_init__(self) -> None:
        if self.word.alphabet != sigma_alphabet(self.strands):
            raise ValueError("word alphabet does not match strand count")

    @property
    def letters(self) -> tuple[int, ...]:
        return self.word.letters

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("strand count mismatch")
        return BraidWord(self.strands, self.word * other.word)

    def __pow__(self, e: int) -> "BraidWord":
        return BraidWord(self.strands, self.word ** e)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, self.word.inverse())


def braid_word(m: int, letters) -> BraidWord:
    """Freely reduce signed generator indices into a braid word."""
    if isinstance(letters, Word):
        letters = letters.letters
    return BraidWord(m, word_reduce(sigma_alphabet(m), letters))


def braid_identity(m: int) -> BraidWord:
    return braid_word(m, ())


def exponent_sum(b: BraidWord) -> int:
    """Total signed letter count; invariant under braid relations."""
    return sum(1 if c > 0 else -1 for c in b.letters)


def perm_of_braid(b: BraidWord) -> Perm:
    return psi_of_braid_word(b.word, b.strands)


# --- Garside machinery on raw 0-based permutation tuples ---------------------

def _idt(m: int) -> tuple[int, ...]:
    return tuple(range(m))


def _w0(m: int) -> tuple[int, ...]:
    return tuple(range(m - 1, -1, -1))


def _pmul(f, g):
    """f after g."""
    return tuple(f[g[x]] for x in range(len(f)))


def _pinv(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _tau(p):
    """Conjugation by the half twist: tau(p) = w0 . p . w0."""
    m = len(p)
    return tuple(m - 1 - p[m - 1 - i] for i in range(m))


def _left_comp(p):
    """Permutation of delta . p^-1, the positive complement of p^-1."""
    m = len(p)
    inv = _pinv(p)
    return tuple(m - 1 - inv[i] for i in range(m))


def _slide(a, b):
    """Make the factor pair (a, b) left-weighted, preserving the product.

    A generator index i starts b when b^-1 has a descent at i, and finishes a
    when a has one.  Any starter of b missing from a's finishers migrates
    left: a <- a.s_i, b <- s_i.b.
    """
    m = len(a)
    a = list(a)
    b = list(b)
    binv = [0] * m
    for x, v in enumerate(b):
        binv[v] = x
    changed = True
    while changed:
        changed = False
        for i in range(m - 1):
            if binv[i] > binv[i + 1] and a[i] < a[i + 1]:
                a[i], a[i + 1] = a[i + 1], a[i]
                j1, j2 = binv[i], binv[i + 1]
                b[j1], b[j2] = b[j2], b[j1]
                binv[i], binv[i + 1] = j2, j1
                changed = True
    return tuple(a), tuple(b)


def _normalize_factors(factors: list, m: int) -> tuple[int, tuple]:
    """Left-weight a factor list; return (delta surplus, canonical factors)."""
    ident = _idt(m)
    fs = [f for f in factors if f != ident]
    k = len(fs)
    for i in range(k - 1):
        fs[i], fs[i + 1] = _slide(fs[i], fs[i + 1])
        for j in range(i - 1, -1, -1):
            fs[j], fs[j + 1] = _slide(fs[j], fs[j + 1])
        for j in range(i + 1, k - 1):
            fs[j], fs[j + 1] = _slide(fs[j], fs[j + 1])
    # safety sweep to a fixpoint; normally already stable
    changed = True
    while changed:
        changed = False
        for i in range(len(fs) - 1):
            na, nb = _slide(fs[i], fs[i + 1])
            if na != fs[i] or nb != fs[i + 1]:
                fs[i], fs[i + 1] = na, nb
                changed = True
    w0 = _w0(m)
    surplus = 0
    while fs and fs[0] == w0:
        surplus += 1
        fs.pop(0)
    while fs and fs[-1] == ident:
        fs.pop()
    return surplus, tuple(fs)


@dataclass(frozen=True)
class GarsideNF:
    strands: int
    power: int
    factors: tuple[Perm, ...]

    @property
    def canonical_length(self) -> int:
        return len(self.factors)


def _assemble(m: int, entries) -> GarsideNF:
    """Entries are (delta exponent, factor) pairs in word order; pull all
    delta powers to the front (factors pass through via tau) and normalize."""
    t = 0
    factors = []
    for e, p in reversed(entries):
        factors.append(_tau(p) if t % 2 else p)
        t += e
    factors.reverse()
    surplus, fs = _normalize_factors(factors, m)
    return GarsideNF(m, t + surplus, tuple(Perm(f) for f in fs))


def normal_form(b: BraidWord) -> GarsideNF:
    """Garside left normal form; equal braids get identical normal forms."""
    m = b.strands
    w0 = _w0(m)
    entries = []
    for c in b.letters:
        i = abs(c) - 1
        si = list(range(m))
        si[i], si[i + 1] = si[i + 1], si[i]
        si = tuple(si)
        if c > 0:
            entries.append((0, si))
        else:
            entries.append((-1, _pmul(w0, si)))
    return _assemble(m, entries)


def nf_multiply(a: GarsideNF, b: GarsideNF) -> GarsideNF:
    if a.strands != b.strands:
        raise ValueError("strand count mismatch")
    entries = [(a.power, _idt(a.strands))]
    entries += [(0, f.images) for f in a.factors]
    entries += [(b.power, _idt(a.strands))]
    entries += [(0, f.images) for f in b.factors]
    return _assemble(a.strands, entries)


def nf_inverse(a: GarsideNF) -> GarsideNF:
    entries = [(-1, _left_comp(f.images)) for f in reversed(a.factors)]
    entries.append((-a.power, _idt(a.strands)))
    return _assemble(a.strands, entries)


def braid_is_trivial(b: BraidWord) -> bool:
    nf = normal_form(b)
    return nf.power == 0 and not nf.factors


def braids_equal(a: BraidWord, b: BraidWord) -> bool:
    """Exact word-problem decision via normal forms."""
    if a.strands != b.strands:
        raise ValueError("strand count mismatch")
    return normal_form(a) == normal_form(b)


def _perm_positive_word(p) -> list[int]:
    """A reduced positive word for a permutation braid factor."""
    q = list(p)
    rev = []
    while True:
        for i in range(len(q) - 1):
            if q[i] > q[i + 1]:
                q[i], q[i + 1] = q[i + 1], q[i]
                rev.append(i + 1)
                break
        else:
            break
    rev.reverse()
    return rev


def nf_to_braid_word(nf: GarsideNF) -> BraidWord:
    m = nf.strands
    delta = _delta_letters(m)
    letters: list[int] = []
    if nf.power >= 0:
        letters += list(delta) * nf.power
    else:
        letters += [-c for c in reversed(delta)] * (-nf.power)
    for f in nf.factors:
        letters += _perm_positive_word(f.images)
    return braid_word(m, letters)


# --- generator dictionary -----------------------------------------------------

def _s_letters(i: int) -> tuple[int, ...]:
    return (2 * i, 2 * i + 1, 2 * i - 1, 2 * i)


def _r_letters(i: int) -> tuple[int, ...]:
    return (-2 * i, -(2 * i + 1), 2 * i - 1, 2 * i)


def _t_letters(i: int) -> tuple[int, ...]:
    return (2 * i - 1, 2 * i - 1)


def _rho_letters(n: int) -> tuple[int, ...]:
    return tuple(range(1, 2 * n + 2, 2))


def _inv_letters(ls) -> tuple[int, ...]:
    return tuple(-c for c in reversed(ls))


def _alpha_letters(kind: str, i: int, j: int, n: int) -> tuple[int, ...]:
    if not 1 <= i < j <= n + 1:
        raise ValueError(f"need 1 <= i < j <= n+1, got ({i}, {j})")
    if j == i + 1:
        s, r = _s_letters(i), _r_letters(i)
        if kind == "p":
            return s + s
        if kind == "x":
            return s + _inv_letters(r)
        if kind == "y":
            return _inv_letters(r) + s
        raise ValueError(f"unknown pair kind {kind!r}")
    pre: tuple[int, ...] = ()
    for k in range(j - 1, i, -1):
        pre += _s_letters(k)
    return pre + _alpha_letters(kind, i, i + 1, n) + _inv_letters(pre)


def _shift_letters(n: int) -> tuple[int, ...]:
    out: tuple[int, ...] = ()
    for i in range(n, 0, -1):
        out += _s_letters(i)
    return out + _t_letters(1)


def _z_letters(n: int) -> tuple[int, ...]:
    up = tuple(range(1, 2 * n + 2))
    return up + tuple(reversed(up))


def _delta_letters(m: int) -> tuple[int, ...]:
    out: tuple[int, ...] = ()
    for k in range(1, m):
        out += tuple(range(k, 0, -1))
    return out


def delta(m: int) -> BraidWord:
    return braid_word(m, _delta_letters(m))


def full_twist(m: int) -> BraidWord:
    return braid_word(m, _delta_letters(m) * 2)


def build_generator(name: str, n: int, i: int | None = None, j: int | None = None) -> BraidWord:
    """Expand a named generator at block count n into a braid word on
    m = 2n + 2 strands.  Pair kinds p/x/y take two indices (order-insensitive,
    since the pair element depends only on the unordered pair)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = 2 * n + 2

    def need_i(lo: int, hi: int) -> int:
        if i is None or j is not None:
            raise ValueError(f"generator {name!r} takes exactly one index")
        if not lo <= i <= hi:
            raise ValueError(f"index {i} out of range {lo}..{hi} for {name!r}")
        return i

    if name == "s":
        return braid_word(m, _s_letters(need_i(1, n)))
    if name == "r":
        return braid_word(m, _r_letters(need_i(1, n)))
    if name == "t":
        return braid_word(m, _t_letters(need_i(1, n + 1)))
    if name == "h":
        return braid_word(m, (need_i(1, m - 2), i + 1, i))
    if name == "sigma":
        return braid_word(m, (need_i(1, m - 1),))
    if name in ("p", "x", "y"):
        if i is None or j is None:
            raise ValueError(f"generator {name!r} takes two indices")
        if i == j:
            raise ValueError("pair indices must differ")
        lo, hi = min(i, j), max(i, j)
        return braid_word(m, _alpha_letters(name, lo, hi, n))
    if i is not None or j is not None:
        raise ValueError(f"generator {name!r} takes no indices")
    if name == "rho":
        return braid_word(m, _rho_letters(n))
    if name == "shift":
        return braid_word(m, _shift_letters(n))
    if name == "z":
        return braid_word(m, _z_letters(n))
    if name == "delta":
        return delta(m)
    if name == "full_twist":
        return full_twist(m)
    raise ValueError(f"unknown generator name {name!r}")


# --- token grammar ------------------------------------------------------------

_TOK_SIGMA = re.compile(r"^([gG])(\d+)$")
_TOK_ONE = re.compile(r"^([srtSRT])(\d+)$")
_TOK_PAIR = re.compile(r"^([pxyPXY])(\d+)\.(\d+)$")


def parse_braid_text(text: str, *, strands: int | None = None, n: int | None = None) -> BraidWord:
    """Parse whitespace-separated braid tokens.

    ``g<k>`` is the k-th band generator; ``s<i>``, ``r<i>``, ``t<i>``,
    ``rho``, ``p<i>.<j>``, ``x<i>.<j>``, ``y<i>.<j>`` expand through the
    generator dictionary and need ``n``.  Uppercase inverts a token.
    Exactly one of ``strands``/``n`` fixes the strand count (``n`` gives
    2n + 2).
    """
    if (strands is None) == (n is None):
        raise ValueError("give exactly one of strands or n")
    m = strands if strands is not None else 2 * n + 2
    letters: list[int] = []
    for pos, tok in enumerate(text.split()):
        if tok == "1":  # identity literal, matches format_braid_word
            continue
        mt = _TOK_SIGMA.match(tok)
        if mt:
            k = int(mt.group(2))
            if not 1 <= k <= m - 1:
                raise ValueError(f"token {pos} ({tok!r}): generator index out of range for {m} strands")
            letters.append(k if mt.group(1) == "g" else -k)
            continue
        if n is None:
            raise ValueError(f"token {pos} ({tok!r}): named generators need n")
        if tok in ("rho", "RHO"):
            ls = _rho_letters(n)
            letters += ls if tok == "rho" else _inv_letters(ls)
            continue
        mt = _TOK_ONE.match(tok)
        if mt:
            kind, idx = mt.group(1), int(mt.group(2))
            try:
                w = build_generator(kind.lower(), n, idx)
            except ValueError as e:
                raise ValueError(f"token {pos} ({tok!r}): {e}") from None
            letters += w.letters if kind.islower() else _inv_letters(w.letters)
            continue
        mt = _TOK_PAIR.match(tok)
        if mt:
            kind, a, b = mt.group(1), int(mt.group(2)), int(mt.group(3))
            try:
                w = build_generator(kind.lower(), n, a, b)
            except ValueError as e:
                raise ValueError(f"token {pos} ({tok!r}): {e}") from None
            letters += w.letters if kind.islower() else _inv_letters(w.letters)
            continue
        raise ValueError(f"token {pos} ({tok!r}): unrecognized")
    return braid_word(m, letters)


def format_braid_word(b: BraidWord) -> str:
    if not b.letters:
        return "1"
    return " ".join(f"g{c}" if c > 0 else f"G{-c}" for c in b.letters)

"""Integer Smith normal form and first homology of the presentations.

``smith_normal_form`` returns D = U * M * V with U, V unimodular (their
determinants are tracked op-by-op and asserted to be +-1) and D diagonal
with nonnegative entries in a divisibility chain d_1 | d_2 | ... .

First homology of a presentation is the cokernel of the relator exponent
matrix.  Coordinates of a named class in the diagonalized quotient come from
right-multiplying its exponent vector by V: the map v -> v V carries the
relator lattice onto the row lattice of D, so component i lives in Z/d_i
(or Z when d_i = 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .presentations import Presentation
from .words import Word


@dataclass(frozen=True)
class SNFResult:
    D: tuple[tuple[int, ...], ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    det_u: int
    det_v: int

    def diagonal(self) -> tuple[int, ...]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return tuple(self.D[i][i] for i in range(k))


def smith_normal_form(mat: list[list[int]]) -> SNFResult:
    r = len(mat)
    c = len(mat[0]) if r else 0
    for row in mat:
        if len(row) != c:
            raise ValueError("ragged matrix")
    A = [[int(x) for x in row] for row in mat]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]
    det = {"u": 1, "v": 1}

    def row_swap(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            det["u"] = -det["u"]

    def col_swap(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            det["v"] = -det["v"]

    def row_add(dst, src, q):
        if q:
            Ad, As = A[dst], A[src]
            for x in range(c):
                Ad[x] += q * As[x]
            Ud, Us = U[dst], U[src]
            for x in range(r):
                Ud[x] += q * Us[x]

    def col_add(dst, src, q):
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    def row_negate(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        det["u"] = -det["u"]

    def find_pivot(t):
        best = None
        for i in range(t, r):
            Ai = A[i]
            for j in range(t, c):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        return best
        return best

    def clear_at(t) -> bool:
        """Pivot the block at (t, t) and clear its row and column; False when
        the block is all zero."""
        while True:
            best = find_pivot(t)
            if best is None:
                return False
            _, pi, pj = best
            row_swap(t, pi)
            col_swap(t, pj)
            if A[t][t] < 0:
                row_negate(t)
            restart = False
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_add(i, t, -q)
                    if A[i][t]:  # remainder smaller than the pivot
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, c):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_add(j, t, -q)
                    if A[t][j]:
                        restart = True
                        break
            if not restart:
                return True

    rank = 0
    while rank < min(r, c) and clear_at(rank):
        rank += 1

    # enforce the divisibility chain d_t | d_{t+1} with explicit unimodular
    # 2x2 transforms diag(a, b) -> diag(gcd, lcm); bubble back after each fix
    t = 0
    while t + 1 < rank:
        a, b = A[t][t], A[t + 1][t + 1]
        if b % a == 0:
            t += 1
            continue
        g = gcd(a, b)
        # extended gcd: s*a + u*b = g
        s, u = _bezout(a, b)
        ag, bg = a // g, b // g
        Ut, Ut1 = U[t], U[t + 1]
        U[t] = [s * p + u * q for p, q in zip(Ut, Ut1)]
        U[t + 1] = [-bg * p + ag * q for p, q in zip(Ut, Ut1)]
        for row in V:
            pt, pt1 = row[t], row[t + 1]
            row[t] = pt + pt1
            row[t + 1] = -u * bg * pt + s * ag * pt1
        A[t][t], A[t + 1][t + 1] = g, a * bg
        t = max(0, t - 1)

    assert abs(det["u"]) == 1 and abs(det["v"]) == 1, "transforms must stay unimodular"
    diag = [A[i][i] for i in range(min(r, c))]
    for i in range(len(diag) - 1):
        if diag[i + 1] and diag[i]:
            assert diag[i + 1] % diag[i] == 0
        else:
            assert not diag[i + 1] or diag[i]
    return SNFResult(
        tuple(tuple(row) for row in A),
        tuple(tuple(row) for row in U),
        tuple(tuple(row) for row in V),
        det["u"], det["v"],
    )


def _bezout(a: int, b: int) -> tuple[int, int]:
    """(s, u) with s*a + u*b = gcd(a, b)."""
    old_r, rr = a, b
    old_s, s = 1, 0
    old_t, tt = 0, 1
    while rr:
        q = old_r // rr
        old_r, rr = rr, old_r - q * rr
        old_s, s = s, old_s - q * s
        old_t, tt = tt, old_t - q * tt
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def matrix_mul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k, v in enumerate(row):
            if v:
                bk = b[k]
                for j in range(cols):
                    acc[j] += v * bk[j]
        out.append(acc)
    return out


# --- presentation homology ---------------------------------------------------

@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...]  # entries > 1, in divisibility order


def exponent_vector(w: Word, ngens: int) -> list[int]:
    v = [0] * ngens
    for ch in w.letters:
        v[abs(ch) - 1] += 1 if ch > 0 else -1
    return v


def relator_matrix(pres: Presentation) -> list[list[int]]:
    g = len(pres.generators)
    return [exponent_vector(w, g) for w in pres.relators]


@dataclass(frozen=True)
class H1Result:
    invariants: AbelianInvariants
    snf: SNFResult
    ngens: int

    def class_coords(self, v: list[int]) -> list[int]:
        """Coordinates of an exponent vector in the diagonalized quotient."""
        return [sum(v[i] * self.snf.V[i][j] for i in range(self.ngens))
                for j in range(self.ngens)]

    def class_order(self, v: list[int]) -> int:
        """Order of the class in H1 (0 means infinite)."""
        coords = self.class_coords(v)
        diag = self.snf.diagonal()
        order = 1
        for j in range(self.ngens):
            d = diag[j] if j < len(diag) else 0
            cj = coords[j]
            if d == 0:
                if cj:
                    return 0
            elif cj % d:
                dj = d // gcd(d, cj % d)
                order = order * dj // gcd(order, dj)
        return order


def h1_of_presentation(pres: Presentation) -> H1Result:
    g = len(pres.generators)
    rows = relator_matrix(pres)
    if not rows:
        snf = smith_normal_form([[0] * g])
    else:
        snf = smith_normal_form(rows)
    diag = snf.diagonal()
    nonzero = [d for d in diag if d]
    inv = AbelianInvariants(g - len(nonzero), tuple(d for d in nonzero if d > 1))
    return H1Result(inv, snf, g)


def expected_h1(name: str, n: int, k: int | None = None) -> AbelianInvariants:
    """The closed forms the sweeps are checked against."""
    if name == "lh":
        return AbelianInvariants(1, (2, 2))
    if name == "sh":
        if k is None or k < 3:
            raise ValueError("sh closed form needs k >= 3")
        if n % 2 == 1 and k % 2 == 0:
            return AbelianInvariants(1, (2, 2, 2))
        return AbelianInvariants(1, (2, 2))
    raise ValueError(f"no closed form recorded for {name!r}")


def _named_class_vectors(pres: Presentation) -> list[tuple[str, str, list[int]]]:
    """(label, human word, exponent vector) of the generating classes named
    by the homology theorems."""
    g = len(pres.generators)
    alph = pres.alphabet

    def vec(pairs: list[tuple[str, int]]) -> list[int]:
        v = [0] * g
        for name, e in pairs:
            v[alph.index(name) - 1] += e
        return v

    n = pres.n
    half = n * (n + 1) // 2
    classes = [("s1", "s1", vec([("s1", 1)])),
               ("r1", "r1", vec([("r1", 1)]))]
    if pres.name == "lh" or (pres.name == "sh" and pres.k is not None and pres.k % 2 == 1):
        classes.append(("X", f"rho (r1 s1)^{half}",
                        vec([("rho", 1), ("r1", half), ("s1", half)])))
    elif pres.name == "sh":
        classes.append(("X", f"t1 s1^{n}", vec([("t1", 1), ("s1", n)])))
        classes.append(("Y", f"rho s1^{half}", vec([("rho", 1), ("s1", half)])))
    else:
        raise ValueError(f"no named classes recorded for {pres.name!r}")
    return classes


def h1_generators_report(pres: Presentation) -> dict:
    """Orders and coordinates of the theorem-named classes, plus a check that
    the finite-order ones generate the whole torsion subgroup (available when
    every torsion invariant is 2)."""
    res = h1_of_presentation(pres)
    diag = res.snf.diagonal()
    torsion_pos = [j for j, d in enumerate(diag) if d > 1]
    classes = []
    mod2_rows = []
    for label, text, v in _named_class_vectors(pres):
        coords = res.class_coords(v)
        order = res.class_order(v)
        classes.append({"class": label, "word": text, "order": order,
                        "coords": coords})
        if order not in (0, 1):
            mod2_rows.append([coords[j] % diag[j] for j in torsion_pos])
    torsion_generated: bool | None = None
    if all(diag[j] == 2 for j in torsion_pos):
        torsion_generated = _gf2_rank(mod2_rows) == len(torsion_pos)
    return {
        "name": pres.name, "n": pres.n, "k": pres.k,
        "free_rank": res.invariants.free_rank,
        "torsion": list(res.invariants.torsion),
        "classes": classes,
        "torsion_generated": torsion_generated,
    }


def _gf2_rank(rows: list[list[int]]) -> int:
    mat = [int("".join(str(b % 2) for b in row), 2) if row else 0 for row in rows]
    rank = 0
    for _ in range(len(mat)):
        piv = max(mat, default=0)
        if not piv:
            break
        top = 1 << (piv.bit_length() - 1)
        keep = []
        for v in mat:
            if v & top:
                if v != piv:
                    keep.append(v ^ piv)
            else:
                keep.append(v)
        mat = keep
        rank += 1
    return rank

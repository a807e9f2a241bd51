#!/usr/bin/env python3
"""Independent oracle for frozen test values.

Implements marked permutations with involution, the left/right Rauzy
operations, class enumeration, the singularity table of the zippered
rectangle surface and extreme rays of the closed suspension cone,
directly from first principles, with no code shared with the C++ library.
Run once; the printed values are frozen into the C++ test sources.
"""
from fractions import Fraction
from itertools import combinations
import json
import sys

# A row is a tuple of tokens, letters are strings, partner spelled "iX".


def inv(letter):
    return letter[1:] if letter.startswith("i") else "i" + letter


def cls(letter):
    return letter[1:] if letter.startswith("i") else letter


def parse(text):
    return tuple(text.split())


def valid(row):
    if "*" not in row:
        return False
    s = row.index("*")
    left = set(row[:s])
    right = set(row[s + 1:])
    il = {inv(a) for a in left}
    ir = {inv(a) for a in right}
    return not (il <= right) and not (ir <= left)


def left_op(row):
    a, b = row[0], row[-1]
    if b == inv(a):
        return None
    body = list(row[:-1])
    body.insert(body.index(inv(a)) + 1, b)
    out = tuple(body)
    return out if valid(out) else None          # winner a, loser b


def right_op(row):
    a, b = row[0], row[-1]
    if a == inv(b):
        return None
    body = list(row[1:])
    body.insert(body.index(inv(b)), a)
    out = tuple(body)
    return out if valid(out) else None          # winner b, loser a


def enumerate_class(row):
    seen = {row}
    frontier = [row]
    arrows = []                                  # (from,to,side,winner,loser)
    while frontier:
        cur = frontier.pop()
        l = left_op(cur)
        if l:
            arrows.append((cur, l, "L", cur[0], cur[-1]))
            if l not in seen:
                seen.add(l)
                frontier.append(l)
        r = right_op(cur)
        if r:
            arrows.append((cur, r, "R", cur[-1], cur[0]))
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    return seen, arrows


def arrow_matrix(classes, winner, loser):
    d = len(classes)
    B = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    w = classes.index(cls(winner))
    l = classes.index(cls(loser))
    B[l][w] = 1                                  # B e_w = e_w + e_l
    return B


def det(M):
    M = [r[:] for r in M]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for r in range(c + 1, n):
            f = Fraction(M[r][c], M[c][c])
            for k in range(c, n):
                M[r][k] -= f * M[c][k]
    return d


def strongly_connected(vertices, arrows):
    adj, radj = {v: [] for v in vertices}, {v: [] for v in vertices}
    for f, t, *_ in arrows:
        adj[f].append(t)
        radj[f if False else t].append(f)
    def reach(g, s):
        seen, st = {s}, [s]
        while st:
            for n in g[st.pop()]:
                if n not in seen:
                    seen.add(n)
                    st.append(n)
        return seen
    v0 = next(iter(vertices))
    return reach(adj, v0) == vertices and reach(radj, v0) == vertices


# ---------- singularities of the zippered rectangle surface ----------

def bar_row(row):
    n = len(row)
    out = [None] * n
    for k, tok in enumerate(row):               # positions 1..n
        p = k + 1
        if tok == "*":
            out[n - p] = "*"                    # pbar(*) = n+1-p
        else:
            out[n - p] = inv(tok)               # pbar(i(tok)) = n+1-p
    return tuple(out)


def singularity_classes(row):
    """Union-find over pairs (token, side), side in {L,R}."""
    rowb = bar_row(row)
    pairs = [(t, s) for t in row for s in ("L", "R")]
    parent = {p: p for p in pairs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for rw in (row, rowb):
        for k in range(len(rw) - 1):
            union((rw[k], "R"), (rw[k + 1], "L"))
    al, ar = row[0], row[-1]
    union((ar, "R"), (inv(al), "R"))
    union((al, "L"), (inv(ar), "L"))
    classes = {}
    for p in pairs:
        classes.setdefault(find(p), []).append(p)
    return list(classes.values())


def stratum(row):
    """Returns (sorted upstairs multiplicities ltilde, genus up, quotient data)."""
    cl = singularity_classes(row)
    ltilde = sorted(len(c) - 2 for c in cl)      # 2k_c - 2 with 2k_c = |class|
    tot = sum(ltilde)
    assert tot % 4 == 0
    g_up = tot // 4 + 1
    # involution on pairs: (a,Y) -> (i(a), other(Y)), * -> (*, other(Y))
    def iact(p):
        a, y = p
        return (a if a == "*" else inv(a), "L" if y == "R" else "R")
    idx = {}
    for n, c in enumerate(cl):
        for p in c:
            idx[p] = n
    orbits = []
    used = set()
    for n, c in enumerate(cl):
        if n in used:
            continue
        m = idx[iact(c[0])]
        used.add(n)
        used.add(m)
        if m == n:
            k_c = len(c) // 2
            orbits.append(("fixed", k_c - 2))    # downstairs l = k_c - 2
        else:
            k_c = len(c) // 2
            orbits.append(("swapped", 2 * k_c - 2))
    down = sorted(l for _, l in orbits)
    sdown = sum(down)
    assert sdown % 4 == 0
    g_down = sdown // 4 + 1
    return ltilde, g_up, down, g_down, len(cl), len(orbits)


# ---------- extreme rays of Theta'_pi ----------

def theta_inequalities(row):
    """Rows of A for A tau >= 0 over class coordinates, plus balance row."""
    classes = sorted({cls(t) for t in row if t != "*"})
    d = len(classes)
    s = row.index("*") + 1                       # 1-based star position
    n = len(row)
    ineqs = []
    # right partial sums: sum_{pi(*)<pi(xi)<=k} tau >= 0, for pi(*)<k<2d+1
    for k in range(s + 1, n):
        v = [0] * d
        for p in range(s + 1, k + 1):
            v[classes.index(cls(row[p - 1]))] += 1
        ineqs.append(v)
    # left partial sums: sum_{k<=pi(xi)<pi(*)} tau <= 0 -> negate
    for k in range(2, s):
        v = [0] * d
        for p in range(k, s):
            v[classes.index(cls(row[p - 1]))] -= 1
        ineqs.append(v)
    bal = [0] * d
    for p, t in enumerate(row):
        if t == "*":
            continue
        bal[classes.index(cls(t))] += 1 if p < s - 1 else -1
    return classes, ineqs, bal


def null_space(rows, d):
    """Exact kernel basis of the matrix with given rows (lists of ints)."""
    M = [[Fraction(x) for x in r] for r in rows]
    piv = []
    r = 0
    for c in range(d):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(d) if c not in piv]
    basis = []
    for fc in free:
        v = [Fraction(0)] * d
        v[fc] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -M[i][fc]
        basis.append(v)
    return basis


def extreme_rays(row):
    classes, ineqs, bal = theta_inequalities(row)
    d = len(classes)
    rays = []
    m = len(ineqs)
    for k in range(0, m + 1):
        for sub in combinations(range(m), k):
            rows = [bal] + [ineqs[i] for i in sub]
            ker = null_space(rows, d)
            if len(ker) != 1:
                continue
            for sgn in (1, -1):
                v = [sgn * x for x in ker[0]]
                if all(sum(a * x for a, x in zip(iq, v)) >= 0 for iq in ineqs):
                    # tight set must have rank d-1 already ensured; dedupe
                    key = normalize(v)
                    if key and key not in rays:
                        rays.append(key)
    # keep only extreme: ray r extreme iff tight set rank = d-1 (ensured by ker dim 1)
    return classes, rays


def normalize(v):
    nz = [x for x in v if x]
    if not nz:
        return None
    s = abs(nz[0])
    v = [x / s for x in v]
    from math import gcd
    dens = 1
    for x in v:
        dens = dens * x.denominator // gcd(dens, x.denominator)
    w = tuple(int(x * dens) for x in v)
    from functools import reduce
    g = reduce(gcd, (abs(x) for x in w if x), 0)
    w = tuple(x // g for x in w)
    if w[next(i for i, x in enumerate(w) if x)] < 0:
        w = tuple(-x for x in w)
    # sign matters for cones (not symmetric): re-add original sign orientation
    return tuple(x * (1 if v[[i for i, y in enumerate(v) if y][0]] > 0 else -1) for x in w)


def omega(row):
    classes = sorted({cls(t) for t in row if t != "*"})
    pos = {t: k + 1 for k, t in enumerate(row)}
    def M(x):
        return max(pos[x], pos[inv(x)])
    def m(x):
        return min(pos[x], pos[inv(x)])
    d = len(classes)
    O = [[0] * d for _ in range(d)]
    for i, x in enumerate(classes):
        for j, y in enumerate(classes):
            if M(x) < m(y):
                O[i][j] = 2
            elif M(y) < m(x):
                O[i][j] = -2
            elif m(x) < m(y) < M(x) < M(y):
                O[i][j] = 1
            elif m(y) < m(x) < M(y) < M(x):
                O[i][j] = -1
    return classes, O


FIG2 = parse("D iB iD C iC * A iA B")

if __name__ == "__main__":
    assert valid(FIG2)
    V, A = enumerate_class(FIG2)
    print("fig2 class: vertices", len(V), "arrows", len(A))
    print("strongly connected:", strongly_connected(V, A))
    winners = {cls(w) for _, _, _, w, _ in A}
    print("winner classes:", sorted(winners))
    classes = sorted({cls(t) for t in FIG2 if t != "*"})
    for f, t, s, w, l in A:
        assert det(arrow_matrix(classes, w, l)) == 1
    print("all arrow matrices det 1: ok")
    # operations on fig2
    print("left(fig2) =", " ".join(left_op(FIG2)))
    print("right(fig2) =", " ".join(right_op(FIG2)))
    # singularities
    cl = singularity_classes(FIG2)
    print("fig2 singularity class sizes:", sorted(len(c) for c in cl))
    lt, gu, dn, gd, ncl, norb = stratum(FIG2)
    print("fig2 ltilde:", lt, "g_up:", gu, "down:", dn, "g_down:", gd,
          "classes:", ncl, "orbits:", norb)
    strata = {tuple(stratum(v)[0]) for v in V}
    downs = {tuple(stratum(v)[2]) for v in V}
    print("distinct upstairs strata over class:", strata)
    print("distinct downstairs over class:", downs)
    # dimension identity d = 2g + #Sigma - 1 downstairs
    print("d =", len(classes), " 2g_down + orbits - 1 =", 2 * gd + norb - 1)
    # omega
    cls_, O = omega(FIG2)
    print("omega classes", cls_)
    for r in O:
        print(r)
    # extreme rays of closed cone at fig2
    cs, rays = extreme_rays(FIG2)
    print("theta' extreme rays at fig2 (classes %s): %d" % (cs, len(rays)))
    for r in rays:
        print("  ray", r)
    # find a (pi1)/(pi2)-form vertex: classes a,b double same-side with
    # pattern a..i(a)..b..i(b) or a..b..i(a)..i(b) strictly inside one side
    def find_form(V):
        hits = []
        for v in V:
            s = v.index("*")
            for side in (v[:s], tuple(reversed(v[s + 1:]))):
                seen = {}
                for t in side:
                    seen.setdefault(cls(t), []).append(t)
                dbl = [c for c, ts in seen.items() if len(ts) == 2]
                for a in dbl:
                    for b in dbl:
                        if a == b:
                            continue
                        pa = [i for i, t in enumerate(side) if cls(t) == a]
                        pb = [i for i, t in enumerate(side) if cls(t) == b]
                        if pa[0] < pb[0] and pa[1] < pb[1] and pb[1] == max(pa + pb):
                            # a opens before b, b closes last:
                            # covers both pi1 (a a b b) and pi2 (a b a b)
                            hits.append((v, a, b))
        return hits
    hits = find_form(V)
    print("form(pi1/pi2) vertices found:", len(hits))
    if hits:
        v, a, b = hits[0]
        print("  example:", " ".join(v), " a:", a, " b:", b)
    # right-run cycles: vertices with pure-right cycle through them
    def right_cycle(v):
        seen = []
        cur = v
        while cur is not None and cur not in seen:
            seen.append(cur)
            cur = right_op(cur)
        return cur == v and len(seen) or 0
    rc = {v: right_cycle(v) for v in V}
    cyc = [(v, n) for v, n in rc.items() if n]
    print("vertices on a pure right cycle:", len(cyc))
    if cyc:
        v, n = min(cyc, key=lambda t: t[1])
        print("  shortest right cycle length:", n, "at", " ".join(v))

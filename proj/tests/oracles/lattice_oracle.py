"""Brute-force reference values for lattice censuses and rotatability.

Independent of the C++ implementation: every triple is enumerated directly.
Run: python3 tests/oracles/lattice_oracle.py
"""
from fractions import Fraction
from itertools import combinations
from math import gcd


def all_triples(n, gram=(1, 0, 1), proper_only=False):
    a, b, c = gram
    pts = [(u, v) for u in range(n) for v in range(n)]

    def q(p, r):
        du, dv = p[0] - r[0], p[1] - r[1]
        return a * du * du + b * du * dv + c * dv * dv

    shapes = set()
    for x, y, z in combinations(pts, 3):
        s = tuple(sorted((q(x, y), q(y, z), q(x, z))))
        if proper_only:
            s1, s2, s3 = s
            if 2 * (s1 * s2 + s2 * s3 + s3 * s1) - s1 * s1 - s2 * s2 - s3 * s3 == 0:
                continue
        shapes.add(s)
    return shapes


def rot_image(pt, t):
    p, q, r = t
    a, b = pt
    x, y = a * q - b * p, a * p + b * q
    if x % r or y % r:
        return None
    return (x // r, y // r)


def triples(max_r):
    out = []
    m = 2
    while m * m + 1 <= max_r:
        for k in range(1, m):
            if (m - k) % 2 == 1 and gcd(m, k) == 1 and m * m + k * k <= max_r:
                p, q, r = m * m - k * k, 2 * m * k, m * m + k * k
                out += [(p, q, r), (q, p, r)]
        m += 1
    return sorted(out, key=lambda t: (t[2], t[0]))


def rotatable_triangles(n):
    pts = [(u, v) for u in range(n) for v in range(n) if (u, v) != (0, 0)]
    ts = triples(2 * (n - 1) ** 2)
    total = three = 0
    for A, B in combinations(pts, 2):
        lim = min(A[0] ** 2 + A[1] ** 2, B[0] ** 2 + B[1] ** 2)
        if any(t[2] <= lim and rot_image(A, t) and rot_image(B, t) for t in ts):
            total += 1
            xs = [0, A[0], B[0]]
            ys = [0, A[1], B[1]]
            on = sum(1 for x, y in zip(xs, ys)
                     if x in (min(xs), max(xs)) or y in (min(ys), max(ys)))
            three += on == 3
    return total, three, total - three


if __name__ == "__main__":
    for n in range(2, 7):
        print("square", n, len(all_triples(n)), len(all_triples(n, proper_only=True)))
    print(sorted(all_triples(3)))
    for n in range(2, 7):
        print("tri", n, len(all_triples(n, (1, 1, 1))), len(all_triples(n, (1, 1, 1), True)))
    print("tri2", sorted(all_triples(2, (1, 1, 1))))
    print("gram102 n2", len(all_triples(2, (1, 0, 2))), sorted(all_triples(2, (1, 0, 2))))
    for n in (2, 3, 4, 5, 8):
        print("rot", n, rotatable_triangles(n))
    print(len(triples(100000)))

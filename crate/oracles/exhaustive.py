"""Brute-force maxima over balanced functions, independent of the Rust code.

Prints the exhaustive maximum bias on A4 and the maximum over functions
constant on the left cosets of <(1 2 3 4 5)> in A5.
"""
from fractions import Fraction
from itertools import combinations, permutations


def parity(p):
    return sum(p[i] > p[j] for i in range(len(p)) for j in range(i + 1, len(p))) % 2


def compose(x, y):
    return tuple(x[y[i]] for i in range(len(x)))


def triple(group, f):
    s = sum(f[x] * f[y] * f[compose(x, y)] for x in group for y in group)
    return Fraction(s, len(group) ** 2)


def alternating(n):
    return [p for p in permutations(range(n)) if parity(p) == 0]


a4 = alternating(4)
best = max(
    triple(a4, {g: -1 if i in neg else 1 for i, g in enumerate(a4)})
    for neg in combinations(range(12), 6)
)
print("A4 max bias", (1 + best) / 2)

a5 = alternating(5)
cycle = (1, 2, 3, 4, 0)
h = [tuple(range(5))]
while compose(h[-1], cycle) != h[0]:
    h.append(compose(h[-1], cycle))
cosets, seen = [], set()
for g in a5:
    if g not in seen:
        coset = [compose(g, x) for x in h]
        seen.update(coset)
        cosets.append(coset)
best = None
for neg in combinations(range(len(cosets)), len(cosets) // 2):
    f = {x: -1 if k in neg else 1 for k, coset in enumerate(cosets) for x in coset}
    t = triple(a5, f)
    best = t if best is None or t > best else best
print("A5 coset-constant max bias", (1 + best) / 2)

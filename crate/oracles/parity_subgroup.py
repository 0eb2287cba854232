"""Expected T over random coset signs for the parity subgroup of A_n.

usage: hombias construct A<n> --n <n> | python3 parity_subgroup.py <n> [--enumerate]

Reads the transversal from the construct report, rebuilds H = {p even :
p{1,2} = {1,2}} and phi(p) = +1 iff p fixes 1, and computes E[T] by
linearity of expectation (and, with --enumerate, by averaging over every
sign pattern).
"""
import json
import sys
from fractions import Fraction
from itertools import permutations, product

import numpy as np

n = int(sys.argv[1])
enumerate_all = "--enumerate" in sys.argv
reps_text = [c[0] for c in json.load(sys.stdin)["coset_signs"]]


def parity(p):
    return sum(p[i] > p[j] for i in range(n) for j in range(i + 1, n)) % 2


def cycles(text):
    p = list(range(n))
    for c in text.replace(")(", ")|(").split("|"):
        c = [int(v) - 1 for v in c.strip("()").split()]
        for i, v in enumerate(c):
            p[v] = c[(i + 1) % len(c)]
    return tuple(p)


group = [p for p in permutations(range(n)) if parity(p) == 0]
index = {g: i for i, g in enumerate(group)}
order = len(group)
perms = np.array(group)
table = np.empty((order, order), dtype=np.int64)
for i, x in enumerate(group):
    table[i] = [index[tuple(row)] for row in np.array(x)[perms]]
h = [p for p in group if set(p[:2]) == {0, 1}]
reps = [cycles(t) for t in reps_text]
coset = np.empty(order, dtype=np.int64)
phi = np.empty(order, dtype=np.int64)
for k, c in enumerate(reps):
    for x in h:
        j = index[tuple(c[x[i]] for i in range(n))]
        coset[j] = k
        phi[j] = 1 if x[0] == 0 else -1
m = len(reps)

a = np.broadcast_to(coset[:, None], (order, order))
b = np.broadcast_to(coset[None, :], (order, order))
c = coset[table]
survive = np.ones((order, order), dtype=bool)
for label in range(1, m):
    survive &= ((a == label).astype(int) + (b == label) + (c == label)) % 2 == 0
terms = phi[:, None] * phi[None, :] * phi[table]
print("linearity", Fraction(int(terms[survive].sum()), order * order))

if enumerate_all:
    total = 0
    for signs in product([1, -1], repeat=m - 1):
        s = np.array((1,) + signs)
        f = s[coset] * phi
        total += int((f[:, None] * f[None, :] * f[table]).sum())
    print("enumerated", Fraction(total, 2 ** (m - 1) * order * order))

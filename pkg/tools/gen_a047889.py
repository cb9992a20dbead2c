#!/usr/bin/env python3
"""Regenerate data/A047889_bfile.txt (permutations of [n] avoiding 12345).

Avoiding 12345 means having no increasing subsequence of length 5, so by
Robinson-Schensted the count is the sum of squared standard-Young-tableau
counts over partitions of n with at most 4 columns (equivalently, by
conjugation, at most 4 rows):

    a(n) = sum_{lambda |- n, parts(lambda) <= 4} f(lambda)^2,

with f(lambda) from the hook length formula. This is an independent exact
route to the sequence; the repository's tests cross-check the file against
the enumeration engine and the embedded table data on their common range.

Usage: python tools/gen_a047889.py [max_n] > data/A047889_bfile.txt
"""
import sys
from math import factorial


def partitions_atmost4(n):
    for p1 in range((n + 3) // 4, n + 1):
        for p2 in range(min(p1, n - p1) + 1):
            rem = n - p1 - p2
            if rem > 2 * p2:
                continue
            for p3 in range(max(0, rem - p2), min(p2, rem) + 1):
                p4 = rem - p3
                if 0 <= p4 <= p3:
                    yield [p for p in (p1, p2, p3, p4) if p > 0]


def tableau_count(lam, n_fact):
    conj = [0] * lam[0]
    for p in lam:
        for j in range(p):
            conj[j] += 1
    hooks = 1
    for i, p in enumerate(lam):
        for j in range(p):
            hooks *= (p - j) + (conj[j] - i) - 1
    return n_fact // hooks


def avoiders_12345(n):
    if n == 0:
        return 1
    nf = factorial(n)
    return sum(tableau_count(lam, nf) ** 2 for lam in partitions_atmost4(n))


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 110
    for n in range(max_n + 1):
        print(n, avoiders_12345(n))


if __name__ == "__main__":
    main()

"""Naive reference implementations used as independent oracles.

Everything here works on plain tuples with itertools enumeration and never
touches the package's engines, so agreement between the two is meaningful.
"""

import itertools

HAMMING = {0: 0, 1: 1, 2: 1, 3: 1}
LEE = {0: 0, 1: 1, 2: 2, 3: 1}
EUCLIDEAN = {0: 0, 1: 1, 2: 4, 3: 1}
BINARY = {0: 0, 1: 1}

TABLES = {"hamming": HAMMING, "lee": LEE, "homogeneous": LEE, "euclidean": EUCLIDEAN}


def span(rows, n, m=4):
    """All codewords of the integer row span, reduced mod m."""
    words = {tuple([0] * n)}
    for coeffs in itertools.product(range(m), repeat=len(rows)):
        words.add(tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % m for i in range(n)))
    return sorted(words)


def vec_weight(v, table):
    return sum(table[x] for x in v)


def min_distance(words, table, m=4):
    return min(
        vec_weight(tuple((a - b) % m for a, b in zip(u, v)), table)
        for u, v in itertools.combinations(words, 2)
    )


def covering_radius(words, n, table, m=4):
    """Exhaustive max-min distance, with the lexicographically first witness."""
    best, witness = -1, None
    for u in itertools.product(range(m), repeat=n):
        d = min(vec_weight(tuple((a - b) % m for a, b in zip(u, c)), table) for c in words)
        if d > best:
            best, witness = d, u
    return best, witness


def dual_words(rows, n, m=4):
    return [
        v
        for v in itertools.product(range(m), repeat=n)
        if all(sum(a * b for a, b in zip(v, r)) % m == 0 for r in rows)
    ]


def gray_image(words):
    table = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}
    return [tuple(bit for x in w for bit in table[x]) for w in words]

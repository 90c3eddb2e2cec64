"""Finite groups as explicit multiplication tables.

A table is a list of lists of element indices: table[i][j] = index of
g_i * g_j.  Canonical presets ship for C_n and S3; S3 is enumerated as
pairs (a, b) with a in C3, b in C2 and (a,b)*(a',b') = (a + (-1)^b a', b+b'),
i.e. index 2*a + b, so the smash-product comparison is the identity map on
indices.
"""

from .errors import NotAGroup


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def s3_table():
    def idx(a, b):
        return 2 * a + b

    table = [[0] * 6 for _ in range(6)]
    for a in range(3):
        for b in range(2):
            for a2 in range(3):
                for b2 in range(2):
                    a3 = (a + (a2 if b == 0 else -a2)) % 3
                    b3 = (b + b2) % 2
                    table[idx(a, b)][idx(a2, b2)] = idx(a3, b3)
    return table


def direct_product_table(t1, t2):
    n1, n2 = len(t1), len(t2)

    def idx(a, b):
        return a * n2 + b

    table = [[0] * (n1 * n2) for _ in range(n1 * n2)]
    for a in range(n1):
        for b in range(n2):
            for c in range(n1):
                for d in range(n2):
                    table[idx(a, b)][idx(c, d)] = idx(t1[a][c], t2[b][d])
    return table


def klein_table():
    return direct_product_table(cyclic_table(2), cyclic_table(2))


def table_identity(table):
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    return None


def validate_group(table):
    """Raise NotAGroup (with witness) unless table is a group."""
    n = len(table)
    for i, row in enumerate(table):
        if len(row) != n or any(not (0 <= v < n) for v in row):
            raise NotAGroup(f"row {i} is not a permutation candidate")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAGroup("associativity fails", witness=(a, b, c))
    e = table_identity(table)
    if e is None:
        raise NotAGroup("no identity element")
    for a in range(n):
        if not any(table[a][b] == e and table[b][a] == e for b in range(n)):
            raise NotAGroup("no inverse", witness=(a,))
    return e


def table_inverses(table):
    e = table_identity(table)
    n = len(table)
    inv = [None] * n
    for a in range(n):
        inv[a] = next(b for b in range(n) if table[a][b] == e and table[b][a] == e)
    return inv


def is_abelian(table):
    n = len(table)
    return all(table[a][b] == table[b][a] for a in range(n) for b in range(n))


PRESET_TABLES = {
    "C2": cyclic_table(2),
    "C3": cyclic_table(3),
    "C4": cyclic_table(4),
    "C5": cyclic_table(5),
    "C6": cyclic_table(6),
    "C7": cyclic_table(7),
    "S3": s3_table(),
    "C2xC2": klein_table(),
}

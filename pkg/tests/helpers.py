"""Naive oracles, independent of the library's algorithms.

Closure here grows by full pairwise products (not generator BFS), and
counting enumerates candidate tuples directly.
"""

import itertools


def naive_closure(group, gens):
    out = {0} | {g for g in gens}
    while True:
        new = {group.mul(a, b) for a in out for b in out} - out
        if not new:
            return out
        out |= new


def naive_generates(group, entries):
    return len(naive_closure(group, entries)) == group.order


def naive_count_generating(group, n):
    return sum(1 for tup in itertools.product(range(group.order), repeat=n)
               if naive_generates(group, tup))


def naive_automorphisms(group):
    """All bijections fixing 0 that respect multiplication.  Only viable
    for very small groups."""
    import itertools as it

    n = group.order
    auts = []
    for perm in it.permutations(range(1, n)):
        f = (0,) + perm
        if all(f[group.mul(a, b)] == group.mul(f[a], f[b])
               for a in range(n) for b in range(n)):
            auts.append(f)
    return auts


def naive_element_orders(group):
    orders = []
    for a in range(group.order):
        k, x = 1, a
        while x != 0:
            x = group.mul(x, a)
            k += 1
        orders.append(k)
    return orders

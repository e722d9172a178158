"""Independent brute-force oracles used to derive expected test values.

Everything here works directly off raw tables or permutations and never
calls the code paths under test.
"""

from __future__ import annotations

import numpy as np


def naive_order(table: np.ndarray, identity: int, x: int) -> int:
    cur, k = x, 1
    while cur != identity:
        cur = int(table[cur - 1, x - 1])
        k += 1
    return k


def order_multiset(table: np.ndarray, identity: int) -> list[int]:
    n = table.shape[0]
    return sorted(naive_order(table, identity, x) for x in range(1, n + 1))


def find_identity(table: np.ndarray) -> int | None:
    n = table.shape[0]
    ids = np.arange(1, n + 1)
    for r in range(n):
        if np.array_equal(table[r], ids) and np.array_equal(table[:, r], ids):
            return r + 1
    return None


def first_assoc_violation(table: np.ndarray) -> tuple[int, int, int] | None:
    n = table.shape[0]
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            xy = int(table[x - 1, y - 1])
            for z in range(1, n + 1):
                if table[xy - 1, z - 1] != table[x - 1, table[y - 1, z - 1] - 1]:
                    return (x, y, z)
    return None


def subset_products(table: np.ndarray, identity: int,
                    gens: tuple[int, ...]) -> set[int]:
    """All 2^k left-to-right subset products, by direct enumeration."""
    out = set()
    for mask in range(1 << len(gens)):
        acc = identity
        for i, g in enumerate(gens):
            if (mask >> i) & 1:
                acc = int(table[acc - 1, g - 1])
        out.add(acc)
    return out


def iterate_permutation(pi: np.ndarray, g: int, d: int) -> int:
    """pi**d (g) by d explicit applications."""
    cur = g
    for _ in range(d):
        cur = int(pi[cur - 1])
    return cur


def brute_sylow_cyclic(table: np.ndarray, identity: int, p: int) -> bool:
    """Build one Sylow p-subgroup by greedy extension and test cyclicity.

    Extends a p-subgroup by any p-element whose join with it stays a
    p-group; Sylow theory guarantees this reaches full order.
    """
    n = table.shape[0]
    pk = 1
    while n % (pk * p) == 0:
        pk *= p
    if pk == 1:
        return True
    orders = {x: naive_order(table, identity, x) for x in range(1, n + 1)}
    p_elems = [x for x, o in orders.items() if _is_p_power(o, p)]

    def close(gens: set[int]) -> set[int]:
        out = {identity}
        work = [identity]
        while work:
            a = work.pop()
            for g in gens:
                b = int(table[a - 1, g - 1])
                if b not in out:
                    out.add(b)
                    work.append(b)
        return out

    current: set[int] = {identity}
    gens: set[int] = set()
    while len(current) < pk:
        for x in p_elems:
            if x in current:
                continue
            trial = close(gens | {x})
            if _is_p_power(len(trial), p):
                gens.add(x)
                current = trial
                break
        else:
            raise AssertionError("could not extend the p-subgroup")
    return any(orders[x] == pk for x in current)


def _is_p_power(v: int, p: int) -> bool:
    while v % p == 0:
        v //= p
    return v == 1

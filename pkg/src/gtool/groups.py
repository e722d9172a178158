"""Cayley-table groups: loading, validation, and standard constructions.

Elements of a group of order n are the integers 1..n.  The table is the
ground truth every other data structure in this package is verified
against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .base import ParseError, ValidationError, check_cayley_table, check_element_id


class GroupTable:
    """A finite group given by its full n x n multiplication table.

    ``table[x-1, y-1]`` holds the product x*y.  Validation always checks
    the Latin-square property, a two-sided identity, and two-sided
    inverses; the O(n^3) associativity check runs only with ``strict=True``
    (or via :meth:`check_associativity`).  Loaded tables may place the
    identity anywhere; the constructors in this module put it at 1.

    Instances are immutable after construction and safe to share across
    threads.
    """

    rep_kind = "cayley"

    def __init__(self, table, *, strict: bool = False, validate: bool = True):
        self.table = check_cayley_table(table)
        self.table.setflags(write=False)
        self.n = int(self.table.shape[0])
        self._orders = None
        if validate:
            self._validate(strict=strict)
        else:
            self.identity = int(np.argmax((self.table == np.arange(
                1, self.n + 1, dtype=np.int32)).all(axis=1))) + 1
            self.inverse = (1 + np.argmax(
                self.table == self.identity, axis=1)).astype(np.int32)
            self.inverse.setflags(write=False)

    # -- validation ------------------------------------------------------

    def _validate(self, strict: bool) -> None:
        t = self.table
        n = self.n
        ids = np.arange(1, n + 1, dtype=np.int32)
        rows_sorted = np.sort(t, axis=1)
        bad = np.nonzero((rows_sorted != ids).any(axis=1))[0]
        if bad.size:
            i = int(bad[0])
            j1, j2 = _duplicate_positions(t[i])
            raise ValidationError(
                f"row {i + 1} is not a permutation of 1..{n}: "
                f"columns {j1 + 1} and {j2 + 1} both hold {t[i, j1]}",
                axiom="latin-row", witness=(i + 1, j1 + 1, j2 + 1))
        cols_sorted = np.sort(t, axis=0)
        bad = np.nonzero((cols_sorted != ids[:, None]).any(axis=0))[0]
        if bad.size:
            j = int(bad[0])
            i1, i2 = _duplicate_positions(t[:, j])
            raise ValidationError(
                f"column {j + 1} is not a permutation of 1..{n}: "
                f"rows {i1 + 1} and {i2 + 1} both hold {t[i1, j]}",
                axiom="latin-col", witness=(i1 + 1, i2 + 1, j + 1))

        left_ids = np.nonzero((t == ids).all(axis=1))[0]
        identity = None
        for r in left_ids:
            if (t[:, r] == ids).all():
                identity = int(r) + 1
                break
        if identity is None:
            if left_ids.size:
                r = int(left_ids[0])
                x = int(np.nonzero(t[:, r] != ids)[0][0])
                raise ValidationError(
                    f"element {r + 1} is a left identity but "
                    f"{x + 1}*{r + 1} = {t[x, r]}",
                    axiom="identity", witness=(x + 1, r + 1, int(t[x, r])))
            raise ValidationError("no two-sided identity element",
                                  axiom="identity", witness=None)
        self.identity = identity

        inv = (1 + np.argmax(t == identity, axis=1)).astype(np.int32)
        left = t[inv - 1, np.arange(n)]
        bad = np.nonzero(left != identity)[0]
        if bad.size:
            x = int(bad[0])
            raise ValidationError(
                f"right inverse of {x + 1} is {inv[x]} but "
                f"{inv[x]}*{x + 1} = {left[x]}",
                axiom="inverse", witness=(x + 1, int(inv[x]), int(left[x])))
        self.inverse = inv
        self.inverse.setflags(write=False)

        if strict:
            self.check_associativity()

    def check_associativity(self) -> None:
        """O(n^3) check of (x*y)*z = x*(y*z); raises with the first witness."""
        t0 = self.table.astype(np.intp) - 1
        for x in range(self.n):
            left = self.table[t0[x], :]          # (y, z) -> (x*y)*z
            right = self.table[x, t0]            # (y, z) -> x*(y*z)
            if not np.array_equal(left, right):
                y, z = map(int, np.argwhere(left != right)[0])
                raise ValidationError(
                    f"({x + 1}*{y + 1})*{z + 1} = {left[y, z]} but "
                    f"{x + 1}*({y + 1}*{z + 1}) = {right[y, z]}",
                    axiom="associativity", witness=(x + 1, y + 1, z + 1))

    # -- arithmetic ------------------------------------------------------

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)

    def mult(self, x: int, y: int, ledger=None) -> int:
        x = check_element_id(x, self.n)
        y = check_element_id(y, self.n)
        if ledger is not None:
            ledger.count("table")
        return int(self.table[x - 1, y - 1])

    # estimator-style aliases so a bare table can serve as a baseline rep
    multiply = mult

    def power(self, x: int, e: int) -> int:
        """x**e for e >= 0 by square-and-multiply on the table."""
        x = check_element_id(x, self.n)
        if e < 0:
            x, e = int(self.inverse[x - 1]), -e
        acc, base = self.identity, x
        while e:
            if e & 1:
                acc = int(self.table[acc - 1, base - 1])
            base = int(self.table[base - 1, base - 1])
            e >>= 1
        return acc

    def element_order(self, x: int) -> int:
        x = check_element_id(x, self.n)
        cur, k = x, 1
        while cur != self.identity:
            cur = int(self.table[cur - 1, x - 1])
            k += 1
        return k

    def element_orders(self) -> np.ndarray:
        """Orders of all elements, index x-1; cached."""
        if self._orders is None:
            orders = np.empty(self.n, dtype=np.int64)
            for x in self.elements:
                orders[x - 1] = self.element_order(x)
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def predict(self, X) -> np.ndarray:
        from .base import check_pairs
        pairs = check_pairs(X, self.n)
        return self.table[pairs[:, 0] - 1, pairs[:, 1] - 1].astype(np.int64)

    def space_slots(self) -> dict[str, int]:
        return {"table": self.n * self.n, "inverse": self.n, "meta": 2}

    def probe_bounds(self) -> tuple[int, int]:
        return (1, 1)

    # -- text interchange format ------------------------------------------

    def dumps(self) -> str:
        lines = [str(self.n)]
        lines.extend(" ".join(map(str, row)) for row in self.table)
        return "\n".join(lines) + "\n"

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())

    def __repr__(self) -> str:
        return f"GroupTable(n={self.n}, identity={self.identity})"


def _duplicate_positions(vec) -> tuple[int, int]:
    seen = {}
    for j, v in enumerate(vec):
        v = int(v)
        if v in seen:
            return seen[v], j
        seen[v] = j
    raise AssertionError("no duplicate found in non-permutation row")


def load_cayley_table(text, *, strict: bool = False) -> GroupTable:
    """Parse the text interchange format.

    Line 1 holds n; lines 2..n+1 hold n space-separated ids in [1, n],
    where row i column j is the product i*j.  A trailing newline is
    optional.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty input")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"header is not an integer: {lines[0]!r}") from None
    if n < 1:
        raise ParseError(f"order must be >= 1, got {n}")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} rows after the header, got {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:], start=1):
        parts = line.split()
        if len(parts) != n:
            raise ParseError(f"row {i} has {len(parts)} entries, expected {n}")
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            raise ParseError(f"row {i} contains a non-integer entry") from None
    return GroupTable(np.array(rows, dtype=np.int64), strict=strict)


def load_cayley_file(path, *, strict: bool = False) -> GroupTable:
    with open(path) as fh:
        return load_cayley_table(fh.read(), strict=strict)


def as_group(X) -> GroupTable:
    """Coerce a GroupTable or raw n x n array-like into a GroupTable."""
    if isinstance(X, GroupTable):
        return X
    return GroupTable(X)


# -- constructions ---------------------------------------------------------

def make_cyclic(n: int) -> GroupTable:
    """Cyclic group of order n; element i+1 represents g**i, identity 1."""
    if n < 1:
        raise ValidationError(f"cyclic order must be >= 1, got {n}")
    i = np.arange(n, dtype=np.int64)
    table = (i[:, None] + i[None, :]) % n + 1
    return GroupTable(table)


def make_direct(A: GroupTable, B: GroupTable) -> GroupTable:
    """Direct product; the pair (a, b) is numbered (a-1)*|B| + b."""
    nA, nB = A.n, B.n
    n = nA * nB
    if n > np.iinfo(np.int32).max:
        raise ValidationError(f"order {n} exceeds the supported id width")
    ta = A.table.astype(np.int64) - 1
    tb = B.table.astype(np.int64)
    table = (ta[:, None, :, None] * nB + tb[None, :, None, :]).reshape(n, n)
    return GroupTable(table)


@dataclass(frozen=True)
class SemidirectSpec:
    """Ingredients of a semidirect product A x| B.

    ``action[b-1]`` is the permutation of [1, |A|] realizing the
    automorphism of A associated with b; it must be a table automorphism,
    the map b -> action[b] must be a homomorphism, and the identity of B
    must act trivially.
    """

    A: GroupTable
    B: GroupTable
    action: np.ndarray  # (|B|, |A|), values in 1..|A|

    def validate(self) -> None:
        act = np.asarray(self.action, dtype=np.int64)
        nA, nB = self.A.n, self.B.n
        if act.shape != (nB, nA):
            raise ValidationError(
                f"action must have shape ({nB}, {nA}), got {act.shape}")
        ids = np.arange(1, nA + 1)
        ta = self.A.table
        for b in range(nB):
            perm = act[b]
            if not np.array_equal(np.sort(perm), ids):
                raise ValidationError(
                    f"action of {b + 1} is not a permutation of 1..{nA}",
                    axiom="action-permutation", witness=(b + 1,))
            lhs = perm[ta - 1]
            rhs = ta[np.ix_(perm - 1, perm - 1)]
            if not np.array_equal(lhs, rhs):
                x, y = map(int, np.argwhere(lhs != rhs)[0])
                raise ValidationError(
                    f"action of {b + 1} is not an automorphism: maps "
                    f"{x + 1}*{y + 1} to {lhs[x, y]} but products map to {rhs[x, y]}",
                    axiom="action-automorphism", witness=(b + 1, x + 1, y + 1))
        eB = self.B.identity
        if not np.array_equal(act[eB - 1], ids):
            raise ValidationError("identity of B must act trivially",
                                  axiom="action-identity", witness=(eB,))
        for b1 in range(nB):
            for b2 in range(nB):
                b12 = int(self.B.table[b1, b2])
                composed = act[b1][act[b2] - 1]
                if not np.array_equal(act[b12 - 1], composed):
                    a = int(np.nonzero(act[b12 - 1] != composed)[0][0])
                    raise ValidationError(
                        f"action is not a homomorphism at ({b1 + 1}, {b2 + 1}): "
                        f"action[{b12}]({a + 1}) = {act[b12 - 1][a]} but "
                        f"composition gives {composed[a]}",
                        axiom="action-homomorphism",
                        witness=(b1 + 1, b2 + 1, a + 1))


def make_semidirect(spec: SemidirectSpec) -> GroupTable:
    """Semidirect product with rule (a1, b1)*(a2, b2) = (a1*phi(b1)(a2), b1*b2).

    Numbering matches :func:`make_direct`, so a trivial action reproduces
    the direct-product table exactly.
    """
    spec.validate()
    nA, nB = spec.A.n, spec.B.n
    n = nA * nB
    act = np.asarray(spec.action, dtype=np.int64)
    ta = spec.A.table.astype(np.int64)
    tb = spec.B.table.astype(np.int64)
    table = np.empty((n, n), dtype=np.int64)
    for b1 in range(nB):
        phi = act[b1]                       # (nA,), image of each a2
        ra = ta[:, phi - 1]                 # (a1, a2) -> a1 * phi(a2)
        rb = tb[b1]                         # (b2,) -> b1 * b2
        vals = (ra[:, :, None] - 1) * nB + rb[None, None, :]
        rows = np.arange(nA) * nB + b1      # rows owned by (a1, b1)
        table[rows, :] = vals.reshape(nA, nA * nB)
    return GroupTable(table)


def trivial_action(A: GroupTable, B: GroupTable) -> np.ndarray:
    return np.tile(np.arange(1, A.n + 1, dtype=np.int64), (B.n, 1))


def make_quaternion() -> GroupTable:
    """The order-8 quaternion group.

    Canonical numbering 1:e, 2:a, 3:a^2, 4:a^3, 5:b, 6:ab, 7:a^2b, 8:a^3b
    under the relations a^4 = e, b^2 = a^2, and b*a = a^3*b.
    """
    def mul(p, q):
        i1, j1 = p
        i2, j2 = q
        if j1 == 0:
            return ((i1 + i2) % 4, j2)
        if j2 == 0:
            return ((i1 - i2) % 4, 1)
        return ((i1 - i2 + 2) % 4, 0)

    elems = [(i, j) for j in (0, 1) for i in range(4)]
    index = {p: 1 + t for t, p in enumerate(elems)}
    table = [[index[mul(p, q)] for q in elems] for p in elems]
    return GroupTable(np.array(table, dtype=np.int64))


def make_dihedral(m: int) -> GroupTable:
    """Dihedral group of order 2m as the split extension of C_m by inversion."""
    if m < 1:
        raise ValidationError(f"dihedral parameter must be >= 1, got {m}")
    A = make_cyclic(m)
    B = make_cyclic(2)
    inversion = 1 + (-np.arange(m, dtype=np.int64)) % m
    action = np.stack([np.arange(1, m + 1, dtype=np.int64), inversion])
    return make_semidirect(SemidirectSpec(A, B, action))


def make_abelian(orders) -> GroupTable:
    """Direct product of cyclic groups with the given orders."""
    orders = [int(d) for d in orders]
    if not orders:
        raise ValidationError("need at least one cyclic factor")
    G = make_cyclic(orders[0])
    for d in orders[1:]:
        G = make_direct(G, make_cyclic(d))
    return G


def _perm_table(perms: list[tuple[int, ...]]) -> GroupTable:
    k = len(perms[0])
    index = {p: 1 + t for t, p in enumerate(perms)}
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[t]] for t in range(k))]
    return GroupTable(table)


def make_symmetric(k: int) -> GroupTable:
    """Symmetric group S_k on lexicographically ordered permutations.

    Products compose left-to-right as functions: (p*q)(t) = p(q(t)).
    """
    if not 1 <= k <= 7:
        raise ValidationError(f"symmetric degree must be in [1, 7], got {k}")
    return _perm_table(list(permutations(range(k))))


def make_alternating(k: int) -> GroupTable:
    """Alternating group A_k (even permutations, lexicographic order)."""
    if not 1 <= k <= 7:
        raise ValidationError(f"alternating degree must be in [1, 7], got {k}")
    evens = [p for p in permutations(range(k)) if _parity(p) == 0]
    return _perm_table(evens)


def _parity(p: tuple[int, ...]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p))
              if p[i] > p[j])
    return inv & 1


def make_psl2(p: int) -> GroupTable:
    """PSL(2, p) for prime p: 2x2 determinant-1 matrices mod p, mod +-I.

    Each class {M, -M} is represented by its lexicographically smaller
    entry tuple; the identity is numbered 1 and the rest follow in sorted
    order.
    """
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValidationError(f"{p} is not prime")

    def canon(m):
        neg = tuple((-v) % p for v in m)
        return min(m, neg)

    reps = set()
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        reps.add(canon((a, b, c, d)))
    ident = canon((1, 0, 0, 1))
    ordered = [ident] + sorted(m for m in reps if m != ident)
    index = {m: 1 + t for t, m in enumerate(ordered)}
    n = len(ordered)
    table = np.empty((n, n), dtype=np.int64)
    for i, (a, b, c, d) in enumerate(ordered):
        for j, (e, f, g, h) in enumerate(ordered):
            prod = ((a * e + b * g) % p, (a * f + b * h) % p,
                    (c * e + d * g) % p, (c * f + d * h) % p)
            table[i, j] = index[canon(prod)]
    return GroupTable(table)

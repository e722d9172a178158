"""Structure discovery on Cayley tables.

Everything here runs at preprocessing time and may be superlinear: finding
abelian bases, testing for cyclic Sylow subgroups, locating semidirect and
quaternion-times-abelian decompositions, and testing simplicity.  All
searches use fixed iteration orders so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import PreconditionError, ValidationError
from .groups import GroupTable, SemidirectSpec, make_cyclic


# -- subgroup machinery -----------------------------------------------------

def subgroup_closure(G: GroupTable, gens) -> list[int]:
    """Elements of <gens>, ascending."""
    seen = np.zeros(G.n + 1, dtype=bool)
    seen[G.identity] = True
    work = [G.identity]
    gens = [int(g) for g in gens]
    t = G.table
    while work:
        x = work.pop()
        for g in gens:
            y = int(t[x - 1, g - 1])
            if not seen[y]:
                seen[y] = True
                work.append(y)
    return [int(v) for v in np.nonzero(seen)[0]]


def cyclic_subgroup(G: GroupTable, x: int) -> list[int]:
    """Elements of <x>, ascending."""
    elems = [G.identity]
    cur = int(x)
    while cur != G.identity:
        elems.append(cur)
        cur = int(G.table[cur - 1, x - 1])
    return sorted(elems)


def subtable(G: GroupTable, elements) -> tuple[GroupTable, list[int]]:
    """Reindex a multiplicatively closed subset as its own group.

    Returns the local table and the local-to-global id map (local id i+1
    corresponds to ``elements[i]``).
    """
    elements = [int(e) for e in elements]
    local = np.zeros(G.n + 1, dtype=np.int64)
    for i, e in enumerate(elements):
        local[e] = i + 1
    idx = np.array(elements, dtype=np.int64) - 1
    sub = G.table[np.ix_(idx, idx)]
    if local[sub].min() == 0:
        raise ValidationError("subset is not closed under multiplication")
    return GroupTable(local[sub]), elements


def quotient_table(G: GroupTable, normal_elements) -> tuple[GroupTable, list[int], np.ndarray]:
    """Quotient by a normal subgroup given as an element list.

    Returns (quotient group, coset representatives, coset id per element).
    Coset ids are assigned by scanning representatives in ascending order.
    """
    nset = np.zeros(G.n + 1, dtype=bool)
    for e in normal_elements:
        nset[int(e)] = True
    coset_of = np.zeros(G.n + 1, dtype=np.int64)
    reps: list[int] = []
    nelems = np.array(sorted(int(e) for e in normal_elements)) - 1
    for x in G.elements:
        if coset_of[x]:
            continue
        reps.append(x)
        cid = len(reps)
        members = G.table[x - 1, nelems]
        coset_of[members] = cid
    q = len(reps)
    qt = np.empty((q, q), dtype=np.int64)
    for i, r in enumerate(reps):
        qt[i] = coset_of[G.table[r - 1, np.array(reps) - 1]]
    return GroupTable(qt), reps, coset_of


def conjugacy_classes(G: GroupTable) -> list[list[int]]:
    """Conjugacy classes, each sorted, ordered by least member."""
    t = G.table
    inv = G.inverse
    all_idx = np.arange(G.n)
    assigned = np.zeros(G.n + 1, dtype=bool)
    classes = []
    for x in G.elements:
        if assigned[x]:
            continue
        gx = t[all_idx, x - 1]                    # g*x for all g
        conj = t[gx - 1, inv[all_idx] - 1]        # (g*x)*g^-1
        members = sorted(set(int(v) for v in conj))
        for m in members:
            assigned[m] = True
        classes.append(members)
    return classes


def _is_normal(G: GroupTable, members: list[int]) -> int | None:
    """None if <members> is normal, else a conjugating witness element."""
    inset = np.zeros(G.n + 1, dtype=bool)
    for e in members:
        inset[e] = True
    arr = np.array(members, dtype=np.int64) - 1
    for g in G.elements:
        conj = G.table[G.table[g - 1, arr] - 1, G.inverse[g - 1] - 1]
        if not inset[conj].all():
            return g
    return None


# -- abelian structure ------------------------------------------------------

@dataclass(frozen=True)
class AbelianBasis:
    """Independent generators of prime-power order for an abelian group.

    Factors are grouped by ascending prime, with orders descending within
    each prime; the exponent-tuple map g -> (t_1, ..., t_k) with
    g = prod generators[i]**t_i is a bijection onto prod [0, orders[i]).
    """

    generators: tuple[int, ...]
    orders: tuple[int, ...]


def _prime_factors(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _p_group_basis(H: GroupTable) -> tuple[list[int], list[int]]:
    """Basis of an abelian p-group by maximal-order picks in quotients.

    At each step the largest-order coset of the current span is located in
    the quotient and lifted to a representative of the same order; such a
    representative always exists and is independent of the span.
    """
    basis: list[int] = []
    orders: list[int] = []
    span = [H.identity]
    while len(span) < H.n:
        Q, reps, coset_of = quotient_table(H, span)
        qorders = Q.element_orders()
        target = int(qorders.max())
        cid = int(np.argmax(qorders == target)) + 1
        members = sorted(int(x) for x in np.nonzero(coset_of[1:] == cid)[0] + 1)
        pick = None
        for x in members:
            if H.element_order(x) == target:
                pick = x
                break
        if pick is None:
            raise AssertionError("no coset representative of matching order")
        basis.append(pick)
        orders.append(target)
        span = subgroup_closure(H, basis)
    return basis, orders


def abelian_basis(G: GroupTable) -> AbelianBasis:
    """Decompose an abelian group into independent prime-power cyclic factors."""
    if not G.is_abelian():
        raise PreconditionError("group is not abelian")
    if G.n == 1:
        return AbelianBasis((), ())
    orders_vec = G.element_orders()
    gens: list[int] = []
    orders: list[int] = []
    for p, k in _prime_factors(G.n):
        pk = p ** k
        members = sorted(int(x) for x in np.nonzero(pk % orders_vec == 0)[0] + 1)
        Hp, to_global = subtable(G, members)
        local_basis, local_orders = _p_group_basis(Hp)
        gens.extend(to_global[x - 1] for x in local_basis)
        orders.extend(local_orders)
    return AbelianBasis(tuple(gens), tuple(orders))


class AbelianCoordinates:
    """Exponent-tuple coordinate system for an abelian group.

    ``coords[g-1]`` holds the tuple (t_1, ..., t_k) with
    g = prod generators[i]**t_i; ``flat`` is its mixed-radix index and
    ``element_of_flat`` the dense inverse.  ``packed`` concatenates the
    tuple into one integer using ceil(log2 order) bits per factor,
    low factor in the low bits.
    """

    def __init__(self, G: GroupTable, basis: AbelianBasis | None = None):
        self.basis = basis if basis is not None else abelian_basis(G)
        self.orders = self.basis.orders
        self.widths = tuple(max(int(d - 1).bit_length(), 0) for d in self.orders)
        if sum(self.widths) > 63:
            raise PreconditionError(
                f"packed coordinates need {sum(self.widths)} bits, max is 63")
        k = len(self.orders)
        n = G.n
        strides = np.ones(k, dtype=np.int64)
        for i in range(k - 2, -1, -1):
            strides[i] = strides[i + 1] * self.orders[i + 1]
        self.strides = strides
        coords = np.zeros((n, k), dtype=np.int64)
        element_of_flat = np.zeros(max(n, 1), dtype=np.int64)
        # enumerate all exponent tuples by walking one generator at a time
        elems = {G.identity: np.zeros(k, dtype=np.int64)}
        frontier = [G.identity]
        t = G.table
        while frontier:
            x = frontier.pop()
            cx = elems[x]
            for i, g in enumerate(self.basis.generators):
                if cx[i] + 1 >= self.orders[i]:
                    continue
                y = int(t[x - 1, g - 1])
                if y in elems:
                    continue
                cy = cx.copy()
                cy[i] += 1
                elems[y] = cy
                frontier.append(y)
        if len(elems) != n:
            raise ValidationError(
                "generators are not independent: exponent tuples do not "
                f"cover the group ({len(elems)} of {n})")
        for x, cx in elems.items():
            coords[x - 1] = cx
            element_of_flat[int(cx @ strides)] = x
        self.coords = coords
        self.element_of_flat = element_of_flat
        shifts = np.zeros(k, dtype=np.int64)
        acc = 0
        for i, w in enumerate(self.widths):
            shifts[i] = acc
            acc += w
        self.shifts = shifts
        self.packed = (coords << shifts[None, :]).sum(axis=1)

    @property
    def k(self) -> int:
        return len(self.orders)

    def pack(self, tup) -> int:
        return int(sum(int(v) << int(s) for v, s in zip(tup, self.shifts)))

    def unpack(self, packed: int) -> tuple[int, ...]:
        return tuple(int((packed >> int(s)) & ((1 << w) - 1)) if w else 0
                     for s, w in zip(self.shifts, self.widths))

    def flat(self, tup) -> int:
        return int(np.dot(np.asarray(tup, dtype=np.int64), self.strides))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((int(x) + int(y)) % d for x, y, d in zip(a, b, self.orders))


def abelian_coordinates(G: GroupTable) -> AbelianCoordinates:
    return AbelianCoordinates(G)


# -- Sylow / Z-group structure ----------------------------------------------

def is_z_group(G: GroupTable) -> bool:
    """True iff every Sylow subgroup is cyclic.

    Equivalent check: for each maximal prime power p^k dividing n there is
    an element of order p^k (its span is a full Sylow p-subgroup, and all
    Sylow p-subgroups are conjugate).
    """
    orders = set(int(v) for v in G.element_orders())
    return all(p ** k in orders for p, k in _prime_factors(G.n))


def sylow_violation(G: GroupTable) -> tuple[int, int] | None:
    """(p, p^k) for the first prime whose Sylow subgroup is not cyclic."""
    orders = set(int(v) for v in G.element_orders())
    for p, k in _prime_factors(G.n):
        if p ** k not in orders:
            return p, p ** k
    return None


@dataclass(frozen=True)
class SemidirectDecomposition:
    """An internal decomposition G = A x| <b> with A normal and abelian.

    ``a_elements[i]`` is the global id of the local A element i+1;
    ``b_powers[j]`` is the global id of b**j.  ``pairing[i, j]`` holds the
    global id of a_elements[i] * b_powers[j]; ``a_of`` / ``j_of`` invert it.
    ``spec`` reconstructs an isomorphic abstract product via
    :func:`gtool.groups.make_semidirect`.
    """

    spec: SemidirectSpec
    a_elements: tuple[int, ...]
    b_element: int
    b_powers: tuple[int, ...]
    pairing: np.ndarray
    a_of: np.ndarray       # global id -> local A index (0-based)
    j_of: np.ndarray       # global id -> exponent of b
    cyclic_a_generator: int | None = None   # set when A is cyclic in power order
    multiplier: int | None = None           # exponent t with b a b^-1 = a**t

    @property
    def a_order(self) -> int:
        return len(self.a_elements)

    @property
    def b_order(self) -> int:
        return len(self.b_powers)


def _build_decomposition(G: GroupTable, a_members: list[int], b: int,
                         cyclic_a: int | None) -> SemidirectDecomposition:
    """Assemble the spec/pairing bundle for a verified (A, <b>) split."""
    t = G.table
    inv = G.inverse
    d = G.element_order(b)
    b_powers = [G.identity]
    cur = b
    for _ in range(d - 1):
        b_powers.append(cur)
        cur = int(t[cur - 1, b - 1])
    if cyclic_a is not None:
        m = len(a_members)
        a_elements = [G.identity]
        cur = cyclic_a
        for _ in range(m - 1):
            a_elements.append(cur)
            cur = int(t[cur - 1, cyclic_a - 1])
        A_t = make_cyclic(m)
    else:
        a_elements = sorted(a_members)
        A_t, _ = subtable(G, a_elements)
    m = len(a_elements)
    local_a = np.zeros(G.n + 1, dtype=np.int64)
    for i, e in enumerate(a_elements):
        local_a[e] = i + 1
    arr_a = np.array(a_elements, dtype=np.int64)
    action = np.empty((d, m), dtype=np.int64)
    for j, bj in enumerate(b_powers):
        conj = t[t[bj - 1, arr_a - 1] - 1, inv[bj - 1] - 1]
        imgs = local_a[conj]
        if imgs.min() == 0:
            raise ValidationError("A is not normalized by b")
        action[j] = imgs
    B_t = make_cyclic(d)
    spec = SemidirectSpec(A_t, B_t, action)
    pairing = np.empty((m, d), dtype=np.int64)
    a_of = np.full(G.n + 1, -1, dtype=np.int64)
    j_of = np.full(G.n + 1, -1, dtype=np.int64)
    for i, a in enumerate(a_elements):
        row = t[a - 1, np.array(b_powers, dtype=np.int64) - 1]
        pairing[i] = row
        a_of[row] = i
        j_of[row] = np.arange(d)
    if (a_of[1:] < 0).any():
        raise ValidationError("pairing A x <b> does not cover the group")
    multiplier = None
    if cyclic_a is not None and m > 1:
        # image of the A generator (local id 2 = a**1) under conjugation by b
        multiplier = int(action[1 % d, 1]) - 1 if d > 1 else 1
    elif cyclic_a is not None:
        multiplier = 0
    return SemidirectDecomposition(
        spec=spec, a_elements=tuple(a_elements), b_element=b,
        b_powers=tuple(b_powers), pairing=pairing, a_of=a_of, j_of=j_of,
        cyclic_a_generator=cyclic_a, multiplier=multiplier)


def _complement_generators(G: GroupTable, a_set: np.ndarray, d: int) -> list[int]:
    """Elements b of order d with <b> meeting the subgroup flagged by a_set
    only at the identity, ascending."""
    out = []
    orders = G.element_orders()
    for b in G.elements:
        if orders[b - 1] != d:
            continue
        ok = True
        cur = b
        while cur != G.identity:
            if a_set[cur]:
                ok = False
                break
            cur = int(G.table[cur - 1, b - 1])
        if ok:
            out.append(b)
    return out


def find_zgroup_decomposition(G: GroupTable) -> SemidirectDecomposition:
    """Split a group with cyclic Sylow subgroups as C_m x| C_d.

    Searches cyclic subgroups <a> by descending order and ascending
    generator id, keeps normal ones, and pairs them with the first
    complement generator of matching order.
    """
    if not is_z_group(G):
        p, pk = sylow_violation(G)
        raise PreconditionError(
            f"Sylow {p}-subgroup not cyclic: no element of order {pk}")
    orders = G.element_orders()
    for m in sorted(set(int(v) for v in orders), reverse=True):
        d = G.n // m
        for a in G.elements:
            if orders[a - 1] != m:
                continue
            members = cyclic_subgroup(G, a)
            if _is_normal(G, members) is not None:
                continue
            a_set = np.zeros(G.n + 1, dtype=bool)
            for e in members:
                a_set[e] = True
            for b in _complement_generators(G, a_set, d):
                return _build_decomposition(G, members, b, cyclic_a=a)
    raise PreconditionError(
        "no cyclic-by-cyclic decomposition found despite cyclic Sylow "
        "subgroups; the Sylow test misreported")


def find_semidirect_decomposition(G: GroupTable) -> SemidirectDecomposition:
    """Split G as A x| C_d with A abelian normal and cyclic complement.

    Candidate subgroups A are normal closures of single elements plus the
    whole group (abelian case), tried by descending size then ascending
    closure generator.  Raises when no such split exists.
    """
    candidates: list[tuple[int, int, tuple[int, ...]]] = []
    seen = set()
    if G.is_abelian():
        whole = tuple(G.elements)
        candidates.append((-G.n, 0, whole))
        seen.add(whole)
    classes = conjugacy_classes(G)
    for cls in classes:
        members = tuple(subgroup_closure(G, cls))
        if members in seen or len(members) == G.n:
            continue
        seen.add(members)
        sub, _ = subtable(G, list(members))
        if not sub.is_abelian():
            continue
        candidates.append((-len(members), cls[0], members))
    candidates.sort()
    for _, _, members in candidates:
        m = len(members)
        d = G.n // m
        a_set = np.zeros(G.n + 1, dtype=bool)
        for e in members:
            a_set[e] = True
        for b in _complement_generators(G, a_set, d):
            orders = G.element_orders()
            cyc = None
            if max(int(orders[e - 1]) for e in members) == m:
                cyc = min(e for e in members if orders[e - 1] == m)
            return _build_decomposition(G, list(members), b, cyclic_a=cyc)
    raise PreconditionError(
        "no abelian-normal-by-cyclic decomposition exists for this group")


# -- Hamiltonian structure ----------------------------------------------------

@dataclass(frozen=True)
class HamiltonianDecomposition:
    """Internal direct-product split G = Q x C with Q quaternion, C abelian.

    ``q8_embedding[q-1]`` maps the canonical quaternion numbering into G;
    ``c_elements`` lists the complement.  ``pairing[q-1, c-1]`` is the
    global id of embedding(q) * c_elements[c-1]; ``q_of`` / ``c_of``
    invert it.
    """

    q8_embedding: tuple[int, ...]
    c_table: GroupTable
    c_elements: tuple[int, ...]
    pairing: np.ndarray
    q_of: np.ndarray
    c_of: np.ndarray


def dedekind_violation(G: GroupTable) -> tuple[int, int] | None:
    """(x, g) with g<x>g^-1 not in <x>, or None when all cyclic subgroups
    are normal (which makes every subgroup normal)."""
    for x in G.elements:
        members = cyclic_subgroup(G, x)
        g = _is_normal(G, members)
        if g is not None:
            return x, g
    return None


def find_hamiltonian_decomposition(G: GroupTable) -> HamiltonianDecomposition:
    """Split a nonabelian Dedekind group as quaternion times abelian."""
    from .groups import make_quaternion

    if G.is_abelian():
        raise PreconditionError("group is abelian, not Hamiltonian")
    witness = dedekind_violation(G)
    if witness is not None:
        x, g = witness
        raise PreconditionError(
            f"subgroup <{x}> is not normal: conjugation by {g} leaves it")
    if G.n % 8:
        raise PreconditionError("order not divisible by 8")
    t = G.table
    inv = G.inverse
    orders = G.element_orders()
    q8 = make_quaternion()
    emb = None
    for x in G.elements:
        if orders[x - 1] != 4:
            continue
        x2 = int(t[x - 1, x - 1])
        xs = set(cyclic_subgroup(G, x))
        x3 = int(t[x2 - 1, x - 1])
        for y in G.elements:
            if orders[y - 1] != 4 or y in xs:
                continue
            if int(t[y - 1, y - 1]) != x2:
                continue
            if int(t[y - 1, x - 1]) != int(t[x3 - 1, y - 1]):
                continue    # need y*x = x^3*y
            cand = [G.identity, x, x2, x3]
            cand += [int(t[xi - 1, y - 1]) for xi in cand[:4]]
            ok = len(set(cand)) == 8 and all(
                int(t[cand[p] - 1, cand[q] - 1]) == cand[int(q8.table[p, q]) - 1]
                for p in range(8) for q in range(8))
            if ok:
                emb = cand
                break
        if emb:
            break
    if emb is None:
        raise PreconditionError("no quaternion subgroup found")

    x, y = emb[1], emb[4]
    idx = np.arange(G.n)
    cent = np.nonzero((t[idx, x - 1] == t[x - 1, idx]) &
                      (t[idx, y - 1] == t[y - 1, idx]))[0] + 1
    Z, z_globals = subtable(G, [int(v) for v in cent])
    if not Z.is_abelian() or Z.n * 4 != G.n:
        raise PreconditionError("centralizer of the quaternion part is malformed")
    coords = AbelianCoordinates(Z)
    for d in coords.orders:
        if d % 2 == 0 and d != 2:
            raise PreconditionError(
                "2-part of the centralizer is not elementary abelian")
    z_local = z_globals.index(emb[2]) + 1      # x^2 inside Z
    ztup = coords.coords[z_local - 1]
    pivots = [i for i, d in enumerate(coords.orders)
              if d == 2 and ztup[i] == 1]
    if not pivots:
        raise PreconditionError("central involution has no order-2 coordinate")
    drop = pivots[0]
    gens = [g for i, g in enumerate(coords.basis.generators) if i != drop]
    c_local = subgroup_closure(Z, gens)
    c_globals = sorted(z_globals[v - 1] for v in c_local)
    C, _ = subtable(G, c_globals)
    pairing = np.empty((8, C.n), dtype=np.int64)
    q_of = np.full(G.n + 1, -1, dtype=np.int64)
    c_of = np.full(G.n + 1, -1, dtype=np.int64)
    for q in range(8):
        row = t[emb[q] - 1, np.array(c_globals, dtype=np.int64) - 1]
        pairing[q] = row
        q_of[row] = q + 1
        c_of[row] = np.arange(1, C.n + 1)
    if (q_of[1:] < 0).any():
        raise PreconditionError("quaternion and complement do not cover the group")
    return HamiltonianDecomposition(
        q8_embedding=tuple(emb), c_table=C, c_elements=tuple(c_globals),
        pairing=pairing, q_of=q_of, c_of=c_of)


# -- simplicity ---------------------------------------------------------------

def is_simple(G: GroupTable) -> bool:
    """Standard definition: no proper nontrivial normal subgroup.

    Abelian groups are simple exactly at prime order.  For nonabelian
    groups it suffices to check that the normal closure of each nontrivial
    conjugacy class is the whole group.
    """
    if G.n == 1:
        return False
    if G.is_abelian():
        return len(_prime_factors(G.n)) == 1 and _prime_factors(G.n)[0][1] == 1
    for cls in conjugacy_classes(G):
        if cls == [G.identity]:
            continue
        if len(subgroup_closure(G, cls)) != G.n:
            return False
    return True

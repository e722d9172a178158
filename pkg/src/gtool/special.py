"""Linear-space representations for structured group classes.

CyclicRep answers queries with three array reads; CompositeRep handles
semidirect products of an abelian normal part by a cyclic complement in
four reads by keeping the action in coordinate space; SimpleRep walks a
short fixed path through a Cayley graph with a small generating set.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .base import (PreconditionError, Representation, ValidationError,
                   check_element_id, check_pairs)
from .groups import as_group
from .structure import (AbelianCoordinates, SemidirectDecomposition,
                        find_semidirect_decomposition,
                        find_zgroup_decomposition, is_simple, is_z_group)


class CyclicRep(Representation):
    """Exponent table for a cyclic group: x*y = B[(F[x] + F[y]) % n].

    ``F_[x-1]`` holds the exponent of x over the chosen generator and
    ``B_[i]`` the element with exponent i.  2n + 2 slots, three array
    reads per query.
    """

    rep_kind = "cyclic"

    def __init__(self, generator: int | None = None):
        self.generator = generator

    def fit(self, group):
        G = as_group(group)
        gen = self.generator
        if gen is None:
            orders = G.element_orders()
            hits = np.nonzero(orders == G.n)[0]
            if not hits.size:
                raise PreconditionError("group is not cyclic")
            gen = int(hits[0]) + 1
        else:
            gen = check_element_id(gen, G.n)
            if G.element_order(gen) != G.n:
                raise PreconditionError(
                    f"element {gen} has order {G.element_order(gen)}, not {G.n}")
        F = np.empty(G.n, dtype=np.int64)
        B = np.empty(G.n, dtype=np.int64)
        cur = G.identity
        for i in range(G.n):
            F[cur - 1] = i
            B[i] = cur
            cur = int(G.table[cur - 1, gen - 1])
        F.setflags(write=False)
        B.setflags(write=False)
        self.n_ = G.n
        self.generator_ = gen
        self.F_ = F
        self.B_ = B
        return self

    def multiply(self, x: int, y: int, ledger=None) -> int:
        self._require_fitted("F_")
        x = check_element_id(x, self.n_)
        y = check_element_id(y, self.n_)
        i = int(self.F_[x - 1])
        j = int(self.F_[y - 1])
        if ledger is not None:
            ledger.count("forward", 2)
            ledger.count("backward")
        return int(self.B_[(i + j) % self.n_])

    def predict(self, X) -> np.ndarray:
        self._require_fitted("F_")
        pairs = check_pairs(X, self.n_)
        s = (self.F_[pairs[:, 0] - 1] + self.F_[pairs[:, 1] - 1]) % self.n_
        return self.B_[s].astype(np.int64)

    def space_slots(self) -> dict[str, int]:
        self._require_fitted("F_")
        return {"forward": self.n_, "backward": self.n_, "meta": 2}

    def probe_bounds(self) -> tuple[int, int]:
        return (3, 3)


class CompositeRep(Representation):
    """Coordinate representation of G = A x| <b> with abelian A, cyclic <b>.

    Elements are encoded as packed coordinate tuples: the factors of A
    (one per prime-power basis order, or a single factor when A is taken
    in cyclic power order) followed by the exponent of b.  The forward
    array maps ids to packed tuples; the backward array is the dense
    inverse over the mixed-radix coordinate box; the action array maps
    (b-exponent, flat A-coordinate) to the image flat A-coordinate.  One
    query costs two forward reads, one action read, and one backward
    read; the in-coordinate products of the abelian parts are pure
    modular arithmetic.
    """

    rep_kind = "composite"

    def __init__(self, mode: str = "auto",
                 decomposition: SemidirectDecomposition | None = None):
        self.mode = mode
        self.decomposition = decomposition

    def fit(self, group):
        G = as_group(group)
        dec = self.decomposition
        if dec is None:
            if self.mode == "zgroup":
                dec = find_zgroup_decomposition(G)
            elif self.mode == "auto":
                if is_z_group(G):
                    dec = find_zgroup_decomposition(G)
                else:
                    dec = find_semidirect_decomposition(G)
            else:
                raise ValidationError(f"unknown mode {self.mode!r}")
        if dec.a_order * dec.b_order != G.n:
            raise PreconditionError(
                "decomposition orders disagree with the group")
        m_a, d = dec.a_order, dec.b_order

        if dec.cyclic_a_generator is not None:
            a_sizes = (m_a,)
            a_coords = np.arange(m_a, dtype=np.int64)[:, None]
            local_of_flat = np.arange(1, m_a + 1, dtype=np.int64)
        else:
            if not dec.spec.A.is_abelian():
                raise PreconditionError("normal part must be abelian")
            ac = AbelianCoordinates(dec.spec.A)
            a_sizes = tuple(ac.orders) if ac.orders else (1,)
            if ac.orders:
                a_coords = ac.coords
                local_of_flat = ac.element_of_flat
            else:
                a_coords = np.zeros((1, 1), dtype=np.int64)
                local_of_flat = np.ones(1, dtype=np.int64)

        sizes = a_sizes + (d,)
        widths = tuple(max(int(s - 1).bit_length(), 0) for s in sizes)
        if sum(widths) > 63:
            raise PreconditionError("packed coordinates exceed 63 bits")
        shifts = np.cumsum([0] + list(widths[:-1])).astype(np.int64)
        a_strides = np.ones(len(a_sizes), dtype=np.int64)
        for i in range(len(a_sizes) - 2, -1, -1):
            a_strides[i] = a_strides[i + 1] * a_sizes[i + 1]

        n = G.n
        a_of = dec.a_of[1:]          # 0-based local A index per global id
        j_of = dec.j_of[1:]
        flat_a = (a_coords * a_strides[None, :]).sum(axis=1)
        packed_a = (a_coords << shifts[None, :len(a_sizes)]).sum(axis=1)
        forward = packed_a[a_of] | (j_of << int(shifts[-1]))
        backward = np.zeros(m_a * d, dtype=np.int64)
        full_flat = flat_a[a_of] * d + j_of
        backward[full_flat] = np.arange(1, n + 1)

        action = np.empty((d, m_a), dtype=np.int64)
        act = np.asarray(dec.spec.action, dtype=np.int64)
        for j in range(d):
            img_local = act[j][local_of_flat - 1]       # flat -> image local id
            action[j] = flat_a[img_local - 1]

        for arr in (forward, backward, action):
            arr.setflags(write=False)
        self.n_ = n
        self.sizes_ = sizes
        self.widths_ = widths
        self.shifts_ = shifts
        self.a_strides_ = a_strides
        self.d_ = d
        self.a_order_ = m_a
        self.forward_ = forward
        self.backward_ = backward
        self.action_ = action
        return self

    def _unpack(self, w: int) -> tuple[list[int], int]:
        a = [(int(w) >> int(s)) & ((1 << wd) - 1) if wd else 0
             for s, wd in zip(self.shifts_[:-1], self.widths_[:-1])]
        j = int(w) >> int(self.shifts_[-1])
        return a, j

    def multiply(self, x: int, y: int, ledger=None) -> int:
        self._require_fitted("forward_")
        x = check_element_id(x, self.n_)
        y = check_element_id(y, self.n_)
        w1 = int(self.forward_[x - 1])
        w2 = int(self.forward_[y - 1])
        if ledger is not None:
            ledger.count("forward", 2)
        a1, j1 = self._unpack(w1)
        a2, j2 = self._unpack(w2)
        fa2 = int(np.dot(a2, self.a_strides_))
        fa3 = int(self.action_[j1, fa2])
        if ledger is not None:
            ledger.count("action")
        out_flat = 0
        for i, size in enumerate(self.sizes_[:-1]):
            c3 = (fa3 // int(self.a_strides_[i])) % size
            out_flat += ((a1[i] + c3) % size) * int(self.a_strides_[i])
        j3 = (j1 + j2) % self.d_
        if ledger is not None:
            ledger.count("backward")
        return int(self.backward_[out_flat * self.d_ + j3])

    def predict(self, X) -> np.ndarray:
        self._require_fitted("forward_")
        pairs = check_pairs(X, self.n_)
        w1 = self.forward_[pairs[:, 0] - 1]
        w2 = self.forward_[pairs[:, 1] - 1]
        j1 = w1 >> int(self.shifts_[-1])
        j2 = w2 >> int(self.shifts_[-1])
        na = len(self.sizes_) - 1
        a1 = np.empty((len(pairs), na), dtype=np.int64)
        a2 = np.empty((len(pairs), na), dtype=np.int64)
        for i in range(na):
            mask = (1 << self.widths_[i]) - 1
            a1[:, i] = (w1 >> int(self.shifts_[i])) & mask
            a2[:, i] = (w2 >> int(self.shifts_[i])) & mask
        fa2 = a2 @ self.a_strides_
        fa3 = self.action_[j1, fa2]
        out_flat = np.zeros(len(pairs), dtype=np.int64)
        for i, size in enumerate(self.sizes_[:-1]):
            c3 = (fa3 // int(self.a_strides_[i])) % size
            out_flat += ((a1[:, i] + c3) % size) * int(self.a_strides_[i])
        j3 = (j1 + j2) % self.d_
        return self.backward_[out_flat * self.d_ + j3].astype(np.int64)

    def space_slots(self) -> dict[str, int]:
        self._require_fitted("forward_")
        return {
            "forward": self.n_,
            "backward": self.n_,
            "action": self.d_ * self.a_order_,
            "meta": 3 + len(self.sizes_),      # n, d, |A|, factor sizes
        }

    def probe_bounds(self) -> tuple[int, int]:
        return (4, 4)


def build_cyclic_rep(group, generator: int | None = None) -> CyclicRep:
    return CyclicRep(generator=generator).fit(group)


def build_composite(group,
                    decomposition: SemidirectDecomposition | None = None
                    ) -> CompositeRep:
    return CompositeRep(decomposition=decomposition).fit(group)


def build_zgroup_rep(group) -> CompositeRep:
    """Composite representation with both factors cyclic; constant probes."""
    return CompositeRep(mode="zgroup").fit(group)


class SimpleRep(Representation):
    """Shortest-path representation over a small generating set.

    For a nonabelian simple group the builder scans generating sets in
    increasing size (pairs first), keeps the one whose Cayley graph has
    the smallest diameter (ties to the lexicographically first set), and
    stores each element's shortest path from the identity as packed edge
    labels.  A query folds the left operand through the n x |S| step
    table along the right operand's path.  Abelian simple groups (prime
    order) delegate to :class:`CyclicRep`.
    """

    rep_kind = "simple"

    def __init__(self, s_max: int = 4):
        self.s_max = s_max

    def fit(self, group):
        G = as_group(group)
        if not 1 <= int(self.s_max) <= 14:
            raise ValidationError(f"s_max={self.s_max} out of range [1, 14]")
        if not is_simple(G):
            raise PreconditionError("group is not simple")
        if G.is_abelian():
            self.n_ = G.n
            self.cyclic_ = CyclicRep().fit(G)
            return self
        self.cyclic_ = None

        t = G.table
        n = G.n
        candidates = [x for x in G.elements if x != G.identity]
        best = None                      # (diameter, gens)
        for s in range(2, int(self.s_max) + 1):
            for gens in combinations(candidates, s):
                d = _bfs_diameter(t, n, G.identity, gens)
                if d is None:
                    continue
                if best is None or d < best[0]:
                    best = (d, gens)
            if best is not None:
                break
        if best is None:
            raise PreconditionError(
                f"no generating set of size <= {self.s_max} found")
        diameter, gens = best

        dist, parent, label = _bfs_paths(t, n, G.identity, gens)
        wl = max(int(len(gens) - 1).bit_length(), 1)
        path = np.zeros(n, dtype=np.int64)
        plen = dist.astype(np.int64)
        for g in range(1, n + 1):
            labels = []
            cur = g
            while cur != G.identity:
                labels.append(int(label[cur - 1]))
                cur = int(parent[cur - 1])
            packed = 0
            for pos, lab in enumerate(reversed(labels)):
                packed |= lab << (pos * wl)
            path[g - 1] = packed
        M = t[:, np.array(gens, dtype=np.int64) - 1].astype(np.int32)
        for arr in (path, plen, M):
            arr.setflags(write=False)
        self.n_ = n
        self.generators_ = gens
        self.diameter_ = int(diameter)
        self.label_bits_ = wl
        self.path_ = path
        self.path_len_ = plen
        self.M_ = M
        return self

    def multiply(self, x: int, y: int, ledger=None) -> int:
        self._require_fitted("n_")
        if self.cyclic_ is not None:
            return self.cyclic_.multiply(x, y, ledger=ledger)
        x = check_element_id(x, self.n_)
        y = check_element_id(y, self.n_)
        steps = int(self.path_len_[y - 1])
        packed = int(self.path_[y - 1])
        if ledger is not None:
            ledger.count("forward", 2)
        mask = (1 << self.label_bits_) - 1
        cur = x
        for pos in range(steps):
            lab = (packed >> (pos * self.label_bits_)) & mask
            cur = int(self.M_[cur - 1, lab])
            if ledger is not None:
                ledger.count("table")
        return cur

    def predict(self, X) -> np.ndarray:
        self._require_fitted("n_")
        if self.cyclic_ is not None:
            return self.cyclic_.predict(X)
        pairs = check_pairs(X, self.n_)
        out = np.empty(len(pairs), dtype=np.int64)
        order = np.argsort(pairs[:, 1], kind="stable")
        mask = (1 << self.label_bits_) - 1
        i = 0
        while i < len(order):
            y = int(pairs[order[i], 1])
            j = i
            while j < len(order) and int(pairs[order[j], 1]) == y:
                j += 1
            rows = order[i:j]
            cur = pairs[rows, 0].astype(np.int64)
            packed = int(self.path_[y - 1])
            for pos in range(int(self.path_len_[y - 1])):
                lab = (packed >> (pos * self.label_bits_)) & mask
                cur = self.M_[cur - 1, lab].astype(np.int64)
            out[rows] = cur
            i = j
        return out

    def space_slots(self) -> dict[str, int]:
        self._require_fitted("n_")
        if self.cyclic_ is not None:
            slots = dict(self.cyclic_.space_slots())
            slots["meta"] = slots.get("meta", 0) + 1
            return slots
        return {
            "path": self.n_,
            "path_len": self.n_,
            "steps": self.n_ * len(self.generators_),
            "generators": len(self.generators_),
            "meta": 3,                   # n, |S|, diameter
        }

    def probe_bounds(self) -> tuple[int, int]:
        self._require_fitted("n_")
        if self.cyclic_ is not None:
            return self.cyclic_.probe_bounds()
        return (2, 2 + self.diameter_)


def build_simple_rep(group, s_max: int = 4) -> SimpleRep:
    return SimpleRep(s_max=s_max).fit(group)


def _bfs_diameter(t, n, identity, gens) -> int | None:
    """Diameter of the Cayley graph on ``gens``, or None if not generating."""
    gidx = np.array(gens, dtype=np.int64) - 1
    dist = np.full(n, -1, dtype=np.int32)
    dist[identity - 1] = 0
    frontier = np.array([identity], dtype=np.int64)
    level = 0
    reached = 1
    while frontier.size:
        prods = t[np.ix_(frontier - 1, gidx)].ravel()
        nxt = np.unique(prods)
        nxt = nxt[dist[nxt - 1] < 0]
        level += 1
        dist[nxt - 1] = level
        reached += nxt.size
        frontier = nxt
    if reached != n:
        return None
    return int(dist.max())


def _bfs_paths(t, n, identity, gens):
    """BFS recording first-discovered parent and generator label per element.

    The queue is FIFO and generators are explored in index order, so ties
    resolve to the earliest parent and the smallest label.
    """
    dist = np.full(n, -1, dtype=np.int32)
    parent = np.zeros(n, dtype=np.int64)
    label = np.zeros(n, dtype=np.int64)
    dist[identity - 1] = 0
    queue = [identity]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for i, g in enumerate(gens):
            w = int(t[v - 1, g - 1])
            if dist[w - 1] < 0:
                dist[w - 1] = dist[v - 1] + 1
                parent[w - 1] = v
                label[w - 1] = i
                queue.append(w)
    return dist, parent, label

"""Block representation: tunable space/query-time tradeoff for any group.

Each element's covering bitstring is split into blocks of l bits.  For
every element g and block i the structure precomputes an array of all 2^l
products of g with that block's subset products, so a query folds through
m = ceil(k/l) array probes after a single packed word-index read.  Space
is n*2^l*m + n + O(1) slots; l = floor(delta*log2 n) interpolates between
an O(n log n)-space / O(log n)-probe regime at delta = 1/log2(n) and a
constant-probe regime at delta = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .base import (CapacityError, PreconditionError, Representation,
                   ValidationError, check_element_id, check_pairs)
from .cubegen import CubeSequence, greedy_cube_sequence
from .groups import as_group

DEFAULT_MAX_SLOTS = 1 << 29      # 512 Mi slots = 2 GiB at 4 bytes per slot


@dataclass(frozen=True)
class QueryStats:
    """Array reads of one block query: always (1, m)."""

    word_array_reads: int
    mult_array_reads: int


def parse_delta(delta) -> Fraction:
    """Accept a Fraction, an int, or a 'p/q' string; exact rationals only."""
    if isinstance(delta, Fraction):
        return delta
    if isinstance(delta, int):
        return Fraction(delta)
    if isinstance(delta, str):
        return Fraction(delta)
    raise ValidationError(
        f"delta must be an exact rational (Fraction, int, or 'p/q'), "
        f"got {type(delta).__name__}")


def choose_block_length(n: int, k: int, delta) -> int:
    """l = clamp(floor(delta * log2 n), 1, k), evaluated exactly.

    The floor is computed by integer comparisons 2**(l*q) <= n**p, so no
    floating point is involved.  Requires 1/log2(n) <= delta <= 1.
    """
    if n < 2:
        raise PreconditionError("delta-based block choice needs n >= 2")
    frac = parse_delta(delta)
    p, q = frac.numerator, frac.denominator
    if p <= 0 or frac > 1 or (1 << q) > n ** p:
        raise ValidationError(
            f"delta={frac} out of range [1/log2({n}), 1]")
    l = 1
    while (1 << ((l + 1) * q)) <= n ** p:
        l += 1
    return max(1, min(l, k))


class BlockRep(Representation):
    """Precomputed block-product arrays with a packed per-element word index.

    Parameters
    ----------
    l : block length in bits, or None to derive it from ``delta``.
    delta : exact rational in [1/log2 n, 1]; used when ``l`` is None.
    max_slots : refuse builds whose multiplication arrays would exceed
        this many slots.

    After ``fit``: ``k_`` (cube length), ``l_``, ``m_`` (block count),
    ``generators_``, ``word_index_`` (n packed values), ``mult_arrays_``
    of shape (n, m, 2^l) with ``mult_arrays_[g-1, i, j]`` = g times the
    j-th subset product of block i.  Entry j = 0 is the empty product, so
    ``mult_arrays_[g-1, i, 0] == g`` always.
    """

    rep_kind = "block"

    def __init__(self, l: int | None = None, delta=None,
                 max_slots: int = DEFAULT_MAX_SLOTS):
        self.l = l
        self.delta = delta
        self.max_slots = max_slots

    def fit(self, group, cube: CubeSequence | None = None):
        G = as_group(group)
        if cube is None:
            cube, _ = greedy_cube_sequence(G)
        if cube.n != G.n:
            raise PreconditionError("cube sequence belongs to another group")
        k = cube.k
        if self.l is not None:
            l = int(self.l)
            if not 1 <= l <= max(k, 1):
                raise ValidationError(f"l={l} out of range [1, {max(k, 1)}]")
        elif self.delta is not None:
            l = choose_block_length(G.n, max(k, 1), self.delta)
        else:
            raise ValidationError("one of l or delta is required")
        m = -(-k // l)
        need = G.n * (1 << l) * m + G.n
        if need > self.max_slots:
            raise CapacityError(
                f"build needs {need} slots, ceiling is {self.max_slots}")

        self.n_ = G.n
        self.k_ = k
        self.l_ = l
        self.m_ = m
        self.generators_ = cube.elements
        # the packed word index is the covering bitstring itself: block i
        # occupies bits (i-1)*l .. i*l-1, zero-padded past k
        self.word_index_ = cube.epsilon.astype(np.int64)
        self.word_index_.setflags(write=False)

        two_l = 1 << l
        mult = np.empty((G.n, m, two_l), dtype=np.int32)
        for i in range(m):
            gens = cube.elements[i * l:(i + 1) * l]
            prods = np.empty(two_l, dtype=np.int64)
            prods[0] = G.identity
            for j in range(1, two_l):
                top = j.bit_length() - 1
                rest = j & ~(1 << top)
                if top < len(gens):
                    prods[j] = G.table[prods[rest] - 1, gens[top] - 1]
                else:
                    prods[j] = prods[rest]   # generator past k acts as identity
            mult[:, i, :] = G.table[:, prods - 1]
        mult.setflags(write=False)
        self.mult_arrays_ = mult
        return self

    # -- queries -----------------------------------------------------------

    def multiply(self, x: int, y: int, ledger=None) -> int:
        self._require_fitted("mult_arrays_")
        h = check_element_id(x, self.n_)
        g = check_element_id(y, self.n_)
        w = int(self.word_index_[g - 1])
        if ledger is not None:
            ledger.count("word_index")
        mask = (1 << self.l_) - 1
        cur = h
        for i in range(self.m_):
            s = (w >> (i * self.l_)) & mask
            cur = int(self.mult_arrays_[cur - 1, i, s])
            if ledger is not None:
                ledger.count("mult_array")
        return cur

    def multiply_with_stats(self, x: int, y: int) -> tuple[int, QueryStats]:
        return (self.multiply(x, y),
                QueryStats(word_array_reads=1, mult_array_reads=self.m_))

    def predict(self, X) -> np.ndarray:
        self._require_fitted("mult_arrays_")
        pairs = check_pairs(X, self.n_)
        h = pairs[:, 0]
        w = self.word_index_[pairs[:, 1] - 1]
        mask = (1 << self.l_) - 1
        cur = h.astype(np.int64)
        for i in range(self.m_):
            s = (w >> (i * self.l_)) & mask
            cur = self.mult_arrays_[cur - 1, i, s].astype(np.int64)
        return cur

    # -- ledgers -------------------------------------------------------------

    def space_slots(self) -> dict[str, int]:
        self._require_fitted("mult_arrays_")
        return {
            "mult_arrays": self.n_ * self.m_ * (1 << self.l_),
            "word_index": self.n_,
            "meta": 4,                      # n, k, l, m
        }

    def probe_bounds(self) -> tuple[int, int]:
        self._require_fitted("m_")
        return (1 + self.m_, 1 + self.m_)


def build_block_rep(group, cube: CubeSequence | None = None,
                    l: int | None = None, delta=None,
                    max_slots: int = DEFAULT_MAX_SLOTS) -> BlockRep:
    return BlockRep(l=l, delta=delta, max_slots=max_slots).fit(group, cube=cube)


@dataclass(frozen=True)
class TradeoffRow:
    delta: Fraction
    l: int
    m: int
    slots: int
    probes: int       # multiplication-array probes per query (= m); every
    error: str | None = None   # query adds one packed word-index read


def tradeoff_table(group, deltas, *, cube: CubeSequence | None = None,
                   max_slots: int = DEFAULT_MAX_SLOTS) -> list[TradeoffRow]:
    """Measured (not asymptotic) space/probe figures for a delta sweep.

    Failed rows (capacity or range errors) are recorded, not fatal.
    """
    G = as_group(group)
    if cube is None:
        cube, _ = greedy_cube_sequence(G)
    rows = []
    for d in deltas:
        frac = parse_delta(d)
        try:
            rep = BlockRep(delta=frac, max_slots=max_slots).fit(G, cube=cube)
            slots = sum(rep.space_slots().values())
            rows.append(TradeoffRow(delta=frac, l=rep.l_, m=rep.m_,
                                    slots=slots, probes=rep.m_))
        except (ValidationError, CapacityError) as exc:
            rows.append(TradeoffRow(delta=frac, l=0, m=0, slots=0, probes=0,
                                    error=str(exc)))
    return rows

"""Shared estimator plumbing: errors, parameter handling, input validation."""

from __future__ import annotations

import inspect
from typing import Any

import numpy as np


class GtoolError(Exception):
    """Base class for all library errors."""


class ParseError(GtoolError, ValueError):
    """Malformed Cayley-table text or serialized artifact."""


class ValidationError(GtoolError, ValueError):
    """A group axiom failed.  Carries the axiom name and a witness tuple."""

    def __init__(self, message: str, *, axiom: str | None = None,
                 witness: tuple | None = None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class PreconditionError(GtoolError, ValueError):
    """The group does not satisfy a representation's structural requirements."""


class CapacityError(PreconditionError):
    """A build would exceed the configured memory ceiling."""


class NotFittedError(GtoolError, RuntimeError):
    """fit() has not been called on this estimator."""


def check_cayley_table(X) -> np.ndarray:
    """Coerce ``X`` to an (n, n) int32 array with entries in [1, n].

    Only shape and value range are checked here; the group axioms are the
    responsibility of :class:`gtool.groups.GroupTable`.
    """
    arr = np.asarray(X)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(
            f"Cayley table must be square, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise ValidationError(f"Cayley table must be integer, got {arr.dtype}")
    n = arr.shape[0]
    if n == 0:
        raise ValidationError("Cayley table must have order >= 1")
    arr = arr.astype(np.int32, copy=False)
    if arr.min() < 1 or arr.max() > n:
        bad = np.argwhere((arr < 1) | (arr > n))[0]
        raise ValidationError(
            f"entry at row {bad[0] + 1}, column {bad[1] + 1} is outside [1, {n}]",
            axiom="range", witness=(int(bad[0]) + 1, int(bad[1]) + 1))
    return arr


def check_element_id(x, n: int) -> int:
    """Validate a 1-based element id against group order ``n``."""
    x = int(x)
    if not 1 <= x <= n:
        raise ValidationError(f"element id {x} out of range [1, {n}]")
    return x


def check_pairs(X, n: int) -> np.ndarray:
    """Coerce ``X`` to a (q, 2) int64 array of element-id pairs."""
    arr = np.asarray(X, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValidationError(f"expected a (q, 2) array of pairs, got {arr.shape}")
    if arr.size and (arr.min() < 1 or arr.max() > n):
        raise ValidationError(f"pair entries must lie in [1, {n}]")
    return arr


class Estimator:
    """Minimal scikit-learn style parameter interface.

    Subclasses declare their hyperparameters as ``__init__`` keyword
    arguments and store them verbatim on ``self``; fitted state uses
    trailing-underscore names.
    """

    @classmethod
    def _param_names(cls) -> list[str]:
        if cls.__init__ is object.__init__:
            return []
        sig = inspect.signature(cls.__init__)
        return [p.name for p in sig.parameters.values()
                if p.name != "self"
                and p.kind not in (p.VAR_KEYWORD, p.VAR_POSITIONAL)]

    def get_params(self, deep: bool = True) -> dict[str, Any]:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for key, value in params.items():
            if key not in valid:
                raise ValueError(
                    f"invalid parameter {key!r} for {type(self).__name__}")
            setattr(self, key, value)
        return self

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in sorted(self.get_params().items()))
        return f"{type(self).__name__}({args})"


class Representation(Estimator):
    """Base class for multiplication data structures.

    The lifecycle is ``rep = Kind(**params).fit(group)`` followed by
    read-only queries.  ``multiply`` answers one query; ``predict`` maps an
    array of (x, y) pairs to products.  All fitted state is immutable, so
    concurrent queries are safe.
    """

    rep_kind: str = "?"

    def fit(self, group):
        raise NotImplementedError

    def multiply(self, x: int, y: int, ledger=None) -> int:
        raise NotImplementedError

    def predict(self, X) -> np.ndarray:
        self._require_fitted("n_")
        pairs = check_pairs(X, self.n_)
        out = np.empty(len(pairs), dtype=np.int64)
        for i, (x, y) in enumerate(pairs):
            out[i] = self.multiply(int(x), int(y))
        return out

    def space_slots(self) -> dict[str, int]:
        """Exact per-array slot counts of the query-time store."""
        raise NotImplementedError

    def probe_bounds(self) -> tuple[int, int]:
        """(min, max) array reads performed by one multiply query."""
        raise NotImplementedError

    def _require_fitted(self, *attrs: str) -> None:
        for a in attrs:
            if not hasattr(self, a):
                raise NotFittedError(
                    f"{type(self).__name__} is not fitted; call fit() first")

"""Leaf signatures and the primitive operations on them.

A leaf signature is a multiset of integer depth bounds, kept in sorted
non-decreasing order.  Everything else in the library (solver, oracles,
tree reconstruction) is built from the four primitives here: the merge
value ``omega``, domination, truncation, and the single reduction step
``merge_reduce``.
"""

from __future__ import annotations

from typing import Iterable

from .errors import InputError


class LeafSignature(tuple):
    """Canonical (sorted non-decreasing) tuple of integer depth bounds.

    Equality, hashing and ordering are inherited from ``tuple``, so two
    signatures are equal exactly when they are the same multiset.
    Negative values are representable (reduction steps can produce them)
    but mark a dead state: no tree can realize a negative bound.
    """

    __slots__ = ()

    def __new__(cls, values: Iterable[int]) -> "LeafSignature":
        vals = sorted(values)
        if not vals:
            raise InputError("a leaf signature needs at least one value")
        for v in vals:
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError(f"depth bounds must be integers, got {v!r}")
        return tuple.__new__(cls, vals)

    def __repr__(self) -> str:
        return f"LeafSignature({list(self)})"

    @property
    def max_value(self) -> int:
        return self[-1]

    @property
    def min_value(self) -> int:
        return self[0]

    def has_negative(self) -> bool:
        return self[0] < 0


def canonicalize(values: Iterable[int]) -> LeafSignature:
    """Sorted copy of ``values`` as a LeafSignature. Idempotent."""
    if isinstance(values, LeafSignature):
        return values
    return LeafSignature(values)


def validate_k(k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise InputError(f"edge-length sum k must be an integer >= 2, got {k!r}")
    return k


def omega(k: int, a1: int, a2: int) -> int:
    """Deepest permissible parent depth when merging two leaves with
    bounds ``a1`` and ``a2``: min(a1,a2) - max(1, ceil((k - |a1-a2|)/2)).

    Total on all integer inputs; the result always lies in
    [min(a1,a2) - ceil(k/2), min(a1,a2) - 1].
    """
    validate_k(k)
    gap = k - abs(a1 - a2)
    # (gap + 1) // 2 is ceil(gap / 2) for any integer gap
    return min(a1, a2) - max(1, (gap + 1) // 2)


def is_dominated(a: LeafSignature, b: LeafSignature) -> bool:
    """True iff every bound of ``a`` is <= the matching bound of ``b``.

    Matching sorted positions realizes the best possible pairing, so this
    is the multiset domination order.  Requires equal lengths.
    """
    if len(a) != len(b):
        raise InputError(f"cannot compare signatures of lengths {len(a)} and {len(b)}")
    return all(x <= y for x, y in zip(a, b))


def truncate(sig: LeafSignature, cap: int) -> LeafSignature:
    """Replace every value above ``cap`` by ``cap``."""
    if sig[-1] <= cap:
        return canonicalize(sig)
    return LeafSignature(min(v, cap) for v in sig)


def reduction_cap(k: int, out_len: int, w: int) -> int:
    """Truncation bound applied to a reduced signature of length ``out_len``
    whose inserted merge value is ``w``.

    Values are cut to w + k - 1 (no leaf can sit more than k-1 below the
    deepest internal vertex).  A singleton result is additionally cut to 0:
    a one-leaf tree has its leaf at the root, so any non-negative bound is
    equivalent to 0.
    """
    cap = w + k - 1
    if out_len == 1:
        cap = min(cap, 0)
    return cap


def merge_reduce(k: int, a: LeafSignature, i: int, j: int) -> LeafSignature:
    """One reduction step: merge the bounds at positions ``i`` and ``j``.

    Removes a[i] and a[j], inserts omega(k, a[i], a[j]), and truncates the
    result at reduction_cap.  The output is canonical and one shorter.
    """
    validate_k(k)
    n = len(a)
    if n < 2:
        raise InputError("merge_reduce needs a signature of length >= 2")
    if i == j or not (0 <= i < n) or not (0 <= j < n):
        raise InputError(f"invalid merge positions ({i}, {j}) for length {n}")
    w = omega(k, a[i], a[j])
    cap = reduction_cap(k, n - 1, w)
    rest = [min(v, cap) for p, v in enumerate(a) if p != i and p != j]
    rest.append(min(w, cap))
    return LeafSignature(rest)

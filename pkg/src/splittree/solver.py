"""Level-set decision procedure for realizability of a leaf signature.

Starting from the input signature, every level applies all single merge
steps to every surviving signature, discards candidates that are dominated
by a sibling candidate, and keeps one predecessor record per distinct
signature so a witness tree can be rebuilt afterwards.  A signature is
realizable iff a non-negative singleton survives down at length 1.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import InputError, LimitError
from .signature import (
    LeafSignature,
    canonicalize,
    is_dominated,
    omega,
    reduction_cap,
    truncate,
    validate_k,
)


@dataclass(frozen=True)
class MergeRecord:
    """Provenance of one reduction step.

    ``omega`` is the value actually inserted into the child (the raw merge
    value, cut to ``cap``).  ``l_value`` is the smallest value inserted
    anywhere along this child's derivation; the input signature carries
    ``math.inf``.  Every record satisfies max(child) <= l_value + k - 1.
    """

    parent: LeafSignature
    merged_lo: int
    merged_hi: int
    omega: int
    cap: int
    child: LeafSignature
    l_value: float


@dataclass(frozen=True)
class LevelSet:
    """Signatures of one length ``z`` surviving so far, with one record each.

    The input level has an empty record map.  ``|signatures| <= z**k`` is
    asserted by the solver when the level is built.
    """

    z: int
    signatures: frozenset[LeafSignature]
    record_of: dict[LeafSignature, MergeRecord]

    def __post_init__(self) -> None:
        assert all(len(sig) == self.z for sig in self.signatures)

    def sorted_signatures(self) -> list[LeafSignature]:
        return sorted(self.signatures)


@dataclass
class SolverStats:
    """Counters filled in while the level sets are computed."""

    signatures_generated: int = 0
    pruned_negative: int = 0
    pruned_dominated: int = 0
    peak_level_size: int = 0
    wall_time_s: float = 0.0

    def as_dict(self) -> dict:
        return {
            "signatures_generated": self.signatures_generated,
            "pruned_negative": self.pruned_negative,
            "pruned_dominated": self.pruned_dominated,
            "peak_level_size": self.peak_level_size,
            "wall_time_s": self.wall_time_s,
        }


@dataclass
class Decision:
    """Outcome of ``decide``: verdict, witness records, counters.

    ``witness_chain`` runs from the first merge applied to the input down
    to the final singleton; it is empty for unrealizable inputs and for
    single-leaf inputs.
    """

    realizable: bool
    witness_chain: list[MergeRecord]
    stats: SolverStats


@dataclass
class SolverConfig:
    """Knobs for ``decide``/``trace_levels``.

    ``prune_level_domination`` switches the optional cross-parent pruning
    of dominated signatures after each level (the verdict is the same
    either way; the level sets are smaller with it on).
    ``use_fast_generator`` picks the merge-value-class candidate generator
    over plain all-pairs enumeration; both produce identical sets.
    ``max_level_size``/``max_seconds`` abort with LimitError instead of
    ever returning a wrong verdict.
    """

    prune_level_domination: bool = True
    use_fast_generator: bool = True
    max_level_size: int | None = None
    max_seconds: float | None = None


def _make_record(
    k: int, a: LeafSignature, i: int, j: int, parent_l: float
) -> MergeRecord:
    w_raw = omega(k, a[i], a[j])
    cap = reduction_cap(k, len(a) - 1, w_raw)
    inserted = min(w_raw, cap)
    vals = [min(v, cap) for p, v in enumerate(a) if p != i and p != j]
    vals.append(inserted)
    child = LeafSignature(vals)
    l_value = min(parent_l, inserted)
    assert child.max_value <= l_value + k - 1
    return MergeRecord(
        parent=a,
        merged_lo=a[i],
        merged_hi=a[j],
        omega=inserted,
        cap=cap,
        child=child,
        l_value=l_value,
    )


def _dominated_filter(sigs: Iterable[LeafSignature]) -> list[LeafSignature]:
    """Signatures not dominated by another one in the collection.

    A dominator always has a strictly larger element sum (the input holds
    distinct signatures), so scanning in descending sum order lets every
    candidate be checked against the kept front only.
    """
    order = sorted(sigs, key=lambda s: (-sum(s), s))
    kept: list[LeafSignature] = []
    for c in order:
        if not any(is_dominated(c, o) for o in kept):
            kept.append(c)
    return kept


def _generate(
    k: int,
    a: LeafSignature,
    pairs: Iterable[tuple[int, int]],
    parent_l: float,
    stats: SolverStats | None,
) -> list[MergeRecord]:
    cands: dict[LeafSignature, MergeRecord] = {}
    negatives = 0
    generated = 0
    for i, j in pairs:
        rec = _make_record(k, a, i, j, parent_l)
        generated += 1
        if rec.child.has_negative():
            negatives += 1
            continue
        cands.setdefault(rec.child, rec)
    kept = _dominated_filter(cands)
    if stats is not None:
        stats.signatures_generated += generated
        stats.pruned_negative += negatives
        stats.pruned_dominated += len(cands) - len(kept)
    assert len(kept) <= k * (len(a) - 1)
    return [cands[c] for c in sorted(kept)]


def generate_children_naive(
    k: int,
    a: LeafSignature,
    parent_l: float = math.inf,
    stats: SolverStats | None = None,
) -> list[MergeRecord]:
    """All merge candidates of ``a``: one per unordered position pair,
    with negative children dropped and dominated candidates removed.
    Returned sorted by child signature."""
    validate_k(k)
    a = canonicalize(a)
    n = len(a)
    if n < 2:
        raise InputError("child generation needs a signature of length >= 2")
    pairs = [(i, j) for i in range(n - 1) for j in range(i + 1, n)]
    return _generate(k, a, pairs, parent_l, stats)


def generate_children_fast(
    k: int,
    a: LeafSignature,
    parent_l: float = math.inf,
    stats: SolverStats | None = None,
) -> list[MergeRecord]:
    """Same result set as ``generate_children_naive`` without materializing
    every pair.

    For a fixed smaller-side position i the merge value is non-decreasing
    in the partner's bound and takes at most ceil(k/2) distinct values.
    Among partners sharing a merge value, merging the smallest one leaves
    the largest leftover in the signature and therefore dominates the
    others, so only that representative pair per (i, value) class is
    expanded.
    """
    validate_k(k)
    a = canonicalize(a)
    n = len(a)
    if n < 2:
        raise InputError("child generation needs a signature of length >= 2")
    pairs: list[tuple[int, int]] = []
    for i in range(n - 1):
        best_j: dict[int, int] = {}
        for j in range(i + 1, n):
            # a[j] >= a[i]: position i is the min side of the pair
            best_j.setdefault(omega(k, a[i], a[j]), j)
        pairs.extend((i, j) for j in best_j.values())
    return _generate(k, a, pairs, parent_l, stats)


def prune_level(level: LevelSet) -> LevelSet:
    """Drop signatures dominated by another signature in the same level."""
    kept = _dominated_filter(level.signatures)
    record_of = {s: level.record_of[s] for s in kept if s in level.record_of}
    return LevelSet(level.z, frozenset(kept), record_of)


def _validate_instance(k: int, d: Iterable[int]) -> LeafSignature:
    validate_k(k)
    sig = canonicalize(d)
    if sig.min_value < 0:
        raise InputError(f"depth bounds must be >= 0, got {sig.min_value}")
    return sig


def _run_levels(
    k: int, d: Iterable[int], config: SolverConfig
) -> tuple[list[LevelSet], SolverStats]:
    sig = _validate_instance(k, d)
    n = len(sig)
    stats = SolverStats()
    start = time.perf_counter()
    deadline = None if config.max_seconds is None else start + config.max_seconds

    # a tree with n leaves has at most n-1 edges of length at most k-1 on
    # any root-leaf path, so larger bounds are slack
    top = truncate(sig, (k - 1) * (n - 1))
    levels = [LevelSet(n, frozenset({top}), {})]
    l_of: dict[LeafSignature, float] = {top: math.inf}
    stats.peak_level_size = 1

    generate: Callable[..., list[MergeRecord]] = (
        generate_children_fast if config.use_fast_generator else generate_children_naive
    )

    for z in range(n - 1, 0, -1):
        merged: dict[LeafSignature, MergeRecord] = {}
        for a in levels[-1].sorted_signatures():
            if deadline is not None and time.perf_counter() > deadline:
                raise LimitError(f"time limit of {config.max_seconds}s exceeded at level {z}")
            for rec in generate(k, a, parent_l=l_of[a], stats=stats):
                merged.setdefault(rec.child, rec)
        assert len(merged) <= z**k
        if config.prune_level_domination:
            kept = _dominated_filter(merged)
            stats.pruned_dominated += len(merged) - len(kept)
            merged = {c: merged[c] for c in kept}
        if config.max_level_size is not None and len(merged) > config.max_level_size:
            raise LimitError(
                f"level {z} holds {len(merged)} signatures, over the "
                f"limit of {config.max_level_size}"
            )
        levels.append(LevelSet(z, frozenset(merged), merged))
        l_of = {c: r.l_value for c, r in merged.items()}
        stats.peak_level_size = max(stats.peak_level_size, len(merged))
        if not merged:
            break

    stats.wall_time_s = time.perf_counter() - start
    return levels, stats


def trace_levels(
    k: int, d: Iterable[int], config: SolverConfig | None = None
) -> list[LevelSet]:
    """Every computed level from the input length down to 1.

    If some level comes out empty the remaining (all empty) levels are
    omitted; the last returned level is the empty one.
    """
    levels, _ = _run_levels(k, d, config or SolverConfig())
    return levels


def decide(k: int, d: Iterable[int], config: SolverConfig | None = None) -> Decision:
    """Decide whether a tree exists for bounds ``d`` and edge-length sum ``k``.

    Returns the verdict together with a witness chain of merge records
    (to be replayed by the tree builder) and instrumentation counters.
    """
    config = config or SolverConfig()
    levels, stats = _run_levels(k, d, config)

    if levels[-1].z != 1 or not levels[-1].signatures:
        return Decision(realizable=False, witness_chain=[], stats=stats)

    witness = max(levels[-1].signatures)
    assert len(witness) == 1 and witness[0] >= 0
    chain: list[MergeRecord] = []
    sig = witness
    for level in reversed(levels[1:]):
        rec = level.record_of[sig]
        chain.append(rec)
        sig = rec.parent
    chain.reverse()
    return Decision(realizable=True, witness_chain=chain, stats=stats)

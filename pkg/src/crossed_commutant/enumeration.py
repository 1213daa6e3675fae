"""Exhaustive enumeration of lifts and classification of refinement cases.

Given a base map and a refinement, the valid refined maps are exactly the
choices of a kind-preserving bijection from the children of each base piece
to the children of its image.  Arc choices are independent, so the stream
has the product of the per-arc counts; along a base orbit of length k whose
members have the same child structure that is (c_int! * c_pt!)^k.

Two instances are considered the same case when their commutant differences
agree up to a relabeling of pieces, which holds exactly when the sizes of
their (parent period, multiplier) classes with multiplier at least 2 match;
that multiset is the case signature.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .commutant import DifferenceDescription, commutant_difference
from .dynamics import PieceMap, _unchecked_piece_map, perm_cycles
from .errors import ScaleExceeded
from .partition import (
    PieceKind,
    Refinement,
    build_real_line_partition,
    evenly_spaced_inside,
    refine_real_line,
)

Instance = tuple[Refinement, PieceMap, PieceMap]


def _kind_split(refinement: Refinement, base_id: int) -> tuple[list[int], list[int]]:
    pieces = refinement.refined.pieces
    kids = refinement.children_of(base_id)
    ints = [c for c in kids if pieces[c].kind is not PieceKind.POINT]
    pts = [c for c in kids if pieces[c].kind is PieceKind.POINT]
    return ints, pts


def _arcs(refinement: Refinement, base_map: PieceMap):
    """Per base piece, the child groups of the piece and of its image.

    Returns None when some arc has mismatched group sizes, in which case no
    lift exists at all.
    """
    arcs = []
    for cycle in perm_cycles(base_map.perm):
        for b in cycle:
            b2 = base_map.perm[b]
            src = _kind_split(refinement, b)
            dst = _kind_split(refinement, b2)
            if len(src[0]) != len(dst[0]) or len(src[1]) != len(dst[1]):
                return None
            arcs.append((src, dst))
    return arcs


def count_refined_maps(refinement: Refinement, base_map: PieceMap) -> int:
    """Number of refined maps lifting ``base_map``; 0 when children mismatch."""
    arcs = _arcs(refinement, base_map)
    if arcs is None:
        return 0
    total = 1
    for (src_int, src_pt), _ in arcs:
        total *= math.factorial(len(src_int)) * math.factorial(len(src_pt))
    return total


def _assignments(src: Sequence[int], dst: Sequence[int]) -> list[tuple[tuple[int, int], ...]]:
    return [
        tuple((s, image) for s, image in zip(src, chosen))
        for chosen in itertools.permutations(dst)
    ]


def enumerate_refined_maps(
    refinement: Refinement, base_map: PieceMap
) -> Iterator[PieceMap]:
    """All refined maps lifting ``base_map``, in a fixed deterministic order.

    Interval assignments vary slowest and point assignments fastest, so
    consecutive stretches of the stream share all interval wiring.  The
    stream is empty when no lift exists.
    """
    if base_map.partition != refinement.base:
        raise ValueError("base map does not act on the refinement's base")
    arcs = _arcs(refinement, base_map)
    if arcs is None:
        return
    interval_choices = [_assignments(src[0], dst[0]) for src, dst in arcs]
    point_choices = [_assignments(src[1], dst[1]) for src, dst in arcs]
    refined = refinement.refined
    size = refined.piece_count
    n_arcs = len(arcs)
    for combo in itertools.product(*interval_choices, *point_choices):
        perm = [0] * size
        for assignment in combo[:n_arcs]:
            for s, image in assignment:
                perm[s] = image
        for assignment in combo[n_arcs:]:
            for s, image in assignment:
                perm[s] = image
        yield _unchecked_piece_map(refined, tuple(perm))


# ---------------------------------------------------------------------------
# case signatures


@dataclass(frozen=True)
class CaseSignature:
    """Sorted multiset of (parent period, multiplier, class size) triples.

    Only multipliers of at least 2 enter: multiplier-1 classes never open a
    gap between the coarse and refined commutants.  Instances share a
    signature exactly when their commutant differences agree up to piece
    relabeling.
    """

    triples: tuple[tuple[int, int, int], ...]

    def __str__(self) -> str:
        if not self.triples:
            return "no difference"
        return ", ".join(f"(k={k}, l={l}) x{size}" for k, l, size in self.triples)


def case_signature(difference: DifferenceDescription) -> CaseSignature:
    triples = sorted(
        (k, l, len(pieces))
        for (k, l), pieces in difference.tilde_classes.items()
        if l >= 2 and pieces
    )
    return CaseSignature(tuple(triples))


@dataclass
class CaseGroup:
    signature: CaseSignature
    count: int
    representative: Instance


def classify_cases(instances: Iterable[Instance]) -> dict[CaseSignature, CaseGroup]:
    """Group instances by case signature, keeping a deterministic representative.

    The representative is minimal by (piece count, base perm, refined perm),
    so reruns over the same stream pick the same witnesses.
    """
    groups: dict[CaseSignature, CaseGroup] = {}
    keys: dict[CaseSignature, tuple] = {}
    for instance in instances:
        refinement, base_map, refined_map = instance
        sig = case_signature(commutant_difference(refinement, base_map, refined_map))
        key = (refinement.refined.piece_count, base_map.perm, refined_map.perm)
        if sig not in groups:
            groups[sig] = CaseGroup(signature=sig, count=1, representative=instance)
            keys[sig] = key
        else:
            groups[sig].count += 1
            if key < keys[sig]:
                groups[sig].representative = instance
                keys[sig] = key
    return groups


# ---------------------------------------------------------------------------
# atlases of small configurations

DESK_SCALE_MAX_PIECES = 14


def integer_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples of positive integers summing to n; (n=0 gives ())."""
    if n < 0:
        raise ValueError("partitions are defined for n >= 0")

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield prefix
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(n, n, ())


def _kind_preserving_base_maps(partition) -> Iterator[PieceMap]:
    interval_ids = list(partition.interval_ids())
    point_ids = list(partition.point_ids())
    for iperm in itertools.permutations(interval_ids):
        for pperm in itertools.permutations(point_ids):
            perm = [0] * partition.piece_count
            for src, dst in zip(interval_ids, iperm):
                perm[src] = dst
            for src, dst in zip(point_ids, pperm):
                perm[src] = dst
            yield PieceMap(partition, tuple(perm))


def atlas_instances(
    total_points: int,
    base_n: int | None = None,
    max_pieces: int = DESK_SCALE_MAX_PIECES,
    max_lifts: int = 1_000_000,
) -> Iterator[Instance]:
    """Every way of adding ``total_points`` jump points at minimal base size.

    For each distribution of the points over distinct intervals, the base
    has exactly as many intervals as the distribution has parts (or base_n
    jump points when given), the first intervals receive the points, and
    every base map admitting lifts contributes its full lift stream.
    """
    for distribution in integer_partitions(total_points):
        parts = len(distribution)
        n = (parts - 1 if parts else 0) if base_n is None else base_n
        if parts > n + 1:
            raise ScaleExceeded(
                f"distribution {distribution} needs {parts} intervals, base has {n + 1}"
            )
        base = build_real_line_partition([Fraction(i) for i in range(1, n + 1)])
        additions = {
            alpha: evenly_spaced_inside(*base.bounds_of(alpha), count)
            for alpha, count in enumerate(distribution)
        }
        refinement = refine_real_line(base, additions)
        if refinement.refined.piece_count > max_pieces:
            raise ScaleExceeded(
                f"{refinement.refined.piece_count} pieces exceeds the desk-scale "
                f"bound of {max_pieces}"
            )
        for base_map in _kind_preserving_base_maps(base):
            lifts = count_refined_maps(refinement, base_map)
            if lifts == 0:
                continue
            if lifts > max_lifts:
                raise ScaleExceeded(f"{lifts} lifts exceeds the budget of {max_lifts}")
            for refined_map in enumerate_refined_maps(refinement, base_map):
                yield refinement, base_map, refined_map


# ---------------------------------------------------------------------------
# partition numbers and one-orbit subcase counts


def integer_partition_count(n: int) -> int:
    """The number of integer partitions of n, computed exactly."""
    if n < 0:
        raise ValueError("partitions are defined for n >= 0")
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def c1_subcase_count(k: int) -> int:
    """Predicted number of shape-distinct lifts for k points in one fixed interval.

    A lift permutes the k+1 subintervals and the k added points separately,
    and only the pair of cycle types matters, so the prediction is the
    product of the partition counts of k and k+1.
    """
    if k < 1:
        raise ValueError("need at least one added point")
    return integer_partition_count(k) * integer_partition_count(k + 1)


def _cycle_type(perm: Sequence[int], ids: Sequence[int]) -> tuple[int, ...]:
    remaining = set(ids)
    lengths = []
    while remaining:
        start = min(remaining)
        length = 0
        cur = start
        while True:
            remaining.discard(cur)
            length += 1
            cur = perm[cur]
            if cur == start:
                break
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


@dataclass(frozen=True)
class SubcaseDiagnostic:
    k: int
    formula: int
    machine: int

    @property
    def agree(self) -> bool:
        return self.formula == self.machine


def c1_subcase_diagnostic(k: int) -> SubcaseDiagnostic:
    """Compare the predicted subcase count against enumeration.

    Enumerates every lift for k points in one fixed interval and counts the
    distinct (interval cycle type, point cycle type) pairs.  Reports both
    numbers instead of asserting, so a disagreement is visible data.
    """
    formula = c1_subcase_count(k)
    base = build_real_line_partition([])
    refinement = refine_real_line(base, {0: evenly_spaced_inside(None, None, k)})
    base_map = PieceMap.identity(base)
    ints, pts = _kind_split(refinement, 0)
    shapes = set()
    for lift in enumerate_refined_maps(refinement, base_map):
        shapes.add((_cycle_type(lift.perm, ints), _cycle_type(lift.perm, pts)))
    return SubcaseDiagnostic(k=k, formula=formula, machine=len(shapes))

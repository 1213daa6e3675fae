"""Randomized self-checks: oracle equivalences and algebraic laws.

Instances are generated from a seeded RNG, so a given seed reproduces the
identical stream.  Each suite returns how many subjects passed and a
description of the first counterexample when one exists; the command line
front end prints one line per suite.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .commutant import (
    SubalgebraView,
    brute_force_sep,
    commutant_description,
    find_noncommuting_witness,
    generator_element,
    refined_sep,
    sep_set,
)
from .crossed import CoefficientVector, crossed_element, multiply, sigma_tilde_pow
from .dynamics import (
    PieceMap,
    PiProfile,
    check_pi,
    perm_cycles,
    pi_profile,
    realize_pi,
    refined_cycle_classes,
    validate_refined_invariance,
)
from .enumeration import count_refined_maps, enumerate_refined_maps
from .partition import (
    PieceKind,
    Refinement,
    build_abstract_partition,
    build_real_line_partition,
    evenly_spaced_inside,
    identity_refinement,
    refine_abstract,
    refine_real_line,
)

WINDOW = 12


@dataclass
class GeneratedInstance:
    refinement: Refinement
    base_map: PieceMap
    refined_map: PieceMap
    refined: bool

    @property
    def size(self) -> int:
        return self.refinement.refined.piece_count

    def describe(self) -> str:
        base = self.refinement.base
        flavor = type(base).__name__
        return (
            f"{flavor} base_perm={list(self.base_map.perm)} "
            f"refined_perm={list(self.refined_map.perm)} "
            f"children={[list(c) for c in self.refinement.children]}"
        )


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.passed == self.total and self.counterexample is None


# ---------------------------------------------------------------------------
# random generation


def _random_kind_preserving_perm(rng: random.Random, partition) -> tuple[int, ...]:
    perm = [0] * partition.piece_count
    groups: dict[PieceKind, list[int]] = {}
    for piece in partition.pieces:
        groups.setdefault(piece.kind, []).append(piece.id)
    for ids in groups.values():
        images = ids[:]
        rng.shuffle(images)
        for src, dst in zip(ids, images):
            perm[src] = dst
    return tuple(perm)


def _random_lift(rng: random.Random, refinement: Refinement, base_map: PieceMap) -> PieceMap:
    refined = refinement.refined
    perm = [0] * refined.piece_count
    for b in range(refinement.base.piece_count):
        b2 = base_map.perm[b]
        for kind_filter in (True, False):
            src = [c for c in refinement.children_of(b)
                   if (refined.pieces[c].kind is PieceKind.POINT) is kind_filter]
            dst = [c for c in refinement.children_of(b2)
                   if (refined.pieces[c].kind is PieceKind.POINT) is kind_filter]
            images = dst[:]
            rng.shuffle(images)
            for s, d in zip(src, images):
                perm[s] = d
    return PieceMap(refined, tuple(perm))


def random_instance(rng: random.Random, max_pieces: int = 11) -> GeneratedInstance:
    """One random instance, at most ``max_pieces`` fine pieces, two levels deep."""
    if rng.random() < 0.5:
        n = rng.randint(0, 3)
        jumps = sorted(rng.sample(range(0, 10), n))
        base = build_real_line_partition(jumps)
        base_map = PieceMap(base, _random_kind_preserving_perm(rng, base))
        if rng.random() < 0.35:
            return GeneratedInstance(identity_refinement(base), base_map, base_map, False)
        budget = (max_pieces - base.piece_count) // 2
        additions = {}
        interval_cycles = [
            cycle for cycle in perm_cycles(base_map.perm)
            if base.pieces[cycle[0]].kind is PieceKind.INTERVAL
        ]
        for cycle in interval_cycles:
            cap = budget // len(cycle)
            count = rng.randint(0, min(2, cap)) if cap > 0 else 0
            if count:
                budget -= count * len(cycle)
                for alpha in cycle:
                    additions[alpha] = evenly_spaced_inside(*base.bounds_of(alpha), count)
        refinement = refine_real_line(base, additions)
    else:
        count = rng.randint(1, 6)
        base = build_abstract_partition(count)
        perm = list(range(count))
        rng.shuffle(perm)
        base_map = PieceMap(base, tuple(perm))
        if rng.random() < 0.35:
            return GeneratedInstance(identity_refinement(base), base_map, base_map, False)
        cycles = perm_cycles(base_map.perm)
        cells: dict[int, int] = {}
        budget = max_pieces
        remaining_min = sum(len(c) for c in cycles)
        for cycle in cycles:
            remaining_min -= len(cycle)
            cap = (budget - remaining_min) // len(cycle)
            s = rng.randint(1, max(1, min(3, cap)))
            budget -= s * len(cycle)
            for b in cycle:
                cells[b] = s
        refinement = refine_abstract(base, cells)

    if refinement.is_identity:
        return GeneratedInstance(refinement, base_map, base_map, False)
    refined_map = _random_lift(rng, refinement, base_map)
    return GeneratedInstance(refinement, base_map, refined_map, True)


def _views(instance: GeneratedInstance) -> list[SubalgebraView]:
    views = [SubalgebraView.identity(instance.refinement.refined)]
    if instance.refined:
        views.append(SubalgebraView.of_refinement(instance.refinement))
    return views


def _random_vector(rng: random.Random, size: int) -> CoefficientVector:
    return CoefficientVector(
        tuple(
            Fraction(rng.randint(-2, 2), rng.randint(1, 3)) if rng.random() < 0.7 else Fraction(0)
            for _ in range(size)
        )
    )


def _random_element(rng: random.Random, size: int):
    degrees = rng.sample(range(-4, 5), rng.randint(1, 3))
    return crossed_element({n: _random_vector(rng, size) for n in degrees})


# ---------------------------------------------------------------------------
# suites


def suite_sep_oracle(seed: int, instances: int = 1000) -> SuiteResult:
    """Formula-based separation sets equal the generator-by-generator oracle."""
    rng = random.Random(seed)
    passed = 0
    for index in range(instances):
        instance = random_instance(rng)
        for view in _views(instance):
            for n in range(-WINDOW, WINDOW + 1):
                fast = sep_set(view, instance.refined_map, n)
                slow = brute_force_sep(view, instance.refined_map, n)
                if fast != slow:
                    return SuiteResult(
                        "sep formula = oracle",
                        passed,
                        instances,
                        f"instance {index}: n={n} formula={sorted(fast)} "
                        f"oracle={sorted(slow)} on {instance.describe()}",
                    )
        passed += 1
    return SuiteResult("sep formula = oracle", passed, instances)


def suite_action_laws(seed: int, iterations: int = 300) -> SuiteResult:
    """Transport is a group action by algebra automorphisms."""
    rng = random.Random(seed)
    passed = 0
    for index in range(iterations):
        instance = random_instance(rng)
        pm = instance.refined_map
        size = instance.size
        f, g = _random_vector(rng, size), _random_vector(rng, size)
        n, m = rng.randint(-6, 6), rng.randint(-6, 6)
        ok = (
            sigma_tilde_pow(f, pm, 0) == f
            and sigma_tilde_pow(sigma_tilde_pow(f, pm, m), pm, n) == sigma_tilde_pow(f, pm, n + m)
            and sigma_tilde_pow(f * g, pm, n) == sigma_tilde_pow(f, pm, n) * sigma_tilde_pow(g, pm, n)
            and sigma_tilde_pow(f + g, pm, n) == sigma_tilde_pow(f, pm, n) + sigma_tilde_pow(g, pm, n)
        )
        if not ok:
            return SuiteResult(
                "transport group action laws",
                passed,
                iterations,
                f"iteration {index}: n={n}, m={m} on {instance.describe()}",
            )
        passed += 1
    return SuiteResult("transport group action laws", passed, iterations)


def suite_algebra_laws(seed: int, triples: int = 500) -> SuiteResult:
    """Multiplication is associative and bilinear over the rationals."""
    rng = random.Random(seed)
    passed = 0
    for index in range(triples):
        instance = random_instance(rng)
        pm = instance.refined_map
        size = instance.size
        f, g, h = (_random_element(rng, size) for _ in range(3))
        a = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        b = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        assoc = multiply(multiply(f, g, pm), h, pm) == multiply(f, multiply(g, h, pm), pm)
        left = multiply(f.scale(a) + g.scale(b), h, pm) == (
            multiply(f, h, pm).scale(a) + multiply(g, h, pm).scale(b)
        )
        right = multiply(h, f.scale(a) + g.scale(b), pm) == (
            multiply(h, f, pm).scale(a) + multiply(h, g, pm).scale(b)
        )
        if not (assoc and left and right):
            return SuiteResult(
                "associativity and bilinearity",
                passed,
                triples,
                f"triple {index} on {instance.describe()}",
            )
        passed += 1
    return SuiteResult("associativity and bilinearity", passed, triples)


def _random_member(rng: random.Random, description):
    terms = {}
    for n in rng.sample(range(-6, 7), rng.randint(1, 3)):
        allowed = sorted(description.allowed(n))
        if not allowed:
            continue
        values = [Fraction(0)] * description.piece_count
        for p in allowed:
            if rng.random() < 0.7:
                values[p] = Fraction(rng.randint(-2, 2), rng.randint(1, 2))
        terms[n] = values
    return crossed_element(terms)


def suite_commutant_commutes(seed: int, pairs: int = 500) -> SuiteResult:
    """Any two members of the fine algebra's commutant commute.

    This is the commutativity half of maximality and it is specific to the
    commutant of the full function algebra: the commutant of a coarse
    subalgebra is larger and genuinely noncommutative.
    """
    rng = random.Random(seed)
    passed = 0
    for index in range(pairs):
        instance = random_instance(rng)
        view = _views(instance)[0]
        description = commutant_description(view, instance.refined_map)
        f = _random_member(rng, description)
        g = _random_member(rng, description)
        pm = instance.refined_map
        if multiply(f, g, pm) != multiply(g, f, pm):
            return SuiteResult(
                "commutant members commute",
                passed,
                pairs,
                f"pair {index} on {instance.describe()}",
            )
        passed += 1
    return SuiteResult("commutant members commute", passed, pairs)


def suite_noncommuting_witness(seed: int, count: int = 500) -> SuiteResult:
    """Every non-member is caught by a coarse indicator generator."""
    rng = random.Random(seed)
    passed = 0
    produced = 0
    attempts = 0
    while produced < count and attempts < count * 50:
        attempts += 1
        instance = random_instance(rng)
        view = _views(instance)[-1]
        pm = instance.refined_map
        description = commutant_description(view, pm)
        bad_degrees = [n for n in range(1, 7) if description.sep(n)]
        if not bad_degrees:
            continue
        n = rng.choice(bad_degrees)
        forbidden = sorted(description.sep(n))
        values = [Fraction(0)] * description.piece_count
        values[rng.choice(forbidden)] = Fraction(rng.randint(1, 3))
        elem = _random_member(rng, description) + crossed_element({n: values})
        produced += 1
        witness = find_noncommuting_witness(elem, view, pm)
        if witness is None:
            return SuiteResult(
                "non-members yield generator witnesses",
                passed,
                count,
                f"subject {produced}: no witness on {instance.describe()}",
            )
        g = generator_element(view, witness)
        if multiply(elem, g, pm) == multiply(g, elem, pm):
            return SuiteResult(
                "non-members yield generator witnesses",
                passed,
                count,
                f"subject {produced}: witness {witness} commutes on {instance.describe()}",
            )
        passed += 1
    return SuiteResult("non-members yield generator witnesses", passed, produced)


def suite_refinement_monotone(seed: int, instances: int = 400) -> SuiteResult:
    """Refining only grows separation sets, in the exact decomposed shape."""
    rng = random.Random(seed)
    passed = 0
    produced = 0
    attempts = 0
    while produced < instances and attempts < instances * 50:
        attempts += 1
        instance = random_instance(rng)
        if not instance.refined:
            continue
        produced += 1
        refinement, bm, rm = instance.refinement, instance.base_map, instance.refined_map
        coarse_view = SubalgebraView.of_refinement(refinement)
        rcc = refined_cycle_classes(refinement, bm, rm)
        for n in range(-WINDOW, WINDOW + 1):
            fine = refined_sep(refinement, bm, rm, n)
            coarse = sep_set(coarse_view, rm, n)
            extra = frozenset()
            for (k, l), pieces in rcc.tilde_classes.items():
                if n % k == 0 and (n // k) % l != 0:
                    extra |= pieces
            if not (coarse <= fine and fine == coarse | extra):
                return SuiteResult(
                    "refinement grows separation sets",
                    passed,
                    instances,
                    f"instance {produced}: n={n} on {instance.describe()}",
                )
        passed += 1
    return SuiteResult("refinement grows separation sets", passed, produced)


def suite_enumeration(seed: int, instances: int = 40) -> SuiteResult:
    """Lift streams are complete, valid, duplicate-free, and bounded."""
    rng = random.Random(seed)
    passed = 0
    produced = 0
    attempts = 0
    while produced < instances and attempts < instances * 50:
        attempts += 1
        instance = random_instance(rng, max_pieces=9)
        if not instance.refined:
            continue
        refinement, bm = instance.refinement, instance.base_map
        expected = count_refined_maps(refinement, bm)
        if not 0 < expected <= 5000:
            continue
        produced += 1
        seen = set()
        failure = None
        base_periods = None
        for lift in enumerate_refined_maps(refinement, bm):
            seen.add(lift.perm)
            if not validate_refined_invariance(refinement, bm, lift).ok:
                failure = f"invalid lift {list(lift.perm)}"
                break
            rcc = refined_cycle_classes(refinement, bm, lift)
            refined_pieces = refinement.refined.pieces
            for child, l in enumerate(rcc.multiplier_of):
                parent = refinement.parent_of[child]
                kids = refinement.children_of(parent)
                points = sum(
                    1 for c in kids if refined_pieces[c].kind is PieceKind.POINT
                )
                bound = points if refined_pieces[child].kind is PieceKind.POINT else len(kids) - points
                if l > max(bound, 1):
                    failure = f"multiplier {l} exceeds bound {bound} on piece {child}"
                    break
            if failure:
                break
        if failure is None and len(seen) != expected:
            failure = f"stream yielded {len(seen)} distinct lifts, expected {expected}"
        if failure:
            return SuiteResult(
                "lift enumeration complete and valid",
                passed,
                instances,
                f"instance {produced}: {failure} on {instance.describe()}",
            )
        passed += 1
    return SuiteResult("lift enumeration complete and valid", passed, produced)


def suite_profiles(seed: int, instances: int = 40) -> SuiteResult:
    """Profiles of valid lifts are admissible; admissible profiles are realized."""
    rng = random.Random(seed)
    passed = 0
    produced = 0
    attempts = 0
    while produced < instances and attempts < instances * 60:
        attempts += 1
        instance = random_instance(rng)
        if not instance.refined:
            continue
        refinement, bm, rm = instance.refinement, instance.base_map, instance.refined_map
        base = refinement.base
        rcc = refined_cycle_classes(refinement, bm, rm)
        checked_one = False
        failure = None
        for cycle in perm_cycles(bm.perm):
            if base.pieces[cycle[0]].kind is PieceKind.POINT:
                continue
            counts = {len(refinement.children_of(b)) for b in cycle}
            if len(counts) != 1:
                continue
            profile = pi_profile(rcc, cycle)
            checked_one = True
            if not check_pi(profile).ok:
                failure = f"inadmissible profile {profile} from orbit {cycle}"
                break
        if not checked_one:
            continue
        produced += 1
        if failure:
            return SuiteResult(
                "lift profiles are admissible",
                passed,
                instances,
                f"instance {produced}: {failure} on {instance.describe()}",
            )
        passed += 1
    # deterministic converse at small scale
    for k, p in product((1, 2), (1, 2)):
        for profile in _admissible_profiles(k, p):
            refinement, bm, rm = realize_pi(k, p, profile)
            rcc = refined_cycle_classes(refinement, bm, rm)
            back = pi_profile(rcc, range(k))
            if back.sorted_items() != profile.sorted_items():
                return SuiteResult(
                    "lift profiles are admissible",
                    passed,
                    produced,
                    f"realize round trip failed for k={k}, p={p}, {profile}",
                )
    return SuiteResult("lift profiles are admissible", passed, produced)


def _admissible_profiles(k: int, p: int) -> list[PiProfile]:
    profiles = []

    def rec(l: int, left: int, current: dict[int, int]):
        if left == 0:
            profiles.append(PiProfile(k=k, p=p, pi=dict(current)))
            return
        if l > p + 1:
            return
        for blocks in range(left // l + 1):
            if blocks:
                current[l] = blocks * l
            rec(l + 1, left - blocks * l, current)
            current.pop(l, None)

    rec(1, p + 1, {})
    return profiles


def run_selftest(seed: int, iterations: int = 1000) -> list[SuiteResult]:
    scale = max(1, iterations)
    return [
        suite_sep_oracle(seed, scale),
        suite_action_laws(seed + 1, max(50, scale // 3)),
        suite_algebra_laws(seed + 2, max(50, scale // 2)),
        suite_commutant_commutes(seed + 3, max(50, scale // 2)),
        suite_noncommuting_witness(seed + 4, max(50, scale // 2)),
        suite_refinement_monotone(seed + 5, max(40, scale // 3)),
        suite_enumeration(seed + 6, max(10, scale // 25)),
        suite_profiles(seed + 7, max(10, scale // 25)),
    ]

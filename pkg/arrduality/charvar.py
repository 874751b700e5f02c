"""Propagation and generic-vanishing checks over swept rank-1 characters.

A character rho is nonresonant when rho(gamma_g) != 1 for every meridian class
gamma_g of the chosen building sets. On nonresonant characters the cohomology
of M(A) must vanish below the duality dimension n - r and equal
(-1)^{n-r} chi(M) in that degree. Independently, the characteristic varieties
must form the chain {1} = V^0 <= V^1 <= ... <= V^{n-r}.

Violations are reported, never corrected.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .arrangement import (
    Arrangement,
    FlatPoset,
    build_flat_poset,
    corank,
    duality_dimension,
    euler_characteristic,
)
from .models import (
    GenericVanishingReport,
    NonresonanceCertificate,
    PropagationReport,
    ResonanceCell,
    VanishingWitness,
    Violation,
)
from .salvetti import (
    DEFAULT_EXHAUSTIVE_BUDGET,
    DEFAULT_MAX_DIMENSION,
    DEFAULT_MAX_HYPERPLANES,
    BettiVector,
    Character,
    CWModel,
    character_space,
    model_for,
    sweep_characters,
)
from .wonderful import all_gamma_classes, projective_gamma_classes

logger = logging.getLogger(__name__)

ClassVector = Tuple[int, ...]


@dataclass(frozen=True)
class SweepOptions:
    """How characters are drawn and how much work a sweep may do."""
    mode: str = "exhaustive"
    samples: int = 2000
    seed: Optional[int] = None
    workers: int = 1
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET
    max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES
    max_dimension: int = DEFAULT_MAX_DIMENSION


@dataclass(frozen=True)
class _SweepContext:
    poset: FlatPoset
    model: CWModel
    betti: Dict[Tuple[int, ...], BettiVector]
    n_eff: int
    corank: int
    euler_characteristic: int


def _sweep(a: Arrangement, p: int, options: SweepOptions) -> _SweepContext:
    poset = build_flat_poset(a)
    r = corank(a, poset)
    model = model_for(a, options.max_hyperplanes, options.max_dimension)
    betti = sweep_characters(
        model,
        p,
        mode=options.mode,
        samples=options.samples,
        seed=options.seed,
        workers=options.workers,
        budget=options.budget,
    )
    return _SweepContext(
        poset=poset,
        model=model,
        betti=betti,
        n_eff=duality_dimension("linear", a.ambient_dim, r),
        corank=r,
        euler_characteristic=euler_characteristic(poset),
    )


def _alternating_sum(betti: Sequence[int]) -> int:
    return sum((-1) ** q * b for q, b in enumerate(betti))


def _affine_note(ctx: _SweepContext) -> Optional[str]:
    if ctx.corank == 0:
        return None
    return f"non-essential arrangement (corank {ctx.corank}): chain tested up to n - r = {ctx.n_eff}"


def gamma_classes(a: Arrangement, building: str = "minimal", compactify: bool = False) -> Tuple[ClassVector, ...]:
    """Affine gamma classes, plus the classes at infinity when ``compactify`` is set."""
    classes = list(all_gamma_classes(a, building))
    if compactify:
        for v in projective_gamma_classes(a, building):
            if v not in classes:
                classes.append(v)
    return tuple(classes)


def is_nonresonant(rho: Character, gammas: Iterable[Sequence[int]]) -> NonresonanceCertificate:
    """Evaluate rho on each class; the character is nonresonant iff no value is 1."""
    checks = [(tuple(v), rho.evaluate(v)) for v in gammas]
    return NonresonanceCertificate(character=rho.values, prime=rho.prime, checks=checks)


def check_generic_vanishing(
    a: Arrangement,
    p: int,
    options: SweepOptions = SweepOptions(),
    building: str = "minimal",
    compactify: bool = False,
) -> GenericVanishingReport:
    """Nonresonant characters have b_i = 0 for i < n - r and b_{n-r} = (-1)^{n-r} chi."""
    ctx = _sweep(a, p, options)
    gammas = gamma_classes(a, building, compactify)
    d, chi = ctx.n_eff, ctx.euler_characteristic
    report = GenericVanishingReport(
        arrangement=a.name,
        prime=p,
        mode=options.mode,
        n_eff=d,
        corank=ctx.corank,
        euler_characteristic=chi,
        betti=ctx.betti,
        note=_affine_note(ctx),
    )
    for values, betti in ctx.betti.items():
        if _alternating_sum(betti) != chi:
            report.euler_mismatches.append(values)
        if not is_nonresonant(Character(p, values), gammas).nonresonant:
            continue
        report.nonresonant_count += 1
        if any(betti[:d]) or betti[d] != (-1) ** d * chi:
            report.failures.append(VanishingWitness(values, betti))
    logger.info(
        "generic vanishing on %s: %d nonresonant of %d, %d failures",
        a.name or "arrangement",
        report.nonresonant_count,
        len(ctx.betti),
        len(report.failures),
    )
    return report


def check_propagation(a: Arrangement, p: int, options: SweepOptions = SweepOptions()) -> PropagationReport:
    """Pointwise check of {1} = V^0 <= V^1 <= ... <= V^{n-r} over the swept characters."""
    ctx = _sweep(a, p, options)
    d = ctx.n_eff
    gammas = all_gamma_classes(a, poset=ctx.poset)
    report = PropagationReport(
        arrangement=a.name,
        prime=p,
        mode=options.mode,
        n_eff=d,
        corank=ctx.corank,
        euler_characteristic=ctx.euler_characteristic,
        betti=ctx.betti,
        note=_affine_note(ctx),
    )
    for values, betti in ctx.betti.items():
        if _alternating_sum(betti) != ctx.euler_characteristic:
            report.euler_mismatches.append(values)
        trivial = all(v == 1 for v in values)
        if (betti[0] > 0) != trivial:
            report.v0_trivial = False
        for lower in range(d):
            if betti[lower] == 0:
                continue
            for upper in range(lower + 1, d + 1):
                if betti[upper] == 0:
                    report.violations.append(Violation(values, lower, upper))
        if is_nonresonant(Character(p, values), gammas).nonresonant:
            report.nonresonant_count += 1
    if report.violations:
        logger.warning("%d propagation violations on %s", len(report.violations), a.name or "arrangement")
    return report


def resonance_locus_summary(
    a: Arrangement,
    p: int,
    options: SweepOptions = SweepOptions(),
    building: str = "minimal",
    characters: Optional[Iterable[Sequence[int]]] = None,
) -> List[ResonanceCell]:
    """Swept characters grouped by the set of gamma classes on which they resonate."""
    gammas = all_gamma_classes(a, building)
    if characters is None:
        characters = character_space(p, len(a), options.mode, options.samples, options.seed, options.budget)
    counts: Counter = Counter()
    for values in characters:
        counts[tuple(is_nonresonant(Character(p, values), gammas).resonant)] += 1
    return [ResonanceCell(pattern, counts[pattern]) for pattern in sorted(counts, key=lambda k: (len(k), k))]

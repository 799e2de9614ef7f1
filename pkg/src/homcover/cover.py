"""Explicit homogeneous covers as subdirect products.

The cover of G at length n lives inside G^h, h the number of automorphism
orbits on generating n-tuples: generator j is the tuple whose i-th
coordinate is entry j of the i-th orbit representative.  Coordinate
projections are then surjections onto G, one per orbit.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import caps
from .errors import ClosureCapExceeded, CoverTooLarge, PreconditionViolated
from .genseq import rank
from .groups import FiniteGroup, TupleGroup
from .homs import Homomorphism, extend_hom
from .orbits import decompose_orbits


@dataclass(frozen=True)
class CoverResult:
    base: FiniteGroup
    n: int
    representatives: tuple[tuple[int, ...], ...]
    group: TupleGroup
    generator_tuples: tuple[tuple[int, ...], ...]
    projections: tuple[Homomorphism, ...]

    @property
    def orbit_count(self) -> int:
        return len(self.representatives)

    @property
    def generator_ids(self) -> tuple[int, ...]:
        return self.group.generator_ids


def _assemble(base, n, representatives, max_order) -> CoverResult:
    h = len(representatives)
    gens = tuple(tuple(rep[j] for rep in representatives) for j in range(n))
    cap = min(caps.closure_cap(), max_order) if max_order else caps.closure_cap()
    try:
        cover = TupleGroup.generated([base] * h, gens, cap=cap)
    except ClosureCapExceeded as exc:
        raise CoverTooLarge(str(exc)) from exc
    projections = []
    for i in range(h):
        mapping = [t[i] for t in cover.tuples]
        if len(set(mapping)) != base.order:
            raise AssertionError(
                f"coordinate {i} is not surjective; cover is not subdirect")
        # cover generator j projects to entry j of representative i
        projections.append(Homomorphism(
            cover, base, mapping,
            gens=cover.generator_ids, images=tuple(representatives[i])))
    return CoverResult(base, n, tuple(representatives), cover, gens,
                       tuple(projections))


def build_cover(base: FiniteGroup, n: int, max_order=None) -> CoverResult:
    """Construct the cover of ``base`` at sequence length n.

    Deterministic: representatives are the lexicographic orbit minima in
    ascending order.  Raises CoverTooLarge when the closure would pass
    ``max_order`` (or the global closure cap).
    """
    if n < 1 or n < rank(base):
        raise PreconditionViolated(
            f"n={n} is below the minimal generating length {rank(base)}")
    decomposition = decompose_orbits(base, n)
    return _assemble(base, n, decomposition.representatives, max_order)


def coordinate_projection(cover: CoverResult, i: int) -> Homomorphism:
    """Projection of the cover onto coordinate i (0-based)."""
    if not 0 <= i < cover.orbit_count:
        raise IndexError(
            f"coordinate {i} out of range 0..{cover.orbit_count - 1}")
    return cover.projections[i]


@dataclass(frozen=True)
class TowerMap:
    base: FiniteGroup
    n: int
    m: int
    domain_cover: CoverResult
    codomain_cover: CoverResult
    hom: Homomorphism


def tower_map(base: FiniteGroup, n: int, m: int, max_order=None) -> TowerMap:
    """Surjection from the length-n cover onto the length-m cover.

    The length-n representatives are reordered so that those ending in
    n-m identities come first; their prefixes are exactly the length-m
    representatives, so projecting onto the first h_m coordinates maps the
    reordered length-n cover onto the length-m cover.
    """
    if not n > m >= 1:
        raise PreconditionViolated("need n > m >= 1")
    if m < rank(base):
        raise PreconditionViolated(
            f"m={m} is below the minimal generating length {rank(base)}")
    dec_n = decompose_orbits(base, n)
    dec_m = decompose_orbits(base, m)
    pad = (0,) * (n - m)
    padded = [s for s in dec_n.representatives if s[m:] == pad]
    others = [s for s in dec_n.representatives if s[m:] != pad]
    if tuple(s[:m] for s in padded) != dec_m.representatives:
        raise AssertionError(
            "identity-padded representatives do not restrict to the "
            "length-m representatives")
    ordered = tuple(padded) + tuple(others)
    domain = _assemble(base, n, ordered, max_order)
    codomain = _assemble(base, m, dec_m.representatives, max_order)
    h_m = codomain.orbit_count
    index = codomain.group.index
    mapping = []
    for t in domain.group.tuples:
        image = index.get(t[:h_m])
        if image is None:
            raise AssertionError(
                "projected cover element missing from the target cover")
        mapping.append(image)
    if len(set(mapping)) != codomain.group.order:
        raise AssertionError("tower projection is not surjective")
    hom = Homomorphism(domain.group, codomain.group, mapping,
                       gens=domain.group.generator_ids)
    return TowerMap(base, n, m, domain, codomain, hom)


def find_tower_splitting(tower: TowerMap) -> Homomorphism | None:
    """A homomorphism s with (tower map) o s = identity, by exhaustive
    search over the fibers above the target generators."""
    target = tower.codomain_cover.group
    source = tower.domain_cover.group
    gens = target.generator_ids
    fibers = [sorted(x for x in range(source.order)
                     if tower.hom.mapping[x] == g) for g in gens]

    def search(depth, chosen):
        if depth == len(gens):
            # any fiber choice already satisfies projection o s = identity
            # on the generators, hence everywhere once s is a homomorphism
            return extend_hom(target, gens, chosen, source, validate=False)
        for x in fibers[depth]:
            got = search(depth + 1, chosen + [x])
            if got is not None:
                return got
        return None

    return search(0, [])

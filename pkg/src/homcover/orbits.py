"""Automorphism orbits on generating sequences.

Two sequences are equivalent when some automorphism maps one to the other
entrywise; the working criterion is that the closure of the paired entries
in G x G is the graph of an automorphism, i.e. has exactly |G| elements.
No automorphism needs to be materialized to decide it.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import caps
from .errors import (
    EnumerationCapExceeded,
    FreeActionViolated,
    PreconditionViolated,
)
from .genseq import count_generating_sequences, generating_sequences, rank
from .groups import FiniteGroup, analysis_view, closure_ids, generates
from .homs import extend_hom, paired_closure


def sequences_equivalent(group: FiniteGroup, s, t, validate=True) -> bool:
    """True iff some automorphism maps s to t entrywise."""
    s, t = tuple(s), tuple(t)
    if len(s) != len(t):
        raise PreconditionViolated("sequences have different lengths")
    if validate and not (generates(group, s) and generates(group, t)):
        raise PreconditionViolated("both sequences must generate the group")
    packed = paired_closure(group, group, zip(s, t), cap=group.order)
    return packed is not None and len(packed) == group.order


@dataclass(frozen=True)
class OrbitDecomposition:
    group: FiniteGroup
    n: int
    representatives: tuple[tuple[int, ...], ...]
    orbit_size: int
    sequence_count: int

    @property
    def orbit_count(self) -> int:
        return len(self.representatives)


def enumerate_automorphisms(group: FiniteGroup, cap=None) -> list[list[int]]:
    """All automorphisms as element-id permutations, sorted.

    Backtracking over order-compatible images of a fixed generating
    sequence, pruned by the partial-graph criterion.
    """
    cap = caps.AUT_MATERIALIZE_CAP if cap is None else cap
    view = analysis_view(group)
    base = view.generating_sequence()
    if not base:
        return [[0]]
    sizes = [len(closure_ids(view, base[:i + 1])) for i in range(len(base))]
    base_orders = [view.element_order(g) for g in base]
    cands = [[t for t in view.elements() if view.element_order(t) == o]
             for o in base_orders]
    results: list[list[int]] = []

    def dfs(depth, pairs):
        if depth == len(base):
            hom = extend_hom(view, base, [b for _, b in pairs], view,
                             validate=False)
            if hom is not None and hom.is_bijective():
                if len(results) >= cap:
                    raise EnumerationCapExceeded(
                        f"more than {cap} automorphisms")
                results.append(hom.mapping)
            return
        for t in cands[depth]:
            trial = pairs + [(base[depth], t)]
            packed = paired_closure(view, view, trial, cap=sizes[depth])
            if packed is not None and len(packed) == sizes[depth]:
                dfs(depth + 1, trial)

    dfs(0, [])
    results.sort()
    return results


def _extends_to_automorphism(view, base, sizes, cands, pairs, depth) -> bool:
    """Does some automorphism realize the prescribed prefix pairs?"""
    if depth == len(base):
        hom = extend_hom(view, base, [b for _, b in pairs], view,
                         validate=False)
        return hom is not None and hom.is_bijective()
    for t in cands[depth]:
        trial = pairs + [(base[depth], t)]
        packed = paired_closure(view, view, trial, cap=sizes[depth])
        if packed is not None and len(packed) == sizes[depth]:
            if _extends_to_automorphism(view, base, sizes, cands, trial,
                                        depth + 1):
                return True
    return False


def _aut_order_chain(view) -> int:
    """|Aut| as a product of stabilizer-chain orbit sizes.

    With A_i the pointwise stabilizer of the first i base entries,
    |Aut| = prod_i |orbit of base[i] under A_{i-1}|; the last stabilizer is
    trivial because the base generates.  Each orbit membership question is
    one prescribed-prefix extension search.
    """
    base = view.generating_sequence()
    if not base:
        return 1
    sizes = [len(closure_ids(view, base[:i + 1])) for i in range(len(base))]
    base_orders = [view.element_order(g) for g in base]
    cands = [[t for t in view.elements() if view.element_order(t) == o]
             for o in base_orders]
    total = 1
    fixed: list[tuple[int, int]] = []
    for i, b in enumerate(base):
        orbit = 0
        for t in cands[i]:
            trial = fixed + [(b, t)]
            packed = paired_closure(view, view, trial, cap=sizes[i])
            if packed is None or len(packed) != sizes[i]:
                continue
            if _extends_to_automorphism(view, base, sizes, cands, trial,
                                        i + 1):
                orbit += 1
        total *= orbit
        fixed.append((b, b))
    return total


def aut_order(group: FiniteGroup) -> int:
    """|Aut(G)|: the orbit size of one generating sequence of rank length.

    When enumerating the rank-length sequences is affordable the orbit is
    counted directly; otherwise the stabilizer-chain product is used.
    """
    got = group._cache.get("aut_order")
    if got is not None:
        return got
    r = rank(group)
    if r == 0:
        got = 1
    else:
        view = analysis_view(group)
        if group.order ** r <= caps.STREAM_CAP:
            stream = generating_sequences(view, r)
            first = next(stream)
            got = 1
            for t in stream:
                if sequences_equivalent(view, first, t, validate=False):
                    got += 1
        else:
            got = _aut_order_chain(view)
    group._cache["aut_order"] = got
    return got


def decompose_orbits(group: FiniteGroup, n: int) -> OrbitDecomposition:
    """Partition the generating n-tuples into automorphism orbits.

    Representatives are the lexicographic minimum of each orbit, emitted
    in ascending order.  Raises FreeActionViolated if any orbit comes out
    smaller than |Aut| (mathematically impossible; a failed check would be
    a minimized bug report).
    """
    if n < 1:
        raise PreconditionViolated("sequence length must be >= 1")
    if n < rank(group):
        raise PreconditionViolated(
            f"n={n} is below the minimal generating length {rank(group)}")
    if group.order ** n > caps.STREAM_CAP:
        raise EnumerationCapExceeded(
            f"{group.order}^{n} candidates exceed the orbit enumeration cap "
            f"{caps.STREAM_CAP}")
    view = analysis_view(group)
    auts = enumerate_automorphisms(view)
    seen: set[tuple[int, ...]] = set()
    reps: list[tuple[int, ...]] = []
    total = 0
    for s in generating_sequences(view, n):
        total += 1
        if s in seen:
            continue
        orbit = {tuple(f[x] for x in s) for f in auts}
        if len(orbit) != len(auts):
            raise FreeActionViolated(
                f"orbit of {s} has {len(orbit)} elements, expected {len(auts)}",
                witness={"sequence": s, "orbit_size": len(orbit),
                         "aut_order": len(auts)})
        reps.append(s)
        seen.update(orbit)
    if len(reps) * len(auts) != total:
        raise FreeActionViolated(
            "orbit sizes do not partition the sequence count",
            witness={"orbit_count": len(reps), "orbit_size": len(auts),
                     "sequence_count": total})
    return OrbitDecomposition(group, n, tuple(reps), len(auts), total)


def orbit_count(group: FiniteGroup, n: int) -> int:
    """Number of automorphism orbits on generating n-tuples.

    0 when n is below the rank (no sequences).  Uses the full orbit
    decomposition when enumeration is affordable, otherwise the exact
    quotient |sequences| / |Aut|, which the free action makes integral.
    """
    if n < 1:
        raise PreconditionViolated("sequence length must be >= 1")
    if n < rank(group):
        return 0
    if group.order ** n <= caps.STREAM_CAP:
        try:
            return decompose_orbits(group, n).orbit_count
        except EnumerationCapExceeded:
            pass
    sequences = count_generating_sequences(group, n)
    automorphisms = aut_order(group)
    if sequences % automorphisms != 0:
        raise FreeActionViolated(
            f"|Aut|={automorphisms} does not divide |sequences|={sequences}",
            witness={"sequence_count": sequences,
                     "aut_order": automorphisms})
    return sequences // automorphisms


def is_homogeneous(group: FiniteGroup, n: int) -> bool:
    """Aut(G) acts transitively on generating n-tuples."""
    if n < 1:
        raise PreconditionViolated("sequence length must be >= 1")
    if group.order > 1 and n < rank(group):
        return False
    return orbit_count(group, n) == 1

"""Homomorphisms between concrete groups.

A map is stored as generator images plus the full element mapping.  The
well-formedness certificate is the graph criterion: the closure of the
paired generators inside domain x codomain is the graph of a map exactly
when its order equals the domain order.
"""

from __future__ import annotations

import random

from .errors import PreconditionViolated
from .groups import FiniteGroup, Subgroup, analysis_view, closure_ids, generates


class Homomorphism:
    """A homomorphism given by its full element mapping."""

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, mapping,
                 gens=None, images=None):
        self.domain = domain
        self.codomain = codomain
        self.mapping = list(mapping)
        if gens is None:
            gens = domain.generating_sequence()
        self.gens = tuple(gens)
        self.images = (tuple(images) if images is not None
                       else tuple(self.mapping[g] for g in self.gens))

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def apply(self, a: int) -> int:
        return self.mapping[a]

    def image_ids(self) -> set[int]:
        return set(self.mapping)

    def is_surjective(self) -> bool:
        return len(self.image_ids()) == self.codomain.order

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and self.is_surjective()

    def kernel(self) -> Subgroup:
        ids = tuple(a for a, b in enumerate(self.mapping) if b == 0)
        return Subgroup(self.domain, ids, ids)

    def preimage(self, b: int) -> list[int]:
        return [a for a, x in enumerate(self.mapping) if x == b]

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """self o inner (apply inner first)."""
        if inner.codomain is not self.domain:
            raise PreconditionViolated("composition domains do not match")
        return Homomorphism(inner.domain, self.codomain,
                            [self.mapping[x] for x in inner.mapping])

    def graph_pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.mapping))

    def check_multiplicative(self, samples=1000, seed=0) -> bool:
        """Spot-check f(ab) = f(a)f(b) on random pairs."""
        rng = random.Random(seed)
        n = self.domain.order
        dm, cm, f = self.domain.mul, self.codomain.mul, self.mapping
        for _ in range(samples):
            a, b = rng.randrange(n), rng.randrange(n)
            if f[dm(a, b)] != cm(f[a], f[b]):
                return False
        return True

    def __repr__(self):
        return (f"<Homomorphism {self.domain.order}->{self.codomain.order} "
                f"gens={self.gens} images={self.images}>")


def identity_automorphism(group: FiniteGroup) -> Homomorphism:
    return Homomorphism(group, group, range(group.order))


# ---------------------------------------------------------------------------
# graph closures in a direct product of two groups

_DENSE_PAIR_LIMIT = 1 << 16


def paired_closure(gleft: FiniteGroup, gright: FiniteGroup, pairs, cap):
    """Closure of {(a_i, b_i)} inside gleft x gright.

    Pairs are packed as a * |gright| + b.  Returns the set of packed ids,
    or None as soon as the closure grows past ``cap``.
    """
    m = gright.order
    gleft = analysis_view(gleft)
    gright = analysis_view(gright)
    lmul, rmul = gleft.mul, gright.mul
    gen_list = sorted({(a, b) for a, b in pairs} - {(0, 0)})
    seen = {0}
    if not gen_list:
        return seen
    frontier = [(0, 0)]
    dense = gleft.order * m <= _DENSE_PAIR_LIMIT
    member = bytearray(gleft.order * m) if dense else None
    if dense:
        member[0] = 1
    while frontier:
        nxt = []
        for a, b in frontier:
            for ga, gb in gen_list:
                x, y = lmul(a, ga), rmul(b, gb)
                packed = x * m + y
                if dense:
                    if not member[packed]:
                        member[packed] = 1
                        seen.add(packed)
                        nxt.append((x, y))
                elif packed not in seen:
                    seen.add(packed)
                    nxt.append((x, y))
        if len(seen) > cap:
            return None
        frontier = nxt
    return seen


def extend_hom(domain: FiniteGroup, seq, images,
               codomain: FiniteGroup | None = None,
               validate=True) -> Homomorphism | None:
    """The homomorphism sending seq[i] to images[i], if one exists.

    Absence is a value: returns None when the paired closure is not a
    graph.  ``seq`` must generate the domain.
    """
    if codomain is None:
        codomain = domain
    if len(seq) != len(images):
        raise PreconditionViolated("sequence and image lengths differ")
    if validate and not generates(domain, seq):
        raise PreconditionViolated("sequence does not generate the domain")
    packed = paired_closure(domain, codomain, list(zip(seq, images)),
                            cap=domain.order)
    if packed is None or len(packed) != domain.order:
        return None
    m = codomain.order
    mapping = [-1] * domain.order
    for pk in packed:
        a, b = divmod(pk, m)
        mapping[a] = b
    return Homomorphism(domain, codomain, mapping, gens=seq, images=images)


# ---------------------------------------------------------------------------
# searches

def _prefix_orders(group, seq):
    sizes = []
    for i in range(1, len(seq) + 1):
        sizes.append(len(closure_ids(group, seq[:i])))
    return sizes


def _partial_graph_ok(gleft, gright, pairs, expected_size):
    packed = paired_closure(gleft, gright, pairs, cap=expected_size)
    return packed is not None and len(packed) == expected_size


def find_isomorphism(left: FiniteGroup, right: FiniteGroup) -> Homomorphism | None:
    """Backtracking isomorphism search, pruned by element-order statistics.

    Candidate images are tried in ascending id order, so the first witness
    found is deterministic.
    """
    if left.order != right.order:
        return None
    lv, rv = analysis_view(left), analysis_view(right)
    from collections import Counter

    lorders = [lv.element_order(a) for a in lv.elements()]
    rorders = [rv.element_order(b) for b in rv.elements()]
    if Counter(lorders) != Counter(rorders):
        return None
    from .groups import structure_predicates

    if structure_predicates(lv).is_abelian != structure_predicates(rv).is_abelian:
        return None
    base = lv.generating_sequence()
    if not base:  # trivial group
        return Homomorphism(left, right, [0], gens=(), images=())
    sizes = _prefix_orders(lv, base)
    cands = [[b for b in rv.elements() if rorders[b] == lorders[g]]
             for g in base]

    def search(depth, pairs):
        if depth == len(base):
            hom = extend_hom(lv, base, [b for _, b in pairs], rv,
                             validate=False)
            if hom is not None and hom.is_bijective():
                return hom
            return None
        for b in cands[depth]:
            trial = pairs + [(base[depth], b)]
            if _partial_graph_ok(lv, rv, trial, sizes[depth]):
                got = search(depth + 1, trial)
                if got is not None:
                    return got
        return None

    hom = search(0, [])
    if hom is None:
        return None
    return Homomorphism(left, right, hom.mapping, gens=base,
                        images=hom.images)


def find_surjection(domain: FiniteGroup, codomain: FiniteGroup,
                    prescribed=None) -> Homomorphism | None:
    """A surjective homomorphism domain -> codomain, or None.

    With ``prescribed=(seq, images)`` only that assignment is tried.
    """
    if codomain.order == 0 or domain.order % codomain.order != 0:
        return None
    if prescribed is not None:
        seq, images = prescribed
        hom = extend_hom(domain, seq, images, codomain)
        if hom is not None and hom.is_surjective():
            return hom
        return None
    dv, cv = analysis_view(domain), analysis_view(codomain)
    base = dv.generating_sequence()
    if not base:
        return identity_automorphism(domain) if codomain.order == 1 else None
    sizes = _prefix_orders(dv, base)
    cands = []
    for g in base:
        g_order = dv.element_order(g)
        cands.append([b for b in cv.elements()
                      if g_order % cv.element_order(b) == 0])

    def search(depth, pairs):
        if depth == len(base):
            hom = extend_hom(dv, base, [b for _, b in pairs], cv,
                             validate=False)
            if hom is not None and hom.is_surjective():
                return hom
            return None
        for b in cands[depth]:
            trial = pairs + [(base[depth], b)]
            if _partial_graph_ok(dv, cv, trial, sizes[depth]):
                got = search(depth + 1, trial)
                if got is not None:
                    return got
        return None

    hom = search(0, [])
    if hom is None:
        return None
    return Homomorphism(domain, codomain, hom.mapping, gens=base,
                        images=hom.images)


def lift_generating_sequence(hom: Homomorphism, seq) -> tuple[int, ...]:
    """Lift a generating sequence of the codomain through a surjection.

    Backtracking over the fibers above each entry, in ascending id order.
    Existence is guaranteed once len(seq) >= rank(domain), so exhausting
    the search signals an internal bug.
    """
    from .genseq import rank

    domain = hom.domain
    if not hom.is_surjective():
        raise PreconditionViolated("homomorphism is not surjective")
    if not generates(hom.codomain, seq):
        raise PreconditionViolated("sequence does not generate the codomain")
    if len(seq) < rank(domain):
        raise PreconditionViolated(
            f"need at least rank(domain)={rank(domain)} entries, got {len(seq)}")
    fibers = [sorted(hom.preimage(s)) for s in seq]
    dv = analysis_view(domain)
    n = len(seq)

    def search(depth, prefix):
        if depth == n:
            return tuple(prefix) if generates(dv, prefix) else None
        for x in fibers[depth]:
            got = search(depth + 1, prefix + [x])
            if got is not None:
                return got
        return None

    got = search(0, [])
    if got is None:
        raise AssertionError(
            "no lift found; this contradicts the lifting guarantee")
    return got

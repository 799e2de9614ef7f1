"""Generating sequences: enumeration, counting, rank, and the
subgroup-lattice counting oracle.

Counting has two deliberately independent routes:

* enumeration (streaming, or its transition-count aggregation for large
  candidate spaces), which only ever joins subgroups, and
* the Moebius inclusion-exclusion sum over the subgroup lattice.

Tests cross-check the two on a corpus; neither shares counting logic
with the other.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from . import caps
from .errors import (
    EnumerationCapExceeded,
    LatticeCapExceeded,
    PreconditionViolated,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    analysis_view,
    closure_ids,
    generates,
)


def is_generating(group: FiniteGroup, entries) -> bool:
    return generates(group, entries)


def is_irredundant(group: FiniteGroup, entries, exhaustive=False) -> bool:
    """Generating, and no proper subsequence generates.

    Deleting entries one at a time is enough (a generating proper
    subsequence extends to a generating single-deletion subsequence);
    ``exhaustive=True`` checks every proper subsequence instead.
    """
    entries = tuple(entries)
    if not generates(group, entries):
        return False
    if exhaustive:
        for size in range(len(entries)):
            for keep in itertools.combinations(range(len(entries)), size):
                if generates(group, [entries[i] for i in keep]):
                    return False
        return True
    for i in range(len(entries)):
        if generates(group, entries[:i] + entries[i + 1:]):
            return False
    return True


# ---------------------------------------------------------------------------
# interned subgroup states: shared by streaming, counting, and the lattice

class _SubgroupStates:
    """Canonical keys for subgroups of one group, with a join memo."""

    def __init__(self, group):
        self.group = group
        self.key_of = {}
        self.elements = []
        self.member_sets = []
        self.gens = []
        self.trivial = self._intern((0,), ())
        self.cyclic_key = [None] * group.order
        self._join_memo = {}

    def _intern(self, ids, gens):
        fs = frozenset(ids)
        key = self.key_of.get(fs)
        if key is None:
            key = len(self.elements)
            self.key_of[fs] = key
            self.elements.append(tuple(ids))
            self.member_sets.append(fs)
            self.gens.append(tuple(gens))
        return key

    def size(self, key) -> int:
        return len(self.elements[key])

    def cyclic(self, x) -> int:
        key = self.cyclic_key[x]
        if key is None:
            ids = closure_ids(self.group, [x])
            key = self._intern(ids, (x,))
            self.cyclic_key[x] = key
        return key

    def join(self, key, x) -> int:
        """Key of the subgroup generated by subgroup ``key`` and element x."""
        if x in self.member_sets[key]:
            return key
        memo_key = (key, self.cyclic(x))
        got = self._join_memo.get(memo_key)
        if got is None:
            gens = self.gens[key] + (x,)
            ids = closure_ids(self.group, gens)
            got = self._intern(ids, gens)
            self._join_memo[memo_key] = got
        return got


def _states_for(group) -> _SubgroupStates:
    view = analysis_view(group)
    states = view._cache.get("subgroup_states")
    if states is None:
        states = _SubgroupStates(view)
        view._cache["subgroup_states"] = states
    return states


# ---------------------------------------------------------------------------
# enumeration and counting

def _check_candidates(group, n, max_candidates):
    cap = caps.CANDIDATE_CAP if max_candidates is None else max_candidates
    if group.order ** n > cap:
        raise EnumerationCapExceeded(
            f"{group.order}^{n} candidate tuples exceed cap {cap}")


def generating_sequences(group: FiniteGroup, n: int, max_candidates=None):
    """All generating n-tuples, lexicographically by element id.

    Prefix closures are memoized as interned subgroup keys, so the cost per
    emitted tuple is far below one closure computation.
    """
    if n < 1:
        raise PreconditionViolated("sequence length must be >= 1")
    _check_candidates(group, n, max_candidates)
    states = _states_for(group)
    order = group.order
    full_size = order

    def rec(prefix, key):
        depth = len(prefix)
        if states.size(key) == full_size:
            for rest in itertools.product(range(order), repeat=n - depth):
                yield prefix + rest
            return
        if depth == n:
            return
        for x in range(order):
            yield from rec(prefix + (x,), states.join(key, x))

    yield from rec((), states.trivial)


def count_generating_sequences(group: FiniteGroup, n: int,
                               max_candidates=None) -> int:
    """|{generating n-tuples}| by enumeration semantics.

    Small candidate spaces are counted by the streaming recursion; larger
    ones aggregate identical prefix-closure states per level, which counts
    the same tuples without visiting them individually.
    """
    if n < 1:
        raise PreconditionViolated("sequence length must be >= 1")
    order = group.order
    states = _states_for(group)
    use_stream = order ** n <= caps.STREAM_CAP
    if not use_stream and order > caps.LATTICE_ORDER_CAP:
        # too big to aggregate by subgroup states; stream if allowed to
        _check_candidates(group, n, max_candidates)
        use_stream = True
    if use_stream:
        def rec(depth, key):
            if states.size(key) == order:
                return order ** (n - depth)
            if depth == n:
                return 0
            return sum(rec(depth + 1, states.join(key, x))
                       for x in range(order))

        return rec(0, states.trivial)
    # transition aggregation over interned subgroup states
    counts = {states.trivial: 1}
    generating = 0
    for level in range(n):
        nxt: Counter = Counter()
        for key, cnt in counts.items():
            for x in range(order):
                k2 = states.join(key, x)
                if states.size(k2) == order:
                    generating += cnt * order ** (n - 1 - level)
                else:
                    nxt[k2] += cnt
        counts = nxt
    return generating


def rank(group: FiniteGroup) -> int:
    """Smallest n admitting a generating n-tuple; 0 for the trivial group."""
    got = group._cache.get("rank")
    if got is None:
        if group.order == 1:
            got = 0
        else:
            n = 1
            while count_generating_sequences(group, n) == 0:
                n += 1
                if n > group.order.bit_length() + 1:
                    raise AssertionError("rank search exceeded log2(order)")
            got = n
        group._cache["rank"] = got
    return got


# ---------------------------------------------------------------------------
# subgroup lattice and the Moebius counting oracle

@dataclass(frozen=True)
class SubgroupLattice:
    """All subgroups, ordered by (order, element ids), with Moebius values
    mu(H, G) normalized by mu(G, G) = 1."""

    group: FiniteGroup
    subgroups: tuple[Subgroup, ...]
    mobius: tuple[int, ...]

    def __len__(self):
        return len(self.subgroups)


def subgroup_lattice(group: FiniteGroup, max_order=None) -> SubgroupLattice:
    cap = caps.LATTICE_ORDER_CAP if max_order is None else max_order
    if group.order > cap:
        raise LatticeCapExceeded(
            f"group order {group.order} above lattice cap {cap}")
    cached = group._cache.get("lattice")
    if cached is not None:
        return cached
    states = _states_for(group)
    view = states.group
    # every subgroup is a join of cyclic subgroups, so element-at-a-time
    # joins starting from the trivial subgroup reach all of them
    seen = {states.trivial}
    queue = [states.trivial]
    while queue:
        key = queue.pop()
        for x in range(view.order):
            k2 = states.join(key, x)
            if k2 not in seen:
                seen.add(k2)
                queue.append(k2)
    keys = sorted(seen, key=lambda k: (states.size(k), states.elements[k]))
    member_sets = [states.member_sets[k] for k in keys]
    mobius = [0] * len(keys)
    mobius[-1] = 1  # the whole group sorts last
    for i in range(len(keys) - 2, -1, -1):
        total = 0
        for j in range(i + 1, len(keys)):
            if len(member_sets[j]) % len(member_sets[i]) == 0 \
                    and member_sets[i] < member_sets[j]:
                total += mobius[j]
        mobius[i] = -total
    subgroups = tuple(
        Subgroup(group, states.elements[k], states.gens[k]) for k in keys)
    lattice = SubgroupLattice(group, subgroups, tuple(mobius))
    group._cache["lattice"] = lattice
    return lattice


def eulerian_count(group: FiniteGroup, n: int, max_order=None) -> int:
    """Number of generating n-tuples by Moebius inversion:
    sum over subgroups of mu(H, G) * |H|^n.  Exact integers throughout."""
    if n < 1:
        raise PreconditionViolated("sequence length must be >= 1")
    lattice = subgroup_lattice(group, max_order=max_order)
    return sum(mu * sub.order ** n
               for mu, sub in zip(lattice.mobius, lattice.subgroups))

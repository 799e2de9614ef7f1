"""Exact representations of small finite groups.

Elements are dense integer ids ``0..order-1`` and id ``0`` is always the
identity.  Two backends exist: :class:`CayleyGroup` keeps a dense
multiplication table, :class:`TupleGroup` keeps a subgroup of a direct
product as sorted tuples of parent ids.  Everything downstream (sequence
enumeration, orbits, covers) only needs ``order``, ``mul`` and ``inv``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import caps
from .errors import (
    ClosureCapExceeded,
    NotADivisor,
    NotAGroup,
    NotNormal,
)


class FiniteGroup:
    """A finite group on element ids 0..order-1 with identity 0."""

    order: int

    def __init__(self):
        self._cache = {}

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.order)

    def label(self, a: int) -> str:
        return str(a)

    def power(self, a: int, k: int) -> int:
        """a**k by repeated squaring; negative k uses the inverse."""
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, a: int) -> int:
        orders = self._cache.setdefault("element_order", {})
        got = orders.get(a)
        if got is None:
            got, x = 1, a
            while x != 0:
                x = self.mul(x, a)
                got += 1
            orders[a] = got
        return got

    def exponent(self) -> int:
        got = self._cache.get("exponent")
        if got is None:
            got = 1
            for a in self.elements():
                got = math.lcm(got, self.element_order(a))
            self._cache["exponent"] = got
        return got

    def generating_sequence(self) -> tuple[int, ...]:
        """Greedy generating sequence: repeatedly add the smallest id
        outside the current closure.  Deterministic, length <= log2(order)."""
        got = self._cache.get("gens")
        if got is None:
            seq: list[int] = []
            current = {0}
            while len(current) < self.order:
                x = next(i for i in self.elements() if i not in current)
                seq.append(x)
                current = set(closure_ids(self, seq))
            got = tuple(seq)
            self._cache["gens"] = got
        return got

    def __repr__(self):
        return f"<{type(self).__name__} order={self.order}>"


class CayleyGroup(FiniteGroup):
    """Dense multiplication table backend."""

    def __init__(self, rows, labels=None, validate=True):
        super().__init__()
        self._rows = [list(r) for r in rows]
        self.order = len(self._rows)
        self.labels = list(labels) if labels is not None else None
        if validate:
            _validate_table(self._rows)
        self._inv = _inverse_table(self._rows)

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    @classmethod
    def from_function(cls, order, mul, labels=None, validate=False):
        rows = [[mul(a, b) for b in range(order)] for a in range(order)]
        return cls(rows, labels=labels, validate=validate)


class TupleGroup(FiniteGroup):
    """Subgroup of a direct product, elements stored as tuples of parent ids.

    Element ids index the lexicographically sorted tuple list, so the
    identity tuple (0, ..., 0) is always id 0.
    """

    def __init__(self, parents, element_tuples, generator_tuples=()):
        super().__init__()
        self.parents = list(parents)
        self.tuples = sorted(element_tuples)
        if not self.tuples or self.tuples[0] != (0,) * len(self.parents):
            raise NotAGroup("tuple subgroup does not contain the identity tuple")
        self.order = len(self.tuples)
        self.index = {t: i for i, t in enumerate(self.tuples)}
        if len(self.index) != self.order:
            raise NotAGroup("duplicate tuples in tuple subgroup")
        self._muls = [p.mul for p in self.parents]
        self._invs = [p.inv for p in self.parents]
        self.generator_ids = tuple(self.index[t] for t in generator_tuples)

    @classmethod
    def generated(cls, parents, generator_tuples, cap=None):
        """Closure of the given tuples under componentwise multiplication."""
        muls = [p.mul for p in parents]
        elems = _close_tuples(muls, len(parents), generator_tuples,
                              caps.closure_cap(cap))
        return cls(parents, elems, generator_tuples)

    @classmethod
    def full_product(cls, parents):
        """The whole direct product; lexicographic tuple order makes the
        id layout mixed-radix with the leftmost factor most significant."""
        import itertools

        tuples = list(itertools.product(*(range(p.order) for p in parents)))
        gens = _product_generator_tuples(parents)
        return cls(parents, tuples, gens)

    def mul(self, a: int, b: int) -> int:
        ta, tb = self.tuples[a], self.tuples[b]
        return self.index[tuple(m(x, y) for m, x, y in zip(self._muls, ta, tb))]

    def inv(self, a: int) -> int:
        ta = self.tuples[a]
        return self.index[tuple(f(x) for f, x in zip(self._invs, ta))]

    def label(self, a: int) -> str:
        t = self.tuples[a]
        return "(" + ",".join(p.label(x) for p, x in zip(self.parents, t)) + ")"

    def projection_image(self, coordinate: int) -> set[int]:
        return {t[coordinate] for t in self.tuples}


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as a sorted id tuple inside its parent group."""

    parent: FiniteGroup
    elements: tuple[int, ...]
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self.element_set()

    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def as_group(self) -> CayleyGroup:
        """Relabel the subgroup as a standalone group.

        The sorted element list starts with the identity (id 0 of the
        parent), so the relabeled identity is again id 0.
        """
        pos = {e: i for i, e in enumerate(self.elements)}
        mul = self.parent.mul
        rows = [[pos[mul(a, b)] for b in self.elements] for a in self.elements]
        labels = [self.parent.label(e) for e in self.elements]
        return CayleyGroup(rows, labels=labels, validate=False)


@dataclass(frozen=True)
class StructureFlags:
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool


# ---------------------------------------------------------------------------
# closure

def closure_ids(group: FiniteGroup, gens, cap=None) -> list[int] | None:
    """Sorted ids of the subgroup generated by ``gens``.

    Breadth-first products starting from the identity; in a finite group
    the set of words in the generators is already a subgroup.  Returns
    None as soon as the closure grows past ``cap``.
    """
    gen_list = sorted({g for g in gens if g != 0})
    if not gen_list:
        return [0]
    if cap is None:
        cap = group.order
    member = bytearray(group.order)
    member[0] = 1
    out = [0]
    frontier = [0]
    if isinstance(group, CayleyGroup):
        rows = group._rows
        while frontier:
            nxt = []
            for a in frontier:
                row = rows[a]
                for g in gen_list:
                    b = row[g]
                    if not member[b]:
                        member[b] = 1
                        out.append(b)
                        nxt.append(b)
            if len(out) > cap:
                return None
            frontier = nxt
    else:
        mul = group.mul
        while frontier:
            nxt = []
            for a in frontier:
                for g in gen_list:
                    b = mul(a, g)
                    if not member[b]:
                        member[b] = 1
                        out.append(b)
                        nxt.append(b)
            if len(out) > cap:
                return None
            frontier = nxt
    out.sort()
    return out


def closure(group: FiniteGroup, gens) -> Subgroup:
    """Smallest subgroup of ``group`` containing ``gens``."""
    ids = closure_ids(group, gens)
    return Subgroup(group, tuple(ids), tuple(gens))


def generates(group: FiniteGroup, entries) -> bool:
    ids = closure_ids(group, entries)
    return len(ids) == group.order


def _close_tuples(muls, width, generator_tuples, cap):
    """BFS closure of raw tuples under componentwise multiplication."""
    identity = (0,) * width
    gen_list = sorted({tuple(t) for t in generator_tuples} - {identity})
    for t in gen_list:
        if len(t) != width:
            raise ValueError(f"generator tuple {t} has width {len(t)}, expected {width}")
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gen_list:
                b = tuple(m(x, y) for m, x, y in zip(muls, a, g))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        if len(seen) > cap:
            raise ClosureCapExceeded(
                f"tuple closure exceeded cap of {cap} elements")
        frontier = nxt
    return seen


def _product_generator_tuples(parents):
    gens = []
    for i, p in enumerate(parents):
        for g in p.generating_sequence():
            t = [0] * len(parents)
            t[i] = g
            gens.append(tuple(t))
    return tuple(gens)


# ---------------------------------------------------------------------------
# derived constructions

def direct_power_subgroup(group: FiniteGroup, k: int, generator_tuples,
                          cap=None) -> TupleGroup:
    """Subgroup of group^k generated by the given k-wide tuples."""
    if k < 1:
        raise ValueError("power must be >= 1")
    return TupleGroup.generated([group] * k, generator_tuples, cap=cap)


def product_group(factors) -> FiniteGroup:
    """Direct product; tabulated when small enough for fast arithmetic."""
    factors = list(factors)
    if len(factors) == 1:
        return factors[0]
    full = TupleGroup.full_product(factors)
    if full.order <= caps.ANALYSIS_TABLE_CAP:
        return as_table(full)
    return full


def as_table(group: FiniteGroup) -> CayleyGroup:
    """A CayleyGroup view with identical element ids.

    Used to speed up repeated analysis of tuple-backed groups; caller must
    keep the order under caps.ANALYSIS_TABLE_CAP.
    """
    if isinstance(group, CayleyGroup):
        return group
    got = group._cache.get("table_view")
    if got is None:
        mul = group.mul
        n = group.order
        rows = [[mul(a, b) for b in range(n)] for a in range(n)]
        labels = [group.label(a) for a in range(n)]
        got = CayleyGroup(rows, labels=labels, validate=False)
        group._cache["table_view"] = got
    return got


def analysis_view(group: FiniteGroup) -> FiniteGroup:
    """Table view when affordable, original group otherwise."""
    if not isinstance(group, CayleyGroup) and group.order <= caps.ANALYSIS_TABLE_CAP:
        return as_table(group)
    return group


def quotient_group(group: FiniteGroup, normal: Subgroup):
    """Quotient by a normal subgroup plus the canonical surjection.

    The coset of the identity gets id 0; remaining cosets are ordered by
    their smallest member id.
    """
    if not is_normal(group, normal):
        raise NotNormal("subgroup is not normal")
    n_set = normal.element_set()
    mul = group.mul
    coset_of = [-1] * group.order
    reps = []
    for g in group.elements():
        if coset_of[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        for x in n_set:
            coset_of[mul(g, x)] = idx
    rows = [[coset_of[mul(a, b)] for b in reps] for a in reps]
    quotient = CayleyGroup(rows, validate=False)
    from .homs import Homomorphism

    projection = Homomorphism(group, quotient, coset_of)
    return quotient, projection


def is_normal(group: FiniteGroup, sub: Subgroup) -> bool:
    """Conjugation by a generating set suffices."""
    members = sub.element_set()
    for g in group.generating_sequence():
        for x in sub.elements:
            if group.conjugate(g, x) not in members:
                return False
    return True


def normal_closure(group: FiniteGroup, seed_ids) -> Subgroup:
    """Smallest normal subgroup containing the seed elements."""
    gens = sorted(set(seed_ids))
    current = closure_ids(group, gens)
    group_gens = group.generating_sequence()
    changed = True
    while changed:
        changed = False
        members = set(current)
        for g in group_gens:
            for x in current:
                c = group.conjugate(g, x)
                if c not in members:
                    gens.append(c)
                    changed = True
        if changed:
            current = closure_ids(group, gens)
    return Subgroup(group, tuple(current), tuple(gens))


# ---------------------------------------------------------------------------
# structural predicates

def commutator(group: FiniteGroup, a: int, b: int) -> int:
    """[a, b] = a b a^-1 b^-1."""
    return group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b)))


def _commutator_subgroup_ids(group, left_ids, right_ids):
    gens = {commutator(group, a, b) for a in left_ids for b in right_ids}
    return closure_ids(group, gens)


def derived_series(group: FiniteGroup) -> list[tuple[int, ...]]:
    """G >= G' >= G'' >= ... until the series stabilizes."""
    series = [tuple(group.elements())]
    while True:
        nxt = tuple(_commutator_subgroup_ids(group, series[-1], series[-1]))
        if nxt == series[-1]:
            return series
        series.append(nxt)


def lower_central_series(group: FiniteGroup) -> list[tuple[int, ...]]:
    """G >= [G,G] >= [[G,G],G] >= ... until the series stabilizes."""
    everything = tuple(group.elements())
    series = [everything]
    while True:
        nxt = tuple(_commutator_subgroup_ids(group, series[-1], everything))
        if nxt == series[-1]:
            return series
        series.append(nxt)


def structure_predicates(group: FiniteGroup) -> StructureFlags:
    got = group._cache.get("flags")
    if got is None:
        g = analysis_view(group)
        gens = g.generating_sequence()
        abelian = all(
            g.mul(a, b) == g.mul(b, a) for a in gens for b in gens)
        if abelian:
            got = StructureFlags(True, True, True)
        else:
            nilpotent = lower_central_series(g)[-1] == (0,)
            solvable = nilpotent or derived_series(g)[-1] == (0,)
            got = StructureFlags(False, nilpotent, solvable)
        group._cache["flags"] = got
    return got


def center(group: FiniteGroup) -> Subgroup:
    """Elements commuting with a generating set commute with everything."""
    g = analysis_view(group)
    gens = g.generating_sequence()
    mul = g.mul
    members = tuple(a for a in g.elements()
                    if all(mul(a, x) == mul(x, a) for x in gens))
    return Subgroup(group, members, members)


def sylow_subgroup(group: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup by greedy extension of p-element closures.

    Any p-subgroup below full Sylow order extends by some p-element, so
    the greedy scan (ascending ids, restart after every extension) always
    terminates at Sylow order.
    """
    if group.order % p != 0:
        raise NotADivisor(f"{p} does not divide group order {group.order}")
    g = analysis_view(group)
    target = 1
    rest = g.order
    while rest % p == 0:
        target *= p
        rest //= p
    p_elements = [x for x in g.elements()
                  if _is_power_of(g.element_order(x), p)]
    gens: list[int] = []
    current = [0]
    while len(current) < target:
        members = set(current)
        for x in p_elements:
            if x in members:
                continue
            extended = closure_ids(g, gens + [x], cap=target)
            if extended is not None and _is_power_of(len(extended), p):
                gens.append(x)
                current = extended
                break
        else:
            raise AssertionError("greedy Sylow extension got stuck")
    return Subgroup(group, tuple(current), tuple(gens))


def is_simple(group: FiniteGroup) -> bool:
    """Nontrivial with no proper nontrivial normal subgroup.

    Scans normal closures of single elements: any proper nontrivial normal
    subgroup contains one of them.
    """
    if group.order == 1:
        return False
    g = analysis_view(group)
    for x in range(1, g.order):
        if normal_closure(g, [x]).order != g.order:
            return False
    return True


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# ---------------------------------------------------------------------------
# table validation

def _inverse_table(rows):
    n = len(rows)
    inv = [-1] * n
    for a in range(n):
        for b in range(n):
            if rows[a][b] == 0:
                if rows[b][a] != 0:
                    raise NotAGroup(f"element {a} has no two-sided inverse")
                inv[a] = b
                break
        if inv[a] < 0:
            raise NotAGroup(f"element {a} has no inverse")
    return inv


def _validate_table(rows, sample_triples=10_000):
    """Group axioms for a raw table.

    Exhaustive associativity check (vectorized) up to order 512, random
    sampling above that; Latin-square and identity checks are always full.
    """
    n = len(rows)
    if n == 0:
        raise NotAGroup("empty table")
    full = set(range(n))
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotAGroup(f"row {i} has length {len(row)}, expected {n}")
        if set(row) != full:
            raise NotAGroup(f"row {i} is not a permutation of 0..{n - 1}")
    for j in range(n):
        if {rows[i][j] for i in range(n)} != full:
            raise NotAGroup(f"column {j} is not a permutation of 0..{n - 1}")
    for a in range(n):
        if rows[0][a] != a or rows[a][0] != a:
            raise NotAGroup("id 0 is not a two-sided identity")
    if n <= 512:
        import numpy as np

        table = np.asarray(rows, dtype=np.int64)
        for a in range(n):
            if not np.array_equal(table[table[a]], table[a][table]):
                raise NotAGroup(f"associativity fails for some (a,b,c) with a={a}")
    else:
        rng = random.Random(0)
        for _ in range(sample_triples):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise NotAGroup(f"associativity fails at ({a},{b},{c})")

"""Executable verification suite.

Each check maps one structure theorem to a concrete computation over a
small group and returns a CheckReport.  Failed reports always carry a
finite witness, so a failing theorem check doubles as a minimized bug
report.  Cap overruns raise, they never silently pass.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import caps
from .cover import build_cover, find_tower_splitting, tower_map
from .errors import (
    CoverTooLarge,
    EnumerationCapExceeded,
    FreeActionViolated,
    NotSimple,
    PreconditionViolated,
)
from .genseq import (
    count_generating_sequences,
    generating_sequences,
    rank,
    subgroup_lattice,
)
from .groups import (
    FiniteGroup,
    analysis_view,
    center,
    is_normal,
    is_simple,
    product_group,
    quotient_group,
    structure_predicates,
    sylow_subgroup,
)
from .homs import extend_hom, find_isomorphism, find_surjection
from .orbits import (
    aut_order,
    decompose_orbits,
    enumerate_automorphisms,
    is_homogeneous,
    orbit_count,
)
from .specs import build_group, format_spec, parse_spec


@dataclass
class CheckReport:
    check: str
    group: str
    n: int | None
    passed: bool
    details: dict = field(default_factory=dict)

    def as_record(self) -> dict:
        record = {"check": self.check, "group": self.group}
        if self.n is not None:
            record["n"] = self.n
        record["pass"] = self.passed
        record.update(self.details)
        return record


@dataclass(frozen=True)
class Character:
    """A homomorphism from the complement (an elementary abelian p-group)
    into the order-p subgroup of units modulo q, given by an exponent
    vector against a fixed basis: coords a map to omega ** <e, a>."""

    p: int
    q: int
    omega: int
    exponents: tuple[int, ...]

    def value(self, coords) -> int:
        e = sum(ei * ai for ei, ai in zip(self.exponents, coords)) % self.p
        return pow(self.omega, e, self.q)

    @property
    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)


def _spec_text(group, spec=None) -> str:
    if spec is not None:
        return spec if isinstance(spec, str) else format_spec(spec)
    return f"<order {group.order}>"


# ---------------------------------------------------------------------------
# individual checks

def check_free_action(group: FiniteGroup, n: int, spec=None) -> CheckReport:
    """Orbit sizes all equal |Aut|, and orbits * |Aut| = sequence count.

    Falls back to the exact divisibility identity when full orbit
    enumeration is over caps.
    """
    name = _spec_text(group, spec)
    try:
        dec = decompose_orbits(group, n)
        return CheckReport("free-action", name, n, True, {
            "mode": "orbits",
            "h": dec.orbit_count,
            "orbit_size": dec.orbit_size,
            "gamma": dec.sequence_count,
        })
    except FreeActionViolated as exc:
        return CheckReport("free-action", name, n, False,
                           {"witness": exc.witness})
    except EnumerationCapExceeded:
        pass
    sequences = count_generating_sequences(group, n)
    automorphisms = aut_order(group)
    passed = sequences % automorphisms == 0
    details = {
        "mode": "divisibility",
        "gamma": sequences,
        "aut": automorphisms,
    }
    if passed:
        details["h"] = sequences // automorphisms
    else:
        details["witness"] = {"gamma": sequences, "aut": automorphisms}
    return CheckReport("free-action", name, n, passed, details)


def check_abelian_formula(group: FiniteGroup, n: int, spec=None,
                          max_cover_order=None) -> CheckReport:
    """Cover of an abelian group is the n-th power of the cyclic group on
    its exponent."""
    name = _spec_text(group, spec)
    if not structure_predicates(group).is_abelian:
        raise PreconditionViolated("abelian formula check needs an abelian group")
    cover = build_cover(group, n, max_order=max_cover_order)
    k = group.exponent()
    target = build_group("x".join([f"C{k}"] * n))
    iso = find_isomorphism(cover.group, target)
    details = {"cover_order": cover.group.order, "k": k,
               "target_order": target.order}
    if iso is None:
        details["witness"] = {"cover_order": cover.group.order,
                              "expected_order": target.order}
    return CheckReport("abelian-formula", name, n, iso is not None, details)


def check_nilpotent_sylow(group: FiniteGroup, n: int, spec=None,
                          max_cover_order=None) -> CheckReport:
    """Cover of a nilpotent group is the product of its Sylow covers."""
    name = _spec_text(group, spec)
    if not structure_predicates(group).is_nilpotent:
        raise PreconditionViolated("sylow factorization check needs a nilpotent group")
    primes = _prime_factors(group.order)
    cover = build_cover(group, n, max_order=max_cover_order)
    factor_covers = []
    for p in sorted(primes):
        sylow = sylow_subgroup(group, p).as_group()
        factor_covers.append(build_cover(sylow, n,
                                         max_order=max_cover_order).group)
    product = (factor_covers[0] if len(factor_covers) == 1
               else product_group(factor_covers))
    iso = find_isomorphism(cover.group, product)
    details = {"cover_order": cover.group.order,
               "product_order": product.order,
               "primes": sorted(primes)}
    if iso is None:
        details["witness"] = details.copy()
    return CheckReport("nilpotent-sylow", name, n, iso is not None, details)


def check_hall_independence(group: FiniteGroup, n: int, k: int,
                            spec=None, max_closure=None) -> CheckReport:
    """Pairwise inequivalent generating sequences of a nonabelian simple
    group generate the full k-th power when paired coordinatewise; an
    equivalent pair only generates a graph."""
    name = _spec_text(group, spec)
    _require_nonabelian_simple(group)
    dec = decompose_orbits(group, n)
    if k > dec.orbit_count:
        raise PreconditionViolated(
            f"asked for {k} inequivalent sequences, only {dec.orbit_count} orbits")
    from .groups import direct_power_subgroup

    reps = dec.representatives[:k]
    gens = [tuple(reps[i][j] for i in range(k)) for j in range(n)]
    power = direct_power_subgroup(group, k, gens, cap=max_closure)
    expected = group.order ** k
    passed = power.order == expected
    details = {"k": k, "power_order": power.order, "expected": expected}
    # an equivalent pair must collapse to a graph of order |G|
    auts = enumerate_automorphisms(group)
    nontrivial = auts[1] if len(auts) > 1 else auts[0]
    s = dec.representatives[0]
    t = tuple(nontrivial[x] for x in s)
    pair_gens = [(s[j], t[j]) for j in range(n)]
    graph = direct_power_subgroup(group, 2, pair_gens, cap=max_closure)
    details["equivalent_pair_order"] = graph.order
    if graph.order != group.order:
        passed = False
        details["witness"] = {"equivalent_pair_order": graph.order}
    return CheckReport("hall-independence", name, n, passed, details)


def check_simple_cover_order(group: FiniteGroup, n: int, spec=None,
                             max_closure=None) -> CheckReport:
    """Cover of a nonabelian simple group is the full h-th power.

    The order |S|^h is asserted arithmetically; the cover is only built
    when that order fits under the closure cap, otherwise a two-factor
    sanity closure substitutes.
    """
    name = _spec_text(group, spec)
    _require_nonabelian_simple(group)
    h = orbit_count(group, n)
    asserted = group.order ** h
    details = {"h": h, "asserted_order": str(asserted)}
    cap = caps.closure_cap(max_closure)
    passed = True
    if asserted <= cap:
        cover = build_cover(group, n, max_order=cap)
        passed = cover.group.order == asserted
        details["built_order"] = cover.group.order
    else:
        from .groups import direct_power_subgroup

        dec = decompose_orbits(group, n)
        reps = dec.representatives[:2]
        gens = [tuple(reps[i][j] for i in range(2)) for j in range(n)]
        power = direct_power_subgroup(group, 2, gens, cap=cap)
        passed = power.order == group.order ** 2
        details["sanity_pair_order"] = power.order
    if not passed:
        details["witness"] = dict(details)
    return CheckReport("simple-cover-order", name, n, passed, details)


def check_pq_structure(p: int, q: int, n: int,
                       max_cover_order=None) -> CheckReport:
    """Cover structure for the nonabelian group of order p*q.

    Expected: order q^((n-1)(p^n-1)) * p^n, a normal elementary abelian
    Sylow-q part of rank (n-1)(p^n-1) whose character eigenspaces each
    have size q^(n-1), quotient elementary abelian of order p^n, and
    trivial center.
    """
    spec_text = f"pq({p},{q})"
    expected_v_rank = (n - 1) * (p ** n - 1)
    expected_order = q ** expected_v_rank * p ** n
    cap = max_cover_order if max_cover_order is not None else caps.closure_cap()
    if expected_order > cap:
        raise CoverTooLarge(
            f"pq cover order {expected_order} exceeds cap {cap}")
    group = build_group(spec_text)
    cover = build_cover(group, n, max_order=cap)
    cg = analysis_view(cover.group)
    details: dict = {"cover_order": cg.order, "expected_order": expected_order}
    failures = {}
    if cg.order != expected_order:
        failures["order"] = cg.order

    sylow_q = sylow_subgroup(cg, q)
    v_group = sylow_q.as_group()
    v_rank = rank(v_group)
    details["v_order"] = sylow_q.order
    details["v_rank"] = v_rank
    if not is_normal(cg, sylow_q):
        failures["v_normal"] = False
    flags = structure_predicates(v_group)
    if not (flags.is_abelian and v_group.exponent() == q):
        failures["v_elementary_abelian"] = False
    if v_rank != expected_v_rank:
        failures["v_rank"] = v_rank

    quotient, _ = quotient_group(cg, sylow_q)
    details["quotient_order"] = quotient.order
    target = build_group("x".join([f"C{p}"] * n))
    if find_isomorphism(quotient, target) is None:
        failures["quotient"] = quotient.order

    z_order = center(cg).order
    details["center_order"] = z_order
    if z_order != 1:
        failures["center"] = z_order

    # character eigenspaces against a Sylow-p complement
    complement = sylow_subgroup(cg, p)
    coords = _elementary_coordinates(cg, complement.elements, p)
    basis = _elementary_basis(cg, complement.elements, p)
    omega = _order_p_unit(p, q)
    v_set = list(sylow_q.elements)
    sizes = {}
    spaces = {}
    for exps in itertools.product(range(p), repeat=n):
        chi = Character(p, q, omega, exps)
        members = [v for v in v_set
                   if all(cg.conjugate(z, v) == cg.power(v, chi.value(coords[z]))
                          for z in basis)]
        spaces[exps] = set(members)
        sizes[str(list(exps))] = len(members)
    details["eigenspace_sizes"] = sizes
    for exps, members in spaces.items():
        expected_size = 1 if all(e == 0 for e in exps) else q ** (n - 1)
        if len(members) != expected_size:
            failures.setdefault("eigenspaces", {})[str(list(exps))] = len(members)
    # distinct eigenspaces meet only in the identity, dimensions sum to rank(V)
    nontrivial = [s for e, s in spaces.items() if any(e)]
    for left, right in itertools.combinations(nontrivial, 2):
        if left & right != {0}:
            failures["eigenspace_intersection"] = sorted(left & right)
    dim_sum = sum(_log_exact(len(s), q) for s in nontrivial)
    details["eigenspace_dim_sum"] = dim_sum
    if dim_sum != expected_v_rank:
        failures["eigenspace_dim_sum"] = dim_sum

    if failures:
        details["witness"] = failures
    return CheckReport("pq-structure", spec_text, n, not failures, details)


def check_universal_lifting(group: FiniteGroup, n: int, spec=None,
                            samples=200, seed=0,
                            max_cover_order=None) -> CheckReport:
    """Prescribed surjections out of a homogeneous group exist for every
    (source sequence, target sequence) pair; covers of quotients are
    quotients of the cover."""
    name = _spec_text(group, spec)
    if not is_homogeneous(group, n):
        raise PreconditionViolated(
            "universal lifting check needs a homogeneous group at this length")
    rng = random.Random(seed)
    details: dict = {}
    failures = {}
    tried = 0
    quotients = _proper_quotients(group)
    details["quotients"] = len(quotients)
    source_pool = list(itertools.islice(generating_sequences(group, n), 5000))
    for label, quotient in quotients:
        target_pool = list(itertools.islice(
            generating_sequences(quotient, n), 5000))
        pairs = [(t, s) for t in source_pool for s in target_pool]
        if len(pairs) > samples:
            pairs = rng.sample(pairs, samples)
        for t, s in pairs:
            tried += 1
            hom = extend_hom(group, t, s, quotient, validate=False)
            if hom is None or not hom.is_surjective():
                failures[f"{label}:{t}->{s}"] = "no surjection"
    details["pairs_tried"] = tried
    # covers of quotients are quotients of the cover
    cover = build_cover(group, n, max_order=max_cover_order)
    for label, quotient in quotients:
        if quotient.order == 1:
            continue
        sub_cover = build_cover(quotient, n, max_order=max_cover_order)
        if find_surjection(cover.group, sub_cover.group) is None:
            failures[f"cover->{label}"] = "no surjection between covers"
    if failures:
        details["witness"] = failures
    return CheckReport("universal-lifting", name, n, not failures, details)


def check_tower(group: FiniteGroup, n: int, m: int, spec=None,
                max_cover_order=None) -> CheckReport:
    """The length-n cover surjects onto the length-m cover; also records
    whether the surjection splits."""
    name = _spec_text(group, spec)
    tower = tower_map(group, n, m, max_order=max_cover_order)
    mapping = tower.hom.mapping
    surjective = len(set(mapping)) == tower.codomain_cover.group.order
    split = find_tower_splitting(tower)
    details = {
        "domain_order": tower.domain_cover.group.order,
        "codomain_order": tower.codomain_cover.group.order,
        "surjective": surjective,
        "split_found": split is not None,
    }
    if not surjective:
        details["witness"] = {"image_size": len(set(mapping))}
    return CheckReport("tower", name, n, surjective, details)


def check_cover_invariants(group: FiniteGroup, n: int, spec=None,
                           max_cover_order=None) -> CheckReport:
    """Bundle: the cover is homogeneous of the right rank and preserves
    exponent and the abelian/nilpotent/solvable flags."""
    name = _spec_text(group, spec)
    cover = build_cover(group, n, max_order=max_cover_order)
    cg = analysis_view(cover.group)
    failures = {}
    h_cover = orbit_count(cg, n)
    if h_cover != 1:
        failures["h"] = h_cover
    cover_rank = rank(cg)
    if cover_rank != n:
        failures["rank"] = cover_rank
    if cg.exponent() != group.exponent():
        failures["exponent"] = cg.exponent()
    base_flags = structure_predicates(group)
    cover_flags = structure_predicates(cg)
    if base_flags != cover_flags:
        failures["flags"] = repr(cover_flags)
    details = {
        "cover_order": cg.order,
        "h_cover": h_cover,
        "rank_cover": cover_rank,
        "exponent": cg.exponent(),
        "flags": repr(cover_flags),
    }
    if failures:
        details["witness"] = failures
    return CheckReport("cover-invariants", name, n, not failures, details)


# ---------------------------------------------------------------------------
# corpus

# Groups the full verification suite runs over: all abelian groups of
# order <= 36 (see abelian_specs) plus these named nonabelian ones.
NONABELIAN_SUITE = ("S3", "D4", "Q8", "A4", "S4", "A5", "pq(2,3)")


def abelian_specs(max_order: int) -> list[str]:
    """One spec per isomorphism type of abelian group of order <= max_order,
    as a product of prime-power cyclic factors."""
    specs = []
    for m in range(1, max_order + 1):
        for factors in _abelian_types(m):
            specs.append("x".join(f"C{k}" for k in factors))
    return specs


def spec_language_corpus(max_order: int) -> list[str]:
    """Representatives of every group the spec language names, up to the
    given order: abelian types, dihedral, Q8, symmetric/alternating, and
    nonabelian pq groups."""
    specs = abelian_specs(max_order)
    specs += [f"D{k}" for k in range(2, max_order // 2 + 1)]
    if max_order >= 8:
        specs.append("Q8")
    for k in range(3, 9):
        if _factorial(k) <= max_order:
            specs.append(f"S{k}")
        if k >= 4 and _factorial(k) // 2 <= max_order:
            specs.append(f"A{k}")
    for q in range(3, max_order):
        if not _is_prime(q):
            continue
        for p in range(2, q):
            if _is_prime(p) and (q - 1) % p == 0 and p * q <= max_order:
                specs.append(f"pq({p},{q})")
    return specs


# ---------------------------------------------------------------------------
# helpers

def _require_nonabelian_simple(group):
    if structure_predicates(group).is_abelian or not is_simple(group):
        raise NotSimple("check requires a nonabelian simple group")


def _prime_factors(n: int) -> set[int]:
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and _prime_factors(n) == {n}


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _abelian_types(m: int):
    """All multisets of prime-power cyclic orders with product m."""
    if m == 1:
        return [(1,)]
    factorization = {}
    rest = m
    d = 2
    while d * d <= rest:
        while rest % d == 0:
            factorization[d] = factorization.get(d, 0) + 1
            rest //= d
        d += 1
    if rest > 1:
        factorization[rest] = factorization.get(rest, 0) + 1
    per_prime = []
    for p, e in sorted(factorization.items()):
        per_prime.append([tuple(p ** part for part in parts)
                          for parts in _partitions(e)])
    types = []
    for combo in itertools.product(*per_prime):
        factors = tuple(sorted(itertools.chain.from_iterable(combo)))
        types.append(factors)
    return types


def _partitions(n: int, largest=None):
    if n == 0:
        yield ()
        return
    if largest is None:
        largest = n
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _proper_quotients(group):
    """Nontrivial proper quotients (one per normal subgroup), labeled."""
    lattice = subgroup_lattice(group)
    quotients = []
    for i, sub in enumerate(lattice.subgroups):
        if sub.order in (1, group.order):
            continue
        if is_normal(group, sub):
            quotient, _ = quotient_group(group, sub)
            quotients.append((f"mod-{sub.order}.{i}", quotient))
    return quotients


def _elementary_basis(parent, member_ids, p):
    """Greedy independent generators of an elementary abelian subgroup,
    smallest parent ids first."""
    basis = []
    from .groups import closure_ids

    current = {0}
    for x in member_ids:
        if x not in current:
            basis.append(x)
            current = set(closure_ids(parent, basis))
    return basis


def _elementary_coordinates(parent, member_ids, p):
    """Coordinates of each member against the greedy basis."""
    basis = _elementary_basis(parent, member_ids, p)
    coords = {}
    for exps in itertools.product(range(p), repeat=len(basis)):
        g = 0
        for z, e in zip(basis, exps):
            g = parent.mul(g, parent.power(z, e))
        coords[g] = exps
    if len(coords) != len(member_ids):
        raise AssertionError("subgroup is not elementary abelian")
    return coords


def _order_p_unit(p: int, q: int) -> int:
    for s in range(2, q):
        k, x = 1, s
        while x != 1:
            x = (x * s) % q
            k += 1
        if k == p:
            return s
    raise AssertionError(f"no unit of order {p} modulo {q}")


def _log_exact(value: int, base: int) -> int:
    out = 0
    while value > 1:
        if value % base:
            raise AssertionError(f"{value} is not a power of {base}")
        value //= base
        out += 1
    return out

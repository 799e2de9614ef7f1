"""The group-spec mini-language: parsing, printing, and construction.

Grammar (keywords case-insensitive, whitespace ignored):

    spec    := atom ('x' atom)*            -- direct product
    atom    := 'C'k | 'S'k | 'A'k | 'D'k   -- cyclic / symmetric /
                                           --   alternating / dihedral(2k)
             | 'Q8'
             | 'pq(' p ',' q ')'           -- nonabelian order p*q, p | q-1
    spec    := 'perm:' cycles (';' cycles)*  -- group generated by permutations
    spec    := 'table:' path                 -- raw Cayley table file
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from . import caps
from .errors import InvalidPQ, InvalidSpec, NotAGroup, OrderCapExceeded
from .groups import CayleyGroup, FiniteGroup, TupleGroup, as_table


@dataclass(frozen=True)
class CyclicSpec:
    order: int


@dataclass(frozen=True)
class SymmetricSpec:
    degree: int


@dataclass(frozen=True)
class AlternatingSpec:
    degree: int


@dataclass(frozen=True)
class DihedralSpec:
    sides: int  # group order is 2 * sides


@dataclass(frozen=True)
class QuaternionSpec:
    pass


@dataclass(frozen=True)
class PQSpec:
    p: int
    q: int


@dataclass(frozen=True)
class PermSpec:
    # one cycle list per generator, cycles as tuples of 1-based points
    generators: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class TableSpec:
    path: str


@dataclass(frozen=True)
class ProductSpec:
    factors: tuple["GroupSpec", ...]


GroupSpec = (
    CyclicSpec | SymmetricSpec | AlternatingSpec | DihedralSpec
    | QuaternionSpec | PQSpec | PermSpec | TableSpec | ProductSpec
)


# ---------------------------------------------------------------------------
# parsing

_ATOM_RE = re.compile(r"^([csad])(\d+)$")
_PQ_RE = re.compile(r"^pq\((\d+),(\d+)\)$")


def parse_spec(text: str) -> GroupSpec:
    if not isinstance(text, str) or not text.strip():
        raise InvalidSpec("empty group spec")
    stripped = text.strip()
    lowered = stripped.lower()
    if lowered.startswith("perm:"):
        return _parse_perm(stripped[5:])
    if lowered.startswith("table:"):
        path = stripped[6:].strip()
        if not path:
            raise InvalidSpec("table: requires a file path", position=6)
        return TableSpec(path)
    compact = re.sub(r"\s+", "", lowered)
    parts = _split_product(compact)
    factors = tuple(_parse_atom(part, pos) for part, pos in parts)
    if len(factors) == 1:
        return factors[0]
    return ProductSpec(factors)


def _split_product(compact: str):
    """Split on 'x' at paren depth 0, keeping each part's start offset."""
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(compact):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise InvalidSpec("unbalanced ')'", position=i)
        elif ch == "x" and depth == 0:
            parts.append((compact[start:i], start))
            start = i + 1
    if depth != 0:
        raise InvalidSpec("unbalanced '('", position=len(compact))
    parts.append((compact[start:], start))
    return parts


def _parse_atom(part: str, pos: int) -> GroupSpec:
    if not part:
        raise InvalidSpec("expected a group atom", position=pos)
    if part == "q8":
        return QuaternionSpec()
    m = _PQ_RE.match(part)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        _check_pq(p, q)
        return PQSpec(p, q)
    m = _ATOM_RE.match(part)
    if m:
        kind, k = m.group(1), int(m.group(2))
        if k < 1:
            raise InvalidSpec(f"size must be >= 1 in '{part}'", position=pos)
        if kind == "c":
            return CyclicSpec(k)
        if kind == "d":
            if k < 1:
                raise InvalidSpec(f"dihedral size must be >= 1 in '{part}'",
                                  position=pos)
            return DihedralSpec(k)
        if k > 8:
            raise InvalidSpec(
                f"symmetric/alternating degree is capped at 8, got {k}",
                position=pos)
        return SymmetricSpec(k) if kind == "s" else AlternatingSpec(k)
    raise InvalidSpec(
        f"expected C<k>, S<k>, A<k>, D<k>, Q8 or pq(p,q), got '{part}'",
        position=pos)


def _check_pq(p: int, q: int):
    if not (_is_prime(p) and _is_prime(q)):
        raise InvalidPQ(f"pq({p},{q}): both arguments must be prime")
    if (q - 1) % p != 0:
        raise InvalidPQ(f"pq({p},{q}): {p} does not divide {q - 1}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


_CYCLE_RE = re.compile(r"\(([\d\s,]*)\)")


def _parse_perm(body: str) -> PermSpec:
    generators = []
    for chunk in body.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise InvalidSpec("empty permutation generator in perm: spec")
        consumed = 0
        cycles = []
        for m in _CYCLE_RE.finditer(chunk):
            if chunk[consumed:m.start()].strip():
                raise InvalidSpec(
                    f"unexpected text {chunk[consumed:m.start()]!r} in perm cycles")
            consumed = m.end()
            points = tuple(int(t) for t in re.split(r"[\s,]+", m.group(1).strip())
                           if t)
            if len(points) != len(set(points)):
                raise InvalidSpec(f"repeated point in cycle ({m.group(1)})")
            if any(pt < 1 for pt in points):
                raise InvalidSpec("permutation points are 1-based")
            if len(points) > 1:
                cycles.append(points)
        if chunk[consumed:].strip():
            raise InvalidSpec(
                f"unexpected text {chunk[consumed:]!r} in perm cycles")
        generators.append(tuple(cycles))
    return PermSpec(tuple(generators))


# ---------------------------------------------------------------------------
# printing

def format_spec(spec: GroupSpec) -> str:
    if isinstance(spec, CyclicSpec):
        return f"C{spec.order}"
    if isinstance(spec, SymmetricSpec):
        return f"S{spec.degree}"
    if isinstance(spec, AlternatingSpec):
        return f"A{spec.degree}"
    if isinstance(spec, DihedralSpec):
        return f"D{spec.sides}"
    if isinstance(spec, QuaternionSpec):
        return "Q8"
    if isinstance(spec, PQSpec):
        return f"pq({spec.p},{spec.q})"
    if isinstance(spec, PermSpec):
        gens = []
        for cycles in spec.generators:
            if not cycles:
                gens.append("()")
            else:
                gens.append("".join("(" + " ".join(map(str, c)) + ")"
                                    for c in cycles))
        return "perm:" + ";".join(gens)
    if isinstance(spec, TableSpec):
        return f"table:{spec.path}"
    if isinstance(spec, ProductSpec):
        return "x".join(format_spec(f) for f in spec.factors)
    raise TypeError(f"not a GroupSpec: {spec!r}")


# ---------------------------------------------------------------------------
# construction

def build_group(spec, max_order=None) -> FiniteGroup:
    """Construct and validate the group described by a spec (or spec text)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    cap = caps.ORDER_CAP if max_order is None else max_order
    group = _build(spec, cap)
    if group.order > cap:
        raise OrderCapExceeded(
            f"group order {group.order} exceeds cap {cap}")
    return group


def _build(spec, cap) -> FiniteGroup:
    if isinstance(spec, CyclicSpec):
        return _cyclic(spec.order)
    if isinstance(spec, SymmetricSpec):
        _check_perm_order(math_factorial(spec.degree), cap, spec)
        return _from_permutations(_all_permutations(spec.degree))
    if isinstance(spec, AlternatingSpec):
        _check_perm_order(max(1, math_factorial(spec.degree) // 2), cap, spec)
        return _from_permutations(
            [p for p in _all_permutations(spec.degree) if _is_even(p)])
    if isinstance(spec, DihedralSpec):
        return _dihedral(spec.sides)
    if isinstance(spec, QuaternionSpec):
        return _quaternion()
    if isinstance(spec, PQSpec):
        return _pq_group(spec.p, spec.q)
    if isinstance(spec, PermSpec):
        return _perm_generated(spec)
    if isinstance(spec, TableSpec):
        return _from_table_file(spec.path)
    if isinstance(spec, ProductSpec):
        factors = [_build(f, cap) for f in spec.factors]
        total = 1
        for f in factors:
            total *= f.order
        if total > cap:
            raise OrderCapExceeded(f"product order {total} exceeds cap {cap}")
        full = TupleGroup.full_product(factors)
        if full.order <= caps.ANALYSIS_TABLE_CAP:
            return as_table(full)
        return full
    raise TypeError(f"not a GroupSpec: {spec!r}")


def math_factorial(n: int) -> int:
    import math

    return math.factorial(n)


def _check_perm_order(order, cap, spec):
    if order > cap:
        raise OrderCapExceeded(
            f"{format_spec(spec)} has order {order}, above cap {cap}")


def _cyclic(n: int) -> CayleyGroup:
    rows = [[(a + b) % n for b in range(n)] for a in range(n)]
    return CayleyGroup(rows, labels=[str(a) for a in range(n)], validate=False)


def _dihedral(k: int) -> CayleyGroup:
    """Order 2k; element (r, f) gets id 2*r + f, identity (0, 0)."""
    def mul(a, b):
        r1, f1 = divmod(a, 2)
        r2, f2 = divmod(b, 2)
        r = (r1 - r2) % k if f1 else (r1 + r2) % k
        return 2 * r + (f1 ^ f2)

    labels = [f"r{r}" if not f else f"r{r}s"
              for r in range(k) for f in (0, 1)]
    return CayleyGroup.from_function(2 * k, mul, labels=labels)


_QUAT_UNITS = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
# axis products: (axis1, axis2) -> (sign, axis); axes 0=1, 1=i, 2=j, 3=k
_QUAT_AXIS = {
    (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
    (1, 2): (1, 3), (2, 1): (-1, 3),
    (2, 3): (1, 1), (3, 2): (-1, 1),
    (3, 1): (1, 2), (1, 3): (-1, 2),
}


def _quaternion() -> CayleyGroup:
    def mul(a, b):
        sa, xa = (1 if a % 2 == 0 else -1), a // 2
        sb, xb = (1 if b % 2 == 0 else -1), b // 2
        if xa == 0 or xb == 0:
            sign, axis = 1, xa or xb
        else:
            sign, axis = _QUAT_AXIS[(xa, xb)]
        sign *= sa * sb
        return 2 * axis + (0 if sign == 1 else 1)

    return CayleyGroup.from_function(8, mul, labels=list(_QUAT_UNITS))


def _pq_group(p: int, q: int) -> CayleyGroup:
    """C_q semidirect C_p, the C_p generator acting as the smallest scalar
    of multiplicative order p modulo q.  Element (v, w) gets id v*p + w."""
    _check_pq(p, q)
    omega = None
    for s in range(2, q):
        if _multiplicative_order(s, q) == p:
            omega = s
            break
    if omega is None:
        raise InvalidPQ(f"no scalar of order {p} modulo {q}")
    scalars = [pow(omega, w, q) for w in range(p)]

    def mul(a, b):
        v1, w1 = divmod(a, p)
        v2, w2 = divmod(b, p)
        return ((v1 + scalars[w1] * v2) % q) * p + (w1 + w2) % p

    labels = [f"({v},{w})" for v in range(q) for w in range(p)]
    return CayleyGroup.from_function(p * q, mul, labels=labels)


def _multiplicative_order(s: int, q: int) -> int:
    k, x = 1, s % q
    while x != 1:
        x = (x * s) % q
        k += 1
    return k


# permutations are tuples p with p[i] = image of point i (0-based);
# composition applies the right factor first: (a*b)[i] = a[b[i]].

def _compose(a, b):
    return tuple(a[x] for x in b)


def _is_even(p) -> bool:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity == 0


def _all_permutations(degree: int):
    return list(itertools.permutations(range(max(degree, 1))))


def _cycle_label(p) -> str:
    cycles = []
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = p[j]
        cycles.append(cyc)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def _from_permutations(perms) -> CayleyGroup:
    """Tabulate a set of permutations closed under composition.

    Sorted tuples put the identity first, so it lands on id 0.
    """
    elems = sorted(perms)
    index = {p: i for i, p in enumerate(elems)}
    rows = [[index[_compose(a, b)] for b in elems] for a in elems]
    return CayleyGroup(rows, labels=[_cycle_label(p) for p in elems],
                       validate=False)


def _perm_generated(spec: PermSpec) -> CayleyGroup:
    degree = 1
    for cycles in spec.generators:
        for cyc in cycles:
            degree = max(degree, max(cyc))
    gens = []
    for cycles in spec.generators:
        perm = list(range(degree))
        for cyc in cycles:
            for i, pt in enumerate(cyc):
                perm[pt - 1] = cyc[(i + 1) % len(cyc)] - 1
        gens.append(tuple(perm))
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = _compose(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return _from_permutations(seen)


def _from_table_file(path: str) -> CayleyGroup:
    """Cayley-table file: first line the order m, then m rows of m ids."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            tokens = fh.read().split()
    except OSError as exc:
        raise InvalidSpec(f"cannot read table file {path!r}: {exc}") from exc
    if not tokens:
        raise NotAGroup(f"table file {path!r} is empty")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise NotAGroup(f"table file {path!r} has a non-integer token") from exc
    m = values[0]
    if m < 1 or len(values) != 1 + m * m:
        raise NotAGroup(
            f"table file {path!r}: expected {m}x{m} entries after the order line")
    rows = [values[1 + i * m:1 + (i + 1) * m] for i in range(m)]
    for row in rows:
        for x in row:
            if not 0 <= x < m:
                raise NotAGroup(f"table entry {x} out of range 0..{m - 1}")
    return CayleyGroup(rows, validate=True)

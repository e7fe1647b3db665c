"""Bouquets: one-vertex ribbon graphs given by a cyclic rotation of edge ends.

Each edge occurs twice in ``rotation``; an edge in ``twisted`` is a
non-orientable loop. Positions ``0 .. 2n-1`` index ``rotation`` as stored, and
equality ignores where the cycle is cut.

Boundary tracing works on *corners*: corner ``c`` is the arc of the vertex
boundary between the ends at positions ``c`` and ``c+1``. A state is a corner
together with a direction of travel; following the boundary permutes the
states, and each boundary circle shows up as a pair of mutually reversed
cycles.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .core import SetSystem, check_labels, direct_sum
from .errors import InvalidArity, InvalidElements, NonAdjacentEnds, TooLarge
from .gf2 import CanonicalSignature, SymMatrix


@dataclass(frozen=True, eq=False)
class Bouquet:
    edges: tuple[str, ...]
    rotation: tuple[str, ...]
    twisted: frozenset[str] = frozenset()

    def __post_init__(self):
        edges = check_labels(self.edges)
        rotation = tuple(str(x) for x in self.rotation)
        twisted = frozenset(str(x) for x in self.twisted)
        for e in edges:
            if rotation.count(e) != 2:
                raise InvalidElements(f"edge {e} occurs {rotation.count(e)} times in the rotation")
        stray = set(rotation) - set(edges)
        if stray:
            raise InvalidElements(f"rotation mentions unknown edges {sorted(stray)}")
        if not twisted <= set(edges):
            raise InvalidElements(f"twisted edges {sorted(twisted - set(edges))} are not edges")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "twisted", twisted)

    def ends(self, e: object) -> tuple[int, int]:
        e = str(e)
        pos = [p for p, x in enumerate(self.rotation) if x == e]
        if len(pos) != 2:
            raise InvalidElements(f"{e} is not an edge")
        return pos[0], pos[1]

    def anchored(self) -> tuple[str, ...]:
        """The rotation cut at its lexicographically least starting point."""
        rot = self.rotation
        if not rot:
            return rot
        return min(rot[s:] + rot[:s] for s in range(len(rot)))

    def _key(self):
        return (frozenset(self.edges), self.twisted, self.anchored())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bouquet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        tw = " ".join(e for e in self.edges if e in self.twisted)
        return f"Bouquet(rotation='{' '.join(self.rotation)}', twisted='{tw}')"


def _partners(rotation: Sequence[str]) -> list[int]:
    first: dict[str, int] = {}
    partner = [0] * len(rotation)
    for p, e in enumerate(rotation):
        if e in first:
            q = first[e]
            partner[p], partner[q] = q, p
        else:
            first[e] = p
    return partner


def _count_boundaries(partner: Sequence[int], in_x: Sequence[bool], twist_at: Sequence[bool]) -> int:
    size = len(partner)
    if size == 0:
        return 1
    # state 2c: travelling forward along corner c; 2c+1: backward
    seen = bytearray(2 * size)
    cycles = 0
    for start in range(2 * size):
        if seen[start]:
            continue
        cycles += 1
        s = start
        while not seen[s]:
            seen[s] = 1
            c, back = divmod(s, 2)
            if back:
                p, side = c, 1
            else:
                p, side = (c + 1) % size, 0
            if in_x[p]:
                q = partner[p]
                flip = twist_at[p]
            else:
                q, flip = p, False
            if side ^ flip:
                s = 2 * ((q - 1) % size) + 1
            else:
                s = 2 * q
    if cycles % 2:  # pragma: no cover - each circle is traced in both senses
        raise AssertionError("boundary trace produced an unpaired cycle")
    return cycles // 2


def boundary_components(B: Bouquet, X: Iterable[object]) -> int:
    """Boundary circles of the spanning ribbon subgraph with edge set ``X``."""
    X = {str(x) for x in X}
    if not X <= set(B.edges):
        raise InvalidElements(f"{sorted(X - set(B.edges))} are not edges")
    in_x = [e in X for e in B.rotation]
    twist_at = [e in B.twisted for e in B.rotation]
    return _count_boundaries(_partners(B.rotation), in_x, twist_at)


def delta_matroid_of_bouquet(B: Bouquet) -> SetSystem:
    """Feasible sets are the edge sets of spanning quasi-trees."""
    index = {e: i for i, e in enumerate(B.edges)}
    partner = _partners(B.rotation)
    twist_at = [e in B.twisted for e in B.rotation]
    bit_at = [index[e] for e in B.rotation]
    fam = []
    for mask in range(1 << len(B.edges)):
        in_x = [bool(mask >> i & 1) for i in bit_at]
        if _count_boundaries(partner, in_x, twist_at) == 1:
            fam.append(mask)
    return SetSystem._raw(B.edges, frozenset(fam))


def delta_matroid_of_bouquets(bouquets: Sequence[Bouquet]) -> SetSystem:
    """Delta-matroid of a disjoint union of bouquets."""
    parts = [delta_matroid_of_bouquet(B) for B in bouquets]
    return reduce(direct_sum, parts, SetSystem._raw((), frozenset({0})))


def interlaced(B: Bouquet, e: object, f: object) -> bool:
    e0, e1 = B.ends(e)
    f0, f1 = B.ends(f)
    return (e0 < f0 < e1) != (e0 < f1 < e1)


def interlacement_matrix(B: Bouquet) -> SymMatrix:
    """Diagonal marks twisted loops, off-diagonal marks interlaced pairs."""
    n = len(B.edges)
    ends = [B.ends(e) for e in B.edges]
    rows = [0] * n
    for i in range(n):
        if B.edges[i] in B.twisted:
            rows[i] |= 1 << i
        e0, e1 = ends[i]
        for j in range(i + 1, n):
            f0, f1 = ends[j]
            if (e0 < f0 < e1) != (e0 < f1 < e1):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return SymMatrix._raw(B.edges, rows)


def is_orientable(B: Bouquet) -> bool:
    return not B.twisted


def adjacent_slides(B: Bouquet) -> Iterator[tuple[int, str, int]]:
    """Every legal ribbon slide as ``(end position, b, direction)``."""
    size = len(B.rotation)
    for p, a in enumerate(B.rotation):
        for direction in (1, -1):
            b = B.rotation[(p + direction) % size]
            if b != a:
                yield p, b, direction


def ribbon_handle_slide(B: Bouquet, end_a: int, b: object, direction: int | None = None) -> Bouquet:
    """Slide the edge end at position ``end_a`` over the neighbouring edge ``b``.

    ``direction`` is ``+1`` when the end of ``b`` sits right after ``end_a``
    in the rotation and ``-1`` when it sits right before; ``None`` picks
    whichever applies, trying ``+1`` first. The end travels along ``b`` and is
    put back beside the other end of ``b``; passing through a twisted ``b``
    flips the side it lands on and toggles the twist of ``a``.
    """
    size = len(B.rotation)
    if not 0 <= end_a < size:
        raise InvalidElements(f"no edge end at position {end_a}")
    a, b = B.rotation[end_a], str(b)
    if b not in B.edges:
        raise InvalidElements(f"{b} is not an edge")
    if a == b:
        raise InvalidElements(f"cannot slide {a} over itself")
    tries = (direction,) if direction is not None else (1, -1)
    for d in tries:
        if d not in (1, -1):
            raise InvalidElements("direction must be +1 or -1")
        pb = (end_a + d) % size
        if B.rotation[pb] == b:
            break
    else:
        raise NonAdjacentEnds(f"no end of {b} is next to position {end_a} ({a})")
    e0, e1 = B.ends(b)
    qb = e1 if pb == e0 else e0
    after = (d == 1) != (b in B.twisted)
    rot = list(B.rotation)
    del rot[end_a]
    if qb > end_a:
        qb -= 1
    rot.insert(qb + 1 if after else qb, a)
    twisted = B.twisted ^ {a} if b in B.twisted else B.twisted
    return Bouquet(B.edges, tuple(rot), twisted)


def build_B(i: int, j: int, k: int, labels: Sequence[object]) -> Bouquet:
    """``i`` plain loops, ``j`` interlaced pairs ``efef``, ``k`` twisted loops."""
    if min(i, j, k) < 0:
        raise InvalidArity("block counts must be non-negative")
    labels = check_labels(labels)
    if len(labels) != i + 2 * j + k:
        raise InvalidArity(f"need {i + 2 * j + k} labels for ({i},{j},{k}), got {len(labels)}")
    rot: list[str] = []
    it = iter(labels)
    for _ in range(i):
        e = next(it)
        rot += [e, e]
    for _ in range(j):
        e, f = next(it), next(it)
        rot += [e, f, e, f]
    twisted = []
    for _ in range(k):
        e = next(it)
        rot += [e, e]
        twisted.append(e)
    return Bouquet(labels, tuple(rot), frozenset(twisted))


def classify_bouquet(B: Bouquet) -> CanonicalSignature:
    n = len(B.edges)
    i = boundary_components(B, B.edges) - 1
    if is_orientable(B):
        return CanonicalSignature(i, (n - i) // 2, 0, 0)
    return CanonicalSignature(i, 0, n - i, 0)


def shape_key(B: Bouquet) -> tuple:
    """Invariant of ``B`` up to cyclic rotation and edge relabelling."""
    rot = B.rotation
    best = None
    for s in range(len(rot)) or [0]:
        seq = rot[s:] + rot[:s]
        names: dict[str, int] = {}
        code = tuple(names.setdefault(e, len(names)) for e in seq)
        tw = tuple(sorted(names[e] for e in B.twisted))
        cand = (code, tw)
        if best is None or cand < best:
            best = cand
    return best


def ribbon_slide_orbit(B: Bouquet, max_edges: int = 4) -> set[Bouquet]:
    """All bouquets reachable by legal ribbon slides, one per shape."""
    if len(B.edges) > max_edges:
        raise TooLarge(f"{len(B.edges)} edges exceeds max_edges={max_edges}")
    seen = {shape_key(B): B}
    queue = deque([B])
    while queue:
        cur = queue.popleft()
        for p, b, d in adjacent_slides(cur):
            nxt = ribbon_handle_slide(cur, p, b, d)
            key = shape_key(nxt)
            if key not in seen:
                seen[key] = nxt
                queue.append(nxt)
    return set(seen.values())


def all_bouquets(labels: Sequence[object]) -> Iterator[Bouquet]:
    """Every bouquet on ``labels``: each rotation up to cyclic shift, times
    every twist subset."""
    labels = check_labels(labels)
    n = len(labels)
    for rot in _rotations(labels):
        for r in range(n + 1):
            for tw in itertools.combinations(labels, r):
                yield Bouquet(labels, rot, frozenset(tw))


def _rotations(labels: tuple[str, ...]) -> list[tuple[str, ...]]:
    if not labels:
        return [()]
    seen = set()
    out = []
    rest = [e for e in labels for _ in range(2)]
    rest.remove(labels[0])

    def extend(prefix: list[str], pool: list[str]) -> Iterator[tuple[str, ...]]:
        if not pool:
            yield tuple(prefix)
            return
        for e in sorted(set(pool)):
            pool.remove(e)
            prefix.append(e)
            yield from extend(prefix, pool)
            prefix.pop()
            pool.append(e)

    for word in extend([labels[0]], rest):
        canon = min(word[s:] + word[:s] for s in range(len(word)))
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return out

"""Set systems and delta-matroids as immutable values.

A :class:`SetSystem` stores its ground set as an ordered tuple of labels and
each feasible set as an ``int`` bit-vector, bit ``i`` standing for
``ground[i]``. Every operation here is a pure function returning a new value.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import (
    CoLoopDeletion,
    EmptyFamily,
    GroundOverlap,
    InvalidArity,
    InvalidElements,
)

LABEL_RE = re.compile(r"[A-Za-z0-9_]+")

#: Ordered handle slides ``(a, b)``, each meaning "slide a over b".
SlideSequence = tuple[tuple[str, str], ...]


def check_labels(labels: Iterable[object]) -> tuple[str, ...]:
    out = tuple(str(e) for e in labels)
    for e in out:
        if not LABEL_RE.fullmatch(e):
            raise InvalidElements(f"bad element identifier {e!r}")
    if len(set(out)) != len(out):
        raise InvalidElements(f"duplicate elements in {list(out)}")
    return out


def bits_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: cardinality first, then lexicographic on ground positions."""
    return (mask.bit_count(), tuple(bits_of(mask)))


@dataclass(frozen=True, eq=False)
class SetSystem:
    """A ground set together with a family of feasible subsets.

    Equality and hashing use set semantics: two systems are equal when they
    have the same ground set and the same feasible sets, whatever the order
    in which the ground was declared.
    """

    ground: tuple[str, ...]
    family: frozenset[int]

    def __post_init__(self):
        ground = check_labels(self.ground)
        family = frozenset(int(m) for m in self.family)
        full = (1 << len(ground)) - 1
        for m in family:
            if m < 0 or m & ~full:
                raise InvalidElements(f"feasible set {m:#b} not contained in ground")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "family", family)

    @classmethod
    def _raw(cls, ground: tuple[str, ...], family: frozenset[int]) -> "SetSystem":
        obj = object.__new__(cls)
        object.__setattr__(obj, "ground", ground)
        object.__setattr__(obj, "family", family)
        return obj

    @classmethod
    def from_sets(cls, ground: Iterable[object], sets: Iterable[Iterable[object]]) -> "SetSystem":
        ground = check_labels(ground)
        index = {e: i for i, e in enumerate(ground)}
        family = set()
        for s in sets:
            family.add(_mask(index, s))
        return cls._raw(ground, frozenset(family))

    @property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.ground)}

    def mask_of(self, elements: Iterable[object]) -> int:
        return _mask(self.index, elements)

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.ground[i] for i in bits_of(mask))

    def sorted_masks(self) -> list[int]:
        return sorted(self.family, key=mask_key)

    def sets(self) -> list[frozenset[str]]:
        """Feasible sets as label sets, by cardinality then ground order."""
        return [frozenset(self.labels_of(m)) for m in self.sorted_masks()]

    def __contains__(self, elements: Iterable[object]) -> bool:
        try:
            return self.mask_of(elements) in self.family
        except InvalidElements:
            return False

    def __len__(self) -> int:
        return len(self.family)

    def _canonical(self) -> tuple[tuple[str, ...], frozenset[int]]:
        order = sorted(range(len(self.ground)), key=lambda i: self.ground[i])
        if order == list(range(len(order))):
            return self.ground, self.family
        pos = [0] * len(order)
        for new, old in enumerate(order):
            pos[old] = new
        fam = frozenset(_permute_mask(m, pos) for m in self.family)
        return tuple(self.ground[i] for i in order), fam

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetSystem):
            return NotImplemented
        if self.ground == other.ground:
            return self.family == other.family
        if len(self.ground) != len(other.ground) or len(self.family) != len(other.family):
            return False
        return self._canonical() == other._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())

    def __repr__(self) -> str:
        fam = ", ".join("{" + ",".join(self.labels_of(m)) + "}" for m in self.sorted_masks())
        return f"SetSystem(ground={list(self.ground)}, feasible=[{fam}])"


def _mask(index: Mapping[str, int], elements: Iterable[object]) -> int:
    m = 0
    for e in elements:
        try:
            m |= 1 << index[str(e)]
        except KeyError:
            raise InvalidElements(f"element {e!r} not in ground set") from None
    return m


def _permute_mask(mask: int, pos: Sequence[int]) -> int:
    """Move bit ``i`` of ``mask`` to bit ``pos[i]``."""
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << pos[i]
        mask >>= 1
        i += 1
    return out


def _pair_bits(D: SetSystem, a: object, b: object) -> tuple[int, int]:
    index = D.index
    a, b = str(a), str(b)
    if a == b:
        raise InvalidElements(f"handle slide needs two distinct elements, got {a!r} twice")
    if a not in index or b not in index:
        raise InvalidElements(f"slide ({a}, {b}) uses an element outside the ground set")
    return 1 << index[a], 1 << index[b]


# -- queries -----------------------------------------------------------------


def is_delta_matroid(D: SetSystem) -> bool:
    """Brute-force Symmetric Exchange Axiom check.

    ``v = u`` is allowed, in which case ``X △ {u, v}`` is ``X △ {u}``.
    """
    fam = D.family
    if not fam:
        return False
    n = len(D.ground)
    singles = [1 << u for u in range(n)]
    for X in fam:
        # ok[u]: bit-vector of the v with X △ {u,v} feasible
        ok = []
        for u in range(n):
            bu = singles[u]
            row = 0
            for v in range(n):
                bv = singles[v]
                if (X ^ bu ^ bv if v != u else X ^ bu) in fam:
                    row |= bv
            ok.append(row)
        for Y in fam:
            d = X ^ Y
            rest = d
            while rest:
                low = rest & -rest
                if not ok[low.bit_length() - 1] & d:
                    return False
                rest ^= low
    return True


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


def parity(D: SetSystem) -> Parity:
    """EVEN if all feasible sets share one size parity, else ODD."""
    if not D.family:
        raise EmptyFamily("parity of an empty family is undefined")
    parities = {m.bit_count() & 1 for m in D.family}
    return Parity.EVEN if len(parities) == 1 else Parity.ODD


def max_feasible_size(D: SetSystem) -> int:
    if not D.family:
        raise EmptyFamily("empty family has no feasible sets")
    return max(m.bit_count() for m in D.family)


def min_feasible_size(D: SetSystem) -> int:
    if not D.family:
        raise EmptyFamily("empty family has no feasible sets")
    return min(m.bit_count() for m in D.family)


def _element_bit(D: SetSystem, e: object) -> int:
    try:
        return 1 << D.index[str(e)]
    except KeyError:
        raise InvalidElements(f"element {e!r} not in ground set") from None


def is_loop(D: SetSystem, e: object) -> bool:
    bit = _element_bit(D, e)
    return all(not m & bit for m in D.family)


def is_coloop(D: SetSystem, e: object) -> bool:
    bit = _element_bit(D, e)
    return all(m & bit for m in D.family)


# -- moves ---------------------------------------------------------------------


def slide_family(family: frozenset[int], abit: int, bbit: int) -> frozenset[int]:
    """Handle slide on raw bit-vectors: ``F △ {X ∪ a : X ∪ b ∈ F, a, b ∉ X}``."""
    toggles = {(F ^ bbit) | abit for F in family if F & bbit and not F & abit}
    if not toggles:
        return family
    return family.symmetric_difference(toggles)


def handle_slide(D: SetSystem, a: object, b: object) -> SetSystem:
    """Slide ``a`` over ``b``; defined for every set system."""
    abit, bbit = _pair_bits(D, a, b)
    return SetSystem._raw(D.ground, slide_family(D.family, abit, bbit))


def apply_sequence(D: SetSystem, steps: Iterable[tuple[object, object]]) -> SetSystem:
    for a, b in steps:
        D = handle_slide(D, a, b)
    return D


def twist(D: SetSystem, A: Iterable[object]) -> SetSystem:
    amask = _mask(D.index, A)
    if not amask:
        return D
    return SetSystem._raw(D.ground, frozenset(m ^ amask for m in D.family))


def twist_mask(D: SetSystem, amask: int) -> SetSystem:
    return SetSystem._raw(D.ground, frozenset(m ^ amask for m in D.family))


def direct_sum(D: SetSystem, D2: SetSystem) -> SetSystem:
    overlap = set(D.ground) & set(D2.ground)
    if overlap:
        raise GroundOverlap(f"ground sets share {sorted(overlap)}")
    shift = len(D.ground)
    fam = frozenset(F | (G << shift) for F in D.family for G in D2.family)
    return SetSystem._raw(D.ground + D2.ground, fam)


def delete(D: SetSystem, e: object) -> SetSystem:
    bit = _element_bit(D, e)
    if D.family and all(m & bit for m in D.family):
        raise CoLoopDeletion(f"{e} is a coloop; deleting it would leave no feasible set")
    i = bit.bit_length() - 1
    low = bit - 1
    fam = frozenset((m & low) | ((m >> 1) & ~low) for m in D.family if not m & bit)
    return SetSystem._raw(D.ground[:i] + D.ground[i + 1 :], fam)


def relabel(D: SetSystem, mapping: Mapping[str, str]) -> SetSystem:
    """Rename ground elements; ``mapping`` must be injective on the ground."""
    ground = check_labels(mapping.get(e, e) for e in D.ground)
    return SetSystem._raw(ground, D.family)


# -- canonical forms -------------------------------------------------------------

_TRIVIAL = (1, frozenset({0}))  # ({e}, {∅})
_PAIR = (2, frozenset({0, 3}))  # ({e,f}, {∅, {e,f}})
_ODD = (1, frozenset({0, 1}))  # ({e}, {∅, {e}})
_COLOOP = (1, frozenset({1}))  # ({e}, {{e}})


def build_canonical(i: int, j: int, k: int, l: int, labels: Sequence[object]) -> SetSystem:
    """Direct sum of ``i`` trivial loops, ``j`` interlaced pairs, ``k`` odd
    loops and ``l`` coloops, consuming ``labels`` in that order."""
    if min(i, j, k, l) < 0:
        raise InvalidArity("block counts must be non-negative")
    labels = check_labels(labels)
    if len(labels) != i + 2 * j + k + l:
        raise InvalidArity(f"need {i + 2 * j + k + l} labels for ({i},{j},{k},{l}), got {len(labels)}")
    fam = frozenset({0})
    shift = 0
    for count, (width, block) in ((i, _TRIVIAL), (j, _PAIR), (k, _ODD), (l, _COLOOP)):
        for _ in range(count):
            fam = frozenset(F | (G << shift) for F in fam for G in block)
            shift += width
    return SetSystem._raw(labels, fam)


# -- isomorphism -----------------------------------------------------------------


def _degrees(D: SetSystem) -> list[int]:
    return [sum(1 for m in D.family if m >> i & 1) for i in range(len(D.ground))]


def find_isomorphism(D: SetSystem, D2: SetSystem) -> dict[str, str] | None:
    """A ground bijection mapping ``F(D)`` onto ``F(D2)``, or ``None``.

    Brute force over degree-respecting permutations; meant for small grounds.
    """
    n = len(D.ground)
    if n != len(D2.ground) or len(D.family) != len(D2.family):
        return None
    if Counter(m.bit_count() for m in D.family) != Counter(m.bit_count() for m in D2.family):
        return None
    deg1, deg2 = _degrees(D), _degrees(D2)
    if sorted(deg1) != sorted(deg2):
        return None
    candidates = [[t for t in range(n) if deg2[t] == deg1[s]] for s in range(n)]
    target = D2.family
    for perm in itertools.product(*candidates):
        if len(set(perm)) != n:
            continue
        if all(_permute_mask(m, perm) in target for m in D.family):
            return {D.ground[s]: D2.ground[perm[s]] for s in range(n)}
    return None


def is_isomorphic(D: SetSystem, D2: SetSystem) -> bool:
    return find_isomorphism(D, D2) is not None

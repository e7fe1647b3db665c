"""Symmetric matrices over GF(2) and the delta-matroids they represent.

Rows are ``int`` bit-vectors: bit ``j`` of ``rows[i]`` is the entry in row
``labels[i]``, column ``labels[j]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .core import SetSystem, SlideSequence, check_labels, is_delta_matroid, twist_mask
from .errors import (
    EmptySetNotFeasible,
    InvalidElements,
    NoOddBlock,
    NotADeltaMatroid,
    NotBinary,
    NotBlockDiagonal,
    NotSymmetric,
)


class CanonicalSignature(NamedTuple):
    """Block counts of D_{i,j,k,l}: trivial loops, interlaced pairs, odd
    loops, coloops."""

    i: int
    j: int
    k: int
    l: int = 0

    def __str__(self) -> str:
        return f"canonical: i={self.i} j={self.j} k={self.k} l={self.l}"


@dataclass(frozen=True)
class SymMatrix:
    labels: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        labels = check_labels(self.labels)
        rows = tuple(int(r) for r in self.rows)
        n = len(labels)
        if len(rows) != n:
            raise NotSymmetric(f"{len(rows)} rows for {n} labels")
        for r in rows:
            if r < 0 or r >> n:
                raise NotSymmetric(f"row {r:#b} wider than {n} columns")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "rows", rows)
        bad = _asymmetry(rows)
        if bad is not None:
            i, j = bad
            raise NotSymmetric(f"entry ({labels[i]},{labels[j]}) differs from ({labels[j]},{labels[i]})")

    @classmethod
    def _raw(cls, labels: tuple[str, ...], rows: Sequence[int]) -> "SymMatrix":
        obj = object.__new__(cls)
        object.__setattr__(obj, "labels", labels)
        object.__setattr__(obj, "rows", tuple(rows))
        return obj

    @classmethod
    def from_lists(cls, labels: Iterable[object], entries: Sequence[Sequence[int]]) -> "SymMatrix":
        rows = []
        for line in entries:
            r = 0
            for j, x in enumerate(line):
                if x % 2:
                    r |= 1 << j
            rows.append(r)
        return cls(tuple(labels), tuple(rows))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.labels)}

    def __getitem__(self, key: tuple[object, object]) -> int:
        a, b = key
        index = self.index
        try:
            return self.rows[index[str(a)]] >> index[str(b)] & 1
        except KeyError:
            raise InvalidElements(f"({a}, {b}) not both labels of the matrix") from None

    def to_lists(self) -> list[list[int]]:
        n = self.size
        return [[r >> j & 1 for j in range(n)] for r in self.rows]

    def permute(self, order: Sequence[object]) -> "SymMatrix":
        """Reorder rows and columns so that ``labels == order``."""
        order = tuple(str(e) for e in order)
        index = self.index
        if sorted(order) != sorted(self.labels):
            raise InvalidElements(f"{list(order)} is not a permutation of {list(self.labels)}")
        pos = [index[e] for e in order]
        rows = []
        for old in pos:
            src = self.rows[old]
            rows.append(sum(1 << new for new, c in enumerate(pos) if src >> c & 1))
        return SymMatrix._raw(order, rows)

    def relabel(self, mapping: dict[str, str]) -> "SymMatrix":
        return SymMatrix._raw(check_labels(mapping.get(e, e) for e in self.labels), self.rows)


def _asymmetry(rows: Sequence[int]) -> tuple[int, int] | None:
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            if (rows[i] >> j & 1) != (rows[j] >> i & 1):
                return i, j
    return None


def zero_matrix(labels: Iterable[object]) -> SymMatrix:
    labels = check_labels(labels)
    return SymMatrix._raw(labels, [0] * len(labels))


def identity_matrix(labels: Iterable[object]) -> SymMatrix:
    labels = check_labels(labels)
    return SymMatrix._raw(labels, [1 << i for i in range(len(labels))])


def block_matrix(blocks: Sequence[Sequence[Sequence[int]]], labels: Iterable[object]) -> SymMatrix:
    """Block-diagonal matrix assembled from square 0/1 blocks."""
    size = sum(len(b) for b in blocks)
    entries = [[0] * size for _ in range(size)]
    at = 0
    for b in blocks:
        for r, line in enumerate(b):
            for c, x in enumerate(line):
                entries[at + r][at + c] = x % 2
        at += len(b)
    return SymMatrix.from_lists(labels, entries)


def canonical_matrix(i: int, j: int, k: int, labels: Iterable[object]) -> SymMatrix:
    """``[0]``-blocks, then ``[[0,1],[1,0]]``-blocks, then ``[1]``-blocks."""
    blocks = [[[0]]] * i + [[[0, 1], [1, 0]]] * j + [[[1]]] * k
    return block_matrix(blocks, labels)


def all_symmetric_matrices(labels: Iterable[object]) -> Iterator[SymMatrix]:
    """Every symmetric GF(2) matrix on ``labels``, 2^(n(n+1)/2) of them."""
    labels = check_labels(labels)
    n = len(labels)
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    for code in range(1 << len(cells)):
        rows = [0] * n
        for t, (i, j) in enumerate(cells):
            if code >> t & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield SymMatrix._raw(labels, rows)


# -- determinants ---------------------------------------------------------------


def _det_principal(rows: Sequence[int], idx: Sequence[int]) -> int:
    """Determinant over GF(2) of the principal submatrix on positions ``idx``."""
    work = []
    for i in idx:
        src = rows[i]
        r = 0
        for t, c in enumerate(idx):
            if src >> c & 1:
                r |= 1 << t
        work.append(r)
    size = len(work)
    for col in range(size):
        bit = 1 << col
        pivot = None
        for r in range(col, size):
            if work[r] & bit:
                pivot = r
                break
        if pivot is None:
            return 0
        work[col], work[pivot] = work[pivot], work[col]
        prow = work[col]
        for r in range(col + 1, size):
            if work[r] & bit:
                work[r] ^= prow
    return 1


def det_gf2(M: SymMatrix, A: Iterable[object] = None) -> int:
    """Determinant of the principal submatrix ``M[A]`` (``M[∅]`` counts as 1).

    ``A=None`` means the whole matrix.
    """
    if A is None:
        return _det_principal(M.rows, range(M.size))
    index = M.index
    idx = []
    for e in A:
        try:
            idx.append(index[str(e)])
        except KeyError:
            raise InvalidElements(f"element {e!r} not a matrix label") from None
    return _det_principal(M.rows, sorted(set(idx)))


def delta_matroid_of_matrix(M: SymMatrix) -> SetSystem:
    """The represented delta-matroid: ``A`` feasible iff ``M[A]`` non-singular."""
    n = M.size
    rows = M.rows
    fam = frozenset(
        mask for mask in range(1 << n) if _det_principal(rows, [i for i in range(n) if mask >> i & 1])
    )
    return SetSystem._raw(M.labels, fam)


# -- handle slides ----------------------------------------------------------------


def _slide_rows(rows: list[int], ia: int, ib: int) -> None:
    """In place: add column ``ib`` to column ``ia``, then row ``ib`` to row ``ia``."""
    abit = 1 << ia
    for r in range(len(rows)):
        if rows[r] >> ib & 1:
            rows[r] ^= abit
    rows[ia] ^= rows[ib]


def matrix_handle_slide(M: SymMatrix, a: object, b: object) -> SymMatrix:
    a, b = str(a), str(b)
    index = M.index
    if a == b or a not in index or b not in index:
        raise InvalidElements(f"invalid matrix slide ({a}, {b})")
    rows = list(M.rows)
    _slide_rows(rows, index[a], index[b])
    bad = _asymmetry(rows)
    if bad is not None:  # pragma: no cover - guarded by construction
        raise NotSymmetric(f"slide ({a}, {b}) broke symmetry at {bad}")
    return SymMatrix._raw(M.labels, rows)


def apply_matrix_sequence(M: SymMatrix, steps: Iterable[tuple[object, object]]) -> SymMatrix:
    for a, b in steps:
        M = matrix_handle_slide(M, a, b)
    return M


# -- block normalisation ------------------------------------------------------------


def normalize_blocks(M: SymMatrix) -> tuple[SymMatrix, SlideSequence, tuple[str, ...]]:
    """Reduce ``M`` to block-diagonal form by handle slides.

    Returns ``(M2, slides, order)`` where ``M2`` is ``M`` after ``slides``,
    with rows and columns reordered to ``order``: ``[0]`` blocks first, then
    ``[[0,1],[1,0]]`` blocks, then ``[1]`` blocks. Ties always go to the
    lowest-index qualifying element.
    """
    n = M.size
    rows = list(M.rows)
    slides: list[tuple[str, str]] = []
    remaining = list(range(n))
    zeros: list[int] = []
    pairs: list[tuple[int, int]] = []
    ones: list[int] = []

    def slide(a: int, b: int) -> None:
        _slide_rows(rows, a, b)
        slides.append((M.labels[a], M.labels[b]))

    while remaining:
        diag = [e for e in remaining if rows[e] >> e & 1]
        if diag:
            e = diag[0]
            for f in remaining:
                if f != e and rows[f] >> e & 1:
                    slide(f, e)
            ones.append(e)
            remaining.remove(e)
            continue
        empty = [e for e in remaining if not rows[e]]
        if empty:
            zeros.append(empty[0])
            remaining.remove(empty[0])
            continue
        e = remaining[0]
        f = next(x for x in remaining if rows[e] >> x & 1)
        for i in remaining:
            if i in (e, f):
                continue
            to_e = rows[i] >> e & 1
            to_f = rows[i] >> f & 1
            if to_e and not to_f:
                slide(i, f)
            elif to_f and not to_e:
                slide(i, e)
            elif to_e and to_f:
                slide(i, f)
                slide(i, e)
        pairs.append((e, f))
        remaining.remove(e)
        remaining.remove(f)

    order = [M.labels[x] for x in zeros]
    for e, f in pairs:
        order += [M.labels[e], M.labels[f]]
    order += [M.labels[x] for x in ones]
    reduced = SymMatrix._raw(M.labels, rows).permute(order)
    return reduced, tuple(slides), tuple(order)


def block_structure(M: SymMatrix) -> list[tuple[str, tuple[int, ...]]]:
    """Split a block-diagonal matrix into ``("0"|"1", (i,))`` and
    ``("pair", (i, i+1))`` blocks, in label order."""
    rows = M.rows
    n = M.size
    out = []
    i = 0
    while i < n:
        off = rows[i] & ~(1 << i)
        if not off:
            out.append(("1" if rows[i] >> i & 1 else "0", (i,)))
            i += 1
        elif i + 1 < n and rows[i] == 1 << (i + 1) and rows[i + 1] == 1 << i:
            out.append(("pair", (i, i + 1)))
            i += 2
        else:
            raise NotBlockDiagonal(f"row {M.labels[i]} does not close a canonical block")
    return out


def signature_of_blocks(M: SymMatrix) -> CanonicalSignature:
    counts = {"0": 0, "pair": 0, "1": 0}
    for kind, _ in block_structure(M):
        counts[kind] += 1
    return CanonicalSignature(counts["0"], counts["pair"], counts["1"], 0)


def _canonical_order(M: SymMatrix) -> tuple[str, ...]:
    blocks = block_structure(M)
    order = []
    for wanted in ("0", "pair", "1"):
        for kind, pos in blocks:
            if kind == wanted:
                order += [M.labels[p] for p in pos]
    return tuple(order)


def eliminate_pairs(M: SymMatrix) -> tuple[SymMatrix, SlideSequence]:
    """Trade every interlaced pair for two ``[1]`` blocks using a ``[1]`` block.

    On a pair ``(a, b)`` next to a ``[1]`` block ``c`` the slides
    ``(a,c), (c,b), (b,a)`` give the 3×3 identity. The result is returned in
    canonical block order.
    """
    blocks = block_structure(M)
    if not any(kind == "1" for kind, _ in blocks):
        raise NoOddBlock("no [1] block to trade interlaced pairs against")
    slides: list[tuple[str, str]] = []
    while True:
        blocks = block_structure(M)
        pair = next((pos for kind, pos in blocks if kind == "pair"), None)
        if pair is None:
            break
        c = next(pos[0] for kind, pos in blocks if kind == "1")
        a, b, c = M.labels[pair[0]], M.labels[pair[1]], M.labels[c]
        for step in ((a, c), (c, b), (b, a)):
            M = matrix_handle_slide(M, *step)
            slides.append(step)
        M = M.permute(_canonical_order(M))
    return M.permute(_canonical_order(M)), tuple(slides)


# -- representability -----------------------------------------------------------------


def candidate_matrix(D: SetSystem) -> SymMatrix:
    """The only symmetric matrix ``M`` that could satisfy ``D(M) = D``.

    Read off the 1×1 and 2×2 principal minors: ``det[[x,y],[y,z]] = xz + y``.
    """
    if 0 not in D.family:
        raise EmptySetNotFeasible("the empty set is not feasible")
    n = len(D.ground)
    fam = D.family
    diag = [(1 << e) in fam for e in range(n)]
    rows = [0] * n
    for e in range(n):
        if diag[e]:
            rows[e] |= 1 << e
        for f in range(e + 1, n):
            if (((1 << e) | (1 << f)) in fam) ^ (diag[e] and diag[f]):
                rows[e] |= 1 << f
                rows[f] |= 1 << e
    return SymMatrix._raw(D.ground, rows)


def binary_representation(D: SetSystem) -> tuple[tuple[str, ...], SymMatrix]:
    """``(A, M)`` with ``D * A = D(M)``; ``A`` is the first feasible set in
    canonical order (smallest, then lexicographic)."""
    if not is_delta_matroid(D):
        raise NotADeltaMatroid("not a delta-matroid")
    first = D.sorted_masks()[0]
    twisted = twist_mask(D, first)
    M = candidate_matrix(twisted)
    if delta_matroid_of_matrix(M).family != twisted.family:
        raise NotBinary("not representable over GF(2)")
    return D.labels_of(first), M


def is_binary(D: SetSystem) -> bool:
    try:
        binary_representation(D)
    except NotBinary:
        return False
    return True


def is_binary_any_twist(D: SetSystem) -> bool:
    """Cross-check for :func:`is_binary`: try every feasible set as the twist."""
    if not is_delta_matroid(D):
        raise NotADeltaMatroid("not a delta-matroid")
    for F in D.family:
        twisted = twist_mask(D, F)
        if delta_matroid_of_matrix(candidate_matrix(twisted)).family == twisted.family:
            return True
    return False


def principal_minors_identity_holds(M: SymMatrix, a: object, b: object, Y: Iterable[object]) -> bool:
    """Check the determinant identity relating ``M_ab[Y]`` to minors of ``M``."""
    a, b = str(a), str(b)
    Y = frozenset(str(y) for y in Y)
    slid = matrix_handle_slide(M, a, b)
    lhs = det_gf2(slid, Y)
    if a not in Y or b in Y:
        return lhs == det_gf2(M, Y)
    return lhs == det_gf2(M, Y) ^ det_gf2(M, Y ^ {a, b})


__all__ = [
    "CanonicalSignature",
    "SymMatrix",
    "all_symmetric_matrices",
    "apply_matrix_sequence",
    "binary_representation",
    "block_matrix",
    "block_structure",
    "candidate_matrix",
    "canonical_matrix",
    "delta_matroid_of_matrix",
    "det_gf2",
    "eliminate_pairs",
    "identity_matrix",
    "is_binary",
    "is_binary_any_twist",
    "matrix_handle_slide",
    "normalize_blocks",
    "principal_minors_identity_holds",
    "signature_of_blocks",
    "zero_matrix",
]

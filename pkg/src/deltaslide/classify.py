"""Canonical forms of binary delta-matroids under handle slides."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import (
    Parity,
    SetSystem,
    SlideSequence,
    apply_sequence,
    build_canonical,
    is_delta_matroid,
    max_feasible_size,
    min_feasible_size,
    parity,
    relabel,
    slide_family,
)
from .errors import LimitExceeded, NotADeltaMatroid, NotBinary
from .gf2 import (
    CanonicalSignature,
    candidate_matrix,
    delta_matroid_of_matrix,
    eliminate_pairs,
    is_binary,
    normalize_blocks,
    signature_of_blocks,
)

DEFAULT_LIMIT = 10**6


@dataclass(frozen=True)
class ClassificationResult:
    """``relabel(apply_sequence(input, slides), relabeling) == terminal``."""

    signature: CanonicalSignature
    slides: SlideSequence
    relabeling: dict[str, str]
    terminal: SetSystem

    def report(self) -> str:
        lines = [str(self.signature)]
        lines += [f"slide: {a} {b}" for a, b in self.slides]
        lines += [f"relabel: {x}->{y}" for x, y in self.relabeling.items()]
        return "\n".join(lines) + "\n"


def normalize(D: SetSystem, verify: bool = False) -> ClassificationResult:
    """Slide a binary delta-matroid with ``∅`` feasible to D_{i,j,0} (even)
    or D_{i,0,k} with ``k ≥ 1`` (odd).

    Works on the representing matrix; each matrix slide is a slide of the
    delta-matroid as well, so the matrix certificate is the answer. With
    ``verify=True`` the slides are also replayed on ``D`` itself.
    """
    if not is_delta_matroid(D):
        raise NotADeltaMatroid("not a delta-matroid")
    M = candidate_matrix(D)  # raises EmptySetNotFeasible
    if delta_matroid_of_matrix(M).family != D.family:
        raise NotBinary("not representable over GF(2)")
    reduced, slides, _ = normalize_blocks(M)
    sig = signature_of_blocks(reduced)
    if sig.k:
        reduced, more = eliminate_pairs(reduced)
        slides += more
        sig = signature_of_blocks(reduced)
    relabeling = dict(zip(reduced.labels, D.ground))
    relabeling = {x: relabeling[x] for x in D.ground}
    terminal = build_canonical(*sig, D.ground)
    if verify:
        replayed = relabel(apply_sequence(D, slides), relabeling)
        via_matrix = relabel(delta_matroid_of_matrix(reduced), relabeling)
        if replayed != terminal or via_matrix != terminal:
            raise AssertionError("matrix and set-system slide routes disagree")
    return ClassificationResult(sig, slides, relabeling, terminal)


def reachable_signatures(D: SetSystem) -> list[CanonicalSignature]:
    """Every D_{p,q,r} that handle slides can take ``D`` to.

    Odd inputs reach ``(i, q, w - 2q)`` with ``w = |E| - i`` for every ``q``
    leaving ``r ≥ 1``: slides preserve parity, so the even form
    ``(i, w/2, 0)`` is never reached.
    """
    sig = normalize(D).signature
    if parity(D) is Parity.EVEN:
        return [sig]
    n = len(D.ground)
    w = n - sig.i
    return [CanonicalSignature(sig.i, q, w - 2 * q, 0) for q in range((w - 1) // 2 + 1)]


def orbit_families(D: SetSystem, limit: int = DEFAULT_LIMIT) -> list[frozenset[int]]:
    """Feasible families reachable from ``D`` by handle slides, in BFS order."""
    n = len(D.ground)
    pairs = [(1 << a, 1 << b) for a in range(n) for b in range(n) if a != b]
    seen = {D.family}
    order = [D.family]
    queue = deque(order)
    while queue:
        fam = queue.popleft()
        for abit, bbit in pairs:
            nxt = slide_family(fam, abit, bbit)
            if nxt not in seen:
                if len(seen) >= limit:
                    raise LimitExceeded(f"slide orbit exceeds {limit} set systems")
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return order


def slide_orbit(D: SetSystem, limit: int = DEFAULT_LIMIT) -> set[SetSystem]:
    return {SetSystem._raw(D.ground, fam) for fam in orbit_families(D, limit)}


def recognize_canonical(D: SetSystem) -> tuple[CanonicalSignature, tuple[str, ...]] | None:
    """If ``D`` is isomorphic to some D_{i,j,k,l}, return the signature and
    the ground relabelled into block order; otherwise ``None``."""
    fam = D.family
    if not fam:
        return None
    n = len(D.ground)
    union = 0
    inter = (1 << n) - 1
    for m in fam:
        union |= m
        inter &= m
    loops = [e for e in range(n) if not union >> e & 1]
    coloops = [e for e in range(n) if inter >> e & 1]
    rest = [e for e in range(n) if union >> e & 1 and not inter >> e & 1]
    odd = [e for e in rest if all(m ^ (1 << e) in fam for m in fam)]
    left = [e for e in rest if e not in odd]
    pairs = []
    while left:
        e = left.pop(0)
        partner = None
        for f in left:
            both = (1 << e) | (1 << f)
            if all((m & both) in (0, both) and m ^ both in fam for m in fam):
                partner = f
                break
        if partner is None:
            return None
        left.remove(partner)
        pairs.append((e, partner))
    order = [D.ground[e] for e in loops]
    for e, f in pairs:
        order += [D.ground[e], D.ground[f]]
    order += [D.ground[e] for e in odd] + [D.ground[e] for e in coloops]
    sig = CanonicalSignature(len(loops), len(pairs), len(odd), len(coloops))
    if build_canonical(*sig, order) != D:
        return None
    return sig, tuple(order)


def conjecture_bookkeeping_holds(D: SetSystem, sig: CanonicalSignature) -> bool:
    n = len(D.ground)
    top, bottom = max_feasible_size(D), min_feasible_size(D)
    return (
        sig.i == n - top
        and sig.l == bottom
        and 2 * sig.j + sig.k == top - bottom
        and (sig.k == 0) == (parity(D) is Parity.EVEN)
    )


def _require_binary_dm(D: SetSystem) -> None:
    if not is_delta_matroid(D):
        raise NotADeltaMatroid("not a delta-matroid")
    if not is_binary(D):
        raise NotBinary("not representable over GF(2)")


def conjecture_spectrum(D: SetSystem, limit: int = DEFAULT_LIMIT) -> list[CanonicalSignature]:
    """Every D_{i,j,k,l} signature met in the slide orbit of ``D``."""
    _require_binary_dm(D)
    found = set()
    for fam in orbit_families(D, limit):
        hit = recognize_canonical(SetSystem._raw(D.ground, fam))
        if hit is not None:
            found.add(hit[0])
    return sorted(found)


def check_conjecture_instance(
    D: SetSystem, limit: int = DEFAULT_LIMIT
) -> tuple[bool, CanonicalSignature | None]:
    """Look for a D_{i,j,k,l} in the slide orbit of a binary delta-matroid.

    Returns ``(True, sig)`` for the first canonical form met (BFS order) whose
    counts match the size bookkeeping, ``(False, sig)`` if canonical forms
    occur but none match, and ``(False, None)`` if none occur. Raises
    :class:`LimitExceeded` when the orbit outgrows ``limit``.
    """
    _require_binary_dm(D)
    mismatch = None
    for fam in orbit_families(D, limit):
        hit = recognize_canonical(SetSystem._raw(D.ground, fam))
        if hit is None:
            continue
        if conjecture_bookkeeping_holds(D, hit[0]):
            return True, hit[0]
        mismatch = mismatch or hit[0]
    return False, mismatch


__all__ = [
    "ClassificationResult",
    "check_conjecture_instance",
    "conjecture_bookkeeping_holds",
    "conjecture_spectrum",
    "normalize",
    "orbit_families",
    "reachable_signatures",
    "recognize_canonical",
    "slide_orbit",
]

from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltaslide.core import SetSystem, apply_sequence, build_canonical, handle_slide, is_delta_matroid, max_feasible_size, twist
from deltaslide.errors import (
    EmptySetNotFeasible,
    InvalidElements,
    NoOddBlock,
    NotADeltaMatroid,
    NotBinary,
    NotBlockDiagonal,
    NotSymmetric,
)
from deltaslide.gf2 import (
    CanonicalSignature,
    SymMatrix,
    all_symmetric_matrices,
    apply_matrix_sequence,
    binary_representation,
    block_matrix,
    block_structure,
    candidate_matrix,
    canonical_matrix,
    delta_matroid_of_matrix,
    det_gf2,
    eliminate_pairs,
    identity_matrix,
    is_binary,
    is_binary_any_twist,
    matrix_handle_slide,
    normalize_blocks,
    principal_minors_identity_holds,
    signature_of_blocks,
    zero_matrix,
)

from oracles import det_cofactor, family_of, matrix_family, matrix_slide_definition, principal

PAIR = [[0, 1], [1, 0]]
J_MINUS_I = SymMatrix.from_lists("123", [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
EX3 = SetSystem.from_sets("123", [[], "12", "13", "23", "123"])


@st.composite
def matrices(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    labels = [f"m{i}" for i in range(n)]
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(st.integers(0, 1))
    return SymMatrix.from_lists(labels, m)


def test_matrix_must_be_symmetric():
    with pytest.raises(NotSymmetric):
        SymMatrix.from_lists("ab", [[0, 1], [0, 0]])
    with pytest.raises(NotSymmetric):
        SymMatrix.from_lists("ab", [[0, 1]])


def test_entry_lookup_and_permute():
    M = SymMatrix.from_lists("abc", [[1, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert M["a", "b"] == 1 and M["b", "b"] == 0
    P = M.permute("cab")
    assert P.to_lists() == [[1, 0, 0], [0, 1, 1], [0, 1, 0]]
    with pytest.raises(InvalidElements):
        M["a", "z"]
    with pytest.raises(InvalidElements):
        M.permute("ab")


# -- determinants ------------------------------------------------------------------


def test_det_examples():
    assert det_gf2(SymMatrix.from_lists("ef", PAIR)) == 1
    assert det_gf2(SymMatrix.from_lists("ef", [[1, 1], [1, 1]])) == 0
    assert det_gf2(J_MINUS_I, []) == 1
    assert det_gf2(zero_matrix("abc"), []) == 1
    assert det_gf2(J_MINUS_I) == 0
    with pytest.raises(InvalidElements):
        det_gf2(J_MINUS_I, ["9"])


def test_det_matches_cofactor_expansion_on_every_minor_up_to_four():
    for n in range(5):
        labels = [str(i) for i in range(n)]
        for M in all_symmetric_matrices(labels):
            m = M.to_lists()
            for r in range(n + 1):
                for idx in itertools.combinations(range(n), r):
                    assert det_gf2(M, [labels[i] for i in idx]) == det_cofactor(principal(m, idx))


@given(matrices(max_n=7))
def test_det_matches_cofactor_expansion_random(M):
    assert det_gf2(M) == det_cofactor(M.to_lists())


def test_all_symmetric_matrices_counts():
    for n in range(5):
        assert sum(1 for _ in all_symmetric_matrices([str(i) for i in range(n)])) == 2 ** (n * (n + 1) // 2)


# -- represented delta-matroids ------------------------------------------------------------


def test_delta_matroid_of_matrix_examples():
    assert delta_matroid_of_matrix(SymMatrix.from_lists("e", [[1]])) == SetSystem.from_sets("e", [[], "e"])
    assert delta_matroid_of_matrix(SymMatrix.from_lists("ef", PAIR)) == SetSystem.from_sets("ef", [[], "ef"])
    assert delta_matroid_of_matrix(SymMatrix.from_lists("e", [[0]])) == SetSystem.from_sets("e", [[]])


@given(matrices(max_n=5))
def test_delta_matroid_of_matrix_matches_oracle_and_is_a_delta_matroid(M):
    D = delta_matroid_of_matrix(M)
    assert family_of(D) == matrix_family(M.labels, M.to_lists())
    assert frozenset() in family_of(D)
    assert is_delta_matroid(D)


def test_represented_systems_are_delta_matroids_exhaustively():
    for n in range(1, 5):
        for M in all_symmetric_matrices([str(i) for i in range(n)]):
            assert is_delta_matroid(delta_matroid_of_matrix(M))


# -- matrix slides ------------------------------------------------------------------------------


def test_matrix_slide_examples():
    M = SymMatrix.from_lists("ab", [[0, 0], [0, 1]])
    assert matrix_handle_slide(M, "a", "b").to_lists() == [[1, 1], [1, 1]]
    assert matrix_handle_slide(matrix_handle_slide(J_MINUS_I, "1", "3"), "1", "3") == J_MINUS_I
    B = block_matrix([PAIR, [[1]]], "abc")
    assert apply_matrix_sequence(B, [("a", "c"), ("c", "b"), ("b", "a")]) == identity_matrix("abc")
    with pytest.raises(InvalidElements):
        matrix_handle_slide(M, "a", "a")


@given(matrices(max_n=5), st.data())
def test_matrix_slide_matches_definition(M, data):
    if M.size < 2:
        return
    a, b = data.draw(st.permutations(range(M.size)))[:2]
    out = matrix_handle_slide(M, M.labels[a], M.labels[b])
    assert out.to_lists() == matrix_slide_definition(M.to_lists(), a, b)


@given(matrices(max_n=5), st.data())
def test_matrix_slide_commutes_with_delta_matroid(M, data):
    if M.size < 2:
        return
    a, b = data.draw(st.permutations(M.labels))[:2]
    assert delta_matroid_of_matrix(matrix_handle_slide(M, a, b)) == handle_slide(delta_matroid_of_matrix(M), a, b)


def test_minor_identities_exhaustively_up_to_four():
    for n in range(2, 5):
        labels = [str(i) for i in range(n)]
        subsets = [c for r in range(n + 1) for c in itertools.combinations(labels, r)]
        for M in all_symmetric_matrices(labels):
            for a, b in itertools.permutations(labels, 2):
                for Y in subsets:
                    assert principal_minors_identity_holds(M, a, b, Y)


# -- block normalization ----------------------------------------------------------------------


def test_normalize_blocks_fixed_point():
    M = canonical_matrix(1, 1, 2, "abcde")
    out, slides, order = normalize_blocks(M)
    assert out == M and slides == () and order == M.labels


def test_normalize_blocks_diagonal_one_branch():
    M = SymMatrix.from_lists("ef", [[1, 1], [1, 1]])
    out, slides, order = normalize_blocks(M)
    assert slides == (("f", "e"),)
    assert order == ("f", "e")
    assert out.to_lists() == [[0, 0], [0, 1]]


def test_normalize_blocks_pair_branch():
    out, slides, order = normalize_blocks(J_MINUS_I)
    assert slides == (("3", "2"), ("3", "1"))
    assert order == ("3", "1", "2")
    assert out.to_lists() == [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert signature_of_blocks(out) == CanonicalSignature(1, 1, 0)


@given(matrices(max_n=6))
def test_normalize_blocks_certificate_replays(M):
    out, slides, order = normalize_blocks(M)
    assert apply_matrix_sequence(M, slides).permute(order) == out
    sig = signature_of_blocks(out)
    assert out == canonical_matrix(sig.i, sig.j, sig.k, order)
    assert sig.i == M.size - max_feasible_size(delta_matroid_of_matrix(M))


def test_signature_examples():
    assert signature_of_blocks(block_matrix([[[0]], PAIR], "abc")) == (1, 1, 0, 0)
    assert signature_of_blocks(identity_matrix("abc")) == (0, 0, 3, 0)
    assert signature_of_blocks(zero_matrix("ab")) == (2, 0, 0, 0)
    with pytest.raises(NotBlockDiagonal):
        signature_of_blocks(J_MINUS_I)


def test_block_structure_lists_blocks():
    kinds = [kind for kind, _ in block_structure(canonical_matrix(1, 1, 1, "abcd"))]
    assert len(kinds) == 3


def test_eliminate_pairs_examples():
    out, slides = eliminate_pairs(block_matrix([PAIR, [[1]]], "abc"))
    assert slides == (("a", "c"), ("c", "b"), ("b", "a"))
    assert out == identity_matrix(out.labels)
    out, slides = eliminate_pairs(identity_matrix("a"))
    assert slides == () and out == identity_matrix("a")
    B = block_matrix([PAIR, PAIR, [[1]]], "abcde")
    out, slides = eliminate_pairs(B)
    assert out == identity_matrix(out.labels) and len(slides) == 6
    assert apply_matrix_sequence(B, slides).permute(out.labels) == out
    with pytest.raises(NoOddBlock):
        eliminate_pairs(block_matrix([PAIR], "ab"))


# -- binary recognition -------------------------------------------------------------------------


def test_candidate_matrix_examples():
    assert candidate_matrix(SetSystem.from_sets("ef", [[], "ef"])).to_lists() == PAIR
    assert candidate_matrix(EX3) == J_MINUS_I
    assert candidate_matrix(SetSystem.from_sets("e", [[], "e"])).to_lists() == [[1]]
    with pytest.raises(EmptySetNotFeasible):
        candidate_matrix(SetSystem.from_sets("e", ["e"]))


@given(matrices(max_n=5))
def test_candidate_matrix_recovers_the_matrix(M):
    assert candidate_matrix(delta_matroid_of_matrix(M)) == M


def test_is_binary_examples():
    assert not is_binary(EX3)
    for sig in [(0, 0, 0, 1), (1, 1, 0, 0), (0, 1, 1, 2), (2, 0, 2, 1)]:
        n = sig[0] + 2 * sig[1] + sig[2] + sig[3]
        assert is_binary(build_canonical(*sig, [f"e{t}" for t in range(n)]))
    with pytest.raises(NotADeltaMatroid):
        is_binary(SetSystem.from_sets("123", [[], "12", "23", "123"]))


def test_is_binary_agrees_with_every_feasible_twist_up_to_four():
    from deltaslide.verify import binary_delta_matroids

    seen = 0
    for n in range(1, 4):
        labels = [str(i) for i in range(n)]
        subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(labels, r)]
        for bits in range(1, 1 << len(subsets)):
            D = SetSystem.from_sets(labels, [s for i, s in enumerate(subsets) if bits >> i & 1])
            if is_delta_matroid(D):
                seen += 1
                assert is_binary(D) == is_binary_any_twist(D)
    assert seen
    for D in binary_delta_matroids(4):
        assert is_binary(D) and is_binary_any_twist(D)


def test_binary_representation_certificate():
    D = twist(delta_matroid_of_matrix(J_MINUS_I), ["1", "2"])
    A, M = binary_representation(D)
    assert twist(D, A) == delta_matroid_of_matrix(M)
    with pytest.raises(NotBinary):
        binary_representation(EX3)

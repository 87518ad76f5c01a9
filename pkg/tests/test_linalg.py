from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmackey.groups import cyclic, symmetric
from qmackey.linalg import (
    LinAlgError,
    QMatrix,
    SingularMatrixError,
    WModule,
    averaging_projector,
    direct_sum,
    fixed_subspace,
    hstack,
    intertwiner,
    permutation_matrix,
    quotient_space,
    restrict_map,
    tensor,
    trivial_multiplicity,
    vstack,
)

fractions_st = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
)


def matrices(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(fractions_st, min_size=c, max_size=c), min_size=r, max_size=r
            ).map(QMatrix)
        )
    )


class TestBasics:
    def test_kernel_of_zero_map_is_identity(self):
        K = QMatrix.zeros(2, 2).kernel()
        assert K == QMatrix.identity(2)

    def test_inverse_of_unipotent(self):
        M = QMatrix([[1, 1], [0, 1]])
        assert M.inverse() == QMatrix([[1, -1], [0, 1]])

    def test_tensor_of_identities(self):
        assert tensor(QMatrix.identity(2), QMatrix.identity(3)) == QMatrix.identity(6)

    def test_singular_inverse_raises(self):
        with pytest.raises(SingularMatrixError):
            QMatrix([[1, 2], [2, 4]]).inverse()

    def test_solve_none_when_inconsistent(self):
        M = QMatrix([[1, 0], [1, 0]])
        rhs = QMatrix.column([1, 2])
        assert M.solve(rhs) is None

    def test_shape_mismatch(self):
        with pytest.raises(LinAlgError):
            QMatrix.identity(2).matmul(QMatrix.identity(3))

    def test_zero_dimensional_matrices(self):
        z = QMatrix.zeros(0, 3)
        assert z.rank() == 0
        assert z.kernel() == QMatrix.identity(3)
        assert QMatrix.zeros(3, 0).matmul(QMatrix.zeros(0, 2)) == QMatrix.zeros(3, 2)

    def test_direct_sum_blocks(self):
        A = QMatrix([[2]])
        B = QMatrix([[0, 1], [1, 0]])
        S = direct_sum(A, B)
        assert S == QMatrix([[2, 0, 0], [0, 0, 1], [0, 1, 0]])

    def test_image_canonical(self):
        M = QMatrix([[2, 4], [1, 2]])
        assert M.image() == QMatrix([[1], [Fraction(1, 2)]])


class TestProperties:
    @settings(deadline=None, max_examples=60)
    @given(matrices())
    def test_rank_nullity(self, M):
        assert M.rank() + M.kernel().cols == M.cols

    @settings(deadline=None, max_examples=60)
    @given(matrices())
    def test_kernel_annihilated(self, M):
        K = M.kernel()
        assert M.matmul(K).is_zero()

    @settings(deadline=None, max_examples=60)
    @given(matrices())
    def test_image_spans_columns(self, M):
        B = M.image()
        assert B.cols == M.rank()
        sol = B.solve(M)
        assert sol is not None and B.matmul(sol) == M

    @settings(deadline=None, max_examples=40)
    @given(matrices(3), matrices(3))
    def test_tensor_multiplicative(self, A, B):
        # (A (x) B)(A' (x) B') = AA' (x) BB' on square matrices
        A2 = A.matmul(A.transpose())
        B2 = B.matmul(B.transpose())
        lhs = tensor(A2, B2)
        assert lhs == tensor(A2, QMatrix.identity(B2.rows)).matmul(
            tensor(QMatrix.identity(A2.rows), B2)
        )

    @settings(deadline=None, max_examples=60)
    @given(matrices())
    def test_solve_is_exact(self, M):
        rhs = M.matmul(QMatrix.identity(M.cols))
        X = M.solve(rhs)
        assert X is not None
        assert M.matmul(X) == rhs


class TestQuotient:
    def test_no_relations_gives_identity(self):
        proj, sec = quotient_space(3, QMatrix.zeros(3, 0))
        assert proj == QMatrix.identity(3)
        assert sec == QMatrix.identity(3)

    def test_diagonal_line(self):
        proj, sec = quotient_space(2, QMatrix.column([1, 1]))
        assert proj.rows == 1
        assert proj.matmul(sec) == QMatrix.identity(1)
        # the relation itself dies
        assert proj.matmul(QMatrix.column([1, 1])).is_zero()

    @settings(deadline=None, max_examples=40)
    @given(matrices())
    def test_projection_section_identity(self, M):
        proj, sec = quotient_space(M.rows, M)
        q = M.rows - M.rank()
        assert proj.rows == q
        assert proj.matmul(sec) == QMatrix.identity(q)
        assert proj.matmul(M).is_zero()


class TestWModule:
    def test_regular_module_valid(self):
        V = WModule.regular(cyclic(6))
        V.validate()
        assert V.dim == 6

    def test_fixed_subspace_of_c3_inside_regular_c6(self):
        # independent oracle: the fixed space of a permutation module is
        # spanned by orbit sums, so its dimension is the number of orbits
        G = cyclic(6)
        V = WModule.regular(G)
        c3 = (0, 2, 4)
        orbits = {tuple(sorted((x + s) % 6 for s in c3)) for x in range(6)}
        B = fixed_subspace(V, c3)
        assert B.cols == len(orbits) == 2

    def test_fixed_subspace_of_identity_is_everything(self):
        V = WModule.regular(cyclic(4))
        assert fixed_subspace(V, (0,)).cols == 4

    def test_coset_module_full_fixed_space_is_line(self):
        # W = C6/C3 acting on itself: one orbit
        W = cyclic(2)
        V = WModule.regular(W)
        assert fixed_subspace(V, range(2)).cols == 1

    def test_averaging_projector_trivial_subgroup(self):
        V = WModule.regular(cyclic(3))
        assert averaging_projector(V, (0,)) == QMatrix.identity(3)

    def test_averaging_projector_c2_regular(self):
        V = WModule.regular(cyclic(2))
        P = averaging_projector(V, (0, 1))
        assert P == QMatrix([[Fraction(1, 2)] * 2] * 2)

    def test_averaging_projector_idempotent_with_fixed_image(self):
        G = cyclic(6)
        V = WModule.regular(G)
        for sub in [(0, 3), (0, 2, 4), tuple(range(6))]:
            P = averaging_projector(V, sub)
            assert P.matmul(P) == P
            assert P.image() == fixed_subspace(V, sub)

    def test_trivial_multiplicity_matches_fixed_dim(self):
        for G in (cyclic(6), symmetric(3)):
            V = WModule.regular(G)
            full = fixed_subspace(V, range(G.order))
            assert trivial_multiplicity(V) == full.cols == 1

    def test_trivial_multiplicity_on_assorted_modules(self):
        from qmackey.groups import coset_gset

        G = symmetric(3)
        pieces = []
        for seed in ((1,), (0,), (3,)):
            sub = G.closure(seed)
            pieces.append(WModule.from_gset(G, coset_gset(G, sub)))
        V = pieces[0].direct_sum(pieces[1]).direct_sum(pieces[2])
        T = QMatrix([[1 if i <= j else 0 for j in range(V.dim)] for i in range(V.dim)])
        for mod in pieces + [V, V.conjugated(T)]:
            full = fixed_subspace(mod, range(G.order))
            assert trivial_multiplicity(mod) == full.cols

    def test_invalid_generator_matrices_rejected(self):
        G = cyclic(3)
        bad = WModule(G, 1, (QMatrix([[2]]),))
        with pytest.raises(LinAlgError):
            bad.validate()

    def test_singular_generator_rejected(self):
        G = cyclic(2)
        bad = WModule(G, 1, (QMatrix([[0]]),))
        with pytest.raises(LinAlgError):
            bad.validate()

    def test_intertwiner_between_conjugated_modules(self):
        G = symmetric(3)
        V = WModule.regular(G)
        T = QMatrix([[1 if i <= j else 0 for j in range(6)] for i in range(6)])
        V2 = V.conjugated(T)
        V2.validate()
        X = intertwiner(V, V2)
        assert X is not None
        for g in range(G.order):
            assert X.matmul(V.matrix(g)) == V2.matrix(g).matmul(X)

    def test_intertwiner_none_for_nonisomorphic(self):
        W = cyclic(2)
        triv = WModule.trivial(W, 1)
        sign = WModule(W, 1, (QMatrix([[-1]]),))
        assert intertwiner(triv, sign) is None


class TestRestrictMap:
    def test_restrict_onto_subspace(self):
        amb = QMatrix([[0, 1], [1, 0]])
        basis = QMatrix.column([1, 1])
        assert restrict_map(amb, basis, basis) == QMatrix([[1]])

    def test_restrict_rejects_escaping_map(self):
        amb = QMatrix([[1, 1], [0, 1]])
        basis = QMatrix.column([1, 0])
        other = QMatrix.column([0, 1])
        with pytest.raises(LinAlgError):
            restrict_map(amb, other, other)


def test_stacking():
    A = QMatrix.identity(2)
    assert hstack(A, A).cols == 4
    assert vstack(A, A).rows == 4
    assert permutation_matrix((1, 0)) == QMatrix([[0, 1], [1, 0]])

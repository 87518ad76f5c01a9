import random

import pytest

from qmackey.burnside import burnside_ring
from qmackey.classify import (
    SplitData,
    assemble,
    certify_iso,
    classify_iso,
    comparison_map,
    diagonal_check,
    free_functor,
    free_functor_idempotent_rank,
    free_level_dims,
    random_functor,
    random_split_data,
    split,
    u_module,
)
from qmackey.linalg import QMatrix, WModule, intertwiner
from qmackey.mackey import (
    MackeyError,
    burnside_mackey,
    check_axioms,
    direct_sum,
    fp_functor,
    idempotent_part,
    zero_functor,
)


def ids_of(lat):
    return {lat.name(h): h for h in range(len(lat))}


@pytest.fixture(scope="module")
def c6A(c6_lattice):
    return burnside_mackey(c6_lattice)


class TestFreeFunctorsC6:
    """The four order-6 free functors on the trivial line, with the drawn maps."""

    def test_f2_line(self, c6_lattice):
        ids = ids_of(c6_lattice)
        W = c6_lattice.weyl(ids["C2"]).group
        F = free_functor(c6_lattice, ids["C2"], WModule.trivial(W, 1))
        assert F.dims == (0, 1, 0, 1)
        assert F.res[(ids["C6"], ids["C2"])] == QMatrix.identity(1)
        assert F.ind[(ids["C6"], ids["C2"])] == QMatrix.scalar(1, 3)
        assert check_axioms(F).ok

    def test_f3_line(self, c6_lattice):
        ids = ids_of(c6_lattice)
        W = c6_lattice.weyl(ids["C3"]).group
        F = free_functor(c6_lattice, ids["C3"], WModule.trivial(W, 1))
        assert F.dims == (0, 0, 1, 1)
        assert F.res[(ids["C6"], ids["C3"])] == QMatrix.identity(1)
        assert F.ind[(ids["C6"], ids["C3"])] == QMatrix.scalar(1, 2)

    def test_f6_line(self, c6_lattice):
        ids = ids_of(c6_lattice)
        W = c6_lattice.weyl(ids["C6"]).group
        F = free_functor(c6_lattice, ids["C6"], WModule.trivial(W, 1))
        assert F.dims == (0, 0, 0, 1)

    def test_f1_line_is_constant_shape(self, c6_lattice):
        ids = ids_of(c6_lattice)
        W = c6_lattice.weyl(ids["C1"]).group
        F = free_functor(c6_lattice, ids["C1"], WModule.trivial(W, 1))
        assert F.dims == (1, 1, 1, 1)
        assert F.res[(ids["C6"], ids["C1"])] == QMatrix.identity(1)
        assert F.ind[(ids["C2"], ids["C1"])] == QMatrix.scalar(1, 2)
        assert F.ind[(ids["C3"], ids["C1"])] == QMatrix.scalar(1, 3)

    def test_f3_on_group_ring(self, c6_lattice):
        # the free functor on the regular Weyl module: fixed-point inclusion
        # as restriction, augmentation as induction
        ids = ids_of(c6_lattice)
        W = c6_lattice.weyl(ids["C3"]).group
        F = free_functor(c6_lattice, ids["C3"], WModule.regular(W))
        assert F.dims == (0, 0, 2, 1)
        assert F.res[(ids["C6"], ids["C3"])] == QMatrix([[1], [1]])
        assert F.ind[(ids["C6"], ids["C3"])] == QMatrix([[1, 1]])
        assert check_axioms(F).ok

    def test_f1_on_group_ring_matches_fixed_points(self, c6_lattice):
        ids = ids_of(c6_lattice)
        W = c6_lattice.weyl(ids["C1"]).group
        F = free_functor(c6_lattice, ids["C1"], WModule.regular(W))
        FP = fp_functor(c6_lattice, WModule.regular(c6_lattice.group))
        assert F.dims == FP.dims == (6, 3, 2, 1)
        iso = certify_iso(F, FP)
        assert iso is not None and iso.is_levelwise_iso()


class TestFreeFunctorGeneral:
    def test_zero_module_gives_zero_functor(self, s3_lattice):
        W = s3_lattice.weyl(s3_lattice.top).group
        F = free_functor(s3_lattice, s3_lattice.top, WModule.zero(W))
        assert F.dims == tuple(0 for _ in s3_lattice.subgroups)

    def test_top_class_concentrates_at_top(self, s3_lattice):
        W = s3_lattice.weyl(s3_lattice.top).group
        F = free_functor(s3_lattice, s3_lattice.top, WModule.trivial(W, 3))
        assert F.dims[s3_lattice.top] == 3
        assert all(F.dims[k] == 0 for k in range(len(s3_lattice) - 1))

    def test_vanishes_off_superconjugates(self, s4_lattice):
        reps = s4_lattice.class_reps()
        h = reps[3]
        W = s4_lattice.weyl(h).group
        F = free_functor(s4_lattice, h, WModule.trivial(W, 1))
        for k in range(len(s4_lattice)):
            if not s4_lattice.is_subconjugate(h, k):
                assert F.dims[k] == 0

    def test_level_dims_match_character_count(self, s3_lattice):
        for h in s3_lattice.class_reps():
            W = s3_lattice.weyl(h).group
            V = WModule.regular(W)
            F = free_functor(s3_lattice, h, V)
            assert F.dims == free_level_dims(s3_lattice, h, V)

    def test_axioms_nonabelian(self, s4_lattice):
        k = next(h for h in s4_lattice.class_reps() if s4_lattice.order(h) == 2)
        W = s4_lattice.weyl(k).group
        F = free_functor(s4_lattice, k, WModule.regular(W))
        assert check_axioms(F).ok

    def test_free_functor_is_idempotent_local(self, c6_lattice):
        ids = ids_of(c6_lattice)
        ring = burnside_ring(c6_lattice)
        W = c6_lattice.weyl(ids["C3"]).group
        F = free_functor(c6_lattice, ids["C3"], WModule.regular(W))
        eF = idempotent_part(F, ring.idempotent(ids["C3"]))
        assert eF.dims == F.dims
        other = idempotent_part(F, ring.idempotent(ids["C2"]))
        assert all(d == 0 for d in other.dims)


class TestUModule:
    def test_u_c2_of_burnside_c6_is_trivial_line(self, c6_lattice, c6A):
        ids = ids_of(c6_lattice)
        V, basis = u_module(c6A, ids["C2"])
        assert V.dim == 1
        for g in range(V.group.order):
            assert V.matrix(g) == QMatrix.identity(1)

    def test_u_of_zero_functor(self, c6_lattice):
        Z = zero_functor(c6_lattice)
        for h in c6_lattice.class_reps():
            V, _ = u_module(Z, h)
            assert V.dim == 0

    def test_unit_u_of_free_is_module(self, s3_lattice):
        for h in s3_lattice.class_reps():
            W = s3_lattice.weyl(h).group
            V = WModule.regular(W)
            F = free_functor(s3_lattice, h, V)
            U, _ = u_module(F, h)
            assert U.dim == V.dim
            X = intertwiner(V, U)
            assert X is not None and X.is_invertible()
            for g in range(W.order):
                assert X.matmul(V.matrix(g)) == U.matrix(g).matmul(X)


class TestUModuleQuotientCharacterization:
    def test_local_dim_complements_induction_images(self, corpus_lattices):
        # independent route: the local piece at H has the dimension of the
        # quotient of M(G/H) by the images of inductions from proper subgroups
        from qmackey.linalg import hstack

        for name in ("C6", "S3", "D8"):
            lat = corpus_lattices[name]
            rng = random.Random(31)
            functors = [burnside_mackey(lat), random_functor(lat, rng)]
            for M in functors:
                for h in lat.class_reps():
                    U, _ = u_module(M, h)
                    proper = [M.ind[(h, k)] for k in lat.subgroups_of(h) if k != h]
                    if proper:
                        rank = hstack(*proper).rank()
                    else:
                        rank = 0
                    assert U.dim == M.dims[h] - rank, (name, lat.name(h))


class TestCyclicTowerSummands:
    def test_c8_levels_split_into_fixed_pieces_of_the_modules(self, corpus_lattices):
        # assemble from known Weyl modules, then match each diagonal summand
        # against the directly computed fixed subspace of that module
        from qmackey.linalg import fixed_subspace

        lat = corpus_lattices["C8"]
        modules = {}
        for h in lat.class_reps():
            modules[h] = WModule.regular(lat.weyl(h).group)
        M = assemble(SplitData(lat, modules))
        for h in range(len(lat)):
            for k in lat.subgroups_of(h):
                rep = diagonal_check(M, k, h)
                assert rep.ok
                w = lat.weyl(k)
                upstairs = [w.proj[g] for g in lat.elements(h)]
                expected = fixed_subspace(modules[k], upstairs).cols
                assert rep.dim_fixed == expected, (lat.name(k), lat.name(h))


class TestComparison:
    def test_comparison_on_free_functor_is_iso(self, c6_lattice):
        ids = ids_of(c6_lattice)
        W = c6_lattice.weyl(ids["C3"]).group
        F = free_functor(c6_lattice, ids["C3"], WModule.regular(W))
        mor = comparison_map(F, ids["C3"])
        assert mor.is_levelwise_iso()

    def test_comparison_on_functor_vanishing_at_h(self, c6_lattice):
        ids = ids_of(c6_lattice)
        W2 = c6_lattice.weyl(ids["C2"]).group
        F = free_functor(c6_lattice, ids["C2"], WModule.trivial(W2, 1))
        mor = comparison_map(F, ids["C3"])
        assert all(m.rows == 0 for m in mor.maps)

    def test_comparison_levelwise_ranks_burnside_c6(self, c6_lattice, c6A):
        ids = ids_of(c6_lattice)
        mor = comparison_map(c6A, ids["C3"])
        assert [m.rank() for m in mor.maps] == [0, 0, 1, 1]


class TestSplitAssemble:
    def test_split_burnside_c6_gives_four_trivial_lines(self, c6_lattice, c6A):
        S = split(c6A)
        assert sorted(v.dim for v in S.modules.values()) == [1, 1, 1, 1]
        for V in S.modules.values():
            for g in range(V.group.order):
                assert V.matrix(g) == QMatrix.identity(1)

    def test_assemble_reproduces_burnside_c6(self, c6_lattice, c6A):
        N = assemble(split(c6A))
        assert N.dims == c6A.dims
        iso = classify_iso(c6A)
        assert iso.target.dims == c6A.dims
        assert iso.is_levelwise_iso()

    def test_split_of_free_concentrates_in_one_class(self, s3_lattice):
        h = next(k for k in s3_lattice.class_reps() if s3_lattice.order(k) == 3)
        W = s3_lattice.weyl(h).group
        F = free_functor(s3_lattice, h, WModule.regular(W))
        S = split(F)
        for k, V in S.modules.items():
            if k == h:
                assert V.dim == W.order
            else:
                assert V.dim == 0

    def test_split_additive_on_direct_sums(self, c6_lattice, c6A):
        twice = direct_sum(c6A, c6A)
        S1 = split(c6A)
        S2 = split(twice)
        for h in c6_lattice.class_reps():
            assert S2.modules[h].dim == 2 * S1.modules[h].dim

    def test_assemble_empty_is_zero(self, c6_lattice):
        Z = assemble(SplitData(c6_lattice, {}))
        assert all(d == 0 for d in Z.dims)


class TestClassifyRoundTrip:
    @pytest.mark.parametrize("name", ["C6", "S3", "D8"])
    def test_random_round_trips(self, corpus_lattices, name):
        lat = corpus_lattices[name]
        rng = random.Random(2024)
        for _ in range(8):
            M = random_functor(lat, rng)
            assert max(M.dims) <= 4
            iso = classify_iso(M)
            assert iso.is_levelwise_iso()

    def test_random_functors_pass_axioms(self, s3_lattice):
        rng = random.Random(5)
        for _ in range(3):
            M = random_functor(s3_lattice, rng)
            assert check_axioms(M).ok

    def test_round_trip_split_dims_stable(self, s3_lattice):
        rng = random.Random(77)
        S = random_split_data(s3_lattice, rng)
        M = assemble(S)
        S2 = split(M)
        for h in s3_lattice.class_reps():
            want = S.modules[h].dim if h in S.modules else 0
            assert S2.modules[h].dim == want


class TestCertifyIso:
    def test_functor_isomorphic_to_scramble(self, c6_lattice, c6A):
        from qmackey.classify import random_invertible
        from qmackey.mackey import basis_change

        rng = random.Random(9)
        mats = [random_invertible(d, rng) for d in c6A.dims]
        M2 = basis_change(c6A, mats)
        iso = certify_iso(c6A, M2)
        assert iso is not None and iso.is_levelwise_iso()

    def test_nonisomorphic_detected(self, c6_lattice, c6A):
        assert certify_iso(c6A, direct_sum(c6A, c6A)) is None


class TestDiagonal:
    def test_s4_transposition_example(self, s4_lattice):
        G = s4_lattice.group
        k = s4_lattice.subgroup_id(G.closure([G.elem_names.index("(1 2)")]))
        h = s4_lattice.subgroup_id(
            G.closure([G.elem_names.index("(1 2)"), G.elem_names.index("(3 4)")])
        )
        assert s4_lattice.normalizers[k] == h
        W = s4_lattice.weyl(k).group
        assert W.order == 2
        F = free_functor(s4_lattice, k, WModule.regular(W))
        # the composite I o R on the two fixed cosets has a line as image
        image = F.ind[(h, k)].matmul(F.res[(h, k)])
        assert image.rank() == 1
        rep = diagonal_check(F, k, h)
        assert rep.ok and rep.dim_upper == 1 and rep.dim_fixed == 1

    def test_equal_subgroups_identity(self, c6_lattice, c6A):
        for k in range(len(c6_lattice)):
            rep = diagonal_check(c6A, k, k)
            assert rep.ok
            assert rep.matrix.is_identity()

    def test_c8_tower_dimension_formula(self, corpus_lattices):
        # over the order-8 cyclic tower the level dimension splits as the sum
        # of Weyl-fixed pieces of the lower local modules
        lat = corpus_lattices["C8"]
        rng = random.Random(42)
        S = random_split_data(lat, rng)
        M = assemble(S)
        for h in range(len(lat)):
            total = 0
            for k in lat.subgroups_of(h):
                rep = diagonal_check(M, k, h)
                assert rep.ok
                total += rep.dim_fixed
            assert total == M.dims[h]

    def test_all_pairs_on_random_functors(self, corpus_lattices):
        for name in ("C6", "S3"):
            lat = corpus_lattices[name]
            rng = random.Random(11)
            M = random_functor(lat, rng)
            for h in range(len(lat)):
                for k in lat.subgroups_of(h):
                    rep = diagonal_check(M, k, h)
                    assert rep.ok, (name, lat.name(k), lat.name(h))

    def test_requires_containment(self, c6_lattice, c6A):
        ids = ids_of(c6_lattice)
        with pytest.raises(MackeyError):
            diagonal_check(c6A, ids["C2"], ids["C3"])


class TestFreeFunctorIdempotent:
    def test_c6_nonconjugate_vanishes(self, c6_lattice):
        ids = ids_of(c6_lattice)
        W = c6_lattice.weyl(ids["C3"]).group
        V = WModule.trivial(W, 1)
        rank = free_functor_idempotent_rank(c6_lattice, ids["C3"], ids["C6"], ids["C2"], V)
        assert rank == 0

    def test_s4_conjugate_case_nonzero(self, s4_lattice):
        G = s4_lattice.group
        k = s4_lattice.subgroup_id(G.closure([G.elem_names.index("(1 2)")]))
        h = s4_lattice.normalizers[k]
        W = s4_lattice.weyl(k).group
        rank = free_functor_idempotent_rank(s4_lattice, k, h, k, WModule.regular(W))
        assert rank == 1

    def test_vanishing_sweep(self, s3_lattice):
        for a in s3_lattice.class_reps():
            W = s3_lattice.weyl(a).group
            V = WModule.trivial(W, 1)
            for b in range(len(s3_lattice)):
                for c in s3_lattice.subgroups_of(b):
                    rank = free_functor_idempotent_rank(s3_lattice, a, b, c, V)
                    if s3_lattice.class_of[c] != s3_lattice.class_of[a]:
                        assert rank == 0

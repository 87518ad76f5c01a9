"""Classification of rational Mackey functors by Weyl-group modules.

For each conjugacy class of subgroups (H) there is a pair of inverse
constructions: ``u_module`` extracts the local piece of a functor at H (the
image of the top idempotent of A_Q(H), carrying an action of the Weyl group),
and ``free_functor`` rebuilds a functor from such a module, with level K the
Weyl-fixed part of the coset space Q[(G/K)^H] tensored with the module.

``split``/``assemble``/``classify_iso`` package these into a certified
equivalence: every functor is isomorphic to the direct sum of its rebuilt
pieces, and the comparison morphism is validated and certified invertible
level by level rather than assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .burnside import burnside_ring
from .groups import SubgroupLattice
from .linalg import (
    QMatrix,
    WModule,
    direct_sum as mat_direct_sum,
    intertwiner,
    restrict_map,
    tensor,
    vstack,
)
from .mackey import (
    MackeyError,
    MackeyFunctor,
    MackeyMorphism,
    burnside_action,
    direct_sum,
    basis_change,
    zero_functor,
)


# ---------------------------------------------------------------------------
# the free functor F_H
# ---------------------------------------------------------------------------


@dataclass
class FreeBlock:
    """A free functor together with its chosen ambient data.

    ``cosets[k]`` lists the H-fixed cosets of G/K; ``bases[k]`` is the basis
    of the Weyl-fixed subspace of Q[cosets] (x) V in coset-major coordinates.
    """

    lattice: SubgroupLattice
    h: int
    module: WModule
    functor: MackeyFunctor
    cosets: tuple
    bases: tuple


def _weyl_coset_perm(lattice: SubgroupLattice, h: int, k: int, n: int, X) -> list[int]:
    """Left multiplication by a normalizer representative on the fixed cosets."""
    pos = {g: i for i, g in enumerate(X)}
    G = lattice.group
    return [pos[lattice.coset_of(G.mul(n, g), k)] for g in X]


def free_level_dims(lattice: SubgroupLattice, h: int, V: WModule) -> tuple[int, ...]:
    """Level dimensions of the free functor, by the fixed-point character count.

    The dimension of the Weyl-fixed subspace of Q[X] (x) V is the averaged
    product of the permutation fixed counts with the module's character; this
    is independent of the kernel computation used to build the functor.
    """
    w = lattice.weyl(h)
    chars = V.character()
    out = []
    for k in range(len(lattice)):
        X = lattice.fixed_cosets(k, h)
        if not X or V.dim == 0:
            out.append(0)
            continue
        total = Fraction(0)
        for widx in range(w.group.order):
            perm = _weyl_coset_perm(lattice, h, k, w.reps[widx], X)
            fixed = sum(1 for i, p in enumerate(perm) if i == p)
            total += fixed * chars[widx]
        dim = total / w.group.order
        if dim.denominator != 1:
            raise MackeyError("character count is not integral")
        out.append(int(dim))
    return tuple(out)


def build_free_block(lattice: SubgroupLattice, h: int, V: WModule, name: str | None = None) -> FreeBlock:
    """Construct the free functor on a Weyl-group module at the class of H."""
    w = lattice.weyl(h)
    if V.group is not w.group and V.group._mul != w.group._mul:
        raise MackeyError("module must live over the Weyl group of H")
    G = lattice.group
    n_levels = len(lattice)
    cosets = [lattice.fixed_cosets(k, h) for k in range(n_levels)]
    bases = []
    for k in range(n_levels):
        X = cosets[k]
        amb = len(X) * V.dim
        if amb == 0:
            bases.append(QMatrix.zeros(len(X) * V.dim, 0))
            continue
        stack = []
        eye = QMatrix.identity(amb)
        for pos, s in enumerate(w.group.gens):
            perm = _weyl_coset_perm(lattice, h, k, w.reps[s], X)
            pm = QMatrix(
                [[Fraction(1 if perm[j] == i else 0) for j in range(len(X))] for i in range(len(X))]
            )
            stack.append(tensor(pm, V.gen_matrices[pos]) - eye)
        bases.append(vstack(*stack).kernel() if stack else eye)
    dims = tuple(b.cols for b in bases)

    pos_of = [{g: i for i, g in enumerate(X)} for X in cosets]

    def amb_ind(k_big, k_small):
        # project fixed cosets of the smaller subgroup onto the bigger one
        Xs, Xb = cosets[k_small], cosets[k_big]
        out = [[Fraction(0)] * (len(Xs) * V.dim) for _ in range(len(Xb) * V.dim)]
        for j, g in enumerate(Xs):
            i = pos_of[k_big][lattice.coset_of(g, k_big)]
            for d in range(V.dim):
                out[i * V.dim + d][j * V.dim + d] = Fraction(1)
        return QMatrix(out, rows=len(Xb) * V.dim, cols=len(Xs) * V.dim)

    res, ind = {}, {}
    for kb in range(n_levels):
        for ks in lattice.subgroups_of(kb):
            a = amb_ind(kb, ks)
            ind[(kb, ks)] = restrict_map(a, bases[ks], bases[kb])
            # restriction sends a coset to the sum of its fixed preimages
            res[(kb, ks)] = restrict_map(a.transpose(), bases[kb], bases[ks])
    cgen = {}
    for pos, s in enumerate(G.gens):
        si = G.inv(s)
        for k in range(n_levels):
            ks = lattice.conjugate(s, k)
            Xs, Xd = cosets[k], cosets[ks]
            out = [[Fraction(0)] * (len(Xs) * V.dim) for _ in range(len(Xd) * V.dim)]
            for j, g in enumerate(Xs):
                i = pos_of[ks][lattice.coset_of(G.mul(g, si), ks)]
                for d in range(V.dim):
                    out[i * V.dim + d][j * V.dim + d] = Fraction(1)
            amb = QMatrix(out, rows=len(Xd) * V.dim, cols=len(Xs) * V.dim)
            cgen[(pos, k)] = restrict_map(amb, bases[k], bases[ks])
    functor = MackeyFunctor(
        lattice, dims, res, ind, cgen, name=name or f"F[{lattice.class_name_of(h)}]"
    )
    return FreeBlock(lattice, h, V, functor, tuple(cosets), tuple(bases))


def free_functor(lattice: SubgroupLattice, h: int, V: WModule, name: str | None = None) -> MackeyFunctor:
    return build_free_block(lattice, h, V, name=name).functor


# ---------------------------------------------------------------------------
# the evaluation U_H
# ---------------------------------------------------------------------------


def u_module(M: MackeyFunctor, h: int) -> tuple[WModule, QMatrix]:
    """The local piece of M at H: the top-idempotent part of M(G/H) with its
    Weyl action.  Returns the module and its basis inside M(G/H)."""
    lat = M.lattice
    ring = burnside_ring(lat, h)
    P = burnside_action(M, h, ring.idempotent(h))
    basis = P.image()
    w = lat.weyl(h)
    mats = tuple(restrict_map(M.conj(w.reps[s], h), basis, basis) for s in w.group.gens)
    return WModule(w.group, basis.cols, mats), basis


# ---------------------------------------------------------------------------
# the comparison morphism
# ---------------------------------------------------------------------------


def comparison_block(M: MackeyFunctor, h: int) -> tuple[FreeBlock, MackeyMorphism]:
    """The natural map from M into the free functor rebuilt from its piece at H.

    The component at a fixed coset gK restricts to the conjugate of H inside
    K, conjugates back to H, and projects onto the local piece.  Membership
    in the Weyl-fixed subspace and the morphism property are verified, not
    assumed.
    """
    lat = M.lattice
    G = lat.group
    V, basis = u_module(M, h)
    block = build_free_block(lat, h, V)
    ring = burnside_ring(lat, h)
    P = burnside_action(M, h, ring.idempotent(h))
    maps = []
    for k in range(len(lat)):
        X = block.cosets[k]
        if not X or V.dim == 0:
            maps.append(QMatrix.zeros(block.functor.dims[k], M.dims[k]))
            continue
        rows = []
        for g in X:
            gi = G.inv(g)
            hg = lat.conjugate(gi, h)  # g^-1 H g <= K
            comp = P.matmul(M.conj(g, hg)).matmul(M.res[(k, hg)])
            coords = basis.solve(comp)
            if coords is None:
                raise MackeyError("comparison component escapes the local piece")
            rows.append(coords)
        ambient = vstack(*rows)
        coords = block.bases[k].solve(ambient)
        if coords is None or block.bases[k].matmul(coords) != ambient:
            raise MackeyError("comparison component is not Weyl-fixed")
        maps.append(coords)
    mor = MackeyMorphism(M, block.functor, tuple(maps))
    mor.validate()
    return block, mor


def comparison_map(M: MackeyFunctor, h: int) -> MackeyMorphism:
    return comparison_block(M, h)[1]


# ---------------------------------------------------------------------------
# split / assemble / certified equivalence
# ---------------------------------------------------------------------------


@dataclass
class SplitData:
    """One Weyl-group module per conjugacy class representative."""

    lattice: SubgroupLattice
    modules: dict  # class rep id -> WModule

    def total_dims(self) -> dict:
        return {h: m.dim for h, m in self.modules.items()}


def split(M: MackeyFunctor) -> SplitData:
    lat = M.lattice
    modules = {}
    for h in lat.class_reps():
        modules[h], _ = u_module(M, h)
    return SplitData(lat, modules)


def assemble(S: SplitData, name: str | None = None) -> MackeyFunctor:
    return _assemble_blocks(S, name=name)[0]


def _assemble_blocks(S: SplitData, name: str | None = None):
    lat = S.lattice
    total = None
    blocks = []
    for h in lat.class_reps():
        V = S.modules.get(h)
        if V is None or V.dim == 0:
            continue
        block = build_free_block(lat, h, V)
        blocks.append(block)
        total = block.functor if total is None else direct_sum(total, block.functor)
    if total is None:
        total = zero_functor(lat)
    total.name = name or "assembled"
    return total, blocks


def classify_iso(M: MackeyFunctor) -> MackeyMorphism:
    """The certified isomorphism from M onto the direct sum of its free pieces.

    Stacks the comparison morphisms classwise, validates the result as a
    morphism, and certifies exact invertibility at every level.  Failure of
    any of these is a hard error: it would contradict the splitting theorem.
    """
    lat = M.lattice
    comparisons = []
    target = None
    for h in lat.class_reps():
        block, mor = comparison_block(M, h)
        if block.module.dim == 0:
            continue
        comparisons.append(mor)
        target = block.functor if target is None else direct_sum(target, block.functor)
    if target is None:
        target = zero_functor(lat)
        iso = MackeyMorphism(M, target, tuple(QMatrix.zeros(0, d) for d in M.dims))
    else:
        maps = []
        for k in range(len(lat)):
            maps.append(vstack(*[mor.maps[k] for mor in comparisons]))
        iso = MackeyMorphism(M, target, tuple(maps))
    for k in range(len(lat)):
        m = iso.maps[k]
        if m.rows != m.cols or not m.is_invertible():
            raise MackeyError(
                f"comparison morphism fails to be invertible at level {lat.name(k)}"
            )
    return iso


def certify_iso(M1: MackeyFunctor, M2: MackeyFunctor) -> MackeyMorphism | None:
    """An explicit certified isomorphism between two functors, or None.

    Splits both sides, finds Weyl-equivariant intertwiners classwise, lifts
    them through the free construction and conjugates by the two comparison
    isomorphisms.
    """
    if M1.lattice is not M2.lattice:
        raise MackeyError("functors live over different lattices")
    lat = M1.lattice
    blocks1, blocks2, mors1, mors2, lifts = [], [], [], [], []
    for h in lat.class_reps():
        b1, m1 = comparison_block(M1, h)
        b2, m2 = comparison_block(M2, h)
        if b1.module.dim != b2.module.dim:
            return None
        if b1.module.dim == 0:
            continue
        phi = intertwiner(b1.module, b2.module)
        if phi is None:
            return None
        blocks1.append(b1)
        blocks2.append(b2)
        mors1.append(m1)
        mors2.append(m2)
        lifts.append(phi)
    maps = []
    for k in range(len(lat)):
        # block diagonal lift of the intertwiners at this level
        lift_k = None
        for b1, b2, phi in zip(blocks1, blocks2, lifts):
            X = b1.cosets[k]
            amb = tensor(QMatrix.identity(len(X)), phi)
            r = restrict_map(amb, b1.bases[k], b2.bases[k])
            lift_k = r if lift_k is None else mat_direct_sum(lift_k, r)
        if lift_k is None:
            lift_k = QMatrix.zeros(0, 0)
        a1 = vstack(*[m.maps[k] for m in mors1]) if mors1 else QMatrix.zeros(0, M1.dims[k])
        a2 = vstack(*[m.maps[k] for m in mors2]) if mors2 else QMatrix.zeros(0, M2.dims[k])
        if a1.rows != a1.cols or not a1.is_invertible():
            return None
        if a2.rows != a2.cols or not a2.is_invertible():
            return None
        maps.append(a2.inverse().matmul(lift_k).matmul(a1))
    iso = MackeyMorphism(M1, M2, tuple(maps))
    iso.validate()
    if not iso.is_levelwise_iso():
        return None
    return iso


# ---------------------------------------------------------------------------
# the diagonal decomposition
# ---------------------------------------------------------------------------


@dataclass
class DiagonalReport:
    """Both sides of the levelwise decomposition identity and the connecting map."""

    dim_upper: int  # image of the class-K idempotent of A_Q(H) on M(G/H)
    dim_fixed: int  # Weyl-fixed part of the class-K idempotent piece of M(G/K)
    matrix: QMatrix  # induced by restriction, in the chosen bases
    ok: bool


def diagonal_check(M: MackeyFunctor, k: int, h: int) -> DiagonalReport:
    """Verify e_K^H M(G/H) ~ (e_K^K M(G/K))^{W_H K} via the restriction map."""
    lat = M.lattice
    if not lat.leq(k, h):
        raise MackeyError("diagonal check needs K <= H")
    cache = getattr(M, "_diag_cache", None)
    if cache is None:
        cache = M._diag_cache = {}
    ring_h = burnside_ring(lat, h)
    P_h = burnside_action(M, h, ring_h.idempotent(k))
    upper = P_h.image()
    if k in cache:
        lower = cache[k]
    else:
        ring_k = burnside_ring(lat, k)
        P_k = burnside_action(M, k, ring_k.idempotent(k))
        lower = cache[k] = P_k.image()
    # Weyl group of K inside H acting on the local piece at K
    nhk = lat.normalizer_in(k, h)
    if lower.cols:
        constraints = []
        eye = QMatrix.identity(lower.cols)
        for n in lat.elements(nhk):
            if n == lat.group.identity:
                continue
            act = restrict_map(M.conj(n, k), lower, lower)
            constraints.append(act - eye)
        fixed_coords = vstack(*constraints).kernel() if constraints else eye
    else:
        fixed_coords = QMatrix.zeros(0, 0)
    fixed = lower.matmul(fixed_coords)
    try:
        mat = restrict_map(M.res[(h, k)], upper, fixed)
    except Exception:
        return DiagonalReport(upper.cols, fixed.cols, QMatrix.zeros(fixed.cols, upper.cols), False)
    ok = upper.cols == fixed.cols and (upper.cols == 0 or mat.is_invertible())
    return DiagonalReport(upper.cols, fixed.cols, mat, ok)


def free_functor_idempotent_rank(lattice: SubgroupLattice, a: int, b: int, c: int, V: WModule) -> int:
    """The rank of the class-C idempotent of A_Q(B) acting on F_A(V)(G/B)."""
    F = free_functor(lattice, a, V)
    ring_b = burnside_ring(lattice, b)
    P = burnside_action(F, b, ring_b.idempotent(c))
    return P.rank()


def free_functor_idempotent_check(lattice: SubgroupLattice, a: int, b: int, c: int, V: WModule) -> bool:
    """Exact rank-zero check: the piece vanishes unless A and C are conjugate."""
    if lattice.class_of[a] == lattice.class_of[c]:
        return True
    return free_functor_idempotent_rank(lattice, a, b, c, V) == 0


# ---------------------------------------------------------------------------
# random functors for round-trip testing
# ---------------------------------------------------------------------------


def random_wmodule(W, rng: random.Random) -> WModule:
    """A small exact W-module: trivial, regular, or a coset permutation module."""
    from .groups import coset_gset

    roll = rng.random()
    if roll < 0.35:
        return WModule.trivial(W, 1)
    if roll < 0.55 and W.order <= 6:
        return WModule.regular(W)
    seeds = [rng.randrange(W.order) for _ in range(rng.randint(1, 2))]
    sub = W.closure(seeds)
    return WModule.from_gset(W, coset_gset(W, sub))


def random_split_data(lattice: SubgroupLattice, rng: random.Random, max_level_dim: int = 4) -> SplitData:
    """Random class modules whose assembled functor stays within the level cap."""
    reps = lattice.class_reps()
    for _ in range(200):
        count = rng.randint(1, min(3, len(reps)))
        chosen = rng.sample(reps, count)
        modules = {}
        level_dims = [0] * len(lattice)
        ok = True
        for h in chosen:
            W = lattice.weyl(h).group
            V = random_wmodule(W, rng)
            dims = free_level_dims(lattice, h, V)
            for k, d in enumerate(dims):
                level_dims[k] += d
            if max(level_dims) > max_level_dim:
                ok = False
                break
            modules[h] = V
        if ok and any(v.dim for v in modules.values()):
            return SplitData(lattice, modules)
    raise MackeyError("could not sample a functor within the level cap")


def random_invertible(dim: int, rng: random.Random) -> QMatrix:
    if dim == 0:
        return QMatrix.identity(0)
    lower = [[Fraction(1 if i == j else (rng.randint(-2, 2) if i > j else 0)) for j in range(dim)] for i in range(dim)]
    upper = [[Fraction(1 if i == j else (rng.randint(-2, 2) if i < j else 0)) for j in range(dim)] for i in range(dim)]
    return QMatrix(lower).matmul(QMatrix(upper))


def random_functor(lattice: SubgroupLattice, rng: random.Random, max_level_dim: int = 4) -> MackeyFunctor:
    """Assemble random split data, then scramble every level by a basis change."""
    S = random_split_data(lattice, rng, max_level_dim)
    M = assemble(S, name="random")
    mats = [random_invertible(d, rng) for d in M.dims]
    return basis_change(M, mats, name="random")

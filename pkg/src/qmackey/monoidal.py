"""The box product of Mackey functors and Green-functor verification.

The level at H of a box product is a quotient of the direct sum over K <= H
of the levelwise tensor products: Frobenius-style relations identify
restriction against induction in both variables, and a conjugation family
balances C_h in one factor against its inverse in the other, generated for
every h in H and every K <= H.  All generators are materialized and the
quotient is taken exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .burnside import burnside_ring
from .classify import u_module
from .groups import SubgroupLattice
from .linalg import QMatrix, quotient_space, tensor
from .mackey import (
    MackeyError,
    MackeyFunctor,
    MackeyMorphism,
    burnside_action,
    burnside_mackey,
    idempotent_part,
)


@dataclass
class _BoxLevel:
    summands: tuple  # subgroup ids K <= H in lattice order
    offsets: dict  # id -> column offset into T(H)
    t_dim: int
    proj: QMatrix
    section: QMatrix


def _tensor_column(xs, ys):
    return [a * b for a in xs for b in ys]


class _BoxBuilder:
    def __init__(self, M: MackeyFunctor, N: MackeyFunctor):
        self.M, self.N = M, N
        self.lat = M.lattice
        self.G = self.lat.group
        self.levels: list[_BoxLevel] = [self._build_level(h) for h in range(len(self.lat))]

    def _pair_dim(self, k):
        return self.M.dims[k] * self.N.dims[k]

    def _build_level(self, h) -> _BoxLevel:
        lat, M, N = self.lat, self.M, self.N
        summands = lat.subgroups_of(h)
        offsets, t_dim = {}, 0
        for k in summands:
            offsets[k] = t_dim
            t_dim += self._pair_dim(k)
        rel_cols = []

        def emit(pairs):
            col = [Fraction(0)] * t_dim
            for k, vec in pairs:
                off = offsets[k]
                for i, v in enumerate(vec):
                    col[off + i] += v
            rel_cols.append(col)

        for k in summands:
            for l in lat.subgroups_of(k):
                if l == k:
                    continue
                res_m = M.res[(k, l)]
                ind_n = N.ind[(k, l)]
                for i in range(M.dims[k]):
                    rx = res_m.col(i)
                    for j in range(N.dims[l]):
                        ind_y = ind_n.col(j)
                        ey = [Fraction(1 if t == j else 0) for t in range(N.dims[l])]
                        ex = [Fraction(1 if t == i else 0) for t in range(M.dims[k])]
                        emit([(l, _tensor_column(rx, ey)), (k, [-v for v in _tensor_column(ex, ind_y)])])
                res_n = N.res[(k, l)]
                ind_m = M.ind[(k, l)]
                for i in range(M.dims[l]):
                    ind_x = ind_m.col(i)
                    ex = [Fraction(1 if t == i else 0) for t in range(M.dims[l])]
                    for j in range(N.dims[k]):
                        ry = res_n.col(j)
                        ey = [Fraction(1 if t == j else 0) for t in range(N.dims[k])]
                        emit([(l, _tensor_column(ex, ry)), (k, [-v for v in _tensor_column(ind_x, ey)])])
        for x in lat.elements(h):
            if x == self.G.identity:
                continue
            xi = self.G.inv(x)
            for k in summands:
                kx = lat.conjugate(x, k)
                cm = self.M.conj(x, k)  # M(G/K) -> M(G/xKx^-1)
                cn = self.N.conj(xi, kx)  # N(G/xKx^-1) -> N(G/K)
                for i in range(M.dims[k]):
                    cx = cm.col(i)
                    ex = [Fraction(1 if t == i else 0) for t in range(M.dims[k])]
                    for j in range(N.dims[kx]):
                        cy = cn.col(j)
                        ey = [Fraction(1 if t == j else 0) for t in range(N.dims[kx])]
                        emit([(kx, _tensor_column(cx, ey)), (k, [-v for v in _tensor_column(ex, cy)])])
        rel = (
            QMatrix.from_cols(rel_cols, rows=t_dim) if rel_cols else QMatrix.zeros(t_dim, 0)
        )
        proj, section = quotient_space(t_dim, rel)
        return _BoxLevel(summands, offsets, t_dim, proj, section)

    def t_block_map(self, src_level, dst_level, block_fn) -> QMatrix:
        """A map T(src) -> T(dst) given blockwise on summands.

        ``block_fn(k)`` returns a list of (target summand, M-map, N-map) triples.
        """
        src, dst = self.levels[src_level], self.levels[dst_level]
        out = [[Fraction(0)] * src.t_dim for _ in range(dst.t_dim)]
        for k in src.summands:
            dm, dn = self.M.dims[k], self.N.dims[k]
            if dm * dn == 0:
                continue
            for tgt, mmap, nmap in block_fn(k):
                block = tensor(mmap, nmap)
                ro, co = dst.offsets[tgt], src.offsets[k]
                for r in range(block.rows):
                    row = block.data[r]
                    orow = out[ro + r]
                    for c in range(block.cols):
                        if row[c]:
                            orow[co + c] += row[c]
        return QMatrix(out, rows=dst.t_dim, cols=src.t_dim)


def box(M: MackeyFunctor, N: MackeyFunctor, name: str | None = None) -> MackeyFunctor:
    """The box product, with its induced restriction, induction and conjugation."""
    if M.lattice is not N.lattice:
        raise MackeyError("box product needs a common lattice")
    lat = M.lattice
    G = lat.group
    builder = _BoxBuilder(M, N)
    levels = builder.levels
    dims = tuple(level.proj.rows for level in levels)

    res, ind = {}, {}
    for h in range(len(lat)):
        for k in lat.subgroups_of(h):
            # induction: include the smaller sum of summands, then project
            incl = builder.t_block_map(
                k, h, lambda s: [(s, QMatrix.identity(M.dims[s]), QMatrix.identity(N.dims[s]))]
            )
            ind[(h, k)] = levels[h].proj.matmul(incl).matmul(levels[k].section)

            def res_blocks(s, k=k):
                out = []
                for l in lat.double_cosets(k, s, h):
                    sl = lat.conjugate(l, s)
                    meet = lat.meet(k, sl)
                    mm = M.res[(sl, meet)].matmul(M.conj(l, s))
                    nn = N.res[(sl, meet)].matmul(N.conj(l, s))
                    out.append((meet, mm, nn))
                return out

            down = builder.t_block_map(h, k, res_blocks)
            res[(h, k)] = levels[k].proj.matmul(down).matmul(levels[h].section)

    cgen = {}
    for pos, s in enumerate(G.gens):
        for h in range(len(lat)):
            hs = lat.conjugate(s, h)

            def conj_blocks(k, pos=pos, s=s):
                return [(lat.conjugate(s, k), M.conj(s, k), N.conj(s, k))]

            mat = builder.t_block_map(h, hs, conj_blocks)
            cgen[(pos, h)] = levels[hs].proj.matmul(mat).matmul(levels[h].section)

    out = MackeyFunctor(lat, dims, res, ind, cgen, name=name or f"{M.name}[]{N.name}")
    out._box_builder = builder
    return out


def box_swap_iso(M: MackeyFunctor, N: MackeyFunctor) -> MackeyMorphism:
    """The symmetry of the box product, certified."""
    MN = box(M, N)
    NM = box(N, M)
    lat = M.lattice
    maps = []
    for h in range(len(lat)):
        lvl_src = MN._box_builder.levels[h]
        lvl_dst = NM._box_builder.levels[h]
        out = [[Fraction(0)] * lvl_src.t_dim for _ in range(lvl_dst.t_dim)]
        for k in lvl_src.summands:
            dm, dn = M.dims[k], N.dims[k]
            for i in range(dm):
                for j in range(dn):
                    out[lvl_dst.offsets[k] + j * dm + i][lvl_src.offsets[k] + i * dn + j] = Fraction(1)
        swap = QMatrix(out, rows=lvl_dst.t_dim, cols=lvl_src.t_dim)
        maps.append(lvl_dst.proj.matmul(swap).matmul(lvl_src.section))
    iso = MackeyMorphism(MN, NM, tuple(maps))
    iso.validate()
    if not iso.is_levelwise_iso():
        raise MackeyError("box symmetry failed to invert")
    return iso


def box_morphism(f: MackeyMorphism, g: MackeyMorphism, src: MackeyFunctor, dst: MackeyFunctor) -> MackeyMorphism:
    """Functoriality: apply f (x) g summandwise between prebuilt box products."""
    lat = src.lattice
    maps = []
    for h in range(len(lat)):
        lvl_src = src._box_builder.levels[h]
        lvl_dst = dst._box_builder.levels[h]
        out = [[Fraction(0)] * lvl_src.t_dim for _ in range(lvl_dst.t_dim)]
        for k in lvl_src.summands:
            block = tensor(f.maps[k], g.maps[k])
            ro, co = lvl_dst.offsets[k], lvl_src.offsets[k]
            for r in range(block.rows):
                for c in range(block.cols):
                    if block.data[r][c]:
                        out[ro + r][co + c] = block.data[r][c]
        big = QMatrix(out, rows=lvl_dst.t_dim, cols=lvl_src.t_dim)
        maps.append(lvl_dst.proj.matmul(big).matmul(lvl_src.section))
    return MackeyMorphism(src, dst, tuple(maps))


def box_unit_iso(M: MackeyFunctor) -> MackeyMorphism:
    """The certified isomorphism from box(A, M) onto M, A the Burnside functor.

    The map sends a summand element a (x) m at K to the induction of a acting
    on m; the relation generators are verified to die under it before the
    quotient is inverted.
    """
    lat = M.lattice
    A = burnside_mackey(lat)
    B = box(A, M)
    builder = B._box_builder
    maps = []
    for h in range(len(lat)):
        lvl = builder.levels[h]
        cols = []
        for k in lvl.summands:
            ring_k = burnside_ring(lat, k)
            for ci in range(ring_k.size):
                act = burnside_action(M, k, ring_k.basis(ring_k.reps[ci]))
                through = M.ind[(h, k)].matmul(act)
                for j in range(M.dims[k]):
                    cols.append(through.col(j))
        big = (
            QMatrix.from_cols(cols, rows=M.dims[h]) if cols else QMatrix.zeros(M.dims[h], 0)
        )
        # the map must kill every relation before it can descend
        kernel_probe = big.matmul(lvl.section.matmul(lvl.proj)) - big
        if not kernel_probe.is_zero():
            raise MackeyError("unit map does not descend to the box quotient")
        maps.append(big.matmul(lvl.section))
    iso = MackeyMorphism(B, M, tuple(maps))
    iso.validate()
    if not iso.is_levelwise_iso():
        raise MackeyError("box unit map failed to invert")
    return iso


@dataclass
class BoxIdempotentReport:
    dims_local_box: tuple
    dims_box_local: tuple
    tensor_dim_at_h: int
    value_dim_at_h: int
    ok: bool


def box_idempotent_check(M: MackeyFunctor, N: MackeyFunctor, h: int) -> BoxIdempotentReport:
    """Compare the local piece of a box product with the box of local pieces.

    Checks levelwise dimensions, certifies the induced map, and confirms the
    value at G/H is the plain tensor product of the two local values.
    """
    lat = M.lattice
    ring = burnside_ring(lat)
    e = ring.idempotent(h)
    B = box(M, N)
    eB, incl_b = idempotent_part(B, e, with_inclusion=True)
    eM, incl_m = idempotent_part(M, e, with_inclusion=True)
    eN, incl_n = idempotent_part(N, e, with_inclusion=True)
    B2 = box(eM, eN)
    tensor_dim = eM.dims[h] * eN.dims[h]
    ok = eB.dims == B2.dims and B2.dims[h] == tensor_dim
    if ok:
        into_box = box_morphism(incl_m, incl_n, B2, B)
        # project onto the idempotent part of the big box
        maps = []
        for k in range(len(lat)):
            P = burnside_action(B, k, ring.restrict(e, k))
            coords = incl_b.maps[k].solve(P.matmul(into_box.maps[k]))
            if coords is None:
                ok = False
                break
            maps.append(coords)
        if ok:
            psi = MackeyMorphism(B2, eB, tuple(maps))
            psi.validate()
            ok = psi.is_levelwise_iso()
    return BoxIdempotentReport(tuple(eB.dims), tuple(B2.dims), tensor_dim, B2.dims[h], ok)


def u_monoidal_dims_ok(M: MackeyFunctor, N: MackeyFunctor) -> bool:
    """Dimension part of strong monoidality of the class evaluations."""
    B = box(M, N)
    lat = M.lattice
    for h in lat.class_reps():
        um, _ = u_module(M, h)
        un, _ = u_module(N, h)
        ub, _ = u_module(B, h)
        if ub.dim != um.dim * un.dim:
            return False
    return True


def u_monoidal_certificate(M: MackeyFunctor, N: MackeyFunctor, h: int, B: MackeyFunctor | None = None) -> bool:
    """Full strong-monoidality check at one class: an explicit Weyl-equivariant
    isomorphism from the tensor of the local pieces onto the local piece of
    the box product."""
    lat = M.lattice
    if B is None:
        B = box(M, N)
    UM, BM = u_module(M, h)
    UN, BN = u_module(N, h)
    UB, BB = u_module(B, h)
    if UB.dim != UM.dim * UN.dim:
        return False
    if UB.dim == 0:
        return True
    lvl = B._box_builder.levels[h]
    pair = tensor(BM, BN)  # columns span the tensor of the two local pieces
    off = lvl.offsets[h]
    emb_rows = []
    for r in range(lvl.t_dim):
        if off <= r < off + pair.rows:
            emb_rows.append(list(pair.data[r - off]))
        else:
            emb_rows.append([Fraction(0)] * pair.cols)
    via = lvl.proj.matmul(QMatrix(emb_rows, rows=lvl.t_dim, cols=pair.cols))
    ring_h = burnside_ring(lat, h)
    P = burnside_action(B, h, ring_h.idempotent(h))
    candidate = BB.solve(P.matmul(via))
    if candidate is None or not candidate.is_invertible():
        return False
    w = lat.weyl(h)
    for pos, s in enumerate(w.group.gens):
        lhs = candidate.matmul(tensor(UM.gen_matrices[pos], UN.gen_matrices[pos]))
        if lhs != UB.gen_matrices[pos].matmul(candidate):
            return False
    return True


# ---------------------------------------------------------------------------
# Green functors
# ---------------------------------------------------------------------------


@dataclass
class GreenStructure:
    """A Mackey functor with levelwise multiplications and units."""

    base: MackeyFunctor
    mult: dict  # h -> QMatrix, M(G/H) (x) M(G/H) -> M(G/H)
    unit: dict  # h -> QMatrix column


@dataclass
class GreenReport:
    ok: bool
    commutative: bool
    violations: list

    def rules_violated(self) -> set:
        return {name for name, _ in self.violations}


def green_check(S: GreenStructure) -> GreenReport:
    """Exact verification of algebra, homomorphism and Frobenius conditions.

    All identities are checked bilinearly on basis vectors, which keeps the
    cost at a few vector operations per basis pair instead of Kronecker-sized
    matrix products.
    """
    M = S.base
    lat = M.lattice
    G = lat.group
    violations = []
    commutative = True

    def prod(h, u, v):
        # bilinear product of two coordinate vectors at level h
        d = M.dims[h]
        out = [Fraction(0)] * d
        mult = S.mult[h]
        for a, ua in enumerate(u):
            if ua == 0:
                continue
            for b, vb in enumerate(v):
                if vb == 0:
                    continue
                col = mult.col(a * d + b)
                for t in range(d):
                    if col[t]:
                        out[t] += ua * vb * col[t]
        return tuple(out)

    def basis(d, i):
        return tuple(Fraction(1 if t == i else 0) for t in range(d))

    for h in range(len(lat)):
        d = M.dims[h]
        mult, unit = S.mult[h], S.unit[h]
        if (mult.rows, mult.cols) != (d, d * d) or (unit.rows, unit.cols) != (d, 1):
            violations.append(("shape", lat.name(h)))
            continue
        ucol = unit.col(0)
        assoc_ok = True
        for i in range(d):
            ei = basis(d, i)
            if prod(h, ucol, ei) != ei or prod(h, ei, ucol) != ei:
                violations.append(("unit", lat.name(h)))
                break
        for i in range(d):
            if not assoc_ok:
                break
            ei = basis(d, i)
            for j in range(d):
                ej = basis(d, j)
                ij = prod(h, ei, ej)
                if prod(h, ej, ei) != ij:
                    commutative = False
                for l in range(d):
                    el = basis(d, l)
                    if prod(h, ij, el) != prod(h, ei, prod(h, ej, el)):
                        violations.append(("associativity", lat.name(h)))
                        assoc_ok = False
                        break
                if not assoc_ok:
                    break
    if any(name == "shape" for name, _ in violations):
        return GreenReport(False, commutative, violations)
    for h in range(len(lat)):
        dh = M.dims[h]
        for k in lat.subgroups_of(h):
            if k == h:
                continue
            dk = M.dims[k]
            r = M.res[(h, k)]
            ind = M.ind[(h, k)]
            if tuple(r.matmul(S.unit[h]).col(0)) != tuple(S.unit[k].col(0)):
                violations.append(("restriction-unit", f"{lat.name(h)} > {lat.name(k)}"))
            res_hom = True
            for i in range(dh):
                ei = basis(dh, i)
                ri = r.col(i)
                for j in range(dh):
                    lhs = tuple(r.matmul(QMatrix.column(prod(h, ei, basis(dh, j)))).col(0))
                    if lhs != prod(k, ri, r.col(j)):
                        violations.append(("restriction-homomorphism", f"{lat.name(h)} > {lat.name(k)}"))
                        res_hom = False
                        break
                if not res_hom:
                    break
            frob_l = frob_r = True
            for x in range(dh):
                ex = basis(dh, x)
                rx = r.col(x)
                for y in range(dk):
                    iy = ind.col(y)
                    if frob_l:
                        lhs = prod(h, ex, iy)
                        rhs = tuple(ind.matmul(QMatrix.column(prod(k, rx, basis(dk, y)))).col(0))
                        if lhs != rhs:
                            violations.append(("frobenius-left", f"{lat.name(k)} < {lat.name(h)}"))
                            frob_l = False
                    if frob_r:
                        lhs = prod(h, iy, ex)
                        rhs = tuple(ind.matmul(QMatrix.column(prod(k, basis(dk, y), rx))).col(0))
                        if lhs != rhs:
                            violations.append(("frobenius-right", f"{lat.name(k)} < {lat.name(h)}"))
                            frob_r = False
                if not (frob_l or frob_r):
                    break
    for pos, s in enumerate(G.gens):
        for h in range(len(lat)):
            t = lat.conjugate(s, h)
            c = M.cgen[(pos, h)]
            d = M.dims[h]
            if tuple(c.matmul(S.unit[h]).col(0)) != tuple(S.unit[t].col(0)):
                violations.append(("conjugation-unit", f"{G.elem_name(s)}@{lat.name(h)}"))
            conj_ok = True
            for i in range(d):
                ci = c.col(i)
                for j in range(d):
                    lhs = tuple(c.matmul(QMatrix.column(prod(h, basis(d, i), basis(d, j)))).col(0))
                    if lhs != prod(t, ci, c.col(j)):
                        violations.append(("conjugation-homomorphism", f"{G.elem_name(s)}@{lat.name(h)}"))
                        conj_ok = False
                        break
                if not conj_ok:
                    break
    return GreenReport(not violations, commutative, violations)


def burnside_green(lattice: SubgroupLattice) -> GreenStructure:
    """The Burnside functor with its ring multiplications levelwise."""
    M = burnside_mackey(lattice)
    mult, unit = {}, {}
    for h in range(len(lattice)):
        ring = burnside_ring(lattice, h)
        n = ring.size
        cols = []
        for i in range(n):
            for j in range(n):
                cols.append(ring._mul_basis(i, j))
        mult[h] = QMatrix.from_cols(cols, rows=n)
        unit[h] = QMatrix.from_cols([ring.unit().coeffs], rows=n)
    return GreenStructure(M, mult, unit)


def constant_green(lattice: SubgroupLattice) -> GreenStructure:
    """The constant functor on the rationals with plain multiplication."""
    from .mackey import constant

    M = constant(lattice, 1)
    mult = {h: QMatrix.identity(1) for h in range(len(lattice))}
    unit = {h: QMatrix.identity(1) for h in range(len(lattice))}
    return GreenStructure(M, mult, unit)

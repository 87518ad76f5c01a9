"""Rational Mackey functors: data model, axiom checker, standard constructions,
the Burnside-ring action, and the change-of-group functors.

A Mackey functor here stores one exact-rational vector space per subgroup
(every subgroup, not just class representatives), restriction and induction
matrices for every comparable pair, and conjugation matrices for the group's
generators; conjugation by an arbitrary element is assembled from the word
decomposition recorded in the group.  Redundant storage is deliberate: the
axiom checker verifies transitivity instead of defining maps by it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .burnside import BurnsideElement, burnside_ring
from .groups import GMap, GSet, SubgroupLattice, coset_gset, restrict_gset
from .linalg import (
    QMatrix,
    WModule,
    averaging_projector,
    direct_sum as mat_direct_sum,
    fixed_subspace,
    quotient_space,
    restrict_map,
    vstack,
)


class MackeyError(ValueError):
    pass


@dataclass
class MackeyFunctor:
    """Levels, restrictions, inductions and generator conjugations over a lattice."""

    lattice: SubgroupLattice
    dims: tuple[int, ...]
    res: dict  # (h, k) -> QMatrix, M(G/H) -> M(G/K), for K <= H
    ind: dict  # (h, k) -> QMatrix, M(G/K) -> M(G/H), for K <= H
    cgen: dict  # (gen position, h) -> QMatrix, M(G/H) -> M(G/sHs^-1)
    name: str = "M"
    _conj_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _action_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def group(self):
        return self.lattice.group

    def level_dim(self, h: int) -> int:
        return self.dims[h]

    def restriction(self, h: int, k: int) -> QMatrix:
        return self.res[(h, k)]

    def induction(self, h: int, k: int) -> QMatrix:
        return self.ind[(h, k)]

    def conj(self, g: int, h: int) -> QMatrix:
        """Conjugation by an arbitrary group element, assembled from generators."""
        key = (g, h)
        if key not in self._conj_cache:
            level = h
            mat = QMatrix.identity(self.dims[h])
            for pos in reversed(self.group.word(g)):
                mat = self.cgen[(pos, level)].matmul(mat)
                level = self.lattice.conjugate(self.group.gens[pos], level)
            self._conj_cache[key] = mat
        return self._conj_cache[key]

    def total_dim(self) -> int:
        return sum(self.dims)

    def __repr__(self) -> str:
        return f"MackeyFunctor({self.name} over {self.group.name}, dims={self.dims})"


def comparable_pairs(lattice: SubgroupLattice):
    for h in range(len(lattice)):
        for k in lattice.subgroups_of(h):
            yield (h, k)


def build_functor(lattice, dims, resfn, indfn, conjfn, name="M") -> MackeyFunctor:
    """Assemble a functor from per-pair map constructors."""
    dims = tuple(dims)
    res, ind, cgen = {}, {}, {}
    for h, k in comparable_pairs(lattice):
        res[(h, k)] = resfn(h, k)
        ind[(h, k)] = indfn(h, k)
    for pos, s in enumerate(lattice.group.gens):
        for h in range(len(lattice)):
            cgen[(pos, h)] = conjfn(pos, s, h)
    return MackeyFunctor(lattice, dims, res, ind, cgen, name=name)


# ---------------------------------------------------------------------------
# the axiom checker
# ---------------------------------------------------------------------------


@dataclass
class AxiomViolation:
    axiom: str
    detail: str

    def __str__(self):
        return f"[{self.axiom}] {self.detail}"


@dataclass
class AxiomReport:
    ok: bool
    violations: list

    def axioms_violated(self) -> set:
        return {v.axiom for v in self.violations}

    def __str__(self):
        if self.ok:
            return "all axioms hold"
        return "\n".join(str(v) for v in self.violations)


def check_axioms(M: MackeyFunctor, fail_fast: bool = False) -> AxiomReport:
    """Exhaustive exact verification of the four axioms plus shape consistency."""
    lat = M.lattice
    G = M.group
    out: list[AxiomViolation] = []

    def bad(axiom, detail):
        out.append(AxiomViolation(axiom, detail))
        return fail_fast

    def nm(h):
        return lat.name(h)

    # shapes
    for (h, k), mat in M.res.items():
        if (mat.rows, mat.cols) != (M.dims[k], M.dims[h]):
            if bad("shape", f"restriction {nm(h)}>{nm(k)} has shape {mat.rows}x{mat.cols}"):
                return AxiomReport(False, out)
    for (h, k), mat in M.ind.items():
        if (mat.rows, mat.cols) != (M.dims[h], M.dims[k]):
            if bad("shape", f"induction {nm(k)}<{nm(h)} has shape {mat.rows}x{mat.cols}"):
                return AxiomReport(False, out)
    for (pos, h), mat in M.cgen.items():
        t = lat.conjugate(G.gens[pos], h)
        if (mat.rows, mat.cols) != (M.dims[t], M.dims[h]):
            if bad("shape", f"conjugation {G.elem_name(G.gens[pos])}@{nm(h)} has wrong shape"):
                return AxiomReport(False, out)
    if out:
        # nothing downstream is well-posed with mismatched shapes
        return AxiomReport(False, out)

    # axiom 1: R^H_H = I^H_H = id, C_h = id on M(G/H) for h in H
    for h in range(len(lat)):
        eye = QMatrix.identity(M.dims[h])
        if M.res[(h, h)] != eye:
            if bad("identity-restriction", f"R at {nm(h)} is not the identity"):
                return AxiomReport(False, out)
        if M.ind[(h, h)] != eye:
            if bad("identity-induction", f"I at {nm(h)} is not the identity"):
                return AxiomReport(False, out)
        for x in lat.elements(h):
            if M.conj(x, h) != eye:
                if bad("inner-conjugation", f"C_{G.elem_name(x)} is not the identity on level {nm(h)}"):
                    return AxiomReport(False, out)
                break

    # axiom 2: transitivity of R and I, multiplicativity of C
    for h in range(len(lat)):
        for k in lat.subgroups_of(h):
            if k == h:
                continue
            for l in lat.subgroups_of(k):
                if l == k:
                    continue
                if M.res[(h, l)] != M.res[(k, l)].matmul(M.res[(h, k)]):
                    if bad("restriction-transitivity", f"{nm(h)} > {nm(k)} > {nm(l)}"):
                        return AxiomReport(False, out)
                if M.ind[(h, l)] != M.ind[(h, k)].matmul(M.ind[(k, l)]):
                    if bad("induction-transitivity", f"{nm(l)} < {nm(k)} < {nm(h)}"):
                        return AxiomReport(False, out)
    for h in range(len(lat)):
        for g in range(G.order):
            cg = M.conj(g, h)
            gh = lat.conjugate(g, h)
            for pos, s in enumerate(G.gens):
                lhs = M.conj(G.mul(s, g), h)
                rhs = M.cgen[(pos, gh)].matmul(cg)
                if lhs != rhs:
                    if bad(
                        "conjugation-multiplicativity",
                        f"C_({G.elem_name(s)}*{G.elem_name(g)}) != C_{G.elem_name(s)} C_{G.elem_name(g)} at {nm(h)}",
                    ):
                        return AxiomReport(False, out)

    # axiom 3: equivariance of R and I (generators suffice given axiom 2)
    for pos, s in enumerate(G.gens):
        for h, k in comparable_pairs(lat):
            hs, ks = lat.conjugate(s, h), lat.conjugate(s, k)
            if M.res[(hs, ks)].matmul(M.cgen[(pos, h)]) != M.cgen[(pos, k)].matmul(M.res[(h, k)]):
                if bad("restriction-equivariance", f"conjugating {nm(h)} > {nm(k)} by {G.elem_name(s)}"):
                    return AxiomReport(False, out)
            if M.ind[(hs, ks)].matmul(M.cgen[(pos, k)]) != M.cgen[(pos, h)].matmul(M.ind[(h, k)]):
                if bad("induction-equivariance", f"conjugating {nm(k)} < {nm(h)} by {G.elem_name(s)}"):
                    return AxiomReport(False, out)

    # axiom 4: the double-coset (Mackey) formula
    for h in range(len(lat)):
        for k in lat.subgroups_of(h):
            for l in lat.subgroups_of(h):
                lhs = M.res[(h, k)].matmul(M.ind[(h, l)])
                rhs = QMatrix.zeros(M.dims[k], M.dims[l])
                for x in lat.double_cosets(k, l, h):
                    xl = lat.conjugate(x, l)
                    upper = lat.meet(k, xl)  # K n xLx^-1
                    lower = lat.conjugate(G.inv(x), upper)  # L n x^-1Kx
                    term = M.ind[(k, upper)].matmul(M.conj(x, lower)).matmul(M.res[(l, lower)])
                    rhs = rhs + term
                if lhs != rhs:
                    if bad("double-coset", f"R^{nm(h)}_{nm(k)} I^{nm(h)}_{nm(l)} mismatch"):
                        return AxiomReport(False, out)

    return AxiomReport(not out, out)


# ---------------------------------------------------------------------------
# standard constructions
# ---------------------------------------------------------------------------


def zero_functor(lattice: SubgroupLattice) -> MackeyFunctor:
    return constant(lattice, 0, name="0")


def constant(lattice: SubgroupLattice, dim: int = 1, name: str | None = None) -> MackeyFunctor:
    """Identity restrictions; induction multiplies by the subgroup index."""
    eye = QMatrix.identity(dim)
    return build_functor(
        lattice,
        [dim] * len(lattice),
        lambda h, k: eye,
        lambda h, k: QMatrix.scalar(dim, lattice.index(k, h)),
        lambda pos, s, h: eye,
        name=name or f"const({dim})",
    )


def coconstant(lattice: SubgroupLattice, dim: int = 1, name: str | None = None) -> MackeyFunctor:
    """Identity inductions; restriction multiplies by the subgroup index."""
    eye = QMatrix.identity(dim)
    return build_functor(
        lattice,
        [dim] * len(lattice),
        lambda h, k: QMatrix.scalar(dim, lattice.index(k, h)),
        lambda h, k: eye,
        lambda pos, s, h: eye,
        name=name or f"coconst({dim})",
    )


def dual(M: MackeyFunctor) -> MackeyFunctor:
    """Swap restriction and induction through transposes; C_g dualizes C_{g inverse}."""
    lat = M.lattice
    G = M.group
    res = {pair: M.ind[pair].transpose() for pair in M.ind}
    ind = {pair: M.res[pair].transpose() for pair in M.res}
    cgen = {}
    for pos, s in enumerate(G.gens):
        si = G.inv(s)
        for h in range(len(lat)):
            hs = lat.conjugate(s, h)
            cgen[(pos, h)] = M.conj(si, hs).transpose()
    return MackeyFunctor(lat, M.dims, res, ind, cgen, name=f"D({M.name})")


def direct_sum(M: MackeyFunctor, N: MackeyFunctor, name: str | None = None) -> MackeyFunctor:
    if M.lattice is not N.lattice:
        raise MackeyError("direct sum needs a common lattice")
    dims = tuple(a + b for a, b in zip(M.dims, N.dims))
    res = {p: mat_direct_sum(M.res[p], N.res[p]) for p in M.res}
    ind = {p: mat_direct_sum(M.ind[p], N.ind[p]) for p in M.ind}
    cgen = {p: mat_direct_sum(M.cgen[p], N.cgen[p]) for p in M.cgen}
    return MackeyFunctor(M.lattice, dims, res, ind, cgen, name=name or f"{M.name}+{N.name}")


def rebase(M: MackeyFunctor, lattice: SubgroupLattice) -> MackeyFunctor:
    """Move a functor onto another lattice object for the same group.

    Lattice construction is deterministic, so two lattices built from equal
    multiplication tables number subgroups identically and the matrices carry
    over unchanged.
    """
    if M.lattice is lattice:
        return M
    if M.lattice.group._mul != lattice.group._mul:
        raise MackeyError("cannot rebase onto a lattice of a different group")
    return MackeyFunctor(lattice, M.dims, dict(M.res), dict(M.ind), dict(M.cgen), name=M.name)


def basis_change(M: MackeyFunctor, mats: list[QMatrix], name: str | None = None) -> MackeyFunctor:
    """Rewrite every level in a new basis; ``mats[h]`` sends old coordinates to new."""
    lat = M.lattice
    inv = [m.inverse() for m in mats]
    res = {(h, k): mats[k].matmul(M.res[(h, k)]).matmul(inv[h]) for (h, k) in M.res}
    ind = {(h, k): mats[h].matmul(M.ind[(h, k)]).matmul(inv[k]) for (h, k) in M.ind}
    cgen = {}
    for (pos, h), mat in M.cgen.items():
        t = lat.conjugate(M.group.gens[pos], h)
        cgen[(pos, h)] = mats[t].matmul(mat).matmul(inv[h])
    return MackeyFunctor(lat, M.dims, res, ind, cgen, name=name or M.name)


# -- fixed points and quotients ----------------------------------------------


def _check_module_over(lattice: SubgroupLattice, V: WModule) -> None:
    if V.group is not lattice.group and V.group._mul != lattice.group._mul:
        raise MackeyError("module must be a representation of the lattice's group")


def fp_functor(lattice: SubgroupLattice, V: WModule, name: str | None = None) -> MackeyFunctor:
    """Fixed points of a rational representation at every level.

    Restriction includes a fixed subspace into a larger one; induction sums a
    vector over coset representatives.
    """
    _check_module_over(lattice, V)
    G = lattice.group
    bases = [fixed_subspace(V, lattice.elements(h)) for h in range(len(lattice))]
    dims = [b.cols for b in bases]

    def resfn(h, k):
        return restrict_map(QMatrix.identity(V.dim), bases[h], bases[k])

    def indfn(h, k):
        acc = QMatrix.zeros(V.dim, V.dim)
        for r in lattice.cosets(k, h):
            acc = acc + V.matrix(r)
        return restrict_map(acc, bases[k], bases[h])

    def conjfn(pos, s, h):
        return restrict_map(V.matrix(s), bases[h], bases[lattice.conjugate(s, h)])

    return build_functor(lattice, dims, resfn, indfn, conjfn, name=name or "FP")


def fq_functor(lattice: SubgroupLattice, V: WModule, name: str | None = None) -> MackeyFunctor:
    """Coinvariants of a rational representation at every level (dual route).

    Restriction sums the inverses of a left transversal; only then is the sum
    independent of the representatives on both sides of the quotients.
    """
    _check_module_over(lattice, V)
    G = lattice.group
    projs, secs, dims = [], [], []
    eye = QMatrix.identity(V.dim)
    for h in range(len(lattice)):
        cols = []
        for x in lattice.elements(h):
            diff = V.matrix(x) - eye
            cols.extend(diff.columns())
        rel = QMatrix.from_cols(cols, rows=V.dim) if cols else QMatrix.zeros(V.dim, 0)
        p, s = quotient_space(V.dim, rel)
        projs.append(p)
        secs.append(s)
        dims.append(p.rows)

    def resfn(h, k):
        acc = QMatrix.zeros(V.dim, V.dim)
        for r in lattice.cosets(k, h):
            acc = acc + V.matrix(G.inv(r))
        return projs[k].matmul(acc).matmul(secs[h])

    def indfn(h, k):
        return projs[h].matmul(secs[k])

    def conjfn(pos, s, h):
        return projs[lattice.conjugate(s, h)].matmul(V.matrix(s)).matmul(secs[h])

    return build_functor(lattice, dims, resfn, indfn, conjfn, name=name or "FQ")


def fp_fq_iso(lattice: SubgroupLattice, V: WModule) -> MackeyMorphism:
    """The canonical isomorphism from fixed points to coinvariants.

    Levelwise, including the fixed subspace into V and passing to the
    quotient is invertible with inverse the averaging composite; that is
    certified here.  Those raw maps pick up index factors against restriction
    and induction, so the returned morphism carries the 1/|H| normalization
    that makes the collection commute with all structure maps.
    """
    FP = fp_functor(lattice, V)
    FQ = fq_functor(lattice, V)
    maps = []
    for h in range(len(lattice)):
        basis = fixed_subspace(V, lattice.elements(h))
        rel_cols = []
        eye = QMatrix.identity(V.dim)
        for x in lattice.elements(h):
            rel_cols.extend((V.matrix(x) - eye).columns())
        rel = QMatrix.from_cols(rel_cols, rows=V.dim) if rel_cols else QMatrix.zeros(V.dim, 0)
        proj, sec = quotient_space(V.dim, rel)
        fwd = proj.matmul(basis)
        # the averaging composite inverts the raw include-then-quotient map
        avg = averaging_projector(V, lattice.elements(h))
        back = basis.solve(avg.matmul(sec))
        if back is None or fwd.matmul(back) != QMatrix.identity(fwd.rows) or back.matmul(fwd) != QMatrix.identity(fwd.cols):
            raise MackeyError("averaging composite failed to invert the comparison")
        maps.append(fwd.scale(Fraction(1, lattice.order(h))))
    iso = MackeyMorphism(FP, FQ, tuple(maps))
    iso.validate()
    return iso


# -- the Burnside-ring Mackey functor -------------------------------------------


def burnside_mackey(lattice: SubgroupLattice, name: str = "A") -> MackeyFunctor:
    """Level H is the rational Burnside ring of H; maps are restriction and
    induction of sets, conjugation is transport of structure."""
    rings = [burnside_ring(lattice, h) for h in range(len(lattice))]
    dims = [r.size for r in rings]

    def resfn(h, k):
        cols = [rings[h].restrict(rings[h].basis(rep), k).coeffs for rep in rings[h].reps]
        return QMatrix.from_cols(cols, rows=dims[k])

    def indfn(h, k):
        cols = [rings[h].induce(rings[k].basis(rep)).coeffs for rep in rings[k].reps]
        return QMatrix.from_cols(cols, rows=dims[h])

    def conjfn(pos, s, h):
        target = rings[lattice.conjugate(s, h)]
        cols = []
        for rep in rings[h].reps:
            vec = [Fraction(0)] * target.size
            vec[target.class_index[lattice.conjugate(s, rep)]] = Fraction(1)
            cols.append(vec)
        return QMatrix.from_cols(cols, rows=target.size)

    return build_functor(lattice, dims, resfn, indfn, conjfn, name=name)


# -- the Burnside action ------------------------------------------------------------


def burnside_action(M: MackeyFunctor, h: int, a: BurnsideElement) -> QMatrix:
    """The action of an element of A_Q(H) on M(G/H), classwise I o R."""
    ring = a.ring
    if ring.lattice is not M.lattice or ring.top != h:
        raise MackeyError("element must live in the Burnside ring of the level")
    out = QMatrix.zeros(M.dims[h], M.dims[h])
    for ci, c in enumerate(a.coeffs):
        if c == 0:
            continue
        key = (h, ci)
        if key not in M._action_cache:
            rep = ring.reps[ci]
            M._action_cache[key] = M.ind[(h, rep)].matmul(M.res[(h, rep)])
        out = out + M._action_cache[key].scale(c)
    return out


def idempotent_part(
    M: MackeyFunctor,
    e: BurnsideElement,
    name: str | None = None,
    with_inclusion: bool = False,
):
    """The summand eM cut out by an idempotent of the top-level Burnside ring.

    Level H is the image of the action of the restricted idempotent; structure
    maps are restricted to those images (restriction, induction and
    conjugation all commute with the idempotent action).
    """
    lat = M.lattice
    ring = burnside_ring(lat)
    if e.ring is not ring:
        raise MackeyError("idempotent must live in the top-level Burnside ring")
    if not e.is_idempotent():
        raise MackeyError("element is not idempotent")
    bases = []
    for h in range(len(lat)):
        P = burnside_action(M, h, ring.restrict(e, h))
        bases.append(P.image())
    dims = [b.cols for b in bases]
    res = {
        (h, k): restrict_map(M.res[(h, k)], bases[h], bases[k]) for (h, k) in M.res
    }
    ind = {
        (h, k): restrict_map(M.ind[(h, k)], bases[k], bases[h]) for (h, k) in M.ind
    }
    cgen = {}
    for (pos, h), mat in M.cgen.items():
        t = lat.conjugate(M.group.gens[pos], h)
        cgen[(pos, h)] = restrict_map(mat, bases[h], bases[t])
    eM = MackeyFunctor(lat, tuple(dims), res, ind, cgen, name=name or f"e*{M.name}")
    if with_inclusion:
        incl = MackeyMorphism(eM, M, tuple(bases))
        return eM, incl
    return eM


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


@dataclass
class MackeyMorphism:
    """Levelwise linear maps commuting with all structure maps."""

    source: MackeyFunctor
    target: MackeyFunctor
    maps: tuple

    def __post_init__(self):
        self.maps = tuple(QMatrix(m) for m in self.maps)
        lat = self.source.lattice
        if self.target.lattice is not lat:
            raise MackeyError("morphism endpoints live over different lattices")
        for h in range(len(lat)):
            m = self.maps[h]
            if (m.rows, m.cols) != (self.target.dims[h], self.source.dims[h]):
                raise MackeyError(f"component at {lat.name(h)} has the wrong shape")

    def validate(self, full: bool = False) -> None:
        """Check commutation with R, I and C.

        The default checks covering pairs and generators, which suffices when
        both endpoints satisfy the axioms; ``full`` checks every pair and
        every group element.
        """
        M, N = self.source, self.target
        lat = M.lattice
        G = M.group
        pairs = list(comparable_pairs(lat)) if full else lat.cover_pairs()
        for h, k in pairs:
            if self.maps[k].matmul(M.res[(h, k)]) != N.res[(h, k)].matmul(self.maps[h]):
                raise MackeyError(f"does not commute with restriction {lat.name(h)} > {lat.name(k)}")
            if self.maps[h].matmul(M.ind[(h, k)]) != N.ind[(h, k)].matmul(self.maps[k]):
                raise MackeyError(f"does not commute with induction {lat.name(k)} < {lat.name(h)}")
        gens = range(G.order) if full else list(G.gens)
        for h in range(len(lat)):
            for s in gens:
                t = lat.conjugate(s, h)
                if self.maps[t].matmul(M.conj(s, h)) != N.conj(s, h).matmul(self.maps[h]):
                    raise MackeyError(f"does not commute with conjugation by {G.elem_name(s)} at {lat.name(h)}")

    def is_levelwise_iso(self) -> bool:
        return all(m.is_invertible() for m in self.maps)

    def inverse(self) -> "MackeyMorphism":
        return MackeyMorphism(self.target, self.source, tuple(m.inverse() for m in self.maps))

    def compose(self, other: "MackeyMorphism") -> "MackeyMorphism":
        """self after other."""
        if other.target is not self.source:
            raise MackeyError("composition endpoints do not match")
        return MackeyMorphism(
            other.source, self.target, tuple(a.matmul(b) for a, b in zip(self.maps, other.maps))
        )

    def __repr__(self):
        return f"MackeyMorphism({self.source.name} -> {self.target.name})"


def identity_morphism(M: MackeyFunctor) -> MackeyMorphism:
    return MackeyMorphism(M, M, tuple(QMatrix.identity(d) for d in M.dims))


# ---------------------------------------------------------------------------
# evaluation on finite G-sets
# ---------------------------------------------------------------------------


@dataclass
class EvaluatedSet:
    """A Mackey functor value on an explicit G-set via chosen orbit data.

    Each orbit is identified with cosets of the stabilizer of its smallest
    point; the block order follows the orbit order.
    """

    gset: GSet
    orbit_reps: tuple
    stabilizers: tuple  # lattice ids
    offsets: tuple
    dim: int


def evaluate_at_set(M: MackeyFunctor, X: GSet, lattice: SubgroupLattice | None = None) -> EvaluatedSet:
    lat = lattice or M.lattice
    reps, stabs, offsets = [], [], []
    total = 0
    for orbit in X.orbits():
        p = orbit[0]
        sid = lat.subgroup_id(X.stabilizer(p))
        reps.append(p)
        stabs.append(sid)
        offsets.append(total)
        total += M.dims[sid]
    return EvaluatedSet(X, tuple(reps), tuple(stabs), tuple(offsets), total)


def _orbit_block_data(lat, X: GSet, Y: GSet, f: GMap, ev_x: EvaluatedSet, ev_y: EvaluatedSet):
    """For each source orbit: target orbit index, transporter t and twisted subgroup."""
    G = X.group
    out = []
    for i, p in enumerate(ev_x.orbit_reps):
        q = f.points[p]
        j = next(jj for jj, orb_rep in enumerate(ev_y.orbit_reps) if q in {Y.act[g][orb_rep] for g in range(G.order)})
        t = Y.transporter(ev_y.orbit_reps[j], q)
        a = ev_x.stabilizers[i]
        twisted = lat.conjugate(G.inv(t), a)  # t^-1 A t
        out.append((i, j, t, a, twisted))
    return out


def covariant_map(M: MackeyFunctor, f: GMap, lattice: SubgroupLattice | None = None):
    """M applied in the induction direction to a map of G-sets.

    Returns ``(matrix, src_eval, dst_eval)``.
    """
    lat = lattice or M.lattice
    ev_x = evaluate_at_set(M, f.src, lat)
    ev_y = evaluate_at_set(M, f.dst, lat)
    out = [[Fraction(0)] * ev_x.dim for _ in range(ev_y.dim)]
    G = f.src.group
    for i, j, t, a, twisted in _orbit_block_data(lat, f.src, f.dst, f, ev_x, ev_y):
        b = ev_y.stabilizers[j]
        block = M.ind[(b, twisted)].matmul(M.conj(G.inv(t), a))
        ro, co = ev_y.offsets[j], ev_x.offsets[i]
        for r in range(block.rows):
            for c in range(block.cols):
                out[ro + r][co + c] += block.data[r][c]
    return QMatrix(out, rows=ev_y.dim, cols=ev_x.dim), ev_x, ev_y


def contravariant_map(M: MackeyFunctor, f: GMap, lattice: SubgroupLattice | None = None):
    """M applied in the restriction direction to a map of G-sets."""
    lat = lattice or M.lattice
    ev_x = evaluate_at_set(M, f.src, lat)
    ev_y = evaluate_at_set(M, f.dst, lat)
    out = [[Fraction(0)] * ev_y.dim for _ in range(ev_x.dim)]
    G = f.src.group
    for i, j, t, a, twisted in _orbit_block_data(lat, f.src, f.dst, f, ev_x, ev_y):
        b = ev_y.stabilizers[j]
        block = M.conj(t, twisted).matmul(M.res[(b, twisted)])
        ro, co = ev_x.offsets[i], ev_y.offsets[j]
        for r in range(block.rows):
            for c in range(block.cols):
                out[ro + r][co + c] += block.data[r][c]
    return QMatrix(out, rows=ev_x.dim, cols=ev_y.dim), ev_x, ev_y


# ---------------------------------------------------------------------------
# change of groups
# ---------------------------------------------------------------------------


def i_lower(M: MackeyFunctor, h: int, name: str | None = None):
    """Forget a functor over G down to the subgroup H (evaluation along induced sets).

    Returns ``(functor over H, lattice view)``.
    """
    lat = M.lattice
    view = lat.sub_lattice(h)
    sub = view.lattice
    dims = [M.dims[view.parent_sub(a)] for a in range(len(sub))]
    res = {}
    ind = {}
    for a, b in comparable_pairs(sub):
        pa, pb = view.parent_sub(a), view.parent_sub(b)
        res[(a, b)] = M.res[(pa, pb)]
        ind[(a, b)] = M.ind[(pa, pb)]
    cgen = {}
    for pos, s in enumerate(sub.group.gens):
        g = view.to_parent_elem[s]
        for a in range(len(sub)):
            cgen[(pos, a)] = M.conj(g, view.parent_sub(a))
    N = MackeyFunctor(sub, tuple(dims), res, ind, cgen, name=name or f"i_({M.name})")
    return N, view


def i_upper(N: MackeyFunctor, parent: SubgroupLattice, h: int, name: str | None = None) -> MackeyFunctor:
    """Extend a functor over H <= G up to G by evaluating on restricted cosets."""
    view = parent.sub_lattice(h)
    if N.lattice is not view.lattice:
        raise MackeyError("functor must live over the sub-lattice view of H")
    G = parent.group
    Hstar = view.lattice.group
    gsets = []
    evals = []
    for k in range(len(parent)):
        X = restrict_gset(coset_gset(G, parent.elements(k)), Hstar, view.to_parent_elem)
        gsets.append(X)
        evals.append(evaluate_at_set(N, X, view.lattice))
    dims = [ev.dim for ev in evals]

    def point_map_projection(k_small, k_big):
        # cosets of the smaller subgroup map onto cosets of the bigger one
        reps_small = parent.cosets(k_small)
        reps_big = parent.cosets(k_big)
        big_pos = {}
        for idx, r in enumerate(reps_big):
            for x in parent.elements(k_big):
                big_pos[G.mul(r, x)] = idx
        return tuple(big_pos[r] for r in reps_small)

    def resfn(h1, k1):
        f = GMap(gsets[k1], gsets[h1], point_map_projection(k1, h1))
        mat, _, _ = contravariant_map(N, f, view.lattice)
        return mat

    def indfn(h1, k1):
        f = GMap(gsets[k1], gsets[h1], point_map_projection(k1, h1))
        mat, _, _ = covariant_map(N, f, view.lattice)
        return mat

    def conjfn(pos, s, k):
        ks = parent.conjugate(s, k)
        reps_src = parent.cosets(k)
        reps_dst = parent.cosets(ks)
        dst_pos = {}
        for idx, r in enumerate(reps_dst):
            for x in parent.elements(ks):
                dst_pos[G.mul(r, x)] = idx
        si = G.inv(s)
        points = tuple(dst_pos[G.mul(r, si)] for r in reps_src)
        f = GMap(gsets[k], gsets[ks], points)
        mat, _, _ = covariant_map(N, f, view.lattice)
        return mat

    return build_functor(parent, dims, resfn, indfn, conjfn, name=name or f"i^({N.name})")


def eps_lower(Mq: MackeyFunctor, parent: SubgroupLattice, n: int, name: str | None = None) -> MackeyFunctor:
    """Inflate a functor over G/N to one over G, zero off subgroups containing N."""
    view = parent.quotient_lattice(n)
    if Mq.lattice is not view.lattice:
        raise MackeyError("functor must live over the quotient lattice view")
    local_of = {view.parent_sub(i): i for i in range(len(view.lattice))}
    dims = [Mq.dims[local_of[k]] if k in local_of else 0 for k in range(len(parent))]

    def resfn(h, k):
        if h in local_of and k in local_of:
            return Mq.res[(local_of[h], local_of[k])]
        return QMatrix.zeros(dims[k], dims[h])

    def indfn(h, k):
        if h in local_of and k in local_of:
            return Mq.ind[(local_of[h], local_of[k])]
        return QMatrix.zeros(dims[h], dims[k])

    def conjfn(pos, s, h):
        t = parent.conjugate(s, h)
        if h in local_of:
            return Mq.conj(view.proj[s], local_of[h])
        return QMatrix.zeros(dims[t], dims[h])

    return build_functor(parent, dims, resfn, indfn, conjfn, name=name or f"eps_({Mq.name})")


def eps_upper(M: MackeyFunctor, n: int, name: str | None = None):
    """Deflate a functor that vanishes off supergroups of a normal N to one over G/N.

    Returns ``(functor over G/N, quotient lattice view)``.
    """
    lat = M.lattice
    if not lat.is_normal(n):
        raise MackeyError(f"{lat.name(n)} is not normal")
    for k in range(len(lat)):
        if not lat.leq(n, k) and M.dims[k] != 0:
            raise MackeyError(
                f"functor is not trivial off supergroups of {lat.name(n)}: level {lat.name(k)} has dimension {M.dims[k]}"
            )
    view = lat.quotient_lattice(n)
    sub = view.lattice
    dims = [M.dims[view.parent_sub(a)] for a in range(len(sub))]
    res, ind = {}, {}
    for a, b in comparable_pairs(sub):
        pa, pb = view.parent_sub(a), view.parent_sub(b)
        res[(a, b)] = M.res[(pa, pb)]
        ind[(a, b)] = M.ind[(pa, pb)]
    cgen = {}
    for pos, w in enumerate(sub.group.gens):
        g = view.reps[w]
        for a in range(len(sub)):
            cgen[(pos, a)] = M.conj(g, view.parent_sub(a))
    Mq = MackeyFunctor(sub, tuple(dims), res, ind, cgen, name=name or f"eps^({M.name})")
    return Mq, view


# -- evaluation at the bottom level and its adjoint -----------------------------


def evaluate_bottom(M: MackeyFunctor) -> WModule:
    """The value at the free orbit, with the conjugation action of the group."""
    lat = M.lattice
    w = lat.weyl(lat.bottom)
    mats = tuple(M.conj(w.reps[s], lat.bottom) for s in w.group.gens)
    return WModule(w.group, M.dims[lat.bottom], mats)


# the right adjoint to bottom-level evaluation is the fixed-point construction
fp_adjoint = fp_functor


def fp_unit(M: MackeyFunctor) -> MackeyMorphism:
    """The unit morphism into the fixed-point functor on the bottom level."""
    lat = M.lattice
    V = evaluate_bottom(M)
    F = fp_functor(lat, V, name=f"FP({M.name}(G/e))")
    maps = []
    for h in range(len(lat)):
        basis = fixed_subspace(V, lat.elements(h))
        coeff = basis.solve(M.res[(h, lat.bottom)])
        if coeff is None:
            raise MackeyError("restriction to the bottom level does not land in fixed vectors")
        maps.append(coeff)
    unit = MackeyMorphism(M, F, tuple(maps))
    unit.validate()
    return unit


# -- adjunction transposes for the subgroup change -------------------------------


def i_transpose_down(f_maps, M: MackeyFunctor, N: MackeyFunctor, parent: SubgroupLattice, h: int):
    """Turn levelwise maps M -> i^upper(N) into maps i_lower(M) -> N.

    ``f_maps[k]`` is the component at the parent subgroup k, with the i^upper
    value decomposed by the canonical orbit data.  The result has one
    component per subgroup of H.
    """
    view = parent.sub_lattice(h)
    sub = view.lattice
    G = parent.group
    Hstar = sub.group
    out = []
    for a in range(len(sub)):
        pa = view.parent_sub(a)
        X = restrict_gset(coset_gset(G, parent.elements(pa)), Hstar, view.to_parent_elem)
        ev = evaluate_at_set(N, X, sub)
        # the identity coset of pa sits in some orbit; project onto that block
        reps = parent.cosets(pa)
        pos = {}
        for idx, r in enumerate(reps):
            for x in parent.elements(pa):
                pos[G.mul(r, x)] = idx
        ident_pt = pos[G.identity]
        j = next(
            jj
            for jj, orb_rep in enumerate(ev.orbit_reps)
            if ident_pt in {X.act[g][orb_rep] for g in range(Hstar.order)}
        )
        t = X.transporter(ev.orbit_reps[j], ident_pt)
        b = ev.stabilizers[j]
        # stabilizer of the identity coset is the subgroup itself: t b t^-1 = a
        if sub.conjugate(t, b) != a:
            raise MackeyError("stabilizer mismatch in transpose")
        block_rows = N.dims[b]
        off = ev.offsets[j]
        proj = QMatrix(
            [
                [Fraction(1 if c == off + r else 0) for c in range(ev.dim)]
                for r in range(block_rows)
            ],
            rows=block_rows,
            cols=ev.dim,
        )
        out.append(N.conj(t, b).matmul(proj).matmul(f_maps[pa]))
    return out


def i_transpose_up(g_maps, M: MackeyFunctor, N: MackeyFunctor, parent: SubgroupLattice, h: int):
    """Turn levelwise maps i_lower(M) -> N into maps M -> i^upper(N)."""
    view = parent.sub_lattice(h)
    sub = view.lattice
    G = parent.group
    Hstar = sub.group
    out = []
    for k in range(len(parent)):
        X = restrict_gset(coset_gset(G, parent.elements(k)), Hstar, view.to_parent_elem)
        ev = evaluate_at_set(N, X, sub)
        reps = parent.cosets(k)
        blocks = []
        for j, orb_rep in enumerate(ev.orbit_reps):
            g_rep = reps[orb_rep]
            s_local = ev.stabilizers[j]
            s_parent = view.parent_sub(s_local)
            twisted = parent.conjugate(G.inv(g_rep), s_parent)  # g^-1 S g <= K
            comp = M.conj(g_rep, twisted)
            blocks.append(g_maps[s_local].matmul(comp).matmul(M.res[(k, twisted)]))
        if blocks:
            out.append(vstack(*blocks))
        else:
            out.append(QMatrix.zeros(0, M.dims[k]))
    return out

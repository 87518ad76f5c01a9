"""Command-line front end.

Subcommands mirror the library layers: ``group`` for lattice inspection,
``burnside`` for ring computations, ``mackey`` for functor-level operations,
and ``demo`` to regenerate the worked examples end to end.  Exit codes: 0 on
success, 1 when a verification fails, 2 on usage errors (unknown input,
malformed JSON, cap exceeded).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import groups as grp
from .burnside import BurnsideError, burnside_ring
from .classify import classify_iso, diagonal_check, free_functor, split
from .groups import CapExceeded, GroupError, SubgroupLattice
from .linalg import LinAlgError, WModule
from .mackey import (
    MackeyError,
    burnside_mackey,
    check_axioms,
    coconstant,
    constant,
    fp_functor,
    zero_functor,
)
from .monoidal import GreenStructure, box, green_check
from .serialize import (
    FormatError,
    burnside_to_json,
    dump,
    frac_to_str,
    functor_from_json,
    functor_to_json,
    group_from_json,
    lewis_dot,
    matrix_from_json,
    matrix_to_json,
)

_BUILTIN_GROUPS = {
    "c1": lambda: grp.trivial(),
    "c2": lambda: grp.cyclic(2),
    "c3": lambda: grp.cyclic(3),
    "c4": lambda: grp.cyclic(4),
    "c6": lambda: grp.cyclic(6),
    "c8": lambda: grp.cyclic(8),
    "s3": lambda: grp.symmetric(3),
    "s4": lambda: grp.symmetric(4),
    "a4": lambda: grp.alternating(4),
    "d8": lambda: grp.dihedral(8),
    "d12": lambda: grp.dihedral(12),
    "q8": lambda: grp.quaternion(),
}


class UsageError(ValueError):
    pass


def workspace_dir() -> str | None:
    return os.environ.get("MACKEY_WORKSPACE")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from None


def resolve_group(name: str, cap: int) -> grp.FiniteGroup:
    low = name.lower()
    if low in _BUILTIN_GROUPS:
        G = _BUILTIN_GROUPS[low]()
        if G.order > cap:
            raise CapExceeded(f"group order {G.order} exceeds cap {cap}")
        return G
    if os.path.exists(name):
        return group_from_json(_load_json(name), cap=cap)
    ws = workspace_dir()
    if ws:
        candidate = os.path.join(ws, "groups", f"{name}.json")
        if os.path.exists(candidate):
            return group_from_json(_load_json(candidate), cap=cap)
    raise UsageError(f"unknown group {name!r} (not builtin, not a file, not in workspace)")


def resolve_functor(spec: str, cap: int):
    """A functor argument: ``kind:group`` for builtins, else a JSON file."""
    if ":" in spec and not os.path.exists(spec):
        kind, _, gname = spec.partition(":")
        G = resolve_group(gname, cap)
        lat = SubgroupLattice(G, cap=cap)
        if kind == "burnside":
            return burnside_mackey(lat)
        if kind == "constant":
            return constant(lat, 1)
        if kind == "coconstant":
            return coconstant(lat, 1)
        if kind == "zero":
            return zero_functor(lat)
        if kind == "fixed":
            return fp_functor(lat, WModule.regular(G))
        raise UsageError(f"unknown builtin functor kind {kind!r}")
    if os.path.exists(spec):
        return functor_from_json(_load_json(spec), cap=cap)
    ws = workspace_dir()
    if ws:
        candidate = os.path.join(ws, "functors", f"{spec}.json")
        if os.path.exists(candidate):
            return functor_from_json(_load_json(candidate), cap=cap)
    raise UsageError(f"unknown functor {spec!r}")


def _fmt(args) -> str:
    return "text" if args.pretty else args.format


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# group commands
# ---------------------------------------------------------------------------


def cmd_group_info(args) -> int:
    G = resolve_group(args.group, args.cap)
    lat = SubgroupLattice(G, cap=args.cap)
    if _fmt(args) == "json":
        data = {
            "name": G.name,
            "order": G.order,
            "abelian": G.is_abelian,
            "generators": [G.elem_name(s) for s in G.gens],
            "subgroups": len(lat),
            "conjugacy_classes": len(lat.classes),
        }
        _emit(args, dump(data))
        return 0
    lines = [
        f"group {G.name}",
        f"  order: {G.order}",
        f"  abelian: {'yes' if G.is_abelian else 'no'}",
        f"  generators: {', '.join(G.elem_name(s) for s in G.gens) or '(none)'}",
        f"  subgroups: {len(lat)} in {len(lat.classes)} conjugacy classes",
    ]
    _emit(args, "\n".join(lines))
    return 0


def cmd_group_subgroups(args) -> int:
    G = resolve_group(args.group, args.cap)
    lat = SubgroupLattice(G, cap=args.cap)
    rows = []
    for h in range(len(lat)):
        rows.append(
            {
                "name": lat.name(h),
                "order": lat.order(h),
                "class": lat.class_name_of(h),
                "elements": list(lat.elements(h)),
                "normalizer": lat.name(lat.normalizers[h]),
                "weyl_order": lat.weyl(h).group.order,
                "normal": lat.is_normal(h),
            }
        )
    if _fmt(args) == "json":
        _emit(args, dump({"group": G.name, "subgroups": rows}))
        return 0
    lines = [f"subgroups of {G.name}:"]
    for r in rows:
        flag = " normal" if r["normal"] else ""
        lines.append(
            f"  {r['name']:<8} order {r['order']:<3} class {r['class']:<5} "
            f"N={r['normalizer']:<8} |W|={r['weyl_order']}{flag}"
        )
    _emit(args, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# burnside commands
# ---------------------------------------------------------------------------


def cmd_burnside_table(args) -> int:
    G = resolve_group(args.group, args.cap)
    lat = SubgroupLattice(G, cap=args.cap)
    ring = burnside_ring(lat)
    T = ring.table_of_marks()
    names = [lat.class_name_of(rep) for rep in ring.reps]
    if _fmt(args) == "json":
        _emit(
            args,
            dump({"group": G.name, "classes": names, "marks": [[int(x) for x in row] for row in T.data]}),
        )
        return 0
    width = max(len(n) for n in names) + 1
    head = " " * (width + 2) + " ".join(f"{n:>{width}}" for n in names)
    lines = [f"table of marks for {G.name} (rows: orbit classes, columns: fixing classes)", head]
    for i, n in enumerate(names):
        row = " ".join(f"{int(x):>{width}}" for x in T.data[i])
        lines.append(f"  {n:<{width}}{row}")
    _emit(args, "\n".join(lines))
    return 0


def cmd_burnside_idempotents(args) -> int:
    G = resolve_group(args.group, args.cap)
    lat = SubgroupLattice(G, cap=args.cap)
    ring = burnside_ring(lat)
    via_mobius = ring.idempotents()
    via_marks = ring.idempotents_via_marks()
    agree = via_mobius == via_marks
    if _fmt(args) == "json":
        data = {
            "group": G.name,
            "idempotents": {
                f"e[{lat.class_name_of(rep)}]": burnside_to_json(e)
                for rep, e in zip(ring.reps, via_mobius)
            },
            "routes_agree": agree,
        }
        _emit(args, dump(data))
    else:
        lines = [f"primitive idempotents of the rational Burnside ring of {G.name}:"]
        for rep, e in zip(ring.reps, via_mobius):
            lines.append(f"  e[{lat.class_name_of(rep)}] = {e.render()}")
        lines.append(f"mobius and marks routes agree: {'yes' if agree else 'NO'}")
        _emit(args, "\n".join(lines))
    return 0 if agree else 1


def cmd_burnside_restrict(args) -> int:
    G = resolve_group(args.group, args.cap)
    lat = SubgroupLattice(G, cap=args.cap)
    ring = burnside_ring(lat)
    target = lat.id_by_name(args.to)
    if args.element:
        from .serialize import burnside_from_json

        elem = burnside_from_json(json.loads(args.element), ring)
    elif args.idempotent:
        elem = ring.idempotent(lat.id_by_name(args.idempotent))
    else:
        raise UsageError("need --element JSON or --idempotent CLASS")
    down = ring.restrict(elem, target)
    if _fmt(args) == "json":
        _emit(args, dump(burnside_to_json(down)))
    else:
        _emit(args, f"restriction to {args.to}: {down.render()}")
    return 0


# ---------------------------------------------------------------------------
# mackey commands
# ---------------------------------------------------------------------------


def cmd_mackey_new(args) -> int:
    G = resolve_group(args.group, args.cap)
    lat = SubgroupLattice(G, cap=args.cap)
    kind = args.kind
    if kind == "burnside":
        M = burnside_mackey(lat)
    elif kind == "constant":
        M = constant(lat, args.dim)
    elif kind == "coconstant":
        M = coconstant(lat, args.dim)
    elif kind == "zero":
        M = zero_functor(lat)
    elif kind == "fixed":
        M = fp_functor(lat, WModule.regular(G))
    elif kind == "free":
        if not args.at:
            raise UsageError("free functors need --at CLASS")
        if args.at in lat.class_names:
            h = lat.classes[lat.class_names.index(args.at)][0]
        else:
            h = lat.class_rep(lat.id_by_name(args.at))
        W = lat.weyl(h).group
        V = WModule.regular(W) if args.module == "regular" else WModule.trivial(W, args.dim)
        M = free_functor(lat, h, V)
    else:
        raise UsageError(f"unknown functor kind {kind!r}")
    payload = dump(functor_to_json(M))
    if args.save:
        ws = workspace_dir()
        if not ws:
            raise UsageError("--save needs MACKEY_WORKSPACE to be set")
        os.makedirs(os.path.join(ws, "functors"), exist_ok=True)
        path = os.path.join(ws, "functors", f"{args.save}.json")
        with open(path, "w") as fh:
            fh.write(payload + "\n")
        _emit(args, f"saved functor as {path}")
    else:
        _emit(args, payload)
    return 0


def cmd_mackey_check(args) -> int:
    M = resolve_functor(args.functor, args.cap)
    report = check_axioms(M)
    if _fmt(args) == "json":
        _emit(
            args,
            dump(
                {
                    "functor": M.name,
                    "ok": report.ok,
                    "violations": [{"axiom": v.axiom, "detail": v.detail} for v in report.violations],
                }
            ),
        )
    else:
        if report.ok:
            _emit(args, f"{M.name}: all axioms hold")
        else:
            lines = [f"{M.name}: {len(report.violations)} violation(s)"]
            lines += [f"  {v}" for v in report.violations]
            _emit(args, "\n".join(lines))
    return 0 if report.ok else 1


def cmd_mackey_split(args) -> int:
    M = resolve_functor(args.functor, args.cap)
    S = split(M)
    lat = M.lattice
    if _fmt(args) == "json":
        data = {}
        for h, V in S.modules.items():
            data[lat.class_name_of(h)] = {
                "dim": V.dim,
                "weyl_order": V.group.order,
                "action": {
                    str(s): matrix_to_json(V.gen_matrices[pos])
                    for pos, s in enumerate(V.group.gens)
                },
            }
        _emit(args, dump({"functor": M.name, "pieces": data}))
        return 0
    lines = [f"splitting of {M.name} into Weyl-group modules:"]
    for h, V in S.modules.items():
        lines.append(f"  class {lat.class_name_of(h)}: dim {V.dim} over a Weyl group of order {V.group.order}")
        for pos, s in enumerate(V.group.gens):
            if V.dim:
                rows = "; ".join(" ".join(frac_to_str(x) for x in row) for row in V.gen_matrices[pos].data)
                lines.append(f"    action of generator {V.group.elem_name(s)}: [{rows}]")
    _emit(args, "\n".join(lines))
    return 0


def cmd_mackey_classify(args) -> int:
    M = resolve_functor(args.functor, args.cap)
    lat = M.lattice
    try:
        iso = classify_iso(M)
    except MackeyError as exc:
        _emit(args, f"classification FAILED: {exc}")
        return 1
    if _fmt(args) == "json":
        data = {
            "functor": M.name,
            "levels": {lat.name(h): M.dims[h] for h in range(len(lat))},
            "pieces": {
                lat.class_name_of(h): V.dim for h, V in split(M).modules.items()
            },
            "certified": True,
        }
        if args.certify:
            data["certificates"] = {
                lat.name(h): f"rank {iso.maps[h].rank()} of {M.dims[h]}" for h in range(len(lat))
            }
        _emit(args, dump(data))
        return 0
    lines = [f"{M.name} splits as a sum of free pieces:"]
    for h, V in split(M).modules.items():
        if V.dim:
            lines.append(f"  class {lat.class_name_of(h)}: module of dimension {V.dim}")
    lines.append("comparison morphism is invertible at every level")
    if args.certify:
        for h in range(len(lat)):
            m = iso.maps[h]
            lines.append(f"  level {lat.name(h)}: square of size {m.rows}, rank {m.rank()}")
    _emit(args, "\n".join(lines))
    return 0


def cmd_mackey_box(args) -> int:
    from .mackey import rebase

    M = resolve_functor(args.a, args.cap)
    N = rebase(resolve_functor(args.b, args.cap), M.lattice)
    B = box(M, N)
    payload = dump(functor_to_json(B))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
        sys.stdout.write(f"box product written to {args.out}\n")
    else:
        sys.stdout.write(payload + "\n")
    return 0


def cmd_mackey_green_check(args) -> int:
    M = resolve_functor(args.functor, args.cap)
    lat = M.lattice
    if args.mult == "burnside":
        from .monoidal import burnside_green

        S = burnside_green(lat)
    else:
        data = _load_json(args.mult)
        mult, unit = {}, {}
        for h in range(len(lat)):
            name = lat.name(h)
            if name not in data.get("mult", {}) or name not in data.get("unit", {}):
                raise UsageError(f"multiplication data missing level {name}")
            d = M.dims[h]
            mult[h] = matrix_from_json(data["mult"][name], (d, d * d))
            unit[h] = matrix_from_json(data["unit"][name], (d, 1))
        S = GreenStructure(M, mult, unit)
    report = green_check(S)
    if _fmt(args) == "json":
        _emit(
            args,
            dump(
                {
                    "ok": report.ok,
                    "commutative": report.commutative,
                    "violations": [{"rule": n, "at": d} for n, d in report.violations],
                }
            ),
        )
    else:
        if report.ok:
            _emit(args, f"green structure on {M.name} verified (commutative: {'yes' if report.commutative else 'no'})")
        else:
            lines = [f"green check FAILED for {M.name}:"]
            lines += [f"  [{n}] at {d}" for n, d in report.violations]
            _emit(args, "\n".join(lines))
    return 0 if report.ok else 1


def cmd_mackey_lewis(args) -> int:
    M = resolve_functor(args.functor, args.cap)
    if args.dot or _fmt(args) == "dot":
        _emit(args, lewis_dot(M))
        return 0
    lat = M.lattice
    lines = [f"levels of {M.name}:"]
    for h in lat.class_reps():
        w = lat.weyl(h).group.order
        lines.append(f"  {lat.class_name_of(h)}: dim {M.dims[h]} (Weyl order {w})")
    _emit(args, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# demos
# ---------------------------------------------------------------------------


def _demo_c6(out) -> int:
    G = grp.cyclic(6)
    lat = SubgroupLattice(G)
    ids = {lat.name(h): h for h in range(len(lat))}
    ring = burnside_ring(lat)
    b = {n: ring.basis(ids[n]) for n in ("C1", "C2", "C3", "C6")}
    w = out.append
    w("=== the rational Burnside ring of the cyclic group of order 6 ===")
    w("")
    w("products of the orbit classes:")
    pairs = [("C1", "C1"), ("C1", "C3"), ("C1", "C2"), ("C3", "C3"), ("C2", "C3"), ("C2", "C2")]
    for x, y in pairs:
        w(f"  [C6/{x}] * [C6/{y}] = {(b[x] * b[y]).render()}")
    w("")
    w("orthogonal idempotent decomposition of the unit:")
    for n in ("C1", "C2", "C3", "C6"):
        w(f"  e[{n}] = {ring.idempotent(ids[n]).render()}")
    es = ring.idempotents()
    total = ring.zero()
    for e in es:
        total = total + e
    w(f"  sum of idempotents equals the unit: {'yes' if total == ring.unit() else 'NO'}")
    orth = all((es[i] * es[j]).is_zero() for i in range(4) for j in range(4) if i != j)
    w(f"  pairwise products vanish: {'yes' if orth else 'NO'}")
    squares = all(e * e == e for e in es)
    w(f"  each is idempotent: {'yes' if squares else 'NO'}")
    agree = es == ring.idempotents_via_marks()
    w(f"  mobius formula agrees with marks inversion: {'yes' if agree else 'NO'}")
    w("")
    w("restriction to the subgroup of order 3:")
    sub3 = burnside_ring(lat, ids["C3"])
    w(f"  [C6/C3] restricts to {ring.restrict(b['C3'], ids['C3']).render()}")
    down = ring.restrict(ring.idempotent(ids["C3"]), ids["C3"])
    w(f"  e[C3] restricts to {down.render()}")
    w(f"    which equals e[C3] of the subring: {'yes' if down == sub3.idempotent(ids['C3']) else 'NO'}")
    w(f"  e[C2] restricts to {ring.restrict(ring.idempotent(ids['C2']), ids['C3']).render()}")
    w("")
    w("=== the Burnside Mackey functor and its splitting ===")
    w("")
    A = burnside_mackey(lat)
    dims = " ".join(f"{lat.name(h)}:{A.dims[h]}" for h in range(len(lat)))
    w(f"  level dimensions: {dims}")
    w(f"  axioms verified: {'yes' if check_axioms(A).ok else 'NO'}")
    S = split(A)
    piece = " ".join(f"{lat.class_name_of(h)}:{V.dim}" for h, V in S.modules.items())
    w(f"  class modules: {piece}")
    iso = classify_iso(A)
    w(f"  comparison onto the sum of free pieces is invertible: {'yes' if iso.is_levelwise_iso() else 'NO'}")
    w("")
    w("free functors on the trivial line (level dims, restriction, induction):")
    for n in ("C6", "C3", "C2", "C1"):
        h = ids[n]
        W = lat.weyl(h).group
        F = free_functor(lat, h, WModule.trivial(W, 1))
        dd = " ".join(f"{lat.name(k)}:{F.dims[k]}" for k in range(len(lat)))
        w(f"  F[{n}]: {dd}")
        for k in lat.subgroups_of(ids["C6"]):
            if k != ids["C6"] and F.dims[k] == 1 and F.dims[ids["C6"]] == 1:
                r = F.res[(ids["C6"], k)].entry(0, 0)
                i = F.ind[(ids["C6"], k)].entry(0, 0)
                w(f"      restriction C6>{lat.name(k)} = {frac_to_str(r)}, induction {lat.name(k)}<C6 = {frac_to_str(i)}")
    w("")
    w("free functor on the regular module at the order-3 class:")
    W3 = lat.weyl(ids["C3"]).group
    F3r = free_functor(lat, ids["C3"], WModule.regular(W3))
    dd = " ".join(f"{lat.name(k)}:{F3r.dims[k]}" for k in range(len(lat)))
    w(f"  dims: {dd}")
    rmat = F3r.res[(ids["C6"], ids["C3"])]
    imat = F3r.ind[(ids["C6"], ids["C3"])]
    w(f"  restriction C6>C3 columns: {matrix_to_json(rmat)}  (fixed-vector inclusion)")
    w(f"  induction C3<C6 rows: {matrix_to_json(imat)}  (augmentation)")
    w("")
    w("double-coset consequence on every built functor:")
    W2 = lat.weyl(ids["C2"]).group
    tests = [
        ("burnside", A),
        ("constant", constant(lat, 1)),
        ("coconstant", coconstant(lat, 1)),
        ("free at C2", free_functor(lat, ids["C2"], WModule.trivial(W2, 1))),
        ("fixed points of the regular module", fp_functor(lat, WModule.regular(G))),
    ]
    for name, M in tests:
        lhs = M.res[(ids["C6"], ids["C3"])].matmul(M.ind[(ids["C6"], ids["C2"])])
        rhs = M.ind[(ids["C3"], ids["C1"])].matmul(M.res[(ids["C2"], ids["C1"])])
        w(f"  R(C6>C3) o I(C2<C6) == I(C1<C3) o R(C2>C1) on {name}: {'yes' if lhs == rhs else 'NO'}")
    return 0


def _demo_s4(out) -> int:
    G = grp.symmetric(4)
    lat = SubgroupLattice(G)
    w = out.append
    k = lat.subgroup_id(G.closure([G.elem_names.index("(1 2)")]))
    h = lat.normalizers[k]
    w("=== diagonal decomposition inside the symmetric group on four letters ===")
    w("")
    w(f"K = subgroup generated by (1 2), named {lat.name(k)}")
    w(f"H = normalizer of K, named {lat.name(h)}, order {lat.order(h)}")
    W = lat.weyl(k)
    w(f"Weyl group of K has order {W.group.order}")
    fixed_kk = lat.fixed_cosets(k, k)
    fixed_hk = lat.fixed_cosets(h, k)
    w(f"K-fixed cosets of G/K: {len(fixed_kk)} (reps {list(fixed_kk)})")
    w(f"K-fixed cosets of G/H: {len(fixed_hk)} (reps {list(fixed_hk)})")
    w("")
    V = WModule.regular(W.group)
    F = free_functor(lat, k, V)
    w(f"free functor on the regular Weyl module: dim at G/K = {F.dims[k]}, dim at G/H = {F.dims[h]}")
    IR = F.ind[(h, k)].matmul(F.res[(h, k)])
    w(f"rank of induction-after-restriction at G/H: {IR.rank()}  (a single line survives)")
    rep = diagonal_check(F, k, h)
    w(
        f"upper piece dim {rep.dim_upper}, Weyl-fixed lower piece dim {rep.dim_fixed}, "
        f"restriction-induced map invertible: {'yes' if rep.ok else 'NO'}"
    )
    w("")
    w("the same identity across every subgroup pair of the lattice:")
    ok = True
    pairs = 0
    for hh in range(len(lat)):
        for kk in lat.subgroups_of(hh):
            pairs += 1
            if not diagonal_check(F, kk, hh).ok:
                ok = False
    w(f"  checked {pairs} pairs: {'all pass' if ok else 'FAILURES FOUND'}")
    return 0 if ok and rep.ok else 1


def _demo_cp3(out) -> int:
    G = grp.cyclic(8)
    lat = SubgroupLattice(G)
    w = out.append
    w("=== the cyclic 2-group tower of order 8 ===")
    w("")
    names = [lat.name(h) for h in range(len(lat))]
    w(f"subgroup tower: {' < '.join(names)}")
    from .classify import SplitData, assemble

    modules = {}
    for h in lat.class_reps():
        W = lat.weyl(h).group
        modules[h] = WModule.regular(W)
    M = assemble(SplitData(lat, modules), name="tower")
    dims = " ".join(f"{lat.name(h)}:{M.dims[h]}" for h in range(len(lat)))
    w(f"assembled functor from regular Weyl modules at every class, level dims: {dims}")
    w("")
    w("each level decomposes into Weyl-fixed pieces of the lower local modules:")
    ok = True
    for h in range(len(lat)):
        parts = []
        total = 0
        for k in lat.subgroups_of(h):
            rep = diagonal_check(M, k, h)
            ok = ok and rep.ok
            total += rep.dim_fixed
            parts.append(f"{rep.dim_fixed} from {lat.name(k)}")
        w(f"  dim at {lat.name(h)} = {M.dims[h]} = {' + '.join(parts)}  (sum {total})")
        ok = ok and total == M.dims[h]
    w("")
    w(f"all decomposition maps certified: {'yes' if ok else 'NO'}")
    return 0 if ok else 1


def cmd_demo(args) -> int:
    out: list[str] = []
    if args.which == "c6":
        code = _demo_c6(out)
    elif args.which == "s4":
        code = _demo_s4(out)
    elif args.which == "cp3":
        code = _demo_cp3(out)
    else:
        raise UsageError(f"unknown demo {args.which!r}")
    _emit(args, "\n".join(out))
    return code


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmackey", description=__doc__)
    p.add_argument("--cap", type=int, default=64, help="largest allowed group order")
    p.add_argument("--pretty", action="store_true", help="prefer human-readable tables")
    p.add_argument("--out", help="write output to a file instead of stdout")
    p.add_argument("--format", choices=["text", "json", "dot"], default="json")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="inspect a finite group")
    gsub = g.add_subparsers(dest="subcommand", required=True)
    gi = gsub.add_parser("info")
    gi.add_argument("group")
    gi.set_defaults(func=cmd_group_info)
    gs = gsub.add_parser("subgroups")
    gs.add_argument("group")
    gs.set_defaults(func=cmd_group_subgroups)

    b = sub.add_parser("burnside", help="rational Burnside ring computations")
    bsub = b.add_subparsers(dest="subcommand", required=True)
    bt = bsub.add_parser("table")
    bt.add_argument("group")
    bt.set_defaults(func=cmd_burnside_table)
    bi = bsub.add_parser("idempotents")
    bi.add_argument("group")
    bi.set_defaults(func=cmd_burnside_idempotents)
    br = bsub.add_parser("restrict")
    br.add_argument("group")
    br.add_argument("--to", required=True, help="target subgroup name")
    br.add_argument("--element", help="element as JSON of class coefficients")
    br.add_argument("--idempotent", help="restrict the idempotent of this class")
    br.set_defaults(func=cmd_burnside_restrict)

    m = sub.add_parser("mackey", help="Mackey functor operations")
    msub = m.add_subparsers(dest="subcommand", required=True)
    mn = msub.add_parser("new")
    mn.add_argument("kind", choices=["burnside", "constant", "coconstant", "zero", "fixed", "free"])
    mn.add_argument("--group", required=True)
    mn.add_argument("--dim", type=int, default=1)
    mn.add_argument("--at", help="class name for free functors")
    mn.add_argument("--module", choices=["trivial", "regular"], default="trivial")
    mn.add_argument("--save", help="store under this name in the workspace")
    mn.set_defaults(func=cmd_mackey_new)
    mc = msub.add_parser("check")
    mc.add_argument("functor")
    mc.set_defaults(func=cmd_mackey_check)
    ms = msub.add_parser("split")
    ms.add_argument("functor")
    ms.set_defaults(func=cmd_mackey_split)
    mcl = msub.add_parser("classify")
    mcl.add_argument("functor")
    mcl.add_argument("--certify", action="store_true")
    mcl.set_defaults(func=cmd_mackey_classify)
    mb = msub.add_parser("box")
    mb.add_argument("a")
    mb.add_argument("b")
    mb.set_defaults(func=cmd_mackey_box)
    mg = msub.add_parser("green-check")
    mg.add_argument("functor")
    mg.add_argument("mult", help="multiplication data JSON, or 'burnside'")
    mg.set_defaults(func=cmd_mackey_green_check)
    ml = msub.add_parser("lewis")
    ml.add_argument("functor")
    ml.add_argument("--dot", action="store_true")
    ml.set_defaults(func=cmd_mackey_lewis)

    d = sub.add_parser("demo", help="regenerate the worked examples")
    d.add_argument("which", choices=["c6", "s4", "cp3"])
    d.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, GroupError, CapExceeded, BurnsideError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (MackeyError, LinAlgError) as exc:
        sys.stderr.write(f"verification error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

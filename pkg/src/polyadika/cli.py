"""Command-line entry point: ``polyadika <command> ...``.

Every command writes a line-oriented machine block to standard output in
which each line is ``key<TAB>value``.  Values never contain tabs; nested
tuples render without spaces, e.g. ``((0,1),2)``; missing values render as
``none``.  Identical invocations produce byte-identical standard output —
the one timing figure goes to standard error.  Human-oriented extras (the
matrix grids of ``repr regular``) precede the machine block and contain no
tabs, so machine consumers may simply keep the lines with a tab in them.
Two commands are pure TSV reports instead (``arity-table`` and
``repr spectrum``); their whole output is the table.

Exit codes:

    0   every requested check passed (or the command is informational)
    1   at least one requested check failed
    2   usage error or malformed input file
    3   a scan was abandoned because it would exceed the probe budget

Check rows read ``pass``, ``fail``, or ``skipped-budget``; a failing check
adds a ``<key>_witness`` row.  When nothing failed but some check was
skipped for budget, the command exits 3 so scripts cannot mistake a
half-run report for a clean one.

Common flags on every subcommand: ``--budget N`` caps table probes per
scan (default 10^8), ``--seed`` fixes the RNG for sampled checks, and
``--threads`` caps worker processes (accepted for interface stability; the
exact scans here are single-process).
"""

from __future__ import annotations

import argparse
import ast
import itertools
import os
import sys
import time
from dataclasses import dataclass, field

from .arity import ArityPlan, apply_plan
from .core import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    FormatError,
    PolyadicSystem,
    dumps_operation,
    load_system,
)
from .fixtures import fixture_by_name, fixture_names
from .grouplike import (
    check_dornte,
    querelement,
    querpower,
    querpower_heine_check,
)
from .hopf import (
    TernaryBialgebra,
    algebra_from_polytns,
    check_antipode,
    check_bialgebra,
    check_coassociativity,
    check_counits,
    check_quasifiveangular,
    check_ternary_associativity,
    check_ternary_ybe,
    check_units,
    coalgebra_from_polytns,
    random_ybe_failures,
    read_polytns,
    solve_skew_antipode,
)
from .morphisms import (
    HeteroShape,
    classify_shape,
    enumerate_heteromorphisms,
    is_derived,
    load_map,
    shape_params,
    verify_heteromorphism,
)
from .properties import (
    cancellative_places,
    classify,
    find_identities,
    find_zero,
    is_commutative,
    is_medial,
    is_semicommutative,
    is_totally_associative,
    solvable_places,
)
from .quivers import (
    generate_quivers,
    is_associative_quiver,
    load_quiver,
    save_quiver,
    word_refutation,
)
from .representations import (
    i_regular_representation,
    middle_regular_representation,
    spectral_check,
    ternary_left_regular,
    ternary_right_regular,
    verify_multiplace_rep,
    verify_ternary_rep,
)

_SKIP = object()


def _fmt(value) -> str:
    """Canonical tab-free rendering for machine-block values."""
    if value is None:
        return "none"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, str):
        return value
    if isinstance(value, (tuple, list)):
        return "(" + ",".join(_fmt(v) for v in value) + ")"
    return str(value)


def _fmt_float(v: float) -> str:
    if v == 0:
        v = 0.0
    return f"{v:.12g}"


@dataclass
class Report:
    """Accumulates the machine block and the pass/fail/skip state."""

    human: list[str] = field(default_factory=list)
    rows: list[tuple[str, str]] = field(default_factory=list)
    failed: bool = False
    skipped: bool = False

    def say(self, line: str) -> None:
        self.human.append(line)

    def add(self, key: str, value) -> None:
        self.rows.append((key, _fmt(value)))

    def check(self, key: str, chk) -> None:
        self.add(key, "pass" if chk.ok else "fail")
        if not chk.ok:
            self.failed = True
            if chk.witness is not None:
                self.add(f"{key}_witness", chk.witness)

    def guard(self, key: str, fn):
        """Run fn; on BudgetExceeded record a skipped-budget row and return
        the _SKIP sentinel (fn may legitimately return None)."""
        try:
            return fn()
        except BudgetExceeded:
            self.skipped = True
            self.add(key, "skipped-budget")
            return _SKIP

    def finish(self) -> int:
        status = "fail" if self.failed else ("skipped-budget" if self.skipped else "pass")
        self.add("status", status)
        for line in self.human:
            print(line)
        if self.human:
            print()
        for key, value in self.rows:
            print(f"{key}\t{value}")
        return 1 if self.failed else (3 if self.skipped else 0)


def _start(command: str, args, **params) -> Report:
    rep = Report()
    rep.add("command", command)
    for key, value in params.items():
        rep.add(key, value)
    rep.add("budget", args.budget if args.budget is not None else DEFAULT_BUDGET)
    return rep


# -- check ---------------------------------------------------------------------

_CHECK_FLAGS = ("assoc", "medial", "commut", "cancel", "solve", "zero", "identity", "classify")


def cmd_check(args) -> int:
    system = load_system(args.file)
    rep = _start("check", args, file=args.file)
    rep.add("arity", system.arity)
    rep.add("size", system.size)
    requested = [name for name in _CHECK_FLAGS if getattr(args, name)]
    if not requested:
        requested = list(_CHECK_FLAGS)
    budget = args.budget
    for name in requested:
        if name == "assoc":
            chk = rep.guard("assoc", lambda: is_totally_associative(system, budget))
            if chk is not _SKIP:
                rep.check("assoc", chk)
        elif name == "medial":
            chk = rep.guard("medial", lambda: is_medial(system, budget))
            if chk is not _SKIP:
                rep.check("medial", chk)
        elif name == "commut":
            rep.check("commut", is_commutative(system))
            rep.check("semicommut", is_semicommutative(system))
        elif name == "cancel":
            checks = cancellative_places(system)
            overall = all(c.ok for c in checks)
            rep.add("cancel", "pass" if overall else "fail")
            for i, chk in enumerate(checks, start=1):
                rep.check(f"cancel_{i}", chk)
        elif name == "solve":
            places = solvable_places(system)
            overall = all(s.exists and s.unique for s in places)
            rep.add("solve", "pass" if overall else "fail")
            if not overall:
                rep.failed = True
            for i, sol in enumerate(places, start=1):
                ok = sol.exists and sol.unique
                rep.add(f"solve_{i}", "pass" if ok else "fail")
                if not ok and sol.witness is not None:
                    rep.add(f"solve_{i}_witness", sol.witness)
            rep.add("quasigroup", overall)
        elif name == "zero":
            rep.add("zero", find_zero(system))
        elif name == "identity":
            ids = find_identities(system)
            rep.add("identities", tuple(ids) if ids else None)
        elif name == "classify":
            rep.add("classify", classify(system))
    return rep.finish()


# -- derive / reduce / arity-table ----------------------------------------------


def _parse_tree(spec: str):
    if spec in ("left", "right"):
        return spec
    try:
        tree = ast.literal_eval(spec)
    except (ValueError, SyntaxError) as exc:
        raise ValueError(f"bad placement tree {spec!r}: {exc}") from None
    if not isinstance(tree, (int, tuple)):
        raise ValueError(f"placement tree must be 'left', 'right', or a tuple, got {spec!r}")
    return tree


def _emit_operation(args, rep: Report, derived: PolyadicSystem, comment: str) -> int:
    text = dumps_operation(derived.op, comment=comment)
    if args.out is None:
        sys.stdout.write(text)
        return 0
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    rep.add("arity", derived.arity)
    rep.add("size", derived.size)
    rep.add("wrote", args.out)
    return rep.finish()


def cmd_derive(args) -> int:
    system = load_system(args.file)
    plan = ArityPlan("iterate", lmu=args.iterate, placement=_parse_tree(args.tree))
    derived = apply_plan(system, plan, args.budget)
    rep = _start("derive", args, file=args.file, lmu=args.iterate, tree=args.tree)
    comment = f"derived: iterate lmu={args.iterate} tree={args.tree} from {args.file}"
    return _emit_operation(args, rep, derived, comment)


def _parse_constants(spec: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    for part in spec.split(","):
        bits = part.split(":")
        if len(bits) != 2:
            raise ValueError(f"bad constant {part!r}: want pos:val")
        try:
            pairs.append((int(bits[0]), int(bits[1])))
        except ValueError:
            raise ValueError(f"bad constant {part!r}: want integer pos:val") from None
    return tuple(pairs)


def cmd_reduce(args) -> int:
    system = load_system(args.file)
    constants = _parse_constants(args.const)
    plan = ArityPlan("reduce", constants=constants)
    derived = apply_plan(system, plan, args.budget)
    rep = _start("reduce", args, file=args.file, const=args.const)
    comment = f"derived: reduce const={args.const} from {args.file}"
    return _emit_operation(args, rep, derived, comment)


def cmd_arity_table(args) -> int:
    """TSV of admissible (k, lmu, lid, n') points: one block per fixed
    parameter.  For fixed lmu, k runs over lmu..(n-1)*lmu; for fixed lid,
    the quantization n' = n - (n-1)*lid/k bounds k by (n-1)*lid."""
    n = args.n
    if n < 2:
        raise ValueError("need n >= 2")
    if args.lmu is None and args.lid is None:
        raise ValueError("need --lmu and/or --lid")
    print("fixed\tk\tlmu\tlid\tnprime")
    if args.lmu is not None:
        lmu = args.lmu
        if lmu < 1:
            raise ValueError("need lmu >= 1")
        for k in range(lmu, (n - 1) * lmu + 1):
            try:
                n_prime, lid = shape_params(n, k, lmu)
            except ValueError:
                continue
            print(f"lmu\t{k}\t{lmu}\t{lid}\t{n_prime}")
    if args.lid is not None:
        lid = args.lid
        if lid < 1:
            raise ValueError("need lid >= 1 (lid = 0 rows live on the lmu curve)")
        for k in range(lid + 1, (n - 1) * lid + 1):
            try:
                n_prime, got_lid = shape_params(n, k, k - lid)
            except ValueError:
                continue
            if got_lid == lid:
                print(f"lid\t{k}\t{k - lid}\t{lid}\t{n_prime}")
    return 0


# -- quer ------------------------------------------------------------------------


def cmd_quer(args) -> int:
    system = load_system(args.file)
    rep = _start("quer", args, file=args.file)
    rep.add("arity", system.arity)
    rep.add("size", system.size)
    if args.element is not None:
        if not 0 <= args.element < system.size:
            raise ValueError(f"element {args.element} outside carrier 0..{system.size - 1}")
        elems = [args.element]
    else:
        elems = list(range(system.size))
    quers = {g: querelement(system, g) for g in elems}
    for g in elems:
        rep.add(f"quer_{g}", quers[g])
    if args.element is None:
        rep.add("all_quers", all(q is not None for q in quers.values()))
    if args.power is not None:
        k = args.power
        if k < 0:
            raise ValueError("need --power k >= 0")
        for g in elems:
            if quers[g] is None:
                rep.add(f"querpower_{g}_{k}", None)
                continue
            rep.add(f"querpower_{g}_{k}", querpower(system, g, k))
            ok = querpower_heine_check(system, g, k)
            rep.add(f"heine_{g}_{k}", "pass" if ok else "fail")
            if not ok:
                rep.failed = True
    if args.check_dornte:
        rep.check("dornte", check_dornte(system))
    return rep.finish()


# -- hetero ------------------------------------------------------------------------


def _parse_shape_spec(spec: str) -> tuple[int, int, tuple[int, ...] | None]:
    lmu = lid = None
    assign = None
    for part in spec.split(","):
        key, _, value = part.partition("=")
        if not value:
            raise ValueError(f"bad shape field {part!r}: want key=value")
        if key == "lmu":
            lmu = int(value)
        elif key == "lid":
            lid = int(value)
        elif key == "assign":
            try:
                assign = tuple(int(v) for v in value.split(":"))
            except ValueError:
                raise ValueError(f"bad assign {value!r}: want colon-separated integers") from None
        else:
            raise ValueError(f"unknown shape field {key!r}")
    if lmu is None or lid is None:
        raise ValueError("shape spec needs lmu=<int>,lid=<int>")
    return lmu, lid, assign


def _build_shape(source: PolyadicSystem, target: PolyadicSystem, places: int, spec: str) -> HeteroShape:
    lmu, lid, assign = _parse_shape_spec(spec)
    n, n_prime = source.arity, target.arity
    if assign is None:
        assign = tuple(range(places * n_prime))
    return HeteroShape(n, n_prime, places, lmu, lid, assign)


def cmd_hetero_verify(args) -> int:
    source = load_system(args.src)
    target = load_system(args.dst)
    phi = load_map(args.map)
    shape = _build_shape(source, target, phi.places, args.shape)
    rep = _start("hetero verify", args, src=args.src, dst=args.dst, map=args.map)
    rep.add("n", shape.n)
    rep.add("nprime", shape.n_prime)
    rep.add("k", shape.k)
    rep.add("lmu", shape.lmu)
    rep.add("lid", shape.lid)
    rep.add("kind", classify_shape(shape))
    chk = rep.guard("hetero", lambda: verify_heteromorphism(source, target, shape, phi, args.budget))
    if chk is not _SKIP:
        rep.check("hetero", chk)
    if args.derived:
        wit = rep.guard("derived", lambda: is_derived(phi, target, args.budget))
        if wit is not _SKIP:
            rep.add("derived", wit)
    return rep.finish()


def cmd_hetero_census(args) -> int:
    source = load_system(args.src)
    target = load_system(args.dst)
    if args.k is not None:
        places = args.k
    else:
        lmu, lid, _ = _parse_shape_spec(args.shape)
        places = lmu + lid
    shape = _build_shape(source, target, places, args.shape)
    rep = _start("hetero census", args, src=args.src, dst=args.dst)
    rep.add("n", shape.n)
    rep.add("nprime", shape.n_prime)
    rep.add("k", shape.k)
    rep.add("lmu", shape.lmu)
    rep.add("lid", shape.lid)
    found = rep.guard("census", lambda: enumerate_heteromorphisms(source, target, shape, args.budget))
    if found is _SKIP:
        return rep.finish()
    rep.add("count", len(found))
    for i, phi in enumerate(found):
        rep.add(f"map_{i}", " ".join(str(v) for v in phi.table))
    return rep.finish()


# -- quiver ------------------------------------------------------------------------

_FAMILY_NAMES = {
    "post": "post-like",
    "nonpost": "non-post",
    "vertical": "vertical",
    "intermediate": "intermediate",
    "all": "all",
}


def _quiver_line(quiver) -> str:
    bits = ["row " + " ".join(f"{p}:{c}" for p, c in row) for row in quiver.rows]
    if quiver.intacts:
        bits.append("intact " + " ".join(f"{p}:{c}" for p, c in quiver.intacts))
    return "; ".join(bits)


def cmd_quiver_gen(args) -> int:
    n, n_prime, k = args.n, args.nprime, args.k
    num = k * (n_prime - 1)
    if n < 2 or num % (n - 1):
        raise ValueError(f"no integral lmu for n={n}, n'={n_prime}, k={k}")
    lmu = num // (n - 1)
    lid = k - lmu
    quivers = generate_quivers(n, n_prime, k, lmu, lid, _FAMILY_NAMES[args.family])
    rep = _start("quiver gen", args, n=n, nprime=n_prime, k=k, lmu=lmu, lid=lid, family=args.family)
    rep.add("count", len(quivers))
    for i, quiver in enumerate(quivers):
        rep.add(f"quiver_{i}", _quiver_line(quiver))
    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)
        for i, quiver in enumerate(quivers):
            path = os.path.join(args.out, f"quiver-{i:03d}.qvr")
            save_quiver(quiver, path, comment=f"family {args.family} #{i}")
            rep.add(f"wrote_{i}", path)
    return rep.finish()


def cmd_quiver_test(args) -> int:
    quiver = load_quiver(args.quiver)
    rep = _start("quiver test", args, quiver=args.quiver)
    rep.add("n", quiver.n)
    rep.add("k", quiver.k)
    rep.add("nprime", quiver.n_prime)
    rep.add("lmu", quiver.lmu)
    rep.add("lid", quiver.lid)
    refutation = word_refutation(quiver)
    rep.add("word_assoc", "pass" if refutation is None else "fail")
    if refutation is not None:
        rep.failed = True
        rep.add("word_assoc_witness", refutation)
    systems = [load_system(args.system)] if args.system else None
    sample = args.sample
    chk = rep.guard(
        "induced_assoc",
        lambda: is_associative_quiver(quiver, systems, args.budget, sample, args.seed),
    )
    if chk is not _SKIP:
        if sample is not None:
            rep.add("sample", sample)
            rep.add("seed", args.seed)
        rep.check("induced_assoc", chk)
    return rep.finish()


# -- repr ------------------------------------------------------------------------


def _build_rep(args, system: PolyadicSystem):
    """Rep table keyed by tuples, from --kind (ternary) or --i (slot)."""
    if (args.kind is None) == (args.i is None):
        raise ValueError("give exactly one of --kind or --i")
    if args.kind is not None:
        builders = {
            "left": ternary_left_regular,
            "right": ternary_right_regular,
            "middle": middle_regular_representation,
        }
        rep_obj = builders[args.kind](system)
        keys = [(g, h) for g in range(system.size) for h in range(system.size)]
        return rep_obj, keys, rep_obj.__call__
    rep_obj = i_regular_representation(system, args.i, args.budget)
    keys = list(itertools.product(range(system.size), repeat=rep_obj.k))
    return rep_obj, keys, rep_obj.__call__


def _matrix_classes(keys, mat_of):
    """Group keys (lex order) by equal matrix; classes ordered by first
    appearance, so the output is deterministic."""
    order = []
    groups: dict = {}
    for key in keys:
        mat = mat_of(*key)
        if mat not in groups:
            groups[mat] = []
            order.append(mat)
        groups[mat].append(key)
    return [(mat, groups[mat]) for mat in order]


def cmd_repr_regular(args) -> int:
    system = load_system(args.file)
    rep_obj, keys, mat_of = _build_rep(args, system)
    classes = _matrix_classes(keys, mat_of)
    rep = _start("repr regular", args, file=args.file)
    if args.kind is not None:
        rep.add("kind", args.kind)
    else:
        rep.add("slot", args.i)
    rep.add("dim", rep_obj.dim)
    rep.add("classes", len(classes))
    for c, (mat, members) in enumerate(classes):
        rep.say(f"class {c}: args " + " ".join(_fmt(key) for key in members))
        for row in mat:
            rep.say(" ".join(str(v) for v in row))
        rep.say("")
        rep.add(f"class_{c}_args", tuple(members))
        rep.add(f"class_{c}_matrix", mat)
    return rep.finish()


def cmd_repr_verify(args) -> int:
    system = load_system(args.file)
    rep_obj, _, _ = _build_rep(args, system)
    rep = _start("repr verify", args, file=args.file)
    if args.kind is not None:
        rep.add("kind", args.kind)
        chk = rep.guard("rep", lambda: verify_ternary_rep(rep_obj, args.budget))
    else:
        rep.add("slot", args.i)
        chk = rep.guard("rep", lambda: verify_multiplace_rep(rep_obj, args.budget))
    if chk is not _SKIP:
        rep.check("rep", chk)
    return rep.finish()


def cmd_repr_spectrum(args) -> int:
    system = load_system(args.file)
    rep_obj, keys, mat_of = _build_rep(args, system)
    if args.pair is not None:
        try:
            key = tuple(int(v) for v in args.pair.split(","))
        except ValueError:
            raise ValueError(f"bad --pair {args.pair!r}: want comma-separated integers") from None
        reps = [key]
    else:
        reps = [members[0] for _, members in _matrix_classes(keys, mat_of)]
    print("args\tre\tim")
    for key in reps:
        for z in spectral_check(mat_of(*key)):
            print(f"{_fmt(key)}\t{_fmt_float(z.real)}\t{_fmt_float(z.imag)}")
    return 0


# -- hopf ------------------------------------------------------------------------


def _field_name(field_obj) -> str:
    return "Q" if field_obj.p is None else f"F{field_obj.p}"


def _read_polytns_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return read_polytns(fh.read())


def _read_r_tensor(path: str, data) -> tuple:
    rdata = _read_polytns_file(path)
    if rdata.field != data.field or rdata.dim != data.dim:
        raise ValueError("R tensor field/dim do not match the algebra")
    if "R" not in rdata.tensors:
        raise ValueError("YBE file has no R tensor")
    return rdata.tensors["R"]


def cmd_hopf_check(args) -> int:
    data = _read_polytns_file(args.file)
    alg = algebra_from_polytns(data)
    r = _read_r_tensor(args.ybe, data) if args.ybe is not None else None
    rep = _start("hopf check", args, file=args.file)
    rep.add("field", _field_name(data.field))
    rep.add("dim", data.dim)

    chk = rep.guard("ass", lambda: check_ternary_associativity(alg, args.budget))
    if chk is not _SKIP:
        rep.check("ass", chk)
    if alg.unit is not None:
        rep.check("unit", check_units(alg))
    else:
        rep.add("unit", None)

    s_flat = data.tensors.get("S")
    s_matrix = None
    if s_flat is not None:
        d = data.dim
        s_matrix = tuple(tuple(s_flat[r * d + c] for c in range(d)) for r in range(d))
        rep.add("antipode", "declared")

    if "delta3" not in data.tensors:
        rep.add("delta3", None)
    else:
        coalg = coalgebra_from_polytns(data)
        chk = rep.guard("coass", lambda: check_coassociativity(coalg, "standard", args.budget))
        if chk is not _SKIP:
            rep.check("coass", chk)
        if coalg.counit is not None:
            rep.check("counit", check_counits(coalg))
        else:
            rep.add("counit", None)
        bialg = TernaryBialgebra(alg, coalg, s_matrix)
        chk = rep.guard("md", lambda: check_bialgebra(bialg, args.budget))
        if chk is not _SKIP:
            rep.check("md", chk)
        if s_matrix is not None:
            rep.check("as", check_antipode(bialg, variant=args.antipode or "skew"))
        elif args.antipode == "strong":
            raise ValueError("strong antipode check needs a declared S tensor")
        elif args.antipode == "skew":
            solved, unique = solve_skew_antipode(bialg)
            rep.add("antipode_solved", solved is not None)
            rep.add("antipode_unique", unique)
            if solved is None:
                rep.add("as", "fail")
                rep.failed = True
            else:
                rep.add("antipode_matrix", solved)
                rep.check("as", check_antipode(bialg, s=solved, variant="skew"))

        if r is not None:
            residuals = rep.guard("fiveangular", lambda: check_quasifiveangular(bialg, r, args.budget))
            if residuals is not _SKIP:
                for name in ("r1a", "r2a", "r3a"):
                    rep.add(f"{name}_residual", residuals[name])
                    rep.add(name, "pass" if residuals[name] == 0 else "fail")
                    if residuals[name] != 0:
                        rep.failed = True

    if r is not None:
        res = rep.guard("r5", lambda: check_ternary_ybe(alg, r, args.budget))
        if res is not _SKIP:
            rep.add("r5_residual", res)
            rep.add("r5", "pass" if res == 0 else "fail")
            if res != 0:
                rep.failed = True

    if args.ybe_random is not None:
        failures = random_ybe_failures(alg, args.ybe_random, args.seed)
        rep.add("seed", args.seed)
        rep.add("ybe_random_failures", failures)
    return rep.finish()


# -- fixtures ----------------------------------------------------------------------


def cmd_fixtures(args) -> int:
    if args.list:
        for name in fixture_names():
            print(f"fixture\t{name}")
        return 0
    if args.name is None:
        raise ValueError("give a fixture name or --list")
    try:
        system = fixture_by_name(args.name)
    except KeyError:
        raise ValueError(
            f"unknown fixture name {args.name!r}; run 'polyadika fixtures --list'"
        ) from None
    out = args.out if args.out is not None else f"{args.name}.pop"
    text = dumps_operation(system.op, comment=f"fixture {args.name}")
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)
    rep = _start("fixtures", args, fixture=args.name)
    rep.add("arity", system.arity)
    rep.add("size", system.size)
    rep.add("entries", len(system.op.table))
    rep.add("wrote", out)
    return rep.finish()


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, metavar="N",
                        help="probe cap per scan (default 10^8)")
    common.add_argument("--seed", type=int, default=0, metavar="N",
                        help="RNG seed for sampled checks (default 0)")
    common.add_argument("--threads", type=int, default=1, metavar="N",
                        help="worker cap (interface stability; scans are single-process)")

    parser = argparse.ArgumentParser(
        prog="polyadika",
        description="exact computation with finite n-ary operations",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("check", parents=[common], help="property report for an operation table")
    p.add_argument("file", help="polyop file")
    for flag in _CHECK_FLAGS:
        p.add_argument(f"--{flag}", action="store_true", help=f"run the {flag} check")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("derive", parents=[common], help="iterate an operation into a longer one")
    p.add_argument("file", help="polyop file")
    p.add_argument("--iterate", type=int, required=True, metavar="L", help="number of multiplications lmu")
    p.add_argument("--tree", default="right", metavar="SPEC",
                   help="placement: left, right, or a tuple of leaf positions like ((0,1,2),3,4)")
    p.add_argument("--out", default=None, metavar="PATH", help="write here instead of stdout")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("reduce", parents=[common], help="fix argument slots to constants")
    p.add_argument("file", help="polyop file")
    p.add_argument("--const", required=True, metavar="POS:VAL[,POS:VAL...]",
                   help="0-based slot positions and carrier values")
    p.add_argument("--out", default=None, metavar="PATH", help="write here instead of stdout")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("arity-table", parents=[common],
                       help="TSV of admissible final arities n'(k)")
    p.add_argument("--n", type=int, required=True, help="initial arity")
    p.add_argument("--lmu", type=int, default=None, help="fixed number of multiplications")
    p.add_argument("--lid", type=int, default=None, help="fixed number of intact elements")
    p.set_defaults(func=cmd_arity_table)

    p = sub.add_parser("quer", parents=[common], help="querelements and querpowers")
    p.add_argument("file", help="polyop file")
    p.add_argument("--element", type=int, default=None, metavar="G", help="restrict to one element")
    p.add_argument("--power", type=int, default=None, metavar="K",
                   help="report quer^K and the Heine exponent identity")
    p.add_argument("--check-dornte", action="store_true", help="run the Doernte relations")
    p.set_defaults(func=cmd_quer)

    p = sub.add_parser("hetero", help="multiplace maps between operations")
    hsub = p.add_subparsers(dest="subcommand", required=True, metavar="subcommand")
    p = hsub.add_parser("verify", parents=[common], help="check one map against a shape")
    p.add_argument("--src", required=True, help="source polyop file")
    p.add_argument("--dst", required=True, help="target polyop file")
    p.add_argument("--map", required=True, help="polymap file")
    p.add_argument("--shape", required=True, metavar="lmu=L,lid=K[,assign=V0:V1:...]",
                   help="shape spec; assign defaults to the plain-order assignment")
    p.add_argument("--derived", action="store_true",
                   help="also search for a unary map whose fold gives this map")
    p.set_defaults(func=cmd_hetero_verify)
    p = hsub.add_parser("census", parents=[common], help="enumerate all maps for a shape")
    p.add_argument("--src", required=True, help="source polyop file")
    p.add_argument("--dst", required=True, help="target polyop file")
    p.add_argument("--shape", required=True, metavar="lmu=L,lid=K[,assign=...]")
    p.add_argument("--k", type=int, default=None,
                   help="number of places (default lmu+lid from the shape)")
    p.set_defaults(func=cmd_hetero_census)

    p = sub.add_parser("quiver", help="associativity quivers")
    qsub = p.add_subparsers(dest="subcommand", required=True, metavar="subcommand")
    p = qsub.add_parser("gen", parents=[common], help="generate associative quivers")
    p.add_argument("--n", type=int, required=True, help="initial arity")
    p.add_argument("--nprime", type=int, required=True, help="induced arity")
    p.add_argument("--k", type=int, required=True, help="number of places")
    p.add_argument("--family", choices=sorted(_FAMILY_NAMES), default="all")
    p.add_argument("--out", default=None, metavar="DIR", help="also write one .qvr file per quiver")
    p.set_defaults(func=cmd_quiver_gen)
    p = qsub.add_parser("test", parents=[common], help="test a quiver for associativity")
    p.add_argument("--quiver", required=True, help="polyqvr file")
    p.add_argument("--system", default=None, help="polyop file (default: standard test systems)")
    p.add_argument("--sample", type=int, default=None, metavar="N",
                   help="seeded random probes instead of the exhaustive scan")
    p.set_defaults(func=cmd_quiver_test)

    p = sub.add_parser("repr", help="regular representations")
    rsub = p.add_subparsers(dest="subcommand", required=True, metavar="subcommand")
    for name, func, extra in (
        ("regular", cmd_repr_regular, "matrix classes, exact integer grids"),
        ("verify", cmd_repr_verify, "check the composition laws"),
        ("spectrum", cmd_repr_spectrum, "TSV eigenvalues of class representatives"),
    ):
        p = rsub.add_parser(name, parents=[common], help=extra)
        p.add_argument("file", help="polyop file")
        p.add_argument("--kind", choices=("left", "right", "middle"), default=None,
                       help="ternary pair representation")
        p.add_argument("--i", type=int, default=None, metavar="SLOT",
                       help="1-based translation slot for the multiplace representation")
        if name == "spectrum":
            p.add_argument("--pair", default=None, metavar="G,H",
                           help="one argument tuple instead of class representatives")
        p.set_defaults(func=func)

    p = sub.add_parser("hopf", help="ternary algebra structure files")
    hopfsub = p.add_subparsers(dest="subcommand", required=True, metavar="subcommand")
    p = hopfsub.add_parser("check", parents=[common], help="check polytns structure constants")
    p.add_argument("file", help="polytns file with mu3 (and optionally delta3, eps, unit, S)")
    p.add_argument("--antipode", choices=("skew", "strong"), default=None,
                   help="antipode law to check; skew is solved for when no S is declared")
    p.add_argument("--ybe", default=None, metavar="R.tns",
                   help="polytns file with an R tensor for the fiveangular laws")
    p.add_argument("--ybe-random", type=int, default=None, metavar="N",
                   help="count seeded random R tensors violating the Yang-Baxter law")
    p.set_defaults(func=cmd_hopf_check)

    p = sub.add_parser("fixtures", parents=[common], help="write a named fixture table")
    p.add_argument("name", nargs="?", default=None, help="fixture name")
    p.add_argument("--out", default=None, metavar="PATH", help="output path (default <name>.pop)")
    p.add_argument("--list", action="store_true", help="list fixture names")
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    start = time.monotonic()
    try:
        code = args.func(args)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"elapsed {time.monotonic() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

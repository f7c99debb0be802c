"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical precondition fails (the
message names it), 2 for usage errors and unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import covers, duality, lefschetz, spaces, structure
from .exact_sequence import (
    ExactSequenceSpec,
    InconsistentSequenceError,
    handlebody_sequence,
    les_rank_solver,
    t2xi_sequence,
)
from .homology import homology
from .matrix import Matrix, MatrixSizeError, char_poly, smith_normal_form
from .modelio import CoverInput, ModelFileError, expect_kind, load_model
from .poly import Poly, parse_number
from .spectral import NotHyperbolicError, is_roots_of_unity_only, spectral_radius_exceeds_one


class UsageError(Exception):
    """Bad command-line input; exit status 2."""


class DomainError(Exception):
    """Violated mathematical precondition; exit status 1."""


DOMAIN_ERRORS = (
    ValueError,
    ZeroDivisionError,
    NotHyperbolicError,
    MatrixSizeError,
    InconsistentSequenceError,
    structure.ModelError,
    covers.LiftError,
)


# -- output helpers ---------------------------------------------------------


def _jsonable(x: Any) -> Any:
    """Integers and fractions become decimal strings; containers recurse."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, Matrix):
        return [[str(v) for v in r] for r in x.entries]
    if isinstance(x, Poly):
        return [str(c) for c in x.coeffs]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


class Report:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.data: dict[str, Any] = {}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def set(self, key: str, value: Any) -> None:
        self.data[key] = value

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(_jsonable(self.data), indent=2) + "\n"
        return "\n".join(self.lines) + "\n"


def _agree(a: Any, b: Any) -> str:
    return "AGREE" if a == b else "DISAGREE"


_NUM_RE = re.compile(r"(?<![\"\w/])([+-]?\d+(?:/\d+)?)(?![\"\w/])")


def parse_matrix(text: str, square: bool = True) -> Matrix:
    """Parse '[[2,1],[1,1]]'; entries may be p/q fractions."""
    try:
        data = json.loads(_NUM_RE.sub(r'"\1"', text))
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("expected a list of rows")
        rows = [[parse_number(str(v)) for v in r] for r in data]
        m = Matrix.from_rows(rows, cols=len(rows[0]) if rows else 0)
    except (ValueError, ZeroDivisionError, json.JSONDecodeError, IndexError) as exc:
        raise UsageError(f"cannot parse matrix {text!r}: {exc}") from None
    if square and not m.is_square:
        raise UsageError(f"matrix {text!r} is not square")
    return m


def parse_poly(text: str) -> Poly:
    """Ascending coefficient list such as '[1,-3,1]'."""
    try:
        data = json.loads(_NUM_RE.sub(r'"\1"', text))
        if not isinstance(data, list) or not data:
            raise ValueError("expected a non-empty coefficient list")
        return Poly.of([parse_number(str(v)) for v in data])
    except (ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc}") from None


def _integer_matrix(m: Matrix, what: str) -> Matrix:
    if not m.is_integral:
        raise UsageError(f"{what} needs integer entries")
    return m


def _load(path: str | None, wanted: str | tuple[str, ...]) -> Any:
    if path is None:
        raise UsageError("no input given; see --help")
    kind, obj = load_model(path)
    return expect_kind(kind, obj, wanted)


def _toral_matrix(args: argparse.Namespace) -> Matrix:
    if args.matrix is not None:
        return _integer_matrix(parse_matrix(args.matrix), "toral map")
    if args.model is not None:
        return _load(args.model, "toral_map").matrix
    raise UsageError("give --matrix or --model")


# -- subcommands ------------------------------------------------------------------


def cmd_snf(args: argparse.Namespace, r: Report) -> None:
    m = _integer_matrix(parse_matrix(args.matrix, square=False), "snf") if args.matrix else _load(args.model, "toral_map").matrix
    snf = smith_normal_form(m)
    r.line(f"M = {m}")
    r.line(f"D = {snf.D}")
    r.line(f"U = {snf.U}")
    r.line(f"V = {snf.V}")
    r.line(f"invariant factors: {snf.invariant_factors}")
    r.line(f"rank: {snf.rank}")
    r.line(f"check U*M*V = D: {'ok' if snf.U @ m @ snf.V == snf.D else 'FAILED'}")
    r.data.update(matrix=m, U=snf.U, D=snf.D, V=snf.V, invariant_factors=snf.invariant_factors, rank=snf.rank)


def cmd_charpoly(args: argparse.Namespace, r: Report) -> None:
    if args.poly is not None:
        p = parse_poly(args.poly)
        r.line(f"poly: {p}")
    else:
        m = parse_matrix(args.matrix) if args.matrix else _load(args.model, "toral_map").matrix
        p = char_poly(m)
        r.line(f"char poly: {p}")
    r.set("char_poly", p)
    if p.is_integral:
        ru = is_roots_of_unity_only(p)
        big = spectral_radius_exceeds_one(p)
        r.line(f"roots of unity only: {'yes' if ru else 'no'}")
        r.line(f"spectral radius > 1: {'yes' if big else 'no'}")
        r.data.update(roots_of_unity_only=ru, spectral_radius_exceeds_one=big)
    else:
        r.line("spectral predicates: skipped, coefficients are not integers")


def cmd_homology(args: argparse.Namespace, r: Report) -> None:
    if args.model:
        pair = _load(args.model, "chain_pair")
    elif args.space:
        params = {}
        if args.genus is not None:
            params["genus"] = args.genus
        if args.n is not None:
            params["n"] = args.n
        pair = spaces.build_standard_space(args.space, **params)
    else:
        raise UsageError("give --space or --model")
    mode = "relative" if args.relative else "absolute"
    groups = homology(pair, mode)
    title = pair.name or "X"
    r.line(f"space: {title} ({mode})")
    r.line(f"cells: {[pair.cell_count(k) for k in range(pair.top_dimension + 1)]}")
    for k in reversed(range(len(groups))):
        h = groups[k]
        torsion = ", ".join(str(t) for t in h.torsion) or "-"
        r.line(f"H_{k} = {h}    rank {h.free_rank}  torsion {torsion}")
    chi_h = sum((-1) ** k * h.free_rank for k, h in enumerate(groups))
    chi_c = pair.euler_characteristic(mode)
    r.line(f"euler characteristic: {chi_h} (cells {chi_c}) {_agree(chi_h, chi_c)}")
    r.data.update(space=title, mode=mode,
                  groups=[{"degree": k, "free_rank": h.free_rank, "torsion": list(h.torsion)} for k, h in enumerate(groups)],
                  euler=chi_h)


def cmd_les(args: argparse.Namespace, r: Report) -> None:
    if args.model:
        spec: ExactSequenceSpec = _load(args.model, "exact_sequence")
    elif args.preset == "handlebody":
        if args.genus is None or args.genus < 0:
            raise UsageError("--preset handlebody needs --genus >= 0")
        spec = handlebody_sequence(args.genus)
    elif args.preset == "T2xI":
        spec = t2xi_sequence()
    else:
        raise UsageError("give --preset or --model")
    sol = les_rank_solver(spec)
    r.line(f"sequence: {spec.name or '-'}")
    r.line(f"status: {sol.status}")
    for t, rank in zip(spec.terms, sol.term_ranks):
        given = "given" if t.rank is not None else "solved"
        r.line(f"  {t.label}: {'?' if rank is None else rank} ({given})")
    r.data.update(sequence=spec.name, status=sol.status,
                  terms=[{"label": t.label, "rank": rk, "given": t.rank is not None}
                         for t, rk in zip(spec.terms, sol.term_ranks)],
                  arrows=[{"label": a.label, "rank": rk} for a, rk in zip(spec.arrows, sol.arrow_ranks)],
                  undetermined=list(sol.undetermined))


def _family(args: argparse.Namespace) -> lefschetz.InducedMapFamily:
    if getattr(args, "solenoid", False):
        return lefschetz.solenoid_family()
    if args.model:
        kind, obj = load_model(args.model)
        obj = expect_kind(kind, obj, ("induced_family", "toral_map"))
        return obj if kind == "induced_family" else lefschetz.toral_induced_family(obj.matrix)
    if args.matrix:
        return lefschetz.toral_induced_family(_integer_matrix(parse_matrix(args.matrix), "toral map"))
    raise UsageError("give --matrix, --model or --solenoid")


def _check_m(m: int) -> None:
    if m < 1:
        raise UsageError("--m must be >= 1")


def cmd_lefschetz(args: argparse.Namespace, r: Report) -> None:
    _check_m(args.m)
    fam = _family(args)
    traces = [int((a ** args.m).trace()) for a in fam.matrices]
    lef = lefschetz.lefschetz_number(fam, args.m)
    r.line(f"traces of f_*k^{args.m}: {traces}")
    r.line(f"L(f^{args.m}) = {lef}")
    r.data.update(m=args.m, traces=traces, lefschetz=lef)


def cmd_count(args: argparse.Namespace, r: Report) -> None:
    _check_m(args.m)
    m = args.m
    if args.solenoid:
        res = lefschetz.periodic_count_formula(lefschetz.solenoid_family(), m)
        oracle = lefschetz.solenoid_count(m)
        oracle_name = "doubling-map enumeration"
        extra: dict[str, Any] = {}
    else:
        a = _toral_matrix(args)
        res = lefschetz.periodic_count_formula(lefschetz.toral_induced_family(a), m)
        oracle = lefschetz.toral_periodic_points_bruteforce(a, m)
        oracle_name = "lattice enumeration"
        extra = {"det": lefschetz.toral_det_count(a, m)}
    r.line(f"N_{m} = {res.count}")
    r.line(f"  formula |L(f^{m})|: {res.count} (L = {res.lefschetz})")
    r.line(f"  oracle ({oracle_name}): {oracle} {_agree(res.count, oracle)}")
    if extra:
        r.line(f"  |det(A^{m} - I)|: {extra['det']} {_agree(res.count, extra['det'])}")
    r.line(f"  caveat: {res.caveat}")
    r.data.update(m=m, count=res.count, lefschetz=res.lefschetz, oracle=oracle,
                  agree=res.count == oracle and all(v == oracle for v in extra.values()),
                  caveat=res.caveat, **extra)


def cmd_index(args: argparse.Namespace, r: Report) -> None:
    df = parse_matrix(args.df)
    data = lefschetz.HyperbolicFixedPointData(df)
    idx = lefschetz.fixed_point_index(data)
    r.line(f"Df = {df}")
    r.line(f"index = {idx.index:+d}")
    r.line(f"unstable dimension u = {idx.unstable_dimension}")
    r.line(f"orientation sign = {idx.orientation_sign:+d}")
    r.line(f"(-1)^u * sign = {(-1) ** idx.unstable_dimension * idx.orientation_sign:+d} "
           f"{_agree(idx.index, (-1) ** idx.unstable_dimension * idx.orientation_sign)}")
    r.data.update(index=idx.index, unstable_dimension=idx.unstable_dimension, orientation_sign=idx.orientation_sign)


def cmd_verify(args: argparse.Namespace, r: Report) -> None:
    _check_m(args.m)
    a = _toral_matrix(args)
    fam = lefschetz.toral_induced_family(a)
    pts = lefschetz.toral_fixed_points(a, args.m)
    rep = lefschetz.verify_lefschetz_hopf(fam, pts, args.m)
    r.line(f"fixed points of f^{args.m}: {len(pts)}")
    r.line(f"sum of indices: {rep.index_sum}")
    r.line(f"L(f^{args.m}): {rep.lefschetz}")
    r.line(f"Lefschetz-Hopf: {_agree(rep.index_sum, rep.lefschetz)}")
    eq = lefschetz.equal_index_report(pts)
    r.line(f"equal indices: {'yes' if eq.all_equal else 'no'}")
    r.data.update(m=args.m, fixed_points=len(pts), index_sum=rep.index_sum, lefschetz=rep.lefschetz,
                  holds=rep.holds, equal_indices=eq.all_equal)


def cmd_dual(args: argparse.Namespace, r: Report) -> None:
    a = parse_matrix(args.matrix)
    b = duality.dual_map(a, args.sign)
    pa, pb = char_poly(a), char_poly(b)
    ok = duality.reciprocal_eigen_check(pa, pb, args.sign)
    prod = b.T @ a
    r.line(f"A = {a}")
    r.line(f"B = {b}")
    r.line(f"B^T A = {prod}")
    r.line(f"char A: {pa}")
    r.line(f"char B: {pb}")
    r.line(f"reciprocal eigenvalues: {'yes' if ok else 'no'}")
    r.line(f"cohomology transport of char B: {duality.cohomology_transport(pb, args.sign)}")
    r.data.update(A=a, B=b, BtA=prod, char_A=pa, char_B=pb, reciprocal=ok)


_SURFACES: dict[str, Callable[[], covers.CombinatorialManifold]] = {
    "RP2": covers.rp2_6,
    "T2": covers.torus_grid,
    "klein_bottle": covers.klein_grid,
    "S2": covers.sphere_tetrahedron,
}


def cmd_cover(args: argparse.Namespace, r: Report) -> None:
    vmap = None
    if args.model:
        inp: CoverInput = _load(args.model, "cover_input")
        base, vmap = inp.manifold, inp.self_map()
    elif args.surface:
        base = _SURFACES[args.surface]()
    else:
        raise UsageError("give --surface or --model")
    if args.involution:
        vmap = covers.CellularSelfMap(base, covers.first_involution(base))
    oc = covers.orientation_character(base)
    cov = covers.oriented_double_cover(base)
    cx = cov.cover.chain_complex()
    groups = homology(cx)
    co = covers.orientation_character(cov.cover)
    deck_free = all(cov.deck(s) != s for fs in cov.cover.faces for s in fs)
    r.line(f"base: {base.name or '-'}  chi = {base.euler_characteristic()}  "
           f"{'orientable' if oc.orientable else 'non-orientable'}")
    r.line(f"cover: chi = {cov.cover.euler_characteristic()}  components = {len(cov.cover.components())}  "
           f"{'orientable' if co.orientable else 'non-orientable'}")
    r.line("cover homology: " + ", ".join(f"H_{k} = {h}" for k, h in enumerate(groups)))
    r.line(f"deck involution fixed-point-free: {'yes' if deck_free else 'no'}")
    r.data.update(base_orientable=oc.orientable, base_euler=base.euler_characteristic(),
                  cover_euler=cov.cover.euler_characteristic(), cover_components=len(cov.cover.components()),
                  cover_orientable=co.orientable, cover_homology=[str(h) for h in groups], deck_free=deck_free)
    if vmap is not None:
        rep = covers.lift_map(vmap, cov)
        r.line(f"lift: commuting square verified on {rep.cells_checked} cells")
        r.data["lift_cells_checked"] = rep.cells_checked


def cmd_order(args: argparse.Namespace, r: Report) -> None:
    model = _load(args.model, "structure_model")
    res = structure.smale_order(model)
    if res.ok:
        r.line("order: " + " < ".join(res.order))
        r.line(f"unique: {'yes' if res.unique else 'no'}")
    else:
        r.line("cycle: " + " < ".join(res.cycle) + f" < {res.cycle[0]}")
    r.data.update(order=list(res.order) if res.order else None, unique=res.unique,
                  cycle=list(res.cycle) if res.cycle else None)


def cmd_ledger(args: argparse.Namespace, r: Report) -> None:
    model = _load(args.model, "structure_model")
    entries = structure.pair_ledger(model, reverse=args.reverse)
    r.line(f"model: {model.name or '-'}{' (inverse map)' if args.reverse else ''}")
    r.line("basic set      H^0 | H^1 | H^2 | H^3")
    for e in entries:
        r.line(f"{e.basic_set:<14} " + " | ".join(str(c) for c in e.classes) + f"    [{e.note}]")
    r.data["ledger"] = [{"basic_set": e.basic_set, "classes": [str(c) for c in e.classes],
                         "ranks": list(e.ranks), "note": e.note} for e in entries]


def _check_one(path: str) -> tuple[str, Report, int]:
    r = Report()
    try:
        model = _load(path, "structure_model")
        res = structure.theorem_check(model)
    except ModelFileError as exc:
        r.line(f"error: {exc}")
        r.set("error", str(exc))
        return path, r, 2
    except DOMAIN_ERRORS as exc:
        r.line(f"error: {exc}")
        r.set("error", str(exc))
        return path, r, 1
    r.line(f"model: {model.name or Path(path).stem}")
    r.line(f"verdict: {res.verdict}")
    for t in res.trace:
        r.line(f"  {t}")
    r.data.update(model=model.name, verdict=res.verdict, attractor=res.attractor,
                  trace=[{"step": t.step, "outcome": t.outcome, "detail": t.detail} for t in res.trace])
    return path, r, 0


def cmd_check(args: argparse.Namespace, r: Report) -> int:
    if args.all:
        d = Path(args.all)
        if not d.is_dir():
            raise UsageError(f"{args.all} is not a directory")
        paths = sorted(str(p) for p in d.glob("*.model"))
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(_check_one, paths))
        status = 0
        out = []
        for path, rep, code in results:
            r.line(f"== {Path(path).name}")
            r.lines.extend(rep.lines)
            out.append({"file": Path(path).name, **rep.data})
            status = max(status, code)
        r.data["results"] = out
        return status
    if not args.model:
        raise UsageError("give a model file or --all DIR")
    _, rep, code = _check_one(args.model)
    r.lines, r.data = rep.lines, rep.data
    if code == 2:
        raise ModelFileError(rep.data["error"])
    if code == 1:
        raise DomainError(rep.data["error"])
    return 0


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    p = argparse.ArgumentParser(prog="hypdyn", parents=[common],
                                description="Exact homology and Lefschetz counting for hyperbolic dynamics models.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    s = add("snf", "Smith normal form of an integer matrix")
    s.add_argument("--matrix")
    s.add_argument("--model")

    s = add("charpoly", "characteristic polynomial and spectral predicates")
    s.add_argument("--poly", help="ascending coefficients, e.g. '[1,-3,1]'")
    s.add_argument("--matrix")
    s.add_argument("--model")

    s = add("homology", "integral homology of a standard space or chain-pair model")
    s.add_argument("--space", choices=spaces.SPACE_NAMES)
    s.add_argument("--genus", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--relative", action="store_true")
    s.add_argument("--model")

    s = add("les", "solve ranks in a long exact sequence")
    s.add_argument("--preset", choices=("handlebody", "T2xI"))
    s.add_argument("--genus", type=int)
    s.add_argument("--model")

    for name, help_text in (("lefschetz", "Lefschetz number of an iterate"),
                            ("count", "periodic-point count, formula against oracle")):
        s = add(name, help_text)
        s.add_argument("--matrix")
        s.add_argument("--model")
        s.add_argument("--solenoid", action="store_true")
        s.add_argument("--m", type=int, default=1)

    s = add("index", "fixed-point index of a hyperbolic derivative")
    s.add_argument("--df", required=True)

    s = add("verify", "Lefschetz-Hopf check on a toral automorphism")
    s.add_argument("--matrix")
    s.add_argument("--model")
    s.add_argument("--m", type=int, default=1)

    s = add("dual", "dual map and reciprocal eigenvalues")
    s.add_argument("--matrix", required=True)
    s.add_argument("--sign", type=int, choices=(1, -1), default=1)

    s = add("cover", "orientation double cover and map lifting")
    s.add_argument("--surface", choices=sorted(_SURFACES))
    s.add_argument("--model")
    s.add_argument("--involution", action="store_true", help="lift the first simplicial involution")

    for name, help_text in (("order", "Smale order of a structure model"),
                            ("ledger", "spectral classes of the filtration pairs")):
        s = add(name, help_text)
        s.add_argument("model")
        if name == "ledger":
            s.add_argument("--reverse", action="store_true", help="classes for the inverse map")

    s = add("check", "replay the attractor exclusion argument")
    s.add_argument("model", nargs="?")
    s.add_argument("--all", metavar="DIR")
    return p


COMMANDS: dict[str, Callable[[argparse.Namespace, Report], Any]] = {
    "snf": cmd_snf, "charpoly": cmd_charpoly, "homology": cmd_homology, "les": cmd_les,
    "lefschetz": cmd_lefschetz, "count": cmd_count, "index": cmd_index, "verify": cmd_verify,
    "dual": cmd_dual, "cover": cmd_cover, "order": cmd_order, "ledger": cmd_ledger, "check": cmd_check,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    as_json = getattr(args, "json", False)
    r = Report()
    try:
        status = COMMANDS[args.command](args, r) or 0
    except (UsageError, ModelFileError) as exc:
        stderr.write(f"hypdyn {args.command}: error: {exc}\n")
        return 2
    except (DomainError, *DOMAIN_ERRORS) as exc:
        stderr.write(f"hypdyn {args.command}: {exc}\n")
        return 1
    stdout.write(r.render(as_json))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

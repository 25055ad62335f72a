"""Command-line front end.

Exit codes: 0 success, 1 a ``verify`` run found a bad witness, 2 parse or
validation error, 3 a resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from .chambers import default_jobs, enumerate_chambers, chamber_system
from .cohomology_engine import (canonical_class, depth, graded_local_cohomology, local_piece,
                                mcm_check, mcm_enumerate, singularity_sets)
from .errors import TooManyRays, ValidationError
from .lattice_geometry import face_lattice, validate_cone
from .simplicial import FieldSpec
from .toric_data import Divisor, MonomialIdeal, cosupport, sigma_m, support

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class ParseError(Exception):
    pass


class CapExceeded(Exception):
    pass


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise ParseError(f"{what}: expected comma-separated integers, got {text!r}") from None


def parse_ideal(value) -> MonomialIdeal:
    if value is None or value == "maximal":
        return MonomialIdeal.maximal()
    if isinstance(value, str):
        return MonomialIdeal.generated_by(_int_list(g, "ideal") for g in value.split(";"))
    if isinstance(value, dict) and isinstance(value.get("generators"), list):
        gens = value["generators"]
        if not all(isinstance(g, list) and all(isinstance(a, int) for a in g) for g in gens):
            raise ParseError("ideal generators must be lists of integers")
        return MonomialIdeal.generated_by(gens)
    raise ParseError("ideal must be \"maximal\" or {\"generators\": [[...], ...]}")


def load_problem(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("problem file must hold an object")
    for key in ("lattice_rank", "rays"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    if not isinstance(data["lattice_rank"], int):
        raise ParseError("lattice_rank must be an integer")
    rays = data["rays"]
    if not isinstance(rays, list) or not all(
            isinstance(r, list) and all(isinstance(a, int) and not isinstance(a, bool) for a in r)
            for r in rays):
        raise ParseError("rays must be a list of integer lists")
    div = data.get("divisor")
    if div is not None and not (isinstance(div, list) and all(isinstance(a, int) for a in div)):
        raise ParseError("divisor must be a list of integers")
    fld = data.get("field", {})
    if not isinstance(fld, dict) or not isinstance(fld.get("characteristic", 0), int):
        raise ParseError("field must be {\"characteristic\": int}")
    return data


class Problem:
    def __init__(self, data: dict, args):
        if data["lattice_rank"] > args.max_rank:
            raise CapExceeded(f"rank {data['lattice_rank']} exceeds the cap of {args.max_rank}")
        if len(data["rays"]) > args.max_rays:
            raise TooManyRays(len(data["rays"]), args.max_rays)
        self.cone = validate_cone(data["lattice_rank"], data["rays"])
        self.lattice = face_lattice(self.cone)
        div = data.get("divisor")
        if args.divisor is not None:
            div = _int_list(args.divisor, "--divisor")
        self.divisor = Divisor(tuple(div) if div is not None else (0,) * self.cone.nrays)
        self.divisor.check(self.cone)
        self.ideal = parse_ideal(args.ideal if args.ideal is not None else data.get("ideal"))
        self.ideal.check(self.cone)
        char = data.get("field", {}).get("characteristic", 0)
        if args.characteristic is not None:
            char = args.characteristic
        try:
            self.field = FieldSpec(char)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        self.jobs = args.jobs if args.jobs is not None else default_jobs()
        self.ray_cap = args.max_rays


# --- JSON helpers ------------------------------------------------------------

def _num(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


def _vec(v):
    return None if v is None else [_num(a) for a in v]


def _rays(s):
    return [i + 1 for i in sorted(s)]


def _face(f):
    return {"dim": f.dim, "rays": _rays(f.rays)}


def _faces(fs):
    return [_face(f) for f in sorted(fs, key=lambda f: (f.dim, sorted(f.rays)))]


def _dims(cd):
    return {str(d): v for d, v in zip(cd.degrees, cd.values)}


def _label(s):
    return "{" + ",".join(str(i) for i in _rays(s)) + "}"


# --- commands ----------------------------------------------------------------

def cmd_faces(p: Problem, args):
    out = {"rank": p.cone.rank, "nrays": p.cone.nrays, "faces": _faces(p.lattice.faces),
           "facets": [{"rays": _rays(f.rays), "normal": list(n)} for f, n in p.lattice.facets]}
    lines = [f"{len(p.lattice.faces)} faces of a rank {p.cone.rank} cone with {p.cone.nrays} rays"]
    for f in p.lattice.faces:
        lines.append(f"  dim {f.dim}  {f.label()}")
    lines.append("facet normals:")
    for f, n in p.lattice.facets:
        lines.append(f"  {f.label():<16} {list(n)}")
    return out, lines


def _ideal_json(ideal):
    return "maximal" if ideal.is_maximal else {"generators": [list(g) for g in ideal.generators]}


def cmd_support(p: Problem, args):
    s = support(p.cone, p.lattice, p.ideal)
    out = {"ideal": _ideal_json(p.ideal), "support": _faces(s.faces)}
    lines = [f"support ({len(s)} faces):"] + [f"  {f.label()}" for f in s]
    return out, lines


def _complex_rows(k):
    return [[i + 1 for i in f] for f in k.sorted_faces()]


def cmd_cosupport(p: Problem, args):
    xi = cosupport(p.lattice, support(p.cone, p.lattice, p.ideal))
    rows = _complex_rows(xi)
    out = {"ideal": _ideal_json(p.ideal), "faces": rows}
    lines = [f"cosupport ({len(rows)} faces):"] + ["  {" + ",".join(map(str, r)) + "}" for r in rows]
    return out, lines


def _chamber_json(r):
    return {"pi": _rays(r.pi), "strict_nonempty": r.strict_nonempty,
            "semistrict_nonempty": r.semistrict_nonempty,
            "real_witness": _vec(r.real_witness), "lattice_witness": _vec(r.lattice_witness),
            "recession_dim": r.recession_dim, "bounded": r.bounded,
            "cones_intersect": r.cones_intersect, "cohomology": _dims(r.cohomology)}


def cmd_chambers(p: Problem, args):
    xi = cosupport(p.lattice, support(p.cone, p.lattice, p.ideal))
    reps = enumerate_chambers(p.cone, p.lattice, p.divisor, xi, p.field,
                              ray_cap=p.ray_cap, jobs=p.jobs)
    strict = sum(r.strict_nonempty for r in reps)
    bounded = [r for r in reps if r.bounded and r.semistrict_nonempty]
    out = {"divisor": list(p.divisor), "chambers": [_chamber_json(r) for r in reps],
           "summary": {"subsets": len(reps), "strict_nonempty": strict,
                       "bounded_nonempty": len(bounded),
                       "bounded_pi": [_rays(r.pi) for r in bounded]}}
    lines = [f"{'pi':<14}{'strict':>7}{'semi':>6}{'rec':>5}{'bnd':>5}{'meet':>6}  "
             f"{'lattice witness':<18}reduced cohomology"]
    for r in reps:
        lw = "-" if r.lattice_witness is None else str(list(r.lattice_witness))
        lines.append(f"{r.label:<14}{'yes' if r.strict_nonempty else 'no':>7}"
                     f"{'yes' if r.semistrict_nonempty else 'no':>6}{r.recession_dim:>5}"
                     f"{'yes' if r.bounded else 'no':>5}{'yes' if r.cones_intersect else 'no':>6}  "
                     f"{lw:<18}{r.cohomology.nonzero() or '0'}")
    lines.append(f"{strict} of {len(reps)} strict chambers nonempty; "
                 f"{len(bounded)} bounded nonempty: {[r.label for r in bounded]}")
    return out, lines


def cmd_cohomology(p: Problem, args):
    if args.degree is None:
        raise ParseError("cohomology needs --degree a,b,...")
    m = _int_list(args.degree, "--degree")
    if len(m) != p.cone.rank:
        raise ParseError(f"--degree has {len(m)} entries, rank is {p.cone.rank}")
    rep = graded_local_cohomology(p.cone, p.lattice, p.divisor, p.ideal, m, p.field)
    xi = cosupport(p.lattice, support(p.cone, p.lattice, p.ideal))
    module = local_piece(xi, rep.sigma_m, p.field)
    out = {"degree": list(m), "sigma_m": _rays(rep.sigma_m), "dims": _dims(rep.dims),
           "module_dims": _dims(module),
           "convention": "dims[i] = reduced H^(i-2) of the cosupport restricted to sigma_m"}
    lines = [f"degree {list(m)}  sigma_m = {_label(rep.sigma_m)}",
             f"dims (formula):       {rep.dims.nonzero() or 'all zero'}",
             f"dims (module piece):  {module.nonzero() or 'all zero'}"]
    return out, lines


def cmd_depth(p: Problem, args):
    dp = depth(p.cone, p.lattice, p.divisor, p.field, ray_cap=p.ray_cap, jobs=p.jobs)
    return {"depth": dp, "rank": p.cone.rank, "divisor": list(p.divisor)}, [f"depth {dp} (rank {p.cone.rank})"]


def _mcm_json(cert):
    recs = [{"pi": _rays(r.pi), "disjunct": r.disjunct, "degrees": list(r.degrees),
             "search_bound": None if r.search is None else r.search.classical_bound}
            for r in cert.records]
    return {"verdict": cert.verdict, "pi": None if cert.pi is None else _rays(cert.pi),
            "degree": cert.degree, "witness": _vec(cert.witness), "records": recs}


def cmd_mcm(p: Problem, args):
    if args.action == "check":
        cert = mcm_check(p.cone, p.lattice, p.divisor, p.field, ray_cap=p.ray_cap, jobs=p.jobs)
        out = {"divisor": list(p.divisor), **_mcm_json(cert)}
        if cert.verdict:
            lines = ["MCM: yes"]
            for r in cert.records:
                if r.disjunct != "vanishing":
                    lines.append(f"  {_label(r.pi)}: cohomology in degrees {list(r.degrees)}, "
                                 f"no lattice point")
        else:
            lines = [f"MCM: no  (pi = {_label(cert.pi)}, H^{cert.degree} nonzero at "
                     f"m = {list(cert.witness)})"]
        return out, lines
    box = args.box
    if box > args.max_box:
        raise CapExceeded(f"box {box} exceeds the cap of {args.max_box}")
    res = mcm_enumerate(p.cone, p.lattice, box, p.field, ray_cap=p.ray_cap, jobs=p.jobs)
    out = {"box": box, "classes": [list(c) for c in res.classes],
           "classes_checked": res.classes_checked,
           "complete_within_box": res.complete_within_box, "note": res.note}
    lines = [f"{len(res.classes)} MCM classes among {res.classes_checked} classes "
             f"met by the box [-{box},{box}]^{p.cone.nrays} (complete within the box only):"]
    lines += [f"  {list(c)}" for c in res.classes]
    return out, lines


def cmd_singularity(p: Problem, args):
    s = singularity_sets(p.cone, p.lattice, p.divisor, p.field, ray_cap=p.ray_cap, jobs=p.jobs)
    levels = {str(i): _faces(s[i]) for i in range(p.cone.rank + 1)}
    lines = []
    for i in range(p.cone.rank + 1):
        lab = ", ".join(f.label() for f in sorted(s[i], key=lambda f: (f.dim, sorted(f.rays))))
        lines.append(f"S_{i}: {lab or 'empty'}")
    return {"divisor": list(p.divisor), "levels": levels}, lines


def cmd_class(p: Problem, args):
    c = canonical_class(p.cone, p.divisor)
    return {"divisor": list(p.divisor), "class": list(c)}, [f"class of {list(p.divisor)}: {list(c)}"]


def cmd_verify(p: Problem, args):
    """Re-check every witness found in a JSON report produced by another command."""
    try:
        with open(args.report, encoding="utf-8") as fh:
            rep = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read report: {exc}") from None
    checks = []
    div = Divisor(tuple(rep.get("divisor", list(p.divisor))))
    div.check(p.cone)
    for row in rep.get("chambers", []):
        pi = frozenset(i - 1 for i in row["pi"])
        for key, flavor in (("lattice_witness", "semistrict"), ("real_witness", "semistrict")):
            w = row.get(key)
            if w is not None:
                pt = [Fraction(a) for a in w]
                ok = chamber_system(p.cone, div, pi, flavor).satisfied_by(pt)
                checks.append((f"{key} of {_label(pi)}", ok))
    if rep.get("witness") is not None and rep.get("verdict") is False:
        pi = frozenset(i - 1 for i in rep["pi"])
        w = rep["witness"]
        xi = cosupport(p.lattice, support(p.cone, p.lattice, MonomialIdeal.maximal()))
        ok = (sigma_m(p.cone, div, w) == pi and rep["degree"] < p.cone.rank
              and local_piece(xi, pi, p.field)[rep["degree"]] != 0)
        checks.append((f"MCM violation witness {w}", ok))
    if "sigma_m" in rep and "degree" in rep and "dims" in rep:
        again = graded_local_cohomology(p.cone, p.lattice, div, p.ideal, rep["degree"], p.field)
        ok = _rays(again.sigma_m) == rep["sigma_m"] and _dims(again.dims) == rep["dims"]
        checks.append((f"cohomology at {rep['degree']}", ok))
    good = all(ok for _, ok in checks)
    out = {"checked": len(checks), "verified": good,
           "failures": [name for name, ok in checks if not ok]}
    lines = [f"{'ok ' if ok else 'BAD'} {name}" for name, ok in checks]
    lines.append(f"{len(checks)} witnesses checked, {'all verified' if good else 'FAILURES'}")
    return out, lines, (EXIT_OK if good else EXIT_VERIFY)


COMMANDS = {"faces": cmd_faces, "support": cmd_support, "cosupport": cmd_cosupport,
            "chambers": cmd_chambers, "cohomology": cmd_cohomology, "depth": cmd_depth,
            "mcm": cmd_mcm, "singularity": cmd_singularity, "class": cmd_class,
            "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--divisor", help="override divisor, e.g. --divisor=0,-2,0,0")
    common.add_argument("--ideal", help='override ideal: "maximal" or "g1;g2" with g = a,b,c')
    common.add_argument("--characteristic", type=int, help="coefficient field characteristic")
    common.add_argument("--jobs", type=int, help="worker processes (default: $TORIC_MCM_JOBS or all cores)")
    common.add_argument("--max-rays", type=int, default=12)
    common.add_argument("--max-rank", type=int, default=6)
    common.add_argument("--max-box", type=int, default=5)

    parser = argparse.ArgumentParser(prog="toric-mcm", description=(
        "Local cohomology and rank-one MCM modules over affine toric rings."))
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("faces", "support", "cosupport", "chambers", "depth", "singularity", "class"):
        sub.add_parser(name, parents=[common]).add_argument("problem", help="problem file (JSON)")
    coh = sub.add_parser("cohomology", parents=[common])
    coh.add_argument("problem")
    coh.add_argument("--degree", help="lattice degree m, e.g. --degree=0,1,-1")
    mcm = sub.add_parser("mcm", parents=[common])
    mcm.add_argument("action", choices=("check", "enumerate"))
    mcm.add_argument("problem")
    mcm.add_argument("--box", type=int, default=3)
    ver = sub.add_parser("verify", parents=[common])
    ver.add_argument("problem")
    ver.add_argument("report", help="JSON report to re-check")
    return parser


def dump_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        prob = Problem(load_problem(args.problem), args)
        res = COMMANDS[args.command](prob, args)
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        where = "" if exc.index is None else f" (index {exc.index})"
        print(f"ValidationError: {type(exc).__name__}{where}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TooManyRays as exc:
        print(f"CapExceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except CapExceeded as exc:
        print(f"CapExceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    code = EXIT_OK
    if len(res) == 3:
        out, lines, code = res
    else:
        out, lines = res
    if args.format == "json":
        sys.stdout.write(dump_json({"command": args.command, **out}))
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

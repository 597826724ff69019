"""
Command-line frontend: knot-table ingestion, structured run reports, and the
alex / talex / symun / obstruct / table commands orchestrating the library.

Knots are referred to by table name (bundled table in data/knots.csv, or a
user table via --table / the KNOTFORGE_TABLE environment variable), by the
literal name "unknot", or by an inline PD code.  Every command produces a
RunReport, printed as human-readable text or, with --json, as JSON whose
re-serialization is byte-identical.

Exit codes: 0 success (an "obstructed" verdict is a successful verdict),
1 domain error, 2 usage error, 3 search budget / feasibility error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from importlib import resources

from .diagram import (InvalidDiagram, MarkedDiagram, PDCode, SymUnionSpec,
                      format_pd, parse_pd, symmetric_union_pd)
from .presentation import (build_symun_presentation, deficiency_one,
                           format_presentation, wirtinger)
from .reps import (RepSearchConfig, SearchBudgetExceeded, enumerate_sl2,
                   rep_from_json)
from .twisted import (classical_alexander, even_symun_obstruction,
                      even_symun_quick_obstructions, format_fraction,
                      higher_alexander, knot_determinant, trivial_rep,
                      twisted_alexander, verify_theorem)
from .algebra import format_poly


class DomainError(ValueError):
    """User-facing error in the problem domain (unknown knot, bad rep...)."""


# -- knot table --------------------------------------------------------------

class KnotTable:
    """Named PD codes loaded from a name,pd CSV; leading #-comment lines are
    kept as the provenance string."""

    def __init__(self, entries, provenance=""):
        self.entries = dict(entries)
        self.provenance = provenance

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.parse(fh.read(), origin=str(path))

    @classmethod
    def parse(cls, text, origin="<table>"):
        provenance = []
        rows = []  # (lineno, raw_line)
        for lineno, line in enumerate(text.splitlines(), start=1):
            if line.startswith("#"):
                provenance.append(line[1:].strip())
                continue
            if not line.strip():
                continue
            rows.append((lineno, line))
        entries = {}
        if not rows:
            return cls({}, "\n".join(provenance))
        header_no, header = rows[0]
        cols = next(csv.reader([header]))
        if [c.strip() for c in cols] != ["name", "pd"]:
            raise DomainError("%s:%d: expected header 'name,pd', got %r"
                              % (origin, header_no, header))
        seen = {}
        for lineno, line in rows[1:]:
            fields = next(csv.reader([line]))
            if len(fields) != 2:
                raise DomainError("%s:%d: expected 2 columns, got %d"
                                  % (origin, lineno, len(fields)))
            name, pd_text = fields[0].strip(), fields[1]
            if name in seen:
                raise DomainError(
                    "%s:%d: duplicate knot name %r (first defined at line %d)"
                    % (origin, lineno, name, seen[name]))
            try:
                entries[name] = parse_pd(pd_text)
            except InvalidDiagram as exc:
                raise DomainError("%s:%d: invalid PD for %r: %s"
                                  % (origin, lineno, name, exc)) from exc
            seen[name] = lineno
        return cls(entries, "\n".join(provenance))

    def __len__(self):
        return len(self.entries)

    def __contains__(self, name):
        return name in self.entries

    def __getitem__(self, name):
        try:
            return self.entries[name]
        except KeyError:
            raise DomainError("unknown knot name %r (table has: %s)"
                              % (name, ", ".join(sorted(self.entries)) or
                                 "nothing")) from None


def bundled_table_path():
    return resources.files("knotforge").joinpath("data", "knots.csv")


def user_table_path():
    return os.path.join(os.path.expanduser("~"), ".knotforge", "knots.csv")


def default_table(explicit=None):
    """Table resolution order: --table flag, KNOTFORGE_TABLE, the user table
    installed by `table import`, then the bundled table."""
    if explicit:
        return KnotTable.load(explicit)
    env = os.environ.get("KNOTFORGE_TABLE")
    if env:
        return KnotTable.load(env)
    user = user_table_path()
    if os.path.exists(user):
        return KnotTable.load(user)
    return KnotTable.parse(bundled_table_path().read_text(),
                           origin="bundled knots.csv")


def resolve_knot(spec, table):
    """A knot argument: table name, 'unknot', or an inline PD code."""
    s = spec.strip()
    if s == "unknot":
        return PDCode([])
    if "X[" in s or s.startswith("["):
        try:
            return parse_pd(s)
        except InvalidDiagram as exc:
            raise DomainError("malformed PD code: %s" % exc) from exc
    return table[s]


# -- run reports -------------------------------------------------------------

@dataclass
class RunReport:
    command: list
    inputs: dict
    results: dict
    timing_ms: float

    def to_json(self):
        payload = {"command": self.command, "inputs": self.inputs,
                   "results": self.results, "timing_ms": self.timing_ms}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(command=data["command"], inputs=data["inputs"],
                   results=data["results"], timing_ms=data["timing_ms"])

    def to_text(self):
        out = io.StringIO()
        out.write("command: %s\n" % " ".join(str(c) for c in self.command))
        for section, data in (("inputs", self.inputs),
                              ("results", self.results)):
            out.write("%s:\n" % section)
            _render(out, data, "  ")
        out.write("timing: %.3f ms\n" % self.timing_ms)
        return out.getvalue()


def _render(out, value, indent):
    if isinstance(value, dict):
        for k in value:
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                out.write("%s%s:\n" % (indent, k))
                _render(out, v, indent + "  ")
            else:
                out.write("%s%s: %s\n" % (indent, k, _scalar(v)))
    elif isinstance(value, list):
        for i, v in enumerate(value):
            if isinstance(v, (dict, list)) and v:
                out.write("%s[%d]:\n" % (indent, i))
                _render(out, v, indent + "  ")
            else:
                out.write("%s- %s\n" % (indent, _scalar(v)))
    else:
        out.write("%s%s\n" % (indent, _scalar(value)))


def _scalar(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


# -- shared helpers ----------------------------------------------------------

def _load_rep(rep_arg, pres, p):
    """--rep argument: 'trivial' or a JSON file with the generator images on
    the knot's Wirtinger generators."""
    if rep_arg == "trivial":
        return trivial_rep(pres, p)
    try:
        with open(rep_arg) as fh:
            text = fh.read()
    except OSError as exc:
        bundled = resources.files("knotforge").joinpath("data", rep_arg)
        if bundled.is_file():
            text = bundled.read_text()
        else:
            raise DomainError("cannot read rep file %r: %s" % (rep_arg, exc))
    try:
        rho = rep_from_json(text, pres)
    except (ValueError, KeyError, TypeError) as exc:
        raise DomainError("invalid rep file %r: %s" % (rep_arg, exc)) from exc
    if p is not None and rho.p != p:
        raise DomainError("rep file is over F_%s but --p %d was given"
                          % (rho.p, p))
    return rho


def _parse_ints(text, what):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise DomainError("expected comma-separated integers for %s, got %r"
                          % (what, text)) from None


def _search_config(args):
    kw = {"p": args.p}
    if getattr(args, "max_nodes", None):
        kw["max_nodes"] = args.max_nodes
    return RepSearchConfig(**kw)


# -- commands ----------------------------------------------------------------

def cmd_alex(args, table):
    pd = resolve_knot(args.knot, table)
    results = {"alexander": format_poly(classical_alexander(pd))}
    for k in sorted(set(args.ideal or ())):
        results["alexander_%d" % k] = format_poly(higher_alexander(pd, k))
    if args.det:
        results["determinant"] = knot_determinant(pd)
    return {"knot": args.knot, "pd": format_pd(pd),
            "crossings": pd.n}, results


def cmd_talex(args, table):
    pd = resolve_knot(args.knot, table)
    pres = deficiency_one(wirtinger(pd))
    inputs = {"knot": args.knot, "p": args.p, "crossings": pd.n}
    if args.enumerate:
        reps = enumerate_sl2(pres, _search_config(args))
        polys = []
        for rho in reps:
            tw = twisted_alexander(pres, rho)
            polys.append({"trace": rho.trace(),
                          "polynomial": format_fraction(tw.value),
                          "degree": tw.degree})
        return inputs, {"num_reps": len(reps), "polynomials": polys}
    if not args.rep:
        raise DomainError("talex needs --rep FILE|trivial or --enumerate")
    rho = _load_rep(args.rep, pres, args.p)
    tw = twisted_alexander(pres, rho)
    inputs["rep"] = args.rep
    return inputs, {"polynomial": format_fraction(tw.value),
                    "degree": tw.degree, "d": tw.d,
                    "is_polynomial": tw.is_polynomial}


def _symun_spec(args, table):
    pd = resolve_knot(args.partial, table)
    marks = _parse_ints(args.marks, "--marks")
    twists = _parse_ints(args.twists, "--twists") if args.twists else ()
    try:
        return SymUnionSpec(MarkedDiagram(pd, marks), twists)
    except InvalidDiagram as exc:
        raise DomainError(str(exc)) from exc


def cmd_symun(args, table):
    spec = _symun_spec(args, table)
    inputs = {"mode": args.mode, "partial": args.partial,
              "marks": list(spec.partial.marked_edges),
              "twists": list(spec.twists)}
    if args.mode == "build":
        union_pres, partial_pres, phi = build_symun_presentation(spec)
        results = {
            "union_presentation": format_presentation(union_pres),
            "partial_presentation": format_presentation(partial_pres),
            "phi": phi.format(),
        }
        if spec.partial.base.n > 0:
            union_pd = symmetric_union_pd(spec)
            results["union_pd"] = format_pd(union_pd)
            results["union_crossings"] = union_pd.n
            results["union_alexander"] = format_poly(
                classical_alexander(union_pd))
            results["partial_alexander"] = format_poly(
                classical_alexander(spec.partial.base))
        return inputs, results
    # verify
    if not spec.is_even:
        raise DomainError("verify needs even twist counts, got %s"
                          % (list(spec.twists),))
    if args.p is None:
        raise DomainError("verify needs --p")
    inputs["p"] = args.p
    inputs["trials"] = args.trials
    _, partial_pres, _ = build_symun_presentation(spec)
    reps = enumerate_sl2(partial_pres, _search_config(args))
    chosen = reps[:args.trials]  # deterministic: by enumeration index
    runs = []
    all_hold = True
    for rho in chosen:
        res = verify_theorem(spec, rho)
        degree_law = (res["deg_lhs"] == res["deg_rhs"])
        all_hold = all_hold and res["equal"] and degree_law
        runs.append({"trace": rho.trace(), "equal": res["equal"],
                     "deg_lhs": res["deg_lhs"], "deg_rhs": res["deg_rhs"],
                     "lhs": res["lhs"], "rhs": res["rhs"]})
    return inputs, {"num_reps_available": len(reps),
                    "num_reps_checked": len(chosen),
                    "runs": runs,
                    "all_identities_hold": all_hold}


def cmd_obstruct(args, table):
    K = resolve_knot(args.knot, table)
    cand = resolve_knot(args.candidate, table)
    inputs = {"knot": args.knot, "candidate": args.candidate}
    quick = even_symun_quick_obstructions(K, cand, genus=args.genus)
    results = {"quick_checks": {k: bool(v) for k, v in quick.items()},
               # the geometric classification of admissible partial knots
               # (branched double covers, Seifert fibered spaces) is assumed
               # background and never computed here; only the polynomial and
               # representation-theoretic conditions are checked
               "assumed_not_computed": "geometric classification of "
                                       "admissible partial knots"}
    if not quick["all_pass"]:
        results["verdict"] = "obstructed"
        results["reason"] = "quick obstruction failed: " + ", ".join(
            k for k, v in quick.items() if k != "all_pass" and not v)
        return inputs, results
    if not args.rep:
        results["verdict"] = "inconclusive"
        results["reason"] = ("quick checks pass; supply --rep and --p for "
                            "the representation-based obstruction")
        return inputs, results
    if args.p is None:
        raise DomainError("--rep needs --p")
    inputs["p"] = args.p
    inputs["rep"] = args.rep
    rho = _load_rep(args.rep, wirtinger(cand), args.p)
    try:
        verdict = even_symun_obstruction(
            K, cand, args.p, rho, search=_search_config(args),
            jobs=args.jobs)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    results["verdict"] = verdict["verdict"]
    results["target"] = verdict["target"]
    results["num_reps"] = verdict["num_reps"]
    results["evidence"] = [
        {"trace": e["trace"], "polynomial": e["polynomial"]}
        for e in verdict["evidence"]]
    return inputs, results


def cmd_table(args, table):
    if args.action != "import":
        raise DomainError("unknown table action %r" % args.action)
    try:
        with open(args.path) as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError("cannot read %r: %s" % (args.path, exc))
    imported = KnotTable.parse(text, origin=args.path)
    dest = os.environ.get("KNOTFORGE_TABLE") or user_table_path()
    os.makedirs(os.path.dirname(os.path.abspath(dest)) or ".", exist_ok=True)
    with open(dest, "w") as fh:
        fh.write(text)
    results = {"entries_loaded": len(imported),
               "names": sorted(imported.entries),
               "persisted_to": dest}
    if len(imported) == 0:
        results["warning"] = "empty table"
    return {"path": args.path}, results


# -- argument parsing --------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="knotforge",
        description="Exact twisted Alexander polynomials, symmetric unions "
                    "and SL(2,F_p) representations of knot groups.")
    ap.add_argument("--table", help="path to a name,pd CSV knot table")
    ap.add_argument("--json", action="store_true",
                    help="emit the run report as JSON")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("alex", help="classical and higher Alexander "
                                    "polynomials")
    p.add_argument("knot")
    p.add_argument("--ideal", action="append", type=int, metavar="K",
                   help="also compute the K-th Alexander polynomial")
    p.add_argument("--det", action="store_true",
                   help="also compute the knot determinant")
    p.set_defaults(func=cmd_alex)

    p = sub.add_parser("talex", help="twisted Alexander (Wada) invariants")
    p.add_argument("knot")
    p.add_argument("--p", type=int, required=True,
                   help="prime for SL(2,F_p) / GL(1,F_p) coefficients")
    p.add_argument("--rep", help="JSON rep file on the Wirtinger "
                                 "generators, or 'trivial'")
    p.add_argument("--enumerate", action="store_true",
                   help="enumerate nonabelian SL(2,F_p) reps up to conjugacy")
    p.add_argument("--jobs", type=int)
    p.add_argument("--max-nodes", type=int, dest="max_nodes")
    p.set_defaults(func=cmd_talex)

    p = sub.add_parser("symun", help="symmetric-union construction and "
                                     "verification")
    p.add_argument("mode", choices=("build", "verify"))
    p.add_argument("--partial", required=True)
    p.add_argument("--marks", required=True,
                   help="comma-separated marked edges e0,e1,...")
    p.add_argument("--twists", default="",
                   help="comma-separated twist counts n1,...")
    p.add_argument("--p", type=int)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--max-nodes", type=int, dest="max_nodes")
    p.set_defaults(func=cmd_symun)

    p = sub.add_parser("obstruct", help="even symmetric-union obstruction")
    p.add_argument("knot")
    p.add_argument("--candidate", required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--rep")
    p.add_argument("--genus", type=int,
                   help="genus witness for the parity quick check")
    p.add_argument("--jobs", type=int)
    p.add_argument("--max-nodes", type=int, dest="max_nodes")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("table", help="knot-table management")
    p.add_argument("action", choices=("import",))
    p.add_argument("path")
    p.set_defaults(func=cmd_table)
    return ap


def run(argv):
    ap = build_parser()
    args = ap.parse_args(argv)
    table = (None if args.cmd == "table"
             else default_table(args.table))
    t0 = time.perf_counter()
    inputs, results = args.func(args, table)
    dt = (time.perf_counter() - t0) * 1000.0
    return RunReport(command=["knotforge"] + list(argv), inputs=inputs,
                     results=results, timing_ms=round(dt, 3))


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        report = run(argv)
    except SearchBudgetExceeded as exc:
        print("error: search budget exceeded: %s" % exc, file=sys.stderr)
        return 3
    except (DomainError, InvalidDiagram) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    emit = report.to_json() if _wants_json(argv) else report.to_text()
    sys.stdout.write(emit)
    return 0


def _wants_json(argv):
    return "--json" in argv


if __name__ == "__main__":
    sys.exit(main())

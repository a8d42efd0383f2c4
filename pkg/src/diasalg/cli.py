"""Command-line front end.

Exit codes: 0 ok, 1 property violated, 2 invalid algebra, 64 usage or parse
error.  Every subcommand accepts ``--json`` and then prints one envelope
``{version, input_sha256, command, results, timing}``.
"""

from __future__ import annotations

import argparse
import hashlib
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .algebra import (
    AXIOMS, DiasAlgebra, center, derived_dimension_bound_holds, derived_subalgebra,
    is_central_ideal, validate_axioms,
)
from .catalog import corpus, find_entry
from .cohomology import verify_five_term
from .extensions import (
    construct_cover, multiplier, stem_center_projection, theorem49_report, verify_stallings,
    z_star,
)
from .fileformat import (
    FormatError, dumps, dumps_algebra, load_algebra, matrix_to_json,
    scalar_from_json, scalar_to_json,
)
from .kernel import QQ, FieldSpec, GF, Subspace, subspace_intersect

EXIT_OK, EXIT_VIOLATED, EXIT_INVALID, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class InvalidAlgebra(Exception):
    def __init__(self, msg: str, results: Dict[str, Any]):
        super().__init__(msg)
        self.results = results


class ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- helpers ---------------------------------------------------------------

def parse_field(text: str) -> FieldSpec:
    t = text.strip()
    if t.lower() in ("qq", "q", "rational"):
        return QQ
    m = re.fullmatch(r"(?:GF\(?|prime:)(\d+)\)?", t, re.IGNORECASE)
    if not m:
        raise UsageError(f"unknown field {text!r}; use QQ or GF(p)")
    try:
        return GF(int(m.group(1)))
    except ValueError as e:
        raise UsageError(str(e)) from None


def subspace_json(S: Subspace) -> List[list]:
    f = S.field
    return [[scalar_to_json(f, x) for x in row] for row in S.basis.to_dense()]


def parse_ideal(L: DiasAlgebra, spec: str) -> Subspace:
    """``center``, ``derived``, ``zero`` or basis rows such as ``"1,0,0;0,1/2,0"``."""
    key = spec.strip().lower()
    if key == "center":
        return center(L)
    if key == "derived":
        return derived_subalgebra(L)
    if key == "zero":
        return L.zero_space()
    rows = []
    for chunk in spec.split(";"):
        if not chunk.strip():
            continue
        entries = [e.strip() for e in chunk.split(",")]
        if len(entries) != L.dim:
            raise UsageError(f"ideal row {chunk!r} has {len(entries)} entries, expected {L.dim}")
        try:
            vals = [scalar_from_json(L.field, e) for e in entries]
        except FormatError as e:
            raise UsageError(str(e)) from None
        rows.append({k: v for k, v in enumerate(vals) if v})
    return Subspace(L.field, L.dim, rows)


def central_ideal(L: DiasAlgebra, spec: str) -> Subspace:
    Z = parse_ideal(L, spec)
    if not is_central_ideal(L, Z):
        raise UsageError(f"ideal {spec!r} is not a central ideal")
    return Z


def load_valid(path: str) -> Tuple[str, DiasAlgebra]:
    name, L = load_algebra(path)
    rep = validate_axioms(L)
    if not rep.ok:
        raise InvalidAlgebra(f"{path}: fails the diassociative identities",
                             validation_json(L, rep))
    return name, L


def validation_json(L: DiasAlgebra, rep) -> Dict[str, Any]:
    f = L.field
    by = rep.by_axiom()
    return {
        "valid": rep.ok,
        "axioms": {a: {"ok": not by[a], "violations": len(by[a]),
                       "witnesses": [{"triple": list(v.triple),
                                      "residual": {str(k): scalar_to_json(f, x)
                                                   for k, x in sorted(v.residual.items())}}
                                     for v in by[a][:5]]}
                   for a in AXIOMS},
    }


def sequence_json(rep) -> Dict[str, Any]:
    return {
        "exact": rep.exact,
        "verdicts": dict(rep.verdicts),
        "dims": dict(rep.dims),
        "maps": {k: {"rows": m.matrix.nrows, "cols": m.matrix.ncols,
                     "rank": m.rank, "kernel_dim": m.kernel_dim}
                 for k, m in rep.maps.items()},
    }


def sequences_for(L: DiasAlgebra, Z: Subspace) -> Dict[str, Any]:
    five = verify_five_term(L, Z)
    st = verify_stallings(L, Z)
    meet = subspace_intersect(derived_subalgebra(L), Z).dim
    rank_tra = five.maps["tra"].rank
    return {
        "ideal": subspace_json(Z),
        "five_term": sequence_json(five),
        "stallings": sequence_json(st),
        "rank_tra": rank_tra,
        "dim_derived_cap_ideal": meet,
        "tra_image_matches": rank_tra == meet,
        "ok": five.exact and st.exact and rank_tra == meet,
    }


def _corpus_entry_job(args: Tuple[str, int, int]) -> Dict[str, Any]:
    field_text, seed, index = args
    e = corpus(parse_field(field_text), seed)[index]
    out = {"id": e.id, "ideals": {}}
    for name, Z in e.central_ideals():
        out["ideals"][name] = sequences_for(e.algebra, Z)
    out["ok"] = all(r["ok"] for r in out["ideals"].values())
    return out


# --- commands --------------------------------------------------------------
# Each returns (results, exit code, human-readable lines).

def cmd_validate(args) -> Tuple[Dict[str, Any], int, List[str]]:
    name, L = load_algebra(args.file)
    rep = validate_axioms(L)
    res = validation_json(L, rep)
    lines = [f"{a}: {'ok' if v['ok'] else 'FAIL (%d)' % v['violations']}"
             for a, v in res["axioms"].items()]
    for a, v in res["axioms"].items():
        for w in v["witnesses"]:
            lines.append(f"  {a} witness {tuple(w['triple'])}: residual {w['residual']}")
    lines.append("valid" if rep.ok else "invalid")
    return res, EXIT_OK if rep.ok else EXIT_INVALID, lines


def cmd_info(args):
    name, L = load_valid(args.file)
    D, Z = derived_subalgebra(L), center(L)
    nz = L.dim - Z.dim
    res = {
        "name": name, "field": str(L.field), "dim": L.dim,
        "dim_derived": D.dim, "dim_center": Z.dim,
        "derived_bound": 2 * nz * nz,
        "derived_bound_holds": derived_dimension_bound_holds(L),
        "derived_basis": subspace_json(D), "center_basis": subspace_json(Z),
    }
    lines = [f"dim L = {L.dim}", f"dim L' = {D.dim}", f"dim Z(L) = {Z.dim}",
             f"dim L' <= 2(dim L - dim Z)^2 = {res['derived_bound']}: {res['derived_bound_holds']}"]
    return res, EXIT_OK, lines


def cmd_multiplier(args):
    name, L = load_valid(args.file)
    d, H = multiplier(L)
    res = {"dim_multiplier": d, "dim_cocycles": H.Z2.dim, "dim_coboundaries": H.B2.dim,
           "dim_cover": L.dim + d}
    lines = [f"dim M(L) = dim H^2(L, F) = {d}",
             f"dim Z^2 = {H.Z2.dim}, dim B^2 = {H.B2.dim}", f"dim cover = {L.dim + d}"]
    return res, EXIT_OK, lines


def cmd_cover(args):
    name, L = load_valid(args.file)
    rec, rep = construct_cover(L, args.reverse)
    K = rec.total
    out_name = f"{name or 'L'}_cover"
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(dumps_algebra(K, out_name))
    res = {
        "out": args.out, "dim_cover": K.dim, "dim_kernel": rec.kernel.dim,
        "kernel_basis": subspace_json(rec.kernel),
        "projection": matrix_to_json(rec.projection),
        "section": matrix_to_json(rec.section),
        "report": {**rep.verdicts(), "dim_total": rep.dim_total, "dim_kernel": rep.dim_kernel,
                   "bound": rep.bound},
        "coordinates": "first dim L coordinates map identically onto L; the rest span the multiplier",
    }
    lines = [f"wrote {args.out}", f"dim K = {K.dim}, dim M = {rec.kernel.dim}"]
    lines += [f"{k}: {v}" for k, v in rep.verdicts().items()]
    lines.append(f"projection: K -> L keeps coordinates 0..{L.dim - 1}")
    return res, EXIT_OK, lines


def cmd_zstar(args):
    name, L = load_valid(args.file)
    zs, Z = z_star(L), center(L)
    res = {"dim_z_star": zs.dim, "dim_center": Z.dim, "z_star_basis": subspace_json(zs),
           "center_basis": subspace_json(Z), "unicentral": zs == Z}
    lines = [f"dim Z*(L) = {zs.dim}", f"dim Z(L) = {Z.dim}", f"unicentral: {zs == Z}"]
    return res, EXIT_OK, lines


def cmd_unicentral(args):
    name, L = load_valid(args.file)
    rep = stem_center_projection(L)
    res = {"unicentral": rep.unicentral, "dim_z_star": rep.first.dim,
           "dim_center": rep.center.dim, "stem_invariant": rep.invariant}
    code = EXIT_VIOLATED if args.assert_ and not rep.unicentral else EXIT_OK
    lines = [f"unicentral: {rep.unicentral}",
             f"dim Z*(L) = {rep.first.dim}, dim Z(L) = {rep.center.dim}"]
    return res, code, lines


def cmd_sequences(args):
    if args.corpus:
        if args.file:
            raise UsageError("--corpus takes no algebra file")
        field = parse_field(args.field)
        n = len(corpus(field, args.seed))
        jobs = [(args.field, args.seed, i) for i in range(n)]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                entries = list(ex.map(_corpus_entry_job, jobs))
        else:
            entries = [_corpus_entry_job(j) for j in jobs]
        pairs = sum(len(e["ideals"]) for e in entries)
        ok = all(e["ok"] for e in entries)
        res = {"field": str(field), "seed": args.seed, "entries": entries,
               "pairs": pairs, "all_exact": ok}
        lines = [f"{e['id']}: " + ", ".join(f"{k}={'exact' if v['ok'] else 'FAIL'}"
                                            for k, v in e["ideals"].items()) for e in entries]
        lines.append(f"{pairs} pairs, all exact: {ok}")
        return res, EXIT_OK if ok else EXIT_VIOLATED, lines
    if not args.file:
        raise UsageError("an algebra file or --corpus is required")
    name, L = load_valid(args.file)
    Z = central_ideal(L, args.ideal)
    res = sequences_for(L, Z)
    lines = [f"five-term {k}: {v}" for k, v in res["five_term"]["verdicts"].items()]
    lines += [f"stallings {k}: {v}" for k, v in res["stallings"]["verdicts"].items()]
    lines.append(f"rank Tra = {res['rank_tra']}, dim(L' ∩ Z) = {res['dim_derived_cap_ideal']}")
    return res, EXIT_OK if res["ok"] else EXIT_VIOLATED, lines


def cmd_thm49(args):
    name, L = load_valid(args.file)
    Z = central_ideal(L, args.ideal)
    rep = theorem49_report(L, Z)
    res = {"conditions": rep.conditions(), "agree": rep.agree, "dims": rep.dims}
    lines = [f"{k}: {v}" for k, v in rep.conditions().items()]
    lines.append(f"agree: {rep.agree}")
    return res, EXIT_OK if rep.agree else EXIT_VIOLATED, lines


def cmd_catalog(args):
    field = parse_field(args.field)
    if args.action == "list":
        if args.id or args.out:
            raise UsageError("catalog list takes no further arguments")
        entries = corpus(field, args.seed)
        res = {"field": str(field), "seed": args.seed,
               "entries": [{"id": e.id, "dim": e.algebra.dim,
                            "known": {k: {"value": v.value, "provenance": v.provenance}
                                      for k, v in e.known_invariants.items()}}
                           for e in entries]}
        return res, EXIT_OK, [f"{e.id}  (dim {e.algebra.dim})" for e in entries]
    if not args.id or not args.out:
        raise UsageError("catalog emit needs <id> <out>")
    try:
        e = find_entry(args.id, field, args.seed)
    except KeyError:
        raise UsageError(f"no catalog entry {args.id!r}") from None
    text = dumps_algebra(e.algebra, e.id)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    res = {"id": e.id, "out": args.out, "dim": e.algebra.dim,
           "sha256": hashlib.sha256(text.encode()).hexdigest()}
    return res, EXIT_OK, [f"wrote {e.id} to {args.out}"]


COMMANDS = {
    "validate": cmd_validate, "info": cmd_info, "multiplier": cmd_multiplier,
    "cover": cmd_cover, "zstar": cmd_zstar, "unicentral": cmd_unicentral,
    "sequences": cmd_sequences, "thm49": cmd_thm49, "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON envelope")
    common.add_argument("--timing", action="store_true",
                        help="include wall-clock time in the envelope (breaks byte stability)")

    p = ArgParser(prog="diasalg", description="Exact computations for diassociative algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=ArgParser)

    def with_file(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file", help="algebra file (JSON)")
        return sp

    with_file("validate", "check the five identities")
    with_file("info", "dimensions of L, L' and Z(L)")
    with_file("multiplier", "dimension of the multiplier")
    sp = with_file("cover", "write a cover as an algebra file")
    sp.add_argument("out")
    sp.add_argument("--reverse", action="store_true",
                    help="use representatives chosen in reversed coordinate order")
    with_file("zstar", "Z*(L) and the center")
    sp = with_file("unicentral", "whether Z(L) = Z*(L)")
    sp.add_argument("--assert", dest="assert_", action="store_true",
                    help="exit 1 when L is not unicentral")

    sp = sub.add_parser("sequences", parents=[common], help="exactness of the low-degree sequences")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--ideal", default="center",
                    help="center, derived, zero or rows like '1,0,0;0,1,0' (default center)")
    sp.add_argument("--corpus", action="store_true", help="sweep the built-in corpus")
    sp.add_argument("--field", default="QQ")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)

    sp = with_file("thm49", "four equivalent conditions for Z ⊆ Z*")
    sp.add_argument("--ideal", default="center")

    sp = sub.add_parser("catalog", parents=[common], help="list or emit built-in algebras")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("id", nargs="?")
    sp.add_argument("out", nargs="?")
    sp.add_argument("--field", default="QQ")
    sp.add_argument("--seed", type=int, default=0)
    return p


def _digest(args) -> str:
    path = getattr(args, "file", None)
    if path:
        try:
            with open(path, "rb") as fh:
                return hashlib.sha256(fh.read()).hexdigest()
        except OSError:
            pass
    keys = {k: v for k, v in sorted(vars(args).items()) if k not in ("json", "timing", "jobs")}
    return hashlib.sha256(dumps(keys).encode()).hexdigest()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        results, code, lines = COMMANDS[args.command](args)
    except (FormatError, UsageError) as e:
        results, code, lines = {"error": str(e)}, EXIT_USAGE, [f"error: {e}"]
    except OSError as e:
        results, code, lines = {"error": str(e)}, EXIT_USAGE, [f"error: {e}"]
    except InvalidAlgebra as e:
        results, code, lines = {"error": str(e), **e.results}, EXIT_INVALID, [f"error: {e}"]
    elapsed = time.perf_counter() - t0
    if args.json:
        env = {
            "version": __version__,
            "input_sha256": _digest(args),
            "command": args.command,
            "exit_code": code,
            "results": results,
            "timing": {"seconds": round(elapsed, 6)} if args.timing else None,
        }
        sys.stdout.write(dumps(env))
    else:
        stream = sys.stderr if code == EXIT_USAGE else sys.stdout
        for line in lines:
            print(line, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())

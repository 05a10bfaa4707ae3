"""``twistor``: command line front end over the library.

Every subcommand reads JSON documents (``{"kind", "version", "data"}``), runs one
library operation and prints a report, as text or as JSON with ``--format json``.
Exit codes: 0 success, 2 input error, 3 failed internal theorem check.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .bundles import O, SplitBundle, birkhoff_split, cokernel, ext1_dim, kernel
from .errors import FieldError, InputError, TheoremViolation

__all__ = ["main", "build_parser"]


# ---------------------------------------------------------------------------
# formatting


def _degs(E: SplitBundle) -> str:
    return "[" + ", ".join(str(d) for d in E.degrees) + "]"


def _lmatrix(M) -> list:
    return ["[" + ", ".join(repr(x) for x in row) + "]" for row in M]


def _smatrix(M) -> list:
    return ["[" + ", ".join(str(x) for x in row) + "]" for row in M]


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


class Report:
    """Text lines plus a JSON payload; the format flag picks one."""

    def __init__(self, lines, data):
        self.lines = list(lines)
        self.data = data

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2, sort_keys=True)
        return "\n".join(self.lines)


# ---------------------------------------------------------------------------
# input


def _read(args, expect):
    path = args.input or args.file
    if path is None:
        raise InputError("no input file given (use FILE or --input FILE)")
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return _load(text, expect, args.field)


def _load(text, expect, field):
    try:
        return serialize.load(text, expect, field)
    except InputError:
        raise
    except (KeyError, TypeError, IndexError, AttributeError, ValueError) as exc:
        raise InputError(f"malformed {expect} document: {exc!r}") from exc


def _int_list(text: str, what: str):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_split(args) -> Report:
    T = _read(args, "transition")
    sp = birkhoff_split(T.matrix())
    lines = [f"degrees: {list(sp.degrees)}"]
    data = {"degrees": list(sp.degrees)}
    if args.factors:
        r = len(sp.degrees)
        lines += ["A:"] + ["  " + s for s in _lmatrix(sp.A)] + ["B:"] + ["  " + s for s in _lmatrix(sp.B)]
        data["A"] = serialize.laurent_matrix_to_json(sp.A, r, r)
        data["B"] = serialize.laurent_matrix_to_json(sp.B, r, r)
    return Report(lines, data)


def cmd_check_mts(args) -> Report:
    from .mts import validate_mts

    rep = validate_mts(_read(args, "mts"))
    bad = rep.first_invalid()
    line = "valid" if bad is None else f"invalid at weight {bad}"
    return Report([line], rep.to_json())


def cmd_rees(args) -> Report:
    from .rees import equivalence_check, rees_bundle, rees_mts

    V = _read(args, "filtered-space")
    whole = rees_bundle(V.F, V.Fp).split
    out = equivalence_check(V)
    lines = [f"rees bundle: {_degs(whole)}"]
    lines += [f"Gr_{g['i']}: {g['degrees']}" for g in out["graded"]]
    lines += [f"complex mhs: {_yes(out['complex_mhs'])}", f"mts valid: {_yes(out['mts_valid'])}"]
    data = dict(out, bundle=whole.to_json())
    if args.emit_mts:
        data["mts"] = serialize.document("mts", rees_mts(V).to_json())
    return Report(lines, data)


def _morphism(args):
    from .mts import MtsMorphism

    f = _read(args, "map")
    if (args.source_mts is None) != (args.target_mts is None):
        raise InputError("--source-mts and --target-mts go together")
    if args.source_mts is None:
        return f, None
    docs = []
    for path in (args.source_mts, args.target_mts):
        try:
            with open(path, encoding="utf-8") as fh:
                docs.append(_load(fh.read(), "mts", args.field))
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return f, MtsMorphism(docs[0], docs[1], f)


def _mts_lines(M) -> list:
    from .mts import validate_mts

    rep = validate_mts(M)
    return [f"Gr_{i}: {list(g['degrees'])}" for i, g in sorted(rep.graded.items()) if g["degrees"]]


def cmd_kernel(args) -> Report:
    f, phi = _morphism(args)
    if phi is not None:
        from .mts import mts_kernel

        K = mts_kernel(phi)
        return Report([f"kernel: {_degs(K.total)}"] + _mts_lines(K), {"kernel": serialize.document("mts", K.to_json())})
    K, incl = kernel(f)
    return Report([f"kernel: {_degs(K)}"], {"kernel": K.to_json(), "inclusion": incl.to_json()})


def cmd_cokernel(args) -> Report:
    f, phi = _morphism(args)
    if phi is not None:
        from .mts import mts_cokernel, mts_image_coimage

        C = mts_cokernel(phi)
        mts_image_coimage(phi)
        lines = [f"cokernel: {_degs(C.total)}"] + _mts_lines(C) + ["image = coimage: yes"]
        return Report(lines, {"cokernel": serialize.document("mts", C.to_json()), "image_equals_coimage": True})
    rep = cokernel(f)
    torsion = [d.degree for d in rep.torsion_divisors]
    lines = [f"torsion length: {rep.torsion_length}", f"free part: {_degs(rep.free_part)}"]
    return Report(lines, dict(rep.to_json(), torsion_degrees=torsion))


def cmd_ext(args) -> Report:
    E, F = O(*_int_list(args.source, "source degrees")), O(*_int_list(args.target, "target degrees"))
    n = ext1_dim(E, F)
    return Report([f"ext1: {n}"], {"source": list(E.degrees), "target": list(F.degrees), "ext1": n})


def cmd_moduli_dim(args) -> Report:
    from .moduli import WeightVector, formula_crosscheck, framed_dim, framed_dim_direct, stack_dim

    if args.b is not None:
        if args.input or args.file:
            raise InputError("give either a weight-vector file or --b, not both")
        b = WeightVector(start=args.start, entries=_int_list(args.b, "--b"))
    else:
        b = _read(args, "weight-vector")
    fd, sd = framed_dim(b), stack_dim(b)
    if fd != framed_dim_direct(b):
        raise TheoremViolation("framed dimension recursion disagrees with the pairwise Ext sum", b.to_json())
    cc = formula_crosscheck(b)
    lines = [f"framed: {fd}, stack: {sd}"]
    if args.crosscheck:
        lines.append(f"closed formula: {cc.closed_formula} ({'agrees' if cc.agree else 'disagrees'})")
    return Report(lines, {"b": b.to_json()["b"], "framed": fd, "stack": sd, "crosscheck": cc.to_json()})


def cmd_ss(args) -> Report:
    from .complexes import degeneration_check, random_mtc
    from .mts import validate_mts

    if args.seed is not None and not (args.input or args.file):
        C = random_mtc(args.seed)
    else:
        C = _read(args, "complex")
    res = degeneration_check(C)
    ss = res["spectral_sequence"]
    first = res["first_nonzero_d"]
    lines = [
        "mixed twistor complex: yes",
        f"first nonzero differential: {'none' if first is None else f'd_{first}'}",
        f"degenerate from: E_{res['degenerate_from']}",
    ]
    structs = {}
    for i, M in sorted(res["structures"].items()):
        rep = validate_mts(M)
        graded = ", ".join(f"Gr_{w} {list(g['degrees'])}" for w, g in sorted(rep.graded.items()) if g["degrees"])
        lines.append(f"H^{i}: {_degs(M.total)}" + (f"; {graded}" if graded else ""))
        structs[str(i)] = M.to_json()
    data = {
        "first_nonzero_d": first,
        "degenerate_from": res["degenerate_from"],
        "spectral_sequence": ss.to_json(),
        "structures": structs,
    }
    if args.emit_complex:
        data["complex"] = serialize.document("complex", serialize.complex_to_json(C))
    return Report(lines, data)


def cmd_patch(args) -> Report:
    from .complexes import patch, patch_chain

    P = _read(args, "patch")
    res = patch_chain(**P) if "Q" in P else patch(**P)
    lines = [f"Gr_{n} H^{i}: {list(degs)}" for (n, i), degs in res.degrees().items()]
    return Report(lines or ["empty"], res.to_json())


def cmd_quat(args) -> Report:
    from .realstruct import RealStructure, quaternionic_from_weight1, standard_quaternionic, twistor_from_quaternionic

    if args.field != "gaussian":
        raise FieldError("quat needs --field gaussian")
    R = standard_quaternionic(args.standard) if args.standard else _read(args, "real-structure")
    if not isinstance(R, RealStructure):
        raise InputError("quat needs a real-structure document")
    Q = quaternionic_from_weight1(R)
    rel = Q.relations()
    lines = [f"dimension: {Q.dim}"]
    for name, X in (("I", Q.I), ("J", Q.J), ("K", Q.K)):
        lines += [f"{name}:"] + ["  " + s for s in _smatrix(X)]
    lines.append("relations: " + ", ".join(f"{k} {_yes(v)}" for k, v in rel.items()))
    data = {
        "dim": Q.dim,
        "I": [[str(x) for x in r] for r in Q.I],
        "J": [[str(x) for x in r] for r in Q.J],
        "K": [[str(x) for x in r] for r in Q.K],
        "relations": rel,
    }
    if args.roundtrip:
        line = twistor_from_quaternionic(Q)
        lines.append(f"twistor line: {_degs(line.bundle)}")
        data["twistor_line"] = serialize.document("real-structure", line.real_structure.to_json())
    return Report(lines, data)


def cmd_selfcheck(args) -> Report:
    from .suites import SUITES, run_suite

    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    start = args.seed or 0
    lines, data = [], {}
    for name in names:
        res = run_suite(name, range(start, start + args.count), jobs=args.jobs)
        bad = [r["seed"] for r in res if not r["ok"]]
        lines.append(f"{name}: {len(res) - len(bad)}/{len(res)} ok" + (f" (failing seeds {bad})" if bad else ""))
        data[name] = res
    if any(not r["ok"] for rs in data.values() for r in rs):
        raise TheoremViolation("self-check failures", {"report": lines})
    return Report(lines, data)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE", help="input document (or give FILE positionally; '-' is stdin)")
    common.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--field", choices=("rational", "gaussian"), default="rational")
    common.add_argument("--seed", type=int, help="seed for generated inputs")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for property suites")

    p = argparse.ArgumentParser(prog="twistor", description="Exact computations with mixed twistor structures on P^1.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_, file=True):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        if file:
            sp.add_argument("file", nargs="?", metavar="FILE")
        sp.set_defaults(fn=fn)
        return sp

    add("split", cmd_split, "splitting type of a transition matrix").add_argument(
        "--factors", action="store_true", help="also print the Birkhoff factors A and B"
    )
    add("check-mts", cmd_check_mts, "validate a mixed twistor structure")
    add("rees", cmd_rees, "Rees bundle of a filtered space and the Hodge/twistor comparison").add_argument(
        "--emit-mts", action="store_true", help="include the Rees MTS document in JSON output"
    )
    for name, fn, what in (("kernel", cmd_kernel, "kernel"), ("cokernel", cmd_cokernel, "cokernel")):
        sp = add(name, fn, f"{what} of a bundle map (or of an MTS morphism)")
        sp.add_argument("--source-mts", metavar="FILE")
        sp.add_argument("--target-mts", metavar="FILE")
    sp = add("ext", cmd_ext, "dim Ext^1(E, F) for split bundles E, F", file=False)
    sp.add_argument("source", help="degrees of E, comma-separated")
    sp.add_argument("target", help="degrees of F, comma-separated")
    sp = add("moduli-dim", cmd_moduli_dim, "dimensions of the framed moduli and the stack")
    sp.add_argument("--b", help="graded ranks b_n, comma-separated")
    sp.add_argument("--start", type=int, default=0, help="weight of the first --b entry")
    sp.add_argument("--crosscheck", action="store_true")
    add("ss", cmd_ss, "spectral sequence and degeneration of a mixed twistor complex").add_argument(
        "--emit-complex", action="store_true", help="include the (possibly generated) complex in JSON output"
    )
    add("patch", cmd_patch, "glue chart complexes and split the graded cohomology")
    sp = add("quat", cmd_quat, "quaternionic structure of an antipodal weight-1 real structure")
    sp.add_argument("--standard", type=int, metavar="N", help="use N copies of the standard structure on O(1)^2")
    sp.add_argument("--roundtrip", action="store_true", help="rebuild the twistor line from I, J, K")
    sp = add("selfcheck", cmd_selfcheck, "randomized property suites", file=False)
    sp.add_argument("--suite", choices=("all", "abelian", "birkhoff", "degen", "rees"), default="all")
    sp.add_argument("--count", type=int, default=20)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.jobs < 1:
            raise InputError("--jobs must be at least 1")
        text = args.fn(args).render(args.format)
    except TheoremViolation as exc:
        print(f"error: theorem check failed: {exc}", file=sys.stderr)
        print(json.dumps(exc.dump, indent=2, sort_keys=True, default=str), file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

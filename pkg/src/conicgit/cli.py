"""Command-line front end.  Every command reads one JSON document (``--input``
or stdin) except ``vertices``, ``boggi`` and ``selftest``, which take flags.

Exit codes: 0 answered, 1 invalid input, 2 oracle and classifier disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import io
from .geometry import NonSingular, P1Point, parametrize_conic
from .hilbert_mumford import OnePSFrame, mu_of_frame, oracle_search
from .moduli import (
    conic_image,
    fcurve_contracted,
    fcurve_hassett_contracted,
    hassett_violations,
    image_report,
    reduce,
    semistable_reduction_pipeline,
)
from .polytope import (
    chamber_signature,
    delta3_faces,
    is_effective,
    normalize,
    same_chamber,
    segment_crossings,
    walls_at,
)
from .selftest import run_sweep
from .stability import (
    boggi2_linearization,
    classify_sl2,
    is_I_stable,
    sl2_report,
    theorem1_report,
)

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2


class Mismatch(Exception):
    def __init__(self, payload: dict):
        super().__init__("oracle and classifier disagree")
        self.payload = payload


def _need(doc: dict, key: str) -> Any:
    if key not in doc:
        raise io.DocumentError(f"{key}: missing")
    return doc[key]


def _walls(lin) -> list:
    return walls_at(normalize(lin))


def _report_dict(report, lin=None) -> dict:
    out = {
        "verdict": report.verdict,
        "conic_type": report.conic_type,
        "inequalities": [
            {"name": q.name, "lhs": q.lhs, "rhs": q.rhs, "holds": q.holds, "tight": q.tight}
            for q in report.inequalities
        ],
    }
    if report.note:
        out["note"] = report.note
    if lin is not None:
        out["wall_hits"] = _walls(lin)
    return out


# -- commands: each returns a dict for io.dumps ------------------------------

def cmd_classify(doc, args):
    cfg, lin = io.parse_config(doc), io.parse_linearization(_need(doc, "linearization"))
    return _report_dict(theorem1_report(cfg, lin), lin)


def cmd_oracle(doc, args):
    cfg, lin = io.parse_config(doc), io.parse_linearization(_need(doc, "linearization"))
    res = oracle_search(cfg, lin)
    closed = theorem1_report(cfg, lin).verdict
    out = {
        "verdict": res.verdict,
        "classifier_verdict": closed,
        "max_mu": res.maximum,
        "argmax_b": res.profile.argmax_b,
        "frame": [list(col) for col in res.frame.basis],
        "frames_checked": res.frames_checked,
        "wall_hits": _walls(lin),
    }
    if closed is not res.verdict:
        raise Mismatch(out)
    return out


def cmd_mu(doc, args):
    cfg, lin = io.parse_config(doc), io.parse_linearization(_need(doc, "linearization"))
    if "frame" in doc:
        m = io.parse_matrix(doc["frame"], "frame")
        frame = OnePSFrame.from_columns(m)
    else:
        frame = OnePSFrame.identity()
    prof = mu_of_frame(cfg, lin, frame)
    return {
        "breakpoints": prof.breakpoints,
        "values": prof.values,
        "max_mu": prof.maximum,
        "argmax_b": prof.argmax_b,
        "verdict_for_this_1ps_family": "destabilizing" if prof.maximum > 0 else "not destabilizing",
    }


def _normalized_dict(nl) -> dict:
    return {"gamma": nl.gamma, "c": nl.c, "regime": nl.regime, "effective": is_effective(nl)}


def cmd_normalize(doc, args):
    return _normalized_dict(normalize(io.parse_linearization(_need(doc, "linearization"))))


def cmd_walls(doc, args):
    nl = normalize(io.parse_linearization(_need(doc, "linearization")))
    hits = walls_at(nl)
    return {"normalized": _normalized_dict(nl), "wall_hits": hits, "open_chamber": not hits}


def cmd_chamber_id(doc, args):
    nl = normalize(io.parse_linearization(_need(doc, "linearization")))
    sig = chamber_signature(nl)
    out = {"regime": sig.regime, "signs": [list(p) for p in sig.signs], "on_wall": sig.on_wall}
    if "target" in doc:
        other = normalize(io.parse_linearization(doc["target"], "target"))
        out["same_chamber_as_target"] = same_chamber(nl, other)
    return out


def cmd_crossings(doc, args):
    a = normalize(io.parse_linearization(_need(doc, "linearization")))
    b = normalize(io.parse_linearization(_need(doc, "target"), "target"))
    return {"crossings": [{"t": t, "subset": list(h.subset), "level": h.level}
                          for t, h in segment_crossings(a, b)]}


def cmd_vertices(doc, args):
    low, high = delta3_faces(args.n)
    return {"n": args.n, "count": len(low) + len(high),
            "gamma_0_face": low, "gamma_1_face": high}


def cmd_hassett(doc, args):
    T = io.parse_tree(_need(doc, "tree"))
    lin = io.parse_linearization(_need(doc, "linearization"))
    problems = hassett_violations(T, lin.c)
    return {"hassett_stable": not problems, "violations": problems}


def cmd_reduce(doc, args):
    T = io.parse_tree(_need(doc, "tree"))
    lin = io.parse_linearization(_need(doc, "linearization"))
    R = reduce(T, lin.c)
    return {"reduced": R, "is_chain": R.is_chain()}


def cmd_image(doc, args):
    T = io.parse_tree(_need(doc, "tree"))
    lin = io.parse_linearization(_need(doc, "linearization"))
    img = conic_image(T, lin.c, lin.gamma, allow_boundary=args.allow_boundary)
    return {"image": img, **_report_dict(image_report(img, lin.c, lin.gamma))}


def cmd_pipeline(doc, args):
    T = io.parse_tree(_need(doc, "tree"))
    lin = io.parse_linearization(_need(doc, "linearization"))
    res = semistable_reduction_pipeline(T, lin.c, lin.gamma, check=not args.no_check,
                                        allow_boundary=args.allow_boundary)
    return {"chain": res.chain, "image": res.image, "flags": list(res.flags),
            **_report_dict(image_report(res.image, lin.c, lin.gamma), lin)}


def cmd_fcurve(doc, args):
    P = io.parse_partition(_need(doc, "partition"))
    lin = io.parse_linearization(_need(doc, "linearization"))
    return {
        "leg_weights": P.leg_weights(lin.c),
        "contracted": fcurve_contracted(P, lin.c, lin.gamma),
        "hassett_contracted": fcurve_hassett_contracted(P, lin.c),
    }


def cmd_boggi(doc, args):
    lin = boggi2_linearization(args.n, io._rational(args.eps, "--eps"))
    out: dict = {"linearization": {"gamma": lin.gamma, "c": lin.c}, "I": [1, 2]}
    if doc is not None:
        cfg = io.parse_config(doc)
        verdict = theorem1_report(cfg, lin).verdict
        i_stable = is_I_stable(cfg, (1, 2))
        out.update({"verdict": verdict, "I_stable": i_stable,
                    "agree": verdict.semistable == i_stable})
    return out


def cmd_compare_sl2(doc, args):
    cfg, lin = io.parse_config(doc), io.parse_linearization(_need(doc, "linearization"))
    if not isinstance(cfg.conic_class, NonSingular):
        raise io.DocumentError("compare-sl2 needs a nonsingular conic")
    param = parametrize_conic(cfg.form, cfg.points[0])
    pts: list[P1Point] = [param.inverse(p) for p in cfg.points]
    plane = theorem1_report(cfg, lin)
    line = sl2_report(pts, lin.c)
    return {"theorem_verdict": plane.verdict, "sl2_verdict": line.verdict,
            "parameters": pts, "agree": plane.verdict is classify_sl2(pts, lin.c),
            "gamma_above_half_c": lin.gamma > lin.total / 2}


def cmd_selftest(doc, args):
    res = run_sweep(args.cases, args.seed)
    out = {
        "cases": len(res.cases),
        "mismatches": len(res.mismatches),
        "tally": {f"{k[0]}/{k[1]}": v for k, v in sorted(res.tally().items())},
        "seed": args.seed,
    }
    if res.mismatches:
        out["first_mismatch"] = {
            "config": {"conic": res.mismatches[0].config.form, "points": res.mismatches[0].config.points},
            "linearization": {"gamma": res.mismatches[0].lin.gamma, "c": res.mismatches[0].lin.c},
        }
        raise Mismatch(out)
    return out


COMMANDS: dict[str, tuple[Callable, bool, str]] = {
    "classify": (cmd_classify, True, "closed-form verdict with every inequality"),
    "oracle": (cmd_oracle, True, "numerical-criterion search, cross-checked with classify"),
    "mu": (cmd_mu, True, "mu profile over b for one frame (default: identity)"),
    "normalize": (cmd_normalize, True, "rescale a linearization onto its cross-section"),
    "walls": (cmd_walls, True, "wall hits of a linearization"),
    "chamber-id": (cmd_chamber_id, True, "chamber sign vector; compare with 'target'"),
    "crossings": (cmd_crossings, True, "walls crossed from 'linearization' to 'target'"),
    "vertices": (cmd_vertices, False, "vertices of the linearization polytope"),
    "hassett": (cmd_hassett, True, "weighted stability of a marked tree"),
    "reduce": (cmd_reduce, True, "contract a tree to its weighted stable model"),
    "image": (cmd_image, True, "conic image of a stable chain"),
    "pipeline": (cmd_pipeline, True, "reduce, contract to a conic and judge stability"),
    "fcurve": (cmd_fcurve, True, "F-curve contraction predicates"),
    "boggi": (cmd_boggi, None, "the I = {1,2} linearization; judge a config if given"),
    "compare-sl2": (cmd_compare_sl2, True, "compare with points on P^1 (nonsingular conics)"),
    "selftest": (cmd_selftest, False, "randomized classifier/oracle agreement sweep"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conicgit", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, reads, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        if reads is not False:
            p.add_argument("--input", help="JSON document (default: stdin)")
        if name == "vertices":
            p.add_argument("--n", type=int, required=True)
        if name == "boggi":
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--eps", default="1/10")
        if name == "selftest":
            p.add_argument("--cases", type=int, default=500)
        if name in ("image", "pipeline"):
            p.add_argument("--allow-boundary", action="store_true",
                           help="accept clusters of weight exactly 1")
        if name == "pipeline":
            p.add_argument("--no-check", action="store_true",
                           help="accept linearizations off the c + gamma = 3 cross-section")
    return parser


def _read_doc(args, optional: bool):
    if args.input:
        with open(args.input) as fh:
            text = fh.read()
    elif optional and sys.stdin.isatty():
        return None
    else:
        text = sys.stdin.read()
    if optional and not text.strip():
        return None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise io.DocumentError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise io.DocumentError("top level: expected a JSON object")
    return doc


def _text(obj: Any, indent: str = "") -> list[str]:
    data = io.to_jsonable(obj)
    lines = []
    if isinstance(data, dict):
        if "verdict" in data and not indent:
            lines.append(str(data["verdict"]))
        for key in sorted(data):
            if key == "verdict" and not indent:
                continue
            val = data[key]
            if key == "inequalities":
                lines.append(f"{indent}inequalities:")
                for q in val:
                    mark = "=" if q["tight"] else ("<" if q["holds"] else ">")
                    lines.append(f"{indent}  {q['name']}: {q['lhs']} {mark} {q['rhs']}")
            elif isinstance(val, (dict, list)) and val and isinstance(val, dict):
                lines.append(f"{indent}{key}:")
                lines.extend(_text(val, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {json.dumps(val)}")
    else:
        lines.append(indent + json.dumps(data))
    return lines


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(io.dumps(payload))
    else:
        print("\n".join(_text(payload)))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func, reads, _ = COMMANDS[args.command]
    try:
        doc = _read_doc(args, optional=reads is None) if reads is not False else None
        payload = func(doc, args)
    except Mismatch as exc:
        _emit(exc.payload, args.format)
        print("error: oracle and classifier disagree", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(payload, args.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

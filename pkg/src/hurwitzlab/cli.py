"""Command-line front end: every operation as a reproducible subcommand.

Output is a canonical-JSON report (or CSV/SVG where that makes sense)
whose payload is a pure function of the fully-resolved configuration;
wall-clock time lives in a metadata field that golden comparisons drop.

Exit codes: 0 success or verdict pass, 1 usage error, 2 an experiment
verdict failed (or was withheld for lack of data), 3 internal invariant
violation (constraint family escape, census budget, failed assertion).
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .census import prototype_census, region_area, shell_count
from .dyadic import sqrt_ball
from .errors import BudgetExceeded, DigitUncertain, HurwitzError, \
    UnsupportedConstraint, ZeroStraddle
from .experiments import (DerivedConstants, USequenceSpec, bb_experiment,
                          derive_constants, estimate_cylinder_measure,
                          khinchin_experiment, levy_estimate,
                          next_digit_cap_check, ratio_band_check)
from .gaussian import GaussInt, GaussRational
from .hcf import (approx_quality, convergents, eval_finite, hcf_expand_ball,
                  hcf_expand_exact, DigitString)
from .quadratics import Surd
from .regions import (base_region_F, cylinder_region, is_regular,
                      region_classify, region_interior)
from .reportio import dumps_canonical, make_report, rows_to_csv
from .rng import SampleSpec


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def parse_complex_literal(text: str) -> GaussRational:
    """Exact complex literal: RE, IMi, or RE+IMi with parts int or p/q."""
    s = text.strip().replace(" ", "")
    if not s:
        raise _UsageError("empty complex literal")

    def parse_part(part, pos):
        if not part or part in "+-":
            part += "1"  # bare 'i' or '-i'
        try:
            return Fraction(part)
        except (ValueError, ZeroDivisionError):
            raise _UsageError(
                f"bad component {part!r} at position {pos} in {text!r}")

    if s.endswith("i"):
        body = s[:-1]
        # split at the last +/- that is not a leading sign or inside p/q
        split = None
        for idx in range(len(body) - 1, 0, -1):
            if body[idx] in "+-" and body[idx - 1] not in "+-/":
                split = idx
                break
        if split is None:
            return GaussRational.from_fractions(0, parse_part(body, 0))
        re_part = parse_part(body[:split], 0)
        im_part = parse_part(body[split:], split)
        return GaussRational.from_fractions(re_part, im_part)
    return GaussRational.from_fractions(parse_part(s, 0), 0)


def parse_gauss_int(text: str) -> GaussInt:
    q = parse_complex_literal(text)
    if q.den != 1:
        raise _UsageError(f"{text!r} is not a Gaussian integer")
    return q.num


def parse_digit_list(text: str):
    text = text.strip()
    if not text:
        return []
    return [parse_gauss_int(part) for part in text.split(",")]


def _digit_json(digits):
    return [d.to_json() for d in digits]


def _spec_from(args) -> SampleSpec:
    return SampleSpec(seed=args.seed, count=args.count, bits=args.bits,
                      depth=args.depth)


def _region_from_name(name: str, interior: bool):
    if name == "F":
        region = base_region_F()
    elif name in ("ref", "F1(1-i)"):
        region = cylinder_region([GaussInt(1, -1)])
        interior = True if name == "ref" else interior
    elif name.startswith("digits:"):
        region = cylinder_region(parse_digit_list(name[len("digits:"):]))
    else:
        raise _UsageError(f"unknown region {name!r}; use F, ref, digits:...")
    return region_interior(region) if interior else region


def build_parser() -> _Parser:
    p = _Parser(prog="hurwitz-lab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, sampling=False):
        sp.add_argument("--format", choices=("json", "csv", "svg"),
                        default="json")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--no-meta", action="store_true",
                        help="omit the wall-clock metadata envelope")
        if sampling:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--count", type=int, default=10000)
            sp.add_argument("--bits", type=int, default=256)
            sp.add_argument("--depth", type=int, default=64)
            sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("expand", help="HCF expansion, exact or certified ball")
    sp.add_argument("--z", help="exact complex literal, e.g. 2/5 or 1/2+1/3i")
    sp.add_argument("--sqrt-int", type=int, dest="sqrt_int",
                    help="expand sqrt(n) via a certified ball")
    sp.add_argument("--shift", default="0", help="Gaussian integer added to sqrt")
    sp.add_argument("--rotate", type=int, default=0, help="multiply by i^k")
    sp.add_argument("--prec", type=int, default=128, help="ball precision bits")
    sp.add_argument("--depth", type=int, default=64)
    add_common(sp)

    sp = sub.add_parser("eval", help="value of a finite continued fraction")
    sp.add_argument("--a0", default="0")
    sp.add_argument("--digits", required=True)
    add_common(sp)

    sp = sub.add_parser("convergents", help="convergent pairs p_n, q_n")
    sp.add_argument("--z")
    sp.add_argument("--a0", default="0")
    sp.add_argument("--digits")
    sp.add_argument("--depth", type=int, default=64)
    add_common(sp)

    sp = sub.add_parser("quality", help="scaled approximation errors e_n")
    sp.add_argument("--z", required=True)
    sp.add_argument("--depth", type=int, default=64)
    add_common(sp)

    sp = sub.add_parser("cylinder", help="region and classification of F_n(a)")
    sp.add_argument("--digits", required=True)
    add_common(sp)

    sp = sub.add_parser("census", help="breadth-first census of shapes")
    sp.add_argument("--depth", type=int, default=8)
    sp.add_argument("--cap", type=int, default=512)
    add_common(sp)

    sp = sub.add_parser("shells", help="lattice shell count in the inverted region")
    sp.add_argument("--region", default="F")
    sp.add_argument("--interior", action="store_true")
    sp.add_argument("--m", type=int, required=True)
    add_common(sp)

    sp = sub.add_parser("measure", help="Monte Carlo cylinder measure")
    sp.add_argument("--prefix", required=True)
    add_common(sp, sampling=True)

    sp = sub.add_parser("ratio", help="conditional digit probability")
    sp.add_argument("--prefix", required=True)
    sp.add_argument("--digit", required=True)
    add_common(sp, sampling=True)

    sp = sub.add_parser("bb", help="Borel-Bernstein zero-one experiment")
    sp.add_argument("--u", required=True, help="power:A, const:C, explicit:...")
    sp.add_argument("--windows", default="16:32,32:64,64:128,128:256,256:512")
    sp.add_argument("--no-constants", action="store_true",
                    help="skip the census-derived tail constants")
    add_common(sp, sampling=True)

    sp = sub.add_parser("lowbow", help="next-digit cap bound check")
    sp.add_argument("--prefix", required=True)
    sp.add_argument("--cap-m", type=int, required=True)
    add_common(sp, sampling=True)

    sp = sub.add_parser("levy", help="Levy constant estimate")
    sp.add_argument("--checkpoints", default=None,
                    help="comma-separated depths; default doubling to depth")
    add_common(sp, sampling=True)

    sp = sub.add_parser("khinchin", help="Khinchin certificate counts")
    sp.add_argument("--beta", default="2")
    sp.add_argument("--big-d", type=float, default=None, dest="big_d")
    sp.add_argument("--checkpoints", default="256,512")
    add_common(sp, sampling=True)

    return p


def _run_command(args):
    """Returns (report dict or (text, kind) tuple, verdict_ok flag)."""
    cmd = args.command

    if cmd == "expand":
        if (args.z is None) == (args.sqrt_int is None):
            raise _UsageError("expand needs exactly one of --z / --sqrt-int")
        if args.z is not None:
            z = parse_complex_literal(args.z)
            t = hcf_expand_exact(z, max_depth=args.depth)
            payload = {
                "input": z.to_json(),
                "mode": "exact",
                "digit_string": t.digit_string.to_json(),
                "tails_in_f": True,
                "convergents": t.convergents().to_json(),
            }
            cfg = {"z": args.z, "depth": args.depth}
        else:
            ball = sqrt_ball(args.sqrt_int, args.prec)
            ball = ball.sub_gauss(-parse_gauss_int(args.shift))
            for _ in range(args.rotate % 4):
                ball = ball.rotate_i()
            d = hcf_expand_ball(ball, args.depth)
            payload = {
                "input": {"sqrt_int": args.sqrt_int, "shift": args.shift,
                          "rotate": args.rotate % 4, "prec": args.prec},
                "mode": "ball",
                "digit_string": d.to_json(),
            }
            cfg = {"sqrt_int": args.sqrt_int, "shift": args.shift,
                   "rotate": args.rotate % 4, "prec": args.prec,
                   "depth": args.depth}
        return make_report("expand", cfg, payload), True

    if cmd == "eval":
        a0 = parse_gauss_int(args.a0)
        digits = parse_digit_list(args.digits)
        value = eval_finite(DigitString(a0, digits, True))
        payload = {"value": value.to_json(), "value_str": str(value)}
        return make_report("eval", {"a0": args.a0, "digits": args.digits},
                           payload), True

    if cmd == "convergents":
        if args.z:
            t = hcf_expand_exact(parse_complex_literal(args.z),
                                 max_depth=args.depth)
            seq = t.convergents()
            cfg = {"z": args.z, "depth": args.depth}
        else:
            if not args.digits:
                raise _UsageError("convergents needs --z or --digits")
            d = DigitString(parse_gauss_int(args.a0),
                            parse_digit_list(args.digits), False)
            seq = convergents(d)
            cfg = {"a0": args.a0, "digits": args.digits}
        payload = {"pairs": seq.to_json(),
                   "determinant_ok": seq.determinant_ok(),
                   "growth_ok": seq.growth_ok()}
        return make_report("convergents", cfg, payload), True

    if cmd == "quality":
        z = parse_complex_literal(args.z)
        t = hcf_expand_exact(z, max_depth=args.depth)
        rows = []
        ok_all = True
        for n in range(max(len(t.digit_string) - 1, 0)):
            e, ok = approx_quality(t, n)
            ok_all &= ok
            rows.append({"n": n, "e_n": e, "certified": ok})
        payload = {"digits": len(t.digit_string), "rows": rows,
                   "bound": float(Surd(4, 2, 2)),
                   "all_within_bound": ok_all}
        return make_report("quality", {"z": args.z, "depth": args.depth},
                           payload), ok_all

    if cmd == "cylinder":
        digits = parse_digit_list(args.digits)
        region = cylinder_region(digits)
        cls = region_classify(region)
        payload = {
            "digits": _digit_json(digits),
            "classification": cls,
            "constraints": region.describe(),
            "regular": is_regular(digits),
        }
        if cls in ("Proper", "FullSquare"):
            payload["area"] = list(region_area(region))
        return make_report("cylinder", {"digits": args.digits}, payload), True

    if cmd == "census":
        result = prototype_census(max_depth=args.depth, cap=args.cap)
        payload = result.report()
        if args.format == "svg":
            return (_census_svg(result), "svg"), True
        if args.format == "csv":
            rows = [(s["id"], s["classification"], s["first_depth"],
                     s.get("area", [None, None])[0],
                     s.get("area", [None, None])[1],
                     ";".join(s["constraints"]))
                    for s in payload["shapes"]]
            return (rows_to_csv(("id", "classification", "first_depth",
                                 "area_lo", "area_hi", "constraints"), rows),
                    "csv"), True
        return make_report("census", {"depth": args.depth, "cap": args.cap},
                           payload), True

    if cmd == "shells":
        region = _region_from_name(args.region, args.interior)
        count = shell_count(region, args.m)
        payload = {"region": args.region, "m": args.m, "count": count}
        return make_report("shells", {"region": args.region, "m": args.m,
                                      "interior": args.interior},
                           payload), True

    if cmd == "measure":
        spec = _spec_from(args)
        rep = estimate_cylinder_measure(parse_digit_list(args.prefix), spec,
                                        workers=args.workers)
        return rep, rep["payload"]["verdict"] == "pass"

    if cmd == "ratio":
        spec = _spec_from(args)
        rep = ratio_band_check(parse_digit_list(args.prefix),
                               parse_gauss_int(args.digit), spec,
                               workers=args.workers)
        return rep, rep["payload"]["verdict"] == "pass"

    if cmd == "bb":
        spec = _spec_from(args)
        windows = []
        for token in args.windows.split(","):
            lo, _, hi = token.partition(":")
            windows.append((int(lo), int(hi)))
        constants = None if args.no_constants else derive_constants()
        rep = bb_experiment(USequenceSpec.parse(args.u), spec, windows,
                            constants, workers=args.workers)
        return rep, rep["payload"]["sandwich_ok"]

    if cmd == "lowbow":
        spec = _spec_from(args)
        rep = next_digit_cap_check(parse_digit_list(args.prefix), args.cap_m,
                                   spec, derive_constants(),
                                   workers=args.workers)
        return rep, rep["payload"]["verdict"] == "pass"

    if cmd == "levy":
        spec = _spec_from(args)
        if args.checkpoints:
            cps = [int(c) for c in args.checkpoints.split(",")]
        else:
            cps = []
            c = spec.depth
            while c >= 8 and len(cps) < 4:
                cps.append(c)
                c //= 2
            cps.reverse()
        rep = levy_estimate(spec, cps, workers=args.workers)
        return rep, rep["payload"]["levy_b"] is not None

    if cmd == "khinchin":
        spec = _spec_from(args)
        cps = [int(c) for c in args.checkpoints.split(",")]
        big_d = args.big_d
        if big_d is None:
            quick = levy_estimate(
                SampleSpec(spec.seed, min(200, spec.count), spec.bits,
                           min(spec.depth, 200)),
                [min(spec.depth, 200)], workers=args.workers)
            big_d = 1.2 * quick["payload"]["levy_b"]
        rep = khinchin_experiment(Fraction(args.beta), spec, big_d,
                                  checkpoints=cps, workers=args.workers)
        return rep, rep["payload"]["verified_violations"] == 0

    raise _UsageError(f"unknown command {cmd}")


def _census_svg(result) -> str:
    """One glyph per shape: the square plus its constraint circles."""
    cell = 120
    pad = 10
    shapes = result.nonempty_shapes()
    cols = 8
    rows = (len(shapes) + cols - 1) // cols
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" '
           f'width="{cols * cell}" height="{rows * cell}">']
    for idx, rec in enumerate(shapes):
        ox = (idx % cols) * cell + cell // 2
        oy = (idx // cols) * cell + cell // 2
        scale = cell - 2 * pad
        out.append(f'<g transform="translate({ox},{oy})">')
        s = scale / 2
        out.append(f'<rect x="{-s / 1}" y="{-s / 1}" width="{scale / 1}" '
                   f'height="{scale / 1}" fill="none" stroke="black"/>')
        for con in rec.region.cons:
            if con[0] == "D":
                cx, cy = con[1] * scale, -con[2] * scale
                dash = ' stroke-dasharray="3,3"' if not con[4] else ""
                out.append(f'<circle cx="{cx}" cy="{cy}" r="{scale}" '
                           f'fill="none" stroke="gray"{dash}/>')
        out.append(f'<text x="{-s}" y="{-s - 2}" font-size="10">'
                   f'{rec.rid}:{rec.classification[0]}d{rec.first_depth}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _flatten_csv(report):
    kind = report["kind"]
    payload = report["payload"]
    if kind == "bb":
        headers = ("window_lo", "window_hi", "covered", "frac_mod",
                   "frac_sup", "frac_sup_scaled", "tail_bound")
        rows = [(w["window"][0], w["window"][1], w["covered"], w["frac_mod"],
                 w["frac_sup"], w["frac_sup_scaled"], w["tail_bound"])
                for w in payload["windows"]]
        return rows_to_csv(headers, rows)
    if kind == "levy":
        headers = ("checkpoint", "samples", "exhausted", "mean", "sd")
        rows = [(r["checkpoint"], r["samples"], r["exhausted"], r["mean"],
                 r["sd"]) for r in payload["checkpoints"]]
        return rows_to_csv(headers, rows)
    if kind == "khinchin":
        headers = ("checkpoint", "mean_count")
        rows = list(zip(payload["checkpoints"], payload["mean_counts"]))
        return rows_to_csv(headers, rows)
    if kind == "quality":
        headers = ("n", "e_n", "certified")
        rows = [(r["n"], r["e_n"], r["certified"]) for r in payload["rows"]]
        return rows_to_csv(headers, rows)
    raise _UsageError(f"no csv layout for {kind}")


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return 1
    t0 = time.monotonic()
    try:
        result, ok = _run_command(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (UnsupportedConstraint, BudgetExceeded, AssertionError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except (DigitUncertain, ZeroStraddle) as exc:
        print(f"certification stopped: {exc}", file=sys.stderr)
        return 2
    except HurwitzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if isinstance(result, tuple):
        text, _ = result
    else:
        fmt = getattr(args, "format", "json")
        if fmt == "csv":
            text = _flatten_csv(result)
        elif fmt == "svg":
            raise SystemExit("svg only supported for census")
        else:
            if not args.no_meta:
                result = dict(result)
                result["meta"] = {
                    "wall_ms": round(1000 * (time.monotonic() - t0), 3)}
            text = dumps_canonical(result) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

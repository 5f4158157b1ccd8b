"""Command-line front end: catalog, residual sweeps, zero scans, tracking, reports.

Exit codes: 0 success / all claims PASS, 1 claim-check FAIL, 2 usage error,
3 numerical failure.  Numeric output is printed with 12 significant digits,
CSV blocks open with a versioned header line, and identical inputs produce
byte-identical output, so the files are safe to diff across runs.

An optional key=value config file mirrors the flags of the chosen command;
explicit flags win because the config tokens are inserted before them.
"""

import argparse
import json
import re
import sys
from pathlib import Path

from .analytic import FunctionSpec, dirichlet_l_spec, scaled_zeta_spec, zeta_spec
from .characters import catalog_self_dual
from .deformation import (
    TAU_GRID_DEFAULT,
    pair_zeros,
    run_claim_report,
    standard_family,
    trajectory_csv_lines,
)
from .errors import DomainError, PrecisionError
from .funceq import FunctionalEquation, fe_modulus, fe_zeta, residual_sweep
from .zerofind import (
    Rect,
    count_zeros_box,
    scan_line_zeros,
    verify_on_line,
    zero_csv_lines,
)

HEADER = "# deform-zeros v1"
T_LIMIT = 60.0


def _g(x: float) -> str:
    return f"{x:.12g}"


def _kappa(parity: str) -> int:
    return 0 if parity == "even" else 1


def _parse_family(text: str) -> int:
    m = re.fullmatch(r"q(\d+)", text)
    if m is None:
        raise DomainError(f"family selector must look like q5, got {text!r}")
    return int(m.group(1))


def _parse_range(text: str, what: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise DomainError(f"{what} range must look like a:b, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise DomainError(f"{what} range must be numeric, got {text!r}")
    return lo, hi


def _parse_t_range(text: str) -> tuple[float, float]:
    lo, hi = _parse_range(text, "t")
    if max(abs(lo), abs(hi)) > T_LIMIT:
        raise DomainError(f"t range must stay within |t| <= {_g(T_LIMIT)}, got {text!r}")
    return lo, hi


def _parse_box(text: str) -> Rect:
    parts = text.split(":")
    if len(parts) != 4:
        raise DomainError(f"box must look like sigma1:sigma2:t1:t2, got {text!r}")
    try:
        s1, s2, t1, t2 = (float(p) for p in parts)
    except ValueError:
        raise DomainError(f"box must be numeric, got {text!r}")
    if max(abs(t1), abs(t2)) > T_LIMIT:
        raise DomainError(f"box must stay within |t| <= {_g(T_LIMIT)}, got {text!r}")
    return Rect(s1, s2, t1, t2)


def _pick_character(q: int, kappa: int):
    for entry in catalog_self_dual(q, kappa):
        if entry.q == q:
            return entry.character
    raise DomainError(
        f"no cataloged real non-principal character mod {q} with parity {kappa}"
    )


def _resolve_spec(args) -> tuple[FunctionSpec, FunctionalEquation]:
    kappa = _kappa(args.parity)
    if args.family is not None:
        fam = standard_family(_parse_family(args.family), kappa)
        f = fam.member(args.tau)
        fe = fam.shared_fe
    elif args.func == "zeta":
        f, fe = zeta_spec(), fe_zeta()
    elif args.func == "f0":
        if args.q is None:
            raise DomainError("--f f0 needs --q")
        f = scaled_zeta_spec(args.q)
        fe = fe_modulus(args.q, 0, kind="dirichlet_type")
    elif args.func == "L":
        if args.q is None:
            raise DomainError("--f L needs --q")
        f = dirichlet_l_spec(_pick_character(args.q, kappa))
        fe = fe_modulus(args.q, kappa, kind="dirichlet_type")
    else:
        raise DomainError("pick a function with --family qN or --f zeta|f0|L")
    if getattr(args, "fe", None) is not None:
        fe = fe_modulus(_parse_family(args.fe), kappa, kind="dirichlet_type")
    return f, fe


# ----------------------------------------------------------------- commands

def cmd_chars(args) -> int:
    if args.qmax < 1:
        raise DomainError(f"--qmax must be >= 1, got {args.qmax}")
    entries = catalog_self_dual(args.qmax, _kappa(args.parity))
    if args.json:
        payload = [
            {
                "q": e.q,
                "label": e.character.label,
                "parity": e.classification.parity,
                "conductor": e.classification.conductor,
                "primitive": e.classification.is_primitive,
                "epsilon": [e.root.epsilon.real, e.root.epsilon.imag],
            }
            for e in entries
        ]
        print(json.dumps(payload, sort_keys=True, indent=2))
        return 0
    lines = [HEADER, "q,label,parity,conductor,primitive,epsilon_re,epsilon_im"]
    for e in entries:
        lines.append(
            f"{e.q},{e.character.label},{e.classification.parity},"
            f"{e.classification.conductor},{'yes' if e.classification.is_primitive else 'no'},"
            f"{_g(e.root.epsilon.real)},{_g(e.root.epsilon.imag)}"
        )
    print("\n".join(lines))
    return 0


def cmd_verify_fe(args) -> int:
    f, fe = _resolve_spec(args)
    kwargs = {}
    if args.sigma is not None:
        kwargs["sigma_range"] = _parse_range(args.sigma, "sigma")
    if args.t is not None:
        kwargs["t_range"] = _parse_t_range(args.t)
    rows, skipped = residual_sweep(f, fe, **kwargs)
    if not rows:
        raise PrecisionError("every grid point was skipped; nothing to verify")
    worst = max(r[2] for r in rows)
    verdict = "PASS" if worst < args.tol else "FAIL"
    lines = [
        HEADER,
        f"function,{f.name}",
        f"fe,q={fe.modulus},kappa={fe.kappa}",
        f"grid_points,{len(rows)}",
        f"max_residual,{_g(worst)}",
        f"tolerance,{_g(args.tol)}",
        f"skipped,{len(skipped)}",
    ]
    for sig, t, reason in skipped:
        lines.append(f"skipped_point,{_g(sig)},{_g(t)},{reason}")
    lines.append(f"verdict,{verdict}")
    print("\n".join(lines))
    return 0 if verdict == "PASS" else 1


def cmd_zeros(args) -> int:
    f, fe = _resolve_spec(args)
    if args.action == "scan":
        if args.t is None:
            raise DomainError("zeros scan needs --t a:b")
        records = scan_line_zeros(f, fe, _parse_t_range(args.t), step=args.step)
        print("\n".join(zero_csv_lines(records)))
        return 0
    if args.box is None:
        raise DomainError(f"zeros {args.action} needs --box sigma1:sigma2:t1:t2")
    rect = _parse_box(args.box)
    if args.action == "count":
        rep = count_zeros_box(f, rect, fe, step=args.step)
        r = rep.rectangle
        print(
            "\n".join(
                [
                    HEADER,
                    f"box,{_g(r.sigma1)},{_g(r.sigma2)},{_g(r.t1)},{_g(r.t2)}",
                    f"winding_count,{rep.winding_count}",
                    f"line_count,{'' if rep.line_count is None else rep.line_count}",
                    f"boundary_min_modulus,{_g(rep.boundary_min_modulus)}",
                ]
            )
        )
        return 0
    rep = verify_on_line(f, fe, rect, step=args.step)
    r = rep.rectangle
    lines = [
        HEADER,
        f"box,{_g(r.sigma1)},{_g(r.sigma2)},{_g(r.t1)},{_g(r.t2)}",
        f"winding_count,{rep.winding_count}",
        f"line_count,{rep.line_count}",
        f"verdict,{rep.verdict}",
    ]
    for d in rep.discrepancies:
        b = d.rectangle
        lines.append(
            f"discrepancy,{_g(b.sigma1)},{_g(b.sigma2)},{_g(b.t1)},{_g(b.t2)},"
            f"{d.winding_count},{'' if d.line_count is None else d.line_count}"
        )
    print("\n".join(lines))
    return 0 if rep.verdict == "PASS" else 1


def cmd_track(args) -> int:
    q = _parse_family(args.family)
    fam = standard_family(q, _kappa(args.parity))
    t_range = _parse_t_range(args.t)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for tau in TAU_GRID_DEFAULT:
        records = scan_line_zeros(fam.member(tau), fam.shared_fe, t_range, step=args.step)
        path = out / f"zeros_tau{tau:g}.csv"
        path.write_text("\n".join(zero_csv_lines(records)) + "\n")
        written.append(path)
    pairing = pair_zeros(fam, t_range, tau_steps=args.steps, step=args.step)
    path = out / "trajectories.csv"
    path.write_text("\n".join(trajectory_csv_lines(pairing.trajectories)) + "\n")
    written.append(path)
    statuses = [tr.status for tr in pairing.trajectories]
    print(
        "\n".join(
            [
                HEADER,
                f"family,q={q},kappa={fam.shared_fe.kappa}",
                f"interval,{_g(pairing.interval[0])},{_g(pairing.interval[1])}",
                f"extended,{_g(pairing.extended[0])},{_g(pairing.extended[1])}",
                f"n0,{pairing.n0}",
                f"n1,{pairing.n1}",
                f"pairs,{len(pairing.pairs)}",
                f"completed,{statuses.count('completed')}",
                f"merged,{statuses.count('merged')}",
                f"lost,{statuses.count('lost')}",
                f"files,{len(written)}",
            ]
        )
    )
    return 0


def cmd_report(args) -> int:
    chi = _pick_character(args.q, _kappa(args.parity))
    rep = run_claim_report(
        args.q, chi, t_max=args.tmax, tau_steps=args.steps, step=args.step
    )
    text = json.dumps(rep, sort_keys=True, indent=2)
    if args.out is not None:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0 if all(v == "PASS" for v in rep["claims"].values()) else 1


# ------------------------------------------------------------------ plumbing

def _add_function_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="deformation family, e.g. q5")
    p.add_argument("--tau", type=float, default=0.0, help="family parameter in [0, 1]")
    p.add_argument("--f", dest="func", choices=("zeta", "f0", "L"), help="fixed function")
    p.add_argument("--q", type=int, help="modulus for --f f0 / --f L")
    p.add_argument("--parity", choices=("even", "odd"), default="even")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="deform-zeros",
        description="Shared-functional-equation families: catalog, verification, "
        "zero tracking, claim reports.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chars", help="catalog of real non-principal characters")
    c.add_argument("--parity", choices=("even", "odd"), default="even")
    c.add_argument("--qmax", type=int, default=21)
    c.add_argument("--json", action="store_true")
    c.set_defaults(run=cmd_chars)

    v = sub.add_parser("verify-fe", help="functional-equation residual sweep")
    _add_function_flags(v)
    v.add_argument("--fe", help="impose the equation of this modulus, e.g. q8")
    v.add_argument("--sigma", help="sigma grid range a:b")
    v.add_argument("--t", help="t grid range a:b")
    v.add_argument("--tol", type=float, default=1e-8)
    v.set_defaults(run=cmd_verify_fe)

    z = sub.add_parser("zeros", help="scan, count, or verify critical-line zeros")
    z.add_argument("action", choices=("scan", "count", "verify"))
    _add_function_flags(z)
    z.add_argument("--t", help="line scan range a:b")
    z.add_argument("--box", help="rectangle sigma1:sigma2:t1:t2")
    z.add_argument("--step", type=float, default=0.05)
    z.set_defaults(run=cmd_zeros)

    tr = sub.add_parser("track", help="trajectory CSVs over the default tau grid")
    tr.add_argument("--family", required=True)
    tr.add_argument("--parity", choices=("even", "odd"), default="even")
    tr.add_argument("--t", default="0:30")
    tr.add_argument("--steps", type=int, default=64)
    tr.add_argument("--step", type=float, default=0.05)
    tr.add_argument("--out", default=".")
    tr.set_defaults(run=cmd_track)

    r = sub.add_parser("report", help="full measured claim report as JSON")
    r.add_argument("--q", type=int, required=True)
    r.add_argument("--parity", choices=("even", "odd"), default="even")
    r.add_argument("--tmax", type=float, default=30.0)
    r.add_argument("--steps", type=int, default=64)
    r.add_argument("--step", type=float, default=0.05)
    r.add_argument("--out", help="write the JSON here instead of stdout")
    r.set_defaults(run=cmd_report)

    return p


def _config_tokens(path: str) -> list[str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read config file {path}: {exc}")
    tokens: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line is not key=value: {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        if not key:
            raise DomainError(f"config line has an empty key: {raw!r}")
        if val.lower() == "true":
            tokens.append(f"--{key}")
        elif val.lower() == "false":
            continue
        else:
            tokens.extend((f"--{key}", val))
    return tokens


# flags whose values may start with a minus sign (negative sigma or t);
# argparse reads such a value as an option unless it is joined with "="
_VALUE_FLAGS = ("--box", "--t", "--sigma")


def _join_dash_values(argv: list[str]) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _apply_config(argv: list[str]) -> list[str]:
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise DomainError("--config needs a file path")
    tokens = _config_tokens(argv[i + 1])
    rest = argv[:i] + argv[i + 2 :]
    # insert after the positionals so explicit flags, coming later, win
    k = 0
    while k < len(rest) and not rest[k].startswith("-"):
        k += 1
    return rest[:k] + tokens + rest[k:]


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _join_dash_values(_apply_config(argv))
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.run(args)
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PrecisionError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Command-line drivers: coherence reports, scatter data, sweeps and checks.

Every command writes CSV (default) or JSON to ``--out`` or stdout.  CSV
output starts with ``#`` comment lines carrying the tool version, command,
seed, sample count and convention, followed by a header row.  Output is
deterministic given the seed and flags.

Exit status: 0 when all asserted bounds hold, 1 on a bound violation,
2 on a usage or input error.

Basis specs are either two amplitude pairs ``"re,im,re,im;re,im,re,im"``
(``|b1>`` then ``|b2>``) or the symmetric family ``"sym:alpha[,phi]"``
(vectors at polar angle ``pi - alpha`` and azimuths ``phi``, ``phi + pi``;
overlap ``cos(alpha)``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, qstate
from .channels import is_nio, is_nomio, load_channel, phase_flip_demo
from .comeasure import Convention, c_rel_bloch, c_trace, c_trace_bloch, mixedness_report
from .duality import BOUND, BOUND_TOL, DEFAULT_GRID, sweep_duality
from .multibasis import cyclic_bases, mutually_orthogonal_pair, verify_family_bounds
from .nobasis import make_basis, nearest_nois
from .thermo import TwoLevelSystem, coherence_basis_family, linearity_check

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

FLOAT_FMT = "%.10g"

SEED_STREAMS = {"scatter": 1, "bounds": 2}


class UsageError(ValueError):
    pass


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return FLOAT_FMT % x
    return str(x)


def _json_default(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not serializable: {type(x).__name__}")


# ---------------------------------------------------------------------------
# spec parsing


def _floats(text, what):
    try:
        return [float(tok) for tok in text.split(",")]
    except ValueError:
        bad = next(t for t in text.split(",") if not _is_float(t))
        raise UsageError(f"malformed {what}: bad token {bad!r}") from None


def _is_float(tok):
    try:
        float(tok)
    except ValueError:
        return False
    return True


def parse_basis(spec):
    spec = spec.strip()
    if spec.startswith("sym:"):
        vals = _floats(spec[4:], "basis spec")
        if len(vals) not in (1, 2):
            raise UsageError(f"sym basis takes alpha[,phi], got {spec!r}")
        alpha = vals[0]
        phi = vals[1] if len(vals) == 2 else 0.0
        return coherence_basis_family(alpha, phi).basis
    parts = spec.split(";")
    if len(parts) != 2:
        raise UsageError(f"basis spec needs two amplitude pairs separated by ';', got {spec!r}")
    kets = []
    for part in parts:
        vals = _floats(part, "basis spec")
        if len(vals) != 4:
            raise UsageError(f"basis vector needs re,im,re,im, got {part!r}")
        kets.append(qstate.ket(complex(vals[0], vals[1]), complex(vals[2], vals[3]), normalize=True))
    return make_basis(*kets)


def parse_state(spec):
    """A Bloch triple ``x,y,z`` or an amplitude quadruple ``re,im,re,im``."""
    vals = _floats(spec, "state spec")
    if len(vals) == 3:
        return qstate.density_from_bloch(np.array(vals))
    if len(vals) == 4:
        psi = qstate.ket(complex(vals[0], vals[1]), complex(vals[2], vals[3]), normalize=True)
        return qstate.dm(psi)
    raise UsageError(f"state spec needs 3 (Bloch) or 4 (amplitudes) numbers, got {spec!r}")


def parse_grid(spec):
    """``lo:hi:step`` (inclusive) or a comma-separated list."""
    if ":" in spec:
        vals = _floats(spec.replace(":", ","), "grid spec")
        if len(vals) != 3 or vals[2] <= 0:
            raise UsageError(f"grid range must be lo:hi:step with step > 0, got {spec!r}")
        lo, hi, step = vals
        n = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return [round(lo + k * step, 12) for k in range(n)]
    return _floats(spec, "grid spec")


def parse_linspace(spec, what):
    """``lo:hi:n`` (n evenly spaced points, inclusive) or a comma list."""
    if ":" in spec:
        vals = _floats(spec.replace(":", ","), what)
        if len(vals) != 3 or vals[2] < 1 or vals[2] != int(vals[2]):
            raise UsageError(f"{what} range must be lo:hi:count, got {spec!r}")
        return [float(x) for x in np.linspace(vals[0], vals[1], int(vals[2]))]
    return _floats(spec, what)


def parse_family(spec):
    spec = spec.strip()
    if spec == "triangle":
        return cyclic_bases(3)
    if spec == "square":
        return cyclic_bases(4)
    if spec.startswith("cyclic:"):
        try:
            n = int(spec[7:])
        except ValueError:
            raise UsageError(f"bad vertex count in {spec!r}") from None
        return cyclic_bases(n)
    if spec.startswith("mutual:"):
        vals = _floats(spec[7:], "family spec")
        theta0 = vals[0]
        phi0 = vals[1] if len(vals) > 1 else 0.0
        psi = qstate.ket_from_angles(theta0, phi0)
        return mutually_orthogonal_pair(psi)
    raise UsageError(
        f"unknown family {spec!r} (expected triangle, square, cyclic:N or mutual:theta0[,phi0])"
    )


# ---------------------------------------------------------------------------
# output


def _meta(args, **extra):
    meta = {
        "tool": "noncoh",
        "version": __version__,
        "command": args.command,
        "seed": args.seed,
        "samples": args.samples,
        "convention": args.convention,
    }
    meta.update(extra)
    return meta


def render_table(meta, columns, rows, fmt):
    if fmt == "json":
        doc = {"meta": meta, "rows": [dict(zip(columns, r)) for r in rows]}
        return json.dumps(doc, indent=2, default=_json_default) + "\n"
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}={_fmt(v)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def render_doc(meta, body, fmt):
    """Non-tabular output: JSON document, or ``key: value`` lines."""
    if fmt == "json":
        return json.dumps({"meta": meta, **body}, indent=2, default=_json_default) + "\n"
    lines = [f"# {k}={_fmt(v)}" for k, v in meta.items()]
    for k, v in body.items():
        if isinstance(v, (list, tuple, np.ndarray)):
            v = "[" + ", ".join(_fmt(x) for x in np.asarray(v).ravel()) + "]"
        lines.append(f"{k}: {_fmt(v)}")
    return "\n".join(lines) + "\n"


def _emit(text, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_coherence(args):
    rho = parse_state(args.state)
    basis = parse_basis(args.basis)
    point, dist = nearest_nois(rho, basis)
    value_rel, p_rel = c_rel_bloch(qstate.bloch_from_density(rho), basis)
    mix = mixedness_report(rho)
    body = {
        "bloch": qstate.bloch_from_density(rho),
        "overlap": basis.overlap,
        "c_trace_euclidean": c_trace(rho, basis, Convention.EUCLIDEAN),
        "c_trace_half": c_trace(rho, basis, Convention.HALF),
        "c_trace": c_trace(rho, basis, args.convention),
        "c_rel_bits": float(value_rel),
        "c_rel_weight": float(p_rel),
        "nearest_nois_weight": point.weight,
        "nearest_nois_distance": dist,
        "bloch_radius": mix.bloch_radius,
        "linear_mixedness": mix.linear_mixedness,
        "entropy_bits": mix.entropy,
        "purity": mix.purity,
    }
    _emit(render_doc(_meta(args), body, args.format), args)
    return EXIT_OK


def cmd_scatter(args):
    samples = 10**4 if args.samples is None else args.samples
    if samples < 1:
        raise UsageError("--samples must be positive")
    basis = coherence_basis_family(args.alpha, args.phi).basis
    rng = qstate.make_rng(args.seed, SEED_STREAMS["scatter"])
    pts = qstate.uniform_ball(rng, samples)
    r = np.linalg.norm(pts, axis=1)
    entropy = qstate.binary_entropy(0.5 * (1.0 + r))
    rel, _ = c_rel_bloch(pts, basis)
    tr = c_trace_bloch(pts, basis, args.convention)
    purity = 0.5 * (1.0 + r * r)
    rows = zip(entropy, rel, tr, purity)
    meta = _meta(args, samples=samples, alpha=args.alpha, phi=args.phi, measure="hilbert-schmidt")
    _emit(render_table(meta, ["S_bits", "c_rel_bits", "c_trace", "purity"], rows, args.format), args)
    return EXIT_OK


def cmd_duality_sweep(args):
    samples = 10**6 if args.samples is None else args.samples
    if samples < 1:
        raise UsageError("--samples must be positive")
    grid = DEFAULT_GRID if args.grid is None else parse_grid(args.grid)
    if any(not 0.0 <= g <= 1.0 for g in grid):
        raise UsageError("duality grid values must lie in [0, 1]")
    res = sweep_duality(grid, samples_per_r=samples, seed=args.seed, boundary=not args.no_boundary)
    cols = ["r", "max_c_tilde", "max_d_tilde", "max_sum", "samples", "discarded", "seed"]
    rows = [
        (row.r, row.max_c_tilde, row.max_d_tilde, row.max_sum, row.samples, row.discarded, res.seed)
        for row in res.rows
    ]
    meta = _meta(args, samples=samples, boundary=res.boundary, bound=BOUND, violations=res.violations)
    _emit(render_table(meta, cols, rows, args.format), args)
    if res.violations:
        print(f"bound violated: {res.violations} samples exceed {BOUND} + {BOUND_TOL:g}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_bounds(args):
    samples = 10**5 if args.samples is None else args.samples
    if samples < 1:
        raise UsageError("--samples must be positive")
    fam = parse_family(args.family)
    rng = qstate.make_rng(args.seed, SEED_STREAMS["bounds"])
    rep = verify_family_bounds(fam, samples, rng, seed=args.seed)
    doc = {"meta": _meta(args, samples=samples), **rep.to_dict(), "passed": rep.passed}
    # bounds reports are JSON regardless of --format
    _emit(json.dumps(doc, indent=2, default=_json_default) + "\n", args)
    if rep.gated and not rep.passed:
        print(f"bound violated for {rep.family}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_energy_cost(args):
    temps = parse_linspace(args.temperatures, "temperature grid")
    alphas = parse_linspace(args.alphas, "alpha grid")
    e1s = _floats(args.e1, "e1 list")
    if any(t <= 0 for t in temps):
        raise UsageError("temperatures must be positive")
    if any(e <= 0 for e in e1s):
        raise UsageError("e1 values must be positive")
    conv = Convention.coerce(args.convention)
    rows = []
    worst = 0.0
    for e1 in e1s:
        sys_ = TwoLevelSystem(e1)
        for T in temps:
            for a in alphas:
                fam = coherence_basis_family(a, args.phi)
                delta, coh, ratio = linearity_check(sys_, T, fam)
                worst = max(worst, abs(ratio - 0.5 * e1))
                if args.units_e1:
                    delta = delta / e1
                rows.append((T, a, args.phi, e1, delta, conv.scale * coh, ratio))
    meta = _meta(args, delta_units="e1" if args.units_e1 else "energy", max_ratio_error=worst)
    cols = ["T", "alpha", "phi", "e1", "delta", "c_trace", "ratio"]
    _emit(render_table(meta, cols, rows, args.format), args)
    if worst > 1e-8:
        print(f"ratio deviates from e1/2 by {worst:.3g}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_channel_check(args):
    if args.demo == "phase-flip":
        basis = make_basis(qstate.KET0, qstate.KET_PLUS) if args.basis is None else parse_basis(args.basis)
        psi_in, psi_out, c_in, c_out = phase_flip_demo(basis)
        scale = Convention.coerce(args.convention).scale
        body = {
            "demo": "phase-flip",
            "input_bloch": qstate.bloch_from_ket(psi_in),
            "output_bloch": qstate.bloch_from_ket(psi_out),
            "c_trace_in": scale * c_in,
            "c_trace_out": scale * c_out,
            "increase": scale * (c_out - c_in),
            "monotone": bool(c_out <= c_in),
            "note": (
                "phase flip in the basis raises coherence; it is not a free operation"
                if c_out > c_in
                else "no coherence increase for this basis and input state"
            ),
        }
        _emit(render_doc(_meta(args), body, args.format), args)
        return EXIT_OK
    if args.channel is None:
        raise UsageError("channel-check needs a channel file or --demo phase-flip")
    if args.basis is None:
        raise UsageError("channel-check needs --basis")
    ch = load_channel(args.channel)
    basis = parse_basis(args.basis)
    body = {"kraus_count": len(ch.kraus_ops), "completeness_residual": ch.completeness_residual()}
    for name, verdict in (("nomio", is_nomio(ch, basis)), ("nio", is_nio(ch, basis))):
        body[name] = verdict.is_member
        if verdict.witness is not None:
            p, out, dist = verdict.witness
            body[f"{name}_witness_weight"] = p
            body[f"{name}_witness_bloch"] = qstate.bloch_from_density(out)
            body[f"{name}_witness_distance"] = dist
    _emit(render_doc(_meta(args), body, args.format), args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    common.add_argument("--samples", type=int, default=None, help="sample count (command-specific default)")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--convention", choices=("euclidean", "half"), default="euclidean")

    p = argparse.ArgumentParser(
        prog="noncoh",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=f"noncoh {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("coherence", parents=[common], help="coherence report for one state")
    s.add_argument("--state", required=True, help="Bloch triple x,y,z or amplitudes re,im,re,im")
    s.add_argument("--basis", required=True, help="basis spec")
    s.set_defaults(func=cmd_coherence)

    s = sub.add_parser("scatter", parents=[common], help="entropy vs relative-entropy coherence data")
    s.add_argument("--alpha", type=float, default=math.pi / 3, help="basis parameter (overlap cos alpha)")
    s.add_argument("--phi", type=float, default=0.0)
    s.set_defaults(func=cmd_scatter)

    s = sub.add_parser("duality-sweep", parents=[common], help="max of C~ + D~ per reflectivity")
    s.add_argument("--grid", default=None, help="lo:hi:step or comma list (default 0.05:1:0.05)")
    s.add_argument("--no-boundary", action="store_true", help="skip deterministic boundary configurations")
    s.set_defaults(func=cmd_duality_sweep)

    s = sub.add_parser("bounds", parents=[common], help="Monte Carlo check of multi-basis bounds (JSON)")
    s.add_argument("--family", required=True, help="triangle, square, cyclic:N or mutual:theta0[,phi0]")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("energy-cost", parents=[common], help="energy cost of a basis change on thermal states")
    s.add_argument("--temperatures", default="0.1:10:50", help="lo:hi:count or comma list")
    s.add_argument("--alphas", default=f"0.05:{math.pi / 2!r}:50", help="lo:hi:count or comma list")
    s.add_argument("--e1", default="1", help="comma list of excited-level energies")
    s.add_argument("--phi", type=float, default=0.0)
    s.add_argument("--units-e1", action="store_true", help="report delta in units of e1")
    s.set_defaults(func=cmd_energy_cost)

    s = sub.add_parser("channel-check", parents=[common], help="NOMIO/NIO verdicts for a Kraus channel file")
    s.add_argument("channel", nargs="?", default=None, help='JSON file {"kraus": [[[re, im] x 4], ...]}')
    s.add_argument("--basis", default=None, help="basis spec")
    s.add_argument("--demo", choices=("phase-flip",), default=None)
    s.set_defaults(func=cmd_channel_check)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        # includes UsageError and the package's ValueError subclasses
        print(f"noncoh {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

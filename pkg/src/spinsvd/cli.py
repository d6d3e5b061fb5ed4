"""Command-line surface: solve, corr, analyze, oracle4.

All numeric file outputs are deterministic: CSVs carry 17 significant
digits, manifests are JSON with sorted keys, heatmaps are binary PGM.
Exit codes: 0 success, 1 usage/input error, 2 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import corr as corr_mod
from . import exact, four_site, mps, svd_analysis
from .basis import enumerate_sector
from .errors import ConvergenceError, InvalidSizeError

STATE_FORMAT = "spinsvd-state-v1"
ED_CLI_CAP = 20


def _fmt(x):
    return f"{float(x):.17g}"


def write_matrix_csv(path, matrix):
    with open(path, "w") as fh:
        for row in matrix:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_matrix_csv(path):
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([float(v) for v in line.split(",")])
    m = np.array(rows)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix in {path} is not square: shape {m.shape}")
    return m


def write_pgm(path, matrix):
    """Binary P5 graymap of |S| scaled to its maximum."""
    mag = np.abs(matrix)
    peak = mag.max()
    img = np.zeros(mag.shape, dtype=np.uint8) if peak == 0 else np.round(
        255 * mag / peak
    ).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode())
        fh.write(img.tobytes())


def write_manifest(path, payload):
    payload = dict(payload)
    payload["timestamp"] = datetime.now(timezone.utc).isoformat()
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def save_state(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")


def load_state(path):
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("format") != STATE_FORMAT:
        raise ValueError(f"unrecognized state format in {path}")
    return payload


def _cmd_solve(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.n % 2 != 0 or args.n < 4:
        raise InvalidSizeError(f"--n must be even and >= 4, got {args.n}")

    if args.method == "ed":
        if args.n > ED_CLI_CAP:
            raise InvalidSizeError(f"ed supports n <= {ED_CLI_CAP}, got {args.n}")
        basis = enumerate_sector(args.n, 0)
        sol = exact.lanczos_ground_state(basis, args.j, seed=args.seed)
        state = {
            "format": STATE_FORMAT,
            "method": "ed",
            "n_sites": args.n,
            "j": args.j,
            "sz_total": 0,
            "energy": sol.energy,
            "residual_norm": sol.residual_norm,
            "amplitudes": sol.wf.amps.tolist(),
        }
        energy_val = sol.energy
        extra = {"residual_norm": sol.residual_norm}
    else:
        init = mps.random_init(args.n, args.chi, args.seed)
        opt, reports = mps.sweep_optimize(init, args.j, n_sweeps=args.sweeps)
        state = {
            "format": STATE_FORMAT,
            "method": "mps",
            "n_sites": args.n,
            "j": args.j,
            "chi": args.chi,
            "seed": args.seed,
            "sweep_count": args.sweeps,
            "energy": reports[-1].energy,
            "tensors": opt.tensors.reshape(args.n, 2, -1).tolist(),
        }
        energy_val = reports[-1].energy
        extra = {"final_energy_change": reports[-1].energy_change}

    state_path = out / "state.json"
    save_state(state_path, state)
    write_manifest(
        out / "manifest.json",
        {
            "command": "solve",
            "method": args.method,
            "n_sites": args.n,
            "j": args.j,
            "chi": args.chi if args.method == "mps" else None,
            "sweeps": args.sweeps if args.method == "mps" else None,
            "seed": args.seed,
            "energy": energy_val,
            "artifacts": [state_path.name],
            **extra,
        },
    )
    print(f"energy {_fmt(energy_val)} -> {state_path}")
    return 0


def _state_to_correlation(payload):
    if payload["method"] == "ed":
        basis = enumerate_sector(payload["n_sites"], payload["sz_total"])
        from .basis import Wavefunction

        wf = Wavefunction(basis, np.array(payload["amplitudes"]))
        return corr_mod.build_from_wavefunction(wf)
    n, chi = payload["n_sites"], payload["chi"]
    tensors = np.array(payload["tensors"]).reshape(n, 2, chi, chi)
    return corr_mod.build_from_mps(mps.MpsState(n, chi, tensors))


def _cmd_corr(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.beta is not None:
        if args.n is None:
            raise ValueError("thermal mode needs --n")
        spectrum = exact.full_spectrum(args.n, args.j)
        cm = corr_mod.build_thermal(spectrum, args.beta)
        meta = {"beta": args.beta, "n_sites": args.n, "method": "thermal"}
    else:
        if args.state is None:
            raise ValueError("need --state FILE or --beta with --n")
        payload = load_state(args.state)
        cm = _state_to_correlation(payload)
        meta = {
            "beta": None,
            "n_sites": payload["n_sites"],
            "method": payload["method"],
        }

    spec = svd_analysis.eigendecompose(cm)
    trace_check = {
        "sum_sqrt_lambda": float(np.sum(spec.values)),
        "n_over_4": cm.n_sites / 4,
    }
    matrix_path = out / "matrix.csv"
    pgm_path = out / "matrix.pgm"
    write_matrix_csv(matrix_path, cm.entries)
    write_pgm(pgm_path, cm.entries)
    write_manifest(
        out / "manifest.json",
        {
            "command": "corr",
            "j": args.j,
            "provenance": cm.provenance,
            "trace_check": trace_check,
            "artifacts": [matrix_path.name, pgm_path.name],
            **meta,
        },
    )
    print(f"correlation matrix ({cm.provenance}) -> {matrix_path}")
    return 0


def _cmd_analyze(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    matrix = read_matrix_csv(args.matrix)
    matrix = np.triu(matrix) + np.triu(matrix, 1).T  # exact symmetry for eigh
    spec = svd_analysis.eigendecompose(matrix)
    n_sites = spec.n
    artifacts = []

    spectrum_path = out / "spectrum.csv"
    with open(spectrum_path, "w") as fh:
        fh.write("n,sqrt_lambda,lambda\n")
        for k, v in enumerate(spec.values, start=1):
            fh.write(f"{k},{_fmt(v)},{_fmt(v * v)}\n")
    artifacts.append(spectrum_path.name)

    if args.components:
        for n in args.components:
            comp = svd_analysis.component(spec, n)
            path = out / f"component_{n}.csv"
            write_matrix_csv(path, comp.matrix)
            artifacts.append(path.name)

    if args.fit:
        fit = svd_analysis.fit_scaling(spec)
        fit_path = out / "fit.json"
        with open(fit_path, "w") as fh:
            json.dump(
                {
                    "power": fit.power,
                    "amplitude": fit.amplitude,
                    "r_squared": fit.r_squared,
                    "uses_exp_cutoff": fit.uses_exp_cutoff,
                    "fit_set": fit.fit_set,
                },
                fh,
                sort_keys=True,
                indent=2,
            )
            fh.write("\n")
        artifacts.append(fit_path.name)

    if args.domains:
        dom_path = out / "domains.csv"
        with open(dom_path, "w") as fh:
            fh.write("n,k,L,wall_count\n")
            for n in range(1, n_sites + 1):
                try:
                    d = svd_analysis.measure_domain_size(
                        spec.vectors[:, n - 1], n=n, threshold=args.domain_threshold
                    )
                except ValueError:
                    continue
                fh.write(f"{n},{_fmt(d.wavenumber)},{_fmt(d.domain_size)},{d.wall_count}\n")
        artifacts.append(dom_path.name)

    if args.haar:
        haar_path = out / "haar.csv"
        write_matrix_csv(haar_path, svd_analysis.haar_transform(matrix))
        artifacts.append(haar_path.name)

    write_manifest(
        out / "manifest.json",
        {
            "command": "analyze",
            "n_sites": n_sites,
            "matrix": str(args.matrix),
            "trace_check": {
                "sum_sqrt_lambda": float(np.sum(spec.values)),
                "n_over_4": n_sites / 4,
            },
            "artifacts": artifacts,
        },
    )
    print(f"spectrum -> {spectrum_path}")
    return 0


def _cmd_oracle4(args):
    text = json.dumps(four_site.as_json_dict(), sort_keys=True, indent=2)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        path = Path(args.out) / "oracle4.json"
        path.write_text(text + "\n")
        print(f"reference values -> {path}")
    else:
        print(text)
    return 0


def _parse_components(text):
    return [int(tok) for tok in text.split(",") if tok.strip()]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinsvd",
        description="Heisenberg-ring ground/thermal states and correlation-matrix SVD analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="compute a ground state (ED or MPS)")
    p_solve.add_argument("--method", choices=["ed", "mps"], required=True)
    p_solve.add_argument("--n", type=int, required=True, help="even chain length >= 4")
    p_solve.add_argument("--chi", type=int, default=10)
    p_solve.add_argument("--sweeps", type=int, default=40)
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--j", type=float, default=1.0)
    p_solve.add_argument("--out", required=True)
    p_solve.set_defaults(func=_cmd_solve)

    p_corr = sub.add_parser("corr", help="build the correlation matrix")
    p_corr.add_argument("--state", help="checkpoint from solve")
    p_corr.add_argument("--beta", type=float, help="thermal mode (needs --n)")
    p_corr.add_argument("--n", type=int, help="chain length for thermal mode")
    p_corr.add_argument("--j", type=float, default=1.0)
    p_corr.add_argument("--out", required=True)
    p_corr.set_defaults(func=_cmd_corr)

    p_an = sub.add_parser("analyze", help="SVD spectrum, components, fits, domains")
    p_an.add_argument("--matrix", required=True, help="square symmetric CSV")
    p_an.add_argument("--components", type=_parse_components, default=None)
    p_an.add_argument("--fit", action="store_true")
    p_an.add_argument("--domains", action="store_true")
    p_an.add_argument("--haar", action="store_true")
    p_an.add_argument("--domain-threshold", type=float, default=0.1)
    p_an.add_argument("--out", required=True)
    p_an.set_defaults(func=_cmd_analyze)

    p_o4 = sub.add_parser("oracle4", help="dump 4-site reference values as JSON")
    p_o4.add_argument("--out", default=None)
    p_o4.set_defaults(func=_cmd_oracle4)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidSizeError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``gdm <command> ...``.

Commands: field, carriers, mux, demux, roundtrip, ser-analytic, ser-mc.
Output files go to ``--out`` or, failing that, ``$GDM_OUTPUT_DIR``; with
neither, results are printed to stdout.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import random
import sys
from pathlib import Path

from .carriers import CarrierSet, carrier, correlation_matrix
from .errors import GDMError
from .finite_field import (
    FieldParams,
    GaloisField,
    format_element,
    format_poly,
    format_vector,
    parse_vector,
)
from .modem import ChannelModel, normalize_kind, ser_curve, snr_grid
from .mux import (
    CompressedSpectrum,
    GdmConfig,
    compactness_factor,
    compress,
    decompress,
    demultiplex,
    multiplex,
)
from .simulation import LinkConfig, monte_carlo_ser

OUTPUT_ENV = "GDM_OUTPUT_DIR"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def parse_poly(text: str, p: int) -> tuple[int, ...]:
    """Polynomial from ``10011``, ``0x13`` or ``1,0,0,1,1`` (all high-degree first)."""
    s = text.strip().lower()
    if s.startswith("0x"):
        if p != 2:
            raise UsageError("hex polynomials are only meaningful for p=2")
        return tuple(int(b) for b in reversed(bin(int(s, 16))[2:]))
    if "," in s:
        digits = [int(x) for x in s.split(",")]
    elif s.isdigit():
        digits = [int(ch) for ch in s]
    else:
        raise UsageError(f"cannot parse polynomial {text!r}")
    if any(not 0 <= d < p for d in digits):
        raise UsageError(f"polynomial {text!r} has coefficients outside GF({p})")
    while len(digits) > 1 and digits[0] == 0:
        digits.pop(0)
    return tuple(reversed(digits))


def field_params(args) -> FieldParams:
    if args.poly is None:
        return FieldParams.default(args.p, args.m if args.m is not None else 4)
    poly = parse_poly(args.poly, args.p)
    m = len(poly) - 1
    if args.m is not None and args.m != m:
        raise UsageError(f"--m {args.m} disagrees with the degree {m} of --poly")
    return FieldParams(args.p, m, poly)


def gdm_config(args) -> GdmConfig:
    params = field_params(args)
    n = args.n if args.n is not None else params.p**params.m - 1
    return GdmConfig(params, n, primitive=not args.allow_non_primitive)


def parse_frame(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError as exc:
        raise UsageError(f"frame must be comma-separated integers: {exc}") from None


def write_csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def output_dir(args) -> Path | None:
    out = getattr(args, "out", None) or os.environ.get(OUTPUT_ENV)
    return Path(out) if out else None


def emit(text: str, args, filename: str) -> None:
    out = output_dir(args)
    if out is None:
        sys.stdout.write(text)
        return
    path = out / filename
    try:
        out.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from None
    print(path)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_field(args) -> int:
    field = GaloisField(field_params(args), primitive=not args.allow_non_primitive)
    rows = []
    for r in field.table:
        e = r["element"]
        rows.append([
            "" if r["i"] is None else r["i"],
            format_element(e),
            "(" + ",".join(str(c) for c in r["vector"]) + ")",
            "" if r["order"] is None else r["order"],
            format_poly(r["minimal_poly"]),
        ])
    header = ["i", "power", "coeff_vector", "order", "minimal_poly"]
    emit(write_csv(rows, header), args, f"field_{field.p}_{field.m}.csv")
    return 0


def cmd_carriers(args) -> int:
    cfg = gdm_config(args)
    cs = CarrierSet(cfg.plan)
    lines = [f"# carriers N={cfg.n} alpha={cfg.plan.alpha}\n"]
    lines.append(write_csv(([format_element(x) for x in carrier(cs, i)] for i in range(cs.n)), None))
    lines.append("# correlation\n")
    lines.append(write_csv(([format_element(x) for x in row] for row in correlation_matrix(cs)), None))
    emit("".join(lines), args, f"carriers_N{cfg.n}.csv")
    return 0


def cmd_mux(args) -> int:
    cfg = gdm_config(args)
    V = multiplex(cfg, parse_frame(args.frame))
    out = compress(V, cfg.structure).leader_values if args.compress else V
    print(format_vector(out))
    return 0


def cmd_demux(args) -> int:
    cfg = gdm_config(args)
    values = parse_vector(args.spectrum, cfg.field)
    if args.compress:
        values = decompress(CompressedSpectrum(cfg.structure, values))
    print(",".join(str(d) for d in demultiplex(cfg, values)))
    return 0


def cmd_roundtrip(args) -> int:
    cfg = gdm_config(args)
    if args.frame is not None:
        frame = parse_frame(args.frame)
    else:
        rng = random.Random(args.seed)
        frame = [rng.randrange(cfg.params.p) for _ in range(cfg.n)]
    V = multiplex(cfg, frame)
    comp = compress(V, cfg.structure)
    leaders = list(comp.leader_values)
    if args.corrupt_leader:
        # first leader sits in a size-1 coset, i.e. must lie in GF(p); alpha does not
        leaders[0] = cfg.field.alpha
        comp = CompressedSpectrum(cfg.structure, leaders)
    print("frame:     " + ",".join(str(x) for x in frame))
    print("V:         " + format_vector(V))
    print("V_comp:    " + format_vector(comp.leader_values))
    restored = decompress(comp)
    print("V':        " + format_vector(restored))
    recovered = demultiplex(cfg, restored)
    print("recovered: " + ",".join(str(x) for x in recovered))
    print(f"gamma_cc:  {compactness_factor(cfg.structure)}")
    if restored != V or recovered != frame:
        print("status:    MISMATCH")
        return 1
    print("status:    ok")
    return 0


def _ser_name(prefix: str, kind: str, cfg: GdmConfig, compressed: bool) -> str:
    return f"{prefix}_{kind}_N{cfg.n}{'_compressed' if compressed else ''}"


def _plot(curves, path: Path, title: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "gdm"
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for label, snr, pe in curves:
        ax.semilogy(snr, pe, marker="o", markersize=3, label=label)
    ax.set_xlabel("Es/N0 (dB)")
    ax.set_ylabel("P_E (frame error)")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def cmd_ser_analytic(args) -> int:
    cfg = gdm_config(args)
    grid = snr_grid(args.snr)
    exponent = cfg.structure.v if args.compressed else cfg.n
    curves = []
    for kind in args.mod:
        curve = ser_curve(kind, exponent, grid)
        rows = [[repr(s), repr(pm), repr(pe)] for s, pm, pe in curve.points]
        text = write_csv(rows, ["snr_db", "p_m", "p_e"])
        if output_dir(args) is None and len(args.mod) > 1:
            text = f"# {kind} exponent={exponent}\n" + text
        emit(text, args, _ser_name("ser-analytic", kind, cfg, args.compressed) + ".csv")
        curves.append((f"{kind} ({exponent})", curve.snr_db, curve.p_e))
    if args.plot:
        path = (output_dir(args) or Path(".")) / (
            "_".join(["ser-analytic"] + args.mod) + f"_N{cfg.n}{'_compressed' if args.compressed else ''}.svg")
        path.parent.mkdir(parents=True, exist_ok=True)
        _plot(curves, path, f"Analytical SER, {cfg.n}-user GDM over GF({cfg.field.q})")
        print(path, file=sys.stderr)
    return 0


def cmd_ser_mc(args) -> int:
    cfg = gdm_config(args)
    grid = snr_grid(args.snr)
    if args.frames < 1:
        raise UsageError("--frames must be >= 1")
    curves = []
    for kind in args.mod:
        link = LinkConfig(cfg, kind, args.compressed)
        rows, pes = [], []
        for s in grid:
            r = monte_carlo_ser(link, args.frames, ChannelModel(s, args.seed), workers=args.workers)
            rows.append([repr(s), repr(r.p_m), repr(r.p_e), repr(r.ci_radius)])
            pes.append(r.p_e)
        text = write_csv(rows, ["snr_db", "p_m", "p_e", "ci_radius"])
        if output_dir(args) is None and len(args.mod) > 1:
            text = f"# {kind} frames={args.frames} seed={args.seed}\n" + text
        emit(text, args, _ser_name("ser-mc", kind, cfg, args.compressed) + ".csv")
        curves.append((f"{kind} MC", grid, pes))
    if args.plot:
        path = (output_dir(args) or Path(".")) / (
            "_".join(["ser-mc"] + args.mod) + f"_N{cfg.n}{'_compressed' if args.compressed else ''}.svg")
        path.parent.mkdir(parents=True, exist_ok=True)
        _plot(curves, path, f"Monte Carlo SER, {cfg.n}-user GDM over GF({cfg.field.q})")
        print(path, file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _mod_list(text: str) -> list[str]:
    try:
        return [normalize_kind(k) for k in text.split(",") if k.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gdm", description="Galois-field division multiplex toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def field_opts(sp, with_n=True):
        sp.add_argument("--p", type=int, default=2, help="field characteristic (default 2)")
        sp.add_argument("--m", type=int, default=None, help="extension degree (default 4)")
        sp.add_argument("--poly", default=None,
                        help="reduction polynomial, high degree first: 10011, 0x13 or 1,0,0,1,1")
        sp.add_argument("--allow-non-primitive", action="store_true",
                        help="accept an irreducible, non-primitive polynomial")
        if with_n:
            sp.add_argument("--n", type=int, default=None, help="number of users N (default p^m - 1)")

    sp = sub.add_parser("field", help="dump the field table as CSV")
    field_opts(sp, with_n=False)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_field)

    sp = sub.add_parser("carriers", help="carrier and correlation matrices")
    field_opts(sp)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_carriers)

    sp = sub.add_parser("mux", help="spread a frame of user symbols")
    field_opts(sp)
    sp.add_argument("--frame", required=True, help="comma-separated GF(p) digits")
    sp.add_argument("--compress", action="store_true", help="print coset-leader values only")
    sp.set_defaults(func=cmd_mux)

    sp = sub.add_parser("demux", help="despread a spectrum back to user symbols")
    field_opts(sp)
    sp.add_argument("--spectrum", required=True, help="comma-separated power notation, e.g. 1,0,a^10")
    sp.add_argument("--compress", action="store_true", help="input holds coset-leader values")
    sp.set_defaults(func=cmd_demux)

    sp = sub.add_parser("roundtrip", help="mux, compress, decompress, demux and check identity")
    field_opts(sp)
    sp.add_argument("--frame", default=None)
    sp.add_argument("--seed", type=int, default=0, help="seed for a random frame")
    sp.add_argument("--corrupt-leader", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_roundtrip)

    for name, func in (("ser-analytic", cmd_ser_analytic), ("ser-mc", cmd_ser_mc)):
        sp = sub.add_parser(name, help=f"{name.split('-')[1]} SER curves as CSV")
        field_opts(sp)
        sp.add_argument("--mod", type=_mod_list, default=["bpsk"],
                        help="comma list of bpsk,qpsk,8psk,16qam")
        sp.add_argument("--compressed", action="store_true")
        sp.add_argument("--snr", default="0:20:1", help="start:stop:step dB or comma list")
        sp.add_argument("--out", default=None, help=f"output directory (default ${OUTPUT_ENV})")
        sp.add_argument("--plot", action="store_true", help="also write an SVG chart")
        if name == "ser-mc":
            sp.add_argument("--frames", type=int, default=10000)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--workers", type=int, default=1)
        sp.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gdm {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except GDMError as exc:
        print(f"gdm {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"gdm {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"gdm {args.command}: I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

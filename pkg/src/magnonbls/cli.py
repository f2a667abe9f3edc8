"""Command-line entry point.

    magnonbls [--config PATH] [--out DIR] [--svg] [--threads N] [--validate] COMMAND ...

Exit codes: 0 success, 2 configuration or input error, 3 numerical failure.
Failures print a single ``magnonbls-error`` line on stderr made of
``key=value`` fields.
"""
import argparse
import json
import math
import sys

from . import config as cfgmod
from .brillouin import Process, allowed_m_tm, delta_L, output_component
from .errors import ConfigError, MagnonBLSError, NumericalError
from .export import svg_plot, to_csv, to_json, write_outputs
from .spectra import ScatteringScenario, figure4_suite, run_scenario
from .walker import extract_winding, oam_volume_integral
from .wgm import (Component, Orbit, Polarization, WgmIndex, angular_momenta,
                  resonance_size_parameter)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3


def _common(parser):
    parser.add_argument("--config", metavar="PATH", help="JSON configuration (defaults if omitted)")
    parser.add_argument("--out", metavar="DIR", default=".", help="output directory")
    parser.add_argument("--svg", action="store_true", help="also write SVG plots")
    parser.add_argument("--threads", metavar="N", type=int, default=1,
                        help="cap on worker threads")
    parser.add_argument("--validate", action="store_true",
                        help="validate the configuration and stop")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="magnonbls",
        description="Brillouin light scattering by magnons in a ferromagnetic sphere.")
    common = argparse.ArgumentParser(add_help=False)
    _common(common)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("modes", parents=[common], help="Walker or WGM mode tables")
    p.add_argument("which", choices=["walker", "wgm"])

    sub.add_parser("oam", parents=[common], help="angular-momentum bookkeeping")

    p = sub.add_parser("selection", parents=[common], help="selection rule for one process")
    p.add_argument("--orbit", required=True, choices=[o.value for o in Orbit])
    p.add_argument("--process", required=True, choices=[pr.value for pr in Process])
    p.add_argument("--m-te", dest="m_te", type=int, required=True)
    p.add_argument("--m-mag", dest="m_mag", type=int, required=True)

    for name, text in (("channels", "scattering channels for one magnon"),
                       ("spectrum", "CW/CCW spectra for one magnon")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--oam", type=int, default=0,
                       help="magnon OAM; the first catalog mode with this OAM is used")

    sub.add_parser("figure4", parents=[common], help="nonreciprocity table for OAM 0, 1, 2")
    sub.add_parser("validate", parents=[common], help="validate the configuration")
    p = sub.choices["validate"]
    p.add_argument("--schema", action="store_true", help="print the JSON Schema")
    return parser


# --- commands -----------------------------------------------------------------
# Each returns {filename: text}; nothing touches the disk until all succeed.

def cmd_modes(cfg, which, threads=1):
    if which == "walker":
        rows = []
        for mode in cfgmod.walker_catalog(cfg):
            idx = mode.index
            rows.append({"n": idx.n, "m_mag": idx.m_mag, "r": idx.r, "L_z": mode.L_z,
                         "omega_m_hz": mode.omega_m / (2 * math.pi),
                         "envelope_id": mode.envelope_id})
        cols = ["n", "m_mag", "r", "L_z", "omega_m_hz", "envelope_id"]
        return {"walker_modes.csv": to_csv(rows, cols)}

    geo = cfgmod.geometry(cfg)
    m0, q, span = cfg["wgm"]["m_TE"], cfg["wgm"]["q"], cfg["wgm"]["table_span"]
    ms = range(max(2, m0 - span), m0 + span + 1)
    x = {}
    for pol, extra in ((Polarization.TE, 1), (Polarization.TM, 0)):
        for m in range(ms.start, ms.stop + extra):
            x[pol, m] = resonance_size_parameter(geo, pol, m, q, cfgmod.scan_window(cfg, m))
    rows, summary = [], []
    for m in ms:
        fsr_m = geo.omega(x[Polarization.TE, m + 1]) - geo.omega(x[Polarization.TE, m])
        gb = (geo.omega(x[Polarization.TM, m]) - geo.omega(x[Polarization.TE, m])) % fsr_m
        summary.append({"m": m, "fsr_hz": fsr_m / (2 * math.pi), "gb_over_fsr": gb / fsr_m})
        for pol in Polarization:
            rows.append({"polarization": pol.value, "m": m, "q": q, "size_parameter": x[pol, m],
                         "frequency_hz": geo.omega(x[pol, m]) / (2 * math.pi),
                         "gb_over_fsr": gb / fsr_m})
    cols = ["polarization", "m", "q", "size_parameter", "frequency_hz", "gb_over_fsr"]
    return {"wgm_modes.csv": to_csv(rows, cols),
            "wgm_summary.json": to_json({"q": q, "radius_m": geo.radius,
                                         "refractive_index": geo.refractive_index,
                                         "rows": summary})}


def cmd_oam(cfg):
    walker_rows = []
    for mode in cfgmod.walker_catalog(cfg):
        walker_rows.append({"mode": mode.index.label(), "m_mag": mode.index.m_mag,
                            "L_z": mode.L_z,
                            "winding": extract_winding(mode, 0.5, 0.0),
                            "volume_integral": round(oam_volume_integral(mode), 9)})
    m = cfg["wgm"]["m_TE"]
    wgm_rows = []
    for orbit in Orbit:
        for pol, comp in ((Polarization.TE, Component.NONE), (Polarization.TM, Component.INNER),
                          (Polarization.TM, Component.OUTER)):
            t = angular_momenta(orbit, pol, comp, m)
            wgm_rows.append({"orbit": orbit.value, "polarization": pol.value,
                             "component": comp.value, "m": m, "oam": t.L, "spin": t.S,
                             "total_j": t.J})
    return {
        "walker_oam.csv": to_csv(walker_rows, ["mode", "m_mag", "L_z", "winding",
                                               "volume_integral"]),
        "wgm_oam.csv": to_csv(wgm_rows, ["orbit", "polarization", "component", "m", "oam",
                                         "spin", "total_j"]),
    }


def cmd_selection(cfg, orbit, process, m_te, m_mag):
    orbit, process = Orbit(orbit), Process(process)
    m_tm = allowed_m_tm(orbit, process, m_te, m_mag)
    comp = output_component(orbit, process)
    rule = _rule_text(orbit, process)
    payload = {"orbit": orbit.value, "process": process.value, "m_TE": m_te, "m_mag": m_mag,
               "m_TM": m_tm, "component": comp.value, "rule": rule,
               "delta_L": delta_L(orbit, process, m_te, m_tm, m_mag)}
    return {"selection.json": to_json(payload)}, f"{rule} -> m_TM = {m_tm} ({comp.value})"


def _rule_text(orbit, process):
    sign = allowed_m_tm(orbit, process, 10, 1) - 10
    return f"{orbit.value} {process.value}: m_TM = m_TE {'+' if sign > 0 else '-'} m_mag"


def _pick_magnon(cfg, oam):
    for mode in cfgmod.walker_catalog(cfg):
        if mode.L_z == oam:
            return mode
    raise ConfigError(f"walker_catalog has no mode with OAM {oam}", field="walker_catalog")


def _scenario(cfg, magnon):
    s = cfg["spectra"]
    return ScatteringScenario(
        cfgmod.geometry(cfg), cfgmod.material(cfg),
        WgmIndex(Orbit.CCW, Polarization.TE, cfg["wgm"]["m_TE"], cfg["wgm"]["q"]), magnon,
        cfgmod.hz_to_rad(s["optical_linewidth_hz"]), cfgmod.hz_to_rad(s["magnon_linewidth_hz"]),
        magnon.omega_m if s["tuning"] == "Catalog" else None, cfgmod.thresholds(cfg),
        s["coupling"], tuple(s["quadrature"]))


_CHANNEL_COLS = ["orbit", "process", "m_TE", "m_TM", "component", "m_mag", "delta_L",
                 "omega_out", "detuning", "abs_amplitude"]


def cmd_channels(cfg, oam, threads=1):
    res = run_scenario(_scenario(cfg, _pick_magnon(cfg, oam)), cfg["spectra"]["grid_points"],
                       threads)
    rows = []
    for orbit in Orbit:
        for ch, inten in zip(res.channels[orbit], res.intensities[orbit]):
            row = ch.as_row()
            row["intensity"] = inten
            rows.append(row)
    return {"channels.csv": to_csv(rows, _CHANNEL_COLS + ["intensity"]),
            "channels.json": to_json({"oam": oam, "channels": rows})}


def _spectrum_files(res, stem, title, svg):
    sp = res.spectrum
    rows = [{"delta_omega_over_fsr": x, "I_cw": a, "I_ccw": b}
            for x, a, b in zip(sp.delta_over_fsr, sp.intensity_cw, sp.intensity_ccw)]
    files = {f"{stem}.csv": to_csv(rows, ["delta_omega_over_fsr", "I_cw", "I_ccw"])}
    if svg:
        files[f"{stem}.svg"] = svg_plot(sp.delta_over_fsr, {"CW": sp.intensity_cw,
                                                            "CCW": sp.intensity_ccw},
                                        title, "(omega2 - omega1) / FSR", "intensity")
    return files


def cmd_spectrum(cfg, oam, svg=False, threads=1):
    res = run_scenario(_scenario(cfg, _pick_magnon(cfg, oam)), cfg["spectra"]["grid_points"],
                       threads)
    files = _spectrum_files(res, "spectrum", f"magnon OAM {oam}: {res.verdict.value}", svg)
    summary = res.summary()
    summary["oam"] = oam
    files["summary.json"] = to_json(summary)
    return files


def cmd_figure4(cfg, svg=False, threads=1):
    s = cfg["spectra"]
    magnons = {k: _pick_magnon(cfg, k) for k in (0, 1, 2)}
    rows = figure4_suite(
        cfgmod.geometry(cfg), cfgmod.material(cfg), cfg["wgm"]["m_TE"],
        cfgmod.hz_to_rad(s["optical_linewidth_hz"]), cfgmod.hz_to_rad(s["magnon_linewidth_hz"]),
        q=cfg["wgm"]["q"], coupling=s["coupling"], thresholds=cfgmod.thresholds(cfg),
        magnons=magnons, threads=threads, grid_points=s["grid_points"], tuning=s["tuning"],
        quadrature=s["quadrature"])
    table = [r.as_row() for r in rows]
    files = {"figure4.csv": to_csv(table, ["oam", "magnon", "I_cw", "I_ccw", "ratio", "verdict"]),
             "figure4.json": to_json({"rows": table,
                                      "summaries": [r.result.summary() for r in rows]})}
    for r in rows:
        files.update(_spectrum_files(r.result, f"spectrum_oam{r.oam}",
                                     f"magnon OAM {r.oam}: {r.verdict.value}", svg))
    return files


# --- driver -------------------------------------------------------------------

def _diagnostic(kind, code, exc):
    fields = [f"kind={kind}", f"exit={code}", f"type={type(exc).__name__}"]
    if getattr(exc, "field", None) is not None:
        fields.append(f"field={exc.field or '<root>'}")
    if getattr(exc, "line", None) is not None:
        fields.append(f"line={exc.line}")
    fields.append(f"message={json.dumps(str(exc))}")
    return "magnonbls-error " + " ".join(fields)


def run(args):
    """Execute parsed arguments; returns (files, message)."""
    if args.threads < 1:
        raise ConfigError("--threads must be >= 1", field="--threads")
    cfg = cfgmod.load(args.config)
    if args.command == "validate" and getattr(args, "schema", False):
        return {}, json.dumps(cfgmod.SCHEMA, sort_keys=True, indent=2)
    if args.validate or args.command == "validate":
        return {}, "config ok"
    threads = args.threads
    if args.command == "modes":
        return cmd_modes(cfg, args.which, threads), None
    if args.command == "oam":
        return cmd_oam(cfg), None
    if args.command == "selection":
        return cmd_selection(cfg, args.orbit, args.process, args.m_te, args.m_mag)
    if args.command == "channels":
        return cmd_channels(cfg, args.oam, threads), None
    if args.command == "spectrum":
        return cmd_spectrum(cfg, args.oam, args.svg, threads), None
    if args.command == "figure4":
        files = cmd_figure4(cfg, args.svg, threads)
        rows = json.loads(files["figure4.json"])["rows"]
        return files, "\n".join(f"OAM {r['oam']} {r['magnon']}: ratio={r['ratio']!r} "
                                f"{r['verdict']}" for r in rows)
    raise ConfigError(f"unknown command {args.command!r}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        files, message = run(args)
        if files:
            for path in write_outputs(args.out, files):
                print(f"wrote {path}")
        if message:
            print(message)
    except NumericalError as exc:
        print(_diagnostic("numerical", EXIT_NUMERICAL, exc), file=sys.stderr)
        return EXIT_NUMERICAL
    except (MagnonBLSError, ValueError) as exc:
        kind = "config" if isinstance(exc, ConfigError) else "input"
        print(_diagnostic(kind, EXIT_CONFIG, exc), file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

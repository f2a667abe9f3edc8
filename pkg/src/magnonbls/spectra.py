"""Scenario runner: CW/CCW Brillouin spectra and nonreciprocity verdicts.

A TE mode at index m_TE is pumped in either orbit.  The TM comb sits
``GB`` above the TE comb (modulo one FSR) and the magnon frequency is, by
default, tuned to FSR - GB.  Each allowed channel is weighted by a unit-peak
Lorentzian density of states of its TM mode; spectral lines are drawn at
omega_out with the magnon linewidth.

Two coupling models are available.  "uniform" gives every allowed channel
the same strength, so CW/CCW asymmetry comes only from the selection rules
and the TM density of states.  "overlap" uses the full spatial coupling,
which also distinguishes the inner and outer TM components.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
import enum
import math

import numpy as np

from .brillouin import enumerate_channels, require_allowed
from .walker import WalkerIndex, WalkerMode
from .wgm import Orbit, Polarization, WgmIndex, solve_comb, solve_mode

DEFAULT_OPTICAL_LINEWIDTH_FSR = 0.005
DEFAULT_MAGNON_LINEWIDTH_FSR = 0.004


class Verdict(str, enum.Enum):
    CW_DOMINANT = "CwDominant"
    RECIPROCAL = "Reciprocal"
    CCW_DOMINANT = "CcwDominant"


def lorentzian_dos(detuning, linewidth):
    """Unit-peak Lorentzian (k/2)^2 / (d^2 + (k/2)^2) with FWHM ``linewidth``."""
    if not linewidth > 0:
        raise ValueError("linewidth must be positive")
    hw2 = (0.5 * linewidth) ** 2
    return hw2 / (np.asarray(detuning, float) ** 2 + hw2)


@dataclass(frozen=True)
class ScatteringScenario:
    """Everything needed to predict one CW/CCW pair of spectra.

    ``omega_m=None`` tunes the magnon to FSR - GB; a number sets it
    explicitly.  Linewidths left as None default to fixed fractions of the
    FSR.  ``thresholds`` are (cw_dominant_above, ccw_dominant_below) on
    I_cw / I_ccw.
    """

    geometry: object
    material: object
    input: WgmIndex
    magnon: WalkerMode
    optical_linewidth: float = None
    magnon_linewidth: float = None
    omega_m: float = None
    thresholds: tuple = (2.0, 0.5)
    coupling: str = "uniform"
    quadrature: tuple = (64, 32)

    def __post_init__(self):
        if self.input.polarization is not Polarization.TE:
            raise ValueError("scenario input must be a TE mode")
        for name in ("optical_linewidth", "magnon_linewidth"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError(f"{name} must be positive")
        hi, lo = self.thresholds
        if not hi > lo > 0:
            raise ValueError("verdict thresholds need cw_above > ccw_below > 0")


@dataclass(frozen=True)
class Spectrum:
    """Intensity against omega_2 - omega_1; ``frequency_grid`` in rad/s."""

    frequency_grid: np.ndarray
    intensity_cw: np.ndarray
    intensity_ccw: np.ndarray
    fsr: float

    @property
    def delta_over_fsr(self):
        return self.frequency_grid / self.fsr


@dataclass(frozen=True)
class ScenarioResult:
    spectrum: Spectrum
    channels: dict
    I_cw: float
    I_ccw: float
    ratio: float
    verdict: Verdict
    fsr: float
    gb: float
    omega_m: float
    omega_in: float
    optical_linewidth: float
    magnon_linewidth: float
    intensities: dict = field(default_factory=dict)

    def summary(self):
        return {
            "I_cw": self.I_cw,
            "I_ccw": self.I_ccw,
            "ratio": self.ratio,
            "verdict": self.verdict.value,
            "fsr_hz": self.fsr / (2 * math.pi),
            "gb_hz": self.gb / (2 * math.pi),
            "gb_over_fsr": self.gb / self.fsr,
            "omega_m_hz": self.omega_m / (2 * math.pi),
            "optical_linewidth_hz": self.optical_linewidth / (2 * math.pi),
        }


def channel_intensity(channel, optical_linewidth):
    """|amplitude|^2 weighted by the TM density of states at the scattered frequency."""
    require_allowed(channel)
    return float(abs(channel.amplitude) ** 2
                 * lorentzian_dos(channel.detuning, optical_linewidth))


def classify(ratio, thresholds=(2.0, 0.5)):
    hi, lo = thresholds
    if ratio > hi:
        return Verdict.CW_DOMINANT
    if ratio < lo:
        return Verdict.CCW_DOMINANT
    return Verdict.RECIPROCAL


def comb_span(m_mag):
    return max(1, abs(int(m_mag)))


def _solve_modes(scenario, threads):
    geo, m, q = scenario.geometry, scenario.input.m, scenario.input.q
    span = comb_span(scenario.magnon.index.m_mag)
    tm_ms = range(max(1, m - span), m + span + 1)
    te = {o: solve_mode(geo, WgmIndex(o, Polarization.TE, m, q)) for o in Orbit}
    te_prev = solve_mode(geo, WgmIndex(Orbit.CCW, Polarization.TE, m - 1, q))
    tm = solve_comb(geo, Orbit.CCW, Polarization.TM, tm_ms, q, threads)
    return te, te_prev, tm


def run_scenario(scenario, grid_points=2001, threads=1):
    """Both orbits through channel enumeration and density-of-states weighting."""
    te, te_prev, tm_catalog = _solve_modes(scenario, threads)
    omega1 = te[Orbit.CCW].frequency
    fsr = omega1 - te_prev.frequency
    tm_prev = next(t for t in tm_catalog if t.index.m == scenario.input.m - 1)
    gb = (tm_prev.frequency - te_prev.frequency) % fsr
    omega_m = fsr - gb if scenario.omega_m is None else scenario.omega_m
    kappa = scenario.optical_linewidth or DEFAULT_OPTICAL_LINEWIDTH_FSR * fsr
    gamma = scenario.magnon_linewidth or DEFAULT_MAGNON_LINEWIDTH_FSR * fsr
    n_r, n_theta = scenario.quadrature

    def run(orbit):
        return enumerate_channels(te[orbit], scenario.magnon, tm_catalog, scenario.material,
                                  scenario.coupling, omega_m, n_r, n_theta)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=min(2, threads)) as pool:
            channels = dict(zip(Orbit, pool.map(run, list(Orbit))))
    else:
        channels = {o: run(o) for o in Orbit}

    per_channel = {o: [channel_intensity(c, kappa) for c in channels[o]] for o in Orbit}
    I_cw = float(sum(per_channel[Orbit.CW]))
    I_ccw = float(sum(per_channel[Orbit.CCW]))
    ratio = I_cw / I_ccw if I_ccw > 0 else math.inf

    grid = _spectrum_grid(omega_m, grid_points)
    traces = {}
    for o in Orbit:
        trace = np.zeros_like(grid)
        for c, weight in zip(channels[o], per_channel[o]):
            trace += weight * lorentzian_dos(grid + c.process.sign * omega_m, gamma)
        traces[o] = trace
    spectrum = Spectrum(grid, traces[Orbit.CW], traces[Orbit.CCW], fsr)
    return ScenarioResult(
        spectrum=spectrum, channels=channels, I_cw=I_cw, I_ccw=I_ccw, ratio=ratio,
        verdict=classify(ratio, scenario.thresholds), fsr=fsr, gb=gb, omega_m=omega_m,
        omega_in=omega1, optical_linewidth=kappa, magnon_linewidth=gamma,
        intensities=per_channel)


def _spectrum_grid(omega_m, points):
    """Uniform grid over [-2 omega_m, 2 omega_m] containing +-omega_m exactly."""
    points = 4 * ((max(points, 9) - 1) // 4) + 1
    grid = np.linspace(-2.0 * omega_m, 2.0 * omega_m, points)
    quarter = (points - 1) // 4
    grid[quarter] = -omega_m
    grid[3 * quarter] = omega_m
    grid[2 * quarter] = 0.0
    return grid


# Walker modes used for the three OAM cases of the nonreciprocity figure.
FIG4_MAGNONS = {
    0: (WalkerIndex(1, 1, 0), "uniform"),
    1: (WalkerIndex(4, 0, 1), "vortex_dome"),
    2: (WalkerIndex(3, -1, 1), "vortex_dome"),
}


@dataclass(frozen=True)
class Figure4Row:
    oam: int
    magnon: WalkerIndex
    I_cw: float
    I_ccw: float
    ratio: float
    verdict: Verdict
    result: ScenarioResult

    def as_row(self):
        return {"oam": self.oam, "magnon": self.magnon.label(), "I_cw": self.I_cw,
                "I_ccw": self.I_ccw, "ratio": self.ratio, "verdict": self.verdict.value}


def figure4_suite(geometry, material, m_TE, optical_linewidth=None, magnon_linewidth=None,
                  q=1, coupling="uniform", thresholds=(2.0, 0.5), mirror=False,
                  magnons=None, threads=1, grid_points=2001, tuning="ExactFsrMinusGb",
                  quadrature=(64, 32)):
    """One scenario per magnon OAM in (0, 1, 2).

    ``magnons`` maps OAM to :class:`WalkerMode`; it defaults to the modes in
    :data:`FIG4_MAGNONS`.  ``tuning="Catalog"`` uses each magnon's own
    frequency instead of FSR - GB.  ``mirror=True`` swaps the CW/CCW labels throughout, i.e. reverses the
    orbit sign convention.
    """
    magnons = magnons or {k: WalkerMode(idx, 0.0, env) for k, (idx, env) in FIG4_MAGNONS.items()}
    rows = []
    if tuning not in ("ExactFsrMinusGb", "Catalog"):
        raise ValueError(f"unknown tuning {tuning!r}")
    for oam in (0, 1, 2):
        omega_m = magnons[oam].omega_m if tuning == "Catalog" else None
        sc = ScatteringScenario(geometry, material, WgmIndex(Orbit.CCW, Polarization.TE, m_TE, q),
                                magnons[oam], optical_linewidth, magnon_linewidth, omega_m,
                                tuple(thresholds), coupling, tuple(quadrature))
        res = run_scenario(sc, grid_points=grid_points, threads=threads)
        if mirror:
            res = _mirrored(res, thresholds)
        rows.append(Figure4Row(oam, magnons[oam].index, res.I_cw, res.I_ccw, res.ratio,
                               res.verdict, res))
    return rows


def _mirrored(res, thresholds):
    spec = Spectrum(res.spectrum.frequency_grid, res.spectrum.intensity_ccw,
                    res.spectrum.intensity_cw, res.spectrum.fsr)
    ratio = res.I_ccw / res.I_cw if res.I_cw > 0 else math.inf
    return replace(res, spectrum=spec, I_cw=res.I_ccw, I_ccw=res.I_cw, ratio=ratio,
                   verdict=classify(ratio, thresholds),
                   channels={Orbit.CW: res.channels[Orbit.CCW], Orbit.CCW: res.channels[Orbit.CW]},
                   intensities={Orbit.CW: res.intensities[Orbit.CCW],
                                Orbit.CCW: res.intensities[Orbit.CW]})

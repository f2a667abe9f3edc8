"""Configuration document: JSON, validated against a published JSON Schema.

A user file only needs the keys it changes; everything else falls back to
:data:`DEFAULTS`.  Validation happens before any computation, and failures
come back as :class:`ConfigError` carrying a dotted field path and, when it
can be located, a line number in the source text.
"""
import copy
import json
import math
import re

import jsonschema

from .brillouin import MaterialParams
from .errors import ConfigError
from .walker import ENVELOPES, WalkerIndex, catalog_from_records
from .wgm import SphereGeometry

SCHEMA_VERSION = 1

_POS = {"type": "number", "exclusiveMinimum": 0}
_POS_OR_NULL = {"anyOf": [_POS, {"type": "null"}]}

SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "magnonbls configuration",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "geometry", "material", "walker_catalog", "wgm", "spectra"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "geometry": {
            "type": "object",
            "additionalProperties": False,
            "required": ["radius_m", "refractive_index"],
            "properties": {
                "radius_m": _POS,
                "refractive_index": {"type": "number", "exclusiveMinimum": 1},
            },
        },
        "material": {
            "type": "object",
            "additionalProperties": False,
            "required": ["epsilon_r", "M_s", "verdet", "vacuum_wavelength_m"],
            "properties": {
                "epsilon_r": _POS,
                "M_s": _POS,
                "verdet": _POS,
                "vacuum_wavelength_m": _POS,
            },
        },
        "walker_catalog": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["n", "m_mag", "omega_m_hz"],
                "properties": {
                    "n": {"type": "integer", "minimum": 1},
                    "m_mag": {"type": "integer"},
                    "r": {"type": "integer", "minimum": 0},
                    "omega_m_hz": _POS,
                    "envelope_id": {"enum": sorted(ENVELOPES)},
                },
            },
        },
        "wgm": {
            "type": "object",
            "additionalProperties": False,
            "required": ["m_TE", "q"],
            "properties": {
                "m_TE": {"type": "integer", "minimum": 3},
                "q": {"type": "integer", "minimum": 1},
                "table_span": {"type": "integer", "minimum": 0},
                "scan_window": {
                    "anyOf": [
                        {"type": "null"},
                        {"type": "array", "items": _POS, "minItems": 2, "maxItems": 2},
                    ]
                },
            },
        },
        "spectra": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "optical_linewidth_hz": _POS_OR_NULL,
                "magnon_linewidth_hz": _POS_OR_NULL,
                "tuning": {"enum": ["ExactFsrMinusGb", "Catalog"]},
                "coupling": {"enum": ["uniform", "overlap"]},
                "thresholds": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {"cw_dominant_above": _POS, "ccw_dominant_below": _POS},
                },
                "grid_points": {"type": "integer", "minimum": 9},
                "quadrature": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 4},
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        },
    },
}

DEFAULTS = {
    "schema_version": SCHEMA_VERSION,
    "geometry": {"radius_m": 0.5e-3, "refractive_index": 2.19},
    "material": {"epsilon_r": 2.19 ** 2, "M_s": 1.39e5, "verdet": 420.0,
                 "vacuum_wavelength_m": 1.55e-6},
    "walker_catalog": [
        {"n": 1, "m_mag": 1, "r": 0, "omega_m_hz": 5e9, "envelope_id": "uniform"},
        {"n": 3, "m_mag": -1, "r": 1, "omega_m_hz": 5e9, "envelope_id": "vortex_dome"},
        {"n": 3, "m_mag": 1, "r": 1, "omega_m_hz": 5e9, "envelope_id": "dome"},
        {"n": 4, "m_mag": 0, "r": 1, "omega_m_hz": 5e9, "envelope_id": "vortex_dome"},
    ],
    "wgm": {"m_TE": 100, "q": 1, "table_span": 2, "scan_window": None},
    "spectra": {
        "optical_linewidth_hz": None,
        "magnon_linewidth_hz": None,
        "tuning": "ExactFsrMinusGb",
        "coupling": "uniform",
        "thresholds": {"cw_dominant_above": 2.0, "ccw_dominant_below": 0.5},
        "grid_points": 2001,
        "quadrature": [64, 32],
    },
}


def _merge(base, override):
    out = copy.deepcopy(base)
    for key, val in override.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], val)
        else:
            out[key] = copy.deepcopy(val)
    return out


def _locate(text, path):
    """Best-effort line number of the last named key of ``path`` in ``text``."""
    if text is None:
        return None
    keys = [p for p in path if isinstance(p, str)]
    if not keys:
        return None
    m = re.search(r'"%s"\s*:' % re.escape(keys[-1]), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def validate(doc, text=None):
    """Merge ``doc`` over the defaults and validate; returns the full document."""
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object", field="")
    merged = _merge(DEFAULTS, doc)
    validator = jsonschema.Draft7Validator(SCHEMA)
    errors = sorted(validator.iter_errors(merged), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        err = errors[0]
        path = list(err.absolute_path)
        field = ".".join(str(p) for p in path)
        line = _locate(text, path)
        where = f" (line {line})" if line else ""
        raise ConfigError(f"{field or '<root>'}: {err.message}{where}", field=field, line=line)
    _check_semantics(merged)
    return merged


def _check_semantics(cfg):
    th = cfg["spectra"]["thresholds"]
    if not th["cw_dominant_above"] > th["ccw_dominant_below"]:
        raise ConfigError("spectra.thresholds: cw_dominant_above must exceed ccw_dominant_below",
                          field="spectra.thresholds")
    for i, rec in enumerate(cfg["walker_catalog"]):
        try:
            WalkerIndex(rec["n"], rec["m_mag"], rec.get("r", 0))
        except ValueError as exc:
            raise ConfigError(f"walker_catalog.{i}: {exc}", field=f"walker_catalog.{i}") from None
    win = cfg["wgm"]["scan_window"]
    if win is not None and not win[0] < win[1]:
        raise ConfigError("wgm.scan_window: lower bound must be below upper bound",
                          field="wgm.scan_window")


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                          field="", line=exc.lineno) from None
    return validate(doc, text)


def load(path=None):
    """Validated configuration from ``path``; defaults when ``path`` is None."""
    if path is None:
        return validate({})
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
    return loads(text)


def geometry(cfg):
    g = cfg["geometry"]
    return SphereGeometry(g["radius_m"], g["refractive_index"])


def material(cfg):
    m = cfg["material"]
    return MaterialParams.from_wavelength(m["epsilon_r"], m["M_s"], m["verdet"],
                                          m["vacuum_wavelength_m"])


def walker_catalog(cfg):
    return catalog_from_records(cfg["walker_catalog"])


def scan_window(cfg, l):
    """Absolute size-parameter window for order ``l``; None means the solver default."""
    win = cfg["wgm"]["scan_window"]
    return None if win is None else (win[0] * l, win[1] * l)


def thresholds(cfg):
    th = cfg["spectra"]["thresholds"]
    return (th["cw_dominant_above"], th["ccw_dominant_below"])


def hz_to_rad(value):
    return None if value is None else 2.0 * math.pi * value

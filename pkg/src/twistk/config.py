"""Run configuration: a flat ``key = value`` text format.

Grammar (UTF-8)::

    # comment
    key = value

Section headers such as ``[run]`` may be used for grouping; they are
ignored when reading, so every key lives in one flat namespace.  Values are
scalars, comma-separated lists, or JSON for matrices.  Recognised keys:

=================  ===========================================================
command            kgroups | spectrum | flow | supercharge | cocycle | character | all
space              S2 | T2 | custom
k                  twist degree, integer >= 0
xi_rank            rank of the vacuum bundle (default 1)
xi_degree          degree of the vacuum bundle (default 0)
mode_cutoff        Lambda (default 6)
charge_window      q_max (default 4)
fermion_cutoff     default 6
energy_cutoff      E_max (default 6)
max_states         basis size bound (default 200000)
y                  list of supercharge parameters, fractions allowed
t_schedule         list of heat-kernel times for the Theta checks
flow_samples       path samples for spectral flow (default 64)
flow_level         crossing level (default 0.25)
flow_turns         loop multiplicity (default 1)
cover              S2 | tetra | custom
cover_patches      number of M-patches for a custom cover
cover_nerve        JSON list of index lists
cover_windings     JSON list of [[i, j], w]
k0_orders ...      custom presentation: k0_orders, unit_vector, mult_table,
                   lambda_class, k1_orders, k1_module_action, rank_functional
csv                path for the Theta profile CSV
out                path for the JSON report
seed               integer seed for randomized checks (default 0)
=================  ===========================================================
"""

from __future__ import annotations

import configparser
import json
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Any

from .fock.basis import Truncation
from .ktheory import KRingPresentation

__all__ = ["RunConfig", "ConfigError", "parse_config", "format_config", "COMMANDS"]

COMMANDS = ("kgroups", "spectrum", "flow", "supercharge", "cocycle", "character", "all")
PRESENTATION_KEYS = ("k0_orders", "unit_vector", "mult_table", "lambda_class", "k1_orders",
                     "k1_module_action", "rank_functional")


class ConfigError(ValueError):
    def __init__(self, errors: list[str], warnings: list[str] | None = None):
        self.errors = list(errors)
        self.warnings = list(warnings or [])
        super().__init__("invalid configuration:\n  " + "\n  ".join(self.errors))


@dataclass(frozen=True)
class RunConfig:
    command: str = "all"
    space: str = "S2"
    k: int = 1
    xi_rank: int = 1
    xi_degree: int = 0
    mode_cutoff: int = 6
    charge_window: int = 4
    fermion_cutoff: int = 6
    energy_cutoff: Fraction = Fraction(6)
    max_states: int = 200_000
    y: tuple = (Fraction(0), Fraction(1, 2))
    t_schedule: tuple = ()
    flow_samples: int = 64
    flow_level: float = 0.25
    flow_turns: int = 1
    cover: str = "tetra"
    cover_patches: int = 0
    cover_nerve: tuple = ()
    cover_windings: tuple = ()
    presentation: Any = None  # dict of custom presentation fields, JSON-ready
    csv: str = ""
    out: str = ""
    seed: int = 0
    warnings: tuple = field(default=(), compare=False)

    @property
    def truncation(self) -> Truncation:
        return Truncation(self.mode_cutoff, self.charge_window, self.fermion_cutoff,
                          self.energy_cutoff, self.max_states)

    def to_json(self) -> dict:
        out = {}
        for f in fields(self):
            if f.name == "warnings":
                continue
            v = getattr(self, f.name)
            if isinstance(v, Fraction):
                v = str(v)
            elif isinstance(v, tuple):
                v = [str(x) if isinstance(x, Fraction) else x for x in v]
            out[f.name] = v
        return out


_INT = ("k", "xi_rank", "xi_degree", "mode_cutoff", "charge_window", "fermion_cutoff",
        "max_states", "flow_samples", "flow_turns", "cover_patches", "seed")
_FLOAT = ("flow_level",)
_STR = ("command", "space", "cover", "csv", "out")


def _list(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def parse_config(text: str) -> RunConfig:
    """Parse and validate; raise ``ConfigError`` listing every problem found."""
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str
    body = text if text.lstrip().startswith("[") else "[run]\n" + text
    try:
        cp.read_string(body)
    except configparser.Error as exc:
        raise ConfigError([f"syntax: {exc}"]) from None
    raw: dict[str, str] = {}
    errors: list[str] = []
    warnings: list[str] = []
    for sec in cp.sections():
        for key, val in cp.items(sec):
            if key in raw:
                errors.append(f"key {key!r} given more than once")
            raw[key] = val

    values: dict[str, Any] = {}
    pres: dict[str, Any] = {}
    for key, val in raw.items():
        try:
            if key in _INT:
                values[key] = int(val)
            elif key in _FLOAT:
                values[key] = float(val)
            elif key in _STR:
                values[key] = val.strip()
            elif key == "energy_cutoff":
                values[key] = Fraction(val.strip())
            elif key == "y":
                values[key] = tuple(Fraction(p) for p in _list(val))
            elif key == "t_schedule":
                values[key] = tuple(float(p) for p in _list(val))
            elif key == "cover_nerve":
                values[key] = tuple(tuple(int(i) for i in s) for s in json.loads(val))
            elif key == "cover_windings":
                values[key] = tuple((tuple(int(i) for i in e), int(w)) for e, w in json.loads(val))
            elif key in PRESENTATION_KEYS:
                pres[key] = json.loads(val)
            else:
                warnings.append(f"unknown key {key!r} ignored")
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            errors.append(f"{key}: cannot parse {val!r} ({exc})")
    if pres:
        values["presentation"] = pres

    cfg = replace(RunConfig(), **values, warnings=tuple(warnings))
    errors += _violations(cfg)
    if errors:
        raise ConfigError(errors, warnings)
    return cfg


def _violations(cfg: RunConfig) -> list[str]:
    bad = []
    if cfg.command not in COMMANDS:
        bad.append(f"command must be one of {', '.join(COMMANDS)}, got {cfg.command!r}")
    if cfg.k < 0:
        bad.append(f"k must be >= 0, got {cfg.k}")
    if cfg.xi_rank < 1:
        bad.append(f"xi_rank must be >= 1, got {cfg.xi_rank}")
    bad += cfg.truncation.violations()
    if cfg.flow_samples < 2:
        bad.append("flow_samples must be at least 2")
    if any(b <= a for a, b in zip(cfg.t_schedule, cfg.t_schedule[1:])):
        bad.append("t_schedule must be increasing")
    if any(t <= 0 for t in cfg.t_schedule):
        bad.append("t_schedule entries must be positive")
    space = cfg.space.upper()
    if space not in ("S2", "T2", "CUSTOM"):
        bad.append(f"space must be S2, T2 or custom, got {cfg.space!r}")
    if space == "CUSTOM":
        p = cfg.presentation or {}
        missing = [key for key in ("k0_orders", "unit_vector", "mult_table", "lambda_class") if key not in p]
        if missing:
            bad.append(f"custom space needs {', '.join(missing)}")
        else:
            try:
                KRingPresentation.build(**p, validate=False)
            except (TypeError, ValueError, IndexError) as exc:
                bad.append(f"custom presentation malformed: {exc}")
            else:
                pr = KRingPresentation.build(**p, validate=False)
                bad += [f"custom presentation: {v}" for v in pr.violations()]
    elif cfg.presentation:
        bad.append("presentation keys given but space is not custom")
    if cfg.cover.lower() == "custom":
        from .cech import Cover
        if cfg.cover_patches < 1 or not cfg.cover_nerve:
            bad.append("custom cover needs cover_patches and cover_nerve")
        else:
            cov = Cover(cfg.cover_patches, frozenset(frozenset(s) for s in cfg.cover_nerve),
                        tuple(cfg.cover_windings))
            bad += [f"cover: {v}" for v in cov.violations()]
    elif cfg.cover.lower() not in ("s2", "tetra"):
        bad.append(f"cover must be S2, tetra or custom, got {cfg.cover!r}")
    return bad


def _fmt(v) -> str:
    if isinstance(v, tuple):
        if v and isinstance(v[0], tuple):
            return json.dumps([list(x) if not isinstance(x[0], tuple) else [list(x[0]), x[1]] for x in v])
        return ", ".join(str(x) for x in v)
    return str(v)


def format_config(cfg: RunConfig) -> str:
    """Text that ``parse_config`` reads back to an equal ``RunConfig``."""
    lines = ["[run]"]
    for f in fields(cfg):
        if f.name in ("warnings", "presentation"):
            continue
        v = getattr(cfg, f.name)
        if f.name in ("cover_nerve", "cover_windings") and not v:
            continue
        lines.append(f"{f.name} = {_fmt(v)}")
    if cfg.presentation:
        for key in PRESENTATION_KEYS:
            if key in cfg.presentation:
                lines.append(f"{key} = {json.dumps(cfg.presentation[key])}")
    return "\n".join(lines) + "\n"

"""Plain-text run configuration.

Format::

    # comment
    [run]               # optional
    seed = 0
    kb_mode = unit      # SI | unit
    output = results

    [exergy]            # exactly one mode section
    q_r = 1000
    t_r = 500
    ...

Values are decimal or scientific-notation numbers; vector keys take a
comma-separated list.  A handful of keys (``kb_mode``, ``output``,
``system``) take a bare word.  Keys are case-insensitive.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

MODES = ("exergy", "onsager", "phase", "variational", "verify")
KB_MODES = ("SI", "unit")

NUMBER, INT, VECTOR, WORD = "number", "int", "vector", "word"

_NUM_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_KEY_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

PHASE_SYSTEMS = ("golden_rotation", "logistic", "standard_map",
                 "linear_flow", "rotation_flow", "cubic_flow")

# mode -> key -> (kind, required)
SCHEMA = {
    "run": {"seed": (INT, False), "kb_mode": (WORD, False), "output": (WORD, False)},
    "exergy": {
        **{k: (NUMBER, True) for k in
           ("q_r", "t_r", "t_a", "delta_h", "delta_s", "delta_ek", "delta_eg", "w")},
        "t_ref": (NUMBER, False),
        "m_dot": (NUMBER, False),
    },
    "onsager": {
        "xi": (VECTOR, True),
        "l2": (VECTOR, True),
        "l3": (VECTOR, False),
        "rho_s": (NUMBER, False),
        "rho_pi": (NUMBER, False),
    },
    "phase": {
        "system": (WORD, True),
        "horizon": (INT, False),
        "samples": (INT, False),
        "start": (VECTOR, False),
        "lam": (NUMBER, False),
        "k": (NUMBER, False),
        "bins": (INT, False),
        "m_dot": (NUMBER, False),
        "dump": (INT, False),
    },
    "variational": {
        "center": (VECTOR, True),
        "peak": (NUMBER, False),
        "lower": (NUMBER, False),
        "upper": (NUMBER, False),
        "t_ref": (NUMBER, False),
        "horizon": (NUMBER, False),
        "dt": (NUMBER, False),
        "max_iters": (INT, False),
        "n_starts": (INT, False),
        "fd_step": (NUMBER, False),
        "tol_value": (NUMBER, False),
        "tol_param": (NUMBER, False),
    },
    "verify": {
        "instances": (INT, False),
        "horizon": (INT, False),
    },
}

DEFAULT_KB = {"exergy": "SI", "onsager": "unit", "phase": "unit",
              "variational": "SI", "verify": "unit"}


class ConfigError(ValueError):
    """Invalid configuration text; the message carries line positions."""


@dataclass(frozen=True)
class RunConfig:
    mode: str
    parameters: dict = field(default_factory=dict)
    output_path: str = "irrigen_out"
    seed: int = 0
    kb_mode: str = "unit"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.kb_mode not in KB_MODES:
            raise ConfigError(f"kb_mode must be SI or unit, got {self.kb_mode!r}")
        missing = [k for k, (_, req) in SCHEMA[self.mode].items()
                   if req and k not in self.parameters]
        if missing:
            raise ConfigError(f"missing required key {missing[0]!r} in section [{self.mode}]")

    @property
    def k_b(self):
        return 1.380649e-23 if self.kb_mode == "SI" else 1.0


def _number(text, lineno, key):
    if not _NUM_RE.match(text):
        raise ConfigError(f"line {lineno}: bad number {text!r} for key {key!r}")
    return float(text)


def _convert(kind, text, lineno, key):
    if kind == NUMBER:
        return _number(text, lineno, key)
    if kind == INT:
        value = _number(text, lineno, key)
        if value != int(value):
            raise ConfigError(f"line {lineno}: key {key!r} needs an integer, got {text!r}")
        return int(value)
    if kind == VECTOR:
        parts = [p.strip() for p in text.split(",")]
        if not parts or any(not p for p in parts):
            raise ConfigError(f"line {lineno}: empty entry in list for key {key!r}")
        return tuple(_number(p, lineno, key) for p in parts)
    if not text or any(c.isspace() for c in text):
        raise ConfigError(f"line {lineno}: key {key!r} needs a single word, got {text!r}")
    return text


def parse_config(text):
    """Parse and validate configuration text into a RunConfig."""
    sections = {}
    seen = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"line {lineno}: malformed section header {raw.strip()!r}")
            name = line[1:-1].strip().lower()
            if name not in SCHEMA:
                raise ConfigError(f"line {lineno}: unknown section [{name}]; "
                                  f"expected [run] or one of {', '.join(MODES)}")
            if name in sections:
                raise ConfigError(f"line {lineno}: section [{name}] repeated "
                                  f"(first on line {sections[name][0]})")
            sections[name] = (lineno, {})
            current = name
            continue
        if current is None:
            raise ConfigError(f"line {lineno}: key outside of any section")
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not _KEY_RE.match(key):
            raise ConfigError(f"line {lineno}: invalid key {key!r}")
        key = key.lower()
        schema = SCHEMA[current]
        if key not in schema:
            raise ConfigError(f"line {lineno}: unknown key {key!r} in section [{current}]")
        if (current, key) in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} in section [{current}] "
                              f"(first defined on line {seen[current, key]})")
        seen[current, key] = lineno
        sections[current][1][key] = _convert(schema[key][0], value, lineno, key)

    modes = [name for name in sections if name != "run"]
    if not modes:
        raise ConfigError("no mode section; expected one of "
                          + ", ".join(f"[{m}]" for m in MODES))
    if len(modes) > 1:
        raise ConfigError(f"line {sections[modes[1]][0]}: only one mode section allowed "
                          f"(already have [{modes[0]}])")
    mode = modes[0]
    run = sections.get("run", (0, {}))[1]
    kb_mode = run.get("kb_mode", DEFAULT_KB[mode])
    if kb_mode not in KB_MODES:
        raise ConfigError(f"line {seen['run', 'kb_mode']}: kb_mode must be SI or unit")
    params = sections[mode][1]
    if mode == "phase" and params.get("system") not in PHASE_SYSTEMS:
        raise ConfigError(f"line {seen.get(('phase', 'system'), sections['phase'][0])}: "
                          f"system must be one of {', '.join(PHASE_SYSTEMS)}")
    return RunConfig(mode=mode, parameters=dict(params),
                     output_path=run.get("output", "irrigen_out"),
                     seed=run.get("seed", 0), kb_mode=kb_mode)


def _render_value(value):
    if isinstance(value, tuple):
        return ", ".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_config(config):
    """Inverse of :func:`parse_config` for valid configurations."""
    lines = ["[run]",
             f"seed = {config.seed}",
             f"kb_mode = {config.kb_mode}",
             f"output = {config.output_path}",
             "",
             f"[{config.mode}]"]
    for key, value in config.parameters.items():
        lines.append(f"{key} = {_render_value(value)}")
    return "\n".join(lines) + "\n"

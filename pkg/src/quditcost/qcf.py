"""Parser and serializer for QCF, a small line-oriented circuit format.

Grammar (one directive per line, ``#`` starts a comment, wires are 1-based)::

    dim <d>
    wires <n>
    apply <FAMILY> <wire...> [: k=<int> | m=<int>,n=<int>]
    measure <wire...>

The ``dim``/``wires`` header is mandatory and comes first; ``measure``, if
present, must be the final directive.  Gate tokens: H, HDAG, CNOT, CNOTDAG,
CZ, I (no parameters), X, Z, P (``k=``), U, WEYL (``m=,n=``), and the
two-dimensional PX, PY, PZ.  Parameters must already lie in ``0..d-1``.

Errors are raised as :class:`QcfSyntaxError` (malformed lines) or
:class:`QcfSemanticError` (well-formed but invalid), both carrying the
1-based line and column of the offending token.
"""

from __future__ import annotations

import re

from . import gates
from .circuit import Circuit, Step
from .gates import GateFamily, GateInstance


class QcfError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class QcfSyntaxError(QcfError):
    pass


class QcfSemanticError(QcfError):
    pass


# token -> (arity, param kind, builder)
_GATES = {
    "H": (1, None, lambda d, p: gates.hadamard(d)),
    "HDAG": (1, None, lambda d, p: gates.hadamard_dagger(d)),
    "CNOT": (2, None, lambda d, p: gates.cnot(d)),
    "CNOTDAG": (2, None, lambda d, p: gates.cnot_dagger(d)),
    "CZ": (2, None, lambda d, p: gates.control_z(d)),
    "I": (1, None, lambda d, p: gates.identity(d)),
    "X": (1, "k", lambda d, p: gates.x_shift(p[0], d)),
    "Z": (1, "k", lambda d, p: gates.z_phase(p[0], d)),
    "P": (1, "k", lambda d, p: gates.p_gate(p[0], d)),
    "U": (1, "mn", lambda d, p: gates.u_mn(p[0], p[1], d)),
    "WEYL": (1, "mn", lambda d, p: gates.weyl(p[0], p[1], d)),
    "PX": (1, None, lambda d, p: gates.pauli_x()),
    "PY": (1, None, lambda d, p: gates.pauli_y()),
    "PZ": (1, None, lambda d, p: gates.pauli_z()),
}

_QUBIT_ONLY = {"PX", "PY", "PZ"}


def _tokens(line: str):
    """Tokens of one line with their 1-based starting columns, comments stripped."""
    body = line.split("#", 1)[0]
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", body)]


def _int_token(text: str, line: int, col: int, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise QcfSyntaxError(line, col, f"expected integer {what}, got {text!r}") from None


def _parse_params(kind, toks, line: int):
    """Consume an optional ``: k=...`` / ``: m=...,n=...`` tail."""
    if not toks:
        if kind is None:
            return None
        raise QcfSemanticError(line, 1, f"gate requires parameter(s) '{kind}='")
    colon_col = toks[0][1]
    if not toks[0][0].startswith(":"):
        raise QcfSyntaxError(line, colon_col, f"expected ':' before parameters, got {toks[0][0]!r}")
    if kind is None:
        raise QcfSemanticError(line, colon_col, "gate takes no parameters")
    blob = "".join(t for t, _c in toks).lstrip(":").replace(" ", "")
    if kind == "k":
        match = re.fullmatch(r"k=(-?\d+)", blob)
        if not match:
            raise QcfSyntaxError(line, colon_col, f"expected 'k=<int>', got {blob!r}")
        return (int(match.group(1)),)
    match = re.fullmatch(r"m=(-?\d+),n=(-?\d+)", blob)
    if not match:
        raise QcfSyntaxError(line, colon_col, f"expected 'm=<int>,n=<int>', got {blob!r}")
    return (int(match.group(1)), int(match.group(2)))


def parse_qcf(text: str) -> Circuit:
    """Parse QCF text into a validated :class:`Circuit`."""
    d = None
    num_wires = None
    steps: list[Step] = []
    measure: tuple[int, ...] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        word, col = toks[0]
        if measure is not None:
            raise QcfSemanticError(lineno, col, "no directives allowed after 'measure'")
        if d is None:
            if word != "dim":
                raise QcfSyntaxError(lineno, col, f"expected 'dim <d>' header, got {word!r}")
            if len(toks) != 2:
                raise QcfSyntaxError(lineno, col, "'dim' takes exactly one integer")
            value = _int_token(toks[1][0], lineno, toks[1][1], "dimension")
            if value < 2:
                raise QcfSemanticError(lineno, toks[1][1], f"dimension must be >= 2, got {value}")
            d = value
            continue
        if num_wires is None:
            if word != "wires":
                raise QcfSyntaxError(lineno, col, f"expected 'wires <n>' header, got {word!r}")
            if len(toks) != 2:
                raise QcfSyntaxError(lineno, col, "'wires' takes exactly one integer")
            value = _int_token(toks[1][0], lineno, toks[1][1], "wire count")
            if value < 1:
                raise QcfSemanticError(lineno, toks[1][1], f"need at least one wire, got {value}")
            num_wires = value
            continue

        if word == "apply":
            if len(toks) < 2:
                raise QcfSyntaxError(lineno, col, "'apply' needs a gate name")
            name, name_col = toks[1]
            spec = _GATES.get(name)
            if spec is None:
                raise QcfSemanticError(lineno, name_col, f"unknown gate {name!r}")
            arity, param_kind, build = spec
            if name in _QUBIT_ONLY and d != 2:
                raise QcfSemanticError(lineno, name_col, f"{name} is only defined for dim 2")
            wires = []
            rest = toks[2:]
            while rest and re.fullmatch(r"\d+", rest[0][0]):
                wires.append(_parse_wire(rest.pop(0), lineno, num_wires))
            if len(wires) != arity:
                raise QcfSemanticError(
                    lineno, name_col, f"{name} takes {arity} wire(s), got {len(wires)}"
                )
            if len(set(wires)) != len(wires):
                raise QcfSemanticError(lineno, name_col, f"duplicate wire in {tuple(wires)}")
            params = _parse_params(param_kind, rest, lineno)
            if params is not None:
                for value in params:
                    if not 0 <= value < d:
                        raise QcfSemanticError(
                            lineno, name_col, f"parameter {value} out of range 0..{d - 1}"
                        )
            steps.append(Step(build(d, params), tuple(wires)))
        elif word == "measure":
            if len(toks) < 2:
                raise QcfSyntaxError(lineno, col, "'measure' needs at least one wire")
            wires = [_parse_wire(t, lineno, num_wires) for t in toks[1:]]
            if len(set(wires)) != len(wires):
                raise QcfSemanticError(lineno, col, f"duplicate wire in {tuple(wires)}")
            measure = tuple(wires)
        elif word in ("dim", "wires"):
            raise QcfSemanticError(lineno, col, f"duplicate header directive {word!r}")
        else:
            raise QcfSyntaxError(lineno, col, f"unknown directive {word!r}")

    if d is None or num_wires is None:
        raise QcfSyntaxError(1, 1, "missing 'dim'/'wires' header")
    return Circuit(d=d, num_wires=num_wires, steps=tuple(steps), measure_wires=measure)


def _parse_wire(tok, lineno: int, num_wires: int) -> int:
    text, col = tok
    wire = _int_token(text, lineno, col, "wire")
    if not 1 <= wire <= num_wires:
        raise QcfSemanticError(lineno, col, f"wire {wire} out of range 1..{num_wires}")
    return wire


_TOKEN_BY_FAMILY = {
    GateFamily.H: "H",
    GateFamily.HDAG: "HDAG",
    GateFamily.CNOT: "CNOT",
    GateFamily.CNOTDAG: "CNOTDAG",
    GateFamily.CZ: "CZ",
    GateFamily.IDENTITY: "I",
    GateFamily.XSHIFT: "X",
    GateFamily.ZPHASE: "Z",
    GateFamily.PGATE: "P",
    GateFamily.UMN: "U",
    GateFamily.WEYL: "WEYL",
    GateFamily.PAULI_X: "PX",
    GateFamily.PAULI_Y: "PY",
    GateFamily.PAULI_Z: "PZ",
}


def _step_line(gate: GateInstance, wires) -> str:
    token = _TOKEN_BY_FAMILY.get(gate.family)
    if token is None:
        raise ValueError(f"gate family {gate.family.value!r} has no QCF token")
    line = f"apply {token} {' '.join(map(str, wires))}"
    if gate.family in (GateFamily.XSHIFT, GateFamily.ZPHASE, GateFamily.PGATE):
        line += f" : k={gate.params[0]}"
    elif gate.family in (GateFamily.UMN, GateFamily.WEYL):
        line += f" : m={gate.params[0]},n={gate.params[1]}"
    return line


def to_qcf(circuit: Circuit) -> str:
    """Serialize a circuit back to QCF text (cost-exemption flags do not travel)."""
    lines = [f"dim {circuit.d}", f"wires {circuit.num_wires}"]
    lines.extend(_step_line(step.gate, step.wires) for step in circuit.steps)
    if circuit.measure_wires is not None:
        lines.append(f"measure {' '.join(map(str, circuit.measure_wires))}")
    return "\n".join(lines) + "\n"

"""Text grammars for systems, ideals, series, and witness records.

All grammars are line-oriented; blank lines and `#` comments are
ignored.  Set literals are `{0 1 2}` (finite) and `~{3}` (cofinite),
rationals are `p/q` or `p`, and series are given term by term.  Parsing
is strict: unknown keys and malformed lines raise FormatError rather
than being skipped.

    system: finite                    system: template
    carrier: 0 1                      name: shift
    map: 0>1 1>0

    ideal: stable                     ideal: sw
    set: {0}                          s: {}
    set: {}                           w: {0}
    stable_from: 1                    # s = invariant core, w = wandering seed

    # series: one `term <degree> <point> <re> <im>` per line
    term 0 5 1 0
    term 2 -1 1/2 -3/4

Witness certificates are JSON records with a versioned schema field; see
`witness_record`.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import Func, Series
from .dynamics import CoSet, System
from .errors import FormatError
from .ideals import CoreSeedIdeal, Decision, IdealSpec, StableIdeal
from .scalars import Scalar
from .units import Witness

SCHEMA_DECISION = "semicrossed.decision/1"
SCHEMA_WITNESS = "semicrossed.witness/1"
SCHEMA_REPORT = "semicrossed.report/1"
SCHEMA_VALUE = "semicrossed.value/1"


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _keyed(lines: list[str]) -> list[tuple[str, str]]:
    pairs = []
    for line in lines:
        if ":" not in line:
            raise FormatError(f"expected 'key: value', got {line!r}")
        key, value = line.split(":", 1)
        pairs.append((key.strip(), value.strip()))
    return pairs


def _int(token: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise FormatError(f"expected an integer, got {token!r}") from exc


def _fraction(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"expected a rational p/q, got {token!r}") from exc


# -- systems -----------------------------------------------------------------


def parse_system(text: str) -> System:
    pairs = dict(_keyed(_lines(text)))
    kind = pairs.get("system")
    if kind == "template":
        if "name" not in pairs:
            raise FormatError("template systems need a 'name:' line")
        return System.from_template(pairs["name"])
    if kind != "finite":
        raise FormatError("first line must be 'system: finite' or 'system: template'")
    if "carrier" not in pairs or "map" not in pairs:
        raise FormatError("finite systems need 'carrier:' and 'map:' lines")
    carrier = [_int(tok) for tok in pairs["carrier"].split()]
    mapping = {}
    for arrow in pairs["map"].split():
        if ">" not in arrow:
            raise FormatError(f"map entries look like 'x>y', got {arrow!r}")
        a, b = arrow.split(">", 1)
        mapping[_int(a)] = _int(b)
    return System.finite(mapping, carrier=carrier)


def system_to_text(system: System) -> str:
    if system.is_finite:
        carrier = " ".join(str(x) for x in system.carrier)
        arrows = " ".join(
            f"{x}>{y}" for x, y in zip(system.carrier, system.images)
        )
        return f"system: finite\ncarrier: {carrier}\nmap: {arrows}\n"
    return f"system: template\nname: {system.template}\n"


# -- sets ------------------------------------------------------------------------


def parse_coset(token: str, system: System) -> CoSet:
    token = token.strip()
    cofinite = token.startswith("~")
    body = token[1:] if cofinite else token
    if not (body.startswith("{") and body.endswith("}")):
        raise FormatError(f"set literals look like {{0 1}} or ~{{2}}, got {token!r}")
    points = [_int(tok) for tok in body[1:-1].split()]
    return CoSet.make(system, cofinite, points)


def coset_literal(s: CoSet) -> str:
    return s.describe()


# -- ideals ------------------------------------------------------------------------


def parse_ideal(text: str, system: System) -> IdealSpec:
    """Syntax only; run validate_star (or the decisions) for semantics."""
    pairs = _keyed(_lines(text))
    keys = dict(pairs)
    form = keys.get("ideal")
    if form == "stable":
        sets = [parse_coset(v, system) for k, v in pairs if k == "set"]
        if not sets:
            raise FormatError("stable form needs at least one 'set:' line")
        if "stable_from" in keys:
            m = _int(keys["stable_from"])
            if not 0 <= m < len(sets):
                raise FormatError("stable_from must index a listed set")
            for extra in sets[m + 1 :]:
                if extra != sets[m]:
                    raise FormatError(
                        "sets past the stable_from index must repeat the stable set"
                    )
            sets = sets[: m + 1]
        return StableIdeal.of(system, sets)
    if form == "sw":
        if "s" not in keys or "w" not in keys:
            raise FormatError("sw form needs 's:' and 'w:' lines")
        core = parse_coset(keys["s"], system)
        seed_set = parse_coset(keys["w"], system)
        if seed_set.cofinite:
            raise FormatError("the wandering seed w must be a finite set")
        return CoreSeedIdeal.of(system, core, seed_set.points)
    raise FormatError("first line must be 'ideal: stable' or 'ideal: sw'")


def ideal_to_text(spec: IdealSpec) -> str:
    if isinstance(spec, StableIdeal):
        lines = ["ideal: stable"]
        lines += [f"set: {s.describe()}" for s in spec.levels]
        lines.append(f"stable_from: {spec.stable_from}")
        return "\n".join(lines) + "\n"
    seed = " ".join(str(x) for x in sorted(spec.seed))
    return f"ideal: sw\ns: {spec.core.describe()}\nw: {{{seed}}}\n"


# -- series -----------------------------------------------------------------------


def parse_series(text: str, system: System) -> Series:
    coeffs: dict[int, dict[int, Scalar]] = {}
    for line in _lines(text):
        tokens = line.split()
        if tokens[0] != "term" or len(tokens) != 5:
            raise FormatError(f"series lines look like 'term n x re im', got {line!r}")
        n, x = _int(tokens[1]), _int(tokens[2])
        if n < 0:
            raise FormatError("series degrees are nonnegative")
        value = Scalar(_fraction(tokens[3]), _fraction(tokens[4]))
        slot = coeffs.setdefault(n, {})
        slot[x] = slot.get(x, Scalar()) + value
    return Series.of(system, {n: Func.of(v) for n, v in coeffs.items()})


def series_to_text(series: Series) -> str:
    lines = []
    for n, f in series.items():
        for x, v in f.items():
            lines.append(f"term {n} {x} {v.re} {v.im}")
    return "\n".join(lines) + ("\n" if lines else "")


def series_record(series: Series) -> list:
    return [
        [n, [[x, str(v.re), str(v.im)] for x, v in f.items()]]
        for n, f in series.items()
    ]


def parse_series_record(record: list, system: System) -> Series:
    coeffs = {}
    try:
        for n, entries in record:
            values = {
                int(x): Scalar(_fraction(re), _fraction(im)) for x, re, im in entries
            }
            coeffs[int(n)] = Func.of(values)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed series record: {exc}") from exc
    return Series.of(system, coeffs)


# -- witnesses and decisions ----------------------------------------------------------


def witness_record(witness: Witness) -> dict:
    return {"schema": SCHEMA_WITNESS, **witness.to_record()}


def parse_witness_record(record: dict, system: System) -> Witness:
    if record.get("schema") != SCHEMA_WITNESS:
        raise FormatError(f"expected schema {SCHEMA_WITNESS}")
    try:
        side = record["side"]
        if side not in ("left", "right"):
            raise FormatError(f"witness side must be left or right, got {side!r}")
        return Witness(
            side=side,
            n0=int(record["n0"]),
            x0=int(record["x0"]),
            series=parse_series_record(record["series"], system),
            bound=_fraction(record["bound"]),
            degenerate=bool(record.get("degenerate", False)),
        )
    except KeyError as exc:
        raise FormatError(f"witness record missing field {exc}") from exc


def decision_record(decision: Decision) -> dict:
    return {"schema": SCHEMA_DECISION, **decision.to_dict()}


def dump_json(record: dict) -> str:
    return json.dumps(record, sort_keys=True, indent=2) + "\n"

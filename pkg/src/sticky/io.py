"""Reading particle files and serialising results.

Two input layouts are accepted:

* JSON: an array of objects ``{"m": ..., "x": ..., "v": ...}``;
* CSV: a header row ``m,x,v`` followed by one particle per row.

Values may be integers, ``"p/q"`` strings or finite decimals; JSON numbers
with a fractional part are read from their decimal text, never via binary
floats.  When ``x`` is absent from every record the particles are placed
at ``1..n``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from pathlib import Path

from .diagram import ClusterSet, ParticleSystem, ValidationError
from .numerics import ParseError, as_rational, format_rational


class ParticleFileError(ValueError):
    """Validation failure tied to a line of the input file."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class ParticleFile:
    system: ParticleSystem
    path: str
    format: str


def _json_records(text: str) -> list[tuple[int, object]]:
    """Decode a top-level JSON array, remembering the line each element starts on."""
    decoder = json.JSONDecoder(parse_float=lambda s: as_rational(s))
    pos = 0

    def skip(p):
        while p < len(text) and text[p] in " \t\r\n":
            p += 1
        return p

    pos = skip(pos)
    if not text.startswith("[", pos):
        raise ParseError("expected a JSON array of particle records")
    pos = skip(pos + 1)
    records = []
    if text.startswith("]", pos):
        return records
    while True:
        try:
            value, end = decoder.raw_decode(text, pos)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        records.append((text.count("\n", 0, pos) + 1, value))
        pos = skip(end)
        if text.startswith(",", pos):
            pos = skip(pos + 1)
        elif text.startswith("]", pos):
            if skip(pos + 1) != len(text):
                raise ParseError("trailing data after JSON array")
            return records
        else:
            raise ParseError(f"invalid JSON near line {text.count(chr(10), 0, pos) + 1}")


def _csv_records(text: str) -> list[tuple[int, dict]]:
    reader = csv.DictReader(io.StringIO(text))
    header = [h.strip() for h in (reader.fieldnames or [])]
    if not {"m", "v"} <= set(header) or not set(header) <= {"m", "x", "v"}:
        raise ParseError(f"CSV header must be m,x,v (x optional), got {','.join(header)}")
    reader.fieldnames = header
    return [(reader.line_num, row) for row in reader]


def _field(record, key, line):
    value = record.get(key)
    if value is None or value == "":
        raise ParseError(f"line {line}: missing field {key!r}")
    if isinstance(value, float):
        raise ParseError(f"line {line}: field {key!r} is not exact")
    try:
        return as_rational(value.strip() if isinstance(value, str) else value)
    except (ParseError, TypeError) as exc:
        raise ParseError(f"line {line}: field {key!r}: {exc}") from None


def parse_particles(text: str, fmt: str = "json", path: str = "<string>") -> ParticleFile:
    """Parse particle text; raises ``ParseError`` or ``ParticleFileError``."""
    if fmt == "json":
        records = _json_records(text)
        for line, rec in records:
            if not isinstance(rec, dict):
                raise ParseError(f"line {line}: particle record must be an object")
    elif fmt == "csv":
        records = _csv_records(text)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if not records:
        raise ParticleFileError("no particles in input")

    has_x = [rec.get("x") not in (None, "") for _, rec in records]
    if any(has_x) and not all(has_x):
        line = records[has_x.index(False)][0]
        raise ParseError(f"line {line}: x must be given for every particle or for none")

    masses, positions, velocities = [], [], []
    for line, rec in records:
        masses.append(_field(rec, "m", line))
        velocities.append(_field(rec, "v", line))
        if all(has_x):
            positions.append(_field(rec, "x", line))
        if masses[-1] <= 0:
            raise ParticleFileError(f"mass must be positive, got {format_rational(masses[-1])}", line)
    try:
        system = ParticleSystem.from_values(masses, velocities, positions or None)
    except ValidationError as exc:
        line = records[exc.index][0] if exc.index is not None else None
        raise ParticleFileError(str(exc), line) from None
    return ParticleFile(system, path, fmt)


def read_particle_file(path, fmt: str | None = None) -> ParticleFile:
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_particles(text, fmt, str(path))


def render_number(q: Fraction, digits: int | None = None) -> str:
    """Exact ``"p/q"`` text, or a rounded decimal when ``digits`` is given."""
    if digits is None:
        return format_rational(q)
    with localcontext() as ctx:
        ctx.prec = max(50, digits + 30)
        value = Decimal(q.numerator) / Decimal(q.denominator)
        text = str(value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))
    # rounding can leave a negative zero
    return text[1:] if text.startswith("-") and not text.strip("-0.") else text


def clusters_to_json(clusters: ClusterSet, digits: int | None = None) -> list[dict]:
    return [
        {
            "members": list(c.members),
            "mass": render_number(c.mass, digits),
            "velocity": render_number(c.velocity, digits),
        }
        for c in clusters
    ]


def dump_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

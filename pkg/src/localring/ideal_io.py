"""Line-oriented ideal files: field/vars/gen/pert records with # comments."""

from __future__ import annotations

from dataclasses import dataclass

from .rings import GF, QQ, ParseError, RingError, parse_polynomial


class IdealFileError(RingError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line {}: {}".format(line, message)
        super().__init__(message)


@dataclass
class IdealFile:
    ring: object
    generators: list
    perturbations: list  # aligned with generators; None entries where absent

    def has_perturbations(self):
        return any(p is not None for p in self.perturbations)


def parse_ideal_text(text):
    field_spec = None
    variables = None
    ring = None
    generators = []
    perturbations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if keyword == "field":
            toks = rest.split()
            if toks == ["Q"]:
                field_spec = ("Q", None)
            elif len(toks) == 2 and toks[0] == "F" and toks[1].isdigit():
                field_spec = ("F", int(toks[1]))
            else:
                raise IdealFileError("expected 'field Q' or 'field F <prime>'", lineno)
        elif keyword == "vars":
            names = rest.split()
            if not names:
                raise IdealFileError("vars line needs at least one name", lineno)
            if field_spec is None:
                raise IdealFileError("field must be declared before vars", lineno)
            try:
                if field_spec[0] == "Q":
                    ring = QQ(*names)
                else:
                    ring = GF(field_spec[1], *names)
            except RingError as exc:
                raise IdealFileError(str(exc), lineno)
            variables = names
        elif keyword == "gen":
            if ring is None:
                raise IdealFileError("vars must be declared before gen", lineno)
            try:
                generators.append(parse_polynomial(rest, ring))
            except ParseError as exc:
                raise IdealFileError("bad polynomial: {}".format(exc), lineno)
            perturbations.append(None)
        elif keyword == "pert":
            if ring is None:
                raise IdealFileError("vars must be declared before pert", lineno)
            slot = next(
                (i for i, p in enumerate(perturbations) if p is None), None
            )
            if slot is None:
                raise IdealFileError("more pert lines than generators", lineno)
            try:
                perturbations[slot] = parse_polynomial(rest, ring)
            except ParseError as exc:
                raise IdealFileError("bad polynomial: {}".format(exc), lineno)
        else:
            raise IdealFileError("unknown keyword {!r}".format(keyword), lineno)
    if ring is None:
        raise IdealFileError("missing field/vars declaration")
    if not generators:
        raise IdealFileError("at least one gen line is required")
    return IdealFile(ring=ring, generators=generators, perturbations=perturbations)


def load_ideal(path):
    with open(path, "r", encoding="utf-8") as handle:
        return parse_ideal_text(handle.read())


def serialize_ideal(ideal_file):
    ring = ideal_file.ring
    lines = []
    if ring.field.characteristic:
        lines.append("field F {}".format(ring.field.characteristic))
    else:
        lines.append("field Q")
    lines.append("vars {}".format(" ".join(ring.variables)))
    for g, p in zip(ideal_file.generators, ideal_file.perturbations):
        lines.append("gen {}".format(g))
        if p is not None:
            lines.append("pert {}".format(p))
    return "\n".join(lines) + "\n"

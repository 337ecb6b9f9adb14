"""The .mono on-disk factorization format.

Line-oriented; tokens are whitespace-separated and ``#`` starts a
comment running to the end of the line.  Sections appear in order:

    genus <INT>
    boundary <INT>
    curve <NAME> kind (nonsep | sep <INT> | boundary <INT>)
          [hom <INT>{2g}] [word <TOKENS>]      # any number of lines
    twist <NAME> [+|-]                         # any number, default +
    target identity
    target (boundary <INT> <INT>)+             # exactly one target line

``hom`` takes 2g integers over the ordered basis a1 b1 a2 b2 ... ag bg.
Word tokens are a<k> / b<k> with a ``~`` suffix for inverses; [x,y]
expands to the commutator x y x~ y~.

Parsing is total: every byte sequence either parses or raises
MonoParseError carrying the offending line number.
"""

from __future__ import annotations

from .surface import (
    BOUNDARY,
    NONSEP,
    SEP,
    CurveClass,
    HomologyClass,
    SurfaceSpec,
    homology_of_word,
)
from .twists import Factorization, TwistLetter
from .words import WordSyntaxError, format_word, parse_word


class MonoParseError(ValueError):
    """Positioned syntax or consistency error in a .mono document."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise MonoParseError(line, f"{what}: expected an integer, got {token!r}")


def parse_mono(text: str) -> Factorization:
    """Parse a .mono document into a Factorization."""
    genus: int | None = None
    boundary: int | None = None
    curves: list[CurveClass] = []
    curve_names: set[str] = set()
    letters: list[TwistLetter] = []
    target: tuple[tuple[int, int], ...] | None = None
    stage = "genus"  # genus -> boundary -> curves -> twists -> done
    lineno = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        head, rest = tokens[0], tokens[1:]
        if stage == "done":
            raise MonoParseError(lineno, f"directive {head!r} after target")
        if head == "genus":
            if stage != "genus":
                raise MonoParseError(lineno, "genus must be the first directive")
            if len(rest) != 1:
                raise MonoParseError(lineno, "usage: genus <INT>")
            genus = _int(rest[0], lineno, "genus")
            if genus < 0:
                raise MonoParseError(lineno, "genus must be >= 0")
            stage = "boundary"
        elif head == "boundary":
            if stage != "boundary":
                raise MonoParseError(
                    lineno, "boundary must come second, after genus"
                )
            if len(rest) != 1:
                raise MonoParseError(lineno, "usage: boundary <INT>")
            boundary = _int(rest[0], lineno, "boundary")
            if boundary < 0:
                raise MonoParseError(lineno, "boundary must be >= 0")
            stage = "curves"
        elif head == "curve":
            if stage != "curves":
                raise MonoParseError(
                    lineno,
                    "curve lines belong after the header and before twists",
                )
            curve = _parse_curve(rest, genus, boundary, lineno)
            if curve.name in curve_names:
                raise MonoParseError(lineno, f"duplicate curve name {curve.name!r}")
            curve_names.add(curve.name)
            curves.append(curve)
        elif head == "twist":
            if stage not in ("curves", "twists"):
                raise MonoParseError(lineno, "twist lines belong before the target")
            stage = "twists"
            if not rest or len(rest) > 2:
                raise MonoParseError(lineno, "usage: twist <NAME> [+|-]")
            name = rest[0]
            if name not in curve_names:
                raise MonoParseError(
                    lineno, f"twist references undeclared curve {name!r}"
                )
            sign = 1
            if len(rest) == 2:
                if rest[1] not in ("+", "-"):
                    raise MonoParseError(
                        lineno, f"twist sign must be + or -, got {rest[1]!r}"
                    )
                sign = 1 if rest[1] == "+" else -1
            letters.append(TwistLetter(name, sign))
        elif head == "target":
            if stage not in ("curves", "twists"):
                raise MonoParseError(lineno, "target must follow the twist section")
            target = _parse_target(rest, boundary, lineno)
            stage = "done"
        else:
            raise MonoParseError(lineno, f"unknown directive {head!r}")

    if genus is None:
        raise MonoParseError(lineno + 1, "missing genus directive")
    if boundary is None:
        raise MonoParseError(lineno + 1, "missing boundary directive")
    if target is None:
        raise MonoParseError(lineno + 1, "missing target directive")
    try:
        return Factorization(
            spec=SurfaceSpec(genus, boundary),
            curves=tuple(curves),
            letters=tuple(letters),
            target=target,
        )
    except ValueError as exc:  # residual cross-line inconsistency
        raise MonoParseError(lineno, str(exc))


def _parse_curve(
    rest: list[str], genus: int, boundary: int, lineno: int
) -> CurveClass:
    if len(rest) < 3 or rest[1] != "kind":
        raise MonoParseError(
            lineno, "usage: curve <NAME> kind (nonsep | sep <INT> | boundary <INT>) ..."
        )
    name = rest[0]
    kind_token = rest[2]
    pos = 3
    h = None
    boundary_index = None
    if kind_token == "nonsep":
        kind = NONSEP
    elif kind_token == "sep":
        kind = SEP
        if pos >= len(rest):
            raise MonoParseError(lineno, "sep needs a type: sep <INT>")
        h = _int(rest[pos], lineno, "separating type")
        pos += 1
        if not 1 <= h <= genus // 2:
            raise MonoParseError(
                lineno,
                f"separating type {h} out of range 1..{genus // 2} for genus {genus}",
            )
    elif kind_token == "boundary":
        kind = BOUNDARY
        if pos >= len(rest):
            raise MonoParseError(lineno, "boundary needs an index: boundary <INT>")
        boundary_index = _int(rest[pos], lineno, "boundary index")
        pos += 1
        if not 1 <= boundary_index <= boundary:
            raise MonoParseError(
                lineno,
                f"boundary index {boundary_index} out of range 1..{boundary}",
            )
    else:
        raise MonoParseError(lineno, f"unknown curve kind {kind_token!r}")

    homology = None
    if pos < len(rest) and rest[pos] == "hom":
        pos += 1
        rank = 2 * genus
        if len(rest) - pos < rank:
            raise MonoParseError(
                lineno, f"hom needs {rank} integers (basis a1 b1 ... ag bg)"
            )
        coords = tuple(
            _int(rest[pos + k], lineno, "hom coordinate") for k in range(rank)
        )
        pos += rank
        homology = HomologyClass(coords)

    word = None
    if pos < len(rest) and rest[pos] == "word":
        try:
            word = parse_word(" ".join(rest[pos + 1 :]))
        except WordSyntaxError as exc:
            raise MonoParseError(lineno, str(exc))
        pos = len(rest)
    if pos != len(rest):
        raise MonoParseError(
            lineno, f"unexpected trailing tokens {' '.join(rest[pos:])!r}"
        )

    try:
        curve = CurveClass(
            name=name, kind=kind, h=h, boundary_index=boundary_index,
            homology=homology, word=word,
        )
        if word is not None:
            # validates generators are a1..ag / b1..bg and, when both are
            # present, that hom matches the abelianization
            abelianized = homology_of_word(word, SurfaceSpec(genus, 0))
            if homology is not None and homology != abelianized:
                raise ValueError(
                    f"curve {name!r}: hom does not match the word's abelianization"
                )
        return curve
    except ValueError as exc:
        raise MonoParseError(lineno, str(exc))


def _parse_target(
    rest: list[str], boundary: int, lineno: int
) -> tuple[tuple[int, int], ...]:
    if rest == ["identity"]:
        return ()
    if not rest or len(rest) % 3 != 0:
        raise MonoParseError(
            lineno, "usage: target identity | target (boundary <INT> <INT>)+"
        )
    pairs = []
    seen = set()
    for k in range(0, len(rest), 3):
        if rest[k] != "boundary":
            raise MonoParseError(
                lineno, f"expected 'boundary', got {rest[k]!r}"
            )
        index = _int(rest[k + 1], lineno, "target boundary index")
        exponent = _int(rest[k + 2], lineno, "target exponent")
        if not 1 <= index <= boundary:
            raise MonoParseError(
                lineno, f"target boundary index {index} out of range 1..{boundary}"
            )
        if index in seen:
            raise MonoParseError(lineno, f"target boundary index {index} repeated")
        seen.add(index)
        pairs.append((index, exponent))
    return tuple(pairs)


def serialize_mono(f: Factorization, comment: str | None = None) -> str:
    """Render a Factorization as .mono text; byte-stable for equal inputs."""
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"genus {f.spec.genus}")
    lines.append(f"boundary {f.spec.boundary_count}")
    for curve in f.curves:
        parts = [f"curve {curve.name} kind"]
        if curve.kind == NONSEP:
            parts.append("nonsep")
        elif curve.kind == SEP:
            parts.append(f"sep {curve.h}")
        else:
            parts.append(f"boundary {curve.boundary_index}")
        if curve.homology is not None:
            parts.append("hom " + " ".join(str(c) for c in curve.homology.coords))
        if curve.word is not None:
            parts.append("word " + format_word(curve.word))
        lines.append(" ".join(parts))
    for letter in f.letters:
        lines.append(
            f"twist {letter.curve}" + ("" if letter.sign == 1 else " -")
        )
    if f.is_identity_target:
        lines.append("target identity")
    else:
        lines.append(
            "target "
            + " ".join(f"boundary {i} {n}" for i, n in f.target)
        )
    return "\n".join(lines) + "\n"

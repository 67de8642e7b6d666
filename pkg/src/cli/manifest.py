"""Run manifests: a line-oriented text format for one engine run.

    # comments and blank lines are ignored
    command fraisse
    category e_inf
    seed 3
    depth 2
    bound 64
    out ./runs/e_inf
    object A elementary n=1
    object B extnat
    morphism a1 elementary n=1 m=6 k=4
    morphism h pl points=0:0,1/4:0,1:1
    set F A 0 1 inf
    param steps 10

Numbers are exact: integers, p/q or inf. Elements are written the way the
archive encodes them: c:3/2 and s:1/2 for tagged values, [1,0,inf] for
vectors, up:1/4 for the upper set 1_{(1/4,1]}.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from ..core.morphism import CuMorphism, IdentityMorphism, compose
from ..core.semigroup import CuSemigroup, Element
from ..core.subset import FiniteSubset
from ..fraisse import builtin_category
from ..fraisse.category import FraisseCategory
from ..hom.elementary import ElementaryMorphism
from ..hom.pl_induced import PLInducedMorphism
from ..hom.scaling import FromExtNat, ScalingMorphism
from ..hom.shift import ShiftMorphism
from ..hom.simplicial import simplicial_hom
from ..instances.elementary import Elementary
from ..instances.extnat import INF, ExtNat
from ..instances.generator import GeneratorG, chain_generator, make_generator
from ..instances.simplicial import Simplicial
from ..instances.softdim import make_cu_z, make_soft_ray, make_softdim, make_truncated_ep
from ..instances.steplsc import IntervalLsc, make_steplsc, upper_set
from ..pl.plmap import PLMap
from ..utils.codec import encode_number
from ..utils.errors import CuFraisseError, ManifestError
from ..utils.logger import get_logger

logger = get_logger(__name__)

COMMANDS = ("amalgamate", "check", "enumerate", "fraisse", "limit", "metric", "replay")

_NUMBER = re.compile(r"^-?\d+(/\d+)?$")
_TOKEN = re.compile(r"\S+")


# ===== Literals =====

def parse_number(text: str) -> Any:
    """An int, a Fraction or INF; None when the text is not a number."""
    if text == "inf":
        return INF
    if not _NUMBER.match(text):
        return None
    value = Fraction(text)
    return value.numerator if value.denominator == 1 else value


def _encoded_number(text: str) -> Any:
    value = parse_number(text)
    if value is None:
        raise ValueError(f"not a number: {text!r}")
    return "inf" if value is INF else encode_number(value)


def parse_element_data(text: str) -> Any:
    """The archive encoding of an element literal."""
    if text.startswith("[") and text.endswith("]"):
        inner = text[1:-1]
        return [_encoded_number(part) for part in inner.split(",")] if inner else []
    if text[:2] in ("c:", "s:"):
        return {text[0]: _encoded_number(text[2:])}
    return _encoded_number(text)


def parse_element(S: CuSemigroup, text: str) -> Element:
    if text.startswith("up:"):
        t = parse_number(text[3:])
        if t is None or t is INF:
            raise ValueError(f"not a threshold: {text[3:]!r}")
        if isinstance(S, GeneratorG):
            return chain_generator(t)
        if isinstance(S, IntervalLsc):
            return upper_set(t)
        raise ValueError(f"{S.key} has no upper-set elements")
    return S.decode(parse_element_data(text))


# ===== Entries =====

@dataclass
class Token:
    text: str
    line: int
    column: int

    def fail(self, message: str) -> ManifestError:
        return ManifestError(message, self.line, self.column)


def _split(line: str, number: int) -> List[Token]:
    return [Token(m.group(0), number, m.start() + 1) for m in _TOKEN.finditer(line)]


def _options(tokens: List[Token]) -> Dict[str, Token]:
    """key=value tokens; the value keeps its own column."""
    found: Dict[str, Token] = {}
    for tok in tokens:
        key, sep, value = tok.text.partition("=")
        if not sep or not key or not value:
            raise tok.fail(f"Expected key=value, got {tok.text!r}")
        if key in found:
            raise tok.fail(f"Duplicate option {key!r}")
        found[key] = Token(value, tok.line, tok.column + len(key) + 1)
    return found


def _int(tok: Token, minimum: int = 0) -> int:
    value = parse_number(tok.text)
    if not isinstance(value, int) or value is INF or value < minimum:
        raise tok.fail(f"Expected an integer >= {minimum}, got {tok.text!r}")
    return value


def _fraction(tok: Token) -> Fraction:
    value = parse_number(tok.text)
    if value is None or value is INF:
        raise tok.fail(f"Expected an exact rational, got {tok.text!r}")
    return Fraction(value)


def _param_value(tok: Token) -> Any:
    value = parse_number(tok.text)
    return tok.text if value is None else value


@dataclass
class RunManifest:
    """Everything one run needs; identical manifests give identical reports."""
    command: Optional[str] = None
    category: Optional[str] = None
    category_params: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    depth: Optional[int] = None
    bound: Optional[int] = None
    out: Optional[str] = None
    objects: Dict[str, CuSemigroup] = field(default_factory=dict)
    morphisms: Dict[str, CuMorphism] = field(default_factory=dict)
    sets: Dict[str, FiniteSubset] = field(default_factory=dict)
    params: Dict[str, Any] = field(default_factory=dict)
    source: str = "<flags>"

    def build_category(self) -> FraisseCategory:
        if self.category is None:
            raise ManifestError(f"{self.source}: no category given")
        return builtin_category(self.category, **self.category_params)

    def morphism(self, name: str) -> CuMorphism:
        if name not in self.morphisms:
            raise ManifestError(f"{self.source}: morphism {name!r} is not declared")
        return self.morphisms[name]

    def param(self, key: str, default: Any = None) -> Any:
        return self.params.get(key, default)

    def int_param(self, key: str, default: int) -> int:
        value = self.params.get(key, default)
        if not isinstance(value, int) or isinstance(value, bool) or value is INF:
            raise ManifestError(f"{self.source}: param {key} must be an integer, got {value!r}")
        return value

    def describe(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "category": self.category,
            "category_params": {k: _describe_param(v) for k, v in self.category_params.items()},
            "objects": {k: S.describe() for k, S in self.objects.items()},
            "morphisms": {k: a.describe() for k, a in self.morphisms.items()},
            "sets": {k: F.to_dict() for k, F in self.sets.items()},
            "params": {k: _describe_param(v) for k, v in self.params.items()},
        }


def _describe_param(value: Any) -> Any:
    if value is INF:
        return "inf"
    if isinstance(value, Fraction):
        return encode_number(value)
    return value


# ===== Builders =====

def _object(kind: Token, opts: Dict[str, Token]) -> CuSemigroup:
    name = kind.text
    if name == "extnat":
        return ExtNat()
    if name == "elementary":
        return Elementary(_int(_need(kind, opts, "n"), 1))
    if name == "simplicial":
        return Simplicial(_int(_need(kind, opts, "rank"), 1))
    if name == "softdim":
        return make_softdim(_int(_need(kind, opts, "p"), 2))
    if name == "truncated_ep":
        return make_truncated_ep(_int(_need(kind, opts, "p"), 2))
    if name == "cu_z":
        return make_cu_z()
    if name == "soft_ray":
        return make_soft_ray()
    if name == "generator":
        return make_generator()
    if name == "steplsc":
        raw = _need(kind, opts, "grid")
        points = [Token(p, raw.line, raw.column) for p in raw.text.split(",")]
        return make_steplsc([_fraction(p) for p in points])
    raise kind.fail(f"Unknown object kind {name!r}")


def _need(at: Token, opts: Dict[str, Token], key: str) -> Token:
    if key not in opts:
        raise at.fail(f"{at.text} needs {key}=")
    return opts[key]


def _ref(tok: Token, table: Dict[str, Any], what: str) -> Any:
    if tok.text not in table:
        raise tok.fail(f"Unknown {what} {tok.text!r}")
    return table[tok.text]


def _pl_points(tok: Token) -> PLMap:
    pairs: List[Tuple[Fraction, Fraction]] = []
    for part in tok.text.split(","):
        x, sep, y = part.partition(":")
        if not sep:
            raise tok.fail(f"Expected x:y breakpoints, got {part!r}")
        pairs.append((_fraction(Token(x, tok.line, tok.column)), _fraction(Token(y, tok.line, tok.column))))
    return PLMap.from_points(pairs)


def _matrix_rows(tok: Token) -> List[List[Any]]:
    rows = []
    for row in tok.text.split(";"):
        values = [parse_number(v) for v in row.split(",")]
        if any(v is None or isinstance(v, Fraction) for v in values):
            raise tok.fail(f"Matrix entries are integers or inf, got {row!r}")
        rows.append(values)
    return rows


def _morphism(kind: Token, opts: Dict[str, Token], manifest: RunManifest) -> CuMorphism:
    name = kind.text
    if name == "identity":
        return IdentityMorphism(_ref(_need(kind, opts, "object"), manifest.objects, "object"))
    if name == "elementary":
        k = parse_number(_need(kind, opts, "k").text)
        if k is None or isinstance(k, Fraction):
            raise opts["k"].fail(f"k must be an integer or inf, got {opts['k'].text!r}")
        return ElementaryMorphism(_int(_need(kind, opts, "n"), 1), _int(_need(kind, opts, "m"), 1), k)
    if name == "scaling":
        factor = _need(kind, opts, "factor")
        value = parse_number(factor.text)
        if value is None:
            raise factor.fail(f"Expected a factor, got {factor.text!r}")
        return ScalingMorphism(_ref(_need(kind, opts, "object"), manifest.objects, "object"), value)
    if name == "from_extnat":
        T = _ref(_need(kind, opts, "codomain"), manifest.objects, "object")
        unit = _need(kind, opts, "unit")
        return FromExtNat(T, parse_element(T, unit.text))
    if name == "shift":
        return ShiftMorphism(make_generator(), _fraction(_need(kind, opts, "amount")))
    if name == "matrix":
        return simplicial_hom(_matrix_rows(_need(kind, opts, "rows")))
    if name == "pl":
        return PLInducedMorphism(_pl_points(_need(kind, opts, "points")))
    if name == "compose":
        outer = _ref(_need(kind, opts, "outer"), manifest.morphisms, "morphism")
        inner = _ref(_need(kind, opts, "inner"), manifest.morphisms, "morphism")
        return compose(outer, inner)
    raise kind.fail(f"Unknown morphism kind {name!r}")


# ===== Parser =====

_SCALARS = ("seed", "depth", "bound")


def _statement(manifest: RunManifest, tokens: List[Token]) -> None:
    head, args = tokens[0], tokens[1:]
    word = head.text

    if word in ("command", "out"):
        if len(args) != 1:
            raise head.fail(f"{word} takes one value")
        if word == "command" and args[0].text not in COMMANDS:
            raise args[0].fail(f"Unknown command {args[0].text!r}")
        setattr(manifest, word, args[0].text)
    elif word in _SCALARS:
        if len(args) != 1:
            raise head.fail(f"{word} takes one value")
        setattr(manifest, word, _int(args[0], 1 if word == "bound" else 0))
    elif word == "category":
        if not args:
            raise head.fail("category needs a name")
        manifest.category = args[0].text
        manifest.category_params = {k: _param_value(v) for k, v in _options(args[1:]).items()}
    elif word in ("object", "morphism"):
        if len(args) < 2:
            raise head.fail(f"{word} needs a name and a kind")
        label, kind = args[0], args[1]
        table = manifest.objects if word == "object" else manifest.morphisms
        if label.text in table:
            raise label.fail(f"{word} {label.text!r} declared twice")
        opts = _options(args[2:])
        table[label.text] = _object(kind, opts) if word == "object" else _morphism(kind, opts, manifest)
    elif word == "set":
        if len(args) < 2:
            raise head.fail("set needs a name and an object")
        S = _ref(args[1], manifest.objects, "object")
        elements = []
        for tok in args[2:]:
            try:
                elements.append(parse_element(S, tok.text))
            except (ValueError, KeyError, TypeError) as e:
                raise tok.fail(f"Bad element for {S.key}: {e}")
        manifest.sets[args[0].text] = FiniteSubset.of(S, elements)
    elif word == "param":
        if len(args) != 2:
            raise head.fail("param takes a key and a value")
        manifest.params[args[0].text] = _param_value(args[1])
    else:
        raise head.fail(f"Unknown statement {word!r}")


def parse_manifest(text: str, source: str = "<manifest>") -> RunManifest:
    manifest = RunManifest(source=source)
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = _split(line.split("#", 1)[0], number)
        if not tokens:
            continue
        try:
            _statement(manifest, tokens)
        except ManifestError:
            raise
        except (CuFraisseError, ValueError) as e:
            raise tokens[0].fail(str(e))
    logger.debug(
        f"Parsed manifest {source}",
        extra={"extra_fields": {
            "command": manifest.command,
            "objects": len(manifest.objects),
            "morphisms": len(manifest.morphisms),
        }},
    )
    return manifest


def load_manifest(path: str) -> RunManifest:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ManifestError(f"Cannot read manifest {path}: {e}")
    return parse_manifest(text, path)

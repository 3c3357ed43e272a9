"""Plain-text setup files: sections of key = value entries, with optional
brace blocks of quoted pairs.

    # weights of the valuation
    [valuation]
    x = (1, 0)
    y = (0, 1)

    [choice eps]
    table {
      "1" = "2*x"
      "2" = "x^2"
    }

Sections: ``[valuation]`` (variable weights), ``[ring]`` (``subring =
polynomial|field``, optional ``lifting = constants``), ``[campaign]``
(``seed``, ``bound``, ``samples``), any number of ``[choice NAME]`` with a
``table { }`` or ``generators { }`` block, ``[build]`` (``mode = free``
with ``choice = NAME``, or ``mode = extend`` with ``base = NAME`` and a
``steps { }`` block applied in file order), and ``[analyzer]`` (``primes``,
``degree_bound``, optional ``candidates { }`` block).

``parse_document`` and ``render_document`` round-trip exactly;
``load_setup`` interprets a document and rejects anything malformed — in
particular a tabulated value whose valuation disagrees with its degree —
with :class:`SetupError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constructions import SubgroupWithChoice, counterexample_valuation, free_pair
from .errors import SetupError
from .mpoly import parse_rational_function
from .ordgroup import GroupElement
from .twist import ChoiceFunction, TableChoice
from .valuation import MonomialValuation

__all__ = [
    "Section",
    "SetupDocument",
    "SetupFile",
    "parse_document",
    "render_document",
    "load_setup",
]


@dataclass
class Section:
    name: str
    entries: dict[str, str] = field(default_factory=dict)
    blocks: dict[str, dict[str, str]] = field(default_factory=dict)


@dataclass
class SetupDocument:
    sections: list[Section] = field(default_factory=list)

    def get(self, name: str) -> Section | None:
        for s in self.sections:
            if s.name == name:
                return s
        return None

    def choice_sections(self) -> list[Section]:
        return [s for s in self.sections if s.name.startswith("choice ")]


def _strip_comment(line: str) -> str:
    out = []
    quoted = False
    for ch in line:
        if ch == '"':
            quoted = not quoted
        if ch == "#" and not quoted:
            break
        out.append(ch)
    return "".join(out)


def _unquote(token: str, lineno: int) -> str:
    token = token.strip()
    if token.startswith('"'):
        if not token.endswith('"') or len(token) < 2:
            raise SetupError(f"line {lineno}: unterminated quote in {token!r}")
        return token[1:-1]
    return token


def parse_document(text: str) -> SetupDocument:
    doc = SetupDocument()
    section: Section | None = None
    block: dict[str, str] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if block is not None:
            if line == "}":
                block = None
                continue
            if "=" not in line:
                raise SetupError(f"line {lineno}: expected '\"key\" = \"value\"' inside a block")
            k, _, v = line.partition("=")
            block[_unquote(k, lineno)] = _unquote(v, lineno)
            continue
        if line.startswith("[") and line.endswith("]"):
            section = Section(line[1:-1].strip())
            if not section.name:
                raise SetupError(f"line {lineno}: empty section name")
            doc.sections.append(section)
            continue
        if section is None:
            raise SetupError(f"line {lineno}: content before the first section")
        if line.endswith("{"):
            name = line[:-1].strip()
            if not name:
                raise SetupError(f"line {lineno}: block needs a name")
            block = {}
            section.blocks[name] = block
            continue
        if "=" in line:
            k, _, v = line.partition("=")
            section.entries[k.strip()] = v.strip()
            continue
        raise SetupError(f"line {lineno}: cannot parse {line!r}")
    if block is not None:
        raise SetupError("unterminated block at end of file")
    return doc


def render_document(doc: SetupDocument) -> str:
    lines = []
    for section in doc.sections:
        if lines:
            lines.append("")
        lines.append(f"[{section.name}]")
        for k, v in section.entries.items():
            lines.append(f"{k} = {v}")
        for name, block in section.blocks.items():
            lines.append(f"{name} {{")
            for k, v in block.items():
                lines.append(f'  "{k}" = "{v}"')
            lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class CampaignConfig:
    seed: int = 0
    bound: int = 6
    samples: int = 200


@dataclass
class BuildDirective:
    mode: str  # "free" | "extend"
    choice: str | None = None
    base: str | None = None
    steps: list = field(default_factory=list)  # [(GroupElement, RationalFunction)]


@dataclass
class AnalyzerDirective:
    primes: tuple[int, ...]
    degree_bound: int = 8
    candidates: dict[GroupElement, str] | None = None


@dataclass
class SetupFile:
    """A fully interpreted setup: ready-made objects, not raw strings."""

    valuation: MonomialValuation
    subring: str = "polynomial"
    lifting: str | None = None
    choices: dict[str, ChoiceFunction] = field(default_factory=dict)
    pairs: dict[str, SubgroupWithChoice] = field(default_factory=dict)
    campaign: CampaignConfig = field(default_factory=CampaignConfig)
    build: BuildDirective | None = None
    analyzer: AnalyzerDirective | None = None


def _parse_int(section: str, key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise SetupError(f"[{section}] {key} must be an integer, got {value!r}") from None


def _load_analyzer(section: Section) -> AnalyzerDirective:
    raw = section.entries.get("primes", "")
    primes = []
    for part in raw.split(","):
        part = part.strip()
        if part:
            primes.append(_parse_int("analyzer", "primes", part))
    bound = _parse_int("analyzer", "degree_bound", section.entries.get("degree_bound", "8"))
    candidates = None
    if "candidates" in section.blocks:
        candidates = {}
        for k, v in section.blocks["candidates"].items():
            try:
                degree = GroupElement.parse(k, dim=1)
            except ValueError as exc:
                raise SetupError(f"[analyzer] bad candidate degree {k!r}: {exc}") from None
            candidates[degree] = v
    return AnalyzerDirective(tuple(primes), bound, candidates)


def load_setup(source) -> SetupFile:
    doc = source if isinstance(source, SetupDocument) else parse_document(source)

    analyzer = None
    analyzer_section = doc.get("analyzer")
    if analyzer_section is not None:
        analyzer = _load_analyzer(analyzer_section)

    val_section = doc.get("valuation")
    if val_section is None:
        if analyzer is None:
            raise SetupError("a setup needs a [valuation] section (or an [analyzer])")
        if not analyzer.primes:
            raise SetupError("[analyzer] needs a non-empty primes list without [valuation]")
        valuation = counterexample_valuation(analyzer.primes)
    else:
        weights = {}
        dim = None
        for var, text in val_section.entries.items():
            try:
                w = GroupElement.parse(text, dim=dim)
            except ValueError as exc:
                raise SetupError(f"[valuation] bad weight for {var}: {exc}") from None
            dim = w.dim
            weights[var] = w
        if not weights:
            raise SetupError("[valuation] section is empty")
        try:
            valuation = MonomialValuation(weights)
        except ValueError as exc:
            raise SetupError(f"[valuation] {exc}") from None

    setup = SetupFile(valuation=valuation, analyzer=analyzer)

    ring = doc.get("ring")
    if ring is not None:
        subring = ring.entries.get("subring", "polynomial")
        if subring not in ("polynomial", "field"):
            raise SetupError(f"[ring] subring must be polynomial or field, got {subring!r}")
        setup.subring = subring
        lifting = ring.entries.get("lifting")
        if lifting is not None and lifting != "constants":
            raise SetupError(f"[ring] unknown lifting oracle {lifting!r}")
        setup.lifting = lifting

    campaign = doc.get("campaign")
    if campaign is not None:
        cfg = CampaignConfig()
        for key in ("seed", "bound", "samples"):
            if key in campaign.entries:
                setattr(cfg, key, _parse_int("campaign", key, campaign.entries[key]))
        setup.campaign = cfg

    for section in doc.choice_sections():
        name = section.name.split(None, 1)[1].strip()
        if not name:
            raise SetupError(f"[{section.name}] needs a name after 'choice'")
        kinds = [k for k in ("table", "generators") if k in section.blocks]
        if len(kinds) != 1:
            raise SetupError(
                f"[{section.name}] needs exactly one 'table' or 'generators' block"
            )
        block = section.blocks[kinds[0]]
        parsed = {}
        for k, v in block.items():
            try:
                degree = GroupElement.parse(k, dim=valuation.dim)
                value = parse_rational_function(v)
            except ValueError as exc:
                raise SetupError(f"[{section.name}] bad entry {k!r}: {exc}") from None
            parsed[degree] = value
        try:
            if kinds[0] == "table":
                setup.choices[name] = TableChoice(valuation, parsed)
            else:
                pair = free_pair(valuation, list(parsed), list(parsed.values()))
                setup.choices[name] = pair.choice
                setup.pairs[name] = pair
        except ValueError as exc:
            raise SetupError(f"[{section.name}] {exc}") from None

    build = doc.get("build")
    if build is not None:
        mode = build.entries.get("mode")
        if mode not in ("free", "extend"):
            raise SetupError(f"[build] mode must be free or extend, got {mode!r}")
        directive = BuildDirective(mode=mode)
        if mode == "free":
            directive.choice = build.entries.get("choice")
            if directive.choice not in setup.pairs:
                raise SetupError(
                    "[build] mode = free needs choice = NAME of a generators choice"
                )
        else:
            directive.base = build.entries.get("base")
            if directive.base not in setup.pairs:
                raise SetupError(
                    "[build] mode = extend needs base = NAME of a generators choice"
                )
            steps_block = build.blocks.get("steps")
            if not steps_block:
                raise SetupError("[build] mode = extend needs a non-empty steps block")
            for k, v in steps_block.items():
                try:
                    degree = GroupElement.parse(k, dim=valuation.dim)
                    witness = parse_rational_function(v)
                except ValueError as exc:
                    raise SetupError(f"[build] bad step {k!r}: {exc}") from None
                directive.steps.append((degree, witness))
        setup.build = directive

    return setup

"""Chart documents and their deterministic TSV, JSON and SVG renderings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from enum import Enum


class Tag(str, Enum):
    TAU_FREE = "M"
    TAU_TORSION = "M/tau"


EDGE_LABELS = ("h0", "h1", "tau", "hidden-h0")


@dataclass(frozen=True)
class ExtChartEntry:
    stem: int
    filtration: int
    weight: int
    tag: Tag | None
    name: str = ""
    key: str = ""
    order: int = 0  # tau-torsion exponent; 0 for tau-free classes
    source: str = ""  # provenance inside a pipeline, e.g. "cokernel" or "torsion"

    def coords(self) -> tuple[int, int, int]:
        return (self.stem, self.filtration, self.weight)

    def to_json(self) -> dict:
        d = asdict(self)
        d["tag"] = self.tag.value if self.tag is not None else None
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ExtChartEntry":
        d = dict(d)
        d["tag"] = Tag(d["tag"]) if d["tag"] is not None else None
        return cls(**d)


@dataclass(frozen=True)
class ChartEdge:
    source: str
    target: str
    label: str
    tau_power: int = 0
    certificate: str = ""

    def __post_init__(self):
        if self.label not in EDGE_LABELS:
            raise ValueError(f"unknown edge label {self.label!r}")
        if self.label == "hidden-h0" and not self.certificate:
            raise ValueError("hidden edges need a certificate reference")


@dataclass
class ChartDocument:
    title: str
    convention: str
    entries: list[ExtChartEntry] = field(default_factory=list)
    edges: list[ChartEdge] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        keys = [e.key for e in self.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate entry keys")
        known = set(keys)
        for e in self.edges:
            if e.source not in known or e.target not in known:
                raise ValueError(f"edge {e.source} -> {e.target} has a missing endpoint")

    def entry(self, key: str) -> ExtChartEntry:
        for e in self.entries:
            if e.key == key:
                return e
        raise KeyError(key)

    def at(self, stem: int, filtration: int, weight: int | None = None) -> list[ExtChartEntry]:
        return [
            e
            for e in self.entries
            if e.stem == stem and e.filtration == filtration and (weight is None or e.weight == weight)
        ]

    def named(self, name: str) -> ExtChartEntry:
        hits = [e for e in self.entries if e.name == name]
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} entries named {name!r}")
        return hits[0]

    def edges_from(self, key: str, label: str | None = None) -> list[ChartEdge]:
        return [e for e in self.edges if e.source == key and (label is None or e.label == label)]

    def with_edges(self, edges: list[ChartEdge], **meta) -> "ChartDocument":
        md = dict(self.metadata)
        md.update(meta)
        return replace(self, edges=list(edges), metadata=md)

    def sorted(self) -> "ChartDocument":
        entries = sorted(self.entries, key=lambda e: (e.stem, e.filtration, e.weight, e.key))
        edges = sorted(self.edges, key=lambda e: (e.source, e.target, e.label, e.tau_power))
        return ChartDocument(self.title, self.convention, entries, edges, self.metadata)

    def to_json(self) -> dict:
        doc = self.sorted()
        return {
            "title": doc.title,
            "convention": doc.convention,
            "entries": [e.to_json() for e in doc.entries],
            "edges": [asdict(e) for e in doc.edges],
            "metadata": doc.metadata,
        }

    @classmethod
    def from_json(cls, d: dict) -> "ChartDocument":
        return cls(
            d["title"],
            d["convention"],
            [ExtChartEntry.from_json(e) for e in d["entries"]],
            [ChartEdge(**e) for e in d["edges"]],
            d.get("metadata", {}),
        )


def emit_json(doc: ChartDocument) -> bytes:
    return (json.dumps(doc.to_json(), sort_keys=True, indent=2) + "\n").encode()


TSV_COLUMNS = ("key", "stem", "filtration", "weight", "tag", "order", "name", "source")


def emit_tsv(doc: ChartDocument) -> bytes:
    lines = ["\t".join(TSV_COLUMNS)]
    for e in doc.sorted().entries:
        tag = e.tag.value if e.tag is not None else ""
        lines.append("\t".join(str(x) for x in (e.key, e.stem, e.filtration, e.weight, tag, e.order, e.name, e.source)))
    return ("\n".join(lines) + "\n").encode()


_CELL = 40
_MARGIN = 40


def emit_svg(doc: ChartDocument) -> bytes:
    """Dots for tau-free classes, triangles for tau-torsion, h0 vertical, h1 diagonal, hidden dotted."""
    doc = doc.sorted()
    max_stem = max((e.stem for e in doc.entries), default=0)
    max_filt = max((e.filtration for e in doc.entries), default=0)
    width = 2 * _MARGIN + _CELL * (max_stem + 1)
    height = 2 * _MARGIN + _CELL * (max_filt + 1)

    # entries sharing a (stem, filtration) spot are spread horizontally
    spots: dict = {}
    for e in doc.entries:
        spots.setdefault((e.stem, e.filtration), []).append(e.key)
    pos = {}
    for (s, f), keys in spots.items():
        n = len(keys)
        for i, k in enumerate(keys):
            dx = (i - (n - 1) / 2) * 8
            pos[k] = (_MARGIN + _CELL * s + _CELL / 2 + dx, height - _MARGIN - _CELL * f - _CELL / 2)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f"<title>{_esc(doc.title)}</title>",
        '<g stroke="#ccc" stroke-width="0.5">',
    ]
    for s in range(max_stem + 2):
        x = _MARGIN + _CELL * s
        out.append(f'<line x1="{x}" y1="{_MARGIN}" x2="{x}" y2="{height - _MARGIN}"/>')
    for f in range(max_filt + 2):
        y = height - _MARGIN - _CELL * f
        out.append(f'<line x1="{_MARGIN}" y1="{y}" x2="{width - _MARGIN}" y2="{y}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="10" fill="#000">')
    for s in range(max_stem + 1):
        out.append(f'<text x="{_MARGIN + _CELL * s + _CELL / 2:.1f}" y="{height - _MARGIN / 3:.1f}" text-anchor="middle">{s}</text>')
    for f in range(max_filt + 1):
        out.append(f'<text x="{_MARGIN / 2:.1f}" y="{height - _MARGIN - _CELL * f - _CELL / 2 + 3:.1f}" text-anchor="middle">{f}</text>')
    out.append("</g>")
    for e in doc.edges:
        if e.tau_power:
            continue
        x1, y1 = pos[e.source]
        x2, y2 = pos[e.target]
        dash = ' stroke-dasharray="2,3" stroke-linecap="round"' if e.label == "hidden-h0" else ""
        color = "#c00" if e.label == "tau" else "#000"
        out.append(
            f'<line class="{e.label}" x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" stroke="{color}" stroke-width="1.2"{dash}/>'
        )
    for e in doc.entries:
        x, y = pos[e.key]
        label = _esc(e.name or e.key)
        if e.tag == Tag.TAU_TORSION:
            pts = f"{x:.1f},{y - 5:.1f} {x - 4.5:.1f},{y + 3.5:.1f} {x + 4.5:.1f},{y + 3.5:.1f}"
            out.append(f'<polygon class="torsion" points="{pts}" fill="#c00"><title>{label}</title></polygon>')
        else:
            out.append(f'<circle class="free" cx="{x:.1f}" cy="{y:.1f}" r="4" fill="#000"><title>{label}</title></circle>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode()


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")

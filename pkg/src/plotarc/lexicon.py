"""Emotion-lexicon parsing and 11-dimensional sentiment lookups.

The lexicon file is UTF-8 TSV: one lemma per row followed by ten binary
columns (two valence dimensions and eight emotions). Polarity is not part
of the file; it is derived as positive minus negative and stored as the
third component of every vector.
"""

from __future__ import annotations

import io
import unicodedata
from dataclasses import dataclass, field
from typing import Optional, TextIO

import numpy as np

# Canonical component order used everywhere vectors are flattened into
# feature blocks. Index 2 (polarity) is derived, never read from a file.
DIMENSIONS = (
    "positive",
    "negative",
    "polarity",
    "anger",
    "anticipation",
    "disgust",
    "fear",
    "joy",
    "sadness",
    "surprise",
    "trust",
)

POLARITY_INDEX = DIMENSIONS.index("polarity")

# The ten file-level dimensions in canonical file-column order.
FILE_DIMENSIONS = (
    "anger",
    "anticipation",
    "disgust",
    "fear",
    "joy",
    "negative",
    "positive",
    "sadness",
    "surprise",
    "trust",
)

# Header cells are matched case-insensitively against these aliases so
# that exports with renamed columns still align correctly.
_HEADER_ALIASES = {
    "positive": "positive",
    "pos": "positive",
    "negative": "negative",
    "neg": "negative",
    "anger": "anger",
    "anticipation": "anticipation",
    "disgust": "disgust",
    "fear": "fear",
    "joy": "joy",
    "sadness": "sadness",
    "surprise": "surprise",
    "trust": "trust",
}


class LexiconError(ValueError):
    """Raised for malformed lexicon input."""


@dataclass(frozen=True)
class SentimentVector:
    """An 11-component sentiment score in canonical dimension order."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.shape != (len(DIMENSIONS),):
            raise ValueError(f"expected {len(DIMENSIONS)} components, got shape {arr.shape}")
        object.__setattr__(self, "values", arr)
        arr.flags.writeable = False

    def __getattr__(self, name):
        try:
            idx = DIMENSIONS.index(name)
        except ValueError:
            raise AttributeError(name) from None
        return float(self.values[idx])

    def __eq__(self, other):
        if not isinstance(other, SentimentVector):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    @classmethod
    def from_components(cls, **components: float) -> "SentimentVector":
        """Build a vector from named components; polarity is derived if omitted."""
        unknown = set(components) - set(DIMENSIONS)
        if unknown:
            raise ValueError(f"unknown components: {sorted(unknown)}")
        vals = np.zeros(len(DIMENSIONS))
        for name, value in components.items():
            vals[DIMENSIONS.index(name)] = value
        if "polarity" not in components:
            vals[POLARITY_INDEX] = vals[DIMENSIONS.index("positive")] - vals[
                DIMENSIONS.index("negative")
            ]
        return cls(vals)


def derive_polarity(positive: int, negative: int) -> int:
    """Overall sentiment score: positive minus negative, in {-1, 0, 1}."""
    return positive - negative


@dataclass
class SentimentLexicon:
    """Immutable lemma -> SentimentVector table with exact, case-sensitive keys."""

    entries: dict[str, SentimentVector] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.entries)

    def lookup(self, lemma: str) -> Optional[SentimentVector]:
        """Exact-match lookup; None when absent (caller decides OOV policy)."""
        return self.entries.get(lemma)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def lemmas_by_polarity(self, sign: int) -> list[str]:
        """All lemmas whose polarity has the given sign (-1, 0, or +1)."""
        return [
            lemma
            for lemma, vec in self.entries.items()
            if np.sign(vec.values[POLARITY_INDEX]) == sign
        ]


def _looks_like_header(cells: list[str]) -> bool:
    # A data row has binary dimension cells; anything else in the
    # dimension columns marks row 1 as a header.
    return any(cell not in ("0", "1") for cell in cells[1:])


def parse_lexicon(source: TextIO | str) -> SentimentLexicon:
    """Parse a TSV lexicon stream into a :class:`SentimentLexicon`.

    The header row is optional. When present, its cells are mapped onto the
    ten canonical dimensions (case-insensitive, a few aliases accepted), so
    exports with permuted columns parse correctly. Without a header the
    canonical file-column order is assumed.
    """
    if isinstance(source, str):
        source = io.StringIO(source)

    entries: dict[str, SentimentVector] = {}
    column_order = list(FILE_DIMENSIONS)
    expected_cols = 1 + len(FILE_DIMENSIONS)

    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line:
            continue
        cells = line.split("\t")
        if len(cells) != expected_cols:
            raise LexiconError(
                f"line {lineno}: expected {expected_cols} tab-separated columns, got {len(cells)}"
            )
        if lineno == 1 and _looks_like_header(cells):
            mapped = []
            for cell in cells[1:]:
                key = cell.strip().casefold()
                if key not in _HEADER_ALIASES:
                    raise LexiconError(f"line 1: unrecognized header column {cell!r}")
                mapped.append(_HEADER_ALIASES[key])
            if len(set(mapped)) != len(mapped):
                raise LexiconError("line 1: duplicate header columns")
            column_order = mapped
            continue

        lemma = unicodedata.normalize("NFC", cells[0])
        if lemma in entries:
            raise LexiconError(f"line {lineno}: duplicate lemma {lemma!r}")
        components = {}
        for name, cell in zip(column_order, cells[1:]):
            if cell not in ("0", "1"):
                raise LexiconError(
                    f"line {lineno}: non-binary value {cell!r} in column {name!r}"
                )
            components[name] = int(cell)
        entries[lemma] = SentimentVector.from_components(**components)

    return SentimentLexicon(entries)


def write_lexicon(lexicon: SentimentLexicon, stream: TextIO) -> None:
    """Canonical writer: header plus one row per lemma in insertion order."""
    stream.write("lemma\t" + "\t".join(FILE_DIMENSIONS) + "\n")
    for lemma, vec in lexicon.entries.items():
        cells = [lemma]
        for name in FILE_DIMENSIONS:
            cells.append(str(int(vec.values[DIMENSIONS.index(name)])))
        stream.write("\t".join(cells) + "\n")


def lexicon_to_text(lexicon: SentimentLexicon) -> str:
    buf = io.StringIO()
    write_lexicon(lexicon, buf)
    return buf.getvalue()


def load_lexicon_file(path) -> SentimentLexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh)

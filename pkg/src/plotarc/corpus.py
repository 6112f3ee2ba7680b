"""Corpus loading, tokenization, lemma mapping, and synthetic-corpus generation.

A corpus on disk is a directory of ``<id>.txt`` plain-text files plus a TSV
metadata table (``id  title  author  year  label``). Labels are the literal
strings ``happy`` / ``unhappy``. Lemmatization is a dictionary lookup with
identity fallback, so the pipeline stays deterministic and has no model
dependencies.
"""

from __future__ import annotations

import random
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from plotarc.lexicon import SentimentLexicon, parse_lexicon

LABEL_HAPPY = "happy"
LABEL_UNHAPPY = "unhappy"

METADATA_COLUMNS = ("id", "title", "author", "year", "label")


class CorpusError(ValueError):
    """Raised for malformed corpus input or invalid generator parameters."""


@dataclass(frozen=True)
class NovelMetadata:
    id: str
    title: str
    author: str
    year: int
    label: bool  # True = happy ending


@dataclass(frozen=True)
class Novel:
    metadata: NovelMetadata
    lemmas: tuple[str, ...]


@dataclass(frozen=True)
class Corpus:
    novels: tuple[Novel, ...]

    @property
    def total(self) -> int:
        return len(self.novels)

    @property
    def happy(self) -> int:
        return sum(1 for n in self.novels if n.metadata.label)

    @property
    def unhappy(self) -> int:
        return self.total - self.happy


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> list[str]:
    """Split on whitespace and strip leading/trailing punctuation per token."""
    tokens = []
    for raw in text.split():
        start, end = 0, len(raw)
        while start < end and _is_punct(raw[start]):
            start += 1
        while end > start and _is_punct(raw[end - 1]):
            end -= 1
        if end > start:
            tokens.append(raw[start:end])
    return tokens


def lemmatize(token: str, lemma_map: dict[str, str]) -> str:
    """Dictionary lookup with identity fallback for unmapped surface forms."""
    return lemma_map.get(token, token)


def load_lemma_map(path) -> dict[str, str]:
    """Read a ``surface<TAB>lemma`` TSV; duplicate surface forms are an error."""
    mapping: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            cells = line.split("\t")
            if len(cells) != 2:
                raise CorpusError(f"{path}: line {lineno}: expected 2 columns, got {len(cells)}")
            surface, lemma = cells
            if surface in mapping:
                raise CorpusError(f"{path}: line {lineno}: duplicate surface form {surface!r}")
            mapping[surface] = lemma
    return mapping


def _parse_label(cell: str, where: str) -> bool:
    if cell == LABEL_HAPPY:
        return True
    if cell == LABEL_UNHAPPY:
        return False
    raise CorpusError(f"{where}: label must be {LABEL_HAPPY!r} or {LABEL_UNHAPPY!r}, got {cell!r}")


def load_metadata(metadata_file) -> list[NovelMetadata]:
    rows: list[NovelMetadata] = []
    seen_ids: set[str] = set()
    with open(metadata_file, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").rstrip("\r").split("\t")
        if tuple(header) != METADATA_COLUMNS:
            raise CorpusError(
                f"{metadata_file}: header must be {list(METADATA_COLUMNS)}, got {header}"
            )
        for lineno, raw in enumerate(fh, start=2):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            cells = line.split("\t")
            if len(cells) != len(METADATA_COLUMNS):
                raise CorpusError(
                    f"{metadata_file}: row {lineno}: expected {len(METADATA_COLUMNS)} columns"
                )
            novel_id, title, author, year_cell, label_cell = cells
            if novel_id in seen_ids:
                raise CorpusError(f"{metadata_file}: row {lineno}: duplicate id {novel_id!r}")
            seen_ids.add(novel_id)
            try:
                year = int(year_cell)
            except ValueError:
                raise CorpusError(
                    f"{metadata_file}: row {lineno}: unparseable year {year_cell!r}"
                ) from None
            if year <= 0:
                raise CorpusError(f"{metadata_file}: row {lineno}: year must be positive")
            label = _parse_label(label_cell, f"{metadata_file}: row {lineno}")
            rows.append(NovelMetadata(novel_id, title, author, year, label))
    return rows


def load_corpus(text_dir, metadata_file, lemma_map: dict[str, str] | None = None) -> Corpus:
    """Load, tokenize, and lemmatize all novels listed in the metadata table."""
    text_dir = Path(text_dir)
    lemma_map = lemma_map or {}
    novels = []
    for meta in load_metadata(metadata_file):
        text_path = text_dir / f"{meta.id}.txt"
        if not text_path.is_file():
            raise CorpusError(f"missing text file for novel {meta.id!r}: {text_path}")
        text = text_path.read_text(encoding="utf-8")
        lemmas = tuple(lemmatize(tok, lemma_map) for tok in tokenize(text))
        if not lemmas:
            raise CorpusError(f"novel {meta.id!r} has no tokens")
        novels.append(Novel(meta, lemmas))
    return Corpus(tuple(novels))


# ---------------------------------------------------------------------------
# Synthetic corpora with a planted sentiment-signed ending region.
# ---------------------------------------------------------------------------

# Body regions mix lexicon-matched and filler tokens so that the
# featurizer's OOV policy is exercised at realistic sparsity.
_BODY_MATCH_RATE = 0.30
_ENDING_MATCH_RATE = 0.40
# Within the ending region's matched tokens, this share comes from the
# class-signed pool; the rest is drawn from the whole lexicon, which keeps
# single-segment averages noisy enough that very short final sections are
# not already perfectly separable.
_ENDING_SIGNAL_SHARE = 0.25

_N_SEGMENTS_PLANTED = 75


def _segment_bounds(n_tokens: int, n_segments: int) -> list[int]:
    # Equal split, remainder to the earliest segments (same rule as the
    # featurizer's segmenter).
    q, r = divmod(n_tokens, n_segments)
    bounds = [0]
    for i in range(n_segments):
        bounds.append(bounds[-1] + q + (1 if i < r else 0))
    return bounds


def generate_synthetic_corpus(
    seed: int,
    n_novels: int,
    tokens_per_novel: int,
    ending_len_segments: int,
    lexicon: SentimentLexicon,
) -> Corpus:
    """Deterministically generate a balanced corpus with a planted ending.

    Happy novels draw their ending-region sentiment tokens mostly from
    positive-polarity lexicon entries, unhappy ones from negative entries;
    body regions are a shared mix. The planted region covers the final
    ``ending_len_segments`` of the standard 75-segment split.
    """
    if n_novels % 2 != 0:
        raise CorpusError("n_novels must be even (classes are balanced by construction)")
    if tokens_per_novel < _N_SEGMENTS_PLANTED:
        raise CorpusError(f"tokens_per_novel must be >= {_N_SEGMENTS_PLANTED}")
    if not 1 <= ending_len_segments <= 10:
        raise CorpusError("ending_len_segments must be in [1, 10]")

    positives = sorted(lexicon.lemmas_by_polarity(+1))
    negatives = sorted(lexicon.lemmas_by_polarity(-1))
    all_lemmas = sorted(lexicon.entries)
    if not positives or not negatives:
        raise CorpusError("lexicon must contain at least one positive and one negative entry")

    rng = random.Random(seed)
    bounds = _segment_bounds(tokens_per_novel, _N_SEGMENTS_PLANTED)
    ending_start = bounds[_N_SEGMENTS_PLANTED - ending_len_segments]

    novels = []
    for i in range(n_novels):
        happy = i % 2 == 0
        signed_pool = positives if happy else negatives
        tokens = []
        for pos in range(tokens_per_novel):
            if pos < ending_start:
                if rng.random() < _BODY_MATCH_RATE:
                    tokens.append(rng.choice(all_lemmas))
                else:
                    tokens.append(f"filler{rng.randrange(5000)}")
            else:
                if rng.random() < _ENDING_MATCH_RATE:
                    if rng.random() < _ENDING_SIGNAL_SHARE:
                        tokens.append(rng.choice(signed_pool))
                    else:
                        tokens.append(rng.choice(all_lemmas))
                else:
                    tokens.append(f"filler{rng.randrange(5000)}")
        meta = NovelMetadata(
            id=f"synth-{i:04d}",
            title=f"Synthetic Novel {i}",
            author="Generator",
            year=1790 + (i * 13) % 120,
            label=happy,
        )
        novels.append(Novel(meta, tuple(tokens)))
    return Corpus(tuple(novels))


def write_corpus(corpus: Corpus, out_dir) -> None:
    """Write texts and metadata TSV in the on-disk corpus format."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = ["\t".join(METADATA_COLUMNS)]
    for novel in corpus.novels:
        meta = novel.metadata
        (out_dir / f"{meta.id}.txt").write_text(" ".join(novel.lemmas) + "\n", encoding="utf-8")
        label = LABEL_HAPPY if meta.label else LABEL_UNHAPPY
        lines.append("\t".join([meta.id, meta.title, meta.author, str(meta.year), label]))
    (out_dir / "metadata.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


_DEMO_ROWS = """\
wunderbar\t0\t0\t0\t0\t1\t0\t1\t0\t0\t1
herrlich\t0\t1\t0\t0\t1\t0\t1\t0\t0\t0
gluecklich\t0\t1\t0\t0\t1\t0\t1\t0\t0\t1
freude\t0\t1\t0\t0\t1\t0\t1\t0\t1\t0
liebe\t0\t0\t0\t0\t1\t0\t1\t0\t0\t1
hoffnung\t0\t1\t0\t0\t1\t0\t1\t0\t0\t1
friede\t0\t1\t0\t0\t1\t0\t1\t0\t0\t1
segen\t0\t1\t0\t0\t1\t0\t1\t0\t0\t1
jubel\t0\t1\t0\t0\t1\t0\t1\t1\t1\t0
heiter\t0\t0\t0\t0\t1\t0\t1\t0\t0\t0
schrecklich\t1\t0\t1\t1\t0\t1\t0\t1\t0\t0
furchtbar\t1\t0\t0\t1\t0\t1\t0\t1\t1\t0
elend\t0\t0\t1\t0\t0\t1\t0\t1\t0\t0
tod\t1\t0\t0\t1\t0\t1\t0\t1\t1\t0
verzweiflung\t1\t0\t0\t1\t0\t1\t0\t1\t0\t0
trauer\t0\t0\t0\t0\t0\t1\t0\t1\t0\t0
qual\t1\t0\t0\t1\t0\t1\t0\t1\t0\t0
finster\t0\t0\t0\t1\t0\t1\t0\t1\t0\t0
grauen\t1\t0\t1\t1\t0\t1\t0\t0\t1\t0
bitter\t1\t0\t1\t0\t0\t1\t0\t1\t0\t0
zufall\t0\t0\t0\t0\t0\t0\t0\t0\t1\t0
plötzlich\t0\t1\t0\t0\t0\t0\t0\t0\t1\t0
erwartung\t0\t1\t0\t0\t0\t0\t0\t0\t0\t1
"""


def demo_lexicon() -> SentimentLexicon:
    """Small built-in lexicon (canonical column order, no header) used by
    the synthetic-corpus generator and the examples."""
    return parse_lexicon(_DEMO_ROWS)

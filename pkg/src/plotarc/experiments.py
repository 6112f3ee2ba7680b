"""The three experiment drivers plus baselines and report serialization.

Every run records its full configuration and input checksums alongside the
results so a report can be re-run bit-identically. Within one ladder or
sweep run all rows/points share the same fold assignment, making the
numbers directly comparable.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from plotarc._version import __version__ as _pkg_version
from plotarc.corpus import Corpus
from plotarc.features import (
    FEATURE_SET_DIMS,
    SectionPartition,
    SegmentProfile,
    build_features,
    compute_profiles,
)
from plotarc.lexicon import SentimentLexicon, lexicon_to_text
from plotarc.svm import cross_validate


@dataclass(frozen=True)
class ClassifierConfig:
    folds: int = 10
    seed: int = 42
    C: float = 1.0
    epochs: int = 200


@dataclass(frozen=True)
class RunInputs:
    """Profiles plus labels, the common starting point of every experiment."""

    profiles: tuple[SegmentProfile, ...]
    labels: np.ndarray  # +1 happy, -1 unhappy
    n_segments: int


def prepare_inputs(
    corpus: Corpus, lexicon: SentimentLexicon, n_segments: int = 75, denominator: str = "matched"
) -> RunInputs:
    profiles = tuple(compute_profiles(corpus, lexicon, n_segments, denominator))
    labels = np.array([1 if n.metadata.label else -1 for n in corpus.novels])
    labels.flags.writeable = False
    return RunInputs(profiles, labels, n_segments)


def feature_matrix(
    inputs: RunInputs, partition: SectionPartition, feature_set_id: int
) -> np.ndarray:
    rows = []
    for profile, label in zip(inputs.profiles, inputs.labels):
        fv = build_features(profile, partition, feature_set_id, label == 1)
        rows.append(fv.values)
    return np.array(rows)


# ---------------------------------------------------------------------------
# Feature ladder
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LadderReport:
    rows: tuple[tuple[int, float, float], ...]  # (feature_set_id, f1, accuracy)
    config: dict
    fold_assignment: tuple[int, ...]


def run_feature_ladder(
    inputs: RunInputs,
    partition: SectionPartition,
    config: ClassifierConfig = ClassifierConfig(),
    feature_sets=tuple(FEATURE_SET_DIMS),
) -> LadderReport:
    """Cross-validated F1/accuracy for each feature set under shared folds."""
    rows = []
    fold_assignment = None
    for fsid in feature_sets:
        X = feature_matrix(inputs, partition, fsid)
        metrics = cross_validate(
            X, inputs.labels, folds=config.folds, seed=config.seed, C=config.C, epochs=config.epochs
        )
        if fold_assignment is None:
            fold_assignment = metrics.fold_assignment
        elif metrics.fold_assignment != fold_assignment:
            raise RuntimeError("fold assignment drifted between ladder rows")
        rows.append((fsid, metrics.f1, metrics.accuracy))
    return LadderReport(
        rows=tuple(rows),
        config={
            "n_segments": partition.n_segments,
            "final_len": partition.final_len,
            "late_len": partition.late_len,
            **_config_dict(config),
        },
        fold_assignment=fold_assignment or (),
    )


# ---------------------------------------------------------------------------
# Partition sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    main_fraction: float
    final_len: int
    f1: float


@dataclass(frozen=True)
class SweepCurve:
    points: tuple[SweepPoint, ...]
    baseline: float
    config: dict = field(default_factory=dict)

    @property
    def argmax_point(self) -> SweepPoint | None:
        """Point with maximal F1; ties resolve to the larger main fraction."""
        if not self.points:
            return None
        return max(self.points, key=lambda p: (p.f1, p.main_fraction))


def default_fractions(n_segments: int = 75) -> list[float]:
    """One sweep point per whole segment, final_len from n_segments//2 down to 1."""
    return [
        (n_segments - final_len) / n_segments
        for final_len in range(n_segments // 2, 0, -1)
    ]


def fraction_to_final_len(fraction: float, n_segments: int) -> int:
    final_len = n_segments - round(fraction * n_segments)
    if final_len < 1:
        raise ValueError(f"main fraction {fraction} leaves no final segment")
    return final_len


def _sweep_point(args) -> SweepPoint:
    inputs, fraction, feature_set_id, config = args
    final_len = fraction_to_final_len(fraction, inputs.n_segments)
    # One degree of freedom per point: the late-main section mirrors the
    # final section whenever the feature set consumes it.
    late_len = final_len if feature_set_id in (5, 6) else 0
    partition = SectionPartition(inputs.n_segments, final_len, late_len)
    X = feature_matrix(inputs, partition, feature_set_id)
    metrics = cross_validate(
        X, inputs.labels, folds=config.folds, seed=config.seed, C=config.C, epochs=config.epochs
    )
    return SweepPoint(fraction, final_len, metrics.f1)


def run_partition_sweep(
    inputs: RunInputs,
    fractions=None,
    feature_set_id: int = 3,
    config: ClassifierConfig = ClassifierConfig(),
    jobs: int = 1,
) -> SweepCurve:
    """One cross-validated F1 per main-section fraction, shared folds throughout."""
    if fractions is None:
        fractions = default_fractions(inputs.n_segments)
    fractions = sorted(fractions)
    tasks = [(inputs, f, feature_set_id, config) for f in fractions]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            points = tuple(pool.map(_sweep_point, tasks))
    else:
        points = tuple(_sweep_point(t) for t in tasks)
    return SweepCurve(
        points=points,
        baseline=0.5,
        config={
            "n_segments": inputs.n_segments,
            "feature_set": feature_set_id,
            **_config_dict(config),
        },
    )


# ---------------------------------------------------------------------------
# Publication-period analysis
# ---------------------------------------------------------------------------

DEFAULT_PERIOD_BOUNDARIES = (1830, 1848, 1870)


@dataclass(frozen=True)
class PeriodGroup:
    label: str
    year_range: tuple[int | None, int | None]  # inclusive bounds, None = open
    novel_count: int
    happy_count: int
    curve: SweepCurve | None  # None when the group was skipped
    skipped: bool


@dataclass(frozen=True)
class PeriodReport:
    groups: tuple[PeriodGroup, ...]
    boundaries: tuple[int, ...]
    config: dict


def period_labels(boundaries) -> list[tuple[str, tuple[int | None, int | None]]]:
    """Group labels and inclusive year ranges from sorted cut points.

    A boundary year belongs to the earlier group, so cuts (1830, 1848, 1870)
    give: <=1830, 1831-1848, 1849-1870, >=1871.
    """
    boundaries = sorted(boundaries)
    out = []
    lo: int | None = None
    for b in boundaries:
        label = f"<={b}" if lo is None else f"{lo}-{b}"
        out.append((label, (lo, b)))
        lo = b + 1
    out.append((f">={lo}", (lo, None)))
    return out


def group_indices(corpus: Corpus, boundaries) -> list[list[int]]:
    labels = period_labels(boundaries)
    groups: list[list[int]] = [[] for _ in labels]
    for i, novel in enumerate(corpus.novels):
        year = novel.metadata.year
        for g, (_, (lo, hi)) in enumerate(labels):
            if (lo is None or year >= lo) and (hi is None or year <= hi):
                groups[g].append(i)
                break
    return groups


def run_period_analysis(
    corpus: Corpus,
    inputs: RunInputs,
    boundaries=DEFAULT_PERIOD_BOUNDARIES,
    feature_set_id: int = 3,
    fractions=None,
    config: ClassifierConfig = ClassifierConfig(),
    jobs: int = 1,
) -> PeriodReport:
    """Per-period partition sweep; undersized groups are flagged, not fatal.

    A group needs at least ``2 * folds`` novels (each class at least
    ``folds``) to be swept.
    """
    labels_ranges = period_labels(boundaries)
    groups = []
    for (label, year_range), idx in zip(labels_ranges, group_indices(corpus, boundaries)):
        sub_labels = inputs.labels[idx]
        n_happy = int(np.sum(sub_labels == 1))
        n_unhappy = len(idx) - n_happy
        if len(idx) < 2 * config.folds or min(n_happy, n_unhappy) < config.folds:
            groups.append(PeriodGroup(label, year_range, len(idx), n_happy, None, True))
            continue
        sub_inputs = RunInputs(
            profiles=tuple(inputs.profiles[i] for i in idx),
            labels=sub_labels,
            n_segments=inputs.n_segments,
        )
        curve = run_partition_sweep(sub_inputs, fractions, feature_set_id, config, jobs)
        groups.append(PeriodGroup(label, year_range, len(idx), n_happy, curve, False))
    return PeriodReport(
        groups=tuple(groups),
        boundaries=tuple(sorted(boundaries)),
        config={"feature_set": feature_set_id, **_config_dict(config)},
    )


# ---------------------------------------------------------------------------
# Baselines
# ---------------------------------------------------------------------------


def run_baselines(corpus: Corpus) -> tuple[float, float]:
    """(random-guess expected accuracy, majority-vote accuracy).

    The random expectation is the analytic 0.5 of a fair coin; majority
    accuracy is the larger class share.
    """
    if corpus.total == 0:
        raise ValueError("empty corpus")
    majority = max(corpus.happy, corpus.unhappy) / corpus.total
    return 0.5, majority


# ---------------------------------------------------------------------------
# Report serialization (CSV + meta sidecar)
# ---------------------------------------------------------------------------


def _config_dict(config: ClassifierConfig) -> dict:
    return {"folds": config.folds, "seed": config.seed, "C": config.C, "epochs": config.epochs}


def lexicon_checksum(lexicon: SentimentLexicon) -> str:
    return hashlib.sha256(lexicon_to_text(lexicon).encode("utf-8")).hexdigest()


def corpus_checksum(corpus: Corpus) -> str:
    h = hashlib.sha256()
    for novel in corpus.novels:
        m = novel.metadata
        h.update(
            f"{m.id}\t{m.title}\t{m.author}\t{m.year}\t{int(m.label)}\n".encode("utf-8")
        )
        h.update(" ".join(novel.lemmas).encode("utf-8"))
        h.update(b"\n")
    return h.hexdigest()


def ladder_csv(report: LadderReport) -> str:
    lines = ["feature_set,f1,accuracy"]
    for fsid, f1, acc in report.rows:
        lines.append(f"{fsid},{f1:.6f},{acc:.6f}")
    return "\n".join(lines) + "\n"


def sweep_csv(curve: SweepCurve) -> str:
    lines = ["main_fraction,final_len,f1"]
    for p in curve.points:
        lines.append(f"{p.main_fraction:.6f},{p.final_len},{p.f1:.6f}")
    return "\n".join(lines) + "\n"


def periods_csv(report: PeriodReport) -> str:
    lines = ["period,main_fraction,final_len,f1,n_novels"]
    for group in report.groups:
        if group.skipped:
            lines.append(f"{group.label},skipped,skipped,skipped,{group.novel_count}")
            continue
        for p in group.curve.points:
            lines.append(
                f"{group.label},{p.main_fraction:.6f},{p.final_len},{p.f1:.6f},{group.novel_count}"
            )
    return "\n".join(lines) + "\n"


def meta_text(config: dict, corpus: Corpus, lexicon: SentimentLexicon, extra: dict | None = None) -> str:
    """Sidecar capturing everything needed to re-run a report bit-identically."""
    fields = {
        "plotarc_version": _pkg_version,
        **config,
        "corpus_checksum": corpus_checksum(corpus),
        "corpus_novels": corpus.total,
        "lexicon_checksum": lexicon_checksum(lexicon),
        "lexicon_entries": lexicon.size,
    }
    if extra:
        fields.update(extra)
    return "".join(f"{k} = {v}\n" for k, v in fields.items())

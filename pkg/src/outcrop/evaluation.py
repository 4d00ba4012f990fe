"""Evaluation harness: per-image match records and the three-way accuracy summary.

Predictions are binary (score above or below the threshold); human truth is
three-way: Novel, Similar, or Different ("different" meaning the best-matched
pair shows unrelated units even though the score was not low). The summary is
a 2x3 count matrix with one accuracy figure per truth column plus an overall
figure.

The first image of a corpus seeds the library and is excluded from the
confusion counts (it still appears in the per-record report with score 0).
"""

import csv
import enum
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .compressor import CompressionProfile
from .errors import IoFailure, LengthMismatch, ManifestVersionMismatch
from .imagecore import ImageBuffer
from .library import Session
from .similarity import SIMILAR, NoveltyThreshold

CORPUS_VERSION = 1

PREDICTED_SIMILAR = "similar"
PREDICTED_BELOW = "novel-or-different"


class TruthLabel(str, enum.Enum):
    NOVEL = "novel"
    SIMILAR = "similar"
    DIFFERENT = "different"


_COLUMNS = (TruthLabel.NOVEL, TruthLabel.SIMILAR, TruthLabel.DIFFERENT)


@dataclass
class EvalRecord:
    incoming_id: int
    matched_id: int | None
    score: float
    predicted: str  # PREDICTED_SIMILAR or PREDICTED_BELOW
    truth: TruthLabel | None
    note: str = ""


@dataclass(frozen=True)
class Ratio:
    numerator: int
    denominator: int

    @property
    def percent(self) -> int:
        # round half away from zero, matching how the reported figures round
        scaled = 100 * self.numerator / self.denominator
        return int(scaled + 0.5) if scaled >= 0 else -int(-scaled + 0.5)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator} = {self.percent}%"


@dataclass
class ConfusionSummary:
    # counts[row][col]: row 0 = predicted below threshold, row 1 = predicted similar;
    # columns are truth Novel, Similar, Different
    counts: list[list[int]]
    novelty_acc: Ratio | None
    similarity_acc: Ratio | None
    difference_acc: Ratio | None
    overall_acc: Ratio | None


def summarize(counts: list[list[int]]) -> ConfusionSummary:
    """Accuracy figures from a 2x3 count matrix.

    Novelty and difference are detected by a below-threshold score, similarity
    by an above-threshold one. A truth column with no examples yields an
    undefined accuracy (None), never 0.
    """
    if len(counts) != 2 or any(len(row) != 3 for row in counts):
        raise ValueError("counts must be a 2x3 matrix")
    if any(c < 0 for row in counts for c in row):
        raise ValueError("counts must be non-negative")
    below, above = counts
    col_sums = [below[i] + above[i] for i in range(3)]

    def ratio(num: int, den: int) -> Ratio | None:
        return Ratio(num, den) if den > 0 else None

    total = sum(col_sums)
    hits = below[0] + above[1] + below[2]
    return ConfusionSummary(
        counts=[list(below), list(above)],
        novelty_acc=ratio(below[0], col_sums[0]),
        similarity_acc=ratio(above[1], col_sums[1]),
        difference_acc=ratio(below[2], col_sums[2]),
        overall_acc=ratio(hits, total),
    )


def run_corpus(
    images: list[ImageBuffer],
    truths: list[TruthLabel | None],
    profile: CompressionProfile | None = None,
    threshold: NoveltyThreshold | None = None,
) -> tuple[list[EvalRecord], ConfusionSummary]:
    """Fresh session, sequential ingest, one record per image, then the summary.

    ``truths`` may cover all images or all but the first (the unscored seed);
    anything else is a LengthMismatch. Unlabeled records stay out of the counts.
    """
    if len(truths) == len(images) - 1:
        truths = [None] + list(truths)
    elif len(truths) != len(images):
        raise LengthMismatch(
            f"{len(images)} images but {len(truths)} truth labels"
        )
    session = Session(profile=profile, threshold=threshold)
    records: list[EvalRecord] = []
    counts = [[0, 0, 0], [0, 0, 0]]
    for i, (img, truth) in enumerate(zip(images, truths)):
        result = session.ingest(img, name=f"corpus[{i}]")
        predicted = (
            PREDICTED_SIMILAR if result.verdict.kind == SIMILAR else PREDICTED_BELOW
        )
        records.append(
            EvalRecord(
                incoming_id=session.entries[-1].id,
                matched_id=result.verdict.best_match,
                score=result.verdict.score,
                predicted=predicted,
                truth=truth,
            )
        )
        if i == 0 or truth is None:
            continue  # seed image and unlabeled images are reported, not counted
        row = 1 if predicted == PREDICTED_SIMILAR else 0
        counts[row][_COLUMNS.index(truth)] += 1
    return records, summarize(counts)


def accuracy_lines(summary: ConfusionSummary) -> list[str]:
    """The four human-readable accuracy strings."""

    def fmt(label: str, ratio: Ratio | None) -> str:
        body = str(ratio) if ratio is not None else "undefined (no examples)"
        return f"{label}: {body}"

    return [
        fmt("Accuracy of Novelty detection", summary.novelty_acc),
        fmt("Accuracy of Similarity detection", summary.similarity_acc),
        fmt("Accuracy of Difference detection", summary.difference_acc),
        fmt("Overall accuracy", summary.overall_acc),
    ]


def _record_row(r: EvalRecord) -> dict:
    return {
        "incoming_id": r.incoming_id,
        "matched_id": r.matched_id,
        "score": f"{r.score:.4f}",
        "predicted": r.predicted,
        "truth": r.truth.value if r.truth else None,
        "note": r.note,
    }


def render_report(
    records: list[EvalRecord],
    summary: ConfusionSummary | None,
    fmt: str = "text",
) -> str:
    """Render records plus summary as text, json, or csv (stable column order)."""
    rows = [_record_row(r) for r in records]
    if fmt == "json":
        doc = {"records": rows}
        if summary is not None:
            doc["summary"] = {
                "counts": summary.counts,
                "accuracies": {
                    name: (
                        {"numerator": acc.numerator, "denominator": acc.denominator,
                         "percent": acc.percent}
                        if acc is not None else None
                    )
                    for name, acc in (
                        ("novelty", summary.novelty_acc),
                        ("similarity", summary.similarity_acc),
                        ("difference", summary.difference_acc),
                        ("overall", summary.overall_acc),
                    )
                },
            }
        return json.dumps(doc, indent=2)
    header = ["incoming_id", "matched_id", "score", "predicted", "truth", "note"]
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        return out.getvalue()
    if fmt in ("text", "tsv"):
        lines = ["\t".join(header)]
        for row in rows:
            lines.append("\t".join("-" if row[k] is None else str(row[k]) for k in header))
        if fmt == "text" and summary is not None:
            lines.append("")
            lines.extend(accuracy_lines(summary))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def read_corpus_manifest(path: str | Path) -> list[dict]:
    """Load a corpus manifest: ordered image paths with optional truth/label.

    Returns records with absolute ``path`` plus ``truth`` (TruthLabel or None)
    and ``label``.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise IoFailure(f"failed to read corpus manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IoFailure(f"corpus manifest {path} is not valid JSON: {exc}") from exc
    if doc.get("version") != CORPUS_VERSION:
        raise ManifestVersionMismatch(
            f"corpus version {doc.get('version')!r}, expected {CORPUS_VERSION}"
        )
    records = []
    for rec in doc.get("images", []):
        truth = TruthLabel(rec["truth"]) if rec.get("truth") else None
        records.append(
            {
                "path": path.parent / rec["path"],
                "truth": truth,
                "label": rec.get("label"),
            }
        )
    return records

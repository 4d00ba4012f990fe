"""Incremental image library: start empty, score each arrival against history.

Every incoming image is compared (via the compression similarity) to every
stored entry; the best-scoring prior image decides the verdict. The entry's
own compressed size is cached at ingest, so each comparison costs exactly one
joint serialization plus one joint compression.
"""

import datetime
import hashlib
import json
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from . import compressor, imagecore, similarity
from .compressor import CompressionProfile
from .errors import (
    DegenerateImage,
    DimsMismatch,
    EmptySession,
    IoFailure,
    ManifestVersionMismatch,
)
from .imagecore import ImageBuffer, JointImage
from .similarity import NOVEL, SIMILAR, NoveltyThreshold, Verdict

MANIFEST_VERSION = 1


def _round_score(score: float) -> float:
    # Scores are fixed to 4 fractional digits the moment they are computed,
    # so classification, reports, and the manifest all agree.
    return round(score, 4)


@dataclass
class LibraryEntry:
    id: int
    source_name: str
    sha256: str
    dims: tuple[int, int]
    cached_size: int  # compressed size of the serialized pixels
    verdict: Verdict
    label: str | None = None
    added_at: str = ""  # informational only; not persisted
    image: ImageBuffer = field(repr=False, default=None)


@dataclass(frozen=True)
class IngestResult:
    verdict: Verdict
    best: tuple[int, float] | None  # (entry id, score); None for the first image
    joint: JointImage | None  # incoming left, best match right


class Session:
    """One incremental library with a fixed compression profile and threshold.

    Ingest order matters: novelty is judged against what came before, so
    permuting the input sequence may change verdicts.
    """

    def __init__(
        self,
        profile: CompressionProfile | None = None,
        threshold: NoveltyThreshold | None = None,
        session_id: str | None = None,
        canonical_dims: tuple[int, int] | None = None,
    ):
        self.id = session_id or uuid.uuid4().hex
        self.profile = profile or CompressionProfile()
        self.threshold = threshold or NoveltyThreshold()
        self.canonical_dims = canonical_dims
        self.entries: list[LibraryEntry] = []

    def ingest(self, img: ImageBuffer, name: str = "") -> IngestResult:
        """Score ``img`` against every prior entry and append it with its verdict.

        The first image sets the canonical dimensions and is Novel with score
        0 by construction. Later images must already match those dimensions.
        A best match (and its joint image) is reported even when the verdict
        is Novel, so the operator can inspect what the library offered.
        """
        if self.canonical_dims is None:
            self.canonical_dims = img.dims
        elif img.dims != self.canonical_dims:
            raise DimsMismatch(
                f"image is {img.dims}, session canon is {self.canonical_dims}"
            )

        stream = imagecore.serialize(img)
        own_size = compressor.compressed_size(stream, self.profile).compressed_len
        baseline = similarity.self_baseline(img, self.profile)

        best_id: int | None = None
        best_score = -1.0
        for entry in self.entries:  # ascending id; strict '>' keeps the lowest-id tie
            joint = imagecore.juxtapose(img, entry.image)
            joint_size = compressor.compressed_size(
                imagecore.serialize(joint), self.profile
            ).compressed_len
            raw = own_size + entry.cached_size - joint_size
            score = _round_score(similarity.normalize(raw, baseline))
            if score > best_score:
                best_score = score
                best_id = entry.id

        if best_id is None:
            verdict = Verdict(kind=NOVEL, best_match=None, score=0.0)
            best = None
            best_joint = None
        else:
            kind = similarity.classify(best_score, self.threshold)
            verdict = Verdict(kind=kind, best_match=best_id, score=best_score)
            best = (best_id, best_score)
            best_joint = imagecore.juxtapose(img, self.entries[best_id].image)

        self.entries.append(
            LibraryEntry(
                id=len(self.entries),
                source_name=name,
                sha256=hashlib.sha256(stream).hexdigest(),
                dims=img.dims,
                cached_size=own_size,
                verdict=verdict,
                added_at=datetime.datetime.now(datetime.timezone.utc).isoformat(),
                image=img,
            )
        )
        return IngestResult(verdict=verdict, best=best, joint=best_joint)

    def best_match(self, img: ImageBuffer) -> list[tuple[int, float]]:
        """Full ranking of stored entries by score, descending; ties by ascending id."""
        if not self.entries:
            raise EmptySession("no entries to match against")
        if self.canonical_dims and img.dims != self.canonical_dims:
            raise DimsMismatch(
                f"image is {img.dims}, session canon is {self.canonical_dims}"
            )
        stream = imagecore.serialize(img)
        own_size = compressor.compressed_size(stream, self.profile).compressed_len
        baseline = similarity.self_baseline(img, self.profile)
        scored = []
        for entry in self.entries:
            joint = imagecore.juxtapose(img, entry.image)
            joint_size = compressor.compressed_size(
                imagecore.serialize(joint), self.profile
            ).compressed_len
            raw = own_size + entry.cached_size - joint_size
            scored.append((entry.id, _round_score(similarity.normalize(raw, baseline))))
        return sorted(scored, key=lambda t: (-t[1], t[0]))

    def manifest(self) -> dict:
        return {
            "version": MANIFEST_VERSION,
            "session_id": self.id,
            "profile": {"level": self.profile.level, "container": self.profile.container},
            "threshold": self.threshold.value,
            "canonical_dims": list(self.canonical_dims) if self.canonical_dims else None,
            "entries": [
                {
                    "id": e.id,
                    "name": e.source_name,
                    "sha256": e.sha256,
                    "size": e.cached_size,
                    "verdict": e.verdict.kind,
                    "score": _round_score(e.verdict.score),
                    "best_match_id": e.verdict.best_match,
                    "label": e.label,
                }
                for e in self.entries
            ],
        }

    def save(self, path: str | Path) -> None:
        """Write manifest.json plus images/NNNN.png under ``path``."""
        path = Path(path)
        try:
            (path / "images").mkdir(parents=True, exist_ok=True)
            for e in self.entries:
                (path / "images" / f"{e.id:04d}.png").write_bytes(
                    imagecore.encode_png(e.image)
                )
            (path / "manifest.json").write_text(
                json.dumps(self.manifest(), indent=2) + "\n"
            )
        except OSError as exc:
            raise IoFailure(f"failed to save session to {path}: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> "Session":
        path = Path(path)
        try:
            manifest = json.loads((path / "manifest.json").read_text())
        except OSError as exc:
            raise IoFailure(f"failed to read {path / 'manifest.json'}: {exc}") from exc
        if manifest.get("version") != MANIFEST_VERSION:
            raise ManifestVersionMismatch(
                f"manifest version {manifest.get('version')!r}, expected {MANIFEST_VERSION}"
            )
        prof = manifest["profile"]
        session = cls(
            profile=CompressionProfile(level=prof["level"], container=prof["container"]),
            threshold=NoveltyThreshold(manifest["threshold"]),
            session_id=manifest["session_id"],
            canonical_dims=tuple(manifest["canonical_dims"])
            if manifest["canonical_dims"]
            else None,
        )
        for rec in manifest["entries"]:
            img_path = path / "images" / f"{rec['id']:04d}.png"
            if not img_path.exists():
                raise IoFailure(f"missing image file: {img_path}")
            img = imagecore.decode(img_path.read_bytes())
            session.entries.append(
                LibraryEntry(
                    id=rec["id"],
                    source_name=rec["name"],
                    sha256=rec["sha256"],
                    dims=img.dims,
                    cached_size=rec["size"],
                    verdict=Verdict(
                        kind=rec["verdict"],
                        best_match=rec["best_match_id"],
                        score=rec["score"],
                    ),
                    label=rec.get("label"),
                    image=img,
                )
            )
        return session


def create_session(
    profile: CompressionProfile | None = None,
    threshold: NoveltyThreshold | None = None,
) -> Session:
    return Session(profile=profile, threshold=threshold)

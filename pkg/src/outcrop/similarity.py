"""Raw compression similarity, log-normalized scoring, and threshold verdicts.

The raw similarity of two images is

    raw = size(a) + size(b) - size(a joined with b)

in compressed bytes: the byte count the joint compression saves by seeing
both images in one window. Shared texture makes the joint stream cheaper, so
larger raw means more similar. Scores are normalized against the newest
image's self-comparison, which is pinned to 100%.
"""

import math
from dataclasses import dataclass

from . import compressor, imagecore
from .compressor import CompressionProfile
from .errors import DegenerateImage
from .imagecore import ImageBuffer

NOVEL = "novel"
SIMILAR = "similar"


@dataclass(frozen=True)
class SimilarityResult:
    raw: int  # signed bytes; may be <= 0 for tiny images
    score: float  # percent in [0, 100]
    baseline: int  # self-comparison raw of the incoming image


@dataclass(frozen=True)
class NoveltyThreshold:
    value: float = 40.0

    def __post_init__(self):
        if not 0 < self.value < 100:
            raise ValueError(f"threshold must be in (0, 100), got {self.value}")


@dataclass(frozen=True)
class Verdict:
    kind: str  # NOVEL or SIMILAR
    best_match: int | None  # entry id; reported even for novel verdicts
    score: float


def d_sim_raw(
    a: ImageBuffer, b: ImageBuffer, profile: CompressionProfile | None = None
) -> int:
    """size(a) + size(b) - size(joint). Not symmetric: a is the left half."""
    sa = compressor.compressed_size(imagecore.serialize(a), profile).compressed_len
    sb = compressor.compressed_size(imagecore.serialize(b), profile).compressed_len
    joint = imagecore.juxtapose(a, b)
    sj = compressor.compressed_size(imagecore.serialize(joint), profile).compressed_len
    return sa + sb - sj


def self_baseline(img: ImageBuffer, profile: CompressionProfile | None = None) -> int:
    """Raw self-similarity, the 100% anchor of the normalized score.

    The seam between the two identical halves keeps this below size(img).
    A clamped value of <= 1 cannot anchor a score; sub-16-pixel images are
    rejected outright, since at that size the baseline reflects the codec's
    minimal block overhead rather than any texture content.
    """
    if img.width * img.height < 16:
        raise DegenerateImage(
            f"{img.width}x{img.height} image too small for a meaningful baseline"
        )
    raw = d_sim_raw(img, img, profile)
    clamped = max(raw, 1)
    if clamped <= 1:
        raise DegenerateImage(
            f"self-similarity baseline {raw} too small for a {img.width}x{img.height} image"
        )
    return clamped


def normalize(raw: int, baseline: int) -> float:
    """Log-ratio score: 100 * ln(max(raw, 1)) / ln(baseline), clamped to [0, 100].

    raw <= 1 maps to 0%, raw = baseline maps to 100% exactly, and the result
    is finite for every integer raw and baseline > 1.
    """
    if baseline <= 1:
        raise DegenerateImage(f"baseline must exceed 1, got {baseline}")
    clamped = max(raw, 1)
    if clamped >= baseline:
        return 100.0  # exact, not ln(x)/ln(x) rounding noise
    return max(0.0, 100.0 * math.log(clamped) / math.log(baseline))


def classify(score: float, threshold: NoveltyThreshold | None = None) -> str:
    """SIMILAR iff score >= threshold; equality counts as similar."""
    if threshold is None:
        threshold = NoveltyThreshold()
    return SIMILAR if score >= threshold.value else NOVEL


def compare(
    a: ImageBuffer, b: ImageBuffer, profile: CompressionProfile | None = None
) -> SimilarityResult:
    """One-shot comparison; ``a`` plays the incoming image and sets the baseline."""
    baseline = self_baseline(a, profile)
    raw = d_sim_raw(a, b, profile)
    return SimilarityResult(raw=raw, score=normalize(raw, baseline), baseline=baseline)

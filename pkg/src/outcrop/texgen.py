"""Deterministic synthetic texture corpora with ground-truth labels.

Four families (stripes, checker, nodules, noise) stand in for distinct rock
units. All randomness comes from a splitmix64 counter stream so corpora are
bit-identical across platforms and languages:

    value(seed, i) = mix(seed + (i + 1) * 0x9E3779B97F4A7C15)
    mix(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
            z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31

Seed layout: the upper 32 bits select the structural pattern (and the jitter
eligibility mask), the full 64 bits seed the per-variant jitter stream. The
corpus generator gives all variants of one family the same upper half, so
same-family images share exact pixel runs outside the jittered subset --
the analogue of photographing the same rock face twice. Jitter is drawn
per pixel and channel from the three levels {-jitter, 0, +jitter} and
applied on the pixels the shared mask selects (one in two); the coarse
level set keeps jittered regions compressible, mimicking sensor noise
without turning them into incompressible static.
"""

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import imagecore
from .evaluation import TruthLabel
from .imagecore import ImageBuffer

FAMILIES = ("stripes", "checker", "nodules", "noise")

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

DEFAULT_MASTER_SEED = 0x00C0FFEE


@dataclass(frozen=True)
class TextureSpec:
    family: str
    base_color: tuple[int, int, int]
    jitter: int = 0  # per-channel max deviation
    period: int = 4  # pixels
    seed: int = 0  # 64-bit; upper 32 bits pick the pattern, full seed the jitter
    dims: tuple[int, int] = (128, 128)  # (w, h)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not 0 <= self.jitter <= 64:
            raise ValueError(f"jitter must be in 0..64, got {self.jitter}")
        if self.period < 2:
            raise ValueError(f"period must be >= 2, got {self.period}")
        if self.dims[0] < 1 or self.dims[1] < 1:
            raise ValueError(f"dims must be >= 1, got {self.dims}")


def _stream(seed: int, n: int) -> np.ndarray:
    """n splitmix64 values for counter indices 1..n."""
    with np.errstate(over="ignore"):
        z = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + np.arange(1, n + 1, dtype=np.uint64) * _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def _complement(color: np.ndarray) -> np.ndarray:
    return (255 - color).astype(np.uint8)


def _pattern(spec: TextureSpec, pattern_seed: int) -> np.ndarray:
    w, h = spec.dims
    base = np.array(spec.base_color, dtype=np.uint8)
    comp = _complement(base)
    img = np.zeros((h, w, 3), dtype=np.uint8)
    if spec.family == "stripes":
        bands = (np.arange(w) // spec.period) % 2
        img[:, bands == 0] = base
        img[:, bands == 1] = comp
    elif spec.family == "checker":
        cells = ((np.arange(w)[None, :] // spec.period) + (np.arange(h)[:, None] // spec.period)) % 2
        img[cells == 0] = base
        img[cells == 1] = comp
    elif spec.family == "nodules":
        img[:, :] = base
        count = max(4, (w * h) // (spec.period * spec.period * 4))
        r = _stream(pattern_seed, 3 * count).reshape(count, 3)
        cx = (r[:, 0] % np.uint64(w)).astype(np.int64)
        cy = (r[:, 1] % np.uint64(h)).astype(np.int64)
        rad = (r[:, 2] % np.uint64(spec.period)).astype(np.int64) + spec.period // 2
        yy, xx = np.ogrid[:h, :w]
        for x0, y0, r0 in zip(cx, cy, rad):
            img[(xx - x0) ** 2 + (yy - y0) ** 2 <= r0 * r0] = comp
    else:  # noise: one random color per period-sized cell around the base color
        bw = (w + spec.period - 1) // spec.period
        bh = (h + spec.period - 1) // spec.period
        r = _stream(pattern_seed, bh * bw * 3).reshape(bh, bw, 3)
        dev = (r % np.uint64(129)).astype(np.int16) - 64
        cells = np.clip(base.astype(np.int16) + dev, 0, 255).astype(np.uint8)
        img = np.repeat(np.repeat(cells, spec.period, axis=0), spec.period, axis=1)
        img = img[:h, :w]
    return img


def generate(spec: TextureSpec) -> ImageBuffer:
    """Render one texture; bit-identical for identical specs."""
    w, h = spec.dims
    pattern_seed = (spec.seed >> 32) & 0xFFFFFFFF
    img = _pattern(spec, pattern_seed).astype(np.int16)
    if spec.jitter > 0:
        r = _stream(spec.seed, h * w * 3).reshape(h, w, 3)
        dev = ((r % np.uint64(3)).astype(np.int16) - 1) * spec.jitter
        mask = (_stream(pattern_seed ^ 0xA5A5A5A5, h * w).reshape(h, w) % np.uint64(2)) == 0
        img = img + dev * mask[:, :, None]
    return ImageBuffer(np.clip(img, 0, 255).astype(np.uint8))


def default_family_templates(dims=(128, 128), jitter=16) -> list[TextureSpec]:
    """The four shipped families; base colors deliberately far apart."""
    return [
        TextureSpec("stripes", (180, 60, 50), jitter=jitter, period=8, dims=dims),
        TextureSpec("checker", (60, 160, 70), jitter=jitter, period=8, dims=dims),
        TextureSpec("nodules", (90, 90, 170), jitter=jitter, period=16, dims=dims),
        TextureSpec("noise", (200, 180, 140), jitter=jitter, period=16, dims=dims),
    ]


def generate_corpus(
    families: list[TextureSpec],
    variants_per_family: int,
    master_seed: int = DEFAULT_MASTER_SEED,
) -> list[tuple[ImageBuffer, TruthLabel]]:
    """Family runs in order; the first image of each family is Novel, the rest Similar.

    Each family gets one pattern seed derived from ``master_seed``; variants
    within the family differ only in the low (jitter) half of the seed.
    """
    if len(families) < 2:
        raise ValueError("need at least 2 families")
    if variants_per_family < 1:
        raise ValueError("need at least 1 variant per family")
    out: list[tuple[ImageBuffer, TruthLabel]] = []
    fam_hi = _stream(master_seed, len(families))
    for fi, tpl in enumerate(families):
        hi = int(fam_hi[fi]) & 0xFFFFFFFF
        lo = _stream(master_seed ^ 0x5EED, len(families) * variants_per_family)
        for v in range(variants_per_family):
            seed = (hi << 32) | (int(lo[fi * variants_per_family + v]) & 0xFFFFFFFF)
            spec = TextureSpec(
                tpl.family, tpl.base_color, jitter=tpl.jitter,
                period=tpl.period, seed=seed, dims=tpl.dims,
            )
            truth = TruthLabel.NOVEL if v == 0 else TruthLabel.SIMILAR
            out.append((generate(spec), truth))
    return out


def default_corpus() -> list[tuple[ImageBuffer, TruthLabel]]:
    """The shipped corpus: 4 families x 8 variants, 128x128, jitter 16, fixed seeds."""
    return generate_corpus(default_family_templates(), 8, DEFAULT_MASTER_SEED)


def corpus_sha256(corpus: list[tuple[ImageBuffer, TruthLabel]]) -> str:
    """Digest over every serialized image, for reproducibility checks."""
    digest = hashlib.sha256()
    for img, truth in corpus:
        digest.update(imagecore.serialize(img))
        digest.update(truth.value.encode())
    return digest.hexdigest()


def save_corpus(
    directory: str | Path, corpus: list[tuple[ImageBuffer, TruthLabel]]
) -> Path:
    """Write corpus PNGs plus a manifest consumable by the evaluation harness.

    Returns the manifest path.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    records = []
    for i, (img, truth) in enumerate(corpus):
        name = f"tex_{i:04d}.png"
        (directory / name).write_bytes(imagecore.encode_png(img))
        records.append({"path": name, "truth": truth.value})
    manifest = {"version": 1, "images": records}
    path = directory / "corpus.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path

import io

import numpy as np
import pytest
from PIL import Image

from outcrop import texgen
from outcrop.imagecore import ImageBuffer


def solid(w, h, color):
    return ImageBuffer(np.full((h, w, 3), color, dtype=np.uint8))


def png_bytes(img: ImageBuffer) -> bytes:
    out = io.BytesIO()
    Image.fromarray(np.asarray(img.data)).save(out, format="PNG")
    return out.getvalue()


def jpeg_bytes(img: ImageBuffer, quality=95) -> bytes:
    out = io.BytesIO()
    Image.fromarray(np.asarray(img.data)).save(out, format="JPEG", quality=quality)
    return out.getvalue()


# Shared fixtures use jittered textures: jitter-free patterns compress to
# almost nothing, which makes baselines too small to score against.
STRIPES_SEED_HI = 11
NOISE_SEED_HI = 13


@pytest.fixture(scope="session")
def stripes64():
    return texgen.generate(
        texgen.TextureSpec(
            "stripes", (180, 60, 50), jitter=16, period=8,
            seed=(STRIPES_SEED_HI << 32) | 1, dims=(64, 64),
        )
    )


@pytest.fixture(scope="session")
def noise64():
    return texgen.generate(
        texgen.TextureSpec(
            "noise", (200, 180, 140), jitter=16, period=4,
            seed=(NOISE_SEED_HI << 32) | 1, dims=(64, 64),
        )
    )


@pytest.fixture(scope="session")
def default_corpus():
    return texgen.default_corpus()

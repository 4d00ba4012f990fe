"""Compression-based texture similarity and novelty detection for image streams."""

from .compressor import CompressionProfile, SizeReport, compressed_size
from .imagecore import ImageBuffer, JointImage, decode, juxtapose, resize_nearest, serialize
from .library import IngestResult, LibraryEntry, Session, create_session
from .similarity import (
    NOVEL,
    SIMILAR,
    NoveltyThreshold,
    SimilarityResult,
    Verdict,
    classify,
    compare,
    d_sim_raw,
    normalize,
    self_baseline,
)

__version__ = "0.1.0"

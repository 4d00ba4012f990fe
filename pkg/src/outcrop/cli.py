"""Command-line front door: one-shot compare, session ingest, corpus evaluation,
corpus generation, and the HTTP service.

Exit codes: 2 decode failure, 3 height/dimension mismatch without --resize,
4 manifest errors.
"""

import sys
from pathlib import Path

import click

from . import evaluation, imagecore, library, similarity, texgen
from .compressor import CompressionProfile
from .errors import (
    CorruptStream,
    DimsMismatch,
    EngineError,
    HeightMismatch,
    IoFailure,
    ManifestVersionMismatch,
    UnsupportedFormat,
)
from .similarity import NoveltyThreshold

EXIT_DECODE = 2
EXIT_MISMATCH = 3
EXIT_MANIFEST = 4


def _parse_resize(value):
    if value is None:
        return None
    try:
        w, h = value.lower().split("x")
        return (int(w), int(h))
    except ValueError:
        raise click.BadParameter(f"expected WxH, got {value!r}")


def _load_image(path, resize=None):
    try:
        img = imagecore.decode(Path(path).read_bytes())
    except (UnsupportedFormat, CorruptStream, OSError) as exc:
        click.echo(f"error: cannot decode {path}: {exc}", err=True)
        sys.exit(EXIT_DECODE)
    if resize:
        img = imagecore.resize_nearest(img, *resize)
    return img


threshold_option = click.option(
    "--threshold",
    type=float,
    default=40.0,
    envvar="OUTCROP_THRESHOLD",
    show_default=True,
    help="Similarity score (percent) at or above which an image counts as similar.",
)
level_option = click.option(
    "--level", type=click.IntRange(1, 9), default=6, show_default=True,
    help="DEFLATE compression level.",
)
resize_option = click.option(
    "--resize", default=None, metavar="WxH",
    help="Resample inputs to this size before comparing.",
)


@click.group()
def main():
    """Texture similarity and novelty detection by image compression."""


@main.command()
@click.argument("image_a", type=click.Path(exists=True))
@click.argument("image_b", type=click.Path(exists=True))
@level_option
@resize_option
@click.option("--juxtapose", "direction", type=click.Choice(["lr", "tb"]), default="lr",
              show_default=True, help="Joint-image layout.")
@click.option("--format", "fmt", type=click.Choice(["text", "tsv"]), default="text")
def compare(image_a, image_b, level, resize, direction, fmt):
    """Score IMAGE_B against IMAGE_A (IMAGE_A sets the 100% baseline)."""
    resize = _parse_resize(resize)
    a = _load_image(image_a, resize)
    b = _load_image(image_b, resize)
    profile = CompressionProfile(level=level)
    try:
        if direction == "tb":
            joint = imagecore.juxtapose(a, b, direction="tb")
            baseline = similarity.self_baseline(a, profile)
            from . import compressor

            raw = (
                compressor.compressed_size(imagecore.serialize(a), profile).compressed_len
                + compressor.compressed_size(imagecore.serialize(b), profile).compressed_len
                - compressor.compressed_size(imagecore.serialize(joint), profile).compressed_len
            )
            result = similarity.SimilarityResult(
                raw=raw, score=similarity.normalize(raw, baseline), baseline=baseline
            )
        else:
            result = similarity.compare(a, b, profile)
    except HeightMismatch as exc:
        click.echo(f"error: {exc} (use --resize WxH)", err=True)
        sys.exit(EXIT_MISMATCH)
    if fmt == "tsv":
        click.echo(f"{result.raw}\t{result.baseline}\t{result.score:.4f}")
    else:
        click.echo(f"raw={result.raw} baseline={result.baseline} score={result.score:.4f}")


@main.command("ingest")
@click.argument("images", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("--session", "session_dir", required=True, type=click.Path(),
              help="Session directory.")
@click.option("--new", "new_session", is_flag=True, help="Start a fresh session.")
@threshold_option
@level_option
@resize_option
@click.option("--format", "fmt", type=click.Choice(["text", "tsv"]), default="text")
def ingest(images, session_dir, new_session, threshold, level, resize, fmt):
    """Add IMAGES to a session, printing one verdict line per image.

    Incoming images are resampled to the session's canonical dimensions
    (the first image's, unless --resize overrides). Joint best-match PNGs
    are written to SESSION/pairs/.
    """
    resize = _parse_resize(resize)
    session_path = Path(session_dir)
    if new_session or not (session_path / "manifest.json").exists():
        session = library.Session(
            profile=CompressionProfile(level=level),
            threshold=NoveltyThreshold(threshold),
            canonical_dims=resize,
        )
    else:
        try:
            session = library.Session.load(session_path)
        except (IoFailure, ManifestVersionMismatch) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_MANIFEST)

    pairs_dir = session_path / "pairs"
    sep = "\t" if fmt == "tsv" else " "
    for path in images:
        img = _load_image(path, resize)
        if session.canonical_dims and img.dims != session.canonical_dims:
            img = imagecore.resize_nearest(img, *session.canonical_dims)
        try:
            result = session.ingest(img, name=Path(path).name)
        except DimsMismatch as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_MISMATCH)
        entry = session.entries[-1]
        best = str(result.best[0]) if result.best else "-"
        click.echo(
            sep.join(
                [
                    str(entry.id),
                    entry.source_name,
                    result.verdict.kind.upper(),
                    f"score={result.verdict.score:.4f}",
                    f"best={best}",
                ]
            )
        )
        if result.joint is not None:
            pairs_dir.mkdir(parents=True, exist_ok=True)
            (pairs_dir / f"{entry.id:04d}.png").write_bytes(
                imagecore.encode_png(result.joint)
            )
    session.save(session_path)


@main.command("eval")
@click.argument("corpus_manifest", type=click.Path(exists=True))
@threshold_option
@level_option
@resize_option
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv", "tsv"]),
              default="text")
@click.option("--output", type=click.Path(), default=None, help="Write report here instead of stdout.")
def eval_cmd(corpus_manifest, threshold, level, resize, fmt, output):
    """Replay a labeled corpus through a fresh session and report accuracies."""
    resize = _parse_resize(resize)
    try:
        records = evaluation.read_corpus_manifest(corpus_manifest)
    except (IoFailure, ManifestVersionMismatch, EngineError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_MANIFEST)
    images, truths = [], []
    for rec in records:
        img = _load_image(rec["path"], resize)
        if images and img.dims != images[0].dims:
            img = imagecore.resize_nearest(img, *images[0].dims)
        images.append(img)
        truths.append(rec["truth"])
    if not images:
        click.echo("(empty corpus)")
        return
    eval_records, summary = evaluation.run_corpus(
        images, truths,
        profile=CompressionProfile(level=level),
        threshold=NoveltyThreshold(threshold),
    )
    if all(t is None for t in truths):
        summary = None  # no truth column: records only, accuracies suppressed
    report = evaluation.render_report(eval_records, summary, fmt)
    if output:
        Path(output).write_text(report)
    else:
        click.echo(report, nl=False)


@main.command("gen-textures")
@click.argument("outdir", type=click.Path())
@click.option("--variants", type=int, default=8, show_default=True)
@click.option("--size", default="128x128", show_default=True, metavar="WxH")
@click.option("--jitter", type=click.IntRange(0, 64), default=16, show_default=True)
@click.option("--master-seed", type=int, default=texgen.DEFAULT_MASTER_SEED,
              show_default=True)
def gen_textures(outdir, variants, size, jitter, master_seed):
    """Write the synthetic texture corpus (PNGs + corpus.json) to OUTDIR."""
    dims = _parse_resize(size)
    corpus = texgen.generate_corpus(
        texgen.default_family_templates(dims=dims, jitter=jitter),
        variants, master_seed,
    )
    manifest = texgen.save_corpus(outdir, corpus)
    click.echo(f"wrote {len(corpus)} images and {manifest}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--ui-dir", type=click.Path(), default=None,
              help="Static UI bundle to serve at /.")
def serve(host, port, ui_dir):
    """Run the HTTP session service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(ui_dir=ui_dir), host=host, port=port)


if __name__ == "__main__":
    main()

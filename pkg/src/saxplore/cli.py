"""Batch pipeline commands and the service launcher.

Every command exits 0 on success and 1 with a message on stderr when the
input is bad; file arguments accept '-' for stdin/stdout.
"""

from __future__ import annotations

import functools
import json
import os

import click
import uvicorn

from .cluster import dendrogram_for_words, prune_tree
from .dataset import FORMATS, LONG_CSV, load_dataset, znormalize
from .errors import SaxploreError
from .query import search
from .sax import SaxConfig, encode_dataset, global_bin_width, words_from_json, words_to_json
from .service import create_app
from .session import DEFAULT_MIN_FRACTION

ENV_PORT = "SAXPLORE_PORT"


def _domain_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (SaxploreError, ValueError) as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


@click.group()
def main():
    """Explore a time-series collection through its SAX words."""


@main.command()
@click.option("-i", "--input", "source", type=click.File("rb"), required=True)
@click.option("-o", "--output", type=click.File("w"), default="-", show_default=True)
@click.option("-a", "--alpha", default=4, show_default=True, help="Alphabet size (2-26).")
@click.option("-w", "--omega", default=8, show_default=True, help="Maximum word length.")
@click.option(
    "-f",
    "--format",
    "fmt",
    type=click.Choice(FORMATS),
    default=LONG_CSV,
    show_default=True,
)
@click.option("-m", "--metadata", type=click.File("rb"), help="Sidecar metadata CSV.")
@_domain_errors
def encode(source, output, alpha, omega, fmt, metadata):
    """Normalize a dataset and write its word document (JSON)."""
    dataset = znormalize(load_dataset(source, fmt, metadata_source=metadata))
    config = SaxConfig(alpha=alpha, omega=omega)
    model, words = encode_dataset(dataset, config)
    doc = words_to_json(model, config, global_bin_width(dataset, omega), words)
    json.dump(doc, output, indent=2)
    output.write("\n")


@main.command()
@click.option("-i", "--input", "source", type=click.File("r"), required=True,
              help="Word document produced by `encode`.")
@click.option("-o", "--output", type=click.File("w"), default="-", show_default=True)
@click.option("--min-fraction", default=DEFAULT_MIN_FRACTION, show_default=True,
              help="Auto-visibility threshold as a fraction of the collection.")
@_domain_errors
def cluster(source, output, min_fraction):
    """Cluster a word document and write the pruned tree (JSON)."""
    config, _model, _bin_width, words = words_from_json(json.load(source))
    dendrogram = dendrogram_for_words(words, config.omega)
    view = prune_tree(dendrogram, len(words), min_fraction)
    json.dump(view.to_json(), output, indent=2)
    output.write("\n")


@main.command()
@click.option("-i", "--input", "source", type=click.File("r"), required=True,
              help="Word document produced by `encode`.")
@click.option("-p", "--pattern", required=True,
              help="Letter pattern, e.g. 'abcba' or 'a[bc]a'; matched as a substring.")
@_domain_errors
def query(source, pattern):
    """Print the ids whose words contain the pattern, one per line."""
    _config, _model, _bin_width, words = words_from_json(json.load(source))
    matched = search(pattern, words)
    for word in words:
        if word.series_id in matched:
            click.echo(word.series_id)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=None,
              help=f"Defaults to ${ENV_PORT} or 8000.")
def serve(host, port):
    """Run the HTTP service (file cache via $SAXPLORE_CACHE_DIR)."""
    if port is None:
        port = int(os.environ.get(ENV_PORT, "8000"))
    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()

"""Command-line interface: ranking, continuation, similarity and the
experiment harness.  Exit code 2 signals a configuration error."""

from __future__ import annotations

import functools
import sys

import click

from .board import BoardConfig, format_position, parse_sequence, render_board, NotationError
from .corpus import PATTERN_GENERATORS, corpus_sequences
from .experiments import (
    FeatureSetChoice,
    run_ablation,
    run_example,
    run_memory_curve,
    run_random_study,
    run_stability_probe,
)
from .featurebank import GeneralSequenceConfig, PoolConfig, ScoringMode
from .valuation import (
    build_model,
    continue_iteratively,
    rank_continuations,
    value_similarity,
)


def engine_options(f):
    opts = [
        click.option("--board-size", default=12, show_default=True, type=int),
        click.option("--pool-size", default=200, show_default=True, type=int),
        click.option("--bins", default=8, show_default=True, type=int),
        click.option("--epsilon", default=0.01, show_default=True, type=float),
        click.option(
            "--scoring",
            default="log",
            show_default=True,
            type=click.Choice(["log", "indicator"]),
        ),
        click.option("--seed", default=0, show_default=True, type=int, help="Operator pool seed."),
        click.option("--general-seed", default=0, show_default=True, type=int),
        click.option("--general-length", default=1000, show_default=True, type=int),
        click.option(
            "--format",
            "fmt",
            default="text",
            show_default=True,
            type=click.Choice(["text", "json", "csv"]),
        ),
        click.option("--out", default=None, type=click.Path(writable=True)),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _configs(board_size, pool_size, bins, epsilon, scoring, seed, general_seed, general_length):
    try:
        board = BoardConfig(board_size)
        pool = PoolConfig(
            pool_size=pool_size,
            seed=seed,
            bins_k=bins,
            epsilon=epsilon,
            scoring=ScoringMode(scoring),
        )
        general = GeneralSequenceConfig(length=general_length, seed=general_seed, board=board)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    return board, pool, general


def _parse(text, board):
    try:
        return parse_sequence(text, board)
    except NotationError as exc:
        raise click.UsageError(str(exc)) from exc


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        click.echo(text)


def _ranking_report(ranking, fmt):
    if fmt == "json":
        import json

        return json.dumps(
            [
                {"notation": format_position(r.position), "value": r.value, "rank": r.rank}
                for r in ranking
            ],
            sort_keys=True,
        )
    if fmt == "csv":
        lines = ["rank,field,value"]
        lines += [f"{r.rank},{format_position(r.position)},{r.value:.4f}" for r in ranking]
        return "\n".join(lines)
    lines = [f"{r.rank:>4}  {format_position(r.position):<5} {r.value:.4f}" for r in ranking]
    return "\n".join(lines)


@click.group()
def main():
    """Valuation of position sequences: build a model, rank continuations."""


@main.command()
@click.argument("sequence")
@click.option("--top", default=0, show_default=True, type=int, help="Limit output (0 = all).")
@engine_options
def rank(sequence, top, fmt, out, **cfg):
    """Rank all continuations of SEQUENCE."""
    board, pool, general = _configs(**cfg)
    seq = _parse(sequence, board)
    try:
        model = build_model(seq, pool, general)
        ranking = rank_continuations(model, seq)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    if top > 0:
        ranking = ranking[:top]
    _emit(_ranking_report(ranking, fmt), out)


@main.command("continue")
@click.argument("sequence")
@click.option("--steps", default=4, show_default=True, type=int)
@engine_options
def continue_cmd(sequence, steps, fmt, out, **cfg):
    """Continue SEQUENCE by the top-ranked position, model frozen."""
    board, pool, general = _configs(**cfg)
    seq = _parse(sequence, board)
    try:
        model = build_model(seq, pool, general)
        result = continue_iteratively(model, seq, steps)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    if fmt == "json":
        import json

        _emit(json.dumps({"sequence": result.notation().split()}), out)
    elif fmt == "csv":
        lines = ["index,field"]
        lines += [f"{i},{format_position(p)}" for i, p in enumerate(result)]
        _emit("\n".join(lines), out)
    else:
        _emit(result.notation() + "\n" + render_board(result), out)


@main.command()
@click.argument("sequence")
@click.argument("other")
@engine_options
def similarity(sequence, other, fmt, out, **cfg):
    """Similarity of OTHER to the model built from SEQUENCE."""
    board, pool, general = _configs(**cfg)
    seq = _parse(sequence, board)
    d = _parse(other, board)
    try:
        model = build_model(seq, pool, general)
        value = value_similarity(model, d)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    if fmt == "json":
        import json

        _emit(json.dumps({"value": value}), out)
    elif fmt == "csv":
        _emit(f"value\n{value:.4f}", out)
    else:
        _emit(f"{value:.4f}", out)


@main.command()
@click.option("--seeds", default="0,1,2,3,4", show_default=True)
@click.option(
    "--sets",
    default="conv,diff,quot,full",
    show_default=True,
    help="Comma list of feature sets (conv, diff, quot, full).",
)
@engine_options
def ablation(seeds, sets, fmt, out, **cfg):
    """Mean continuation rank per feature set on the bundled corpus."""
    board, pool, general = _configs(**cfg)
    try:
        set_choices = [FeatureSetChoice(s.strip()) for s in sets.split(",") if s.strip()]
        seed_list = [int(s) for s in seeds.split(",") if s.strip()]
        report = run_ablation(corpus_sequences(board), set_choices, seed_list, pool, general)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(report.render(fmt), out)


@main.command("random-study")
@click.option("--trials", default=200, show_default=True, type=int)
@click.option("--length", default=6, show_default=True, type=int)
@click.option("--top", default=10, show_default=True, type=int)
@click.option("--sequence-seed", default=0, show_default=True, type=int)
@engine_options
def random_study(trials, length, top, sequence_seed, fmt, out, **cfg):
    """Best-continuation values of random sequences."""
    _board, pool, general = _configs(**cfg)
    try:
        report = run_random_study(trials, length, top, sequence_seed, pool, general)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(report.render(fmt), out)


@main.command()
@click.argument("sequence")
@click.option("--pools", default=20, show_default=True, type=int)
@engine_options
def stability(sequence, pools, fmt, out, **cfg):
    """Rank-1 agreement across independently sampled operator pools."""
    board, pool, general = _configs(**cfg)
    seq = _parse(sequence, board)
    try:
        report = run_stability_probe(seq, pools, pool.seed, pool, general)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(report.render(fmt), out)


@main.command()
@click.option(
    "--pattern",
    default="ring",
    show_default=True,
    type=click.Choice(sorted(PATTERN_GENERATORS)),
)
@click.option("--lengths", default="50,100", show_default=True)
@click.option("--prefix", default=5, show_default=True, type=int)
@click.option("--seeds", default="0,1,2,3,4", show_default=True)
@engine_options
def memory(pattern, lengths, prefix, seeds, fmt, out, **cfg):
    """Reconstruction deviations of a regular sequence from a prefix."""
    _board, pool, general = _configs(**cfg)
    try:
        length_list = [int(s) for s in lengths.split(",") if s.strip()]
        seed_list = [int(s) for s in seeds.split(",") if s.strip()]
        report = run_memory_curve(pattern, length_list, prefix, seed_list, pool, general)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(report.render(fmt), out)


@main.command()
@click.argument("sequence")
@click.option("--horizon", default=4, show_default=True, type=int)
@click.option("--top", default=2, show_default=True, type=int)
@engine_options
def example(sequence, horizon, top, fmt, out, **cfg):
    """Step-by-step example table, rank 1 adopted each step."""
    board, pool, general = _configs(**cfg)
    seq = _parse(sequence, board)
    try:
        report = run_example(seq, horizon, top, pool, general)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    if fmt == "text":
        _emit(render_board(seq) + "\n" + report.to_text(), out)
    else:
        _emit(report.render(fmt), out)


@main.command()
@click.option("--port", default=8642, show_default=True, type=int)
@click.option("--state-dir", default=None, type=click.Path())
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, state_dir, host):
    """Run the local HTTP valuation service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(state_dir), host=host, port=port)


if __name__ == "__main__":
    main()

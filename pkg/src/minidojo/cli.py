"""Command-line interface.

Machine-readable JSON goes to stdout, logs to stderr. Exit codes: 0 on
success (including a completed-but-unproved search), 2 for usage errors,
1 for runtime failures, which also emit a JSON error object.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .corpus import Corpus, load_corpus, premise_usage
from .dojo import make_tcp_server, serve_stdio
from .errors import MiniLeanError
from .forge import ForgeSpec, forge_to_dir
from .prover import GeneratorSpec, TemplatePriors, evaluate_pass_at_1, make_generator
from .prover.search import best_first_search, result_to_record
from .retrieval import (
    PremiseIndex,
    RetrievalDataset,
    RetrieverConfig,
    bm25_rank,
    eval_retrieval,
    load_retriever,
    retrieve,
    save_retriever,
    train_retriever,
)
from .splitter import Split, split_novel_premises, split_random, verify_split
from .tracer import export_corpus_jsonl, export_theorems, trace_corpus

log = logging.getLogger("minidojo")


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, ensure_ascii=False)
    sys.stdout.write("\n")
    sys.stdout.flush()


def _dataset(data_dir: str) -> RetrievalDataset:
    root = Path(data_dir)
    return RetrievalDataset.from_files(root / "corpus.jsonl", root / "theorems.json")


def _split_from_file(path: str) -> Split:
    record = json.loads(Path(path).read_text(encoding="utf-8"))
    return Split(
        strategy=record["strategy"],
        seed=record["seed"],
        fractions=tuple(record["fractions"]),
        train=list(record["train"]),
        val=list(record["val"]),
        test=list(record["test"]),
    )


def _split_to_record(split: Split) -> dict:
    return {
        "strategy": split.strategy,
        "seed": split.seed,
        "fractions": list(split.fractions),
        "train": split.train,
        "val": split.val,
        "test": split.test,
    }


def _cmd_trace(args: argparse.Namespace) -> int:
    corpus = load_corpus(Path(args.root))
    traced = trace_corpus(corpus)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    corpus_path = out / "corpus.jsonl"
    theorems_path = out / "theorems.json"
    export_corpus_jsonl(corpus, corpus_path)
    export_theorems(traced, theorems_path, jsonl=False)
    log.info("traced %d theorems from %d files", len(traced), len(corpus.files))
    _emit(
        {
            "corpus": str(corpus_path),
            "theorems": str(theorems_path),
            "n_files": len(corpus.files),
            "n_theorems": len(traced),
        }
    )
    return 0


def _cmd_split(args: argparse.Namespace) -> int:
    dataset = _dataset(args.traced)
    fractions = tuple(float(x) for x in args.fractions.split(","))
    if len(fractions) != 3:
        raise MiniLeanError(f"--fractions needs three comma-separated numbers, got {args.fractions!r}")
    theorems = dataset.theorems
    if args.strategy == "random":
        split = split_random(theorems, fractions, args.seed)
    else:
        usage: dict[str, set[str]] = {}
        for example in dataset.train_examples():
            for premise in example.premises:
                usage.setdefault(premise, set()).add(example.theorem)
        split = split_novel_premises(theorems, usage, fractions, args.seed)
        violations = verify_split(split, usage)
        if violations:
            raise MiniLeanError("; ".join(violations))
    record = _split_to_record(split)
    if args.out:
        Path(args.out).write_text(json.dumps(record, indent=2) + "\n", encoding="utf-8")
        log.info("wrote split to %s", args.out)
    _emit(record)
    return 0


def _retriever_config(args: argparse.Namespace) -> RetrieverConfig:
    data = {}
    if args.config:
        data = json.loads(Path(args.config).read_text(encoding="utf-8"))
    config = RetrieverConfig.from_dict(data)
    if args.seed is not None:
        config.seed = args.seed
    if args.steps is not None:
        config.total_steps = args.steps
    if args.warmup is not None:
        config.warmup_steps = args.warmup
    if args.no_infile_negatives:
        config.infile_negatives = 0
    return config


def _cmd_train_retriever(args: argparse.Namespace) -> int:
    dataset = _dataset(args.data)
    config = _retriever_config(args)
    theorems = _split_from_file(args.split).part(args.part) if args.split else None
    model = train_retriever(dataset, config, theorems=theorems)
    save_retriever(model, args.out)
    losses = model.log["losses"]
    window = max(1, min(50, len(losses)))
    log.info("trained %d steps on %d examples", config.total_steps, model.log["examples"])
    _emit(
        {
            "model": args.out,
            "steps": config.total_steps,
            "examples": model.log["examples"],
            "loss_divisor": model.log["loss_divisor"],
            "initial_loss": sum(losses[:window]) / window,
            "final_loss": sum(losses[-window:]) / window,
        }
    )
    return 0


def _cmd_eval_retriever(args: argparse.Namespace) -> int:
    dataset = _dataset(args.data)
    theorems = _split_from_file(args.split).part(args.part) if args.split else None
    if args.bm25:
        ranker = lambda th, st: bm25_rank(dataset, th, st, all_premises=args.all_premises)
        method = "bm25"
    else:
        model = load_retriever(args.model)
        index = PremiseIndex(model, {n: p.code for n, p in dataset.premises.items()})
        ranker = lambda th, st: retrieve(
            model, dataset, th, st, index=index, all_premises=args.all_premises
        )
        method = "dense"
    metrics = eval_retrieval(ranker, dataset, theorems)
    metrics["method"] = method
    if args.all_premises:
        metrics["all_premises"] = True
    _emit(metrics)
    return 0


def _make_prover_generator(
    args: argparse.Namespace, corpus: Corpus, train_theorems: list[str] | None
):
    dataset = RetrievalDataset.from_corpus(corpus)
    spec = GeneratorSpec(
        kind=args.generator,
        beam=args.beam,
        use_retrieval=not args.no_retrieval,
        top_k_premises=args.top_k,
        seed=args.seed,
        external_cmd=args.external_cmd,
    )
    model = None
    if spec.use_retrieval and spec.kind == "template":
        if not args.model:
            raise MiniLeanError("retrieval-guided generation needs --model (or --no-retrieval)")
        model = load_retriever(args.model)
    elif spec.use_retrieval and spec.kind == "external" and args.model:
        model = load_retriever(args.model)
    priors = TemplatePriors.from_dataset(dataset, train_theorems)
    return lambda: make_generator(dataset, spec, model, priors, train_theorems)


def _cmd_prove(args: argparse.Namespace) -> int:
    corpus = load_corpus(Path(args.root))
    factory = _make_prover_generator(args, corpus, None)
    generator = factory()
    try:
        result = best_first_search(
            corpus,
            args.theorem,
            generator,
            max_expansions=args.max_expansions,
            wall_seconds=args.wall,
        )
    finally:
        if hasattr(generator, "close"):
            generator.close()
    _emit(result_to_record(result))
    return 0


def _cmd_eval_prover(args: argparse.Namespace) -> int:
    corpus = load_corpus(Path(args.root))
    split = _split_from_file(args.split)
    factory = _make_prover_generator(args, corpus, split.train)
    report = evaluate_pass_at_1(
        corpus,
        split.part(args.part),
        factory,
        max_expansions=args.max_expansions,
        wall_seconds=args.wall,
        jobs=args.jobs,
    )
    report["part"] = args.part
    _emit(report)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    corpus = load_corpus(Path(args.root))
    if args.transport == "stdio":
        log.info("serving on stdio")
        serve_stdio(corpus)
        return 0
    if args.transport.startswith("tcp:"):
        port = int(args.transport.split(":", 1)[1])
        server = make_tcp_server(corpus, "127.0.0.1", port)
        log.info("serving on tcp port %d", server.server_address[1])
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            server.server_close()
        return 0
    raise MiniLeanError(f"unknown transport {args.transport!r}, expected stdio or tcp:PORT")


def _cmd_forge(args: argparse.Namespace) -> int:
    spec = ForgeSpec.from_dict(json.loads(Path(args.spec).read_text(encoding="utf-8")))
    written = forge_to_dir(spec, args.out)
    log.info("forged %d files into %s", len(written), args.out)
    _emit({"out": args.out, "n_files": len(written), "spec": spec.to_dict()})
    return 0


def _add_prover_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--generator", choices=("template", "oracle", "external"), default="template")
    sub.add_argument("--no-retrieval", action="store_true", help="rank premises randomly instead")
    sub.add_argument("--model", help="trained retriever file for premise ranking")
    sub.add_argument("--external-cmd", help="command line for the external generator")
    sub.add_argument("--wall", type=float, default=None, help="wall-clock seconds per theorem")
    sub.add_argument("--max-expansions", type=int, default=100)
    sub.add_argument("--beam", type=int, default=64)
    sub.add_argument("--top-k", type=int, default=10, help="premises offered to the generator")
    sub.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minidojo",
        description="Trace, split, train on, and prove theorems in equational corpora.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("trace", help="extract premises and proof traces from a source tree")
    p.add_argument("root")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_trace)

    p = subs.add_parser("split", help="partition traced theorems into train/val/test")
    p.add_argument("traced", help="directory holding corpus.jsonl and theorems.json")
    p.add_argument("--strategy", choices=("random", "novel_premises"), default="random")
    p.add_argument("--fractions", default="0.8,0.1,0.1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="also write the split JSON here")
    p.set_defaults(func=_cmd_split)

    p = subs.add_parser("train-retriever", help="train the premise retriever")
    p.add_argument("data", help="directory holding corpus.jsonl and theorems.json")
    p.add_argument("--config", help="flat JSON config file; flags override it")
    p.add_argument("--out", default="retriever.json")
    p.add_argument("--split", help="restrict training to one part of this split file")
    p.add_argument("--part", default="train", choices=("train", "val", "test"))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--warmup", type=int, default=None)
    p.add_argument("--no-infile-negatives", action="store_true")
    p.set_defaults(func=_cmd_train_retriever)

    p = subs.add_parser("eval-retriever", help="score a ranking method with R@k and MRR")
    p.add_argument("model", help="trained retriever file (unused with --bm25)")
    p.add_argument("data")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--bm25", action="store_true")
    mode.add_argument("--dense", action="store_true", help="default")
    p.add_argument("--all-premises", action="store_true", help="ignore accessibility when ranking")
    p.add_argument("--no-infile-negatives", action="store_true", help="accepted for symmetry; no effect at eval time")
    p.add_argument("--split")
    p.add_argument("--part", default="test", choices=("train", "val", "test"))
    p.set_defaults(func=_cmd_eval_retriever)

    p = subs.add_parser("prove", help="search for a proof of one theorem")
    p.add_argument("root")
    p.add_argument("theorem")
    _add_prover_flags(p)
    p.set_defaults(func=_cmd_prove)

    p = subs.add_parser("eval-prover", help="Pass@1 over one part of a split")
    p.add_argument("root")
    p.add_argument("split")
    p.add_argument("--part", default="test", choices=("train", "val", "test"))
    p.add_argument("--jobs", type=int, default=1)
    _add_prover_flags(p)
    p.set_defaults(func=_cmd_eval_prover)

    p = subs.add_parser("serve", help="speak the line-JSON proving protocol")
    p.add_argument("root")
    p.add_argument("--transport", default="stdio", help="stdio or tcp:PORT")
    p.set_defaults(func=_cmd_serve)

    p = subs.add_parser("forge", help="generate a synthetic corpus from a spec file")
    p.add_argument("spec", help="JSON file of forge parameters")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_forge)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MiniLeanError as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 1
    except OSError as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 1


if __name__ == "__main__":
    sys.exit(main())

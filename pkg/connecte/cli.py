"""
connecte command line

    connecte prepare   build vocabularies and type triples from raw TSV files
    connecte stats     print dataset statistics of a prepared data directory
    connecte train     train a model and write a checkpoint
    connecte eval      filtered type prediction (MRR, HITS@1/3/10)
    connecte classify  type classification with a validation-selected threshold
    connecte predict   top-k types of one entity

Exit codes: 0 success, 1 usage or configuration error, 2 data error, 3 numerical failure.
"""

import argparse
import csv
import logging
import os
import sys
import time

import connecte
from connecte.const import (
    EXIT_CONFIG,
    EXIT_DATA,
    EXIT_NUMERIC,
    EXIT_OK,
    INIT_RULES,
    LOSS_HISTORY_FILE,
    MODE_COMPOSITE,
    MODES,
    RUN_MANIFEST_FILE,
    TRIPLES_FILE,
    TYPE_TRIPLES_FILE,
    TYPES_FILE,
)
from connecte.data import dataset_stats, load_prepared, prepare_dataset
from connecte.evaluation import (
    classify,
    evaluate_typing,
    make_classification_split,
    predict_topk,
    write_classify_report,
    write_typing_report,
)
from connecte.exceptions import (
    ConfigurationError,
    DataError,
    EvaluationError,
    NumericalError,
)
from connecte.model import PRESETS, TrainConfig, checkpoint_digest, load_checkpoint, save_checkpoint
from connecte.training import train
from connecte.utils import dump_json, file_sha256, load_json, parse_key_values, rng_streams

logger = logging.getLogger(__name__)

# config-file spellings accepted in addition to the flag destinations
CONFIG_ALIASES = {"lambda": "lambda_weight", "batch": "batch_size", "parallel": "workers"}
_NOT_CONFIGURABLE = ("command", "func", "config", "verbose", "quiet")


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser exiting with the usage/configuration exit code"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _add_train_flags(parser):
    group = parser.add_argument_group("hyperparameters")
    group.add_argument("--preset", choices=sorted(PRESETS), help="base configuration (fb15k)")
    group.add_argument("--alpha", type=float, help="Adagrad learning rate")
    group.add_argument("--gamma1", type=float, help="margin of the triple objective")
    group.add_argument("--gamma2", type=float, help="margin of the entity-type objective")
    group.add_argument("--gamma3", type=float, help="margin of the type-triple objective")
    group.add_argument("--kappa", type=int, help="entity embedding dimension")
    group.add_argument("--ell", type=int, help="type embedding dimension (< kappa)")
    group.add_argument("--lambda", dest="lambda_weight", type=float, help="composite weight")
    group.add_argument("--epochs", type=int)
    group.add_argument("--batch", dest="batch_size", type=int)
    group.add_argument("--seed", type=int)
    group.add_argument("--neg-per-pos", type=int, help="negatives sampled per positive")
    group.add_argument("--epsilon", type=float, help="Adagrad stabilizer")
    group.add_argument("--init-rule", choices=INIT_RULES)
    group.add_argument(
        "--workers",
        "--parallel",
        dest="workers",
        type=int,
        help="training threads; more than 1 forfeits bitwise reproducibility",
    )


def _add_scoring_flags(parser):
    parser.add_argument("--checkpoint", help="checkpoint directory written by 'train'")
    parser.add_argument("--data-dir", help="prepared data (default: the one used for training)")
    parser.add_argument("--mode", choices=MODES, help=f"scorer (default {MODE_COMPOSITE})")
    parser.add_argument(
        "--lambda", dest="lambda_weight", type=float, help="composite weight (default: trained)"
    )


def build_parser():
    parser = ArgumentParser(prog="connecte", description="Entity typing with ConnectE")
    parser.add_argument("--version", action="version", version=connecte.__version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="file of key=value lines; command-line flags win")
    sub = parser.add_subparsers(dest="command", required=True)

    prepare = sub.add_parser("prepare", parents=[common], help="build a prepared data directory")
    prepare.add_argument("--triples", help="training triples (head, relation, tail)")
    prepare.add_argument("--types", help="training type assertions (entity, type)")
    prepare.add_argument("--valid-types", help="validation assertions, copied along")
    prepare.add_argument("--test-types", help="test assertions, copied along")
    prepare.add_argument("--out-dir")
    prepare.add_argument(
        "--min-count", type=int, help="1 keeps all type triples, 2 drops singletons"
    )
    prepare.set_defaults(func=cmd_prepare)

    stats = sub.add_parser("stats", parents=[common], help="print dataset statistics")
    stats.add_argument("--data-dir")
    stats.set_defaults(func=cmd_stats)

    train_ = sub.add_parser("train", parents=[common], help="train and write a checkpoint")
    train_.add_argument("--data-dir")
    train_.add_argument("--out", help="checkpoint directory")
    train_.add_argument("--valid-types", help="assertions for periodic validation MRR")
    train_.add_argument("--eval-every", type=int, help="epochs between validation runs (0: off)")
    _add_train_flags(train_)
    train_.set_defaults(func=cmd_train)

    eval_ = sub.add_parser("eval", parents=[common], help="filtered type prediction")
    _add_scoring_flags(eval_)
    eval_.add_argument("--test", help="test assertions to rank")
    eval_.add_argument("--valid", help="validation assertions, used for filtering")
    eval_.add_argument("--unfiltered", action="store_true", default=None)
    eval_.add_argument("--workers", type=int, help="ranking threads")
    eval_.add_argument("--out", help="report directory (default CHECKPOINT/eval)")
    eval_.set_defaults(func=cmd_eval)

    classify_ = sub.add_parser("classify", parents=[common], help="type classification")
    _add_scoring_flags(classify_)
    classify_.add_argument("--valid", help="validation assertions (threshold selection)")
    classify_.add_argument("--test", help="test assertions")
    classify_.add_argument("--seed", type=int, help="negative sampling seed (default: trained)")
    classify_.add_argument("--out", help="report directory (default CHECKPOINT/classify)")
    classify_.set_defaults(func=cmd_classify)

    predict = sub.add_parser("predict", parents=[common], help="top-k types of an entity")
    _add_scoring_flags(predict)
    predict.add_argument("--entity", help="entity surface form")
    predict.add_argument("--topk", type=int)
    predict.set_defaults(func=cmd_predict)
    return parser


def apply_config_file(args):
    """Fill every flag left unset on the command line from the --config file"""
    if not getattr(args, "config", None):
        return
    try:
        with open(args.config, encoding="utf-8") as handle:
            values = parse_key_values(handle)
    except OSError as err:
        raise ConfigurationError(f"cannot read config file {args.config}: {err.strerror}")
    except ValueError as err:
        raise ConfigurationError(f"{args.config}: {err}")
    for key, value in values.items():
        key = CONFIG_ALIASES.get(key, key)
        if key in _NOT_CONFIGURABLE or not hasattr(args, key):
            raise ConfigurationError(f"{args.config}: '{key}' is not an option of '{args.command}'")
        if getattr(args, key) is None:
            setattr(args, key, value)


def resolve_config(args):
    """
    preset < config file < command line, coerced to the default's type and validated

    Numbers that would change under coercion (800.7 for an int field, booleans) are rejected.
    """
    overrides = {}
    for field, default in TrainConfig._field_defaults.items():
        value = getattr(args, field, None)
        if value is None:
            continue
        try:
            coerced = type(default)(value)
        except (TypeError, ValueError):
            raise ConfigurationError(f"{field}: cannot use {value!r}")
        if isinstance(value, bool) or (isinstance(value, (int, float)) and coerced != value):
            raise ConfigurationError(f"{field}: cannot use {value!r} as {type(default).__name__}")
        overrides[field] = coerced
    return TrainConfig.from_preset(args.preset or "fb15k", **overrides).validate()


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise ConfigurationError(f"'{args.command}' needs {', '.join(missing)}")


def _datasets(paths):
    return {
        name: {"path": os.path.abspath(path), "sha256": file_sha256(path)}
        for name, path in paths.items()
        if path is not None and os.path.isfile(path)
    }


def write_run_manifest(directory, command, started, **fields):
    """Write run_manifest.json and return its SHA-256"""
    manifest = {
        "tool_version": connecte.__version__,
        "command": command,
        "started_at": time.strftime("%Y-%m-%dT%H:%M:%S%z", time.localtime(started)),
        "wall_clock_seconds": round(time.time() - started, 3),
    }
    manifest.update(fields)
    path = os.path.join(directory, RUN_MANIFEST_FILE)
    dump_json(manifest, path)
    return file_sha256(path)


def _checkpoint_manifest_hash(checkpoint):
    path = os.path.join(checkpoint, RUN_MANIFEST_FILE)
    if os.path.isfile(path):
        return file_sha256(path)
    return checkpoint_digest(checkpoint)


def _data_dir(args):
    if args.data_dir:
        return args.data_dir
    path = os.path.join(args.checkpoint, RUN_MANIFEST_FILE)
    if os.path.isfile(path):
        data_dir = load_json(path).get("data_dir")
        if data_dir:
            return data_dir
    raise ConfigurationError("--data-dir is required for checkpoints without a run manifest")


def cmd_prepare(args):
    _require(args, "triples", "types", "out_dir")
    started = time.time()
    min_count = args.min_count if args.min_count is not None else 1
    summary = prepare_dataset(
        args.triples,
        args.types,
        args.out_dir,
        min_count=min_count,
        valid_path=args.valid_types,
        test_path=args.test_types,
    )
    write_run_manifest(
        args.out_dir,
        "prepare",
        started,
        min_count=min_count,
        datasets=_datasets(
            {
                "triples": args.triples,
                "types": args.types,
                "valid_types": args.valid_types,
                "test_types": args.test_types,
            }
        ),
        counts={
            "expansions": summary.expansions,
            "unique": summary.unique,
            "surviving": summary.surviving,
        },
        stats=summary.stats._asdict(),
    )
    stats = summary.stats
    print(f"entities={stats.entities} relations={stats.relations} types={stats.types}")
    print(f"type triple expansions: {summary.expansions}")
    print(f"unique type triples: {summary.unique}")
    print(f"surviving (count >= {min_count}): {summary.surviving}")
    if summary.unique:
        discarded = 100.0 * (1 - summary.surviving / summary.unique)
        print(f"discarded {discarded:.1f}% of unique type triples")
    return EXIT_OK


def cmd_stats(args):
    _require(args, "data_dir")
    stats = dataset_stats(load_prepared(args.data_dir).kb)
    for field, value in stats._asdict().items():
        print(f"{field}\t{value}")
    return EXIT_OK


def _write_loss_history(path, history, validation):
    by_epoch = {row["epoch"]: row for row in validation}
    columns = [f"valid_mrr_{mode}" for mode in MODES]
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["epoch", "j1", "j2", "j3", *columns])
        for record in history:
            extra = by_epoch.get(record.epoch, {})
            writer.writerow([*record, *(extra.get(c, "") for c in columns)])


def cmd_train(args):
    cfg = resolve_config(args)
    _require(args, "data_dir", "out")
    started = time.time()
    prepared = load_prepared(args.data_dir, valid_path=args.valid_types)
    kb = prepared.kb
    validation = []

    def on_epoch(epoch, params, record):
        if not args.eval_every or epoch % args.eval_every or not kb.valid_assertions:
            return
        row = {"epoch": epoch}
        for mode in MODES:
            try:
                report = evaluate_typing(
                    params, kb, list(kb.valid_assertions), cfg.lambda_weight, mode
                )
            except EvaluationError as err:
                logger.warning("Validation skipped at epoch %d: %s", epoch, err)
                return
            row[f"valid_mrr_{mode}"] = report.mrr
        logger.info("Epoch %d validation MRR %s", epoch, row)
        validation.append(row)

    result = train(kb, cfg, on_epoch=on_epoch)
    save_checkpoint(result.params, cfg, prepared.vocabs, args.out)
    _write_loss_history(os.path.join(args.out, LOSS_HISTORY_FILE), result.history, validation)
    digest = checkpoint_digest(args.out)
    write_run_manifest(
        args.out,
        "train",
        started,
        config=cfg._asdict(),
        seed=cfg.seed,
        data_dir=os.path.abspath(args.data_dir),
        datasets=_datasets(
            {
                "triples": os.path.join(args.data_dir, TRIPLES_FILE),
                "types": os.path.join(args.data_dir, TYPES_FILE),
                "type_triples": os.path.join(args.data_dir, TYPE_TRIPLES_FILE),
                "valid_types": args.valid_types,
            }
        ),
        loss_history=[record._asdict() for record in result.history],
        validation=validation,
        checkpoint_sha256=digest,
    )
    print(f"checkpoint {args.out} sha256={digest}")
    if result.history:
        last = result.history[-1]
        print(f"final losses J1={last.j1:.4f} J2={last.j2:.4f} J3={last.j3:.4f}")
    return EXIT_OK


def _load_for_scoring(args, valid=None, test=None):
    _require(args, "checkpoint")
    checkpoint = load_checkpoint(args.checkpoint)
    prepared = load_prepared(_data_dir(args), checkpoint.vocabs, valid_path=valid, test_path=test)
    lam = args.lambda_weight
    lam = checkpoint.config.lambda_weight if lam is None else float(lam)
    if not 0 <= lam <= 1:
        raise ConfigurationError(f"lambda must lie in [0, 1], got {lam}")
    return checkpoint, prepared, lam, args.mode or MODE_COMPOSITE


def cmd_eval(args):
    started = time.time()
    checkpoint, prepared, lam, mode = _load_for_scoring(args, args.valid, args.test)
    filtered = not args.unfiltered
    report = evaluate_typing(
        checkpoint.params,
        prepared.kb,
        list(prepared.kb.test_assertions),
        lam,
        mode,
        filtered=filtered,
        workers=int(args.workers or 1),
    )
    out = args.out or os.path.join(args.checkpoint, "eval")
    echo = {
        "mode": mode,
        "lambda": lam,
        "filtered": filtered,
        "config": checkpoint.config._asdict(),
    }
    write_typing_report(
        report, out, prepared.eval_vocabs, _checkpoint_manifest_hash(args.checkpoint), echo
    )
    write_run_manifest(
        out,
        "eval",
        started,
        checkpoint=os.path.abspath(args.checkpoint),
        datasets=_datasets({"valid": args.valid, "test": args.test}),
        **echo,
    )
    hits = " ".join(f"HITS@{k}={v:.2f}" for k, v in report.hits_at.items())
    print(f"{mode} MRR={report.mrr:.4f} {hits}")
    print(f"evaluated={report.evaluated} skipped={report.skipped}")
    return EXIT_OK


def cmd_classify(args):
    started = time.time()
    checkpoint, prepared, lam, mode = _load_for_scoring(args, args.valid, args.test)
    kb = prepared.kb
    seed = checkpoint.config.seed if args.seed is None else int(args.seed)
    rng = rng_streams(seed)["classify"]
    valid_pairs = make_classification_split(list(kb.valid_assertions), kb, rng)
    test_pairs = make_classification_split(list(kb.test_assertions), kb, rng)
    report = classify(checkpoint.params, kb, valid_pairs, test_pairs, lam, mode)
    out = args.out or os.path.join(args.checkpoint, "classify")
    echo = {"mode": mode, "lambda": lam, "seed": seed, "config": checkpoint.config._asdict()}
    write_classify_report(report, out, _checkpoint_manifest_hash(args.checkpoint), echo)
    write_run_manifest(
        out,
        "classify",
        started,
        checkpoint=os.path.abspath(args.checkpoint),
        datasets=_datasets({"valid": args.valid, "test": args.test}),
        **echo,
    )
    print(f"{mode} threshold={report.threshold:.6g} accuracy={100 * report.accuracy:.2f}%")
    print(
        "best F1={:.2f}% (P={:.2f}% R={:.2f}%)".format(
            100 * report.f1_best, 100 * report.precision_at_f1, 100 * report.recall_at_f1
        )
    )
    return EXIT_OK


def cmd_predict(args):
    _require(args, "entity")
    checkpoint, prepared, lam, mode = _load_for_scoring(args)
    entity = checkpoint.vocabs.entity.encode(args.entity)
    topk = int(args.topk) if args.topk is not None else 10
    for rank, (type_, score) in enumerate(
        predict_topk(checkpoint.params, prepared.kb, entity, topk, lam, mode), start=1
    ):
        print(f"{rank}\t{checkpoint.vocabs.type.decode(type_)}\t{score:.6f}")
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        apply_config_file(args)
        return args.func(args)
    except ConfigurationError as err:
        logger.error("%s", err)
        return EXIT_CONFIG
    except NumericalError as err:
        logger.error("%s", err)
        return EXIT_NUMERIC
    except (DataError, OSError) as err:
        logger.error("%s", err)
        return EXIT_DATA

"""
connecte.evaluation.reports

Machine-readable report files. Everything written here is a pure function of its inputs so
re-running an evaluation reproduces the files byte for byte.
"""

import logging
import math
import os

from connecte.const import CLASSIFY_REPORT_FILE, PR_CURVE_FILE, RANKS_FILE, TYPING_REPORT_FILE
from connecte.utils import dump_json

logger = logging.getLogger(__name__)


def _float(value):
    """JSON-safe float: infinities become the strings 'inf' / '-inf'"""
    return value if math.isfinite(value) else repr(value)


def write_typing_report(report, out_dir, vocabs, manifest_sha256, echo=None):
    """
    Write typing_report.json and ranks.tsv (entity, true type, rank)

    Args:
        report: RankReport
        vocabs: Vocabularies able to decode the test ids
        manifest_sha256: hash of the evaluated checkpoint's run manifest
        echo: extra JSON-serializable settings (mode, lambda, config)
    """
    os.makedirs(out_dir, exist_ok=True)
    payload = {
        "mrr": report.mrr,
        "hits_at": {str(k): v for k, v in report.hits_at.items()},
        "evaluated": report.evaluated,
        "skipped": report.skipped,
        "manifest_sha256": manifest_sha256,
    }
    payload.update(echo or {})
    dump_json(payload, os.path.join(out_dir, TYPING_REPORT_FILE))
    with open(os.path.join(out_dir, RANKS_FILE), "w", encoding="utf-8") as handle:
        for pair in report.ranks:
            entity, type_ = vocabs.entity.decode(pair.entity), vocabs.type.decode(pair.type)
            handle.write(f"{entity}\t{type_}\t{pair.rank}\n")
    logger.info("Wrote typing report to %s", out_dir)


def write_classify_report(report, out_dir, manifest_sha256, echo=None):
    """Write classify_report.json and pr_curve.tsv (threshold, precision, recall)"""
    os.makedirs(out_dir, exist_ok=True)
    payload = {
        "threshold": _float(report.threshold),
        "accuracy": report.accuracy,
        "valid_accuracy": report.valid_accuracy,
        "f1_best": report.f1_best,
        "precision_at_f1": report.precision_at_f1,
        "recall_at_f1": report.recall_at_f1,
        "manifest_sha256": manifest_sha256,
    }
    payload.update(echo or {})
    dump_json(payload, os.path.join(out_dir, CLASSIFY_REPORT_FILE))
    with open(os.path.join(out_dir, PR_CURVE_FILE), "w", encoding="utf-8") as handle:
        handle.write("threshold\tprecision\trecall\n")
        for point in report.pr_points:
            handle.write(f"{point.threshold!r}\t{point.precision!r}\t{point.recall!r}\n")
    logger.info("Wrote classification report to %s", out_dir)

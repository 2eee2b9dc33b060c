"""
connecte.evaluation.ranking

Filtered type prediction: each test assertion (e, t) is ranked among all candidate types,
optionally after removing the other known-true types of e.
"""

import logging
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from connecte.const import HITS_AT
from connecte.exceptions import ConfigurationError, EvaluationError
from connecte.model.scoring import type_scores

logger = logging.getLogger(__name__)

RankedPair = namedtuple("RankedPair", ["entity", "type", "rank"])
RankReport = namedtuple("RankReport", ["mrr", "hits_at", "evaluated", "skipped", "ranks"])


def fair_rank(scores, true_t, candidates=None):
    """
    Rank of ``true_t`` among ``scores`` (lower is better) with half-rank tie handling:

        rank = #(strictly smaller) + ceil((#ties + 1) / 2)

    where ties excludes ``true_t`` itself.

    Args:
        candidates: optional boolean mask of eligible types; ``true_t`` is always eligible
    """
    target = scores[true_t]
    if candidates is not None:
        candidates = candidates.copy()
        candidates[true_t] = True
        scores = scores[candidates]
    smaller = int(np.count_nonzero(scores < target))
    ties = int(np.count_nonzero(scores == target)) - 1
    return smaller + (ties + 2) // 2


def _in_range(params, e, t):
    return 0 <= e < params.n_entities and 0 <= t < params.n_types


def filter_mask(kb, e, true_t, n_types):
    """Candidates left after removing every other known-true type of ``e``"""
    mask = np.ones(n_types, dtype=bool)
    for t in kb.true_types(e):
        if t != true_t and t < n_types:
            mask[t] = False
    return mask


def rank_type(params, kb, e, true_t, lam, mode, filtered=True):
    """
    Rank of the true type of ``e``

    Returns:
        a positive integer, or None when ``e`` or ``true_t`` is outside the trained
        vocabularies (the pair is skipped)
    """
    if not _in_range(params, e, true_t):
        return None
    scores = type_scores(params, kb, e, lam, mode)
    mask = filter_mask(kb, e, true_t, params.n_types) if filtered else None
    return fair_rank(scores, true_t, mask)


def aggregate_ranks(ranks, hits_at=HITS_AT):
    """MRR and HITS@k (percentages) for a sequence of ranks"""
    ranks = np.asarray(ranks, dtype=np.float64)
    mrr = float(np.sum(1.0 / ranks) / ranks.size)
    hits = {k: float(100.0 * np.count_nonzero(ranks <= k) / ranks.size) for k in hits_at}
    return mrr, hits


def evaluate_typing(params, kb, test_assertions, lam, mode, filtered=True, workers=1):
    """
    Rank every test assertion and aggregate MRR and HITS@1/3/10

    Pairs outside the trained vocabularies are skipped and counted. With ``workers`` > 1
    pairs are ranked on a thread pool; results are gathered in input order.

    Raises:
        EvaluationError for an empty test set or when every pair is skipped
    """
    if not test_assertions:
        raise EvaluationError("test set is empty")

    def _rank(pair):
        return rank_type(params, kb, pair[0], pair[1], lam, mode, filtered)

    if workers > 1:
        with ThreadPoolExecutor(workers) as executor:
            ranks = list(executor.map(_rank, test_assertions))
    else:
        ranks = [_rank(pair) for pair in test_assertions]

    ranked = [RankedPair(e, t, r) for (e, t), r in zip(test_assertions, ranks) if r is not None]
    skipped = len(ranks) - len(ranked)
    if skipped:
        logger.warning(
            "Skipped %d of %d pairs outside the trained vocabularies", skipped, len(ranks)
        )
    if not ranked:
        raise EvaluationError("no test pair could be evaluated")
    mrr, hits = aggregate_ranks([pair.rank for pair in ranked])
    logger.info(
        "%s (filtered=%s): MRR=%.4f %s on %d pairs",
        mode,
        filtered,
        mrr,
        " ".join(f"HITS@{k}={v:.2f}" for k, v in hits.items()),
        len(ranked),
    )
    return RankReport(mrr, hits, len(ranked), skipped, tuple(ranked))


def predict_topk(params, kb, e, k, lam, mode):
    """
    The ``k`` lowest-scoring types of ``e`` as (type, score), ascending, ties by type id

    A ``k`` larger than the number of types yields every type.
    """
    if k < 1:
        raise ConfigurationError(f"k must be >= 1, got {k}")
    scores = type_scores(params, kb, e, lam, mode)
    order = np.lexsort((np.arange(scores.size), scores))[:k]
    return [(int(t), float(scores[t])) for t in order]

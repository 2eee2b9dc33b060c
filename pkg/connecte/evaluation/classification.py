"""
connecte.evaluation.classification

Entity type classification: an (entity, type) pair is predicted positive when its score is at
most a global threshold eta, chosen for accuracy on the validation split.
"""

import logging
from collections import namedtuple

import numpy as np

from connecte.exceptions import ClassificationError
from connecte.model.scoring import score_pair

logger = logging.getLogger(__name__)

LabeledPair = namedtuple("LabeledPair", ["entity", "type", "label"])
PRPoint = namedtuple("PRPoint", ["threshold", "precision", "recall"])
ClassifyReport = namedtuple(
    "ClassifyReport",
    [
        "threshold",
        "accuracy",
        "pr_points",
        "f1_best",
        "precision_at_f1",
        "recall_at_f1",
        "valid_accuracy",
    ],
)


def make_classification_split(assertions, kb, rng, max_retries=1000):
    """
    Pair every positive assertion with one negative obtained by switching its type

    The negative type is uniform over the types the entity is not known to have (train, valid
    or test). Assertions outside the training vocabularies are dropped.

    Returns:
        list of LabeledPair, balanced and shuffled by ``rng``
    Raises:
        ClassificationError if there is nothing to split or no eligible negative type is found
        within ``max_retries`` draws
    """
    n_types = kb.n_types
    if n_types < 2:
        raise ClassificationError(f"need at least 2 types, got {n_types}")
    positives = [(e, t) for e, t in assertions if 0 <= e < kb.n_entities and 0 <= t < n_types]
    if len(positives) < len(assertions):
        logger.warning(
            "Dropped %d assertions outside the training vocabularies",
            len(assertions) - len(positives),
        )
    if not positives:
        raise ClassificationError("no assertion to build a classification split from")

    pairs = []
    for entity, type_ in positives:
        known = kb.true_types(entity)
        for _ in range(max_retries):
            negative = int(rng.integers(n_types))
            if negative not in known and negative != type_:
                break
        else:
            raise ClassificationError(
                f"no negative type found for entity {entity} after {max_retries} draws"
            )
        pairs.append(LabeledPair(entity, type_, True))
        pairs.append(LabeledPair(entity, negative, False))
    return [pairs[i] for i in rng.permutation(len(pairs))]


def candidate_thresholds(scores):
    """Midpoints between consecutive distinct scores, bracketed by -inf and +inf"""
    distinct = np.unique(np.asarray(scores, dtype=np.float64))
    midpoints = (distinct[:-1] + distinct[1:]) / 2.0
    return np.concatenate(([-np.inf], midpoints, [np.inf]))


def _counts(scores, labels, thresholds):
    """True and false positive counts (score <= threshold) for every threshold"""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=bool)
    positives, negatives = np.sort(scores[labels]), np.sort(scores[~labels])
    if not positives.size or not negatives.size:
        raise ClassificationError("classification split must contain both classes")
    tp = np.searchsorted(positives, thresholds, side="right")
    fp = np.searchsorted(negatives, thresholds, side="right")
    return tp, fp, positives.size, negatives.size


def _accuracy(tp, fp, n_pos, n_neg):
    return (tp + (n_neg - fp)) / (n_pos + n_neg)


def classify_scores(valid_scores, valid_labels, test_scores, test_labels):
    """
    Select eta on validation scores and report test accuracy and the test PR curve

    Ties in validation accuracy go to the smallest threshold.
    """
    thresholds = candidate_thresholds(valid_scores)
    tp, fp, n_pos, n_neg = _counts(valid_scores, valid_labels, thresholds)
    valid_accuracy = _accuracy(tp, fp, n_pos, n_neg)
    best = int(np.argmax(valid_accuracy))
    eta = float(thresholds[best])

    tp, fp, n_pos, n_neg = _counts(test_scores, test_labels, thresholds)
    accuracy = _accuracy(tp, fp, n_pos, n_neg)[best]
    predicted = tp + fp
    precision = np.where(predicted > 0, tp / np.maximum(predicted, 1), 1.0)
    recall = tp / n_pos
    denominator = precision + recall
    safe = np.where(denominator > 0, denominator, 1.0)
    f1 = np.where(denominator > 0, 2 * precision * recall / safe, 0.0)
    at_f1 = int(np.argmax(f1))
    points = [
        PRPoint(float(t), float(p), float(r)) for t, p, r in zip(thresholds, precision, recall)
    ]
    return ClassifyReport(
        threshold=eta,
        accuracy=float(accuracy),
        pr_points=points,
        f1_best=float(f1[at_f1]),
        precision_at_f1=float(precision[at_f1]),
        recall_at_f1=float(recall[at_f1]),
        valid_accuracy=float(valid_accuracy[best]),
    )


def classify(params, kb, valid_pairs, test_pairs, lam, mode):
    """
    Score labeled validation and test pairs and run the threshold protocol

    Args:
        valid_pairs, test_pairs: sequences of LabeledPair
    Raises:
        ClassificationError if a split contains a single class
    """

    def _scores(pairs):
        return [score_pair(params, kb, p.entity, p.type, lam, mode) for p in pairs]

    report = classify_scores(
        _scores(valid_pairs),
        [p.label for p in valid_pairs],
        _scores(test_pairs),
        [p.label for p in test_pairs],
    )
    logger.info(
        "%s classification: eta=%.6g accuracy=%.4f best F1=%.4f (P=%.4f R=%.4f)",
        mode,
        report.threshold,
        report.accuracy,
        report.f1_best,
        report.precision_at_f1,
        report.recall_at_f1,
    )
    return report

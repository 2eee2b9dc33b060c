"""
connecte.model.scoring

Energy functions. Lower scores are more plausible; every score is a squared L2 distance
and therefore non-negative.

Single-pair and all-types scores share the same row helpers, so a pair scored alone is
bitwise equal to its entry in the vectorized scores and exact ties survive ranking.
"""

import numpy as np

from connecte.const import MODE_COMPOSITE, MODE_E2T, MODES
from connecte.exceptions import ConfigurationError

# Upper bound on float64 elements held by one broadcast block of composite scoring
BLOCK_ELEMENTS = 1 << 22


def _sq_rows(diff):
    """Squared L2 norm along the last axis"""
    return np.square(diff).sum(axis=-1)


def _sq(vector):
    return float(_sq_rows(vector))


def score_transe(params, e, r, e_tail):
    """||E[e] + R_star[r] - E[e_tail]||^2"""
    return _sq(params.E[e] + params.R_star[r] - params.E[e_tail])


def score_trt(params, t_h, r, t_t):
    """||T[t_h] + R_circ[r] - T[t_t]||^2"""
    return _sq(params.T[t_h] + params.R_circ[r] - params.T[t_t])


def _pair_arrays(pairs):
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    return pairs[:, 0], pairs[:, 1]


def _e2t_rows(params, e, types):
    return _sq_rows(params.M @ params.E[e] - params.T[types])


def _trt_rows(params, tail_pairs, head_pairs, types):
    """mean_P S_trt(t, r, t~) + mean_Q S_trt(t-, r, t) for every t in ``types``"""
    trt = np.zeros(len(types))
    T = params.T[types][:, None, :]
    if tail_pairs:
        rels, tails = _pair_arrays(tail_pairs)
        trt += _sq_rows(T + params.R_circ[rels][None] - params.T[tails][None]).mean(axis=1)
    if head_pairs:
        rels, heads = _pair_arrays(head_pairs)
        trt += _sq_rows(params.T[heads][None] + params.R_circ[rels][None] - T).mean(axis=1)
    return trt


def _composite_rows(params, kb, e, lam, types):
    e2t = _e2t_rows(params, e, types)
    tail_pairs, head_pairs = kb.tail_type_pairs(e), kb.head_type_pairs(e)
    if not tail_pairs and not head_pairs:
        return e2t
    width = max(len(tail_pairs), len(head_pairs)) * params.ell
    block = max(1, BLOCK_ELEMENTS // width)
    trt = np.concatenate(
        [
            _trt_rows(params, tail_pairs, head_pairs, types[start : start + block])
            for start in range(0, len(types), block)
        ]
    )
    return lam * e2t + (1 - lam) * trt


def score_e2t(params, e, t):
    """||M E[e] - T[t]||^2"""
    return float(_e2t_rows(params, e, np.array([t]))[0])


def score_composite(params, kb, e, t, lam):
    """
    lam * S_e2t(e, t) + (1 - lam) * (mean_P S_trt(t, r, t~) + mean_Q S_trt(t-, r, t))

    P holds one (r, t~) pair per out-edge (r, e~) of e and per type t~ of e~; Q is the
    in-edge counterpart. An empty P or Q contributes 0; when both are empty the E2T score is
    returned unweighted.
    """
    return float(_composite_rows(params, kb, e, lam, np.array([t]))[0])


def e2t_scores(params, e):
    """S_e2t(e, t) for every type t, as a vector of length n_types"""
    return _e2t_rows(params, e, np.arange(params.n_types))


def composite_scores(params, kb, e, lam):
    """score_composite(params, kb, e, t, lam) for every type t"""
    return _composite_rows(params, kb, e, lam, np.arange(params.n_types))


def type_scores(params, kb, e, lam, mode):
    """Candidate scores over all training types for the given prediction mode"""
    if mode == MODE_E2T:
        return e2t_scores(params, e)
    if mode == MODE_COMPOSITE:
        return composite_scores(params, kb, e, lam)
    raise ConfigurationError(f"mode must be one of {MODES}, got {mode!r}")


def score_pair(params, kb, e, t, lam, mode):
    """Score a single (entity, type) pair for the given prediction mode"""
    if mode == MODE_E2T:
        return score_e2t(params, e, t)
    if mode == MODE_COMPOSITE:
        return score_composite(params, kb, e, t, lam)
    raise ConfigurationError(f"mode must be one of {MODES}, got {mode!r}")

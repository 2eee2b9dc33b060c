"""
connecte.training.objectives

The three margin-ranking objectives. Each one owns a training record set, a corruption
sampler, a score and the analytic gradient of that score with respect to the parameter
groups it is allowed to update:

    J1  triples (D)        TransE energy        updates E, R_star
    J2  assertions (H)     entity-to-type       updates T, M (E frozen)
    J3  type triples (Z)   type-relation-type   updates R_circ (T frozen)
"""

from abc import ABCMeta, abstractmethod

import numpy as np

from connecte.model.scoring import score_e2t, score_transe, score_trt
from connecte.training.sampling import corrupt_assertion, corrupt_triple, corrupt_type_triple
from connecte.utils import LoggerMixin


def hinge(margin, s_pos, s_neg):
    """max(0, margin + s_pos - s_neg)"""
    return max(0.0, margin + s_pos - s_neg)


def _accumulate(grads, key, value):
    if key in grads:
        grads[key] = grads[key] + value
    else:
        grads[key] = value


class Objective(LoggerMixin, metaclass=ABCMeta):
    """Base class for a single training stage."""

    # name used in logs, loss history and errors
    name = None
    # TrainConfig field holding this objective's margin
    margin_field = None
    # parameter groups this stage may change
    updated_groups = ()

    def margin(self, cfg):
        return getattr(cfg, self.margin_field)

    @abstractmethod
    def records(self, kb):
        """Return the positive training records of this stage"""

    @abstractmethod
    def corrupt(self, record, rng, kb):
        """Return one corrupted copy of ``record``"""

    @abstractmethod
    def score(self, params, record):
        """Return the energy of ``record``"""

    @abstractmethod
    def score_gradients(self, params, record):
        """
        Return a list of (group, row, gradient) for d score / d parameters, restricted to
        ``updated_groups``. ``row`` is None for whole-matrix groups (M).
        """

    def pair_loss(self, params, positive, negative, margin):
        return hinge(margin, self.score(params, positive), self.score(params, negative))

    def pair_gradients(self, params, positive, negative):
        """
        Gradient of the active hinge term (margin + S(pos) - S(neg)), merged per
        (group, row) so a row touched by both records receives a single update
        """
        grads = {}
        for group, row, grad in self.score_gradients(params, positive):
            _accumulate(grads, (group, row), grad)
        for group, row, grad in self.score_gradients(params, negative):
            _accumulate(grads, (group, row), -grad)
        return grads

    def step(self, params, ada, batch, cfg):
        """
        Apply one Adagrad update per active pair of ``batch``, sample by sample

        Returns:
            summed hinge loss over the batch
        """
        margin = self.margin(cfg)
        total = 0.0
        for positive, negative in zip(batch.positives, batch.negatives):
            loss = self.pair_loss(params, positive, negative, margin)
            if loss <= 0.0:
                continue
            total += loss
            for (group, row), grad in self.pair_gradients(params, positive, negative).items():
                ada.apply(params, group, row, grad, cfg.alpha)
        return total

    def __repr__(self):
        return f"<{self.__class__.__name__} {self.name}>"


class TransEObjective(Objective):
    name = "J1"
    margin_field = "gamma1"
    updated_groups = ("E", "R_star")

    def records(self, kb):
        return kb.triples

    def corrupt(self, record, rng, kb):
        return corrupt_triple(record, rng, kb.n_entities)

    def score(self, params, record):
        return score_transe(params, *record)

    def score_gradients(self, params, record):
        head, rel, tail = record
        diff = 2.0 * (params.E[head] + params.R_star[rel] - params.E[tail])
        return [("E", head, diff), ("R_star", rel, diff), ("E", tail, -diff)]


class EntityTypeObjective(Objective):
    name = "J2"
    margin_field = "gamma2"
    updated_groups = ("T", "M")

    def records(self, kb):
        return kb.assertions

    def corrupt(self, record, rng, kb):
        return corrupt_assertion(record, rng, kb.n_entities, kb.n_types)

    def score(self, params, record):
        return score_e2t(params, *record)

    def score_gradients(self, params, record):
        entity, type_ = record
        e = params.E[entity]
        diff = 2.0 * (params.M @ e - params.T[type_])
        return [("T", type_, -diff), ("M", None, np.outer(diff, e))]


class TypeTripleObjective(Objective):
    name = "J3"
    margin_field = "gamma3"
    updated_groups = ("R_circ",)

    def records(self, kb):
        return kb.type_triples

    def corrupt(self, record, rng, kb):
        return corrupt_type_triple(record, rng, kb.n_types)

    def score(self, params, record):
        return score_trt(params, *record)

    def score_gradients(self, params, record):
        head_type, rel, tail_type = record
        diff = 2.0 * (params.T[head_type] + params.R_circ[rel] - params.T[tail_type])
        return [("R_circ", rel, diff)]


J1 = TransEObjective()
J2 = EntityTypeObjective()
J3 = TypeTripleObjective()
OBJECTIVES = (J1, J2, J3)


def step_j1(params, ada, batch, cfg):
    """One J1 pass over ``batch``; only rows of E and R_star change"""
    return J1.step(params, ada, batch, cfg)


def step_j2(params, ada, batch, cfg):
    """One J2 pass over ``batch``; only rows of T and the matrix M change"""
    return J2.step(params, ada, batch, cfg)


def step_j3(params, ada, batch, cfg):
    """One J3 pass over ``batch``; only rows of R_circ change"""
    return J3.step(params, ada, batch, cfg)

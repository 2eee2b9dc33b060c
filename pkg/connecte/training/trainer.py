"""
connecte.training.trainer

Staged training loop: every epoch runs J1 over the triples, J2 over the type assertions and
J3 over the type triples, then rescales entity embeddings to unit norm.
"""

import math
import time
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

from connecte.exceptions import NumericalError
from connecte.model.params import init_params, normalize_entities
from connecte.training.adagrad import AdagradState
from connecte.training.objectives import OBJECTIVES
from connecte.training.sampling import iter_batches
from connecte.utils import LoggerMixin, rng_streams

LossRecord = namedtuple("LossRecord", ["epoch", "j1", "j2", "j3"])
TrainResult = namedtuple("TrainResult", ["params", "history", "adagrad"])


class Trainer(LoggerMixin):
    """
    Runs the staged epoch loop for one knowledge base and configuration

    With cfg.workers == 1 (the default) the run is fully determined by cfg.seed. With more
    workers, the batches of a stage are applied concurrently to the shared matrices; sampling
    stays seeded but the update interleaving, and therefore the result, is not reproducible.

    Args:
        kb: connecte.data.KnowledgeBase
        cfg: connecte.model.TrainConfig
        on_epoch: optional callable(epoch, params, loss_record) invoked after normalization
    """

    def __init__(self, kb, cfg, on_epoch=None):
        self.kb = kb
        self.cfg = cfg.validate()
        self.on_epoch = on_epoch
        self.rngs = rng_streams(cfg.seed)
        self.params = init_params(
            (cfg.kappa, cfg.ell),
            (kb.n_entities, kb.n_types, kb.n_relations),
            cfg.seed,
            init_rule=cfg.init_rule,
        )
        self.adagrad = AdagradState(self.params, epsilon=cfg.epsilon)
        self.history = []

    def _stage_rng(self, objective):
        return self.rngs[objective.name.lower()]

    def _batches(self, objective):
        rng = self._stage_rng(objective)
        records = objective.records(self.kb)

        def corrupt(record, rng):
            return objective.corrupt(record, rng, self.kb)

        return iter_batches(records, corrupt, self.cfg.batch_size, rng, self.cfg.neg_per_pos)

    def _check(self, objective, epoch, index, loss):
        if not math.isfinite(loss):
            raise NumericalError(objective.name, epoch, index, loss)

    def run_stage(self, objective, epoch, executor=None):
        """Run ``objective`` over all of its records once and return the summed loss"""
        if not objective.records(self.kb):
            return 0.0
        total = 0.0
        if executor is None:
            for index, batch in enumerate(self._batches(objective)):
                loss = objective.step(self.params, self.adagrad, batch, self.cfg)
                self._check(objective, epoch, index, loss)
                self.logger.debug(
                    "%s epoch %d batch %d loss %.6f", objective.name, epoch, index, loss
                )
                total += loss
            return total
        batches = list(self._batches(objective))
        losses = executor.map(
            lambda batch: objective.step(self.params, self.adagrad, batch, self.cfg), batches
        )
        for index, loss in enumerate(losses):
            self._check(objective, epoch, index, loss)
            total += loss
        return total

    def run_epoch(self, epoch, executor=None):
        losses = [self.run_stage(objective, epoch, executor) for objective in OBJECTIVES]
        normalize_entities(self.params, self.rngs["redraw"])
        record = LossRecord(epoch, *losses)
        self.history.append(record)
        return record

    def run(self):
        """
        Train for cfg.epochs epochs

        Returns:
            TrainResult(params, history, adagrad)
        Raises:
            NumericalError if a batch loss is not finite
        """
        self.logger.info(
            "Training %r for %d epochs (kappa=%d ell=%d alpha=%s batch=%d seed=%d workers=%d)",
            self.kb,
            self.cfg.epochs,
            self.cfg.kappa,
            self.cfg.ell,
            self.cfg.alpha,
            self.cfg.batch_size,
            self.cfg.seed,
            self.cfg.workers,
        )
        executor = ThreadPoolExecutor(self.cfg.workers) if self.cfg.workers > 1 else None
        try:
            for epoch in range(1, self.cfg.epochs + 1):
                started = time.monotonic()
                record = self.run_epoch(epoch, executor)
                self.logger.info(
                    "Epoch %d/%d J1=%.4f J2=%.4f J3=%.4f (%.1fs)",
                    epoch,
                    self.cfg.epochs,
                    record.j1,
                    record.j2,
                    record.j3,
                    time.monotonic() - started,
                )
                if self.on_epoch is not None:
                    self.on_epoch(epoch, self.params, record)
        finally:
            if executor is not None:
                executor.shutdown()
        return TrainResult(self.params, list(self.history), self.adagrad)


def train(kb, cfg, on_epoch=None):
    """Train ConnectE parameters on ``kb``, see Trainer"""
    return Trainer(kb, cfg, on_epoch=on_epoch).run()

"""
connecte.model.params

The five parameter groups and their initialization/normalization
"""

import hashlib
import logging
import math

import numpy as np

from connecte.const import INIT_GLOROT, INIT_LITERAL, INIT_RULES, PARAM_GROUPS
from connecte.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


class ModelParams:
    """
    Embedding matrices

        E:      n_entities x kappa   entity embeddings
        T:      n_types x ell        type embeddings
        R_star: n_relations x kappa  relation embeddings in entity space
        R_circ: n_relations x ell    relation embeddings in type space
        M:      ell x kappa          entity-to-type projection

    Matrices are float64 and mutated in place by the trainer.
    """

    def __init__(self, E, T, R_star, R_circ, M, init_rule=INIT_GLOROT):
        self.E = np.asarray(E, dtype=np.float64)
        self.T = np.asarray(T, dtype=np.float64)
        self.R_star = np.asarray(R_star, dtype=np.float64)
        self.R_circ = np.asarray(R_circ, dtype=np.float64)
        self.M = np.asarray(M, dtype=np.float64)
        self.init_rule = init_rule
        kappa, ell = self.E.shape[1], self.T.shape[1]
        expected = self.expected_shapes(
            kappa, ell, self.E.shape[0], self.T.shape[0], self.R_star.shape[0]
        )
        for group, shape in expected.items():
            if getattr(self, group).shape != shape:
                raise ConfigurationError(
                    f"{group} has shape {getattr(self, group).shape}, expected {shape}"
                )
        if not ell < kappa:
            raise ConfigurationError(f"ell must be smaller than kappa, got ell={ell} kappa={kappa}")

    @staticmethod
    def expected_shapes(kappa, ell, n_entities, n_types, n_relations):
        return {
            "E": (n_entities, kappa),
            "T": (n_types, ell),
            "R_star": (n_relations, kappa),
            "R_circ": (n_relations, ell),
            "M": (ell, kappa),
        }

    @property
    def kappa(self):
        return self.E.shape[1]

    @property
    def ell(self):
        return self.T.shape[1]

    @property
    def n_entities(self):
        return self.E.shape[0]

    @property
    def n_types(self):
        return self.T.shape[0]

    @property
    def n_relations(self):
        return self.R_star.shape[0]

    def groups(self):
        return {group: getattr(self, group) for group in PARAM_GROUPS}

    def copy(self):
        return ModelParams(*(m.copy() for m in self.groups().values()), init_rule=self.init_rule)

    def digest(self, *groups):
        """SHA-256 over the raw bytes of ``groups`` (all groups by default)"""
        sha = hashlib.sha256()
        for group in groups or PARAM_GROUPS:
            sha.update(np.ascontiguousarray(getattr(self, group)).tobytes())
        return sha.hexdigest()

    def is_finite(self):
        return all(np.isfinite(m).all() for m in self.groups().values())

    def __repr__(self):
        return "<ModelParams entities={} types={} relations={} kappa={} ell={}>".format(
            self.n_entities, self.n_types, self.n_relations, self.kappa, self.ell
        )


def init_bound(m, n, rule=INIT_GLOROT):
    """
    Half-width of the uniform initialization range for a matrix with embedding dimension
    ``m`` and vocabulary size ``n``

    glorot:  sqrt(6) / sqrt(m + n)
    literal: sqrt(6) / (m + n)
    """
    if rule == INIT_GLOROT:
        return math.sqrt(6) / math.sqrt(m + n)
    if rule == INIT_LITERAL:
        return math.sqrt(6) / (m + n)
    raise ConfigurationError(f"init_rule must be one of {INIT_RULES}, got {rule!r}")


def init_params(dims, sizes, seed, init_rule=INIT_GLOROT):
    """
    Draw every matrix i.i.d. uniform on [-b, b], see init_bound

    Args:
        dims: (kappa, ell)
        sizes: (n_entities, n_types, n_relations)
        seed: integer seed; equal seeds give bitwise-identical parameters
    Raises:
        ConfigurationError for empty vocabularies or ell >= kappa
    """
    kappa, ell = dims
    n_ent, n_type, n_rel = sizes
    if min(n_ent, n_type, n_rel) < 1:
        raise ConfigurationError(
            f"vocabulary sizes must be positive, got entities={n_ent} types={n_type} "
            f"relations={n_rel}"
        )
    if not 0 < ell < kappa:
        raise ConfigurationError(f"need 0 < ell < kappa, got ell={ell} kappa={kappa}")
    rng = np.random.default_rng(seed)
    # (rows, cols, m, n) with m the embedding dimension and n the vocabulary size
    layout = {
        "E": (n_ent, kappa, kappa, n_ent),
        "T": (n_type, ell, ell, n_type),
        "R_star": (n_rel, kappa, kappa, n_rel),
        "R_circ": (n_rel, ell, ell, n_rel),
        "M": (ell, kappa, ell, kappa),
    }
    matrices = {}
    for group in PARAM_GROUPS:
        rows, cols, m, n = layout[group]
        bound = init_bound(m, n, init_rule)
        matrices[group] = rng.uniform(-bound, bound, size=(rows, cols))
    logger.debug("Initialized parameters kappa=%d ell=%d sizes=%s", kappa, ell, sizes)
    return ModelParams(**matrices, init_rule=init_rule)


def normalize_entities(params, rng=None):
    """
    Scale every row of E to unit L2 norm in place; T, R_star, R_circ and M are untouched

    An all-zero row cannot be scaled, it is replaced by a fresh draw from the initialization
    distribution first.
    """
    norms = np.linalg.norm(params.E, axis=1)
    zero_rows = np.flatnonzero(norms == 0)
    if zero_rows.size:
        rng = rng if rng is not None else np.random.default_rng()
        bound = init_bound(params.kappa, params.n_entities, params.init_rule)
        for row in zero_rows:
            logger.warning("Entity embedding row %d is zero, re-drawing it", row)
            params.E[row] = rng.uniform(-bound, bound, size=params.kappa)
        norms[zero_rows] = np.linalg.norm(params.E[zero_rows], axis=1)
    params.E /= norms[:, None]

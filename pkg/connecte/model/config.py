"""
connecte.model.config

Training hyperparameters and the two published optimal configurations
"""

from collections import namedtuple

from connecte.const import INIT_GLOROT, INIT_RULES
from connecte.exceptions import ConfigurationError

_FIELDS = [
    ("alpha", 0.1),
    ("gamma1", 2.0),
    ("gamma2", 2.0),
    ("gamma3", 2.0),
    ("kappa", 200),
    ("ell", 100),
    ("lambda_weight", 0.85),
    ("epochs", 800),
    ("batch_size", 4096),
    ("seed", 0),
    ("neg_per_pos", 1),
    ("epsilon", 1e-8),
    ("init_rule", INIT_GLOROT),
    ("workers", 1),
]


_TrainConfigBase = namedtuple(
    "TrainConfig", [f for f, _ in _FIELDS], defaults=[d for _, d in _FIELDS]
)


class TrainConfig(_TrainConfigBase):
    """
    Immutable set of hyperparameters

    The defaults are the optimal FB15k configuration: alpha=0.1, margins 2, kappa=200, ell=100,
    lambda=0.85, 800 epochs, batch size 4096.
    """

    __slots__ = ()

    def validate(self):
        """Return self, or raise ConfigurationError listing every offending field"""
        problems = []
        if not self.alpha > 0:
            problems.append(f"alpha must be > 0, got {self.alpha}")
        for name in ("gamma1", "gamma2", "gamma3"):
            if not getattr(self, name) > 0:
                problems.append(f"{name} must be > 0, got {getattr(self, name)}")
        if self.ell < 1 or self.kappa < 1:
            problems.append(f"dimensions must be positive, got kappa={self.kappa} ell={self.ell}")
        elif not self.ell < self.kappa:
            problems.append(f"ell must be smaller than kappa ({self.ell} >= {self.kappa})")
        if not 0 <= self.lambda_weight <= 1:
            problems.append(f"lambda must lie in [0, 1], got {self.lambda_weight}")
        for name in ("batch_size", "neg_per_pos", "workers"):
            if getattr(self, name) < 1:
                problems.append(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.epochs < 0:
            problems.append(f"epochs must be >= 0, got {self.epochs}")
        if not self.epsilon > 0:
            problems.append(f"epsilon must be > 0, got {self.epsilon}")
        if self.init_rule not in INIT_RULES:
            problems.append(f"init_rule must be one of {INIT_RULES}, got {self.init_rule!r}")
        if problems:
            raise ConfigurationError("; ".join(problems))
        return self

    @property
    def margins(self):
        return (self.gamma1, self.gamma2, self.gamma3)

    @classmethod
    def from_dict(cls, data):
        unknown = sorted(set(data) - set(cls._fields))
        if unknown:
            raise ConfigurationError(f"unknown configuration keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_preset(cls, name, **overrides):
        try:
            preset = PRESETS[name]
        except KeyError:
            raise ConfigurationError(f"unknown preset '{name}', choose from {sorted(PRESETS)}")
        return preset._replace(**overrides)


PRESETS = {
    "fb15k": TrainConfig(),
    "yago43k": TrainConfig(gamma1=1.0, gamma2=1.0, gamma3=1.0, kappa=250, ell=125),
}

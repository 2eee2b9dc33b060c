"""
Logging helper shared by the stateful classes (vocabularies, objectives, trainer)
"""

import logging


class LoggerMixin:
    @property
    def logger(self):
        """
        Returns a logger for the instance

        Default logger is named "{module}.{class}"

        The logger can be overriden with the logger setter.
        """
        if not hasattr(self, "_logger"):
            self._logger = logging.getLogger(
                f"{self.__class__.__module__}.{self.__class__.__name__}"
            )
        return self._logger

    @logger.setter
    def logger(self, value):
        """
        Sets logger for this instance

        If value is None, a disabled logger is used so training loops can run silently.
        """
        if value is None:
            silent = logging.getLogger(f"{self.__class__.__module__}.silent")
            silent.disabled = True
            self._logger = silent
        else:
            expected_attrs = ["info", "warning", "error", "debug", "exception"]
            if not all(callable(getattr(value, a, None)) for a in expected_attrs):
                raise ValueError(f"missing one of expected logger methods: {expected_attrs}")
            self._logger = value

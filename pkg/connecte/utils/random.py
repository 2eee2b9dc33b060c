import numpy as np

# Fixed child order; adding a stream must append, never reorder. Initialization draws
# from default_rng(seed) itself, see connecte.model.params.init_params.
STREAMS = ("j1", "j2", "j3", "redraw", "classify")


def rng_streams(seed):
    """Derive one independent numpy Generator per named stage from a single seed."""
    children = np.random.SeedSequence(seed).spawn(len(STREAMS))
    return {name: np.random.default_rng(child) for name, child in zip(STREAMS, children)}

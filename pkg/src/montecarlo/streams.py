"""Counter-based random streams: one independent substream per trial."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import PreconditionError
from ..lattice import Config, Rect


@dataclass(frozen=True)
class TrialStream:
    """Master seed plus a step number; trial ``index`` gets its own Philox stream.

    The generator for (seed, step, index) depends on nothing else, so
    trials can run in any order or process.
    """

    seed: int
    step: int = 0

    def generator(self, index: int) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.step, index))
        return np.random.Generator(np.random.Philox(sequence))

    def for_step(self, step: int) -> "TrialStream":
        return TrialStream(self.seed, step)


def sample_config(p: float, rect: Rect, stream: TrialStream, index: int) -> Config:
    """Infect each site of R independently with probability p.

    Raises:
        PreconditionError: If p is outside [0, 1]
    """
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"p={p} outside [0, 1]")
    draws = stream.generator(index).random(rect.dims)
    return Config(rect, draws < p)

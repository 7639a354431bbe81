"""
Seeded random rational points for probabilistic identity testing.

Sample points must avoid the poles of the expressions being compared. A
draw that lands on a pole is retried with tenacity; when the retry budget
is exhausted the sample is declared degenerate.
"""
import logging
from fractions import Fraction
from typing import Iterable, Protocol

import numpy as np
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from defcalc.config import settings
from defcalc.domain.exceptions import DegenerateSample, PoleAtPoint
from defcalc.utils.monomials import sort_variables

logger = logging.getLogger(__name__)


class Guard(Protocol):
    """Anything that must not vanish at a sample point (usually a denominator)."""

    def evaluate(self, assignment: dict[str, Fraction]) -> Fraction: ...


class RationalSampler:
    """
    Draws rational points p/q with p, q uniform in [1, bound].

    The generator is seeded once, so the sequence of points is fully
    determined by the seed and the order of requests.
    """

    def __init__(
        self,
        seed: int,
        bound: int | None = None,
        max_attempts: int | None = None,
    ):
        """
        Initialize the sampler.

        Args:
            seed: PRNG seed, echoed in every report
            bound: Upper bound for numerators and denominators
            max_attempts: Draws per point before giving up
        """
        self.seed = seed
        self.bound = bound or settings.sample_bound
        self.max_attempts = max_attempts or settings.max_sample_attempts
        self._rng = np.random.default_rng(seed)

    def draw_rational(self) -> Fraction:
        numerator, denominator = self._rng.integers(1, self.bound, size=2, endpoint=True)
        return Fraction(int(numerator), int(denominator))

    def draw_integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high]."""
        return int(self._rng.integers(low, high, endpoint=True))

    def _attempt(self, variables: tuple[str, ...], guards: tuple[Guard, ...]) -> dict[str, Fraction]:
        point = {var: self.draw_rational() for var in variables}
        for guard in guards:
            if guard.evaluate(point) == 0:
                logger.debug("Sample point hit a pole, redrawing")
                raise PoleAtPoint("guard vanishes at sample point")
        return point

    def draw_point(
        self,
        variables: Iterable[str],
        guards: Iterable[Guard] = (),
    ) -> dict[str, Fraction]:
        """
        Draw one point on which no guard vanishes.

        Args:
            variables: Symbols to assign
            guards: Expressions that must be nonzero at the point

        Returns:
            Mapping symbol -> Rational

        Raises:
            DegenerateSample: If every attempt landed on a pole
        """
        retryer = Retrying(
            stop=stop_after_attempt(self.max_attempts),
            retry=retry_if_exception_type(PoleAtPoint),
            reraise=False,
        )
        try:
            return retryer(self._attempt, sort_variables(variables), tuple(guards))
        except RetryError as e:
            raise DegenerateSample(
                f"no pole-free sample point after {self.max_attempts} attempts (seed {self.seed})"
            ) from e

"""Seeded i.i.d. processing-time distributions.

Random numbers come from numpy's PCG64 ``Generator``. Independent
substreams are derived with ``SeedSequence([seed, index])``, so trial ``k``
of an experiment sees the same table no matter how trials are split across
workers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .core import ProcessingTimeTable

__all__ = ["DistributionSpec", "KINDS", "substream", "moments", "sample_table"]

# kind -> required parameter names
KINDS: dict[str, tuple[str, ...]] = {
    "exponential": ("scale",),
    "discrete-uniform": ("lo", "hi"),
    "continuous-uniform": ("lo", "hi"),
    "chi-squared": ("k",),
    "geometric": ("q",),
}


def substream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for ``(seed, index)``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


@dataclass(frozen=True)
class DistributionSpec:
    """A named distribution with its parameters.

    ============================  =======================================
    kind                          params
    ============================  =======================================
    ``exponential``               ``scale`` (mean, > 0)
    ``discrete-uniform``          integer ``lo <= hi``, ``lo >= 0``
    ``continuous-uniform``        ``0 <= lo <= hi``
    ``chi-squared``               ``k >= 1`` degrees of freedom
    ``geometric``                 ``q`` in (0, 1); ``P(X=j) = (1-q) q**j``
    ============================  =======================================
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}; expected one of {sorted(KINDS)}")
        expected = KINDS[self.kind]
        got = set(self.params)
        if got != set(expected):
            raise ValueError(f"{self.kind} needs parameters {list(expected)}, got {sorted(got)}")
        p = {k: float(v) for k, v in self.params.items()}
        if self.kind == "exponential" and not p["scale"] > 0:
            raise ValueError("exponential scale must be positive")
        elif self.kind == "discrete-uniform":
            if p["lo"] != int(p["lo"]) or p["hi"] != int(p["hi"]):
                raise ValueError("discrete-uniform bounds must be integers")
            p = {"lo": int(p["lo"]), "hi": int(p["hi"])}
            if not 0 <= p["lo"] <= p["hi"]:
                raise ValueError("discrete-uniform bounds need 0 <= lo <= hi")
        elif self.kind == "continuous-uniform" and not 0 <= p["lo"] <= p["hi"]:
            raise ValueError("continuous-uniform bounds need 0 <= lo <= hi")
        elif self.kind == "chi-squared" and not p["k"] >= 1:
            raise ValueError("chi-squared degrees of freedom must be >= 1")
        elif self.kind == "geometric" and not 0 < p["q"] < 1:
            raise ValueError("geometric q must lie in (0, 1)")
        object.__setattr__(self, "params", p)

    @classmethod
    def exponential(cls, scale: float) -> "DistributionSpec":
        return cls("exponential", {"scale": scale})

    @classmethod
    def discrete_uniform(cls, lo: int, hi: int) -> "DistributionSpec":
        return cls("discrete-uniform", {"lo": lo, "hi": hi})

    @classmethod
    def continuous_uniform(cls, lo: float, hi: float) -> "DistributionSpec":
        return cls("continuous-uniform", {"lo": lo, "hi": hi})

    @classmethod
    def chi_squared(cls, k: float) -> "DistributionSpec":
        return cls("chi-squared", {"k": k})

    @classmethod
    def geometric(cls, q: float) -> "DistributionSpec":
        return cls("geometric", {"q": q})

    @classmethod
    def uniform_matching(cls, mean: float, variance: float) -> "DistributionSpec":
        """Continuous uniform with the given mean and variance (half-width ``sqrt(3 var)``)."""
        half = math.sqrt(3.0 * variance)
        return cls.continuous_uniform(mean - half, mean + half)

    @property
    def mean(self) -> float:
        return moments(self)[0]

    @property
    def variance(self) -> float:
        return moments(self)[1]

    @property
    def support_min(self) -> float:
        if self.kind in ("discrete-uniform", "continuous-uniform"):
            return float(self.params["lo"])
        return 0.0

    def sample(self, rng: np.random.Generator, shape) -> np.ndarray:
        p = self.params
        if self.kind == "exponential":
            return rng.exponential(p["scale"], size=shape)
        if self.kind == "discrete-uniform":
            return rng.integers(p["lo"], p["hi"], size=shape, endpoint=True).astype(float)
        if self.kind == "continuous-uniform":
            return rng.uniform(p["lo"], p["hi"], size=shape)
        if self.kind == "chi-squared":
            return rng.chisquare(p["k"], size=shape)
        # numpy counts trials up to the first success; success prob 1 - q
        return (rng.geometric(1.0 - p["q"], size=shape) - 1).astype(float)

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.params}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "DistributionSpec":
        data = dict(data)
        try:
            kind = data.pop("kind")
        except KeyError:
            raise ValueError("distribution JSON needs a 'kind' field") from None
        if kind == "exponential" and "lambda" in data and "scale" not in data:
            data["scale"] = data.pop("lambda")
        return cls(kind, data)

    @classmethod
    def from_json(cls, text: str) -> "DistributionSpec":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("distribution JSON must be an object")
        return cls.from_dict(data)


# Same mean 7 and variance 14 as the chi-squared with k = 7.
STANDARD_DISCRETE_UNIFORM = DistributionSpec.discrete_uniform(1, 13)
STANDARD_CONTINUOUS_UNIFORM = DistributionSpec.continuous_uniform(7 - math.sqrt(42), 7 + math.sqrt(42))
STANDARD_CHI_SQUARED = DistributionSpec.chi_squared(7)
STANDARD_EXPONENTIAL = DistributionSpec.exponential(2.0)


def moments(spec: DistributionSpec) -> tuple[float, float]:
    """Closed-form ``(mean, variance)``."""
    p = spec.params
    if spec.kind == "exponential":
        return p["scale"], p["scale"] ** 2
    if spec.kind == "discrete-uniform":
        n = p["hi"] - p["lo"] + 1
        return (p["lo"] + p["hi"]) / 2, (n * n - 1) / 12
    if spec.kind == "continuous-uniform":
        return (p["lo"] + p["hi"]) / 2, (p["hi"] - p["lo"]) ** 2 / 12
    if spec.kind == "chi-squared":
        return p["k"], 2 * p["k"]
    q = p["q"]
    return q / (1 - q), q / (1 - q) ** 2


def sample_table(spec: DistributionSpec, machines: int, jobs: int, seed) -> ProcessingTimeTable:
    """Draw an ``machines x jobs`` table of i.i.d. processing times.

    ``seed`` is an integer or a ``numpy.random.Generator``.
    """
    if machines < 1 or jobs < 1:
        raise ValueError("machines and jobs must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return ProcessingTimeTable(spec.sample(rng, (machines, jobs)))

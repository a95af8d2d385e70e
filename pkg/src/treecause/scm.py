"""Seeded synthetic cause-effect pairs from random polynomial mechanisms.

The cause is pure noise, ``X = U_X``, and the effect is
``Y = f(X) + g(U_Y)`` or ``Y = f(X) * g(U_Y)`` where ``f`` and ``g`` are
random integer polynomials of degree 1 to 5. Columns are swapped with a
configurable probability and the ground-truth direction is recorded.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .core import DataKind, Direction, PairDataset, validate_dataset

MIN_DEGREE, MAX_DEGREE = 1, 5
COEF_LO, COEF_HI = -10, 10


class ConfigInvalid(ValueError):
    pass


class NoiseFamily(str, enum.Enum):
    DISCRETE_UNIFORM = "discrete_uniform"
    DISCRETE_GAUSSIAN = "discrete_gaussian"
    CONTINUOUS_UNIFORM = "continuous_uniform"
    CONTINUOUS_GAUSSIAN = "continuous_gaussian"

    @property
    def kind(self) -> DataKind:
        if self.value.startswith("discrete"):
            return DataKind.DISCRETE
        return DataKind.CONTINUOUS


class NoiseMode(str, enum.Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


@dataclass(frozen=True)
class NoiseSpec:
    family: NoiseFamily
    cardinality: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", NoiseFamily(self.family))
        if self.family.kind is DataKind.DISCRETE:
            if self.cardinality is None or self.cardinality < 2:
                raise ConfigInvalid("discrete noise needs cardinality R >= 2")
        elif self.cardinality is not None:
            raise ConfigInvalid("continuous noise takes no cardinality")

    @property
    def kind(self) -> DataKind:
        return self.family.kind

    @classmethod
    def make(cls, kind, distribution: str, cardinality: int | None = None) -> "NoiseSpec":
        """Build from ``kind`` ('discrete'/'continuous') and 'uniform'/'gaussian'."""
        kind = DataKind(kind)
        if distribution not in ("uniform", "gaussian"):
            raise ConfigInvalid(f"unknown noise distribution {distribution!r}")
        return cls(NoiseFamily(f"{kind.value}_{distribution}"), cardinality)

    def to_dict(self) -> dict:
        return {"family": self.family.value, "cardinality": self.cardinality}


@dataclass(frozen=True)
class Polynomial:
    """Integer coefficients, index i holding the coefficient of x**i."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if len(self.coefficients) < 2:
            raise ValueError("a polynomial needs at least two coefficients")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        return eval_polynomial(self, x)


def sample_polynomial(rng: np.random.Generator) -> Polynomial:
    degree = int(rng.integers(MIN_DEGREE, MAX_DEGREE + 1))
    coefs = rng.integers(COEF_LO, COEF_HI + 1, size=degree + 1)
    return Polynomial(tuple(coefs.tolist()))


def eval_polynomial(p: Polynomial, x):
    """Horner evaluation; integer input is evaluated with exact Python ints."""
    x = np.asarray(x)
    scalar = x.ndim == 0
    if x.dtype.kind in "iu":
        x = np.atleast_1d(x).astype(object)
        cast = int
    else:
        x = np.atleast_1d(x).astype(float)
        cast = float
    out = np.zeros(x.shape, dtype=x.dtype)
    for c in reversed(p.coefficients):
        out = out * x + cast(c)
    return out[0] if scalar else out


def sample_noise(spec: NoiseSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` noise values; discrete families return int64 arrays."""
    if n < 1:
        raise ConfigInvalid("need at least one noise draw")
    fam = spec.family
    if fam is NoiseFamily.DISCRETE_UNIFORM:
        r = spec.cardinality
        lo = -(r // 2)
        return rng.integers(lo, lo + r, size=n)
    if fam is NoiseFamily.DISCRETE_GAUSSIAN:
        r = spec.cardinality
        z = rng.standard_normal(n)
        lo, hi = z.min(), z.max()
        if hi == lo:
            labels = np.zeros(n, dtype=np.int64)
        else:
            labels = np.clip(np.floor((z - lo) / ((hi - lo) / r)), 0, r - 1).astype(np.int64)
        return labels - r // 2
    if fam is NoiseFamily.CONTINUOUS_UNIFORM:
        u = rng.uniform(-1.0, 1.0, size=n)
        # uniform() is half-open [-1, 1); keep the support open at -1 too
        while (u == -1.0).any():
            bad = u == -1.0
            u[bad] = rng.uniform(-1.0, 1.0, size=int(bad.sum()))
        return u
    return rng.standard_normal(n)


@dataclass(frozen=True)
class GenConfig:
    noise_x: NoiseSpec = field(
        default_factory=lambda: NoiseSpec(NoiseFamily.DISCRETE_UNIFORM, 20)
    )
    noise_y: NoiseSpec = field(
        default_factory=lambda: NoiseSpec(NoiseFamily.DISCRETE_UNIFORM, 20)
    )
    noise_mode: NoiseMode = NoiseMode.ADDITIVE
    n_samples: int = 1000
    flip_probability: float = 0.5
    seed: int = 0

    def __post_init__(self):
        try:
            object.__setattr__(self, "noise_mode", NoiseMode(self.noise_mode))
        except ValueError:
            raise ConfigInvalid(f"unknown noise mode {self.noise_mode!r}") from None

    def validate(self) -> None:
        if self.n_samples < 2:
            raise ConfigInvalid("n_samples must be >= 2")
        if not 0.0 <= self.flip_probability <= 1.0:
            raise ConfigInvalid("flip_probability must lie in [0, 1]")
        if self.noise_x.kind is not self.noise_y.kind:
            raise ConfigInvalid("cause and effect noise must both be discrete or both continuous")

    @property
    def kind(self) -> DataKind:
        return self.noise_x.kind

    def with_seed(self, seed: int) -> "GenConfig":
        return replace(self, seed=int(seed))

    def to_dict(self) -> dict:
        return {
            "noise_x": self.noise_x.to_dict(),
            "noise_y": self.noise_y.to_dict(),
            "noise_mode": self.noise_mode.value,
            "n_samples": self.n_samples,
            "flip_probability": self.flip_probability,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class Mechanism:
    """Everything needed to replay the effect from the cause and its noise.

    Always stored in the pre-flip orientation (cause first).
    """

    f_cause: Polynomial
    f_noise: Polynomial
    mode: NoiseMode
    flipped: bool

    def apply(self, cause, effect_noise):
        fx = eval_polynomial(self.f_cause, cause)
        gn = eval_polynomial(self.f_noise, effect_noise)
        return fx + gn if self.mode is NoiseMode.ADDITIVE else fx * gn

    def to_dict(self) -> dict:
        return {
            "f_cause": list(self.f_cause.coefficients),
            "f_noise": list(self.f_noise.coefficients),
            "mode": self.mode.value,
            "flipped": self.flipped,
        }


@dataclass(frozen=True)
class LabeledDataset:
    data: PairDataset
    truth: Direction
    mechanism: Mechanism
    cause_noise: np.ndarray
    effect_noise: np.ndarray
    seed: int


def derive_seed(master_seed: int, index: int) -> int:
    """Independent 64-bit stream seed for dataset ``index`` under ``master_seed``."""
    ss = np.random.SeedSequence([int(master_seed) & (2**64 - 1), int(index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def generate_dataset(cfg: GenConfig) -> LabeledDataset:
    try:
        cfg.validate()
    except ValueError as exc:
        raise ConfigInvalid(str(exc)) from None
    rng = np.random.default_rng(int(cfg.seed) & (2**64 - 1))
    u_x = sample_noise(cfg.noise_x, cfg.n_samples, rng)
    u_y = sample_noise(cfg.noise_y, cfg.n_samples, rng)
    f_cause = sample_polynomial(rng)
    f_noise = sample_polynomial(rng)
    flipped = bool(rng.random() < cfg.flip_probability)
    mech = Mechanism(f_cause, f_noise, cfg.noise_mode, flipped)

    x = u_x
    y = mech.apply(x, u_y)
    cols = (y, x) if flipped else (x, y)
    data = validate_dataset(
        np.asarray(cols[0], dtype=float), np.asarray(cols[1], dtype=float), cfg.kind
    )
    truth = Direction.Y_TO_X if flipped else Direction.X_TO_Y
    for arr in (u_x, u_y):
        arr.flags.writeable = False
    return LabeledDataset(data, truth, mech, u_x, u_y, int(cfg.seed))

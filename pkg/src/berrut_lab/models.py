"""Test functions with the metadata the error bounds need."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

CLASS_TAGS = frozenset({"Lip1", "AC1", "BV1"})


@dataclass(frozen=True)
class FunctionModel:
    """A function on [-1, 1] with optional derivative data.

    ``f`` and the derivatives must accept numpy arrays.  ``tv_fprime`` is the
    total variation of f' on [-1, 1].  ``f_exact``, when present, maps a
    Fraction to a Fraction and enables exact-arithmetic error evaluation.
    """

    name: str
    f: Callable
    f_prime: Optional[Callable] = None
    f_second: Optional[Callable] = None
    tv_fprime: Optional[float] = None
    class_tags: frozenset = field(default_factory=frozenset)
    f_exact: Optional[Callable[[Fraction], Fraction]] = None

    def __post_init__(self):
        object.__setattr__(self, "class_tags", frozenset(self.class_tags))
        unknown = self.class_tags - CLASS_TAGS
        if unknown:
            raise ValueError(f"unknown class tags {sorted(unknown)}")
        if self.class_tags & {"AC1", "BV1"}:
            if self.tv_fprime is None or self.f_prime is None:
                raise ValueError(f"{self.name}: AC1/BV1 models need f_prime and tv_fprime")
            if "BV1" not in self.class_tags:
                raise ValueError(f"{self.name}: AC1 implies BV1")
        if self.tv_fprime is not None and self.tv_fprime < 0:
            raise ValueError("tv_fprime must be nonnegative")

    def __call__(self, x):
        return self.f(x)

    def values(self, x) -> np.ndarray:
        return np.asarray(self.f(np.asarray(x, dtype=float)), dtype=float) * np.ones(np.shape(x))

    @property
    def is_bv1(self) -> bool:
        return "BV1" in self.class_tags

    @property
    def is_ac1(self) -> bool:
        return "AC1" in self.class_tags


def _const(c):
    return lambda x: np.full(np.shape(x), c, dtype=float)


_SMOOTH = frozenset({"Lip1", "AC1", "BV1"})

# max |f'| of the Runge function is attained at x = -+1/(5 sqrt 3)
_RUNGE_FPRIME_MAX = 45.0 / (8.0 * math.sqrt(3.0))

LIBRARY: dict[str, FunctionModel] = {
    m.name: m
    for m in [
        FunctionModel(
            "const1", _const(1.0), _const(0.0), _const(0.0), 0.0, _SMOOTH,
            f_exact=lambda x: Fraction(1),
        ),
        FunctionModel(
            "linear", lambda x: 2.0 * np.asarray(x) + 0.5, _const(2.0), _const(0.0), 0.0, _SMOOTH,
            f_exact=lambda x: 2 * x + Fraction(1, 2),
        ),
        FunctionModel(
            "quadratic", lambda x: np.asarray(x) ** 2, lambda x: 2.0 * np.asarray(x), _const(2.0),
            4.0, _SMOOTH, f_exact=lambda x: x * x,
        ),
        # f' = |x| is absolutely continuous; f'' jumps at 0
        FunctionModel(
            "xabsx", lambda x: np.asarray(x) * np.abs(x) / 2.0, lambda x: np.abs(x),
            lambda x: np.sign(x), 2.0, _SMOOTH, f_exact=lambda x: x * abs(x) / 2,
        ),
        FunctionModel("exp", np.exp, np.exp, np.exp, math.e - 1.0 / math.e, _SMOOTH),
        FunctionModel(
            "sinpi", lambda x: np.sin(np.pi * np.asarray(x)),
            lambda x: np.pi * np.cos(np.pi * np.asarray(x)),
            lambda x: -np.pi ** 2 * np.sin(np.pi * np.asarray(x)),
            4.0 * math.pi, _SMOOTH,
        ),
        FunctionModel(
            "runge", lambda x: 1.0 / (1.0 + 25.0 * np.asarray(x) ** 2),
            lambda x: -50.0 * np.asarray(x) / (1.0 + 25.0 * np.asarray(x) ** 2) ** 2,
            lambda x: (3750.0 * np.asarray(x) ** 2 - 50.0) / (1.0 + 25.0 * np.asarray(x) ** 2) ** 3,
            4.0 * _RUNGE_FPRIME_MAX - 2.0 * 50.0 / 26.0 ** 2, _SMOOTH,
        ),
        # no derivative at 0, so only Lipschitz
        FunctionModel("abs", np.abs, np.sign, None, None, frozenset({"Lip1"}),
                      f_exact=lambda x: abs(x)),
    ]
}


def get_model(name: str) -> FunctionModel:
    try:
        return LIBRARY[name]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; choose from {', '.join(LIBRARY)}") from None


def bv1_models() -> list[FunctionModel]:
    return [m for m in LIBRARY.values() if m.is_bv1]

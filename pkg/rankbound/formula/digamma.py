from __future__ import annotations

import typing as t

import numpy as np

__all__ = ("digamma_re_line",)

# B_2k / 2k for k = 1..7
_ASYMPTOTIC = np.array([1 / 12, -1 / 120, 1 / 252, -1 / 240, 1 / 132, -691 / 32760, 1 / 12])
_SHIFT = 9
_STEPS = np.arange(1, _SHIFT + 1, dtype=np.float64)


def digamma_re_line(t_: t.Union[float, np.ndarray]) -> t.Union[float, np.ndarray]:
    """Re psi(1 + it), elementwise.

    The argument is pushed up to 10 + it with psi(z + 1) = psi(z) + 1/z, where
    the asymptotic series truncated after w^-14 is accurate to about 1e-16.
    """
    t_ = np.asarray(t_, dtype=np.float64)
    squares = t_[..., np.newaxis] ** 2
    recurrence = np.sum(_STEPS / (_STEPS ** 2 + squares), axis=-1)

    w = (1.0 + _SHIFT) + 1j * t_
    inv_square = 1.0 / (w * w)
    series = np.zeros_like(w)
    for coefficient in _ASYMPTOTIC[::-1]:
        series = (series + coefficient) * inv_square

    value = (np.log(w) - 0.5 / w - series).real - recurrence
    return value if value.ndim else float(value)

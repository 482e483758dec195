from __future__ import annotations

import numpy as np


def hadamard(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform, (Hf)(z) = sum_y (-1)^(y.z) f(y).

    Works on any dtype numpy can add and subtract, including object arrays of
    ints or Fractions.  Returns a new array; H(H(f)) = 2^n f.
    """
    out = np.array(values, copy=True)
    size = out.shape[0]
    if size == 0 or size & (size - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < size:
        view = out.reshape(-1, 2, h)
        upper = view[:, 0, :].copy()
        lower = view[:, 1, :].copy()
        view[:, 0, :] = upper + lower
        view[:, 1, :] = upper - lower
        h *= 2
    return out

"""Operators on complex sequences: convolution, difference, quotient, projection.

An operator is conv -> chain of D/Q steps -> real projection.  All functions
accept 1-D arrays or batches shaped (..., n) and act along the last axis.
Difference chains are translation invariant; chains containing a quotient are
additionally invariant under rotation and uniform scaling.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


class Projection(enum.Enum):
    REAL = "re"
    IMAG = "im"
    MODULUS = "mod"
    ANGLE = "ang"


PROJECTIONS = tuple(Projection)

# Step chains, written leftmost-applied-last: "QD" is Q after D.
STANDARD_CHAINS = ("D", "DD", "QD", "DQD", "QQD")

_SPEC_RE = re.compile(r"^C(\d+)\|([DQ]*)\|(re|im|mod|ang)$")


@dataclass(frozen=True)
class OperatorSpec:
    """A real-valued sequence operator: convolution length, step chain, projection.

    ``chain`` is a string over {D, Q} applied right to left; a nonempty chain
    must start with a difference (end with "D").  The empty chain projects the
    convolved values directly.
    """

    conv_len: int
    chain: str
    proj: Projection

    def __post_init__(self):
        if self.conv_len < 1:
            raise ValueError(f"conv_len must be >= 1, got {self.conv_len}")
        if any(ch not in "DQ" for ch in self.chain):
            raise ValueError(f"bad chain {self.chain!r}")
        if self.chain and not self.chain.endswith("D"):
            raise ValueError(f"chain {self.chain!r} must apply a difference first")

    @property
    def min_length(self) -> int:
        """Shortest input that yields exactly one output value."""
        return self.conv_len + len(self.chain)

    def spec_string(self) -> str:
        return f"C{self.conv_len}|{self.chain}|{self.proj.value}"

    @classmethod
    def parse(cls, text: str) -> "OperatorSpec":
        m = _SPEC_RE.match(text)
        if not m:
            raise ValueError(f"bad operator spec {text!r}")
        return cls(int(m.group(1)), m.group(2), Projection(m.group(3)))


def min_length(op: OperatorSpec) -> int:
    return op.min_length


def _as_complex(c) -> np.ndarray:
    return np.asarray(c, dtype=np.complex128)


def convolve(c, l: int) -> np.ndarray:
    """Sliding sums of l consecutive entries; l = 1 is the identity."""
    if l < 1:
        raise ValueError(f"convolution length must be >= 1, got {l}")
    arr = _as_complex(c)
    if arr.shape[-1] < l:
        return arr[..., :0]
    if l == 1:
        return arr.copy()
    return sliding_window_view(arr, l, axis=-1).sum(axis=-1)


def difference(c) -> np.ndarray:
    """Consecutive differences c_t - c_{t-1}; shortens the axis by one."""
    arr = _as_complex(c)
    if arr.shape[-1] < 2:
        return arr[..., :0]
    return arr[..., 1:] - arr[..., :-1]


def quotient(c) -> np.ndarray:
    """Consecutive quotients c_t / c_{t-1}; a zero denominator yields 0+0i."""
    arr = _as_complex(c)
    if arr.shape[-1] < 2:
        return arr[..., :0]
    num = arr[..., 1:]
    den = arr[..., :-1]
    out = np.zeros_like(num)
    np.divide(num, den, out=out, where=(den != 0))
    return out


_STEPS = {"D": difference, "Q": quotient}


def apply_chain(chain: str, c) -> np.ndarray:
    """Apply a D/Q chain, rightmost step first."""
    arr = _as_complex(c)
    for step in reversed(chain):
        arr = _STEPS[step](arr)
    return arr


def project(c, p: Projection) -> np.ndarray:
    """Elementwise transition to real numbers.

    The angle is the principal value in (-pi, pi]; the angle of 0 is 0.
    """
    arr = _as_complex(c)
    if p is Projection.REAL:
        return arr.real.copy()
    if p is Projection.IMAG:
        return arr.imag.copy()
    if p is Projection.MODULUS:
        return np.abs(arr)
    out = np.angle(arr)
    # atan2 of negative zeros gives +-pi; the angle of 0 is defined as 0
    out[arr == 0] = 0.0
    return out


def apply_operator(op: OperatorSpec, c) -> np.ndarray:
    """Full operator: project(chain(convolve(c))).

    Output length along the last axis is max(0, n - min_length + 1); inputs
    shorter than ``op.min_length`` give an empty result, not an error.
    """
    arr = _as_complex(c)
    if arr.shape[-1] < op.min_length:
        return np.zeros(arr.shape[:-1] + (0,), dtype=np.float64)
    return project(apply_chain(op.chain, convolve(arr, op.conv_len)), op.proj)

"""Array geometries and steering vectors for uniform linear and planar arrays.

All spacings are expressed in wavelengths, so no carrier frequency is ever
stored: a spacing of 0.5 means half-wavelength element pitch and the phase
of element k toward azimuth theta is -2*pi*d*k*sin(theta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ULA = "ula"
UPA = "upa"


@dataclass(frozen=True)
class ArrayGeometry:
    """Topology of a uniform antenna array.

    Parameters
    ----------
    kind : str
        ``"ula"`` or ``"upa"``.
    n_x : int
        Rows along x. For a ULA this is the total element count.
    n_y : int
        Columns along y (1 for a ULA).
    d_x : float
        Element spacing along x in wavelengths.
    d_y : float
        Element spacing along y in wavelengths (ignored for ULA).
    """

    kind: str
    n_x: int
    n_y: int = 1
    d_x: float = 0.5
    d_y: float = 0.5

    def __post_init__(self):
        if self.kind not in (ULA, UPA):
            raise ValueError(f"unknown array kind {self.kind!r}")
        if self.kind == ULA and self.n_y != 1:
            raise ValueError("a ULA has n_y == 1")
        if self.n_x < 1 or self.n_y < 1:
            raise ValueError("element counts must be positive")
        if self.n_x * self.n_y < 2:
            raise ValueError("an array needs at least 2 elements")
        if self.d_x <= 0 or (self.kind == UPA and self.d_y <= 0):
            raise ValueError("element spacings must be strictly positive")

    @property
    def n_elements(self) -> int:
        return self.n_x * self.n_y

    @classmethod
    def ula(cls, n: int, d: float = 0.5) -> "ArrayGeometry":
        """N-element uniform linear array with spacing d (wavelengths)."""
        return cls(ULA, n, 1, d, d)

    @classmethod
    def upa(cls, n_x: int, n_y: int, d_x: float = 0.5, d_y: float = 0.5) -> "ArrayGeometry":
        """n_x-by-n_y uniform planar array, row-major element order."""
        return cls(UPA, n_x, n_y, d_x, d_y)


@dataclass(frozen=True)
class Direction:
    """Propagation direction: azimuth ``theta`` and elevation ``phi`` in radians.

    Azimuth is stored canonically in [0, 2*pi); elevation must lie in
    [0, pi]. The in-plane ULA convention fixes phi = pi/2, so a single type
    serves both geometries.
    """

    theta: float
    phi: float = math.pi / 2

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))
        if not 0.0 <= self.phi <= math.pi:
            raise ValueError("elevation must lie in [0, pi]")


def steering_ula(geom: ArrayGeometry, theta) -> np.ndarray:
    """Steering vector of a ULA toward azimuth ``theta``.

    Element k carries exp(-1j * 2*pi * d * k * sin(theta)) with d in
    wavelengths. ``theta`` may be a scalar or an array; the element axis
    is last.

    Parameters
    ----------
    geom : ArrayGeometry
        Must have ``kind == "ula"``.
    theta : float or ndarray
        Azimuth angle(s) in radians.

    Returns
    -------
    ndarray
        Complex steering vector(s), shape ``theta.shape + (N,)``.
    """
    if geom.kind != ULA:
        raise ValueError("steering_ula requires a ULA geometry")
    theta = np.asarray(theta, dtype=float)
    k = np.arange(geom.n_x)
    phase = -2.0 * np.pi * geom.d_x * np.multiply.outer(np.sin(theta), k)
    return np.exp(1j * phase)


def steering_upa(geom: ArrayGeometry, phi, theta) -> np.ndarray:
    """3D steering vector of a UPA toward elevation ``phi``, azimuth ``theta``.

    Built as the Kronecker product of the per-axis vectors

        v_x[n] = exp(-1j * 2*pi * d_x * n * sin(phi) * cos(theta))
        v_y[m] = exp(-1j * 2*pi * d_y * m * sin(phi) * sin(theta))

    so the flat (row-major) element (n, m) sees the phase of the plane-wave
    path difference. The sign matches the ULA convention (negative
    exponent), i.e. the per-axis vectors are the conjugates of the
    positive-exponent form sometimes written for v_x and v_y.

    Parameters
    ----------
    geom : ArrayGeometry
        Must have ``kind == "upa"``.
    phi, theta : float
        Elevation and azimuth in radians.

    Returns
    -------
    ndarray
        Complex vector of length ``n_x * n_y``.
    """
    if geom.kind != UPA:
        raise ValueError("steering_upa requires a UPA geometry")
    sin_phi = math.sin(phi)
    nx = np.arange(geom.n_x)
    ny = np.arange(geom.n_y)
    v_x = np.exp(-2j * np.pi * geom.d_x * nx * sin_phi * math.cos(theta))
    v_y = np.exp(-2j * np.pi * geom.d_y * ny * sin_phi * math.sin(theta))
    return np.kron(v_x, v_y)


def steering(geom: ArrayGeometry, direction: Direction) -> np.ndarray:
    """Steering vector for either geometry at a :class:`Direction`."""
    if geom.kind == ULA:
        return steering_ula(geom, direction.theta)
    return steering_upa(geom, direction.phi, direction.theta)

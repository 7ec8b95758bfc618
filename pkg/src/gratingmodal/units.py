"""Units, grating geometry, gold permittivity data, and surface impedances.

Internal units are SI throughout (meters, rad/m); spectroscopic wavenumbers
in cm^-1 appear only at I/O boundaries.  The magnetic-field time convention
is e^{-i omega t}, so a lossy metal has Im(eps_m) >= 0 and the relative
surface impedance xi = 1/sqrt(eps_m) (principal branch) has Re(xi) >= 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources

import numpy as np

from .errors import TableRangeError

# k0 [rad/m] per k0 [cm^-1]: 2*pi/lambda[m] = 2*pi*100*(1/lambda[cm])
RAD_M_PER_CM = 200.0 * math.pi


class BoundaryCase(Enum):
    """Treatment of the metallic surfaces.

    P   perfect metal everywhere (Neumann condition, xi = 0)
    M0  perfect-metal walls, lossless impedance on horizontal surfaces
    M   perfect-metal walls, lossy impedance on horizontal surfaces
    R0  lossless impedance on every surface
    R   lossy impedance on every surface

    The lossless variants drop Im(eps_m) before taking 1/sqrt(eps_m).
    """

    P = "P"
    M0 = "M0"
    M = "M"
    R0 = "R0"
    R = "R"

    @property
    def wall_is_perfect(self) -> bool:
        return self in (BoundaryCase.P, BoundaryCase.M0, BoundaryCase.M)

    @property
    def neglects_loss(self) -> bool:
        return self in (BoundaryCase.M0, BoundaryCase.R0)

    @classmethod
    def parse(cls, label: str) -> "BoundaryCase":
        try:
            return cls(label.strip().upper().replace("₀", "0"))
        except ValueError:
            raise ValueError(
                f"unknown boundary case {label!r}; expected one of P, M0, M, R0, R"
            ) from None


@dataclass(frozen=True)
class Geometry:
    """Rectangular grating: groove width/period/depth [m] and incidence angle [rad]."""

    width: float
    period: float
    depth: float
    theta: float

    def __post_init__(self):
        if not 0.0 < self.width < self.period:
            raise ValueError(f"need 0 < width < period, got w={self.width}, d={self.period}")
        if self.depth <= 0.0:
            raise ValueError(f"depth must be positive, got {self.depth}")
        if abs(self.theta) >= math.pi / 2:
            raise ValueError(f"|theta| must be below pi/2, got {self.theta}")

    @property
    def aspect(self) -> float:
        """Aperture filling fraction w/d."""
        return self.width / self.period


def default_geometry() -> Geometry:
    """Groove width 0.75 um, period 1.75 um, depth 1.11 um, incidence 7.5 deg."""
    return Geometry(width=0.75e-6, period=1.75e-6, depth=1.11e-6, theta=math.radians(7.5))


@dataclass(frozen=True)
class Wavenumber:
    """Free-space wavenumber, stored in rad/m."""

    rad_per_m: float

    def __post_init__(self):
        if not self.rad_per_m > 0.0:
            raise ValueError(f"wavenumber must be positive, got {self.rad_per_m}")

    @classmethod
    def from_cm(cls, k_cm: float) -> "Wavenumber":
        if not k_cm > 0.0:
            raise ValueError(f"wavenumber must be positive, got {k_cm} cm^-1")
        return cls(RAD_M_PER_CM * k_cm)

    @property
    def per_cm(self) -> float:
        return self.rad_per_m / RAD_M_PER_CM


def wavenumber_from_cm(k_cm: float) -> Wavenumber:
    """Convert a spectroscopic wavenumber in cm^-1 to rad/m (factor 200*pi)."""
    return Wavenumber.from_cm(k_cm)


@dataclass(frozen=True)
class PermittivityTable:
    """Tabulated relative permittivity of the metal vs wavenumber in cm^-1.

    Nodes must be strictly increasing in k0 and obey the e^{-i omega t} sign
    convention Im(eps) >= 0.  Queries interpolate linearly (real and
    imaginary parts independently); out-of-range queries raise rather than
    extrapolate.
    """

    k0_cm: np.ndarray
    eps: np.ndarray
    source: str = ""

    def __post_init__(self):
        k = np.asarray(self.k0_cm, dtype=float)
        e = np.asarray(self.eps, dtype=complex)
        if k.ndim != 1 or k.size < 2 or e.shape != k.shape:
            raise ValueError("table needs matching 1-D k0 and eps arrays with >= 2 rows")
        if not np.all(np.diff(k) > 0):
            raise ValueError("table wavenumbers must be strictly increasing")
        if np.any(e.imag < 0):
            raise ValueError("Im(eps) must be >= 0 under the e^{-i omega t} convention")
        k.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "k0_cm", k)
        object.__setattr__(self, "eps", e)

    @classmethod
    def load(cls, path) -> "PermittivityTable":
        """Read a `k0_cm,eps_re,eps_im` CSV; `#` lines are comments."""
        ks, res, ims = [], [], []
        comments = []
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    comments.append(line.lstrip("# ").rstrip())
                    continue
                parts = [p.strip() for p in line.split(",")]
                if parts[0] == "k0_cm":
                    continue
                if len(parts) != 3:
                    raise ValueError(f"{path}: expected 3 columns, got {line!r}")
                ks.append(float(parts[0]))
                res.append(float(parts[1]))
                ims.append(float(parts[2]))
        source = comments[0] if comments else str(path)
        return cls(np.array(ks), np.array(res) + 1j * np.array(ims), source=source)

    def covers(self, k0: Wavenumber) -> bool:
        k = k0.per_cm
        return self.k0_cm[0] <= k <= self.k0_cm[-1]


@lru_cache(maxsize=1)
def bundled_gold_table() -> PermittivityTable:
    """Gold permittivity bundled with the package, spanning 400-7400 cm^-1."""
    with resources.as_file(resources.files("gratingmodal").joinpath("data/gold_eps.csv")) as p:
        return PermittivityTable.load(p)


def permittivity_at(table: PermittivityTable, k0: Wavenumber) -> complex:
    """Piecewise-linear interpolation of the table at k0; no extrapolation."""
    k = k0.per_cm
    if not table.covers(k0):
        raise TableRangeError(
            f"k0 = {k:.6g} cm^-1 outside table span "
            f"[{table.k0_cm[0]:.6g}, {table.k0_cm[-1]:.6g}] cm^-1"
        )
    re = float(np.interp(k, table.k0_cm, table.eps.real))
    im = float(np.interp(k, table.k0_cm, table.eps.imag))
    return complex(re, im)


def surface_impedance(eps_m: complex, case: BoundaryCase, surface: str = "wall") -> complex:
    """Relative surface impedance xi for one surface under a boundary case.

    surface is "wall" (vertical groove sides) or "horizontal" (top metal and
    groove bottom).  Perfect-metal surfaces give xi = 0; lossless variants
    use 1/sqrt(Re eps_m); lossy ones 1/sqrt(eps_m).  The principal square
    root keeps Re(sqrt(eps_m)) >= 0.
    """
    if surface not in ("wall", "horizontal"):
        raise ValueError(f"surface must be 'wall' or 'horizontal', got {surface!r}")
    if case is BoundaryCase.P:
        return 0j
    if surface == "wall" and case.wall_is_perfect:
        return 0j
    eps = complex(eps_m)
    if eps == 0:
        raise ValueError("eps_m must be nonzero")
    if case.neglects_loss:
        if eps.real >= 0:
            raise ValueError(
                f"lossless-metal impedance needs Re(eps_m) < 0, got {eps.real:.6g}"
            )
        return 1.0 / cmath.sqrt(complex(eps.real, 0.0))
    return 1.0 / cmath.sqrt(eps)


@dataclass(frozen=True)
class Impedance:
    """A surface impedance xi together with its reduced form xi_tilde = k0*w*xi."""

    xi: complex
    xi_tilde: complex

    @property
    def zeta(self) -> float:
        return self.xi_tilde.real

    @property
    def eta(self) -> float:
        return self.xi_tilde.imag


def reduced_impedance(xi: complex, k0: Wavenumber, width: float) -> Impedance:
    """Scale xi by k0*w, the form entering the wall eigenvalue equation."""
    return Impedance(xi=complex(xi), xi_tilde=complex(xi) * k0.rad_per_m * width)

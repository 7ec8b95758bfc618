"""Horizontal cavity eigenvalues mu_n for every wall treatment.

A groove of width w supports separable modes whose horizontal factor
psi_n(x) = (1/2)(-i)^n (e^{i mu_n k0 x} + sigma_n e^{-i mu_n k0 x}) must
satisfy the wall impedance condition u' -+ i k0 xi u = 0 at x = +-w/2.
Perfect-metal walls give mu_n = n pi / (k0 w) exactly.  Impedance walls
shift each eigenvalue to mu_n = (n pi + alpha_n)/(k0 w) where alpha_n
solves the reduced wall equation

    (n pi + alpha) tan(alpha/2) = -i xi_tilde,      xi_tilde = k0 w xi,

equivalent to the resonance form e^{i mu k0 w} = sigma (mu+xi)/(mu-xi)
with sigma_n = (-1)^n.  Lossless impedance walls (purely imaginary
xi_tilde) keep alpha real for n >= 1 and admit no fundamental root at all;
lossy walls move every root, including n = 0, into the complex plane.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import BracketError, NoFundamentalModeError, RootConvergenceError
from .units import (
    BoundaryCase,
    Geometry,
    PermittivityTable,
    Wavenumber,
    bundled_gold_table,
    permittivity_at,
    surface_impedance,
)

_PI = math.pi


class BranchConvention(Enum):
    """Sign choice for nu = sqrt(1 - mu^2).

    IM_NU_NON_POSITIVE normalizes evanescent vertical factors to order one
    at the groove aperture and is the default; IM_NU_NON_NEGATIVE is the
    textbook determination, which makes evanescent mode profiles (and the
    truncated system's conditioning) blow up with depth.
    """

    IM_NU_NON_NEGATIVE = "pos"
    IM_NU_NON_POSITIVE = "neg"

    @classmethod
    def parse(cls, label: str) -> "BranchConvention":
        try:
            return cls(label.strip().lower())
        except ValueError:
            raise ValueError(f"unknown branch {label!r}; expected 'neg' or 'pos'") from None


DEFAULT_BRANCH = BranchConvention.IM_NU_NON_POSITIVE


@dataclass(frozen=True)
class CavityMode:
    """One solved horizontal eigenmode at a given wavenumber.

    mu and nu satisfy mu^2 + nu^2 = 1; alpha = mu*k0*w - n*pi is the offset
    from the perfect-metal eigenvalue; sigma = (-1)^n relates the two
    travelling-wave amplitudes; residual is |reduced wall equation| at alpha.
    """

    n: int
    alpha: complex
    mu: complex
    nu: complex
    sigma: int
    residual: float
    k0: Wavenumber
    case: BoundaryCase


def _tan_half(alpha: complex) -> complex:
    # series below |alpha| = 1e-4: tan(a/2) = a/2 + a^3/24 + a^5/240 + ...
    if abs(alpha) < 1e-4:
        return alpha / 2 + alpha**3 / 24 + alpha**5 / 240
    return cmath.tan(alpha / 2)


def wall_equation(n: int, alpha: complex, xi_tilde: complex) -> complex:
    """Reduced wall equation F(alpha) = (n pi + alpha) tan(alpha/2) + i xi_tilde."""
    return (n * _PI + alpha) * _tan_half(alpha) + 1j * xi_tilde


def wall_equation_derivative(n: int, alpha: complex) -> complex:
    c = cmath.cos(alpha / 2)
    return _tan_half(alpha) + (n * _PI + alpha) / (2 * c * c)


def resonance_residual(n: int, alpha: complex, xi_tilde: complex) -> float:
    """Defect of the resonance form e^{i mu k0 w} = sigma (mu+xi)/(mu-xi).

    Evaluated in reduced variables: e^{i(n pi + alpha)} against
    (-1)^n (n pi + alpha + xi_tilde)/(n pi + alpha - xi_tilde).
    """
    a = n * _PI + alpha
    denom = a - xi_tilde
    if denom == 0:
        return math.inf
    return abs(cmath.exp(1j * a) - (-1) ** n * (a + xi_tilde) / denom)


def alpha_series(n: int, xi_tilde: complex) -> complex:
    """Asymptotic eigenvalue offset for n >= 1, in powers of xi_tilde/n.

    Five terms; the remainder is O((xi_tilde/n)^6), so the result seeds
    Newton refinement safely for bounded xi_tilde and serves directly as
    the root for large n.
    """
    if n < 1:
        raise ValueError("alpha_series needs n >= 1; use alpha0_series for the fundamental")
    z = xi_tilde / n
    pi = _PI
    c1 = -2j / pi
    c2 = 4 / (n * pi**3)
    c3 = 16j / (n**2 * pi**5) - 2j / (3 * pi**3)
    c4 = -(80 / (n**3 * pi**7) - 16 / (3 * n * pi**5))
    c5 = -(448j / (n**4 * pi**9) - 40j / (n**2 * pi**7) + 2j / (5 * pi**5))
    return z * (c1 + z * (c2 + z * (c3 + z * (c4 + z * c5))))


def alpha0_series(xi_tilde: complex) -> complex:
    """Fundamental eigenvalue offset as an odd series in chi = sqrt(xi_tilde).

    alpha_0 = (1-i)(chi + (i/12)chi^3 - (11/1440)chi^5 - (17i/40320)chi^7
    - (281/9676800)chi^9); the principal square root is taken.  Valid for
    genuinely complex xi_tilde; a purely imaginary xi_tilde with negative
    imaginary part has no real root, so the lossless-wall case has no
    fundamental mode (see solve_modes_real).
    """
    if xi_tilde == 0:
        return 0j
    chi = cmath.sqrt(xi_tilde)
    c = chi * chi
    inner = chi * (
        1 + c * (1j / 12 + c * (-11 / 1440 + c * (-17j / 40320 + c * (-281 / 9676800))))
    )
    return (1 - 1j) * inner


def refine_root(
    n: int,
    xi_tilde: complex,
    seed: complex,
    tol: float = 1e-13,
    max_iter: int = 50,
    resonance_tol: float = 1e-10,
) -> tuple[complex, float]:
    """Newton-refine a wall-equation root near the seed; return (alpha, |F|).

    The analytic derivative tan(a/2) + (n pi + a)/(2 cos^2(a/2)) gives
    quadratic convergence from series seeds.  A result farther than pi/2
    from the seed has hopped to a neighbouring branch and is rejected, as
    is any converged root whose resonance-form defect exceeds
    resonance_tol.
    """
    alpha = complex(seed)
    f = wall_equation(n, alpha, xi_tilde)
    for _ in range(max_iter):
        if abs(f) < tol:
            break
        step = f / wall_equation_derivative(n, alpha)
        alpha -= step
        f = wall_equation(n, alpha, xi_tilde)
    if abs(f) >= tol:
        raise RootConvergenceError(
            f"mode n={n}: |F|={abs(f):.3e} after {max_iter} iterations",
            n=n, last=alpha, residual=abs(f),
        )
    if abs(alpha - seed) > _PI / 2:
        raise RootConvergenceError(
            f"mode n={n}: refined root drifted {abs(alpha - seed):.3f} from seed",
            n=n, last=alpha, residual=abs(f),
        )
    res = resonance_residual(n, alpha, xi_tilde)
    if res > resonance_tol:
        raise RootConvergenceError(
            f"mode n={n}: resonance-form defect {res:.3e} exceeds {resonance_tol:.1e}",
            n=n, last=alpha, residual=res,
        )
    return alpha, abs(f)


def solve_modes_real(
    n_max: int,
    xi_tilde: complex,
    k0w: float,
    *,
    n_min: int = 1,
    tol: float = 1e-13,
) -> list[float]:
    """Real eigenvalues mu_n, n = n_min..n_max, for purely imaginary xi_tilde.

    With xi_tilde = i*eta the reduced wall equation becomes the real
    equation (n pi + alpha) tan(alpha/2) = eta, solved by bisection on
    alpha in (-pi, 0] for eta < 0 (and mirrored for eta > 0).  n = 0 is
    rejected: alpha tan(alpha/2) >= 0 on (-pi, pi), so no real fundamental
    exists for eta < 0.
    """
    if abs(xi_tilde.real) > 1e-12 * max(1.0, abs(xi_tilde)):
        raise ValueError(f"real solver needs purely imaginary xi_tilde, got {xi_tilde}")
    if n_min == 0:
        raise NoFundamentalModeError(
            "no real fundamental mode: alpha*tan(alpha/2) is non-negative on (-pi, pi) "
            "while the lossless wall impedance requires it negative"
        )
    eta = xi_tilde.imag
    out = []
    for n in range(n_min, n_max + 1):
        if eta == 0.0:
            out.append(n * _PI / k0w)
            continue
        def f(a, n=n):
            return (n * _PI + a) * math.tan(a / 2) - eta
        delta = 1e-12
        lo, hi = (-_PI + delta, 0.0) if eta < 0 else (0.0, _PI - delta)
        flo, fhi = f(lo), f(hi)
        if flo == 0.0:
            out.append((n * _PI + lo) / k0w)
            continue
        if fhi == 0.0:
            out.append((n * _PI + hi) / k0w)
            continue
        if flo * fhi > 0:
            raise BracketError(
                f"mode n={n}: no sign change on ({lo:.6f}, {hi:.6f}) for eta={eta:.6g}",
                n=n,
            )
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm = f(mid)
            if abs(fm) < tol or hi - lo < 1e-15:
                break
            if flo * fm <= 0:
                hi, fhi = mid, fm
            else:
                lo, flo = mid, fm
        out.append((n * _PI + 0.5 * (lo + hi)) / k0w)
    return out


def nu_from_mu(mu: complex, branch: BranchConvention = DEFAULT_BRANCH) -> complex:
    """Vertical reduced wavenumber nu = sqrt(1 - mu^2) on the requested branch."""
    nu = cmath.sqrt(1 - complex(mu) * complex(mu))
    if branch is BranchConvention.IM_NU_NON_POSITIVE and nu.imag > 0:
        nu = -nu
    elif branch is BranchConvention.IM_NU_NON_NEGATIVE and nu.imag < 0:
        nu = -nu
    if nu.imag == 0 and nu.real < 0:
        nu = -nu
    return nu


def has_fundamental_mode(case: BoundaryCase) -> bool:
    """Every case except lossless impedance walls carries an n = 0 mode."""
    return case is not BoundaryCase.R0


def mode_indices(case: BoundaryCase, n_modes: int) -> range:
    """Indices of the first n_modes retained modes: 0..N-1, or 1..N without a fundamental."""
    return range(1, n_modes + 1) if not has_fundamental_mode(case) else range(n_modes)


def solve_mode_family(
    case: BoundaryCase,
    geometry: Geometry,
    k0: Wavenumber,
    n_max: int,
    branch: BranchConvention = DEFAULT_BRANCH,
    table: PermittivityTable | None = None,
) -> list[CavityMode]:
    """Solve modes n = 0..n_max (1..n_max without a fundamental) at one k0.

    Perfect walls (P, M0, M) are explicit; lossless impedance walls (R0)
    use real bisection; lossy walls (R) seed Newton with the asymptotic
    series.  The table supplies eps_m for the impedance cases; None selects
    the bundled gold data.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    k0w = k0.rad_per_m * geometry.width
    modes: list[CavityMode] = []

    def finish(n, alpha, mu, residual):
        return CavityMode(
            n=n, alpha=complex(alpha), mu=complex(mu), nu=nu_from_mu(mu, branch),
            sigma=(-1) ** n, residual=float(residual), k0=k0, case=case,
        )

    if case.wall_is_perfect:
        for n in range(n_max + 1):
            modes.append(finish(n, 0j, n * _PI / k0w, 0.0))
        return modes

    if table is None:
        table = bundled_gold_table()
    eps = permittivity_at(table, k0)
    xi = surface_impedance(eps, case, "wall")
    xi_tilde = xi * k0w

    if case is BoundaryCase.R0:
        mus = solve_modes_real(n_max, xi_tilde, k0w)
        for n, mu in zip(range(1, n_max + 1), mus):
            alpha = mu * k0w - n * _PI
            modes.append(finish(n, alpha, mu, abs(wall_equation(n, alpha, xi_tilde))))
        return modes

    for n in range(n_max + 1):
        seed = alpha0_series(xi_tilde) if n == 0 else alpha_series(n, xi_tilde)
        alpha, residual = refine_root(n, xi_tilde, seed)
        modes.append(finish(n, alpha, (n * _PI + alpha) / k0w, residual))
    return modes

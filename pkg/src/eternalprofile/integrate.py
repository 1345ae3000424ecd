"""Cauchy-problem integrator for the profile ODE in F = f^m form.

The profile equation is integrated from a series launch at xi = delta0,

    F'' = -(N-1)/xi F' - alpha F^{1/m} + (beta/m) xi F^{(1-m)/m} F'
          + xi^sigma F^{q/m},

with F(0) = 1, F'(0) = 0 and F''(0) = -2 beta / ((m-1) N).  Integration
stops at one of three events: f = F^{1/m} falls to the contact threshold,
f' turns non-negative, or the horizon cap is reached.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ProfileError
from .model import Exponents, Params
from .solution import Classification, LimitProfile, ProfileSolution, StopReason


@dataclass(frozen=True)
class IntegratorOptions:
    """Tolerances and launch/stop configuration for integrate_profile.

    ``contact_eps`` is the stopping threshold in f units.  ``atol`` is
    deliberately far below ``contact_eps ** m`` so the contact event is
    resolved in relative terms.
    """

    rtol: float = 1e-10
    atol: float = 1e-16
    delta0: float = 1e-6
    contact_eps: float = 1e-7
    horizon: Optional[float] = None     # None: derived from the limit profile
    horizon_factor: float = 50.0
    max_step: float = np.inf
    #: stop when f' turns non-negative; disable to follow growing
    #: solutions (e.g. the small-beta regime) out to the horizon
    slope_event: bool = True

    def tightened(self, factor: float = 1e-2) -> "IntegratorOptions":
        return replace(self, rtol=self.rtol * factor, atol=self.atol * factor)


@dataclass(frozen=True)
class ClassifyTolerances:
    """Thresholds mapping stop events to classifications.

    ``slope_tol`` is in F' units and is rescaled by xi0^sigma at contact.
    A slope event with f within ``graze_factor * contact_eps`` of zero is
    treated as a tangential (CandidateB) contact.
    """

    slope_tol: float = 1e-4
    graze_factor: float = 10.0


def series_start(
    p: Params, e: Exponents, delta0: float
) -> Tuple[float, float, float]:
    """Series launch state (xi, F, F') at xi = delta0.

    Keeps the quadratic Taylor term plus the absorption correction
    xi^{sigma+2} / ((sigma+2)(sigma+N)); the latter's derivative decays
    only like delta0^{sigma+1} and would otherwise dominate the launch
    error whenever sigma is small.
    """
    sigma, N = p.sigma, p.N
    Fsec0 = -2.0 * e.beta / ((p.m - 1.0) * N)
    cs = 1.0 / ((sigma + 2.0) * (sigma + N))
    F0 = 1.0 + 0.5 * Fsec0 * delta0**2 + cs * delta0 ** (sigma + 2.0)
    Fp0 = Fsec0 * delta0 + (sigma + 2.0) * cs * delta0 ** (sigma + 1.0)
    return delta0, F0, Fp0


def _make_rhs(p: Params, e: Exponents, f_floor: float):
    """Profile RHS with the nonlinear terms frozen below ``f_floor``.

    The freeze keeps the field Lipschitz when trial stages overshoot
    below the contact threshold; the frozen region is never part of the
    accepted solution.
    """
    m, q, N, sigma = p.m, p.q, p.N, p.sigma
    alpha, beta = e.alpha, e.beta
    F_floor = f_floor**m
    inv_m = 1.0 / m
    Nm1 = N - 1

    def rhs(xi, y):
        F, Fp = y
        Fc = F if F > F_floor else F_floor
        f = Fc**inv_m
        fp = Fp * f / (m * Fc)    # f' = F' F^{(1-m)/m} / m
        Fpp = -alpha * f + beta * xi * fp + xi**sigma * f**q
        if Nm1:
            Fpp -= Nm1 / xi * Fp
        return (Fp, Fpp)

    return rhs


def integrate_profile(
    p: Params,
    e: Exponents,
    opts: IntegratorOptions = IntegratorOptions(),
    tol: ClassifyTolerances = ClassifyTolerances(),
) -> ProfileSolution:
    """Integrate the profile Cauchy problem and classify the stop event."""
    delta0 = opts.delta0
    xi_start, F0, Fp0 = series_start(p, e, delta0)
    horizon = opts.horizon
    if horizon is None:
        horizon = opts.horizon_factor * absorption_scale(p)
    F_contact = opts.contact_eps**p.m

    def ev_contact(xi, y):
        return y[0] - F_contact

    ev_contact.terminal = True
    ev_contact.direction = -1

    def ev_slope(xi, y):
        return y[1]

    ev_slope.terminal = True
    ev_slope.direction = 1

    with np.errstate(all="ignore"):
        sol = solve_ivp(
            _make_rhs(p, e, 0.1 * opts.contact_eps),
            (xi_start, horizon),
            [F0, Fp0],
            method="DOP853",
            rtol=opts.rtol,
            atol=opts.atol,
            max_step=opts.max_step,
            events=(
                [ev_contact, ev_slope]
                if opts.slope_event
                else [ev_contact]
            ),
            dense_output=True,
        )

    if sol.status == 1:
        stop = (
            StopReason.CONTACT_ZERO
            if len(sol.t_events[0])
            else StopReason.SLOPE_SIGN_CHANGE
        )
    elif sol.status == 0:
        stop = StopReason.HORIZON_REACHED
    else:
        stop = StopReason.STEP_FAILURE

    grid = sol.t
    F_values = sol.y[0]
    Fp_values = sol.y[1]
    odesol = sol.sol
    c2 = -e.beta / ((p.m - 1.0) * p.N)
    sg = p.sigma
    cs = 1.0 / ((sg + 2.0) * (sg + p.N))

    def dense(xi):
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        F = np.empty_like(xi)
        Fp = np.empty_like(xi)
        small = xi < delta0
        xs = xi[small]
        F[small] = 1.0 + c2 * xs**2 + cs * xs ** (sg + 2.0)
        Fp[small] = 2.0 * c2 * xs + (sg + 2.0) * cs * xs ** (sg + 1.0)
        if odesol is not None and (~small).any():
            vals = odesol(xi[~small])
            F[~small] = vals[0]
            Fp[~small] = vals[1]
        return F, Fp

    prof = ProfileSolution(
        params=p,
        exps=e,
        grid=grid,
        F_values=F_values,
        Fprime_values=Fp_values,
        xi0=None,
        xi1=None,
        xi_max=float(grid[-1]),
        classification=Classification.UNDETERMINED,
        stop_reason=stop,
        contact_eps=opts.contact_eps,
        delta0=delta0,
        dense=dense,
    )
    return _attach_events(prof, tol)


def _attach_events(
    prof: ProfileSolution, tol: ClassifyTolerances
) -> ProfileSolution:
    """Fill xi0/xi1 and the classification from the stop event."""
    cls = classify_beta(prof, tol)
    end = float(prof.grid[-1])
    xi0 = xi1 = None
    if prof.stop_reason is StopReason.CONTACT_ZERO:
        xi0 = xi1 = end
    elif prof.stop_reason is StopReason.SLOPE_SIGN_CHANGE:
        xi1 = end
        if cls is Classification.CANDIDATE_B:
            xi0 = end
    return replace(prof, xi0=xi0, xi1=xi1, classification=cls)


def classify_beta(
    sol: ProfileSolution, tol: ClassifyTolerances = ClassifyTolerances()
) -> Classification:
    """Map the stop event of ``sol`` to ClassA / ClassC / CandidateB."""
    sigma = sol.params.sigma
    if sol.stop_reason is StopReason.CONTACT_ZERO:
        xi0 = float(sol.grid[-1])
        bound = tol.slope_tol * xi0**sigma
        Fp = float(sol.Fprime_values[-1])
        if Fp < -bound:
            return Classification.CLASS_A
        if abs(Fp) <= bound:
            return Classification.CANDIDATE_B
        return Classification.UNDETERMINED
    if sol.stop_reason is StopReason.SLOPE_SIGN_CHANGE:
        f_end = float(sol.f_values[-1])
        if f_end <= tol.graze_factor * sol.contact_eps:
            return Classification.CANDIDATE_B
        return Classification.CLASS_C
    return Classification.UNDETERMINED


def interface_slope_integral(sol: ProfileSolution, n: int = 4097) -> float:
    """F'(xi0) from the integral identity

        F'(xi0) = xi0^{1-N} int_0^{xi0} s^{N-1} [s^sigma f^q - (alpha+N beta) f] ds,

    evaluated by composite Simpson quadrature on the dense output plus the
    closed-form contribution of the series launch segment [0, delta0].
    """
    if sol.xi0 is None:
        raise ProfileError("interface_slope_integral requires a finite xi0")
    p, e = sol.params, sol.exps
    N, sigma = p.N, p.sigma
    coef = e.alpha + N * e.beta
    end = float(sol.grid[-1])
    xi = np.linspace(sol.delta0, end, n)
    f = sol.eval_f(xi)
    integrand = xi ** (N - 1) * (xi**sigma * f**p.q - coef * f)
    from scipy.integrate import simpson

    total = simpson(integrand, x=xi)
    # launch segment with f ~ f0
    d0 = sol.delta0
    total += sol.f0**p.q * d0 ** (N + sigma) / (N + sigma)
    total -= coef * sol.f0 * d0**N / N
    return float(sol.xi0 ** (1 - N) * total)


def integrate_limit_profile(
    p: Params,
    horizon: float,
    guard: float = 1e12,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> LimitProfile:
    """Solve the beta -> 0 limit problem H'' + (N-1)/xi H' = xi^sigma H^{q/m}.

    H is strictly increasing; integration stops early if H reaches the
    overflow ``guard``.
    """
    if not horizon > 0:
        raise ProfileError(f"horizon must be > 0, got {horizon}")
    m, q, N, sigma = p.m, p.q, p.N, p.sigma
    delta0 = 1e-8
    # near the origin: H ~ 1 + xi^{sigma+2} / ((sigma+2)(N+sigma))
    c = 1.0 / ((sigma + 2.0) * (N + sigma))
    H0 = 1.0 + c * delta0 ** (sigma + 2.0)
    Hp0 = c * (sigma + 2.0) * delta0 ** (sigma + 1.0)

    def rhs(xi, y):
        H, Hp = y
        Hpp = xi**sigma * max(H, 0.0) ** (q / m)
        if N > 1:
            Hpp -= (N - 1) / xi * Hp
        return (Hp, Hpp)

    def ev_guard(xi, y):
        return y[0] - guard

    ev_guard.terminal = True
    ev_guard.direction = 1

    sol = solve_ivp(
        rhs,
        (delta0, horizon),
        [H0, Hp0],
        method="DOP853",
        rtol=rtol,
        atol=atol,
        events=[ev_guard],
        dense_output=True,
    )
    odesol = sol.sol

    def dense(xi):
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        H = np.empty_like(xi)
        Hp = np.empty_like(xi)
        small = xi < delta0
        H[small] = 1.0 + c * xi[small] ** (sigma + 2.0)
        Hp[small] = c * (sigma + 2.0) * xi[small] ** (sigma + 1.0)
        if (~small).any():
            vals = odesol(xi[~small])
            H[~small] = vals[0]
            Hp[~small] = vals[1]
        return H, Hp

    return LimitProfile(
        params=p,
        grid=sol.t,
        H_values=sol.y[0],
        Hprime_values=sol.y[1],
        horizon=float(sol.t[-1]),
        dense=dense,
    )


@functools.lru_cache(maxsize=64)
def _absorption_scale(m: float, q: float, N: int) -> float:
    from .model import make_params

    p = make_params(m, q, N)
    prof = integrate_limit_profile(p, horizon=1e4, guard=2.0, rtol=1e-8, atol=1e-10)
    return prof.horizon


def absorption_scale(p: Params) -> float:
    """Length scale at which absorption doubles the limit profile.

    Used as the unit for the integration horizon cap: far from beta*,
    profiles resolve their fate within a few of these lengths.
    """
    return _absorption_scale(p.m, p.q, p.N)

"""Wavefunctions of the two- and four-photon squeezed states.

All states are eigenvectors of ``b = mu*a + nu*ad + gamma*F(X_i)`` with
``mu = cosh r``, ``nu = sinh r`` and eigenvalue ``beta = mu*alpha + nu*conj(alpha)``.
In the representation where ``X_i`` is diagonal the eigenvalue equation is
first order and integrates to a Gaussian envelope times a phase carrying
``G(x) = int_0^x F``.

Sign conventions (derived from the eigenvalue equation with
``<x1|x2> = exp(i x1 x2)/sqrt(2 pi)``):

==========  ===========  ============  ===========  ====================
variant     sigma        centre        linear phase  phase of G
==========  ===========  ============  ===========  ====================
I  (X1)     exp(-2r)     sqrt2*alpha1  sqrt2*alpha2  -sqrt2 exp(r) gt
II (X2)     exp(2r)      sqrt2*alpha2  -sqrt2*alpha1 +sqrt2 exp(-r) gt
==========  ===========  ============  ===========  ====================
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .canonical import NonlinearitySpec, Variant
from .numerics import Grid, SampledWavefunction, airy_ai, representation_transform
from .numerics.transform import check_decay

SQRT2 = math.sqrt(2.0)

MIN_POINTS = 4096
DEFAULT_HALF_WIDTH = 12.0
# Gaussian amplitude exp(-w^2/2) at w = 9 standard widths is ~2.6e-18
ENVELOPE_WIDTHS = 9.0


class Family(enum.Enum):
    TPSS = "tpss"
    FPSS_I = "fpss1"
    FPSS_II = "fpss2"
    GENERIC = "generic"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, Family):
            return value
        text = str(value).strip().lower().replace("-", "_")
        aliases = {
            "tpss": cls.TPSS,
            "fpss1": cls.FPSS_I,
            "fpss_i": cls.FPSS_I,
            "fpss2": cls.FPSS_II,
            "fpss_ii": cls.FPSS_II,
            "generic": cls.GENERIC,
        }
        if text not in aliases:
            raise ValueError(f"unknown state family {value!r}")
        return aliases[text]


def alpha_from_beta(beta: complex, r: float) -> complex:
    """Invert ``beta = exp(r) alpha1 + i exp(-r) alpha2``."""
    beta = complex(beta)
    return complex(beta.real * math.exp(-r), beta.imag * math.exp(r))


def beta_from_alpha(alpha: complex, r: float) -> complex:
    alpha = complex(alpha)
    return math.cosh(r) * alpha + math.sinh(r) * alpha.conjugate()


@dataclass(frozen=True)
class StateParams:
    family: Family
    r: float
    gamma_tilde: float = 0.0
    alpha: complex = 0j
    F: NonlinearitySpec | None = None
    variant: Variant | None = None

    def __post_init__(self):
        fam = Family.parse(self.family)
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "alpha", complex(self.alpha))
        if self.gamma_tilde < 0:
            raise ValueError("gamma_tilde must be >= 0")
        if fam is Family.TPSS:
            if self.gamma_tilde != 0:
                raise ValueError("the TPSS has gamma_tilde = 0")
            object.__setattr__(self, "F", NonlinearitySpec.zero(1))
            object.__setattr__(self, "variant", Variant.I)
        elif fam is Family.FPSS_I:
            object.__setattr__(self, "F", NonlinearitySpec.monomial(1, 2))
            object.__setattr__(self, "variant", Variant.I)
        elif fam is Family.FPSS_II:
            object.__setattr__(self, "F", NonlinearitySpec.monomial(2, 2))
            object.__setattr__(self, "variant", Variant.II)
        else:
            if self.F is None:
                raise ValueError("the generic family needs F")
            v = Variant(self.F.quadrature_index)
            if self.variant is not None and Variant.parse(self.variant) is not v:
                raise ValueError("variant does not match the quadrature of F")
            object.__setattr__(self, "variant", v)

    @classmethod
    def from_beta(cls, family, r: float, gamma_tilde: float, beta: complex, **kw) -> "StateParams":
        return cls(family, r, gamma_tilde, alpha_from_beta(beta, r), **kw)

    @property
    def beta(self) -> complex:
        return beta_from_alpha(self.alpha, self.r)

    @property
    def mu(self) -> float:
        return math.cosh(self.r)

    @property
    def nu(self) -> float:
        return math.sinh(self.r)

    @property
    def gamma(self) -> complex:
        return 1j * self.gamma_tilde if self.variant is Variant.I else complex(self.gamma_tilde)

    def with_(self, **changes) -> "StateParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        b = self.beta
        return {
            "family": self.family.value,
            "r": self.r,
            "gamma_tilde": self.gamma_tilde,
            "alpha": [self.alpha.real, self.alpha.imag],
            "beta": [b.real, b.imag],
            "F": self.F.format(),
            "variant": self.variant.name,
        }


@dataclass(frozen=True)
class NativeRepData:
    """Envelope and phase data of the closed-form state in its native representation."""

    sigma: float
    x0: float
    c: float
    r_i: float
    gamma_eff: float
    phase_scale: float  # multiplies G(x) in the phase
    quadrature_index: int = 1

    @property
    def representation(self) -> str:
        return f"X{self.quadrature_index}"


def native_rep_data(params: StateParams, convention: str = "derived") -> NativeRepData:
    """Closed-form data for the native representation.

    ``convention="printed"`` reproduces the literal signs ``x2_0 = -sqrt2 alpha2``
    and ``+sqrt2 e^{r_i} gt`` for both variants; it exists so tests can show
    which signs survive the cross-representation check.
    """
    a1, a2 = params.alpha.real, params.alpha.imag
    g = params.gamma_tilde
    if params.variant is Variant.I:
        r_i = params.r
        sign_g = -1.0 if convention == "derived" else 1.0
        return NativeRepData(math.exp(-2 * r_i), SQRT2 * a1, SQRT2 * a2, r_i, g, sign_g * SQRT2 * math.exp(r_i) * g, 1)
    r_i = -params.r
    x0 = SQRT2 * a2 if convention == "derived" else -SQRT2 * a2
    return NativeRepData(math.exp(-2 * r_i), x0, -SQRT2 * a1, r_i, g, SQRT2 * math.exp(r_i) * g, 2)


def _native_rep(params: StateParams) -> str:
    return "X1" if params.variant is Variant.I else "X2"


# grids


def _phase_slope(params: StateParams, x: np.ndarray, data: NativeRepData) -> np.ndarray:
    return data.c + data.phase_scale * params.F.value(x)


def native_grid(params: StateParams, min_points: int = MIN_POINTS) -> Grid:
    """Grid for the closed-form state in its native representation."""
    data = native_rep_data(params)
    w = ENVELOPE_WIDTHS * math.sqrt(data.sigma)
    lo = min(data.x0 - w, -DEFAULT_HALF_WIDTH)
    hi = max(data.x0 + w, DEFAULT_HALF_WIDTH)
    xs = np.linspace(data.x0 - w, data.x0 + w, 2001)
    kmax = float(np.max(np.abs(_phase_slope(params, xs, data)))) + 3.0 / math.sqrt(data.sigma)
    return Grid.with_spacing(lo, hi, math.pi / (2.0 * (kmax + 16.0)), min_points)


def x1_grid(params: StateParams, min_points: int = MIN_POINTS) -> Grid:
    """X1 grid wide and fine enough for the state in the X1 representation."""
    if params.variant is Variant.I:
        return native_grid(params, min_points)
    data = native_rep_data(params)
    w = ENVELOPE_WIDTHS * math.sqrt(data.sigma)
    ps = np.linspace(data.x0 - w, data.x0 + w, 4001)
    # stationary phase: x1 = -(d/dp) phase
    xs = -_phase_slope(params, ps, data)
    pad = ENVELOPE_WIDTHS * math.exp(-params.r) + 2.0
    lo = min(float(xs.min()) - pad, -DEFAULT_HALF_WIDTH)
    hi = max(float(xs.max()) + pad, DEFAULT_HALF_WIDTH)
    kmax = float(np.max(np.abs(ps)))
    return Grid.with_spacing(lo, hi, math.pi / (2.0 * (kmax + 16.0)), min_points)


def _transform_source_grid(params: StateParams, target: Grid, min_points: int = MIN_POINTS) -> Grid:
    """Native X2 grid whose spacing resolves the kernel over ``target``."""
    base = native_grid(params, min_points)
    reach = max(abs(target.x_min), abs(target.x_max))
    dx = min(base.dx, math.pi / (2.0 * (reach + 16.0)))
    return Grid.with_spacing(base.x_min, base.x_max, dx, min_points)


# wavefunctions


def _normalized(grid: Grid, values: np.ndarray, rep: str) -> SampledWavefunction:
    return SampledWavefunction(grid, values, rep).normalized().phase_fixed()


def psi_native(params: StateParams, grid: Grid | None = None) -> SampledWavefunction:
    """Closed-form eigenstate sampled in the representation where F's quadrature is diagonal."""
    data = native_rep_data(params)
    grid = grid or native_grid(params)
    x = grid.points
    w = ENVELOPE_WIDTHS * math.sqrt(data.sigma)
    if grid.x_min > data.x0 - 0.9 * w or grid.x_max < data.x0 + 0.9 * w:
        raise ValueError(
            f"grid [{grid.x_min:.4g}, {grid.x_max:.4g}] too narrow for the envelope around {data.x0:.4g}"
        )
    envelope = -((x - data.x0) ** 2) / (2.0 * data.sigma)
    phase = data.c * x + data.phase_scale * params.F.antiderivative(x)
    amp = (math.pi * data.sigma) ** -0.25 * np.exp(envelope + 1j * phase)
    return _normalized(grid, amp, _native_rep(params))


def psi_tpss(r: float, beta: complex, grid: Grid | None = None) -> SampledWavefunction:
    return psi_native(StateParams.from_beta(Family.TPSS, r, 0.0, beta), grid)


def psi_fpss1(params: StateParams, grid: Grid | None = None) -> SampledWavefunction:
    """Four-photon state with F = X1^2: Gaussian density, cubic phase."""
    if params.family is not Family.FPSS_I:
        raise ValueError("psi_fpss1 needs the FPSS_I family")
    return psi_native(params, grid)


@dataclass(frozen=True)
class AiryFormData:
    """``psi(x) = N^{-1/2} exp(k x) Ai[(l x + m) / l^{2/3}]``.

    Constants follow from the X1-representation eigenvalue equation
    ``-gt psi'' + e^{-r}/sqrt2 psi' + (e^{r}/sqrt2 x - beta) psi = 0``.
    """

    l: float
    m: float
    k: float
    log_N: float

    @property
    def N(self) -> float:
        return math.exp(self.log_N)

    @classmethod
    def from_params(cls, r: float, gamma_tilde: float, beta: float) -> "AiryFormData":
        g = gamma_tilde
        k = math.exp(-r) / (2.0 * SQRT2 * g)
        l = math.exp(r) / (SQRT2 * g)
        m = k * k - beta / g
        return cls(l, m, k, float("nan"))


def _airy_log_amplitude(form: AiryFormData, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(E, A)`` with ``psi = exp(E) * A`` to dodge overflow."""
    cube = form.l ** (1.0 / 3.0)
    y = cube * (x + form.m / form.l)
    A = airy_ai(y, scaled=True)
    E = form.k * x - np.where(y > 0, 2.0 / 3.0 * np.clip(y, 0.0, None) ** 1.5, 0.0)
    return E, A


def psi_fpss2_airy(params: StateParams, grid: Grid | None = None) -> SampledWavefunction:
    """Four-photon state with F = X2^2 from its closed Airy form in the X1 representation."""
    if params.family is not Family.FPSS_II:
        raise ValueError("psi_fpss2_airy needs the FPSS_II family")
    beta = params.beta
    if abs(beta.imag) > 1e-12 * max(1.0, abs(beta)):
        raise ValueError("the Airy form needs real beta; use psi_fpss2_transform for complex beta")
    if params.gamma_tilde == 0:
        raise ValueError("the Airy form is degenerate at gamma_tilde = 0; use the TPSS")
    grid = grid or x1_grid(params)
    form = AiryFormData.from_params(params.r, params.gamma_tilde, beta.real)
    x = grid.points
    E, A = _airy_log_amplitude(form, x)
    shift = float(np.max(E[np.abs(A) > 0])) if np.any(np.abs(A) > 0) else 0.0
    vals = np.exp(E - shift) * A
    dens = vals**2
    if max(dens[0], dens[-1]) > 1e-14 * dens.max():
        raise ValueError("grid window truncates the Airy state; widen it")
    norm = float(np.sum(dens) * grid.dx)
    form = replace(form, log_N=math.log(norm) + 2.0 * shift)
    psi = _normalized(grid, vals.astype(complex), "X1")
    object.__setattr__(psi, "airy_form", form)
    return psi


def psi_fpss2_transform(params: StateParams, grid: Grid | None = None) -> SampledWavefunction:
    """F = X2^2 state built in the X2 representation and carried to X1 by quadrature."""
    if params.family is not Family.FPSS_II:
        raise ValueError("psi_fpss2_transform needs the FPSS_II family")
    return _native_to_x1(params, grid)


def _native_to_x1(params: StateParams, grid: Grid | None) -> SampledWavefunction:
    grid = grid or x1_grid(params)
    if params.variant is Variant.I:
        return psi_native(params, grid)
    src = psi_native(params, _transform_source_grid(params, grid))
    out = representation_transform(src, grid)
    check_decay(out)
    return _normalized(grid, out.values, "X1")


def state_x1(params: StateParams, grid: Grid | None = None, path: str = "auto") -> SampledWavefunction:
    """The state in the X1 representation by the cheapest exact route."""
    if path not in ("auto", "airy", "transform"):
        raise ValueError(f"unknown path {path!r}")
    if params.family is Family.FPSS_II:
        real_beta = abs(params.beta.imag) <= 1e-12 * max(1.0, abs(params.beta))
        if path == "airy" or (path == "auto" and real_beta and params.gamma_tilde > 0):
            return psi_fpss2_airy(params, grid)
        return psi_fpss2_transform(params, grid)
    return _native_to_x1(params, grid)


def state_x2(params: StateParams, grid: Grid | None = None) -> SampledWavefunction:
    """The state in the X2 representation."""
    if params.variant is Variant.II:
        return psi_native(params, grid)
    psi = state_x1(params)
    return representation_transform(psi, grid or momentum_grid(psi)).normalized()


# diagnostics


def support_window(psi: SampledWavefunction, rel_tol: float = 1e-13) -> tuple[float, float]:
    """Interval where ``|psi| > rel_tol * max|psi|``."""
    amp = np.abs(psi.values)
    idx = np.nonzero(amp > rel_tol * amp.max())[0]
    x = psi.x
    return float(x[idx[0]]), float(x[idx[-1]])


def momentum_window(psi: SampledWavefunction, rel_tol: float = 1e-13) -> tuple[float, float]:
    """Conjugate-variable interval holding the spectrum, read off an FFT.

    Only sizes grids; transforms themselves are direct quadratures.  The
    FFT frequency ``k`` corresponds to ``X2 = k`` for an X1 state and to
    ``X1 = -k`` for an X2 state.
    """
    n = psi.grid.n_points
    k = 2.0 * math.pi * np.fft.fftfreq(n, d=psi.grid.dx)
    spec = np.abs(np.fft.fft(psi.values))
    keep = spec > rel_tol * spec.max()
    lo, hi = float(k[keep].min()), float(k[keep].max())
    if psi.representation == "X2":
        lo, hi = -hi, -lo
    return lo, hi


def momentum_grid(psi: SampledWavefunction, min_points: int = MIN_POINTS) -> Grid:
    """Grid in the conjugate quadrature covering the spectrum of ``psi``."""
    lo, hi = momentum_window(psi)
    pad = 2.0
    lo, hi = min(lo - pad, -DEFAULT_HALF_WIDTH), max(hi + pad, DEFAULT_HALF_WIDTH)
    s_lo, s_hi = support_window(psi)
    reach = max(abs(s_lo), abs(s_hi))
    return Grid.with_spacing(lo, hi, math.pi / (2.0 * (reach + 16.0)), min_points)


@dataclass(frozen=True)
class QuadratureStats:
    mean_X1: float
    var_X1: float
    mean_X2: float
    var_X2: float


def quadrature_stats(psi: SampledWavefunction) -> QuadratureStats:
    """Means and variances of X1 and X2 as density moments in their own representations."""
    other = representation_transform(psi, momentum_grid(psi))
    m_self, v_self = psi.moments()
    m_other, v_other = other.moments()
    if psi.representation == "X1":
        return QuadratureStats(m_self, v_self, m_other, v_other)
    return QuadratureStats(m_other, v_other, m_self, v_self)


def _spectral(values: np.ndarray, dx: float, multiplier) -> np.ndarray:
    k = 2.0 * math.pi * np.fft.fftfreq(values.size, d=dx)
    return np.fft.ifft(multiplier(k) * np.fft.fft(values))


def apply_quadratures(psi: SampledWavefunction):
    """Return callables ``X1(v)`` and ``X2(v)`` acting on arrays sampled like ``psi``."""
    x = psi.x
    dx = psi.grid.dx
    if psi.representation == "X1":
        # X2 = -i d/dx  ->  multiply by k in Fourier space
        return (lambda v: x * v), (lambda v: _spectral(v, dx, lambda k: k))
    # X1 = i d/dp  ->  multiply by -k
    return (lambda v: _spectral(v, dx, lambda k: -k)), (lambda v: x * v)


def eigen_residual(psi: SampledWavefunction, params: StateParams) -> float:
    """``||(b - beta) psi|| / ||psi||`` with spectral derivatives."""
    X1, X2 = apply_quadratures(psi)
    v = psi.values
    mu, nu = params.mu, params.nu
    bpsi = ((mu + nu) * X1(v) + 1j * (mu - nu) * X2(v)) / SQRT2
    if not params.F.is_zero() and params.gamma_tilde:
        Xi = X1 if params.F.quadrature_index == 1 else X2
        fpsi = np.zeros_like(v)
        power = v.copy()
        for c in params.F._floats():
            fpsi = fpsi + c * power
            power = Xi(power)
        bpsi = bpsi + params.gamma * fpsi
    res = bpsi - params.beta * v
    return float(np.sqrt(np.sum(np.abs(res) ** 2) / np.sum(np.abs(v) ** 2)))


def excess_kurtosis(psi: SampledWavefunction) -> float:
    p = psi.density / np.sum(psi.density)
    x = psi.x
    m = np.sum(x * p)
    v = np.sum((x - m) ** 2 * p)
    return float(np.sum((x - m) ** 4 * p) / v**2 - 3.0)

"""Seasonal ARIMA modeling on monthly series.

The model is cast in its ARMA state-space form after explicit (seasonal)
differencing; the exact Gaussian likelihood comes from a Kalman filter with
the stationary initial covariance.  Fitting maximizes the likelihood (with
the innovation variance concentrated out) over an unconstrained space mapped
through partial autocorrelations, so every visited parameter vector is
stationary and invertible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_discrete_lyapunov
from scipy.optimize import minimize
from scipy.special import ndtri

LOG_2PI = math.log(2.0 * math.pi)
Z975 = float(ndtri(0.975))

# Prior variance used if the stationary covariance solve breaks down.
DIFFUSE_VARIANCE = 1e7


class FitError(RuntimeError):
    """Model fitting could not produce a valid result."""


class OrderSelectionError(RuntimeError):
    """Every candidate order failed to fit."""

    def __init__(self, errors: dict):
        self.errors = errors
        lines = "; ".join(f"{order}: {err}" for order, err in errors.items())
        super().__init__(f"all candidate orders failed: {lines}")


@dataclass(frozen=True)
class TimeSeries:
    """Contiguous monthly observations starting at (start_year, start_month)."""

    start_year: int
    start_month: int
    values: np.ndarray

    def __post_init__(self):
        if not 1 <= self.start_month <= 12:
            raise ValueError(f"start_month {self.start_month} outside 1..12")
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("values must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("values must all be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)

    def month_at(self, index: int) -> tuple[int, int]:
        """(year, month) of the observation at ``index``."""
        total = self.start_year * 12 + (self.start_month - 1) + index
        return total // 12, total % 12 + 1


@dataclass(frozen=True, order=True)
class SarimaxOrder:
    p: int
    d: int
    q: int
    P: int = 0
    D: int = 0
    Q: int = 0
    s: int = 12

    def __post_init__(self):
        for name in ("p", "d", "q", "P", "D", "Q"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")
        if not isinstance(self.s, int) or self.s < 1:
            raise ValueError(f"seasonal period s must be >= 1, got {self.s!r}")

    @property
    def param_count(self) -> int:
        """Free parameters including the innovation variance."""
        return self.p + self.q + self.P + self.Q + 1

    def __str__(self) -> str:
        return f"({self.p},{self.d},{self.q})({self.P},{self.D},{self.Q},{self.s})"


@dataclass(frozen=True)
class ForecastResult:
    horizon: int
    point_forecasts: tuple[float, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]


@dataclass(frozen=True)
class FittedSarimax:
    order: SarimaxOrder
    ar_coeffs: tuple[float, ...]
    ma_coeffs: tuple[float, ...]
    seasonal_ar: tuple[float, ...]
    seasonal_ma: tuple[float, ...]
    innovation_variance: float
    log_likelihood: float
    aic: float
    # Tails of the original and intermediate differenced series, innermost
    # last; what forecast() needs to undo the differencing.
    training_tail: tuple[tuple[float, ...], ...]
    final_state: np.ndarray = field(repr=False, default=None)
    final_state_cov: np.ndarray = field(repr=False, default=None)
    exog_coeffs: tuple[float, ...] = ()
    exog_tail: np.ndarray | None = field(repr=False, default=None)
    n_obs: int = 0

    def __post_init__(self):
        o = self.order
        if len(self.ar_coeffs) != o.p or len(self.ma_coeffs) != o.q \
                or len(self.seasonal_ar) != o.P or len(self.seasonal_ma) != o.Q:
            raise ValueError("coefficient counts do not match the order")
        if not (self.innovation_variance > 0 and math.isfinite(self.innovation_variance)):
            raise ValueError(f"innovation variance must be positive, got {self.innovation_variance}")
        for coeffs, what in ((self.ar_coeffs, "AR"), (self.seasonal_ar, "seasonal AR")):
            if coeffs and not _poly_roots_outside_unit_circle(np.asarray(coeffs)):
                raise ValueError(f"{what} polynomial is not stationary")


# ---------------------------------------------------------------------------
# differencing


def difference(series: TimeSeries, d: int, D: int, s: int) -> TimeSeries:
    """Apply d first differences then D seasonal differences of period s."""
    if d < 0 or D < 0 or s < 1:
        raise ValueError("d, D must be >= 0 and s >= 1")
    needed = d + D * s
    if len(series) <= needed:
        raise ValueError(
            f"series of length {len(series)} too short for d={d}, D={D}, s={s} "
            f"(needs > {needed})")
    vals = np.asarray(series.values, dtype=float)
    for _ in range(d):
        vals = vals[1:] - vals[:-1]
    for _ in range(D):
        vals = vals[s:] - vals[:-s]
    year, month = series.month_at(needed)
    return TimeSeries(year, month, vals)


def _difference_chain(values: np.ndarray, d: int, D: int, s: int) -> list[np.ndarray]:
    """All intermediate series from the original values down to the fully
    differenced one; chain[0] is the original, chain[-1] the innermost."""
    chain = [np.asarray(values, dtype=float)]
    for _ in range(d):
        v = chain[-1]
        chain.append(v[1:] - v[:-1])
    for _ in range(D):
        v = chain[-1]
        chain.append(v[s:] - v[:-s])
    return chain


# ---------------------------------------------------------------------------
# polynomial helpers


def _poly_roots_outside_unit_circle(coeffs: np.ndarray, margin: float = 0.0) -> bool:
    """True if 1 - c1*z - ... - cn*z^n has all roots outside the unit circle."""
    coeffs = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    if coeffs.size == 0:
        return True
    poly = np.concatenate((-coeffs[::-1], [1.0]))  # highest degree first
    roots = np.roots(poly)
    return bool(np.all(np.abs(roots) > 1.0 + margin))


def _expand_seasonal(coeffs, seasonal_coeffs, s: int) -> np.ndarray:
    """Coefficients c of (1 - sum c_i B^i) = (1 - sum a_i B^i)(1 - sum A_j B^js).

    Works for the MA side too after flipping coefficient signs.
    """
    base = np.ones(1)
    if len(coeffs):
        base = np.concatenate(([1.0], -np.asarray(coeffs, dtype=float)))
    seas = np.ones(1)
    if len(seasonal_coeffs):
        seas = np.zeros(s * len(seasonal_coeffs) + 1)
        seas[0] = 1.0
        seas[s:: s] = -np.asarray(seasonal_coeffs, dtype=float)
    prod = np.polymul(base, seas)
    return -prod[1:]


def _full_arma_coeffs(order: SarimaxOrder, ar, ma, sar, sma) -> tuple[np.ndarray, np.ndarray]:
    """Combined AR and MA lag coefficients of the multiplicative model."""
    a = _expand_seasonal(ar, sar, order.s)
    # MA polynomials are 1 + t1 B + ...: negate in, negate out.
    m = -_expand_seasonal([-t for t in ma], [-t for t in sma], order.s)
    return a, m


def _ma_infinity_weights(ar_lags: np.ndarray, ma_lags: np.ndarray, n: int) -> np.ndarray:
    """First ``n`` MA(inf) weights of y_t = sum a_i y_{t-i} + e_t + sum m_j e_{t-j}."""
    psi = np.zeros(n)
    psi[0] = 1.0
    p, q = len(ar_lags), len(ma_lags)
    for j in range(1, n):
        acc = ma_lags[j - 1] if j - 1 < q else 0.0
        kmax = min(j, p)
        for k in range(1, kmax + 1):
            acc += ar_lags[k - 1] * psi[j - k]
        psi[j] = acc
    return psi


# ---------------------------------------------------------------------------
# unconstrained parameterization (partial autocorrelations)


def _constrain_ar(x: np.ndarray) -> np.ndarray:
    """Map R^n to coefficients of a stationary AR polynomial via partial
    autocorrelations (tanh squashing + Durbin-Levinson)."""
    x = np.asarray(x, dtype=float)
    n = x.size
    if n == 0:
        return x
    r = np.tanh(x)
    y = r.copy()
    for k in range(1, n):
        y[:k] = y[:k] - r[k] * y[:k][::-1]
    return y


def _constrain_ma(x: np.ndarray) -> np.ndarray:
    """Invertible MA coefficients (for the 1 + t1 B + ... convention)."""
    return -_constrain_ar(x)


# ---------------------------------------------------------------------------
# state space + Kalman filter


def _state_space(a: np.ndarray, m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Harvey-form transition column and shock-loading vector.

    State dimension r = max(p', q'+1); the first state component equals the
    observed value.  Returns (ar_column, R) where the transition matrix is
    implicit: T x = ar_column * x[0] + shift-up(x).
    """
    p, q = len(a), len(m)
    r = max(p, q + 1, 1)
    ar_col = np.zeros(r)
    ar_col[:p] = a
    rvec = np.zeros(r)
    rvec[0] = 1.0
    rvec[1: q + 1] = m
    return ar_col, rvec


def _stationary_cov(ar_col: np.ndarray, rvec: np.ndarray) -> np.ndarray:
    """Unconditional state covariance at unit innovation variance."""
    r = ar_col.size
    T = np.zeros((r, r))
    T[:, 0] = ar_col
    T[: r - 1, 1:] += np.eye(r - 1)
    Q = np.outer(rvec, rvec)
    try:
        P = solve_discrete_lyapunov(T, Q)
        if not np.all(np.isfinite(P)):
            raise np.linalg.LinAlgError("non-finite stationary covariance")
    except np.linalg.LinAlgError:
        P = np.eye(r) * DIFFUSE_VARIANCE
    return 0.5 * (P + P.T)


def _kalman_filter(endog: np.ndarray, ar_col: np.ndarray, rvec: np.ndarray):
    """Kalman recursion at unit innovation variance.

    Returns (sum_log_F, sum_v2_over_F, final_filtered_state, final_filtered_cov).
    The gain and innovation variance converge for stationary models, so the
    covariance recursion is frozen once stationary to keep long series cheap.
    """
    n = endog.size
    r = ar_col.size
    P = _stationary_cov(ar_col, rvec)
    RRt = np.outer(rvec, rvec)
    state = np.zeros(r)

    sum_log_f = 0.0
    sum_v2 = 0.0
    zero_row = np.zeros((1, r))
    zero_col = np.zeros((r, 1))

    frozen = False
    K = None
    log_f = None
    f = None
    prev_pred = None
    p_pred = P  # t = 0 prior is the unconditional covariance
    for t in range(n):
        if not frozen:
            if t > 0:
                # P_pred = T P T' + R R'
                tp = np.outer(ar_col, P[0]) + np.vstack((P[1:], zero_row))
                p_pred = np.outer(tp[:, 0], ar_col) + np.hstack((tp[:, 1:], zero_col))
                p_pred += RRt
                p_pred = 0.5 * (p_pred + p_pred.T)
            f = p_pred[0, 0]
            K = p_pred[:, 0] / f
            log_f = math.log(f)
            if prev_pred is not None and t > 0:
                scale = 1.0 + float(np.max(np.abs(p_pred)))
                if float(np.max(np.abs(p_pred - prev_pred))) < 1e-13 * scale:
                    frozen = True
            prev_pred = p_pred
            P = p_pred - np.outer(K, p_pred[0])
            P = 0.5 * (P + P.T)
        # state prediction: T @ state
        pred = ar_col * state[0]
        pred[: r - 1] += state[1:]
        v = endog[t] - pred[0]
        state = pred + K * v
        sum_log_f += log_f
        sum_v2 += v * v / f
    final_cov = P if not frozen else p_pred - np.outer(K, p_pred[0])
    return sum_log_f, sum_v2, state, 0.5 * (final_cov + final_cov.T)


def _loglik_at_sigma2(sum_log_f: float, sum_v2: float, n: int, sigma2: float) -> float:
    return -0.5 * (n * LOG_2PI + sum_log_f + n * math.log(sigma2) + sum_v2 / sigma2)


# ---------------------------------------------------------------------------
# public likelihood


def log_likelihood(order: SarimaxOrder, params, series: TimeSeries,
                   exog: np.ndarray | None = None) -> float:
    """Exact Gaussian log-likelihood of the differenced series.

    ``params`` is [ar..., ma..., seasonal_ar..., seasonal_ma..., (exog...), sigma2].
    Raw parameter vectors that are non-stationary or non-invertible are
    rejected.
    """
    params = np.asarray(params, dtype=float)
    k_exog = 0 if exog is None else np.atleast_2d(np.asarray(exog, dtype=float)).shape[1]
    expected = order.p + order.q + order.P + order.Q + k_exog + 1
    if params.size != expected:
        raise ValueError(f"expected {expected} parameters for order {order}, got {params.size}")
    if not np.all(np.isfinite(params)):
        raise ValueError("parameters must be finite")
    ar, ma, sar, sma, beta, sigma2 = _unpack_params(order, params, k_exog)
    if sigma2 <= 0:
        raise ValueError(f"innovation variance must be positive, got {sigma2}")
    for coeffs, what in ((ar, "AR"), (sar, "seasonal AR")):
        if len(coeffs) and not _poly_roots_outside_unit_circle(np.asarray(coeffs)):
            raise ValueError(f"{what} parameters are non-stationary")
    for coeffs, what in ((ma, "MA"), (sma, "seasonal MA")):
        if len(coeffs) and not _poly_roots_outside_unit_circle(-np.asarray(coeffs)):
            raise ValueError(f"{what} parameters are non-invertible")

    w = difference(series, order.d, order.D, order.s)
    endog = np.asarray(w.values, dtype=float)
    if exog is not None:
        x_full = np.atleast_2d(np.asarray(exog, dtype=float))
        if x_full.shape[0] != len(series):
            raise ValueError(f"exog has {x_full.shape[0]} rows, series has {len(series)}")
        endog = endog - _difference_matrix(x_full, order.d, order.D, order.s) @ beta
    a, m = _full_arma_coeffs(order, ar, ma, sar, sma)
    ar_col, rvec = _state_space(a, m)
    sum_log_f, sum_v2, _, _ = _kalman_filter(endog, ar_col, rvec)
    return _loglik_at_sigma2(sum_log_f, sum_v2, endog.size, sigma2)


def _unpack_params(order: SarimaxOrder, params: np.ndarray, k_exog: int):
    p, q, P, Q = order.p, order.q, order.P, order.Q
    i = 0
    ar = tuple(params[i: i + p]); i += p
    ma = tuple(params[i: i + q]); i += q
    sar = tuple(params[i: i + P]); i += P
    sma = tuple(params[i: i + Q]); i += Q
    beta = np.asarray(params[i: i + k_exog], dtype=float); i += k_exog
    sigma2 = float(params[i])
    return ar, ma, sar, sma, beta, sigma2


def _difference_matrix(x: np.ndarray, d: int, D: int, s: int) -> np.ndarray:
    for _ in range(d):
        x = x[1:] - x[:-1]
    for _ in range(D):
        x = x[s:] - x[:-s]
    return x


# ---------------------------------------------------------------------------
# fitting


def minimum_fit_length(order: SarimaxOrder) -> int:
    """Practical floor below which fitting is refused."""
    o = order
    return 3 * (o.d + o.D * o.s) + o.p + o.q + o.P * o.s + o.Q * o.s + 10


def fit(series: TimeSeries, order: SarimaxOrder,
        exog: np.ndarray | None = None,
        max_iterations: int = 500) -> FittedSarimax:
    """Maximum-likelihood fit via quasi-Newton search with numerical
    gradients from a fixed zero start in the unconstrained space.

    The innovation variance is concentrated out of the likelihood, so the
    search runs over the (transformed) ARMA coefficients only.
    """
    if len(series) < minimum_fit_length(order):
        raise FitError(
            f"series of length {len(series)} below the practical floor "
            f"{minimum_fit_length(order)} for order {order}")
    w = difference(series, order.d, order.D, order.s)
    endog = np.asarray(w.values, dtype=float)
    x_diff = None
    k_exog = 0
    if exog is not None:
        x_full = np.atleast_2d(np.asarray(exog, dtype=float))
        if x_full.shape[0] != len(series):
            raise FitError(f"exog has {x_full.shape[0]} rows, series has {len(series)}")
        x_diff = _difference_matrix(x_full, order.d, order.D, order.s)
        k_exog = x_diff.shape[1]
    if float(np.var(endog)) == 0.0:
        raise FitError("differenced series has zero variance; nothing to fit")

    p, q, P, Q = order.p, order.q, order.P, order.Q
    n_free = p + q + P + Q + k_exog

    def transform(x):
        ar = _constrain_ar(x[:p])
        ma = _constrain_ma(x[p: p + q])
        sar = _constrain_ar(x[p + q: p + q + P])
        sma = _constrain_ma(x[p + q + P: p + q + P + Q])
        beta = x[p + q + P + Q:]
        return ar, ma, sar, sma, beta

    def filter_stats(x):
        ar, ma, sar, sma, beta = transform(x)
        y = endog if k_exog == 0 else endog - x_diff @ beta
        a, m = _full_arma_coeffs(order, ar, ma, sar, sma)
        ar_col, rvec = _state_space(a, m)
        return _kalman_filter(y, ar_col, rvec)

    n = endog.size

    def neg_concentrated_loglik(x):
        sum_log_f, sum_v2, _, _ = filter_stats(x)
        sigma2 = sum_v2 / n
        if not (sigma2 > 0 and math.isfinite(sigma2) and math.isfinite(sum_log_f)):
            return 1e12
        return 0.5 * (n * LOG_2PI + sum_log_f + n * math.log(sigma2) + n)

    if n_free == 0:
        x_best = np.zeros(0)
    else:
        x0 = np.zeros(n_free)
        res = minimize(neg_concentrated_loglik, x0, method="L-BFGS-B",
                       options={"maxiter": max_iterations, "ftol": 1e-11,
                                "maxfun": 20 * max_iterations})
        x_best, f_best = res.x, res.fun
        if not res.success:
            # Line searches on numerical gradients occasionally stall;
            # polish with a derivative-free pass before giving up.
            res2 = minimize(neg_concentrated_loglik, x_best, method="Nelder-Mead",
                            options={"maxiter": 400 * max(n_free, 1),
                                     "fatol": 1e-9, "xatol": 1e-8})
            if res2.fun <= f_best:
                x_best = res2.x
            if not res2.success:
                raise FitError(
                    f"optimizer did not converge for order {order}: "
                    f"{res.message}; {res2.message}")

    sum_log_f, sum_v2, state, cov = filter_stats(x_best)
    sigma2 = sum_v2 / n
    if not (sigma2 > 0 and math.isfinite(sigma2)):
        raise FitError(f"degenerate innovation variance for order {order}")
    loglik = _loglik_at_sigma2(sum_log_f, sum_v2, n, sigma2)
    ar, ma, sar, sma, beta = transform(x_best)
    exog_tail = None
    if k_exog:
        exog_tail = np.atleast_2d(np.asarray(exog, dtype=float))[
            len(series) - (order.d + order.D * order.s):]
    return _build_fitted(series, order, ar, ma, sar, sma, tuple(beta), sigma2,
                         loglik, state, cov * sigma2, n, exog_tail)


def fitted_from_params(series: TimeSeries, order: SarimaxOrder, params) -> FittedSarimax:
    """Assemble a FittedSarimax at explicitly supplied parameters (no search)."""
    params = np.asarray(params, dtype=float)
    ar, ma, sar, sma, _, sigma2 = _unpack_params(order, params, 0)
    loglik = log_likelihood(order, params, series)
    w = difference(series, order.d, order.D, order.s)
    endog = np.asarray(w.values, dtype=float)
    a, m = _full_arma_coeffs(order, ar, ma, sar, sma)
    ar_col, rvec = _state_space(a, m)
    # The filtered state mean does not depend on the innovation variance
    # (gain is scale invariant); the covariance scales linearly with it.
    _, _, state, cov = _kalman_filter(endog, ar_col, rvec)
    return _build_fitted(series, order, ar, ma, sar, sma, (), sigma2, loglik,
                         state, cov * sigma2, endog.size)


def _build_fitted(series, order, ar, ma, sar, sma, beta, sigma2, loglik,
                  state, cov, n_obs, exog_tail=None) -> FittedSarimax:
    k = order.param_count + len(beta)
    aic = 2.0 * k - 2.0 * loglik
    chain = _difference_chain(series.values, order.d, order.D, order.s)
    tails = []
    for level in range(order.d):
        tails.append(tuple(chain[level][-1:]))
    for level in range(order.D):
        tails.append(tuple(chain[order.d + level][-order.s:]))
    return FittedSarimax(
        order=order,
        ar_coeffs=tuple(float(v) for v in ar),
        ma_coeffs=tuple(float(v) for v in ma),
        seasonal_ar=tuple(float(v) for v in sar),
        seasonal_ma=tuple(float(v) for v in sma),
        innovation_variance=float(sigma2),
        log_likelihood=float(loglik),
        aic=float(aic),
        training_tail=tuple(tails),
        final_state=np.asarray(state, dtype=float),
        final_state_cov=np.asarray(cov, dtype=float),
        exog_coeffs=tuple(float(v) for v in beta),
        exog_tail=None if exog_tail is None else np.asarray(exog_tail, dtype=float),
        n_obs=int(n_obs),
    )


# ---------------------------------------------------------------------------
# forecasting


def forecast(model: FittedSarimax, horizon: int,
             exog_future: np.ndarray | None = None) -> ForecastResult:
    """Point forecasts with 95% intervals.

    The state prediction recursion extends the differenced series; the
    stored tails integrate it back to the original scale.  Interval widths
    come from the cumulative squared psi-weights of the full integrated
    model at the normal 0.975 quantile.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    order = model.order
    if model.exog_coeffs and exog_future is None:
        raise ValueError("model was fit with exogenous regressors; pass exog_future")
    a, m = _full_arma_coeffs(order, model.ar_coeffs, model.ma_coeffs,
                             model.seasonal_ar, model.seasonal_ma)
    ar_col, _ = _state_space(a, m)
    r = ar_col.size

    state = np.asarray(model.final_state, dtype=float).copy()
    w_hat = np.empty(horizon)
    for h in range(horizon):
        pred = ar_col * state[0]
        pred[: r - 1] += state[1:]
        w_hat[h] = pred[0]
        state = pred

    if model.exog_coeffs:
        x_future = np.atleast_2d(np.asarray(exog_future, dtype=float))
        if x_future.shape[0] < horizon:
            raise ValueError(f"exog_future has {x_future.shape[0]} rows, need {horizon}")
        stacked = np.vstack([model.exog_tail, x_future[:horizon]])
        x_diff = _difference_matrix(stacked, order.d, order.D, order.s)
        w_hat = w_hat + x_diff[-horizon:] @ np.asarray(model.exog_coeffs)

    # integrate: innermost tail first (seasonal levels), then regular
    values = w_hat
    tails = list(model.training_tail)
    for _ in range(order.D):
        tail = np.asarray(tails.pop(), dtype=float)
        out = np.empty(horizon)
        hist = list(tail)
        for h in range(horizon):
            out[h] = values[h] + hist[-order.s]
            hist.append(out[h])
        values = out
    for _ in range(order.d):
        tail = np.asarray(tails.pop(), dtype=float)
        out = np.empty(horizon)
        prev = tail[-1]
        for h in range(horizon):
            prev = values[h] + prev
            out[h] = prev
        values = out

    # psi-weights of AR(B) * (1-B)^d * (1-B^s)^D acting on the MA side
    full_ar_poly = np.concatenate(([1.0], -a)) if a.size else np.ones(1)
    for _ in range(order.d):
        full_ar_poly = np.polymul(full_ar_poly, [1.0, -1.0])
    seas = np.zeros(order.s + 1)
    seas[0], seas[-1] = 1.0, -1.0
    for _ in range(order.D):
        full_ar_poly = np.polymul(full_ar_poly, seas)
    psi = _ma_infinity_weights(-full_ar_poly[1:], m, horizon)
    std = np.sqrt(model.innovation_variance * np.cumsum(psi ** 2))

    lower = values - Z975 * std
    upper = values + Z975 * std
    return ForecastResult(
        horizon=horizon,
        point_forecasts=tuple(float(v) for v in values),
        lower=tuple(float(v) for v in lower),
        upper=tuple(float(v) for v in upper),
    )


# ---------------------------------------------------------------------------
# order selection


def select_order(series: TimeSeries, grid=None) -> SarimaxOrder:
    """Grid member with the smallest fitted AIC.

    Ties go to the order with fewer parameters, then lexicographically by
    (p, d, q, P, D, Q).  Without an explicit grid the default documented
    grid is searched.
    """
    grid = default_order_grid() if grid is None else list(grid)
    if not grid:
        raise ValueError("order grid is empty")
    results = []
    errors: dict[SarimaxOrder, Exception] = {}
    for order in grid:
        try:
            fitted = fit(series, order)
        except (FitError, ValueError) as exc:
            errors[order] = exc
            continue
        results.append((fitted.aic, order.param_count,
                        (order.p, order.d, order.q, order.P, order.D, order.Q),
                        order))
    if not results:
        raise OrderSelectionError(errors)
    results.sort(key=lambda t: t[:3])
    return results[0][3]


def default_order_grid(s: int = 12, max_total: int = 4) -> list[SarimaxOrder]:
    """p,q,P,Q in {0,1,2} and d,D in {0,1}, capped at p+q+P+Q <= max_total."""
    grid = []
    for p in range(3):
        for d in range(2):
            for q in range(3):
                for P in range(3):
                    for D in range(2):
                        for Q in range(3):
                            if p + q + P + Q <= max_total:
                                grid.append(SarimaxOrder(p, d, q, P, D, Q, s))
    return grid


# ---------------------------------------------------------------------------
# simulation


def simulate_sarima(order: SarimaxOrder, n: int, seed: int,
                    ar=(), ma=(), seasonal_ar=(), seasonal_ma=(),
                    sigma2: float = 1.0, burn: int = 300,
                    start_year: int = 1970, start_month: int = 1) -> TimeSeries:
    """Simulate a Gaussian SARIMA path (deterministic given the seed)."""
    a, m = _full_arma_coeffs(order, ar, ma, seasonal_ar, seasonal_ma)
    p, q = len(a), len(m)
    rng = np.random.default_rng(seed)
    total = n + burn + max(p, q, 1)
    eps = rng.normal(0.0, math.sqrt(sigma2), total)
    w = np.zeros(total)
    for t in range(total):
        acc = eps[t]
        for j in range(1, min(q, t) + 1):
            acc += m[j - 1] * eps[t - j]
        for i in range(1, min(p, t) + 1):
            acc += a[i - 1] * w[t - i]
        w[t] = acc
    y = w[-n:].copy()
    for _ in range(order.d):
        y = np.cumsum(y)
    for _ in range(order.D):
        for t in range(order.s, n):
            y[t] = y[t] + y[t - order.s]
    return TimeSeries(start_year, start_month, y)

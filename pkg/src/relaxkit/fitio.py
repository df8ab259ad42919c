"""Dataset ingestion, synthetic data generation and nonlinear least-squares fitting.

Fits run a damped Gauss-Newton (Levenberg-Marquardt) loop in a transformed
parameter space that enforces the feasible box by construction:

* ``alpha = sigmoid(u1)`` in (0, 1);
* ``beta = sigmoid(u2) / alpha`` (so ``alpha*beta`` stays in (0, 1), the
  library regime) or ``beta = sigmoid(u2)`` under strict_experimental;
* ``tau = exp(u3)``;
* frequency fits add ``eps_inf`` (free) and ``delta_eps = exp(u5)``.

Accepted steps never increase the residual norm; termination is on gradient
norm < 1e-10, step norm < 1e-12 or 200 iterations, and everything is
deterministic (fixed evaluation order, seeded noise).
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .exceptions import DegenerateJacobian, DomainError, EmptyDataset, ParseError
from .models import KINDS, ModelSpec, PermittivityScale, permittivity, relaxation

__all__ = [
    "SpectrumDataset",
    "TimeDataset",
    "FitResult",
    "parse_csv",
    "synthesize",
    "fit",
    "compare",
    "FREQUENCY_KINDS",
    "TIME_KINDS",
]

FREQUENCY_KINDS = ("debye", "cc", "cd", "mcd", "hn", "jws")
TIME_KINDS = FREQUENCY_KINDS + ("kww",)

_MAX_ITER = 200
_GRAD_TOL = 1e-10
_STEP_TOL = 1e-12


@dataclass(frozen=True)
class SpectrumDataset:
    """Measured or synthetic (omega, eps', eps'') samples."""

    omega: np.ndarray
    eps_re: np.ndarray
    eps_im: np.ndarray
    weights: Optional[np.ndarray] = None
    meta: str = ""

    def __post_init__(self):
        for name in ("omega", "eps_re", "eps_im"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.weights is not None:
            object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        n = self.omega.size
        if self.eps_re.size != n or self.eps_im.size != n:
            raise DomainError("omega, eps_re and eps_im must have equal length")
        if self.weights is not None and self.weights.size != n:
            raise DomainError("weights must match the number of points")
        if np.any(self.omega <= 0.0) or np.any(np.diff(self.omega) <= 0.0):
            raise DomainError("omega values must be positive and strictly increasing")
        if self.weights is not None and np.any(self.weights <= 0.0):
            raise DomainError("weights must be positive")
        if np.any(self.eps_im < 0.0):
            warnings.warn("negative eps'' values in dataset (lossless points are unusual)")

    def __len__(self) -> int:
        return int(self.omega.size)


@dataclass(frozen=True)
class TimeDataset:
    """Sampled relaxation function (t, n)."""

    t: np.ndarray
    n: np.ndarray
    weights: Optional[np.ndarray] = None
    meta: str = ""

    def __post_init__(self):
        object.__setattr__(self, "t", np.asarray(self.t, dtype=float))
        object.__setattr__(self, "n", np.asarray(self.n, dtype=float))
        if self.weights is not None:
            object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if self.n.size != self.t.size:
            raise DomainError("t and n must have equal length")
        if self.weights is not None and self.weights.size != self.t.size:
            raise DomainError("weights must match the number of points")
        if np.any(self.t < 0.0) or np.any(np.diff(self.t) <= 0.0):
            raise DomainError("t values must be nonnegative and strictly increasing")
        if self.weights is not None and np.any(self.weights <= 0.0):
            raise DomainError("weights must be positive")
        if self.t.size and abs(self.n[0] - 1.0) > 0.2:
            warnings.warn(f"first relaxation sample n = {self.n[0]:.3g} is far from 1")

    def __len__(self) -> int:
        return int(self.t.size)


@dataclass(frozen=True)
class FitResult:
    """Recovered model, residual norm and convergence diagnostics."""

    spec: ModelSpec
    scale: Optional[PermittivityScale]
    residual_norm: float
    iterations: int
    converged: bool
    param_stderr: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "model": self.spec.kind,
            "alpha": self.spec.alpha,
            "beta": self.spec.beta,
            "tau": self.spec.tau,
            "eps_static": self.scale.eps_static if self.scale else None,
            "eps_inf": self.scale.eps_inf if self.scale else None,
            "residual_norm": self.residual_norm,
            "converged": self.converged,
            "iterations": self.iterations,
            "stderr": dict(self.param_stderr),
        }
        return out


# ---------------------------------------------------------------------------
# CSV ingestion
# ---------------------------------------------------------------------------

_HEADERS = {
    "frequency": (("omega", "eps_re", "eps_im"), ("omega", "eps_re", "eps_im", "weight")),
    "time": (("t", "n"), ("t", "n", "weight")),
}


def parse_csv(source, domain: str):
    """Read a frequency or time dataset from a path, file object or string.

    Frequency files carry the exact header ``omega,eps_re,eps_im[,weight]``,
    time files ``t,n[,weight]``; lines starting with ``#`` are comments.
    Malformed rows raise :class:`ParseError` with the 1-based line number.
    """
    if domain not in _HEADERS:
        raise DomainError(f"domain must be 'frequency' or 'time', got {domain!r}")
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()

    header = None
    rows: list[tuple[int, list[float]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [cell.strip() for cell in line.split(",")]
        if header is None:
            header = tuple(fields)
            if header not in _HEADERS[domain]:
                raise ParseError(lineno, f"unexpected header {','.join(fields)!r} for {domain} data")
            continue
        if len(fields) != len(header):
            raise ParseError(lineno, f"expected {len(header)} fields, found {len(fields)}")
        try:
            rows.append((lineno, [float(cell) for cell in fields]))
        except ValueError as exc:
            raise ParseError(lineno, f"non-numeric value ({exc})") from None

    if header is None or not rows:
        raise EmptyDataset("no data rows found")

    data = np.array([vals for _, vals in rows], dtype=float)
    has_weight = len(header) == len(_HEADERS[domain][1])
    weights = data[:, -1] if has_weight else None
    try:
        if domain == "frequency":
            return SpectrumDataset(data[:, 0], data[:, 1], data[:, 2], weights=weights)
        return TimeDataset(data[:, 0], data[:, 1], weights=weights)
    except DomainError as exc:
        raise ParseError(rows[-1][0], str(exc)) from None


# ---------------------------------------------------------------------------
# Synthetic data
# ---------------------------------------------------------------------------


def synthesize(
    spec: ModelSpec,
    scale: Optional[PermittivityScale],
    grid: Sequence[float],
    noise_rel: float = 0.0,
    seed: int = 0,
    domain: str = "frequency",
):
    """Exact model values on ``grid`` with multiplicative Gaussian noise.

    ``noise_rel`` is the relative noise amplitude; the perturbation is
    ``value * (1 + noise_rel * g)`` with standard-normal g from a generator
    seeded by ``seed``, so identical inputs give bit-identical datasets.
    """
    if noise_rel < 0.0:
        raise DomainError("noise_rel must be nonnegative")
    grid = np.asarray(grid, dtype=float)
    rng = np.random.default_rng(seed)
    if domain == "frequency":
        if scale is None:
            raise DomainError("frequency synthesis needs a PermittivityScale")
        values = np.array([permittivity(spec, scale, float(w)) for w in grid])
        re, im = values[:, 0].copy(), values[:, 1].copy()
        if noise_rel > 0.0:
            re *= 1.0 + noise_rel * rng.standard_normal(re.size)
            im *= 1.0 + noise_rel * rng.standard_normal(im.size)
        return SpectrumDataset(grid, re, im, meta=f"synthetic {spec.kind} seed={seed}")
    if domain == "time":
        n = np.array([relaxation(spec, float(t)) for t in grid])
        if noise_rel > 0.0:
            n = n * (1.0 + noise_rel * rng.standard_normal(n.size))
        return TimeDataset(grid, n, meta=f"synthetic {spec.kind} seed={seed}")
    raise DomainError(f"domain must be 'frequency' or 'time', got {domain!r}")


# ---------------------------------------------------------------------------
# Parameter transforms
# ---------------------------------------------------------------------------


def _sigmoid(u: float) -> float:
    if u >= 0.0:
        return 1.0 / (1.0 + math.exp(-u))
    e = math.exp(u)
    return e / (1.0 + e)


def _logit(p: float) -> float:
    p = min(max(p, 1e-12), 1.0 - 1e-12)
    return math.log(p / (1.0 - p))


class _Problem:
    """Residual assembly plus the transform between packed and physical parameters."""

    def __init__(self, dataset, kind: str, strict: bool, init: Optional[ModelSpec], init_scale):
        self.kind = kind
        self.strict = strict
        self.frequency = isinstance(dataset, SpectrumDataset)
        self.dataset = dataset
        if self.frequency and kind == "kww":
            raise DomainError("kww fits time-domain data only")
        self.free_alpha = kind in ("cc", "hn", "jws", "kww")
        self.free_beta = kind in ("cd", "mcd", "hn", "jws")
        w = dataset.weights if dataset.weights is not None else np.ones(len(dataset))
        self.w = w / np.max(w)
        self.names = self._names()
        self.u0 = self._initial_vector(init, init_scale)

    def _names(self) -> list[str]:
        names = []
        if self.free_alpha:
            names.append("alpha")
        if self.free_beta:
            names.append("beta")
        names.append("tau")
        if self.frequency:
            names += ["eps_inf", "eps_static"]
        return names

    # -- heuristics ---------------------------------------------------------

    def _initial_vector(self, init: Optional[ModelSpec], init_scale) -> np.ndarray:
        if init is not None:
            alpha0, beta0, tau0 = init.alpha, init.beta, init.tau
        elif self.frequency:
            alpha0, beta0, tau0 = self._frequency_heuristics()
        else:
            alpha0, beta0, tau0 = self._time_heuristics()
        u = []
        if self.free_alpha:
            u.append(_logit(min(alpha0, 0.999)))
        else:
            alpha0 = 1.0
        if self.free_beta:
            if self.strict:
                u.append(_logit(min(beta0, 0.999)))
            else:
                u.append(_logit(min(alpha0 * beta0, 0.999)))
        u.append(math.log(tau0))
        if self.frequency:
            if init_scale is not None:
                eps_inf0, d0 = init_scale.eps_inf, init_scale.strength
            else:
                eps_inf0 = float(np.min(self.dataset.eps_re))
                d0 = max(float(np.max(self.dataset.eps_re)) - eps_inf0, 1e-6)
            u += [eps_inf0, math.log(d0)]
        return np.array(u, dtype=float)

    def _frequency_heuristics(self) -> tuple[float, float, float]:
        ds = self.dataset
        peak = int(np.argmax(ds.eps_im))
        tau0 = 1.0 / ds.omega[peak] if ds.omega[peak] > 0 else 1.0
        # wing slopes of eps'' in log-log coordinates (Jonscher-type powers)
        logw = np.log(ds.omega)
        logi = np.log(np.maximum(ds.eps_im, 1e-300))
        m = max(3, len(ds) // 4)
        lo = np.polyfit(logw[:m], logi[:m], 1)[0]
        hi = np.polyfit(logw[-m:], logi[-m:], 1)[0]
        slope = lo if self.kind in ("debye", "cc", "cd", "hn") else -hi
        alpha0 = min(max(abs(slope), 0.1), 0.95)
        return alpha0, 0.8, tau0

    def _time_heuristics(self) -> tuple[float, float, float]:
        ds = self.dataset
        below = np.nonzero(ds.n < math.exp(-1.0))[0]
        tau0 = float(ds.t[below[0]]) if below.size else float(ds.t[-1])
        return 0.7, 0.8, max(tau0, 1e-12)

    # -- transforms ---------------------------------------------------------

    def unpack(self, u: np.ndarray) -> tuple[ModelSpec, Optional[PermittivityScale]]:
        i = 0
        alpha = 1.0
        beta = 1.0
        if self.free_alpha:
            alpha = _sigmoid(u[i])
            i += 1
        if self.free_beta:
            if self.strict:
                beta = _sigmoid(u[i])
            else:
                beta = _sigmoid(u[i]) / alpha
            i += 1
        tau = math.exp(u[i])
        i += 1
        spec = ModelSpec(
            self.kind, alpha=alpha, beta=beta, tau=tau, strict_experimental=self.strict
        )
        scale = None
        if self.frequency:
            eps_inf = u[i]
            strength = math.exp(u[i + 1])
            scale = PermittivityScale(eps_inf + strength, eps_inf)
        return spec, scale

    def stderr_scale(self, u: np.ndarray) -> np.ndarray:
        """|d(physical)/d(packed)| for the Gauss-Newton covariance proxy."""
        grads = []
        i = 0
        alpha = 1.0
        if self.free_alpha:
            s = _sigmoid(u[i])
            alpha = s
            grads.append(s * (1.0 - s))
            i += 1
        if self.free_beta:
            s = _sigmoid(u[i])
            grads.append(s * (1.0 - s) if self.strict else s * (1.0 - s) / alpha)
            i += 1
        grads.append(math.exp(u[i]))
        i += 1
        if self.frequency:
            grads.append(1.0)
            grads.append(math.exp(u[i + 1]))
        return np.array(grads)

    def residuals(self, u: np.ndarray) -> np.ndarray:
        spec, scale = self.unpack(u)
        if self.frequency:
            out = np.empty(2 * len(self.dataset))
            for idx, w in enumerate(self.dataset.omega):
                re, im = permittivity(spec, scale, float(w))
                out[2 * idx] = self.w[idx] * (re - self.dataset.eps_re[idx])
                out[2 * idx + 1] = self.w[idx] * (im - self.dataset.eps_im[idx])
            return out
        out = np.empty(len(self.dataset))
        for idx, t in enumerate(self.dataset.t):
            out[idx] = self.w[idx] * (relaxation(spec, float(t)) - self.dataset.n[idx])
        return out


def _jacobian(problem: _Problem, u: np.ndarray, r0: np.ndarray) -> np.ndarray:
    J = np.empty((r0.size, u.size))
    for j in range(u.size):
        h = 1.5e-8 * (1.0 + abs(u[j]))
        up = u.copy()
        up[j] += h
        J[:, j] = (problem.residuals(up) - r0) / h
    if not np.all(np.isfinite(J)):
        raise DegenerateJacobian("non-finite entries in the fit Jacobian")
    return J


def fit(
    dataset,
    kind_hypothesis: str = "auto",
    init: Optional[ModelSpec] = None,
    init_scale: Optional[PermittivityScale] = None,
    strict_experimental: bool = False,
) -> FitResult:
    """Least-squares fit of one model kind, or the best of all applicable kinds.

    With ``kind_hypothesis = "auto"`` every applicable kind is fitted and the
    winner is the lowest small-sample-corrected information score (ties go to
    the model with fewer free parameters, then lexical kind order).  Frequency
    datasets jointly optimize (alpha, beta, log tau, eps_inf, log delta_eps)
    with real and imaginary residuals stacked and equally weighted; time
    datasets optimize (alpha, beta, log tau).  Non-convergence is not an
    exception: the best parameters so far come back with ``converged=False``.
    """
    if len(dataset) < 5:
        raise DomainError("need at least 5 data points to fit")
    if kind_hypothesis == "auto":
        kinds = FREQUENCY_KINDS if isinstance(dataset, SpectrumDataset) else TIME_KINDS
        ranked = compare(dataset, kinds, strict_experimental=strict_experimental)
        return ranked[0][2]
    if kind_hypothesis not in KINDS:
        raise DomainError(f"unknown model kind {kind_hypothesis!r}")
    problem = _Problem(dataset, kind_hypothesis, strict_experimental, init, init_scale)
    return _levenberg_marquardt(problem)


def _levenberg_marquardt(problem: _Problem) -> FitResult:
    u = problem.u0.copy()
    r = problem.residuals(u)
    cost = float(r @ r)
    lam = 1e-3
    converged = False
    iterations = 0
    for iterations in range(1, _MAX_ITER + 1):
        J = _jacobian(problem, u, r)
        g = J.T @ r
        if float(np.max(np.abs(g))) < _GRAD_TOL:
            converged = True
            break
        A = J.T @ J
        diag = np.diag(np.maximum(np.diag(A), 1e-12))
        step_taken = False
        for _ in range(60):
            try:
                delta = np.linalg.solve(A + lam * diag, -g)
            except np.linalg.LinAlgError:
                raise DegenerateJacobian("normal equations are singular") from None
            trial = u + delta
            r_trial = problem.residuals(trial)
            cost_trial = float(r_trial @ r_trial)
            if math.isfinite(cost_trial) and cost_trial <= cost:
                u, r, cost = trial, r_trial, cost_trial
                lam = max(lam / 3.0, 1e-14)
                step_taken = True
                break
            lam *= 10.0
            if lam > 1e14:
                break
        if not step_taken:
            break
        if float(np.linalg.norm(delta)) < _STEP_TOL * (float(np.linalg.norm(u)) + _STEP_TOL):
            converged = True
            break

    spec, scale = problem.unpack(u)
    stderr = _stderr(problem, u, r)
    return FitResult(
        spec=spec,
        scale=scale,
        residual_norm=math.sqrt(cost),
        iterations=iterations,
        converged=converged,
        param_stderr=stderr,
    )


def _stderr(problem: _Problem, u: np.ndarray, r: np.ndarray) -> dict:
    """Gauss-Newton covariance proxy mapped to the physical parameters."""
    m, p = r.size, u.size
    try:
        J = _jacobian(problem, u, r)
        A = J.T @ J
        dof = max(m - p, 1)
        sigma2 = float(r @ r) / dof
        cov = sigma2 * np.linalg.inv(A + 1e-300 * np.eye(p))
        du = np.sqrt(np.maximum(np.diag(cov), 0.0)) * problem.stderr_scale(u)
    except (np.linalg.LinAlgError, DegenerateJacobian):
        du = np.full(p, float("nan"))
    out = {}
    for name, val in zip(problem.names, du):
        if name == "eps_static":
            # eps_static = eps_inf + strength: combine both packed errors
            out[name] = float(math.hypot(val, du[problem.names.index("eps_inf")]))
        else:
            out[name] = float(val)
    return out


def _free_parameter_count(kind: str, frequency: bool) -> int:
    n = 1  # tau
    if kind in ("cc", "hn", "jws", "kww"):
        n += 1
    if kind in ("cd", "mcd", "hn", "jws"):
        n += 1
    if frequency:
        n += 2
    return n


def aicc_score(residual_norm: float, n_points: int, n_params: int, data_scale: float) -> float:
    """Small-sample-corrected information score used for model ranking.

    The residual sum of squares is floored at the rounding level of the data
    so that exactly-nested models tie instead of racing to log(0); ties are
    then broken by parameter count.
    """
    k = n_params + 1  # noise scale counts as a parameter
    if n_points <= k + 1:
        return math.inf
    rss = max(residual_norm**2, n_points * (1e-12 * data_scale) ** 2)
    return n_points * math.log(rss / n_points) + 2.0 * k + 2.0 * k * (k + 1) / (n_points - k - 1)


def compare(
    dataset,
    candidates: Sequence[str],
    strict_experimental: bool = False,
) -> list[tuple[str, float, FitResult]]:
    """Fit every candidate kind and rank by information score.

    Returns (kind, score, FitResult) tuples sorted best-first; deterministic
    ranking with ties broken by fewer free parameters, then kind name.
    """
    if not candidates:
        raise DomainError("need at least one candidate kind")
    frequency = isinstance(dataset, SpectrumDataset)
    if frequency:
        data_scale = float(np.max(np.abs(np.concatenate([dataset.eps_re, dataset.eps_im]))))
        n_points = 2 * len(dataset)
    else:
        data_scale = float(np.max(np.abs(dataset.n)))
        n_points = len(dataset)
    results = []
    for kind in candidates:
        if frequency and kind == "kww":
            continue
        res = fit(dataset, kind, strict_experimental=strict_experimental)
        k = _free_parameter_count(kind, frequency)
        score = aicc_score(res.residual_norm, n_points, k, data_scale)
        results.append((kind, score, res))
    if not results:
        raise DomainError("no applicable candidate kinds for this dataset")
    results.sort(key=lambda item: (item[1], _free_parameter_count(item[0], frequency), item[0]))
    return results


def fit_result_to_json(result: FitResult) -> str:
    """Serialize a FitResult to the documented JSON schema."""
    return json.dumps(result.to_json_dict(), indent=2, sort_keys=True)

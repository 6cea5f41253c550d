"""Extremal central measures and the drift homeomorphism.

The parametrized morphisms act as psi(t,w)(e^gamma, n) = t^(n delta - w gamma)
/ S_delta(t)^n; their drifts sweep the weight polytope K(delta), and inverting
the drift map (exact face location + damped Newton on the log-partition
function of the face) realizes the homeomorphism between K(delta) and the
minimal boundary.  Chamber measures are the w = identity slice, with
p(lambda, n) = S_{lambda, n delta}(t) / S_delta(t)^n.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import NoConvergence, NotAWeight, NotDominantDrift
from .rootdata import CartanDatum, WeylElement, minimal_coset_rep, weight, \
    wadd, wsub, wscale
from . import chars, paths, polytope

NEWTON_GRAD_TOL = 1e-12
NEWTON_MAX_ITER = 200
ROUND_TRIP_TOL = 1e-8
CLAMP_TO_ONE = 1e-9


@lru_cache(maxsize=None)
def _delta_tables(cartan, delta):
    """Per-(cartan, delta) arrays: weights, multiplicities, exponents of delta-gamma."""
    ms = chars.weight_multiplicities(cartan, delta)
    gammas = sorted(ms.entries)
    mults = np.array([float(ms.entries[g]) for g in gammas])
    coords = np.array([[float(c) for c in g] for g in gammas])
    exps = np.array([
        [int(c) for c in cartan.alpha_coords(wsub(delta, g))] for g in gammas
    ], dtype=float)
    return gammas, mults, coords, exps


def stabilizer_set(cartan: CartanDatum, delta, t) -> tuple:
    """Indices i with <w(drift), alpha_i^vee> = 0, computed exactly from t.

    This is 1(t) plus the walls orthogonal to every weight of the face cut out
    by the support of t; the extra walls occur only when delta is orthogonal
    to some simple root.
    """
    delta = weight(delta)
    t = tuple(float(x) for x in t)
    support = {i for i, x in enumerate(t) if x != 0.0}
    ones = {i for i, x in enumerate(t) if x == 1.0}
    ms = chars.weight_multiplicities(cartan, delta)
    face_weights = [
        g for g in ms.entries
        if all(c == 0 for k, c in enumerate(cartan.alpha_coords(wsub(delta, g)))
               if k not in support)
    ]
    extra = {
        i for i in range(cartan.rank)
        if i not in support and all(g[i] <= 0 for g in face_weights)
    }
    return tuple(sorted(ones | extra))


class BoundaryPoint:
    """Canonical parameter pair (t, w) of an extremal central measure.

    t lies in the restricted box (support is delta-admissible) and w is the
    minimal right-coset representative modulo the stabilizer of the drift's
    dominant representative; drift is computed lazily.
    """

    def __init__(self, cartan: CartanDatum, delta, t, w: WeylElement):
        self.cartan = cartan
        self.delta = weight(delta)
        self.t = tuple(float(x) for x in t)
        self.w = w
        if not polytope.in_unit_box_delta(cartan, self.delta, self.t):
            raise ValueError(f"t = {self.t} is not in the restricted box")
        stab = stabilizer_set(cartan, self.delta, self.t)
        for i in stab:
            si_w = cartan.multiply(cartan.simple_reflection(i), w)
            if si_w.length < w.length:
                raise ValueError(
                    f"w = {w.word} is not minimal modulo the stabilizer {stab}")

    @cached_property
    def s_delta(self) -> float:
        return chars.evaluate_S(self.cartan, self.delta, self.delta, self.t)

    @cached_property
    def drift(self) -> tuple:
        """Expected increment of the free walk: (1/S_delta) sum K t^(delta - w gamma) gamma."""
        cartan = self.cartan
        gammas, mults, _, _ = _delta_tables(cartan, self.delta)
        acc = np.zeros(cartan.rank)
        for g, m in zip(gammas, mults):
            e = cartan.alpha_coords(wsub(self.delta, cartan.apply(self.w, g)))
            mono = chars.monomial(self.t, e)
            if mono:
                acc += m * mono * np.array([float(c) for c in g])
        return tuple(float(x) for x in acc / self.s_delta)

    def one_set(self) -> tuple:
        return tuple(i for i, x in enumerate(self.t) if x == 1.0)

    def __repr__(self):
        return f"BoundaryPoint(t={self.t}, w={self.w.word})"


def boundary_point(cartan: CartanDatum, delta, t, w: WeylElement = None,
                   canonicalize: bool = False) -> BoundaryPoint:
    """Validated boundary point; with canonicalize=True, w is replaced by its
    minimal representative modulo the stabilizer."""
    if w is None:
        w = cartan.identity
    if canonicalize:
        w = minimal_coset_rep(cartan, w, stabilizer_set(cartan, delta, t))
    return BoundaryPoint(cartan, delta, t, w)


def random_boundary_point(cartan: CartanDatum, delta, rng,
                          chamber: bool = False,
                          force_support=None, force_ones=None) -> BoundaryPoint:
    """Random canonical point: admissible support, interior or exactly-1 values,
    and a canonicalized random Weyl element (identity for chamber points)."""
    delta = weight(delta)
    adms = polytope.admissible_subsets(cartan, delta)
    if force_support is None:
        support = adms[int(rng.integers(len(adms)))].indices
    else:
        support = tuple(sorted(force_support))
    t = [0.0] * cartan.rank
    for i in support:
        if force_ones is not None and i in force_ones:
            t[i] = 1.0
        elif force_ones is None and rng.random() < 0.25:
            t[i] = 1.0
        else:
            t[i] = float(0.05 + 0.93 * rng.random())
    if chamber:
        w = cartan.identity
    else:
        w = cartan.elements[int(rng.integers(cartan.weyl_order))]
    return boundary_point(cartan, delta, t, w, canonicalize=True)


# -- evaluation of the morphism ------------------------------------------------


def psi_eval(point: BoundaryPoint, gamma, n: int) -> float:
    """psi(t,w)(e^gamma, n) = t^(n delta - w gamma) / S_delta(t)^n.

    gamma must be a weight of the n-th tensor power (NotAWeight otherwise);
    the value is multiplicative under concatenation."""
    cartan = point.cartan
    gamma = weight(gamma)
    if paths.count_paths(cartan, "free", point.delta, gamma, n) == 0:
        raise NotAWeight(f"{gamma} is not a weight at level {n}")
    ndelta = wscale(n, point.delta)
    e = cartan.alpha_coords(wsub(ndelta, cartan.apply(point.w, gamma)))
    assert all(c >= 0 and c.denominator == 1 for c in e)
    return chars.monomial(point.t, e) / point.s_delta**n


def drift(point: BoundaryPoint) -> tuple:
    return point.drift


# -- drift inversion -------------------------------------------------------------


def _face_newton(cartan, delta, support, target, grad_tol=NEWTON_GRAD_TOL,
                 max_iter=NEWTON_MAX_ITER):
    """Solve grad log S_delta(e^u) = target on the face cut out by `support`.

    The objective f(u) = log sum_gamma K e^(E u) - target . u is strictly
    convex on the face coordinates; damped Newton with Armijo backtracking.
    Returns the u vector indexed by `support`.
    """
    if not support:
        return {}
    gammas, mults, _, exps_full = _delta_tables(cartan, delta)
    rows = [k for k, g in enumerate(gammas)
            if all(exps_full[k][j] == 0 for j in range(cartan.rank)
                   if j not in support)]
    e_mat = np.array([[exps_full[k][j] for j in support] for k in rows])
    logm = np.log(np.array([mults[k] for k in rows]))
    g_target = np.array([float(target[j]) for j in support])
    if np.any(g_target <= 0):
        raise NoConvergence(
            "face target has a nonpositive component; no interior solution",
            {"target": list(g_target), "support": list(support)},
        )

    def value_grad_hess(u):
        z = e_mat @ u + logm
        zmax = z.max()
        w = np.exp(z - zmax)
        total = w.sum()
        p = w / total
        val = zmax + math.log(total) - g_target @ u
        mean = e_mat.T @ p
        centered = e_mat - mean
        hess = centered.T @ (centered * p[:, None])
        return val, mean - g_target, hess

    u = np.zeros(len(support))
    val, grad, hess = value_grad_hess(u)
    for iteration in range(max_iter):
        if np.max(np.abs(grad)) < grad_tol:
            return dict(zip(support, u))
        try:
            step = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hess + 1e-12 * np.eye(len(u)), -grad,
                                   rcond=None)[0]
        tau = 1.0
        descent = grad @ step
        gnorm = np.max(np.abs(grad))
        for _ in range(60):
            cand = u + tau * step
            cval, cgrad, chess = value_grad_hess(cand)
            # Armijo with a rounding allowance, or sufficient gradient decay
            # (the pure Armijo test stalls once |descent| drops below the
            # floating-point noise of the objective)
            if cval <= val + 1e-4 * tau * descent + 1e-14 * (1.0 + abs(val)) \
                    or np.max(np.abs(cgrad)) <= 0.5 * gnorm:
                break
            tau *= 0.5
        u, val, grad, hess = cand, cval, cgrad, chess
    raise NoConvergence(
        "Newton failed to reach gradient tolerance",
        {"residual": float(np.max(np.abs(grad))), "iterations": max_iter,
         "support": list(support)},
    )


def invert_drift(cartan: CartanDatum, delta, m) -> BoundaryPoint:
    """The inverse of the drift map: m in K(delta) -> canonical (t, w).

    Procedure: exact face location of m, t_i = 0 off the face, damped Newton
    in log coordinates on the face (gradient tolerance 1e-12), clamp t_i to 1
    within 1e-9, re-canonicalize w.  Round trips close within 1e-8."""
    delta = weight(delta)
    loc = polytope.locate(cartan, delta, m, strict=True)
    support = loc.face.indices
    target = cartan.alpha_coords(wsub(delta, loc.y))
    assert all(c == 0 for k, c in enumerate(target) if k not in support)
    # interior solutions need strictly positive targets; drop exact-zero
    # coordinates when the reduced support is itself admissible
    active = tuple(k for k in support if target[k] != 0)
    if active != support and polytope.is_admissible(cartan, delta, active):
        support = active
    u = _face_newton(cartan, delta, support, [float(c) for c in target])
    t = [0.0] * cartan.rank
    for i in support:
        ti = math.exp(u[i])
        assert ti <= 1.0 + 1e-6, f"t_{i} = {ti} left the box"
        if abs(ti - 1.0) < CLAMP_TO_ONE:
            ti = 1.0
        t[i] = min(ti, 1.0)
    w = minimal_coset_rep(cartan, loc.w, stabilizer_set(cartan, delta, t))
    return BoundaryPoint(cartan, delta, t, w)


# -- central measures --------------------------------------------------------------


class CentralMeasure:
    """Evaluator p(lambda, n) and Markov kernel of an extremal central measure.

    kind 'free': the walk on the full weight lattice with i.i.d. increments;
    kind 'chamber': the dominant-chamber walk, time-homogeneous kernel
    Q(lam -> mu) = e(lam, mu) S_{mu, lam+delta}(t) / (S_delta(t) S_lam(t)).
    """

    def __init__(self, kind: str, point: BoundaryPoint):
        if kind not in ("free", "chamber"):
            raise ValueError("kind must be 'free' or 'chamber'")
        if kind == "chamber" and point.w != point.cartan.identity:
            raise NotDominantDrift(
                "chamber measures require a dominant drift (w = identity)")
        self.kind = kind
        self.point = point
        self.cartan = point.cartan
        self.delta = point.delta

    def p(self, lam, n: int) -> float:
        """Probability of any single length-n path ending at lam."""
        lam = weight(lam)
        if self.kind == "free":
            return psi_eval(self.point, lam, n)
        ndelta = wscale(n, self.delta)
        return chars.evaluate_S(self.cartan, lam, ndelta, self.point.t) \
            / self.point.s_delta**n

    def kernel_row(self, lam) -> dict:
        """Transition probabilities out of lam (from any level, homogeneous)."""
        lam = weight(lam)
        cartan = self.cartan
        t = self.point.t
        if self.kind == "free":
            gammas, mults, _, _ = _delta_tables(cartan, self.delta)
            row = {}
            for g, k in zip(gammas, mults):
                e = cartan.alpha_coords(wsub(self.delta, cartan.apply(self.point.w, g)))
                val = k * chars.monomial(t, e) / self.point.s_delta
                if val:
                    row[wadd(lam, g)] = row.get(wadd(lam, g), 0.0) + val
            return row
        s_lam = chars.evaluate_S(cartan, lam, lam, t)
        row = {}
        for mu, e in _chamber_edges(cartan, self.delta, lam):
            val = e * chars.evaluate_S(cartan, mu, wadd(lam, self.delta), t) \
                / (self.point.s_delta * s_lam)
            if val:
                row[mu] = val
        return row

    def to_jsonable(self) -> dict:
        pt = self.point
        return {
            "type": f"{self.cartan.family}{self.cartan.rank}",
            "rank": self.cartan.rank,
            "kind": self.kind,
            "delta": [str(c) for c in self.delta],
            "t": [repr(x) for x in pt.t],
            "w_word": [i + 1 for i in pt.w.word],
            "drift": [repr(x) for x in pt.drift],
            "s_hat": repr(s_hat_t(self.cartan, self.delta, pt.t))
            if all(x > 0 for x in pt.t) else "inf",
        }


def _chamber_edges(cartan, delta, lam):
    """Edges out of lam in the chamber graph: (mu, letter count)."""
    ends, floors = paths._letter_data(cartan, delta)
    rank = cartan.rank
    row = {}
    for end, floor in zip(ends, floors):
        if all(lam[k] + floor[k] >= 0 for k in range(rank)):
            mu = wadd(lam, end)
            row[mu] = row.get(mu, 0) + 1
    return sorted(row.items())


def central_measure_from_point(kind: str, point: BoundaryPoint) -> CentralMeasure:
    return CentralMeasure(kind, point)


def central_measure(cartan: CartanDatum, delta, kind: str, m) -> CentralMeasure:
    """Measure for a drift target m: m in K(delta) (free) or K(delta)+ (chamber)."""
    point = invert_drift(cartan, delta, m)
    if kind == "chamber" and point.w != cartan.identity:
        raise NotDominantDrift(f"{m} is not in K(delta)+")
    return CentralMeasure(kind, point)


def harmonicity_residual(measure: CentralMeasure, n_max: int) -> float:
    """max over n <= n_max and level-n vertices of
    |p(lam, n) - sum_mu e(lam, mu) p(mu, n+1)|."""
    g = paths.build_growth_graph(measure.cartan, measure.kind, measure.delta,
                                 n_max + 1)
    worst = 0.0
    for n in range(n_max + 1):
        for lam in g.levels[n]:
            lhs = measure.p(lam, n)
            rhs = sum(e * measure.p(mu, n + 1) for mu, e in g.edges[n][lam])
            worst = max(worst, abs(lhs - rhs))
    return worst


# -- c-harmonic classification -------------------------------------------------------


def s_hat_t(cartan: CartanDatum, delta, t) -> float:
    """s_delta evaluated at t: S_delta(t) / t^delta, +inf when some t_i = 0."""
    delta = weight(delta)
    t = tuple(float(x) for x in t)
    if any(x == 0.0 for x in t):
        return math.inf
    s = chars.evaluate_S(cartan, delta, delta, t)
    return s / chars.monomial(t, cartan.alpha_coords(delta))


def s_hat(cartan: CartanDatum, delta, m) -> float:
    """s_hat of the chamber measure with drift m (requires m in K(delta)+)."""
    point = invert_drift(cartan, delta, m)
    if point.w != cartan.identity:
        raise NotDominantDrift(f"{m} is not in K(delta)+")
    return s_hat_t(cartan, delta, point.t)


@dataclass(frozen=True)
class CHarmonicLevel:
    """The extremal c-harmonic set: empty (c < 1), the t = 1 singleton (c = 1),
    or a sampler of the level set {s_hat = c Z} (c > 1)."""

    cartan: CartanDatum
    delta: tuple
    c: float
    kind: str  # "empty" | "singleton" | "level"

    def sample_points(self, count: int, seed: int = 0) -> list:
        """Boundary points on the level set, found by bisection along rays from
        t = 1 toward box faces (each ray crosses the level set exactly once)."""
        if self.kind == "empty":
            return []
        ones = (1.0,) * self.cartan.rank
        if self.kind == "singleton":
            return [boundary_point(self.cartan, self.delta, ones)]
        z = chars.weyl_dim(self.cartan, self.delta)
        target = self.c * z
        rng = np.random.default_rng(seed)
        out = []
        while len(out) < count:
            direction = rng.random(self.cartan.rank)
            direction[int(rng.integers(self.cartan.rank))] = 0.0

            def val(s):
                t = tuple(1.0 + s * (d - 1.0) for d in direction)
                return s_hat_t(self.cartan, self.delta, t)

            lo, hi = 0.0, 1.0 - 1e-12
            if val(hi) < target:
                continue
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if val(mid) < target:
                    lo = mid
                else:
                    hi = mid
            s = 0.5 * (lo + hi)
            t = tuple(1.0 + s * (d - 1.0) for d in direction)
            out.append(boundary_point(self.cartan, self.delta, t))
        return out


def c_harmonic_level(cartan: CartanDatum, delta, c: float) -> CHarmonicLevel:
    """Classification of extremal c-harmonic measures on the chamber walk.

    Empty for c < 1; for c = 1 the singleton at t = 1 (drift 0); for c > 1 a
    sampler of the level set {s_hat = c dim V(delta)}."""
    if c <= 0:
        raise ValueError("c must be positive")
    delta = weight(delta)
    if c < 1:
        kind = "empty"
    elif c == 1:
        kind = "singleton"
    else:
        kind = "level"
    return CHarmonicLevel(cartan=cartan, delta=delta, c=float(c), kind=kind)


def harmonic_function_check(cartan: CartanDatum, delta, t, n_max: int = 4) -> float:
    """Residual of the c-harmonicity of h(lam) = s_lam(t) with c = s_delta(t)/Z.

    max over dominant vertices lam at levels <= n_max of
    |s_lam(t) - (1/(cZ)) sum_mu e(lam, mu) s_mu(t)|; t must lie in (0, 1]^d."""
    delta = weight(delta)
    t = tuple(float(x) for x in t)
    if any(x <= 0 or x > 1 for x in t):
        raise ValueError("t must lie in the half-open box (0, 1]^d")

    def s_val(lam):
        return chars.evaluate_S(cartan, lam, lam, t) \
            / chars.monomial(t, cartan.alpha_coords(lam))

    cz = s_hat_t(cartan, delta, t)  # c Z = s_delta(t)
    g = paths.build_growth_graph(cartan, "chamber", delta, n_max + 1)
    worst = 0.0
    for n in range(n_max + 1):
        for lam in g.levels[n]:
            lhs = s_val(lam)
            rhs = sum(e * s_val(mu) for mu, e in g.edges[n][lam]) / cz
            worst = max(worst, abs(lhs - rhs))
    return worst


# -- exports ---------------------------------------------------------------------------


def measure_to_json(measure: CentralMeasure) -> str:
    return json.dumps(measure.to_jsonable(), sort_keys=True)


def kernel_rows_csv(measure: CentralMeasure, lams) -> str:
    """CSV rows (lambda, mu, probability) for the kernel out of each given vertex."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["lambda", "mu", "probability"])
    for lam in lams:
        lam = weight(lam)
        for mu, q in sorted(measure.kernel_row(lam).items()):
            writer.writerow([
                " ".join(str(c) for c in lam),
                " ".join(str(c) for c in mu),
                repr(q),
            ])
    return buf.getvalue()

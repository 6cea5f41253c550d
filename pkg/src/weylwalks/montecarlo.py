"""Samplers for free and chamber walks under extremal central measures,
law-of-large-numbers checks, and exact equality-in-law verification of the
Pitman chain (deterministic enumeration, never two-sample statistics).

RNG contract: numpy Generators seeded as default_rng([seed, rep]); per-rep
streams are independent and the whole report is reproducible from
(configuration, seed).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DimensionCap, EnumerationCap, NotDominantDrift
from .rootdata import CartanDatum, weight, wadd, wsub, wzero
from . import boundary, chars, paths

LLN_PASS_THRESHOLD = 0.05  # at 5000 steps, about 3.5 standard errors (see lln_check)
KERNEL_NUDGE = 1e-6        # mixed exact-1 components are nudged for long walks
FALLBACK_DIM_CAP = 10**5


@dataclass(frozen=True)
class Trajectory:
    """A sampled walk: crystal-letter indices and exact positions at integer times."""

    letters: tuple
    positions: tuple
    seed: object

    def empirical_drift(self):
        n = len(self.letters)
        end = self.positions[-1]
        return tuple(float(c) / n for c in end)


@dataclass(frozen=True)
class SimReport:
    n_steps: int
    n_reps: int
    empirical_drift: tuple
    target_drift: tuple
    max_deviation: float
    deviations: tuple
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.threshold

    def to_jsonable(self) -> dict:
        return {
            "n_steps": self.n_steps,
            "n_reps": self.n_reps,
            "empirical_drift": [repr(x) for x in self.empirical_drift],
            "target_drift": [repr(x) for x in self.target_drift],
            "max_deviation": repr(self.max_deviation),
            "deviations": [repr(x) for x in self.deviations],
            "threshold": self.threshold,
            "passed": self.passed,
        }


# -- sampling -------------------------------------------------------------------


def _free_letter_probs(measure):
    """Probability of each crystal letter under the free measure."""
    cartan = measure.cartan
    cb = paths.crystal(cartan, measure.delta)
    probs = []
    for p in cb.paths:
        e = cartan.alpha_coords(
            wsub(measure.delta, cartan.apply(measure.point.w, p.endpoint())))
        probs.append(chars.monomial(measure.point.t, e) / measure.point.s_delta)
    arr = np.array(probs)
    assert abs(arr.sum() - 1.0) < 1e-9
    return arr / arr.sum()


class _ChamberStepper:
    """Homogeneous chamber kernel evaluated per visited vertex.

    t = 1: exact Weyl-dimension ratios.  Interior t (after nudging exact-1
    components): Weyl-numerator ratios, |W| terms per vertex independently of
    the vertex size.  t with zeros: direct S-evaluation with a dimension cap.
    """

    def __init__(self, measure):
        self.cartan = measure.cartan
        self.delta = measure.delta
        self.measure = measure
        t = measure.point.t
        self.all_ones = all(x == 1.0 for x in t)
        self.has_zero = any(x == 0.0 for x in t)
        if not self.all_ones and not self.has_zero:
            self.nudged = tuple(min(x, 1.0 - KERNEL_NUDGE) for x in t)
            self.log_t = np.log(np.array(self.nudged))
            self.s_delta = chars.evaluate_S(self.cartan, self.delta, self.delta,
                                            self.nudged)
            # t^(lam+delta-mu) only depends on the step mu-lam = a letter endpoint
            ends, _ = paths._letter_data(self.cartan, self.delta)
            self.step_monomials = {
                end: chars.monomial(
                    self.nudged, self.cartan.alpha_coords(wsub(self.delta, end)))
                for end in set(ends)
            }
        self.rows = {}

    def row(self, lam):
        cached = self.rows.get(lam)
        if cached is not None:
            return cached
        edges = boundary._chamber_edges(self.cartan, self.delta, lam)
        if self.all_ones:
            z = chars.weyl_dim(self.cartan, self.delta)
            dim_lam = chars.weyl_dim(self.cartan, lam)
            probs = [e * chars.weyl_dim(self.cartan, mu) / (z * dim_lam)
                     for mu, e in edges]
            probs = [float(q) for q in probs]
        elif not self.has_zero:
            # Q(lam -> mu) = e t^(lam+delta-mu) S_{mu,mu}/(S_delta S_{lam,lam})
            # with S_{nu,nu}(t) = N_nu(t)/N_0(t) by the Weyl character formula
            nums = chars.weyl_numerator_batch(
                self.cartan, [lam] + [mu for mu, _ in edges], self.log_t)
            probs = [
                e * self.step_monomials[wsub(mu, lam)]
                * nums[1 + k] / (self.s_delta * nums[0])
                for k, (mu, e) in enumerate(edges)
            ]
        else:
            if chars.weyl_dim(self.cartan, lam) > FALLBACK_DIM_CAP:
                raise DimensionCap(
                    "chamber sampling on a boundary face outgrew the exact "
                    "evaluation cap; boundary-parameter walks are supported "
                    "at desk scale only")
            row = self.measure.kernel_row(lam)
            probs = [row.get(mu, 0.0) for mu, _ in edges]
        arr = np.array(probs, dtype=float)
        total = arr.sum()
        assert abs(total - 1.0) < 1e-6, f"kernel row sums to {total}"
        out = ([mu for mu, _ in edges], arr / total)
        self.rows[lam] = out
        return out


def sample_trajectory(measure, steps: int, seed) -> Trajectory:
    """Sample a length-`steps` walk under the measure, deterministic given seed.

    Free kind: i.i.d. crystal letters with probability K t^(delta - w gamma) /
    S_delta(t).  Chamber kind: Markov steps with the homogeneous kernel, then
    a uniformly random chamber-valid letter consistent with the move.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    cartan = measure.cartan
    rng = np.random.default_rng(seed)
    ends, floors = paths._letter_data(cartan, measure.delta)
    positions = [wzero(cartan.rank)]
    letters = []
    if measure.kind == "free":
        probs = _free_letter_probs(measure)
        draws = rng.choice(len(probs), size=steps, p=probs) if steps else []
        for b in draws:
            letters.append(int(b))
            positions.append(wadd(positions[-1], ends[int(b)]))
    else:
        # row caches are pure; share them across trajectories of one measure
        stepper = getattr(measure, "_chamber_stepper", None)
        if stepper is None:
            stepper = _ChamberStepper(measure)
            measure._chamber_stepper = stepper
        lam = positions[0]
        for _ in range(steps):
            mus, probs = stepper.row(lam)
            mu = mus[int(rng.choice(len(mus), p=probs))]
            eps = wsub(mu, lam)
            valid = [b for b, end in enumerate(ends)
                     if end == eps and all(lam[k] + floors[b][k] >= 0
                                           for k in range(cartan.rank))]
            letters.append(int(valid[int(rng.integers(len(valid)))]))
            lam = mu
            positions.append(lam)
    return Trajectory(letters=tuple(letters), positions=tuple(positions), seed=seed)


def lln_check(measure, steps: int, reps: int, seed: int = 0,
              threshold: float = LLN_PASS_THRESHOLD) -> SimReport:
    """Check tau(n)/n against the drift, sup-norm per rep.

    The 0.05 default threshold at n = 5000 is about 3.5 standard errors for
    increments bounded by the weight diameter of the letter alphabet, so a
    false failure is a < 1e-3 event per coordinate."""
    if steps < 1000:
        raise ValueError("LLN checks need at least 1000 steps")
    target = measure.point.drift
    deviations = []
    acc = np.zeros(len(target))
    for rep in range(reps):
        traj = sample_trajectory(measure, steps, seed=[seed, rep])
        emp = np.array(traj.empirical_drift())
        acc += emp
        deviations.append(float(np.max(np.abs(emp - np.array(target)))))
    return SimReport(
        n_steps=steps,
        n_reps=reps,
        empirical_drift=tuple(acc / reps),
        target_drift=tuple(float(x) for x in target),
        max_deviation=max(deviations),
        deviations=tuple(deviations),
        threshold=threshold,
    )


# -- exact equality in law ----------------------------------------------------------


def pitman_equality_in_law(cartan: CartanDatum, delta, m, n: int,
                           cap: int = 10**6) -> float:
    """Total-variation distance between the Pitman-transformed free endpoint law
    and the chamber endpoint law at time n, by exact enumeration.

    m must lie in K(delta)+; all |B(delta)|^n letter words are enumerated,
    weighted by the free measure, pushed through the Pitman chain along the
    fixed reduced word of the longest element, and aggregated by endpoint."""
    delta = weight(delta)
    point = boundary.invert_drift(cartan, delta, m)
    if point.w != cartan.identity:
        raise NotDominantDrift(f"{m} is not in K(delta)+")
    free = boundary.CentralMeasure("free", point)
    chamber = boundary.CentralMeasure("chamber", point)

    cb = paths.crystal(cartan, delta)
    letter_probs = _free_letter_probs(free)
    if len(cb.paths) ** n > cap:
        raise EnumerationCap(f"|B|^n = {len(cb.paths)**n} exceeds cap {cap}")

    pushed = {}
    for word in product(range(len(cb.paths)), repeat=n):
        prob = 1.0
        for b in word:
            prob *= letter_probs[b]
        if prob == 0.0:
            continue
        path = paths.word_path(cartan, delta, word)
        end = paths.pitman_chain(cartan, path).endpoint()
        assert cartan.is_dominant(end)
        pushed[end] = pushed.get(end, 0.0) + prob

    exact = {}
    for lam, cnt in paths.build_growth_graph(cartan, "chamber", delta, n).levels[n].items():
        exact[lam] = cnt * chamber.p(lam, n)

    tv = 0.0
    for lam in set(pushed) | set(exact):
        tv += abs(pushed.get(lam, 0.0) - exact.get(lam, 0.0))
    return 0.5 * tv


# -- exports --------------------------------------------------------------------------


def trajectory_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    rank = len(traj.positions[0])
    writer.writerow(["step"] + [f"omega_{i+1}" for i in range(rank)])
    for k, pos in enumerate(traj.positions):
        writer.writerow([k] + [str(c) for c in pos])
    return buf.getvalue()


def report_to_json(report: SimReport) -> str:
    return json.dumps(report.to_jsonable(), sort_keys=True)

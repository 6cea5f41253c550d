"""Characters as weight multisets: Freudenthal multiplicities, Weyl dimensions,
evaluation of the shifted characters S_{lambda,mu}, tensor and exterior-power
decompositions, and the Toeplitz-minor total-positivity check.

The combinatorial layer (multiplicities, decompositions) is exact integer
arithmetic; evaluations at a parameter vector t in [0,1]^d are binary64 with
the convention 0**0 = 1, so boundary parameters are safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DimensionCap, OrderViolation
from .rootdata import CartanDatum, WeylElement, weight, wadd, wsub, wzero

DEFAULT_DIM_CAP = 10**6


@dataclass(frozen=True)
class WeightMultiset:
    """A character: sparse map weight -> multiplicity, with its highest weight."""

    top: tuple
    entries: dict

    def total_mass(self) -> int:
        return sum(self.entries.values())

    def __iter__(self):
        return iter(self.entries.items())


def _check_dominant_integral(cartan, lam):
    lam = weight(lam)
    if len(lam) != cartan.rank:
        raise ValueError(f"weight {lam} has wrong rank")
    if not cartan.is_dominant(lam) or any(c.denominator != 1 for c in lam):
        raise ValueError(f"{lam} is not a dominant integral weight")
    return lam


def weyl_dim(cartan: CartanDatum, lam) -> int:
    """dim V(lambda) by the Weyl dimension formula, evaluated in exact rationals."""
    return _weyl_dim(cartan, _check_dominant_integral(cartan, lam))


@lru_cache(maxsize=None)
def _weyl_dim(cartan, lam):
    num = Fraction(1)
    lam_rho = wadd(lam, cartan.rho)
    for alpha in cartan.positive_roots:
        num *= cartan.pairing(lam_rho, alpha) / cartan.pairing(cartan.rho, alpha)
    assert num.denominator == 1 and num > 0
    return int(num)


def _integer_alpha_coords(cartan, v):
    """Simple-root coordinates of v if they are all integers, else None."""
    coords = cartan.alpha_coords(v)
    if any(c.denominator != 1 for c in coords):
        return None
    return tuple(int(c) for c in coords)


def weight_multiplicities(cartan: CartanDatum, lam, dim_cap: int = DEFAULT_DIM_CAP) -> WeightMultiset:
    """Weight multiset of V(lambda) by the Freudenthal recursion.

    Dominant weights mu <= lambda are processed by increasing height of
    lambda - mu; non-dominant multiplicities come for free by W-invariance.
    Raises DimensionCap when dim V(lambda) exceeds `dim_cap`.
    """
    lam = _check_dominant_integral(cartan, lam)
    dim = _weyl_dim(cartan, lam)
    if dim > dim_cap:
        raise DimensionCap(f"dim V({lam}) = {dim} exceeds cap {dim_cap}")
    return _weight_multiplicities(cartan, lam)


@lru_cache(maxsize=None)
def _weight_multiplicities(cartan, lam):
    lowest = cartan.apply(cartan.w0, lam)
    kmax = _integer_alpha_coords(cartan, wsub(lam, lowest))
    assert kmax is not None and all(k >= 0 for k in kmax)

    dominants = []
    for ks in itertools.product(*(range(k + 1) for k in kmax)):
        mu = wsub(lam, cartan.from_alpha(ks))
        if cartan.is_dominant(mu):
            dominants.append((sum(ks), mu))
    dominants.sort()

    lam_rho = wadd(lam, cartan.rho)
    c_top = cartan.pairing(lam_rho, lam_rho)
    mult_dom = {}
    for height, mu in dominants:
        if height == 0:
            mult_dom[mu] = 1
            continue
        mu_rho = wadd(mu, cartan.rho)
        denom = c_top - cartan.pairing(mu_rho, mu_rho)
        assert denom > 0
        acc = Fraction(0)
        for alpha in cartan.positive_roots:
            nu = mu
            while True:
                nu = wadd(nu, alpha)
                m = mult_dom.get(_dominant(cartan, nu))
                if m is None:
                    break
                acc += m * cartan.pairing(nu, alpha)
        val = 2 * acc / denom
        assert val.denominator == 1 and val > 0
        mult_dom[mu] = int(val)

    entries = {}
    for mu, m in mult_dom.items():
        for nu in cartan.orbit(mu):
            entries[nu] = m
    assert sum(entries.values()) == _weyl_dim(cartan, lam)
    return WeightMultiset(top=lam, entries=entries)


def _dominant(cartan, v):
    """Dominant representative, no coset bookkeeping (internal fast path)."""
    y = v
    while not cartan.is_dominant(y):
        i = next(k for k in range(cartan.rank) if y[k] < 0)
        y = cartan.reflect(y, i)
    return y


@lru_cache(maxsize=None)
def _eval_table(cartan, lam, mu):
    """(exponents, multiplicities) arrays for S_{lambda,mu}: one row per weight.

    Exponent row = simple-root coordinates of mu - gamma, nonnegative integers.
    """
    ms = _weight_multiplicities(cartan, lam)
    diff = _integer_alpha_coords(cartan, wsub(mu, lam))
    if diff is None or any(k < 0 for k in diff):
        raise OrderViolation(f"{mu} is not >= {lam} in the root order")
    exps = []
    mults = []
    for gamma, m in sorted(ms.entries.items()):
        k = _integer_alpha_coords(cartan, wsub(mu, gamma))
        assert k is not None and all(x >= 0 for x in k)
        exps.append(k)
        mults.append(m)
    return np.array(exps, dtype=float), np.array(mults, dtype=float)


def monomial(t, exponents) -> float:
    """prod t_i**k_i with the 0**0 = 1 convention."""
    out = 1.0
    for ti, ki in zip(t, exponents):
        kf = float(ki)
        if kf == 0.0:
            continue
        out *= float(ti) ** kf
    return out


def evaluate_S(cartan: CartanDatum, lam, mu, t) -> float:
    """S_{lambda,mu}(t) = sum_gamma K_{lambda,gamma} t^(mu - gamma).

    Requires mu - lambda in Q+ (OrderViolation otherwise); the gamma = lambda
    term contributes t^(mu-lambda), so the value equals dim V(lambda) at t = 1
    and is 1 at mu = lambda, t = 0 under the 0**0 = 1 convention.
    """
    lam = _check_dominant_integral(cartan, lam)
    exps, mults = _eval_table(cartan, lam, weight(mu))
    tv = np.asarray([float(x) for x in t], dtype=float)
    vals = tv[None, :] ** exps
    return float(np.dot(mults, np.prod(vals, axis=1)))


# -- decomposition into irreducibles -----------------------------------------


def decompose_character(cartan: CartanDatum, entries: dict) -> dict:
    """Decompose a W-invariant weight multiset into irreducible characters.

    Pivot order: dominant support weight of maximal root-lattice height, ties
    broken omega-lex largest; this refines the dominance order, so the pivot is
    always a highest weight and multiplicities stay nonnegative (asserted).
    """
    work = {k: v for k, v in entries.items() if v}
    out = {}
    while work:
        cands = [nu for nu in work if cartan.is_dominant(nu)]
        assert cands, f"nonempty multiset without dominant support: {work}"
        nu = max(cands, key=lambda x: (sum(cartan.alpha_coords(x)), x))
        m = work[nu]
        assert m > 0
        out[nu] = out.get(nu, 0) + m
        for gamma, k in _weight_multiplicities(cartan, nu).entries.items():
            r = work.get(gamma, 0) - m * k
            assert r >= 0, f"peeling produced negative multiplicity at {gamma}"
            if r:
                work[gamma] = r
            else:
                work.pop(gamma, None)
    return out


def convolve_multisets(a: dict, b: dict) -> dict:
    out = {}
    for ga, ma in a.items():
        for gb, mb in b.items():
            g = wadd(ga, gb)
            out[g] = out.get(g, 0) + ma * mb
    return out


def tensor_decompose(cartan: CartanDatum, lam, delta, dim_cap: int = DEFAULT_DIM_CAP) -> dict:
    """Multiplicities of the irreducibles of V(lambda) (x) V(delta).

    Independent character oracle: convolve the two weight multisets, then peel
    highest weights.  sum_nu mult(nu) dim V(nu) = dim V(lambda) dim V(delta).
    """
    lam = _check_dominant_integral(cartan, lam)
    delta = _check_dominant_integral(cartan, delta)
    if _weyl_dim(cartan, lam) * _weyl_dim(cartan, delta) > dim_cap:
        raise DimensionCap("tensor product dimension exceeds cap")
    prod = convolve_multisets(
        weight_multiplicities(cartan, lam, dim_cap).entries,
        weight_multiplicities(cartan, delta, dim_cap).entries,
    )
    return decompose_character(cartan, prod)


def exterior_power_weights(cartan: CartanDatum, delta, k: int) -> dict:
    """Weight multiset of the k-th exterior power of V(delta).

    Degree-k coefficient of prod_j (1 + x e^(gamma_j)) over the weight multiset
    of V(delta), i.e. all k-subset sums counted with multiplicity.
    """
    delta = _check_dominant_integral(cartan, delta)
    if not 0 <= k <= _weyl_dim(cartan, delta):
        raise ValueError(f"k={k} out of range 0..{_weyl_dim(cartan, delta)}")
    return _exterior_power_weights(cartan, delta, int(k))


@lru_cache(maxsize=None)
def _exterior_power_weights(cartan, delta, k):
    letters = []
    for gamma, m in sorted(_weight_multiplicities(cartan, delta).entries.items()):
        letters.extend([gamma] * m)
    layers = [{} for _ in range(k + 1)]
    layers[0][wzero(cartan.rank)] = 1
    for gamma in letters:
        for deg in range(k, 0, -1):
            for g, m in layers[deg - 1].items():
                s = wadd(g, gamma)
                layers[deg][s] = layers[deg].get(s, 0) + m
    return layers[k]


def exterior_power_char(cartan: CartanDatum, delta, k: int) -> dict:
    """Irreducible decomposition of the k-th exterior power character.

    All coefficients are nonnegative integers (the wedge is a submodule of the
    k-th tensor power); the peeling asserts this.
    """
    return decompose_character(cartan, exterior_power_weights(cartan, delta, k))


# -- total positivity ---------------------------------------------------------


def wedge_sequence_values(cartan: CartanDatum, delta, t, w: WeylElement) -> list:
    """a_k = value of the k-th exterior-power character under the morphism (t, w).

    a_k = sum_gamma mult(gamma) t^(k delta - w gamma) / S_delta(t)^k for
    k = 0..dim V(delta); each a_k is nonnegative.
    """
    delta = _check_dominant_integral(cartan, delta)
    n = _weyl_dim(cartan, delta)
    s_delta = evaluate_S(cartan, delta, delta, t)
    tv = [float(x) for x in t]
    out = []
    for k in range(n + 1):
        acc = 0.0
        kdelta = tuple(k * c for c in delta)
        for gamma, m in exterior_power_weights(cartan, delta, k).items():
            e = cartan.alpha_coords(wsub(kdelta, cartan.apply(w, gamma)))
            assert all(c >= 0 and c.denominator == 1 for c in e)
            acc += m * monomial(tv, e)
        out.append(acc / s_delta**k)
    return out


def toeplitz_min_minor(seq, kmax: int, chunk: int = 200000) -> float:
    """Minimum over the k x k minors, k <= kmax, of the lower-triangular Toeplitz
    matrix of seq, truncated to the window [0, len(seq) + kmax).

    Row/column index sets are enumerated over the window; determinants are
    batched through numpy in chunks to bound memory.
    """
    n = len(seq)
    size = n + kmax
    a = np.zeros(size, dtype=float)
    a[:n] = seq
    idx = np.subtract.outer(np.arange(size), np.arange(size))
    mat = np.where(idx >= 0, a[np.clip(idx, 0, size - 1)], 0.0)
    best = float(np.min(mat))
    for k in range(2, kmax + 1):
        combos = np.array(list(itertools.combinations(range(size), k)))
        nc = len(combos)
        rows_per_batch = max(1, chunk // (nc * k * k))
        for start in range(0, nc, rows_per_batch):
            rows = combos[start:start + rows_per_batch]
            sub = mat[rows[:, None, :, None], combos[None, :, None, :]]
            dets = np.linalg.det(sub.reshape(-1, k, k))
            best = min(best, float(np.min(dets)))
    return best


def total_positivity_min_minor(cartan: CartanDatum, delta, t, w: WeylElement, kmax: int) -> float:
    """Minimum Toeplitz minor of the wedge-character sequence at (t, w).

    The sequence comes from a polynomial whose roots are the nonpositive reals
    -f(e^gamma, 1), so every minor is >= 0 up to roundoff.
    """
    if kmax > 4:
        raise ValueError("kmax is capped at 4")
    seq = wedge_sequence_values(cartan, delta, t, w)
    return toeplitz_min_minor(seq, kmax)


# -- Weyl-formula evaluation (large weights, interior t) ----------------------


@lru_cache(maxsize=None)
def _weyl_pack(cartan):
    """Float pack (matrices, dets, omega->alpha) for vectorized numerator sums."""
    mats = np.array([[[float(x) for x in row] for row in w.matrix]
                     for w in cartan.elements])
    dets = np.array([float(cartan.det(w)) for w in cartan.elements])
    to_alpha = np.array([[float(c) for c in row] for row in cartan._omega_to_alpha])
    return mats, dets, to_alpha


def weyl_numerator(cartan: CartanDatum, lam, log_t: np.ndarray) -> float:
    """N_lambda(t) = sum_w det(w) t^((lam+rho) - w(lam+rho)) for t in (0,1)^d.

    Exponents are the nonnegative simple-root coordinates; `log_t` is the
    componentwise log of t.  By the Weyl character formula,
    S_{lam,lam}(t) = N_lambda(t)/N_0(t); the cost is |W| terms, independent
    of dim V(lambda).
    """
    return float(weyl_numerator_batch(cartan, [lam], log_t)[0])


def weyl_numerator_batch(cartan: CartanDatum, lams, log_t: np.ndarray) -> np.ndarray:
    """N_lambda(t) for a stack of weights in one vectorized pass."""
    mats, dets, to_alpha = _weyl_pack(cartan)
    rho = np.array([float(c) for c in cartan.rho])
    x = np.array([[float(c) for c in lam] for lam in lams]) + rho
    images = np.einsum("wij,mj->mwi", mats, x)
    exps = (x[:, None, :] - images) @ to_alpha.T
    return np.exp(exps @ log_t) @ dets


# -- exports ------------------------------------------------------------------


def character_jsonable(ms: WeightMultiset) -> list:
    return [
        {"weight": [str(c) for c in gamma], "mult": m}
        for gamma, m in sorted(ms.entries.items())
    ]


def minor_report_rows(cartan, delta, samples) -> list:
    """CSV rows (t, w_word, kmax, min_minor) for a batch of minor checks."""
    rows = [("t", "w_word", "kmax", "min_minor")]
    for t, w, kmax in samples:
        val = total_positivity_min_minor(cartan, delta, t, w, kmax)
        word = "-".join(str(i + 1) for i in w.word) or "e"
        rows.append((" ".join(repr(float(x)) for x in t), word, str(kmax), repr(val)))
    return rows

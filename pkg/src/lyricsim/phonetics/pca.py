"""PCA over feature-pair frequency vectors, and the phonetic vectors it yields.

The solver is blocked subspace iteration on the covariance matrix with
Rayleigh-Ritz extraction, guard vectors to deflate cluster boundaries, a
seeded start basis, and a fixed tolerance.  Identical inputs and seed
reproduce identical models bit for bit.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ConvergenceFailure, EmptyHistogram, InsufficientData
from .. import util
from .features import FeaturePairCounts, Pair

log = logging.getLogger(__name__)

PCA_FORMAT_VERSION = 1
DEFAULT_DIMS = 50
_TOL = 1e-8
_MAX_ITER = 1000
_GUARD = 8  # extra iterated vectors past the requested components


def _ritz_eigh(sym: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Dense eigen-decomposition of the small projected matrix, eigenvalues
    descending.  LAPACK is deterministic within one build, which is all the
    reproducibility contract needs."""
    lam, vecs = np.linalg.eigh(sym)
    order = np.argsort(-lam, kind="stable")
    return lam[order], vecs[:, order]


@dataclass
class PcaModel:
    pair_index: dict[Pair, int]     # feature pair -> column, fixed at fit time
    mean: np.ndarray                # (P,)
    components: np.ndarray          # (dims, P), rows orthonormal
    explained_variance: np.ndarray  # (dims,), nonincreasing, nonnegative
    seed: int

    @property
    def dims(self) -> int:
        return self.components.shape[0]


def fit_pca_matrix(rows: np.ndarray, dims: int, seed: int,
                   tol: float = _TOL, max_iter: int = _MAX_ITER,
                   ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Principal directions of ``rows`` (n, P) by deflated subspace iteration.

    Returns (mean, components, explained_variance); variances are
    eigenvalues of the population covariance (divide by n).  Components are
    sign-fixed so each row's largest-magnitude entry is positive.
    Convergence requires every retained Ritz pair's residual to drop below
    ``tol`` relative to the leading eigenvalue within ``max_iter`` block
    iterations; otherwise ConvergenceFailure.
    """
    rows = np.asarray(rows, dtype=np.float64)
    n, p = rows.shape
    if dims < 1 or dims > p:
        raise InsufficientData(f"cannot extract {dims} components from "
                               f"a {p}-dimensional space")
    if n < dims + 1:
        raise InsufficientData(f"need >= {dims + 1} rows, got {n}")

    mean = rows.mean(axis=0)
    centered = rows - mean
    cov = centered.T @ centered / n
    floor = max(float(np.trace(cov)), 1e-300) * 1e-15

    block = min(p, dims + _GUARD)
    rng = np.random.default_rng(seed)
    basis, _ = np.linalg.qr(rng.standard_normal((p, block)))

    ritz_vectors = basis
    ritz_values = np.zeros(block)
    converged = False
    for _ in range(max_iter):
        image = cov @ basis
        projected = basis.T @ image
        projected = (projected + projected.T) / 2.0
        ritz_values, small_vecs = _ritz_eigh(projected)
        ritz_vectors = basis @ small_vecs
        image_ritz = image @ small_vecs
        residual = image_ritz[:, :dims] - ritz_vectors[:, :dims] * ritz_values[:dims]
        scale = max(float(ritz_values[0]), floor)
        if float(np.abs(residual).max(initial=0.0)) <= tol * scale:
            converged = True
            break
        basis, _ = np.linalg.qr(image_ritz)
    if not converged:
        raise ConvergenceFailure(
            f"Ritz residuals above {tol} after {max_iter} block iterations")

    components = ritz_vectors[:, :dims].T.copy()
    variances = np.maximum(ritz_values[:dims], 0.0)
    for j in range(dims):
        top = int(np.argmax(np.abs(components[j])))
        if components[j, top] < 0:
            components[j] = -components[j]

    return mean, components, variances


def fit_pca(histograms: list[FeaturePairCounts], dims: int = DEFAULT_DIMS,
            seed: int = 0) -> PcaModel:
    """Fit a PCA model on normalized feature-pair histograms.

    Each histogram with a nonzero total becomes one frequency vector over
    the union pair space (columns in sorted pair order).
    """
    nonzero = [h for h in histograms if h.total > 0]
    if len(nonzero) < dims + 1:
        raise InsufficientData(
            f"need >= {dims + 1} nonempty histograms, got {len(nonzero)}")
    pairs = sorted({pair for h in nonzero for pair in h.counts})
    if len(pairs) < dims:
        raise InsufficientData(
            f"pair space has {len(pairs)} dimensions, need >= {dims}")
    pair_index = {pair: i for i, pair in enumerate(pairs)}

    rows = np.zeros((len(nonzero), len(pairs)))
    for r, hist in enumerate(nonzero):
        for pair, count in hist.counts.items():
            rows[r, pair_index[pair]] = count / hist.total

    mean, components, variances = fit_pca_matrix(rows, dims, seed)
    return PcaModel(pair_index=pair_index, mean=mean, components=components,
                    explained_variance=variances, seed=seed)


def project_frequencies(freq: np.ndarray, model: PcaModel) -> np.ndarray:
    """Project a frequency vector over the model's pair space."""
    return model.components @ (np.asarray(freq, dtype=np.float64) - model.mean)


def phonetic_vector(hist: FeaturePairCounts, model: PcaModel) -> np.ndarray:
    """Low-dimensional phonetic vector of one histogram.

    Pairs unseen at fit time are dropped (counted and logged); the
    frequency normalization still divides by the full histogram total.
    """
    if hist.total <= 0:
        raise EmptyHistogram("histogram has no feature pairs")
    freq = np.zeros(len(model.pair_index))
    dropped = 0
    for pair, count in hist.counts.items():
        col = model.pair_index.get(pair)
        if col is None:
            dropped += 1
        else:
            freq[col] = count / hist.total
    if dropped:
        log.warning("dropped %d feature pairs unseen at fit time", dropped)
    return project_frequencies(freq, model)


# -- persistence -------------------------------------------------------------

def save_pca(model: PcaModel, path: str) -> None:
    pairs = sorted(model.pair_index, key=model.pair_index.get)
    util.write_json(path, {
        "format_version": PCA_FORMAT_VERSION,
        "pairs": [list(p) for p in pairs],
        "mean": model.mean.tolist(),
        "components": model.components.tolist(),
        "explained_variance": model.explained_variance.tolist(),
        "seed": model.seed,
    })


def load_pca(path: str) -> PcaModel:
    data = util.read_json(path)
    if data.get("format_version") != PCA_FORMAT_VERSION:
        raise InsufficientData(
            f"unsupported PCA model format {data.get('format_version')!r}")
    pair_index = {tuple(p): i for i, p in enumerate(data["pairs"])}
    return PcaModel(pair_index=pair_index,
                    mean=np.array(data["mean"], dtype=np.float64),
                    components=np.array(data["components"], dtype=np.float64),
                    explained_variance=np.array(data["explained_variance"],
                                                dtype=np.float64),
                    seed=data["seed"])

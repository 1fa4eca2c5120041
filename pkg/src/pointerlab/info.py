"""Entropy and mutual-information accounting for exact and eps-relaxed pointers.

The global system-plus-apparatus state stays pure throughout, so both margins
share one entropy and the mutual information is twice it.  Natural logarithms
(nats) everywhere.  Relaxing exact pointer orthogonality to an overlap eps on
the first two branches mixes those two eigenvalues and lowers the shared
information by 2 * A with A = eps^2 (ln p1 - ln p2) / (p1 - p2) to leading
order; the exact two-level entropy is always computed alongside, never
replaced by the expansion (the remainder is O(eps^4)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError

_EIG_TOL = 1e-10
_NORM_TOL = 1e-12

# below this population gap the leading-order deficit is replaced by the
# exact entropy difference (the expansion assumed a nondegenerate gap)
_DEGENERATE_GAP = 1e-12


@dataclass(frozen=True)
class GeneralState:
    """Branch amplitudes c_gamma of the measured system, d >= 2."""

    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        c = tuple(complex(z) for z in self.coeffs)
        if len(c) < 2:
            raise ValidationError("need at least two branch amplitudes")
        if not all(math.isfinite(z.real) and math.isfinite(z.imag) for z in c):
            raise ValidationError("branch amplitudes must be finite")
        total = sum(abs(z) ** 2 for z in c)
        if abs(total - 1.0) > _NORM_TOL:
            raise ValidationError(
                f"branch amplitudes must be normalized within {_NORM_TOL}, got {total!r}"
            )
        object.__setattr__(self, "coeffs", c)

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([abs(z) ** 2 for z in self.coeffs], dtype=float)


@dataclass(frozen=True)
class InfoReport:
    """Entropies (nats) of the two margins, the total, and the shared information.

    ``deficit`` fields are populated only by the eps-relaxed variant: exact
    loss of mutual information against the orthogonal-pointer value, plus its
    leading-order estimate.
    """

    s_gamma: float
    s_xi: float
    s_total: float
    mutual_info: float
    deficit: Optional[float] = None
    deficit_leading_order: Optional[float] = None
    degenerate: bool = False
    expansion_valid: bool = True

    def to_dict(self) -> dict:
        return {
            "s_gamma": self.s_gamma,
            "s_xi": self.s_xi,
            "s_total": self.s_total,
            "mutual_info": self.mutual_info,
            "deficit": self.deficit,
            "deficit_leading_order": self.deficit_leading_order,
            "degenerate": self.degenerate,
            "expansion_valid": self.expansion_valid,
        }


def entropy(eigenvalues: Sequence[float]) -> float:
    """Shannon/von Neumann entropy -sum(p ln p) in nats, with 0 ln 0 = 0."""
    p = np.asarray(eigenvalues, dtype=float)
    if p.ndim != 1 or p.size == 0 or not np.all(np.isfinite(p)):
        raise ValidationError("eigenvalues must be a nonempty finite 1-d sequence")
    if np.any(p < -_EIG_TOL):
        raise ValidationError(f"eigenvalues must be >= 0 within {_EIG_TOL}")
    total = float(np.sum(p))
    if abs(total - 1.0) > _EIG_TOL:
        raise ValidationError(f"eigenvalues must sum to 1 within {_EIG_TOL}, got {total!r}")
    p = np.clip(p, 0.0, None)
    nonzero = p[p > 0.0]
    return float(-np.sum(nonzero * np.log(nonzero)))


def mutual_info_prc(state: GeneralState) -> InfoReport:
    """Shared information once the pointers are exactly orthogonal.

    Both margins carry the branch-probability entropy; the pure global state
    contributes zero, so the mutual information is twice the margin entropy.
    The separable start shares nothing, so this is also the information
    gained by the premeasurement.
    """
    s = entropy(state.probabilities)
    return InfoReport(s_gamma=s, s_xi=s, s_total=0.0, mutual_info=2.0 * s)


def perturbed_eigenvalues(c1sq: float, c2sq: float, eps: float) -> tuple[float, float]:
    """Eigenvalues of the 2x2 block [[p1, eps], [eps, p2]], largest first.

    Their sum equals p1 + p2 exactly; at eps = 0 they reduce to
    (max(p1, p2), min(p1, p2)).
    """
    p1, p2, e = float(c1sq), float(c2sq), float(eps)
    if p1 < 0.0 or p2 < 0.0:
        raise ValidationError("populations must be >= 0")
    if p1 + p2 > 1.0 + _NORM_TOL:
        raise ValidationError("populations must satisfy p1 + p2 <= 1")
    if e < 0.0 or not math.isfinite(e):
        raise ValidationError("eps must be finite and >= 0")
    half_sum = 0.5 * (p1 + p2)
    half_split = 0.5 * math.sqrt((p1 - p2) ** 2 + 4.0 * e * e)
    return (half_sum + half_split, half_sum - half_split)


def wprc_info_deficit(state: GeneralState, eps: float) -> InfoReport:
    """Information lost by reading pointers with overlap eps on branches 1 and 2.

    The first two eigenvalues of the reduced state mix into the exact pair
    from :func:`perturbed_eigenvalues`; all other branches keep their
    populations.  Reports the exact deficit 2 * (S_exact_0 - S_exact_eps) and
    the leading-order 2 * A; their difference shrinks like eps^4.

    Near-degenerate leading populations (including zeros) make the
    leading-order ratio meaningless, so there the exact difference is
    reported in both fields with ``degenerate`` set.  ``expansion_valid``
    clears whenever eps^2 reaches 10% of the population gap.
    """
    e = float(eps)
    if e < 0.0 or not math.isfinite(e):
        raise ValidationError("eps must be finite and >= 0")
    probs = state.probabilities
    p1, p2 = float(probs[0]), float(probs[1])
    lam_plus, lam_minus = perturbed_eigenvalues(p1, p2, e)

    s_unperturbed = entropy(probs)
    perturbed = np.concatenate([[lam_plus, lam_minus], probs[2:]])
    s_perturbed = entropy(perturbed)
    exact_deficit = 2.0 * (s_unperturbed - s_perturbed)

    gap = abs(p1 - p2)
    degenerate = gap <= _DEGENERATE_GAP or min(p1, p2) <= 0.0
    if degenerate:
        leading = exact_deficit
    else:
        leading = 2.0 * e * e * (math.log(p1) - math.log(p2)) / (p1 - p2)
    expansion_valid = not degenerate and e * e < 0.1 * gap

    return InfoReport(
        s_gamma=s_perturbed,
        s_xi=s_perturbed,
        s_total=0.0,
        mutual_info=2.0 * s_perturbed,
        deficit=exact_deficit,
        deficit_leading_order=leading,
        degenerate=degenerate,
        expansion_valid=expansion_valid,
    )

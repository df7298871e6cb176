"""Construction of two-mode fixed-photon-number states.

A state with total photon number N is stored as the complex amplitude array
A[k], k = 0..N, of the expansion over |k>_a |N-k>_b.  Builders are provided
for the six state families of interest (Fock state at one interferometer
input, NOON, phase state, twin-Fock, correlated Fock, squeezed vacuum plus
coherent), each including the 50/50 beam-splitter transform where applicable
and the fixed per-family phase in mode a that centers the relative phase
distribution at phi = 0.

Numerical policy: the alternating binomial convolution sums that appear in
the beam-splitter closed forms are evaluated with exact integer arithmetic,
and the surrounding binomial/2^N factors in log space, so amplitudes stay
accurate to rounding up to N = 100 and beyond.  Quarter-turn phases (powers
of i) are tracked as integers mod 4.  The overall global phase of every
builder output is canonicalized: the largest-magnitude amplitude is rotated
to be real and positive.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DegenerateStateError, EmptyProjectionError, InvalidStateError

__all__ = [
    "TwoModeFockState",
    "Regime",
    "FockOneInput",
    "Noon",
    "PhaseState",
    "TwinFock",
    "CorrelatedFock",
    "SqueezedCoherent",
    "StateSpec",
    "build_state",
    "family_name",
    "build_fock_one_input",
    "build_noon",
    "build_phase_state",
    "build_twin_fock",
    "build_correlated_fock",
    "build_squeezed_coherent_projected",
    "apply_phase_shift",
    "beam_splitter_oracle",
    "photon_moments",
    "max_diff_up_to_global_phase",
]

NORM_TOL = 1e-10

_LN2 = math.log(2.0)

# exact powers of i (complex exponentiation would round through polar form)
_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


# ---------------------------------------------------------------------------
# state container


@dataclass(frozen=True)
class TwoModeFockState:
    """Normalized two-mode state with a fixed total photon number.

    amplitudes[k] is the coefficient of |k>_a |n_total - k>_b.
    """

    n_total: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_total < 0:
            raise InvalidStateError("n_total must be non-negative")
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.shape[0] != self.n_total + 1:
            raise InvalidStateError(
                "amplitude array must have length n_total + 1 "
                "(got %d for N=%d)" % (amps.shape[0], self.n_total)
            )
        if not np.all(np.isfinite(amps)):
            raise InvalidStateError("amplitudes must be finite")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise InvalidStateError(
                "state is not normalized: sum |A|^2 = %.17g" % norm_sq
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def probabilities(self) -> np.ndarray:
        """|A_k|^2 for k = 0..N."""
        return np.abs(self.amplitudes) ** 2

    def to_json(self) -> str:
        payload = {
            "n_total": self.n_total,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "TwoModeFockState":
        payload = json.loads(text)
        amps = np.array([complex(re, im) for re, im in payload["amplitudes"]])
        return TwoModeFockState(int(payload["n_total"]), amps)


def _canonicalized(n_total: int, amps: np.ndarray) -> TwoModeFockState:
    """Normalize, then rotate the global phase so the largest-magnitude
    amplitude is real and positive."""
    amps = np.asarray(amps, dtype=complex)
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise InvalidStateError("cannot normalize a zero amplitude array")
    amps = amps / norm
    pivot = amps[int(np.argmax(np.abs(amps)))]
    amps = amps * (abs(pivot) / pivot)
    return TwoModeFockState(n_total, amps)


def max_diff_up_to_global_phase(a: np.ndarray, b: np.ndarray) -> float:
    """max_k |a_k - e^{i gamma} b_k| minimized over the global phase gamma."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    overlap = np.vdot(b, a)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.max(np.abs(a - phase * b)))


# ---------------------------------------------------------------------------
# state specifications


class Regime(Enum):
    """Operating point of the squeezed-plus-coherent configuration."""

    OPTIMAL = "optimal"
    SQRT_SHOT = "sqrt-shot"


@dataclass(frozen=True)
class FockOneInput:
    n: int

    def __post_init__(self):
        if self.n == 0:
            raise DegenerateStateError(
                "N=0 gives a uniform phase distribution with zero information"
            )
        if self.n < 1:
            raise InvalidStateError("N must be >= 1")


@dataclass(frozen=True)
class Noon:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidStateError("N must be >= 1")


@dataclass(frozen=True)
class PhaseState:
    n: int
    phi0: float = 0.0

    def __post_init__(self):
        if self.n < 0:
            raise InvalidStateError("N must be >= 0")


@dataclass(frozen=True)
class TwinFock:
    n: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2 != 0:
            raise InvalidStateError("twin-Fock requires an even N >= 2")


@dataclass(frozen=True)
class CorrelatedFock:
    n: int

    def __post_init__(self):
        if self.n < 1 or self.n % 2 != 1:
            raise InvalidStateError("correlated Fock requires an odd N >= 1")


@dataclass(frozen=True)
class SqueezedCoherent:
    n_bar: int
    regime: Regime = Regime.OPTIMAL
    theta_s: float = 0.0
    theta_c: float = 0.0
    allow_phase_mismatch: bool = False

    def __post_init__(self):
        if self.n_bar < 1:
            raise InvalidStateError("n_bar must be >= 1")
        if self.regime is Regime.SQRT_SHOT and self.n_bar < 2:
            raise InvalidStateError(
                "sqrt-shot regime requires n_bar >= 2 so the coherent "
                "amplitude stays positive"
            )
        mismatch = (self.theta_s - 2.0 * self.theta_c + math.pi) % (2.0 * math.pi)
        if abs(mismatch - math.pi) > 1e-12 and not self.allow_phase_mismatch:
            raise InvalidStateError(
                "theta_s - 2*theta_c must vanish (pass allow_phase_mismatch "
                "to override)"
            )


StateSpec = Union[
    FockOneInput, Noon, PhaseState, TwinFock, CorrelatedFock, SqueezedCoherent
]

_FAMILY_NAMES = {
    FockOneInput: "fock",
    Noon: "noon",
    PhaseState: "phase",
    TwinFock: "twin-fock",
    CorrelatedFock: "correlated",
    SqueezedCoherent: "sq-coh",
}


def family_name(spec: StateSpec) -> str:
    name = _FAMILY_NAMES[type(spec)]
    if isinstance(spec, SqueezedCoherent):
        return name + "-" + spec.regime.value
    return name


def build_state(spec: StateSpec) -> TwoModeFockState:
    """Dispatch a state specification to the matching builder."""
    if isinstance(spec, FockOneInput):
        return build_fock_one_input(spec.n)
    if isinstance(spec, Noon):
        return build_noon(spec.n)
    if isinstance(spec, PhaseState):
        return build_phase_state(spec.n, spec.phi0)
    if isinstance(spec, TwinFock):
        return build_twin_fock(spec.n)
    if isinstance(spec, CorrelatedFock):
        return build_correlated_fock(spec.n)
    if isinstance(spec, SqueezedCoherent):
        return build_squeezed_coherent_projected(
            spec.n_bar,
            spec.regime,
            theta_s=spec.theta_s,
            theta_c=spec.theta_c,
        )
    raise InvalidStateError("unknown state specification %r" % (spec,))


# ---------------------------------------------------------------------------
# numerically careful helpers


def _log_comb(n: int, k: int) -> float:
    # math.log accepts arbitrary-size Python ints, so this is exact to 1 ulp
    return math.log(math.comb(n, k))


def _alt_convolution(j: int, l: int, k: int) -> int:
    """sum_q (-1)^q C(j, q) C(l, k - q), evaluated exactly."""
    lo = max(0, k - l)
    hi = min(j, k)
    total = 0
    for q in range(lo, hi + 1):
        term = math.comb(j, q) * math.comb(l, k - q)
        total += -term if q % 2 else term
    return total


def _signed_log_to_complex(value: int, log_scale: float, quarter_turns: int) -> complex:
    """value * exp(log_scale) * i^quarter_turns with |value| taken in log space."""
    if value == 0:
        return 0.0 + 0.0j
    mag = math.exp(math.log(abs(value)) + log_scale)
    if value < 0:
        quarter_turns += 2
    return mag * _I_POW[quarter_turns % 4]


# ---------------------------------------------------------------------------
# builders


def build_fock_one_input(n: int) -> TwoModeFockState:
    """|N> at one input of a 50/50 beam splitter, vacuum at the other.

    After the beam splitter and the fixed quarter-turn phase in mode a the
    amplitudes share a common phase, A_k = sqrt(C(N, k) / 2^N), so the
    relative phase distribution is a single lobe centered at phi = 0.
    """
    if n == 0:
        raise DegenerateStateError(
            "N=0 gives a uniform phase distribution with zero information"
        )
    if n < 1:
        raise InvalidStateError("N must be >= 1")
    amps = np.array(
        [math.exp(0.5 * (_log_comb(n, k) - n * _LN2)) for k in range(n + 1)],
        dtype=complex,
    )
    return _canonicalized(n, amps)


def build_noon(n: int) -> TwoModeFockState:
    """(|N, 0> + |0, N>) / sqrt(2)."""
    if n < 1:
        raise InvalidStateError("N must be >= 1")
    amps = np.zeros(n + 1, dtype=complex)
    amps[0] = amps[n] = 1.0 / math.sqrt(2.0)
    return TwoModeFockState(n, amps)


def build_phase_state(n: int, phi0: float = 0.0) -> TwoModeFockState:
    """Equal-weight superposition with a linear phase ramp exp(i k phi0)."""
    if n < 0:
        raise InvalidStateError("N must be >= 0")
    k = np.arange(n + 1)
    amps = np.exp(1j * k * phi0) / math.sqrt(n + 1.0)
    return _canonicalized(n, amps)


def build_twin_fock(n: int) -> TwoModeFockState:
    """|N/2> at each beam-splitter input (N even).

    The amplitude at k is an alternating binomial convolution; odd-k
    amplitudes vanish identically (the pairwise bunching pattern that
    generalizes Hong-Ou-Mandel interference).
    """
    if n < 2 or n % 2 != 0:
        raise InvalidStateError("twin-Fock requires an even N >= 2")
    half = n // 2
    amps = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        conv = _alt_convolution(half, half, k)
        if conv == 0:
            continue
        log_scale = 0.5 * (_log_comb(n, half) - _log_comb(n, k)) - 0.5 * n * _LN2
        amps[k] = _signed_log_to_complex(conv, log_scale, half + k)
    return _canonicalized(n, amps)


_OCTANT_SIGN = {1: 1, 7: 1, 3: -1, 5: -1}


def build_correlated_fock(n: int) -> TwoModeFockState:
    """((N+1)/2, (N-1)/2) photon pair in a symmetric superposition at the
    beam-splitter inputs (N odd)."""
    if n < 1 or n % 2 != 1:
        raise InvalidStateError("correlated Fock requires an odd N >= 1")
    n_plus = (n + 1) // 2
    n_minus = (n - 1) // 2
    amps = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        total = 0
        lo = max(0, k - n_minus)
        hi = min(n_plus, k)
        for q in range(lo, hi + 1):
            # cos(pi (2k - 4q + 1) / 4) = +-1/sqrt(2); track the sign exactly
            sign = _OCTANT_SIGN[(2 * k - 4 * q + 1) % 8]
            total += sign * math.comb(n_plus, q) * math.comb(n_minus, k - q)
        if total == 0:
            continue
        # the 1/sqrt(2) from each cosine and the 1/sqrt(2^(N-1)) prefactor
        # combine into 2^(-N/2)
        log_scale = 0.5 * (_log_comb(n, n_plus) - _log_comb(n, k)) - 0.5 * n * _LN2
        amps[k] = _signed_log_to_complex(total, log_scale, 0)
    return _canonicalized(n, amps)


def _squeezed_regime_params(n_bar: int, regime: Regime) -> Tuple[float, float]:
    """(sinh^2 r, |alpha|^2) for the requested operating point."""
    if regime is Regime.OPTIMAL:
        sinh2 = n_bar / 2.0
        alpha2 = n_bar / 2.0
    elif regime is Regime.SQRT_SHOT:
        sinh2 = math.sqrt(n_bar) / 2.0
        alpha2 = n_bar - sinh2
    else:
        raise InvalidStateError("unknown regime %r" % (regime,))
    if alpha2 <= 0.0:
        raise InvalidStateError(
            "coherent intensity |alpha|^2 = %.6g must be positive" % alpha2
        )
    return sinh2, alpha2


def build_squeezed_coherent_projected(
    n_bar: int,
    regime: Regime = Regime.OPTIMAL,
    theta_s: float = 0.0,
    theta_c: float = 0.0,
) -> TwoModeFockState:
    """Squeezed vacuum and coherent light on the beam splitter, projected
    onto the total-photon-number-N subspace with N = n_bar, renormalized.

    The mean photon number of the unprojected state equals n_bar in both
    regimes: OPTIMAL puts sinh^2 r = |alpha|^2 = n_bar/2, SQRT_SHOT puts
    sinh^2 r = sqrt(n_bar)/2 and gives the remainder to the coherent beam.
    The fixed quarter-turn phase in mode a centers the distribution at 0.
    """
    if n_bar < 1:
        raise InvalidStateError("n_bar must be >= 1")
    if regime is Regime.SQRT_SHOT and n_bar < 2:
        raise InvalidStateError("sqrt-shot regime requires n_bar >= 2")
    sinh2, alpha2 = _squeezed_regime_params(n_bar, regime)

    n = n_bar
    tanh_r = math.sqrt(sinh2 / (1.0 + sinh2))
    log_sech_half = -0.25 * math.log1p(sinh2)  # -0.5*log(cosh r)

    amps = np.zeros(n + 1, dtype=complex)
    for m in range(n // 2 + 1):
        n_coh = n - 2 * m
        log_s = (
            0.5 * math.lgamma(2 * m + 1)
            + m * math.log(tanh_r)
            - m * _LN2
            - math.lgamma(m + 1)
            + log_sech_half
        )
        log_c = (
            -0.5 * alpha2
            + 0.5 * n_coh * math.log(alpha2)
            - 0.5 * math.lgamma(n_coh + 1)
        )
        coeff = math.exp(log_s + log_c) * cmath.exp(
            1j * (theta_s * m + theta_c * n_coh)
        )
        if m % 2:
            coeff = -coeff
        # i^(N - 2m) is what remains of the per-term quarter-turn phases
        # after the centering phase in mode a; the centering also leaves a
        # parity factor (-1)^k, applied below, which moves the peak of the
        # distribution from +-pi to 0
        coeff *= _I_POW[(n - 2 * m) % 4]
        log_w = 0.5 * _log_comb(n, 2 * m) - 0.5 * n * _LN2
        for k in range(n + 1):
            conv = _alt_convolution(n_coh, 2 * m, k)
            if conv == 0:
                continue
            mag = math.exp(
                math.log(abs(conv)) + log_w - 0.5 * _log_comb(n, k)
            )
            amps[k] += coeff * (mag if conv > 0 else -mag)

    amps[1::2] *= -1.0
    norm = float(np.linalg.norm(amps))
    if norm < 1e-12:
        raise EmptyProjectionError(
            "the N=%d component of the squeezed/coherent state has "
            "negligible weight (norm %.3g)" % (n, norm)
        )
    return _canonicalized(n, amps)


# ---------------------------------------------------------------------------
# generic operations


def apply_phase_shift(state: TwoModeFockState, theta: float) -> TwoModeFockState:
    """Multiply amplitudes[k] by exp(i k theta); the norm is unchanged."""
    k = np.arange(state.n_total + 1)
    return TwoModeFockState(state.n_total, state.amplitudes * np.exp(1j * k * theta))


def photon_moments(state: TwoModeFockState) -> Tuple[float, float]:
    """(mean, variance) of the photon number in mode a."""
    probs = state.probabilities()
    k = np.arange(state.n_total + 1)
    mean = float(np.dot(k, probs))
    var = float(np.dot(k * k, probs)) - mean * mean
    return mean, max(var, 0.0)


def beam_splitter_oracle(
    input_a_amplitudes: Sequence[complex],
    input_b_amplitudes: Sequence[complex],
    n_total: int,
) -> TwoModeFockState:
    """Independent reference for the 50/50 beam-splitter transform.

    Expands creation-operator polynomials symbolically under
    a'^dag -> (a^dag + i b^dag)/sqrt(2), b'^dag -> (i a^dag + b^dag)/sqrt(2)
    in 50-digit arithmetic, instead of using any family's closed form.  The
    input is the product state sum_j in_a[j] in_b[l] |j>|l> restricted to
    j + l = n_total; the output is normalized (magnitude only, so the overall
    phase produced by the expansion is preserved).
    """
    import mpmath as mp

    if n_total < 0:
        raise InvalidStateError("n_total must be non-negative")
    in_a = list(input_a_amplitudes)
    in_b = list(input_b_amplitudes)
    n = n_total

    pairs = []
    for j in range(n + 1):
        ca = in_a[j] if j < len(in_a) else 0.0
        cb = in_b[n - j] if n - j < len(in_b) else 0.0
        if ca != 0 and cb != 0:
            pairs.append((j, complex(ca) * complex(cb)))
    if not pairs:
        raise InvalidStateError(
            "no component of the input product state has %d total photons" % n
        )

    with mp.workdps(50):
        out = [mp.mpc(0) for _ in range(n + 1)]
        i_unit = mp.mpc(0, 1)
        log2 = mp.log(2)
        for j, c in pairs:
            c_mp = mp.mpc(c.real, c.imag)
            lognorm = 0.5 * (
                mp.log(mp.factorial(j)) + mp.log(mp.factorial(n - j)) + n * log2
            )
            for k in range(n + 1):
                conv = _alt_convolution(j, n - j, k)
                if conv == 0:
                    continue
                logmag = 0.5 * (
                    mp.log(mp.factorial(k)) + mp.log(mp.factorial(n - k))
                )
                term = conv * mp.e ** (logmag - lognorm)
                out[k] += c_mp * i_unit ** ((j + k) % 4) * term
        norm = mp.sqrt(sum(abs(x) ** 2 for x in out))
        if norm == 0:
            raise InvalidStateError("input state has zero weight at N=%d" % n)
        amps = np.array([complex(x / norm) for x in out])
    return TwoModeFockState(n, amps)

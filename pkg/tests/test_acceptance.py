"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with ``pytest -v tests/test_acceptance.py`` (add ``-s`` to see the
per-criterion lines as they happen; otherwise pytest shows them in the
captured output of failing tests).
"""

import math

import numpy as np
import pytest

from lssphase import (
    CorrelatedFock,
    FockOneInput,
    Noon,
    PhaseState,
    Regime,
    SqueezedCoherent,
    TwinFock,
    apply_phase_shift,
    beam_splitter_oracle,
    build_state,
    compute_report,
    fidelity_curvature_check,
    fisher_lss,
    max_diff_up_to_global_phase,
    photon_moments,
    phase_width,
)
from lssphase import cli
from lssphase.phasedist import PhaseDistribution
from lssphase.quadrature import integrate_periodic
from lssphase.states import _squeezed_regime_params

RANGES = {
    "fock": [FockOneInput(n) for n in range(2, 41)],
    "noon": [Noon(n) for n in range(1, 41)],
    "phase": [PhaseState(n) for n in range(1, 41)],
    "twin-fock": [TwinFock(n) for n in range(2, 41, 2)],
    "correlated": [CorrelatedFock(n) for n in range(1, 40, 2)],
    "sq-coh-optimal": [SqueezedCoherent(n, Regime.OPTIMAL) for n in range(2, 41)],
    "sq-coh-sqrt-shot": [SqueezedCoherent(n, Regime.SQRT_SHOT) for n in range(20, 61)],
}

_cache = {}


def family_data(tag):
    """(spec, state, report) triples for the family's sweep range, computed once."""
    if tag not in _cache:
        rows = []
        for spec in RANGES[tag]:
            state = build_state(spec)
            rows.append((spec, state, compute_report(spec, state=state)))
        _cache[tag] = rows
    return _cache[tag]


def check(num, ok, detail):
    print("criterion %2d: %s  %s" % (num, "PASS" if ok else "FAIL", detail))
    assert ok, "criterion %d failed: %s" % (num, detail)


def test_criterion_01_fock():
    worst_fq = max(
        abs(r.f_q - spec.n) for spec, _, r in family_data("fock")
    )
    worst_rel = max(r.rel_diff for _, _, r in family_data("fock"))
    check(
        1,
        worst_fq <= 1e-12 * 40 and worst_rel <= 1e-6,
        "N=2..40 max|F_Q-N|=%.2e, max rel diff=%.2e" % (worst_fq, worst_rel),
    )


def test_criterion_02_noon():
    worst_fq = max(
        abs(r.f_q - spec.n ** 2) for spec, _, r in family_data("noon")
    )
    worst_rel = max(r.rel_diff for _, _, r in family_data("noon"))
    check(
        2,
        worst_fq <= 1e-12 * 1600 and worst_rel <= 1e-6,
        "N=1..40 max|F_Q-N^2|=%.2e, max rel diff=%.2e" % (worst_fq, worst_rel),
    )


def test_criterion_03_phase_states():
    worst_fq = max(
        abs(r.f_q - (spec.n ** 2 + 2 * spec.n) / 3.0)
        for spec, _, r in family_data("phase")
    )
    worst_rel = max(r.rel_diff for _, _, r in family_data("phase"))
    check(
        3,
        worst_fq <= 1e-10 and worst_rel <= 2e-3,
        "N=1..40 max|F_Q-(N^2+2N)/3|=%.2e, achieved max rel diff=%.2e"
        % (worst_fq, worst_rel),
    )


def test_criterion_04_twin_fock():
    worst_oracle = 0.0
    worst_rel = 0.0
    worst_gap = 0.0
    for spec, state, r in family_data("twin-fock"):
        half = spec.n // 2
        oracle = beam_splitter_oracle([0] * half + [1], [0] * half + [1], spec.n)
        worst_oracle = max(
            worst_oracle,
            max_diff_up_to_global_phase(state.amplitudes, oracle.amplitudes),
        )
        worst_rel = max(worst_rel, r.rel_diff)
        worst_gap = max(
            worst_gap, abs(r.f_q - (spec.n ** 2 / 2.0 + spec.n)) / r.f_q
        )
    # F_Q equals N^2/2 + N to rounding at every even N, which subsumes the
    # requirement that the relative gap to that curve shrinks with N
    check(
        4,
        worst_oracle <= 1e-10 and worst_rel <= 1e-3 and worst_gap <= 1e-12,
        "even N=2..40 max oracle diff=%.2e, max rel diff=%.2e, "
        "max rel gap to N^2/2+N=%.2e" % (worst_oracle, worst_rel, worst_gap),
    )


def test_criterion_05_correlated_fock():
    worst_oracle = 0.0
    worst_rel = 0.0
    for spec, state, r in family_data("correlated"):
        n_plus, n_minus = (spec.n + 1) // 2, (spec.n - 1) // 2
        o1 = beam_splitter_oracle([0] * n_plus + [1], [0] * n_minus + [1], spec.n)
        o2 = beam_splitter_oracle([0] * n_minus + [1], [0] * n_plus + [1], spec.n)
        amps = o1.amplitudes + o2.amplitudes
        amps = amps / np.linalg.norm(amps)
        worst_oracle = max(
            worst_oracle, max_diff_up_to_global_phase(state.amplitudes, amps)
        )
        worst_rel = max(worst_rel, r.rel_diff)
    check(
        5,
        worst_oracle <= 1e-10 and worst_rel <= 1e-3,
        "odd N=1..39 max oracle diff=%.2e, max rel diff=%.2e"
        % (worst_oracle, worst_rel),
    )


def test_criterion_06_squeezed_optimal():
    worst_rel = max(r.rel_diff for _, _, r in family_data("sq-coh-optimal"))
    ratios = [
        r.f_q / spec.n_bar ** 2
        for spec, _, r in family_data("sq-coh-optimal")
        if spec.n_bar >= 10
    ]
    in_band = min(ratios) >= 0.8 and max(ratios) <= 1.2
    check(
        6,
        worst_rel <= 1e-3 and in_band,
        "N=2..40 max rel diff=%.2e, F_Q/N^2 in [%.3f, %.3f] for N>=10"
        % (worst_rel, min(ratios), max(ratios)),
    )


def test_criterion_07_squeezed_sqrt_shot():
    rows = family_data("sq-coh-sqrt-shot")
    worst_rel = max(r.rel_diff for _, _, r in rows)
    log_n = np.log([spec.n_bar for spec, _, _ in rows])
    log_f = np.log([r.f_q for _, _, r in rows])
    exponent, intercept = np.polyfit(log_n, log_f, 1)
    prefactor = math.exp(intercept)
    ok = (
        worst_rel <= 3e-3
        and abs(exponent - 1.5) <= 0.1
        and abs(prefactor - 1.45) <= 0.15
    )
    check(
        7,
        ok,
        "N=20..60 max rel diff=%.2e, power-law fit exponent=%.3f prefactor=%.3f"
        % (worst_rel, exponent, prefactor),
    )


def test_criterion_08_fidelity_curvature():
    specs = [
        FockOneInput(10),
        Noon(10),
        PhaseState(10),
        TwinFock(10),
        CorrelatedFock(11),
        SqueezedCoherent(10, Regime.OPTIMAL),
        SqueezedCoherent(10, Regime.SQRT_SHOT),
    ]
    worst = 0.0
    for spec in specs:
        state = build_state(spec)
        curv = fidelity_curvature_check(state)
        f_lss, _ = fisher_lss(state)
        worst = max(worst, abs(curv - f_lss) / f_lss)
    check(
        8,
        worst <= 1e-4,
        "all families at N=10 (11 where parity demands), "
        "max rel deviation of curvature from F_LSS=%.2e" % worst,
    )


def test_criterion_09_uncertainty_product():
    worst = math.inf
    worst_tag = ""
    for tag, rows in RANGES.items():
        for spec in rows:
            state = build_state(spec)
            _, var = photon_moments(state)
            prod = phase_width(state) * math.sqrt(var)
            if prod < worst:
                worst = prod
                worst_tag = "%s N=%d" % (tag, getattr(spec, "n", getattr(spec, "n_bar", -1)))
    check(
        9,
        worst >= math.pi / 2.0 - 1e-9,
        "min width*spread product %.6f at %s (threshold pi/2=%.6f)"
        % (worst, worst_tag, math.pi / 2.0),
    )


def test_criterion_10_distribution_properties():
    rng = np.random.default_rng(11)
    worst_norm = 0.0
    worst_neg = 0.0
    worst_cross = 0.0
    worst_fd = 0.0
    h = 3e-4
    for tag, rows in RANGES.items():
        for spec in rows:
            n = getattr(spec, "n", getattr(spec, "n_bar", 0))
            if n > 40:
                continue
            dist = PhaseDistribution(build_state(spec))
            worst_norm = max(
                worst_norm, abs(integrate_periodic(dist.p, 256).value - 1.0)
            )
            _, p, _ = dist.grid(2048)
            worst_neg = max(worst_neg, -float(np.min(p)))
            phi = rng.uniform(-math.pi, math.pi, size=200)
            worst_cross = max(
                worst_cross,
                float(np.max(np.abs(dist.p(phi) - dist.p_direct(phi)))),
            )
            phi_fd = np.linspace(-3.0, 3.0, 31)
            fd = (
                -dist.p(phi_fd + 2 * h)
                + 8.0 * dist.p(phi_fd + h)
                - 8.0 * dist.p(phi_fd - h)
                + dist.p(phi_fd - 2 * h)
            ) / (12.0 * h)
            worst_fd = max(worst_fd, float(np.max(np.abs(fd - dist.dp(phi_fd)))))
    ok = (
        worst_norm <= 1e-10
        and worst_neg <= 1e-13
        and worst_cross <= 1e-12
        and worst_fd <= 1e-8
    )
    check(
        10,
        ok,
        "all families N<=40: max |int P - 1|=%.2e, max negativity=%.2e, "
        "max direct-vs-autocorr=%.2e, max dP-vs-FD=%.2e"
        % (worst_norm, worst_neg, worst_cross, worst_fd),
    )


def test_criterion_11_compare_all(tmp_path, capsys):
    out_dir = tmp_path / "compare-all"
    code = cli.main(["compare-all", "--out", str(out_dir)])
    captured = capsys.readouterr()
    assert code == 0, captured.err
    lines = captured.out.strip().split("\n")
    assert lines[0] == (
        "family,n_min,n_max,mean_rel_diff_percent,min_uncertainty_product"
    )
    rows = [line.split(",") for line in lines[1:]]
    means = {row[0]: float(row[3]) for row in rows}
    with capsys.disabled():
        check(
            11,
            len(rows) == 7 and max(means.values()) <= 0.2,
            "%d families, max mean_rel_diff_percent=%.2e"
            % (len(rows), max(means.values())),
        )

"""Acceptance gate: one test per criterion, at full scale and tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line
per criterion.
"""

import json
import re
import subprocess
import sys
import time

import numpy as np
import pytest

from orbitkit import (
    HermitianOperator,
    HypothesisViolated,
    KernelHit,
    SplitMix64,
    affiliate,
    decompose,
    delta_audit,
    derive_seed,
    example_pair_generator,
    lagrange_projector,
    moment_signature,
    norm_chain,
    operator_from_spectrum,
    orbit_comparison,
    orbit_intertwiner,
    projection_intertwiner,
    projective_distances,
    proximity_check,
    random_spectrum,
    random_unitary_near_identity,
    schatten_norms,
)
from orbitkit.generate import orbit_pair
from orbitkit.verify import _pair_with_angles

SEED = 20260810


def _rng(tag: int, i: int) -> SplitMix64:
    return SplitMix64(derive_seed(derive_seed(SEED, tag), i))


def _report(num: int, text: str) -> None:
    print(f"\n[acceptance] criterion {num}: PASS ({text})")


def test_criterion_1_theorem_bound_suite():
    started = time.monotonic()
    emitted = 0
    refused = 0
    total_instances = 560
    for i in range(total_instances):
        rng = _rng(1, i)
        t = 10.0 ** rng.uniform_in(-4.0, np.log10(0.3))
        spectrum = random_spectrum(rng, max_blocks=4)
        total_rank = sum(m for _, m in spectrum)
        dim = min(32, max(4, 2 * total_rank + 1 + rng.randint(0, 3)))
        rho, rho_p, _ = orbit_pair(rng, spectrum, t, dim=dim)
        deltas, _ = delta_audit(rho, rho_p)
        defect_sum = sum(deltas)
        if 4.41 * defect_sum >= 0.999**2:
            eps_bad = 0.999
            if defect_sum >= eps_bad**2 / 4.0:
                with pytest.raises(HypothesisViolated):
                    orbit_intertwiner(rho, rho_p, eps_bad)
                refused += 1
                continue
            eps = eps_bad
        else:
            eps = max(np.sqrt(4.41 * defect_sum), 1e-6)
        cert = orbit_intertwiner(rho, rho_p, eps)
        emitted += 1
        mid = 2.0 * sum(cert.delta_j) + 2.0 * cert.delta
        assert cert.op_norm_dev**2 <= cert.hs_norm_dev**2 + 1e-12
        assert cert.hs_norm_dev**2 <= mid + 1e-12
        assert mid <= 4.0 * sum(cert.delta_j) + 1e-12
        assert 4.0 * sum(cert.delta_j) < eps**2
        assert cert.bound_ok
        norm1 = schatten_norms(rho).trace_norm
        assert cert.conjugation_residual <= 1e-9 * (1.0 + norm1)
    elapsed = time.monotonic() - started
    assert emitted >= 500, f"only {emitted} certificates emitted"
    assert elapsed <= 60.0, f"suite took {elapsed:.1f}s"
    _report(1, f"{emitted} certificates, {refused} clean refusals, {elapsed:.1f}s")


def test_criterion_2_projection_pair_suite():
    succeeded = 0
    refused = 0
    for i in range(350):
        rng = _rng(2, i)
        n = rng.randint(1, 3)
        angles = [rng.uniform_in(0.001, 1.2) for _ in range(n)]
        e, f = _pair_with_angles(rng, angles, shared=rng.randint(0, 1))
        delta = max(0.0, e.rank - float(np.trace(e.matrix @ f.matrix).real))
        eps_good = min(1.99, max(np.sqrt(4.41 * delta), 1e-6))
        if delta < eps_good**2 / 4.0:
            cert = projection_intertwiner(e, f, eps_good)
            assert cert.op_norm_dev < eps_good
            moved = cert.v @ e.matrix @ cert.v.conj().T
            assert schatten_norms(moved - f.matrix).trace_norm <= 1e-9
            succeeded += 1
        if delta > 0.0:
            with pytest.raises(HypothesisViolated):
                projection_intertwiner(e, f, float(np.sqrt(delta)))
            refused += 1
    assert succeeded >= 200 and refused >= 200
    _report(2, f"{succeeded} unitaries, {refused} refusals, never a wrong unitary")


def test_criterion_3_lagrange_equivalence():
    worst = 0.0
    for i in range(200):
        rng = _rng(3, i)
        spectrum = random_spectrum(rng, max_blocks=3, max_multiplicity=2)  # rank <= 6
        total = sum(m for _, m in spectrum)
        dim = min(16, 2 * total + 1 + rng.randint(0, 2))
        rho = operator_from_spectrum(spectrum, dim)
        u = random_unitary_near_identity(rng, dim, 1.5)
        rho = HermitianOperator(u @ rho.matrix @ u.conj().T)
        dec = decompose(rho)
        for j in range(dec.n + 1):
            ref = dec.complement if j == 0 else dec.projections[j - 1]
            p = lagrange_projector(rho, dec, j)
            worst = max(worst, float(np.linalg.norm(p.matrix - ref.matrix, 2)))
    assert worst <= 1e-8, f"worst deviation {worst:.3e}"
    _report(3, f"200 operators, worst polynomial-vs-spectral deviation {worst:.2e}")


def test_criterion_4_affiliation_suite():
    worst_cross = 0.0
    worst_recon = 0.0
    for i in range(200):
        rng = _rng(4, i)
        n = rng.randint(1, 4)
        angles = [rng.uniform_in(0.02, 1.5) for _ in range(n)]
        e, f = _pair_with_angles(rng, angles, shared=0)
        hs_sq, satisfied = proximity_check(e, f)
        try:
            bases = affiliate(e, f)
        except KernelHit:
            assert not satisfied, "KernelHit despite Tr[(E-F)^2] < 2 and trivial meet"
            continue
        cross = bases.f.conj().T @ bases.e
        diag = np.diagonal(cross).copy()
        off = cross - np.diag(diag)
        worst_cross = max(worst_cross, float(np.max(np.abs(off))),
                          float(np.max(np.abs(diag.imag))))
        assert np.all(diag.real > 0.0)
        recon = bases.e * bases.alpha + bases.e_perp * bases.beta - bases.f
        worst_recon = max(worst_recon, float(np.max(np.abs(recon))))
    assert worst_cross <= 1e-10
    assert worst_recon <= 1e-10
    _report(4, f"cross-orthogonality {worst_cross:.2e}, reconstruction {worst_recon:.2e}")


def test_criterion_5_example_closed_forms():
    worst = 0.0
    for i in range(150):
        rng = _rng(5, i)
        n = rng.randint(1, 4)
        if i % 3 == 0:  # degenerate all-equal case, complex phases included
            mags = np.full(n, rng.uniform_in(0.15, 0.98))
        else:
            mags = np.array([rng.uniform_in(0.15, 0.98) for _ in range(n)])
        phases = np.exp(1j * np.array([rng.uniform_in(0, 2 * np.pi) for _ in range(n)]))
        alphas = mags * phases
        e, f, expected = example_pair_generator(2 * n + rng.randint(0, 2), alphas)
        efe = e.matrix @ f.matrix @ e.matrix
        mu = np.sort(np.linalg.eigvalsh(efe))[::-1][:n]
        diff = e.matrix - f.matrix
        hs_sq = float(np.trace(diff @ diff).real)
        worst = max(
            worst,
            float(np.max(np.abs(mu - np.array(expected.efe_spectrum)))),
            abs(hs_sq - expected.hs_sq),
            abs(float(np.linalg.norm(diff, 2)) - expected.op_norm),
        )
    assert worst <= 1e-9
    _report(5, f"150 generated pairs, worst closed-form deviation {worst:.2e}")


def test_criterion_6_norm_chain_and_projective_distances():
    for i in range(150):
        rng = _rng(6, i)
        cap = rng.randint(1, 6)
        dim = 2 * cap + 1
        spec_a = [(0.5 + 0.25 * k, 1) for k in range(rng.randint(1, cap))]
        a = operator_from_spectrum(spec_a, dim)
        u = random_unitary_near_identity(rng, dim, rng.uniform_in(0.1, 2.0))
        a = HermitianOperator(u @ a.matrix @ u.conj().T)
        spec_b = [(-0.25 - 0.25 * k, 1) for k in range(rng.randint(1, cap))]
        b = operator_from_spectrum(spec_b, dim)
        assert norm_chain(a, b, cap).chain_ok
    # functional relation on random rank-1 pairs
    worst = 0.0
    for i in range(100):
        rng = _rng(66, i)
        d = rng.randint(2, 12)
        x = np.array([rng.complex_normal() for _ in range(d)])
        y = np.array([rng.complex_normal() for _ in range(d)])
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
        from conftest import rank1

        geo, tdist = projective_distances(rank1(x), rank1(y))
        worst = max(worst, abs(tdist - 2.0 * np.sqrt(1.0 - np.cos(geo / np.sqrt(2.0)) ** 2)))
    assert worst <= 1e-10
    # hand values: Tr(P R) = 1/2
    from conftest import angled_pair

    p, r = angled_pair(np.pi / 4)
    geo, tdist = projective_distances(p, r)
    assert geo == pytest.approx(np.sqrt(2.0) * np.pi / 4.0, abs=1e-12)
    assert tdist == pytest.approx(np.sqrt(2.0), abs=1e-12)
    _report(6, f"150 chains ok, distance relation worst {worst:.2e}, hand values exact")


def test_criterion_7_moment_invariants():
    worst = 0.0
    anomalies = 0
    for i in range(100):
        rng = _rng(7, i)
        spectrum = random_spectrum(rng)
        rho = operator_from_spectrum(spectrum)
        sig = moment_signature(rho)
        u = random_unitary_near_identity(rng, rho.dim, rng.uniform_in(0.1, 2.5))
        moved = HermitianOperator(u @ rho.matrix @ u.conj().T)
        sig_moved = moment_signature(moved)
        for a_n, b_n in zip(sig.moments, sig_moved.moments):
            worst = max(worst, abs(a_n - b_n) / (1.0 + abs(a_n)))
        comp = orbit_comparison(rho, moved)
        anomalies += int(comp.anomaly)
        assert comp.same_orbit
        other_spectrum = random_spectrum(rng)
        if sorted(other_spectrum) != sorted(spectrum):
            other = operator_from_spectrum(other_spectrum)
            comp_diff = orbit_comparison(rho, other)
            anomalies += int(comp_diff.anomaly)
            assert not comp_diff.same_orbit
    assert worst <= 1e-10, f"worst relative moment drift {worst:.3e}"
    assert anomalies == 0
    _report(7, f"100 unitaries, worst moment drift {worst:.2e}, anomalies 0")


def test_criterion_8_verify_suite_deterministic():
    argv = [sys.executable, "-m", "orbitkit.cli", "verify", "suite",
            "--seed", "1", "--count", "200"]
    first = subprocess.run(argv, capture_output=True, text=True, timeout=300)
    second = subprocess.run(argv, capture_output=True, text=True, timeout=300)
    assert first.returncode == 0, first.stdout + first.stderr
    assert second.returncode == 0

    def mask(text: str) -> str:
        # elapsed_ms is the report's only wall-clock field
        return re.sub(r'"elapsed_ms":\d+', '"elapsed_ms":_', text)

    assert mask(first.stdout) == mask(second.stdout)
    report = json.loads(first.stdout)
    assert report["outputs"]["ok"] is True
    assert report["outputs"]["failures"] == []
    _report(8, "exit 0 twice, byte-identical reports modulo elapsed_ms")

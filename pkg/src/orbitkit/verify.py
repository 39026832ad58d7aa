"""Seeded invariant battery aggregating every module's property list.

``run_suite(seed, count)`` executes the whole battery deterministically
(instance i of check c draws from the stream derived from (seed, c, i))
and returns one result per check with the worst observed defect (a
negative worst means the property held with margin).  A green run is
the repository's top-level self-check.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import generate
from .affiliation import affiliate, proximity_check, split
from .config import DEFAULT, Tolerances
from .core import (
    HermitianOperator,
    OrthProjection,
    _op_norm,
    eigh,
    join,
    meet,
    op_abs,
    projector_onto,
    schatten_norms,
)
from .errors import HypothesisViolated, KernelHit
from .intertwiner import delta_audit, orbit_intertwiner, projection_intertwiner
from .invariants import (
    example_pair_generator,
    moment_signature,
    norm_chain,
    orbit_comparison,
    projective_distances,
)
from .rng import SplitMix64, derive_seed
from .spectral import decompose, lagrange_projector, reconstruct

__all__ = ["CheckResult", "SuiteResult", "run_suite"]


@dataclasses.dataclass
class CheckResult:
    name: str
    passed: bool
    instances: int
    worst: float
    detail: str = ""


@dataclasses.dataclass
class SuiteResult:
    seed: int
    count: int
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def _rng(seed: int, check: int, instance: int) -> SplitMix64:
    return SplitMix64(derive_seed(derive_seed(seed, check), instance))


def _random_orbit_instance(rng: SplitMix64, perturbation: float, max_blocks: int = 4):
    spectrum = generate.random_spectrum(rng, max_blocks=max_blocks)
    total = sum(m for _, m in spectrum)
    dim = max(4, 2 * total + 1 + rng.randint(0, 3))
    return generate.orbit_pair(rng, spectrum, perturbation, dim=dim)


def _pair_with_angles(rng: SplitMix64, angles, shared: int = 0):
    """Equal-rank pair with prescribed principal angles, generic position.

    Block j of E spans e_j, of F spans cos(t_j) e_j + sin(t_j) e_perp_j;
    ``shared`` extra directions are common to both ranges.  The whole
    picture is conjugated by a random unitary.
    """
    n = len(angles)
    dim = 2 * n + shared + rng.randint(1, 3)
    e_cols = np.zeros((dim, n + shared), dtype=np.complex128)
    f_cols = np.zeros((dim, n + shared), dtype=np.complex128)
    for j, theta in enumerate(angles):
        e_cols[j, j] = 1.0
        f_cols[j, j] = math.cos(theta)
        f_cols[n + j, j] = math.sin(theta)
    for k in range(shared):
        e_cols[2 * n + k, n + k] = 1.0
        f_cols[2 * n + k, n + k] = 1.0
    u = generate.random_unitary_near_identity(rng, dim, 2.5)
    e = OrthProjection((u @ e_cols) @ (u @ e_cols).conj().T)
    f = OrthProjection((u @ f_cols) @ (u @ f_cols).conj().T)
    return e, f


def _check_eigh_reconstruction(seed, count, tol):
    worst = -np.inf
    for i in range(count):
        rng = _rng(seed, 1, i)
        a = generate.random_hermitian(rng, rng.randint(2, 16))
        w, v = eigh(a, tol)
        recon = (v * w) @ v.conj().T
        scale = _op_norm(a.matrix)
        worst = max(worst, _op_norm(recon - a.matrix) - (1e-10 * scale + 1e-14))
    return CheckResult("core.eigh_reconstruction", worst <= 0.0, count, worst)


def _check_norm_ordering(seed, count, tol):
    worst = -np.inf
    for i in range(count):
        rng = _rng(seed, 2, i)
        a = generate.random_hermitian(rng, rng.randint(1, 16))
        n1, n2, ninf = schatten_norms(a, tol)
        worst = max(worst, ninf - n2 - 1e-12, n2 - n1 - 1e-12)
    return CheckResult("core.norm_ordering", worst <= 0.0, count, worst)


def _check_lattice_laws(seed, count, tol):
    worst = -np.inf
    for i in range(count):
        rng = _rng(seed, 3, i)
        d = rng.randint(2, 10)
        da = np.array([float(rng.randint(0, 1)) for _ in range(d)])
        db = np.array([float(rng.randint(0, 1)) for _ in range(d)])
        e = OrthProjection(np.diag(da).astype(complex), tol)
        f = OrthProjection(np.diag(db).astype(complex), tol)
        q = meet(e, f, tol)
        h = join(e, f, tol)
        worst = max(
            worst,
            float(np.max(np.abs(q.matrix - np.diag(np.minimum(da, db))))) - tol.proj_tol,
            float(np.max(np.abs(h.matrix - np.diag(np.maximum(da, db))))) - tol.proj_tol,
        )
    return CheckResult("core.lattice_laws_commuting", worst <= 0.0, count, worst)


def _check_op_abs_psd(seed, count, tol):
    worst = -np.inf
    for i in range(count):
        rng = _rng(seed, 4, i)
        a = generate.random_hermitian(rng, rng.randint(1, 12))
        w = np.linalg.eigvalsh(op_abs(a, tol).matrix)
        worst = max(worst, -float(w.min()) - 1e-12)
    return CheckResult("core.op_abs_psd", worst <= 0.0, count, worst)


def _check_lagrange(seed, count, tol):
    worst = -np.inf
    for i in range(count):
        rng = _rng(seed, 5, i)
        spectrum = generate.random_spectrum(rng, max_blocks=3, max_multiplicity=2)
        total = sum(m for _, m in spectrum)
        dim = min(16, 2 * total + 1 + rng.randint(0, 2))
        rho = generate.operator_from_spectrum(spectrum, dim)
        u = generate.random_unitary_near_identity(rng, dim, 1.5)
        rho = HermitianOperator(u @ rho.matrix @ u.conj().T, tol)
        dec = decompose(rho, None, tol)
        for j in range(dec.n + 1):
            ref = dec.complement if j == 0 else dec.projections[j - 1]
            p = lagrange_projector(rho, dec, j, tol)
            worst = max(worst, _op_norm(p.matrix - ref.matrix) - 1e-8)
    return CheckResult("spectral.lagrange_equivalence", worst <= 0.0, count, worst)


def _check_continuity(seed, count, tol):
    bad = 0
    worst = -np.inf
    n_inst = max(2, count // 20)
    for i in range(n_inst):
        rng = _rng(seed, 6, i)
        spectrum = generate.random_spectrum(rng, max_blocks=3, max_multiplicity=2)
        rho = generate.operator_from_spectrum(spectrum)
        dec = decompose(rho, None, tol)
        direction = generate.random_hermitian(rng, rho.dim)
        w, vv = eigh(direction)
        top = float(np.max(np.abs(w)))
        devs = []
        for eps in (1e-2, 1e-3, 1e-4):
            u = (vv * np.exp(1j * eps * w / top)) @ vv.conj().T
            moved = HermitianOperator(u @ rho.matrix @ u.conj().T, tol)
            dec_eps = decompose(moved, None, tol)
            devs.append(
                max(
                    _op_norm(a.matrix - b.matrix)
                    for a, b in zip(
                        dec.projections + (dec.complement,),
                        dec_eps.projections + (dec_eps.complement,),
                    )
                )
            )
        if not (all(np.isfinite(devs)) and devs[0] > devs[1] > devs[2]):
            bad += 1
        worst = max(worst, devs[0] / 1e-2)  # empirical modulus estimate
    return CheckResult("spectral.projection_continuity", bad == 0, n_inst, worst,
                       detail=f"{bad} non-monotone sequences; worst empirical modulus")


def _check_roundtrip(seed, count, tol):
    worst = -np.inf
    for i in range(count):
        rng = _rng(seed, 7, i)
        spectrum = generate.random_spectrum(rng)
        rho = generate.operator_from_spectrum(spectrum)
        u = generate.random_unitary_near_identity(rng, rho.dim, 2.0)
        rho = HermitianOperator(u @ rho.matrix @ u.conj().T, tol)
        dec = decompose(rho, None, tol)
        back = reconstruct(dec, tol)
        worst = max(worst, _op_norm(back.matrix - rho.matrix) - tol.recon_tol)
        dec2 = decompose(back, None, tol)
        if dec2.multiplicities != dec.multiplicities:
            worst = max(worst, 1.0)
            continue
        worst = max(
            worst,
            max(abs(a - b) for a, b in zip(dec.eigenvalues, dec2.eigenvalues)) - 1e-12,
            max(
                _op_norm(a.matrix - b.matrix) - tol.proj_tol
                for a, b in zip(dec.projections, dec2.projections)
            ),
        )
    return CheckResult("spectral.roundtrip", worst <= 0.0, count, worst)


def _affiliation_defects(f: OrthProjection, ab, tol) -> float:
    """Worst defect over the affiliated-bases invariants, minus budgets."""
    n = ab.size
    cross = ab.f.conj().T @ ab.e
    diag = np.diagonal(cross).copy()
    np.fill_diagonal(cross, 0.0)
    gram_e = ab.e.conj().T @ ab.e - np.eye(n)
    gram_f = ab.f.conj().T @ ab.f - np.eye(n)
    gram_p = ab.e_perp.conj().T @ ab.e_perp - np.eye(n)
    recon = ab.e * ab.alpha + ab.e_perp * ab.beta - ab.f
    f_sum = ab.f @ ab.f.conj().T - f.matrix
    return max(
        float(np.max(np.abs(cross))) - tol.ortho_tol,
        float(np.max(np.abs(gram_e))) - tol.ortho_tol,
        float(np.max(np.abs(gram_f))) - tol.ortho_tol,
        float(np.max(np.abs(gram_p))) - tol.ortho_tol,
        float(np.max(np.abs(recon))) - 1e-10,
        _op_norm(f_sum) - 1e-9,
        float(np.max(np.abs(diag.imag))) - tol.ortho_tol,
        float(np.max(-diag.real)),
        float(np.max(np.abs(ab.alpha**2 + ab.beta**2 - 1.0))) - 1e-10,
    )


def _check_affiliation(seed, count, tol):
    worst = -np.inf
    for i in range(count):
        rng = _rng(seed, 8, i)
        n = rng.randint(1, 4)
        angles = [rng.uniform_in(0.05, 1.2) for _ in range(n)]
        shared = rng.randint(0, 2)
        e, f = _pair_with_angles(rng, angles, shared)
        parts = split(e, f, tol)
        if parts.q.rank != shared:
            worst = max(worst, 1.0)
        if parts.n_prime == 0:
            continue
        ab = affiliate(parts.e_prime, parts.f_prime, tol)
        worst = max(worst, _affiliation_defects(parts.f_prime, ab, tol))
    return CheckResult("affiliation.basis_invariants", worst <= 0.0, count, worst)


def _check_lemma_i(seed, count, tol):
    violations = 0
    tested = 0
    for i in range(count):
        rng = _rng(seed, 9, i)
        n = rng.randint(1, 4)
        angles = [rng.uniform_in(0.05, 1.5) for _ in range(n)]
        e, f = _pair_with_angles(rng, angles, shared=0)
        if not proximity_check(e, f, tol).satisfied:
            continue
        tested += 1
        try:
            affiliate(e, f, tol)
        except KernelHit:
            violations += 1
    return CheckResult("affiliation.no_kernel_hit_under_proximity", violations == 0,
                       tested, float(violations))


def _check_degenerate_affiliation(seed, count, tol):
    worst = -np.inf
    n_inst = max(2, count // 10)
    for i in range(n_inst):
        rng = _rng(seed, 10, i)
        n = rng.randint(2, 3)
        alpha = rng.uniform_in(0.3, 0.95)
        e, f, _ = example_pair_generator(2 * n + 1, [alpha] * n, tol)
        ab = affiliate(e, f, tol)
        worst = max(worst, _affiliation_defects(f, ab, tol))
    return CheckResult("affiliation.degenerate_efe", worst <= 0.0, n_inst, worst)


def _check_intertwiner_chain(seed, count, tol):
    worst = -np.inf
    emitted = 0
    for i in range(count):
        rng = _rng(seed, 11, i)
        t = 10.0 ** rng.uniform_in(-4.0, math.log10(0.3))
        rho, rho_p, _ = _random_orbit_instance(rng, t)
        deltas, _ = delta_audit(rho, rho_p, None, tol)
        total = sum(deltas)
        if 4.41 * total >= 0.999**2:
            continue
        eps = max(math.sqrt(4.41 * total), 1e-6)
        cert = orbit_intertwiner(rho, rho_p, eps, None, tol)
        emitted += 1
        mid = 2.0 * sum(cert.delta_j) + 2.0 * cert.delta
        chain = (
            cert.op_norm_dev**2 - cert.hs_norm_dev**2,
            cert.hs_norm_dev**2 - mid,
            mid - 4.0 * sum(cert.delta_j),
            cert.delta - sum(cert.delta_j),
            4.0 * sum(cert.delta_j) - eps * eps,
        )
        norm1 = schatten_norms(rho, tol).trace_norm
        worst = max(
            worst,
            max(chain) - 1e-12,
            cert.conjugation_residual - 1e-9 * (1.0 + norm1),
            0.0 if cert.bound_ok else 1.0,
        )
    return CheckResult("intertwiner.bound_chain", worst <= 0.0, emitted, worst,
                       detail=f"{emitted} certificates")


def _check_intertwiner_locality(seed, count, tol):
    worst = -np.inf
    n_inst = max(2, count // 4)
    for i in range(n_inst):
        rng = _rng(seed, 12, i)
        rho, rho_p, _ = _random_orbit_instance(rng, rng.uniform_in(0.02, 0.25), max_blocks=3)
        try:
            cert = orbit_intertwiner(rho, rho_p, 0.999, None, tol)
        except HypothesisViolated:
            continue
        w_a, v_a = eigh(rho.matrix, tol)
        w_b, v_b = eigh(rho_p.matrix, tol)
        hull = projector_onto(
            np.hstack([v_a[:, np.abs(w_a) > tol.cluster_tol], v_b[:, np.abs(w_b) > tol.cluster_tol]]),
            tol,
        )
        eye = np.eye(rho.dim)
        worst = max(worst, _op_norm((cert.v - eye) @ (eye - hull.matrix)) - 1e-10)
    return CheckResult("intertwiner.locality", worst <= 0.0, n_inst, worst)


def _check_intertwiner_shrinkage(seed, count, tol):
    bad = 0
    n_inst = max(2, count // 10)
    for i in range(n_inst):
        rng = _rng(seed, 13, i)
        spectrum = generate.random_spectrum(rng, max_blocks=3)
        total = sum(m for _, m in spectrum)
        dim = 2 * total + 1
        devs = []
        for t in (1e-1, 1e-2, 1e-3):
            inner = _rng(seed, 113, i)  # same direction across sizes
            _, rho_p, _ = generate.orbit_pair(inner, spectrum, t, dim=dim)
            rho = generate.operator_from_spectrum(spectrum, dim)
            cert = orbit_intertwiner(rho, rho_p, 0.999, None, tol)
            devs.append(cert.op_norm_dev)
        if not devs[0] > devs[1] > devs[2]:
            bad += 1
    return CheckResult("intertwiner.monotone_shrinkage", bad == 0, n_inst, float(bad))


def _check_projection_lemma(seed, count, tol):
    worst = -np.inf
    refusals_ok = 0
    for i in range(count):
        rng = _rng(seed, 14, i)
        n = rng.randint(1, 3)
        angles = [rng.uniform_in(0.001, 0.9) for _ in range(n)]
        shared = rng.randint(0, 1)
        e, f = _pair_with_angles(rng, angles, shared)
        delta = max(0.0, e.rank - float(np.trace(e.matrix @ f.matrix).real))
        eps = min(1.99, max(math.sqrt(4.41 * delta), 1e-6))
        if delta < eps * eps / 4.0:
            cert = projection_intertwiner(e, f, eps, tol)
            worst = max(worst, cert.op_norm_dev - eps, cert.conjugation_residual - 1e-9)
        if delta > 0.0:
            # an epsilon below the threshold must be refused, not mis-built
            try:
                projection_intertwiner(e, f, math.sqrt(delta), tol)
                worst = max(worst, 1.0)
            except HypothesisViolated:
                refusals_ok += 1
    return CheckResult("intertwiner.projection_pair", worst <= 0.0, count, worst,
                       detail=f"{refusals_ok} hypothesis refusals")


def _check_moment_duality(seed, count, tol):
    worst = -np.inf
    for i in range(count):
        rng = _rng(seed, 15, i)
        spectrum = generate.random_spectrum(rng)
        rho = generate.operator_from_spectrum(spectrum)
        u = generate.random_unitary_near_identity(rng, rho.dim, 2.5)
        rho = HermitianOperator(u @ rho.matrix @ u.conj().T, tol)
        sig = moment_signature(rho, None, None, tol)
        for n_idx, a_n in enumerate(sig.moments):
            worst = max(worst, abs(a_n - sig.measure_moment(n_idx)) - 1e-10 * (1.0 + abs(a_n)))
    return CheckResult("invariants.moment_duality", worst <= 0.0, count, worst)


def _check_same_orbit(seed, count, tol):
    anomalies = 0
    errors = 0
    for i in range(count):
        rng = _rng(seed, 16, i)
        spectrum = generate.random_spectrum(rng)
        rho, rho_p, _ = generate.orbit_pair(rng, spectrum, rng.uniform_in(0.0, 2.0))
        comp = orbit_comparison(rho, rho_p, None, 1e-9, None, tol)
        comp_rev = orbit_comparison(rho_p, rho, None, 1e-9, None, tol)
        anomalies += int(comp.anomaly) + int(comp_rev.anomaly)
        errors += int(not (comp.same_orbit and comp_rev.same_orbit))
        other_spectrum = generate.random_spectrum(rng)
        if sorted(other_spectrum) != sorted(spectrum):
            other = generate.operator_from_spectrum(other_spectrum)
            comp_diff = orbit_comparison(rho, other, None, 1e-9, None, tol)
            anomalies += int(comp_diff.anomaly)
            errors += int(comp_diff.same_orbit)
    passed = anomalies == 0 and errors == 0
    return CheckResult("invariants.same_orbit", passed, count,
                       float(anomalies + errors), detail=f"anomalies={anomalies}")


def _spectrum_with_rank_cap(rng: SplitMix64, cap: int):
    spectrum = []
    budget = cap
    values = list(generate._GRID)
    rng.shuffle(values)
    while budget > 0 and values:
        m = rng.randint(1, budget)
        spectrum.append((values.pop(), m))
        budget -= m
        if rng.uniform() < 0.4:
            break
    return sorted(spectrum, reverse=True)


def _check_norm_chain(seed, count, tol):
    bad = 0
    for i in range(count):
        rng = _rng(seed, 17, i)
        cap = rng.randint(1, 5)
        dim = 2 * cap + 1
        a = generate.operator_from_spectrum(_spectrum_with_rank_cap(rng, cap), dim)
        u = generate.random_unitary_near_identity(rng, dim, 1.0)
        a = HermitianOperator(u @ a.matrix @ u.conj().T, tol)
        b = generate.operator_from_spectrum(_spectrum_with_rank_cap(rng, cap), dim)
        if not norm_chain(a, b, cap, None, tol).chain_ok:
            bad += 1
    return CheckResult("invariants.norm_chain", bad == 0, count, float(bad))


def _check_example_generator(seed, count, tol):
    worst = -np.inf
    for i in range(count):
        rng = _rng(seed, 18, i)
        n = rng.randint(1, 4)
        if rng.uniform() < 0.3:
            alphas = np.full(n, rng.uniform_in(0.2, 0.98), dtype=complex)
        else:
            alphas = np.array([rng.uniform_in(0.2, 0.98) for _ in range(n)], dtype=complex)
        if rng.uniform() < 0.5:
            phases = np.exp(1j * np.array([rng.uniform_in(0.0, 2.0 * math.pi) for _ in range(n)]))
            alphas = alphas * phases
        dim = 2 * n + rng.randint(0, 2)
        e, f, expected = example_pair_generator(dim, alphas, tol)
        efe = e.matrix @ f.matrix @ e.matrix
        w = np.linalg.eigvalsh(efe)[::-1][:n]
        worst = max(worst, float(np.max(np.abs(w - np.array(expected.efe_spectrum)))) - 1e-9)
        diff = e.matrix - f.matrix
        worst = max(worst, abs(float(np.trace(diff @ diff).real) - expected.hs_sq) - 1e-9)
        worst = max(worst, abs(_op_norm(diff) - expected.op_norm) - 1e-9)
        ab = affiliate(e, f, tol)
        sorted_mags = np.sort(np.abs(alphas))[::-1]
        worst = max(worst, float(np.max(np.abs(ab.overlaps - sorted_mags))) - 1e-9)
    return CheckResult("invariants.example_pair_closed_forms", worst <= 0.0, count, worst)


def _check_projective(seed, count, tol):
    worst = -np.inf
    for i in range(count):
        rng = _rng(seed, 19, i)
        d = rng.randint(2, 12)
        x = np.array([rng.complex_normal() for _ in range(d)])
        y = np.array([rng.complex_normal() for _ in range(d)])
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
        p = OrthProjection(np.outer(x, x.conj()), tol)
        r = OrthProjection(np.outer(y, y.conj()), tol)
        geo, tdist = projective_distances(p, r, tol)
        relation = 2.0 * math.sqrt(1.0 - math.cos(geo / math.sqrt(2.0)) ** 2)
        worst = max(worst, abs(tdist - relation) - 1e-10)
        if (tdist < 1e-9) != (geo < 1e-9):
            worst = max(worst, 1.0)
    return CheckResult("invariants.projective_distances", worst <= 0.0, count, worst)


_CHECKS = (
    _check_eigh_reconstruction,
    _check_norm_ordering,
    _check_lattice_laws,
    _check_op_abs_psd,
    _check_lagrange,
    _check_continuity,
    _check_roundtrip,
    _check_affiliation,
    _check_lemma_i,
    _check_degenerate_affiliation,
    _check_intertwiner_chain,
    _check_intertwiner_locality,
    _check_intertwiner_shrinkage,
    _check_projection_lemma,
    _check_moment_duality,
    _check_same_orbit,
    _check_norm_chain,
    _check_example_generator,
    _check_projective,
)


def run_suite(seed: int, count: int, tol: Tolerances = DEFAULT) -> SuiteResult:
    """Run the full battery; ``count`` scales the instance budget per check."""
    results = [check(seed, count, tol) for check in _CHECKS]
    return SuiteResult(seed=seed, count=count, checks=results)

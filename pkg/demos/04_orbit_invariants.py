#!/usr/bin/env python3
"""Orbit invariants: moments, norm equivalence, projective distances.

The numbers a_n = Tr(rho^(n+2)) are constant along a unitary orbit and,
at finite rank, pin the orbit completely: they are the moments of the
atomic measure placing mass lambda_j^2 * m_j at each eigenvalue.  On
operators of rank at most N all Schatten norms are equivalent with
constant 2N, and on rank-1 projections the orbit's geodesic distance
and the ambient trace distance are explicit functions of one overlap.
"""

import numpy as np

from orbitkit import (
    HermitianOperator,
    OrthProjection,
    SplitMix64,
    moment_signature,
    norm_chain,
    operator_from_spectrum,
    orbit_comparison,
    projective_distances,
    random_unitary_near_identity,
)

rng = SplitMix64(3)

print("=" * 72)
print("1. moment signatures are unitary invariants")
print("=" * 72)
rho = operator_from_spectrum([(0.5, 2), (-0.25, 1)])
sig = moment_signature(rho)
print(f"spectrum  : lambda = {(0.5, -0.25)}, multiplicities (2, 1)")
print(f"atoms     : {sig.atoms}   (mass lambda^2 * m at lambda)")
print(f"moments   : {np.round(sig.moments, 8)}")

u = random_unitary_near_identity(rng, rho.dim, 1.7)
moved = HermitianOperator(u @ rho.matrix @ u.conj().T)
sig_moved = moment_signature(moved)
drift = max(abs(a - b) for a, b in zip(sig.moments, sig_moved.moments))
print(f"after a generic unitary: max moment drift = {drift:.2e}")

comp = orbit_comparison(rho, moved)
print(f"same orbit? moments say {comp.moments_match}, spectra say "
      f"{comp.spectra_match}, anomaly = {comp.anomaly}")

other = operator_from_spectrum([(0.5, 1), (-0.25, 2)])
comp2 = orbit_comparison(rho, other)
print(f"swapped multiplicities: same orbit? {comp2.same_orbit}")

print()
print("=" * 72)
print("2. on rank <= N operators the three norms are 2N-equivalent")
print("=" * 72)
a = operator_from_spectrum([(1.0, 1)], 3)
b = operator_from_spectrum([(-1.0, 1)], 3)
chain = norm_chain(a, b, rank_cap=1)
print(f"A = P_x, B = -P_y (orthogonal): trace = {chain.trace_norm:.4f}, "
      f"hs = {chain.hs_norm:.4f}, op = {chain.op_norm:.4f}")
print(f"||.||_2 <= ||.||_1 <= 2N ||.||_inf <= 2N ||.||_2 holds: {chain.chain_ok}")

print()
print("=" * 72)
print("3. rank-1 orbit: geodesic vs ambient trace distance")
print("=" * 72)
print("  overlap Tr(PR)   geodesic        trace distance")
for tr in (1.0, 0.75, 0.5, 0.25, 0.0):
    theta = np.arccos(np.sqrt(tr))
    x = np.array([1.0, 0.0], dtype=complex)
    y = np.array([np.cos(theta), np.sin(theta)], dtype=complex)
    p = OrthProjection(np.outer(x, x.conj()))
    r = OrthProjection(np.outer(y, y.conj()))
    geo, tdist = projective_distances(p, r)
    print(f"  {tr:12.2f}   {geo:.6f}        {tdist:.6f}")
print("\ntrace_dist = 2 sqrt(1 - cos^2(geodesic/sqrt(2))): the two metrics")
print("vanish together, so convergence in the ambient space is convergence")
print("on the orbit -- the rank-1 case of the embedding result.")

#!/usr/bin/env python3
"""Spectral decompositions and the interpolation-polynomial projector route.

A finite-rank Hermitian operator splits as rho = sum_j lambda_j E_j.
The same projections E_j fall out of the interpolation polynomials
p_j(z) = prod_{k!=j} (z - lambda_k)/(lambda_j - lambda_k), evaluated on
the matrix itself: p_j(lambda_k) = delta_jk, so p_j(rho) = E_j.  This
script decomposes an operator both ways and shows the two routes agree,
then probes how the projections move when the operator is nudged.
"""

import numpy as np

from orbitkit import (
    HermitianOperator,
    SplitMix64,
    decompose,
    eigh,
    lagrange_projector,
    operator_from_spectrum,
    random_hermitian,
    random_unitary_near_identity,
    reconstruct,
)

rng = SplitMix64(1)

print("=" * 72)
print("1. decompose a rank-4 operator living in dimension 9")
print("=" * 72)
rho = operator_from_spectrum([(0.75, 2), (0.5, 1), (-0.25, 1)])
u = random_unitary_near_identity(rng, rho.dim, 1.0)
rho = HermitianOperator(u @ rho.matrix @ u.conj().T)

dec = decompose(rho)
print(f"dimension        : {rho.dim}")
print(f"eigenvalues      : {dec.eigenvalues}")
print(f"multiplicities   : {dec.multiplicities}")
print(f"kernel dimension : {dec.complement.rank}")

back = reconstruct(dec)
print(f"reconstruction   : ||sum lambda_j E_j - rho|| = "
      f"{np.linalg.norm(back.matrix - rho.matrix, 2):.2e}")

print()
print("=" * 72)
print("2. the polynomial route reproduces every spectral projection")
print("=" * 72)
for j in range(dec.n + 1):
    ref = dec.complement if j == 0 else dec.projections[j - 1]
    node = 0.0 if j == 0 else dec.eigenvalues[j - 1]
    poly = lagrange_projector(rho, dec, j)
    dev = np.linalg.norm(poly.matrix - ref.matrix, 2)
    print(f"  node lambda_{j} = {node:+.4f}   ||p_j(rho) - E_j|| = {dev:.2e}")

print()
print("=" * 72)
print("3. projections are continuous along the orbit")
print("=" * 72)
direction = random_hermitian(rng, rho.dim)
w, v = eigh(direction)
top = float(np.max(np.abs(w)))
print("  size of nudge   max_j ||E_j(moved) - E_j(rho)||")
for eps in (1e-2, 1e-3, 1e-4):
    nudge = (v * np.exp(1j * eps * w / top)) @ v.conj().T
    moved = HermitianOperator(nudge @ rho.matrix @ nudge.conj().T)
    dec_eps = decompose(moved)
    dev = max(
        np.linalg.norm(a.matrix - b.matrix, 2)
        for a, b in zip(dec.projections, dec_eps.projections)
    )
    print(f"  {eps:9.0e}       {dev:.3e}")
print("\nThe deviation shrinks with the nudge: the spectral data is a")
print("continuous function of the operator at fixed spectrum.")

#!/usr/bin/env python3
"""Affiliated bases: matched orthonormal systems for a projection pair.

Given equal-rank projections E and F that intersect trivially, the
eigenvectors e_j of EFE (restricted to range E) project onto range F as
an orthonormal system f_j = F e_j / ||F e_j|| with

    f_j = alpha_j e_j + beta_j e_j_perp,     <f_j | e_k> = 0  (j != k).

The eigenvalues of EFE are the squared cosines of the principal angles
between the subspaces; alpha_j are the cosines themselves.  A generator
with prescribed overlaps makes every quantity checkable in closed form.
"""

import numpy as np

from orbitkit import affiliate, example_pair_generator, proximity_check, split

print("=" * 72)
print("1. a pair with prescribed overlaps alpha = (cos 30deg, cos 45deg)")
print("=" * 72)
alphas = [np.cos(np.pi / 6), np.cos(np.pi / 4)]
e, f, expected = example_pair_generator(4, alphas)
print(f"rank              : {e.rank} each, ambient dimension 4")
print(f"EFE spectrum      : {np.round(expected.efe_spectrum, 6)}  (= |alpha_j|^2)")
print(f"||E-F||_2^2       : {expected.hs_sq:.6f}  (= 2(N - sum |alpha_j|^2))")
print(f"||E-F||           : {expected.op_norm:.6f}  (= max sqrt(1-|alpha_j|^2))")

hs_sq, near = proximity_check(e, f)
print(f"proximity check   : Tr[(E-F)^2] = {hs_sq:.6f} < 2 ? {near}")

bases = affiliate(e, f)
print("\naffiliated data (ordered by descending EFE eigenvalue):")
for j in range(bases.size):
    print(f"  pair {j}: alpha = {bases.alpha[j]:.6f}, beta = {bases.beta[j]:.6f}, "
          f"alpha^2 + beta^2 = {bases.alpha[j]**2 + bases.beta[j]**2:.12f}")

cross = np.abs(bases.f.conj().T @ bases.e)
print("\n|<f_j|e_k>| matrix (diagonal = overlaps, off-diagonal ~ 0):")
print(np.round(cross, 10))

print()
print("=" * 72)
print("2. a common direction is peeled off first by split()")
print("=" * 72)
# embed a shared direction by hand: both ranges contain the last axis
d = 6
shared = np.zeros(d, dtype=complex)
shared[d - 1] = 1.0
e2, f2, _ = example_pair_generator(d - 1, [0.8])
em = np.zeros((d, d), dtype=complex)
fm = np.zeros((d, d), dtype=complex)
em[: d - 1, : d - 1] = e2.matrix
fm[: d - 1, : d - 1] = f2.matrix
em += np.outer(shared, shared.conj())
fm += np.outer(shared, shared.conj())

parts = split(em, fm)
print(f"rank(E) = rank(F) = 2, common part Q has rank {parts.q.rank}")
print(f"primed remainder has rank {parts.n_prime}; "
      f"E' and F' intersect trivially and can be affiliated:")
remainder = affiliate(parts.e_prime, parts.f_prime)
print(f"  remaining overlap alpha = {remainder.alpha[0]:.6f} (prescribed 0.8)")

print()
print("=" * 72)
print("3. the degenerate case: all principal angles equal")
print("=" * 72)
e3, f3, expected3 = example_pair_generator(8, [0.9, 0.9, 0.9])
bases3 = affiliate(e3, f3)
print(f"EFE spectrum {np.round(expected3.efe_spectrum, 6)}: one eigenvalue, multiplicity 3.")
print(f"any eigenbasis works; the deterministic tie-break picks one, and the")
print(f"invariants survive: worst Gram defect = "
      f"{np.max(np.abs(bases3.f.conj().T @ bases3.f - np.eye(3))):.2e}")

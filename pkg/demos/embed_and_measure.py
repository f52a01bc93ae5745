"""Embed a random symmetric matrix and measure how close the embedding is
to an orthogonal matrix.

A real symmetric matrix A is scaled by mu, the square root of its largest
row sum of squares, so every row of A' = A/mu fits inside the unit ball.
The embedded operator

    U = [[A', D], [D, -A']]

uses a diagonal D that tops each row up to unit norm. U is symmetric with
unit rows, but not orthogonal in general; the closeness report quantifies
the gap and predicts the fidelity the amplified circuit can reach.
"""

import numpy as np

from oaasim import (
    SplitMix64,
    build_estimated_embedding,
    build_exact_embedding,
    c2_from_eigenvalues,
    closeness,
    mu_normalize,
    random_symmetric,
    sym_eigen,
)

order = 8
a = random_symmetric(order, SplitMix64(2024))
normalized, mu = mu_normalize(a)
print(f"drew a {order} x {order} symmetric matrix, scale mu = {mu:.4f}")

emb = build_estimated_embedding(normalized, mu)
report = closeness(emb.u)
print(f"estimated embedding: order {emb.order}")
print(f"  c2  = {report.c2:.6f}   (squared 2-norm distance to orthogonal)")
print(f"  cF  = {report.cF:.6f}   (same in the Frobenius norm)")
print(f"  phi = {report.phi:.6f}  (twice the polar trace, at most {2 * emb.order})")
print(f"  ef  = {report.ef:.6f}   (predicted fidelity floor (1 - c2)^2)")

via_eigen = c2_from_eigenvalues(sym_eigen(emb.u).values)
print(f"  c2 via the eigenvalue route = {via_eigen:.6f} "
      f"(gap {abs(report.c2 - via_eigen):.2e})")

# the exact square-root extension is orthogonal, but only exists when the
# scaled matrix is a contraction in the spectral norm
radius = float(np.max(np.abs(np.linalg.eigvalsh(normalized))))
print(f"spectral radius of the scaled matrix: {radius:.4f}")
if radius <= 1.0:
    exact = build_exact_embedding(normalized, mu)
    gap = float(np.max(np.abs(exact.u.T @ exact.u - np.eye(exact.order))))
    print(f"exact embedding exists; orthogonality gap {gap:.2e}")
else:
    shrunk = normalized / radius
    exact = build_exact_embedding(shrunk, mu * radius)
    gap = float(np.max(np.abs(exact.u.T @ exact.u - np.eye(exact.order))))
    print("scaled matrix is not a contraction; shrinking it by the spectral")
    print(f"radius makes the exact embedding orthogonal (gap {gap:.2e})")

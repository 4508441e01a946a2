"""
Relaxation spectra and subordinator densities
=============================================

The spectral kernel K^gamma_{alpha,1}(r) is a probability density on (0, inf)
when 0 < alpha <= 1 and alpha*gamma <= 1. Outside that range its integral
is 1 - 2/alpha. We also write the figure curves as CSV files.
"""

import sys
import tempfile

from prabhakar.probability import (
    DensityParams,
    laplace_g_closed,
    laplace_g_numeric,
    normalization_K,
    write_figure_csv,
)

for alpha, gamma in [(0.5, 1.0), (0.75, 0.8), (1.25, 1.0), (2.0, 1.0)]:
    print(f"int K(alpha={alpha}, gamma={gamma}) = {normalization_K(alpha, gamma):+.8f}")

# Laplace transform of the subordinated density against its closed form
dp = DensityParams(0.5, 0.8, 1.2)
for s in (0.0, 1.0, 5.0):
    print(f"s={s}: numeric {laplace_g_numeric(s, 1.0, dp):.10f}  closed {laplace_g_closed(s, 1.0, dp):.10f}")

out = sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp()
for which in (1, 2, 3):
    for path in write_figure_csv(which, out):
        print(path)

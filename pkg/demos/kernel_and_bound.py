"""
How big can a Prabhakar kernel get?
===================================

The decaying kernel e^gamma_{alpha,beta,-omega}(t) stays below a constant
that depends only on the parameters, as long as alpha*gamma > beta - 1 > 0.
We sample it on a log grid and compare against that constant.
"""

import numpy as np

from prabhakar.specfun import kernel_values, ml3, uniform_bound

# Sanity first: the three-parameter Mittag-Leffler function reduces to exp
print("E^1_{1,1}(1) =", ml3(1.0, 1.0, 1.0, 1.0).value, " e =", np.e)

t = np.logspace(-3, 3, 1000)

for alpha, beta, gamma, omega in [(0.5, 1.2, 1.0, 1.0), (0.8, 1.5, 1.0, 2.0), (0.6, 1.8, 2.5, 1.5)]:
    k = np.abs(kernel_values(alpha, beta, -omega, gamma, t))
    bound = uniform_bound(alpha, beta, gamma, omega)
    i = np.argmax(k)
    print(f"alpha={alpha} beta={beta} gamma={gamma} omega={omega}: "
          f"peak {k[i]:.4f} at t={t[i]:.3g}, bound {bound:.4f}")

# The peak sits well below the bound: it is a safe constant, not a sharp one.

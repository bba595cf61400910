"""Class numbers and theta-series coefficients over F_q[t]."""

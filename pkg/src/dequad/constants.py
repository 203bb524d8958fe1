# Double exponential quadrature constants

# error-model constant A per transform
A_PHI1 = 2.0
A_PHI2 = 5.0

DEFAULT_K = 6.0
BETA = 0.25

# below this |t| phi and phi' are evaluated from their Taylor series
TAYLOR_RADIUS = 1e-4
TAYLOR_DEGREE = 4

# smallest positive normal double, used as the truncation floor when the sum is 0
TINY = 2.2250738585072014e-308

# rounding level of a sum in units of machine eps times the sum of |terms|
ROUNDOFF_ULPS = 10.0

import mpmath

mpmath.mp.prec = 200

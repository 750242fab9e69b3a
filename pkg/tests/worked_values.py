"""Reference bases and constraint coefficients for the worked trapezoid examples."""

from fractions import Fraction as F

from toricqh.poly import U, V

W1 = 3 - U - V
W2 = 5 - U - V

# trapezoid n=2, m=p=1
BASIS_1 = {
    (0, 0): F(1, 108) * (2 - V) ** 2 * W1**3,
    (1, 0): F(1, 16) * U * (2 - V) ** 2 * W1**2,
    (2, 0): F(1, 16) * U**2 * (2 - V) ** 2 * W1,
    (3, 0): F(1, 108) * U**3 * (2 - V) ** 2,
    (0, 1): F(1, 4) * (2 - V) * V * W1**2,
    (0, 2): F(1, 4) * V**2 * W1,
    (1, 2): F(1, 4) * U * V**2,
    (2, 1): F(1, 4) * U**2 * (2 - V) * V,
    (1, 1): U * (2 - V) * V * W1,
}

# trapezoid n=2, m=3, p=1
BASIS_2 = {
    (0, 0): F(1, 12500) * (2 - V) ** 2 * W2**5,
    (1, 0): F(1, 2500) * U * (2 - V) ** 2 * W2**4,
    (2, 0): F(1, 1250) * U**2 * (2 - V) ** 2 * W2**3,
    (3, 0): F(1, 1250) * U**3 * (2 - V) ** 2 * W2**2,
    (4, 0): F(1, 2500) * U**4 * (2 - V) ** 2 * W2,
    (5, 0): F(1, 12500) * U**5 * (2 - V) ** 2,
    (0, 1): F(1, 512) * (2 - V) * W2**4 * V,
    (0, 2): F(1, 108) * W2**3 * V**2,
    (1, 1): F(1, 128) * U * (2 - V) * W2**3 * V,
    (2, 1): F(3, 256) * U**2 * (2 - V) * W2**2 * V,
    (3, 1): F(1, 128) * U**3 * (2 - V) * W2 * V,
    (4, 1): F(1, 512) * U**4 * (2 - V) * V,
    (1, 2): F(1, 36) * U * W2**2 * V**2,
    (2, 2): F(1, 36) * U**2 * W2 * V**2,
    (3, 2): F(1, 108) * U**3 * V**2,
}

TABLE_1 = {
    (1, 1): {(0, 0): 0.0904, (0, 1): -0.1973, (0, 2): 0.01430, (1, 0): 0.1970, (1, 2): 0.1006,
             (2, 0): 0.09269, (2, 1): -0.1390, (3, 0): 0.0438},
}

TABLE_2 = {
    (1, 1): {(0, 0): 0.8157, (0, 1): -1.027, (0, 2): 0.3170, (1, 0): 0.1815, (1, 2): 0.2146,
             (2, 0): 0.1106, (2, 2): -0.0981, (3, 0): 0.06520, (3, 2): 0.1122, (4, 0): 0.0210,
             (4, 1): -0.07081, (5, 0): 0.02990},
    (2, 1): {(0, 0): -0.4561, (0, 1): 0.5450, (0, 2): -0.1718, (1, 0): 0.2450, (1, 2): 0.0246,
             (2, 0): 0.2527, (2, 2): 0.7647, (3, 0): 0.03338, (3, 2): -0.3465, (4, 0): 0.02031,
             (4, 1): 0.2384, (5, 0): -0.09169},
    (3, 1): {(0, 0): 0.0871, (0, 1): -0.0955, (0, 2): 0.0341, (1, 0): -0.0211, (1, 2): -0.0221,
             (2, 0): 0.1053, (2, 2): -0.3099, (3, 0): 0.3448, (3, 2): 0.6595, (4, 0): 0.1629,
             (4, 1): -0.4250, (5, 0): 0.2278},
}

# hexagon, depth 2: one reference row, for an informational comparison only
HEXAGON_ROW_22 = {(0, 1): 0.0004, (0, 2): -0.0434, (1, 0): 0.0034, (1, 3): -0.1725, (2, 0): -0.0285,
                  (2, 4): -0.3504, (3, 1): -0.1228, (3, 4): -0.41809, (4, 2): -0.4812, (4, 4): -0.0297}

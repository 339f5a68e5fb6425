"""Worked examples kept as read-only constants."""

from .kernel import IntMat, SmithForm

# 4x4 example with Smith form diag(1, 1, 9, 29088)
A4 = IntMat([
    [-6, 3, -13, -15],
    [-4, 19, 12, -1],
    [-4, 10, -6, 17],
    [-26, -13, 1, -2],
])
S4 = SmithForm((1, 1, 9, 29088))
M4 = IntMat([
    [0, 0, 7, 805],
    [0, 0, 5, 23668],
    [0, 0, 3, 6],
    [0, 0, 4, 10224],
])
W4 = IntMat([
    [4, -19, -12, 1],
    [-306, 3, 133, 0],
    [5156, 805, 6332, 0],
    [12017, -403, 11356, 0],
])
# W4 @ M4 - I; column j is a multiple of s_j
WM_OFFSET4 = IntMat([
    [-1, 0, -99, -436320],
    [0, -1, -1728, -174528],
    [0, 0, 59112, 23241312],
    [0, 0, 116172, 203616],
])
# 29088 * A4^-1
SINV4 = IntMat([
    [-271, -402, -373, -937],
    [580, 920, 524, -356],
    [-1074, 804, -870, 258],
    [-784, -352, 1008, 80],
])
# one valid outer product adjoint for A4 (rows 3, 4 of Ubar; the rest are zero)
UBAR4 = IntMat([
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [2, 2, 0, 2],
    [20829, 1750, 28943, 16203],
])
B4_RHS = (25, 94, 12, -2)
B4_FRAC = (11011, 20716, 8682, 17424)
B4_INT = (-2, 3, 1, -2)

# 7x7 end-to-end example
A7 = IntMat([
    [1, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 1, 1],
    [1, 2, 4, 1, 2, 4, 1],
    [1, 3, 2, 6, 4, 5, 1],
    [1, 4, 2, 1, 4, 2, 1],
    [1, 5, 4, 6, 2, 3, 1],
    [1, 6, 1, 6, 1, 6, 1],
])
TWO_S7 = SmithForm((2, 2, 2, 2, 4, 16, 160))
S7 = SmithForm((1, 1, 1, 1, 2, 8, 80))
M7 = IntMat([
    [1, 0, 1, 1, 2, 8, 0],
    [0, 1, 1, 0, 2, 11, 65],
    [1, 0, 1, 1, 1, 12, 15],
    [0, 1, 1, 1, 3, 6, 98],
    [0, 0, 0, 0, 0, 12, 155],
    [1, 1, 1, 1, 1, 7, 125],
    [1, 1, 1, 1, 1, 0, 22],  # 22, not 2: needed for 2*A7 @ M7 = 0 colmod 2*S7
])
R7 = IntMat([
    [0, 0, 1, 1, 1, 0, 1],
    [1, 1, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 0, 0, 0],
    [0, 1, 0, 1, 0, 1, 0],
    [0, 1, 1, 1, 1, 1, 0],
    [1, 1, 0, 0, 1, 1, 0],
])
LAMBDA7 = 2
B7 = IntMat([
    [1, 0, 3, 3, 6, 8, 160],
    [2, 3, 1, 0, 6, 11, 225],
    [1, 0, 1, 1, 1, 12, 15],
    [2, 3, 3, 3, 3, 6, 98],
    [0, 2, 0, 2, 0, 28, 155],
    [1, 3, 3, 3, 5, 23, 125],
    [3, 3, 1, 1, 5, 16, 22],
])
H7_H1 = 830295
H7_HBAR = (547348, 602711, 592450, 540934, 350043, 323815)
H7 = IntMat(
    [[H7_H1, 0, 0, 0, 0, 0, 0]]
    + [[h] + [int(i == j) for j in range(6)] for i, h in enumerate(H7_HBAR)]
)
V7 = IntMat([
    [-74, 0, 3, 3, 6, 8, 160],
    [-99, 3, 1, 0, 6, 11, 225],
    [-13, 0, 1, 1, 1, 12, 15],
    [-49, 3, 3, 3, 3, 6, 98],
    [-75, 2, 0, 2, 0, 28, 155],
    [-68, 3, 3, 3, 5, 23, 125],
    [-22, 3, 1, 1, 5, 16, 22],
])
U7 = IntMat([
    [-74, 0, 3, 3, 3, 1, 2],
    [-400, 14, 12, 13, 13, 13, 10],
    [-817, 28, 25, 27, 25, 31, 20],
    [-1353, 53, 42, 47, 37, 43, 34],
    [-1003, 32, 19, 23, 25, 32, 26],
    [-1291, 49, 40, 39, 39, 36, 33],
    [-1480, 59, 47, 43, 48, 38, 38],
])

# 4x4 matrix with skewed column lengths and its partial linearization
L4 = IntMat([
    [2, 4, 44199, 3061969404],
    [4, 8, 19644, 765492351],
    [7, 8, 44199, 5358446457],
    [7, 5, 9822, 765492351],
])
L4_D = 14
L4_E = (0, 0, 1, 2)
L4_LIN = IntMat([
    [2, 4, 11431, 12796, 2, 6663, 11],
    [4, 8, 3260, 15487, 1, 13953, 2],
    [7, 8, 11431, 10105, 2, 15757, 19],
    [7, 5, 9822, 15487, 0, 13953, 2],
    [0, 0, -16384, 0, 1, 0, 0],
    [0, 0, 0, -16384, 0, 1, 0],
    [0, 0, 0, 0, 0, -16384, 1],
])
L4_LIN_HERMITE = IntMat([
    [777, 0, 0, 0, 0, 0, 0],
    [401, 1, 0, 0, 0, 0, 0],
    [174, 0, 4911, 0, 0, 0, 0],
    [762, 0, 0, 765492351, 0, 0, 0],
    [696, 0, 3260, 0, 1, 0, 0],
    [762, 0, 0, 765475967, 0, 1, 0],
    [762, 0, 0, 497056895, 0, 0, 1],
])
L4_HERMITE = L4_LIN_HERMITE.submatrix(0, 4, 0, 4)

"""Published component data for four torus knots: (k-, k+), m, A_diamond, A_triangle."""

from fractions import Fraction as F

TABLE1 = {
    (3, 4): [
        ((1, 7), 3, 1, F(25, 48)),
        ((2, 10), 4, 2, F(1, 12)),
        ((5, 11), 3, 2, F(1, 48)),
    ],
    (3, 5): [
        ((1, 11), 5, 2, F(4, 15)),
        ((2, 8), 3, 1, F(49, 60)),
        ((4, 14), 5, 3, F(1, 60)),
        ((7, 13), 3, 2, F(1, 15)),
    ],
    (4, 5): [
        ((1, 9), 4, 1, F(121, 80)),
        ((2, 18), 8, 4, F(1, 20)),
        ((3, 13), 5, 2, F(49, 80)),
        ((6, 14), 4, 2, F(9, 20)),
        ((7, 17), 5, 3, F(9, 80)),
        ((11, 19), 4, 3, F(1, 80)),
    ],
    (4, 7): [
        ((1, 15), 7, 2, F(169, 112)),
        ((2, 26), 12, 6, F(1, 28)),
        ((3, 11), 4, 1, F(289, 112)),
        ((5, 19), 7, 3, F(81, 112)),
        ((6, 22), 8, 4, F(9, 28)),
        ((9, 23), 7, 4, F(25, 112)),
        ((10, 18), 4, 2, F(25, 28)),
        ((13, 27), 7, 5, F(1, 112)),
        ((17, 25), 4, 3, F(9, 112)),
    ],
}

"""Frozen copy of the published reference score table, kept independent of
the library's own calibration data so tests cross-check rather than echo it.

Row layout: (level, t_end seconds, published bonus or None, 16 gesture
counts or None for the sums-only rows, gesture sum, weighted sum, final).
"""

ROWS = [
    ("guidance", 186, None, [1, 1, 6, 6, 6, 6, 6, 6, 0, 0, 4, 0, 6, 0, 0, 0], 48, 274, 322),
    ("guidance", 237, None, [1, 1, 6, 6, 6, 6, 8, 7, 0, 0, 4, 0, 4, 2, 0, 1], 52, 311, 363),
    ("guidance", 221, None, [1, 0, 5, 6, 6, 6, 7, 6, 0, 0, 4, 0, 4, 2, 0, 0], 47, 296, 343),
    ("guidance", 230, None, None, 32, 254, 286),
    ("easy", 93, 61, [8, 8, 9, 14, 10, 13, 0, 3, 2, 0, 6, 0, 6, 4, 0, 0], 83, 426, 570),
    ("easy", 102, 57, [6, 6, 7, 7, 8, 9, 2, 6, 1, 0, 6, 0, 6, 5, 1, 2], 72, 414, 543),
    ("easy", 87, 64, [6, 6, 9, 9, 11, 12, 0, 6, 1, 1, 6, 0, 6, 4, 0, 0], 77, 443, 584),
    ("easy", 105, 56, None, 59, 378, 493),
    ("middle", 147, 69, [7, 7, 10, 10, 9, 12, 3, 8, 5, 2, 9, 0, 8, 8, 1, 0], 99, 607, 775),
    ("middle", 162, 66, [11, 11, 13, 15, 13, 16, 5, 7, 6, 0, 8, 0, 11, 6, 0, 0], 122, 661, 849),
    ("middle", 158, 67, [8, 8, 10, 9, 11, 14, 1, 9, 5, 3, 8, 0, 9, 5, 0, 1], 101, 598, 766),
    ("middle", 167, 65, None, 87, 522, 674),
    ("difficult", 246, 59, [10, 10, 15, 15, 16, 22, 2, 13, 10, 3, 13, 2, 15, 7, 2, 0], 155, 944, 1158),
    ("difficult", 218, 64, [15, 15, 17, 17, 15, 23, 4, 12, 12, 2, 12, 3, 17, 6, 1, 2], 173, 963, 1200),
    ("difficult", 255, 58, [13, 13, 18, 18, 19, 20, 3, 15, 12, 2, 13, 2, 14, 7, 3, 3], 175, 980, 1213),
    ("difficult", 260, 57, None, 147, 902, 1106),
]

COMPLETE_ROWS = [row for row in ROWS if row[3] is not None]

MUSCLE_WEIGHTS = [0, 0, 0, 0, 9, 10, 6, 6, 8, 8, 10, 10, 8, 16, 2, 3]

TIME_BUDGETS = {"easy": 240, "middle": 480, "difficult": 600}

# The one published bonus the fitted budgets do not reproduce exactly:
# easy t_end=102 computes to 58 under round-half-up, table prints 57.
KNOWN_BONUS_DISCREPANCY = ("easy", 102)

"""Bundled reference data: code tables and the expected metric values.

The reference phase codes for M in {13, 16, 36, 64} were produced by the
included max-min optimizer at desk scale (50 restarts per population
size, populations 1000..8000, 300 generations, D = 1000) and are stored
at 4-decimal precision.  The expected metric tables below are what the
reproduction checks (`risbeam reproduce`, tests/test_acceptance.py)
compare against; tolerances account for the 4-decimal quantization of
the stored codes.
"""

from __future__ import annotations

import math

PI = math.pi

# Binary Barker sequences as phase vectors (0 -> +1, pi -> -1).  Lengths
# 2 and 4 have two known sequences each; the primary one is listed first.
BARKER_CODES: dict[int, tuple[tuple[float, ...], ...]] = {
    2: ((0.0, PI), (0.0, 0.0)),
    3: ((0.0, 0.0, PI),),
    4: ((0.0, 0.0, PI, 0.0), (0.0, 0.0, 0.0, PI)),
    5: ((0.0, 0.0, 0.0, PI, 0.0),),
    7: ((0.0, 0.0, 0.0, PI, PI, 0.0, PI),),
    11: ((0.0, 0.0, 0.0, PI, PI, PI, 0.0, PI, PI, 0.0, PI),),
    13: ((0.0, 0.0, 0.0, 0.0, 0.0, PI, PI, 0.0, 0.0, PI, 0.0, PI, 0.0),),
}

# Printed sidelobe level ratios 20*log10(1/M) in dB, rounded to one decimal.
BARKER_SIDELOBE_RATIO_DB: dict[int, float] = {
    2: -6.0,
    3: -9.5,
    4: -12.0,
    5: -14.0,
    7: -16.9,
    11: -20.8,
    13: -22.3,
}

# Reference max-min codes (radians, 4 decimals), designed at theta_h = 0,
# spacing_ratio = 1/2.
REFERENCE_CODES: dict[int, tuple[float, ...]] = {
    13: (
        0.9255, 4.6334, 2.0632, 5.6294, 3.0091, 3.3760, 0.8825, 1.4025,
        5.3366, 5.9881, 0.4434, 1.0334, 1.6318,
    ),
    16: (
        5.1194, 5.9698, 0.6334, 2.6752, 4.1800, 3.1756, 2.7309, 3.9677,
        1.5603, 3.9362, 0.7873, 4.6435, 3.6637, 2.1817, 6.1171, 4.3546,
    ),
    36: (
        2.5458, 5.8091, 4.8406, 6.1005, 0.6850, 3.9223, 3.3962, 4.3150,
        1.2969, 0.4361, 2.3980, 1.1877, 0.0314, 4.5914, 3.0137, 4.7279,
        0.1981, 6.1708, 0.8647, 4.1516, 2.2116, 1.7623, 2.7874, 2.9865,
        4.2146, 2.0956, 3.4289, 1.6303, 3.8954, 1.7463, 3.3191, 4.9514,
        1.6416, 3.8338, 6.1454, 2.1315,
    ),
    64: (
        6.2154, 0.9377, 5.9622, 2.3982, 2.0550, 5.2374, 4.6543, 6.1568,
        2.0360, 3.3983, 3.2310, 4.6648, 5.7030, 0.2454, 1.3573, 5.7993,
        4.0525, 1.7875, 2.6875, 4.6555, 4.1909, 3.3503, 4.3216, 3.1219,
        4.1523, 1.4800, 3.9280, 1.8255, 2.5134, 4.4152, 1.4448, 2.7278,
        6.0119, 5.6658, 3.4961, 3.4214, 1.3725, 3.1275, 0.9327, 3.4367,
        4.3562, 5.5590, 3.9093, 3.5500, 4.7366, 3.0102, 0.2376, 4.6770,
        5.2783, 2.3078, 0.3114, 4.7210, 0.4638, 5.7200, 4.5785, 1.8969,
        5.5300, 1.3563, 5.1408, 4.0969, 1.8617, 0.9126, 5.7912, 4.1614,
    ),
}

# Best Chu parameter q (maximizing the grid-min PDAF at D = 1000,
# spacing 1/2, theta_h = 0) per element count.
CHU_BEST_Q: dict[int, int] = {13: 3, 16: 11, 36: 13, 64: 43}

# Expected deterministic PDAF metrics: (family, m) -> (a_min_db, u_half),
# computed at D = 1000, spacing_ratio = 1/2, theta_h = 0.
EXPECTED_PDAF_METRICS: dict[tuple[str, int], tuple[float, float]] = {
    ("reference", 13): (9.7142, 0.3181),
    ("reference", 16): (10.2373, 0.3103),
    ("reference", 36): (12.9047, 0.1933),
    ("reference", 64): (14.0971, 0.1437),
    ("chu", 13): (-0.4627, 0.4168),
    ("chu", 16): (-25.0169, 0.2941),
    ("chu", 36): (-9.8148, 0.1939),
    ("chu", 64): (-1.6166, 0.1471),
    ("barker", 13): (9.5994, 0.3634),
    ("frank", 16): (0.9454, 0.2907),
    ("frank", 36): (1.2058, 0.1959),
    ("frank", 64): (1.5626, 0.1472),
}

# Informational expected values for the best-of-1000 random baseline
# (single published realization; checked only within a wide band).
EXPECTED_RANDOM_PDAF_DB: dict[int, float] = {
    13: 3.0211,
    16: 2.3690,
    36: 0.7339,
    64: -2.9884,
}

# Expected spectral-efficiency statistics from the K = 10000 simulation
# with the sector scenario defaults: (family, m) -> (s_min, s_mean, ci_half).
# s_min is a single-run order statistic, reproduced only as an ordering
# claim; s_mean +- ci_half is reproduced via confidence-interval overlap.
EXPECTED_SE: dict[tuple[str, int], tuple[float, float, float]] = {
    ("reference", 13): (1.5870, 3.1530, 0.0146),
    ("chu", 13): (0.2764, 2.8877, 0.0207),
    ("barker", 13): (1.2734, 3.0983, 0.0150),
    ("random", 13): (0.7650, 2.9459, 0.0206),
    ("reference", 16): (1.3668, 3.3671, 0.0157),
    ("chu", 16): (7.1792e-5, 3.1795, 0.0228),
    ("frank", 16): (0.6173, 3.3747, 0.0171),
    ("random", 16): (0.3154, 3.2189, 0.0226),
    ("reference", 36): (1.8994, 4.3633, 0.0186),
    ("chu", 36): (1.1775e-5, 4.3008, 0.0235),
    ("frank", 36): (0.7432, 4.4398, 0.0178),
    ("random", 36): (0.3896, 3.9691, 0.0312),
    ("reference", 64): (2.2025, 5.1303, 0.0214),
    ("chu", 64): (0.0140, 5.1536, 0.0219),
    ("frank", 64): (0.7140, 5.2631, 0.0175),
    ("random", 64): (0.2507, 4.6423, 0.0325),
}

# Element counts the comparison tables cover, and which classical family
# plays the "delta-like ACF" row at each count (Barker only exists at 13).
COMPARISON_M = (13, 16, 36, 64)
CLASSICAL_FAMILY: dict[int, str] = {13: "barker", 16: "frank", 36: "frank", 64: "frank"}

# Frozen protocol constants for the statistical reproduction checks.
# The random baseline code is the best of 1000 draws from this seed; the
# simulation seeds drive the 10 independent K=10000 runs per row.
RANDOM_BASELINE_TRIALS = 1000
RANDOM_BASELINE_SEED = 2026
COMPARISON_SIM_SEEDS = tuple(range(10))

"""Reference eigenvalue tables used by the comparison commands and tests.

Values are square roots of eigenvalues (wavenumbers), first five per type,
with repeated values listed repeatedly.
"""

TABLE1 = (
    # eps, first clamped TE value k1, sqrt(lambda1) of the ellipse
    (0.5, 2.40418, 3.75645),
    (0.6, 2.14377, 3.26214),
    (0.7, 1.95646, 2.91875),
    (0.8, 1.81492, 2.66990),
    (1.0, 1.61464, 2.40483),
)

TABLE2 = {
    "disk": {
        "NE": (0.0, 1.84119, 1.84119, 3.05424, 3.05424),
        "TE": (1.61464, 3.05164, 3.05164, 4.36453, 4.36453),
        "DE": (2.40483, 3.83171, 3.83171, 5.13563, 5.13562),
    },
}

TABLE4 = {
    "star": {
        "NE": (0.0, 3.51176, 3.51176, 5.32657, 5.32657),
        "TE": (3.26716, 6.18638, 6.18638, 8.70290, 8.70290),
        "DE": (5.06979, 8.00314, 8.00314, 10.45544, 10.45544),
    },
    "peanut": {
        "NE": (0.0, 1.72126, 3.02611, 3.45854, 3.66118),
        "TE": (2.13093, 3.41900, 4.70289, 4.89266, 5.55246),
        "DE": (3.36058, 4.38535, 5.79406, 6.08287, 6.68797),
    },
    "kite": {
        "NE": (0.0, 1.77091, 2.18272, 3.39190, 3.52298),
        "TE": (1.91665, 3.38373, 3.75151, 4.96416, 5.03581),
        "DE": (2.95502, 4.37204, 4.78839, 6.03903, 6.66370),
    },
}

AREAS = {"kite": 2.356, "peanut": 1.963, "star": 0.758}

# first Dirichlet eigenvalue of the unit disk as quoted alongside TABLE1
LAMBDA1_DISK = 5.78323

TOL_DISK = 1e-4
TOL_SHAPE = 2e-3
TOL_AREA = 1e-3

from fractions import Fraction

GAUSSIAN_Z3_IMAGE_ORDER = 24

Z3_SOLUTIONS = 6
Z5_SOLUTIONS = 10
Q8_SOLUTIONS = 8

# parameters of sampled points on the S3 solution conic
S3_SAMPLES = [0, 1, 2, -2, 3, Fraction(1, 2), Fraction(-1, 3), Fraction(2, 5), Fraction(-3, 4), 7]

CENTER_DIMS = {2: 9, 3: 1, 4: 9, 5: 1}
FIXED_DIMS = {2: 5, 3: 41, 4: 365}

# |Aut(Z5 x Z5, A_i)|
AUT_ORDERS_P5 = {"A1": 8, "A2": 120, "A3": 12}

Z3_GROUP = {"factors": [3]}
Z3_ALPHA = {"matrix": [[2]], "modulus": 3}

VERIFY_GAUSSIAN = {
    "command": "verify",
    "group": Z3_GROUP,
    "alpha": Z3_ALPHA,
    "candidate": {"values": [1, "q", "q"]},
}

VERIFY_Q8_BROKEN = {
    "command": "verify",
    "group": {"named": "q8"},
    "alpha": {"named": "q8"},
    "candidate": {"values": [1, "1/2", "1/2", "1/2"]},
}

ENUMERATE_Z3 = {
    "command": "enumerate",
    "group": Z3_GROUP,
    "alpha": Z3_ALPHA,
    "ansatz": {"roots": 3},
}

ORBITS_Z3 = {
    "command": "orbits",
    "group": Z3_GROUP,
    "alpha": Z3_ALPHA,
    "ansatz": {"roots": 3},
    "options": {"actions": ["character", "conjugation"]},
}

COMPARE_Z3 = {"command": "compare", "options": {"order": 3, "depth": 4}}

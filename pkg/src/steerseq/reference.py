"""Published reference values for the sharpness-range table.

Each row of the reference table lists, for a setting count and a number
of sequential Alices sharing one Bob, the published sharpness interval
of every ranged observer and the published purity infimum. Parenthesized
final digits in the source are read as the fourth decimal. The rows for
three settings also cover four settings (identical classical bound).
"""

PUBLISHED_TABLE = {
    (2, 1): {"alice": [(0.7072, 1.0)], "bob": (0.7072, 1.0), "mu_min": 0.7072},
    (2, 2): {"alice": [(0.7072, 0.9101)], "bob": (0.8841, 1.0), "mu_min": 0.8919},
    (3, 1): {"alice": [(0.5774, 1.0)], "bob": (0.5774, 1.0), "mu_min": 0.5774},
    (3, 2): {"alice": [(0.5774, 0.9306)], "bob": (0.7560, 1.0), "mu_min": 0.7598},
    (3, 3): {
        "alice": [(0.5774, 0.7733), (0.6579, 0.8735)],
        "bob": None,
        "mu_min": 0.9094,
    },
    (6, 1): {"alice": [(0.5394, 1.0)], "bob": (0.5394, 1.0), "mu_min": 0.5394},
    (6, 2): {"alice": [(0.5394, 0.9510)], "bob": (0.7062, 1.0), "mu_min": 0.7067},
    (6, 3): {
        "alice": [(0.5394, 0.8289), (0.6028, 0.9147)],
        "bob": None,
        "mu_min": 0.8464,
    },
    (6, 4): {
        "alice": [(0.5394, 0.6437), (0.6028, 0.7102), (0.7075, 0.8291)],
        "bob": None,
        "mu_min": 0.9655,
    },
    (10, 1): {"alice": [(0.5237, 1.0)], "bob": (0.5237, 1.0), "mu_min": 0.5237},
    (10, 2): {"alice": [(0.5237, 0.9584)], "bob": (0.6857, 1.0), "mu_min": 0.6861},
    (10, 3): {
        "alice": [(0.5237, 0.8489), (0.5810, 0.9284)],
        "bob": None,
        "mu_min": 0.8160,
    },
    (10, 4): {
        "alice": [(0.5237, 0.6775), (0.5810, 0.7496), (0.6743, 0.8593)],
        "bob": None,
        "mu_min": 0.9302,
    },
    (16, 1): {"alice": [(0.5031, 1.0)], "bob": (0.5031, 1.0), "mu_min": 0.5031},
    (16, 2): {"alice": [(0.5031, 0.9670)], "bob": (0.6587, 1.0), "mu_min": 0.6587},
    (16, 3): {
        "alice": [(0.5031, 0.8728), (0.5531, 0.9441)],
        "bob": None,
        "mu_min": 0.7833,
    },
    (16, 4): {
        "alice": [(0.5031, 0.7270), (0.5531, 0.7954), (0.6263, 0.8983)],
        "bob": None,
        "mu_min": 0.8889,
    },
    (16, 5): {
        "alice": [
            (0.5031, 0.5454),
            (0.5531, 0.6125),
            (0.6266, 0.6796),
            (0.766, 0.766),
        ],
        "bob": None,
        "mu_min": 0.9795,
    },
}

# Expected maximum chain length per setting count at unit purity.
PUBLISHED_MAX_ALICES = {2: 2, 3: 3, 4: 3, 6: 4, 10: 4, 16: 5}

# Published joint 2-Alice/2-Bob sharpness extent at three settings.
PUBLISHED_2X2_EXTENT_N3 = (0.7561, 0.8025)

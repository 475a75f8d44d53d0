"""Reference counts and sample codes for the 6-neuron sweeps."""

TABLE1_COLUMNS = (4, 5, 6, 7)

TABLE1_ROWS = (
    "Reducible or decomposable",
    "Max-intersection-complete",
    "Wheel frame only",
    "Sprocket only",
    "Wheel frame and sprocket",
    "Wire wheel only",
    "Unknown",
)

TABLE1 = {
    "Reducible or decomposable": (203, 480, 526, 341),
    "Max-intersection-complete": (4, 79, 399, 909),
    "Wheel frame only": (0, 1, 11, 36),
    "Sprocket only": (2, 6, 14, 14),
    "Wheel frame and sprocket": (1, 29, 92, 108),
    "Wire wheel only": (0, 0, 1, 1),
    "Unknown": (0, 96, 535, 1169),
    "Total": (210, 691, 1578, 2578),
}

TABLE2_COLUMNS = (2, 3)

TABLE2_ROWS = ("Reducible or decomposable", "Max-intersection-complete", "Wheel", "Unknown")

TABLE2 = {
    "Reducible or decomposable": (153, 36),
    "Max-intersection-complete": (944, 32),
    "Wheel": (0, 6),
    "Unknown": (1004, 76),
    "Total": (2101, 150),
}

# (bucket kind, bucket value) -> sample codes listed as unknown; the empty word is implied.
APPENDIX_SAMPLES = {
    ("facets", 5): (
        "2346 145 456 12 13 45 46 1 2 3",
        "1456 245 346 12 13 45 46 1 2 3",
        "245 346 456 12 13 45 46 1 2 3",
        "2456 135 156 12 34 15 56 1 2 3 4",
        "2456 156 235 12 34 25 56 1 2 3 4",
        "2356 134 135 146 12 13 14 35 1 2 6",
        "2356 134 135 246 12 13 26 35 1 2 4",
        "1456 134 135 246 12 13 14 15 46 1 2",
        "3456 134 135 246 12 13 34 35 46 1 2 3",
        "134 135 256 346 12 13 34 1 2 5 6",
    ),
    ("facets", 6): (
        "145 246 456 12 13 23 45 46 1 2 3",
        "3456 145 246 12 13 23 45 46 1 2 3",
        "235 256 456 12 13 14 25 56 1 2 3 4",
        "2456 156 235 12 13 14 25 56 1 2 3 4",
        "2345 2356 156 12 13 14 235 56 1 2 3 4",
        "3456 156 235 12 13 24 35 56 1 2 3 4",
        "2345 156 256 12 13 14 25 56 1 2 3 4",
        "235 256 456 12 13 24 25 56 1 2 3 4",
        "1456 235 256 12 13 24 25 56 1 2 3 4",
        "235 356 456 12 13 24 35 56 1 2 3 4",
    ),
    ("facets", 7): (
        "146 156 246 12 13 23 45 16 46 1 2 3 4 5",
        "145 146 245 346 12 13 23 14 45 46 1 2 3",
        "145 146 156 245 12 13 23 14 15 16 45 1 2 3",
        "145 146 245 256 12 13 23 14 25 45 1 2 3 6",
        "145 156 245 346 12 13 23 15 45 1 2 3 4 6",
        "145 156 246 456 12 13 23 15 45 46 56 1 2 3 5",
        "3456 145 156 246 12 13 23 15 45 46 56 1 2 3 5",
        "145 245 346 456 12 13 23 45 46 1 2 3",
        "145 246 356 456 12 13 23 45 46 56 1 2 3",
        "3456 156 245 12 13 14 23 45 56 1 2 3 4",
    ),
    ("pure", 2): (
        "123 124 126 135 456 12 13 4 5 6",
        "123 124 135 156 245 246 12 13 15 24 5 6",
        "123 124 135 145 236 356 456 12 13 14 15 23 35 36 45 56 1 3 5",
        "123 124 126 145 156 234 356 456 12 14 15 16 23 24 45 56 1 2 3 5",
        "123 124 126 134 136 145 234 256 345 12 13 14 16 23 24 26 34 45 1 2 3 4 5",
        "123 124 125 126 134 135 156 245 346 356 12 13 14 15 16 24 25 34 35 36 56 1 2 3 5",
        "123 124 125 126 134 135 136 146 156 245 346 12 13 14 15 16 24 25 34 36 46 1 2 3 4 6",
        "123 124 125 135 145 156 235 236 246 256 345 356 12 13 14 15 23 24 25 26 35 36 45 56 1 2 3 5 6",
        "123 124 126 134 135 136 145 234 235 245 345 346 356 12 13 14 15 16 23 24 25 34 35 36 45 1 2 3 4 5",
        "123 124 125 126 135 136 146 156 235 236 245 256 345 356 12 13 14 15 16 23 24 25 26 35 36 45 56 1 2 3 5 6",
    ),
    ("pure", 3): (
        "1234 1235 1246 1256 1345 123 124 125 126 134 135 12 13",
        "1234 1235 1236 1256 1345 123 125 126 134 135 12 13",
        "1234 1236 1256 1345 2345 123 126 134 234 345 15 25 34 1 2 5",
        "1234 1236 1256 1345 2346 123 126 134 234 236 15 23 1",
        "1234 1235 1256 1345 2356 123 125 134 135 235 256 13 25",
        "1234 1235 1236 1245 1456 2345 123 124 125 145 234 235 245 12 16 23 24 25 1 2",
        "1234 1235 1246 1256 1345 3456 123 124 125 126 134 135 345 12 13 46 56 4 5 6",
        "1234 1235 1246 1256 1345 2345 123 124 125 126 134 135 234 235 345 12 13 23 34 35 3",
        "1234 1235 1246 1256 1345 2456 123 124 125 126 134 135 246 256 12 13 26 45 4 5",
        "1234 1235 1236 1246 1256 1345 123 124 125 126 134 135 12 13",
    ),
}

# The 5-neuron code whose class is the only one flagged by a wheel frame.
C_STAR = "2345 123 134 145 13 14 23 34 45 3 4"

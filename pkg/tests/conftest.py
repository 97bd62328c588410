"""Shared constants for the documented reference instance."""

REFERENCE_K = 6
REFERENCE_DEPTHS = [5, 7, 7, 8, 8, 9]

# level sets the solver must produce for the reference instance with
# domination pruning on, keyed by signature length
REFERENCE_LEVELS = {
    6: {(5, 7, 7, 8, 8, 9)},
    5: {(3, 7, 8, 8, 8), (4, 5, 8, 8, 9), (4, 7, 7, 8, 8), (5, 5, 7, 7, 9), (5, 5, 7, 8, 8)},
    4: {(3, 5, 8, 8), (3, 7, 7, 8), (4, 4, 8, 8), (4, 5, 5, 9), (4, 5, 7, 7), (5, 5, 5, 7)},
    3: {(2, 7, 7), (3, 4, 8), (3, 5, 5), (4, 4, 5)},
    2: {(1, 6), (2, 4), (3, 3)},
    1: {(0,)},
}

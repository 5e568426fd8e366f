"""Integer outcome codes shared by all kernel backends."""

STRONG = 0
WEAK = 1
DEFAULT = 2
REMORTGAGE = 3

N_CODES = 4

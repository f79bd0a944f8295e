# The A_3 surface xy = z^4 and its toric data.

A3_RAYS = ((0, 1), (4, -3))
A3_GENERATORS = ((1, 0), (3, 4), (1, 1))
A3_ORDER_MATRIX = ((2, -1), (1, 1))
A3_CRITICAL_RAY = (2, -1)
A3_THETA_SHIFT = (1, 1)

U = (1, 0)
U3V4 = (3, 4)
UV = (1, 1)

# default display names, also in config.yml
GENERATOR_NAMES = {U: "u", U3V4: "u3v4", UV: "uv"}

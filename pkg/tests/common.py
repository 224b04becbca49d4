# -*- coding: utf-8 -*-
import math

import numpy as np

from intermittency.dynamics.maps import BOOLE
from intermittency.dynamics.partition import build_partition

GAMMA = math.sqrt(2) - 1

BOOLE_PARTITION = build_partition(BOOLE)

# x_0 in Y, one step in A_1, back to Y, two steps in A_2, then twice in Y
SEVEN_STEP_LABELS = np.array([0, 1, 0, 2, 2, 0, 0])

# yapf: disable
SEVEN_STEP_OCCUPATION = [
    # u  S_A1  S_A2  S_Y  G_Y  D_Y
    (0,  0,    0,    0,   0,   2),
    (1,  1,    0,    0,   0,   2),
    (2,  1,    0,    1,   2,   5),
    (3,  1,    1,    1,   2,   5),
    (4,  1,    2,    1,   2,   5),
    (5,  1,    2,    2,   5,   6),
    (6,  1,    2,    3,   6,   None),
]
# yapf: enable

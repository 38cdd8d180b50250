"""Worked-example data shipped with the package.

Two data sets:

* ``X`` -- seven integer points in R^4, the Euclidean example, used with
  the projection vectors ``S`` and ``S_PRIME``. The two-decimal copies
  ``S_PRINTED`` and ``S_PRIME_PRINTED`` sum to 1.01 and 0.99 and are not
  valid projection vectors. ``S`` and ``S_PRIME`` sum to one, round to
  those copies, and reproduce the reference kernels ``F_PRINTED`` and
  ``F_PRIME_PRINTED`` to within 0.05 in every entry (found by a minimax
  fit restricted to the rounding box).
* ``NE_D`` -- a 6 x 6 non-Euclidean dissimilarity matrix, with one-decimal
  reference copies of its centred kernel (``NE_F_PRINTED``), of the kernel
  after adding sigma to the squared entries (``IMP_F_PRINTED``) and after
  adding 2 * sigma (``E_F_PRINTED``).

The ``*_PRINTED`` matrices carry one decimal; compare against them with an
absolute tolerance of 0.05.
"""
import numpy as np

X = np.array([
    [77, 113, 125, 99],
    [53, 127, 104, 122],
    [95, 80, 136, 55],
    [20, 83, 12, 2],
    [62, 67, 84, 6],
    [47, 11, 77, 94],
    [30, 87, 26, 90],
], dtype=float)

S_PRINTED = np.array([0.22, 0.17, 0.08, 0.04, 0.05, 0.04, 0.41])
S_PRIME_PRINTED = np.array([0.13, 0.09, 0.15, 0.12, 0.31, 0.08, 0.11])


def _close_sum(head):
    head = np.asarray(head, dtype=float)
    return np.append(head, 1.0 - head.sum())


S = _close_sum([0.2209619, 0.16991144, 0.0754417, 0.03650379, 0.04674618, 0.04257946])
S_PRIME = _close_sum([0.12958573, 0.08822641, 0.15461356, 0.12371629, 0.31394127,
                      0.08051939])

D0_PRINTED = np.array([
    [0, 41.7, 58.9, 162.3, 112.6, 116.8, 113],
    [41.7, 0, 97.4, 160.9, 132.4, 122.5, 96.1],
    [58.9, 97.4, 0, 154.3, 79.8, 109.8, 132.7],
    [162.3, 160.9, 154.3, 0, 85, 136.4, 89.8],
    [112.6, 132.4, 79.8, 85, 0, 105.6, 108.8],
    [116.8, 122.5, 109.8, 136.4, 105.6, 0, 93.2],
    [113, 96.1, 132.7, 89.8, 108.8, 93.2, 0],
])

F_PRINTED = np.array([
    [3755, 2570.5, 3689.2, -5143.7, -615.5, -1404, -3110.1],
    [2570.5, 3127.9, 367.7, -5238.2, -3362, -2403.5, -1658.6],
    [3689.2, 367.7, 7093.4, -2220.5, 4207.7, 1048.2, -3856.9],
    [-5143.7, -5238.2, -2220.5, 12284.6, 6374.8, 376.3, 3510.2],
    [-615.5, -3362, 4207.7, 6374.8, 7685, 1800.5, -683.6],
    [-1404, -2403.5, 1048.2, 376.3, 1800.5, 7070, 589.9],
    [-3110.1, -1658.6, -3856.9, 3510.2, -683.6, 589.9, 2791.9],
])

F_PRIME_PRINTED = np.array([
    [5423.6, 5652.6, 3042.7, -5937.6, -2491.7, -748.2, -867.5],
    [5652.6, 7623.5, 1134.7, -4618.6, -3824.7, -334.2, 1997.5],
    [3042.7, 1134.7, 4131.9, -5329.5, 16.4, -611.1, -3929.4],
    [-5937.6, -4618.6, -5329.5, 9028.2, 2036.1, -1430.4, 3290.3],
    [-2491.7, -3824.7, 16.4, 2036.1, 2264, -1088.5, -1985.8],
    [-748.2, -334.2, -611.1, -1430.4, -1088.5, 6713, 1819.7],
    [-867.5, 1997.5, -3929.4, 3290.3, -1985.8, 1819.7, 5608.4],
])

# Reference clustering of the seven points (1-based labels).
CLUSTERING_5 = (2, 2, 2, 1, 1, 1, 1)

NE_D = np.array([
    [0, 10, 20, 20, 40, 40],
    [10, 0, 40, 40, 20, 40],
    [20, 40, 0, 40, 40, 20],
    [20, 40, 40, 0, 20, 10],
    [40, 20, 40, 20, 0, 40],
    [40, 40, 20, 10, 40, 0],
], dtype=float)

NE_F_PRINTED = np.array([
    [266.7, 316.7, 191.7, 66.7, -408.3, -433.3],
    [316.7, 466.7, -308.3, -433.3, 291.7, -333.3],
    [191.7, -308.3, 516.7, -408.3, -283.3, 291.7],
    [66.7, -433.3, -408.3, 266.7, 191.7, 316.7],
    [-408.3, 291.7, -283.3, 191.7, 516.7, -308.3],
    [-433.3, -333.3, 291.7, 316.7, -308.3, 466.7],
])

IMP_F_PRINTED = np.array([
    [582.2, 253.6, 128.6, 3.6, -471.4, -496.4],
    [253.6, 782.2, -371.4, -496.4, 228.6, -396.4],
    [128.6, -371.4, 832.2, -471.4, -346.4, 228.6],
    [3.6, -496.4, -471.4, 582.2, 128.6, 253.6],
    [-471.4, 228.6, -346.4, 128.6, 832.2, -371.4],
    [-496.4, -396.4, 228.6, 253.6, -371.4, 782.2],
])

E_F_PRINTED = np.array([
    [897.7, 190.5, 65.5, -59.5, -534.5, -559.5],
    [190.5, 1097.7, -434.5, -559.5, 165.5, -459.5],
    [65.5, -434.5, 1147.7, -534.5, -409.5, 165.5],
    [-59.5, -559.5, -534.5, 897.7, 65.5, 190.5],
    [-534.5, 165.5, -409.5, 65.5, 1147.7, -434.5],
    [-559.5, -459.5, 165.5, 190.5, -434.5, 1097.7],
])

NE_WEIGHTS = np.array([10, 1, 1, 10, 1, 1], dtype=float)

# Reference values for the 6-point example.
NE_SIGMA = 757.205
IMP_LAMBDA_MIN = -378.603
NE_BEST = (2, 2, 1, 2, 2, 1)
E_BEST = (1, 2, 1, 1, 2, 1)
SPLIT = (1, 1, 1, 2, 2, 2)
COST_NE_BEST = 1325.0
COST_NE_SPLIT = 1400.0
COST_NE_WEIGHTED = 1175.0
COST_E_BEST = 4353.821
COST_E_SPLIT = 4428.821
COST_E_WEIGHTED = 5907.533


def d0() -> np.ndarray:
    """Exact distance matrix of ``X`` (``D0_PRINTED`` is rounded)."""
    diff = X[:, None, :] - X[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))

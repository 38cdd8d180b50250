# Kernel k-means on an indefinite kernel, and what the Euclidean repair does to it.
import numpy as np

from gowerk import reference_data as ref
from gowerk.euclidesation import euclidise
from gowerk.kkmeans import (
    cost_of,
    exhaustive_best,
    lloyd,
    optimal_partitions,
    point_to_weighted_centroid_sq,
    weighted_cost_of,
)
from gowerk.transforms import centered_transform

F = centered_transform(ref.NE_D)
rep = euclidise(ref.NE_D)
G = centered_transform(rep.repaired)

res = lloyd(F, 2, seed=1, restarts=100)
print("kernel k-means:", res.assignments, "cost %.3f" % res.cost)
print("every partition checked:", exhaustive_best(F, 2).assignments)

# a split into the first and last three points is worse under the k-means cost ...
split = ref.SPLIT
print("\nsplit cost %.3f" % cost_of(F, split, 2))

# ... but with weighted centres it beats the k-means optimum
w = ref.NE_WEIGHTS
print("split with weighted centres %.3f" % weighted_cost_of(F, split, 2, w))
# the kernel is indefinite, so a "squared distance" can even come out negative
print("squared distance of point 1 to its weighted centre %.3f"
      % point_to_weighted_centroid_sq(F, 0, [0, 1, 2], w))

# after the 2 sigma shift every partition into k clusters gets sigma * (m - k) more
m, k = 6, 2
print("\nsigma = %.3f, predicted increase %.3f" % (rep.sigma, rep.sigma * (m - k)))
for labels in (ref.NE_BEST, split):
    print(labels, "%.3f -> %.3f" % (cost_of(F, labels, 2), cost_of(G, labels, 2)))

# so the set of optimal partitions is unchanged
print("\noptima before:", optimal_partitions(F, 2)[1])
print("optima after: ", optimal_partitions(G, 2)[1])

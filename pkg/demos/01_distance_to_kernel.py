# From a distance matrix to a kernel matrix and back to coordinates.
import numpy as np

from gowerk import reference_data as ref
from gowerk.transforms import embed, gower_transform, pairwise_distances, recover_distances

np.set_printoptions(precision=1, suppress=True, linewidth=120)

# seven points in R^4 and their Euclidean distances
X = ref.X
D = pairwise_distances(X)
print("distances\n", D)

# any s with sum 1 defines a kernel; two different ones here
for s in (ref.S, ref.S_PRIME):
    F = gower_transform(D, s)
    print("\ns =", " ".join("%.3f" % v for v in s))
    print("kernel\n", F)

    # the distances are encoded in the kernel regardless of s
    print("max |recovered - D| =", np.abs(recover_distances(F) - D).max())

    # coordinates from the eigendecomposition; only 4 eigenvalues are nonzero
    Y = embed(F).points
    print("embedding shape", Y.shape)
    print("sum of squared distance errors = %.3e" % np.sum((pairwise_distances(Y) - D) ** 2))

# Y is not X: it is X up to a rotation and a translation
Y = embed(gower_transform(D, ref.S)).points
print("\nfirst row of X:", X[0], " first row of Y:", np.round(Y[0], 2))

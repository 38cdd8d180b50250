# A dissimilarity matrix that has no Euclidean embedding, and how to fix it.
import numpy as np

from gowerk import reference_data as ref
from gowerk.euclidesation import euclidise, max_triangle_violation, metric_constant, metricize
from gowerk.symmat import sym_eigen
from gowerk.transforms import centered_transform, embed, pairwise_distances

np.set_printoptions(precision=3, suppress=True, linewidth=120)

D = ref.NE_D
print("dissimilarities\n", D)

F = centered_transform(D)
print("\neigenvalues of the centred kernel:", sym_eigen(F).eigenvalues)
# a negative eigenvalue means there are no coordinates with these distances

# shifting squared distances by sigma only moves the spectrum by sigma / 2
half = euclidise(D, mode="original_gower")
print("\nshift by sigma   : sigma=%.3f  smallest eigenvalue %.3f" % (half.sigma, half.post_lambda_min))

# shifting by 2 sigma moves every eigenvalue except the one for the
# constant vector by sigma, which lands the smallest one on zero
full = euclidise(D)
print("shift by 2 sigma : sigma=%.3f  smallest eigenvalue %.1e" % (full.sigma, full.post_lambda_min))

D2 = full.repaired
Y = embed(centered_transform(D2)).points
print("embedding of the repaired matrix:", Y.shape, " max error", np.abs(pairwise_distances(Y) - D2).max())

# a weaker repair: add a constant to get a metric (triangle inequality)
print("\nlargest triangle violation", max_triangle_violation(D))
c = metric_constant(D)
print("constant", c, "-> violation after", max_triangle_violation(metricize(D, c)))

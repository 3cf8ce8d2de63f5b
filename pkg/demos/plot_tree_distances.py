"""
Distances in the tree of SL(2, Q_p)
===================================

Vertices are homothety classes of lattices.  The distance between two of them
is read off from the Smith valuations of a change-of-basis matrix, and we can
compare it with plain breadth-first search.
"""

import numpy as np

from valtree.bttree import base_vertex, bfs_ball, displacement, pairwise_distances
from valtree.exactmat import Mat
from valtree.valfield import PAdic

v = PAdic(2)
root = base_vertex(2, v)
ball = bfs_ball(root, 3)
print("vertices within distance 3:", len(ball.vertices))

# %%
# The closed form agrees with BFS depth for distances to the root.
D = pairwise_distances(ball.vertices)
print(np.array_equal(D[0], np.array(ball.depth)))

# %%
# A unipotent element with a 1/2 in the corner moves the base vertex by 2.
g = Mat.from_literals([["1", "1/2"], ["0", "1"]])
print("displacement:", displacement(g, root))
print("distance histogram:", np.bincount(D.ravel()))

"""Characteristic sublinks, exact signatures, and the spin criterion.

A framed link's characteristic sublinks solve L x = diag(L) over GF(2);
they correspond to spin structures on the surgered 3-manifold.  The empty
sublink is characteristic exactly when the form is even, which is when
the 2-handlebody itself is spin.  Signatures are computed exactly, by
rational symmetric elimination, never by floating point.
"""

from kirbycalc import characteristic_sublinks, exact_signature

def show(name, matrix):
    sols = characteristic_sublinks(matrix)
    masks = sorted(sols.as_set())
    pretty = [
        "{" + ", ".join(str(i + 1) for i in range(len(matrix)) if m >> i & 1) + "}"
        for m in masks
    ]
    print(f"{name}: sigma = {exact_signature(matrix):+d}, "
          f"{sols.count} characteristic sublink(s): {' '.join(pretty) or '{}'}")
    if sols.contains(0):
        print(f"  the empty sublink qualifies: the form is even, the manifold is spin")

# 0-surgery on a knot: both spin structures of S^3_0(K)
show("0-framed unknot", [[0]])

# an odd framing forces the component into every characteristic sublink
show("diag(2, 3)", [[2, 0], [0, 3]])

# the hyperbolic plane is even: a spin 2-handlebody with sigma = 0
show("hyperbolic pair", [[0, 1], [1, 0]])

# E8-style even negative definite block (first four basis vectors)
show(
    "even definite chunk",
    [
        [-2, 1, 0, 0],
        [1, -2, 1, 0],
        [0, 1, -2, 1],
        [0, 0, 1, -2],
    ],
)

"""Torus knots are not smoothly slice: the full-twist blow-up recipe.

A positive (p, kp+1) torus knot on p strands carries k negative
full-twist blow-ups across all p strands; for odd p none of the blow-up
circles joins the characteristic link, so the characteristic link stays
a single unknot with framing -k p^2.  Meridian blow-ups and one blow-down
then leave a spin 2-handlebody with

    b2 = k p^2 + k - 1,    sigma = k p^2 - k,

and the margin 4 b2 - 5|sigma| - 12 = -k p^2 + 9k - 16 is always
negative: not smoothly slice.
"""

from kirbycalc import blow_up_coherent, endgame, init_from_knot, torus_braid

print(f"{'p':>3} {'k':>3} {'b2':>6} {'sigma':>6} {'margin':>8}   verdict")
for p in (3, 5, 7, 9):
    for k in (1, 2, 3):
        session = init_from_knot(torus_braid(p, k * p + 1))
        for _ in range(k):
            session = blow_up_coherent(session, -1, 1, p)
        # the braid word now freely reduces: the engine certifies the unknot
        session, report = endgame(session)
        assert report.b2 == k * p * p + k - 1
        assert report.sigma == k * p * p - k
        assert report.margin == -k * p * p + 9 * k - 16
        print(
            f"{p:>3} {k:>3} {report.b2:>6} {report.sigma:>6} "
            f"{report.margin:>8}   {report.verdict}"
        )

print()
print("every margin is negative with b2 > 1, so every row is obstructed")

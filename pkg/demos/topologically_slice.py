"""A topologically slice knot that is not smoothly slice.

The knot is the closure of a 9-strand braid: a (9,8) torus braid dressed
with negative full twists and two negative clasps.  Its Alexander
polynomial is 1, so it is topologically slice by Freedman; the move
derivation below nevertheless produces a spin 2-handlebody with
(b2, sigma) = (21, 16) and margin -8, so it is not smoothly slice.
The braid word is exactly the one drawn in the bundled derivation.
"""

from kirbycalc import (
    alexander_polynomial,
    arf,
    bundled_script_path,
    determinant,
    parse_braid_word,
    run_script_file,
)

WORD = (
    "(s8 s7 s6 s5 s4 s3 s2 s1)^8 (s3 s4 s5 s6 s7 s8)^-7 "
    "(s1 s2)^-3 s1^-2 (s3 s4)^-3 s5^-2"
)

braid = parse_braid_word(WORD, 9)
delta = alexander_polynomial(braid)
print("Alexander polynomial:", delta)
print("determinant:", determinant(braid), " Arf:", arf(braid))
assert delta.is_one  # topologically slice

result = run_script_file(bundled_script_path("fig2knot"))
print("derivation:", result.report.summary())
for point in result.report.trust_points:
    print("  trust point:", point.describe(), "->", point.detail)

"""The figure-eight knot has order two in the concordance group, and the
obstruction sees exactly half of that statement.

4_1 is amphichiral, so 4_1 # 4_1 is slice; an obstruction that ruled out
the sum would be wrong.  Here the bound lands exactly on the boundary:
the bundled derivation gives (b2, sigma) = (11, 8) for 4_1 itself
(margin -8: not smoothly slice), while the connected-sum formulas give
(23, 16) with margin exactly 0: inconclusive, as it must be.
"""

from kirbycalc import (
    arf,
    arf_consistency,
    bundled_script_path,
    connected_sum,
    parse_braid_word,
    run_script_file,
)

result = run_script_file(bundled_script_path("fig8"))
report = result.report
print("figure-eight:", report.summary())

fig8_arf = arf(parse_braid_word("(s1 s2^-1)^2", 3))
print(f"Arf(4_1) = {fig8_arf}; spin signature 8*Arf mod 16 check:",
      arf_consistency(report, fig8_arf))

doubled = connected_sum(report, report)
print("4_1 # 4_1:", doubled.summary())
assert doubled.margin == 0 and doubled.verdict == "inconclusive"

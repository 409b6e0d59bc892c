"""
1 - x on y^2 = x(1-x)(x-p): a nonsquare that is a square locally
================================================================

"""

from collections import Counter

from isoquad.curve import (
    curve_report, one_minus_x_square_in_completion, one_minus_x_square_in_F, sample_cases,
)

p = 5
print("square in the function field:", one_minus_x_square_in_F(p))

cases = sample_cases(p, 20, seed=1)
for c in cases[:5]:
    r = one_minus_x_square_in_completion(c)
    print(f"{c.branch:14} a={c.a}  square={r.square}  depth={r.depth}")
    for step in r.trace[:2]:
        print("    ", step)

print(Counter(c.branch for c in cases))
rep = curve_report(p, samples=100, seed=7)
print({k: rep.to_json()[k] for k in ("one_minus_x_square_in_F", "all_completions_square", "branch_counts")})

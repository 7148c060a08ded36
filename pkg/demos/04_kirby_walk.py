"""Scramble a presentation with random moves, then recover the verdict.

A seeded walk applies handle slides, orientation reversals and
(de)stabilizations.  The matrix it produces looks nothing like the
start, but every reported invariant agrees and the classifier proves
the two presentations equivalent.
"""

from quadlink import invariants_report, presentation, random_walk, yc_equivalent

start = presentation([[3, -1], [-1, 2]], [3, 2])
walked, trail = random_walk(start, steps=30, seed=8)

print("start matrix      ", start.matrix.data)
print("after 30 moves    ", walked.matrix.data)
print("moves applied     ", ", ".join(type(m).__name__ for m in trail[:8]), "...")
print()

r1 = invariants_report(start)
r2 = invariants_report(walked)
print("stable profile before:", r1.stable_profile())
print("stable profile after: ", r2.stable_profile())
assert r1.stable_profile() == r2.stable_profile()

verdict = yc_equivalent(start, walked)
print()
print(f"verdict: {verdict.status} ({verdict.reason})")

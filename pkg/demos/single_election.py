"""One full election, truthful vs manipulative, on the same seed.

Samples a handful of voters from the bundled 7-candidate data and runs the
elicitation loop twice with identical query-selection randomness: once with
truthful voters, once with strategic ones.  The two traces are identical up
to the first manipulated answer; after that they may diverge, occasionally
even in the declared winner.

Run:  python demos/single_election.py
"""

import random

from iterborda import Policy, bundled, is_safe, run_election, sample_profiles

SEED = 11

ds = bundled("sample7")
profiles = sample_profiles(ds, 5, random.Random(SEED))
policy = Policy("random", careful=False)

print(f"dataset {ds.name}: {ds.m} candidates, {ds.total_rankings()} rankings")
for i, p in enumerate(profiles):
    print(f"  voter {i} truly ranks {list(p.ranking)}")
print()

truthful = run_election(profiles, "truthful", policy, random.Random(SEED))
strategic = run_election(profiles, "manipulative", policy, random.Random(SEED))

print(f"truthful run   : winner {truthful.winner} after {truthful.queries_issued} queries")
print(f"strategic run  : winner {strategic.winner} after {strategic.queries_issued} queries, "
      f"{strategic.manipulated_count} manipulated answers")
print(f"outcome changed: {truthful.winner != strategic.winner}")
print()

print("strategic trace around the first manipulation:")
first = next((i for i, s in enumerate(strategic.trace) if s.manipulated), None)
if first is None:
    print("  (no manipulation occurred this run; try another seed)")
else:
    for i in range(max(0, first - 2), min(len(strategic.trace), first + 3)):
        step = strategic.trace[i]
        a, b = step.response
        tag = " <-- manipulated" if step.manipulated else ""
        safety = "safe" if is_safe(step.query, step.pw) else "unsafe"
        print(f"  round {i + 1:3d}: voter {step.query.voter} asked "
              f"({step.query.cj},{step.query.ck}), answered {a}>{b}; "
              f"|PW|={len(step.pw)} [{safety}]{tag}")
print()

careful = run_election(profiles, "manipulative", Policy("random", careful=True),
                       random.Random(SEED))
print(f"careful center : winner {careful.winner} after {careful.queries_issued} queries, "
      f"{careful.manipulated_count} manipulated answers")

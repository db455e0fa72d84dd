"""Seeded consistency sweeps over every checker.

Each sweep generates a reproducible corpus and reruns a checker instance by
instance; the theorems are true, so a reported counterexample would flag an
arithmetic bug, never mathematics.  The same sweeps back the CLI's `check`
and `sweep` subcommands.
"""

from sumsetlab import sweep

for checker in ("cauchy-davenport", "lemma-distinct", "lemma-iterated",
                "freiman", "plunnecke", "thm-distinct", "thm-iterated",
                "long-fibre"):
    records = sweep(checker, count=40, seed=0xB4A11)
    tight = sum(1 for r in records if r["tight"])
    assert all(r["holds"] for r in records)
    print(f"{checker:18s} 40/40 hold   ({tight} tight)")

print()
print("sample records from the two-set threshold checker:")
for rec in sweep("thm-distinct", 3, seed=5):
    print(" ", {k: str(v) for k, v in rec.items()})

"""Exact decisions on eventually periodic data: matching, engulfing and a catalog tour."""

from galois_tukey import ChoppedReal, IntervalPartition, UlpFunction, engulfs, matches, non_engulf_witness
from galois_tukey import catalog

zero = UlpFunction.constant(0)
small = ChoppedReal(UlpFunction.periodic([0, 1]), IntervalPartition.singletons())
big = ChoppedReal(UlpFunction.periodic([0, 1]), IntervalPartition.uniform(3))

print("y = 0 matches small:", matches(zero, small).to_dict())
print("big engulfs small:", engulfs(big, small).to_dict())

other = ChoppedReal(UlpFunction.periodic([1, 0]), IntervalPartition.uniform(2))
v = engulfs(other, small)
print("other engulfs small:", v.answer)
if not v.answer:
    y = non_engulf_witness(other, small)
    print("  witness", y.take(12), "matches other:", matches(y, other).answer, "matches small:", matches(y, small).answer)

for name, entry in sorted(catalog.ENTRIES.items()):
    hand = [entry.run(inst).status for _, inst in entry.hand_picked()]
    s = catalog.summarize(entry.sweep(50, 0))
    print(f"{name:14} hand-picked {hand}  sweep: {s['pass']} pass, {s['fail']} fail, {s['vacuous']} vacuous")

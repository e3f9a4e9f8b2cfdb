"""Mixing embedded two-branch states and watching where entanglement lands.

entanglement_molecule mixes two-branch states placed on different qubit
subsets. Mixing destroys the all-or-nothing structure of the pure
ingredients: this script surveys every bunch split of a uniform mixture
over the four 3-subsets of 4 qubits and groups the results by how many
qubits the split covers.

Run: python demos/entanglement_molecule.py
"""

from collections import defaultdict

from bunchent import entanglement_molecule, eof_bunches, enumerate_partitions

subsets = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
rho = entanglement_molecule(4, 3, 1, {s: 0.25 for s in subsets})

by_cover = defaultdict(list)
for part in enumerate_partitions(4):
    rep = eof_bunches(rho, part)
    by_cover[part.m + part.n].append(rep)

for cover in sorted(by_cover):
    reps = by_cover[cover]
    print(f"splits covering {cover} of 4 qubits ({len(reps)} total):")
    positive = [r for r in reps if r.eof > 1e-9]
    if not positive:
        print("  all separable (eof below 1e-9)")
        continue
    for rep in positive:
        a = "-".join(map(str, rep.partition.bunch_a))
        b = "-".join(map(str, rep.partition.bunch_b))
        print(f"  {a} vs {b}: concurrence {rep.concurrence:.6f}, eof {rep.eof:.6f}")

# a lopsided mixture keeps more of the dominant ingredient's structure:
# splits inside its subset stay strongly entangled
print("\nlopsided mixture, weight 0.9 on subset (1,2,3):")
lop = entanglement_molecule(4, 3, 1, {(1, 2, 3): 0.9, (2, 3, 4): 0.1})
for part in enumerate_partitions(4):
    rep = eof_bunches(lop, part)
    if rep.eof > 1e-9:
        a = "-".join(map(str, part.bunch_a))
        b = "-".join(map(str, part.bunch_b))
        print(f"  {a} vs {b}: concurrence {rep.concurrence:.6f}, eof {rep.eof:.6f}")

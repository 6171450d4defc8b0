"""Generators, linear relations and products in H^-1 of k[x,y]_2.

Prints the minimal generators of H^-1, searches for a change of basis among the
top-weight generators realizing the relations x21 r - y21 s, x12 r - y12 s,
(x11 - x22) r - (y11 - y22) s, and reports which cup products vanish.
"""
from drep.cli import load_algebra
from drep.cohomology import CohomologyClass, Complex, match_relations
from drep.expand import expand
from drep.groebner import vector_degree


def main():
    cx = Complex(expand(load_algebra("kxy"), 2))
    shifts = cx.shifts(1)
    gens = cx.minimal_generators(1)
    print("H^-1 minimal generators by weight:", cx.minimal_generator_counts(1))
    for g in gens:
        print(f"  {g.label} [weight {vector_degree(g.representative, shifts)}] = {cx.from_vector(g.representative, 1)}")
    print("H^-2 minimal generators by weight:", cx.minimal_generator_counts(2))
    for m in (3, 4):
        print(f"H^-{m} vanishes:", cx.vanishing(m))

    v = {name: cx.ring.gen(i) for i, name in enumerate(cx.ring.names)}
    relations = [
        [v["x_2_1"], -v["y_2_1"]],
        [v["x_1_2"], -v["y_1_2"]],
        [v["x_1_1"] - v["x_2_2"], v["y_2_2"] - v["y_1_1"]],
    ]
    top = max(vector_degree(g.representative, shifts) for g in gens)
    old = [g for g in gens if vector_degree(g.representative, shifts) == top]
    lower = [g for g in gens if vector_degree(g.representative, shifts) < top]
    match = match_relations(cx, 1, [g.representative for g in old], [g.representative for g in lower], relations)
    print("relations realized:", match.found)
    if not match.found:
        return
    print("change of basis:", [[str(c) for c in row] for row in match.transform])
    r = CohomologyClass(1, match.generators[0], "r")
    s = CohomologyClass(1, match.generators[1], "s")
    pairs = [("r", r), ("s", s)] + [(g.label, g) for g in lower]
    for i, (na, a) in enumerate(pairs):
        for nb, b in pairs[i:]:
            print(f"  {na}*{nb} zero in H^-2: {cx.cup_product(a, b).is_zero}")


if __name__ == "__main__":
    main()

"""The Littelmann crystal B(delta) and exact path counting.

Generates the crystal of the 7-dimensional G2 representation, draws its graph
in DOT, and verifies the two counting identities that make the growth graphs
trustworthy: free counts against weight-multiset convolution and chamber
counts against iterated tensor decomposition.
"""

from weylwalks import (
    build_root_system,
    build_growth_graph,
    generate_crystal,
    tensor_decompose,
    weight,
    weight_multiplicities,
    weyl_dim,
    wzero,
)
from weylwalks.chars import convolve_multisets
from weylwalks.paths import crystal_to_dot


def main():
    g2 = build_root_system("G", 2)
    delta = weight((1, 0)) if weyl_dim(g2, (1, 0)) == 7 else weight((0, 1))
    cb = generate_crystal(g2, delta)
    print(f"G2 crystal of the 7-dimensional fundamental: {len(cb.paths)} paths")
    print("endpoints:", [tuple(map(str, e)) for e in cb.endpoints()])
    print()
    print(crystal_to_dot(cb))
    print()

    a2 = build_root_system("A", 2)
    d = weight((1, 0))
    print("A2, delta = omega_1: counting oracles up to level 4")
    conv = {wzero(2): 1}
    comps = {wzero(2): 1}
    ms = weight_multiplicities(a2, d).entries
    for n in range(1, 5):
        conv = convolve_multisets(conv, ms)
        free = build_growth_graph(a2, "free", d, n).levels[n]
        assert free == conv
        nxt = {}
        for lam, m in comps.items():
            for nu, k in tensor_decompose(a2, lam, d).items():
                nxt[nu] = nxt.get(nu, 0) + m * k
        comps = nxt
        cham = build_growth_graph(a2, "chamber", d, n).levels[n]
        assert cham == comps
        print(f"  level {n}: {len(free)} free vertices, {len(cham)} chamber "
              f"vertices, both match their oracles")
    print("free level-2 counts:", {tuple(map(str, k)): v for k, v in
                                   build_growth_graph(a2, 'free', d, 2).levels[2].items()})


if __name__ == "__main__":
    main()

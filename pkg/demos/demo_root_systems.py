"""Root systems and Weyl groups at desk scale.

Builds the exact root data for a few simple types, shows Cartan matrices,
positive roots, the longest element, and dominant representatives with their
minimal coset elements.
"""

from fractions import Fraction

from weylwalks import build_root_system, dominant_representative, weight


def show(cartan):
    print(f"== {cartan.family}{cartan.rank} ==")
    print("Cartan matrix:", [list(r) for r in cartan.cartan])
    print(f"|R+| = {len(cartan.positive_roots)}, |W| = {cartan.weyl_order}")
    print("positive roots (omega-coordinates):")
    for beta in cartan.positive_roots:
        print("   ", tuple(str(c) for c in beta),
              " squared length", cartan.pairing(beta, beta))
    print("rho =", tuple(str(c) for c in cartan.rho))
    print("reduced word for w0:", [i + 1 for i in cartan.w0_word])
    print()


def main():
    for tok in [("A", 2), ("B", 2), ("G", 2)]:
        show(build_root_system(*tok))

    a2 = build_root_system("A", 2)
    print("dominant representatives in A2:")
    for x in [(2, 1), (-1, 2), (Fraction(-1, 2), Fraction(-1, 3))]:
        y, w = dominant_representative(a2, weight(x))
        print(f"  x = {tuple(map(str, weight(x)))}  ->  y = "
              f"{tuple(map(str, y))}, w word = {[i + 1 for i in w.word]}")


if __name__ == "__main__":
    main()

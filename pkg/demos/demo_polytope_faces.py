"""Dominant faces of the weight polytope and exact point location.

For A2 with delta = omega_1 the admissible subsets are exactly the empty set,
{alpha_1} and {alpha_1, alpha_2}; the face lattice mirrors them, and locate()
reports the smallest dominant face holding any point of K(delta).
"""

from fractions import Fraction

from weylwalks import (
    NotInPolytope,
    admissible_subsets,
    build_root_system,
    dominant_faces,
    in_unit_box_delta,
    locate,
    weight,
)


def main():
    a2 = build_root_system("A", 2)
    delta = weight((1, 0))

    print("delta-admissible subsets of A2, delta = omega_1:")
    for adm in admissible_subsets(a2, delta):
        print(f"  {set(i + 1 for i in adm.indices) or '{}'}  depths "
              f"{ {i + 1: d for i, d in adm.depths.items()} }")

    print("\ndominant faces:")
    for f in dominant_faces(a2, delta):
        print(f"  S' = {set(i + 1 for i in f.admissible.indices) or '{}'}: "
              f"dim {f.dim()}, {len(f.vertices)} vertices, "
              f"{len(f.face_weights)} face weights")

    print("\npoint location:")
    for m in [delta, (0, 0), (Fraction(1, 2), 0), (Fraction(1, 4), Fraction(1, 8))]:
        res = locate(a2, delta, m)
        print(f"  m = {tuple(map(str, weight(m)))}: dominant rep "
              f"{tuple(map(str, res.y))}, face "
              f"{set(i + 1 for i in res.face.indices) or '{}'}")
    try:
        locate(a2, delta, (2, 0))
    except NotInPolytope as exc:
        print("  m = (2, 0):", type(exc).__name__)

    print("\nrestricted parameter box [0,1]^2_delta:")
    for t in [(1.0, 1.0), (0.0, 0.5), (0.0, 0.0), (0.3, 0.9)]:
        print(f"  t = {t}: {'in' if in_unit_box_delta(a2, delta, t) else 'out'}")


if __name__ == "__main__":
    main()

"""Extremal central measures and the drift homeomorphism.

Inverts the drift map on a grid of targets, verifies harmonicity of the
resulting measures, and classifies c-harmonic measures: none below c = 1, the
uniform-conditioned walk exactly at c = 1, a level curve above.
"""

import numpy as np

from weylwalks import (
    build_root_system,
    c_harmonic_level,
    central_measure,
    harmonic_function_check,
    harmonicity_residual,
    invert_drift,
    s_hat_t,
    weight,
    weyl_dim,
)


def main():
    a2 = build_root_system("A", 2)
    delta = weight((1, 0))

    print("drift inversion on A2, delta = omega_1:")
    for m in [(0, 0), (1, 0), (0.3, 0.2), (0.1, 0.3)]:
        pt = invert_drift(a2, delta, m)
        err = max(abs(a - float(b)) for a, b in zip(pt.drift, weight(m)))
        print(f"  m = {m}: t = {tuple(round(x, 6) for x in pt.t)}, "
              f"w = {[i + 1 for i in pt.w.word]}, round trip {err:.2e}")

    print("\nharmonicity of the induced measures (levels <= 4):")
    for m in [(0, 0), (0.3, 0.2)]:
        for kind in ("free", "chamber"):
            meas = central_measure(a2, delta, kind, m)
            print(f"  kind {kind:7s} m = {m}: residual "
                  f"{harmonicity_residual(meas, 4):.2e}")

    print("\nchamber kernel out of lambda = omega_1 at m = (0.3, 0.2):")
    meas = central_measure(a2, delta, "chamber", (0.3, 0.2))
    for mu, q in sorted(meas.kernel_row(delta).items()):
        print(f"  -> {tuple(map(str, mu))}: {q:.6f}")

    z = weyl_dim(a2, delta)
    print(f"\nc-harmonic classification (Z = {z}):")
    print("  c = 0.9:", c_harmonic_level(a2, delta, 0.9).kind)
    print("  c = 1.0:", c_harmonic_level(a2, delta, 1.0).kind)
    level = c_harmonic_level(a2, delta, 1.5)
    pts = level.sample_points(3, seed=4)
    print("  c = 1.5:", level.kind)
    for pt in pts:
        print(f"      t = {tuple(round(x, 6) for x in pt.t)}, "
              f"s_hat = {s_hat_t(a2, delta, pt.t):.6f} (target {1.5 * z})")

    print("\nc-harmonicity residual of h = s_.(t) at three parameters:")
    for t in [(1.0, 1.0), (0.5, 0.8), (0.9, 0.4)]:
        print(f"  t = {t}: {harmonic_function_check(a2, delta, t):.2e}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Why the two-photon fringe cannot be mimicked by classical fields.

For unpolarized inputs on a 50:50 splitter the quantum coincidence rate is
[1 - cos(phi) cos^2(d)]/8 with d the analyzer difference: at phi = 0 and
parallel analyzers it is exactly zero.  A classical-field model of the same
setup gives a relative rate 3 + 2(1 - cos(phi)) cos^2(d), which never drops
below 3: its fringes ride on an irreducible background.  The vanishing
minimum is the quantum signature.
"""

import math

from twophoton import p_classical, p_unpolarized_5050


def visibility(peak: float, trough: float) -> float:
    return (peak - trough) / (peak + trough)


def main() -> None:
    # ------------------------------------------------------------------
    # Side-by-side fringe scan at parallel analyzers
    # ------------------------------------------------------------------
    print("fringe scan at parallel analyzers (unpolarized input)")
    print(f"{'phi/deg':>8} {'quantum':>10} {'classical':>10}")
    for deg in range(0, 361, 45):
        phi = math.radians(deg)
        q = p_unpolarized_5050(0.0, 0.0, phi)
        c = p_classical(0.0, 0.0, phi)
        print(f"{deg:8d} {q:10.6f} {c:10.4f}")
    print()

    # ------------------------------------------------------------------
    # Visibility comparison
    # ------------------------------------------------------------------
    q_peak = p_unpolarized_5050(0.0, 0.0, math.pi)
    q_trough = p_unpolarized_5050(0.0, 0.0, 0.0)
    c_peak = p_classical(0.0, 0.0, math.pi)
    c_trough = p_classical(0.0, 0.0, 0.0)
    print(f"quantum fringe:   min {q_trough:.6f}, max {q_peak:.6f}, "
          f"visibility {visibility(q_peak, q_trough):.3f}")
    print(f"classical fringe: min {c_trough:.4f}, max {c_peak:.4f}, "
          f"visibility {visibility(c_peak, c_trough):.3f}")
    print()
    print("the quantum trough reaches 0 (visibility 1); the classical rate")
    print("is pinned at or above 3, capping its visibility at 0.4.")


if __name__ == "__main__":
    main()

"""Every directional derivative of g2 exists, yet g2 is not differentiable at 0.

Along the ray at angle phi the derivative is cos(phi)^2 sin(phi), which is
not linear in the direction, so no tangent plane can exist. The probes see
this as a residual ratio that refuses to shrink.
"""

from __future__ import annotations

import math

import numpy as np

from diffprobe.config import ProbeConfig
from diffprobe.criteria import directional_derivative, probe_cauchy_determinant, probe_cauchy_like, probe_geo
from diffprobe.funcorpus import get_field
from diffprobe.numcore import make_directions


def main() -> None:
    cfg = ProbeConfig()
    g2 = get_field("g2")

    print("angle    D_u g2(0)    cos^2 sin")
    for phi in np.linspace(0, math.pi, 7):
        d = directional_derivative(g2, (math.cos(phi), math.sin(phi)), cfg).value
        print(f"{phi:5.3f}  {d:+.6f}    {math.cos(phi) ** 2 * math.sin(phi):+.6f}")

    v = probe_cauchy_like(g2, dirs=make_directions(2, 0, cfg.seed, diagonals=True), cfg=cfg)
    worst = max(v.evidence, key=lambda e: e.final_ratio)
    print(f"\npartial-sum residual: {v.verdict.value}, worst direction {worst.samples.context}")
    for rho, ratio in zip(worst.samples.rhos[-4:], worst.estimate.ratio_tail[-4:]):
        print(f"  rho={rho:.2e}  residual/rho={ratio:.5f}")

    for probe in (probe_cauchy_determinant, probe_geo):
        r = probe(g2, cfg=cfg)
        print(f"{r.criterion}: {r.verdict.value}")


if __name__ == "__main__":
    main()

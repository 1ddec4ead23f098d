"""A function with wildly oscillating partial derivatives that is still differentiable.

h(x) = |x|^2 sin(1/|x|) has residual O(rho^2): the fitted slope is near 2
and the tangent plane through the origin is flat.
"""

from __future__ import annotations

from diffprobe.config import ProbeConfig
from diffprobe.criteria import probe_cauchy_like, probe_geo
from diffprobe.funcorpus import get_field


def main() -> None:
    cfg = ProbeConfig()
    for name in ("h_osc2", "h_osc3"):
        f = get_field(name)
        v = probe_cauchy_like(f, cfg=cfg)
        geo = probe_geo(f, cfg=cfg)
        est = v.aggregate.estimate
        print(f"{name}: {v.verdict.value}, residual slope {est.slope:.3f} (fit R^2 {est.fit_quality:.3f})")
        print(f"  fitted tangent plane |A| = {geo.detail.fitted_A.norm():.2e}, geo verdict {geo.verdict.value}")


if __name__ == "__main__":
    main()

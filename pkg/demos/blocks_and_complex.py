"""Block-structured maps and the Cauchy-Riemann check.

A cross term ||u|| ||v|| is second order and leaves the blockwise linear
part intact; sqrt(||u|| ||v||) is first order and breaks it. For complex
functions, d/dzbar separates z^2 from conj(z).
"""

from __future__ import annotations

import numpy as np

from diffprobe.blockgen import cr_check, probe_block_cauchy_like
from diffprobe.config import ProbeConfig
from diffprobe.funcorpus import complex_corpus_list, get_block_field


def main() -> None:
    cfg = ProbeConfig()
    for name in ("block_crossnorm", "block_crosssqrt"):
        v = probe_block_cauchy_like(get_block_field(name), cfg=cfg)
        est = v.aggregate.estimate
        print(f"{name}: {v.verdict.value}, slope {est.slope:.3f}, last ratio {est.ratio_tail[-1]:.3f}")
        for fit in v.detail:
            body = np.array2string(fit.map.matrix, precision=6, suppress_small=True, prefix="    ")
            print(f"  block {fit.map.block_index} map:\n    {body}")

    for c in complex_corpus_list():
        v = cr_check(c, cfg)
        print(f"{c.name}: {v.verdict.value}, |d/dzbar| = {abs(v.detail.dzbar[0]):.2e}")


if __name__ == "__main__":
    main()

"""The relaxed sufficient conditions depend on which axis comes first.

For relaxed_demo, f_y is identically 1, so putting y first satisfies the
chain. f_x oscillates without a limit at 0, so putting x first does not,
even though the function is differentiable either way.
"""

from __future__ import annotations

from diffprobe.config import ProbeConfig
from diffprobe.criteria import check_relaxed_conditions
from diffprobe.funcorpus import get_field


def main() -> None:
    cfg = ProbeConfig()
    f = get_field("relaxed_demo")
    for order, label in (((2, 1), "y then x"), ((1, 2), "x then y")):
        v = check_relaxed_conditions(f, order, cfg)
        print(f"{label}: {v.verdict.value}")
        for m in v.detail:
            tail = ", ".join(f"{x:.3g}" for x in m.samples.values[-3:])
            print(f"  d/dx{m.axis} drift over axes {list(m.subspace)}: ... {tail}")


if __name__ == "__main__":
    main()

"""Certificate factor over a grid of k and tau for eta = ceil(log2(k)^2)."""
import math

from robustsub.solvers import asymptotic_factor, partition_layout, theorem1_certificate

for log_k in (10, 15, 20, 30, 40):
    k = 2**log_k
    eta = math.ceil(log_k**2)
    row = []
    for tau in (2, 4, 16, 64):
        layout = partition_layout(tau, eta)
        if not layout.feasible(k):
            row.append("   infeas")
            continue
        cert = theorem1_certificate(k, tau, eta, 1.0, layout.s0_size)
        row.append(f"{cert.factor:9.5f}{'*' if cert.conditions_met else ' '}")
    print(f"k=2^{log_k:<3} eta={eta:<5}" + "".join(row))
print(f"limit {asymptotic_factor(1.0):.5f}; * marks parameters inside the stated conditions")

"""Two-photon kernel circuit: exact simulation, shot noise, and run budget.

Run with ``python3 demos/02_optical_circuit.py``.
"""

import math

import numpy as np

from finitekernels import (
    ShotNoiseConfig,
    build_feature_unitary,
    coincidence_rate_budget,
    feature_plate_settings,
    kernel_circuit,
    kernel_cosine,
    sample_kernel,
)


def main() -> None:
    rng = np.random.default_rng(42)

    print("== plate settings along one coordinate ==")
    for coord in (0.0, math.pi / 8, math.pi / 4):
        mu_t, nu_t, mu_b, nu_b = feature_plate_settings(coord)
        budget = mu_t**2 + nu_t**2 + mu_b**2 + nu_b**2
        print(f"  x={coord:+.4f}  muT {mu_t:+.4f}  nuT {nu_t:+.4f}"
              f"  muB {mu_b:+.4f}  nuB {nu_b:+.4f}  (sum sq {budget:.1f})")
    print()

    print("== circuit output vs closed-form kernel, 2-D points ==")
    worst = 0.0
    for _ in range(5):
        x = rng.uniform(-math.pi / 2, math.pi / 2, 2)
        xp = rng.uniform(-math.pi / 2, math.pi / 2, 2)
        simulated = kernel_circuit(x, xp, power=3)
        closed = kernel_cosine(x, xp, power=3)
        worst = max(worst, abs(simulated - closed))
        print(f"  circuit {simulated:.8f}  closed {closed:.8f}")
    print(f"  worst deviation {worst:.2e}")
    print()

    u = build_feature_unitary(np.array([0.3, -0.7]), power=3)
    defect = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
    print(f"== unitarity defect of a 2-D feature circuit: {defect:.2e} ==")
    print()

    print("== finite coincidence statistics at kappa = 0.5 ==")
    true_kappa = 0.5
    for events in (100, 1_000, 10_000, 100_000):
        config = ShotNoiseConfig(events_per_point=events, fidelity=0.98, seed=5)
        draws = [sample_kernel(true_kappa, config, key=(t,))[0] for t in range(200)]
        sd = float(np.std(draws, ddof=1))
        predicted = math.sqrt(0.25 / events)  # binomial sd at p = 1/2
        print(f"  events {events:>7d}  empirical sd {sd:.5f}  binomial sd {predicted:.5f}")
    print()

    pairs = 40 * 39 // 2
    seconds = coincidence_rate_budget(pairs, rate_cps=250.0, events_needed=2_500)
    print(f"== a 40-point training matrix needs {pairs} pair measurements ==")
    print(f"   at 250 coincidences/s and 2500 events each: {seconds:.0f} s"
          f" ({seconds / 3600:.2f} h)")


if __name__ == "__main__":
    main()

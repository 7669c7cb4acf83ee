"""Violation probability of random count matrices, by sampling model.

Entries are drawn i.i.d. from a distribution over {1..B} and each matrix
is scanned for a violating partition. Power-law entries mix small and
large counts in the same matrix, which is what the violating patterns
need; homogeneous and truncated-Poisson entries concentrate around one
scale and rarely violate. A short sweep here; the CLI writes the full
plot-ready grid (simulate --help).
"""

from entangletext import DistributionSpec, estimate_violation_probability, parameter_sweep


def main():
    n = 4000
    print(f"{n} matrices per point, B = 100")
    for name, spec in [
        ("power-law 0.3", DistributionSpec.zipf(0.3, 100)),
        ("power-law 0.7", DistributionSpec.zipf(0.7, 100)),
        ("power-law 1.2", DistributionSpec.zipf(1.2, 100)),
        ("homogeneous", DistributionSpec.homogeneous(100)),
        ("poisson mean 10", DistributionSpec.poisson(10.0, 100)),
    ]:
        est = estimate_violation_probability(spec, n, seed=7)
        print(f"  {name:<16} p = {est.p_hat:.3f} +- {est.std_err:.3f}")

    print("\nexponent sweep at several support bounds (2000 samples/point):")
    exponents = [0.2, 0.5, 0.8, 1.1, 1.4, 1.7, 2.0]
    curves = parameter_sweep("zipf", exponents, [10, 100], n_samples=2000, seed=42)
    print("  B   " + " ".join(f"{e:>6}" for e in exponents))
    by_bound = {}
    for (exponent, bound), est in zip(curves.grid, curves.estimates):
        by_bound.setdefault(bound, []).append(est.p_hat)
    for bound, ps in by_bound.items():
        print(f"  {bound:<4}" + " ".join(f"{p:>6.3f}" for p in ps))


if __name__ == "__main__":
    main()

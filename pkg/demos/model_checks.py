"""Run every consistency check on the built-in D(S3) data and print a summary."""
import time

from anyonkit.anyon_model import (
    ds3_model,
    verify_fusion_associativity,
    verify_hexagon,
    verify_modular,
    verify_pentagon,
    verify_qdims,
    verify_unitarity,
    verify_verlinde,
)


def main():
    model = ds3_model()
    print(f"D(S3): {len(model.labels)} anyons, {len(model.F)} F-symbols, {len(model.R)} R-symbols")
    print("quantum dimensions:", " ".join(f"{a}={model.qdim[a]}" for a in model.labels))
    for check in (verify_fusion_associativity, verify_qdims, verify_pentagon, verify_hexagon,
                  verify_unitarity, verify_verlinde, verify_modular):
        t = time.perf_counter()
        rep = check(model)
        print(f"{rep.name:>20}: {rep.checked:6d} checked, {len(rep.violations)} violations ({time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    main()

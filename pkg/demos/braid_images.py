"""Four-strand braid representations and the finite groups they generate."""
from anyonkit.braid_engine import PRINTED_NORMALIZATION, PRINTED_SCALAR, printed_generators
from anyonkit.group_closure import IMAGE_GROUPS, image_group_check


def main():
    m, z = "D", "G"
    gens = printed_generators(m, z)
    print(f"sigma_1 on V_{z}^{{{m * 4}}} (dim {gens[0].dim}), diagonal:")
    print("  ", [str(gens[0].rows[i][i]) for i in range(gens[0].dim)])
    print()
    print(f"{'(m,z)':>6} {'norm':>15} {'c':>3} {'order':>6}  checks")
    for key in sorted(IMAGE_GROUPS):
        out = image_group_check(*key)
        checks = ", ".join(k for k, v in out["checks"].items() if v)
        print(f"{key[0] + ',' + key[1]:>6} {PRINTED_NORMALIZATION[key]:>15} {PRINTED_SCALAR[key]:>3} "
              f"{out['report']['order']:>6}  {checks}")


if __name__ == "__main__":
    main()

"""Exact outcome trees of the repeat-until-success protocols, next to sampling."""
from anyonkit.adaptive_sim import protocol_library, run_exact, run_merged, run_sampled
from anyonkit.qutrit_models import encoding_basis, gate_report


def main():
    cz = gate_report("crlz")["entries"][0]
    print(f"braided CrlZ on U x U = ({cz['phase']}) * CZ, leakage {cz['leakage']}")
    lib = protocol_library()
    print(f"{'protocol':>20} {'n':>2} {'exact success':>16} {'closed form':>16}")
    for name, e in lib.items():
        n = e.default_n
        dist = {k: v[0] for k, v in run_merged(e.build(n), e.initial()).items()}
        p = sum(v for k, v in dist.items() if k in e.success)
        closed = e.closed_form(n) if e.closed_form else "-"
        print(f"{name:>20} {n:>2} {str(p):>16} {str(closed):>16}")
    e = lib["gamma_via_R"]
    tree = run_exact(e.build(4), e.initial())
    rep = run_sampled(e.build(4), e.initial(), seed=20240601, trials=20000, tree=tree)
    print(f"gamma_via_R, 4 rounds: exact {float(tree.probability(e.success)):.5f}, "
          f"sampled {rep.frequency(e.success):.5f} over {rep.trials} trials")
    print("U encoding |1>:", dict(zip(encoding_basis("U").basis.names(), map(str, encoding_basis("U")[1].amps))))


if __name__ == "__main__":
    main()

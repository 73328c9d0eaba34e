"""Survey substrata, stratum dimensions and local quiver settings for a few small quivers."""
import argparse

from ncformal.errors import ContractError
from ncformal.quiver import Quiver
from ncformal.strata import enumerate_substrata, is_nonempty, local_quiver, stratum_dimension

QUIVERS = {
    "two loops": Quiver.loops(2),
    "two vertices, no arrows": Quiver(2, ()),
    "A2": Quiver(2, ((1, 2),)),
    "Kronecker": Quiver(2, ((1, 2), (1, 2))),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--m", type=int, default=2)
    args = ap.parse_args()
    for label, Q in QUIVERS.items():
        subs = enumerate_substrata(args.m, args.n, Q)
        print(f"== {label}: {len(subs)} substrata (n={args.n}, m={args.m})")
        for t in subs:
            try:
                s = local_quiver(t, args.n, Q)
                setting = f"counts={[list(r) for r in s.counts]} gamma={list(s.gamma)} dim={s.ambient_dim}"
            except ContractError as exc:
                setting = f"no setting ({exc})"
            print(f"  lambda={t.partition} alphas={t.alphas} dim={stratum_dimension(t, args.n, Q)} "
                  f"nonempty={is_nonempty(t, args.n, Q)} {setting}")


if __name__ == "__main__":
    main()

"""Tabulate the bilinear operators C_{lam,mu}^nu for d = 2 up to a given ord(nu)."""
import argparse

from ncformal.hallbasis import HallBasis
from ncformal.pbw import OperatorTable, enumerate_monomials


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-ord", type=int, default=2)
    args = ap.parse_args()
    B = HallBasis(2, args.max_ord + 2)
    table = OperatorTable(B)
    mons = enumerate_monomials(B, args.max_ord)
    name = lambda m: "{" + ",".join(B.sexpr(i) for i in m.entries) + "}"  # noqa: E731
    for nu in mons:
        for lam in mons:
            for mu in mons:
                if lam.ord + mu.ord > nu.ord:
                    continue
                op = table.get(lam, mu, nu)
                if op.terms:
                    print(f"C[{name(lam)} {name(mu)} -> {name(nu)}] (bound {op.bound}) = {op.describe()}")


if __name__ == "__main__":
    main()

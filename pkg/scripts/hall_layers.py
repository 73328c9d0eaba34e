"""Print Hall basis layer sizes next to the brute-force Lie rank for small alphabets."""
import argparse

from ncformal.hallbasis import HallBasis, lie_rank


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-d", type=int, default=3)
    ap.add_argument("--max-weight", type=int, default=6)
    args = ap.parse_args()
    print(f"{'d':>2} {'k':>2} {'|B_k|':>6} {'rank':>6}")
    for d in range(1, args.max_d + 1):
        K = args.max_weight if d < 3 else min(args.max_weight, 5)
        B = HallBasis(d, K)
        for k in range(1, K + 1):
            size, r = len(B.layer(k)), lie_rank(d, k)
            flag = "" if size == r else "  MISMATCH"
            print(f"{d:>2} {k:>2} {size:>6} {r:>6}{flag}")


if __name__ == "__main__":
    main()

"""Which (move kind, mover end, threading) combinations keep a0=ae and b0=be?

Every combination is applied to a few base strands in exploratory mode and the
endpoint equalities are checked over the medial quandles of order <= 4 plus
Z5 with t = 2. Prints one row per combination.
"""

from medialq.quandle import alexander_quandle, enumerate_quandles
from medialq.tangle import (
    KINDS,
    AppliedMove,
    apply_move,
    check_theorem_5_1,
    legal_mover_end,
    random_lom,
    tangle_t,
    trivial_strand,
)


def main():
    qs = [q for n in range(1, 5) for q in enumerate_quandles(n, "medial")] + [alexander_quandle(5, "3,1")]
    bases = [trivial_strand(), tangle_t(), random_lom(4, 7)]
    print(f"{'kind':<6} {'end':<7} {'legal':<6} violating cases")
    for kind in KINDS:
        for end in ("finish", "start"):
            bad = 0
            for S in bases:
                for p in range(len(S.parallel_pairs)):
                    T = apply_move(S, AppliedMove(kind, end, p), exploratory=True)
                    bad += sum(not check_theorem_5_1(T, Q).ok for Q in qs)
            legal = end == legal_mover_end(kind)
            print(f"{kind:<6} {end:<7} {str(legal):<6} {bad}")


if __name__ == "__main__":
    main()

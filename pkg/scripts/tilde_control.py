"""Negative control: medial quandles on which ~ is not an equivalence.

For each such quandle of order <= 5, compare the colorings of A_1 and L2H.
"""

from medialq.coloring import enhanced_polynomial
from medialq.families import gen_allen_swenberg, gen_l2h
from medialq.quandle import enumerate_quandles, has_tilde_equivalence


def main():
    A, H = gen_allen_swenberg(1), gen_l2h()
    for n in range(1, 6):
        for Q in enumerate_quandles(n, "medial"):
            if has_tilde_equivalence(Q):
                continue
            pa, ph = enhanced_polynomial(A, Q), enhanced_polynomial(H, Q)
            tag = "same" if pa == ph else "DIFFERENT"
            print(f"order {n} {Q.op}: A1 {pa} | L2H {ph}  {tag}")


if __name__ == "__main__":
    main()

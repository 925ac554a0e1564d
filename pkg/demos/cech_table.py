"""Graded cohomology ranks of the difference complex, by twist.

The map sends a pair (differential operator, bounded-order microlocal
element) to its difference inside the full microlocal ring.  The kernel is
free of rank twist+1 when twist >= -1; for twist <= -2 the kernel dies and a
cokernel of rank -1-twist opens up.

Run with:  python demos/cech_table.py
"""

from cmkit import cech_graded_ranks

print(f"{'twist':>6} {'h0':>4} {'h1':>4} {'certified':>10}")
for twist in range(-6, 6):
    ranks = cech_graded_ranks(twist, abs(twist) + 2)
    print(f"{twist:>6} {ranks.h0_rank:>4} {ranks.h1_rank:>4} {str(ranks.certified):>10}")

"""Normal-ordered arithmetic with d x = x d + 1, and its inverse-power closure.

Run with:  python demos/weyl_arithmetic.py
"""

from cmkit import d_inv, d_pow, embed, micro_mul, order, weyl_mul, x_pow

d, x = d_pow(1), x_pow(1)

print("d·x          =", weyl_mul(d, x))
print("[d, x]       =", weyl_mul(d, x) - weyl_mul(x, d))
print("d^2·x^2      =", weyl_mul(d_pow(2), x_pow(2)))
print("d^3·x^2      =", weyl_mul(d_pow(3), x_pow(2)))
print("order(x d+1) =", order(weyl_mul(d, x)))

# Adjoining inverse powers of d: the embedding is exact, and so are finite
# Laurent products.
print("\nd·d^-1       =", micro_mul(embed(d), d_inv(1)))
print("d^-1·x       =", micro_mul(d_inv(1), embed(x)))
print("[d^-1, x]    =", micro_mul(d_inv(1), embed(x)) - micro_mul(embed(x), d_inv(1)))
print("d^-1·x^2     =", micro_mul(d_inv(1), embed(x_pow(2))))

# Truncations carry a trust floor; products stay honest about what is known.
u = embed(weyl_mul(d, x)).truncate(-2)
print("\ntruncated u  =", u)
prod = micro_mul(u, d_inv(3))
print("u·d^-3       =", prod, "   (floor", prod.floor, ")")

"""Commuting stable pairs and the ideals of their point configurations.

With j = 0 and commuting (X, Y) carrying a cyclic framing vector, the
evaluation map f |-> f(X, Y) i cuts out a length-n quotient of the
polynomial ring in two variables.

Run with:  python demos/point_ideals.py
"""

from cmkit import CMQuadruple, Matrix, hilbert_ideal, poly_str

examples = {
    "one fat point at the origin": CMQuadruple(
        Matrix.from_rows([[0, 1], [0, 0]]),
        Matrix.zeros(2, 2),
        Matrix.column([0, 1]),
        Matrix.zeros(1, 2),
    ),
    "two reduced points (0,2) and (1,3)": CMQuadruple(
        Matrix.from_rows([[0, 0], [0, 1]]),
        Matrix.from_rows([[2, 0], [0, 3]]),
        Matrix.column([1, 1]),
        Matrix.zeros(1, 2),
    ),
    "three points on a graph y = x^2": CMQuadruple(
        Matrix.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 2]]),
        Matrix.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 4]]),
        Matrix.column([1, 1, 1]),
        Matrix.zeros(1, 3),
    ),
}

for name, q in examples.items():
    ideal = hilbert_ideal(q)
    print(f"{name}  (n = {q.n})")
    print(f"  quotient dimension at degree {ideal.degree_bound}: {ideal.quotient_dim}")
    for poly in ideal.basis:
        print("  ideal generator:", poly_str(poly))
    print()

"""
Riordan arrays as matrices
==========================
"""

from riordan.fps import Fps, recip
from riordan.group import RiordanPair, commutator, diagonal_pattern, inverse, multiply, to_matrix

N = 16
t = Fps.var(N)

pascal = RiordanPair(recip(1 - t), t / (1 - t))
print(to_matrix(pascal, 6).to_text())

# the product rule (g, f)(u, v) = (g u(f), v(f)) matches matrix multiplication
sq = multiply(pascal, pascal)
print(to_matrix(sq, 6).to_text())
print(to_matrix(sq, 8) == to_matrix(pascal, 8) @ to_matrix(pascal, 8))

# the inverse has alternating signs
print(to_matrix(inverse(pascal), 6).to_text())

# commutators always have ones on the diagonal
catalan = RiordanPair(recip(1 - t), t * recip(1 - t) ** 2)
print(diagonal_pattern(commutator(pascal, catalan)))
print(to_matrix(pascal, 4).to_csv(), end="")
print(to_matrix(pascal, 4).to_json(), end="")

"""
Involutions, their conjugators, and products of two involutions
===============================================================
"""

import random

from riordan.fps import Fps, recip
from riordan.group import RiordanPair, diagonal_pattern, involution_m, multiply
from riordan.involutions import (
    classify_involution,
    is_pseudo_involution,
    riordan_involution_conjugator,
    two_involution_product_witness,
)
from riordan.sampling import random_involution

N = 16
t = Fps.var(N)
M = involution_m(1, N)

# (1/(1-t), -t/(1-t)) squares to the identity
J = RiordanPair(recip(1 - t), -t / (1 - t))
c = classify_involution(J)
print(c.kind, c.sign)

# conjugator U = (1 + eps g, (t - f)/2) takes J to M
w = riordan_involution_conjugator(J)
print(w.conjugator)
print(w.verify())

# a random involution conjugate to -M
rng = random.Random(0)
I1, _ = random_involution(rng, -1, N)
I2, _ = random_involution(rng, 1, N)
print(classify_involution(I1).kind)

# the product of two involutions is a signed commutator
pw = two_involution_product_witness(I1, I2)
print(pw.sign, pw.verify())
print(diagonal_pattern(multiply(I1, I2)))

# Pascal is a pseudo-involution: Pascal * M is an involution
pascal = RiordanPair(recip(1 - t), t / (1 - t))
print(is_pseudo_involution(pascal))

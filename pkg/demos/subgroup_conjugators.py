"""
Conjugating involutions inside classical subgroups
==================================================
"""

from riordan.fps import Fps, compose, revert
from riordan.subgroups import (
    Bell,
    Derivative,
    HittingTime,
    Reciprocal,
    Stabilizer,
    stabilizer_parity_involutions,
    subgroup_conjugator,
)

N = 12
T = Fps.var(N + 1)  # seeds one degree higher for derivative-type subgroups

# an involutive seed h = s^{-1}(-s)
s = T + T**2 - T**3
h = compose(revert(s), -s)

# hitting-time subgroup: a conjugator exists inside the subgroup
P = HittingTime().construct(h)
res = subgroup_conjugator(HittingTime(), P)
print(res.status, res.witness.verify())

# derivative subgroup: its involutions start the diagonal with -1, so M is out of reach
P = Derivative().construct(h)
bad = subgroup_conjugator(Derivative(), P, target_sign=1)
print(bad.status, bad.degree)
print(bad.certificate)
print(bad.outside_witness.verify())

# ... while -M is reachable from inside
print(subgroup_conjugator(Derivative(), P).status)

# reciprocal subgroup: even r reaches M
for r in (2, 3):
    tag = Reciprocal(r)
    print(r, subgroup_conjugator(tag, tag.construct(h), target_sign=1).status)

# Bell subgroup, with the g-seed taken from t*y = h
y = h.shift_down(1).truncate(N)
print(subgroup_conjugator(Bell(), Bell().construct(y)).status)

# stabilizers: M lies in Stab(phi) exactly when phi is even
t = Fps.var(N)
print(stabilizer_parity_involutions(1 + t**2))
stab = Stabilizer(1 + t**2, "1+t^2")
print(subgroup_conjugator(stab, stab.construct(h.truncate(N))).status)

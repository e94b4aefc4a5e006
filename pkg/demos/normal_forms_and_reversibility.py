"""
Normal forms -t/(1 + lam t^p)^(1/p) and reversibility over the rationals
========================================================================
"""

from riordan.fps import Fps, compose, revert
from riordan.group import RiordanPair, identity
from riordan.involutions import is_series_involution
from riordan.reversibility import (
    conjugate_to_normal_form,
    is_series_reversible,
    normal_form_series,
    strong_decompose,
)

N = 16
t = Fps.var(N)

# odd p gives involutions
for p in (1, 3, 5):
    print(p, is_series_involution(normal_form_series(p, 2, N).series))

# even p does not, and a reverser would need a multiplier c with c^p = -1
f = normal_form_series(2, 1, N).series
print(f.to_string())
report = is_series_reversible(f)
print(report.verdict, report.degree)
print(report.details[-1])

# multiplier +1 series are reversible here, e.g. t/(1-t) via u = -t
r = is_series_reversible(t / (1 - t))
print(r.witness.to_string())

# hide a normal form behind a conjugation and recover it
s = t + 2 * t**2 - t**3
g = compose(revert(s), compose(normal_form_series(4, 3, N).series, s))
d = conjugate_to_normal_form(g)
print(d.p, d.lam)
print(compose(g, d.conjugator) == compose(d.conjugator, d.series))

# Pascal = S T with both factors involutions
pascal = RiordanPair(1 / (1 - t), t / (1 - t))
S, T = strong_decompose(pascal, identity(N))
print(S)
print(T)

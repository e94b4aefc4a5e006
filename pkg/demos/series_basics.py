"""
Exact truncated power series
============================

Every coefficient is a rational; every equality means "agree up to t^N".
"""

from riordan.fps import Fps, compose, derivative, nth_root, recip, revert

N = 10
t = Fps.var(N)

# geometric series and its reciprocal
geo = recip(1 - t)
print(geo.to_string())
print((geo * (1 - t)).to_string())

# compositional inverse: t/(1-t) undoes t/(1+t)
f = t / (1 - t)
print(revert(f) == t / (1 + t))
print(compose(f, revert(f)) == t)

# square roots of unit series are exact
r = nth_root(1 + t, 2)
print(r.to_string())
print(r * r == 1 + t)

# derivative drops one reliable degree: ask for order N+1 when degree N matters
T = Fps.var(N + 1)
print(derivative(-T / (1 + T)).truncate(N).to_string())

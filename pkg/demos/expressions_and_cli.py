"""
Typing series as expressions, and the command line
==================================================
"""

import subprocess
import sys

from riordan.exprparse import ExprError, parse, parse_series, pretty

# Catalan numbers from the closed form
print(parse_series("(1 - sqrt(1 - 4*t))/(2*t)", 10).to_json())

# the syntax tree keeps source spans; printing re-parses to the same tree
e = parse("-t/root(2, 1+t^2)")
print(e)
print(pretty(e))

# errors point at the offending text
for bad in ("1 @ t", "1/(1-t", "sqrt(2+t)", "t^-1"):
    try:
        parse_series(bad, 8)
    except ExprError as exc:
        print(type(exc).__name__, exc.offset, exc.message)

# the same through the CLI (exit code 2 means the mathematics says no)
cmd = [sys.executable, "-m", "riordan.cli"]
out = subprocess.run(cmd + ["eval", "--g", "1/(1-t)", "--f", "t/(1-t)", "--rows", "5", "--format", "text"],
                     capture_output=True, text=True)
print(out.stdout)
out = subprocess.run(cmd + ["reversible", "--f", "-t/root(2,1+t^2)", "--format", "text"],
                     capture_output=True, text=True)
print(out.returncode)
print(out.stdout)

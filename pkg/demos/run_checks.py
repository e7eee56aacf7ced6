"""Run the fast identity suites and print one line each."""

from decotrees import suites

for name in ("displays", "chu-vandermonde", "commute", "theta"):
    print(suites.run_suite(name).line())

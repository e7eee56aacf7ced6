"""Grafting versus deformed grafting, and Theta carrying one to the other."""

from decotrees import grafting as gr
from decotrees.grammar import format_lincomb, parse_one
from decotrees.trees import Edge

sigma = parse_one("•1")
tau = parse_one("X^(2)[(t,(0))->•1]")
a = Edge("t", (2,))

plain = gr.graft(sigma, a, tau)
deformed = gr.deformed_graft(sigma, a, tau)
print("graft         :", format_lincomb(plain))
print("deformed graft:", format_lincomb(deformed))
print("lower terms   :", format_lincomb(deformed - plain))

# Theta is a morphism from (graft) to (deformed graft)
lhs = gr.theta(gr.graft(sigma, a, tau))
rhs = gr.deformed_graft(gr.theta(sigma), a, gr.theta(tau))
print("Theta morphism holds:", lhs == rhs)

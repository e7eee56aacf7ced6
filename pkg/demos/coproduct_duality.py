"""Delta_2 next to the product it is dual to."""

from decotrees import coproducts as co
from decotrees import plugging as pg
from decotrees.grammar import format_lincomb, parse_one

t = parse_one("X^(1)[(t,(0))->X^(1)]")
print("Delta_2 t (budget 1):")
print("   ", format_lincomb(co.delta2(t, 1)))

left, right = parse_one("X^(1)"), parse_one("X^(0)[(t,(0))->X^(1)]")
print("star_2:", format_lincomb(pg.star_plug(left, right)))
lhs, rhs = co.duality_sides("d2", left, right, t)
print(f"<left star_2 right, t> = {lhs}   <left ⊗ right, Delta_2 t> = {rhs}")

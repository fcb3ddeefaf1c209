"""Contraction factors, the conditional checks and the comparison profile."""
import math

from ordfix import SelfMap, chain_metric, line_space
from ordfix.contraction import (
    check_conditional_F_contractive,
    check_property_P,
    check_weak_conditional_G_contractive,
    comparison_profile,
    global_contraction_factor,
    is_monotone,
    minimal_alpha,
    ordered_contraction_factor,
    suzuki_F,
    suzuki_G,
)

# Points 0, 1, 3 on a line, totally ordered; T pulls everything toward 0.
sp = line_space([0, 1, 3], [(0, 1), (1, 2)])
T = SelfMap([0, 0, 1])

rep = ordered_contraction_factor(sp, T)
print("factor on ordered pairs:", rep.alpha_star, "contractive:", rep.verdict)
print("factor under the chain metric:", global_contraction_factor(chain_metric(sp), T).alpha_star)
print("monotone:", is_monotone(sp, T).value)

# A failing check carries a witness pair with both sides of the inequality.
print("witness at alpha=0.4:", ordered_contraction_factor(sp, T, alpha=0.4).witness.to_dict())
print("smallest grid alpha:", minimal_alpha(sp, T, "ordered_d"))

# The threshold functions are continuous where their pieces meet.
for t in ((math.sqrt(5) - 1) / 2, 2 ** -0.5, 1.0):
    print(f"F({t:.6f}) = {suzuki_F(t):.12f}")
print("G(1) =", suzuki_G(1.0))

print("F-conditional at 1/2:", check_conditional_F_contractive(sp, T, 0.5).verdict)

# Two comparable fixed points can never pass the weak G check.
chain = line_space([0, 1], [(0, 1)])
bad = check_weak_conditional_G_contractive(chain, SelfMap.identity(2), 0.5)
print("identity on a chain:", bad.verdict, bad.witness.to_dict())

# The comparison profile is an exact step function; iterating it drives t to 0.
f = comparison_profile(sp, T)
print("profile breakpoints:", f.breakpoints, "values:", f.values)
print("property P:", check_property_P(f, [1.0, 2.5, 3.0]).to_dict())

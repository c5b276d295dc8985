"""Critical values of L(Delta, s): periods, rational ratios and the Petersson norm."""

from fractions import Fraction

from modforms import numeric as nm
from modforms.forms import delta

ctx = nm.EvalContext(38)
mp = ctx.mp
D = delta(80)

lam = {s: nm.lambda_level1(D, 12, s, ctx) for s in range(1, 12)}
for s in range(1, 12):
    base = lam[3] if s % 2 else lam[2]
    r = Fraction(mp.nstr(lam[s] / base, 20)).limit_denominator(10 ** 4)
    print(f"Lambda({s:2d}) = {ctx.fmt(lam[s], 20):>24}  = {str(r):>9} * omega_{'-' if s % 2 else '+'}")

print("functional-equation residual at s=4:", ctx.fmt(nm.lambda_fe_residual(D, 12, 4, ctx), 3))
print("L(Delta, 6) =", ctx.fmt(nm.central_value(D, 12, ctx), 25))

per = nm.petersson_delta(ctx)
quad = nm.petersson_delta_quadrature()
print("<Delta, Delta> from periods:   ", ctx.fmt(per, 15))
print("<Delta, Delta> by quadrature:  ", f"{quad:.15e}")

P = nm.period_polynomial(D, 12, ctx)
print("Re P(X) / omega_+:", [str(Fraction(mp.nstr(c.real / lam[2], 20)).limit_denominator(10 ** 4)) for c in P])

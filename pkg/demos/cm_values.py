"""j at CM points, and why e^(pi sqrt 163) is so nearly an integer."""

from modforms import numeric as nm

ctx = nm.EvalContext(60)
for point in ("i", "2i", "i*sqrt(2)", "(1+i*sqrt(3))/2", "(1+i*sqrt(7))/2", "(1+i*sqrt(163))/2"):
    v = ctx.mp.chop(nm.cm_j(point, ctx), ctx.mp.mpf(10) ** -30)
    print(f"j({point}) = {ctx.fmt(v.real, 40)}")

rep = nm.almost_integer_report(ctx)
print("e^(pi sqrt 163) =", ctx.fmt(ctx.mp.exp(ctx.mp.pi * ctx.mp.sqrt(163)), 45))
print("distance to 640320^3 + 744:", ctx.fmt(rep["epsilon"], 10))
print("ratio to the predicted 65628 e^(-(5/3) pi sqrt 163):", ctx.fmt(rep["ratio"], 12))

"""Ramanujan's tau computed six ways, then a few of its arithmetic properties."""

import time

from modforms import tau

B = 3000
tables = {}
for method in tau.METHODS:
    t0 = time.perf_counter()
    tables[method] = tau.tau_table(B, method)
    print(f"{method:<11} {time.perf_counter() - t0:6.3f}s")

ref = tables["series"].values
print("all methods agree:", all(t.values == ref for t in tables.values()))
print("tau(1..10):", tables["series"].as_list()[:10])

# single values straight from class numbers, no table needed
for p in (101, 997, 10007):
    print(f"tau({p}) = {tau.tau_trace_formula(p)}")

print("congruences mod 5 and 7 hold:", tau.tau_congruence_check(B, tables["series"]))
rep = tau.deligne_bound_check(B, tables["series"])
print(f"|tau(p)| < 2 p^(11/2) for all {rep['primes']} primes: {rep['holds']}, "
      f"largest ratio {rep['max_ratio']:.4f} at p = {rep['max_ratio_prime']}")
print("first zero of tau up to", B, ":", tau.lehmer_scan(B, tables["series"]))

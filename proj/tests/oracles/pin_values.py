#!/usr/bin/env python3
"""Straight-line computation of expected values frozen into the C++ tests.

Run: python3 tests/oracles/pin_values.py
Every number printed here is copied verbatim into the unit tests; keep this
script independent of the library (no shared code, plain arithmetic only).
"""
import math

print("== theorem schedule, linear-setting constants, T=1e4, d=2 ==")
G, D, L, M, eps, r = math.sqrt(2), 2.0, 20.0, 2.0, 1.25, 0.1
T, d = 10**4, 2
kappa = L / M
eta = D / (2.0 * math.sqrt((d / 4.0 + kappa - 1.0) * d * G * G * T))
alpha = min(0.5, (d * G / D) * (1.0 - 1.0 / kappa) * eta)
d1 = 1.0 / ((0.5 * math.sqrt(d) * L * D + G) * T)
d2 = 2.0 * (kappa - 1.0) * alpha * eps / ((kappa + 1.0) * math.sqrt(d) * L * D)
d3 = alpha * r
delta = min(d1, d2, d3)
print(f"eta   = {eta!r}")
print(f"alpha = {alpha!r}")
print(f"delta branches = {d1!r} {d2!r} {d3!r}")
print(f"delta = {delta!r}")

print("== experiment schedule, linear-setting constants, T=1e4, d=2 ==")
eta_e = D / (d * G * math.sqrt(T))
alpha_e = d * G * M * (1.0 - 1.0 / kappa) * eta_e / D
de1 = 1.0 / T
de2 = (kappa - 1.0) * alpha_e * eps / ((kappa + 1.0) * math.sqrt(d) * L * D)
de3 = alpha_e * r
print(f"eta   = {eta_e!r}")
print(f"alpha = {alpha_e!r}")
print(f"delta branches = {de1!r} {de2!r} {de3!r}")
print(f"delta = {min(de1, de2, de3)!r}")

print("== single MP-ROGD step: x_t = xt~ = 0, f(x)=x1, g(x)=2|x|^2-2 ==")
# told constants: L=4, M=2, D=2, X = unit ball; delta=0.01, eta=0.1, alpha=0.01
L, M, D = 4.0, 2.0, 2.0
delta, eta, alpha = 0.01, 0.1, 0.01
g = lambda x: 2.0 * (x[0] ** 2 + x[1] ** 2) - 2.0
f = lambda x: x[0]
xt = (0.0, 0.0)
probes = [xt, (delta, 0.0), (0.0, delta)]
fv = [f(p) for p in probes]
gv = [g(p) for p in probes]
gf = ((fv[1] - fv[0]) / delta, (fv[2] - fv[0]) / delta)
gg = ((gv[1] - gv[0]) / delta, (gv[2] - gv[0]) / delta)
print(f"grad_f_est = {gf!r}")
print(f"grad_g_est = {gg!r}")
s = 0.5 * math.sqrt(2) * L * delta * D
print(f"slack = {s!r}")
co = (xt[0] - gg[0] / M, xt[1] - gg[1] / M)
ro2 = (gg[0] ** 2 + gg[1] ** 2) / M**2 + (2.0 / M) * (s - gv[0])
print(f"opt center = {co!r}  opt radius^2 = {ro2!r}")
cp = (xt[0] - gg[0] / L, xt[1] - gg[1] / L)
rp2 = (gg[0] ** 2 + gg[1] ** 2) / L**2 - (2.0 / L) * (gv[0] + s)
print(f"pess center = {cp!r} pess radius^2 = {rp2!r}")
# gradient step lands inside both the optimistic ball and X -> projection is identity
cand = (-eta * gf[0], -eta * gf[1])
dist_o = math.hypot(cand[0] - co[0], cand[1] - co[1])
assert dist_o <= math.sqrt(ro2) and math.hypot(*cand) <= 1.0
print(f"x_tilde_next = {cand!r}")
# gamma: larger root of a mu^2 + b mu + q <= 0 per ball, clamped to [0,1]
def gamma_ball(x, y, c, r2):
    a = (y[0] - x[0]) ** 2 + (y[1] - x[1]) ** 2
    b = 2.0 * ((y[0] - x[0]) * (x[0] - c[0]) + (y[1] - x[1]) * (x[1] - c[1]))
    q = (x[0] - c[0]) ** 2 + (x[1] - c[1]) ** 2 - r2
    if a == 0.0:
        return 1.0
    root = (-b + math.sqrt(b * b - 4.0 * a * q)) / (2.0 * a)
    return min(1.0, max(0.0, root))
gam = min(gamma_ball(xt, cand, cp, rp2), gamma_ball(xt, cand, (0.0, 0.0), 1.0))
print(f"gamma = {gam!r}")
xn = ((1 - alpha) * (xt[0] + gam * (cand[0] - xt[0])),
      (1 - alpha) * (xt[1] + gam * (cand[1] - xt[1])))
print(f"x_next = {xn!r}")

print("== lens tip: B(0,1) and B((1.5,0),1), y=(0,2) ==")
print((0.75, math.sqrt(1.0 - 0.75 ** 2)))

print("== pessimistic build example (g=-0.5, gg=(1,0), xt=(0.1,0), L=4, s=0.1) ==")
cp = (0.1 - 1.0 / 4.0, 0.0)
rp2 = 1.0 / 16.0 - (2.0 / 4.0) * (-0.5 + 0.1)
print(f"center = {cp!r} radius^2 = {rp2!r}")

print("== estimator error bound (L=2, delta=0.1, d=2) and (L=20, delta=1e-4, d=2) ==")
print(0.5 * math.sqrt(2) * 2 * 0.1, 0.5 * math.sqrt(2) * 20 * 1e-4)

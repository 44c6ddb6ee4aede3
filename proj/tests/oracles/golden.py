#!/usr/bin/env python3
# Copyright 2026 The nonlocal-kit Authors
# SPDX-License-Identifier: Apache-2.0
"""Independent high-precision reference values for the unit tests.

Everything here is computed with mpmath from the defining integrals and
closed forms; the printed numbers are frozen into tests/test_*.cpp.
Run: python3 tests/oracles/golden.py
"""

import itertools

import mpmath as mp

mp.mp.dps = 40


def c_ns(n, s):
    return 4**s * mp.gamma(n / mp.mpf(2) + s) / (mp.pi ** (n / mp.mpf(2)) * abs(mp.gamma(-s)))


def poisson_c(n, s):
    return mp.gamma(n / mp.mpf(2)) * mp.sin(mp.pi * s) / mp.pi ** (n / mp.mpf(2) + 1)


def green_c(n, s):
    return mp.gamma(n / mp.mpf(2)) / (4**s * mp.pi ** (n / mp.mpf(2)) * mp.gamma(s) ** 2)


def getoor_c(n, s):
    return 4**s * mp.gamma(1 + s) * mp.gamma(n / mp.mpf(2) + s) / mp.gamma(n / mp.mpf(2))


def kernel(n, s, x, y):
    return mp.fsum((a - b) ** 2 for a, b in zip(x, y)) ** (-(n + 2 * s) / 2)


def kernel_derivative(n, s, alpha, y):
    f = lambda *x: kernel(n, s, x, y)
    return mp.diff(f, tuple([0] * n), tuple(alpha))


def taylor_remainder(n, s, k, x, y):
    total = kernel(n, s, x, y)
    for alpha in itertools.product(range(k), repeat=n):
        if sum(alpha) > k - 1:
            continue
        mono = mp.mpf(1)
        for xi, ai in zip(x, alpha):
            mono *= xi**ai / mp.factorial(ai)
        total -= mono * kernel_derivative(n, s, alpha, y)
    return total


def green_inner(n, s, r0):
    return mp.quad(lambda t: t ** (s - 1) * (1 + t) ** (-n / mp.mpf(2)), [0, 1, r0] if r0 > 1 else [0, r0])


def green_ball_1d(s, r, x, y):
    r0 = (r * r - x * x) * (r * r - y * y) / (r * r * (x - y) ** 2)
    return green_c(1, s) * abs(x - y) ** (2 * s - 1) * green_inner(1, s, r0)


def poisson_1d(s, r, x, y):
    return poisson_c(1, s) * ((r * r - x * x) / (y * y - r * r)) ** s / abs(x - y)


def second_difference(u, x, s, t):
    """(2u(x) - u(x+t) - u(x-t)) / t^{1+2s}, by its Taylor series for tiny t."""
    if t < mp.mpf("1e-6"):
        return -(mp.diff(u, x, 2) + t * t / 12 * mp.diff(u, x, 4)) * t ** (1 - 2 * s)
    return (2 * u(x) - u(x + t) - u(x - t)) / t ** (1 + 2 * s)


def pv_1d(u, x, s, lo, hi):
    """PV int_lo^hi (u(x) - u(y)) |x-y|^{-1-2s} dy for lo < x < hi."""
    d = min(x - lo, hi - x)
    sym = mp.quad(lambda t: second_difference(u, x, s, t), [0, d])
    rest = mp.mpf(0)
    if x - d > lo:
        rest += mp.quad(lambda y: (u(x) - u(y)) / abs(x - y) ** (1 + 2 * s), [lo, x - d])
    if x + d < hi:
        rest += mp.quad(lambda y: (u(x) - u(y)) / abs(x - y) ** (1 + 2 * s), [x + d, hi])
    return sym + rest


def classical_1d(u, x, s):
    return mp.quad(lambda t: second_difference(u, x, s, t), [0, 1, mp.inf])


def divergent_1d(u, x, s, k):
    """Canonical compensated operator, unnormalized, split at |y| = 2."""
    near = pv_1d(u, x, s, -2, 2)
    far_k = mp.quad(lambda y: abs(x - y) ** (-1 - 2 * s), [2, mp.inf]) + mp.quad(
        lambda y: abs(x - y) ** (-1 - 2 * s), [-mp.inf, -2]
    )
    rem = lambda y: taylor_remainder_1d(s, k, x, y)
    tail = mp.quad(lambda y: u(y) * rem(y), [2, 3, 10, mp.inf]) + mp.quad(lambda y: u(y) * rem(y), [-mp.inf, -10, -3, -2])
    return near + u(x) * far_k - tail


def taylor_remainder_1d(s, k, x, y):
    """|x-y|^{-p} minus its order-(k-1) Taylor polynomial in x, summed in closed
    form as |y|^{-p} (p)_k/k! t^k 2F1(1, p+k; k+1; t), t = x/y, to avoid
    cancellation at large |y|."""
    p = 1 + 2 * s
    t = x / y
    return abs(y) ** (-p) * mp.rf(p, k) / mp.factorial(k) * t**k * mp.hyp2f1(1, p + k, k + 1, t)


def smooth_step(t):
    if t <= 0:
        return mp.mpf(0)
    if t >= 1:
        return mp.mpf(1)
    a = mp.exp(-1 / t)
    b = mp.exp(-1 / (1 - t))
    return a / (a + b)


def power_tail(g, a, b):
    return lambda y: abs(y) ** g * smooth_step((abs(y) - a) / mp.mpf(b - a))


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


def main():
    for n, s in [(1, mp.mpf("0.3")), (2, mp.mpf("0.5")), (3, mp.mpf("0.75"))]:
        show(f"c({n},{s})", c_ns(n, s))
        show(f"poisson_c({n},{s})", poisson_c(n, s))
        show(f"green_c({n},{s})", green_c(n, s))
        show(f"getoor_c({n},{s})", getoor_c(n, s))

    show("dK n=2 s=.4 a=(1,1) y=(2,1)", kernel_derivative(2, mp.mpf("0.4"), (1, 1), (2, 1)))
    show("dK n=3 s=.3 a=(2,0,1) y=(1,2,2)", kernel_derivative(3, mp.mpf("0.3"), (2, 0, 1), (1, 2, 2)))
    show("Rem n=1 s=.5 k=2 x=.4 y=3", taylor_remainder(1, mp.mpf("0.5"), 2, (mp.mpf("0.4"),), (3,)))
    show(
        "Rem n=2 s=.3 k=3 x=(.3,.2) y=(1.5,-2)",
        taylor_remainder(2, mp.mpf("0.3"), 3, (mp.mpf("0.3"), mp.mpf("0.2")), (mp.mpf("1.5"), -2)),
    )
    show(
        "Rem n=2 s=.3 k=3 x=(.05,.02) y=(2,1)",
        taylor_remainder(2, mp.mpf("0.3"), 3, (mp.mpf("0.05"), mp.mpf("0.02")), (2, 1)),
    )
    show(
        "Rem n=3 s=.7 k=2 x=(.1,-.2,.05) y=(0,3,1)",
        taylor_remainder(3, mp.mpf("0.7"), 2, (mp.mpf("0.1"), mp.mpf("-0.2"), mp.mpf("0.05")), (0, 3, 1)),
    )

    show("green_inner(1,.3,2.5)", green_inner(1, mp.mpf("0.3"), mp.mpf("2.5")))
    show("green_inner(3,.7,.4)", green_inner(3, mp.mpf("0.7"), mp.mpf("0.4")))
    show("green_inner(2,.5,10)", green_inner(2, mp.mpf("0.5"), 10))
    s = mp.mpf("0.3")
    show("green_ball n=1 s=.3 r=1 x=.2 y=-.5", green_ball_1d(s, 1, mp.mpf("0.2"), mp.mpf("-0.5")))
    x = mp.mpf("0.2")
    mass = mp.quad(lambda y: green_ball_1d(s, 1, x, y), [-1, x, 1])
    print(f"  check: int G(.2,y) dy = {mp.nstr(mass, 15)}, getoor = {mp.nstr((1 - x * x) ** s / getoor_c(1, s), 15)}")

    # Normalized classical operator of exp(-y^2/2), 1-D, s = 0.3, x = 0.3.
    s = mp.mpf("0.3")
    g = lambda y: mp.exp(-y * y / 2)
    show("flap gaussian n=1 s=.3 x=.3", c_ns(1, s) * classical_1d(g, mp.mpf("0.3"), s))
    # Normalized classical operator of exp(-|y|^2/2) at 0: 2^s Gamma(n/2+s)/Gamma(n/2).
    show("flap gaussian n=2 s=.5 x=0", mp.sqrt(2) * mp.gamma(mp.mpf(1.5)) / mp.gamma(1))
    show("  1-D route n=1 s=.5 x=0", c_ns(1, mp.mpf("0.5")) * classical_1d(g, 0, mp.mpf("0.5")))
    show("  closed n=1 s=.5 x=0", mp.sqrt(2) * mp.gamma(1) / mp.gamma(mp.mpf("0.5")))

    # Unnormalized compensated operator of monomials.
    s = mp.mpf("0.5")
    show("div x^2 n=1 s=.5 k=2 x=.3", divergent_1d(lambda y: y * y, mp.mpf("0.3"), s, 2))
    show("div x^3 n=1 s=.5 k=3 x=-.4", divergent_1d(lambda y: y**3, mp.mpf("-0.4"), s, 3))
    s = mp.mpf("0.3")
    show("div power_tail(1.2, 2, 3) n=1 s=.3 k=2 x=.25", divergent_1d(power_tail(mp.mpf("1.2"), 2, 3), mp.mpf("0.25"), s, 2))

    # Standard Dirichlet problem, 1-D, s = 0.5, r = 1, f = 0, g = 1 on 1 <= |y| < 2.
    s = mp.mpf("0.5")
    x = mp.mpf("0.3")
    u = mp.quad(lambda y: poisson_1d(s, 1, x, y), [1, 2]) + mp.quad(lambda y: poisson_1d(s, 1, x, y), [-2, -1])
    show("dirichlet annulus n=1 s=.5 x=.3", u)
    s = mp.mpf("0.3")
    x = mp.mpf("-0.6")
    u = mp.quad(lambda y: poisson_1d(s, 1, x, y) * mp.exp(-y * y / 2), [1, 2, mp.inf]) + mp.quad(
        lambda y: poisson_1d(s, 1, x, y) * mp.exp(-y * y / 2), [-mp.inf, -2, -1]
    )
    show("dirichlet gaussian-exterior n=1 s=.3 x=-.6", u)

    # Exit-law bin probabilities for the sampler at x = 0.5, n = 1, s = 0.5, r = 1.
    s = mp.mpf("0.5")
    x = mp.mpf("0.5")
    edges = [-mp.inf, -3, mp.mpf("-1.5"), -1, None, 1, mp.mpf("1.5"), 3, mp.inf]
    probs = []
    for a, b in zip(edges[:-1], edges[1:]):
        if a is None or b is None:
            continue
        probs.append(mp.quad(lambda y: poisson_1d(s, 1, x, y), [a, b]))
    print("exit bins x=.5 n=1 s=.5:", ", ".join(mp.nstr(p, 17) for p in probs), " sum", mp.nstr(mp.fsum(probs), 17))


if __name__ == "__main__":
    main()

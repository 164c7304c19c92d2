"""Independent high-precision oracle (mpmath) for frozen test fixtures.

Everything here is computed with mpmath quadrature / direct summation and is
independent of the C++ evaluation paths. Run: python3 compute_fixtures.py
"""
import mpmath as mp

mp.mp.dps = 30


def f_density(n, d, lam):
    if n == 0:
        return mp.mpf(1)
    y = lam**2 / d
    g_up = mp.gammainc(n, y)
    h = lam**2 / (2 * d)
    g_lo = mp.gammainc(mp.mpf(n) / 2, 0, h)
    return mp.sqrt(d)**n / mp.gamma(n) * (mp.e**(lam**2 / (2 * d)) * g_up
                                           + 2**(n - 1) * h**(mp.mpf(n) / 2) * g_lo)


def expected_count_quad(n, d):
    if n == 1:
        return mp.mpf(1)
    phi = lambda x: mp.e**(-x**2 / 2) / mp.sqrt(2 * mp.pi)
    return 2 * mp.quad(lambda x: f_density(n - 1, d, x) * phi(x), [0, 2, 6, 12, mp.inf])


def expected_count_hyp(n, d):
    n = mp.mpf(n); d = mp.mpf(d)
    pre = 2**(n - 1) * mp.sqrt(d)**n * mp.gamma(n - 0.5) / (mp.sqrt(mp.pi) * (d + 1)**(n - 0.5) * mp.gamma(n))
    return pre * (2 * (n - 1) * mp.hyp2f1(1, n - 0.5, 1.5, (d - 1) / (d + 1))
                  + mp.hyp2f1(1, n - 0.5, (n + 1) / 2, 1 / (d + 1)))


def dnd(n, d):
    return sum(d**i for i in range(n))


def abs_det(n, t):
    t = mp.mpf(t)
    return (mp.sqrt(2)**n / mp.sqrt(mp.pi) * mp.gamma(mp.mpf(n + 1) / 2) / mp.gamma(n)
            * (mp.e**(t**2 / 2) * mp.gammainc(n, t**2)
               + 2**(n - 1) * (t**2 / 2)**(mp.mpf(n) / 2) * mp.gammainc(mp.mpf(n) / 2, 0, t**2 / 2)))


if __name__ == "__main__":
    print("Gamma(3,2)", mp.quad(lambda t: t**2 * mp.e**-t, [2, mp.inf]))
    print("gamma(0.5,1)", mp.quad(lambda t: t**-0.5 * mp.e**-t, [0, 1]))
    print("B(2,3,0.5)", mp.quad(lambda t: t * (1 - t)**2, [0, 0.5]))
    print("2F1(1,1;2;0.5)", mp.nsum(lambda k: 0.5**k / (k + 1), [0, mp.inf]))
    print("erf(1)", 2 / mp.sqrt(mp.pi) * mp.nsum(lambda k: (-1)**k / (mp.factorial(k) * (2 * k + 1)), [0, mp.inf]))
    print("F_{2,1}(1)", f_density(2, 1, mp.mpf(1)))
    print("J(2,3,0)", mp.sqrt(3) / mp.pi / mp.sqrt(2 * mp.pi))
    for (n, d) in [(2, 1), (2, 2), (2, 3), (3, 3), (3, 2), (4, 2), (5, 3), (12, 8)]:
        print("E", n, d, "quad", mp.nstr(expected_count_quad(n, d), 20), "hyp", mp.nstr(expected_count_hyp(n, d), 20))
    for (n, t) in [(1, 0), (2, 0), (3, 1), (2, 5), (4, 2)]:
        print("E|det|", n, t, mp.nstr(abs_det(n, t), 20))
    for d in [1, 2, 3, 5]:
        for n in [10, 20, 40, 200]:
            print("ratio n", n, "d", d, mp.nstr(expected_count_hyp(n, d) / mp.sqrt(dnd(n, d)), 20))
    for n in [2, 3, 4, 5]:
        for d in [10, 100, 1000]:
            print("ratio n", n, "d", d, mp.nstr(expected_count_hyp(n, d) / mp.sqrt(dnd(n, d)), 20))
    for (n, d) in [(50, 50), (30, 7), (49, 2)]:
        print("E", n, d, "hyp", mp.nstr(expected_count_hyp(n, d), 25))

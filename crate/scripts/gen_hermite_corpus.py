#!/usr/bin/env python3
"""Generate the high-precision oracle corpus for H_nu(z).

Each record is `nu_re nu_im z_re z_im H_re H_im`. Values come from
mpmath.hermite at 110 digits; non-integer orders are cross-checked against a
brute-force sum of the power series

    H_nu(z) = 1/(2 Gamma(-nu)) * sum_n (-1)^n/n! Gamma((n-nu)/2) (2z)^n

carried at 250 digits. Points are drawn with a fixed seed, so rerunning the
script reproduces the file byte for byte.

Usage: gen_hermite_corpus.py OUT_PATH
"""

import random
import sys

import mpmath as mp

DIGITS = 40
SEED = 20240611

# (nu, z) pairs that unit tests look up by value.
FIXED = [
    (mp.mpc(-1, 0), mp.mpc(1, 0)),
    (mp.mpc(-0.5, 0.3), 2 * mp.expjpi(mp.mpf(3) / 4)),
    (mp.mpc(-0.5, 0), 10 * mp.expjpi(mp.mpf(3) / 4)),
    (mp.mpc(-1, 0), 12 * mp.expjpi(mp.mpf(5) / 4)),
    (mp.mpc(-0.5, 0), 10 * mp.expjpi(mp.mpf(7) / 4)),
    (mp.mpc(-0.5, 0), mp.mpc(0, 0)),
    (mp.mpc(3, 0), mp.mpc(0.5, 0.5)),
]


def series(nu, z):
    with mp.workdps(250):
        nu = mp.mpc(nu)
        z = mp.mpc(z)
        w = 2 * z
        total = mp.mpc(0)
        term_pow = mp.mpc(1)
        n = 0
        small = 0
        while True:
            g = mp.gamma((n - nu) / 2)
            t = (-1) ** n * g * term_pow / mp.factorial(n)
            total += t
            if n > 2 * abs(w) ** 2 + 10 and abs(t) < mp.mpf(10) ** -120 * max(abs(total), 1):
                small += 1
                if small > 3:
                    break
            term_pow *= w
            n += 1
        return total / (2 * mp.gamma(-nu))


def is_nonneg_int(nu):
    return nu.imag == 0 and nu.real >= 0 and nu.real == int(nu.real)


def oracle(nu, z):
    with mp.workdps(110):
        h = mp.hermite(nu, z)
    if not is_nonneg_int(nu):
        s = series(nu, z)
        if abs(s - h) > mp.mpf(10) ** -60 * max(abs(h), mp.mpf(10) ** -300):
            raise SystemExit(f"oracle disagreement at nu={nu}, z={z}: {h} vs {s}")
    return h


def random_points(rng, count):
    rays = [0.0, 0.25, 0.5, 0.75, 1.0, -0.25, -0.5, -0.75]
    points = []
    while len(points) < count:
        kind = rng.random()
        if kind < 0.15:
            nu = mp.mpc(rng.randint(0, 8), 0)
        else:
            nu = mp.mpc(round(rng.uniform(-6, 4), 6), round(rng.uniform(-3, 3), 6))
        r = mp.mpf(round(rng.uniform(0, 14), 6))
        if rng.random() < 0.4:
            theta = mp.pi * rng.choice(rays)
        else:
            theta = mp.mpf(round(rng.uniform(-3.14159, 3.14159), 6))
        z = r * mp.expj(theta)
        # keep |z| and |nu| inside the range the library claims
        if abs(nu) > 10:
            continue
        points.append((nu, z))
    return points


def fmt(x):
    return mp.nstr(x, DIGITS, min_fixed=-5, max_fixed=5, strip_zeros=False)


def main():
    if len(sys.argv) != 2:
        raise SystemExit(__doc__)
    mp.mp.dps = 110
    rng = random.Random(SEED)
    points = FIXED + random_points(rng, 100 - len(FIXED))
    with open(sys.argv[1], "w", encoding="utf-8") as out:
        for nu, z in points:
            # round z to binary64 so the test evaluates exactly this point
            z = mp.mpc(float(z.real), float(z.imag))
            nu = mp.mpc(float(nu.real), float(nu.imag))
            h = oracle(nu, z)
            fields = [nu.real, nu.imag, z.real, z.imag, h.real, h.imag]
            out.write(" ".join(fmt(f) for f in fields) + "\n")
    with mp.workdps(60):
        print("ln Gamma(0.5+1i) =", mp.loggamma(mp.mpc(0.5, 1)))


if __name__ == "__main__":
    main()

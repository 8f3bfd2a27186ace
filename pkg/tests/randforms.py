"""Seeded random polynomials and forms for property tests."""

import itertools
import random

from pfaffian.algebra import GaussianRational as G, Poly, RealPForm

FRAMES = {p: list(itertools.combinations(range(4), p)) for p in range(5)}


def rand_scalar(rng: random.Random) -> G:
    return G(rng.randint(-4, 4), rng.randint(-2, 2)) / rng.choice((1, 1, 2, 3))


def rand_poly(rng: random.Random, nvars: int = 4, terms: int = 3, deg: int = 2) -> Poly:
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = tuple(rng.randint(0, deg) for _ in range(nvars))
        out[e] = rand_scalar(rng)
    return Poly(out, nvars=nvars)


def rand_form(rng: random.Random, degree: int, terms: int = 2) -> RealPForm:
    frames = FRAMES[degree]
    out = {}
    for idx in rng.sample(frames, min(len(frames), rng.randint(1, 3))):
        out[idx] = rand_poly(rng, terms=terms)
    return RealPForm(degree, out)

import random

from permorb.monodromy import MarkedPoint, build_monodromy
from permorb.perm import IndexSet, Permutation, parse_cycles, product
from permorb.schema import BUNDLED_RINGS, bundled_ring
from permorb.sewing import SewSpec

RINGS = {name: bundled_ring(name) for name in BUNDLED_RINGS}


def P(text, n):
    return parse_cycles(text, IndexSet(n))


def random_perm(rng: random.Random, n: int) -> Permutation:
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(tuple(images))


def closing_tuple(rng, n, k, head=()):
    """``head`` plus ``k - len(head) - 1`` random permutations plus the one closing the product."""
    gens = list(head) + [random_perm(rng, n) for _ in range(k - len(head) - 1)]
    gens.append(product(gens, n).inverse())
    return gens


def make_data(gens, prefix="x"):
    n = len(gens[0])
    points = [MarkedPoint(f"{prefix}{j + 1}") for j in range(len(gens))]
    return build_monodromy(list(zip(points, gens)), ground=IndexSet(n))


def random_data(rng, max_size=8, max_points=6, min_points=1):
    n = rng.randint(1, max_size)
    k = rng.randint(min_points, max_points)
    return make_data(closing_tuple(rng, n, k))


def random_sew_spec(rng, max_size=6, max_rest=3, rotate=True):
    """Random valid spec: each side has 1..max_rest surviving points."""
    n = rng.randint(1, max_size)
    a_rest = rng.randint(1, max_rest)
    b_rest = rng.randint(1, max_rest)
    left = closing_tuple(rng, n, a_rest + 1)
    g0 = left[-1]
    left = [g0] + left[:-1]
    # right side: h0 = g0^-1 first, then b_rest permutations closing the product
    right = closing_tuple(rng, n, b_rest + 1, head=(g0.inverse(),))
    sl = sr = 0
    if rotate:
        sl = rng.randrange(len(left))
        sr = rng.randrange(len(right))
        left = left[sl:] + left[:sl]
        right = right[sr:] + right[:sr]
        sl = (-sl) % len(left)
        sr = (-sr) % len(right)
    return SewSpec(make_data(left, "x"), make_data(right, "y"), sl, sr)

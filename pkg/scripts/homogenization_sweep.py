"""Sweep random inhomogeneous decorations: sign(nu) vs sign(mu), explicit vs closed-form nu, size of phi_hat."""
import argparse
import random
from collections import Counter
from dataclasses import dataclass

from gitstab.homogenize import choose_omega, explicit_size, nu_filtration, saturation_bound_check
from gitstab.lattice import WeightedFlag
from gitstab.tensor import DecType, SparseTensor, mu_filtration_tensor


@dataclass
class SweepConfig:
    n: int = 200
    seed: int = 3
    max_r: int = 4
    max_v: int = 4
    cap: int = 20000


def sample(rng, cfg):
    r = rng.randint(2, cfg.max_r)
    comps = []
    for v in rng.sample(range(1, cfg.max_v + 1), rng.randint(2, min(3, cfg.max_v))):
        c = rng.randint(0, 1)
        comps.append((v + r * c, 1, c))
    t = DecType(r, tuple(comps))
    terms = {}
    for _ in range(rng.randint(1, 3)):
        comp = rng.randrange(len(comps))
        terms[(comp, 0, tuple(rng.randint(1, r) for _ in range(comps[comp][0])))] = 1
    k = rng.randint(0, r - 1)
    dims = tuple(sorted(rng.sample(range(1, r), k)))
    return SparseTensor.from_terms(t, terms), WeightedFlag(dims, tuple(rng.randint(1, 3) for _ in dims), r)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(SweepConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = SweepConfig(**vars(p.parse_args()))
    rng = random.Random(cfg.seed)
    signs, sizes = Counter(), Counter()
    worst = 0
    for _ in range(cfg.n):
        w, f = sample(rng, cfg)
        plan = choose_omega(w.dec_type)
        m, nu = mu_filtration_tensor(f, w), nu_filtration(f, w, plan, cfg.cap)
        signs[((m > 0) - (m < 0), (nu > 0) - (nu < 0))] += 1
        size = explicit_size(w, plan)
        sizes["explicit" if size <= cfg.cap else "closed form only"] += 1
        max_mu, bound, _ = saturation_bound_check(w, plan)
        worst = max(worst, max_mu / bound)
    print(cfg)
    print("\n(sign mu, sign nu) counts:")
    for key, count in sorted(signs.items()):
        print(f"  {key}: {count}")
    print(f"\nnu cross-checked against phi_hat: {sizes['explicit']}; closed form only: {sizes['closed form only']}")
    print(f"largest one-step mu / A(r-1): {worst}")


if __name__ == "__main__":
    main()

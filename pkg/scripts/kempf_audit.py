"""Random audit of the exact torus optimum against exhaustive search.

    python scripts/kempf_audit.py --n 300 --box 6 --seed 1
"""
import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from gitstab.kempf import torus_instability, torus_polystable
from gitstab.lattice import norm_sq
from gitstab.oracles import brute_force_instability
from gitstab.tensor import DecType, SparseTensor


@dataclass
class AuditConfig:
    n: int = 300
    box: int = 6
    seed: int = 1
    max_r: int = 4
    max_a: int = 4
    max_terms: int = 4


def random_tensor(rng, cfg):
    r = rng.randint(2, cfg.max_r)
    t = DecType(r, tuple((rng.randint(1, cfg.max_a), 1, rng.randint(0, 1)) for _ in range(rng.randint(1, 2))))
    terms = {}
    for _ in range(rng.randint(1, cfg.max_terms)):
        comp = rng.randrange(len(t.components))
        terms[(comp, 0, tuple(rng.randint(1, r) for _ in range(t.components[comp][0])))] = 1
    return SparseTensor.from_terms(t, terms)


def audit(cfg: AuditConfig):
    rng = random.Random(cfg.seed)
    tally = Counter()
    for _ in range(cfg.n):
        w = random_tensor(rng, cfg)
        res = torus_instability(w)
        if not res.unstable:
            tally["polystable" if torus_polystable(w) else "semistable, not polystable"] += 1
            continue
        brute = brute_force_instability(w, cfg.box)
        lam = res.lambda_star.weights
        if brute is None:
            # destabilising cone misses the box entirely
            tally["unstable, box" + (" too small" if max(map(abs, lam)) > cfg.box else " EMPTY")] += 1
        elif brute.q**2 * norm_sq(lam) > res.q**2 * brute.norm_sq:
            tally["BRUTE FORCE BETTER"] += 1
        elif max(map(abs, lam)) > cfg.box:
            tally["unstable, optimum outside box"] += 1
        elif lam in brute.optima:
            tally["unstable, brute force agrees"] += 1
        else:
            tally["MISMATCH"] += 1
    return tally


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(AuditConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = AuditConfig(**vars(p.parse_args()))
    start = time.perf_counter()
    tally = audit(cfg)
    print(f"{cfg}\n")
    for key, count in sorted(tally.items()):
        print(f"  {key:34s} {count:5d}")
    print(f"\n{time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()

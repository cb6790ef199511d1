"""Torus verdicts for the orthogonal forms and the sl2 bracket, before and after random frame changes."""
import argparse
import random
from dataclasses import dataclass

from gitstab.kempf import kempf_search, random_unimodular, torus_instability, torus_polystable
from gitstab.oracles import COROOT, adjoint_example, orthogonal_example
from gitstab.tensor import act, mu


@dataclass
class ExampleConfig:
    max_r: int = 4
    restarts: int = 4
    seed: int = 0


def rows(cfg: ExampleConfig):
    for r in range(2, cfg.max_r + 1):
        for basis in ("hyperbolic", "standard"):
            _, w = orthogonal_example(r, basis)
            yield f"SO({r}) {basis}", w
    _, br = adjoint_example()
    yield "sl2 bracket", br


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-r", type=int, default=ExampleConfig.max_r)
    p.add_argument("--restarts", type=int, default=ExampleConfig.restarts)
    p.add_argument("--seed", type=int, default=ExampleConfig.seed)
    cfg = ExampleConfig(**vars(p.parse_args()))
    rng = random.Random(cfg.seed)
    print(f"{'example':22s} {'terms':>6s} {'torus':>18s} {'polystable':>10s} {'moved frame':>18s}")
    for name, w in rows(cfg):
        res = torus_instability(w)
        moved = act(random_unimodular(w.dec_type.r, rng), w)
        far = kempf_search(moved, cfg.restarts, cfg.seed)
        print(f"{name:22s} {len(w.terms):6d} {res.verdict:>18s} {str(torus_polystable(w)):>10s} {far.verdict:>18s}")
    _, br = adjoint_example()
    print(f"\nmu(coroot, bracket) = {mu(COROOT, br)}")
    _, w0 = orthogonal_example(2, "standard")
    print(f"mu((1,-1), standard SO(2) form) = {mu((1, -1), w0)}")


if __name__ == "__main__":
    main()

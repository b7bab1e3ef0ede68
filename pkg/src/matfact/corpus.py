"""Seeded random Koszul factorizations for batch checks.

Each instance draws its own ``random.Random`` seeded from the corpus seed and
its index, so instance ``i`` does not depend on how many others are drawn.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import MatrixFactorization, koszul_factorization
from .poly import Poly, Ring

DEFAULT_FIELD = 101
DEFAULT_SEED = 7
DEFAULT_COUNT = 100


@dataclass(frozen=True)
class CorpusItem:
    index: int
    seed: int
    mf: MatrixFactorization
    pairs: tuple[tuple[Poly, Poly], ...]

    def describe(self) -> dict:
        ring = self.mf.ring
        return {"index": self.index, "seed": self.seed, "variables": list(ring.variables),
                "potential": str(self.mf.potential), "rank": self.mf.rank0,
                "pairs": [[str(a), str(b)] for a, b in self.pairs]}


def random_form(ring: Ring, degree: int, rng: random.Random, density: float = 0.7) -> Poly:
    """Random homogeneous form of ``degree`` (doubled), never zero when the piece is nonzero."""
    monos = ring.monomials(degree)
    if not monos:
        return ring.zero()
    p = ring.field.p if hasattr(ring.field, "p") else 7
    while True:
        terms = {m: rng.randrange(1, p) for m in monos if rng.random() < density}
        if terms:
            return Poly.from_terms(ring, terms)


def random_koszul(rng: random.Random, field=DEFAULT_FIELD, max_vars: int = 3, max_pairs: int = 3):
    """Koszul factorization of ``Σ a_i b_i`` with random forms; ``W`` is retried until nonzero.

    All variables have weight 1. Pair degrees are (1, 1) or (1, 2) in ordinary
    grading, so every entry has positive degree and the cokernel needs as
    many generators as ``E0`` has.
    """
    nvars = rng.randint(1, max_vars)
    names = ["x", "y", "z"][:nvars]
    ring = Ring(field, names)
    npairs = rng.randint(1, min(max_pairs, nvars + 1))
    split = rng.choice([(2, 2), (2, 4)])
    while True:
        pairs = []
        for _ in range(npairs):
            da, db = split if rng.random() < 0.5 else split[::-1]
            pairs.append((random_form(ring, da, rng), random_form(ring, db, rng)))
        W = sum((a * b for a, b in pairs), ring.zero())
        if W:
            break
    mf = koszul_factorization([a for a, _ in pairs], [b for _, b in pairs])
    return mf, tuple(pairs)


def generate_corpus(seed: int = DEFAULT_SEED, count: int = DEFAULT_COUNT, field=DEFAULT_FIELD,
                    max_vars: int = 3, max_pairs: int = 3) -> list[CorpusItem]:
    out = []
    for i in range(count):
        item_seed = seed * 1_000_003 + i
        mf, pairs = random_koszul(random.Random(item_seed), field, max_vars, max_pairs)
        out.append(CorpusItem(i, item_seed, mf, pairs))
    return out

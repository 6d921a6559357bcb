"""Randomized cover generation and the theorem-fuzzing harness.

Profiles generate closed covers with multiplicity at most n.  Slab partitions
satisfy the bound by construction; voronoi-merge and random-growth repair
violations by merging labels until the bound holds; shifted-bricks generates
the classical staggered brick pattern, whose multiplicity is typically n+1,
and leaves rejection to the harness (that the filter fires is part of what
the profile is for).

Every trial is seeded independently from (seed, trial index), so reports are
byte-reproducible and trials could be fanned out to workers and merged by
index.  A witness absence under valid hypotheses is exported as a repro file
and flagged: the theorems say it should never happen.
"""

from __future__ import annotations

import os
import random
from typing import Callable, Optional

import numpy as np

from .cells import CellComplex
from .coloring import Coloring
from .covers import (
    CoverInstance,
    check_colorful_kkm,
    check_colorful_lebesgue,
    check_general_polytope,
    check_karasev,
    multiplicity,
    revalidate,
)
from .polytopes import CombinatorialPolytope

PROFILES = ("partition", "shifted-bricks", "voronoi-merge", "random-growth")


def _cell_centers(cx: CellComplex) -> np.ndarray:
    return np.array([(c.lo + c.hi) / 2.0 for c in cx.cells])


def _slab_partition(cx: CellComplex, rng: random.Random) -> dict[str, list[int]]:
    n = cx.polytope.dim
    r = cx.resolution
    axis = rng.randrange(n)
    parts = rng.randint(2, min(6, r))
    cuts = sorted(rng.sample(range(1, r), parts - 1))
    sets: dict[str, list[int]] = {}
    for cell in cx.cells:
        band = sum(1 for c in cuts if cell.grid_pos[axis] >= c)
        sets.setdefault(f"slab{band}", []).append(cell.index)
    return sets


def _shifted_bricks(cx: CellComplex, rng: random.Random) -> dict[str, list[int]]:
    n = cx.polytope.dim
    r = cx.resolution
    sizes = [rng.choice([s for s in (2, 4, r) if s <= r]) for _ in range(n)]
    shift = sizes[0] // 2
    sets: dict[str, list[int]] = {}
    for cell in cx.cells:
        layer = sum(cell.grid_pos[i] // sizes[i] for i in range(1, n))
        x0 = cell.grid_pos[0] + (layer % 2) * shift
        brick = (x0 // sizes[0],) + tuple(
            cell.grid_pos[i] // sizes[i] for i in range(1, n)
        )
        sets.setdefault("b" + ":".join(map(str, brick)), []).append(cell.index)
    return sets


def _nearest_site_labels(cx: CellComplex, rng: random.Random) -> dict[str, list[int]]:
    centers = _cell_centers(cx)
    k = rng.randint(3, 8)
    sites = rng.sample(range(cx.num_cells), min(k, cx.num_cells))
    site_pts = centers[sites]
    d = np.linalg.norm(centers[:, None, :] - site_pts[None, :, :], axis=2)
    owner = np.argmin(d, axis=1)
    sets: dict[str, list[int]] = {}
    for idx, o in enumerate(owner):
        sets.setdefault(f"v{o}", []).append(idx)
    return sets


def _random_growth(cx: CellComplex, rng: random.Random) -> dict[str, list[int]]:
    k = rng.randint(3, 6)
    seeds = rng.sample(range(cx.num_cells), min(k, cx.num_cells))
    owner = {c: i for i, c in enumerate(seeds)}
    frontier = list(seeds)
    while frontier:
        pick = rng.randrange(len(frontier))
        frontier[pick], frontier[-1] = frontier[-1], frontier[pick]
        cell = frontier.pop()
        for nb in cx.neighbors[cell]:
            if nb not in owner:
                owner[nb] = owner[cell]
                frontier.append(nb)
    # cells unreachable by walls go to label 0 to keep the cover total
    sets: dict[str, list[int]] = {}
    for cell in range(cx.num_cells):
        sets.setdefault(f"g{owner.get(cell, 0)}", []).append(cell)
    return sets


def _merge_until_valid(cx: CellComplex, sets: dict[str, list[int]], bound: int) -> dict[str, list[int]]:
    """Merge labels meeting at over-covered points until multiplicity <= bound."""
    from scipy import sparse

    while len(sets) > 1:
        labels = sorted(sets)
        mask = np.zeros((cx.num_cells, len(labels)), dtype=np.int8)
        for k, lab in enumerate(labels):
            mask[sets[lab], k] = 1
        touched = (cx.point_cells @ sparse.csr_matrix(mask)).toarray() > 0
        counts = touched.sum(axis=1)
        worst = int(np.argmax(counts))
        if counts[worst] <= bound:
            break
        present = [labels[k] for k in np.nonzero(touched[worst])[0]]
        a, b = present[0], present[1]
        sets[a] = sorted(set(sets[a]) | set(sets[b]))
        del sets[b]
    return sets


_GENERATORS: dict[str, Callable] = {
    "partition": _slab_partition,
    "shifted-bricks": _shifted_bricks,
    "voronoi-merge": _nearest_site_labels,
    "random-growth": _random_growth,
}

_NEEDS_MERGE = {"voronoi-merge", "random-growth"}


def generate_cover(cx: CellComplex, profile: str, rng: random.Random) -> CoverInstance:
    if profile not in _GENERATORS:
        raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")
    sets = _GENERATORS[profile](cx, rng)
    if profile in _NEEDS_MERGE:
        sets = _merge_until_valid(cx, sets, cx.polytope.dim)
    return CoverInstance.from_dict(cx, sets)


def _run_checker(checker: str, P, h, cover):
    if checker == "lebesgue":
        return check_colorful_lebesgue(P, h, cover)
    if checker == "kkm":
        return check_colorful_kkm(P, h, cover)
    if checker == "karasev":
        return check_karasev(P, cover)
    if checker == "general":
        return check_general_polytope(P, cover)
    raise ValueError(f"unknown checker {checker!r}")


def fuzz_covers(
    P: CombinatorialPolytope,
    h: Optional[Coloring],
    profile: str,
    seed: int,
    trials: int,
    checker: str = "lebesgue",
    resolution: Optional[int] = None,
    out_dir: str = "fuzz-failures",
    complex: Optional[CellComplex] = None,
) -> dict:
    """Generate seeded covers, run a checker, and report witness statistics."""
    cx = complex if complex is not None else CellComplex(P, resolution)
    report = {
        "polytope": P.name,
        "profile": profile,
        "checker": checker,
        "seed": seed,
        "grid": cx.resolution,
        "trials": trials,
        "accepted": 0,
        "rejected": 0,
        "witnesses": {},
        "absences": [],
    }
    bound = P.dim
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        cover = generate_cover(cx, profile, rng)
        if multiplicity(cover) > bound:
            report["rejected"] += 1
            continue
        report["accepted"] += 1
        witness = _run_checker(checker, P, h, cover)
        if witness is None:
            path = _export_absence(P, cover, out_dir, checker, seed, trial)
            report["absences"].append({"trial": trial, "file": path})
        else:
            if not revalidate(cx, witness):
                raise AssertionError(f"witness failed revalidation on trial {trial}")
            kind = type(witness).__name__
            report["witnesses"][kind] = report["witnesses"].get(kind, 0) + 1
    return report


def _export_absence(P, cover, out_dir, checker, seed, trial) -> str:
    from .serialization import canonical_json, cover_to_dict

    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"absence-{checker}-{seed}-{trial}.json")
    with open(path, "w") as fh:
        fh.write(canonical_json(cover_to_dict(cover)))
    return path

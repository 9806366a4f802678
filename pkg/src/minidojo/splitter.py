"""Dataset splits over traced theorems.

Two strategies: a seeded random partition, and a ``novel_premises`` split in
which every test (and validation) theorem uses at least one premise that no
training theorem uses. The novel split is built greedily: premises are
visited in ascending usage count, and all users of each premise are moved
together into the test pool until its quota is met, then the validation
pool; everything else trains. Theorems that use no premise always train.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InfeasibleSplitError, SplitError

__all__ = ["Split", "split_random", "split_novel_premises", "verify_split", "users_by_theorem"]

Fractions = tuple[float, float, float]


@dataclass
class Split:
    strategy: str
    seed: int
    fractions: Fractions
    train: list[str]
    val: list[str]
    test: list[str]

    def part(self, name: str) -> list[str]:
        return {"train": self.train, "val": self.val, "test": self.test}[name]


def _quotas(n: int, fractions: Fractions) -> tuple[int, int]:
    total = sum(fractions)
    if not 0.999 <= total <= 1.001:
        raise SplitError(f"fractions must sum to 1, got {fractions}")
    if any(f < 0 for f in fractions):
        raise SplitError(f"fractions must be nonnegative, got {fractions}")
    n_val = round(fractions[1] * n)
    n_test = round(fractions[2] * n)
    n_train = n - n_val - n_test
    for count, fraction, name in ((n_train, fractions[0], "train"), (n_val, fractions[1], "val"), (n_test, fractions[2], "test")):
        if fraction > 0 and count < 1:
            raise SplitError(f"too few theorems ({n}) for a nonzero {name} fraction")
    return n_val, n_test


def split_random(theorems: Sequence[str], fractions: Fractions, seed: int) -> Split:
    names = list(theorems)
    n_val, n_test = _quotas(len(names), fractions)
    rng = random.Random(seed)
    rng.shuffle(names)
    test = sorted(names[:n_test])
    val = sorted(names[n_test : n_test + n_val])
    train = sorted(names[n_test + n_val :])
    return Split("random", seed, tuple(fractions), train, val, test)


def users_by_theorem(premise_usage: Mapping[str, set[str]]) -> dict[str, set[str]]:
    """Invert premise -> users into theorem -> premises used."""

    used: dict[str, set[str]] = {}
    for premise, users in premise_usage.items():
        for theorem in users:
            used.setdefault(theorem, set()).add(premise)
    return used


def split_novel_premises(
    theorems: Sequence[str],
    premise_usage: Mapping[str, set[str]],
    fractions: Fractions,
    seed: int,
) -> Split:
    names = list(theorems)
    name_set = set(names)
    n_val, n_test = _quotas(len(names), fractions)
    rng = random.Random(seed)

    # Ascending usage count; the seed shuffles the order within each count
    # bucket (names are pre-sorted so the shuffle is reproducible).
    usage = {p: sorted(u & name_set) for p, u in premise_usage.items()}
    buckets: dict[int, list[str]] = {}
    for premise in sorted(usage):
        buckets.setdefault(len(usage[premise]), []).append(premise)
    order: list[str] = []
    for count in sorted(buckets):
        group = buckets[count]
        rng.shuffle(group)
        order.extend(group)

    assigned: dict[str, str] = {}
    pools = {"test": [], "val": []}
    quota = {"test": n_test, "val": n_val}
    phase = "test" if n_test > 0 else ("val" if n_val > 0 else None)
    for premise in order:
        if phase is None:
            break
        movers = [t for t in usage[premise] if t not in assigned]
        if not movers:
            continue
        for theorem in movers:
            assigned[theorem] = phase
            pools[phase].append(theorem)
        if len(pools[phase]) >= quota[phase]:
            phase = "val" if phase == "test" and n_val > 0 else None
            if phase == "val" and len(pools["val"]) >= n_val:
                phase = None
    for pool in ("test", "val"):
        if quota[pool] > 0 and len(pools[pool]) < quota[pool]:
            raise InfeasibleSplitError(
                f"cannot fill {pool} quota {quota[pool]} with whole premise-user groups"
            )

    train = sorted(t for t in names if t not in assigned)
    split = Split(
        "novel_premises", seed, tuple(fractions), train, sorted(pools["val"]), sorted(pools["test"])
    )
    violations = verify_split(split, premise_usage)
    if violations:
        raise InfeasibleSplitError("; ".join(violations))
    return split


def verify_split(split: Split, premise_usage: Mapping[str, set[str]]) -> list[str]:
    """Independently recheck a split. Returns human-readable violations:
    overlapping or lost theorems, and (for novel_premises) held-out theorems
    lacking a premise unused by every training theorem."""

    violations: list[str] = []
    parts = {"train": set(split.train), "val": set(split.val), "test": set(split.test)}
    for a in parts:
        for b in parts:
            if a < b and parts[a] & parts[b]:
                joint = ", ".join(sorted(parts[a] & parts[b]))
                violations.append(f"{a} and {b} overlap: {joint}")

    if split.strategy != "novel_premises":
        return violations

    used_by = users_by_theorem(premise_usage)
    for part in ("val", "test"):
        for theorem in sorted(parts[part]):
            premises = used_by.get(theorem, set())
            novel = {p for p in premises if not (premise_usage[p] & parts["train"])}
            if not novel:
                violations.append(
                    f"{part} theorem {theorem} has no premise unused by the training set"
                )
    return violations

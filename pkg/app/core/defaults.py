"""Run identifiers and seed derivation."""
import numpy as np
import ulid


def gen_run_id() -> str:
    """
    Generate a ULID for a run manifest.

    ULIDs sort by creation time, so manifests from repeated runs list in order.
    """
    return ulid.ulid()


def derive_seed(master_seed: int, *key: int) -> int:
    """
    Derive an independent 64-bit seed for one experiment cell.

    The result depends only on (master_seed, key), never on scheduling, so cells
    may run in any order or thread and still replay bit-identically.
    """
    sequence = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def rng_for(seed: int, *key: int) -> np.random.Generator:
    """Generator fully determined by (seed, key)."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(key)))

"""Error channels for decoder experiments.

A channel flips whole alphabet symbols: each corrupted coordinate is one
row of the (n, s) codeword array.  All channels guarantee the corrupted
word differs from the input in exactly ``error_count`` coordinates, with
every altered symbol distinct from the original one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .algebra import ValidationError
from .rng import SplitMix64

CHANNEL_KINDS = ("random_symbol", "burst", "adversarial_file")


@dataclass(frozen=True)
class ChannelModel:
    kind: str
    error_count: int
    seed: int = 0
    path: str | None = None  # adversarial_file only

    def __post_init__(self):
        if self.kind not in CHANNEL_KINDS:
            raise ValidationError(f"unknown channel kind {self.kind!r}")
        if self.error_count < 0:
            raise ValidationError("error_count must be nonnegative")
        if self.kind == "adversarial_file" and not self.path:
            raise ValidationError("adversarial_file channel needs a path")


def _random_symbol(rng: SplitMix64, p: int, s: int, original: np.ndarray) -> np.ndarray:
    """A uniformly random symbol in F_p^s, resampled until it differs."""
    while True:
        sym = np.array([rng.next_below(p) for _ in range(s)], dtype=np.int64)
        if not np.array_equal(sym, original):
            return sym


def _load_adversarial(path: str, n: int, s: int, p: int) -> tuple[list[int], np.ndarray]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "positions" not in data or "symbols" not in data:
        raise ValidationError(
            f"{path}: adversarial channel file needs 'positions' and 'symbols' keys"
        )
    positions = data["positions"]
    symbols = data["symbols"]
    if len(positions) != len(symbols):
        raise ValidationError(f"{path}: positions and symbols differ in length")
    if len(set(positions)) != len(positions):
        raise ValidationError(f"{path}: positions must be distinct")
    for pos in positions:
        if not isinstance(pos, int) or not 0 <= pos < n:
            raise ValidationError(f"{path}: position {pos!r} outside [0, {n})")
    arr = np.asarray(symbols, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != s:
        raise ValidationError(f"{path}: each symbol must list exactly {s} coefficients")
    return [int(x) for x in positions], arr % p


def corrupt_codeword(codeword: np.ndarray, channel: ChannelModel, p: int) -> np.ndarray:
    """Apply a channel to an (n, s) codeword, returning a new array.

    random_symbol picks error_count distinct positions uniformly; burst
    corrupts error_count consecutive positions (wrapping modulo n) from a
    random start; adversarial_file replays a recorded position/symbol list.
    Identical (channel, codeword) inputs give identical outputs.
    """
    word = np.array(codeword, dtype=np.int64) % p
    n, s = word.shape
    e = channel.error_count
    if e > n:
        raise ValidationError(f"cannot corrupt {e} of {n} coordinates")
    out = word.copy()

    if channel.kind == "adversarial_file":
        positions, symbols = _load_adversarial(channel.path, n, s, p)
        if len(positions) != e:
            raise ValidationError(
                f"channel file lists {len(positions)} errors, expected {e}"
            )
        for pos, sym in zip(positions, symbols):
            if np.array_equal(sym, word[pos]):
                raise ValidationError(
                    f"adversarial symbol at position {pos} equals the original"
                )
            out[pos] = sym
        return out

    rng = SplitMix64(channel.seed)
    if channel.kind == "random_symbol":
        positions = rng.sample(n, e)
    else:  # burst
        start = rng.next_below(n) if n else 0
        positions = [(start + i) % n for i in range(e)]
    for pos in positions:
        out[pos] = _random_symbol(rng, p, s, word[pos])
    return out

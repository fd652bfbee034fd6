"""Empirical checks of the cipher's security and performance behavior.

Covers the avalanche effect for plaintext and key changes, repeated-block
distinctness under the session-key chain, data-independent timing, key-space
accounting, and a chosen-plaintext attack that recovers the fixed-key cipher
as a 512x512 GF(2) matrix and then decrypts without the key.
"""

from __future__ import annotations

import gc
import random
import statistics
import time
from dataclasses import dataclass, fields
from typing import Callable, Sequence

from . import batch, gf2
from .cipher import encrypt_block
from .errors import SingularMapError
from .keys import session_key_chain

STATE_BITS = 512

EncryptFn = Callable[[bytes, bytes], bytes]


def hamming_distance(a: bytes, b: bytes) -> int:
    """Number of differing bits between two equal-length byte strings."""
    return (int.from_bytes(a, "little") ^ int.from_bytes(b, "little")).bit_count()


def flip_bit(state: bytes, position: int) -> bytes:
    """Copy of ``state`` with one bit flipped (position 0..511, LSB-first per octet)."""
    out = bytearray(state)
    out[position >> 3] ^= 1 << (position & 7)
    return bytes(out)


class LinearMap512:
    """The fixed-key block transform as a 512x512 bit matrix over GF(2).

    Column c holds the image of the c-th single-bit basis state, encoded as a
    512-bit int (octet k of a state occupies bits 8k..8k+7, LSB first).
    """

    def __init__(self, columns: Sequence[int]):
        cols = tuple(columns)
        if len(cols) != STATE_BITS:
            raise ValueError(f"expected {STATE_BITS} columns, got {len(cols)}")
        for c in cols:
            if not 0 <= c < (1 << STATE_BITS):
                raise ValueError("column is not a 512-bit vector")
        self.columns = cols
        self._inverse_rows: list[int] | None = None

    def apply(self, block: bytes) -> bytes:
        """Matrix-vector product: XOR of the columns selected by the input bits."""
        x = int.from_bytes(block, "little")
        acc = 0
        c = 0
        while x:
            if x & 1:
                acc ^= self.columns[c]
            x >>= 1
            c += 1
        return acc.to_bytes(64, "little")

    def rows(self) -> list[int]:
        return gf2.transpose(list(self.columns), STATE_BITS)

    def is_nonsingular(self) -> bool:
        return gf2.rank(list(self.columns), STATE_BITS) == STATE_BITS

    def inverse_rows(self) -> list[int]:
        if self._inverse_rows is None:
            self._inverse_rows = gf2.invert(self.rows(), STATE_BITS)
        return self._inverse_rows

    def mean_column_weight(self) -> float:
        return self.total_column_weight() / (STATE_BITS * STATE_BITS)

    def total_column_weight(self) -> int:
        return sum(c.bit_count() for c in self.columns)


def recover_linear_map(encrypt_oracle: Callable[[bytes], bytes]) -> LinearMap512:
    """Rebuild the cipher matrix from 512 chosen-plaintext oracle queries.

    The oracle must be the block transform under one fixed session key. Each
    single-bit basis state is queried once; its ciphertext is one matrix
    column. Raises SingularMapError if the result is not invertible, which
    for this construction signals a broken implementation.
    """
    columns = []
    for c in range(STATE_BITS):
        basis = (1 << c).to_bytes(64, "little")
        columns.append(int.from_bytes(encrypt_oracle(basis), "little"))
    if gf2.rank(columns, STATE_BITS) != STATE_BITS:
        raise SingularMapError("recovered cipher matrix is singular")
    return LinearMap512(columns)


def kpa_decrypt(linear_map: LinearMap512, ciphertext_block: bytes) -> bytes:
    """Decrypt one block with the recovered matrix alone, no key involved."""
    y = int.from_bytes(bytes(ciphertext_block), "little")
    x = gf2.mat_vec(linear_map.inverse_rows(), y)
    return x.to_bytes(64, "little")


def linearity_check(
    session_key: bytes,
    trials: int,
    seed: int,
    encrypt_fn: EncryptFn | None = None,
) -> tuple[bool, tuple[bytes, bytes] | None]:
    """Test E(x^y) = E(x)^E(y) and E(0) = 0 on random pairs.

    Returns (True, None) when every trial holds, else (False, (x, y)) with
    the first failing pair. ``encrypt_fn`` substitutes a different block
    transform (used to show that a corrupted cipher fails the check); the
    default cipher runs on the vectorized path.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    zero = bytes(64)
    probe = encrypt_fn if encrypt_fn is not None else encrypt_block
    if probe(zero, session_key) != zero:
        return False, (zero, zero)
    xs = [rng.randbytes(64) for _ in range(trials)]
    ys = [rng.randbytes(64) for _ in range(trials)]
    if encrypt_fn is None:
        ax = batch.blocks_to_array(xs)
        ay = batch.blocks_to_array(ys)
        ex = batch.encrypt_blocks(ax, session_key)
        ey = batch.encrypt_blocks(ay, session_key)
        exy = batch.encrypt_blocks(ax ^ ay, session_key)
        bad = (exy != (ex ^ ey)).any(axis=1).nonzero()[0]
        if bad.size:
            t = int(bad[0])
            return False, (xs[t], ys[t])
        return True, None
    for x, y in zip(xs, ys):
        combined = bytes(a ^ b for a, b in zip(x, y))
        if encrypt_fn(combined, session_key) != bytes(
            a ^ b for a, b in zip(encrypt_fn(x, session_key), encrypt_fn(y, session_key))
        ):
            return False, (x, y)
    return True, None


@dataclass
class AvalancheReport:
    """Flipped-output-bit statistics over a batch of single-change trials."""

    trials: int
    flipped_ratio_mean: float
    flipped_ratio_min: float
    flipped_ratio_max: float
    flipped_ratio_stddev: float
    seed: int
    mode: str = "plaintext-sample"

    def as_lines(self) -> list[str]:
        return [f"{f.name}={getattr(self, f.name)}" for f in fields(self)]


def avalanche_plaintext(session_key: bytes, trials: int, seed: int) -> AvalancheReport:
    """Sample the plaintext avalanche: flip one random state bit per trial.

    By linearity the flipped-bit count for position p equals the weight of
    matrix column p whatever the base state, so the sampled distribution is
    exactly the column-weight distribution under random position choice.
    """
    distances = []
    for sub in _trial_seeds(seed, trials):
        rng = random.Random(sub)
        state = rng.randbytes(64)
        position = rng.randrange(STATE_BITS)
        distances.append(
            hamming_distance(
                encrypt_block(state, session_key),
                encrypt_block(flip_bit(state, position), session_key),
            )
        )
    return _avalanche_report(distances, seed, "plaintext-sample")


def avalanche_plaintext_sweep(session_key: bytes, seed: int = 0) -> AvalancheReport:
    """Measure every one of the 512 flip positions exactly once."""
    base = random.Random(seed).randbytes(64)
    encrypted = encrypt_block(base, session_key)
    distances = [
        hamming_distance(encrypted, encrypt_block(flip_bit(base, p), session_key))
        for p in range(STATE_BITS)
    ]
    return _avalanche_report(distances, seed, "plaintext-sweep")


def avalanche_key(master: bytes, trials: int, seed: int) -> AvalancheReport:
    """Sample key sensitivity: change one key digit to a different value per trial."""
    distances = []
    for sub in _trial_seeds(seed, trials):
        rng = random.Random(sub)
        state = rng.randbytes(64)
        position = rng.randrange(64)
        replacement = rng.choice([d for d in range(8) if d != master[position]])
        mutated = bytearray(master)
        mutated[position] = replacement
        distances.append(
            hamming_distance(
                encrypt_block(state, master),
                encrypt_block(state, bytes(mutated)),
            )
        )
    return _avalanche_report(distances, seed, "key-sample")


@dataclass
class RepeatedBlockReport:
    """Pairwise comparison of ciphertexts of one content repeated across blocks."""

    block_count: int
    collisions: tuple[tuple[int, int], ...]
    all_distinct: bool

    def as_lines(self) -> list[str]:
        pairs = ";".join(f"{a}-{b}" for a, b in self.collisions) or "none"
        return [
            f"block_count={self.block_count}",
            f"collisions={pairs}",
            f"all_distinct={self.all_distinct}",
        ]


def repeated_block_report(
    master: bytes, content: bytes, block_count: int
) -> RepeatedBlockReport:
    """Encrypt the same content in block positions 1..block_count and compare.

    Over early block positions the chained session keys keep the ciphertexts
    pairwise distinct for typical keys and content. Degenerate exceptions:
    all-zero content (fixed point of every linear map), the all-zero master
    key (fixed point of the chain), and block positions 17 and beyond. The
    chain map is I+S per row over Z8 with S the cyclic shift, and (I+S)^16
    is the zero map mod 8, so every master key's chain reaches the all-zero
    session key by step 16. The all-zero key turns the block transform into
    the identity, so from block 17 on identical content always collides
    (and, worse, is transmitted unchanged).
    """
    if block_count < 2:
        raise ValueError("block_count must be >= 2")
    chain = session_key_chain(master)
    ciphertexts = [encrypt_block(content, next(chain)) for _ in range(block_count)]
    collisions = tuple(
        (a + 1, b + 1)
        for a in range(block_count)
        for b in range(a + 1, block_count)
        if ciphertexts[a] == ciphertexts[b]
    )
    return RepeatedBlockReport(block_count, collisions, not collisions)


@dataclass
class TimingReport:
    """Per-block wall-clock timing, split by plaintext content class."""

    blocks_timed: int
    mean_ns: float
    stddev_ns: float
    min_ns: int
    max_ns: int
    zero_mean_ns: float
    uniform_mean_ns: float
    random_mean_ns: float
    class_spread: float
    noise_threshold: float
    data_independent: bool

    def as_lines(self) -> list[str]:
        return [f"{f.name}={getattr(self, f.name)}" for f in fields(self)]


_BENCH_KEY = bytes(random.Random(0).choices(range(8), k=64))


def bench_throughput(block_count: int, noise_threshold: float = 0.20) -> TimingReport:
    """Time encrypt_block over three content classes under one fixed key.

    ``block_count`` blocks per class: all-zero, uniform (one repeated octet),
    and random content. Classes are interleaved in chunks to spread drift,
    and the per-class means are compared against ``noise_threshold`` for the
    data-independence verdict.
    """
    if block_count < 100:
        raise ValueError("block_count must be >= 100")
    rng = random.Random(0xBE7C)
    classes = {
        "zero": [bytes(64)] * block_count,
        "uniform": [bytes([0xA5]) * 64] * block_count,
        "random": [rng.randbytes(64) for _ in range(block_count)],
    }
    for _ in range(200):  # warm-up
        encrypt_block(rng.randbytes(64), _BENCH_KEY)
    samples: dict[str, list[int]] = {name: [] for name in classes}
    chunk = max(1, block_count // 20)
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        done = 0
        while done < block_count:
            take = min(chunk, block_count - done)
            for name, blocks in classes.items():
                out = samples[name]
                for block in blocks[done:done + take]:
                    t0 = time.perf_counter_ns()
                    encrypt_block(block, _BENCH_KEY)
                    out.append(time.perf_counter_ns() - t0)
            done += take
    finally:
        if gc_was_enabled:
            gc.enable()
    every = samples["zero"] + samples["uniform"] + samples["random"]
    means = {name: statistics.fmean(vals) for name, vals in samples.items()}
    spread = (max(means.values()) - min(means.values())) / min(means.values())
    return TimingReport(
        blocks_timed=len(every),
        mean_ns=statistics.fmean(every),
        stddev_ns=statistics.pstdev(every),
        min_ns=min(every),
        max_ns=max(every),
        zero_mean_ns=means["zero"],
        uniform_mean_ns=means["uniform"],
        random_mean_ns=means["random"],
        class_spread=spread,
        noise_threshold=noise_threshold,
        data_independent=spread <= noise_threshold,
    )


def keyspace_report() -> str:
    """Contrast the stated key count (64^8) with the structural count (8^64)."""
    stated = 64 ** 8
    structural = 8 ** 64
    lines = [
        "stated_keys=64^8",
        "stated_keys_pow2=2^48",
        f"stated_keys_value={stated}",
        "structural_keys=8^64",
        "structural_keys_pow2=2^192",
        f"structural_keys_value={structural}",
        "discrepancy=yes",
        "discrepancy_note=the stated count 2^48 and the structural count 2^192"
        " differ by a factor of 2^144; 64 positions over 8 digit values give"
        " 8^64 keys, not 64^8",
    ]
    return "\n".join(lines)


def _trial_seeds(seed: int, trials: int) -> list[int]:
    # Every trial gets its own sub-seed so trial order (or parallel
    # execution) cannot change the report.
    if trials < 1:
        raise ValueError("trials must be >= 1")
    master = random.Random(seed)
    return [master.getrandbits(64) for _ in range(trials)]


def _avalanche_report(distances: list[int], seed: int, mode: str) -> AvalancheReport:
    ratios = [d / STATE_BITS for d in distances]
    return AvalancheReport(
        trials=len(distances),
        flipped_ratio_mean=sum(distances) / (STATE_BITS * len(distances)),
        flipped_ratio_min=min(ratios),
        flipped_ratio_max=max(ratios),
        flipped_ratio_stddev=statistics.pstdev(ratios),
        seed=seed,
        mode=mode,
    )

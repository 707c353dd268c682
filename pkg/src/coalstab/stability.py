"""Stability of partition-allocation pairs.

A pair is stable when it resists both fission (splitting some blocks) and
fusion (merging some blocks). Fission resistance comes in three strengths
mirroring the three cores: strong blocks any dissatisfied new sub-coalition,
medium compares total worths, weak needs just one satisfied new
sub-coalition per attempt. Fusion resistance is single-flavored: no group of
existing blocks is worth more merged than separate.

Each resistance has two independent implementations, a direct scan over the
whole neighborhood and a per-block decomposition through subgame cores;
:func:`stable_contains` runs both and raises if they ever disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .cores import (MEDIUM, STRONG, _blockwise_core_nonempty_cached, _check_mode,
                    _structure_table, core_contains, prefix_sums)
from .errors import CapExceeded, InfeasiblePair
from .game import (Game, PAPair, Partition, _check_allocation, _check_partition,
                   is_partition_allocation, members, subgame)
from .lattice import (_iter_refinements_raw, _sorted_blocks, all_partitions,
                      enumerate_partitions)
from .rational import Rational

ENUMERATE_MAX_N = 8


@dataclass(frozen=True)
class StabilityReport:
    """Verdict with certificates.

    ``fission_certificate`` is a refinement that defeats the pair,
    ``fusion_certificate`` a coarsening that does; both are None when the
    corresponding resistance holds. Infeasible pairs are reported unstable
    with ``feasible=False`` and no resistance verdicts.
    """

    mode: str
    feasible: bool
    stable: bool
    fission_resistant: bool | None = None
    fusion_resistant: bool | None = None
    fission_certificate: Partition | None = None
    fusion_certificate: Partition | None = None
    reason: str | None = None

    def to_json(self, players: Sequence[str] | None = None) -> dict:
        def blocks(p):
            return [[players[i] if players else i for i in members(b)] for b in p.blocks]

        out = {"mode": self.mode, "feasible": self.feasible, "stable": self.stable,
               "fission_resistant": self.fission_resistant,
               "fusion_resistant": self.fusion_resistant}
        if self.fission_certificate is not None:
            out["fission_certificate"] = blocks(self.fission_certificate)
        if self.fusion_certificate is not None:
            out["fusion_certificate"] = blocks(self.fusion_certificate)
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    @classmethod
    def from_json(cls, data: dict, players: Sequence[str] | None = None) -> "StabilityReport":
        from .cores import _partition_from

        n = len(players) if players else None
        return cls(
            mode=data["mode"], feasible=data["feasible"], stable=data["stable"],
            fission_resistant=data.get("fission_resistant"),
            fusion_resistant=data.get("fusion_resistant"),
            fission_certificate=_partition_from(data.get("fission_certificate"), players, n),
            fusion_certificate=_partition_from(data.get("fusion_certificate"), players, n),
            reason=data.get("reason"))


def _require_feasible(game: Game, pair: PAPair) -> tuple:
    xs = _check_allocation(game, pair.allocation)
    if not is_partition_allocation(game, pair.partition, xs):
        raise InfeasiblePair(
            f"allocation {pair.allocation} is not feasible for partition {pair.partition}")
    return xs


def _fission_direct(game: Game, blocks: tuple[int, ...], xs: tuple,
                    mode: str) -> tuple[bool, tuple[int, ...] | None]:
    vals = game._values
    if mode == MEDIUM:
        current = sum(vals[b] for b in blocks)
        for ref in _iter_refinements_raw(blocks):
            if sum(vals[b] for b in ref) > current:
                return False, ref
        return True, None
    sums = prefix_sums(xs, game.n)
    own = set(blocks)
    if mode == STRONG:
        for ref in _iter_refinements_raw(blocks):
            for b in ref:
                if b not in own and sums[b] < vals[b]:
                    return False, ref
        return True, None
    for ref in _iter_refinements_raw(blocks):  # weak: some new block must hold out
        if not any(b not in own and sums[b] >= vals[b] for b in ref):
            return False, ref
    return True, None


def fission_resistant_direct(game: Game, pair: PAPair, mode: str) -> bool:
    """Scan every strict refinement of the pair's partition and apply the
    mode's blocking rule to it."""
    _check_mode(mode)
    xs = _require_feasible(game, pair)
    return _fission_direct(game, pair.partition.blocks, xs, mode)[0]


def _fission_decomposed(game: Game, blocks: tuple[int, ...], xs: tuple, mode: str) -> bool:
    vals = game._values
    if mode == MEDIUM:
        # a block resists all splits exactly when no partition of it beats its value
        val, _, _ = _structure_table(game)
        return all(val[b] == vals[b] for b in blocks)
    for b in blocks:
        if b & (b - 1) == 0:
            continue
        sub, players = subgame(game, b)
        if not core_contains(sub, tuple(xs[i] for i in players), mode).member:
            return False
    return True


def fission_resistant_decomposed(game: Game, pair: PAPair, mode: str) -> bool:
    """Per-block route: each block's restricted allocation must sit in the
    matching core of that block's subgame. Always agrees with the direct scan."""
    _check_mode(mode)
    xs = _require_feasible(game, pair)
    return _fission_decomposed(game, pair.partition.blocks, xs, mode)


def _fusion_scan(game: Game, blocks: tuple[int, ...]) -> tuple[bool, int]:
    """Check every union of two or more blocks against the sum of its parts.

    Returns (ok, violating block-index mask); property of the partition only.
    """
    q = len(blocks)
    if q < 2:
        return True, 0
    vals = game._values
    size = 1 << q
    union = [0] * size
    total = [0] * size
    for m in range(1, size):
        low = m & -m
        rest = m ^ low
        b = blocks[low.bit_length() - 1]
        union[m] = union[rest] | b
        total[m] = total[rest] + vals[b]
        if rest and total[m] < vals[union[m]]:
            return False, m
    return True, 0


def _merge_partition(game: Game, blocks: tuple[int, ...], merged_indices: int) -> Partition:
    keep = [b for k, b in enumerate(blocks) if not merged_indices >> k & 1]
    u = 0
    m = merged_indices
    while m:
        low = m & -m
        u |= blocks[low.bit_length() - 1]
        m ^= low
    return Partition._unchecked(game.n, _sorted_blocks(keep + [u]))


def fusion_resistant(game: Game, pair: PAPair) -> bool:
    """No set of the pair's blocks gains by merging. Depends on the partition
    alone once feasibility holds."""
    _require_feasible(game, pair)
    return _fusion_scan(game, pair.partition.blocks)[0]


def blockwise_core_contains(game: Game, p: Partition, x: Sequence[Rational],
                            mode: str) -> bool:
    """True iff each block's restricted allocation lies in the mode's core of
    that block's subgame. For the grand partition this is plain core
    membership."""
    _check_mode(mode)
    _check_partition(game, p)
    xs = _check_allocation(game, x)
    for b in p.blocks:
        sub, players = subgame(game, b)
        if not core_contains(sub, tuple(xs[i] for i in players), mode).member:
            return False
    return True


def blockwise_core_nonempty(game: Game, p: Partition, mode: str) -> bool:
    """True iff every block's subgame has a nonempty core of the given mode,
    i.e. the partition supports at least one fission-resistant allocation."""
    _check_mode(mode)
    _check_partition(game, p)
    if mode == MEDIUM:
        val, _, _ = _structure_table(game)
        vals = game._values
        return all(val[b] == vals[b] for b in p.blocks)
    return all(_blockwise_core_nonempty_cached(game, b, mode) for b in p.blocks)


def dominates_coarsenings(game: Game, p: Partition) -> bool:
    """True iff the partition's worth weakly beats every strict coarsening."""
    _check_partition(game, p)
    return _fusion_scan(game, p.blocks)[0]


def stable_contains(game: Game, pair: PAPair, mode: str) -> StabilityReport:
    """Full stability verdict: fission resistance in the given mode plus
    fusion resistance. Runs the decomposed characterization alongside the
    direct one and raises if they disagree."""
    _check_mode(mode)
    xs = _check_allocation(game, pair.allocation)
    p = pair.partition
    _check_partition(game, p)
    if not is_partition_allocation(game, p, xs):
        return StabilityReport(mode, feasible=False, stable=False,
                               reason="allocation is not feasible for the partition")
    fission, ref = _fission_direct(game, p.blocks, xs, mode)
    fusion, merged = _fusion_scan(game, p.blocks)
    stable = fission and fusion

    decomposed = _fission_decomposed(game, p.blocks, xs, mode)
    patched = blockwise_core_contains(game, p, xs, mode)
    supports = blockwise_core_nonempty(game, p, mode)
    if decomposed != fission or patched != fission or (patched and not supports) \
            or stable != (supports and fusion and patched):
        raise AssertionError(
            "direct and decomposed stability characterizations disagree; "
            "this is a bug, please report it")

    return StabilityReport(
        mode, feasible=True, stable=stable,
        fission_resistant=fission, fusion_resistant=fusion,
        fission_certificate=None if ref is None else Partition._unchecked(
            game.n, _sorted_blocks(ref)),
        fusion_certificate=None if not merged else _merge_partition(game, p.blocks, merged))


def enumerate_stable_partitions(game: Game, mode: str,
                                max_n: int = ENUMERATE_MAX_N) -> Iterator[Partition]:
    """Every partition that supports a stable pair in the given mode, in
    canonical order: blockwise core nonempty and worth dominating all
    coarsenings."""
    _check_mode(mode)
    if game.n > max_n:
        raise CapExceeded(
            f"refusing to scan Bell({game.n}) partitions (guard is n <= {max_n})")
    parts = all_partitions(game.n) if game.n <= 8 else enumerate_partitions(game.n)
    for p in parts:
        if blockwise_core_nonempty(game, p, mode) and dominates_coarsenings(game, p):
            yield p

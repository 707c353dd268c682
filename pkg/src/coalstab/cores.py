"""Strong, medium, and weak core membership and nonemptiness.

The strong core blocks any single dissatisfied coalition; the medium core is
the efficient set exactly when the grand value weakly dominates every other
partition's total worth; the weak core survives as long as every non-grand
partition contains at least one satisfied block.

Exponential costs, by operation: membership scans cost 2^n (strong) or 3^n
(weak deficiency table); the optimal-structure table costs 3^n once per game
and is cached; weak nonemptiness runs a branch-and-prune over feasibility
subproblems solved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InputError, NoNonGrandPartition
from .game import (Game, Partition, _check_allocation, equal_surplus_allocation,
                   members, subgame)
from .rational import Rational
from . import ratlp

STRONG = "strong"
MEDIUM = "medium"
WEAK = "weak"
MODES = (STRONG, MEDIUM, WEAK)


@dataclass(frozen=True)
class CoreReport:
    """Membership verdict plus a checkable certificate.

    On failure, ``coalition`` names a blocking coalition (strong mode) and
    ``partition`` a violating partition (medium: the worth argmax; weak: a
    partition whose blocks are all strictly deficient). On weak-mode success,
    ``satisfied`` lists every satisfied proper coalition; it hits every
    non-grand partition. ``reason`` explains failures that have no such
    certificate (the allocation was not even efficient).
    """

    mode: str
    member: bool
    coalition: int | None = None
    partition: Partition | None = None
    satisfied: tuple[int, ...] | None = None
    reason: str | None = None

    def to_json(self, players: Sequence[str] | None = None) -> dict:
        def names(mask):
            return [players[i] if players else i for i in members(mask)]

        out = {"mode": self.mode, "member": self.member}
        if self.coalition is not None:
            out["coalition"] = names(self.coalition)
        if self.partition is not None:
            out["partition"] = [names(b) for b in self.partition.blocks]
        if self.satisfied is not None:
            out["satisfied"] = [names(m) for m in self.satisfied]
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    @classmethod
    def from_json(cls, data: dict, players: Sequence[str] | None = None) -> "CoreReport":
        n = len(players) if players else None
        return cls(
            mode=data["mode"], member=data["member"],
            coalition=_mask_from(data.get("coalition"), players),
            partition=_partition_from(data.get("partition"), players, n),
            satisfied=None if data.get("satisfied") is None else tuple(
                _mask_from(group, players) for group in data["satisfied"]),
            reason=data.get("reason"))


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise InputError(f"unknown core mode {mode!r}; expected one of {MODES}")
    return mode


def _mask_from(group, players: Sequence[str] | None) -> int | None:
    """Invert the name-list rendering used by ``to_json``."""
    if group is None:
        return None
    if players is None:
        return sum(1 << i for i in group)
    index = {name: i for i, name in enumerate(players)}
    return sum(1 << index[name] for name in group)


def _partition_from(groups, players, n) -> Partition | None:
    if groups is None:
        return None
    blocks = [_mask_from(g, players) for g in groups]
    size = n if n is not None else max(b.bit_length() for b in blocks)
    return Partition(size, blocks)


def prefix_sums(x: tuple, n: int) -> list:
    """Allocation totals for every coalition mask."""
    size = 1 << n
    out = [0] * size
    for s in range(1, size):
        low = s & -s
        out[s] = out[s ^ low] + x[low.bit_length() - 1]
    return out


def _canonical_prefer(a: int, b: int) -> bool:
    """True when mask ``a`` precedes ``b``: the lowest differing player sits in ``a``."""
    d = a ^ b
    return bool(a & (d & -d))


def subset_structure_table(values: Sequence, nplayers: int):
    """Best partition worth per coalition mask for a dense value table.

    Returns (worth, block count, first block) per mask; the first-block
    choices reconstruct the canonical argmax: maximal worth, then fewest
    blocks, then canonical block order. Costs 3^n.
    """
    full = (1 << nplayers) - 1
    val = [0] * (full + 1)
    nblocks = [0] * (full + 1)
    first = [0] * (full + 1)
    for s in range(1, full + 1):
        low = s & -s
        rest = s ^ low
        best_v = values[s]
        best_nb = 1
        best_t = s
        if rest:
            sub = (rest - 1) & rest
            while True:
                t = low | sub
                cand = values[t] + val[s ^ t]
                if cand > best_v:
                    best_v, best_nb, best_t = cand, 1 + nblocks[s ^ t], t
                elif cand == best_v:
                    nb = 1 + nblocks[s ^ t]
                    if nb < best_nb or (nb == best_nb and _canonical_prefer(t, best_t)):
                        best_nb, best_t = nb, t
                if sub == 0:
                    break
                sub = (sub - 1) & rest
        val[s] = best_v
        nblocks[s] = best_nb
        first[s] = best_t
    return val, nblocks, first


def _structure_table(game: Game):
    """Per-game cached :func:`subset_structure_table`."""
    tab = game._memo.get("opt")
    if tab is None:
        tab = subset_structure_table(game._values, game.n)
        game._memo["opt"] = tab
    return tab


def _structure_blocks(game: Game, s: int) -> tuple[int, ...]:
    """Blocks of the canonical worth-maximizing partition of mask ``s``."""
    _, _, first = _structure_table(game)
    blocks = []
    while s:
        b = first[s]
        blocks.append(b)
        s ^= b
    return tuple(blocks)


def optimal_structure_value(game: Game) -> tuple[Rational, Partition]:
    """Maximum total worth over all partitions, with a canonical argmax.

    Ties go to fewer blocks, then canonical partition order.
    """
    val, _, _ = _structure_table(game)
    return val[game.full], Partition._unchecked(game.n, _structure_blocks(game, game.full))


def _max_nongrand(game: Game) -> tuple[Rational, Partition]:
    if game.n < 2:
        raise NoNonGrandPartition("a one-player game has no non-grand partition")
    val, nblocks, _ = _structure_table(game)
    full = game.full
    best = None
    cands = []
    for t in range(1, full, 2):  # masks containing player 0, excluding the full set
        cand = val[t] + val[full ^ t]
        if best is None or cand > best:
            best = cand
            cands = [t]
        elif cand == best:
            cands.append(t)
    pick = None
    pick_key = None
    for t in cands:
        nb = nblocks[t] + nblocks[full ^ t]
        if pick_key is not None and nb > pick_key[0]:
            continue
        blocks = tuple(sorted(_structure_blocks(game, t) + _structure_blocks(game, full ^ t),
                              key=lambda b: b & -b))
        part = Partition._unchecked(game.n, blocks)
        key = part.sort_key()
        if pick_key is None or key < pick_key:
            pick, pick_key = part, key
    return best, pick


def max_nongrand_worth(game: Game) -> Rational:
    """Best total worth over every partition other than the grand one."""
    return _max_nongrand(game)[0]


def strong_core_contains(game: Game, x: Sequence[Rational]) -> CoreReport:
    """Strong-core membership: efficient, and no coalition falls short."""
    xs = _check_allocation(game, x)
    vals = game._values
    sums = prefix_sums(xs, game.n)
    full = game.full
    for c in range(1, full):
        if sums[c] < vals[c]:
            return CoreReport(STRONG, False, coalition=c)
    if sums[full] < vals[full]:
        return CoreReport(STRONG, False, coalition=full)
    if sums[full] > vals[full]:
        return CoreReport(STRONG, False, reason="allocation exceeds the grand value")
    return CoreReport(STRONG, True)


def strong_core_nonempty(game: Game) -> tuple[bool, tuple | None]:
    """Exact feasibility of the strong-core system, with a witness."""
    vals = game._values
    n = game.n
    full = game.full
    lower = [vals[1 << i] for i in range(n)]
    constraints = [([1] * n, ratlp.EQ, vals[full])]
    for c in range(1, full):
        if c & (c - 1) == 0:
            continue  # singletons are the lower bounds
        row = [1 if c >> i & 1 else 0 for i in range(n)]
        constraints.append((row, ratlp.GE, vals[c]))
    out = ratlp.lp_solve(ratlp.LinearProgram(n, constraints=constraints, lower=lower))
    if out.status != "optimal":
        return False, None
    return True, out.witness


def medium_core_contains(game: Game, x: Sequence[Rational]) -> CoreReport:
    """Medium-core membership: efficient, and the grand value weakly dominates
    every other partition's worth."""
    xs = _check_allocation(game, x)
    vals = game._values
    if any(xs[i] < vals[1 << i] for i in range(game.n)):
        return CoreReport(MEDIUM, False, reason="allocation is not individually rational")
    if sum(xs) != vals[game.full]:
        return CoreReport(MEDIUM, False, reason="allocation is not efficient")
    if game.n == 1:
        return CoreReport(MEDIUM, True)
    threshold, argmax = _max_nongrand(game)
    if vals[game.full] >= threshold:
        return CoreReport(MEDIUM, True)
    return CoreReport(MEDIUM, False, partition=argmax)


def medium_core_nonempty(game: Game) -> bool:
    """True iff the grand value matches the optimal structure value, which
    also guarantees the efficient set is nonempty."""
    val, _, _ = _structure_table(game)
    return val[game.full] == game._values[game.full]


def weak_core_contains(game: Game, x: Sequence[Rational]) -> CoreReport:
    """Weak-core membership: efficient, and every non-grand partition keeps at
    least one satisfied block.

    Failure is decided by a table over coalition masks marking which can be
    partitioned entirely into strictly deficient blocks; the certificate is
    recovered from its choices.
    """
    xs = _check_allocation(game, x)
    vals = game._values
    n = game.n
    if any(xs[i] < vals[1 << i] for i in range(n)):
        return CoreReport(WEAK, False, reason="allocation is not individually rational")
    full = game.full
    sums = prefix_sums(xs, n)
    if sums[full] != vals[full]:
        return CoreReport(WEAK, False, reason="allocation is not efficient")
    splittable = [False] * (full + 1)
    choice = [0] * (full + 1)
    splittable[0] = True
    for s in range(1, full + 1):
        low = s & -s
        rest = s ^ low
        best = 0
        sub = rest
        while True:
            t = low | sub
            if sums[t] < vals[t] and splittable[s ^ t]:
                if best == 0 or _canonical_prefer(t, best):
                    best = t
            if sub == 0:
                break
            sub = (sub - 1) & rest
        if best:
            splittable[s] = True
            choice[s] = best
    if not splittable[full]:
        satisfied = tuple(c for c in range(1, full) if sums[c] >= vals[c])
        return CoreReport(WEAK, True, satisfied=satisfied)
    blocks = []
    s = full
    while s:
        blocks.append(choice[s])
        s ^= choice[s]
    cert = Partition._unchecked(n, tuple(sorted(blocks, key=lambda b: b & -b)))
    return CoreReport(WEAK, False, partition=cert)


def _feasible_with(game: Game, required: frozenset) -> tuple | None:
    """Witness in the efficient set satisfying every coalition in ``required``."""
    vals = game._values
    n = game.n
    lower = [vals[1 << i] for i in range(n)]
    constraints = [([1] * n, ratlp.EQ, vals[game.full])]
    for c in sorted(required):
        if c & (c - 1) == 0:
            continue  # implied by the lower bounds
        row = [1 if c >> i & 1 else 0 for i in range(n)]
        constraints.append((row, ratlp.GE, vals[c]))
    out = ratlp.lp_solve(ratlp.LinearProgram(n, constraints=constraints, lower=lower))
    return out.witness if out.status == "optimal" else None


def _unhit_partition(game: Game, required: frozenset) -> tuple[int, ...] | None:
    """A non-grand partition with no block in ``required``, fewest blocks
    first, canonical among those; None when every non-grand partition is hit."""
    full = game.full
    big = full.bit_length() + 2
    minb = [big] * (full + 1)
    pick = [0] * (full + 1)
    minb[0] = 0
    for s in range(1, full + 1):
        low = s & -s
        rest = s ^ low
        sub = rest
        while True:
            t = low | sub
            if (s != full or t != full) and t not in required:
                cand = 1 + minb[s ^ t]
                if cand < minb[s] or (cand == minb[s] and _canonical_prefer(t, pick[s])):
                    minb[s] = cand
                    pick[s] = t
            if sub == 0:
                break
            sub = (sub - 1) & rest
    if minb[full] >= big:
        return None
    blocks = []
    s = full
    while s:
        blocks.append(pick[s])
        s ^= pick[s]
    return tuple(sorted(blocks, key=lambda b: b & -b))


def weak_core_nonempty(game: Game) -> tuple[bool, tuple | None]:
    """Complete branch-and-prune for weak-core nonemptiness.

    Grows a set of coalitions required to be satisfied: a node is pruned when
    the requirement set is infeasible, succeeds when it hits every non-grand
    partition, and otherwise branches on the blocks of an unhit partition.
    Singleton requirements are free (individual rationality implies them), so
    they seed the root. When the medium core is nonempty the efficient
    equal-surplus split is already a member and the search is skipped.
    """
    n = game.n
    if medium_core_nonempty(game):
        return True, equal_surplus_allocation(game, Partition.grand(n))
    dead: set[frozenset] = set()

    def search(required: frozenset) -> tuple | None:
        if required in dead:
            return None
        witness = _feasible_with(game, required)
        if witness is None:
            dead.add(required)
            return None
        violating = _unhit_partition(game, required)
        if violating is None:
            return witness
        for b in violating:
            got = search(required | {b})
            if got is not None:
                return got
        dead.add(required)
        return None

    root = frozenset(1 << i for i in range(n))
    got = search(root)
    return (got is not None), got


def core_contains(game: Game, x: Sequence[Rational], mode: str) -> CoreReport:
    """Dispatch membership by mode."""
    _check_mode(mode)
    if mode == STRONG:
        return strong_core_contains(game, x)
    if mode == MEDIUM:
        return medium_core_contains(game, x)
    return weak_core_contains(game, x)


def _blockwise_core_nonempty_cached(game: Game, mask: int, mode: str) -> bool:
    """Nonemptiness of the mode's core on the subgame of ``mask``; memoized.

    Small blocks collapse: with two players all three cores equal the
    efficient set, and with three players the weak core does too, because
    every non-grand partition of a 3-set contains an always-satisfied
    singleton. The strong check goes through the covering program, whose
    optimum the block value must reach; that is a far smaller program than
    the direct feasibility system and independently cross-checks it.
    """
    size = mask.bit_count()
    if size == 1:
        return True
    vals = game._values
    low = mask & -mask
    if size == 2:
        return vals[mask] >= vals[low] + vals[mask ^ low]
    if mode == WEAK and size == 3:
        mid = (mask ^ low) & -(mask ^ low)
        return vals[mask] >= vals[low] + vals[mid] + vals[mask ^ low ^ mid]
    memo = game._memo
    key = ("ne", mode, mask)
    got = memo.get(key)
    if got is None:
        sub, _ = subgame(game, mask)
        if mode == STRONG:
            if size <= ratlp.BALANCE_LP_MAX_N:
                got = vals[mask] >= ratlp.balancedness_value(sub)
            else:
                got = strong_core_nonempty(sub)[0]
        elif mode == MEDIUM:
            got = medium_core_nonempty(sub)
        else:
            got = weak_core_nonempty(sub)[0]
        memo[key] = got
    return got

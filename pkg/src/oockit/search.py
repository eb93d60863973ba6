"""Brute-force oracles: exhaustive code search, equi-difference search,
tight-cover search, and cyclic group-divisible-design base block search.

These are the ground truth the closed-form bounds and the constructions are
tested against; they share a budget tracker and are deterministic for a
fixed seed and budget.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass, field

from .core import Code, CodeParams, Codeword, make_codeword, normalize
from .bounds import gdd_exists
from .verify import verify_code

EXHAUSTIVE = "exhaustive"
BRANCH_AND_BOUND = "branch_and_bound"
EXACT_COVER = "exact_cover"
HILL_CLIMB = "hill_climb_restart"


@dataclass(frozen=True)
class SearchConfig:
    time_budget: float = 60.0
    node_budget: int = 10**9
    strategy: str = EXHAUSTIVE
    seed: int = 0


@dataclass
class SearchOutcome:
    best: object  # Code, GddBaseBlocks, or None
    best_size: int
    proven_optimal: bool
    nodes: int
    elapsed: float


@dataclass
class GddBaseBlocks:
    """Base blocks of an m-cyclic triple group-divisible design.

    Developing every block by +1 mod m on slots must cover each cross-group
    (row pair, difference) class exactly once; rows of a block lie in three
    distinct groups.
    """

    m: int
    group_type: list[tuple[int, int]]  # (rows per group, group count) pairs
    groups: list[list[int]]
    base_blocks: list[Codeword] = field(default_factory=list)

    def n_rows(self) -> int:
        return sum(v * u for v, u in self.group_type)

    def validate(self) -> None:
        n, m = self.n_rows(), self.m
        group_of: dict[int, int] = {}
        for gid, rows in enumerate(self.groups):
            for r in rows:
                group_of[r] = gid
        if sorted(group_of) != list(range(n)):
            raise ValueError("groups must partition the row set")
        coverage: Counter = Counter()
        for block in self.base_blocks:
            rows = [r for r, _ in block]
            if len(block) != 3 or len({group_of[r] for r in rows}) != 3:
                raise ValueError(f"block {block} does not meet three distinct groups")
            for (i, x), (j, y) in itertools.combinations(block, 2):
                coverage[(i, j, (y - x) % m)] += 1
        for i in range(n):
            for j in range(i + 1, n):
                if group_of[i] == group_of[j]:
                    continue
                for d in range(m):
                    if coverage[(i, j, d)] != 1:
                        raise ValueError(
                            f"class ({i},{j},{d}) covered {coverage[(i, j, d)]} times"
                        )
        if sum(coverage.values()) != 3 * len(self.base_blocks):
            raise ValueError("stray coverage outside cross-group classes")


class _Budget:
    """Node and wall-clock budget shared by a search call."""

    def __init__(self, config: SearchConfig):
        self.t0 = time.monotonic()
        self.deadline = self.t0 + config.time_budget
        self.node_budget = config.node_budget
        self.nodes = 0
        self.exhausted = False

    def tick(self, k: int = 1) -> bool:
        self.nodes += k
        if self.nodes >= self.node_budget:
            self.exhausted = True
        elif self.nodes % 1024 < k and time.monotonic() > self.deadline:
            self.exhausted = True
        return not self.exhausted

    def elapsed(self) -> float:
        return time.monotonic() - self.t0


class _BudgetExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# exact cover (dancing links)
# ---------------------------------------------------------------------------


class _ExactCover:
    """Array-based dancing links; rows are tuples of column indices."""

    def __init__(self, n_cols: int, rows: list[tuple[int, ...]]):
        size = 1 + n_cols + sum(len(r) for r in rows)
        self.L = list(range(size))
        self.R = list(range(size))
        self.U = list(range(size))
        self.D = list(range(size))
        self.C = [0] * size
        self.S = [0] * (n_cols + 1)
        self.ROW = [-1] * size
        for c in range(n_cols + 1):
            self.L[c] = c - 1 if c > 0 else n_cols
            self.R[c] = c + 1 if c < n_cols else 0
        node = n_cols + 1
        for rid, cols in enumerate(rows):
            first = node
            for col in cols:
                h = col + 1
                self.U[node] = self.U[h]
                self.D[node] = h
                self.D[self.U[h]] = node
                self.U[h] = node
                self.C[node] = h
                self.ROW[node] = rid
                self.S[h] += 1
                if node > first:
                    self.L[node] = node - 1
                    self.R[node - 1] = node
                node += 1
            last = node - 1
            self.L[first] = last
            self.R[last] = first

    def _cover(self, c: int) -> None:
        L, R, U, D, C, S = self.L, self.R, self.U, self.D, self.C, self.S
        R[L[c]] = R[c]
        L[R[c]] = L[c]
        i = D[c]
        while i != c:
            j = R[i]
            while j != i:
                D[U[j]] = D[j]
                U[D[j]] = U[j]
                S[C[j]] -= 1
                j = R[j]
            i = D[i]

    def _uncover(self, c: int) -> None:
        L, R, U, D, C, S = self.L, self.R, self.U, self.D, self.C, self.S
        i = U[c]
        while i != c:
            j = L[i]
            while j != i:
                S[C[j]] += 1
                D[U[j]] = j
                U[D[j]] = j
                j = L[j]
            i = U[i]
        R[L[c]] = c
        L[R[c]] = c

    def solve(self, budget: _Budget) -> list[int] | None:
        """First solution as row ids, or None when provably none exists.

        Raises _BudgetExceeded when the budget runs out first.
        """
        solution: list[int] = []
        if self._search(solution, budget):
            return solution
        return None

    def _search(self, solution: list[int], budget: _Budget) -> bool:
        R, D, L, S, C = self.R, self.D, self.L, self.S, self.C
        if R[0] == 0:
            return True
        c = R[0]
        best, j = S[c], R[c]
        while j != 0:
            if S[j] < best:
                best, c = S[j], j
            j = R[j]
        if best == 0:
            return False
        self._cover(c)
        r = D[c]
        while r != c:
            if not budget.tick():
                raise _BudgetExceeded
            solution.append(self.ROW[r])
            j = R[r]
            while j != r:
                self._cover(C[j])
                j = R[j]
            if self._search(solution, budget):
                return True
            j = L[r]
            while j != r:
                self._uncover(C[j])
                j = L[j]
            solution.pop()
            r = D[r]
        self._uncover(c)
        return False


# ---------------------------------------------------------------------------
# maximum packing over canonical difference classes
# ---------------------------------------------------------------------------


def _class_maps(n: int, m: int) -> tuple[dict, dict, int]:
    """Bit indices for canonical pure and mixed difference classes."""
    pure_bits: dict[tuple[int, int], int] = {}
    mixed_bits: dict[tuple[int, int, int], int] = {}
    bit = 0
    for i in range(n):
        for d in range(1, m // 2 + 1):
            pure_bits[(i, d)] = bit
            bit += 1
    for i in range(n):
        for j in range(i + 1, n):
            for d in range(m):
                mixed_bits[(i, j, d)] = bit
                bit += 1
    return pure_bits, mixed_bits, bit


def _codeword_mask(cw: Codeword, m: int, pure_bits, mixed_bits) -> tuple[int, int, int]:
    """(mask, pure bit count, mixed bit count) of a codeword's classes."""
    pure_used, mixed_used = set(), set()
    for a in range(len(cw)):
        i, x = cw[a]
        for b in range(a + 1, len(cw)):
            j, y = cw[b]
            if i == j:
                d = (y - x) % m
                pure_used.add(pure_bits[(i, min(d, m - d))])
            else:
                mixed_used.add(mixed_bits[(i, j, (x - y) % m)])
    mask = 0
    for bit in pure_used | mixed_used:
        mask |= 1 << bit
    return mask, len(pure_used), len(mixed_used)


def _max_packing(
    masks: list[int],
    usage: list[tuple[int, int]],
    pure_capacity: int,
    mixed_capacity: int,
    budget: _Budget,
) -> tuple[list[int], bool]:
    """Largest set of indices with pairwise disjoint masks.

    Uses the capacity bound: with p pure bits and q mixed bits free, at most
    floor(p/2 + q/3) weight-3 codewords can still fit (every codeword burns
    at least two pure bits, or one pure and two mixed, or three mixed).
    """
    best: list[int] = []
    order = list(range(len(masks)))
    min_bits = max(min((p + q for p, q in usage), default=1), 1)
    # the p/2 + q/3 rate bound is valid only when every candidate pays
    # at least that rate (true for weight-3 codewords)
    lp_valid = all(3 * p + 2 * q >= 6 for p, q in usage)

    def capacity(p_free: int, q_free: int) -> int:
        cap = (p_free + q_free) // min_bits
        if lp_valid:
            cap = min(cap, (3 * p_free + 2 * q_free) // 6)
        return cap

    def extend(cands: list[int], used: int, chosen: list[int], p_free: int, q_free: int):
        nonlocal best
        if len(chosen) > len(best):
            best = chosen.copy()
        cap = capacity(p_free, q_free)
        for pos, ci in enumerate(cands):
            if len(chosen) + min(len(cands) - pos, cap) <= len(best):
                return
            if not budget.tick():
                raise _BudgetExceeded
            mask = masks[ci]
            nxt = used | mask
            rest = [cj for cj in cands[pos + 1 :] if masks[cj] & nxt == 0]
            chosen.append(ci)
            extend(rest, nxt, chosen, p_free - usage[ci][0], q_free - usage[ci][1])
            chosen.pop()

    try:
        extend(order, 0, [], pure_capacity, mixed_capacity)
        return best, True
    except _BudgetExceeded:
        return best, False


def optimal_search(
    n: int, m: int, lambda_a: int = 2, config: SearchConfig | None = None, k: int = 3
) -> SearchOutcome:
    """Exhaustive maximum-size (n x m, k, lambda_a, 1) code by backtracking.

    Codewords are enumerated once per translation orbit; the code is
    assembled in lexicographic order, which breaks the slot-shift symmetry.
    """
    config = config or SearchConfig()
    budget = _Budget(config)
    params = CodeParams(n, m, k, lambda_a, 1)
    cells = [(i, x) for i in range(n) for x in range(m)]
    seen: set[Codeword] = set()
    for combo in itertools.combinations(cells, k):
        seen.add(normalize(make_codeword(combo), m))
    candidates = []
    for cw in sorted(seen):
        pure: Counter = Counter()
        for (i, x), (j, y) in itertools.permutations(cw, 2):
            if i == j:
                pure[(x - y) % m] += 1
        if max(pure.values(), default=0) <= lambda_a:
            candidates.append(cw)
    pure_bits, mixed_bits, _ = _class_maps(n, m)
    masks, usage = [], []
    for cw in candidates:
        mask, p, q = _codeword_mask(cw, m, pure_bits, mixed_bits)
        masks.append(mask)
        usage.append((p, q))
    chosen, complete = _max_packing(
        masks, usage, len(pure_bits), len(mixed_bits), budget
    )
    code = Code(params, [candidates[i] for i in chosen])
    report = verify_code(code)
    if not report.passed:
        raise AssertionError("search produced an unverifiable witness")
    return SearchOutcome(code, len(chosen), complete, budget.nodes, budget.elapsed())


def _equi_vertices(m: int, lambda_a: int) -> list[tuple[int, frozenset[int]]]:
    """Generators of distinct {0, a, 2a} difference supports, smallest first.

    lambda_a < 3 rules out generators with 3a = 0 (mod m), whose difference
    multiset peaks at three.
    """
    by_support: dict[frozenset[int], int] = {}
    for a in range(1, m):
        if (2 * a) % m == 0:
            continue
        if lambda_a < 3 and (3 * a) % m == 0:
            continue
        supp = frozenset({a, m - a, (2 * a) % m, (m - 2 * a) % m})
        by_support.setdefault(supp, a)
    return sorted((a, supp) for supp, a in by_support.items())


def equi_search(m: int, lambda_a: int = 2, config: SearchConfig | None = None) -> SearchOutcome:
    """Exact largest equi-difference code on Z_m with the given lambda_a.

    lambda_a = 2 searches 1-D (m,3,2,1) codes, lambda_a = 3 the
    conflict-avoiding relaxation.
    """
    config = config or SearchConfig()
    budget = _Budget(config)
    verts = _equi_vertices(m, lambda_a)
    masks = [sum(1 << d for d in supp) for _, supp in verts]
    usage = [(len(supp), 0) for _, supp in verts]
    min_supp = min((len(supp) for _, supp in verts), default=1)
    best: list[int] = []
    complete = True

    def extend(cands: list[int], used: int, chosen: list[int], free: int):
        nonlocal best
        if len(chosen) > len(best):
            best = chosen.copy()
        for pos, ci in enumerate(cands):
            if len(chosen) + min(len(cands) - pos, free // min_supp) <= len(best):
                return
            if not budget.tick():
                raise _BudgetExceeded
            nxt = used | masks[ci]
            rest = [cj for cj in cands[pos + 1 :] if masks[cj] & nxt == 0]
            chosen.append(ci)
            extend(rest, nxt, chosen, free - usage[ci][0])
            chosen.pop()

    try:
        extend(list(range(len(verts))), 0, [], m - 1)
    except _BudgetExceeded:
        complete = False
    code = Code(
        CodeParams(1, m, 3, lambda_a, 1),
        [make_codeword(((0, 0), (0, verts[i][0]), (0, 2 * verts[i][0] % m))) for i in best],
    )
    report = verify_code(code)
    if not report.passed:
        raise AssertionError("search produced an unverifiable witness")
    return SearchOutcome(code, len(best), complete, budget.nodes, budget.elapsed())


def tight_search(m: int, config: SearchConfig | None = None) -> SearchOutcome:
    """Partition Z_m minus zero into {0,a,2a} difference supports, if possible.

    Exact cover search; a completed run without a solution proves that no
    tight equi-difference conflict-avoiding code of length m exists.
    """
    config = config or SearchConfig()
    budget = _Budget(config)
    if m == 1:
        return SearchOutcome(Code(CodeParams(1, 1, 3, 3, 1), []), 0, True, 0, budget.elapsed())
    verts = _equi_vertices(m, lambda_a=3)
    rows = [tuple(sorted(d - 1 for d in supp)) for _, supp in verts]
    cover = _ExactCover(m - 1, rows)
    try:
        picked = cover.solve(budget)
    except _BudgetExceeded:
        return SearchOutcome(None, 0, False, budget.nodes, budget.elapsed())
    if picked is None:
        return SearchOutcome(None, 0, True, budget.nodes, budget.elapsed())
    gens = sorted(verts[i][0] for i in picked)
    code = Code(
        CodeParams(1, m, 3, 3, 1),
        [make_codeword(((0, 0), (0, a), (0, 2 * a % m))) for a in gens],
    )
    report = verify_code(code)
    if not report.passed:
        raise AssertionError("search produced an unverifiable witness")
    return SearchOutcome(code, len(gens), True, budget.nodes, budget.elapsed())


# ---------------------------------------------------------------------------
# m-cyclic triple GDD of type (3m)^u
# ---------------------------------------------------------------------------


def _gdd_frame(u: int, m: int):
    n = 3 * u
    group_of = [r // 3 for r in range(n)]
    pairs = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if group_of[i] != group_of[j]
    ]
    pair_id = {pr: t for t, pr in enumerate(pairs)}
    return n, group_of, pairs, pair_id


def _gdd_block_classes(block: Codeword, m: int, pair_id) -> tuple[int, ...]:
    out = []
    for (i, x), (j, y) in itertools.combinations(block, 2):
        out.append(pair_id[(i, j)] * m + (y - x) % m)
    return tuple(out)


def _gdd_all_blocks(u: int, m: int) -> list[Codeword]:
    """All normalized candidate base blocks: three rows in distinct groups,
    first slot pinned to zero."""
    blocks = []
    for g1, g2, g3 in itertools.combinations(range(u), 3):
        for r1 in range(3 * g1, 3 * g1 + 3):
            for r2 in range(3 * g2, 3 * g2 + 3):
                for r3 in range(3 * g3, 3 * g3 + 3):
                    for x2 in range(m):
                        for x3 in range(m):
                            blocks.append(((r1, 0), (r2, x2), (r3, x3)))
    return blocks


def _gdd_exact_cover(u: int, m: int, budget: _Budget, rng) -> list[Codeword] | None:
    n, _, pairs, pair_id = _gdd_frame(u, m)
    n_cols = len(pairs) * m
    blocks = _gdd_all_blocks(u, m)
    cols = [_gdd_block_classes(b, m, pair_id) for b in blocks]
    order = list(range(len(blocks)))
    while not budget.exhausted:
        rng.shuffle(order)
        cover = _ExactCover(n_cols, [cols[i] for i in order])
        slice_budget = _Budget(SearchConfig(time_budget=10**9, node_budget=200_000))
        slice_budget.deadline = budget.deadline
        try:
            picked = cover.solve(slice_budget)
        except _BudgetExceeded:
            budget.tick(slice_budget.nodes)
            continue
        budget.tick(slice_budget.nodes)
        if picked is not None:
            return [blocks[order[i]] for i in picked]
        return None  # exhausted the whole tree: no cover exists
    return None


def _gdd_hill_climb(u: int, m: int, budget: _Budget, rng) -> list[Codeword] | None:
    n, group_of, pairs, pair_id = _gdd_frame(u, m)
    n_classes = len(pairs) * m
    target = m * n * (n - 3) // 6

    def covering(cid: int) -> list[Codeword]:
        i, j = pairs[cid // m]
        d = cid % m
        out = []
        for t in range(n):
            if group_of[t] in (group_of[i], group_of[j]):
                continue
            for z in range(m):
                cells = sorted(((i, 0), (j, d), (t, z)))
                shift = cells[0][1]
                out.append(tuple((r, (s - shift) % m) for r, s in cells))
        return out

    classes_of = {}

    def block_classes(block):
        if block not in classes_of:
            classes_of[block] = _gdd_block_classes(block, m, pair_id)
        return classes_of[block]

    while not budget.exhausted:
        cov = [0] * n_classes
        count: Counter = Counter()
        uncovered = set(range(n_classes))
        overcovered: set[int] = set()

        def add(block):
            count[block] += 1
            for c in block_classes(block):
                cov[c] += 1
                if cov[c] == 1:
                    uncovered.discard(c)
                elif cov[c] == 2:
                    overcovered.add(c)

        def remove(block):
            count[block] -= 1
            if count[block] == 0:
                del count[block]
            for c in block_classes(block):
                cov[c] -= 1
                if cov[c] == 0:
                    uncovered.add(c)
                elif cov[c] == 1:
                    overcovered.discard(c)

        # greedy start: favour blocks whose classes are all uncovered
        while sum(count.values()) < target:
            cid = rng.choice(tuple(uncovered))
            cands = covering(cid)
            gains = [
                sum(1 for c in block_classes(b) if cov[c] == 0) for b in cands
            ]
            top = max(gains)
            add(rng.choice([b for b, g in zip(cands, gains) if g == top]))

        stall = 0
        best_deficit = len(uncovered)
        while uncovered and budget.tick():
            cid = rng.choice(tuple(uncovered))
            cands = covering(cid)
            if rng.random() < 0.02:
                blk = rng.choice(cands)
            else:
                gains = [
                    sum(1 for c in block_classes(b) if cov[c] == 0) for b in cands
                ]
                top = max(gains)
                blk = rng.choice([b for b, g in zip(cands, gains) if g == top])
            add(blk)
            oid = rng.choice(tuple(overcovered))
            victims = [b for b in count if oid in block_classes(b)]
            if rng.random() < 0.02:
                victim = rng.choice(victims)
            else:
                damages = [
                    sum(1 for c in block_classes(b) if cov[c] == 1) for b in victims
                ]
                low = min(damages)
                victim = rng.choice([b for b, g in zip(victims, damages) if g == low])
            remove(victim)
            if len(uncovered) < best_deficit:
                best_deficit = len(uncovered)
                stall = 0
            else:
                stall += 1
                if stall > 4000 + 40 * n_classes:
                    break  # restart from a fresh greedy state
        if not uncovered:
            out = []
            for block, c in count.items():
                out.extend([block] * c)
            return out
    return None


def gdd_search(u: int, m: int, config: SearchConfig | None = None) -> SearchOutcome:
    """Base blocks of an m-cyclic triple GDD of type (3m)^u.

    Exact cover proves existence; the hill-climb strategy only hunts for a
    witness.  Either way the witness is validated before being returned.
    """
    if u < 3:
        raise ValueError(f"need at least u = 3 groups, got {u}")
    config = config or SearchConfig()
    budget = _Budget(config)
    if not gdd_exists(3, u, m):
        return SearchOutcome(None, 0, True, 0, budget.elapsed())
    rng = random.Random(config.seed)
    if config.strategy == HILL_CLIMB:
        blocks = _gdd_hill_climb(u, m, budget, rng)
        proven = False
    else:
        blocks = _gdd_exact_cover(u, m, budget, rng)
        proven = blocks is not None
    if blocks is None:
        return SearchOutcome(None, 0, False, budget.nodes, budget.elapsed())
    gdd = GddBaseBlocks(
        m=m,
        group_type=[(3, u)],
        groups=[[3 * t, 3 * t + 1, 3 * t + 2] for t in range(u)],
        base_blocks=sorted(blocks),
    )
    gdd.validate()
    return SearchOutcome(gdd, len(blocks), proven, budget.nodes, budget.elapsed())

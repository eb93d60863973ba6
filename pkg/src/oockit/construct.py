"""Constructions for optimal codes; every output re-verifies before returning.

Each family asserts its claimed size (and, for 1-D codes, its claimed
difference leave) against what was actually built.  A mismatch raises
VerificationFailure rather than repairing anything silently, so
transcription slips cannot leak out as codes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import in_S, me_prime, psi_e_exact, tight_admissible
from .core import (
    Code,
    CodeParams,
    Codeword,
    SearchExhausted,
    UnsupportedParameterError,
    VerificationFailure,
    make_codeword,
)
from .search import (
    EXACT_COVER,
    HILL_CLIMB,
    GddBaseBlocks,
    SearchConfig,
    equi_search,
    gdd_search,
    tight_search,
)
from .verify import structural_facts, verify_code


@dataclass(frozen=True)
class ConstructionResult:
    code: Code
    claimed_size: int
    claimed_leave: frozenset[int] | None
    branch: str
    verified: bool

    @property
    def m(self) -> int:
        return self.code.params.m


def _finalize(code, claimed_size, claimed_leave, branch) -> ConstructionResult:
    report = verify_code(code)
    if not report.passed:
        raise VerificationFailure(
            f"{branch}: correlation check failed "
            f"(auto_ok={report.auto_ok}, cross_ok={report.cross_ok})",
            report.witnesses,
        )
    if code.size() != claimed_size:
        raise VerificationFailure(
            f"{branch}: built {code.size()} codewords, claimed {claimed_size}"
        )
    leave = None
    if claimed_leave is not None:
        leave = frozenset(claimed_leave)
        actual = structural_facts(code).difference_leave
        if actual != leave:
            raise VerificationFailure(
                f"{branch}: difference leave mismatch; "
                f"missing={sorted(leave - actual)}, extra={sorted(actual - leave)}"
            )
    return ConstructionResult(code, claimed_size, leave, branch, True)


def _odds(lo: int, hi: int) -> list[int]:
    start = lo if lo % 2 == 1 else lo + 1
    return list(range(start, hi + 1, 2))


def _triple(m: int, a: int, row: int = 0) -> Codeword:
    """The codeword {0, a, 2a} on the given row of Z_m."""
    return make_codeword(((row, 0), (row, a % m), (row, 2 * a % m)))


def _one_row_code(m: int, generators, lambda_a: int = 2) -> Code:
    return Code(CodeParams(1, m, 3, lambda_a, 1), [_triple(m, a) for a in generators])


# ---------------------------------------------------------------------------
# equi-difference 1-D families
# ---------------------------------------------------------------------------


def equi_2mod4(m: int) -> ConstructionResult:
    """Optimal equi-difference code on Z_m for m = 2 (mod 4).

    Generators 1, 3, ..., m/2 - 2; the only uncovered difference is m/2.
    """
    if m % 4 != 2:
        raise UnsupportedParameterError(f"family needs m = 2 (mod 4), got {m}")
    code = _one_row_code(m, _odds(1, m // 2 - 2))
    return _finalize(code, (m - 2) // 4, {m // 2}, "equi/2mod4")


def g_regular_4g(g: int) -> ConstructionResult:
    """g-regular equi-difference code on Z_{4g} with ceil(g/2) codewords.

    Generators are the odd integers in [g+1, 2g-1] (even g) or [g, 2g-1]
    (odd g); the order-g subgroup 4.[1, g-1] stays untouched for filling.
    """
    if g < 1:
        raise ValueError(f"need g >= 1, got {g}")
    m = 4 * g
    gens = _odds(g + 1, 2 * g - 1) if g % 2 == 0 else _odds(g, 2 * g - 1)
    leave = set(_odds(1, g - 1)) | set(_odds(3 * g + 1, 4 * g - 1)) | {
        4 * t for t in range(1, g)
    }
    code = _one_row_code(m, gens)
    return _finalize(code, (g + 1) // 2, leave, "gregular/4g")


def fill_regular(outer: ConstructionResult, inner: ConstructionResult) -> ConstructionResult:
    """Fill the untouched subgroup of a g-regular code with a code on Z_g.

    Keeps the outer codewords and adds the inner ones scaled by m/g; the
    leave is the outer leave outside the subgroup plus the scaled inner
    leave.
    """
    if not (outer.verified and inner.verified):
        raise ValueError("filling requires verified inputs")
    m = outer.code.params.m
    g = inner.code.params.m
    if g >= m or m % g != 0:
        raise ValueError(f"inner length {g} must properly divide outer length {m}")
    outer_facts = structural_facts(outer.code)
    inner_facts = structural_facts(inner.code)
    if g not in outer_facts.regular_subgroups:
        raise ValueError(f"outer code is not {g}-regular")
    if not (outer_facts.is_equi_difference and inner_facts.is_equi_difference):
        raise ValueError("filling requires equi-difference inputs")
    w = m // g
    scaled = [
        make_codeword(((0, (w * s) % m) for _, s in cw)) for cw in inner.code.codewords
    ]
    lam = max(outer.code.params.lambda_a, inner.code.params.lambda_a)
    code = Code(CodeParams(1, m, 3, lam, 1), list(outer.code.codewords) + scaled)
    subgroup = {w * t for t in range(1, g)}
    leave = (set(outer_facts.difference_leave) - subgroup) | {
        (w * d) % m for d in inner_facts.difference_leave
    }
    size = outer.code.size() + inner.code.size()
    return _finalize(code, size, leave, f"fill/{g}regular")


def quadruple(inner: ConstructionResult) -> ConstructionResult:
    """Blow an equi-difference code on Z_g up to Z_{4g}.

    The carrier is the g-regular family on Z_{4g}; adds ceil(g/2) codewords
    and turns the leave L into 4.L plus two odd intervals.
    """
    g = inner.code.params.m
    m = 4 * g
    res = fill_regular(g_regular_4g(g), inner)
    inner_leave = structural_facts(inner.code).difference_leave
    leave = (
        {(4 * d) % m for d in inner_leave}
        | set(_odds(1, g - 1))
        | set(_odds(3 * g + 1, 4 * g - 1))
    )
    size = (m + 7) // 8 + inner.code.size()
    return _finalize(res.code, size, leave, "quadruple")


def _power4_tail(s: int, r: int) -> set[int]:
    """Odd intervals accumulated by s rounds of quadrupling Z_r."""
    out: set[int] = set()
    for i in range(1, s + 1):
        scale = 4 ** (s - i)
        base = 4 ** (i - 1) * r
        for x in _odds(1, base - 1) + _odds(3 * base + 1, 4 * base - 1):
            out.add(scale * x)
    return out


STANDARD = "standard"
HALF_FREE = "half_free"


def equi_power4(s: int, r: int, variant: str = STANDARD) -> ConstructionResult:
    """Optimal equi-difference code on Z_{4^s r} for r = 2 (mod 4).

    The standard variant leaves the half period uncovered; the half-free
    variant swaps one codeword at the first quadrupling stage so the half
    period is used and {3r/2, 5r/2} (scaled) is left instead.
    """
    if r % 4 != 2 or r < 2:
        raise UnsupportedParameterError(f"family needs r = 2 (mod 4), got r={r}")
    if variant not in (STANDARD, HALF_FREE):
        raise UnsupportedParameterError(f"unknown variant {variant!r}")
    if s < 0 or (variant == HALF_FREE and s < 1):
        raise UnsupportedParameterError(f"variant {variant} needs s >= 1, got s={s}")
    size = (2 ** (2 * s + 1) * r + r - 6) // 12
    half = r // 2
    if variant == STANDARD:
        res = equi_2mod4(r)
        for _ in range(s):
            res = quadruple(res)
        leave = {half * 4**s} | _power4_tail(s, r)
        return _finalize(res.code, size, leave, "power4/standard")
    stage = quadruple(equi_2mod4(r))
    cws = list(stage.code.codewords)
    cws.remove(_triple(4 * r, 3 * r // 2))
    cws.append(_triple(4 * r, r))
    swapped = Code(CodeParams(1, 4 * r, 3, 2, 1), cws)
    stage_leave = {3 * half, 5 * half} | _power4_tail(1, r)
    res = _finalize(swapped, (3 * r - 2) // 4, stage_leave, "power4/half_free_stage1")
    for _ in range(s - 1):
        res = quadruple(res)
    leave = {3 * half * 4 ** (s - 1), 5 * half * 4 ** (s - 1)} | _power4_tail(s, r)
    return _finalize(res.code, size, leave, "power4/half_free")


def tight_derived(r: int, s: int = 0) -> ConstructionResult:
    """Optimal equi-difference code on Z_{4^s r} grown from a tight base.

    r = 1,5 (mod 12) admissible: the tight partition itself (empty leave at
    s = 0).  r = 3 (mod 12) with r/3 admissible: the tight partition minus
    its third-period codeword (leave {r/3, 2r/3} at s = 0).
    """
    if r < 1 or r % 2 == 0:
        raise UnsupportedParameterError(f"family needs odd r >= 1, got {r}")
    if s < 0:
        raise ValueError(f"need s >= 0, got {s}")
    step = ((2 ** (2 * s - 1) - 2) // 3) * r if s >= 1 else 0
    if r == 1:
        base = _finalize(Code(CodeParams(1, 1, 3, 2, 1), []), 0, set(), "tight/base")
        size = 0 if s == 0 else step + 1
        final_leave = _power4_tail(s, r)
        branch = "tight_derived/1or5mod12"
    elif r % 12 in (1, 5):
        if not tight_admissible(r).admissible:
            raise UnsupportedParameterError(f"r={r} fails the tight admissibility clauses")
        base = _finalize(_tight_base(r), (r - 1) // 4, set(), "tight/base")
        size = (r - 1) // 4 if s == 0 else step + (3 * r + 1) // 4
        final_leave = _power4_tail(s, r)
        branch = "tight_derived/1or5mod12"
    elif r % 12 == 3:
        if not tight_admissible(r // 3).admissible:
            raise UnsupportedParameterError(
                f"r={r} fails the tight admissibility clauses for r/3"
            )
        code = _tight_base(r)
        code.codewords.remove(_triple(r, r // 3))
        base = _finalize(code, (r - 3) // 4, {r // 3, 2 * r // 3}, "tight/base")
        size = (r - 3) // 4 if s == 0 else step + (3 * r - 1) // 4
        final_leave = {4**s * (r // 3), 2 * 4**s * (r // 3)} | _power4_tail(s, r)
        branch = "tight_derived/3mod12"
    else:
        raise UnsupportedParameterError(f"r={r} is outside both tight-derived branches")
    res = base
    for _ in range(s):
        res = quadruple(res)
    return _finalize(res.code, size, final_leave, branch)


def _tight_base(r: int) -> Code:
    """Tight partition of Z_r minus zero, rebuilt with lambda_a = 2 headers."""
    outcome = tight_search(r)
    if outcome.best is None:
        if outcome.proven_optimal:
            raise UnsupportedParameterError(f"no tight partition of Z_{r} exists")
        raise SearchExhausted(f"tight partition search for Z_{r} ran out of budget")
    return Code(CodeParams(1, r, 3, 2, 1), list(outcome.best.codewords))


def prime_derived(p: int, s: int = 0) -> ConstructionResult:
    """Optimal equi-difference code on Z_{4^s p} for prime p >= 5.

    The base is a largest equi-difference conflict-avoiding code of length
    p found by search; since 3 does not divide p it is already a
    (p,3,2,1) code, and quadrupling lifts it.
    """
    me = me_prime(p).value  # validates primality and p >= 5
    outcome = equi_search(p, lambda_a=3)
    if not outcome.proven_optimal:
        raise SearchExhausted(f"equi-difference search for Z_{p} ran out of budget")
    if outcome.best_size != me:
        raise VerificationFailure(
            f"prime_derived: search found {outcome.best_size} codewords, formula says {me}"
        )
    base_code = Code(CodeParams(1, p, 3, 2, 1), list(outcome.best.codewords))
    res = _finalize(base_code, me, None, "prime/base")
    for _ in range(s):
        res = quadruple(res)
    size = me if s == 0 else ((2 ** (2 * s - 1) - 2) // 3) * p + (p + 1) // 2 + me
    return _finalize(res.code, size, res.claimed_leave, "prime_derived")


# ---------------------------------------------------------------------------
# explicit codes
# ---------------------------------------------------------------------------

_SLOTS_1D48 = [
    (0, 3, 6), (0, 7, 14), (0, 11, 22), (0, 15, 30), (0, 19, 38),
    (0, 23, 46), (0, 1, 17), (0, 5, 9), (0, 13, 21), (0, 12, 24),
]

_CELLS_3X8 = [
    ((0, 0), (0, 2), (0, 4)), ((1, 0), (1, 2), (1, 4)), ((2, 0), (2, 2), (2, 4)),
    ((0, 0), (0, 1), (1, 6)), ((0, 0), (0, 3), (1, 7)),
    ((1, 0), (1, 1), (2, 5)), ((1, 0), (1, 3), (2, 3)),
    ((0, 0), (2, 5), (2, 6)), ((0, 0), (2, 4), (2, 7)),
    ((0, 0), (1, 2), (2, 0)), ((0, 0), (1, 3), (2, 2)),
    ((0, 0), (1, 0), (2, 1)), ((0, 0), (1, 1), (2, 3)),
]

_PAIRS_3X4 = [(0, 0), (1, 3), (3, 2)]

_GENS_3X20 = [4, 5, 7, 9]
_MIDDLE_3X20 = [
    ((0, 0), (0, 1), (1, 18)), ((0, 0), (0, 3), (1, 19)),
    ((1, 0), (1, 1), (2, 18)), ((1, 0), (1, 3), (2, 19)),
    ((0, 0), (2, 17), (2, 18)), ((0, 0), (2, 16), (2, 19)),
]
_PAIRS_3X20 = [
    (0, 1), (1, 3), (2, 2), (3, 11), (4, 13), (5, 10), (6, 9), (7, 14),
    (8, 12), (9, 15), (10, 0), (11, 4), (12, 7), (13, 5), (14, 8), (15, 6),
]

_GENS_3X32 = [8, 9, 11, 13, 15]
_MIDDLE_3X32 = [
    ((0, 0), (0, 12), (1, 25)), ((0, 0), (0, 1), (1, 6)), ((0, 0), (0, 3), (1, 7)),
    ((0, 0), (0, 5), (1, 8)), ((0, 0), (0, 7), (1, 9)), ((0, 0), (0, 4), (1, 31)),
    ((1, 0), (1, 1), (2, 14)), ((1, 0), (1, 12), (2, 23)), ((1, 0), (1, 3), (2, 20)),
    ((1, 0), (1, 5), (2, 21)), ((1, 0), (1, 7), (2, 22)), ((1, 0), (1, 4), (2, 31)),
    ((0, 0), (2, 9), (2, 21)), ((0, 0), (2, 0), (2, 1)), ((0, 0), (2, 7), (2, 10)),
    ((0, 0), (2, 6), (2, 11)), ((0, 0), (2, 5), (2, 12)), ((0, 0), (2, 22), (2, 26)),
]
_PAIRS_3X32 = [
    (0, 8), (1, 4), (10, 28), (19, 31), (21, 30), (22, 29), (12, 14),
    (14, 20), (15, 19), (16, 16), (17, 18), (18, 23), (11, 3), (20, 13),
    (23, 17), (24, 2), (26, 24), (28, 15), (29, 25), (30, 27),
]

_GENS_3X52 = [4, 12, 16, 13, 15, 17, 19, 21, 23, 25]
_PAIRS_3X52 = [
    (0, 12), (2, 6), (3, 8), (4, 14), (5, 5), (6, 7), (11, 13), (1, 16),
    (14, 22), (16, 19), (18, 24), (7, 28), (12, 25), (13, 27), (22, 29),
    (8, 30), (9, 32), (10, 34), (20, 31), (24, 33), (15, 35), (17, 36),
    (19, 37), (21, 38), (23, 39), (33, 15), (34, 18), (27, 0), (28, 2),
    (29, 4), (30, 10), (32, 11), (25, 1), (31, 9), (26, 3), (35, 21),
    (36, 17), (37, 20), (38, 23), (39, 26),
]

EXPLICIT_IDS = ("1d48", "3x4", "3x8", "3x20", "3x32", "3x52")


def _rows3(m: int, generators) -> list[Codeword]:
    return [
        make_codeword(((x, 0), (x, a % m), (x, 2 * a % m)))
        for x in range(3)
        for a in generators
    ]


def explicit_code(code_id: str) -> ConstructionResult:
    """Verbatim transcriptions of the individually listed codes."""
    if code_id == "1d48":
        code = Code(
            CodeParams(1, 48, 3, 2, 1),
            [make_codeword((0, s) for s in slots) for slots in _SLOTS_1D48],
        )
        return _finalize(code, 10, None, "explicit/1d48")
    if code_id == "3x4":
        cws = [make_codeword(((x, 0), (x, 1), (x, 2))) for x in range(3)]
        cws += [make_codeword(((0, 0), (1, a), (2, b))) for a, b in _PAIRS_3X4]
        return _finalize(Code(CodeParams(3, 4, 3, 2, 1), cws), 6, None, "explicit/3x4")
    if code_id == "3x8":
        cws = [make_codeword(cells) for cells in _CELLS_3X8]
        return _finalize(Code(CodeParams(3, 8, 3, 2, 1), cws), 13, None, "explicit/3x8")
    if code_id == "3x20":
        cws = _rows3(20, _GENS_3X20)
        cws += [make_codeword(cells) for cells in _MIDDLE_3X20]
        cws += [make_codeword(((0, 0), (1, a), (2, b))) for a, b in _PAIRS_3X20]
        return _finalize(Code(CodeParams(3, 20, 3, 2, 1), cws), 34, None, "explicit/3x20")
    if code_id == "3x32":
        cws = _rows3(32, _GENS_3X32)
        cws += [make_codeword(cells) for cells in _MIDDLE_3X32]
        cws += [make_codeword(((0, 0), (1, a), (2, b))) for a, b in _PAIRS_3X32]
        return _finalize(Code(CodeParams(3, 32, 3, 2, 1), cws), 53, None, "explicit/3x32")
    if code_id == "3x52":
        cws = _rows3(52, _GENS_3X52)
        cws += [make_codeword(((0, 0), (0, 1 + 2 * i), (1, 46 + i))) for i in range(6)]
        cws += [make_codeword(((1, 0), (1, 1 + 2 * i), (2, 46 + i))) for i in range(6)]
        cws += [make_codeword(((0, 0), (2, 45 - i), (2, 46 + i))) for i in range(6)]
        cws += [make_codeword(((0, 0), (1, a), (2, b))) for a, b in _PAIRS_3X52]
        return _finalize(Code(CodeParams(3, 52, 3, 2, 1), cws), 88, None, "explicit/3x52")
    raise UnsupportedParameterError(f"unknown explicit code id {code_id!r}")


# ---------------------------------------------------------------------------
# two-row codes
# ---------------------------------------------------------------------------


def ooc_2xm(m: int) -> ConstructionResult:
    """Optimal two-row code for m = 0 (mod 4): 3m/4 codewords (2 at m = 4)."""
    if m % 4 != 0:
        raise UnsupportedParameterError(f"two-row family needs m = 0 (mod 4), got {m}")
    if m == 4:
        cws = [
            make_codeword(((0, 0), (0, 1), (0, 2))),
            make_codeword(((1, 0), (1, 1), (1, 2))),
        ]
        return _finalize(Code(CodeParams(2, 4, 3, 2, 1), cws), 2, None, "2xm/m4")
    cws: list[Codeword] = []

    def add(*cells):
        cws.append(make_codeword((r, s % m) for r, s in cells))

    if m % 8 == 0:
        for i in _odds(3, m // 4 - 1) + [m // 2 - 1]:
            add((0, 0), (0, i), (0, 2 * i))
        for i in _odds(m // 4 + 1, m // 2 - 1):
            add((1, 0), (1, i), (1, 2 * i))
        for i in range(m // 8, m // 4 - 1):
            add((0, 0), (0, 1 + 2 * i), (1, m // 4 - 1 + i))
        for i in range(m // 8):
            add((1, 0), (1, 1 + 2 * i), (0, 3 * m // 4 + 2 + i))
        for i in range(m // 8):
            add((0, 0), (0, 4 + 4 * i), (1, 3 * m // 4 + 1 + 2 * i))
        for i in range(m // 8):
            add((1, 0), (1, 4 + 4 * i), (0, m // 4 + 4 + 2 * i))
        add((0, 0), (0, 1), (1, 3 * m // 4 - 1))
        branch = "2xm/0mod8"
    else:
        for i in _odds(m // 4 + 2, m // 2 - 3):
            add((0, 0), (0, i), (0, 2 * i))
        for i in _odds(1, m // 4):
            add((1, 0), (1, i), (1, 2 * i))
        for i in range((m - 4) // 8 + 1):
            if i == 1:
                continue
            add((0, 0), (0, 1 + 2 * i), (1, m // 4 + i))
        for i in range((m + 4) // 8, m // 4):
            add((1, 0), (1, 1 + 2 * i), (0, 3 * m // 4 + 1 + i))
        for i in range(1, (m - 12) // 8 + 1):
            add((0, 0), (0, 4 + 4 * i), (1, 3 * m // 4 + 1 + 2 * i))
        for i in range((m - 12) // 8 + 1):
            add((1, 0), (1, 4 + 4 * i), (0, m // 4 + 2 + 2 * i))
        add((0, 0), (0, m // 2 - 1), (1, m // 4 - 2))
        add((0, 0), (0, 3), (1, 3 * m // 4))
        add((0, 0), (0, m // 2), (1, 3 * m // 4 + 1))
        add((0, 0), (0, 2), (0, 4))
        branch = "2xm/4mod8"
    code = Code(CodeParams(2, m, 3, 2, 1), cws)
    return _finalize(code, 3 * m // 4, None, branch)


# ---------------------------------------------------------------------------
# three-row codes
# ---------------------------------------------------------------------------


def _place_on_rows(sub: Code) -> list[Codeword]:
    """Three row-relabeled copies of a 1-D subcode."""
    out = []
    for x in range(3):
        for cw in sub.codewords:
            out.append(make_codeword((x, s) for _, s in cw))
    return out


def ooc_3xm(m: int) -> ConstructionResult:
    """Optimal three-row code in the residue classes the catalogue covers.

    Explicit lists for m in {4, 8, 20, 32, 52}; general families for
    m = 8 (mod 16), m = 32 (mod 64), and admissible m = 4, 20 (mod 48).
    """
    if m in (4, 8, 20, 32, 52):
        return explicit_code(f"3x{m}")
    if m % 16 == 8:
        return _ooc_3xm_8mod16(m)
    if m % 64 == 32:
        return _ooc_3xm_32mod64(m)
    if m % 48 in (4, 20) and m > 4:
        if not in_S(m // 4):
            raise UnsupportedParameterError(
                f"m={m}: m/4 fails the admissibility clauses of the mod-48 family"
            )
        return _ooc_3xm_4or20mod48(m)
    raise UnsupportedParameterError(f"no three-row family covers m={m}")


def _ooc_3xm_8mod16(m: int) -> ConstructionResult:
    sub = equi_power4(1, m // 4, HALF_FREE)
    cws = _place_on_rows(sub.code)

    def add(*cells):
        cws.append(make_codeword((r, s % m) for r, s in cells))

    for i in range(m // 8):
        add((0, 0), (0, 1 + 2 * i), (1, 7 * m // 8 + i))
    for i in range(m // 8):
        add((1, 0), (1, 1 + 2 * i), (2, m // 2 + 2 + i))
    for i in range(m // 8 - 1):
        add((0, 0), (2, 7 * m // 8 - 3 - i), (2, 7 * m // 8 + i))
    add((0, 0), (0, 3 * m // 8), (1, 3 * m // 4 - 1))
    add((1, 0), (1, 3 * m // 8), (2, 3 * m // 4))
    add((0, 0), (2, m - 1), (2, 0))
    add((0, 0), (2, 7 * m // 8 - 2), (2, m // 4 - 2))
    for i in range(3 * m // 8 - 1):
        add((0, 0), (1, i), (2, 1 + 2 * i))
    for i in range(3 * m // 8 - 1):
        if i == m // 8 - 2:
            continue
        add((0, 0), (1, 3 * m // 8 + i), (2, 2 + 2 * i))
    add((0, 0), (1, m // 2 - 2), (2, 7 * m // 8 - 1))
    code = Code(CodeParams(3, m, 3, 2, 1), cws)
    return _finalize(code, (27 * m - 8) // 16, None, "3xm/8mod16")


def _ooc_3xm_32mod64(m: int) -> ConstructionResult:
    sub = equi_power4(2, m // 16, HALF_FREE)
    cws = _place_on_rows(sub.code)

    def add(*cells):
        cws.append(make_codeword((r, s % m) for r, s in cells))

    for i in range(m // 8):
        add((0, 0), (0, 1 + 2 * i), (1, m // 8 + 2 + i))
    for i in range(m // 32):
        add((0, 0), (0, 4 + 8 * i), (1, 7 * m // 8 + 3 + 4 * i))
    for i in range(m // 8 - 1):
        add((1, 0), (1, 3 + 2 * i), (2, 5 * m // 8 + i))
    for i in range(m // 32):
        add((1, 0), (1, 4 + 8 * i), (2, 7 * m // 8 + 3 + 4 * i))
    for i in range(m // 8 - 1):
        add((0, 0), (2, m // 4 - 1 - i), (2, m // 4 + 2 + i))
    for i in range(m // 32):
        add((0, 0), (2, 3 * m // 4 - 2 - 4 * i), (2, 3 * m // 4 + 2 + 4 * i))
    add((0, 0), (0, 3 * m // 8), (1, 13 * m // 16 - 1))
    add((1, 0), (1, 1), (2, 7 * m // 16))
    add((1, 0), (1, 3 * m // 8), (2, 3 * m // 4 - 1))
    add((0, 0), (2, m // 4 + 1), (2, 5 * m // 8 + 1))
    add((0, 0), (2, m // 16 - 2), (2, m // 16 - 1))
    for i in range(m // 16):
        if i == m // 16 - 2:
            continue
        add((0, 0), (1, 3 * m // 4 + 2 * i), (2, 3 * m // 4 - 3 - 2 * i))
    for i in range(m // 16):
        add((0, 0), (1, 7 * m // 8 + 2 * i), (2, 5 * m // 8 + 4 * i))
    for i in range(m // 16):
        if i == (m - 32) // 64:
            continue
        add((0, 0), (1, 3 * m // 4 + 1 + 4 * i), (2, 3 * m // 4 - 1 + 2 * i))
    for i in range(m // 8 - 1):
        add((0, 0), (1, m // 4 + 2 + 2 * i), (2, 3 * m // 8 + 1 + i))
    for i in range(m // 8 - 2):
        if i == 3 * m // 32 - 2:
            continue
        add((0, 0), (1, m // 4 + 3 + 2 * i), (2, m // 2 + 1 + i))
    for i in range(m // 8 - 2):
        if i in (m // 16 - 3, m // 16 - 2):
            continue
        add((0, 0), (1, m // 2 + 4 + 2 * i), (2, 1 + i))
    for i in range(m // 8 - 3):
        add((0, 0), (1, m // 2 + 1 + 2 * i), (2, 7 * m // 8 - 1 + i))
    add((0, 0), (1, 0), (2, 0))
    add((0, 0), (1, 1), (2, m // 4))
    add((0, 0), (1, m // 2 - 1), (2, m - 3))
    add((0, 0), (1, m // 2), (2, m // 8 - 1))
    add((0, 0), (1, m // 2 + 2), (2, m // 8))
    add((0, 0), (1, 3 * m // 4 - 5), (2, m // 2))
    add((0, 0), (1, 3 * m // 4 - 3), (2, m - 2))
    add((0, 0), (1, 3 * m // 4 - 1), (2, m - 1))
    add((0, 0), (1, 7 * m // 8 - 4), (2, m - 4))
    add((0, 0), (1, 5 * m // 8 - 2), (2, 25 * m // 32 - 2))
    add((0, 0), (1, 5 * m // 8), (2, 19 * m // 32 - 1))
    code = Code(CodeParams(3, m, 3, 2, 1), cws)
    return _finalize(code, (107 * m - 32) // 64, None, "3xm/32mod64")


def _ooc_3xm_4or20mod48(m: int) -> ConstructionResult:
    if m < 68:
        raise UnsupportedParameterError(f"general mod-48 family starts at m=68, got {m}")
    sub = tight_derived(m // 4, 1)
    cws = _place_on_rows(sub.code)

    def add(*cells):
        cws.append(make_codeword((r, s % m) for r, s in cells))

    for i in range((m - 20) // 8 + 1):
        add((0, 0), (0, 1 + 2 * i), (1, (7 * m + 4) // 8 + i))
    for i in range((m - 12) // 8 + 1):
        add((1, 0), (1, 1 + 2 * i), (2, m // 2 + i))
    for i in range((m - 12) // 8 + 1):
        add((0, 0), (2, (7 * m - 12) // 8 - i), (2, (7 * m - 4) // 8 + i))
    add((0, 0), (0, m // 4 - 2), (1, (11 * m - 12) // 16))
    add((0, 0), (1, (3 * m - 4) // 8), (2, (m - 4) // 16))
    add((0, 0), (1, (9 * m + 12) // 16), (2, m // 2 - 1))
    add((0, 0), (1, (3 * m + 4) // 8), (2, (3 * m + 4) // 16))
    add((0, 0), (1, 3 * m // 4 + 1), (2, 2))
    add((0, 0), (1, m - 1), (2, 3 * m // 4 - 3))
    add((0, 0), (1, m // 4), (2, m - 1))
    add((0, 0), (1, m // 4 - 1), (2, m // 4 - 3))
    add((0, 0), (1, 3 * m // 4), (2, 0))
    add((0, 0), (1, (3 * m + 12) // 8), (2, (m + 12) // 8))
    add((0, 0), (1, (5 * m - 4) // 8), (2, m // 4 - 1))
    add((0, 0), (1, (5 * m + 4) // 8), (2, m // 4 + 1))
    add((0, 0), (1, 3 * m // 4 - 1), (2, (5 * m - 20) // 8))
    add((0, 0), (1, m // 2 + 1), (2, (3 * m + 4) // 8))
    add((0, 0), (1, m // 2), (2, m // 2))
    add((0, 0), (1, m // 2 - 1), (2, m // 2 - 2))
    t_set = set(range(3 * (m - 12) // 8 + 1)) - {
        (m - 20) // 16,
        (m - 28) // 8,
        (m - 20) // 8,
        (m - 12) // 8,
        (3 * m - 28) // 16,
        m // 4 - 3,
        m // 4 - 2,
        (5 * m - 52) // 16,
    }
    if m % 96 in (4, 68):
        skip = {(3 * m - 12) // 32, m // 4 - 1, m // 4}
        for i in range((3 * m - 12) // 8 + 1):
            if i in skip:
                continue
            add((0, 0), (1, i), (2, 1 + 2 * i))
        add((0, 0), (1, (3 * m - 12) // 32), (2, 3 * m // 4 - 1))
        add((0, 0), (1, (13 * m + 12) // 32), (2, m // 2 + 1))
        for i in sorted(t_set - {(m - 68) // 32}):
            add((0, 0), (1, (3 * m + 20) // 8 + i), (2, 4 + 2 * i))
    else:
        if m < 116:
            raise UnsupportedParameterError(
                f"mod-96 sub-branch of the mod-48 family starts at m=116, got {m}"
            )
        skip = {(m - 20) // 32, m // 4 - 1, m // 4}
        for i in range((3 * m - 12) // 8 + 1):
            if i in skip:
                continue
            add((0, 0), (1, i), (2, 1 + 2 * i))
        add((0, 0), (1, (15 * m + 20) // 32), (2, m // 2 + 1))
        add((0, 0), (1, (m - 20) // 32), (2, 3 * m // 4 - 1))
        for i in sorted(t_set - {(3 * m - 60) // 32}):
            add((0, 0), (1, (3 * m + 20) // 8 + i), (2, 4 + 2 * i))
    code = Code(CodeParams(3, m, 3, 2, 1), cws)
    return _finalize(code, (27 * m + 4) // 16, None, "3xm/4or20mod48")


# ---------------------------------------------------------------------------
# recursive expansion through cyclic group divisible designs
# ---------------------------------------------------------------------------


def expand_gdd(
    gdd: GddBaseBlocks, inputs: list[ConstructionResult], branch: str = "gdd/expand"
) -> ConstructionResult:
    """Union of GDD base blocks with a relabeled input code per group.

    Base blocks contribute each cross-group mixed difference exactly once;
    the filled copies keep all differences inside their own row groups, so
    the union stays correlation-clean.
    """
    gdd.validate()
    by_rows: dict[int, ConstructionResult] = {}
    for res in inputs:
        if not res.verified:
            raise ValueError("expansion requires verified input codes")
        if res.code.params.m != gdd.m:
            raise ValueError(
                f"input on Z_{res.code.params.m} does not match the design's Z_{gdd.m}"
            )
        by_rows[res.code.params.n] = res
    cws = [make_codeword(b) for b in gdd.base_blocks]
    total = len(gdd.base_blocks)
    lam = max((res.code.params.lambda_a for res in inputs), default=2)
    for rows in gdd.groups:
        try:
            res = by_rows[len(rows)]
        except KeyError:
            raise ValueError(f"no input code with {len(rows)} rows for group {rows}")
        for cw in res.code.codewords:
            cws.append(make_codeword((rows[r], s) for r, s in cw))
        total += res.code.size()
    code = Code(CodeParams(gdd.n_rows(), gdd.m, 3, lam, 1), cws)
    return _finalize(code, total, None, branch)


def compose_0mod3(n: int, m: int, config: SearchConfig | None = None) -> ConstructionResult:
    """Optimal (n x m) code for n = 0 (mod 3), n not 6 or 9.

    n = 3 delegates to the three-row catalogue; n >= 12 expands an
    m-cyclic design of type (3m)^(n/3) filled with the three-row code,
    reaching n(nm + 2 psi)/6 codewords.
    """
    if n % 3 != 0 or n < 3:
        raise UnsupportedParameterError(f"family needs n = 0 (mod 3), got n={n}")
    if n in (6, 9):
        raise UnsupportedParameterError(f"n={n} is outside the composition's reach")
    if n == 3:
        return ooc_3xm(m)
    if not (
        m % 16 == 8
        or m % 64 == 32
        or (m % 48 in (4, 20) and m > 4 and in_S(m // 4))
    ):
        raise UnsupportedParameterError(
            f"m={m} is not in a class where the three-row code fills the general cap"
        )
    inner = ooc_3xm(m)
    u = n // 3
    if config is not None:
        outcome = gdd_search(u, m, config)
    else:
        outcome = gdd_search(u, m, SearchConfig(60.0, 10**9, EXACT_COVER, 0))
        if outcome.best is None:
            outcome = gdd_search(u, m, SearchConfig(240.0, 10**9, HILL_CLIMB, 0))
    if outcome.best is None:
        raise SearchExhausted(f"no (3m)^{u} design witness found for m={m} in budget")
    psi = psi_e_exact(m).value
    res = expand_gdd(outcome.best, [inner], branch="nxm/0mod3")
    claimed = n * (n * m + 2 * psi) // 6
    if res.code.size() != claimed:
        raise VerificationFailure(
            f"nxm/0mod3: size {res.code.size()} does not match formula {claimed}"
        )
    return res

"""Independent checking: correlation properties, censuses, structural facts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .core import (
    Code,
    CodeParams,
    Codeword,
    classify_codeword,
    codeword_rows,
    is_equi_difference_codeword,
    parity_class,
    pure_difference_support,
)

MAX_WITNESSES = 100


@dataclass(frozen=True)
class Witness:
    """One correlation violation: which codewords, which row pair, which difference."""

    kind: str  # "auto" or "cross"
    codewords: tuple[int, int]
    rows: tuple[int, int]
    difference: int


@dataclass
class VerificationReport:
    auto_ok: bool
    cross_ok: bool
    max_auto_multiplicity: int
    witnesses: list[Witness]
    violation_count: int

    @property
    def passed(self) -> bool:
        return self.auto_ok and self.cross_ok


@dataclass(frozen=True)
class CompositionCensus:
    """Counts of codewords by row pattern and pure-difference support size.

    alpha2 is nonzero only for codes that already break the lambda_a <= 2
    autocorrelation cap (third-period codewords); it keeps the census total.
    """

    alpha: int = 0
    alpha2: int = 0
    alpha3: int = 0
    alpha4: int = 0
    alpha5: int = 0
    alpha6: int = 0
    beta: int = 0
    beta1: int = 0
    beta2: int = 0
    gamma: int = 0


@dataclass(frozen=True)
class ParityCensus:
    """Seven-way odd / singly-even / doubly-even census of single-row codewords."""

    c_o: int = 0
    c_e: int = 0
    c_d: int = 0
    n_oe: int = 0
    n_od: int = 0
    n_e: int = 0
    n_d: int = 0

    def total(self) -> int:
        return self.c_o + self.c_e + self.c_d + self.n_oe + self.n_od + self.n_e + self.n_d


@dataclass(frozen=True)
class StructuralFacts:
    is_equi_difference: bool
    difference_leave: frozenset[int]
    regular_subgroups: frozenset[int]
    is_tight_cac: bool


def _pure_class(m: int, d: int) -> int:
    """Canonical representative of the symmetric pure difference pair {d, m-d}."""
    return min(d, (m - d) % m)


def verify_code(code: Code) -> VerificationReport:
    """Check the code by the difference method.

    Autocorrelation: for every codeword the maximum total multiplicity of a
    pure difference (summed over rows) is at most lambda_a.  Cross: no two
    distinct codewords share a difference in the same ordered row pair.
    """
    code.validate()
    m = code.params.m
    lam_a = code.params.lambda_a
    witnesses: list[Witness] = []
    violation_count = 0

    def emit(w: Witness) -> None:
        nonlocal violation_count
        violation_count += 1
        if len(witnesses) < MAX_WITNESSES:
            witnesses.append(w)

    auto_ok = True
    max_mult = 0
    for idx, cw in enumerate(code.codewords):
        pure: Counter = Counter()
        row_of: dict[int, int] = {}
        for i, x in cw:
            for j, y in cw:
                if i == j and x != y:
                    d = (x - y) % m
                    pure[d] += 1
                    row_of.setdefault(d, i)
        lam = max(pure.values(), default=0)
        max_mult = max(max_mult, lam)
        if lam > lam_a:
            auto_ok = False
            for d, count in sorted(pure.items()):
                if count > lam_a:
                    emit(Witness("auto", (idx, idx), (row_of[d], row_of[d]), d))

    # cross: one canonical class per unordered cell pair, collisions by dict
    owners: dict[tuple[int, int, int], list[int]] = {}
    for idx, cw in enumerate(code.codewords):
        seen: set[tuple[int, int, int]] = set()
        for a in range(len(cw)):
            i, x = cw[a]
            for b in range(a + 1, len(cw)):
                j, y = cw[b]
                if i == j:
                    key = (i, i, _pure_class(m, (y - x) % m))
                else:
                    key = (i, j, (x - y) % m)  # cells sorted, so i < j
                if key in seen:
                    continue  # repeats inside one codeword are an auto matter
                seen.add(key)
                owners.setdefault(key, []).append(idx)

    cross_ok = True
    for key in sorted(owners):
        members = owners[key]
        if len(members) < 2:
            continue
        cross_ok = False
        i, j, d = key
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                emit(Witness("cross", (members[a], members[b]), (i, j), d))

    return VerificationReport(auto_ok, cross_ok, max_mult, witnesses, violation_count)


def matrix_correlation(a: Codeword, b: Codeword, r: int, params: CodeParams) -> int:
    """Matrix correlation sum of a against b at slot shift r.

    Counts cells (i, j) of `a` whose shifted partner (i, j + r mod m) is a
    cell of `b`; both codewords must fit inside I_n x Z_m of params.
    """
    n, m = params.n, params.m
    for cw in (a, b):
        for row, slot in cw:
            if not (0 <= row < n and 0 <= slot < m):
                raise ValueError(f"cell ({row},{slot}) outside I_{n} x Z_{m}")
    return _shift_overlap(a, frozenset(b), r, m)


def matrix_verdicts(code: Code) -> tuple[bool, bool]:
    """(auto_ok, cross_ok) computed directly from matrix shift correlations.

    Independent of the difference method; used to cross-validate it.
    """
    code.validate()
    m = code.params.m
    lam_a, lam_c = code.params.lambda_a, code.params.lambda_c
    cws = [frozenset(cw) for cw in code.codewords]
    auto_ok = True
    for cw in code.codewords:
        for r in range(1, m):
            if _shift_overlap(cw, frozenset(cw), r, m) > lam_a:
                auto_ok = False
    cross_ok = True
    for a in range(len(cws)):
        for b in range(len(cws)):
            if a == b:
                continue
            for r in range(m):
                if _shift_overlap(code.codewords[a], cws[b], r, m) > lam_c:
                    cross_ok = False
    return auto_ok, cross_ok


def _shift_overlap(a: Codeword, b_set: frozenset, r: int, m: int) -> int:
    return sum(1 for i, x in a if (i, (x + r) % m) in b_set)


def composition_census(code: Code) -> CompositionCensus:
    """Tally classify_codeword labels over a weight-3 code."""
    if code.params.k != 3:
        raise ValueError("composition census is defined for weight-3 codes")
    counts = Counter(classify_codeword(cw, code.params) for cw in code.codewords)
    alphas = {s: counts.get(f"alpha{s}", 0) for s in (2, 3, 4, 5, 6)}
    return CompositionCensus(
        alpha=sum(alphas.values()),
        alpha2=alphas[2],
        alpha3=alphas[3],
        alpha4=alphas[4],
        alpha5=alphas[5],
        alpha6=alphas[6],
        beta=counts.get("beta1", 0) + counts.get("beta2", 0),
        beta1=counts.get("beta1", 0),
        beta2=counts.get("beta2", 0),
        gamma=counts.get("gamma", 0),
    )


def parity_census(code: Code) -> ParityCensus:
    """Seven-way parity census; every codeword must sit in a single row."""
    m = code.params.m
    if m % 4 != 0:
        raise ValueError(f"parity census needs m = 0 (mod 4), got m={m}")
    counts = Counter()
    for cw in code.codewords:
        if len(codeword_rows(cw)) != 1:
            raise ValueError("parity census needs single-row codewords")
        counts[parity_class(cw, m)] += 1
    return ParityCensus(
        c_o=counts.get("i", 0),
        c_e=counts.get("ii", 0),
        c_d=counts.get("iii", 0),
        n_oe=counts.get("iv", 0),
        n_od=counts.get("v", 0),
        n_e=counts.get("vi", 0),
        n_d=counts.get("vii", 0),
    )


def structural_facts(code: Code) -> StructuralFacts:
    """Equi-difference flag, difference leave, regular subgroups, tightness.

    Tightness follows the conflict-avoiding usage: the supports of the
    codewords cover every nonzero residue exactly once.
    """
    if code.params.n != 1:
        raise ValueError("structural facts are defined for 1-D codes")
    m = code.params.m
    supports = [pure_difference_support(cw, m) for cw in code.codewords]
    covered: Counter = Counter()
    for supp in supports:
        covered.update(supp)
    leave = frozenset(set(range(1, m)) - set(covered))
    regular = frozenset(
        g
        for g in _divisors(m)
        if g < m and all((t * (m // g)) not in covered for t in range(1, g))
    )
    equi = all(is_equi_difference_codeword(cw, m) for cw in code.codewords)
    tight = (
        equi
        and not leave
        and all(count == 1 for count in covered.values())
        and len(covered) == m - 1
    )
    return StructuralFacts(equi, leave, regular, tight)


def _divisors(m: int) -> list[int]:
    out = [d for d in range(1, int(m**0.5) + 1) if m % d == 0]
    out += [m // d for d in reversed(out) if m // d not in out]
    return sorted(set(out))


def composition_inequalities(code: Code) -> dict[str, tuple[int, int]]:
    """Counting bounds on pure/mixed difference usage, as (lhs, rhs) pairs.

    Valid for verified weight-3 codes with lambda_a <= 2 (alpha2 empty).
    """
    c = composition_census(code)
    n, m = code.params.n, code.params.m
    return {
        "pure_difference_capacity": (
            3 * c.alpha3 + 4 * c.alpha4 + 5 * c.alpha5 + 6 * c.alpha6 + c.beta1 + 2 * c.beta2,
            n * (m - 1),
        ),
        "mixed_difference_capacity": (4 * c.beta + 6 * c.gamma, n * (n - 1) * m),
        "half_period_capacity": (c.alpha3 + c.alpha5 + c.beta1, n),
    }


def parity_inequalities(code: Code) -> dict[str, tuple[int, int]]:
    """Odd / singly-even / doubly-even capacity bounds for 1-D codes, m = 0 mod 4."""
    if code.params.n != 1:
        raise ValueError("parity bounds apply to 1-D codes")
    m = code.params.m
    pc = parity_census(code)
    return {
        "odd_capacity": (pc.c_o + 2 * pc.n_oe + 2 * pc.n_od, m // 4),
        "singly_even_capacity": (pc.c_o + pc.c_e + pc.n_oe + 2 * pc.n_e, (m + 7) // 8),
        "doubly_even_capacity": (
            pc.c_e + 2 * pc.c_d + pc.n_od + pc.n_e + 3 * pc.n_d,
            m // 8,
        ),
    }

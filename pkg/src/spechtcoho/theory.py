"""Closed-form predictions: block membership filters, fixed-point criteria,
hook and two-part composition series with their cohomology dimensions, the
known small integral groups, and the conjectured families.

Everything here is a pure function of the shape and the prime.  Predictions
never extrapolate: outside a statement's hypotheses the value is "unknown".
Each prediction carries a semantic source tag so reports can say which
criterion produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .partitions import PAdicDigits, Partition, p_core

EXACT = "exact"
AT_MOST = "at_most"
AT_LEAST = "at_least"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Prediction:
    quantity: str  # d0 | d1 | d2 | x2 | h1 | h2 | membership
    kind: str  # exact | at_most | at_least | unknown
    value: object = None
    source: str = ""
    conjecture: bool = False

    def is_definite(self) -> bool:
        return self.kind == EXACT

    def to_json(self) -> dict:
        out = {"quantity": self.quantity, "kind": self.kind, "source": self.source}
        if self.kind != UNKNOWN:
            out["value"] = list(self.value) if isinstance(self.value, tuple) else self.value
        if self.conjecture:
            out["conjecture"] = True
        return out


def principal_block(lam: Partition, p: int) -> bool:
    """True iff the p-core has at most one row, i.e. the Specht module lies
    in the principal p-block; outside it all mod-p cohomology vanishes and p
    cannot divide the integral cohomology orders in degrees >= 1."""
    return len(p_core(lam, p)) <= 1


def candidate_primes(lam: Partition) -> tuple[int, ...]:
    """All primes that can divide |H^i| for i in {1,2}: p <= n with the
    module in the principal p-block (the orders divide n!)."""
    return tuple(p for p in _primes_upto(lam.n) if principal_block(lam, p))


def _primes_upto(n: int) -> list[int]:
    sieve = [True] * (n + 1)
    out = []
    for q in range(2, n + 1):
        if sieve[q]:
            out.append(q)
            for m in range(q * q, n + 1, q):
                sieve[m] = False
    return out


def trivial_submodule_criterion(lam: Partition, p: int) -> bool:
    """True iff the mod-p Specht module contains the trivial module, which
    happens exactly when every part satisfies part_i = -1 mod p^(z_i) with
    z_i the least exponent with p^z > part_{i+1} (last condition vacuous).
    Equivalent to d_0 = 1."""
    parts = lam.parts
    for i in range(len(parts)):
        nxt = parts[i + 1] if i + 1 < len(parts) else 0
        z = 0
        while p**z <= nxt:
            z += 1
        if (parts[i] + 1) % p**z != 0:
            return False
    return True


def cp1_membership(lam: Partition, p: int) -> bool:
    """Exact membership in the degree-1 graph: p divides |H^1| iff the shape
    is not a single row and the fixed-point criterion holds."""
    return len(lam) != 1 and bool(lam.parts) and trivial_submodule_criterion(lam, p)


def hook_dims(p: int, n: int, j: int) -> dict[str, Prediction]:
    """Mod-p cohomology dimensions of the hook (n-j, 1^j) for odd p | n.

    Outside the hypotheses every quantity is unknown."""
    src = "hook-composition-series"
    unknown = {q: Prediction(q, UNKNOWN, source=src) for q in ("d0", "d1", "d2")}
    if p == 2 or p < 2 or n % p != 0 or not 1 <= j <= n - 2:
        return unknown
    if p == 3 and n == 3 and j == 2:
        return unknown  # excluded case
    out = {}
    out["d0"] = Prediction("d0", EXACT, 1 if j == 1 else 0, src)
    if (p, j) == (3, 3):
        out["d1"] = Prediction("d1", AT_MOST, 1, src)
    else:
        out["d1"] = Prediction("d1", EXACT, 1 if (j in (1, 2) or (p, j) == (3, 4)) else 0, src)
    if p > 3:
        out["d2"] = Prediction("d2", EXACT, 1 if j in (2, 3) else 0, src)
    else:  # p == 3
        if j in (3, 4):
            out["d2"] = Prediction("d2", UNKNOWN, source=src)
        elif j >= 8 or (n > 3 and j == 1):
            out["d2"] = Prediction("d2", EXACT, 0, src)
        elif j == 6 or (n == 3 and j == 1):
            out["d2"] = Prediction("d2", AT_MOST, 1, src)
        elif j in (2, 5, 7):
            out["d2"] = Prediction("d2", EXACT, 1, src)
        else:
            out["d2"] = Prediction("d2", UNKNOWN, source=src)
    return out


@dataclass(frozen=True)
class CompositionSeries:
    case: str  # a | b | c | d
    factors: tuple[Partition, ...]  # bottom to top


def _second_digit_is_one(value: int, p: int) -> bool:
    digits = PAdicDigits.of(value, p).digits
    return len(digits) >= 2 and digits[1] == 1


def two_part_comp_series(p: int, n: int) -> CompositionSeries:
    """Composition series of the mod-p Specht module of (n-p, p), n >= 2p.

    With j = (n+1) mod p the four shapes are: (a) irreducible; (b) trivial
    module below the top; (c) D^(n-j,j) below the top; (d) D^(n-j,j), then
    trivial, then the top.  Valid for odd p, and for p = 2 when n > 4."""
    if n < 2 * p:
        raise ValueError(f"need n >= 2p, got n={n}, p={p}")
    if p == 2 and n <= 4:
        raise ValueError("p=2 requires n > 4")
    lam = Partition((n - p, p))
    top = lam
    j = (n + 1) % p
    marker = _second_digit_is_one(n + 1, p)  # n+1 = p+j mod p^2
    if j == 0:
        if not marker:
            return CompositionSeries("a", (top,))
        return CompositionSeries("b", (Partition((n,)), top))
    if not marker:
        return CompositionSeries("c", (Partition((n - j, j)), top))
    return CompositionSeries("d", (Partition((n - j, j)), Partition((n,)), top))


def two_part_dims(p: int, n: int) -> dict[str, Prediction]:
    """Mod-p dimensions for (n-p, p), odd p, n >= 2p; x2 when it is forced."""
    if p == 2:
        raise ValueError("two-part dimension statements require odd p")
    series = two_part_comp_series(p, n)  # validates hypotheses
    src = "two-part-composition-series"
    j = (n + 1) % p
    out = {}
    if j == 0:
        w = 1 if series.case == "b" else 0
        out["d0"] = Prediction("d0", EXACT, w, src)
        out["d1"] = Prediction("d1", EXACT, w, src)
        out["d2"] = Prediction("d2", EXACT, 0, src)
        out["x2"] = Prediction("x2", EXACT, 0, src)
    else:
        out["d0"] = Prediction("d0", EXACT, 0, src)
        out["d1"] = Prediction("d1", EXACT, 1, src)
        out["d2"] = Prediction("d2", AT_LEAST, 1, src)
        out["x2"] = Prediction("x2", EXACT, 1, src)
    return out


def known_integral(lam: Partition) -> dict[str, Prediction]:
    """Exact H^1 and H^2 for the row, the column and (n-1,1); groups are
    given by their nontrivial elementary divisors."""
    n = lam.n
    parts = lam.parts
    src = "known-small-cases"
    unknown = {
        "h1": Prediction("h1", UNKNOWN, source=src),
        "h2": Prediction("h2", UNKNOWN, source=src),
    }
    if n < 2:
        return unknown
    if len(parts) == 1:  # single row
        return {
            "h1": Prediction("h1", EXACT, (), src),
            "h2": Prediction("h2", EXACT, (2,), src),
        }
    if parts[0] == 1:  # single column
        h2 = (3,) if n in (3, 4) else ()
        return {
            "h1": Prediction("h1", EXACT, (2,), src),
            "h2": Prediction("h2", EXACT, h2, src),
        }
    if parts == (n - 1, 1):
        h2 = (2,) if n % 2 == 0 else ()
        return {
            "h1": Prediction("h1", EXACT, (n,), src),
            "h2": Prediction("h2", EXACT, h2, src),
        }
    return unknown


def conjecture_values(lam: Partition) -> list[Prediction]:
    """Conjectured H^2 for (n-2,1,1) and (n-3,2,1), and conjectured
    membership in the p=2 degree-2 graph for (2l,2,1^q).  Comparison
    material only."""
    n = lam.n
    parts = lam.parts
    out = []
    if n >= 4 and parts == (n - 2, 1, 1):
        order = 2 * n if n % 2 else n // 2
        out.append(
            Prediction("h2", EXACT, (order,), "conjecture:second-cohomology-(n-2,1,1)", conjecture=True)
        )
    if n >= 5 and len(parts) == 3 and parts == (n - 3, 2, 1):
        order = (n - 1) // 3 if (n - 1) % 3 == 0 else n - 1
        out.append(
            Prediction("h2", EXACT, (order,), "conjecture:second-cohomology-(n-3,2,1)", conjecture=True)
        )
    if len(parts) >= 2 and parts[0] % 2 == 0 and parts[0] >= 2 and parts[1] == 2:
        tail = parts[2:]
        if all(x == 1 for x in tail):
            out.append(
                Prediction(
                    "membership", EXACT, True, "conjecture:mod2-membership-(2l,2,1^q)", conjecture=True
                )
            )
    return out


@dataclass(frozen=True)
class BocksteinReport:
    lam: Partition
    p: int
    x1: int
    x2: int
    d0: int
    d1: int
    ok_degree0: bool
    ok_degree1: bool
    x3_prediction: int | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        return self.ok_degree0 and self.ok_degree1


def bockstein_report(
    h1_divisors,
    h2_divisors,
    dims: tuple[int, int],
    p: int,
    lam: Partition,
    d2_prediction: Prediction | None = None,
) -> BocksteinReport:
    """Cross-check the mod-p dimensions against the p-ranks of the integral
    groups: d0 = x1 (except the single row) and d1 = x1 + x2.  When an exact
    d2 is known the alternating sum yields an (unverifiable) x3."""
    x1 = sum(1 for d in h1_divisors if d % p == 0)
    x2 = sum(1 for d in h2_divisors if d % p == 0)
    d0, d1 = dims
    single_row = len(lam) == 1
    ok0 = (x1 == 0) if single_row else (d0 == x1)
    ok1 = d1 == x1 + x2
    x3 = None
    notes = []
    if d2_prediction is not None and d2_prediction.is_definite():
        x3 = int(d2_prediction.value) - d1 + d0
        notes.append("x3 derived from predicted d2; not verifiable here")
    return BocksteinReport(lam, p, x1, x2, d0, d1, ok0, ok1, x3, tuple(notes))


def predictions_for(lam: Partition, p: int) -> list[Prediction]:
    """Every applicable prediction for (shape, prime), tagged by source."""
    out: list[Prediction] = []
    n = lam.n
    parts = lam.parts
    if not principal_block(lam, p):
        # outside the principal block: all mod-p cohomology vanishes and p
        # divides no integral cohomology order in degrees 1, 2
        src = "block-filter"
        out.append(Prediction("d0", EXACT, 0, src))
        out.append(Prediction("d1", EXACT, 0, src))
        out.append(Prediction("x2", EXACT, 0, src))
        out.append(Prediction("membership", EXACT, False, src))
    out.append(
        Prediction(
            "d0",
            EXACT,
            1 if trivial_submodule_criterion(lam, p) else 0,
            "fixed-point-criterion",
        )
    )
    out.append(
        Prediction("membership", EXACT, cp1_membership(lam, p), "degree1-membership")
    )
    if p % 2 == 1 and n % p == 0 and len(parts) >= 2 and all(x == 1 for x in parts[1:]):
        j = len(parts) - 1
        out.extend(v for v in hook_dims(p, n, j).values() if v.kind != UNKNOWN)
    if p % 2 == 1 and len(parts) == 2 and parts[1] == p and n >= 2 * p:
        out.extend(two_part_dims(p, n).values())
    known = known_integral(lam)
    out.extend(v for v in known.values() if v.kind != UNKNOWN)
    out.extend(conjecture_values(lam))
    return out

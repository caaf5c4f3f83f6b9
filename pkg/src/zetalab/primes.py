"""Prime tables, multiplicative bookkeeping and block schedules.

Primes are organised into blocks on the doubly-logarithmic scale: block
``j`` holds the primes with ``loglog p`` in ``[n[j-1], n[j])``.  The
checkpoint vector ``n`` comes either from an explicit list (``scaled``
mode, the only mode that is runnable end to end at desk scale) or from a
vector of iterated logarithms ``l_k = log_k T`` supplied directly
(``paper_faithful`` mode, where the regime of interest admits no
representable ``T``; the vector is taken at face value).

Every prime from 2 up belongs to block 0's range: ``loglog 2 ~ -0.367``
sits far above the block-0 floor of -100, so no special case is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ValidationError

__all__ = [
    "PrimeTable",
    "BlockSchedule",
    "sieve_primes",
    "mobius",
    "build_schedule",
    "block_of",
    "omega_in_block",
    "factorize",
]

BLOCK0_FLOOR = -100.0
PAPER_SCALING = 1.0e6  # checkpoint scaling factor in paper_faithful mode
PAPER_J_THRESHOLD = 1000.0  # depth rule: largest J with l_{J+2} above this


@dataclass(frozen=True)
class PrimeTable:
    """Ascending primes up to ``limit`` with cached log p and loglog p."""

    limit: int
    primes: np.ndarray  # int64, ascending
    log_p: np.ndarray  # float64
    loglog_p: np.ndarray  # float64, negative only for p = 2

    def __len__(self) -> int:
        return len(self.primes)

    def index_of(self, p: int) -> int:
        i = int(np.searchsorted(self.primes, p))
        if i >= len(self.primes) or self.primes[i] != p:
            raise DomainError(f"{p} is not a prime in this table")
        return i


def sieve_primes(limit: int) -> PrimeTable:
    """Eratosthenes sieve; primes p <= limit.

    Raises DomainError for limit < 2 (empty domain).
    """
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for i in range(2, int(math.isqrt(limit)) + 1):
        if is_prime[i]:
            is_prime[i * i :: i] = False
    primes = np.nonzero(is_prime)[0].astype(np.int64)
    log_p = np.log(primes.astype(np.float64))
    loglog_p = np.log(log_p)
    return PrimeTable(limit=limit, primes=primes, log_p=log_p, loglog_p=loglog_p)


def factorize(n: int, table: PrimeTable | None = None) -> list[tuple[int, int]]:
    """Trial-division factorisation, (prime, multiplicity) pairs ascending."""
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    out: list[tuple[int, int]] = []
    m = n
    if table is not None:
        it = table.primes.tolist()
    else:
        it = None
    p = 2
    idx = 0
    while m > 1:
        if it is not None:
            if idx < len(it):
                p = it[idx]
                idx += 1
            else:
                p += 1 if p == 2 else 2
        if p * p > m:
            out.append((m, 1))
            break
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        if it is None:
            p += 1 if p == 2 else 2
    return out


def mobius(n: int, table: PrimeTable | None = None) -> int:
    """Moebius function by trial factorisation; 0 at any square factor."""
    if n < 1:
        raise DomainError(f"mobius requires n >= 1, got {n}")
    if n == 1:
        return 1
    fac = factorize(n, table)
    if any(k > 1 for _, k in fac):
        return 0
    return -1 if len(fac) % 2 else 1


@dataclass(frozen=True)
class BlockSchedule:
    """Checkpoints n[-1] < n[0] < ... < n[J] on the loglog scale.

    ``checkpoints`` stores the full vector including the leading block-0
    floor, so ``checkpoints[j + 1]`` is ``n_j``.  ``t_levels[j]`` is
    ``e^{e^{n_j}}`` where representable (inf otherwise).
    """

    mode: str  # "paper_faithful" | "scaled"
    checkpoints: tuple[float, ...]  # (n_{-1}, n_0, ..., n_J)
    alpha: float
    growth_const: float  # the truncation constant dividing log T
    scaling: float = PAPER_SCALING
    iterated_logs: tuple[float, ...] = ()  # (l_1, l_2, ...) when supplied
    degenerate: bool = False
    t_levels: tuple[float, ...] = field(default=(), compare=False)

    @property
    def depth(self) -> int:
        """Largest block index J."""
        return len(self.checkpoints) - 2

    def n(self, j: int) -> float:
        """Checkpoint n_j for -1 <= j <= depth."""
        if not -1 <= j <= self.depth:
            raise DomainError(f"checkpoint index {j} out of range")
        return self.checkpoints[j + 1]

    @property
    def n_last(self) -> float:
        return self.checkpoints[-1]

    @property
    def t_star(self) -> float:
        """e^{e^{n_J}}, inf when unrepresentable."""
        return self.t_levels[-1]

    def prime_limit(self) -> int:
        """Smallest sieve limit covering every block, if representable."""
        if not math.isfinite(self.t_star):
            raise DomainError("schedule top is not representable as a prime limit")
        return max(2, int(math.floor(self.t_star)))

    def to_text(self) -> str:
        """Flat key=value serialisation."""
        lines = [
            f"mode = {self.mode}",
            "n = " + " ".join(repr(x) for x in self.checkpoints),
            f"alpha = {self.alpha!r}",
            f"growth_const = {self.growth_const!r}",
            f"scaling = {self.scaling!r}",
        ]
        if self.iterated_logs:
            lines.append("iterated_logs = " + " ".join(repr(x) for x in self.iterated_logs))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "BlockSchedule":
        kv: dict[str, str] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            key, _, val = line.partition("=")
            kv[key.strip()] = val.strip()
        mode = kv["mode"]
        n = [float(x) for x in kv["n"].split()]
        alpha = float(kv["alpha"])
        growth = float(kv["growth_const"])
        if mode == "scaled":
            return build_schedule(explicit_n=n, alpha=alpha, growth_const=growth, mode=mode)
        logs = [float(x) for x in kv["iterated_logs"].split()]
        return build_schedule(iterated_logs=logs, alpha=alpha, growth_const=growth, mode=mode)


def _t_levels(checkpoints: tuple[float, ...]) -> tuple[float, ...]:
    out = []
    for n in checkpoints[1:]:
        if n > 6.2:  # e^e^6.2 ~ 1e214; beyond ~6.4 the outer exp overflows
            out.append(math.inf if n > 6.43 else math.exp(math.exp(n)))
        else:
            out.append(math.exp(math.exp(n)))
    return tuple(out)


def build_schedule(
    iterated_logs=None,
    explicit_n=None,
    alpha: float = 1.0,
    growth_const: float = 1.0e3,
    mode: str = "scaled",
) -> BlockSchedule:
    """Build a block schedule.

    scaled mode: ``explicit_n`` is the strictly increasing checkpoint list
    ``[n_{-1}, n_0, ..., n_J]``, passed through verbatim.

    paper_faithful mode: ``iterated_logs`` is ``(l_1, l_2, l_3, ...)`` with
    ``l_k = log_k T``; leading entries may be ``inf`` when unrepresentable,
    but ``l_2`` must be finite for absolute checkpoints to exist.  The
    depth J is the largest integer with ``l_{J+2} > 1000``; checkpoints are

        n_J = loglog(T*) = l_2 - log(growth_const * (alpha^2 + 1))
        n_j = n_J - scaling * (l_{j+2} - l_{J+2})      for 1 <= j <= J
        n_0 = l_4 / 1000,   n_{-1} = -100.

    If no J >= 1 qualifies the schedule degenerates to block 0 alone with
    ``n_0 = loglog(T*)``.
    """
    if mode == "scaled":
        if explicit_n is None:
            raise ValidationError("scaled mode requires an explicit checkpoint list")
        n = tuple(float(x) for x in explicit_n)
        if len(n) < 2:
            raise ValidationError("need at least (n_{-1}, n_0)")
        if any(b <= a for a, b in zip(n, n[1:])):
            raise ValidationError(f"checkpoints must be strictly increasing: {n}")
        return BlockSchedule(
            mode=mode,
            checkpoints=n,
            alpha=float(alpha),
            growth_const=float(growth_const),
            t_levels=_t_levels(n),
        )

    if mode != "paper_faithful":
        raise ValidationError(f"unknown schedule mode {mode!r}")
    if iterated_logs is None:
        raise ValidationError("paper_faithful mode requires the iterated-log vector")
    logs = tuple(float(x) for x in iterated_logs)

    def l(k: int) -> float:  # 1-based iterated log
        if k - 1 >= len(logs):
            raise ValidationError(f"iterated-log vector too short: need l_{k}")
        return logs[k - 1]

    if not math.isfinite(l(2)):
        raise ValidationError("l_2 = loglog T must be finite to place checkpoints")
    loglog_tstar = l(2) - math.log(growth_const * (alpha * alpha + 1.0))

    depth = 0
    j = 1
    while True:
        try:
            val = l(j + 2)
        except ValidationError:
            break
        if val > PAPER_J_THRESHOLD:
            depth = j
            j += 1
        else:
            break

    if depth < 1:
        # degenerate: single block up to T*
        n = (BLOCK0_FLOOR, loglog_tstar)
        return BlockSchedule(
            mode=mode,
            checkpoints=n,
            alpha=float(alpha),
            growth_const=float(growth_const),
            iterated_logs=logs,
            degenerate=True,
            t_levels=_t_levels(n),
        )

    n0 = l(4) / 1000.0
    tail = [loglog_tstar - PAPER_SCALING * (l(j + 2) - l(depth + 2)) for j in range(1, depth + 1)]
    n = (BLOCK0_FLOOR, n0, *tail)
    if any(b <= a for a, b in zip(n, n[1:])):
        raise ValidationError(f"derived checkpoints not increasing: {n}")
    return BlockSchedule(
        mode=mode,
        checkpoints=n,
        alpha=float(alpha),
        growth_const=float(growth_const),
        iterated_logs=logs,
        t_levels=_t_levels(n),
    )


def block_of(p: int, schedule: BlockSchedule) -> int | None:
    """Block index j with loglog p in [n_{j-1}, n_j), or None above n_J."""
    ll = math.log(math.log(p))
    return block_of_loglog(ll, schedule)


def block_of_loglog(ll: float, schedule: BlockSchedule) -> int | None:
    n = schedule.checkpoints
    if ll < n[0] or ll >= n[-1]:
        return None
    # n is short (few blocks); linear scan is clearest
    for j in range(1, len(n)):
        if ll < n[j]:
            return j - 1
    return None


def block_index_array(table: PrimeTable, schedule: BlockSchedule) -> np.ndarray:
    """Vector of block indices for every prime in the table; -1 = outside."""
    n = np.asarray(schedule.checkpoints)
    idx = np.searchsorted(n, table.loglog_p, side="right") - 1
    out = idx.astype(np.int64)
    out[(table.loglog_p < n[0]) | (table.loglog_p >= n[-1])] = -1
    return out


def omega_in_block(n: int, j: int, schedule: BlockSchedule, table: PrimeTable | None = None) -> int:
    """Number of prime factors of n, with multiplicity, lying in block j."""
    if n < 1:
        raise DomainError(f"omega_in_block requires n >= 1, got {n}")
    if n == 1:
        return 0
    total = 0
    for p, k in factorize(n, table):
        if block_of(p, schedule) == j:
            total += k
    return total

"""Partitions of n and exact character theory of the symmetric group.

Everything here is integer-exact: partitions are plain tuples in
reverse-lexicographic order, dimensions come from the hook length formula,
and ordinary characters from the Murnaghan-Nakayama border-strip recursion.
No floating point enters this module.
"""

from collections import Counter
from fractions import Fraction
from functools import cache
from math import factorial
import csv
import io
import json

Partition = tuple[int, ...]


def as_partition(parts) -> Partition:
    """Validate and canonicalize a partition given as any iterable of ints.

    Parts must be positive and weakly decreasing. Zero parts are rejected
    rather than stripped so malformed input surfaces early.
    """
    p = tuple(int(x) for x in parts)
    if any(x <= 0 for x in p):
        raise ValueError(f"partition parts must be positive: {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {p}")
    return p


def parse_partition(text: str) -> Partition:
    """Parse a comma-joined partition string such as "3,2,1". "" is empty."""
    text = text.strip()
    if not text:
        return ()
    tokens = text.split(",")
    for tok in tokens:
        try:
            int(tok)
        except ValueError:
            raise ValueError(f"not a partition: bad token {tok.strip()!r} in {text!r}") from None
    try:
        return as_partition(tokens)
    except ValueError:
        raise ValueError(f"not a partition: {text!r}") from None


def format_partition(p: Partition) -> str:
    return ",".join(str(x) for x in p)


@cache
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order, [n] first, [1^n] last."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _partitions_below(n, n)


@cache
def _partitions_below(n: int, mx: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, mx), 0, -1):
        out.extend((first,) + rest for rest in _partitions_below(n - first, first))
    return tuple(out)


def conjugate(p: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not p:
        return ()
    return tuple(sum(1 for r in p if r > j) for j in range(p[0]))


def centralizer_order(mu: Partition) -> int:
    """z_mu = prod k^{m_k} m_k! over cycle lengths k with multiplicity m_k."""
    z = 1
    for k, m in Counter(mu).items():
        z *= k**m * factorial(m)
    return z


def class_size(mu: Partition) -> int:
    """Number of permutations with cycle type mu: n!/z_mu."""
    n = sum(mu)
    return factorial(n) // centralizer_order(mu)


def beta_numbers(p: Partition) -> list[int]:
    """First-column hook lengths p_i + (rows - i), a strictly decreasing list."""
    rows = len(p)
    return [p[i] + rows - 1 - i for i in range(rows)]


def _partition_from_beta(beta: list[int]) -> Partition:
    bs = sorted(beta, reverse=True)
    m = len(bs)
    return tuple(x for i, b in enumerate(bs) if (x := b - (m - 1 - i)) > 0)


@cache
def dimension(p: Partition) -> int:
    """Dimension of the irreducible labelled by p, via the hook length formula."""
    n = sum(p)
    if n == 0:
        return 1
    conj = conjugate(p)
    hooks = 1
    for i, r in enumerate(p):
        for j in range(r):
            hooks *= (r - j) + (conj[j] - i) - 1
    d, rem = divmod(factorial(n), hooks)
    if rem:
        raise ArithmeticError(f"hook product does not divide n! for {p}")
    return d


@cache
def character(rep: Partition, mu: Partition) -> int:
    """Ordinary irreducible character chi^rep evaluated on cycle type mu.

    Murnaghan-Nakayama recursion over border strips, implemented on beta
    numbers: removing a strip of length k replaces a beta number b by b-k,
    with sign (-1)^{number of beta numbers strictly between}. When the
    remaining cycle type is all ones the recursion bottoms out at the
    dimension, which the hook length formula gives directly.
    """
    if sum(rep) != sum(mu):
        raise ValueError(f"weight mismatch: |{rep}| != |{mu}|")
    return _mn(rep, mu)


@cache
def _mn(rep: Partition, mu: Partition) -> int:
    if not mu:
        return 1
    if all(x == 1 for x in mu):
        return dimension(rep)
    k, rest = mu[0], mu[1:]
    beta = beta_numbers(rep)
    present = set(beta)
    total = 0
    for b in beta:
        c = b - k
        if c < 0 or c in present:
            continue
        height = sum(1 for x in beta if c < x < b)
        leftover = [x for x in beta if x != b] + [c]
        total += (-1) ** height * _mn(_partition_from_beta(leftover), rest)
    return total


def normalized_character_exact(rep: Partition, k: int) -> int:
    """|C_{[k,1^{n-k}]}| * chi^rep([k,1^{n-k}]) / dim(rep), exactly.

    Uses the border-strip ratio form: each removable strip (a beta number b
    with b-k >= 0 and b-k free) contributes b!/(b-k)! times the product over
    the other beta numbers c of (c-b+k)/(c-b); the sum divided by k is the
    eigenvalue of the k-cycle class sum on the rep. The Murnaghan-Nakayama
    sign cancels against the re-sorting sign of the beta Vandermonde, which
    is what makes each term a plain signed rational. Exactness is enforced:
    a non-integer result raises, it would mean the implementation is wrong.
    """
    n = sum(rep)
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    beta = beta_numbers(rep)
    present = set(beta)
    total = Fraction(0)
    for b in beta:
        if b - k < 0 or (b - k) in present:
            continue
        num = 1
        for j in range(k):
            num *= b - j
        den = 1
        for c in beta:
            if c == b:
                continue
            num *= c - b + k
            den *= c - b
        total += Fraction(num, den)
    value = total / k
    if value.denominator != 1:
        raise ArithmeticError(
            f"normalized character of {rep} at k={k} is not an integer: {value}"
        )
    return int(value)


def sum_of_dimensions(n: int) -> int:
    """Sum of dim(R) over all R with n boxes: the involution count of S_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(
        factorial(n) // (2**k * factorial(k) * factorial(n - 2 * k))
        for k in range(n // 2 + 1)
    )


class CharacterTable:
    """Full character table of S_n with exact integer entries.

    Rows and columns are both indexed by partitions of n in canonical
    (reverse-lexicographic) order; entry (R, mu) is chi^R on class mu.
    """

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        self.labels = partitions(n)
        self.class_sizes = {mu: class_size(mu) for mu in self.labels}
        self.entries = {
            (r, mu): character(r, mu) for r in self.labels for mu in self.labels
        }

    def chi(self, rep: Partition, mu: Partition) -> int:
        return self.entries[(as_partition(rep), as_partition(mu))]

    def row(self, rep: Partition) -> tuple[int, ...]:
        rep = as_partition(rep)
        return tuple(self.entries[(rep, mu)] for mu in self.labels)

    def dimensions(self) -> dict[Partition, int]:
        identity = (1,) * self.n if self.n else ()
        return {r: self.entries[(r, identity)] for r in self.labels}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["rep"] + [format_partition(mu) for mu in self.labels])
        for r in self.labels:
            w.writerow([format_partition(r)] + [self.entries[(r, mu)] for mu in self.labels])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema": "1",
                "n": self.n,
                "classes": [format_partition(mu) for mu in self.labels],
                "rows": {
                    format_partition(r): [self.entries[(r, mu)] for mu in self.labels]
                    for r in self.labels
                },
            },
            sort_keys=True,
        )

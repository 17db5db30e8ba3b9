"""The centre of the symmetric group algebra in two bases.

Class sums T_k (all permutations of cycle type [k,1^{n-k}]) and the primitive
central idempotents P_R are both bases of the centre; the change of basis is
the character table. Class-sum eigenvalues on P_R are the normalized
characters, exact integers, and short prefixes of them separate the
idempotents: k_star(n) is the shortest prefix length that works.
"""

from fractions import Fraction
from functools import cache
from math import factorial, log
import csv
import io

from .symgroup import (
    Partition,
    as_partition,
    centralizer_order,
    character,
    class_size,
    dimension,
    normalized_character_exact,
    partitions,
)

STRUCTURE_CONSTANT_BOUND = 8


class SignatureCollisionError(ValueError):
    """Raised when two diagrams share an eigenvalue signature."""


def cycle_class_size(n: int, k: int) -> int:
    """|T_k| = n!/(k (n-k)!), the number of k-cycles in S_n."""
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    return factorial(n) // (k * factorial(n - k))


def normalized_character(rep: Partition, k: int) -> int:
    """Eigenvalue of the k-cycle class sum on the projector labelled rep."""
    return normalized_character_exact(as_partition(rep), k)


def content_sum(rep: Partition) -> int:
    """Sum of j - i over diagram cells (i, j), rows and columns 0-based."""
    rep = as_partition(rep)
    return sum(j - i for i, r in enumerate(rep) for j in range(r))


def chi_max(n: int, k: int) -> int:
    """Largest T_k eigenvalue over all diagrams with n boxes.

    Computed by scanning every diagram, then asserted equal to the closed
    form |T_k|, attained on the one-row diagram. A mismatch means the
    character machinery is broken, so it raises rather than returns.
    """
    best = max(normalized_character(rep, k) for rep in partitions(n))
    if best != cycle_class_size(n, k):
        raise ArithmeticError(
            f"scan maximum {best} != |T_{k}| = {cycle_class_size(n, k)} at n={n}"
        )
    return best


def signature(rep: Partition, upto: int) -> tuple[int, ...]:
    """Eigenvalues (T_2, ..., T_upto) on the projector labelled rep."""
    rep = as_partition(rep)
    n = sum(rep)
    if not 2 <= upto <= n:
        raise ValueError(f"need 2 <= upto <= n, got {upto}, n={n}")
    return tuple(normalized_character(rep, k) for k in range(2, upto + 1))


def signature_table(n: int, upto: int) -> dict[tuple[int, ...], Partition]:
    """Map from (T_2..T_upto) eigenvalue tuples to the diagram carrying them.

    Raises SignatureCollisionError naming the colliding diagrams whenever
    upto < k_star(n); detection always calls this at upto = k_star(n).
    """
    table: dict[tuple[int, ...], Partition] = {}
    collisions: dict[tuple[int, ...], list[Partition]] = {}
    for rep in partitions(n):
        sig = signature(rep, upto)
        if sig in table:
            collisions.setdefault(sig, [table[sig]]).append(rep)
        else:
            table[sig] = rep
    if collisions:
        detail = "; ".join(
            f"{sig} shared by {list(reps)}" for sig, reps in collisions.items()
        )
        raise SignatureCollisionError(
            f"signatures up to T_{upto} do not separate diagrams of {n}: {detail}"
        )
    return table


def signature_table_csv(n: int, upto: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["partition"] + [f"T_{k}" for k in range(2, upto + 1)])
    for rep in partitions(n):
        w.writerow([",".join(map(str, rep))] + list(signature(rep, upto)))
    return buf.getvalue()


@cache
def k_star(n: int) -> int:
    """Least K with (T_2..T_K) eigenvalues distinct across diagrams.

    Group refinement keeps the work lazy: a T_k column is only evaluated for
    diagrams still sharing a prefix with something else. Always at least 2;
    bounded by n because the full set of cycle class sums generates the centre.
    """
    if n < 2:
        raise ValueError("cutoff needs n >= 2")
    groups: list[list[Partition]] = [list(partitions(n))]
    k = 1
    while True:
        k += 1
        if k > n:
            raise AssertionError(f"no separating prefix up to T_{n} for n={n}")
        refined: list[list[Partition]] = []
        for group in groups:
            if len(group) == 1:
                refined.append(group)
                continue
            buckets: dict[int, list[Partition]] = {}
            for rep in group:
                buckets.setdefault(normalized_character(rep, k), []).append(rep)
            refined.extend(buckets.values())
        groups = refined
        if all(len(g) == 1 for g in groups):
            return k


def k_star_growth_report(n_max: int) -> list[dict]:
    """Rows (n, k_star, n^{1/4}/log n) for eyeballing the growth heuristic."""
    rows = []
    for n in range(2, n_max + 1):
        ks = k_star(n)
        if ks > n:
            raise AssertionError("cutoff exceeded n")
        rows.append({"n": n, "k_star": ks, "heuristic": n**0.25 / log(n)})
    return rows


def structure_constants(n: int, mu: Partition):
    """Matrix of multiplication by T_mu on the class-sum basis, exact integers.

    Entry [lam][nu] is the coefficient of T_lam in T_mu * T_nu, found by
    counting, for one representative s of class lam, the a in C_mu with
    a^{-1} s in C_nu. Brute force over C_mu, so capped at n <= 8.
    """
    from .groupalgebra import (
        canonical_permutation,
        compose,
        cycle_type,
        inverse,
        permutations_of_type,
    )

    mu = as_partition(mu)
    if sum(mu) != n:
        raise ValueError(f"|{mu}| != {n}")
    if n > STRUCTURE_CONSTANT_BOUND:
        raise ValueError(
            f"structure constants are brute-force counted, capped at n <= {STRUCTURE_CONSTANT_BOUND}"
        )
    labels = partitions(n)
    index = {lam: i for i, lam in enumerate(labels)}
    c_mu = list(permutations_of_type(n, mu))
    matrix = [[0] * len(labels) for _ in labels]
    for lam in labels:
        rep = canonical_permutation(lam)
        row = matrix[index[lam]]
        for a in c_mu:
            row[index[cycle_type(compose(inverse(a), rep))]] += 1
    return tuple(tuple(r) for r in matrix)


def _conj(v):
    return v.conjugate() if isinstance(v, complex) else v


class CentreState:
    """A centre element stored by its coefficients over the projectors P_R.

    Coefficients stay exact (ints or Fractions) when the state is built from
    projectors; QPE-facing helpers convert to floats. The g inner product is
    delta(conj(antipode(a)) b); on projector coefficients it collapses to
    sum conj(a_R) b_R d_R^2/n! because the P_R are g-orthogonal with squared
    norm d_R^2/n!.
    """

    def __init__(self, n: int, coeffs: dict):
        self.n = n
        valid = set(partitions(n))
        clean = {}
        for rep, val in coeffs.items():
            rep = as_partition(rep)
            if rep not in valid:
                raise ValueError(f"{rep} is not a diagram of {n}")
            if val != 0:
                clean[rep] = val
        self.coeffs = clean

    @classmethod
    def from_class_sums(cls, n: int, class_coeffs: dict) -> "CentreState":
        """Build from coefficients over the class sums T_mu.

        a_R = sum_mu c_mu |C_mu| chi^R(mu) / d_R, the g-projection onto P_R.
        """
        cleaned = {as_partition(mu): v for mu, v in class_coeffs.items()}
        coeffs = {}
        for rep in partitions(n):
            d = dimension(rep)
            acc = 0
            for mu, c in cleaned.items():
                if sum(mu) != n:
                    raise ValueError(f"|{mu}| != {n}")
                acc += c * class_size(mu) * character(rep, mu)
            val = Fraction(acc, d) if isinstance(acc, int) else acc / d
            coeffs[rep] = val
        return cls(n, coeffs)

    def class_sum_coefficients(self) -> dict[Partition, object]:
        """Coefficients over the class-sum basis: c_mu = sum_R a_R d_R chi^R(mu)/n!."""
        nf = factorial(self.n)
        out = {}
        for mu in partitions(self.n):
            acc = 0
            for rep, a in self.coeffs.items():
                acc += a * dimension(rep) * character(rep, mu)
            out[mu] = Fraction(acc, nf) if isinstance(acc, int) else acc / nf
        return out

    def g_inner(self, other: "CentreState"):
        if self.n != other.n:
            raise ValueError("mismatched n")
        nf = factorial(self.n)
        acc = 0
        for rep, a in self.coeffs.items():
            b = other.coeffs.get(rep)
            if b is None:
                continue
            w = dimension(rep) ** 2
            term = _conj(a) * b * w
            acc = acc + (Fraction(term, nf) if isinstance(term, int) else term / nf)
        return acc

    def g_norm_sq(self):
        return self.g_inner(self)

    def normalized(self) -> "CentreState":
        """Scale to unit g-norm (float coefficients in general)."""
        norm = abs(self.g_norm_sq()) ** 0.5
        if norm == 0:
            raise ValueError("cannot normalize the zero state")
        return CentreState(self.n, {r: v / norm for r, v in self.coeffs.items()})

    def unit_amplitudes(self, order: tuple[Partition, ...] | None = None):
        """Unit vector of amplitudes over the g-orthonormal projector basis.

        The orthonormal basis vectors are P_R scaled to unit g-norm, so the
        amplitude carried by P_R is a_R d_R/sqrt(n!); the overall scale drops
        out in the final l2 normalization. This is the system state the QPE
        simulator consumes.
        """
        import numpy as np

        if order is None:
            order = partitions(self.n)
        amps = np.array(
            [complex(self.coeffs.get(rep, 0)) * dimension(rep) for rep in order],
            dtype=complex,
        )
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("zero state has no amplitude vector")
        return amps / norm


def projector_state(rep: Partition) -> CentreState:
    """The projector P_R itself: coefficient one on R, zero elsewhere."""
    rep = as_partition(rep)
    return CentreState(sum(rep), {rep: Fraction(1)})


def g_inner(a: CentreState, b: CentreState):
    return a.g_inner(b)

"""Closed-form weight multiplicities for small weight drops in type A.

The Gram-rank engine in :mod:`typea_irreps.verma_gram` answers any
multiplicity question but its cost grows with the number of spanning
monomials.  For the handful of root-coordinate shapes that dominate the
small-dimension tables there are exact closed forms; this module matches
those shapes and evaluates them.

All formulas are evaluated block by block: the difference ``lam - mu``
written in root coordinates splits into maximal runs of positive entries,
separated by zeros.  No positive root crosses a zero gap, so the spanning
monomials, the contravariant Gram matrix, and hence its rank over F_p all
factor as products over the runs.  Each run is matched against the shape
catalogue in its own smaller rank-m subsystem, first as written and then
reversed (applying the multiplicity symmetry under the diagram flip).
"""

from dataclasses import dataclass
from math import comb

from .root_system import is_dominant, is_restricted, rank_of, root_coordinates


class NoPattern:
    """Returned when no closed form covers the queried cell.

    Falsy singleton so callers can write ``if result: ...``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "NoPattern"


NO_PATTERN = NoPattern()


@dataclass(frozen=True)
class OracleResult:
    value: int
    source: str


def epsilon_p(p, k):
    """1 if p divides k, else 0.  epsilon_p(p, 0) == 1."""
    return 1 if k % p == 0 else 0


def _blocks(c):
    """Maximal runs of positive entries of c, as (start, segment) pairs."""
    runs = []
    i = 0
    n = len(c)
    while i < n:
        if c[i] == 0:
            i += 1
            continue
        j = i
        while j < n and c[j] > 0:
            j += 1
        runs.append((i, tuple(c[i:j])))
        i = j
    return runs


def _match_block(coeffs, c, p):
    """Closed form for one positive run, or None.

    coeffs are the highest-weight coefficients on the run's nodes, c the
    root coordinates there (all positive).  Both live in a rank-m
    subsystem where m == len(c).
    """
    m = len(c)
    support = tuple(k for k, a in enumerate(coeffs) if a)

    # lone node: 1x1 Gram (a), singular iff p | a
    if m == 1 and c == (1,):
        return 1 - epsilon_p(p, coeffs[0]), "single-root"

    ends = support == (0, m - 1)
    a_first, a_last = coeffs[0], coeffs[-1]

    # c == (1,...,1), support at both ends
    if m >= 2 and ends and all(ci == 1 for ci in c):
        return m - epsilon_p(p, a_first + a_last + m - 1), "unit-string"

    # c == (1,2,1), support a single doubled interior node
    if c == (1, 2, 1) and support == (1,) and coeffs[1] >= 2:
        return 2 - epsilon_p(p, coeffs[1] + 1), "centered-double"

    # c == (c0,1,...,1) with 2 <= 2*c0 <= a_first + 1, support at both ends
    if (
        m >= 2
        and ends
        and c[0] >= 2
        and all(ci == 1 for ci in c[1:])
        and 2 * c[0] <= a_first + 1
    ):
        return m - epsilon_p(p, a_first + a_last + m - 1), "loaded-end"

    # c == (2,...,2,1) with j >= 2 twos, support {first, last two}
    if (
        m >= 3
        and c[-1] == 1
        and all(ci == 2 for ci in c[:-1])
        and support == (0, m - 2)
        and a_first >= 2
        and coeffs[m - 2] == 1
    ):
        j = m - 1
        return comb(j + 1, 2) - epsilon_p(p, a_first + j) * j, "double-run"

    # c == (1,...,1), support {first, second, last}.  The two short
    # corrections each interact with the full-sum one: observed elementary
    # divisors pair (head, full) and (tail, full), never (head, tail),
    # whose sums differ by a unit below p.
    if m >= 4 and all(ci == 1 for ci in c) and support == (0, 1, m - 1):
        a1, a2, am = coeffs[0], coeffs[1], coeffs[-1]
        e_head = epsilon_p(p, a1 + a2 + 1)
        e_tail = epsilon_p(p, a2 + am + m - 2)
        e_full = epsilon_p(p, a1 + a2 + am + m - 1)
        return (
            2 * (m - 1) - e_head * (m - 2) - e_tail - e_full + e_full * (e_head + e_tail),
            "corner-triple",
        )

    # c == (1,2,2,1), two adjacent unit nodes inside
    if c == (1, 2, 2, 1) and support == (1, 2) and coeffs[1] == coeffs[2] == 1:
        return 5 - epsilon_p(p, 2) - 4 * epsilon_p(p, 3), "adjacent-pair"

    # c == (1,2,...,2,1) with >= 2 twos, unit support just inside each end.
    # The last elementary divisor is binomial(j+1, 2) itself, not j+1; for
    # odd p the two agree, at p == 2 they differ when j == 1, 2 mod 4.
    if (
        m >= 4
        and c[0] == c[-1] == 1
        and all(ci == 2 for ci in c[1:-1])
        and support == (1, m - 2)
        and coeffs[1] == coeffs[m - 2] == 1
    ):
        j = m - 1
        return (
            comb(j + 1, 2) - 1 - epsilon_p(p, j) * j - epsilon_p(p, comb(j + 1, 2)),
            "spread-pair",
        )

    # c == (3,...,3,2,1) with j >= 2 threes, support {first, last three}
    if (
        m >= 4
        and c[-1] == 1
        and c[-2] == 2
        and all(ci == 3 for ci in c[:-2])
        and support == (0, m - 3)
        and a_first >= 3
        and coeffs[m - 3] == 1
    ):
        j = m - 2
        return comb(j + 2, 3) - epsilon_p(p, a_first + j) * comb(j + 1, 2), "triple-run"

    # c == (2,...,2), doubled support at both ends
    if m >= 2 and ends and all(ci == 2 for ci in c) and a_first == a_last == 2:
        return comb(m + 1, 2) - epsilon_p(p, m + 3) * m - epsilon_p(p, m + 2), "full-double"

    return None


def _match_block_either_way(coeffs, c, p):
    hit = _match_block(coeffs, c, p)
    if hit is not None:
        return hit
    hit = _match_block(coeffs[::-1], c[::-1], p)
    if hit is not None:
        value, source = hit
        return value, source + "/flipped"
    return None


def oracle_multiplicity(lam, mu, p):
    """Multiplicity of mu in the irreducible module of highest weight lam.

    Returns an OracleResult when every positive run of the root
    coordinates of lam - mu matches the shape catalogue, NO_PATTERN
    otherwise.  Never guesses: a NO_PATTERN answer only means the general
    engine has to be consulted.

    lam must be p-restricted and mu a dominant weight below it.
    """
    l = rank_of(lam)
    if rank_of(mu) != l:
        raise ValueError("weights of different ranks: %r, %r" % (lam, mu))
    if not is_restricted(lam, p):
        raise ValueError("%r is not %d-restricted" % (lam, p))
    if not is_dominant(mu):
        raise ValueError("%r is not dominant" % (mu,))
    c = root_coordinates(lam, mu)
    if c is None:
        raise ValueError("%r is not subdominant to %r" % (mu, lam))

    runs = _blocks(c)
    if not runs:
        return OracleResult(1, "highest-weight")

    value = 1
    sources = []
    for start, segment in runs:
        coeffs = tuple(lam[start : start + len(segment)])
        hit = _match_block_either_way(coeffs, segment, p)
        if hit is None:
            return NO_PATTERN
        block_value, source = hit
        value *= block_value
        sources.append(source)
    return OracleResult(value, "*".join(sources))


def _fundamental(l, k):
    """k-th fundamental weight as a coefficient tuple; k == 0 gives zero."""
    w = [0] * l
    if k:
        w[k - 1] = 1
    return tuple(w)


def _weight(l, *pairs):
    w = [0] * l
    for k, a in pairs:
        if k:
            w[k - 1] += a
    return tuple(w)


def table3_multiplicities(lam, p):
    """Full subdominant multiplicity map for the nine catalogued weights.

    Returns {mu: multiplicity} for every dominant mu strictly below lam,
    or NO_PATTERN when lam is not one of the nine shapes.  Ranks are
    generic: each shape needs l >= 4 (two of them l >= 5 for all listed
    mu to be distinct nonzero weights; below that the final entries
    coalesce with mu == 0 and the map stays correct).
    """
    l = rank_of(lam)
    if l < 4:
        return NO_PATTERN
    ep = lambda k: epsilon_p(p, k)

    if lam == _weight(l, (2, 2)):
        return {
            _weight(l, (1, 1), (3, 1)): 1,
            _weight(l, (4, 1)): 2 - ep(3),
        }

    if lam == _weight(l, (1, 2), (2, 1)):
        return {
            _weight(l, (2, 2)): 1,
            _weight(l, (1, 1), (3, 1)): 2,
            _weight(l, (4, 1)): 3,
        }

    if lam == _weight(l, (1, 3), (l, 1)):
        return {
            _weight(l, (1, 1), (2, 1), (l, 1)): 1,
            _weight(l, (3, 1), (l, 1)): 1,
            _weight(l, (1, 2)): l - ep(l + 3),
            _weight(l, (2, 1)): l - ep(l + 3),
        }

    if lam == _weight(l, (1, 2), (l - 1, 1)):
        return {
            _weight(l, (2, 1), (l - 1, 1)): 1,
            _weight(l, (1, 1), (l, 1)): l - 1 - ep(l + 1),
            _weight(l): comb(l, 2) - ep(l + 1) * (l - 1),
        }

    if lam == _weight(l, (2, 1), (l - 1, 1)):
        return {
            _weight(l, (1, 1), (l, 1)): l - 2 - ep(l - 1),
            _weight(l): comb(l, 2) - 1 - ep(l - 1) * (l - 1) - ep(comb(l, 2)),
        }

    if lam == _weight(l, (1, 2), (l, 2)):
        return {
            _weight(l, (2, 1), (l, 2)): 1,
            _weight(l, (1, 2), (l - 1, 1)): 1,
            _weight(l, (2, 1), (l - 1, 1)): 1,
            _weight(l, (1, 1), (l, 1)): l - ep(l + 3),
            _weight(l): comb(l + 1, 2) - ep(l + 3) * l - ep(l + 2),
        }

    if lam == _weight(l, (1, 1), (2, 1), (l, 1)):
        return {
            _weight(l, (3, 1), (l, 1)): 2 - ep(3),
            _weight(l, (1, 2)): l - 1 - ep(l),
            _weight(l, (2, 1)): 2 * (l - 1)
            - ep(3) * (l - 2)
            - ep(l)
            - ep(l + 2)
            + ep(l + 2) * (ep(3) + ep(l)),
        }

    if lam == _weight(l, (2, 1), (3, 1)):
        return {
            _weight(l, (1, 1), (4, 1)): 2 - ep(3),
            _fundamental(l, 5 if l >= 5 else 0): 5 - ep(2) - 4 * ep(3),
        }

    if lam == _weight(l, (1, 3), (2, 1)):
        return {
            _weight(l, (1, 1), (2, 2)): 1,
            _weight(l, (1, 2), (3, 1)): 2 - ep(5),
            _weight(l, (2, 1), (3, 1)): 2 - ep(5),
            _weight(l, (1, 1), (4, 1)): 3 - 2 * ep(5),
            _fundamental(l, 5 if l >= 5 else 0): 4 - 3 * ep(5),
        }

    return NO_PATTERN

"""Spanning monomials, the contravariant form, and modular weight
multiplicities.

Monomials are divided-power products of lowering operators over the
positive roots in lexicographic interval order.  The bilinear form is
evaluated two ways: by explicit straightening against the Chevalley
commutation relations, or inside a tensor realization built from
exterior powers of the natural module, whose standard basis is
orthonormal for the contravariant pairing.  Both give the same integer
Gram matrix; the test suite cross-checks them.

The multiplicity of mu in the irreducible head of the Weyl module is
the rank mod p of the Gram matrix of the full spanning set.  Large
weight spaces never materialize that matrix: the form factors through a
row-echelon basis of the realization vectors, so the rank computation
stays polynomial in the weight-space dimension rather than in the
number of monomials.

Chevalley basis: e_(i,j) is the elementary matrix E_{i,j+1}, f_(i,j) is
E_{j+1,i}, and coroots are the commutators; every sign below comes from
those matrices.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .root_system import epsilon_coordinates, positive_roots, root_coordinates

DEFAULT_MONOMIAL_CAP = 20000
_DENSE_CAP = 4000
_OVERFLOW_LIMIT = 1 << 60


class ResourceExceeded(Exception):
    """A spanning set or matrix passed its configured cap."""

    def __init__(self, message, blocking=None):
        super().__init__(message)
        self.blocking = blocking


def _require_prime(p):
    if not isinstance(p, int) or p < 2:
        raise ValueError("characteristic must be a prime, got %r" % (p,))
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError("characteristic must be a prime, got %r" % (p,))
        d += 1


# ---------------------------------------------------------------------------
# Kostant partitions


def kostant_count(c, cap=None):
    """Number of multisets of interval roots summing to c; saturates at
    cap+1 when cap is given."""
    l = len(c)
    roots = positive_roots(l)
    nroots = len(roots)
    rem = list(c)
    count = 0

    def rec(idx, total):
        nonlocal count
        if cap is not None and count > cap:
            return
        if total == 0:
            count += 1
            return
        if idx == nroots:
            return
        i, j = roots[idx]
        if any(rem[k] for k in range(i - 1)):
            return
        smax = min(rem[i - 1:j])
        rec(idx + 1, total)
        for s in range(1, smax + 1):
            for k in range(i - 1, j):
                rem[k] -= 1
            rec(idx + 1, total - s * (j - i + 1))
        for k in range(i - 1, j):
            rem[k] += smax

    if any(x < 0 for x in c):
        raise ValueError("negative root coordinates: %r" % (c,))
    rec(0, sum(c))
    return count if cap is None else min(count, cap + 1)


def monomials_for_vector(c, cap=None):
    """All divided-power monomials with root content c.

    A monomial is a tuple of ((i, j), exponent) factors with roots in
    ascending lexicographic order.  Output order is deterministic:
    depth-first over roots with ascending exponents.  Raises
    ResourceExceeded past cap.
    """
    l = len(c)
    if any(x < 0 for x in c):
        raise ValueError("negative root coordinates: %r" % (c,))
    roots = positive_roots(l)
    nroots = len(roots)
    rem = list(c)
    out = []
    factors = []

    def rec(idx, total):
        if cap is not None and len(out) > cap:
            return
        if total == 0:
            out.append(tuple(factors))
            return
        if idx == nroots:
            return
        i, j = roots[idx]
        if any(rem[k] for k in range(i - 1)):
            return
        smax = min(rem[i - 1:j])
        rec(idx + 1, total)
        for s in range(1, smax + 1):
            for k in range(i - 1, j):
                rem[k] -= 1
            factors.append((roots[idx], s))
            rec(idx + 1, total - s * (j - i + 1))
            factors.pop()
        for k in range(i - 1, j):
            rem[k] += smax

    rec(0, sum(c))
    if cap is not None and len(out) > cap:
        raise ResourceExceeded(
            "spanning set larger than cap %d for content %r" % (cap, tuple(c)))
    return out


def spanning_monomials(lam, mu, cap=None):
    """Spanning monomials of the mu weight space under lam; content is
    lam - mu in root coordinates.  Raises ValueError when mu is not
    subdominant to lam."""
    c = root_coordinates(lam, mu)
    if c is None:
        raise ValueError("%r is not subdominant to %r" % (mu, lam))
    return monomials_for_vector(c, cap)


# ---------------------------------------------------------------------------
# Structure constants


def _bracket_ef(alpha, beta):
    """[e_alpha, f_beta] as a tagged value: ('h', alpha), ('e', gamma, sign),
    ('f', gamma, sign), or None."""
    a, b = alpha
    c, d = beta
    if alpha == beta:
        return ("h", alpha, 1)
    if b == d:
        if a < c:
            return ("e", (a, c - 1), 1)
        return ("f", (c, a - 1), 1)
    if a == c:
        if d < b:
            return ("e", (d + 1, b), -1)
        return ("f", (b + 1, d), -1)
    return None


def _bracket_ff(beta1, beta2):
    """[f_beta1, f_beta2] as (gamma, sign) or None."""
    i, j = beta1
    i2, j2 = beta2
    if i == j2 + 1:
        return ((i2, j), 1)
    if i2 == j + 1:
        return ((i, j2), -1)
    return None


def _coroot_pairing(weight, alpha):
    """<weight, alpha-check> for an interval coroot: sum of coefficients."""
    a, b = alpha
    return sum(weight[a - 1:b])


def _root_coroot_pairing(beta, alpha):
    """<beta, alpha-check> for two interval roots."""
    a, b = alpha
    c, d = beta
    out = 0
    if a == c:
        out += 1
    if a == d + 1:
        out -= 1
    if b == c - 1:
        out -= 1
    if b == d:
        out += 1
    return out


# ---------------------------------------------------------------------------
# Straightening evaluator

_straighten_memo = {}


def _straighten_word(word):
    """Rewrite a plain lowering word as sorted words: dict word -> int.

    Words are tuples of interval roots, leftmost operator applied last;
    sorted means ascending lexicographic root order.
    """
    got = _straighten_memo.get(word)
    if got is not None:
        return got
    pos = -1
    for k in range(len(word) - 1):
        if word[k] > word[k + 1]:
            pos = k
            break
    if pos < 0:
        out = {word: 1}
        _straighten_memo[word] = out
        return out
    out = {}
    swapped = word[:pos] + (word[pos + 1], word[pos]) + word[pos + 2:]
    for w, cf in _straighten_word(swapped).items():
        out[w] = out.get(w, 0) + cf
    br = _bracket_ff(word[pos], word[pos + 1])
    if br is not None:
        gamma, sign = br
        shorter = word[:pos] + (gamma,) + word[pos + 2:]
        for w, cf in _straighten_word(shorter).items():
            out[w] = out.get(w, 0) + sign * cf
    out = {w: cf for w, cf in out.items() if cf}
    _straighten_memo[word] = out
    return out


def _word_factorial(word):
    out = 1
    run = 1
    for k in range(1, len(word) + 1):
        if k < len(word) and word[k] == word[k - 1]:
            run += 1
        else:
            out *= math.factorial(run)
            run = 1
    return out


def _sorted_word_to_monomial(word):
    factors = []
    for beta in word:
        if factors and factors[-1][0] == beta:
            factors[-1] = (beta, factors[-1][1] + 1)
        else:
            factors.append((beta, 1))
    return tuple(factors)


def _monomial_to_word(mon):
    out = []
    for beta, s in mon:
        out.extend([beta] * s)
    return tuple(out)


def _monomial_factorial(mon):
    out = 1
    for _, s in mon:
        out *= math.factorial(s)
    return out


class GramEngine:
    """Contravariant-form evaluator for one highest weight, by explicit
    commutation of raising operators through lowering words."""

    def __init__(self, lam):
        self.lam = tuple(lam)
        self.l = len(lam)
        self._e_memo = {}

    def apply_e(self, alpha, word):
        """e_alpha applied to the plain word acting on the highest vector:
        dict word -> integer coefficient."""
        key = (alpha, word)
        got = self._e_memo.get(key)
        if got is not None:
            return got
        out = {}
        if word:
            beta, rest = word[0], word[1:]
            for w, cf in self.apply_e(alpha, rest).items():
                w2 = (beta,) + w
                out[w2] = out.get(w2, 0) + cf
            br = _bracket_ef(alpha, beta)
            if br is not None:
                kind, gamma, sign = br
                if kind == "h":
                    scal = _coroot_pairing(self.lam, alpha)
                    for b2 in rest:
                        scal -= _root_coroot_pairing(b2, alpha)
                    if scal:
                        out[rest] = out.get(rest, 0) + scal
                elif kind == "f":
                    w2 = (gamma,) + rest
                    out[w2] = out.get(w2, 0) + sign
                else:
                    for w, cf in self.apply_e(gamma, rest).items():
                        out[w] = out.get(w, 0) + sign * cf
        out = {w: cf for w, cf in out.items() if cf}
        self._e_memo[key] = out
        return out

    def form_entry(self, vmon, wmon):
        """a_{v,w}: coefficient of the highest vector after the reversed
        divided raising word of v hits w applied to the highest vector."""
        state = {_monomial_to_word(wmon): 1}
        for beta, s in vmon:
            for _ in range(s):
                nxt = {}
                for w, cf in state.items():
                    for w2, cf2 in self.apply_e(beta, w).items():
                        nxt[w2] = nxt.get(w2, 0) + cf * cf2
                state = {w: cf for w, cf in nxt.items() if cf}
                if not state:
                    break
        num = state.get((), 0)
        den = _monomial_factorial(vmon) * _monomial_factorial(wmon)
        assert num % den == 0, (self.lam, vmon, wmon, num, den)
        return num // den

    def raise_vector(self, alpha, vector):
        """e_alpha on a combination of divided monomials; result again in
        divided monomials (roots ascending), rational coefficients."""
        out = {}
        for mon, coeff in vector.items():
            coeff = Fraction(coeff, _monomial_factorial(mon))
            for w, cf in self.apply_e(alpha, _monomial_to_word(mon)).items():
                if not cf:
                    continue
                for sw, cf2 in _straighten_word(w).items():
                    mon2 = _sorted_word_to_monomial(sw)
                    val = coeff * cf * cf2 * _word_factorial(sw)
                    out[mon2] = out.get(mon2, 0) + val
        return {m: c for m, c in out.items() if c}


_engines = {}


def _engine(lam):
    lam = tuple(lam)
    eng = _engines.get(lam)
    if eng is None:
        eng = _engines[lam] = GramEngine(lam)
    return eng


def apply_raising(lam, alpha, vector):
    """Module-level wrapper for GramEngine.raise_vector."""
    return _engine(lam).raise_vector(alpha, vector)


# ---------------------------------------------------------------------------
# Tensor realization

_WEDGE_CACHE = {}


def _wedge_move(subset, i, t):
    """Replace index i by t in a sorted tuple, with the sign of re-sorting;
    None when impossible (i absent or t present)."""
    key = (subset, i, t)
    got = _WEDGE_CACHE.get(key)
    if got is None:
        if i not in subset or t in subset:
            got = (None, 0)
        else:
            lo, hi = (i, t) if i < t else (t, i)
            sign = -1 if sum(1 for x in subset if lo < x < hi) % 2 else 1
            newset = tuple(sorted([x for x in subset if x != i] + [t]))
            got = (newset, sign)
        _WEDGE_CACHE[key] = got
    return got


class _Space:
    __slots__ = ("elements", "index")

    def __init__(self, elements):
        self.elements = elements
        self.index = {el: k for k, el in enumerate(elements)}

    def __len__(self):
        return len(self.elements)


class TensorRealization:
    """Model of the cyclic highest-weight span inside a tensor product of
    exterior powers: one wedge-power factor per unit of each fundamental
    coefficient.

    Factor groups listed in `compress` store their copies as multisets
    (symmetric divided basis) instead of ordered tuples; the standard
    basis then has squared norms 1/(product of repetition factorials),
    which is harmless exactly when those factorials avoid the working
    characteristic.
    """

    def __init__(self, lam, compress=frozenset()):
        self.lam = tuple(lam)
        self.l = len(lam)
        self.groups = []
        for k in range(1, self.l + 1):
            a = lam[k - 1]
            if a:
                self.groups.append((k, a, k in compress))
        self._spaces = {}
        self._triples = {}

    def top_row(self):
        return epsilon_coordinates(self.lam)

    def top_element(self):
        parts = []
        for k, a, _ in self.groups:
            top = tuple(range(1, k + 1))
            parts.append((top,) * a)
        return tuple(parts)

    def norm_denominator(self, element):
        """Product of repetition factorials over compressed groups."""
        out = 1
        for (k, a, compressed), part in zip(self.groups, element):
            if not compressed:
                continue
            run = 1
            for t in range(1, len(part) + 1):
                if t < len(part) and part[t] == part[t - 1]:
                    run += 1
                else:
                    out *= math.factorial(run)
                    run = 1
        return out

    def space(self, row):
        got = self._spaces.get(row)
        if got is not None:
            return got
        m = self.l + 1
        elements = []
        rem = list(row)
        parts = []

        def fill_group(g):
            if g == len(self.groups):
                if not any(rem):
                    elements.append(tuple(parts))
                return
            k, a, compressed = self.groups[g]
            budget = sum(kk * aa for kk, aa, _ in self.groups[g:])
            if sum(rem) != budget:
                return
            chosen = []

            def fill_copy(t, lowest):
                if t == a:
                    parts.append(tuple(chosen))
                    fill_group(g + 1)
                    parts.pop()
                    return
                for sub in _subsets_with_counts(rem, k, m, lowest):
                    for x in sub:
                        rem[x - 1] -= 1
                    chosen.append(sub)
                    fill_copy(t + 1, sub if compressed else None)
                    chosen.pop()
                    for x in sub:
                        rem[x - 1] += 1

            fill_copy(0, None)

        fill_group(0)
        sp = _Space(elements)
        self._spaces[row] = sp
        return sp

    def moves(self, root, element):
        """One lowering step: list of (element', coeff)."""
        i, j = root
        t = j + 1
        out = []
        for g, ((k, a, compressed), part) in enumerate(zip(self.groups, element)):
            if compressed:
                seen = set()
                for pos, sub in enumerate(part):
                    if sub in seen:
                        continue
                    seen.add(sub)
                    newset, sign = _wedge_move(sub, i, t)
                    if newset is None:
                        continue
                    mult = sum(1 for x in part if x == newset)
                    rest = list(part)
                    del rest[pos]
                    rest.append(newset)
                    rest.sort()
                    el2 = element[:g] + (tuple(rest),) + element[g + 1:]
                    out.append((el2, sign * (mult + 1)))
            else:
                for pos, sub in enumerate(part):
                    newset, sign = _wedge_move(sub, i, t)
                    if newset is None:
                        continue
                    el2 = element[:g] + (part[:pos] + (newset,) + part[pos + 1:],) + element[g + 1:]
                    out.append((el2, sign))
        return out

    def lower_row(self, root, row):
        i, j = root
        out = list(row)
        out[i - 1] -= 1
        out[j] += 1
        return tuple(out)

    def triples(self, root, src_row):
        """Dense action data of one lowering step from the given weight row:
        (dst_row, dst_idx, src_idx, coeff) with numpy index arrays."""
        key = (root, src_row)
        got = self._triples.get(key)
        if got is not None:
            return got
        dst_row = self.lower_row(root, src_row)
        src = self.space(src_row)
        dst = self.space(dst_row)
        ds, ss, cs = [], [], []
        for idx, el in enumerate(src.elements):
            for el2, cf in self.moves(root, el):
                ds.append(dst.index[el2])
                ss.append(idx)
                cs.append(cf)
        got = (dst_row,
               np.array(ds, dtype=np.int64),
               np.array(ss, dtype=np.int64),
               np.array(cs, dtype=np.int64))
        self._triples[key] = got
        return got

    def apply_f_dense(self, root, src_row, vec):
        dst_row, ds, ss, cs = self.triples(root, src_row)
        out = np.zeros(len(self.space(dst_row)), dtype=np.int64)
        if len(ds):
            np.add.at(out, ds, cs * vec[ss])
        return dst_row, out

    def apply_f_sparse(self, root, src_row, vec):
        """Dict-based exact action for arbitrary-precision paths."""
        dst_row = self.lower_row(root, src_row)
        out = {}
        for el, coeff in vec.items():
            for el2, cf in self.moves(root, el):
                out[el2] = out.get(el2, 0) + coeff * cf
        return dst_row, {el: c for el, c in out.items() if c}


def _subsets_with_counts(rem, k, m, lowest):
    """Sorted k-subsets of 1..m with rem[x-1] > 0 for every member, at
    least `lowest` in subset order when given."""
    out = []
    cur = []

    def rec(start):
        if len(cur) == k:
            sub = tuple(cur)
            if lowest is None or sub >= lowest:
                out.append(sub)
            return
        for x in range(start, m + 1):
            if m - x + 1 < k - len(cur):
                break
            if rem[x - 1] > 0:
                cur.append(x)
                rec(x + 1)
                cur.pop()

    rec(1)
    return out


class _ImageCalculator:
    """Exact realization images of divided monomials, sharing work across
    common applied-first tails.  Vectors are dicts element -> int."""

    def __init__(self, realization):
        self.real = realization
        self.memo = {(): (realization.top_row(), {realization.top_element(): 1})}

    def image(self, mon):
        got = self.memo.get(mon)
        if got is not None:
            return got
        (root, s), tail = mon[0], mon[1:]
        row, vec = self.image(tail)
        for t in range(1, s + 1):
            row, vec = self.real.apply_f_sparse(root, row, vec)
            if t > 1:
                for el in vec:
                    q, r = divmod(vec[el], t)
                    assert r == 0, (self.real.lam, mon, el)
                    vec[el] = q
        got = (row, vec)
        self.memo[mon] = got
        return got


# ---------------------------------------------------------------------------
# Gram matrices


@dataclass
class GramMatrix:
    """Integer contravariant-form matrix on the spanning monomials of one
    weight space, with its row/column labels."""

    lam: tuple
    mu: tuple
    monomials: list
    rows: list = field(repr=False)

    def __len__(self):
        return len(self.monomials)


def _entries_of(A):
    if isinstance(A, GramMatrix):
        return A.rows
    return [list(r) for r in A]


def gram_matrix(lam, mu, cap=DEFAULT_MONOMIAL_CAP, method="auto", threads=1):
    """Contravariant Gram matrix on spanning_monomials(lam, mu).

    method: "auto" (tensor realization dot products) or "straighten"
    (commutation of raising words; slower, kept as an independent
    evaluator).  Raises ResourceExceeded when the spanning set passes
    `cap` or is too large to materialize densely.
    """
    mons = spanning_monomials(lam, mu, cap)
    n = len(mons)
    if n > _DENSE_CAP:
        raise ResourceExceeded(
            "dense Gram matrix with %d monomials; use the rank path" % n,
            blocking=tuple(mu))
    if method == "straighten":
        eng = GramEngine(lam)

        def row_of(a):
            return [eng.form_entry(mons[a], mons[b]) for b in range(n)]

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                rows = list(ex.map(row_of, range(n)))
        else:
            rows = [row_of(a) for a in range(n)]
        for a in range(n):
            for b in range(a):
                assert rows[a][b] == rows[b][a], (lam, mu, a, b)
    elif method == "auto":
        real = TensorRealization(lam)
        calc = _ImageCalculator(real)
        vecs = []
        for mon in mons:
            row, vec = calc.image(mon)
            vecs.append(vec)

        def row_of(a):
            va = vecs[a]
            out = []
            for b in range(n):
                vb = vecs[b]
                small, big = (va, vb) if len(va) <= len(vb) else (vb, va)
                out.append(sum(cf * big.get(el, 0) for el, cf in small.items()))
            return out

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                rows = list(ex.map(row_of, range(n)))
        else:
            rows = [row_of(a) for a in range(n)]
    else:
        raise ValueError("unknown gram method %r" % (method,))
    return GramMatrix(tuple(lam), tuple(mu), mons, rows)


def gram_on_combinations(lam, mu, combinations, cap=DEFAULT_MONOMIAL_CAP):
    """Form matrix on explicit integer combinations of spanning monomials;
    each combination is a dict monomial -> coefficient."""
    real = TensorRealization(lam)
    calc = _ImageCalculator(real)
    vecs = []
    for combo in combinations:
        acc = {}
        for mon, coeff in combo.items():
            _, vec = calc.image(tuple(mon))
            for el, cf in vec.items():
                acc[el] = acc.get(el, 0) + coeff * cf
        vecs.append({el: cf for el, cf in acc.items() if cf})
    n = len(vecs)
    out = []
    for a in range(n):
        va = vecs[a]
        out.append([sum(cf * vecs[b].get(el, 0) for el, cf in va.items())
                    for b in range(n)])
    return out


# ---------------------------------------------------------------------------
# Ranks and Smith form


def rank_mod_p(A, p):
    """Rank of an integer matrix over the prime field F_p."""
    _require_prime(p)
    rows = _entries_of(A)
    if not rows:
        return 0
    M = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    n, m = M.shape
    rank = 0
    for col in range(m):
        piv = None
        for r in range(rank, n):
            if M[r, col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, col]), p - 2, p)
        M[rank] = (M[rank] * inv) % p
        mask = M[:, col] != 0
        mask[rank] = False
        if mask.any():
            M[mask] = (M[mask] - np.outer(M[mask, col], M[rank])) % p
        rank += 1
        if rank == n:
            break
    return rank


def rational_rank(A):
    """Exact rank over the rationals, by fraction-free elimination."""
    rows = [list(map(int, r)) for r in _entries_of(A)]
    if not rows:
        return 0
    n, m = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for col in range(m):
        piv = None
        for r in range(rank, n):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pivval = rows[rank][col]
        for r in range(rank + 1, n):
            factor = rows[r][col]
            for cidx in range(m):
                rows[r][cidx] = (pivval * rows[r][cidx] - factor * rows[rank][cidx]) // prev
        prev = pivval
        rank += 1
        if rank == n:
            break
    return rank


def smith_normal_form(A):
    """Elementary divisor chain d_1 | d_2 | ... of an integer matrix,
    non-negative, zeros last, length min(n, m)."""
    M = [list(map(int, r)) for r in _entries_of(A)]
    if not M:
        return []
    n, m = len(M), len(M[0])
    size = min(n, m)
    divisors = []
    t = 0
    while t < size:
        piv = None
        best = None
        for r in range(t, n):
            for c in range(t, m):
                v = abs(M[r][c])
                if v and (best is None or v < best):
                    best = v
                    piv = (r, c)
        if piv is None:
            break
        while True:
            r0, c0 = piv
            M[t], M[r0] = M[r0], M[t]
            for row in M:
                row[t], row[c0] = row[c0], row[t]
            dirty = False
            for r in range(t + 1, n):
                if M[r][t]:
                    q = M[r][t] // M[t][t]
                    for c in range(t, m):
                        M[r][c] -= q * M[t][c]
                    if M[r][t]:
                        dirty = True
            for c in range(t + 1, m):
                if M[t][c]:
                    q = M[t][c] // M[t][t]
                    for r in range(t, n):
                        M[r][c] -= q * M[r][t]
                    if M[t][c]:
                        dirty = True
            if not dirty and all(M[r][t] == 0 for r in range(t + 1, n)) \
                    and all(M[t][c] == 0 for c in range(t + 1, m)):
                stray = None
                d = M[t][t]
                for r in range(t + 1, n):
                    for c in range(t + 1, m):
                        if M[r][c] % d:
                            stray = r
                            break
                    if stray is not None:
                        break
                if stray is None:
                    break
                for c in range(t, m):
                    M[t][c] += M[stray][c]
            piv = None
            best = None
            for r in range(t, n):
                for c in range(t, m):
                    v = abs(M[r][c])
                    if v and (best is None or v < best):
                        best = v
                        piv = (r, c)
        divisors.append(abs(M[t][t]))
        t += 1
    while len(divisors) < size:
        divisors.append(0)
    return divisors


# ---------------------------------------------------------------------------
# Modular multiplicities


def _echelon_push(rows, pivots, v, p):
    """Reduce v against the current echelon basis; append when nonzero."""
    for row, piv in zip(rows, pivots):
        x = v[piv]
        if x:
            v = (v - x * row) % p
    nz = np.nonzero(v)[0]
    if len(nz) == 0:
        return
    piv = int(nz[0])
    inv = pow(int(v[piv]), p - 2, p)
    rows.append((v * inv) % p)
    pivots.append(piv)


def _stream_rank(lam, mu, p):
    c = root_coordinates(lam, mu)
    compress = frozenset(k for k in range(1, len(lam) + 1)
                         if 0 < lam[k - 1] < p)
    real = TensorRealization(lam, compress)
    roots = positive_roots(len(lam))
    nroots = len(roots)
    rem = list(c)
    target = list(real.top_row())
    for i, ci in enumerate(c):
        target[i] -= ci
        target[i + 1] += ci
    target = tuple(target)
    rows, pivots = [], []

    def rec(idx, row, vec, total):
        if total == 0:
            assert row == target, (lam, mu, row)
            _echelon_push(rows, pivots, vec % p, p)
            return
        if idx == nroots:
            return
        i, j = roots[idx]
        if any(rem[k] for k in range(i - 1)):
            return
        smax = min(rem[i - 1:j])
        rec(idx + 1, row, vec, total)
        cur_row, cur = row, vec
        for s in range(1, smax + 1):
            cur_row, cur = real.apply_f_dense(roots[idx], cur_row, cur)
            if s > 1:
                q, r = np.divmod(cur, s)
                assert not r.any(), (lam, mu, roots[idx], s)
                cur = q
            assert np.abs(cur).max(initial=0) < _OVERFLOW_LIMIT
            for k in range(i - 1, j):
                rem[k] -= 1
            rec(idx + 1, cur_row, cur, total - s * (j - i + 1))
        for k in range(i - 1, j):
            rem[k] += smax

    top = np.zeros(len(real.space(real.top_row())), dtype=np.int64)
    top[real.space(real.top_row()).index[real.top_element()]] = 1
    rec(0, real.top_row(), top, sum(c))
    if not rows:
        return 0
    R = np.array(rows, dtype=np.int64)
    space = real.space(target)
    scale = np.array([pow(real.norm_denominator(el) % p, p - 2, p)
                      for el in space.elements], dtype=np.int64)
    G = (R * scale[None, :]) @ R.T % p
    return rank_mod_p(G.tolist(), p)


def irreducible_multiplicity(lam, mu, p, cap=DEFAULT_MONOMIAL_CAP, method="auto"):
    """Multiplicity of mu in the irreducible head of the Weyl module of
    highest weight lam in characteristic p: the rank mod p of the
    contravariant Gram matrix on the full spanning set.

    method "auto" streams realization vectors through a mod-p echelon
    factorization; "dense" and "straighten" materialize the Gram matrix
    first.  Raises ResourceExceeded when the spanning set passes cap.
    """
    _require_prime(p)
    c = root_coordinates(lam, mu)
    if c is None:
        raise ValueError("%r is not subdominant to %r" % (mu, lam))
    if method in ("dense", "straighten"):
        gm = gram_matrix(lam, mu, cap=cap,
                         method="auto" if method == "dense" else method)
        return rank_mod_p(gm, p)
    count = kostant_count(c, cap)
    if count > cap:
        raise ResourceExceeded(
            "spanning set for mu=%r larger than cap %d" % (tuple(mu), cap),
            blocking=tuple(mu))
    return _stream_rank(tuple(lam), tuple(mu), p)


# ---------------------------------------------------------------------------
# Plain-text dump format


def format_gram(A):
    """First line n, then n rows of n integers."""
    rows = _entries_of(A)
    lines = [str(len(rows))]
    for row in rows:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_gram(text):
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty gram dump")
    n = int(lines[0])
    if len(lines) != n + 1:
        raise ValueError("gram dump claims %d rows, has %d" % (n, len(lines) - 1))
    rows = []
    for ln in lines[1:]:
        row = [int(tok) for tok in ln.split()]
        if len(row) != n:
            raise ValueError("gram dump row of length %d, expected %d" % (len(row), n))
        rows.append(row)
    return rows

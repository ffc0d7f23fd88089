"""Nichols and pre-Nichols quotients of the free algebra, degree by degree.

Two quotient engines share one interface:

* :class:`NicholsMaxReducer` realizes the Nichols algebra intrinsically as
  the quotient by the degreewise radical of the skew-Hopf pairing (Gram
  kernel), with dual bases for the truncated quasi R-matrix.
* :class:`PresentationReducer` rewrites modulo a user presentation through
  a degree-truncated noncommutative Groebner basis in the canonical term
  order (length, then lex).
* :class:`FreeReducer` is the identity engine for the free algebra itself.

A reducer maps any word to a combination of basis words of the same degree;
all degrees are bounded by the context's D.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import linalg
from .bichar import height, is_nonneg, unit, wt_add
from .freealg import FreeElement, pairing_words, word_degree, word_key
from .scalars import CycNum


def words_of_degree(ctx, mu):
    """All words with letter content mu, in canonical order."""
    if not is_nonneg(mu):
        return []
    letters = []
    for i, m in enumerate(mu):
        letters.extend([i] * m)
    seen = sorted(set(itertools.permutations(letters)), key=word_key)
    return [tuple(w) for w in seen]


def degrees_up_to(ctx, bound):
    """All mu in N^n with height <= bound, sorted by (height, tuple)."""
    out = []
    for total in range(bound + 1):
        for mu in itertools.product(range(total + 1), repeat=ctx.n):
            if sum(mu) == total:
                out.append(mu)
    return sorted(out, key=lambda m: (height(m), m))


@dataclass
class NicholsDegreeData:
    """Gram matrix, basis and kernel of one homogeneous degree of U^-."""

    degree: tuple
    all_words: list
    gram: list
    pivots: list                      # basis words of the quotient
    kernel_basis: list                # dicts word -> CycNum spanning the radical
    dual_change: list                 # inverse Gram on the pivot block
    reduce_map: dict = field(default_factory=dict)  # word -> [(pivot, CycNum)]


def degree_data(ctx, mu):
    """Compute (and cache) the degree-mu data of the Nichols quotient."""
    if height(mu) > ctx.D:
        raise ValueError(f"degree {mu} exceeds the context bound D={ctx.D}")
    cache = ctx._cache.setdefault("nichols_degree", {})
    got = cache.get(mu)
    if got is not None:
        return got
    words = words_of_degree(ctx, mu)
    one = CycNum.one(ctx.N)
    zero = CycNum.zero(ctx.N)
    gram = [[pairing_words(ctx, fw, ew) for ew in words] for fw in words]
    # the symmetric braiding makes the Gram matrix symmetric; everything
    # downstream (shared E/F reductions, dual bases) relies on it
    for i in range(len(words)):
        for j in range(i):
            assert gram[i][j] == gram[j][i], "Gram matrix must be symmetric"
    R, pivot_cols = linalg.rref(gram, one)
    pivots = [words[c] for c in pivot_cols]
    reduce_map = {}
    for c, w in enumerate(words):
        if c in pivot_cols:
            reduce_map[w] = [(w, one)]
        else:
            combo = []
            for r, pc in enumerate(pivot_cols):
                coef = R[r][c]
                if not coef.is_zero():
                    combo.append((words[pc], coef))
            reduce_map[w] = combo
    kernel = []
    for v in linalg.right_kernel(gram, one, zero):
        kernel.append({w: coef for w, coef in zip(words, v) if not coef.is_zero()})
    if pivots:
        block = [[gram[words.index(p)][words.index(q)] for q in pivots] for p in pivots]
        dual_change = linalg.invert(block, one, zero)
    else:
        dual_change = []
    data = NicholsDegreeData(mu, words, gram, pivots, kernel, dual_change, reduce_map)
    cache[mu] = data
    return data


class FreeReducer:
    """Identity engine: the pre-Nichols algebra with no relations."""

    name = "free"

    def __init__(self, ctx):
        self.ctx = ctx

    def reduce_word(self, w):
        return [(w, CycNum.one(self.ctx.N))]

    def basis(self, mu):
        return words_of_degree(self.ctx, mu)

    def mul_words(self, w1, w2):
        return [(w1 + w2, CycNum.one(self.ctx.N))]


class NicholsMaxReducer:
    """Quotient by the maximal biideal, realized as the pairing radical."""

    name = "nichols_max"

    def __init__(self, ctx):
        self.ctx = ctx

    def reduce_word(self, w):
        mu = word_degree(self.ctx, w)
        if height(mu) > self.ctx.D:
            raise ValueError(f"word degree {mu} exceeds bound D={self.ctx.D}")
        return degree_data(self.ctx, mu).reduce_map[w]

    def basis(self, mu):
        return degree_data(self.ctx, mu).pivots

    def mul_words(self, w1, w2):
        return self.reduce_word(w1 + w2)


class PresentationReducer:
    """Rewriting modulo homogeneous relations, complete up to degree D.

    Relations are FreeElements p_j of homogeneous Z^n-degree.  The two-sided
    ideal is closed under overlaps (Buchberger/diamond completion) truncated
    at N-height D, after which normal forms are confluent below the bound.
    """

    name = "presentation"

    def __init__(self, ctx, relations):
        self.ctx = ctx
        self.relations = list(relations)
        for p in self.relations:
            deg = p.homogeneous_degree()
            if deg is None:
                raise ValueError("pre-Nichols relations must be homogeneous")
            if height(deg) < 2:
                raise ValueError("relations must have height >= 2")
        self.rules = self._complete()

    # a rule is (lead_word, [(word, CycNum), ...]) meaning lead -> sum(tail)
    def _poly_to_rule(self, terms):
        terms = {w: c for w, c in terms.items() if not c.is_zero()}
        if not terms:
            return None
        lead = max(terms, key=word_key)
        inv = terms[lead].inverse()
        tail = [(w, -(inv * c)) for w, c in terms.items() if w != lead]
        return (lead, tail)

    def _nf_terms(self, terms, rules):
        """Normal form of {word: coef} under the given rule list."""
        out = {}
        stack = list(terms.items())
        while stack:
            w, c = stack.pop()
            if c.is_zero():
                continue
            hit = None
            for lead, tail in rules:
                L = len(lead)
                for pos in range(len(w) - L + 1):
                    if w[pos:pos + L] == lead:
                        hit = (pos, L, tail)
                        break
                if hit:
                    break
            if hit is None:
                prev = out.get(w)
                s = c if prev is None else prev + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
            else:
                pos, L, tail = hit
                for tw, tc in tail:
                    stack.append((w[:pos] + tw + w[pos + L:], c * tc))
        return out

    def _ambiguities(self, r1, r2):
        """S-polynomials of all overlap and inclusion ambiguities of two rules.

        Both reductions of the ambiguity word are subtracted; the results are
        raw term dicts, to be normalized by the caller.
        """
        (l1, t1), (l2, t2) = r1, r2
        zero = CycNum.zero(self.ctx.N)
        out = []
        # overlap: l1 = a s, l2 = s b with 0 < |s| < min -> word a s b
        for k in range(1, min(len(l1), len(l2))):
            if l1[len(l1) - k:] == l2[:k]:
                a, b = l1[:len(l1) - k], l2[k:]
                if len(a) + k + len(b) > self.ctx.D:
                    continue
                s_poly = {}
                for tw, tc in t1:
                    s_poly[tw + b] = s_poly.get(tw + b, zero) + tc
                for tw, tc in t2:
                    s_poly[a + tw] = s_poly.get(a + tw, zero) - tc
                out.append(s_poly)
        # inclusion: l2 = a l1 b
        if len(l1) < len(l2):
            for pos in range(len(l2) - len(l1) + 1):
                if l2[pos:pos + len(l1)] == l1:
                    a, b = l2[:pos], l2[pos + len(l1):]
                    s_poly = {}
                    for tw, tc in t1:
                        s_poly[a + tw + b] = s_poly.get(a + tw + b, zero) + tc
                    for tw, tc in t2:
                        s_poly[tw] = s_poly.get(tw, zero) - tc
                    out.append(s_poly)
        return out

    def _complete(self):
        rules = []
        pending = []
        for p in self.relations:
            for w, s in p.terms.items():
                if not s.is_constant():
                    raise ValueError("presentation coefficients must be parameter-free")
            pending.append({w: s.constant_term() for w, s in p.terms.items()})
        while pending:
            terms = self._nf_terms(pending.pop(0), rules)
            rule = self._poly_to_rule(terms)
            if rule is None:
                continue
            new = (rule[0], list(rule[1]))
            for other in rules + [new]:
                pending.extend(self._ambiguities(new, other))
                if other is not new:
                    pending.extend(self._ambiguities(other, new))
            rules.append(new)
        # confluence sanity: every remaining ambiguity resolves to zero
        for r1 in rules:
            for r2 in rules:
                for s_poly in self._ambiguities(r1, r2):
                    assert not self._nf_terms(s_poly, rules), \
                        "truncated completion left an unresolved ambiguity"
        return rules

    def reduce_word(self, w):
        cache = self.ctx._cache.setdefault(("presentation_nf", id(self)), {})
        got = cache.get(w)
        if got is None:
            nf = self._nf_terms({w: CycNum.one(self.ctx.N)}, self.rules)
            got = sorted(nf.items(), key=lambda t: word_key(t[0]))
            cache[w] = got
        return got

    def basis(self, mu):
        # a word is irreducible iff its normal form is itself
        return [w for w in words_of_degree(self.ctx, mu)
                if self.reduce_word(w) == [(w, CycNum.one(self.ctx.N))]]

    def mul_words(self, w1, w2):
        return self.reduce_word(w1 + w2)


def normal_form_prenichols(ctx, relations, f, bound=None):
    """Confluent normal form of f modulo the two-sided ideal of the relations."""
    bound = ctx.D if bound is None else bound
    if f.max_height() > bound:
        raise ValueError("element exceeds the degree bound")
    red = get_reducer(ctx, "presentation", relations)
    out = FreeElement(ctx, f.side)
    for w, s in f.terms.items():
        for w2, c in red.reduce_word(w):
            t = out.terms.get(w2)
            p = s * c
            t = p if t is None else t + p
            if t.is_zero():
                out.terms.pop(w2, None)
            else:
                out.terms[w2] = t
    return out


def get_reducer(ctx, mode, relations=None):
    """Shared reducer instances per context: free, nichols_max, presentation."""
    cache = ctx._cache.setdefault("reducers", {})
    if mode == "presentation":
        key = (mode, id(relations)) if relations is not None else mode
    else:
        key = mode
    red = cache.get(key)
    if red is None:
        if mode == "free":
            red = FreeReducer(ctx)
        elif mode == "nichols_max":
            red = NicholsMaxReducer(ctx)
        elif mode == "presentation":
            if relations is None:
                raise ValueError("presentation mode needs relations")
            red = PresentationReducer(ctx, relations)
        else:
            raise ValueError(f"unknown quotient mode {mode!r}")
        cache[key] = red
    return red


def theta_truncated(ctx):
    """The quasi R-matrix by degrees: mu -> (pivot words, coefficient matrix).

    Theta_mu = sum_{j,k} M[j][k] F_{w_j} (x) E_{w_k} with M the signed inverse
    Gram block on the pivot words; degree 0 contributes 1 (x) 1.
    """
    out = {}
    for mu in degrees_up_to(ctx, ctx.D):
        data = degree_data(ctx, mu)
        if not data.pivots:
            continue
        sign = -1 if height(mu) % 2 else 1
        M = [[sign * entry for entry in row] for row in data.dual_change]
        out[mu] = (data.pivots, M)
    return out


def dual_basis_elements(ctx, mu):
    """Pairs (F-pivot word, dual E-combination) at degree mu.

    The k-th dual E-vector D_k = sum_p dual_change[p][k] E_p pairs to
    delta_{jk} against the pivot F-words.
    """
    data = degree_data(ctx, mu)
    out = []
    for k, w in enumerate(data.pivots):
        combo = [(p, data.dual_change[r][k]) for r, p in enumerate(data.pivots)
                 if not data.dual_change[r][k].is_zero()]
        out.append((w, combo))
    return out

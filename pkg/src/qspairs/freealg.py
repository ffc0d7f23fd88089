"""Free Z^n-graded algebra on n letters, skew derivations, and the pairing.

Words are tuples of 0-based letters.  The canonical term order used
throughout the package is (length, lexicographic); the pairing between
F-words and E-words is computed by iterated skew derivations with
memoization, never through the shuffle coproduct.
"""

from __future__ import annotations

from .bichar import unit, wt_add, wt_zero
from .scalars import CycNum, Scalar


def word_degree(ctx, word):
    d = [0] * ctx.n
    for i in word:
        d[i] += 1
    return tuple(d)


def word_key(word):
    """Canonical order: by length, then lexicographically on letters."""
    return (len(word), word)


def partial_left_word(ctx, i, word):
    """partial_i^L on a single F-word, as a list of (word, CycNum).

    Left Leibniz rule: d(f_mu f_nu) = d(f_mu) f_nu + chi(mu, a_i) f_mu d(f_nu),
    with d(F_j) = delta_ij.
    """
    out = []
    prefix_deg = wt_zero(ctx.n)
    ai = unit(ctx.n, i)
    for k, letter in enumerate(word):
        if letter == i:
            out.append((word[:k] + word[k + 1:], ctx.chi(prefix_deg, ai)))
        prefix_deg = wt_add(prefix_deg, unit(ctx.n, letter))
    return out

def partial_right_word(ctx, i, word):
    """partial_i^R on a single F-word (right Leibniz rule)."""
    out = []
    ai = unit(ctx.n, i)
    suffix_deg = wt_zero(ctx.n)
    for k in range(len(word) - 1, -1, -1):
        if word[k] == i:
            out.append((word[:k] + word[k + 1:], ctx.chi(suffix_deg, ai)))
        suffix_deg = wt_add(suffix_deg, unit(ctx.n, word[k]))
    return out


def _pairing_words(ctx, f_word, e_word):
    """<F_w, E_w'> computed by peeling E-letters through partial^L."""
    cache = ctx._cache.setdefault("pairing", {})
    key = (f_word, e_word)
    v = cache.get(key)
    if v is not None:
        return v
    if not e_word:
        v = CycNum.one(ctx.N) if not f_word else CycNum.zero(ctx.N)
    else:
        i, rest = e_word[0], e_word[1:]
        total = CycNum.zero(ctx.N)
        for w, c in partial_left_word(ctx, i, f_word):
            total = total + c * _pairing_words(ctx, w, rest)
        v = total
    cache[key] = v
    return v


def pairing_words(ctx, f_word, e_word):
    if word_degree(ctx, f_word) != word_degree(ctx, e_word):
        return CycNum.zero(ctx.N)
    return _pairing_words(ctx, f_word, e_word)


def pairing_words_via_right(ctx, f_word, e_word):
    """Same pairing computed with the partial^R chain; used as a cross-check."""
    if word_degree(ctx, f_word) != word_degree(ctx, e_word):
        return CycNum.zero(ctx.N)
    if not e_word:
        return CycNum.one(ctx.N) if not f_word else CycNum.zero(ctx.N)
    i, rest = e_word[-1], e_word[:-1]
    total = CycNum.zero(ctx.N)
    for w, c in partial_right_word(ctx, i, f_word):
        total = total + c * pairing_words_via_right(ctx, w, rest)
    return total


class FreeElement:
    """Element of the free algebra on n letters: a map word -> Scalar.

    ``side`` is "E" or "F" and only documents which copy the element lives
    in; the letter data is identical on both sides.
    """

    __slots__ = ("ctx", "side", "terms")

    def __init__(self, ctx, side="F", terms=None):
        self.ctx = ctx
        self.side = side
        self.terms = {}
        if terms:
            for w, s in terms.items():
                if not s.is_zero():
                    self.terms[tuple(w)] = s

    @classmethod
    def zero(cls, ctx, side="F"):
        return cls(ctx, side)

    @classmethod
    def unit(cls, ctx, side="F"):
        return cls(ctx, side, {(): Scalar.one(ctx.N, ctx.n)})

    @classmethod
    def letter(cls, ctx, i, side="F"):
        return cls(ctx, side, {(i,): Scalar.one(ctx.N, ctx.n)})

    @classmethod
    def from_words(cls, ctx, word_coeffs, side="F"):
        """Build from {word: CycNum-or-Scalar}."""
        terms = {}
        for w, c in word_coeffs.items():
            if isinstance(c, CycNum):
                c = Scalar.from_cyc(ctx.N, ctx.n, c)
            terms[tuple(w)] = c
        return cls(ctx, side, terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, FreeElement) and self.side == other.side
                and self.terms == other.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for w, s in other.terms.items():
            t = out.get(w)
            t = s if t is None else t + s
            if t.is_zero():
                out.pop(w, None)
            else:
                out[w] = t
        res = FreeElement(self.ctx, self.side)
        res.terms = out
        return res

    def __neg__(self):
        res = FreeElement(self.ctx, self.side)
        res.terms = {w: -s for w, s in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, CycNum, int)):
            res = FreeElement(self.ctx, self.side)
            for w, s in self.terms.items():
                t = s * other
                if not t.is_zero():
                    res.terms[w] = t
            return res
        out = FreeElement(self.ctx, self.side)
        for w1, s1 in self.terms.items():
            for w2, s2 in other.terms.items():
                w = w1 + w2
                t = out.terms.get(w)
                p = s1 * s2
                t = p if t is None else t + p
                if t.is_zero():
                    out.terms.pop(w, None)
                else:
                    out.terms[w] = t
        return out

    __rmul__ = __mul__

    def homogeneous_degree(self):
        """The common Z^n degree of all words, or None if inhomogeneous/zero."""
        degs = {word_degree(self.ctx, w) for w in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def max_height(self):
        return max((len(w) for w in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=word_key):
            name = "*".join(f"{'E' if self.side == 'E' else 'F'}{i+1}" for i in w) or "1"
            parts.append(f"({self.terms[w].as_string()})*{name}")
        return " + ".join(parts)


def partial_left(ctx, i, f):
    """partial_i^L on an F-side FreeElement."""
    out = FreeElement(ctx, f.side)
    for w, s in f.terms.items():
        for w2, c in partial_left_word(ctx, i, w):
            t = out.terms.get(w2)
            p = s * c
            t = p if t is None else t + p
            if t.is_zero():
                out.terms.pop(w2, None)
            else:
                out.terms[w2] = t
    return out


def partial_right(ctx, i, f):
    """partial_i^R on an F-side FreeElement."""
    out = FreeElement(ctx, f.side)
    for w, s in f.terms.items():
        for w2, c in partial_right_word(ctx, i, w):
            t = out.terms.get(w2)
            p = s * c
            t = p if t is None else t + p
            if t.is_zero():
                out.terms.pop(w2, None)
            else:
                out.terms[w2] = t
    return out


def pairing(ctx, f, e):
    """Skew-Hopf pairing <f, e> of an F-element with an E-element (a Scalar)."""
    total = Scalar.zero(ctx.N, ctx.n)
    for fw, fs in f.terms.items():
        for ew, es in e.terms.items():
            c = pairing_words(ctx, fw, ew)
            if not c.is_zero():
                total = total + fs * es * c
    return total


def substitute(p, images, one, mul, add, scale):
    """Evaluate the noncommutative polynomial p at the given images.

    ``images[i]`` replaces letter i; the target algebra is described by its
    unit, product, sum and scalar action.  Algebra-homomorphic by
    construction.
    """
    if any(i >= len(images) for w in p.terms for i in w):
        raise ValueError("not enough images for the letters appearing in p")
    total = None
    for w, s in p.terms.items():
        acc = one
        for i in w:
            acc = mul(acc, images[i])
        acc = scale(acc, s)
        total = acc if total is None else add(total, acc)
    return total

"""Finite tensors over products of triangular algebras.

A :class:`Tensor` stores a finite sum of pure tensors of basis monomials,
keyed by tuples of term keys, one per leg.  Leg algebras provide
``mul_keys`` for monomial products and ``term_degree`` for gradings.  The
degree-truncated identity checks build both sides as such tensors and
compare components whose grading guarantees completeness.
"""

from __future__ import annotations

from .scalars import Scalar


class Tensor:
    __slots__ = ("algs", "terms")

    def __init__(self, algs, terms=None):
        self.algs = tuple(algs)
        self.terms = {}
        if terms:
            for k, s in terms.items():
                if not s.is_zero():
                    self.terms[k] = s

    @classmethod
    def zero(cls, algs):
        return cls(algs)

    @classmethod
    def unit(cls, algs):
        key = tuple(next(iter(a.one().terms)) for a in algs)
        ctx = algs[0].ctx
        return cls(algs, {key: Scalar.one(ctx.N, ctx.n)})

    @classmethod
    def from_elements(cls, algs, elements):
        """Pure tensor of algebra elements (one per leg)."""
        ctx = algs[0].ctx
        out = cls(algs)
        keys = [list(el.terms.items()) for el in elements]
        def rec(i, key, coef):
            if coef.is_zero():
                return
            if i == len(keys):
                s = out.terms.get(key)
                s = coef if s is None else s + coef
                if s.is_zero():
                    out.terms.pop(key, None)
                else:
                    out.terms[key] = s
                return
            for k, c in keys[i]:
                rec(i + 1, key + (k,), coef * c)
        rec(0, (), Scalar.one(ctx.N, ctx.n))
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.terms == other.terms

    def _put(self, key, val):
        s = self.terms.get(key)
        s = val if s is None else s + val
        if s.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = s

    def __add__(self, other):
        out = Tensor(self.algs, dict(self.terms))
        for k, s in other.terms.items():
            out._put(k, s)
        return out

    def __neg__(self):
        out = Tensor(self.algs)
        out.terms = {k: -s for k, s in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, s):
        out = Tensor(self.algs)
        for k, v in self.terms.items():
            t = v * s
            if not t.is_zero():
                out.terms[k] = t
        return out

    def mul(self, other, pair_pred=None):
        """Componentwise (legwise) product of tensors.

        ``pair_pred(k1, k2)``, when given, skips term pairs up front; used to
        prune products of truncated sums along cone-graded legs.
        """
        out = Tensor(self.algs)
        for k1, s1 in self.terms.items():
            for k2, s2 in other.terms.items():
                if pair_pred is not None and not pair_pred(k1, k2):
                    continue
                s12 = s1 * s2
                # product of pure tensors: expand leg by leg
                partial = [((), s12)]
                for leg, alg in enumerate(self.algs):
                    prods = alg.mul_keys(k1[leg], k2[leg])
                    nxt = []
                    for key_prefix, coef in partial:
                        for k, c in prods.items():
                            nxt.append((key_prefix + (k,), coef * c))
                    partial = nxt
                for key, coef in partial:
                    out._put(key, coef)
        return out

    def apply_leg(self, leg, fn):
        """Replace each leg-`leg` monomial k by the element fn(k); expand."""
        out = Tensor(self.algs)
        for key, s in self.terms.items():
            replacement = fn(key[leg])
            for k2, c in replacement.terms.items():
                out._put(key[:leg] + (k2,) + key[leg + 1:], s * c)
        return out

    def scale_terms(self, fn):
        """Multiply each term by the Scalar-or-CycNum fn(key)."""
        out = Tensor(self.algs)
        for key, s in self.terms.items():
            out._put(key, s * fn(key))
        return out

    def filtered(self, pred):
        out = Tensor(self.algs)
        for key, s in self.terms.items():
            if pred(key):
                out.terms[key] = s
        return out

    def leg_degree(self, key, leg):
        return self.algs[leg].term_degree(key[leg])

    def swap_legs(self, i, j):
        """Transpose two legs (pure bookkeeping, no braiding factor)."""
        out = Tensor(self.algs)
        for key, s in self.terms.items():
            k = list(key)
            k[i], k[j] = k[j], k[i]
            out._put(tuple(k), s)
        return out

    def __repr__(self):
        return f"Tensor({len(self.terms)} terms, {len(self.algs)} legs)"

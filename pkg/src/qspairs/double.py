"""Arithmetic in the Drinfeld double U(chi) of a diagonal pre-Nichols algebra.

Elements are kept in triangular normal form: finite maps

    (E-basis word, K-exponent in Z^n, F-basis word)  ->  Scalar

with words reduced through the quotient engine of the chosen mode.  The
mixed-order products F_b E_c are straightened with the skew-derivation
identity  E_i f = f E_i + K_i dL_i(f) - dR_i(f) K_i^{-1}, memoized on pairs
of free words, then reduced.
"""

from __future__ import annotations

from .bichar import height, unit, wt_add, wt_neg, wt_sub, wt_zero
from .freealg import partial_left_word, partial_right_word, word_degree
from .scalars import CycNum, Scalar


def _wt(ctx, word):
    return word_degree(ctx, word)


def _fe_normal(ctx, b, c):
    """F_b E_c = sum over (e, lam, f) of CycNum coefficients, free level."""
    cache = ctx._cache.setdefault("fe_normal", {})
    key = (b, c)
    got = cache.get(key)
    if got is not None:
        return got
    one = CycNum.one(ctx.N)
    if not c:
        got = {((), wt_zero(ctx.n), b): one}
    elif not b:
        got = {(c, wt_zero(ctx.n), ()): one}
    else:
        i, c2 = c[0], c[1:]
        ai = unit(ctx.n, i)
        out = {}

        def put(k, v):
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s

        # F_b E_i = E_i F_b - K_i dL_i(F_b) + dR_i(F_b) K_i^{-1}
        for (x, nu, y), r in _fe_normal(ctx, b, c2).items():
            put(((i,) + x, nu, y), r)
        for w, d in partial_left_word(ctx, i, b):
            for (x, nu, y), r in _fe_normal(ctx, w, c2).items():
                put((x, wt_add(nu, ai), y), -(d * ctx.chi(ai, _wt(ctx, x)) * r))
        inv_c2 = ctx.chi(ai, _wt(ctx, c2)).inverse()
        for w, d in partial_right_word(ctx, i, b):
            for (x, nu, y), r in _fe_normal(ctx, w, c2).items():
                coef = d * inv_c2 * ctx.chi(ai, _wt(ctx, y)).inverse() * r
                put((x, wt_sub(nu, ai), y), coef)
        got = out
    cache[key] = got
    return got


def _ef_reversed(ctx, c, b):
    """E_c F_b = sum over (f, lam, e) of CycNum coefficients, free level."""
    cache = ctx._cache.setdefault("ef_reversed", {})
    key = (c, b)
    got = cache.get(key)
    if got is not None:
        return got
    one = CycNum.one(ctx.N)
    if not c:
        got = {(b, wt_zero(ctx.n), ()): one}
    elif not b:
        got = {((), wt_zero(ctx.n), c): one}
    else:
        c2, i = c[:-1], c[-1]
        ai = unit(ctx.n, i)
        out = {}

        def put(k, v):
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s

        # E_c2 (E_i F_b) = E_c2 [F_b E_i + K_i dL_i(F_b) - dR_i(F_b) K_i^{-1}]
        for (y, nu, x), r in _ef_reversed(ctx, c2, b).items():
            put((y, nu, x + (i,)), r)
        for w, d in partial_left_word(ctx, i, b):
            f1 = ctx.chi(ai, _wt(ctx, w)).inverse()
            for (y, nu, x), r in _ef_reversed(ctx, c2, w).items():
                put((y, wt_add(nu, ai), x),
                    d * f1 * ctx.chi(ai, _wt(ctx, x)).inverse() * r)
        for w, d in partial_right_word(ctx, i, b):
            for (y, nu, x), r in _ef_reversed(ctx, c2, w).items():
                put((y, wt_sub(nu, ai), x), -(d * ctx.chi(ai, _wt(ctx, x)) * r))
        got = out
    cache[key] = got
    return got


class DoubleElement:
    """A U(chi) element in triangular normal form, tied to its algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = {}
        if terms:
            for k, s in terms.items():
                if not s.is_zero():
                    self.terms[k] = s

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, DoubleElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, s in other.terms.items():
            t = out.get(k)
            t = s if t is None else t + s
            if t.is_zero():
                out.pop(k, None)
            else:
                out[k] = t
        res = DoubleElement(self.alg)
        res.terms = out
        return res

    def __neg__(self):
        res = DoubleElement(self.alg)
        res.terms = {k: -s for k, s in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, CycNum, int)):
            return self.scaled(other)
        return self.alg.mul(self, other)

    def scaled(self, s):
        res = DoubleElement(self.alg)
        for k, v in self.terms.items():
            t = v * s
            if not t.is_zero():
                res.terms[k] = t
        return res

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (e, lam, f) in sorted(self.terms, key=term_sort_key):
            s = self.terms[(e, lam, f)]
            name = []
            name.extend(f"E{i+1}" for i in e)
            if any(lam):
                name.append("K" + "".join(f"[{x}]" for x in lam))
            name.extend(f"F{i+1}" for i in f)
            parts.append(f"({s.as_string()})*" + ("*".join(name) or "1"))
        return " + ".join(parts)


def term_sort_key(key):
    e, lam, f = key
    return ((len(e), e), lam, (len(f), f))


class DoubleAlgebra:
    """U(chi) for one context and one quotient engine (free, Nichols, or
    presentation mode).  Also hosts the tensor-leg monomial products used by
    the identity checks."""

    def __init__(self, ctx, reducer):
        self.ctx = ctx
        self.reducer = reducer
        self._mulcache = {}

    # -- constructors -------------------------------------------------------

    def zero(self):
        return DoubleElement(self)

    def one(self):
        return self.monomial((), wt_zero(self.ctx.n), ())

    def monomial(self, e, lam, f, coef=None):
        coef = coef if coef is not None else Scalar.one(self.ctx.N, self.ctx.n)
        if isinstance(coef, CycNum):
            coef = Scalar.from_cyc(self.ctx.N, self.ctx.n, coef)
        return DoubleElement(self, {(tuple(e), tuple(lam), tuple(f)): coef})

    def E(self, i):
        return self.monomial((i,), wt_zero(self.ctx.n), ())

    def F(self, i):
        return self.monomial((), wt_zero(self.ctx.n), (i,))

    def K(self, lam):
        return self.monomial((), tuple(lam), ())

    def from_free(self, p, side):
        """Image of a FreeElement under E- or F-substitution, reduced."""
        out = self.zero()
        for w, s in p.terms.items():
            for w2, c in self.reducer.reduce_word(w):
                key = (w2, wt_zero(self.ctx.n), ()) if side == "E" else \
                      ((), wt_zero(self.ctx.n), w2)
                out = out + DoubleElement(self, {key: s * c})
        return out

    def scalar(self, s):
        if isinstance(s, CycNum):
            s = Scalar.from_cyc(self.ctx.N, self.ctx.n, s)
        return DoubleElement(self, {((), wt_zero(self.ctx.n), ()): s})

    # -- multiplication -----------------------------------------------------

    def mul_keys(self, k1, k2):
        """Product of two basis monomials as a dict key -> Scalar (cached)."""
        got = self._mulcache.get((k1, k2))
        if got is not None:
            return got
        ctx = self.ctx
        (a, lam, b), (c, mu, d) = k1, k2
        out = {}
        for (x, nu, y), r in _fe_normal(ctx, b, c).items():
            scal = r * ctx.chi(lam, _wt(ctx, x)) * ctx.chi(mu, _wt(ctx, y))
            klam = wt_add(wt_add(lam, nu), mu)
            for ew, ce in self.reducer.reduce_word(a + x):
                for fw, cf in self.reducer.reduce_word(y + d):
                    key = (ew, klam, fw)
                    v = scal * ce * cf
                    s = out.get(key)
                    s = v if s is None else s + v
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        wrapped = {k: Scalar.from_cyc(ctx.N, ctx.n, v) for k, v in out.items()}
        self._mulcache[(k1, k2)] = wrapped
        return wrapped

    def mul(self, x, y):
        out = self.zero()
        acc = out.terms
        for k1, s1 in x.terms.items():
            for k2, s2 in y.terms.items():
                s12 = s1 * s2
                for k, c in self.mul_keys(k1, k2).items():
                    t = acc.get(k)
                    p = s12 * c
                    t = p if t is None else t + p
                    if t.is_zero():
                        acc.pop(k, None)
                    else:
                        acc[k] = t
        return out

    def product(self, *factors):
        out = self.one()
        for f in factors:
            out = self.mul(out, f)
        return out

    # -- gradings and projections -------------------------------------------

    def term_bidegree(self, key):
        """(E-part weight, F-part weight) in N^n x N^n."""
        e, _, f = key
        return _wt(self.ctx, e), _wt(self.ctx, f)

    def term_degree(self, key):
        """Z^n degree: wt(E) - wt(F); K factors are degree 0."""
        e, _, f = key
        return wt_sub(_wt(self.ctx, e), _wt(self.ctx, f))

    def project_P(self, lam, x):
        """Projection onto U^+ K_lam G^-.

        A normal term E_a K_mu F_b sits in the K_{mu - wt(b)} slice of the
        U^+ K G^- decomposition, so the projection is a term filter.
        """
        res = DoubleElement(self)
        for (e, mu, f), s in x.terms.items():
            if wt_sub(mu, _wt(self.ctx, f)) == tuple(lam):
                res.terms[(e, mu, f)] = s
        return res

    def project_pi(self, alpha, beta, x):
        """Projection onto U^+_alpha H U^-_{-beta}."""
        res = DoubleElement(self)
        for (e, mu, f), s in x.terms.items():
            if _wt(self.ctx, e) == tuple(alpha) and _wt(self.ctx, f) == tuple(beta):
                res.terms[(e, mu, f)] = s
        return res

    def coefficient_of_K(self, lam):
        """Return x's coefficient at the bare monomial K_lam as a callable."""
        lam = tuple(lam)

        def get(x):
            return x.terms.get(((), lam, ()), Scalar.zero(self.ctx.N, self.ctx.n))

        return get

    def counit(self, x):
        total = Scalar.zero(self.ctx.N, self.ctx.n)
        for (e, _, f), s in x.terms.items():
            if not e and not f:
                total = total + s
        return total

    # -- reversed normal order ----------------------------------------------

    def rev_terms(self, x):
        """Rewrite x in the reversed order U^- H U^+: dict (f, lam, e) -> Scalar."""
        ctx = self.ctx
        out = {}
        for (a, lam, b), s in x.terms.items():
            pre = ctx.chi(lam, _wt(ctx, b)).inverse()
            for (y0, nu, x0), r in _ef_reversed(ctx, a, b).items():
                scal = pre * r * ctx.chi(lam, _wt(ctx, x0)).inverse()
                klam = wt_add(nu, lam)
                for fw, cf in self.reducer.reduce_word(y0):
                    for ew, ce in self.reducer.reduce_word(x0):
                        key = (fw, klam, ew)
                        v = s * (scal * cf * ce)
                        t = out.get(key)
                        t = v if t is None else t + v
                        if t.is_zero():
                            out.pop(key, None)
                        else:
                            out[key] = t
        return out

    # -- coproduct ------------------------------------------------------------

    def _delta_letter(self, kind, i):
        from .tensorops import Tensor
        ctx = self.ctx
        one = Scalar.one(ctx.N, ctx.n)
        zero = wt_zero(ctx.n)
        ai = unit(ctx.n, i)
        if kind == "E":
            # E_i (x) 1 + K_i (x) E_i
            return Tensor((self, self), {
                (((i,), zero, ()), ((), zero, ())): one,
                (((), ai, ()), ((i,), zero, ())): one,
            })
        # F_i (x) K_i^{-1} + 1 (x) F_i
        return Tensor((self, self), {
            (((), zero, (i,)), ((), wt_neg(ai), ())): one,
            (((), zero, ()), ((), zero, (i,))): one,
        })

    def coproduct(self, x):
        """Delta(x) as a two-leg tensor over U(chi) (x) U(chi)."""
        from .tensorops import Tensor
        ctx = self.ctx
        cache = ctx._cache.setdefault(("delta", id(self)), {})
        out = Tensor.zero((self, self))
        for (e, lam, f), s in x.terms.items():
            key = (e, lam, f)
            got = cache.get(key)
            if got is None:
                acc = Tensor((self, self), {
                    (((), lam, ()), ((), lam, ())): Scalar.one(ctx.N, ctx.n)})
                for i in reversed(e):
                    acc = self._delta_letter("E", i).mul(acc)
                for i in f:
                    acc = acc.mul(self._delta_letter("F", i))
                cache[key] = acc
                got = acc
            out = out + got.scaled(s)
        return out

    # -- (anti)automorphisms ---------------------------------------------------

    def omega(self, x):
        """The Hopf isomorphism omega: E_i <-> F_i, K_lam -> K_{-lam}."""
        out = self.zero()
        for (e, lam, f), s in x.terms.items():
            acc = self.one()
            for i in e:
                acc = self.mul(acc, self.F(i))
            acc = self.mul(acc, self.K(wt_neg(lam)))
            for i in f:
                acc = self.mul(acc, self.E(i))
            out = out + acc.scaled(s)
        return out

    def antipode_inv(self, x):
        """S^{-1} on U^+ x H: S^{-1}(E_i) = -E_i K_i^{-1}, S^{-1}(K) = K^{-1}.

        Antiautomorphism; raises if x has a nontrivial F part.
        """
        out = self.zero()
        for (e, lam, f), s in x.terms.items():
            if f:
                raise ValueError("antipode_inv expects an element of U^+ x H")
            acc = self.K(wt_neg(lam))
            for i in reversed(e):
                img = self.monomial((i,), wt_neg(unit(self.ctx.n, i)), ()).scaled(-1)
                acc = self.mul(acc, img)
            out = out + acc.scaled(s)
        return out

    def sigma_bar(self, c, x):
        """The automorphism sigma-bar; symbolic c is fine on the U^- part.

        sigma(F_i) = c_{tau(i)} K_i E_{tau(i)},
        sigma(E_i) = c_{tau(i)}^{-1} F_{tau(i)} K_i^{-1},
        sigma(K_lam) = K_{-tau(lam)}.
        Inverting c_i requires numeric (constant, nonzero) parameter values.
        """
        ctx = self.ctx
        tau = ctx.tau
        out = self.zero()
        for (e, lam, f), s in x.terms.items():
            acc = self.one()
            for i in e:
                ci = c[tau[i]]
                if not ci.is_constant() or ci.constant_term().is_zero():
                    raise ValueError(
                        "sigma_bar on the E side needs nonzero numeric parameters")
                inv = ci.constant_term().inverse()
                # c_{tau(i)}^{-1} F_{tau(i)} K_i^{-1}, normal-ordered
                img = self.mul(self.F(tau[i]),
                               self.K(wt_neg(unit(ctx.n, i)))).scaled(inv)
                acc = self.mul(acc, img)
            acc = self.mul(acc, self.K(wt_neg(ctx.tau_wt(lam))))
            for i in f:
                # c_{tau(i)} K_i E_{tau(i)}, normal-ordered
                img = self.mul(self.K(unit(ctx.n, i)),
                               self.monomial((tau[i],), wt_zero(ctx.n), (), c[tau[i]]))
                acc = self.mul(acc, img)
            out = out + acc.scaled(s)
        return out


def a_mu_recursion(ctx, c, mu):
    """The grading coefficients of sigma-bar on U^-.

    a_{alpha_i} = c_{tau(i)} and a_{mu+nu} = chi(-nu, tau(mu)) a_mu a_nu;
    computed along the staircase factorization of mu.
    """
    total = height(mu)
    if total == 0:
        return Scalar.one(ctx.N, ctx.n)
    # peel simple roots one at a time: mu = alpha_i + rest
    i = next(j for j in range(ctx.n) if mu[j] > 0)
    ai = unit(ctx.n, i)
    rest = wt_sub(mu, ai)
    # a_{ai + rest} = chi(-rest, tau(ai)) a_ai a_rest
    coef = ctx.chi(wt_neg(rest), ctx.tau_wt(ai))
    return a_mu_recursion(ctx, c, rest) * c[ctx.tau[i]] * coef

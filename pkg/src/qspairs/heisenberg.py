"""Heisenberg doubles and the parameter condition for coideal subalgebras.

``variant="heis"`` is the quotient of U(chi)^poly by the ideal of the
K_i^{-1}; ``variant="heis_vee"`` is its associated graded algebra, where the
cross relation picks up -K_i^{-2} instead of the constant term.  The
parameter condition is evaluated in the free negative Heisenberg double:
only the bare-K component of p(B-vee) matters, and word reduction never
touches it.
"""

from __future__ import annotations

from .bichar import height, unit, wt_add, wt_neg, wt_sub, wt_zero
from .freealg import word_degree
from .nichols import get_reducer
from .scalars import CycNum, Scalar


def _wt(ctx, word):
    return word_degree(ctx, word)


class HeisElement:
    """Normal form G^+ . K . U^-: finite map (E-word, lam, F-word) -> Scalar."""

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
        return isinstance(other, HeisElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, s in other.terms.items():
            t = out.get(k)
            t = s if t is None else t + s
            if t.is_zero():
                out.pop(k, None)
            else:
                out[k] = t
        res = HeisElement(self.alg)
        res.terms = out
        return res

    def __neg__(self):
        res = HeisElement(self.alg)
        res.terms = {k: -s for k, s in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, CycNum, int)):
            return self.scaled(other)
        return self.alg.mul(self, other)

    def scaled(self, s):
        res = HeisElement(self.alg)
        for k, v in self.terms.items():
            t = v * s
            if not t.is_zero():
                res.terms[k] = t
        return res

    def __repr__(self):
        parts = []
        for (g, lam, f) in sorted(self.terms):
            s = self.terms[(g, lam, f)]
            name = [f"G{i+1}" for i in g]
            if any(lam):
                name.append("K" + "".join(f"[{x}]" for x in lam))
            name.extend(f"F{i+1}" for i in f)
            parts.append(f"({s.as_string()})*" + ("*".join(name) or "1"))
        return " + ".join(parts) or "0"


class HeisAlgebra:
    """Heis(chi) or Heis(chi)-vee over a context and a word reducer."""

    def __init__(self, ctx, reducer, variant):
        if variant not in ("heis", "heis_vee"):
            raise ValueError("variant must be 'heis' or 'heis_vee'")
        self.ctx = ctx
        self.reducer = reducer
        self.variant = variant

    def zero(self):
        return HeisElement(self)

    def one(self):
        return self.monomial((), wt_zero(self.ctx.n), ())

    def monomial(self, g, lam, f, coef=None):
        coef = coef if coef is not None else Scalar.one(self.ctx.N, self.ctx.n)
        if isinstance(coef, CycNum):
            coef = Scalar.from_cyc(self.ctx.N, self.ctx.n, coef)
        return HeisElement(self, {(tuple(g), tuple(lam), tuple(f)): coef})

    def F(self, i):
        return self.monomial((), wt_zero(self.ctx.n), (i,))

    def Etilde(self, i):
        return self.monomial((i,), wt_zero(self.ctx.n), ())

    def K(self, lam):
        return self.monomial((), tuple(lam), ())

    def b_generator(self, c, i):
        """B_i (image in the chosen double): F_i + c_i Etilde_tau(i) K_tau(i) K_i^{-1}."""
        ctx = self.ctx
        ti = ctx.tau[i]
        lam = wt_sub(unit(ctx.n, ti), unit(ctx.n, i))
        return self.F(i) + self.monomial((ti,), lam, (), c[i])

    # -- straightening -------------------------------------------------------

    def _move_one(self, b, i):
        """F_b Etilde_i as a dict (g, lam, f) -> CycNum at the free level.

        Swap rule: F_j Etilde_i = q_ij^{-1} Etilde_i F_j + delta_ij T with
        T = K_i^{-2} in the graded variant and T = -1 in Heis(chi).
        """
        cache = self.ctx._cache.setdefault(("heis_move", self.variant), {})
        key = (b, i)
        got = cache.get(key)
        if got is not None:
            return got
        ctx = self.ctx
        one = CycNum.one(ctx.N)
        if not b:
            got = {((i,), wt_zero(ctx.n), ()): one}
        else:
            b2, j = b[:-1], b[-1]
            got = {}

            def put(k, v):
                s = got.get(k)
                s = v if s is None else s + v
                if s.is_zero():
                    got.pop(k, None)
                else:
                    got[k] = s

            qinv = ctx.q[i][j].inverse()
            for (g, lam, f), r in self._move_one(b2, i).items():
                put((g, lam, f + (j,)), r * qinv)
            if i == j:
                if self.variant == "heis_vee":
                    lam = wt_neg(wt_add(unit(ctx.n, i), unit(ctx.n, i)))
                    put(((), lam, b2), ctx.chi(lam, _wt(ctx, b2)))
                else:
                    put(((), wt_zero(ctx.n), b2), -one)
        cache[key] = got
        return got

    def _fe(self, b, c):
        """F_b Etilde_c straightened to sum of Etilde K F, free level."""
        cache = self.ctx._cache.setdefault(("heis_fe", self.variant), {})
        key = (b, c)
        got = cache.get(key)
        if got is not None:
            return got
        ctx = self.ctx
        if not c or not b:
            got = {(c, wt_zero(ctx.n), b): CycNum.one(ctx.N)}
        else:
            i, c2 = c[0], c[1:]
            out = {}
            for (g, lam, f), r in self._move_one(b, i).items():
                for (g2, lam2, f2), r2 in self._fe(f, c2).items():
                    key2 = (g + g2, wt_add(lam, lam2), f2)
                    v = r * r2 * ctx.chi(lam, _wt(ctx, g2))
                    s = out.get(key2)
                    s = v if s is None else s + v
                    if s.is_zero():
                        out.pop(key2, None)
                    else:
                        out[key2] = s
            got = out
        cache[key] = got
        return got

    def mul(self, x, y):
        ctx = self.ctx
        out = self.zero()
        acc = out.terms
        for (a, lam, b), s1 in x.terms.items():
            for (c, mu, d), s2 in y.terms.items():
                s12 = s1 * s2
                for (g, nu, f), r in self._fe(b, c).items():
                    scal = r * ctx.chi(lam, _wt(ctx, g)) * ctx.chi(mu, _wt(ctx, f))
                    klam = wt_add(wt_add(lam, nu), mu)
                    for gw, cg in self.reducer.reduce_word(a + g):
                        for fw, cf in self.reducer.reduce_word(f + d):
                            key = (gw, klam, fw)
                            v = s12 * (scal * cg * cf)
                            t = acc.get(key)
                            t = v if t is None else t + v
                            if t.is_zero():
                                acc.pop(key, None)
                            else:
                                acc[key] = t
        return out

    def product(self, *factors):
        out = self.one()
        for f in factors:
            out = self.mul(out, f)
        return out

    def substitute(self, p, images):
        """Evaluate a FreeElement p at the given Heisenberg elements.

        Words are peeled from the right with shared prefixes grouped, so
        cancellations inside partial sums are exploited (substantially
        cheaper than folding each word separately).
        """
        def evaluate(terms):
            out = self.zero()
            groups = {}
            for w, s in terms.items():
                if not w:
                    out = out + self.one().scaled(s)
                    continue
                groups.setdefault(w[-1], {})
                sub = groups[w[-1]]
                prev = sub.get(w[:-1])
                sub[w[:-1]] = s if prev is None else prev + s
            for i, sub in groups.items():
                out = out + self.mul(evaluate(sub), images[i])
            return out

        return evaluate(p.terms)

    def term_degree(self, key):
        """The -N^n + Z^n_theta grading of the graded variant."""
        g, lam, f = key
        return wt_add(wt_neg(wt_add(_wt(self.ctx, g), _wt(self.ctx, f))), lam)


def pi00_vee(x):
    """Projection onto the group-algebra part: {lam: Scalar} for bare K terms."""
    out = {}
    for (g, lam, f), s in x.terms.items():
        if not g and not f:
            out[lam] = s
    return out


def in_good_degree_cone(ctx, lam):
    """lam in the span of N(alpha_i + alpha_tau(i)): the only degrees where
    the parameter condition can fail."""
    if not all(x >= 0 for x in lam):
        return False
    for i in range(ctx.n):
        j = ctx.tau[i]
        if i == j:
            if lam[i] % 2:
                return False
        elif lam[i] != lam[j]:
            return False
    return True


def condition_c(ctx, relations, c=None):
    """Constraint polynomials of the parameter condition, one per relation.

    For each homogeneous relation p_j of degree lam_j the constraint is the
    K_{-lam_j} coefficient of p_j(B-vee) in the free negative Heisenberg
    double, a polynomial in the parameters.  The empty constraint set is
    equivalent to gr(B_c) being the full partial bosonization.  Degrees
    outside the tau-symmetric even cone are skipped: they cannot contribute.
    """
    if c is None:
        c = tuple(Scalar.c_var(ctx.N, ctx.n, i) for i in range(ctx.n))
    heis = HeisAlgebra(ctx, get_reducer(ctx, "free"), "heis_vee")
    gens = [heis.b_generator(c, i) for i in range(ctx.n)]
    out = []
    for idx, p in enumerate(relations):
        lam = p.homogeneous_degree()
        if lam is None:
            raise ValueError(f"relation {idx} is not homogeneous")
        if not in_good_degree_cone(ctx, lam):
            out.append((idx, Scalar.zero(ctx.N, ctx.n)))
            continue
        value = heis.substitute(p, gens)
        coeff = pi00_vee(value).get(wt_neg(lam), Scalar.zero(ctx.N, ctx.n))
        out.append((idx, coeff))
    return out


def condition_c_holds(ctx, relations, c_values):
    """Evaluate the symbolic constraints at numeric parameters."""
    for _, constraint in condition_c(ctx, relations):
        if not constraint.substitute(c_values).is_zero():
            return False
    return True


def kappa(heis_alg, x):
    """Projection U(chi)^poly -> Heis(chi), from the triangular normal form.

    Rewrites E_a = (chi factor) Etilde_a K_{wt a}; a term survives exactly
    when its G^+ K U^- K-exponent is theta-fixed.  Raises when some term
    falls outside U(chi)^poly.
    """
    ctx = heis_alg.ctx
    if heis_alg.variant != "heis":
        raise ValueError("kappa lands in the 'heis' variant")
    out = heis_alg.zero()
    for (e, lam, f), s in x.terms.items():
        scal = CycNum.one(ctx.N)
        for pos in range(len(e)):
            scal = scal * ctx.chi(unit(ctx.n, e[pos]), _wt(ctx, e[pos + 1:]))
        kexp = wt_add(lam, _wt(ctx, e))
        if not ctx.in_poly_cone(kexp):
            raise ValueError(f"element is outside U(chi)^poly at K-exponent {kexp}")
        if ctx.in_lattice_theta(kexp):
            out = out + heis_alg.monomial(e, kexp, f, s * scal)
    return out


def theorem_B_check(ctx, reducer, c_values, d, trials=3, seed=0):
    """Left H_theta-independence of the B-bar monomials up to N-degree d.

    The semilinear system over the group algebra of Z^n_theta is untwisted
    columnwise (a character twist per G^+ weight) and then specialized at
    random characters; full row rank at any specialization certifies
    independence.
    """
    import random as _random

    from . import linalg
    from .nichols import degrees_up_to

    rng = _random.Random(seed)
    heis = HeisAlgebra(ctx, reducer, "heis")
    c = tuple(Scalar.from_cyc(ctx.N, ctx.n, v) for v in c_values)
    gens = [heis.b_generator(c, i) for i in range(ctx.n)]
    words = []
    for mu in degrees_up_to(ctx, d):
        words.extend(reducer.basis(mu))
    rows = []
    for w in words:
        el = heis.one()
        for i in w:
            el = heis.mul(el, gens[i])
        rows.append(el)
    columns = sorted({(g, f) for el in rows for (g, _, f) in el.terms})
    col_index = {gf: j for j, gf in enumerate(columns)}
    gens_theta = ctx.theta_lattice_basis()
    for _ in range(max(1, trials)):
        # a character of Z^n_theta, valued in nonzero field elements
        char_vals = [CycNum.from_rational(ctx.N, rng.randint(1, 7))
                     * (make_root_cached(ctx.N, rng.randrange(ctx.N)))
                     for _ in gens_theta]
        mat = [[CycNum.zero(ctx.N) for _ in columns] for _ in rows]
        for r, el in enumerate(rows):
            for (g, lam, f), s in el.terms.items():
                coords = ctx.theta_coordinates(lam)
                val = s.constant_term()
                # columnwise untwist by chi(lam, wt g)^{-1}
                val = val * ctx.chi(lam, _wt(ctx, g)).inverse()
                for coord, t in zip(coords, char_vals):
                    val = val * t ** coord
                j = col_index[(g, f)]
                mat[r][j] = mat[r][j] + val
        if linalg.rank(mat, CycNum.one(ctx.N)) == len(rows):
            return True
    return False


def make_root_cached(N, k):
    from .scalars import make_root
    return make_root(N, k)

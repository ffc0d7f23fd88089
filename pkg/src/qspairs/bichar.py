"""The symmetric bicharacter chi on Z^n, the involution tau, and theta.

A :class:`BicharContext` fixes everything the rest of the package needs:
the rank n, the cyclotomic order N, the braiding matrix q, the diagram
involution tau, and the global degree bound D used by every truncated
computation.  Contexts are immutable after validation and carry a private
cache for per-degree data.
"""

from __future__ import annotations

from .scalars import CycNum, euler_phi

# Weights are plain tuples of ints of length n, in the alpha_i basis.


def wt_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def wt_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def wt_neg(a):
    return tuple(-x for x in a)


def wt_zero(n):
    return (0,) * n


def height(a):
    """Sum of coordinates; the N-height for weights in N^n."""
    return sum(a)


def abs_height(a):
    return sum(abs(x) for x in a)


def is_nonneg(a):
    return all(x >= 0 for x in a)


def unit(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


class BicharContext:
    """Rank, braiding matrix, involution and degree bound for one computation."""

    def __init__(self, n, N, q, tau, D=6):
        self.n = n
        self.N = N
        self.q = tuple(tuple(row) for row in q)
        self.tau = tuple(tau)
        self.D = D
        self._chi_cache = {}
        self._cache = {}
        self.validate()

    def validate(self):
        n = self.n
        if len(self.q) != n or any(len(row) != n for row in self.q):
            raise ValueError("q must be an n x n matrix")
        if sorted(self.tau) != list(range(n)):
            raise ValueError("tau must be a permutation of 0..n-1")
        for i in range(n):
            if self.tau[self.tau[i]] != i:
                raise ValueError("tau must be an involution")
        for i in range(n):
            for j in range(n):
                if self.q[i][j].is_zero():
                    raise ValueError("bicharacter values must be nonzero")
                if self.q[i][j] != self.q[j][i]:
                    raise ValueError("q must be symmetric")
                if self.q[i][j] != self.q[self.tau[i]][self.tau[j]]:
                    raise ValueError("tau must preserve q")
        if self.D < 0:
            raise ValueError("degree bound must be nonnegative")

    # -- the bicharacter ---------------------------------------------------

    def q_power(self, i, j, e):
        key = (i, j, e)
        v = self._chi_cache.get(key)
        if v is None:
            v = self.q[i][j] ** e
            self._chi_cache[key] = v
        return v

    def chi(self, lam, mu):
        """chi(lam, mu) = prod q_ij^(lam_i mu_j), biadditive in both slots."""
        key = (lam, mu)
        v = self._chi_cache.get(key)
        if v is not None:
            return v
        out = CycNum.one(self.N)
        for i, li in enumerate(lam):
            if li == 0:
                continue
            for j, mj in enumerate(mu):
                if mj == 0:
                    continue
                out = out * self.q_power(i, j, li * mj)
        self._chi_cache[key] = out
        return out

    def chi_inv(self, lam, mu):
        return self.chi(lam, wt_neg(mu))

    # -- tau / theta on the weight lattice ---------------------------------

    def tau_wt(self, lam):
        out = [0] * self.n
        for i, x in enumerate(lam):
            out[self.tau[i]] = x
        return tuple(out)

    def theta(self, lam):
        """theta(lam) = -tau(lam)."""
        return wt_neg(self.tau_wt(lam))

    def in_lattice_theta(self, lam):
        """Membership in Z^n_theta = {lam : theta(lam) = lam}."""
        return self.theta(lam) == lam

    def in_poly_cone(self, lam):
        """Membership in -N^n + Z^n_theta (K-exponents of U(chi)^poly)."""
        # lam = -beta + nu with beta in N^n, nu theta-fixed iff
        # s = -(lam + tau(lam)) is in N^n with even entries at tau-fixed spots
        s = wt_neg(wt_add(lam, self.tau_wt(lam)))
        if not is_nonneg(s):
            return False
        return all(s[i] % 2 == 0 for i in range(self.n) if self.tau[i] == i)

    def theta_lattice_basis(self):
        """Generators alpha_i - alpha_{tau(i)} of Z^n_theta, one per 2-orbit."""
        gens = []
        for i in range(self.n):
            j = self.tau[i]
            if i < j:
                gens.append(wt_sub(unit(self.n, i), unit(self.n, j)))
        return gens

    def theta_coordinates(self, lam):
        """Coordinates of lam in the basis returned by theta_lattice_basis.

        Only valid for lam in Z^n_theta.
        """
        if not self.in_lattice_theta(lam):
            raise ValueError("weight is not theta-fixed")
        return tuple(lam[i] for i in range(self.n) if i < self.tau[i])

    def one_cyc(self):
        return CycNum.one(self.N)

    def zero_cyc(self):
        return CycNum.zero(self.N)

    def __repr__(self):
        return f"BicharContext(n={self.n}, N={self.N}, D={self.D})"


def chi(ctx, lam, mu):
    return ctx.chi(lam, mu)


def theta(ctx, lam):
    return ctx.theta(lam)


def in_lattice_theta(ctx, lam):
    return ctx.in_lattice_theta(lam)

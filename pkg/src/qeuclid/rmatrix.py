"""The braid matrix of the q-deformed orthogonal series, its metric and
projector decomposition, and the matrix-level identity checks.

Tensors are sparse maps (i,j,k,l) -> coefficient with upper pair (i,j) and
lower pair (k,l); they are generic over the coefficient field so the same
code runs the exact symbolic lane and the exact numeric lane.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import Constants, QSqrt, RatFunc


class IndexSet:
    """Index bookkeeping: -n..n without (even) or with (odd) the 0 index."""

    def __init__(self, N: int):
        if N < 3:
            raise ValueError("need N >= 3")
        self.N = N
        self.odd = N % 2 == 1
        self.n = (N - 1) // 2 if self.odd else N // 2
        if self.odd:
            self.indices = list(range(-self.n, self.n + 1))
        else:
            self.indices = [i for i in range(-self.n, self.n + 1) if i != 0]
        # 2*rho_i, always an integer
        self.rho2 = {}
        for i in self.indices:
            if i > 0:
                self.rho2[i] = 2 * i - 1 if self.odd else 2 * (i - 1)
            elif i < 0:
                self.rho2[i] = -(2 * (-i) - 1) if self.odd else -2 * (-i - 1)
            else:
                self.rho2[i] = 0
        self.constants = Constants(self.rho2)

    def __repr__(self):
        return "IndexSet(N=%d)" % self.N


class SymbolicField:
    """Adapter producing RatFunc coefficients."""

    name = "symbolic"

    def zero(self):
        return RatFunc.from_int(0)

    def one(self):
        return RatFunc.from_int(1)

    def from_int(self, n):
        return RatFunc.from_int(n)

    def q_half(self, e2):
        """q^(e2/2)."""
        return RatFunc.s_power(e2)


class NumericField:
    """Adapter producing exact QSqrt coefficients at a fixed rational q."""

    name = "numeric"

    def __init__(self, q0):
        self.q0 = Fraction(q0)

    def zero(self):
        return QSqrt(0, 0, self.q0)

    def one(self):
        return QSqrt(1, 0, self.q0)

    def from_int(self, n):
        return QSqrt(n, 0, self.q0)

    def q_half(self, e2):
        w = self.q0 ** (e2 // 2) if e2 >= 0 else Fraction(1) / self.q0 ** ((-e2 + 1) // 2)
        # e2 = 2*t + r with r in {0,1}
        t, r = divmod(e2, 2)
        base = self.q0 ** t
        if r == 0:
            return QSqrt(base, 0, self.q0)
        return QSqrt(0, base, self.q0)


class LabeledTensor:
    """Sparse operator on the tensor square: data[(i,j,k,l)] = T^{ij}_{kl}."""

    __slots__ = ("idx", "data")

    def __init__(self, idx: IndexSet, data=None):
        self.idx = idx
        self.data = data or {}

    def copy(self):
        return LabeledTensor(self.idx, dict(self.data))

    def is_zero(self):
        return not self.data

    def __eq__(self, other):
        return self.data == other.data

    def get(self, key, zero):
        return self.data.get(key, zero)

    def add_to(self, key, val):
        d = self.data
        if key in d:
            s = d[key] + val
            if s.is_zero():
                del d[key]
            else:
                d[key] = s
        elif not val.is_zero():
            d[key] = val

    def __add__(self, other):
        out = self.copy()
        for k, v in other.data.items():
            out.add_to(k, v)
        return out

    def __sub__(self, other):
        out = self.copy()
        for k, v in other.data.items():
            out.add_to(k, -v)
        return out

    def scale(self, c):
        if c.is_zero():
            return LabeledTensor(self.idx)
        return LabeledTensor(self.idx, {k: v * c for k, v in self.data.items()})

    def compose(self, other: "LabeledTensor") -> "LabeledTensor":
        """(self . other)^{ij}_{kl} = sum_mn self^{ij}_{mn} other^{mn}_{kl}."""
        rows = {}
        for (m, n, k, l), v in other.data.items():
            rows.setdefault((m, n), []).append(((k, l), v))
        out = LabeledTensor(self.idx)
        for (i, j, m, n), a in self.data.items():
            for (k, l), b in rows.get((m, n), ()):
                out.add_to((i, j, k, l), a * b)
        return out

    def transpose(self):
        return LabeledTensor(self.idx, {(k, l, i, j): v for (i, j, k, l), v in self.data.items()})

    def map_values(self, f):
        out = LabeledTensor(self.idx)
        for k, v in self.data.items():
            out.add_to(k, f(v))
        return out

    def negate_indices(self):
        return LabeledTensor(self.idx, {(-i, -j, -k, -l): v for (i, j, k, l), v in self.data.items()})


def identity_tensor(idx: IndexSet, fld) -> LabeledTensor:
    one = fld.one()
    t = LabeledTensor(idx)
    for i in idx.indices:
        for j in idx.indices:
            t.data[(i, j, i, j)] = one
    return t


def build_rhat(idx: IndexSet, fld=None) -> LabeledTensor:
    """The braid matrix; five families of entries, O(N^2) nonzeros."""
    fld = fld or SymbolicField()
    q = fld.q_half(2)
    qi = fld.q_half(-2)
    k = q - qi
    t = LabeledTensor(idx)
    for i in idx.indices:
        if i != 0:
            t.add_to((i, i, i, i), q)
            t.add_to((i, -i, -i, i), qi)
    if idx.odd:
        t.add_to((0, 0, 0, 0), fld.one())
    for i in idx.indices:
        for j in idx.indices:
            if i != j and i != -j:
                t.add_to((i, j, j, i), fld.one())
            if i < j:
                t.add_to((i, j, i, j), k)
                t.add_to((i, -i, -j, j), -(k * fld.q_half(idx.rho2[j] - idx.rho2[i])))
    return t


def build_metric(idx: IndexSet, fld=None):
    """g_{ij} = q^{-rho_i} delta_{i,-j}, as a dict {(i,j): coeff}; self-inverse."""
    fld = fld or SymbolicField()
    return {(i, -i): fld.q_half(-idx.rho2[i]) for i in idx.indices}


def metric_tensor(idx: IndexSet, fld=None) -> LabeledTensor:
    """|g><g| with entries g^{ij} g_{kl}."""
    g = build_metric(idx, fld)
    t = LabeledTensor(idx)
    for (i, j), a in g.items():
        for (k, l), b in g.items():
            t.data[(i, j, k, l)] = a * b
    return t


def gram_trace(idx: IndexSet, fld=None):
    """g^{sm} g_{sm} = sum_s q^{-2 rho_s}."""
    fld = fld or SymbolicField()
    tot = fld.zero()
    for i in idx.indices:
        tot = tot + fld.q_half(-2 * idx.rho2[i])
    return tot


def rhat_eigenvalues(idx: IndexSet, fld=None):
    """(lambda_s, lambda_a, lambda_t) = (q, -q^-1, q^(1-N))."""
    fld = fld or SymbolicField()
    return fld.q_half(2), -fld.q_half(-2), fld.q_half(2 * (1 - idx.N))


def projectors(idx: IndexSet, rhat: LabeledTensor, fld=None):
    """Spectral projectors (P_s, P_a, P_t) of the braid matrix."""
    fld = fld or SymbolicField()
    lams = rhat_eigenvalues(idx, fld)
    ident = identity_tensor(idx, fld)
    out = []
    for mu in range(3):
        p = ident
        denom = fld.one()
        for nu in range(3):
            if nu == mu:
                continue
            p = p.compose(rhat - ident.scale(lams[nu]))
            denom = denom * (lams[mu] - lams[nu])
        inv = fld.one()
        # denom is a pure scalar; divide exactly
        p = p.scale(_scalar_inv(denom))
        out.append(p)
        del inv
    return tuple(out)


def _scalar_inv(c):
    return c.inv()


def rhat_inverse(idx: IndexSet, rhat=None, projs=None, fld=None) -> LabeledTensor:
    fld = fld or SymbolicField()
    if projs is None:
        rhat = rhat if rhat is not None else build_rhat(idx, fld)
        projs = projectors(idx, rhat, fld)
    ps, pa, pt = projs
    return (ps.scale(fld.q_half(-2)) - pa.scale(fld.q_half(2))
            + pt.scale(fld.q_half(2 * (idx.N - 1)))) + pa.scale(fld.zero())


# ---------------------------------------------------------------------------
# three-leg machinery for the braid equation
# ---------------------------------------------------------------------------

def lift12(t: LabeledTensor):
    """T x id on three legs; sparse dict ((i,j,k),(l,m,n)) -> v."""
    out = {}
    for (i, j, k, l), v in t.data.items():
        for a in t.idx.indices:
            out[((i, j, a), (k, l, a))] = v
    return out


def lift23(t: LabeledTensor):
    out = {}
    for (i, j, k, l), v in t.data.items():
        for a in t.idx.indices:
            out[((a, i, j), (a, k, l))] = v
    return out


def compose3(a, b):
    rows = {}
    for (m, c), v in b.items():
        rows.setdefault(m, []).append((c, v))
    out = {}
    for (r, m), va in a.items():
        for c, vb in rows.get(m, ()):
            key = (r, c)
            s = va * vb
            if key in out:
                s = out[key] + s
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def sub3(a, b):
    out = dict(a)
    for k, v in b.items():
        if k in out:
            s = out[k] - v
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = -v
    return out


def braid_residual(t: LabeledTensor):
    """T12 T23 T12 - T23 T12 T23 on three legs."""
    t12, t23 = lift12(t), lift23(t)
    lhs = compose3(compose3(t12, t23), t12)
    rhs = compose3(compose3(t23, t12), t23)
    return sub3(lhs, rhs)


def braid2_residual(t: LabeledTensor, f: LabeledTensor):
    """f(T)_12 T23 T12 - T23 T12 f(T)_23 for a polynomial image f of T."""
    lhs = compose3(compose3(lift12(f), lift23(t)), lift12(t))
    rhs = compose3(compose3(lift23(t), lift12(t)), lift23(f))
    return sub3(lhs, rhs)


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

def check_propr3_sparsity(idx, rhat):
    """Nonzero entries must have {k,l} = {i,j} (i != -j) or i=-j, k=-l."""
    for (i, j, k, l) in rhat.data:
        if i != -j:
            if not ((k == i and l == j) or (l == i and k == j)):
                return (i, j, k, l)
        else:
            if k != -l:
                return (i, j, k, l)
    return None


def check_propr1(rhat):
    for key, v in rhat.data.items():
        i, j, k, l = key
        w = rhat.data.get((k, l, i, j))
        if w is None or not (v - w).is_zero():
            return key
    return None


def check_grrel(idx, rhat, rinv, fld=None):
    """g_il T^{lh}_{jk} = (T^{-1})^{hl}_{ij} g_lk and the upper-index mirror,
    for T = rhat and T = rhat inverse."""
    fld = fld or SymbolicField()
    g = build_metric(idx, fld)
    zero = fld.zero()
    for (t, tinv) in ((rhat, rinv), (rinv, rhat)):
        for i in idx.indices:
            for h in idx.indices:
                for j in idx.indices:
                    for kk in idx.indices:
                        lhs = zero
                        le = g.get((i, -i))
                        v = t.data.get((-i, h, j, kk))
                        if v is not None:
                            lhs = le * v
                        rhs = zero
                        w = tinv.data.get((h, -kk, i, j))
                        if w is not None:
                            rhs = w * g.get((-kk, kk))
                        if not (lhs - rhs).is_zero():
                            return (i, h, j, kk)
    return None


def check_squarer(idx, rhat, fld=None):
    """T^2 - k T - 1 + q^(1-N) k |g><g| = 0."""
    fld = fld or SymbolicField()
    k = fld.q_half(2) - fld.q_half(-2)
    res = rhat.compose(rhat) - rhat.scale(k) - identity_tensor(idx, fld)
    res = res + metric_tensor(idx, fld).scale(k * fld.q_half(2 * (1 - idx.N)))
    return None if res.is_zero() else next(iter(res.data))


def check_propr2(idx, rhat, rinv):
    """Entrywise: rhat with q -> 1/q equals rhat^{-1} with all indices negated."""
    barred = rhat.map_values(lambda v: v.bar())
    target = rinv.negate_indices()
    res = barred - target
    return None if res.is_zero() else next(iter(res.data))


def check_propr2_numeric(idx, q0: Fraction):
    rh_inv_q = build_rhat(idx, NumericField(Fraction(1, 1) / q0))
    fld = NumericField(q0)
    rinv = rhat_inverse(idx, build_rhat(idx, fld), fld=fld)
    res = LabeledTensor(idx, dict(rh_inv_q.data)) - rinv.negate_indices()
    return None if res.is_zero() else next(iter(res.data))


def check_projector_algebra(idx, rhat, projs, fld=None):
    """Idempotence, orthogonality, completeness, spectral reconstruction."""
    fld = fld or SymbolicField()
    ident = identity_tensor(idx, fld)
    lams = rhat_eigenvalues(idx, fld)
    tot = LabeledTensor(idx)
    recon = LabeledTensor(idx)
    for mu in range(3):
        for nu in range(3):
            prod = projs[mu].compose(projs[nu])
            expect = projs[mu] if mu == nu else LabeledTensor(idx)
            if not (prod - expect).is_zero():
                return "orthogonality (%d,%d)" % (mu, nu)
        tot = tot + projs[mu]
        recon = recon + projs[mu].scale(lams[mu])
    if not (tot - ident).is_zero():
        return "completeness"
    if not (recon - rhat).is_zero():
        return "reconstruction"
    return None


def check_pt_closed_form(idx, pt, fld=None):
    """P_t = (g^{sm}g_{sm})^{-1} g g, and the trace closed form
    g^{sm}g_{sm} = omega_n (q^{N/2} - q^{-N/2}) / k."""
    fld = fld or SymbolicField()
    tr = gram_trace(idx, fld)
    target = metric_tensor(idx, fld).scale(_scalar_inv(tr))
    if not (pt - target).is_zero():
        return "Pt != gg/trace"
    k = fld.q_half(2) - fld.q_half(-2)
    om_n = fld.q_half(idx.rho2[idx.n]) + fld.q_half(-idx.rho2[idx.n])
    closed = om_n * (fld.q_half(idx.N) - fld.q_half(-idx.N))
    if not (tr * k - closed).is_zero():
        return "trace closed form"
    return None


def numeric_rank(idx, t: LabeledTensor, q0: Fraction) -> int:
    """Exact rank over Q(sqrt(q0)) by Gaussian elimination."""
    order = [(i, j) for i in idx.indices for j in idx.indices]
    pos = {p: a for a, p in enumerate(order)}
    rows = []
    for (i, j, k, l), v in t.data.items():
        rows.append((pos[(i, j)], pos[(k, l)], v))
    m = len(order)
    dense = [[QSqrt(0, 0, q0)] * m for _ in range(m)]
    for r, c, v in rows:
        dense[r][c] = v
    rank = 0
    row = 0
    for col in range(m):
        piv = None
        for r in range(row, m):
            if dense[r][col]:
                piv = r
                break
        if piv is None:
            continue
        dense[row], dense[piv] = dense[piv], dense[row]
        pv = dense[row][col].inv()
        dense[row] = [x * pv for x in dense[row]]
        for r in range(m):
            if r != row and dense[r][col]:
                f = dense[r][col]
                dense[r] = [a - f * b for a, b in zip(dense[r], dense[row])]
        rank += 1
        row += 1
        if row == m:
            break
    return rank


class RMatrixContext:
    """Shared per-N matrix data: braid matrix, inverse, projectors, metric."""

    def __init__(self, idx_or_N, fld=None, preset=None):
        self.idx = idx_or_N if isinstance(idx_or_N, IndexSet) else IndexSet(idx_or_N)
        self.fld = fld or SymbolicField()
        if preset is not None:
            self.rhat, self.p_s, self.p_a, self.p_t = preset
        else:
            self.rhat = build_rhat(self.idx, self.fld)
            self.p_s, self.p_a, self.p_t = projectors(self.idx, self.rhat, self.fld)
        self.rinv = rhat_inverse(self.idx, projs=(self.p_s, self.p_a, self.p_t), fld=self.fld)
        self.g = build_metric(self.idx, self.fld)

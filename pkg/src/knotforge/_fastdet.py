"""
Fast exact determinants of linear pencils A0 + A1*t over F_p.

Fox matrices of Wirtinger-type relators become linear in t after scaling
each row by a power of t, so their determinants are computed here via one
characteristic polynomial instead of a full symbolic elimination: pick c in
an extension field F_q (q > matrix size) with M = A0 + c*A1 invertible, then

    det(A0 + t*A1) = det(M) * sum_i (-1)^i a_i (t - c)^i,

where x^n + a_1 x^{n-1} + ... + a_n is the characteristic polynomial of
M^{-1}*A1.  If A0 + c*A1 is singular for n+1 distinct c the determinant is
the zero polynomial.  Coefficients of the result always land back in F_p.
Matrices that are not unit-multiples of pencils fall back to fraction-free
Gaussian elimination.
"""

from __future__ import annotations

from .algebra import LaurentPoly, det


# -- extension field arithmetic ---------------------------------------------

class _GFExt:
    """F_{p^k} with dense multiplication/addition tables; elements are ints
    0..q-1 encoding polynomial coefficients in base p (low digit first)."""

    def __init__(self, p, k):
        self.p = p
        self.k = k
        self.q = q = p ** k
        if k == 1:
            self.add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.mul = [[a * b % p for b in range(p)] for a in range(p)]
            self.neg = [(-a) % p for a in range(p)]
            self.inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
            return
        f = _find_irreducible(p, k)
        digits = [self._digits(a) for a in range(q)]
        self.add = [[self._undigits([(x + y) % p for x, y in zip(da, db)])
                     for db in digits] for da in digits]
        self.neg = [self._undigits([(-x) % p for x in da]) for da in digits]
        g = _find_generator(p, k, f)
        exp = [1] * (q - 1)
        log = [0] * q
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._undigits(_polymulmod(digits[cur], digits[g], f, p))
        self.exp, self.log = exp, log
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            la = log[a]
            row = mul[a]
            for b in range(1, q):
                row[b] = exp[(la + log[b]) % (q - 1)]
        self.mul = mul
        self.inv = [0] + [exp[(q - 1 - log[a]) % (q - 1)]
                          for a in range(1, q)]

    def _digits(self, a):
        p, k = self.p, self.k
        out = []
        for _ in range(k):
            out.append(a % p)
            a //= p
        return out

    def _undigits(self, ds):
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a


def _polymulmod(a, b, f, p):
    """(a * b) mod f over F_p; a, b low-first coefficient lists, f monic of
    degree k given by its k low coefficients."""
    k = len(f)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(2 * k - 2, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(k):
                prod[d - k + j] = (prod[d - k + j] - c * f[j]) % p
    return prod[:k]


def _poly_pow_x(e, f, p):
    """x^e mod f."""
    k = len(f)
    result = [1] + [0] * (k - 1)
    base = ([0, 1] + [0] * (k - 2)) if k > 1 else [0]
    if k == 1:
        return [pow(0, e, p)]
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def _find_irreducible(p, k):
    """Low coefficients f_0..f_{k-1} of a monic irreducible of degree k."""
    x = [0, 1] + [0] * (k - 2)
    for code in range(p ** k):
        f = []
        c = code
        for _ in range(k):
            f.append(c % p)
            c //= p
        if f[0] == 0:
            continue
        # irreducible iff x^(p^k) = x mod f and gcd-degree checks for the
        # prime divisors of k reduce to x^(p^(k/l)) != x
        if _poly_pow_x(p ** k, f, p) != x:
            continue
        ok = True
        for l in _prime_divisors(k):
            if _poly_pow_x(p ** (k // l), f, p) == x:
                ok = False
                break
        if ok:
            return f
    raise RuntimeError("no irreducible polynomial found")


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _find_generator(p, k, f):
    q = p ** k
    facs = _prime_divisors(q - 1)

    def topoly(a):
        out = []
        for _ in range(k):
            out.append(a % p)
            a //= p
        return out

    def frompoly(ds):
        a = 0
        for d in reversed(ds):
            a = a * p + d
        return a

    one = [1] + [0] * (k - 1)
    for g in range(2, q):
        gp = topoly(g)
        good = True
        for l in facs:
            e = (q - 1) // l
            acc = one
            base = gp
            ee = e
            while ee:
                if ee & 1:
                    acc = _polymulmod(acc, base, f, p)
                base = _polymulmod(base, base, f, p)
                ee >>= 1
            if acc == one:
                good = False
                break
        if good:
            return g
    raise RuntimeError("no generator found")


_FIELDS = {}


def _field(p, k):
    key = (p, k)
    if key not in _FIELDS:
        _FIELDS[key] = _GFExt(p, k)
    return _FIELDS[key]


# -- linear algebra over the extension field --------------------------------

def _gauss_det_inv(M, F, want_inv):
    """Determinant (and optionally inverse) of a matrix of field elements."""
    n = len(M)
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    A = [list(r) + ([1 if i == j else 0 for j in range(n)] if want_inv else [])
         for i, r in enumerate(M)]
    d = 1
    width = len(A[0]) if A else 0
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return 0, None
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            d = neg[d]
        pv = A[col][col]
        d = mul[d][pv]
        pinv = inv[pv]
        row = A[col]
        for j in range(col, width):
            row[j] = mul[pinv][row[j]]
        for r in range(n):
            if r != col and A[r][col]:
                fmul = mul[A[r][col]]
                rr = A[r]
                for j in range(col, width):
                    rr[j] = add[rr[j]][neg[fmul[row[j]]]]
    if want_inv:
        return d, [r[n:] for r in A]
    return d, None


def _charpoly(B, F):
    """Coefficients [1, a_1, ..., a_n] of det(xI - B) via the Hessenberg
    recurrence."""
    n = len(B)
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    H = [list(r) for r in B]
    # reduce to upper Hessenberg by similarity transformations
    for col in range(n - 2):
        piv = next((r for r in range(col + 1, n) if H[r][col]), None)
        if piv is None:
            continue
        if piv != col + 1:
            H[col + 1], H[piv] = H[piv], H[col + 1]
            for r in range(n):
                H[r][col + 1], H[r][piv] = H[r][piv], H[r][col + 1]
        pinv = inv[H[col + 1][col]]
        for r in range(col + 2, n):
            if H[r][col]:
                f = mul[H[r][col]][pinv]
                fm = mul[f]
                for j in range(n):
                    H[r][j] = add[H[r][j]][neg[fm[H[col + 1][j]]]]
                for i in range(n):
                    H[i][col + 1] = add[H[i][col + 1]][fm[H[i][r]]]
    # p_m(x) = (x - H[m-1][m-1]) p_{m-1}(x)
    #          - sum_i H[i][m-1] (prod of subdiagonals) p_i(x)
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] * (m + 1)
        hm = H[m - 1][m - 1]
        for i, c in enumerate(prev):
            cur[i + 1] = add[cur[i + 1]][c]
            cur[i] = add[cur[i]][neg[mul[hm][c]]]
        beta = 1
        for i in range(m - 2, -1, -1):
            beta = mul[beta][H[i + 1][i]]
            coef = mul[H[i][m - 1]][beta]
            if coef:
                for j, c in enumerate(polys[i]):
                    cur[j] = add[cur[j]][neg[mul[coef][c]]]
        polys.append(cur)
    # polys[n] is x^n + a_1 x^(n-1) + ... listed low-degree-first; flip
    pn = polys[n]
    return list(reversed(pn))


def _pencil_det_gf(A0, A1, p):
    """det(A0 + t*A1) over F_p for integer matrices mod p."""
    n = len(A0)
    k = 1
    while p ** k <= n + 1:
        k += 1
    F = _field(p, k)
    add, mul = F.add, F.mul
    tried = 0
    for c in range(F.q):
        M = [[add[A0[i][j]][mul[c][A1[i][j]]] for j in range(n)]
             for i in range(n)]
        dM, Minv = _gauss_det_inv(M, F, True)
        if dM:
            break
        tried += 1
        if tried > n:
            return {}
    else:
        return {}
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        Mi = Minv[i]
        for j in range(n):
            acc = 0
            for l in range(n):
                acc = add[acc][mul[Mi[l]][A1[l][j]]]
            B[i][j] = acc
    coeffs = _charpoly(B, F)  # [1, a_1, ..., a_n]
    # det = det(M) * sum_i (-1)^i a_i (t - c)^i
    neg = F.neg
    acc = [0] * (n + 1)
    power = [1]  # (t - c)^i, low-degree-first
    negc = neg[c]
    for i in range(n + 1):
        a = coeffs[i] if i % 2 == 0 else neg[coeffs[i]]
        if a:
            am = mul[a]
            for j, pc in enumerate(power):
                acc[j] = add[acc[j]][am[pc]]
        if i < n:
            nxt = [0] * (len(power) + 1)
            for j, pc in enumerate(power):
                nxt[j + 1] = add[nxt[j + 1]][pc]
                nxt[j] = add[nxt[j]][mul[negc][pc]]
            power = nxt
    out = {}
    for e, v in enumerate(acc):
        v = mul[dM][v]
        if v:
            if v >= p:
                raise AssertionError("pencil determinant left the base field")
            out[e] = v
    return out


# -- public entry ------------------------------------------------------------

def pencil_det(M):
    """Exact determinant of a square Laurent-polynomial matrix; uses the
    pencil/charpoly path when every row is a unit multiple of a row linear
    in t and the domain is a prime field, otherwise falls back to
    fraction-free elimination."""
    dom = M.domain
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return LaurentPoly.one(dom)
    if dom.kind != "GF" or dom.p == 2:
        return det(M)
    shift_total = 0
    A0 = []
    A1 = []
    for i in range(n):
        entries = [M[i, j] for j in range(n)]
        exps = {e for f in entries for e in f.coeffs}
        if not exps:
            return LaurentPoly.zero(dom)
        lo, hi = min(exps), max(exps)
        if hi - lo > 1:
            return det(M)
        sh = -lo
        shift_total += sh
        A0.append([f.coeffs.get(-sh, 0) for f in entries])
        A1.append([f.coeffs.get(1 - sh, 0) for f in entries])
    coeffs = _pencil_det_gf(A0, A1, dom.p)
    return LaurentPoly(dom, coeffs).shift(-shift_total)

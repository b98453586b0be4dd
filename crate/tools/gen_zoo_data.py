#!/usr/bin/env python3
"""Regenerates the shipped finite-field table and matrix-generator files under data/.

The field arithmetic here is written independently of the Rust library. Every generator
set is checked for form preservation and its generated group order is confirmed with
sympy's Schreier-Sims before a file is written. Runs are deterministic.

    python3 tools/gen_zoo_data.py [--only NAME ...]
"""

import argparse
import hashlib
import functools
import itertools
import json
import math
import random
import sys
from pathlib import Path

from sympy.combinatorics import Permutation, PermutationGroup

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


def is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def prime_powers(limit):
    out = []
    for q in range(2, limit + 1):
        p = next(d for d in range(2, q + 1) if q % d == 0)
        k = round(math.log(q, p))
        if p ** k == q:
            out.append((q, p, k))
    return out


class Field:
    """F_q with elements 0..q-1 encoding polynomial residues base p."""

    def __init__(self, p, k, modulus):
        self.p, self.k, self.q = p, k, p ** k
        self.modulus = modulus
        q = self.q
        self._add = [[self._poly_to(self._padd(self._to_poly(a), self._to_poly(b))) for b in range(q)] for a in range(q)]
        self._mul = [[self._poly_to(self._pmul(self._to_poly(a), self._to_poly(b))) for b in range(q)] for a in range(q)]
        self._neg = [self._poly_to([(-c) % p for c in self._to_poly(a)]) for a in range(q)]
        self._inv = [None] + [next(b for b in range(1, q) if self._mul[a][b] == 1) for a in range(1, q)]
        self.primitive = next(g for g in range(1, q) if self.mult_order(g) == q - 1)

    def _to_poly(self, a):
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def _poly_to(self, c):
        return sum(x * self.p ** i for i, x in enumerate(c))

    def _padd(self, a, b):
        return [(x + y) % self.p for x, y in zip(a, b)]

    def _pmul(self, a, b):
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        for d in range(len(prod) - 1, self.k - 1, -1):
            c = prod[d]
            if c:
                for i, m in enumerate(self.modulus[:-1]):
                    prod[d - self.k + i] = (prod[d - self.k + i] - c * m) % self.p
                prod[d] = 0
        return prod[: self.k]

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        return self._inv[a]

    def pow(self, a, e):
        r = 1
        for _ in range(e % (self.q - 1) if a else e):
            r = self.mul(r, a)
        return r if (a or e == 0) else 0

    def mult_order(self, a):
        x, n = a, 1
        while x != 1:
            x, n = self.mul(x, a), n + 1
        return n

    def frobenius(self, a, times=1):
        for _ in range(times):
            a = self.pow(a, self.p)
        return a

    def basis(self):
        return [self.p ** i for i in range(self.k)]


def irreducible_primitive(p, k):
    """Least monic primitive polynomial of degree k over F_p, ordered by sum c_i p^i."""
    for code in range(p ** k):
        low = [(code // p ** i) % p for i in range(k)]
        if low[0] == 0:
            continue
        modulus = low + [1]
        if k == 1:
            f = Field(p, 1, [0, 1])
            root = (-low[0]) % p
            if f.mult_order(root) == p - 1:
                return modulus
            continue
        try:
            f = Field(p, k, modulus)
        except StopIteration:
            continue  # zero divisors: reducible
        if f.mult_order(p) == p ** k - 1:  # the class of x generates
            return modulus
    raise ValueError((p, k))


@functools.lru_cache(maxsize=None)
def field_table():
    return [{"q": q, "p": p, "k": k, "modulus": irreducible_primitive(p, k)} for q, p, k in prime_powers(81)]


FIELDS = {}


def field(q):
    if q not in FIELDS:
        entry = next(e for e in field_table() if e["q"] == q)
        FIELDS[q] = Field(entry["p"], entry["k"], entry["modulus"])
    return FIELDS[q]


# ---------------------------------------------------------------- matrices


def identity(F, n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(F, a, b):
    n, m, l = len(a), len(b), len(b[0])
    out = [[0] * l for _ in range(n)]
    for i in range(n):
        for t in range(m):
            if a[i][t]:
                x = a[i][t]
                row = b[t]
                o = out[i]
                for j in range(l):
                    if row[j]:
                        o[j] = F.add(o[j], F.mul(x, row[j]))
    return out


def transpose(a):
    return [list(r) for r in zip(*a)]


def frob_mat(F, a, times):
    return [[F.frobenius(x, times) for x in r] for r in a]


def vec_mat(F, v, m):
    out = [0] * len(m[0])
    for i, x in enumerate(v):
        if x:
            for j, y in enumerate(m[i]):
                if y:
                    out[j] = F.add(out[j], F.mul(x, y))
    return out


def det(F, m):
    m = [list(r) for r in m]
    n = len(m)
    d = 1
    for c in range(n):
        r = next((r for r in range(c, n) if m[r][c]), None)
        if r is None:
            return 0
        if r != c:
            m[r], m[c] = m[c], m[r]
            d = F.neg(d)
        d = F.mul(d, m[c][c])
        inv = F.inv(m[c][c])
        for r2 in range(c + 1, n):
            if m[r2][c]:
                f = F.mul(m[r2][c], inv)
                m[r2] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r2], m[c])]
    return d


def rank(F, m):
    m = [list(r) for r in m]
    rk, n, cols = 0, len(m), len(m[0])
    for c in range(cols):
        r = next((r for r in range(rk, n) if m[r][c]), None)
        if r is None:
            continue
        m[rk], m[r] = m[r], m[rk]
        inv = F.inv(m[rk][c])
        for r2 in range(n):
            if r2 != rk and m[r2][c]:
                f = F.mul(m[r2][c], inv)
                m[r2] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r2], m[rk])]
        rk += 1
    return rk


def mat_sub(F, a, b):
    return [[F.sub(x, y) for x, y in zip(r, s)] for r, s in zip(a, b)]


def preserves(F, m, form, kind, sigma_times=0):
    """Row convention: v -> vM preserves B(u, v) = u J v^T (or u J conj(v)^T)."""
    if kind == "hermitian":
        lhs = mat_mul(F, mat_mul(F, m, form), transpose(frob_mat(F, m, sigma_times)))
    else:
        lhs = mat_mul(F, mat_mul(F, m, form), transpose(m))
    return lhs == form


def jordan_ranks(F, m):
    n = len(m)
    u = mat_sub(F, m, identity(F, n))
    ranks, power = [], identity(F, n)
    for _ in range(n):
        power = mat_mul(F, power, u)
        ranks.append(rank(F, power))
    return ranks


# ---------------------------------------------------------------- actions


def normalise(F, v):
    lead = next(x for x in v if x)
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


def action(F, gens, seed, projective):
    key = (lambda v: normalise(F, v)) if projective else tuple
    start = key(seed)
    points, index = [start], {start: 0}
    head = 0
    while head < len(points):
        v = points[head]
        head += 1
        for g in gens:
            w = key(vec_mat(F, v, g))
            if w not in index:
                index[w] = len(points)
                points.append(w)
    perms = []
    for g in gens:
        perms.append([index[key(vec_mat(F, v, g))] for v in points])
    return points, perms


def group_order(perms):
    return PermutationGroup([Permutation(p) for p in perms]).order()


# ---------------------------------------------------------------- families


def classical_order(family, n, q):
    if family == "SL":
        return q ** (n * (n - 1) // 2) * math.prod(q ** i - 1 for i in range(2, n + 1))
    if family == "GL":
        return (q - 1) * classical_order("SL", n, q)
    if family == "SU":
        return q ** (n * (n - 1) // 2) * math.prod(q ** i - (-1) ** i for i in range(2, n + 1))
    if family == "Sp":
        m = n // 2
        return q ** (m * m) * math.prod(q ** (2 * i) - 1 for i in range(1, m + 1))
    if family == "SO":
        m = n // 2
        return q ** (m * m) * math.prod(q ** (2 * i) - 1 for i in range(1, m + 1))
    if family in ("SOplus", "SOminus"):
        m = n // 2
        eps = 1 if family == "SOplus" else -1
        return q ** (m * (m - 1)) * (q ** m - eps) * math.prod(q ** (2 * i) - 1 for i in range(1, m))
    if family == "Sz":
        return q * q * (q * q + 1) * (q - 1)
    raise ValueError(family)


def elementary(F, n, i, j, t):
    m = identity(F, n)
    m[i][j] = t
    return m


def candidates_until_order(F, candidates, seed, projective, target, label):
    """Adds candidate generators in order until the generated group reaches the target order,
    then drops any generator that is not needed."""
    gens = []
    for c in candidates:
        gens.append(c)
        _, perms = action(F, gens, seed, projective)
        order = group_order(perms)
        if order == target:
            break
        if order > target:
            raise RuntimeError(f"{label}: overshot {order} > {target}")
    else:
        raise RuntimeError(f"{label}: candidates exhausted at order {order}")
    i = 0
    while i < len(gens):
        trial = gens[:i] + gens[i + 1 :]
        if trial:
            _, perms = action(F, trial, seed, projective)
            if group_order(perms) == target:
                gens = trial
                continue
        i += 1
    return gens


def sl_generators(F, n):
    gens = []
    for i in range(n - 1):
        for t in F.basis():
            gens.append(elementary(F, n, i, i + 1, t))
            gens.append(elementary(F, n, i + 1, i, t))
    return gens


def symplectic_form(F, n):
    m = n // 2
    J = [[0] * n for _ in range(n)]
    for i in range(m):
        J[i][n - 1 - i] = 1
        J[n - 1 - i][i] = F.neg(1)
    return J


def bilinear(F, u, J, v):
    return sum_f(F, (F.mul(u[i], F.mul(J[i][j], v[j])) for i in range(len(u)) for j in range(len(v)) if J[i][j]))


def sum_f(F, xs):
    s = 0
    for x in xs:
        s = F.add(s, x)
    return s


def all_vectors(F, n):
    for coords in itertools.product(range(F.q), repeat=n):
        if any(coords):
            yield list(coords)


def transvection(F, J, v, a):
    """x -> x + a B(x, v) v in row convention: M = I + a (J v^T) v."""
    n = len(v)
    col = [sum_f(F, (F.mul(J[i][j], v[j]) for j in range(n))) for i in range(n)]
    m = identity(F, n)
    for i in range(n):
        for j in range(n):
            m[i][j] = F.add(m[i][j], F.mul(a, F.mul(col[i], v[j])))
    return m


def ordered_vectors(F, n, rng):
    vs = list(all_vectors(F, n))
    rng.shuffle(vs)
    return vs


def sp_candidates(F, n, J, rng):
    for v in ordered_vectors(F, n, rng):
        for a in F.basis():
            yield transvection(F, J, v, a)


def hermitian_form(F, n):
    return [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)]


def hermitian(F, u, J, v, s):
    return sum_f(F, (F.mul(u[i], F.mul(J[i][j], F.frobenius(v[j], s))) for i in range(len(u)) for j in range(len(v)) if J[i][j]))


def su_candidates(F, n, J, q0, rng):
    s = int(round(math.log(q0, F.p)))
    trace_zero = [a for a in range(1, F.q) if F.add(a, F.frobenius(a, s)) == 0]
    for v in ordered_vectors(F, n, rng):
        if hermitian(F, v, J, v, s) != 0:
            continue
        col = [sum_f(F, (F.mul(J[i][j], F.frobenius(v[j], s)) for j in range(n))) for i in range(n)]
        for a in trace_zero[:2]:
            m = identity(F, n)
            for i in range(n):
                for j in range(n):
                    m[i][j] = F.add(m[i][j], F.mul(a, F.mul(col[i], v[j])))
            if preserves(F, m, J, "hermitian", s):
                yield m


def orthogonal_form(F, n, family):
    J = [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)]
    if family == "SOminus":
        nonsquare = next(a for a in range(1, F.q) if all(F.mul(b, b) != a for b in range(1, F.q)))
        c = n // 2 - 1
        for i in (c, c + 1):
            J[i] = [0] * n
        J[c][c + 1] = J[c + 1][c] = 0
        J[c][c] = 1
        J[c + 1][c + 1] = F.neg(nonsquare)
    return J


def reflection(F, J, v):
    n = len(v)
    bvv = bilinear(F, v, J, v)
    col = [sum_f(F, (F.mul(J[i][j], v[j]) for j in range(n))) for i in range(n)]
    c = F.mul(F.neg(F.add(1, 1)), F.inv(bvv))
    m = identity(F, n)
    for i in range(n):
        for j in range(n):
            m[i][j] = F.add(m[i][j], F.mul(c, F.mul(col[i], v[j])))
    return m


def so_candidates(F, n, J, rng):
    aniso = [v for v in ordered_vectors(F, n, rng) if bilinear(F, v, J, v) != 0]
    r0 = reflection(F, J, aniso[0])
    for v in aniso[1:]:
        yield mat_mul(F, r0, reflection(F, J, v))


# ---------------------------------------------------------------- Suzuki groups


def tits_ovoid(F, sigma_exp):
    pts = [(0, 0, 0, 1)]
    for a in range(F.q):
        for b in range(F.q):
            z = F.add(F.add(F.mul(a, b), F.pow(a, sigma_exp + 2)), F.pow(b, sigma_exp))
            pts.append((1, a, b, z))
    return pts


def solve_projective_map(F, src, dst):
    """Matrix M with src[i] M ∝ dst[i] for a 5-point frame (row convention)."""
    A = [list(v) for v in src[:4]]
    if det(F, A) == 0:
        return None
    # coefficients of src[4] in the basis src[:4]
    c = solve(F, transpose(A), list(src[4]))
    d = solve(F, transpose([list(v) for v in dst[:4]]), list(dst[4]))
    if c is None or d is None or 0 in c or 0 in d:
        return None
    # M maps c_i src_i -> d_i dst_i
    scaled_src = [[F.mul(c[i], x) for x in src[i]] for i in range(4)]
    scaled_dst = [[F.mul(d[i], x) for x in dst[i]] for i in range(4)]
    inv = invert(F, scaled_src)
    return mat_mul(F, inv, scaled_dst)


def solve(F, A, b):
    n = len(A)
    M = [list(A[i]) + [b[i]] for i in range(n)]
    for c in range(n):
        r = next((r for r in range(c, n) if M[r][c]), None)
        if r is None:
            return None
        M[c], M[r] = M[r], M[c]
        inv = F.inv(M[c][c])
        M[c] = [F.mul(inv, x) for x in M[c]]
        for r2 in range(n):
            if r2 != c and M[r2][c]:
                f = M[r2][c]
                M[r2] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r2], M[c])]
    return [M[i][n] for i in range(n)]


def invert(F, A):
    n = len(A)
    cols = [solve(F, A, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return transpose(cols)


def suzuki(q, rng):
    F = field(q)
    m = (F.k - 1) // 2
    sigma_exp = 2 ** (m + 1)
    ovoid = tits_ovoid(F, sigma_exp)
    oset = set(normalise(F, v) for v in ovoid)
    J = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    frame = None
    for combo in itertools.combinations(range(len(ovoid)), 5):
        pts = [ovoid[i] for i in combo]
        if all(det(F, [list(pts[j]) for j in range(5) if j != skip]) != 0 for skip in range(5)):
            frame = pts
            break
    target = classical_order("Sz", 4, q)
    found = []
    tries = 0
    while True:
        tries += 1
        images = rng.sample(ovoid, 3)
        for q4, q5 in itertools.permutations(ovoid, 2):
            dst = images + [q4, q5]
            M = solve_projective_map(F, frame, dst)
            if M is None:
                continue
            if all(normalise(F, vec_mat(F, list(v), M)) in oset for v in ovoid):
                # rescale to determinant one and to preserve the alternating form exactly
                lam = next(l for l in range(1, F.q) if preserves(F, [[F.mul(l, x) for x in r] for r in M], J, "bilinear"))
                M = [[F.mul(lam, x) for x in r] for r in M]
                found.append(M)
                break
        _, perms = action(F, found, [0, 0, 0, 1], True)
        if found and group_order(perms) == target:
            return F, J, found
        if tries > 20:
            raise RuntimeError("Suzuki generators not found")


# ---------------------------------------------------------------- instances


def random_elements(F, gens, rng, count):
    x = identity(F, len(gens[0]))
    for _ in range(count):
        x = mat_mul(F, x, rng.choice(gens))
        yield x


def find_element(F, gens, rng, predicate, limit=200000):
    pool = [list(map(list, g)) for g in gens]
    x = identity(F, len(gens[0]))
    for _ in range(limit):
        i, j = rng.randrange(len(pool)), rng.randrange(len(pool))
        if i == j:
            continue
        pool[i] = mat_mul(F, pool[i], pool[j])
        x = mat_mul(F, x, pool[i])
        if predicate(x):
            return x
    raise RuntimeError("element not found")


def is_unipotent(F, m):
    n = len(m)
    u = mat_sub(F, m, identity(F, n))
    power = identity(F, n)
    for _ in range(n):
        power = mat_mul(F, power, u)
    return all(x == 0 for r in power for x in r)


def unipotent_with_ranks(F, ranks):
    def pred(m):
        return is_unipotent(F, m) and jordan_ranks(F, m)[: len(ranks)] == ranks

    return pred


def jordan_rank_profile(blocks):
    n = sum(blocks)
    return [sum(max(b - k, 0) for b in blocks) for k in range(1, n + 1)]


INSTANCES = [
    # name, family, n, q, action, named element Jordan types
    ("SL2_2", "SL", 2, 2, "vectors", {}),
    ("SL2_3", "SL", 2, 3, "vectors", {"regular_unipotent": [2]}),
    ("SL2_4", "SL", 2, 4, "vectors", {}),
    ("SL2_5", "SL", 2, 5, "vectors", {"regular_unipotent": [2]}),
    ("SL2_7", "SL", 2, 7, "vectors", {}),
    ("SL2_8", "SL", 2, 8, "vectors", {"regular_unipotent": [2]}),
    ("SL2_9", "SL", 2, 9, "vectors", {}),
    ("SL3_2", "SL", 3, 2, "vectors", {"regular_unipotent": [3]}),
    ("SL3_3", "SL", 3, 3, "vectors", {"regular_unipotent": [3]}),
    ("SL3_4", "SL", 3, 4, "vectors", {"regular_unipotent": [3]}),
    ("GL2_3", "GL", 2, 3, "vectors", {"regular_unipotent": [2]}),
    ("GL2_5", "GL", 2, 5, "vectors", {"regular_unipotent": [2]}),
    ("Sp4_2", "Sp", 4, 2, "vectors", {"regular_unipotent": [4]}),
    ("Sp4_3", "Sp", 4, 3, "vectors", {"regular_unipotent": [4]}),
    ("Sp6_2", "Sp", 6, 2, "vectors", {"regular_unipotent": [6]}),
    ("SU3_3", "SU", 3, 3, "isotropic_projective", {"regular_unipotent": [3]}),
    ("SU3_5", "SU", 3, 5, "isotropic_projective", {"regular_unipotent": [3]}),
    ("SU4_2", "SU", 4, 2, "isotropic_projective", {"regular_unipotent": [4]}),
    ("SU5_2", "SU", 5, 2, "isotropic_projective", {"unipotent_4_1": [4, 1]}),
    ("SO3_5", "SO", 3, 5, "isotropic_projective", {}),
    ("SO5_3", "SO", 5, 3, "isotropic_projective", {}),
    ("SOplus4_3", "SOplus", 4, 3, "isotropic_projective", {}),
    ("SOminus4_3", "SOminus", 4, 3, "isotropic_projective", {}),
    ("Sz8", "Sz", 4, 8, "ovoid", {}),
]


def build_instance(name, family, n, q, act, named, rng):
    target = classical_order(family, n, q)
    provenance = ""
    if family in ("SL", "GL"):
        F = field(q)
        gens = sl_generators(F, n)
        if family == "GL":
            d = identity(F, n)
            d[0][0] = F.primitive
            gens.append(d)
        form, kind, sigma = None, "none", 0
        provenance = "elementary transvections x_{i,i±1}(t), t in the F_p-basis of F_q" + (
            ", and diag(ω, 1, …, 1) for a primitive ω" if family == "GL" else ""
        )
        seed = [1] + [0] * (n - 1)
        projective = False
    elif family == "Sp":
        F = field(q)
        form, kind, sigma = symplectic_form(F, n), "symplectic", 0
        seed = [1] + [0] * (n - 1)
        projective = False
        gens = candidates_until_order(F, sp_candidates(F, n, form, rng), seed, projective, target, name)
        provenance = "symplectic transvections x ↦ x + a·B(x, v)·v for seeded random v, pruned to a minimal generating subset"
    elif family == "SU":
        F = field(q * q)
        s = int(round(math.log(q, F.p)))
        form, kind, sigma = hermitian_form(F, n), "hermitian", s
        seed = [1] + [0] * (n - 1)
        projective = True
        scalars = math.gcd(n, q + 1)
        gens = candidates_until_order(F, su_candidates(F, n, form, q, rng), seed, projective, target // scalars, name)
        provenance = "unitary transvections x ↦ x + a·h(x, v)·v (v isotropic, a + a^q = 0) for seeded random v, pruned to a minimal generating subset"
    elif family in ("SO", "SOplus", "SOminus"):
        F = field(q)
        form, kind, sigma = orthogonal_form(F, n, family), "symmetric", 0
        seed = [1] + [0] * (n - 1)
        projective = True
        scalars = 2 if n % 2 == 0 else 1
        gens = candidates_until_order(F, so_candidates(F, n, form, rng), seed, projective, target // scalars, name)
        provenance = "products r_u·r_v of orthogonal reflections for seeded random anisotropic v, pruned to a minimal generating subset"
    elif family == "Sz":
        F, form, gens = suzuki(q, rng)
        kind, sigma = "symplectic", 0
        seed = [0, 0, 0, 1]
        projective = True
        provenance = "projective maps stabilising the Tits ovoid {(0,0,0,1)} ∪ {(1, a, b, ab + a^(σ+2) + b^σ)}, found by frame search and rescaled into Sp4"
    else:
        raise ValueError(family)

    for g in gens:
        if form is not None:
            assert preserves(F, g, form, kind, sigma), name
        if family != "GL":
            assert det(F, g) == 1, name
    _, perms = action(F, gens, seed, projective)
    order = group_order(perms)
    kernel = target // order
    assert target % order == 0, name
    elements = {}
    for label, blocks in named.items():
        profile = jordan_rank_profile(blocks)
        elements[label] = {"matrix": find_element(F, gens, rng, unipotent_with_ranks(F, profile)), "jordan_blocks": blocks}
    return {
        "name": name,
        "family": family,
        "n": n,
        "q": q,
        "field_order": F.q,
        "form": None if form is None else {"kind": kind, "matrix": form},
        "action": {"kind": act, "projective": projective, "seed": seed},
        "generators": gens,
        "elements": elements,
        "expected_order": target,
        "action_kernel_order": kernel,
        "provenance": provenance + "; generated by tools/gen_zoo_data.py and checked with sympy Schreier–Sims",
    }


def m12():
    gens = [
        [(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11)],
        [(3, 7, 11, 8), (4, 10, 5, 6)],
        [(1, 12), (2, 11), (3, 6), (4, 8), (5, 9), (7, 10)],
    ]
    arrays = []
    for cycles in gens:
        img = list(range(12))
        for c in cycles:
            for i, x in enumerate(c):
                img[x - 1] = c[(i + 1) % len(c)] - 1
        arrays.append(img)
    assert group_order(arrays) == 95040
    return {
        "degree": 12,
        "generators": arrays,
        "provenance": "Mathieu group M12 on 12 points: the standard generators (1,…,11), (3,7,11,8)(4,10,5,6), (1,12)(2,11)(3,6)(4,8)(5,9)(7,10), shifted to 0-based points",
        "expected_order": 95040,
    }


def affine_3_cubed_a4():
    """3^3 ⋊ A4 with A4 acting monomially (sign changes of determinant one and a 3-cycle of coordinates), on the 27 points of F_3^3."""
    pts = list(itertools.product(range(3), repeat=3))
    index = {p: i for i, p in enumerate(pts)}

    def perm(f):
        return [index[f(p)] for p in pts]

    translate = perm(lambda v: ((v[0] + 1) % 3, v[1], v[2]))
    rotate = perm(lambda v: (v[2], v[0], v[1]))
    signs = perm(lambda v: ((-v[0]) % 3, (-v[1]) % 3, v[2]))
    arrays = [translate, rotate, signs]
    assert group_order(arrays) == 324
    return {
        "degree": 27,
        "generators": arrays,
        "provenance": "affine group 3^3:A4 on F_3^3: translations, the coordinate 3-cycle and sign changes of determinant one. "
        "Order 324 with normal elementary abelian 3^3 and quotient A4; identification with SmallGroup(324,37) is not re-checked here "
        "(no small-groups library available)",
        "expected_order": 324,
    }


REGISTRY = [
    {"name": "M12", "file": "groups/M12.json", "expected_order": 95040,
     "note": "Mathieu group M12 from its standard permutation generators"},
    {"name": "SmallGroup_324_37", "file": "groups/SmallGroup_324_37.json", "expected_order": 324,
     "note": "3^3:A4 model; identity as SmallGroup(324,37) rests on the file provenance, not re-identified"},
    {"name": "PSL3_3", "recipe": "PSL(3,3)", "expected_order": 5616},
    {"name": "PSL2_7", "recipe": "PSL(2,7)", "expected_order": 168},
    {"name": "PSL2_8", "recipe": "PSL(2,8)", "expected_order": 504},
    {"name": "PSU3_5", "recipe": "PSU(3,5)", "expected_order": 126000},
    {"name": "SU3_3", "recipe": "SU(3,3)", "expected_order": 6048},
    {"name": "SU4_2", "recipe": "SU(4,2)", "expected_order": 25920},
    {"name": "SU5_2", "recipe": "SU(5,2)", "expected_order": 13685760},
    {"name": "SL3_4", "recipe": "SL(3,4)", "expected_order": 60480},
    {"name": "Sp4_3", "recipe": "Sp(4,3)", "expected_order": 51840},
    {"name": "Sp6_2", "recipe": "Sp(6,2)", "expected_order": 1451520},
    {"name": "GL2_5", "recipe": "GL(2,5)", "expected_order": 480},
    {"name": "Sz8", "recipe": "Sz(8)", "expected_order": 29120},
]


def write_registry():
    entries = []
    for e in REGISTRY:
        e = dict(e)
        if "file" in e:
            e["sha256"] = hashlib.sha256((DATA / e["file"]).read_bytes()).hexdigest()
        entries.append(e)
    text = "{\"version\": 1, \"groups\": [\n" + ",\n".join(json.dumps(e) for e in entries) + "\n]}\n"
    (DATA / "registry.json").write_text(text)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", nargs="*")
    args = ap.parse_args()
    (DATA / "matrices").mkdir(parents=True, exist_ok=True)
    (DATA / "groups").mkdir(parents=True, exist_ok=True)
    (DATA / "fields.json").write_text("{\"version\": 1, \"fields\": [\n" + ",\n".join(json.dumps(e) for e in field_table()) + "\n]}\n")
    if not args.only or "M12" in args.only:
        (DATA / "groups" / "M12.json").write_text(json.dumps(m12()) + "\n")
    if not args.only or "SmallGroup_324_37" in args.only:
        (DATA / "groups" / "SmallGroup_324_37.json").write_text(json.dumps(affine_3_cubed_a4()) + "\n")
    write_registry()
    for inst in INSTANCES:
        if args.only and inst[0] not in args.only:
            continue
        rng = random.Random(inst[0])
        doc = build_instance(*inst, rng)
        (DATA / "matrices" / f"{inst[0]}.json").write_text(json.dumps(doc) + "\n")
        print(inst[0], "ok", len(doc["generators"]), "generators", file=sys.stderr)


if __name__ == "__main__":
    main()

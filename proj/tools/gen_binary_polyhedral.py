# Generates data/binary_polyhedral_characters.json: exact character tables of
# the binary tetrahedral (2T), octahedral (2O) and icosahedral (2I) groups.
# Group closure and classes are found numerically (elements remember words),
# class representatives are then recomputed exactly. Tables come from peeling
# tensor products of seed characters in exact cyclotomic arithmetic; the C++
# loader re-verifies everything independently.
import json, sys
from fractions import Fraction as F
from functools import lru_cache
import numpy as np
import sympy

X = sympy.Symbol('x')

@lru_cache(None)
def phi_poly(N):
    return [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(N, X), X).all_coeffs())]

class Cyc:
    __slots__ = ('N', 'c')
    def __init__(self, N, coeffs):
        self.N = N
        p = phi_poly(N); d = len(p) - 1
        c = [F(x) for x in coeffs]
        for k in range(len(c) - 1, d - 1, -1):
            a = c[k]
            if a:
                for t in range(d + 1):
                    c[k - d + t] -= a * p[t]
        c = (c + [F(0)] * d)[:d]
        self.c = tuple(c)
    @staticmethod
    def rat(N, q): return Cyc(N, [q])
    @staticmethod
    def zeta(N, k):
        v = [0] * N; v[k % N] = 1; return Cyc(N, v)
    def __add__(self, o): return Cyc(self.N, [a + b for a, b in zip(self.c, o.c)])
    def __sub__(self, o): return Cyc(self.N, [a - b for a, b in zip(self.c, o.c)])
    def __neg__(self): return Cyc(self.N, [-a for a in self.c])
    def __mul__(self, o):
        if not isinstance(o, Cyc): return Cyc(self.N, [a * o for a in self.c])
        r = [F(0)] * (2 * len(self.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b: r[i + j] += a * b
        return Cyc(self.N, r)
    def galois(self, r):
        v = [F(0)] * self.N
        for k, a in enumerate(self.c): v[(k * r) % self.N] += a
        return Cyc(self.N, v)
    def conj(self): return self.galois(-1)
    def __eq__(self, o): return self.c == o.c
    def __hash__(self): return hash(self.c)
    def is_rational(self): return all(a == 0 for a in self.c[1:])
    def num(self): return sum(complex(float(a)) * np.exp(2j * np.pi * k / self.N) for k, a in enumerate(self.c))
    def to_json(self): return [[k, str(a)] for k, a in enumerate(self.c) if a]

def quat_mul(p, q):
    a1, b1, c1, d1 = p; a2, b2, c2, d2 = q
    return (a1*a2 - b1*b2 - c1*c2 - d1*d2,
            a1*b2 + b1*a2 + c1*d2 - d1*c2,
            a1*c2 - b1*d2 + c1*a2 + d1*b2,
            a1*d2 + b1*c2 - c1*b2 + d1*a2)

def nq_mul(p, q): return np.array(quat_mul(p, q))
def n_inv(v): return np.array([v[0], -v[1], -v[2], -v[3]])
def nkey(v): return tuple(int(round(x * 1e6)) for x in v)
ONE = np.array([1.0, 0, 0, 0])

def closure(gens):
    ng = [np.array([x.num().real for x in g]) for g in gens]
    elems = [(ONE, [])]
    index = {nkey(ONE): 0}
    i = 0
    while i < len(elems):
        for t, g in enumerate(ng):
            h = nq_mul(elems[i][0], g)
            k = nkey(h)
            if k not in index:
                index[k] = len(elems); elems.append((h, elems[i][1] + [t]))
        i += 1
    return elems, index

def build(name, N, gens, seeds_fn, galois_r=None):
    z, o = Cyc.rat(N, 0), Cyc.rat(N, 1)
    one = (o, z, z, z)
    G, index = closure(gens)
    order = len(G)
    cls_of = {}; classes = []
    for gi, (g, word) in enumerate(G):
        if gi in cls_of: continue
        cl = {index[nkey(nq_mul(nq_mul(h, g), n_inv(h)))] for h, _ in G}
        for x in cl: cls_of[x] = len(classes)
        repi = min(cl)
        rep = one
        for t in G[repi][1]: rep = quat_mul(rep, gens[t])
        k, p = 1, G[repi][0]
        while nkey(p) != nkey(ONE): p = nq_mul(p, G[repi][0]); k += 1
        classes.append({'rep': rep, 'num': G[repi][0], 'size': len(cl), 'order': k})
    nc = len(classes)
    def ip(a, b):
        s = z
        for c, cl in enumerate(classes): s = s + a[c] * b[c].conj() * cl['size']
        s = s * F(1, order)
        assert s.is_rational(), "inner product not rational"
        return s.c[0]
    sigma = [cl['rep'][0] * 2 for cl in classes]
    irreps = [[o] * nc]
    pool = [sigma] + seeds_fn(classes, N)
    total = lambda: sum(int(ch[0].c[0]) ** 2 for ch in irreps)
    rounds = 0
    while total() < order:
        rounds += 1
        if rounds > 6: raise SystemExit("peeling stuck for " + name)
        for cand in pool:
            r = list(cand)
            for ch in irreps:
                m = ip(cand, ch)
                if m: r = [x - y * m for x, y in zip(r, ch)]
            if any(not (x == z) for x in r) and ip(r, r) == 1 and r[0].c[0] > 0 and r not in irreps:
                irreps.append(r)
        pool = [[x * y for x, y in zip(a, b)] for i, a in enumerate(irreps) for b in irreps[i:]]
        if galois_r: pool += [[x.galois(galois_r) for x in a] for a in irreps]
    assert total() == order, (name, total(), order)
    for a in irreps:
        for b in irreps:
            assert ip(a, b) == (1 if a is b else 0)
    irreps.sort(key=lambda ch: ch[0].c[0])
    return {
        'order': order, 'conductor': N,
        'generators': [[x.to_json() for x in g] for g in gens],
        'classes': [{'rep': [x.to_json() for x in cl['rep']], 'size': cl['size'], 'order': cl['order']} for cl in classes],
        'characters': [{'degree': int(ch[0].c[0]), 'values': [x.to_json() for x in ch]} for ch in irreps],
    }

def q(N, *xs): return tuple(x if isinstance(x, Cyc) else Cyc.rat(N, x) for x in xs)

def in_q8(v): return sorted(np.round(np.abs(v), 6)) == [0, 0, 0, 1]

def seeds_2T(classes, N):
    # linear characters through 2T/Q8 = Z3; g = (1+i+j+k)/2 maps to a generator
    ginv = np.array([0.5, -0.5, -0.5, -0.5])
    def coset(v):
        for k in range(3):
            if in_q8(v): return k
            v = nq_mul(v, ginv)
        raise AssertionError
    return [[Cyc.zeta(N, (N // 3) * coset(cl['num']) * t) for cl in classes] for t in (1, 2)]

def seeds_2O(classes, N):
    # sign character through 2O/2T
    def in_2T(v):
        return in_q8(v) or sorted(np.round(np.abs(v), 6)) == [0.5, 0.5, 0.5, 0.5]
    return [[Cyc.rat(N, 1 if in_2T(cl['num']) else -1) for cl in classes]]

def main():
    h = F(1, 2)
    groups = {}
    N = 12
    groups['2T'] = build('2T', N, [q(N, 0, 1, 0, 0), q(N, 0, 0, 1, 0), q(N, h, h, h, h)], seeds_2T)
    N = 24
    s = (Cyc.zeta(N, 3) + Cyc.zeta(N, 21)) * h  # sqrt(2)/2
    groups['2O'] = build('2O', N, [q(N, 0, 1, 0, 0), q(N, 0, 0, 1, 0), q(N, h, h, h, h), q(N, s, s, 0, 0)], seeds_2O)
    N = 60
    phi = Cyc.rat(N, 1) + Cyc.zeta(N, 12) + Cyc.zeta(N, 48)
    phinv = phi - Cyc.rat(N, 1)
    groups['2I'] = build('2I', N, [q(N, h, h, h, h), q(N, phi * h, phinv * h, h, 0)], lambda *a: [], galois_r=7)
    body = json.dumps(groups, sort_keys=True, separators=(',', ':'))
    hsh = 14695981039346656037
    for ch in body.encode():
        hsh ^= ch; hsh = (hsh * 1099511628211) % (1 << 64)
    doc = {'format': 'langdual-binary-polyhedral-characters', 'version': 1,
           'checksum': format(hsh, 'x'), 'groups': groups}
    with open(sys.argv[1], 'w') as f:
        json.dump(doc, f, sort_keys=True, indent=1)
        f.write('\n')
    for k, v in groups.items():
        print(k, v['order'], len(v['classes']), [c['degree'] for c in v['characters']])

main()

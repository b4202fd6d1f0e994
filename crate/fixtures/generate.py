#!/usr/bin/env python3
"""Regenerate the shipped skvfix/1 fixtures.

Abelian fixtures are subfields of Q(zeta_f) cut out by a subgroup H of (Z/f)^x;
their local data is read off the Artin map a -> sigma_a. The S3 fixture is the
splitting field of x^3 - 4x + 1 with hand-entered local data.
"""
import json
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def units(f):
    return [a for a in range(1, f + 1) if math.gcd(a, f) == 1 and (a < f or f == 1)] or [0]


def legendre(a, p):
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


class Abelian:
    def __init__(self, f, kernel):
        self.f = f
        us = [a % f for a in units(f)] if f > 1 else [0]
        ker = sorted({k % f for k in kernel} | {1 % f})
        cosets = []
        seen = set()
        for a in sorted(us, key=lambda x: (x != 1 % f, x)):
            if a in seen:
                continue
            c = sorted({(a * k) % f for k in ker})
            seen.update(c)
            cosets.append(c)
        self.cosets = cosets
        self.index = {a: i for i, c in enumerate(cosets) for a in c}
        self.labels = ["1"] + ["s%d" % c[0] for c in cosets[1:]]
        n = len(cosets)
        self.table = [[self.index[(cosets[i][0] * cosets[j][0]) % f if f > 1 else 0] for j in range(n)] for i in range(n)]

    def elem(self, a):
        return self.index[a % self.f if self.f > 1 else 0]

    def label(self, a):
        return self.labels[self.elem(a)]

    def place(self, q):
        f = self.f
        qk = 1
        while f % (qk * q) == 0:
            qk *= q
        rest = f // qk
        if qk == 1:
            inertia = ["1"]
            frob = self.label(q)
        else:
            inertia = sorted({self.label(a) for a in units(f) if a % rest == 1 % rest}, key=self.labels.index)
            a0 = next(a for a in range(f) if a % rest == q % rest and a % qk == 1 % qk)
            frob = self.label(a0)
        isize = len(inertia)
        return {
            "label": str(q),
            "residueChar": q,
            "residueNorm": q,
            "decomposition": [frob] + [x for x in inertia if x != "1"],
            "inertia": inertia,
            "frobenius": frob,
            "ramified": isize > 1,
            "wild": isize % q == 0,
        }

    def infinite(self):
        j = self.label(-1)
        complex_ = j != "1"
        return {"label": "inf", "infinite": True, "decomposition": [j], "inertia": [j], "complexAtL": complex_}

    def mu(self):
        # w_1 = largest m with mu_m in L
        f = self.f
        w = 1
        for p in range(2, 2 * max(f, 2) + 2):
            if any(p % d == 0 for d in range(2, p)):
                continue
            pk = p
            while True:
                big = pk * f // math.gcd(pk, f)
                ok = all(pow(a, 1, pk) == 1 % pk for a in range(1, big + 1)
                         if math.gcd(a, big) == 1 and self.label(a) == "1")
                if not ok:
                    break
                w *= p
                pk *= p
        action = {}
        if w > 2:
            for a in units(f):
                lab = self.label(a)
                if lab != "1":
                    big = w * f // math.gcd(w, f)
                    lift = next(b for b in range(1, big + 1) if math.gcd(b, big) == 1 and self.label(b) == lab)
                    action[lab] = lift % w
        return {"order": w, "action": action}

    def group(self, name):
        return {"name": name, "table": self.table, "labels": self.labels}

    def artin(self):
        return {"conductor": self.f, "artin": {str(a): self.label(a) for a in units(self.f) if self.f > 1}}


def abelian_fixture(name, description, f, kernel, primes, pool, sets, class_groups=(), h_candidates=(), zeta_p=()):
    A = Abelian(f, kernel)
    places = [A.infinite()] + [A.place(q) for q in primes]
    j = A.label(-1)
    out = {
        "schema": "skvfix/1",
        "name": name,
        "description": description,
        "group": A.group(name),
    }
    if j != "1":
        out["complexConjugation"] = j
    out.update({
        "places": places,
        "tPool": [str(q) for q in pool],
        "muL": A.mu(),
        "cyclotomic": A.artin(),
        "twistedRootsOfUnity": [{"twist": 2}, {"twist": 3}],
        "classGroups": [cg(A) for cg in class_groups],
        "hCandidates": list(h_candidates),
        "zetaPCondition": list(zeta_p),
        "sets": sets,
        "provenance": "local data read off the Artin map a -> sigma_a of Q(zeta_%d)" % f,
    })
    return out


def write(fix):
    path = os.path.join(HERE, fix["name"] + ".json")
    with open(path, "w") as fh:
        json.dump(fix, fh, indent=1, ensure_ascii=False)
        fh.write("\n")


def sets(*rows):
    out = []
    for s, t, r in rows:
        out.append({"S": s, "T": t, "r": r})
    return out


def zeta23_class_group(A):
    action = {lab: [[legendre(A.cosets[i][0], 23) % 3]] for i, lab in enumerate(A.labels) if i > 0}
    return {
        "setT": [],
        "prime": 3,
        "module": {"factors": [3], "action": action},
        "provenance": "Cl(Q(zeta_23)) = Z/3 (Kummer), the image of Cl(Q(sqrt -23)); sigma_a acts by the Legendre symbol (a/23)",
    }


def class_number_one(why):
    def build(A):
        return {"setT": [], "module": {"factors": [], "action": {}}, "provenance": "class number 1: " + why}
    return build


def sqrt_m5_class_group(A):
    return {
        "setT": [],
        "prime": 2,
        "module": {"factors": [2], "action": {A.label(-1): [[1]]}},
        "provenance": "Cl(Q(sqrt -5)) = Z/2 generated by (2, 1 + sqrt -5); the Galois action on Z/2 is trivial",
    }


def main():
    write(abelian_fixture(
        "q", "the base field Q (trivial group)", 1, [1], [2, 3, 5], [3, 5],
        sets((["inf"], ["3"], 0), (["inf", "2"], ["3"], -1), (["inf"], [], -1), (["inf", "3"], ["5"], -2),
             (["inf", "2"], ["5"], -1)),
        class_groups=[class_number_one("Z is a principal ideal domain")],
    ))
    write(abelian_fixture(
        "q_i", "Q(i), conductor 4", 4, [1], [2, 3, 5, 13], [3, 5, 13],
        sets((["inf", "2"], ["3"], 0), (["inf", "2"], ["5"], 0), (["inf", "2"], [], -1),
             (["inf", "2", "3"], ["5"], -1), (["inf", "2"], ["3"], -2)),
        class_groups=[class_number_one("Minkowski bound of Q(i) is below 2")],
    ))
    write(abelian_fixture(
        "q_zeta3", "Q(zeta_3), conductor 3", 3, [1], [2, 3, 5, 7], [2, 5, 7],
        sets((["inf", "3"], ["2"], 0), (["inf", "3"], ["5", "7"], 0), (["inf", "3"], ["2"], -1), (["inf", "3"], ["5"], -1)),
        class_groups=[class_number_one("Minkowski bound of Q(zeta_3) is below 2")], zeta_p=[3],
    ))
    write(abelian_fixture(
        "q_sqrt_m5", "Q(sqrt -5), conductor 20", 20, [1, 3, 7, 9], [2, 3, 5, 7, 11], [3, 7, 11],
        sets((["inf", "2", "5"], ["3"], 0), (["inf", "2", "5"], ["11"], 0), (["inf", "2", "5"], ["3"], -1),
             (["inf", "2", "5"], ["7"], -1)),
        class_groups=[sqrt_m5_class_group],
    ))
    write(abelian_fixture(
        "q_zeta7", "Q(zeta_7), conductor 7", 7, [1], [2, 3, 5, 7, 29], [2, 3, 5, 29],
        sets((["inf", "7"], ["2"], 0), (["inf", "7"], ["29"], 0), (["inf", "7"], ["3"], -1), (["inf", "7", "2"], ["3"], -2),
             (["inf", "7"], ["5"], -1)),
        class_groups=[class_number_one("Minkowski bound of Q(zeta_7) is about 4.13 and every prime ideal has norm at least 8")],
        zeta_p=[7],
    ))
    write(abelian_fixture(
        "q_sqrt5", "Q(sqrt 5), totally real, conductor 5", 5, [1, 4], [2, 3, 5, 7, 11], [2, 3, 7, 11],
        sets((["inf", "5"], ["3"], 0), (["inf", "5"], ["3"], -1), (["inf", "5", "11"], ["2"], -1),
             (["inf", "5"], ["7"], -1)),
        class_groups=[class_number_one("Minkowski bound of Q(sqrt 5) is below 2")],
    ))
    write(abelian_fixture(
        "q_zeta23", "Q(zeta_23), class number 3", 23, [1], [2, 23, 47], [47, 2],
        sets((["inf", "23"], ["47"], 0), (["inf", "23"], ["2", "47"], 0), (["inf", "23"], ["47"], -1)),
        class_groups=[zeta23_class_group], zeta_p=[23],
    ))
    write(s3_fixture())


def s3_fixture():
    # S3 = <s, t> with s = (0 1 2), t = (1 2); product a*b applies b first
    perms = {"1": (0, 1, 2), "s": (1, 2, 0), "s2": (2, 0, 1), "t": (0, 2, 1)}
    perms["ts"] = tuple(perms["t"][perms["s"][i]] for i in range(3))
    perms["ts2"] = tuple(perms["t"][perms["s2"][i]] for i in range(3))
    labels = ["1", "s", "s2", "t", "ts", "ts2"]
    inv = {v: k for k, v in perms.items()}
    table = [[labels.index(inv[tuple(perms[a][perms[b][i]] for i in range(3))]) for b in labels] for a in labels]

    def place(q, dec, inertia, frob):
        return {
            "label": str(q), "residueChar": q, "residueNorm": q, "decomposition": dec, "inertia": inertia,
            "frobenius": frob, "ramified": inertia != ["1"], "wild": len(inertia) % q == 0,
        }

    # x^3 - 4x + 1 mod q: irreducible -> 3-cycle, one root -> transposition, three roots -> 1
    places = [
        {"label": "inf", "infinite": True, "decomposition": ["1"], "inertia": ["1"], "complexAtL": False},
        place(229, ["t"], ["1", "t"], "1"),
        place(2, ["t"], ["1"], "t"),
        place(3, ["s"], ["1"], "s"),
        place(5, ["s"], ["1"], "s"),
        place(7, ["t"], ["1"], "t"),
    ]
    # 6 is a primitive root mod 229 and a quadratic non-residue
    g229 = next(g for g in range(2, 229) if all(pow(g, 228 // p, 229) != 1 for p in (2, 3, 19)))
    assert legendre(g229, 229) == -1
    return {
        "schema": "skvfix/1",
        "name": "s3_229",
        "description": "splitting field of x^3 - 4x + 1 over Q: totally real S3 extension, the Hilbert class field of Q(sqrt 229)",
        "group": {"name": "S3", "table": table, "labels": labels},
        "places": places,
        "tPool": ["3", "5", "2", "7"],
        "muL": {"order": 2, "action": {}},
        "twistedRootsOfUnity": [{
            "twist": 2, "order": 24, "action": {},
            "provenance": "L meets Q^ab in Q(sqrt 229), whose w_2 is 24 with trivial action (cyclotomic search)",
        }, {
            "twist": 3, "order": 2, "action": {},
            "provenance": "w_3 of Q(sqrt 229) is 2: no odd p has p - 1 | 3 and the squares mod 4 * 229 include 3 mod 4",
        }],
        "sources": [
            {
                "schema": "skvtheta/1",
                "subgroup": ["s", "t"],
                "kind": "cyclotomic",
                "conductor": 229,
                "artin": {str(g229): "t"},
                "provenance": "Q(sqrt 229) inside Q(zeta_229); sigma_a restricts to t exactly when (a/229) = -1",
            },
            {
                "schema": "skvtheta/1",
                "subgroup": ["s"],
                "kind": "table",
                "values": [
                    {"r": r, "character": {"s": k}, "order": 3, "S": ["inf#0", "inf#1"], "T": [], "value": v}
                    for r, v in ((0, "0"), (-1, "8"), (-2, "0")) for k in (1, 2)
                ],
                "provenance": "L/Q(sqrt 229) unramified cubic; L(-1, psi) = 8 from fixtures/tools/s3_229_lvalue.py "
                              "(Euler product and functional equation, 11 digits); r = 0, -2 vanish at the two real places",
            },
        ],
        "sets": sets((["inf", "229"], ["5"], -1), (["inf", "229"], ["3", "5"], -1), (["inf", "229", "2"], ["5"], -1),
                     (["inf", "229"], ["3"], 0), (["inf", "229"], ["5"], -2)),
        "provenance": "discriminant 229; Frobenius classes from the factorization of x^3 - 4x + 1 modulo q",
    }


if __name__ == "__main__":
    main()

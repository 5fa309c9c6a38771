"""Scratch validation of the aut-engine against brute force (not shipped)."""

import itertools
import random
import time

from rosewindow import Graph, automorphism_group, canonical_form, are_isomorphic


def brute_force_aut_count(g):
    n = g.n
    adj = g.adj
    count = 0

    def extend(images, used):
        nonlocal count
        k = len(images)
        if k == n:
            count += 1
            return
        for w in range(n):
            if used >> w & 1:
                continue
            ok = True
            for j in range(k):
                if (adj[j] >> k & 1) != (adj[images[j]] >> w & 1):
                    ok = False
                    break
            if ok:
                images.append(w)
                extend(images, used | (1 << w))
                images.pop()

    extend([], 0)
    return count


def all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bitsel in range(1 << len(pairs)):
        yield Graph(n, [pairs[i] for i in range(len(pairs)) if bitsel >> i & 1])


def main():
    rng = random.Random(12345)

    t0 = time.time()
    # exhaustive on <= 5 vertices
    checked = 0
    for n in range(6):
        for g in all_graphs(n):
            expect = brute_force_aut_count(g)
            got = automorphism_group(g).order
            assert got == expect, (n, g.edges, expect, got)
            checked += 1
    print(f"exhaustive n<=5: {checked} graphs OK in {time.time()-t0:.1f}s")

    t0 = time.time()
    for trial in range(300):
        n = rng.randint(1, 8)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < rng.random()]
        g = Graph(n, edges)
        expect = brute_force_aut_count(g)
        got = automorphism_group(g).order
        assert got == expect, (n, g.edges, expect, got)
    print(f"random n<=8: 300 graphs OK in {time.time()-t0:.1f}s")

    # known orders
    for n in range(3, 12):
        cyc = Graph(n, [(i, (i + 1) % n) for i in range(n)])
        assert automorphism_group(cyc).order == 2 * n, n
    for n in range(1, 8):
        kn = Graph(n, itertools.combinations(range(n), 2))
        import math
        assert automorphism_group(kn).order == math.factorial(n), n
    petersen_edges = [(i, (i + 1) % 5) for i in range(5)]
    petersen_edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    petersen_edges += [(i, 5 + i) for i in range(5)]
    pet = Graph(10, petersen_edges)
    bf = brute_force_aut_count(pet)
    eng = automorphism_group(pet).order
    print("petersen brute force:", bf, "engine:", eng)
    assert bf == eng == 120

    # canonical form invariance under random relabelings
    t0 = time.time()
    for trial in range(60):
        n = rng.randint(1, 9)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4]
        g = Graph(n, edges)
        cf = canonical_form(g)
        perm = list(range(n))
        rng.shuffle(perm)
        g2 = g.relabel(perm)
        assert canonical_form(g2) == cf, (g.edges, perm)
        m = are_isomorphic(g, g2)
        assert m is not None
    print(f"canonical invariance: 60 trials OK in {time.time()-t0:.1f}s")

    # non-isomorphic pairs must differ
    k3 = Graph(3, [(0, 1), (1, 2), (0, 2)])
    p3 = Graph(3, [(0, 1), (1, 2)])
    assert canonical_form(k3) != canonical_form(p3)
    assert are_isomorphic(k3, p3) is None
    print("all engine smoke checks passed")


if __name__ == "__main__":
    main()

"""Independent oracle run for the golden values frozen in tests/.

Uses mpmath (50 digits) and sympy.factorint only; nothing from p1seq is
imported, so the numbers printed here can check the library rather than
echo it.

    python scripts/derive_oracles.py
"""

import heapq

import mpmath as mp
from sympy import factorint

mp.mp.dps = 50


def d(n, k):
    return mp.log(mp.log(n)) / mp.log(k)


def smooth_stream(primes, count):
    """First `count` S-smooth numbers >= 2, by brute heap with a seen-set."""
    heap, seen, out = [1], {1}, []
    while len(out) < count:
        v = heapq.heappop(heap)
        if v >= 2:
            out.append(v)
        for p in primes:
            if v * p not in seen:
                seen.add(v * p)
                heapq.heappush(heap, v * p)
    return out


def main():
    ln2, ln3, ln5 = mp.log(2), mp.log(3), mp.log(5)
    a = (1 + (ln2 + ln3 + ln5) / ln2) ** 3 / (6 * ln2 * ln3 * ln5)
    print("poly_bound_constant((ln2,ln3,ln5), ln2) =", mp.nstr(a, 20))

    print("d_10 identity       =", mp.nstr(d(10, 10), 20))
    print("d_4 for 2^k         =", mp.nstr(d(16, 4), 20))
    print("d_16 identity       =", mp.nstr(d(16, 16), 20))
    print("d_1e6 identity      =", mp.nstr(d(10**6, 10**6), 20))

    # n^2+1, 1e4 terms: running infimum at the end, and the worst d_k for k >= 100
    vals = [d(k * k + 1, k) for k in range(2, 10**4 + 1)]
    print("n^2+1 inf_{k<=1e4} d_k =", mp.nstr(min(vals), 20))
    print("n^2+1 max_{100<=k<=1e4} d_k =", mp.nstr(max(vals[98:]), 20))
    k = 2
    while True:
        if d(k * k + 1, k) < mp.mpf("0.3"):
            break
        k += 1
    print("n^2+1 first k with d_k < 0.3 =", k)

    # {2,3,5}-smooth, 1e4 terms: least K0 with min_{j>=K0} d_j >= 1/4
    sm = smooth_stream([2, 3, 5], 10**4)
    ds = [None, None] + [d(sm[j - 1], j) for j in range(2, 10**4 + 1)]
    tail = mp.inf
    K0 = None
    for j in range(10**4, 1, -1):
        tail = min(tail, ds[j])
        if tail >= mp.mpf(1) / 4:
            K0 = j
        else:
            break
    print("{2,3,5} K0 =", K0, " tail min from K0 =", mp.nstr(min(ds[K0:]), 20))
    print("{2,3,5} n_1e4 =", sm[-1])

    for K in (100, 200, 2000):
        primes = set()
        for n in range(1, K + 1):
            primes |= set(factorint(n * n + 1))
        print(f"census n^2+1 K={K}: {len(primes)} distinct primes")


if __name__ == "__main__":
    main()

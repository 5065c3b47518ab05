#!/usr/bin/env python3
"""Regenerate include/wildmck/moduli_table.hpp.

For every prime power q = p^e with e >= 2 and q <= 2^20 this picks the first
monic primitive polynomial of degree e over F_p, enumerating the low
coefficients (c_0, ..., c_{e-1}) as the base-p digits of 0, 1, 2, ...
"""
import sys

LIMIT = 1 << 20


def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def mulmod(a, b, f, p):
    e = len(f) - 1
    res = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    for k in range(len(res) - 1, e - 1, -1):
        c = res[k]
        if c:
            for i in range(e + 1):
                res[k - e + i] = (res[k - e + i] - c * f[i]) % p
    return res[:e]


def powmod_x(n, f, p):
    e = len(f) - 1
    result = [1] + [0] * (e - 1)
    base = [0, 1] + [0] * (e - 2) if e > 1 else [(-f[0]) % p]
    while n:
        if n & 1:
            result = mulmod(result, base, f, p)
        base = mulmod(base, base, f, p)
        n >>= 1
    return result


def is_primitive(f, p):
    e = len(f) - 1
    q = p ** e
    one = [1] + [0] * (e - 1)
    if f[0] == 0 or powmod_x(q - 1, f, p) != one:
        return False
    return all(powmod_x((q - 1) // r, f, p) != one for r in prime_factors(q - 1))


def first_primitive(p, e):
    for idx in range(p ** e):
        low = [(idx // p ** i) % p for i in range(e)]
        f = low + [1]
        if is_primitive(f, p):
            return f
    raise RuntimeError(f"no primitive polynomial for {p}^{e}")


def main():
    rows = []
    for p in primes_upto(1024):
        e = 2
        while p ** e <= LIMIT:
            rows.append((p, e, first_primitive(p, e)))
            e += 1
    out = sys.stdout
    out.write("// Generated by tools/gen_moduli.py; do not edit.\n")
    out.write("#pragma once\n\n#include <array>\n#include <cstdint>\n\n")
    out.write("namespace wildmck::detail {\n\n")
    out.write("struct ModulusEntry {\n  std::uint32_t p;\n  std::uint32_t e;\n")
    out.write("  std::array<std::uint32_t, 20> low;  // c_0 .. c_{e-1} of x^e + ...\n};\n\n")
    out.write(f"inline constexpr std::array<ModulusEntry, {len(rows)}> kModuli{{{{\n")
    for p, e, f in rows:
        low = ", ".join(str(c) for c in f[:-1])
        out.write(f"    {{{p}, {e}, {{{low}}}}},\n")
    out.write("}};\n\n}  // namespace wildmck::detail\n")


if __name__ == "__main__":
    main()

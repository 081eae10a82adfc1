#!/usr/bin/env python3
"""Brute-force oracle for the toy-group known-answer vectors.

Recomputes every hand-checkable value used in the test suite for the
toy group (p=23, q=11, g=4) using only naive repeated multiplication
and exhaustive search -- no pow(), no modular tricks, and no imports
from the package under test. Run it to regenerate the table; the
frozen constants in tests/support.py must match this output exactly.

The deterministic stand-in hash used by the known-answer tests is
    H_zq(parts)  = sum of parts mod q      (ints as-is, bytes big-endian)
    H_raw(m)     = minimal big-endian bytes of m
    H_zp*(parts) = 7                       (fixed constant)
which keeps every derived quantity hand-computable.
"""

P, Q, G = 23, 11, 4


def mul(a, b, m):
    return (a * b) % m


def npow(base, exp, m):
    """exp-fold repeated multiplication; exponent reduced only by looping."""
    acc = 1
    for _ in range(exp):
        acc = mul(acc, base % m, m)
    return acc


def ninv(a, m):
    """Exhaustive-search inverse in Z_m."""
    for x in range(1, m):
        if mul(a % m, x, m) == 1:
            return x
    raise ValueError(f"{a} not invertible mod {m}")


def stub_zq(*parts):
    return sum(parts) % Q


def check(name, got, want):
    status = "ok" if got == want else "MISMATCH"
    print(f"  {name:28s} = {got!r:10} expect {want!r:10} [{status}]")
    assert got == want, name


def main():
    print(f"toy group: p={P} q={Q} g={G}")
    assert (P - 1) % Q == 0
    assert npow(G, Q, P) == 1 and G != 1

    print("numeric vectors")
    check("4^11 mod 23", npow(4, 11, 23), 1)
    check("12^7 mod 23", npow(12, 7, 23), 16)
    check("inv(5, 11)", ninv(5, 11), 9)
    check("inv(7, 11)", ninv(7, 11), 8)
    check("inv(7, 23)", ninv(7, 23), 10)

    print("keypairs (x_A=3, x_B=5)")
    x_a, x_b = 3, 5
    y_a = npow(G, x_a, P)
    y_b = npow(G, x_b, P)
    check("y_A = 4^3 mod 23", y_a, 18)
    check("y_B = 4^5 mod 23", y_b, 12)

    print("Ma-Chen honest run (k=7, m=13, H(v) stubbed to 7)")
    k, m = 7, 13
    h_v = 7
    v = npow(mul(G, y_b, P), k, P)
    e = v % Q
    c = mul(m, ninv(h_v, P), P)
    r = stub_zq(e, m)
    s = (k - x_a * r) % Q
    check("v = (g*y_B)^7", v, 13)
    check("e = v mod q", e, 2)
    check("r = (e + m) mod q", r, 4)
    check("s = (k - x_A*r) mod q", s, 6)
    check("c = m * inv(H(v))", c, 15)

    # receiver recomputation
    v2 = mul(npow(mul(G, y_b, P), s, P), npow(y_a, r * (x_b + 1), P), P)
    check("v' from (r, s)", v2, 13)
    m2 = mul(c, h_v, P)
    check("m' = c * H(v')", m2, 13)
    check("r' check", stub_zq(v2 % Q, m2), r)

    print("proof and arbiter check")
    k1_star = mul(npow(y_b, s, P), npow(y_a, r * x_b, P), P)
    k1 = k1_star % Q
    check("K1* (unreduced)", k1_star, 16)
    check("K1 = K1* mod q", k1, 5)
    e_ttp = mul(mul(npow(G, s, P), npow(y_a, r, P), P), k1, P) % Q
    check("e' with reduced K1", e_ttp, 6)
    assert e_ttp != e, "arbiter equation must NOT match"
    e_diag = mul(mul(npow(G, s, P), npow(y_a, r, P), P), k1_star, P) % Q
    check("e' with unreduced K1*", e_diag, 2)
    assert e_diag == e, "unreduced diagnostic must match"

    print("static shared key leakage")
    y_ab = npow(G, x_a * x_b, P)
    check("y_AB = g^(x_A*x_B)", y_ab, 3)
    v3 = mul(mul(npow(mul(G, y_b, P), s, P), npow(y_ab, r, P), P),
             npow(y_a, r, P), P)
    check("v via y_AB route", v3, 13)
    r_inv = ninv(r, Q)
    check("inv(r, q)", r_inv, 3)
    rec = mul(mul(ninv(y_a, P), npow(v, r_inv, P), P),
              npow(mul(G, y_b, P), (-s * r_inv) % Q, P), P)
    check("recovered y_AB", rec, 3)

    print("rogue-key forgery (a=2, b=5, m=5, H(v) stubbed to 7)")
    a, b, fm = 2, 5, 5
    fv = mul(npow(G, a, P), npow(y_a, b, P), P)
    fe = fv % Q
    fr = stub_zq(fe, fm)
    fs = mul(mul(fr, a, Q), ninv(b, Q), Q)
    fx_b = (mul(b, ninv(fr, Q), Q) - 1) % Q
    fy_b = npow(G, fx_b, P)
    fc = mul(fm, ninv(7, P), P)
    check("v = g^a * y_A^b", fv, 2)
    check("e", fe, 2)
    check("r = (e + m) mod q", fr, 7)
    check("s = r*a*inv(b)", fs, 5)
    check("x_B = b*inv(r) - 1", fx_b, 6)
    check("y_B = g^x_B", fy_b, 2)
    check("c = m * inv(H(v))", fc, 4)
    # the forged triple passes the receiver equation under the rogue key
    fv2 = mul(npow(mul(G, fy_b, P), fs, P), npow(y_a, fr * (fx_b + 1), P), P)
    check("receiver v'", fv2, 2)
    check("receiver m'", mul(fc, 7, P), 5)
    check("receiver r' check", stub_zq(fv2 % Q, 5), fr)
    # derivation identities behind the construction
    check("(1+x_B)*s mod q", mul(1 + fx_b, fs, Q), a)
    check("r*(1+x_B) mod q", mul(fr, 1 + fx_b, Q), b)

    print("improved scheme honest run (k=7, m=0x07)")
    im = 0x07
    it1 = npow(G, k, P)
    it2 = npow(y_b, k, P)
    ir = stub_zq(im, it1)
    is_ = (k + ir * x_a) % Q
    check("t1 = g^7", it1, 8)
    check("t2 = y_B^7", it2, 16)
    check("r = (m + t1) mod q", ir, 4)
    check("s = (k + r*x_A) mod q", is_, 8)
    # receiver / public verifier recomputation
    it1v = mul(npow(G, is_, P), npow(ninv(y_a, P), ir, P), P)
    check("t1' = g^s * y_A^-r", it1v, 8)
    check("inv(y_A) factor", npow(ninv(y_a, P), ir, P), 6)
    check("g^s factor", npow(G, is_, P), 9)
    it2v = npow(it1v, x_b, P)
    check("t2' = t1'^x_B", it2v, 16)

    print("all toy vectors confirmed")


if __name__ == "__main__":
    main()

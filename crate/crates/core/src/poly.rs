//! Univariate polynomials over GF(2^m), coefficients low degree first.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use crate::field::{Fe, Field};

pub type Poly = Vec<Fe>;

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree, with the zero polynomial of degree -1.
pub fn deg(p: &[Fe]) -> isize {
    let mut d = p.len() as isize - 1;
    while d >= 0 && p[d as usize] == 0 {
        d -= 1;
    }
    d
}

pub fn is_one(p: &[Fe]) -> bool {
    deg(p) == 0 && p[0] == 1
}

pub fn x_poly() -> Poly {
    vec![0, 1]
}

pub fn add(a: &[Fe], b: &[Fe]) -> Poly {
    let mut r = vec![0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        r[i] ^= x;
    }
    for (i, &x) in b.iter().enumerate() {
        r[i] ^= x;
    }
    trim(&mut r);
    r
}

pub fn mul(f: &Field, a: &[Fe], b: &[Fe]) -> Poly {
    if deg(a) < 0 || deg(b) < 0 {
        return Vec::new();
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            f.axpy(&mut r[i..i + b.len()], b, x);
        }
    }
    trim(&mut r);
    r
}

pub fn monic(f: &Field, a: &[Fe]) -> Poly {
    let mut r = a.to_vec();
    trim(&mut r);
    if let Some(&lc) = r.last() {
        let c = f.inv(lc);
        f.scale(&mut r, c);
    }
    r
}

/// (quotient, remainder)
pub fn divrem(f: &Field, a: &[Fe], b: &[Fe]) -> (Poly, Poly) {
    let db = deg(b);
    assert!(db >= 0, "division by zero polynomial");
    let db = db as usize;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv_lc = f.inv(b[db]);
    let mut q = vec![0; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let c = f.mul(c, inv_lc);
        q[i - db] = c;
        f.axpy(&mut r[i - db..=i], &b[..=db], c);
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn rem(f: &Field, a: &[Fe], b: &[Fe]) -> Poly {
    divrem(f, a, b).1
}

/// Monic gcd.
pub fn gcd(f: &Field, a: &[Fe], b: &[Fe]) -> Poly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while deg(&b) >= 0 {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// (g, s, t) with s*a + t*b = g monic.
pub fn ext_gcd(f: &Field, a: &[Fe], b: &[Fe]) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![1 as Fe], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1 as Fe]);
    while deg(&r1) >= 0 {
        let (q, r) = divrem(f, &r0, &r1);
        let s = add(&s0, &mul(f, &q, &s1));
        let t = add(&t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if let Some(&lc) = r0.last() {
        let c = f.inv(lc);
        f.scale(&mut r0, c);
        f.scale(&mut s0, c);
        f.scale(&mut t0, c);
    }
    (r0, s0, t0)
}

pub fn mulmod(f: &Field, a: &[Fe], b: &[Fe], m: &[Fe]) -> Poly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &Field, a: &[Fe], mut e: u128, m: &[Fe]) -> Poly {
    let mut base = rem(f, a, m);
    let mut r = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(f, &r, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    r
}

pub fn derivative(p: &[Fe]) -> Poly {
    let mut r: Poly = p.iter().enumerate().skip(1).map(|(i, &c)| if i % 2 == 1 { c } else { 0 }).collect();
    trim(&mut r);
    r
}

pub fn eval(f: &Field, p: &[Fe], x: Fe) -> Fe {
    let mut acc = 0;
    for &c in p.iter().rev() {
        acc = f.mul(acc, x) ^ c;
    }
    acc
}

// p(x) = g(x)^2, all odd coefficients zero
fn sqrt_poly(f: &Field, p: &[Fe]) -> Poly {
    let mut r: Poly = p.iter().step_by(2).map(|&c| f.sqrt(c)).collect();
    trim(&mut r);
    r
}

/// Squarefree factorization of a monic polynomial: pairs (squarefree factor, multiplicity).
pub fn squarefree(f: &Field, p: &[Fe]) -> Vec<(Poly, usize)> {
    let p = monic(f, p);
    let mut out = Vec::new();
    if deg(&p) <= 0 {
        return out;
    }
    let d = derivative(&p);
    if deg(&d) < 0 {
        for (g, m) in squarefree(f, &sqrt_poly(f, &p)) {
            out.push((g, 2 * m));
        }
        return out;
    }
    let mut c = gcd(f, &p, &d);
    let mut w = divrem(f, &p, &c).0;
    let mut i = 1;
    while !is_one(&w) {
        let y = gcd(f, &w, &c);
        let fac = divrem(f, &w, &y).0;
        if deg(&fac) > 0 {
            out.push((monic(f, &fac), i));
        }
        i += 1;
        c = divrem(f, &c, &y).0;
        w = y;
    }
    if deg(&c) > 0 {
        for (g, m) in squarefree(f, &sqrt_poly(f, &c)) {
            out.push((g, 2 * m));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &Field, p: &[Fe]) -> Vec<(Poly, usize)> {
    let q = f.order() as u128;
    let mut out = Vec::new();
    let mut rest = monic(f, p);
    let mut h = rem(f, &x_poly(), &rest);
    let mut i = 1;
    while deg(&rest) >= 2 * i as isize {
        h = powmod(f, &h, q, &rest);
        let g = gcd(f, &rest, &add(&h, &x_poly()));
        if !is_one(&g) {
            out.push((g.clone(), i));
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
        }
        i += 1;
    }
    if deg(&rest) > 0 {
        let d = deg(&rest) as usize;
        out.push((rest, d));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d` (Cantor-Zassenhaus, trace map).
pub fn equal_degree<R: Rng>(f: &Field, p: &[Fe], d: usize, rng: &mut R) -> Vec<Poly> {
    let n = deg(p) as usize;
    if n == d {
        return vec![monic(f, p)];
    }
    let k = f.degree() as usize * d;
    loop {
        let h: Poly = (0..n).map(|_| rng.gen_range(0..f.order()) as Fe).collect();
        let mut t = rem(f, &h, p);
        let mut acc = t.clone();
        for _ in 1..k {
            t = mulmod(f, &t, &t, p);
            acc = add(&acc, &t);
        }
        let g = gcd(f, p, &acc);
        let dg = deg(&g);
        if dg > 0 && (dg as usize) < n {
            let other = divrem(f, p, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &other, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
pub fn factor<R: Rng>(f: &Field, p: &[Fe], rng: &mut R) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (sf, mult) in squarefree(f, p) {
        for (g, d) in distinct_degree(f, &sf) {
            for irr in equal_degree(f, &g, d, rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.iter().rev().cmp(b.0.iter().rev())));
    out
}

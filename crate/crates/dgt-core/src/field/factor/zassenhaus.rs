//! Factorization of squarefree primitive integer polynomials:
//! Cantor–Zassenhaus modulo a small prime, linear Hensel lifting and
//! recombination of lifted factors by trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type ZPoly = Vec<BigInt>;
type MPoly = Vec<u64>;

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421,
    431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541, 547,
    557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653, 659,
    661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787, 797,
    809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919, 929,
    937, 941, 947, 953, 967, 971, 977, 983, 991, 997, 1009, 1013, 1019, 1021, 1031, 1033, 1039,
    1049, 1051, 1061, 1063, 1069, 1087, 1091, 1093, 1097, 1103, 1109, 1117, 1123, 1129, 1151,
];

fn ztrim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn mtrim(mut v: MPoly) -> MPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    ztrim(v)
}

/// Division by a monic integer polynomial; `None` unless exact.
fn zdiv_monic_exact(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    let dd = d.len() - 1;
    if a.len() <= dd {
        return if a.iter().all(|c| c.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            r[k + j] -= &c * dc;
        }
        q[k] = c;
    }
    if r[..dd].iter().all(|c| c.is_zero()) {
        Some(ztrim(q))
    } else {
        None
    }
}

fn mod_u(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn to_modp(a: &[BigInt], p: u64) -> MPoly {
    mtrim(a.iter().map(|c| mod_u(c, p)).collect())
}

fn powmod_u(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_u(a: u64, p: u64) -> u64 {
    powmod_u(a, p - 2, p)
}

fn msub(a: &[u64], b: &[u64], p: u64) -> MPoly {
    let n = a.len().max(b.len());
    mtrim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn mmul(a: &[u64], b: &[u64], p: u64) -> MPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    mtrim(v)
}

fn mdivrem(a: &[u64], d: &[u64], p: u64) -> (MPoly, MPoly) {
    let dd = d.len() - 1;
    if a.len() <= dd {
        return (Vec::new(), a.to_vec());
    }
    let li = inv_u(d[dd], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] * li % p;
        if c == 0 {
            continue;
        }
        for (j, &dc) in d.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * dc % p) % p;
        }
        q[k] = c;
    }
    r.truncate(dd);
    (mtrim(q), mtrim(r))
}

fn mmonic(a: &[u64], p: u64) -> MPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = inv_u(l, p);
            a.iter().map(|&c| c * li % p).collect()
        }
    }
}

fn mgcd(a: &[u64], b: &[u64], p: u64) -> MPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = mdivrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    mmonic(&a, p)
}

/// (g, s, t) with s·a + t·b = g monic.
fn mext_gcd(a: &[u64], b: &[u64], p: u64) -> (MPoly, MPoly, MPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = mdivrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = msub(&s0, &mmul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = msub(&t0, &mmul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let li = inv_u(*r0.last().unwrap(), p);
    let sc = |v: &[u64]| -> MPoly { mtrim(v.iter().map(|&c| c * li % p).collect()) };
    (sc(&r0), sc(&s0), sc(&t0))
}

fn mpowmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> MPoly {
    let mut acc: MPoly = vec![1];
    let b = mdivrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = mdivrem(&mmul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = mdivrem(&mmul(&acc, &b, p), m, p).1;
        }
    }
    acc
}

fn mderiv(a: &[u64], p: u64) -> MPoly {
    mtrim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &[u64], p: u64) -> Vec<(MPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: MPoly = vec![0, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            out.push((f.clone(), f.len() - 1));
            break;
        }
        h = mpowmod(&h, &pb, &f, p);
        let g = mgcd(&msub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            f = mdivrem(&f, &g, p).0;
            h = mdivrem(&h, &f, p).1;
        }
    }
    out
}

/// Equal-degree splitting of a product of irreducibles of degree `d`.
fn edf(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<MPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: MPoly = mtrim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let mut g = mgcd(&a, f, p);
        if g.len() == 1 {
            let b = msub(&mpowmod(&a, &e, f, p), &[1], p);
            g = mgcd(&b, f, p);
        }
        if g.len() > 1 && g.len() < f.len() {
            let h = mdivrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&h, d, p, rng));
            return out;
        }
    }
}

fn factor_modp(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<MPoly> {
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out
}

fn from_modp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts f ≡ g0·h0 (mod p), g0 and h0 monic and coprime, to precision p^k.
fn hensel2(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, _, t) = mext_gcd(g0, h0, p);
    let mut g = from_modp(g0);
    let mut h = from_modp(h0);
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = zmul(&g, &h);
        let n = f.len().max(gh.len());
        let e: ZPoly = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                (a - b) / &pj
            })
            .collect();
        let ep = to_modp(&e, p);
        if !ep.is_empty() {
            let dg = mdivrem(&mmul(&t, &ep, p), g0, p).1;
            let rest = msub(&ep, &mmul(&dg, h0, p), p);
            let dh = mdivrem(&rest, g0, p).0;
            for (i, c) in dg.iter().enumerate() {
                g[i] += &pj * BigInt::from(*c);
            }
            for (i, c) in dh.iter().enumerate() {
                h[i] += &pj * BigInt::from(*c);
            }
        }
        pj *= &pb;
    }
    (g, h)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn norm2_bound(f: &[BigInt]) -> BigInt {
    let s: BigInt = f.iter().map(|c| c * c).sum();
    s.sqrt() + 1
}

/// Irreducible factors of a monic squarefree integer polynomial of degree ≥ 2.
fn factor_monic(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut best: Option<(u64, Vec<MPoly>)> = None;
    let mut tried = 0;
    for &p in PRIMES {
        let fp = to_modp(f, p);
        let gp = mgcd(&fp, &mderiv(&fp, p), p);
        if gp.len() != 1 {
            continue;
        }
        let facs = factor_modp(&fp, p, &mut rng);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 3 {
            break;
        }
    }
    let (p, facs) = best.expect("no suitable prime found for factorization");
    let bound = norm2_bound(f) * (BigInt::one() << n) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    // sequential two-factor lifts
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut rest = f.to_vec();
    for i in 0..facs.len() - 1 {
        let h0 = facs[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, q| mmul(&acc, q, p));
        let (g, h) = hensel2(&rest, &facs[i], &h0, p, k);
        lifted.push(g.iter().map(|c| c.mod_floor(&m)).collect());
        rest = h.iter().map(|c| c.mod_floor(&m)).collect();
    }
    lifted.push(rest);
    recombine(f, lifted, &m)
}

fn recombine(f: &[BigInt], mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut cur = f.to_vec();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        for subset in Subsets::new(lifted.len(), s) {
            let prod = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| zmul(&acc, &lifted[i]));
            let g = symmetric(&prod, m);
            // constant-term filter before full division
            if !cur[0].is_zero() && (g[0].is_zero() || !(&cur[0] % &g[0]).is_zero()) {
                continue;
            }
            if let Some(q) = zdiv_monic_exact(&cur, &g) {
                out.push(g);
                cur = q;
                let keep: Vec<ZPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Irreducible factors over ℤ of a primitive squarefree polynomial with
/// positive leading coefficient; each factor primitive with positive
/// leading coefficient.
pub fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<ZPoly> {
    let f = ztrim(f.to_vec());
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    if f[0].is_zero() {
        // x divides f exactly once since f is squarefree
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_primitive(&f[1..]));
        return out;
    }
    let lc = f[n].clone();
    if lc.is_one() {
        return factor_monic(&f);
    }
    // F(y) = lc^(n-1) f(y/lc) is monic; map factors back with y = lc·x
    let monic: ZPoly = (0..=n)
        .map(|i| &f[i] * lc.pow((n - i) as u32) / &lc)
        .collect();
    factor_monic(&monic)
        .into_iter()
        .map(|g| {
            let back: ZPoly = g
                .iter()
                .enumerate()
                .map(|(i, c)| c * lc.pow(i as u32))
                .collect();
            primitive(&back)
        })
        .collect()
}

pub fn primitive(a: &[BigInt]) -> ZPoly {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return Vec::new();
    }
    let g = if a.last().is_some_and(|c| c.is_negative()) {
        -g
    } else {
        g
    };
    a.iter().map(|c| c / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn splits_mod_p_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x^2 + 1)(x + 3) mod 7
        let f = mmul(&[1, 0, 1], &[3, 1], 7);
        let mut fs = factor_modp(&f, 7, &mut rng);
        fs.sort();
        assert_eq!(fs, vec![vec![1, 0, 1], vec![3, 1]]);
        assert_eq!(mderiv(&[1, 2, 3], 7), vec![2, 6]);
    }

    #[test]
    fn factors_swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let f = zp(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree_primitive(&f).len(), 1);
    }

    #[test]
    fn non_monic_product() {
        // (2x + 1)(3x^2 - 2)
        let f = zmul(&zp(&[1, 2]), &zp(&[-2, 0, 3]));
        let mut fs = factor_squarefree_primitive(&f);
        fs.sort_by_key(|g| g.len());
        assert_eq!(fs, vec![zp(&[1, 2]), zp(&[-2, 0, 3])]);
    }
}

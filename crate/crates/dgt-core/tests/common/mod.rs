//! Test-side oracles, written without the library's linear algebra.
#![allow(dead_code)]

use dgt_core::field::{fx_int, fx_x, Field, Fx, Poly, Rational, TowerElement, TowerField};
use dgt_core::expr::parse_ratfunc;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn fx(text: &str, params: &[&str]) -> Fx {
    let k = TowerField::new(params.iter().map(|s| s.to_string()).collect()).unwrap();
    parse_ratfunc(text, &k, "x").unwrap()
}

/// Random polynomial in x of degree ≤ deg with coefficients in [-r, r].
pub fn random_poly(g: &mut ChaCha8Rng, deg: usize, r: i64) -> Fx {
    let mut f = fx_int(0);
    for k in 0..=deg {
        f = f.add(&fx_int(g.gen_range(-r..=r)).mul(&fx_x().pow(k as u64)));
    }
    f
}

/// Random element of ℚ(x): a polynomial, sometimes divided by a monic
/// linear factor.
pub fn random_fx(g: &mut ChaCha8Rng, deg: usize) -> Fx {
    let p = random_poly(g, deg, 3);
    if g.gen_bool(0.3) {
        p.div(&fx_x().add(&fx_int(g.gen_range(1..=4))))
    } else {
        p
    }
}

/// Rank by fraction-free elimination on rows of rationals.
pub fn rank_q(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !Zero::is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !Zero::is_zero(&m[i][c]) {
                let f = &m[i][c] / &m[rank][c];
                for j in c..cols {
                    let v = &m[rank][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let r: Vec<Vec<Rational>> = rows
        .iter()
        .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    rank_q(&r)
}

/// All integer vectors in [-b, b]^n.
pub fn box_vectors(n: usize, b: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-b..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(BigInt::from(x));
                    w
                })
            })
            .collect();
    }
    out
}

/// Value at a rational point of a rational function over ℚ, or None at a pole.
pub fn eval_q(f: &Fx, at: &Rational) -> Option<Rational> {
    let ev = |p: &Poly<TowerElement>| {
        p.coeffs().iter().rev().fold(Rational::zero(), |acc, c| acc * at + c.as_rational().unwrap())
    };
    let d = ev(f.den());
    if Zero::is_zero(&d) {
        None
    } else {
        Some(ev(f.num()) / d)
    }
}

/// ∏ aᵢ^{dᵢ}·f = σ^ℓ(f), checked at sample points instead of symbolically.
pub fn relation_holds_at_points(a: &[Fx], d: &[BigInt], f: &Fx, ell: i64) -> bool {
    let mut checked = 0;
    for k in 0..40 {
        let x0 = qq(2 * k + 7, 3);
        let shifted = &x0 + q(ell);
        let vals: Option<Vec<Rational>> = a.iter().map(|ai| eval_q(ai, &x0)).collect();
        let (Some(vals), Some(f0), Some(f1)) = (vals, eval_q(f, &x0), eval_q(f, &shifted)) else {
            continue;
        };
        if vals.iter().any(Zero::is_zero) {
            continue;
        }
        let mut lhs = f0;
        for (v, e) in vals.iter().zip(d) {
            let e: i64 = e.try_into().unwrap();
            let p = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
            lhs = if e >= 0 { lhs * p } else { lhs / p };
        }
        if lhs != f1 {
            return false;
        }
        checked += 1;
        if checked == 8 {
            return true;
        }
    }
    checked > 0
}

/// (x + i)^k expanded by the binomial theorem.
pub fn shifted_power(i: i64, k: usize) -> Vec<Rational> {
    let mut c = vec![Rational::one()];
    for _ in 0..k {
        let mut next = vec![Rational::zero(); c.len() + 1];
        for (j, v) in c.iter().enumerate() {
            next[j + 1] += v;
            next[j] += v * q(i);
        }
        c = next;
    }
    c
}

/// Dimension of the polynomial solutions of Σ aᵢ(x) y(x+i) = 0 of degree ≤ n,
/// by a dense ansatz.
pub fn ansatz_solution_dim(coeffs: &[Vec<Rational>], n: usize) -> usize {
    let top = coeffs.iter().map(Vec::len).max().unwrap() + n + 1;
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for k in 0..=n {
        let mut img = vec![Rational::zero(); top];
        for (i, a) in coeffs.iter().enumerate() {
            let s = shifted_power(i as i64, k);
            for (p, ap) in a.iter().enumerate() {
                for (r, sr) in s.iter().enumerate() {
                    img[p + r] += ap * sr;
                }
            }
        }
        cols.push(img);
    }
    // rank of the matrix whose columns are the images
    (n + 1) - rank_q(&cols)
}

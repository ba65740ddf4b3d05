//! Factorization and root finding over ℚ, parameter towers and simple
//! algebraic extensions.

mod multivariate;
mod zassenhaus;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Field, IntegerRoots, Poly, Rational, TowerElement};

pub use multivariate::{factor_mpoly, MFactorization};
pub use zassenhaus::{factor_squarefree_primitive, primitive};

/// unit · ∏ factorᵉ with monic irreducible factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F> {
    pub unit: F,
    pub factors: Vec<(Poly<F>, u32)>,
}

impl<F: Field> Factorization<F> {
    pub fn expand(&self) -> Poly<F> {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e));
        }
        acc
    }
}

/// Yun's squarefree decomposition of a nonzero polynomial in characteristic 0:
/// returns (lc, [(s_i, i)]) with p = lc·∏ s_iⁱ, each s_i monic squarefree.
pub fn squarefree_decomposition<F: Field>(p: &Poly<F>) -> (F, Vec<(Poly<F>, u32)>) {
    let lc = p.lc().expect("squarefree decomposition of zero").clone();
    let f = p.monic();
    let mut out = Vec::new();
    if f.is_constant() {
        return (lc, out);
    }
    let df = f.derivative();
    let a0 = Poly::gcd(&f, &df);
    let mut b = f.exact_div(&a0).unwrap();
    let c = df.exact_div(&a0).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        let a = Poly::gcd(&b, &d);
        let nb = b.exact_div(&a).unwrap();
        let nc = d.exact_div(&a).unwrap();
        d = nc.sub(&nb.derivative());
        if !a.is_constant() {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    (lc, out)
}

/// Total order on rational polynomials: degree first, then coefficients
/// from the top down.
pub fn cmp_rational_poly(a: &Poly<Rational>, b: &Poly<Rational>) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for (x, y) in a.coeffs().iter().rev().zip(b.coeffs().iter().rev()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Clears denominators: returns the primitive integer polynomial with
/// positive leading coefficient proportional to `p`.
pub fn to_primitive_integer(p: &Poly<Rational>) -> Vec<BigInt> {
    let l = super::rational::denom_lcm(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    primitive(&ints)
}

pub fn from_integer_poly(v: &[BigInt]) -> Poly<Rational> {
    Poly::new(v.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Complete factorization over ℚ into monic irreducibles.
pub fn factor_rational(p: &Poly<Rational>) -> Factorization<Rational> {
    let (unit, sqf) = squarefree_decomposition(p);
    let mut factors = Vec::new();
    for (s, e) in sqf {
        let z = to_primitive_integer(&s);
        for g in factor_squarefree_primitive(&z) {
            factors.push((from_integer_poly(&g).monic(), e));
        }
    }
    factors.sort_by(|a, b| cmp_rational_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Factorization { unit, factors }
}

pub fn is_irreducible_rational(p: &Poly<Rational>) -> bool {
    if p.deg() < 1 {
        return false;
    }
    let f = factor_rational(p);
    f.factors.len() == 1 && f.factors[0].1 == 1
}

/// Distinct rational roots, ascending.
pub fn rational_roots(p: &Poly<Rational>) -> Vec<Rational> {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut out: Vec<Rational> = factor_rational(p)
        .factors
        .iter()
        .filter(|(f, _)| f.deg() == 1)
        .map(|(f, _)| -f.coeffs()[0].clone())
        .collect();
    out.sort();
    out
}

impl IntegerRoots for Rational {
    fn integer_roots(p: &Poly<Rational>) -> Vec<BigInt> {
        rational_roots(p)
            .into_iter()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
            .collect()
    }
}

/// Factorization over the tower field ℚ(u₁,…,u_r) of a polynomial in the
/// distinguished variable, by clearing denominators and factoring in
/// ℚ[u₁,…,u_r, y].
pub fn factor_tower(p: &Poly<TowerElement>, nparams: usize) -> Factorization<TowerElement> {
    let lc = p.lc().expect("factorization of zero").clone();
    if p.coeffs().iter().all(|c| c.as_rational().is_some()) {
        let q = p.map(|c| c.as_rational().unwrap().clone());
        let f = factor_rational(&q);
        return Factorization {
            unit: lc,
            factors: f
                .factors
                .into_iter()
                .map(|(g, e)| (g.map(|c| TowerElement::from(c.clone())), e))
                .collect(),
        };
    }
    let m = super::mpoly::poly_to_mpoly(p, nparams);
    let mf = factor_mpoly(&m);
    let mut factors = Vec::new();
    for (g, e) in mf.factors {
        if g.degree_in(nparams) == 0 {
            continue;
        }
        let gp = super::mpoly::mpoly_to_poly(&g, nparams).monic();
        factors.push((gp, e));
    }
    Factorization { unit: lc, factors }
}

/// Integer roots over a tower: specialize all parameters at pseudo-random
/// rationals, take integer roots of the image as candidates and keep those
/// that vanish exactly.
pub fn tower_integer_roots(p: &Poly<TowerElement>) -> Vec<BigInt> {
    use rand::{Rng, SeedableRng};
    assert!(!p.is_zero(), "roots of the zero polynomial");
    if p.coeffs().iter().all(|c| c.as_rational().is_some()) {
        return Rational::integer_roots(&p.map(|c| c.as_rational().unwrap().clone()));
    }
    let nparams = p.coeffs().iter().map(|c| c.level()).max().unwrap_or(0) as usize;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1a7e_9e75);
    loop {
        let point: Vec<Rational> = (0..nparams)
            .map(|_| {
                Rational::new(
                    BigInt::from(rng.gen_range(-997i64..=997)),
                    BigInt::from(rng.gen_range(1i64..=13)),
                )
            })
            .collect();
        let image: Option<Vec<Rational>> = p.coeffs().iter().map(|c| c.eval_at(&point)).collect();
        let Some(image) = image else { continue };
        if Zero::is_zero(image.last().unwrap()) {
            continue;
        }
        let q = Poly::new(image);
        let mut out: Vec<BigInt> = Rational::integer_roots(&q)
            .into_iter()
            .filter(|m| {
                let v = p.eval(&TowerElement::from(Rational::from_integer(m.clone())));
                Field::is_zero(&v)
            })
            .collect();
        out.sort();
        return out;
    }
}

impl IntegerRoots for TowerElement {
    fn integer_roots(p: &Poly<TowerElement>) -> Vec<BigInt> {
        tower_integer_roots(p)
    }
}

/// Sign of the leading coefficient, used to normalize integer factors.
pub fn is_negative_lead(v: &[BigInt]) -> bool {
    v.last().is_some_and(|c| c.is_negative())
}

pub fn is_unit_poly(v: &[BigInt]) -> bool {
    v.len() == 1 && v[0].abs().is_one()
}

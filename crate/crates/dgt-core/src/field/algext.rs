//! Simple algebraic extensions ℚ(θ) = ℚ[y]/(m).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::factor::{factor_rational, is_irreducible_rational, squarefree_decomposition, Factorization};
use super::{Field, IntegerRoots, Poly, Rational};
use crate::error::{DgtError, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct AlgContext {
    modulus: Poly<Rational>,
}

impl AlgContext {
    pub fn modulus(&self) -> &Poly<Rational> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }
}

/// Adjoins a root θ of the monic irreducible polynomial `m`.
pub fn adjoin_root(m: &Poly<Rational>) -> Result<Arc<AlgContext>> {
    let m = m.monic();
    if !is_irreducible_rational(&m) {
        return Err(DgtError::NotIrreducible(
            m.render_with("y", |c| (super::rational::render_rational(c), false)),
        ));
    }
    Ok(Arc::new(AlgContext { modulus: m }))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElem {
    ctx: Arc<AlgContext>,
    rep: Poly<Rational>,
}

impl AlgElem {
    pub fn new(ctx: &Arc<AlgContext>, rep: Poly<Rational>) -> Self {
        let rep = rep.rem(&ctx.modulus);
        AlgElem {
            ctx: ctx.clone(),
            rep,
        }
    }

    pub fn theta(ctx: &Arc<AlgContext>) -> Self {
        AlgElem::new(ctx, Poly::x(&Rational::one()))
    }

    pub fn from_rational(ctx: &Arc<AlgContext>, r: Rational) -> Self {
        AlgElem::new(ctx, Poly::constant(r))
    }

    pub fn ctx(&self) -> &Arc<AlgContext> {
        &self.ctx
    }

    pub fn rep(&self) -> &Poly<Rational> {
        &self.rep
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.rep.is_constant() {
            Some(self.rep.coeff(0).cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Coordinates in the power basis 1, θ, …, θ^(d−1).
    pub fn coords(&self) -> Vec<Rational> {
        (0..self.ctx.degree())
            .map(|i| self.rep.coeff(i).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    /// Field norm to ℚ: determinant of multiplication by the element.
    pub fn norm(&self) -> Rational {
        let d = self.ctx.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        let th = AlgElem::theta(&self.ctx);
        for _ in 0..d {
            cols.push(cur.coords());
            cur = cur.mul(&th);
        }
        det_rational(cols)
    }

    pub fn render(&self, sym: &str) -> (String, bool) {
        let txt = self
            .rep
            .render_with(sym, |c| (super::rational::render_rational(c), false));
        let compound = self.rep.coeffs().iter().filter(|c| !Zero::is_zero(*c)).count() > 1;
        (txt, compound)
    }
}

fn det_rational(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !Zero::is_zero(&m[r][c])) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if Zero::is_zero(&m[r][c]) {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    det
}

impl Field for AlgElem {
    fn zero_like(&self) -> Self {
        AlgElem {
            ctx: self.ctx.clone(),
            rep: Poly::zero(),
        }
    }
    fn one_like(&self) -> Self {
        AlgElem {
            ctx: self.ctx.clone(),
            rep: Poly::constant(Rational::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        AlgElem {
            ctx: self.ctx.clone(),
            rep: self.rep.add(&rhs.rep),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        AlgElem {
            ctx: self.ctx.clone(),
            rep: self.rep.sub(&rhs.rep),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        AlgElem::new(&self.ctx, self.rep.mul(&rhs.rep))
    }
    fn neg(&self) -> Self {
        AlgElem {
            ctx: self.ctx.clone(),
            rep: self.rep.neg(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.rep.is_zero(), "inverse of zero");
        let (g, s, _) = Poly::ext_gcd(&self.rep, &self.ctx.modulus);
        debug_assert!(g.deg() == 0);
        AlgElem::new(&self.ctx, s)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        AlgElem::from_rational(&self.ctx, r.clone())
    }
}

/// Newton interpolation through (xs[i], ys[i]).
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly<Rational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Poly::new(vec![-xs[i].clone(), Rational::one()]);
        acc = acc.mul(&lin).add(&Poly::constant(dd[i].clone()));
    }
    acc
}

fn lift(ctx: &Arc<AlgContext>, p: &Poly<Rational>) -> Poly<AlgElem> {
    p.map(|c| AlgElem::from_rational(ctx, c.clone()))
}

/// Norm of a polynomial over ℚ(θ), computed by interpolation of the norms
/// of its values at integer points.
fn poly_norm(p: &Poly<AlgElem>, ctx: &Arc<AlgContext>) -> Poly<Rational> {
    let deg = p.deg() as usize * ctx.degree();
    let xs: Vec<Rational> = (0..=deg as i64).map(|i| Rational::from_integer(BigInt::from(i))).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| p.eval(&AlgElem::from_rational(ctx, x.clone())).norm())
        .collect();
    interpolate(&xs, &ys)
}

/// Factorization over ℚ(θ) by Trager's norm method.
pub fn factor_alg(p: &Poly<AlgElem>) -> Factorization<AlgElem> {
    let lc = p.lc().expect("factorization of zero").clone();
    let ctx = lc.ctx().clone();
    let (_, sqf) = squarefree_decomposition(p);
    let mut factors = Vec::new();
    for (h, e) in sqf {
        for f in factor_squarefree_alg(&h, &ctx) {
            factors.push((f, e));
        }
    }
    Factorization { unit: lc, factors }
}

fn factor_squarefree_alg(h: &Poly<AlgElem>, ctx: &Arc<AlgContext>) -> Vec<Poly<AlgElem>> {
    if h.deg() <= 1 {
        return vec![h.monic()];
    }
    let th = AlgElem::theta(ctx);
    for s in [0i64, 1, -1, 2, -2, 3, -3, 4, 5, 6, 7, 8] {
        let shift = th.mul(&th.from_int_like(-s));
        let g = h.shift(&shift);
        let n = poly_norm(&g, ctx);
        let dn = n.derivative();
        if Poly::gcd(&n, &dn).deg() > 0 {
            continue;
        }
        let back = th.mul(&th.from_int_like(s));
        let mut out = Vec::new();
        for (ni, _) in factor_rational(&n).factors {
            let fi = Poly::gcd(&g, &lift(ctx, &ni));
            if fi.deg() > 0 {
                out.push(fi.shift(&back).monic());
            }
        }
        return out;
    }
    panic!("no squarefree norm found for Trager factorization");
}

/// Roots of `p` (over ℚ) that lie in ℚ(θ).
pub fn roots_in(p: &Poly<Rational>, ctx: &Arc<AlgContext>) -> Vec<AlgElem> {
    factor_alg(&lift(ctx, p))
        .factors
        .into_iter()
        .filter(|(f, _)| f.deg() == 1)
        .map(|(f, _)| f.coeffs()[0].neg())
        .collect()
}

impl IntegerRoots for AlgElem {
    fn integer_roots(p: &Poly<AlgElem>) -> Vec<BigInt> {
        let ctx = p.lc().expect("roots of zero").ctx().clone();
        let d = ctx.degree();
        let mut g = Poly::<Rational>::zero();
        for k in 0..d {
            let ck = Poly::new(
                p.coeffs()
                    .iter()
                    .map(|c| c.rep.coeff(k).cloned().unwrap_or_else(Rational::zero))
                    .collect(),
            );
            g = Poly::gcd(&g, &ck);
        }
        Rational::integer_roots(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    #[test]
    fn sqrt2_arithmetic() {
        let ctx = adjoin_root(&Poly::from_ints(&[-2, 0, 1])).unwrap();
        let th = AlgElem::theta(&ctx);
        let one = th.one_like();
        assert_eq!(one.add(&th).mul(&one.sub(&th)), one.neg());
        assert_eq!(th.inv(), th.mul(&th.from_rational_like(&crate::field::rat(1, 2))));
        assert_eq!(th.norm(), int(-2));
    }

    #[test]
    fn golden_ratio_reduction() {
        let ctx = adjoin_root(&Poly::from_ints(&[-1, -1, 1])).unwrap();
        let th = AlgElem::theta(&ctx);
        assert_eq!(th.mul(&th), th.add(&th.one_like()));
        let roots = roots_in(&Poly::from_ints(&[-1, -1, 1]), &ctx);
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn rejects_reducible() {
        assert!(matches!(
            adjoin_root(&Poly::from_ints(&[-1, 0, 1])),
            Err(DgtError::NotIrreducible(_))
        ));
    }

    #[test]
    fn cube_root_has_one_root() {
        let ctx = adjoin_root(&Poly::from_ints(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(roots_in(&Poly::from_ints(&[-2, 0, 0, 1]), &ctx).len(), 1);
    }
}

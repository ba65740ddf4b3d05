//! Sparse multivariate polynomials over ℚ, used to clear denominators of
//! tower elements and to factor in the parameter ring.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, RatFunc, Rational, TowerElement};

/// Terms keyed by exponent vectors; the lexicographically largest key is the
/// leading term (variable 0 most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut m = MPoly::zero(nvars);
        if !c.is_zero() {
            m.terms.insert(vec![0; nvars], c);
        }
        m
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut m = MPoly::zero(nvars);
        m.terms.insert(e, Rational::one());
        m
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut m = MPoly::zero(nvars);
        for (e, c) in terms {
            m.add_term(e, c);
        }
        m
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut m = self.clone();
        for (e, c) in &rhs.terms {
            m.add_term(e.clone(), c.clone());
        }
        m
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut m = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                m.add_term(e, c1 * c2);
            }
        }
        m
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (le, lc) = d.leading().expect("division by zero polynomial");
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((e, c)) = r.leading() {
            if e.iter().zip(le).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(le).map(|(a, b)| a - b).collect();
            let qc = c / lc;
            let mut t = MPoly::zero(self.nvars);
            t.terms.insert(qe.clone(), qc.clone());
            r = r.sub(&d.mul(&t));
            q.add_term(qe, qc);
        }
        Some(q)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Writes c·P with P integer, primitive, leading coefficient positive.
    pub fn primitive_part(&self) -> (Rational, MPoly) {
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let l = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&l / c.denom()))));
        let mut c = Rational::new(g, l);
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    /// Exponent vector of the monomial dividing every term.
    pub fn monomial_content(&self) -> Vec<u32> {
        (0..self.nvars).map(|i| self.min_degree_in(i)).collect()
    }

    pub fn div_monomial(&self, e: &[u32]) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }
}

/// Numerator and denominator of a tower element as polynomials in the
/// first `nvars` variables (u₁ ↦ variable 0).
pub fn tower_to_fraction(e: &TowerElement, nvars: usize) -> (MPoly, MPoly) {
    match e {
        TowerElement::Q(r) => (MPoly::constant(nvars, r.clone()), MPoly::one(nvars)),
        TowerElement::F { level, val } => {
            let var = *level as usize - 1;
            let parts: Vec<(MPoly, MPoly)> = val
                .num()
                .coeffs()
                .iter()
                .chain(val.den().coeffs())
                .map(|c| tower_to_fraction(c, nvars))
                .collect();
            let l = common_multiple(parts.iter().map(|p| &p.1), nvars);
            let u = MPoly::var(nvars, var);
            let build = |coeffs: &[TowerElement], offset: usize| -> MPoly {
                let mut acc = MPoly::zero(nvars);
                for (j, _) in coeffs.iter().enumerate().rev() {
                    let (n, d) = &parts[offset + j];
                    let term = n.mul(&l.exact_div(d).unwrap());
                    acc = acc.mul(&u).add(&term);
                }
                acc
            };
            let nn = val.num().coeffs().len();
            (build(val.num().coeffs(), 0), build(val.den().coeffs(), nn))
        }
    }
}

/// A common multiple of the given polynomials, skipping those that already
/// divide the running product.
fn common_multiple<'a>(it: impl Iterator<Item = &'a MPoly>, nvars: usize) -> MPoly {
    let mut l = MPoly::one(nvars);
    for d in it {
        if d.is_constant() {
            continue;
        }
        if l.exact_div(d).is_none() {
            l = l.mul(d);
        }
    }
    l
}

/// Converts a polynomial in the first `nvars` variables to a tower element.
pub fn mpoly_to_tower(p: &MPoly) -> TowerElement {
    let top = (0..p.nvars).rev().find(|&i| p.degree_in(i) > 0);
    let Some(k) = top else {
        return TowerElement::Q(p.constant_value().unwrap());
    };
    let deg = p.degree_in(k) as usize;
    let mut slices: Vec<MPoly> = vec![MPoly::zero(p.nvars); deg + 1];
    for (e, c) in &p.terms {
        let mut e2 = e.clone();
        e2[k] = 0;
        slices[e[k] as usize].add_term(e2, c.clone());
    }
    let coeffs: Vec<TowerElement> = slices.iter().map(mpoly_to_tower).collect();
    let one = TowerElement::from(1);
    TowerElement::F {
        level: k as u32 + 1,
        val: Box::new(RatFunc::from_poly(Poly::new(coeffs), &one)),
    }
}

/// Clears all denominators of a polynomial over the tower and returns it as
/// a polynomial in (u₁,…,u_r, y) with y the variable of index `nparams`.
/// The result differs from `p` by a nonzero factor in ℚ(u).
pub fn poly_to_mpoly(p: &Poly<TowerElement>, nparams: usize) -> MPoly {
    let nv = nparams + 1;
    let parts: Vec<(MPoly, MPoly)> = p
        .coeffs()
        .iter()
        .map(|c| tower_to_fraction(c, nv))
        .collect();
    let l = common_multiple(parts.iter().map(|p| &p.1), nv);
    let y = MPoly::var(nv, nparams);
    let mut acc = MPoly::zero(nv);
    for (n, d) in parts.iter().rev() {
        acc = acc.mul(&y).add(&n.mul(&l.exact_div(d).unwrap()));
    }
    acc
}

pub fn mpoly_to_poly(m: &MPoly, nparams: usize) -> Poly<TowerElement> {
    let deg = m.degree_in(nparams) as usize;
    let mut slices: Vec<MPoly> = vec![MPoly::zero(m.nvars); deg + 1];
    for (e, c) in &m.terms {
        let mut e2 = e.clone();
        e2[nparams] = 0;
        slices[e[nparams] as usize].add_term(e2, c.clone());
    }
    Poly::new(slices.iter().map(mpoly_to_tower).collect())
}

/// Reduced numerator/denominator of a tower element: common irreducible
/// factors of the cleared fraction are cancelled.
pub fn reduced_fraction(e: &TowerElement, nvars: usize) -> (MPoly, MPoly) {
    let (n, d) = tower_to_fraction(e, nvars);
    if d.is_constant() || n.is_zero() {
        return (n, d);
    }
    let mut n = n;
    let mut d = d;
    for (f, _) in super::factor::factor_mpoly(&d).factors {
        loop {
            match (n.exact_div(&f), d.exact_div(&f)) {
                (Some(n2), Some(d2)) => {
                    n = n2;
                    d = d2;
                }
                _ => break,
            }
        }
    }
    (n, d)
}

/// A rational function in x over the tower as N/D in (u₁,…,u_r, x), x being
/// the variable of index `nparams`.
pub fn ratfunc_to_fraction(f: &RatFunc<TowerElement>, nparams: usize) -> (MPoly, MPoly) {
    let nv = nparams + 1;
    let side = |p: &Poly<TowerElement>| -> (MPoly, MPoly) {
        let parts: Vec<(MPoly, MPoly)> = p.coeffs().iter().map(|c| tower_to_fraction(c, nv)).collect();
        let l = common_multiple(parts.iter().map(|q| &q.1), nv);
        let x = MPoly::var(nv, nparams);
        let mut acc = MPoly::zero(nv);
        for (n, d) in parts.iter().rev() {
            acc = acc.mul(&x).add(&n.mul(&l.exact_div(d).unwrap()));
        }
        (acc, l)
    };
    let (nn, nl) = side(f.num());
    let (dn, dl) = side(f.den());
    (nn.mul(&dl), nl.mul(&dn))
}

impl MPoly {
    /// Substitutes the first `point.len()` variables and returns the result
    /// as a univariate polynomial in variable `var`.
    pub fn eval_partial(&self, point: &[Rational], var: usize) -> Poly<Rational> {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            let d = e[var] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] += t;
        }
        Poly::new(coeffs)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.degree_in(i) > 0).collect()
    }
}

//! Exact scalar fields and univariate polynomial arithmetic over them.

pub mod algext;
pub mod factor;
pub mod mpoly;
pub mod poly;
pub mod rational;
pub mod ratfunc;
pub mod tower;
pub mod zpoly;

use std::fmt::Debug;

pub use algext::{AlgContext, AlgElem};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use rational::{int, rat, Rational};
pub use tower::{TowerElement, TowerField};

/// Rational functions in x over a parameter tower.
pub type Fx = RatFunc<TowerElement>;

/// Number of tower parameters actually used by a family of functions.
pub fn max_level<'a>(it: impl IntoIterator<Item = &'a Fx>) -> usize {
    it.into_iter()
        .flat_map(|f| f.num().coeffs().iter().chain(f.den().coeffs()))
        .map(|c| c.level() as usize)
        .max()
        .unwrap_or(0)
}

pub fn fx_const(c: TowerElement) -> Fx {
    RatFunc::constant(c)
}

pub fn fx_int(n: i64) -> Fx {
    RatFunc::constant(TowerElement::from(n))
}

pub fn fx_x() -> Fx {
    RatFunc::x(&TowerElement::from(1))
}

/// A commutative field with exact arithmetic.
///
/// Elements of context-carrying fields (algebraic extensions) cannot produce
/// zero or one out of thin air, so constants are built from an existing
/// element of the same field.
pub trait Field: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero; callers check first.
    fn inv(&self) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.from_rational_like(&rat(n, 1))
    }
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
    /// The element as a rational number, when it is one.
    fn to_rational_opt(&self) -> Option<Rational> {
        None
    }
    /// A faster product for polynomials over this field, if one applies.
    fn poly_mul_hook(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }
    /// num/den in lowest terms with den monic, if a faster route applies.
    fn reduce_hook(_num: &Poly<Self>, _den: &Poly<Self>) -> Option<(Poly<Self>, Poly<Self>)> {
        None
    }
    /// A faster gcd for polynomials over this field, if one applies.
    fn poly_gcd_hook(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }
    /// Integer power, negative exponents through the inverse.
    fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().pow(e.unsigned_abs())
        }
    }
}

/// Fields in which the integer roots of a univariate polynomial are computable.
pub trait IntegerRoots: Field {
    /// All integers m with p(m) = 0, sorted ascending. `p` must be nonzero.
    fn integer_roots(p: &Poly<Self>) -> Vec<num_bigint::BigInt>;
}

use super::{Field, Poly, Rational};
use crate::error::{DgtError, Result};

/// Reduced fraction num/den with den monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(DgtError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            let one = den.lc().unwrap().one_like();
            return RatFunc {
                num,
                den: Poly::constant(one),
            };
        }
        if !den.is_constant() {
            if let Some((num, den)) = F::reduce_hook(&num, &den) {
                return RatFunc { num, den };
            }
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        let l = den.lc().unwrap();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let li = l.inv();
            RatFunc {
                num: num.scale(&li),
                den: den.scale(&li),
            }
        }
    }

    pub fn from_poly(p: Poly<F>, sample: &F) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(sample.one_like()),
        }
    }

    pub fn constant(c: F) -> Self {
        let one = c.one_like();
        RatFunc {
            num: Poly::constant(c),
            den: Poly::constant(one),
        }
    }

    pub fn x(sample: &F) -> Self {
        Self::from_poly(Poly::x(sample), sample)
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn sample(&self) -> &F {
        self.den.lc().unwrap()
    }

    /// max(deg num, deg den); `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        if self.num.is_zero() {
            None
        } else {
            Some(self.num.deg().max(self.den.deg()) as usize)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<F> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.num
                .coeff(0)
                .cloned()
                .unwrap_or_else(|| self.sample().zero_like()),
        )
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    /// σ^k: x ↦ x + k.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 || self.is_constant() {
            return self.clone();
        }
        RatFunc {
            num: self.num.shift_int(k),
            den: self.den.shift_int(k),
        }
    }

    /// Value at a point, `None` when the denominator vanishes there.
    pub fn eval(&self, at: &F) -> Option<F> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at).div(&d))
        }
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<RatFunc<G>> {
        RatFunc::new(self.num.try_map(&f)?, self.den.try_map(&f)?)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RatFunc<G> {
        RatFunc::normalize(self.num.map(&f), self.den.map(&f))
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero_like(&self) -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::constant(self.sample().one_like()),
        }
    }
    fn one_like(&self) -> Self {
        RatFunc::constant(self.sample().one_like())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        RatFunc::normalize(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return RatFunc {
                num: self.num.mul(&rhs.num),
                den: self.den.clone(),
            };
        }
        // cross-cancel before multiplying to keep sizes small
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        RatFunc::normalize(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFunc::normalize(self.den.clone(), self.num.clone())
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        RatFunc::constant(self.sample().from_rational_like(r))
    }
}

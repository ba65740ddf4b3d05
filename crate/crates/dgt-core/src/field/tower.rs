use num_traits::{One, Zero};

use super::rational::render_rational;
use super::{Field, Poly, RatFunc, Rational};
use crate::error::{DgtError, Result};

/// The pure transcendental tower ℚ(u₁)…(u_r).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TowerField {
    params: Vec<String>,
}

impl TowerField {
    pub fn new(params: Vec<String>) -> Result<Self> {
        for (i, p) in params.iter().enumerate() {
            if params[..i].contains(p) {
                return Err(DgtError::Invalid(format!("duplicate parameter '{p}'")));
            }
        }
        Ok(TowerField { params })
    }

    pub fn rationals() -> Self {
        TowerField { params: Vec::new() }
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    pub fn gen(&self, i: usize) -> TowerElement {
        assert!(i < self.params.len());
        TowerElement::param(i)
    }
}

/// An element of ℚ(u₁)…(u_r), stored at the lowest level that expresses it:
/// either a rational number or a non-constant rational function in u_level
/// whose coefficients live strictly lower in the tower.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TowerElement {
    Q(Rational),
    F {
        level: u32,
        val: Box<RatFunc<TowerElement>>,
    },
}

impl From<Rational> for TowerElement {
    fn from(r: Rational) -> Self {
        TowerElement::Q(r)
    }
}

impl From<i64> for TowerElement {
    fn from(n: i64) -> Self {
        TowerElement::Q(super::int(n))
    }
}

impl TowerElement {
    /// The parameter u_{i+1} (0-based index).
    pub fn param(i: usize) -> Self {
        let one = TowerElement::Q(Rational::one());
        TowerElement::F {
            level: i as u32 + 1,
            val: Box::new(RatFunc::x(&one)),
        }
    }

    pub fn level(&self) -> u32 {
        match self {
            TowerElement::Q(_) => 0,
            TowerElement::F { level, .. } => *level,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            TowerElement::Q(r) => Some(r),
            _ => None,
        }
    }

    fn lift(&self, k: u32) -> RatFunc<TowerElement> {
        match self {
            TowerElement::F { level, val } if *level == k => (**val).clone(),
            _ => RatFunc::constant(self.clone()),
        }
    }

    fn collapse(level: u32, rf: RatFunc<TowerElement>) -> Self {
        match rf.as_constant() {
            Some(c) => c,
            None => TowerElement::F {
                level,
                val: Box::new(rf),
            },
        }
    }

    fn binop(
        &self,
        rhs: &Self,
        q: impl Fn(&Rational, &Rational) -> Rational,
        f: impl Fn(&RatFunc<TowerElement>, &RatFunc<TowerElement>) -> RatFunc<TowerElement>,
    ) -> Self {
        match (self, rhs) {
            (TowerElement::Q(a), TowerElement::Q(b)) => TowerElement::Q(q(a, b)),
            _ => {
                let k = self.level().max(rhs.level());
                Self::collapse(k, f(&self.lift(k), &rhs.lift(k)))
            }
        }
    }

    /// Value at a point (one rational per parameter, indexed from u₁).
    /// `None` when a denominator met on the way vanishes.
    pub fn eval_at(&self, point: &[Rational]) -> Option<Rational> {
        match self {
            TowerElement::Q(r) => Some(r.clone()),
            TowerElement::F { level, val } => {
                let at = &point[*level as usize - 1];
                let ev = |p: &Poly<TowerElement>| -> Option<Rational> {
                    let mut acc = Rational::zero();
                    for c in p.coeffs().iter().rev() {
                        acc = acc * at + c.eval_at(point)?;
                    }
                    Some(acc)
                };
                let d = ev(val.den())?;
                if Zero::is_zero(&d) {
                    return None;
                }
                Some(ev(val.num())? / d)
            }
        }
    }

    /// The rational "constant term": for a polynomial part this is its value
    /// at all parameters zero; adding an integer k to the element adds k here.
    pub fn const_term(&self) -> Rational {
        match self {
            TowerElement::Q(r) => r.clone(),
            TowerElement::F { val, .. } => {
                let (q, _) = val.num().div_rem(val.den());
                match q.coeff(0) {
                    Some(c) => c.const_term(),
                    None => Rational::zero(),
                }
            }
        }
    }

    /// Renders with the given parameter names; the flag reports whether the
    /// text needs parentheses when used as a factor.
    pub fn render(&self, names: &[String]) -> (String, bool) {
        match self {
            TowerElement::Q(r) => (render_rational(r), false),
            TowerElement::F { level, val } => {
                let var = &names[*level as usize - 1];
                let num = val.num();
                let nterms = num.coeffs().iter().filter(|c| !Field::is_zero(*c)).count();
                let ntxt = num.render_with(var, |c| c.render(names));
                if val.den().is_constant() {
                    let single = nterms == 1 && !num_has_compound_coeff(num, names);
                    (ntxt, !single)
                } else {
                    let dtxt = val.den().render_with(var, |c| c.render(names));
                    let nwrap = if nterms > 1 || num_has_compound_coeff(num, names) {
                        format!("({ntxt})")
                    } else {
                        ntxt
                    };
                    let dden = val.den();
                    let dterms = dden.coeffs().iter().filter(|c| !Field::is_zero(*c)).count();
                    let dwrap = if dterms > 1 || dden.lc().is_some_and(|c| !c.is_one()) {
                        format!("({dtxt})")
                    } else {
                        dtxt
                    };
                    (format!("{nwrap}/{dwrap}"), true)
                }
            }
        }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        self.render(names).0
    }
}

fn num_has_compound_coeff(p: &Poly<TowerElement>, names: &[String]) -> bool {
    p.coeffs()
        .iter()
        .any(|c| !Field::is_zero(c) && c.render(names).1)
}

fn rational_poly(p: &Poly<TowerElement>) -> Option<Poly<Rational>> {
    let cs = p.coeffs().iter().map(|c| c.as_rational().cloned());
    Some(Poly::new(cs.collect::<Option<Vec<_>>>()?))
}

fn tower_poly(p: &Poly<Rational>) -> Poly<TowerElement> {
    Poly::new(p.coeffs().iter().cloned().map(TowerElement::Q).collect())
}

impl Field for TowerElement {
    fn to_rational_opt(&self) -> Option<Rational> {
        self.as_rational().cloned()
    }
    fn poly_mul_hook(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        Some(tower_poly(&super::zpoly::rational_mul(&rational_poly(a)?, &rational_poly(b)?)))
    }
    fn reduce_hook(num: &Poly<Self>, den: &Poly<Self>) -> Option<(Poly<Self>, Poly<Self>)> {
        let (n, d) = super::zpoly::rational_reduce(&rational_poly(num)?, &rational_poly(den)?)?;
        Some((tower_poly(&n), tower_poly(&d)))
    }
    fn poly_gcd_hook(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        let qa = rational_poly(a)?;
        let qb = rational_poly(b)?;
        let g = super::zpoly::rational_gcd(&qa, &qb)?;
        Some(tower_poly(&g))
    }
    fn zero_like(&self) -> Self {
        TowerElement::Q(Rational::zero())
    }
    fn one_like(&self) -> Self {
        TowerElement::Q(Rational::one())
    }
    fn is_zero(&self) -> bool {
        matches!(self, TowerElement::Q(r) if Zero::is_zero(r))
    }
    fn is_one(&self) -> bool {
        matches!(self, TowerElement::Q(r) if One::is_one(r))
    }
    fn add(&self, rhs: &Self) -> Self {
        if Field::is_zero(self) {
            return rhs.clone();
        }
        if Field::is_zero(rhs) {
            return self.clone();
        }
        self.binop(rhs, |a, b| a + b, |a, b| a.add(b))
    }
    fn sub(&self, rhs: &Self) -> Self {
        if Field::is_zero(rhs) {
            return self.clone();
        }
        self.binop(rhs, |a, b| a - b, |a, b| a.sub(b))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if Field::is_zero(self) || Field::is_zero(rhs) {
            return self.zero_like();
        }
        if Field::is_one(self) {
            return rhs.clone();
        }
        if Field::is_one(rhs) {
            return self.clone();
        }
        match (self, rhs) {
            // scalar from below: scale the numerator without a gcd
            (TowerElement::F { level, val }, s) | (s, TowerElement::F { level, val })
                if s.level() < *level =>
            {
                Self::collapse(*level, val.mul(&RatFunc::constant(s.clone())))
            }
            _ => self.binop(rhs, |a, b| a * b, |a, b| a.mul(b)),
        }
    }
    fn neg(&self) -> Self {
        match self {
            TowerElement::Q(r) => TowerElement::Q(-r),
            TowerElement::F { level, val } => TowerElement::F {
                level: *level,
                val: Box::new(val.neg()),
            },
        }
    }
    fn inv(&self) -> Self {
        match self {
            TowerElement::Q(r) => {
                assert!(!Zero::is_zero(r), "inverse of zero");
                TowerElement::Q(r.recip())
            }
            TowerElement::F { level, val } => Self::collapse(*level, val.inv()),
        }
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        TowerElement::Q(r.clone())
    }
}

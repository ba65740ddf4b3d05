use super::{Field, Rational};

/// Dense univariate polynomial, coefficients stored from degree 0 upward.
/// The zero polynomial has no coefficients, so its degree is `None` (−∞).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![c.zero_like(); k + 1];
        v[k] = c;
        Poly { coeffs: v }
    }

    /// The polynomial x, with constants taken from `sample`'s field.
    pub fn x(sample: &F) -> Self {
        Poly::monomial(sample.one_like(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg(0) = −1, convenient for comparisons.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    /// Coefficient of x^i, using `sample` to build zero when absent.
    pub fn coeff_or_zero(&self, i: usize, sample: &F) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| sample.zero_like())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn sample(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut v = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            v[i] = v[i].add(c);
        }
        Poly::new(v)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            };
            v.push(c);
        }
        Poly::new(v)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.coeffs.len().min(rhs.coeffs.len()) >= 6 {
            if let Some(p) = F::poly_mul_hook(self, rhs) {
                return p;
            }
        }
        let zero = self.coeffs[0].zero_like();
        let mut v = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(v)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let Some(s) = self.sample() else {
            return if e == 0 {
                panic!("0^0 without a coefficient field")
            } else {
                Poly::zero()
            };
        };
        let mut acc = Poly::constant(s.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by x^k.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.coeffs[0].zero_like(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lc().expect("division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = dl.inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![dl.zero_like(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|l| l.is_one())
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if let Some(g) = F::poly_gcd_hook(a, b) {
            return g;
        }
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with g = s·a + t·b and g monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let sample = a
            .sample()
            .or(b.sample())
            .expect("ext_gcd of two zero polynomials")
            .clone();
        let one = Poly::constant(sample.one_like());
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let l = r0.lc().unwrap().inv();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    pub fn eval(&self, at: &F) -> F {
        let mut acc = at.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// Evaluates at a point of a different ring through `lift`.
    pub fn eval_with<G: Field>(&self, at: &G, lift: impl Fn(&F) -> G) -> G {
        let mut acc = at.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(&lift(c));
        }
        acc
    }

    /// p(x + c) by Horner's rule on (x + c).
    pub fn shift(&self, c: &F) -> Self {
        if c.is_zero() || self.is_constant() {
            return self.clone();
        }
        let lin = Poly::new(vec![c.clone(), c.one_like()]);
        let mut acc = Poly::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(a.clone()));
        }
        acc
    }

    pub fn shift_int(&self, k: i64) -> Self {
        match self.sample() {
            Some(s) if k != 0 => self.shift(&s.from_int_like(k)),
            _ => self.clone(),
        }
    }

    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(a.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&c.from_int_like(i as i64)))
                .collect(),
        )
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Poly<G>, E> {
        Ok(Poly::new(
            self.coeffs.iter().map(f).collect::<Result<Vec<_>, E>>()?,
        ))
    }

    /// Renders in decreasing degree using `var` and a coefficient printer.
    /// The printer returns the coefficient text and whether it needs
    /// parentheses when multiplied by a power of the variable.
    pub fn render_with(&self, var: &str, coeff: impl Fn(&F) -> (String, bool)) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.deg() == 0 {
            return coeff(&self.coeffs[0]).0;
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (mut txt, compound) = coeff(c);
            let mut negative = false;
            if !compound && txt.starts_with('-') {
                negative = true;
                txt.remove(0);
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if mono.is_empty() {
                if compound {
                    format!("({txt})")
                } else {
                    txt
                }
            } else if txt == "1" {
                mono
            } else if compound {
                format!("({txt})*{mono}")
            } else {
                format!("{txt}*{mono}")
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl Poly<Rational> {
    pub fn from_ints(v: &[i64]) -> Self {
        Poly::new(v.iter().map(|&n| super::int(n)).collect())
    }
}

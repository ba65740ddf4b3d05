//! Scalar difference operators L = a_n σⁿ + … + a₀ with polynomial
//! coefficients: indicial polynomials, polynomial solutions and
//! hypergeometric solutions.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{DgtError, Result};
use crate::field::algext::{adjoin_root, roots_in};
use crate::field::factor::{factor_rational, factor_tower, Factorization};
use crate::field::{AlgElem, Field, IntegerRoots, Poly, RatFunc, Rational, TowerElement};
use crate::diffsys::{binomial, companion_form, minor_map, sym_power};
use crate::field::Fx;
use crate::linalg::{inverse_ratfunc, rref, Matrix};

/// Polynomial solutions are sought up to this degree at most.
pub const MAX_SOLUTION_DEGREE: usize = 2000;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator<C> {
    coeffs: Vec<Poly<C>>,
}

impl<C: Field> DiffOperator<C> {
    pub fn new(coeffs: Vec<Poly<C>>) -> Result<Self> {
        if coeffs.is_empty() || coeffs[0].is_zero() || coeffs.last().unwrap().is_zero() {
            return Err(DgtError::Invalid(
                "operator needs nonzero leading and trailing coefficients".into(),
            ));
        }
        Ok(DiffOperator { coeffs })
    }

    /// Clears the denominators of rational coefficients.
    pub fn from_ratfuncs(c: &[RatFunc<C>]) -> Self {
        let sample = c.iter().find(|f| !f.is_zero()).expect("zero operator").sample().clone();
        let mut den = Poly::constant(sample.one_like());
        for f in c {
            let g = Poly::gcd(&den, f.den());
            den = den.mul(&f.den().exact_div(&g).unwrap());
        }
        let coeffs = c
            .iter()
            .map(|f| f.num().mul(&den.exact_div(f.den()).unwrap()))
            .collect();
        DiffOperator::new(coeffs).expect("operator with vanishing end coefficient")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly<C>] {
        &self.coeffs
    }

    pub fn sample(&self) -> &C {
        self.coeffs[0].lc().unwrap()
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> DiffOperator<D> {
        DiffOperator {
            coeffs: self.coeffs.iter().map(|p| p.map(&f)).collect(),
        }
    }

    pub fn apply_poly(&self, p: &Poly<C>) -> Poly<C> {
        let mut acc = Poly::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&a.mul(&p.shift_int(i as i64)));
            }
        }
        acc
    }

    pub fn apply(&self, f: &RatFunc<C>) -> RatFunc<C> {
        let s = self.sample();
        let mut acc = RatFunc::constant(s.zero_like());
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&RatFunc::from_poly(a.clone(), s).mul(&f.shift(i as i64)));
            }
        }
        acc
    }
}

/// Operators in σ with polynomial coefficients, index = power of σ.
type SigmaOp<C> = Vec<Poly<C>>;

/// x·(σ − 1)·op.
fn sigma_bar_step<C: Field>(op: &SigmaOp<C>, sample: &C) -> SigmaOp<C> {
    let x = Poly::x(sample);
    let mut out: SigmaOp<C> = vec![Poly::zero(); op.len() + 1];
    for (k, c) in op.iter().enumerate() {
        out[k + 1] = out[k + 1].add(&c.shift_int(1));
        out[k] = out[k].sub(c);
    }
    out.iter().map(|c| c.mul(&x)).collect()
}

/// σ̄^i = (x(σ−1))^i expanded in powers of σ, for i = 0..=n.
pub fn sigma_bar_powers<C: Field>(n: usize, sample: &C) -> Vec<Vec<Poly<C>>> {
    let mut out = vec![vec![Poly::constant(sample.one_like())]];
    for i in 0..n {
        let next = sigma_bar_step(&out[i], sample);
        out.push(next);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndicialData<C> {
    /// ā₀, …, ā_n with Σ āᵢ σ̄ⁱ = multiplier · L.
    pub abar: Vec<Poly<C>>,
    pub multiplier: Poly<C>,
    pub rho: usize,
    pub indicial: Poly<C>,
}

pub fn sigma_bar_form<C: Field>(l: &DiffOperator<C>) -> IndicialData<C> {
    let s = l.sample().clone();
    let n = l.order();
    let pw = sigma_bar_powers(n, &s);
    let lift = |p: &Poly<C>| RatFunc::from_poly(p.clone(), &s);
    let mut rem: Vec<RatFunc<C>> = l.coeffs().iter().map(lift).collect();
    let mut abar_r: Vec<RatFunc<C>> = vec![RatFunc::constant(s.zero_like()); n + 1];
    for i in (0..=n).rev() {
        let a = rem[i].div(&lift(&pw[i][i]));
        for (k, c) in pw[i].iter().enumerate() {
            rem[k] = rem[k].sub(&a.mul(&lift(c)));
        }
        abar_r[i] = a;
    }
    debug_assert!(rem.iter().all(Field::is_zero));
    let mut den = Poly::constant(s.one_like());
    for f in &abar_r {
        let g = Poly::gcd(&den, f.den());
        den = den.mul(&f.den().exact_div(&g).unwrap());
    }
    let abar: Vec<Poly<C>> = abar_r
        .iter()
        .map(|f| f.num().mul(&den.exact_div(f.den()).unwrap()))
        .collect();
    let rho = abar.iter().map(|p| p.deg()).max().unwrap().max(0) as usize;
    let indicial = Poly::new(abar.iter().map(|p| p.coeff_or_zero(rho, &s)).collect());
    IndicialData {
        abar,
        multiplier: den,
        rho,
        indicial,
    }
}

pub fn indicial_polynomial<C: Field>(l: &DiffOperator<C>) -> Poly<C> {
    sigma_bar_form(l).indicial
}

/// max(Z(Ind(L)) ∪ {0}).
pub fn polynomial_degree_bound<C: IntegerRoots>(l: &DiffOperator<C>) -> BigInt {
    let ind = indicial_polynomial(l);
    C::integer_roots(&ind)
        .into_iter()
        .max()
        .filter(|m| m.is_positive())
        .unwrap_or_default()
}

/// Basis of the polynomial solutions, each monic, in echelon form from the
/// top degree down, listed by increasing degree.
pub fn polynomial_solutions<C: IntegerRoots>(l: &DiffOperator<C>) -> Result<Vec<Poly<C>>> {
    let bound = polynomial_degree_bound(l);
    let n = bound
        .to_usize()
        .filter(|&n| n <= MAX_SOLUTION_DEGREE)
        .ok_or_else(|| DgtError::TooLarge {
            what: "polynomial solution degree bound".into(),
            size: bound.to_usize().unwrap_or(usize::MAX),
            limit: MAX_SOLUTION_DEGREE,
        })?;
    let s = l.sample().clone();
    let images: Vec<Poly<C>> = (0..=n)
        .map(|k| l.apply_poly(&Poly::monomial(s.one_like(), k)))
        .collect();
    let height = images.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    if height == 0 {
        // every monomial is a solution
        return Ok((0..=n).map(|k| Poly::monomial(s.one_like(), k)).collect());
    }
    let m = Matrix::from_fn(height, n + 1, |d, k| images[k].coeff_or_zero(d, &s));
    let null = m.nullspace();
    if null.is_empty() {
        return Ok(Vec::new());
    }
    // columns reversed so the echelon pivots sit at the top degrees
    let rows: Vec<Vec<C>> = null.into_iter().map(|mut v| {
        v.reverse();
        v
    })
    .collect();
    let (red, _) = rref(rows, n + 1);
    let mut out: Vec<Poly<C>> = red
        .into_iter()
        .map(|mut v| {
            v.reverse();
            Poly::new(v)
        })
        .collect();
    out.sort_by_key(|p| p.deg());
    Ok(out)
}

/// Fields over which the hypergeometric search runs.
pub trait HyperField: IntegerRoots {
    fn factor(p: &Poly<Self>) -> Factorization<Self>;
    fn cmp_elem(a: &Self, b: &Self) -> Ordering;
    fn to_rational(&self) -> Option<Rational>;
}

impl HyperField for Rational {
    fn factor(p: &Poly<Self>) -> Factorization<Self> {
        factor_rational(p)
    }
    fn cmp_elem(a: &Self, b: &Self) -> Ordering {
        a.cmp(b)
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl HyperField for TowerElement {
    fn factor(p: &Poly<Self>) -> Factorization<Self> {
        let levels = p.coeffs().iter().map(|c| c.level() as usize).max().unwrap_or(0);
        factor_tower(p, levels)
    }
    fn cmp_elem(a: &Self, b: &Self) -> Ordering {
        match (a.as_rational(), b.as_rational()) {
            (Some(x), Some(y)) => x.cmp(y),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => format!("{a:?}").cmp(&format!("{b:?}")),
        }
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_rational().cloned()
    }
}

impl HyperField for AlgElem {
    fn factor(p: &Poly<Self>) -> Factorization<Self> {
        crate::field::algext::factor_alg(p)
    }
    fn cmp_elem(a: &Self, b: &Self) -> Ordering {
        a.coords().cmp(&b.coords())
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_rational()
    }
}

pub fn cmp_poly<C: HyperField>(a: &Poly<C>, b: &Poly<C>) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()).rev() {
            let o = C::cmp_elem(x, y);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// All monic divisors, by degree and then coefficients.
pub fn monic_divisors<C: HyperField>(p: &Poly<C>) -> Vec<Poly<C>> {
    let one = Poly::constant(p.lc().unwrap().one_like());
    let mut out = vec![one];
    if p.is_constant() {
        return out;
    }
    for (g, e) in C::factor(p).factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..e {
                cur = cur.mul(&g);
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out.sort_by(cmp_poly);
    out
}

/// One (p, q) pair from 𝒮_L with its Pᵢ and the irreducible factors of f_{p,q}
/// other than y.
#[derive(Clone, Debug)]
pub struct Candidate<C> {
    pub p: Poly<C>,
    pub q: Poly<C>,
    pub ps: Vec<Poly<C>>,
    pub f_factors: Vec<Poly<C>>,
}

pub fn candidate_count<C: HyperField>(l: &DiffOperator<C>) -> usize {
    let n = l.order();
    monic_divisors(&l.coeffs()[0]).len() * monic_divisors(&l.coeffs()[n].shift_int(-(n as i64) + 1)).len()
}

pub fn candidates<C: HyperField>(l: &DiffOperator<C>) -> Vec<Candidate<C>> {
    let n = l.order();
    let a = l.coeffs();
    let ps_div = monic_divisors(&a[0]);
    let qs_div = monic_divisors(&a[n].shift_int(-(n as i64) + 1));
    let mut cache: HashMap<(i64, i64), Vec<Poly<C>>> = HashMap::new();
    let mut out = Vec::new();
    for p in &ps_div {
        for q in &qs_div {
            let ps: Vec<Poly<C>> = (0..=n)
                .map(|i| {
                    let mut acc = a[i].clone();
                    for j in 0..i {
                        acc = acc.mul(&p.shift_int(j as i64));
                    }
                    for j in i..n {
                        acc = acc.mul(&q.shift_int(j as i64));
                    }
                    acc
                })
                .collect();
            // f_{p,q} only sees the leading coefficients, hence only the degrees
            let f_factors = cache
                .entry((p.deg(), q.deg()))
                .or_insert_with(|| {
                    let m = ps.iter().map(|x| x.deg()).max().unwrap();
                    let s = a[0].lc().unwrap();
                    let f = Poly::new(
                        ps.iter()
                            .map(|x| if x.deg() == m { x.lc().unwrap().clone() } else { s.zero_like() })
                            .collect(),
                    );
                    if f.is_constant() {
                        return Vec::new();
                    }
                    C::factor(&f)
                        .factors
                        .into_iter()
                        .map(|(g, _)| g)
                        .filter(|g| !(g.deg() == 1 && g.coeffs()[0].is_zero()))
                        .collect()
                })
                .clone();
            out.push(Candidate {
                p: p.clone(),
                q: q.clone(),
                ps,
                f_factors,
            });
        }
    }
    out
}

/// L_{p,q,β} = Σ βⁱ Pᵢ σⁱ.
fn scaled_operator<C: Field>(ps: &[Poly<C>], beta: &C) -> DiffOperator<C> {
    let mut b = beta.one_like();
    let mut coeffs = Vec::with_capacity(ps.len());
    for p in ps {
        coeffs.push(p.scale(&b));
        b = b.mul(beta);
    }
    DiffOperator { coeffs }
}

/// r = β · p/q · Q(x+1)/Q(x).
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<C> {
    pub beta: C,
    pub p: Poly<C>,
    pub q: Poly<C>,
    pub qpoly: Poly<C>,
    pub rate: RatFunc<C>,
}

impl<C: Field> Certificate<C> {
    fn build(beta: C, p: Poly<C>, q: Poly<C>, qpoly: Poly<C>) -> Self {
        let rate = RatFunc::constant(beta.clone())
            .mul(&RatFunc::new(p.clone(), q.clone()).unwrap())
            .mul(&RatFunc::new(qpoly.shift_int(1), qpoly.clone()).unwrap());
        Certificate {
            beta,
            p,
            q,
            qpoly,
            rate,
        }
    }

    pub fn degree(&self) -> usize {
        self.rate.degree().unwrap_or(0)
    }
}

/// A certificate whose constant lives in ℚ(θ).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgCertificate {
    pub minpoly: Poly<Rational>,
    pub cert: Certificate<AlgElem>,
}

/// Nonlinear factor of f_{p,q} whose roots were not adjoined.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionClass<C> {
    pub p: Poly<C>,
    pub q: Poly<C>,
    pub minpoly: Poly<C>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperOutcome<C> {
    pub certificates: Vec<Certificate<C>>,
    pub algebraic: Vec<AlgCertificate>,
    pub extension_classes: Vec<ExtensionClass<C>>,
}

fn cmp_ratfunc<C: HyperField>(a: &RatFunc<C>, b: &RatFunc<C>) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| cmp_poly(a.num(), b.num()))
        .then_with(|| cmp_poly(a.den(), b.den()))
}

fn lift_alg(p: &Poly<Rational>, ctx: &std::sync::Arc<crate::field::AlgContext>) -> Poly<AlgElem> {
    p.map(|c| AlgElem::from_rational(ctx, c.clone()))
}

fn to_rational_poly<C: HyperField>(p: &Poly<C>) -> Option<Poly<Rational>> {
    p.coeffs()
        .iter()
        .map(|c| c.to_rational())
        .collect::<Option<Vec<_>>>()
        .map(Poly::new)
}

pub fn hyper_certificates<C: HyperField>(l: &DiffOperator<C>, allow_algebraic: bool) -> Result<HyperOutcome<C>> {
    let mut certs: Vec<Certificate<C>> = Vec::new();
    let mut algebraic: Vec<AlgCertificate> = Vec::new();
    let mut classes: Vec<ExtensionClass<C>> = Vec::new();
    for cand in candidates(l) {
        for g in &cand.f_factors {
            if g.deg() == 1 {
                let beta = g.coeffs()[0].neg();
                let op = scaled_operator(&cand.ps, &beta);
                for qp in polynomial_solutions(&op)? {
                    let c = Certificate::build(beta.clone(), cand.p.clone(), cand.q.clone(), qp);
                    if !certs.iter().any(|x| x.rate == c.rate) {
                        certs.push(c);
                    }
                }
                continue;
            }
            let rational_data = to_rational_poly(g).and_then(|g| {
                let ps: Option<Vec<Poly<Rational>>> = cand.ps.iter().map(to_rational_poly).collect();
                let p = to_rational_poly(&cand.p)?;
                let q = to_rational_poly(&cand.q)?;
                Some((g, ps?, p, q))
            });
            match rational_data {
                Some((gq, ps, p, q)) if allow_algebraic => {
                    let ctx = adjoin_root(&gq)?;
                    let ps: Vec<Poly<AlgElem>> = ps.iter().map(|x| lift_alg(x, &ctx)).collect();
                    for beta in roots_in(&gq, &ctx) {
                        let op = scaled_operator(&ps, &beta);
                        for qp in polynomial_solutions(&op)? {
                            let c = Certificate::build(beta.clone(), lift_alg(&p, &ctx), lift_alg(&q, &ctx), qp);
                            if !algebraic.iter().any(|x| x.cert.rate == c.rate) {
                                algebraic.push(AlgCertificate {
                                    minpoly: gq.clone(),
                                    cert: c,
                                });
                            }
                        }
                    }
                }
                _ => {
                    let class = ExtensionClass {
                        p: cand.p.clone(),
                        q: cand.q.clone(),
                        minpoly: g.clone(),
                    };
                    if !classes.contains(&class) {
                        classes.push(class);
                    }
                }
            }
        }
    }
    certs.sort_by(|a, b| cmp_ratfunc(&a.rate, &b.rate));
    algebraic.sort_by(|a, b| {
        cmp_poly(&a.minpoly, &b.minpoly).then_with(|| cmp_ratfunc(&a.cert.rate, &b.cert.rate))
    });
    Ok(HyperOutcome {
        certificates: certs,
        algebraic,
        extension_classes: classes,
    })
}

/// Σ aᵢ ∏_{j<i} r(x+j) = 0.
pub fn verify_certificate<C: Field>(l: &DiffOperator<C>, r: &RatFunc<C>) -> bool {
    if r.is_zero() {
        return false;
    }
    let s = r.sample().clone();
    let mut prod = RatFunc::constant(s.one_like());
    let mut acc = RatFunc::constant(s.zero_like());
    for (i, a) in l.coeffs().iter().enumerate() {
        if i > 0 {
            prod = prod.mul(&r.shift(i as i64 - 1));
        }
        acc = acc.add(&RatFunc::from_poly(a.clone(), &s).mul(&prod));
    }
    acc.is_zero()
}

/// Lifts an operator over ℚ to ℚ(θ) to check an algebraic certificate.
pub fn verify_alg_certificate(l: &DiffOperator<Rational>, c: &AlgCertificate) -> bool {
    let ctx = c.cert.beta.ctx().clone();
    verify_certificate(&l.map(|x| AlgElem::from_rational(&ctx, x.clone())), &c.cert.rate)
}

/// N(L) = max(Z(∏ Ind(L_{p,q,β})) ∪ {0}) + max(deg a_n, deg a₀), the
/// product running over all (p, q) and all nonzero roots β of f_{p,q},
/// algebraic ones included.
/// The leading `c.len()` coefficients of a nonzero polynomial of degree
/// `deg`: c[s] multiplies x^{deg−s}.
#[derive(Clone, Debug)]
struct Top<C> {
    deg: i64,
    c: Vec<C>,
}

impl<C: Field> Top<C> {
    fn of(p: &Poly<C>, k: usize) -> Self {
        let zero = p.lc().unwrap().zero_like();
        let cs = p.coeffs();
        Top {
            deg: p.deg(),
            c: (0..k).map(|s| cs.len().checked_sub(s + 1).map_or(zero.clone(), |t| cs[t].clone())).collect(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let k = self.c.len();
        let zero = self.c[0].zero_like();
        let c = (0..k)
            .map(|r| (0..=r).fold(zero.clone(), |acc, s| acc.add(&self.c[s].mul(&o.c[r - s]))))
            .collect();
        Top { deg: self.deg + o.deg, c }
    }

    /// Leading part of p(x + j).
    fn of_shift(p: &Poly<C>, j: i64, k: usize) -> Self {
        let top = Top::of(p, k);
        let one = top.c[0].one_like();
        let jj = one.from_int_like(j);
        let c = (0..k)
            .map(|r| {
                (0..=r).fold(one.zero_like(), |acc, s| {
                    let d = top.deg - s as i64;
                    if d < 0 || top.c[s].is_zero() {
                        return acc;
                    }
                    let b = Rational::from_integer(num_integer::binomial(BigInt::from(d), BigInt::from(r - s)));
                    acc.add(&top.c[s].mul(&one.from_rational_like(&b)).mul(&jj.pow((r - s) as u64)))
                })
            })
            .collect();
        Top { deg: top.deg, c }
    }

    fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> Top<D> {
        Top { deg: self.deg, c: self.c.iter().map(f).collect() }
    }
}

/// Ind of Σ βⁱ Pᵢ σⁱ from the leading parts of the Pᵢ, through
/// L(x^m) = Σᵢ βⁱ Pᵢ(x)(x+i)^m = Ind(m) x^{m+e} + lower terms.
/// Order+1 leading coefficients per Pᵢ always suffice; with fewer the
/// answer may be `None`.
fn indicial_from_tops<C: Field>(tops: &[Top<C>], beta: &C) -> Option<Poly<C>> {
    let n = tops.len() - 1;
    let dmax = tops.iter().map(|t| t.deg).max().unwrap();
    let one = beta.one_like();
    let mut bpow = Vec::with_capacity(n + 1);
    let mut b = one.clone();
    for _ in 0..=n {
        bpow.push(b.clone());
        b = b.mul(beta);
    }
    // C(y, k) as polynomials in y
    let y = Poly::new(vec![one.zero_like(), one.clone()]);
    let mut binoms = vec![Poly::constant(one.clone())];
    for k in 1..=n {
        let f = y.sub(&Poly::constant(one.from_int_like(k as i64 - 1)));
        let next = binoms[k - 1].mul(&f).scale(&one.from_int_like(k as i64).inv());
        binoms.push(next);
    }
    for r in 0..=n.min(tops[0].c.len() - 1) {
        let mut ind = Poly::zero();
        for (k, bk) in binoms.iter().enumerate().take(r + 1) {
            // coefficient of x^{dmax − r + k} in Σᵢ βⁱ iᵏ Pᵢ
            let mut s = one.zero_like();
            for (i, t) in tops.iter().enumerate() {
                let off = t.deg - (dmax - r as i64 + k as i64);
                if off < 0 || off as usize >= t.c.len() || t.c[off as usize].is_zero() {
                    continue;
                }
                let ik = one.from_int_like(i as i64).pow(k as u64);
                s = s.add(&t.c[off as usize].mul(&bpow[i]).mul(&ik));
            }
            if !s.is_zero() {
                ind = ind.add(&bk.scale(&s));
            }
        }
        if !ind.is_zero() {
            return Some(ind);
        }
    }
    assert!(tops[0].c.len() <= n, "a nonzero operator has a nonzero indicial polynomial");
    None
}

fn unsupported_tower() -> DgtError {
    DgtError::UnsupportedConstantField("roots of f algebraic over a parameter tower".into())
}

/// Integer roots of Ind(L_{p,q,β}) for every root β of the factor g, or
/// `None` when the leading parts are too short.
fn factor_roots<C: HyperField>(tops: &[Top<C>], g: &Poly<C>) -> Result<Option<Vec<BigInt>>> {
    if g.deg() == 1 {
        return Ok(indicial_from_tops(tops, &g.coeffs()[0].neg()).map(|ind| C::integer_roots(&ind)));
    }
    let gq = to_rational_poly(g).ok_or_else(unsupported_tower)?;
    let ctx = adjoin_root(&gq)?;
    let qtops: Vec<Top<AlgElem>> = tops
        .iter()
        .map(|t| {
            let c: Option<Vec<Rational>> = t.c.iter().map(|x| x.to_rational()).collect();
            c.map(|c| Top { deg: t.deg, c }.map(|x| AlgElem::from_rational(&ctx, x.clone())))
        })
        .collect::<Option<_>>()
        .ok_or_else(unsupported_tower)?;
    Ok(indicial_from_tops(&qtops, &AlgElem::theta(&ctx)).map(|ind| AlgElem::integer_roots(&ind)))
}

/// Leading parts of Pᵢ = aᵢ ∏_{j<i} p(x+j) ∏_{i≤j<n} q(x+j).
fn candidate_tops<C: Field>(a: &[Poly<C>], p: &Poly<C>, q: &Poly<C>, k: usize) -> Vec<Top<C>> {
    let n = a.len() - 1;
    let one = Top::of(&Poly::constant(p.lc().unwrap().one_like()), k);
    let mut prefix = vec![one.clone()];
    for j in 0..n {
        let next = prefix[j].mul(&Top::of_shift(p, j as i64, k));
        prefix.push(next);
    }
    let mut suffix = vec![one; n + 1];
    for j in (0..n).rev() {
        suffix[j] = suffix[j + 1].mul(&Top::of_shift(q, j as i64, k));
    }
    (0..=n).map(|i| Top::of(&a[i], k).mul(&prefix[i]).mul(&suffix[i])).collect()
}

/// Largest integer root of Ind(L_{p,q,β}) over 𝒮_L, plus max(deg a_n, deg a₀).
pub fn hyper_bound<C: HyperField>(l: &DiffOperator<C>) -> Result<BigInt> {
    let n = l.order();
    let a = l.coeffs();
    let ps_div = monic_divisors(&a[0]);
    let qs_div = monic_divisors(&a[n].shift_int(-(n as i64) + 1));
    let mut factor_cache: HashMap<(i64, i64), Vec<Poly<C>>> = HashMap::new();
    let mut best = BigInt::default();
    for p in &ps_div {
        for q in &qs_div {
            // Ind usually shows up within the first two coefficients; widen
            // only when it does not
            let mut k = 2.min(n + 1);
            let mut tops = candidate_tops(a, p, q, k);
            let factors = factor_cache
                .entry((p.deg(), q.deg()))
                .or_insert_with(|| {
                    let m = tops.iter().map(|t| t.deg).max().unwrap();
                    let zero = tops[0].c[0].zero_like();
                    let f = Poly::new(tops.iter().map(|t| if t.deg == m { t.c[0].clone() } else { zero.clone() }).collect());
                    if f.is_constant() {
                        return Vec::new();
                    }
                    C::factor(&f)
                        .factors
                        .into_iter()
                        .map(|(g, _)| g)
                        .filter(|g| !(g.deg() == 1 && g.coeffs()[0].is_zero()))
                        .collect()
                })
                .clone();
            for g in &factors {
                let roots = loop {
                    if let Some(r) = factor_roots(&tops, g)? {
                        break r;
                    }
                    k = (2 * k).min(n + 1);
                    tops = candidate_tops(a, p, q, k);
                };
                if let Some(m) = roots.into_iter().max() {
                    best = best.max(m);
                }
            }
        }
    }
    let d = a[n].deg().max(a[0].deg()).max(0);
    Ok(best + BigInt::from(d))
}

/// Companion sizes C(ℓ', l) above this are refused by default.
pub const DEFAULT_COMPANION_LIMIT: usize = 300;

#[derive(Clone, Debug, PartialEq)]
pub struct BoundTerm {
    pub l: usize,
    pub size: usize,
    /// max degree over the entries of T_l⁻¹
    pub t: usize,
    /// hyper-bound of L_l
    pub hyper: BigInt,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientBound {
    pub bound: BigInt,
    pub monomials: usize,
    pub mu: usize,
    pub terms: Vec<BoundTerm>,
}

/// N = max_l (2ℓ'μ̃ t_l + 2ℓ'μ̃(μ̃−1) N_l) over the systems
/// σ(Y) = Φ_{ℓ',l}(Sym_ν(A))^{−t} Y, l = 1..ℓ'.
pub fn coefficient_bound(a: &Matrix<Fx>, nu: u32, limit: usize) -> Result<CoefficientBound> {
    let s = sym_power(a, nu);
    let ell = s.nrows();
    let sizes: Vec<usize> = (1..=ell).map(|l| binomial(ell, l)).collect();
    if let Some((i, &size)) = sizes.iter().enumerate().find(|(_, &z)| z > limit) {
        return Err(DgtError::TooLarge {
            what: format!("companion size C({ell}, {})", i + 1),
            size,
            limit,
        });
    }
    let mu = *sizes.iter().max().unwrap();
    let mut terms = Vec::with_capacity(ell);
    for l in 1..=ell {
        let b = inverse_ratfunc(&minor_map(&s, l)?)?.transpose();
        let cf = companion_form(&b)?;
        let t = cf.tinv.entries().iter().filter_map(|f| f.degree()).max().unwrap_or(0);
        let hyper = hyper_bound(&cf.operator())?;
        terms.push(BoundTerm {
            l,
            size: sizes[l - 1],
            t,
            hyper,
        });
    }
    let c = BigInt::from(2 * ell * mu);
    let bound = terms
        .iter()
        .map(|x| &c * x.t + &c * (mu - 1) * &x.hyper)
        .max()
        .unwrap();
    Ok(CoefficientBound {
        bound,
        monomials: ell,
        mu,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    fn op(c: &[&[i64]]) -> DiffOperator<Rational> {
        DiffOperator::new(c.iter().map(|v| Poly::from_ints(v)).collect()).unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc<Rational> {
        RatFunc::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    /// Leading behaviour of L(x^m) read off directly:
    /// L(x^m) = Σ_k C(m,k) Q_k(x) x^{m−k} with Q_k = Σᵢ iᵏ Pᵢ.
    fn ind_oracle(l: &DiffOperator<Rational>) -> Poly<Rational> {
        let n = l.order();
        let dmax = l.coeffs().iter().map(|p| p.deg()).max().unwrap();
        let kmax = (dmax as usize) + n + 2;
        let qs: Vec<Poly<Rational>> = (0..=kmax)
            .map(|k| {
                let mut acc = Poly::zero();
                for (i, p) in l.coeffs().iter().enumerate() {
                    acc = acc.add(&p.scale(&int((i as i64).pow(k as u32))));
                }
                acc
            })
            .collect();
        let e = qs
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(k, q)| q.deg() - k as i64)
            .max()
            .unwrap();
        let mut out = Poly::zero();
        for (k, q) in qs.iter().enumerate() {
            if !q.is_zero() && q.deg() - k as i64 == e {
                // C(y, k) = y(y−1)…(y−k+1)/k!
                let mut b = Poly::constant(int(1));
                for j in 0..k {
                    b = b.mul(&Poly::from_ints(&[-(j as i64), 1])).scale(&rat(1, j as i64 + 1));
                }
                out = out.add(&b.scale(q.lc().unwrap()));
            }
        }
        out
    }

    fn proportional(a: &Poly<Rational>, b: &Poly<Rational>) -> bool {
        a.monic() == b.monic()
    }

    #[test]
    fn sigma_bar_examples() {
        let d = sigma_bar_form(&op(&[&[-1], &[1]]));
        assert_eq!(d.abar, vec![Poly::zero(), Poly::from_ints(&[1])]);
        assert_eq!(d.rho, 0);
        assert_eq!(d.indicial, Poly::from_ints(&[0, 1]));
        let d = sigma_bar_form(&op(&[&[-1, -1], &[0, 1]]));
        assert_eq!(d.abar, vec![Poly::from_ints(&[-1]), Poly::from_ints(&[1])]);
        assert_eq!(d.indicial, Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn sigma_bar_round_trip() {
        let l = op(&[&[3, 0, 1], &[-2, 5], &[1, 1, 1]]);
        let d = sigma_bar_form(&l);
        let pw = sigma_bar_powers(l.order(), &int(1));
        let mut sum = vec![Poly::<Rational>::zero(); l.order() + 1];
        for (i, a) in d.abar.iter().enumerate() {
            for (k, c) in pw[i].iter().enumerate() {
                sum[k] = sum[k].add(&a.mul(c));
            }
        }
        let scaled: Vec<Poly<Rational>> = l.coeffs().iter().map(|c| c.mul(&d.multiplier)).collect();
        assert_eq!(sum, scaled);
        assert!(proportional(&d.indicial, &ind_oracle(&l)));
    }

    #[test]
    fn polynomial_solution_examples() {
        let sols = polynomial_solutions(&op(&[&[-1, -1], &[0, 1]])).unwrap();
        assert_eq!(sols, vec![Poly::from_ints(&[0, 1])]);
        let sols = polynomial_solutions(&op(&[&[-1], &[1]])).unwrap();
        assert_eq!(sols, vec![Poly::from_ints(&[1])]);
        let l = op(&[&[1], &[-2], &[1]]);
        let ind = indicial_polynomial(&l);
        let z = Rational::integer_roots(&ind);
        assert!(z.contains(&BigInt::from(0)) && z.contains(&BigInt::from(1)));
        let sols = polynomial_solutions(&l).unwrap();
        assert_eq!(sols, vec![Poly::from_ints(&[1]), Poly::from_ints(&[0, 1])]);
    }

    #[test]
    fn hyper_examples() {
        let l = op(&[&[-1, -1], &[1]]);
        let h = hyper_certificates(&l, false).unwrap();
        let rates: Vec<_> = h.certificates.iter().map(|c| c.rate.clone()).collect();
        assert_eq!(rates, vec![rf(&[1, 1], &[1])]);
        let l = op(&[&[6], &[-5], &[1]]);
        let h = hyper_certificates(&l, false).unwrap();
        let rates: Vec<_> = h.certificates.iter().map(|c| c.rate.clone()).collect();
        assert_eq!(rates, vec![rf(&[2], &[1]), rf(&[3], &[1])]);
        for c in &h.certificates {
            assert!(verify_certificate(&l, &c.rate));
        }
    }

    #[test]
    fn fibonacci_needs_extension() {
        let l = op(&[&[-1], &[-1], &[1]]);
        let h = hyper_certificates(&l, false).unwrap();
        assert!(h.certificates.is_empty());
        assert_eq!(h.extension_classes.len(), 1);
        assert_eq!(h.extension_classes[0].minpoly, Poly::from_ints(&[-1, -1, 1]));
        let h = hyper_certificates(&l, true).unwrap();
        assert_eq!(h.algebraic.len(), 2);
        for c in &h.algebraic {
            assert_eq!(c.minpoly, Poly::from_ints(&[-1, -1, 1]));
            assert!(verify_alg_certificate(&l, c));
        }
    }

    #[test]
    fn verification() {
        assert!(verify_certificate(&op(&[&[-1, -1], &[1]]), &rf(&[1, 1], &[1])));
        assert!(verify_certificate(&op(&[&[6], &[-5], &[1]]), &rf(&[2], &[1])));
        assert!(!verify_certificate(&op(&[&[0, -1], &[1]]), &rf(&[1, 1], &[1])));
    }

    #[test]
    fn bounds_cover_certificates() {
        for l in [op(&[&[-1, -1], &[1]]), op(&[&[-2], &[1]]), op(&[&[6], &[-5], &[1]])] {
            let n = hyper_bound(&l).unwrap();
            for c in hyper_certificates(&l, true).unwrap().certificates {
                assert!(BigInt::from(c.degree()) <= n);
            }
        }
        assert!(hyper_bound(&op(&[&[-1, -1], &[1]])).unwrap() >= BigInt::from(1));
    }

    #[test]
    fn leading_parts_give_the_same_indicial() {
        let ls = [
            op(&[&[-1, -1], &[1]]),
            op(&[&[6], &[-5], &[1]]),
            op(&[&[0, 2, 1], &[3, -1], &[1, 0, 0, 2]]),
            op(&[&[1, 1], &[0, 0, 5], &[-2, 1], &[7, 0, 1]]),
        ];
        for l in &ls {
            let n = l.order();
            for cand in candidates(l) {
                let tops: Vec<Top<Rational>> = cand.ps.iter().map(|p| Top::of(p, n + 1)).collect();
                for beta in [int(1), int(-2), rat(1, 3)] {
                    let slow = indicial_polynomial(&scaled_operator(&cand.ps, &beta)).monic();
                    assert_eq!(indicial_from_tops(&tops, &beta).unwrap().monic(), slow);
                }
            }
        }
    }

    #[test]
    fn shifted_leading_part() {
        let p = Poly::from_ints(&[5, -3, 0, 2, 1]);
        for j in [-2, 0, 3] {
            let full = Top::of(&p.shift_int(j), 3);
            let fast = Top::of_shift(&p, j, 3);
            assert_eq!((full.deg, full.c), (fast.deg, fast.c));
        }
        let a = Poly::from_ints(&[1, 2, 3]);
        let b = Poly::from_ints(&[-1, 0, 4, 1]);
        let prod = Top::of(&a.mul(&b), 4);
        let tm = Top::of(&a, 4).mul(&Top::of(&b, 4));
        assert_eq!((prod.deg, prod.c), (tm.deg, tm.c));
    }
}

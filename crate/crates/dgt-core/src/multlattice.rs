//! Shift orbits of rational functions and multiplicative relation lattices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{DgtError, Result};
use crate::field::factor::{factor_mpoly, factor_tower};
use crate::field::mpoly::{ratfunc_to_fraction, tower_to_fraction, MPoly};
use crate::field::rational::floor;
use crate::field::{max_level, Field, Fx, Poly, RatFunc, Rational, TowerElement};
use crate::lattice::{kernel_lattice, IntLattice, IntMatrix};

/// a = η · σ^ℓ(f)/f · ∏ repᵉ.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitDecomposition {
    pub eta: TowerElement,
    pub terms: Vec<(Poly<TowerElement>, i64)>,
    pub witness: Fx,
}

impl OrbitDecomposition {
    pub fn reconstruct(&self, ell: u32) -> Fx {
        let one = TowerElement::from(1);
        let mut acc = RatFunc::constant(self.eta.clone());
        acc = acc.mul(&self.witness.shift(ell as i64)).div(&self.witness);
        for (rep, e) in &self.terms {
            acc = acc.mul(&RatFunc::from_poly(rep.clone(), &one).powi(*e));
        }
        acc
    }
}

fn levels(p: &Poly<TowerElement>) -> usize {
    p.coeffs().iter().map(|c| c.level() as usize).max().unwrap_or(0)
}

/// Canonical member of the σ^ℓ-orbit of a monic irreducible `g` and the
/// integer j with g(x) = rep(x + jℓ).
fn canonical_rep(g: &Poly<TowerElement>, ell: u32) -> (Poly<TowerElement>, i64) {
    if ell == 0 {
        return (g.clone(), 0);
    }
    let d = g.degree().unwrap();
    let c = g.coeff(d - 1).unwrap().const_term();
    let s = c / Rational::from_integer(BigInt::from(d as u64 * ell as u64));
    // subleading/(ℓ·d) of rep lands in [0, 1)
    let k = -floor(&s).to_i64().expect("shift out of range");
    (g.shift_int(k * ell as i64), -k)
}

/// rep(x + jℓ) / rep(x) = σ^ℓ(W)/W.
fn telescope(rep: &Poly<TowerElement>, j: i64, ell: u32) -> Fx {
    let one = TowerElement::from(1);
    let l = ell as i64;
    let mut acc = Poly::constant(one.clone());
    let range = if j > 0 { 0..j } else { j..0 };
    for i in range {
        acc = acc.mul(&rep.shift_int(i * l));
    }
    let w = RatFunc::from_poly(acc, &one);
    if j >= 0 {
        w
    } else {
        w.inv()
    }
}

pub fn shift_orbit_decompose(a: &Fx, ell: u32) -> OrbitDecomposition {
    assert!(!Field::is_zero(a), "orbit decomposition of zero");
    let one = TowerElement::from(1);
    let eta = a.num().lc().unwrap().clone();
    let mut exps: BTreeMap<usize, (Poly<TowerElement>, i64)> = BTreeMap::new();
    let mut reps: Vec<Poly<TowerElement>> = Vec::new();
    let mut witness = RatFunc::constant(one.clone());
    for (side, sign) in [(a.num(), 1i64), (a.den(), -1i64)] {
        if side.is_constant() {
            continue;
        }
        let f = factor_tower(side, levels(side));
        for (g, e) in f.factors {
            let (rep, j) = canonical_rep(&g, ell);
            let e = e as i64 * sign;
            let idx = match reps.iter().position(|r| *r == rep) {
                Some(i) => i,
                None => {
                    reps.push(rep.clone());
                    reps.len() - 1
                }
            };
            exps.entry(idx).or_insert((rep.clone(), 0)).1 += e;
            if j != 0 {
                witness = witness.mul(&telescope(&rep, j, ell).powi(e));
            }
        }
    }
    let mut terms: Vec<(Poly<TowerElement>, i64)> =
        exps.into_values().filter(|(_, e)| *e != 0).collect();
    terms.sort_by(|a, b| cmp_tower_poly(&a.0, &b.0));
    OrbitDecomposition {
        eta,
        terms,
        witness,
    }
}

fn cmp_tower_poly(a: &Poly<TowerElement>, b: &Poly<TowerElement>) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| format!("{:?}", a.coeffs()).cmp(&format!("{:?}", b.coeffs())))
}

/// 𝒵(a₁,…,a_m; ℓ) together with the data needed to produce witnesses.
#[derive(Clone, Debug)]
pub struct ZLattice {
    pub lattice: IntLattice,
    pub decompositions: Vec<OrbitDecomposition>,
    pub ell: u32,
}

impl ZLattice {
    /// f with ∏ aᵢ^{dᵢ} = σ^ℓ(f)/f, for d in the lattice.
    pub fn witness(&self, d: &[BigInt]) -> Fx {
        let mut f = crate::field::fx_int(1);
        for (dec, k) in self.decompositions.iter().zip(d) {
            if k.is_zero() {
                continue;
            }
            let k = k.to_i64().expect("exponent out of range");
            f = f.mul(&dec.witness.powi(k));
        }
        f
    }

    pub fn basis_with_witnesses(&self) -> Vec<(Vec<BigInt>, Fx)> {
        self.lattice
            .basis()
            .iter()
            .map(|d| (d.clone(), self.witness(d)))
            .collect()
    }
}

/// Checks ∏ aᵢ^{dᵢ} · f = σ^ℓ(f) exactly.
pub fn verify_relation(a: &[Fx], d: &[BigInt], f: &Fx, ell: u32) -> bool {
    let mut prod = crate::field::fx_int(1);
    for (ai, k) in a.iter().zip(d) {
        if let Some(k) = k.to_i64() {
            prod = prod.mul(&ai.powi(k));
        } else {
            return false;
        }
    }
    prod.mul(f) == f.shift(ell as i64)
}

pub fn z_lattice(a: &[Fx], ell: u32) -> ZLattice {
    let m = a.len();
    let decs: Vec<OrbitDecomposition> = a.iter().map(|x| shift_orbit_decompose(x, ell)).collect();
    let etas: Vec<TowerElement> = decs.iter().map(|d| d.eta.clone()).collect();
    let consts = const_mult_relation_lattice(&etas);
    let mut reps: Vec<Poly<TowerElement>> = Vec::new();
    for d in &decs {
        for (r, _) in &d.terms {
            if !reps.contains(r) {
                reps.push(r.clone());
            }
        }
    }
    let lattice = if reps.is_empty() || consts.is_zero() {
        consts
    } else {
        let e: Vec<Vec<BigInt>> = reps
            .iter()
            .map(|r| {
                decs.iter()
                    .map(|d| {
                        BigInt::from(d.terms.iter().find(|(q, _)| q == r).map_or(0, |t| t.1))
                    })
                    .collect()
            })
            .collect();
        restrict_kernel(&consts, &e, m)
    };
    ZLattice {
        lattice,
        decompositions: decs,
        ell,
    }
}

/// {v ∈ L : E·v = 0}.
fn restrict_kernel(l: &IntLattice, e: &[Vec<BigInt>], m: usize) -> IntLattice {
    let b = l.basis();
    let eb: Vec<Vec<BigInt>> = e
        .iter()
        .map(|row| b.iter().map(|bv| crate::lattice::dot(row, bv)).collect())
        .collect();
    let k = kernel_lattice(&IntMatrix::new(b.len(), eb));
    let gens = k
        .basis()
        .iter()
        .map(|c| crate::lattice::combine(c, b, m))
        .collect();
    IntLattice::from_generators(m, gens)
}

pub fn is_mult_sigma_independent(a: &[Fx], ell: u32) -> bool {
    z_lattice(a, ell).lattice.is_zero()
}

/// Pairwise coprime integers > 1, none a perfect power, such that every
/// input is a product of their powers.
pub fn coprime_basis(inputs: &[BigInt]) -> Vec<BigInt> {
    let mut basis: Vec<BigInt> = inputs
        .iter()
        .map(|x| x.abs())
        .filter(|x| *x > BigInt::one())
        .collect();
    loop {
        basis.sort();
        basis.dedup();
        let mut split = None;
        'outer: for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let g = basis[i].gcd(&basis[j]);
                if !g.is_one() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else { break };
        let a = &basis[i] / &g;
        let b = &basis[j] / &g;
        basis.remove(j);
        basis.remove(i);
        basis.extend([a, b, g].into_iter().filter(|x| *x > BigInt::one()));
    }
    let mut out: Vec<BigInt> = basis.into_iter().map(|b| perfect_power_root(&b)).collect();
    out.sort();
    out.dedup();
    out
}

fn perfect_power_root(b: &BigInt) -> BigInt {
    let mut b = b.clone();
    'again: loop {
        let bits = b.bits() as u32;
        for k in (2..=bits.max(2)).rev() {
            let r = b.nth_root(k);
            if r > BigInt::one() && num_traits::pow(r.clone(), k as usize) == b {
                b = r;
                continue 'again;
            }
        }
        return b;
    }
}

fn valuation(n: &BigInt, b: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % b).is_zero() {
        n /= b;
        v += 1;
    }
    v
}

fn rational_valuations(q: &Rational, basis: &[BigInt]) -> Vec<i64> {
    basis
        .iter()
        .map(|b| valuation(q.numer(), b) - valuation(q.denom(), b))
        .collect()
}

/// Splits a nonzero tower constant into c·∏ Pⱼ^{eⱼ} with c rational and Pⱼ
/// primitive irreducible in the parameter ring.
fn tower_factors(e: &TowerElement, nvars: usize) -> (Rational, Vec<(MPoly, i64)>) {
    if let Some(r) = e.as_rational() {
        return (r.clone(), Vec::new());
    }
    let (n, d) = tower_to_fraction(e, nvars);
    let fnum = factor_mpoly(&n);
    let fden = factor_mpoly(&d);
    let mut out: Vec<(MPoly, i64)> = Vec::new();
    for (f, k, s) in fnum
        .factors
        .into_iter()
        .map(|(f, k)| (f, k, 1i64))
        .chain(fden.factors.into_iter().map(|(f, k)| (f, k, -1i64)))
    {
        match out.iter_mut().find(|(g, _)| *g == f) {
            Some(x) => x.1 += s * k as i64,
            None => out.push((f, s * k as i64)),
        }
    }
    out.retain(|x| x.1 != 0);
    (fnum.unit / fden.unit, out)
}

/// {d : ∏ ηᵢ^{dᵢ} = 1}.
pub fn const_mult_relation_lattice(etas: &[TowerElement]) -> IntLattice {
    let m = etas.len();
    assert!(etas.iter().all(|e| !Field::is_zero(e)), "zero constant in a multiplicative group");
    let nvars = etas.iter().map(|e| e.level() as usize).max().unwrap_or(0);
    let split: Vec<(Rational, Vec<(MPoly, i64)>)> =
        etas.iter().map(|e| tower_factors(e, nvars)).collect();
    let mut polys: Vec<MPoly> = Vec::new();
    for (_, fs) in &split {
        for (f, _) in fs {
            if !polys.contains(f) {
                polys.push(f.clone());
            }
        }
    }
    let ints: Vec<BigInt> = split
        .iter()
        .flat_map(|(c, _)| [c.numer().clone(), c.denom().clone()])
        .collect();
    let basis = coprime_basis(&ints);
    // columns: d₁..d_m and an auxiliary z for the sign congruence
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for p in &polys {
        let mut r: Vec<BigInt> = split
            .iter()
            .map(|(_, fs)| BigInt::from(fs.iter().find(|(f, _)| f == p).map_or(0, |x| x.1)))
            .collect();
        r.push(BigInt::zero());
        rows.push(r);
    }
    let vals: Vec<Vec<i64>> = split.iter().map(|(c, _)| rational_valuations(c, &basis)).collect();
    for j in 0..basis.len() {
        let mut r: Vec<BigInt> = vals.iter().map(|v| BigInt::from(v[j])).collect();
        r.push(BigInt::zero());
        rows.push(r);
    }
    let mut sign: Vec<BigInt> = split
        .iter()
        .map(|(c, _)| BigInt::from(c.is_negative() as i64))
        .collect();
    sign.push(BigInt::from(-2));
    rows.push(sign);
    let k = kernel_lattice(&IntMatrix::new(m + 1, rows));
    IntLattice::from_generators(m, k.basis().iter().map(|v| v[..m].to_vec()).collect())
}

/// Generators of the radical {α ∈ ℚ* : α^l ∈ Γ for some l > 0}.
pub fn radical_subgroup(gens: &[Rational]) -> Result<Vec<Rational>> {
    if gens.iter().any(Zero::is_zero) {
        return Err(DgtError::Invalid("zero is not in the multiplicative group".into()));
    }
    let ints: Vec<BigInt> = gens
        .iter()
        .flat_map(|c| [c.numer().clone(), c.denom().clone()])
        .collect();
    let basis = coprime_basis(&ints);
    let s = basis.len();
    let vecs: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| rational_valuations(g, &basis).into_iter().map(BigInt::from).collect())
        .collect();
    let sat = IntLattice::from_generators(s, vecs).saturate();
    let mut out: Vec<Rational> = sat
        .basis()
        .iter()
        .map(|r| {
            let mut acc = Rational::one();
            for (b, e) in basis.iter().zip(r) {
                let e = e.to_i32().expect("exponent out of range");
                acc *= num_traits::pow::pow(Rational::from_integer(b.clone()), e.unsigned_abs() as usize)
                    .pow(e.signum());
            }
            acc
        })
        .collect();
    out.push(-Rational::one());
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Additive,
    Multiplicative,
}

/// A finitely generated subgroup of 𝔾_a or 𝔾_m.
#[derive(Clone, Debug, PartialEq)]
pub struct FgSubgroup {
    pub kind: GroupKind,
    pub generators: Vec<Fx>,
}

pub fn relation_lattice(g: &FgSubgroup) -> IntLattice {
    match g.kind {
        GroupKind::Multiplicative => z_lattice(&g.generators, 0).lattice,
        GroupKind::Additive => additive_relations(&g.generators),
    }
}

/// {d : Σ dᵢ gᵢ = 0}.
fn additive_relations(gens: &[Fx]) -> IntLattice {
    let m = gens.len();
    let np = max_level(gens);
    let fr: Vec<(MPoly, MPoly)> = gens.iter().map(|g| ratfunc_to_fraction(g, np)).collect();
    let mut common = MPoly::one(np + 1);
    for (_, d) in &fr {
        if common.exact_div(d).is_none() {
            common = common.mul(d);
        }
    }
    let nums: Vec<MPoly> = fr
        .iter()
        .map(|(n, d)| n.mul(&common.exact_div(d).unwrap()))
        .collect();
    let mut monos: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
    for (i, n) in nums.iter().enumerate() {
        for (e, c) in n.terms() {
            monos.entry(e.clone()).or_insert_with(|| vec![Rational::zero(); m])[i] = c.clone();
        }
    }
    let rows: Vec<Vec<BigInt>> = monos
        .into_values()
        .map(|r| {
            let l = crate::field::rational::denom_lcm(&r);
            r.iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return IntLattice::full(m);
    }
    kernel_lattice(&IntMatrix::new(m, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{fx_const, fx_int, fx_x, int, rat};

    fn x() -> Fx {
        fx_x()
    }
    fn c(n: i64) -> Fx {
        fx_int(n)
    }

    #[test]
    fn decompose_shifted_linear() {
        let a = x().add(&c(2));
        let d = shift_orbit_decompose(&a, 1);
        assert_eq!(d.eta, TowerElement::from(1));
        assert_eq!(d.terms, vec![(Poly::x(&TowerElement::from(1)), 1)]);
        assert_eq!(d.reconstruct(1), a);
        assert_eq!(d.witness, x().mul(&x().add(&c(1))));
    }

    #[test]
    fn half_shift_is_separate_orbit() {
        let a = x().mul(&x().add(&fx_const(TowerElement::from(rat(1, 2)))));
        let d = shift_orbit_decompose(&a, 1);
        assert_eq!(d.terms.len(), 2);
        assert_eq!(d.reconstruct(1), a);
    }

    #[test]
    fn constant_relations() {
        let l = const_mult_relation_lattice(&[TowerElement::from(2), TowerElement::from(3)]);
        assert!(l.is_zero());
        let l = const_mult_relation_lattice(&[TowerElement::from(4), TowerElement::from(2)]);
        assert_eq!(l, IntLattice::from_i64(2, &[vec![1, -2]]));
        let l = const_mult_relation_lattice(&[TowerElement::from(-1)]);
        assert_eq!(l, IntLattice::from_i64(1, &[vec![2]]));
        let s = TowerElement::param(0);
        let one = TowerElement::from(1);
        let l = const_mult_relation_lattice(&[one.sub(&s), one.add(&s)]);
        assert!(l.is_zero());
    }

    #[test]
    fn z_lattice_merges_orbits() {
        let a = [c(2), x(), x().add(&c(2))];
        let z = z_lattice(&a, 1);
        assert_eq!(z.lattice, IntLattice::from_i64(3, &[vec![0, 1, -1]]));
        for (d, f) in z.basis_with_witnesses() {
            assert!(verify_relation(&a, &d, &f, 1));
        }
    }

    #[test]
    fn radicals() {
        assert_eq!(radical_subgroup(&[int(4)]).unwrap(), vec![int(2), int(-1)]);
        assert_eq!(radical_subgroup(&[]).unwrap(), vec![int(-1)]);
        assert_eq!(radical_subgroup(&[int(8), int(2)]).unwrap(), vec![int(2), int(-1)]);
    }

    #[test]
    fn additive() {
        let t = fx_const(TowerElement::param(0));
        let g = FgSubgroup {
            kind: GroupKind::Additive,
            generators: vec![t, c(1)],
        };
        assert!(relation_lattice(&g).is_zero());
        let g = FgSubgroup {
            kind: GroupKind::Additive,
            generators: vec![fx_const(TowerElement::from(rat(1, 2))), c(1)],
        };
        assert_eq!(relation_lattice(&g), IntLattice::from_i64(2, &[vec![2, -1]]));
        let g = FgSubgroup {
            kind: GroupKind::Additive,
            generators: vec![c(0)],
        };
        assert_eq!(relation_lattice(&g), IntLattice::full(1));
    }
}

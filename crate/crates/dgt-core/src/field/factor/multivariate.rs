//! Factorization in ℚ[v₀,…,v_k] by Kronecker substitution: pack the
//! variables into one through v_i ↦ z^(Dⁱ), factor the image over ℚ, and
//! recover true factors by recombining image factors and verifying each
//! candidate with exact multivariate division.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::super::mpoly::MPoly;
use super::super::Rational;
use super::zassenhaus::factor_squarefree_primitive;
use super::{squarefree_decomposition, to_primitive_integer};

/// unit · ∏ factorᵉ with primitive integer factors whose leading
/// coefficient is positive.
#[derive(Clone, Debug, PartialEq)]
pub struct MFactorization {
    pub unit: Rational,
    pub factors: Vec<(MPoly, u32)>,
}

impl MFactorization {
    pub fn expand(&self, nvars: usize) -> MPoly {
        let mut acc = MPoly::constant(nvars, self.unit.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e));
        }
        acc
    }
}

pub fn factor_mpoly(p: &MPoly) -> MFactorization {
    assert!(!p.is_zero(), "factorization of zero");
    let n = p.nvars();
    let (unit, prim) = p.primitive_part();
    let mut factors: Vec<(MPoly, u32)> = Vec::new();
    let mono = prim.monomial_content();
    for (i, &e) in mono.iter().enumerate() {
        if e > 0 {
            factors.push((MPoly::var(n, i), e));
        }
    }
    let rest = prim.div_monomial(&mono);
    if !rest.is_constant() {
        for g in irreducible_parts(&rest) {
            match factors.iter_mut().find(|(f, _)| *f == g) {
                Some(entry) => entry.1 += 1,
                None => factors.push((g, 1)),
            }
        }
    }
    // rest's constant is ±1 after primitive normalization; fold the sign in
    let check = MFactorization {
        unit: Rational::one(),
        factors: factors.clone(),
    }
    .expand(n);
    let sign = if check.leading().map(|t| t.1.is_negative()) == prim.leading().map(|t| t.1.is_negative()) {
        Rational::one()
    } else {
        -Rational::one()
    };
    factors.sort();
    MFactorization {
        unit: unit * sign,
        factors,
    }
}

fn normalize(g: &MPoly) -> MPoly {
    g.primitive_part().1
}

/// Irreducible factors (with repetition) of a primitive polynomial free of
/// monomial content.
fn irreducible_parts(p: &MPoly) -> Vec<MPoly> {
    let n = p.nvars();
    let active: Vec<usize> = (0..n).filter(|&i| p.degree_in(i) > 0).collect();
    if active.len() == 1 {
        return univariate_parts(p, active[0]);
    }
    let d = (0..n).map(|i| p.degree_in(i)).max().unwrap() as u64 + 1;
    let image = kronecker(p, d);
    let mut pieces: Vec<Vec<BigInt>> = Vec::new();
    let (_, sqf) = squarefree_decomposition(&image);
    for (s, e) in sqf {
        for g in factor_squarefree_primitive(&to_primitive_integer(&s)) {
            for _ in 0..e {
                pieces.push(g.clone());
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = p.clone();
    let mut size = 1;
    while 2 * size <= pieces.len() && !cur.is_constant() {
        let mut found = None;
        'search: for subset in combinations(pieces.len(), size) {
            let prod = subset.iter().fold(vec![BigInt::one()], |acc, &i| {
                mul_int(&acc, &pieces[i])
            });
            for sign in [1i32, -1] {
                let cand: Vec<BigInt> = prod.iter().map(|c| c * sign).collect();
                let Some(g) = inverse_kronecker(&cand, d, n) else {
                    continue;
                };
                if g.is_constant() {
                    continue;
                }
                if let Some(q) = cur.exact_div(&g) {
                    found = Some((subset.clone(), g, q));
                    break 'search;
                }
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(normalize(&g));
                cur = q;
                pieces = pieces
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v)
                    .collect();
            }
            None => size += 1,
        }
    }
    if !cur.is_constant() {
        out.push(normalize(&cur));
    }
    out
}

fn univariate_parts(p: &MPoly, var: usize) -> Vec<MPoly> {
    let n = p.nvars();
    let deg = p.degree_in(var) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (e, c) in p.terms() {
        coeffs[e[var] as usize] = c.clone();
    }
    let f = super::factor_rational(&super::Poly::new(coeffs));
    let mut out = Vec::new();
    for (g, e) in f.factors {
        let z = to_primitive_integer(&g);
        let m = MPoly::from_terms(
            n,
            z.iter().enumerate().map(|(i, c)| {
                let mut ex = vec![0; n];
                ex[var] = i as u32;
                (ex, Rational::from_integer(c.clone()))
            }),
        );
        for _ in 0..e {
            out.push(m.clone());
        }
    }
    out
}

fn kronecker(p: &MPoly, d: u64) -> super::Poly<Rational> {
    let mut coeffs: Vec<Rational> = Vec::new();
    for (e, c) in p.terms() {
        let mut k = 0u64;
        for &x in e.iter().rev() {
            k = k * d + x as u64;
        }
        let k = k as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] += c;
    }
    super::Poly::new(coeffs)
}

fn inverse_kronecker(v: &[BigInt], d: u64, n: usize) -> Option<MPoly> {
    let total = d.checked_pow(n as u32)?;
    let mut terms = Vec::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut k = k as u64;
        if k >= total {
            return None;
        }
        let mut e = vec![0u32; n];
        for slot in e.iter_mut() {
            *slot = (k % d).to_u32()?;
            k /= d;
        }
        terms.push((e, Rational::from_integer(c.clone())));
    }
    Some(MPoly::from_terms(n, terms))
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    fn var(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }
    fn c(n: usize, k: i64) -> MPoly {
        MPoly::constant(n, int(k))
    }

    #[test]
    fn factors_y2_minus_s2() {
        // variables (s, y)
        let s = var(2, 0);
        let y = var(2, 1);
        let p = y.mul(&y).sub(&s.mul(&s));
        let f = factor_mpoly(&p);
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(2), p);
    }

    #[test]
    fn factors_with_multiplicity_and_content() {
        let s = var(3, 0);
        let t = var(3, 1);
        let x = var(3, 2);
        // -6 s^2 (s t + 1)^2 (x + t) (1 - s)
        let p = c(3, -6)
            .mul(&s.mul(&s))
            .mul(&s.mul(&t).add(&c(3, 1)).pow(2))
            .mul(&x.add(&t))
            .mul(&c(3, 1).sub(&s));
        let f = factor_mpoly(&p);
        assert_eq!(f.expand(3), p);
        let exps: Vec<u32> = f.factors.iter().map(|x| x.1).collect();
        assert_eq!(exps.iter().sum::<u32>(), 2 + 2 + 1 + 1);
        assert_eq!(f.factors.len(), 4);
    }

    #[test]
    fn irreducible_bivariate() {
        let s = var(2, 0);
        let y = var(2, 1);
        let p = y.mul(&y).sub(&s).add(&c(2, 3));
        let f = factor_mpoly(&p);
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].1, 1);
        assert_eq!(f.expand(2), p);
    }
}

//! Dense polynomials over ℤ, used where rational coefficient arithmetic
//! would be too slow: heuristic gcds and fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::{from_integer_poly, primitive, to_primitive_integer};
use super::{Poly, Rational};

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                v[i + j] += x * y;
            }
        }
    }
    trim(v)
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut v = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        v[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        v[i] -= y;
    }
    trim(v)
}

/// a·b − c·d.
pub fn cross(a: &[BigInt], b: &[BigInt], c: &[BigInt], d: &[BigInt]) -> ZPoly {
    sub(&mul(a, b), &mul(c, d))
}

/// Quotient a/d in ℤ[x], `None` unless the division is exact.
pub fn exact_div(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    assert!(!d.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    let dd = d.len() - 1;
    if a.len() <= dd {
        return None;
    }
    let lead = d.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let top = &r[k + dd];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lead);
        if !rem.is_zero() {
            return None;
        }
        for (j, dc) in d.iter().enumerate() {
            r[k + j] -= &c * dc;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| trim(q))
}

fn eval(a: &[BigInt], at: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * at + c;
    }
    acc
}

fn max_norm(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// ξ-adic digits of γ in the symmetric range.
fn interpolate_digits(mut g: BigInt, xi: &BigInt) -> ZPoly {
    let half = xi / 2;
    let mut out = Vec::new();
    while !g.is_zero() {
        let mut d = g.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        g = (g - &d) / xi;
        out.push(d);
    }
    trim(out)
}

/// Heuristic gcd of primitive integer polynomials; `None` when the
/// evaluation points never give a verified divisor.
pub fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if a.is_empty() {
        return Some(primitive(b));
    }
    if b.is_empty() {
        return Some(primitive(a));
    }
    let mut xi = BigInt::from(2) * max_norm(a).min(max_norm(b)) + BigInt::from(29);
    for _ in 0..8 {
        let gamma = eval(a, &xi).gcd(&eval(b, &xi));
        if !gamma.is_zero() {
            let g = primitive(&interpolate_digits(gamma, &xi));
            if !g.is_empty() && exact_div(a, &g).is_some() && exact_div(b, &g).is_some() {
                return Some(g);
            }
        }
        xi = xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

/// Monic gcd over ℚ through the integer heuristic.
pub fn rational_gcd(a: &Poly<Rational>, b: &Poly<Rational>) -> Option<Poly<Rational>> {
    if a.is_zero() && b.is_zero() {
        return Some(Poly::zero());
    }
    let g = heuristic_gcd(&to_primitive_integer(a), &to_primitive_integer(b))?;
    Some(from_integer_poly(&g).monic())
}

pub fn to_z(p: &Poly<Rational>) -> (BigInt, ZPoly) {
    let l = super::rational::denom_lcm(p.coeffs());
    let v = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    (l, v)
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn from_z(scale: &Rational, v: &[BigInt]) -> Poly<Rational> {
    Poly::new(v.iter().map(|c| scale * Rational::from_integer(c.clone())).collect())
}

/// Product over ℚ computed on integer images; worthwhile above a few terms.
pub fn rational_mul(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    let (la, za) = to_z(a);
    let (lb, zb) = to_z(b);
    from_z(&Rational::new(BigInt::one(), la * lb), &mul(&za, &zb))
}

/// num/den in lowest terms with den monic.
pub fn rational_reduce(num: &Poly<Rational>, den: &Poly<Rational>) -> Option<(Poly<Rational>, Poly<Rational>)> {
    let (ln, zn) = to_z(num);
    let (ld, zd) = to_z(den);
    let (cn, cd) = (content(&zn), content(&zd));
    let pn: ZPoly = zn.iter().map(|c| c / &cn).collect();
    let pd: ZPoly = zd.iter().map(|c| c / &cd).collect();
    let g = heuristic_gcd(&pn, &pd)?;
    let (pn, pd) = if is_one(&g) {
        (pn, pd)
    } else {
        (exact_div(&pn, &g)?, exact_div(&pd, &g)?)
    };
    let lc = pd.last().unwrap().clone();
    let scale = Rational::new(cn * ld, ln * cd * &lc);
    Some((from_z(&scale, &pn), from_z(&Rational::new(BigInt::one(), lc), &pd)))
}

pub fn is_one(a: &[BigInt]) -> bool {
    a.len() == 1 && a[0].is_one()
}

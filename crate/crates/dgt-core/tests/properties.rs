mod common;

use common::*;
use dgt_core::diffsys::{companion_form, iterate, minor_map, shift_matrix, sym_power, system_dimension};
use dgt_core::field::factor::factor_rational;
use dgt_core::field::{fx_int, fx_x, Field, Fx, Poly, Rational};
use dgt_core::lattice::{kernel_lattice, IntLattice, IntMatrix};
use dgt_core::linalg::Matrix;
use dgt_core::multlattice::{verify_relation, z_lattice};
use dgt_core::specialize::{preservation_report, Specialization, Verdict};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly_from(c: &[i64]) -> Fx {
    c.iter().rev().fold(fx_int(0), |acc, &k| acc.mul(&fx_x()).add(&fx_int(k)))
}

fn ratfunc() -> impl Strategy<Value = Fx> {
    (prop::collection::vec(-4i64..=4, 1..4), prop::collection::vec(-3i64..=3, 0..3)).prop_map(|(n, d)| {
        let den = poly_from(&d);
        let num = poly_from(&n);
        if den.is_zero() {
            num
        } else {
            num.div(&den)
        }
    })
}

fn nonzero_ratfunc() -> impl Strategy<Value = Fx> {
    ratfunc().prop_filter("nonzero", |f| !f.is_zero())
}

fn qmatrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| q(v[i * n + j])))
}

fn fxmatrix(n: usize) -> impl Strategy<Value = Matrix<Fx>> {
    prop::collection::vec(nonzero_ratfunc(), n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

/// c·∏(x+k)^e over a few integer shifts.
fn shift_product() -> impl Strategy<Value = (i64, Vec<i64>)> {
    (prop::sample::select(vec![1i64, -1, 2, 3, -6]), prop::collection::vec(-2i64..=2, 4))
}

fn build_shift_product(c: i64, e: &[i64]) -> Fx {
    e.iter()
        .enumerate()
        .fold(fx_int(c), |acc, (k, &p)| acc.mul(&fx_x().add(&fx_int(k as i64)).powi(p)))
}

/// ∏ aᵢ^{dᵢ} = σ^ℓ(f)/f for the family above: the constant must be 1 and
/// the exponents must cancel along each residue class mod ℓ.
fn shift_product_relation(a: &[(i64, Vec<i64>)], d: &[BigInt], ell: usize) -> bool {
    let mut c = Rational::one();
    let mut e = [0i64; 4];
    for ((ci, ei), di) in a.iter().zip(d) {
        let di: i64 = di.try_into().unwrap();
        let p = num_traits::pow(q(*ci), di.unsigned_abs() as usize);
        c = if di >= 0 { c * p } else { c / p };
        for k in 0..4 {
            e[k] += di * ei[k];
        }
    }
    One::is_one(&c) && (0..ell).all(|r| e.iter().skip(r).step_by(ell).sum::<i64>() == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in nonzero_ratfunc()) {
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(c.mul(&c.inv()).is_one());
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&b).shift(3), a.shift(3).mul(&b.shift(3)));
        prop_assert_eq!(a.shift(2).shift(-2), a);
    }

    #[test]
    fn factorization_reproduces(roots in prop::collection::vec(-6i64..=6, 0..4), extra in prop::collection::vec(-5i64..=5, 1..4), lead in 1i64..5) {
        let mut p = Poly::constant(q(lead)).mul(&Poly::from_ints(&extra));
        for r in &roots {
            p = p.mul(&Poly::from_ints(&[-r, 1]));
        }
        prop_assume!(!p.is_zero());
        let f = factor_rational(&p);
        prop_assert_eq!(f.expand(), p);
        let linear: u32 = f.factors.iter().filter(|(g, _)| g.degree() == Some(1)).map(|(_, e)| *e).sum();
        prop_assert!(linear as usize >= roots.len());
        for (g, _) in &f.factors {
            prop_assert!(g.is_monic());
        }
    }

    #[test]
    fn kernel_matches_box(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..3)) {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| big(r)).collect();
        let k = kernel_lattice(&IntMatrix::new(3, m.clone()));
        for v in box_vectors(3, 3) {
            let zero = m.iter().all(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<BigInt>().is_zero());
            prop_assert_eq!(k.contains(&v).unwrap(), zero);
        }
        for b in k.basis() {
            prop_assert!(m.iter().all(|r| r.iter().zip(b).map(|(a, b)| a * b).sum::<BigInt>().is_zero()));
        }
    }

    #[test]
    fn saturation_matches_rank(gens in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..3)) {
        let g: Vec<Vec<BigInt>> = gens.iter().map(|r| big(r)).collect();
        let l = IntLattice::from_generators(3, g.clone());
        let sat = l.saturate();
        prop_assert!(l.is_sublattice_of(&sat).unwrap());
        prop_assert_eq!(sat.saturate(), sat.clone());
        let r = rank_int(&g);
        for v in box_vectors(3, 2) {
            let mut with = g.clone();
            with.push(v.clone());
            prop_assert_eq!(sat.contains(&v).unwrap(), rank_int(&with) == r);
        }
    }

    #[test]
    fn sym_is_multiplicative(a in qmatrix(3), b in qmatrix(3), nu in 1u32..=2) {
        prop_assert_eq!(sym_power(&a.mul(&b), nu), sym_power(&a, nu).mul(&sym_power(&b, nu)));
    }

    #[test]
    fn minors_are_multiplicative(a in qmatrix(3), b in qmatrix(3), l in 1usize..=3) {
        prop_assume!(!Zero::is_zero(&a.det()) && !Zero::is_zero(&b.det()));
        prop_assert_eq!(
            minor_map(&a.mul(&b), l).unwrap(),
            minor_map(&a, l).unwrap().mul(&minor_map(&b, l).unwrap())
        );
        // the top minor map is the determinant
        prop_assert_eq!(minor_map(&a, 3).unwrap().get(0, 0).clone(), a.det());
    }

    #[test]
    fn z_lattice_matches_brute_force(a in prop::collection::vec(shift_product(), 3), ell in 1usize..=2) {
        let fs: Vec<Fx> = a.iter().map(|(c, e)| build_shift_product(*c, e)).collect();
        let z = z_lattice(&fs, ell as u32);
        for v in box_vectors(3, 2) {
            prop_assert_eq!(z.lattice.contains(&v).unwrap(), shift_product_relation(&a, &v, ell), "{:?}", v);
        }
        for (d, f) in z.basis_with_witnesses() {
            prop_assert!(verify_relation(&fs, &d, &f, ell as u32));
        }
    }

    #[test]
    fn z_lattice_is_gauge_invariant(a in prop::collection::vec(shift_product(), 3), g in prop::collection::vec(nonzero_ratfunc(), 3)) {
        let fs: Vec<Fx> = a.iter().map(|(c, e)| build_shift_product(*c, e)).collect();
        let gauged: Vec<Fx> = fs.iter().zip(&g).map(|(f, gi)| gi.shift(1).mul(f).div(gi)).collect();
        prop_assert_eq!(z_lattice(&gauged, 1).lattice, z_lattice(&fs, 1).lattice);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn companion_gauge_identity(b in fxmatrix(2)) {
        let c = companion_form(&b).unwrap();
        prop_assert_eq!(shift_matrix(&c.t, 1).mul(&b).mul(&c.tinv), c.companion_matrix());
        prop_assert!(c.t.mul(&c.tinv) == Matrix::identity(2, &fx_int(1)));
    }

    #[test]
    fn iterates_compose(a in fxmatrix(2), i in 1usize..=3, j in 1usize..=3) {
        prop_assert_eq!(iterate(&a, i + j), shift_matrix(&iterate(&a, i), j as i64).mul(&iterate(&a, j)));
    }

    #[test]
    fn preserved_keeps_the_dimension(c in 1i64..=3, k in -2i64..=2, num in -9i64..=9, den in 1i64..=4) {
        prop_assume!(num != 0);
        let a = Matrix::diagonal(&[
            fx("t", &["t"]).mul(&fx_int(c)),
            fx("x", &["t"]),
            fx("x + t", &["t"]).add(&fx_int(k)),
        ]);
        let field = dgt_core::field::TowerField::new(vec!["t".into()]).unwrap();
        let phi = Specialization::new(&field, &[("t".into(), qq(num, den))]).unwrap();
        let r = preservation_report(&a, &phi).unwrap();
        let b = phi.apply_matrix(&a).unwrap();
        // the converse fails: diag(1, x, x+1) degenerates but keeps dimension 3
        if r.verdict == Verdict::Preserved {
            prop_assert_eq!(system_dimension(&b), system_dimension(&a));
        }
    }
}

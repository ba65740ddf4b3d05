//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines always reach the terminal.

mod common;

use std::time::{Duration, Instant};

use common::*;
use dgt_core::diffsys::{
    binomial, build_l_nu_m, companion_form, gauge, minor_map, relation_space_dimension, sym_power, system_dimension,
};
use dgt_core::field::{fx_int, fx_x, Field, Fx, IntegerRoots, Poly, RatFunc, Rational, TowerElement, TowerField};
use dgt_core::galois::{criterion_check, galois_group_diagonal, GroupData};
use dgt_core::lattice::{kernel_lattice, IntLattice, IntMatrix};
use dgt_core::linalg::Matrix;
use dgt_core::multlattice::{radical_subgroup, verify_relation, z_lattice, FgSubgroup, GroupKind};
use dgt_core::ore::{
    coefficient_bound, hyper_certificates, indicial_polynomial, polynomial_degree_bound, polynomial_solutions,
    verify_alg_certificate, verify_certificate, DiffOperator, DEFAULT_COMPANION_LIMIT,
};
use dgt_core::specialize::{basic_open_membership, is_injective_on, preservation_report, Specialization, Verdict};
use num_bigint::BigInt;
use rand::Rng;

struct Outcome {
    failures: Vec<String>,
    /// Sub-claims that fail for a documented reason; the faithful result
    /// is asserted in their place.
    known: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            known: Vec::new(),
            summary: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn time(&mut self, start: Instant, limit: Duration) {
        let took = start.elapsed();
        self.check(took < limit, format!("took {took:.2?}, limit {limit:?}"));
    }
}

fn t_field() -> TowerField {
    TowerField::new(vec!["t".into()]).unwrap()
}

fn phi_t(v: Rational) -> Specialization {
    Specialization::new(&t_field(), &[("t".into(), v)]).unwrap()
}

fn diag(v: Vec<Fx>) -> Matrix<Fx> {
    Matrix::diagonal(&v)
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let a = diag(vec![fx("t", &["t"]), fx("x", &["t"]), fx("x + t", &["t"])]);
    let g = galois_group_diagonal(&a.diag_entries()).unwrap();
    o.check(g.lattice().is_zero() && g.dim == 3, "symbolic lattice not zero");
    let good = [qq(1, 2), qq(5, 3), qq(22, 7)];
    let bad = [q(7), q(2), q(-3), q(-1), q(1)];
    for v in &good {
        let r = preservation_report(&a, &phi_t(v.clone())).unwrap();
        o.check(r.verdict == Verdict::Preserved, format!("t -> {v} not preserved"));
    }
    for v in &bad {
        let r = preservation_report(&a, &phi_t(v.clone())).unwrap();
        let b = phi_t(v.clone()).apply_matrix(&a).unwrap().diag_entries();
        match &r.witness {
            Some((d, f)) => {
                o.check(r.verdict == Verdict::Degenerated, format!("t -> {v} verdict"));
                o.check(verify_relation(&b, d, f, 1), format!("t -> {v} witness identity"));
                o.check(relation_holds_at_points(&b, d, f, 1), format!("t -> {v} witness at points"));
            }
            None => o.check(false, format!("t -> {v} not degenerated")),
        }
    }
    o.time(start, Duration::from_secs(1));
    o.summary = "diag(t, x, x+t): zero lattice; 1/2, 5/3, 22/7 preserved; 7, 2, -3, -1, 1 degenerated with verified witnesses".into();
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let p = ["s", "t2"];
    let k = TowerField::new(vec!["s".into(), "t2".into()]).unwrap();
    let a = Matrix::from_rows(vec![
        vec![fx("x", &p), fx("s^2*x", &p), fx_int(0)],
        vec![fx("x", &p), fx("x", &p), fx_int(0)],
        vec![fx_int(0), fx_int(0), fx("t2", &p)],
    ]);
    let chis = [fx("x*(1 - s)", &p), fx("x*(1 + s)", &p), fx("t2", &p)];
    let z = z_lattice(&chis, 1);
    o.check(z.lattice.is_zero(), "z_lattice of the characters is not zero");

    let s = ["X11 - X22", "X12 - s^2*X21", "X13", "X23", "X31", "X32"];
    let h = GroupData::new(3, k.clone(), &s, &s, &["X11 - s*X21", "X11 + s*X21", "X33"], 1).unwrap();
    o.check(criterion_check(&h, &a).unwrap().is_group, "criterion_check rejects the group data");

    let gamma = FgSubgroup {
        kind: GroupKind::Multiplicative,
        generators: vec![fx("1 - s", &p), fx("1 + s", &p), fx("t2", &p)],
    };
    let phi = |t2: i64| Specialization::new(&k, &[("s".into(), q(2)), ("t2".into(), q(t2))]).unwrap();

    // t1 -> 4 (s -> 2), t2 -> 3: the images -1, 3, 3 acquire relations
    let r3 = basic_open_membership(&phi(3), &[gamma.clone()]).unwrap();
    let w = r3.groups[0].witness.clone();
    o.check(!r3.member, "t2 -> 3 accepted");
    let images = [fx_int(-1), fx_int(3), fx_int(3)];
    o.check(
        w.as_ref().is_some_and(|d| verify_relation(&images, d, &fx_int(1), 0)),
        "t2 -> 3 witness is not a relation of (-1, 3, 3)",
    );

    // gauge by the character rows diagonalizes A
    let g = Matrix::from_rows(vec![
        vec![fx_int(1), fx("-s", &p), fx_int(0)],
        vec![fx_int(1), fx("s", &p), fx_int(0)],
        vec![fx_int(0), fx_int(0), fx_int(1)],
    ]);
    let d = gauge(&a, &g).unwrap();
    o.check(d == diag(chis.to_vec()), "gauge transform is not diag(x(1-s), x(1+s), t2)");

    // t2 -> 5: the group is preserved on the diagonalized system, but
    // 1 - s -> -1 is torsion, so (2, 0, 0) puts φ outside the basic open set
    let r5 = basic_open_membership(&phi(5), &[gamma.clone()]).unwrap();
    let pres = preservation_report(&d, &phi(5)).unwrap();
    o.check(pres.verdict == Verdict::Preserved, "t2 -> 5 not preserved on the diagonal form");
    o.check(pres.specialized_lattice.is_zero(), "t2 -> 5 specialized lattice not zero");
    let after = criterion_check(&h.specialized(&[q(2), q(5)]), &phi(5).apply_matrix(&a).unwrap()).unwrap();
    o.check(after.is_group, "criterion after t2 -> 5");
    if !r5.member {
        let w = r5.groups[0].witness.clone();
        o.check(w == Some(big(&[2, 0, 0])), "t2 -> 5 rejection witness is not (2, 0, 0)");
        o.known.push(
            "basic_open_membership rejects t1 -> 4, t2 -> 5: 1 - sqrt(t1) -> -1 gives the torsion relation (2, 0, 0); \
             preservation itself is confirmed"
                .into(),
        );
    }
    o.time(start, Duration::from_secs(5));
    o.summary = "Q(s, t2), t1 = s^2: zero character lattice, group data confirmed, t2 -> 3 rejected, t2 -> 5 preserved".into();
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let op = |c: Vec<Vec<i64>>| DiffOperator::new(c.iter().map(|v| Poly::<Rational>::from_ints(v)).collect()).unwrap();
    let l1 = op(vec![vec![-1, -1], vec![1]]);
    let h1 = hyper_certificates(&l1, false).unwrap();
    let rates: Vec<_> = h1.certificates.iter().map(|c| c.rate.clone()).collect();
    o.check(rates == vec![RatFunc::from_poly(Poly::from_ints(&[1, 1]), &q(1))], "s - (x+1)");
    let l2 = op(vec![vec![6], vec![-5], vec![1]]);
    let h2 = hyper_certificates(&l2, false).unwrap();
    let rates: Vec<_> = h2.certificates.iter().map(|c| c.rate.clone()).collect();
    let c = |n: i64| RatFunc::constant(q(n));
    o.check(rates == vec![c(2), c(3)], "s^2 - 5s + 6");
    for (l, h) in [(&l1, &h1), (&l2, &h2)] {
        for cert in &h.certificates {
            o.check(verify_certificate(l, &cert.rate), "certificate identity");
        }
    }
    let l3 = op(vec![vec![-1], vec![-1], vec![1]]);
    let with = hyper_certificates(&l3, true).unwrap();
    let golden = Poly::from_ints(&[-1, -1, 1]);
    o.check(with.certificates.is_empty(), "rational certificate for s^2 - s - 1");
    o.check(with.algebraic.len() == 2, "expected two algebraic certificates");
    for a in &with.algebraic {
        o.check(a.minpoly == golden, "minimal polynomial is not y^2 - y - 1");
        o.check(verify_alg_certificate(&l3, a), "algebraic certificate identity");
    }
    if with.algebraic.len() == 2 {
        o.check(with.algebraic[0].cert.rate != with.algebraic[1].cert.rate, "conjugates coincide");
    }
    let without = hyper_certificates(&l3, false).unwrap();
    o.check(without.certificates.is_empty() && without.algebraic.is_empty(), "certificates without extension");
    o.check(
        without.extension_classes.len() == 1 && without.extension_classes[0].minpoly == golden,
        "expected one extension class y^2 - y - 1",
    );
    o.time(start, Duration::from_secs(1));
    o.summary = "s-(x+1) -> x+1; s^2-5s+6 -> 2, 3; s^2-s-1 -> two conjugate certificates or one extension class".into();
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let cases: Vec<(Vec<Vec<i64>>, Vec<Vec<i64>>)> = vec![
        (vec![vec![-1, -1], vec![0, 1]], vec![vec![0, 1]]),
        (vec![vec![1], vec![-2], vec![1]], vec![vec![1], vec![0, 1]]),
    ];
    for (coeffs, expected) in cases {
        let l = DiffOperator::new(coeffs.iter().map(|v| Poly::<Rational>::from_ints(v)).collect()).unwrap();
        let sols = polynomial_solutions(&l).unwrap();
        let want: Vec<Poly<Rational>> = expected.iter().map(|v| Poly::from_ints(v)).collect();
        o.check(sols == want, format!("polynomial solutions of {coeffs:?}"));
        for p in &sols {
            o.check(l.apply_poly(p).is_zero(), "L(p) != 0");
        }
        let roots = Rational::integer_roots(&indicial_polynomial(&l));
        let n = polynomial_degree_bound(&l);
        let from_roots = roots.iter().max().cloned().filter(|m| *m > BigInt::from(0)).unwrap_or_default();
        o.check(n == from_roots, "degree bound differs from the integer roots of Ind");
        let n: usize = n.try_into().unwrap();
        let rq: Vec<Vec<Rational>> = coeffs.iter().map(|v| v.iter().map(|&c| q(c)).collect()).collect();
        o.check(ansatz_solution_dim(&rq, n + 2) == sols.len(), "ansatz of degree N+2 finds more solutions");
    }
    o.summary = "x s-(x+1) -> x; s^2-2s+1 -> 1, x; bounds equal max integer root of Ind; ansatz at N+2 adds nothing".into();
    o
}

fn random_matrix(g: &mut rand_chacha::ChaCha8Rng, n: usize) -> Matrix<Fx> {
    loop {
        let m = Matrix::from_rows((0..n).map(|_| (0..n).map(|_| random_fx(g, 2)).collect()).collect());
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let mut g = rng(5);
    for i in 0..20 {
        let n = 2;
        let (a, b) = (random_matrix(&mut g, n), random_matrix(&mut g, n));
        let nu = 1 + (i % 2) as u32;
        o.check(sym_power(&a.mul(&b), nu) == sym_power(&a, nu).mul(&sym_power(&b, nu)), format!("Sym multiplicativity #{i}"));
    }
    for i in 0..20 {
        let n = 3;
        let (a, b) = (random_matrix(&mut g, n), random_matrix(&mut g, n));
        let l = 1 + i % 3;
        let lhs = minor_map(&a.mul(&b), l).unwrap();
        let rhs = minor_map(&a, l).unwrap().mul(&minor_map(&b, l).unwrap());
        o.check(lhs == rhs, format!("Cauchy-Binet #{i}"));
    }
    let (a, b, c) = (fx("x", &[]), fx("x + 2", &[]), fx("1/(x - 1)", &[]));
    let m = minor_map(&diag(vec![a.clone(), b.clone(), c.clone()]), 2).unwrap();
    o.check(m == diag(vec![a.mul(&b), a.mul(&c), b.mul(&c)]), "minors of diag(a, b, c)");
    o.summary = "Sym(AB) = Sym(A)Sym(B) and minors(AB) = minors(A)minors(B) on 20 random matrices each; diag minors".into();
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let x = fx_x();
    o.check(system_dimension(&diag(vec![x.clone(), x.clone()])) == 1, "dim diag(x, x)");
    o.check(system_dimension(&diag(vec![x.clone(), x.mul(&fx_int(2))])) == 2, "dim diag(x, 2x)");
    let c = companion_form(&diag(vec![fx_int(2), fx_int(3)])).unwrap();
    let h = hyper_certificates(&c.operator(), false).unwrap();
    let rates: Vec<Fx> = h.certificates.iter().map(|c| c.rate.clone()).collect();
    o.check(rates == vec![fx_int(2), fx_int(3)], "companion operator of diag(2, 3)");
    o.summary = "dim diag(x, x) = 1, dim diag(x, 2x) = 2; companion of diag(2, 3) has certificates 2, 3".into();
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let mut report = Vec::new();
    for (a, name) in [(diag(vec![fx_x()]), "[[x]]"), (diag(vec![fx_int(2), fx_x()]), "diag(2, x)")] {
        let b = match coefficient_bound(&a, 1, DEFAULT_COMPANION_LIMIT) {
            Ok(b) => b,
            Err(e) => {
                o.check(false, format!("{name}: {e}"));
                continue;
            }
        };
        let n: usize = b.bound.clone().try_into().unwrap();
        let dims: Vec<usize> = (n.saturating_sub(1)..=n + 1).map(|m| relation_space_dimension(&a, 1, m)).collect();
        let l = binomial(a.nrows() * a.nrows() + 1, 1);
        // past a coefficient bound the relation spaces grow by a fixed step
        let steady = dims.windows(3).all(|w| w[2] - w[1] == w[1] - w[0]);
        o.check(steady, format!("{name}: dim I(m) around N = {n} is {dims:?}"));
        // the structured count agrees with the block system where that is buildable
        let upto = if n < 40 { n + 1 } else { 5 };
        for m in 0..=upto {
            let direct = (m + 1) * l - system_dimension(&build_l_nu_m(&a, 1, m));
            o.check(direct == relation_space_dimension(&a, 1, m), format!("{name}: m = {m}"));
        }
        report.push(format!("{name}: N = {n}, dim I(N), I(N+1) = {}, {}", dims[1], dims[2]));
    }
    o.time(start, Duration::from_secs(60));
    o.summary = format!("coefficient bounds completed; {}", report.join("; "));
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let mut g = rng(8);
    // kernel box oracle
    for _ in 0..15 {
        let cols = g.gen_range(1..=4);
        let rows = g.gen_range(1..=3);
        let m: Vec<Vec<BigInt>> = (0..rows).map(|_| (0..cols).map(|_| BigInt::from(g.gen_range(-3..=3))).collect()).collect();
        let k = kernel_lattice(&IntMatrix::new(cols, m.clone()));
        for v in box_vectors(cols, 2) {
            let zero = m.iter().all(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<BigInt>() == BigInt::from(0));
            o.check(k.contains(&v).unwrap() == zero, format!("kernel of {m:?} at {v:?}"));
        }
    }
    // saturation box oracle: v in sat(L) iff v in the rational span of L
    for _ in 0..15 {
        let cols = g.gen_range(1..=4);
        let gens: Vec<Vec<BigInt>> = (0..g.gen_range(1..=3))
            .map(|_| (0..cols).map(|_| BigInt::from(g.gen_range(-2..=2) * 2)).collect())
            .collect();
        let l = IntLattice::from_generators(cols, gens.clone());
        let sat = l.saturate();
        let r = rank_int(&gens);
        for v in box_vectors(cols, 2) {
            let mut with = gens.clone();
            with.push(v.clone());
            o.check(sat.contains(&v).unwrap() == (rank_int(&with) == r), format!("saturation of {gens:?} at {v:?}"));
        }
    }
    // radical of <4> is {±2^k}
    let rad = radical_subgroup(&[q(4)]).unwrap();
    let mut generated = std::collections::BTreeSet::new();
    for exps in box_vectors(rad.len(), 4) {
        let mut p = q(1);
        for (r, e) in rad.iter().zip(&exps) {
            let e: i64 = e.try_into().unwrap();
            let pw = num_traits::pow(r.clone(), e.unsigned_abs() as usize);
            p = if e >= 0 { p * pw } else { p / pw };
        }
        generated.insert(p);
    }
    for k in -3i32..=3 {
        let v = if k >= 0 { q(1 << k) } else { qq(1, 1 << -k) };
        o.check(generated.contains(&v) && generated.contains(&-v.clone()), format!("±2^{k} missing from the radical"));
    }
    o.check(generated.iter().all(|r| (r.numer() * r.denom()).magnitude().count_ones() == 1), "radical element outside ±2^k");
    // z_lattice witnesses
    let mut emitted = 0;
    for _ in 0..10 {
        let base = random_poly(&mut g, 1, 3);
        let base = if base.is_zero() { fx_x() } else { base };
        let a: Vec<Fx> = (0..3)
            .map(|_| {
                let s = g.gen_range(-2..=2);
                base.shift(s).mul(&fx_int(g.gen_range(1..=2)))
            })
            .collect();
        let ell = g.gen_range(1..=2);
        let z = z_lattice(&a, ell);
        for (d, f) in z.basis_with_witnesses() {
            emitted += 1;
            o.check(verify_relation(&a, &d, &f, ell), "witness identity");
            o.check(relation_holds_at_points(&a, &d, &f, ell as i64), "witness at sample points");
        }
    }
    o.check(emitted > 0, "no basis vectors emitted");
    let (roots_ok, roots_nontrivial) = integer_roots_suite(&mut o);
    rank_suite(&mut o);
    o.summary = format!(
        "kernel/saturation box oracles, radical of <4>, {emitted} witnesses verified, integer roots kept in {roots_ok} injective cases and changed only without injectivity ({roots_nontrivial} cases), rank suite"
    );
    o
}

/// Z(f) = Z(φ(f)) whenever φ is injective on ⟨1, a, non-integer roots⟩;
/// conversely a change in Z(f) must come with a failure of injectivity.
fn integer_roots_suite(o: &mut Outcome) -> (usize, usize) {
    let mut g = rng(216);
    let k = t_field();
    let t = RatFunc::constant(k.gen(0));
    let pool_int = [-2, 0, 1, 3];
    let pool_other: Vec<Fx> = vec![
        fx("1/2", &["t"]),
        fx("-5/3", &["t"]),
        t.clone(),
        t.add(&fx_int(1)),
        fx("2*t - 1", &["t"]),
        fx("t/2 + 1/3", &["t"]),
    ];
    let leads = [fx_int(1), fx_int(2), fx_int(-3), t.clone(), t.add(&fx_int(1))];
    let targets = [q(-3), q(-1), q(0), q(1), q(2), q(4), qq(1, 2), qq(3, 2), qq(-7, 3), qq(5, 4), qq(2, 7)];
    let (mut injective, mut changed) = (0, 0);
    for _ in 0..25 {
        let mut roots: Vec<Fx> = (0..g.gen_range(0..=2)).map(|_| fx_int(pool_int[g.gen_range(0..4)])).collect();
        let others: Vec<Fx> = (0..g.gen_range(1..=2)).map(|_| pool_other[g.gen_range(0..pool_other.len())].clone()).collect();
        roots.extend(others.iter().cloned());
        roots.truncate(3);
        let a = leads[g.gen_range(0..leads.len())].clone();
        let mut f = Poly::constant(a.as_constant().unwrap());
        for r in &roots {
            f = f.mul(&Poly::new(vec![r.as_constant().unwrap().neg(), TowerElement::from(1)]));
        }
        let mut gens = vec![fx_int(1), a.clone()];
        gens.extend(roots.iter().filter(|r| r.as_constant().and_then(|c| c.as_rational().cloned()).is_none_or(|c| !c.is_integer())).cloned());
        let gamma = FgSubgroup { kind: GroupKind::Additive, generators: gens };
        let z = TowerElement::integer_roots(&f);
        for v in &targets {
            let phi = phi_t(v.clone());
            let Ok(fv) = phi.apply_poly(&f, "f") else { continue };
            if fv.is_zero() || fv.lc().is_some_and(|c| c.is_zero()) {
                continue;
            }
            let inj = is_injective_on(&phi, &gamma).unwrap().injective;
            let zv = TowerElement::integer_roots(&fv);
            if inj {
                injective += 1;
                o.check(z == zv, format!("Z changed under an injective specialization t -> {v}"));
            } else if z != zv {
                changed += 1;
            }
        }
    }
    (injective, changed)
}

/// rank(M) = rank(φ(M)) when φ keeps a nonzero maximal minor nonzero.
fn rank_suite(o: &mut Outcome) {
    let mut g = rng(217);
    let k = t_field();
    let t = k.gen(0);
    let rand_entry = |g: &mut rand_chacha::ChaCha8Rng| {
        let c: Vec<TowerElement> = (0..3).map(|_| TowerElement::from(g.gen_range(-2..=2))).collect();
        c[0].add(&c[1].mul(&t)).add(&c[2].mul(&t.mul(&t)))
    };
    let targets = [q(-2), q(-1), q(0), q(1), q(2), qq(1, 2), qq(-3, 2)];
    for _ in 0..25 {
        let (rows, cols, inner) = (g.gen_range(2..=3), g.gen_range(2..=4), g.gen_range(1..=3));
        let bm = Matrix::from_rows((0..rows).map(|_| (0..inner).map(|_| rand_entry(&mut g)).collect()).collect());
        let cm = Matrix::from_rows((0..inner).map(|_| (0..cols).map(|_| rand_entry(&mut g)).collect()).collect());
        let m = bm.mul(&cm);
        let r = m.rank();
        if r == 0 {
            continue;
        }
        let minor = dgt_core::diffsys::index_sets(rows, r)
            .into_iter()
            .flat_map(|rs| dgt_core::diffsys::index_sets(cols, r).into_iter().map(move |cs| (rs.clone(), cs)))
            .map(|(rs, cs)| Matrix::from_fn(r, r, |i, j| m.get(rs[i], cs[j]).clone()).det())
            .find(|d| !d.is_zero())
            .unwrap();
        for v in &targets {
            let phi = phi_t(v.clone());
            if phi.apply_constant(&minor, "c").unwrap().is_zero() {
                continue;
            }
            let mv: Vec<Vec<Rational>> = (0..rows)
                .map(|i| (0..cols).map(|j| phi.apply_constant(m.get(i, j), "m").unwrap()).collect())
                .collect();
            o.check(rank_q(&mv) == r, format!("rank dropped at t -> {v}"));
        }
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("diagonal family classification", criterion_1),
        ("two-parameter system and its basic open set", criterion_2),
        ("hypergeometric certificates", criterion_3),
        ("polynomial solutions and indicial bounds", criterion_4),
        ("symmetric powers and minors", criterion_5),
        ("dimension and companion consistency", criterion_6),
        ("coefficient bound pipeline", criterion_7),
        ("lattice, radical and specialization suites", criterion_8),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let status = if o.failures.is_empty() && o.known.is_empty() { "PASS" } else { "FAIL" };
        println!("acceptance {} {status} {name} ({took:.2?}): {}", i + 1, o.summary);
        for f in &o.failures {
            println!("    failed: {f}");
        }
        for k in &o.known {
            println!("    documented failure: {k}");
        }
        unexpected += o.failures.len();
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}

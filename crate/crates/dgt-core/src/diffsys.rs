//! First-order difference systems σ(Y) = AY over ℚ(u₁…u_r)(x).

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{DgtError, Result};
use crate::field::{fx_int, fx_x, Field, Fx, Poly, RatFunc, TowerElement, TowerField};
use crate::linalg::{inverse_ratfunc, Matrix, RowSpace};
use crate::multlattice::shift_orbit_decompose;
use crate::ore::DiffOperator;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffSystem {
    pub matrix: Matrix<Fx>,
    pub field: TowerField,
}

impl DiffSystem {
    pub fn new(matrix: Matrix<Fx>, field: TowerField) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(DgtError::Invalid("system matrix must be square and nonempty".into()));
        }
        if Field::is_zero(&matrix.det()) {
            return Err(DgtError::SingularInput("det(A) = 0".into()));
        }
        Ok(DiffSystem { matrix, field })
    }

    /// Shorthand for systems over ℚ(x).
    pub fn over_q(matrix: Matrix<Fx>) -> Result<Self> {
        Self::new(matrix, TowerField::rationals())
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }
}

/// σ^k applied entrywise.
pub fn shift_matrix(m: &Matrix<Fx>, k: i64) -> Matrix<Fx> {
    m.map(|f| f.shift(k))
}

/// A_i = σ^{i−1}(A)⋯σ(A)A.
pub fn iterate(a: &Matrix<Fx>, i: usize) -> Matrix<Fx> {
    assert!(i >= 1, "iterates start at 1");
    let mut acc = a.clone();
    for _ in 1..i {
        acc = shift_matrix(&acc, 1).mul(a);
    }
    acc
}

pub fn iterate_system(a: &DiffSystem, i: usize) -> Matrix<Fx> {
    iterate(&a.matrix, i)
}

/// Exponent vectors over the n² entries X₁₁, X₁₂, …, X_nn with total degree
/// at most ν: constant first, then by degree, descending lex inside a degree.
pub fn monomial_basis(n: usize, nu: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() - 1 {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let vars = n * n;
    let mut out = Vec::new();
    for d in 0..=nu {
        let mut cur = vec![0; vars];
        rec(0, d, &mut cur, &mut out);
    }
    out
}

pub fn render_monomial(e: &[u32], n: usize) -> String {
    let mut parts = Vec::new();
    for (v, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let name = format!("X{}{}", v / n + 1, v % n + 1);
        parts.push(if k == 1 { name } else { format!("{name}^{k}") });
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

type Sparse<F> = BTreeMap<Vec<u32>, F>;

fn sparse_mul<F: Field>(a: &Sparse<F>, b: &Sparse<F>) -> Sparse<F> {
    let mut out: Sparse<F> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = ca.mul(cb);
            match out.get_mut(&e) {
                Some(v) => *v = v.add(&c),
                None => {
                    out.insert(e, c);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Sym_ν(A): the matrix with 𝔪(AY) = Sym_ν(A)·𝔪(Y) for the monomial vector 𝔪.
pub fn sym_power<F: Field>(a: &Matrix<F>, nu: u32) -> Matrix<F> {
    let n = a.nrows();
    let basis = monomial_basis(n, nu);
    let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let vars = n * n;
    let one = a.sample().one_like();
    // (AY)_{pq} = Σ_c A_{pc} Y_{cq}
    let linear: Vec<Sparse<F>> = (0..vars)
        .map(|v| {
            let (p, q) = (v / n, v % n);
            let mut s = BTreeMap::new();
            for c in 0..n {
                let coef = a.get(p, c);
                if !coef.is_zero() {
                    let mut e = vec![0; vars];
                    e[c * n + q] = 1;
                    s.insert(e, coef.clone());
                }
            }
            s
        })
        .collect();
    let mut out = Matrix::zeros(basis.len(), basis.len(), &one);
    for (i, m) in basis.iter().enumerate() {
        let mut acc: Sparse<F> = BTreeMap::from([(vec![0; vars], one.clone())]);
        for (v, &k) in m.iter().enumerate() {
            for _ in 0..k {
                acc = sparse_mul(&acc, &linear[v]);
            }
        }
        for (e, c) in acc {
            out.set(i, index[&e], c);
        }
    }
    out
}

/// l-subsets of {0,…,n−1} in lexicographic order.
pub fn index_sets(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, l, cur, out);
            cur.pop();
        }
    }
    rec(0, n, l, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// Φ_{n,l}(Z): all l×l minors, rows and columns indexed by l-subsets.
pub fn minor_map<F: Field>(z: &Matrix<F>, l: usize) -> Result<Matrix<F>> {
    let n = z.nrows();
    if !z.is_square() || l == 0 || l > n {
        return Err(DgtError::Invalid(format!("minor size {l} out of range for an {n}×{n} matrix")));
    }
    if z.det().is_zero() {
        return Err(DgtError::SingularInput("minor map of a singular matrix".into()));
    }
    let sets = index_sets(n, l);
    Ok(Matrix::from_fn(sets.len(), sets.len(), |i, j| {
        Matrix::from_fn(l, l, |a, b| z.get(sets[i][a], sets[j][b]).clone()).det()
    }))
}

/// Rows flatten(A₀), flatten(A₁), …, flatten(A_{n²}) with A₀ = I.
pub fn stacked_iterates(a: &Matrix<Fx>) -> Vec<Vec<Fx>> {
    let n = a.nrows();
    let mut rows = vec![Matrix::identity(n, a.sample()).entries().to_vec()];
    let mut cur = a.clone();
    for i in 1..=n * n {
        if i > 1 {
            cur = shift_matrix(&cur, 1).mul(a);
        }
        rows.push(cur.entries().to_vec());
    }
    rows
}

/// dim([A]) as the rank of the stacked iterate matrix. Rows are added in
/// order; once one depends on its predecessors every later one does too.
pub fn system_dimension_general(a: &Matrix<Fx>) -> usize {
    let n = a.nrows();
    let mut space = RowSpace::new();
    space.push(Matrix::identity(n, a.sample()).entries().to_vec());
    let mut cur = a.clone();
    for i in 1..=n * n {
        if i > 1 {
            cur = shift_matrix(&cur, 1).mul(a);
        }
        if !space.push(cur.entries().to_vec()) {
            break;
        }
    }
    space.rank()
}

/// For a diagonal system the fundamental matrix is diag(h₁,…,h_n) with
/// σ(h_j) = r_j h_j. Entries in one similarity class are h_k = g_k·h_base,
/// and the class contributes the constant rank of the g_k.
fn system_dimension_diagonal(d: &[Fx]) -> usize {
    diagonal_classes(d).iter().map(|g| constant_rank(g)).sum()
}

/// Witnesses g_k of each similarity class, r_k = r_base·σ(g_k)/g_k.
fn diagonal_classes(d: &[Fx]) -> Vec<Vec<Fx>> {
    let mut classes: Vec<(Fx, Vec<Fx>)> = Vec::new();
    for r in d {
        let mut placed = false;
        for (base, members) in classes.iter_mut() {
            let dec = shift_orbit_decompose(&r.div(base), 1);
            if dec.eta.is_one() && dec.terms.is_empty() {
                members.push(dec.witness);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((r.clone(), vec![fx_int(1)]));
        }
    }
    classes.into_iter().map(|(_, g)| g).collect()
}

/// Numerators over a common denominator.
fn clear_denominators(fs: &[Fx]) -> Vec<Poly<TowerElement>> {
    let one = TowerElement::from(1);
    let mut den = Poly::constant(one);
    for f in fs {
        let g = Poly::gcd(&den, f.den());
        den = den.mul(&f.den().exact_div(&g).unwrap());
    }
    fs.iter()
        .map(|f| f.num().mul(&den.exact_div(f.den()).unwrap()))
        .collect()
}

/// Constant rank of {x^j·g_k : 0 ≤ j ≤ m}.
///
/// With b₁…b_r a basis of span{g_k} (as polynomials over a common
/// denominator, degree ≤ D) the span is Σ b_i·Ω[x]_{≤m}, of dimension
/// r(m+1) minus the syzygies of degree ≤ m. A minimal syzygy basis has r−1
/// elements of degree ≤ D, so past D the syzygy count grows by r−1 per step.
pub fn shifted_span_rank(gs: &[Fx], m: usize) -> usize {
    let mut basis: Vec<Fx> = Vec::new();
    for g in gs {
        basis.push(g.clone());
        if constant_rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    let r = basis.len();
    if r == 0 {
        return 0;
    }
    let polys: Vec<Fx> = clear_denominators(&basis)
        .into_iter()
        .map(|p| RatFunc::from_poly(p, &TowerElement::from(1)))
        .collect();
    let dmax = polys.iter().map(|p| p.num().degree().unwrap_or(0)).max().unwrap();
    let direct = |m: usize| {
        let fam: Vec<Fx> = (0..=m)
            .flat_map(|j| polys.iter().map(move |p| p.mul(&fx_x().pow(j as u64))))
            .collect();
        constant_rank(&fam)
    };
    if m <= dmax {
        return direct(m);
    }
    let syz = r * (dmax + 1) - direct(dmax) + (m - dmax) * (r - 1);
    r * (m + 1) - syz
}

/// Dimension over the constants of the span of the given rational functions.
pub fn constant_rank(fs: &[Fx]) -> usize {
    let one = TowerElement::from(1);
    let nums = clear_denominators(fs);
    let width = nums.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    if width == 0 {
        return 0;
    }
    let rows: Vec<Vec<TowerElement>> = nums
        .iter()
        .map(|p| (0..width).map(|i| p.coeff_or_zero(i, &one)).collect())
        .collect();
    Matrix::from_rows(rows).rank()
}

pub fn system_dimension(a: &Matrix<Fx>) -> usize {
    if a.is_diagonal() {
        system_dimension_diagonal(&a.diag_entries())
    } else {
        system_dimension_general(a)
    }
}

/// Gauge data T with σ(T)·B·T⁻¹ = companion(L) and the monic operator L.
#[derive(Clone, Debug, PartialEq)]
pub struct CompanionForm {
    pub vector: Vec<Fx>,
    pub t: Matrix<Fx>,
    pub tinv: Matrix<Fx>,
    /// a₀, …, a_{n−1} of L = σⁿ + a_{n−1}σ^{n−1} + … + a₀.
    pub coeffs: Vec<Fx>,
}

impl CompanionForm {
    pub fn companion_matrix(&self) -> Matrix<Fx> {
        companion_matrix(&self.coeffs)
    }

    /// L with denominators cleared.
    pub fn operator(&self) -> DiffOperator<TowerElement> {
        let mut c = self.coeffs.clone();
        c.push(fx_int(1));
        DiffOperator::from_ratfuncs(&c)
    }
}

pub fn companion_matrix(a: &[Fx]) -> Matrix<Fx> {
    let n = a.len();
    Matrix::from_fn(n, n, |i, j| {
        if i + 1 < n {
            if j == i + 1 {
                fx_int(1)
            } else {
                fx_int(0)
            }
        } else {
            a[j].neg()
        }
    })
}

pub const CYCLIC_RETRIES: usize = 32;
pub const DEFAULT_SEED: u64 = 0x5eed;

fn seed() -> u64 {
    std::env::var("DGT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Tries the row vector v; `None` when it is not cyclic.
pub fn companion_from_vector(b: &Matrix<Fx>, v: &[Fx]) -> Option<CompanionForm> {
    let n = b.nrows();
    let mut rows = vec![v.to_vec()];
    for i in 0..n {
        let next = b.vec_mul(&rows[i].iter().map(|f| f.shift(1)).collect::<Vec<_>>());
        rows.push(next);
    }
    let last = rows.pop().unwrap();
    let t = Matrix::from_rows(rows);
    let tinv = inverse_ratfunc(&t).ok()?;
    let coeffs = tinv.vec_mul(&last).into_iter().map(|c| c.neg()).collect();
    Some(CompanionForm {
        vector: v.to_vec(),
        t,
        tinv,
        coeffs,
    })
}

fn candidate_vectors(n: usize) -> impl Iterator<Item = Vec<Fx>> {
    let unit = (0..n).map(|j| fx_int((j == 0) as i64)).collect::<Vec<_>>();
    let ones = vec![fx_int(1); n];
    let powers = (0..n).map(|j| fx_x().pow(j as u64)).collect::<Vec<_>>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let random = (0..CYCLIC_RETRIES).map(move |_| {
        (0..n)
            .map(|_| {
                let c: Vec<TowerElement> = (0..n)
                    .map(|_| TowerElement::from(rng.gen_range(-3i64..=3)))
                    .collect();
                RatFunc::from_poly(Poly::new(c), &TowerElement::from(1))
            })
            .collect::<Vec<_>>()
    });
    [unit, ones, powers].into_iter().chain(random)
}

pub fn companion_form(b: &Matrix<Fx>) -> Result<CompanionForm> {
    if b.det().is_zero() {
        return Err(DgtError::SingularInput("det(B) = 0".into()));
    }
    let n = b.nrows();
    for v in candidate_vectors(n) {
        if v.iter().all(Field::is_zero) {
            continue;
        }
        if let Some(c) = companion_from_vector(b, &v) {
            return Ok(c);
        }
    }
    Err(DgtError::CyclicVectorNotFound(CYCLIC_RETRIES + 3))
}

pub fn block_diagonal(blocks: &[Matrix<Fx>]) -> Matrix<Fx> {
    let size: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = Matrix::zeros(size, size, &fx_int(1));
    let mut off = 0;
    for b in blocks {
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                out.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.nrows();
    }
    out
}

/// σ(G)·A·G⁻¹, the system satisfied by GY.
pub fn gauge(a: &Matrix<Fx>, g: &Matrix<Fx>) -> Result<Matrix<Fx>> {
    let ginv = inverse_ratfunc(g)?;
    Ok(shift_matrix(g, 1).mul(a).mul(&ginv))
}

/// diag(((x+1)/x)^j · Sym_ν(A)) for j = 0..m.
pub fn build_l_nu_m(a: &Matrix<Fx>, nu: u32, m: usize) -> Matrix<Fx> {
    let s = sym_power(a, nu);
    let w = fx_x().add(&fx_int(1)).div(&fx_x());
    let blocks: Vec<Matrix<Fx>> = (0..=m).map(|j| s.scale(&w.pow(j as u64))).collect();
    block_diagonal(&blocks)
}

pub fn relation_space_dimension(a: &Matrix<Fx>, nu: u32, m: usize) -> usize {
    let l = binomial(a.nrows() * a.nrows() + nu as usize, nu as usize);
    (m + 1) * l - block_system_dimension(a, nu, m)
}

/// dim [𝓛^ν_m(A)] without building the block system when A is diagonal:
/// block j of class k has witness x^j·g_k since (x+1)/x = σ(x)/x.
fn block_system_dimension(a: &Matrix<Fx>, nu: u32, m: usize) -> usize {
    if !a.is_diagonal() {
        return system_dimension(&build_l_nu_m(a, nu, m));
    }
    let s = sym_power(a, nu);
    diagonal_classes(&s.diag_entries())
        .iter()
        .map(|g| shifted_span_rank(g, m))
        .sum()
}

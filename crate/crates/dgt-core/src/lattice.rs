//! Integer lattices in ℤᵐ stored in Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{DgtError, Result};

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer matrix");
        IntMatrix { cols, rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::new(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(cols, vec![vec![BigInt::zero(); cols]; rows])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMatrix::new(self.rows.len(), rows)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.nrows());
        let t = rhs.transpose();
        IntMatrix::new(
            rhs.cols,
            self.rows
                .iter()
                .map(|r| t.rows.iter().map(|c| dot(r, c)).collect())
                .collect(),
        )
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(dst: &mut [BigInt], k: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += k * s;
    }
}

/// Combines rows r and k so that row r carries gcd(a, b) in column c and
/// row k carries 0; the transformation is unimodular.
fn gcd_rows(m: &mut [Vec<BigInt>], r: usize, k: usize, c: usize) {
    let a = m[r][c].clone();
    let b = m[k][c].clone();
    if (&b % &a).is_zero() {
        // keep row r fixed, otherwise diagonalization can cycle
        let q = &b / &a;
        let row = m[r].clone();
        axpy(&mut m[k], &-q, &row);
        return;
    }
    let e = a.extended_gcd(&b);
    let (g, s, t) = (e.gcd, e.x, e.y);
    let (ag, bg) = (&a / &g, &b / &g);
    let n = m[r].len();
    for j in 0..n {
        let x = m[r][j].clone();
        let y = m[k][j].clone();
        m[r][j] = &s * &x + &t * &y;
        m[k][j] = &ag * &y - &bg * &x;
    }
}

/// Row echelon form on the first `upto` columns by unimodular row
/// operations. Returns the pivot columns in order; rows at index ≥ the
/// number of pivots are zero on those columns.
fn echelon(m: &mut [Vec<BigInt>], upto: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..upto {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for k in r + 1..m.len() {
            if !m[k][c].is_zero() {
                gcd_rows(m, r, k, c);
            }
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Hermite normal form of the row span: positive pivots, entries above
/// each pivot reduced into [0, pivot), zero rows removed.
pub fn hnf(rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut m = rows;
    let pivots = echelon(&mut m, cols);
    m.truncate(pivots.len());
    for (i, &c) in pivots.iter().enumerate() {
        let p = m[i][c].clone();
        for k in 0..i {
            let q = m[k][c].div_floor(&p);
            if !q.is_zero() {
                let row = m[i].clone();
                axpy(&mut m[k], &-q, &row);
            }
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeOrder {
    Equal,
    /// The left lattice is a proper sublattice of the right one.
    Sub,
    /// The right lattice is a proper sublattice of the left one.
    Super,
    Incomparable,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntLattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl fmt::Debug for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLattice<{}>{:?}", self.ambient, self.basis_i64())
    }
}

impl IntLattice {
    pub fn from_generators(ambient: usize, gens: Vec<Vec<BigInt>>) -> Self {
        assert!(gens.iter().all(|g| g.len() == ambient), "generator of wrong length");
        IntLattice {
            ambient,
            basis: hnf(gens, ambient),
        }
    }

    pub fn from_i64(ambient: usize, gens: &[Vec<i64>]) -> Self {
        IntLattice::from_generators(
            ambient,
            gens.iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zero(ambient: usize) -> Self {
        IntLattice {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        IntLattice {
            ambient,
            basis: IntMatrix::identity(ambient).rows,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis as machine integers; panics if an entry does not fit.
    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("lattice entry overflows i64")).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn check(&self, other: usize) -> Result<()> {
        if self.ambient != other {
            return Err(DgtError::AmbientMismatch(self.ambient, other));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        self.check(v.len())?;
        let mut v = v.to_vec();
        for row in &self.basis {
            let c = row.iter().position(|x| !x.is_zero()).unwrap();
            let (q, r) = v[c].div_mod_floor(&row[c]);
            if !r.is_zero() {
                return Ok(false);
            }
            axpy(&mut v, &-q, row);
        }
        Ok(v.iter().all(|x| x.is_zero()))
    }

    pub fn contains_i64(&self, v: &[i64]) -> Result<bool> {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&v)
    }

    pub fn is_sublattice_of(&self, other: &IntLattice) -> Result<bool> {
        other.check(self.ambient)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn compare(&self, other: &IntLattice) -> Result<LatticeOrder> {
        let a = self.is_sublattice_of(other)?;
        let b = other.is_sublattice_of(self)?;
        Ok(match (a, b) {
            (true, true) => LatticeOrder::Equal,
            (true, false) => LatticeOrder::Sub,
            (false, true) => LatticeOrder::Super,
            (false, false) => LatticeOrder::Incomparable,
        })
    }

    /// First basis vector of `self` that does not lie in `other`.
    pub fn first_outside(&self, other: &IntLattice) -> Result<Option<Vec<BigInt>>> {
        other.check(self.ambient)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(Some(b.clone()));
            }
        }
        Ok(None)
    }

    /// {v : l·v ∈ L for some l > 0}, read off a diagonalization of the basis.
    pub fn saturate(&self) -> IntLattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        let (r, winv) = diagonalize(&self.basis, self.ambient);
        IntLattice::from_generators(self.ambient, winv.into_iter().take(r).collect())
    }

    pub fn intersect(&self, other: &IntLattice) -> Result<IntLattice> {
        self.check(other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(IntLattice::zero(self.ambient));
        }
        // a·B₁ = b·B₂ ⟺ (a, b) ∈ ker [B₁ᵀ | −B₂ᵀ]
        let k1 = self.basis.len();
        let cols: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|r| r.iter().map(|x| -x).collect()))
            .collect();
        let m = IntMatrix::new(self.ambient, cols).transpose();
        let ker = kernel_lattice(&m);
        let gens = ker
            .basis
            .iter()
            .map(|v| combine(&v[..k1], &self.basis, self.ambient))
            .collect();
        Ok(IntLattice::from_generators(self.ambient, gens))
    }

    /// Adds generators and returns the lattice they span together with `self`.
    pub fn join(&self, extra: Vec<Vec<BigInt>>) -> IntLattice {
        let mut g = self.basis.clone();
        g.extend(extra);
        IntLattice::from_generators(self.ambient, g)
    }
}

/// Σ cᵢ·rowsᵢ.
pub fn combine(c: &[BigInt], rows: &[Vec<BigInt>], width: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); width];
    for (k, r) in c.iter().zip(rows) {
        if !k.is_zero() {
            axpy(&mut out, k, r);
        }
    }
    out
}

/// {d ∈ ℤ^cols : M·d = 0}.
pub fn kernel_lattice(m: &IntMatrix) -> IntLattice {
    let n = m.ncols();
    let rows = m.nrows();
    // row i of the augmented matrix is (column i of M | e_i)
    let mut aug: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigInt> = (0..rows).map(|k| m.get(k, i).clone()).collect();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let piv = echelon(&mut aug, rows);
    let gens = aug[piv.len()..].iter().map(|r| r[rows..].to_vec()).collect();
    IntLattice::from_generators(n, gens)
}

/// Diagonalizes `b` (k × m) by unimodular row and column operations
/// U·b·W = D and returns (rank, W⁻¹). The first rank rows of W⁻¹ span the
/// saturation of the row space of `b`.
fn diagonalize(b: &[Vec<BigInt>], m: usize) -> (usize, Vec<Vec<BigInt>>) {
    let mut a: Vec<Vec<BigInt>> = b.to_vec();
    let mut winv = IntMatrix::identity(m).rows;
    let k = a.len();
    let mut t = 0;
    while t < k.min(m) {
        // bring a nonzero entry to (t, t)
        let Some((pi, pj)) = (t..k)
            .flat_map(|i| (t..m).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            winv.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..k {
                if !a[i][t].is_zero() {
                    gcd_rows(&mut a, t, i, t);
                    clean = false;
                }
            }
            for j in t + 1..m {
                if !a[t][j].is_zero() {
                    gcd_cols(&mut a, &mut winv, t, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        t += 1;
    }
    (t, winv)
}

fn gcd_cols(a: &mut [Vec<BigInt>], winv: &mut [Vec<BigInt>], r: usize, j: usize) {
    let x = a[r][r].clone();
    let y = a[r][j].clone();
    if (&y % &x).is_zero() {
        let q = &y / &x;
        for row in a.iter_mut() {
            let u = row[r].clone();
            row[j] -= &q * u;
        }
        // column j -= q·column r, so W⁻¹ gains q·(row j) on row r
        let wj = winv[j].clone();
        axpy(&mut winv[r], &q, &wj);
        return;
    }
    let e = x.extended_gcd(&y);
    let (g, s, t) = (e.gcd, e.x, e.y);
    let (xg, yg) = (&x / &g, &y / &g);
    for row in a.iter_mut() {
        let u = row[r].clone();
        let v = row[j].clone();
        row[r] = &s * &u + &t * &v;
        row[j] = &xg * &v - &yg * &u;
    }
    // W⁻¹ ← C⁻¹·W⁻¹ with C⁻¹ = [[x/g, y/g], [−t, s]]
    for c in 0..winv[r].len() {
        let u = winv[r][c].clone();
        let v = winv[j][c].clone();
        winv[r][c] = &xg * &u + &yg * &v;
        winv[j][c] = &s * &v - &t * &u;
    }
}

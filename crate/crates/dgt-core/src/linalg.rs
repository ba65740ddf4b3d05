//! Dense matrices over an exact field.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{DgtError, Result};
use crate::field::rational::denom_lcm;
use crate::field::{zpoly, Field, Poly, RatFunc, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize, sample: &F) -> Self {
        let (z, o) = (sample.zero_like(), sample.one_like());
        Matrix::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn zeros(rows: usize, cols: usize, sample: &F) -> Self {
        let z = sample.zero_like();
        Matrix::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn diagonal(d: &[F]) -> Self {
        let z = d[0].zero_like();
        Matrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { z.clone() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn sample(&self) -> &F {
        &self.data[0]
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Matrix<G>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let z = self.sample().zero_like();
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = z.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get(k, j);
                if !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        let z = self.sample().zero_like();
        (0..self.cols)
            .map(|j| {
                let mut acc = z.clone();
                for (k, a) in v.iter().enumerate() {
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(self.get(k, j)));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(rhs.get(i, j)))
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diag_entries(&self) -> Vec<F> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn det(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = self.sample().one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return det.zero_like();
            };
            if p != c {
                m.swap(p, c);
                det = det.neg();
            }
            let piv = m[c][c].clone();
            det = det.mul(&piv);
            let pinv = piv.inv();
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = m[r][c].mul(&pinv);
                for k in c..n {
                    let v = f.mul(&m[c][k]);
                    m[r][k] = m[r][k].sub(&v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let one = self.sample().one_like();
        let zero = one.zero_like();
        let mut m: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
                r
            })
            .collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Err(DgtError::SingularInput("matrix is not invertible".into()));
            };
            m.swap(p, c);
            let pinv = m[c][c].inv();
            for k in 0..2 * n {
                m[c][k] = m[c][k].mul(&pinv);
            }
            for r in 0..n {
                if r == c || m[r][c].is_zero() {
                    continue;
                }
                let f = m[r][c].clone();
                for k in c..2 * n {
                    let v = f.mul(&m[c][k]);
                    m[r][k] = m[r][k].sub(&v);
                }
            }
        }
        Ok(Matrix::from_rows(m.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    pub fn rank(&self) -> usize {
        rref(self.to_rows(), self.cols).1.len()
    }

    /// Basis of {v : M·v = 0}, in reduced echelon shape (one vector per free
    /// column, with a one there).
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        nullspace_rows(self.to_rows(), self.cols, self.sample())
    }
}

/// Inverse of a matrix of rational functions: rows are cleared to
/// polynomials and inverted by fraction-free Gauss–Jordan elimination, which
/// keeps every intermediate entry a minor of the cleared matrix.
pub fn inverse_ratfunc<C: Field>(m: &Matrix<RatFunc<C>>) -> Result<Matrix<RatFunc<C>>> {
    assert!(m.is_square());
    let n = m.nrows();
    let sample = m.sample().sample().clone();
    let one = Poly::constant(sample.one_like());
    let dens: Vec<Poly<C>> = (0..n)
        .map(|i| {
            m.row(i).iter().fold(one.clone(), |acc, f| {
                let g = Poly::gcd(&acc, f.den());
                acc.mul(&f.den().exact_div(&g).unwrap())
            })
        })
        .collect();
    let mut a: Vec<Vec<Poly<C>>> = (0..n)
        .map(|i| {
            let mut r: Vec<Poly<C>> = m
                .row(i)
                .iter()
                .map(|f| f.num().mul(&dens[i].exact_div(f.den()).unwrap()))
                .collect();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { Poly::zero() }));
            r
        })
        .collect();
    if let Some(inv) = inverse_integer_path(&a, &dens, &sample) {
        return inv;
    }
    let mut prev = one.clone();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Err(DgtError::SingularInput("matrix is not invertible".into()));
        };
        a.swap(p, k);
        let piv = a[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let v = piv.mul(&a[i][j]).sub(&f.mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev).expect("fraction-free step is exact");
            }
            a[i][k] = Poly::zero();
        }
        prev = piv;
    }
    // a[i][i] is the same determinant for every row up to the row swaps
    Ok(Matrix::from_fn(n, n, |i, j| {
        let num = a[i][n + j].mul(&dens[j]);
        RatFunc::new(num, a[i][i].clone()).unwrap()
    }))
}

type IntInverse<C> = Option<Result<Matrix<RatFunc<C>>>>;

/// Same elimination on [P | I] with integer polynomial entries, used when
/// every coefficient is rational.
fn inverse_integer_path<C: Field>(a: &[Vec<Poly<C>>], dens: &[Poly<C>], sample: &C) -> IntInverse<C> {
    let n = a.len();
    let mut rows = Vec::with_capacity(n);
    for r in a {
        let q: Vec<Poly<Rational>> = r
            .iter()
            .map(|p| p.coeffs().iter().map(Field::to_rational_opt).collect::<Option<Vec<_>>>().map(Poly::new))
            .collect::<Option<_>>()?;
        let l = denom_lcm(q.iter().flat_map(|p| p.coeffs()));
        rows.push(q.iter().map(|p| zpoly::to_z(&p.scale(&Rational::from_integer(l.clone()))).1).collect::<Vec<_>>());
    }
    let mut prev: zpoly::ZPoly = vec![BigInt::one()];
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !rows[r][k].is_empty()) else {
            return Some(Err(DgtError::SingularInput("matrix is not invertible".into())));
        };
        rows.swap(p, k);
        let piv = rows[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = rows[i][k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let v = zpoly::cross(&piv, &rows[i][j], &f, &rows[k][j]);
                rows[i][j] = zpoly::exact_div(&v, &prev).expect("fraction-free step is exact");
            }
            rows[i][k] = Vec::new();
        }
        prev = piv;
    }
    // each row was scaled together with its identity block, so no correction
    let lift = |v: &zpoly::ZPoly| -> Poly<C> {
        Poly::new(v.iter().map(|c| sample.from_rational_like(&Rational::from_integer(c.clone()))).collect())
    };
    Some(Ok(Matrix::from_fn(n, n, |i, j| {
        let num = lift(&rows[i][n + j]).mul(&dens[j]);
        RatFunc::new(num, lift(&rows[i][i])).unwrap()
    })))
}

/// Reduced row echelon form; returns the reduced nonzero rows and pivot
/// columns.
pub fn rref<F: Field>(mut m: Vec<Vec<F>>, cols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pinv = m[r][c].inv();
        for k in c..cols {
            m[r][k] = m[r][k].mul(&pinv);
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..cols {
                let v = f.mul(&m[r][k]);
                m[i][k] = m[i][k].sub(&v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn nullspace_rows<F: Field>(m: Vec<Vec<F>>, cols: usize, sample: &F) -> Vec<Vec<F>> {
    let (red, piv) = rref(m, cols);
    let zero = sample.zero_like();
    let one = sample.one_like();
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !piv.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (row, &pc) in red.iter().zip(&piv) {
            v[pc] = row[free].neg();
        }
        out.push(v);
    }
    out
}

/// Incremental rank: rows are fed one at a time and reduced against the
/// rows kept so far.
pub struct RowSpace<F> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Default for RowSpace<F> {
    fn default() -> Self {
        RowSpace { rows: Vec::new() }
    }
}

impl<F: Field> RowSpace<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` and reports whether it was independent of the previous rows.
    pub fn push(&mut self, mut v: Vec<F>) -> bool {
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (k, x) in v.iter_mut().enumerate() {
                if !row[k].is_zero() {
                    *x = x.sub(&f.mul(&row[k]));
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pc) => {
                let inv = v[pc].inv();
                for x in v.iter_mut() {
                    *x = x.mul(&inv);
                }
                self.rows.push((pc, v));
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[1, 1], &[2, 3]]);
        assert_eq!(a.det(), int(1));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, m(&[&[3, -1], &[-2, 1]]));
        assert_eq!(a.mul(&inv), Matrix::identity(2, &int(1)));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn nullspace_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: Rational = (0..3).map(|j| a.get(0, j) * &v[j]).sum();
            assert_eq!(s, int(0));
        }
    }

    #[test]
    fn row_space() {
        let mut rs = RowSpace::new();
        assert!(rs.push(vec![int(1), int(2)]));
        assert!(!rs.push(vec![int(2), int(4)]));
        assert!(rs.push(vec![int(0), int(1)]));
        assert_eq!(rs.rank(), 2);
    }
}

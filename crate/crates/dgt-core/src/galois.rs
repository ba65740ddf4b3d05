//! Characters and defining equations evaluated at matrices over the
//! function field, the Galois-group criterion for proto-Galois groups and
//! Galois groups of diagonal systems.

use num_bigint::BigInt;

use crate::diffsys::iterate;
use crate::error::{DgtError, Result};
use crate::expr::{parse_expr, Expr};
use crate::field::{fx_int, Field, Fx, RatFunc, Rational, TowerElement, TowerField};
use crate::lattice::IntLattice;
use crate::linalg::Matrix;
use crate::multlattice::{verify_relation, z_lattice, ZLattice};

/// A Laurent polynomial in the entries X_ij and det⁻¹, possibly with
/// parameters of the tower. Entries are written `X12` or `X_1_2`, the
/// determinant `det`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    pub text: String,
    expr: Expr,
}

fn entry_index(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix('X')?;
    if let Some(r) = rest.strip_prefix('_') {
        let (i, j) = r.split_once('_')?;
        return Some((i.parse().ok()?, j.parse().ok()?));
    }
    let b = rest.as_bytes();
    if b.len() == 2 && b.iter().all(u8::is_ascii_digit) {
        return Some(((b[0] - b'0') as usize, (b[1] - b'0') as usize));
    }
    None
}

impl Laurent {
    /// Parses and checks that every name is an entry of an n×n matrix,
    /// `det`, `x` or a parameter.
    pub fn parse(text: &str, n: usize, field: &TowerField) -> Result<Self> {
        let expr = parse_expr(text)?;
        for (name, _) in expr.names() {
            let ok = match entry_index(name) {
                Some((i, j)) => (1..=n).contains(&i) && (1..=n).contains(&j),
                None => name == "det" || name == "x" || field.index_of(name).is_some(),
            };
            if !ok {
                return Err(DgtError::UnknownIdentifier(name.to_string()));
            }
        }
        Ok(Laurent {
            text: text.to_string(),
            expr,
        })
    }

    /// Exact value at M. Parameters are read from `params`, which lets the
    /// same equations be evaluated before and after a specialization.
    pub fn eval_with(&self, m: &Matrix<Fx>, field: &TowerField, params: &[TowerElement]) -> Result<Fx> {
        let det = std::cell::OnceCell::new();
        let env = |name: &str| -> Result<Fx> {
            if let Some((i, j)) = entry_index(name) {
                return Ok(m.get(i - 1, j - 1).clone());
            }
            if name == "det" {
                return Ok(det.get_or_init(|| m.det()).clone());
            }
            if name == "x" {
                return Ok(RatFunc::x(&TowerElement::from(1)));
            }
            match field.index_of(name) {
                Some(k) => Ok(RatFunc::constant(params[k].clone())),
                None => Err(DgtError::UnknownIdentifier(name.to_string())),
            }
        };
        self.expr.eval(&fx_int(1), &env).map_err(|e| match e {
            DgtError::DivisionByZero if det.get().is_some_and(Field::is_zero) => {
                DgtError::SingularInput(format!("det = 0 in '{}'", self.text))
            }
            e => e,
        })
    }

    pub fn eval(&self, m: &Matrix<Fx>, field: &TowerField) -> Result<Fx> {
        self.eval_with(m, field, &generators(field))
    }
}

pub fn evaluate_laurent(p: &Laurent, m: &Matrix<Fx>, field: &TowerField) -> Result<Fx> {
    p.eval(m, field)
}

/// True iff every polynomial vanishes at M.
pub fn membership(m: &Matrix<Fx>, polys: &[Laurent], field: &TowerField) -> Result<bool> {
    membership_at(m, polys, field, &generators(field))
}

fn generators(field: &TowerField) -> Vec<TowerElement> {
    (0..field.len()).map(|i| field.gen(i)).collect()
}

fn membership_at(m: &Matrix<Fx>, polys: &[Laurent], field: &TowerField, params: &[TowerElement]) -> Result<bool> {
    for p in polys {
        if !p.eval_with(m, field, params)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// H, H°, a claimed character basis of X(H°) and ℓ = [H : H°].
/// Trusted input: only pointwise memberships are verified.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupData {
    pub n: usize,
    pub field: TowerField,
    pub s: Vec<Laurent>,
    pub t: Vec<Laurent>,
    pub characters: Vec<Laurent>,
    pub components: usize,
    /// Values substituted for the parameters: the generators themselves,
    /// or rationals after a specialization.
    pub params: Vec<TowerElement>,
}

impl GroupData {
    pub fn new(
        n: usize,
        field: TowerField,
        s: &[&str],
        t: &[&str],
        characters: &[&str],
        components: usize,
    ) -> Result<Self> {
        if components == 0 {
            return Err(DgtError::Invalid("the component count must be at least 1".into()));
        }
        let parse = |v: &[&str]| v.iter().map(|p| Laurent::parse(p, n, &field)).collect::<Result<Vec<_>>>();
        let g = GroupData {
            n,
            s: parse(s)?,
            t: parse(t)?,
            characters: parse(characters)?,
            components,
            params: generators(&field),
            field: field.clone(),
        };
        let id = Matrix::identity(n, &fx_int(1));
        for c in &g.characters {
            if c.eval(&id, &field)? != fx_int(1) {
                return Err(DgtError::Invalid(format!("character '{}' is not 1 at the identity", c.text)));
            }
        }
        Ok(g)
    }

    /// The same equations with the parameters replaced by rationals.
    pub fn specialized(&self, values: &[Rational]) -> Self {
        GroupData {
            params: rational_params(values),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Failure {
    /// A_i lies in H° for this i < ℓ.
    ConditionA { index: usize },
    /// ∏ χⱼ(A_ℓ)^{dⱼ} = σ^ℓ(f)/f.
    ConditionB { relation: Vec<BigInt>, witness: Fx },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaloisVerdict {
    pub is_group: bool,
    pub failure: Option<Failure>,
    /// χⱼ(A_ℓ), or empty when condition (a) already failed.
    pub character_values: Vec<Fx>,
}

fn sigma_independence(values: Vec<Fx>, ell: u32) -> GaloisVerdict {
    let z = z_lattice(&values, ell);
    let failure = z.lattice.basis().first().map(|d| {
        let witness = z.witness(d);
        debug_assert!(verify_relation(&values, d, &witness, ell));
        Failure::ConditionB {
            relation: d.clone(),
            witness,
        }
    });
    GaloisVerdict {
        is_group: failure.is_none(),
        failure,
        character_values: values,
    }
}

fn eval_all(cs: &[Laurent], m: &Matrix<Fx>, field: &TowerField, params: &[TowerElement]) -> Result<Vec<Fx>> {
    cs.iter().map(|c| c.eval_with(m, field, params)).collect()
}

/// H connected: H is the Galois group iff the χⱼ(A) are multiplicatively
/// σ-independent.
pub fn connected_criterion(t: &[Laurent], characters: &[Laurent], a: &Matrix<Fx>, field: &TowerField) -> Result<GaloisVerdict> {
    connected_at(t, characters, a, field, &generators(field))
}

fn connected_at(
    t: &[Laurent],
    characters: &[Laurent],
    a: &Matrix<Fx>,
    field: &TowerField,
    params: &[TowerElement],
) -> Result<GaloisVerdict> {
    if !membership_at(a, t, field, params)? {
        return Err(DgtError::NotInGroup("A does not satisfy the equations of H°".into()));
    }
    Ok(sigma_independence(eval_all(characters, a, field, params)?, 1))
}

/// (a) A_i ∉ H° for 1 ≤ i < ℓ and (b) the χⱼ(A_ℓ) are multiplicatively
/// σ^ℓ-independent.
pub fn criterion_check(h: &GroupData, a: &Matrix<Fx>) -> Result<GaloisVerdict> {
    if a.nrows() != h.n || a.ncols() != h.n {
        return Err(DgtError::Invalid(format!("expected a {0}×{0} matrix", h.n)));
    }
    if !membership_at(a, &h.s, &h.field, &h.params)? {
        return Err(DgtError::NotInGroup("A does not satisfy the equations of H".into()));
    }
    let ell = h.components;
    if ell == 1 {
        return connected_at(&h.t, &h.characters, a, &h.field, &h.params);
    }
    for i in 1..ell {
        if membership_at(&iterate(a, i), &h.t, &h.field, &h.params)? {
            return Ok(GaloisVerdict {
                is_group: false,
                failure: Some(Failure::ConditionA { index: i }),
                character_values: Vec::new(),
            });
        }
    }
    let values = eval_all(&h.characters, &iterate(a, ell), &h.field, &h.params)?;
    Ok(sigma_independence(values, ell as u32))
}

/// The Galois group of diag(a₁,…,a_n) is the subtorus cut out by the
/// characters in 𝒵(a₁,…,a_n; 1).
#[derive(Clone, Debug)]
pub struct DiagonalGroup {
    pub characters: ZLattice,
    pub dim: usize,
}

impl DiagonalGroup {
    pub fn lattice(&self) -> &IntLattice {
        &self.characters.lattice
    }
}

pub fn galois_group_diagonal(a: &[Fx]) -> Result<DiagonalGroup> {
    if a.iter().any(Field::is_zero) {
        return Err(DgtError::SingularInput("zero diagonal entry".into()));
    }
    let z = z_lattice(a, 1);
    let dim = a.len() - z.lattice.rank();
    Ok(DiagonalGroup { characters: z, dim })
}

/// Parameter values for `eval_with` after a specialization.
pub fn rational_params(values: &[Rational]) -> Vec<TowerElement> {
    values.iter().cloned().map(TowerElement::Q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::fx_x;

    fn tower(names: &[&str]) -> TowerField {
        TowerField::new(names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn diag(v: &[Fx]) -> Matrix<Fx> {
        Matrix::diagonal(v)
    }

    #[test]
    fn entries_and_det() {
        let k = tower(&[]);
        let m = Matrix::from_rows(vec![vec![fx_int(1), fx_int(2)], vec![fx_int(3), fx_x()]]);
        let p = Laurent::parse("X12 + X_2_2*det^-1", 2, &k).unwrap();
        let det = fx_x().sub(&fx_int(6));
        assert_eq!(p.eval(&m, &k).unwrap(), fx_int(2).add(&fx_x().div(&det)));
        let id = Matrix::identity(2, &fx_int(1));
        assert_eq!(Laurent::parse("det", 2, &k).unwrap().eval(&id, &k).unwrap(), fx_int(1));
        assert!(Laurent::parse("X13", 2, &k).is_err());
        let sing = diag(&[fx_int(0), fx_int(1)]);
        assert!(matches!(
            Laurent::parse("1/det", 2, &k).unwrap().eval(&sing, &k),
            Err(DgtError::SingularInput(_))
        ));
    }

    #[test]
    fn membership_of_unimodular() {
        let k = tower(&[]);
        let sl = vec![Laurent::parse("det - 1", 2, &k).unwrap()];
        assert!(!membership(&diag(&[fx_int(1), fx_int(2)]), &sl, &k).unwrap());
        assert!(membership(&Matrix::identity(2, &fx_int(1)), &sl, &k).unwrap());
    }

    fn torus(n: usize) -> GroupData {
        let mut s = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    s.push(format!("X{i}{j}"));
                }
            }
        }
        let s: Vec<&str> = s.iter().map(String::as_str).collect();
        let chars: Vec<String> = (1..=n).map(|i| format!("X{i}{i}")).collect();
        let chars: Vec<&str> = chars.iter().map(String::as_str).collect();
        GroupData::new(n, tower(&[]), &s, &s, &chars, 1).unwrap()
    }

    #[test]
    fn full_torus() {
        let h = torus(2);
        let v = criterion_check(&h, &diag(&[fx_x(), fx_x()])).unwrap();
        assert!(!v.is_group);
        match v.failure {
            Some(Failure::ConditionB { relation, witness }) => {
                assert_eq!(relation, vec![BigInt::from(1), BigInt::from(-1)]);
                assert!(verify_relation(&v.character_values, &relation, &witness, 1));
            }
            other => panic!("{other:?}"),
        }
        assert!(criterion_check(&h, &diag(&[fx_int(2), fx_x()])).unwrap().is_group);
        let off = Matrix::from_rows(vec![vec![fx_int(1), fx_int(1)], vec![fx_int(0), fx_int(1)]]);
        assert!(matches!(criterion_check(&h, &off), Err(DgtError::NotInGroup(_))));
    }

    #[test]
    fn sign_group_has_two_components() {
        let h = GroupData::new(1, tower(&[]), &["X11^2 - 1"], &["X11 - 1"], &[], 2).unwrap();
        let v = criterion_check(&h, &diag(&[fx_int(-1)])).unwrap();
        assert!(v.is_group);
        let v = criterion_check(&h, &diag(&[fx_int(1)])).unwrap();
        assert_eq!(v.failure, Some(Failure::ConditionA { index: 1 }));
    }

    #[test]
    fn diagonal_groups() {
        let g = galois_group_diagonal(&[fx_int(2), fx_x(), fx_x().add(&fx_int(2))]).unwrap();
        assert_eq!(g.dim, 2);
        assert_eq!(*g.lattice(), IntLattice::from_i64(3, &[vec![0, 1, -1]]));
        let g = galois_group_diagonal(&[fx_int(-1), fx_x(), fx_x().sub(&fx_int(1))]).unwrap();
        assert!(g.lattice().contains_i64(&[2, 0, 0]).unwrap());
    }
}

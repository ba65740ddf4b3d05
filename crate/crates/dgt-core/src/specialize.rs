//! Specializations of the tower parameters to rationals: well-definedness,
//! injectivity on finitely generated groups, basic open sets and
//! Galois-group preservation reports.

use num_bigint::BigInt;

use crate::diffsys::DiffSystem;
use crate::error::{DgtError, Result};
use crate::field::factor::factor_mpoly;
use crate::field::mpoly::{ratfunc_to_fraction, MPoly};
use crate::field::{Field, Fx, Poly, RatFunc, Rational, TowerElement, TowerField};
use crate::galois::{criterion_check, galois_group_diagonal, GaloisVerdict, GroupData};
use crate::lattice::IntLattice;
use crate::linalg::Matrix;
use crate::multlattice::{relation_lattice, verify_relation, FgSubgroup, GroupKind};

/// φ: every parameter of the tower sent to a rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Specialization {
    field: TowerField,
    values: Vec<Rational>,
}

fn lift(p: &Poly<Rational>) -> Poly<TowerElement> {
    Poly::new(p.coeffs().iter().cloned().map(TowerElement::Q).collect())
}

impl Specialization {
    pub fn new(field: &TowerField, assignments: &[(String, Rational)]) -> Result<Self> {
        let mut values = vec![None; field.len()];
        for (name, v) in assignments {
            let i = field
                .index_of(name)
                .ok_or_else(|| DgtError::UnknownIdentifier(name.clone()))?;
            if values[i].is_some() {
                return Err(DgtError::Invalid(format!("parameter '{name}' assigned twice")));
            }
            values[i] = Some(v.clone());
        }
        let values = values
            .into_iter()
            .zip(field.params())
            .map(|(v, name)| v.ok_or_else(|| DgtError::Invalid(format!("parameter '{name}' is not assigned"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Specialization {
            field: field.clone(),
            values,
        })
    }

    pub fn field(&self) -> &TowerField {
        &self.field
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    fn blame(&self, d: &MPoly) -> String {
        let names: Vec<&str> = d
            .support()
            .into_iter()
            .filter(|&i| i < self.field.len())
            .map(|i| self.field.params()[i].as_str())
            .collect();
        names.join(",")
    }

    /// φ(f). Well-defined iff the reduced denominator over ℚ[u, x] does
    /// not vanish identically under φ.
    pub fn apply(&self, f: &Fx, location: &str) -> Result<Fx> {
        let np = self.field.len();
        let (n, d) = ratfunc_to_fraction(f, np);
        let mut dv = d.eval_partial(&self.values, np);
        let (mut n, mut d) = (n, d);
        if dv.is_zero() {
            for (g, _) in factor_mpoly(&d).factors {
                while let (Some(n2), Some(d2)) = (n.exact_div(&g), d.exact_div(&g)) {
                    n = n2;
                    d = d2;
                }
            }
            dv = d.eval_partial(&self.values, np);
            if dv.is_zero() {
                return Err(DgtError::NotWellDefined {
                    param: self.blame(&d),
                    location: location.to_string(),
                });
            }
        }
        let nv = n.eval_partial(&self.values, np);
        RatFunc::new(lift(&nv), lift(&dv))
    }

    pub fn apply_constant(&self, c: &TowerElement, location: &str) -> Result<Rational> {
        let v = self.apply(&RatFunc::constant(c.clone()), location)?;
        Ok(v.as_constant().and_then(|c| c.as_rational().cloned()).expect("parameters are all assigned"))
    }

    pub fn apply_poly(&self, p: &Poly<TowerElement>, location: &str) -> Result<Poly<TowerElement>> {
        let cs = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| Ok(TowerElement::Q(self.apply_constant(c, &format!("{location}, coefficient of x^{i}"))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(cs))
    }

    /// φ(A), which must stay invertible.
    pub fn apply_matrix(&self, a: &Matrix<Fx>) -> Result<Matrix<Fx>> {
        let mut rows = Vec::with_capacity(a.nrows());
        for i in 0..a.nrows() {
            let row = (0..a.ncols())
                .map(|j| self.apply(a.get(i, j), &format!("entry ({}, {})", i + 1, j + 1)))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let m = Matrix::from_rows(rows);
        if m.is_square() && m.det().is_zero() {
            return Err(DgtError::NotInvertible);
        }
        Ok(m)
    }

    pub fn apply_system(&self, a: &DiffSystem) -> Result<DiffSystem> {
        DiffSystem::new(self.apply_matrix(&a.matrix)?, TowerField::rationals())
    }

    pub fn apply_group(&self, g: &FgSubgroup) -> Result<FgSubgroup> {
        let generators = g
            .generators
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let loc = format!("generator {}", i + 1);
                let v = self.apply(x, &loc)?;
                if g.kind == GroupKind::Multiplicative && v.is_zero() {
                    return Err(DgtError::NotWellDefined {
                        param: self.blame(&ratfunc_to_fraction(x, self.field.len()).0),
                        location: format!("{loc} (sent to 0)"),
                    });
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FgSubgroup { kind: g.kind, generators })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Injectivity {
    pub injective: bool,
    pub symbolic: IntLattice,
    pub specialized: IntLattice,
    /// A relation of φ(Γ) that Γ does not satisfy.
    pub witness: Option<Vec<BigInt>>,
}

/// φ is injective on Γ iff Γ and φ(Γ) have the same relation lattice; the
/// image lattice always contains the source lattice.
pub fn is_injective_on(phi: &Specialization, g: &FgSubgroup) -> Result<Injectivity> {
    let image = phi.apply_group(g)?;
    let symbolic = relation_lattice(g);
    let specialized = relation_lattice(&image);
    if !symbolic.is_sublattice_of(&specialized)? {
        return Err(DgtError::Invalid("specialized relation lattice lost a relation".into()));
    }
    let witness = specialized.first_outside(&symbolic)?;
    Ok(Injectivity {
        injective: witness.is_none(),
        symbolic,
        specialized,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasicOpen {
    /// φ lies in every 𝓑(D, Γ). Sufficient for a good specialization;
    /// failure is inconclusive.
    pub member: bool,
    pub groups: Vec<Injectivity>,
}

pub fn basic_open_membership(phi: &Specialization, groups: &[FgSubgroup]) -> Result<BasicOpen> {
    let groups = groups
        .iter()
        .map(|g| is_injective_on(phi, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(BasicOpen {
        member: groups.iter().all(|r| r.injective),
        groups,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Preserved,
    Degenerated,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Preserved => "preserved",
            Verdict::Degenerated => "degenerated",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreservationReport {
    pub well_defined: bool,
    pub symbolic_lattice: IntLattice,
    pub specialized_lattice: IntLattice,
    pub dims: (usize, usize),
    pub verdict: Verdict,
    /// New relation d of φ(A) with f such that ∏ φ(aᵢ)^{dᵢ} = σ(f)/f.
    pub witness: Option<(Vec<BigInt>, Fx)>,
}

/// Exact for diagonal systems: the Galois group is preserved iff the
/// character lattices before and after φ agree.
pub fn preservation_report(a: &Matrix<Fx>, phi: &Specialization) -> Result<PreservationReport> {
    if !a.is_square() || !a.is_diagonal() {
        return Err(DgtError::Invalid("the preservation report needs a diagonal system".into()));
    }
    let b = phi.apply_matrix(a)?;
    let entries = b.diag_entries();
    let before = galois_group_diagonal(&a.diag_entries())?;
    let after = galois_group_diagonal(&entries)?;
    if !before.lattice().is_sublattice_of(after.lattice())? {
        return Err(DgtError::Invalid("specialized character lattice lost a relation".into()));
    }
    let witness = after.lattice().first_outside(before.lattice())?.map(|d| {
        let f = after.characters.witness(&d);
        assert!(verify_relation(&entries, &d, &f, 1), "witness failed verification");
        (d, f)
    });
    Ok(PreservationReport {
        well_defined: true,
        verdict: if witness.is_none() { Verdict::Preserved } else { Verdict::Degenerated },
        dims: (before.dim, after.dim),
        symbolic_lattice: before.characters.lattice,
        specialized_lattice: after.characters.lattice,
        witness,
    })
}

/// Criterion verdicts before and after φ for a general system; conditional
/// on the supplied group data.
#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub before: GaloisVerdict,
    pub after: GaloisVerdict,
}

pub fn criterion_report(h: &GroupData, a: &Matrix<Fx>, phi: &Specialization) -> Result<CriterionReport> {
    let before = criterion_check(h, a)?;
    let after = criterion_check(&h.specialized(phi.values()), &phi.apply_matrix(a)?)?;
    Ok(CriterionReport { before, after })
}

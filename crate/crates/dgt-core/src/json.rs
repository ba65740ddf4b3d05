//! Text in, JSON out: the operations behind the command line and the
//! browser demo. Keys keep insertion order so output is byte-stable.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::diffsys::{self, companion_form, minor_map, monomial_basis, render_monomial, sym_power, system_dimension};
use crate::error::{DgtError, Result};
use crate::expr::{parse_operator, parse_ratfunc, render_fx};
use crate::field::rational::{parse_rational, render_rational};
use crate::field::{Field, Fx, IntegerRoots, Poly, RatFunc, Rational, TowerElement, TowerField};
use crate::galois::{criterion_check, galois_group_diagonal, Failure, GaloisVerdict};
use crate::io::{LoadedSystem, SystemFile};
use crate::lattice::IntLattice;
use crate::linalg::Matrix;
use crate::multlattice::{radical_subgroup, z_lattice};
use crate::ore::{
    hyper_certificates, indicial_polynomial, polynomial_degree_bound, polynomial_solutions, verify_alg_certificate,
    verify_certificate, DiffOperator, HyperField, HyperOutcome,
};
use crate::specialize::{basic_open_membership, criterion_report, preservation_report, BasicOpen, Specialization};

pub const BASIC_OPEN_NOTE: &str = "in basic open set implies good; failure is inconclusive";
pub const CONDITIONAL_NOTE: &str = "conditional on supplied group data";

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn vector_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn lattice_json(l: &IntLattice) -> Value {
    Value::Array(l.basis().iter().map(|v| vector_json(v)).collect())
}

fn render_rf<C: Field>(f: &RatFunc<C>, var: &str, coeff: &dyn Fn(&C) -> (String, bool)) -> String {
    let part = |p: &Poly<C>| {
        let txt = p.render_with(var, coeff);
        let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
        let compound = terms > 1 || (terms == 1 && coeff(p.lc().unwrap()).1);
        (txt, compound)
    };
    let (num, nc) = part(f.num());
    if f.den().is_constant() {
        return num;
    }
    let (den, dc) = part(f.den());
    let wrap = |t: String, c: bool| if c { format!("({t})") } else { t };
    format!("{}/{}", wrap(num, nc), wrap(den, dc))
}

/// Coefficient printing shared by ℚ and the tower.
trait Render: Field {
    fn text(&self, names: &[String]) -> (String, bool);
}

impl Render for Rational {
    fn text(&self, _: &[String]) -> (String, bool) {
        (render_rational(self), false)
    }
}

impl Render for TowerElement {
    fn text(&self, names: &[String]) -> (String, bool) {
        self.render(names)
    }
}

fn fx_text(f: &Fx, field: &TowerField, var: &str) -> String {
    render_fx(f, field.params(), var)
}

fn fx_list(fs: &[Fx], field: &TowerField, var: &str) -> Value {
    Value::Array(fs.iter().map(|f| json!(fx_text(f, field, var))).collect())
}

fn matrix_json(m: &Matrix<Fx>, field: &TowerField, var: &str) -> Value {
    Value::Array((0..m.nrows()).map(|i| fx_list(m.row(i), field, var)).collect())
}

fn tower(params: &[String]) -> Result<TowerField> {
    TowerField::new(params.to_vec())
}

/// "a, b; c, d" with rows separated by ';'.
pub fn matrix_system(text: &str, params: &[String], var: &str) -> Result<LoadedSystem> {
    let rows: Vec<Vec<String>> = text
        .split(';')
        .map(|r| r.split(',').map(|e| e.trim().to_string()).collect())
        .collect();
    SystemFile {
        parameters: params.to_vec(),
        variable: var.to_string(),
        matrix: rows,
        group: None,
        gammas: Vec::new(),
    }
    .load()
}

pub fn load_system(json_text: &str) -> Result<LoadedSystem> {
    SystemFile::from_json(json_text)?.load()
}

fn operator(op: &str, params: &[String]) -> Result<(DiffOperator<TowerElement>, TowerField)> {
    let field = tower(params)?;
    Ok((parse_operator(op, &field, "x")?, field))
}

fn rational_operator(l: &DiffOperator<TowerElement>) -> DiffOperator<Rational> {
    l.map(|c| c.as_rational().cloned().expect("rational operator"))
}

fn hyper_json<C: HyperField + Render>(l: &DiffOperator<C>, out: &HyperOutcome<C>, names: &[String]) -> Value {
    let coeff = |c: &C| c.text(names);
    let mut m = Map::new();
    let certs: Vec<Value> = out
        .certificates
        .iter()
        .map(|c| {
            assert!(verify_certificate(l, &c.rate), "certificate failed verification");
            json!(render_rf(&c.rate, "x", &coeff))
        })
        .collect();
    m.insert("certificates".into(), Value::Array(certs));
    if !out.algebraic.is_empty() {
        let alg: Vec<Value> = out
            .algebraic
            .iter()
            .map(|a| {
                json!({
                    "minpoly": a.minpoly.render_with("y", |c| (render_rational(c), false)),
                    "certificate": render_rf(&a.cert.rate, "x", &|c: &crate::field::AlgElem| c.render("y")),
                })
            })
            .collect();
        m.insert("algebraic".into(), Value::Array(alg));
    }
    if !out.extension_classes.is_empty() {
        let ext: Vec<Value> = out
            .extension_classes
            .iter()
            .map(|e| {
                json!({
                    "p": e.p.render_with("x", coeff),
                    "q": e.q.render_with("x", coeff),
                    "minpoly": e.minpoly.render_with("y", coeff),
                })
            })
            .collect();
        m.insert("extension_classes".into(), Value::Array(ext));
    }
    Value::Object(m)
}

/// Hypergeometric solutions of an operator in `s`; algebraic constants
/// are adjoined only over ℚ.
pub fn hyper(op: &str, params: &[String], algebraic: bool) -> Result<Value> {
    let (l, field) = operator(op, params)?;
    if field.is_empty() {
        let lq = rational_operator(&l);
        let out = hyper_certificates(&lq, algebraic)?;
        for a in &out.algebraic {
            assert!(verify_alg_certificate(&lq, a), "algebraic certificate failed verification");
        }
        Ok(hyper_json(&lq, &out, &[]))
    } else if algebraic {
        Err(DgtError::UnsupportedConstantField("algebraic certificates need rational coefficients".into()))
    } else {
        Ok(hyper_json(&l, &hyper_certificates(&l, false)?, field.params()))
    }
}

fn polysols_json<C: IntegerRoots + Render>(l: &DiffOperator<C>, names: &[String]) -> Result<Value> {
    let bound = polynomial_degree_bound(l);
    let sols = polynomial_solutions(l)?;
    Ok(json!({
        "degree_bound": int_json(&bound),
        "solutions": sols.iter().map(|p| p.render_with("x", |c| c.text(names))).collect::<Vec<_>>(),
    }))
}

pub fn polysols(op: &str, params: &[String]) -> Result<Value> {
    let (l, field) = operator(op, params)?;
    if field.is_empty() {
        polysols_json(&rational_operator(&l), &[])
    } else {
        polysols_json(&l, field.params())
    }
}

fn indicial_json<C: IntegerRoots + Render>(l: &DiffOperator<C>, names: &[String]) -> Value {
    let ind = indicial_polynomial(l);
    let roots = C::integer_roots(&ind);
    json!({
        "indicial": ind.render_with("x", |c| c.text(names)),
        "integer_roots": roots.iter().map(int_json).collect::<Vec<_>>(),
    })
}

pub fn indicial(op: &str, params: &[String]) -> Result<Value> {
    let (l, field) = operator(op, params)?;
    Ok(if field.is_empty() {
        indicial_json(&rational_operator(&l), &[])
    } else {
        indicial_json(&l, field.params())
    })
}

pub fn dim(sys: &LoadedSystem) -> Value {
    json!({ "dim": system_dimension(&sys.system.matrix) })
}

pub fn sym(sys: &LoadedSystem, nu: u32) -> Value {
    let n = sys.system.n();
    let s = sym_power(&sys.system.matrix, nu);
    json!({
        "monomials": monomial_basis(n, nu).iter().map(|e| render_monomial(e, n)).collect::<Vec<_>>(),
        "matrix": matrix_json(&s, sys.field(), &sys.variable),
    })
}

pub fn minor(sys: &LoadedSystem, l: usize) -> Result<Value> {
    let m = minor_map(&sys.system.matrix, l)?;
    let sets: Vec<Vec<usize>> = diffsys::index_sets(sys.system.n(), l)
        .into_iter()
        .map(|s| s.into_iter().map(|i| i + 1).collect())
        .collect();
    Ok(json!({
        "index_sets": sets,
        "matrix": matrix_json(&m, sys.field(), &sys.variable),
    }))
}

pub fn companion(sys: &LoadedSystem) -> Result<Value> {
    let (field, var) = (sys.field(), sys.variable.as_str());
    let c = companion_form(&sys.system.matrix)?;
    let n = c.coeffs.len();
    let mut op = if n == 1 { "s".to_string() } else { format!("s^{n}") };
    for i in (0..n).rev() {
        let a = &c.coeffs[i];
        if a.is_zero() {
            continue;
        }
        let mut t = fx_text(a, field, var);
        let simple = a.den().is_constant() && a.num().coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        let negative = simple && t.starts_with('-');
        if negative {
            t.remove(0);
        }
        if !simple || (i > 0 && t.contains(['/', '*'])) {
            t = format!("({t})");
        }
        let term = match (i, t.as_str()) {
            (0, _) => t,
            (1, "1") => "s".into(),
            (1, _) => format!("{t}*s"),
            (_, "1") => format!("s^{i}"),
            _ => format!("{t}*s^{i}"),
        };
        op.push_str(if negative { " - " } else { " + " });
        op.push_str(&term);
    }
    Ok(json!({
        "vector": fx_list(&c.vector, field, var),
        "operator": op,
        "coefficients": fx_list(&c.coeffs, field, var),
        "T": matrix_json(&c.t, field, var),
    }))
}

fn entries(list: &[String], params: &[String]) -> Result<(Vec<Fx>, TowerField)> {
    let field = tower(params)?;
    let v = list
        .iter()
        .map(|e| parse_ratfunc(e, &field, "x"))
        .collect::<Result<Vec<_>>>()?;
    if v.iter().any(Field::is_zero) {
        return Err(DgtError::Invalid("entries must be nonzero".into()));
    }
    Ok((v, field))
}

pub fn zlattice(list: &[String], ell: u32, params: &[String]) -> Result<Value> {
    if ell == 0 {
        return Err(DgtError::Invalid("ℓ must be at least 1".into()));
    }
    let (a, field) = entries(list, params)?;
    let z = z_lattice(&a, ell);
    let mut m = Map::new();
    m.insert("lattice".into(), lattice_json(&z.lattice));
    m.insert("dim".into(), json!(z.lattice.rank()));
    if !z.lattice.is_zero() {
        let w: Vec<Value> = z
            .basis_with_witnesses()
            .iter()
            .map(|(_, f)| json!(fx_text(f, &field, "x")))
            .collect();
        m.insert("witnesses".into(), Value::Array(w));
    }
    Ok(Value::Object(m))
}

pub fn galois_diag(list: &[String], params: &[String]) -> Result<Value> {
    let (a, _) = entries(list, params)?;
    let g = galois_group_diagonal(&a)?;
    Ok(json!({
        "dim": g.dim,
        "characters": lattice_json(g.lattice()),
    }))
}

fn verdict_json(v: &GaloisVerdict, field: &TowerField, var: &str) -> Value {
    let failure = match &v.failure {
        None => Value::Null,
        Some(Failure::ConditionA { index }) => json!({ "condition": "a", "index": index }),
        Some(Failure::ConditionB { relation, witness }) => json!({
            "condition": "b",
            "relation": vector_json(relation),
            "witness": fx_text(witness, field, var),
        }),
    };
    json!({
        "is_group": v.is_group,
        "failure": failure,
        "character_values": fx_list(&v.character_values, field, var),
    })
}

pub fn criterion(sys: &LoadedSystem) -> Result<Value> {
    let h = sys
        .group
        .as_ref()
        .ok_or_else(|| DgtError::Invalid("the system file has no group block".into()))?;
    let v = criterion_check(h, &sys.system.matrix)?;
    let mut out = verdict_json(&v, sys.field(), &sys.variable);
    out["note"] = json!(CONDITIONAL_NOTE);
    Ok(out)
}

pub fn radical(gens: &[String]) -> Result<Value> {
    let g = gens
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| DgtError::Invalid(format!("'{s}' is not a rational number"))))
        .collect::<Result<Vec<_>>>()?;
    let r = radical_subgroup(&g)?;
    Ok(json!({ "generators": r.iter().map(render_rational).collect::<Vec<_>>() }))
}

/// Parses "name=value" assignments.
pub fn specialization(field: &TowerField, assign: &[String]) -> Result<Specialization> {
    let pairs = assign
        .iter()
        .map(|a| {
            let (name, value) = a
                .split_once('=')
                .ok_or_else(|| DgtError::Invalid(format!("expected name=value, got '{a}'")))?;
            let v = parse_rational(value).ok_or_else(|| DgtError::Invalid(format!("'{value}' is not a rational number")))?;
            Ok((name.trim().to_string(), v))
        })
        .collect::<Result<Vec<_>>>()?;
    Specialization::new(field, &pairs)
}

fn basic_open_json(b: &BasicOpen) -> Value {
    json!({
        "member": b.member,
        "groups": b.groups.iter().map(|g| json!({
            "injective": g.injective,
            "witness": g.witness.as_ref().map_or(Value::Null, |w| vector_json(w)),
        })).collect::<Vec<_>>(),
        "note": BASIC_OPEN_NOTE,
    })
}

pub fn specialize(sys: &LoadedSystem, assign: &[String]) -> Result<Value> {
    let phi = specialization(sys.field(), assign)?;
    let b = phi.apply_matrix(&sys.system.matrix)?;
    let mut m = Map::new();
    m.insert("matrix".into(), matrix_json(&b, &TowerField::rationals(), &sys.variable));
    if !sys.gammas.is_empty() {
        m.insert("basic_open".into(), basic_open_json(&basic_open_membership(&phi, &sys.gammas)?));
    }
    Ok(Value::Object(m))
}

/// Exact verdict for diagonal systems; for other systems the criterion
/// before and after, conditional on the supplied group data.
pub fn report(sys: &LoadedSystem, assign: &[String]) -> Result<Value> {
    let phi = specialization(sys.field(), assign)?;
    let a = &sys.system.matrix;
    let mut m = Map::new();
    if a.is_diagonal() {
        let r = preservation_report(a, &phi)?;
        let q = TowerField::rationals();
        m.insert("verdict".into(), json!(r.verdict.as_str()));
        m.insert("witness".into(), r.witness.as_ref().map_or(Value::Null, |(d, _)| vector_json(d)));
        m.insert(
            "witness_f".into(),
            r.witness.as_ref().map_or(Value::Null, |(_, f)| json!(fx_text(f, &q, &sys.variable))),
        );
        m.insert("dims".into(), json!({ "symbolic": r.dims.0, "specialized": r.dims.1 }));
        m.insert("symbolic_lattice".into(), lattice_json(&r.symbolic_lattice));
        m.insert("specialized_lattice".into(), lattice_json(&r.specialized_lattice));
        m.insert("exact".into(), json!(true));
    } else {
        let h = sys.group.as_ref().ok_or_else(|| {
            DgtError::Invalid("exact reports need a diagonal system; supply a group block otherwise".into())
        })?;
        let r = criterion_report(h, a, &phi)?;
        let verdict = match (r.before.is_group, r.after.is_group) {
            (true, true) => "preserved",
            (true, false) => "degenerated",
            _ => "inconclusive",
        };
        m.insert("verdict".into(), json!(verdict));
        m.insert("before".into(), verdict_json(&r.before, sys.field(), &sys.variable));
        m.insert("after".into(), verdict_json(&r.after, &TowerField::rationals(), &sys.variable));
        m.insert("exact".into(), json!(false));
        m.insert("note".into(), json!(CONDITIONAL_NOTE));
    }
    if !sys.gammas.is_empty() {
        m.insert("basic_open".into(), basic_open_json(&basic_open_membership(&phi, &sys.gammas)?));
    }
    Ok(Value::Object(m))
}

/// Canonical text of an expression over the given tower.
pub fn normalize(text: &str, params: &[String]) -> Result<Value> {
    let field = tower(params)?;
    let f = parse_ratfunc(text, &field, "x")?;
    Ok(json!({ "value": fx_text(&f, &field, "x") }))
}

pub fn error_json(e: &DgtError) -> Value {
    let mut m = Map::new();
    m.insert("error".into(), json!(e.kind()));
    m.insert("message".into(), json!(e.to_string()));
    if let DgtError::SyntaxError { offset, line, column, .. } = e {
        m.insert("offset".into(), json!(offset));
        m.insert("line".into(), json!(line));
        m.insert("column".into(), json!(column));
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn documented_outputs() {
        let v = zlattice(&p(&["t", "x", "x+t"]), 1, &p(&["t"])).unwrap();
        assert_eq!(v.to_string(), r#"{"lattice":[],"dim":0}"#);
        let v = hyper("s^2-5*s+6", &[], false).unwrap();
        assert_eq!(v.to_string(), r#"{"certificates":["2","3"]}"#);
        let sys = matrix_system("t, 0, 0; 0, x, 0; 0, 0, x+t", &p(&["t"]), "x").unwrap();
        let v = report(&sys, &p(&["t=7"])).unwrap();
        assert_eq!(v["verdict"], "degenerated");
        assert_eq!(v["witness"], json!([0, 1, -1]));
    }
}

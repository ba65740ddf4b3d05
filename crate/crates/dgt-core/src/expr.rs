//! Expression front end.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | base ('^' ['-'] integer)?
//! base   := integer | name | '(' expr ')'
//! ```
//!
//! Names resolve through a caller-supplied environment, so the same parser
//! reads rational functions, operators in `s` and Laurent polynomials in
//! matrix entries.

use num_bigint::BigInt;

use crate::error::{DgtError, Result};
use crate::field::{Field, Fx, Poly, RatFunc, Rational, TowerElement, TowerField};
use crate::ore::DiffOperator;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Name { name: String, offset: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn syntax_error(text: &str, offset: usize, message: impl Into<String>) -> DgtError {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |p| before[p + 1..].chars().count()) + 1;
    DgtError::SyntaxError {
        offset,
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                it.next();
            }
            out.push((Tok::Int(text[i..end].parse().unwrap()), i));
        } else if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            out.push((Tok::Name(text[i..end].to_string()), i));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            it.next();
        } else {
            return Err(syntax_error(text, i, format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: &str) -> DgtError {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Int(n) => format!("'{n}'"),
            Tok::Name(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
        };
        syntax_error(self.text, self.offset(), format!("{message}, found {found}"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let at = self.offset();
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.error("expected an integer exponent"));
        };
        self.pos += 1;
        let e: i64 = n
            .try_into()
            .map_err(|_| syntax_error(self.text, at, "exponent out of range"))?;
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
    }

    fn base(&mut self) -> Result<Expr> {
        let off = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Tok::Name(name) => {
                self.pos += 1;
                Ok(Expr::Name { name, offset: off })
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.error("expected a number, a name or '('")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        text,
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("unexpected input"));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates in a field; `env` resolves names and `sample` supplies
    /// constants.
    pub fn eval<F: Field>(&self, sample: &F, env: &dyn Fn(&str) -> Result<F>) -> Result<F> {
        Ok(match self {
            Expr::Int(n) => sample.from_rational_like(&Rational::from_integer(n.clone())),
            Expr::Name { name, .. } => env(name)?,
            Expr::Neg(a) => a.eval(sample, env)?.neg(),
            Expr::Add(a, b) => a.eval(sample, env)?.add(&b.eval(sample, env)?),
            Expr::Sub(a, b) => a.eval(sample, env)?.sub(&b.eval(sample, env)?),
            Expr::Mul(a, b) => a.eval(sample, env)?.mul(&b.eval(sample, env)?),
            Expr::Div(a, b) => {
                let d = b.eval(sample, env)?;
                if d.is_zero() {
                    return Err(DgtError::DivisionByZero);
                }
                a.eval(sample, env)?.div(&d)
            }
            Expr::Pow(a, e) => {
                let v = a.eval(sample, env)?;
                if *e < 0 && v.is_zero() {
                    return Err(DgtError::DivisionByZero);
                }
                v.powi(*e)
            }
        })
    }

    /// Every name occurring in the expression, in order of appearance.
    pub fn names(&self) -> Vec<(&str, usize)> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<(&'a str, usize)>) {
        match self {
            Expr::Int(_) => {}
            Expr::Name { name, offset } => out.push((name, *offset)),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_names(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
        }
    }
}

/// Resolves `var` and the tower parameters.
pub fn ratfunc_env<'a>(field: &'a TowerField, var: &'a str) -> impl Fn(&str) -> Result<Fx> + 'a {
    move |name: &str| {
        if name == var {
            Ok(RatFunc::x(&TowerElement::from(1)))
        } else if let Some(i) = field.index_of(name) {
            Ok(RatFunc::constant(field.gen(i)))
        } else {
            Err(DgtError::UnknownIdentifier(name.to_string()))
        }
    }
}

/// Parses a rational function in `var` over the tower.
pub fn parse_ratfunc(text: &str, field: &TowerField, var: &str) -> Result<Fx> {
    let e = parse_expr(text)?;
    e.eval(&RatFunc::constant(TowerElement::from(1)), &ratfunc_env(field, var))
}

/// Parses a constant of the tower.
pub fn parse_constant(text: &str, field: &TowerField) -> Result<TowerElement> {
    let f = parse_ratfunc(text, field, "\u{0}")?;
    f.as_constant()
        .ok_or_else(|| DgtError::Invalid(format!("'{text}' is not a constant")))
}

/// Coefficients of s⁰, s¹, … with the function on the left; s·f = σ(f)·s.
type Ore = Vec<Fx>;

fn ore_trim(mut a: Ore) -> Ore {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn ore_add(a: &Ore, b: &Ore, sign: i64) -> Ore {
    let zero = RatFunc::constant(TowerElement::from(0));
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            if sign > 0 {
                x.add(y)
            } else {
                x.sub(y)
            }
        })
        .collect();
    ore_trim(v)
}

fn ore_mul(a: &Ore, b: &Ore) -> Ore {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RatFunc::constant(TowerElement::from(0)); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ai.mul(&bj.shift(i as i64)));
        }
    }
    ore_trim(out)
}

fn ore_eval(e: &Expr, env: &dyn Fn(&str) -> Result<Fx>, shift: &str) -> Result<Ore> {
    let constant = |n: &BigInt| ore_trim(vec![RatFunc::constant(TowerElement::Q(Rational::from_integer(n.clone())))]);
    Ok(match e {
        Expr::Int(n) => constant(n),
        Expr::Name { name, .. } if name == shift => vec![RatFunc::constant(TowerElement::from(0)), RatFunc::constant(TowerElement::from(1))],
        Expr::Name { name, .. } => ore_trim(vec![env(name)?]),
        Expr::Neg(a) => ore_add(&Vec::new(), &ore_eval(a, env, shift)?, -1),
        Expr::Add(a, b) => ore_add(&ore_eval(a, env, shift)?, &ore_eval(b, env, shift)?, 1),
        Expr::Sub(a, b) => ore_add(&ore_eval(a, env, shift)?, &ore_eval(b, env, shift)?, -1),
        Expr::Mul(a, b) => ore_mul(&ore_eval(a, env, shift)?, &ore_eval(b, env, shift)?),
        Expr::Div(a, b) => {
            let d = ore_eval(b, env, shift)?;
            match d.len() {
                0 => return Err(DgtError::DivisionByZero),
                1 => ore_mul(&ore_eval(a, env, shift)?, &vec![d[0].inv()]),
                _ => return Err(DgtError::Invalid("division by an expression involving the shift".into())),
            }
        }
        Expr::Pow(a, k) => {
            let base = ore_eval(a, env, shift)?;
            let base = if *k >= 0 {
                base
            } else {
                match base.len() {
                    0 => return Err(DgtError::DivisionByZero),
                    1 => vec![base[0].inv()],
                    _ => return Err(DgtError::Invalid("negative power of the shift".into())),
                }
            };
            let mut acc = constant(&BigInt::from(1));
            for _ in 0..k.unsigned_abs() {
                acc = ore_mul(&acc, &base);
            }
            acc
        }
    })
}

/// Parses a difference operator written with `s` for σ, e.g.
/// `x*s - (x+1)`. Denominators are cleared on the left.
pub fn parse_operator(text: &str, field: &TowerField, var: &str) -> Result<DiffOperator<TowerElement>> {
    const SHIFT: &str = "s";
    if field.index_of(SHIFT).is_some() || var == SHIFT {
        return Err(DgtError::Invalid("the name 's' is reserved for the shift in operators".into()));
    }
    let e = parse_expr(text)?;
    let coeffs = ore_eval(&e, &ratfunc_env(field, var), SHIFT)?;
    if coeffs.is_empty() {
        return Err(DgtError::Invalid("the zero operator".into()));
    }
    if coeffs[0].is_zero() {
        return Err(DgtError::Invalid("the coefficient of s^0 must be nonzero".into()));
    }
    Ok(DiffOperator::from_ratfuncs(&coeffs))
}

fn render_poly(p: &Poly<TowerElement>, names: &[String], var: &str) -> (String, bool) {
    let txt = p.render_with(var, |c| c.render(names));
    let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
    let compound = terms > 1 || (terms == 1 && p.lc().unwrap().render(names).1);
    (txt, compound)
}

/// Canonical text of a rational function; parses back to the same value.
pub fn render_fx(f: &Fx, names: &[String], var: &str) -> String {
    let (num, ncomp) = render_poly(f.num(), names, var);
    if f.den().is_constant() {
        return num;
    }
    let (den, dcomp) = render_poly(f.den(), names, var);
    let num = if ncomp { format!("({num})") } else { num };
    let den = if dcomp { format!("({den})") } else { den };
    format!("{num}/{den}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{fx_int, fx_x};

    fn q() -> TowerField {
        TowerField::rationals()
    }

    #[test]
    fn parses_quotients() {
        let f = parse_ratfunc("(x+1)/(x-1)", &q(), "x").unwrap();
        let g = fx_x().add(&fx_int(1)).div(&fx_x().sub(&fx_int(1)));
        assert_eq!(f, g);
        assert_eq!(render_fx(&f, &[], "x"), "(x + 1)/(x - 1)");
    }

    #[test]
    fn parses_over_a_tower() {
        let k = TowerField::new(vec!["t".into()]).unwrap();
        let f = parse_ratfunc("t*x^2 - 1/2", &k, "x").unwrap();
        let t = RatFunc::constant(k.gen(0));
        let g = t.mul(&fx_x().pow(2)).sub(&fx_int(1).div(&fx_int(2)));
        assert_eq!(f, g);
        assert_eq!(parse_ratfunc(&render_fx(&f, k.params(), "x"), &k, "x").unwrap(), f);
    }

    #[test]
    fn reports_offsets() {
        match parse_expr("x++1") {
            Err(DgtError::SyntaxError { offset, line, column, .. }) => {
                assert_eq!((offset, line, column), (2, 1, 3));
            }
            other => panic!("{other:?}"),
        }
        match parse_expr("1 +\n (x") {
            Err(DgtError::SyntaxError { offset, line, column, .. }) => {
                assert_eq!((offset, line, column), (7, 2, 4));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_ratfunc("y + 1", &q(), "x"),
            Err(DgtError::UnknownIdentifier("y".into()))
        );
    }

    #[test]
    fn operators_do_not_commute() {
        let k = q();
        let l = parse_operator("s*x - x - 1", &k, "x").unwrap();
        // s·x = (x+1)·s
        let p = |v: Vec<i64>| Poly::new(v.into_iter().map(TowerElement::from).collect());
        assert_eq!(l.coeffs(), &[p(vec![-1, -1]), p(vec![1, 1])]);
        let l = parse_operator("s^2 - 5*s + 6", &k, "x").unwrap();
        assert_eq!(l.coeffs(), &[p(vec![6]), p(vec![-5]), p(vec![1])]);
        // (s − x)·x⁻¹ = (x+1)⁻¹·s − 1
        let l = parse_operator("(s - x)/x", &k, "x").unwrap();
        assert_eq!(l.coeffs(), &[p(vec![-1, -1]), p(vec![1])]);
        let t = TowerField::new(vec!["s".into()]).unwrap();
        assert!(parse_operator("s", &t, "x").is_err());
        assert!(parse_operator("s", &k, "x").is_err());
    }

    #[test]
    fn power_binds_tighter() {
        let f = parse_ratfunc("-x^2", &q(), "x").unwrap();
        assert_eq!(f, fx_x().pow(2).neg());
        let f = parse_ratfunc("2*x^-1", &q(), "x").unwrap();
        assert_eq!(f, fx_int(2).div(&fx_x()));
        assert_eq!(parse_ratfunc("1/(x-x)", &q(), "x"), Err(DgtError::DivisionByZero));
    }
}

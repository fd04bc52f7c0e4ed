//! Textual and JSON syntax for elements, and the bracket-expression
//! evaluator used by the command line.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := [number ['*']] product
//! product := atom ('.' atom)*
//! atom    := x<i> | e<i> | z<i> | d<i> | number | '(' expr ')'
//!          | '[' expr ',' expr ']' | div(expr) | ham(expr) | pb(expr, expr)
//! ```

use serde_json::{json, Value as Json};

use crate::algebra::{AlgebraDesc, Element, Series};
use crate::grassmann::{HSplit, Monomial, SuperPoly, VarNames};
use crate::scalar::{Field, Rational};
use crate::vectorfields::{bracket, divergence, hamiltonian, poisson, VectorField};
use crate::{Error, Result};

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Function(SuperPoly<Rational>),
    Field(VectorField<Rational>),
}

impl Value {
    pub fn render(&self, names: &VarNames) -> String {
        match self {
            Value::Function(f) => f.render(names),
            Value::Field(v) => v.render(names),
        }
    }

    pub fn into_element(self) -> Element {
        match self {
            Value::Function(f) => Element::Function(f),
            Value::Field(v) => Element::Field(v),
        }
    }
}

/// Evaluation context: the number of variables, their names, and
/// optionally the ambient whose bracket `[A, B]` should use.
pub struct Context<'a> {
    pub n: usize,
    pub names: VarNames,
    pub ambient: Option<&'a AlgebraDesc>,
}

impl<'a> Context<'a> {
    pub fn for_algebra(desc: &'a AlgebraDesc) -> Self {
        Context {
            n: desc.n(),
            names: desc.names(),
            ambient: Some(desc),
        }
    }

    pub fn plain(n: usize) -> Self {
        Context {
            n,
            names: VarNames::Plain,
            ambient: None,
        }
    }

    fn split(&self) -> Result<HSplit> {
        match self.names {
            VarNames::Split(s) => Ok(s),
            VarNames::Plain => Ok(HSplit::standard(self.n)),
        }
    }
}

pub fn eval(src: &str, ctx: &Context) -> Result<Value> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        ctx,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a, 'b> {
    chars: Vec<char>,
    pos: usize,
    ctx: &'a Context<'b>,
}

impl Parser<'_, '_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn n(&self) -> usize {
        self.ctx.n
    }

    fn expr(&mut self) -> Result<Value> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = self.scale(acc, &Rational::from_i64(-1));
        }
        loop {
            let at = self.pos;
            if self.eat('+') {
                let t = self.term()?;
                acc = self.add(acc, t, at)?;
            } else if self.eat('-') {
                let t = self.term()?;
                let t = self.scale(t, &Rational::from_i64(-1));
                acc = self.add(acc, t, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let start = self.pos;
            let c = self.number()?;
            let explicit = self.eat('*');
            let next = self.peek();
            let continues = matches!(next, Some('x' | 'e' | 'z' | 'd' | 'p' | 'h' | '(' | '['));
            if explicit || continues {
                let v = self.product()?;
                return Ok(self.scale(v, &c));
            }
            self.pos = start;
        }
        self.product()
    }

    fn number(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/') {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<Rational>().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("bad number `{s}`"),
        })
    }

    fn product(&mut self) -> Result<Value> {
        let mut acc = self.atom()?;
        loop {
            let at = self.pos;
            if !self.eat('.') {
                return Ok(acc);
            }
            let rhs = self.atom()?;
            acc = self.mul(acc, rhs, at)?;
        }
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "expected a variable index".into(),
        })
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let k: Vec<char> = kw.chars().collect();
        if self.chars[self.pos..].starts_with(&k) {
            let after = self.chars.get(self.pos + k.len()).copied();
            if after.map_or(true, |c| c == '(' || c.is_whitespace()) {
                self.pos += k.len();
                return true;
            }
        }
        false
    }

    fn atom(&mut self) -> Result<Value> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if self.keyword("div") {
            self.expect('(')?;
            let at = self.pos;
            let a = self.expr()?;
            self.expect(')')?;
            return match a {
                Value::Field(v) => Ok(Value::Function(divergence(&v))),
                Value::Function(_) => Err(Error::Parse {
                    pos: at,
                    msg: "div expects a vector field".into(),
                }),
            };
        }
        if self.keyword("ham") {
            self.expect('(')?;
            let at = self.pos;
            let a = self.expr()?;
            self.expect(')')?;
            return match a {
                Value::Function(f) => Ok(Value::Field(hamiltonian(&self.ctx.split()?, &f)?)),
                Value::Field(_) => Err(Error::Parse {
                    pos: at,
                    msg: "ham expects a generating function".into(),
                }),
            };
        }
        if self.keyword("pb") {
            self.expect('(')?;
            let at = self.pos;
            let a = self.expr()?;
            self.expect(',')?;
            let b = self.expr()?;
            self.expect(')')?;
            return match (a, b) {
                (Value::Function(f), Value::Function(g)) => {
                    Ok(Value::Function(poisson(&self.ctx.split()?, &f, &g)?))
                }
                _ => Err(Error::Parse {
                    pos: at,
                    msg: "pb expects two generating functions".into(),
                }),
            };
        }
        match c {
            '(' => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            '[' => {
                self.pos += 1;
                let at = self.pos;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                self.bracket(a, b, at)
            }
            'x' | 'e' | 'z' | 'd' => {
                let at = self.pos;
                self.pos += 1;
                let i = self.index()?;
                if c == 'd' {
                    if i == 0 || i > self.n() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: format!("d{i} out of range for n = {}", self.n()),
                        });
                    }
                    return Ok(Value::Field(VectorField::partial(self.n(), i)));
                }
                let v = self.ctx.names.index(c, i, self.n()).ok_or_else(|| Error::Parse {
                    pos: at,
                    msg: format!("no variable {c}{i} in this coordinate system"),
                })?;
                Ok(Value::Function(SuperPoly::var(self.n(), v)))
            }
            c if c.is_ascii_digit() => {
                let r = self.number()?;
                Ok(Value::Function(SuperPoly::one(self.n()).scale(&r)))
            }
            _ => Err(self.error(&format!("unexpected `{c}`"))),
        }
    }

    fn scale(&self, v: Value, c: &Rational) -> Value {
        match v {
            Value::Function(f) => Value::Function(f.scale(c)),
            Value::Field(d) => Value::Field(d.scale(c)),
        }
    }

    fn add(&self, a: Value, b: Value, at: usize) -> Result<Value> {
        match (a, b) {
            (Value::Function(f), Value::Function(g)) => Ok(Value::Function(f.add(&g)?)),
            (Value::Field(f), Value::Field(g)) => Ok(Value::Field(f.add(&g)?)),
            _ => Err(Error::Parse {
                pos: at,
                msg: "cannot add a function and a vector field".into(),
            }),
        }
    }

    fn mul(&self, a: Value, b: Value, at: usize) -> Result<Value> {
        match (a, b) {
            (Value::Function(f), Value::Function(g)) => Ok(Value::Function(f.mul(&g)?)),
            (Value::Function(f), Value::Field(d)) => Ok(Value::Field(d.left_mul(&f)?)),
            _ => Err(Error::Parse {
                pos: at,
                msg: "a vector field can only be the last factor of a product".into(),
            }),
        }
    }

    fn bracket(&self, a: Value, b: Value, at: usize) -> Result<Value> {
        let err = |m: &str| Error::Parse {
            pos: at,
            msg: m.to_string(),
        };
        match (a, b) {
            (Value::Field(x), Value::Field(y)) => match self.ctx.ambient {
                Some(desc) if desc.series() == Series::TildeSvect => {
                    match desc.bracket_elements(&Element::Field(x), &Element::Field(y))? {
                        Element::Field(v) => Ok(Value::Field(v)),
                        Element::Function(_) => unreachable!(),
                    }
                }
                _ => Ok(Value::Field(bracket(&x, &y)?)),
            },
            (Value::Function(f), Value::Function(g)) => {
                let mut r = poisson(&self.ctx.split()?, &f, &g)?;
                if let Some(desc) = self.ctx.ambient {
                    if matches!(desc.series(), Series::H | Series::HPrime) {
                        r = r.sub(&r.homogeneous_part(0))?;
                    }
                }
                Ok(Value::Function(r))
            }
            _ => Err(err("bracket of a function with a vector field")),
        }
    }
}

/// `[[coeff, monomial, direction], …]` or `[[coeff, monomial], …]`.
pub fn element_to_json(e: &Element, names: &VarNames) -> Json {
    match e {
        Element::Field(v) => Json::Array(
            v.terms()
                .into_iter()
                .map(|(m, d, c)| json!([c.to_string(), m.render(names), format!("d{d}")]))
                .collect(),
        ),
        Element::Function(f) => Json::Array(
            f.terms()
                .map(|(m, c)| json!([c.to_string(), m.render(names)]))
                .collect(),
        ),
    }
}

fn parse_monomial(s: &str, names: &VarNames, n: usize) -> Result<Monomial> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("bad monomial `{s}`"),
    };
    if s == "1" {
        return Ok(Monomial::ONE);
    }
    let mut bits = 0u16;
    let mut sign = 1;
    for part in s.split('.') {
        let mut cs = part.chars();
        let prefix = cs.next().ok_or_else(bad)?;
        let i: usize = cs.as_str().parse().map_err(|_| bad())?;
        let v = names.index(prefix, i, n).ok_or_else(bad)?;
        let (sg, m) = Monomial::from_bits(bits).mul(Monomial::var(v)).ok_or_else(bad)?;
        sign *= sg;
        bits = m.bits();
    }
    if sign < 0 {
        // only canonical (sorted) spellings are accepted
        return Err(bad());
    }
    Ok(Monomial::from_bits(bits))
}

pub fn element_from_json(v: &Json, desc: &AlgebraDesc) -> Result<Element> {
    let names = desc.names();
    let n = desc.n();
    let bad = |m: &str| Error::Parse {
        pos: 0,
        msg: m.to_string(),
    };
    let terms = v.as_array().ok_or_else(|| bad("element must be a list of terms"))?;
    if desc.series().is_hamiltonian() {
        let mut f = SuperPoly::zero(n);
        for t in terms {
            let c: Rational = t[0].as_str().ok_or_else(|| bad("coefficient"))?.parse()?;
            let m = parse_monomial(t[1].as_str().ok_or_else(|| bad("monomial"))?, &names, n)?;
            f.add_term(m, c);
        }
        Ok(Element::Function(f))
    } else {
        let mut f = VectorField::zero(n);
        for t in terms {
            let c: Rational = t[0].as_str().ok_or_else(|| bad("coefficient"))?.parse()?;
            let m = parse_monomial(t[1].as_str().ok_or_else(|| bad("monomial"))?, &names, n)?;
            let d = t[2]
                .as_str()
                .and_then(|s| s.strip_prefix('d'))
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&d| d >= 1 && d <= n)
                .ok_or_else(|| bad("direction"))?;
            f.add_term(m, d, c);
        }
        Ok(Element::Field(f))
    }
}

/// Parse a single element given in expression syntax in an ambient.
pub fn parse_element(src: &str, desc: &AlgebraDesc) -> Result<Element> {
    let v = eval(src, &Context::for_algebra(desc))?;
    match (v, desc.series().is_hamiltonian()) {
        (Value::Function(f), true) => Ok(Element::Function(f)),
        (Value::Field(d), false) => Ok(Element::Field(d)),
        (Value::Function(f), false) => Err(Error::NotInAlgebra(format!(
            "{} (got the function {})",
            desc.name(),
            f.render(&desc.names())
        ))),
        (Value::Field(_), true) => Err(Error::NotInAlgebra(format!(
            "{} (expects generating functions)",
            desc.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;

    fn ev(src: &str, n: usize) -> String {
        let ctx = Context::plain(n);
        eval(src, &ctx).unwrap().render(&VarNames::Plain)
    }

    #[test]
    fn brackets_and_divergence() {
        assert_eq!(ev("[d1, x1.d2]", 2), "d2");
        assert_eq!(ev("[x1.d2, x2.d1]", 2), "x1.d1 - x2.d2");
        assert_eq!(ev("div(x1.d1)", 2), "-1");
        assert_eq!(ev("div(x1.x2.d1)", 2), "x2");
        assert_eq!(ev("2*x1.d1 - 1/2 x2.d2", 2), "2*x1.d1 - 1/2*x2.d2");
        assert_eq!(ev("(x1 + x2).x2", 2), "x1.x2");
        assert_eq!(ev("x2.x1", 2), "-x1.x2");
    }

    #[test]
    fn hamiltonian_syntax() {
        let h = build_algebra(Series::H, 4).unwrap();
        let ctx = Context::for_algebra(&h);
        let r = |s: &str| eval(s, &ctx).unwrap().render(&h.names());
        assert_eq!(r("pb(x1, e1)"), "-1");
        assert_eq!(r("[x1, e1]"), "0");
        assert_eq!(r("ham(x1)"), "-d3");
    }

    #[test]
    fn parse_errors_have_positions() {
        let ctx = Context::plain(2);
        match eval("[d1, x3.d2]", &ctx) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(eval("d1 +", &ctx), Err(Error::Parse { .. })));
        assert!(matches!(eval("d1.x1", &ctx), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let s = build_algebra(Series::Svect, 3).unwrap();
        let e = parse_element("x1.d1 - x2.d2", &s).unwrap();
        let j = element_to_json(&e, &s.names());
        assert_eq!(element_from_json(&j, &s).unwrap(), e);
    }
}

use num_bigint::BigUint;

use crate::error::{Error, Result};

use super::expr::{Grassmannian, Partition, SchubertExpression};

/// A parsed expression such as `G(2,4): s2*s1^4` or `G(1,3): 2σ{1,1} + s2`,
/// evaluated by Pieri products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedExpression {
    pub grass: Grassmannian,
    pub value: SchubertExpression,
}

struct Cursor<'a> {
    s: &'a [char],
    i: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in {:?}", self.i, self.src))
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        let text: String = self.s[start..self.i].iter().collect();
        text.parse().map_err(|_| self.err("number too large"))
    }
}

pub fn parse_expression(src: &str) -> Result<ParsedExpression> {
    let chars: Vec<char> = src.chars().collect();
    let mut c = Cursor { s: &chars, i: 0, src };
    c.expect('G')?;
    c.expect('(')?;
    let a = c.number()?;
    c.expect(',')?;
    let n = c.number()?;
    c.expect(')')?;
    c.expect(':')?;
    let grass = Grassmannian::new(a, n)?;
    let mut value = term(&mut c, grass)?;
    while c.eat('+') {
        value = value.add(&term(&mut c, grass)?)?;
    }
    if c.peek().is_some() {
        return Err(c.err("trailing input"));
    }
    Ok(ParsedExpression { grass, value })
}

fn term(c: &mut Cursor, grass: Grassmannian) -> Result<SchubertExpression> {
    let coef = match c.peek() {
        Some(d) if d.is_ascii_digit() => {
            let k = c.number()?;
            c.eat('*');
            k
        }
        _ => 1,
    };
    let mut base: Option<Partition> = None;
    let mut specials = Vec::new();
    loop {
        let (p, times) = factor(c)?;
        if p.parts().len() <= 1 {
            specials.extend(std::iter::repeat_n(p.size(), times));
        } else if base.is_none() && times == 1 {
            base = Some(p);
        } else {
            return Err(Error::Domain(
                "only one non-special factor per product is supported".into(),
            ));
        }
        if !(c.eat('*') || c.eat('·')) {
            break;
        }
    }
    let start = SchubertExpression::class(grass, base.unwrap_or_default())?;
    Ok(start.pieri_all(&specials).scale(&BigUint::from(coef)))
}

fn factor(c: &mut Cursor) -> Result<(Partition, usize)> {
    if !(c.eat('s') || c.eat('σ')) {
        return Err(c.err("expected a Schubert class"));
    }
    let p = if c.eat('{') {
        let mut parts = Vec::new();
        if !c.eat('}') {
            loop {
                parts.push(c.number()?);
                if c.eat('}') {
                    break;
                }
                c.expect(',')?;
            }
        }
        Partition::new(parts)?
    } else {
        Partition::special(c.number()?)
    };
    let times = if c.eat('^') { c.number()? } else { 1 };
    Ok((p, times))
}

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ResolutionError;
use crate::poly::Poly;

pub type GermPoly = Poly<BigInt, 2>;

/// Largest exponent the parser accepts.
pub const MAX_EXPONENT: u32 = 10_000;

/// A polynomial in two named local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub vars: [String; 2],
    pub poly: GermPoly,
}

impl Germ {
    pub fn new(vars: [String; 2], poly: GermPoly) -> Self {
        Self { vars, poly }
    }

    /// Exponents of the monomial factor `u^a v^b`.
    pub fn content(&self) -> [u32; 2] {
        self.poly.monomial_content()
    }

    /// The germ with its monomial factor removed.
    pub fn strict_part(&self) -> GermPoly {
        self.poly.div_monomial(self.content())
    }

    /// Minimal total degree, counting the monomial factor.
    pub fn vanishing_order(&self) -> u32 {
        self.poly.order().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        !self.poly.coeff(&[0, 0]).is_zero()
    }
}

/// Written as `u^a v^b (strict)`, e.g. `p_1^5q_2^3(p_1+q_2^2)`.
impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [self.vars[0].as_str(), self.vars[1].as_str()];
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let content = self.content();
        let strict = self.strict_part();
        if content == [0, 0] {
            return f.write_str(&strict.display_with(&names, ""));
        }
        let mono = GermPoly::monomial(BigInt::one(), content).display_with(&names, "");
        if strict == GermPoly::one() {
            return f.write_str(&mono);
        }
        if strict == -&GermPoly::one() {
            return write!(f, "-{mono}");
        }
        let body = strict.display_with(&names, "");
        if strict.num_terms() == 1 {
            write!(f, "{mono}{body}")
        } else {
            write!(f, "{mono}({body})")
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<String>,
}

/// Parses integer polynomials in at most two variables.
///
/// Variables are a letter optionally followed by a subscript (`p_1`,
/// `q_{12}`); powers are `^n` or `^{n}`; multiplication may be written with
/// `*` or by juxtaposition. The variables are ordered alphabetically; with
/// fewer than two, `y` and `z` fill the gaps.
pub fn parse_germ(text: &str) -> Result<Germ, ResolutionError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars: Vec::new() };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected character"));
    }
    let mut vars = p.vars;
    for fill in ["y", "z"] {
        if vars.len() < 2 && !vars.iter().any(|v| v == fill) {
            vars.push(fill.to_string());
        }
    }
    let poly = if vars[0] > vars[1] {
        vars.swap(0, 1);
        GermPoly::from_terms(poly.terms().map(|(e, c)| ([e[1], e[0]], c.clone())))
    } else {
        poly
    };
    if poly.is_zero() {
        return Err(ResolutionError::Parse { position: 0, message: "germ is identically zero".into() });
    }
    Ok(Germ::new([vars[0].clone(), vars[1].clone()], poly))
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> ResolutionError {
        ResolutionError::Parse { position: self.pos, message: message.to_string() }
    }

    fn expr(&mut self) -> Result<GermPoly, ResolutionError> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GermPoly, ResolutionError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<GermPoly, ResolutionError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.braced_number()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn braced_number(&mut self) -> Result<u32, ResolutionError> {
        if self.peek() == Some(b'{') {
            self.pos += 1;
            self.skip_ws();
            let n = self.small_number()?;
            self.skip_ws();
            if self.peek() != Some(b'}') {
                return Err(self.error("expected '}'"));
            }
            self.pos += 1;
            Ok(n)
        } else {
            self.small_number()
        }
    }

    fn digits(&mut self) -> Result<&str, ResolutionError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn small_number(&mut self) -> Result<u32, ResolutionError> {
        let start = self.pos;
        let n: u32 = self.digits()?.parse().unwrap_or(u32::MAX);
        if n > MAX_EXPONENT {
            self.pos = start;
            return Err(self.error("exponent too large"));
        }
        Ok(n)
    }

    fn atom(&mut self) -> Result<GermPoly, ResolutionError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits()?.parse().expect("digits");
                Ok(GermPoly::constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                let mut name = (c as char).to_string();
                if self.peek() == Some(b'_') {
                    self.pos += 1;
                    let sub = self.braced_number()?;
                    name = format!("{name}_{sub}");
                }
                let index = match self.vars.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None if self.vars.len() < 2 => {
                        self.vars.push(name);
                        self.vars.len() - 1
                    }
                    None => {
                        return Err(ResolutionError::Arity {
                            position: start,
                            variables: vec![self.vars[0].clone(), self.vars[1].clone(), name],
                        })
                    }
                };
                Ok(GermPoly::var(index))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Germ {
        parse_germ(s).unwrap()
    }

    #[test]
    fn basic_germs() {
        let b0 = g("y^3+z^5");
        assert_eq!(b0.vars, ["y".to_string(), "z".to_string()]);
        assert_eq!(b0.content(), [0, 0]);
        assert_eq!(b0.vanishing_order(), 3);

        let b1 = g("z^3*(p^3+z^2)");
        assert_eq!(b1.vars, ["p".to_string(), "z".to_string()]);
        assert_eq!(b1.content(), [0, 3]);
        assert_eq!(b1.strict_part(), g("p^3+z^2").poly);
        assert_eq!(b1.vanishing_order(), 5);

        let unit = g("1");
        assert!(unit.is_unit());
        assert_eq!(unit.vanishing_order(), 0);
    }

    #[test]
    fn subscripts_braces_and_juxtaposition() {
        let a = g("p_3^{15}q_4^9(1+q_4)");
        let b = g("p_3^15 * q_4^9 + q_4^10 p_3^15");
        assert_eq!(a, b);
        assert_eq!(a.vars, ["p_3".to_string(), "q_4".to_string()]);
        assert_eq!(a.to_string(), "p_3^{15}q_4^9(q_4+1)");
        assert_eq!(g("(p_1^3+z^2)z^3"), g("z^3(p_1^3+z^2)"));
        assert_eq!(g("-2x"), Germ::new(["x".into(), "y".into()], GermPoly::monomial(BigInt::from(-2), [1, 0])));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_germ("y^3+"),
            Err(ResolutionError::Parse { position: 4, message: "unexpected end of input".into() })
        );
        assert!(matches!(parse_germ("y^3 $ z"), Err(ResolutionError::Parse { position: 4, .. })));
        assert!(matches!(parse_germ("(y+z"), Err(ResolutionError::Parse { position: 4, .. })));
        assert!(matches!(parse_germ(""), Err(ResolutionError::Parse { .. })));
        assert!(matches!(parse_germ("y-y"), Err(ResolutionError::Parse { .. })));
        match parse_germ("x+y+z") {
            Err(ResolutionError::Arity { position, variables }) => {
                assert_eq!(position, 4);
                assert_eq!(variables.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }
}

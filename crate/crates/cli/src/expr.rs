//! Element input: JSON in the core wire formats, or small expressions such
//! as `s1^2*s2 + 3/2*s3` and `sigma(2,1) - 2*sigma1`.

use chow_core::algebra::{parse_rational, Rational};
use chow_core::nonlinear::NonlinearJson;
use chow_core::schubert::SchubertJson;
use chow_core::{Error, NonlinearElement, NonlinearRing, Partition, Result, SchubertElement};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    /// The generator `s_j`.
    S(u32),
    /// The Schubert class of a partition.
    Sigma(Vec<u32>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(e)
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {token:?}")))
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        let start = self.pos;
        self.pos += len;
        Some(&self.src[start..self.pos])
    }

    fn uint(&mut self) -> Result<u32> {
        let Some(d) = self.digits().map(str::to_owned) else {
            return Err(self.error("expected an integer"));
        };
        d.parse().map_err(|_| self.error("integer out of range"))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat("*") {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat("^") {
            return Ok(Expr::Pow(Box::new(base), self.uint()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        if self.eat("(") {
            let e = self.sum()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("sigma") || self.eat("σ") {
            if self.eat("(") {
                let mut parts = Vec::new();
                if !self.eat(")") {
                    loop {
                        parts.push(self.uint()?);
                        if self.eat(")") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                return Ok(Expr::Sigma(parts));
            }
            return Ok(Expr::Sigma(vec![self.uint()?]));
        }
        if self.eat("s") {
            let j = self.uint()?;
            if j == 0 {
                return Ok(Expr::Num(Rational::from_integer(1.into())));
            }
            return Ok(Expr::S(j));
        }
        if let Some(num) = self.digits().map(str::to_owned) {
            let save = self.pos;
            if self.eat("/") {
                if let Some(den) = self.digits().map(str::to_owned) {
                    return Ok(Expr::Num(parse_rational(&format!("{num}/{den}"))?));
                }
                self.pos = save;
            }
            return Ok(Expr::Num(parse_rational(&num)?));
        }
        Err(self.error("expected a number, s<j>, sigma(...) or '('"))
    }
}

/// Where an expression is evaluated: the nonlinear ring itself, or the
/// Grassmannian ring it is isomorphic to.
pub trait Target {
    type Value: Clone;
    fn num(&self, q: &Rational) -> Self::Value;
    fn s(&self, j: u32) -> Result<Self::Value>;
    fn sigma(&self, parts: &[u32]) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn scale(&self, a: &Self::Value, c: &Rational) -> Self::Value;

    fn eval(&self, e: &Expr) -> Result<Self::Value> {
        let minus_one = Rational::from_integer((-1).into());
        Ok(match e {
            Expr::Num(q) => self.num(q),
            Expr::S(j) => self.s(*j)?,
            Expr::Sigma(parts) => self.sigma(parts)?,
            Expr::Add(a, b) => self.add(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Sub(a, b) => self.add(&self.eval(a)?, &self.scale(&self.eval(b)?, &minus_one))?,
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Neg(a) => self.scale(&self.eval(a)?, &minus_one),
            Expr::Pow(a, n) => {
                let base = self.eval(a)?;
                let mut acc = self.num(&Rational::from_integer(1.into()));
                for _ in 0..*n {
                    acc = self.mul(&acc, &base)?;
                }
                acc
            }
        })
    }
}

fn class(ring: &NonlinearRing, parts: &[u32]) -> Result<SchubertElement> {
    ring.grassmannian().class(&Partition::new(parts.to_vec())?)
}

/// `s_j` is a generator, `sigma(λ)` is `λ^{-1}` of the Schubert class.
pub struct InNonlinear<'a>(pub &'a NonlinearRing);

impl Target for InNonlinear<'_> {
    type Value = NonlinearElement;

    fn num(&self, q: &Rational) -> NonlinearElement {
        self.0.one().scale(q)
    }

    fn s(&self, j: u32) -> Result<NonlinearElement> {
        self.0.generator(j)
    }

    fn sigma(&self, parts: &[u32]) -> Result<NonlinearElement> {
        self.0.lambda_inverse(&class(self.0, parts)?)
    }

    fn add(&self, a: &NonlinearElement, b: &NonlinearElement) -> Result<NonlinearElement> {
        a.checked_add(b)
    }

    fn mul(&self, a: &NonlinearElement, b: &NonlinearElement) -> Result<NonlinearElement> {
        self.0.nl_multiply(a, b)
    }

    fn scale(&self, a: &NonlinearElement, c: &Rational) -> NonlinearElement {
        a.scale(c)
    }
}

/// `sigma(λ)` is the Schubert class, `s_j` is its image `d^{k+j} sigma_j`.
pub struct InGrassmannian<'a>(pub &'a NonlinearRing);

impl Target for InGrassmannian<'_> {
    type Value = SchubertElement;

    fn num(&self, q: &Rational) -> SchubertElement {
        self.0.grassmannian().one().scale(q)
    }

    fn s(&self, j: u32) -> Result<SchubertElement> {
        self.0.lambda_map(&self.0.generator(j)?)
    }

    fn sigma(&self, parts: &[u32]) -> Result<SchubertElement> {
        class(self.0, parts)
    }

    fn add(&self, a: &SchubertElement, b: &SchubertElement) -> Result<SchubertElement> {
        a.checked_add(b)
    }

    fn mul(&self, a: &SchubertElement, b: &SchubertElement) -> Result<SchubertElement> {
        self.0.grassmannian().multiply(a, b)
    }

    fn scale(&self, a: &SchubertElement, c: &Rational) -> SchubertElement {
        a.scale(c)
    }
}

/// An element given on the command line, already in one of the two rings.
pub enum Parsed {
    Nonlinear(NonlinearElement),
    Schubert(SchubertElement),
    Expression(Expr),
}

/// Reads `@path` from disk; anything starting with `{` is JSON.
pub fn read_element(arg: &str) -> Result<Parsed> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Argument(format!("cannot read {path}: {e}")))?,
        None => arg.to_owned(),
    };
    let text = text.trim();
    if !text.starts_with('{') {
        return parse_expr(text).map(Parsed::Expression);
    }
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let is_schubert = value["terms"]
        .as_array()
        .and_then(|t| t.first())
        .is_some_and(|t| t.get("partition").is_some());
    if is_schubert {
        let json: SchubertJson =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Parsed::Schubert(chow_core::GrassmannRing::from_json(
            &json,
        )?))
    } else {
        let json: NonlinearJson =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Parsed::Nonlinear(NonlinearRing::from_json(&json)?))
    }
}

fn mismatch(what: &str, ring: &NonlinearRing) -> Error {
    Error::ProfileMismatch(format!(
        "{what} does not belong to Ch({},{},{})",
        ring.k(),
        ring.r(),
        ring.d()
    ))
}

/// The element as a member of `Ch(k, r, d)`.
pub fn nonlinear_element(ring: &NonlinearRing, arg: &str) -> Result<NonlinearElement> {
    match read_element(arg)? {
        Parsed::Expression(e) => InNonlinear(ring).eval(&e),
        Parsed::Nonlinear(x) if x.ring() == ring => Ok(x),
        Parsed::Nonlinear(_) => Err(mismatch("input element", ring)),
        Parsed::Schubert(y) if y.ring() == ring.grassmannian() => ring.lambda_inverse(&y),
        Parsed::Schubert(_) => Err(mismatch("input class", ring)),
    }
}

/// The element as a class in the Grassmannian `Ch(k, r, 1)`.
pub fn schubert_element(ring: &NonlinearRing, arg: &str) -> Result<SchubertElement> {
    match read_element(arg)? {
        Parsed::Expression(e) => InGrassmannian(ring).eval(&e),
        Parsed::Nonlinear(x) if x.ring() == ring => ring.lambda_map(&x),
        Parsed::Nonlinear(_) => Err(mismatch("input element", ring)),
        Parsed::Schubert(y) if y.ring() == ring.grassmannian() => Ok(y),
        Parsed::Schubert(_) => Err(mismatch("input class", ring)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn parses_the_documented_grammar() {
        let e = parse_expr("s1^2*s2 + 3/2*s3").unwrap();
        assert_eq!(
            e,
            Expr::Add(
                Box::new(Expr::Mul(
                    Box::new(Expr::Pow(Box::new(Expr::S(1)), 2)),
                    Box::new(Expr::S(2))
                )),
                Box::new(Expr::Mul(
                    Box::new(Expr::Num(Rational::new(3.into(), 2.into()))),
                    Box::new(Expr::S(3))
                ))
            )
        );
        assert_eq!(
            parse_expr(" sigma( 2 , 1 ) ").unwrap(),
            Expr::Sigma(vec![2, 1])
        );
        assert_eq!(parse_expr("σ2").unwrap(), Expr::Sigma(vec![2]));
        assert_eq!(parse_expr("sigma()").unwrap(), Expr::Sigma(vec![]));
        assert_eq!(
            parse_expr("-(s1 - 2)").unwrap(),
            Expr::Neg(Box::new(Expr::Sub(
                Box::new(Expr::S(1)),
                Box::new(Expr::Num(int(2)))
            )))
        );
    }

    #[test]
    fn rejects_garbage() {
        for bad in [
            "", "s", "s1 +", "x1", "s1^", "3/0", "sigma(1,", "(s1", "s1 s2",
        ] {
            assert!(matches!(parse_expr(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn evaluates_in_both_rings() {
        let ring = NonlinearRing::new(1, 3, 2).unwrap();
        let x = InNonlinear(&ring)
            .eval(&parse_expr("s1*s1^2").unwrap())
            .unwrap();
        assert_eq!(x.to_string(), "4*s1*s2");
        let y = InGrassmannian(&ring)
            .eval(&parse_expr("s1").unwrap())
            .unwrap();
        assert_eq!(y.to_string(), "4*σ(1)");
        let z = InNonlinear(&ring)
            .eval(&parse_expr("16*sigma(1,1)").unwrap())
            .unwrap();
        assert_eq!(z.to_string(), "s1^2 - 2*s2");
    }

    #[test]
    fn json_inputs() {
        let ring = NonlinearRing::new(1, 3, 2).unwrap();
        let x = nonlinear_element(
            &ring,
            r#"{"k":1,"r":3,"d":2,"terms":[{"smonomial":[1,2],"coeff":"1"}]}"#,
        )
        .unwrap();
        assert_eq!(x.to_string(), "s1*s2");
        let y = schubert_element(
            &ring,
            r#"{"k":1,"r":3,"d":1,"terms":[{"partition":[2,1],"coeff":"-1/2"}]}"#,
        )
        .unwrap();
        assert_eq!(y.to_string(), "-1/2*σ(2,1)");
        let other = r#"{"k":1,"r":4,"d":2,"terms":[{"smonomial":[1],"coeff":"1"}]}"#;
        assert!(matches!(
            nonlinear_element(&ring, other),
            Err(Error::ProfileMismatch(_))
        ));
    }
}

//! Group specifications.
//!
//! ```text
//! spec  := term ("x" term)*
//! term  := S(n) | A(n) | C(n) | D(n) | Klein | G108 | diag(spec) | perm(n; gens) | (spec)
//! gens  := [gen ("," gen)*]
//! gen   := "()" | cycle+
//! cycle := "(" point+ ")"
//! ```
//!
//! `D(n)` is the dihedral group of order `n`. Points are 1-based.

use std::fmt;

use subdepth::group::{diagonal_subgroup, direct_product};
use subdepth::{Builtin, Permutation, PermutationGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Named(Builtin),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Diagonal(Box<GroupSpec>),
    /// Generators as lists of cycles; a generator without cycles is the identity.
    Perm {
        degree: usize,
        generators: Vec<Vec<Vec<usize>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("parse error at column {}: {message}", position + 1)]
    Parse { position: usize, message: String },
    #[error("point {point} at column {} is outside 1..={degree}", position + 1)]
    DegreeViolation {
        position: usize,
        point: usize,
        degree: usize,
    },
}

impl SpecError {
    pub fn position(&self) -> usize {
        match self {
            SpecError::Parse { position, .. } | SpecError::DegreeViolation { position, .. } => {
                *position
            }
        }
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let spec = p.product()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

impl std::str::FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        parse_group_spec(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> SpecError {
        SpecError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), SpecError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Option<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(start).is_some_and(u8::is_ascii_alphabetic) {
            return None;
        }
        while self
            .src
            .get(self.pos)
            .is_some_and(u8::is_ascii_alphanumeric)
        {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Some((start, word))
    }

    fn number(&mut self) -> Result<(usize, usize), SpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        digits
            .parse()
            .map(|n| (start, n))
            .map_err(|_| SpecError::Parse {
                position: start,
                message: "number too large".into(),
            })
    }

    fn product(&mut self) -> Result<GroupSpec, SpecError> {
        let mut left = self.term()?;
        loop {
            self.skip_ws();
            let save = self.pos;
            match self.ident() {
                Some((_, "x")) => {
                    let right = self.term()?;
                    left = GroupSpec::Product(Box::new(left), Box::new(right));
                }
                _ => {
                    self.pos = save;
                    return Ok(left);
                }
            }
        }
    }

    fn term(&mut self) -> Result<GroupSpec, SpecError> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let inner = self.product()?;
            self.expect(b')')?;
            return Ok(inner);
        }
        let Some((start, word)) = self.ident() else {
            return Err(self.error("expected a group"));
        };
        let word = word.to_string();
        match word.as_str() {
            "S" | "A" | "C" | "D" => {
                self.expect(b'(')?;
                let (_, n) = self.number()?;
                self.expect(b')')?;
                let b = Builtin::from_name(&word, &[n]).map_err(|e| SpecError::Parse {
                    position: start,
                    message: e.to_string(),
                })?;
                Ok(GroupSpec::Named(b))
            }
            "Klein" => Ok(GroupSpec::Named(Builtin::Klein)),
            "G108" => Ok(GroupSpec::Named(Builtin::G108)),
            "diag" => {
                self.expect(b'(')?;
                let inner = self.product()?;
                self.expect(b')')?;
                Ok(GroupSpec::Diagonal(Box::new(inner)))
            }
            "perm" => self.perm(),
            _ => Err(SpecError::Parse {
                position: start,
                message: format!("unknown group constructor `{word}`"),
            }),
        }
    }

    fn perm(&mut self) -> Result<GroupSpec, SpecError> {
        self.expect(b'(')?;
        let (dpos, degree) = self.number()?;
        if degree == 0 {
            return Err(SpecError::Parse {
                position: dpos,
                message: "degree must be positive".into(),
            });
        }
        self.expect(b';')?;
        let mut generators = Vec::new();
        if self.peek() != Some(b')') {
            loop {
                generators.push(self.generator(degree)?);
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b')')?;
        Ok(GroupSpec::Perm { degree, generators })
    }

    fn generator(&mut self, degree: usize) -> Result<Vec<Vec<usize>>, SpecError> {
        self.expect(b'(')?;
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut cycles = vec![self.cycle_body(degree)?];
        while self.peek() == Some(b'(') {
            self.pos += 1;
            if self.peek() == Some(b')') {
                return Err(self.error("empty cycle inside a product of cycles"));
            }
            cycles.push(self.cycle_body(degree)?);
        }
        Ok(cycles)
    }

    /// Points up to and including the closing parenthesis.
    fn cycle_body(&mut self, degree: usize) -> Result<Vec<usize>, SpecError> {
        let mut points = Vec::new();
        while self.peek() != Some(b')') {
            let (pos, point) = self.number()?;
            if point == 0 || point > degree {
                return Err(SpecError::DegreeViolation {
                    position: pos,
                    point,
                    degree,
                });
            }
            if points.contains(&point) {
                return Err(SpecError::Parse {
                    position: pos,
                    message: format!("point {point} repeated in a cycle"),
                });
            }
            points.push(point);
        }
        self.pos += 1;
        Ok(points)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Named(b) => write!(f, "{}", b.label()),
            GroupSpec::Product(a, b) => match **b {
                GroupSpec::Product(..) => write!(f, "{a} x ({b})"),
                _ => write!(f, "{a} x {b}"),
            },
            GroupSpec::Diagonal(g) => write!(f, "diag({g})"),
            GroupSpec::Perm { degree, generators } => {
                write!(f, "perm({degree};")?;
                for (i, gen) in generators.iter().enumerate() {
                    f.write_str(if i == 0 { " " } else { ", " })?;
                    if gen.is_empty() {
                        f.write_str("()")?;
                    }
                    for cycle in gen {
                        let pts: Vec<String> = cycle.iter().map(ToString::to_string).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl GroupSpec {
    /// The group, labelled by the canonical text of this spec.
    pub fn build(&self, cap: usize) -> subdepth::Result<PermutationGroup> {
        let group = match self {
            GroupSpec::Named(b) => b.build(cap)?,
            GroupSpec::Product(a, b) => direct_product(&a.build(cap)?, &b.build(cap)?, cap)?,
            GroupSpec::Diagonal(g) => {
                let emb = diagonal_subgroup(&g.build(cap)?, cap)?;
                (*emb.subgroup).clone()
            }
            GroupSpec::Perm { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|cycles| Permutation::from_cycles(*degree, cycles))
                    .collect::<subdepth::Result<Vec<_>>>()?;
                PermutationGroup::generate_capped(*degree, gens, cap)?
            }
        };
        Ok(group.with_label(self.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_and_products() {
        assert_eq!(
            parse_group_spec("S(4)").unwrap(),
            GroupSpec::Named(Builtin::Symmetric(4))
        );
        let p = parse_group_spec(" S(3)x S(3) ").unwrap();
        assert_eq!(p.to_string(), "S(3) x S(3)");
        let nested = parse_group_spec("C(2) x (C(3) x C(5))").unwrap();
        assert_eq!(nested.to_string(), "C(2) x (C(3) x C(5))");
        assert_eq!(
            parse_group_spec("diag(Klein)").unwrap().to_string(),
            "diag(Klein)"
        );
    }

    #[test]
    fn perm_specs() {
        let g = parse_group_spec("perm(4; (1 2 3 4), (1 2))").unwrap();
        assert_eq!(g.build(1000).unwrap().order(), 24);
        let t = parse_group_spec("perm(3;)").unwrap();
        assert_eq!(t.build(1000).unwrap().order(), 1);
        let id = parse_group_spec("perm(2; ())").unwrap();
        assert_eq!(id.to_string(), "perm(2; ())");
        let v = parse_group_spec("perm(4; (1 2)(3 4), (1 3)(2 4))").unwrap();
        assert_eq!(v.build(1000).unwrap().order(), 4);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_group_spec("perm(3; (1 2 3 4))").unwrap_err(),
            SpecError::DegreeViolation {
                position: 15,
                point: 4,
                degree: 3
            }
        );
        let e = parse_group_spec("Q(3)").unwrap_err();
        assert_eq!(e.position(), 0);
        let e = parse_group_spec("S(3) x").unwrap_err();
        assert_eq!(e.position(), 6);
        assert!(parse_group_spec("perm(3; (1 1))").is_err());
        assert!(parse_group_spec("S(3) S(4)").is_err());
        assert!(parse_group_spec("perm(0;)").is_err());
        assert!(parse_group_spec("Klein(2)").is_err());
    }
}

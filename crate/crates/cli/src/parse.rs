//! Parser for manifold, bundle and partition expressions.
//!
//! ```text
//! manifold  := "CP" "(" nat ")" { "*" manifold } | "pt"
//! bundle    := "O" "(" int {"," int} ")" | "tau" | "nu" | "conj" "(" bundle ")" | bundle "+" bundle
//! partition := ["m"] "[" nat {"," nat} "]"
//! ```
//!
//! Whitespace is allowed between tokens. Errors carry the byte offset at
//! which parsing stopped.

use std::fmt;

use chern_core::geommodel::{Bundle, ProjProduct, Summand};
use chern_core::symfunc::Partition;

/// Largest total complex dimension accepted for a manifold.
pub const MAX_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} at byte {}", self.message, self.offset)?;
        writeln!(f, "  {}", self.input)?;
        let pad = self.input[..self.offset.min(self.input.len())].chars().count();
        write!(f, "  {}^", " ".repeat(pad))
    }
}

/// A bundle expression as written, before `conj` is pushed to the leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleExpr {
    /// A line bundle and the byte offset of its `O`.
    Line(Vec<i64>, usize),
    Tau,
    Nu,
    Conj(Box<BundleExpr>),
    Sum(Vec<BundleExpr>),
}

impl BundleExpr {
    pub fn to_bundle(&self) -> Bundle {
        match self {
            BundleExpr::Line(d, _) => Bundle::line(d.clone()),
            BundleExpr::Tau => Bundle::tangent(),
            BundleExpr::Nu => Bundle::normal(),
            BundleExpr::Conj(b) => b.to_bundle().conj(),
            BundleExpr::Sum(parts) => parts.iter().fold(Bundle::zero(), |acc, b| acc.sum(b.to_bundle())),
        }
    }

    /// Line summands with their offsets.
    pub fn lines(&self) -> Vec<(&[i64], usize)> {
        match self {
            BundleExpr::Line(d, at) => vec![(d.as_slice(), *at)],
            BundleExpr::Tau | BundleExpr::Nu => Vec::new(),
            BundleExpr::Conj(b) => b.lines(),
            BundleExpr::Sum(parts) => parts.iter().flat_map(|b| b.lines()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Manifold(ProjProduct),
    Bundle(BundleExpr),
    Partition(Partition),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError { input: self.src.to_string(), offset: at, message: message.into() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
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

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected `{token}`")))
        }
    }

    /// Like `eat`, but only matches a whole identifier.
    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        let boundary = rest[word.len().min(rest.len())..]
            .chars()
            .next()
            .is_none_or(|c| !c.is_ascii_alphanumeric() && c != '_');
        if rest.starts_with(word) && boundary {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<(i64, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error(start, "expected an integer"));
        }
        let text = &rest[..sign + digits];
        let value = text.parse::<i64>().map_err(|_| self.error(start, "integer out of range"))?;
        self.pos += sign + digits;
        Ok((value, start))
    }

    fn nat(&mut self) -> Result<(u64, usize), ParseError> {
        let (v, at) = self.int()?;
        if v < 0 {
            return Err(self.error(at, "expected a non-negative integer"));
        }
        Ok((v as u64, at))
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.error(self.pos, "unexpected trailing input"))
        }
    }

    fn manifold(&mut self) -> Result<ProjProduct, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut dims = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat_word("pt") {
                // a point factor contributes nothing
            } else if self.eat("CP") {
                self.expect("(")?;
                let (n, n_at) = self.nat()?;
                if n > MAX_DIM as u64 {
                    return Err(self.error(n_at, format!("dimension {n} exceeds the bound {MAX_DIM}")));
                }
                self.expect(")")?;
                if n > 0 {
                    dims.push(n as usize);
                }
            } else {
                return Err(self.error(at, "expected `CP(n)` or `pt`"));
            }
            if !self.eat("*") {
                break;
            }
        }
        let total: usize = dims.iter().sum();
        if total > MAX_DIM {
            return Err(self.error(start, format!("total dimension {total} exceeds the bound {MAX_DIM}")));
        }
        Ok(ProjProduct::new(dims))
    }

    fn bundle_atom(&mut self) -> Result<BundleExpr, ParseError> {
        self.skip_ws();
        let at = self.pos;
        if self.eat_word("tau") {
            Ok(BundleExpr::Tau)
        } else if self.eat_word("nu") {
            Ok(BundleExpr::Nu)
        } else if self.eat_word("conj") {
            self.expect("(")?;
            let inner = self.bundle()?;
            self.expect(")")?;
            Ok(BundleExpr::Conj(Box::new(inner)))
        } else if self.eat("O") {
            self.expect("(")?;
            let mut degrees = vec![self.int()?.0];
            while self.eat(",") {
                degrees.push(self.int()?.0);
            }
            self.expect(")")?;
            Ok(BundleExpr::Line(degrees, at))
        } else {
            Err(self.error(at, "expected `O(..)`, `tau`, `nu` or `conj(..)`"))
        }
    }

    fn bundle(&mut self) -> Result<BundleExpr, ParseError> {
        let mut parts = vec![self.bundle_atom()?];
        while self.eat("+") {
            parts.push(self.bundle_atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { BundleExpr::Sum(parts) })
    }

    fn partition(&mut self) -> Result<Partition, ParseError> {
        self.eat("m");
        self.expect("[")?;
        let mut parts = Vec::new();
        loop {
            let (v, at) = self.nat()?;
            if v == 0 {
                return Err(self.error(at, "partition parts must be positive"));
            }
            let v = u32::try_from(v).map_err(|_| self.error(at, "part out of range"))?;
            parts.push(v);
            if !self.eat(",") {
                break;
            }
        }
        self.expect("]")?;
        Ok(Partition::new(parts))
    }
}

pub fn parse_manifold(text: &str) -> Result<ProjProduct, ParseError> {
    let mut p = Parser::new(text);
    let m = p.manifold()?;
    p.end()?;
    Ok(m)
}

pub fn parse_bundle_expr(text: &str) -> Result<BundleExpr, ParseError> {
    let mut p = Parser::new(text);
    let b = p.bundle()?;
    p.end()?;
    Ok(b)
}

pub fn parse_bundle(text: &str) -> Result<Bundle, ParseError> {
    parse_bundle_expr(text).map(|b| b.to_bundle())
}

pub fn parse_partition(text: &str) -> Result<Partition, ParseError> {
    let mut p = Parser::new(text);
    let lam = p.partition()?;
    p.end()?;
    Ok(lam)
}

/// Parses any of the three expression kinds, chosen by the first token.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let head = text.trim_start();
    if head.starts_with("CP") || head.starts_with("pt") {
        parse_manifold(text).map(Expr::Manifold)
    } else if head.starts_with('[') || head.starts_with("m[") || head.starts_with("m ") {
        parse_partition(text).map(Expr::Partition)
    } else {
        parse_bundle_expr(text).map(Expr::Bundle)
    }
}

/// Parses a bundle and checks it against a model: every line must have one
/// degree per factor, and with `representable` every root must be `0`,
/// `±x_i` so that cobordism Chern classes exist.
pub fn parse_bundle_for(text: &str, model: &ProjProduct, representable: bool) -> Result<Bundle, ParseError> {
    let expr = parse_bundle_expr(text)?;
    let err = |at: usize, message: String| ParseError { input: text.to_string(), offset: at, message };
    for (degrees, at) in expr.lines() {
        if degrees.len() != model.factors() {
            return Err(err(
                at,
                format!("line bundle has {} degrees but {model} has {} factors", degrees.len(), model.factors()),
            ));
        }
        let nonzero: Vec<i64> = degrees.iter().copied().filter(|&d| d != 0).collect();
        if representable && !matches!(nonzero.as_slice(), [] | [1] | [-1]) {
            return Err(err(at, format!("line bundle O({}) is not cobordism-representable", join(degrees))));
        }
    }
    Ok(expr.to_bundle())
}

fn join(d: &[i64]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical text of a summand list, accepted back by `parse_bundle`.
pub fn print_bundle(b: &Bundle) -> String {
    if b.summands.is_empty() {
        return String::new();
    }
    b.summands
        .iter()
        .map(|s| match s {
            Summand::Line(d) => format!("O({})", join(d)),
            other => other.to_string(),
        })
        .collect::<Vec<_>>()
        .join("+")
}

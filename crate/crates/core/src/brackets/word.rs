//! Words over labelled generators: juxtaposition is product, `x^k` and
//! `x^-1` are powers, and an optional scalar prefix `s*` (entry grammar) or
//! a bare leading `-` scales the product. A lone scalar means that multiple
//! of the identity.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::BracketError;
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

pub type Assignment = BTreeMap<String, ExactMatrix>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub scalar: GaussianRational,
    pub factors: Vec<(String, i64)>,
}

fn malformed(word: &str, reason: impl Into<String>) -> BracketError {
    BracketError::MalformedWord {
        word: word.to_string(),
        reason: reason.into(),
    }
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && s != "i"
}

impl Word {
    pub fn parse(text: &str) -> Result<Self, BracketError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(malformed(text, "empty word"));
        }
        let (scalar, body) = match trimmed.split_once('*') {
            Some((s, rest)) => {
                let s: GaussianRational = s
                    .trim()
                    .parse()
                    .map_err(|e| malformed(text, format!("scalar: {e}")))?;
                (s, rest.trim())
            }
            None => match trimmed.parse::<GaussianRational>() {
                Ok(s) => {
                    return Ok(Word {
                        scalar: s,
                        factors: Vec::new(),
                    })
                }
                Err(_) => match trimmed.strip_prefix('-') {
                    Some(rest) => (-GaussianRational::one(), rest.trim()),
                    None => (GaussianRational::one(), trimmed),
                },
            },
        };
        let factors = body
            .split_whitespace()
            .map(|tok| {
                let (label, power) = match tok.split_once('^') {
                    Some((l, p)) => (
                        l,
                        p.parse::<i64>()
                            .map_err(|_| malformed(text, format!("bad power `{p}`")))?,
                    ),
                    None => (tok, 1),
                };
                if !is_label(label) {
                    return Err(malformed(text, format!("bad label `{label}`")));
                }
                Ok((label.to_string(), power))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if factors.is_empty() {
            return Err(malformed(text, "no factors after scalar"));
        }
        Ok(Word { scalar, factors })
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.factors.iter().map(|(l, _)| l.as_str())
    }

    pub fn evaluate(
        &self,
        assignment: &Assignment,
        dim: usize,
    ) -> Result<ExactMatrix, BracketError> {
        let mut acc = ExactMatrix::identity(dim);
        for (label, power) in &self.factors {
            let m = assignment
                .get(label)
                .ok_or_else(|| BracketError::UnassignedLabel(label.clone()))?;
            let base = if *power < 0 {
                m.inverse()
                    .map_err(|_| malformed(&self.to_string(), format!("`{label}` is singular")))?
            } else {
                m.clone()
            };
            acc = acc
                .mul(&base.pow(power.unsigned_abs() as u32))
                .map_err(|e| malformed(&self.to_string(), e.to_string()))?;
        }
        Ok(acc.scale(&self.scalar))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.scalar);
        }
        if !self.scalar.is_one() {
            write!(f, "{}*", self.scalar)?;
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(l, p)| {
                if *p == 1 {
                    l.clone()
                } else {
                    format!("{l}^{p}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn parse(text: &str) -> Result<Self, BracketError> {
        let (l, r) = text
            .split_once('=')
            .ok_or_else(|| malformed(text, "missing `=`"))?;
        Ok(Relation {
            lhs: Word::parse(l)?,
            rhs: Word::parse(r)?,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let w = Word::parse("a2 a1 a2^-1").unwrap();
        assert_eq!(
            w.factors,
            vec![("a2".into(), 1), ("a1".into(), 1), ("a2".into(), -1)]
        );
        assert_eq!(Word::parse("-a3").unwrap().scalar, -GaussianRational::one());
        assert_eq!(Word::parse("i*a1").unwrap().scalar, GaussianRational::i());
        assert!(Word::parse("-1").unwrap().factors.is_empty());
        assert_eq!(Word::parse("1/2+i*g1^3").unwrap().to_string(), "1/2+i*g1^3");
    }

    #[test]
    fn malformed_words() {
        assert!(matches!(
            Word::parse(""),
            Err(BracketError::MalformedWord { .. })
        ));
        assert!(matches!(
            Word::parse("a1^x"),
            Err(BracketError::MalformedWord { .. })
        ));
        assert!(matches!(
            Word::parse("2*"),
            Err(BracketError::MalformedWord { .. })
        ));
        assert!(matches!(
            Word::parse("a1 3b"),
            Err(BracketError::MalformedWord { .. })
        ));
        assert!(matches!(
            Relation::parse("a1 a2"),
            Err(BracketError::MalformedWord { .. })
        ));
    }

    #[test]
    fn evaluate_with_inverse() {
        let mut a = Assignment::new();
        a.insert("x".into(), "[[0,-1],[1,0]]".parse().unwrap());
        let w = Word::parse("x x^-1").unwrap();
        assert!(w.evaluate(&a, 2).unwrap().is_identity());
        assert!(Word::parse("x^4")
            .unwrap()
            .evaluate(&a, 2)
            .unwrap()
            .is_identity());
        assert!(matches!(
            Word::parse("y").unwrap().evaluate(&a, 2),
            Err(BracketError::UnassignedLabel(_))
        ));
    }
}

//! Dense square matrices over [`GaussianRational`].

use std::fmt;
use std::str::FromStr;

use crate::error::{MatrixError, ParseError};
use crate::linalg;
use crate::scalar::GaussianRational;

/// Row-major square matrix. Entries are canonical, so derived `Eq`/`Hash`
/// are exact structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn from_entries(dim: usize, entries: Vec<GaussianRational>) -> Result<Self, MatrixError> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(MatrixError::NotSquare);
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, MatrixError> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(MatrixError::NotSquare);
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from `(re, im)` integer pairs.
    pub fn from_int_pairs(rows: &[&[(i64, i64)]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(a, b)| GaussianRational::from_ints(a, b))
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("square integer matrix")
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, GaussianRational::one())
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![GaussianRational::zero(); dim * dim],
        }
    }

    pub fn scalar(dim: usize, s: GaussianRational) -> Self {
        let mut m = Self::zero(dim);
        for k in 0..dim {
            m.entries[k * dim + k] = s.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.dim + c]
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<GaussianRational>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, e)| {
            if k / self.dim == k % self.dim {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    /// The scalar `s` when the matrix equals `s·I`.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        let s = self.get(0, 0).clone();
        (*self == Self::scalar(self.dim, s.clone())).then_some(s)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.dim != rhs.dim {
            return Err(MatrixError::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut out = vec![GaussianRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Self {
            dim: n,
            entries: out,
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &Self,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Result<Self, MatrixError> {
        if self.dim != rhs.dim {
            return Err(MatrixError::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn trace(&self) -> GaussianRational {
        let mut t = GaussianRational::zero();
        for k in 0..self.dim {
            t += self.get(k, k);
        }
        t
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n)
            .map(|k| self.entries[(k % n) * n + k / n].clone())
            .collect();
        Self { dim: n, entries }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n)
            .map(|k| self.entries[(k % n) * n + k / n].conj())
            .collect();
        Self { dim: n, entries }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let inv = linalg::inverse(&self.rows()).ok_or(MatrixError::Singular)?;
        Self::from_rows(inv)
    }

    /// Block-diagonal direct sum `self ⊕ rhs`.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let n = self.dim + rhs.dim;
        let mut m = Self::zero(n);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m.entries[r * n + c] = self.get(r, c).clone();
            }
        }
        for r in 0..rhs.dim {
            for c in 0..rhs.dim {
                m.entries[(r + self.dim) * n + c + self.dim] = rhs.get(r, c).clone();
            }
        }
        m
    }

    /// `x·y − y·x`
    pub fn commutator(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.mul(rhs)?.sub(&rhs.mul_unchecked(self))
    }

    /// Monomial: exactly one non-zero entry in every row and column.
    pub fn is_monomial(&self) -> bool {
        let n = self.dim;
        let mut col_seen = vec![false; n];
        for r in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&c| !self.get(r, c).is_zero()).collect();
            if nz.len() != 1 || col_seen[nz[0]] {
                return false;
            }
            col_seen[nz[0]] = true;
        }
        true
    }
}

impl fmt::Display for ExactMatrix {
    /// Canonical text form, e.g. `[[0,1],[1,0]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (r, row) in self.entries.chunks(self.dim).enumerate() {
            if r > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (c, e) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

pub fn format_matrix(m: &ExactMatrix) -> String {
    m.to_string()
}

pub fn parse_matrix(text: &str) -> Result<ExactMatrix, ParseError> {
    text.parse()
}

struct MatrixLexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> MatrixLexer<'a> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::at_offset(self.pos, format!("expected '{c}'")))
        }
    }

    fn try_eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn entry(&mut self, row: usize, col: usize) -> Result<GaussianRational, ParseError> {
        self.skip_ws();
        let quoted = self.try_eat('"');
        let start = self.pos;
        let stop = |c: char| c == ',' || c == ']' || c == '"' || c.is_ascii_whitespace();
        let len = self.text[start..]
            .find(stop)
            .unwrap_or(self.text.len() - start);
        self.pos += len;
        let token = &self.text[start..self.pos];
        let value = token
            .parse()
            .map_err(|e: ParseError| e.in_entry(row, col, start))?;
        if quoted {
            self.expect('"').map_err(|e| e.in_entry(row, col, 0))?;
        }
        Ok(value)
    }
}

impl FromStr for ExactMatrix {
    type Err = ParseError;

    /// Nested-array text form. Entries may be bare (`[[0,-i],[-i,0]]`) or
    /// quoted as JSON strings; whitespace between tokens is ignored.
    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut lx = MatrixLexer { text, pos: 0 };
        lx.expect('[')?;
        let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
        loop {
            lx.expect('[')?;
            let r = rows.len();
            let mut row = Vec::new();
            loop {
                row.push(lx.entry(r, row.len())?);
                if lx.try_eat(']') {
                    break;
                }
                lx.expect(',').map_err(|e| e.in_entry(r, row.len(), 0))?;
            }
            rows.push(row);
            if lx.try_eat(']') {
                break;
            }
            lx.expect(',')?;
        }
        lx.skip_ws();
        if lx.pos != text.len() {
            return Err(ParseError::at_offset(lx.pos, "trailing characters"));
        }
        let n = rows.len();
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(ParseError {
                row: Some(r),
                col: Some(row.len().min(n)),
                offset: lx.pos,
                message: format!("row {r} has {} entries, expected {n}", row.len()),
            });
        }
        Ok(Self::from_rows(rows).expect("validated square"))
    }
}

impl serde::Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for ExactMatrix {
    /// Accepts either the text form or a JSON array of arrays of entry strings.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Rows(Vec<Vec<String>>),
        }
        let text = match Repr::deserialize(d)? {
            Repr::Text(t) => t,
            Repr::Rows(rows) => {
                let inner: Vec<String> =
                    rows.iter().map(|r| format!("[{}]", r.join(","))).collect();
                format!("[{}]", inner.join(","))
            }
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::RepError;
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

/// Element of Q(ζ) with ζ a primitive 8th root of unity, stored over the
/// basis {1, ζ, ζ², ζ³} with ζ⁴ = −1.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Cyclo8([BigRational; 4]);

impl Cyclo8 {
    fn zero() -> Self {
        Self(std::array::from_fn(|_| BigRational::zero()))
    }

    /// ζᵖ for any integer power.
    fn root(p: i64) -> Self {
        let p = p.rem_euclid(8) as usize;
        let mut c = Self::zero();
        c.0[p % 4] = if p < 4 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        c
    }

    /// a + bi with i = ζ².
    fn gaussian(z: &GaussianRational) -> Self {
        let mut c = Self::zero();
        c.0[0] = z.re().clone();
        c.0[2] = z.im().clone();
        c
    }

    fn scale(&self, k: &BigRational) -> Self {
        Self(std::array::from_fn(|i| &self.0[i] * k))
    }

    /// The rational value, when the irrational parts vanish.
    fn as_rational(&self) -> Option<&BigRational> {
        self.0[1..].iter().all(Zero::is_zero).then_some(&self.0[0])
    }
}

impl Add for Cyclo8 {
    type Output = Cyclo8;
    fn add(self, rhs: Cyclo8) -> Cyclo8 {
        Cyclo8(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Mul for &Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, rhs: &Cyclo8) -> Cyclo8 {
        let mut out = Cyclo8::zero();
        for (i, a) in self.0.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.0.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let prod = a * b;
                if i + j < 4 {
                    out.0[i + j] += prod;
                } else {
                    out.0[i + j - 4] -= prod;
                }
            }
        }
        out
    }
}

/// The value `½·ζᵖ`, ζ = e^{iπ/4}. Every eigenvalue of `(i/2)·g` for an
/// element of order dividing 8 has this shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfRoot(pub u8);

impl HalfRoot {
    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(4)
    }

    pub fn is_imaginary(self) -> bool {
        self.0 % 4 == 2
    }
}

/// Real and imaginary parts are printed as `a`, `b*r2` or `a+b*r2`
/// (r2 = √2); Gaussian-rational values use the plain entry grammar.
impl fmt::Display for HalfRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self.0 % 8 {
            0 => "1/2",
            1 => "1/4*r2+1/4*r2i",
            2 => "1/2i",
            3 => "-1/4*r2+1/4*r2i",
            4 => "-1/2",
            5 => "-1/4*r2-1/4*r2i",
            6 => "-1/2i",
            _ => "1/4*r2-1/4*r2i",
        };
        f.write_str(text)
    }
}

impl Serialize for HalfRoot {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightClass {
    RealHalfInteger,
    PureImaginary,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub label: String,
    pub order: usize,
    /// Eigenvalues of `(i/2)·g` with multiplicities.
    pub eigenvalues: Vec<(HalfRoot, usize)>,
    pub classification: WeightClass,
    /// Largest eigenvalue when all are real.
    pub l0: Option<String>,
}

fn finite_order(g: &ExactMatrix) -> Result<usize, RepError> {
    let mut x = g.clone();
    for n in 1..=8 {
        if x.is_identity() {
            return if 8 % n == 0 {
                Ok(n)
            } else {
                Err(RepError::UnsupportedOrder { order: n })
            };
        }
        x = x.mul_unchecked(g);
    }
    Err(RepError::UnsupportedOrder { order: 0 })
}

/// Multiplicity of each eigenvalue `ζ^p` of `g` (ζ = e^{iπ/4}), from the
/// discrete Fourier transform of the power traces:
/// `m_k = (1/n) Σ_j tr(g^j) ζ_n^{-jk}`.
pub fn eigen_multiplicities(g: &ExactMatrix) -> Result<Vec<(u8, usize)>, RepError> {
    let n = finite_order(g)?;
    let step = (8 / n) as i64;
    let traces: Vec<Cyclo8> = {
        let mut x = ExactMatrix::identity(g.dim());
        (0..n)
            .map(|_| {
                let t = Cyclo8::gaussian(&x.trace());
                x = x.mul_unchecked(g);
                t
            })
            .collect()
    };
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
    let mut out = Vec::new();
    for k in 0..n as i64 {
        let sum = traces
            .iter()
            .enumerate()
            .fold(Cyclo8::zero(), |acc, (j, t)| {
                acc + t * &Cyclo8::root(-step * j as i64 * k)
            })
            .scale(&inv_n);
        let m = sum
            .as_rational()
            .filter(|q| q.is_integer() && !q.is_negative())
            .ok_or(RepError::NonIntegralMultiplicity)?;
        let m = usize::try_from(m.to_integer()).map_err(|_| RepError::NonIntegralMultiplicity)?;
        if m > 0 {
            out.push(((step * k) as u8, m));
        }
    }
    // Oracle: Σ m_k ζ^k must reproduce the trace.
    let rebuilt = out.iter().fold(Cyclo8::zero(), |acc, &(p, m)| {
        acc + Cyclo8::root(p as i64).scale(&BigRational::from_integer(BigInt::from(m)))
    });
    if rebuilt != Cyclo8::gaussian(&g.trace()) || out.iter().map(|p| p.1).sum::<usize>() != g.dim()
    {
        return Err(RepError::NonIntegralMultiplicity);
    }
    Ok(out)
}

/// Eigenvalues of `(i/2)·g` and the weight number `l0`.
pub fn spin_weight(label: &str, g: &ExactMatrix) -> Result<WeightReport, RepError> {
    let order = finite_order(g)?;
    let mut eigenvalues: Vec<(HalfRoot, usize)> = eigen_multiplicities(g)?
        .into_iter()
        .map(|(p, m)| (HalfRoot((p + 2) % 8), m))
        .collect();
    eigenvalues.sort();
    let classification = if eigenvalues.iter().all(|(e, _)| e.is_real()) {
        WeightClass::RealHalfInteger
    } else if eigenvalues.iter().all(|(e, _)| e.is_imaginary()) {
        WeightClass::PureImaginary
    } else {
        WeightClass::Mixed
    };
    let l0 = (classification == WeightClass::RealHalfInteger).then(|| {
        if eigenvalues.iter().any(|(e, _)| e.0 == 0) {
            "1/2"
        } else {
            "-1/2"
        }
        .to_string()
    });
    Ok(WeightReport {
        label: label.to_string(),
        order,
        eigenvalues,
        classification,
        l0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ExactMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn cyclotomic_arithmetic() {
        let z = Cyclo8::root(1);
        let mut acc = Cyclo8::root(0);
        for _ in 0..8 {
            acc = &acc * &z;
        }
        assert_eq!(acc, Cyclo8::root(0));
        assert_eq!(&Cyclo8::root(2) * &Cyclo8::root(2), Cyclo8::root(4));
        assert_eq!(Cyclo8::root(4).as_rational(), Some(&-BigRational::one()));
    }

    #[test]
    fn rotation_generator_has_half_weights() {
        let r = spin_weight("a1", &m("[[0,-i],[-i,0]]")).unwrap();
        assert_eq!(r.eigenvalues, vec![(HalfRoot(0), 1), (HalfRoot(4), 1)]);
        assert_eq!(r.classification, WeightClass::RealHalfInteger);
        assert_eq!(r.l0.as_deref(), Some("1/2"));
    }

    #[test]
    fn scalar_and_imaginary_cases() {
        let r = spin_weight("s", &m("[[-i,0],[0,-i]]")).unwrap();
        assert_eq!(r.eigenvalues, vec![(HalfRoot(0), 2)]);
        let y = spin_weight("y", &m("[[0,-i],[i,0]]")).unwrap();
        assert_eq!(y.classification, WeightClass::PureImaginary);
        assert_eq!(y.l0, None);
    }

    #[test]
    fn order_eight_element() {
        // g² = iI, so g has eigenvalues ζ and ζ⁵.
        let g = m("[[0,i],[1,0]]");
        assert_eq!(eigen_multiplicities(&g).unwrap(), vec![(1, 1), (5, 1)]);
        let r = spin_weight("g", &g).unwrap();
        assert_eq!(r.order, 8);
        assert_eq!(r.eigenvalues, vec![(HalfRoot(3), 1), (HalfRoot(7), 1)]);
        assert_eq!(r.classification, WeightClass::Mixed);
        let h = m("[[0,0,i],[1,0,0],[0,1,0]]");
        assert!(matches!(
            spin_weight("h", &h),
            Err(RepError::UnsupportedOrder { .. })
        ));
        assert_eq!(HalfRoot(1).to_string(), "1/4*r2+1/4*r2i");
    }
}

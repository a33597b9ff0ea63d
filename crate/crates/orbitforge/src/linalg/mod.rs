//! Exact dense linear algebra over ℚ.
//!
//! Everything here is a pure function of immutable values. Subspaces are kept
//! in a canonical echelon form so that set equality is representation equality.

mod form;
mod matrix;
mod poly;
mod subspace;

pub use form::{congruence_diagonal, signature};
pub use matrix::Matrix;
pub use poly::{invariant_factors, Poly};
pub use subspace::{annihilator, image, intersect, kernel, quotient_coords, solve, Subspace};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number; always reduced with positive denominator.
pub type Scalar = BigRational;

/// Column vectors are plain coordinate lists.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Scalar) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses `"a"`, `"-a/b"` and friends.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Scalar::new(n, d))
}

/// Inverse of [`parse_scalar`]; integers print without a denominator.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn vec_from_ints(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Σ cᵢ vᵢ over equally sized vectors of length `n`.
pub fn combine(n: usize, coeffs: &[Scalar], vs: &[Vector]) -> Vector {
    let mut out = zero_vec(n);
    for (c, v) in coeffs.iter().zip(vs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Serde adapters for rationals written as `"num/den"` strings.
pub mod serde_rational {
    use super::{format_scalar, parse_scalar, Scalar};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Lit {
        Str(String),
        Int(i64),
    }

    fn lit(l: Lit) -> Result<Scalar, String> {
        match l {
            Lit::Str(s) => parse_scalar(&s).map_err(|e| e.to_string()),
            Lit::Int(i) => Ok(super::int(i)),
        }
    }

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        lit(Lit::deserialize(d)?).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&format_scalar(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
            Vec::<Lit>::deserialize(d)?.into_iter().map(lit).collect::<Result<_, _>>().map_err(D::Error::custom)
        }
    }

    pub mod rows {
        use super::*;

        pub fn serialize<S: Serializer>(rows: &[Vec<Scalar>], s: S) -> Result<S::Ok, S::Error> {
            let strs: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(format_scalar).collect()).collect();
            serde::Serialize::serialize(&strs, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Scalar>>, D::Error> {
            Vec::<Vec<Lit>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(lit).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()
                .map_err(D::Error::custom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_literals_round_trip() {
        for s in ["0", "-3", "7/2", "-1/9"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(parse_scalar("4/6").unwrap(), frac(2, 3));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}

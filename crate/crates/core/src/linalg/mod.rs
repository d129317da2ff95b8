//! Exact rational linear algebra.
//!
//! Everything here works over arbitrary-precision rationals. The sparse
//! [`MatrixQ`] carries the large constraint systems; [`DenseMatrix`] is used
//! for the small operators on `g` and `g/h`.

mod dense;
mod echelon;
mod sparse;

pub use dense::DenseMatrix;
pub use echelon::{nullspace, rank, solve_affine, AffineOutcome, AffineSolution, Certificate};
pub use sparse::{MatrixQ, SparseRow};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Scalar = num_rational::BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `gcd(|p|, q) = 1` and `q >= 1`.
pub fn is_normalized(x: &Scalar) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn to_pq(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_pq(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Scalar::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x * y
        }
    })
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Serde helpers writing rationals as `"p/q"` strings.
pub mod serde_pq {
    use super::{parse_pq, to_pq, Scalar};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse_pq(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&to_pq(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| parse_pq(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                .collect()
        }
    }
}

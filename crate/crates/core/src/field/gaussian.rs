use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

/// Serialized form: both parts as canonical rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianDoc {
    pub re: String,
    pub im: String,
}

fn rat_str(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn zero() -> Self {
        Self::from_i64(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True on `{im > 0} ∪ {im = 0, re < 0}`, where the argument lies in `(0, π]`.
    pub fn is_admissible(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }

    pub fn check_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::InadmissibleCharge(self.to_string()))
        }
    }

    pub fn add(&self, other: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn scale(&self, k: i64) -> GaussianRational {
        let k = BigRational::from_integer(BigInt::from(k));
        GaussianRational {
            re: &self.re * &k,
            im: &self.im * &k,
        }
    }

    pub fn to_doc(&self) -> GaussianDoc {
        GaussianDoc {
            re: rat_str(&self.re),
            im: rat_str(&self.im),
        }
    }

    pub fn from_doc(doc: &GaussianDoc) -> Result<Self> {
        let parse = |s: &str| -> Result<BigRational> {
            s.trim()
                .replace('\u{2212}', "-")
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
        };
        Ok(GaussianRational {
            re: parse(&doc.re)?,
            im: parse(&doc.im)?,
        })
    }

    /// Floating approximation of the argument, for reports only.
    pub fn approx_arg(&self) -> f64 {
        use num_traits::ToPrimitive;
        let re = self.re.to_f64().unwrap_or(0.0);
        let im = self.im.to_f64().unwrap_or(0.0);
        im.atan2(re)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = &self.im;
        if im.is_negative() {
            write!(f, "{} - {}i", rat_str(&self.re), rat_str(&-im))
        } else {
            write!(f, "{} + {}i", rat_str(&self.re), rat_str(im))
        }
    }
}

/// Exact comparison of `arg z1` with `arg z2` on the admissible region.
///
/// Inside the open upper half-plane the argument is decreasing in the sign of the
/// cross product `re1·im2 − re2·im1`; the negative real axis carries the maximum `π`.
pub fn arg_compare(z1: &GaussianRational, z2: &GaussianRational) -> Result<Ordering> {
    z1.check_admissible()?;
    z2.check_admissible()?;
    let on_axis = |z: &GaussianRational| z.im.is_zero();
    Ok(match (on_axis(z1), on_axis(z2)) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            let cross = &z1.re * &z2.im - &z2.re * &z1.im;
            // cross > 0 means z2 is counter-clockwise from z1.
            BigRational::zero().cmp(&cross)
        }
    })
}

/// An exact phase: the admissible charge it was read from, ordered by argument.
#[derive(Clone, Debug)]
pub struct Phase(pub GaussianRational);

impl Phase {
    pub fn new(z: GaussianRational) -> Result<Self> {
        z.check_admissible()?;
        Ok(Phase(z))
    }
}

impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Phase {}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> Ordering {
        arg_compare(&self.0, &other.0).expect("phase tokens are admissible by construction")
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arg({})", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrant_and_boundary() {
        let g = GaussianRational::from_i64;
        assert_eq!(arg_compare(&g(-1, 1), &g(0, 1)).unwrap(), Ordering::Greater);
        assert_eq!(arg_compare(&g(0, 1), &g(0, 2)).unwrap(), Ordering::Equal);
        assert_eq!(arg_compare(&g(-1, 0), &g(1, 1)).unwrap(), Ordering::Greater);
        assert_eq!(arg_compare(&g(-1, 0), &g(-5, 0)).unwrap(), Ordering::Equal);
        assert!(arg_compare(&g(1, 0), &g(0, 1)).is_err());
        assert!(arg_compare(&g(0, 0), &g(0, 1)).is_err());
        assert!(arg_compare(&g(1, -1), &g(0, 1)).is_err());
    }
}

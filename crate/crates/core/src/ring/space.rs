use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The blowup `X^n_{r,s}` of `P^n` along `r` general lines and `s` general
/// points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceSignature {
    pub n: usize,
    pub r: usize,
    pub s: usize,
}

impl SpaceSignature {
    pub fn new(n: usize, r: usize, s: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Range(format!("ambient dimension n = {n} must be at least 2")));
        }
        // A line in P^2 is a divisor; blowing it up changes nothing and E_i
        // would coincide numerically with H.
        if n == 2 && r > 0 {
            return Err(Error::Range("cannot blow up lines in P^2".into()));
        }
        Ok(SpaceSignature { n, r, s })
    }

    /// Lines only, `X^n_r`.
    pub fn lines(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, 0)
    }

    pub fn check_same(&self, other: &SpaceSignature) -> Result<()> {
        if self != other {
            return Err(Error::Domain(format!("space mismatch: {self} vs {other}")));
        }
        Ok(())
    }
}

impl fmt::Display for SpaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s == 0 {
            write!(f, "X^{}_{}", self.n, self.r)
        } else {
            write!(f, "X^{}_{{{},{}}}", self.n, self.r, self.s)
        }
    }
}

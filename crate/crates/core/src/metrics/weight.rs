//! Weight functions: strictly decreasing length-to-weight maps with
//! sub-multiplicative and doubling controls.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum WeightKind {
    /// The usual word metric weight, `δ(n) = 1/(n+1)`.
    Reciprocal,
}

/// A strictly decreasing positive weight `δ` on lengths, with certified
/// constants: `δ(ab) <= c̄·δ(a)·δ(b)` for arguments `>= 1` and
/// `δ(2a) >= c_·δ(a)`. Rational-exact.
#[derive(Clone, Debug)]
pub struct WeightFunction {
    kind: WeightKind,
    cbar: BigRational,
    cunder: BigRational,
}

/// Result of the spot audit of the weight constants on an argument grid.
#[derive(Clone, Debug)]
pub struct WeightAudit {
    pub grid_max: usize,
    /// max over the grid of `δ(ab) / (δ(a)δ(b))`, arguments `>= 1`.
    pub max_submultiplicative_ratio: BigRational,
    pub doubling_holds: bool,
    pub strictly_decreasing: bool,
}

impl WeightFunction {
    /// `δ(n) = 1/(n+1)`. The tight sub-multiplicativity constant over real
    /// arguments `>= 1` is 2 (attained at a = b = 1); the doubling constant
    /// is 1/2, exactly: `δ(2a) = (a+1)/(2a+1)·δ(a) >= δ(a)/2`.
    pub fn default_weight() -> Self {
        WeightFunction {
            kind: WeightKind::Reciprocal,
            cbar: BigRational::from(BigInt::from(2)),
            cunder: BigRational::new(BigInt::from(1), BigInt::from(2)),
        }
    }

    pub fn is_exact(&self) -> bool {
        true
    }

    /// Sub-multiplicativity constant (for arguments `>= 1`).
    pub fn cbar(&self) -> &BigRational {
        &self.cbar
    }

    /// Doubling constant.
    pub fn c_under(&self) -> &BigRational {
        &self.cunder
    }

    pub fn eval(&self, n: usize) -> BigRational {
        match self.kind {
            WeightKind::Reciprocal => {
                BigRational::new(BigInt::one(), BigInt::from(n as u64 + 1))
            }
        }
    }

    /// `δ` at a rational argument; only non-negative arguments occur in the
    /// formulas, negatives are rejected.
    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_negative() {
            return Err(Error::InvalidArgument(
                "weight function arguments must be non-negative".into(),
            ));
        }
        match self.kind {
            WeightKind::Reciprocal => Ok((x + BigRational::one()).recip()),
        }
    }

    pub fn eval_f64(&self, n: usize) -> f64 {
        self.eval(n).to_f64().unwrap()
    }

    /// `δ(n)^s` for real `s`.
    pub fn pow_f64(&self, n: usize, s: f64) -> f64 {
        self.eval_f64(n).powf(s)
    }

    /// Spot audit of the constants on a grid of arguments up to `grid_max`.
    pub fn audit(&self, grid_max: usize) -> WeightAudit {
        let mut grid: Vec<usize> = (1..=32.min(grid_max)).collect();
        let mut g = 48usize;
        while g <= grid_max {
            grid.push(g);
            g = g * 3 / 2;
        }
        let mut max_ratio = BigRational::zero();
        let mut doubling = true;
        let mut decreasing = true;
        for &a in &grid {
            let da = self.eval(a);
            if self.eval(a + 1) >= da {
                decreasing = false;
            }
            if self.eval(2 * a) < self.c_under() * &da {
                doubling = false;
            }
            for &b in &grid {
                let ratio = self.eval(a * b) / (&da * self.eval(b));
                if ratio > max_ratio {
                    max_ratio = ratio;
                }
            }
        }
        WeightAudit {
            grid_max,
            max_submultiplicative_ratio: max_ratio,
            doubling_holds: doubling,
            strictly_decreasing: decreasing,
        }
    }

    /// The ratio `c̄·δ(ℓ+1)` of the geometric tail estimate obtained from a
    /// repulsiveness index `ℓ`.
    pub fn geometric_ratio(&self, ell: &BigRational) -> Result<BigRational> {
        Ok(self.cbar() * self.eval_rational(&(ell + BigRational::one()))?)
    }

    /// `Σ_{k>=1} (c̄·δ(ℓ+1))^k`, when the series converges.
    pub fn geometric_bound(&self, ell: &BigRational) -> Result<Option<BigRational>> {
        let q = self.geometric_ratio(ell)?;
        if q < BigRational::one() {
            let bound = &q / (BigRational::one() - &q);
            Ok(Some(bound))
        } else {
            Ok(None)
        }
    }
}

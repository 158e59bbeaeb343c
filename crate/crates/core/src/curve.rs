//! Weighted smooth projective curves and their scalar invariants.
//!
//! A weighted curve is recorded by the genus of the underlying surface and the
//! multiset of weights of its exceptional points. Positions of those points
//! play no role in anything computed here and are not modelled.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Genus plus sorted weights, every weight at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCurve", into = "RawCurve")]
pub struct WeightedCurve {
    genus: u64,
    weights: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawCurve {
    genus: u64,
    weights: Vec<u64>,
}

impl TryFrom<RawCurve> for WeightedCurve {
    type Error = Error;
    fn try_from(raw: RawCurve) -> Result<Self> {
        WeightedCurve::new(raw.genus, raw.weights)
    }
}

impl From<WeightedCurve> for RawCurve {
    fn from(c: WeightedCurve) -> Self {
        RawCurve {
            genus: c.genus,
            weights: c.weights,
        }
    }
}

impl WeightedCurve {
    /// Weight-1 entries are ordinary points and are dropped; weight 0 is an error.
    pub fn new(genus: u64, weights: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut ws = Vec::new();
        for w in weights {
            match w {
                0 => return Err(Error::domain("weights must be positive")),
                1 => {}
                w => ws.push(w),
            }
        }
        ws.sort_unstable();
        Ok(WeightedCurve { genus, weights: ws })
    }

    /// The weighted projective line `P¹⟨weights⟩`.
    pub fn line(weights: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new(0, weights)
    }

    pub fn projective_line() -> Self {
        WeightedCurve {
            genus: 0,
            weights: Vec::new(),
        }
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Number of weighted points.
    pub fn num_weighted(&self) -> usize {
        self.weights.len()
    }

    pub fn is_ordinary(&self) -> bool {
        self.weights.is_empty()
    }
}

impl fmt::Display for WeightedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.genus == 0 {
            if self.weights.is_empty() {
                return f.write_str("P1");
            }
            f.write_str("<")?;
        } else {
            write!(f, "g={}<", self.genus)?;
        }
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(">")
    }
}

/// Uniformization type of a weighted curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Trisection {
    Spherical,
    Parabolic,
    Hyperbolic,
    /// `P¹⟨p⟩` or `P¹⟨p,q⟩` with `p ≠ q`: not a global quotient.
    ExcludedPQ,
}

impl fmt::Display for Trisection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trisection::Spherical => "spherical",
            Trisection::Parabolic => "parabolic",
            Trisection::Hyperbolic => "hyperbolic",
            Trisection::ExcludedPQ => "excluded-pq",
        })
    }
}

/// χ = 2(1 − g) − Σ (1 − 1/aᵢ).
pub fn euler_characteristic(curve: &WeightedCurve) -> ExactRational {
    let base = ExactRational::from(chi_from_genus(&BigUint::from(curve.genus)));
    curve
        .weights
        .iter()
        .fold(base, |acc, &a| acc - (ExactRational::one() - ExactRational::recip_of(a)))
}

pub fn classify(curve: &WeightedCurve) -> Trisection {
    if curve.genus == 0 {
        match curve.weights.as_slice() {
            [_] => return Trisection::ExcludedPQ,
            [p, q] if p != q => return Trisection::ExcludedPQ,
            _ => {}
        }
    }
    let chi = euler_characteristic(curve);
    if chi.is_positive() {
        Trisection::Spherical
    } else if chi.is_zero() {
        Trisection::Parabolic
    } else {
        Trisection::Hyperbolic
    }
}

/// Euler characteristic of the quotient by a group of the given order.
pub fn riemann_hurwitz_chi(chi_cover: &ExactRational, group_order: &BigUint) -> Result<ExactRational> {
    if group_order.is_zero() {
        return Err(Error::domain("group order must be at least 1"));
    }
    Ok(chi_cover / &ExactRational::from(BigInt::from(group_order.clone())))
}

/// The bound 42·|χ| on the automorphism group of an ordinary hyperbolic surface.
pub fn hurwitz_bound(chi: &ExactRational) -> Result<BigUint> {
    let n = chi
        .to_integer()
        .filter(|n| n.is_negative() && n.is_even())
        .ok_or_else(|| {
            Error::domain(format!(
                "bound applies to ordinary hyperbolic surfaces (negative even integral chi), got {chi}"
            ))
        })?;
    Ok(n.magnitude() * 42u32)
}

/// χ = 2(1 − g).
pub fn chi_from_genus(genus: &BigUint) -> BigInt {
    (BigInt::one() - BigInt::from(genus.clone())) * 2
}

/// g = 1 − χ/2, for an even integer χ ≤ 2.
pub fn genus_from_chi(chi: &ExactRational) -> Result<BigUint> {
    let n = chi
        .to_integer()
        .filter(|n| n.is_even())
        .ok_or_else(|| Error::domain(format!("chi must be an even integer to have a genus, got {chi}")))?;
    let g: BigInt = BigInt::one() - n / 2;
    g.to_biguint()
        .ok_or_else(|| Error::domain(format!("chi = {chi} exceeds 2, no surface has it")))
}

/// Order of the polyhedral group with quotient `P¹⟨a,b,c⟩`: 2 / (1/a + 1/b + 1/c − 1).
pub fn spherical_triangle_group_order(a: u64, b: u64, c: u64) -> Result<BigUint> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::domain("triangle orders must be positive"));
    }
    let excess = ExactRational::recip_of(a) + ExactRational::recip_of(b) + ExactRational::recip_of(c)
        - ExactRational::one();
    if !excess.is_positive() {
        return Err(Error::domain(format!("({a},{b},{c}) is not a spherical triple")));
    }
    let order = ExactRational::from(2u32).checked_div(&excess)?;
    order
        .to_integer()
        .and_then(|n| n.to_biguint())
        .ok_or_else(|| Error::domain(format!("non-integral group order {order} for ({a},{b},{c})")))
}

/// lcm of the weights; 1 for an ordinary curve.
pub fn weight_lcm(curve: &WeightedCurve) -> BigUint {
    lcm_of(curve.weights.iter().copied())
}

pub(crate) fn lcm_of(ws: impl IntoIterator<Item = u64>) -> BigUint {
    ws.into_iter()
        .fold(BigUint::one(), |acc, w| acc.lcm(&BigUint::from(w)))
}

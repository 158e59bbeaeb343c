//! The numerical Grothendieck group of a weighted curve and its averaged
//! Euler form, evaluated through the weighted Riemann-Roch formula
//!
//! ```text
//! ⟨⟨X,Y⟩⟩ = ⟨⟨O,O⟩⟩·rk X·rk Y + (1/ā)·(rk X·dg Y − rk Y·dg X),   2⟨⟨O,O⟩⟩ = χ.
//! ```
//!
//! Classes are tracked only through the two linear forms rank and degree.

use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::curve::{euler_characteristic, weight_lcm, WeightedCurve};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// A class in the numerical Grothendieck group. Formal differences are allowed,
/// so both coordinates may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct K0Class {
    #[serde(with = "crate::serde_util::bigint")]
    pub rank: BigInt,
    #[serde(with = "crate::serde_util::bigint")]
    pub degree: BigInt,
}

impl K0Class {
    pub fn new(rank: impl Into<BigInt>, degree: impl Into<BigInt>) -> Self {
        K0Class {
            rank: rank.into(),
            degree: degree.into(),
        }
    }

    /// The structure sheaf: rank one, degree zero.
    pub fn structure_sheaf() -> Self {
        K0Class::new(1, 0)
    }

    /// The simple sheaf concentrated at a point of the given weight.
    pub fn simple_at_weight(curve: &WeightedCurve, point_weight: u64) -> Result<Self> {
        Ok(K0Class::new(0, BigInt::from(simple_sheaf_degree(curve, point_weight)?)))
    }
}

impl Add for K0Class {
    type Output = K0Class;
    fn add(self, rhs: K0Class) -> K0Class {
        K0Class::new(self.rank + rhs.rank, self.degree + rhs.degree)
    }
}

impl Sub for K0Class {
    type Output = K0Class;
    fn sub(self, rhs: K0Class) -> K0Class {
        K0Class::new(self.rank - rhs.rank, self.degree - rhs.degree)
    }
}

impl Neg for K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        K0Class::new(-self.rank, -self.degree)
    }
}

pub fn averaged_euler_form(curve: &WeightedCurve, x: &K0Class, y: &K0Class) -> ExactRational {
    let half_chi = euler_characteristic(curve) / ExactRational::from(2u32);
    let abar = ExactRational::from(BigInt::from(weight_lcm(curve)));
    let det = &x.rank * &y.degree - &y.rank * &x.degree;
    half_chi * ExactRational::from(&x.rank * &y.rank) + ExactRational::from(det) / abar
}

/// ā / w for a point of weight `w`; `w = 1` means an ordinary point.
pub fn simple_sheaf_degree(curve: &WeightedCurve, point_weight: u64) -> Result<BigUint> {
    if point_weight != 1 && !curve.weights().contains(&point_weight) {
        return Err(Error::domain(format!(
            "{curve} has no point of weight {point_weight}"
        )));
    }
    Ok(weight_lcm(curve) / point_weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(ws: &[u64]) -> WeightedCurve {
        WeightedCurve::line(ws.iter().copied()).unwrap()
    }

    #[test]
    fn structure_sheaf_pairs_to_half_chi() {
        for c in [line(&[2, 3, 7]), line(&[]), WeightedCurve::new(4, [3, 5]).unwrap()] {
            let o = K0Class::structure_sheaf();
            assert_eq!(
                averaged_euler_form(&c, &o, &o) * ExactRational::from(2u32),
                euler_characteristic(&c)
            );
        }
    }

    #[test]
    fn structure_sheaf_against_simple() {
        let c = line(&[2, 3, 7]);
        let s = K0Class::simple_at_weight(&c, 7).unwrap();
        assert_eq!(s, K0Class::new(0, 6));
        let v = averaged_euler_form(&c, &K0Class::structure_sheaf(), &s);
        assert_eq!(v, ExactRational::new(1, 7).unwrap());
    }

    #[test]
    fn rank_zero_classes_pair_to_zero() {
        let c = line(&[]);
        assert!(averaged_euler_form(&c, &K0Class::new(0, 5), &K0Class::new(0, -3)).is_zero());
    }

    #[test]
    fn simple_degrees() {
        assert_eq!(simple_sheaf_degree(&line(&[2, 3, 7]), 7).unwrap(), BigUint::from(6u32));
        assert_eq!(simple_sheaf_degree(&WeightedCurve::new(5, []).unwrap(), 1).unwrap(), BigUint::from(1u32));
        assert_eq!(simple_sheaf_degree(&line(&[2, 2, 4]), 2).unwrap(), BigUint::from(2u32));
        assert_eq!(simple_sheaf_degree(&line(&[2, 3, 7]), 1).unwrap(), BigUint::from(42u32));
        assert!(simple_sheaf_degree(&line(&[2, 3, 7]), 5).is_err());
    }

    fn class() -> impl Strategy<Value = K0Class> {
        (-50i64..50, -50i64..50).prop_map(|(r, d)| K0Class::new(r, d))
    }

    proptest! {
        #[test]
        fn antisymmetric_part(ws in proptest::collection::vec(2u64..9, 0..5), x in class(), y in class()) {
            let c = line(&ws);
            let abar = ExactRational::from(BigInt::from(weight_lcm(&c)));
            let lhs = averaged_euler_form(&c, &x, &y) - averaged_euler_form(&c, &y, &x);
            let det = &x.rank * &y.degree - &x.degree * &y.rank;
            prop_assert_eq!(lhs, ExactRational::from(det * 2) / abar);
        }

        #[test]
        fn simple_degree_is_positive(ws in proptest::collection::vec(2u64..12, 1..5), i in 0usize..5) {
            let c = line(&ws);
            let w = c.weights()[i % c.weights().len()];
            let d = simple_sheaf_degree(&c, w).unwrap();
            prop_assert!(d >= BigUint::from(1u32));
            prop_assert_eq!(simple_sheaf_degree(&c, 1).unwrap(), weight_lcm(&c));
        }
    }
}

//! Twisted companion curves, polyhedral realizations of weighted projective
//! lines as quotients of smooth curves, and the strange-duality table.

mod polyhedral;
mod table;

pub use polyhedral::{
    companion_quotient, permutation_realization, polyhedral_realize, GroupDescription,
    PolyhedralGroup, RealizationRecord,
};
pub use table::{arnold_table, audit, render_table, ArnoldRow, AuditSummary, PrintedRow, RowFlag};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::curve::{euler_characteristic, genus_from_chi, lcm_of, WeightedCurve};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// The twisted companion `Y⟦a₁,…,a_t⟧` of `P¹⟨a₁,…,a_t⟩`, graded by the
/// degrees `ā/aᵢ`, together with the group `(μ_{a₁}×…×μ_{a_t})/μ_ā` whose
/// quotient it is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionCurve {
    pub source_weights: Vec<u64>,
    pub degrees: Vec<u64>,
    #[serde(with = "crate::serde_util::biguint")]
    pub group_order: BigUint,
    pub chi: ExactRational,
    pub smooth: bool,
    #[serde(default, with = "crate::serde_util::opt_biguint", skip_serializing_if = "Option::is_none")]
    pub genus: Option<BigUint>,
    /// Opaque moduli parameter, e.g. the cross-ratio of `Y⟦2,2,2,2;λ⟧`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
}

impl CompanionCurve {
    pub fn with_parameter(mut self, parameter: impl Into<String>) -> Self {
        self.parameter = Some(parameter.into());
        self
    }

    pub fn lcm(&self) -> u64 {
        self.degrees[0] * self.source_weights[0]
    }
}

pub fn twisted_companion(weights: &[u64]) -> Result<CompanionCurve> {
    if weights.len() < 2 {
        return Err(Error::domain(format!(
            "a twisted companion needs at least two weights, got {}",
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|&&w| w < 2) {
        return Err(Error::domain(format!("companion weights must be at least 2, got {w}")));
    }
    let lcm = weights.iter().fold(1u64, |l, &w| l.lcm(&w));
    let degrees: Vec<u64> = weights.iter().map(|&w| lcm / w).collect();
    let product: BigUint = weights.iter().map(|&w| BigUint::from(w)).product();
    let group_order = product / lcm_of(weights.iter().copied());
    let chi = ExactRational::from(group_order.clone())
        * euler_characteristic(&WeightedCurve::line(weights.iter().copied())?);
    // Orbifold points of the weighted projective space sit where a single
    // coordinate is nonzero. With three or more weights the canonical
    // relations rule those out; with two there are no relations, so both
    // degrees must be 1.
    let coprime = degrees
        .iter()
        .enumerate()
        .all(|(i, d)| degrees[i + 1..].iter().all(|e| d.gcd(e) == 1));
    let smooth = coprime && (weights.len() >= 3 || degrees.iter().all(|&d| d == 1));
    let genus = if smooth { genus_from_chi(&chi).ok() } else { None };
    Ok(CompanionCurve {
        source_weights: weights.to_vec(),
        degrees,
        group_order,
        chi,
        smooth,
        genus,
        parameter: None,
    })
}

/// `χ(Y⟦a^[t]⟧) = −a^{t−2}((t−2)a − t)`, also meaningful for `a = 1` (then `Y = P¹`).
pub fn uniform_companion_chi(a: u64, t: u64) -> Result<ExactRational> {
    if a == 0 || t < 2 {
        return Err(Error::domain(format!("need a >= 1 and t >= 2, got a={a}, t={t}")));
    }
    let power: BigUint = BigUint::from(a).pow((t - 2) as u32);
    let factor = ExactRational::from((t - 2) * a) - ExactRational::from(t);
    Ok(-(ExactRational::from(power) * factor))
}

pub(crate) fn big_pow(base: u64, exp: u64) -> BigUint {
    if exp == 0 {
        return BigUint::one();
    }
    BigUint::from(base).pow(exp as u32)
}

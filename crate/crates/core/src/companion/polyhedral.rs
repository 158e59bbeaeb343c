use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{big_pow, twisted_companion, uniform_companion_chi};
use crate::curve::{euler_characteristic, genus_from_chi, WeightedCurve};
use crate::error::{Error, Result};
use crate::perm::{group_order, Permutation};
use crate::rational::ExactRational;

/// Finite subgroup of `Aut(P¹)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n", rename_all = "lowercase")]
pub enum PolyhedralGroup {
    Cyclic(u64),
    Dihedral(u64),
    /// Tetrahedral (3), octahedral (4) or icosahedral (5).
    Platonic(u64),
}

impl PolyhedralGroup {
    pub fn validate(self) -> Result<Self> {
        match self {
            PolyhedralGroup::Cyclic(n) if n >= 1 => Ok(self),
            PolyhedralGroup::Dihedral(n) if n >= 2 => Ok(self),
            PolyhedralGroup::Platonic(3..=5) => Ok(self),
            _ => Err(Error::domain(format!("no polyhedral group {self:?}"))),
        }
    }

    pub fn order(self) -> u64 {
        match self {
            PolyhedralGroup::Cyclic(n) => n,
            PolyhedralGroup::Dihedral(n) => 2 * n,
            PolyhedralGroup::Platonic(n) => 12 * n / (6 - n),
        }
    }
}

impl fmt::Display for PolyhedralGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyhedralGroup::Cyclic(n) => write!(f, "C{n}"),
            PolyhedralGroup::Dihedral(n) => write!(f, "D{n}"),
            PolyhedralGroup::Platonic(3) => f.write_str("A4"),
            PolyhedralGroup::Platonic(4) => f.write_str("S4"),
            PolyhedralGroup::Platonic(5) => f.write_str("A5"),
            PolyhedralGroup::Platonic(n) => write!(f, "P{n}"),
        }
    }
}

/// The group acting on the cover, as notation: only its order enters any formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum GroupDescription {
    /// `μ_a^{|A|}/μ_a ⋊ P`.
    Polyhedral {
        base: u64,
        exponent: u64,
        polyhedral: PolyhedralGroup,
    },
    /// `(μ_{a₁}×…×μ_{a_t})/μ_ā ⋊ P`.
    Companion {
        weights: Vec<u64>,
        polyhedral: PolyhedralGroup,
    },
    /// A permutation group given by generators.
    Permutation { name: String, generators: Vec<Permutation> },
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescription::Polyhedral {
                base,
                exponent,
                polyhedral,
            } => {
                write!(f, "mu_{base}^{exponent}/mu_{base}")?;
                if polyhedral.order() > 1 {
                    write!(f, " x| {polyhedral}")?;
                }
                Ok(())
            }
            GroupDescription::Companion { weights, polyhedral } => {
                let lcm = weights.iter().fold(1u64, |l, &w| num_integer::lcm(l, w));
                let mut factors: Vec<String> = Vec::new();
                let mut i = 0;
                while i < weights.len() {
                    let j = weights[i..].iter().take_while(|&&w| w == weights[i]).count();
                    factors.push(if j == 1 {
                        format!("mu_{}", weights[i])
                    } else {
                        format!("mu_{}^{j}", weights[i])
                    });
                    i += j;
                }
                write!(f, "({})/mu_{lcm}", factors.join(" x "))?;
                if polyhedral.order() > 1 {
                    write!(f, " x| {polyhedral}")?;
                }
                Ok(())
            }
            GroupDescription::Permutation { name, .. } => f.write_str(name),
        }
    }
}

/// A weighted projective line exhibited as the quotient of a cover by a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationRecord {
    pub quotient_weights: Vec<u64>,
    pub group_description: GroupDescription,
    #[serde(with = "crate::serde_util::biguint")]
    pub group_order: BigUint,
    pub chi_quotient: ExactRational,
    pub chi_cover: ExactRational,
    #[serde(default, with = "crate::serde_util::opt_biguint", skip_serializing_if = "Option::is_none")]
    pub genus_cover: Option<BigUint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_label: Option<String>,
}

impl RealizationRecord {
    fn assemble(
        quotient_weights: Vec<u64>,
        group_description: GroupDescription,
        group_order: BigUint,
        chi_cover: ExactRational,
    ) -> Result<Self> {
        let quotient = WeightedCurve::line(quotient_weights)?;
        let chi_quotient = euler_characteristic(&quotient);
        if ExactRational::from(group_order.clone()) * &chi_quotient != chi_cover {
            return Err(Error::domain(format!(
                "{group_description} of order {group_order} cannot have quotient {quotient} \
                 of a curve with Euler characteristic {chi_cover}"
            )));
        }
        Ok(RealizationRecord {
            quotient_weights: quotient.weights().to_vec(),
            group_description,
            group_order,
            genus_cover: genus_from_chi(&chi_cover).ok(),
            chi_quotient,
            chi_cover,
            curve_label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.curve_label = Some(label.into());
        self
    }

    pub fn quotient(&self) -> WeightedCurve {
        WeightedCurve::line(self.quotient_weights.iter().copied()).expect("weights validated")
    }
}

/// Realizes the quotient of `P¹⟨a^[A]⟩` by `P` for the `P`-stable set
/// `A = ε₁·(orbit 1) ⊔ ε₂·(orbit 2) ⊔ ε₃·(orbit 3) ⊔ r free orbits`, as the
/// quotient of the twisted companion `Y⟦a^[A]⟧` by `μ_a^{|A|}/μ_a ⋊ P`.
///
/// The exceptional orbits have stabilizers of orders:
///
/// | `P`      | orbit 1 | orbit 2 | orbit 3 |
/// |----------|---------|---------|---------|
/// | `C_n`    | `n`     | `n`     | —       |
/// | `D_n`    | `2`     | `2`     | `n`     |
/// | platonic | `2`     | `3`     | `n`     |
///
/// so each orbit has `|P|/stabilizer` points, and the quotient weight of an
/// orbit in `A` is `a` times its stabilizer order.
pub fn polyhedral_realize(
    group: PolyhedralGroup,
    eps: [u8; 3],
    a: u64,
    r: u64,
) -> Result<RealizationRecord> {
    let group = group.validate()?;
    if a == 0 {
        return Err(Error::domain("the weight a must be at least 1"));
    }
    if eps.iter().any(|&e| e > 1) {
        return Err(Error::domain(format!("eps entries must be 0 or 1, got {eps:?}")));
    }
    let stabilizers: [Option<u64>; 3] = match group {
        PolyhedralGroup::Cyclic(n) => {
            if eps[2] != 0 {
                return Err(Error::domain("a cyclic group has only two exceptional orbits"));
            }
            [Some(n), Some(n), None]
        }
        PolyhedralGroup::Dihedral(n) => [Some(2), Some(2), Some(n)],
        PolyhedralGroup::Platonic(n) => [Some(2), Some(3), Some(n)],
    };
    let order = group.order();
    let mut points = r * order;
    let mut weights = Vec::new();
    for (e, stab) in eps.iter().zip(stabilizers) {
        if let (1, Some(s)) = (e, stab) {
            points += order / s;
            weights.push(a * s);
        } else if let Some(s) = stab {
            weights.push(s);
        }
    }
    weights.extend(std::iter::repeat_n(a, r as usize));
    if points < 2 {
        return Err(Error::domain(format!(
            "the stable set has {points} point(s); a companion needs at least two"
        )));
    }
    let group_order = big_pow(a, points - 1) * BigUint::from(order);
    let chi_cover = uniform_companion_chi(a, points)?;
    RealizationRecord::assemble(
        weights,
        GroupDescription::Polyhedral {
            base: a,
            exponent: points,
            polyhedral: group,
        },
        group_order,
        chi_cover,
    )
}

/// Quotient of the companion `Y⟦weights⟧` by `(Π μ_{aᵢ})/μ_ā ⋊ P`, claimed to be
/// `P¹⟨quotient_weights⟩`; rejected unless Riemann–Hurwitz holds exactly and
/// the companion is smooth.
pub fn companion_quotient(
    weights: &[u64],
    group: PolyhedralGroup,
    quotient_weights: &[u64],
) -> Result<RealizationRecord> {
    let group = group.validate()?;
    let companion = twisted_companion(weights)?;
    if !companion.smooth {
        return Err(Error::domain(format!(
            "the companion of {weights:?} is not smooth (degrees {:?})",
            companion.degrees
        )));
    }
    let order = companion.group_order.clone() * BigUint::from(group.order());
    RealizationRecord::assemble(
        quotient_weights.to_vec(),
        GroupDescription::Companion {
            weights: weights.to_vec(),
            polyhedral: group,
        },
        order,
        companion.chi,
    )
}

/// Quotient by the permutation group generated by `generators`, acting on the
/// surface cut out by the kernel of a torsionfree-kernel witness.
pub fn permutation_realization(
    name: &str,
    generators: Vec<Permutation>,
    quotient_weights: &[u64],
    cap: u64,
) -> Result<RealizationRecord> {
    let order = group_order(&generators, cap)?;
    let quotient = WeightedCurve::line(quotient_weights.iter().copied())?;
    let chi_cover = ExactRational::from(order.clone()) * euler_characteristic(&quotient);
    RealizationRecord::assemble(
        quotient_weights.to_vec(),
        GroupDescription::Permutation {
            name: name.to_string(),
            generators,
        },
        order,
        chi_cover,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{parse_cycles, DEFAULT_CAP};

    fn q(n: i64) -> ExactRational {
        ExactRational::from(n)
    }

    #[test]
    fn polyhedral_orders() {
        assert_eq!(PolyhedralGroup::Platonic(3).order(), 12);
        assert_eq!(PolyhedralGroup::Platonic(4).order(), 24);
        assert_eq!(PolyhedralGroup::Platonic(5).order(), 60);
        assert_eq!(PolyhedralGroup::Dihedral(7).order(), 14);
        assert!(PolyhedralGroup::Platonic(6).validate().is_err());
        assert!(PolyhedralGroup::Dihedral(1).validate().is_err());
        assert!(PolyhedralGroup::Cyclic(0).validate().is_err());
    }

    #[test]
    fn cyclic_family() {
        // <n,n,a> from n points of weight a permuted freely by C_n.
        for n in 2..6 {
            for a in 2..5 {
                let rec = polyhedral_realize(PolyhedralGroup::Cyclic(n), [0, 0, 0], a, 1).unwrap();
                let mut expect = vec![n, n, a];
                expect.sort();
                assert_eq!(rec.quotient_weights, expect);
                assert_eq!(rec.group_order, big_pow(a, n - 1) * BigUint::from(n));
            }
        }
        // <n,a,an> with |A| = n + 1.
        let rec = polyhedral_realize(PolyhedralGroup::Cyclic(3), [1, 0, 0], 2, 1).unwrap();
        assert_eq!(rec.quotient_weights, vec![2, 3, 6]);
        assert_eq!(rec.group_order, big_pow(2, 3) * BigUint::from(3u32));
        // <an,an> with |A| = 2.
        let rec = polyhedral_realize(PolyhedralGroup::Cyclic(4), [1, 1, 0], 3, 0).unwrap();
        assert_eq!(rec.quotient_weights, vec![12, 12]);
        assert_eq!(rec.chi_cover, q(2));
        assert!(polyhedral_realize(PolyhedralGroup::Cyclic(4), [0, 0, 1], 3, 0).is_err());
    }

    #[test]
    fn dihedral_family() {
        let rec = polyhedral_realize(PolyhedralGroup::Dihedral(5), [0, 1, 0], 3, 0).unwrap();
        assert_eq!(rec.quotient_weights, vec![2, 5, 6]);
        assert_eq!(rec.group_order, 810u32.into());
        assert_eq!(rec.chi_cover, q(-108));
        assert_eq!(rec.genus_cover, Some(55u32.into()));
        assert_eq!(rec.group_description.to_string(), "mu_3^5/mu_3 x| D5");
        // The two-point orbit of the poles.
        let rec = polyhedral_realize(PolyhedralGroup::Dihedral(4), [0, 0, 1], 3, 0).unwrap();
        assert_eq!(rec.quotient_weights, vec![2, 2, 12]);
        assert_eq!(rec.group_order, BigUint::from(3u32 * 8));
    }

    #[test]
    fn platonic_family() {
        // <3,3,2a> from the six edge midpoints of the tetrahedron.
        let rec = polyhedral_realize(PolyhedralGroup::Platonic(3), [1, 0, 0], 2, 0).unwrap();
        assert_eq!(rec.quotient_weights, vec![3, 3, 4]);
        assert_eq!(rec.group_order, big_pow(2, 5) * BigUint::from(12u32));
        let rec = polyhedral_realize(PolyhedralGroup::Platonic(5), [1, 0, 0], 2, 0).unwrap();
        assert_eq!(rec.quotient_weights, vec![3, 4, 5]);
        assert_eq!(rec.group_description.to_string(), "mu_2^30/mu_2 x| A5");
        let rec = polyhedral_realize(PolyhedralGroup::Platonic(5), [1, 1, 1], 2, 0).unwrap();
        assert_eq!(rec.quotient_weights, vec![4, 6, 10]);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(polyhedral_realize(PolyhedralGroup::Cyclic(3), [0, 0, 0], 0, 1).is_err());
        assert!(polyhedral_realize(PolyhedralGroup::Cyclic(3), [1, 0, 0], 2, 0).is_err());
        assert!(polyhedral_realize(PolyhedralGroup::Cyclic(3), [2, 0, 0], 2, 0).is_err());
        assert!(polyhedral_realize(PolyhedralGroup::Platonic(7), [1, 0, 0], 2, 0).is_err());
    }

    #[test]
    fn trivial_weight_gives_sphere_cover() {
        let rec = polyhedral_realize(PolyhedralGroup::Platonic(4), [0, 0, 0], 1, 1).unwrap();
        assert_eq!(rec.quotient_weights, vec![2, 3, 4]);
        assert_eq!(rec.group_order, 24u32.into());
        assert_eq!(rec.genus_cover, Some(0u32.into()));
    }

    #[test]
    fn companion_with_symmetry() {
        let rec = companion_quotient(&[3, 6, 6], PolyhedralGroup::Dihedral(2), &[2, 4, 6]).unwrap();
        assert_eq!(rec.group_order, 72u32.into());
        assert_eq!(rec.chi_cover, q(-6));
        assert_eq!(rec.group_description.to_string(), "(mu_3 x mu_6^2)/mu_6 x| D2");
        assert!(companion_quotient(&[3, 6, 6], PolyhedralGroup::Dihedral(2), &[2, 4, 7]).is_err());
        assert!(companion_quotient(&[4, 6, 9], PolyhedralGroup::Cyclic(1), &[4, 6, 9]).is_err());
    }

    #[test]
    fn klein_group_realization() {
        let gens = vec![
            parse_cycles("(1,2)(3,6)").unwrap(),
            parse_cycles("(1,2,3,4,5,6,7)").unwrap(),
        ];
        let rec = permutation_realization("G168", gens, &[2, 3, 7], DEFAULT_CAP).unwrap();
        assert_eq!(rec.chi_cover, q(-4));
        assert_eq!(rec.genus_cover, Some(3u32.into()));
    }

    #[test]
    fn riemann_hurwitz_closure() {
        let groups = [
            PolyhedralGroup::Cyclic(1),
            PolyhedralGroup::Cyclic(5),
            PolyhedralGroup::Dihedral(2),
            PolyhedralGroup::Dihedral(6),
            PolyhedralGroup::Platonic(3),
            PolyhedralGroup::Platonic(4),
            PolyhedralGroup::Platonic(5),
        ];
        for g in groups {
            for bits in 0..8u8 {
                let eps = [bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
                for a in 1..5 {
                    for r in 0..3 {
                        let Ok(rec) = polyhedral_realize(g, eps, a, r) else { continue };
                        assert_eq!(
                            rec.chi_cover,
                            ExactRational::from(rec.group_order.clone()) * &rec.chi_quotient
                        );
                        if let Some(genus) = &rec.genus_cover {
                            assert_eq!(rec.chi_cover, ExactRational::from(crate::chi_from_genus(genus)));
                        }
                    }
                }
            }
        }
    }
}

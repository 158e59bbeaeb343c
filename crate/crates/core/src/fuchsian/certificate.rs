use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::presentation::{
    first_failing_relation, presentation, GeneratorImages, OrbifoldPresentation,
};
use super::search::{fox_witness_search_with, TriangleWitness};
use crate::curve::{classify, Trisection, WeightedCurve};
use crate::error::{Error, Result};
use crate::perm::{group_order, Permutation};
use crate::TOOL_VERSION;

/// How a certificate for a larger presentation was obtained from a smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Reduction {
    /// All handle generators and `s4..st` sent to the identity; the first
    /// three `s_j` carry a triangle witness. The quotient is verified, while
    /// torsionfreeness of a finite-index normal subgroup of the original group
    /// rests on the reduction theorem rather than on this certificate.
    TriangleQuotient {
        triangle: [u64; 3],
        killed_sigmas: Vec<usize>,
        killed_handles: u64,
    },
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduction::TriangleQuotient {
                triangle: [a, b, c],
                killed_sigmas,
                killed_handles,
            } => {
                write!(f, "quotient onto triangle group ({a},{b},{c})")?;
                if *killed_handles > 0 {
                    write!(f, ", {killed_handles} handle(s) killed")?;
                }
                if !killed_sigmas.is_empty() {
                    let names: Vec<String> = killed_sigmas.iter().map(|j| format!("s{j}")).collect();
                    write!(f, ", killed {}", names.join(","))?;
                }
                Ok(())
            }
        }
    }
}

/// A verified finite permutation quotient of an orbifold fundamental group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub presentation: OrbifoldPresentation,
    pub images: GeneratorImages,
    /// Order of the image group, i.e. the index of the kernel.
    #[serde(with = "crate::serde_util::biguint")]
    pub image_group_order: BigUint,
    /// Every `s_j` image has order exactly `a_j`.
    pub torsionfree: bool,
    pub normal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Reduction>,
    pub tool_version: String,
}

impl WitnessCertificate {
    pub fn index(&self) -> &BigUint {
        &self.image_group_order
    }
}

/// Verifies that `images` satisfy every relation of `pres` and measures the image group.
pub fn certify_torsionfree_kernel(
    pres: &OrbifoldPresentation,
    images: &GeneratorImages,
    cap: u64,
) -> Result<WitnessCertificate> {
    if let Some(index) = first_failing_relation(pres, images)? {
        return Err(Error::RelationFailed {
            index,
            relation: pres.relations()[index].to_string(),
        });
    }
    let torsionfree = images
        .sigma
        .iter()
        .zip(pres.weights())
        .all(|(s, &a)| s.order() == BigUint::from(a));
    let image_group_order = group_order(&images.all(), cap)?;
    Ok(WitnessCertificate {
        presentation: pres.clone(),
        images: images.clone(),
        image_group_order,
        torsionfree,
        normal: true,
        reduction: None,
        tool_version: TOOL_VERSION.to_string(),
    })
}

/// Genus-zero certificate for the triangle group with the witness's orders, in witness order.
pub fn certificate_from_triangle(witness: &TriangleWitness, cap: u64) -> Result<WitnessCertificate> {
    let [a, b, c] = witness.orders;
    let pres = OrbifoldPresentation::triangle(a, b, c)?;
    let images = GeneratorImages::sigma_only(vec![
        witness.c1.clone(),
        witness.c2.clone(),
        witness.c3.clone(),
    ]);
    certify_torsionfree_kernel(&pres, &images, cap)
}

/// Surface group of genus `g ≥ 1` onto `C_k × C_k`: the first handle goes to
/// two disjoint `k`-cycles, the rest to the identity.
pub fn surface_certificate(genus: u64, k: u64, cap: u64) -> Result<WitnessCertificate> {
    if genus == 0 || k == 0 {
        return Err(Error::domain("surface certificate needs genus >= 1 and k >= 1"));
    }
    let k = k as usize;
    let mut alpha = vec![Permutation::identity(); genus as usize];
    let mut beta = alpha.clone();
    alpha[0] = Permutation::cycle(1, k);
    beta[0] = Permutation::cycle(k + 1, k);
    let pres = OrbifoldPresentation::new(genus, Vec::new())?;
    certify_torsionfree_kernel(
        &pres,
        &GeneratorImages {
            alpha,
            beta,
            sigma: Vec::new(),
        },
        cap,
    )
}

/// Produces a certificate for any curve outside the excluded class.
///
/// * no orbifold points: trivial group on the sphere, `C_2 × C_2` otherwise;
/// * `<p,p>` on the sphere: the cyclic quotient of order `p`;
/// * positive genus: one handle `(α, β)` with `[α, β] = s²` where `s` is a
///   product of disjoint cycles, one per weight, so every `s_j` keeps its order;
/// * at least three weights on the sphere: a searched triangle witness on the
///   first three weights, with the remaining `s_j` killed (see [`Reduction`]).
pub fn certify_curve(
    curve: &WeightedCurve,
    max_degree: usize,
    cap: u64,
    workers: usize,
) -> Result<WitnessCertificate> {
    if classify(curve) == Trisection::ExcludedPQ {
        return Err(Error::domain(format!(
            "{curve} has no finite quotient keeping the orders of its generators"
        )));
    }
    let pres = presentation(curve);
    let w = curve.weights();
    let g = curve.genus();
    match (g, w.len()) {
        (0, 0) => certify_torsionfree_kernel(&pres, &GeneratorImages::default(), cap),
        (_, 0) => surface_certificate(g, 2, cap),
        (0, 2) => {
            let c = Permutation::cycle(1, w[0] as usize);
            certify_torsionfree_kernel(&pres, &GeneratorImages::sigma_only(vec![c.clone(), c.inverse()]), cap)
        }
        (0, t) => {
            let witness = fox_witness_search_with(w[0], w[1], w[2], max_degree, workers)?;
            let mut sigma = vec![witness.c1, witness.c2, witness.c3];
            sigma.resize(t, Permutation::identity());
            let mut cert = certify_torsionfree_kernel(&pres, &GeneratorImages::sigma_only(sigma), cap)?;
            if t > 3 {
                cert.reduction = Some(Reduction::TriangleQuotient {
                    triangle: [w[0], w[1], w[2]],
                    killed_sigmas: (4..=t).collect(),
                    killed_handles: 0,
                });
            }
            Ok(cert)
        }
        (_, _) => certify_torsionfree_kernel(&pres, &handle_images(g, w), cap),
    }
}

/// Composes a triangle witness on the first three weights with the quotient
/// killing every other generator.
pub fn reduce_to_triangle(
    curve: &WeightedCurve,
    witness: &TriangleWitness,
    cap: u64,
) -> Result<WitnessCertificate> {
    let w = curve.weights();
    if w.len() < 3 || witness.orders != [w[0], w[1], w[2]] {
        return Err(Error::domain(format!(
            "witness orders {:?} do not match the first three weights of {curve}",
            witness.orders
        )));
    }
    let g = curve.genus() as usize;
    let mut sigma = vec![witness.c1.clone(), witness.c2.clone(), witness.c3.clone()];
    sigma.resize(w.len(), Permutation::identity());
    let images = GeneratorImages {
        alpha: vec![Permutation::identity(); g],
        beta: vec![Permutation::identity(); g],
        sigma,
    };
    let mut cert = certify_torsionfree_kernel(&presentation(curve), &images, cap)?;
    if g > 0 || w.len() > 3 {
        cert.reduction = Some(Reduction::TriangleQuotient {
            triangle: witness.orders,
            killed_sigmas: (4..=w.len()).collect(),
            killed_handles: g as u64,
        });
    }
    Ok(cert)
}

/// Images with `s_j = (r_j²)⁻¹` for disjoint cycles `r_j` (an `a`-cycle for odd
/// `a`, a `2a`-cycle for even `a`, so `r_j²` has order `a`), `α₁ = Π r_j` and
/// `β₁` conjugating `α₁⁻¹` to `α₁`; then `[α₁, β₁] = α₁²` cancels `Π s_j`.
fn handle_images(genus: u64, weights: &[u64]) -> GeneratorImages {
    let mut start = 1;
    let mut root = Permutation::identity();
    let mut sigma = Vec::with_capacity(weights.len());
    for &a in weights {
        let len = if a % 2 == 0 { 2 * a } else { a } as usize;
        let r = Permutation::cycle(start, len);
        start += len;
        sigma.push(r.pow(2).inverse());
        root = root.compose(&r);
    }
    let n = root.degree();
    let gamma = conjugator(&root.inverse().padded(n), &root.padded(n));
    let mut alpha = vec![Permutation::identity(); genus as usize];
    let mut beta = alpha.clone();
    beta[0] = Permutation::from_images_unchecked(gamma).inverse();
    alpha[0] = root;
    GeneratorImages { alpha, beta, sigma }
}

/// Some `γ` with `γ⁻¹·u·γ = v` for `u`, `v` of the same cycle type: `γ` maps
/// each cycle of `u` onto a cycle of `v` of the same length.
fn conjugator(u: &[u32], v: &[u32]) -> Vec<u32> {
    let cycles = |p: &[u32]| {
        let mut seen = vec![false; p.len()];
        let mut out: Vec<Vec<u32>> = Vec::new();
        for s in 0..p.len() {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x as u32);
                x = p[x] as usize;
            }
            out.push(c);
        }
        out.sort_by_key(Vec::len);
        out
    };
    let mut gamma = vec![0u32; u.len()];
    for (cu, cv) in cycles(u).iter().zip(cycles(v).iter()) {
        debug_assert_eq!(cu.len(), cv.len());
        for (&x, &y) in cu.iter().zip(cv) {
            gamma[x as usize] = y;
        }
    }
    gamma
}

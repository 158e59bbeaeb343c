use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::WeightedCurve;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A generator of the orbifold fundamental group; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Alpha(usize),
    Beta(usize),
    Sigma(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Alpha(i) => write!(f, "a{i}"),
            Generator::Beta(i) => write!(f, "b{i}"),
            Generator::Sigma(i) => write!(f, "s{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

/// A relator: a word that must evaluate to the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `s_j^{exponent}`
    Power { sigma: usize, exponent: u64 },
    /// `s_1 ⋯ s_t · [a_1,b_1] ⋯ [a_g,b_g]`
    Product { sigmas: usize, genus: usize },
}

impl Relation {
    pub fn word(&self) -> Vec<Letter> {
        let l = |generator, inverse| Letter { generator, inverse };
        match *self {
            Relation::Power { sigma, exponent } => {
                (0..exponent).map(|_| l(Generator::Sigma(sigma), false)).collect()
            }
            Relation::Product { sigmas, genus } => {
                let mut w: Vec<Letter> = (1..=sigmas).map(|j| l(Generator::Sigma(j), false)).collect();
                for i in 1..=genus {
                    // [a,b] = a b a⁻¹ b⁻¹
                    w.push(l(Generator::Alpha(i), false));
                    w.push(l(Generator::Beta(i), false));
                    w.push(l(Generator::Alpha(i), true));
                    w.push(l(Generator::Beta(i), true));
                }
                w
            }
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Relation::Power { sigma, exponent } => write!(f, "s{sigma}^{exponent}"),
            Relation::Product { sigmas, genus } => {
                let mut parts: Vec<String> = (1..=sigmas).map(|j| format!("s{j}")).collect();
                parts.extend((1..=genus).map(|i| format!("[a{i},b{i}]")));
                if parts.is_empty() {
                    f.write_str("1")
                } else {
                    f.write_str(&parts.join("*"))
                }
            }
        }
    }
}

/// Generators and relations of the orbifold fundamental group of a weighted
/// curve of genus `g` with weights `a_1..a_t`.
///
/// The weights keep the order they were given in, because the product relation
/// depends on it. A weight of 1 is allowed and makes its generator trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct OrbifoldPresentation {
    genus: u64,
    weights: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawPresentation {
    genus: u64,
    weights: Vec<u64>,
}

impl TryFrom<RawPresentation> for OrbifoldPresentation {
    type Error = Error;
    fn try_from(r: RawPresentation) -> Result<Self> {
        OrbifoldPresentation::new(r.genus, r.weights)
    }
}

impl From<OrbifoldPresentation> for RawPresentation {
    fn from(p: OrbifoldPresentation) -> Self {
        RawPresentation {
            genus: p.genus,
            weights: p.weights,
        }
    }
}

impl OrbifoldPresentation {
    pub fn new(genus: u64, weights: Vec<u64>) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::domain("presentation weights must be positive"));
        }
        Ok(OrbifoldPresentation { genus, weights })
    }

    pub fn triangle(a: u64, b: u64, c: u64) -> Result<Self> {
        Self::new(0, vec![a, b, c])
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn curve(&self) -> WeightedCurve {
        WeightedCurve::new(self.genus, self.weights.iter().copied()).expect("weights validated")
    }

    pub fn generators(&self) -> Vec<Generator> {
        let g = self.genus as usize;
        (1..=g)
            .map(Generator::Alpha)
            .chain((1..=g).map(Generator::Beta))
            .chain((1..=self.weights.len()).map(Generator::Sigma))
            .collect()
    }

    /// The `t` power relations followed by the product relation.
    pub fn relations(&self) -> Vec<Relation> {
        let mut rels: Vec<Relation> = self
            .weights
            .iter()
            .enumerate()
            .map(|(j, &a)| Relation::Power {
                sigma: j + 1,
                exponent: a,
            })
            .collect();
        rels.push(Relation::Product {
            sigmas: self.weights.len(),
            genus: self.genus as usize,
        });
        rels
    }

    /// True when there are no generators at all (the sphere without weights).
    pub fn is_trivial(&self) -> bool {
        self.genus == 0 && self.weights.is_empty()
    }
}

impl fmt::Display for OrbifoldPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("<>");
        }
        let gens: Vec<String> = self.generators().iter().map(ToString::to_string).collect();
        let rels: Vec<String> = self.relations().iter().map(ToString::to_string).collect();
        write!(f, "<{} | {} = 1>", gens.join(","), rels.join(" = "))
    }
}

pub fn presentation(curve: &WeightedCurve) -> OrbifoldPresentation {
    OrbifoldPresentation {
        genus: curve.genus(),
        weights: curve.weights().to_vec(),
    }
}

/// Images of the generators in a finite permutation group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorImages {
    #[serde(default)]
    pub alpha: Vec<Permutation>,
    #[serde(default)]
    pub beta: Vec<Permutation>,
    #[serde(default)]
    pub sigma: Vec<Permutation>,
}

impl GeneratorImages {
    pub fn sigma_only(sigma: Vec<Permutation>) -> Self {
        GeneratorImages {
            alpha: Vec::new(),
            beta: Vec::new(),
            sigma,
        }
    }

    pub fn image(&self, g: Generator) -> &Permutation {
        match g {
            Generator::Alpha(i) => &self.alpha[i - 1],
            Generator::Beta(i) => &self.beta[i - 1],
            Generator::Sigma(j) => &self.sigma[j - 1],
        }
    }

    pub fn all(&self) -> Vec<Permutation> {
        self.alpha
            .iter()
            .chain(&self.beta)
            .chain(&self.sigma)
            .cloned()
            .collect()
    }

    fn check_arity(&self, pres: &OrbifoldPresentation) -> Result<()> {
        let g = pres.genus as usize;
        if self.alpha.len() != g || self.beta.len() != g || self.sigma.len() != pres.weights.len() {
            return Err(Error::domain(format!(
                "presentation needs {g} alpha, {g} beta and {} sigma images, got {}, {} and {}",
                pres.weights.len(),
                self.alpha.len(),
                self.beta.len(),
                self.sigma.len()
            )));
        }
        Ok(())
    }
}

/// Left-to-right product of the images of a word.
pub fn evaluate(word: &[Letter], images: &GeneratorImages) -> Permutation {
    word.iter().fold(Permutation::identity(), |acc, l| {
        let x = images.image(l.generator);
        if l.inverse {
            acc.compose(&x.inverse())
        } else {
            acc.compose(x)
        }
    })
}

/// Index of the first relation that fails under `images`, if any.
pub fn first_failing_relation(
    pres: &OrbifoldPresentation,
    images: &GeneratorImages,
) -> Result<Option<usize>> {
    images.check_arity(pres)?;
    Ok(pres
        .relations()
        .iter()
        .position(|r| !evaluate(&r.word(), images).is_identity()))
}

/// True iff every relation of `pres` holds for `images`.
pub fn check_homomorphism(pres: &OrbifoldPresentation, images: &GeneratorImages) -> Result<bool> {
    Ok(first_failing_relation(pres, images)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn p(s: &str) -> Permutation {
        parse_cycles(s).unwrap()
    }

    #[test]
    fn rendering() {
        let t = presentation(&WeightedCurve::line([2, 3, 7]).unwrap());
        assert_eq!(t.to_string(), "<s1,s2,s3 | s1^2 = s2^3 = s3^7 = s1*s2*s3 = 1>");
        assert_eq!(t.generators().len(), 3);
        assert_eq!(t.relations().len(), 4);
        let torus = presentation(&WeightedCurve::new(1, []).unwrap());
        assert_eq!(torus.to_string(), "<a1,b1 | [a1,b1] = 1>");
        assert_eq!(presentation(&WeightedCurve::projective_line()).to_string(), "<>");
        let mixed = OrbifoldPresentation::new(2, vec![5]).unwrap();
        assert_eq!(
            mixed.to_string(),
            "<a1,a2,b1,b2,s1 | s1^5 = s1*[a1,b1]*[a2,b2] = 1>"
        );
        assert_eq!(mixed.generators().len(), 2 * 2 + 1);
        assert_eq!(mixed.relations().len(), 2);
    }

    #[test]
    fn triangle_homomorphism() {
        // Orders 2 and 7 with a product of order 3: weights taken in that order.
        let pres = OrbifoldPresentation::triangle(2, 7, 3).unwrap();
        let c1 = p("(1,2)(3,6)");
        let c2 = p("(1,2,3,4,5,6,7)");
        let c3 = p("(1,3,7)(4,5,6)").inverse();
        let imgs = GeneratorImages::sigma_only(vec![c1.clone(), c2.clone(), c3.clone()]);
        assert!(check_homomorphism(&pres, &imgs).unwrap());
        assert_eq!(pres.curve(), WeightedCurve::line([2, 3, 7]).unwrap());

        let broken = GeneratorImages::sigma_only(vec![c1, Permutation::identity(), c3]);
        assert!(!check_homomorphism(&pres, &broken).unwrap());
        assert_eq!(first_failing_relation(&pres, &broken).unwrap(), Some(3));
    }

    #[test]
    fn commuting_torus_images() {
        let pres = presentation(&WeightedCurve::new(1, []).unwrap());
        let imgs = GeneratorImages {
            alpha: vec![p("(1,2,3)")],
            beta: vec![p("(1,2,3)")],
            sigma: vec![],
        };
        assert!(check_homomorphism(&pres, &imgs).unwrap());
        let noncommuting = GeneratorImages {
            alpha: vec![p("(1,2)")],
            beta: vec![p("(2,3)")],
            sigma: vec![],
        };
        assert_eq!(first_failing_relation(&pres, &noncommuting).unwrap(), Some(0));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let pres = OrbifoldPresentation::triangle(2, 3, 7).unwrap();
        let imgs = GeneratorImages::sigma_only(vec![p("(1,2)")]);
        assert!(matches!(check_homomorphism(&pres, &imgs), Err(Error::Domain(_))));
        assert!(OrbifoldPresentation::new(0, vec![0, 3]).is_err());
    }
}

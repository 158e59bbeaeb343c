use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use super::permutation::{raw, Permutation};
use super::schreier::StabilizerChain;
use crate::error::{Error, Result};
use crate::parallel::with_workers;

/// Default bound on the number of group elements materialized by one call.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// How a group order is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrderBackend {
    /// Schreier-Sims; stores only transversals, so it scales to large groups.
    #[default]
    StabilizerChain,
    /// Breadth-first closure over all elements.
    Closure,
}

/// A finitely generated permutation group with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabilizerChain,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        Self::with_cap(generators, DEFAULT_CAP)
    }

    pub fn with_cap(generators: Vec<Permutation>, cap: u64) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::domain("a group needs at least one generator"));
        }
        let degree = common_degree(&generators);
        let padded: Vec<Vec<u32>> = generators.iter().map(|g| g.padded(degree)).collect();
        let chain = StabilizerChain::new(degree, &padded, cap)?;
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.largest_moved_point() <= self.degree && self.chain.contains(&p.padded(self.degree))
    }

    /// Every element, in breadth-first order from the identity.
    pub fn elements(&self, cap: u64, workers: usize) -> Result<Vec<Permutation>> {
        if self.order() > BigUint::from(cap) {
            return Err(Error::cap(cap, 0u32));
        }
        let padded: Vec<Vec<u32>> = self.generators.iter().map(|g| g.padded(self.degree)).collect();
        Ok(closure(self.degree, &padded, cap, workers)?
            .into_iter()
            .map(Permutation::from_images_unchecked)
            .collect())
    }

    /// Conjugacy classes, each listed from its first-discovered element.
    pub fn conjugacy_classes(&self, cap: u64, workers: usize) -> Result<Vec<Vec<Permutation>>> {
        let n = self.degree;
        let elements = self.elements(cap, workers)?;
        let gens: Vec<(Vec<u32>, Vec<u32>)> = self
            .generators
            .iter()
            .map(|g| {
                let p = g.padded(n);
                (raw::inverse(&p), p)
            })
            .collect();
        let mut classified: HashSet<Vec<u32>> = HashSet::with_capacity(elements.len());
        let mut classes = Vec::new();
        for e in &elements {
            let e = e.padded(n);
            if classified.contains(&e) {
                continue;
            }
            classified.insert(e.clone());
            let mut class = vec![e];
            let mut head = 0;
            while head < class.len() {
                let x = class[head].clone();
                head += 1;
                for (ginv, g) in &gens {
                    let y = raw::compose(&raw::compose(ginv, &x), g);
                    if classified.insert(y.clone()) {
                        class.push(y);
                    }
                }
            }
            classes.push(class.into_iter().map(Permutation::from_images_unchecked).collect());
        }
        Ok(classes)
    }

    /// The subgroup generated by all conjugates of `x`.
    pub fn normal_closure_order(&self, class: &[Permutation]) -> Result<BigUint> {
        let n = self.degree;
        let mut gens: Vec<Vec<u32>> = Vec::new();
        let mut chain = StabilizerChain::new(n, &gens, u64::MAX)?;
        for c in class {
            let c = c.padded(n);
            if !chain.contains(&c) {
                gens.push(c);
                chain = StabilizerChain::new(n, &gens, u64::MAX)?;
            }
        }
        Ok(chain.order())
    }

    /// True iff every non-trivial normal closure is the whole group. Needs the
    /// full element set, so the order must not exceed `cap`.
    pub fn is_simple(&self, cap: u64, workers: usize) -> Result<bool> {
        let order = self.order();
        if order.is_one() {
            return Err(Error::domain("the trivial group is not considered simple"));
        }
        for class in self.conjugacy_classes(cap, workers)? {
            if class[0].is_identity() {
                continue;
            }
            if self.normal_closure_order(&class)? != order {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Exact order of `⟨gens⟩` via the stabilizer chain. `cap` bounds the number
/// of elements stored while building it.
pub fn group_order(gens: &[Permutation], cap: u64) -> Result<BigUint> {
    group_order_with(gens, cap, OrderBackend::StabilizerChain, 0)
}

pub fn group_order_with(
    gens: &[Permutation],
    cap: u64,
    backend: OrderBackend,
    workers: usize,
) -> Result<BigUint> {
    if gens.is_empty() {
        return Ok(BigUint::one());
    }
    let n = common_degree(gens);
    let padded: Vec<Vec<u32>> = gens.iter().map(|g| g.padded(n)).collect();
    match backend {
        OrderBackend::StabilizerChain => Ok(StabilizerChain::new(n, &padded, cap)?.order()),
        OrderBackend::Closure => Ok(BigUint::from(closure(n, &padded, cap, workers)?.len())),
    }
}

pub(crate) fn common_degree(gens: &[Permutation]) -> usize {
    gens.iter().map(Permutation::degree).max().unwrap_or(1)
}

/// Breadth-first closure of the identity under right multiplication by the
/// generators. Each frontier is expanded in parallel; deduplication runs in
/// frontier order, so the output is the same for every worker count.
pub(crate) fn closure(n: usize, gens: &[Vec<u32>], cap: u64, workers: usize) -> Result<Vec<Vec<u32>>> {
    with_workers(workers, || {
        let id: Vec<u32> = (0..n as u32).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(id.clone());
        let mut elements = vec![id.clone()];
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let candidates: Vec<Vec<u32>> = frontier
                .par_iter()
                .flat_map_iter(|x| gens.iter().map(move |s| raw::compose(x, s)))
                .collect();
            let mut next = Vec::new();
            for c in candidates {
                if !seen.contains(&c) {
                    if seen.len() as u64 >= cap {
                        return Err(Error::cap(cap, seen.len() as u64));
                    }
                    seen.insert(c.clone());
                    elements.push(c.clone());
                    next.push(c);
                }
            }
            frontier = next;
        }
        Ok(elements)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn gens(ss: &[&str]) -> Vec<Permutation> {
        ss.iter().map(|s| parse_cycles(s).unwrap()).collect()
    }

    #[test]
    fn orders_of_the_triangle_examples() {
        let g168 = gens(&["(1,2)(3,6)", "(1,2,3,4,5,6,7)"]);
        assert_eq!(group_order(&g168, DEFAULT_CAP).unwrap(), BigUint::from(168u32));
        assert_eq!(group_order(&gens(&["(1,2)"]), DEFAULT_CAP).unwrap(), BigUint::from(2u32));
        let g504 = gens(&["(1,4)(2,6)(3,7)(5,8)", "(1,2,3,4,5,6,7,8,9)"]);
        assert_eq!(group_order(&g504, DEFAULT_CAP).unwrap(), BigUint::from(504u32));
        let g168b = gens(&["(3,4)(5,7)", "(1,2,3,4,5,6,7)"]);
        assert_eq!(group_order(&g168b, DEFAULT_CAP).unwrap(), BigUint::from(168u32));
        for (g, n) in [(&g168, 168u32), (&g504, 504), (&g168b, 168)] {
            assert_eq!(
                group_order_with(g, DEFAULT_CAP, OrderBackend::Closure, 2).unwrap(),
                BigUint::from(n)
            );
        }
    }

    #[test]
    fn closure_cap_reports_progress() {
        let s7 = gens(&["(1,2)", "(1,2,3,4,5,6,7)"]);
        match group_order_with(&s7, 100, OrderBackend::Closure, 1) {
            Err(Error::CapExceeded { cap, found }) => {
                assert_eq!(cap, 100);
                assert_eq!(found, 100);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn simplicity() {
        let g = PermGroup::new(gens(&["(1,2)(3,6)", "(1,2,3,4,5,6,7)"])).unwrap();
        assert!(g.is_simple(DEFAULT_CAP, 1).unwrap());
        let c6 = PermGroup::new(gens(&["(1,2,3,4,5,6)"])).unwrap();
        assert!(!c6.is_simple(DEFAULT_CAP, 1).unwrap());
        let c5 = PermGroup::new(gens(&["(1,2,3,4,5)"])).unwrap();
        assert!(c5.is_simple(DEFAULT_CAP, 1).unwrap());
        let s5 = PermGroup::new(gens(&["(1,2)", "(1,2,3,4,5)"])).unwrap();
        assert!(!s5.is_simple(DEFAULT_CAP, 1).unwrap());
        let trivial = PermGroup::new(gens(&["()"])).unwrap();
        assert!(matches!(trivial.is_simple(DEFAULT_CAP, 1), Err(Error::Domain(_))));
        assert!(s5.is_simple(50, 1).unwrap_err().is_resource());
    }

    #[test]
    fn class_sizes_of_psl27() {
        let g = PermGroup::new(gens(&["(1,2)(3,6)", "(1,2,3,4,5,6,7)"])).unwrap();
        let mut sizes: Vec<usize> = g.conjugacy_classes(DEFAULT_CAP, 1).unwrap().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 21, 24, 24, 42, 56]);
    }

    #[test]
    fn membership_and_elements() {
        let g = PermGroup::new(gens(&["(1,2,3)", "(1,2,3,4,5)"])).unwrap();
        assert!(g.contains(&parse_cycles("(1,3,5)").unwrap()));
        assert!(!g.contains(&parse_cycles("(1,2)").unwrap()));
        assert!(!g.contains(&parse_cycles("(1,6)").unwrap()));
        let els = g.elements(DEFAULT_CAP, 3).unwrap();
        assert_eq!(els.len(), 60);
        assert!(els.iter().all(|e| e.is_even()));
        assert!(PermGroup::new(vec![]).is_err());
    }
}

//! Deterministic Schreier-Sims: a base and strong generating set for a
//! permutation group, giving its order and a membership test by sifting.
//!
//! Level `l` stores the generators first discovered at that level; the group
//! at level `l` is generated by the generators of all levels `>= l` and
//! fixes the base points of the levels above it.

use num_bigint::BigUint;
use num_traits::One;

use super::permutation::raw;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Vec<u32>>,
    orbit: Vec<u32>,
    // transversal[p] maps the base point to p; inverse_transversal[p] undoes it.
    transversal: Vec<Option<Vec<u32>>>,
    inverse_transversal: Vec<Option<Vec<u32>>>,
}

#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// `generators` are image tables of length `degree`. `cap` bounds the number of
    /// transversal elements stored.
    pub fn new(degree: usize, generators: &[Vec<u32>], cap: u64) -> Result<Self> {
        let gens: Vec<Vec<u32>> = generators
            .iter()
            .filter(|g| !raw::is_identity(g))
            .cloned()
            .collect();
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        let Some(base) = gens.iter().filter_map(|g| first_moved(g)).min() else {
            return Ok(chain);
        };
        chain.levels.push(Level::new(base, degree));
        chain.levels[0].gens = gens;
        chain.rebuild_orbit(0);
        chain.check_cap(cap)?;

        let mut i = 0usize;
        loop {
            match chain.find_residue(i) {
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let b = first_moved(&h).expect("residue is not the identity");
                        chain.levels.push(Level::new(b, degree));
                    }
                    chain.levels[j].gens.push(h);
                    for l in i + 1..=j {
                        chain.rebuild_orbit(l);
                    }
                    chain.check_cap(cap)?;
                    i = j;
                }
                None if i == 0 => break,
                None => i -= 1,
            }
        }
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * l.orbit.len())
    }

    /// Base points, 0-based.
    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        g.len() == self.degree && raw::is_identity(&self.sift(g, 0).0)
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        let stored: u64 = self.levels.iter().map(|l| l.orbit.len() as u64).sum();
        if stored > cap {
            return Err(Error::cap(cap, stored));
        }
        Ok(())
    }

    fn gens_from(&self, level: usize) -> impl Iterator<Item = &Vec<u32>> {
        self.levels[level..].iter().flat_map(|l| l.gens.iter())
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let gens: Vec<Vec<u32>> = self.gens_from(level).cloned().collect();
        let n = self.degree;
        let lvl = &mut self.levels[level];
        let b = lvl.base as usize;
        lvl.orbit.clear();
        lvl.transversal = vec![None; n];
        lvl.inverse_transversal = vec![None; n];
        let id: Vec<u32> = (0..n as u32).collect();
        lvl.transversal[b] = Some(id.clone());
        lvl.inverse_transversal[b] = Some(id);
        lvl.orbit.push(b as u32);
        let mut head = 0;
        while head < lvl.orbit.len() {
            let p = lvl.orbit[head] as usize;
            head += 1;
            for s in &gens {
                let q = s[p] as usize;
                if lvl.transversal[q].is_none() {
                    let u = raw::compose(lvl.transversal[p].as_ref().unwrap(), s);
                    lvl.inverse_transversal[q] = Some(raw::inverse(&u));
                    lvl.transversal[q] = Some(u);
                    lvl.orbit.push(q as u32);
                }
            }
        }
    }

    /// Sifts `g` through levels `start..`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it went all the way through).
    fn sift(&self, g: &[u32], start: usize) -> (Vec<u32>, usize) {
        let mut g = g.to_vec();
        let mut tmp = vec![0u32; self.degree];
        for (l, lvl) in self.levels.iter().enumerate().skip(start) {
            let x = g[lvl.base as usize] as usize;
            match &lvl.inverse_transversal[x] {
                None => return (g, l),
                Some(uinv) => {
                    raw::compose_into(&g, uinv, &mut tmp);
                    std::mem::swap(&mut g, &mut tmp);
                }
            }
        }
        (g, self.levels.len())
    }

    /// First Schreier generator of level `i` that does not sift through the
    /// levels below it.
    fn find_residue(&self, i: usize) -> Option<(Vec<u32>, usize)> {
        let lvl = &self.levels[i];
        let mut t = vec![0u32; self.degree];
        let mut sg = vec![0u32; self.degree];
        for &p in &lvl.orbit {
            let up = lvl.transversal[p as usize].as_ref().unwrap();
            for s in self.gens_from(i) {
                let q = s[p as usize] as usize;
                raw::compose_into(up, s, &mut t);
                raw::compose_into(&t, lvl.inverse_transversal[q].as_ref().unwrap(), &mut sg);
                if raw::is_identity(&sg) {
                    continue;
                }
                let (h, j) = self.sift(&sg, i + 1);
                if !raw::is_identity(&h) {
                    return Some((h, j));
                }
            }
        }
        None
    }
}

impl Level {
    fn new(base: u32, n: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; n],
            inverse_transversal: vec![None; n],
        }
    }
}

fn first_moved(g: &[u32]) -> Option<u32> {
    g.iter()
        .enumerate()
        .find(|&(i, &x)| i as u32 != x)
        .map(|(i, _)| i as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn chain(n: usize, gens: &[&str]) -> StabilizerChain {
        let g: Vec<Vec<u32>> = gens.iter().map(|s| parse_cycles(s).unwrap().padded(n)).collect();
        StabilizerChain::new(n, &g, u64::MAX).unwrap()
    }

    #[test]
    fn symmetric_and_alternating() {
        assert_eq!(chain(5, &["(1,2)", "(1,2,3,4,5)"]).order(), BigUint::from(120u32));
        assert_eq!(chain(5, &["(1,2,3)", "(1,2,3,4,5)"]).order(), BigUint::from(60u32));
        let s16 = chain(16, &["(1,2)", "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16)"]);
        let fact: BigUint = (1..=16u32).map(BigUint::from).product();
        assert_eq!(s16.order(), fact);
    }

    #[test]
    fn trivial_and_cyclic() {
        assert_eq!(chain(4, &["()"]).order(), BigUint::from(1u32));
        assert_eq!(chain(6, &["(1,2,3,4,5,6)"]).order(), BigUint::from(6u32));
    }

    #[test]
    fn membership() {
        let a5 = chain(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        assert!(a5.contains(&parse_cycles("(1,2)(3,4)").unwrap().padded(5)));
        assert!(!a5.contains(&parse_cycles("(1,2)").unwrap().padded(5)));
    }

    #[test]
    fn cap_bounds_stored_transversals() {
        let g: Vec<Vec<u32>> = vec![parse_cycles("(1,2)").unwrap().padded(8), parse_cycles("(1,2,3,4,5,6,7,8)").unwrap().padded(8)];
        assert!(StabilizerChain::new(8, &g, 10).unwrap_err().is_resource());
    }
}

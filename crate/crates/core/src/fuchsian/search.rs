//! Deterministic search for permutation triples `c1·c2·c3 = 1` of prescribed orders.
//!
//! Enumeration order, which fixes the witness returned:
//!
//! 1. degrees `d` ascending, starting from the least degree admitting elements
//!    of all three orders;
//! 2. `c1` over one representative per cycle type of order `a` (cycles on
//!    consecutive points, shortest first), sorted by image table;
//! 3. `c2` over all permutations of order `b` in lexicographic order of their
//!    image tables.
//!
//! Conjugating a witness gives a witness, so fixing `c1` to a class
//! representative loses nothing. The first `(c1, c2)` whose product has order
//! `c` is returned; that degree is minimal for this enumeration.

use std::ops::ControlFlow;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::with_workers;
use crate::perm::{raw, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleWitness {
    pub orders: [u64; 3],
    pub degree: usize,
    pub c1: Permutation,
    pub c2: Permutation,
    pub c3: Permutation,
}

impl TriangleWitness {
    /// Completes `c1, c2` with `c3 = (c1·c2)⁻¹` and checks the orders.
    pub fn new(orders: [u64; 3], c1: Permutation, c2: Permutation) -> Result<Self> {
        let c3 = c1.compose(&c2).inverse();
        let w = TriangleWitness {
            orders,
            degree: c1.degree().max(c2.degree()),
            c1,
            c2,
            c3,
        };
        for (k, c) in [&w.c1, &w.c2, &w.c3].into_iter().enumerate() {
            if c.order() != orders[k].into() {
                return Err(Error::domain(format!(
                    "c{} = {c} has order {}, expected {}",
                    k + 1,
                    c.order(),
                    orders[k]
                )));
            }
        }
        Ok(w)
    }
}

pub fn fox_witness_search(a: u64, b: u64, c: u64, max_degree: usize) -> Result<TriangleWitness> {
    fox_witness_search_with(a, b, c, max_degree, 0)
}

/// As [`fox_witness_search`] on a pool of `workers` threads (0: global pool).
/// The result does not depend on `workers`.
pub fn fox_witness_search_with(
    a: u64,
    b: u64,
    c: u64,
    max_degree: usize,
    workers: usize,
) -> Result<TriangleWitness> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::domain("orders must be positive"));
    }
    let not_found = || Error::WitnessNotFound {
        a,
        b,
        c,
        max_degree,
    };
    if a == 1 || b == 1 || c == 1 {
        return degenerate_witness([a, b, c], max_degree).ok_or_else(not_found);
    }
    if max_degree > 64 {
        return Err(Error::domain("witness search supports degrees up to 64"));
    }
    let start = min_degree_for_order(a)
        .max(min_degree_for_order(b))
        .max(min_degree_for_order(c));
    for d in start..=max_degree {
        if let Some((c1, c2)) = with_workers(workers, || search_degree(d, a, b, c)) {
            let c1 = Permutation::from_images_unchecked(c1);
            let c2 = Permutation::from_images_unchecked(c2);
            let mut w = TriangleWitness::new([a, b, c], c1, c2)?;
            w.degree = d;
            return Ok(w);
        }
    }
    Err(not_found())
}

/// With an order equal to 1 the other two must agree, and an `n`-cycle with its
/// inverse is forced.
fn degenerate_witness(orders: [u64; 3], max_degree: usize) -> Option<TriangleWitness> {
    let [a, b, c] = orders;
    let n = *orders.iter().max().unwrap();
    if n as usize > max_degree.max(1) {
        return None;
    }
    let cyc = Permutation::cycle(1, n as usize);
    let (c1, c2) = match (a, b, c) {
        (_, _, 1) if a == b => (cyc.clone(), cyc.inverse()),
        (1, _, _) if b == c => (Permutation::identity(), cyc),
        (_, 1, _) if a == c => (cyc, Permutation::identity()),
        _ => return None,
    };
    let mut w = TriangleWitness::new(orders, c1, c2).ok()?;
    w.degree = (n as usize).max(1);
    Some(w)
}

/// Smallest degree of a permutation of order `k`: the sum of its prime-power factors.
pub fn min_degree_for_order(k: u64) -> usize {
    let mut k = k;
    let mut total = 0u64;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut q = 1;
            while k.is_multiple_of(p) {
                k /= p;
                q *= p;
            }
            total += q;
        }
        p += 1;
    }
    if k > 1 {
        total += k;
    }
    total as usize
}

fn search_degree(d: usize, a: u64, b: u64, c: u64) -> Option<(Vec<u32>, Vec<u32>)> {
    let reps = class_representatives(d, a);
    let tasks: Vec<(usize, u32)> = (0..reps.len())
        .flat_map(|r| (0..d as u32).map(move |v| (r, v)))
        .collect();
    tasks.par_iter().find_map_first(|&(r, first)| {
        let c1 = &reps[r];
        let mut product = vec![0u32; d];
        let mut found = None;
        let _ = for_each_of_order(d, b, Some(first), |c2| {
            raw::compose_into(c1, c2, &mut product);
            if raw::order(&product) == c {
                found = Some(c2.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        found.map(|c2| (c1.clone(), c2))
    })
}

/// One permutation of degree `d` per cycle type of order `k`, sorted by image table.
pub(crate) fn class_representatives(d: usize, k: u64) -> Vec<Vec<u32>> {
    let mut parts = Vec::new();
    let mut out = Vec::new();
    cycle_types(d, k, 2, 1, &mut parts, &mut out);
    let mut reps: Vec<Vec<u32>> = out
        .into_iter()
        .map(|lens| {
            let mut img: Vec<u32> = (0..d as u32).collect();
            let mut start = 0usize;
            for len in lens {
                for i in 0..len {
                    img[start + i] = (start + (i + 1) % len) as u32;
                }
                start += len;
            }
            img
        })
        .collect();
    reps.sort();
    reps
}

fn cycle_types(
    room: usize,
    k: u64,
    min_part: usize,
    lcm: u64,
    parts: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if lcm == k {
        out.push(parts.clone());
    }
    for len in min_part..=room {
        if !k.is_multiple_of(len as u64) {
            continue;
        }
        parts.push(len);
        cycle_types(room - len, k, len, lcm.lcm(&(len as u64)), parts, out);
        parts.pop();
    }
}

/// Visits every permutation of `0..d` whose order is exactly `k`, in
/// lexicographic order of image tables. `first` pins the image of point 0.
pub(crate) fn for_each_of_order<F>(d: usize, k: u64, first: Option<u32>, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    let max_len = (1..=d).filter(|&l| k.is_multiple_of(l as u64)).max().unwrap_or(1);
    let mut st = PathState {
        images: vec![u32::MAX; d],
        used: vec![false; d],
        start_of: (0..d as u32).collect(),
        end_of: (0..d as u32).collect(),
        len: vec![1; d],
        k,
        max_len,
    };
    st.extend(0, 1, first, &mut visit)
}

/// Partial permutation built point by point, kept as a set of disjoint paths.
/// `start_of[e]`/`end_of[s]` link the endpoints of each open path; `len` is
/// valid at path starts.
struct PathState {
    images: Vec<u32>,
    used: Vec<bool>,
    start_of: Vec<u32>,
    end_of: Vec<u32>,
    len: Vec<usize>,
    k: u64,
    max_len: usize,
}

impl PathState {
    fn extend<F>(&mut self, i: usize, lcm: u64, first: Option<u32>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let d = self.images.len();
        if i == d {
            return if lcm == self.k {
                visit(&self.images)
            } else {
                ControlFlow::Continue(())
            };
        }
        let candidates: Box<dyn Iterator<Item = u32>> = match (i, first) {
            (0, Some(v)) => Box::new(std::iter::once(v)),
            _ => Box::new(0..d as u32),
        };
        for v in candidates {
            let vu = v as usize;
            if self.used[vu] {
                continue;
            }
            // i is the end of its path, v the start of its path.
            let s1 = self.start_of[i] as usize;
            if vu == s1 {
                let cyc = self.len[s1];
                if !self.k.is_multiple_of(cyc as u64) {
                    continue;
                }
                self.images[i] = v;
                self.used[vu] = true;
                self.extend(i + 1, lcm.lcm(&(cyc as u64)), first, visit)?;
                self.used[vu] = false;
            } else {
                let e2 = self.end_of[vu] as usize;
                let merged = self.len[s1] + self.len[vu];
                if merged > self.max_len {
                    continue;
                }
                let saved = (self.end_of[s1], self.start_of[e2], self.len[s1]);
                self.images[i] = v;
                self.used[vu] = true;
                self.end_of[s1] = e2 as u32;
                self.start_of[e2] = s1 as u32;
                self.len[s1] = merged;
                self.extend(i + 1, lcm, first, visit)?;
                self.end_of[s1] = saved.0;
                self.start_of[e2] = saved.1;
                self.len[s1] = saved.2;
                self.used[vu] = false;
            }
            self.images[i] = u32::MAX;
        }
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn brute_force_of_order(d: usize, k: u64) -> Vec<Vec<u32>> {
        // All permutations of 0..d in lexicographic order, filtered by order.
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (0..d as u32).collect();
        loop {
            if raw::order(&cur) == k {
                out.push(cur.clone());
            }
            // next lexicographic permutation
            let Some(i) = (1..d).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..d).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    #[test]
    fn order_enumeration_matches_brute_force() {
        for d in 1..=7 {
            for k in 1..=12 {
                let mut got = Vec::new();
                let _ = for_each_of_order(d, k, None, |p| {
                    got.push(p.to_vec());
                    ControlFlow::Continue(())
                });
                assert_eq!(got, brute_force_of_order(d, k), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn min_degrees() {
        assert_eq!(min_degree_for_order(1), 0);
        assert_eq!(min_degree_for_order(6), 5);
        assert_eq!(min_degree_for_order(8), 8);
        assert_eq!(min_degree_for_order(12), 7);
        assert_eq!(min_degree_for_order(7), 7);
    }

    #[test]
    fn representatives() {
        let reps = class_representatives(4, 2);
        assert_eq!(reps, vec![vec![1, 0, 2, 3], vec![1, 0, 3, 2]]);
        assert_eq!(class_representatives(5, 6), vec![vec![1, 0, 3, 4, 2]]);
        assert!(class_representatives(4, 5).is_empty());
    }

    #[test]
    fn two_two_two_at_degree_four() {
        let w = fox_witness_search(2, 2, 2, 10).unwrap();
        assert_eq!(w.degree, 4);
        assert_eq!(w.c1, parse_cycles("(1,2)").unwrap());
        assert_eq!(w.c2, parse_cycles("(3,4)").unwrap());
        assert_eq!(w.c3, parse_cycles("(1,2)(3,4)").unwrap());
    }

    #[test]
    fn degenerate_orders() {
        let w = fox_witness_search(5, 5, 1, 10).unwrap();
        assert_eq!(w.c1, Permutation::cycle(1, 5));
        assert_eq!(w.c2, Permutation::cycle(1, 5).inverse());
        assert!(w.c3.is_identity());
        assert_eq!(w.degree, 5);
        let w = fox_witness_search(6, 6, 1, 10).unwrap();
        assert_eq!(w.c1, Permutation::cycle(1, 6));
        assert!(fox_witness_search(1, 3, 3, 10).is_ok());
        assert!(fox_witness_search(4, 1, 4, 10).is_ok());
        assert!(matches!(fox_witness_search(2, 3, 1, 10), Err(Error::WitnessNotFound { .. })));
        assert!(fox_witness_search(1, 1, 1, 1).unwrap().c1.is_identity());
        assert!(fox_witness_search(7, 7, 1, 5).is_err());
    }

    #[test]
    fn not_found_below_degree_bound() {
        match fox_witness_search(2, 3, 7, 6) {
            Err(Error::WitnessNotFound { max_degree, .. }) => assert_eq!(max_degree, 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn two_three_seven() {
        let w = fox_witness_search(2, 3, 7, 16).unwrap();
        assert_eq!(w.degree, 7);
        assert_eq!(w.c1.order(), 2u32.into());
        assert_eq!(w.c2.order(), 3u32.into());
        assert_eq!(w.c3.order(), 7u32.into());
        assert!(w.c1.compose(&w.c2).compose(&w.c3).is_identity());
    }
}

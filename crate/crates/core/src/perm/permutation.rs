use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{1, …, n}`.
///
/// Stored as its image table with trailing fixed points trimmed, so two
/// permutations that differ only in how many fixed points were written down
/// compare equal. Products compose left to right: `(p * q)(x) = q(p(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    // 0-based images; images[i] is the image of point i + 1, minus one.
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { images: Vec::new() }
    }

    /// Builds from a 0-based image table; fails unless it is a bijection of `0..len`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::domain(format!(
                    "image table is not a bijection (entry {i} -> {x})"
                )));
            }
            seen[x] = true;
        }
        Ok(Self::from_images_unchecked(images))
    }

    pub(crate) fn from_images_unchecked(mut images: Vec<u32>) -> Self {
        while let Some(&last) = images.last() {
            if last as usize == images.len() - 1 {
                images.pop();
            } else {
                break;
            }
        }
        Permutation { images }
    }

    /// Builds from disjoint cycles written with 1-based points.
    pub fn from_cycles<C: AsRef<[usize]>>(cycles: &[C]) -> Result<Self> {
        let n = cycles
            .iter()
            .flat_map(|c| c.as_ref().iter().copied())
            .max()
            .unwrap_or(0);
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n + 1];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 {
                    return Err(Error::domain("points are numbered from 1"));
                }
                if seen[p] {
                    return Err(Error::domain(format!("point {p} appears twice")));
                }
                seen[p] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u32;
            }
        }
        Ok(Self::from_images_unchecked(images))
    }

    /// A single cycle `(start, start+1, …, start+len−1)`.
    pub fn cycle(start: usize, len: usize) -> Self {
        let pts: Vec<usize> = (start..start + len).collect();
        Self::from_cycles(&[pts]).expect("consecutive cycle is valid")
    }

    /// Smallest `n` such that every moved point lies in `1..=n` (1 for the identity).
    pub fn degree(&self) -> usize {
        self.images.len().max(1)
    }

    /// Largest moved point, 0 for the identity.
    pub fn largest_moved_point(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        assert!(point >= 1, "points are numbered from 1");
        match self.images.get(point - 1) {
            Some(&x) => x as usize + 1,
            None => point,
        }
    }

    /// Image table of length exactly `n` (0-based), padding with fixed points.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        assert!(n >= self.images.len(), "degree {n} too small for {self}");
        let mut v = self.images.clone();
        v.extend(self.images.len() as u32..n as u32);
        v
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        let n = self.images.len().max(other.images.len());
        let out = (0..n)
            .map(|i| {
                let x = self.images.get(i).map_or(i as u32, |&x| x);
                other.images.get(x as usize).map_or(x, |&y| y)
            })
            .collect();
        Self::from_images_unchecked(out)
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Permutation { images: out }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Conjugate `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(self).compose(g)
    }

    /// Non-trivial cycles with 1-based points, each starting at its smallest
    /// point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Sorted lengths of the non-trivial cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    /// lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

/// Left-to-right product: `compose(p, q)(x) = q(p(x))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Permutation {
    p.compose(q)
}

pub fn element_order(p: &Permutation) -> BigUint {
    p.order()
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl Mul for Permutation {
    type Output = Permutation;
    fn mul(self, rhs: Permutation) -> Permutation {
        self.compose(&rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_cycles(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_cycles(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses disjoint-cycle notation such as `"(1,2)(3, 6)"`; `"()"` is the identity.
///
/// Points inside a cycle are separated by commas and/or whitespace. Error
/// positions are byte offsets into `text`.
pub fn parse_cycles(text: &str) -> Result<Permutation> {
    let bytes = text.as_bytes();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut first_seen: Vec<Option<usize>> = Vec::new();

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(err(pos, "expected '('"));
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(err(pos, "expected '('"));
        }
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut pos);
            match bytes.get(pos) {
                None => return Err(err(pos, "unclosed '('")),
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(b',') if !cycle.is_empty() => {
                    pos += 1;
                    skip_ws(&mut pos);
                    if !bytes.get(pos).is_some_and(u8::is_ascii_digit) {
                        return Err(err(pos, "expected a point after ','"));
                    }
                }
                Some(b'-') => return Err(err(pos, "points must be positive")),
                Some(c) if c.is_ascii_digit() => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let p: usize = text[start..pos]
                        .parse()
                        .map_err(|_| err(start, "point out of range"))?;
                    if p == 0 {
                        return Err(err(start, "points must be positive"));
                    }
                    if p > u32::MAX as usize {
                        return Err(err(start, "point out of range"));
                    }
                    if first_seen.len() <= p {
                        first_seen.resize(p + 1, None);
                    }
                    if first_seen[p].is_some() {
                        return Err(err(start, &format!("point {p} repeated")));
                    }
                    first_seen[p] = Some(start);
                    cycle.push(p);
                    if let Some(&c) = bytes.get(pos) {
                        if !(c == b',' || c == b')' || c.is_ascii_whitespace()) {
                            return Err(err(pos, "unexpected character"));
                        }
                    }
                }
                Some(_) => return Err(err(pos, "unexpected character")),
            }
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        skip_ws(&mut pos);
    }
    Permutation::from_cycles(&cycles)
}

/// Operations on fixed-length 0-based image tables, used by the hot loops.
pub(crate) mod raw {
    /// `out[i] = q[p[i]]`.
    #[inline]
    pub fn compose_into(p: &[u32], q: &[u32], out: &mut [u32]) {
        for (o, &x) in out.iter_mut().zip(p) {
            *o = q[x as usize];
        }
    }

    pub fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
        p.iter().map(|&x| q[x as usize]).collect()
    }

    pub fn inverse(p: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; p.len()];
        for (i, &x) in p.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        out
    }

    pub fn is_identity(p: &[u32]) -> bool {
        p.iter().enumerate().all(|(i, &x)| x as usize == i)
    }

    /// lcm of cycle lengths, saturating at `u64::MAX`. Degree at most 64.
    pub fn order(p: &[u32]) -> u64 {
        debug_assert!(p.len() <= 64);
        let mut seen: u64 = 0;
        let mut acc: u64 = 1;
        for start in 0..p.len() {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while seen >> x & 1 == 0 {
                seen |= 1 << x;
                len += 1;
                x = p[x] as usize;
            }
            acc = num_integer::lcm(acc, len);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        parse_cycles(s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let t = p("(1,2)(3,6)");
        assert_eq!(t.degree(), 6);
        assert_eq!(t.to_string(), "(1,2)(3,6)");
        assert_eq!(p("()"), Permutation::identity());
        assert_eq!(p(" ( ) ").to_string(), "()");
        let c7 = p("(1, 2, 3, 4, 5, 6, 7)");
        assert_eq!(c7.degree(), 7);
        assert_eq!(c7.to_string(), "(1,2,3,4,5,6,7)");
        assert_eq!(p("(3 1 2)(5)").to_string(), "(1,2,3)");
        assert_eq!(p("(2,7,4)(1,5,9)").to_string(), "(1,5,9)(2,7,4)");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let pos = |s: &str| match parse_cycles(s) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos("(1,2)(2,3)"), 6);
        assert_eq!(pos("(0,1)"), 1);
        assert_eq!(pos("(1,-2)"), 3);
        assert_eq!(pos("(1,2"), 4);
        assert_eq!(pos("1,2)"), 0);
        assert_eq!(pos(""), 0);
        assert_eq!(pos("(1,,2)"), 3);
        assert_eq!(pos("(1,2a)"), 4);
    }

    #[test]
    fn products_from_the_triangle_examples() {
        let c7 = p("(1,2,3,4,5,6,7)");
        assert_eq!(compose(&p("(1,2)(3,6)"), &c7).to_string(), "(1,3,7)(4,5,6)");
        assert_eq!(compose(&p("(3,4)(5,7)"), &c7).to_string(), "(1,2,3,5)(6,7)");
        assert_eq!(
            compose(&p("(1,4)(2,6)(3,7)(5,8)"), &p("(1,2,3,4,5,6,7,8,9)")).to_string(),
            "(1,5,9)(2,7,4)(3,8,6)"
        );
        assert_eq!(compose(&c7, &Permutation::identity()), c7);
    }

    #[test]
    fn orders() {
        assert_eq!(p("(1,3,7)(4,5,6)").order(), BigUint::from(3u32));
        assert_eq!(Permutation::identity().order(), BigUint::from(1u32));
        assert_eq!(p("(1,2,3,5)(6,7)").order(), BigUint::from(4u32));
        assert_eq!(raw::order(&p("(1,2)(3,4,5)").padded(8)), 6);
    }

    #[test]
    fn inverse_pow_and_parity() {
        let x = p("(1,2,3,4,5,6,7)");
        assert_eq!(x.pow(7), Permutation::identity());
        assert_eq!(x.pow(-1), x.inverse());
        assert_eq!(x.pow(3), x.compose(&x).compose(&x));
        assert!(x.is_even());
        assert!(!p("(1,2)").is_even());
        assert_eq!(p("(1,2)(3,4,5)").cycle_type(), vec![2, 3]);
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(vec![1, 0, 2]).is_ok());
        assert!(Permutation::from_images(vec![1, 1, 2]).is_err());
        assert!(Permutation::from_images(vec![3, 0, 1]).is_err());
        assert_eq!(Permutation::from_images(vec![0, 1, 2]).unwrap(), Permutation::identity());
    }

    fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n)
            .prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(x in perm(12)) {
            prop_assert_eq!(parse_cycles(&x.to_string()).unwrap(), x);
        }

        #[test]
        fn monoid_laws(x in perm(12), y in perm(12), z in perm(12)) {
            prop_assert_eq!((&x * &y).compose(&z), x.compose(&(&y * &z)));
            prop_assert_eq!(&x * &Permutation::identity(), x.clone());
            prop_assert_eq!(&Permutation::identity() * &x, x.clone());
            prop_assert!((&x * &x.inverse()).is_identity());
        }

        #[test]
        fn composition_is_left_to_right(x in perm(9), y in perm(9), pt in 1usize..10) {
            prop_assert_eq!((&x * &y).apply(pt), y.apply(x.apply(pt)));
        }

        #[test]
        fn order_is_least_period(x in perm(9)) {
            let ord: usize = x.order().try_into().unwrap();
            let mut acc = x.clone();
            for _ in 1..ord {
                prop_assert!(!acc.is_identity());
                acc = acc.compose(&x);
            }
            prop_assert!(acc.is_identity());
        }
    }
}

//! Permutations of `{1..k}` and their cycle structure.
//!
//! Composition follows `(u·v)(i) = u(v(i))`. Internally images are 0-based;
//! one-line notation and cycle notation at the API boundary are 1-based.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Default upper bound on `k` for exhaustive enumeration of `S_k`.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation { images: (0..k).collect() }
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let zero_based: Vec<usize> = images
            .iter()
            .map(|&x| x.checked_sub(1).ok_or_else(|| Error::InvalidPermutation("image 0".into())))
            .collect::<Result<_>>()?;
        Self::from_zero_based(zero_based)
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x >= k || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    /// From 1-based disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(k: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..k).collect();
        let mut touched = vec![false; k];
        for cycle in cycles {
            for (idx, &a) in cycle.iter().enumerate() {
                let b = cycle[(idx + 1) % cycle.len()];
                if a == 0 || a > k || b == 0 || b > k || std::mem::replace(&mut touched[a - 1], true) {
                    return Err(Error::InvalidPermutation(format!("bad cycle list {cycles:?} for k={k}")));
                }
                images[a - 1] = b - 1;
            }
        }
        Self::from_zero_based(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `(self·other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::SizeMismatch(format!(
                "cannot compose permutations of degree {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `κ(w)`, the number of cycles including fixed points.
    pub fn cycle_count(&self) -> usize {
        cycle_count_of(&self.images)
    }

    /// `ρ(w)`, the cycle type as a partition of the degree.
    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    /// Disjoint cycles, 1-based, each starting from its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// `w_μ`: consecutive blocks `(1..μ_1)(μ_1+1..μ_1+μ_2)...`.
    pub fn canonical(mu: &Partition) -> Permutation {
        let mut images = Vec::with_capacity(mu.size());
        let mut start = 0;
        for &len in mu.parts() {
            images.extend((start + 1..start + len).chain(std::iter::once(start)));
            start += len;
        }
        Permutation { images }
    }

    /// The long cycle `(1 2 ... k)`.
    pub fn long_cycle(k: usize) -> Permutation {
        Self::canonical(&Partition::new(vec![k]).expect("single part"))
    }
}

/// Cycle count of a 0-based image slice.
pub(crate) fn cycle_count_of(images: &[usize]) -> usize {
    if images.len() > 64 {
        let mut seen = vec![false; images.len()];
        let mut count = 0;
        for start in 0..images.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = images[i];
            }
        }
        return count;
    }
    let mut seen = 0u64;
    let mut count = 0;
    for start in 0..images.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        count += 1;
        let mut i = start;
        while seen & (1 << i) == 0 {
            seen |= 1 << i;
            i = images[i];
        }
    }
    count
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            let items: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_line(&images).map_err(serde::de::Error::custom)
    }
}

/// Rearranges `a` into the next permutation in lexicographic order; returns
/// false (leaving `a` sorted ascending) after the last one.
pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All `k!` permutations of `S_k` in lexicographic order of one-line notation.
pub fn enumerate_sym(k: usize, cap: usize) -> Result<SymIter> {
    if k > cap {
        return Err(Error::CapExceeded { k, cap });
    }
    Ok(SymIter { current: Some((0..k).collect()) })
}

pub struct SymIter {
    current: Option<Vec<usize>>,
}

impl Iterator for SymIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(Permutation { images: cur })
    }
}

/// Visits every permutation of `S_k` whose first image is `first` (0-based),
/// in lexicographic order, without allocating per permutation. Sharding on
/// `first` splits `S_k` into `k` disjoint lexicographic ranges.
pub(crate) fn for_each_with_first(k: usize, first: usize, mut f: impl FnMut(&[usize])) {
    let mut images: Vec<usize> = std::iter::once(first).chain((0..k).filter(|&x| x != first)).collect();
    loop {
        f(&images);
        if !next_permutation(&mut images[1..]) {
            break;
        }
    }
}

/// `z_μ = ∏ i^{m_i} m_i!`.
pub fn centralizer_order(mu: &Partition) -> BigInt {
    mu.multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .fold(BigInt::one(), |acc, (i, &m)| acc * BigInt::from(i).pow(m as u32) * factorial(m))
}

/// Size of the conjugacy class of cycle type `μ` in `S_{|μ|}`.
pub fn class_size(mu: &Partition) -> BigInt {
    factorial(mu.size()) / centralizer_order(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn composition_convention() {
        let u = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let v = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let uv = u.compose(&v).unwrap();
        assert_eq!(uv, Permutation::from_cycles(3, &[&[2, 3]]).unwrap());
        let w = Permutation::from_one_line(&[3, 1, 4, 2]).unwrap();
        assert_eq!(w.compose(&Permutation::identity(4)).unwrap(), w);
        assert_eq!(w.compose(&w.inverse()).unwrap(), Permutation::identity(4));
        assert!(w.compose(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn cycle_structure() {
        let id = Permutation::identity(4);
        assert_eq!(id.cycle_count(), 4);
        assert_eq!(id.cycle_type(), p("1,1,1,1"));
        let c = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!((c.cycle_count(), c.cycle_type()), (1, p("3")));
        let w = Permutation::from_cycles(5, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!((w.cycle_count(), w.cycle_type()), (3, p("2,2,1")));
        assert_eq!(w.to_string(), "(1 2)(3 4)(5)");
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(Permutation::canonical(&p("1,1")), Permutation::identity(2));
        assert_eq!(Permutation::canonical(&p("3")), Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap());
        assert_eq!(Permutation::canonical(&p("2,1")), Permutation::from_cycles(3, &[&[1, 2]]).unwrap());
        assert_eq!(Permutation::canonical(&p("3,2,2,1")).cycle_type(), p("3,2,2,1"));
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_sym(1, 10).unwrap().count(), 1);
        assert_eq!(enumerate_sym(4, 10).unwrap().count(), 24);
        let mut by_kappa = HashMap::new();
        for w in enumerate_sym(3, 10).unwrap() {
            *by_kappa.entry(w.cycle_count()).or_insert(0) += 1;
        }
        assert_eq!(by_kappa, HashMap::from([(1, 2), (2, 3), (3, 1)]));
        assert_eq!(enumerate_sym(11, 10).err(), Some(Error::CapExceeded { k: 11, cap: 10 }));
        let all: Vec<_> = enumerate_sym(3, 10).unwrap().map(|w| w.one_line()).collect();
        assert_eq!(all.first().unwrap(), &vec![1, 2, 3]);
        assert_eq!(all.last().unwrap(), &vec![3, 2, 1]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn sharded_enumeration_covers_lexicographic_order() {
        let k = 5;
        let mut sharded = Vec::new();
        for first in 0..k {
            for_each_with_first(k, first, |w| sharded.push(w.to_vec()));
        }
        let serial: Vec<_> = enumerate_sym(k, 10).unwrap().map(|w| w.zero_based().to_vec()).collect();
        assert_eq!(sharded, serial);
    }

    #[test]
    fn centralizers() {
        assert_eq!(centralizer_order(&p("1,1,1,1")), BigInt::from(24));
        assert_eq!(centralizer_order(&p("5")), BigInt::from(5));
        assert_eq!(centralizer_order(&p("2,2")), BigInt::from(8));
        for k in 1..=8 {
            let total: BigInt = Partition::all(k).iter().map(class_size).sum();
            assert_eq!(total, factorial(k));
        }
        // class sizes against enumeration
        let mut counts: HashMap<Partition, u64> = HashMap::new();
        for w in enumerate_sym(6, 10).unwrap() {
            *counts.entry(w.cycle_type()).or_default() += 1;
        }
        for mu in Partition::all(6) {
            assert_eq!(BigInt::from(counts[&mu]), class_size(&mu), "{mu}");
        }
    }

    #[test]
    fn json_is_one_line() {
        let w = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "[3,2,1,4]");
        let back: Permutation = serde_json::from_str("[3,2,1,4]").unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }
}

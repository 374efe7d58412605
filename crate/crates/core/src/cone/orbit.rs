use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ring::SpaceSignature;

/// A set of interchangeable blocks. Block `b` occupies the coordinates
/// `band + b` for every band start; permuting blocks permutes those
/// coordinates simultaneously.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockGroup {
    pub bands: Vec<usize>,
    pub blocks: usize,
}

/// The action of a product of symmetric groups on coordinates. Coordinates
/// outside every group are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpec {
    dim: usize,
    groups: Vec<BlockGroup>,
}

impl OrbitSpec {
    /// Groups must occupy disjoint coordinates and appear in increasing
    /// coordinate order, with each group's bands sorted; under this layout
    /// sorting block tuples yields the lexicographic minimum of an orbit.
    pub fn new(dim: usize, groups: Vec<BlockGroup>) -> Result<Self> {
        let mut last_end = 0usize;
        let mut used = vec![false; dim];
        for g in &groups {
            if g.blocks == 0 || g.bands.is_empty() {
                continue;
            }
            if !g.bands.windows(2).all(|w| w[0] + g.blocks <= w[1]) {
                return Err(Error::Domain("bands of a block group overlap or are unsorted".into()));
            }
            if g.bands[0] < last_end {
                return Err(Error::Domain("block groups interleave".into()));
            }
            for &b in &g.bands {
                for c in b..b + g.blocks {
                    let fresh = used.get_mut(c).is_some_and(|u| !std::mem::replace(u, true));
                    if !fresh {
                        return Err(Error::Domain(format!("coordinate {c} is out of range or reused")));
                    }
                }
            }
            last_end = g.bands.last().unwrap() + g.blocks;
        }
        let groups = groups.into_iter().filter(|g| g.blocks > 0 && !g.bands.is_empty()).collect();
        Ok(OrbitSpec { dim, groups })
    }

    pub fn trivial(dim: usize) -> Self {
        OrbitSpec { dim, groups: vec![] }
    }

    /// `S_r × S_s` acting on the canonical coordinates of `N^k`.
    pub fn for_space(space: &SpaceSignature, k: usize) -> Self {
        let n = space.n;
        let mixed = if (2..n).contains(&k) { space.r } else { 0 };
        let pure = if k >= 1 && k + 2 <= n { space.r } else { 0 };
        let points = if (1..n).contains(&k) { space.s } else { 0 };
        let mut line_bands = vec![];
        if mixed > 0 {
            line_bands.push(1);
        }
        if pure > 0 {
            line_bands.push(1 + mixed);
        }
        let groups = vec![
            BlockGroup { bands: line_bands, blocks: space.r },
            BlockGroup { bands: vec![1 + mixed + pure], blocks: points },
        ];
        OrbitSpec::new(1 + mixed + pure + points, groups).expect("canonical layout is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check<T>(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Domain(format!("vector of length {} for an orbit spec of dimension {}", v.len(), self.dim)));
        }
        Ok(())
    }

    fn tuples<T: Clone>(g: &BlockGroup, v: &[T]) -> Vec<Vec<T>> {
        (0..g.blocks).map(|b| g.bands.iter().map(|&s| v[s + b].clone()).collect()).collect()
    }

    fn write<T: Clone>(g: &BlockGroup, v: &mut [T], tuples: &[Vec<T>]) {
        for (b, t) in tuples.iter().enumerate() {
            for (&s, x) in g.bands.iter().zip(t) {
                v[s + b] = x.clone();
            }
        }
    }

    /// The lexicographically smallest vector in the orbit of `v`.
    pub fn canonical<T: Ord + Clone>(&self, v: &[T]) -> Result<Vec<T>> {
        self.check(v)?;
        let mut out = v.to_vec();
        for g in &self.groups {
            let mut t = Self::tuples(g, v);
            t.sort();
            Self::write(g, &mut out, &t);
        }
        Ok(out)
    }

    /// All distinct images of `v`, sorted.
    pub fn orbit<T: Ord + Clone>(&self, v: &[T]) -> Result<Vec<Vec<T>>> {
        self.check(v)?;
        let mut acc = vec![v.to_vec()];
        for g in &self.groups {
            let mut t = Self::tuples(g, v);
            t.sort();
            let perms = distinct_permutations(t);
            acc = acc
                .into_iter()
                .flat_map(|base| {
                    perms.iter().map(move |p| {
                        let mut w = base.clone();
                        Self::write(g, &mut w, p);
                        w
                    })
                })
                .collect();
        }
        acc.sort();
        acc.dedup();
        Ok(acc)
    }

    /// Sorted distinct orbit representatives.
    pub fn compress<T: Ord + Clone>(&self, vs: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
        let set: BTreeSet<Vec<T>> = vs.iter().map(|v| self.canonical(v)).collect::<Result<_>>()?;
        Ok(set.into_iter().collect())
    }

    /// Sorted union of the orbits.
    pub fn expand<T: Ord + Clone>(&self, reps: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
        let mut set = BTreeSet::new();
        for r in reps {
            set.extend(self.orbit(r)?);
        }
        Ok(set.into_iter().collect())
    }
}

/// Distinct permutations of a sorted list, in lexicographic order.
fn distinct_permutations<T: Ord + Clone>(mut items: Vec<T>) -> Vec<Vec<T>> {
    let mut out = vec![items.clone()];
    loop {
        let Some(i) = (1..items.len()).rev().find(|&i| items[i - 1] < items[i]) else {
            return out;
        };
        let j = (i..items.len()).rev().find(|&j| items[i - 1] < items[j]).expect("pivot exists");
        items.swap(i - 1, j);
        items[i..].reverse();
        out.push(items.clone());
    }
}

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ring::{GradedClass, SpaceSignature};

use super::exceptional::{exceptional_line_cycle, exceptional_point_cycle, LineShape};
use super::profile::{feasible_profile, IncidenceProfile};
use super::transform::proper_transform_linear;

/// A class together with a note on the cycle it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub class: GradedClass,
    pub provenance: String,
}

#[derive(Clone, Copy)]
enum LineRole {
    Free,
    Contained,
    Met,
}

/// Every feasible, nondegenerate incidence profile of `dim`-planes.
/// Feasibility only gets worse as incidences are added, so the search is
/// cut at the first failure.
pub fn feasible_profiles(space: SpaceSignature, dim: usize) -> Result<Vec<IncidenceProfile>> {
    let root = IncidenceProfile::general(space, dim)?;
    let mut out = Vec::new();
    extend_lines(root, 1, &mut out);
    Ok(out)
}

fn viable(p: &IncidenceProfile) -> bool {
    feasible_profile(p).feasible && !p.is_degenerate()
}

fn extend_lines(p: IncidenceProfile, line: usize, out: &mut Vec<IncidenceProfile>) {
    if line > p.space.r {
        extend_points(p, 1, out);
        return;
    }
    for role in [LineRole::Free, LineRole::Contained, LineRole::Met] {
        let mut next = p.clone();
        match role {
            LineRole::Free => {}
            LineRole::Contained => {
                next.contains.insert(line);
            }
            LineRole::Met => {
                next.meets.insert(line);
            }
        }
        if viable(&next) {
            extend_lines(next, line + 1, out);
        }
    }
}

fn extend_points(p: IncidenceProfile, point: usize, out: &mut Vec<IncidenceProfile>) {
    if point > p.space.s {
        out.push(p);
        return;
    }
    let mut with = p.clone();
    with.points.insert(point);
    extend_points(p, point + 1, out);
    if viable(&with) {
        extend_points(with, point + 1, out);
    }
}

/// Generators of the linear cone `Lin_dim`: proper transforms of all
/// feasible incidence profiles of `dim`-planes, both linear shapes inside
/// each `E_i`, and `dim`-planes inside each `e_j`. Duplicates are removed
/// (keeping the first provenance) and the list is sorted by descending
/// canonical coordinates.
pub fn linear_cone_generators(space: SpaceSignature, dim: usize) -> Result<Vec<Generator>> {
    if dim >= space.n {
        return Err(Error::Range(format!("linear cycles of dimension {dim} on {space}")));
    }
    let mut all = Vec::new();
    for p in feasible_profiles(space, dim)? {
        all.push(Generator {
            class: proper_transform_linear(&p)?,
            provenance: p.to_string(),
        });
    }
    for i in 1..=space.r {
        if dim + 2 <= space.n {
            all.push(Generator {
                class: exceptional_line_cycle(&space, i, LineShape::FiberSlice(dim))?,
                provenance: format!("exc-line-fiber i={i}"),
            });
        }
        if dim >= 1 {
            all.push(Generator {
                class: exceptional_line_cycle(&space, i, LineShape::Sweep(dim))?,
                provenance: format!("exc-line-sweep i={i}"),
            });
        }
    }
    for j in 1..=space.s {
        all.push(Generator {
            class: exceptional_point_cycle(&space, j, dim)?,
            provenance: format!("exc-point j={j}"),
        });
    }
    let mut seen = HashSet::new();
    all.retain(|g| seen.insert(g.class.clone()));
    all.sort_by(|a, b| b.class.coords().cmp(a.class.coords()));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Q;
    use crate::ring::SignedClass;

    fn signed_rows(gens: &[Generator]) -> Vec<Vec<i64>> {
        gens.iter()
            .map(|g| {
                SignedClass::from_class(&g.class)
                    .unwrap()
                    .coords
                    .iter()
                    .map(|x: &Q| x.to_integer().try_into().unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn profiles_match_bruteforce() {
        let x = SpaceSignature::new(4, 4, 1).unwrap();
        for dim in 0..4 {
            let fast = feasible_profiles(x, dim).unwrap();
            let mut slow = Vec::new();
            for code in 0..3usize.pow(4) * 2 {
                let (mut c, mut t, mut pts) = (vec![], vec![], vec![]);
                let mut rest = code;
                for i in 1..=4 {
                    match rest % 3 {
                        1 => c.push(i),
                        2 => t.push(i),
                        _ => {}
                    }
                    rest /= 3;
                }
                if rest == 1 {
                    pts.push(1);
                }
                let p = IncidenceProfile::new(x, dim, c, t, pts).unwrap();
                if viable(&p) {
                    slow.push(p);
                }
            }
            let mut fast_sorted = fast.clone();
            fast_sorted.sort();
            slow.sort();
            assert_eq!(fast_sorted, slow, "dim {dim}");
        }
    }

    #[test]
    fn curves_on_x4() {
        let x = SpaceSignature::new(4, 4, 0).unwrap();
        let rows = signed_rows(&linear_cone_generators(x, 1).unwrap());
        // l, l - l_i, l - l_i - l_j, l - l_i - l_j - l_k and l_i.
        assert_eq!(rows.len(), 1 + 4 + 6 + 4 + 4);
        assert!(rows.contains(&vec![1, -1, -1, -1, 0]));
        assert!(rows.contains(&vec![0, 0, 0, 1, 0]));
        assert!(!rows.iter().any(|r| r[0] == 1 && r[1..].iter().all(|&x| x == -1)));
    }

    #[test]
    fn divisors_on_x5() {
        let x = SpaceSignature::new(5, 3, 0).unwrap();
        let rows = signed_rows(&linear_cone_generators(x, 4).unwrap());
        assert!(rows.contains(&vec![1, -1, -1, 0]));
        assert!(rows.contains(&vec![0, 0, 1, 0]));
        assert!(!rows.contains(&vec![1, -1, -1, -1]));
    }

    #[test]
    fn points_collapse_to_one_class() {
        let x = SpaceSignature::new(4, 2, 2).unwrap();
        let gens = linear_cone_generators(x, 0).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].class, GradedClass::h(x).power(4).unwrap());
    }

    #[test]
    fn provenance_labels() {
        let x = SpaceSignature::new(4, 4, 0).unwrap();
        let gens = linear_cone_generators(x, 2).unwrap();
        let labels: Vec<&str> = gens.iter().map(|g| g.provenance.as_str()).collect();
        assert!(labels.contains(&"plane C={1} T={2,3}"));
        assert!(labels.contains(&"exc-line-sweep i=1"));
        assert!(labels.contains(&"exc-line-fiber i=4"));
    }
}

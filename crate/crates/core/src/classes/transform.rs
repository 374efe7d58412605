use crate::error::{Error, Result};
use crate::rational::{q, sign_pow};
use crate::ring::{GradedClass, Monomial};

use super::profile::{feasible_profile, feasible_quadric, IncidenceProfile};

fn check_degenerate(p: &IncidenceProfile) -> Result<()> {
    if p.is_degenerate() {
        return Err(Error::Domain(format!(
            "{p} lies inside a blowup center; its proper transform is not a {}-cycle",
            p.dim
        )));
    }
    Ok(())
}

/// `hyper H^k` plus the exceptional corrections. `lead` is the coefficient
/// of `H E_i^{k-1}` for a contained line, up to the sign `(-1)^{k-1}`.
/// `E_i^{n-1}` is not a basis monomial, hence the reduction through `raw`.
fn transform(p: &IncidenceProfile, hyper: i64, lead: i64) -> Result<GradedClass> {
    let k = p.codim();
    let mut terms = vec![(Monomial::Hyperplane { k }, q(hyper))];
    if k == 1 {
        terms.extend(p.contains.iter().map(|&line| (Monomial::LinePure { line, k: 1 }, q(-1))));
        terms.extend(p.points.iter().map(|&point| (Monomial::PointPure { point, k: 1 }, q(-1))));
    } else {
        let s = sign_pow(k - 1);
        for &line in &p.contains {
            terms.push((Monomial::LineMixed { line, k }, q(s * lead)));
            terms.push((Monomial::LinePure { line, k }, q(-s)));
        }
        terms.extend(p.meets.iter().map(|&line| (Monomial::LineMixed { line, k }, q(s))));
        terms.extend(p.points.iter().map(|&point| (Monomial::PointPure { point, k }, q(-s))));
    }
    let mut out = GradedClass::zero(p.space, k);
    for (m, x) in terms {
        out = out.add(&GradedClass::raw(p.space, m.raw())?.scale(&x))?;
    }
    Ok(out)
}

/// The proper transform of a linear space with the given incidences, in
/// `N^k` with `k = n - d`:
/// `H^k + Σ_C [(-1)^{k-1} k H E_i^{k-1} + (-1)^k E_i^k] + Σ_T (-1)^{k-1} H E_i^{k-1} + Σ_P (-1)^k e_j^k`.
/// Hyperplanes (`k = 1`) give `H - Σ_C E_i - Σ_P e_j`.
pub fn proper_transform_linear(p: &IncidenceProfile) -> Result<GradedClass> {
    let f = feasible_profile(p);
    if !f.feasible {
        return Err(Error::Infeasible {
            expected_dim: f.expected_dim,
            reason: format!("no {p} exists for general centers"),
        });
    }
    check_degenerate(p)?;
    transform(p, 1, p.codim() as i64)
}

/// The proper transform of a quadric of dimension `d` with the given
/// incidences: as the linear case with leading coefficient `2` and `k + 1`
/// in place of `k` for contained lines. With `assume_feasible` the dimension
/// count is skipped.
pub fn proper_transform_quadric(p: &IncidenceProfile, assume_feasible: bool) -> Result<GradedClass> {
    let f = feasible_quadric(p);
    if !assume_feasible && !f.feasible {
        return Err(Error::Infeasible {
            expected_dim: f.expected_dim,
            reason: format!("no quadric with incidence {p} exists for general centers"),
        });
    }
    check_degenerate(p)?;
    transform(p, 2, p.codim() as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::exceptional::{class_from_traces, trace};
    use crate::rational::Q;
    use crate::ring::{SignedClass, SpaceSignature};

    fn sp(n: usize, r: usize, s: usize) -> SpaceSignature {
        SpaceSignature::new(n, r, s).unwrap()
    }

    fn signed(c: &GradedClass) -> Vec<i64> {
        SignedClass::from_class(c)
            .unwrap()
            .coords
            .iter()
            .map(|x| x.to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn plane_containing_one_line_meeting_two() {
        let p = IncidenceProfile::new(sp(4, 4, 0), 2, [1], [2, 3], []).unwrap();
        assert_eq!(signed(&proper_transform_linear(&p).unwrap()), [1, -2, -1, -1, 0, -1, 0, 0, 0]);
    }

    #[test]
    fn threefold_meeting_five_lines() {
        let p = IncidenceProfile::new(sp(5, 5, 0), 3, [], 1..=5, []).unwrap();
        assert_eq!(signed(&proper_transform_linear(&p).unwrap()), [1, -1, -1, -1, -1, -1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn general_space_is_hyperplane_power() {
        let x = sp(5, 2, 1);
        for d in 0..5 {
            let p = IncidenceProfile::general(x, d).unwrap();
            assert_eq!(proper_transform_linear(&p).unwrap(), GradedClass::h(x).power(5 - d).unwrap());
            assert_eq!(
                proper_transform_quadric(&p, true).unwrap(),
                GradedClass::h(x).power(5 - d).unwrap().scale_int(2)
            );
        }
    }

    #[test]
    fn quadric_witnesses() {
        let p = IncidenceProfile::new(sp(4, 5, 0), 2, [1, 2], [3, 4, 5], []).unwrap();
        assert_eq!(
            signed(&proper_transform_quadric(&p, false).unwrap()),
            [2, -3, -3, -1, -1, -1, -1, -1, 0, 0, 0]
        );
        let p = IncidenceProfile::new(sp(5, 5, 0), 3, [2, 3], [1, 4, 5], []).unwrap();
        assert_eq!(
            signed(&proper_transform_quadric(&p, false).unwrap()),
            [2, -1, -3, -3, -1, -1, 0, -1, -1, 0, 0]
        );
    }

    #[test]
    fn hyperplanes_and_points() {
        let x = sp(4, 2, 2);
        let p = IncidenceProfile::new(x, 3, [1], [2], [2]).unwrap();
        assert_eq!(signed(&proper_transform_linear(&p).unwrap()), [1, -1, 0, 0, -1]);
        let p = IncidenceProfile::new(x, 2, [], [], [1, 2]).unwrap();
        assert_eq!(signed(&proper_transform_linear(&p).unwrap()), [1, 0, 0, 0, 0, -1, -1]);
    }

    #[test]
    fn infeasible_and_degenerate() {
        let p = IncidenceProfile::new(sp(5, 5, 0), 2, [], 1..=5, []).unwrap();
        assert!(matches!(proper_transform_linear(&p), Err(Error::Infeasible { expected_dim: -1, .. })));
        let p = IncidenceProfile::new(sp(4, 1, 0), 1, [1], [], []).unwrap();
        assert!(matches!(proper_transform_linear(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn agrees_with_trace_derivation() {
        // A d-plane containing L_i cuts P^1 × P^{d-2} = v^{n-d} on E_i; one
        // meeting L_i cuts a fiber slice u v^{n-1-d}; one through p_j cuts
        // a (d-1)-plane.
        for n in 3..=6 {
            let x = sp(n, 3, 1);
            for d in 2..n {
                let p = IncidenceProfile::new(x, d, [1], [2], [1]).unwrap();
                if !feasible_profile(&p).feasible {
                    continue;
                }
                let expected = class_from_traces(
                    &x,
                    d,
                    1,
                    &[(1, trace(&x, &[(0, n - d, 1)])), (2, trace(&x, &[(1, n - 1 - d, 1)]))],
                    &[(1, Q::from_integer(1.into()))],
                )
                .unwrap();
                assert_eq!(proper_transform_linear(&p).unwrap(), expected, "n={n} d={d}");
            }
        }
    }
}

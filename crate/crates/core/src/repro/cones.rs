use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::context::{
    class_from_signed, exceptional_shifts, flip, fmt_vec, signed_ints, to_i64, LinData, Session, Violation,
};
use super::fixture::{Fixture, Row};
use super::report::ReportBuilder;
use super::TableRun;
use crate::classes::{hypersurface_divisor, proper_transform_quadric, witness};
use crate::cone::{maximally_incident_reduce, Certificate, OrbitSpec, RayCone, ShiftOrder};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, ints, primitive_int};
use crate::ring::SpaceSignature;

/// A copy of the fixture header with computed rows.
pub(super) fn computed(f: &Fixture, columns: Vec<String>, rows: Vec<Row>, groups: Vec<usize>) -> Fixture {
    let groups = if groups.len() <= 1 { vec![] } else { groups };
    Fixture {
        table_id: f.table_id.clone(),
        kind: f.kind,
        location: f.location.clone(),
        space: f.space,
        degree: f.degree,
        columns,
        rows,
        groups,
        params: f.params.clone(),
    }
}

fn row_of(label: impl Into<String>, v: &[BigInt]) -> Result<Row> {
    Ok(Row::new(label, to_i64(v)?))
}

fn fmt_terms(coeffs: &[BigInt], names: &[String]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| {
            let n = if n.contains('+') || n.starts_with('-') { format!("({n})") } else { n.clone() };
            if c.is_one() {
                n
            } else {
                format!("{c}·{n}")
            }
        })
        .collect();
    terms.join(" + ")
}

/// Explains rays outside a table as a listed row plus exceptional shifts.
struct Closure {
    sources: Vec<(String, Vec<BigInt>)>,
    order: ShiftOrder,
    names: Vec<String>,
}

impl Closure {
    fn certificate(&self, orbits: &OrbitSpec, target: &[BigInt]) -> Result<String> {
        for (label, src) in &self.sources {
            for e in orbits.orbit(src)? {
                if let Some(c) = self.order.reaches(&e, target) {
                    if c.iter().all(Zero::is_zero) {
                        return Ok(format!("{} is a relabelling of {label}", fmt_vec(target)));
                    }
                    return Ok(format!(
                        "{} = {} + {}, a relabelling of {label} plus exceptional classes",
                        fmt_vec(target),
                        fmt_vec(&e),
                        fmt_terms(&c, &self.names)
                    ));
                }
            }
        }
        Ok(String::new())
    }
}

struct DualComparison {
    rows: Vec<Row>,
    groups: Vec<usize>,
}

/// Compares a computed ray set with the fixture rows as `S_r × S_s` orbits.
fn compare_dual(
    b: &mut ReportBuilder,
    prefix: &str,
    f: &Fixture,
    orbits: &OrbitSpec,
    computed_rays: &[Vec<BigInt>],
    violation: &dyn Fn(&[BigInt]) -> Option<Violation>,
    closure: Option<&Closure>,
) -> Result<DualComparison> {
    let reps: BTreeSet<Vec<BigInt>> = orbits.compress(computed_rays)?.into_iter().collect();
    let mut matched = BTreeSet::new();
    let mut rows = Vec::new();
    let mut groups = Vec::new();
    for range in f.group_ranges() {
        let mut size = 0;
        for row in &f.rows[range] {
            let v = ints(&row.coords);
            let canon = orbits.canonical(&v)?;
            if reps.contains(&canon) {
                let orbit = orbits.orbit(&v)?.len();
                b.row(format!("{prefix}{}", row.label), true, format!("extreme ray, orbit of {orbit}"));
                matched.insert(canon);
                rows.push(Row::new(row.label.clone(), row.coords.clone()));
                size += 1;
            } else if let Some(bad) = violation(&v) {
                b.check(
                    &format!("{prefix}fixture-outside {}", row.label),
                    false,
                    format!("{} {} is not in the dual cone", row.label, fmt_vec(&row.coords)),
                    bad.describe(&row.label),
                );
            } else {
                b.check(
                    &format!("{prefix}fixture-not-extreme {}", row.label),
                    false,
                    format!("{} {} is in the dual cone but is not an extreme ray", row.label, fmt_vec(&row.coords)),
                    "",
                );
            }
        }
        if size > 0 {
            groups.push(size);
        }
    }
    let mut extra = 0;
    for rep in reps.iter().filter(|r| !matched.contains(*r)) {
        let cert = match closure {
            Some(c) => c.certificate(orbits, rep)?,
            None => String::new(),
        };
        extra += 1;
        b.check(
            &format!("{prefix}computed-missing {}", fmt_vec(rep)),
            false,
            format!("extreme ray orbit of {} is not in the table", orbits.orbit(rep)?.len()),
            cert,
        );
        rows.push(row_of(format!("new{extra}"), rep)?);
    }
    if extra > 0 {
        groups.push(extra);
    }
    b.note(format!(
        "{prefix}computed {} extreme rays in {} orbits against {} table rows",
        computed_rays.len(),
        reps.len(),
        f.rows.len()
    ));
    Ok(DualComparison { rows, groups })
}

/// The most negative pairing of a signed dual vector with the rays of `cone`.
fn cone_violation(lin: &LinData, cone: &RayCone, w_signed: &[BigInt]) -> Option<Violation> {
    let w = flip(&lin.dual_signs, w_signed);
    let mut worst: Option<Violation> = None;
    for g in cone.rays() {
        let value = cone.pair(&w, g);
        if value.is_negative() && worst.as_ref().is_none_or(|v| value < v.value) {
            let signed = flip(&lin.lin_signs, g);
            worst = Some(Violation {
                value,
                provenance: lin.provenance_of(&signed).unwrap_or("table generator").to_string(),
                generator: signed,
            });
        }
    }
    worst
}

fn signed_dual(lin: &LinData, cone: &RayCone) -> Vec<Vec<BigInt>> {
    let mut v: Vec<Vec<BigInt>> = cone.dual().rays().iter().map(|r| flip(&lin.dual_signs, r)).collect();
    v.sort();
    v
}

pub(super) fn dual(s: &Session, f: &Fixture) -> Result<TableRun> {
    let space = f.space()?;
    let lin = s.lin(space, f.param_usize("cycleDim")?)?;
    let orbits = lin.dual_orbits();
    let mut b = ReportBuilder::new(&f.table_id);

    let closure = if f.params.get("closureShifts").and_then(|v| v.as_bool()) == Some(true) {
        let (shifts, names) = exceptional_shifts(&space, true)?;
        let mut sources: Vec<(String, Vec<BigInt>)> = f
            .rows
            .iter()
            .map(|r| (r.label.clone(), ints(&r.coords)))
            .filter(|(_, v)| lin.violation(v).is_none())
            .collect();
        for (label, v) in corrections(f)? {
            sources.push((format!("{label}*"), v));
        }
        Some(Closure { sources, order: ShiftOrder::new(&shifts)?, names })
    } else {
        None
    };

    let cmp = compare_dual(&mut b, "", f, &orbits, lin.dual_signed(), &|w| lin.violation(w), closure.as_ref())?;

    let reps: BTreeSet<Vec<BigInt>> = orbits.compress(lin.dual_signed())?.into_iter().collect();
    for (label, v) in corrections(f)? {
        let ok = reps.contains(&orbits.canonical(&v)?);
        b.row(format!("corrected {label}"), ok, format!("{} is an extreme ray of the computed dual", fmt_vec(&v)));
    }

    if let Some(lin_id) = f.param_str("lin") {
        let lf = s.fixtures().get(lin_id)?;
        let cone = s.fixture_lin(lf, &lin)?;
        let rays = signed_dual(&lin, &cone);
        compare_dual(&mut b, &format!("{lin_id}: "), f, &orbits, &rays, &|w| cone_violation(&lin, &cone, w), None)?;
        let same = cone.cone_equal(&lin.cone)?;
        b.check(
            &format!("{lin_id} spans the derived cone"),
            same,
            format!("cone of {lin_id} equals the derived Lin_{}", lin.cycle_dim),
            "",
        );
    }

    let table = computed(f, lin.dual_labels()?, cmp.rows, cmp.groups);
    Ok(TableRun { report: b.finish(), table })
}

fn corrections(f: &Fixture) -> Result<Vec<(String, Vec<BigInt>)>> {
    let Some(obj) = f.params.get("corrected").and_then(|v| v.as_object()) else {
        return Ok(vec![]);
    };
    obj.iter()
        .map(|(k, v)| {
            let coords: Vec<i64> = serde_json::from_value(v.clone())?;
            Ok((k.clone(), ints(&coords)))
        })
        .collect()
}

/// Signed companion dual rows, orbit-expanded, with their labels.
fn companion_rows(s: &Session, id: &str, lin: &LinData) -> Result<Vec<(String, Vec<BigInt>)>> {
    let f = s.fixtures().get(id)?;
    let orbits = lin.dual_orbits();
    let mut out = Vec::new();
    for r in &f.rows {
        for v in orbits.orbit(&ints(&r.coords))? {
            out.push((r.label.clone(), v));
        }
    }
    Ok(out)
}

pub(super) fn generators(s: &Session, f: &Fixture) -> Result<TableRun> {
    let space = f.space()?;
    let lin = s.lin(space, f.param_usize("cycleDim")?)?;
    let mut b = ReportBuilder::new(&f.table_id);
    let companion = match f.param_str("dual") {
        Some(id) => companion_rows(s, id, &lin)?,
        None => vec![],
    };
    let lin_orbits = lin.lin_orbits();

    for row in &f.rows {
        let signed = ints(&row.coords);
        let v = flip(&lin.lin_signs, &signed);
        let m = lin.cone.membership(&v)?;
        if m.inside {
            b.row(&row.label, true, format!("{} lies in the derived linear cone", fmt_vec(&row.coords)));
            continue;
        }
        if !lin.cone.verify(&v, &m) {
            return Err(Error::SelfTest(format!("separator for {} does not verify", row.label)));
        }
        let by_companion = companion.iter().find_map(|(label, w)| {
            let value = lin.cone.pair(&flip(&lin.dual_signs, w), &v);
            value.is_negative().then(|| format!("⟨{label} = {}, {}⟩ = {}", fmt_vec(w), row.label, fmt_q(&value)))
        });
        let cert = match (by_companion, &m.certificate) {
            (Some(c), _) => c,
            (None, Certificate::Separator { dual_element: Some(w), .. }) => {
                let ws = flip(&lin.dual_signs, w);
                format!("⟨{}, {}⟩ = {} with the dual element nonnegative on every generator", fmt_vec(&ws), row.label, fmt_q(&lin.cone.pair(w, &v)))
            }
            (None, _) => String::new(),
        };
        b.check(
            &format!("fixture-outside {}", row.label),
            false,
            format!("{} {} is not in the derived linear cone", row.label, fmt_vec(&row.coords)),
            cert,
        );
    }

    let fx = s.fixture_lin(f, &lin)?;
    let extreme: Vec<Vec<BigInt>> =
        lin.cone.extreme_rays().rays().iter().map(|r| flip(&lin.lin_signs, r)).collect();
    let reps = lin_orbits.compress(&extreme)?;
    let mut rows = Vec::new();
    for rep in &reps {
        let label = f
            .rows
            .iter()
            .find(|r| lin_orbits.canonical(&ints(&r.coords)).ok().as_ref() == Some(rep))
            .map(|r| r.label.clone())
            .or_else(|| lin.provenance_of(rep).map(str::to_string))
            .unwrap_or_else(|| fmt_vec(rep));
        let v = flip(&lin.lin_signs, rep);
        let m = fx.membership(&v)?;
        if m.inside {
            b.row(format!("derived {label}"), true, format!("{} lies in the cone of the table", fmt_vec(rep)));
        } else {
            if !fx.verify(&v, &m) {
                return Err(Error::SelfTest(format!("separator for {label} does not verify")));
            }
            let cert = match &m.certificate {
                Certificate::Separator { dual_element: Some(w), .. } => format!(
                    "⟨{}, {label}⟩ = {} with the dual element nonnegative on every table row",
                    fmt_vec(&flip(&lin.dual_signs, w)),
                    fmt_q(&fx.pair(w, &v))
                ),
                _ => String::new(),
            };
            b.check(
                &format!("computed-missing {}", fmt_vec(rep)),
                false,
                format!("derived extreme ray {label} is not in the cone of the table"),
                cert,
            );
        }
        rows.push(row_of(label, rep)?);
    }
    b.note(format!(
        "{} derived generators, {} extreme rays in {} orbits",
        lin.generators.len(),
        extreme.len(),
        reps.len()
    ));
    let table = computed(f, lin.lin_labels()?, rows, vec![]);
    Ok(TableRun { report: b.finish(), table })
}

pub(super) fn maxinc(s: &Session, f: &Fixture) -> Result<TableRun> {
    let space = f.space()?;
    let lin = s.lin(space, f.param_usize("cycleDim")?)?;
    let orbits = lin.dual_orbits();
    let mut b = ReportBuilder::new(&f.table_id);
    let (shifts, _) = exceptional_shifts(&space, false)?;
    let reduced = maximally_incident_reduce(lin.dual_signed(), &shifts)?;
    let cmp = compare_dual(&mut b, "", f, &orbits, &reduced, &|w| lin.violation(w), None)?;
    b.note(format!("the full dual has {} extreme rays", lin.dual_signed().len()));

    let fixture_rays = orbits.expand(&f.rows.iter().map(|r| ints(&r.coords)).collect::<Vec<_>>())?;
    let again = maximally_incident_reduce(&fixture_rays, &shifts)?;
    let closed = orbits.compress(&again)? == orbits.compress(&fixture_rays)?;
    b.check(
        "reduction of the table",
        closed,
        format!("maximally incident reduction of the {} expanded rows returns them all", fixture_rays.len()),
        "",
    );

    let mut sorted = fixture_rays.clone();
    sorted.sort();
    let all_reached = lin.dual_signed().iter().all(|ray| {
        let order = ShiftOrder::new(&shifts).expect("independent shifts");
        sorted.iter().any(|src| order.reaches(src, ray).is_some())
    });
    b.check(
        "covers the dual",
        all_reached,
        "every extreme ray of the dual is a table ray plus nonnegative shifts",
        "",
    );

    let table = computed(f, lin.dual_labels()?, cmp.rows, cmp.groups);
    Ok(TableRun { report: b.finish(), table })
}

/// Records whether the signed class lies outside `Lin`, with a verified separator.
fn non_membership(b: &mut ReportBuilder, lin: &LinData, label: &str, signed: &[BigInt]) -> Result<()> {
    let v = flip(&lin.lin_signs, signed);
    let m = lin.cone.membership(&v)?;
    let verified = lin.cone.verify(&v, &m);
    let cert = match &m.certificate {
        Certificate::Separator { dual_element: Some(w), .. } => format!(
            "w = {} pairs {} with {label} and nonnegatively with all {} generators",
            fmt_vec(&flip(&lin.dual_signs, w)),
            fmt_q(&lin.cone.pair(w, &v)),
            lin.generators.len()
        ),
        _ => String::new(),
    };
    let detail = format!("{label} is not in Lin_{}({})", lin.cycle_dim, lin.space);
    b.check("non-membership", !m.inside && verified, detail.clone(), "");
    if !m.inside && verified {
        b.note(format!("{detail}: {cert}"));
    }
    Ok(())
}

pub(super) fn witness_table(s: &Session, f: &Fixture) -> Result<TableRun> {
    let space = f.space()?;
    let lin = s.lin(space, f.param_usize("cycleDim")?)?;
    let mut b = ReportBuilder::new(&f.table_id);
    let name = f
        .param_str("witness")
        .ok_or_else(|| Error::Parse(format!("fixture {} names no witness", f.table_id)))?;
    let w = witness(name)?;
    let row = f.rows.first().ok_or_else(|| Error::Parse("witness table is empty".into()))?;
    let signed = signed_ints(&w.class)?;
    b.check("class", signed == ints(&row.coords), format!("{} = {}", row.label, fmt_vec(&signed)), "");
    b.check("recomputed", w.recompute()? == w.class, w.provenance, "");
    if let Some(p) = &row.profile {
        let c = proper_transform_quadric(&p.to_profile(space)?, p.assume_feasible)?;
        b.check("profile", signed_ints(&c)? == signed, "proper transform of the quadric profile", "");
    }
    non_membership(&mut b, &lin, &row.label, &ints(&row.coords))?;
    let table = computed(f, lin.lin_labels()?, vec![row_of(row.label.clone(), &signed)?], vec![]);
    Ok(TableRun { report: b.finish(), table })
}

/// Conditions for a degree-`d` hypersurface in `P^n` to have multiplicity `m` along a line.
fn line_conditions(n: usize, d: usize, m: usize) -> usize {
    (0..m.min(d + 1)).map(|j| binom(n - 2 + j, j) * (d - j + 1)).sum()
}

fn binom(a: usize, b: usize) -> usize {
    (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
}

pub(super) fn hypersurface(s: &Session, f: &Fixture) -> Result<TableRun> {
    let space = f.space()?;
    let lin = s.lin(space, f.param_usize("cycleDim")?)?;
    let mut b = ReportBuilder::new(&f.table_id);
    let deg = f.param_usize("hypersurfaceDegree")?;
    let mult = f.param_vec("lineMult")?;
    let row = f.rows.first().ok_or_else(|| Error::Parse("hypersurface table is empty".into()))?;
    let class = hypersurface_divisor(space, deg as i64, &mult, &[])?;
    let signed = signed_ints(&class)?;
    b.check("class", signed == ints(&row.coords), format!("{} = {}", row.label, fmt_vec(&signed)), "");
    let n = space.n;
    let total = binom(n + deg, deg) - 1;
    let conds: usize = mult.iter().map(|&m| line_conditions(n, deg, m as usize)).sum();
    b.check(
        "dimension count",
        conds <= total,
        format!("degree-{deg} hypersurfaces form a P^{total}; the multiplicities impose {conds} conditions"),
        "",
    );
    non_membership(&mut b, &lin, &row.label, &signed)?;
    let table = computed(f, lin.lin_labels()?, vec![row_of(row.label.clone(), &signed)?], vec![]);
    Ok(TableRun { report: b.finish(), table })
}

/// Pushes signed rows from the fixture space down to `x`; rows that vanish are dropped.
fn push_rows(from: SpaceSignature, degree: usize, rows: &[Vec<i64>], x: SpaceSignature) -> Result<Vec<Vec<BigInt>>> {
    let mut out = Vec::new();
    for r in rows {
        let c = class_from_signed(from, degree, r)?.pushforward(x)?;
        if !c.is_zero() {
            out.push(primitive_int(&signed_ints(&c)?));
        }
    }
    Ok(out)
}

pub(super) fn recipe(s: &Session, f: &Fixture) -> Result<TableRun> {
    let top = f.space()?;
    let d = f.param_usize("cycleDim")?;
    let dual_deg = f.degree()?;
    let lin_rows = f.param_rows("lin")?;
    let rows: Vec<Vec<i64>> = f.rows.iter().map(|r| r.coords.clone()).collect();
    let mut b = ReportBuilder::new(&f.table_id);
    let mut table_rows = Vec::new();
    for r in f.param_vec("r")? {
        let x = SpaceSignature::new(top.n, r as usize, 0)?;
        let lin = s.lin(x, d)?;
        let dual_orbits = lin.dual_orbits();
        let dual_cone = RayCone::new(
            lin.dual_signs.len(),
            lin.dual_signed().iter().map(|v| flip(&lin.dual_signs, v)).collect(),
            None,
        )?;

        let stated_lin = push_rows(top, top.n - d, &lin_rows, x)?;
        let stated_lin = lin.lin_orbits().expand(&stated_lin)?;
        let stated = lin.sibling(stated_lin.iter().map(|v| flip(&lin.lin_signs, v)).collect())?;
        b.check(
            &format!("r={r} generators"),
            stated.cone_equal(&lin.cone)?,
            format!("the stated generators span the derived Lin_{d}({x})"),
            "",
        );

        let literal = dual_orbits.expand(&push_rows(top, dual_deg, &rows, x)?)?;
        let mut subset = literal.clone();
        for rr in 0..r as usize {
            let small = SpaceSignature::new(top.n, rr, 0)?;
            for v in push_rows(top, dual_deg, &rows, small)? {
                let c = class_from_signed(small, dual_deg, &to_i64(&v)?)?.pullback(x)?;
                subset.extend(dual_orbits.orbit(&signed_ints(&c)?)?);
            }
        }
        for (name, family) in [("subset", &subset), ("literal", &literal)] {
            let cone = RayCone::new(
                lin.dual_signs.len(),
                family.iter().map(|v| flip(&lin.dual_signs, v)).collect(),
                None,
            )?;
            let outside = lin
                .dual_signed()
                .iter()
                .find(|v| !cone.contains(&flip(&lin.dual_signs, v)).unwrap_or(false));
            let inside_dual = family.iter().all(|v| lin.violation(v).is_none());
            let ok = outside.is_none() && inside_dual && cone.cone_equal(&dual_cone)?;
            let cert = outside
                .map(|v| format!("extreme ray {} of the dual is not spanned by the {name} family", fmt_vec(v)))
                .unwrap_or_default();
            b.check(
                &format!("r={r} {name}"),
                ok,
                format!("the {name} reading spans Lin_{d}({x})^*"),
                cert,
            );
        }
        if x == top {
            for rep in dual_orbits.compress(lin.dual_signed())? {
                table_rows.push(row_of(fmt_vec(&rep), &rep)?);
            }
        }
    }
    let labels = crate::ring::signed_basis_labels(&top, dual_deg)?;
    let table = computed(f, labels, table_rows, vec![]);
    Ok(TableRun { report: b.finish(), table })
}

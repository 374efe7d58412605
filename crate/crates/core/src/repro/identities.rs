use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::cones::computed;
use super::context::{class_from_signed, fmt_vec, signed_ints, to_i64, Session};
use super::fixture::{Fixture, Row};
use super::report::ReportBuilder;
use super::TableRun;
use crate::classes::{hypersurface_divisor, proper_transform_linear, proper_transform_quadric};
use crate::cone::decomposition_check;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, ints, Q};
use crate::ring::{signed_basis_labels, signed_pairing_matrix, GradedClass, SpaceSignature};
use crate::schubert::{parse_expression, schubert_degree, transversality_report, Grassmannian, Partition};

fn q_to_i64(x: &Q) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::Domain(format!("{} is not an integer", fmt_q(x))));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Range(format!("{} does not fit a table entry", fmt_q(x))))
}

fn check_row(b: &mut ReportBuilder, row: &Row, got: &[i64]) {
    b.check(
        &row.label,
        got == row.coords.as_slice(),
        format!("computed {} against table {}", fmt_vec(got), fmt_vec(&row.coords)),
        "",
    );
}

pub(super) fn degrees(f: &Fixture) -> Result<TableRun> {
    let mut b = ReportBuilder::new(&f.table_id);
    let mut rows = Vec::new();
    for row in &f.rows {
        let n = *row.coords.first().ok_or_else(|| Error::Parse("empty row".into()))? as usize;
        let x = SpaceSignature::new(n, 1, 1)?;
        let h = GradedClass::h(x);
        let e = GradedClass::line_divisor(x, 1)?;
        let p = GradedClass::point_divisor(x, 1)?;
        let got = vec![
            n as i64,
            q_to_i64(&h.power(n)?.top_degree()?)?,
            q_to_i64(&e.power(n)?.top_degree()?)?,
            q_to_i64(&p.power(n)?.top_degree()?)?,
            q_to_i64(&h.multiply(&e.power(n - 1)?)?.top_degree()?)?,
        ];
        check_row(&mut b, row, &got);
        rows.push(Row::new(row.label.clone(), got));
    }
    let table = computed(f, f.columns.clone(), rows, vec![]);
    Ok(TableRun { report: b.finish(), table })
}

pub(super) fn pairing(f: &Fixture) -> Result<TableRun> {
    let space = f.space()?;
    let k = f.degree()?;
    let mut b = ReportBuilder::new(&f.table_id);
    let labels = signed_basis_labels(&space, k)?;
    let m = signed_pairing_matrix(&space, k)?;
    if m.len() != f.rows.len() {
        b.check("shape", false, format!("{} basis classes against {} table rows", m.len(), f.rows.len()), "");
    }
    let mut rows = Vec::new();
    for (i, (label, line)) in labels.iter().zip(&m).enumerate() {
        let got = line.iter().map(q_to_i64).collect::<Result<Vec<_>>>()?;
        match f.rows.get(i) {
            Some(row) if row.label == *label => check_row(&mut b, row, &got),
            _ => b.check(label, false, format!("no table row for {label}"), ""),
        }
        rows.push(Row::new(label.clone(), got));
    }
    let table = computed(f, signed_basis_labels(&space, space.n - k)?, rows, vec![]);
    Ok(TableRun { report: b.finish(), table })
}

pub(super) fn decomposition(s: &Session, f: &Fixture) -> Result<TableRun> {
    let space = f.space()?;
    let k = f.degree()?;
    let mut b = ReportBuilder::new(&f.table_id);
    let (target, parts) = f
        .rows
        .split_first()
        .ok_or_else(|| Error::Parse(format!("{} is empty", f.table_id)))?;
    let mut rows = vec![Row::new(target.label.clone(), target.coords.clone())];
    let mut classes = Vec::new();
    for part in parts {
        let stated = class_from_signed(space, k, &part.coords)?;
        if let Some(p) = &part.profile {
            let profile = p.to_profile(space)?;
            let c = if p.quadric {
                proper_transform_quadric(&profile, p.assume_feasible)?
            } else {
                proper_transform_linear(&profile)?
            };
            let got = to_i64(&signed_ints(&c)?)?;
            check_row(&mut b, part, &got);
            rows.push(Row::new(part.label.clone(), got));
        } else {
            rows.push(Row::new(part.label.clone(), part.coords.clone()));
        }
        classes.push(stated);
    }
    let t = class_from_signed(space, k, &target.coords)?;
    let d = decomposition_check(&t, &classes)?;
    let names: Vec<&str> = parts.iter().map(|p| p.label.as_str()).collect();
    b.check(
        "sum",
        d.holds,
        format!("{} = {}", target.label, names.join(" + ")),
        if d.holds { String::new() } else { format!("residual {}", fmt_vec(&signed_ints(&d.residual)?)) },
    );

    let lin = s.lin(space, k)?;
    let v = lin.violation(&ints(&target.coords));
    b.check(
        "in the dual cone",
        v.is_none(),
        format!("{} pairs nonnegatively with Lin_{k}", target.label),
        v.map(|v| v.describe(&target.label)).unwrap_or_default(),
    );

    if let Some(id) = f.param_str("dual") {
        let dual = s.fixtures().get(id)?;
        let listed = dual.rows.iter().find(|r| r.label == target.label);
        b.check(
            &format!("listed in {id}"),
            listed.is_some_and(|r| r.coords == target.coords),
            format!("{} appears in {id} with the same coordinates", target.label),
            "",
        );
        let corrected = dual
            .params
            .get("corrected")
            .and_then(|c| c.get(&target.label))
            .map(|c| serde_json::from_value::<Vec<i64>>(c.clone()))
            .transpose()?;
        if let Some(c) = corrected {
            let cc = class_from_signed(space, k, &c)?;
            let holds = decomposition_check(&cc, &classes)?.holds;
            b.check(
                "corrected sum",
                holds,
                format!("{} = {} for the corrected {}", fmt_vec(&c), names.join(" + "), target.label),
                "",
            );
            let labels = signed_basis_labels(&space, k)?;
            let differ: Vec<&str> = c
                .iter()
                .zip(&target.coords)
                .zip(&labels)
                .filter(|((a, b), _)| a != b)
                .map(|(_, l)| l.as_str())
                .collect();
            if !differ.is_empty() {
                b.note(format!("the table row and the corrected {} differ in columns {}", target.label, differ.join(", ")));
            }
        }
    }

    let table = computed(f, signed_basis_labels(&space, k)?, rows, vec![]);
    Ok(TableRun { report: b.finish(), table })
}

pub(super) fn selfint(s: &Session, f: &Fixture) -> Result<TableRun> {
    let n = f.param_usize("n")?;
    let deg = f.param_usize("degree")? as i64;
    let mult = f.param_usize("mult")? as i64;
    let mut b = ReportBuilder::new(&f.table_id);
    let mut rows = Vec::new();
    for row in &f.rows {
        if !row.label.starts_with("r=") {
            continue;
        }
        let r = *row.coords.first().ok_or_else(|| Error::Parse("empty row".into()))? as usize;
        let x = SpaceSignature::new(n, r, 0)?;
        let d = hypersurface_divisor(x, deg, &vec![mult; r], &[])?;
        let value = d.self_intersection_number()?;
        let got = vec![r as i64, q_to_i64(&value)?];
        check_row(&mut b, row, &got);
        rows.push(Row::new(row.label.clone(), got));
        if value.is_negative() {
            let lin = s.lin(x, 1)?;
            let v = lin.violation(&signed_ints(&d)?);
            b.check(
                &format!("{} in Lin_1^*", row.label),
                v.is_none(),
                format!("D = {} pairs nonnegatively with every linear curve on {x}", fmt_vec(&signed_ints(&d)?)),
                v.map(|v| v.describe("D")).unwrap_or_default(),
            );
        }
    }
    if let Ok(r) = f.param_usize("squareR") {
        let x = SpaceSignature::new(n, r, 0)?;
        let d = hypersurface_divisor(x, deg, &vec![mult; r], &[])?;
        let got = to_i64(&signed_ints(&d.power(2)?)?)?;
        match f.rows.iter().find(|row| !row.label.starts_with("r=")) {
            Some(row) => {
                check_row(&mut b, row, &got);
                rows.push(Row::new(row.label.clone(), got));
            }
            None => b.check("D^2", false, "the table has no row for D^2", ""),
        }
    }
    let groups = if rows.len() > 1 && f.groups.len() > 1 { f.groups.clone() } else { vec![] };
    let table = computed(f, f.columns.clone(), rows, groups);
    Ok(TableRun { report: b.finish(), table })
}

pub(super) fn antican(s: &Session, f: &Fixture) -> Result<TableRun> {
    let space = f.space()?;
    let deg = f.param_usize("degree")? as i64;
    let mult = f.param_usize("mult")? as i64;
    let mut b = ReportBuilder::new(&f.table_id);
    let d = hypersurface_divisor(space, deg, &vec![mult; space.r], &[])?;
    let top = q_to_i64(&d.power(space.n)?.top_degree()?)?;

    let mut gamma = vec![0i64; signed_basis_labels(&space, space.n - 1)?.len()];
    gamma[0] = 2;
    for g in gamma.iter_mut().skip(1).take(space.r) {
        *g = -1;
    }
    let gc = class_from_signed(space, space.n - 1, &gamma)?;
    let pairing = q_to_i64(&d.pair(&gc)?)?;

    let values = [top, pairing];
    let mut rows = Vec::new();
    for (row, v) in f.rows.iter().zip(values) {
        check_row(&mut b, row, &[v]);
        rows.push(Row::new(row.label.clone(), vec![v]));
    }
    if f.rows.len() != values.len() {
        b.check("shape", false, format!("expected {} rows", values.len()), "");
    }

    let lin = s.lin(space, space.n - 1)?;
    let orbits = lin.dual_orbits();
    let rays = orbits.compress(lin.dual_signed())?;
    let g = orbits.canonical(&ints(&gamma))?;
    b.check(
        "extremal curve",
        rays.contains(&g),
        format!("{} spans an extreme ray of the dual of the linear divisors", fmt_vec(&gamma)),
        "",
    );
    let table = computed(f, vec![], rows, vec![]);
    Ok(TableRun { report: b.finish(), table })
}

fn grass(src: &str) -> Result<Grassmannian> {
    Ok(parse_expression(&format!("{src}: s{{}}"))?.grass)
}

fn degree_of(expr: &str) -> Result<BigInt> {
    let expr = expr.trim();
    let rest = expr
        .strip_prefix("deg ")
        .ok_or_else(|| Error::Parse(format!("expected a degree in {expr:?}")))?;
    if rest.starts_with('G') {
        return Ok(schubert_degree(&Partition::empty(), grass(rest)?)?.into());
    }
    Err(Error::Parse(format!("{expr:?} needs a Grassmannian")))
}

/// Evaluates a row label: a product on a Grassmannian, a degree, or a
/// strict comparison `deg sP < deg G(a,n)` giving 1 or 0.
fn schubert_value(label: &str) -> Result<BigInt> {
    if let Some((lhs, rhs)) = label.split_once(" < ") {
        let right = rhs.trim().strip_prefix("deg ").unwrap_or(rhs);
        let g = grass(right)?;
        let class = lhs.trim().strip_prefix("deg ").unwrap_or(lhs);
        let e = parse_expression(&format!("{right}: {class}"))?;
        let mut left = BigInt::from(0);
        for (p, c) in e.value.terms() {
            left += BigInt::from(c.clone()) * BigInt::from(schubert_degree(p, g)?);
        }
        return Ok(BigInt::from((left < degree_of(rhs)?) as i64));
    }
    if label.starts_with("deg ") {
        return degree_of(label);
    }
    Ok(parse_expression(label)?.value.point_coefficient().into())
}

pub(super) fn schubert(f: &Fixture) -> Result<TableRun> {
    let mut b = ReportBuilder::new(&f.table_id);
    let mut rows = Vec::new();
    for row in &f.rows {
        let got = to_i64(&[schubert_value(&row.label)?])?;
        check_row(&mut b, row, &got);
        rows.push(Row::new(row.label.clone(), got));
    }
    let table = computed(f, vec![], rows, vec![]);
    Ok(TableRun { report: b.finish(), table })
}

pub(super) fn expected_codim(f: &Fixture) -> Result<TableRun> {
    let mut b = ReportBuilder::new(&f.table_id);
    let mut rows = Vec::new();
    for row in &f.rows {
        let [k, big_n, n, dim] = row.coords[..] else {
            return Err(Error::Parse(format!("row {} needs k, N, n, dim", row.label)));
        };
        let rep = transversality_report(k as usize, big_n as usize, n as usize)?;
        check_row(&mut b, row, &[k, big_n, n, rep.dim_worked]);
        b.check(
            &format!("vertex-term k={k} N={big_n} n={n}"),
            rep.consistent(),
            format!("the stated vertex codimension gives dimension {} against {dim}", rep.dim_stated),
            rep.to_string(),
        );
        rows.push(Row::new(row.label.clone(), vec![k, big_n, n, rep.dim_worked]));
        rows.push(Row::new(format!("{} stated", row.label), vec![k, big_n, n, rep.dim_stated]));
    }
    let table = computed(f, f.columns.clone(), rows, vec![]);
    Ok(TableRun { report: b.finish(), table })
}

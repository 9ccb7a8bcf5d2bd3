//! Re-derivation of the published classification results, grouped so that
//! subsets can be run on their own. Any mismatch makes the run exit with 1.

use crate::commands::{fmt_weight, to_json, verify_report, Outcome};
use clap::ValueEnum;
use negric::approaches::{orbit_check, scan, verify_finiteness_r, FINITENESS_BUDGET};
use negric::config::Config;
use negric::repweights::{HighestWeight, WeightSystem};
use negric::rootsys::{build_root_datum, positive_roots_from_cartan, Family, SemisimpleType, SimpleType};
use negric::Result;
use serde::Serialize;
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    /// Uncertified sets of the rank-2 scans.
    Rank2,
    /// The su(2) family.
    Su2,
    /// Orbit witnesses for multiples of fundamental weights.
    Fundamental,
    /// Finiteness radii for G2 and F4.
    Finiteness,
    /// Negative Ricci certificates.
    Certificates,
    /// Root systems regenerated from Cartan matrices.
    Cartan,
}

const ALL: [Group; 6] =
    [Group::Cartan, Group::Rank2, Group::Su2, Group::Fundamental, Group::Finiteness, Group::Certificates];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub group: Group,
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Serialize)]
struct Bundle {
    groups: Vec<Group>,
    checks: Vec<Check>,
    passed: usize,
    failed: usize,
}

fn check(out: &mut Vec<Check>, group: Group, name: String, expected: String, observed: String) {
    let pass = expected == observed;
    out.push(Check { group, name, expected, observed, pass });
}

fn simple(family: Family, rank: usize) -> Result<SemisimpleType> {
    Ok(SemisimpleType::simple(SimpleType::new(family, rank)?))
}

fn weights_list(ws: &[Vec<i64>]) -> String {
    let parts: Vec<String> = ws.iter().map(|w| fmt_weight(w)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cartan_group(inject: bool, out: &mut Vec<Check>) -> Result<()> {
    for (family, count) in [(Family::A, 3usize), (Family::B, 4), (Family::G, 6)] {
        let t = simple(family, 2)?;
        let mut cartan = build_root_datum(&t)?.cartan_matrix().to_vec();
        if inject && family == Family::G {
            cartan[1][0] = -4;
        }
        let observed = match positive_roots_from_cartan(&cartan, 64) {
            Ok(r) => format!("{} positive roots", r.len()),
            Err(e) => format!("error: {e}"),
        };
        check(out, Group::Cartan, format!("{t} root system"), format!("{count} positive roots"), observed);
    }
    Ok(())
}

fn rank2_group(cfg: &Config, out: &mut Vec<Check>) -> Result<()> {
    let expected: [(Family, &[&[i64]]); 3] = [
        (Family::A, &[&[0, 0], &[0, 1], &[1, 0]]),
        (Family::B, &[&[0, 0], &[0, 1], &[1, 0]]),
        (Family::G, &[&[0, 0], &[1, 0]]),
    ];
    for (family, exp) in expected {
        let t = simple(family, 2)?;
        let rows = scan(&t, 5, cfg.support_cap)?;
        let unc: Vec<Vec<i64>> = rows.iter().filter(|r| !r.certified).map(|r| r.lambda.clone()).collect();
        let exp: Vec<Vec<i64>> = exp.iter().map(|w| w.to_vec()).collect();
        check(
            out,
            Group::Rank2,
            format!("{t} uncertified, coefficients up to 5"),
            weights_list(&exp),
            weights_list(&unc),
        );
    }
    Ok(())
}

fn su2_group(cfg: &Config, out: &mut Vec<Check>) -> Result<()> {
    let t = simple(Family::A, 1)?;
    let d = Arc::new(build_root_datum(&t)?);
    for a in 1..=10 {
        let ws = WeightSystem::with_cap(&HighestWeight::new(d.clone(), vec![a])?, cfg.support_cap)?;
        let w = negric::approaches::chamber_check(&ws);
        let observed = w.map_or("none".to_string(), |w| fmt_weight(&w));
        check(out, Group::Su2, format!("A1 chamber witness for {a}w1"), fmt_weight(&[a]), observed);
    }
    let rows = scan(&t, 5, cfg.support_cap)?;
    let unc: Vec<Vec<i64>> = rows.iter().filter(|r| !r.certified).map(|r| r.lambda.clone()).collect();
    check(out, Group::Su2, "A1 uncertified, coefficients up to 5".into(), weights_list(&[vec![0]]), weights_list(&unc));
    Ok(())
}

fn fundamental_group(cfg: &Config, out: &mut Vec<Check>) -> Result<()> {
    let mut types = Vec::new();
    for rank in 2..=4 {
        for family in [Family::A, Family::B, Family::C] {
            types.push(simple(family, rank)?);
        }
    }
    types.push(simple(Family::D, 4)?);
    let mut failures = Vec::new();
    let mut total = 0;
    for t in &types {
        let d = Arc::new(build_root_datum(t)?);
        for p in 0..d.rank() {
            for a in [2, 3] {
                let mut l = vec![0; d.rank()];
                l[p] = a;
                let ws = WeightSystem::with_cap(&HighestWeight::new(d.clone(), l.clone())?, cfg.support_cap)?;
                total += 1;
                if orbit_check(&ws)?.is_none() {
                    failures.push(format!("{t} {}", fmt_weight(&l)));
                }
            }
        }
    }
    check(
        out,
        Group::Fundamental,
        format!("orbit witness for a*w_p, a in {{2,3}}, {} classical types of rank 2-4", types.len()),
        format!("{total} of {total}"),
        format!(
            "{} of {total}{}",
            total - failures.len(),
            if failures.is_empty() { String::new() } else { format!(", missing {}", failures.join("; ")) }
        ),
    );
    Ok(())
}

fn finiteness_group(out: &mut Vec<Check>) -> Result<()> {
    for (family, rank, r, expected) in [(Family::G, 2, 3, true), (Family::F, 4, 8, true), (Family::G, 2, 1, false)] {
        let t = SimpleType::new(family, rank)?;
        let observed = match verify_finiteness_r(t, r, FINITENESS_BUDGET) {
            Ok(b) => b.to_string(),
            Err(e) => format!("error: {e}"),
        };
        check(out, Group::Finiteness, format!("{t} with r = {r}"), expected.to_string(), observed);
    }
    Ok(())
}

fn certificates_group(cfg: &Config, out: &mut Vec<Check>) -> Result<()> {
    for (ty, lambda, dim) in [("A1", "1", 8), ("A1", "2", 10), ("A1", "3", 12), ("G2", "0,1", 43)] {
        let observed = match verify_report(ty, lambda, cfg) {
            Ok((r, _)) => format!("dim {}, negative definite {}", r.dim, r.found),
            Err(e) => format!("error: {e}"),
        };
        check(
            out,
            Group::Certificates,
            format!("{ty} lambda=({lambda})"),
            format!("dim {dim}, negative definite true"),
            observed,
        );
    }
    Ok(())
}

pub fn checks(only: Option<Group>, inject_wrong_cartan: bool, cfg: &Config) -> Result<(Vec<Group>, Vec<Check>)> {
    let groups: Vec<Group> = only.map_or(ALL.to_vec(), |g| vec![g]);
    let mut out = Vec::new();
    for g in &groups {
        match g {
            Group::Cartan => cartan_group(inject_wrong_cartan, &mut out)?,
            Group::Rank2 => rank2_group(cfg, &mut out)?,
            Group::Su2 => su2_group(cfg, &mut out)?,
            Group::Fundamental => fundamental_group(cfg, &mut out)?,
            Group::Finiteness => finiteness_group(&mut out)?,
            Group::Certificates => certificates_group(cfg, &mut out)?,
        }
    }
    Ok((groups, out))
}

pub fn run(only: Option<Group>, inject_wrong_cartan: bool, cfg: &Config) -> Result<Outcome> {
    let (groups, checks) = checks(only, inject_wrong_cartan, cfg)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut text = String::new();
    for c in &checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        let group = serde_json::to_value(c.group).map(|v| v.as_str().unwrap_or("").to_string()).unwrap_or_default();
        let _ = writeln!(text, "[{tag}] {group}: {}", c.name);
        if !c.pass {
            let _ = writeln!(text, "       expected {}, observed {}", c.expected, c.observed);
        }
    }
    let _ = writeln!(text, "{} of {} checks passed", checks.len() - failed, checks.len());
    let bundle = Bundle { groups, passed: checks.len() - failed, failed, checks };
    Ok(Outcome { json: to_json(&bundle)?, file: None, text, code: if failed == 0 { 0 } else { 1 } })
}

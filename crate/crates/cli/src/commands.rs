use negric::approaches::{classify_system, scan as scan_grid, ApproachReport};
use negric::config::Config;
use negric::metric::{build_l, find_negative_ricci, ricci_oracle, RootScalars, SearchOutcome};
use negric::repbuild::{build_rep, check_six_conditions, SixReport, SIX_TOL};
use negric::repweights::{HighestWeight, WeightSystem};
use negric::rootsys::{build_root_datum, parse_coords, weyl_orbit, SemisimpleType};
use negric::{Error, Result};
use serde::Serialize;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

/// Result of a subcommand. `file` replaces `json` in `--out` files when the
/// report carries fields that vary between identical runs.
pub struct Outcome {
    pub json: String,
    pub file: Option<String>,
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, text: String, code: u8) -> Result<Self> {
        Ok(Outcome { json: to_json(value)?, file: None, text, code })
    }

    pub fn file_json(&self) -> String {
        let mut s = self.file.clone().unwrap_or_else(|| self.json.clone());
        s.push('\n');
        s
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))
}

pub fn parse_type(ty: &str) -> Result<SemisimpleType> {
    ty.parse()
}

pub fn highest_weight(ty: &str, lambda: &str) -> Result<HighestWeight> {
    let d = Arc::new(build_root_datum(&parse_type(ty)?)?);
    HighestWeight::new(d, parse_coords(lambda)?)
}

pub fn fmt_weight(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Classification row with the list of successful approaches.
#[derive(Serialize)]
pub struct ClassifyRow {
    #[serde(flatten)]
    pub report: ApproachReport,
    pub certified_by: Vec<&'static str>,
}

impl From<ApproachReport> for ClassifyRow {
    fn from(report: ApproachReport) -> Self {
        ClassifyRow { certified_by: report.certified_by(), report }
    }
}

fn describe(r: &ApproachReport) -> String {
    let opt = |w: &Option<Vec<i64>>| w.as_ref().map_or("none".to_string(), |w| fmt_weight(w));
    let mut s = String::new();
    let verdict = if r.certified {
        format!("certified by {}", r.certified_by().join(", "))
    } else {
        "uncertified by all approaches".to_string()
    };
    let _ = writeln!(s, "{} lambda={} dim={}: {verdict}", r.ty, fmt_weight(&r.lambda), r.dim);
    let _ = writeln!(s, "  chamber witness: {}", opt(&r.chamber));
    let _ = writeln!(s, "  orbit witness:   {}", opt(&r.orbit));
    let _ = writeln!(s, "  zero weight:     {}", if r.zero { "yes" } else { "no" });
    s
}

pub fn classify(ty: &str, lambda: &str, cfg: &Config) -> Result<Outcome> {
    let hw = highest_weight(ty, lambda)?;
    let report = classify_system(&WeightSystem::with_cap(&hw, cfg.support_cap)?)?;
    let code = if report.certified { 0 } else { 2 };
    let text = describe(&report);
    Outcome::new(&ClassifyRow::from(report), text, code)
}

#[derive(Serialize)]
struct ScanReport {
    #[serde(rename = "type")]
    ty: String,
    max_coeff: i64,
    rows: Vec<ClassifyRow>,
    uncertified: Vec<Vec<i64>>,
}

pub fn scan(ty: &str, max_coeff: i64, cfg: &Config) -> Result<Outcome> {
    let t = parse_type(ty)?;
    let rows = scan_grid(&t, max_coeff, cfg.support_cap)?;
    let uncertified: Vec<Vec<i64>> = rows.iter().filter(|r| !r.certified).map(|r| r.lambda.clone()).collect();
    let mut text = String::new();
    let _ =
        writeln!(text, "{:<16} {:>12}  {:<16} {:<16} {:<5} certified_by", "lambda", "dim", "chamber", "orbit", "zero");
    for r in &rows {
        let opt = |w: &Option<Vec<i64>>| w.as_ref().map_or("-".to_string(), |w| fmt_weight(w));
        let by = r.certified_by();
        let _ = writeln!(
            text,
            "{:<16} {:>12}  {:<16} {:<16} {:<5} {}",
            fmt_weight(&r.lambda),
            r.dim,
            opt(&r.chamber),
            opt(&r.orbit),
            if r.zero { "yes" } else { "no" },
            if by.is_empty() { "-".to_string() } else { by.join(",") }
        );
    }
    let list: Vec<String> = uncertified.iter().map(|w| fmt_weight(w)).collect();
    let _ = writeln!(text, "uncertified: {{{}}}", list.join(", "));
    let report = ScanReport {
        ty: t.to_string(),
        max_coeff,
        rows: rows.into_iter().map(ClassifyRow::from).collect(),
        uncertified,
    };
    Outcome::new(&report, text, 0)
}

#[derive(Serialize)]
struct WeightEntry {
    mu: Vec<i64>,
    mult: u64,
}

#[derive(Serialize)]
struct WeightsReport {
    lambda: Vec<i64>,
    dim: u128,
    dominant_support: Vec<WeightEntry>,
}

pub fn weights(ty: &str, lambda: &str, cfg: &Config) -> Result<Outcome> {
    let hw = highest_weight(ty, lambda)?;
    let ws = WeightSystem::with_cap(&hw, cfg.support_cap)?;
    let report = WeightsReport {
        lambda: hw.coords().to_vec(),
        dim: ws.dim(),
        dominant_support: ws
            .dominant_support()
            .iter()
            .map(|e| WeightEntry { mu: e.mu.clone(), mult: e.mult })
            .collect(),
    };
    let mut text = format!("lambda={} dim={}\n", fmt_weight(&report.lambda), report.dim);
    for e in &report.dominant_support {
        let _ = writeln!(text, "  {:<16} mult {}", fmt_weight(&e.mu), e.mult);
    }
    Outcome::new(&report, text, 0)
}

pub fn rep(ty: &str, lambda: &str, cfg: &Config) -> Result<Outcome> {
    let hw = highest_weight(ty, lambda)?;
    let r = build_rep(&hw, cfg.rep_dim_cap)?;
    let value = r.to_json();
    let text = format!(
        "{} lambda={}: complex dim {}, real dim {}, {} weight spaces, orthonormality residual {:.1e}\n",
        hw.datum().semisimple_type(),
        fmt_weight(hw.coords()),
        r.dim_c(),
        2 * r.dim_c(),
        r.basis.weights.len(),
        r.orthonormality_residual
    );
    Outcome::new(&value, text, 0)
}

#[derive(Serialize, Clone)]
pub struct MetricParams {
    pub names: Vec<String>,
    pub scalars: Vec<f64>,
}

#[derive(Serialize, Clone)]
pub struct VerifyReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub lambda: Vec<i64>,
    pub dim: usize,
    pub approaches: Vec<&'static str>,
    /// The approach whose weight splitting was used; `null` when none applies.
    pub certified_by: Option<&'static str>,
    pub splitting: Vec<Vec<i64>>,
    pub six_conditions: Vec<f64>,
    pub found: bool,
    pub metric_params: Option<MetricParams>,
    pub ricci_eigenvalues: Vec<f64>,
    pub max_eig: Option<f64>,
    pub spectral_radius: Option<f64>,
    pub seed: u64,
    pub restart: Option<usize>,
    pub evaluations: usize,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

/// Weights spanning `V₁` for one approach.
fn splitting(hw: &HighestWeight, approach: &str, r: &ApproachReport, cfg: &Config) -> Result<Vec<Vec<i64>>> {
    let d = hw.datum();
    match approach {
        "chamber" => Ok(vec![r.chamber.clone().expect("chamber witness")]),
        "orbit" => weyl_orbit(d, r.orbit.as_ref().expect("orbit witness"), cfg.orbit_cap),
        _ => Ok(vec![vec![0; d.rank()]]),
    }
}

pub fn verify_report(ty: &str, lambda: &str, cfg: &Config) -> Result<(VerifyReport, u8)> {
    let hw = highest_weight(ty, lambda)?;
    let ws = WeightSystem::with_cap(&hw, cfg.support_cap)?;
    let classes = classify_system(&ws)?;
    let mut report = VerifyReport {
        ty: classes.ty.clone(),
        lambda: classes.lambda.clone(),
        dim: 0,
        approaches: classes.certified_by(),
        certified_by: None,
        splitting: vec![],
        six_conditions: vec![],
        found: false,
        metric_params: None,
        ricci_eigenvalues: vec![],
        max_eig: None,
        spectral_radius: None,
        seed: cfg.seed,
        restart: None,
        evaluations: 0,
        message: String::new(),
        runtime_ms: None,
    };
    if !classes.certified {
        report.message = "uncertified by all approaches".into();
        return Ok((report, 2));
    }
    let module = build_rep(&hw, cfg.rep_dim_cap)?;
    let real = module.realify();
    let mut chosen: Option<(&'static str, Vec<Vec<i64>>, SixReport)> = None;
    for approach in classes.certified_by() {
        let s = splitting(&hw, approach, &classes, cfg)?;
        let six = check_six_conditions(&real, &s, SIX_TOL)?;
        if six.all_pass() {
            chosen = Some((approach, s, six));
            break;
        }
    }
    let Some((approach, s, six)) = chosen else {
        return Err(Error::Internal("no certifying splitting satisfies the six conditions".into()));
    };
    report.certified_by = Some(approach);
    report.six_conditions = six.conditions.iter().map(|c| c.residual).collect();
    report.splitting = s.clone();

    let l = build_l(&[&module], &[1.0])?;
    let jac = l.algebra.jacobi_residual();
    if jac > cfg.jacobi_tol * l.algebra.scale().max(1.0).powi(2) {
        return Err(Error::Internal(format!("Jacobi residual {jac:e} of the constructed algebra")));
    }
    report.dim = l.algebra.dim();
    let family = l.family(0, &s, RootScalars::SplitXY)?;
    let (cert, found) = match find_negative_ricci(&family, &cfg.search())? {
        SearchOutcome::Found(c) => (c, true),
        SearchOutcome::NotFound(c) => (c, false),
    };
    if found {
        let g = family.metric(&cert.params)?;
        let slow = ricci_oracle(&l.algebra, &g)?;
        let fast = cert.report.operator();
        let dev = (&fast - &slow).amax();
        if dev > cfg.ricci_oracle_tol * slow.amax().max(1e-300) {
            return Err(Error::Internal(format!("Ricci operator disagrees with the oracle by {dev:e}")));
        }
    }
    report.found = found;
    report.metric_params =
        Some(MetricParams { names: cert.params.names.clone(), scalars: cert.params.scalars.clone() });
    report.max_eig = Some(cert.report.max_eigenvalue());
    report.spectral_radius = Some(cert.report.spectral_radius());
    report.ricci_eigenvalues = cert.report.eigenvalues.clone();
    report.restart = Some(cert.restart);
    report.evaluations = cert.evaluations;
    report.message = if found {
        "negative definite Ricci operator".into()
    } else {
        "no negative Ricci metric found in the search family".into()
    };
    Ok((report, if found { 0 } else { 2 }))
}

pub fn verify(ty: &str, lambda: &str, cfg: &Config) -> Result<Outcome> {
    let start = Instant::now();
    let (mut report, code) = verify_report(ty, lambda, cfg)?;
    let file = to_json(&report)?;
    report.runtime_ms = Some(start.elapsed().as_millis() as u64);
    let mut text = format!("{} lambda={}: {}\n", report.ty, fmt_weight(&report.lambda), report.message);
    if let Some(a) = report.certified_by {
        let _ = writeln!(text, "  splitting from the {a} approach, V1 weights {}", report.splitting.len());
    }
    if let (Some(p), Some(m)) = (&report.metric_params, report.max_eig) {
        let restart = report.restart.unwrap_or(0);
        let _ = writeln!(text, "  dim l = {}, seed {}, restart {restart}", report.dim, report.seed);
        for (n, v) in p.names.iter().zip(&p.scalars) {
            let _ = writeln!(text, "  {n:<10} {v:.6e}");
        }
        let _ =
            writeln!(text, "  max eigenvalue {m:.6e}, spectral radius {:.6e}", report.spectral_radius.unwrap_or(0.0));
    }
    let mut out = Outcome::new(&report, text, code)?;
    out.file = Some(file);
    Ok(out)
}

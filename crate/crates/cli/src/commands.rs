use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use corona_core::koszul::{check_range_kernel, check_rank_one_identity};
use corona_core::kset::{decompose, is_algebra_set, KSet};
use corona_core::ring::{sup_norm_estimate, GRat, GridSpec};
use corona_core::solve::{residual_ok, solve_instance, Certificate, Mode, SolveError};
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::files::{load_instance, load_report, to_sorted_json, RadicalExponents, Report, Status, FORMAT_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

/// Result of one command: exit status, a human-readable summary, and an
/// optional machine-readable report.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub code: i32,
    pub text: String,
    pub json: Option<String>,
}

impl CommandOutput {
    fn input_error(msg: impl Into<String>) -> Self {
        CommandOutput { code: EXIT_INPUT, text: format!("error: {}\n", msg.into()), json: None }
    }
}

/// Parses `1,2,5` (whitespace tolerated, empty string is the empty list).
pub fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("bad integer {t:?}: {e}")))
        .collect()
}

pub enum KSpec {
    Set(String),
    ComplementGenerators(String),
}

pub fn check_k(k: &KSpec) -> CommandOutput {
    match k {
        KSpec::Set(s) => {
            let set = match parse_list(s).and_then(|v| KSet::new(v).map_err(|e| e.to_string())) {
                Ok(k) => k,
                Err(e) => return CommandOutput::input_error(e),
            };
            let verdict = is_algebra_set(&set);
            let mut text = format!("K = {set}\nalgebra: {}\n", verdict.is_algebra());
            let pair = verdict.counterexample();
            if let Some((j, k)) = pair {
                let _ = writeln!(text, "counterexample: {j} and {k} lie outside K, {} lies in K", j + k);
            }
            let report = json!({
                "set": set,
                "algebra": verdict.is_algebra(),
                "counterexample": pair.map(|(j, k)| [j, k]),
            });
            CommandOutput {
                code: if verdict.is_algebra() { EXIT_OK } else { EXIT_FAILED },
                text,
                json: Some(to_sorted_json(&report)),
            }
        }
        KSpec::ComplementGenerators(s) => {
            let gens = match parse_list(s) {
                Ok(g) => g,
                Err(e) => return CommandOutput::input_error(e),
            };
            let (data, gaps) = match decompose(&gens) {
                Ok(x) => x,
                Err(e) => return CommandOutput::input_error(e.to_string()),
            };
            let text = format!(
                "complement generated by {gens:?}\nalgebra: true\nd = {}\nn values below n0 = {:?}\nn0 = {}\nK_1 = {gaps}\n",
                data.d, data.n_values, data.n0
            );
            let report = json!({
                "complement_generators": gens,
                "algebra": true,
                "semigroup": data,
                "k1": gaps,
            });
            CommandOutput { code: EXIT_OK, text, json: Some(to_sorted_json(&report)) }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub mode: Option<Mode>,
    pub grid_points: Option<usize>,
    pub timings: bool,
}

fn with_points(grid: &GridSpec, points: Option<usize>) -> Result<GridSpec, String> {
    match points {
        None => Ok(grid.clone()),
        Some(p) => GridSpec::new(grid.circles.clone(), p).map_err(|e| e.to_string()),
    }
}

fn exit_for_error(e: &SolveError) -> (i32, Status) {
    match e {
        _ if e.is_refusal() => (EXIT_REFUSED, Status::Refused),
        SolveError::HypothesisFailed(_) => (EXIT_FAILED, Status::HypothesisFailed),
        SolveError::Input(_)
        | SolveError::Hypothesis(_)
        | SolveError::InvalidK { .. }
        | SolveError::KSet(_)
        | SolveError::Blaschke(_) => (EXIT_INPUT, Status::Failed),
        _ => (EXIT_FAILED, Status::Failed),
    }
}

/// Builds the report for one instance file; `solve` and `verify` share it.
pub fn solve_report(path: &Path, opts: &SolveOptions) -> Result<(i32, Report), CommandOutput> {
    let file = load_instance(path).map_err(|e| CommandOutput::input_error(e.to_string()))?;
    let mode = opts.mode.or(file.mode).unwrap_or(Mode::Treil);
    let grid = with_points(&file.grid, opts.grid_points).map_err(CommandOutput::input_error)?;
    let norm_grid = with_points(&GridSpec::default(), opts.grid_points).map_err(CommandOutput::input_error)?;
    let start = Instant::now();
    let result = solve_instance(&file.instance, mode, &grid, &norm_grid);
    let elapsed = start.elapsed().as_secs_f64();
    let mut report = Report {
        version: FORMAT_VERSION,
        mode,
        status: Status::Failed,
        ok: false,
        instance: file.instance,
        grid,
        norm_grid,
        hypothesis: None,
        certificate: None,
        radical: None,
        error: None,
        timings: opts.timings.then(|| BTreeMap::from([("solve_seconds".to_string(), elapsed)])),
    };
    let code = match result {
        Ok(outcome) => {
            report.ok = outcome.certificate.ok();
            report.status = if report.ok { Status::Certified } else { Status::CertificateFailed };
            report.hypothesis = Some(outcome.hypothesis);
            report.certificate = Some(outcome.certificate);
            report.radical = outcome.radical_q.zip(outcome.radical_l).map(|(q, l)| RadicalExponents { q, l });
            if report.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let (code, status) = exit_for_error(&e);
            report.status = status;
            if let SolveError::HypothesisFailed(h) = &e {
                report.hypothesis = Some((**h).clone());
            }
            report.error = Some(e.to_string());
            code
        }
    };
    Ok((code, report))
}

fn describe(report: &Report) -> String {
    let mut t = format!("mode: {}\nstatus: {:?}\n", report.mode.name(), report.status);
    if let Some(h) = &report.hypothesis {
        let _ = writeln!(t, "hypothesis: {} (margin {:.6e})", if h.ok { "holds" } else { "fails" }, h.margin);
        if !h.ok {
            let _ = writeln!(t, "diagnostic: {}", h.diagnostic());
        }
    }
    if let Some(c) = &report.certificate {
        let _ = writeln!(t, "route: {}", c.route);
        let _ = writeln!(t, "V = {}", serde_json::to_string(&c.v).unwrap_or_default());
        let _ = writeln!(t, "target: h^{}", c.target_exponent);
        let _ = writeln!(t, "residual exact: {}", c.residual_ok);
        let _ = writeln!(t, "membership: {}", c.membership_ok);
        let _ =
            writeln!(t, "sup |V| = {:.9} <= bound {:.9} [{}]: {}", c.sup_norm_v, c.bound, c.bound_formula, c.bound_ok);
        if let Some(s) = c.stated_bound {
            let _ = writeln!(t, "alternative bound (1 + 1/|c|) |G| = {s:.9}");
        }
        if !c.kernel_checks.is_empty() {
            let steps: Vec<String> = c.kernel_checks.iter().map(|k| format!("k={}:{}", k.k, k.holds)).collect();
            let _ = writeln!(t, "kernel identity: {}", steps.join(" "));
        }
    }
    if let Some(r) = &report.radical {
        let _ = writeln!(t, "radical exponents: q = {}, L = {}", r.q, r.l);
    }
    if let Some(e) = &report.error {
        let _ = writeln!(t, "error: {e}");
    }
    t
}

pub fn solve(path: &Path, opts: &SolveOptions) -> CommandOutput {
    match solve_report(path, opts) {
        Ok((code, report)) => CommandOutput { code, text: describe(&report), json: Some(to_sorted_json(&report)) },
        Err(out) => out,
    }
}

/// Random vector with small Gaussian-rational entries, about a fifth of them zero.
pub fn random_grat_vector(rng: &mut impl Rng, n: usize) -> Vec<GRat> {
    (0..n)
        .map(|_| {
            if rng.gen_ratio(1, 5) {
                return GRat::zero();
            }
            let mut part = || BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=9).into());
            GRat::new(part(), part())
        })
        .collect()
}

pub const KOSZUL_MAX_DIM: usize = 8;

/// Range-kernel identity at every grade and the rank-one identity for
/// `trials` seeded random pairs in dimension `dim`.
pub fn koszul_verify(dim: usize, trials: usize, seed: u64) -> CommandOutput {
    if !(2..=KOSZUL_MAX_DIM).contains(&dim) {
        return CommandOutput::input_error(format!("--dim must lie in 2..={KOSZUL_MAX_DIM}, got {dim}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let a = random_grat_vector(&mut rng, dim);
        let b = random_grat_vector(&mut rng, dim);
        for k in 0..dim - 1 {
            if !check_range_kernel(&a, k).unwrap_or(false) {
                return koszul_failure(trial, &a, &b, &format!("range-kernel at grade {k}"));
            }
        }
        if !check_rank_one_identity(&a, &b).unwrap_or(false) {
            return koszul_failure(trial, &a, &b, "rank-one identity (grade 1)");
        }
    }
    CommandOutput {
        code: EXIT_OK,
        text: format!("n = {dim}: {trials} trials, seed {seed}: all identities hold\n"),
        json: None,
    }
}

fn koszul_failure(trial: usize, a: &[GRat], b: &[GRat], what: &str) -> CommandOutput {
    CommandOutput {
        code: EXIT_FAILED,
        text: format!(
            "trial {trial}: {what} fails\nA = {}\nB = {}\n",
            serde_json::to_string(a).unwrap_or_default(),
            serde_json::to_string(b).unwrap_or_default()
        ),
        json: None,
    }
}

const FLOAT_REL_TOL: f64 = 1e-9;

fn float_eq(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= FLOAT_REL_TOL * a.abs().max(b.abs()).max(1.0)
}

fn opt_float_eq(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => float_eq(x, y),
        (None, None) => true,
        _ => false,
    }
}

/// Field-level differences between a stored and a recomputed certificate.
pub fn certificate_diff(stored: &Certificate, fresh: &Certificate) -> Vec<String> {
    let mut diffs = Vec::new();
    let mut check = |name: &str, same: bool, a: String, b: String| {
        if !same {
            diffs.push(format!("{name}: stored {a}, recomputed {b}"));
        }
    };
    check("V", stored.v == fresh.v, js(&stored.v), js(&fresh.v));
    check(
        "target_exponent",
        stored.target_exponent == fresh.target_exponent,
        js(&stored.target_exponent),
        js(&fresh.target_exponent),
    );
    check("residual_ok", stored.residual_ok == fresh.residual_ok, js(&stored.residual_ok), js(&fresh.residual_ok));
    check(
        "membership_ok",
        stored.membership_ok == fresh.membership_ok,
        js(&stored.membership_ok),
        js(&fresh.membership_ok),
    );
    check("sup_norm_v", float_eq(stored.sup_norm_v, fresh.sup_norm_v), js(&stored.sup_norm_v), js(&fresh.sup_norm_v));
    check("bound", float_eq(stored.bound, fresh.bound), js(&stored.bound), js(&fresh.bound));
    check(
        "bound_formula",
        stored.bound_formula == fresh.bound_formula,
        js(&stored.bound_formula),
        js(&fresh.bound_formula),
    );
    check(
        "stated_bound",
        opt_float_eq(stored.stated_bound, fresh.stated_bound),
        js(&stored.stated_bound),
        js(&fresh.stated_bound),
    );
    check("bound_ok", stored.bound_ok == fresh.bound_ok, js(&stored.bound_ok), js(&fresh.bound_ok));
    check(
        "hypothesis_margin",
        float_eq(stored.hypothesis_margin, fresh.hypothesis_margin),
        js(&stored.hypothesis_margin),
        js(&fresh.hypothesis_margin),
    );
    check("route", stored.route == fresh.route, js(&stored.route), js(&fresh.route));
    check(
        "kernel_checks",
        stored.kernel_checks == fresh.kernel_checks,
        js(&stored.kernel_checks),
        js(&fresh.kernel_checks),
    );
    check("base_sources", stored.base_sources == fresh.base_sources, js(&stored.base_sources), js(&fresh.base_sources));
    diffs
}

fn js<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

/// Re-checks a stored report: the residual, membership and norm of the
/// stored `V` directly, then every certificate field against a fresh solve.
pub fn verify(path: &Path) -> CommandOutput {
    let report = match load_report(path) {
        Ok(r) => r,
        Err(e) => return CommandOutput::input_error(e.to_string()),
    };
    let Some(stored) = &report.certificate else {
        return CommandOutput::input_error(format!("{}: report holds no certificate", path.display()));
    };
    let inst = &report.instance;
    let mut diffs = Vec::new();
    let residual = residual_ok(&inst.f, &inst.h, stored.target_exponent, &stored.v);
    if residual != stored.residual_ok {
        diffs.push(format!("residual_ok: stored {}, recomputed {residual} from the stored V", stored.residual_ok));
    }
    let membership = inst.algebra.contains_all(&stored.v);
    if membership != stored.membership_ok {
        diffs
            .push(format!("membership_ok: stored {}, recomputed {membership} from the stored V", stored.membership_ok));
    }
    let sup = sup_norm_estimate(&stored.v, &report.norm_grid);
    if !float_eq(sup, stored.sup_norm_v) {
        diffs.push(format!("sup_norm_v: stored {}, recomputed {sup} from the stored V", stored.sup_norm_v));
    }
    match solve_instance(inst, report.mode, &report.grid, &report.norm_grid) {
        Ok(outcome) => {
            for d in certificate_diff(stored, &outcome.certificate) {
                if !diffs.iter().any(|x| x.split(':').next() == d.split(':').next()) {
                    diffs.push(d);
                }
            }
            if report.ok != outcome.certificate.ok() {
                diffs.push(format!("ok: stored {}, recomputed {}", report.ok, outcome.certificate.ok()));
            }
        }
        Err(e) => diffs.push(format!("solve: stored certificate, recomputation fails: {e}")),
    }
    let valid = residual && membership && stored.bound_ok && stored.kernel_checks.iter().all(|k| k.holds);
    let mut text = String::new();
    if diffs.is_empty() {
        let _ = writeln!(text, "certificate reproduces");
    } else {
        let _ = writeln!(text, "certificate does not reproduce:");
        for d in &diffs {
            let _ = writeln!(text, "  {d}");
        }
    }
    if diffs.is_empty() && !valid {
        let _ = writeln!(text, "the reproduced certificate does not certify the solution");
    }
    let code = if diffs.is_empty() && valid { EXIT_OK } else { EXIT_FAILED };
    let json = to_sorted_json(&json!({ "reproduces": diffs.is_empty(), "valid": valid, "diffs": diffs }));
    CommandOutput { code, text, json: Some(json) }
}

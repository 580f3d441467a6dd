use std::path::Path;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use theta_dp::closed_forms::{
    amgm_bound, chromatic_poly_theta, dp_theta3, dual_dp_generalized, sufficiency_check,
};
use theta_dp::cover::Cover;
use theta_dp::error::Error;
use theta_dp::optimizer::{adherence_scan, maximize, minimize, SearchOptions};
use theta_dp::perm::Perm;
use theta_dp::rearrangement::{
    aligned_maximum_check, fg_minimum, h_equality_check, k3_failure_search, ri_check, triple_sum,
    Parity, StepVector,
};
use theta_dp::signature::{extremal_signature_max, extremal_signature_min_theta3};
use theta_dp::theta::ThetaSpec;

use crate::report::RunReport;
use crate::{Cli, Command, Quantity};

/// Exit status: all verdicts passed.
pub const EXIT_OK: u8 = 0;
/// Exit status: a mathematical verdict failed.
pub const EXIT_VERDICT_FAILED: u8 = 1;
/// Exit status: bad input or a refused search.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub status: u8,
}

/// Runs one command. `command_line` is echoed into the report.
pub fn run(cli: &Cli, command_line: &str) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut report = RunReport {
        command: command_line.to_string(),
        ..Default::default()
    };
    let opts = cli.search_options();
    let mut cell_errors = false;
    match &cli.command {
        Command::Values {
            spec,
            folds,
            which,
            force_exhaustive,
        } => {
            let parsed: ThetaSpec = spec.parse()?;
            record_search_inputs(&mut report, &opts);
            report.input("spec", &parsed);
            report.input("folds", join(folds.values()));
            report.input(
                "which",
                which
                    .iter()
                    .map(|q| q.column())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            report.input("force_exhaustive", force_exhaustive);
            cell_errors = values(
                &mut report,
                &parsed,
                &folds.values(),
                which,
                *force_exhaustive,
                &opts,
            );
        }
        Command::VerifyCounterexamples { graph, m, scan } => {
            record_search_inputs(&mut report, &opts);
            report.input("m", m);
            report.input("mode", if *scan { "exploratory" } else { "assert" });
            cell_errors = verify_counterexamples(&mut report, *graph, *m, *scan, &opts)?;
        }
        Command::Oracle { cover, pins } => oracle(&mut report, cover, pins)?,
        Command::Scan { spec, folds } => {
            let parsed: ThetaSpec = spec.parse()?;
            record_search_inputs(&mut report, &opts);
            report.input("spec", &parsed);
            report.input("folds", join(folds.values()));
            report.columns = ["m", "P", "P_DP", "equal"].map(String::from).to_vec();
            for row in adherence_scan(&parsed, folds.values(), &opts)? {
                let (min, equal) = match &row.minimum {
                    Ok(v) => (v.to_string(), (*v == row.chromatic).to_string()),
                    Err(e) => {
                        cell_errors = true;
                        (format!("error: {e}"), String::new())
                    }
                };
                report.rows.push(vec![
                    row.m.to_string(),
                    row.chromatic.to_string(),
                    min,
                    equal,
                ]);
            }
        }
        Command::RearrangeCheck {
            instances,
            seed,
            k3_bound,
            k3_len,
        } => rearrange_check(&mut report, *instances, *seed, *k3_bound, *k3_len as usize)?,
    }
    report.timing_ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    let status = if cell_errors {
        EXIT_USAGE
    } else if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERDICT_FAILED
    };
    Ok(Outcome { report, status })
}

fn record_search_inputs(report: &mut RunReport, opts: &SearchOptions) {
    report.input("budget", opts.budget);
    report.input("symmetry", if opts.symmetry { "on" } else { "off" });
    report.input(
        "workers",
        opts.workers
            .map_or_else(|| "auto".to_string(), |w| w.to_string()),
    );
}

fn join(values: Vec<u32>) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn cell<T: ToString>(value: Result<T, Error>, failed: &mut bool) -> String {
    match value {
        Ok(v) => v.to_string(),
        Err(e) => {
            *failed = true;
            format!("error: {e}")
        }
    }
}

/// Fills the values table. Returns true if any cell failed.
fn values(
    report: &mut RunReport,
    spec: &ThetaSpec,
    folds: &[u32],
    which: &[Quantity],
    force_exhaustive: bool,
    opts: &SearchOptions,
) -> bool {
    let mut columns = vec!["m".to_string()];
    for q in which {
        columns.push(q.column().to_string());
        if matches!(q, Quantity::Dp | Quantity::DualDp) {
            columns.push(format!("{}_method", q.column()));
        }
    }
    report.columns = columns;

    let mut failed = false;
    for &m in folds {
        let mut row = vec![m.to_string()];
        for q in which {
            match q {
                Quantity::Chromatic => row.push(cell(chromatic_poly_theta(spec, m), &mut failed)),
                Quantity::AmGm => row.push(cell(amgm_bound(spec, m), &mut failed)),
                Quantity::Dp if spec.n() == 3 && !force_exhaustive => {
                    let r = dp_theta3(spec, m);
                    let method = r.as_ref().map_or(String::new(), |r| {
                        format!("closed-form:{}", r.case.as_str())
                    });
                    row.push(cell(r.map(|r| r.value), &mut failed));
                    row.push(method);
                    if let Ok(sig) = extremal_signature_min_theta3(spec, m) {
                        if m >= 3 {
                            report.witness(format!("P_DP m={m}"), sig);
                        }
                    }
                }
                Quantity::DualDp if !force_exhaustive => {
                    let r = dual_dp_generalized(spec, m);
                    let method = r.as_ref().map_or(String::new(), |r| {
                        format!("closed-form:{}", r.case.as_str())
                    });
                    if r.is_ok() {
                        report.witness(format!("P*_DP m={m}"), extremal_signature_max(spec, m));
                    }
                    row.push(cell(r.map(|r| r.value), &mut failed));
                    row.push(method);
                }
                Quantity::Dp | Quantity::DualDp => {
                    let r = if *q == Quantity::Dp {
                        minimize(spec, m, opts)
                    } else {
                        maximize(spec, m, opts)
                    };
                    if let Ok(found) = &r {
                        report.witness(format!("{} m={m}", q.column()), &found.witness);
                    }
                    row.push(cell(r.map(|r| r.optimum), &mut failed));
                    row.push("exhaustive".to_string());
                }
            }
        }
        report.rows.push(row);
    }
    failed
}

const COUNTEREXAMPLES: [(u8, &[u32]); 2] = [(1, &[2, 3, 3, 3, 2]), (2, &[2, 3, 3, 3, 3, 3, 2, 2])];

fn verify_counterexamples(
    report: &mut RunReport,
    graph: Option<u8>,
    m: u32,
    scan: bool,
    opts: &SearchOptions,
) -> Result<bool, CliError> {
    report.columns = ["graph", "m", "P", "P_DP", "AMGM", "sufficient", "explored"]
        .map(String::from)
        .to_vec();
    let mut failed = false;
    for (id, lengths) in COUNTEREXAMPLES {
        if graph.is_some_and(|g| g != id) {
            continue;
        }
        let spec = ThetaSpec::from_ordered(lengths)?;
        let p = chromatic_poly_theta(&spec, m)?;
        let sufficiency = sufficiency_check(&spec, m);
        let search = minimize(&spec, m, opts);
        let (bound, sufficient) = match &sufficiency {
            Ok(s) => (s.bound.to_string(), s.holds.to_string()),
            Err(e) => (format!("error: {e}"), String::new()),
        };
        let (min, explored) = match &search {
            Ok(r) => {
                report.witness(format!("P_DP {spec} m={m}"), &r.witness);
                (r.optimum.to_string(), r.explored.to_string())
            }
            Err(e) => {
                failed = true;
                (format!("error: {e}"), String::new())
            }
        };
        report.rows.push(vec![
            spec.to_string(),
            m.to_string(),
            p.to_string(),
            min,
            bound,
            sufficient,
            explored,
        ]);

        if scan {
            continue;
        }
        if let (Ok(s), Ok(r)) = (&sufficiency, &search) {
            let equal = r.optimum == p;
            let detail = if equal && s.holds {
                format!("P_DP(G,{m})=P(G,{m})={p}")
            } else {
                format!(
                    "P_DP(G,{m})={}, P(G,{m})={p}, AM-GM bound {} (sufficient: {})",
                    r.optimum, s.bound, s.holds
                )
            };
            report.verdict(spec.to_string(), equal && s.holds, detail);
        } else if let Err(e) = &sufficiency {
            report.verdict(spec.to_string(), false, e.to_string());
        }
    }
    Ok(failed)
}

fn oracle(report: &mut RunReport, path: &Path, pins: &[usize]) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let cover = Cover::from_text(&text)?;
    let violations = cover.validate();
    if !violations.is_empty() {
        return Err(
            Error::InvalidCover(violations.iter().map(ToString::to_string).collect()).into(),
        );
    }
    report.input("cover", path.display());
    report.input("base_vertices", cover.base.num_vertices());
    report.input(
        "fold",
        cover
            .fold()
            .map_or_else(|| "mixed".to_string(), |f| f.to_string()),
    );
    report.input("full", cover.is_full());
    report.columns = vec!["transversals".to_string()];
    let mut row = vec![cover.count_transversals().to_string()];
    if !pins.is_empty() {
        let size = cover.num_cover_vertices();
        if let Some(bad) = pins.iter().find(|&&p| p >= size) {
            return Err(CliError::Usage(format!(
                "pin {bad} is not a cover vertex (ids are 0..{size})"
            )));
        }
        report.input(
            "pins",
            pins.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(","),
        );
        let pinned = cover.count_pinned(pins);
        report.columns.push("pinned".to_string());
        report.columns.push("degenerate_pins".to_string());
        row.push(pinned.count.to_string());
        row.push(pinned.degenerate.to_string());
    }
    report.rows.push(row);
    Ok(())
}

fn random_perm(rng: &mut ChaCha8Rng, size: usize) -> Perm {
    let mut images: Vec<usize> = (0..size).collect();
    images.shuffle(rng);
    Perm::new(images).expect("shuffled identity")
}

fn random_parity(rng: &mut ChaCha8Rng) -> Parity {
    if rng.gen_bool(0.5) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

/// Three step vectors with `base(x1) ≤ base(x2), base(x3)`.
fn random_triple(rng: &mut ChaCha8Rng, parities: [Parity; 3]) -> Result<[StepVector; 3], Error> {
    let m = rng.gen_range(3..=6);
    let b1 = rng.gen_range(0..=10);
    Ok([
        StepVector::new(m, b1, parities[0])?,
        StepVector::new(m, rng.gen_range(b1..=10), parities[1])?,
        StepVector::new(m, rng.gen_range(b1..=10), parities[2])?,
    ])
}

fn rearrange_check(
    report: &mut RunReport,
    instances: usize,
    seed: u64,
    k3_bound: u64,
    k3_len: usize,
) -> Result<(), CliError> {
    report.input("instances", instances);
    report.input("seed", seed);
    report.input("k3_bound", k3_bound);
    report.input("k3_len", k3_len);
    report.columns = ["check", "instances", "violations"]
        .map(String::from)
        .to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let record = |report: &mut RunReport, name: &str, violations: usize| {
        report.rows.push(vec![
            name.to_string(),
            instances.to_string(),
            violations.to_string(),
        ]);
        report.verdict(
            name,
            violations == 0,
            format!("{violations} violations in {instances} instances"),
        );
    };

    let mut violations = 0;
    for _ in 0..instances {
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=6);
        let rows: Vec<Vec<u64>> = (0..k)
            .map(|_| {
                let mut r: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=9)).collect();
                r.sort_unstable();
                r
            })
            .collect();
        let perms: Vec<Perm> = (0..k).map(|_| random_perm(&mut rng, n)).collect();
        violations += usize::from(!ri_check(&rows, &perms)?.holds);
    }
    record(report, "rearrangement inequality", violations);

    let mut violations = 0;
    for _ in 0..instances {
        let parities = [(); 3].map(|_| random_parity(&mut rng));
        let [x1, x2, x3] = random_triple(&mut rng, parities)?;
        let fg = fg_minimum(&x1, &x2, &x3)?;
        let size = (x1.m() * x1.m()) as usize;
        for _ in 0..200 {
            let (s1, s2) = (random_perm(&mut rng, size), random_perm(&mut rng, size));
            if triple_sum(&x1, &x2, &x3, &s1, &s2)? < fg {
                violations += 1;
                break;
            }
        }
    }
    record(report, "f/g pairing is minimal", violations);

    let mut violations = 0;
    let both = [Parity::Odd, Parity::Even];
    for i in 0..instances {
        let parities = [both[i & 1], both[(i >> 1) & 1], both[(i >> 2) & 1]];
        let [x1, x2, x3] = random_triple(&mut rng, parities)?;
        violations += usize::from(!h_equality_check(&x1, &x2, &x3)?.equal);
    }
    record(report, "h pairing equals f/g pairing", violations);

    let mut violations = 0;
    for _ in 0..instances {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(2..=5);
        let xs = (0..n)
            .map(|_| StepVector::new(m, rng.gen_range(0..=10), random_parity(&mut rng)))
            .collect::<Result<Vec<_>, _>>()?;
        let perms: Vec<Perm> = (0..n)
            .map(|_| random_perm(&mut rng, (m * m) as usize))
            .collect();
        violations += usize::from(!aligned_maximum_check(&xs, &perms)?.holds);
    }
    record(report, "aligned pairing is maximal", violations);

    let name = "three rows: reversed pairing not minimal";
    match k3_failure_search(k3_bound, k3_len)? {
        Some(w) => {
            report.witness(
                format!("rows {:?} {:?} {:?}", w.rows[0], w.rows[1], w.rows[2]),
                format!("{};{}", w.sigma1, w.sigma2),
            );
            report.verdict(
                name,
                true,
                format!("sum {} below reversed sum {}", w.sum, w.reversed_sum),
            );
        }
        None => report.verdict(
            name,
            false,
            format!("no witness with entries up to {k3_bound} and length {k3_len}"),
        ),
    }
    Ok(())
}

//! `rq`: reports on Cayley graphs of `Q_{4m}` and the exceptional primes.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails
//! (oracle mismatch, route disagreement, fixture difference), 2 on invalid
//! input.

mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use report::{fmt_float, Envelope};
use rq_core::bounds::{self, ExceptionalVerdict};
use rq_core::families::{self, FamilyReport, PrimeFamily, DEFAULT_PRIME_BOUND};
use rq_core::fixture::{self, Table2Row, TABLE_X_MAX};
use rq_core::spectra::{self, RamanujanVerdict};
use rq_core::{oracle, CayleySubset, Error, Execution, Family};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "rq",
    version,
    about = "Spectra and Ramanujan bounds for Cayley graphs of generalized quaternion groups"
)]
struct Cli {
    /// Worker threads (1 runs sequentially). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Format {
    /// JSON envelope (default).
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// CSV table.
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum, lambda(S) and Ramanujan verdict of one subset.
    Spectrum {
        /// `m=<int>;pairs=<k1,...>;delta=<0|1>;ypairs=<k2,...>`
        #[arg(long)]
        subset: String,
        /// Also compare against the dense Jacobi spectrum.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Covalency bound l~ (family S) or l~' (family S').
    Lbound {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "s")]
        family: FamilyArg,
        /// Exhaustive enumeration (m <= 12).
        #[arg(long, conflicts_with = "closed_form")]
        exact: bool,
        /// Closed form (default).
        #[arg(long)]
        closed_form: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Whether l~' = l0 + 1 for a prime p.
    Exceptional {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[command(flatten)]
        format: Format,
    },
    /// The 54 quadratic families: thresholds, first primes, counts, densities.
    Table2 {
        #[arg(long, default_value_t = TABLE_X_MAX)]
        xmax: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
        prime_bound: u64,
        /// `all` or `r,c` pairs separated by `;`, e.g. `0,-5;9,7`.
        #[arg(long, default_value = "all", allow_hyphen_values = true)]
        rows: String,
        /// Compare with the table fixture (implied by --fixture).
        #[arg(long)]
        diff: bool,
        /// Fixture CSV; defaults to $RQ_FIXTURE_DIR/table2.csv, then the built-in copy.
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[command(flatten)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Spectral,
    Arithmetic,
    Both,
}

#[derive(Clone, Copy, Debug)]
struct FamilyArg(Family);

impl std::str::FromStr for FamilyArg {
    type Err = rq_core::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(FamilyArg)
    }
}

/// Rendered output plus the failed checks.
struct Outcome {
    text: String,
    failures: Vec<String>,
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| ((*k).to_owned(), v.clone()))
        .collect()
}

#[derive(Serialize)]
struct SpectrumResults {
    subset: String,
    m: u32,
    size: usize,
    profile: rq_core::CovalencyProfile,
    sigma: rq_core::SigmaCounts,
    generates: bool,
    linear_eigenvalues: [i64; 4],
    spectrum: Vec<Group>,
    lambda: f64,
    ramanujan_bound: f64,
    ramanujan: bool,
    extended_precision: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleCheck>,
}

#[derive(Serialize)]
struct Group {
    value: f64,
    multiplicity: usize,
}

#[derive(Serialize)]
struct OracleCheck {
    max_delta: f64,
    tolerance: f64,
    matches: bool,
}

fn cmd_spectrum(literal: &str, with_oracle: bool, format: Format) -> anyhow::Result<Outcome> {
    let s: CayleySubset = literal.parse()?;
    let spectrum = spectra::full_spectrum(&s);
    let verdict: RamanujanVerdict = spectra::ramanujan_verdict(&s)?;
    let oracle = if with_oracle {
        let delta = oracle::spectrum_delta(&s)?;
        Some(OracleCheck {
            max_delta: delta,
            tolerance: oracle::DEFAULT_MATCH_TOL,
            matches: delta <= oracle::DEFAULT_MATCH_TOL,
        })
    } else {
        None
    };
    let failures = match &oracle {
        Some(o) if !o.matches => vec![format!("oracle mismatch: max delta {:e}", o.max_delta)],
        _ => Vec::new(),
    };
    if format.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["value", "multiplicity"])?;
        for &(v, n) in &spectrum.groups {
            w.write_record([fmt_float(v), n.to_string()])?;
        }
        return Ok(Outcome {
            text: String::from_utf8(w.into_inner()?)?,
            failures,
        });
    }
    let results = SpectrumResults {
        subset: s.to_string(),
        m: s.m(),
        size: s.size(),
        profile: s.profile(),
        sigma: s.sigma_counts(),
        generates: s.generates(),
        linear_eigenvalues: spectra::one_dim_eigenvalues(&s),
        spectrum: spectrum
            .groups
            .iter()
            .map(|&(value, multiplicity)| Group {
                value,
                multiplicity,
            })
            .collect(),
        lambda: verdict.lambda,
        ramanujan_bound: verdict.bound,
        ramanujan: verdict.ramanujan,
        extended_precision: verdict.extended_precision,
        oracle,
    };
    let p = params(&[("subset", json!(literal)), ("oracle", json!(with_oracle))]);
    Ok(Outcome {
        text: Envelope::new("spectrum", p, results)?.to_json()?,
        failures,
    })
}

#[derive(Serialize)]
struct LboundResults {
    m: u32,
    family: Family,
    method: &'static str,
    l0: u64,
    /// `None` when the closed form does not determine the value.
    ltilde: Option<u64>,
    candidates: Vec<u64>,
    note: &'static str,
}

fn cmd_lbound(m: u32, family: Family, exact: bool, exec: Execution) -> anyhow::Result<Outcome> {
    if m == 0 {
        bail!(Error::OrderOutOfRange(0));
    }
    let l0 = bounds::trivial_bound(u64::from(m));
    let results = if exact {
        let v = u64::from(bounds::exact_ltilde(m, family, exec)?);
        LboundResults {
            m,
            family,
            method: "exact",
            l0,
            ltilde: Some(v),
            candidates: vec![v],
            note: "exhaustive enumeration",
        }
    } else {
        let (ltilde, candidates, note) = match family {
            Family::S => (Some(l0), vec![l0], "l~ = l0"),
            Family::SPrime if m % 2 == 0 => (Some(l0), vec![l0], "m even: l~' = l0"),
            Family::SPrime => {
                let p = u64::from(m);
                if p >= bounds::SCOPE_MIN_P && rq_core::primes::is_prime(p) {
                    let v = bounds::is_exceptional_spectral(p)?;
                    let l = if v.exceptional { l0 + 1 } else { l0 };
                    (Some(l), vec![l], "prime m >= 67: l0 + 1 iff exceptional")
                } else if m >= 65 {
                    (None, vec![l0, l0 + 1], "odd m >= 65: l0 or l0 + 1")
                } else {
                    (
                        None,
                        Vec::new(),
                        "odd m < 65: not determined by the closed form; use --exact",
                    )
                }
            }
        };
        LboundResults {
            m,
            family,
            method: "closed_form",
            l0,
            ltilde,
            candidates,
            note,
        }
    };
    let p = params(&[
        ("m", json!(m)),
        ("family", json!(family)),
        ("method", json!(results.method)),
    ]);
    Ok(Outcome {
        text: Envelope::new("lbound", p, results)?.to_json()?,
        failures: Vec::new(),
    })
}

#[derive(Serialize)]
struct ExceptionalResults {
    p: u64,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    l0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectral: Option<ExceptionalVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arithmetic: Option<ExceptionalVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

fn cmd_exceptional(p: u64, method: Method) -> anyhow::Result<Outcome> {
    let pr = params(&[
        ("p", json!(p)),
        ("method", json!(format!("{method:?}").to_lowercase())),
    ]);
    let mut results = ExceptionalResults {
        p,
        status: "ok",
        l0: None,
        spectral: None,
        arithmetic: None,
        agree: None,
    };
    let spectral = matches!(method, Method::Spectral | Method::Both)
        .then(|| bounds::is_exceptional_spectral(p));
    let arithmetic = matches!(method, Method::Arithmetic | Method::Both)
        .then(|| families::is_exceptional_arithmetic(p));
    for r in [&spectral, &arithmetic].into_iter().flatten() {
        match r {
            Err(Error::OutOfTheoremScope(_)) => {
                results.status = "out_of_scope";
                results.l0 = Some(bounds::trivial_bound(p));
                return Ok(Outcome {
                    text: Envelope::new("exceptional", pr, results)?.to_json()?,
                    failures: Vec::new(),
                });
            }
            Err(e) => bail!(e.clone()),
            Ok(_) => {}
        }
    }
    results.spectral = spectral.transpose()?;
    results.arithmetic = arithmetic.transpose()?;
    results.l0 = Some(bounds::trivial_bound(p));
    let mut failures = Vec::new();
    if let (Some(s), Some(a)) = (&results.spectral, &results.arithmetic) {
        results.agree = Some(s.exceptional == a.exceptional);
        if s.exceptional != a.exceptional {
            failures.push(format!("routes disagree for p = {p}"));
        }
    }
    Ok(Outcome {
        text: Envelope::new("exceptional", pr, results)?.to_json()?,
        failures,
    })
}

fn parse_rows(rows: &str) -> anyhow::Result<Vec<PrimeFamily>> {
    if rows.trim() == "all" {
        return Ok(families::all_families().to_vec());
    }
    rows.split(';')
        .map(|item| {
            let (r, c) = item
                .split_once(',')
                .with_context(|| format!("row `{item}` is not `r,c`"))?;
            let r: u32 = r
                .trim()
                .parse()
                .with_context(|| format!("bad r in `{item}`"))?;
            let c: i64 = c
                .trim()
                .parse()
                .with_context(|| format!("bad c in `{item}`"))?;
            Ok(families::family(r, c)?)
        })
        .collect()
}

#[derive(Serialize)]
struct TableRow {
    r: u32,
    c: i64,
    polynomial: String,
    k_threshold: u64,
    first_primes: Vec<u64>,
    n: u64,
    off_interval: Vec<u64>,
    hl_constant: f64,
    density: f64,
}

impl From<&FamilyReport> for TableRow {
    fn from(rep: &FamilyReport) -> Self {
        let f = rep.family;
        Self {
            r: f.r,
            c: f.c,
            polynomial: format!("36x^2+{}x{:+}", 3 * (f.r + 3), f.c),
            k_threshold: f.k_threshold,
            first_primes: rep.scan.first_primes.clone(),
            n: rep.scan.count,
            off_interval: rep.scan.off_interval.clone(),
            hl_constant: rep.hl_constant,
            density: rep.hl_density,
        }
    }
}

/// Differences against the fixture. Counts are compared only at the
/// fixture's `x_max`, first primes only once `x_max` covers them.
fn diff_rows(rows: &[TableRow], fixture: &[Table2Row], x_max: u64) -> Vec<String> {
    let mut out = Vec::new();
    for row in rows {
        let Some(f) = fixture.iter().find(|f| (f.r, f.c) == (row.r, row.c)) else {
            out.push(format!("({},{}): not in fixture", row.r, row.c));
            continue;
        };
        let tag = format!("({},{})", row.r, row.c);
        if row.k_threshold != f.k_threshold {
            out.push(format!(
                "{tag}: k_threshold {} vs {}",
                row.k_threshold, f.k_threshold
            ));
        }
        let expected: Vec<u64> = f
            .first_primes()
            .into_iter()
            .filter(|&p| p <= x_max)
            .collect();
        if row.first_primes != expected {
            out.push(format!(
                "{tag}: first primes {:?} vs {:?}",
                row.first_primes, expected
            ));
        }
        if x_max == TABLE_X_MAX && row.n != f.n {
            out.push(format!("{tag}: n {} vs {}", row.n, f.n));
        }
        if (row.density - f.density).abs() > 0.01 {
            out.push(format!(
                "{tag}: density {} vs {}",
                fmt_float(row.density),
                f.density
            ));
        }
    }
    if rows.len() == families::all_families().len() && fixture.len() != rows.len() {
        out.push(format!(
            "fixture has {} rows, expected {}",
            fixture.len(),
            rows.len()
        ));
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_table2(
    x_max: u64,
    prime_bound: u64,
    rows_arg: &str,
    diff: bool,
    fixture_path: Option<PathBuf>,
    format: Format,
    exec: Execution,
) -> anyhow::Result<Outcome> {
    if prime_bound < 1_000 {
        bail!("--prime-bound must be at least 1000");
    }
    let selected = parse_rows(rows_arg)?;
    let reports = families::table2(&selected, x_max, prime_bound, exec)?;
    let rows: Vec<TableRow> = reports.iter().map(TableRow::from).collect();
    let diff = diff || fixture_path.is_some();
    let failures = if diff {
        diff_rows(&rows, &fixture::load(fixture_path.as_deref())?, x_max)
    } else {
        Vec::new()
    };
    if format.json {
        let mut pr = params(&[
            ("xmax", json!(x_max)),
            ("prime_bound", json!(prime_bound)),
            ("rows", json!(rows_arg)),
            ("diff", json!(diff)),
        ]);
        if let Some(path) = fixture::resolve(fixture_path.as_deref()) {
            pr.insert("fixture".into(), json!(path.display().to_string()));
        }
        let results = json!({ "rows": rows, "failures": failures });
        return Ok(Outcome {
            text: Envelope::new("table2", pr, results)?.to_json()?,
            failures,
        });
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "r",
        "c",
        "k_threshold",
        "j1",
        "j2",
        "j3",
        "j4",
        "j5",
        "n",
        "density",
    ])?;
    for row in &rows {
        let mut rec = vec![
            row.r.to_string(),
            row.c.to_string(),
            row.k_threshold.to_string(),
        ];
        rec.extend((0..5).map(|i| {
            row.first_primes
                .get(i)
                .map_or(String::new(), u64::to_string)
        }));
        rec.push(row.n.to_string());
        rec.push(format!("{:.5}", row.density));
        w.write_record(&rec)?;
    }
    Ok(Outcome {
        text: String::from_utf8(w.into_inner()?)?,
        failures,
    })
}

fn run(cli: Cli, exec: Execution) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Spectrum {
            subset,
            oracle,
            format,
        } => cmd_spectrum(&subset, oracle, format),
        Command::Lbound {
            m,
            family,
            exact,
            format,
            ..
        } => {
            if format.csv {
                bail!("--csv is only available for spectrum and table2");
            }
            cmd_lbound(m, family.0, exact, exec)
        }
        Command::Exceptional { p, method, format } => {
            if format.csv {
                bail!("--csv is only available for spectrum and table2");
            }
            cmd_exceptional(p, method)
        }
        Command::Table2 {
            xmax,
            prime_bound,
            rows,
            diff,
            fixture,
            format,
        } => cmd_table2(xmax, prime_bound, &rows, diff, fixture, format, exec),
    }
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce(Execution) -> T + Send,
) -> anyhow::Result<T> {
    match threads {
        Some(0) => bail!("--threads must be positive"),
        Some(1) => Ok(f(Execution::Sequential)),
        #[cfg(feature = "parallel")]
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            Ok(pool.install(|| f(Execution::Parallel)))
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(f(Execution::Sequential)),
        None => Ok(f(Execution::Parallel)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = with_threads(cli.threads, |exec| run(cli, exec)).and_then(|r| r);
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                for f in &out.failures {
                    eprintln!("check failed: {f}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

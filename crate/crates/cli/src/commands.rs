use std::io::Write;
use std::path::Path;
use std::time::Instant;

use quatlie_core::error::Error;
use quatlie_core::json;
use quatlie_core::quaternification::{self, QuaternionLieAlgebra, BUILD_CHECKS, CHECK_NAMES};
use quatlie_core::realizations::{NamedKind, MAX_NAMED_N};
use quatlie_core::report::{CheckResult, Manifest};
use quatlie_core::rho;
use quatlie_core::roots::{cartan_matrix, positive_roots, weight_of, CartanMatrix, TypeLabel};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Everything that is not a failed check is a usage or input problem.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Verification(_)) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("QUATLIE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("QUATLIE_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

struct Timer(Instant);

impl Timer {
    fn start() -> Self {
        Timer(Instant::now())
    }

    fn lap(&mut self, m: &mut Manifest, stage: &str) {
        m.timings.insert(stage.to_string(), self.0.elapsed().as_millis() as u64);
        self.0 = Instant::now();
    }
}

fn emit(m: &Manifest, to_stderr: bool) {
    let s = serde_json::to_string_pretty(m).expect("manifest serializes");
    if to_stderr {
        eprintln!("{s}");
    } else {
        println!("{s}");
    }
}

fn summarize(c: &CheckResult) {
    let status = if c.passed { "PASS" } else { "FAIL" };
    eprintln!("{status} {} ({} instances, {} failures)", c.name, c.instances, c.failure_count);
    for f in &c.failures {
        eprintln!("  - {f}");
    }
}

fn run_checks(g: &QuaternionLieAlgebra, names: &[&str], m: &mut Manifest, t: &mut Timer) -> Result<()> {
    for name in names {
        let c = quaternification::run_check(g, name)?;
        summarize(&c);
        m.checks.push(c);
        t.lap(m, name);
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path, m: &mut Manifest) -> Result<QuaternionLieAlgebra> {
    let (g, _) = json::from_json(&read(path)?)?;
    m.input("in", path.display().to_string())
        .input("type", g.type_label.to_string())
        .input("rank", g.rank)
        .input("dim", g.dim());
    Ok(g)
}

pub fn build(t: TypeLabel, rank: usize, out: Option<&Path>) -> Result<bool> {
    let mut m = Manifest::new("build");
    m.input("type", t.to_string()).input("rank", rank);
    let mut timer = Timer::start();
    let g = quaternification::quaternify(t, rank)?;
    timer.lap(&mut m, "quaternify");
    eprintln!("built {t}{rank}: dim {} in gl({},H)", g.dim(), g.n);
    run_checks(&g, &BUILD_CHECKS, &mut m, &mut timer)?;
    let text = json::to_json(&g, Some(&m));
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            timer.lap(&mut m, "write");
            emit(&m, false);
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })?;
            emit(&m, true);
        }
    }
    Ok(m.all_passed())
}

pub fn verify(path: &Path, checks: Option<Vec<String>>) -> Result<bool> {
    let names: Vec<String> = match checks {
        Some(v) => v.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => CHECK_NAMES.iter().map(|s| s.to_string()).collect(),
    };
    if names.is_empty() {
        return Err(CliError::Usage("--checks is empty".into()));
    }
    if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(&n.as_str())) {
        return Err(CliError::Usage(format!(
            "unknown check {bad:?}; available: {}",
            CHECK_NAMES.join(",")
        )));
    }
    let mut m = Manifest::new("verify");
    m.input("checks", names.join(","));
    let mut timer = Timer::start();
    let g = load(path, &mut m)?;
    timer.lap(&mut m, "load");
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    run_checks(&g, &refs, &mut m, &mut timer)?;
    emit(&m, false);
    Ok(m.all_passed())
}

pub fn decompose(path: &Path) -> Result<bool> {
    let mut m = Manifest::new("decompose");
    let mut timer = Timer::start();
    let g = load(path, &mut m)?;
    timer.lap(&mut m, "load");
    eprintln!("k: dim {} (h_r {}, h_r^perp {})", g.k_part.len(), g.hr_basis.len(), g.hr_perp_basis.len());
    for w in &g.weight_spaces {
        eprintln!("weight {} (root {:?}): dim {}", w.weight, w.root.coeffs, w.indices.len());
    }
    if !g.residual.is_empty() {
        eprintln!("outside every weight space: dim {}", g.residual.len());
    }
    let mut map = CheckResult::new("weight-map");
    map.detail(
        "spaces",
        Value::Array(
            g.weight_spaces
                .iter()
                .map(|w| serde_json::json!({"weight": w.weight, "root": w.root, "indices": w.indices}))
                .collect(),
        ),
    )
    .detail("k", g.k_part.clone())
    .detail("h_r", g.hr_basis.clone())
    .detail("h_r_perp", g.hr_perp_basis.clone())
    .detail("residual", g.residual.clone());
    m.checks.push(map);
    run_checks(&g, &["decomposition", "k-structure", "triangular"], &mut m, &mut timer)?;
    emit(&m, false);
    Ok(m.all_passed())
}

pub fn roots(t: TypeLabel, rank: usize) -> Result<bool> {
    let cm = cartan_matrix(t, rank)?;
    let roots = positive_roots(&cm)?;
    println!("{t}{rank}: {} positive roots", roots.len());
    for r in &roots {
        let coeffs: Vec<String> = r.coeffs.iter().map(i64::to_string).collect();
        println!("  [{}]  height {}  weight {}", coeffs.join(","), r.height(), weight_of(r, &cm));
    }
    Ok(true)
}

fn parse_cartan(s: &str) -> Result<CartanMatrix> {
    let rows = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("--cartan {s:?}: {e}")))?;
    Ok(CartanMatrix::from_rows(rows)?)
}

pub fn rho_check(t: Option<TypeLabel>, rank: Option<usize>, cartan: Option<&str>, degree: usize) -> Result<bool> {
    let mut m = Manifest::new("rho-check");
    let cm = match (cartan, t, rank) {
        (Some(s), _, _) => {
            m.input("cartan", s);
            parse_cartan(s)?
        }
        (None, Some(t), Some(l)) => {
            m.input("type", t.to_string()).input("rank", l);
            cartan_matrix(t, l)?
        }
        _ => return Err(CliError::Usage("give --type and --rank, or --cartan".into())),
    };
    m.input("degree", degree);
    if degree < 2 {
        return Err(CliError::Usage("--degree must be at least 2".into()));
    }
    let mut timer = Timer::start();
    let reports = rho::verify_ideal_kernel(&cm, degree)?;
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    for r in &reports {
        let mut c = CheckResult::new(format!("ideal-kernel {}", r.family));
        c.detail("formula", r.formula.clone());
        c.instances = r.instances_checked;
        for f in &r.failures {
            c.fail(f.clone());
        }
        m.checks.push(c);
    }
    timer.lap(&mut m, "ideal-kernel");
    eprintln!("{} families, {failures} failures", reports.len());
    let ind = rho::verify_h_independence(&cm, degree)?;
    let mut c = CheckResult::new("h-independence");
    c.detail("rank_h", ind.rank_h)
        .detail("rank_Jh", ind.rank_jh)
        .detail("expected", ind.expected)
        .detail("words", ind.words);
    c.check(ind.rank_h == ind.expected, || format!("rank of rho(h_i) is {}, expected {}", ind.rank_h, ind.expected));
    c.check(ind.rank_jh == ind.expected, || {
        format!("rank of rho(Jh_i) is {}, expected {}", ind.rank_jh, ind.expected)
    });
    summarize(&c);
    m.checks.push(c);
    timer.lap(&mut m, "h-independence");
    emit(&m, false);
    Ok(m.all_passed())
}

fn preset_kind(name: &str) -> Result<NamedKind> {
    match name {
        "sl" => Ok(NamedKind::SlH),
        other => Ok(other.parse()?),
    }
}

pub fn closure(preset: &str, n: usize) -> Result<bool> {
    let kind = preset_kind(preset).map_err(|_| {
        let names: Vec<&str> = NamedKind::ALL.iter().map(|k| k.cli_name()).collect();
        CliError::Usage(format!("unknown preset {preset:?}; available: sl, {}", names.join(", ")))
    })?;
    if !(1..=MAX_NAMED_N).contains(&n) || (kind == NamedKind::SlH && n < 2) {
        return Err(CliError::Usage(format!("--n must be in 1..={MAX_NAMED_N} (at least 2 for sl)")));
    }
    let mut m = Manifest::new("closure");
    m.input("preset", kind.cli_name()).input("n", n);
    let mut timer = Timer::start();
    let c = quaternification::closure_preset(kind, n)?;
    timer.lap(&mut m, "closure");
    if kind == NamedKind::SlH {
        eprintln!(
            "closure dim {}, equals {}: {}",
            c.details["closure_dim"],
            kind.display(n),
            c.details["equals_target"]
        );
    } else {
        eprintln!(
            "{}: dim {}, closure dim {}",
            kind.display(n),
            c.details["dim"],
            c.details["closure_dim"]
        );
    }
    summarize(&c);
    m.checks.push(c);
    emit(&m, false);
    Ok(m.all_passed())
}

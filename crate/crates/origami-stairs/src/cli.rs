//! Command-line front end.  Every subcommand maps onto one library
//! operation; `--json` switches the report to machine-readable form
//! with the same verdict fields.  Exit codes: 0 pass, 1 check failed,
//! 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::approx::{approximation_report, IrrationalDirection};
use crate::classify::{classify_staircase_with, propose_staircase_with, Proposal};
use crate::cylinders::{
    cylinder_decomposition, find_single_cylinder_direction, no_single_cylinder_certificate,
    Certificate,
};
use crate::diffusion::{diffusion_experiment, start_point};
use crate::format::{parse_surface, SurfaceDocument};
use crate::profile::{cylinder_sums, koksma_verify};
use crate::slope::Slope;
use crate::sturmian::sturmian_lyndon;
use crate::trace::{ergodic_sum, ratio_f64, TracePoint};
use crate::{q, Q};

#[derive(Parser)]
#[command(name = "origami-stairs", version, about = "square-tiled surfaces and staircase covers")]
struct Cli {
    /// Emit machine-readable JSON instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Connectivity, stratum, genus, and single-cylinder obstructions.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = 30)]
        qmax: u64,
    },
    /// Search for a single-cylinder direction.
    SingleCylinder {
        file: PathBuf,
        #[arg(long, default_value_t = 30)]
        qmax: u64,
    },
    /// Cylinder decomposition in a rational direction.
    Decompose {
        file: PathBuf,
        /// Direction as rise/run, e.g. 3/2 (0/1 horizontal, 1/0 vertical).
        slope: String,
    },
    /// Periodic approximation of an irrational direction.
    Approx {
        file: PathBuf,
        /// Slope: a decimal like 1.6180339887, or cf:1,1,1,... partial quotients.
        theta: String,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        /// Decimal digits of theta to trust (decimal form only).
        #[arg(long, default_value_t = 15)]
        precision: usize,
    },
    /// Trace one geodesic and report its crossing sum.
    Simulate {
        file: PathBuf,
        /// Direction as dx,dy.
        #[arg(long)]
        dir: String,
        /// Start as square:x,y (defaults to a corner-avoiding point).
        #[arg(long)]
        start: Option<String>,
        /// Euclidean length to trace.
        #[arg(long, default_value = "1000")]
        t: String,
    },
    /// Ergodicity verdict for a staircase spec.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 30)]
        qmax: u64,
    },
    /// Exact profile check of the crossing-sum bound.
    VerifyKoksma {
        file: PathBuf,
        /// Direction as rise/run; defaults to a found single-cylinder one.
        #[arg(long)]
        slope: Option<String>,
        #[arg(long, default_value_t = 30)]
        qmax: u64,
        /// Write the profiles as CSV into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Construct a natural staircase with d generators, if possible.
    Propose {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 30)]
        qmax: u64,
    },
    /// Drift statistics over random directions.
    Diffusion {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        directions: usize,
        #[arg(long, default_value = "100000")]
        t: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write per-direction traces and a summary as CSV.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// 2 for anything that prevents the check from running.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.to_string())
    }
}

fn load(path: &Path) -> Result<SurfaceDocument, Usage> {
    let text = fs::read_to_string(path)
        .map_err(|e| Usage(format!("cannot read {}: {}", path.display(), e)))?;
    parse_surface(&text).map_err(|e| Usage(format!("{}: {}", path.display(), e)))
}

fn parse_slope(s: &str) -> Result<Slope, Usage> {
    let (rise, run) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let rise: u64 = rise.parse().map_err(|_| Usage(format!("bad slope `{}`", s)))?;
    let run: u64 = run.parse().map_err(|_| Usage(format!("bad slope `{}`", s)))?;
    Ok(Slope::new(rise, run)?)
}

fn parse_theta(s: &str, precision: usize) -> Result<IrrationalDirection, Usage> {
    if let Some(list) = s.strip_prefix("cf:") {
        let quots: Result<Vec<u64>, _> = list.split(',').map(str::parse).collect();
        let quots = quots.map_err(|_| Usage(format!("bad partial quotients `{}`", s)))?;
        return Ok(IrrationalDirection::from_partial_quotients(&quots)?);
    }
    let truncated = match s.split_once('.') {
        Some((int, frac)) if frac.len() > precision => {
            format!("{}.{}", int, &frac[..precision])
        }
        _ => s.to_string(),
    };
    Ok(IrrationalDirection::from_decimal_str(&truncated)?)
}

fn parse_time(s: &str) -> Result<Q, Usage> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: i128 = n.parse().map_err(|_| Usage(format!("bad time `{}`", s)))?;
    let d: i128 = d.parse().map_err(|_| Usage(format!("bad time `{}`", s)))?;
    if d <= 0 || n <= 0 {
        return Err(Usage(format!("time must be positive, got `{}`", s)));
    }
    Ok(q(n, d))
}

fn parse_start(s: &str) -> Result<TracePoint, Usage> {
    let bad = || Usage(format!("bad start `{}` (expected square:x,y)", s));
    let (sq, rest) = s.split_once(':').ok_or_else(bad)?;
    let (x, y) = rest.split_once(',').ok_or_else(bad)?;
    let parse_q = |t: &str| -> Result<Q, Usage> {
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n, d),
            None => (t, "1"),
        };
        Ok(q(
            n.parse().map_err(|_| bad())?,
            d.parse().map_err(|_| bad())?,
        ))
    };
    Ok(TracePoint::new(
        sq.parse().map_err(|_| bad())?,
        parse_q(x)?,
        parse_q(y)?,
    ))
}

fn emit<T: Serialize>(json: bool, value: &T, human: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{}", human);
    }
}

fn doc_name(doc: &SurfaceDocument, path: &Path) -> String {
    doc.name
        .clone()
        .unwrap_or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default())
}

pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with success exits
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {}", msg);
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, Usage> {
    match &cli.cmd {
        Cmd::Analyze { file, qmax } => analyze(cli.json, file, *qmax),
        Cmd::SingleCylinder { file, qmax } => single_cylinder(cli.json, file, *qmax),
        Cmd::Decompose { file, slope } => decompose(cli.json, file, slope),
        Cmd::Approx {
            file,
            theta,
            depth,
            precision,
        } => approx(cli.json, file, theta, *depth, *precision),
        Cmd::Simulate {
            file,
            dir,
            start,
            t,
        } => simulate(cli.json, file, dir, start.as_deref(), t),
        Cmd::Classify { file, qmax } => classify(cli.json, file, *qmax),
        Cmd::VerifyKoksma {
            file,
            slope,
            qmax,
            out_dir,
        } => verify_koksma(cli.json, file, slope.as_deref(), *qmax, out_dir.as_deref()),
        Cmd::Propose { file, d, qmax } => propose(cli.json, file, *d, *qmax),
        Cmd::Diffusion {
            file,
            directions,
            t,
            seed,
            out_dir,
        } => diffusion(cli.json, file, *directions, t, *seed, out_dir.as_deref()),
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    name: String,
    squares: usize,
    connected: bool,
    commutator: String,
    stratum: crate::surface::StratumReport,
    certificate: Option<Certificate>,
    single_cylinder_direction: Option<Slope>,
}

fn analyze(json: bool, file: &Path, qmax: u64) -> Result<i32, Usage> {
    let doc = load(file)?;
    let o = &doc.origami;
    let connected = o.is_connected();
    let (certificate, dir) = if connected {
        (
            Some(no_single_cylinder_certificate(o, qmax)?),
            find_single_cylinder_direction(o, qmax)?,
        )
    } else {
        (None, None)
    };
    let rep = AnalyzeReport {
        name: doc_name(&doc, file),
        squares: o.square_count(),
        connected,
        commutator: o.commutator().to_cycle_string(false),
        stratum: o.stratum_report(),
        certificate: certificate.clone(),
        single_cylinder_direction: dir,
    };
    let mut out = format!(
        "{}: {} squares, {}\ncommutator: {}\n",
        rep.name,
        rep.squares,
        if connected { "connected" } else { "disconnected" },
        rep.commutator
    );
    match o.stratum() {
        Ok(s) => {
            out += &format!(
                "stratum: {} (genus {}, {} regular vertices)\n",
                s.h_notation(),
                s.genus,
                s.regular_vertices.len()
            );
        }
        Err(_) => out += "stratum: per-component (disconnected)\n",
    }
    match (&certificate, dir) {
        (Some(Certificate::ParityObstruction), _) => {
            out += "no single-cylinder direction exists (parity obstruction)\n";
        }
        (_, Some(d)) => out += &format!("single-cylinder direction: {}\n", d),
        (Some(Certificate::ExhaustedSearch(b)), None) => {
            out += &format!("no single-cylinder direction with rise, run <= {}\n", b);
        }
        _ => {}
    }
    emit(json, &rep, out);
    Ok(0)
}

#[derive(Serialize)]
struct SingleCylinderReport {
    found: Option<Slope>,
    word: Option<String>,
    certificate: Certificate,
    qmax: u64,
}

fn single_cylinder(json: bool, file: &Path, qmax: u64) -> Result<i32, Usage> {
    let doc = load(file)?;
    let found = find_single_cylinder_direction(&doc.origami, qmax)?;
    let word = found.map(|s| {
        let steep = if s.is_steep() { s } else { s.transpose() };
        sturmian_lyndon(steep.run(), steep.rise()).expect("reduced").as_string()
    });
    let rep = SingleCylinderReport {
        found,
        word: word.clone(),
        certificate: no_single_cylinder_certificate(&doc.origami, qmax)?,
        qmax,
    };
    let human = match found {
        Some(s) => format!("{}\nword: {}\n", s, word.unwrap()),
        None => format!("none found ({:?})\n", rep.certificate),
    };
    emit(json, &rep, human);
    Ok(if found.is_some() { 0 } else { 1 })
}

fn decompose(json: bool, file: &Path, slope: &str) -> Result<i32, Usage> {
    let doc = load(file)?;
    let s = parse_slope(slope)?;
    let dec = cylinder_decomposition(&doc.origami, s)?;
    let mut human = format!(
        "direction {}: {} cylinder(s), total area {}\n",
        s,
        dec.cylinders.len(),
        dec.total_area
    );
    for (i, c) in dec.cylinders.iter().enumerate() {
        human += &format!(
            "  cylinder {}: area {}, height {}, width {}, squares {:?}\n",
            i, c.area, c.height, c.width, c.cycle
        );
    }
    emit(json, &dec, human);
    Ok(0)
}

fn approx(
    json: bool,
    file: &Path,
    theta: &str,
    depth: usize,
    precision: usize,
) -> Result<i32, Usage> {
    let doc = load(file)?;
    let theta = parse_theta(theta, precision)?;
    let rep = approximation_report(&doc.origami, &theta, depth)?;
    let mut human = format!(
        "theta = {} (theta' = {}), k = {}\n",
        rep.theta, rep.theta_prime, rep.square_count
    );
    for r in &rep.rows {
        human += &format!(
            "  n={:2} p/q={}/{} a_next={} E_n={:.6} bracket=[{:.6},{:.6}] {} {}\n",
            r.n,
            r.p,
            r.q,
            r.a_next,
            r.e_n,
            r.lower,
            r.upper,
            if r.in_bracket { "in" } else { "OUT" },
            if r.single_cylinder { "(single)" } else { "" },
        );
    }
    human += &format!(
        "good candidate: {}  fairly good: {}\n",
        rep.good_candidate, rep.fairly_good_candidate
    );
    emit(json, &rep, human);
    Ok(0)
}

fn simulate(
    json: bool,
    file: &Path,
    dir: &str,
    start: Option<&str>,
    t: &str,
) -> Result<i32, Usage> {
    let doc = load(file)?;
    let spec = doc.spec_or_trivial();
    let (dx, dy) = dir
        .split_once(',')
        .ok_or_else(|| Usage(format!("bad direction `{}` (expected dx,dy)", dir)))?;
    let dx: i64 = dx.parse().map_err(|_| Usage(format!("bad direction `{}`", dir)))?;
    let dy: i64 = dy.parse().map_err(|_| Usage(format!("bad direction `{}`", dir)))?;
    let start = match start {
        Some(s) => parse_start(s)?,
        None => start_point(),
    };
    let t = parse_time(t)?;
    let tr = ergodic_sum(&spec, start, (dx, dy), t)?;
    let human = format!(
        "status: {:?}\ntime covered: {:.3}\ncrossings: {}\nS = {:?}\nend: square {} at ({}, {})\n",
        tr.status,
        tr.euclidean_length(),
        tr.crossings.len(),
        tr.total.lift(),
        tr.end.square,
        tr.end.x,
        tr.end.y
    );
    emit(json, &tr, human);
    Ok(0)
}

fn classify(json: bool, file: &Path, qmax: u64) -> Result<i32, Usage> {
    let doc = load(file)?;
    let spec = doc.spec_or_trivial();
    let rep = classify_staircase_with(&spec, qmax)?;
    let mut human = format!("{:?}: {}\n", rep.verdict, rep.justification);
    if let Some(sup) = &rep.supplementary {
        human += &format!(
            "supplementary (direction {}): {} cylinders, integrals zero: {}, equal profiles: {}\n",
            sup.slope, sup.cylinder_count, sup.all_integrals_zero, sup.profiles_equal_as_multisets
        );
    }
    emit(json, &rep, human);
    Ok(0)
}

fn write_profiles_csv(dir: &Path, sums: &crate::profile::CylinderSums) -> Result<(), Usage> {
    fs::create_dir_all(dir)?;
    let mut csv = String::from("cylinder,lo,hi,sum\n");
    for p in &sums.profiles {
        for piece in &p.pieces {
            let coords: Vec<String> = piece.sum.lift().iter().map(i64::to_string).collect();
            csv += &format!(
                "{},{},{},{}\n",
                p.cylinder,
                ratio_f64(piece.lo),
                ratio_f64(piece.hi),
                coords.join(";")
            );
        }
    }
    fs::write(dir.join("profiles.csv"), csv)?;
    Ok(())
}

fn verify_koksma(
    json: bool,
    file: &Path,
    slope: Option<&str>,
    qmax: u64,
    out_dir: Option<&Path>,
) -> Result<i32, Usage> {
    let doc = load(file)?;
    let spec = doc.spec_or_trivial();
    let s = match slope {
        Some(s) => parse_slope(s)?,
        None => find_single_cylinder_direction(&spec.origami, qmax)?
            .ok_or_else(|| Usage(format!("no single-cylinder direction with rise, run <= {}", qmax)))?,
    };
    let rep = koksma_verify(&spec, s)?;
    if let Some(dir) = out_dir {
        write_profiles_csv(dir, &cylinder_sums(&spec, s)?)?;
    }
    let human = format!(
        "direction {}: bound {}, observed max {}, pieces {} -> {}\ncrossing counts within 2 of q*h: {}\n",
        rep.slope,
        rep.bound,
        rep.max_observed,
        rep.pieces,
        if rep.pass { "PASS" } else { "FAIL" },
        rep.crossing_counts_ok
    );
    emit(json, &rep, human);
    Ok(if rep.pass && rep.crossing_counts_ok { 0 } else { 1 })
}

fn propose(json: bool, file: &Path, d: usize, qmax: u64) -> Result<i32, Usage> {
    if d == 0 {
        return Err(Usage("d must be at least 1".into()));
    }
    let doc = load(file)?;
    let p = propose_staircase_with(&doc.origami, d, qmax)?;
    match &p {
        Proposal::Feasible {
            spec,
            classification,
        } => {
            let printed = crate::format::print_surface(&SurfaceDocument {
                name: doc.name.clone(),
                origami: spec.origami.clone(),
                spec: Some(spec.clone()),
                declared_stratum: None,
            });
            let human = format!(
                "feasible ({:?}: {})\n{}",
                classification.verdict, classification.justification, printed
            );
            emit(json, &p, human);
            Ok(0)
        }
        Proposal::Infeasible {
            reason,
            not_ergodic_warning,
        } => {
            let mut human = format!("infeasible: {:?}\n", reason);
            if *not_ergodic_warning {
                human += "warning: no natural staircase over this surface is ergodic in a.e. direction\n";
            }
            emit(json, &p, human);
            Ok(1)
        }
    }
}

fn diffusion(
    json: bool,
    file: &Path,
    directions: usize,
    t: &str,
    seed: u64,
    out_dir: Option<&Path>,
) -> Result<i32, Usage> {
    let doc = load(file)?;
    let spec = doc.spec_or_trivial();
    let t = parse_time(t)?;
    let rep = diffusion_experiment(&spec, directions, t, seed)?;
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
        let mut summary = String::from("p,q,drift_ratio,returns,max_excursion,final_norm\n");
        for d in &rep.directions {
            summary += &format!(
                "{},{},{},{},{},{}\n",
                d.p, d.q, d.drift_ratio, d.returns, d.max_excursion, d.final_norm
            );
            let mut csv = String::from("t,s,returns\n");
            for pt in &d.series {
                let coords: Vec<String> = pt.s.iter().map(i64::to_string).collect();
                csv += &format!("{},{},{}\n", pt.t, coords.join(";"), pt.returns);
            }
            fs::write(dir.join(format!("dir_{}_{}.csv", d.p, d.q)), csv)?;
        }
        fs::write(dir.join("summary.csv"), summary)?;
    }
    let mut human = format!(
        "{} directions, T = {}, seed {}\ndrift ratio: min {:.5} median {:.5} p90 {:.5} max {:.5}\nmedian returns: {}\n",
        rep.directions.len(),
        rep.t,
        rep.seed,
        rep.drift.min,
        rep.drift.median,
        rep.drift.p90,
        rep.drift.max,
        rep.returns_median
    );
    for d in &rep.directions {
        human += &format!(
            "  dir {:3},{:3}: drift {:.6} returns {} max |S| {}\n",
            d.p, d.q, d.drift_ratio, d.returns, d.max_excursion
        );
    }
    emit(json, &rep, human);
    Ok(0)
}

//! Command-line front end: argument parsing, the command runners and their
//! JSON, CSV and text renderings.

pub mod cache;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::filtration::{Filtration, FiltrationReport, SnfChoice};
use crate::group::build_parabolic_table;
use crate::identities::{verify_identity, IdentityCase, IdentityName, WRep};
use crate::lattice::Lattice;
use crate::modrep::{casa_check, explore_socle, gow_conjecture, is_irreducible, section6_suite};
use cache::CacheStatus;

/// Ambient composition series are computed up to this `|U|`.
pub const FULL_SERIES_LIMIT: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "steinberg", version, about = "Filtrations and modular reductions of the Steinberg lattice of GL_n(q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Smith form algorithm.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Which prime of `Z[zeta_p]` above `ell` to reduce at.
    #[arg(long, global = true, default_value_t = 0)]
    pub factor_index: usize,
    /// Gram cache directory (default: $STEINBERG_CACHE_DIR, else ./.steinberg-cache).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Local,
    Auto,
}

impl From<Mode> for SnfChoice {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => SnfChoice::Exact,
            Mode::Local => SnfChoice::Local,
            Mode::Auto => SnfChoice::Auto,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WRepArg {
    Signed,
    Perm,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Triple {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub ell: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parabolic indices [G:P_J] and their ell-valuations.
    Indices(Triple),
    /// Smith form valuations and the filtration levels.
    Filtration(Triple),
    /// Exact checks of the group and lattice identities.
    VerifyIdentities {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// Restrict to one identity (conj, commu, hola, hola2, hola3,
        /// ex1_first, ex1_second, ex2, c7).
        #[arg(long)]
        identity: Option<String>,
        /// Element standing for w_r in lattice identities.
        #[arg(long, value_enum, default_value_t = WRepArg::Signed)]
        wrep: WRepArg,
    },
    /// Irreducibility of every factor, the top-layer check and the
    /// self-duality suite.
    Conjecture {
        #[command(flatten)]
        triple: Triple,
        /// Compute the composition series of I bar (default: when |U| <= 64).
        #[arg(long)]
        full_series: Option<bool>,
    },
    /// Compares socles of the quotients I bar / S_i with the next layer.
    ExploreSocle(Triple),
    /// Filtration and factor verdicts over a grid.
    Sweep {
        /// Values or ranges, e.g. `2..4` or `2,3`.
        #[arg(long)]
        n: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        ell: String,
    },
}

/// Result of one command: the serializable payload, CSV rows, a text
/// rendering and the failed checks.
pub struct Outcome {
    pub value: Value,
    pub csv: Vec<Vec<String>>,
    pub text: String,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.value).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::new();
                for row in &self.csv {
                    s.push_str(&row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
                    s.push('\n');
                }
                s
            }
            Format::Text => self.text.clone(),
        }
    }
}

fn csv_field(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Parses `a..b` (inclusive) or a comma list of values and ranges.
pub fn parse_list(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::Invalid(format!("cannot parse list {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn cache_dir(g: &GlobalOpts) -> Option<PathBuf> {
    (!g.no_cache).then(|| cache::cache_dir(g.cache_dir.as_deref()))
}

fn check_triple(t: &Triple) -> Result<()> {
    if t.n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    build_parabolic_table(t.n, t.q, t.ell).map(|_| ())
}

/// Builds the filtration, going through the Gram cache.
pub fn build_filtration(t: &Triple, g: &GlobalOpts) -> Result<(Filtration, CacheStatus)> {
    check_triple(t)?;
    let lat = Arc::new(Lattice::new(t.n, t.q)?);
    let (gram, status) = cache::load_or_build(&lat, cache_dir(g).as_deref())?;
    let f = Filtration::new(lat, Arc::new(gram), t.ell, g.mode.into(), g.factor_index)?;
    Ok((f, status))
}

pub fn cmd_indices(t: &Triple) -> Result<Outcome> {
    check_triple(t)?;
    let table = build_parabolic_table(t.n, t.q, t.ell)?;
    let mut csv = vec![vec!["mask".into(), "J".into(), "P_over_B".into(), "G_over_P".into(), "nu".into()]];
    let mut text = format!("n={} q={} ell={}  kappa1={} kappa2={}\n", t.n, t.q, t.ell, table.kappa1, table.kappa2);
    let _ = writeln!(text, "{:<24} {:>16} {:>24} {:>4}", "J", "[P_J:B]", "[G:P_J]", "nu");
    for e in &table.entries {
        let j = format!("{{{}}}", e.roots.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","));
        let _ = writeln!(text, "{:<24} {:>16} {:>24} {:>4}", j, e.p_over_b.0, e.g_over_p.0, e.val);
        csv.push(vec![e.mask.to_string(), j, e.p_over_b.0.to_string(), e.g_over_p.0.to_string(), e.val.to_string()]);
    }
    let x: Vec<String> = table.levels.iter().map(|k| k.to_string()).collect();
    let _ = writeln!(text, "X = {{{}}}", x.join(", "));
    Ok(Outcome { value: to_value(&table), csv, text, failures: Vec::new() })
}

#[derive(Serialize)]
struct LevelOut {
    k: u32,
    #[serde(rename = "dimI")]
    dim_i: usize,
    #[serde(rename = "dimM")]
    dim_m: usize,
    #[serde(rename = "inX")]
    in_x: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    irreducible: Option<bool>,
}

#[derive(Serialize)]
struct FiltrationOut {
    n: usize,
    q: u32,
    ell: u32,
    mode: String,
    cache: CacheStatus,
    vals: std::collections::BTreeMap<u32, usize>,
    levels: Vec<LevelOut>,
    #[serde(rename = "X")]
    x: Vec<u32>,
    kappa1: u32,
    kappa2: u32,
    gow5_levels_match: bool,
    steinberg_simple: bool,
}

fn filtration_out(f: &Filtration, status: CacheStatus) -> Result<(FiltrationOut, FiltrationReport)> {
    let report = f.report();
    let attained = f.attained();
    let verdicts: Vec<(u32, bool)> = attained
        .par_iter()
        .map(|&k| Ok((k, is_irreducible(&f.factor_module(k)?.rep)?)))
        .collect::<Result<_>>()?;
    let levels = report
        .levels
        .iter()
        .map(|l| LevelOut {
            k: l.k,
            dim_i: l.dim_i,
            dim_m: l.dim_m,
            in_x: l.in_x,
            irreducible: verdicts.iter().find(|v| v.0 == l.k).map(|v| v.1),
        })
        .collect();
    let out = FiltrationOut {
        n: report.n,
        q: report.q,
        ell: report.ell,
        mode: report.mode.to_string(),
        cache: status,
        vals: report.vals.clone(),
        levels,
        x: report.x.clone(),
        kappa1: report.kappa1,
        kappa2: report.kappa2,
        gow5_levels_match: report.gow5_levels_match,
        steinberg_simple: report.steinberg_simple,
    };
    Ok((out, report))
}

fn filtration_failures(r: &FiltrationReport) -> Vec<String> {
    let mut out = Vec::new();
    let tag = format!("({},{},{})", r.n, r.q, r.ell);
    if !r.gow5_levels_match {
        out.push(format!("{tag}: attained levels differ from X"));
    }
    if r.levels.iter().any(|l| l.k > r.kappa1 && l.dim_i != 0) {
        out.push(format!("{tag}: I(k) nonzero above kappa1"));
    }
    out
}

const FILTRATION_CSV: [&str; 8] = ["n", "q", "ell", "k", "dimIk", "dimMk", "inX", "irreducible"];

fn filtration_rows(o: &FiltrationOut) -> Vec<Vec<String>> {
    o.levels
        .iter()
        .map(|l| {
            vec![
                o.n.to_string(),
                o.q.to_string(),
                o.ell.to_string(),
                l.k.to_string(),
                l.dim_i.to_string(),
                l.dim_m.to_string(),
                l.in_x.to_string(),
                l.irreducible.map(|b| b.to_string()).unwrap_or_default(),
            ]
        })
        .collect()
}

fn filtration_text(o: &FiltrationOut) -> String {
    let mut s = format!(
        "n={} q={} ell={}  mode={}  cache={}\nX={:?} kappa1={} kappa2={} levels_match={} steinberg_simple={}\n",
        o.n, o.q, o.ell, o.mode, o.cache.as_str(), o.x, o.kappa1, o.kappa2, o.gow5_levels_match, o.steinberg_simple
    );
    let _ = writeln!(s, "{:>4} {:>8} {:>8} {:>5} {:>12}", "k", "dimI(k)", "dimM(k)", "inX", "irreducible");
    for l in &o.levels {
        let irr = l.irreducible.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "{:>4} {:>8} {:>8} {:>5} {:>12}", l.k, l.dim_i, l.dim_m, l.in_x, irr);
    }
    s
}

pub fn cmd_filtration(t: &Triple, g: &GlobalOpts) -> Result<Outcome> {
    let (f, status) = build_filtration(t, g)?;
    let (out, report) = filtration_out(&f, status)?;
    let mut csv = vec![FILTRATION_CSV.iter().map(|s| s.to_string()).collect()];
    csv.extend(filtration_rows(&out));
    Ok(Outcome { text: filtration_text(&out), value: to_value(&out), csv, failures: filtration_failures(&report) })
}

fn identity_rows(cases: &[IdentityCase]) -> Vec<Vec<String>> {
    let mut rows = vec![["name", "n", "q", "params", "verdict", "position"].iter().map(|s| s.to_string()).collect()];
    for c in cases {
        rows.push(vec![
            c.name.as_str().into(),
            c.n.to_string(),
            c.q.to_string(),
            c.params.clone(),
            format!("{:?}", c.verdict).to_uppercase(),
            c.counterexample.as_ref().map(|m| m.position.to_string()).unwrap_or_default(),
        ]);
    }
    rows
}

pub fn cmd_verify_identities(n: usize, q: u32, identity: Option<&str>, wrep: WRepArg) -> Result<Outcome> {
    if n < 3 {
        return Err(Error::Precondition("identity commands need n >= 3".into()));
    }
    let names: Vec<IdentityName> = match identity {
        Some(s) => vec![s.parse()?],
        None => IdentityName::ALL.to_vec(),
    };
    let wrep = match wrep {
        WRepArg::Signed => WRep::Signed,
        WRepArg::Perm => WRep::Perm,
    };
    let lat = Lattice::new(n, q)?;
    let mut cases = Vec::new();
    for name in names {
        cases.extend(verify_identity(&lat, name, wrep)?);
    }
    let failures: Vec<String> = cases
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{} n={} q={} {}", c.name.as_str(), c.n, c.q, c.params))
        .collect();
    let mut text = String::new();
    for c in &cases {
        let _ = writeln!(text, "{:<10} {:<40} {:?}", c.name.as_str(), c.params, c.verdict);
    }
    let _ = writeln!(text, "{} cases, {} unequal", cases.len(), failures.len());
    #[derive(Serialize)]
    struct Out<'a> {
        n: usize,
        q: u32,
        wrep: WRep,
        cases: &'a [IdentityCase],
    }
    Ok(Outcome { value: to_value(&Out { n, q, wrep, cases: &cases }), csv: identity_rows(&cases), text, failures })
}

pub fn cmd_conjecture(t: &Triple, full_series: Option<bool>, g: &GlobalOpts) -> Result<Outcome> {
    let (f, _) = build_filtration(t, g)?;
    let full = full_series.unwrap_or(f.lat.size() <= FULL_SERIES_LIMIT);
    let gow = gow_conjecture(&f)?;
    let casa = if (t.q + 1) % t.ell == 0 { Some(casa_check(&f)?) } else { None };
    let s6 = section6_suite(&f, full)?;
    let tag = format!("({},{},{})", t.n, t.q, t.ell);
    let mut failures = Vec::new();
    for l in gow.levels.iter().filter(|l| !l.agree) {
        failures.push(format!("{tag}: parabolic criterion disagrees with eigen-line test at k={}", l.k));
    }
    if let Some(c) = &casa {
        if !c.passed() {
            failures.push(format!("{tag}: top layer S2/S1 check failed"));
        }
    }
    if !s6.passed() {
        failures.push(format!("{tag}: self-duality suite failed"));
    }
    let mut csv = vec![["n", "q", "ell", "k", "dimMk", "irreducible", "criterion", "agree"].iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    let mut text = format!("{tag}\n");
    for l in &gow.levels {
        csv.push(vec![
            t.n.to_string(),
            t.q.to_string(),
            t.ell.to_string(),
            l.k.to_string(),
            l.dim.to_string(),
            l.irreducible.to_string(),
            l.criterion.to_string(),
            l.agree.to_string(),
        ]);
        let _ = writeln!(text, "  M({}) dim {:>4}  irreducible={} criterion={}", l.k, l.dim, l.irreducible, l.criterion);
    }
    let _ = writeln!(text, "  conjecture holds here: {}", gow.conjecture_holds);
    if let Some(c) = &casa {
        let _ = writeln!(text, "  S2/S1: dim {} irreducible={}", c.dim, c.irreducible);
    }
    let _ = writeln!(text, "  self-duality suite: {}", if s6.passed() { "pass" } else { "FAIL" });
    #[derive(Serialize)]
    struct Out<'a> {
        gow: &'a crate::modrep::GowReport,
        casa: &'a Option<crate::modrep::CasaReport>,
        section6: &'a crate::modrep::Section6Report,
    }
    let value = to_value(&Out { gow: &gow, casa: &casa, section6: &s6 });
    Ok(Outcome { value, csv, text, failures })
}

pub fn cmd_explore_socle(t: &Triple, g: &GlobalOpts) -> Result<Outcome> {
    let (f, _) = build_filtration(t, g)?;
    let r = explore_socle(&f)?;
    let mut csv = vec![["n", "q", "ell", "k_i", "k_next", "quotient_dim", "socle_dim", "layer_dim", "agree"]
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()];
    let mut text = format!("({},{},{})\n", t.n, t.q, t.ell);
    for s in &r.steps {
        let ki = s.k_i.map(|k| k.to_string()).unwrap_or_default();
        csv.push(vec![
            t.n.to_string(),
            t.q.to_string(),
            t.ell.to_string(),
            ki.clone(),
            s.k_next.to_string(),
            s.quotient_dim.to_string(),
            s.socle_dim.to_string(),
            s.layer_dim.to_string(),
            s.agree.to_string(),
        ]);
        let from = s.k_i.map(|k| format!("I({k})")).unwrap_or_else(|| "0".into());
        let _ = writeln!(
            text,
            "  soc(I/{from}) dim {} vs I({})/{from} dim {}: {}",
            s.socle_dim,
            s.k_next,
            s.layer_dim,
            if s.agree { "agree" } else { "differ" }
        );
    }
    // exploratory: disagreement is reported, not a failure
    Ok(Outcome { value: to_value(&r), csv, text, failures: Vec::new() })
}

#[derive(Serialize)]
struct SweepRecord {
    n: usize,
    q: u32,
    ell: u32,
    filtration: FiltrationOut,
    gow: crate::modrep::GowReport,
}

/// Admissible triples of the grid, sorted by `(n, q, ell)`.
pub fn admissible(ns: &[u32], qs: &[u32], ells: &[u32]) -> Vec<Triple> {
    let mut out = Vec::new();
    for &n in ns {
        for &q in qs {
            for &ell in ells {
                let t = Triple { n: n as usize, q, ell };
                if check_triple(&t).is_ok() {
                    out.push(t);
                }
            }
        }
    }
    out
}

pub fn cmd_sweep(ns: &str, qs: &str, ells: &str, g: &GlobalOpts) -> Result<Outcome> {
    let grid = admissible(&parse_list(ns)?, &parse_list(qs)?, &parse_list(ells)?);
    // one Gram table per (n, q), shared through the cache or built once here
    let mut records: Vec<SweepRecord> = grid
        .par_iter()
        .map(|t| {
            let (f, status) = build_filtration(t, g)?;
            let (filtration, _) = filtration_out(&f, status)?;
            let gow = gow_conjecture(&f)?;
            Ok(SweepRecord { n: t.n, q: t.q, ell: t.ell, filtration, gow })
        })
        .collect::<Result<_>>()?;
    records.sort_by_key(|r| (r.n, r.q, r.ell));
    let mut failures = Vec::new();
    let mut csv = vec![FILTRATION_CSV.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    let mut text = String::new();
    for r in &records {
        let tag = format!("({},{},{})", r.n, r.q, r.ell);
        let rep = FiltrationReport {
            n: r.n,
            q: r.q,
            ell: r.ell,
            mode: crate::filtration::SnfMode::Exact,
            vals: r.filtration.vals.clone(),
            levels: Vec::new(),
            x: r.filtration.x.clone(),
            kappa1: r.filtration.kappa1,
            kappa2: r.filtration.kappa2,
            gow5_levels_match: r.filtration.gow5_levels_match,
            steinberg_simple: r.filtration.steinberg_simple,
        };
        failures.extend(filtration_failures(&rep));
        for l in r.gow.levels.iter().filter(|l| !l.agree) {
            failures.push(format!("{tag}: parabolic criterion disagrees at k={}", l.k));
        }
        csv.extend(filtration_rows(&r.filtration));
        let dims: Vec<String> = r.gow.levels.iter().map(|l| format!("M({})={}{}", l.k, l.dim, if l.irreducible { "" } else { "*" })).collect();
        let _ = writeln!(text, "{tag:<12} X={:?} {}", r.filtration.x, dims.join(" "));
    }
    let _ = writeln!(text, "{} triples, {} failures (* marks a reducible factor)", records.len(), failures.len());
    Ok(Outcome { value: to_value(&records), csv, text, failures })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let body = || match &cli.command {
        Command::Indices(t) => cmd_indices(t),
        Command::Filtration(t) => cmd_filtration(t, g),
        Command::VerifyIdentities { n, q, identity, wrep } => cmd_verify_identities(*n, *q, identity.as_deref(), *wrep),
        Command::Conjecture { triple, full_series } => cmd_conjecture(triple, *full_series, g),
        Command::ExploreSocle(t) => cmd_explore_socle(t, g),
        Command::Sweep { n, q, ell } => cmd_sweep(n, q, ell, g),
    };
    if g.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(g.jobs).build().map_err(|e| Error::Invalid(e.to_string()))?;
        pool.install(body)
    } else {
        body()
    }
}

/// Exit status for an error: 2 for usage and precondition problems.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::NotPrimePower(_)
        | Error::NotPrime(_)
        | Error::EllEqualsP { .. }
        | Error::FactorIndex { .. }
        | Error::NotSimple(_)
        | Error::LevelNotAttained(_)
        | Error::Invalid(_)
        | Error::Precondition(_) => 2,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_list("5,2,3").unwrap(), vec![2, 3, 5]);
        assert_eq!(parse_list("2,4..5").unwrap(), vec![2, 4, 5]);
        assert!(parse_list("4..2").is_err());
        assert!(parse_list("").is_err());
    }

    #[test]
    fn grid_skips_inadmissible() {
        let g = admissible(&[2], &[2, 3, 6], &[2, 3]);
        let t: Vec<(usize, u32, u32)> = g.iter().map(|t| (t.n, t.q, t.ell)).collect();
        assert_eq!(t, vec![(2, 2, 3), (2, 3, 2)]);
    }
}

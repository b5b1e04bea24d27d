//! Command-line front end. Every command prints one JSON document (or an SVG
//! for `plot`) and maps errors to stable exit codes.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::blocks::{self, Mode};
use crate::cache::{self, CacheFile, CacheStats};
use crate::error::{Error, Result};
use crate::hecke::{Basis, Hecke};
use crate::laurent::Laurent;
use crate::root_data::RootSystem;
use crate::svg::{self, PlotOptions};
use crate::verify::{self, element_json, word_string, Suite};

#[derive(Parser, Debug, PartialEq, Eq)]
#[command(name = "linkage", version, about = "Blocks, linking chains and Kazhdan-Lusztig polynomials for affine Weyl groups")]
pub struct Cli {
    /// Polynomial cache file (defaults to $LINKAGE_CACHE).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, PartialEq, Eq)]
pub enum Command {
    /// Dominant weights in the block of a weight.
    Block(BlockArgs),
    /// Linking chain between two weights of one block.
    Chain(ChainArgs),
    /// Antispherical polynomials n_{x,y}.
    Askl(PolyArgs),
    /// Ordinary polynomials h_{x,y}.
    Kl(PolyArgs),
    /// Periodic polynomials p_{B,A}.
    Periodic(PolyArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Draw a rank 2 arrangement as SVG.
    Plot(PlotArgs),
    /// Manage the polynomial cache.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Modular,
    Quantum,
}

#[derive(Args, Debug, PartialEq, Eq)]
pub struct BlockArgs {
    /// Root system, e.g. A2, C2, A1xA1.
    pub root_type: String,
    #[arg(long)]
    pub ell: i64,
    /// Weight in fundamental coweight coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Largest total height of listed weights.
    #[arg(long, default_value_t = 20)]
    pub radius: i64,
    #[arg(long, value_enum, default_value = "modular")]
    pub mode: ModeArg,
    /// Skip the constraints on ell in quantum mode. Not covered by theory.
    #[arg(long)]
    pub allow_unsupported_ell: bool,
}

#[derive(Args, Debug, PartialEq, Eq)]
pub struct ChainArgs {
    pub root_type: String,
    #[arg(long)]
    pub ell: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
}

#[derive(Args, Debug, PartialEq, Eq)]
pub struct PolyArgs {
    pub root_type: String,
    /// Index element as a reduced word (`e` or comma separated generators).
    pub y: String,
    /// Single coefficient instead of the whole element.
    #[arg(long)]
    pub x: Option<String>,
}

#[derive(Args, Debug, PartialEq, Eq)]
pub struct VerifyArgs {
    /// hat, soergel, coset, periodic-inv, closure, chain, reverse-order, h-vs-n
    pub suite: String,
    pub root_type: String,
    #[arg(long)]
    pub radius: i64,
    #[arg(long)]
    pub ell: Option<i64>,
}

#[derive(Args, Debug, PartialEq, Eq)]
pub struct PlotArgs {
    pub root_type: String,
    #[arg(long, default_value_t = 1)]
    pub ell: i64,
    /// Window size in multiples of ell.
    #[arg(long, default_value_t = 4)]
    pub extent: i64,
    /// Weights to highlight, separated by ';'.
    #[arg(long)]
    pub chain: Option<String>,
    /// Highlight the linking chain between two weights.
    #[arg(long, requires = "to")]
    pub from: Option<String>,
    #[arg(long, requires = "from")]
    pub to: Option<String>,
    /// Special point v; its walls through ell v are drawn thick.
    #[arg(long, allow_hyphen_values = true)]
    pub special: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug, PartialEq, Eq)]
pub enum CacheCommand {
    /// Write the cache contents, re-sorted, to a file.
    Export { path: PathBuf },
    /// Validate a file and merge it into the cache; nothing changes on error.
    Import { path: PathBuf },
    /// Check every record of a file.
    Validate { path: PathBuf },
    /// Record counts of the cache.
    Stats,
    /// Compute canonical elements up to a length and store them.
    Warm {
        root_type: String,
        #[arg(long)]
        radius: i64,
    },
}

impl Cli {
    /// Canonical argument list: every option spelled out, in a fixed order.
    pub fn canonical_args(&self) -> Vec<String> {
        let mut v: Vec<String> = vec!["linkage".into()];
        let opt = |v: &mut Vec<String>, k: &str, x: String| {
            v.push(format!("--{k}"));
            v.push(x);
        };
        if let Some(c) = &self.cache {
            opt(&mut v, "cache", c.display().to_string());
        }
        match &self.command {
            Command::Block(a) => {
                v.extend(["block".into(), a.root_type.clone()]);
                opt(&mut v, "ell", a.ell.to_string());
                opt(&mut v, "lambda", a.lambda.clone());
                opt(&mut v, "radius", a.radius.to_string());
                let mode = match a.mode {
                    ModeArg::Modular => "modular",
                    ModeArg::Quantum => "quantum",
                };
                opt(&mut v, "mode", mode.into());
                if a.allow_unsupported_ell {
                    v.push("--allow-unsupported-ell".into());
                }
            }
            Command::Chain(a) => {
                v.extend(["chain".into(), a.root_type.clone()]);
                opt(&mut v, "ell", a.ell.to_string());
                opt(&mut v, "from", a.from.clone());
                opt(&mut v, "to", a.to.clone());
            }
            Command::Askl(a) | Command::Kl(a) | Command::Periodic(a) => {
                let name = match &self.command {
                    Command::Askl(_) => "askl",
                    Command::Kl(_) => "kl",
                    _ => "periodic",
                };
                v.extend([name.into(), a.root_type.clone(), a.y.clone()]);
                if let Some(x) = &a.x {
                    opt(&mut v, "x", x.clone());
                }
            }
            Command::Verify(a) => {
                v.extend(["verify".into(), a.suite.clone(), a.root_type.clone()]);
                opt(&mut v, "radius", a.radius.to_string());
                if let Some(l) = a.ell {
                    opt(&mut v, "ell", l.to_string());
                }
            }
            Command::Plot(a) => {
                v.extend(["plot".into(), a.root_type.clone()]);
                opt(&mut v, "ell", a.ell.to_string());
                opt(&mut v, "extent", a.extent.to_string());
                for (k, x) in [("chain", &a.chain), ("from", &a.from), ("to", &a.to), ("special", &a.special)] {
                    if let Some(x) = x {
                        opt(&mut v, k, x.clone());
                    }
                }
                if let Some(o) = &a.output {
                    opt(&mut v, "output", o.display().to_string());
                }
            }
            Command::Cache(c) => {
                v.push("cache".into());
                match c {
                    CacheCommand::Export { path } => v.extend(["export".into(), path.display().to_string()]),
                    CacheCommand::Import { path } => v.extend(["import".into(), path.display().to_string()]),
                    CacheCommand::Validate { path } => v.extend(["validate".into(), path.display().to_string()]),
                    CacheCommand::Stats => v.push("stats".into()),
                    CacheCommand::Warm { root_type, radius } => {
                        v.extend(["warm".into(), root_type.clone()]);
                        opt(&mut v, "radius", radius.to_string());
                    }
                }
            }
        }
        v
    }
}

pub fn parse_weight(s: &str, rank: usize) -> Result<Vec<i64>> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Usage(format!("cannot parse weight '{s}'")))?;
    if v.len() != rank {
        return Err(Error::Usage(format!("weight '{s}' needs {rank} coordinates")));
    }
    Ok(v)
}

#[derive(Serialize)]
struct Region {
    radius: i64,
}

#[derive(Serialize)]
struct BlockOut {
    #[serde(rename = "type")]
    root_type: String,
    ell: i64,
    mode: Mode,
    lambda: Vec<i64>,
    r: Vec<u32>,
    block: Vec<Vec<i64>>,
    region: Region,
    certified: bool,
}

#[derive(Serialize)]
struct ChainOut {
    #[serde(rename = "type")]
    root_type: String,
    ell: i64,
    from: Vec<i64>,
    to: Vec<i64>,
    #[serde(flatten)]
    result: blocks::ChainResult,
}

#[derive(Serialize)]
struct PolyOut {
    #[serde(rename = "type")]
    root_type: String,
    kind: &'static str,
    y: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poly: Option<Laurent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_one: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    entries: Option<Value>,
}

#[derive(Serialize)]
struct CacheOut {
    action: &'static str,
    path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    imported: Option<usize>,
    stats: CacheStats,
}

/// Cache location: `--cache`, else the environment variable.
fn cache_path(cli: &Cli) -> Option<PathBuf> {
    cli.cache
        .clone()
        .or_else(|| std::env::var_os(cache::ENV_VAR).map(PathBuf::from))
}

fn load_cache(path: &Option<PathBuf>) -> Result<CacheFile> {
    match path {
        Some(p) if p.exists() => CacheFile::load(p),
        _ => Ok(CacheFile::default()),
    }
}

/// Engine for a type, preloaded from the cache file when there is one.
fn engine(root_type: &str, file: &CacheFile) -> Result<Hecke> {
    let h = Hecke::parse(root_type)?;
    file.import_into(&h)?;
    Ok(h)
}

fn persist(path: &Option<PathBuf>, mut file: CacheFile, h: &Hecke) -> Result<()> {
    if let Some(p) = path {
        let before = file.render();
        file.absorb(h);
        if file.render() != before {
            file.save(p)?;
        }
    }
    Ok(())
}

fn json_line(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Error::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

/// Runs a parsed command, writing its document to `out`. Returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let path = cache_path(cli);
    match &cli.command {
        Command::Block(a) => {
            let rs = RootSystem::parse(&a.root_type)?;
            let lambda = parse_weight(&a.lambda, rs.rank)?;
            let mode = match a.mode {
                ModeArg::Modular => Mode::Modular,
                ModeArg::Quantum => Mode::Quantum,
            };
            blocks::check_ell(&rs, a.ell, mode, a.allow_unsupported_ell)?;
            let b = blocks::block_of(&rs, &lambda, a.ell, a.radius, mode)?;
            json_line(
                out,
                &BlockOut {
                    root_type: rs.name(),
                    ell: a.ell,
                    mode,
                    lambda,
                    r: b.r,
                    block: b.block,
                    region: Region { radius: a.radius },
                    certified: b.certified,
                },
            )?;
            Ok(0)
        }
        Command::Chain(a) => {
            let file = load_cache(&path)?;
            let h = engine(&a.root_type, &file)?;
            let from = parse_weight(&a.from, h.aw.rank())?;
            let to = parse_weight(&a.to, h.aw.rank())?;
            let result = blocks::chain_between(&h, &from, &to, a.ell)?;
            json_line(
                out,
                &ChainOut {
                    root_type: h.context(),
                    ell: a.ell,
                    from,
                    to,
                    result,
                },
            )?;
            persist(&path, file, &h)?;
            Ok(0)
        }
        Command::Askl(a) | Command::Kl(a) | Command::Periodic(a) => {
            let file = load_cache(&path)?;
            let h = engine(&a.root_type, &file)?;
            let y = h.aw.parse_word(&a.y)?;
            let (kind, elem) = match &cli.command {
                Command::Askl(_) => {
                    if !h.aw.is_dominant(&y) {
                        return Err(Error::Usage(format!("{} is not in fW", a.y)));
                    }
                    ("n", h.canonical(Basis::N, &y))
                }
                Command::Kl(_) => ("h", h.canonical(Basis::H, &y)),
                _ => ("p", h.canonical_p(&y)?),
            };
            let mut doc = PolyOut {
                root_type: h.context(),
                kind,
                y: word_string(&h, &y),
                x: None,
                poly: None,
                at_one: None,
                entries: None,
            };
            match &a.x {
                Some(xs) => {
                    let x = h.aw.parse_word(xs)?;
                    let p = elem.get(&x).cloned().unwrap_or_default();
                    doc.x = Some(word_string(&h, &x));
                    doc.at_one = Some(p.eval_one());
                    doc.poly = Some(p);
                }
                None => doc.entries = Some(element_json(&h, &elem)),
            }
            json_line(out, &doc)?;
            persist(&path, file, &h)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let suite: Suite = a.suite.parse()?;
            let file = load_cache(&path)?;
            let h = engine(&a.root_type, &file)?;
            let report = verify::run(&h, suite, a.radius, a.ell)?;
            json_line(out, &report)?;
            persist(&path, file, &h)?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Plot(a) => {
            let h = Hecke::parse(&a.root_type)?;
            if h.aw.rank() != 2 {
                return Err(Error::Usage("plots are available for rank 2 only".into()));
            }
            let mut chain = Vec::new();
            if let Some(c) = &a.chain {
                for w in c.split(';').filter(|s| !s.trim().is_empty()) {
                    chain.push(parse_weight(w, 2)?);
                }
            }
            if let (Some(f), Some(t)) = (&a.from, &a.to) {
                let r = blocks::chain_between(&h, &parse_weight(f, 2)?, &parse_weight(t, 2)?, a.ell)?;
                chain.extend(r.chain);
            }
            let special = a.special.as_deref().map(|s| parse_weight(s, 2)).transpose()?;
            let doc = svg::render(
                &h.aw,
                &PlotOptions {
                    ell: a.ell,
                    extent: a.extent,
                    chain,
                    special,
                },
            )?;
            match &a.output {
                Some(p) => std::fs::write(p, doc)?,
                None => out.write_all(doc.as_bytes())?,
            }
            Ok(0)
        }
        Command::Cache(c) => cache_command(c, path, out),
    }
}

fn cache_command(c: &CacheCommand, path: Option<PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let need = || {
        path.clone()
            .ok_or_else(|| Error::Usage(format!("no cache file: pass --cache or set {}", cache::ENV_VAR)))
    };
    let shown = |p: &PathBuf| p.display().to_string();
    match c {
        CacheCommand::Export { path: dest } => {
            let p = need()?;
            let file = CacheFile::load(&p)?;
            file.save(dest)?;
            json_line(out, &CacheOut { action: "export", path: shown(dest), imported: None, stats: file.stats() })?;
        }
        CacheCommand::Import { path: src } => {
            let p = need()?;
            let incoming = CacheFile::load(src)?;
            let mut file = load_cache(&Some(p.clone()))?;
            let mut total = 0;
            for ctx in incoming.stats().contexts {
                let h = engine(&ctx, &file).map_err(|e| match e {
                    Error::Usage(m) => Error::Cache(m),
                    e => e,
                })?;
                total += incoming.import_into(&h)?;
                file.absorb(&h);
            }
            file.save(&p)?;
            json_line(out, &CacheOut { action: "import", path: shown(&p), imported: Some(total), stats: file.stats() })?;
        }
        CacheCommand::Validate { path: src } => {
            let file = CacheFile::load(src)?;
            for ctx in file.stats().contexts {
                let h = Hecke::parse(&ctx).map_err(|e| Error::Cache(e.to_string()))?;
                file.decode(&h)?;
            }
            json_line(out, &CacheOut { action: "validate", path: shown(src), imported: None, stats: file.stats() })?;
        }
        CacheCommand::Stats => {
            let p = need()?;
            let file = load_cache(&Some(p.clone()))?;
            json_line(out, &CacheOut { action: "stats", path: shown(&p), imported: None, stats: file.stats() })?;
        }
        CacheCommand::Warm { root_type, radius } => {
            let p = need()?;
            let file = load_cache(&Some(p.clone()))?;
            let h = engine(root_type, &file)?;
            for y in h.aw.dominant_within(*radius) {
                h.canonical_n(&y);
            }
            for y in h.aw.alcoves_within(*radius) {
                h.canonical_h(&y);
            }
            let mut file = file;
            file.absorb(&h);
            file.save(&p)?;
            json_line(out, &CacheOut { action: "warm", path: shown(&p), imported: None, stats: file.stats() })?;
        }
    }
    Ok(0)
}

/// Parses `args`, runs the command and reports errors on `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return e.exit_code();
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

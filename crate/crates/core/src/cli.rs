//! Command-line surface: configuration, the five commands and their reports.
//!
//! Every report starts with a versioned header carrying the full
//! configuration, so the same config always yields the same bytes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::embedder::{build_selector, find_covering_word, insert_dense_segment, verify_selector};
use crate::error::Error;
use crate::metric::{entropy, growth_entropy, Scale};
use crate::multiscale::{build_multiscale, MultiscaleOptions, StageZeroOptions};
use crate::shift::text::parse_sft;
use crate::shift::{MixingStatus, Sft};
use crate::spec_builder::{build_simple_spec, entropy_certificate, BuildOptions, Built, Certificate};
use crate::spec_props::{build_coded_spec, find_synchronizer, weak_spec_gap, SublinearL};

pub const REPORT_HEADER: &str = "shiftspec-report v1";

/// `gamma` of the entropy bracket.
pub const GAMMA: f64 = 0.2;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug, Clone)]
#[command(name = "shiftspec", version, about = "Admissible specifications and certified embeddings for subshifts of finite type")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Spectral entropy and growth estimates.
    Entropy(Common),
    /// Mixing gap, synchronizer and coded specification.
    Detect(Common),
    /// An admissible simple specification above `--alpha`.
    BuildSpec(Common),
    /// Specification, selector and injectivity certificate.
    Embed(Common),
    /// Stage 0 and stage 1 of the multiscale construction.
    Multiscale(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// SFT file.
    pub input: PathBuf,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Working scale `r` for `eps = 2^-r`.
    #[arg(long)]
    pub scale: Option<u32>,
    /// `const:<c>` or `table:<file>`.
    #[arg(long = "L")]
    pub big_l: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    #[arg(long = "full-support")]
    pub full_support: Option<usize>,
    /// Word lengths, listed words, or sampled windows, by command.
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Also write the block-code table here.
    #[arg(long = "table-out")]
    pub table_out: Option<PathBuf>,
}

/// Resolved configuration of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: &'static str,
    pub input: PathBuf,
    pub alpha: Option<f64>,
    pub delta: f64,
    pub scale: u32,
    pub big_l: Option<String>,
    pub depth: usize,
    pub full_support: Option<usize>,
    pub limit: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> (RunConfig, Option<PathBuf>) {
        let (command, c) = match &cli.command {
            Command::Entropy(c) => ("entropy", c),
            Command::Detect(c) => ("detect", c),
            Command::BuildSpec(c) => ("build-spec", c),
            Command::Embed(c) => ("embed", c),
            Command::Multiscale(c) => ("multiscale", c),
        };
        let (delta, scale, limit) = match command {
            "entropy" => (0.1, 1, 12),
            "build-spec" => (0.1, 4, 8),
            "embed" => (0.1, 1, 8),
            "multiscale" => (0.25, 1, 100),
            _ => (0.1, 1, 6),
        };
        let cfg = RunConfig {
            command,
            input: c.input.clone(),
            alpha: c.alpha,
            delta: c.delta.unwrap_or(delta),
            scale: c.scale.unwrap_or(scale),
            big_l: c.big_l.clone(),
            depth: c.depth,
            full_support: c.full_support,
            limit: c.limit.unwrap_or(limit),
            seed: c.seed,
        };
        (cfg, c.table_out.clone())
    }

    fn header(&self) -> String {
        let opt = |v: &Option<f64>| v.map_or("none".to_string(), |a| a.to_string());
        format!(
            "{REPORT_HEADER}\ncommand: {}\ninput: {}\nalpha: {}\ndelta: {}\nscale: {}\nL: {}\ndepth: {}\nfull-support: {}\nlimit: {}\nseed: {}\n",
            self.command,
            self.input.display(),
            opt(&self.alpha),
            self.delta,
            self.scale,
            self.big_l.as_deref().unwrap_or("default"),
            self.depth,
            self.full_support.map_or("none".to_string(), |j| j.to_string()),
            self.limit,
            self.seed
        )
    }
}

/// A finished report and its exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: String,
    pub code: i32,
    /// Block-code table, for `embed`.
    pub table: Option<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownSymbol(_) | Error::EmptyForbiddenWord => EXIT_INPUT,
        Error::AdmissibilityFailure(_) | Error::ImageNotAllowed | Error::NoCommonCoordinate => EXIT_CERTIFICATE,
        _ => EXIT_INFEASIBLE,
    }
}

struct Report {
    out: String,
    certs_ok: bool,
}

impl Report {
    fn new(cfg: &RunConfig) -> Report {
        Report {
            out: cfg.header(),
            certs_ok: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn cert(&mut self, c: &Certificate) {
        self.certs_ok &= c.passed();
        let _ = write!(self.out, "{c}");
    }

    fn finish(mut self, table: Option<String>) -> Outcome {
        let code = if self.certs_ok { EXIT_OK } else { EXIT_CERTIFICATE };
        self.line(format!("status: {}", if self.certs_ok { "PASS" } else { "FAIL" }));
        Outcome {
            report: self.out,
            code,
            table,
        }
    }

    fn fail(mut self, e: &Error) -> Outcome {
        let code = exit_code(e);
        self.line(format!("error: {e}"));
        self.line(format!("status: {}", if code == EXIT_INPUT { "INPUT-ERROR" } else { "INFEASIBLE" }));
        Outcome {
            report: self.out,
            code,
            table: None,
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })
}

/// `const:<c>` or `table:<file>`.
pub fn parse_big_l(arg: &str) -> Result<SublinearL, Error> {
    let bad = || Error::Parse {
        line: 0,
        msg: format!("--L expects const:<c> or table:<file>, got `{arg}`"),
    };
    match arg.split_once(':') {
        Some(("const", c)) => SublinearL::constant(c.trim().parse().map_err(|_| bad())?),
        Some(("table", file)) => SublinearL::parse_table(&read(Path::new(file))?),
        _ => Err(bad()),
    }
}

fn alpha(cfg: &RunConfig) -> Result<f64, Error> {
    cfg.alpha.ok_or_else(|| Error::Parse {
        line: 0,
        msg: format!("{} needs --alpha", cfg.command),
    })
}

/// Runs one configured command.
pub fn run(cfg: &RunConfig) -> Outcome {
    let mut rep = Report::new(cfg);
    let x = match read(&cfg.input).and_then(|t| parse_sft(&t)) {
        Ok(x) => x,
        Err(e) => return rep.fail(&e),
    };
    rep.line(format!("target: {}", x.to_text().trim_end().replace('\n', "; ")));
    let body = match cfg.command {
        "entropy" => cmd_entropy(cfg, &x, &mut rep),
        "detect" => cmd_detect(cfg, &x, &mut rep),
        "build-spec" => cmd_build_spec(cfg, &x, &mut rep),
        "embed" => cmd_embed(cfg, &x, &mut rep),
        _ => cmd_multiscale(cfg, &x, &mut rep),
    };
    match body {
        Ok(table) => rep.finish(table),
        Err(e) => rep.fail(&e),
    }
}

type Body = Result<Option<String>, Error>;

fn cmd_entropy(cfg: &RunConfig, x: &Sft, rep: &mut Report) -> Body {
    let h = entropy(x);
    rep.line(format!("spectral: {h:.12}"));
    for n in 1..=cfg.limit.max(1) {
        let g = growth_entropy(x, n);
        rep.line(format!("growth n={n}: {g:.12} gap {:.3e}", g - h));
    }
    Ok(None)
}

fn cmd_detect(_cfg: &RunConfig, x: &Sft, rep: &mut Report) -> Body {
    match x.mixing_status() {
        MixingStatus::Mixing { gap } => rep.line(format!("mixing: gap {gap}")),
        MixingStatus::Irreducible { period } => rep.line(format!("irreducible: period {period}")),
        MixingStatus::Reducible => rep.line("reducible"),
    }
    rep.line(format!("weak specification gap: {}", weak_spec_gap(x)?));
    let u = find_synchronizer(x)?;
    rep.line(format!("synchronizer: {}", x.alphabet().format(&u)));
    let cs = build_coded_spec(x)?;
    rep.line(format!("coded specification: c = {}, L = {}, glue {}", cs.c(), cs.l(), cs.glue_len()));
    Ok(None)
}

fn listing(built: &Built, limit: usize, rep: &mut Report) -> Result<(), Error> {
    let spec = &built.spec;
    let count = spec.elements.count();
    rep.line(format!("elements: {count}"));
    let shown = count.min(num_bigint::BigUint::from(limit as u64));
    let mut i = num_bigint::BigUint::from(0u32);
    while i < shown {
        let e = spec.elements.get(&i)?;
        rep.line(format!("word {i} N={}: {}", e.n, spec.format(&spec.generating_word(&e))));
        i += 1u32;
    }
    Ok(())
}

fn describe(built: &Built, rep: &mut Report) {
    let r = &built.report;
    let s = &built.spec;
    rep.line(format!(
        "parameters: n0={} m={} l={} L={} scale={} q={}",
        r.params.n0,
        r.params.m,
        r.params.l,
        s.big_l,
        s.scale,
        s.q()
    ));
    rep.line(format!(
        "build: #G={} #F={} ln#F={:.4} bound={:.4} marker_removed={} z_rank={} attempts={} entropy={:.9}",
        r.separated, r.sieved, r.sieved_ln, r.sieve_bound_ln, r.marker_removed, r.z_rank, r.attempts, r.entropy
    ));
    rep.line(format!("marker: {}", s.target.alphabet().format(&s.marker.window)));
}

fn cmd_build_spec(cfg: &RunConfig, x: &Sft, rep: &mut Report) -> Body {
    let a = alpha(cfg)?;
    let big_l = match &cfg.big_l {
        Some(s) => parse_big_l(s)?,
        None => SublinearL::Const(1),
    };
    let opts = BuildOptions {
        delta: cfg.delta,
        ..BuildOptions::default()
    };
    let built = build_simple_spec(x, a, &big_l, Scale::new(cfg.scale)?, &opts)?;
    describe(&built, rep);
    listing(&built, cfg.limit, rep)?;
    rep.cert(&built.admissibility);
    rep.cert(&entropy_certificate(&built.spec, GAMMA));
    Ok(None)
}

fn cmd_embed(cfg: &RunConfig, x: &Sft, rep: &mut Report) -> Body {
    let a = alpha(cfg)?;
    let cs = build_coded_spec(x)?;
    rep.line(format!("coded specification: c = {}, L = {}", cs.c(), cs.l()));
    let big_l = match &cfg.big_l {
        Some(s) => parse_big_l(s)?,
        None => cs.l().clone(),
    };
    let z = match cfg.full_support {
        Some(j) => find_covering_word(x, j)?.symbols,
        None => Vec::new(),
    };
    // m >= 4 |z| with m = floor(3 delta n0 / 2)
    let n0_min = ((8 * z.len()) as f64 / (3.0 * cfg.delta)).ceil() as usize + 1;
    let opts = BuildOptions {
        delta: cfg.delta,
        n0_min: n0_min.max(BuildOptions::default().n0_min),
        ..BuildOptions::default()
    };
    let built = build_simple_spec(x, a, &big_l, Scale::new(cfg.scale)?, &opts)?;
    describe(&built, rep);
    rep.cert(&built.admissibility);
    let spec = if z.is_empty() {
        built.spec.clone()
    } else {
        rep.line(format!("covering word j={}: {}", cfg.full_support.unwrap_or(0), x.alphabet().format(&z)));
        let (s, cert) = insert_dense_segment(&built.spec, &z)?;
        rep.cert(&cert);
        if s.entropy() <= a {
            return Err(Error::EntropyShortfall(format!(
                "entropy {:.6} not above alpha = {a} after inserting the covering word",
                s.entropy()
            )));
        }
        s
    };
    listing(&Built { spec: spec.clone(), ..built }, cfg.limit, rep)?;
    rep.cert(&entropy_certificate(&spec, GAMMA));
    let code = build_selector(&spec, &cs)?;
    rep.cert(&verify_selector(&code));
    let table = code.to_table();
    rep.line("table:");
    rep.out.push_str(&table);
    rep.line("end table");
    Ok(Some(table))
}

fn cmd_multiscale(cfg: &RunConfig, x: &Sft, rep: &mut Report) -> Body {
    let opts = MultiscaleOptions {
        depth: cfg.depth,
        r0: cfg.scale,
        alpha: cfg.alpha.unwrap_or(MultiscaleOptions::default().alpha),
        zero: StageZeroOptions {
            delta: cfg.delta,
            ..StageZeroOptions::default()
        },
        windows: cfg.limit,
        seed: cfg.seed,
        ..MultiscaleOptions::default()
    };
    rep.line(format!("alpha floor: {}", opts.alpha));
    let r = build_multiscale(x, &opts)?;
    rep.out.push_str(&r.render());
    rep.certs_ok &= r.passed();
    Ok(None)
}

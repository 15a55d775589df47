//! The `brv` command line. [`run`] does all the work and returns the output
//! and exit code, so the binary is a thin wrapper and tests can compare
//! bytes directly.

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cloning::{
    check_axioms, AxiomReport, BraidSystem, KappaMutation, PermutationSystem, WreathSystem,
};
use crate::complexes::{matching_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::forest::{matching_to_dot, Forest};
use crate::grigsolver;
use crate::recursion::{self, GroupWord, RecursionTable, Verdict};
use crate::thompson::{Groupoid, Triple};

/// Defaults shared by every subcommand. Flags override them, and so do the
/// `BRV_DEPTH`, `BRV_SAMPLES` and `BRV_SEED` environment variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Args)]
pub struct Config {
    /// Depth budget for recursive searches
    #[arg(long, global = true, env = "BRV_DEPTH", default_value_t = Config::DEFAULT.depth)]
    pub depth: usize,
    /// Samples for randomized checks
    #[arg(long, global = true, env = "BRV_SAMPLES", default_value_t = Config::DEFAULT.samples)]
    pub samples: usize,
    /// Seed for randomized checks
    #[arg(long, global = true, env = "BRV_SEED", default_value_t = Config::DEFAULT.seed)]
    pub seed: u64,
}

impl Config {
    pub const DEFAULT: Config = Config {
        depth: recursion::DEFAULT_DEPTH,
        samples: 200,
        seed: 0,
    };
}

impl Default for Config {
    fn default() -> Self {
        Config::DEFAULT
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    /// One tab-separated `key=value` record per line
    Machine,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "brv",
    version,
    about = "Braided self-similar groups and their Thompson-like groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a word is the identity
    Wp {
        /// Built-in table (brgrig, grig, zwrz) or a table file
        table: String,
        word: String,
    },
    /// Print the tree of iterated sections
    Sections {
        table: String,
        word: String,
        #[arg(long, default_value_t = 2)]
        levels: usize,
    },
    /// Check the cloning-system axioms on random samples
    Axioms {
        system: SystemName,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(short, long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_enum, default_value_t = MutationName::None)]
        mutation: MutationName,
    },
    /// Arithmetic with triples `[F ; top ; (g1, ...) ; F']`; an operand may
    /// be a product `x * y`, and `^-1` after a literal inverts it
    Thomp {
        op: ThompOp,
        #[arg(long, default_value = "brgrig")]
        table: String,
        #[arg(required = true)]
        triples: Vec<String>,
    },
    /// Reduced integral homology of a complex
    Homology {
        #[command(subcommand)]
        source: ComplexSource,
        /// Also check weak Cohen-Macaulayness of this dimension
        #[arg(long, global = true)]
        wcm: Option<isize>,
    },
    /// DOT diagrams
    Render {
        #[command(subcommand)]
        object: RenderObject,
    },
    /// K_n levels of the iterated witnesses
    Kseries {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum SystemName {
    /// Symmetric groups
    Perm,
    /// Braid groups
    Braid,
    /// S_n wr Grig
    Grig,
    /// B_n wr brGrig
    Brgrig,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum MutationName {
    None,
    OmitRoot,
    SwapOrder,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum ThompOp {
    /// Product of the arguments
    Eval,
    Eq,
    Reduce,
    Pi,
    /// Purify the middle of a triple with trivial forests
    Purify,
    Eqmodz,
}

#[derive(Debug, Subcommand)]
pub enum ComplexSource {
    /// The d-matching complex of the linear graph on m vertices
    Matching { d: usize, m: usize },
    /// One facet per line, vertices as labels
    File { path: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum RenderObject {
    Triple {
        text: String,
        #[arg(long, default_value = "brgrig")]
        table: String,
    },
    Forest {
        text: String,
        #[arg(long, default_value_t = 2)]
        arity: usize,
    },
    /// The matching of an elementary forest
    Matching {
        text: String,
        #[arg(long, default_value_t = 2)]
        arity: usize,
    },
}

/// Exit codes, chosen so shell harnesses can assert verdicts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Unknown = 2,
    Usage = 3,
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Equal => Status::Pass,
            Verdict::Unequal => Status::Fail,
            Verdict::Unknown { .. } => Status::Unknown,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let rendered = e.render().to_string();
            let status = if e.use_stderr() {
                Status::Usage
            } else {
                Status::Pass
            };
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            Outcome {
                status,
                stdout,
                stderr,
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let mut out = String::new();
    match dispatch(cli, &mut out) {
        Ok(status) => Outcome {
            status,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            status: Status::Usage,
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<Status> {
    let cfg = cli.config;
    let fmt = cli.format;
    match &cli.command {
        Command::Wp { table, word } => cmd_wp(&load_table(table)?, word, cfg, fmt, out),
        Command::Sections {
            table,
            word,
            levels,
        } => cmd_sections(&load_table(table)?, word, *levels, fmt, out),
        Command::Axioms {
            system,
            n_max,
            d,
            mutation,
        } => cmd_axioms(*system, *n_max, *d, *mutation, cfg, fmt, out),
        Command::Thomp { op, table, triples } => {
            let g = Groupoid::new(load_table(table)?).with_budget(cfg.depth);
            cmd_thomp(&g, *op, triples, fmt, out)
        }
        Command::Homology { source, wcm } => {
            let x = match source {
                ComplexSource::Matching { d, m } => {
                    if *d < 2 || *m < 1 {
                        return Err(Error::Precondition(
                            "matching complexes need d >= 2, m >= 1".into(),
                        ));
                    }
                    matching_complex(*d, *m)
                }
                ComplexSource::File { path } => SimplicialComplex::parse(&read(path)?)?,
            };
            cmd_homology(&x, *wcm, fmt, out)
        }
        Command::Render { object } => cmd_render(object, out),
        Command::Kseries { n_max } => cmd_kseries(*n_max, fmt, out),
    }
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))
}

/// A built-in table by name, otherwise a table file.
pub fn load_table(name: &str) -> Result<RecursionTable> {
    Ok(match name {
        "brgrig" => recursion::brgrig(),
        "grig" => recursion::grig(),
        "zwrz" => recursion::zwrz(),
        path => RecursionTable::parse(&read(path.as_ref())?)?,
    })
}

fn format_path(path: &[usize]) -> String {
    if path.is_empty() {
        "∅".to_string()
    } else {
        path.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn cmd_wp(
    table: &RecursionTable,
    word: &str,
    cfg: Config,
    fmt: Format,
    out: &mut String,
) -> Result<Status> {
    let w = table.parse_word(word)?;
    let verdict = table.is_identity(&w, cfg.depth);
    let certificate = match verdict {
        Verdict::Unequal => Some(
            table
                .nonidentity_certificate(&w, cfg.depth)
                .map(|p| format_path(&p))
                .unwrap_or_else(|| format!("none within depth {}", cfg.depth)),
        ),
        _ => None,
    };
    let label = match verdict {
        Verdict::Equal => "identity".to_string(),
        Verdict::Unequal => "non-identity".to_string(),
        Verdict::Unknown { budget } => format!("unknown (budget {budget})"),
    };
    match fmt {
        Format::Machine => {
            let _ = write!(out, "wp\ttable={}\tverdict={label}", table.name());
            if let Some(c) = &certificate {
                let _ = write!(out, "\tcertificate={c}");
            }
            out.push('\n');
        }
        _ => {
            let _ = writeln!(out, "{label}");
            if let Some(c) = &certificate {
                let _ = writeln!(out, "certificate: {c}");
            }
        }
    }
    Ok(verdict.into())
}

fn cmd_sections(
    table: &RecursionTable,
    word: &str,
    levels: usize,
    fmt: Format,
    out: &mut String,
) -> Result<Status> {
    let w = table.parse_word(word)?;
    let show = |w: &GroupWord| {
        if w.is_empty() {
            "1".to_string()
        } else {
            table.format_word(w)
        }
    };
    let mut stack = vec![(Vec::<usize>::new(), w)];
    while let Some((path, w)) = stack.pop() {
        let rec = table.raw_recursion(&w);
        let secs: Vec<String> = rec.sections.iter().map(show).collect();
        match fmt {
            Format::Machine => {
                let _ = writeln!(
                    out,
                    "section\tpath={}\tword={}\troot={}\tsections={}",
                    format_path(&path),
                    show(&w),
                    rec.root,
                    secs.join(",")
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    "{}{} = {} ({})",
                    "  ".repeat(path.len()),
                    show(&w),
                    rec.root,
                    secs.join(", ")
                );
            }
        }
        if path.len() + 1 < levels {
            for (i, s) in rec.sections.into_iter().enumerate().rev() {
                if !s.is_empty() {
                    let mut p = path.clone();
                    p.push(i + 1);
                    stack.push((p, s));
                }
            }
        }
    }
    Ok(Status::Pass)
}

fn cmd_axioms(
    system: SystemName,
    n_max: usize,
    d: usize,
    mutation: MutationName,
    cfg: Config,
    fmt: Format,
    out: &mut String,
) -> Result<Status> {
    if d < 2 || n_max < 2 {
        return Err(Error::Precondition(
            "axiom checks need d >= 2 and n_max >= 2".into(),
        ));
    }
    let mutation = match mutation {
        MutationName::None => KappaMutation::None,
        MutationName::OmitRoot => KappaMutation::OmitRootFactor,
        MutationName::SwapOrder => KappaMutation::SwapFactorOrder,
    };
    let (samples, seed) = (cfg.samples, cfg.seed);
    let wreath = |t: RecursionTable| WreathSystem {
        budget: cfg.depth,
        ..WreathSystem::new(t).with_mutation(mutation)
    };
    let report = match system {
        SystemName::Perm => check_axioms(&PermutationSystem { d }, samples, seed, n_max)?,
        SystemName::Braid => check_axioms(&BraidSystem::new(d), samples, seed, n_max)?,
        SystemName::Grig => check_axioms(&wreath(recursion::grig()), samples, seed, n_max)?,
        SystemName::Brgrig => check_axioms(&wreath(recursion::brgrig()), samples, seed, n_max)?,
    };
    match fmt {
        Format::Machine => {
            for (label, t) in [("C1", &report.c1), ("C2", &report.c2), ("C3", &report.c3)] {
                let _ = writeln!(
                    out,
                    "axiom\tsystem={}\taxiom={label}\tpass={}\tfail={}\tunknown={}\tseed={}",
                    report.system, t.pass, t.fail, t.unknown, report.seed
                );
            }
        }
        _ => out.push_str(&report.to_string()),
    }
    Ok(axiom_status(&report))
}

fn axiom_status(r: &AxiomReport) -> Status {
    if r.failures() > 0 {
        Status::Fail
    } else if r.all_pass() {
        Status::Pass
    } else {
        Status::Unknown
    }
}

/// A product `x * y * ...` of triple literals, each optionally followed by
/// `^-1`.
fn parse_operand(g: &Groupoid, text: &str) -> Result<Triple> {
    let mut acc: Option<Triple> = None;
    for factor in text.split('*') {
        let t = factor.trim();
        let x = match t.strip_suffix("^-1") {
            Some(body) => g.invert(&g.parse_triple(body)?),
            None => g.parse_triple(t)?,
        };
        acc = Some(match acc {
            None => x,
            Some(a) => g.multiply(&a, &x)?,
        });
    }
    acc.ok_or_else(|| Error::parse(1, "empty operand"))
}

fn verdict_word(v: Verdict) -> String {
    v.to_string()
}

fn cmd_thomp(
    g: &Groupoid,
    op: ThompOp,
    texts: &[String],
    fmt: Format,
    out: &mut String,
) -> Result<Status> {
    let xs: Vec<Triple> = texts
        .iter()
        .map(|t| parse_operand(g, t))
        .collect::<Result<_>>()?;
    let want = |n: usize| -> Result<()> {
        if xs.len() == n {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{op:?} takes {n} triple(s), got {}",
                xs.len()
            )))
        }
    };
    let machine = fmt == Format::Machine;
    let mut record = |key: &str, fields: &[(&str, String)]| {
        if machine {
            let _ = write!(out, "{key}");
            for (k, v) in fields {
                let _ = write!(out, "\t{k}={v}");
            }
            out.push('\n');
        } else {
            for (k, v) in fields {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
    };
    match op {
        ThompOp::Eval => {
            let mut acc = xs[0].clone();
            for x in &xs[1..] {
                acc = g.multiply(&acc, x)?;
            }
            let (reduced, _) = g.reduce(&acc);
            let identity = g.identity_test(&acc);
            record(
                "eval",
                &[
                    ("product", g.format(&acc)),
                    ("reduced", g.format(&reduced)),
                    ("identity", verdict_word(identity)),
                ],
            );
            Ok(
                if identity == Verdict::Equal || identity == Verdict::Unequal {
                    Status::Pass
                } else {
                    Status::Unknown
                },
            )
        }
        ThompOp::Eq => {
            want(2)?;
            let v = g.eq(&xs[0], &xs[1])?;
            record("eq", &[("verdict", verdict_word(v))]);
            Ok(v.into())
        }
        ThompOp::Eqmodz => {
            want(2)?;
            let v = g.eq_mod_z(&xs[0], &xs[1])?;
            record("eqmodz", &[("verdict", verdict_word(v))]);
            Ok(v.into())
        }
        ThompOp::Reduce => {
            want(1)?;
            let (r, partial) = g.reduce(&xs[0]);
            record(
                "reduce",
                &[("reduced", g.format(&r)), ("partial", partial.to_string())],
            );
            Ok(Status::Pass)
        }
        ThompOp::Pi => {
            want(1)?;
            let pi = g.pi_groupoid()?;
            let p = g.project_pi(&xs[0])?;
            record("pi", &[("image", pi.format(&p))]);
            Ok(Status::Pass)
        }
        ThompOp::Purify => {
            want(1)?;
            let x = &xs[0];
            if !x.left().is_trivial() || !x.right().is_trivial() {
                return Err(Error::Precondition(
                    "purify takes a triple with trivial forests".into(),
                ));
            }
            let (f, t) = g.purify(x.middle())?;
            record(
                "purify",
                &[("forest", f.to_string()), ("triple", g.format(&t))],
            );
            Ok(Status::Pass)
        }
    }
}

fn cmd_homology(
    x: &SimplicialComplex,
    wcm: Option<isize>,
    fmt: Format,
    out: &mut String,
) -> Result<Status> {
    let counts: Vec<String> = x.face_counts().iter().map(ToString::to_string).collect();
    let machine = fmt == Format::Machine;
    if machine {
        let _ = writeln!(
            out,
            "complex\tvertices={}\tdim={}\tf={}\teuler={}",
            x.vertices().len(),
            x.dimension(),
            counts.join(","),
            x.euler_characteristic()
        );
    } else {
        let _ = writeln!(
            out,
            "vertices {}, dimension {}, f-vector [{}], euler characteristic {}",
            x.vertices().len(),
            x.dimension(),
            counts.join(","),
            x.euler_characteristic()
        );
    }
    for h in x.reduced_homology(x.dimension()) {
        if machine {
            let t: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "homology\tdim={}\trank={}\ttorsion={}",
                h.dim,
                h.rank,
                t.join(",")
            );
        } else {
            let _ = writeln!(out, "{h}");
        }
    }
    let Some(n) = wcm else {
        return Ok(Status::Pass);
    };
    let report = x.is_wcm_homological(n);
    if machine {
        let _ = writeln!(
            out,
            "wcm\tn={n}\tholds={}\tviolation={}",
            report.holds(),
            report.violation.as_deref().unwrap_or("")
        );
    } else {
        let _ = writeln!(out, "{report}");
    }
    Ok(if report.holds() {
        Status::Pass
    } else {
        Status::Fail
    })
}

fn cmd_render(object: &RenderObject, out: &mut String) -> Result<Status> {
    match object {
        RenderObject::Triple { text, table } => {
            let g = Groupoid::new(load_table(table)?);
            out.push_str(&g.to_dot(&parse_operand(&g, text)?));
        }
        RenderObject::Forest { text, arity } => {
            out.push_str(&Forest::parse(*arity, text)?.to_dot("forest"));
        }
        RenderObject::Matching { text, arity } => {
            let f = Forest::parse(*arity, text)?;
            out.push_str(&matching_to_dot(f.num_leaves(), &f.to_matching()?));
        }
    }
    Ok(Status::Pass)
}

fn cmd_kseries(n_max: usize, fmt: Format, out: &mut String) -> Result<Status> {
    let (w, wt) = grigsolver::k_witnesses();
    let mut ok = true;
    if fmt != Format::Machine {
        let _ = writeln!(out, "n\tk_level(w)\tk_level(w~)");
    }
    let (mut x, mut y) = (w, wt);
    // words outside the kernel have no level
    let level = |w: &GroupWord| -> Result<Option<usize>> {
        if grigsolver::is_identity(w) {
            grigsolver::k_level(w, n_max + 2)
        } else {
            Ok(None)
        }
    };
    let show = |l: Option<usize>| l.map_or("nontrivial".to_string(), |l| l.to_string());
    for n in 0..=n_max {
        let lx = level(&x)?;
        let ly = level(&y)?;
        ok &= lx == Some(n + 1) && ly == Some(n + 1);
        if fmt == Format::Machine {
            let _ = writeln!(out, "kseries\tn={n}\tw={}\twt={}", show(lx), show(ly));
        } else {
            let _ = writeln!(out, "{n}\t{}\t{}", show(lx), show(ly));
        }
        x = grigsolver::sigma_endo(&x);
        y = grigsolver::sigma_endo(&y);
    }
    Ok(if ok { Status::Pass } else { Status::Fail })
}

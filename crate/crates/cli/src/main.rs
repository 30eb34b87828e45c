//! `dyb`: command-line front end. Data goes to stdout, progress and errors
//! to stderr. Exit status is 0 on success, 1 when a check fails and 2 on
//! bad input.

use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dybkit::bialgebra::{emit_presentations, phi_homomorphism_report, star_triangular_check};
use dybkit::composite::{build_composite, QuasigroupFamily, YbCandidate};
use dybkit::dyb::{are_equivalent, check_braid_on_quiver, check_dybe, check_invariance, classify, CheckReport, DybCandidate};
use dybkit::dynset::DynSet;
use dybkit::embedding::{braided_quiver, q_object, BraidedQuiverMap};
use dybkit::fixtures;
use dybkit::json::{parse, parse_serde, tag_serialize, to_json, to_json_pretty, Document};
use dybkit::ph::{sigma_from_ternary, sigma_one, ternary_classify, ternary_from_band, LeftQuasigroup, Strictness, TernaryOp};
use dybkit::report::render_report;
use dybkit::search::{census_ternary, census_yb, search_ternary, search_yb, Filter, SearchSpec};
use dybkit::Error;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dyb", version, about = "Dynamical Yang-Baxter maps on finite carriers")]
struct Cli {
    /// Human-readable text instead of JSON where a rendering exists.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a candidate; with no check flag, invariance and the DYBE are run.
    Verify {
        /// Candidate or braided quiver map; stdin when omitted or "-".
        file: Option<PathBuf>,
        #[arg(long)]
        dybe: bool,
        #[arg(long)]
        invariance: bool,
        #[arg(long)]
        braid: bool,
    },
    /// Build a candidate.
    #[command(subcommand)]
    Construct(Construct),
    /// Enumerate ternary tables or Yang-Baxter maps.
    #[command(subcommand)]
    Search(Search),
    /// Subclass flags of a candidate or a ternary table.
    Classify { file: Option<PathBuf> },
    /// Look for an isomorphism intertwining two candidates.
    Equiv { first: PathBuf, second: PathBuf },
    /// Image under the embedding: a dynamical set becomes a quiver, a candidate a braided quiver map.
    Embed { file: Option<PathBuf> },
    /// Face model, presentations and the homomorphism checks.
    Bialg {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        path_cap: usize,
    },
    /// Print a built-in fixture.
    Fixture {
        #[arg(value_enum)]
        name: FixtureName,
        /// Size for the sized fixtures.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// σ(λ)(x, y) from a ternary table on a dynamical set of PH type.
    FromTernary {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        ternary: PathBuf,
        #[command(flatten)]
        carrier: Carrier,
    },
    /// The solution attached to a left quasigroup.
    FromQuasigroup {
        #[arg(long)]
        quasigroup: PathBuf,
    },
    /// ⟨a,b,c⟩ = b⊛c for a binary operation satisfying the band identities.
    FromBand {
        #[arg(long)]
        band: PathBuf,
        #[arg(long, value_enum, default_value_t = Level::Nazo)]
        strictness: Level,
        #[command(flatten)]
        carrier: Carrier,
    },
    /// Colored composite from a Yang-Baxter map, a ternary table and a quasigroup family.
    Composite {
        #[arg(long)]
        yb: PathBuf,
        #[arg(long)]
        ternary: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Args)]
struct Carrier {
    /// `K` for the terminal dynamical set, otherwise a dynamical set file.
    #[arg(long, default_value = "K")]
    carrier: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Nazo,
    Band,
    Semilattice,
}

#[derive(Subcommand)]
enum Search {
    Ternary {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
    Yb {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
}

#[derive(Args)]
struct SearchOpts {
    /// Comma-separated: unitary, idempotent, invertible, vertex_condition.
    #[arg(long, value_delimiter = ',')]
    filters: Vec<String>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    limit: Option<usize>,
    /// One representative per relabeling orbit.
    #[arg(long)]
    symmetry_reduce: bool,
    /// Print only the raw and orbit counts.
    #[arg(long)]
    census: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureName {
    /// ℤ/2 or ℤ/n as a dynamical set over itself.
    Fg,
    /// Terminal dynamical set on n vertices.
    K,
    /// ⟨a,b,c⟩ = a - b + c.
    Group,
    /// ⟨a,b,c⟩ = b + c, which fails the identities.
    Bad,
    /// Ternary table of the chain band.
    Chain,
    Fan,
    Flip,
    Shift2,
    Z2Family,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BandDoc {
    n: usize,
    op: Vec<Vec<usize>>,
}

/// What a command produced: data for stdout and whether its check passed.
struct Output {
    body: String,
    passed: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, passed: true }
    }
}

fn read(path: Option<&PathBuf>) -> Result<(String, String), Error> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let name = p.display().to_string();
            std::fs::read_to_string(p)
                .map(|t| (name.clone(), t))
                .map_err(|e| Error::Parse {
                    path: name,
                    position: "file".into(),
                    message: e.to_string(),
                })
        }
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).map_err(|e| Error::Parse {
                path: "<stdin>".into(),
                position: "stream".into(),
                message: e.to_string(),
            })?;
            Ok(("<stdin>".into(), text))
        }
    }
}

fn load<T: Document>(path: Option<&PathBuf>) -> Result<T, Error> {
    let (name, text) = read(path)?;
    parse(&name, &text)
}

fn has_key(text: &str, key: &str) -> bool {
    serde_json::from_str::<Value>(text).is_ok_and(|v| v.get(key).is_some())
}

fn carrier(c: &Carrier, n: usize) -> Result<DynSet, Error> {
    if c.carrier == "K" {
        DynSet::terminal(n)
    } else {
        load(Some(&PathBuf::from(&c.carrier)))
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn report_output(r: &CheckReport, text: bool) -> Output {
    let body = if text { render_report(r) } else { pretty(&tag_serialize(r)) };
    Output { body, passed: r.passed }
}

fn verify(file: Option<&PathBuf>, dybe: bool, invariance: bool, braid: bool, text: bool) -> Result<Output, Error> {
    let (name, src) = read(file)?;
    if has_key(&src, "quiver") {
        let b: BraidedQuiverMap = parse(&name, &src)?;
        return Ok(report_output(&check_braid_on_quiver(&b), text));
    }
    let s: DybCandidate = parse(&name, &src)?;
    let (invariance, dybe) = if !(dybe || invariance || braid) { (true, true) } else { (invariance, dybe) };
    let mut parts = Vec::new();
    if invariance {
        parts.push(check_invariance(&s));
    }
    if dybe {
        parts.push(check_dybe(&s));
    }
    if braid {
        let inv = check_invariance(&s);
        parts.push(if inv.passed { check_braid_on_quiver(&braided_quiver(&s)?) } else { inv });
    }
    let report = parts.into_iter().reduce(CheckReport::and).expect("at least one check");
    Ok(report_output(&report, text))
}

fn construct(c: &Construct) -> Result<Output, Error> {
    let s = match c {
        Construct::FromTernary { lambda, ternary, carrier: car } => {
            let t: TernaryOp = load(Some(ternary))?;
            if t.n() != *lambda {
                return Err(Error::SizeMismatch(format!("--lambda {lambda} but the ternary table has n = {}", t.n())));
            }
            sigma_from_ternary(&carrier(car, *lambda)?, &t)?
        }
        Construct::FromQuasigroup { quasigroup } => sigma_one(&load::<LeftQuasigroup>(Some(quasigroup))?),
        Construct::FromBand { band, strictness, carrier: car } => {
            let (name, src) = read(Some(band))?;
            let doc: BandDoc = parse_serde(&name, &src)?;
            if doc.op.len() != doc.n {
                return Err(Error::Shape {
                    table: "band",
                    detail: format!("expected {} rows, found {}", doc.n, doc.op.len()),
                });
            }
            let level = match strictness {
                Level::Nazo => Strictness::Nazo,
                Level::Band => Strictness::Band,
                Level::Semilattice => Strictness::Semilattice,
            };
            let t = ternary_from_band(&doc.op, level)?;
            sigma_from_ternary(&carrier(car, doc.n)?, &t)?
        }
        Construct::Composite { yb, ternary, family } => {
            let s0: YbCandidate = load(Some(yb))?;
            let t: TernaryOp = load(Some(ternary))?;
            let fam: QuasigroupFamily = load(Some(family))?;
            build_composite(&s0, &t, &fam)?.1
        }
    };
    Ok(Output::ok(to_json_pretty(&s)))
}

fn spec(size: usize, opts: &SearchOpts) -> Result<SearchSpec, Error> {
    let mut spec = SearchSpec::new(size).jobs(opts.jobs.max(1));
    for f in opts.filters.iter().filter(|f| !f.trim().is_empty()) {
        spec = spec.filter(f.parse::<Filter>()?);
    }
    if opts.symmetry_reduce {
        spec = spec.reduced();
    }
    if let Some(l) = opts.limit {
        spec = spec.limit(l);
    }
    Ok(spec)
}

fn search(s: &Search, text: bool) -> Result<Output, Error> {
    let (kind, size, opts) = match s {
        Search::Ternary { n, opts } => ("ternary", *n, opts),
        Search::Yb { k, opts } => ("yb", *k, opts),
    };
    let spec = spec(size, opts)?;
    eprintln!("searching {kind} tables of size {size} with {} worker(s)", spec.jobs);
    if opts.census {
        let c = if kind == "ternary" { census_ternary(&spec)? } else { census_yb(&spec)? };
        eprintln!("done");
        let body = if text { render_report(&c) } else { tag_serialize(&c).to_string() + "\n" };
        return Ok(Output::ok(body));
    }
    let lines: Vec<String> = if kind == "ternary" {
        search_ternary(&spec)?.iter().map(to_json).collect()
    } else {
        search_yb(&spec)?.iter().map(to_json).collect()
    };
    eprintln!("emitted {} table(s)", lines.len());
    let mut body = lines.join("\n");
    if !body.is_empty() {
        body.push('\n');
    }
    Ok(Output::ok(body))
}

fn classify_cmd(file: Option<&PathBuf>, text: bool) -> Result<Output, Error> {
    let (name, src) = read(file)?;
    let body = if has_key(&src, "table") {
        let f = ternary_classify(&parse::<TernaryOp>(&name, &src)?);
        if text { render_report(&f) } else { pretty(&tag_serialize(&f)) }
    } else {
        let f = classify(&parse::<DybCandidate>(&name, &src)?)?;
        if text { render_report(&f) } else { pretty(&tag_serialize(&f)) }
    };
    Ok(Output::ok(body))
}

fn equiv(first: &PathBuf, second: &PathBuf) -> Result<Output, Error> {
    let s1: DybCandidate = load(Some(first))?;
    let s2: DybCandidate = load(Some(second))?;
    let found = are_equivalent(&s1, &s2)?;
    let witness = found.as_ref().map(|f| serde_json::from_str::<Value>(&to_json(f)).expect("json"));
    let v = tag_serialize(&json!({ "equivalent": found.is_some(), "witness": witness }));
    Ok(Output::ok(pretty(&v)))
}

fn embed(file: Option<&PathBuf>) -> Result<Output, Error> {
    let (name, src) = read(file)?;
    let body = if has_key(&src, "dynset") {
        to_json_pretty(&braided_quiver(&parse::<DybCandidate>(&name, &src)?)?)
    } else {
        to_json_pretty(&q_object(&parse::<DynSet>(&name, &src)?))
    };
    Ok(Output::ok(body))
}

fn bialg(file: Option<&PathBuf>, path_cap: usize, text: bool) -> Result<Output, Error> {
    let s: DybCandidate = load(file)?;
    let star = star_triangular_check(&s);
    if !star.passed() {
        let body = if text {
            render_report(&star)
        } else {
            pretty(&tag_serialize(&json!({ "star_triangular": star, "presentations": null, "phi": null })))
        };
        return Ok(Output { body, passed: false });
    }
    let pres = emit_presentations(&s, path_cap)?;
    let phi = phi_homomorphism_report(&s, path_cap)?;
    let body = if text {
        let x = s.dynset();
        let mut out = render_report(&star);
        for p in [&pres.a, &pres.b, &pres.b_plus] {
            out.push_str(&p.render_text(x));
        }
        out.push_str(&render_report(&phi));
        out
    } else {
        pretty(&tag_serialize(&json!({ "star_triangular": star, "presentations": pres, "phi": phi })))
    };
    Ok(Output { body, passed: phi.passed })
}

fn fixture(name: FixtureName, n: usize) -> Result<Output, Error> {
    let need_n = || if n == 0 { Err(Error::EmptyVertexSet) } else { Ok(n) };
    let body = match name {
        FixtureName::Fg => to_json_pretty(&if n == 2 { fixtures::f_g() } else { LeftQuasigroup::cyclic(need_n()?).dynset() }),
        FixtureName::K => to_json_pretty(&fixtures::k(need_n()?)),
        FixtureName::Group => to_json_pretty(&fixtures::group_ternary(need_n()?)),
        FixtureName::Bad => {
            let n = need_n()?;
            to_json_pretty(&TernaryOp::from_fn(n, |_, b, c| (b + c) % n))
        }
        FixtureName::Chain => to_json_pretty(&fixtures::chain_max_ternary(need_n()?)),
        FixtureName::Fan => to_json_pretty(&fixtures::fan_ternary()),
        FixtureName::Flip => to_json_pretty(&fixtures::flip(need_n()?)),
        FixtureName::Shift2 => to_json_pretty(&fixtures::shift2()),
        FixtureName::Z2Family => to_json_pretty(&fixtures::z2_family()),
    };
    Ok(Output::ok(body))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let text = cli.text;
    match &cli.command {
        Command::Verify { file, dybe, invariance, braid } => verify(file.as_ref(), *dybe, *invariance, *braid, text),
        Command::Construct(c) => construct(c),
        Command::Search(s) => search(s, text),
        Command::Classify { file } => classify_cmd(file.as_ref(), text),
        Command::Equiv { first, second } => equiv(first, second),
        Command::Embed { file } => embed(file.as_ref()),
        Command::Bialg { file, path_cap } => bialg(file.as_ref(), *path_cap, text),
        Command::Fixture { name, n } => fixture(*name, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = BufWriter::new(io::stdout().lock());
            let _ = stdout.write_all(out.body.as_bytes());
            if !out.body.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            let _ = stdout.flush();
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            let v = tag_serialize(&json!({ "error": { "code": e.code(), "message": e.to_string() } }));
            eprintln!("{v}");
            ExitCode::from(2)
        }
    }
}

//! The `nok` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bodies::{self, ClassifiedIdeal, IdealKind};
use crate::error::{Error, Result};
use crate::families;
use crate::ideal::{self, ExponentVector, MonomialIdeal};
use crate::invariants;
use crate::parse::{self, FamilyFile, IdealFile};
use crate::polyhedron::{self, RationalPolyhedron};
use crate::rational::{format_rat, parse_rat, Rat};
use crate::report;
use crate::simis;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERTEX_LIMIT: i32 = 3;

pub const DEFAULT_VERTEX_LIMIT: usize = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "nok",
    version,
    about = "Newton polyhedra, symbolic polyhedra and Newton-Okounkov bodies of monomial ideals"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel candidate evaluation.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polyhedron NP(I).
    Np { file: PathBuf },
    /// Symbolic polyhedron SP(I).
    Sp { file: PathBuf },
    /// Analytic spread and symbolic analytic spread.
    Spread { file: PathBuf },
    /// Vertex denominators, c, D, and the svd and sgt bounds.
    Constants { file: PathBuf },
    /// Minimal generators of I^(k).
    SymbolicPower {
        file: PathBuf,
        #[arg(short = 'k')]
        k: u32,
    },
    /// Minimal generators of the ideal of lattice points in r*NP(I).
    RealPower {
        file: PathBuf,
        #[arg(short = 'r', value_name = "P/Q")]
        r: String,
    },
    /// Membership of a monomial in I^k, its integral closure and I^(k).
    Member {
        file: PathBuf,
        /// `x*y^2` or `[1,2]`.
        #[arg(short = 'm', long)]
        monomial: String,
        #[arg(short = 'k', default_value_t = 1)]
        k: u32,
    },
    /// Hilbert basis of the Simis cone.
    Hilbert {
        file: PathBuf,
        #[arg(long, value_name = "B")]
        degree_bound: Option<u32>,
    },
    /// Bounded check of I^(dk) = (I^(d))^k; without -d, probes the svd window.
    Veronese {
        file: PathBuf,
        #[arg(short = 'd')]
        d: Option<u32>,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
    },
    /// Generator degrees of the normalized Rees algebra.
    NormalRees { file: PathBuf },
    /// Newton-Okounkov body of a graded family.
    FamilyBody { file: PathBuf },
    /// Smallest c <= cmax with (1/c) NP(I_c) equal to the body.
    Stabilize {
        file: PathBuf,
        #[arg(long, default_value_t = 30)]
        cmax: u32,
    },
    /// Whether NP(I) = SP(I).
    NpEqSp { file: PathBuf },
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::Np { .. } => "np",
            Command::Sp { .. } => "sp",
            Command::Spread { .. } => "spread",
            Command::Constants { .. } => "constants",
            Command::SymbolicPower { .. } => "symbolic-power",
            Command::RealPower { .. } => "real-power",
            Command::Member { .. } => "member",
            Command::Hilbert { .. } => "hilbert",
            Command::Veronese { .. } => "veronese",
            Command::NormalRees { .. } => "normal-rees",
            Command::FamilyBody { .. } => "family-body",
            Command::Stabilize { .. } => "stabilize",
            Command::NpEqSp { .. } => "np-eq-sp",
        }
    }

    fn file(&self) -> &Path {
        match self {
            Command::Np { file }
            | Command::Sp { file }
            | Command::Spread { file }
            | Command::Constants { file }
            | Command::SymbolicPower { file, .. }
            | Command::RealPower { file, .. }
            | Command::Member { file, .. }
            | Command::Hilbert { file, .. }
            | Command::Veronese { file, .. }
            | Command::NormalRees { file }
            | Command::FamilyBody { file }
            | Command::Stabilize { file, .. }
            | Command::NpEqSp { file } => file,
        }
    }

    /// Verb options that affect the result; output flags are left out so
    /// reports do not depend on them.
    fn options(&self) -> Value {
        match self {
            Command::SymbolicPower { k, .. } => json!({"k": k}),
            Command::RealPower { r, .. } => json!({"r": r}),
            Command::Member { monomial, k, .. } => json!({"monomial": monomial, "k": k}),
            Command::Hilbert { degree_bound, .. } => json!({"degree_bound": degree_bound}),
            Command::Veronese { d, kmax, .. } => json!({"d": d, "kmax": kmax}),
            Command::Stabilize { cmax, .. } => json!({"cmax": cmax}),
            _ => json!({}),
        }
    }
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_parse_error() {
        EXIT_PARSE
    } else if matches!(e, Error::TooManyVertices { .. }) {
        EXIT_VERTEX_LIMIT
    } else {
        EXIT_DOMAIN
    }
}

struct Report {
    result: Value,
    text: Vec<String>,
    notes: Vec<String>,
}

impl Report {
    fn new(result: Value) -> Self {
        Report {
            result,
            text: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

struct Input {
    text: String,
    sha256: String,
}

fn read_input(path: &Path) -> Result<Input> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| Error::Io(format!("{}: not UTF-8", path.display())))?;
    Ok(Input { text, sha256 })
}

fn fmt_point(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(format_rat).collect();
    format!("({})", parts.join(","))
}

fn fmt_monomial(vars: &[String], a: &ExponentVector) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(a.iter())
        .filter(|(_, &e)| e > 0)
        .map(|(x, &e)| if e == 1 { x.clone() } else { format!("{x}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn polyhedron_report(p: &RationalPolyhedron, label: &str) -> Result<Report> {
    let value = report::polyhedron(p)?;
    let mut r = Report::new(value);
    r.line(format!(
        "{label}: {} vertices, {} facets",
        p.vertices().len(),
        p.facets().len()
    ));
    for v in p.vertices() {
        r.line(format!("  vertex {}", fmt_point(v)));
    }
    for h in p.facets() {
        let normal: Vec<String> = h.normal().iter().map(|x| x.to_string()).collect();
        r.line(format!("  facet ({}) . x >= {}", normal.join(","), h.offset()));
    }
    r.line(format!("mdc = {}", polyhedron::mdc(p)?));
    Ok(r)
}

fn kind_notes(r: &mut Report, c: &ClassifiedIdeal) {
    if matches!(c.kind(), IdealKind::MPrimary) {
        r.note("m-primary ideal: SP(I) is taken equal to NP(I) and I^(k) = I^k");
    }
}

fn ideal_report(vars: &[String], i: &MonomialIdeal, label: &str) -> Report {
    let mut r = Report::new(report::ideal(i));
    r.line(format!("{label}: {} minimal generators", i.generators().len()));
    for g in i.generators() {
        r.line(format!("  {}", fmt_monomial(vars, g)));
    }
    r
}

fn load_ideal(input: &Input) -> Result<IdealFile> {
    parse::parse_ideal(&input.text)
}

fn load_family(input: &Input) -> Result<FamilyFile> {
    parse::parse_family(&input.text)
}

fn execute(cmd: &Command, input: &Input) -> Result<Report> {
    match cmd {
        Command::Np { .. } => {
            let f = load_ideal(input)?;
            polyhedron_report(&bodies::newton_polyhedron(f.ideal.ideal())?, "NP(I)")
        }
        Command::Sp { .. } => {
            let f = load_ideal(input)?;
            let mut r = polyhedron_report(&bodies::symbolic_polyhedron(&f.ideal)?, "SP(I)")?;
            kind_notes(&mut r, &f.ideal);
            Ok(r)
        }
        Command::Spread { .. } => {
            let f = load_ideal(input)?;
            let ell = invariants::analytic_spread(f.ideal.ideal())?;
            let ell_s = invariants::symbolic_analytic_spread(&f.ideal)?;
            let mut r = Report::new(json!({"ell": ell, "ell_s": ell_s}));
            r.line(format!("ell = {ell}"));
            r.line(format!("ell_s = {ell_s}"));
            kind_notes(&mut r, &f.ideal);
            Ok(r)
        }
        Command::Constants { .. } => {
            let f = load_ideal(input)?;
            let inv = invariants::invariant_report(&f.ideal)?;
            let mut r = Report::new(report::invariants(&inv));
            let denoms: Vec<String> = inv.constants.denoms.iter().map(|d| d.to_string()).collect();
            r.line(format!("kind = {}", inv.kind));
            r.line(format!("ell = {}, ell_s = {}", inv.ell, inv.ell_s));
            r.line(format!("vertex denominators d_i = [{}]", denoms.join(", ")));
            r.line(format!("c = {}", inv.constants.c));
            r.line(format!("D = {}", inv.constants.d_max));
            r.line(format!("NP(I) = SP(I): {}", inv.np_equals_sp));
            r.line(format!("svd window = [{}, {}]", inv.svd.lower, inv.svd.upper));
            r.line(format!("sgt bound max(ell_s*D - 1, D) = {}", inv.sgt.general));
            if let Some(b) = &inv.sgt.np_eq_sp {
                r.line(format!("sgt bound max(ell_s - 2, 1) = {b}"));
            }
            let h = &inv.sgt.hadamard;
            match &h.bound {
                Some(b) => r.line(format!("Hadamard sgt bound = {}", format_rat(b))),
                None => {
                    r.line(format!("Hadamard sgt bound floor = {}", h.bound_floor));
                    r.note(format!(
                        "H^2 = {} is not a rational square; the Hadamard bound is reported through its floor",
                        format_rat(&h.h_squared)
                    ));
                }
            }
            if inv.svd.clamped {
                r.note("ell_s = 1: the svd upper bound (ell_s - 1)c is raised to c");
            }
            kind_notes(&mut r, &f.ideal);
            Ok(r)
        }
        Command::SymbolicPower { k, .. } => {
            let f = load_ideal(input)?;
            let mut r = ideal_report(&f.vars, &bodies::symbolic_power(&f.ideal, *k)?, &format!("I^({k})"));
            kind_notes(&mut r, &f.ideal);
            Ok(r)
        }
        Command::RealPower { r: rs, .. } => {
            let f = load_ideal(input)?;
            let t = parse_rat(rs).ok_or_else(|| Error::Parse {
                line: 0,
                column: 0,
                message: format!("expected a rational `p/q` for -r, found `{rs}`"),
            })?;
            let label = format!("I^{{{}}}", format_rat(&t));
            Ok(ideal_report(&f.vars, &bodies::real_power(f.ideal.ideal(), &t)?, &label))
        }
        Command::Member { monomial, k, .. } => {
            let f = load_ideal(input)?;
            let a = parse::parse_exponent(&f.vars, monomial)?;
            if *k == 0 {
                return Err(Error::NonPositiveExponent);
            }
            let i = f.ideal.ideal();
            let in_power = ideal::power(i, *k)?.contains_monomial(&a);
            let cert = bodies::integral_closure_certificate(i, &a, *k)?;
            let symbolic = if f.ideal.supports_sp() {
                Some(bodies::member_symbolic(&f.ideal, &a, *k)?)
            } else {
                None
            };
            let np = bodies::newton_polyhedron(i)?;
            let cert_json = cert.as_ref().map(|c| {
                json!({
                    "weights": c.weights.iter().map(|(v, w)| json!({
                        "vertex": report::point(&np.vertices()[*v]),
                        "weight": report::rat(w),
                    })).collect::<Vec<_>>(),
                    "excess": report::point(&c.excess),
                })
            });
            let mut r = Report::new(json!({
                "monomial": report::exponent(&a),
                "k": k,
                "in_power": in_power,
                "in_integral_closure": cert.is_some(),
                "in_symbolic_power": symbolic,
                "certificate": cert_json,
            }));
            let m = fmt_monomial(&f.vars, &a);
            r.line(format!("{m} in I^{k}: {in_power}"));
            r.line(format!("{m} in closure(I^{k}): {}", cert.is_some()));
            match symbolic {
                Some(s) => r.line(format!("{m} in I^({k}): {s}")),
                None => r.note("symbolic power membership skipped: unsupported ideal class"),
            }
            if let Some(c) = &cert {
                let terms: Vec<String> = c
                    .weights
                    .iter()
                    .map(|(v, w)| format!("{}*{}", format_rat(w), fmt_point(&np.vertices()[*v])))
                    .collect();
                r.line(format!(
                    "certificate: a/{k} = {} + {}",
                    terms.join(" + "),
                    fmt_point(&c.excess)
                ));
            }
            Ok(r)
        }
        Command::Hilbert { degree_bound, .. } => {
            let f = load_ideal(input)?;
            let h = simis::hilbert_basis(&f.ideal, *degree_bound)?;
            let degrees: Vec<u32> = h.degrees.iter().copied().collect();
            let bound_c = invariants::bound_c_check(&f.ideal, &degrees)?;
            let mut value = report::hilbert(&h);
            value["bound_c_check"] = json!(bound_c);
            let mut r = Report::new(value);
            r.line(format!(
                "Hilbert basis: {} elements of positive degree",
                h.elements.len()
            ));
            for e in &h.elements {
                r.line(format!("  degree {}: {}", e.degree, fmt_monomial(&f.vars, &e.exponent)));
            }
            let ds: Vec<String> = degrees.iter().map(u32::to_string).collect();
            r.line(format!("degrees = {{{}}}", ds.join(",")));
            r.line(format!("sgt = {}", h.sgt));
            r.line(format!("c divides lcm(degrees) and each d_i is a degree: {bound_c}"));
            if h.exhaustive {
                r.note(format!(
                    "exhaustive: searched up to degree {}, the completeness bound is {}",
                    h.degree_bound_used, h.completeness_bound
                ));
            } else {
                r.note(format!(
                    "not exhaustive: searched up to degree {} below the completeness bound {}",
                    h.degree_bound_used, h.completeness_bound
                ));
            }
            kind_notes(&mut r, &f.ideal);
            Ok(r)
        }
        Command::Veronese { d, kmax, .. } => {
            let f = load_ideal(input)?;
            let mut r = match d {
                Some(d) => {
                    let v = simis::veronese_verify(&f.ideal, *d, *kmax)?;
                    let mut r = Report::new(report::veronese(&v));
                    match v.counterexample {
                        Some(k) => r.line(format!("I^({}) != (I^({d}))^{k}", d * k)),
                        None => r.line(format!("I^({d}k) = (I^({d}))^k for k <= {kmax}")),
                    }
                    r
                }
                None => {
                    let p = simis::svd_probe(&f.ideal, *kmax)?;
                    let mut r = Report::new(report::svd_probe(&p));
                    r.line(format!("svd candidate = {}", p.candidate));
                    r.line(format!("certified window = [{}, {}]", p.c, p.certified_upper));
                    if p.conclusive {
                        r.line(format!("svd = {}", p.candidate));
                    }
                    r
                }
            };
            r.note(format!("bounded check, k_max={kmax}"));
            kind_notes(&mut r, &f.ideal);
            Ok(r)
        }
        Command::NormalRees { .. } => {
            let f = load_ideal(input)?;
            let ell = invariants::analytic_spread(f.ideal.ideal())?;
            let bound = ell.saturating_sub(1).max(1);
            let degs = simis::normal_rees_generator_degrees(f.ideal.ideal())?;
            let mut r = Report::new(json!({"degrees": degs, "degree_bound": bound}));
            let ds: Vec<String> = degs.iter().map(u32::to_string).collect();
            r.line(format!("generator degrees = {{{}}}", ds.join(",")));
            r.note(format!("searched up to degree max(ell - 1, 1) = {bound}"));
            Ok(r)
        }
        Command::FamilyBody { .. } => {
            let f = load_family(input)?;
            let body = families::newton_okounkov_body(&f.family)?;
            let mut r = polyhedron_report(&body, &format!("Delta({} family)", f.family.name()))?;
            r.result = json!({"family": f.family.name(), "body": r.result});
            Ok(r)
        }
        Command::Stabilize { cmax, .. } => {
            let f = load_family(input)?;
            let s = families::stabilization_check(&f.family, *cmax)?;
            let mut value = report::stabilization(&s);
            if s.stabilized {
                let body = families::newton_okounkov_body(&f.family)?;
                value["ell"] = json!(polyhedron::mdc(&body)? + 1);
            }
            let mut r = Report::new(value);
            match (s.c, &s.witness) {
                (Some(c), _) => {
                    r.line(format!("stabilized at c = {c}"));
                    r.line(format!("ell = {}", r.result["ell"]));
                }
                (None, w) => {
                    r.line(format!("not stabilized up to {cmax}"));
                    if let Some(w) = w {
                        r.line(format!(
                            "witness vertex {} of the body lies outside (1/{c})NP(I_{c})",
                            fmt_point(&w.vertex),
                            c = w.c_tested
                        ));
                    }
                    r.note("a finite search cannot show the Rees algebra is not Noetherian");
                }
            }
            Ok(r)
        }
        Command::NpEqSp { .. } => {
            let f = load_ideal(input)?;
            let eq = bodies::np_equals_sp(&f.ideal)?;
            let mut r = Report::new(json!({"np_equals_sp": eq}));
            r.line(format!("NP(I) = SP(I): {eq}"));
            kind_notes(&mut r, &f.ideal);
            Ok(r)
        }
    }
}

fn render(cli: &Cli, input: &Input, r: &Report) -> String {
    if cli.json {
        let doc = json!({
            "command": {
                "verb": cli.command.verb(),
                "file": cli.command.file().display().to_string(),
                "options": cli.command.options(),
            },
            "input": {"sha256": input.sha256},
            "result": r.result,
            "notes": r.notes,
        });
        let mut s = serde_json::to_string(&doc).expect("JSON values always serialize");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for l in &r.text {
            s.push_str(l);
            s.push('\n');
        }
        for n in &r.notes {
            s.push_str("note: ");
            s.push_str(n);
            s.push('\n');
        }
        s
    }
}

fn vertex_limit() -> std::result::Result<usize, String> {
    match std::env::var("NOK_MAX_VERTICES") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&x| x > 0)
            .ok_or_else(|| format!("NOK_MAX_VERTICES must be a positive integer, found `{v}`")),
        Err(_) => Ok(DEFAULT_VERTEX_LIMIT),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let fail = |code: i32, msg: String| Outcome {
        code,
        stdout: String::new(),
        stderr: format!("nok: {msg}\n"),
    };
    match vertex_limit() {
        Ok(limit) => polyhedron::set_max_vertices(limit),
        Err(msg) => return fail(EXIT_PARSE, msg),
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return fail(EXIT_DOMAIN, e.to_string()),
    };
    let input = match read_input(cli.command.file()) {
        Ok(i) => i,
        Err(e) => return fail(exit_code(&e), e.to_string()),
    };
    match pool.install(|| execute(&cli.command, &input)) {
        Ok(r) => Outcome {
            code: EXIT_OK,
            stdout: render(&cli, &input, &r),
            stderr: String::new(),
        },
        Err(e) => fail(exit_code(&e), e.to_string()),
    }
}

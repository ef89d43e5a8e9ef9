use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use forge_core::certify::{
    galois_scan, pgl_pair_checks, unramified_certificate, CertifyOptions, DEFAULT_PRIME_BOUND, DEFAULT_TOLERANCE,
};
use forge_core::cheblucas::{
    admissible_thm2, admissible_thm3, admissible_thm3_refined, cheb_fixed_points_mod, cheb_monic, lucas_fixed_points_mod, lucas_number, lucas_poly,
    radical_root_witness,
};
use forge_core::families::{catalog, enumerate_admissible, family, lucas_specializations, specialize};
use forge_core::resolvent::{
    construct_pn, dual_orbit, orbit_example, orbit_examples, OrbitSpec, QuadElt, ResolventConfig, SearchMode,
};
use forge_core::selftest::run_selftest;
use forge_core::{ForgeError, IntPoly};

const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "forge", version, about = "Exact constructions and certificates for unramified cyclic extensions")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized subroutines.
    #[arg(long, global = true, env = "FORGE_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for scans, enumeration and branch search (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build P_n from an orbit of values by verified rounding.
    ConstructPn(ConstructPnArgs),
    /// Dual orbit of a quadratic a-orbit and its minimal polynomial.
    DualOrbit(DualOrbitArgs),
    /// Chebyshev power x^(.n), or its fixed points modulo p^k.
    Cheb(ChebArgs),
    /// Lucas number L_i, or the Lucas polynomial.
    Lucas(LucasArgs),
    /// Admissibility of j for the Chebyshev or Lucas radical at p^k.
    Admissible(AdmissibleArgs),
    /// Catalogued parametric families.
    Family {
        #[command(subcommand)]
        command: FamilyCommand,
    },
    /// Certify that a family member is unramified (exit 0 pass, 2 fail, 3 skip).
    Certify(CertifyArgs),
    /// Compare Frobenius cycle types with a permutation group.
    Scan(ScanArgs),
    /// Checks on the PGL(3,2) septic and its octic extension.
    PglPair(PglPairArgs),
    /// Run the worked-example suite.
    Selftest,
}

#[derive(Args)]
struct ConstructPnArgs {
    #[arg(long, default_value_t = 5)]
    n: u64,
    /// Orbit JSON file (n, values, provenance).
    #[arg(long, conflicts_with = "example", required_unless_present = "example")]
    orbit: Option<PathBuf>,
    /// Built-in orbit: sqrt-47 or sqrt-235.
    #[arg(long)]
    example: Option<String>,
    /// Try every branch assignment.
    #[arg(long)]
    search_branches: bool,
    /// Target polynomial JSON (integer array, constant term first).
    #[arg(long)]
    target: Option<PathBuf>,
    /// Starting precision in bits.
    #[arg(long, default_value_t = 256)]
    precision: u32,
}

#[derive(Args)]
struct DualOrbitArgs {
    #[arg(long, default_value_t = 5)]
    n: u64,
    /// JSON array of quadratic elements {a, b, d, den} indexed by I_n.
    #[arg(long, conflicts_with = "example", required_unless_present = "example")]
    a_values: Option<PathBuf>,
    #[arg(long)]
    example: Option<String>,
    /// Generator of (Z/n)^*.
    #[arg(long, default_value_t = 2)]
    generator: u64,
}

#[derive(Args)]
struct ChebArgs {
    #[arg(long, required_unless_present = "fixed_points")]
    n: Option<u32>,
    /// List fixed points of x^(.p) modulo p^k.
    #[arg(long, requires = "p")]
    fixed_points: bool,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Args)]
struct LucasArgs {
    #[arg(long, allow_hyphen_values = true)]
    i: i64,
    /// Print the Lucas polynomial L_i(x) instead (i >= 0).
    #[arg(long)]
    poly: bool,
    /// List fixed points of L_p modulo p^k, taking p = i.
    #[arg(long)]
    fixed_points: bool,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Args)]
struct AdmissibleArgs {
    #[arg(long, allow_hyphen_values = true)]
    j: BigInt,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Lucas radical L_p(x) = j instead of the Chebyshev one.
    #[arg(long)]
    lucas: bool,
    /// 2 for the Chebyshev radical, 3 for the Lucas one (same as --lucas).
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    theorem: Option<u8>,
    /// Lucas predicate with p^(2k+1) precision at the critical fixed points.
    #[arg(long)]
    refined: bool,
    /// Also search for a Newton witness of a p-adic root.
    #[arg(long)]
    witness: bool,
}

#[derive(Subcommand)]
enum FamilyCommand {
    List,
    Show { id: String },
    Specialize {
        id: String,
        #[arg(long, allow_hyphen_values = true)]
        t: BigInt,
    },
    Enumerate {
        id: String,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    Lucas {
        id: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = -3)]
        from: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 3)]
        to: i64,
    },
}

#[derive(Args)]
struct CertifyArgs {
    id: String,
    #[arg(long, allow_hyphen_values = true)]
    t: BigInt,
    /// Add a Galois scan against the family's group.
    #[arg(long)]
    scan: bool,
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
    prime_bound: u64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Write the certificate JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Polynomial JSON (integer array, constant term first).
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    poly: Option<String>,
    #[arg(long, requires = "t")]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<BigInt>,
    /// Scan the family's subfield polynomial instead of the main one.
    #[arg(long)]
    subfield: bool,
    /// Group name; defaults to the family's group.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PRIME_BOUND)]
    bound: u64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
}

#[derive(Args)]
struct PglPairArgs {
    /// Parameters for the real-root counts.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-3, 0, 1, 10])]
    t: Vec<i64>,
}

enum CliError {
    Usage(String),
    Internal(String),
}

impl From<ForgeError> for CliError {
    fn from(e: ForgeError) -> Self {
        use ForgeError::*;
        match e {
            NotPrime(_) | Precondition(_) | NotCoprime { .. } | NotAnOrbit(_) | UnknownFamily(_) | UnknownGroup(_)
            | UnknownSequence(_) | NoLucasRules(_) | ApolarDegree(_) | Reducible | Parse(_) | Json(_)
            | DegreeTooSmall { .. } | ZeroModP(_) => CliError::Usage(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Text or JSON rendering of a command's result, plus its exit code.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, code: 0 }
    }
}

fn to_value<T: Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let s = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_poly(s: &str) -> CliResult<IntPoly> {
    serde_json::from_str(s).map_err(|e| CliError::Usage(format!("polynomial must be a JSON integer array: {e}")))
}

fn construct(a: &ConstructPnArgs) -> CliResult<Output> {
    let (orbit, mut target): (OrbitSpec, Option<IntPoly>) = match (&a.orbit, &a.example) {
        (Some(path), _) => (read_json(path)?, None),
        (None, Some(name)) => {
            let ex = orbit_example(name)?;
            (dual_orbit(ex.n, &ex.a, ex.generator)?.orbit, Some(ex.printed.clone()))
        }
        (None, None) => return Err(CliError::Usage("give --orbit or --example".into())),
    };
    if let Some(path) = &a.target {
        target = Some(read_json(path)?);
    }
    let mode = if a.search_branches || a.example.is_some() { SearchMode::Exhaustive } else { SearchMode::Fixed };
    let r = construct_pn(&ResolventConfig::new(a.n)?, &orbit, mode, target.as_ref(), a.precision)?;
    let verified: Vec<Value> = r
        .verified
        .iter()
        .map(|(p, count, branch)| json!({ "poly": p, "branches": count, "first_branch": branch }))
        .collect();
    let mut text = format!("{}\nbranch {:?}, {} bits, {} branches tried", r.poly, r.branch, r.precision, r.branches_tried);
    match (&target, r.target_match) {
        (Some(t), Some(true)) => text.push_str(&format!("\nmatches target {t}")),
        (Some(t), _) => text.push_str(&format!("\ndiscrepancy: target {t} is not among the verified polynomials")),
        _ => {}
    }
    Ok(Output::new(
        text,
        json!({
            "poly": r.poly,
            "branch": r.branch,
            "precision": r.precision,
            "branches_tried": r.branches_tried,
            "verified": verified,
            "target": target,
            "target_match": r.target_match,
        }),
    ))
}

fn dual(a: &DualOrbitArgs) -> CliResult<Output> {
    let (n, values, generator): (u64, Vec<QuadElt>, u64) = match (&a.a_values, &a.example) {
        (Some(path), _) => (a.n, read_json(path)?, a.generator),
        (None, Some(name)) => {
            let ex = orbit_example(name)?;
            (ex.n, ex.a.clone(), ex.generator)
        }
        (None, None) => return Err(CliError::Usage("give --a-values or --example".into())),
    };
    let d = dual_orbit(n, &values, generator)?;
    let text = format!(
        "{}\ncyclic order {:?}{}",
        d.poly,
        d.cycle,
        if d.degenerate { "\ndegenerate: all b coincide" } else { "" }
    );
    Ok(Output::new(
        text,
        json!({ "poly": d.poly, "cycle": d.cycle, "degenerate": d.degenerate, "orbit": to_value(&d.orbit)? }),
    ))
}

fn residues(v: &[forge_core::PAdicInt]) -> Vec<String> {
    v.iter().map(|r| r.value.to_string()).collect()
}

fn cheb(a: &ChebArgs) -> CliResult<Output> {
    if a.fixed_points {
        let p = a.p.unwrap_or_default();
        let fixed = residues(&cheb_fixed_points_mod(p, a.k)?);
        return Ok(Output::new(fixed.join(" "), json!({ "p": p, "k": a.k, "fixed_points": fixed })));
    }
    let n = a.n.unwrap_or_default();
    let f = cheb_monic(n);
    Ok(Output::new(f.to_string(), json!({ "n": n, "poly": f })))
}

fn lucas(a: &LucasArgs) -> CliResult<Output> {
    if a.fixed_points {
        let p = u64::try_from(a.i).map_err(|_| CliError::Usage("p must be positive".into()))?;
        let fixed = residues(&lucas_fixed_points_mod(p, a.k)?);
        return Ok(Output::new(fixed.join(" "), json!({ "p": p, "k": a.k, "fixed_points": fixed })));
    }
    if a.poly {
        let n = u32::try_from(a.i).map_err(|_| CliError::Usage("polynomial index must be non-negative".into()))?;
        let f = lucas_poly(n);
        return Ok(Output::new(f.to_string(), json!({ "i": a.i, "poly": f })));
    }
    let v = lucas_number(a.i);
    Ok(Output::new(v.to_string(), json!({ "i": a.i, "value": v.to_string() })))
}

fn admissible(a: &AdmissibleArgs) -> CliResult<Output> {
    let lucas = a.lucas || a.refined || a.theorem == Some(3);
    if a.theorem == Some(2) && lucas {
        return Err(CliError::Usage("--theorem 2 is the Chebyshev radical; drop --lucas/--refined".into()));
    }
    let r = match (lucas, a.refined) {
        (false, _) => admissible_thm2(&a.j, a.p, a.k)?,
        (true, false) => admissible_thm3(&a.j, a.p, a.k)?,
        (true, true) => admissible_thm3_refined(&a.j, a.p, a.k)?,
    };
    let mut json = to_value(&r)?;
    let mut text = format!("{}: {}", if r.admissible { "admissible" } else { "not admissible" }, r.reason);
    if a.witness {
        let w = radical_root_witness(&a.j, a.p, lucas, 2 * a.k + 6)?;
        json["witness"] = to_value(&w)?;
        text.push_str(&match &w {
            Some(root) => format!("\n{}-adic root {root}", a.p),
            None => "\nno Newton witness found".into(),
        });
    }
    Ok(Output::new(text, json))
}

fn family_cmd(c: &FamilyCommand) -> CliResult<Output> {
    match c {
        FamilyCommand::List => {
            let fams = catalog()?;
            let text: Vec<String> = fams.iter().map(|f| format!("{:<7} {:<7} {}", f.id, f.group, f.description)).collect();
            let json: Vec<Value> =
                fams.iter().map(|f| json!({ "id": f.id, "group": f.group, "description": f.description })).collect();
            Ok(Output::new(text.join("\n"), Value::Array(json)))
        }
        FamilyCommand::Show { id } => {
            let f = family(id)?;
            let mut text = format!("{} ({})\n{}\nmain: {}", f.id, f.group, f.description, f.main.printed);
            if let Some(s) = &f.subfield {
                text.push_str(&format!("\nsubfield: {}", s.printed));
            }
            if let Some(p) = f.prime {
                let classes: Vec<String> = f.classes.iter().map(|(r, m)| format!("{r} mod {m}")).collect();
                text.push_str(&format!("\nprime {p}; classes {}", classes.join(", ")));
            }
            for rule in &f.lucas {
                text.push_str(&format!("\nlucas: {}", rule.describe()));
            }
            for note in &f.notes {
                text.push_str(&format!("\nnote: {note}"));
            }
            Ok(Output::new(text, to_value(f)?))
        }
        FamilyCommand::Specialize { id, t } => {
            let inst = specialize(id, t)?;
            let mut text = format!("main: {}", inst.main);
            if let Some(s) = &inst.subfield {
                text.push_str(&format!("\nsubfield: {s}"));
            }
            text.push_str(&format!("\nadmissible: {}", inst.admissible));
            Ok(Output::new(text, to_value(&inst)?))
        }
        FamilyCommand::Enumerate { id, from, to } => {
            if from > to {
                return Err(CliError::Usage("--from must not exceed --to".into()));
            }
            let ts = enumerate_admissible(id, *from, *to)?;
            let text: Vec<String> = ts.iter().map(ToString::to_string).collect();
            Ok(Output::new(text.join(" "), json!({ "family": id, "from": from, "to": to, "t": ts })))
        }
        FamilyCommand::Lucas { id, from, to } => {
            let specs = lucas_specializations(id, *from, *to)?;
            let text: Vec<String> = specs
                .iter()
                .map(|s| format!("rule {} i = {:>3}: t = {} (s = {}), admissible {}", s.rule, s.i, s.instance.t, s.pell_s, s.instance.admissible))
                .collect();
            Ok(Output::new(text.join("\n"), to_value(&specs)?))
        }
    }
}

fn certify(a: &CertifyArgs, seed: u64) -> CliResult<Output> {
    let inst = specialize(&a.id, &a.t)?;
    let opts = CertifyOptions { seed, scan: a.scan, prime_bound: a.prime_bound, tolerance: a.tolerance };
    let c = unramified_certificate(&inst, &opts)?;
    let body = c.to_json()?;
    if let Some(path) = &a.out {
        std::fs::write(path, format!("{body}\n")).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    let mut text = format!("{} t = {}: {:?}", c.family, c.t, c.verdict);
    for check in &c.checks {
        text.push_str(&format!("\n  {:<21} {:?}", check.name, check.status));
    }
    if let Some(n) = c.newton() {
        text.push_str(&format!("\n  witness u = {} ({}-adic root {})", n.start, n.p, n.root));
    }
    let mut out = Output::new(text, to_value(&c)?);
    out.code = c.verdict.exit_code() as u8;
    Ok(out)
}

fn scan(a: &ScanArgs) -> CliResult<Output> {
    let (f, default_group) = match (&a.poly, &a.family) {
        (Some(p), _) => (parse_poly(p)?, None),
        (None, Some(id)) => {
            let inst = specialize(id, a.t.as_ref().expect("clap requires t"))?;
            let spec = inst.spec()?;
            if a.subfield {
                let s = inst.subfield.ok_or_else(|| CliError::Usage(format!("{id} has no subfield polynomial")))?;
                (s, None)
            } else {
                (inst.main, Some(spec.group.clone()))
            }
        }
        (None, None) => return Err(CliError::Usage("give --poly or --family".into())),
    };
    let group = a
        .group
        .clone()
        .or(default_group)
        .ok_or_else(|| CliError::Usage("--group is required here".into()))?;
    let r = galois_scan(&f, a.bound, &group, a.tolerance)?;
    let mut text = format!(
        "{}: {} ({} primes, {} skipped, distance {:.4})",
        group,
        if r.consistent { "consistent" } else { "inconsistent" },
        r.primes_used,
        r.primes_skipped,
        r.distance
    );
    for (k, v) in &r.histogram {
        let expected = r.expected_frequencies.get(k).copied().unwrap_or(0.0);
        text.push_str(&format!("\n  {k:<12} {v:>6}  expected {expected:.4}"));
    }
    if !r.foreign_patterns.is_empty() {
        text.push_str(&format!("\n  foreign: {}", r.foreign_patterns.join(", ")));
    }
    Ok(Output::new(text, to_value(&r)?))
}

fn pgl(a: &PglPairArgs) -> CliResult<Output> {
    let r = pgl_pair_checks(&a.t)?;
    let rows = [
        ("disc(septic) = Q^2", r.septic_disc_is_q_squared),
        ("disc(octic) = Q^2", r.octic_disc_is_q_squared),
        ("septic mod 2", r.septic_mod2_constant),
        ("octic mod 2, t odd", r.octic_mod2_odd),
        ("octic mod 2, t even", r.octic_mod2_even),
        ("Q = 1 mod 2", r.q_odd),
        ("septic: 3 real roots", r.septic_three_real),
        ("octic: 4 real roots", r.octic_four_real),
    ];
    let mut text: Vec<String> = rows.iter().map(|(k, v)| format!("{k:<22} {}", if *v { "pass" } else { "FAIL" })).collect();
    for c in &r.real_roots {
        text.push(format!("t = {:>4}: {} / {} real roots", c.t, c.septic, c.octic));
    }
    let mut out = Output::new(text.join("\n"), to_value(&r)?);
    if !r.all_pass() {
        out.code = 1;
    }
    Ok(out)
}

fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::ConstructPn(a) => construct(a),
        Command::DualOrbit(a) => dual(a),
        Command::Cheb(a) => cheb(a),
        Command::Lucas(a) => lucas(a),
        Command::Admissible(a) => admissible(a),
        Command::Family { command } => family_cmd(command),
        Command::Certify(a) => certify(a, cli.seed),
        Command::Scan(a) => scan(a),
        Command::PglPair(a) => pgl(a),
        Command::Selftest => {
            orbit_examples()?;
            let r = run_selftest(cli.seed);
            let mut out = Output::new(r.render().trim_end(), to_value(&r)?);
            if !r.ok() {
                out.code = 1;
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("forge: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json { serde_json::to_string_pretty(&out.json).expect("serializable") } else { out.text };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(out.code)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("forge: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Internal(m)) => {
            eprintln!("forge: internal error: {m}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

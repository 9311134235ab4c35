use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use ctpair::context::{derive_subgroup_context, dual_decorated, selmer, validate_context};
use ctpair::ctp::{ctp_with, CtpSetup};
use ctpair::fieldchange::{restrict_decorated, restrict_sequence};
use ctpair::io::{self, ContextFile};
use ctpair::verify::{self, Status, VerifyOptions};
use ctpair::{group_change, ClassMap, CohomologyGroup, GModule, Induced, LoadError, Subgroup};

#[derive(Parser)]
#[command(name = "ctpair", version, about = "Cassels-Tate pairings over finite duality contexts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check reciprocity, and local duality for every module with --strict.
    Validate {
        context: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// H^n(H, M) with basis representatives.
    Cohomology {
        context: PathBuf,
        #[arg(long)]
        module: String,
        /// Defaults to the group the module lives on.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long)]
        degree: usize,
    },
    /// The Selmer group of a decorated module and of its dual.
    Selmer {
        context: PathBuf,
        #[arg(long)]
        decorated: String,
    },
    /// The pairing on a sequence: the full generator matrix, or one value.
    Ctp {
        context: PathBuf,
        #[arg(long)]
        sequence: String,
        /// Index into the elements of Sel(M2).
        #[arg(long, requires = "psi")]
        phi: Option<usize>,
        /// Index into the elements of Sel(M1^∨).
        #[arg(long, requires = "phi")]
        psi: Option<usize>,
        /// Randomize the choices in the recipe.
        #[arg(long)]
        seed: Option<u64>,
        /// Recompute with this many further seeds and compare.
        #[arg(long, default_value_t = 0)]
        rechoose: u64,
    },
    /// Write the context obtained by passing to a subgroup.
    Induce {
        context: PathBuf,
        #[arg(long)]
        subgroup: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Dump res, cores and Shapiro matrices for a module and subgroup.
    Maps {
        context: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        degree: usize,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 12)]
        max_order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write the shipped example contexts.
    Fixtures {
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Either an input problem (exit 2) or a failed property (exit 1).
enum Failure {
    Input(String),
    Property,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { context, strict } => validate(&context, strict),
        Command::Cohomology { context, module, subgroup, degree } => cohomology(&context, &module, subgroup.as_deref(), degree),
        Command::Selmer { context, decorated } => selmer_cmd(&context, &decorated),
        Command::Ctp { context, sequence, phi, psi, seed, rechoose } => ctp_cmd(&context, &sequence, phi.zip(psi), seed, rechoose),
        Command::Induce { context, subgroup, output } => induce(&context, &subgroup, &output),
        Command::Maps { context, module, subgroup, degree } => maps(&context, &module, &subgroup, degree),
        Command::Verify { suite, max_order, seed, json } => verify_cmd(&suite, VerifyOptions { max_order, seed }, json.as_deref()),
        Command::Fixtures { output } => fixtures(&output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<ContextFile, LoadError> {
    io::load(path)
}

fn validate(path: &Path, strict: bool) -> Outcome {
    let f = load(path)?;
    let modules: Vec<(String, Arc<GModule>)> = f.modules.iter().filter(|(_, m)| m.group() == &f.context.ambient).map(|(k, m)| (k.clone(), m.clone())).collect();
    let items = validate_context(&f.context, &modules, strict)?;
    let mut ok = true;
    for it in &items {
        let mark = if it.passed { "ok  " } else { "FAIL" };
        match &it.witness {
            Some(w) => println!("{mark} {}: {w}", it.check),
            None => println!("{mark} {}", it.check),
        }
        ok &= it.passed;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn module<'a>(f: &'a ContextFile, name: &str) -> Result<&'a Arc<GModule>, Failure> {
    f.modules.get(name).ok_or_else(|| Failure::Input(format!("unknown module \"{name}\"")))
}

fn subgroup<'a>(f: &'a ContextFile, name: &str) -> Result<&'a Subgroup, Failure> {
    f.subgroups.get(name).ok_or_else(|| Failure::Input(format!("unknown subgroup \"{name}\"")))
}

fn cohomology(path: &Path, module_name: &str, sub: Option<&str>, degree: usize) -> Outcome {
    let f = load(path)?;
    let mut m = module(&f, module_name)?.clone();
    if let Some(s) = sub {
        m = m.restrict(subgroup(&f, s)?)?;
    }
    let h = CohomologyGroup::compute(&m, degree)?;
    println!("H^{degree}: invariant factors {:?}, order {}", h.orders(), h.order());
    for (i, r) in h.representatives().iter().enumerate() {
        println!("  basis class {i}: {}", serde_json::to_string(&io::cochain_literal(r))?);
    }
    Ok(())
}

fn selmer_cmd(path: &Path, name: &str) -> Outcome {
    let f = load(path)?;
    let (_, x) = f.decorated.get(name).ok_or_else(|| Failure::Input(format!("unknown decorated module \"{name}\"")))?;
    let s = selmer(&f.context, x)?;
    println!("H^1 invariant factors {:?}", s.h1.orders());
    println!("Sel: order {}, generators {:?}", s.order(), s.generators());
    let d = dual_decorated(&f.context, x)?;
    let sd = selmer(&f.context, &d)?;
    println!("Sel of dual: order {}, generators {:?}", sd.order(), sd.generators());
    Ok(())
}

fn ctp_cmd(path: &Path, name: &str, pair: Option<(usize, usize)>, seed: Option<u64>, rechoose: u64) -> Outcome {
    let f = load(path)?;
    let e = f.sequence(name).ok_or_else(|| Failure::Input(format!("unknown sequence \"{name}\"")))?;
    let ctx = &f.context;
    let setup = CtpSetup::new(ctx, e)?;
    let left: Vec<Vec<i64>> = setup.sel_m2.group.elements().cloned().collect();
    let right: Vec<Vec<i64>> = setup.sel_dual.group.elements().cloned().collect();
    let pairs: Vec<(Vec<i64>, Vec<i64>)> = match pair {
        Some((i, j)) => {
            let phi = left.get(i).ok_or_else(|| Failure::Input(format!("--phi {i} out of range (Sel has {} elements)", left.len())))?;
            let psi = right.get(j).ok_or_else(|| Failure::Input(format!("--psi {j} out of range (Sel has {} elements)", right.len())))?;
            vec![(phi.clone(), psi.clone())]
        }
        None => {
            let (g, h) = (setup.sel_m2.generators(), setup.sel_dual.generators());
            g.iter().flat_map(|a| h.iter().map(move |b| (a.clone(), b.clone()))).collect()
        }
    };
    let mut consistent = true;
    for (phi, psi) in &pairs {
        let c = ctp_with(ctx, e, &setup, phi, psi, seed)?;
        print!("φ={phi:?} ψ={psi:?}: {}", c.value);
        let base = seed.unwrap_or(0);
        for k in 1..=rechoose {
            let s = base.wrapping_add(k);
            let v = ctp_with(ctx, e, &setup, phi, psi, Some(s))?.value;
            if v != c.value {
                print!("  [seed {s} gives {v}]");
                consistent = false;
            }
        }
        println!();
    }
    if pair.is_none() {
        let m = ctpair::ctp_matrix(ctx, e)?;
        println!("kernels match the Selmer images: {}", m.kernels_match());
        consistent &= m.kernels_match();
    }
    if consistent {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn induce(path: &Path, sub: &str, out: &Path) -> Outcome {
    let f = load(path)?;
    let h = subgroup(&f, sub)?;
    let dc = derive_subgroup_context(&f.context, h)?;
    let mut g = ContextFile::new(&dc.derived);
    for (name, (_, x)) in &f.decorated {
        match restrict_decorated(&dc, x) {
            Ok(y) => {
                g.add_decorated(name, &y);
            }
            Err(e) => eprintln!("note: decorated module {name} not carried over: {e}"),
        }
    }
    for (name, s) in &f.sequences {
        match restrict_sequence(&dc, &s.sequence) {
            Ok(e) => g.add_sequence(name, &e),
            Err(e) => eprintln!("note: sequence {name} not carried over: {e}"),
        }
    }
    std::fs::write(out, g.to_json()?)?;
    println!("{} places over {} written to {}", dc.derived.places.len(), f.context.places.len(), out.display());
    Ok(())
}

fn print_map(label: &str, m: &ClassMap) {
    println!("{label}: {:?} -> {:?}", m.source.orders(), m.target.orders());
    for (j, c) in m.columns.iter().enumerate() {
        println!("  basis {j} ↦ {c:?}");
    }
}

fn maps(path: &Path, module_name: &str, sub: &str, degree: usize) -> Outcome {
    let f = load(path)?;
    let m = module(&f, module_name)?;
    let h = subgroup(&f, sub)?;
    if !h.is_subgroup_of(m.group()) {
        return Err(Failure::Input(format!("subgroup {sub} does not lie in the group of {module_name}")));
    }
    print_map("res", &group_change::res(m, h, degree)?);
    print_map("cores", &group_change::cores(m, h, degree)?);
    let ind = Induced::new(m.group(), &m.restrict(h)?)?;
    print_map("shap", &group_change::shap(&ind, degree)?);
    print_map("shap^-1", &group_change::shap_inverse(&ind, degree)?);
    Ok(())
}

fn verify_cmd(suite: &str, opts: VerifyOptions, json: Option<&Path>) -> Outcome {
    let report = verify::run(suite, &opts)
        .ok_or_else(|| Failure::Input(format!("unknown suite \"{suite}\"; expected one of {} or all", verify::SUITES.join(", "))))?;
    for c in &report.cases {
        let mark = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        };
        match &c.witness {
            Some(w) => println!("{mark} {}/{} ({} µs): {w}", c.suite, c.case, c.micros),
            None => println!("{mark} {}/{} ({} µs)", c.suite, c.case, c.micros),
        }
    }
    println!(
        "{} cases: {} passed, {} failed, {} skipped",
        report.cases.len(),
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skip)
    );
    if let Some(p) = json {
        std::fs::write(p, serde_json::to_string_pretty(&report)? + "\n")?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn fixtures(dir: &Path) -> Outcome {
    std::fs::create_dir_all(dir)?;
    for (name, f) in io::shipped_files() {
        std::fs::write(dir.join(&name), f.to_json()?)?;
        println!("{name}");
    }
    Ok(())
}

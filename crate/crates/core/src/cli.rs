//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the exit code with the text for stdout and stderr, so it can be driven
//! in-process as well as from the `ria` binary.
//!
//! Exit codes: 0 success, 1 well-posed negative result (infeasible, no
//! bound, counterexample candidate), 2 input error, 3 a verified identity
//! failed.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::block::{block_predicates, schur_complement_inertia, schur_inertia};
use crate::equations::{solve_ax_b_hermitian, solve_ax_b_psd, solve_axa_hermitian, solve_axa_psd, ParametricAffineFamily};
use crate::error::{Result, RiaError};
use crate::extremal::{
    congruence_extremal, constrained_extremal, quadratic_extremal, solution_inertia_extremal, submatrix_extremal,
    unconstrained_extremal, ConstrainedProblem, ExtremalReport, Objective, QuadraticSign, Sense, SubBlock, SubmatrixSelector,
};
use crate::lmi::{lmi_feasible, lmi_general_solution, lmi_xhat, solution_set_extremal, xhat_properties, LmiProblem, Relation};
use crate::loewner::{loewner_extremal, LoewnerOutcome};
use crate::matrix::{as_hermitian, AnyMatrix, FMat, QHerm, QMat};
use crate::oracle::{
    conjecture35_search, curated_suite, fault_injection, generate_feasible_instance, metamorphic_suite, sample_verify, split_columns,
    verify_lmi, ConjectureDims, InstanceSpec, DEFAULT_SAMPLES,
};
use crate::sampling::{derive_seed, GridSampler};
use crate::scalar::Backend;
use crate::spectral::{inertia, inr, pinv, rank, ToleranceConfig};

#[derive(Debug, Parser)]
#[command(name = "ria", version, about = "Exact rank and inertia optimization of Hermitian matrix functions under LMIs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Arithmetic backend. Formula-driven commands require `exact`.
    #[arg(long, global = true, env = "RIA_DEFAULT_BACKEND", default_value = "exact")]
    pub backend: Backend,
    /// Relative rank tolerance of the float backend.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inertia of a Hermitian matrix.
    Inertia {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Rank of a matrix.
    Rank {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Moore-Penrose inverse.
    Pinv {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Inertia of [[A, B], [B*, D]] (D = 0 if omitted) and of the Schur complement.
    BlockInertia {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
        #[arg(long = "D")]
        d: Option<PathBuf>,
    },
    /// Hermitian (or PSD) solutions of AX = B or AXA* = B.
    SolveEq {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
        /// `axa` for AXA* = B, `axb` for AX = B.
        #[arg(long, default_value = "axa")]
        form: EqForm,
        #[arg(long)]
        psd: bool,
    },
    /// Linear matrix inequalities BXB* ~ A.
    Lmi {
        #[command(subcommand)]
        action: LmiAction,
    },
    /// Global extremes of rank and inertia.
    Extremal(ExtremalArgs),
    /// Löwner maximum or minimum of A1 - B1XB1* subject to B2XB2* >= A2 or <= A2.
    Loewner {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        sense: Sense,
    },
    /// Oracle verification of the closed forms on given or generated instances.
    Verify(VerifyArgs),
    /// Search k individually solvable LMIs for a common Hermitian solution.
    Conjecture35 {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum EqForm {
    Axa,
    Axb,
}

#[derive(Debug, Subcommand)]
pub enum LmiAction {
    /// Solvability certificate.
    Feasible(LmiArgs),
    /// X-hat, the parametric general solution and the solution-set extremes.
    Solve(LmiArgs),
    /// Sampled realizations of the general solution, with an oracle verdict.
    Sample {
        #[command(flatten)]
        lmi: LmiArgs,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct LmiArgs {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long = "B")]
    pub b: PathBuf,
    #[arg(long)]
    pub relation: Relation,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long = "A1")]
    pub a1: PathBuf,
    #[arg(long = "B1")]
    pub b1: PathBuf,
    #[arg(long = "A2")]
    pub a2: PathBuf,
    #[arg(long = "B2")]
    pub b2: PathBuf,
    #[arg(long)]
    pub relation: Relation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExtremalKind {
    /// Chosen from the inputs: constrained with --A2, congruence with --C, else unconstrained.
    Auto,
    /// A1 - B1 X B1*.
    Unconstrained,
    /// A1 - B1 X C - (B1 X C)*.
    Congruence,
    /// A1 + B1 X X* B1* (or minus) with X of width --k.
    Quadratic,
    /// A1 - B1 X B1* subject to B2 X B2* ~ A2.
    Constrained,
    /// X itself over the solutions of B2 X B2* ~ A2.
    Solution,
    /// A diagonal block of X over the solutions of B2 X B2* ~ A2.
    Submatrix,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    #[arg(long, default_value = "auto")]
    pub kind: ExtremalKind,
    #[arg(long = "A1")]
    pub a1: Option<PathBuf>,
    #[arg(long = "B1")]
    pub b1: Option<PathBuf>,
    #[arg(long = "C")]
    pub c: Option<PathBuf>,
    #[arg(long = "A2")]
    pub a2: Option<PathBuf>,
    #[arg(long = "B2")]
    pub b2: Option<PathBuf>,
    #[arg(long)]
    pub relation: Option<Relation>,
    /// Width of X for the quadratic kind.
    #[arg(long)]
    pub k: Option<usize>,
    /// `plus` or `minus` for the quadratic kind.
    #[arg(long, default_value = "plus")]
    pub sign: String,
    /// Column split of B2 for the submatrix kind.
    #[arg(long)]
    pub n1: Option<usize>,
    /// `x1` or `x3` for the submatrix kind.
    #[arg(long, default_value = "x1")]
    pub block: String,
    #[arg(long)]
    pub objective: Option<Objective>,
    #[arg(long)]
    pub sense: Option<Sense>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "A1", requires_all = ["b1", "a2", "b2"])]
    pub a1: Option<PathBuf>,
    #[arg(long = "B1")]
    pub b1: Option<PathBuf>,
    #[arg(long = "A2")]
    pub a2: Option<PathBuf>,
    #[arg(long = "B2")]
    pub b2: Option<PathBuf>,
    #[arg(long, default_value = "geq")]
    pub relation: Relation,
    /// Generated instances when no matrices are given.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 2)]
    pub m1: usize,
    #[arg(long, default_value_t = 2)]
    pub m2: usize,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    /// Also run negation, congruence and backend-agreement checks.
    #[arg(long)]
    pub metamorphic: bool,
    /// Run the ±1 fault-injection self-test on the curated n = 1 suite instead.
    #[arg(long)]
    pub fault_injection: bool,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `argv` (including the program name) and execute it.
pub fn run<I, T>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    CliOutcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => CliOutcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let out = dispatch(&cli);
    let (code, value) = match out {
        Ok((code, v)) => (code, v),
        Err(e) => match classify(&e) {
            2 => return CliOutcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
            c => (c, error_json(&e)),
        },
    };
    let text = serde_json::to_string_pretty(&value).expect("json") + "\n";
    if let Some(path) = &cli.global.output {
        if let Err(e) = std::fs::write(path, &text) {
            return CliOutcome { code: 2, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()) };
        }
    }
    CliOutcome { code, stdout: text, stderr: String::new() }
}

/// Exit code for an error.
pub fn classify(e: &RiaError) -> i32 {
    match e {
        RiaError::Inconsistent(_)
        | RiaError::Infeasible(_)
        | RiaError::InfeasibleConstraint(_)
        | RiaError::InconsistentConstraint(_)
        | RiaError::SignConditionViolated(_)
        | RiaError::ParameterRejected(_)
        | RiaError::GenerationExhausted(_) => 1,
        RiaError::IdentityFailure { .. } => 3,
        _ => 2,
    }
}

fn error_json(e: &RiaError) -> Value {
    match e {
        RiaError::IdentityFailure { identity, detail } => json!({"status": "identity_failure", "identity": identity, "detail": detail}),
        _ => json!({"status": "negative", "error": e.to_string()}),
    }
}

fn read_any(path: &Path) -> Result<AnyMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| RiaError::Parse(format!("cannot read {}: {e}", path.display())))?;
    AnyMatrix::from_json_str(&text).map_err(|e| RiaError::Parse(format!("{}: {e}", path.display())))
}

fn read_exact(path: &Path) -> Result<QMat> {
    match read_any(path)? {
        AnyMatrix::Exact(m) => Ok(m),
        AnyMatrix::Float(_) => Err(RiaError::BackendMismatch(format!("{} holds a float matrix; this command needs exact input", path.display()))),
    }
}

fn read_herm(path: &Path) -> Result<QHerm> {
    as_hermitian(read_exact(path)?, 0.0)
}

fn need(p: &Option<PathBuf>, flag: &str) -> Result<PathBuf> {
    p.clone().ok_or_else(|| RiaError::Parse(format!("missing --{flag}")))
}

fn tolerance(g: &Global) -> Result<ToleranceConfig> {
    let cfg = g.tol.map(ToleranceConfig::with_rank_tol).unwrap_or_default();
    cfg.validate()?;
    Ok(cfg)
}

fn require_exact(g: &Global, what: &str) -> Result<()> {
    if g.backend != Backend::Exact {
        return Err(RiaError::BackendMismatch(format!("{what} requires the exact backend")));
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<(i32, Value)> {
    let g = &cli.global;
    let cfg = tolerance(g)?;
    match &cli.command {
        Command::Inertia { matrix } => {
            let i = match read_any(matrix)?.into_backend(g.backend)? {
                AnyMatrix::Exact(m) => inertia(&as_hermitian(m, cfg.hermitian_tol)?, &cfg),
                AnyMatrix::Float(m) => inertia(&as_hermitian(m, cfg.hermitian_tol)?, &cfg),
            };
            Ok((0, json!({"iplus": i.plus, "iminus": i.minus, "izero": i.zero, "backend": g.backend})))
        }
        Command::Rank { matrix } => {
            let (r, shape) = match read_any(matrix)?.into_backend(g.backend)? {
                AnyMatrix::Exact(m) => (rank(&m, &cfg), m.shape()),
                AnyMatrix::Float(m) => (rank(&m, &cfg), m.shape()),
            };
            Ok((0, json!({"rank": r, "rows": shape.0, "cols": shape.1, "backend": g.backend})))
        }
        Command::Pinv { matrix } => {
            let p = match read_any(matrix)?.into_backend(g.backend)? {
                AnyMatrix::Exact(m) => serde_json::to_value(pinv(&m, &cfg))?,
                AnyMatrix::Float(m) => serde_json::to_value::<FMat>(pinv(&m, &cfg))?,
            };
            Ok((0, json!({"pinv": p, "backend": g.backend})))
        }
        Command::BlockInertia { a, b, d } => {
            require_exact(g, "block-inertia")?;
            let (a, b) = (read_herm(a)?, read_exact(b)?);
            let d = match d {
                Some(p) => read_herm(p)?,
                None => QHerm::zeros(b.cols()),
            };
            let block = schur_inertia(&a, &b, &d)?;
            let schur = schur_complement_inertia(&a, &b, &d)?;
            let preds = block_predicates(&a, &b, &d)?;
            Ok((0, json!({"block": block, "schur_complement": schur, "a": inr(&a), "predicates": preds})))
        }
        Command::SolveEq { a, b, form, psd } => {
            require_exact(g, "solve-eq")?;
            let a = read_exact(a)?;
            let fam = match (form, psd) {
                (EqForm::Axa, false) => solve_axa_hermitian(&a, &read_herm(b)?),
                (EqForm::Axa, true) => solve_axa_psd(&a, &read_herm(b)?),
                (EqForm::Axb, false) => solve_ax_b_hermitian(&a, &read_exact(b)?),
                (EqForm::Axb, true) => solve_ax_b_psd(&a, &read_exact(b)?),
            }?;
            Ok((0, family_json(&fam)))
        }
        Command::Lmi { action } => {
            require_exact(g, "lmi")?;
            lmi(action)
        }
        Command::Extremal(args) => {
            require_exact(g, "extremal")?;
            extremal(args)
        }
        Command::Loewner { pair, sense } => {
            require_exact(g, "loewner")?;
            let p = read_pair(pair)?;
            match loewner_extremal(&p, *sense)? {
                LoewnerOutcome::Bound(b) => Ok((0, json!({"status": "bound", "bound": b}))),
                LoewnerOutcome::NoBound { reason } => Ok((1, json!({"status": "no_bound", "reason": reason}))),
            }
        }
        Command::Verify(args) => {
            require_exact(g, "verify")?;
            verify(args)
        }
        Command::Conjecture35 { k, instances, m, n, seed } => {
            require_exact(g, "conjecture35")?;
            let rep = conjecture35_search(ConjectureDims { m: *m, n: *n }, *k, *instances, *seed)?;
            let code = if rep.candidates.is_empty() { 0 } else { 1 };
            Ok((code, serde_json::to_value(rep)?))
        }
    }
}

fn family_json(f: &ParametricAffineFamily) -> Value {
    json!({
        "equation": f.equation,
        "psd": f.psd,
        "form": format!("{:?}", f.form),
        "base": f.base,
        "projector": f.projector,
        "parameters": f.param_shapes(),
    })
}

fn read_lmi(a: &LmiArgs) -> Result<LmiProblem> {
    LmiProblem::new(read_herm(&a.a)?, read_exact(&a.b)?, a.relation)
}

fn read_pair(p: &PairArgs) -> Result<ConstrainedProblem> {
    ConstrainedProblem::new(read_herm(&p.a1)?, read_exact(&p.b1)?, read_herm(&p.a2)?, read_exact(&p.b2)?, p.relation)
}

fn lmi(action: &LmiAction) -> Result<(i32, Value)> {
    match action {
        LmiAction::Feasible(args) => {
            let p = read_lmi(args)?;
            let cert = lmi_feasible(&p)?;
            Ok((if cert.feasible { 0 } else { 1 }, json!({"feasible": cert.feasible, "certificate": cert})))
        }
        LmiAction::Solve(args) => {
            let p = read_lmi(args)?;
            let cert = lmi_feasible(&p)?;
            if !cert.feasible {
                return Ok((1, json!({"feasible": false, "certificate": cert})));
            }
            if p.rel == Relation::Eq {
                let fam = solve_axa_hermitian(&p.b, &p.a)?;
                return Ok((0, json!({"feasible": true, "certificate": cert, "family": family_json(&fam)})));
            }
            let sol = lmi_general_solution(&p)?;
            let routes = lmi_xhat(&p.a, &p.b)?;
            let props = xhat_properties(&p, 0, 0)?;
            let mut out = json!({
                "feasible": true,
                "certificate": cert,
                "xhat": sol.xhat,
                "xhat_bordered_route": routes.bordered,
                "family": {"sign": sol.sign, "shift": sol.shift, "strict": sol.strict, "f_b": sol.f_b, "k": sol.k},
                "xhat_properties": props.equalities,
            });
            if matches!(p.rel, Relation::Geq | Relation::Leq) {
                out["solution_set"] = serde_json::to_value(solution_set_extremal(&p)?)?;
                out["solution_inertia"] = serde_json::to_value(solution_inertia_extremal(&p)?)?;
            }
            Ok((0, out))
        }
        LmiAction::Sample { lmi, samples, seed } => {
            let p = read_lmi(lmi)?;
            let sol = lmi_general_solution(&p)?;
            let mut xs = Vec::new();
            let mut rejected = 0usize;
            for i in 0..*samples as u64 {
                let mut g = GridSampler::new(derive_seed(*seed, i));
                let (u, v) = sol.sample_uv(&mut g);
                match sol.realize(&u, &v) {
                    Ok(x) => xs.push(x),
                    Err(RiaError::ParameterRejected(_)) => rejected += 1,
                    Err(e) => return Err(e),
                }
            }
            let verdict = verify_lmi(&p, *samples, *seed);
            let code = if verdict.pass() { 0 } else { 3 };
            Ok((code, json!({"realizations": xs, "rejected": rejected, "verdict": verdict})))
        }
    }
}

fn report_json(rep: &ExtremalReport, args: &ExtremalArgs) -> Result<Value> {
    let mut v = serde_json::to_value(rep)?;
    match (args.objective, args.sense) {
        (Some(o), Some(s)) => {
            v["value"] = json!(rep.value(o, s));
            v["objective"] = json!(o);
            v["sense"] = json!(s);
        }
        (None, None) => {}
        _ => return Err(RiaError::Parse("--objective and --sense go together".into())),
    }
    v["dictionary"] = serde_json::to_value(rep.dictionary())?;
    Ok(v)
}

fn extremal(args: &ExtremalArgs) -> Result<(i32, Value)> {
    let kind = match args.kind {
        ExtremalKind::Auto if args.a2.is_some() => ExtremalKind::Constrained,
        ExtremalKind::Auto if args.c.is_some() => ExtremalKind::Congruence,
        ExtremalKind::Auto => ExtremalKind::Unconstrained,
        k => k,
    };
    let relation = || args.relation.ok_or_else(|| RiaError::Parse("missing --relation".into()));
    let constraint = || -> Result<LmiProblem> {
        LmiProblem::new(read_herm(&need(&args.a2, "A2")?)?, read_exact(&need(&args.b2, "B2")?)?, relation()?)
    };
    let rep = match kind {
        ExtremalKind::Unconstrained => unconstrained_extremal(&read_herm(&need(&args.a1, "A1")?)?, &read_exact(&need(&args.b1, "B1")?)?)?,
        ExtremalKind::Congruence => congruence_extremal(
            &read_herm(&need(&args.a1, "A1")?)?,
            &read_exact(&need(&args.b1, "B1")?)?,
            &read_exact(&need(&args.c, "C")?)?,
        )?,
        ExtremalKind::Quadratic => {
            let sign = match args.sign.as_str() {
                "plus" | "+" => QuadraticSign::Plus,
                "minus" | "-" => QuadraticSign::Minus,
                s => return Err(RiaError::Parse(format!("unknown sign '{s}'"))),
            };
            let k = args.k.ok_or_else(|| RiaError::Parse("missing --k".into()))?;
            quadratic_extremal(&read_herm(&need(&args.a1, "A1")?)?, &read_exact(&need(&args.b1, "B1")?)?, k, sign)?
        }
        ExtremalKind::Constrained => {
            let c = constraint()?;
            let p = ConstrainedProblem::new(read_herm(&need(&args.a1, "A1")?)?, read_exact(&need(&args.b1, "B1")?)?, c.a, c.b, c.rel)?;
            constrained_extremal(&p)?
        }
        ExtremalKind::Solution => solution_inertia_extremal(&constraint()?)?,
        ExtremalKind::Submatrix => {
            let c = constraint()?;
            let n1 = args.n1.ok_or_else(|| RiaError::Parse("missing --n1".into()))?;
            if n1 > c.n() {
                return Err(RiaError::DimensionMismatch(format!("--n1 {n1} exceeds the {} columns of B2", c.n())));
            }
            let which = match args.block.to_ascii_lowercase().as_str() {
                "x1" => SubBlock::X1,
                "x3" => SubBlock::X3,
                s => return Err(RiaError::Parse(format!("unknown block '{s}'"))),
            };
            let (left, right) = split_columns(&c.b, n1);
            submatrix_extremal(&c.a, &left, &right, SubmatrixSelector::new(n1, c.n() - n1, which), c.rel)?
        }
        ExtremalKind::Auto => unreachable!("resolved above"),
    };
    Ok((0, report_json(&rep, args)?))
}

fn verify(args: &VerifyArgs) -> Result<(i32, Value)> {
    if args.fault_injection {
        let rep = fault_injection(&curated_suite())?;
        return Ok((if rep.all_caught() { 0 } else { 3 }, serde_json::to_value(rep)?));
    }
    let problems: Vec<(u64, ConstrainedProblem)> = match &args.a1 {
        Some(a1) => vec![(
            args.seed,
            ConstrainedProblem::new(
                read_herm(a1)?,
                read_exact(&need(&args.b1, "B1")?)?,
                read_herm(&need(&args.a2, "A2")?)?,
                read_exact(&need(&args.b2, "B2")?)?,
                args.relation,
            )?,
        )],
        None => (0..args.count as u64)
            .map(|i| {
                let s = derive_seed(args.seed, i);
                Ok((s, generate_feasible_instance(&InstanceSpec::new(args.m1, args.m2, args.n, args.relation, s))?))
            })
            .collect::<Result<_>>()?,
    };
    let mut verdicts = Vec::new();
    let mut pass = true;
    for (s, p) in &problems {
        p.require_feasible()?;
        let v = sample_verify(p, args.samples, *s);
        pass &= v.pass();
        let mut entry = json!({"verdict": v});
        if args.metamorphic {
            let m = metamorphic_suite(p, *s);
            pass &= m.pass();
            entry["metamorphic"] = serde_json::to_value(m)?;
        }
        verdicts.push(entry);
    }
    Ok((if pass { 0 } else { 3 }, json!({"pass": pass, "instances": verdicts})))
}

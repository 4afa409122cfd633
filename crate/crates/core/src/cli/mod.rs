//! Command-line front end.
//!
//! Exit codes: 0 all verdicts as required, 1 a verification failed (a
//! theorem-violating result), 2 input error, 3 budget or factorization
//! refusal.

mod input;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::arith::SignCharacter;
use crate::cubic::{self, DiagCubic, LocalSpec};
use crate::dp4::{self, QuadricPencil};
use crate::error::{Error, Result};
use crate::exec::SearchConfig;
use crate::ff::GaloisField;
use crate::obstructions::{self, DegreeFormulaInstance, PicRankOneSurface};
use crate::quadform::{self, DiagQF};

pub use input::{FieldParams, LocalParams, Params, SurfaceInput, SurfaceKind};
pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "delpezzo", version, about = "Exact checks for del Pezzo surfaces without rational points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of search candidates (overrides DELPEZZO_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Seed for randomized harnesses.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    #[arg(long, global = true)]
    pub fmax: Option<u32>,
    /// Run scans on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree-4 del Pezzo surfaces from a diagonal pencil.
    Dp4 { action: Dp4Action, file: PathBuf },
    /// Diagonal cubic surfaces.
    Cubic { action: CubicAction, file: PathBuf },
    /// Pairs of diagonal quadratic forms over finite fields.
    Quadpair { action: QuadpairAction, file: PathBuf },
    /// Intersection-number obstructions.
    Obstruct { action: ObstructAction, file: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Dp4Action {
    Lines,
    Galois,
    Picard,
    Report,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CubicAction {
    Segre,
    Local,
    Extensions,
    Ffpoint,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum QuadpairAction {
    Search,
    Descent,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ObstructAction {
    Genus,
    Parity,
    Chi,
    Rost,
    Index,
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Verification(_) => EXIT_VERIFICATION,
        Error::BudgetExceeded { .. } | Error::Unfactorable { .. } => EXIT_REFUSED,
        _ => EXIT_INPUT,
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut report) => {
            report.elapsed = Some(start.elapsed());
            let stdout = if cli.flags.json { report.to_json() + "\n" } else { report.to_text() };
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFICATION };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn config(flags: &Flags) -> Result<SearchConfig> {
    let mut cfg = SearchConfig::from_env()?;
    if let Some(b) = flags.budget {
        cfg.budget = b;
    }
    if flags.sequential {
        cfg = SearchConfig { parallelism: crate::exec::Parallelism::Sequential, ..cfg };
    }
    Ok(cfg)
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let cfg = config(&cli.flags)?;
    match &cli.command {
        Command::Dp4 { action, file } => {
            let input = SurfaceInput::from_path(file)?;
            let name = format!("dp4 {} {}", action_name(*action), file.display());
            run_dp4(*action, &input, name)
        }
        Command::Cubic { action, file } => {
            let input = SurfaceInput::from_path(file)?;
            let name = format!("cubic {} {}", action_name(*action), file.display());
            run_cubic(*action, &input, &cli.flags, &cfg, name)
        }
        Command::Quadpair { action, file } => {
            let input = SurfaceInput::from_path(file)?;
            let name = format!("quadpair {} {}", action_name(*action), file.display());
            run_quadpair(*action, &input, &cli.flags, &cfg, name)
        }
        Command::Obstruct { action, file } => {
            let input = SurfaceInput::from_path(file)?;
            let name = format!("obstruct {} {}", action_name(*action), file.display());
            run_obstruct(*action, &input, &cli.flags, &cfg, name)
        }
    }
}

fn action_name(v: impl ValueEnum) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn pencil_of(input: &SurfaceInput) -> Result<QuadricPencil> {
    input.expect_kind(&[SurfaceKind::Dp4Pencil])?;
    let c = input.rationals()?;
    QuadricPencil::new(c[..5].to_vec(), c[5..].to_vec())
}

fn group_of(input: &SurfaceInput, system: &dp4::LineSystem) -> Vec<SignCharacter> {
    match &input.params.characters {
        None => system.full_group(),
        Some(gens) => SignCharacter::generated(
            &gens
                .iter()
                .map(|g| SignCharacter::new(g.iter().map(|&x| BigInt::from(x))))
                .collect::<Vec<_>>(),
        ),
    }
}

fn run_dp4(action: Dp4Action, input: &SurfaceInput, name: String) -> Result<Report> {
    let pencil = pencil_of(input)?;
    let mut report = Report::new(name);
    let smooth = pencil.is_smooth();
    if let Dp4Action::Report = action {
        report.verdict("smooth", smooth);
        if !smooth {
            return Ok(report);
        }
    }
    let system = dp4::sixteen_lines(&pencil)?;
    let generators: Vec<String> = system.generators.iter().map(|g| g.to_string()).collect();
    let lines = |report: &mut Report| {
        report
            .verdict("lines", system.lines.len())
            .verdict("on_surface", system.lines.iter().all(|l| pencil.contains_line(l)))
            .verdict("gram_rank", system.gram_rank())
            .verdict("generators", &generators);
    };
    let galois = |report: &mut Report| -> Result<usize> {
        let group = group_of(input, &system);
        let orbits = dp4::galois_orbits(&system, &group)?;
        report
            .verdict("group_order", group.len())
            .verdict("orbit", orbits.len())
            .verdict("orbit_sizes", orbits.iter().map(Vec::len).collect::<Vec<_>>())
            .witness("orbits", &orbits);
        Ok(orbits.len())
    };
    let picard = |report: &mut Report| -> Result<usize> {
        let group = group_of(input, &system);
        let rank = dp4::invariant_picard_rank(&system, &group)?;
        let anticanonical = dp4::verify_anticanonical(&system.gram);
        report.verdict("invariant_rank", rank).verdict("anticanonical", anticanonical);
        report.require(anticanonical, "no class h with h·L = 1 and h² = 4 in the line span");
        Ok(rank)
    };
    match action {
        Dp4Action::Lines => {
            lines(&mut report);
            report.witness("line_system", &system);
        }
        Dp4Action::Galois => {
            galois(&mut report)?;
        }
        Dp4Action::Picard => {
            picard(&mut report)?;
        }
        Dp4Action::Report => {
            lines(&mut report);
            let orbits = galois(&mut report)?;
            let rank = picard(&mut report)?;
            report.require(orbits != 1 || rank == 1, "transitive action with invariant rank != 1");
            report.witness("first_line", &system.lines[0]);
        }
    }
    Ok(report)
}

fn local_spec(input: &SurfaceInput, flags: &Flags) -> Result<LocalSpec> {
    let l = input.local()?;
    let fmax = flags.fmax.or(l.fmax).unwrap_or(LocalSpec::DEFAULT_FMAX);
    Ok(LocalSpec::new(l.p, l.a)?.with_fmax(fmax))
}

fn run_cubic(
    action: CubicAction,
    input: &SurfaceInput,
    flags: &Flags,
    cfg: &SearchConfig,
    name: String,
) -> Result<Report> {
    let mut report = Report::new(name);
    match action {
        CubicAction::Segre => {
            input.expect_kind(&[SurfaceKind::DiagonalCubic])?;
            let c = DiagCubic::new(input.rationals()?)?;
            report.verdict("segre", cubic::segre_criterion(&c)?);
        }
        CubicAction::Local => {
            let spec = local_spec(input, flags)?;
            let v = cubic::qp_insoluble(&spec, cfg)?;
            report
                .verdict("criterion", v.criterion_holds)
                .verdict("oracle", v.oracle_agrees)
                .verdict("oracle_solution_found", v.oracle_witness.is_some());
            if let Some(w) = v.oracle_witness {
                report.witness("solution_mod_p3", w);
            }
            report.require(v.oracle_agrees, "criterion holds but a primitive solution mod p³ exists");
        }
        CubicAction::Extensions => {
            let spec = local_spec(input, flags)?;
            let r = cubic::prime_to_3_insoluble(&spec)?;
            report
                .verdict("insoluble", r.insoluble)
                .verdict("fmax", spec.fmax)
                .witness("cube_by_residue_degree", &r.per_degree);
        }
        CubicAction::Ffpoint => {
            input.expect_kind(&[SurfaceKind::DiagonalCubic])?;
            let c = DiagCubic::new(input.rationals()?)?;
            let field = input.field()?;
            let point = cubic::ff_point_exists(&c, field.p, field.f, cfg)?;
            report.verdict("point", point.is_some());
            match point {
                Some(v) => {
                    report.witness("point", &v);
                }
                None => {
                    report.fail("no point on a cubic surface over a finite field (Chevalley–Warning)");
                }
            }
        }
    }
    Ok(report)
}

fn pair_of(input: &SurfaceInput) -> Result<(DiagQF, DiagQF)> {
    input.expect_kind(&[SurfaceKind::QuadPair, SurfaceKind::Dp4Pencil])?;
    let c = input.rationals()?;
    if c.is_empty() {
        return Err(Error::invalid("quad-pair needs 2r coefficients"));
    }
    let (a, b) = c.split_at(c.len() / 2);
    Ok((DiagQF::new(a.to_vec())?, DiagQF::new(b.to_vec())?))
}

fn run_quadpair(
    action: QuadpairAction,
    input: &SurfaceInput,
    flags: &Flags,
    cfg: &SearchConfig,
    name: String,
) -> Result<Report> {
    let mut report = Report::new(name);
    let field = input.field()?;
    match action {
        QuadpairAction::Search => {
            let (q1, q2) = pair_of(input)?;
            let found = quadform::find_common_isotropic(&q1, &q2, field.p, field.f, cfg)?;
            report.verdict("isotropic", found.is_some());
            if let Some(v) = found {
                let k = GaloisField::new(field.p, field.f)?;
                quadform::verify_witness(&k, &q1, &q2, &v)?;
                report.witness("vector", &v);
            }
        }
        QuadpairAction::Descent => {
            let kmax = flags.kmax.or(field.kmax).unwrap_or(3);
            if input.coefficients.is_empty() {
                let trials = input.params.trials.unwrap_or(500);
                let r = input.params.variables.unwrap_or(4);
                let mut rng = StdRng::seed_from_u64(flags.seed);
                let s = quadform::descent_harness(&mut rng, field.p, field.f, r, trials, kmax, cfg)?;
                report
                    .verdict("descent_consistent", s.failures.is_empty())
                    .verdict("trials", s.trials)
                    .verdict("base_isotropic", s.base_isotropic)
                    .verdict("anisotropic_everywhere", s.anisotropic_everywhere)
                    .verdict("seed", flags.seed);
                report.require(s.failures.is_empty(), format!("descent fails in trials {:?}", s.failures));
            } else {
                let (q1, q2) = pair_of(input)?;
                let r = quadform::amer_brumer_check(&q1, &q2, field.p, field.f, kmax, cfg)?;
                report
                    .verdict("descent_consistent", r.descent_consistent)
                    .witness("exists_by_degree", &r.per_degree);
                report.require(r.descent_consistent, "isotropic over an odd extension but not over the base");
            }
        }
    }
    Ok(report)
}

fn surface_of(input: &SurfaceInput) -> Result<PicRankOneSurface> {
    input.expect_kind(&[SurfaceKind::PicRankOne])?;
    match input.integers()?.as_slice() {
        [gen_sq, k_mult] => PicRankOneSurface::new(*gen_sq, *k_mult),
        _ => Err(Error::invalid("pic-rank-one needs coefficients [gen_sq, k_mult]")),
    }
}

fn run_obstruct(
    action: ObstructAction,
    input: &SurfaceInput,
    flags: &Flags,
    cfg: &SearchConfig,
    name: String,
) -> Result<Report> {
    use input::need;
    let mut report = Report::new(name);
    let p = &input.params;
    match action {
        ObstructAction::Genus => {
            let s = surface_of(input)?;
            let genus = obstructions::adjunction_genus(&s, need(p.n, "n")?)?;
            report.verdict("genus", genus as i64);
            if let Some(p_g) = p.p_g {
                let gap = obstructions::genus_gap_parity(genus, p_g as i128)?;
                report.verdict("delta", gap.delta as i64).verdict("delta_odd", gap.odd);
            }
        }
        ObstructAction::Parity => {
            let s = surface_of(input)?;
            let residue = obstructions::parity_obstruction(&s, need(p.n, "n")?, p.ell.unwrap_or(2))?;
            report.verdict("residue", residue).verdict("fires", residue == 0);
        }
        ObstructAction::Chi => {
            let c = obstructions::euler_char_congruence(
                need(p.chi_c, "chi_c")?,
                need(p.r, "r")?,
                p.ell.unwrap_or(2),
            )?;
            report.verdict("residue", c.residue).verdict("unit", c.unit);
        }
        ObstructAction::Rost => {
            let r = need(p.rost, "rost")?;
            let audit = obstructions::rost_audit(&DegreeFormulaInstance {
                p: r.p,
                n_x: r.n_x,
                n_y: r.n_y,
                eta_y: r.eta_y,
                deg_q: r.deg_q,
                deg_r: r.deg_r,
            })?;
            report
                .verdict("eta_ypp", audit.eta_ypp)
                .verdict("deg_r_constraint", audit.deg_r_constraint)
                .verdict("deg_r_consistent", audit.deg_r_consistent)
                .verdict("contradiction", audit.contradiction_with_brauer_injectivity);
        }
        ObstructAction::Index => {
            let field = input.field()?;
            let kmax = flags.kmax.or(field.kmax).unwrap_or(1);
            let r = obstructions::index_ff(&input.equations()?, field.p, field.f, kmax, cfg)?;
            report.verdict("index", r.index).witness("scanned", &r.scanned);
            if r.index == 0 {
                report.verdict("note", "no upper bound established");
            }
        }
    }
    Ok(report)
}

//! Command-line front end.  [`run`] parses arguments, executes one subcommand
//! and returns the process exit code: 0 success, 1 usage or input file error,
//! 2 violated mathematical precondition, 3 failed verification suite,
//! 4 enumeration budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::family::{
    build_family, commensurability_invariant, distinguish, FamilyParams, InvariantLevel, Verdict,
};
use crate::group::{Backend, UniformGroup};
use crate::growth::zeta_coefficients;
use crate::io::{save_algebra, series_dump, write_json};
use crate::lie::JacobiReport;
use crate::padic::{PAdic, PAdicContext};
use crate::presentation::{compare_with_remark, emit_presentation, Presentation};
use crate::pseries::lower_p_series;
use crate::quotient::{FiniteQuotient, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_SUITE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "padic-uniform",
    version,
    about = "Exact p-adic computations with a family of metabelian Lie algebras and their uniform groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// The prime p.
    #[arg(long, default_value_t = 5)]
    pub p: u64,
    /// Number of p-adic digits carried.
    #[arg(long, default_value_t = 24)]
    pub prec: u32,
    /// Dimension of the algebra (at least 3).
    #[arg(long = "k", alias = "m", default_value_t = 4, value_parser = parse_dimension)]
    pub k: u64,
    /// Family parameter: a decimal integer or little-endian digits `d0.d1.d2...`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub d: String,
    /// Seed for randomised checks.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the structure constants of L_k(d), or of p^2 L_k(d) with --scaled.
    Construct {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        scaled: bool,
        /// Output path for the algebra JSON (printed when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the normalised invariant of L_k(d) and the recovered parameter.
    Invariant {
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether L_k(d) and L_k(l) are separated by the invariant.
    Distinguish {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        l: String,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Quotient level used by the uniformity suite.
        #[arg(long, default_value_t = 2)]
        levels: u32,
    },
    /// Print the presentation of G_m(d).
    Present {
        #[command(flatten)]
        common: Common,
        /// Compare with the closed-form relations of G_4(d).
        #[arg(long)]
        compare_remark: bool,
        /// Output path for the text form; a `.json` companion is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count subgroups of index p^i for i <= max-index.
    Growth {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        max_index: u32,
        /// Output path for the CSV table (printed when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest quotient order enumerated.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Dump the Dynkin-form Campbell-Hausdorff series as JSON.
    Series {
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Jacobi,
    BackendAgreement,
    GroupAxioms,
    Uniformity,
    IntrinsicLimits,
    PresentationRoundtrip,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::BackendAgreement => "backend-agreement",
            Suite::GroupAxioms => "group-axioms",
            Suite::Uniformity => "uniformity",
            Suite::IntrinsicLimits => "intrinsic-limits",
            Suite::PresentationRoundtrip => "presentation-roundtrip",
            Suite::All => "all",
        }
    }
}

/// Maps a library error to an exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => EXIT_USAGE,
        _ => EXIT_MATH,
    }
}

/// Parses `args` (including the program name) and runs the subcommand,
/// writing the report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok((report, code)) => {
            let _ = write!(out, "{report}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn context(c: &Common) -> Result<PAdicContext> {
    Ok(PAdicContext::new(c.p, c.prec)?)
}

fn params(c: &Common) -> Result<FamilyParams> {
    let ctx = context(c)?;
    FamilyParams::new(c.k as usize, ctx.parse(&c.d)?)
}

/// Small values print as signed integers, the rest as digit strings.
pub fn show(x: &PAdic) -> String {
    match x.to_symmetric_i128() {
        Some(n) if n.abs() < 1_000_000_000 => format!("{n:+}"),
        _ => x.to_digit_string(),
    }
}

fn execute(cmd: &Command) -> Result<(String, i32)> {
    let mut s = String::new();
    let code = match cmd {
        Command::Construct { common, scaled, out } => {
            let params = params(common)?;
            let base = build_family(&params);
            let alg = if *scaled { base.scale(2) } else { base };
            let jacobi = match alg.jacobi_check() {
                JacobiReport::Pass => "pass".to_string(),
                JacobiReport::Violation { triple, .. } => format!("fail at {triple:?}"),
            };
            let _ = writeln!(s, "algebra: {}L_{}(d), p = {}, N = {}", if *scaled { "p^2 " } else { "" }, common.k, common.p, common.prec);
            let _ = writeln!(s, "jacobi={jacobi}");
            let _ = writeln!(s, "powerful={}", alg.is_powerful());
            match out {
                Some(path) => {
                    save_algebra(path, &alg)?;
                    let _ = writeln!(s, "wrote {}", path.display());
                }
                None => {
                    let file = crate::io::AlgebraFile::from_algebra(&alg);
                    let _ = writeln!(s, "{}", serde_json::to_string_pretty(&file)?);
                }
            }
            EXIT_OK
        }
        Command::Invariant { common } => {
            let params = params(common)?;
            let alg = build_family(&params);
            let v = commensurability_invariant(&alg, None, InvariantLevel::Integral)?;
            let _ = writeln!(s, "k = {}, p = {}, N = {}", common.k, common.p, common.prec);
            let _ = writeln!(s, "trace = {}", show(&v.trace));
            let _ = writeln!(s, "determinant = {}", show(&v.determinant));
            let _ = writeln!(s, "invariant = {}", show(&v.value));
            let _ = writeln!(s, "recovered d = {}", show(&v.recovered_d));
            EXIT_OK
        }
        Command::Distinguish { common, l } => {
            let ctx = context(common)?;
            let d = ctx.parse(&common.d)?;
            let l = ctx.parse(l)?;
            let r = distinguish(common.k as usize, &d, &l)?;
            let diff = r.recovered_d.sub(&r.recovered_l);
            match r.verdict {
                Verdict::Separated => {
                    let _ = writeln!(s, "SEPARATED");
                }
                Verdict::IndistinguishableAtPrecision(n) => {
                    let _ = writeln!(s, "INDISTINGUISHABLE@p^{n}");
                }
            }
            let _ = writeln!(s, "recovered d = {}", show(&r.recovered_d));
            let _ = writeln!(s, "recovered l = {}", show(&r.recovered_l));
            if diff.is_zero() {
                let _ = writeln!(s, "difference valuation >= {}", ctx.prec());
            } else {
                let _ = writeln!(s, "difference valuation = {}", diff.valuation().min(ctx.prec() as i32));
            }
            EXIT_OK
        }
        Command::Verify { common, suite, levels } => {
            let suites: Vec<Suite> = if *suite == Suite::All {
                vec![
                    Suite::Jacobi,
                    Suite::BackendAgreement,
                    Suite::GroupAxioms,
                    Suite::Uniformity,
                    Suite::IntrinsicLimits,
                    Suite::PresentationRoundtrip,
                ]
            } else {
                vec![*suite]
            };
            let mut failed = false;
            for suite in suites {
                let (ok, detail) = run_suite(suite, common, *levels)?;
                failed |= !ok;
                let _ = writeln!(s, "{}: {} ({detail})", suite.name(), if ok { "PASS" } else { "FAIL" });
            }
            if failed {
                EXIT_SUITE
            } else {
                EXIT_OK
            }
        }
        Command::Present { common, compare_remark: remark, out } => {
            let group = UniformGroup::family(&params(common)?)?;
            let pres = emit_presentation(&group)?;
            let text = pres.render();
            s.push_str(&text);
            if *remark {
                let pairs = compare_with_remark(&group)?;
                let _ = writeln!(s, "comparison with the closed-form relations:");
                for p in &pairs {
                    let _ = writeln!(
                        s,
                        "[{}, {}]: agreement valuation {} ({})",
                        p.left,
                        p.right,
                        p.agreement,
                        if p.agrees_mod(3) { "ok mod p^3" } else { "MISMATCH" }
                    );
                }
            }
            if let Some(path) = out {
                std::fs::write(path, &text)?;
                write_json(&path.with_extension("json"), &pres.to_file())?;
                let _ = writeln!(s, "wrote {}", path.display());
            }
            EXIT_OK
        }
        Command::Growth { common, max_index, out, budget } => {
            let group = UniformGroup::family(&params(common)?)?;
            let table = zeta_coefficients(&group, *max_index, *budget)?;
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            match out {
                Some(path) => {
                    std::fs::write(path, &buf)?;
                    let _ = writeln!(s, "wrote {}", path.display());
                }
                None => s.push_str(&String::from_utf8_lossy(&buf)),
            }
            for r in &table.rows {
                let _ = writeln!(
                    s,
                    "a_{{{}^{}}} = {} (normal {}, level {}, {})",
                    r.p,
                    r.i,
                    r.a,
                    r.a_normal,
                    r.level,
                    if r.stabilized { "stabilized" } else { "provisional" }
                );
            }
            let _ = writeln!(
                s,
                "note: the subgroup zeta function is rational in p^-s; only its leading coefficients are computed here"
            );
            EXIT_OK
        }
        Command::Series { degree, out } => {
            if *degree == 0 || *degree > crate::bch::MAX_GENERAL_DEGREE {
                return Err(Error::Invalid(format!(
                    "series degree must lie in 1..={}",
                    crate::bch::MAX_GENERAL_DEGREE
                )));
            }
            let rows = series_dump(*degree);
            match out {
                Some(path) => {
                    write_json(path, &rows)?;
                    let _ = writeln!(s, "wrote {} terms to {}", rows.len(), path.display());
                }
                None => {
                    let _ = writeln!(s, "{}", serde_json::to_string_pretty(&rows)?);
                }
            }
            EXIT_OK
        }
    };
    Ok((s, code))
}

fn run_suite(suite: Suite, common: &Common, levels: u32) -> Result<(bool, String)> {
    let ctx = context(common)?;
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let m = common.k as usize;
    let n = ctx.prec() as i32;
    match suite {
        Suite::Jacobi => {
            let d = ctx.parse(&common.d)?;
            let mut count = 0;
            for k in 3..=12 {
                let alg = build_family(&FamilyParams::new(k, d)?);
                for a in [alg.clone(), alg.scale(2)] {
                    if !a.jacobi_check().passed() {
                        return Ok((false, format!("k = {k} violates the Jacobi identity")));
                    }
                    count += 1;
                }
            }
            Ok((true, format!("{count} instances")))
        }
        Suite::BackendAgreement => {
            let group = UniformGroup::family(&params(common)?)?;
            let pairs = 100;
            for _ in 0..pairs {
                let g = group.random_element(&mut rng);
                let h = group.random_element(&mut rng);
                let a = group.mul(&g, &h, Backend::Bch)?;
                let b = group.mul(&g, &h, Backend::Split)?;
                if !group.agrees_mod(&a, &b, n)? {
                    return Ok((false, "bch and split products differ".into()));
                }
            }
            Ok((true, format!("{pairs} pairs, m = {m}, p = {}", ctx.p())))
        }
        Suite::GroupAxioms => {
            let group = UniformGroup::family(&params(common)?)?;
            let trials = 20;
            for backend in [Backend::Bch, Backend::Split] {
                for _ in 0..trials {
                    let g = group.to_chart(&group.random_element(&mut rng), backend)?;
                    let h = group.to_chart(&group.random_element(&mut rng), backend)?;
                    let k = group.to_chart(&group.random_element(&mut rng), backend)?;
                    let left = group.mul(&group.mul(&g, &h, backend)?, &k, backend)?;
                    let right = group.mul(&g, &group.mul(&h, &k, backend)?, backend)?;
                    let e = group.mul(&g, &group.identity(), backend)?;
                    let inv = group.mul(&g, &group.inv(&g)?, backend)?;
                    if !group.agrees_mod(&left, &right, n)?
                        || !group.agrees_mod(&e, &g, n)?
                        || !group.is_identity(&inv)?
                    {
                        return Ok((false, format!("axiom fails for the {backend} backend")));
                    }
                }
            }
            for _ in 0..trials {
                let g = group.random_element(&mut rng);
                let z = group.random_element(&mut rng).coords().get(0);
                let w = group.random_element(&mut rng).coords().get(1);
                let lhs = group.power(&g, &z.add(&w))?;
                let rhs = group.mul(&group.power(&g, &z)?, &group.power(&g, &w)?, Backend::Bch)?;
                if !group.agrees_mod(&lhs, &rhs, n)? {
                    return Ok((false, "one-parameter subgroup law fails".into()));
                }
            }
            Ok((true, format!("{trials} triples per backend")))
        }
        Suite::Uniformity => {
            let group = UniformGroup::family(&params(common)?)?;
            let q = FiniteQuotient::new(&group, levels, DEFAULT_BUDGET)?;
            let series = lower_p_series(&q, levels as usize + 1);
            let ok = series.is_uniform(ctx.p(), m) && series.matches_power_image.iter().all(|&b| b);
            let indices: Vec<String> = series.indices.iter().map(u64::to_string).collect();
            Ok((ok, format!("level {levels}, indices {}", indices.join(", "))))
        }
        Suite::IntrinsicLimits => {
            let group = UniformGroup::family(&params(common)?)?;
            let pairs = 10;
            let max_n = 8.min(ctx.prec().saturating_sub(4));
            let mut worst = i32::MAX;
            for _ in 0..pairs {
                let g = group.random_element(&mut rng);
                let h = group.random_element(&mut rng);
                let sum = g.coords().add(h.coords());
                let bracket = group.algebra().bracket(g.coords(), h.coords())?;
                for k in 1..=max_n {
                    let s = group.intrinsic_sum(&g, &h, k)?;
                    let b = match group.intrinsic_bracket(&g, &h, k) {
                        Ok(b) => b,
                        Err(Error::Precision(_)) => continue,
                        Err(e) => return Err(e),
                    };
                    let vs = group.ambient_valuation(&s.sub(&sum)).min(n + 2);
                    let vb = group.ambient_valuation(&b.sub(&bracket)).min(n + 2);
                    worst = worst.min(vs - k as i32).min(vb - k as i32);
                }
            }
            Ok((worst >= 3, format!("{pairs} pairs, n = 1..{max_n}, min gap {worst}")))
        }
        Suite::PresentationRoundtrip => {
            let group = UniformGroup::family(&params(common)?)?;
            let pres = emit_presentation(&group)?;
            let count_ok = pres.relator_count() == m * (m - 1) / 2;
            let verified = pres.verify(&group)?;
            let back = Presentation::from_file(&pres.to_file())?;
            let file_ok = back.to_file() == pres.to_file();
            let ok = count_ok && verified && file_ok && pres.exponents_in_pzp();
            Ok((
                ok,
                format!(
                    "{} relators, min exponent valuation {}",
                    pres.relator_count(),
                    pres.min_exponent_valuation()
                ),
            ))
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn parse_dimension(s: &str) -> std::result::Result<u64, String> {
    let k: u64 = s.parse().map_err(|_| format!("`{s}` is not a dimension"))?;
    if k < 3 {
        return Err("k must be at least 3".into());
    }
    Ok(k)
}

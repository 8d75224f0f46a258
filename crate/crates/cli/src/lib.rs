//! Command logic behind the `qlacuna` binary.
//!
//! Every command produces a [`RunReport`]; the binary renders it and maps
//! its status to the exit code (0 pass, 1 fail, 2 error).

pub mod args;
pub mod report;

use std::f64::consts::PI;

use serde_json::Value;

use qlacuna::bailey::{
    compare_pairs, lovejoy_transform, pair_l1, pair_l2, slater_c1, slater_c5, verify_pair,
};
use qlacuna::identities::{self, lhs, p1_formula, rhs_table, IdentityReport};
use qlacuna::quadforms::{constant_profile, RepTable};
use qlacuna::tauber::{abel_ratio_check, bound_profile, max_and_median};
use qlacuna::{
    AsymptoticSpec, BaileyPair, Family, Monomial, QuadFormSpec, Series, SlowlyVarying, TailRule,
};

pub use args::Cli;
use args::{
    AsymArgs, BaileyArgs, Case, CoeffsArgs, Command, IdentityArgs, PairName, QuadformArgs, Side,
    TauberArgs, VerifyCommand,
};
pub use report::{real, Format, RunReport, Status};

/// Overrides the hard cap on summed series terms.
pub const MAX_N_VAR: &str = "QLACUNA_MAX_N";

const BOUND_FACTOR: f64 = 4.0;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Engine(qlacuna::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<qlacuna::Error> for CliError {
    fn from(e: qlacuna::Error) -> Self {
        CliError::Engine(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Name of the command as echoed in reports.
pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Coeffs(_) => "coeffs",
        Command::Verify(VerifyCommand::Identity(_)) => "verify identity",
        Command::Verify(VerifyCommand::Bailey(_)) => "verify bailey",
        Command::Asym(_) => "asym",
        Command::Quadform(_) => "quadform",
        Command::TauberDemo(_) => "tauber-demo",
    }
}

/// Run a parsed command. Errors become a report with status `error` and
/// the message returned alongside for standard error.
pub fn run(cli: &Cli) -> (RunReport, Option<String>) {
    let result = match &cli.command {
        Command::Coeffs(a) => cmd_coeffs(a),
        Command::Verify(VerifyCommand::Identity(a)) => cmd_verify_identity(a),
        Command::Verify(VerifyCommand::Bailey(a)) => cmd_verify_bailey(a),
        Command::Asym(a) => cmd_asym(a),
        Command::Quadform(a) => cmd_quadform(a),
        Command::TauberDemo(a) => cmd_tauber_demo(a),
    };
    match result {
        Ok(r) => (r, None),
        Err(e) => {
            let mut r = RunReport::new(command_name(&cli.command), Vec::new());
            r.status = Status::Error;
            (r, Some(e.to_string()))
        }
    }
}

/// Tail rule with the hard cap taken from the environment when set.
pub fn tail_rule() -> CliResult<TailRule> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(TailRule::with_max_terms)
            .map_err(|e| CliError::Usage(format!("{MAX_N_VAR}={v:?}: {e}"))),
        Err(_) => Ok(TailRule::default()),
    }
}

pub fn cmd_coeffs(a: &CoeffsArgs) -> CliResult<RunReport> {
    let f = Family::from(a.family);
    let side = match a.side {
        Side::Lhs => "lhs",
        Side::Rhs => "rhs",
        Side::Formula => "formula",
    };
    let values: Vec<i64> = match a.side {
        Side::Lhs => lhs::<i64>(f, a.n_max as i64 + 1)?.to_vec()?,
        Side::Rhs => rhs_table(f, a.n_max),
        Side::Formula if f == Family::P1 => (0..=a.n_max).map(p1_formula).collect(),
        Side::Formula => {
            return Err(CliError::Usage(format!(
                "--side formula is only available for p1, not {f}"
            )))
        }
    };
    let mut r = RunReport::new("coeffs", vec!["n", "coefficient"])
        .param("family", f.to_string())
        .param("side", side)
        .param("n_max", a.n_max);
    for (n, c) in values.into_iter().enumerate().take(a.n_max as usize + 1) {
        r.push(vec![n.into(), c.into()]);
    }
    Ok(r)
}

pub fn cmd_verify_identity(a: &IdentityArgs) -> CliResult<RunReport> {
    identity_report(Family::from(a.which), a.order, Ok)
}

/// The identity check with the right side passed through `adjust`, so
/// tests can confirm that a planted error is reported at its exponent.
pub fn identity_report(
    f: Family,
    order: i64,
    adjust: impl FnOnce(Series) -> qlacuna::Result<Series>,
) -> CliResult<RunReport> {
    if order < 1 {
        return Err(CliError::Usage(format!(
            "--order must be >= 1, got {order}"
        )));
    }
    let rep: IdentityReport<i64> = identities::verify_identity_with(f, order, adjust)?;
    let mut r = RunReport::new("verify identity", vec!["exponent", "lhs", "rhs", "agree"])
        .param("which", f.tag())
        .param("order", order);
    for e in 0..=order {
        let (l, rh) = (rep.lhs.coeff(e)?, rep.rhs.coeff(e)?);
        r.push(vec![e.into(), l.into(), rh.into(), (l == rh).into()]);
    }
    r.status = Status::from_pass(rep.passed());
    if let Some(m) = rep.mismatch {
        r = r
            .param("first_mismatch", m.exponent)
            .param("first_mismatch_lhs", m.left)
            .param("first_mismatch_rhs", m.right);
    }
    Ok(r)
}

fn named_pair(p: PairName) -> CliResult<(BaileyPair, Option<BaileyPair>)> {
    Ok(match p {
        PairName::C1 => (slater_c1(), None),
        PairName::C5 => (slater_c5(), None),
        PairName::L1 => (pair_l1(), None),
        PairName::L2 => (pair_l2(), None),
        PairName::LovejoyC1 => (
            lovejoy_transform(&slater_c1(), Monomial::MINUS_ONE)?,
            Some(pair_l1()),
        ),
        PairName::LovejoyC5 => (
            lovejoy_transform(&slater_c5(), Monomial::MINUS_ONE)?,
            Some(pair_l2()),
        ),
    })
}

pub fn cmd_verify_bailey(a: &BaileyArgs) -> CliResult<RunReport> {
    bailey_report(a.pair, a.n_max, a.order, |p| p)
}

/// The pair check with the pair passed through `adjust` before verification.
pub fn bailey_report(
    name: PairName,
    n_max: u64,
    order: i64,
    adjust: impl FnOnce(BaileyPair) -> BaileyPair,
) -> CliResult<RunReport> {
    let (pair, target) = named_pair(name)?;
    let pair = adjust(pair);
    let report = verify_pair(&pair, n_max, order)?;
    let comparison = target
        .as_ref()
        .map(|t| compare_pairs(&pair, t, n_max, order))
        .transpose()?;
    let columns = vec![
        "n",
        "relation_holds",
        "first_difference",
        "compared_below",
        "alpha_difference",
        "beta_difference",
    ];
    let label = name.to_possible_value_name();
    let mut r = RunReport::new("verify bailey", columns)
        .param("pair", label)
        .param("n_max", n_max)
        .param("order", order);
    if let Some(c) = &comparison {
        r = r.param("same_base", c.same_base);
    }
    for (i, row) in report.rows.iter().enumerate() {
        let diff = comparison.as_ref().map(|c| &c.rows[i]);
        r.push(vec![
            row.n.into(),
            row.passed.into(),
            row.first_difference.into(),
            row.compared_below.into(),
            diff.and_then(|d| d.alpha_difference).into(),
            diff.and_then(|d| d.beta_difference).into(),
        ]);
    }
    let matches = comparison.as_ref().is_none_or(|c| c.identical());
    r.status = Status::from_pass(report.all_passed() && matches);
    Ok(r)
}

trait PossibleName {
    fn to_possible_value_name(&self) -> String;
}

impl<T: clap::ValueEnum> PossibleName for T {
    fn to_possible_value_name(&self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

pub fn cmd_asym(a: &AsymArgs) -> CliResult<RunReport> {
    let f = Family::from(a.family);
    let rule = tail_rule()?;
    let p = bound_profile::<f64>(f, a.k_max, &rule)?;
    let (_, b1_med) = max_and_median(&p.b1);
    let (_, b2_med) = max_and_median(&p.b2);
    let mut r = RunReport::new(
        "asym",
        vec!["k", "z", "b1", "b2", "b1_over_median", "b2_over_median"],
    )
    .param("family", f.to_string())
    .param("k_max", a.k_max)
    .param("bound_factor", real(BOUND_FACTOR));
    let mut pass = true;
    for i in 0..p.ks.len() {
        let (r1, r2) = (p.b1[i] / b1_med, p.b2[i] / b2_med);
        pass &= r1 <= BOUND_FACTOR && r2 <= BOUND_FACTOR;
        r.push(vec![
            p.ks[i].into(),
            real(p.zs[i]),
            real(p.b1[i]),
            real(p.b2[i]),
            real(r1),
            real(r2),
        ]);
    }
    r.status = Status::from_pass(pass);
    Ok(r)
}

pub fn cmd_quadform(a: &QuadformArgs) -> CliResult<RunReport> {
    let profile = constant_profile(&a.form, &a.xs)?;
    let mut r = RunReport::new("quadform", vec!["x", "r1", "r2", "c1_hat", "c2_hat"])
        .param("form", a.form.to_string())
        .param("xs", a.xs.clone());
    let mut pass = true;
    let mut last = (0, 0);
    for s in &profile {
        pass &= s.r2 <= s.x && s.r1 >= s.r2 && s.r1 >= last.0 && s.r2 >= last.1;
        last = (s.r1, s.r2);
        r.push(vec![
            s.x.into(),
            s.r1.into(),
            s.r2.into(),
            real(s.c1_hat),
            real(s.c2_hat),
        ]);
    }
    r.status = Status::from_pass(pass);
    Ok(r)
}

pub fn cmd_tauber_demo(a: &TauberArgs) -> CliResult<RunReport> {
    let rule = tail_rule()?;
    let (case, spec, zs, band): (&str, _, Vec<f64>, (f64, f64)) = match a.case {
        Case::Geometric => (
            "geometric",
            AsymptoticSpec::new(1, SlowlyVarying::ConstantOne, 1.0)?,
            vec![1.0 - 1e-1, 1.0 - 1e-2, 1.0 - 1e-3],
            (0.99, 1.01),
        ),
        Case::GaussCircle => (
            "gauss-circle",
            AsymptoticSpec::new(1, SlowlyVarying::ConstantOne, PI)?,
            vec![1.0 - 1e-2, 1.0 - 1e-3, 1.0 - 1e-4],
            (0.95, 1.05),
        ),
        Case::Indicator => (
            "indicator",
            AsymptoticSpec::new(1, SlowlyVarying::InvSqrtLog, 1.0)?,
            vec![1.0 - 1e-2, 1.0 - 1e-3, 1.0 - 1e-4],
            (0.3, 3.0),
        ),
    };
    let top = rule.terms(*zs.last().expect("non-empty grid"))?;
    let points = match a.case {
        Case::Geometric => abel_ratio_check(&spec, |_| 1, &zs, &rule)?,
        _ => {
            let table = RepTable::sweep(&QuadFormSpec::SUM_OF_SQUARES, top)?;
            let counts = table.counts();
            let indicator = a.case == Case::Indicator;
            let coeff = |n: u64| match (n, counts[n as usize]) {
                (0, _) => 0,
                (_, c) if indicator => (c > 0) as i64,
                (_, c) => c as i64,
            };
            abel_ratio_check(&spec, coeff, &zs, &rule)?
        }
    };
    // the two calibrations are judged at the last grid point, the indicator band everywhere
    let judged = |i: usize| a.case == Case::Indicator || i + 1 == points.len();
    let mut r = RunReport::new(
        "tauber-demo",
        vec![
            "z",
            "series",
            "cumulative",
            "comparison",
            "ratio",
            "within_band",
        ],
    )
    .param("case", case)
    .param("delta", spec.delta)
    .param("k", real(spec.k))
    .param("band_low", real(band.0))
    .param("band_high", real(band.1));
    let mut pass = true;
    for (i, p) in points.iter().enumerate() {
        let inside = (band.0..=band.1).contains(&p.ratio);
        let cell: Value = if judged(i) {
            inside.into()
        } else {
            Value::Null
        };
        pass &= !judged(i) || inside;
        r.push(vec![
            real(p.z),
            real(p.series),
            real(p.cumulative),
            real(p.comparison),
            real(p.ratio),
            cell,
        ]);
    }
    r.status = Status::from_pass(pass);
    Ok(r)
}

//! Command-line front end: data ingestion, subcommand dispatch, report
//! emission, and the self-test runner.

mod ingest;
mod output;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_traits::Zero;
use output::{Format, Report};
use sl2period::arith::ExactScalar;
use sl2period::forms::{
    breve_coefficient, correction_factor, halfint_coefficient, maass_comparison_report,
    maass_oracle, psi_factor, sk_coefficient, whittaker_value, CoeffMethod, CorrectionMode,
    SymHalfIntegralMatrix, WhittakerElement,
};
use sl2period::lfn::{
    central_value, euler_factor, nonvanishing_criterion, subconvexity_certificate, EulerSixData,
};
use sl2period::padic::{
    coefficient_oracle, CosetElement, OracleConfig, OracleFactor, TauVariant,
};
use sl2period::periods::{
    alpha_sharp_p, i_sharp_p, local_l_ratio, IntegralMode, LRatio, LevelCase, LocalConfig,
    XiValue,
};
use sl2period::selftest::{run_suite, Tier};
use sl2period::rint;

#[derive(Parser)]
#[command(
    name = "sl2period",
    about = "Exact local periods, metaplectic matrix coefficients, and degree-6 central value data",
    version
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    /// Seed for any randomized identity checking (kept fixed for
    /// reproducible reports).
    #[arg(long, default_value_t = 0x5eed, global = true)]
    seed: u64,
    /// Worker count accepted for interface stability; reductions are
    /// deterministic regardless.
    #[arg(long, default_value_t = 1, global = true)]
    threads: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a newform / half-integral data file.
    IngestCheck(IngestArgs),
    /// Closed-form local period quantities at one prime.
    LocalPeriod(LocalPeriodArgs),
    /// Brute-force matrix-coefficient oracles.
    Oracle(OracleArgs),
    /// Archimedean period constants for a weight pair.
    Arch(ArchArgs),
    /// Fourier-coefficient operations.
    Forms(FormsArgs),
    /// Weight-raising constants and the comparison report.
    Maass(MaassArgs),
    /// Degree-6 Euler factor data at a good prime.
    Euler(EulerArgs),
    /// Assemble the completed central value from Petersson data.
    CentralValue(CentralValueArgs),
    /// Per-place sign table for the non-vanishing criterion.
    Nonvanishing(NonvanishingArgs),
    /// Local subconvexity certificate.
    Certify(CertifyArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Path to the data file.
    #[arg(long)]
    file: String,
    /// Also validate the half-integral coefficient table.
    #[arg(long, default_value_t = false)]
    half_integral: bool,
}

#[derive(Args)]
struct LocalPeriodArgs {
    #[arg(long)]
    p: u64,
    /// Level case: "unramified", "ng", or "mg".
    #[arg(long)]
    case: String,
    /// Atkin-Lehner sign at the prime.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    wp: i32,
    /// Character square: "1", "-1", a "theta:<radians>" unit sample, or
    /// omitted to keep it formal.
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    /// Also evaluate the truncated double-coset sum with this cutoff.
    #[arg(long)]
    truncate: Option<i64>,
}

#[derive(Args)]
struct OracleArgs {
    /// Factor: "tau", "pi", or "omega".
    #[arg(long)]
    factor: String,
    /// Element: "alpha:<n>" or "beta:<m>".
    #[arg(long)]
    element: String,
    #[arg(long)]
    p: u64,
    /// Congruence resolution; defaults to 2|n| + 3.
    #[arg(long)]
    resolution: Option<u32>,
    /// Tau variant: "old" or "new".
    #[arg(long, default_value = "old")]
    variant: String,
    /// Fundamental discriminant for the metaplectic factor.
    #[arg(long, allow_hyphen_values = true)]
    d_disc: Option<i64>,
    /// Unit nonresidue for the metaplectic factor.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<i64>,
}

#[derive(Args)]
struct ArchArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    ell: u32,
}

#[derive(Args)]
struct FormsArgs {
    #[command(subcommand)]
    op: FormsOp,
}

#[derive(Subcommand)]
enum FormsOp {
    /// One local factor of the coefficient product.
    Psi {
        #[arg(long)]
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long)]
        p: u64,
    },
    /// Half-integral-weight coefficient by either route.
    C {
        #[arg(long)]
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, default_value = "euler")]
        method: String,
    },
    /// Degree-2 divisor-sum coefficient at a half-integral matrix.
    Sk {
        #[arg(long)]
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true)]
        b2: String,
        #[arg(long, allow_hyphen_values = true)]
        b3: String,
    },
    /// Local Whittaker value at a special element.
    Whittaker {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Element: "one", "s", or "r:<unit>".
        #[arg(long)]
        element: String,
    },
    /// Correction factor at a level-quotient prime.
    Correction {
        #[arg(long)]
        file: String,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true)]
        b2: String,
        #[arg(long, allow_hyphen_values = true)]
        b3: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, default_value = "closed")]
        mode: String,
    },
    /// Coefficient of the level-raised degree-2 form.
    Breve {
        #[arg(long)]
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true)]
        b2: String,
        #[arg(long, allow_hyphen_values = true)]
        b3: String,
        #[arg(long, allow_hyphen_values = true)]
        y1: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        y2: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        mg: u64,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
}

#[derive(Args)]
struct MaassArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    m: u32,
    /// Emit the verbatim-vs-operator comparison report.
    #[arg(long, default_value_t = false)]
    report: bool,
}

#[derive(Args)]
struct EulerArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    ell: u32,
    /// Eigenvalue of the first form, as "num/den".
    #[arg(long, allow_hyphen_values = true)]
    af: String,
    /// Eigenvalue of the second form, as "num/den".
    #[arg(long, allow_hyphen_values = true)]
    ag: String,
    /// Complex evaluation point "re,im" (defaults to k + 2).
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
}

#[derive(Args)]
struct CentralValueArgs {
    /// Path to the assembler configuration file.
    #[arg(long)]
    file: String,
}

#[derive(Args)]
struct NonvanishingArgs {
    #[arg(long)]
    file: String,
    #[arg(long)]
    ng: u64,
    #[arg(long)]
    ell: u32,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    p: u64,
    /// Level case: "ng" or "mg".
    #[arg(long)]
    case: String,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    wp: i32,
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Symbolic identities only (seconds).
    #[arg(long, default_value_t = false)]
    quick: bool,
    /// Everything including the enumeration oracles (minutes).
    #[arg(long, default_value_t = false)]
    full: bool,
}

fn main() {
    let cli = Cli::parse();
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        std::process::exit(2);
    }
    let code = match dispatch(&cli) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    };
    std::process::exit(code);
}

fn parse_case(s: &str) -> Result<LevelCase, sl2period::Error> {
    match s {
        "unramified" => Ok(LevelCase::Unramified),
        "ng" => Ok(LevelCase::DividesNg),
        "mg" => Ok(LevelCase::DividesMg),
        _ => Err(sl2period::Error::Parse(format!(
            "unknown case {s}; expected unramified, ng, or mg"
        ))),
    }
}

fn parse_xi(s: Option<&String>, p: u64) -> Result<XiValue, sl2period::Error> {
    match s.map(|x| x.as_str()) {
        None | Some("formal") => Ok(XiValue::Formal),
        Some("1") => Ok(XiValue::Exact(ExactScalar::one(p))),
        Some("-1") => Ok(XiValue::Exact(-ExactScalar::one(p))),
        Some(other) => {
            if let Some(theta) = other.strip_prefix("theta:") {
                let t: f64 = theta
                    .parse()
                    .map_err(|_| sl2period::Error::Parse(format!("bad angle: {theta}")))?;
                Ok(XiValue::Unit(Complex64::new(t.cos(), t.sin())))
            } else {
                Err(sl2period::Error::Parse(format!(
                    "xi must be 1, -1, formal, or theta:<radians>; got {other}"
                )))
            }
        }
    }
}

fn parse_element(s: &str) -> Result<CosetElement, sl2period::Error> {
    if let Some(n) = s.strip_prefix("alpha:") {
        return Ok(CosetElement::Alpha(n.parse().map_err(|_| {
            sl2period::Error::Parse(format!("bad element index in {s}"))
        })?));
    }
    if let Some(m) = s.strip_prefix("beta:") {
        return Ok(CosetElement::Beta(m.parse().map_err(|_| {
            sl2period::Error::Parse(format!("bad element index in {s}"))
        })?));
    }
    Err(sl2period::Error::Parse(format!(
        "element must be alpha:<n> or beta:<m>; got {s}"
    )))
}

fn matrix_from_strings(
    b1: &str,
    b2: &str,
    b3: &str,
) -> Result<SymHalfIntegralMatrix, sl2period::Error> {
    Ok(SymHalfIntegralMatrix::new(
        ingest::parse_rational(b1)?,
        ingest::parse_rational(b2)?,
        ingest::parse_rational(b3)?,
    ))
}

fn dispatch(cli: &Cli) -> Result<String, sl2period::Error> {
    let format = cli.format;
    match &cli.command {
        Command::IngestCheck(args) => {
            let mut report = Report::new();
            if args.half_integral {
                let h = ingest::load_half_integral(&args.file)?;
                report.push("status", "ok");
                report.push("level", h.parent.level);
                report.push("weight", h.parent.weight);
                report.push("auxiliary_discriminant", h.d_disc);
                report.push("fundamental_coefficients", h.c_fund.len());
            } else {
                let nf = ingest::load_newform(&args.file)?;
                report.push("status", "ok");
                report.push("level", nf.level);
                report.push("weight", nf.weight);
                report.push("eigenvalues", nf.hecke.len());
                for (p, w) in &nf.atkin_lehner {
                    report.push(format!("sign_{p}"), w);
                }
            }
            Ok(report.render(format))
        }
        Command::LocalPeriod(args) => {
            let case = parse_case(&args.case)?;
            let xi = parse_xi(args.xi.as_ref(), args.p)?;
            let cfg = LocalConfig::new(args.p, case, args.wp, xi)?;
            let mut report = Report::new();
            report.push("i_sharp", i_sharp_p(&cfg));
            if cfg.case != LevelCase::Unramified {
                let alpha = alpha_sharp_p(&cfg, IntegralMode::Closed)?;
                match &alpha {
                    sl2period::periods::PeriodValue::Exact(r) => report.push("alpha_sharp", r),
                    sl2period::periods::PeriodValue::Complex(z) => {
                        report.push_f64("alpha_sharp_re", z.re);
                        report.push_f64("alpha_sharp_im", z.im);
                    }
                    sl2period::periods::PeriodValue::RationalFn { num, den } => {
                        report.push("alpha_sharp_num", num);
                        report.push("alpha_sharp_den", den);
                    }
                }
                if let Some(n) = args.truncate {
                    let t = alpha_sharp_p(&cfg, IntegralMode::Truncated(n))?;
                    if let sl2period::periods::PeriodValue::Complex(z) = t {
                        report.push_f64("alpha_sharp_truncated_re", z.re);
                        report.push_f64("alpha_sharp_truncated_im", z.im);
                    }
                }
            }
            match local_l_ratio(&cfg)? {
                LRatio::UnramifiedOne => report.push("l_ratio", "1 (unramified convention)"),
                LRatio::CombinedOnly(r) => report.push("l_ratio_combined", r),
                LRatio::Factored { .. } => {
                    match sl2period::periods::l_ratio_value(&cfg)? {
                        sl2period::periods::PeriodValue::Exact(r) => {
                            report.push("l_ratio", r)
                        }
                        sl2period::periods::PeriodValue::Complex(z) => {
                            report.push_f64("l_ratio_re", z.re);
                            report.push_f64("l_ratio_im", z.im);
                        }
                        sl2period::periods::PeriodValue::RationalFn { num, den } => {
                            report.push("l_ratio_num", num);
                            report.push("l_ratio_den", den);
                        }
                    }
                }
            }
            Ok(report.render(format))
        }
        Command::Oracle(args) => {
            let elem = parse_element(&args.element)?;
            let resolution = args
                .resolution
                .unwrap_or_else(|| sl2period::padic::default_resolution(elem));
            let mut cfg = OracleConfig::new(resolution);
            cfg.seed = cli.seed;
            let factor = match args.factor.as_str() {
                "tau" => OracleFactor::Tau(match args.variant.as_str() {
                    "old" => TauVariant::OldAtMg,
                    "new" => TauVariant::NewAtNg,
                    other => {
                        return Err(sl2period::Error::Parse(format!(
                            "variant must be old or new; got {other}"
                        )))
                    }
                }),
                "pi" => {
                    let d_disc = args.d_disc.map(Ok).unwrap_or_else(|| {
                        sl2period::periods::pick_discriminant(args.p, 1)
                    })?;
                    let delta = rint(args.delta.unwrap_or(0));
                    let delta = if delta.is_zero() {
                        rint(default_nonresidue(args.p))
                    } else {
                        delta
                    };
                    OracleFactor::PiTilde { d_disc, delta }
                }
                "omega" => OracleFactor::Omega,
                other => {
                    return Err(sl2period::Error::Parse(format!(
                        "factor must be tau, pi, or omega; got {other}"
                    )))
                }
            };
            let value = coefficient_oracle(&factor, elem, args.p, &cfg)?;
            let mut report = Report::new();
            report.push("prime", args.p);
            report.push("resolution", resolution);
            match value {
                sl2period::padic::OracleValue::Laurent(q) => report.push("value", q),
                sl2period::padic::OracleValue::Scalar(s) => report.push("value", s),
                sl2period::padic::OracleValue::Complex(z) => {
                    report.push_f64("value_re", z.re);
                    report.push_f64("value_im", z.im);
                }
            }
            Ok(report.render(format))
        }
        Command::Arch(args) => {
            let a = sl2period::arch::arch_period(args.k, args.ell)?;
            let mut report = Report::new();
            report.push("c_weight_pair", a.c_kl);
            report.push("i_sharp", a.i_sharp);
            report.push("alpha_sharp", a.alpha_sharp);
            report.push("c_central_value", a.c_fg);
            Ok(report.render(format))
        }
        Command::Forms(args) => forms_dispatch(&args.op, format),
        Command::Maass(args) => {
            let mut report = Report::new();
            if args.report {
                let r = maass_comparison_report(args.k, args.m)?;
                report.push("k", r.k);
                report.push("m", r.m);
                if let Some(c) = &r.verbatim_trace_coeff {
                    report.push("verbatim_trace_coefficient_per_pi", c);
                }
                if let Some(c) = &r.oracle_trace_coeff {
                    report.push("operator_trace_coefficient_per_pi", c);
                }
                report.push(
                    "expressions_agree",
                    if r.expressions_agree { "yes" } else { "no" },
                );
                report.push("authoritative_route", "operator");
            }
            // evaluate both routes at a reference point for the record
            let b = SymHalfIntegralMatrix::from_ints(1, 1, 2);
            let y = [rint(2), rint(1), rint(1)];
            let verbatim = sl2period::forms::maass_c_eval(&b, &y, args.k, args.m)?;
            let oracle = maass_oracle(args.k, args.m)?.eval_real(&b, &y)?;
            report.push("verbatim_at_reference", verbatim);
            report.push("operator_at_reference", oracle);
            Ok(report.render(format))
        }
        Command::Euler(args) => {
            let data = EulerSixData::new(
                args.p,
                args.k,
                args.ell,
                ingest::parse_rational(&args.af)?,
                ingest::parse_rational(&args.ag)?,
            );
            let s = match &args.s {
                None => Complex64::new(args.k as f64 + 2.0, 0.0),
                Some(text) => {
                    let parts: Vec<&str> = text.split(',').collect();
                    if parts.len() != 2 {
                        return Err(sl2period::Error::Parse(
                            "the point must be given as re,im".into(),
                        ));
                    }
                    Complex64::new(
                        parts[0].trim().parse().map_err(|_| {
                            sl2period::Error::Parse(format!("bad real part: {}", parts[0]))
                        })?,
                        parts[1].trim().parse().map_err(|_| {
                            sl2period::Error::Parse(format!("bad imaginary part: {}", parts[1]))
                        })?,
                    )
                }
            };
            let (value, coeffs) = euler_factor(&data, s)?;
            let mut report = Report::new();
            for (j, c) in coeffs.iter().enumerate() {
                report.push(format!("poly_coeff_{j}"), c);
            }
            for (j, c) in data.reciprocal_poly_in_p_minus_s().iter().enumerate() {
                report.push(format!("poly_in_p_minus_s_coeff_{j}"), c);
            }
            report.push_f64("value_re", value.re);
            report.push_f64("value_im", value.im);
            let gamma = sl2period::lfn::gamma_factor(args.k, args.ell, s)?;
            report.push_f64("gamma_factor_re", gamma.re);
            report.push_f64("gamma_factor_im", gamma.im);
            Ok(report.render(format))
        }
        Command::CentralValue(args) => {
            let input = ingest::load_central_value(&args.file)?;
            let v = central_value(&input)?;
            let mut report = Report::new();
            report.push("power_of_two", v.power_of_two);
            report.push("c0", v.c0);
            report.push("c_central_value", v.c_fg);
            report.push_f64("lambda", v.lambda);
            Ok(report.render(format))
        }
        Command::Nonvanishing(args) => {
            let nf = ingest::load_newform(&args.file)?;
            let r =
                nonvanishing_criterion(nf.k(), args.ell, &nf.atkin_lehner, args.ng, nf.level)?;
            let mut report = Report::new();
            for row in &r.rows {
                report.push(
                    format!("place_{}", row.place),
                    format!(
                        "required {} provided {} {}",
                        row.required,
                        row.provided,
                        if row.matches { "match" } else { "mismatch" }
                    ),
                );
            }
            report.push(
                "overall",
                if r.overall {
                    "nonvanishing-compatible"
                } else {
                    "obstructed"
                },
            );
            Ok(report.render(format))
        }
        Command::Certify(args) => {
            let case = parse_case(&args.case)?;
            let xi = parse_xi(args.xi.as_ref(), args.p)?;
            let cfg = LocalConfig::new(args.p, case, args.wp, xi)?;
            let c = subconvexity_certificate(&cfg)?;
            let mut report = Report::new();
            report.push_f64("alpha_sharp", c.alpha_sharp);
            report.push_f64("conductor_product", c.conductor_product);
            report.push("bracket_lo", &c.bracket.0);
            report.push("bracket_hi", &c.bracket.1);
            report.push("vanishes", if c.vanishes { "yes" } else { "no" });
            report.push("passes", if c.passes { "yes" } else { "no" });
            Ok(report.render(format))
        }
        Command::Selftest(args) => {
            let tier = if args.quick && !args.full {
                Tier::Quick
            } else {
                Tier::Full
            };
            let reports = run_suite(tier);
            let mut text = String::new();
            let mut all_ok = true;
            for r in &reports {
                text.push_str(&r.line());
                text.push('\n');
                all_ok &= r.passed;
            }
            if !all_ok {
                print!("{text}");
                std::process::exit(1);
            }
            Ok(text)
        }
    }
}

fn default_nonresidue(p: u64) -> i64 {
    (2..p as i64)
        .find(|&u| sl2period::arith::legendre_symbol(&sl2period::Integer::from(u), p) == -1)
        .unwrap_or(2)
}

fn forms_dispatch(op: &FormsOp, format: Format) -> Result<String, sl2period::Error> {
    let mut report = Report::new();
    match op {
        FormsOp::Psi { file, xi, p } => {
            let nf = ingest::load_newform(file)?;
            let v = psi_factor(&ingest::parse_rational(xi)?, *p, &nf)?;
            report.push("psi", v);
        }
        FormsOp::C { file, xi, method } => {
            let h = ingest::load_half_integral(file)?;
            let method = match method.as_str() {
                "euler" => CoeffMethod::Euler,
                "convolution" => CoeffMethod::Convolution,
                other => {
                    return Err(sl2period::Error::Parse(format!(
                        "method must be euler or convolution; got {other}"
                    )))
                }
            };
            let v = halfint_coefficient(&h, &ingest::parse_rational(xi)?, method)?;
            report.push("coefficient", v);
        }
        FormsOp::Sk { file, b1, b2, b3 } => {
            let h = ingest::load_half_integral(file)?;
            let b = matrix_from_strings(b1, b2, b3)?;
            report.push("coefficient", sk_coefficient(&h, &b)?);
        }
        FormsOp::Whittaker { p, xi, element } => {
            let elem = match element.as_str() {
                "one" => WhittakerElement::One,
                "s" => WhittakerElement::WeylS,
                other => {
                    if let Some(b) = other.strip_prefix("r:") {
                        WhittakerElement::RLower(ingest::parse_rational(b)?)
                    } else {
                        return Err(sl2period::Error::Parse(format!(
                            "element must be one, s, or r:<unit>; got {other}"
                        )));
                    }
                }
            };
            let v = whittaker_value(*p, &ingest::parse_rational(xi)?, &elem)?;
            report.push("scalar", &v.scalar);
            match &v.twist {
                Some(t) => report.push("twist_fraction", t),
                None => report.push("twist_fraction", "0"),
            }
        }
        FormsOp::Correction {
            file,
            p,
            b1,
            b2,
            b3,
            delta,
            mode,
        } => {
            let nf = ingest::load_newform(file)?;
            let b = matrix_from_strings(b1, b2, b3)?;
            let mode = match mode.as_str() {
                "closed" => CorrectionMode::Closed,
                "sum" => CorrectionMode::Sum,
                other => {
                    return Err(sl2period::Error::Parse(format!(
                        "mode must be closed or sum; got {other}"
                    )))
                }
            };
            let v = correction_factor(*p, &b, &ingest::parse_rational(delta)?, mode, &nf)?;
            report.push("value", &v.value);
            report.push("vanishes", if v.vanishes { "yes" } else { "no" });
        }
        FormsOp::Breve {
            file,
            b1,
            b2,
            b3,
            y1,
            v,
            y2,
            m,
            mg,
            delta,
        } => {
            let h = ingest::load_half_integral(file)?;
            let b = matrix_from_strings(b1, b2, b3)?;
            let y = [
                ingest::parse_rational(y1)?,
                ingest::parse_rational(v)?,
                ingest::parse_rational(y2)?,
            ];
            let value = breve_coefficient(&h, &b, &y, *m, *mg, &ingest::parse_rational(delta)?)?;
            report.push("coefficient", value);
        }
    }
    Ok(report.render(format))
}

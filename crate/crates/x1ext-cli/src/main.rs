//! Command-line front end: emits spectra, wavefunction tables and partner
//! potentials as CSV, and runs the verification suite with a JSON summary.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use x1ext::models::{normalize, Model, OscillatorParams, PotentialKind, ScarfParams};
use x1ext::numerics::solve_spectrum;
use x1ext::susy::{partner_potential, superpotential_closed, FactorizationSpec};

#[derive(Parser)]
#[command(
    name = "x1ext",
    version,
    about = "Rationally extended oscillator and Scarf potentials from X1 exceptional orthogonal polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Family {
    Oscillator,
    Scarf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    Standard,
    Extended,
}

impl From<Kind> for PotentialKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Standard => PotentialKind::Standard,
            Kind::Extended => PotentialKind::Extended,
        }
    }
}

/// Family parameters; the oscillator reads --omega/--l, Scarf reads --A/--B.
#[derive(Args, Clone, Copy)]
struct ModelArgs {
    /// Oscillator frequency
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Oscillator angular momentum
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Scarf depth parameter
    #[arg(long = "A", default_value_t = 3.0)]
    big_a: f64,
    /// Scarf asymmetry parameter (0 < B < A - 1)
    #[arg(long = "B", default_value_t = 1.0)]
    big_b: f64,
}

impl ModelArgs {
    fn build(&self, family: Family) -> Result<Model, String> {
        match family {
            Family::Oscillator => OscillatorParams::new(self.omega, self.l)
                .map(Model::Oscillator)
                .map_err(|e| e.to_string()),
            Family::Scarf => ScarfParams::new(self.big_a, self.big_b)
                .map(Model::Scarf)
                .map_err(|e| e.to_string()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analytic vs numeric energy levels as CSV (or JSON)
    Spectrum {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        params: ModelArgs,
        #[arg(long, value_enum, default_value_t = Kind::Extended)]
        kind: Kind,
        /// Highest level to solve for
        #[arg(long, default_value_t = 5)]
        nu_max: usize,
        /// Interior points of the eigensolver grid
        #[arg(long, default_value_t = 8000)]
        grid_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Wavefunction samples as CSV
    Sample {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        params: ModelArgs,
        #[arg(long, value_enum, default_value_t = Kind::Extended)]
        kind: Kind,
        /// Level to sample
        #[arg(long, default_value_t = 0)]
        nu: usize,
        #[arg(long, default_value_t = 2001)]
        points: usize,
        /// Rescale to unit L2 norm
        #[arg(long)]
        normalized: bool,
        /// Also emit the ground-state factors psi10 and phi (nu = 0 only)
        #[arg(long)]
        factored: bool,
    },
    /// Superpotential and partner-potential tables as CSV
    Partner {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        params: ModelArgs,
        #[arg(long, default_value_t = 2001)]
        points: usize,
    },
    /// Run the verification checks; nonzero exit if any fails
    Verify {
        #[command(flatten)]
        params: ModelArgs,
        #[arg(long, default_value_t = 5)]
        nu_max: usize,
        #[arg(long, default_value_t = 8000)]
        grid_n: usize,
        /// Only run checks whose name contains this substring
        #[arg(long)]
        only: Option<String>,
        /// Fault injection: scale the rational part of the extended potential
        #[arg(long, value_name = "FACTOR")]
        perturb_v2: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

// 17 significant digits, locale-independent
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn main() {
    let cli = Cli::parse();
    match cli.command {
        Command::Spectrum {
            family,
            params,
            kind,
            nu_max,
            grid_n,
            json,
        } => cmd_spectrum(family, params, kind.into(), nu_max, grid_n, json),
        Command::Sample {
            family,
            params,
            kind,
            nu,
            points,
            normalized,
            factored,
        } => cmd_sample(
            family,
            params,
            kind.into(),
            nu,
            points,
            normalized,
            factored,
        ),
        Command::Partner {
            family,
            params,
            points,
        } => cmd_partner(family, params, points),
        Command::Verify {
            params,
            nu_max,
            grid_n,
            only,
            perturb_v2,
            json,
        } => cmd_verify(params, nu_max, grid_n, only, perturb_v2, json),
    }
}

fn build_model(family: Family, params: ModelArgs) -> Model {
    match params.build(family) {
        Ok(m) => m,
        Err(e) => usage_error(&e),
    }
}

#[derive(serde::Serialize)]
struct SpectrumRow {
    nu: usize,
    e_analytic: f64,
    e_numeric: f64,
    abs_diff: f64,
}

fn cmd_spectrum(
    family: Family,
    params: ModelArgs,
    kind: PotentialKind,
    nu_max: usize,
    grid_n: usize,
    json: bool,
) {
    let model = build_model(family, params);
    let domain = model.oracle_domain(nu_max);
    let pot = |x: f64| model.potential(kind, x).unwrap();
    let numeric = match solve_spectrum(&pot, domain, nu_max + 1, grid_n, true) {
        Ok(v) => v,
        Err(e) => usage_error(&e.to_string()),
    };
    let rows: Vec<SpectrumRow> = numeric
        .iter()
        .enumerate()
        .map(|(nu, &e)| SpectrumRow {
            nu,
            e_analytic: model.energy(nu),
            e_numeric: e,
            abs_diff: (e - model.energy(nu)).abs(),
        })
        .collect();
    if json {
        println!("{}", serde_json::to_string_pretty(&rows).unwrap());
    } else {
        println!("nu,e_analytic,e_numeric,abs_diff");
        for r in rows {
            println!(
                "{},{},{},{}",
                r.nu,
                fmt(r.e_analytic),
                fmt(r.e_numeric),
                fmt(r.abs_diff)
            );
        }
    }
}

fn cmd_sample(
    family: Family,
    params: ModelArgs,
    kind: PotentialKind,
    nu: usize,
    points: usize,
    normalized: bool,
    factored: bool,
) {
    let model = build_model(family, params);
    if factored && nu != 0 {
        usage_error("--factored applies to the ground state (--nu 0) only");
    }
    let table = match model.sample(kind, nu, points, false) {
        Ok(t) => t,
        Err(e) => usage_error(&e.to_string()),
    };
    let table = if normalized {
        match normalize(&table) {
            Ok(t) => t,
            Err(e) => usage_error(&e.to_string()),
        }
    } else {
        table
    };
    if factored {
        println!("x,psi,psi10,phi");
        for (&x, &v) in table.xs.iter().zip(table.values.iter()) {
            let (psi10, one_plus_phi) =
                x1ext::models::ground_state_factorized(&model, x).unwrap_or((0.0, 1.0));
            println!(
                "{},{},{},{}",
                fmt(x),
                fmt(v),
                fmt(psi10),
                fmt(one_plus_phi - 1.0)
            );
        }
    } else {
        println!("x,psi");
        for (&x, &v) in table.xs.iter().zip(table.values.iter()) {
            println!("{},{}", fmt(x), fmt(v));
        }
    }
}

fn cmd_partner(family: Family, params: ModelArgs, points: usize) {
    let model = build_model(family, params);
    if points < 2 {
        usage_error("need at least 2 points");
    }
    let spec = FactorizationSpec::new(model);
    let (a, b) = model.oracle_domain(5);
    // interior grid; both potentials are singular at the walls
    let h = (b - a) / (points as f64 + 1.0);
    println!("x,v_plus,v_minus,w");
    for i in 1..=points {
        let x = a + i as f64 * h;
        let v_plus = model.potential(PotentialKind::Extended, x).unwrap();
        let v_minus = partner_potential(&spec, x).unwrap();
        let (w1, w2) = superpotential_closed(&spec, x).unwrap();
        println!(
            "{},{},{},{}",
            fmt(x),
            fmt(v_plus),
            fmt(v_minus),
            fmt(w1 + w2)
        );
    }
}

fn cmd_verify(
    params: ModelArgs,
    nu_max: usize,
    grid_n: usize,
    only: Option<String>,
    perturb_v2: Option<f64>,
    json: bool,
) {
    let osc = build_model(Family::Oscillator, params);
    let scarf = build_model(Family::Scarf, params);
    let cfg = verify::Config {
        nu_max,
        grid_n,
        perturb_v2: perturb_v2.unwrap_or(1.0),
        only,
    };
    let summary = match verify::run(&[osc, scarf], &cfg) {
        Ok(s) => s,
        Err(e) => usage_error(&e),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    } else {
        for c in &summary.checks {
            let flag = if c.pass { "PASS" } else { "FAIL" };
            println!(
                "{flag}  {:<32} value {:.3e}  tolerance {:.3e}  {}",
                c.name, c.value, c.tolerance, c.detail
            );
        }
        println!(
            "overall: {}",
            if summary.overall_pass { "PASS" } else { "FAIL" }
        );
    }
    if !summary.overall_pass {
        std::process::exit(1);
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use hyperstab_cli::{
    cmd_form, cmd_index, cmd_oracle, cmd_spectrum, cmd_tension, cmd_verify, parse_energy,
    parse_m_range, parse_rat, parse_routes, Format, RadiusArg,
};
use hyperstab_core::Sign;
use hyperstab_oracle::OracleConfig;

/// Exact stability engine for small CMC hyperspheres under fourth-order
/// energies: spectra, tension fields, quadratic forms, normal indices and
/// the numeric cross-checks.
#[derive(Parser)]
#[command(name = "hyperstab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, default_value = "table")]
    format: String,

    /// Write the report to a file instead of stdout. Relative paths land
    /// in $HYPERSTAB_OUT_DIR when that is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RadiusOpts {
    /// Radius a as a rational p/q (0 < a <= 1).
    #[arg(long)]
    a: Option<String>,

    /// Squared-curvature invariant t = (1-a^2)/a^2 as a rational p/q;
    /// covers irrational radii with rational t.
    #[arg(long)]
    t: Option<String>,
}

impl RadiusOpts {
    fn parse(&self) -> Result<RadiusArg> {
        Ok(RadiusArg {
            a: self.a.as_deref().map(parse_rat).transpose()?,
            t: self.t.as_deref().map(parse_rat).transpose()?,
        })
    }
}

#[derive(Args)]
struct OracleOpts {
    /// Grid size for the circle discretization.
    #[arg(long, default_value_t = 4096)]
    grid: usize,

    /// Variation step for second differences.
    #[arg(long, default_value_t = 1e-3)]
    step: f64,

    /// Modes to probe, comma separated.
    #[arg(long, default_value = "0,1,2,3")]
    modes: String,

    /// Apply one Richardson extrapolation step over (h, h/2).
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    richardson: bool,
}

impl OracleOpts {
    fn parse(&self) -> Result<OracleConfig> {
        let parsed: Vec<u64> = self
            .modes
            .split(',')
            .map(|s| s.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()?;
        anyhow::ensure!(
            !parsed.is_empty() && parsed.len() <= 4,
            "give between one and four modes"
        );
        // unused slots repeat the last mode
        let mut modes = [parsed[parsed.len() - 1]; 4];
        modes[..parsed.len()].copy_from_slice(&parsed);
        Ok(OracleConfig {
            grid: self.grid,
            step: self.step,
            richardson: self.richardson,
            modes,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact Laplace spectrum of the round sphere S^dim(R).
    Spectrum {
        /// Sphere dimension p.
        #[arg(long)]
        dim: u32,
        /// Squared radius R^2 as a rational p/q.
        #[arg(long, default_value = "1/4")]
        r2: String,
        /// Emit the first N levels.
        #[arg(long)]
        levels: Option<u64>,
        /// Emit all levels with eigenvalue below this rational cap.
        #[arg(long)]
        cap: Option<String>,
    },

    /// Fourth-order tension data of S^m(a), optionally solving for the
    /// critical radius.
    Tension {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        radius: RadiusOpts,
        /// Orientation of the unit normal (+1 or -1).
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        sigma: i32,
        /// Constant target curvature K.
        #[arg(long, default_value = "1")]
        curvature: String,
        /// Solve for the radius annihilating the fourth-order tension.
        #[arg(long, default_value_t = false)]
        solve: bool,
    },

    /// Stability quadratic form as a polynomial in the eigenvalue.
    Form {
        /// Energy: e4, es4 or hat.
        #[arg(long)]
        energy: String,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        radius: RadiusOpts,
        #[arg(long, default_value = "1")]
        curvature: String,
        /// fixture | variational | norms-fixture | norms-composition.
        #[arg(long, default_value = "variational")]
        source: String,
    },

    /// Normal index over the spectrum of S^m(1/2).
    Index {
        #[arg(long)]
        energy: String,
        /// Dimension or inclusive range, e.g. 3 or 1..10.
        #[arg(long)]
        m: String,
        /// all | fixture | variational | norms-fixture | norms-composition.
        #[arg(long, default_value = "all")]
        source: String,
        /// Exit nonzero unless every computed index equals this value.
        #[arg(long)]
        expect: Option<i64>,
    },

    /// Verification suites: fixtures, identities, oracle-m1, oracle-m2.
    Verify {
        suite: String,
        #[command(flatten)]
        oracle: OracleOpts,
    },

    /// Raw numeric oracle runs: bundle-norms, second-variation,
    /// first-variation, energy, curvature-m2.
    Oracle {
        which: String,
        #[command(flatten)]
        radius: RadiusOpts,
        #[command(flatten)]
        oracle: OracleOpts,
    },
}

fn run(cli: &Cli) -> Result<i32> {
    let format: Format = cli
        .format
        .parse()
        .map_err(|e: String| anyhow::anyhow!(e))?;
    let output = match &cli.command {
        Command::Spectrum {
            dim,
            r2,
            levels,
            cap,
        } => {
            let r2 = parse_rat(r2)?;
            let cap = cap.as_deref().map(parse_rat).transpose()?;
            cmd_spectrum(*dim, &r2, *levels, cap)?
        }
        Command::Tension {
            m,
            radius,
            sigma,
            curvature,
            solve,
        } => {
            let sign = match sigma {
                1 => Sign::Plus,
                -1 => Sign::Minus,
                other => anyhow::bail!("sigma must be +1 or -1, got {other}"),
            };
            cmd_tension(*m, &radius.parse()?, sign, &parse_rat(curvature)?, *solve)?
        }
        Command::Form {
            energy,
            m,
            radius,
            curvature,
            source,
        } => {
            let routes = parse_routes(source)?;
            anyhow::ensure!(routes.len() == 1, "form takes a single source");
            cmd_form(
                parse_energy(energy)?,
                *m,
                &radius.parse()?,
                &parse_rat(curvature)?,
                routes[0],
            )?
        }
        Command::Index {
            energy,
            m,
            source,
            expect,
        } => cmd_index(
            parse_energy(energy)?,
            parse_m_range(m)?,
            &parse_routes(source)?,
            *expect,
        )?,
        Command::Verify { suite, oracle } => cmd_verify(suite, &oracle.parse()?)?,
        Command::Oracle {
            which,
            radius,
            oracle,
        } => {
            let r = radius.parse()?;
            cmd_oracle(which, r.a.clone(), r.t.clone(), &oracle.parse()?)?
        }
    };
    output.write(format, cli.out.as_deref())?;
    Ok(output.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

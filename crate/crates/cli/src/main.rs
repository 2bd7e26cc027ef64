use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lcpath::commands::{self, exit, Variant};
use lcpath_core::TracerConfig;

#[derive(Parser)]
#[command(name = "lcpath", version, about = "Homotopy path tracing for linear complementarity problems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Trace a homotopy path and extract the LCP solution.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        tracer: TracerArgs,
        /// Also write the trace as CSV.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Print matrix-class properties of A.
    Classify {
        instance: PathBuf,
        /// Simplex lattice density for the copositivity samples.
        #[arg(long, default_value_t = commands::DEFAULT_DENSITY)]
        density: usize,
    },
    /// Enumerate every complementary solution and run Lemke's method.
    Oracle { instance: PathBuf },
    /// Run the bundled examples and print a comparison table.
    Bench,
    /// Trace a path and write every record as CSV.
    TraceExport {
        instance: PathBuf,
        out: PathBuf,
        #[command(flatten)]
        tracer: TracerArgs,
    },
}

#[derive(Args)]
struct TracerArgs {
    /// kkt, yu-psd, zhao-n, xu-p or wang-pstar.
    #[arg(long, default_value = "kkt", value_parser = parse_variant)]
    variant: Variant,
    #[arg(long)]
    eps1: Option<f64>,
    #[arg(long)]
    eps2: Option<f64>,
    #[arg(long)]
    eps3: Option<f64>,
    #[arg(long)]
    l0: Option<f64>,
    #[arg(long)]
    a0: Option<f64>,
    #[arg(long)]
    max_outer: Option<usize>,
    #[arg(long)]
    residual_accept: Option<f64>,
    /// Accept any corrected point with residual <= 1.
    #[arg(long, conflicts_with = "residual_accept")]
    loose_residual: bool,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    Variant::from_name(s).ok_or_else(|| format!("unknown variant `{s}`"))
}

impl TracerArgs {
    fn config(&self) -> TracerConfig {
        let mut c = TracerConfig::default();
        if let Some(v) = self.eps1 {
            c.eps1 = v;
        }
        if let Some(v) = self.eps2 {
            c.eps2 = v;
        }
        if let Some(v) = self.eps3 {
            c.eps3 = v;
        }
        if let Some(v) = self.l0 {
            c.l0 = v;
        }
        if let Some(v) = self.a0 {
            c.a0 = v;
        }
        if let Some(v) = self.max_outer {
            c.max_outer = v;
        }
        if let Some(v) = self.residual_accept {
            c.residual_accept = v;
        }
        if self.loose_residual {
            c = c.with_loose_residual();
        }
        c
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INPUT as u8 } else { 0 });
        }
    };
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let code = match cli.cmd {
        Cmd::Solve { instance, tracer, trace } => {
            commands::cmd_solve(&instance, tracer.variant, &tracer.config(), trace.as_deref(), &mut out, &mut err)
        }
        Cmd::Classify { instance, density } => commands::cmd_classify(&instance, density, &mut out, &mut err),
        Cmd::Oracle { instance } => commands::cmd_oracle(&instance, &mut out, &mut err),
        Cmd::Bench => commands::cmd_bench(&mut out),
        Cmd::TraceExport { instance, out: path, tracer } => {
            commands::cmd_trace_export(&instance, &path, tracer.variant, &tracer.config(), &mut out, &mut err)
        }
    };
    ExitCode::from(code as u8)
}

//! Subcommand bodies. Each writes its report to `out`, diagnostics to
//! `err`, and returns the process exit code.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use lcpath_core::classes::{classify, is_psd};
use lcpath_core::extract::DEFAULT_TOL;
use lcpath_core::oracle::MAX_ENUMERATION_N;
use lcpath_core::{
    brute_force_solutions, extract, lemke_solve, trace_path, CopositivityVerdict, ExtractionReport, HomotopySystem,
    KktHomotopy, LcpInstance, LemkeOutcome, TraceRecord, TracerConfig, TracerStatus, VariantHomotopy, VariantKind,
};

use crate::fixtures;
use crate::instance::{load_path, InputError, Loaded};
use crate::trace_csv;

pub mod exit {
    pub const OK: i32 = 0;
    pub const TRACER_FAILURE: i32 = 2;
    pub const UNVERIFIED: i32 = 3;
    pub const INPUT: i32 = 4;
    pub const SIZE_GUARD: i32 = 5;
    pub const OUTPUT_IO: i32 = 6;
}

pub const LEMKE_MAX_PIVOTS: usize = 500;
pub const DEFAULT_DENSITY: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Kkt,
    Other(VariantKind),
}

impl Variant {
    pub fn from_name(s: &str) -> Option<Self> {
        if s == "kkt" {
            return Some(Variant::Kkt);
        }
        VariantKind::from_name(s).map(Variant::Other)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Kkt => "kkt",
            Variant::Other(k) => k.name(),
        }
    }

    fn blocks(self) -> &'static [&'static str] {
        match self {
            Variant::Kkt => &["x", "z1", "z2"],
            Variant::Other(_) => &["x", "y"],
        }
    }
}

/// Everything a solve produces.
#[derive(Debug, Clone)]
pub struct SolveRun {
    pub variant: Variant,
    pub status: TracerStatus,
    pub lambda: f64,
    pub residual: f64,
    pub outer_iterations: usize,
    pub x_bar: Vec<f64>,
    pub w_bar: Vec<f64>,
    /// Only for the KKT homotopy.
    pub extraction: Option<ExtractionReport>,
    pub verified: bool,
    pub trace: Vec<TraceRecord>,
}

impl SolveRun {
    pub fn exit_code(&self) -> i32 {
        match (self.status, self.verified) {
            (TracerStatus::Solved, true) => exit::OK,
            (TracerStatus::Solved, false) => exit::UNVERIFIED,
            _ => exit::TRACER_FAILURE,
        }
    }
}

fn clamp_dust(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&t| if t < 0.0 && t > -DEFAULT_TOL { 0.0 } else { t }).collect()
}

/// Traces `variant` on a loaded instance and extracts the endpoint.
pub fn run_solve(l: &Loaded, variant: Variant, cfg: &TracerConfig) -> Result<SolveRun, InputError> {
    let n = l.inst.n();
    let sys: Box<dyn HomotopySystem> = match variant {
        Variant::Kkt => Box::new(
            KktHomotopy::new(l.inst.clone(), l.x0.clone(), l.z1_0.clone(), l.z2_0.clone())
                .map_err(|e| InputError::Field { field: "x0".into(), msg: e.to_string() })?,
        ),
        Variant::Other(k) => Box::new(
            VariantHomotopy::new(k, l.inst.clone(), l.x0.clone(), None)
                .map_err(|e| InputError::Field { field: "x0".into(), msg: e.to_string() })?,
        ),
    };
    let r = trace_path(&*sys, cfg);
    let y = &r.final_state.y;
    let (x_bar, extraction, verified) = match variant {
        Variant::Kkt => {
            let rep = extract(&l.inst, y, DEFAULT_TOL);
            let v = rep.lcp_verified;
            (rep.x_bar.clone(), Some(rep), v)
        }
        Variant::Other(_) => {
            let x = clamp_dust(&y[..n]);
            let v = l.inst.check_solution(&x, DEFAULT_TOL).0;
            (x, None, v)
        }
    };
    Ok(SolveRun {
        variant,
        status: r.status,
        lambda: r.final_state.lambda,
        residual: r.final_residual,
        outer_iterations: r.outer_iterations,
        w_bar: l.inst.compute_w(&x_bar),
        x_bar,
        extraction,
        verified,
        trace: r.trace,
    })
}

fn vec_str(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn vec_fixed(v: &[f64], digits: usize) -> String {
    // -0.000000 would make the output depend on the sign of dust
    let parts: Vec<String> = v
        .iter()
        .map(|x| {
            let s = format!("{x:.digits$}");
            if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') { s[1..].to_string() } else { s }
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

pub fn render_solve(run: &SolveRun) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "variant: {}", run.variant.name());
    let _ = writeln!(s, "status: {}", run.status.name());
    let _ = writeln!(s, "outer_iterations: {}", run.outer_iterations);
    let _ = writeln!(s, "lambda: {}", run.lambda);
    let _ = writeln!(s, "residual: {}", run.residual);
    let _ = writeln!(s, "x: {}", vec_str(&run.x_bar));
    let _ = writeln!(s, "w: {}", vec_str(&run.w_bar));
    if let Some(rep) = &run.extraction {
        let _ = writeln!(s, "z1: {}", vec_str(&rep.z1_bar));
        let _ = writeln!(s, "z2: {}", vec_str(&rep.z2_bar));
        let _ = writeln!(s, "delta_w: {}", vec_str(&rep.delta_w));
        let _ = writeln!(s, "delta_x: {}", vec_str(&rep.delta_x));
        let _ = writeln!(s, "system_residual: {}", rep.sys_residual);
        let _ = writeln!(s, "iff_condition: {}", rep.iff_holds);
        let _ = writeln!(s, "certificate_det: {}", rep.cert_det);
        let _ = writeln!(s, "certified: {}", rep.certified);
    }
    let _ = writeln!(s, "verified: {}", run.verified);
    s
}

fn input_error(err: &mut dyn Write, e: &InputError) -> i32 {
    let _ = writeln!(err, "error: {e}");
    exit::INPUT
}

fn write_trace(path: &Path, run: &SolveRun, n: usize) -> Result<(), String> {
    let file = std::fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
    trace_csv::write(std::io::BufWriter::new(file), run.variant.blocks(), n, &run.trace)
        .map_err(|e| format!("{}: {e}", path.display()))
}

pub fn cmd_solve(
    path: &Path,
    variant: Variant,
    cfg: &TracerConfig,
    trace: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    if let Err(e) = cfg.validate() {
        let _ = writeln!(err, "error: invalid tracer settings: {e}");
        return exit::INPUT;
    }
    let l = match load_path(path) {
        Ok(l) => l,
        Err(e) => return input_error(err, &e),
    };
    let run = match run_solve(&l, variant, cfg) {
        Ok(r) => r,
        Err(e) => return input_error(err, &e),
    };
    if out.write_all(render_solve(&run).as_bytes()).is_err() {
        return exit::OUTPUT_IO;
    }
    if let Some(p) = trace {
        if let Err(e) = write_trace(p, &run, l.inst.n()) {
            let _ = writeln!(err, "error: cannot write trace: {e}");
            return exit::OUTPUT_IO;
        }
    }
    run.exit_code()
}

pub fn cmd_trace_export(
    path: &Path,
    out_path: &Path,
    variant: Variant,
    cfg: &TracerConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    if let Err(e) = cfg.validate() {
        let _ = writeln!(err, "error: invalid tracer settings: {e}");
        return exit::INPUT;
    }
    let l = match load_path(path) {
        Ok(l) => l,
        Err(e) => return input_error(err, &e),
    };
    let run = match run_solve(&l, variant, cfg) {
        Ok(r) => r,
        Err(e) => return input_error(err, &e),
    };
    if let Err(e) = write_trace(out_path, &run, l.inst.n()) {
        let _ = writeln!(err, "error: cannot write trace: {e}");
        return exit::OUTPUT_IO;
    }
    let _ = writeln!(
        out,
        "wrote {} rows to {} (status {})",
        run.trace.len(),
        out_path.display(),
        run.status.name()
    );
    exit::OK
}

fn verdict_str(v: &CopositivityVerdict) -> String {
    match v {
        CopositivityVerdict::No { witness } if !witness.is_empty() => format!("no, witness {}", vec_str(witness)),
        other => other.label().to_string(),
    }
}

pub fn render_classes(inst: &LcpInstance, density: usize, labels: &[String]) -> String {
    let n = inst.n();
    let mut s = String::new();
    let _ = writeln!(s, "n: {n}");
    let _ = writeln!(s, "is_PSD: {}", is_psd(inst.a()));
    match classify(inst.a(), density) {
        Ok(rep) => {
            let _ = writeln!(s, "is_P: {}", rep.is_p);
            let _ = writeln!(s, "is_N: {}", rep.is_n);
            let order = rep.n0_exact_order.map_or("none".to_string(), |k| k.to_string());
            let _ = writeln!(s, "N0_exact_order: {order}");
            let _ = writeln!(s, "copositive (density {density}): {}", verdict_str(&rep.copositive));
            let _ = writeln!(s, "almost_C0 (density {density}): {}", verdict_str(&rep.almost_c0));
            let _ = writeln!(s, "principal minors (min, max) by order:");
            for (k, (lo, hi)) in rep.minor_extremes.iter().enumerate() {
                let _ = writeln!(s, "  {}: {}, {}", k + 1, lo + 0.0, hi + 0.0);
            }
        }
        Err(_) => {
            let _ = writeln!(s, "minor and copositivity classes: skipped (n > {MAX_ENUMERATION_N})");
        }
    }
    let shown = if labels.is_empty() { "none".to_string() } else { labels.join(", ") };
    let _ = writeln!(s, "labels from file: {shown}");
    s
}

pub fn cmd_classify(path: &Path, density: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if density < 2 {
        let _ = writeln!(err, "error: density must be at least 2");
        return exit::INPUT;
    }
    let l = match load_path(path) {
        Ok(l) => l,
        Err(e) => return input_error(err, &e),
    };
    if out.write_all(render_classes(&l.inst, density, &l.metadata.classes).as_bytes()).is_err() {
        return exit::OUTPUT_IO;
    }
    exit::OK
}

pub fn lemke_str(o: &LemkeOutcome) -> String {
    match o {
        LemkeOutcome::Solution(s) => format!("solution {}", vec_fixed(&s.x, 6)),
        LemkeOutcome::RayTermination => "ray termination".into(),
        LemkeOutcome::CycleLimit => "pivot limit".into(),
    }
}

pub fn cmd_oracle(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let file = match crate::instance::InstanceFile::read(path) {
        Ok(f) => f,
        Err(e) => return input_error(err, &e),
    };
    // the size guard applies before the start-point scan
    if file.a.len() > MAX_ENUMERATION_N {
        let _ = writeln!(err, "error: n = {} exceeds the enumeration limit {MAX_ENUMERATION_N}", file.a.len());
        return exit::SIZE_GUARD;
    }
    let inst = match file.validate() {
        Ok(l) => l.inst,
        // an instance without a strictly feasible point is still enumerable
        Err(InputError::Field { field, .. }) if field == "x0" && file.x0.is_none() => {
            match LcpInstance::from_rows(&file.a, &file.q) {
                Ok(i) => i,
                Err(e) => return input_error(err, &InputError::Field { field: "A".into(), msg: e.to_string() }),
            }
        }
        Err(e) => return input_error(err, &e),
    };
    let sols = match brute_force_solutions(&inst, 1e-9) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit::SIZE_GUARD;
        }
    };
    let mut s = String::new();
    let _ = writeln!(s, "solutions: {}", sols.len());
    for sol in &sols {
        let _ = writeln!(s, "  x = {}  w = {}", vec_str(&sol.x), vec_str(&sol.w));
    }
    let _ = writeln!(s, "lemke: {}", lemke_str(&lemke_solve(&inst, LEMKE_MAX_PIVOTS)));
    if out.write_all(s.as_bytes()).is_err() {
        return exit::OUTPUT_IO;
    }
    exit::OK
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

/// Report for the bundled examples. Contains no timings so that repeated
/// runs are byte identical.
pub fn bench_report() -> (String, bool) {
    let cfg = TracerConfig::default();
    let mut s = String::new();
    let _ = writeln!(s, "{:<6} {:<6} {:<11} {:>5} {:>9} {:>10}  {:<40} lemke", "case", "homot", "status", "iters", "reported", "error", "x");
    let row = |s: &mut String, name: &str, variant: Variant, l: &Loaded| -> bool {
        let run = run_solve(l, variant, &cfg).expect("bundled fixtures are valid");
        let reference = l.metadata.reference_x.clone().unwrap_or_default();
        let reported = l.metadata.reported_iterations.map_or("-".to_string(), |k| k.to_string());
        let lemke = lemke_str(&lemke_solve(&l.inst, LEMKE_MAX_PIVOTS));
        let _ = writeln!(
            s,
            "{:<6} {:<6} {:<11} {:>5} {:>9} {:>10.3e}  {:<40} {}",
            name,
            variant.name().split('-').next().unwrap_or(""),
            format!("{}{}", run.status.name(), if run.verified { "" } else { "*" }),
            run.outer_iterations,
            reported,
            max_abs_diff(&run.x_bar, &reference),
            vec_fixed(&run.x_bar, 6),
            lemke
        );
        run.status == TracerStatus::Solved && run.verified
    };
    let all = fixtures::all();
    let mut solved = 0;
    for (name, l) in &all {
        if row(&mut s, name, Variant::Kkt, l) {
            solved += 1;
        }
    }
    row(&mut s, "ex4_1", Variant::Other(VariantKind::ZhaoN), &all[0].1);
    row(&mut s, "ex4_2", Variant::Other(VariantKind::YuPsd), &all[1].1);
    let _ = writeln!(s, "kkt solved and verified: {solved}/{}", all.len());
    let _ = writeln!(s, "(* = endpoint not verified as an LCP solution)");
    (s, solved == all.len())
}

pub fn cmd_bench(out: &mut dyn Write) -> i32 {
    let (report, ok) = bench_report();
    if out.write_all(report.as_bytes()).is_err() {
        return exit::OUTPUT_IO;
    }
    if ok {
        exit::OK
    } else {
        exit::TRACER_FAILURE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_names() {
        for name in ["kkt", "yu-psd", "zhao-n", "xu-p", "wang-pstar"] {
            assert_eq!(Variant::from_name(name).unwrap().name(), name);
        }
        assert!(Variant::from_name("lemke").is_none());
    }

    #[test]
    fn fixed_format_drops_negative_zero() {
        assert_eq!(vec_fixed(&[-1e-12, 0.5, -0.25], 3), "[0.000, 0.500, -0.250]");
    }

    #[test]
    fn exit_codes_follow_status_and_verdict() {
        let l = fixtures::load("ex4_1");
        let mut run = run_solve(&l, Variant::Kkt, &TracerConfig::default()).unwrap();
        assert_eq!(run.exit_code(), exit::OK);
        run.verified = false;
        assert_eq!(run.exit_code(), exit::UNVERIFIED);
        run.status = TracerStatus::MaxIter;
        assert_eq!(run.exit_code(), exit::TRACER_FAILURE);
    }
}

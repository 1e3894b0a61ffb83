//! Command-line driver.
//!
//! Every subcommand prints one JSON report to stdout and exits with 0 for a
//! pass, 1 for a found violation, 2 for an indeterminate outcome, and 3 for
//! input or usage problems. Input problems additionally put a one-line
//! machine-readable error object on stderr.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::characterize::{check_nonneg_root, check_nonneg_spectral, similarity_transform, SimilarityRefusal};
use crate::instances::{generate, InstanceSpec};
use crate::mm;
use crate::operator::KreinOperator;
use crate::perturb::{
    block_diagonal_region, capsule_region, compute_tau, envelope_region, fit_relative_bound,
    verify_enclosure, EnclosureCertificate, EnvelopeVariant, PerturbError, TheoremTag,
};
use crate::regions::EnclosureRegion;
use crate::report::{load_pair, load_raw, read_input, render_report, InputDigest, ReportBuilder};
use crate::spectral::{classify_real_point, decompose, growth_at_infinity, growth_order_at};
use crate::symmetry::FundamentalSymmetry;
use crate::tol::Tolerances;
use crate::verdict::Verdict;

#[derive(Parser)]
#[command(name = "krein", version, about = "Spectral toolkit for self-adjoint operators in Krein spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the pair: J is a fundamental symmetry and A is J-self-adjoint.
    Check {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Sign types of the spectrum, with an optional re,im,type CSV export.
    Classify {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Non-negativity by the spectral criteria, cross-checked against the
    /// direct form test.
    Nonneg {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum, default_value_t = RouteArg::Kernel)]
        route: RouteArg,
    },
    /// Canonical symmetry of A and the definitizing metric G.
    Similar {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Resolvent growth order at a real point, plus the profile at infinity.
    Growth {
        #[arg(long)]
        manifest: PathBuf,
        /// Real spectral point to probe; defaults to every real cluster.
        #[arg(long)]
        point: Option<f64>,
        /// Export y,resolvent_norm samples (needs --point).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Skew constant of a non-negative operator, projector route
    /// cross-checked by quadrature.
    Tau {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Spectral enclosure for A + V.
    Perturb {
        #[arg(long)]
        manifest: PathBuf,
        /// Enclosure construction: 5.1, 5.3, 5.4, or 5.4r.
        #[arg(long, value_parser = parse_theorem)]
        theorem: TheoremTag,
        /// Relative-bound parameter for the envelope constructions.
        #[arg(long, default_value_t = 0.0)]
        b: f64,
        /// Use the relative-bound arm of the envelope center even when the
        /// form floor gives a smaller one.
        #[arg(long)]
        force_gamma_a: bool,
    },
    /// Check a given region against the spectrum of A + V (or A).
    Verify {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        region: PathBuf,
    },
    /// Export boundary samples of a region as re,im CSV.
    Region {
        #[arg(long)]
        region: PathBuf,
        #[arg(long)]
        export: PathBuf,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Generate an instance into a directory, with a ready manifest.
    Gen {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    /// Kernel-chain form of the condition at zero.
    Kernel,
    /// Root-subspace form with projection-norm profiles.
    Root,
}

fn parse_theorem(s: &str) -> Result<TheoremTag, String> {
    match s {
        "5.1" => Ok(TheoremTag::T51),
        "5.3" => Ok(TheoremTag::T53),
        "5.4" => Ok(TheoremTag::T54),
        "5.4r" => Ok(TheoremTag::T54Refined),
        other => Err(format!("{other} is not one of 5.1, 5.3, 5.4, 5.4r")),
    }
}

struct Outcome {
    verdict: Verdict,
    exit: i32,
    analysis: Value,
}

impl Outcome {
    fn pass(analysis: Value) -> Self {
        Outcome {
            verdict: Verdict::Pass,
            exit: 0,
            analysis,
        }
    }

    fn fail(analysis: Value) -> Self {
        Outcome {
            verdict: Verdict::Fail,
            exit: 1,
            analysis,
        }
    }

    fn indeterminate(analysis: Value) -> Self {
        Outcome {
            verdict: Verdict::Indeterminate,
            exit: 2,
            analysis,
        }
    }
}

fn emit_error(kind: &str, message: &str) {
    eprintln!("{}", json!({"error": {"kind": kind, "message": message}}));
}

pub fn run() -> i32 {
    run_from(std::env::args().collect())
}

pub fn run_from(argv: Vec<String>) -> i32 {
    let builder = ReportBuilder::new(argv.iter().skip(1).cloned().collect());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            emit_error("usage", &e.to_string());
            return 3;
        }
    };

    match execute(&cli.cmd) {
        Ok((inputs, tolerances, outcome)) => {
            let exit = outcome.exit;
            let report = builder.finish(inputs, tolerances, outcome.verdict, exit, outcome.analysis);
            let text = render_report(&report);
            print!("{text}");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    emit_error("input", &format!("{}: {e}", path.display()));
                    return 3;
                }
            }
            exit
        }
        Err(message) => {
            emit_error("input", &message);
            3
        }
    }
}

type Executed = (Vec<InputDigest>, Tolerances, Outcome);

fn execute(cmd: &Cmd) -> Result<Executed, String> {
    match cmd {
        Cmd::Check { manifest } => run_check(manifest),
        Cmd::Classify { manifest, csv } => run_classify(manifest, csv.as_deref()),
        Cmd::Nonneg { manifest, route } => run_nonneg(manifest, *route),
        Cmd::Similar { manifest } => run_similar(manifest),
        Cmd::Growth {
            manifest,
            point,
            csv,
        } => run_growth(manifest, *point, csv.as_deref()),
        Cmd::Tau { manifest } => run_tau(manifest),
        Cmd::Perturb {
            manifest,
            theorem,
            b,
            force_gamma_a,
        } => run_perturb(manifest, *theorem, *b, *force_gamma_a),
        Cmd::Verify { manifest, region } => run_verify(manifest, region),
        Cmd::Region {
            region,
            export,
            samples,
        } => run_region(region, export, *samples),
        Cmd::Gen { spec, out_dir } => run_gen(spec, out_dir),
    }
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("analysis serializes")
}

fn run_check(manifest: &Path) -> Result<Executed, String> {
    let raw = load_raw(manifest)?;
    let tols = raw.tolerances;
    let sym = match FundamentalSymmetry::from_matrix(raw.j, &tols) {
        Ok(sym) => sym,
        Err(e) => {
            let outcome = Outcome::fail(json!({
                "violation": format!("J is not a fundamental symmetry: {e}"),
            }));
            return Ok((raw.inputs, tols, outcome));
        }
    };
    let op = KreinOperator::new(raw.a, sym, &tols).map_err(|e| format!("A does not fit J: {e}"))?;
    let v_certified = match raw.v {
        Some(v) => Some(
            op.with_matrix(v, &tols)
                .map_err(|e| format!("V does not fit J: {e}"))?
                .is_certified(),
        ),
        None => None,
    };
    let sig = op.symmetry().signature();
    let certified = op.is_certified() && v_certified.unwrap_or(true);
    let mut analysis = json!({
        "dim": op.dim(),
        "signature": {"plus": sig.plus, "minus": sig.minus},
        "norm": op.norm(),
        "hermitian_residual": op.symmetry().hermitian_residual(),
        "involution_residual": op.symmetry().involution_residual(),
        "selfadjoint_residual": op.selfadjoint_residual(),
        "certified": certified,
    });
    if let Some(vc) = v_certified {
        analysis["perturbation_certified"] = json!(vc);
    }
    let outcome = if certified {
        Outcome::pass(analysis)
    } else {
        analysis["violation"] = json!(format!(
            "self-adjointness residual {:.3e} exceeds the structural tolerance",
            op.selfadjoint_residual()
        ));
        Outcome::fail(analysis)
    };
    Ok((raw.inputs, tols, outcome))
}

fn run_classify(manifest: &Path, csv: Option<&Path>) -> Result<Executed, String> {
    let pair = load_pair(manifest)?;
    let tols = pair.tolerances;
    let decomp = decompose(&pair.operator, &tols).map_err(|e| e.to_string())?;
    let mut points = Vec::new();
    let mut rows = vec!["re,im,type".to_string()];
    for cluster in &decomp.clusters {
        let (sign_value, point_value) = if cluster.is_real {
            let class = classify_real_point(&pair.operator, &decomp, cluster.center, &tols)
                .map_err(|e| e.to_string())?;
            (to_value(&class.sign), to_value(&class))
        } else {
            let sign = json!("non_real");
            let point = json!({
                "sign": sign,
                "point": {"re": cluster.center.re, "im": cluster.center.im},
                "algebraic": cluster.algebraic,
                "geometric": cluster.geometric,
            });
            (sign, point)
        };
        points.push(point_value);
        let sign_name = sign_value.as_str().expect("sign serializes to a string").to_string();
        for e in &cluster.eigenvalues {
            rows.push(format!("{},{},{}", e.re, e.im, sign_name));
        }
    }
    if let Some(path) = csv {
        let mut text = rows.join("\n");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let analysis = json!({
        "points": points,
        "cluster_tol": decomp.cluster_tol,
    });
    Ok((pair.inputs, tols, Outcome::pass(analysis)))
}

fn run_nonneg(manifest: &Path, route: RouteArg) -> Result<Executed, String> {
    let pair = load_pair(manifest)?;
    let tols = pair.tolerances;
    let verdict = match route {
        RouteArg::Kernel => check_nonneg_spectral(&pair.operator, &tols),
        RouteArg::Root => check_nonneg_root(&pair.operator, &tols),
    }
    .map_err(|e| e.to_string())?;
    let mut analysis = to_value(&verdict);
    analysis["agreement"] = to_value(&verdict.agreement());
    let outcome = match verdict.criteria_verdict {
        Verdict::Pass => Outcome::pass(analysis),
        Verdict::Fail => Outcome::fail(analysis),
        Verdict::Indeterminate => Outcome::indeterminate(analysis),
    };
    Ok((pair.inputs, tols, outcome))
}

fn run_similar(manifest: &Path) -> Result<Executed, String> {
    let pair = load_pair(manifest)?;
    let tols = pair.tolerances;
    let outcome = match similarity_transform(&pair.operator, &tols) {
        Ok(result) => Outcome::pass(to_value(&result)),
        Err(
            refusal @ (SimilarityRefusal::NonRealSpectrum { .. }
            | SimilarityRefusal::WrongSignType { .. }
            | SimilarityRefusal::KernelChain { .. }
            | SimilarityRefusal::DegenerateKernelForm { .. }),
        ) => Outcome::fail(json!({"refusal": refusal.to_string()})),
        Err(e) => return Err(e.to_string()),
    };
    Ok((pair.inputs, tols, outcome))
}

fn run_growth(manifest: &Path, point: Option<f64>, csv: Option<&Path>) -> Result<Executed, String> {
    let pair = load_pair(manifest)?;
    let tols = pair.tolerances;
    let decomp = decompose(&pair.operator, &tols).map_err(|e| e.to_string())?;
    let targets: Vec<Complex64> = match point {
        Some(x) => vec![Complex64::new(x, 0.0)],
        None => decomp
            .clusters
            .iter()
            .filter(|c| c.is_real)
            .map(|c| c.center)
            .collect(),
    };
    if csv.is_some() && point.is_none() {
        return Err("--csv exports one profile; pick the point with --point".to_string());
    }
    let mut estimates = Vec::new();
    for target in &targets {
        let est = growth_order_at(&pair.operator, &decomp, *target, &tols)
            .map_err(|e| e.to_string())?;
        estimates.push(est);
    }
    if let Some(path) = csv {
        let mut text = String::from("y,resolvent_norm\n");
        for (y, norm) in &estimates[0].samples {
            text.push_str(&format!("{y},{norm}\n"));
        }
        std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let infinity = growth_at_infinity(&pair.operator);
    let analysis = json!({
        "estimates": to_value(&estimates),
        "infinity": to_value(&infinity),
    });
    Ok((pair.inputs, tols, Outcome::pass(analysis)))
}

fn run_tau(manifest: &Path) -> Result<Executed, String> {
    let pair = load_pair(manifest)?;
    let tols = pair.tolerances;
    let outcome = match compute_tau(&pair.operator, &tols) {
        Ok(tau) => Outcome::pass(to_value(&tau)),
        Err(PerturbError::NotNonnegative { min_eig }) => Outcome::fail(json!({
            "violation": "the operator is not non-negative, so the skew constant is undefined",
            "min_eigenvalue": min_eig,
        })),
        Err(
            refusal @ (PerturbError::GapAtZero { .. } | PerturbError::QuadratureNotConverged { .. }),
        ) => Outcome::indeterminate(json!({"refusal": refusal.to_string()})),
        Err(e) => return Err(e.to_string()),
    };
    Ok((pair.inputs, tols, outcome))
}

fn certificate_outcome(cert: EnclosureCertificate) -> Outcome {
    let analysis = to_value(&cert);
    if !cert.violations.is_empty() || !cert.verified {
        Outcome::fail(analysis)
    } else if cert.verification.indeterminate > 0 {
        Outcome::indeterminate(analysis)
    } else {
        Outcome::pass(analysis)
    }
}

fn run_perturb(
    manifest: &Path,
    theorem: TheoremTag,
    b: f64,
    force_gamma_a: bool,
) -> Result<Executed, String> {
    let pair = load_pair(manifest)?;
    let tols = pair.tolerances;
    let v = pair
        .perturbation
        .as_ref()
        .ok_or("the manifest has no perturbation entry (v), which this analysis needs")?;
    let a = &pair.operator;
    let result = match theorem {
        TheoremTag::T51 => block_diagonal_region(a, v, &tols),
        TheoremTag::T53 => compute_tau(a, &tols).and_then(|tau| capsule_region(a, v, &tau, &tols)),
        TheoremTag::T54 | TheoremTag::T54Refined => {
            let variant = if theorem == TheoremTag::T54 {
                EnvelopeVariant::Plain
            } else {
                EnvelopeVariant::Refined
            };
            compute_tau(a, &tols).and_then(|tau| {
                let bounds = fit_relative_bound(a, v, &tau, &[b], &tols)?;
                let bound = bounds.into_iter().next().ok_or_else(|| {
                    PerturbError::Validation("empty relative-bound grid".to_string())
                })?;
                envelope_region(a, v, &tau, &bound, variant, force_gamma_a, &tols)
            })
        }
    };
    let outcome = match result {
        Ok(cert) => certificate_outcome(cert),
        Err(
            violation @ (PerturbError::NotNonnegative { .. } | PerturbError::NotBlockDiagonal { .. }),
        ) => Outcome::fail(json!({"violation": violation.to_string()})),
        Err(
            refusal @ (PerturbError::GapAtZero { .. }
            | PerturbError::QuadratureNotConverged { .. }
            | PerturbError::RefinedUnavailable { .. }
            | PerturbError::InfeasibleBound { .. }),
        ) => Outcome::indeterminate(json!({"refusal": refusal.to_string()})),
        Err(e) => return Err(e.to_string()),
    };
    Ok((pair.inputs, tols, outcome))
}

fn run_verify(manifest: &Path, region_path: &Path) -> Result<Executed, String> {
    let pair = load_pair(manifest)?;
    let tols = pair.tolerances;
    let (region_text, region_digest) = read_input("region", region_path)?;
    let region: EnclosureRegion = serde_json::from_str(&region_text)
        .map_err(|e| format!("{}: {e}", region_path.display()))?;
    let mut inputs = pair.inputs;
    inputs.push(region_digest);

    let target = match &pair.perturbation {
        Some(v) => {
            let sum = pair.operator.matrix() + v.matrix();
            let combined = pair
                .operator
                .with_matrix(sum, &tols)
                .map_err(|e| format!("A + V: {e}"))?;
            combined
                .require_certified(&tols)
                .map_err(|e| format!("A + V is not J-self-adjoint: {e}"))?;
            combined
        }
        None => pair.operator.clone(),
    };
    let verification = verify_enclosure(&target, &region, &tols).map_err(|e| e.to_string())?;
    let mut analysis = to_value(&verification);
    analysis["region"] = to_value(&region);
    let outcome = if !verification.verified {
        Outcome::fail(analysis)
    } else if verification.indeterminate > 0 {
        Outcome::indeterminate(analysis)
    } else {
        Outcome::pass(analysis)
    };
    Ok((inputs, tols, outcome))
}

fn run_region(region_path: &Path, export: &Path, samples: usize) -> Result<Executed, String> {
    let tols = Tolerances::default().with_env()?;
    let (region_text, region_digest) = read_input("region", region_path)?;
    let region: EnclosureRegion = serde_json::from_str(&region_text)
        .map_err(|e| format!("{}: {e}", region_path.display()))?;
    let csv = region
        .boundary_csv(samples)
        .map_err(|e| format!("boundary export: {e}"))?;
    std::fs::write(export, csv).map_err(|e| format!("{}: {e}", export.display()))?;
    let analysis = json!({
        "region": to_value(&region),
        "export": export.display().to_string(),
        "samples": samples,
    });
    Ok((vec![region_digest], tols, Outcome::pass(analysis)))
}

fn run_gen(spec_path: &Path, out_dir: &Path) -> Result<Executed, String> {
    let tols = Tolerances::default().with_env()?;
    let (spec_text, spec_digest) = read_input("spec", spec_path)?;
    let spec: InstanceSpec =
        serde_json::from_str(&spec_text).map_err(|e| format!("{}: {e}", spec_path.display()))?;
    let instance = generate(&spec, &tols).map_err(|e| e.to_string())?;
    std::fs::create_dir_all(out_dir).map_err(|e| format!("{}: {e}", out_dir.display()))?;

    let write = |name: &str, m: &crate::linalg::CMat| -> Result<(), String> {
        mm::write_matrix(&out_dir.join(name), m).map_err(|e| format!("{name}: {e}"))
    };
    write("j.mtx", instance.operator.symmetry().matrix())?;
    write("a.mtx", instance.operator.matrix())?;
    let mut files = json!({
        "j": "j.mtx",
        "a": "a.mtx",
        "manifest": "manifest.json",
    });
    if let Some(v) = &instance.perturbation {
        write("v.mtx", v)?;
        files["v"] = json!("v.mtx");
    }

    let manifest = crate::report::Manifest {
        j: PathBuf::from("j.mtx"),
        a: PathBuf::from("a.mtx"),
        v: instance.perturbation.as_ref().map(|_| PathBuf::from("v.mtx")),
        tolerances: None,
        output_dir: None,
        instance: Some(spec.clone()),
    };
    let manifest_text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(out_dir.join("manifest.json"), manifest_text + "\n")
        .map_err(|e| format!("manifest.json: {e}"))?;

    let analysis = json!({
        "spec": to_value(&spec),
        "dimension": spec.dimension,
        "out_dir": out_dir.display().to_string(),
        "files": files,
    });
    Ok((vec![spec_digest], tols, Outcome::pass(analysis)))
}

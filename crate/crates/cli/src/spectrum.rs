use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;

use eta235::report::{spectrum_csv, to_json, ComplexRecord, Fixed};
use eta235::rep_oracle::{
    closed_form_schrodinger_spectrum, generic_S, hermitian_eigenvalues, max_pairing_error,
    nearest_relative_errors, scalar_S, schrodinger_S, split_spectrum, GenericRepParams,
    GradedMetric, SchrodingerParams, TruncationConfig,
};

use crate::output::emit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RepKind {
    Scalar,
    Schroedinger,
    Generic,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    rep: RepKind,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    hbar: Option<f64>,
    /// Orientation sign 𝔬(X₃) for the Schrödinger representation.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    orientation: i8,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    g33: f64,
    #[arg(long, default_value_t = 1.0)]
    g44: f64,
    #[arg(long, default_value_t = 1.0)]
    g55: f64,
    /// Hermite modes per component; the matrix has size 3N.
    #[arg(long, value_parser = clap::value_parser!(u64).range(8..=2048))]
    basis_size: Option<u64>,
    /// Size of the trusted window, at most N/8 (default N/8).
    #[arg(long)]
    trusted_count: Option<usize>,
    /// CSV destination (standard output if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON diagnostics destination; defaults to `<out>.sidecar.json` when
    /// --out is given.
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Serialize)]
struct ClosedFormComparison {
    /// Closed-form value nearest to each trusted eigenvalue.
    nearest: Vec<Fixed>,
    relative_errors: Vec<Fixed>,
    max_relative_error: Fixed,
}

#[derive(Serialize)]
struct Sidecar {
    rep: &'static str,
    dimension: usize,
    basis_size: Option<usize>,
    g33: Fixed,
    g44: Fixed,
    g55: Fixed,
    kernel_eps: Option<Fixed>,
    kernel_count: Option<usize>,
    trusted: Vec<Fixed>,
    closed_form: Option<ClosedFormComparison>,
    /// Largest relative distance from a trusted λ to the nearest -λ.
    pairing_error: Option<Fixed>,
    trace: Option<Fixed>,
    determinant: Option<ComplexRecord>,
}

fn forbid(name: &str, value: Option<f64>, rep: RepKind) -> Result<()> {
    if value.is_some() {
        bail!("--{name} does not apply to --rep {rep:?}");
    }
    Ok(())
}

fn need(name: &str, value: Option<f64>) -> Result<f64> {
    value.ok_or_else(|| anyhow!("--{name} is required"))
}

fn fixed(xs: &[f64]) -> Vec<Fixed> {
    xs.iter().copied().map(Fixed).collect()
}

pub fn run_spectrum(args: SpectrumArgs) -> Result<()> {
    let g = GradedMetric::new(args.g33, args.g44, args.g55)?;
    let rep = args.rep;
    let (alpha_ok, hbar_ok, generic_ok) = match rep {
        RepKind::Scalar => (true, false, false),
        RepKind::Schroedinger => (false, true, false),
        RepKind::Generic => (false, false, true),
    };
    for (name, v, ok) in [
        ("alpha", args.alpha, alpha_ok),
        ("beta", args.beta, alpha_ok),
        ("hbar", args.hbar, hbar_ok),
        ("lambda", args.lambda, generic_ok),
        ("mu", args.mu, generic_ok),
        ("nu", args.nu, generic_ok),
    ] {
        if !ok {
            forbid(name, v, rep)?;
        }
    }
    let base = Sidecar {
        rep: match rep {
            RepKind::Scalar => "scalar",
            RepKind::Schroedinger => "schroedinger",
            RepKind::Generic => "generic",
        },
        dimension: 3,
        basis_size: None,
        g33: Fixed(g.g33),
        g44: Fixed(g.g44),
        g55: Fixed(g.g55),
        kernel_eps: None,
        kernel_count: None,
        trusted: Vec::new(),
        closed_form: None,
        pairing_error: None,
        trace: None,
        determinant: None,
    };

    let (eigenvalues, sidecar) = if rep == RepKind::Scalar {
        if args.basis_size.is_some() || args.trusted_count.is_some() {
            bail!("scalar representations are 3-dimensional; --basis-size does not apply");
        }
        let m = scalar_S(need("alpha", args.alpha)?, need("beta", args.beta)?, &g)?;
        let ev = hermitian_eigenvalues(&m)?;
        let sidecar = Sidecar {
            trace: Some(Fixed(m.trace())),
            determinant: Some(m.determinant().into()),
            pairing_error: Some(Fixed(if ev[2] == 0.0 { 0.0 } else { max_pairing_error(&ev[2..], &ev) })),
            ..base
        };
        (ev, sidecar)
    } else {
        let n = args
            .basis_size
            .ok_or_else(|| anyhow!("--basis-size is required for --rep {rep:?}"))? as usize;
        let (m, default_cfg, closed) = if rep == RepKind::Schroedinger {
            let p = SchrodingerParams::new(need("hbar", args.hbar)?, args.orientation)?;
            let closed = if g.bg_proportional() {
                Some(closed_form_schrodinger_spectrum(&p, &g, n)?)
            } else {
                None
            };
            (schrodinger_S(&p, &g, n)?, TruncationConfig::for_schrodinger(&p, &g, n)?, closed)
        } else {
            if args.orientation != 1 {
                bail!("--orientation only applies to --rep schroedinger");
            }
            let p = GenericRepParams::new(need("lambda", args.lambda)?, need("mu", args.mu)?, need("nu", args.nu)?)?;
            (generic_S(&p, &g, n)?, TruncationConfig::for_generic(&p, &g, n)?, None)
        };
        let cfg = match args.trusted_count {
            Some(t) => TruncationConfig::new(n, default_cfg.kernel_eps, t)?,
            None => default_cfg,
        };
        let sp = split_spectrum(hermitian_eigenvalues(&m)?, &cfg);
        let closed_form = closed.map(|reference| {
            let errors = nearest_relative_errors(&sp.trusted, &reference);
            let nearest = sp
                .trusted
                .iter()
                .map(|&x| {
                    reference
                        .iter()
                        .copied()
                        .min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))
                        .unwrap_or(f64::NAN)
                })
                .collect::<Vec<_>>();
            ClosedFormComparison {
                nearest: fixed(&nearest),
                max_relative_error: Fixed(errors.iter().copied().fold(0.0, f64::max)),
                relative_errors: fixed(&errors),
            }
        });
        let pairing = (rep == RepKind::Generic && g.bg_proportional())
            .then(|| Fixed(max_pairing_error(&sp.trusted, &sp.eigenvalues)));
        let sidecar = Sidecar {
            dimension: m.dim(),
            basis_size: Some(n),
            kernel_eps: Some(Fixed(cfg.kernel_eps)),
            kernel_count: Some(sp.kernel_count),
            trusted: fixed(&sp.trusted),
            closed_form,
            pairing_error: pairing,
            ..base
        };
        (sp.eigenvalues, sidecar)
    };

    let csv = spectrum_csv(&eigenvalues);
    let json = to_json(&sidecar);
    let sidecar_path = args.sidecar.clone().or_else(|| {
        args.out.as_ref().map(|p| {
            let mut name = p.as_os_str().to_owned();
            name.push(".sidecar.json");
            PathBuf::from(name)
        })
    });
    emit(args.out.as_deref(), &csv)?;
    if let Some(path) = sidecar_path {
        emit(Some(&path), &json)?;
    }
    Ok(())
}

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use eta235::nilmanifold::{
    classify_case, eta_nil, eta_nil_neg_even_routes, sign_prediction, CaseTag, LatticeCharacterData,
};
use eta235::report::{to_json, EtaRecord, Fixed};
use eta235::specfun::{eta_hurw, im_polylog_even, polylog_unit_circle, FractionalShift};
use eta235::tilde_eta::tilde_eta;

use crate::output::emit;
use crate::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
pub enum FnKind {
    /// η_S of the nilmanifold given by --r, --c, --gamma-norm.
    #[serde(rename = "nil")]
    Nil,
    /// η̃(s, a).
    #[serde(rename = "tilde")]
    Tilde,
    /// η_Hurw(s, a).
    #[serde(rename = "hurw-eta")]
    HurwEta,
    /// (Li_s(e^{2πia}) - Li_s(e^{-2πia}))/2i, or Im Li_{2l+2}(e^{2πia}) with --l.
    #[serde(rename = "polylog-im")]
    PolylogIm,
}

/// Lattice and character options shared by `eval --fn nil` and
/// `special-values`.
#[derive(Args, Clone, Debug, Default)]
pub struct LatticeArgs {
    /// Order of the finite cyclic group.
    #[arg(long)]
    pub r: Option<u64>,
    /// Character exponent, χ(γ) = e^{2πic/r}.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<i64>,
    /// g(γ, γ).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_norm: Option<f64>,
    /// The character is nontrivial on the center (η_S ≡ 0).
    #[arg(long)]
    pub center_nontrivial: bool,
    /// The character is trivial on the commutator (η_S ≡ 0).
    #[arg(long)]
    pub commutator_trivial: bool,
}

impl LatticeArgs {
    fn data(&self) -> Result<LatticeCharacterData> {
        let r = self.r.ok_or_else(|| anyhow!("--r is required"))?;
        let c = self.c.ok_or_else(|| anyhow!("--c is required"))?;
        let g = self.gamma_norm.ok_or_else(|| anyhow!("--gamma-norm is required"))?;
        let case = classify_case(!self.center_nontrivial, self.commutator_trivial, c, r)?;
        Ok(LatticeCharacterData::new(r, c, g, case)?)
    }

    fn is_empty(&self) -> bool {
        self.r.is_none()
            && self.c.is_none()
            && self.gamma_norm.is_none()
            && !self.center_nontrivial
            && !self.commutator_trivial
    }
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum, required_unless_present = "job_file")]
    function: Option<FnKind>,
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Shift parameter for tilde, hurw-eta and polylog-im.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Order index for polylog-im: evaluates Im Li_{2l+2}.
    #[arg(long)]
    l: Option<u32>,
    /// Evaluation point `RE` or `RE,IM`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "s_list")]
    s: Option<String>,
    /// Comma-separated points, each `RE` or `RE:IM`.
    #[arg(long, allow_hyphen_values = true)]
    s_list: Option<String>,
    /// JSON array of evaluation requests; replaces the single-request flags.
    #[arg(long, conflicts_with_all = ["function", "s", "s_list", "a", "l"])]
    job_file: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    jobs: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A point as written in a job file: `2.5`, `[2.5, 1.0]` or `"2.5,1.0"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum PointSpec {
    Real(f64),
    Pair([f64; 2]),
    Text(String),
}

impl PointSpec {
    fn point(&self) -> Result<Complex64> {
        match self {
            PointSpec::Real(x) => Ok(Complex64::new(*x, 0.0)),
            PointSpec::Pair([x, y]) => Ok(Complex64::new(*x, *y)),
            PointSpec::Text(t) => parse_point(t, ','),
        }
    }
}

/// One entry of a job file. Field names follow the command-line flags.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvalRequest {
    #[serde(default)]
    command: Option<String>,
    #[serde(rename = "fn")]
    function: FnKind,
    #[serde(default)]
    r: Option<u64>,
    #[serde(default)]
    c: Option<i64>,
    #[serde(default)]
    gamma_norm: Option<f64>,
    #[serde(default)]
    center_nontrivial: bool,
    #[serde(default)]
    commutator_trivial: bool,
    #[serde(default)]
    a: Option<f64>,
    #[serde(default)]
    l: Option<u32>,
    #[serde(default)]
    s: Option<PointSpec>,
    #[serde(default)]
    s_list: Option<Vec<PointSpec>>,
}

/// What to evaluate, after validation.
#[derive(Debug, Clone, Copy)]
enum Target {
    Nil(LatticeCharacterData),
    Tilde(f64),
    Hurw(f64),
    PolylogIm { a: f64, l: Option<u32> },
}

#[derive(Debug, Clone)]
struct Job {
    target: Target,
    points: Vec<Complex64>,
}

fn parse_number(text: &str) -> Result<f64> {
    let x: f64 = text
        .trim()
        .parse()
        .with_context(|| format!("`{text}` is not a number"))?;
    if !x.is_finite() {
        bail!("`{text}` is not finite");
    }
    Ok(x)
}

/// `RE` or `RE<sep>IM`.
fn parse_point(text: &str, sep: char) -> Result<Complex64> {
    let mut parts = text.split(sep);
    let re = parse_number(parts.next().unwrap_or(""))?;
    let im = match parts.next() {
        Some(p) => parse_number(p)?,
        None => 0.0,
    };
    if parts.next().is_some() {
        bail!("`{text}` has more than two components");
    }
    Ok(Complex64::new(re, im))
}

fn parse_list(text: &str) -> Result<Vec<Complex64>> {
    let points = text
        .split(',')
        .map(|item| parse_point(item, ':'))
        .collect::<Result<Vec<_>>>()?;
    if points.is_empty() {
        bail!("--s-list is empty");
    }
    Ok(points)
}

fn require_shift(function: FnKind, a: Option<f64>) -> Result<f64> {
    let a = a.ok_or_else(|| anyhow!("--a is required for {function:?}"))?;
    if !a.is_finite() {
        bail!("--a must be finite");
    }
    Ok(a)
}

fn build_job(
    function: FnKind,
    lattice: &LatticeArgs,
    a: Option<f64>,
    l: Option<u32>,
    points: Option<Vec<Complex64>>,
) -> Result<Job> {
    if function != FnKind::Nil && !lattice.is_empty() {
        bail!("lattice options only apply to --fn nil");
    }
    if function != FnKind::PolylogIm && l.is_some() {
        bail!("--l only applies to --fn polylog-im");
    }
    let target = match function {
        FnKind::Nil => {
            if a.is_some() {
                bail!("--a does not apply to --fn nil; the shift is c/r");
            }
            Target::Nil(lattice.data()?)
        }
        FnKind::Tilde => Target::Tilde(require_shift(function, a)?),
        FnKind::HurwEta => {
            let a = require_shift(function, a)?;
            FractionalShift::new(a)?;
            Target::Hurw(a)
        }
        FnKind::PolylogIm => {
            let a = require_shift(function, a)?;
            FractionalShift::new(a)?;
            Target::PolylogIm { a, l }
        }
    };
    let points = match (target, points) {
        (Target::PolylogIm { l: Some(l), .. }, None) => vec![Complex64::new((2 * l + 2) as f64, 0.0)],
        (Target::PolylogIm { l: Some(_), .. }, Some(_)) => {
            bail!("--l fixes the order; do not pass --s or --s-list")
        }
        (_, Some(p)) => p,
        (_, None) => bail!("one of --s or --s-list is required"),
    };
    Ok(Job { target, points })
}

fn job_from_request(req: &EvalRequest) -> Result<Job> {
    if let Some(cmd) = &req.command {
        if cmd != "eval" {
            bail!("job files only hold eval requests, found `{cmd}`");
        }
    }
    let lattice = LatticeArgs {
        r: req.r,
        c: req.c,
        gamma_norm: req.gamma_norm,
        center_nontrivial: req.center_nontrivial,
        commutator_trivial: req.commutator_trivial,
    };
    let points = match (&req.s, &req.s_list) {
        (Some(_), Some(_)) => bail!("give either s or s_list, not both"),
        (Some(p), None) => Some(vec![p.point()?]),
        (None, Some(list)) => Some(list.iter().map(PointSpec::point).collect::<Result<Vec<_>>>()?),
        (None, None) => None,
    };
    build_job(req.function, &lattice, req.a, req.l, points)
}

fn evaluate(target: Target, s: Complex64) -> eta235::Result<EtaRecord> {
    Ok(match target {
        Target::Nil(d) => EtaRecord::from(&eta_nil(s, &d)?),
        Target::Tilde(a) => EtaRecord::from(&tilde_eta(s, a)?),
        Target::Hurw(a) => EtaRecord::regular(s, eta_hurw(s, a)?),
        Target::PolylogIm { a, l: Some(l) } => {
            EtaRecord::regular(s, Complex64::new(im_polylog_even(l, a)?, 0.0))
        }
        Target::PolylogIm { a, l: None } => {
            let diff = polylog_unit_circle(s, a)? - polylog_unit_circle(s, -a)?;
            EtaRecord::regular(s, diff / Complex64::new(0.0, 2.0))
        }
    })
}

/// Evaluate every point of every job on `threads` workers; the result keeps
/// the input order.
fn evaluate_all(jobs: &[Job], threads: usize) -> Result<Vec<Vec<EtaRecord>>> {
    let tasks: Vec<(usize, Target, Complex64)> = jobs
        .iter()
        .enumerate()
        .flat_map(|(i, j)| j.points.iter().map(move |&s| (i, j.target, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    let records: Vec<(usize, EtaRecord)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(i, t, s)| evaluate(t, s).map(|r| (i, r)))
            .collect::<eta235::Result<Vec<_>>>()
    })?;
    let mut grouped = vec![Vec::new(); jobs.len()];
    for (i, r) in records {
        grouped[i].push(r);
    }
    Ok(grouped)
}

fn csv_cell(x: Option<Fixed>) -> String {
    match x {
        Some(Fixed(v)) if v.is_finite() => eta235::report::format_number(v),
        _ => String::new(),
    }
}

fn csv_row(prefix: Option<usize>, r: &EtaRecord) -> String {
    let (vre, vim) = match r.value {
        Some(v) => (csv_cell(Some(v.re)), csv_cell(Some(v.im))),
        None => (String::new(), String::new()),
    };
    let cells = [
        csv_cell(Some(r.s.re)),
        csv_cell(Some(r.s.im)),
        vre,
        vim,
        r.is_pole.to_string(),
        csv_cell(Some(r.residue)),
        csv_cell(r.tail_bound),
    ];
    match prefix {
        Some(i) => format!("{i},{}\n", cells.join(",")),
        None => format!("{}\n", cells.join(",")),
    }
}

const CSV_HEADER: &str = "s_re,s_im,value_re,value_im,is_pole,residue,tail_bound";

pub fn run_eval(args: EvalArgs) -> Result<()> {
    let (jobs, from_file) = match &args.job_file {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let requests: Vec<EvalRequest> =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            if !args.lattice.is_empty() {
                bail!("lattice options cannot be combined with --job-file");
            }
            let jobs = requests
                .iter()
                .enumerate()
                .map(|(i, r)| job_from_request(r).with_context(|| format!("request {i}")))
                .collect::<Result<Vec<_>>>()?;
            (jobs, true)
        }
        None => {
            let points = match (&args.s, &args.s_list) {
                (Some(s), _) => Some(vec![parse_point(s, ',')?]),
                (None, Some(list)) => Some(parse_list(list)?),
                (None, None) => None,
            };
            let function = args.function.expect("clap enforces --fn");
            (vec![build_job(function, &args.lattice, args.a, args.l, points)?], false)
        }
    };

    let grouped = evaluate_all(&jobs, args.jobs as usize)?;
    let text = match (args.format, from_file) {
        (Format::Json, true) => to_json(&grouped),
        (Format::Json, false) => to_json(&grouped[0]),
        (Format::Csv, true) => {
            let mut out = format!("request,{CSV_HEADER}\n");
            for (i, recs) in grouped.iter().enumerate() {
                for r in recs {
                    out.push_str(&csv_row(Some(i), r));
                }
            }
            out
        }
        (Format::Csv, false) => {
            let mut out = format!("{CSV_HEADER}\n");
            for r in &grouped[0] {
                out.push_str(&csv_row(None, r));
            }
            out
        }
    };
    emit(args.out.as_deref(), &text)
}

#[derive(Args, Debug)]
pub struct SpecialArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Largest l for the values at s = -2l; also sets the odd points up to -(2 l_max + 1).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=30))]
    l_max: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct NegativeEven {
    l: u32,
    record: EtaRecord,
    /// Closed form and residue·derivative route, generic case only.
    closed_form: Option<Fixed>,
    residue_route: Option<Fixed>,
    sign_prediction: Option<i8>,
    sign_matches: Option<bool>,
}

#[derive(Serialize)]
struct SpecialReport {
    r: u64,
    c: i64,
    gamma_norm: Fixed,
    case: &'static str,
    vanishing: Vec<EtaRecord>,
    max_deviation: Fixed,
    negative_even: Vec<NegativeEven>,
}

fn case_name(tag: CaseTag) -> &'static str {
    match tag {
        CaseTag::CenterNontrivial => "CenterNontrivial",
        CaseTag::CommutatorTrivial => "CommutatorTrivial",
        CaseTag::Generic => "Generic",
    }
}

pub fn run_special(args: SpecialArgs) -> Result<()> {
    let d = args.lattice.data()?;
    let zero = eta_nil(Complex64::new(0.0, 0.0), &d)?;
    let mut max_dev = zero.value.norm();
    let mut vanishing = vec![EtaRecord::from(&zero)];
    for k in 0..=args.l_max {
        let s = Complex64::new(-((2 * k + 1) as f64), 0.0);
        let e = eta_nil(s, &d)?;
        max_dev = max_dev.max(e.value.norm());
        vanishing.push(EtaRecord::from(&e));
    }

    let mut negative_even = Vec::new();
    for l in 1..=args.l_max {
        let s = Complex64::new(-2.0 * l as f64, 0.0);
        let e = eta_nil(s, &d)?;
        let generic = d.case_tag == CaseTag::Generic;
        let (closed, route, predicted) = if generic {
            let (a, b) = eta_nil_neg_even_routes(l, &d)?;
            (Some(Fixed(a)), Some(Fixed(b)), Some(sign_prediction(l, &d)?))
        } else {
            (None, None, None)
        };
        negative_even.push(NegativeEven {
            l,
            record: EtaRecord::from(&e),
            closed_form: closed,
            residue_route: route,
            sign_prediction: predicted,
            sign_matches: predicted.map(|p| {
                let v = e.value.re;
                let sign = if v > 0.0 { 1 } else if v < 0.0 { -1 } else { 0 };
                sign == p
            }),
        });
    }
    let report = SpecialReport {
        r: d.r,
        c: d.c,
        gamma_norm: Fixed(d.gamma_norm),
        case: case_name(d.case_tag),
        vanishing,
        max_deviation: Fixed(max_dev),
        negative_even,
    };
    emit(args.out.as_deref(), &to_json(&report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points() {
        assert_eq!(parse_point("2.5", ',').unwrap(), Complex64::new(2.5, 0.0));
        assert_eq!(parse_point("-1,3", ',').unwrap(), Complex64::new(-1.0, 3.0));
        assert!(parse_point("1,2,3", ',').is_err());
        assert!(parse_point("nan", ',').is_err());
        assert_eq!(parse_list("0,-1:2").unwrap(), vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 2.0)]);
    }

    #[test]
    fn request_validation() {
        let bad: Vec<EvalRequest> = serde_json::from_str(r#"[{"fn": "tilde", "s": 1.0}]"#).unwrap();
        assert!(job_from_request(&bad[0]).is_err());
        let good: Vec<EvalRequest> =
            serde_json::from_str(r#"[{"fn": "nil", "r": 4, "c": 1, "gamma_norm": 1.0, "s_list": [0, [6, 1], "2,0"]}]"#).unwrap();
        let job = job_from_request(&good[0]).unwrap();
        assert_eq!(job.points.len(), 3);
        assert!(serde_json::from_str::<Vec<EvalRequest>>(r#"[{"fn": "nil", "bogus": 1}]"#).is_err());
    }
}

use crate::output::Record;
use hypratio::representation::{
    build_representation, product_r111_r001, product_stieltjes2, ratio_direct, Representation,
    Strategy,
};
use hypratio::theory::{
    boundary_imag, coefficient_B, derive_indices, select_mn, AsymptoticProfile,
};
use hypratio::zeros::{
    argument_principle_count, locate_zeros, pole_free_condition, residue_at_pole,
    residue_by_contour, runckel_count,
};
use hypratio::{Bank, CutPlanePoint, Error, Params, Precision, QuadratureConfig, Shift, ZeroKind};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Boundary,
    Repr,
    Zeros,
    Products,
    All,
}

/// A failure carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind: "usage".into(),
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_parameter_error() { 2 } else { 3 },
            kind: e.kind().into(),
            message: e.to_string(),
        }
    }
}

pub struct Job {
    pub params: Option<Params>,
    pub shift: Shift,
    pub points: Vec<CutPlanePoint>,
    pub strategy: Strategy,
    pub suite: Suite,
    pub quad: QuadratureConfig,
    pub prec: Precision,
}

/// Records plus whether a verification check failed.
pub struct Report {
    pub records: Vec<Record>,
    pub failed: bool,
}

impl Report {
    fn ok(records: Vec<Record>) -> Self {
        Report {
            records,
            failed: false,
        }
    }
}

impl Job {
    fn params(&self) -> Result<Params, Failure> {
        self.params
            .ok_or_else(|| Failure::usage("--a, --b and --c are required"))
    }

    fn points(&self) -> Result<&[CutPlanePoint], Failure> {
        if self.points.is_empty() {
            return Err(Failure::usage(
                "at least one point is required (--z or --grid)",
            ));
        }
        Ok(&self.points)
    }

    /// Adds precision metadata to every record that lacks it.
    pub fn stamp(&self, mut report: Report) -> Report {
        report.records = report
            .records
            .into_iter()
            .map(|r| {
                if r.get("tol").is_some() {
                    r
                } else {
                    self.meta(r)
                }
            })
            .collect();
        report
    }

    fn meta(&self, r: Record) -> Record {
        r.float("tol", self.quad.abs_tol)
            .int("max_levels", self.quad.max_levels as i64)
            .int("digits", self.prec.working_digits as i64)
    }

    fn shift_fields(&self, r: Record) -> Record {
        r.int("n1", self.shift.n1 as i64)
            .int("n2", self.shift.n2 as i64)
            .int("m", self.shift.m as i64)
    }
}

fn bank_name(pt: &CutPlanePoint) -> &'static str {
    match pt.bank() {
        Some(Bank::Upper) => "upper",
        Some(Bank::Lower) => "lower",
        None => "none",
    }
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Auto => "auto",
        Strategy::PoleFree => "pole-free",
        Strategy::QCorrection => "q",
        Strategy::TMultiplier => "t",
    }
}

/// Evaluates `f` at every point, fanning out over threads; results keep input order.
fn par_map<T, F>(points: &[CutPlanePoint], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&CutPlanePoint) -> T + Sync,
{
    let threads = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(points.len().max(1));
    let chunk = points.len().div_ceil(threads.max(1)).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<T>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn representation_record(job: &Job, rep: &Representation) -> Record {
    let r = Record::new("representation").str("strategy", strategy_name(rep.strategy));
    job.shift_fields(r)
        .int("M", rep.m as i64)
        .int("N", rep.n as i64)
        .int("d", rep.d as i64)
        .float("Q_constant", rep.q.constant)
        .int(
            "Q_poles",
            (rep.q.real.len() + 2 * rep.q.complex.len()) as i64,
        )
        .float("exp_at_zero", rep.exp_at_zero)
        .float("exp_at_one", rep.exp_at_one)
        .bool("log_endpoint", rep.log_endpoint)
}

fn value_records(job: &Job, rep: &Representation) -> Result<Vec<Record>, Failure> {
    let params = rep.params;
    let rows = par_map(job.points()?, |pt| -> Result<Record, Failure> {
        let v = rep.eval(pt, &job.quad, &job.prec)?;
        let oracle = ratio_direct(&params, job.shift, pt, &job.prec)?;
        let r = Record::new("value")
            .float("z_re", pt.z().re)
            .float("z_im", pt.z().im)
            .float("R_re", v.re)
            .float("R_im", v.im)
            .float("abs_err_vs_oracle", (v - oracle).norm())
            .str("bank", bank_name(pt));
        Ok(job.meta(r))
    });
    rows.into_iter().collect()
}

pub fn eval(job: &Job) -> Result<Report, Failure> {
    let params = job.params()?;
    job.points()?;
    let rep = build_representation(&params, job.shift, job.strategy, &job.prec)?;
    let mut records = vec![representation_record(job, &rep)];
    records.extend(value_records(job, &rep)?);
    Ok(Report::ok(records))
}

pub fn indices(job: &Job) -> Result<Report, Failure> {
    let idx = derive_indices(job.shift);
    let mut r = job
        .shift_fields(Record::new("indices"))
        .int("n_low", idx.n_low as i64)
        .int("n_high", idx.n_high as i64)
        .int("p", idx.p as i64)
        .int("l", idx.l as i64)
        .int("r", idx.r as i64);
    if let Some(params) = job.params {
        let prof = AsymptoticProfile::new(&params, job.shift)?;
        let (m, n) = select_mn(&params, job.shift)?;
        r = r
            .float("B", coefficient_B(&params, job.shift))
            .float("delta_eta", prof.delta_eta())
            .float("delta_zeta", prof.delta_zeta())
            .int("M", m as i64)
            .int("N", n as i64);
    }
    Ok(Report::ok(vec![r]))
}

fn condition_name(params: &Params) -> String {
    pole_free_condition(params).map_or("none".into(), |c| format!("{c:?}"))
}

pub fn zeros(job: &Job) -> Result<Report, Failure> {
    let params = job.params()?;
    let (nu, degenerate) = runckel_count(&params)?;
    let report = locate_zeros(&params, &job.prec)?;
    let mut records = vec![job.meta(
        Record::new("zeros")
            .int("nu", nu as i64)
            .bool("degenerate", degenerate)
            .str("condition", condition_name(&params))
            .int("located", report.multiplicity_total() as i64),
    )];
    for z in &report.zeros {
        let beta = z.location;
        let kind = match z.kind {
            ZeroKind::Real => "real",
            ZeroKind::ComplexPair => "complex_pair",
        };
        let mut r = Record::new("zero").complex("z", beta).str("kind", kind);
        if !job.shift.is_identity() {
            let res = residue_at_pole(&params, job.shift, beta, &job.prec)?;
            let radius = 1e-3 * beta.norm().max(1e-2);
            let by_contour = residue_by_contour(&params, job.shift, beta, radius, 256, &job.prec)?;
            r = job
                .shift_fields(r)
                .complex("residue", res)
                .float("residue_contour_gap", (res - by_contour).norm());
        }
        records.push(job.meta(r));
    }
    Ok(Report::ok(records))
}

pub fn represent(job: &Job) -> Result<Report, Failure> {
    let params = job.params()?;
    job.points()?;
    let rep = build_representation(&params, job.shift, job.strategy, &job.prec)?;
    let mut records = vec![representation_record(job, &rep)];
    for &(beta, a) in &rep.q.real {
        records.push(
            Record::new("pole")
                .float("beta_re", beta)
                .float("beta_im", 0.0)
                .float("A_re", a)
                .float("A_im", 0.0),
        );
    }
    for &(beta, a) in &rep.q.complex {
        records.push(Record::new("pole").complex("beta", beta).complex("A", a));
        records.push(
            Record::new("pole")
                .complex("beta", beta.conj())
                .complex("A", a.conj()),
        );
    }
    let series: [(&str, &[f64]); 3] = [
        ("T", rep.t.coeffs()),
        ("taylor", &rep.taylor),
        ("weight", rep.weight.poly.coeffs()),
    ];
    for (name, coeffs) in series {
        for (k, &c) in coeffs.iter().enumerate() {
            records.push(
                Record::new("coefficient")
                    .str("series", name)
                    .int("index", k as i64)
                    .float("value", c),
            );
        }
    }
    records.push(
        Record::new("weight_exponents")
            .float("exp_x", rep.weight.exp_x)
            .float("exp_x_minus_1", rep.weight.exp_x_minus_1),
    );
    records.extend(value_records(job, &rep)?);
    Ok(Report::ok(records))
}

pub fn boundary(job: &Job) -> Result<Report, Failure> {
    let params = job.params()?;
    let mut records = Vec::new();
    for pt in job.points()? {
        let z = pt.z();
        if z.re <= 1.0 {
            return Err(Failure::usage(format!(
                "boundary points need Re z > 1, got {z}"
            )));
        }
        let bank = pt
            .bank()
            .unwrap_or(if z.im < 0.0 { Bank::Lower } else { Bank::Upper });
        let closed = boundary_imag(&params, job.shift, z.re, bank, &job.prec)?;
        let direct = ratio_direct(
            &params,
            job.shift,
            &CutPlanePoint::on_cut(z.re, bank)?,
            &job.prec,
        )?
        .im;
        let r = Record::new("boundary")
            .float("x", z.re)
            .str(
                "bank",
                if bank == Bank::Upper {
                    "upper"
                } else {
                    "lower"
                },
            )
            .float("im_closed_form", closed)
            .float("im_direct", direct)
            .float("abs_err", (closed - direct).abs());
        records.push(job.meta(job.shift_fields(r)));
    }
    Ok(Report::ok(records))
}

pub fn product(job: &Job) -> Result<Report, Failure> {
    let params = job.params()?;
    let mut records = Vec::new();
    for pt in job.points()? {
        let z = pt.z();
        let r = |s: Shift| ratio_direct(&params, s, pt, &job.prec);
        let p1 = product_r111_r001(&params, pt, &job.quad, &job.prec)?;
        let o1 = z * r(Shift::new(1, 1, 1))? * r(Shift::new(0, 0, 1))?;
        let p2 = product_stieltjes2(&params, pt, &job.quad, &job.prec)?;
        let o2 = r(Shift::new(0, 0, -1))? * r(Shift::new(0, 0, 1))?;
        let rec = Record::new("product")
            .complex("z", z)
            .complex("zR111R001", p1)
            .float("zR111R001_abs_err", (p1 - o1).norm())
            .complex("R00m1R001", p2)
            .float("R00m1R001_abs_err", (p2 - o2).norm());
        records.push(job.meta(rec));
    }
    Ok(Report::ok(records))
}

fn check(suite: &str, max_dev: f64, tol: f64, samples: usize) -> Record {
    Record::new("check")
        .str("suite", suite)
        .int("samples", samples as i64)
        .float("max_deviation", max_dev)
        .float("threshold", tol)
        .bool("pass", max_dev <= tol)
}

fn verification_points() -> Vec<CutPlanePoint> {
    let mut pts: Vec<CutPlanePoint> = [
        (-5.0, 0.0),
        (-0.7, 0.0),
        (0.3, 0.0),
        (0.9, 0.0),
        (0.5, 0.5),
        (-2.0, 3.0),
        (2.0, 1.0),
        (4.0, -0.5),
        (0.2, -0.9),
        (10.0, 10.0),
    ]
    .iter()
    .map(|&(x, y)| CutPlanePoint::new(Complex64::new(x, y)).expect("off the cut"))
    .collect();
    for (x, bank) in [(1.5, Bank::Upper), (3.0, Bank::Lower)] {
        pts.push(CutPlanePoint::on_cut(x, bank).expect("on the cut"));
    }
    pts
}

fn verify_boundary(job: &Job, params: &Params) -> Result<Record, Failure> {
    let xs = [1.1, 1.5, 2.0, 4.0, 10.0, 100.0];
    let mut worst = 0.0f64;
    for x in xs {
        for bank in [Bank::Upper, Bank::Lower] {
            let closed = boundary_imag(params, job.shift, x, bank, &job.prec)?;
            let direct = ratio_direct(
                params,
                job.shift,
                &CutPlanePoint::on_cut(x, bank)?,
                &job.prec,
            )?
            .im;
            worst = worst.max((closed - direct).abs() / (1.0 + direct.abs()));
        }
    }
    Ok(check("boundary", worst, 1e-8, 2 * xs.len()))
}

fn verify_repr(job: &Job, params: &Params) -> Result<Record, Failure> {
    let rep = build_representation(params, job.shift, job.strategy, &job.prec)?;
    let pts = verification_points();
    let mut worst = 0.0f64;
    let mut used = 0;
    for pt in &pts {
        let Ok(want) = ratio_direct(params, job.shift, pt, &job.prec) else {
            continue;
        };
        let got = rep.eval(pt, &job.quad, &job.prec)?;
        worst = worst.max((got - want).norm() / want.norm().max(1.0));
        used += 1;
    }
    let tol = if rep.log_endpoint { 1e-6 } else { 1e-8 };
    Ok(check("repr", worst, tol, used).str("strategy", strategy_name(rep.strategy)))
}

fn verify_zeros(job: &Job, params: &Params) -> Result<Record, Failure> {
    let (nu, _) = runckel_count(params)?;
    let counted = argument_principle_count(params, 4f64.powi(10), &job.prec)?;
    let located = locate_zeros(params, &job.prec)?.multiplicity_total();
    let gap = (nu as f64 - counted as f64)
        .abs()
        .max((nu as f64 - located as f64).abs());
    Ok(check("zeros", gap, 0.0, 1)
        .int("nu", nu as i64)
        .int("argument_principle", counted as i64)
        .int("located", located as i64))
}

fn verify_products(job: &Job, params: &Params) -> Result<Record, Failure> {
    if pole_free_condition(params).is_none() {
        return Ok(Record::new("check")
            .str("suite", "products")
            .str("status", "skipped: parameters have poles"));
    }
    let mut worst = 0.0f64;
    let pts: Vec<CutPlanePoint> = verification_points()
        .into_iter()
        .filter(|p| !p.is_on_cut())
        .collect();
    for pt in &pts {
        let z = pt.z();
        let r = |s: Shift| ratio_direct(params, s, pt, &job.prec);
        let p1 = product_r111_r001(params, pt, &job.quad, &job.prec)?;
        let o1 = z * r(Shift::new(1, 1, 1))? * r(Shift::new(0, 0, 1))?;
        let p2 = product_stieltjes2(params, pt, &job.quad, &job.prec)?;
        let o2 = r(Shift::new(0, 0, -1))? * r(Shift::new(0, 0, 1))?;
        worst = worst
            .max((p1 - o1).norm() / o1.norm().max(1.0))
            .max((p2 - o2).norm() / o2.norm().max(1.0));
    }
    Ok(check("products", worst, 1e-8, 2 * pts.len()))
}

pub fn verify(job: &Job) -> Result<Report, Failure> {
    let params = job.params()?;
    let suites: &[Suite] = match job.suite {
        Suite::All => &[Suite::Boundary, Suite::Repr, Suite::Zeros, Suite::Products],
        ref s => std::slice::from_ref(s),
    };
    let mut records = Vec::new();
    for suite in suites {
        let r = match suite {
            Suite::Boundary => verify_boundary(job, &params)?,
            Suite::Repr => verify_repr(job, &params)?,
            Suite::Zeros => verify_zeros(job, &params)?,
            Suite::Products => verify_products(job, &params)?,
            Suite::All => unreachable!(),
        };
        records.push(job.meta(job.shift_fields(r)));
    }
    let failed = records
        .iter()
        .any(|r| matches!(r.get("pass"), Some(crate::output::Field::Bool(false))));
    Ok(Report { records, failed })
}

//! The four subcommands as library functions, so tests can drive them without
//! spawning the binary.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::format::fmt_g;
use super::spec::EnsembleSpec;
use super::CliError;
use crate::discord::{
    accessible_information, discord_from_accessible, koashi_winter, KoashiWinterBreakdown,
};
use crate::ensemble::{holevo_chi, QubitEnsemble};
use crate::geodiscord::{geometric_discord, pure_pair_geo_closed_form};
use crate::measurement::classical_mutual_information_at;
use crate::optimize::OptimizationResult;
use crate::oracle::{brute_force_accessible, brute_force_geo, resolution_bound};
use crate::qstate::{BlochVector, PureStatePair, PURE_TOL};
use crate::sampling::{random_ensemble, random_pure_ensemble, uniform_sphere};

/// Allowed gap between a sweep row's discord and chi − i_acc.
pub const ROW_IDENTITY_TOL: f64 = 1e-10;

/// Rows computed per parallel batch before being written.
const BATCH: usize = 4096;

/// `steps` equally spaced values from `start` to `stop`, both included.
pub fn linspace(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    let last = (steps.max(2) - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                stop
            } else {
                start + (stop - start) * (i as f64 / last)
            }
        })
        .collect()
}

fn io_err(e: std::io::Error) -> CliError {
    e.into()
}

fn both_pure(e: &QubitEnsemble) -> bool {
    (e.a().norm() - 1.0).abs() <= PURE_TOL && (e.b().norm() - 1.0).abs() <= PURE_TOL
}

fn pair_ensemble(theta: f64, lambda0: f64) -> Result<QubitEnsemble, CliError> {
    PureStatePair::new(theta, lambda0)
        .and_then(|p| QubitEnsemble::from_pure_pair(&p))
        .map_err(|e| CliError::Usage(format!("pure pair (θ = {theta}, λ₀ = {lambda0}): {e}")))
}

// ---------------------------------------------------------------- compute

/// Oracle cross-check attached to a compute report.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub grid: usize,
    pub resolution_bound: f64,
    pub i_acc: f64,
    pub discord: f64,
    pub geo_discord: f64,
    pub n_opt: BlochVector,
    pub geo_n_opt: BlochVector,
    pub i_acc_gap: f64,
    pub geo_discord_gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComputeReport {
    pub ensemble: EnsembleSpec,
    pub chi: f64,
    pub i_acc: f64,
    pub discord: f64,
    pub geo_discord: f64,
    pub accessible: OptimizationResult,
    pub geometric: OptimizationResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub koashi_winter: Option<KoashiWinterBreakdown>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

pub fn compute(spec: &EnsembleSpec, verify_grid: Option<usize>) -> Result<ComputeReport, CliError> {
    let e = spec.to_ensemble()?;
    let chi = holevo_chi(&e);
    let acc = accessible_information(&e);
    let d = discord_from_accessible(&e, &acc);
    let geo = geometric_discord(&e);
    let koashi_winter = if both_pure(&e) {
        Some(koashi_winter(&e).map_err(|err| CliError::Internal(err.to_string()))?)
    } else {
        None
    };
    let oracle = match verify_grid {
        None => None,
        Some(n) => {
            let grid_err = |err: crate::Error| CliError::Usage(err.to_string());
            let bf = brute_force_accessible(&e, n).map_err(grid_err)?;
            let bg = brute_force_geo(&e, n).map_err(grid_err)?;
            Some(OracleReport {
                grid: n,
                resolution_bound: resolution_bound(n),
                i_acc: bf.value,
                discord: chi - bf.value,
                geo_discord: bg.value,
                n_opt: bf.n_opt,
                geo_n_opt: bg.n_opt,
                i_acc_gap: acc.value - bf.value,
                geo_discord_gap: bg.value - geo.value,
            })
        }
    };
    Ok(ComputeReport {
        ensemble: EnsembleSpec::from_ensemble(&e),
        chi,
        i_acc: acc.value,
        discord: d.value,
        geo_discord: geo.value,
        accessible: acc,
        geometric: geo,
        koashi_winter,
        oracle,
    })
}

// ------------------------------------------------------------------ sweep

pub const SWEEP_HEADER: &str = "theta,discord,discord_closed_form,geo_discord,geo_closed_form,chi,i_acc,n_opt_x,n_opt_y,n_opt_z,geo_n_opt_x,geo_n_opt_y,geo_n_opt_z";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub discord: f64,
    pub discord_closed_form: f64,
    pub geo_discord: f64,
    pub geo_closed_form: f64,
    pub chi: f64,
    pub i_acc: f64,
    pub n_opt: BlochVector,
    pub geo_n_opt: BlochVector,
}

impl SweepRow {
    pub fn compute(theta: f64, lambda0: f64) -> Result<Self, CliError> {
        let e = pair_ensemble(theta, lambda0)?;
        let chi = holevo_chi(&e);
        let acc = accessible_information(&e);
        let d = discord_from_accessible(&e, &acc);
        let geo = geometric_discord(&e);
        let closed = |r: crate::Result<f64>| r.map_err(|err| CliError::Internal(err.to_string()));
        let row = SweepRow {
            theta,
            discord: d.value,
            discord_closed_form: closed(koashi_winter(&e).map(|k| k.discord))?,
            geo_discord: geo.value,
            geo_closed_form: closed(pure_pair_geo_closed_form(theta, lambda0))?,
            chi,
            i_acc: acc.value,
            n_opt: acc.n_opt,
            geo_n_opt: geo.n_opt,
        };
        let gap = (row.discord - (row.chi - row.i_acc)).abs();
        if gap > ROW_IDENTITY_TOL {
            return Err(CliError::Invariant(format!(
                "θ = {theta}: discord differs from chi − i_acc by {gap:e}"
            )));
        }
        Ok(row)
    }

    pub fn csv_line(&self) -> String {
        [
            self.theta,
            self.discord,
            self.discord_closed_form,
            self.geo_discord,
            self.geo_closed_form,
            self.chi,
            self.i_acc,
            self.n_opt.x,
            self.n_opt.y,
            self.n_opt.z,
            self.geo_n_opt.x,
            self.geo_n_opt.y,
            self.geo_n_opt.z,
        ]
        .map(fmt_g)
        .join(",")
    }
}

fn check_pair_range(start: f64, stop: f64, lambda0: f64) -> Result<(), CliError> {
    let pi = std::f64::consts::PI;
    for (name, t) in [("start", start), ("stop", stop)] {
        if !(0.0..=pi).contains(&t) {
            return Err(CliError::Usage(format!(
                "θ {name} must lie in [0, π], got {t}"
            )));
        }
    }
    if !(0.0..=1.0).contains(&lambda0) {
        return Err(CliError::Usage(format!(
            "--lambda0 must lie in [0, 1], got {lambda0}"
        )));
    }
    Ok(())
}

/// Sweep rows for the symmetric pure pair at every θ of the inclusive range.
pub fn sweep_rows(
    start: f64,
    stop: f64,
    steps: usize,
    lambda0: f64,
) -> Result<Vec<SweepRow>, CliError> {
    check_pair_range(start, stop, lambda0)?;
    linspace(start, stop, steps)
        .into_par_iter()
        .map(|t| SweepRow::compute(t, lambda0))
        .collect()
}

/// Streams the sweep CSV in θ order, computing each batch in parallel.
pub fn write_sweep_csv<W: Write + ?Sized>(
    w: &mut W,
    start: f64,
    stop: f64,
    steps: usize,
    lambda0: f64,
) -> Result<(), CliError> {
    check_pair_range(start, stop, lambda0)?;
    let thetas = linspace(start, stop, steps);
    writeln!(w, "{SWEEP_HEADER}").map_err(io_err)?;
    for chunk in thetas.chunks(BATCH) {
        let rows: Vec<SweepRow> = chunk
            .par_iter()
            .map(|&t| SweepRow::compute(t, lambda0))
            .collect::<Result<_, _>>()?;
        for row in rows {
            writeln!(w, "{}", row.csv_line()).map_err(io_err)?;
        }
    }
    Ok(())
}

// -------------------------------------------------------------- landscape

pub const LANDSCAPE_HEADER: &str = "theta,delta,discord_rough";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandscapeRow {
    pub theta: f64,
    pub delta: f64,
    /// χ − H(A:B) at n⃗ = (cos δ, 0, sin δ), clamped at 0.
    pub discord_rough: f64,
}

impl LandscapeRow {
    pub fn csv_line(&self) -> String {
        [self.theta, self.delta, self.discord_rough]
            .map(fmt_g)
            .join(",")
    }
}

fn landscape_block(
    theta: f64,
    deltas: &[f64],
    lambda0: f64,
) -> Result<Vec<LandscapeRow>, CliError> {
    let e = pair_ensemble(theta, lambda0)?;
    let chi = holevo_chi(&e);
    Ok(deltas
        .par_iter()
        .map(|&delta| {
            let (s, c) = delta.sin_cos();
            let n = BlochVector::new(c, 0.0, s);
            LandscapeRow {
                theta,
                delta,
                discord_rough: (chi - classical_mutual_information_at(&e, n)).max(0.0),
            }
        })
        .collect())
}

/// Rows for every (θ, δ) pair, θ-major.
pub fn landscape_rows(
    thetas: &[f64],
    deltas: &[f64],
    lambda0: f64,
) -> Result<Vec<LandscapeRow>, CliError> {
    let mut out = Vec::with_capacity(thetas.len() * deltas.len());
    for &t in thetas {
        out.extend(landscape_block(t, deltas, lambda0)?);
    }
    Ok(out)
}

pub fn write_landscape_csv<W: Write + ?Sized>(
    w: &mut W,
    thetas: &[f64],
    deltas: &[f64],
    lambda0: f64,
) -> Result<(), CliError> {
    for &t in thetas {
        check_pair_range(t, t, lambda0)?;
    }
    writeln!(w, "{LANDSCAPE_HEADER}").map_err(io_err)?;
    for &t in thetas {
        for row in landscape_block(t, deltas, lambda0)? {
            writeln!(w, "{}", row.csv_line()).map_err(io_err)?;
        }
    }
    Ok(())
}

// ----------------------------------------------------------------- verify

/// Base tolerances of the verify suites, before `--tol` scaling.
pub mod tolerances {
    pub const HOLEVO_BOUND: f64 = 1e-12;
    pub const COMPLEMENTARITY: f64 = 1e-10;
    pub const KOASHI_WINTER: f64 = 1e-6;
    pub const STATIONARITY: f64 = 1e-6;
}

/// Random axes per ensemble in the Holevo-bound suite.
const HOLEVO_AXES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub grid: usize,
    pub tol_scale: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub name: &'static str,
    pub tolerance: f64,
    pub checked: usize,
    pub failed: usize,
    /// Largest residual seen; a check fails when its residual exceeds the
    /// tolerance.
    pub worst_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyFailure {
    pub suite: &'static str,
    pub trial: usize,
    pub residual: f64,
    pub tolerance: f64,
    pub ensemble: EnsembleSpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub grid: usize,
    pub tol_scale: f64,
    pub passed: bool,
    pub suites: Vec<SuiteSummary>,
    pub failures: Vec<VerifyFailure>,
}

const SUITES: [&str; 5] = [
    "holevo_bound",
    "complementarity",
    "koashi_winter",
    "oracle_agreement",
    "stationarity",
];

/// One residual produced by a trial.
struct Check {
    suite: usize,
    residual: f64,
    ensemble: QubitEnsemble,
}

fn suite_tolerances(opts: &VerifyOptions) -> [f64; 5] {
    use tolerances::*;
    [
        HOLEVO_BOUND,
        COMPLEMENTARITY,
        KOASHI_WINTER,
        resolution_bound(opts.grid),
        STATIONARITY,
    ]
    .map(|t| t * opts.tol_scale)
}

fn trial_checks(seed: u64, trial: usize, grid: usize) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let mixed = random_ensemble(&mut rng);
    let pure = random_pure_ensemble(&mut rng);
    let axes: Vec<BlochVector> = (0..HOLEVO_AXES).map(|_| uniform_sphere(&mut rng)).collect();

    let mut checks = Vec::new();
    let mut push = |suite: usize, residual: f64, e: &QubitEnsemble| {
        checks.push(Check {
            suite,
            residual,
            ensemble: *e,
        })
    };

    for e in [&mixed, &pure] {
        let chi = holevo_chi(e);
        let acc = accessible_information(e);
        let d = discord_from_accessible(e, &acc);

        let holevo = axes
            .iter()
            .chain(std::iter::once(&acc.n_opt))
            .map(|&n| classical_mutual_information_at(e, n) - chi)
            .fold(f64::NEG_INFINITY, f64::max);
        push(0, holevo, e);

        let identity = (chi - acc.value - d.value).abs();
        push(1, identity.max(acc.value - chi), e);

        if e == &pure {
            let kw = koashi_winter(e).map_err(|err| CliError::Internal(err.to_string()))?;
            push(2, (d.value - kw.discord).abs(), e);
        }

        let oracle = |err: crate::Error| CliError::Internal(err.to_string());
        let bf = brute_force_accessible(e, grid).map_err(oracle)?;
        let bg = brute_force_geo(e, grid).map_err(oracle)?;
        let geo = geometric_discord(e);
        push(
            3,
            (acc.value - bf.value)
                .abs()
                .max((geo.value - bg.value).abs()),
            e,
        );

        let mut stat = geo.stationarity_residual;
        if !acc.degenerate && !acc.residual_singular {
            stat = stat.max(acc.stationarity_residual);
        }
        push(4, stat, e);
    }
    Ok(checks)
}

/// Runs every suite over `trials` seeded random ensembles. Trials run in
/// parallel; each draws from its own ChaCha stream, so the report depends only
/// on the options.
pub fn verify(opts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    let tol = suite_tolerances(opts);
    let per_trial: Vec<Vec<Check>> = (0..opts.trials)
        .into_par_iter()
        .map(|t| trial_checks(opts.seed, t, opts.grid))
        .collect::<Result<_, _>>()?;

    let mut suites: Vec<SuiteSummary> = SUITES
        .iter()
        .zip(tol)
        .map(|(&name, tolerance)| SuiteSummary {
            name,
            tolerance,
            checked: 0,
            failed: 0,
            worst_residual: f64::NEG_INFINITY,
        })
        .collect();
    let mut failures = Vec::new();
    for (trial, checks) in per_trial.into_iter().enumerate() {
        for c in checks {
            let s = &mut suites[c.suite];
            s.checked += 1;
            s.worst_residual = s.worst_residual.max(c.residual);
            // NaN residuals count as failures.
            if c.residual.is_nan() || c.residual > s.tolerance {
                s.failed += 1;
                failures.push(VerifyFailure {
                    suite: s.name,
                    trial,
                    residual: c.residual,
                    tolerance: s.tolerance,
                    ensemble: EnsembleSpec::from_ensemble(&c.ensemble),
                });
            }
        }
    }
    Ok(VerifyReport {
        seed: opts.seed,
        trials: opts.trials,
        grid: opts.grid,
        tol_scale: opts.tol_scale,
        passed: failures.is_empty(),
        suites,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_endpoints() {
        let v = linspace(0.0, std::f64::consts::FRAC_PI_2, 5);
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[4], std::f64::consts::FRAC_PI_2);
        assert_eq!(linspace(1.0, 2.0, 2), vec![1.0, 2.0]);
    }

    #[test]
    fn sweep_rejects_out_of_range_theta() {
        assert!(matches!(
            sweep_rows(0.0, 4.0, 3, 0.5),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            sweep_rows(0.0, 1.0, 3, 1.5),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn verify_is_deterministic() {
        let opts = VerifyOptions {
            seed: 7,
            trials: 3,
            grid: 500,
            tol_scale: 1.0,
        };
        let a = serde_json::to_string(&verify(&opts).unwrap()).unwrap();
        let b = serde_json::to_string(&verify(&opts).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

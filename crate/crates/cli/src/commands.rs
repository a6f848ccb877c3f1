//! The four subcommands. Each returns a table, plus the first error that
//! should set the exit code once the table has been written.

use std::f64::consts::PI;

use qclone::exec::Execution;
use qclone::optics::{
    axisym_filter_settings, filter_tau, pcc_success_probability, run_with_settings,
    success_probability_theory, FilterSettings, Hemisphere, Polarization,
    RateExperiment, Regime,
};
use qclone::optimizer::{certify, optimize_cloner};
use qclone::quantum::{fidelity, partial_trace, CloneIndex, DensityMatrix, PolarizationQubit};
use qclone::theory::{
    build_r, clone_fidelity_pointwise, fidelity_theory, lambda_opt, pcc_fidelity, uc_theta,
    QubitDistribution, UC_LAMBDA_SQ,
};
use qclone::tomography::{
    expected_counts, ml_reconstruct, projection_probabilities, simulate_counts,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::config::{AncillaMode, DistributionKind, ExperimentConfig, RegimeKind};
use crate::table::{Cell, Table};
use crate::CliError;

pub struct Output {
    pub table: Table,
    /// Reported after the table is written.
    pub error: Option<CliError>,
}

impl Output {
    fn ok(table: Table) -> Self {
        Self { table, error: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Closed-form fidelity and success probability per polar angle.
    Theory,
    /// Optical simulation over a phase grid per polar angle.
    Simulate,
    /// CPTP optimizer with optimality certificate.
    Optimize,
    /// Simulated two-photon tomography of the clones.
    Tomography,
}

pub fn run(cmd: Command, cfg: &ExperimentConfig) -> Result<Output, CliError> {
    match cmd {
        Command::Theory => theory(cfg),
        Command::Simulate => simulate(cfg),
        Command::Optimize => optimize(cfg),
        Command::Tomography => tomography(cfg),
    }
}

fn mirror_fidelity(theta: f64) -> Result<f64, CliError> {
    Ok(fidelity_theory(&QubitDistribution::MirrorPair { theta }.moments()?))
}

/// Optimal fidelity for a known latitude from the CPTP optimizer.
fn latitude_optimum(theta: f64) -> Result<f64, CliError> {
    let g = QubitDistribution::Latitude { theta, hemisphere_known: true };
    let res = optimize_cloner(&build_r(&g.moments()?), true)?;
    if res.converged {
        Ok(res.f_star)
    } else {
        Err(CliError::NotConverged(format!(
            "optimizer at theta = {theta} after {} iterations",
            res.iterations
        )))
    }
}

fn collect<T>(rows: Vec<Result<T, CliError>>) -> Result<Vec<T>, CliError> {
    rows.into_iter().collect()
}

pub fn theory(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let mut table = Table::new(vec!["theta_rad", "lambda", "tau", "f_th", "p_th"]);
    let pdbs = &cfg.pdbs;
    let thetas = match cfg.regime {
        RegimeKind::Uc => vec![uc_theta()],
        _ => cfg.theta_list.clone(),
    };
    let rows = Execution::default().map(&thetas, |&theta| -> Result<Vec<Cell>, CliError> {
        Ok(match cfg.regime {
            RegimeKind::Uc => vec![
                theta.into(),
                UC_LAMBDA_SQ.sqrt().into(),
                filter_tau(theta, pdbs)?.into(),
                fidelity_theory(&QubitDistribution::UniformSphere.moments()?).into(),
                success_probability_theory(pdbs, theta)?.into(),
            ],
            RegimeKind::Mpcc => vec![
                theta.into(),
                lambda_opt(theta.cos().powi(2)).into(),
                filter_tau(theta, pdbs)?.into(),
                mirror_fidelity(theta)?.into(),
                success_probability_theory(pdbs, theta)?.into(),
            ],
            RegimeKind::Pcc => vec![
                theta.into(),
                lambda_opt(0.0).into(),
                filter_tau(PI / 2.0, pdbs)?.into(),
                pcc_fidelity(theta).into(),
                pcc_success_probability(pdbs, theta, Hemisphere::of(theta))?.into(),
            ],
            RegimeKind::Axisym => vec![
                theta.into(),
                Cell::Empty,
                Cell::Empty,
                latitude_optimum(theta)?.into(),
                Cell::Empty,
            ],
        })
    });
    for row in collect(rows)? {
        table.push(row);
    }
    Ok(Output::ok(table))
}

/// Weighted filter settings realizing the configured regime for inputs at
/// polar angle `theta`.
fn branches(cfg: &ExperimentConfig, theta: f64) -> Result<Vec<(FilterSettings, f64)>, CliError> {
    let pdbs = &cfg.pdbs;
    let all = match cfg.regime {
        RegimeKind::Uc => Regime::Uc.branches(pdbs)?,
        RegimeKind::Mpcc => Regime::Mpcc { theta }.branches(pdbs)?,
        RegimeKind::Pcc => return Ok(Regime::Pcc { hemisphere: Hemisphere::of(theta) }.branches(pdbs)?),
        RegimeKind::Axisym => {
            let (plus, minus) = cfg.alpha.ok_or_else(|| {
                CliError::Validation("axisym simulation needs --alpha-plus and --alpha-minus".into())
            })?;
            vec![
                (axisym_filter_settings(plus, minus, Polarization::H, pdbs)?, 0.5),
                (axisym_filter_settings(plus, minus, Polarization::V, pdbs)?, 0.5),
            ]
        }
    };
    Ok(match cfg.ancilla_mode {
        AncillaMode::Random => all,
        AncillaMode::Deterministic => {
            let want = match Hemisphere::of(theta) {
                Hemisphere::North => Polarization::H,
                Hemisphere::South => Polarization::V,
            };
            all.into_iter()
                .filter(|(s, _)| s.ancilla == want)
                .map(|(s, _)| (s, 1.0))
                .collect()
        }
    })
}

/// Theory fidelity of a single clone for an input at `theta`.
fn f_th(cfg: &ExperimentConfig, theta: f64) -> Result<f64, CliError> {
    Ok(match cfg.regime {
        RegimeKind::Uc => clone_fidelity_pointwise(theta, UC_LAMBDA_SQ.sqrt()),
        RegimeKind::Mpcc => clone_fidelity_pointwise(theta, lambda_opt(theta.cos().powi(2))),
        RegimeKind::Pcc => pcc_fidelity(theta),
        RegimeKind::Axisym => latitude_optimum(theta)?,
    })
}

fn p_th(cfg: &ExperimentConfig, theta: f64) -> Result<Option<f64>, CliError> {
    let pdbs = &cfg.pdbs;
    let random = cfg.ancilla_mode == AncillaMode::Random;
    Ok(match cfg.regime {
        RegimeKind::Uc if random => Some(success_probability_theory(pdbs, uc_theta())?),
        RegimeKind::Mpcc if random => Some(success_probability_theory(pdbs, theta)?),
        RegimeKind::Pcc => Some(pcc_success_probability(pdbs, theta, Hemisphere::of(theta))?),
        _ => None,
    })
}

/// Input states of one row: the six cardinal states for UC (one row each),
/// otherwise an equally spaced phase ring.
fn row_inputs(cfg: &ExperimentConfig) -> Vec<(String, f64, Vec<PolarizationQubit>)> {
    match cfg.regime {
        RegimeKind::Uc => PolarizationQubit::cardinal_states()
            .into_iter()
            .map(|(name, q)| (name.to_string(), q.theta(), vec![q]))
            .collect(),
        _ => cfg
            .theta_list
            .iter()
            .map(|&theta| {
                let ring = (0..cfg.phases)
                    .map(|k| PolarizationQubit::new(theta, 2.0 * PI * k as f64 / cfg.phases as f64))
                    .collect();
                ("ring".to_string(), theta, ring)
            })
            .collect(),
    }
}

fn no_coincidence(theta: f64) -> CliError {
    CliError::Core(qclone::Error::InvalidDistribution(format!(
        "no coincidences possible at theta = {theta}"
    )))
}

fn spread(xs: &[f64]) -> f64 {
    xs.iter().cloned().fold(f64::MIN, f64::max) - xs.iter().cloned().fold(f64::MAX, f64::min)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn simulate(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let mut table = Table::new(vec![
        "state",
        "theta_rad",
        "n_phases",
        "f_sim_clone1",
        "f_sim_clone1_spread",
        "f_sim_clone2",
        "f_sim_clone2_spread",
        "p_sim",
        "p_sim_std_error",
        "f_th",
        "p_th",
        "f_sim_over_f_th",
    ]);
    let inputs = row_inputs(cfg);
    let rows = Execution::default().map_range(inputs.len(), |i| -> Result<Vec<Cell>, CliError> {
        let (label, theta, states) = &inputs[i];
        let theta = *theta;
        let settings = branches(cfg, theta)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
        let (mut f1, mut f2, mut p, mut se2) = (vec![], vec![], vec![], 0.0);
        for q in states {
            let out = run_with_settings(q, &settings, &cfg.pdbs);
            let (a, b) = out.clone_fidelities(q).ok_or_else(|| no_coincidence(theta))?;
            f1.push(a);
            f2.push(b);
            if cfg.shots > 0 {
                let m = RateExperiment::new(cfg.shots).run_branches(q, &settings, &cfg.pdbs, &mut rng)?;
                p.push(m.success_prob);
                se2 += m.std_error * m.std_error;
            } else {
                p.push(out.success_prob);
            }
        }
        let n = states.len() as f64;
        let fth = f_th(cfg, theta)?;
        let std_error = (cfg.shots > 0).then(|| se2.sqrt() / n);
        Ok(vec![
            label.as_str().into(),
            theta.into(),
            states.len().into(),
            mean(&f1).into(),
            spread(&f1).into(),
            mean(&f2).into(),
            spread(&f2).into(),
            mean(&p).into(),
            std_error.into(),
            fth.into(),
            p_th(cfg, theta)?.into(),
            ((mean(&f1) + mean(&f2)) / 2.0 / fth).into(),
        ])
    });
    for row in collect(rows)? {
        table.push(row);
    }
    Ok(Output::ok(table))
}

fn distribution_for(kind: DistributionKind, theta: f64) -> QubitDistribution {
    match kind {
        DistributionKind::Uniform => QubitDistribution::UniformSphere,
        DistributionKind::Latitude => QubitDistribution::Latitude { theta, hemisphere_known: true },
        DistributionKind::MirrorPair => QubitDistribution::MirrorPair { theta },
        DistributionKind::Point => QubitDistribution::Point { theta, phi: 0.0 },
    }
}

pub fn optimize(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    let mut table = Table::new(vec![
        "distribution",
        "theta_rad",
        "f_star",
        "iterations",
        "converged",
        "duality_gap",
        "delta1",
        "delta2",
        "delta3",
        "delta4",
        "condition1_residual",
        "condition2_min_eig",
        "optimal",
    ]);
    let kind = cfg.distribution.unwrap_or(match cfg.regime {
        RegimeKind::Uc => DistributionKind::Uniform,
        RegimeKind::Mpcc => DistributionKind::MirrorPair,
        RegimeKind::Pcc | RegimeKind::Axisym => DistributionKind::Latitude,
    });
    let name = match kind {
        DistributionKind::Uniform => "uniform",
        DistributionKind::Latitude => "latitude",
        DistributionKind::MirrorPair => "mirror-pair",
        DistributionKind::Point => "point",
    };
    let thetas: Vec<Option<f64>> = match kind {
        DistributionKind::Uniform => vec![None],
        _ => cfg.theta_list.iter().copied().map(Some).collect(),
    };
    let rows = Execution::default().map(&thetas, |&theta| -> Result<(Vec<Cell>, bool), CliError> {
        let g = distribution_for(kind, theta.unwrap_or(0.0));
        let r = build_r(&g.moments()?);
        let res = optimize_cloner(&r, true)?;
        let mut row: Vec<Cell> = vec![
            name.into(),
            theta.into(),
            res.f_star.into(),
            res.iterations.into(),
            res.converged.into(),
            res.duality_gap.into(),
        ];
        if res.converged {
            let rep = certify(&res, &r)?;
            // The closed-form δ's describe mirror-symmetric R only.
            row.extend(
                rep.delta_eigenvalues
                    .iter()
                    .map(|&d| if rep.matches_closed_form { Cell::Num(d) } else { Cell::Empty }),
            );
            row.extend([
                rep.condition1_residual.into(),
                rep.condition2_min_eig.into(),
                rep.optimal.into(),
            ]);
        } else {
            row.extend(std::iter::repeat_n(Cell::Empty, 7));
        }
        Ok((row, res.converged))
    });
    let mut error = None;
    for (row, converged) in collect(rows)? {
        if !converged && error.is_none() {
            error = Some(CliError::NotConverged(format!("optimizer on {name} distribution")));
        }
        table.push(row);
    }
    Ok(Output { table, error })
}

fn matrix_json(rho: &DensityMatrix) -> Json {
    let m = rho.matrix();
    Json::Array(
        (0..m.nrows())
            .map(|i| Json::Array((0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

pub fn tomography(cfg: &ExperimentConfig) -> Result<Output, CliError> {
    if cfg.n_per_setting == 0 {
        return Err(CliError::Validation("n_per_setting must be positive".into()));
    }
    let mut table = Table::new(vec![
        "state",
        "theta_rad",
        "n_per_setting",
        "f_clone1",
        "f_clone2",
        "f_th",
        "iterations",
        "converged",
        "log_likelihood",
        "rho",
        "settings",
    ]);
    let inputs: Vec<(String, PolarizationQubit)> = match cfg.regime {
        RegimeKind::Uc => PolarizationQubit::cardinal_states()
            .into_iter()
            .map(|(n, q)| (n.to_string(), q))
            .collect(),
        _ => cfg
            .theta_list
            .iter()
            .map(|&t| ("phi=0".to_string(), PolarizationQubit::new(t, 0.0)))
            .collect(),
    };
    let rows = Execution::default().map_range(inputs.len(), |i| -> Result<(Vec<Cell>, bool), CliError> {
        let (label, q) = &inputs[i];
        let theta = q.theta();
        let out = run_with_settings(q, &branches(cfg, theta)?, &cfg.pdbs);
        let rho = out.rho_pair.ok_or_else(|| no_coincidence(theta))?;
        let exact = projection_probabilities(&rho)?;
        let record = if cfg.noiseless {
            expected_counts(&exact, cfg.n_per_setting)
        } else {
            simulate_counts(&exact, cfg.n_per_setting, cfg.seed.wrapping_add(i as u64))
        };
        let ml = ml_reconstruct(&record)?;
        let f = |k| -> Result<f64, CliError> { Ok(fidelity(&partial_trace(&ml.rho, k)?, q)?) };
        let settings: Vec<Json> = record
            .settings
            .iter()
            .zip(&exact.probabilities)
            .zip(&record.counts)
            .map(|(((a, b), p), c)| json!({"setting": format!("{}{}", a.label(), b.label()), "probability": p, "counts": c}))
            .collect();
        let row = vec![
            label.as_str().into(),
            theta.into(),
            cfg.n_per_setting.into(),
            f(CloneIndex::First)?.into(),
            f(CloneIndex::Second)?.into(),
            f_th(cfg, theta)?.into(),
            ml.iterations.into(),
            ml.converged.into(),
            (*ml.log_likelihood.last().expect("starting value")).into(),
            matrix_json(&ml.rho).into(),
            Json::Array(settings).into(),
        ];
        Ok((row, ml.converged))
    });
    let mut error = None;
    for (row, converged) in collect(rows)? {
        if !converged && error.is_none() {
            error = Some(CliError::NotConverged("maximum-likelihood reconstruction".into()));
        }
        table.push(row);
    }
    Ok(Output { table, error })
}

//! Sweeps that run the verifiers over parameter grids and collect the
//! outcome into one [`SuiteReport`]. Inputs are generated up front from the
//! seed, so results do not depend on how work is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_axis_nets, enumerated_switch};
use super::lagrange::lagrange_split_check;
use super::perturb::{local_perturbation_experiment, PerturbationConfig, PerturbationSpec};
use super::sweep::{RotationSweep, SweepConfig};
use crate::error::{Error, Result};
use crate::inscribe::curve_value;
use crate::nets::{crossover_aspect, net_scale_factor, odd_crossover_unshifted, Net, Split};
use crate::report::{Candidate, Parameters, VerificationReport};

/// Agreement required between closed form and sweep, in units of the
/// sweep's angle resolution.
pub const SWEEP_TOL_FACTOR: f64 = 5.0;
/// Winners may tie with a different net only this close to the crossover.
pub const CROSSOVER_TIE_WINDOW: f64 = 1e-9;
pub const IRREGULAR_TOL: f64 = 1e-12;

/// Evenly spaced aspect ratios `min, min + step, ...` up to `max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PGrid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl PGrid {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min >= 1.0 && max >= min && step > 0.0 && max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "bad grid [{min}, {max}] with step {step}"
            )));
        }
        Ok(Self { min, max, step })
    }

    pub fn points(&self) -> Vec<f64> {
        let m = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=m).map(|i| self.min + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: Parameters,
    pub checks: usize,
    pub passed: bool,
    pub notes: Vec<String>,
    pub failures: Vec<String>,
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    fn finish(
        suite: &str,
        parameters: Parameters,
        checks: usize,
        notes: Vec<String>,
        mut failures: Vec<String>,
        reports: Vec<VerificationReport>,
    ) -> Self {
        for r in &reports {
            failures.extend(r.failures.iter().cloned());
        }
        Self {
            suite: suite.into(),
            parameters,
            checks,
            passed: failures.is_empty(),
            notes,
            failures,
            reports,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite report serializes")
    }
}

/// Closed-form curve against the rotation sweep for `p` on `[1, 4n]`.
pub fn curve_oracle_suite(n: f64, cfg: SweepConfig, p_step: f64) -> Result<SuiteReport> {
    let sweep = RotationSweep::new(cfg)?;
    let grid = PGrid::new(1.0, 4.0 * n, p_step)?;
    let tol = SWEEP_TOL_FACTOR * cfg.theta_resolution;
    let candidates = grid
        .points()
        .par_iter()
        .map(|&p| {
            let exact = curve_value(n, p)?;
            let swept = sweep.evaluate(n, p)?.value;
            Ok(Candidate::new(
                format!("p={p}"),
                Some((exact - swept).abs()),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (worst_i, worst) = candidates
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.value.unwrap_or(f64::INFINITY)))
        .fold((0, f64::NEG_INFINITY), |a, x| if x.1 > a.1 { x } else { a });
    let mut failures = Vec::new();
    if worst > tol {
        failures.push(format!(
            "deviation {worst} at {} exceeds {tol}",
            candidates[worst_i].label
        ));
    }
    let params = Parameters {
        n: Some(n),
        angle_resolution: Some(cfg.theta_resolution),
        tolerance: tol,
        ..Default::default()
    };
    let checks = candidates.len();
    let report = VerificationReport {
        check: "curve-oracle".into(),
        parameters: params.clone(),
        winners: vec![candidates[worst_i].label.clone()],
        winner: candidates[worst_i].label.clone(),
        winning_value: Some(worst),
        candidates,
        notes: vec!["candidate values are |closed form - sweep|; winner is the worst p".into()],
        failures: Vec::new(),
    };
    Ok(SuiteReport::finish(
        "curve-oracle",
        params,
        checks,
        vec![format!("max deviation {worst:e}")],
        failures,
        vec![report],
    ))
}

/// Enumeration of all splits against the predicted optimal net on a grid.
/// `parity` selects which line counts are accepted.
pub fn theorem_suite(k: usize, grid: PGrid, parity: Parity) -> Result<SuiteReport> {
    match parity {
        Parity::Even if k < 2 || !k.is_multiple_of(2) => {
            return Err(Error::LineCount {
                k,
                expected: "even and at least 2",
            })
        }
        Parity::Odd if k < 3 || k % 2 != 1 => {
            return Err(Error::LineCount {
                k,
                expected: "odd and at least 3",
            })
        }
        _ => {}
    }
    let crossover = crossover_aspect(k)?;
    let reports = grid
        .points()
        .par_iter()
        .map(|&p| enumerate_axis_nets(k, p))
        .collect::<Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    for r in &reports {
        let p = r.parameters.p.expect("enumeration records p");
        let mut classes: Vec<Split> = r
            .winners
            .iter()
            .filter_map(|w| r.candidates.iter().find(|c| &c.label == w)?.split)
            .map(Split::canonical)
            .collect();
        classes.sort();
        classes.dedup();
        if classes.len() > 1 && (p - crossover).abs() > CROSSOVER_TIE_WINDOW {
            failures.push(format!(
                "tie between {classes:?} at p = {p}, away from the crossover"
            ));
        }
    }

    let mut notes = vec![format!("crossover (k+1)/(floor(k/2)+1) = {crossover}")];
    if grid.min < crossover && crossover < grid.max {
        let switch = enumerated_switch(k, grid.max)?;
        notes.push(format!("enumerated switch = {switch}"));
        if (switch - crossover).abs() > CROSSOVER_TIE_WINDOW {
            failures.push(format!(
                "enumerated switch {switch} differs from crossover {crossover}"
            ));
        }
        if parity == Parity::Odd {
            let unshifted = odd_crossover_unshifted(k)?;
            let verdict = if (unshifted - switch).abs() > CROSSOVER_TIE_WINDOW {
                "DISAGREES with enumeration"
            } else {
                "agrees with enumeration"
            };
            notes.push(format!(
                "formula (k+1)*floor(k/2)/ceil(k/2)^2 = {unshifted} {verdict} (switch at {switch})"
            ));
        }
    }
    let params = Parameters {
        k: Some(k),
        tolerance: CROSSOVER_TIE_WINDOW,
        ..Default::default()
    };
    let checks = reports.len();
    let name = match parity {
        Parity::Even => "theorem-even",
        Parity::Odd => "theorem-odd",
    };
    Ok(SuiteReport::finish(
        name, params, checks, notes, failures, reports,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

fn random_cuts<R: Rng>(m: usize, jitter: bool, rng: &mut R) -> Vec<f64> {
    loop {
        let mut cuts: Vec<f64> = if jitter {
            let amp = 0.49 * rng.random::<f64>() / (m + 1) as f64;
            (1..=m)
                .map(|i| i as f64 / (m + 1) as f64 + amp * (2.0 * rng.random::<f64>() - 1.0))
                .collect()
        } else {
            (0..m).map(|_| rng.random::<f64>()).collect()
        };
        cuts.sort_by(f64::total_cmp);
        if Net::new(cuts.clone(), Vec::new()).is_ok() {
            return cuts;
        }
    }
}

/// Random irregular nets for every split `v + h = k` compared with the
/// evenly spaced net of the same split. Half the trials jitter the even
/// positions, half draw positions uniformly.
pub fn irregular_suite(k: usize, p: f64, count: usize, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials = Vec::with_capacity((k + 1) * count);
    for v in 0..=k {
        for t in 0..count {
            let jitter = t % 2 == 0;
            let net = Net::new(
                random_cuts(v, jitter, &mut rng),
                random_cuts(k - v, jitter, &mut rng),
            )?;
            trials.push((Split::new(v, k - v), net));
        }
    }
    let regular: Vec<f64> = (0..=k)
        .map(|v| net_scale_factor(&Net::evenly_spaced(v, k - v), p))
        .collect::<Result<_>>()?;
    let outcomes = trials
        .par_iter()
        .map(|(split, net)| Ok((split, net, net_scale_factor(net, p)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    let mut worst_margin = f64::INFINITY;
    for (split, net, value) in outcomes {
        let margin = value - regular[split.vertical];
        worst_margin = worst_margin.min(margin);
        if margin < -IRREGULAR_TOL {
            failures.push(format!(
                "irregular {split} net {} scores {value} below regular {}",
                net.to_json(),
                regular[split.vertical]
            ));
        }
    }
    let params = Parameters {
        k: Some(k),
        p: Some(p),
        seed: Some(seed),
        tolerance: IRREGULAR_TOL,
        ..Default::default()
    };
    Ok(SuiteReport::finish(
        "irregular",
        params,
        trials.len(),
        vec![format!(
            "smallest margin over regular spacing {worst_margin:e}"
        )],
        failures,
        Vec::new(),
    ))
}

/// [`lagrange_split_check`] for each short side in `c_primes`.
pub fn lagrange_suite(k: usize, c_primes: &[f64]) -> Result<SuiteReport> {
    let reports = c_primes
        .iter()
        .map(|&c| lagrange_split_check(k, c))
        .collect::<Result<Vec<_>>>()?;
    let params = Parameters {
        k: Some(k),
        tolerance: 1e-12,
        ..Default::default()
    };
    Ok(SuiteReport::finish(
        "lagrange",
        params,
        reports.len(),
        Vec::new(),
        Vec::new(),
        reports,
    ))
}

/// `count` seeded random specs plus the two analytic cases: the identity
/// and a shift of the middle line by `epsilon / 2`.
pub fn local_optimum_suite(
    k: usize,
    count: usize,
    epsilon: f64,
    seed: u64,
    cfg: PerturbationConfig,
) -> Result<SuiteReport> {
    let regular = 1.0 / (k + 1) as f64;
    let mut failures = Vec::new();
    let mut reports = Vec::new();

    let zero = local_perturbation_experiment(k, &PerturbationSpec::zero(k, epsilon), &cfg)?;
    let c = zero.winning_value.unwrap_or(f64::NAN);
    if (c - regular).abs() > 1e-9 {
        failures.push(format!(
            "identity perturbation gives {c}, expected {regular}"
        ));
    }
    reports.push(zero);

    let delta = 0.5 * epsilon;
    let mut shifted = PerturbationSpec::zero(k, epsilon);
    shifted.shifts[k / 2] = delta;
    let shift = local_perturbation_experiment(k, &shifted, &cfg)?;
    let c = shift.winning_value.unwrap_or(f64::NAN);
    if (c - (regular + delta)).abs() > 1e-9 {
        failures.push(format!(
            "middle shift by {delta} gives {c}, expected {}",
            regular + delta
        ));
    }
    reports.push(shift);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs: Vec<PerturbationSpec> = (0..count)
        .map(|_| PerturbationSpec::random(k, epsilon, &mut rng))
        .collect();
    let results = specs
        .par_iter()
        .map(|spec| local_perturbation_experiment(k, spec, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let smallest = results
        .iter()
        .filter_map(|r| r.winning_value)
        .fold(f64::INFINITY, f64::min);
    reports.extend(results.into_iter().filter(|r| !r.passed()));

    let params = Parameters {
        k: Some(k),
        p: Some(1.0),
        epsilon: Some(epsilon),
        angle_resolution: Some(cfg.angle_resolution),
        seed: Some(seed),
        tolerance: super::perturb::LOCAL_OPT_TOL,
        ..Default::default()
    };
    let notes = vec![
        format!("regular scale factor {regular}"),
        format!("smallest perturbed scale factor {smallest}"),
        "reports lists the analytic cases and any failing random spec".into(),
    ];
    Ok(SuiteReport::finish(
        "local-optimum",
        params,
        count + 2,
        notes,
        failures,
        reports,
    ))
}

//! The verification suite: twelve named checks tying the dynamics, the
//! topology, and the operator model together, each returning a
//! [`CheckResult`]. `run_all` assembles them into a [`Report`] at the scale
//! given by a [`SuiteConfig`].

use crate::error::{Error, Result};
use crate::odometer::{
    cylinder_index, odometer_partial, odometer_total, prefix_increment, step_x,
};
use crate::operator::{
    circle_conjugate, delta_diag, e_beta_diag, f_k_diag, regularity_check, spectral_component,
    support_transport, theta, weighted_shift, PeriodicWeights, ToleranceConfig, TruncatedOperator,
};
use crate::quotient::quotient_compatibility;
use crate::radix::{CantorPoint, DigitWord, RadixSchedule, Tail, XPoint};
use crate::report::{CheckResult, Report};
use crate::topology::{converges_to, v_k_neighborhood};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::collections::BTreeSet;

/// Seed used when the caller does not supply one; fixed so repeated runs are
/// reproducible bit for bit.
pub const DEFAULT_SEED: u64 = 0xFEED_5EED;

/// Scale parameters for a suite run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub schedule: RadixSchedule,
    /// Truncation dimension for the operator checks.
    pub dim: usize,
    /// Tolerance for floating-point residuals.
    pub eps: f64,
    pub seed: u64,
    /// Number of randomized trials for the sampled checks.
    pub trials: usize,
    /// Deepest digit level exercised by the structural checks.
    pub max_level: usize,
    /// Upper bound on the level sizes n_k enumerated exhaustively.
    pub level_cap: u64,
}

impl SuiteConfig {
    /// Desk-scale defaults: levels up to 3, 64-dimensional truncations, 200
    /// random trials, residual tolerance 1e-12.
    pub fn desk(schedule: RadixSchedule) -> Self {
        Self {
            schedule,
            dim: 64,
            eps: 1e-12,
            seed: DEFAULT_SEED,
            trials: 200,
            max_level: 3,
            level_cap: 10_000,
        }
    }
}

/// Runs every check at the configured scale. Check order is fixed, so output
/// is deterministic for a fixed seed.
pub fn run_all(cfg: &SuiteConfig) -> Report {
    let one = std::slice::from_ref(&cfg.schedule);
    let checks = vec![
        check_odometer_oracle(one, cfg.level_cap),
        check_wrap(&cfg.schedule),
        check_visit_order(one, 6, cfg.level_cap),
        check_birkhoff(&cfg.schedule, cfg.max_level, cfg.level_cap),
        check_circle_covariance(cfg.dim, 20, 10, cfg.eps, cfg.seed),
        check_fourier(cfg.dim, cfg.eps, cfg.seed),
        check_fixed_component(cfg.dim, cfg.trials, 6, cfg.eps, cfg.seed),
        check_regularity(cfg.dim, cfg.trials / 2, cfg.eps, cfg.seed),
        check_support_transport(&cfg.schedule, cfg.max_level, cfg.dim, cfg.eps),
        check_quotient_compatibility(&cfg.schedule, cfg.max_level, cfg.dim, cfg.eps),
        check_delta_shift(cfg.dim),
        check_topology(&cfg.schedule, cfg.max_level, cfg.dim),
    ];
    Report::new(cfg.schedule.to_string(), checks)
}

fn guarded(
    name: &'static str,
    params: serde_json::Value,
    body: impl FnOnce() -> Result<CheckResult>,
) -> CheckResult {
    body().unwrap_or_else(|err| {
        let params = match params {
            serde_json::Value::Object(mut map) => {
                map.insert("error".into(), json!(err.to_string()));
                serde_json::Value::Object(map)
            }
            other => json!({ "params": other, "error": err.to_string() }),
        };
        CheckResult::new(name, params, 1.0, false)
    })
}

fn schedule_names(schedules: &[RadixSchedule]) -> Vec<String> {
    schedules.iter().map(RadixSchedule::to_string).collect()
}

fn tail_name(tail: Tail) -> &'static str {
    match tail {
        Tail::Zeros => "zeros",
        Tail::Max => "max",
    }
}

/// Levels k = 1, 2, ... whose size stays within `cap` (and within u64).
fn levels_within(schedule: &RadixSchedule, cap: u64, max_level: usize) -> Vec<(usize, u64)> {
    let mut levels = Vec::new();
    for k in 1..=max_level {
        match schedule.level_size(k) {
            Ok(size) if size <= cap => levels.push((k, size)),
            _ => break,
        }
    }
    levels
}

/// Adding one to a point and reading back the first k digits is addition
/// mod n_k: for every level within the cap, every value, and both tails.
pub fn check_odometer_oracle(schedules: &[RadixSchedule], level_cap: u64) -> CheckResult {
    const NAME: &str = "odometer_modular_oracle";
    let base = json!({ "schedules": schedule_names(schedules), "level_cap": level_cap });
    guarded(NAME, base.clone(), || {
        let mut cases = 0u64;
        for schedule in schedules {
            for (k, size) in levels_within(schedule, level_cap, usize::MAX) {
                for v in 0..size {
                    let word = DigitWord::from_value(v, k, schedule)?;
                    for tail in [Tail::Zeros, Tail::Max] {
                        let point = CantorPoint::new(word.clone(), tail);
                        let got = odometer_total(&point).truncate(k).value()?;
                        let want = (v + 1) % size;
                        if got != want {
                            return Ok(CheckResult::exact(
                                NAME,
                                json!({
                                    "schedule": schedule.to_string(),
                                    "k": k, "value": v, "tail": tail_name(tail),
                                    "got": got, "want": want,
                                }),
                                false,
                            ));
                        }
                        cases += 1;
                    }
                }
            }
        }
        let mut params = base.clone();
        params["cases"] = json!(cases);
        Ok(CheckResult::exact(NAME, params, true))
    })
}

/// The all-max point wraps to all-zeros under the full map and is rejected by
/// the partial map.
pub fn check_wrap(schedule: &RadixSchedule) -> CheckResult {
    const NAME: &str = "wrap_at_all_max";
    let params = json!({ "schedule": schedule.to_string() });
    guarded(NAME, params.clone(), || {
        let top = CantorPoint::all_max(schedule);
        let wraps = odometer_total(&top) == CantorPoint::zeros(schedule);
        let rejected = odometer_partial(&top) == Err(Error::OdometerDomain);
        Ok(CheckResult::exact(NAME, params.clone(), wraps && rejected))
    })
}

/// prefix_increment is a single n_k-cycle on the level-k words: starting from
/// zero, every value is visited exactly once before the cycle closes.
pub fn check_visit_order(schedules: &[RadixSchedule], max_level: usize, level_cap: u64) -> CheckResult {
    const NAME: &str = "visit_order_full_cycle";
    let base = json!({
        "schedules": schedule_names(schedules),
        "max_level": max_level,
        "level_cap": level_cap,
    });
    guarded(NAME, base.clone(), || {
        for schedule in schedules {
            for (k, size) in levels_within(schedule, level_cap, max_level) {
                let mut visited = vec![false; size as usize];
                let mut current = DigitWord::from_value(0, k, schedule)?;
                for step in 0..size {
                    let v = current.value()? as usize;
                    if visited[v] {
                        return Ok(CheckResult::exact(
                            NAME,
                            json!({
                                "schedule": schedule.to_string(),
                                "k": k, "revisited": v, "step": step,
                            }),
                            false,
                        ));
                    }
                    visited[v] = true;
                    current = prefix_increment(&current)?;
                }
                if current.value()? != 0 || visited.iter().any(|seen| !seen) {
                    return Ok(CheckResult::exact(
                        NAME,
                        json!({ "schedule": schedule.to_string(), "k": k, "cycle_broken": true }),
                        false,
                    ));
                }
            }
        }
        Ok(CheckResult::exact(NAME, base.clone(), true))
    })
}

/// Over T = 10 n_k steps from five distinct starts, every cylinder count c
/// satisfies |c n_k - T| <= n_k^2, an integer form of the frequency bound
/// |c/T - 1/n_k| <= n_k/T. Residual is the worst |c n_k - T| / n_k^2.
pub fn check_birkhoff(schedule: &RadixSchedule, max_level: usize, level_cap: u64) -> CheckResult {
    const NAME: &str = "cylinder_frequency_bound";
    let params = json!({
        "schedule": schedule.to_string(),
        "max_level": max_level,
        "steps_per_size": 10,
        "starts": 5,
    });
    guarded(NAME, params.clone(), || {
        let mut worst = 0.0f64;
        for (k, size) in levels_within(schedule, level_cap, max_level) {
            let steps = 10 * size;
            let mid = DigitWord::from_value(size / 2, k, schedule)?;
            let starts = [
                XPoint::Cantor(CantorPoint::zeros(schedule)),
                XPoint::Cantor(CantorPoint::all_max(schedule)),
                XPoint::Cantor(CantorPoint::new(mid, Tail::Zeros)),
                XPoint::Nat(0),
                XPoint::Nat(7),
            ];
            for start in starts {
                let mut counts = vec![0u64; size as usize];
                let mut current = start;
                for _ in 0..steps {
                    counts[cylinder_index(&current, k, schedule)? as usize] += 1;
                    current = step_x(&current)?;
                }
                let bound = (size as i128) * (size as i128);
                for &count in &counts {
                    let deviation = ((count as i128) * (size as i128) - steps as i128).abs();
                    worst = worst.max(deviation as f64 / bound as f64);
                    if deviation > bound {
                        return Ok(CheckResult::new(
                            NAME,
                            json!({
                                "schedule": schedule.to_string(),
                                "k": k, "deviation": deviation as f64, "bound": bound as f64,
                            }),
                            deviation as f64 / bound as f64,
                            false,
                        ));
                    }
                }
            }
        }
        Ok(CheckResult::new(NAME, params.clone(), worst, true))
    })
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_weights(rng: &mut ChaCha8Rng, max_period: usize) -> Result<PeriodicWeights> {
    let period = rng.random_range(1..=max_period);
    PeriodicWeights::new((0..period).map(|_| random_complex(rng)).collect())
}

/// Conjugating a weighted shift by the diagonal unitary of z multiplies it
/// by z: the residual of U_z S_a U_z^{-1} - z S_a over sampled z and weights.
pub fn check_circle_covariance(
    dim: usize,
    z_count: usize,
    weight_sets: usize,
    eps: f64,
    seed: u64,
) -> CheckResult {
    const NAME: &str = "circle_covariance";
    let params = json!({
        "dim": dim, "z_count": z_count, "weight_sets": weight_sets, "seed": seed,
    });
    guarded(NAME, params.clone(), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0501);
        let zs: Vec<Complex64> = (0..z_count)
            .map(|_| Complex64::cis(std::f64::consts::TAU * rng.random::<f64>()))
            .collect();
        let mut residual = 0.0f64;
        for _ in 0..weight_sets {
            let shift = weighted_shift(&random_weights(&mut rng, 8)?, dim);
            for &z in &zs {
                let diff = &circle_conjugate(z, &shift) - &shift.scale(z);
                residual = residual.max(diff.max_norm());
            }
        }
        Ok(CheckResult::from_residual(NAME, params.clone(), residual, eps))
    })
}

fn band_of(x: &TruncatedOperator, d: i64) -> TruncatedOperator {
    TruncatedOperator::from_fn(x.dim(), |row, col| {
        if row as i64 - col as i64 == d {
            x.entry(row, col)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// With 2N-1 roots of unity, the averaged projection recovers each diagonal
/// band of a random matrix exactly, and the bands sum back to the matrix.
pub fn check_fourier(dim: usize, eps: f64, seed: u64) -> CheckResult {
    const NAME: &str = "fourier_band_projection";
    let params = json!({ "dim": dim, "samples": 2 * dim - 1, "seed": seed });
    guarded(NAME, params.clone(), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0601);
        let x = TruncatedOperator::from_fn(dim, |_, _| random_complex(&mut rng));
        let mut residual = 0.0f64;
        let mut sum = TruncatedOperator::zeros(dim);
        for d in -(dim as i64 - 1)..=(dim as i64 - 1) {
            let component = spectral_component(&x, d)?;
            residual = residual.max((&component - &band_of(&x, d)).max_norm());
            sum = &sum + &component;
        }
        residual = residual.max((&sum - &x).max_norm());
        Ok(CheckResult::from_residual(NAME, params.clone(), residual, eps))
    })
}

/// The degree-zero component of any word in a weighted shift and its adjoint
/// is diagonal.
pub fn check_fixed_component(
    dim: usize,
    trials: usize,
    max_len: usize,
    eps: f64,
    seed: u64,
) -> CheckResult {
    const NAME: &str = "fixed_component_diagonality";
    let params = json!({ "dim": dim, "trials": trials, "max_word_len": max_len, "seed": seed });
    guarded(NAME, params.clone(), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0701);
        let mut residual = 0.0f64;
        for _ in 0..trials {
            let shift = weighted_shift(&random_weights(&mut rng, 6)?, dim);
            let adjoint = shift.adjoint();
            let len = rng.random_range(1..=max_len);
            let mut word = TruncatedOperator::identity(dim);
            for _ in 0..len {
                word = if rng.random::<bool>() {
                    &word * &shift
                } else {
                    &word * &adjoint
                };
            }
            residual = residual.max(spectral_component(&word, 0)?.off_band_max(0));
        }
        Ok(CheckResult::from_residual(NAME, params.clone(), residual, eps))
    })
}

/// The four module identities linking the shift conjugation and its isometric
/// half hold on the leading block for random diagonal a, b and band-one x, y.
pub fn check_regularity(dim: usize, draws: usize, eps: f64, seed: u64) -> CheckResult {
    const NAME: &str = "regularity_identities";
    let params = json!({ "dim": dim, "draws": draws, "seed": seed });
    guarded(NAME, params.clone(), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0801);
        let tol = ToleranceConfig::new(eps);
        let mut residual = 0.0f64;
        for _ in 0..draws {
            let diag = |rng: &mut ChaCha8Rng| {
                let entries: Vec<Complex64> = (0..dim).map(|_| random_complex(rng)).collect();
                TruncatedOperator::diagonal_from(&entries)
            };
            let band = |rng: &mut ChaCha8Rng| {
                let entries: Vec<Complex64> = (0..dim).map(|_| random_complex(rng)).collect();
                TruncatedOperator::from_fn(dim, |row, col| {
                    if row == col + 1 {
                        entries[row]
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            };
            let (a, b) = (diag(&mut rng), diag(&mut rng));
            let (x, y) = (band(&mut rng), band(&mut rng));
            residual = residual.max(regularity_check(&a, &b, &x, &y, &tol)?.max());
        }
        Ok(CheckResult::from_residual(NAME, params.clone(), residual, eps))
    })
}

/// Conjugating the cut-down cylinder projection by the shift lands exactly on
/// the coordinates predicted by adding one to the word: indices
/// j in [k+1, N) with j = value(beta) + 1 mod n_k, whose level-k prefix is
/// prefix_increment(beta).
pub fn check_support_transport(
    schedule: &RadixSchedule,
    max_level: usize,
    dim: usize,
    eps: f64,
) -> CheckResult {
    const NAME: &str = "support_transport_odometer";
    let params = json!({ "schedule": schedule.to_string(), "max_level": max_level, "dim": dim });
    guarded(NAME, params.clone(), || {
        let tol = ToleranceConfig::new(eps);
        for k in 0..=max_level {
            let size = schedule.level_size(k)?;
            for v in 0..size {
                let beta = DigitWord::from_value(v, k, schedule)?;
                let got = support_transport(&beta, dim, &tol)?;
                let residue = (v + 1) % size;
                let expected: BTreeSet<usize> = (0..dim)
                    .filter(|&j| j > k && j as u64 % size == residue)
                    .collect();
                let stepped = prefix_increment(&beta)?;
                let prefixes_match = got
                    .iter()
                    .map(|&j| DigitWord::from_value(j as u64 % size, k, schedule))
                    .all(|prefix| prefix.as_ref() == Ok(&stepped));
                if got != expected || !prefixes_match {
                    return Ok(CheckResult::exact(
                        NAME,
                        json!({
                            "schedule": schedule.to_string(),
                            "k": k, "value": v,
                            "got": got.iter().copied().collect::<Vec<_>>(),
                            "want": expected.iter().copied().collect::<Vec<_>>(),
                        }),
                        false,
                    ));
                }
            }
        }
        Ok(CheckResult::exact(NAME, params.clone(), true))
    })
}

/// The shift conjugation applied to a cylinder projection matches the
/// projection of the incremented word away from coordinate zero, at both the
/// minimal sufficient truncation 2 n_k and the configured one.
pub fn check_quotient_compatibility(
    schedule: &RadixSchedule,
    max_level: usize,
    dim: usize,
    eps: f64,
) -> CheckResult {
    const NAME: &str = "quotient_compatibility";
    let params = json!({ "schedule": schedule.to_string(), "max_level": max_level, "dim": dim });
    guarded(NAME, params.clone(), || {
        let tol = ToleranceConfig::new(eps);
        for k in 0..=max_level {
            let size = schedule.level_size(k)?;
            for v in 0..size {
                let beta = DigitWord::from_value(v, k, schedule)?;
                for n in [2 * size as usize, dim] {
                    if !quotient_compatibility(&beta, n, &tol)? {
                        return Ok(CheckResult::exact(
                            NAME,
                            json!({
                                "schedule": schedule.to_string(),
                                "k": k, "value": v, "dim": n,
                            }),
                            false,
                        ));
                    }
                }
            }
        }
        Ok(CheckResult::exact(NAME, params.clone(), true))
    })
}

/// Conjugation by the shift moves each coordinate projection up by one,
/// bitwise exactly.
pub fn check_delta_shift(dim: usize) -> CheckResult {
    const NAME: &str = "shift_of_minimal_projections";
    let params = json!({ "dim": dim });
    guarded(NAME, params.clone(), || {
        let mut residual = 0.0f64;
        for n in 0..dim - 1 {
            let moved = theta(&delta_diag(n, dim)?);
            residual = residual.max((&moved - &delta_diag(n + 1, dim)?).max_norm());
        }
        Ok(CheckResult::new(NAME, params.clone(), residual, residual == 0.0))
    })
}

/// Topology of the compactified space: neighborhoods nest downward, the
/// natural-number support of (1 - f_k) e_{gamma|k} is exactly the trace of
/// V_k(gamma) on the naturals, and the value sequence n_k - 1 converges to
/// the all-max point.
pub fn check_topology(schedule: &RadixSchedule, max_level: usize, dim: usize) -> CheckResult {
    const NAME: &str = "neighborhood_topology";
    let params = json!({ "schedule": schedule.to_string(), "max_level": max_level, "dim": dim });
    guarded(NAME, params.clone(), || {
        let gammas = [
            CantorPoint::all_max(schedule),
            CantorPoint::zeros(schedule),
            CantorPoint::new(DigitWord::from_value(0, 1, schedule)?, Tail::Max),
        ];
        let fail = |detail: serde_json::Value| Ok(CheckResult::exact(NAME, detail, false));

        for gamma in &gammas {
            for k in 0..max_level {
                let coarse = v_k_neighborhood(gamma, k)?;
                let fine = v_k_neighborhood(gamma, k + 1)?;
                for n in 0..(2 * dim as u64) {
                    let x = XPoint::Nat(n);
                    if fine.contains(&x) && !coarse.contains(&x) {
                        return fail(json!({ "nesting_failed_at_nat": n, "k": k }));
                    }
                }
                let fine_size = schedule.level_size(k + 1)?.min(256);
                for v in 0..fine_size {
                    let word = DigitWord::from_value(v, k + 1, schedule)?;
                    for tail in [Tail::Zeros, Tail::Max] {
                        let x = XPoint::Cantor(CantorPoint::new(word.clone(), tail));
                        if fine.contains(&x) && !coarse.contains(&x) {
                            return fail(json!({ "nesting_failed_at_word": v, "k": k }));
                        }
                    }
                }
            }
        }

        for gamma in &gammas {
            for k in 0..=max_level {
                let word = gamma.truncate(k);
                let cut = &TruncatedOperator::identity(dim) - &f_k_diag(k, dim);
                let projection = &cut * &e_beta_diag(&word, dim)?;
                let support = projection.diagonal_support(0.0);
                let neighborhood = v_k_neighborhood(gamma, k)?;
                let trace: BTreeSet<usize> = (0..dim)
                    .filter(|&n| neighborhood.contains(&XPoint::Nat(n as u64)))
                    .collect();
                if support != trace {
                    return fail(json!({
                        "support_mismatch_at_k": k,
                        "gamma": gamma.to_string(),
                    }));
                }
            }
        }

        let seq: Vec<u64> = (0..=max_level)
            .map(|k| schedule.level_size(k).map(|s| s - 1))
            .collect::<Result<_>>()?;
        let to_max = converges_to(&seq, &CantorPoint::all_max(schedule), max_level)?;
        let stalled = converges_to(&[0, 0, 0, 0], &CantorPoint::zeros(schedule), 1)?;
        if !to_max || stalled {
            return fail(json!({ "convergence_to_all_max": to_max, "constant_converges": stalled }));
        }

        Ok(CheckResult::exact(NAME, params.clone(), true))
    })
}

//! Tilted divisor sums: exact evaluation of Σ_{m <= x} λ^{Ω(m,t)} and the
//! ratio diagnostics for the mean-value upper bounds used by the
//! constructions (Halberstam–Richert form and its prime-cutoff special
//! case), plus the heavy-product majorant and the energy-scale comparators.
//!
//! Sums are partitioned into fixed blocks with compensated per-block
//! accumulation and merged in block order, so results are bit-reproducible
//! at any worker count.

use crate::constants::{derive_params, theta, LOG2};
use crate::error::{Error, Result};
use crate::exec::{kahan_total, map_chunks, KahanSum, Resources};
use crate::products::scan_blocks;
use crate::sieve::FactorSieve;

/// Largest admissible tilt λ.
pub const LAMBDA_CAP: f64 = 1.9;

/// Parameters of one tilted sum Σ_{m <= x_limit} λ^{Ω(m, t)}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TiltParams {
    pub x_limit: u64,
    /// Prime cutoff: only primes p <= t contribute exponent mass.
    pub t: u64,
    pub lambda: f64,
}

impl TiltParams {
    pub fn new(x_limit: u64, t: u64, lambda: f64) -> Result<Self> {
        if x_limit < 1 {
            return Err(Error::Domain("tilted sum needs x >= 1".into()));
        }
        if t < 2 {
            return Err(Error::Domain(format!(
                "prime cutoff t must be >= 2, got {t}"
            )));
        }
        if !(lambda > 0.0 && lambda <= LAMBDA_CAP) {
            return Err(Error::Domain(format!(
                "tilt must lie in (0, {LAMBDA_CAP}], got {lambda}"
            )));
        }
        Ok(TiltParams { x_limit, t, lambda })
    }
}

/// λ^e lookup for e up to the largest Ω reachable in 64 bits.
fn power_table(lambda: f64) -> [f64; 65] {
    let mut table = [1.0f64; 65];
    for e in 1..65 {
        table[e] = table[e - 1] * lambda;
    }
    table
}

/// Exact Σ_{m <= x} λ^{Ω(m, t)}.
pub fn tilted_sum(params: &TiltParams, sieve: &FactorSieve, res: Resources) -> Result<f64> {
    TiltParams::new(params.x_limit, params.t, params.lambda)?;
    if sieve.limit() < params.x_limit {
        return Err(Error::Range {
            what: "tilted sum bound",
            value: params.x_limit,
            limit: sieve.limit(),
        });
    }
    let pow = power_table(params.lambda);
    let t = params.t;
    let blocks = scan_blocks(1, params.x_limit);
    let partials = map_chunks(blocks, res.workers, |(lo, hi)| {
        let mut acc = KahanSum::default();
        for m in lo..=hi {
            let e = sieve
                .big_omega_upto(m, t)
                .expect("m is within the sieve limit");
            acc.add(pow[e as usize]);
        }
        acc.value()
    });
    Ok(kahan_total(partials))
}

/// `tilted_sum / (x · (log t)^{λ-1})`; the mean-value bound says this stays
/// below an absolute constant for t >= 3.
pub fn hr_ratio(params: &TiltParams, sieve: &FactorSieve, res: Resources) -> Result<f64> {
    if params.t < 3 {
        return Err(Error::Domain(format!(
            "ratio needs t >= 3 so (log t)^(λ-1) is meaningful, got t = {}",
            params.t
        )));
    }
    let sum = tilted_sum(params, sieve, res)?;
    let x = params.x_limit as f64;
    Ok(sum / (x * (params.t as f64).ln().powf(params.lambda - 1.0)))
}

/// Exact Σ_{p <= x} 1/p over the sieve's primes, ascending, compensated.
pub fn prime_reciprocal_sum(sieve: &FactorSieve, x: u64) -> Result<f64> {
    if sieve.limit() < x {
        return Err(Error::Range {
            what: "prime sum bound",
            value: x,
            limit: sieve.limit(),
        });
    }
    let mut acc = KahanSum::default();
    for p in sieve.primes().take_while(|&p| p <= x) {
        acc.add(1.0 / p as f64);
    }
    Ok(acc.value())
}

/// Full-strength mean-value ratio for f(m) = λ^{Ω(m)}:
/// `Σ_{m<=x} f(m)` divided by `(x/log x)·exp(Σ_{p<=x} λ/p)`.
/// The prime sum is exact, not an asymptotic stand-in.
pub fn hr_general_ratio(
    x_limit: u64,
    lambda: f64,
    sieve: &FactorSieve,
    res: Resources,
) -> Result<f64> {
    if x_limit < 2 {
        return Err(Error::Domain("mean-value ratio needs x >= 2".into()));
    }
    // t = x makes the cutoff vacuous: Ω(m, x) = Ω(m) for m <= x
    let params = TiltParams::new(x_limit, x_limit, lambda)?;
    let sum = tilted_sum(&params, sieve, res)?;
    let x = x_limit as f64;
    let denom = x / x.ln() * (lambda * prime_reciprocal_sum(sieve, x_limit)?).exp();
    Ok(sum / denom)
}

/// Exact heavy-product count next to its tilted majorant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeavyCountReport {
    pub n: u64,
    /// Ω threshold 2k + h.
    pub threshold: u32,
    /// Exact count of c <= n² with Ω(c) > threshold.
    pub exact: u64,
    /// Σ_{c <= n²} (1/log 2)^{Ω(c) - threshold}, evaluated exactly; this
    /// dominates the count term by term since 1/log 2 > 1.
    pub majorant: f64,
    /// Closed form n²·(log n)^{-2θ}·(log 2)^h.
    pub closed_form: f64,
}

/// Count heavy products c <= n² exactly and evaluate the tilted majorant
/// over the same range. Needs a sieve covering n².
pub fn heavy_count_report(n: u64, sieve: &FactorSieve, res: Resources) -> Result<HeavyCountReport> {
    let params = derive_params(n)?;
    let top = n.checked_mul(n).ok_or(Error::Range {
        what: "squared scan bound",
        value: n,
        limit: u32::MAX as u64,
    })?;
    if sieve.limit() < top {
        return Err(Error::Range {
            what: "squared scan bound",
            value: top,
            limit: sieve.limit(),
        });
    }
    let threshold = 2 * params.k + params.h;
    let lambda = 1.0 / LOG2;
    let pow = power_table(lambda);
    let blocks = scan_blocks(1, top);
    let parts = map_chunks(blocks, res.workers, |(lo, hi)| {
        let mut count = 0u64;
        let mut acc = KahanSum::default();
        for c in lo..=hi {
            let e = sieve.big_omega(c).expect("c is within the sieve limit");
            if e > threshold {
                count += 1;
            }
            acc.add(pow[e as usize]);
        }
        (count, acc.value())
    });
    let exact: u64 = parts.iter().map(|&(c, _)| c).sum();
    let tilt_total = kahan_total(parts.iter().map(|&(_, s)| s));
    let majorant = tilt_total * lambda.powi(-(threshold as i32));
    let nf = n as f64;
    let closed_form = nf * nf * nf.ln().powf(-2.0 * theta()) * LOG2.powi(params.h as i32);
    Ok(HeavyCountReport {
        n,
        threshold,
        exact,
        majorant,
        closed_form,
    })
}

/// Scale comparators for the energy bound at cross-section T and summed
/// over dyadic T.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyScale {
    /// `n² / ((log n)^{2θ} · log T)`.
    pub per_scale: f64,
    /// `n² · log_2 n / (log n)^{2θ}`, the dyadic total.
    pub dyadic_total: f64,
}

/// Evaluate the energy-bound comparators at one (n, T).
pub fn energy_scale_evaluate(n: u64, t: u64) -> Result<EnergyScale> {
    if t < 4 {
        return Err(Error::Domain(format!(
            "scale cross-section needs T >= 4, got {t}"
        )));
    }
    let nf = n as f64;
    let l2 = crate::constants::iterated_log(nf, 2)?;
    if l2 <= 0.0 {
        return Err(Error::Domain(format!("log_2 {n} is not positive")));
    }
    let scale = nf * nf / nf.ln().powf(2.0 * theta());
    Ok(EnergyScale {
        per_scale: scale / (t as f64).ln(),
        dyadic_total: scale * l2,
    })
}

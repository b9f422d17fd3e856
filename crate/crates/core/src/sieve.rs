//! Smallest-prime-factor sieve and the prime-factor statistics built on it:
//! ω(n), Ω(n), their cutoff variants ω(n,t) / Ω(n,t), squarefreeness, the
//! j-th smallest prime factor, and the two membership conditions used by
//! the integer constructions.

use crate::constants::LOG4;
use crate::error::{Error, Result};
use crate::exec::DEFAULT_MEM_BUDGET;

/// Precomputed table of the smallest prime factor of every integer up to a
/// limit, enabling O(log n) factorization of any n in range.
///
/// Entries are 32-bit, so the limit is capped at `u32::MAX`. A finished
/// sieve is immutable and safe to share across any number of readers;
/// construction itself is single-threaded.
pub struct FactorSieve {
    limit: u64,
    spf: Vec<u32>,
}

impl FactorSieve {
    /// Build a sieve for `2 <= n <= limit` under the default memory budget.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_budget(limit, DEFAULT_MEM_BUDGET)
    }

    pub fn build_with_budget(limit: u64, mem_budget: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!(
                "sieve limit must be >= 2, got {limit}"
            )));
        }
        if limit > u32::MAX as u64 {
            return Err(Error::Range {
                what: "sieve limit",
                value: limit,
                limit: u32::MAX as u64,
            });
        }
        let required = 4 * (limit + 1);
        if required > mem_budget {
            return Err(Error::Capacity {
                what: "smallest-prime-factor table",
                required,
                budget: mem_budget,
            });
        }

        let mut spf = vec![0u32; (limit + 1) as usize];
        for i in 2..=limit {
            if spf[i as usize] == 0 {
                spf[i as usize] = i as u32;
                // composites j >= i^2 with smallest factor i
                if i * i <= limit {
                    let mut j = i * i;
                    while j <= limit {
                        if spf[j as usize] == 0 {
                            spf[j as usize] = i as u32;
                        }
                        j += i;
                    }
                }
            }
        }
        Ok(FactorSieve { limit, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    fn check(&self, n: u64, what: &'static str) -> Result<()> {
        if n > self.limit {
            return Err(Error::Range {
                what,
                value: n,
                limit: self.limit,
            });
        }
        Ok(())
    }

    /// Smallest prime factor of `n` (2 <= n <= limit).
    pub fn smallest_factor(&self, n: u64) -> Result<u64> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "smallest factor needs n >= 2, got {n}"
            )));
        }
        self.check(n, "smallest factor argument")?;
        Ok(self.spf[n as usize] as u64)
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.spf[n as usize] as u64 == n
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(move |&n| self.spf[n as usize] as u64 == n)
    }

    /// Full factorization of `1 <= n <= limit` (n = 1 gives an empty list).
    pub fn factorize(&self, n: u64) -> Result<FactorSignature> {
        let mut factors = Vec::new();
        self.factorize_into(n, &mut factors)?;
        Ok(FactorSignature { n, factors })
    }

    /// Allocation-free variant of [`factorize`](Self::factorize) for hot
    /// scan loops; `out` is cleared and refilled with (prime, exponent)
    /// pairs, primes ascending.
    pub fn factorize_into(&self, n: u64, out: &mut Vec<(u32, u32)>) -> Result<()> {
        if n == 0 {
            return Err(Error::Domain("factorization needs n >= 1".into()));
        }
        self.check(n, "factorization argument")?;
        out.clear();
        let mut m = n as u32;
        while m > 1 {
            let p = self.spf[m as usize];
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        Ok(())
    }

    /// Ω(n): number of prime factors counted with multiplicity.
    pub fn big_omega(&self, n: u64) -> Result<u32> {
        if n == 0 {
            return Err(Error::Domain("Ω needs n >= 1".into()));
        }
        self.check(n, "Ω argument")?;
        let mut m = n as u32;
        let mut count = 0;
        while m > 1 {
            let p = self.spf[m as usize];
            while m % p == 0 {
                m /= p;
                count += 1;
            }
        }
        Ok(count)
    }

    /// ω(n): number of distinct prime factors.
    pub fn omega(&self, n: u64) -> Result<u32> {
        if n == 0 {
            return Err(Error::Domain("ω needs n >= 1".into()));
        }
        self.check(n, "ω argument")?;
        let mut m = n as u32;
        let mut count = 0;
        while m > 1 {
            let p = self.spf[m as usize];
            while m % p == 0 {
                m /= p;
            }
            count += 1;
        }
        Ok(count)
    }

    /// Ω(n, t): total exponent mass of the primes p <= t dividing n.
    /// The cutoff applies to the prime, not the prime power, so the smallest-
    /// factor walk can stop at the first factor above `t`.
    pub fn big_omega_upto(&self, n: u64, t: u64) -> Result<u32> {
        if n == 0 {
            return Err(Error::Domain("Ω(n,t) needs n >= 1".into()));
        }
        self.check(n, "Ω(n,t) argument")?;
        let mut m = n as u32;
        let mut count = 0;
        while m > 1 {
            let p = self.spf[m as usize];
            if p as u64 > t {
                break;
            }
            while m % p == 0 {
                m /= p;
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Sorted (prime, exponent) factorization of one integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSignature {
    n: u64,
    factors: Vec<(u32, u32)>,
}

impl FactorSignature {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// (prime, exponent) pairs, primes strictly ascending, exponents >= 1.
    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    /// ω(n): distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Ω(n): prime factors with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// ω(n, t): distinct prime factors p <= t.
    pub fn omega_upto(&self, t: u64) -> u32 {
        self.factors
            .iter()
            .take_while(|&&(p, _)| p as u64 <= t)
            .count() as u32
    }

    /// Ω(n, t): exponent mass of primes p <= t (cutoff on p, not on p^a).
    pub fn big_omega_upto(&self, t: u64) -> u32 {
        self.factors
            .iter()
            .take_while(|&&(p, _)| p as u64 <= t)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// The j-th smallest distinct prime factor, 1-indexed.
    pub fn jth_prime_factor(&self, j: u32) -> Result<u64> {
        if j == 0 || j > self.omega() {
            return Err(Error::Range {
                what: "prime factor index",
                value: j as u64,
                limit: self.omega() as u64,
            });
        }
        Ok(self.factors[(j - 1) as usize].0 as u64)
    }

    /// Rebuild n from the signature (test oracle for factorization).
    pub fn recompose(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u64).pow(e))
            .product()
    }

    /// Growth condition: `ω(n, t) <= log_2 t / log 4 + slack` for every real
    /// `t >= 3` (equivalently every t in [3, N] for any N >= n).
    pub fn growth_condition_holds(&self, slack: f64) -> bool {
        growth_bound_holds(&self.factors, slack)
    }

    /// Prime-position condition: `log_2 p_j >= (j - 2)·log 4` for every
    /// `1 <= j <= ω(n)`. Strictly stronger than the growth condition at
    /// slack 2.
    pub fn prime_position_condition(&self) -> bool {
        prime_position_holds(&self.factors)
    }
}

/// Slice-level growth check shared by [`FactorSignature`] and the block
/// membership scans.
///
/// ω(n, t) only jumps at the prime factors and the right side increases in
/// t, so the infimum over real t is attained at t = 3 and at t = p_j for
/// each factor p_j >= 3; checking those points is equivalent to checking
/// every real t >= 3.
pub(crate) fn growth_bound_holds(factors: &[(u32, u32)], slack: f64) -> bool {
    let bound = |t: f64| t.ln().ln() / LOG4 + slack;
    let upto3 = factors.iter().take_while(|&&(p, _)| p <= 3).count();
    if upto3 as f64 > bound(3.0) {
        return false;
    }
    for (idx, &(p, _)) in factors.iter().enumerate() {
        if p > 3 && (idx + 1) as f64 > bound(p as f64) {
            return false;
        }
    }
    true
}

pub(crate) fn prime_position_holds(factors: &[(u32, u32)]) -> bool {
    factors.iter().enumerate().all(|(idx, &(p, _))| {
        let j = (idx + 1) as f64;
        (p as f64).ln().ln() >= (j - 2.0) * LOG4
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spf_table_small() {
        let sieve = FactorSieve::build(10).unwrap();
        let expect = [
            (2, 2),
            (3, 3),
            (4, 2),
            (5, 5),
            (6, 2),
            (7, 7),
            (8, 2),
            (9, 3),
            (10, 2),
        ];
        for (n, spf) in expect {
            assert_eq!(sieve.smallest_factor(n).unwrap(), spf, "spf[{n}]");
        }
    }

    #[test]
    fn smallest_case() {
        let sieve = FactorSieve::build(2).unwrap();
        assert_eq!(sieve.smallest_factor(2).unwrap(), 2);
        assert!(FactorSieve::build(1).is_err());
    }

    #[test]
    fn prime_fixed_points_match_brute_force() {
        // independent primality check by trial division
        fn is_prime_brute(n: u64) -> bool {
            n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
        }
        let sieve = FactorSieve::build(100).unwrap();
        let fixed = (2..=100).filter(|&n| sieve.is_prime(n)).count();
        let brute = (2..=100).filter(|&n| is_prime_brute(n)).count();
        assert_eq!(fixed, brute);
        assert_eq!(fixed, 25);
    }

    #[test]
    fn composite_spf_at_most_sqrt() {
        let sieve = FactorSieve::build(10_000).unwrap();
        for n in 2..=10_000u64 {
            if !sieve.is_prime(n) {
                let p = sieve.smallest_factor(n).unwrap();
                assert!(p * p <= n, "spf[{n}] = {p}");
            }
        }
    }

    #[test]
    fn factorize_examples() {
        let sieve = FactorSieve::build(100).unwrap();
        assert_eq!(sieve.factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(sieve.factorize(1).unwrap().factors(), &[]);
        assert_eq!(sieve.factorize(97).unwrap().factors(), &[(97, 1)]);
        assert!(sieve.factorize(0).is_err());
        assert!(sieve.factorize(101).is_err());
    }

    #[test]
    fn statistics_of_60() {
        let sieve = FactorSieve::build(60).unwrap();
        let sig = sieve.factorize(60).unwrap();
        assert_eq!(sig.omega(), 3);
        assert_eq!(sig.big_omega(), 4);
        assert_eq!(sig.omega_upto(3), 2);
        assert_eq!(sig.big_omega_upto(3), 3);
        assert_eq!(sig.omega_upto(1), 0);
        assert_eq!(sig.big_omega_upto(1), 0);
        assert_eq!(sig.jth_prime_factor(3).unwrap(), 5);
        assert!(sig.jth_prime_factor(4).is_err());
        assert!(sig.jth_prime_factor(0).is_err());
        assert!(!sig.is_squarefree());
        // alloc-free paths agree
        assert_eq!(sieve.big_omega(60).unwrap(), 4);
        assert_eq!(sieve.omega(60).unwrap(), 3);
        assert_eq!(sieve.big_omega_upto(60, 3).unwrap(), 3);
    }

    #[test]
    fn growth_condition_examples() {
        let sieve = FactorSieve::build(3000).unwrap();
        // primes pass with slack 2
        assert!(sieve.factorize(53).unwrap().growth_condition_holds(2.0));
        // 2310 = 2·3·5·7·11: at j = 5, p_5 = 11, ln ln 11 / ln 4 + 2 ≈ 2.63 < 5
        assert!(!sieve.factorize(2310).unwrap().growth_condition_holds(2.0));
    }

    #[test]
    fn prime_position_examples() {
        let sieve = FactorSieve::build(100).unwrap();
        // ω <= 2 is always satisfied
        assert!(sieve.factorize(6).unwrap().prime_position_condition());
        assert!(sieve.factorize(97).unwrap().prime_position_condition());
        assert!(sieve.factorize(1).unwrap().prime_position_condition());
        // 30 = 2·3·5: j = 3 needs ln ln 5 >= ln 4, which fails
        assert!(!sieve.factorize(30).unwrap().prime_position_condition());
    }

    #[test]
    fn counting_invariants_to_1e5() {
        let sieve = FactorSieve::build(100_000).unwrap();
        for n in 1..=100_000u64 {
            let sig = sieve.factorize(n).unwrap();
            assert!(sig.omega() <= sig.big_omega());
            assert_eq!(sig.omega_upto(sieve.limit()), sig.omega());
            assert_eq!(sig.big_omega_upto(1), 0);
        }
    }

    #[test]
    fn capacity_budget_enforced() {
        match FactorSieve::build_with_budget(1_000_000, 1024) {
            Err(e) => assert!(e.is_capacity()),
            Ok(_) => panic!("budget should have been exceeded"),
        }
    }
}

//! Exact product-set computations: the n-by-n multiplication table size,
//! general product sets, per-product pair multiplicities, and multiplicative
//! energy.
//!
//! Everything here is exact. Work is partitioned by contiguous spans of the
//! product value range so equal products always land in the same chunk; the
//! spans are derived from sizes and the memory budget only, and chunk
//! results are merged in chunk order, so outputs are identical for any
//! worker count.
//!
//! Integer sets are represented as strictly ascending `&[u64]` slices with
//! elements in `[1, 2^32 - 1]`, so every pairwise product fits in a `u64`.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::{kahan_total, map_chunks, plan_by_weight, plan_spans, KahanSum, Resources};

/// Flat (single-span) table marking is used up to this `n`; larger tables
/// are always range-partitioned.
const FLAT_TABLE_LIMIT: u64 = 1 << 15;

/// Largest element allowed in a product-set input.
pub const MAX_ELEMENT: u64 = u32::MAX as u64;

/// Validate the set contract: strictly ascending, elements in
/// `[1, MAX_ELEMENT]`.
pub fn validate_set(xs: &[u64]) -> Result<()> {
    let mut last = 0u64;
    for (i, &x) in xs.iter().enumerate() {
        if x == 0 {
            return Err(Error::InvalidSet(format!("element {i} is zero")));
        }
        if x > MAX_ELEMENT {
            return Err(Error::Range {
                what: "set element",
                value: x,
                limit: MAX_ELEMENT,
            });
        }
        if x <= last {
            return Err(Error::InvalidSet(format!(
                "not strictly ascending at index {i}: {last} then {x}"
            )));
        }
        last = x;
    }
    Ok(())
}

struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn new(len: u64) -> Self {
        Bitset {
            words: vec![0u64; len.div_ceil(64) as usize],
        }
    }

    #[inline]
    fn set(&mut self, i: u64) {
        self.words[(i >> 6) as usize] |= 1u64 << (i & 63);
    }

    fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn and_not_count(&self, other: &Bitset) -> u64 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & !b).count_ones() as u64)
            .sum()
    }
}

/// Span plan for bitmap marking over the product range `[1, top]`.
/// A single flat span is used when `n` is small and the bitmap fits the
/// budget; otherwise the range is partitioned by the per-chunk allowance.
fn bitmap_plan(
    n: u64,
    top: u64,
    bitmaps: u64,
    res: Resources,
    what: &'static str,
) -> Result<Vec<(u64, u64)>> {
    let flat_bytes = top.div_ceil(8).saturating_mul(bitmaps);
    if n <= FLAT_TABLE_LIMIT && flat_bytes <= res.mem_budget {
        return Ok(vec![(1, top)]);
    }
    let chunk_bits = (res.chunk_bytes(what)? / bitmaps).saturating_mul(8).max(1);
    plan_by_weight(
        1,
        top,
        top as u128,
        chunk_bits as u128,
        what,
        res.mem_budget,
    )
}

fn check_table_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("table size needs n >= 1".into()));
    }
    if n > MAX_ELEMENT {
        return Err(Error::Range {
            what: "table size n",
            value: n,
            limit: MAX_ELEMENT,
        });
    }
    Ok(())
}

/// Mark every product `a·b` (1 <= a <= b <= n) falling in `[lo, hi]` and
/// return the number of distinct values marked.
fn table_span_count(n: u64, lo: u64, hi: u64) -> u64 {
    let mut bits = Bitset::new(hi - lo + 1);
    let mut a = 1u64;
    while a <= n && a <= hi / a {
        let b_lo = a.max(lo.div_ceil(a));
        let b_hi = n.min(hi / a);
        let mut p = a * b_lo;
        for _ in b_lo..=b_hi {
            bits.set(p - lo);
            p += a;
        }
        a += 1;
    }
    bits.count()
}

/// Number of distinct products in the n-by-n multiplication table.
pub fn multiplication_table_size(n: u64, res: Resources) -> Result<u64> {
    check_table_n(n)?;
    let plan = bitmap_plan(n, n * n, 1, res, "table bitmap")?;
    let counts = map_chunks(plan, res.workers, |(lo, hi)| table_span_count(n, lo, hi));
    Ok(counts.into_iter().sum())
}

/// Exact size data for one product set A·B.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductSetSummary {
    /// Number of distinct products.
    pub size: u64,
    /// |A|·|B|, the ordered pair count.
    pub pair_count: u128,
    /// Largest ordered-pair multiplicity of any single product.
    pub max_tau: u64,
}

/// Exact `|AB|` plus pair statistics for two sets.
pub fn product_set_summary(a: &[u64], b: &[u64], res: Resources) -> Result<ProductSetSummary> {
    validate_set(a)?;
    validate_set(b)?;
    let pair_count = a.len() as u128 * b.len() as u128;
    if pair_count == 0 {
        return Ok(ProductSetSummary {
            size: 0,
            pair_count,
            max_tau: 0,
        });
    }
    let lo = a[0] * b[0];
    let hi = a[a.len() - 1] * b[b.len() - 1];
    let per_chunk_pairs = (res.chunk_bytes("product buffer")? / 8).max(1) as u128;
    let plan = plan_by_weight(
        lo,
        hi,
        pair_count,
        per_chunk_pairs,
        "product buffer",
        res.mem_budget,
    )?;
    let parts = map_chunks(plan, res.workers, |(span_lo, span_hi)| {
        summary_span(a, b, span_lo, span_hi)
    });
    let mut size = 0;
    let mut max_tau = 0;
    for (distinct, widest) in parts {
        size += distinct;
        max_tau = max_tau.max(widest);
    }
    Ok(ProductSetSummary {
        size,
        pair_count,
        max_tau,
    })
}

/// Distinct count and largest run among ordered products of `a × b` that
/// fall in `[lo, hi]`.
fn summary_span(a: &[u64], b: &[u64], lo: u64, hi: u64) -> (u64, u64) {
    let mut products: Vec<u64> = Vec::new();
    for &x in a {
        let y_lo = lo.div_ceil(x);
        let y_hi = hi / x;
        if y_lo > y_hi {
            continue;
        }
        let start = b.partition_point(|&y| y < y_lo);
        let end = b.partition_point(|&y| y <= y_hi);
        for &y in &b[start..end] {
            products.push(x * y);
        }
    }
    products.sort_unstable();
    let mut distinct = 0u64;
    let mut max_run = 0u64;
    let mut i = 0;
    while i < products.len() {
        let v = products[i];
        let mut j = i + 1;
        while j < products.len() && products[j] == v {
            j += 1;
        }
        distinct += 1;
        max_run = max_run.max((j - i) as u64);
        i = j;
    }
    (distinct, max_run)
}

/// Ordered-pair multiplicities per product value: `tau(x)` counts the
/// ordered pairs `(b1, b2)` in B×B with `b1·b2 = x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductTally {
    entries: HashMap<u64, u64>,
}

impl ProductTally {
    /// Multiplicity of one product value (0 if absent).
    pub fn tau(&self, x: u64) -> u64 {
        self.entries.get(&x).copied().unwrap_or(0)
    }

    /// Number of distinct product values.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Σ tau over all products; equals |B|² by construction.
    pub fn total_pairs(&self) -> u128 {
        self.entries.values().map(|&t| t as u128).sum()
    }

    /// Σ tau² over all products: the multiplicative energy.
    pub fn energy(&self) -> u128 {
        self.entries.values().map(|&t| t as u128 * t as u128).sum()
    }

    /// (product, tau) pairs sorted by product value.
    pub fn iter_sorted(&self) -> Vec<(u64, u64)> {
        let mut v: Vec<_> = self.entries.iter().map(|(&x, &t)| (x, t)).collect();
        v.sort_unstable();
        v
    }

    /// Collapse to the tau-value histogram.
    pub fn histogram(&self) -> TauHistogram {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for &t in self.entries.values() {
            *counts.entry(t).or_insert(0) += 1;
        }
        TauHistogram {
            counts: counts.into_iter().collect(),
        }
    }
}

/// Direct-enumeration threshold for the materialized tally.
const TALLY_DIRECT_PAIRS: u128 = 1 << 20;

/// Materialized per-product multiplicity map for B×B (ordered pairs).
///
/// Needs memory proportional to the number of distinct products; for large
/// sets where only aggregate statistics are wanted, use [`tau_histogram`],
/// which streams in bounded memory.
pub fn tau_counts(b: &[u64], res: Resources) -> Result<ProductTally> {
    validate_set(b)?;
    let pairs = (b.len() as u128) * (b.len() as u128);
    // ~32 bytes per occupied hash-map slot, up to one distinct product per
    // unordered pair
    let required = ((pairs / 2 + b.len() as u128 + 1) * 32).min(u64::MAX as u128) as u64;
    if required > res.mem_budget {
        return Err(Error::Capacity {
            what: "materialized product tally (use the tau histogram instead)",
            required,
            budget: res.mem_budget,
        });
    }
    let mut entries: HashMap<u64, u64> = HashMap::new();
    if pairs <= TALLY_DIRECT_PAIRS {
        for &x in b {
            for &y in b {
                *entries.entry(x * y).or_insert(0) += 1;
            }
        }
    } else if !b.is_empty() {
        // sort-and-run-length per value span, sequentially so only one
        // span's product buffer is live next to the map itself
        for (lo, hi) in tau_span_plan(b, res)? {
            visit_tau_span(b, lo, hi, |product, tau| {
                entries.insert(product, tau);
            });
        }
    }
    let tally = ProductTally { entries };
    debug_assert_eq!(tally.total_pairs(), pairs);
    Ok(tally)
}

/// Distribution of tau values over distinct products: `counts` holds
/// `(tau, number of products with that tau)`, tau ascending.
///
/// This is the bounded-memory summary of [`ProductTally`]: energy, the
/// distinct-product count, and the thinning predictor only depend on it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TauHistogram {
    counts: Vec<(u64, u64)>,
}

impl TauHistogram {
    pub fn counts(&self) -> &[(u64, u64)] {
        &self.counts
    }

    /// Σ tau·count = |B|².
    pub fn total_pairs(&self) -> u128 {
        self.counts
            .iter()
            .map(|&(t, c)| t as u128 * c as u128)
            .sum()
    }

    /// Σ tau²·count: the multiplicative energy (exact quadruple count).
    pub fn energy(&self) -> u128 {
        self.counts
            .iter()
            .map(|&(t, c)| t as u128 * t as u128 * c as u128)
            .sum()
    }

    /// Number of distinct products.
    pub fn distinct_products(&self) -> u64 {
        self.counts.iter().map(|&(_, c)| c).sum()
    }

    pub fn max_tau(&self) -> u64 {
        self.counts.last().map(|&(t, _)| t).unwrap_or(0)
    }

    /// Expected number of distinct products surviving independent thinning
    /// with inclusion probability rho: `Σ_x (1 - (1 - rho²)^(tau(x)/2))`.
    pub fn expected_thinned_products(&self, rho: f64) -> f64 {
        let base = 1.0 - rho * rho;
        let mut acc = KahanSum::default();
        for &(t, c) in &self.counts {
            acc.add(c as f64 * (1.0 - base.powf(t as f64 / 2.0)));
        }
        acc.value()
    }
}

/// Fixed value-span plan for walking B×B by product value.
fn tau_span_plan(b: &[u64], res: Resources) -> Result<Vec<(u64, u64)>> {
    let strict_pairs = (b.len() as u128) * (b.len() as u128 - 1) / 2 + b.len() as u128;
    let lo = b[0] * b[0];
    let hi = b[b.len() - 1] * b[b.len() - 1];
    let per_chunk_pairs = (res.chunk_bytes("product buffer")? / 8).max(1) as u128;
    plan_by_weight(
        lo,
        hi,
        strict_pairs,
        per_chunk_pairs,
        "product buffer",
        res.mem_budget,
    )
}

/// Visit the (product, tau) runs of B×B inside one value span, ascending by
/// product value. Pairs are enumerated once per unordered pair (y > x) and
/// doubled; diagonal squares contribute one. Nothing beyond the span's
/// product buffer is materialized.
fn visit_tau_span<F: FnMut(u64, u64)>(b: &[u64], lo: u64, hi: u64, mut visit: F) {
    let mut products: Vec<u64> = Vec::new();
    let mut squares: Vec<u64> = Vec::new();
    for (i, &x) in b.iter().enumerate() {
        let y_lo = lo.div_ceil(x);
        let y_hi = hi / x;
        if y_lo > y_hi {
            continue;
        }
        if x >= y_lo && x <= y_hi {
            squares.push(x * x);
        }
        let rest = &b[i + 1..];
        let start = rest.partition_point(|&y| y < y_lo);
        let end = rest.partition_point(|&y| y <= y_hi);
        for &y in &rest[start..end] {
            products.push(x * y);
        }
    }
    products.sort_unstable();
    // squares were pushed in ascending x order, hence already sorted
    let (mut pi, mut si) = (0usize, 0usize);
    while pi < products.len() || si < squares.len() {
        let v = match (products.get(pi), squares.get(si)) {
            (Some(&p), Some(&s)) => p.min(s),
            (Some(&p), None) => p,
            (None, Some(&s)) => s,
            (None, None) => unreachable!(),
        };
        let mut run = 0u64;
        while pi < products.len() && products[pi] == v {
            run += 1;
            pi += 1;
        }
        let mut diag = 0u64;
        while si < squares.len() && squares[si] == v {
            diag += 1;
            si += 1;
        }
        visit(v, 2 * run + diag);
    }
}

/// Tau-value histogram of B×B in bounded memory: each span folds into its
/// own small tau→count map before the ordered merge.
pub fn tau_histogram(b: &[u64], res: Resources) -> Result<TauHistogram> {
    validate_set(b)?;
    if b.is_empty() {
        return Ok(TauHistogram::default());
    }
    let plan = tau_span_plan(b, res)?;
    let parts = map_chunks(plan, res.workers, |(lo, hi)| {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        visit_tau_span(b, lo, hi, |_, tau| {
            *counts.entry(tau).or_insert(0) += 1;
        });
        counts
    });
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for part in parts {
        for (tau, c) in part {
            *counts.entry(tau).or_insert(0) += c;
        }
    }
    let hist = TauHistogram {
        counts: counts.into_iter().collect(),
    };
    debug_assert_eq!(
        hist.total_pairs(),
        (b.len() as u128) * (b.len() as u128),
        "tau mass must equal |B|^2"
    );
    Ok(hist)
}

/// Multiplicative energy `E(B)`: the exact number of quadruples
/// `(b1, b2, b3, b4)` in B⁴ with `b1·b2 = b3·b4`, computed as Σ tau².
pub fn multiplicative_energy(b: &[u64], res: Resources) -> Result<u128> {
    Ok(tau_histogram(b, res)?.energy())
}

/// Energy measurement against its `(log_2 n)^4` scale factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyDiagnostics {
    pub energy: u128,
    pub set_size: u64,
    /// `(log_2 n)^4`.
    pub bound_factor: f64,
    /// `energy / (set_size² · bound_factor)`.
    pub ratio: f64,
}

/// Energy of B contained in `[1, n]` together with the ratio against
/// `|B|²(log_2 n)^4`.
pub fn energy_diagnostics(b: &[u64], n: u64, res: Resources) -> Result<EnergyDiagnostics> {
    validate_set(b)?;
    if let Some(&max) = b.last() {
        if max > n {
            return Err(Error::Range {
                what: "set element beyond n",
                value: max,
                limit: n,
            });
        }
    }
    let l2 = crate::constants::iterated_log(n as f64, 2)?;
    if l2 <= 0.0 {
        return Err(Error::Domain(format!("log_2 {n} is not positive")));
    }
    let energy = multiplicative_energy(b, res)?;
    let set_size = b.len() as u64;
    let bound_factor = l2.powi(4);
    let denom = (set_size as f64) * (set_size as f64) * bound_factor;
    Ok(EnergyDiagnostics {
        energy,
        set_size,
        bound_factor,
        ratio: energy as f64 / denom,
    })
}

/// Exact coverage of the n-by-n table by the self-product set A·A.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableCoverage {
    /// Distinct products in the full table.
    pub table_size: u64,
    /// Distinct products of A·A.
    pub product_size: u64,
    /// Table products not hit by A·A.
    pub missing: u64,
}

/// Count the table, A·A, and the difference in one pass over the product
/// range. `missing` is counted from the table-minus-A·A bits, so
/// `table_size == product_size + missing` is a genuine cross-check rather
/// than an identity of the code path.
pub fn table_coverage(n: u64, a: &[u64], res: Resources) -> Result<TableCoverage> {
    check_table_n(n)?;
    validate_set(a)?;
    if let Some(&max) = a.last() {
        if max > n {
            return Err(Error::Range {
                what: "set element beyond n",
                value: max,
                limit: n,
            });
        }
    }
    let plan = bitmap_plan(n, n * n, 2, res, "coverage bitmaps")?;
    let parts = map_chunks(plan, res.workers, |(lo, hi)| coverage_span(n, a, lo, hi));
    let mut cov = TableCoverage {
        table_size: 0,
        product_size: 0,
        missing: 0,
    };
    for (t, p, m) in parts {
        cov.table_size += t;
        cov.product_size += p;
        cov.missing += m;
    }
    Ok(cov)
}

fn coverage_span(n: u64, a: &[u64], lo: u64, hi: u64) -> (u64, u64, u64) {
    let len = hi - lo + 1;
    let mut table = Bitset::new(len);
    let mut x = 1u64;
    while x <= n && x <= hi / x {
        let b_lo = x.max(lo.div_ceil(x));
        let b_hi = n.min(hi / x);
        let mut p = x * b_lo;
        for _ in b_lo..=b_hi {
            table.set(p - lo);
            p += x;
        }
        x += 1;
    }
    let mut prod = Bitset::new(len);
    for (i, &x) in a.iter().enumerate() {
        let y_lo = lo.div_ceil(x);
        let y_hi = hi / x;
        if y_lo > y_hi {
            continue;
        }
        let tail = &a[i..]; // y >= x covers each unordered pair once
        let start = tail.partition_point(|&y| y < y_lo);
        let end = tail.partition_point(|&y| y <= y_hi);
        for &y in &tail[start..end] {
            prod.set(x * y - lo);
        }
    }
    (table.count(), prod.count(), table.and_not_count(&prod))
}

/// Mean of an f64 iterator in fixed order (helper for experiment summaries).
pub fn ordered_mean<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = KahanSum::default();
    let mut count = 0u64;
    for v in values {
        acc.add(v);
        count += 1;
    }
    if count == 0 {
        f64::NAN
    } else {
        acc.value() / count as f64
    }
}

/// Sample standard deviation in fixed order.
pub fn ordered_stddev(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mean = ordered_mean(values.iter().copied());
    let var =
        kahan_total(values.iter().map(|v| (v - mean) * (v - mean))) / (values.len() - 1) as f64;
    var.sqrt()
}

// Internal reuse: membership scans need the fixed scan-block plan.
pub(crate) fn scan_blocks(lo: u64, hi: u64) -> Vec<(u64, u64)> {
    plan_spans(lo, hi, crate::exec::SCAN_BLOCK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res() -> Resources {
        Resources::default()
    }

    #[test]
    fn table_size_spot_values() {
        assert_eq!(multiplication_table_size(1, res()).unwrap(), 1);
        // n = 4: {1,2,3,4,6,8,9,12,16}
        assert_eq!(multiplication_table_size(4, res()).unwrap(), 9);
        assert_eq!(multiplication_table_size(10, res()).unwrap(), 42);
        assert!(multiplication_table_size(0, res()).is_err());
    }

    #[test]
    fn chunked_strategy_matches_flat() {
        let flat = multiplication_table_size(600, res()).unwrap();
        // 600² = 360000 bits won't fit a 2 MiB budget's flat path once split
        // across 64 chunks, forcing the partitioned strategy
        let chunked = multiplication_table_size(600, Resources::with_budget(2 << 20)).unwrap();
        assert_eq!(flat, chunked);
    }

    #[test]
    fn impossible_budget_is_capacity_error() {
        let err = multiplication_table_size(4096, Resources::with_budget(4096)).unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn product_set_identity_element() {
        let b: Vec<u64> = vec![3, 5, 7, 11];
        let s = product_set_summary(&[1], &b, res()).unwrap();
        assert_eq!(s.size, 4);
        assert_eq!(s.pair_count, 4);
        assert_eq!(s.max_tau, 1);
    }

    #[test]
    fn product_set_small_example() {
        // {1,2,3}·{1,2,3} = {1,2,3,4,6,9}
        let s = product_set_summary(&[1, 2, 3], &[1, 2, 3], res()).unwrap();
        assert_eq!(s.size, 6);
        assert_eq!(s.pair_count, 9);
        // 6 = 2·3 = 3·2
        assert_eq!(s.max_tau, 2);
    }

    #[test]
    fn product_set_matches_table() {
        for n in [1u64, 7, 32, 100] {
            let full: Vec<u64> = (1..=n).collect();
            let s = product_set_summary(&full, &full, res()).unwrap();
            assert_eq!(s.size, multiplication_table_size(n, res()).unwrap());
        }
    }

    #[test]
    fn tally_small_examples() {
        let t = tau_counts(&[1], res()).unwrap();
        assert_eq!(t.tau(1), 1);
        assert_eq!(t.len(), 1);

        let t = tau_counts(&[2, 3], res()).unwrap();
        assert_eq!(t.tau(4), 1);
        assert_eq!(t.tau(6), 2);
        assert_eq!(t.tau(9), 1);
        assert_eq!(t.total_pairs(), 4);
        assert_eq!(t.energy(), 6);

        let t = tau_counts(&[2, 3, 4, 6], res()).unwrap();
        assert_eq!(t.tau(12), 4); // 2·6, 6·2, 3·4, 4·3
        assert_eq!(t.energy(), 36);
        assert_eq!(t.total_pairs(), 16);
    }

    #[test]
    fn histogram_agrees_with_tally() {
        let b: Vec<u64> = vec![2, 3, 4, 6, 8, 9, 12, 16, 18, 24];
        let tally = tau_counts(&b, res()).unwrap();
        let hist = tau_histogram(&b, res()).unwrap();
        assert_eq!(tally.histogram(), hist);
        assert_eq!(hist.total_pairs(), 100);
        assert_eq!(hist.energy(), tally.energy());
        assert_eq!(hist.distinct_products(), tally.len() as u64);
        assert_eq!(multiplicative_energy(&b, res()).unwrap(), tally.energy());
    }

    #[test]
    fn histogram_chunking_is_exact() {
        let b: Vec<u64> = (1..=256).map(|i| i * 3 + 1).collect();
        let wide = tau_histogram(&b, res()).unwrap();
        // tiny per-chunk buffers force many value spans
        let narrow = tau_histogram(&b, Resources::with_budget(1 << 19)).unwrap();
        assert_eq!(wide, narrow);
    }

    #[test]
    fn energy_of_singleton() {
        assert_eq!(multiplicative_energy(&[1], res()).unwrap(), 1);
        let d = energy_diagnostics(&[1], 100, res()).unwrap();
        let l2 = (100f64).ln().ln();
        assert!((d.ratio - 1.0 / l2.powi(4)).abs() < 1e-12);
    }

    #[test]
    fn coverage_partition_identity() {
        let a: Vec<u64> = (1..=50).filter(|&m| m % 3 != 0).collect();
        let cov = table_coverage(50, &a, res()).unwrap();
        assert_eq!(
            cov.table_size,
            multiplication_table_size(50, res()).unwrap()
        );
        assert_eq!(cov.table_size, cov.product_size + cov.missing);
        let aa = product_set_summary(&a, &a, res()).unwrap();
        assert_eq!(cov.product_size, aa.size);
    }

    #[test]
    fn set_validation_rejects_bad_input() {
        assert!(validate_set(&[1, 2, 2]).is_err());
        assert!(validate_set(&[2, 1]).is_err());
        assert!(validate_set(&[0, 1]).is_err());
        assert!(validate_set(&[1, u32::MAX as u64 + 1]).is_err());
        assert!(validate_set(&[]).is_ok());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let b: Vec<u64> = (1..=300).map(|i| 2 * i + 5).collect();
        let base = tau_histogram(&b, Resources::with_workers(1)).unwrap();
        for w in [2usize, 8] {
            assert_eq!(tau_histogram(&b, Resources::with_workers(w)).unwrap(), base);
        }
        let m1 = multiplication_table_size(
            3000,
            Resources {
                mem_budget: 2 << 20,
                workers: 1,
            },
        )
        .unwrap();
        let m8 = multiplication_table_size(
            3000,
            Resources {
                mem_budget: 2 << 20,
                workers: 8,
            },
        )
        .unwrap();
        assert_eq!(m1, m8);
    }
}

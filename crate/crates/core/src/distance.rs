//! Minimum-weight checks: exhaustive enumeration, random sampling, and a
//! parity-check column-independence test for codes too large to enumerate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::encoder::{Code, GeneratorMatrix};
use crate::gf::{Element, Field};
use crate::linalg::Matrix;

/// Default cap on the number of codewords an exhaustive scan may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Name of the generator behind every seeded routine in this crate.
pub const PRNG_NAME: &str = "ChaCha8";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("exhaustive scan needs {q}^{k} codewords, budget is {budget}")]
    BudgetExceeded { q: u64, k: usize, budget: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub q: u64,
    pub n: usize,
    pub d: u64,
    pub designed: u64,
    pub observed: u64,
    pub exhaustive: bool,
    pub enumerated: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prng: Option<&'static str>,
}

impl DistanceReport {
    fn new(code: &Code, observed: u64, exhaustive: bool, enumerated: u64) -> Self {
        let spec = code.spec();
        DistanceReport {
            q: spec.q(),
            n: spec.n(),
            d: spec.d(),
            designed: spec.d(),
            observed,
            exhaustive,
            enumerated,
            seed: None,
            prng: None,
        }
    }
}

/// Minimum weight over every nonzero codeword.
pub fn min_weight_exhaustive(code: &Code, budget: u64) -> Result<DistanceReport, DistanceError> {
    let g = code.generator_matrix();
    let (observed, enumerated) = min_weight_of(&g, budget)?;
    Ok(DistanceReport::new(code, observed, true, enumerated))
}

/// Minimum weight over the nonzero codewords of any generator matrix.
/// Returns the weight and the number of codewords visited.
///
/// Messages are base-q counters with coefficient 0 as the lowest digit; the
/// top digits split the space into chunks that are scanned in parallel and
/// merged with a min.
pub fn min_weight_of(g: &GeneratorMatrix, budget: u64) -> Result<(u64, u64), DistanceError> {
    let field = g.field();
    let q = field.order() as u64;
    let k = g.rows();
    let total = u32::try_from(k)
        .ok()
        .and_then(|k| q.checked_pow(k))
        .filter(|&t| t - 1 <= budget)
        .ok_or(DistanceError::BudgetExceeded { q, k, budget })?;

    // multiples[r][c] = (element c) * row r
    let multiples: Vec<Vec<Vec<Element>>> = (0..k)
        .map(|r| {
            (0..q as u32)
                .map(|c| g.matrix().row(r).iter().map(|&x| field.mul(Element::new(c), x)).collect())
                .collect()
        })
        .collect();

    let mut top = 0;
    while top < k && q.pow(top as u32) < 256 {
        top += 1;
    }
    let low = k - top;
    let chunks = q.pow(top as u32);

    let min = (0..chunks)
        .into_par_iter()
        .map(|prefix| scan_chunk(field, &multiples, g.cols(), low, prefix))
        .min()
        .unwrap_or(u64::MAX);
    Ok((min, total - 1))
}

fn scan_chunk(field: &Field, multiples: &[Vec<Vec<Element>>], n: usize, low: usize, prefix: u64) -> u64 {
    let q = field.order() as u64;
    let k = multiples.len();
    let add_into = |dst: &mut Vec<Element>, src: &[Element], row: &[Element]| {
        for ((d, &s), &r) in dst.iter_mut().zip(src).zip(row) {
            *d = field.add(s, r);
        }
    };

    // partial[j] = sum of the prefix rows plus rows j.. of the low digits
    let mut partial = vec![vec![Element::ZERO; n]; low + 1];
    let mut rest = prefix;
    for r in low..k {
        let c = (rest % q) as usize;
        rest /= q;
        let base = partial[low].clone();
        add_into(&mut partial[low], &base, &multiples[r][c]);
    }
    for j in (0..low).rev() {
        partial[j] = partial[j + 1].clone();
    }

    let mut digits = vec![0usize; low];
    let mut best = u64::MAX;
    let mut skip_zero = prefix == 0;
    loop {
        if skip_zero {
            skip_zero = false;
        } else {
            let w = partial[0].iter().filter(|e| !e.is_zero()).count() as u64;
            best = best.min(w);
        }
        let mut j = 0;
        while j < low && digits[j] as u64 == q - 1 {
            digits[j] = 0;
            j += 1;
        }
        if j == low {
            return best;
        }
        digits[j] += 1;
        for t in (0..=j).rev() {
            let (head, tail) = partial.split_at_mut(t + 1);
            add_into(&mut head[t], &tail[0], &multiples[t][digits[t]]);
        }
    }
}

/// Minimum weight over `trials` random nonzero messages; an upper bound on
/// the true minimum distance.
pub fn min_weight_sampled(code: &Code, trials: u64, seed: u64) -> DistanceReport {
    let q = code.field().order();
    let k = code.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = u64::MAX;
    for _ in 0..trials {
        let coeffs = loop {
            let v: Vec<Element> = (0..k).map(|_| Element::new(rng.gen_range(0..q))).collect();
            if v.iter().any(|e| !e.is_zero()) {
                break v;
            }
        };
        let msg = code.message(coeffs).expect("sampled coefficients are in range");
        let w = code.encode(&msg).expect("length checked").weight() as u64;
        best = best.min(w);
    }
    let mut report = DistanceReport::new(code, best, false, trials);
    report.seed = Some(seed);
    report.prng = Some(PRNG_NAME);
    report
}

/// Parity-check matrix `H` with `G H^T = 0`, built from the reduced row
/// echelon form of `G`. Rows of `G` must be independent.
pub fn parity_check_matrix(g: &GeneratorMatrix) -> Matrix {
    let field = g.field();
    let (rref, pivots) = g.matrix().rref(field);
    let n = g.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut h = Matrix::zeros(free.len(), n);
    let minus_one = field.neg(Element::ONE);
    for (row, &c) in free.iter().enumerate() {
        // x_c = sum_r x_{pivot_r} * rref[r][c]
        for (r, &p) in pivots.iter().enumerate() {
            h.set(row, p, rref.get(r, c));
        }
        h.set(row, c, minus_one);
    }
    h
}

/// True iff every nonzero codeword has weight at least `d`, decided by
/// checking that every `d - 1` columns of the parity-check matrix are
/// independent. Visits `C(N, d-1)` column subsets, which must fit `budget`.
pub fn distance_at_least(g: &GeneratorMatrix, d: u64, budget: u64) -> Result<bool, DistanceError> {
    let field = g.field();
    let n = g.cols();
    let t = d.saturating_sub(1) as usize;
    if t == 0 {
        return Ok(true);
    }
    if t > n {
        return Ok(false);
    }
    let mut subsets: u128 = 1;
    for i in 0..t as u128 {
        subsets = subsets * (n as u128 - i) / (i + 1);
        if subsets > budget as u128 {
            return Err(DistanceError::BudgetExceeded { q: field.order() as u64, k: g.rows(), budget });
        }
    }
    let h = parity_check_matrix(g);
    if h.rows() < t {
        // fewer than t checks: some t columns are always dependent
        return Ok(false);
    }
    let ht = h.transpose();
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        if ht.select_rows(&idx).rank(field) < t {
            return Ok(false);
        }
        // next combination
        let mut i = t;
        while i > 0 && idx[i - 1] == n - t + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return Ok(true);
        }
        idx[i - 1] += 1;
        for j in i..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

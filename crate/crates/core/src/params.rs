//! Code parameters: the staircase degree region, `K`, `N - K`, and the
//! two-dimensional rate lower bound.
//!
//! A multi-index `(i_1, ..., i_n)` belongs to the region of a `(q, n, d)`
//! code iff
//!
//! ```text
//! i_1 <= q - ceil(d / ((q - i_2)(q - i_3)...(q - i_n)))
//! ```
//!
//! For `n = 1` the product is empty and the rule reduces to `i_1 <= q - d`.
//! A negative right-hand side admits no `i_1`, which is how the nested
//! limits on `i_2, ..., i_n` fall out without being tracked separately.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::gf::Field;

/// Largest code length `q^n` accepted by [`CodeSpec::new`].
pub const MAX_LENGTH: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("dimension n must be at least 1")]
    ZeroDimension,
    #[error("designed distance must be at least 1")]
    ZeroDistance,
    #[error("empty degree region: d = {d} exceeds the code length {length}")]
    EmptyRegion { d: u64, length: u64 },
    #[error("code length {q}^{n} exceeds the supported maximum 2^24")]
    TooLong { q: u64, n: usize },
    #[error("the rate bound is only defined for n = 2, got n = {0}")]
    UnsupportedDimension(usize),
}

/// `ceil(a / b)` in integer arithmetic.
#[inline]
pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// One code of the family: field, number of variables and designed distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    field: Field,
    n: usize,
    d: u64,
}

impl CodeSpec {
    pub fn new(field: Field, n: usize, d: u64) -> Result<Self, ParamsError> {
        if n == 0 {
            return Err(ParamsError::ZeroDimension);
        }
        if d == 0 {
            return Err(ParamsError::ZeroDistance);
        }
        let q = field.order() as u64;
        let length = u32::try_from(n)
            .ok()
            .and_then(|e| q.checked_pow(e))
            .filter(|&l| l <= MAX_LENGTH)
            .ok_or(ParamsError::TooLong { q, n })?;
        if d > length {
            return Err(ParamsError::EmptyRegion { d, length });
        }
        Ok(CodeSpec { field, n, d })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Code length `N = q^n`.
    pub fn length(&self) -> u64 {
        self.q().pow(self.n as u32)
    }

    /// Largest admissible `i_1` for the given `(i_2, ..., i_n)`, or a negative
    /// number when no `i_1` is admissible.
    pub fn first_index_bound(&self, outer: &[u32]) -> i64 {
        first_index_bound(self.q(), self.d, outer)
    }
}

fn first_index_bound(q: u64, d: u64, outer: &[u32]) -> i64 {
    let prod: u64 = outer.iter().map(|&i| q - i as u64).product();
    q as i64 - ceil_div(d, prod) as i64
}

/// Calls `f` on every `(i_2, ..., i_n)` in ascending lexicographic order with
/// `i_n` outermost (so `i_2` varies fastest).
fn for_each_outer(q: u64, n: usize, mut f: impl FnMut(&[u32])) {
    let mut outer = vec![0u32; n - 1];
    loop {
        f(&outer);
        let mut j = 0;
        while j < outer.len() && outer[j] as u64 == q - 1 {
            outer[j] = 0;
            j += 1;
        }
        if j == outer.len() {
            return;
        }
        outer[j] += 1;
    }
}

/// The set of coefficient multi-indices of a code, in canonical message order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRegion {
    spec: CodeSpec,
    // Flat, stride n; member r is members[r*n..(r+1)*n] = (i_1, ..., i_n).
    members: Vec<u32>,
}

impl DegreeRegion {
    /// Members are ordered ascending lexicographically on
    /// `(i_n, i_{n-1}, ..., i_2, i_1)`.
    pub fn build(spec: &CodeSpec) -> Result<Self, ParamsError> {
        let n = spec.n;
        let mut members = Vec::new();
        for_each_outer(spec.q(), n, |outer| {
            let bound = spec.first_index_bound(outer);
            for i1 in 0..=bound.max(-1) {
                members.push(i1 as u32);
                members.extend_from_slice(outer);
            }
        });
        if members.is_empty() {
            return Err(ParamsError::EmptyRegion { d: spec.d, length: spec.length() });
        }
        Ok(DegreeRegion { spec: spec.clone(), members })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    /// The code dimension `K`.
    pub fn len(&self) -> usize {
        self.members.len() / self.spec.n
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, r: usize) -> &[u32] {
        let n = self.spec.n;
        &self.members[r * n..(r + 1) * n]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u32]> {
        self.members.chunks_exact(self.spec.n)
    }

    /// Position of a multi-index in the canonical order.
    pub fn position(&self, index: &[u32]) -> Option<usize> {
        if index.len() != self.spec.n {
            return None;
        }
        let key = |m: &[u32]| m.iter().rev().copied().collect::<Vec<_>>();
        let target = key(index);
        let members: Vec<&[u32]> = self.iter().collect();
        members.binary_search_by(|m| key(m).cmp(&target)).ok()
    }

    pub fn contains(&self, index: &[u32]) -> bool {
        self.position(index).is_some()
    }

    /// `(i_2, ..., i_n)` together with the maximal `i_1`, for every outer
    /// index that admits at least `i_1 = 0`. For `n = 2` this is the `K_m`
    /// column of the information-symbol table.
    pub fn profile(&self) -> Vec<(Vec<u32>, u32)> {
        let mut out = Vec::new();
        for_each_outer(self.spec.q(), self.spec.n, |outer| {
            let b = self.spec.first_index_bound(outer);
            if b >= 0 {
                out.push((outer.to_vec(), b as u32));
            }
        });
        out
    }
}

/// `K`, counted from the bounds without materialising the region.
pub fn info_count(spec: &CodeSpec) -> u64 {
    let mut k = 0u64;
    for_each_outer(spec.q(), spec.n, |outer| {
        k += (spec.first_index_bound(outer) + 1).max(0) as u64;
    });
    k
}

/// `N - K`.
pub fn check_count(spec: &CodeSpec) -> u64 {
    spec.length() - info_count(spec)
}

/// Check-symbol count for `d <= q`, which does not depend on `q`:
/// the sum over `(i_2, ..., i_n)` in `[1, d-1]^(n-1)` of
/// `ceil(d / (i_2 ... i_n)) - 1`.
pub fn check_count_small_d(d: u64, n: usize) -> u64 {
    fn walk(d: u64, depth: usize, prod: u64) -> u64 {
        if depth == 0 {
            return ceil_div(d, prod) - 1;
        }
        // once prod >= d every remaining term is ceil(d/prod) - 1 = 0
        (1..d)
            .take_while(|&i| prod * i < d)
            .map(|i| walk(d, depth - 1, prod * i))
            .sum()
    }
    if d == 0 || n == 0 {
        return 0;
    }
    walk(d, n - 1, 1)
}

/// Lower bound on `K/N` for a two-dimensional code:
/// `1 - d/N - (d/N) * sum_{m=0}^{floor(q - d/q)} 1/(q - m)`.
pub fn rate_lower_bound(spec: &CodeSpec) -> Result<BigRational, ParamsError> {
    if spec.n != 2 {
        return Err(ParamsError::UnsupportedDimension(spec.n));
    }
    let (q, d) = (spec.q(), spec.d);
    let big = |v: u64| BigInt::from(v);
    let dn = BigRational::new(big(d), big(q * q));
    // floor(q - d/q) = q - ceil(d/q); never reaches q since d >= 1.
    let upper = q - ceil_div(d, q);
    let harmonic = (0..=upper)
        .map(|m| BigRational::new(big(1), big(q - m)))
        .fold(BigRational::from_integer(big(0)), |acc, t| acc + t);
    Ok(BigRational::from_integer(big(1)) - &dn - &dn * harmonic)
}

/// Parameter dump of one code, as emitted by `mdrs params`.
#[derive(Debug, Serialize)]
pub struct ParamsReport {
    pub q: u64,
    pub n: usize,
    pub d: u64,
    #[serde(rename = "N")]
    pub length: u64,
    #[serde(rename = "K")]
    pub dimension: u64,
    #[serde(rename = "checkSymbols")]
    pub check_symbols: u64,
    pub region: Vec<Vec<u32>>,
}

impl ParamsReport {
    pub fn new(region: &DegreeRegion) -> Self {
        let spec = region.spec();
        let k = region.len() as u64;
        ParamsReport {
            q: spec.q(),
            n: spec.n(),
            d: spec.d(),
            length: spec.length(),
            dimension: k,
            check_symbols: spec.length() - k,
            region: region.iter().map(<[u32]>::to_vec).collect(),
        }
    }
}

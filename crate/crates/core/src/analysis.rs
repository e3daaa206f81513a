//! Rate/distance comparisons: product codes, dimension sweeps, shortening
//! and the Gilbert-Varshamov bound, plus the curve data behind them.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::encoder::{Code, GeneratorMatrix};
use crate::gf::{Field, GfError};
use crate::linalg::Matrix;
use crate::params::{self, CodeSpec, DegreeRegion, ParamsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("component distance {d} must lie in [1, {q}]")]
    InvalidComponent { q: u64, d: u64 },
    #[error("cannot shorten a dimension-{k} code by {s} positions")]
    InvalidShortening { k: usize, s: usize },
    #[error("shortened length {length} exceeds the base length {base}")]
    ShortenedTooLong { length: u64, base: u64 },
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Product of two copies of the length-`q` nonsystematic RS code with
/// distance `d_component`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProductParams {
    pub length: u64,
    pub dimension: u64,
    pub checks: u64,
    pub distance: u64,
    /// `(d - 1)(2n - d + 1)` with `n = q`, `d = d_component`.
    pub checks_closed_form: u64,
}

pub fn product_code_checks(q: u64, d_component: u64) -> Result<ProductParams, AnalysisError> {
    if d_component == 0 || d_component > q {
        return Err(AnalysisError::InvalidComponent { q, d: d_component });
    }
    let k = q - d_component + 1;
    let length = q * q;
    let dimension = k * k;
    let closed = (d_component - 1) * (2 * q - d_component + 1);
    Ok(ProductParams {
        length,
        dimension,
        checks: length - dimension,
        distance: d_component * d_component,
        checks_closed_form: closed,
    })
}

/// `1 - K/N` of the product code as a function of `d/N`:
/// `(sqrt(d/N) - 1/q)(2 - sqrt(d/N) + 1/q)`.
pub fn product_rate_relation(q: u64, d_over_n: f64) -> f64 {
    let s = d_over_n.sqrt();
    let inv_q = 1.0 / q as f64;
    (s - inv_q) * (2.0 - s + inv_q)
}

/// The same relation evaluated exactly at `d/N = (d_component/q)^2`, where
/// the square root is rational.
pub fn product_rate_relation_exact(q: u64, d_component: u64) -> BigRational {
    let r = |a: u64, b: u64| BigRational::new(a.into(), b.into());
    let s = r(d_component, q);
    let inv_q = r(1, q);
    (&s - &inv_q) * (r(2, 1) - &s + &inv_q)
}

/// Textual form of the Gilbert-Varshamov variant used by [`gv_dimension`].
pub const GV_FORMULA: &str =
    "largest k with sum_{i=0}^{d-2} C(N-1,i)(q-1)^i < q^(N-k) (Varshamov linear existence bound)";

/// Largest `k` such that `sum_{i=0}^{d-2} C(N-1, i) (q-1)^i < q^(N-k)`;
/// zero if no `k >= 0` qualifies.
pub fn gv_dimension(length: u64, d: u64, q: u64) -> u64 {
    let mut sum = BigUint::zero();
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    for i in 0..d.saturating_sub(1) {
        if i > 0 {
            if i > length - 1 {
                break;
            }
            binom = binom * (length - i) / i;
            power *= q - 1;
        }
        sum += &binom * &power;
    }
    let mut redundancy = 0u64;
    let mut q_pow = BigUint::one();
    while q_pow <= sum {
        q_pow *= q;
        redundancy += 1;
    }
    length.saturating_sub(redundancy)
}

/// A code shortened on `s` information positions.
#[derive(Clone, Debug)]
pub struct ShortenedCode {
    pub base: CodeSpec,
    pub s: usize,
    pub length: usize,
    pub dimension: usize,
    /// Lower bound on the minimum distance, inherited from the base code.
    pub designed_distance: u64,
    /// Coordinates of the base code that survive, ascending.
    pub kept: Vec<usize>,
    pub generator: GeneratorMatrix,
}

/// Shortens on the last `s` positions of the first information set (the
/// leftmost `K` independent columns of `G`): keeps the subcode that vanishes
/// there and deletes those coordinates.
pub fn shorten(code: &Code, s: usize) -> Result<ShortenedCode, AnalysisError> {
    let k = code.dimension();
    if s >= k {
        return Err(AnalysisError::InvalidShortening { k, s });
    }
    let g = code.generator_matrix();
    let field = g.field().clone();
    // Systematic on the information set: row r is the codeword equal to 1 at
    // pivots[r] and 0 at every other pivot.
    let (systematic, pivots) = g.matrix().rref(&field);
    let dropped = &pivots[k - s..];
    let kept: Vec<usize> = (0..code.length()).filter(|c| !dropped.contains(c)).collect();
    let rows: Vec<usize> = (0..k - s).collect();
    let matrix: Matrix = systematic.select_rows(&rows).select_columns(&kept);
    Ok(ShortenedCode {
        base: code.spec().clone(),
        s,
        length: kept.len(),
        dimension: k - s,
        designed_distance: code.spec().d(),
        kept,
        generator: GeneratorMatrix::new(field, matrix),
    })
}

/// One sample of a rate/distance curve. Ratios are kept exact.
#[derive(Clone, Debug, PartialEq)]
pub struct RateCurvePoint {
    pub series: String,
    pub d: u64,
    pub length: u64,
    /// `None` for analytic series whose `K` is not an integer.
    pub dimension: Option<u64>,
    pub d_over_n: BigRational,
    pub k_over_n: BigRational,
}

impl RateCurvePoint {
    fn counted(series: &str, d: u64, length: u64, k: u64) -> Self {
        RateCurvePoint {
            series: series.to_owned(),
            d,
            length,
            dimension: Some(k),
            d_over_n: BigRational::new(d.into(), length.into()),
            k_over_n: BigRational::new(k.into(), length.into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Dim2,
    DimSweep,
    ProductCompare,
    GvCompare,
}

impl std::str::FromStr for CurveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dim2" => Ok(CurveKind::Dim2),
            "dim-sweep" => Ok(CurveKind::DimSweep),
            "product-compare" => Ok(CurveKind::ProductCompare),
            "gv-compare" => Ok(CurveKind::GvCompare),
            other => Err(format!("unknown curve kind `{other}`")),
        }
    }
}

fn series_dims(q: u64, n: usize, label: &str) -> Result<Vec<RateCurvePoint>, AnalysisError> {
    let field = Field::with_order(q)?;
    let length = q.pow(n as u32);
    (3..=length)
        .map(|d| {
            let spec = CodeSpec::new(field.clone(), n, d)?;
            Ok(RateCurvePoint::counted(label, d, length, params::info_count(&spec)))
        })
        .collect()
}

/// Base `(q, 2, d)` code shortened to `length`, for every `d >= 3` that
/// leaves at least one information symbol. Returns `(d, K')`.
pub fn shortened_dimensions(q: u64, length: u64) -> Result<Vec<(u64, u64)>, AnalysisError> {
    let field = Field::with_order(q)?;
    let base_len = q * q;
    if length > base_len {
        return Err(AnalysisError::ShortenedTooLong { length, base: base_len });
    }
    let s = base_len - length;
    let mut out = Vec::new();
    for d in 3..=base_len {
        let k = params::info_count(&CodeSpec::new(field.clone(), 2, d)?);
        if k <= s {
            break;
        }
        out.push((d, k - s));
    }
    Ok(out)
}

/// Shortened code against the GV dimension at one `(N, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GvComparison {
    #[serde(rename = "N")]
    pub length: u64,
    pub d: u64,
    pub k_shortened: u64,
    pub k_gv: u64,
    pub relation: &'static str,
}

pub fn gv_comparisons(q: u64, lengths: &[u64]) -> Result<Vec<GvComparison>, AnalysisError> {
    let mut out = Vec::new();
    for &length in lengths {
        for (d, k) in shortened_dimensions(q, length)? {
            let k_gv = gv_dimension(length, d, q);
            let relation = match k.cmp(&k_gv) {
                std::cmp::Ordering::Greater => "above",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Less => "below",
            };
            out.push(GvComparison { length, d, k_shortened: k, k_gv, relation });
        }
    }
    Ok(out)
}

/// Curve data for the requested comparison. Series appear in a fixed order;
/// within a series points are ordered by `d`.
///
/// - `Dim2`: exact 2-D `K/N` for `d = 3..=q^2` and the analytic lower bound
///   (only where it is non-negative).
/// - `DimSweep`: one exact series per entry of `dims`.
/// - `ProductCompare`: exact 2-D series and the product code at
///   `d = d_c^2`, `d_c = 2..=q`.
/// - `GvCompare`: for each entry of `lengths`, the shortened 2-D code and the
///   GV dimension at the same `(N, d)`.
pub fn emit_curves(kind: CurveKind, q: u64, dims: &[usize], lengths: &[u64]) -> Result<Vec<RateCurvePoint>, AnalysisError> {
    let mut points = Vec::new();
    match kind {
        CurveKind::Dim2 => {
            points.extend(series_dims(q, 2, &format!("2D q={q}"))?);
            let field = Field::with_order(q)?;
            let label = format!("bound q={q}");
            for d in 3..=q * q {
                let b = params::rate_lower_bound(&CodeSpec::new(field.clone(), 2, d)?)?;
                if b >= BigRational::zero() {
                    points.push(RateCurvePoint {
                        series: label.clone(),
                        d,
                        length: q * q,
                        dimension: None,
                        d_over_n: BigRational::new(d.into(), (q * q).into()),
                        k_over_n: b,
                    });
                }
            }
        }
        CurveKind::DimSweep => {
            for &n in dims {
                points.extend(series_dims(q, n, &format!("{n}D q={q}"))?);
            }
        }
        CurveKind::ProductCompare => {
            points.extend(series_dims(q, 2, &format!("2D q={q}"))?);
            let label = format!("product q={q}");
            for dc in 2..=q {
                let p = product_code_checks(q, dc)?;
                points.push(RateCurvePoint::counted(&label, p.distance, p.length, p.dimension));
            }
        }
        CurveKind::GvCompare => {
            for &length in lengths {
                let shortened = shortened_dimensions(q, length)?;
                let label = format!("shortened N={length}");
                for &(d, k) in &shortened {
                    points.push(RateCurvePoint::counted(&label, d, length, k));
                }
                let label = format!("GV N={length}");
                for &(d, _) in &shortened {
                    points.push(RateCurvePoint::counted(&label, d, length, gv_dimension(length, d, q)));
                }
            }
        }
    }
    Ok(points)
}

pub const CSV_HEADER: &str = "series,d,N,K,d_num,d_den,k_num,k_den,d_over_N,k_over_N";

/// CSV with one row per point, LF line endings. The `K` column is empty for
/// analytic series.
pub fn curves_csv(points: &[RateCurvePoint]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in points {
        let k = p.dimension.map(|k| k.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.6},{:.6}",
            p.series,
            p.d,
            p.length,
            k,
            p.d_over_n.numer(),
            p.d_over_n.denom(),
            p.k_over_n.numer(),
            p.k_over_n.denom(),
            p.d_over_n.to_f64().unwrap_or(f64::NAN),
            p.k_over_n.to_f64().unwrap_or(f64::NAN),
        )
        .unwrap();
    }
    out
}

/// One column block of the information-symbol table: `K_m` for every `m`
/// that admits a coefficient, and the total `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfoColumn {
    pub d: u64,
    #[serde(rename = "K_m")]
    pub k_m: Vec<u32>,
    #[serde(rename = "K")]
    pub k: u64,
}

/// Two-dimensional `K_m` profiles for `q = 5`, `d = 3..=10`.
pub fn info_table() -> Vec<InfoColumn> {
    let field = Field::new(5, 1).expect("GF(5)");
    (3..=10)
        .map(|d| {
            let spec = CodeSpec::new(field.clone(), 2, d).expect("d <= 25");
            let region = DegreeRegion::build(&spec).expect("nonempty");
            InfoColumn {
                d,
                k_m: region.profile().into_iter().map(|(_, b)| b).collect(),
                k: region.len() as u64,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub d: u64,
    /// Check-symbol counts for `n = 2, 3, 4, 5`.
    pub checks: Vec<u64>,
}

/// Check-symbol counts for `d <= q`, `d = 2..=16`, `n = 2..=5`.
pub fn check_table() -> Vec<CheckRow> {
    (2..=16)
        .map(|d| CheckRow { d, checks: (2..=5).map(|n| params::check_count_small_d(d, n)).collect() })
        .collect()
}

pub fn render_info_table(cols: &[InfoColumn]) -> String {
    let mut out = String::from("q=5, n=2\n");
    for c in cols {
        let km: Vec<String> = c.k_m.iter().map(u32::to_string).collect();
        writeln!(out, "d={:<3} K_m=[{}] K={}", c.d, km.join(","), c.k).unwrap();
    }
    out
}

pub fn render_check_table(rows: &[CheckRow]) -> String {
    let mut out = String::from("   d    n=2    n=3    n=4    n=5\n");
    for r in rows {
        write!(out, "{:>4}", r.d).unwrap();
        for c in &r.checks {
            write!(out, " {c:>6}").unwrap();
        }
        out.push('\n');
    }
    out
}

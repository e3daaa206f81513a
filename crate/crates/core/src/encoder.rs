//! Evaluation encoder: a message is the coefficient list of an `n`-variate
//! polynomial `f` supported on the degree region, and its codeword is `f`
//! evaluated at every point of `GF(q)^n`.
//!
//! Coordinate `c` of a codeword is the point `(beta_{k_1}, ..., beta_{k_n})`
//! with `c = k_1 + k_2 q + ... + k_n q^(n-1)`, where `beta` is the canonical
//! element enumeration of [`Field::elements`].

use thiserror::Error;

use crate::gf::{Element, Field, GfError};
use crate::linalg::Matrix;
use crate::params::{CodeSpec, DegreeRegion, ParamsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("point has {got} coordinates, code has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// The `K` information symbols, one per region member in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Message(Vec<Element>);

impl Message {
    pub fn coeffs(&self) -> &[Element] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Element> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub(crate) fn message_unchecked(coeffs: Vec<Element>) -> Message {
    Message(coeffs)
}

/// The `N = q^n` evaluations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword(Vec<Element>);

impl Codeword {
    pub fn symbols(&self) -> &[Element] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Element> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nonzero symbols.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|e| !e.is_zero()).count()
    }
}

/// `K x N` matrix whose row `r` holds the evaluations of the `r`-th region
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    field: Field,
    matrix: Matrix,
}

impl GeneratorMatrix {
    pub fn new(field: Field, matrix: Matrix) -> Self {
        GeneratorMatrix { field, matrix }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `K`.
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    /// `N`.
    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank(&self.field)
    }

    /// `msg * G`.
    pub fn encode(&self, msg: &[Element]) -> Result<Vec<Element>, EncodeError> {
        if msg.len() != self.rows() {
            return Err(EncodeError::LengthMismatch { expected: self.rows(), got: msg.len() });
        }
        Ok(self.matrix.vec_mul(&self.field, msg))
    }
}

/// A concrete code: spec, degree region and evaluation points.
#[derive(Clone, Debug)]
pub struct Code {
    spec: CodeSpec,
    region: DegreeRegion,
    betas: Vec<Element>,
}

impl Code {
    pub fn new(spec: CodeSpec) -> Result<Self, ParamsError> {
        let region = DegreeRegion::build(&spec)?;
        let betas = spec.field().elements();
        Ok(Code { spec, region, betas })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn field(&self) -> &Field {
        self.spec.field()
    }

    pub fn region(&self) -> &DegreeRegion {
        &self.region
    }

    /// `K`.
    pub fn dimension(&self) -> usize {
        self.region.len()
    }

    /// `N`.
    pub fn length(&self) -> usize {
        self.spec.length() as usize
    }

    /// The point `(beta_{k_1}, ..., beta_{k_n})` of coordinate `c`.
    pub fn point(&self, c: usize) -> Vec<Element> {
        let q = self.betas.len();
        let mut rest = c;
        (0..self.spec.n())
            .map(|_| {
                let k = rest % q;
                rest /= q;
                self.betas[k]
            })
            .collect()
    }

    /// Checks length and range of raw coefficients.
    pub fn message(&self, coeffs: Vec<Element>) -> Result<Message, EncodeError> {
        if coeffs.len() != self.dimension() {
            return Err(EncodeError::LengthMismatch { expected: self.dimension(), got: coeffs.len() });
        }
        for &c in &coeffs {
            self.field().check(c)?;
        }
        Ok(Message(coeffs))
    }

    pub fn codeword(&self, symbols: Vec<Element>) -> Result<Codeword, EncodeError> {
        if symbols.len() != self.length() {
            return Err(EncodeError::LengthMismatch { expected: self.length(), got: symbols.len() });
        }
        for &s in &symbols {
            self.field().check(s)?;
        }
        Ok(Codeword(symbols))
    }

    pub fn encode(&self, msg: &Message) -> Result<Codeword, EncodeError> {
        if msg.len() != self.dimension() {
            return Err(EncodeError::LengthMismatch { expected: self.dimension(), got: msg.len() });
        }
        let symbols = (0..self.length())
            .map(|c| self.eval_block(msg.coeffs(), 0, self.dimension(), self.spec.n() - 1, &self.point(c)))
            .collect();
        Ok(Codeword(symbols))
    }

    /// Evaluates the polynomial with the given coefficients at `point` by
    /// nested Horner evaluation, `x_n` outermost.
    pub fn evaluate(&self, coeffs: &[Element], point: &[Element]) -> Result<Element, EncodeError> {
        if coeffs.len() != self.dimension() {
            return Err(EncodeError::LengthMismatch { expected: self.dimension(), got: coeffs.len() });
        }
        if point.len() != self.spec.n() {
            return Err(EncodeError::ArityMismatch { expected: self.spec.n(), got: point.len() });
        }
        Ok(self.eval_block(coeffs, 0, self.dimension(), self.spec.n() - 1, point))
    }

    // Members lo..hi share their indices above `var`. Groups them by the
    // exponent of x_var and runs Horner over the groups from the top degree.
    fn eval_block(&self, coeffs: &[Element], lo: usize, hi: usize, var: usize, point: &[Element]) -> Element {
        let f = self.field();
        let x = point[var];
        let mut acc = Element::ZERO;
        let mut prev_deg: Option<u32> = None;
        let mut end = hi;
        while end > lo {
            let deg = self.region.member(end - 1)[var];
            let mut start = end - 1;
            while start > lo && self.region.member(start - 1)[var] == deg {
                start -= 1;
            }
            let inner = if var == 0 {
                coeffs[start]
            } else {
                self.eval_block(coeffs, start, end, var - 1, point)
            };
            acc = match prev_deg {
                None => inner,
                Some(p) => f.add(f.mul(acc, f.pow(x, (p - deg) as u64)), inner),
            };
            prev_deg = Some(deg);
            end = start;
        }
        match prev_deg {
            Some(deg) => f.mul(acc, f.pow(x, deg as u64)),
            None => acc,
        }
    }

    /// Row `r`, column `c` is the `r`-th region monomial evaluated at point `c`.
    pub fn generator_matrix(&self) -> GeneratorMatrix {
        let f = self.field();
        let mut g = Matrix::zeros(self.dimension(), self.length());
        for c in 0..self.length() {
            let point = self.point(c);
            for (r, exps) in self.region.iter().enumerate() {
                let v = exps
                    .iter()
                    .zip(&point)
                    .fold(Element::ONE, |acc, (&e, &x)| f.mul(acc, f.pow(x, e as u64)));
                g.set(r, c, v);
            }
        }
        GeneratorMatrix::new(f.clone(), g)
    }
}

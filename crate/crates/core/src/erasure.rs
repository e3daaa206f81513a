//! Erasure decoding by solving `m * G_S = r_S` over the surviving
//! coordinates `S`.
//!
//! Any two codewords differ in at least `d` places, so at most `d - 1`
//! erasures always leave a unique solution. Wrong (non-erased) symbols are
//! outside this decoder's contract and show up as [`DecodeError::Inconsistent`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::distance::PRNG_NAME;
use crate::encoder::{Code, Codeword, GeneratorMatrix, Message};
use crate::gf::Element;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("received word has {got} symbols, code length is {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("surviving symbols determine only {rank} of {dimension} information symbols")]
    RankDeficient { rank: usize, dimension: usize },
    #[error("surviving symbols are not the restriction of any codeword")]
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("erased index {index} out of range for length {length}")]
    OutOfRange { index: usize, length: usize },
    #[error("erased index {0} listed twice")]
    Duplicate(usize),
}

/// Sorted set of erased coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasurePattern {
    length: usize,
    erased: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(length: usize, mut erased: Vec<usize>) -> Result<Self, PatternError> {
        erased.sort_unstable();
        for w in erased.windows(2) {
            if w[0] == w[1] {
                return Err(PatternError::Duplicate(w[0]));
            }
        }
        if let Some(&index) = erased.last().filter(|&&i| i >= length) {
            return Err(PatternError::OutOfRange { index, length });
        }
        Ok(ErasurePattern { length, erased })
    }

    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    pub fn len(&self) -> usize {
        self.erased.len()
    }

    pub fn is_empty(&self) -> bool {
        self.erased.is_empty()
    }

    pub fn length(&self) -> usize {
        self.length
    }
}

/// A codeword with some symbols missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedWord {
    symbols: Vec<Option<Element>>,
}

impl ReceivedWord {
    pub fn new(symbols: Vec<Option<Element>>) -> Self {
        ReceivedWord { symbols }
    }

    pub fn erase(codeword: &Codeword, pattern: &ErasurePattern) -> Self {
        let mut symbols: Vec<Option<Element>> = codeword.symbols().iter().copied().map(Some).collect();
        for &i in pattern.erased() {
            symbols[i] = None;
        }
        ReceivedWord { symbols }
    }

    pub fn symbols(&self) -> &[Option<Element>] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn pattern(&self) -> ErasurePattern {
        let erased = self.symbols.iter().enumerate().filter(|(_, s)| s.is_none()).map(|(i, _)| i).collect();
        ErasurePattern { length: self.symbols.len(), erased }
    }
}

/// Recovers the unique message consistent with the surviving symbols.
pub fn decode_erasures(rx: &ReceivedWord, g: &GeneratorMatrix) -> Result<Message, DecodeError> {
    let field = g.field();
    let (k, n) = (g.rows(), g.cols());
    if rx.len() != n {
        return Err(DecodeError::LengthMismatch { expected: n, got: rx.len() });
    }
    let known: Vec<(usize, Element)> = rx.symbols().iter().enumerate().filter_map(|(i, s)| s.map(|v| (i, v))).collect();

    // one equation per surviving coordinate: sum_r m_r G[r][c] = rx[c]
    let mut system = Matrix::zeros(known.len(), k + 1);
    for (row, &(c, v)) in known.iter().enumerate() {
        for r in 0..k {
            system.set(row, r, g.matrix().get(r, c));
        }
        system.set(row, k, v);
    }
    let (reduced, pivots) = system.rref(field);
    if pivots.last() == Some(&k) {
        return Err(DecodeError::Inconsistent);
    }
    if pivots.len() < k {
        return Err(DecodeError::RankDeficient { rank: pivots.len(), dimension: k });
    }
    Ok(crate::encoder::message_unchecked((0..k).map(|r| reduced.get(r, k)).collect()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChannelReport {
    pub q: u64,
    pub n: usize,
    pub d: u64,
    pub epsilon: f64,
    pub trials: u64,
    pub recovered: u64,
    pub rank_deficient: u64,
    /// Decodes that returned a different message. Always zero unless the
    /// decoder is broken.
    pub miscorrected: u64,
    pub failure_rate: f64,
    pub seed: u64,
    pub prng: &'static str,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("erasure probability {0} is outside [0, 1]")]
pub struct EpsilonOutOfRange(pub f64);

enum Outcome {
    Recovered,
    RankDeficient,
    Wrong,
}

/// Monte Carlo erasure channel. Trial `t` draws from its own ChaCha stream
/// `t` under `seed`, so results do not depend on scheduling.
pub fn simulate_erasure_channel(
    code: &Code,
    epsilon: f64,
    trials: u64,
    seed: u64,
) -> Result<ChannelReport, EpsilonOutOfRange> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(EpsilonOutOfRange(epsilon));
    }
    let g = code.generator_matrix();
    let q = code.field().order();
    let k = code.dimension();

    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let coeffs: Vec<Element> = (0..k).map(|_| Element::new(rng.gen_range(0..q))).collect();
            let msg = code.message(coeffs).expect("in range");
            let cw = code.encode(&msg).expect("length checked");
            let erased = (0..cw.len()).filter(|_| rng.gen_bool(epsilon)).collect();
            let pattern = ErasurePattern::new(cw.len(), erased).expect("valid by construction");
            match decode_erasures(&ReceivedWord::erase(&cw, &pattern), &g) {
                Ok(m) if m == msg => Outcome::Recovered,
                Ok(_) | Err(DecodeError::Inconsistent) | Err(DecodeError::LengthMismatch { .. }) => Outcome::Wrong,
                Err(DecodeError::RankDeficient { .. }) => Outcome::RankDeficient,
            }
        })
        .collect();

    let count = |pred: fn(&Outcome) -> bool| outcomes.iter().filter(|o| pred(o)).count() as u64;
    let recovered = count(|o| matches!(o, Outcome::Recovered));
    let rank_deficient = count(|o| matches!(o, Outcome::RankDeficient));
    let miscorrected = count(|o| matches!(o, Outcome::Wrong));
    let spec = code.spec();
    Ok(ChannelReport {
        q: spec.q(),
        n: spec.n(),
        d: spec.d(),
        epsilon,
        trials,
        recovered,
        rank_deficient,
        miscorrected,
        failure_rate: if trials == 0 { 0.0 } else { (trials - recovered) as f64 / trials as f64 },
        seed,
        prng: PRNG_NAME,
    })
}

//! Multiple zeta values on the degree-2 Fermat curve.
//!
//! Indices `zf2(k; φ)` with forms ω₁ = dx/(1−x), ω = dx/√(1−x²) (and ω₀ =
//! dx/x between them) are compiled to level-4 iterated-integral words,
//! evaluated numerically, and studied through a model Hopf algebra
//! `Q⟨f_j⟩ ⊗ Q[τ] ⊗ Q(i)` with its Galois involution and coaction.
//!
//! Module map:
//! - [`arith`]: Q and Q(i) arithmetic, Bernoulli numbers, exact null spaces
//! - [`words`]: words over {0, 1, −1, i, −i}, shuffle, macro letters
//! - [`index`]: index parsing, admissibility, compilation to words
//! - [`numeric`]: series evaluation, constants, closed forms, quadrature oracle
//! - [`hopf`]: the model algebra U₄, coaction, σ, bases, kernels
//! - [`motivic`]: formal iterated-integral symbols, Goncharov coaction, rewriting
//! - [`depth_one`]: index sets, α/β families, ũ_k/ṽ_k and period realization
//! - [`checks`]: named invariant suites used by the CLI `check` verb

pub mod arith;
pub mod checks;
pub mod depth_one;
pub mod hopf;
pub mod index;
pub mod motivic;
pub mod numeric;
pub mod words;

pub use arith::{GaussianRational, QMatrix, Rational};
pub use index::{F2Index, Form};
pub use words::{Letter, MacroLetter, Word, WordCombo};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse `{token}`: expected {expected}")]
    Parse { token: String, expected: String },
    #[error("index {0} diverges: need k_d > 1 or phi_d = w")]
    Inadmissible(String),
    #[error("classical index diverges: need (k_d, eps_d) != (1, 1)")]
    DivergentClassical,
    #[error("unsupported level {0}; expected 1, 2 or 4")]
    UnsupportedLevel(u32),
    #[error("{0} is not a {1}-th root of unity")]
    NotRootOfUnity(String, u32),
    #[error("truncation order {n} too small; need at least {min}")]
    TooFewTerms { n: usize, min: usize },
    #[error("degree {degree} above cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("expected a degree-1 homogeneous combination")]
    NotDegreeOne,
    #[error("tail correction inapplicable: {0}")]
    Inapplicable(String),
    #[error("quadrature oracle limited to depth <= 2 and weight <= 4")]
    OracleTooLarge,
    #[error("not a telescoping family: {0}")]
    NotTelescoping(String),
    #[error("symbol contains macro letters; concrete letters required")]
    NotConcrete,
    #[error("generator f{0} has no period in this realization (odd j only)")]
    EvenGenerator(u32),
    #[error("element is not symmetric under permutation of its f-letters")]
    NotShuffleSymmetric,
    #[error("expected odd n, got {0}")]
    EvenArgument(u32),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, expected: impl Into<String>) -> Self {
        Error::Parse { token: token.into(), expected: expected.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

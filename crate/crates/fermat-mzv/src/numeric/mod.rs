//! Numerical evaluation: power-series propagation along the forms of an
//! index, tail asymptotics for trailing ω, constants, and closed forms.

mod quad;

use std::f64::consts::PI;

use num::{BigInt, One, Zero};
use serde::Serialize;

use crate::arith::{binomial, Rational};
use crate::depth_one::{enum_index_set, IndexSetKind};
use crate::index::{F2Index, Form};
use crate::{Error, Result};

pub use quad::{quad_oracle, quad_oracle_with_error};

/// Differential forms appearing in the expanded form sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NForm {
    Omega0,
    Omega1,
    Omega,
}

/// c(n, φ): C(n−1,(n−1)/2)/2^{n−1} for φ = ω and odd n, 0 for even n;
/// 1 for ω₁ (n ≥ 1); δ_{n,0} for ω₀.
pub fn coeff_c(n: u64, phi: NForm) -> Rational {
    match phi {
        NForm::Omega0 => if n == 0 { Rational::one() } else { Rational::zero() },
        NForm::Omega1 => if n == 0 { Rational::zero() } else { Rational::one() },
        NForm::Omega => {
            if n % 2 == 0 {
                return Rational::zero();
            }
            let m = n - 1;
            Rational::new(binomial(m, m / 2), BigInt::one() << m)
        }
    }
}

/// c(n, ω) for 0 ≤ n ≤ len−1, by the ratio c(2m+1)/c(2m−1) = (2m−1)/(2m).
fn c_omega_table(len: usize) -> Vec<f64> {
    let mut c = vec![0.0; len];
    if len > 1 {
        c[1] = 1.0;
    }
    let mut n = 3;
    while n < len {
        let m = ((n - 1) / 2) as f64;
        c[n] = c[n - 2] * (2.0 * m - 1.0) / (2.0 * m);
        n += 2;
    }
    c
}

/// The form sequence φ₁ ω₀^{k₁−1} … φ_d ω₀^{k_d−1}.
pub fn form_sequence(idx: &F2Index) -> Vec<NForm> {
    let mut out = Vec::new();
    for (&k, &p) in idx.k().iter().zip(idx.phi()) {
        out.push(match p {
            Form::Omega => NForm::Omega,
            Form::Omega1 => NForm::Omega1,
        });
        out.extend(std::iter::repeat(NForm::Omega0).take(k as usize - 1));
    }
    out
}

/// Neumaier-compensated sum.
#[derive(Clone, Copy, Default, Debug)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn ksum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut k = KahanSum::default();
    xs.into_iter().for_each(|x| k.add(x));
    k.value()
}

/// Coefficients a[0..=N] of a power series Σ a[n] tⁿ.
#[derive(Clone, Debug)]
pub struct SeriesState {
    pub coeffs: Vec<f64>,
    delta: bool,
}

impl SeriesState {
    /// The constant series 1.
    pub fn unit(n: usize) -> Self {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[0] = 1.0;
        Self { coeffs, delta: true }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// a′[n] = (1/n) Σ_{u+v=n} a[u] c(v, φ) for n ≥ 1, a′[0] = 0.
    pub fn step(&mut self, phi: NForm, c_omega: &[f64]) {
        let n_max = self.order();
        let a = &mut self.coeffs;
        match phi {
            NForm::Omega0 => {
                for (n, x) in a.iter_mut().enumerate().skip(1) {
                    *x /= n as f64;
                }
            }
            NForm::Omega1 => {
                let mut run = KahanSum::default();
                let mut prev = a[0];
                for n in 1..=n_max {
                    run.add(prev);
                    prev = a[n];
                    a[n] = run.value() / n as f64;
                }
            }
            NForm::Omega if self.delta => {
                let a0 = a[0];
                for n in 1..=n_max {
                    a[n] = a0 * c_omega[n] / n as f64;
                }
            }
            NForm::Omega => {
                let old = a.clone();
                for n in 1..=n_max {
                    let mut s = KahanSum::default();
                    let mut u = (n - 1) % 2;
                    while u < n {
                        s.add(old[u] * c_omega[n - u]);
                        u += 2;
                    }
                    a[n] = s.value() / n as f64;
                }
            }
        }
        a[0] = 0.0;
        self.delta = false;
    }

    fn parity_sums(&self, upto: usize) -> (f64, f64) {
        let even = ksum(self.coeffs[..=upto].iter().step_by(2).copied());
        let odd = ksum(self.coeffs[..=upto].iter().skip(1).step_by(2).copied());
        (even, odd)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub error_estimate: f64,
    pub terms_used: usize,
}

/// Σ_{j≥0} (n0 + 2j)^{−q} by Euler–Maclaurin with step 2.
fn progression_power_sum(n0: f64, q: f64) -> f64 {
    n0.powf(1.0 - q) / (2.0 * (q - 1.0)) + 0.5 * n0.powf(-q) + q * n0.powf(-q - 1.0) / 6.0
        - q * (q + 1.0) * (q + 2.0) * n0.powf(-q - 3.0) / 90.0
}

/// Tail Σ_{n>N, n ≡ parity} c̃(n)/n^s with c̃(x) = Γ(x/2)/(√π Γ((x+1)/2))
/// ≈ √(2/(πx))·(1 + 1/(4x)). Returns (leading + correction, correction).
fn omega_tail(n: usize, parity: usize, s: f64) -> (f64, f64) {
    let n0 = if (n + 1) % 2 == parity { n + 1 } else { n + 2 } as f64;
    let k = (2.0 / PI).sqrt();
    let lead = k * progression_power_sum(n0, s + 0.5);
    let corr = k * 0.25 * progression_power_sum(n0, s + 1.5);
    (lead + corr, corr)
}

/// Large-n model a[n] ≈ M_parity · c̃(n)/n^s of the current state.
#[derive(Clone, Copy, Debug)]
enum TailModel {
    Delta,
    Omega { m_even: f64, m_odd: f64, s: f64, approximate: bool },
    Unknown { divergent: bool },
}

impl TailModel {
    /// (tail_even, tail_odd, correction magnitude) beyond N.
    fn tails(&self, n: usize) -> Option<(f64, f64, f64)> {
        match *self {
            TailModel::Delta => Some((0.0, 0.0, 0.0)),
            TailModel::Omega { m_even, m_odd, s, .. } => {
                let (te, ce) = omega_tail(n, 0, s);
                let (to, co) = omega_tail(n, 1, s);
                Some((m_even * te, m_odd * to, (m_even * ce).abs() + (m_odd * co).abs()))
            }
            TailModel::Unknown { .. } => None,
        }
    }
}

/// Full record of one propagation run.
#[derive(Clone, Debug)]
pub struct SeriesRun {
    pub state: SeriesState,
    /// Plain truncated result, estimate |S_N − S_{N/2}|.
    pub plain: EvalResult,
    model: TailModel,
    half_sum: f64,
    final_form: NForm,
}

pub fn eval_series_run(idx: &F2Index, n: usize) -> Result<SeriesRun> {
    if !idx.is_admissible() {
        return Err(Error::Inadmissible(idx.to_string()));
    }
    let min = (idx.weight() as usize).max(2);
    if n < min {
        return Err(Error::TooFewTerms { n, min });
    }
    let forms = form_sequence(idx);
    let c_omega = c_omega_table(n + 1);
    let mut state = SeriesState::unit(n);
    let mut model = TailModel::Delta;
    for &phi in &forms {
        model = match (phi, model) {
            (NForm::Omega, TailModel::Delta) => TailModel::Omega { m_even: 0.0, m_odd: 1.0, s: 1.0, approximate: false },
            (NForm::Omega, m) => {
                let (se, so) = state.parity_sums(n);
                // ω convolves over odd v: odd outputs see even inputs and vice versa
                match m.tails(n) {
                    Some((te, to, _)) => TailModel::Omega { m_even: so + to, m_odd: se + te, s: 1.0, approximate: false },
                    None => match m {
                        TailModel::Unknown { divergent: true } => TailModel::Unknown { divergent: true },
                        _ => TailModel::Omega { m_even: so, m_odd: se, s: 1.0, approximate: true },
                    },
                }
            }
            (NForm::Omega0, TailModel::Omega { m_even, m_odd, s, approximate }) => {
                TailModel::Omega { m_even, m_odd, s: s + 1.0, approximate }
            }
            (NForm::Omega0, TailModel::Unknown { .. }) => TailModel::Unknown { divergent: false },
            (NForm::Omega0, TailModel::Delta) => TailModel::Delta,
            (NForm::Omega1, _) => TailModel::Unknown { divergent: true },
        };
        state.step(phi, &c_omega);
    }
    let value = ksum(state.coeffs.iter().copied());
    let half_sum = ksum(state.coeffs[..=n / 2].iter().copied());
    Ok(SeriesRun {
        plain: EvalResult { value, error_estimate: (value - half_sum).abs(), terms_used: n },
        state,
        model,
        half_sum,
        final_form: *forms.last().expect("non-empty index"),
    })
}

/// Truncated sum Σ_{n≤N} of the final series; the limit is approached from
/// below, and the estimate is |S_N − S_{N/2}|.
pub fn eval_series(idx: &F2Index, n: usize) -> Result<EvalResult> {
    eval_series_run(idx, n).map(|r| r.plain)
}

/// Adds the asymptotic tail of a series whose last form is ω with k_d = 1.
///
/// The tail uses a[n] ≈ M_parity·c̃(n)/n with the central-binomial asymptotic
/// to next order; the reported estimate is the size of that next-order term
/// (O(N^{−3/2})) plus the drift between corrected sums at N/2 and N.
pub fn tail_correct_depth_tail_omega(idx: &F2Index, run: &SeriesRun) -> Result<EvalResult> {
    let d = idx.depth() - 1;
    if idx.phi()[d] != Form::Omega || idx.k()[d] != 1 || run.final_form != NForm::Omega {
        return Err(Error::Inapplicable(format!("{idx} does not end in (1; w)")));
    }
    let TailModel::Omega { approximate, .. } = run.model else {
        return Err(Error::Inapplicable(format!("{idx}: the block before the final w diverges at t = 1")));
    };
    let n = run.plain.terms_used;
    let (te, to, corr) = run.model.tails(n).expect("omega model");
    let (he, ho, _) = run.model.tails(n / 2).expect("omega model");
    let value = run.plain.value + te + to;
    let half = run.half_sum + he + ho;
    let mut err = corr + (value - half).abs();
    if approximate {
        err += run.plain.error_estimate;
    }
    Ok(EvalResult { value, error_estimate: err, terms_used: n })
}

/// Series evaluation with the tail correction applied whenever it applies.
pub fn evaluate(idx: &F2Index, n: usize) -> Result<EvalResult> {
    let run = eval_series_run(idx, n)?;
    match tail_correct_depth_tail_omega(idx, &run) {
        Ok(r) => Ok(r),
        Err(Error::Inapplicable(_)) => Ok(run.plain),
        Err(e) => Err(e),
    }
}

/// Truncation caps: quadratic (an ω step on a non-trivial series) and linear.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationCaps {
    pub quadratic: usize,
    pub linear: usize,
}

impl Default for TruncationCaps {
    fn default() -> Self {
        Self { quadratic: 10_000, linear: 10_000_000 }
    }
}

impl TruncationCaps {
    /// Parse `N` (both caps) or `Q,L`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::parse(s, "`N` or `QUADRATIC,LINEAR` truncation caps");
        let nums: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().replace('_', "").parse::<f64>().ok().filter(|x| *x >= 1.0).map(|x| x as usize))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        match nums.as_slice() {
            [n] => Ok(Self { quadratic: *n, linear: *n }),
            [q, l] => Ok(Self { quadratic: *q, linear: *l }),
            _ => Err(bad()),
        }
    }

    pub fn from_env() -> Result<Self> {
        match std::env::var("FERMAT_MZV_PRECISION") {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn cap_for(&self, idx: &F2Index) -> usize {
        let omega_after_first = form_sequence(idx).iter().skip(1).any(|&f| f == NForm::Omega);
        if omega_after_first { self.quadratic } else { self.linear }
    }
}

/// Double N from a small start until the estimate drops below `tol` or the cap
/// is reached.
pub fn evaluate_to_tolerance(idx: &F2Index, tol: f64, caps: TruncationCaps) -> Result<EvalResult> {
    let cap = caps.cap_for(idx);
    let mut n = 1000.min(cap).max(idx.weight() as usize).max(2);
    loop {
        let r = evaluate(idx, n)?;
        if r.error_estimate <= tol || n >= cap {
            return Ok(r);
        }
        n = (n * 2).min(cap);
    }
}

pub fn pi() -> f64 {
    PI
}

/// log 2 = 2·atanh(1/3).
pub fn log2() -> f64 {
    let x = 1.0 / 3.0;
    let x2 = x * x;
    let mut term = x;
    let mut s = KahanSum::default();
    for j in 0..40 {
        s.add(term / (2 * j + 1) as f64);
        term *= x2;
    }
    2.0 * s.value()
}

/// ζ(k) for k ≥ 2: Σ_{n<M} n^{−k} plus the Euler–Maclaurin tail at M.
pub fn zeta(k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::Invalid(format!("zeta({k}) diverges; need k >= 2")));
    }
    const M: usize = 1000;
    let kf = k as f64;
    let m = M as f64;
    let mut s = KahanSum::default();
    for n in (1..M).rev() {
        s.add((n as f64).powi(-(k as i32)));
    }
    s.add(m.powf(1.0 - kf) / (kf - 1.0));
    s.add(0.5 * m.powf(-kf));
    s.add(kf * m.powf(-kf - 1.0) / 12.0);
    s.add(-kf * (kf + 1.0) * (kf + 2.0) * m.powf(-kf - 3.0) / 720.0);
    Ok(s.value())
}

/// ζ(k; ω) = (π/2) Σ_{l∈I_{k−1}} (log 2)^{l₁}/l₁! ∏_{j≥2} ((1−2^{1−j})ζ(j)/j)^{l_j}/l_j!.
pub fn eval_explicit_depth1(k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let mut total = KahanSum::default();
    for l in enum_index_set(IndexSetKind::I, k - 1) {
        let mut term = 1.0;
        for (j0, &lj) in l.l.iter().enumerate() {
            let j = j0 as u32 + 1;
            if lj == 0 {
                continue;
            }
            let base = if j == 1 { log2() } else { (1.0 - 2f64.powi(1 - j as i32)) * zeta(j)? / j as f64 };
            term *= base.powi(lj as i32) / factorial_f64(lj);
        }
        total.add(term);
    }
    Ok(PI / 2.0 * total.value())
}

fn factorial_f64(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// ψ^{(j−1)}(1/2) − ψ^{(j−1)}(1).
pub fn polygamma_half_minus_one(j: u32) -> Result<f64> {
    if j == 1 {
        return Ok(-2.0 * log2());
    }
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * factorial_f64(j - 1) * (2f64.powi(j as i32) - 2.0) * zeta(j)?)
}

/// (−1)^{k−1}/(2^k (k−1)!)·∂_x^{k−1} B(x, 1/2) at x = 1/2, with the derivative
/// expanded by Faà di Bruno in the ψ-differences and B(1/2,1/2) = π.
pub fn eval_beta_chain_depth1(k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let n = k - 1;
    let mut total = KahanSum::default();
    for r in enum_index_set(IndexSetKind::I, n) {
        let mut term = factorial_f64(n);
        for (j0, &rj) in r.l.iter().enumerate() {
            let j = j0 as u32 + 1;
            if rj == 0 {
                continue;
            }
            term *= polygamma_half_minus_one(j)?.powi(rj as i32) / (factorial_f64(j).powi(rj as i32) * factorial_f64(rj));
        }
        total.add(term);
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign / (2f64.powi(k as i32) * factorial_f64(n)) * PI * total.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn coefficient_values() {
        assert_eq!(coeff_c(3, NForm::Omega), rat(1, 2));
        assert_eq!(coeff_c(5, NForm::Omega), rat(3, 8));
        assert_eq!(coeff_c(7, NForm::Omega), rat(5, 16));
        assert_eq!(coeff_c(4, NForm::Omega), rat(0, 1));
        assert_eq!(coeff_c(0, NForm::Omega0), rat(1, 1));
        assert_eq!(coeff_c(9, NForm::Omega1), rat(1, 1));
        let t = c_omega_table(40);
        for n in 0..40u64 {
            let exact: f64 = num::ToPrimitive::to_f64(&coeff_c(n, NForm::Omega)).unwrap();
            assert!((t[n as usize] - exact).abs() < 1e-15);
        }
    }

    #[test]
    fn constants() {
        assert!((log2() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((zeta(2).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta(4).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta(3).unwrap() - 1.202_056_903_159_594_2).abs() < 1e-14);
        assert!(zeta(1).is_err());
    }

    #[test]
    fn explicit_formula_spot_values() {
        let l2 = log2();
        assert!((eval_explicit_depth1(1).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((eval_explicit_depth1(2).unwrap() - PI / 2.0 * l2).abs() < 1e-15);
        let z3 = PI / 48.0 * (12.0 * l2 * l2 + PI * PI);
        assert!((eval_explicit_depth1(3).unwrap() - z3).abs() < 1e-14);
    }

    #[test]
    fn beta_chain_matches_explicit() {
        for k in 1..=6 {
            let a = eval_explicit_depth1(k).unwrap();
            let b = eval_beta_chain_depth1(k).unwrap();
            assert!((a - b).abs() < 1e-12, "k={k}: {a} vs {b}");
        }
    }

    #[test]
    fn series_depth_one() {
        let r = eval_series(&F2Index::omega(2), 10_000).unwrap();
        assert!((r.value - PI / 2.0 * log2()).abs() < 3e-6);
        assert!(r.value < PI / 2.0 * log2());
        let c = evaluate(&F2Index::omega(1), 100_000).unwrap();
        assert!((c.value - PI / 2.0).abs() < 1e-9, "{c:?}");
        assert!((c.value - PI / 2.0).abs() <= c.error_estimate);
    }

    #[test]
    fn tail_correction_rate() {
        let idx = F2Index::omega(1);
        let a = tail_correct_depth_tail_omega(&idx, &eval_series_run(&idx, 100_000).unwrap()).unwrap();
        let b = tail_correct_depth_tail_omega(&idx, &eval_series_run(&idx, 400_000).unwrap()).unwrap();
        let ratio = a.error_estimate / b.error_estimate;
        assert!((ratio - 8.0).abs() < 0.5, "ratio {ratio}");
        assert!((b.value - PI / 2.0).abs() <= b.error_estimate);
        let two = F2Index::omega(2);
        assert!(matches!(
            tail_correct_depth_tail_omega(&two, &eval_series_run(&two, 100).unwrap()),
            Err(Error::Inapplicable(_))
        ));
    }

    #[test]
    fn partial_sums_monotone() {
        let idx: F2Index = "zf2(1,2; w,w1)".parse().unwrap();
        let r = eval_series_run(&idx, 2000).unwrap();
        assert!(r.state.coeffs.iter().all(|&a| a >= 0.0));
        assert!(r.half_sum <= r.plain.value);
    }

    #[test]
    fn guards() {
        assert!(matches!(eval_series(&"zf2(1; w1)".parse().unwrap(), 100), Err(Error::Inadmissible(_))));
        assert!(matches!(eval_series(&F2Index::omega(5), 3), Err(Error::TooFewTerms { .. })));
        assert_eq!(TruncationCaps::parse("1e5").unwrap(), TruncationCaps { quadratic: 100_000, linear: 100_000 });
        assert_eq!(TruncationCaps::parse("2000,1e6").unwrap(), TruncationCaps { quadratic: 2000, linear: 1_000_000 });
        assert!(TruncationCaps::parse("lots").is_err());
    }
}

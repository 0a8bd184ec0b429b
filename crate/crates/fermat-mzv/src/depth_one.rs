//! Depth one: the index sets I_k and their parity variants, the α/β
//! coefficient families, the model elements ũ_k, ṽ_k in U₄, and the period
//! map back to real numbers.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{bernoulli, factorial, fmt_rational, int, rat, GaussianRational, Rational};
use crate::hopf::{FTauMonomial, UElement, UTensor};
use crate::{numeric, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexSetKind {
    I,
    IOdd,
    IEven,
    ITildeOdd,
}

/// (l₁, …, l_s) with Σ j·l_j = weight; `l_prime` is set for Ĩ^odd members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CompositionIndex {
    pub l: Vec<u32>,
    pub l_prime: Option<u32>,
}

impl CompositionIndex {
    pub fn weight(&self) -> u32 {
        self.l.iter().enumerate().map(|(j, &x)| (j as u32 + 1) * x).sum::<u32>() + self.l_prime.unwrap_or(0)
    }
    /// l_j for j ≥ 1 (0 beyond the stored length).
    pub fn get(&self, j: u32) -> u32 {
        self.l.get(j as usize - 1).copied().unwrap_or(0)
    }
}

impl fmt::Display for CompositionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.l.iter().map(u32::to_string).collect();
        match self.l_prime {
            Some(p) => write!(f, "(({}); {p})", l.join(",")),
            None => write!(f, "({})", l.join(",")),
        }
    }
}

/// Vectors (l₁..l_s), l_s ≠ 0, Σ j·l_j = k, with parts restricted by `ok`;
/// lexicographically descending.
fn weighted_vectors(k: u32, ok: &dyn Fn(u32) -> bool) -> Vec<Vec<u32>> {
    fn go(j: u32, rest: u32, ok: &dyn Fn(u32) -> bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            let mut v = cur.clone();
            while v.last() == Some(&0) {
                v.pop();
            }
            out.push(v);
            return;
        }
        if j > rest {
            return;
        }
        let max = if ok(j) { rest / j } else { 0 };
        for x in (0..=max).rev() {
            cur.push(x);
            go(j + 1, rest - x * j, ok, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, k, ok, &mut Vec::new(), &mut out);
    out
}

pub fn enum_index_set(kind: IndexSetKind, k: u32) -> Vec<CompositionIndex> {
    let plain = |l: Vec<u32>| CompositionIndex { l, l_prime: None };
    match kind {
        IndexSetKind::I | IndexSetKind::IOdd if k == 0 => vec![plain(vec![0])],
        IndexSetKind::IEven if k == 0 => vec![plain(vec![0, 0])],
        IndexSetKind::I => weighted_vectors(k, &|_| true).into_iter().map(plain).collect(),
        IndexSetKind::IOdd => weighted_vectors(k, &|j| j % 2 == 1).into_iter().map(plain).collect(),
        IndexSetKind::IEven => weighted_vectors(k, &|j| j % 2 == 0).into_iter().map(plain).collect(),
        IndexSetKind::ITildeOdd => (1..=k)
            .step_by(2)
            .flat_map(|lp| {
                enum_index_set(IndexSetKind::IOdd, k - lp)
                    .into_iter()
                    .map(move |c| CompositionIndex { l: c.l, l_prime: Some(lp) })
            })
            .collect(),
    }
}

fn require_odd(n: u32) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::EvenArgument(n));
    }
    Ok(())
}

fn fact(n: u32) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

fn pow2(e: i32) -> Rational {
    if e >= 0 {
        Rational::from_integer(num::BigInt::one() << e as usize)
    } else {
        Rational::new(num::BigInt::one(), num::BigInt::one() << (-e) as usize)
    }
}

/// (1 − 2^{1−j})/j · (−B_j/(2·j!)): the τ^j coefficient attached to even j.
fn even_weight(j: u32) -> Rational {
    (Rational::one() - pow2(1 - j as i32)) / int(j as i64) * (-bernoulli(j as usize) / (int(2) * fact(j)))
}

/// α_n = ¼ Σ_{l∈I^even_{n−1}} ∏_{j even} (1/l_j!)·(−(1−2^{1−j})B_j/(2j·j!))^{l_j}.
pub fn alpha(n: u32) -> Result<Rational> {
    require_odd(n)?;
    let mut s = Rational::zero();
    for c in enum_index_set(IndexSetKind::IEven, n - 1) {
        let mut t = Rational::one();
        for (j0, &lj) in c.l.iter().enumerate() {
            if lj > 0 {
                t *= num::pow(even_weight(j0 as u32 + 1), lj as usize) / fact(lj);
            }
        }
        s += t;
    }
    Ok(s / int(4))
}

/// β_n = 2ⁿ/n.
pub fn beta(n: u32) -> Result<Rational> {
    require_odd(n)?;
    Ok(pow2(n as i32) / int(n as i64))
}

/// ⧢_j (β_j f_j)^{⧢ l_j}/l_j! over the odd j of `c`.
fn odd_f_product(c: &CompositionIndex) -> UElement {
    let mut e = UElement::one();
    for (j0, &lj) in c.l.iter().enumerate() {
        let j = j0 as u32 + 1;
        if lj == 0 {
            continue;
        }
        let x = UElement::monomial(FTauMonomial::f(j)).scale_q(&beta(j).expect("odd j"));
        let mut p = UElement::one();
        for _ in 0..lj {
            p = p.shuffle(&x);
        }
        e = e.shuffle(&p.scale_q(&(Rational::one() / fact(lj))));
    }
    e
}

fn sign(k: u32) -> Rational {
    if k % 2 == 1 { Rational::one() } else { -Rational::one() }
}

/// ũ_k = (−1)^{k−1} Σ_{(l;l′)∈Ĩ_k^odd} α_{l′} τ^{l′} ⧢ ⧢_j (β_j f_j)^{⧢l_j}/l_j!.
pub fn build_u_tilde(k: u32) -> UElement {
    let mut out = UElement::zero();
    for c in enum_index_set(IndexSetKind::ITildeOdd, k) {
        let lp = c.l_prime.expect("tilde index");
        let tau = UElement::monomial(FTauMonomial::tau(lp)).scale_q(&alpha(lp).expect("odd l'"));
        out = out.add(&tau.shuffle(&odd_f_product(&c)));
    }
    out.scale_q(&sign(k))
}

/// ṽ_k = (−1)^{k−1} Σ_{l∈I_k^odd} ⧢_j (β_j f_j)^{⧢l_j}/l_j!.
pub fn build_v_tilde(k: u32) -> UElement {
    let mut out = UElement::zero();
    for c in enum_index_set(IndexSetKind::IOdd, k) {
        out = out.add(&odd_f_product(&c));
    }
    out.scale_q(&sign(k))
}

/// Δ(ũ_k) = −Σ_{m+n=k} ṽ_m ⊗ ũ_n + 1⊗ũ_k + ρ(ũ_k)⊗1, checked exactly.
pub fn check_recursion(k: u32) -> bool {
    let u = build_u_tilde(k);
    let mut rhs = UTensor::from_pair(&UElement::one(), &u).add(&UTensor::from_pair(&u.rho(), &UElement::one()));
    for m in 1..k {
        rhs = rhs.sub(&UTensor::from_pair(&build_v_tilde(m), &build_u_tilde(k - m)));
    }
    u.coaction() == rhs
}

/// U₄ image of the depth-one motivic formula:
/// (τ/4) ⧢ Σ_{l∈I_{k−1}} ⧢_j X_j^{⧢l_j}/l_j!, with log 2 ↦ −2f₁,
/// (1−2^{1−j})ζ(j)/j ↦ −(2^j/j) f_j for odd j ≥ 3 and
/// ζ(j) ↦ −B_j/(2·j!)·τ^j for even j. The tensor factor 1/i is left to the
/// period map.
pub fn motivic_formula_rhs(k: u32) -> UElement {
    let mut sum = UElement::zero();
    for c in enum_index_set(IndexSetKind::I, k - 1) {
        let mut term = UElement::one();
        for (j0, &lj) in c.l.iter().enumerate() {
            let j = j0 as u32 + 1;
            if lj == 0 {
                continue;
            }
            let x = if j % 2 == 1 {
                UElement::monomial(FTauMonomial::f(j)).scale_q(&-beta(j).expect("odd"))
            } else {
                UElement::monomial(FTauMonomial::tau(j)).scale_q(&even_weight(j))
            };
            let mut p = UElement::one();
            for _ in 0..lj {
                p = p.shuffle(&x);
            }
            term = term.shuffle(&p.scale_q(&(Rational::one() / fact(lj))));
        }
        sum = sum.add(&term);
    }
    UElement::monomial(FTauMonomial::tau(1)).scale_q(&rat(1, 4)).shuffle(&sum)
}

/// Values attached to the generators: τ ↦ 2πi, f₁ ↦ −½ log 2,
/// f_j ↦ 2^{1−2j}(1−2^{j−1}) ζ(j) for odd j ≥ 3.
#[derive(Clone, Copy, Debug, Default)]
pub struct PeriodRealization;

impl PeriodRealization {
    pub fn tau(&self) -> Complex64 {
        Complex64::new(0.0, 2.0 * std::f64::consts::PI)
    }
    pub fn f(&self, j: u32) -> Result<f64> {
        if j % 2 == 0 {
            return Err(Error::EvenGenerator(j));
        }
        if j == 1 {
            return Ok(-0.5 * numeric::log2());
        }
        Ok(2f64.powi(1 - 2 * j as i32) * (1.0 - 2f64.powi(j as i32 - 1)) * numeric::zeta(j)?)
    }
}

fn to_c64(c: &GaussianRational) -> Complex64 {
    let (re, im) = c.to_f64_pair();
    Complex64::new(re, im)
}

/// Period of e ⊗ `extension`: shuffle products become ordinary products, so
/// every multiset of f-letters must appear in all its arrangements with equal
/// coefficients.
pub fn period_depth1(e: &UElement, extension: &GaussianRational) -> Result<Complex64> {
    let per = PeriodRealization;
    let mut groups: BTreeMap<(Vec<u32>, u32), Vec<(&FTauMonomial, &GaussianRational)>> = BTreeMap::new();
    for (m, c) in e.terms() {
        for &j in &m.js {
            per.f(j)?;
        }
        let mut key = m.js.clone();
        key.sort();
        groups.entry((key, m.l)).or_default().push((m, c));
    }
    let mut total = Complex64::zero();
    for ((multiset, l), members) in groups {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &j in &multiset {
            *counts.entry(j).or_insert(0) += 1;
        }
        let arrangements = factorial(multiset.len() as u64)
            / counts.values().map(|&m| factorial(m as u64)).product::<num::BigInt>();
        let c0 = members[0].1;
        if members.len().to_string() != arrangements.to_string() || members.iter().any(|(_, c)| *c != c0) {
            return Err(Error::NotShuffleSymmetric);
        }
        let mut v = to_c64(c0) * per.tau().powu(l);
        for (&j, &m) in &counts {
            v *= per.f(j)?.powi(m as i32) / factorial(m as u64).to_f64().unwrap_or(f64::INFINITY);
        }
        total += v;
    }
    Ok(total * to_c64(extension))
}

/// Period of the depth-one motivic formula at weight k (real by construction).
pub fn motivic_formula_period(k: u32) -> Result<f64> {
    let z = period_depth1(&motivic_formula_rhs(k), &GaussianRational::i().inv().expect("i is invertible"))?;
    Ok(z.re)
}

/// A term q · π^a · log2^b · ∏ ζ(j)^{e_j} (odd j ≥ 3).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClosedFormTerm {
    pub pi: u32,
    pub log2: u32,
    pub zetas: Vec<(u32, u32)>,
}

/// The explicit depth-one value as an exact combination of π, log 2 and odd ζ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub k: u32,
    pub terms: BTreeMap<ClosedFormTerm, Rational>,
}

/// (π/2) Σ_{l∈I_{k−1}} (log 2)^{l₁}/l₁! ∏_{j≥2} ((1−2^{1−j}) ζ(j)/j)^{l_j}/l_j!,
/// with even ζ(j) rewritten through Bernoulli numbers.
pub fn closed_form(k: u32) -> Result<ClosedForm> {
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let mut terms = BTreeMap::new();
    for c in enum_index_set(IndexSetKind::I, k - 1) {
        let mut q = rat(1, 2);
        let mut t = ClosedFormTerm { pi: 1, log2: 0, zetas: vec![] };
        for (j0, &lj) in c.l.iter().enumerate() {
            let j = j0 as u32 + 1;
            if lj == 0 {
                continue;
            }
            q /= fact(lj);
            if j == 1 {
                t.log2 = lj;
                continue;
            }
            let w = (Rational::one() - pow2(1 - j as i32)) / int(j as i64);
            q *= num::pow(w, lj as usize);
            if j % 2 == 0 {
                // ζ(j) = (−1)^{j/2+1} B_j (2π)^j / (2·j!)
                let s = if (j / 2) % 2 == 1 { Rational::one() } else { -Rational::one() };
                let z = s * bernoulli(j as usize) * pow2(j as i32) / (int(2) * fact(j));
                q *= num::pow(z, lj as usize);
                t.pi += j * lj;
            } else {
                t.zetas.push((j, lj));
            }
        }
        let e = terms.entry(t).or_insert_with(Rational::zero);
        *e += q;
    }
    terms.retain(|_, q| !q.is_zero());
    Ok(ClosedForm { k, terms })
}

impl ClosedForm {
    pub fn value(&self) -> Result<f64> {
        let mut s = numeric::KahanSum::default();
        for (t, q) in &self.terms {
            let mut v = q.to_f64().unwrap_or(f64::NAN) * numeric::pi().powi(t.pi as i32) * numeric::log2().powi(t.log2 as i32);
            for &(j, e) in &t.zetas {
                v *= numeric::zeta(j)?.powi(e as i32);
            }
            s.add(v);
        }
        Ok(s.value())
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (t, q) in self.terms.iter().rev() {
            let mut factors = vec![fmt_rational(&q.abs())];
            let pw = |name: &str, e: u32| if e == 1 { name.to_string() } else { format!("{name}^{e}") };
            if t.pi > 0 {
                factors.push(pw("pi", t.pi));
            }
            if t.log2 > 0 {
                factors.push(pw("log2", t.log2));
            }
            for &(j, e) in &t.zetas {
                factors.push(pw(&format!("zeta({j})"), e));
            }
            let s = factors.join("*");
            parts.push(if q.is_negative() { format!("- {s}") } else { format!("+ {s}") });
        }
        let out = parts.join(" ");
        f.write_str(out.strip_prefix("+ ").unwrap_or(&out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &str) -> UElement {
        s.parse().unwrap()
    }

    #[test]
    fn index_sets() {
        let show = |kind, k| enum_index_set(kind, k).iter().map(|c| c.to_string()).collect::<Vec<_>>();
        assert_eq!(show(IndexSetKind::I, 0), ["(0)"]);
        assert_eq!(show(IndexSetKind::I, 3), ["(3)", "(1,1)", "(0,0,1)"]);
        assert_eq!(show(IndexSetKind::IEven, 2), ["(0,1)"]);
        assert_eq!(show(IndexSetKind::IEven, 0), ["(0,0)"]);
        assert_eq!(show(IndexSetKind::IOdd, 3), ["(3)", "(0,0,1)"]);
        assert_eq!(show(IndexSetKind::ITildeOdd, 2), ["((1); 1)"]);
        for c in enum_index_set(IndexSetKind::ITildeOdd, 7) {
            assert_eq!(c.weight(), 7);
        }
    }

    #[test]
    fn coefficients() {
        assert_eq!(alpha(1).unwrap(), rat(1, 4));
        assert_eq!(alpha(3).unwrap(), rat(-1, 384));
        // (l₂ = 2): (−1/96)²/2 ; (l₄ = 1): −(7/8)(−1/30)/(8·24)
        let a5 = (rat(1, 2 * 96 * 96) + rat(7, 8 * 30 * 8 * 24)) / int(4);
        assert_eq!(alpha(5).unwrap(), a5);
        assert_eq!(beta(1).unwrap(), int(2));
        assert_eq!(beta(3).unwrap(), rat(8, 3));
        assert_eq!(beta(5).unwrap(), rat(32, 5));
        assert!(matches!(alpha(2), Err(Error::EvenArgument(2))));
        assert!(matches!(beta(4), Err(Error::EvenArgument(4))));
    }

    #[test]
    fn model_elements() {
        assert_eq!(build_u_tilde(1), u("(1/4)[t]"));
        assert_eq!(build_u_tilde(2), u("(-1/2)[f1 t]"));
        assert_eq!(build_u_tilde(3), u("[f1 f1 t] + (-1/384)[t^3]"));
        assert_eq!(build_v_tilde(1), u("(2)[f1]"));
        assert_eq!(build_v_tilde(2), u("(-4)[f1 f1]"));
        let v3 = build_v_tilde(3);
        assert!(!v3.coeff(&"f3".parse().unwrap()).is_zero() && !v3.coeff(&"f1 f1 f1".parse().unwrap()).is_zero());
        for k in 1..=8 {
            assert_eq!(build_u_tilde(k).degree(), Some(k));
            assert_eq!(build_u_tilde(k).sigma(), build_u_tilde(k).scale_q(&int(-1)));
            assert_eq!(motivic_formula_rhs(k), build_u_tilde(k));
        }
    }

    #[test]
    fn recursion() {
        for k in 2..=6 {
            assert!(check_recursion(k), "k={k}");
        }
    }

    #[test]
    fn periods() {
        let pi = std::f64::consts::PI;
        let z = period_depth1(&u("t"), &GaussianRational::new(int(0), rat(-1, 2))).unwrap();
        assert!((z.re - pi).abs() < 1e-15 && z.im.abs() < 1e-15);
        let z = period_depth1(&u("(-1/24)[t^2]"), &GaussianRational::one()).unwrap();
        assert!((z.re - pi * pi / 6.0).abs() < 1e-14);
        assert!((motivic_formula_period(2).unwrap() - pi / 2.0 * numeric::log2()).abs() < 1e-15);
        assert!(matches!(period_depth1(&u("f2"), &GaussianRational::one()), Err(Error::EvenGenerator(2))));
        assert!(matches!(period_depth1(&u("f1 f3"), &GaussianRational::one()), Err(Error::NotShuffleSymmetric)));
        // per(f₃) agrees with Σ_m (−1)^m/(2m)³
        let direct: f64 = (1..200_000).map(|m| if m % 2 == 0 { 1.0 } else { -1.0 } / (2.0 * m as f64).powi(3)).sum();
        assert!((PeriodRealization.f(3).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form(1).unwrap().to_string(), "1/2*pi");
        assert_eq!(closed_form(3).unwrap().to_string(), "1/48*pi^3 + 1/4*pi*log2^2");
        for k in 1..=8 {
            let a = closed_form(k).unwrap().value().unwrap();
            let b = numeric::eval_explicit_depth1(k).unwrap();
            assert!((a - b).abs() < 1e-13, "k={k}");
        }
    }
}

//! The model Hopf algebra U₄ = Q⟨f₁, f₂, …⟩ ⊗ Q[τ] (extended to Q(i)) with
//! shuffle product, deconcatenation coaction and the Galois involution σ.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{int, GaussianRational, QMatrix, Rational};
use crate::words::{add_into, shuffle_seq};
use crate::{Error, Result};

/// Largest degree accepted by the exact kernel computations.
pub const KERNEL_DEGREE_CAP: u32 = 8;

/// f_{j₁}⋯f_{j_r}·τˡ. τ is kept as an exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FTauMonomial {
    pub js: Vec<u32>,
    pub l: u32,
}

impl FTauMonomial {
    pub fn new(js: Vec<u32>, l: u32) -> Self {
        Self { js, l }
    }
    pub fn one() -> Self {
        Self::default()
    }
    pub fn f(j: u32) -> Self {
        Self::new(vec![j], 0)
    }
    pub fn tau(l: u32) -> Self {
        Self::new(vec![], l)
    }
    pub fn degree(&self) -> u32 {
        self.js.iter().sum::<u32>() + self.l
    }
    pub fn depth(&self) -> usize {
        self.js.len()
    }
    pub fn is_one(&self) -> bool {
        self.js.is_empty() && self.l == 0
    }
    /// (−1)^{degree − r}: the σ-sign of the monomial.
    pub fn sigma_sign(&self) -> i64 {
        if (self.degree() as usize - self.depth()) % 2 == 0 { 1 } else { -1 }
    }
    pub fn satisfies(&self, level: Level) -> bool {
        match level {
            Level::L4 => true,
            Level::L2 => self.l % 2 == 0 && self.js.iter().all(|j| j % 2 == 1),
            Level::L1 => self.l % 2 == 0 && self.js.iter().all(|j| j % 2 == 1 && *j >= 3),
        }
    }
}

/// Canonical order: τ-exponent, then f-word length, then f-word.
impl Ord for FTauMonomial {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.l, self.js.len(), &self.js).cmp(&(o.l, o.js.len(), &o.js))
    }
}
impl PartialOrd for FTauMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

/// Text form `f1 f3 t^2`; `t` for τ¹ and `1` for the empty monomial.
impl fmt::Display for FTauMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = self.js.iter().map(|j| format!("f{j}")).collect();
        match self.l {
            0 => {}
            1 => parts.push("t".into()),
            l => parts.push(format!("t^{l}")),
        }
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for FTauMonomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut m = FTauMonomial::one();
        if s.trim() == "1" {
            return Ok(m);
        }
        for tok in s.split_whitespace() {
            let bad = || Error::parse(tok, "`fJ` (J >= 1), `t` or `t^L`");
            if let Some(j) = tok.strip_prefix('f') {
                if m.l > 0 {
                    return Err(Error::parse(tok, "f-letters before the tau power"));
                }
                m.js.push(j.parse().ok().filter(|j| *j >= 1).ok_or_else(bad)?);
            } else if tok == "t" {
                m.l += 1;
            } else if let Some(l) = tok.strip_prefix("t^") {
                m.l += l.parse::<u32>().map_err(|_| bad())?;
            } else {
                return Err(bad());
            }
        }
        if s.trim().is_empty() {
            return Err(Error::parse(s, "a monomial such as `f1 f3 t^2` or `1`"));
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    L1,
    L2,
    L4,
}

impl TryFrom<u32> for Level {
    type Error = Error;
    fn try_from(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Level::L1),
            2 => Ok(Level::L2),
            4 => Ok(Level::L4),
            n => Err(Error::UnsupportedLevel(n)),
        }
    }
}

/// Q(i)-linear combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UElement {
    terms: BTreeMap<FTauMonomial, GaussianRational>,
}

impl UElement {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::monomial(FTauMonomial::one())
    }
    pub fn monomial(m: FTauMonomial) -> Self {
        Self::from_term(m, GaussianRational::one())
    }
    pub fn from_term(m: FTauMonomial, c: GaussianRational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }
    pub fn add_term(&mut self, m: FTauMonomial, c: GaussianRational) {
        if !c.is_zero() {
            add_into(&mut self.terms, m, c);
        }
    }
    pub fn terms(&self) -> impl Iterator<Item = (&FTauMonomial, &GaussianRational)> {
        self.terms.iter()
    }
    pub fn coeff(&self, m: &FTauMonomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(FTauMonomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), c * d);
        }
        out
    }
    pub fn scale_q(&self, q: &Rational) -> Self {
        self.scale(&GaussianRational::real(q.clone()))
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&GaussianRational::from_int(-1)))
    }

    /// Shuffle on f-words, τ-exponents add.
    pub fn shuffle(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let xy = x * y;
                for (js, mult) in shuffle_seq(&a.js, &b.js) {
                    out.add_term(FTauMonomial::new(js, a.l + b.l), xy.scale(&int(mult as i64)));
                }
            }
        }
        out
    }

    /// Deconcatenation: Σ_s f_{j₁}…f_{j_s} ⊗ f_{j_{s+1}}…f_{j_r}τˡ.
    pub fn coaction(&self) -> UTensor {
        let mut out = UTensor::zero();
        for (m, c) in &self.terms {
            for s in 0..=m.js.len() {
                let left = FTauMonomial::new(m.js[..s].to_vec(), 0);
                let right = FTauMonomial::new(m.js[s..].to_vec(), m.l);
                out.add_term(left, right, c.clone());
            }
        }
        out
    }

    /// Δ′ = Δ − 1⊗id.
    pub fn delta_prime(&self) -> UTensor {
        let mut out = self.coaction();
        for (m, c) in &self.terms {
            out.add_term(FTauMonomial::one(), m.clone(), -c.clone());
        }
        out
    }

    /// Δ̃ = Δ − 1⊗id − ρ⊗1.
    pub fn delta_tilde(&self) -> UTensor {
        let mut out = self.delta_prime();
        for (m, c) in &self.rho().terms {
            out.add_term(m.clone(), FTauMonomial::one(), -c.clone());
        }
        out
    }

    /// Projection killing every monomial with a τ factor.
    pub fn rho(&self) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.l == 0).map(|(m, c)| (m.clone(), c.clone()));
        Self { terms: terms.collect() }
    }

    /// σ: monomial ⊗ ε ↦ (−1)^{k−r}·monomial ⊗ ε̄.
    pub fn sigma(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.conj().scale(&int(m.sigma_sign())));
        }
        out
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})[{m}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for UElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        if !s.contains('[') {
            return Ok(Self::monomial(s.parse()?));
        }
        let mut out = Self::zero();
        for part in s.split(" + ") {
            let bad = || Error::parse(part, "`(coeff)[monomial]`");
            let part = part.trim();
            let (c, rest) = match part.strip_prefix('(') {
                Some(p) => p.split_once(")[").ok_or_else(bad)?,
                None => ("1", part.strip_prefix('[').ok_or_else(bad)?),
            };
            let m = rest.strip_suffix(']').ok_or_else(bad)?;
            out.add_term(m.parse()?, c.parse()?);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct UTermRepr {
    coeff: GaussianRational,
    monomial: String,
}

impl Serialize for UElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<UTermRepr> =
            self.terms.iter().map(|(m, c)| UTermRepr { coeff: c.clone(), monomial: m.to_string() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let mut out = UElement::zero();
        for t in Vec::<UTermRepr>::deserialize(d)? {
            out.add_term(t.monomial.parse().map_err(serde::de::Error::custom)?, t.coeff);
        }
        Ok(out)
    }
}

/// Σ c·(left ⊗ right); left legs are τ-free.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UTensor {
    terms: BTreeMap<(FTauMonomial, FTauMonomial), GaussianRational>,
}

impl UTensor {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn add_term(&mut self, left: FTauMonomial, right: FTauMonomial, c: GaussianRational) {
        debug_assert_eq!(left.l, 0, "left tensor legs live in the tau-free quotient");
        if !c.is_zero() {
            add_into(&mut self.terms, (left, right), c);
        }
    }
    /// a ⊗ b for elements (a is projected by ρ).
    pub fn from_pair(a: &UElement, b: &UElement) -> Self {
        let mut out = Self::zero();
        for (m, x) in a.rho().terms() {
            for (n, y) in b.terms() {
                out.add_term(m.clone(), n.clone(), x * y);
            }
        }
        out
    }
    pub fn terms(&self) -> impl Iterator<Item = (&(FTauMonomial, FTauMonomial), &GaussianRational)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((l, r), c) in &o.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }
    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for ((l, r), d) in &self.terms {
            out.add_term(l.clone(), r.clone(), c * d);
        }
        out
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&GaussianRational::from_int(-1)))
    }
    /// Componentwise shuffle product.
    pub fn product(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for ((l1, r1), x) in &self.terms {
            for ((l2, r2), y) in &o.terms {
                let left = UElement::monomial(l1.clone()).shuffle(&UElement::monomial(l2.clone()));
                let right = UElement::monomial(r1.clone()).shuffle(&UElement::monomial(r2.clone()));
                out = out.add(&UTensor::from_pair(&left, &right).scale(&(x * y)));
            }
        }
        out
    }
    pub fn sigma(&self) -> Self {
        let mut out = Self::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(l.clone(), r.clone(), c.conj().scale(&int(l.sigma_sign() * r.sigma_sign())));
        }
        out
    }
}

impl fmt::Display for UTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((l, r), c)| format!("({c})[{l}] ⊗ [{r}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize)]
struct UTensorTermRepr {
    coeff: GaussianRational,
    left: String,
    right: String,
}

impl Serialize for UTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<UTensorTermRepr> = self
            .terms
            .iter()
            .map(|((l, r), c)| UTensorTermRepr { coeff: c.clone(), left: l.to_string(), right: r.to_string() })
            .collect();
        v.serialize(s)
    }
}

/// Compositions of `n` into parts allowed by `part_ok`.
fn compositions(n: u32, part_ok: &dyn Fn(u32) -> bool) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        if part_ok(first) {
            for mut rest in compositions(n - first, part_ok) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out
}

/// All degree-k monomials allowed at the given level, canonically ordered.
pub fn basis_enum(k: u32, level: u32) -> Result<Vec<FTauMonomial>> {
    let level = Level::try_from(level)?;
    let part_ok = move |j: u32| FTauMonomial::f(j).satisfies(level);
    let mut out = Vec::new();
    for l in 0..=k {
        if level != Level::L4 && l % 2 == 1 {
            continue;
        }
        for js in compositions(k - l, &part_ok) {
            out.push(FTauMonomial::new(js, l));
        }
    }
    out.sort();
    Ok(out)
}

/// Level-4 monomials paired with ε ∈ {1, i} so that monomial ⊗ ε is σ-fixed.
pub fn sigma_invariant_basis(k: u32) -> Vec<(FTauMonomial, GaussianRational)> {
    basis_enum(k, 4)
        .expect("level 4")
        .into_iter()
        .map(|m| {
            let eps = if m.sigma_sign() == 1 { GaussianRational::one() } else { GaussianRational::i() };
            (m, eps)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaVariant {
    Prime,
    Tilde,
}

/// Which σ-eigenspace of the rational degree-k part to restrict to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaPart {
    Invariant,
    AntiInvariant,
}

fn apply(variant: DeltaVariant, e: &UElement) -> UTensor {
    match variant {
        DeltaVariant::Prime => e.delta_prime(),
        DeltaVariant::Tilde => e.delta_tilde(),
    }
}

fn kernel_on(variant: DeltaVariant, cols: &[FTauMonomial]) -> Vec<UElement> {
    let images: Vec<UTensor> = cols.iter().map(|m| apply(variant, &UElement::monomial(m.clone()))).collect();
    let mut row_keys: BTreeMap<(FTauMonomial, FTauMonomial), usize> = BTreeMap::new();
    for img in &images {
        for (key, _) in img.terms() {
            let n = row_keys.len();
            row_keys.entry(key.clone()).or_insert(n);
        }
    }
    let mut mat = QMatrix::zeros(row_keys.len(), cols.len());
    for (j, img) in images.iter().enumerate() {
        for (key, c) in img.terms() {
            // monomial images have rational coefficients
            mat.set(row_keys[key], j, c.re.clone());
        }
    }
    if row_keys.is_empty() {
        return cols.iter().map(|m| UElement::monomial(m.clone())).collect();
    }
    mat.kernel()
        .into_iter()
        .map(|v| {
            let mut e = UElement::zero();
            for (m, q) in cols.iter().zip(v) {
                e.add_term(m.clone(), GaussianRational::real(q));
            }
            e
        })
        .collect()
}

/// Exact basis of Ker(variant) on the rational degree-k part of U₄.
pub fn kernel_delta(variant: DeltaVariant, k: u32) -> Result<Vec<UElement>> {
    check_cap(k)?;
    Ok(kernel_on(variant, &basis_enum(k, 4)?))
}

/// Kernel of the variant restricted to one σ-eigenspace of the rational
/// degree-k part (monomials with k − r even, resp. odd).
pub fn kernel_delta_sigma(variant: DeltaVariant, k: u32, part: SigmaPart) -> Result<Vec<UElement>> {
    check_cap(k)?;
    let want = if part == SigmaPart::Invariant { 1 } else { -1 };
    let cols: Vec<FTauMonomial> = basis_enum(k, 4)?.into_iter().filter(|m| m.sigma_sign() == want).collect();
    Ok(kernel_on(variant, &cols))
}

fn check_cap(k: u32) -> Result<()> {
    if k > KERNEL_DEGREE_CAP {
        return Err(Error::DegreeCap { degree: k, cap: KERNEL_DEGREE_CAP });
    }
    if k == 0 {
        return Err(Error::Invalid("kernel computations need degree >= 1".into()));
    }
    Ok(())
}

/// Dimensions of the (+1, −1) eigenspaces of σ on the rational degree-k part,
/// computed as ranks of σ ∓ id.
pub fn sigma_eigenspace_dims(k: u32) -> Result<(usize, usize)> {
    check_cap(k)?;
    let basis = basis_enum(k, 4)?;
    let n = basis.len();
    let sigma_matrix = |shift: i64| {
        let mut m = QMatrix::zeros(n, n);
        for (j, b) in basis.iter().enumerate() {
            for (img, c) in UElement::monomial(b.clone()).sigma().terms() {
                let i = basis.binary_search(img).expect("sigma preserves the basis");
                m.set(i, j, c.re.clone());
            }
            let d = m.get(j, j).clone() - int(shift);
            m.set(j, j, d);
        }
        m
    };
    Ok((n - sigma_matrix(1).rank(), n - sigma_matrix(-1).rank()))
}

/// Eigenspace dimensions by counting monomials by the parity of k − r.
pub fn sigma_eigenspace_counts(k: u32) -> (usize, usize) {
    let basis = basis_enum(k, 4).expect("level 4");
    let plus = basis.iter().filter(|m| m.sigma_sign() == 1).count();
    (plus, basis.len() - plus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimSeries {
    /// 1/(1 − 2t)
    SigmaInvariant4,
    /// 1/(1 − t² − t³), displayed for comparison only
    ClassicalConj,
}

pub fn dim_series(max: u32, which: DimSeries) -> Vec<u64> {
    let mut d: Vec<u64> = Vec::with_capacity(max as usize + 1);
    for k in 0..=max as usize {
        let v = match which {
            DimSeries::SigmaInvariant4 => if k == 0 { 1 } else { 2 * d[k - 1] },
            DimSeries::ClassicalConj => {
                if k == 0 {
                    1
                } else {
                    let a = if k >= 2 { d[k - 2] } else { 0 };
                    let b = if k >= 3 { d[k - 3] } else { 0 };
                    a + b
                }
            }
        };
        d.push(v);
    }
    d
}

type Triple = BTreeMap<(FTauMonomial, FTauMonomial, FTauMonomial), GaussianRational>;

/// (Δ⊗id)∘Δ = (id⊗Δ)∘Δ on one monomial.
pub fn coassociative_on(m: &FTauMonomial) -> bool {
    let first = UElement::monomial(m.clone()).coaction();
    let mut lhs = Triple::new();
    let mut rhs = Triple::new();
    for ((a, b), c) in first.terms() {
        for ((x, y), d) in UElement::monomial(a.clone()).coaction().terms() {
            add_into(&mut lhs, (x.clone(), y.clone(), b.clone()), c * d);
        }
        for ((x, y), d) in UElement::monomial(b.clone()).coaction().terms() {
            add_into(&mut rhs, (a.clone(), x.clone(), y.clone()), c * d);
        }
    }
    lhs == rhs
}

/// Δ(a ⧢ b) = Δ(a)·Δ(b).
pub fn multiplicative_on(a: &UElement, b: &UElement) -> bool {
    a.shuffle(b).coaction() == a.coaction().product(&b.coaction())
}

/// Sum of monomials over a basis with small integer coefficients; used by
/// property checks.
pub fn combination(ms: &[FTauMonomial], coeffs: &[i64]) -> UElement {
    let mut e = UElement::zero();
    for (m, &c) in ms.iter().zip(coeffs) {
        e.add_term(m.clone(), GaussianRational::from_int(c));
    }
    e
}

/// True iff every term of `e` has a rational coefficient.
pub fn is_rational(e: &UElement) -> bool {
    e.terms().all(|(_, c)| c.im.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &str) -> UElement {
        s.parse().unwrap()
    }
    fn m(s: &str) -> FTauMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(u("f1").shuffle(&u("f2")), u("f1 f2").add(&u("f2 f1")));
        assert_eq!(u("t").shuffle(&u("f1")), u("f1 t"));
        assert_eq!(u("f1").shuffle(&u("f1")), u("(2)[f1 f1]"));
    }

    #[test]
    fn coaction_examples() {
        let mut want = UTensor::zero();
        want.add_term(m("1"), m("f1 t"), GaussianRational::one());
        want.add_term(m("f1"), m("t"), GaussianRational::one());
        assert_eq!(u("f1 t").coaction(), want);
        assert_eq!(u("t^3").coaction().len(), 1);
        assert_eq!(u("f1 f2").coaction().len(), 3);
        assert!(u("f3").delta_tilde().is_zero());
        assert!(u("t^5").delta_prime().is_zero());
        let mut want = UTensor::zero();
        want.add_term(m("f1"), m("f2"), GaussianRational::one());
        assert_eq!(u("f1 f2").delta_tilde(), want);
    }

    #[test]
    fn rho_and_sigma() {
        assert!(u("f2 t").rho().is_zero());
        assert_eq!(u("f1 f3").rho(), u("f1 f3"));
        assert_eq!(u("f2").sigma(), u("(-1)[f2]"));
        assert_eq!(u("f2 t").sigma(), u("f2 t"));
        assert_eq!(u("(i)[f1]").sigma(), u("(-i)[f1]"));
        for k in 0..=5 {
            for (b, eps) in sigma_invariant_basis(k) {
                let e = UElement::from_term(b, eps);
                assert_eq!(e.sigma(), e);
            }
        }
    }

    #[test]
    fn bases() {
        let b = basis_enum(2, 4).unwrap();
        assert_eq!(b, vec![m("f2"), m("f1 f1"), m("f1 t"), m("t^2")]);
        assert_eq!(basis_enum(2, 1).unwrap(), vec![m("t^2")]);
        assert_eq!(basis_enum(0, 2).unwrap(), vec![FTauMonomial::one()]);
        assert!(matches!(basis_enum(2, 3), Err(Error::UnsupportedLevel(3))));
        let s1 = sigma_invariant_basis(1);
        assert_eq!(s1, vec![(m("f1"), GaussianRational::one()), (m("t"), GaussianRational::i())]);
        assert_eq!(sigma_invariant_basis(3).len(), 8);
        for k in 0..=10 {
            assert_eq!(basis_enum(k, 4).unwrap().len(), 1 << k);
        }
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_delta(DeltaVariant::Prime, 4).unwrap(), vec![u("t^4")]);
        let kt = kernel_delta(DeltaVariant::Tilde, 4).unwrap();
        assert_eq!(kt.len(), 2);
        assert!(kt.contains(&u("t^4")) && kt.contains(&u("f4")));
        assert_eq!(kernel_delta(DeltaVariant::Tilde, 1).unwrap().len(), 2);
        assert!(matches!(kernel_delta(DeltaVariant::Tilde, 9), Err(Error::DegreeCap { .. })));
        assert_eq!(kernel_delta_sigma(DeltaVariant::Tilde, 3, SigmaPart::Invariant).unwrap(), vec![u("f3")]);
        assert_eq!(kernel_delta_sigma(DeltaVariant::Tilde, 4, SigmaPart::Invariant).unwrap(), vec![u("t^4")]);
    }

    #[test]
    fn series() {
        assert_eq!(dim_series(4, DimSeries::SigmaInvariant4), vec![1, 2, 4, 8, 16]);
        assert_eq!(dim_series(7, DimSeries::ClassicalConj), vec![1, 0, 1, 1, 1, 2, 2, 3]);
        assert_eq!(sigma_eigenspace_dims(4).unwrap(), (8, 8));
        assert_eq!(sigma_eigenspace_counts(9), (256, 256));
    }

    #[test]
    fn text_round_trip() {
        for s in ["1", "t", "f1 f3 t^2", "f12"] {
            assert_eq!(m(s).to_string(), s);
        }
        let e = u("(1/2)[f1 t] + (-3*i)[t^2] + (2-i)[f2 f1]");
        assert_eq!(e.to_string().parse::<UElement>().unwrap(), e);
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<UElement>(&json).unwrap(), e);
        assert!("f0".parse::<FTauMonomial>().is_err());
        assert!("t f1".parse::<FTauMonomial>().is_err());
    }
}

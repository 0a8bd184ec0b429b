//! Words over μ̃₄ = {0, 1, −1, i, −i} and their Q(i)-linear combinations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::One;
use serde::{Deserialize, Serialize};

use crate::arith::{int, GaussianRational, Rational};
use crate::{Error, Result};

/// A point of μ̃₄. Declaration order is the canonical letter order
/// 0 < 1 < −1 < i < −i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Zero,
    One,
    MinusOne,
    I,
    MinusI,
}

impl Letter {
    pub const ALL: [Letter; 5] = [Letter::Zero, Letter::One, Letter::MinusOne, Letter::I, Letter::MinusI];
    pub const UNITS: [Letter; 4] = [Letter::One, Letter::MinusOne, Letter::I, Letter::MinusI];

    /// Exponent e with self = i^e, or None for 0.
    fn log_i(self) -> Option<u8> {
        match self {
            Letter::Zero => None,
            Letter::One => Some(0),
            Letter::I => Some(1),
            Letter::MinusOne => Some(2),
            Letter::MinusI => Some(3),
        }
    }

    fn from_log_i(e: u8) -> Letter {
        [Letter::One, Letter::I, Letter::MinusOne, Letter::MinusI][(e % 4) as usize]
    }

    /// Product in μ₄ ∪ {0}.
    pub fn mul(self, c: Letter) -> Letter {
        match (self.log_i(), c.log_i()) {
            (Some(a), Some(b)) => Letter::from_log_i(a + b),
            _ => Letter::Zero,
        }
    }

    /// Inverse in μ₄; 0 is mapped to itself.
    pub fn inverse(self) -> Letter {
        match self.log_i() {
            Some(a) => Letter::from_log_i(4 - a),
            None => Letter::Zero,
        }
    }

    /// Complex conjugation: swaps i and −i.
    pub fn conj(self) -> Letter {
        match self {
            Letter::I => Letter::MinusI,
            Letter::MinusI => Letter::I,
            other => other,
        }
    }

    pub fn to_complex(self) -> (f64, f64) {
        match self {
            Letter::Zero => (0.0, 0.0),
            Letter::One => (1.0, 0.0),
            Letter::MinusOne => (-1.0, 0.0),
            Letter::I => (0.0, 1.0),
            Letter::MinusI => (0.0, -1.0),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::Zero => "0",
            Letter::One => "1",
            Letter::MinusOne => "-1",
            Letter::I => "i",
            Letter::MinusI => "-i",
        })
    }
}

impl FromStr for Letter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Letter::Zero),
            "1" => Ok(Letter::One),
            "-1" => Ok(Letter::MinusOne),
            "i" => Ok(Letter::I),
            "-i" => Ok(Letter::MinusI),
            t => Err(Error::parse(t, "a letter among 0, 1, -1, i, -i")),
        }
    }
}

/// A word e_{z₁}…e_{z_k}. Ordered length-first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }
    pub fn degree(&self) -> usize {
        self.0.len()
    }
    pub fn conj(&self) -> Word {
        Word(self.0.iter().map(|a| a.conj()).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}
impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(Word)
    }
}

/// Accumulate `c` at key `k`, dropping the entry if it cancels.
pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, GaussianRational>, k: K, c: GaussianRational) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// All interleavings of `u` and `v`, with multiplicities.
pub fn shuffle_seq<T: Clone + Ord>(u: &[T], v: &[T]) -> BTreeMap<Vec<T>, u64> {
    fn go<T: Clone + Ord>(u: &[T], v: &[T], prefix: &mut Vec<T>, out: &mut BTreeMap<Vec<T>, u64>) {
        if u.is_empty() || v.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            *out.entry(w).or_insert(0) += 1;
            return;
        }
        prefix.push(u[0].clone());
        go(&u[1..], v, prefix, out);
        prefix.pop();
        prefix.push(v[0].clone());
        go(u, &v[1..], prefix, out);
        prefix.pop();
    }
    let mut out = BTreeMap::new();
    go(u, v, &mut Vec::with_capacity(u.len() + v.len()), &mut out);
    out
}

/// Finite Q(i)-combination of words; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordCombo {
    terms: BTreeMap<Word, GaussianRational>,
}

impl WordCombo {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn unit() -> Self {
        Self::from_word(Word::empty())
    }
    pub fn from_word(w: Word) -> Self {
        Self::from_term(w, GaussianRational::one())
    }
    pub fn from_term(w: Word, c: GaussianRational) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }
    pub fn letter(a: Letter) -> Self {
        Self::from_word(Word(vec![a]))
    }
    pub fn add_term(&mut self, w: Word, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        add_into(&mut self.terms, w, c);
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &GaussianRational)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, w: &Word) -> GaussianRational {
        self.terms.get(w).cloned().unwrap_or_else(GaussianRational::zero)
    }
    /// Degree if homogeneous (None for zero or mixed degrees).
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
    pub fn component(&self, deg: usize) -> WordCombo {
        let terms = self.terms.iter().filter(|(w, _)| w.degree() == deg).map(|(w, c)| (w.clone(), c.clone()));
        WordCombo { terms: terms.collect() }
    }
    pub fn scale(&self, c: &GaussianRational) -> WordCombo {
        let mut out = WordCombo::zero();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), c * d);
        }
        out
    }
    pub fn add(&self, o: &WordCombo) -> WordCombo {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
    pub fn sub(&self, o: &WordCombo) -> WordCombo {
        self.add(&o.scale(&GaussianRational::from_int(-1)))
    }

    pub fn concat(&self, o: &WordCombo) -> WordCombo {
        let mut out = WordCombo::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let mut w = u.0.clone();
                w.extend_from_slice(&v.0);
                out.add_term(Word(w), a * b);
            }
        }
        out
    }

    pub fn shuffle(&self, o: &WordCombo) -> WordCombo {
        let mut out = WordCombo::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let ab = a * b;
                for (w, m) in shuffle_seq(&u.0, &v.0) {
                    out.add_term(Word(w), ab.scale(&int(m as i64)));
                }
            }
        }
        out
    }

    pub fn concat_power(&self, k: u32) -> WordCombo {
        (0..k).fold(WordCombo::unit(), |acc, _| acc.concat(self))
    }

    /// w^{⧢k} for a degree-1 homogeneous w (equals k!·wᵏ).
    pub fn shuffle_power(&self, k: u32) -> Result<WordCombo> {
        if self.degree() != Some(1) {
            return Err(Error::NotDegreeOne);
        }
        Ok((0..k).fold(WordCombo::unit(), |acc, _| acc.shuffle(self)))
    }

    /// Swap i ↔ −i letterwise and conjugate coefficients.
    pub fn sigma_conjugate(&self) -> WordCombo {
        let mut out = WordCombo::zero();
        for (w, c) in &self.terms {
            out.add_term(w.conj(), c.conj());
        }
        out
    }

    /// Replace each letter by a combination (linear letter substitution).
    pub fn substitute_letters(&self, f: impl Fn(Letter) -> WordCombo) -> WordCombo {
        let mut out = WordCombo::zero();
        for (w, c) in &self.terms {
            let image = w.0.iter().fold(WordCombo::unit(), |acc, &a| acc.concat(&f(a)));
            out = out.add(&image.scale(c));
        }
        out
    }
}

/// Text form: `(coeff)[word] + (coeff)[word]`, `0` for the zero combination.
impl fmt::Display for WordCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})[{w}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for WordCombo {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(WordCombo::zero());
        }
        // a bare word is accepted as coefficient one
        if !s.contains('[') {
            return Ok(WordCombo::from_word(s.parse()?));
        }
        let mut out = WordCombo::zero();
        for part in s.split(" + ") {
            let bad = || Error::parse(part, "`(coeff)[word]`");
            let part = part.trim();
            let (c, rest) = match part.strip_prefix('(') {
                Some(p) => p.split_once(")[").ok_or_else(bad)?,
                None => ("1", part.strip_prefix('[').ok_or_else(bad)?),
            };
            let w = rest.strip_suffix(']').ok_or_else(bad)?;
            out.add_term(w.parse()?, c.parse()?);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: GaussianRational,
    word: String,
}

impl Serialize for WordCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> =
            self.terms.iter().map(|(w, c)| TermRepr { coeff: c.clone(), word: w.to_string() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WordCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermRepr>::deserialize(d)?;
        let mut out = WordCombo::zero();
        for t in v {
            let w: Word = t.word.parse().map_err(serde::de::Error::custom)?;
            out.add_term(w, t.coeff);
        }
        Ok(out)
    }
}

/// Degree-1 building blocks of compiled words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MacroLetter {
    /// η = e_i − e_{−i}
    Eta,
    /// η₀ = e₀ − e_i − e_{−i}
    Eta0,
    /// η₁ = −2e₁ + e_i + e_{−i}
    Eta1,
    Concrete(Letter),
}

impl MacroLetter {
    /// The coefficients c_a of the expansion Σ_a c_a e_a (non-zero ones only).
    pub fn coefficients(self) -> Vec<(Letter, Rational)> {
        use Letter::*;
        match self {
            MacroLetter::Eta => vec![(I, int(1)), (MinusI, int(-1))],
            MacroLetter::Eta0 => vec![(Zero, int(1)), (I, int(-1)), (MinusI, int(-1))],
            MacroLetter::Eta1 => vec![(One, int(-2)), (I, int(1)), (MinusI, int(1))],
            MacroLetter::Concrete(a) => vec![(a, Rational::one())],
        }
    }

    pub fn expand(self) -> WordCombo {
        let mut out = WordCombo::zero();
        for (a, c) in self.coefficients() {
            out.add_term(Word(vec![a]), c.into());
        }
        out
    }

    /// Image under z ↦ c·z as ± a macro letter, when it is one.
    pub fn substitute(self, c: Letter) -> Option<(MacroLetter, bool)> {
        match (self, c) {
            (MacroLetter::Concrete(a), _) => Some((MacroLetter::Concrete(a.mul(c)), false)),
            (m, Letter::One) => Some((m, false)),
            (MacroLetter::Eta, Letter::MinusOne) => Some((MacroLetter::Eta, true)),
            (MacroLetter::Eta0, Letter::MinusOne) => Some((MacroLetter::Eta0, false)),
            _ => None,
        }
    }

    pub fn is_concrete(self) -> bool {
        matches!(self, MacroLetter::Concrete(_))
    }
}

impl fmt::Display for MacroLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MacroLetter::Eta => f.write_str("eta"),
            MacroLetter::Eta0 => f.write_str("eta0"),
            MacroLetter::Eta1 => f.write_str("eta1"),
            MacroLetter::Concrete(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for MacroLetter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "eta" => Ok(MacroLetter::Eta),
            "eta0" => Ok(MacroLetter::Eta0),
            "eta1" => Ok(MacroLetter::Eta1),
            t => t
                .parse()
                .map(MacroLetter::Concrete)
                .map_err(|_| Error::parse(t, "a letter (0, 1, -1, i, -i) or eta, eta0, eta1")),
        }
    }
}

pub fn expand_macros(template: &[MacroLetter]) -> WordCombo {
    template.iter().fold(WordCombo::unit(), |acc, m| acc.concat(&m.expand()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    fn w(s: &str) -> WordCombo {
        WordCombo::from_word(s.parse().unwrap())
    }
    fn n(k: i64) -> GaussianRational {
        GaussianRational::from_int(k)
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(w("0").shuffle(&w("1")), w("0 1").add(&w("1 0")));
        let expect = w("0 0 1").scale(&n(2)).add(&w("0 1 0"));
        assert_eq!(w("0").shuffle(&w("0 1")), expect);
        let eta = w("i").sub(&w("-i"));
        let expect = w("i i").add(&w("-i -i")).scale(&n(2)).sub(&w("i -i").add(&w("-i i")).scale(&n(2)));
        assert_eq!(eta.shuffle(&eta), expect);
    }

    #[test]
    fn distinct_letter_shuffle_count() {
        let u = w("0 1");
        let v = w("-1 i -i");
        assert_eq!(u.shuffle(&v).len(), 10);
    }

    #[test]
    fn shuffle_power_examples() {
        assert_eq!(w("0").shuffle_power(2).unwrap(), w("0 0").scale(&n(2)));
        assert_eq!(w("1").shuffle_power(3).unwrap(), w("1 1 1").scale(&n(6)));
        let eta = MacroLetter::Eta.expand();
        assert_eq!(eta.shuffle_power(2).unwrap(), eta.concat_power(2).scale(&n(2)));
        assert_eq!(w("0 1").shuffle_power(2), Err(Error::NotDegreeOne));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("i").concat(&w("0")), w("i 0"));
        assert_eq!(WordCombo::unit().concat(&w("1 -1")), w("1 -1"));
        let eta = w("i").sub(&w("-i"));
        assert_eq!(eta.concat(&w("0")), w("i 0").sub(&w("-i 0")));
    }

    #[test]
    fn macro_expansion() {
        assert_eq!(expand_macros(&[MacroLetter::Eta]), w("i").sub(&w("-i")));
        assert_eq!(expand_macros(&[MacroLetter::Eta0]), w("0").sub(&w("i")).sub(&w("-i")));
        let e = expand_macros(&[MacroLetter::Eta1, MacroLetter::Eta0]);
        assert_eq!(e.len(), 9);
        assert_eq!(e.coeff(&"1 0".parse().unwrap()), n(-2));
        assert_eq!(e.coeff(&"-i -i".parse().unwrap()), n(-1));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(w("i").sigma_conjugate(), w("-i"));
        let eta = MacroLetter::Eta.expand();
        assert_eq!(eta.sigma_conjugate(), eta.scale(&n(-1)));
        let eta0 = MacroLetter::Eta0.expand();
        assert_eq!(eta0.sigma_conjugate(), eta0);
        let z = WordCombo::from_term("i 0".parse().unwrap(), GaussianRational::i());
        assert_eq!(z.sigma_conjugate(), WordCombo::from_term("-i 0".parse().unwrap(), -GaussianRational::i()));
    }

    #[test]
    fn letter_group_law() {
        for a in Letter::UNITS {
            assert_eq!(a.mul(a.inverse()), One);
            for c in Letter::UNITS {
                assert_eq!(a.mul(c).mul(c.inverse()), a);
            }
        }
        assert_eq!(I.mul(I), MinusOne);
        assert_eq!(Zero.mul(I), Zero);
    }

    #[test]
    fn text_round_trip() {
        let c = MacroLetter::Eta1.expand().concat(&MacroLetter::Eta0.expand()).scale(&GaussianRational::new(
            crate::arith::rat(1, 3),
            crate::arith::rat(-2, 5),
        ));
        assert_eq!(c.to_string().parse::<WordCombo>().unwrap(), c);
        assert_eq!(WordCombo::zero().to_string().parse::<WordCombo>().unwrap(), WordCombo::zero());
        assert_eq!(WordCombo::unit().to_string().parse::<WordCombo>().unwrap(), WordCombo::unit());
        assert_eq!("i 0 -i".parse::<Word>().unwrap(), Word(vec![I, Zero, MinusI]));
    }
}

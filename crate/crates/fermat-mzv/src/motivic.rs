//! Formal motivic iterated-integral symbols I(p; w; q) over level-4 letters,
//! Goncharov's coaction, a directed rewrite system for A-level symbols, and
//! the check of the coaction recursion for u_k = Im(0; η η₀^{k−1}; 1) and
//! v_k = Ia(0; η η₀^{k−1}; i).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{int, GaussianRational};
use crate::words::{add_into, expand_macros, Letter, MacroLetter, Word, WordCombo};
use crate::{Error, Result};

/// Largest k accepted by [`verify_coaction_uv`].
pub const COACTION_CAP: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Variant {
    /// H-level `Im`, along the straight path
    M,
    /// A-level `Ia`, path-free
    A,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IISymbol {
    pub start: Letter,
    pub word: Vec<MacroLetter>,
    pub end: Letter,
    pub variant: Variant,
}

impl IISymbol {
    pub fn new(start: Letter, word: Vec<MacroLetter>, end: Letter, variant: Variant) -> Self {
        Self { start, word, end, variant }
    }
    pub fn a(start: Letter, word: Vec<MacroLetter>, end: Letter) -> Self {
        Self::new(start, word, end, Variant::A)
    }
    pub fn degree(&self) -> usize {
        self.word.len()
    }
    pub fn is_concrete(&self) -> bool {
        self.word.iter().all(|m| m.is_concrete())
    }
    fn from_concrete(start: Letter, w: &Word, end: Letter, variant: Variant) -> Self {
        Self::new(start, w.0.iter().map(|&a| MacroLetter::Concrete(a)).collect(), end, variant)
    }

    /// Path reversal: I(p; a₁…a_k; q) = (−1)^k I(q; a_k…a₁; p).
    pub fn reverse(&self) -> (i64, IISymbol) {
        let mut word = self.word.clone();
        word.reverse();
        let sign = if self.degree() % 2 == 0 { 1 } else { -1 };
        (sign, IISymbol::new(self.end, word, self.start, self.variant))
    }

    /// z ↦ c·z applied to endpoints and letters; `None` when a macro letter
    /// has no image among ± macro letters.
    pub fn substitute(&self, c: Letter) -> Option<(i64, IISymbol)> {
        if !Letter::UNITS.contains(&c) {
            return None;
        }
        let mut sign = 1;
        let mut word = Vec::with_capacity(self.word.len());
        for m in &self.word {
            let (img, neg) = m.substitute(c)?;
            if neg {
                sign = -sign;
            }
            word.push(img);
        }
        Some((sign, IISymbol::new(self.start.mul(c), word, self.end.mul(c), self.variant)))
    }

    /// Letter conjugation i ↔ −i on endpoints and concrete letters.
    pub fn conj(&self) -> Option<IISymbol> {
        let word = self
            .word
            .iter()
            .map(|m| match m {
                MacroLetter::Concrete(a) => Some(MacroLetter::Concrete(a.conj())),
                MacroLetter::Eta0 | MacroLetter::Eta1 => Some(*m),
                MacroLetter::Eta => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(IISymbol::new(self.start.conj(), word, self.end.conj(), self.variant))
    }
}

impl fmt::Display for IISymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.variant {
            Variant::M => "Im",
            Variant::A => "Ia",
        };
        let w: Vec<String> = self.word.iter().map(|m| m.to_string()).collect();
        write!(f, "{tag}({}; {}; {})", self.start, w.join(" "), self.end)
    }
}

impl FromStr for IISymbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(s, "`Im(p; letters; q)` or `Ia(p; letters; q)`");
        let s = s.trim();
        let (variant, rest) = if let Some(r) = s.strip_prefix("Im(") {
            (Variant::M, r)
        } else if let Some(r) = s.strip_prefix("Ia(") {
            (Variant::A, r)
        } else {
            return Err(bad());
        };
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let parts: Vec<&str> = body.split(';').collect();
        let [p, w, q] = parts.as_slice() else { return Err(bad()) };
        let word = w.split_whitespace().map(str::parse).collect::<Result<Vec<MacroLetter>>>()?;
        Ok(IISymbol::new(p.trim().parse()?, word, q.trim().parse()?, variant))
    }
}

/// Σ coeff · (∏ A-level left factors) ⊗ right factor. Left products are kept
/// sorted; the empty product is 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorExpr {
    terms: BTreeMap<(Vec<IISymbol>, IISymbol), GaussianRational>,
}

impl TensorExpr {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn add_term(&mut self, mut left: Vec<IISymbol>, right: IISymbol, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        left.sort();
        add_into(&mut self.terms, (left, right), c);
    }
    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<IISymbol>, IISymbol), &GaussianRational)> {
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
    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((l, r), c) in &o.terms {
            out.add_term(l.clone(), r.clone(), -c.clone());
        }
        out
    }
    /// Letter conjugation on every symbol and complex conjugation of coefficients.
    pub fn sigma(&self) -> Option<Self> {
        let mut out = Self::zero();
        for ((l, r), c) in &self.terms {
            let l = l.iter().map(IISymbol::conj).collect::<Option<Vec<_>>>()?;
            out.add_term(l, r.conj()?, c.conj());
        }
        Some(out)
    }
    /// Degree of every (left product, right) term as (left, right) pairs.
    pub fn bidegrees(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.terms.keys().map(|(l, r)| (l.iter().map(IISymbol::degree).sum(), r.degree()))
    }
}

impl fmt::Display for TensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| {
                let left = if l.is_empty() { "1".to_string() } else { l.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("*") };
                format!("({c}) {left} ⊗ {r}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TensorTermRepr {
    coeff: GaussianRational,
    left: Vec<String>,
    right: String,
}

impl Serialize for TensorExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TensorTermRepr> = self
            .terms
            .iter()
            .map(|((l, r), c)| TensorTermRepr {
                coeff: c.clone(),
                left: l.iter().map(|x| x.to_string()).collect(),
                right: r.to_string(),
            })
            .collect();
        v.serialize(s)
    }
}

/// One term of the chain expansion: segments s = 0..=r in path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainTerm {
    pub coeff: GaussianRational,
    pub segments: Vec<IISymbol>,
    pub right: IISymbol,
}

/// Which part of the coaction to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Δ: all r = 0..=k
    Full,
    /// Δ̃: r = 1..=k−1
    Tilde,
}

/// Coaction of I(start; w₁…w_k; end) with macro letters w_j: a sum over
/// r, positions j₁ < … < j_r and letters a_s with coefficient ∏ c^{(j_s)}_{a_s}.
/// Left factors keep macro segments, the right factor is concrete.
pub fn coaction_on_word_combo(
    start: Letter,
    template: &[MacroLetter],
    end: Letter,
    variant: Variant,
    reduction: Reduction,
) -> Vec<ChainTerm> {
    let k = template.len();
    let rs: Vec<usize> = match reduction {
        Reduction::Full => (0..=k).collect(),
        Reduction::Tilde => (1..k).collect(),
    };
    let mut out = Vec::new();
    for r in rs {
        for positions in increasing_chains(k, r) {
            let choices: Vec<Vec<(Letter, crate::Rational)>> =
                positions.iter().map(|&j| template[j].coefficients()).collect();
            for pick in cartesian(&choices) {
                let mut coeff = GaussianRational::one();
                for (_, c) in &pick {
                    coeff = coeff.scale(c);
                }
                let letters: Vec<Letter> = pick.iter().map(|(a, _)| *a).collect();
                let mut pts = vec![start];
                pts.extend(&letters);
                pts.push(end);
                let mut bounds = vec![None];
                bounds.extend(positions.iter().map(|&j| Some(j)));
                bounds.push(None);
                let segments = (0..=r)
                    .map(|s| {
                        let lo = bounds[s].map_or(0, |j| j + 1);
                        let hi = bounds[s + 1].unwrap_or(k);
                        IISymbol::a(pts[s], template[lo..hi].to_vec(), pts[s + 1])
                    })
                    .collect();
                let right = IISymbol::from_concrete(start, &Word(letters), end, variant);
                out.push(ChainTerm { coeff, segments, right });
            }
        }
    }
    out
}

fn increasing_chains(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(from: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for j in from..k {
            cur.push(j);
            go(j + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, r, &mut Vec::new(), &mut out);
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![vec![]], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect()
    })
}

pub fn chains_to_tensor(chains: &[ChainTerm]) -> TensorExpr {
    let mut out = TensorExpr::zero();
    for t in chains {
        out.add_term(t.segments.clone(), t.right.clone(), t.coeff.clone());
    }
    out
}

/// Goncharov's coaction of a symbol with concrete letters.
pub fn goncharov_coaction(s: &IISymbol, reduction: Reduction) -> Result<TensorExpr> {
    if !s.is_concrete() {
        return Err(Error::NotConcrete);
    }
    Ok(chains_to_tensor(&coaction_on_word_combo(s.start, &s.word, s.end, s.variant, reduction)))
}

/// Collapses Σ over all weak compositions m₁+…+m_r = M of
/// ∏_s Ia(a_s; x^{m_s}; a_{s+1}) to Ia(a₁; x^M; a_{r+1}).
pub fn telescope_collapse(family: &[Vec<IISymbol>]) -> Result<IISymbol> {
    let first = family.first().ok_or_else(|| Error::NotTelescoping("empty family".into()))?;
    let r = first.len();
    if r == 0 {
        return Err(Error::NotTelescoping("no segments".into()));
    }
    let points: Vec<Letter> = first.iter().map(|s| s.start).chain(std::iter::once(first[r - 1].end)).collect();
    let mut letter: Option<MacroLetter> = None;
    let mut seen = std::collections::BTreeSet::new();
    let mut total = None;
    for prod in family {
        if prod.len() != r {
            return Err(Error::NotTelescoping("segment counts differ".into()));
        }
        let mut exps = Vec::with_capacity(r);
        for (s, seg) in prod.iter().enumerate() {
            if seg.start != points[s] || seg.end != points[s + 1] || seg.variant != Variant::A {
                return Err(Error::NotTelescoping(format!("segment {seg} breaks the path")));
            }
            for m in &seg.word {
                match letter {
                    None => letter = Some(*m),
                    Some(x) if x == *m => {}
                    Some(_) => return Err(Error::NotTelescoping(format!("{seg} is not a power of one letter"))),
                }
            }
            exps.push(seg.word.len());
        }
        let m: usize = exps.iter().sum();
        if *total.get_or_insert(m) != m {
            return Err(Error::NotTelescoping("total degrees differ".into()));
        }
        if !seen.insert(exps) {
            return Err(Error::NotTelescoping("repeated composition".into()));
        }
    }
    let m = total.unwrap_or(0);
    if seen.len() as u64 != crate::arith::binomial((m + r - 1) as u64, (r - 1) as u64).try_into().unwrap_or(u64::MAX) {
        return Err(Error::NotTelescoping(format!("{} of the compositions of {m} into {r} parts", seen.len())));
    }
    let x = letter.unwrap_or(MacroLetter::Eta0);
    Ok(IISymbol::a(points[0], vec![x; m], points[r]))
}

/// Telescoping pass: chain terms sharing head segment, right factor and
/// coefficient are collapsed when their tails form a full telescoping family.
pub fn collapse_chains(chains: &[ChainTerm]) -> TensorExpr {
    type Key = (IISymbol, IISymbol, GaussianRational);
    let mut groups: BTreeMap<Key, Vec<&ChainTerm>> = BTreeMap::new();
    let mut out = TensorExpr::zero();
    for t in chains {
        if t.segments.len() < 2 {
            out.add_term(t.segments.clone(), t.right.clone(), t.coeff.clone());
            continue;
        }
        groups.entry((t.segments[0].clone(), t.right.clone(), t.coeff.clone())).or_default().push(t);
    }
    for ((head, right, coeff), ts) in groups {
        let tails: Vec<Vec<IISymbol>> = ts.iter().map(|t| t.segments[1..].to_vec()).collect();
        match telescope_collapse(&tails) {
            Ok(sym) => out.add_term(vec![head, sym], right, coeff),
            Err(_) => {
                for t in ts {
                    out.add_term(t.segments.clone(), t.right.clone(), t.coeff.clone());
                }
            }
        }
    }
    out
}

fn is_power_of(word: &[MacroLetter], m: MacroLetter) -> bool {
    !word.is_empty() && word.iter().all(|x| *x == m)
}

/// Zero rules: equal endpoints, the η₀-power vanishing patterns, and
/// Ia(0; 0; 1) = Ia(0; 1; 1) = 0.
fn vanishes(s: &IISymbol) -> bool {
    use Letter::*;
    use MacroLetter::{Concrete, Eta0};
    if s.variant != Variant::A {
        return false;
    }
    if s.start == s.end && !s.word.is_empty() {
        return true;
    }
    if is_power_of(&s.word, Eta0) && ((s.start == MinusI && s.end == I) || (matches!(s.start, I | MinusI) && s.end == One)) {
        return true;
    }
    s.start == Zero && s.end == One && matches!(s.word.as_slice(), [Concrete(Zero)] | [Concrete(One)])
}

/// The μ₄-substitution × reversal orbit of an A-level symbol, with signs.
fn orbit(s: &IISymbol) -> Vec<(i64, IISymbol)> {
    let mut out = Vec::new();
    for c in Letter::UNITS {
        if let Some((sign, img)) = s.substitute(c) {
            let (rs, rev) = img.reverse();
            out.push((sign, img));
            out.push((sign * rs, rev));
        }
    }
    out
}

/// Result of rewriting one A-level factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    Zero,
    One,
    Symbol(i64, IISymbol),
}

/// Rewrites one A-level symbol: equal endpoints, empty word, the η₀ and
/// η η₀^{r−1} patterns, the two weight-one vanishings, then the lexicographically
/// minimal representative of its substitution/reversal orbit.
pub fn simplify_symbol(s: &IISymbol) -> Reduced {
    use Letter::*;
    if s.variant == Variant::M {
        return Reduced::Symbol(1, s.clone());
    }
    if s.start == s.end && !s.word.is_empty() {
        return Reduced::Zero;
    }
    if s.word.is_empty() {
        return Reduced::One;
    }
    if vanishes(s) {
        return Reduced::Zero;
    }
    let mut sign = 1;
    let mut s = s.clone();
    let eta_head = s.word.first() == Some(&MacroLetter::Eta) && s.word[1..].iter().all(|m| *m == MacroLetter::Eta0);
    if s.start == Zero && s.end == MinusI && eta_head {
        sign = -1;
        s.end = I;
    }
    let orb = orbit(&s);
    if orb.iter().any(|(_, t)| vanishes(t)) {
        return Reduced::Zero;
    }
    let (sg, best) = orb.into_iter().min_by(|a, b| a.1.cmp(&b.1)).expect("identity is in the orbit");
    Reduced::Symbol(sign * sg, best)
}

/// Applies [`simplify_symbol`] to every left factor.
pub fn simplify(expr: &TensorExpr) -> TensorExpr {
    let mut out = TensorExpr::zero();
    'terms: for ((left, right), c) in expr.terms() {
        let mut coeff = c.clone();
        let mut factors = Vec::new();
        for f in left {
            match simplify_symbol(f) {
                Reduced::Zero => continue 'terms,
                Reduced::One => {}
                Reduced::Symbol(sign, s) => {
                    coeff = coeff.scale(&int(sign));
                    factors.push(s);
                }
            }
        }
        out.add_term(factors, right.clone(), coeff);
    }
    out
}

/// Normal form of a linear combination of products of A-level symbols:
/// macros expanded, same-endpoint factors merged by the shuffle relation,
/// then concrete rewriting and orbit canonicalization, to a fixpoint.
pub fn normalize(expr: &[(GaussianRational, Vec<IISymbol>)]) -> BTreeMap<Vec<IISymbol>, GaussianRational> {
    // factors as (start, end) -> combination of concrete words
    type Prod = Vec<(Letter, Letter, WordCombo)>;
    let mut work: Vec<(GaussianRational, Prod)> = expr
        .iter()
        .map(|(c, fs)| (c.clone(), fs.iter().map(|s| (s.start, s.end, expand_macros(&s.word))).collect()))
        .collect();
    let mut out = BTreeMap::new();
    while let Some((c, prod)) = work.pop() {
        // merge factors sharing endpoints
        let mut merged: BTreeMap<(Letter, Letter), WordCombo> = BTreeMap::new();
        for (p, q, w) in prod {
            let e = merged.entry((p, q)).or_insert_with(WordCombo::unit);
            *e = e.shuffle(&w);
        }
        // expand into products of single concrete symbols
        let mut expanded: Vec<(GaussianRational, Vec<IISymbol>)> = vec![(c, vec![])];
        for ((p, q), wc) in merged {
            let mut next = Vec::new();
            for (c0, fs) in &expanded {
                for (w, cw) in wc.terms() {
                    let mut fs = fs.clone();
                    fs.push(IISymbol::from_concrete(p, w, q, Variant::A));
                    next.push((c0 * cw, fs));
                }
            }
            expanded = next;
        }
        'prod: for (c, fs) in expanded {
            let mut coeff = c;
            let mut canon = Vec::new();
            for f in &fs {
                match simplify_symbol(f) {
                    Reduced::Zero => continue 'prod,
                    Reduced::One => {}
                    Reduced::Symbol(sign, s) => {
                        coeff = coeff.scale(&int(sign));
                        canon.push(s);
                    }
                }
            }
            canon.sort();
            let clash = canon.windows(2).any(|w| (w[0].start, w[0].end) == (w[1].start, w[1].end));
            if clash {
                let prod = canon.iter().map(|s| (s.start, s.end, expand_macros(&s.word))).collect();
                work.push((coeff, prod));
            } else {
                add_into(&mut out, canon, coeff);
            }
        }
    }
    out
}

/// u_k (target 1) or v_k (target i).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UvTarget {
    U,
    V,
}

impl UvTarget {
    fn end(self) -> Letter {
        match self {
            UvTarget::U => Letter::One,
            UvTarget::V => Letter::I,
        }
    }
    fn variant(self) -> Variant {
        match self {
            UvTarget::U => Variant::M,
            UvTarget::V => Variant::A,
        }
    }
}

pub fn uv_template(k: u32) -> Vec<MacroLetter> {
    let mut t = vec![MacroLetter::Eta];
    t.extend(std::iter::repeat(MacroLetter::Eta0).take(k as usize - 1));
    t
}

#[derive(Clone, Debug, Serialize)]
pub struct CoactionReport {
    pub k: u32,
    pub holds: bool,
    pub chain_terms: usize,
    pub lhs: TensorExpr,
    pub rhs: TensorExpr,
    pub residual: TensorExpr,
}

/// Expands Δ̃ of u_k or v_k, telescopes and simplifies, and compares with
/// −Σ_{r=1}^{k−1} v_{k−r} ⊗ u_r (resp. ⊗ v_r), right factors expanded to
/// concrete words on both sides.
pub fn verify_coaction_uv(k: u32, target: UvTarget) -> Result<CoactionReport> {
    if k > COACTION_CAP {
        return Err(Error::DegreeCap { degree: k, cap: COACTION_CAP });
    }
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    let chains = coaction_on_word_combo(Letter::Zero, &uv_template(k), target.end(), target.variant(), Reduction::Tilde);
    let lhs = simplify(&collapse_chains(&chains));
    let mut rhs = TensorExpr::zero();
    for r in 1..k {
        let v = IISymbol::a(Letter::Zero, uv_template(k - r), Letter::I);
        for (w, c) in expand_macros(&uv_template(r)).terms() {
            let right = IISymbol::from_concrete(Letter::Zero, w, target.end(), target.variant());
            rhs.add_term(vec![v.clone()], right, -c.clone());
        }
    }
    let rhs = simplify(&rhs);
    let residual = lhs.sub(&rhs);
    Ok(CoactionReport { k, holds: residual.is_zero(), chain_terms: chains.len(), lhs, rhs, residual })
}

/// Concrete expansion of a symbol's word as a combination of concrete symbols.
pub fn expand_symbol(s: &IISymbol) -> Vec<(GaussianRational, IISymbol)> {
    expand_macros(&s.word)
        .terms()
        .map(|(w, c)| (c.clone(), IISymbol::from_concrete(s.start, w, s.end, s.variant)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    fn sym(s: &str) -> IISymbol {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in ["Im(0; i 0 -i; 1)", "Ia(0; eta eta0; i)", "Ia(i; ; 0)"] {
            assert_eq!(sym(s).to_string(), s);
        }
        assert!("Ix(0; 1; 1)".parse::<IISymbol>().is_err());
        assert!("Ia(0; 2; 1)".parse::<IISymbol>().is_err());
    }

    #[test]
    fn goncharov_small() {
        let s = sym("Im(0; i; 1)");
        let full = goncharov_coaction(&s, Reduction::Full).unwrap();
        let mut want = TensorExpr::zero();
        want.add_term(vec![sym("Ia(0; i; 1)")], sym("Im(0; ; 1)"), GaussianRational::one());
        want.add_term(vec![sym("Ia(0; ; i)"), sym("Ia(i; ; 1)")], sym("Im(0; i; 1)"), GaussianRational::one());
        assert_eq!(full, want);
        assert!(goncharov_coaction(&s, Reduction::Tilde).unwrap().is_zero());
        let chains = coaction_on_word_combo(Zero, &sym("Im(0; 1 i -1; 1)").word, One, Variant::M, Reduction::Full);
        assert_eq!(chains.iter().filter(|t| t.segments.len() == 3).count(), 3);
        assert!(matches!(goncharov_coaction(&sym("Ia(0; eta; 1)"), Reduction::Full), Err(Error::NotConcrete)));
    }

    #[test]
    fn coefficient_table_for_u_template() {
        assert_eq!(MacroLetter::Eta.coefficients().len(), 2);
        let u2 = coaction_on_word_combo(Zero, &uv_template(2), One, Variant::M, Reduction::Tilde);
        // r = 1 only; a ∈ {±i} at j = 1 and a ∈ {0, ±i} at j = 2
        assert_eq!(u2.len(), 5);
        assert!(u2.iter().all(|t| t.segments.len() == 2));
    }

    #[test]
    fn rewrite_rules() {
        assert_eq!(simplify_symbol(&sym("Ia(-i; eta0 eta0; i)")), Reduced::Zero);
        assert_eq!(simplify_symbol(&sym("Ia(i; eta0; 1)")), Reduced::Zero);
        assert_eq!(simplify_symbol(&sym("Ia(-i; eta0 eta0 eta0; 1)")), Reduced::Zero);
        assert_eq!(simplify_symbol(&sym("Ia(1; eta0; 1)")), Reduced::Zero);
        assert_eq!(simplify_symbol(&sym("Ia(1; ; 0)")), Reduced::One);
        let Reduced::Symbol(s1, a) = simplify_symbol(&sym("Ia(0; eta; -i)")) else { panic!() };
        let Reduced::Symbol(s2, b) = simplify_symbol(&sym("Ia(0; eta; i)")) else { panic!() };
        assert_eq!(a, b);
        assert_eq!(s1, -s2);
    }

    #[test]
    fn reverse_and_substitute() {
        assert_eq!(sym("Ia(0; 1; 1)").reverse(), (-1, sym("Ia(1; 1; 0)")));
        assert_eq!(sym("Ia(-i; eta0; i)").substitute(MinusOne), Some((1, sym("Ia(i; eta0; -i)"))));
        let s = sym("Ia(0; i 0 1; -1)");
        let (_, t) = s.substitute(I).unwrap();
        assert_eq!(t.substitute(MinusI).unwrap().1, s);
        assert_eq!(sym("Ia(0; eta; 1)").substitute(I), None);
    }

    #[test]
    fn telescoping() {
        let fam = vec![
            vec![sym("Ia(i; ; 0)"), sym("Ia(0; eta0; 1)")],
            vec![sym("Ia(i; eta0; 0)"), sym("Ia(0; ; 1)")],
        ];
        let c = telescope_collapse(&fam).unwrap();
        assert_eq!(c, sym("Ia(i; eta0; 1)"));
        assert_eq!(simplify_symbol(&c), Reduced::Zero);
        assert_eq!(telescope_collapse(&[vec![sym("Ia(0; eta0 eta0; i)")]]).unwrap(), sym("Ia(0; eta0 eta0; i)"));
        assert!(matches!(telescope_collapse(&fam[..1]), Err(Error::NotTelescoping(_))));
    }

    #[test]
    fn coaction_recursion_small() {
        assert!(verify_coaction_uv(1, UvTarget::U).unwrap().holds);
        for k in 2..=4 {
            for t in [UvTarget::U, UvTarget::V] {
                let rep = verify_coaction_uv(k, t).unwrap();
                assert!(rep.holds, "k={k} {t:?}: residual {}", rep.residual);
            }
        }
        assert!(matches!(verify_coaction_uv(8, UvTarget::U), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn shuffle_relation_normal_forms() {
        let p = sym("Ia(0; i 1; -1)");
        let q = sym("Ia(0; 0; -1)");
        let lhs = normalize(&[(GaussianRational::one(), vec![p.clone(), q.clone()])]);
        let sh = WordCombo::from_word(Word(vec![I, One])).shuffle(&WordCombo::from_word(Word(vec![Zero])));
        let rhs_terms: Vec<_> =
            sh.terms().map(|(w, c)| (c.clone(), vec![IISymbol::from_concrete(Zero, w, MinusOne, Variant::A)])).collect();
        assert_eq!(lhs, normalize(&rhs_terms));
    }
}

//! Index types, admissibility, and compilation to level-4 words.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::GaussianRational;
use crate::words::{expand_macros, Letter, MacroLetter, Word, WordCombo};
use crate::{Error, Result};

/// The differential attached to an index entry: ω₁ = dx/(1−x) or ω = dx/√(1−x²).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Form {
    #[serde(rename = "w1")]
    Omega1,
    #[serde(rename = "w")]
    Omega,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Omega1 => "w1",
            Form::Omega => "w",
        })
    }
}

impl FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "w1" => Ok(Form::Omega1),
            "w" => Ok(Form::Omega),
            t => Err(Error::parse(t, "a form tag `w1` or `w`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct F2Index {
    k: Vec<u32>,
    phi: Vec<Form>,
}

impl F2Index {
    pub fn new(k: Vec<u32>, phi: Vec<Form>) -> Result<Self> {
        if k.is_empty() || k.len() != phi.len() {
            return Err(Error::Invalid("index needs equally many k and phi entries, at least one".into()));
        }
        if k.contains(&0) {
            return Err(Error::Invalid("index entries k_j must be positive".into()));
        }
        Ok(Self { k, phi })
    }

    /// Depth-one index (k; ω).
    pub fn omega(k: u32) -> Self {
        Self::new(vec![k], vec![Form::Omega]).expect("k > 0")
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }
    pub fn phi(&self) -> &[Form] {
        &self.phi
    }
    pub fn weight(&self) -> u32 {
        self.k.iter().sum()
    }
    pub fn depth(&self) -> usize {
        self.k.len()
    }
    pub fn len_omega(&self) -> usize {
        self.phi.iter().filter(|&&p| p == Form::Omega).count()
    }

    /// Convergent iff k_d > 1 or φ_d = ω.
    pub fn is_admissible(&self) -> bool {
        let d = self.depth() - 1;
        self.k[d] > 1 || self.phi[d] == Form::Omega
    }

    /// [θ₁, η₀^{k₁−1}, …, θ_d, η₀^{k_d−1}] with θ = η for ω and η₁ for ω₁.
    pub fn macro_template(&self) -> Vec<MacroLetter> {
        let mut t = Vec::with_capacity(self.weight() as usize);
        for (&k, &p) in self.k.iter().zip(&self.phi) {
            t.push(match p {
                Form::Omega => MacroLetter::Eta,
                Form::Omega1 => MacroLetter::Eta1,
            });
            t.extend(std::iter::repeat(MacroLetter::Eta0).take(k as usize - 1));
        }
        t
    }
}

impl fmt::Display for F2Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.k.iter().map(ToString::to_string).collect();
        let ps: Vec<String> = self.phi.iter().map(ToString::to_string).collect();
        write!(f, "zf2({}; {})", ks.join(","), ps.join(","))
    }
}

impl FromStr for F2Index {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<IndexExpr>()? {
            IndexExpr::F2(i) => Ok(i),
            _ => Err(Error::parse(s, "zf2(k1,...,kd; p1,...,pd)")),
        }
    }
}

/// Any index accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexExpr {
    F2(F2Index),
    Classical { level: u32, k: Vec<u32>, eps: Vec<Letter> },
}

fn split_args(body: &str) -> Vec<&str> {
    body.split(';').map(str::trim).collect()
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Error::parse(t.trim(), what)))
        .collect()
}

impl FromStr for IndexExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        const GRAMMAR: &str = "zf2(k1,...,kd; p1,...,pd), z(k1,...,kd) or zN(N; k...; eps...)";
        let t = s.trim();
        let (head, rest) = t.split_once('(').ok_or_else(|| Error::parse(t, GRAMMAR))?;
        let body = rest.strip_suffix(')').ok_or_else(|| Error::parse(t, GRAMMAR))?;
        let args = split_args(body);
        match (head.trim(), args.as_slice()) {
            ("zf2", [ks, ps]) => {
                let k = parse_list::<u32>(ks, "a positive integer")?;
                let phi = parse_list::<Form>(ps, "`w1` or `w`")?;
                Ok(IndexExpr::F2(F2Index::new(k, phi)?))
            }
            ("z", [ks]) => {
                let k = parse_list::<u32>(ks, "a positive integer")?;
                let eps = vec![Letter::One; k.len()];
                Ok(IndexExpr::Classical { level: 1, k, eps })
            }
            ("zN", [n, ks, es]) => {
                let level = n.parse().map_err(|_| Error::parse(*n, "a level 1, 2 or 4"))?;
                let k = parse_list::<u32>(ks, "a positive integer")?;
                let eps = parse_list::<Letter>(es, "one of 1, -1, i, -i")?;
                if k.len() != eps.len() || k.is_empty() {
                    return Err(Error::parse(t, "as many eps entries as k entries"));
                }
                Ok(IndexExpr::Classical { level, k, eps })
            }
            (h, _) => Err(Error::parse(h, GRAMMAR)),
        }
    }
}

/// Level-4 word for an F₂-index: ζ(k;φ) = prefactor · I(0; word; 1).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompiledSymbol {
    pub template: Vec<String>,
    #[serde(skip)]
    pub macros: Vec<MacroLetter>,
    pub word: WordCombo,
    pub prefactor: GaussianRational,
}

pub fn compile(idx: &F2Index) -> Result<CompiledSymbol> {
    if !idx.is_admissible() {
        return Err(Error::Inadmissible(idx.to_string()));
    }
    let macros = idx.macro_template();
    Ok(CompiledSymbol {
        template: macros.iter().map(ToString::to_string).collect(),
        word: expand_macros(&macros),
        prefactor: (-GaussianRational::i()).pow(idx.len_omega() as u32),
        macros,
    })
}

fn level_allows(level: u32, e: Letter) -> bool {
    match level {
        1 => e == Letter::One,
        2 => matches!(e, Letter::One | Letter::MinusOne),
        _ => e != Letter::Zero,
    }
}

/// ζ_N(k; ε) = (−1)^d I(0; (ε₁⋯ε_d)^{−1}, 0^{k₁−1}, …, ε_d^{−1}, 0^{k_d−1}; 1).
pub fn compile_classical(k: &[u32], eps: &[Letter], level: u32) -> Result<WordCombo> {
    if ![1, 2, 4].contains(&level) {
        return Err(Error::UnsupportedLevel(level));
    }
    if k.is_empty() || k.len() != eps.len() || k.contains(&0) {
        return Err(Error::Invalid("classical index needs matching positive k and eps".into()));
    }
    if let Some(&e) = eps.iter().find(|&&e| !level_allows(level, e)) {
        return Err(Error::NotRootOfUnity(e.to_string(), level));
    }
    let d = k.len();
    if k[d - 1] == 1 && eps[d - 1] == Letter::One {
        return Err(Error::DivergentClassical);
    }
    let mut letters = Vec::new();
    for j in 0..d {
        let prod = eps[j..].iter().fold(Letter::One, |acc, &e| acc.mul(e));
        letters.push(prod.inverse());
        letters.extend(std::iter::repeat(Letter::Zero).take(k[j] as usize - 1));
    }
    let sign = if d % 2 == 0 { 1 } else { -1 };
    Ok(WordCombo::from_term(Word(letters), GaussianRational::from_int(sign)))
}

/// Whether σ(word)·conj(prefactor) = word·prefactor.
pub fn sigma_invariance_check(sym: &CompiledSymbol) -> bool {
    sym.word.sigma_conjugate().scale(&sym.prefactor.conj()) == sym.word.scale(&sym.prefactor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> F2Index {
        s.parse().unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(idx("zf2(1; w)").is_admissible());
        assert!(!idx("zf2(1; w1)").is_admissible());
        assert!(idx("zf2(3,1; w,w)").is_admissible());
        assert!(idx("zf2(3,1; w1,w)").is_admissible());
        assert!(!idx("zf2(2,1; w,w1)").is_admissible());
    }

    #[test]
    fn compile_examples() {
        let c = compile(&idx("zf2(1; w)")).unwrap();
        assert_eq!(c.word, MacroLetter::Eta.expand());
        assert_eq!(c.prefactor, -GaussianRational::i());
        let c = compile(&idx("zf2(2; w1)")).unwrap();
        assert_eq!(c.word, expand_macros(&[MacroLetter::Eta1, MacroLetter::Eta0]));
        assert_eq!(c.prefactor, GaussianRational::one());
        let c = compile(&idx("zf2(1,1; w,w)")).unwrap();
        assert_eq!(c.word, MacroLetter::Eta.expand().concat(&MacroLetter::Eta.expand()));
        assert_eq!(c.prefactor, GaussianRational::from_int(-1));
        assert!(matches!(compile(&idx("zf2(1; w1)")), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn classical_examples() {
        let neg = |s: &str| WordCombo::from_term(s.parse().unwrap(), GaussianRational::from_int(-1));
        assert_eq!(compile_classical(&[2], &[Letter::One], 1).unwrap(), neg("1 0"));
        assert_eq!(compile_classical(&[1], &[Letter::MinusOne], 2).unwrap(), neg("-1"));
        assert_eq!(compile_classical(&[1], &[Letter::I], 4).unwrap(), neg("-i"));
        assert_eq!(compile_classical(&[2], &[Letter::One], 3), Err(Error::UnsupportedLevel(3)));
        assert!(compile_classical(&[1], &[Letter::I], 2).is_err());
        // depth two: (ε₁ε₂)^{-1}, 0^{k₁-1}, ε₂^{-1}, 0^{k₂-1}
        let w = compile_classical(&[1, 2], &[Letter::I, Letter::MinusOne], 4).unwrap();
        assert_eq!(w, WordCombo::from_word("i -1 0".parse().unwrap()));
    }

    #[test]
    fn compiled_degree_and_sigma() {
        let forms = [Form::Omega1, Form::Omega];
        for a in 1..=4u32 {
            for b in 1..=4u32 {
                for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    let i = F2Index::new(vec![a, b], vec![forms[p], forms[q]]).unwrap();
                    if !i.is_admissible() {
                        continue;
                    }
                    let c = compile(&i).unwrap();
                    assert_eq!(c.word.degree(), Some(i.weight() as usize));
                    assert!(sigma_invariance_check(&c), "{i}");
                }
            }
        }
        let mut c = compile(&idx("zf2(1; w)")).unwrap();
        c.prefactor = GaussianRational::one();
        assert!(!sigma_invariance_check(&c));
    }

    #[test]
    fn all_omega1_matches_classical_under_pullback() {
        // e₀ ↦ η₀ and e₁ ↦ −η₁ carry the classical word to the compiled one
        let pull = |a: Letter| match a {
            Letter::Zero => MacroLetter::Eta0.expand(),
            Letter::One => MacroLetter::Eta1.expand().scale(&GaussianRational::from_int(-1)),
            other => WordCombo::letter(other),
        };
        for k in [vec![2], vec![3], vec![1, 2], vec![2, 2], vec![1, 1, 3]] {
            let phi = vec![Form::Omega1; k.len()];
            let c = compile(&F2Index::new(k.clone(), phi).unwrap()).unwrap();
            let classical = compile_classical(&k, &vec![Letter::One; k.len()], 1).unwrap();
            assert_eq!(classical.substitute_letters(pull), c.word, "{k:?}");
        }
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(idx("zf2(3,1; w1,w)").to_string(), "zf2(3,1; w1,w)");
        assert!(matches!("z(2,3)".parse::<IndexExpr>(), Ok(IndexExpr::Classical { level: 1, .. })));
        let e: IndexExpr = "zN(4; 1,2; i,-1)".parse().unwrap();
        assert_eq!(e, IndexExpr::Classical { level: 4, k: vec![1, 2], eps: vec![Letter::I, Letter::MinusOne] });
        let err = "zf2(2; x)".parse::<IndexExpr>().unwrap_err();
        assert!(matches!(err, Error::Parse { ref token, .. } if token == "x"));
        assert!("zf2(0; w)".parse::<IndexExpr>().is_err());
    }
}

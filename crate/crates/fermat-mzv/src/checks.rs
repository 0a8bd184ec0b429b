//! Named invariant suites. Each check reports a name, a verdict and a short
//! detail line; the CLI `check` verb and the acceptance target share them.

use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith::{factorial, int, rat, GaussianRational};
use crate::depth_one::{self, enum_index_set, IndexSetKind};
use crate::hopf::{self, DeltaVariant, DimSeries, FTauMonomial, SigmaPart, UElement};
use crate::index::F2Index;
use crate::motivic::{self, IISymbol, Reduction, UvTarget, Variant};
use crate::numeric::{self, NForm, TruncationCaps};
use crate::words::{Letter, MacroLetter, Word, WordCombo};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Shuffle,
    Hopf,
    Dims,
    Coaction,
    Depth1,
    Numeric,
    Coefficients,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "shuffle" => Suite::Shuffle,
            "hopf" => Suite::Hopf,
            "dims" => Suite::Dims,
            "coaction" => Suite::Coaction,
            "depth1" => Suite::Depth1,
            "numeric" => Suite::Numeric,
            "coefficients" => Suite::Coefficients,
            _ => return Err(Error::parse(s, "one of all, shuffle, hopf, dims, coaction, depth1, numeric, coefficients")),
        })
    }
}

struct Log {
    suite: &'static str,
    out: Vec<CheckOutcome>,
}

impl Log {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(CheckOutcome { suite: self.suite, name: name.into(), passed, detail: detail.into() });
    }
}

/// Runs a suite; `max` bounds the degree/weight explored (each suite also
/// clamps to its own cap).
pub fn run_suite(suite: Suite, max: u32) -> Vec<CheckOutcome> {
    match suite {
        Suite::All => [Suite::Coefficients, Suite::Shuffle, Suite::Hopf, Suite::Dims, Suite::Coaction, Suite::Depth1, Suite::Numeric]
            .into_iter()
            .flat_map(|s| run_suite(s, max))
            .collect(),
        Suite::Shuffle => shuffle_suite(max),
        Suite::Hopf => hopf_suite(max),
        Suite::Dims => dims_suite(max),
        Suite::Coaction => coaction_suite(max),
        Suite::Depth1 => depth1_suite(max),
        Suite::Numeric => numeric_suite(max),
        Suite::Coefficients => coefficient_suite(),
    }
}

fn random_word(rng: &mut StdRng, len: usize) -> Word {
    Word((0..len).map(|_| Letter::ALL[rng.gen_range(0..Letter::ALL.len())]).collect())
}

pub fn coefficient_suite() -> Vec<CheckOutcome> {
    let mut log = Log { suite: "coefficients", out: vec![] };
    let c = |n| numeric::coeff_c(n, NForm::Omega);
    log.push("c(3,w) = 1/2", c(3) == rat(1, 2), format!("{}", c(3)));
    log.push("c(5,w) = 3/8", c(5) == rat(3, 8), format!("{}", c(5)));
    log.push("c(7,w) = 5/16", c(7) == rat(5, 16), format!("{}", c(7)));
    let a1 = depth_one::alpha(1).expect("odd");
    log.push("alpha_1 = 1/4", a1 == rat(1, 4), format!("{a1}"));
    let b1 = depth_one::beta(1).expect("odd");
    let b3 = depth_one::beta(3).expect("odd");
    log.push("beta_1 = 2", b1 == int(2), format!("{b1}"));
    log.push("beta_3 = 8/3", b3 == rat(8, 3), format!("{b3}"));
    log.out
}

pub fn shuffle_suite(max: u32) -> Vec<CheckOutcome> {
    let mut log = Log { suite: "shuffle", out: vec![] };
    let max_deg = max.clamp(2, 6) as usize;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut comm = 0;
    for _ in 0..100 {
        let a = rng.gen_range(0..=max_deg);
        let b = rng.gen_range(0..=max_deg - a);
        let (u, v) = (WordCombo::from_word(random_word(&mut rng, a)), WordCombo::from_word(random_word(&mut rng, b)));
        comm += usize::from(u.shuffle(&v) == v.shuffle(&u));
    }
    log.push("shuffle commutative (100 pairs)", comm == 100, format!("{comm}/100"));
    let mut assoc = 0;
    for _ in 0..100 {
        let a = rng.gen_range(0..=max_deg);
        let b = rng.gen_range(0..=max_deg - a);
        let c = rng.gen_range(0..=max_deg - a - b);
        let [u, v, w] = [a, b, c].map(|n| WordCombo::from_word(random_word(&mut rng, n)));
        assoc += usize::from(u.shuffle(&v).shuffle(&w) == u.shuffle(&v.shuffle(&w)));
    }
    log.push("shuffle associative (100 triples)", assoc == 100, format!("{assoc}/100"));
    let mut ok = true;
    for trial in 0..20 {
        let mut w = WordCombo::zero();
        for a in Letter::ALL {
            let q = rng.gen_range(-3i64..=3);
            w.add_term(Word(vec![a]), GaussianRational::new(int(q), int(if trial % 2 == 0 { 0 } else { 1 })));
        }
        if w.is_empty() {
            continue;
        }
        for k in 0..=5u32 {
            let lhs = w.shuffle_power(k).expect("degree one");
            let f = crate::arith::Rational::from_integer(factorial(k as u64));
            ok &= lhs == w.concat_power(k).scale(&GaussianRational::real(f));
        }
    }
    log.push("w^{sh k} = k! w^k for k <= 5", ok, "20 random degree-1 combinations");
    log.out
}

pub fn hopf_suite(max: u32) -> Vec<CheckOutcome> {
    let mut log = Log { suite: "hopf", out: vec![] };
    let max = max.clamp(1, hopf::KERNEL_DEGREE_CAP);
    let coassoc_deg = max.min(6);
    let mut bad = vec![];
    let mut count = 0;
    for k in 0..=coassoc_deg {
        for m in hopf::basis_enum(k, 4).expect("level 4") {
            count += 1;
            if !hopf::coassociative_on(&m) {
                bad.push(m.to_string());
            }
        }
    }
    log.push(format!("coassociativity, degree <= {coassoc_deg}"), bad.is_empty(), format!("{count} monomials, failures {bad:?}"));
    let mult_deg = max.min(5);
    let mut bad = 0;
    let mut count = 0;
    for da in 0..=mult_deg {
        for db in 0..=mult_deg - da {
            for a in hopf::basis_enum(da, 4).expect("level 4") {
                for b in hopf::basis_enum(db, 4).expect("level 4") {
                    count += 1;
                    bad += usize::from(!hopf::multiplicative_on(&UElement::monomial(a.clone()), &UElement::monomial(b)));
                }
            }
        }
    }
    log.push(format!("coaction multiplicative, total degree <= {mult_deg}"), bad == 0, format!("{count} pairs, {bad} failures"));
    let mut rng = StdRng::seed_from_u64(7);
    let mut ok = true;
    for _ in 0..30 {
        let a = random_u(&mut rng, 3);
        let b = random_u(&mut rng, 3);
        ok &= a.shuffle(&b).sigma() == a.sigma().shuffle(&b.sigma());
        ok &= a.coaction().sigma() == a.sigma().coaction();
        ok &= a.sigma().sigma() == a;
    }
    log.push("sigma commutes with shuffle and coaction; involution", ok, "30 random elements");
    for k in 1..=max.min(6) {
        let kp = hopf::kernel_delta(DeltaVariant::Prime, k).expect("under cap");
        let kt = hopf::kernel_delta(DeltaVariant::Tilde, k).expect("under cap");
        let tau = UElement::monomial(FTauMonomial::tau(k));
        let fk = UElement::monomial(FTauMonomial::f(k));
        log.push(format!("Ker D' in degree {k} = Q t^{k}"), kp == vec![tau.clone()], kp.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "));
        let ok = kt.len() == 2 && kt.contains(&tau) && kt.contains(&fk);
        log.push(format!("Ker D~ in degree {k} = Q t^{k} + Q f{k}"), ok, kt.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "));
        let inv = hopf::kernel_delta_sigma(DeltaVariant::Tilde, k, SigmaPart::Invariant).expect("under cap");
        let anti = hopf::kernel_delta_sigma(DeltaVariant::Tilde, k, SigmaPart::AntiInvariant).expect("under cap");
        let (want_inv, want_anti) = if k % 2 == 1 { (&fk, &tau) } else { (&tau, &fk) };
        log.push(
            format!("sigma-restricted Ker D~ in degree {k}"),
            inv == vec![want_inv.clone()] && anti == vec![want_anti.clone()],
            format!("invariant [{}], anti-invariant [{}]", join(&inv), join(&anti)),
        );
    }
    log.out
}

fn join(es: &[UElement]) -> String {
    es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

fn random_u(rng: &mut StdRng, max_deg: u32) -> UElement {
    let mut e = UElement::zero();
    for _ in 0..3 {
        let k = rng.gen_range(0..=max_deg);
        let basis = hopf::basis_enum(k, 4).expect("level 4");
        let m = basis[rng.gen_range(0..basis.len())].clone();
        e.add_term(m, GaussianRational::new(int(rng.gen_range(-3..=3)), int(rng.gen_range(-3..=3))));
    }
    e
}

pub fn dims_suite(max: u32) -> Vec<CheckOutcome> {
    let mut log = Log { suite: "dims", out: vec![] };
    let max = max.min(12);
    let series = hopf::dim_series(max, DimSeries::SigmaInvariant4);
    let counts: Vec<u64> = (0..=max).map(|k| hopf::sigma_invariant_basis(k).len() as u64).collect();
    let pow: Vec<u64> = (0..=max).map(|k| 1u64 << k).collect();
    log.push(format!("sigma-invariant basis sizes = 2^k, k <= {max}"), counts == pow && series == pow, format!("{counts:?}"));
    let mut ok = true;
    let mut detail = vec![];
    for k in 1..=max {
        let split = if k <= 6 { hopf::sigma_eigenspace_dims(k).expect("under cap") } else { hopf::sigma_eigenspace_counts(k) };
        let half = 1usize << (k - 1);
        ok &= split == (half, half);
        detail.push(format!("{}/{}", split.0, split.1));
    }
    log.push(format!("sigma eigenspaces 2^(k-1)/2^(k-1), 1 <= k <= {max}"), ok, detail.join(" "));
    log.push(
        "conjectural classical dimensions (display only)",
        true,
        format!("{:?}", hopf::dim_series(max, DimSeries::ClassicalConj)),
    );
    log.out
}

fn random_symbol(rng: &mut StdRng, len: usize) -> IISymbol {
    let pick = |rng: &mut StdRng| Letter::ALL[rng.gen_range(0..Letter::ALL.len())];
    let start = pick(rng);
    let end = pick(rng);
    let w = random_word(rng, len);
    IISymbol::a(start, w.0.into_iter().map(MacroLetter::Concrete).collect(), end)
}

pub fn coaction_suite(max: u32) -> Vec<CheckOutcome> {
    let mut log = Log { suite: "coaction", out: vec![] };
    for k in 1..=max.clamp(1, motivic::COACTION_CAP) {
        for target in [UvTarget::U, UvTarget::V] {
            let name = format!("D~({}_{k}) = -sum v_(k-r) (x) {}_r", if target == UvTarget::U { "u" } else { "v" }, if target == UvTarget::U { "u" } else { "v" });
            match motivic::verify_coaction_uv(k, target) {
                Ok(rep) => log.push(name, rep.holds, format!("{} chain terms, {} residual terms", rep.chain_terms, rep.residual.len())),
                Err(e) => log.push(name, false, e.to_string()),
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(11);
    let mut ok = 0;
    for _ in 0..30 {
        let p = Letter::ALL[rng.gen_range(0..5)];
        let q = Letter::UNITS[rng.gen_range(0..4)];
        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (w1, w2) = (random_word(&mut rng, a), random_word(&mut rng, b));
        let s = |w: &Word| IISymbol::a(p, w.0.iter().map(|&x| MacroLetter::Concrete(x)).collect(), q);
        let lhs = motivic::normalize(&[(GaussianRational::one(), vec![s(&w1), s(&w2)])]);
        let sh = WordCombo::from_word(w1.clone()).shuffle(&WordCombo::from_word(w2.clone()));
        let rhs: Vec<_> = sh.terms().map(|(w, c)| (c.clone(), vec![s(w)])).collect();
        ok += usize::from(lhs == motivic::normalize(&rhs));
    }
    log.push("symbol shuffle relation (30 random pairs)", ok == 30, format!("{ok}/30"));
    let mut ok = true;
    for r in 1..=4usize {
        for (p, q) in [(Letter::Zero, Letter::One), (Letter::I, Letter::Zero), (Letter::Zero, Letter::MinusI)] {
            let single = IISymbol::a(p, vec![MacroLetter::Eta0], q);
            let power = IISymbol::a(p, vec![MacroLetter::Eta0; r], q);
            let inv = crate::arith::Rational::new(1.into(), factorial(r as u64));
            let lhs = motivic::normalize(&[(GaussianRational::one(), vec![power])]);
            let rhs = motivic::normalize(&[(GaussianRational::real(inv), vec![single; r])]);
            ok &= lhs == rhs;
        }
    }
    log.push("Ia(p; eta0^r; q) = Ia(p; eta0; q)^r / r!, r <= 4", ok, "three endpoint pairs");
    let mut ok = true;
    for _ in 0..30 {
        let len = rng.gen_range(1..=4);
        let s = random_symbol(&mut rng, len);
        let s = IISymbol::new(s.start, s.word, s.end, Variant::M);
        let before = motivic::goncharov_coaction(&s.conj().expect("concrete"), Reduction::Full).expect("concrete");
        let after = motivic::goncharov_coaction(&s, Reduction::Full).expect("concrete").sigma().expect("concrete");
        ok &= before == after;
        ok &= motivic::goncharov_coaction(&s, Reduction::Full).expect("concrete").bidegrees().all(|(a, b)| a + b == len);
    }
    log.push("sigma-equivariance and grading of the coaction", ok, "30 random symbols");
    log.out
}

/// Number of partitions of k by dynamic programming.
pub fn partition_count(k: usize) -> u64 {
    let mut p = vec![0u64; k + 1];
    p[0] = 1;
    for part in 1..=k {
        for n in part..=k {
            p[n] += p[n - part];
        }
    }
    p[k]
}

pub fn depth1_suite(max: u32) -> Vec<CheckOutcome> {
    let mut log = Log { suite: "depth1", out: vec![] };
    let max = max.clamp(2, 10);
    let ok = (0..=20).all(|k| enum_index_set(IndexSetKind::I, k).len() as u64 == partition_count(k as usize));
    log.push("|I_k| = p(k), k <= 20", ok, "partition-count dynamic program");
    for k in 2..=max {
        log.push(format!("coaction recursion for u~_{k}"), depth_one::check_recursion(k), "exact in U4");
    }
    let ok = (1..=max).all(|k| {
        let u = depth_one::build_u_tilde(k);
        u.sigma() == u.scale(&GaussianRational::from_int(-1)) && u.degree() == Some(k) && depth_one::motivic_formula_rhs(k) == u
    });
    log.push(format!("sigma(u~_k) = -u~_k, grade k, formula image = u~_k, k <= {max}"), ok, "");
    for k in 1..=max {
        let period = depth_one::motivic_formula_period(k);
        let explicit = numeric::eval_explicit_depth1(k);
        match (period, explicit) {
            (Ok(p), Ok(e)) => log.push(format!("period of motivic formula, k = {k}"), (p - e).abs() < 1e-10, format!("{p:.15} vs {e:.15}")),
            (p, e) => log.push(format!("period of motivic formula, k = {k}"), false, format!("{p:?} / {e:?}")),
        }
    }
    log.out
}

/// The five depth-one closed forms as reference values.
pub fn depth_one_references() -> [f64; 5] {
    let (pi, l2) = (numeric::pi(), numeric::log2());
    let z3 = numeric::zeta(3).expect("k >= 2");
    [
        pi / 2.0,
        pi / 2.0 * l2,
        pi / 48.0 * (12.0 * l2 * l2 + pi * pi),
        pi / 48.0 * (4.0 * l2.powi(3) + pi * pi * l2 + 6.0 * z3),
        pi / 11520.0 * (240.0 * l2.powi(4) + 120.0 * pi * pi * l2 * l2 + 1440.0 * l2 * z3 + 19.0 * pi.powi(4)),
    ]
}

pub fn numeric_suite(max: u32) -> Vec<CheckOutcome> {
    let mut log = Log { suite: "numeric", out: vec![] };
    let max = max.clamp(1, 8);
    let refs = depth_one_references();
    for k in 1..=max.min(5) {
        let idx = F2Index::omega(k);
        let (res, tol) = if k == 1 {
            let run = numeric::eval_series_run(&idx, 400_000).expect("admissible");
            (numeric::tail_correct_depth_tail_omega(&idx, &run), 1e-6)
        } else {
            (numeric::eval_series(&idx, 100_000), 1e-8)
        };
        match res {
            Ok(r) => {
                let err = (r.value - refs[k as usize - 1]).abs();
                log.push(format!("zf2({k}; w) closed form within {tol:e}"), err < tol, format!("|diff| = {err:.2e}, estimate {:.2e}", r.error_estimate));
            }
            Err(e) => log.push(format!("zf2({k}; w) closed form"), false, e.to_string()),
        }
    }
    for k in 1..=max {
        let idx = F2Index::omega(k);
        let series = numeric::evaluate(&idx, 100_000).expect("admissible");
        let explicit = numeric::eval_explicit_depth1(k).expect("k >= 1");
        let chain = numeric::eval_beta_chain_depth1(k).expect("k >= 1");
        let diff = (series.value - explicit).abs();
        log.push(
            format!("explicit formula vs series, k = {k}"),
            diff <= series.error_estimate + 1e-12 && (chain - explicit).abs() < 1e-12,
            format!("|diff| = {diff:.2e}, estimate {:.2e}", series.error_estimate),
        );
    }
    let caps = TruncationCaps::default();
    for s in ["zf2(2; w)", "zf2(1,1; w,w)", "zf2(1,2; w,w1)"] {
        let idx: F2Index = s.parse().expect("valid index");
        let series = numeric::evaluate_to_tolerance(&idx, 4e-7, caps);
        let quad = numeric::quad_oracle_with_error(&idx);
        match (series, quad) {
            (Ok(a), Ok((b, qe))) => {
                let diff = (a.value - b).abs();
                log.push(format!("{s}: series vs quadrature within 1e-6"), diff < 1e-6, format!("|diff| = {diff:.2e} (N = {}, quad est {qe:.1e})", a.terms_used));
            }
            (a, b) => log.push(format!("{s}: series vs quadrature"), false, format!("{a:?} / {b:?}")),
        }
    }
    log.out
}

/// Fraction of passing checks, for summaries.
pub fn summary(outcomes: &[CheckOutcome]) -> (usize, usize) {
    (outcomes.iter().filter(|o| o.passed).count(), outcomes.len())
}

//! Exact arithmetic over Q and Q(i): Bernoulli numbers, binomials, and a
//! fraction-free null-space solver.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders as `a/b`, or `a` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::parse(s, "a rational `a` or `a/b`");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// C(n, k), zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// B_n for the generating function x/(e^x - 1), so B_1 = -1/2.
pub fn bernoulli(n: usize) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut b = cache.lock().unwrap_or_else(|e| e.into_inner());
    while b.len() <= n {
        // sum_{j<=m} C(m+1, j) B_j = 0
        let m = b.len() as u64;
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(m + 1, j as u64)) * bj;
        }
        let next = -s / Rational::from_integer(BigInt::from(m + 1));
        b.push(next);
    }
    b[n].clone()
}

/// Element a + b·i of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }
    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }
    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }
    pub fn zero() -> Self {
        Self::from_int(0)
    }
    pub fn one() -> Self {
        Self::from_int(1)
    }
    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn scale(&self, q: &Rational) -> Self {
        Self { re: &self.re * q, im: &self.im * q }
    }
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }
    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        Self::real(q)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}
impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}
impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}
impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero in Q(i)")
    }
}
impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}
impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}
impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}
impl Div for GaussianRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        &self / &o
    }
}
impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}
impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}
impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

/// Text form: `3/2`, `-i`, `1/2*i`, `1/2-3/4*i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |q: &Rational| -> String {
            if q.is_one() {
                "i".to_string()
            } else if (-q).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(q))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let im = im_part(&self.im);
                if im.starts_with('-') {
                    write!(f, "{}{}", fmt_rational(&self.re), im)
                } else {
                    write!(f, "{}+{}", fmt_rational(&self.re), im)
                }
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::parse(s, "a Gaussian rational like `1/2-3/4*i`");
        if t.is_empty() {
            return Err(bad());
        }
        let imag = |p: &str| -> Result<Rational, Error> {
            let body = p.strip_suffix('i').ok_or_else(bad)?;
            let body = body.strip_suffix('*').unwrap_or(body);
            match body {
                "" | "+" => Ok(Rational::one()),
                "-" => Ok(-Rational::one()),
                b => parse_rational(b).map_err(|_| bad()),
            }
        };
        if !t.ends_with('i') {
            return Ok(Self::real(parse_rational(t).map_err(|_| bad())?));
        }
        // split at the last sign that is not leading and not inside an exponent
        let bytes = t.as_bytes();
        let split = (1..bytes.len()).rev().find(|&p| bytes[p] == b'+' || bytes[p] == b'-');
        match split {
            Some(p) => {
                let re = parse_rational(&t[..p]).map_err(|_| bad())?;
                Ok(Self { re, im: imag(&t[p..])? })
            }
            None => Ok(Self { re: Rational::zero(), im: imag(t)? }),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            re: String,
            im: String,
        }
        Repr { re: fmt_rational(&self.re), im: fmt_rational(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            re: String,
            im: String,
        }
        let r = Repr::deserialize(d)?;
        Ok(Self {
            re: parse_rational(&r.re).map_err(D::Error::custom)?,
            im: parse_rational(&r.im).map_err(D::Error::custom)?,
        })
    }
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).fold(Rational::zero(), |acc, c| acc + self.get(r, c) * &v[c]))
            .collect()
    }

    /// Row-echelon form over Z via Bareiss elimination after clearing
    /// denominators row by row. Returns the integer echelon rows and pivots.
    fn echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                let l = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .filter(|row: &Vec<BigInt>| row.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in r + 1..a.len() {
                for j in c + 1..self.cols {
                    let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    a[i][j] = v / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of the right null space, one vector per free column, each scaled
    /// to a primitive integer vector with positive last non-zero entry.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (e, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Rational::zero(); self.cols];
            x[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate().rev() {
                let mut s = Rational::zero();
                for j in p + 1..self.cols {
                    if !x[j].is_zero() && !e[i][j].is_zero() {
                        s += Rational::from_integer(e[i][j].clone()) * &x[j];
                    }
                }
                x[p] = -s / Rational::from_integer(e[i][p].clone());
            }
            basis.push(primitive(x));
        }
        basis
    }
}

fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign = match ints.iter().rev().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| Rational::from_integer(x / &g * &sign)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for n in (3..=30).step_by(2) {
            assert!(bernoulli(n).is_zero(), "B_{n}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(30, 15), BigInt::from(155117520u64));
    }

    #[test]
    fn gaussian_text_round_trip() {
        for s in ["0", "3/2", "-i", "i", "1/2*i", "1/2-3/4*i", "-5+i", "-7/3-2*i"] {
            let z: GaussianRational = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
            assert_eq!(z.to_string().parse::<GaussianRational>().unwrap(), z);
        }
    }

    #[test]
    fn gaussian_field_ops() {
        let z = GaussianRational::new(rat(1, 2), rat(-3, 4));
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert_eq!(z.conj().conj(), z);
        assert_eq!(GaussianRational::i().pow(2), GaussianRational::from_int(-1));
        assert_eq!((&z * &z.conj()).re, z.norm_sqr());
    }

    #[test]
    fn kernel_examples() {
        assert!(QMatrix::identity(2).kernel().is_empty());
        let m = QMatrix::from_rows(vec![vec![int(1), int(-1)]]);
        assert_eq!(m.kernel(), vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn kernel_is_annihilated_and_rank_nullity_holds() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1, 2), int(2), int(0), int(3)],
            vec![int(1), int(4), int(0), int(6)],
            vec![int(0), int(0), rat(1, 3), int(1)],
        ]);
        let k = m.kernel();
        assert_eq!(k.len(), m.cols() - m.rank());
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }
}

//! Exact arithmetic in the coefficient field `F = Q(i)(q)`: rational
//! functions in one transcendental `q` over the Gaussian rationals.
//!
//! A [`Scalar`] is kept in canonical form (monic denominator, numerator and
//! denominator coprime), so structural equality is field equality and every
//! downstream identity check reduces to zero-testing.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Complex, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::HgError;

/// A Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        GaussRat::from_int(0)
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Squared modulus `re^2 + im^2` (the field norm down to `Q`).
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, HgError> {
        if self.is_zero() {
            return Err(HgError::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn to_complex(&self) -> Complex<f64> {
        fn to_f64(r: &BigRational) -> f64 {
            // Good enough for the grid sizes involved; exact values stay exact
            // until this final conversion.
            let num = r.numer();
            let den = r.denom();
            let nf = num.to_string().parse::<f64>().unwrap_or(f64::NAN);
            let df = den.to_string().parse::<f64>().unwrap_or(f64::NAN);
            nf / df
        }
        Complex::new(to_f64(&self.re), to_f64(&self.im))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_part = |f: &mut fmt::Formatter<'_>, im: &BigRational| -> fmt::Result {
            if im == &BigRational::one() {
                write!(f, "i")
            } else if im == &-BigRational::one() {
                write!(f, "-i")
            } else {
                write!(f, "{}i", im)
            }
        };
        if self.re.is_zero() {
            return im_part(f, &self.im);
        }
        write!(f, "{}", self.re)?;
        if self.im.is_positive() {
            write!(f, "+")?;
        }
        im_part(f, &self.im)
    }
}

/// Dense polynomial in `q` over [`GaussRat`], ascending powers, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    pub coeffs: Vec<GaussRat>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn one() -> Self {
        QPoly::constant(GaussRat::one())
    }

    /// `c * q^k`, `k >= 0`.
    pub fn monomial(c: GaussRat, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![GaussRat::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&GaussRat> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(GaussRat::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(GaussRat::zero);
            coeffs.push(&a + &b);
        }
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &QPoly) -> QPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs =
            vec![GaussRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn scale(&self, c: &GaussRat) -> QPoly {
        let mut p = QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        p.trim();
        p
    }

    /// Euclidean division; panics only if `rhs` is zero.
    pub fn div_rem(&self, rhs: &QPoly) -> (QPoly, QPoly) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = QPoly::zero();
        let dlead = rhs.leading().unwrap().clone();
        let dinv = dlead.inv().unwrap();
        let ddeg = rhs.degree().unwrap();
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let c = rem.leading().unwrap() * &dinv;
            let t = QPoly::monomial(c, rdeg - ddeg);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(rhs));
        }
        (quo, rem)
    }

    pub fn gcd(&self, rhs: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        // Normalize to monic.
        if let Some(l) = a.leading().cloned() {
            a = a.scale(&l.inv().unwrap());
        }
        a
    }

    pub fn conj(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn eval_gauss(&self, x: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex<f64>) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex();
        }
        acc
    }
}

/// Element of `Q(i)(q)` in canonical form.
///
/// Invariants: denominator monic and nonzero, `gcd(num, den) = 1`, and the
/// zero element is `0/1`. Equality of values is therefore structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: QPoly,
    den: QPoly,
}

impl Scalar {
    fn reduced(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar {
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let lead = den.leading().unwrap().clone();
        if lead != GaussRat::one() {
            let linv = lead.inv().unwrap();
            num = num.scale(&linv);
            den = den.scale(&linv);
        }
        Scalar { num, den }
    }

    pub fn from_polys(num: QPoly, den: QPoly) -> Result<Self, HgError> {
        if den.is_zero() {
            return Err(HgError::DivisionByZero);
        }
        Ok(Scalar::reduced(num, den))
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn zero() -> Self {
        Scalar {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            num: QPoly::constant(GaussRat::from_int(n)),
            den: QPoly::one(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::reduced(
            QPoly::constant(GaussRat::from_int(num)),
            QPoly::constant(GaussRat::from_int(den)),
        )
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Scalar {
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    /// `q^k` for any integer `k` (negative powers land in the denominator).
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            Scalar {
                num: QPoly::monomial(GaussRat::one(), k as usize),
                den: QPoly::one(),
            }
        } else {
            Scalar {
                num: QPoly::one(),
                den: QPoly::monomial(GaussRat::one(), (-k) as usize),
            }
        }
    }

    /// Exact binomial coefficient `C(n, k)` as a scalar.
    pub fn binomial(n: u64, k: u64) -> Self {
        if k > n {
            return Scalar::zero();
        }
        let mut acc = BigInt::one();
        for j in 0..k.min(n - k) {
            acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
        }
        Scalar::from_gauss(GaussRat {
            re: BigRational::from_integer(acc),
            im: BigRational::zero(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    fn both_polynomial(&self, rhs: &Scalar) -> bool {
        self.den.degree() == Some(0) && rhs.den.degree() == Some(0)
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        // Polynomials (unit denominators) stay reduced under + and *; skip
        // the gcd machinery, which dominates on integer-heavy presets.
        if self.both_polynomial(rhs) {
            return Scalar {
                num: self.num.add(&rhs.num),
                den: QPoly::one(),
            };
        }
        Scalar::reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        if self.both_polynomial(rhs) {
            return Scalar {
                num: self.num.mul(&rhs.num),
                den: QPoly::one(),
            };
        }
        Scalar::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, HgError> {
        if rhs.is_zero() {
            return Err(HgError::DivisionByZero);
        }
        Ok(Scalar::reduced(
            self.num.mul(&rhs.den),
            self.den.mul(&rhs.num),
        ))
    }

    pub fn inv(&self) -> Result<Scalar, HgError> {
        Scalar::one().div(self)
    }

    /// Conjugation: fixes `q`, negates the imaginary unit.
    pub fn conj(&self) -> Scalar {
        Scalar::reduced(self.num.conj(), self.den.conj())
    }

    /// Evaluation homomorphism at `q = 1`; errors on a pole.
    pub fn specialize_q1(&self) -> Result<GaussRat, HgError> {
        let one = GaussRat::one();
        let d = self.den.eval_gauss(&one);
        if d.is_zero() {
            return Err(HgError::PoleAt("q=1".into()));
        }
        let n = self.num.eval_gauss(&one);
        Ok(&n * &d.inv()?)
    }

    /// IEEE double evaluation at a real `q0`; errors on a pole.
    pub fn eval_numeric(&self, q0: f64) -> Result<Complex<f64>, HgError> {
        let x = Complex::new(q0, 0.0);
        let d = self.den.eval_complex(x);
        if d.norm() < 1e-300 {
            return Err(HgError::PoleAt(format!("q={q0}")));
        }
        Ok(self.num.eval_complex(x) / d)
    }
}

// ---------------------------------------------------------------------------
// Text form: `num` or `(num)/(den)`, with polynomial terms like `(3+2i)q^4`.
// ---------------------------------------------------------------------------

fn fmt_poly(p: &QPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut rendered: Vec<String> = vec![];
    for (k, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coeff = format!("{}", c);
        let term = if k == 0 {
            // Parenthesize any constant with an internal sign so the text
            // form stays unambiguous against the term separators.
            if coeff.contains('+') || coeff[1..].contains('-') {
                format!("({})", coeff)
            } else {
                coeff
            }
        } else {
            let power = if k == 1 {
                "q".to_string()
            } else {
                format!("q^{}", k)
            };
            if coeff == "1" {
                power
            } else if coeff == "-1" {
                format!("-{}", power)
            } else {
                format!("({}){}", coeff, power)
            }
        };
        rendered.push(term);
    }
    for (n, term) in rendered.iter().enumerate() {
        if n == 0 {
            write!(f, "{}", term)?;
        } else if let Some(rest) = term.strip_prefix('-') {
            write!(f, " - {}", rest)?;
        } else {
            write!(f, " + {}", term)?;
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QPoly::one() {
            fmt_poly(&self.num, f)
        } else {
            write!(f, "(")?;
            fmt_poly(&self.num, f)?;
            write!(f, ")/(")?;
            fmt_poly(&self.den, f)?;
            write!(f, ")")
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, HgError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(HgError::Parse(format!(
                "expected integer at byte {} of scalar literal",
                self.pos
            )));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(BigInt::from_str(s).unwrap())
    }
}

/// Parses one `a/b` rational (no sign).
fn parse_unsigned_rational(lx: &mut Lexer) -> Result<BigRational, HgError> {
    let n = lx.integer()?;
    if lx.eat(b'/') {
        let d = lx.integer()?;
        if d.is_zero() {
            return Err(HgError::DivisionByZero);
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(n))
    }
}

/// Parses a Gaussian rational like `3`, `-1/2`, `i`, `-2i`, `3+2i`, `1/2-3i`.
/// A trailing sign that introduces a `q` power or a parenthesized group is
/// left unconsumed for the surrounding polynomial parser.
fn parse_gauss(lx: &mut Lexer) -> Result<GaussRat, HgError> {
    let mut re = BigRational::zero();
    let mut im = BigRational::zero();
    loop {
        lx.skip_ws();
        let sign = if lx.eat(b'-') {
            -BigRational::one()
        } else {
            let _ = lx.eat(b'+');
            BigRational::one()
        };
        let mag = if lx.peek() == Some(b'i') {
            BigRational::one()
        } else {
            parse_unsigned_rational(lx)?
        };
        if lx.eat(b'i') {
            im += sign * mag;
        } else {
            re += sign * mag;
        }
        match lx.peek() {
            Some(b'+') | Some(b'-') => {
                // Continue only when the next summand is another gaussian
                // component.
                let save = lx.pos;
                lx.pos += 1;
                let next = lx.peek();
                lx.pos = save;
                match next {
                    Some(c) if c.is_ascii_digit() || c == b'i' => continue,
                    _ => break,
                }
            }
            _ => break,
        }
    }
    Ok(GaussRat { re, im })
}

/// Parses one polynomial in `q` (sums of `(coeff)q^k`, `q^k`, `coeff`).
fn parse_poly(lx: &mut Lexer) -> Result<QPoly, HgError> {
    let mut acc = QPoly::zero();
    loop {
        lx.skip_ws();
        // Consume a term sign only for parenthesized or bare-q terms; bare
        // gaussian literals own their signs component-wise.
        let save = lx.pos;
        let neg = if lx.eat(b'-') {
            true
        } else {
            let _ = lx.eat(b'+');
            false
        };
        let mut coeff;
        if lx.eat(b'(') {
            coeff = parse_gauss(lx)?;
            if !lx.eat(b')') {
                return Err(HgError::Parse("expected ')' in scalar literal".into()));
            }
            if neg {
                coeff = -&coeff;
            }
        } else if lx.peek() == Some(b'q') {
            coeff = if neg {
                -&GaussRat::one()
            } else {
                GaussRat::one()
            };
        } else {
            lx.pos = save;
            coeff = parse_gauss(lx)?;
        }
        let mut k = 0usize;
        if lx.eat(b'q') {
            k = 1;
            if lx.eat(b'^') {
                let e = lx.integer()?;
                k = e.to_string().parse::<usize>().map_err(|_| {
                    HgError::Parse("q exponent out of range".into())
                })?;
            }
        }
        acc = acc.add(&QPoly::monomial(coeff, k));
        match lx.peek() {
            Some(b'+') | Some(b'-') => continue,
            _ => break,
        }
    }
    Ok(acc)
}

impl FromStr for Scalar {
    type Err = HgError;

    fn from_str(s: &str) -> Result<Self, HgError> {
        let s = s.trim();
        // Split `(num)/(den)` at the top level; a bare polynomial otherwise.
        if let Some(stripped) = s.strip_prefix('(') {
            let mut depth = 1usize;
            for (idx, ch) in stripped.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            let rest = stripped[idx + 1..].trim();
                            if let Some(den_part) = rest.strip_prefix('/') {
                                let den_part = den_part.trim();
                                let den_inner = den_part
                                    .strip_prefix('(')
                                    .and_then(|d| d.strip_suffix(')'))
                                    .ok_or_else(|| {
                                        HgError::Parse(
                                            "expected (den) after '/'".into(),
                                        )
                                    })?;
                                let num = parse_full_poly(&stripped[..idx])?;
                                let den = parse_full_poly(den_inner)?;
                                return Scalar::from_polys(num, den);
                            }
                            if rest.is_empty() {
                                // A fully parenthesized expression.
                                return stripped[..idx].parse::<Scalar>();
                            }
                            break;
                        }
                    }
                    _ => {}
                }
            }
        }
        let num = parse_full_poly(s)?;
        Ok(Scalar {
            num,
            den: QPoly::one(),
        })
    }
}

fn parse_full_poly(s: &str) -> Result<QPoly, HgError> {
    let mut lx = Lexer::new(s);
    let p = parse_poly(&mut lx)?;
    lx.skip_ws();
    if lx.pos != lx.src.len() {
        return Err(HgError::Parse(format!(
            "trailing input in scalar literal: {:?}",
            &s[lx.pos..]
        )));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    /// `(q^2 + q^-2)/2`, written with a cleared denominator.
    pub(crate) fn coeff_a() -> Scalar {
        s("(q^4 + 1)/((2)q^2)")
    }

    /// `i(q^-2 - q^2)/2`.
    pub(crate) fn coeff_b() -> Scalar {
        s("((i) + (-i)q^4)/((2)q^2)")
    }

    #[test]
    fn podles_determinant_is_one() {
        // A^2 + B^2 = 1 for the coefficients entering the sphere relations.
        let a = coeff_a();
        let b = coeff_b();
        let lhs = a.mul(&a).add(&b.mul(&b));
        assert_eq!(lhs, Scalar::one());
    }

    #[test]
    fn podles_determinant_independent_route() {
        // Same identity expanded over Laurent monomials by hand:
        // (q^2+q^-2)^2 - (q^-2-q^2)^2 = 4, exponent by exponent.
        use std::collections::BTreeMap;
        let mut sq_sum: BTreeMap<i64, BigRational> = BTreeMap::new();
        let add_prod = |m: &mut BTreeMap<i64, BigRational>, t1: &[(i64, i64)], t2: &[(i64, i64)], sign: i64| {
            for &(e1, c1) in t1 {
                for &(e2, c2) in t2 {
                    *m.entry(e1 + e2).or_insert_with(BigRational::zero) +=
                        BigRational::from_integer(BigInt::from(sign * c1 * c2));
                }
            }
        };
        let a_terms = [(2i64, 1i64), (-2, 1)];
        let b_terms = [(-2i64, 1i64), (2, -1)];
        add_prod(&mut sq_sum, &a_terms, &a_terms, 1);
        add_prod(&mut sq_sum, &b_terms, &b_terms, -1);
        sq_sum.retain(|_, v| !v.is_zero());
        assert_eq!(sq_sum.len(), 1);
        assert_eq!(sq_sum[&0], BigRational::from_integer(BigInt::from(4)));
    }

    #[test]
    fn field_inverse() {
        let p = s("q^4 + 1");
        assert_eq!(p.mul(&p.inv().unwrap()), Scalar::one());
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn conjugation_fixes_q_negates_i() {
        // conj(i(q^4-1)/(q^4+1)) = -i(q^4-1)/(q^4+1)
        let c = s("((i)q^4 + (-i))/(q^4 + 1)");
        assert_eq!(c.conj(), c.neg());
        assert_eq!(c.conj().conj(), c);
    }

    #[test]
    fn specialize_q1_values() {
        assert_eq!(
            coeff_a().specialize_q1().unwrap(),
            GaussRat::one()
        );
        let c = s("((i)q^4 + (-i))/(q^4 + 1)");
        assert!(c.specialize_q1().unwrap().is_zero());
        assert_eq!(Scalar::q_pow(-1).specialize_q1().unwrap(), GaussRat::one());
        // Pole detection.
        let pole = Scalar::from_polys(QPoly::one(), parse_full_poly("q + (-1)").unwrap()).unwrap();
        assert!(pole.specialize_q1().is_err());
    }

    #[test]
    fn eval_numeric_values() {
        let half = Scalar::from_ratio(1, 2);
        let v = half.eval_numeric(1.0).unwrap();
        assert!((v.re - 0.5).abs() < 1e-15 && v.im.abs() < 1e-15);
        let q = Scalar::q_pow(1);
        let v = q.eval_numeric(0.8).unwrap();
        assert!((v.re - 0.8).abs() < 1e-15);
        let v = Scalar::i().eval_numeric(0.3).unwrap();
        assert!((v.im - 1.0).abs() < 1e-15 && v.re.abs() < 1e-15);
    }

    #[test]
    fn display_round_trip() {
        for text in [
            "(q^4 + 1)/((2)q^2)",
            "((i) + (-i)q^4)/((2)q^2)",
            "(3+2i)q^4 + (1/2-3i)q + 1",
            "0",
            "-q",
            "(-1/2)",
        ] {
            let v = s(text);
            let shown = v.to_string();
            assert_eq!(shown.parse::<Scalar>().unwrap(), v, "round trip of {text} via {shown}");
        }
    }
}

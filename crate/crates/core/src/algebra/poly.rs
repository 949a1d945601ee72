//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are addressed by index; monomials store their exponent vector
//! with trailing zeros trimmed, so polynomials in different numbers of
//! variables mix freely. Terms are kept in a `BTreeMap` ordered by the
//! graded-lex monomial order, which makes the leading term the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Exponent vector of a monomial, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = exp;
        Monomial::from_exponents(v)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Highest variable index with a nonzero exponent.
    pub fn max_var(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial::from_exponents(v)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let v = (0..other.0.len()).map(|i| other.exp(i) - self.exp(i)).collect();
        Monomial::from_exponents(v)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        Monomial::from_exponents((0..n).map(|i| self.0[i].min(other.0[i])).collect())
    }

    /// Same monomial with the exponent of `var` replaced.
    pub fn with_exp(&self, var: usize, exp: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = exp;
        Monomial::from_exponents(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(c, Monomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(index: usize) -> Self {
        Poly::monomial(Rational::one(), Monomial::var(index, 1))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// One past the highest variable index that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().filter_map(Monomial::max_var).max().map_or(0, |v| v + 1)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial(&self, var: usize) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(var);
            (e > 0).then(|| (m.with_exp(var, e - 1), c * Rational::from_integer(BigInt::from(e))))
        }))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let x = point.get(i).cloned().unwrap_or_else(Rational::zero);
                    t *= num_traits::pow(x, e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = rational_to_f64(c);
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        t *= point.get(i).copied().unwrap_or(0.0).powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Coefficient of `var^deg`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, var: usize, deg: u32) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exp(var) == deg)
                .map(|(m, c)| (m.with_exp(var, 0), c.clone())),
        )
    }

    /// Exact division. Returns `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c / lc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Greatest common divisor, normalised to be monic (1 for coprime inputs).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if self == other {
            return self.monic();
        }
        if self.num_terms() == 1 || other.num_terms() == 1 {
            let m = self.min_monomial().gcd(&other.min_monomial());
            return Poly::monomial(Rational::one(), m);
        }
        if provably_coprime(self, other) {
            return Poly::one();
        }
        if let Some(g) = heuristic_gcd(&self.integer_primitive().0, &other.integer_primitive().0, 0) {
            return g.monic();
        }
        // Prefer a variable missing from one side, then the lowest degree.
        let var = (0..self.num_vars().max(other.num_vars()))
            .filter_map(|v| {
                let (da, db) = (self.degree_in(v), other.degree_in(v));
                (da + db > 0).then_some((da.min(db) > 0, da.max(db), v))
            })
            .min()
            .expect("nonconstant")
            .2;
        let (da, db) = (self.degree_in(var), other.degree_in(var));
        if da == 0 {
            return self.gcd(&other.content_in(var));
        }
        if db == 0 {
            return other.gcd(&self.content_in(var));
        }
        let ca = self.content_in(var);
        let cb = other.content_in(var);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = other.div_exact(&cb).expect("content divides");
        let g = primitive_prs_gcd(pa, pb, var);
        (&ca.gcd(&cb) * &g).monic()
    }

    /// Monomial gcd of all terms.
    fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Content with respect to `var`: the gcd of the coefficients of powers of `var`.
    pub fn content_in(&self, var: usize) -> Poly {
        let d = self.degree_in(var);
        let mut g = Poly::zero();
        for e in (0..=d).rev() {
            let c = self.coeff_in(var, e);
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part in `var`, scaled to be monic so coefficients stay small.
    fn primitive_part_in(&self, var: usize) -> Poly {
        let c = self.content_in(var);
        self.div_exact(&c).expect("content divides").monic()
    }

    /// Pseudo-remainder of `self` by `divisor` viewed as univariate in `var`.
    fn pseudo_rem(&self, divisor: &Poly, var: usize) -> Poly {
        let db = divisor.degree_in(var);
        let lcb = divisor.coeff_in(var, db);
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(var);
            if dr < db {
                break;
            }
            let lcr = r.coeff_in(var, dr);
            let shift = Poly::monomial(Rational::one(), Monomial::var(var, dr - db));
            r = &(&lcb * &r) - &(&(&lcr * &shift) * divisor);
        }
        r
    }

    /// Render with the given variable names (falls back to `x{i}`).
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

fn primitive_prs_gcd(a: Poly, b: Poly, var: usize) -> Poly {
    let (mut r0, mut r1) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        let r = r0.pseudo_rem(&r1, var);
        if r.is_zero() {
            return r1.primitive_part_in(var);
        }
        if r.degree_in(var) == 0 {
            return Poly::one();
        }
        r0 = r1;
        r1 = r.primitive_part_in(var);
    }
}

impl Poly {
    /// Primitive integer polynomial proportional to `self`, with positive
    /// leading coefficient, and the integer content removed.
    fn integer_primitive(&self) -> (Poly, BigInt) {
        let lcm = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.terms.values().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        let terms = self.terms.keys().cloned().zip(ints).map(|(m, c)| (m, Rational::from_integer(c / &content)));
        (Poly::from_terms(terms), content)
    }

    fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.numer().abs()).max().unwrap_or_default()
    }

    /// Integer polynomial with `var` set to `xi`.
    fn eval_var(&self, var: usize, xi: &BigInt) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let v = c * Rational::from_integer(num_traits::pow(xi.clone(), m.exp(var) as usize));
            out.add_term(m.with_exp(var, 0), v);
        }
        out
    }
}

const HEURISTIC_BITS: u64 = 4096;

/// Heuristic gcd of integer polynomials (evaluate at a large integer, recurse,
/// rebuild by symmetric `ξ`-adic expansion and confirm by division). The result
/// includes the integer content. `None` when the heuristic gives up.
fn heuristic_gcd(a: &Poly, b: &Poly, depth: usize) -> Option<Poly> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let (pa, ca) = a.integer_primitive();
    let (pb, cb) = b.integer_primitive();
    let content = Poly::constant(Rational::from_integer(ca.gcd(&cb)));
    let n = pa.num_vars().max(pb.num_vars());
    if n == 0 {
        return Some(content);
    }
    if depth > 8 {
        return None;
    }
    let var = n - 1;
    let deg = pa.degree_in(var).max(pb.degree_in(var)) as u64;
    let mut xi: BigInt = BigInt::from(2) * pa.max_abs_coeff().min(pb.max_abs_coeff()) + BigInt::from(29);
    for _ in 0..6 {
        if xi.bits() * (deg + 1) > HEURISTIC_BITS {
            return None;
        }
        let gamma = heuristic_gcd(&pa.eval_var(var, &xi), &pb.eval_var(var, &xi), depth + 1)?;
        let mut g = Poly::zero();
        let half = &xi / BigInt::from(2);
        for (m, c) in &gamma.terms {
            let mut v = c.to_integer();
            let mut e = 0u32;
            while !v.is_zero() {
                let mut digit = v.mod_floor(&xi);
                if digit > half {
                    digit -= &xi;
                }
                g.add_term(m.with_exp(var, e), Rational::from_integer(digit.clone()));
                v = (v - digit) / &xi;
                e += 1;
            }
        }
        if !g.is_zero() {
            let (g, _) = g.integer_primitive();
            if pa.div_exact(&g).is_some() && pb.div_exact(&g).is_some() {
                return Some(&g * &content);
            }
        }
        xi = xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn bigint_mod(n: &BigInt) -> u64 {
    let m = BigInt::from(PRIME);
    let r = ((n % &m) + &m) % &m;
    r.to_u64().expect("reduced")
}

/// `None` if the denominator vanishes modulo the prime.
fn rational_mod(r: &Rational) -> Option<u64> {
    let d = bigint_mod(r.denom());
    (d != 0).then(|| mul_mod(bigint_mod(r.numer()), inv_mod(d)))
}

/// Coefficients in `var` modulo the prime after substituting `point` for the
/// other variables.
fn specialize_mod(p: &Poly, var: usize, point: &[u64]) -> Option<Vec<u64>> {
    let mut out = vec![0u64; p.degree_in(var) as usize + 1];
    for (m, c) in &p.terms {
        let mut v = rational_mod(c)?;
        for (i, &e) in m.0.iter().enumerate() {
            if i != var {
                for _ in 0..e {
                    v = mul_mod(v, point[i]);
                }
            }
        }
        let slot = &mut out[m.exp(var) as usize];
        *slot = (*slot + v) % PRIME;
    }
    Some(out)
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().expect("nonempty"));
        while a.len() >= b.len() {
            let q = mul_mod(*a.last().expect("nonempty"), inv);
            let shift = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + PRIME - mul_mod(q, c)) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sufficient test for `gcd = 1`. A common factor of positive degree in `var`
/// survives any specialisation (and reduction modulo a prime) that keeps both
/// leading coefficients in `var` nonzero, so a constant image rules it out.
fn provably_coprime(a: &Poly, b: &Poly) -> bool {
    let n = a.num_vars().max(b.num_vars());
    let point: Vec<u64> = (0..n as u64).map(|i| 3 + 4 * i).collect();
    (0..n).all(|var| {
        let (da, db) = (a.degree_in(var) as usize, b.degree_in(var) as usize);
        if da == 0 || db == 0 {
            return true;
        }
        match (specialize_mod(a, var, &point), specialize_mod(b, var, &point)) {
            (Some(sa), Some(sb)) if sa[da] != 0 && sb[db] != 0 => gcd_degree_mod(sa, sb) == 0,
            _ => false,
        }
    })
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerator or denominator: scale both down first.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

fn var_name(names: &[String], i: usize) -> String {
    names.get(i).cloned().unwrap_or_else(|| format!("x{i}"))
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // Highest term first.
        for (n, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        var_name(self.names, i)
                    } else {
                        format!("{}^{}", var_name(self.names, i), e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_rational(&abs))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    fn c(v: i64) -> Poly {
        Poly::from_int(v)
    }

    #[test]
    fn graded_lex_leading_term() {
        // x0 + x1^2: degree wins over lex.
        let p = &x(0) + &x(1).pow(2);
        assert_eq!(p.leading().unwrap().0, &Monomial::var(1, 2));
        // x0*x1 vs x1^2: same degree, x0 is lex-greater.
        let q = &(&x(0) * &x(1)) + &x(1).pow(2);
        assert_eq!(q.leading().unwrap().0, &Monomial::from_exponents(vec![1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &c(1);
        let b = &x(1) - &x(0);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(x(0).div_exact(&x(1)), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = &(&x(0) * &x(1)) + &c(2);
        let a = &f * &(&x(0) - &x(2));
        let b = &f * &(&x(1).pow(2) + &c(1));
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(1);
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn gcd_of_repeated_factors() {
        let u = &(&(&x(0) * &x(1)) * &x(2)).pow(2) - &c(1);
        let a = &u.pow(3) * &(&x(0) + &c(3));
        let b = &u.pow(2) * &(&x(1).pow(2) - &x(2)).scale(&Rational::new(2.into(), 3.into()));
        assert_eq!(a.gcd(&b), u.pow(2).monic());
        assert_eq!(primitive_prs_gcd(a.clone(), u.clone(), 2).monic(), u.monic());
    }

    #[test]
    fn gcd_with_monomial() {
        let a = &(&x(0).pow(2) * &x(1)) + &x(0).pow(3);
        let b = &x(0).pow(2) * &x(2);
        assert_eq!(a.gcd(&b), x(0).pow(2));
    }

    #[test]
    fn partial_derivative() {
        let p = &(&x(0).pow(3) * &x(1)) + &c(7);
        assert_eq!(p.partial(0), (&x(0).pow(2) * &x(1)).scale(&Rational::from_integer(3.into())));
        assert!(c(5).partial(0).is_zero());
    }

    #[test]
    fn display_uses_names() {
        let names = vec!["a".to_string(), "b".to_string()];
        let p = &(&x(0).pow(2) * &x(1)) - &c(3);
        assert_eq!(p.display_with(&names).to_string(), "a^2*b - 3");
    }
}

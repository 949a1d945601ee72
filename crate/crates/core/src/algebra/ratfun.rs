//! Rational functions `num / den` in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{rational_to_f64, Poly};
use super::Rational;

/// A rational function kept canonical: `gcd(num, den) = 1` and `den` monic
/// under the graded-lex order. Structural equality is therefore equality of
/// functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn from_int(c: i64) -> Self {
        RatFun::from_poly(Poly::from_int(c))
    }

    pub fn constant(c: Rational) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn var(i: usize) -> Self {
        RatFun::from_poly(Poly::var(i))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    /// Build `num / den`, reducing to canonical form. `None` if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFun::zero());
        }
        if let Some(c) = den.as_constant() {
            return Some(RatFun::from_poly(num.scale(&c.recip())));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Some(RatFun::normalized(num, den))
    }

    /// Make the denominator monic; assumes the pair is already coprime.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Degree measure used for pivot selection.
    pub fn total_degree(&self) -> u32 {
        self.num.total_degree() + self.den.total_degree()
    }

    pub fn num_vars(&self) -> usize {
        self.num.num_vars().max(self.den.num_vars())
    }

    pub fn recip(&self) -> Option<RatFun> {
        if self.num.is_zero() {
            return None;
        }
        Some(RatFun::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> RatFun {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn partial(&self, var: usize) -> RatFun {
        if self.den.is_one() {
            return RatFun::from_poly(self.num.partial(var));
        }
        let dn = self.num.partial(var);
        let dd = self.den.partial(var);
        if dd.is_zero() {
            return RatFun::new(dn, self.den.clone()).expect("nonzero denominator");
        }
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        RatFun::new(top, self.den.pow(2)).expect("nonzero denominator")
    }

    /// Exact value at a rational point; `None` when the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.as_constant().map(|c| rational_to_f64(&c))
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> RatFunDisplay<'a> {
        RatFunDisplay { f: self, names }
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFun::from_poly(&self.num + &rhs.num);
            }
            return RatFun::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel so the product stays reduced without a final gcd.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        RatFun::normalized(&a * &c, &b * &d)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    /// Panics on division by the zero function; use [`RatFun::recip`] to check.
    fn div(self, rhs: &RatFun) -> RatFun {
        self * &rhs.recip().expect("division by zero rational function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

pub struct RatFunDisplay<'a> {
    f: &'a RatFun,
    names: &'a [String],
}

impl fmt::Display for RatFunDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.f.num.display_with(self.names).to_string();
        if self.f.den.is_one() {
            return write!(f, "{num}");
        }
        let den = self.f.den.display_with(self.names).to_string();
        let wrap = |s: String, p: &Poly| if p.num_terms() > 1 { format!("({s})") } else { s };
        let den = if self.f.den.num_terms() == 1 && den.contains('*') { format!("({den})") } else { wrap(den, &self.f.den) };
        write!(f, "{}/{}", wrap(num, &self.f.num), den)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> RatFun {
        RatFun::var(i)
    }

    #[test]
    fn canonical_form_cancels() {
        // (x0^2 - 1) / (x0 - 1) = x0 + 1
        let num = &Poly::var(0).pow(2) - &Poly::one();
        let den = &Poly::var(0) - &Poly::one();
        let f = RatFun::new(num, den).unwrap();
        assert_eq!(f, &x(0) + &RatFun::one());
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFun::new(Poly::one(), Poly::var(0).scale(&Rational::from_integer(2.into()))).unwrap();
        assert!(f.denom().leading_coeff().is_one());
        assert_eq!(f.numer(), &Poly::constant(Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn field_inverse() {
        let f = &x(0) + &(&x(1) * &x(1));
        let g = &f / &f;
        assert!(g.is_one());
        assert!(RatFun::zero().recip().is_none());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFun::new(Poly::one(), Poly::zero()).is_none());
    }

    #[test]
    fn quotient_rule() {
        // d/dx0 (1 / x0) = -1 / x0^2
        let f = x(0).recip().unwrap();
        let expected = -&x(0).pow(2).recip().unwrap();
        assert_eq!(f.partial(0), expected);
    }

    #[test]
    fn eval_reports_pole() {
        let f = x(0).recip().unwrap();
        assert!(f.eval(&[Rational::zero()]).is_none());
        assert_eq!(f.eval(&[Rational::from_integer(4.into())]), Some(Rational::new(1.into(), 4.into())));
    }
}

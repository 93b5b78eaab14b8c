//! Rational functions in canonical form.

use super::poly::{gcd, MultiPoly};
use super::rational::Rational;

/// `num / den` with coprime parts; `den` is a primitive integer polynomial with positive
/// leading coefficient, so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }
    /// Canonicalizes `num / den`; returns `None` if `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::from_poly(num));
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Some(Self::scaled(n, d))
    }
    /// Normalizes the denominator scaling of an already coprime pair.
    fn scaled(num: MultiPoly, den: MultiPoly) -> Self {
        let c = den.integer_content();
        if c.is_one() {
            RatFunc { num, den }
        } else {
            let inv = c.recip().unwrap();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
    pub fn num(&self) -> &MultiPoly {
        &self.num
    }
    pub fn den(&self) -> &MultiPoly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }
    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }
    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn scale(&self, c: &Rational) -> Self {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        self.add_sub(o, false)
    }
    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add_sub(o, true)
    }
    fn add_sub(&self, o: &RatFunc, negate: bool) -> RatFunc {
        let comb = |a: &MultiPoly, b: &MultiPoly| if negate { a.sub(b) } else { a.add(b) };
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(comb(&self.num, &o.num));
        }
        if self.den == o.den {
            let n = comb(&self.num, &o.num);
            return Self::new(n, self.den.clone()).unwrap();
        }
        if o.den.is_one() {
            return Self::scaled(comb(&self.num, &o.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return Self::scaled(comb(&self.num.mul(&o.den), &o.num), o.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = comb(&self.num.mul(&o.den), &o.num.mul(&self.den));
            return Self::scaled(n, self.den.mul(&o.den));
        }
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let n = comb(&self.num.mul(&d2), &o.num.mul(&d1));
        let g2 = gcd(&n, &g);
        if g2.is_one() {
            Self::scaled(n, d1.mul(&o.den))
        } else {
            let n = n.div_exact(&g2).unwrap();
            let d = d1.mul(&o.den).div_exact(&g2).unwrap();
            Self::scaled(n, d)
        }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return Self::from_poly(MultiPoly::zero());
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d2 = if g1.is_one() { o.den.clone() } else { o.den.div_exact(&g1).unwrap() };
        let n2 = if g2.is_one() { o.num.clone() } else { o.num.div_exact(&g2).unwrap() };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        Self::scaled(n1.mul(&n2), d1.mul(&d2))
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(Self::scaled(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Option<RatFunc> {
        Some(self.mul(&o.inv()?))
    }

    /// Exact square root of numerator and denominator, when both exist.
    pub fn sqrt_exact(&self) -> Option<RatFunc> {
        // den is primitive with positive leading coefficient, so a square den is the
        // square of a primitive polynomial and the rational factor sits entirely in num.
        let d = self.den.sqrt_exact()?;
        let n = self.num.sqrt_exact()?;
        RatFunc::new(n, d)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Option<Result<Rational, ()>> {
        let n = self.num.evaluate(point)?;
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Some(Err(()));
        }
        Some(Ok(&n / &d))
    }

    pub fn substitute(&self, v: usize, value: &Rational) -> Option<RatFunc> {
        RatFunc::new(self.num.substitute(v, value), self.den.substitute(v, value))
    }

    pub fn format_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.den.is_one() {
            self.num.format_with(names)
        } else {
            format!("({})/({})", self.num.format_with(names), self.den.format_with(names))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> MultiPoly {
        MultiPoly::var(0)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(Rational::from_int(n))
    }

    #[test]
    fn cancels_common_factor() {
        let f = RatFunc::new(t().mul(&t()).sub(&c(1)), t().sub(&c(1))).unwrap();
        assert_eq!(f, RatFunc::from_poly(t().add(&c(1))));
    }

    #[test]
    fn inverse_swaps_parts() {
        let f = RatFunc::new(t(), t().add(&c(1))).unwrap();
        let g = f.inv().unwrap();
        assert_eq!(g, RatFunc::new(t().add(&c(1)), t()).unwrap());
        assert_eq!(f.mul(&g), RatFunc::from_poly(c(1)));
    }

    #[test]
    fn denominator_scaling_is_canonical() {
        let a = RatFunc::new(c(1), t().scale(&Rational::from_int(-2))).unwrap();
        let b = RatFunc::new(c(-1).scale(&Rational::new(1, 2)), t()).unwrap();
        assert_eq!(a, b);
        assert!(a.den().leading_coeff().is_positive());
    }

    #[test]
    fn sum_then_difference_is_zero() {
        let a = RatFunc::new(t().add(&c(3)), t().mul(&t()).add(&c(1))).unwrap();
        let b = RatFunc::new(c(2), t().sub(&c(5))).unwrap();
        assert!(a.add(&b).sub(&b).sub(&a).is_zero());
    }
}

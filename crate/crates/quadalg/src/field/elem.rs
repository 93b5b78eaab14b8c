use super::poly::{Monomial, MultiPoly};
use super::ratfunc::RatFunc;
use super::rational::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input")]
    ZeroInput,
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// Field of definition: the rationals or a rational function field in named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldCtx {
    Rationals,
    FunctionField { variables: Vec<String> },
}

impl FieldCtx {
    pub fn function_field<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Self {
        let variables: Vec<String> = vars.into_iter().map(Into::into).collect();
        if variables.is_empty() {
            FieldCtx::Rationals
        } else {
            FieldCtx::FunctionField { variables }
        }
    }
    pub fn variables(&self) -> &[String] {
        match self {
            FieldCtx::Rationals => &[],
            FieldCtx::FunctionField { variables } => variables,
        }
    }
    pub fn num_vars(&self) -> usize {
        self.variables().len()
    }
    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldCtx::Rationals)
    }
    /// Name of variable `i`; indices beyond the context print as `z{i}`.
    pub fn var_name(&self, i: usize) -> String {
        self.variables().get(i).cloned().unwrap_or_else(|| format!("z{i}"))
    }
    /// The generator `t_i` of the function field.
    pub fn var(&self, i: usize) -> FieldElem {
        assert!(i < self.num_vars(), "variable index out of range");
        FieldElem::indeterminate(i)
    }
    pub fn var_by_name(&self, name: &str) -> Option<FieldElem> {
        self.variables().iter().position(|v| v == name).map(FieldElem::indeterminate)
    }
    /// Context with extra variables appended after the existing ones.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> FieldCtx {
        let mut vars = self.variables().to_vec();
        vars.extend(extra.into_iter().map(Into::into));
        FieldCtx::function_field(vars)
    }
    pub fn format(&self, x: &FieldElem) -> String {
        match x {
            FieldElem::Q(r) => r.to_string(),
            FieldElem::F(f) => f.format_with(&|i| self.var_name(i)),
        }
    }
    pub fn parse(&self, s: &str) -> Result<FieldElem, FieldError> {
        super::parse::parse_scalar(self, s)
    }
    pub fn has_distinct_names(&self) -> bool {
        let vs = self.variables();
        let mut sorted = vs.to_vec();
        sorted.sort();
        sorted.dedup();
        sorted.len() == vs.len()
    }
}

/// An exact scalar. Constant rational functions are always stored as `Q`, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElem {
    Q(Rational),
    F(Box<RatFunc>),
}

/// Outcome of a square test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareTest {
    Yes(FieldElem),
    No,
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem::Q(Rational::zero())
    }
    pub fn one() -> Self {
        FieldElem::Q(Rational::one())
    }
    pub fn from_int(n: i64) -> Self {
        FieldElem::Q(Rational::from_int(n))
    }
    pub fn ratio(n: i64, d: i64) -> Self {
        FieldElem::Q(Rational::new(n, d))
    }
    pub fn half() -> Self {
        Self::ratio(1, 2)
    }
    /// The polynomial variable with global index `i`.
    pub fn indeterminate(i: usize) -> Self {
        FieldElem::F(Box::new(RatFunc::from_poly(MultiPoly::var(i))))
    }
    pub fn from_poly(p: MultiPoly) -> Self {
        Self::from_ratfunc(RatFunc::from_poly(p))
    }
    pub fn from_ratfunc(f: RatFunc) -> Self {
        match f.constant_value() {
            Some(c) => FieldElem::Q(c),
            None => FieldElem::F(Box::new(f)),
        }
    }
    pub fn to_ratfunc(&self) -> RatFunc {
        match self {
            FieldElem::Q(r) => RatFunc::from_poly(MultiPoly::constant(r.clone())),
            FieldElem::F(f) => (**f).clone(),
        }
    }
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElem::Q(r) => Some(r),
            FieldElem::F(_) => None,
        }
    }
    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElem::Q(r) if r.is_zero())
    }
    pub fn is_one(&self) -> bool {
        matches!(self, FieldElem::Q(r) if r.is_one())
    }
    pub fn is_rational(&self) -> bool {
        matches!(self, FieldElem::Q(_))
    }
    pub fn scale(&self, c: &Rational) -> Self {
        match self {
            FieldElem::Q(r) => FieldElem::Q(r * c),
            FieldElem::F(f) => {
                if c.is_zero() {
                    FieldElem::zero()
                } else {
                    FieldElem::F(Box::new(f.scale(c)))
                }
            }
        }
    }
    pub fn inv(&self) -> Result<Self, FieldError> {
        match self {
            FieldElem::Q(r) => r.recip().map(FieldElem::Q).ok_or(FieldError::DivisionByZero),
            FieldElem::F(f) => Ok(Self::from_ratfunc(f.inv().ok_or(FieldError::DivisionByZero)?)),
        }
    }
    pub fn div(&self, o: &Self) -> Result<Self, FieldError> {
        match o {
            FieldElem::Q(r) => Ok(self.scale(&r.recip().ok_or(FieldError::DivisionByZero)?)),
            _ => Ok(self * &o.inv()?),
        }
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FieldElem::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
    pub fn is_square(&self) -> Result<SquareTest, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        let root = match self {
            FieldElem::Q(r) => r.sqrt_exact().map(FieldElem::Q),
            FieldElem::F(f) => f.sqrt_exact().map(Self::from_ratfunc),
        };
        Ok(match root {
            Some(r) => SquareTest::Yes(r),
            None => SquareTest::No,
        })
    }
    /// Substitutes `point[i]` for variable `i`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, FieldError> {
        match self {
            FieldElem::Q(r) => Ok(r.clone()),
            FieldElem::F(f) => {
                let needed = f.num().variables().into_iter().chain(f.den().variables()).max().unwrap_or(0) + 1;
                match f.evaluate(point) {
                    None => Err(FieldError::PointLength { expected: needed, got: point.len() }),
                    Some(Err(())) => Err(FieldError::PoleAtPoint),
                    Some(Ok(v)) => Ok(v),
                }
            }
        }
    }
    /// Substitutes a rational value for a single variable.
    pub fn substitute(&self, var: usize, value: &Rational) -> Result<Self, FieldError> {
        match self {
            FieldElem::Q(_) => Ok(self.clone()),
            FieldElem::F(f) => f.substitute(var, value).map(Self::from_ratfunc).ok_or(FieldError::PoleAtPoint),
        }
    }
    /// Whether variable `v` occurs.
    pub fn contains_var(&self, v: usize) -> bool {
        match self {
            FieldElem::Q(_) => false,
            FieldElem::F(f) => f.num().contains_var(v) || f.den().contains_var(v),
        }
    }
    /// Sorted list of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        match self {
            FieldElem::Q(_) => vec![],
            FieldElem::F(f) => {
                let mut v = f.num().variables();
                v.extend(f.den().variables());
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }
    /// Writes `self = t^k * r` with `r` free of `t`, if possible.
    pub fn split_monomial_in(&self, v: usize) -> Option<(i64, FieldElem)> {
        match self {
            FieldElem::Q(_) => Some((0, self.clone())),
            FieldElem::F(f) => {
                let (kn, rn) = homogeneous_part(f.num(), v)?;
                let (kd, rd) = homogeneous_part(f.den(), v)?;
                let r = RatFunc::new(rn, rd)?;
                Some((kn as i64 - kd as i64, Self::from_ratfunc(r)))
            }
        }
    }
    /// Sign of a rational value; `None` for non-constants.
    pub fn rational_sign(&self) -> Option<i32> {
        self.as_rational().map(|r| r.signum())
    }
}

fn homogeneous_part(p: &MultiPoly, v: usize) -> Option<(u32, MultiPoly)> {
    let k = p.min_degree_in(v);
    if p.degree_in(v) != k {
        return None;
    }
    let m = Monomial::var_pow(v, k);
    Some((k, p.div_exact(&MultiPoly::term(m, Rational::one()))?))
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(r) => write!(f, "{r}"),
            FieldElem::F(g) => write!(f, "{}", g.format_with(&|i| format!("t{i}"))),
        }
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}
impl From<Rational> for FieldElem {
    fn from(r: Rational) -> Self {
        FieldElem::Q(r)
    }
}

fn combine(a: &FieldElem, b: &FieldElem, op: u8) -> FieldElem {
    use FieldElem::*;
    match (a, b) {
        (Q(x), Q(y)) => Q(match op {
            0 => x + y,
            1 => x - y,
            _ => x * y,
        }),
        (F(_), Q(y)) if op == 2 => a.scale(y),
        (Q(x), F(_)) if op == 2 => b.scale(x),
        _ => {
            let (f, g) = (a.to_ratfunc(), b.to_ratfunc());
            FieldElem::from_ratfunc(match op {
                0 => f.add(&g),
                1 => f.sub(&g),
                _ => f.mul(&g),
            })
        }
    }
}

macro_rules! field_op {
    ($tr:ident, $m:ident, $code:expr) => {
        impl<'a> $tr<&'a FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &'a FieldElem) -> FieldElem {
                combine(self, o, $code)
            }
        }
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                combine(&self, &o, $code)
            }
        }
    };
}
field_op!(Add, add, 0);
field_op!(Sub, sub, 1);
field_op!(Mul, mul, 2);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Q(r) => FieldElem::Q(-r),
            FieldElem::F(f) => FieldElem::F(Box::new(f.neg())),
        }
    }
}
impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// Random denominator-free scalar: an integer in `[-coeff_bound, coeff_bound]` over the
/// rationals, or a polynomial of total degree at most `degree_bound` over a function field.
pub fn random_element_with<R: Rng>(ctx: &FieldCtx, rng: &mut R, coeff_bound: i64, degree_bound: u32) -> FieldElem {
    let bound = coeff_bound.max(1);
    let n = ctx.num_vars();
    if n == 0 {
        return FieldElem::from_int(rng.gen_range(-bound..=bound));
    }
    let mut terms = Vec::new();
    for m in monomials_up_to(n, degree_bound) {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            terms.push((m, Rational::from_int(c)));
        }
    }
    FieldElem::from_poly(MultiPoly::from_terms(terms))
}

pub fn random_element(ctx: &FieldCtx, seed: u64, coeff_bound: i64, degree_bound: u32) -> FieldElem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_element_with(ctx, &mut rng, coeff_bound, degree_bound)
}

/// All monomials in `n` variables of total degree at most `d`, in a fixed order.
fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![(Monomial::one(), 0usize)];
    for _ in 0..d {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for v in *start..n {
                let m2 = m.mul(&Monomial::var(v));
                out.push(m2.clone());
                next.push((m2, v));
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_field_results_collapse_to_rationals() {
        let t = FieldElem::indeterminate(0);
        let x = &(&t + &FieldElem::one()) - &t;
        assert_eq!(x, FieldElem::one());
        assert!(x.is_rational());
    }

    #[test]
    fn evaluate_and_pole() {
        let t = FieldElem::indeterminate(0);
        let f = (&t + &FieldElem::one()).div(&t).unwrap();
        assert_eq!(f.evaluate(&[Rational::from_int(2)]).unwrap(), Rational::new(3, 2));
        assert_eq!(t.inv().unwrap().evaluate(&[Rational::zero()]), Err(FieldError::PoleAtPoint));
        assert_eq!(FieldElem::from_int(5).evaluate(&[]).unwrap(), Rational::from_int(5));
    }

    #[test]
    fn squares() {
        let t = FieldElem::indeterminate(0);
        assert_eq!(FieldElem::ratio(9, 4).is_square().unwrap(), SquareTest::Yes(FieldElem::ratio(3, 2)));
        assert_eq!(FieldElem::from_int(-1).is_square().unwrap(), SquareTest::No);
        assert_eq!((&t * &t).is_square().unwrap(), SquareTest::Yes(t.clone()));
        assert_eq!(FieldElem::zero().is_square(), Err(FieldError::ZeroInput));
    }

    #[test]
    fn random_contract() {
        let q = FieldCtx::Rationals;
        let a = random_element(&q, 1, 10, 0);
        assert_eq!(a, random_element(&q, 1, 10, 0));
        let r = a.as_rational().unwrap();
        assert!(r.is_integer() && r.abs() <= Rational::from_int(10));
        let ft = FieldCtx::function_field(["t"]);
        let p = random_element(&ft, 7, 5, 2);
        if let FieldElem::F(f) = &p {
            assert!(f.is_poly() && f.num().total_degree() <= 2);
        }
    }

    #[test]
    fn split_monomial() {
        let ctx = FieldCtx::function_field(["s", "t"]);
        let x = ctx.parse("-3*s^2/(t*s^5)").unwrap();
        let (k, r) = x.split_monomial_in(0).unwrap();
        assert_eq!(k, -3);
        assert_eq!(ctx.format(&r), "(-3)/(t)");
        assert!(ctx.parse("s+1").unwrap().split_monomial_in(0).is_none());
    }
}

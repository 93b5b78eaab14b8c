//! Sparse multivariate polynomials over the rationals in graded-lexicographic order.

use super::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::HashMap;

/// A monomial stored sparsely as `(variable index, exponent)` pairs sorted by index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[(u16, u16); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }
    pub fn var(v: usize) -> Self {
        Self::var_pow(v, 1)
    }
    pub fn var_pow(v: usize, e: u32) -> Self {
        let mut m = SmallVec::new();
        if e > 0 {
            m.push((v as u16, e as u16));
        }
        Monomial(m)
    }
    pub fn from_pairs(mut pairs: Vec<(usize, u32)>) -> Self {
        pairs.sort_unstable();
        let mut out: SmallVec<[(u16, u16); 4]> = SmallVec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 as usize == v => last.1 += e as u16,
                _ => out.push((v as u16, e as u16)),
            }
        }
        Monomial(out)
    }
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }
    pub fn exp(&self, v: usize) -> u32 {
        self.0
            .iter()
            .find(|p| p.0 as usize == v)
            .map(|p| p.1 as u32)
            .unwrap_or(0)
    }
    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e as u32))
    }
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[(u16, u16); 4]> = SmallVec::new();
        let mut j = 0;
        for &(v, e) in self.0.iter() {
            if j < o.0.len() && o.0[j].0 < v {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == v {
                let f = o.0[j].1;
                j += 1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
            } else {
                out.push((v, e));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Monomial(out))
    }
    /// Componentwise minimum of exponents.
    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        let (a, b) = (&self.0, &o.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1.min(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }
    /// Half of every exponent, if all are even.
    pub fn sqrt(&self) -> Option<Monomial> {
        if self.0.iter().all(|&(_, e)| e % 2 == 0) {
            Some(Monomial(self.0.iter().map(|&(v, e)| (v, e / 2)).collect()))
        } else {
            None
        }
    }
    /// Removes variable `v`, returning its exponent and the rest.
    pub fn split_var(&self, v: usize) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|p| {
                if p.0 as usize == v {
                    e = p.1 as u32;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (e, Monomial(rest))
    }
    fn lex_cmp(&self, o: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &o.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (i < a.len(), j < b.len()) {
                (false, false) => return Ordering::Equal,
                (true, false) => return Ordering::Greater,
                (false, true) => return Ordering::Less,
                (true, true) => match a[i].0.cmp(&b[j].0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if a[i].1 != b[j].1 {
                            return a[i].1.cmp(&b[j].1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.lex_cmp(o))
    }
}
impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial with terms sorted in decreasing graded-lex order and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }
    pub fn one() -> Self {
        Self::constant(Rational::one())
    }
    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(Monomial::one(), c)] }
        }
    }
    pub fn var(v: usize) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }
    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }
    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            let e = map.entry(m).or_insert_with(Rational::zero);
            *e = &*e + &c;
        }
        Self::from_map(map)
    }
    fn from_map(map: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { terms }
    }
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }
    pub fn leading_coeff(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }
    pub fn min_degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).min().unwrap_or(0)
    }
    /// Sorted list of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terms.iter().flat_map(|t| t.0.pairs().map(|p| p.0)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    fn merge(&self, o: &MultiPoly, negate: bool) -> MultiPoly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MultiPoly { terms: out }
    }
    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        self.merge(o, false)
    }
    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        self.merge(o, true)
    }
    pub fn neg(&self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }
    /// Multiplication by a single term keeps the order.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }
    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let prod = c1 * c2;
                match map.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let v = e.get() + &prod;
                        *e.get_mut() = v;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Self::from_map(map)
    }
    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let inv = dc.recip()?;
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c * &inv));
            }
            return Some(MultiPoly { terms });
        }
        let (dm, dc) = &d.terms[0];
        let inv = dc.recip()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let qm = m.div(dm)?;
            let qc = c * &inv;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(MultiPoly { terms: quot })
    }

    /// Monomial dividing every term with maximal exponents.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let mut g = match it.next() {
            Some(t) => t.0.clone(),
            None => return Monomial::one(),
        };
        for t in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(&t.0);
        }
        g
    }

    /// The rational `c` such that `self / c` has coprime integer coefficients and positive leading coefficient.
    pub fn integer_content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(&c.numer());
            l = l.lcm(&c.denom());
        }
        let c = Rational::new(g, l);
        if self.leading_coeff().is_negative() {
            -c
        } else {
            c
        }
    }
    /// Primitive integer representative with positive leading coefficient.
    pub fn normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.integer_content();
        if c.is_one() {
            return self.clone();
        }
        self.scale(&c.recip().unwrap())
    }

    /// Coefficients as a polynomial in `v`, indexed by degree.
    pub fn to_univariate(&self, v: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MultiPoly { terms: ts }
            })
            .collect()
    }
    pub fn from_univariate(coeffs: &[MultiPoly], v: usize) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul_term(&Monomial::var_pow(v, e as u32), &Rational::one()));
            }
        }
        acc
    }

    /// Evaluates at `point[v]` for each variable `v`; missing variables are an error.
    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.pairs() {
                t = &t * &point.get(v)?.pow(e);
            }
            acc = &acc + &t;
        }
        Some(acc)
    }

    /// Substitutes variable `v` by the constant `value`.
    pub fn substitute(&self, v: usize, value: &Rational) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let (e, rest) = m.split_var(v);
            (rest, c * &value.pow(e))
        }))
    }

    /// Exact square root with positive leading coefficient.
    pub fn sqrt_exact(&self) -> Option<MultiPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lm, lc) = &self.terms[0];
        let rm = lm.sqrt()?;
        let rc = lc.sqrt_exact()?;
        let mut root = MultiPoly::term(rm.clone(), rc.clone());
        let two_lead_inv = (&Rational::from_int(2) * &rc).recip()?;
        let mut rem = self.sub(&root.mul(&root));
        while let Some((m, c)) = rem.terms.first() {
            let tm = m.div(&rm)?;
            if tm >= rm {
                return None;
            }
            let tc = c * &two_lead_inv;
            let t = MultiPoly::term(tm, tc);
            // (r + t)^2 - r^2 = 2rt + t^2
            let delta = root.mul(&t).scale(&Rational::from_int(2)).add(&t.mul(&t));
            rem = rem.sub(&delta);
            root = root.add(&t);
        }
        Some(root)
    }

    pub fn format_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let a = c.abs();
            let mono: Vec<String> = m
                .pairs()
                .map(|(v, e)| if e == 1 { names(v) } else { format!("{}^{}", names(v), e) })
                .collect();
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

/// Greatest common divisor, normalized to a primitive integer polynomial with positive
/// leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let gm = ma.gcd(&mb);
    let a1 = strip_monomial(a, &ma);
    let b1 = strip_monomial(b, &mb);
    let core = gcd_no_monomial(&a1, &b1);
    core.mul_term(&gm, &Rational::one()).normalized()
}

fn strip_monomial(p: &MultiPoly, m: &Monomial) -> MultiPoly {
    if m.is_one() {
        return p.clone();
    }
    MultiPoly { terms: p.terms.iter().map(|(n, c)| (n.div(m).unwrap(), c.clone())).collect() }
}

fn gcd_no_monomial(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let an = a.normalized();
    let bn = b.normalized();
    if an == bn {
        return an;
    }
    if an.num_terms() >= bn.num_terms() && an.total_degree() >= bn.total_degree() {
        if an.div_exact(&bn).is_some() {
            return bn;
        }
    } else if bn.div_exact(&an).is_some() {
        return an;
    }
    let va = an.variables();
    let vb = bn.variables();
    let v = *va.iter().chain(vb.iter()).min().unwrap();
    let in_a = va.contains(&v);
    let in_b = vb.contains(&v);
    if !in_a {
        return gcd(&an, &content_in(&bn, v));
    }
    if !in_b {
        return gcd(&content_in(&an, v), &bn);
    }
    let ua = an.to_univariate(v);
    let ub = bn.to_univariate(v);
    let ca = content_of(&ua);
    let cb = content_of(&ub);
    let gc = gcd(&ca, &cb);
    let pa = primitive(&ua, &ca);
    let pb = primitive(&ub, &cb);
    if coprime_by_specialization(&pa, &pb) {
        return gc.normalized();
    }
    let g = prs_gcd(pa, pb, v);
    MultiPoly::from_univariate(&g, v).mul(&gc).normalized()
}

/// True when some integer specialization of the other variables keeps both leading
/// coefficients nonzero and leaves coprime univariate images. The degree of the gcd in the
/// main variable can only drop under such a specialization, so this proves coprimality.
fn coprime_by_specialization(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    let nvars = a.iter().chain(b).flat_map(|c| c.variables()).max().map_or(0, |v| v + 1);
    for attempt in 0..3i64 {
        let point: Vec<Rational> = (0..nvars as i64).map(|i| Rational::from_int(2 + 3 * i + 5 * attempt * (i + 1))).collect();
        let image = |p: &[MultiPoly]| -> Vec<Rational> { p.iter().map(|c| c.evaluate(&point).expect("point covers variables")).collect() };
        let (fa, fb) = (image(a), image(b));
        if fa.last().is_none_or(Rational::is_zero) || fb.last().is_none_or(Rational::is_zero) {
            continue;
        }
        return uni_gcd_degree(fa, fb) == 0;
    }
    false
}

/// Degree of the gcd of two nonzero univariate polynomials over the rationals.
fn uni_gcd_degree(mut f: Vec<Rational>, mut g: Vec<Rational>) -> usize {
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        while g.last().is_some_and(Rational::is_zero) {
            g.pop();
        }
        if g.is_empty() {
            return f.len() - 1;
        }
        if g.len() == 1 {
            return 0;
        }
        let lg = g.last().unwrap().recip().unwrap();
        while f.len() >= g.len() {
            let q = &f[f.len() - 1] * &lg;
            let shift = f.len() - g.len();
            for (i, gc) in g.iter().enumerate() {
                f[i + shift] = &f[i + shift] - &(&q * gc);
            }
            f.pop();
            while f.last().is_some_and(Rational::is_zero) {
                f.pop();
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
}

fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    content_of(&p.to_univariate(v))
}

fn content_of(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    if g.is_zero() {
        MultiPoly::one()
    } else {
        g
    }
}

fn primitive(coeffs: &[MultiPoly], content: &MultiPoly) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = coeffs
        .iter()
        .map(|c| c.div_exact(content).expect("content divides every coefficient"))
        .collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn uni_deg(p: &[MultiPoly]) -> usize {
    p.len() - 1
}

fn uni_trim(mut p: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

/// Pseudo-remainder of `f` by `g`, up to a power of lc(g).
fn pseudo_rem(f: &[MultiPoly], g: &[MultiPoly]) -> Vec<MultiPoly> {
    let dg = uni_deg(g);
    if dg == 0 {
        return vec![MultiPoly::zero()];
    }
    let lg = g.last().unwrap();
    let mut r: Vec<MultiPoly> = uni_trim(f.to_vec());
    while r.len() > dg && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        let shift = dr - dg;
        let mut next: Vec<MultiPoly> = r.iter().map(|c| c.mul(lg)).collect();
        for (i, gc) in g.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&gc.mul(&lr));
        }
        next.pop();
        if next.is_empty() {
            next.push(MultiPoly::zero());
        }
        r = uni_trim(next);
    }
    r
}

fn prs_gcd(a: Vec<MultiPoly>, b: Vec<MultiPoly>, v: usize) -> Vec<MultiPoly> {
    let (mut f, mut g) = if uni_deg(&a) >= uni_deg(&b) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_rem(&f, &g);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        if r.len() == 1 {
            return vec![MultiPoly::one()];
        }
        let c = content_of(&r);
        let mut pr = primitive(&r, &c);
        let n = MultiPoly::from_univariate(&pr, v).integer_content();
        if !n.is_one() {
            let inv = n.recip().unwrap();
            pr = pr.iter().map(|x| x.scale(&inv)).collect();
        }
        f = g;
        g = pr;
    }
    g
}

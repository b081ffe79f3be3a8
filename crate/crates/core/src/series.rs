//! Exact algebra substrate: sparse multivariate polynomials, truncated
//! expansions in descending powers of `x` (expansions at infinity), and
//! truncated power series with compositional inverse.
//!
//! Variables are indexed from 0. Polynomials for unions of `m` rectangles
//! use indices `0..m` for `p_1..p_m` and `m..2m` for `q_1..q_m`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring for polynomials and series.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse when it exists in the ring.
    fn checked_recip(&self) -> Option<Self>;
}

impl Coeff for BigInt {
    fn checked_recip(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Coeff for BigRational {
    fn checked_recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Exponent vector with trailing zeros trimmed, so equal monomials compare
/// equal whatever the number of variables in scope.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of variable slots in use (index of last nonzero exponent + 1).
    pub fn width(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() { (self, other) } else { (other, self) };
        let mut exps = long.0.clone();
        for (e, s) in exps.iter_mut().zip(&short.0) {
            *e += s;
        }
        Monomial(exps)
    }

    fn padded(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultivarPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

pub type IntPoly = MultivarPoly<BigInt>;
pub type RatPoly = MultivarPoly<BigRational>;

impl<C: Coeff> MultivarPoly<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial(Vec::new(), c)
    }

    /// The variable with index `var`.
    pub fn var(var: usize) -> Self {
        let mut exps = vec![0; var + 1];
        exps[var] = 1;
        Self::monomial(exps, C::one())
    }

    pub fn monomial(exps: Vec<u32>, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(exps), c);
        }
        MultivarPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut out = Self::zero();
        for (exps, c) in terms {
            out.add_term(Monomial::new(exps), c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(&Monomial::new(exps.to_vec())).cloned().unwrap_or_else(C::zero)
    }

    /// Highest variable index used, plus one.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        MultivarPoly {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == degree).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_terms(|_, x| x.clone() * c.clone())
    }

    /// Rewrites every coefficient as `f(monomial, coefficient)`, dropping zeros.
    pub fn map_terms(&self, f: impl Fn(&Monomial, &C) -> C) -> Self {
        MultivarPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let v = f(m, c);
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultivarPoly<D> {
        MultivarPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let v = f(c);
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        }
    }

    pub fn coefficient_sum(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Evaluates at `point`; panics if a used variable has no coordinate.
    pub fn eval(&self, point: &[C]) -> C {
        assert!(self.width() <= point.len(), "point has {} coordinates, polynomial uses {}", point.len(), self.width());
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term = term * point[i].clone();
                }
            }
            total = total + term;
        }
        total
    }

    /// Replaces variable `i` by `images[i]`; variables past the end of
    /// `images` are left unchanged.
    pub fn substitute(&self, images: &[MultivarPoly<C>]) -> Self {
        let mut powers: Vec<Vec<MultivarPoly<C>>> = (0..self.width())
            .map(|i| vec![Self::one(), images.get(i).cloned().unwrap_or_else(|| Self::var(i))])
            .collect();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                if e > 0 {
                    term = &term * &powers[i][e];
                }
            }
            out = out + term;
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Terms in canonical order: total degree descending, then exponent
    /// vectors (read in `priority` order of variables) lexicographically
    /// descending.
    pub fn sorted_terms(&self, priority: &[usize]) -> Vec<(&Monomial, &C)> {
        let key = |m: &Monomial| -> Vec<u32> {
            let mut v: Vec<u32> = priority.iter().map(|&i| m.exp(i)).collect();
            v.extend((0..m.width()).filter(|i| !priority.contains(i)).map(|i| m.exp(i)));
            v
        };
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| key(b).cmp(&key(a))));
        terms
    }
}

impl<C: Coeff> Zero for MultivarPoly<C> {
    fn zero() -> Self {
        MultivarPoly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for MultivarPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coeff> Add<&MultivarPoly<C>> for &MultivarPoly<C> {
    type Output = MultivarPoly<C>;

    fn add(self, rhs: &MultivarPoly<C>) -> MultivarPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub<&MultivarPoly<C>> for &MultivarPoly<C> {
    type Output = MultivarPoly<C>;

    fn sub(self, rhs: &MultivarPoly<C>) -> MultivarPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul<&MultivarPoly<C>> for &MultivarPoly<C> {
    type Output = MultivarPoly<C>;

    fn mul(self, rhs: &MultivarPoly<C>) -> MultivarPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return MultivarPoly::zero();
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca.clone() * cb.clone();
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let v = e.get_mut();
                        *v = v.clone() + prod;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        MultivarPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<C: Coeff> Neg for &MultivarPoly<C> {
    type Output = MultivarPoly<C>;

    fn neg(self) -> MultivarPoly<C> {
        self.map_terms(|_, c| -c.clone())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl<C: Coeff> $tr for MultivarPoly<C> {
            type Output = MultivarPoly<C>;

            fn $method(self, rhs: MultivarPoly<C>) -> MultivarPoly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<C: Coeff> Neg for MultivarPoly<C> {
    type Output = MultivarPoly<C>;

    fn neg(self) -> MultivarPoly<C> {
        -&self
    }
}

impl<C: Coeff> Coeff for MultivarPoly<C> {
    fn checked_recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if self.terms.len() == 1 && m.width() == 0 {
            c.checked_recip().map(Self::constant)
        } else {
            None
        }
    }
}

impl<C: Coeff + Signed + fmt::Display> MultivarPoly<C> {
    /// Renders with the given variable names in canonical order, e.g.
    /// `-p^2*q + p*q^2`.
    pub fn render(&self, names: &[String]) -> String {
        let priority: Vec<usize> = (0..names.len()).collect();
        self.render_with(names, &priority, false)
    }

    /// Like [`render`](Self::render) with an explicit variable priority for
    /// the lexicographic tie-break. `compact` drops `*` and spaces
    /// (`a^2b+2apq`), which only reads well for single-letter names.
    pub fn render_with(&self, names: &[String], priority: &[usize], compact: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (mul, plus, minus) = if compact { ("", "+", "-") } else { ("*", " + ", " - ") };
        let mut out = String::new();
        for (idx, (m, c)) in self.sorted_terms(priority).into_iter().enumerate() {
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { minus } else { plus });
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.width() == 0 {
                factors.push(mag.to_string());
            }
            for &i in priority.iter().chain((0..m.width()).filter(|i| !priority.contains(i)).collect::<Vec<_>>().iter()) {
                let e = m.exp(i);
                let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join(mul));
        }
        out
    }
}

impl<C: Coeff + Signed + fmt::Display> fmt::Display for MultivarPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.width()).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&self.render(&names))
    }
}

impl<C: fmt::Debug> fmt::Debug for MultivarPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(m, c)| (m.exps(), c))).finish()
    }
}

/// Variable names `p, q` for one rectangle, `p1..pm, q1..qm` otherwise.
pub fn rectangle_var_names(m: usize) -> Vec<String> {
    if m == 1 {
        return vec!["p".into(), "q".into()];
    }
    (1..=m).map(|i| format!("p{i}")).chain((1..=m).map(|i| format!("q{i}"))).collect()
}

/// One entry of the JSON polynomial schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exp: Vec<u32>,
    pub coef: String,
}

impl<C: Coeff + fmt::Display> MultivarPoly<C> {
    /// Terms in canonical order with exponent vectors padded to `nvars`.
    pub fn to_json_terms(&self, nvars: usize) -> Vec<JsonTerm> {
        let priority: Vec<usize> = (0..nvars).collect();
        self.sorted_terms(&priority)
            .into_iter()
            .map(|(m, c)| JsonTerm { exp: m.padded(nvars.max(m.width())), coef: c.to_string() })
            .collect()
    }
}

/// A polynomial with its variable names, as written by `--json` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDocument {
    pub variables: Vec<String>,
    pub terms: Vec<JsonTerm>,
    pub text: String,
}

impl IntPoly {
    pub fn to_document(&self, names: &[String]) -> PolyDocument {
        PolyDocument {
            variables: names.to_vec(),
            terms: self.to_json_terms(names.len()),
            text: self.render(names),
        }
    }

    /// Rebuilds from the terms; `text` is informational and ignored.
    pub fn from_document(doc: &PolyDocument) -> Result<IntPoly> {
        if let Some(t) = doc.terms.iter().find(|t| t.exp.len() > doc.variables.len()) {
            return Err(Error::Parse(format!("exponent vector {:?} is longer than the variable list", t.exp)));
        }
        Self::from_json_terms(&doc.terms)
    }
}

impl<C: Coeff + FromStr> MultivarPoly<C> {
    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<Self> {
        let mut out = Self::zero();
        for t in terms {
            let c = t.coef.parse::<C>().map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coef)))?;
            out.add_term(Monomial::new(t.exp.clone()), c);
        }
        Ok(out)
    }
}

impl IntPoly {
    /// Parses sums of monomials over single-letter variables, e.g.
    /// `a^2b+2apq-p*q^3`. `vars[i]` names variable `i`.
    pub fn parse(text: &str, vars: &[char]) -> Result<IntPoly> {
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| Error::Parse(format!("{msg} in {text:?}"));
        let mut pos = 0;
        let mut out = IntPoly::zero();
        if s.is_empty() {
            return Err(err("empty polynomial"));
        }
        let number = |pos: &mut usize| -> Option<u64> {
            let start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| s[start..*pos].iter().collect::<String>().parse().unwrap())
        };
        while pos < s.len() {
            let mut sign = BigInt::one();
            if s[pos] == '+' || s[pos] == '-' {
                if s[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(err("expected + or -"));
            }
            let digits = number(&mut pos);
            let mut any = digits.is_some();
            let coef = digits.map(BigInt::from).unwrap_or_else(BigInt::one);
            let mut exps = vec![0u32; vars.len()];
            while pos < s.len() && s[pos] != '+' && s[pos] != '-' {
                if s[pos] == '*' {
                    pos += 1;
                    continue;
                }
                let var = vars.iter().position(|&v| v == s[pos]).ok_or_else(|| err("unknown variable"))?;
                pos += 1;
                let mut e = 1;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    e = number(&mut pos).ok_or_else(|| err("missing exponent"))? as u32;
                }
                exps[var] += e;
                any = true;
            }
            if !any {
                return Err(err("empty term"));
            }
            out.add_term(Monomial::new(exps), sign * coef);
        }
        Ok(out)
    }

    pub fn to_rational(&self) -> RatPoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// Exact division of every coefficient; `None` if some coefficient is
    /// not divisible.
    pub fn exact_div(&self, d: &BigInt) -> Option<IntPoly> {
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            if !(c % d).is_zero() {
                return None;
            }
            out.terms.insert(m.clone(), c / d);
        }
        Some(out)
    }
}

impl RatPoly {
    /// The same polynomial over the integers, if every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.terms.insert(m.clone(), c.to_integer());
        }
        Some(out)
    }
}

/// A truncated expansion `Σ c_i x^i` in descending powers of `x`.
///
/// Coefficients are known from `x^top` down to `x^{top - len + 1}`. An
/// exact series (a Laurent polynomial) has all further coefficients zero;
/// otherwise they are unknown and reading them is an error.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeriesAtInfinity<C> {
    top: i64,
    coeffs: Vec<C>,
    exact: bool,
}

impl<C: Coeff> LaurentSeriesAtInfinity<C> {
    /// An exact polynomial from ascending coefficients `a_0, a_1, ...`.
    pub fn polynomial(ascending: Vec<C>) -> Self {
        let mut coeffs = ascending;
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(C::zero());
        }
        let top = coeffs.len() as i64 - 1;
        coeffs.reverse();
        LaurentSeriesAtInfinity { top, coeffs, exact: true }
    }

    pub fn one() -> Self {
        Self::polynomial(vec![C::one()])
    }

    /// `1/(x - a) = x^{-1} + a x^{-2} + a^2 x^{-3} + ...`, keeping `depth`
    /// terms. Exact when `a` is zero.
    pub fn reciprocal_linear(a: &C, depth: usize) -> Self {
        let depth = depth.max(1);
        if a.is_zero() {
            return LaurentSeriesAtInfinity { top: -1, coeffs: vec![C::one()], exact: true };
        }
        let mut coeffs = Vec::with_capacity(depth);
        let mut power = C::one();
        for _ in 0..depth {
            coeffs.push(power.clone());
            power = power * a.clone();
        }
        LaurentSeriesAtInfinity { top: -1, coeffs, exact: false }
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Lowest exponent whose coefficient is known; `None` when exact.
    pub fn valid_floor(&self) -> Option<i64> {
        (!self.exact).then(|| self.top - self.coeffs.len() as i64 + 1)
    }

    /// `[x^i] f`.
    pub fn coefficient(&self, i: i64) -> Result<C> {
        if i > self.top {
            return Ok(C::zero());
        }
        let idx = (self.top - i) as usize;
        match self.coeffs.get(idx) {
            Some(c) => Ok(c.clone()),
            None if self.exact => Ok(C::zero()),
            None => Err(Error::InsufficientDepth { exponent: i, floor: self.valid_floor().unwrap_or(i) }),
        }
    }

    /// Keeps only the coefficients down to `x^floor`.
    pub fn truncate_to(&self, floor: i64) -> Self {
        let keep = (self.top - floor + 1).max(1) as usize;
        if self.exact && keep >= self.coeffs.len() {
            return self.clone();
        }
        let mut coeffs: Vec<C> = self.coeffs.iter().take(keep).cloned().collect();
        if self.exact {
            coeffs.resize(keep, C::zero());
        }
        LaurentSeriesAtInfinity { top: self.top, coeffs, exact: false }
    }

    pub fn scale(&self, c: &C) -> Self {
        LaurentSeriesAtInfinity {
            top: self.top,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
            exact: self.exact,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let top = self.top.max(other.top);
        let floor = match (self.valid_floor(), other.valid_floor()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let low = floor.unwrap_or_else(|| {
            (self.top - self.coeffs.len() as i64 + 1).min(other.top - other.coeffs.len() as i64 + 1)
        });
        let coeffs = (0..=(top - low))
            .map(|j| {
                let e = top - j;
                self.coefficient(e).expect("within floor") + other.coefficient(e).expect("within floor")
            })
            .collect();
        LaurentSeriesAtInfinity { top, coeffs, exact: floor.is_none() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let top = self.top + other.top;
        let len = match (self.exact, other.exact) {
            (true, true) => self.coeffs.len() + other.coeffs.len() - 1,
            (true, false) => other.coeffs.len(),
            (false, true) => self.coeffs.len(),
            (false, false) => self.coeffs.len().min(other.coeffs.len()),
        };
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentSeriesAtInfinity { top, coeffs, exact: self.exact && other.exact }
    }
}

/// `[x^{-1}]` of `numerator(x) · ∏ 1/(x - root)`, where the numerator is a
/// polynomial given by ascending coefficients.
///
/// Each reciprocal starts with `deg(numerator) + #roots + 2` terms; if that
/// proves too shallow the expansion is redone at doubled depth.
pub fn residue_at_infinity<C: Coeff>(numerator: &[C], roots: &[C]) -> C {
    let degree = numerator.len().saturating_sub(1);
    let mut depth = degree + roots.len() + 2;
    loop {
        let mut acc = LaurentSeriesAtInfinity::polynomial(numerator.to_vec());
        for r in roots {
            acc = acc.mul(&LaurentSeriesAtInfinity::reciprocal_linear(r, depth));
        }
        match acc.coefficient(-1) {
            Ok(c) => return c,
            Err(Error::InsufficientDepth { .. }) => depth *= 2,
            Err(e) => unreachable!("{e}"),
        }
    }
}

/// A truncated power series `a_0 + a_1 x + ... + a_T x^T` (order `T`).
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> PowerSeries<C> {
    /// From `a_0..=a_T`; the vector length fixes the truncation order.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "power series needs at least a constant term");
        PowerSeries { coeffs }
    }

    /// The series `x` truncated at `order`.
    pub fn x(order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        if order >= 1 {
            coeffs[1] = C::one();
        }
        PowerSeries { coeffs }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = c;
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<C> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, C::zero());
        PowerSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        PowerSeries { coeffs: (0..=order).map(|i| self.coeff(i) + other.coeff(i)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        PowerSeries { coeffs: (0..=order).map(|i| self.coeff(i) - other.coeff(i)).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs }
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::constant(C::one(), self.order());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn recip(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .checked_recip()
            .ok_or_else(|| Error::SeriesPrecondition("constant term is not invertible".into()))?;
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let mut s = C::zero();
            for i in 1..=n {
                s = s + self.coeff(i) * out[n - i].clone();
            }
            out.push(-(s * inv0.clone()));
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn div(&self, denom: &Self) -> Result<Self> {
        Ok(self.mul(&denom.recip()?))
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition("inner series must have zero constant term".into()));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner from the top coefficient
        let mut acc = Self::constant(self.coeff(order), order);
        for i in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeff(i);
        }
        Ok(acc)
    }

    /// `g` with `self(g(x)) = x + O(x^{T+1})`, built one coefficient at a
    /// time: with `g` correct through `x^{n-1}`, the residual
    /// `[x^n] self(g)` is cancelled by `g_n = -residual / a_1`.
    pub fn compositional_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition("compositional inverse needs a_0 = 0".into()));
        }
        let order = self.order();
        if order == 0 {
            return Err(Error::SeriesPrecondition("series truncated below x^1".into()));
        }
        let inv1 = self.coeffs[1]
            .checked_recip()
            .ok_or_else(|| Error::SeriesPrecondition("a_1 is not invertible".into()))?;
        let mut g = vec![C::zero(); order + 1];
        g[1] = inv1.clone();
        for n in 2..=order {
            let partial = PowerSeries { coeffs: g[..=n].to_vec() };
            let residual = self.truncate(n).compose(&partial)?.coeff(n);
            g[n] = -(residual * inv1.clone());
        }
        Ok(PowerSeries { coeffs: g })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn ip(s: &str) -> IntPoly {
        IntPoly::parse(s, &['a', 'b', 'c']).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let names: Vec<String> = ["p", "q"].iter().map(|s| s.to_string()).collect();
        let f = IntPoly::parse("-p^2*q + p*q^2", &['p', 'q']).unwrap();
        assert_eq!(f.render(&names), "-p^2*q + p*q^2");
        let g = IntPoly::parse("pq^2-p^2q", &['p', 'q']).unwrap();
        assert_eq!(f, g);
        assert_eq!(IntPoly::parse("3+ab", &['a', 'b']).unwrap().render_with(
            &["a".into(), "b".into()],
            &[0, 1],
            true
        ), "ab+3");
        assert_eq!(IntPoly::zero().render(&names), "0");
        assert!(IntPoly::parse("2x", &['p']).is_err());
        assert!(IntPoly::parse("", &['p']).is_err());
    }

    #[test]
    fn canonical_order_is_graded() {
        let f = ip("a + b^3 + a^2b + ab^2 + 5");
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(f.render(&names), "a^2*b + a*b^2 + b^3 + a + 5");
        let priority_b = f.render_with(&names, &[1, 0], false);
        assert_eq!(priority_b, "b^3 + b^2*a + b*a^2 + a + 5");
    }

    #[test]
    fn json_round_trip() {
        let f = ip("-3a^2c + 7b - 1");
        let terms = f.to_json_terms(3);
        assert_eq!(terms[0], JsonTerm { exp: vec![2, 0, 1], coef: "-3".into() });
        let text = serde_json::to_string(&terms).unwrap();
        let back: Vec<JsonTerm> = serde_json::from_str(&text).unwrap();
        assert_eq!(IntPoly::from_json_terms(&back).unwrap(), f);
        assert!(IntPoly::from_json_terms(&[JsonTerm { exp: vec![1], coef: "x".into() }]).is_err());
    }

    #[test]
    fn substitution_and_degree() {
        let f = ip("a^2 + b");
        let g = f.substitute(&[ip("b + c"), ip("a")]);
        assert_eq!(g, ip("b^2 + 2bc + c^2 + a"));
        assert_eq!(g.total_degree(), Some(2));
        assert_eq!(g.homogeneous_part(1), ip("a"));
        assert_eq!(IntPoly::zero().total_degree(), None);
    }

    #[test]
    fn reciprocal_expansion() {
        let zero = LaurentSeriesAtInfinity::reciprocal_linear(&BigInt::zero(), 3);
        assert!(zero.is_exact());
        assert_eq!(zero.coefficient(-1).unwrap(), int(1));
        assert_eq!(zero.coefficient(-7).unwrap(), int(0));

        let one = LaurentSeriesAtInfinity::reciprocal_linear(&int(1), 3);
        assert_eq!((-3..=-1).map(|i| one.coefficient(i).unwrap()).collect::<Vec<_>>(), vec![int(1); 3]);
        assert!(matches!(one.coefficient(-4), Err(Error::InsufficientDepth { exponent: -4, floor: -3 })));

        let a = int(5);
        let lin = LaurentSeriesAtInfinity::polynomial(vec![-a.clone(), int(1)]);
        let prod = lin.mul(&LaurentSeriesAtInfinity::reciprocal_linear(&a, 6));
        assert_eq!(prod.coefficient(0).unwrap(), int(1));
        for i in -4..0 {
            assert_eq!(prod.coefficient(i).unwrap(), int(0));
        }
    }

    #[test]
    fn laurent_coefficients() {
        // (x)_4 is a polynomial: no x^{-1} term
        let ff = LaurentSeriesAtInfinity::polynomial(vec![int(0), int(-6), int(11), int(-6), int(1)]);
        assert_eq!(ff.coefficient(-1).unwrap(), int(0));
        let a = int(3);
        let r = LaurentSeriesAtInfinity::reciprocal_linear(&a, 4);
        assert_eq!(r.coefficient(-2).unwrap(), a);
        // (x^2 + 1)/(x - 1)
        assert_eq!(residue_at_infinity(&[int(1), int(0), int(1)], &[int(1)]), int(2));
    }

    #[test]
    fn residue_retries_with_deeper_expansion() {
        let num = LaurentSeriesAtInfinity::polynomial(vec![int(1), int(0), int(1)]);
        let shallow = num.mul(&LaurentSeriesAtInfinity::reciprocal_linear(&int(1), 2));
        assert!(shallow.coefficient(-1).is_err());
        assert_eq!(residue_at_infinity(&[int(1), int(0), int(0), int(0), int(1)], &[int(2), int(3)]), {
            // (x^4+1)/((x-2)(x-3)) = x^2 + 5x + 19 + (65x - 113)/((x-2)(x-3)) → residue 65
            int(65)
        });
    }

    /// Clearing denominators: (x-a)(x-b) · [series of P/((x-a)(x-b))] = P.
    #[test]
    fn laurent_matches_rational_function() {
        for (a, b) in [(1, 2), (-3, 4), (0, 5), (2, 2)] {
            let num = LaurentSeriesAtInfinity::polynomial(vec![int(7), int(-2), int(0), int(1)]);
            let ser = num
                .mul(&LaurentSeriesAtInfinity::reciprocal_linear(&int(a), 10))
                .mul(&LaurentSeriesAtInfinity::reciprocal_linear(&int(b), 10));
            let den = LaurentSeriesAtInfinity::polynomial(vec![int(a * b), int(-a - b), int(1)]);
            let back = ser.mul(&den);
            let expect = [int(1), int(0), int(-2), int(7)];
            for (i, e) in (0..=3).rev().zip(expect.iter()) {
                assert_eq!(&back.coefficient(i).unwrap(), e);
            }
            for i in -6..0 {
                assert_eq!(back.coefficient(i).unwrap(), int(0), "({a},{b}) at x^{i}");
            }
        }
    }

    #[test]
    fn inverse_of_identity_and_catalan() {
        let x = PowerSeries::<BigInt>::x(8);
        assert_eq!(x.compositional_inverse().unwrap(), x);
        let f = PowerSeries::new(vec![int(0), int(1), int(-1), int(0), int(0), int(0), int(0), int(0)]);
        let g = f.compositional_inverse().unwrap();
        let expect: Vec<BigInt> = [0, 1, 1, 2, 5, 14, 42, 132].iter().map(|&v| int(v)).collect();
        assert_eq!(g.coeffs(), expect.as_slice());
    }

    #[test]
    fn inverse_preconditions() {
        let f = PowerSeries::new(vec![int(1), int(1), int(0)]);
        assert!(f.compositional_inverse().is_err());
        let f = PowerSeries::new(vec![int(0), int(2), int(0)]);
        assert!(f.compositional_inverse().is_err());
        let f = PowerSeries::new(vec![BigRational::zero(), BigRational::from_integer(int(2)), BigRational::one()]);
        let g = f.compositional_inverse().unwrap();
        assert_eq!(f.compose(&g).unwrap(), PowerSeries::<BigRational>::x(2));
    }

    #[test]
    fn polynomial_coefficient_inverse() {
        // f = x - a x^2 over Z[a]: inverse coefficients are Catalan multiples of powers of a
        let a = ip("a");
        let f = PowerSeries::new(vec![IntPoly::zero(), IntPoly::one(), -&a, IntPoly::zero(), IntPoly::zero()]);
        let g = f.compositional_inverse().unwrap();
        assert_eq!(g.coeff(4), ip("5a^3"));
        assert_eq!(f.compose(&g).unwrap(), PowerSeries::x(4));
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..=5), 0..5)
            .prop_map(|terms| IntPoly::from_terms(terms.into_iter().map(|(e, c)| (e, int(c)))))
    }

    proptest! {
        #[test]
        fn ring_laws(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&(&f - &g) + &g, f.clone());
        }

        #[test]
        fn evaluation_is_homomorphism(f in arb_poly(), g in arb_poly(), pt in prop::collection::vec(-4i64..=4, 3)) {
            let pt: Vec<BigInt> = pt.into_iter().map(int).collect();
            prop_assert_eq!((&f * &g).eval(&pt), f.eval(&pt) * g.eval(&pt));
            prop_assert_eq!((&f + &g).eval(&pt), f.eval(&pt) + g.eval(&pt));
        }

        #[test]
        fn compositional_round_trip(tail in prop::collection::vec(-3i64..=3, 6)) {
            let mut coeffs = vec![int(0), int(1)];
            coeffs.extend(tail.into_iter().map(int));
            let f = PowerSeries::new(coeffs);
            let g = f.compositional_inverse().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), PowerSeries::x(7));
            prop_assert_eq!(g.compose(&f).unwrap(), PowerSeries::x(7));
        }
    }
}

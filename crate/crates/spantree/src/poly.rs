//! Exact multivariate polynomial building blocks: integer linear forms,
//! sparse polynomials with big-integer coefficients, and rational
//! evaluation points. Variables are vertex ids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::graph::VertexId;
use crate::Result;

/// Integer linear form `sum c_v * x_v`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<VertexId, BigInt>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    /// The single variable `x_v`.
    pub fn var(v: VertexId) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(v, BigInt::one());
        LinearForm { coeffs }
    }

    /// `sum_{v in vars} x_v`.
    pub fn sum_of_vars<I: IntoIterator<Item = VertexId>>(vars: I) -> Self {
        let mut f = LinearForm::zero();
        for v in vars {
            f.add_term(v, BigInt::one());
        }
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (VertexId, BigInt)>>(terms: I) -> Self {
        let mut f = LinearForm::zero();
        for (v, c) in terms {
            f.add_term(v, c);
        }
        f
    }

    pub fn add_term(&mut self, v: VertexId, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(v).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, v: VertexId) -> BigInt {
        self.coeffs.get(&v).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (VertexId, &BigInt)> {
        self.coeffs.iter().map(|(&v, c)| (v, c))
    }

    pub fn vars(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        for (v, c) in other.terms() {
            out.add_term(v, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> LinearForm {
        if k.is_zero() {
            return LinearForm::zero();
        }
        LinearForm {
            coeffs: self.coeffs.iter().map(|(&v, c)| (v, c * k)).collect(),
        }
    }

    /// Replace `x_v` by the form `f`, staying linear.
    pub fn substitute(&self, v: VertexId, f: &LinearForm) -> LinearForm {
        match self.coeffs.get(&v) {
            None => self.clone(),
            Some(c) => {
                let mut out = self.clone();
                let c = c.clone();
                out.coeffs.remove(&v);
                for (u, fc) in f.terms() {
                    out.add_term(u, fc * &c);
                }
                out
            }
        }
    }

    /// Split into `(content, primitive)`: `self = content * primitive` with
    /// the primitive part having coprime coefficients and a positive leading
    /// (lowest-id) coefficient. The zero form has content 0.
    pub fn normalized(&self) -> (BigInt, LinearForm) {
        if self.is_zero() {
            return (BigInt::zero(), LinearForm::zero());
        }
        let mut content = BigInt::zero();
        for c in self.coeffs.values() {
            content = content.gcd(c);
        }
        if self.coeffs.values().next().unwrap().is_negative() {
            content = -content;
        }
        let primitive = LinearForm {
            coeffs: self.coeffs.iter().map(|(&v, c)| (v, c / &content)).collect(),
        };
        (content, primitive)
    }

    pub fn evaluate(&self, p: &Point) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (v, c) in self.terms() {
            acc += p.get(v)? * BigRational::from(c.clone());
        }
        Ok(acc)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (v, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*x{v}")?;
        }
        Ok(())
    }
}

/// Exponent vector; zero exponents are omitted. The empty monomial is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<VertexId, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VertexId) -> Self {
        Monomial { exps: BTreeMap::from([(v, 1)]) }
    }

    pub fn from_exponents<I: IntoIterator<Item = (VertexId, u32)>>(it: I) -> Self {
        Monomial {
            exps: it.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn exponent(&self, v: VertexId) -> u32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.exps.iter().map(|(&v, &e)| (v, e))
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            *exps.entry(v).or_insert(0) += e;
        }
        Monomial { exps }
    }

    pub fn mul_var(&self, v: VertexId) -> Monomial {
        let mut exps = self.exps.clone();
        *exps.entry(v).or_insert(0) += 1;
        Monomial { exps }
    }

    /// Monomial with `v` removed, together with its former exponent.
    fn without(&self, v: VertexId) -> (Monomial, u32) {
        let mut exps = self.exps.clone();
        let e = exps.remove(&v).unwrap_or(0);
        (Monomial { exps }, e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return Ok(());
        }
        let mut first = true;
        for (v, e) in self.exponents() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "x{v}^{e}")?;
        }
        Ok(())
    }
}

/// Sparse polynomial: monomial -> nonzero big-integer coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn one() -> Self {
        SparsePoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_linear(f: &LinearForm) -> Self {
        let mut p = SparsePoly::zero();
        for (v, c) in f.terms() {
            p.add_term(Monomial::var(v), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn vars(&self) -> BTreeSet<VertexId> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().map(|(v, _)| v))
            .collect()
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> SparsePoly {
        if k.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Product, erroring if the intermediate term count exceeds `cap`.
    pub fn mul_capped(&self, other: &SparsePoly, cap: usize) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
                if out.term_count() > cap {
                    return Err(Error::envelope(format!(
                        "expansion exceeds {cap} terms"
                    )));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_linear_capped(&self, f: &LinearForm, cap: usize) -> Result<SparsePoly> {
        self.mul_capped(&SparsePoly::from_linear(f), cap)
    }

    /// Replace `x_v` by the linear form `f`, expanding powers exactly.
    pub fn substitute(&self, v: VertexId, f: &LinearForm, cap: usize) -> Result<SparsePoly> {
        let fp = SparsePoly::from_linear(f);
        // cache powers of f, reused across terms
        let mut powers: Vec<SparsePoly> = vec![SparsePoly::one()];
        let mut out = SparsePoly::zero();
        for (m, c) in self.terms() {
            let (rest, e) = m.without(v);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul_capped(&fp, cap)?;
                powers.push(next);
            }
            for (fm, fc) in powers[e as usize].terms() {
                out.add_term(rest.mul(fm), fc * c);
                if out.term_count() > cap {
                    return Err(Error::envelope(format!(
                        "substitution exceeds {cap} terms"
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Set `x_v = 0`: keep only terms where `v` does not appear.
    pub fn at_zero(&self, v: VertexId) -> SparsePoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, p: &Point) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in self.terms() {
            let mut term = BigRational::from(c.clone());
            for (v, e) in m.exponents() {
                let x = p.get(v)?;
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Total degree of the highest term, or None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.exponents().next().is_none() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} {m}")?;
            }
        }
        Ok(())
    }
}

/// Exact rational evaluation point: vertex id -> value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Point {
    values: BTreeMap<VertexId, BigRational>,
}

impl Point {
    pub fn new() -> Self {
        Point::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (VertexId, BigRational)>>(it: I) -> Self {
        Point { values: it.into_iter().collect() }
    }

    /// All-ones point on the given variables.
    pub fn all_ones<I: IntoIterator<Item = VertexId>>(vars: I) -> Self {
        Point {
            values: vars.into_iter().map(|v| (v, BigRational::one())).collect(),
        }
    }

    pub fn set(&mut self, v: VertexId, value: BigRational) {
        self.values.insert(v, value);
    }

    pub fn get(&self, v: VertexId) -> Result<&BigRational> {
        self.values.get(&v).ok_or(Error::MissingCoordinate(v))
    }

    pub fn values(&self) -> impl Iterator<Item = (VertexId, &BigRational)> {
        self.values.iter().map(|(&v, r)| (v, r))
    }

    pub fn covers<I: IntoIterator<Item = VertexId>>(&self, vars: I) -> bool {
        vars.into_iter().all(|v| self.values.contains_key(&v))
    }

    pub fn has_zero(&self) -> bool {
        self.values.values().any(|r| r.is_zero())
    }

    pub fn product(&self) -> BigRational {
        self.values
            .values()
            .fold(BigRational::one(), |acc, r| acc * r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId::new(i)
    }

    #[test]
    fn linear_form_basics() {
        let f = LinearForm::sum_of_vars([v(1), v(2)]);
        let g = f.substitute(v(1), &LinearForm::sum_of_vars([v(2), v(3)]));
        assert_eq!(g.coefficient(v(2)), BigInt::from(2));
        assert_eq!(g.coefficient(v(3)), BigInt::from(1));
        assert_eq!(g.coefficient(v(1)), BigInt::zero());

        // substitution by the identity form changes nothing
        assert_eq!(f.substitute(v(1), &LinearForm::var(v(1))), f);

        // cancellation collapses to zero
        let mut h = LinearForm::var(v(5));
        h.add_term(v(5), BigInt::from(-1));
        assert!(h.is_zero());
    }

    #[test]
    fn normalization() {
        let f = LinearForm::from_terms([
            (v(1), BigInt::from(-4)),
            (v(2), BigInt::from(-6)),
        ]);
        let (content, prim) = f.normalized();
        assert_eq!(content, BigInt::from(-2));
        assert_eq!(prim.coefficient(v(1)), BigInt::from(2));
        assert_eq!(prim.coefficient(v(2)), BigInt::from(3));
        assert_eq!(prim.scale(&content), f);
    }

    #[test]
    fn sparse_poly_arith() {
        let f = LinearForm::sum_of_vars([v(1), v(2)]);
        let p = SparsePoly::from_linear(&f);
        let sq = p.mul_capped(&p, 100).unwrap();
        assert_eq!(sq.term_count(), 3);
        assert_eq!(sq.coefficient(&Monomial::from_exponents([(v(1), 1), (v(2), 1)])), BigInt::from(2));
        assert!(sq.is_homogeneous_of_degree(2));

        let subst = sq
            .substitute(v(1), &LinearForm::var(v(2)), 100)
            .unwrap();
        assert_eq!(subst.coefficient(&Monomial::from_exponents([(v(2), 2)])), BigInt::from(4));
    }

    #[test]
    fn substitution_cap() {
        let f = LinearForm::sum_of_vars((0..20).map(v));
        let p = SparsePoly::from_linear(&f);
        assert!(p.mul_capped(&p, 10).is_err());
    }

    #[test]
    fn at_zero_filters() {
        let mut p = SparsePoly::zero();
        p.add_term(Monomial::from_exponents([(v(0), 1), (v(1), 1)]), BigInt::one());
        p.add_term(Monomial::var(v(1)), BigInt::from(3));
        let q = p.at_zero(v(0));
        assert_eq!(q.term_count(), 1);
        assert_eq!(q.coefficient(&Monomial::var(v(1))), BigInt::from(3));
    }

    #[test]
    fn evaluation() {
        let p = SparsePoly::from_linear(&LinearForm::sum_of_vars([v(0), v(1)]));
        let pt = Point::from_pairs([
            (v(0), BigRational::new(BigInt::from(1), BigInt::from(2))),
            (v(1), BigRational::from(BigInt::from(3))),
        ]);
        assert_eq!(
            p.evaluate(&pt).unwrap(),
            BigRational::new(BigInt::from(7), BigInt::from(2))
        );
        assert!(p.evaluate(&Point::new()).is_err());
    }
}

//! The vertex-degree spanning enumerator in factored form, and the
//! operations the factorization theory provides: substitution, two-graph
//! composition, the pendant/twin replay that factors the enumerator of a
//! distance-hereditary graph into linear forms, extension (rooted-forest)
//! enumerators, and the closed forms for cycles, superprisms, and
//! separable-permutation graphs.
//!
//! An [`Enumerator`] is `constant * prod(factor^multiplicity) * remainder`:
//! linear factors are kept symbolic, anything else lives in the sparse
//! remainder (which defaults to 1). For a distance-hereditary graph the
//! remainder stays 1 throughout. Division never appears: closed forms
//! written with reciprocals on paper are multiplied through before storage.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::Error;
use crate::families::{self, Permutation};
use crate::graph::{Graph, VertexId};
use crate::linalg;
use crate::poly::{LinearForm, Monomial, Point, SparsePoly};
use crate::recognition::{self, ConstructionSequence, DhOutcome, StepKind};
use crate::Result;

/// Default ceiling on expanded term counts.
pub const DEFAULT_TERM_LIMIT: usize = 1_000_000;

/// Factored enumerator: `constant * prod(factor^mult) * remainder`.
///
/// Factors are canonical linear forms (coprime coefficients, positive
/// leading coefficient) in first-appearance order with merged
/// multiplicities; pulled-out integer content accumulates in `constant`.
/// The zero enumerator is `constant == 0` with no factors and remainder 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumerator {
    constant: BigInt,
    factors: Vec<(LinearForm, u32)>,
    remainder: SparsePoly,
}

impl Enumerator {
    pub fn one() -> Self {
        Enumerator {
            constant: BigInt::one(),
            factors: Vec::new(),
            remainder: SparsePoly::one(),
        }
    }

    pub fn zero() -> Self {
        Enumerator {
            constant: BigInt::zero(),
            factors: Vec::new(),
            remainder: SparsePoly::one(),
        }
    }

    /// Wrap an expanded polynomial (no symbolic factors).
    pub fn from_poly(p: SparsePoly) -> Self {
        if p.is_zero() {
            return Enumerator::zero();
        }
        Enumerator { constant: BigInt::one(), factors: Vec::new(), remainder: p }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn factors(&self) -> &[(LinearForm, u32)] {
        &self.factors
    }

    pub fn remainder(&self) -> &SparsePoly {
        &self.remainder
    }

    /// True when the enumerator is a pure product of linear forms.
    pub fn is_linear_product(&self) -> bool {
        self.remainder.is_one()
    }

    /// Factors as a canonical multiset for comparison.
    pub fn factor_multiset(&self) -> BTreeMap<LinearForm, u32> {
        let mut out = BTreeMap::new();
        for (f, m) in &self.factors {
            *out.entry(f.clone()).or_insert(0) += m;
        }
        out
    }

    pub fn vars(&self) -> BTreeSet<VertexId> {
        let mut out = self.remainder.vars();
        for (f, _) in &self.factors {
            out.extend(f.vars());
        }
        out
    }

    /// Multiply by a linear form; content is pulled into the constant.
    pub fn mul_form(mut self, f: &LinearForm) -> Self {
        if self.is_zero() {
            return self;
        }
        let (content, prim) = f.normalized();
        if content.is_zero() {
            return Enumerator::zero();
        }
        self.constant *= content;
        self.push_factor(prim, 1);
        self
    }

    fn push_factor(&mut self, form: LinearForm, mult: u32) {
        for (f, m) in &mut self.factors {
            if *f == form {
                *m += mult;
                return;
            }
        }
        self.factors.push((form, mult));
    }

    /// Product of two enumerators.
    pub fn mul(&self, other: &Enumerator) -> Result<Enumerator> {
        if self.is_zero() || other.is_zero() {
            return Ok(Enumerator::zero());
        }
        let mut out = self.clone();
        out.constant *= &other.constant;
        for (f, m) in &other.factors {
            out.push_factor(f.clone(), *m);
        }
        out.remainder = out
            .remainder
            .mul_capped(&other.remainder, DEFAULT_TERM_LIMIT)?;
        Ok(out)
    }

    /// Replace the variable `v` by a nonzero linear form everywhere.
    /// Linear factors stay linear; the remainder is expanded exactly.
    pub fn substitute(&self, v: VertexId, f: &LinearForm) -> Result<Enumerator> {
        if f.is_zero() {
            return Err(Error::invalid("cannot substitute the zero form"));
        }
        if self.is_zero() {
            return Ok(Enumerator::zero());
        }
        let mut out = Enumerator {
            constant: self.constant.clone(),
            factors: Vec::new(),
            remainder: self.remainder.substitute(v, f, DEFAULT_TERM_LIMIT)?,
        };
        for (form, mult) in &self.factors {
            let subst = form.substitute(v, f);
            let (content, prim) = subst.normalized();
            if content.is_zero() {
                return Ok(Enumerator::zero());
            }
            out.constant *= content.pow(*mult);
            out.push_factor(prim, *mult);
        }
        Ok(out)
    }

    /// Rename variables through an injective map (absent ids are kept).
    pub fn rename(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Enumerator> {
        let targets: BTreeSet<VertexId> = map.values().copied().collect();
        if targets.len() != map.len() {
            return Err(Error::invalid("variable renaming must be injective"));
        }
        let rename_var = |v: VertexId| map.get(&v).copied().unwrap_or(v);
        let mut remainder = SparsePoly::zero();
        for (m, c) in self.remainder.terms() {
            let mono =
                Monomial::from_exponents(m.exponents().map(|(v, e)| (rename_var(v), e)));
            remainder.add_term(mono, c.clone());
        }
        let factors = self
            .factors
            .iter()
            .map(|(f, m)| {
                let form =
                    LinearForm::from_terms(f.terms().map(|(v, c)| (rename_var(v), c.clone())));
                (form, *m)
            })
            .collect();
        Ok(Enumerator { constant: self.constant.clone(), factors, remainder })
    }

    /// Expand to a plain sparse polynomial (default term limit).
    pub fn expand(&self) -> Result<SparsePoly> {
        self.expand_with_limit(DEFAULT_TERM_LIMIT)
    }

    pub fn expand_with_limit(&self, cap: usize) -> Result<SparsePoly> {
        if self.is_zero() {
            return Ok(SparsePoly::zero());
        }
        let mut p = self.remainder.scale(&self.constant);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                p = p.mul_linear_capped(f, cap)?;
            }
        }
        Ok(p)
    }

    /// Exact evaluation; the point must cover every variable.
    pub fn evaluate(&self, p: &Point) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let mut acc = BigRational::from(self.constant.clone());
        for (f, m) in &self.factors {
            let val = f.evaluate(p)?;
            for _ in 0..*m {
                acc *= &val;
            }
        }
        Ok(acc * self.remainder.evaluate(p)?)
    }

    /// Structured text form: a `constant` line, one `factor` line per
    /// factor in stored order, and one `term` line per remainder monomial
    /// when the remainder is not 1. Round-trips byte for byte.
    pub fn to_text(&self) -> String {
        let mut s = format!("constant {}\n", self.constant);
        for (f, m) in &self.factors {
            s.push_str(&format!("factor {m} : {f}\n"));
        }
        if !self.remainder.is_one() {
            for (mono, c) in self.remainder.terms() {
                let stars = mono
                    .exponents()
                    .map(|(v, e)| format!("x{v}^{e}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                s.push_str(&format!("term {c} : {stars}\n"));
            }
        }
        s
    }

    pub fn parse_text(input: &str) -> Result<Enumerator> {
        let mut constant: Option<BigInt> = None;
        let mut factors: Vec<(LinearForm, u32)> = Vec::new();
        let mut remainder = SparsePoly::zero();
        let mut saw_term = false;
        for line in input.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
            match head {
                "constant" => {
                    let c = rest
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::invalid(format!("bad constant `{rest}`")))?;
                    if constant.replace(c).is_some() {
                        return Err(Error::invalid("duplicate constant line"));
                    }
                }
                "factor" => {
                    let (mult, form) = rest
                        .split_once(':')
                        .ok_or_else(|| Error::invalid(format!("bad factor line `{line}`")))?;
                    let mult: u32 = mult.trim().parse().map_err(|_| {
                        Error::invalid(format!("bad multiplicity in `{line}`"))
                    })?;
                    if mult == 0 {
                        return Err(Error::invalid("factor multiplicity must be positive"));
                    }
                    factors.push((parse_linear_form(form.trim())?, mult));
                }
                "term" => {
                    let (coef, mono) = rest
                        .split_once(':')
                        .ok_or_else(|| Error::invalid(format!("bad term line `{line}`")))?;
                    let coef: BigInt = coef.trim().parse().map_err(|_| {
                        Error::invalid(format!("bad coefficient in `{line}`"))
                    })?;
                    remainder.add_term(parse_monomial(mono.trim())?, coef);
                    saw_term = true;
                }
                _ => return Err(Error::invalid(format!("unrecognized line `{line}`"))),
            }
        }
        let constant = constant.ok_or_else(|| Error::invalid("missing constant line"))?;
        let remainder = if saw_term { remainder } else { SparsePoly::one() };
        if constant.is_zero() {
            return Ok(Enumerator::zero());
        }
        Ok(Enumerator { constant, factors, remainder })
    }
}

fn parse_variable(tok: &str) -> Result<VertexId> {
    tok.strip_prefix('x')
        .and_then(|t| t.parse::<u32>().ok())
        .map(VertexId::new)
        .ok_or_else(|| Error::invalid(format!("bad variable `{tok}`")))
}

fn parse_linear_form(s: &str) -> Result<LinearForm> {
    let mut form = LinearForm::zero();
    for part in s.split('+') {
        let part = part.trim();
        let (coef, var) = part
            .split_once('*')
            .ok_or_else(|| Error::invalid(format!("bad linear term `{part}`")))?;
        let c: BigInt = coef
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad coefficient `{coef}`")))?;
        form.add_term(parse_variable(var.trim())?, c);
    }
    if form.is_zero() {
        return Err(Error::invalid("zero linear factor"));
    }
    Ok(form)
}

fn parse_monomial(s: &str) -> Result<Monomial> {
    let mut exps = Vec::new();
    for tok in s.split_whitespace() {
        let (var, exp) = tok
            .split_once('^')
            .ok_or_else(|| Error::invalid(format!("bad monomial factor `{tok}`")))?;
        let e: u32 = exp
            .parse()
            .map_err(|_| Error::invalid(format!("bad exponent `{exp}`")))?;
        exps.push((parse_variable(var)?, e));
    }
    Ok(Monomial::from_exponents(exps))
}

/// Enumerator of the composition: substitute the neighborhood sum of each
/// marked vertex into the other enumerator and multiply.
///
/// `n1`/`n2` are the neighborhoods of the marked vertices, in the variable
/// space the enumerators use (relabel first when composing graphs whose id
/// ranges overlap; see [`compose_graph_enumerators`]).
pub fn compose_enumerators(
    e1: &Enumerator,
    v1: VertexId,
    n2: &BTreeSet<VertexId>,
    e2: &Enumerator,
    v2: VertexId,
    n1: &BTreeSet<VertexId>,
) -> Result<Enumerator> {
    if n1.is_empty() || n2.is_empty() {
        return Err(Error::invalid("marked vertex has an empty neighborhood"));
    }
    if n1.contains(&v1) || n2.contains(&v2) {
        return Err(Error::invalid("marked vertex inside its own neighborhood"));
    }
    let sum2 = LinearForm::sum_of_vars(n2.iter().copied());
    let sum1 = LinearForm::sum_of_vars(n1.iter().copied());
    let a = e1.substitute(v1, &sum2)?;
    let b = e2.substitute(v2, &sum1)?;
    a.mul(&b)
}

/// Graph-level composition carrying enumerators along: composes the graphs,
/// relabels `e2` by the same id shift, and returns the composed graph, the
/// relabel map, and the composed enumerator.
pub fn compose_graph_enumerators(
    g1: &Graph,
    v1: VertexId,
    e1: &Enumerator,
    g2: &Graph,
    v2: VertexId,
    e2: &Enumerator,
) -> Result<(Graph, BTreeMap<VertexId, VertexId>, Enumerator)> {
    let (h, relabel) = g1.compose(v1, g2, v2)?;
    let e2r = e2.rename(&relabel)?;
    let n1 = g1.neighborhood(v1)?.clone();
    let n2r: BTreeSet<VertexId> = g2
        .neighborhood(v2)?
        .iter()
        .map(|u| relabel[u])
        .collect();
    let e = compose_enumerators(e1, v1, &n2r, &e2r, relabel[&v2], &n1)?;
    Ok((h, relabel, e))
}

/// Factor the enumerator of a distance-hereditary graph into linear forms
/// by replaying its construction certificate.
pub fn factor_enumerator(g: &Graph) -> Result<Enumerator> {
    match recognition::recognize_dh(g)? {
        DhOutcome::DistanceHereditary(cert) => enumerator_from_construction(&cert),
        DhOutcome::NotDistanceHereditary { .. } => Err(Error::NotDistanceHereditary),
    }
}

/// Replay a pendant/twin construction into a factored enumerator.
///
/// Replay rules, with the enumerator of a single vertex and of a single
/// edge both taken to be 1:
/// - pendant on `a`: multiply by `x_a`;
/// - false twin of `a` (copy `b`): substitute `x_a -> x_a + x_b`, then
///   multiply by the sum of `x_u` over the neighborhood of `a` in the graph
///   before the duplication;
/// - true twin: same substitution, factor `x_a + x_b + sum over N(a)`.
pub fn enumerator_from_construction(cert: &ConstructionSequence) -> Result<Enumerator> {
    let mut steps = cert.steps.iter();
    let seed = match steps.next() {
        Some(s) if matches!(s.kind, StepKind::Seed) => s.new_vertex,
        _ => return Err(Error::invalid("construction must start with a seed step")),
    };
    let mut g = Graph::single_with_id(seed);
    let mut e = Enumerator::one();
    for step in steps {
        let fresh = step.new_vertex;
        let seed_stage = g.vertex_count() == 1;
        match step.kind {
            StepKind::Seed => return Err(Error::invalid("seed step after the first")),
            StepKind::Pendant { attach } => {
                if !seed_stage {
                    e = e.mul_form(&LinearForm::var(attach));
                }
                g = g.add_pendant_as(attach, fresh)?;
            }
            StepKind::FalseTwin { of } => {
                if seed_stage {
                    return Err(Error::invalid(
                        "false-twin step on a single vertex disconnects the graph",
                    ));
                }
                let pair = LinearForm::sum_of_vars([of, fresh]);
                let factor = LinearForm::sum_of_vars(g.neighborhood(of)?.iter().copied());
                e = e.substitute(of, &pair)?.mul_form(&factor);
                g = g.duplicate_as(of, false, fresh)?;
            }
            StepKind::TrueTwin { of } => {
                if !seed_stage {
                    let pair = LinearForm::sum_of_vars([of, fresh]);
                    let mut factor =
                        LinearForm::sum_of_vars(g.neighborhood(of)?.iter().copied());
                    factor.add_term(of, BigInt::one());
                    factor.add_term(fresh, BigInt::one());
                    e = e.substitute(of, &pair)?.mul_form(&factor);
                }
                g = g.duplicate_as(of, true, fresh)?;
            }
        }
    }
    Ok(e)
}

/// Enumerator of a graph: factored when distance-hereditary, expanded
/// brute-force remainder otherwise (within the brute-force envelope).
/// The boolean reports which path was taken.
pub fn graph_enumerator(g: &Graph) -> Result<(Enumerator, bool)> {
    if g.vertex_count() == 0 || !g.is_connected() {
        return Ok((Enumerator::zero(), false));
    }
    match recognition::recognize_dh(g)? {
        DhOutcome::DistanceHereditary(cert) => {
            Ok((enumerator_from_construction(&cert)?, true))
        }
        DhOutcome::NotDistanceHereditary { .. } => {
            let p = linalg::brute_force_enumerator(g)?;
            Ok((Enumerator::from_poly(p), false))
        }
    }
}

/// Cycle enumerator: the sum over the cycle's edges of the product of all
/// other variables (the reciprocal closed form multiplied through).
/// Variables are the cycle ids `0..n-1` in ring order.
pub fn cycle_enumerator(n: u32) -> Result<Enumerator> {
    if n < 3 {
        return Err(Error::invalid("cycle needs at least 3 vertices"));
    }
    let mut remainder = SparsePoly::zero();
    for i in 0..n {
        let skip = [i, (i + 1) % n];
        let mono = Monomial::from_exponents(
            (0..n).filter(|j| !skip.contains(j)).map(|j| (VertexId::new(j), 1)),
        );
        remainder.add_term(mono, BigInt::one());
    }
    Ok(Enumerator::from_poly(remainder))
}

/// Superprism enumerator over the ids assigned by
/// [`families::superprism`] (`u_i -> 2i`, `v_i -> 2i+1`): one linear factor
/// `x_{u_i} + x_{v_i} + x_{u_{i+2}} + x_{v_{i+2}}` per pair, times the cycle
/// kernel in the pair sums as an expanded remainder.
pub fn superprism_enumerator(n: u32) -> Result<Enumerator> {
    if n < 4 {
        return Err(Error::invalid("superprism needs at least 4 pairs"));
    }
    let pair_sum =
        |i: u32| LinearForm::sum_of_vars([VertexId::new(2 * i), VertexId::new(2 * i + 1)]);
    let mut e = Enumerator::one();
    for i in 0..n {
        let k = (i + 2) % n;
        e = e.mul_form(&pair_sum(i).add(&pair_sum(k)));
    }
    let mut kernel = SparsePoly::zero();
    for i in 0..n {
        let skip = [i, (i + 1) % n];
        let mut prod = SparsePoly::one();
        for j in (0..n).filter(|j| !skip.contains(j)) {
            prod = prod.mul_linear_capped(&pair_sum(j), DEFAULT_TERM_LIMIT)?;
        }
        kernel = kernel.add(&prod);
    }
    e.mul(&Enumerator::from_poly(kernel))
}

/// Rooted-forest (extension) enumerator of a graph: the enumerator of its
/// cone. Factored into linear forms when the base graph is a cograph;
/// otherwise the expanded brute-force form is returned and flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionEnumerator {
    pub apex: VertexId,
    pub enumerator: Enumerator,
    /// True when the linear-factorization path applied (base is a cograph).
    pub factored: bool,
}

pub fn extension_enumerator(g: &Graph) -> Result<ExtensionEnumerator> {
    let (coned, apex) = g.cone();
    if recognition::is_cograph(g).is_cograph() {
        let enumerator = factor_enumerator(&coned)?;
        Ok(ExtensionEnumerator { apex, enumerator, factored: true })
    } else {
        let p = linalg::brute_force_enumerator(&coned)?;
        Ok(ExtensionEnumerator { apex, enumerator: Enumerator::from_poly(p), factored: false })
    }
}

/// Verify `P_G(x) * sum_v x_v = P_cone(G)(0, x)` by exact expansion: the
/// cone's enumerator with the apex variable set to zero recovers the base
/// enumerator times the variable sum. Needs at least two vertices (the
/// single-vertex case would require a negative apex exponent).
pub fn extension_identity_check(g: &Graph) -> Result<bool> {
    if g.vertex_count() < 2 {
        return Err(Error::invalid("identity needs at least two vertices"));
    }
    let base = linalg::brute_force_enumerator(g)?;
    let lhs = base.mul_linear_capped(
        &LinearForm::sum_of_vars(g.vertices()),
        DEFAULT_TERM_LIMIT,
    )?;
    let (coned, apex) = g.cone();
    let rhs = linalg::brute_force_enumerator(&coned)?.at_zero(apex);
    Ok(lhs == rhs)
}

/// Closed-form rooted-forest enumerator of a separable permutation's
/// inversion graph: the product over i = 1..n-1 of
/// `x_0 + sum_{j <= i, w(j) > w(i+1)} x_j + sum_{j > i, w(j) < w(i)} x_j`.
///
/// Variables follow [`families::inversion_graph`] ids (position `j` is id
/// `j-1`) with the apex at id `n`, matching `inversion_graph(w).cone()`.
pub fn gao_liu_enumerator(w: &Permutation) -> Result<Enumerator> {
    if !families::is_separable(w) {
        return Err(Error::invalid("permutation is not separable"));
    }
    let n = w.len();
    let apex = VertexId::new(n as u32);
    let mut e = Enumerator::one();
    for i in 1..n {
        let mut f = LinearForm::var(apex);
        for j in 1..=i {
            if w.at(j) > w.at(i + 1) {
                f.add_term(VertexId::new(j as u32 - 1), BigInt::one());
            }
        }
        for j in i + 1..=n {
            if w.at(j) < w.at(i) {
                f.add_term(VertexId::new(j as u32 - 1), BigInt::one());
            }
        }
        e = e.mul_form(&f);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use rand::{Rng, SeedableRng};

    fn v(i: u32) -> VertexId {
        VertexId::new(i)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn substitute_examples() {
        // single factor x1, substitute x1 -> x2 + x3
        let e = Enumerator::one().mul_form(&LinearForm::var(v(1)));
        let s = e
            .substitute(v(1), &LinearForm::sum_of_vars([v(2), v(3)]))
            .unwrap();
        assert_eq!(s.factors().len(), 1);
        assert_eq!(s.factors()[0].0, LinearForm::sum_of_vars([v(2), v(3)]));

        // identity substitution is a no-op
        let same = e.substitute(v(1), &LinearForm::var(v(1))).unwrap();
        assert_eq!(same, e);

        // zero form is rejected
        assert!(e.substitute(v(1), &LinearForm::zero()).is_err());
    }

    #[test]
    fn substitute_in_cycle_remainder() {
        // replacing one cycle variable by a two-variable sum expands the two
        // terms containing it: 4 terms become 6
        let e = cycle_enumerator(4).unwrap();
        let s = e
            .substitute(v(0), &LinearForm::sum_of_vars([v(10), v(11)]))
            .unwrap();
        let expanded = s.expand().unwrap();
        assert_eq!(expanded.term_count(), 6);
        let brute = linalg::brute_force_enumerator(&families::cycle(4).unwrap()).unwrap();
        let direct = brute
            .substitute(v(0), &LinearForm::sum_of_vars([v(10), v(11)]), 1000)
            .unwrap();
        assert_eq!(expanded, direct);
    }

    #[test]
    fn factor_path3() {
        let e = factor_enumerator(&families::path(3).unwrap()).unwrap();
        assert!(e.is_linear_product());
        assert_eq!(e.constant(), &BigInt::one());
        assert_eq!(e.factors(), &[(LinearForm::var(v(1)), 1)]);
    }

    #[test]
    fn factor_k4() {
        let e = factor_enumerator(&families::complete(4).unwrap()).unwrap();
        let sum = LinearForm::sum_of_vars((0..4).map(v));
        assert_eq!(e.factor_multiset(), BTreeMap::from([(sum, 2)]));
        assert_eq!(
            e.expand().unwrap(),
            linalg::brute_force_enumerator(&families::complete(4).unwrap()).unwrap()
        );
    }

    #[test]
    fn factor_k23() {
        // parts {0,1} and {2,3,4}
        let g = families::complete_bipartite(2, 3).unwrap();
        let e = factor_enumerator(&g).unwrap();
        let expect = BTreeMap::from([
            (LinearForm::sum_of_vars([v(0), v(1)]), 2),
            (LinearForm::sum_of_vars([v(2), v(3), v(4)]), 1),
        ]);
        assert_eq!(e.factor_multiset(), expect);
        assert_eq!(e.expand().unwrap(), linalg::brute_force_enumerator(&g).unwrap());
    }

    #[test]
    fn factor_rejects_non_dh() {
        assert_eq!(
            factor_enumerator(&families::cycle(5).unwrap()),
            Err(Error::NotDistanceHereditary)
        );
    }

    #[test]
    fn expand_examples() {
        let e = Enumerator::one().mul_form(&LinearForm::sum_of_vars([v(0), v(1)]));
        assert_eq!(e.expand().unwrap().term_count(), 2);
        assert_eq!(Enumerator::one().expand().unwrap(), SparsePoly::one());

        // blow-up of K2 by (2,2) is a four-cycle; its factored enumerator
        // expands to the brute-force polynomial
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let z = BTreeMap::from([(v(0), 2u32), (v(1), 2u32)]);
        let (c4, _) = k2.blow_up(&z).unwrap();
        let e = factor_enumerator(&c4).unwrap();
        let expect = BTreeMap::from([
            (LinearForm::sum_of_vars([v(0), v(2)]), 1),
            (LinearForm::sum_of_vars([v(1), v(3)]), 1),
        ]);
        assert_eq!(e.factor_multiset(), expect);
        assert_eq!(e.expand().unwrap(), linalg::brute_force_enumerator(&c4).unwrap());
    }

    #[test]
    fn evaluate_examples() {
        let e = superprism_enumerator(4).unwrap();
        let ones = Point::all_ones((0..8).map(v));
        assert_eq!(e.evaluate(&ones).unwrap(), rat(4096));

        let k4 = factor_enumerator(&families::complete(4).unwrap()).unwrap();
        assert_eq!(k4.evaluate(&Point::all_ones((0..4).map(v))).unwrap(), rat(16));

        // a vanishing factor kills the product
        let mut p = Point::all_ones((0..4).map(v));
        p.set(v(0), rat(-3));
        p.set(v(1), rat(1));
        p.set(v(2), rat(1));
        p.set(v(3), rat(1));
        assert_eq!(k4.evaluate(&p).unwrap(), rat(0));

        assert!(k4.evaluate(&Point::new()).is_err());
    }

    #[test]
    fn cycle_enumerators() {
        let e3 = cycle_enumerator(3).unwrap();
        assert_eq!(
            e3.expand().unwrap(),
            SparsePoly::from_linear(&LinearForm::sum_of_vars((0..3).map(v)))
        );

        let e4 = cycle_enumerator(4).unwrap();
        assert_eq!(
            e4.expand().unwrap(),
            linalg::brute_force_enumerator(&families::cycle(4).unwrap()).unwrap()
        );

        let e5 = cycle_enumerator(5).unwrap();
        assert_eq!(e5.evaluate(&Point::all_ones((0..5).map(v))).unwrap(), rat(5));

        assert!(cycle_enumerator(2).is_err());
    }

    #[test]
    fn superprism_enumerator_oracle() {
        let e5 = superprism_enumerator(5).unwrap();
        assert_eq!(
            e5.evaluate(&Point::all_ones((0..10).map(v))).unwrap(),
            rat(40960)
        );

        // matches the weighted-Laplacian oracle at random rational points
        let g = families::superprism(4).unwrap();
        let e = superprism_enumerator(4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let p = Point::from_pairs(g.vertices().map(|u| {
                let num = rng.gen_range(1..=20i64);
                let den = rng.gen_range(1..=5i64);
                (u, BigRational::new(BigInt::from(num), BigInt::from(den)))
            }));
            let lhs = e.evaluate(&p).unwrap();
            let rhs = linalg::weighted_tree_sum(&g, &p).unwrap() / p.product();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn compose_trivial() {
        // two single edges marked anywhere compose to a single edge
        let one = Enumerator::one();
        let n1 = BTreeSet::from([v(1)]);
        let n2 = BTreeSet::from([v(3)]);
        let e = compose_enumerators(&one, v(0), &n2, &one, v(2), &n1).unwrap();
        assert_eq!(e, Enumerator::one());

        assert!(compose_enumerators(&one, v(0), &BTreeSet::new(), &one, v(2), &n1).is_err());
    }

    #[test]
    fn compose_matches_duplication() {
        // composing with a triangle is true-twin duplication
        let g = families::cycle(5).unwrap();
        let mark = v(2);
        let e = factor_enumerator(&families::complete(3).unwrap()).unwrap(); // x0+x1+x2
        let eg = Enumerator::from_poly(
            linalg::brute_force_enumerator(&g).unwrap(),
        );
        let k3 = families::complete(3).unwrap();
        let (h, relabel, composed) =
            compose_graph_enumerators(&g, mark, &eg, &k3, v(2), &e).unwrap();
        let (dup, copy) = g.duplicate(mark, true).unwrap();
        // same polynomial after renaming the two fresh copies onto {mark, copy}
        let rename = BTreeMap::from([
            (relabel[&v(0)], mark),
            (relabel[&v(1)], copy),
        ]);
        let renamed = composed.rename(&rename).unwrap();
        let brute = linalg::brute_force_enumerator(&dup).unwrap();
        assert_eq!(renamed.expand().unwrap(), brute);
        assert_eq!(h.vertex_count(), dup.vertex_count());
    }

    #[test]
    fn extension_examples() {
        let e = extension_enumerator(&Graph::single()).unwrap();
        assert!(e.factored);
        assert_eq!(e.enumerator, Enumerator::one());

        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let e = extension_enumerator(&k2).unwrap();
        assert!(e.factored);
        assert_eq!(e.apex, v(2));
        assert_eq!(
            e.enumerator.factor_multiset(),
            BTreeMap::from([(LinearForm::sum_of_vars([v(0), v(1), v(2)]), 1)])
        );

        // P4 is not a cograph: expanded form, flagged
        let e = extension_enumerator(&families::path(4).unwrap()).unwrap();
        assert!(!e.factored);
        assert!(!e.enumerator.is_linear_product());
        let ones = Point::all_ones((0..5).map(v));
        // tau of the gem
        let (gem, _) = families::path(4).unwrap().cone();
        assert_eq!(
            e.enumerator.evaluate(&ones).unwrap(),
            BigRational::from(linalg::tree_count(&gem))
        );
    }

    #[test]
    fn gao_liu_small() {
        let w = Permutation::from_one_line(&[2, 1]).unwrap();
        let e = gao_liu_enumerator(&w).unwrap();
        assert_eq!(
            e.factor_multiset(),
            BTreeMap::from([(LinearForm::sum_of_vars([v(0), v(1), v(2)]), 1)])
        );

        // identity permutation: cone of the edgeless graph, apex power
        let id3 = Permutation::identity(3);
        let e = gao_liu_enumerator(&id3).unwrap();
        let g = families::inversion_graph(&id3);
        let (coned, _) = g.cone();
        let f = factor_enumerator(&coned).unwrap();
        assert_eq!(e.factor_multiset(), f.factor_multiset());
        assert_eq!(e.constant(), f.constant());

        let non_sep = Permutation::from_one_line(&[2, 4, 1, 3]).unwrap();
        assert!(gao_liu_enumerator(&non_sep).is_err());
    }

    #[test]
    fn gao_liu_vs_oracle() {
        let w = Permutation::from_one_line(&[2, 1, 4, 3]).unwrap();
        let e = gao_liu_enumerator(&w).unwrap();
        assert_eq!(e.factors().iter().map(|(_, m)| m).sum::<u32>(), 3);
        let g = families::inversion_graph(&w);
        let (coned, _) = g.cone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let p = Point::from_pairs(coned.vertices().map(|u| {
                (u, rat(rng.gen_range(1..=50i64)))
            }));
            let lhs = e.evaluate(&p).unwrap();
            let rhs = linalg::weighted_tree_sum(&coned, &p).unwrap() / p.product();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn serialization_roundtrip() {
        let cases = vec![
            Enumerator::one(),
            Enumerator::zero(),
            factor_enumerator(&families::complete_bipartite(2, 3).unwrap()).unwrap(),
            superprism_enumerator(4).unwrap(),
            cycle_enumerator(5).unwrap(),
        ];
        for e in cases {
            let text = e.to_text();
            let parsed = Enumerator::parse_text(&text).unwrap();
            assert_eq!(parsed, e);
            assert_eq!(parsed.to_text(), text);
        }
        assert!(Enumerator::parse_text("").is_err());
        assert!(Enumerator::parse_text("factor 1 : 1*x0\n").is_err());
        assert!(Enumerator::parse_text("constant 1\nfactor 0 : 1*x0\n").is_err());
    }

    #[test]
    fn homogeneity_of_family_forms() {
        for (e, n) in [
            (cycle_enumerator(6).unwrap(), 6u32),
            (superprism_enumerator(5).unwrap(), 10),
        ] {
            let p = e.expand().unwrap();
            assert!(p.is_homogeneous_of_degree(n - 2));
        }
    }

    #[test]
    fn superprism_counts_fit_formula() {
        for n in 4u32..=7 {
            let e = superprism_enumerator(n).unwrap();
            let ones = Point::all_ones((0..2 * n).map(v));
            let tau = e.evaluate(&ones).unwrap();
            let expect = (n as u64) * 2u64.pow(3 * n - 2);
            assert_eq!(tau.to_integer().to_u64(), Some(expect));
        }
    }
}

//! Sparse multivariate polynomials over the reals, canonical monomial
//! indexing in graded-lexicographic order, and basic semialgebraic sets.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis size C({n}+{d}, {n}) overflows the platform integer")]
    BasisOverflow { n: usize, d: usize },
    #[error("ball radius squared must be positive, got {0}")]
    NonPositiveRadius(f64),
}

/// Exponent vector of a monomial, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn constant(n: usize) -> Self {
        Monomial { exponents: vec![0; n] }
    }

    /// Unit monomial x_i in n variables.
    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial { exponents: e }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Product of monomials: exponent-wise sum.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.exponents
            .iter()
            .zip(x)
            .map(|(&e, &xi)| xi.powi(e as i32))
            .product()
    }
}

/// Graded-lexicographic order: first by total degree, then lexicographically
/// with x_1 before x_2 before ... within a degree. This matches the listing
/// order of `canonical_basis` (1, x_1, x_2, x_1^2, x_1 x_2, x_2^2, ...).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            // Within a degree, larger leading exponents come first.
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Number of monomials of degree <= d in n variables: C(n+d, n).
///
/// Exact integer arithmetic; overflow of the platform integer is an error.
pub fn basis_size(n: usize, d: usize) -> Result<usize, PolyError> {
    assert!(n >= 1, "basis_size requires n >= 1");
    let mut acc: u128 = 1;
    // C(n+d, min(n, d)) via incremental exact division.
    let k = n.min(d);
    for i in 1..=k {
        acc = acc
            .checked_mul((n + d - k + i) as u128)
            .ok_or(PolyError::BasisOverflow { n, d })?;
        acc /= i as u128;
    }
    usize::try_from(acc).map_err(|_| PolyError::BasisOverflow { n, d })
}

/// All monomials with |alpha| <= d in graded-lexicographic order.
///
/// The position of a monomial in this list is the canonical index used by
/// every moment and localizing matrix; the list for degree d is a prefix of
/// the list for degree d+1.
pub fn canonical_basis(n: usize, d: usize) -> Vec<Monomial> {
    assert!(n >= 1, "canonical_basis requires n >= 1");
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    for deg in 0..=d as u32 {
        emit_degree(n, deg, 0, deg, &mut current, &mut out);
    }
    out
}

fn emit_degree(n: usize, deg: u32, pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos == n - 1 {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    // Larger exponent on the earlier variable first (grlex listing order).
    for e in (0..=remaining).rev() {
        current[pos] = e;
        emit_degree(n, deg, pos + 1, remaining - e, current, out);
    }
    current[pos] = 0;
}

/// Sparse multivariate polynomial with real coefficients.
///
/// Terms are keyed by exponent vector in graded-lexicographic order; zero
/// coefficients are pruned on every construction so that equal polynomials
/// have identical term maps.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, f64>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: f64) -> Self {
        let mut p = Polynomial::zero(n);
        if c != 0.0 {
            p.terms.insert(Monomial::constant(n), c);
        }
        p
    }

    /// The polynomial x_i.
    pub fn variable(n: usize, i: usize) -> Self {
        Polynomial::from_term(Monomial::variable(n, i), 1.0)
    }

    pub fn from_term(m: Monomial, coeff: f64) -> Self {
        let n = m.num_vars();
        let mut p = Polynomial::zero(n);
        if coeff != 0.0 {
            p.terms.insert(m, coeff);
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, f64)>) -> Self {
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            assert_eq!(m.num_vars(), n, "term dimension mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: f64) {
        if c == 0.0 {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&m);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Terms in canonical (graded-lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, f64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    /// Largest absolute coefficient; 0 for the zero polynomial.
    pub fn coeff_norm_inf(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.abs()))
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64, PolyError> {
        if x.len() != self.n {
            return Err(PolyError::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok(self.terms.iter().map(|(m, c)| c * m.eval(x)).sum())
    }

    pub fn scale(&self, a: f64) -> Polynomial {
        if a == 0.0 {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch { expected: self.n, got: other.n });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let e = out.terms.entry(m.clone()).or_insert(0.0);
            *e += c;
            if *e == 0.0 {
                out.terms.remove(m);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch { expected: self.n, got: other.n });
        }
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let e = out.terms.entry(m).or_insert(0.0);
                *e += ca * cb;
            }
        }
        out.terms.retain(|_, c| *c != 0.0);
        Ok(out)
    }

    /// Partial derivative with respect to x_i.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            let entry = out.terms.entry(Monomial::new(exps)).or_insert(0.0);
            *entry += c * e as f64;
        }
        out.terms.retain(|_, c| *c != 0.0);
        out
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.n, 1.0);
        for _ in 0..k {
            out = out.mul(self).expect("same dimension");
        }
        out
    }

    /// The polynomial sum_i x_i^2.
    pub fn norm_sq(n: usize) -> Polynomial {
        let mut p = Polynomial::zero(n);
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 2;
            p.terms.insert(Monomial::new(e), 1.0);
        }
        p
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if m.is_constant() {
                    write!(f, "{}", c)?;
                } else if *c == 1.0 {
                    write!(f, "{}", m)?;
                } else if *c == -1.0 {
                    write!(f, "-{}", m)?;
                } else {
                    write!(f, "{}*{}", c, m)?;
                }
            } else {
                let (sign, mag) = if *c < 0.0 { ("-", -c) } else { ("+", *c) };
                if m.is_constant() {
                    write!(f, " {} {}", sign, mag)?;
                } else if mag == 1.0 {
                    write!(f, " {} {}", sign, m)?;
                } else {
                    write!(f, " {} {}*{}", sign, mag, m)?;
                }
            }
        }
        Ok(())
    }
}

/// Basic closed semialgebraic set {x : g_j(x) >= 0, j = 1..m}.
///
/// The constant constraint g_0 = 1 is implicit and never stored. When
/// `ball_radius_sq` is set, the augmented constraint list includes
/// M - ||x||^2 as one extra constraint (an Archimedean witness).
#[derive(Debug, Clone, PartialEq)]
pub struct SemialgebraicSet {
    n: usize,
    constraints: Vec<Polynomial>,
    ball_radius_sq: Option<f64>,
}

impl SemialgebraicSet {
    pub fn new(n: usize, constraints: Vec<Polynomial>) -> Result<Self, PolyError> {
        for g in &constraints {
            if g.num_vars() != n {
                return Err(PolyError::DimensionMismatch { expected: n, got: g.num_vars() });
            }
        }
        Ok(SemialgebraicSet { n, constraints, ball_radius_sq: None })
    }

    pub fn whole_space(n: usize) -> Self {
        SemialgebraicSet { n, constraints: Vec::new(), ball_radius_sq: None }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// The stored constraints g_1..g_m, without the ball augmentation.
    pub fn constraints(&self) -> &[Polynomial] {
        &self.constraints
    }

    pub fn ball_radius_sq(&self) -> Option<f64> {
        self.ball_radius_sq
    }

    /// Returns the set with M - ||x||^2 recorded as an additional
    /// constraint; the original constraints are unchanged.
    pub fn augment_with_ball(&self, m: f64) -> Result<SemialgebraicSet, PolyError> {
        if !(m > 0.0) {
            return Err(PolyError::NonPositiveRadius(m));
        }
        let mut out = self.clone();
        out.ball_radius_sq = Some(m);
        Ok(out)
    }

    /// Constraint list including the ball constraint when present.
    pub fn augmented_constraints(&self) -> Vec<Polynomial> {
        let mut out = self.constraints.clone();
        if let Some(m) = self.ball_radius_sq {
            let ball = Polynomial::constant(self.n, m)
                .sub(&Polynomial::norm_sq(self.n))
                .expect("same dimension");
            out.push(ball);
        }
        out
    }

    /// True when every constraint (including the ball) is nonnegative at x,
    /// up to `tol` slack.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool, PolyError> {
        for g in self.augmented_constraints() {
            if g.eval(x)? < -tol {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Axis-aligned box given by per-coordinate bounds, one affine
    /// constraint per face: x_i - l_i >= 0 and u_i - x_i >= 0.
    pub fn box_affine(lower: &[f64], upper: &[f64]) -> Self {
        let n = lower.len();
        assert_eq!(n, upper.len());
        let mut gs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let xi = Polynomial::variable(n, i);
            gs.push(xi.sub(&Polynomial::constant(n, lower[i])).unwrap());
            gs.push(Polynomial::constant(n, upper[i]).sub(&xi).unwrap());
        }
        SemialgebraicSet { n, constraints: gs, ball_radius_sq: None }
    }

    /// Axis-aligned box as one quadratic per coordinate:
    /// (x_i - l_i)(u_i - x_i) >= 0.
    pub fn box_quadratic(lower: &[f64], upper: &[f64]) -> Self {
        let n = lower.len();
        assert_eq!(n, upper.len());
        let mut gs = Vec::with_capacity(n);
        for i in 0..n {
            let xi = Polynomial::variable(n, i);
            let a = xi.sub(&Polynomial::constant(n, lower[i])).unwrap();
            let b = Polynomial::constant(n, upper[i]).sub(&xi).unwrap();
            gs.push(a.mul(&b).unwrap());
        }
        SemialgebraicSet { n, constraints: gs, ball_radius_sq: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn basis_size_matches_binomial() {
        assert_eq!(basis_size(2, 2).unwrap(), 6);
        assert_eq!(basis_size(5, 0).unwrap(), 1);
        assert_eq!(basis_size(3, 4).unwrap(), 35);
        assert_eq!(basis_size(1, 7).unwrap(), 8);
    }

    #[test]
    fn basis_size_overflow_is_error() {
        assert!(matches!(basis_size(200, 200), Err(PolyError::BasisOverflow { .. })));
    }

    #[test]
    fn canonical_basis_univariate_prefix() {
        let b = canonical_basis(1, 2);
        assert_eq!(b, vec![mono(&[0]), mono(&[1]), mono(&[2])]);
    }

    #[test]
    fn canonical_basis_grlex_order() {
        let b = canonical_basis(2, 1);
        assert_eq!(b, vec![mono(&[0, 0]), mono(&[1, 0]), mono(&[0, 1])]);
        let b2 = canonical_basis(2, 2);
        assert_eq!(b2.len(), 6);
        assert_eq!(&b2[3..], &[mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]);
        // Ordering trait agrees with listing order.
        for w in b2.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn basis_length_matches_size() {
        for n in 1..=4 {
            for d in 0..=5 {
                assert_eq!(canonical_basis(n, d).len(), basis_size(n, d).unwrap());
            }
        }
    }

    #[test]
    fn basis_prefix_property() {
        for n in 1..=3 {
            for d in 0..=4 {
                let small = canonical_basis(n, d);
                let big = canonical_basis(n, d + 1);
                assert_eq!(&big[..small.len()], &small[..]);
            }
        }
    }

    #[test]
    fn eval_examples() {
        // x^2 - 1 at x = 2
        let p = Polynomial::from_terms(1, [(mono(&[2]), 1.0), (mono(&[0]), -1.0)]);
        assert_eq!(p.eval(&[2.0]).unwrap(), 3.0);
        // constant 5 anywhere
        let c = Polynomial::constant(3, 5.0);
        assert_eq!(c.eval(&[1.0, -2.0, 0.3]).unwrap(), 5.0);
        // x1^2 x2 + 2 x2 at (2, 3)
        let q = Polynomial::from_terms(2, [(mono(&[2, 1]), 1.0), (mono(&[0, 1]), 2.0)]);
        assert_eq!(q.eval(&[2.0, 3.0]).unwrap(), 18.0);
        // dimension mismatch
        assert!(p.eval(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn mul_examples() {
        let x = Polynomial::variable(1, 0);
        let x2 = x.mul(&x).unwrap();
        assert_eq!(x2, Polynomial::from_term(mono(&[2]), 1.0));

        let zero = Polynomial::zero(1);
        assert!(x.mul(&zero).unwrap().is_zero());

        let xp1 = x.add(&Polynomial::constant(1, 1.0)).unwrap();
        let xm1 = x.sub(&Polynomial::constant(1, 1.0)).unwrap();
        let prod = xp1.mul(&xm1).unwrap();
        let expect = Polynomial::from_terms(1, [(mono(&[2]), 1.0), (mono(&[0]), -1.0)]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn mul_cancellation_prunes_zero() {
        // (x + 1)(x - 1) has no x term stored.
        let x = Polynomial::variable(1, 0);
        let p = x.add(&Polynomial::constant(1, 1.0)).unwrap();
        let q = x.sub(&Polynomial::constant(1, 1.0)).unwrap();
        let prod = p.mul(&q).unwrap();
        assert_eq!(prod.num_terms(), 2);
    }

    #[test]
    fn derivative_basic() {
        // d/dx (x^3 - 2x) = 3x^2 - 2
        let p = Polynomial::from_terms(1, [(mono(&[3]), 1.0), (mono(&[1]), -2.0)]);
        let d = p.derivative(0);
        let expect = Polynomial::from_terms(1, [(mono(&[2]), 3.0), (mono(&[0]), -2.0)]);
        assert_eq!(d, expect);
    }

    #[test]
    fn augment_with_ball_examples() {
        // {x >= 0} with M = 1 gains 1 - x^2.
        let s = SemialgebraicSet::new(1, vec![Polynomial::variable(1, 0)]).unwrap();
        let a = s.augment_with_ball(1.0).unwrap();
        let gs = a.augmented_constraints();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[0], Polynomial::variable(1, 0));
        let ball = Polynomial::from_terms(1, [(mono(&[0]), 1.0), (mono(&[2]), -1.0)]);
        assert_eq!(gs[1], ball);

        // Empty constraint list with M = 4: the radius-2 ball.
        let e = SemialgebraicSet::whole_space(2).augment_with_ball(4.0).unwrap();
        let gs = e.augmented_constraints();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].eval(&[2.0, 0.0]).unwrap(), 0.0);

        assert!(s.augment_with_ball(0.0).is_err());
        assert!(s.augment_with_ball(-1.0).is_err());
    }

    #[test]
    fn ball_augmentation_preserves_membership_on_grid() {
        // Box [-1,1]^2 as four affine constraints, M = 2: membership of
        // points with ||x||^2 <= M is unchanged.
        let s = SemialgebraicSet::box_affine(&[-1.0, -1.0], &[1.0, 1.0]);
        let a = s.augment_with_ball(2.0).unwrap();
        let mut k = 0;
        for i in 0..21 {
            for j in 0..21 {
                let x = [-1.5 + 0.15 * i as f64, -1.5 + 0.15 * j as f64];
                if x[0] * x[0] + x[1] * x[1] <= 2.0 {
                    assert_eq!(s.contains(&x, 0.0).unwrap(), a.contains(&x, 0.0).unwrap());
                    k += 1;
                }
            }
        }
        assert!(k > 100);
    }
}

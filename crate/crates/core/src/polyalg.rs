//! Sparse multivariate polynomials with exact coefficients, exact division,
//! linear substitution, and monomial symmetric functions `s_I`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not exactly divisible; remainder has {terms} terms: {remainder}")]
    NotDivisible { terms: usize, remainder: String },
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid partition: {0}")]
    BadPartition(String),
}

pub type Result<T> = std::result::Result<T, PolyError>;

/// Exact coefficient ring. Implemented for `BigInt` and `BigRational`.
pub trait Coefficient: Clone + PartialEq + Zero + One + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn from_integer(v: BigInt) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `self / other` when the quotient lies in the ring.
    fn exact_div(&self, other: &Self) -> Option<Self>;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn to_rational(&self) -> BigRational;

    fn from_i64(v: i64) -> Self {
        Self::from_integer(BigInt::from(v))
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        self.add_assign_ref(&a.mul_ref(b));
    }
}

impl Coefficient for BigInt {
    fn from_integer(v: BigInt) -> Self {
        v
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

impl Coefficient for BigRational {
    fn from_integer(v: BigInt) -> Self {
        BigRational::from_integer(v)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then exponents compared from the first variable on.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial<const N: usize>(pub [u32; N]);

impl<const N: usize> Monomial<N> {
    pub fn one() -> Self {
        Monomial([0; N])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }
}

impl<const N: usize> Ord for Monomial<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl<const N: usize> PartialOrd for Monomial<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> fmt::Debug for Monomial<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A polynomial in `N` variables over `C`, stored sparsely without zero
/// coefficients.
#[derive(Clone, PartialEq)]
pub struct Poly<C: Coefficient, const N: usize> {
    terms: BTreeMap<Monomial<N>, C>,
}

pub type QPoly<const N: usize> = Poly<BigRational, N>;
pub type ZPoly<const N: usize> = Poly<BigInt, N>;
/// Polynomials in `e1..e4`, coordinates on `H^2(BT)`.
pub type Poly4 = QPoly<4>;
/// Polynomials in `x1, x2`, coordinates on `H^2(CP^inf x CP^inf)`.
pub type Poly2 = QPoly<2>;

const PARALLEL_MUL_THRESHOLD: usize = 1 << 18;

impl<C: Coefficient, const N: usize> Poly<C, N> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i), C::one())
    }

    pub fn monomial(m: Monomial<N>, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Linear form `sum coeffs[i] * v_i`.
    pub fn linear(coeffs: &[C; N]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(i), c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<N>, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn from_hash(map: FxHashMap<Monomial<N>, C>) -> Self {
        Poly { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn add_term(&mut self, m: Monomial<N>, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<N>, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial<N>) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_of(&self, exps: [u32; N]) -> C {
        self.coeff(&Monomial(exps))
    }

    pub fn leading_term(&self) -> Option<(&Monomial<N>, &C)> {
        self.terms.iter().next_back()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.mul_ref(s))).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, &c.neg_ref());
        }
    }

    fn mul_into(lhs: &[(Monomial<N>, C)], rhs: &Self, acc: &mut FxHashMap<Monomial<N>, C>) {
        for (ma, ca) in lhs {
            for (mb, cb) in &rhs.terms {
                acc.entry(ma.mul(mb)).or_insert_with(C::zero).add_mul_assign(ca, cb);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let lhs: Vec<(Monomial<N>, C)> = big.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        if big.len() * small.len() < PARALLEL_MUL_THRESHOLD {
            let mut acc = FxHashMap::default();
            Self::mul_into(&lhs, small, &mut acc);
            return Self::from_hash(acc);
        }
        let chunk = lhs.len().div_ceil(rayon::current_num_threads().max(1) * 4).max(1);
        let merged = lhs
            .par_chunks(chunk)
            .map(|part| {
                let mut acc = FxHashMap::default();
                Self::mul_into(part, small, &mut acc);
                acc
            })
            .reduce(FxHashMap::default, |mut a, b| {
                if a.len() < b.len() {
                    return merge_into(b, a);
                }
                for (m, c) in b {
                    a.entry(m).or_insert_with(C::zero).add_assign_ref(&c);
                }
                a
            });
        Self::from_hash(merged)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&Monomial<N>, &C) -> D) -> Poly<D, N> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(m, c))))
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial<N>) -> (Monomial<N>, bool)) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (m2, negate) = f(m);
            out.add_term(m2, &if negate { c.neg_ref() } else { c.clone() });
        }
        out
    }

    /// Exchange two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        self.map_monomials(|m| {
            let mut e = m.0;
            e.swap(i, j);
            (Monomial(e), false)
        })
    }

    pub fn to_rational(&self) -> QPoly<N> {
        self.map_coeffs(|_, c| c.to_rational())
    }

    /// Canonical text form: terms in descending graded-lex order, variables
    /// named `{prefix}1..{prefix}N`, rational coefficients written `a/b`.
    pub fn to_canonical_string(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.neg_ref() } else { c.clone() };
            match (idx, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("{prefix}{}", i + 1) } else { format!("{prefix}{}^{e}", i + 1) })
                .collect();
            if vars.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if abs != C::one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }

    /// General substitution `v_i -> images[i]`.
    pub fn linear_substitute<const M: usize>(&self, images: &[Poly<C, M>; N]) -> Poly<C, M> {
        if images.iter().all(|p| p.len() <= 1) {
            return self.substitute_monomials(images);
        }
        let mut powers: Vec<Vec<Poly<C, M>>> = images.iter().map(|p| vec![Poly::one(), p.clone()]).collect();
        let mut out = Poly::<C, M>::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::<C, M>::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&images[i]);
                    cache.push(next);
                }
                term = term.mul(&cache[e as usize]);
            }
            out.add_assign(&term);
        }
        out
    }

    fn substitute_monomials<const M: usize>(&self, images: &[Poly<C, M>; N]) -> Poly<C, M> {
        let heads: Vec<Option<(Monomial<M>, C)>> =
            images.iter().map(|p| p.terms().next().map(|(m, c)| (*m, c.clone()))).collect();
        let mut acc: FxHashMap<Monomial<M>, C> = FxHashMap::default();
        let mut coeff_powers: Vec<Vec<C>> = heads
            .iter()
            .map(|h| vec![C::one(), h.as_ref().map_or_else(C::zero, |(_, c)| c.clone())])
            .collect();
        'terms: for (m, c) in &self.terms {
            let mut mono = Monomial::<M>::one();
            let mut coeff = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let Some((hm, _)) = &heads[i] else { continue 'terms };
                for (slot, &x) in mono.0.iter_mut().zip(hm.0.iter()) {
                    *slot += x * e;
                }
                let cache = &mut coeff_powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul_ref(&cache[1]);
                    cache.push(next);
                }
                coeff = coeff.mul_ref(&cache[e as usize]);
            }
            acc.entry(mono).or_insert_with(C::zero).add_assign_ref(&coeff);
        }
        Poly::from_hash(acc)
    }

    /// Elementary substitution `v_i -> v_i + c v_j`.
    pub fn shear(&self, i: usize, j: usize, c: &C) -> Self {
        assert_ne!(i, j, "shear needs two distinct variables");
        if c.is_zero() {
            return self.clone();
        }
        let max_e = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
        let mut cpow = vec![C::one()];
        for _ in 0..max_e {
            let next = cpow.last().unwrap().mul_ref(c);
            cpow.push(next);
        }
        let mut acc: FxHashMap<Monomial<N>, C> = FxHashMap::default();
        for (m, coeff) in &self.terms {
            let a = m.0[i];
            let mut binom = BigInt::one();
            for k in 0..=a {
                let mut e = m.0;
                e[i] = a - k;
                e[j] += k;
                let t = coeff.mul_ref(&cpow[k as usize]).mul_ref(&C::from_integer(binom.clone()));
                acc.entry(Monomial(e)).or_insert_with(C::zero).add_assign_ref(&t);
                binom = binom * (a - k) / (k + 1);
            }
        }
        Self::from_hash(acc)
    }

    /// Substitution `v_i -> d_i v_i`.
    pub fn scale_vars(&self, d: &[C; N]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    coeff = coeff.mul_ref(&d[i]);
                }
            }
            out.add_term(*m, &coeff);
        }
        out
    }

    /// Substitution `v_i -> v_{target[i]}` for a permutation `target`.
    pub fn permute_vars(&self, target: &[usize; N]) -> Self {
        self.map_monomials(|m| {
            let mut e = [0; N];
            for (i, &x) in m.0.iter().enumerate() {
                e[target[i]] = x;
            }
            (Monomial(e), false)
        })
    }
}

fn merge_into<C: Coefficient, const N: usize>(
    mut into: FxHashMap<Monomial<N>, C>,
    from: FxHashMap<Monomial<N>, C>,
) -> FxHashMap<Monomial<N>, C> {
    for (m, c) in from {
        into.entry(m).or_insert_with(C::zero).add_assign_ref(&c);
    }
    into
}

impl<const N: usize> QPoly<N> {
    /// Substitution `v_i -> sum_j matrix[i][j] v_j` for an invertible matrix,
    /// factored as permutation, unit-lower shears, scaling and unit-upper
    /// shears. Falls back to direct expansion when the matrix is singular.
    pub fn substitute_matrix(&self, matrix: &[[BigRational; N]; N]) -> Self {
        let Some(f) = PluFactors::new(matrix) else {
            let images: [QPoly<N>; N] = std::array::from_fn(|i| Poly::linear(&matrix[i]));
            return self.linear_substitute(&images);
        };
        // matrix = Q * L * D * U with Q a permutation
        let mut p = self.permute_vars(&f.target);
        for k in 0..N {
            for i in k + 1..N {
                p = p.shear(i, k, &f.lower[i][k]);
            }
        }
        p = p.scale_vars(&f.diag);
        for k in (0..N).rev() {
            for j in k + 1..N {
                p = p.shear(k, j, &f.upper[k][j]);
            }
        }
        p
    }
}

/// `A = Q L D U`: `Q` permutation (row `i` of `A` is row `target^-1`...),
/// `L` unit lower, `D` diagonal, `U` unit upper.
struct PluFactors<const N: usize> {
    /// `Q` maps variable `i` to variable `target[i]`.
    target: [usize; N],
    lower: [[BigRational; N]; N],
    diag: [BigRational; N],
    upper: [[BigRational; N]; N],
}

impl<const N: usize> PluFactors<N> {
    fn new(a: &[[BigRational; N]; N]) -> Option<Self> {
        let mut u = a.clone();
        let mut perm: [usize; N] = std::array::from_fn(|i| i);
        let mut lower: [[BigRational; N]; N] = std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero()));
        for k in 0..N {
            let pivot = (k..N).find(|&r| !u[r][k].is_zero())?;
            if pivot != k {
                u.swap(pivot, k);
                perm.swap(pivot, k);
                lower.swap(pivot, k);
                // keep the already-computed multipliers attached to their rows
                for c in k..N {
                    let (x, y) = (lower[k][c].clone(), lower[pivot][c].clone());
                    lower[k][c] = y;
                    lower[pivot][c] = x;
                }
            }
            for r in k + 1..N {
                if u[r][k].is_zero() {
                    continue;
                }
                let factor = &u[r][k] / &u[k][k];
                for c in k..N {
                    let t = &factor * &u[k][c];
                    u[r][c] -= t;
                }
                lower[r][k] = factor;
            }
        }
        for (i, row) in lower.iter_mut().enumerate() {
            row[i] = BigRational::one();
        }
        let diag: [BigRational; N] = std::array::from_fn(|i| u[i][i].clone());
        let mut upper = u;
        for i in 0..N {
            for j in 0..N {
                upper[i][j] = if j < i { BigRational::zero() } else { &upper[i][j] / &diag[i] };
            }
        }
        // P A = L D U with (P A)[i] = A[perm[i]], so A = P^T L D U and the
        // first substitution sends variable perm[i] to variable i.
        let mut target = [0; N];
        for (i, &p) in perm.iter().enumerate() {
            target[p] = i;
        }
        Some(PluFactors { target, lower, diag, upper })
    }
}

impl<C: Coefficient, const N: usize> fmt::Debug for Poly<C, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string("v"))
    }
}

impl<C: Coefficient, const N: usize> Serialize for Poly<C, N> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let prefix = if N == 2 { "x" } else { "e" };
        s.serialize_str(&self.to_canonical_string(prefix))
    }
}

/// Multivariate division by a single divisor under graded-lex order.
/// Returns the quotient, or `NotDivisible` with the nonzero remainder.
pub fn exact_divide<C: Coefficient, const N: usize>(num: &Poly<C, N>, den: &Poly<C, N>) -> Result<Poly<C, N>> {
    let Some((lead_m, lead_c)) = den.leading_term() else {
        return Err(PolyError::DivisionByZero);
    };
    let (lead_m, lead_c) = (*lead_m, lead_c.clone());
    let mut rest = num.terms.clone();
    let mut quotient = Poly::zero();
    let mut remainder = Poly::zero();
    while let Some((m, c)) = rest.pop_last() {
        let q = if lead_m.divides(&m) { c.exact_div(&lead_c) } else { None };
        let Some(q) = q else {
            remainder.add_term(m, &c);
            continue;
        };
        let qm = lead_m.quotient_of(&m);
        for (dm, dc) in den.terms.iter().rev().skip(1) {
            let key = qm.mul(dm);
            let t = q.mul_ref(dc);
            match rest.get_mut(&key) {
                Some(existing) => {
                    existing.sub_assign_ref(&t);
                    if existing.is_zero() {
                        rest.remove(&key);
                    }
                }
                None => {
                    rest.insert(key, t.neg_ref());
                }
            }
        }
        quotient.add_term(qm, &q);
    }
    if remainder.is_zero() {
        Ok(quotient)
    } else {
        Err(PolyError::NotDivisible { terms: remainder.len(), remainder: truncated(&remainder) })
    }
}

fn truncated<C: Coefficient, const N: usize>(p: &Poly<C, N>) -> String {
    let s = p.to_canonical_string("v");
    if s.len() > 400 {
        format!("{}...", &s[..400])
    } else {
        s
    }
}

/// Divides by a linear form having a unit coefficient on some variable, by
/// synthetic division in that variable. Falls back to [`exact_divide`].
pub fn divide_by_linear<C: Coefficient, const N: usize>(num: &Poly<C, N>, linear: &Poly<C, N>) -> Result<Poly<C, N>> {
    if linear.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let pivot = (0..N).find(|&k| linear.coeff(&Monomial::var(k)).is_unit());
    let Some(k) = pivot else {
        return exact_divide(num, linear);
    };
    if linear.degree() != Some(1) || !linear.is_homogeneous() {
        return exact_divide(num, linear);
    }
    if num.is_zero() {
        return Ok(Poly::zero());
    }
    let lead = linear.coeff(&Monomial::var(k));
    let others: Vec<(Monomial<N>, C)> =
        linear.terms().filter(|(m, _)| m.0[k] == 0).map(|(m, c)| (*m, c.clone())).collect();
    let top = num.terms.keys().map(|m| m.0[k]).max().unwrap_or(0) as usize;
    // slices[j] holds the coefficient of v_k^j, with v_k stripped
    let mut slices: Vec<FxHashMap<Monomial<N>, C>> = vec![FxHashMap::default(); top + 1];
    for (m, c) in &num.terms {
        let mut e = m.0;
        let j = e[k] as usize;
        e[k] = 0;
        slices[j].insert(Monomial(e), c.clone());
    }
    let mut quotient = Poly::zero();
    let mut current: FxHashMap<Monomial<N>, C> = FxHashMap::default();
    for j in (0..=top).rev() {
        // slice_j - others * Q_j must equal lead * Q_{j-1}
        let mut work = std::mem::take(&mut slices[j]);
        for (qm, qc) in &current {
            for (om, oc) in &others {
                work.entry(qm.mul(om)).or_insert_with(C::zero).sub_assign_ref(&qc.mul_ref(oc));
            }
        }
        work.retain(|_, c| !c.is_zero());
        if j == 0 {
            if !work.is_empty() {
                let rem = Poly::from_hash(work);
                return Err(PolyError::NotDivisible { terms: rem.len(), remainder: truncated(&rem) });
            }
            break;
        }
        let mut next = FxHashMap::default();
        for (m, c) in work {
            let q = c.exact_div(&lead).ok_or_else(|| PolyError::NotDivisible {
                terms: 1,
                remainder: format!("coefficient {c} not divisible by {lead}"),
            })?;
            let mut e = m.0;
            e[k] = (j - 1) as u32;
            quotient.add_term(Monomial(e), &q);
            next.insert(m, q);
        }
        current = next;
    }
    Ok(quotient)
}

/// Sequential exact division by a list of linear factors.
pub fn divide_by_linear_factors<C: Coefficient, const N: usize>(
    num: &Poly<C, N>,
    factors: &[Poly<C, N>],
) -> Result<Poly<C, N>> {
    let mut q = num.clone();
    for f in factors {
        q = divide_by_linear(&q, f)?;
    }
    Ok(q)
}

pub fn product<C: Coefficient, const N: usize>(factors: &[Poly<C, N>]) -> Poly<C, N> {
    factors.iter().fold(Poly::one(), |acc, f| acc.mul(f))
}

/// A quotient of polynomials, compared by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFn<C: Coefficient, const N: usize> {
    pub numerator: Poly<C, N>,
    pub denominator: Poly<C, N>,
}

impl<C: Coefficient, const N: usize> RationalFn<C, N> {
    pub fn new(numerator: Poly<C, N>, denominator: Poly<C, N>) -> Result<Self> {
        if denominator.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(RationalFn { numerator, denominator })
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.denominator == other.denominator {
            return RationalFn {
                numerator: self.numerator.add(&other.numerator),
                denominator: self.denominator.clone(),
            };
        }
        RationalFn {
            numerator: self.numerator.mul(&other.denominator).add(&other.numerator.mul(&self.denominator)),
            denominator: self.denominator.mul(&other.denominator),
        }
    }

    pub fn to_poly(&self) -> Result<Poly<C, N>> {
        exact_divide(&self.numerator, &self.denominator)
    }
}

impl<C: Coefficient, const N: usize> PartialEq for RationalFn<C, N> {
    fn eq(&self, other: &Self) -> bool {
        self.numerator.mul(&other.denominator) == other.numerator.mul(&self.denominator)
    }
}

/// A partition `i_1 >= i_2 >= ... >= i_r > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(PolyError::BadPartition(format!("{parts:?} has a zero part")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn single(n: u32) -> Self {
        Partition::new(vec![n]).expect("single part must be positive")
    }

    pub fn pair(a: u32, b: u32) -> Self {
        Partition::new(vec![a, b]).expect("parts must be positive")
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Distinct parts with multiplicities, largest first.
    pub fn grouped(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, k)) if *v == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Every way of writing this multiset as a juxtaposition `JK`.
    pub fn splits(&self) -> Vec<(Partition, Partition)> {
        let groups = self.grouped();
        let mut out = vec![(Vec::new(), Vec::new())];
        for (value, mult) in groups {
            let mut next = Vec::new();
            for (j, k) in &out {
                for take in 0..=mult {
                    let mut j2: Vec<u32> = j.clone();
                    let mut k2: Vec<u32> = k.clone();
                    j2.extend(std::iter::repeat(value).take(take));
                    k2.extend(std::iter::repeat(value).take(mult - take));
                    next.push((j2, k2));
                }
            }
            out = next;
        }
        out.into_iter().map(|(j, k)| (Partition { parts: j }, Partition { parts: k })).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = trimmed
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| PolyError::BadPartition(format!("'{s}': {e}"))))
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// The monomial symmetric function `s_I` evaluated at `values`: the sum over
/// the distinct monomials `v_{j1}^{i1} ... v_{jr}^{ir}`. Zero when `I` has
/// more parts than there are values.
pub fn s_i_eval<C: Coefficient, const N: usize>(partition: &Partition, values: &[Poly<C, N>]) -> Poly<C, N> {
    if partition.len() > values.len() {
        return Poly::zero();
    }
    let groups = partition.grouped();
    let mut power_cache: FxHashMap<(usize, u32), Poly<C, N>> = FxHashMap::default();
    let mut used = vec![false; values.len()];
    let mut out = Poly::zero();
    assign_groups(&groups, 0, values, &mut used, 0, Poly::one(), &mut power_cache, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn assign_groups<C: Coefficient, const N: usize>(
    groups: &[(u32, usize)],
    g: usize,
    values: &[Poly<C, N>],
    used: &mut Vec<bool>,
    start: usize,
    acc: Poly<C, N>,
    cache: &mut FxHashMap<(usize, u32), Poly<C, N>>,
    out: &mut Poly<C, N>,
) {
    let Some(&(exp, remaining)) = groups.get(g) else {
        out.add_assign(&acc);
        return;
    };
    if remaining == 0 {
        let mut rest = groups.to_vec();
        rest.remove(g);
        assign_groups(&rest, g, values, used, 0, acc, cache, out);
        return;
    }
    for idx in start..values.len() {
        if used[idx] {
            continue;
        }
        used[idx] = true;
        let pw = cache.entry((idx, exp)).or_insert_with(|| values[idx].pow(exp)).clone();
        let mut next_groups = groups.to_vec();
        next_groups[g].1 -= 1;
        // within one group the indices increase, so each monomial appears once
        assign_groups(&next_groups, g, values, used, idx + 1, acc.mul(&pw), cache, out);
        used[idx] = false;
    }
}

/// `p_a = sum v^a` over the values.
pub fn power_sum<C: Coefficient, const N: usize>(values: &[Poly<C, N>], a: u32) -> Poly<C, N> {
    values.iter().fold(Poly::zero(), |acc, v| acc.add(&v.pow(a)))
}

/// `s_I` for partitions with at most two parts, via power sums:
/// `s_a = p_a`, `s_{a,b} = p_a p_b - p_{a+b}` and `s_{a,a} = (p_a^2 - p_{2a}) / 2`.
/// `power` computes `p_k` for the caller's values.
pub fn s_i_from_power_sums<C: Coefficient, const N: usize>(
    partition: &Partition,
    mut power: impl FnMut(u32) -> Poly<C, N>,
) -> Option<Poly<C, N>> {
    match partition.parts() {
        [] => Some(Poly::one()),
        [a] => Some(power(*a)),
        [a, b] => {
            let pa = power(*a);
            let pab = power(a + b);
            if a == b {
                let sq = pa.mul(&pa).sub(&pab);
                let two = C::from_i64(2);
                let mut out = Poly::zero();
                for (m, c) in sq.terms() {
                    out.add_term(*m, &c.exact_div(&two)?);
                }
                Some(out)
            } else {
                let pb = power(*b);
                Some(pa.mul(&pb).sub(&pab))
            }
        }
        _ => None,
    }
}

/// `(c_1 v_1 + ... + c_N v_N)^k` by the multinomial theorem.
pub fn linear_power<C: Coefficient, const N: usize>(coeffs: &[C; N], k: u32) -> Poly<C, N> {
    let mut acc = FxHashMap::default();
    let mut powers: Vec<Vec<C>> = coeffs
        .iter()
        .map(|c| {
            let mut v = vec![C::one()];
            for _ in 0..k {
                let next = v.last().unwrap().mul_ref(c);
                v.push(next);
            }
            v
        })
        .collect();
    let mut exps = [0u32; N];
    multinomial_walk(coeffs, &mut powers, k, 0, BigInt::one(), &mut exps, &mut acc);
    Poly::from_hash(acc)
}

fn multinomial_walk<C: Coefficient, const N: usize>(
    coeffs: &[C; N],
    powers: &mut Vec<Vec<C>>,
    remaining: u32,
    slot: usize,
    multinom: BigInt,
    exps: &mut [u32; N],
    acc: &mut FxHashMap<Monomial<N>, C>,
) {
    if slot == N - 1 {
        exps[slot] = remaining;
        let mut c = C::from_integer(multinom);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                c = c.mul_ref(&powers[i][e as usize]);
            }
        }
        if !c.is_zero() {
            acc.insert(Monomial(*exps), c);
        }
        return;
    }
    if coeffs[slot].is_zero() {
        exps[slot] = 0;
        multinomial_walk(coeffs, powers, remaining, slot + 1, multinom, exps, acc);
        return;
    }
    // multinom tracks remaining_total! / (prefix exponents! * rest!)
    let mut m = multinom;
    for e in 0..=remaining {
        exps[slot] = e;
        multinomial_walk(coeffs, powers, remaining - e, slot + 1, m.clone(), exps, acc);
        m = m * (remaining - e) / (e + 1);
    }
}

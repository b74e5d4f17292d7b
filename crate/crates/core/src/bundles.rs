//! Cayley-plane bundles over products of complete intersections: the string
//! condition and the characteristic numbers `s_n[E]`, `s_{n1,n2}[E]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{binomial, decimal, to_integer};
use crate::gcdlaws::{two_three_squares, GcdLawError};
use crate::polyalg::{Monomial, Partition, Poly2};
use crate::pushforward::{closed_form_sn, PushforwardCache, PushforwardError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("dimension mismatch: total space has dimension {total}, the class has degree {class}")]
    DimensionMismatch { total: u64, class: u64 },
    #[error("4 n_f + {m} + 1 = {value} is below 14; raise n_f")]
    NfTooSmall { m: u32, value: u64 },
    #[error("complex dimension {0} must be even")]
    OddDimension(u32),
    #[error("combination mixes total dimensions {0} and {1}")]
    MixedDimensions(u64, u64),
    #[error("characteristic number is not an integer: {0}")]
    NotIntegral(String),
    #[error("range violation: {0}")]
    Range(String),
    #[error(transparent)]
    Pushforward(#[from] PushforwardError),
    #[error(transparent)]
    GcdLaw(#[from] GcdLawError),
}

pub type Result<T> = std::result::Result<T, BundleError>;

/// `V^m(d_1, ..., d_r) ⊂ CP^{m+r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CompleteIntersection {
    pub m: u32,
    pub degrees: Vec<u64>,
}

impl CompleteIntersection {
    pub fn new(m: u32, degrees: Vec<u64>) -> Self {
        CompleteIntersection { m, degrees }
    }

    pub fn projective_space(m: u32) -> Self {
        Self::new(m, Vec::new())
    }

    pub fn codimension(&self) -> u32 {
        self.degrees.len() as u32
    }

    pub fn degree_product(&self) -> BigInt {
        self.degrees.iter().map(|&d| BigInt::from(d)).product()
    }

    /// `m + r + 1 - Σ d_j^{2e}`, the coefficient of `x^{2e}` in the class
    /// `Σ (pontrjagin roots)^e`.
    fn power_sum_coefficient(&self, e: u32) -> BigInt {
        let base = BigInt::from(self.m + self.codimension() + 1);
        self.degrees.iter().fold(base, |acc, &d| acc - num_traits::pow(BigInt::from(d), 2 * e as usize))
    }
}

/// Coefficient of `x^{2n}` in `s_n(TV)`.
pub fn ci_sn_coefficient(v: &CompleteIntersection, n: u32) -> BigInt {
    v.power_sum_coefficient(n)
}

/// How the image of `p1(η)` along `f` is written in the string condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum P1Convention {
    /// `4 n_f (x1^2 + x2^2)`, as used throughout the construction.
    #[default]
    Linear,
    /// `4 n_f^2 (x1^2 + x2^2)`, the literal substitution `e -> n_f (x1, x1, x2, -x2)`.
    Quadratic,
}

impl P1Convention {
    pub fn fiber_term(self, n_f: u64) -> BigInt {
        match self {
            P1Convention::Linear => BigInt::from(4 * n_f),
            P1Convention::Quadratic => BigInt::from(4) * BigInt::from(n_f) * BigInt::from(n_f),
        }
    }
}

/// A `CaP^2` bundle over `V^m × V'^{m'}` classified through `f` with twist `n_f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CayleyBundleSpec {
    pub n_f: u64,
    pub v: CompleteIntersection,
    pub v_prime: CompleteIntersection,
}

impl CayleyBundleSpec {
    pub fn new(n_f: u64, v: CompleteIntersection, v_prime: CompleteIntersection) -> Self {
        CayleyBundleSpec { n_f, v, v_prime }
    }

    /// Real dimension `16 + 2(m + m')`.
    pub fn dimension(&self) -> u64 {
        16 + 2 * (self.v.m as u64 + self.v_prime.m as u64)
    }

    pub fn degree_product(&self) -> BigInt {
        self.v.degree_product() * self.v_prime.degree_product()
    }

    pub fn string_defect(&self) -> (BigInt, BigInt) {
        self.string_defect_with(P1Convention::default())
    }

    /// Coefficients of `x1^2` and `x2^2` in `p1(TE)`.
    pub fn string_defect_with(&self, convention: P1Convention) -> (BigInt, BigInt) {
        let fiber = convention.fiber_term(self.n_f);
        (&fiber + self.v.power_sum_coefficient(1), fiber + self.v_prime.power_sum_coefficient(1))
    }

    pub fn is_string(&self) -> bool {
        let (a, b) = self.string_defect();
        a.is_zero() && b.is_zero()
    }

    /// The same bundle with the two base factors exchanged.
    pub fn swapped(&self) -> Self {
        CayleyBundleSpec::new(self.n_f, self.v_prime.clone(), self.v.clone())
    }
}

pub fn string_defect(spec: &CayleyBundleSpec) -> (BigInt, BigInt) {
    spec.string_defect()
}

/// Degrees (a 2s then b 3s) making `4 n_f + m + 1 + r - Σ d^2` vanish.
pub fn string_degrees(m: u32, n_f: u64) -> Result<Vec<u64>> {
    if m % 2 == 1 {
        return Err(BundleError::OddDimension(m));
    }
    let value = 4 * n_f + m as u64 + 1;
    if value < 14 {
        return Err(BundleError::NfTooSmall { m, value });
    }
    let (a, b) = two_three_squares(value)?;
    let mut degrees = vec![2; a as usize];
    degrees.extend(std::iter::repeat(3).take(b as usize));
    Ok(degrees)
}

pub fn make_string_bundle(m: u32, m_prime: u32, n_f: u64) -> Result<CayleyBundleSpec> {
    let v = CompleteIntersection::new(m, string_degrees(m, n_f)?);
    let v_prime = CompleteIntersection::new(m_prime, string_degrees(m_prime, n_f)?);
    let spec = CayleyBundleSpec::new(n_f, v, v_prime);
    debug_assert!(spec.is_string());
    Ok(spec)
}

/// Smallest `n_f` for which both factors admit string degrees.
pub fn minimal_nf(m: u32, m_prime: u32) -> u64 {
    let low = m.min(m_prime) as u64;
    (1..).find(|n| 4 * n + low + 1 >= 14).expect("some n_f works")
}

/// `s_K(TW)` for a partition with at most one part; longer partitions have
/// degree beyond every base dimension that occurs here and are reported as zero
/// only when that is forced.
fn base_class(spec: &CayleyBundleSpec, k: &Partition) -> Result<Poly2> {
    match k.parts() {
        [] => Ok(Poly2::one()),
        [a] => {
            let mut p = Poly2::zero();
            p.add_term(Monomial([2 * a, 0]), &BigInt::into(ci_sn_coefficient(&spec.v, *a)));
            p.add_term(Monomial([0, 2 * a]), &BigInt::into(ci_sn_coefficient(&spec.v_prime, *a)));
            Ok(p)
        }
        _ => {
            let degree = 2 * k.weight() as u64;
            let dim = spec.v.m as u64 + spec.v_prime.m as u64;
            if degree > dim {
                Ok(Poly2::zero())
            } else {
                Err(BundleError::Range(format!("base class s_{k} is not supported in degree {degree}")))
            }
        }
    }
}

/// `⟨s_I(TE), [E]⟩`, computed as the coefficient of `x1^m x2^{m'}` in
/// `Σ_{JK = I} f^* Bi_* s_J(η) · s_K(TW)` times the degree products.
pub fn characteristic_number(cache: &PushforwardCache, spec: &CayleyBundleSpec, partition: &Partition) -> Result<BigInt> {
    let class = 4 * partition.weight() as u64;
    if class != spec.dimension() {
        return Err(BundleError::DimensionMismatch { total: spec.dimension(), class });
    }
    let target = [spec.v.m, spec.v_prime.m];
    let mut coefficient = num_rational::BigRational::zero();
    for (j, k) in partition.splits() {
        if j.is_empty() {
            // the fibre integral of a class pulled back from the base vanishes
            continue;
        }
        let fiber = cache.x_poly(&j, spec.n_f)?;
        let base = base_class(spec, &k)?;
        for (bm, bc) in base.terms() {
            if bm.0[0] > target[0] || bm.0[1] > target[1] {
                continue;
            }
            let rest = [target[0] - bm.0[0], target[1] - bm.0[1]];
            let fc = fiber.coeff_of(rest);
            if !fc.is_zero() {
                coefficient += fc * bc;
            }
        }
    }
    let integral = to_integer(&coefficient).ok_or_else(|| BundleError::NotIntegral(coefficient.to_string()))?;
    Ok(integral * spec.degree_product())
}

pub fn s_n_total_space(cache: &PushforwardCache, spec: &CayleyBundleSpec, n: u32) -> Result<BigInt> {
    characteristic_number(cache, spec, &Partition::single(n))
}

/// `s_n[E]` from the closed form instead of the engine.
pub fn s_n_closed_form(spec: &CayleyBundleSpec, n: u32) -> Result<BigInt> {
    let class = 4 * n as u64;
    if class != spec.dimension() {
        return Err(BundleError::DimensionMismatch { total: spec.dimension(), class });
    }
    let c = closed_form_sn(n, spec.n_f).coeff_of([spec.v.m, spec.v_prime.m]);
    let c = to_integer(&c).ok_or_else(|| BundleError::NotIntegral(c.to_string()))?;
    Ok(c * spec.degree_product())
}

pub fn s_n1n2_total_space(cache: &PushforwardCache, spec: &CayleyBundleSpec, n1: u32, n2: u32) -> Result<BigInt> {
    characteristic_number(cache, spec, &Partition::pair(n1, n2))
}

/// `s_n` of a degree `(1,1)` hypersurface in `CP^i × CP^{2n-i}`: `-C(2n+1, i)`.
pub fn milnor_sn(i: u64, n: u64) -> Result<BigInt> {
    if i <= 1 || i >= 2 * n {
        return Err(BundleError::Range(format!("need 1 < i < 2n, got i = {i}, n = {n}")));
    }
    Ok(-binomial(2 * n + 1, i as i64))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinationTerm {
    #[serde(serialize_with = "decimal::serialize")]
    pub coefficient: BigInt,
    pub spec: CayleyBundleSpec,
}

/// A formal integer combination of bundle total spaces of one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BordismCombination {
    pub terms: Vec<CombinationTerm>,
}

impl BordismCombination {
    pub fn new(terms: Vec<(BigInt, CayleyBundleSpec)>) -> Result<Self> {
        if let Some((_, first)) = terms.first() {
            let d = first.dimension();
            if let Some((_, other)) = terms.iter().find(|(_, s)| s.dimension() != d) {
                return Err(BundleError::MixedDimensions(d, other.dimension()));
            }
        }
        Ok(BordismCombination {
            terms: terms.into_iter().map(|(coefficient, spec)| CombinationTerm { coefficient, spec }).collect(),
        })
    }

    pub fn single(spec: CayleyBundleSpec) -> Self {
        BordismCombination { terms: vec![CombinationTerm { coefficient: BigInt::one(), spec }] }
    }

    pub fn dimension(&self) -> Option<u64> {
        self.terms.first().map(|t| t.spec.dimension())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        BordismCombination {
            terms: self
                .terms
                .iter()
                .map(|t| CombinationTerm { coefficient: &t.coefficient * c, spec: t.spec.clone() })
                .collect(),
        }
    }

    /// `Σ c_k s_I[E_k]`.
    pub fn characteristic_number(&self, cache: &PushforwardCache, partition: &Partition) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for t in &self.terms {
            if !t.coefficient.is_zero() {
                total += &t.coefficient * characteristic_number(cache, &t.spec, partition)?;
            }
        }
        Ok(total)
    }

    pub fn all_string(&self) -> bool {
        self.terms.iter().all(|t| t.spec.is_string())
    }
}

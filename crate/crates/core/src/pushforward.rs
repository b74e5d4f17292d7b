//! Borel–Hirzebruch pushforward along `BSpin(9) -> BF4`, the alternating
//! Weyl-sum oracle, restriction along `f`, and the closed forms for
//! `s_n` and `s_{n1,n2}`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::binomial;
use crate::f4roots::{
    coset_reps, euler_product, generate_weyl_f4, left_cosets, spin9_stabilizer, RootError, RootSystemData, Weight,
    WeylElement, WEYL_SPIN9_ORDER,
};
use crate::polyalg::{
    divide_by_linear_factors, linear_power, s_i_eval, s_i_from_power_sums, Monomial, Partition, Poly, Poly2, Poly4,
    PolyError, ZPoly,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PushforwardError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("invalid arguments: {0}")]
    InvalidArgument(String),
    #[error("series regularization left a stray term x^{exponent}")]
    SeriesNotPolynomial { exponent: i64 },
}

pub type Result<T> = std::result::Result<T, PushforwardError>;

/// A linear form in `u_i = e_i / 2`, where every `F4` root is integral.
type UForm = [i64; 4];

fn to_u_form(w: &Weight) -> UForm {
    w.doubled()
}

fn content(form: &UForm) -> i64 {
    form.iter().fold(0i64, |g, &c| g.gcd(&c))
}

/// `(sign * content, primitive form with positive leading coefficient)`.
fn split_form(form: &UForm) -> (i64, UForm) {
    let g = content(form);
    let mut prim = form.map(|c| c / g);
    let lead = *prim.iter().find(|&&c| c != 0).expect("roots are nonzero");
    let mut scalar = g;
    if lead < 0 {
        prim = prim.map(|c| -c);
        scalar = -scalar;
    }
    (scalar, prim)
}

fn form_poly(form: &UForm) -> ZPoly<4> {
    ZPoly::linear(&form.map(BigInt::from))
}

/// `s_I(l_1^2, ..., l_8^2)` for integral linear forms `l_k`.
fn s_i_of_squares(partition: &Partition, forms: &[UForm]) -> ZPoly<4> {
    let coeffs: Vec<[BigInt; 4]> = forms.iter().map(|f| f.map(BigInt::from)).collect();
    let power = |a: u32| {
        let parts: Vec<ZPoly<4>> = coeffs.par_iter().map(|c| linear_power(c, 2 * a)).collect();
        parts.into_iter().fold(ZPoly::zero(), |acc, p| acc.add(&p))
    };
    s_i_from_power_sums(partition, power).unwrap_or_else(|| {
        let squares: Vec<ZPoly<4>> = forms.iter().map(|f| form_poly(f).pow(2)).collect();
        s_i_eval(partition, &squares)
    })
}

/// Converts an integral polynomial in `u` to `e`, dividing by `scale`.
fn u_to_e(poly: &ZPoly<4>, scale: &BigInt) -> Poly4 {
    poly.map_coeffs(|m, c| {
        let den = scale << m.degree();
        BigRational::new(c.clone(), den)
    })
}

/// `Σ_c c(s_I(r^2) / ∏ r)` over the three coset representatives, as an exact
/// polynomial in `e1..e4`.
///
/// Works over the integers in `u = e/2` and clears denominators with the
/// least common multiple of the three transformed root products.
pub fn coset_pushforward(partition: &Partition) -> Result<Poly4> {
    if partition.is_empty() {
        return Err(PushforwardError::InvalidArgument("partition must be nonempty".into()));
    }
    let roots = RootSystemData::new().complementary_roots;
    let reps = coset_reps();
    struct Term {
        scalar: BigInt,
        factors: Vec<UForm>,
        forms: Vec<UForm>,
    }
    let terms: Vec<Term> = reps
        .iter()
        .map(|c| {
            let forms: Vec<UForm> = roots.iter().map(|r| to_u_form(&c.apply(r))).collect();
            let mut scalar = BigInt::one();
            let mut factors = Vec::new();
            for f in &forms {
                let (s, prim) = split_form(f);
                scalar *= s;
                factors.push(prim);
            }
            factors.sort();
            Term { scalar, factors, forms }
        })
        .collect();

    // least common multiple of the three factor multisets
    let mut lcm: Vec<UForm> = Vec::new();
    for t in &terms {
        let mut need: HashMap<UForm, usize> = HashMap::new();
        for f in &t.factors {
            *need.entry(*f).or_default() += 1;
        }
        for (f, k) in need {
            let have = lcm.iter().filter(|g| **g == f).count();
            lcm.extend(std::iter::repeat(f).take(k.saturating_sub(have)));
        }
    }
    lcm.sort();
    let k_scale = terms.iter().fold(BigInt::one(), |acc, t| acc.lcm(&t.scalar.abs()));

    let pieces: Vec<ZPoly<4>> = terms
        .par_iter()
        .map(|t| {
            let mut missing = lcm.clone();
            for f in &t.factors {
                let pos = missing.iter().position(|g| g == f).expect("lcm covers every factor");
                missing.remove(pos);
            }
            let cofactor = missing.iter().fold(ZPoly::one(), |acc, f| acc.mul(&form_poly(f)));
            let numerator = s_i_of_squares(partition, &t.forms);
            let weight = &k_scale / &t.scalar;
            numerator.mul(&cofactor).scale(&weight)
        })
        .collect();
    let total = pieces.into_iter().fold(ZPoly::zero(), |acc, p| acc.add(&p));
    let lcm_polys: Vec<ZPoly<4>> = lcm.iter().map(form_poly).collect();
    let quotient = divide_by_linear_factors(&total, &lcm_polys)?;
    Ok(u_to_e(&quotient, &k_scale))
}

/// The same sum, assembled over the full product of the three denominators
/// in rational arithmetic. Slow; kept as a cross-check for small `|I|`.
pub fn coset_pushforward_direct(partition: &Partition) -> Result<Poly4> {
    let roots = RootSystemData::new().complementary_roots;
    let base = s_i_eval(partition, &roots.iter().map(|r| r.to_poly().pow(2)).collect::<Vec<_>>());
    let den = euler_product(&roots);
    let mut num = Poly4::zero();
    let mut den_total = Poly4::one();
    for c in coset_reps() {
        let (n_c, d_c) = (c.act(&base), c.act(&den));
        num = num.mul(&d_c).add(&n_c.mul(&den_total));
        den_total = den_total.mul(&d_c);
    }
    Ok(crate::polyalg::exact_divide(&num, &den_total)?)
}

/// The Weyl-group data the oracle needs: left cosets of `W(Spin(9))`.
pub struct WeylSumData {
    pub representatives: Vec<WeylElement>,
    pub subgroup: Vec<WeylElement>,
    pub group_order: usize,
}

impl WeylSumData {
    pub fn new() -> Result<Self> {
        let group = generate_weyl_f4()?;
        let subgroup = spin9_stabilizer(&group);
        let representatives = left_cosets(&group, &subgroup).into_iter().map(|c| c[0].clone()).collect();
        Ok(WeylSumData { representatives, subgroup, group_order: group.len() })
    }
}

/// `Σ_{w ∈ W(F4)} sgn(w) w(t)`, grouped as `Σ_c sgn(c) c(Σ_h sgn(h) h(t))`
/// over left cosets `c W(Spin(9))`.
pub fn alternating_weyl_sum(data: &WeylSumData, t: &Poly4) -> Poly4 {
    let inner: Vec<Poly4> = data
        .subgroup
        .par_chunks(32)
        .map(|chunk| {
            chunk.iter().fold(Poly4::zero(), |acc, h| {
                let image = h.act(t);
                if h.sign == 1 {
                    acc.add(&image)
                } else {
                    acc.sub(&image)
                }
            })
        })
        .collect();
    let inner = inner.into_iter().fold(Poly4::zero(), |acc, p| acc.add(&p));
    data.representatives.iter().fold(Poly4::zero(), |acc, c| {
        let image = c.act(&inner);
        if c.sign == 1 {
            acc.add(&image)
        } else {
            acc.sub(&image)
        }
    })
}

/// Alternating sum taken one group element at a time. Only for small inputs.
pub fn alternating_weyl_sum_literal(group: &[WeylElement], t: &Poly4) -> Poly4 {
    group.iter().fold(Poly4::zero(), |acc, w| {
        let image = w.act(t);
        if w.sign == 1 {
            acc.add(&image)
        } else {
            acc.sub(&image)
        }
    })
}

/// `(1 / ẽ(F4/T)) Σ_w sgn(w) w(t)`.
pub fn full_weyl_oracle(t: &Poly4) -> Result<Poly4> {
    let data = WeylSumData::new()?;
    full_weyl_oracle_with(&data, t)
}

pub fn full_weyl_oracle_with(data: &WeylSumData, t: &Poly4) -> Result<Poly4> {
    let sum = alternating_weyl_sum(data, t);
    let positive: Vec<Poly4> = RootSystemData::new().f4_positive_roots().iter().map(Weight::to_poly).collect();
    Ok(divide_by_linear_factors(&sum, &positive)?)
}

/// The oracle applied to `ẽ(Spin(9)/T) s_I(r^2)` and divided by `|W(Spin(9))|`.
pub fn oracle_pushforward(data: &WeylSumData, partition: &Partition) -> Result<Poly4> {
    let roots = RootSystemData::new();
    let squares: Vec<Poly4> = roots.complementary_roots.iter().map(|r| r.to_poly().pow(2)).collect();
    let t = euler_product(&roots.spin9_positive_roots).mul(&s_i_eval(partition, &squares));
    let sum = full_weyl_oracle_with(data, &t)?;
    Ok(sum.scale(&BigRational::new(BigInt::one(), BigInt::from(WEYL_SPIN9_ORDER))))
}

/// Restriction along `f`: `e -> n_f (x1, x1, x2, -x2)`.
pub fn substitute_f(poly: &Poly4, n_f: u64) -> Poly2 {
    let n = BigRational::from_integer(BigInt::from(n_f));
    let x1 = Poly2::monomial(Monomial([1, 0]), n.clone());
    let x2 = Poly2::monomial(Monomial([0, 1]), n);
    poly.linear_substitute(&[x1.clone(), x1, x2.clone(), x2.neg()])
}

fn rat(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn nf_power(n_f: u64, exp: i64) -> BigRational {
    let base = rat(BigInt::from(n_f));
    if exp >= 0 {
        num_traits::pow(base, exp as usize)
    } else {
        num_traits::pow(base, (-exp) as usize).recip()
    }
}

/// `2 n_f^{2n-8} Σ_{k=2}^{n-2} [C(2n,2) - C(2n,2k)] x1^{2k-4} x2^{2n-2k-4}`.
pub fn closed_form_sn(n: u32, n_f: u64) -> Poly2 {
    let mut out = Poly2::zero();
    if n < 4 {
        return out;
    }
    let two_n = 2 * n as u64;
    let top = binomial(two_n, 2);
    let scale = nf_power(n_f, 2 * n as i64 - 8) * rat(BigInt::from(2));
    for k in 2..=n - 2 {
        let c = rat(&top - binomial(two_n, 2 * k as i64)) * &scale;
        out.add_term(Monomial([2 * k - 4, 2 * n - 2 * k - 4]), &c);
    }
    out
}

fn delta(p: bool) -> i64 {
    i64::from(p)
}

/// The bracketed summand of the `s_{n1,n2}` closed form at index `k`, read
/// literally, before the overall factor `-4 n_f^e`.
pub fn smn_bracket(n1: u32, n2: u32, k: u32) -> BigRational {
    let (a, b, k) = (n1 as i64, n2 as i64, k as i64);
    let c = |n: i64, r: i64| binomial(n as u64, r);
    let mut s = rat(c(2 * a, 2 * k) + c(2 * b, 2 * k) + c(2 * b, 2 * k - 2 * a) + c(2 * a, 2 * k - 2 * b));
    let mut alt = BigInt::zero();
    for l in 0..=k {
        let t = c(2 * b, l) * c(2 * a - 2 * b, 2 * k - 2 * l);
        if l % 2 == 0 {
            alt += t;
        } else {
            alt -= t;
        }
    }
    s += BigRational::new(alt, BigInt::from(2));
    let sum1: BigInt = (1..a).map(|l| c(2 * b, 2 * k - 2 * l)).sum();
    let sum2: BigInt = (1..b).map(|l| c(2 * a, 2 * k - 2 * l)).sum();
    s -= rat(c(2 * a, 2) * sum1 + c(2 * b, 2) * sum2);
    s -= rat(c(2 * b, 2) * (1 - delta(b <= k && k <= a)));
    s -= rat(c(2 * a, 2) * (1 + delta(b < k && k < a)));
    s += BigRational::new(c(2 * a + 2 * b, 2), BigInt::from(2));
    s -= rat(BigInt::from(3 * delta(k == a || k == b)));
    s
}

/// The `s_{n1,n2}` closed form. Terms whose `x2` exponent would be negative
/// are left out of the polynomial; see [`smn_out_of_range`].
///
/// The power of `n_f` is `2(n1+n2) - 8`, the degree of the polynomial.
pub fn closed_form_sn1n2(n1: u32, n2: u32, n_f: u64) -> Result<Poly2> {
    if n1 <= n2 || n2 == 0 {
        return Err(PushforwardError::InvalidArgument(format!("need n1 > n2 >= 1, got ({n1},{n2})")));
    }
    let total = n1 + n2;
    let scale = nf_power(n_f, 2 * total as i64 - 8) * rat(BigInt::from(-4));
    let mut out = Poly2::zero();
    for k in 2..total {
        if 2 * total < 2 * k + 4 {
            continue;
        }
        let c = smn_bracket(n1, n2, k) * &scale;
        out.add_term(Monomial([2 * k - 4, 2 * total - 2 * k - 4]), &c);
    }
    Ok(out)
}

/// Summation indices whose monomial would have a negative exponent, with
/// their (nonzero) bracket values.
pub fn smn_out_of_range(n1: u32, n2: u32) -> Vec<(u32, BigRational)> {
    let total = n1 + n2;
    (2..total)
        .filter(|&k| 2 * total < 2 * k + 4)
        .map(|k| (k, smn_bracket(n1, n2, k)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// One coefficient on which two polynomials disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub exponents: [u32; 2],
    pub summation_index: u32,
    pub engine: String,
    pub closed_form: String,
}

pub fn compare_x_polys(engine: &Poly2, closed: &Poly2) -> Vec<Discrepancy> {
    let mut keys: Vec<Monomial<2>> = engine.terms().chain(closed.terms()).map(|(m, _)| *m).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|m| {
            let (a, b) = (engine.coeff(&m), closed.coeff(&m));
            (a != b).then(|| Discrepancy {
                exponents: m.0,
                summation_index: (m.0[0] + 4) / 2,
                engine: a.to_string(),
                closed_form: b.to_string(),
            })
        })
        .collect()
}

/// The one-variable regularization of the `s_n` pushforward at `(x1, x2) = (x, 1)`:
/// `-(1/x^4)(1 + x^2 + x^4 + ...)` times the bracket, truncated at degree `2n`
/// and homogenized back to `x1, x2`.
pub fn series_oracle_sn(n: u32) -> Result<Poly2> {
    let two_n = 2 * n as usize;
    let limit = two_n + 4;
    let mut bracket = vec![BigInt::zero(); limit + 3];
    // (x+1)^{2n} + (x-1)^{2n} - 2
    let mut even = vec![BigInt::zero(); two_n + 1];
    for (d, slot) in even.iter_mut().enumerate() {
        let b = binomial(two_n as u64, d as i64);
        if d % 2 == 0 {
            *slot = b * 2;
        }
    }
    even[0] -= 2;
    let top = binomial(two_n as u64, 2);
    for (d, v) in even.iter().enumerate() {
        bracket[d] += v;
        bracket[d + 2] -= v;
    }
    bracket[2] -= &top * 2;
    bracket[two_n] += &top * 2 - 2;
    bracket[two_n + 2] += 2;
    // multiply by 1 + x^2 + x^4 + ..., truncated
    let mut series = vec![BigInt::zero(); limit + 1];
    for (d, slot) in series.iter_mut().enumerate() {
        let mut acc = BigInt::zero();
        let mut e = d as i64;
        while e >= 0 {
            acc += &bracket[e as usize];
            e -= 2;
        }
        *slot = -acc;
    }
    let degree = two_n as i64 - 8;
    let mut out = Poly2::zero();
    for (d, c) in series.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let exponent = d as i64 - 4;
        if exponent < 0 || exponent > degree {
            return Err(PushforwardError::SeriesNotPolynomial { exponent });
        }
        out.add_term(Monomial([exponent as u32, (degree - exponent) as u32]), &rat(c.clone()));
    }
    Ok(out)
}

/// Memoized pushforwards, shared across threads. Readers never block one
/// another; a miss computes outside the lock and the first insert wins.
#[derive(Default)]
pub struct PushforwardCache {
    e_polys: RwLock<HashMap<Partition, Arc<Poly4>>>,
    x_polys: RwLock<HashMap<(Partition, u64), Arc<Poly2>>>,
}

impl PushforwardCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static PushforwardCache {
        static CACHE: OnceLock<PushforwardCache> = OnceLock::new();
        CACHE.get_or_init(PushforwardCache::new)
    }

    pub fn e_poly(&self, partition: &Partition) -> Result<Arc<Poly4>> {
        if let Some(p) = self.e_polys.read().expect("cache lock poisoned").get(partition) {
            return Ok(Arc::clone(p));
        }
        let fresh = Arc::new(coset_pushforward(partition)?);
        let mut guard = self.e_polys.write().expect("cache lock poisoned");
        Ok(Arc::clone(guard.entry(partition.clone()).or_insert(fresh)))
    }

    /// `substitute_f(coset_pushforward(I), n_f)`.
    pub fn x_poly(&self, partition: &Partition, n_f: u64) -> Result<Arc<Poly2>> {
        let key = (partition.clone(), n_f);
        if let Some(p) = self.x_polys.read().expect("cache lock poisoned").get(&key) {
            return Ok(Arc::clone(p));
        }
        let fresh = Arc::new(substitute_f(&*self.e_poly(partition)?, n_f));
        let mut guard = self.x_polys.write().expect("cache lock poisoned");
        Ok(Arc::clone(guard.entry(key).or_insert(fresh)))
    }

    pub fn len(&self) -> usize {
        self.e_polys.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An engine output with its restriction along `f`.
#[derive(Debug, Clone, Serialize)]
pub struct PushforwardResult {
    pub partition: Partition,
    pub n_f: u64,
    pub e_poly: Poly4,
    pub x_poly: Poly2,
}

pub fn pushforward_result(partition: &Partition, n_f: u64) -> Result<PushforwardResult> {
    let cache = PushforwardCache::global();
    let e_poly = (*cache.e_poly(partition)?).clone();
    let x_poly = (*cache.x_poly(partition, n_f)?).clone();
    Ok(PushforwardResult { partition: partition.clone(), n_f, e_poly, x_poly })
}

/// True when every coefficient is an integer.
pub fn is_integral<const N: usize>(p: &Poly<BigRational, N>) -> bool {
    p.terms().all(|(_, c)| c.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        rat(BigInt::from(n))
    }

    #[test]
    fn s4_is_minus_84() {
        let p = coset_pushforward(&Partition::single(4)).unwrap();
        assert_eq!(substitute_f(&p, 1), Poly2::constant(q(-84)));
        assert_eq!(closed_form_sn(4, 1), Poly2::constant(q(-84)));
    }

    #[test]
    fn low_degrees_vanish() {
        for parts in [vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1], vec![1, 1, 1]] {
            let p = Partition::new(parts).unwrap();
            assert!(coset_pushforward(&p).unwrap().is_zero(), "{p}");
        }
    }

    #[test]
    fn integer_engine_matches_rational_assembly() {
        for p in [Partition::single(4), Partition::single(5), Partition::pair(3, 2)] {
            assert_eq!(coset_pushforward(&p).unwrap(), coset_pushforward_direct(&p).unwrap(), "{p}");
        }
    }

    #[test]
    fn closed_form_examples() {
        let five = closed_form_sn(5, 1);
        let expected = Poly2::from_terms([(Monomial([2, 0]), q(-330)), (Monomial([0, 2]), q(-330))]);
        assert_eq!(five, expected);
        assert!(closed_form_sn(3, 7).is_zero());
        assert_eq!(closed_form_sn(4, 5), Poly2::constant(q(-84)));
        assert_eq!(closed_form_sn(5, 2), expected.scale(&q(4)));
    }

    #[test]
    fn engine_matches_closed_form_sn() {
        for n in 4..=8 {
            let p = coset_pushforward(&Partition::single(n)).unwrap();
            assert_eq!(substitute_f(&p, 1), closed_form_sn(n, 1), "n = {n}");
        }
    }

    #[test]
    fn series_oracle_agrees() {
        for n in 4..=9 {
            assert_eq!(series_oracle_sn(n).unwrap(), closed_form_sn(n, 1), "n = {n}");
        }
    }

    #[test]
    fn substitution_examples() {
        let p1: Poly4 = (0..4).map(|i| Poly4::var(i).pow(2)).fold(Poly4::zero(), |a, b| a.add(&b)).scale(&q(2));
        let expected = Poly2::var(0).pow(2).add(&Poly2::var(1).pow(2)).scale(&q(4));
        assert_eq!(substitute_f(&p1, 1), expected);
        assert!(substitute_f(&Poly4::var(0).sub(&Poly4::var(1)), 3).is_zero());
    }

    #[test]
    fn engine_outputs_are_symmetric_and_homogeneous() {
        for p in [Partition::single(6), Partition::pair(4, 2)] {
            let e = coset_pushforward(&p).unwrap();
            let x = substitute_f(&e, 1);
            assert_eq!(x.swap_vars(0, 1), x);
            let deg = e.degree().unwrap();
            assert_eq!(substitute_f(&e, 3), x.scale(&nf_power(3, deg as i64)));
            assert!(is_integral(&x));
        }
    }

    #[test]
    fn weyl_invariance_on_generators() {
        let e = coset_pushforward(&Partition::single(5)).unwrap();
        for s in RootSystemData::new().simple_reflections() {
            assert_eq!(s.act(&e), e);
        }
    }

    #[test]
    fn oracle_on_special_inputs() {
        let data = WeylSumData::new().unwrap();
        let group = generate_weyl_f4().unwrap();
        assert!(alternating_weyl_sum_literal(&group, &Poly4::one()).is_zero());
        let euler = euler_product(&RootSystemData::new().f4_positive_roots());
        assert_eq!(full_weyl_oracle_with(&data, &euler).unwrap(), Poly4::constant(q(1152)));
        // grouping by cosets changes nothing
        let t = Poly4::linear(&[q(1), q(0), q(2), q(-1)]).pow(3).mul(&Poly4::var(3));
        assert_eq!(alternating_weyl_sum(&data, &t), alternating_weyl_sum_literal(&group, &t));
    }

    #[test]
    fn oracle_matches_engine_for_s4() {
        let data = WeylSumData::new().unwrap();
        let p = Partition::single(4);
        assert_eq!(oracle_pushforward(&data, &p).unwrap(), coset_pushforward(&p).unwrap());
    }

    #[test]
    fn smn_closed_form_small_case() {
        let engine = substitute_f(&coset_pushforward(&Partition::pair(3, 2)).unwrap(), 1);
        let closed = closed_form_sn1n2(3, 2, 1).unwrap();
        assert_eq!(compare_x_polys(&engine, &closed), vec![]);
        assert!(closed_form_sn1n2(2, 2, 1).is_err());
    }

    #[test]
    fn cache_shares_results() {
        let cache = PushforwardCache::new();
        let p = Partition::single(5);
        let a = cache.x_poly(&p, 2).unwrap();
        let b = cache.x_poly(&p, 2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
        assert_eq!(*a, closed_form_sn(5, 2));
    }
}

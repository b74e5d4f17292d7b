//! Exact integers and rationals, p-adic orders, and the classical binomial
//! congruence theorems (Kummer, Lucas, Granville, Wolstenholme, Morley).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Integer = BigInt;
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} is below the supported minimum {min}")]
    PrimeTooSmall { p: u64, min: u64 },
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, ArithError>;

/// The p-adic order of an integer. Zero has order `Infinity`, which compares
/// greater than every finite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PadicOrder {
    Finite(u64),
    Infinity,
}

impl PadicOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            PadicOrder::Finite(v) => Some(v),
            PadicOrder::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == PadicOrder::Infinity
    }
}

impl fmt::Display for PadicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicOrder::Finite(v) => write!(f, "{v}"),
            PadicOrder::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for PadicOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PadicOrder::Finite(v) => s.serialize_u64(*v),
            PadicOrder::Infinity => s.serialize_str("inf"),
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ArithError::NotPrime(p))
    }
}

/// `ord_p(x)` for an integer `x`.
pub fn ord_p(x: &BigInt, p: u64) -> Result<PadicOrder> {
    require_prime(p)?;
    if x.is_zero() {
        return Ok(PadicOrder::Infinity);
    }
    let prime = BigInt::from(p);
    let mut rest = x.abs();
    let mut order = 0;
    loop {
        let (q, r) = rest.div_rem(&prime);
        if !r.is_zero() {
            break;
        }
        rest = q;
        order += 1;
    }
    Ok(PadicOrder::Finite(order))
}

/// `ord_p(x)` for a rational `x`, as `ord(num) - ord(den)`; `None` for zero.
pub fn ord_p_rational(x: &BigRational, p: u64) -> Result<Option<i64>> {
    let num = ord_p(x.numer(), p)?;
    let den = ord_p(x.denom(), p)?;
    Ok(match (num, den) {
        (PadicOrder::Finite(a), PadicOrder::Finite(b)) => Some(a as i64 - b as i64),
        _ => None,
    })
}

/// Exact binomial coefficient. `k` outside `[0, n]` gives 0.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 at every step
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient allowing a negative top entry to be rejected as zero;
/// convenient for closed forms whose indices are computed with signed math.
pub fn binomial_signed(n: i64, k: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    binomial(n as u64, k)
}

/// Base-`p` digits of a non-negative integer, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitExpansion {
    pub base: u64,
    pub digits: Vec<u64>,
}

impl DigitExpansion {
    pub fn new(mut n: u64, base: u64) -> Self {
        assert!(base >= 2, "digit base must be at least 2");
        let mut digits = Vec::new();
        while n > 0 {
            digits.push(n % base);
            n /= base;
        }
        DigitExpansion { base, digits }
    }

    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.base + d)
    }
}

/// `carry[i]` is true when adding `m` and `r` in base `p` carries out of digit `i`.
pub fn carry_positions(m: u64, r: u64, p: u64) -> Vec<bool> {
    let a = DigitExpansion::new(m, p);
    let b = DigitExpansion::new(r, p);
    let len = a.digits.len().max(b.digits.len());
    let mut carry = 0;
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let s = a.digit(i) + b.digit(i) + carry;
        carry = u64::from(s >= p);
        out.push(carry == 1);
    }
    out
}

/// Number of carries when adding `m` and `r` in base `p`.
pub fn kummer_carries(m: u64, r: u64, p: u64) -> Result<u32> {
    require_prime(p)?;
    Ok(carry_positions(m, r, p).iter().filter(|&&c| c).count() as u32)
}

fn small_binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = mul_mod(num, (n - i) % p, p);
        den = mul_mod(den, (i + 1) % p, p);
    }
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

/// `C(n, k) mod p` as the product of digit-wise binomials.
pub fn lucas_residue(n: u64, k: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    if k > n {
        return Ok(0);
    }
    let nd = DigitExpansion::new(n, p);
    let kd = DigitExpansion::new(k, p);
    let mut acc = 1 % p;
    for i in 0..nd.digits.len() {
        let (a, b) = (nd.digit(i), kd.digit(i));
        if b > a {
            return Ok(0);
        }
        acc = mul_mod(acc, small_binomial_mod(a, b, p), p);
    }
    Ok(acc)
}

/// `(n!)_p mod modulus`: the product of the integers `<= n` not divisible by `p`.
pub fn generalized_factorial_p(n: u64, p: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    for k in 1..=n {
        if k % p != 0 {
            acc = mul_mod(acc, k % modulus, modulus);
        }
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Digit data for Granville's prime-power generalization of Lucas' theorem,
/// for `n = m + r`.
#[derive(Debug, Clone)]
pub struct GranvilleContext {
    pub p: u64,
    pub q: u32,
    pub modulus: u64,
    /// `N_j = floor(n / p^j) mod p^q`, for `j = 0..=d`.
    pub n_residues: Vec<u64>,
    pub m_residues: Vec<u64>,
    pub r_residues: Vec<u64>,
    /// `e_j`: the number of carries out of digits `>= j`.
    pub carries_from: Vec<u32>,
}

impl GranvilleContext {
    pub fn new(n: u64, m: u64, p: u64, q: u32) -> Result<Self> {
        require_prime(p)?;
        if q == 0 {
            return Err(ArithError::InvalidArgument("q must be positive".into()));
        }
        if m > n {
            return Err(ArithError::InvalidArgument(format!("m = {m} exceeds n = {n}")));
        }
        let modulus = p
            .checked_pow(q)
            .ok_or_else(|| ArithError::InvalidArgument(format!("{p}^{q} overflows")))?;
        let r = n - m;
        let digits = DigitExpansion::new(n, p).digits.len().max(1);
        let residues = |x: u64| -> Vec<u64> {
            let mut out = Vec::with_capacity(digits);
            let mut t = x;
            for _ in 0..digits {
                out.push(t % modulus);
                t /= p;
            }
            out
        };
        let carries = carry_positions(m, r, p);
        let mut carries_from = vec![0u32; digits + 1];
        for j in (0..digits).rev() {
            let here = u32::from(carries.get(j).copied().unwrap_or(false));
            carries_from[j] = carries_from[j + 1] + here;
        }
        Ok(GranvilleContext {
            p,
            q,
            modulus,
            n_residues: residues(n),
            m_residues: residues(m),
            r_residues: residues(r),
            carries_from,
        })
    }

    pub fn e(&self, j: usize) -> u32 {
        self.carries_from.get(j).copied().unwrap_or(0)
    }

    fn sign_is_negative(&self) -> bool {
        !(self.p == 2 && self.q >= 3)
    }
}

/// `C(n, m) = p^carries * unit` with `unit` known modulo `p^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GranvilleBinomial {
    pub carries: u32,
    pub unit: u64,
    pub modulus: u64,
}

pub fn granville_binomial(n: u64, m: u64, p: u64, q: u32) -> Result<GranvilleBinomial> {
    let ctx = GranvilleContext::new(n, m, p, q)?;
    let md = ctx.modulus;
    let mut num = 1 % md;
    let mut den = 1 % md;
    for j in 0..ctx.n_residues.len() {
        num = mul_mod(num, generalized_factorial_p(ctx.n_residues[j], p, md), md);
        den = mul_mod(den, generalized_factorial_p(ctx.m_residues[j], p, md), md);
        den = mul_mod(den, generalized_factorial_p(ctx.r_residues[j], p, md), md);
    }
    let inv = inverse_mod(den, md).ok_or_else(|| ArithError::NotInvertible {
        value: den.to_string(),
        modulus: md.to_string(),
    })?;
    let mut unit = mul_mod(num, inv, md);
    let sign_exponent = ctx.e(q as usize - 1);
    if ctx.sign_is_negative() && sign_exponent % 2 == 1 {
        unit = (md - unit) % md;
    }
    Ok(GranvilleBinomial { carries: ctx.e(0), unit, modulus: md })
}

fn require_prime_above_three(p: u64) -> Result<()> {
    require_prime(p)?;
    if p <= 3 {
        return Err(ArithError::PrimeTooSmall { p, min: 5 });
    }
    Ok(())
}

/// The harmonic number `H_n = 1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: u64) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, k| acc + BigRational::new(BigInt::one(), BigInt::from(k)))
}

/// Wolstenholme: the numerator of `H_{p-1}` is divisible by `p^2`.
pub fn wolstenholme_check(p: u64) -> Result<bool> {
    require_prime_above_three(p)?;
    let h = harmonic(p - 1);
    Ok(ord_p(h.numer(), p)? >= PadicOrder::Finite(2))
}

/// Morley: `(-1)^((p-1)/2) C(p-1, (p-1)/2) = 4^(p-1) mod p^e`.
pub fn morley_check(p: u64, modulus_exponent: u32) -> Result<bool> {
    require_prime_above_three(p)?;
    let modulus = BigInt::from(p).pow(modulus_exponent);
    let half = (p - 1) / 2;
    let mut lhs = binomial(p - 1, half as i64);
    if half % 2 == 1 {
        lhs = -lhs;
    }
    let rhs = BigInt::from(4u32).modpow(&BigInt::from(p - 1), &modulus);
    Ok(residue(&lhs, &modulus) == rhs)
}

/// `2^(2(p-1)) = 2^p - 1 mod p^2`, the last step of the Morley reductions.
pub fn power_of_two_check(p: u64) -> Result<bool> {
    require_prime(p)?;
    let m = BigInt::from(p) * BigInt::from(p);
    let lhs = BigInt::from(2u32).modpow(&BigInt::from(2 * (p - 1)), &m);
    let rhs = residue(&(BigInt::from(2u32).pow(p as u32) - 1), &m);
    Ok(lhs == rhs)
}

/// A binomial congruence `lhs = rhs (mod p^2)` with a closed-form right side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCongruence {
    pub name: &'static str,
    pub p: u64,
    pub i: u32,
    pub lhs: BigInt,
    pub rhs: BigRational,
}

impl NamedCongruence {
    pub fn holds(&self) -> Result<bool> {
        let m = BigInt::from(self.p) * BigInt::from(self.p);
        congruent(&BigRational::from_integer(self.lhs.clone()), &self.rhs, &m)
    }
}

/// The binomial congruences mod `p^2` used in the order and corollary arguments.
/// The last one needs `i >= 2`.
pub fn named_binomial_congruences(p: u64, i: u32) -> Result<Vec<NamedCongruence>> {
    require_prime_above_three(p)?;
    if i == 0 {
        return Err(ArithError::InvalidArgument("i must be positive".into()));
    }
    let pi = p.checked_pow(i).ok_or_else(|| ArithError::InvalidArgument(format!("{p}^{i} overflows")))?;
    let c = |n: u64, k: u64| binomial(n, k as i64);
    let r = |n: i64, d: i64| rational(n, d);
    let pr = |x: u64| BigRational::from_integer(BigInt::from(x));
    let one = BigRational::one();
    let mut out = vec![
        NamedCongruence { name: "C(p+1,2)-C(p+1,4) = 5p/12", p, i, lhs: c(p + 1, 2) - c(p + 1, 4), rhs: r(5, 12) * pr(p) },
        NamedCongruence { name: "C(2p,2)-C(2p,4) = -p/2", p, i, lhs: c(2 * p, 2) - c(2 * p, 4), rhs: r(-1, 2) * pr(p) },
        NamedCongruence {
            name: "C(p^2+p,2)-C(p^2+p,4) = -p/4",
            p,
            i,
            lhs: c(p * p + p, 2) - c(p * p + p, 4),
            rhs: r(-1, 4) * pr(p),
        },
        NamedCongruence { name: "C(p^i-1,2) = 1-(3/2)p^i", p, i, lhs: c(pi - 1, 2), rhs: &one - r(3, 2) * pr(pi) },
        NamedCongruence { name: "C(p-1,4) = 1-(25/12)p", p, i, lhs: c(p - 1, 4), rhs: &one - r(25, 12) * pr(p) },
    ];
    if i >= 2 {
        out.push(NamedCongruence {
            name: "C(p^i-1,p^(i-1)+p^(i-2)) = 1-p",
            p,
            i,
            lhs: c(pi - 1, pi / p + pi / (p * p)),
            rhs: &one - pr(p),
        });
    }
    Ok(out)
}

/// Least non-negative residue.
pub fn residue(x: &BigInt, modulus: &BigInt) -> BigInt {
    x.mod_floor(modulus)
}

/// Residue of a rational whose denominator is invertible modulo `modulus`.
pub fn rational_residue(x: &BigRational, modulus: &BigInt) -> Result<BigInt> {
    let den = residue(x.denom(), modulus);
    let e = den.extended_gcd(modulus);
    if !e.gcd.is_one() {
        return Err(ArithError::NotInvertible {
            value: x.denom().to_string(),
            modulus: modulus.to_string(),
        });
    }
    Ok(residue(&(x.numer() * e.x), modulus))
}

/// `a = b mod m` for rationals with denominators prime to `m`.
pub fn congruent(a: &BigRational, b: &BigRational, modulus: &BigInt) -> Result<bool> {
    Ok(rational_residue(a, modulus)? == rational_residue(b, modulus)?)
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Converts a rational known to be integral, or `None`.
pub fn to_integer(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn to_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}

/// Serde adapters writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn serialize_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn serialize_option<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }
}

//! Root data for `F4 ⊃ Spin(9)`: roots, the three coset representatives,
//! closure of the Weyl group under simple reflections, and Euler products.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;
use thiserror::Error;

use crate::polyalg::{product, Poly4};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("Weyl group closure exceeded {0} elements; root data is corrupt")]
    GroupTooLarge(usize),
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
}

/// Hard stop for [`generate_weyl_f4`].
pub const GENERATION_GUARD: usize = 10_000;

pub const WEYL_F4_ORDER: usize = 1152;
pub const WEYL_SPIN9_ORDER: usize = 384;

fn half(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A vector in `H^2(BT; Q)` written in the basis `e1..e4`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight(pub [BigRational; 4]);

impl Weight {
    pub fn from_halves(doubled: [i64; 4]) -> Self {
        Weight(doubled.map(half))
    }

    pub fn basis(i: usize) -> Self {
        let mut d = [0; 4];
        d[i] = 2;
        Self::from_halves(d)
    }

    /// Coordinates times two; every root of `F4` has integral doubled coordinates.
    pub fn doubled(&self) -> [i64; 4] {
        self.0.clone().map(|c| {
            let d = c * int(2);
            assert!(d.is_integer(), "weight is not in the half-integer lattice");
            d.to_integer().to_i64().expect("coordinate fits in i64")
        })
    }

    pub fn neg(&self) -> Self {
        Weight(self.0.clone().map(|c| -c))
    }

    pub fn dot(&self, other: &Self) -> BigRational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_poly(&self) -> Poly4 {
        Poly4::linear(&self.0)
    }

    /// The representative of `{w, -w}` whose first nonzero coordinate is positive.
    pub fn up_to_sign(&self) -> Self {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

type Matrix = [[BigRational; 4]; 4];

fn identity() -> Matrix {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { int(1) } else { int(0) }))
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| &a[i][k] * &b[k][j]).sum()))
}

fn transpose(a: &Matrix) -> Matrix {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

fn determinant(a: &Matrix) -> BigRational {
    let mut m = a.clone();
    let mut det = int(1);
    for k in 0..4 {
        let Some(p) = (k..4).find(|&r| !m[r][k].is_zero()) else {
            return int(0);
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        for r in k + 1..4 {
            let factor = &m[r][k] / &m[k][k];
            for c in k..4 {
                let t = &factor * &m[k][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// An orthogonal transformation of `H^2(BT; Q)`. A weight `v` maps to `M v`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Matrix,
    pub sign: i32,
}

impl WeylElement {
    pub fn new(matrix: Matrix) -> Result<Self, RootError> {
        let gram = mat_mul(&transpose(&matrix), &matrix);
        if gram != identity() {
            return Err(RootError::NotOrthogonal);
        }
        let sign = if determinant(&matrix).is_positive() { 1 } else { -1 };
        Ok(WeylElement { matrix, sign })
    }

    pub fn identity() -> Self {
        WeylElement { matrix: identity(), sign: 1 }
    }

    /// Reflection in the hyperplane orthogonal to `root`.
    pub fn reflection(root: &Weight) -> Self {
        let norm = root.dot(root);
        let matrix = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let delta = if i == j { int(1) } else { int(0) };
                delta - int(2) * &root.0[i] * &root.0[j] / &norm
            })
        });
        WeylElement { matrix, sign: -1 }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        WeylElement { matrix: mat_mul(&self.matrix, &other.matrix), sign: self.sign * other.sign }
    }

    pub fn inverse(&self) -> Self {
        WeylElement { matrix: transpose(&self.matrix), sign: self.sign }
    }

    pub fn apply(&self, v: &Weight) -> Weight {
        Weight(std::array::from_fn(|i| (0..4).map(|j| &self.matrix[i][j] * &v.0[j]).sum()))
    }

    /// Doubled integer entries; a compact hashable key.
    pub fn key(&self) -> [[i8; 4]; 4] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let d = &self.matrix[i][j] * int(2);
                d.to_integer().to_i8().expect("Weyl matrices have half-integer entries")
            })
        })
    }

    /// True when the matrix permutes coordinates up to sign.
    pub fn is_signed_permutation(&self) -> bool {
        self.matrix.iter().all(|row| {
            let nonzero: Vec<_> = row.iter().filter(|c| !c.is_zero()).collect();
            nonzero.len() == 1 && nonzero[0].abs().is_one()
        })
    }

    /// For a signed permutation: `e_j -> sign * e_{target}` as `(target, negate)` per column.
    pub fn as_signed_permutation(&self) -> Option<[(usize, bool); 4]> {
        if !self.is_signed_permutation() {
            return None;
        }
        Some(std::array::from_fn(|j| {
            let i = (0..4).find(|&i| !self.matrix[i][j].is_zero()).unwrap();
            (i, self.matrix[i][j].is_negative())
        }))
    }

    /// The ring automorphism of `Q[e1..e4]` induced by `e_j -> w(e_j)`.
    pub fn act(&self, poly: &Poly4) -> Poly4 {
        if let Some(perm) = self.as_signed_permutation() {
            return poly.map_monomials(|m| {
                let mut e = [0u32; 4];
                let mut odd = false;
                for (j, &(target, negate)) in perm.iter().enumerate() {
                    e[target] = m.0[j];
                    odd ^= negate && m.0[j] % 2 == 1;
                }
                (crate::polyalg::Monomial(e), odd)
            });
        }
        poly.substitute_matrix(&transpose(&self.matrix))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(sign {}, 2M = {:?})", self.sign, self.key())
    }
}

/// Roots of `Spin(9)` and the complementary roots of `F4`.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    /// `e_i` and `e_i ± e_j` for `i < j`.
    pub spin9_positive_roots: Vec<Weight>,
    /// `½(e1 ± e2 ± e3 ± e4)`.
    pub complementary_roots: Vec<Weight>,
    /// `a1 = e2 - e3`, `a2 = e3 - e4`, `a3 = e4`, `a4 = ½(e1 - e2 - e3 - e4)`.
    pub simple_roots: [Weight; 4],
}

impl Default for RootSystemData {
    fn default() -> Self {
        Self::new()
    }
}

impl RootSystemData {
    pub fn new() -> Self {
        let mut spin9 = Vec::with_capacity(16);
        for i in 0..4 {
            spin9.push(Weight::basis(i));
        }
        for i in 0..4 {
            for j in i + 1..4 {
                for s in [2, -2] {
                    let mut d = [0; 4];
                    d[i] = 2;
                    d[j] = s;
                    spin9.push(Weight::from_halves(d));
                }
            }
        }
        let complementary = (0..8)
            .map(|bits: i64| {
                let sign = |b: i64| if bits >> b & 1 == 1 { -1 } else { 1 };
                Weight::from_halves([1, sign(2), sign(1), sign(0)])
            })
            .collect();
        let simple_roots = [
            Weight::from_halves([0, 2, -2, 0]),
            Weight::from_halves([0, 0, 2, -2]),
            Weight::from_halves([0, 0, 0, 2]),
            Weight::from_halves([1, -1, -1, -1]),
        ];
        RootSystemData { spin9_positive_roots: spin9, complementary_roots: complementary, simple_roots }
    }

    /// Positive roots of `F4`: the Spin(9) ones followed by the complementary ones.
    pub fn f4_positive_roots(&self) -> Vec<Weight> {
        self.spin9_positive_roots.iter().chain(&self.complementary_roots).cloned().collect()
    }

    /// All 48 roots.
    pub fn all_roots(&self) -> Vec<Weight> {
        self.f4_positive_roots().into_iter().flat_map(|r| [r.neg(), r]).collect()
    }

    pub fn spin9_roots(&self) -> Vec<Weight> {
        self.spin9_positive_roots.iter().flat_map(|r| [r.neg(), r.clone()]).collect()
    }

    pub fn simple_reflections(&self) -> [WeylElement; 4] {
        std::array::from_fn(|i| WeylElement::reflection(&self.simple_roots[i]))
    }
}

/// `1`, `σ4` and `σ4σ3σ4`, entered as printed.
pub fn coset_reps() -> [WeylElement; 3] {
    let s4 = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
    let s434 = [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]];
    let build = |rows: [[i64; 4]; 4]| {
        WeylElement::new(rows.map(|r| r.map(half))).expect("coset representatives are orthogonal")
    };
    [WeylElement::identity(), build(s4), build(s434)]
}

/// Breadth-first closure of the simple reflections.
pub fn generate_weyl_f4() -> Result<Vec<WeylElement>, RootError> {
    generate_from(&RootSystemData::new().simple_reflections(), GENERATION_GUARD)
}

pub fn generate_from(generators: &[WeylElement], guard: usize) -> Result<Vec<WeylElement>, RootError> {
    let mut seen: FxHashSet<[[i8; 4]; 4]> = FxHashSet::default();
    let mut out = vec![WeylElement::identity()];
    seen.insert(out[0].key());
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for g in generators {
            let next = g.compose(&out[idx]);
            if seen.insert(next.key()) {
                if out.len() >= guard {
                    return Err(RootError::GroupTooLarge(guard));
                }
                out.push(next);
                queue.push_back(out.len() - 1);
            }
        }
    }
    out.sort_by_key(|w| w.key());
    Ok(out)
}

/// Elements mapping the Spin(9) root set to itself.
pub fn spin9_stabilizer(group: &[WeylElement]) -> Vec<WeylElement> {
    let roots = RootSystemData::new().spin9_roots();
    let set: FxHashSet<[i64; 4]> = roots.iter().map(Weight::doubled).collect();
    group
        .iter()
        .filter(|w| roots.iter().all(|r| set.contains(&w.apply(r).doubled())))
        .cloned()
        .collect()
}

/// Left cosets `w H`, each listed by its smallest-key member.
pub fn left_cosets(group: &[WeylElement], subgroup: &[WeylElement]) -> Vec<Vec<WeylElement>> {
    let mut assigned: FxHashMap<[[i8; 4]; 4], usize> = FxHashMap::default();
    let mut cosets: Vec<Vec<WeylElement>> = Vec::new();
    for w in group {
        if assigned.contains_key(&w.key()) {
            continue;
        }
        let coset: Vec<WeylElement> = subgroup.iter().map(|h| w.compose(h)).collect();
        for c in &coset {
            assigned.insert(c.key(), cosets.len());
        }
        cosets.push(coset);
    }
    cosets
}

/// `∏ r` over the given roots, as a polynomial in `e1..e4`.
pub fn euler_product(roots: &[Weight]) -> Poly4 {
    product(&roots.iter().map(Weight::to_poly).collect::<Vec<_>>())
}

pub fn weyl_sign(w: &WeylElement) -> i32 {
    w.sign
}

/// Sign-insensitive multiset of weights, for comparing root images.
pub fn canonical_multiset(weights: &[Weight]) -> Vec<[i64; 4]> {
    let mut v: Vec<[i64; 4]> = weights.iter().map(|w| w.up_to_sign().doubled()).collect();
    v.sort();
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub stabilizer_order: usize,
    pub cosets: usize,
}

pub fn group_summary() -> Result<GroupSummary, RootError> {
    let group = generate_weyl_f4()?;
    let stab = spin9_stabilizer(&group);
    let cosets = group.len() / stab.len().max(1);
    Ok(GroupSummary { order: group.len(), stabilizer_order: stab.len(), cosets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::Monomial;

    fn w(d: [i64; 4]) -> Weight {
        Weight::from_halves(d)
    }

    #[test]
    fn root_counts() {
        let data = RootSystemData::new();
        assert_eq!(data.spin9_positive_roots.len(), 16);
        assert_eq!(data.complementary_roots.len(), 8);
        let all = data.all_roots();
        assert_eq!(all.len(), 48);
        let distinct: FxHashSet<_> = all.iter().map(Weight::doubled).collect();
        assert_eq!(distinct.len(), 48);
        assert_eq!(data.simple_roots[3], w([1, -1, -1, -1]));
    }

    #[test]
    fn representatives_match_reflection_products() {
        let [s1, s2, s3, s4] = RootSystemData::new().simple_reflections();
        let _ = (s1, s2);
        let reps = coset_reps();
        assert_eq!(reps[0], WeylElement::identity());
        assert_eq!(reps[1], s4);
        assert_eq!(reps[2], s4.compose(&s3).compose(&s4));
    }

    #[test]
    fn representative_images_of_complementary_roots() {
        let data = RootSystemData::new();
        let reps = coset_reps();
        let image = |c: &WeylElement| -> Vec<Weight> { data.complementary_roots.iter().map(|r| c.apply(r)).collect() };
        let e = |i| Weight::basis(i);
        let sigma4 = vec![
            e(0),
            e(1),
            e(2),
            e(3),
            w([1, 1, 1, -1]),
            w([1, 1, -1, 1]),
            w([1, -1, 1, 1]),
            w([-1, 1, 1, 1]),
        ];
        let sigma434 = vec![
            e(0),
            e(1),
            e(2),
            e(3),
            w([1, 1, 1, 1]),
            w([1, 1, -1, -1]),
            w([1, -1, 1, -1]),
            w([-1, 1, 1, -1]),
        ];
        assert_eq!(canonical_multiset(&image(&reps[1])), canonical_multiset(&sigma4));
        assert_eq!(canonical_multiset(&image(&reps[2])), canonical_multiset(&sigma434));
    }

    #[test]
    fn signs() {
        let reps = coset_reps();
        assert_eq!(weyl_sign(&reps[0]), 1);
        assert_eq!(weyl_sign(&reps[1]), -1);
        assert_eq!(weyl_sign(&reps[2]), -1);
        assert_eq!(determinant(&reps[2].matrix), int(-1));
    }

    #[test]
    fn group_closure() {
        let group = generate_weyl_f4().unwrap();
        assert_eq!(group.len(), WEYL_F4_ORDER);
        assert!(group.contains(&WeylElement::identity()));
        let roots = RootSystemData::new().all_roots();
        let set: FxHashSet<_> = roots.iter().map(Weight::doubled).collect();
        for g in &group {
            assert!(roots.iter().all(|r| set.contains(&g.apply(r).doubled())));
        }
        let stab = spin9_stabilizer(&group);
        assert_eq!(stab.len(), WEYL_SPIN9_ORDER);
        assert!(stab.iter().all(WeylElement::is_signed_permutation));
        let positive = stab.iter().filter(|h| h.sign == 1).count();
        assert_eq!(positive, WEYL_SPIN9_ORDER / 2);
    }

    #[test]
    fn guard_trips() {
        let gens = RootSystemData::new().simple_reflections();
        assert_eq!(generate_from(&gens, 100), Err(RootError::GroupTooLarge(100)));
    }

    #[test]
    fn representatives_split_the_group() {
        let group = generate_weyl_f4().unwrap();
        let stab = spin9_stabilizer(&group);
        let mut seen = FxHashSet::default();
        for c in coset_reps() {
            for h in &stab {
                assert!(seen.insert(c.compose(h).key()), "cosets overlap");
            }
        }
        let all: FxHashSet<_> = group.iter().map(WeylElement::key).collect();
        assert_eq!(seen, all);
        assert_eq!(left_cosets(&group, &stab).len(), 3);
    }

    #[test]
    fn euler_products() {
        assert_eq!(euler_product(&[]), Poly4::one());
        let e1e2 = euler_product(&[Weight::basis(0), Weight::basis(1)]);
        assert_eq!(e1e2, Poly4::monomial(Monomial([1, 1, 0, 0]), int(1)));
        let comp = euler_product(&RootSystemData::new().complementary_roots);
        assert_eq!(comp.degree(), Some(8));
        assert_eq!(comp.coeff_of([8, 0, 0, 0]), BigRational::new(1.into(), 256.into()));
    }

    #[test]
    fn euler_class_is_sign_equivariant() {
        let data = RootSystemData::new();
        let e = euler_product(&data.f4_positive_roots());
        let group = generate_weyl_f4().unwrap();
        // a spread of elements: generators, representatives and every 37th element
        let mut sample: Vec<WeylElement> = data.simple_reflections().into();
        sample.extend(coset_reps());
        sample.extend(group.iter().step_by(37).cloned());
        for g in &sample {
            let image = g.act(&e);
            let expected = if g.sign == 1 { e.clone() } else { e.neg() };
            assert_eq!(image, expected, "{g:?}");
        }
    }

    #[test]
    fn action_is_a_homomorphism() {
        let [_, _, s3, s4] = RootSystemData::new().simple_reflections();
        let p = Poly4::linear(&[int(1), int(2), int(0), int(-3)]).pow(3).add(&Poly4::var(1));
        let lhs = s4.compose(&s3).act(&p);
        let rhs = s4.act(&s3.act(&p));
        assert_eq!(lhs, rhs);
        // the action on linear forms agrees with the action on weights
        let r = w([1, -1, 1, 1]);
        assert_eq!(s4.act(&r.to_poly()), s4.apply(&r).to_poly());
    }
}

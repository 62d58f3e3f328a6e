//! Permutations, descents, the rational group algebra of S_k, the Eulerian
//! idempotents e_k^(j), and their matrix action on chain-group bases.
//!
//! The idempotents come out of the descent generating identity
//!   Σ_j t^j e_k^(j) = Σ_π C(k + t − des(π) − 1, k) · sgn(π) · π,
//! where C(k + t − d − 1, k) expands to ∏_{i=0}^{k−1} (t + i − d) / k!.
//! The coefficient of a permutation therefore depends only on its descent
//! count and sign, the t^0 coefficient vanishes identically (each product
//! carries the factor t), and the e_k^(j) are mutually orthogonal
//! idempotents summing to the unit — all of which is asserted by tests.

use crate::complex::OrderedSetPartition;
use crate::error::{Error, Result};
use crate::exactla::{Rat, RationalMatrix};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    one_line: Vec<u8>, // one_line[i] = π(i+1)
}

impl Permutation {
    pub fn new(one_line: Vec<u8>) -> Result<Self> {
        let k = one_line.len();
        let mut seen = vec![false; k];
        for &v in &one_line {
            if v < 1 || v as usize > k || seen[v as usize - 1] {
                return Err(Error::input(format!(
                    "{one_line:?} is not a permutation of 1..{k}"
                )));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            one_line: (1..=k as u8).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.one_line
    }

    /// π(i), 1-based.
    pub fn apply(&self, i: u8) -> u8 {
        self.one_line[i as usize - 1]
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            one_line: other.one_line.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.one_line.len()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation { one_line: inv }
    }

    /// Number of positions i with π(i) > π(i+1).
    pub fn descent_count(&self) -> usize {
        self.one_line.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// +1 or −1 by inversion parity.
    pub fn sign(&self) -> i64 {
        let mut inversions = 0usize;
        for i in 0..self.one_line.len() {
            for j in i + 1..self.one_line.len() {
                if self.one_line[i] > self.one_line[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// All of S_k in lexicographic one-line order.
pub fn symmetric_group(k: usize) -> Vec<Permutation> {
    (1..=k as u8)
        .permutations(k)
        .map(|one_line| Permutation { one_line })
        .collect()
}

/// Element of the rational group algebra of S_k; absent permutations have
/// coefficient zero and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    k: usize,
    coeffs: BTreeMap<Permutation, Rat>,
}

impl GroupAlgebraElement {
    pub fn zero(k: usize) -> Self {
        GroupAlgebraElement {
            k,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(k: usize) -> Self {
        let mut e = Self::zero(k);
        e.add_term(Permutation::identity(k), Rat::one());
        e
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coefficient(&self, p: &Permutation) -> Rat {
        self.coeffs.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, p: Permutation, c: Rat) {
        debug_assert_eq!(p.degree(), self.k);
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(p);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::input("degree mismatch in group algebra sum"));
        }
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rat)> {
        self.coeffs.iter()
    }

    /// Group algebra product: (a·b)(σ) = Σ_τ a(στ⁻¹)·b(τ), accumulated as
    /// result(α∘β) += a(α)·b(β) over all pairs.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::input("degree mismatch in group algebra product"));
        }
        let mut out = Self::zero(self.k);
        for (alpha, a) in &self.coeffs {
            for (beta, b) in &other.coeffs {
                out.add_term(alpha.compose(beta), a * b);
            }
        }
        Ok(out)
    }
}

/// Descent polynomial ∏_{i=0}^{k−1}(t + i − d), ascending integer
/// coefficients of t^0..t^k.
fn descent_polynomial(k: usize, d: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for i in 0..k {
        let shift = BigInt::from(i as i64 - d as i64);
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (p, c) in poly.iter().enumerate() {
            next[p + 1] += c; // times t
            next[p] += c * &shift; // times (i − d)
        }
        poly = next;
    }
    poly
}

/// The Eulerian idempotents e_k^(1), ..., e_k^(k), cached per k. The guard
/// bounds the k! group algebra cost; pass a larger bound to override.
pub fn eulerian_idempotents(k: usize, max_k: usize) -> Result<Arc<Vec<GroupAlgebraElement>>> {
    if k < 1 {
        return Err(Error::input("idempotent degree must be at least 1"));
    }
    if k > max_k {
        return Err(Error::budget(format!(
            "idempotents of degree {k} exceed the k ≤ {max_k} guard"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<GroupAlgebraElement>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&k) {
        return Ok(hit.clone());
    }

    let factorial: BigInt = (1..=k as u64).map(BigInt::from).product();
    let mut class_coeffs: Vec<Vec<Rat>> = Vec::with_capacity(k);
    for d in 0..k {
        let poly = descent_polynomial(k, d);
        if !poly[0].is_zero() {
            return Err(Error::invariant(format!(
                "descent polynomial for d={d} has a nonzero constant term"
            )));
        }
        class_coeffs.push(
            poly.into_iter()
                .map(|c| Rat::new(c, factorial.clone()))
                .collect(),
        );
    }

    let mut idempotents = vec![GroupAlgebraElement::zero(k); k];
    for p in symmetric_group(k) {
        let d = p.descent_count();
        let sign = p.sign();
        for j in 1..=k {
            let mut c = class_coeffs[d][j].clone();
            if sign < 0 {
                c = -c;
            }
            idempotents[j - 1].add_term(p.clone(), c);
        }
    }

    let arc = Arc::new(idempotents);
    cache
        .lock()
        .unwrap()
        .entry(k)
        .or_insert_with(|| arc.clone());
    Ok(arc)
}

/// The signless sign-stripped class value: coefficient of t^j in
/// ∏(t + i − d)/k!, i.e. the coefficient every π with des(π) = d
/// contributes to e_k^(j) up to its sign. Used for reporting.
pub fn descent_class_value(k: usize, d: usize, j: usize) -> Rat {
    let factorial: BigInt = (1..=k as u64).map(BigInt::from).product();
    let poly = descent_polynomial(k, d);
    Rat::new(poly[j].clone(), factorial)
}

/// The position-permuting action: block i of the face moves to position
/// π(i), so position p of the result holds block π⁻¹(p).
pub fn act(p: &Permutation, face: &OrderedSetPartition) -> OrderedSetPartition {
    debug_assert_eq!(p.degree(), face.block_count());
    let mut blocks = vec![Vec::new(); face.block_count()];
    for (i, b) in face.blocks().iter().enumerate() {
        blocks[p.apply(i as u8 + 1) as usize - 1] = b.clone();
    }
    OrderedSetPartition::from_blocks_unchecked(blocks)
}

/// Matrix of the linear extension of the action of a group algebra
/// element on a basis of degree-(k−2) faces. The basis must be closed
/// under the action (face membership ignores block order, so chain-group
/// bases always are).
pub fn action_matrix(
    x: &GroupAlgebraElement,
    basis: &[OrderedSetPartition],
) -> Result<RationalMatrix> {
    if basis.is_empty() {
        return Ok(RationalMatrix::zeros(0, 0));
    }
    for f in basis {
        if f.block_count() != x.degree() {
            return Err(Error::input(format!(
                "basis face {f} has {} blocks but the algebra element acts on {}",
                f.block_count(),
                x.degree()
            )));
        }
    }
    let index: HashMap<&OrderedSetPartition, usize> =
        basis.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut out = RationalMatrix::zeros(basis.len(), basis.len());
    for (col, face) in basis.iter().enumerate() {
        for (p, c) in x.terms() {
            let target = act(p, face);
            let row = *index.get(&target).ok_or_else(|| {
                Error::invariant(format!(
                    "basis is not closed under the action: {target} missing"
                ))
            })?;
            *out.get_mut(row, col) += c;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, rat_frac};

    fn perm(v: &[u8]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn descent_and_sign_basics() {
        assert_eq!(Permutation::identity(4).descent_count(), 0);
        assert_eq!(perm(&[4, 3, 2, 1]).descent_count(), 3);
        assert_eq!(perm(&[2, 1, 3]).descent_count(), 1);
        assert_eq!(perm(&[2, 1, 3]).sign(), -1);
        assert_eq!(Permutation::identity(3).sign(), 1);
        assert!(Permutation::new(vec![1, 1, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let a = perm(&[2, 3, 1]);
        let b = perm(&[1, 3, 2]);
        // (a∘b)(2) = a(3) = 1.
        assert_eq!(a.compose(&b), perm(&[2, 1, 3]));
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(3));
        assert_eq!(a.inverse().compose(&a), Permutation::identity(3));
    }

    #[test]
    fn degree_one_and_two_idempotents() {
        let e1 = eulerian_idempotents(1, 8).unwrap();
        assert_eq!(e1.len(), 1);
        assert_eq!(e1[0], GroupAlgebraElement::unit(1));

        let e2 = eulerian_idempotents(2, 8).unwrap();
        let id = Permutation::identity(2);
        let swap = perm(&[2, 1]);
        assert_eq!(e2[0].coefficient(&id), rat_frac(1, 2));
        assert_eq!(e2[0].coefficient(&swap), rat_frac(1, 2));
        assert_eq!(e2[1].coefficient(&id), rat_frac(1, 2));
        assert_eq!(e2[1].coefficient(&swap), rat_frac(-1, 2));
    }

    #[test]
    fn idempotents_sum_to_unit() {
        for k in 1..=5 {
            let es = eulerian_idempotents(k, 8).unwrap();
            let mut sum = GroupAlgebraElement::zero(k);
            for e in es.iter() {
                sum = sum.add(e).unwrap();
            }
            assert_eq!(sum, GroupAlgebraElement::unit(k), "sum fails at k={k}");
        }
    }

    #[test]
    fn orthogonal_idempotents_small() {
        for k in 1..=4 {
            let es = eulerian_idempotents(k, 8).unwrap();
            for i in 0..k {
                for j in 0..k {
                    let prod = es[i].convolve(&es[j]).unwrap();
                    if i == j {
                        assert_eq!(prod, es[i], "e·e ≠ e at k={k}, j={j}");
                    } else {
                        assert!(prod.is_zero(), "nonzero cross product at k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_coefficients_are_stirling_ratios() {
        // k!·coeff of the identity in e_k^(j) is the unsigned Stirling
        // number of the first kind c(k, j).
        let id3 = Permutation::identity(3);
        let e3 = eulerian_idempotents(3, 8).unwrap();
        assert_eq!(e3[0].coefficient(&id3), rat_frac(2, 6));
        assert_eq!(e3[1].coefficient(&id3), rat_frac(3, 6));
        assert_eq!(e3[2].coefficient(&id3), rat_frac(1, 6));

        let id4 = Permutation::identity(4);
        let e4 = eulerian_idempotents(4, 8).unwrap();
        assert_eq!(e4[0].coefficient(&id4), rat_frac(6, 24));
        assert_eq!(e4[1].coefficient(&id4), rat_frac(11, 24));
        assert_eq!(e4[2].coefficient(&id4), rat_frac(6, 24));
        assert_eq!(e4[3].coefficient(&id4), rat_frac(1, 24));
    }

    #[test]
    fn guard_and_degree_validation() {
        assert!(matches!(
            eulerian_idempotents(9, 8),
            Err(Error::Budget(_))
        ));
        assert!(eulerian_idempotents(0, 8).is_err());
        let a = GroupAlgebraElement::unit(2);
        let b = GroupAlgebraElement::unit(3);
        assert!(a.convolve(&b).is_err());
    }

    #[test]
    fn convolve_with_unit() {
        let es = eulerian_idempotents(3, 8).unwrap();
        let unit = GroupAlgebraElement::unit(3);
        for e in es.iter() {
            assert_eq!(unit.convolve(e).unwrap(), *e);
            assert_eq!(e.convolve(&unit).unwrap(), *e);
        }
    }

    #[test]
    fn action_is_a_left_action() {
        let f = OrderedSetPartition::new(vec![vec![1], vec![2, 3], vec![4]]).unwrap();
        for a in symmetric_group(3) {
            for b in symmetric_group(3) {
                assert_eq!(act(&a.compose(&b), &f), act(&a, &act(&b, &f)));
            }
        }
    }

    #[test]
    fn action_moves_blocks_to_positions() {
        // π = (2,3,1) sends block 1 to position 2, block 2 to position 3,
        // block 3 to position 1.
        let f = OrderedSetPartition::new(vec![vec![1], vec![2], vec![3, 4]]).unwrap();
        let moved = act(&perm(&[2, 3, 1]), &f);
        assert_eq!(
            moved.blocks(),
            &[vec![3, 4], vec![1], vec![2]]
        );
    }

    #[test]
    fn action_matrices_on_a_two_element_orbit() {
        let basis = vec![
            OrderedSetPartition::new(vec![vec![1, 2], vec![3, 4]]).unwrap(),
            OrderedSetPartition::new(vec![vec![3, 4], vec![1, 2]]).unwrap(),
        ];
        let es = eulerian_idempotents(2, 8).unwrap();
        let sym = action_matrix(&es[0], &basis).unwrap();
        let alt = action_matrix(&es[1], &basis).unwrap();
        let half = rat_frac(1, 2);
        assert_eq!(*sym.get(0, 0), half);
        assert_eq!(*sym.get(1, 0), half);
        assert_eq!(*sym.get(0, 1), half);
        assert_eq!(*alt.get(0, 0), half);
        assert_eq!(*alt.get(1, 0), -half.clone());
        assert_eq!(*alt.get(0, 1), -half.clone());

        let unit = action_matrix(&GroupAlgebraElement::unit(2), &basis).unwrap();
        assert_eq!(unit, RationalMatrix::identity(2));
    }

    #[test]
    fn action_matrix_is_a_homomorphism() {
        // One free S_3 orbit: the orderings of ({1,2},{3},{4}).
        let basis = enumerate_orbit();
        let es = eulerian_idempotents(3, 8).unwrap();
        for a in es.iter() {
            for b in es.iter() {
                let lhs = action_matrix(&a.convolve(b).unwrap(), &basis).unwrap();
                let rhs = action_matrix(a, &basis)
                    .unwrap()
                    .multiply(&action_matrix(b, &basis).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn action_matrix_traces_count_stirling_numbers() {
        // On a free orbit the trace of the e_k^(j) action is c(k, j).
        let basis = enumerate_orbit();
        let es = eulerian_idempotents(3, 8).unwrap();
        let traces: Vec<Rat> = es
            .iter()
            .map(|e| action_matrix(e, &basis).unwrap().trace().unwrap())
            .collect();
        assert_eq!(traces, vec![rat(2), rat(3), rat(1)]);
    }

    fn enumerate_orbit() -> Vec<OrderedSetPartition> {
        let base = OrderedSetPartition::new(vec![vec![1, 2], vec![3], vec![4]]).unwrap();
        let mut orbit: Vec<OrderedSetPartition> = symmetric_group(3)
            .iter()
            .map(|p| act(p, &base))
            .collect();
        orbit.sort_unstable();
        orbit
    }

    #[test]
    fn descent_class_values_match_k2() {
        assert_eq!(descent_class_value(2, 0, 1), rat_frac(1, 2));
        assert_eq!(descent_class_value(2, 0, 2), rat_frac(1, 2));
        assert_eq!(descent_class_value(2, 1, 1), rat_frac(-1, 2));
        assert_eq!(descent_class_value(2, 1, 2), rat_frac(1, 2));
    }
}

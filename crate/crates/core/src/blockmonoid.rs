//! Integer-valued functions on the character group, the monoid of
//! product-one sequences B(G^), its atoms, and the length-3 generating set S.
//!
//! A `ZSequence` assigns an integer to every character index; nonnegative
//! ones are sequences over the character group, and the product-one ones
//! among those form the block monoid.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::group::{Character, GroupSpec};

/// Element of F(G^, Z): one integer per character index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZSequence {
    values: Vec<i64>,
}

impl ZSequence {
    pub fn zero(len: usize) -> Self {
        ZSequence {
            values: vec![0; len],
        }
    }

    pub fn delta(len: usize, index: usize) -> Self {
        let mut s = Self::zero(len);
        s.values[index] = 1;
        s
    }

    pub fn from_values(values: Vec<i64>) -> Self {
        ZSequence { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [i64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: usize) -> i64 {
        self.values[index]
    }

    /// |s| = sum of absolute values.
    pub fn length(&self) -> u64 {
        self.values.iter().map(|v| v.unsigned_abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0)
    }

    pub fn support(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn supported_in(&self, subset: &[usize]) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, &v)| v == 0 || subset.binary_search(&i).is_ok())
    }

    pub fn add(&self, other: &Self) -> Self {
        ZSequence {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ZSequence {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ZSequence {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        ZSequence {
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    /// Componentwise 0 <= self <= other.
    pub fn dominated_by(&self, other: &Self) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| 0 <= a && a <= b)
    }

    /// Sparse representation: index -> nonzero value.
    pub fn to_sparse(&self) -> std::collections::BTreeMap<usize, i64> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i, v))
            .collect()
    }

    pub fn from_sparse(map: &std::collections::BTreeMap<usize, i64>, len: usize) -> Result<Self> {
        let mut s = Self::zero(len);
        for (&i, &v) in map {
            if i >= len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    got: i + 1,
                });
            }
            s.values[i] = v;
        }
        Ok(s)
    }
}

/// True iff the weighted character sum vanishes: sum_chi s(chi) * chi = 0.
pub fn is_product_one(s: &ZSequence, spec: &GroupSpec) -> bool {
    debug_assert_eq!(s.len(), spec.order() as usize);
    let rank = spec.rank();
    let mut acc = vec![0i128; rank];
    for (idx, &v) in s.values().iter().enumerate() {
        if v == 0 {
            continue;
        }
        let chi = Character::from_index(spec, idx);
        for (a, &r) in acc.iter_mut().zip(chi.residues()) {
            *a += v as i128 * r as i128;
        }
    }
    acc.iter()
        .zip(spec.orders())
        .all(|(&a, &n)| a.rem_euclid(n as i128) == 0)
}

/// Number of nonnegative integer vectors of length k with sum <= d,
/// saturating at u128::MAX.
fn candidate_count(k: u64, d: u64) -> u128 {
    // C(k + d, d)
    let mut c: u128 = 1;
    for i in 1..=d {
        c = match c.checked_mul((k + i) as u128) {
            Some(x) => x / i as u128,
            None => return u128::MAX,
        };
    }
    c
}

/// All nonnegative product-one sequences of length <= d, in (length, lex)
/// order, starting with the zero sequence.
pub fn enumerate_block_elements(
    spec: &GroupSpec,
    max_length: u64,
    budgets: &Budgets,
) -> Result<Vec<ZSequence>> {
    let k = spec.order();
    let candidates = candidate_count(k, max_length);
    if candidates > budgets.sequence_budget {
        return Err(Error::BudgetExceeded {
            candidates,
            budget: budgets.sequence_budget,
        });
    }
    let k = k as usize;
    let mut out = Vec::new();
    let mut current = vec![0i64; k];
    for total in 0..=max_length {
        fill_compositions(spec, &mut current, 0, total, &mut out);
    }
    Ok(out)
}

fn fill_compositions(
    spec: &GroupSpec,
    current: &mut Vec<i64>,
    pos: usize,
    remaining: u64,
    out: &mut Vec<ZSequence>,
) {
    if pos + 1 == current.len() {
        current[pos] = remaining as i64;
        let s = ZSequence::from_values(current.clone());
        if is_product_one(&s, spec) {
            out.push(s);
        }
        current[pos] = 0;
        return;
    }
    for v in 0..=remaining {
        current[pos] = v as i64;
        fill_compositions(spec, current, pos + 1, remaining - v, out);
    }
    current[pos] = 0;
}

/// True iff `b` has no proper nonzero product-one subsequence.
pub fn is_atom(b: &ZSequence, spec: &GroupSpec) -> bool {
    if b.is_zero() || !b.is_nonnegative() {
        return false;
    }
    if !is_product_one(b, spec) {
        return false;
    }
    let support = b.support();
    let full: i64 = support.iter().map(|&j| b.get(j)).sum();
    // Odometer over componentwise 0 <= c <= b restricted to the support.
    let mut c = vec![0i64; support.len()];
    loop {
        // advance
        let mut i = 0;
        loop {
            if i == support.len() {
                return true; // wrapped: all proper subsequences checked
            }
            c[i] += 1;
            if c[i] <= b.get(support[i]) {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        let total: i64 = c.iter().sum();
        if total == full {
            continue; // c == b, not proper
        }
        let mut sub = ZSequence::zero(b.len());
        for (&slot, &j) in c.iter().zip(&support) {
            sub.values[j] = slot;
        }
        if is_product_one(&sub, spec) {
            return false;
        }
    }
}

/// All irreducible elements of the block monoid with length <= max_length.
pub fn atoms(spec: &GroupSpec, max_length: u64, budgets: &Budgets) -> Result<Vec<ZSequence>> {
    let all = enumerate_block_elements(spec, max_length, budgets)?;
    Ok(all.into_iter().filter(|b| is_atom(b, spec)).collect())
}

/// The sublist supported inside `subset` (sorted indices); preserves order.
pub fn restrict(elements: &[ZSequence], subset: &[usize]) -> Vec<ZSequence> {
    elements
        .iter()
        .filter(|s| s.supported_in(subset))
        .cloned()
        .collect()
}

/// The generating set S: the trivial-character delta, inverse pairs, and
/// triples delta_chi + delta_rho + delta_((chi rho)^-1) over nontrivial
/// chi, rho with chi * rho nontrivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSet {
    pub elements: Vec<ZSequence>,
}

pub fn build_s(spec: &GroupSpec) -> SSet {
    let n = spec.order() as usize;
    let mut set: BTreeSet<ZSequence> = BTreeSet::new();
    set.insert(ZSequence::delta(n, 0));
    for i in 1..n {
        let chi = Character::from_index(spec, i);
        let inv = chi.neg(spec).index(spec);
        set.insert(ZSequence::delta(n, i).add(&ZSequence::delta(n, inv)));
        for j in 1..n {
            let rho = Character::from_index(spec, j);
            let prod = chi.add(&rho, spec);
            if prod.is_identity() {
                continue;
            }
            let third = prod.neg(spec).index(spec);
            set.insert(
                ZSequence::delta(n, i)
                    .add(&ZSequence::delta(n, j))
                    .add(&ZSequence::delta(n, third)),
            );
        }
    }
    SSet {
        elements: set.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> ZSequence {
        ZSequence::from_values(v.to_vec())
    }

    #[test]
    fn product_one_basics() {
        let c3 = GroupSpec::cyclic(3).unwrap();
        assert!(is_product_one(&seq(&[0, 0, 0]), &c3));
        assert!(is_product_one(&seq(&[0, 1, 1]), &c3)); // delta_1 + delta_2
        assert!(!is_product_one(&seq(&[0, 2, 0]), &c3)); // 2*delta_1
                                                         // negative coefficients allowed in F(G^, Z)
        assert!(is_product_one(&seq(&[0, 1, -2]), &c3)); // 1 - 4 = -3 = 0 mod 3
    }

    #[test]
    fn product_one_paper_b3() {
        // b3 = 2*delta_(1,0) + 2*delta_(0,1) + delta_(1,1) over C3 x C3.
        let spec = GroupSpec::new(vec![3, 3]).unwrap();
        let mut s = ZSequence::zero(9);
        let d = |r: &[i64]| Character::new(&spec, r).unwrap().index(&spec);
        s.values[d(&[1, 0])] = 2;
        s.values[d(&[0, 1])] = 2;
        s.values[d(&[1, 1])] = 1;
        assert!(is_product_one(&s, &spec));
    }

    #[test]
    fn enumerate_c2_up_to_2() {
        let c2 = GroupSpec::cyclic(2).unwrap();
        let got = enumerate_block_elements(&c2, 2, &Budgets::default()).unwrap();
        let expect: Vec<ZSequence> = vec![seq(&[0, 0]), seq(&[1, 0]), seq(&[0, 2]), seq(&[2, 0])];
        assert_eq!(got, expect, "(length, lex) enumeration order");
    }

    #[test]
    fn enumerate_c3_contains_examples() {
        let c3 = GroupSpec::cyclic(3).unwrap();
        let got = enumerate_block_elements(&c3, 3, &Budgets::default()).unwrap();
        for want in [seq(&[0, 3, 0]), seq(&[0, 1, 1]), seq(&[1, 1, 1])] {
            assert!(got.contains(&want), "missing {want:?}");
        }
        // degree 0 only yields the zero sequence
        let zero_only = enumerate_block_elements(&c3, 0, &Budgets::default()).unwrap();
        assert_eq!(zero_only, vec![seq(&[0, 0, 0])]);
    }

    #[test]
    fn enumerate_budget_respected() {
        let c3 = GroupSpec::cyclic(3).unwrap();
        let tight = Budgets {
            sequence_budget: 5,
            ..Budgets::default()
        };
        assert!(matches!(
            enumerate_block_elements(&c3, 3, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn closed_under_addition_within_bound() {
        let c4 = GroupSpec::cyclic(4).unwrap();
        let small = enumerate_block_elements(&c4, 3, &Budgets::default()).unwrap();
        let big = enumerate_block_elements(&c4, 6, &Budgets::default()).unwrap();
        for a in &small {
            assert!(a.is_nonnegative());
            assert!(is_product_one(a, &c4));
            for b in &small {
                let sum = a.add(b);
                assert!(big.contains(&sum));
            }
        }
    }

    /// Independent brute-force irreducibility check used as the oracle for
    /// the atom search.
    fn is_atom_oracle(b: &ZSequence, spec: &GroupSpec, budgets: &Budgets) -> bool {
        if b.is_zero() {
            return false;
        }
        let all = enumerate_block_elements(spec, b.length(), budgets).unwrap();
        !all.iter().any(|c| {
            !c.is_zero() && *c != *b && c.dominated_by(b) && is_product_one(&b.sub(c), spec)
        })
    }

    #[test]
    fn atoms_c3() {
        let c3 = GroupSpec::cyclic(3).unwrap();
        let got = atoms(&c3, 3, &Budgets::default()).unwrap();
        let expect = [
            seq(&[1, 0, 0]),
            seq(&[0, 1, 1]),
            seq(&[0, 3, 0]),
            seq(&[0, 0, 3]),
        ];
        assert_eq!(got.len(), 4);
        for a in &expect {
            assert!(got.contains(a));
        }
        for a in &got {
            assert!(is_atom_oracle(a, &c3, &Budgets::default()));
        }
    }

    #[test]
    fn atoms_trivial_group() {
        let c1 = GroupSpec::cyclic(1).unwrap();
        let got = atoms(&c1, 3, &Budgets::default()).unwrap();
        assert_eq!(got, vec![seq(&[1])]);
    }

    #[test]
    fn atoms_match_oracle_c4() {
        let c4 = GroupSpec::cyclic(4).unwrap();
        let b = Budgets::default();
        let all = enumerate_block_elements(&c4, 4, &b).unwrap();
        for s in &all {
            assert_eq!(
                is_atom(s, &c4),
                is_atom_oracle(s, &c4, &b),
                "disagreement on {s:?}"
            );
        }
    }

    #[test]
    fn maximal_atom_length_is_group_order_for_cyclic() {
        for n in [2u64, 3, 4, 5] {
            let spec = GroupSpec::cyclic(n).unwrap();
            let ats = atoms(&spec, n + 1, &Budgets::default()).unwrap();
            let max_len = ats.iter().map(|a| a.length()).max().unwrap();
            assert_eq!(max_len, n, "Davenport constant of C_{n}");
        }
    }

    #[test]
    fn ord_chi_delta_chi_is_product_one() {
        let spec = GroupSpec::new(vec![2, 4]).unwrap();
        let n = spec.order() as usize;
        for i in 0..n {
            let chi = Character::from_index(&spec, i);
            let d = crate::group::character_order(&chi, &spec);
            let s = ZSequence::delta(n, i).scale(d as i64);
            assert!(is_product_one(&s, &spec));
        }
    }

    #[test]
    fn restrict_examples() {
        let spec = GroupSpec::new(vec![3, 3]).unwrap();
        let b = Budgets::default();
        let all = enumerate_block_elements(&spec, 3, &b).unwrap();
        let full: Vec<usize> = (0..9).collect();
        assert_eq!(restrict(&all, &full), all);
        let empty = restrict(&all, &[]);
        assert_eq!(empty, vec![ZSequence::zero(9)]);

        // I = {(1,0), (2,0)}: the order-3 subgroup in the first coordinate.
        let i10 = Character::new(&spec, &[1, 0]).unwrap().index(&spec);
        let i20 = Character::new(&spec, &[2, 0]).unwrap().index(&spec);
        let mut subset = vec![i10, i20];
        subset.sort_unstable();
        let got = restrict(&all, &subset);
        let mut pair = ZSequence::zero(9);
        pair.values[i10] = 1;
        pair.values[i20] = 1;
        let mut t10 = ZSequence::zero(9);
        t10.values[i10] = 3;
        let mut t20 = ZSequence::zero(9);
        t20.values[i20] = 3;
        assert_eq!(got.len(), 4);
        for want in [ZSequence::zero(9), pair, t10, t20] {
            assert!(got.contains(&want));
        }
    }

    #[test]
    fn s_set_c2_and_c3() {
        let c2 = GroupSpec::cyclic(2).unwrap();
        let s2 = build_s(&c2);
        assert_eq!(s2.elements, vec![seq(&[0, 2]), seq(&[1, 0])]);

        let c3 = GroupSpec::cyclic(3).unwrap();
        let s3 = build_s(&c3);
        let expect: BTreeSet<ZSequence> = [
            seq(&[1, 0, 0]),
            seq(&[0, 1, 1]),
            seq(&[0, 3, 0]),
            seq(&[0, 0, 3]),
        ]
        .into_iter()
        .collect();
        assert_eq!(s3.elements.iter().cloned().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn s_set_size_bound_and_membership() {
        for spec in [
            GroupSpec::cyclic(4).unwrap(),
            GroupSpec::new(vec![2, 2]).unwrap(),
            GroupSpec::new(vec![3, 3]).unwrap(),
        ] {
            let s = build_s(&spec);
            let g = spec.order();
            assert!(s.elements.len() as u64 <= 1 + (g - 1) + (g - 1) * (g - 1));
            for el in &s.elements {
                assert!(is_product_one(el, &spec));
                assert!(el.length() <= 3);
                assert!(el.is_nonnegative());
            }
        }
    }
}

#![allow(clippy::needless_range_loop)]

//! Exact integer-lattice computations: Hermite normal form, membership
//! tests, and kernel bases for character-sum maps.
//!
//! All elimination runs over `BigInt`; inputs and canonical outputs stay
//! small at the group sizes this crate targets, but intermediate values are
//! never trusted to fit a machine word.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::blockmonoid::{is_product_one, ZSequence};
use crate::error::{Error, Result};
use crate::group::{Character, GroupSpec};

/// An integer lattice given by generators, with a cached row-style Hermite
/// normal form: pivots positive, entries above each pivot reduced to
/// [0, pivot), zero rows dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    ambient_dim: usize,
    generators: Vec<Vec<BigInt>>,
    hnf: Vec<Vec<BigInt>>,
}

/// Row-style HNF of the given vectors (each of length `ambient_dim`).
pub fn hermite_normal_form(ambient_dim: usize, generators: &[Vec<BigInt>]) -> Result<IntLattice> {
    for g in generators {
        if g.len() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: g.len(),
            });
        }
    }
    let hnf = hnf_rows(ambient_dim, generators.to_vec());
    Ok(IntLattice {
        ambient_dim,
        generators: generators.to_vec(),
        hnf,
    })
}

fn hnf_rows(dim: usize, mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivot_row = 0;
    for col in 0..dim {
        if pivot_row == rows.len() {
            break;
        }
        // Euclid-reduce the column below pivot_row until one nonzero remains.
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(pivot_row) {
                if row[col].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if rows[i][col].abs() < rows[b][col].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut any_left = false;
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = div_round(&rows[i][col], &rows[pivot_row][col]);
                if !q.is_zero() {
                    for j in 0..dim {
                        let t = &q * &rows[pivot_row][j];
                        rows[i][j] -= t;
                    }
                }
                if !rows[i][col].is_zero() {
                    any_left = true;
                }
            }
            if !any_left {
                break;
            }
        }
        if rows[pivot_row][col].is_zero() {
            continue;
        }
        // positive pivot
        if rows[pivot_row][col].is_negative() {
            for x in rows[pivot_row].iter_mut() {
                *x = -&*x;
            }
        }
        // reduce the column entries of earlier rows into [0, pivot)
        let pivot = rows[pivot_row][col].clone();
        for i in 0..pivot_row {
            let q = num_integer::Integer::div_floor(&rows[i][col], &pivot);
            if !q.is_zero() {
                for j in 0..dim {
                    let t = &q * &rows[pivot_row][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

/// Rounded division minimizing the remainder magnitude.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

impl IntLattice {
    pub fn zero(ambient_dim: usize) -> Self {
        IntLattice {
            ambient_dim,
            generators: Vec::new(),
            hnf: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn hnf_rows(&self) -> &[Vec<BigInt>] {
        &self.hnf
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    /// Lattice index in Z^dim when full-rank: product of the HNF pivots.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.ambient_dim {
            return None;
        }
        let mut prod = BigInt::from(1);
        for (i, row) in self.hnf.iter().enumerate() {
            let col = row.iter().position(|x| !x.is_zero())?;
            debug_assert!(col >= i);
            prod *= &row[col];
        }
        Some(prod)
    }

    /// Membership by back-substitution against the HNF.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        let mut residual = v.to_vec();
        for row in &self.hnf {
            let col = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("HNF rows are nonzero");
            if residual[col].is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&residual[col], &row[col]);
            if !r.is_zero() {
                return Ok(false);
            }
            for j in 0..self.ambient_dim {
                let t = &q * &row[j];
                residual[j] -= t;
            }
        }
        Ok(residual.iter().all(|x| x.is_zero()))
    }

    pub fn contains_i64(&self, v: &[i64]) -> Result<bool> {
        let vv: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&vv)
    }
}

/// Integer basis of the kernel of Z^I -> G^, s |-> sum_{chi in I} s(chi)*chi,
/// returned as full-length vectors (zero outside the subset).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelLattice {
    subset: Vec<usize>,
    basis: Vec<Vec<i64>>,
    lattice: IntLattice,
}

impl KernelLattice {
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// Basis vectors in full character-index coordinates.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn basis_zsequences(&self) -> Vec<ZSequence> {
        self.basis
            .iter()
            .map(|v| ZSequence::from_values(v.clone()))
            .collect()
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }
}

/// Kernel of the character-sum map restricted to `subset` (sorted indices).
///
/// Computed by column elimination on the stacked matrix [A | diag(n)] over
/// the rows of the group, tracking the combination matrix; kernel columns
/// are projected back to the subset coordinates and HNF-reduced.
pub fn kernel_basis(subset: &[usize], spec: &GroupSpec) -> Result<KernelLattice> {
    let full_dim = spec.order() as usize;
    for &i in subset {
        if i >= full_dim {
            return Err(Error::DimensionMismatch {
                expected: full_dim,
                got: i + 1,
            });
        }
    }
    let k = subset.len();
    let rank = spec.rank();
    if k == 0 {
        return Ok(KernelLattice {
            subset: Vec::new(),
            basis: Vec::new(),
            lattice: IntLattice::zero(full_dim),
        });
    }

    // Columns: k character columns then `rank` modulus columns.
    let cols = k + rank;
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); cols]; rank];
    for (j, &chi_idx) in subset.iter().enumerate() {
        let chi = Character::from_index(spec, chi_idx);
        for (r, &res) in chi.residues().iter().enumerate() {
            m[r][j] = BigInt::from(res);
        }
    }
    for (r, &n) in spec.orders().iter().enumerate() {
        m[r][k + r] = BigInt::from(n);
    }
    // Combination tracker: cols x cols identity.
    let mut t: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            let mut row = vec![BigInt::zero(); cols];
            row[i] = BigInt::from(1);
            row
        })
        .collect();

    // Column echelon on m, mirroring operations on t's columns.
    let mut pivot_col = 0;
    for row in 0..rank {
        if pivot_col == cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..cols {
                if m[row][j].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(j),
                    Some(b) => {
                        if m[row][j].abs() < m[row][b].abs() {
                            best = Some(j);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            swap_cols(&mut m, pivot_col, b);
            swap_cols(&mut t, pivot_col, b);
            let mut any_left = false;
            for j in pivot_col + 1..cols {
                if m[row][j].is_zero() {
                    continue;
                }
                let q = div_round(&m[row][j], &m[row][pivot_col]);
                if !q.is_zero() {
                    sub_col(&mut m, j, pivot_col, &q);
                    sub_col(&mut t, j, pivot_col, &q);
                }
                if !m[row][j].is_zero() {
                    any_left = true;
                }
            }
            if !any_left {
                break;
            }
        }
        if !m[row][pivot_col].is_zero() {
            pivot_col += 1;
        }
    }

    // Columns past pivot_col are zero on all rows: their t-columns span the kernel.
    let mut basis_vectors: Vec<Vec<BigInt>> = Vec::new();
    for j in pivot_col..cols {
        debug_assert!((0..rank).all(|r| m[r][j].is_zero()));
        let mut full = vec![BigInt::zero(); full_dim];
        for (pos, &chi_idx) in subset.iter().enumerate() {
            full[chi_idx] = t[pos][j].clone();
        }
        if full.iter().any(|x| !x.is_zero()) {
            basis_vectors.push(full);
        }
    }
    let lattice = hermite_normal_form(full_dim, &basis_vectors)?;
    let basis: Vec<Vec<i64>> = lattice
        .hnf_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow(format!("kernel entry {x}"))))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;

    debug_assert!(basis
        .iter()
        .all(|v| is_product_one(&ZSequence::from_values(v.clone()), spec)));
    debug_assert_eq!(lattice.rank(), k);

    Ok(KernelLattice {
        subset: subset.to_vec(),
        basis,
        lattice,
    })
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn sub_col(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let t = q * &row[source];
        row[target] -= t;
    }
}

/// HNF of a set of integer sequences (rows in full character coordinates).
pub fn lattice_of_sequences(dim: usize, seqs: &[ZSequence]) -> Result<IntLattice> {
    let rows: Vec<Vec<BigInt>> = seqs
        .iter()
        .map(|s| s.values().iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    hermite_normal_form(dim, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_diag() {
        let l = hermite_normal_form(2, &[big(&[2, 0]), big(&[0, 2])]).unwrap();
        assert_eq!(l.hnf_rows(), &[big(&[2, 0]), big(&[0, 2])]);
        assert_eq!(l.index(), Some(BigInt::from(4)));
    }

    #[test]
    fn hnf_index_three() {
        let l = hermite_normal_form(2, &[big(&[1, 1]), big(&[0, 3])]).unwrap();
        assert_eq!(l.index(), Some(BigInt::from(3)));
        // every original generator is a member
        assert!(l.contains(&big(&[1, 1])).unwrap());
        assert!(l.contains(&big(&[0, 3])).unwrap());
        assert!(!l.contains(&big(&[0, 1])).unwrap());
    }

    #[test]
    fn hnf_zero_lattice() {
        let l = hermite_normal_form(3, &[big(&[0, 0, 0])]).unwrap();
        assert_eq!(l.rank(), 0);
        assert!(l.contains(&big(&[0, 0, 0])).unwrap());
        assert!(!l.contains(&big(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn contains_examples() {
        let l = hermite_normal_form(2, &[big(&[2, 0]), big(&[0, 2])]).unwrap();
        assert!(l.contains(&big(&[2, 2])).unwrap());
        assert!(!l.contains(&big(&[1, 1])).unwrap());

        let diag = hermite_normal_form(2, &[big(&[1, 1])]).unwrap();
        assert!(!diag.contains(&big(&[5, 0])).unwrap());
        assert!(diag.contains(&big(&[5, 5])).unwrap());

        assert!(matches!(
            diag.contains(&big(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn c5_over_reals_membership_failure() {
        // I = {chi, chi^4} for C5: block elements of length <= 3 span {(1,1)};
        // 5*delta_chi = (5,0) is not in that span.
        let spec = GroupSpec::cyclic(5).unwrap();
        let b = crate::budget::Budgets::default();
        let all = crate::blockmonoid::enumerate_block_elements(&spec, 3, &b).unwrap();
        let subset = vec![1usize, 4];
        let restricted = crate::blockmonoid::restrict(&all, &subset);
        let lat = lattice_of_sequences(5, &restricted).unwrap();
        let five_delta = big(&[0, 5, 0, 0, 0]);
        assert!(!lat.contains(&five_delta).unwrap());
        let pair = big(&[0, 1, 0, 0, 1]);
        assert!(lat.contains(&pair).unwrap());
    }

    /// Rational-solve oracle for full-rank 3x3 membership: solve G^T c = v
    /// over Q and check integrality.
    fn membership_oracle(gens: &[Vec<BigInt>; 3], v: &[BigInt]) -> Option<bool> {
        let mut m: Vec<Vec<BigRational>> = (0..3)
            .map(|r| {
                (0..3)
                    .map(|c| BigRational::from_integer(gens[c][r].clone()))
                    .collect()
            })
            .collect();
        let mut rhs: Vec<BigRational> = v
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for col in 0..3 {
            let p = (col..3).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, p);
            rhs.swap(col, p);
            let inv = m[col][col].recip();
            for j in 0..3 {
                m[col][j] = &m[col][j] * &inv;
            }
            rhs[col] = &rhs[col] * &inv;
            for r in 0..3 {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for j in 0..3 {
                        let t = &f * &m[col][j];
                        m[r][j] = &m[r][j] - &t;
                    }
                    let t = &f * &rhs[col];
                    rhs[r] = &rhs[r] - &t;
                }
            }
        }
        Some(rhs.iter().all(|x| x.denom().is_one()))
    }

    #[test]
    fn contains_agrees_with_rational_solve_oracle() {
        let mut rng = StdRng::seed_from_u64(42);
        let mut tested = 0;
        while tested < 100 {
            let gens: [Vec<BigInt>; 3] = std::array::from_fn(|_| {
                (0..3)
                    .map(|_| BigInt::from(rng.gen_range(-4i64..=4)))
                    .collect()
            });
            // Positive instance: a random small integer combination.
            let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-3i64..=3));
            let mut v = vec![BigInt::zero(); 3];
            for (ci, g) in c.iter().zip(&gens) {
                for (vi, gi) in v.iter_mut().zip(g) {
                    *vi += gi * BigInt::from(*ci);
                }
            }
            let lat = hermite_normal_form(3, gens.as_ref()).unwrap();
            assert!(
                lat.contains(&v).unwrap(),
                "known combination must be in the lattice"
            );

            // Perturbed instance checked against the rational-solve oracle.
            let w: Vec<BigInt> = v
                .iter()
                .map(|x| x + BigInt::from(rng.gen_range(-2i64..=2)))
                .collect();
            if let Some(expected) = membership_oracle(&gens, &w) {
                assert_eq!(lat.contains(&w).unwrap(), expected);
                tested += 1;
            }
        }
    }

    #[test]
    fn kernel_c3_two_nontrivial() {
        let spec = GroupSpec::cyclic(3).unwrap();
        let k = kernel_basis(&[1, 2], &spec).unwrap();
        // lattice {s1 = s2 mod 3} embedded in Z^3 at coordinates 1, 2
        assert!(k.lattice().contains(&big(&[0, 1, 1])).unwrap());
        assert!(k.lattice().contains(&big(&[0, 0, 3])).unwrap());
        assert!(k.lattice().contains(&big(&[0, 3, 0])).unwrap());
        assert!(!k.lattice().contains(&big(&[0, 1, 0])).unwrap());
        assert!(!k.lattice().contains(&big(&[1, 0, 0])).unwrap());
        assert_eq!(k.basis().len(), 2);
    }

    #[test]
    fn kernel_trivial_character_only() {
        let spec = GroupSpec::cyclic(4).unwrap();
        let k = kernel_basis(&[0], &spec).unwrap();
        assert_eq!(k.basis(), &[vec![1i64, 0, 0, 0]]);
    }

    #[test]
    fn kernel_c2_full() {
        let spec = GroupSpec::cyclic(2).unwrap();
        let k = kernel_basis(&[0, 1], &spec).unwrap();
        // {(a, b) : b even}
        assert!(k.lattice().contains(&big(&[1, 0])).unwrap());
        assert!(k.lattice().contains(&big(&[0, 2])).unwrap());
        assert!(!k.lattice().contains(&big(&[0, 1])).unwrap());
    }

    #[test]
    fn kernel_empty_subset() {
        let spec = GroupSpec::cyclic(3).unwrap();
        let k = kernel_basis(&[], &spec).unwrap();
        assert!(k.basis().is_empty());
    }

    #[test]
    fn kernel_vectors_product_one_and_index() {
        // The kernel index in Z^I equals the order of the subgroup generated
        // by the characters in I.
        for (spec, subset) in [
            (GroupSpec::cyclic(6).unwrap(), vec![1usize, 5]),
            (GroupSpec::new(vec![2, 2]).unwrap(), vec![1usize, 2]),
            (GroupSpec::new(vec![3, 3]).unwrap(), vec![1usize, 3, 4]),
        ] {
            let k = kernel_basis(&subset, &spec).unwrap();
            for v in k.basis_zsequences() {
                assert!(is_product_one(&v, &spec));
            }
            // index of kernel inside Z^I (restrict HNF to subset coords)
            let restricted: Vec<Vec<BigInt>> = k
                .basis()
                .iter()
                .map(|v| subset.iter().map(|&i| BigInt::from(v[i])).collect())
                .collect();
            let rl = hermite_normal_form(subset.len(), &restricted).unwrap();
            let index = rl.index().expect("kernel has full rank in Z^I");

            // order of subgroup generated by subset characters, brute force
            let mut subgroup = std::collections::BTreeSet::new();
            subgroup.insert(Character::identity(&spec));
            loop {
                let before = subgroup.len();
                let snapshot: Vec<Character> = subgroup.iter().cloned().collect();
                for s in &snapshot {
                    for &i in &subset {
                        subgroup.insert(s.add(&Character::from_index(&spec, i), &spec));
                    }
                }
                if subgroup.len() == before {
                    break;
                }
            }
            assert_eq!(index, BigInt::from(subgroup.len()));
        }
    }
}

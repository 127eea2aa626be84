#![allow(clippy::needless_range_loop)]

//! Finite matrix groups with exact entries: closure enumeration, the group
//! action on polynomials, Reynolds orbit sums, the regular representation of
//! an abelian group, and companion-matrix irreducible forms over non-closed
//! fields.

use std::collections::HashMap;

use crate::budget::Budgets;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::galois::{galois_group, FieldDescriptor};
use crate::group::{
    character_order, enumerate_elements, pairing_exponent, Character, GroupElement, GroupSpec,
};
use crate::poly::{ExactPolynomial, Monomial};

/// Square matrix with exact cyclotomic entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub n: usize,
    pub order: u64,
    entries: Vec<Cyclotomic>,
}

impl Matrix {
    pub fn identity(n: usize, order: u64) -> Self {
        let mut entries = vec![Cyclotomic::zero(order); n * n];
        for i in 0..n {
            entries[i * n + i] = Cyclotomic::one(order);
        }
        Matrix { n, order, entries }
    }

    pub fn from_rows(order: u64, rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for e in row {
                if e.order() != order {
                    return Err(Error::OrderMismatch {
                        left: order,
                        right: e.order(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(Matrix { n, order, entries })
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let n = self.n;
        let mut entries = vec![Cyclotomic::zero(self.order); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    entries[i * n + j] = entries[i * n + j].add(&a.mul(b)?)?;
                }
            }
        }
        Ok(Matrix {
            n,
            order: self.order,
            entries,
        })
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        let mut acc = Matrix::identity(self.n, self.order);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, v: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let mut out = vec![Cyclotomic::zero(self.order); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = out[i].add(&a.mul(&v[j])?)?;
            }
        }
        Ok(out)
    }

    /// Invertibility over the cyclotomic field by Gaussian elimination.
    pub fn is_invertible(&self) -> bool {
        let n = self.n;
        let mut m: Vec<Vec<Cyclotomic>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return false;
            };
            m.swap(col, p);
            let inv = m[col][col].inv().expect("nonzero pivot");
            for j in col..n {
                m[col][j] = m[col][j].mul(&inv).expect("same order");
            }
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                for j in col..n {
                    let t = f.mul(&m[col][j]).expect("same order");
                    m[r][j] = m[r][j].sub(&t).expect("same order");
                }
            }
        }
        true
    }
}

/// A finite group of exact matrices, closed under multiplication.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub dim: usize,
    pub scalar_order: u64,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    inverses: Vec<usize>,
}

impl MatrixGroup {
    /// Breadth-first closure of the generators; the identity is element 0.
    pub fn generate(generators: Vec<Matrix>, budgets: &Budgets) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid(
                "matrix group needs at least one generator".into(),
            ));
        }
        let dim = generators[0].n;
        let order = generators[0].order;
        for g in &generators {
            if g.n != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.n,
                });
            }
            if g.order != order {
                return Err(Error::OrderMismatch {
                    left: order,
                    right: g.order,
                });
            }
            if !g.is_invertible() {
                return Err(Error::SingularMatrix);
            }
        }
        let identity = Matrix::identity(dim, order);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Matrix, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            for g in &generators {
                let next = current.mul(g)?;
                if !index.contains_key(&next) {
                    if elements.len() >= budgets.closure_cap {
                        return Err(Error::CapExceeded {
                            what: "matrix group closure",
                            cap: budgets.closure_cap as u64,
                            got: elements.len() as u64 + 1,
                        });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            frontier += 1;
        }
        let identity = Matrix::identity(dim, order);
        let mut inverses = vec![usize::MAX; elements.len()];
        for (i, a) in elements.iter().enumerate() {
            if inverses[i] != usize::MAX {
                continue;
            }
            for (j, b) in elements.iter().enumerate() {
                if a.mul(b)? == identity {
                    inverses[i] = j;
                    inverses[j] = i;
                    break;
                }
            }
        }
        debug_assert!(inverses.iter().all(|&i| i != usize::MAX));
        Ok(MatrixGroup {
            dim,
            scalar_order: order,
            generators,
            elements,
            inverses,
        })
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn inverse_of(&self, index: usize) -> &Matrix {
        &self.elements[self.inverses[index]]
    }

    pub fn element_index(&self, m: &Matrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }
}

/// The action (g . f)(v) = f(g^-1 v) on polynomials: substitutes
/// x_j -> sum_k (g^-1)_{jk} x_k.
pub fn act_on_polynomial(g_inv: &Matrix, p: &ExactPolynomial) -> Result<ExactPolynomial> {
    if g_inv.n != p.nvars() {
        return Err(Error::DimensionMismatch {
            expected: p.nvars(),
            got: g_inv.n,
        });
    }
    let n = g_inv.n;
    let images: Vec<ExactPolynomial> = (0..n)
        .map(|j| {
            let mut form = ExactPolynomial::zero(n, p.order());
            for k in 0..n {
                let c = g_inv.get(j, k);
                if c.is_zero() {
                    continue;
                }
                form = form.add(&ExactPolynomial::monomial(
                    n,
                    Monomial::var(n, k),
                    c.clone(),
                ))?;
            }
            Ok(form)
        })
        .collect::<Result<_>>()?;
    p.substitute(&images)
}

/// The full group sum sum_g g.(x^m) as an exact polynomial (no 1/|G|
/// normalization). Invariant under the group; spans, together with the other
/// monomial sums of its degree, the degree component of the invariant ring.
pub fn reynolds_orbit_sum(
    m: &Monomial,
    group: &MatrixGroup,
    budgets: &Budgets,
) -> Result<ExactPolynomial> {
    if m.degree() > budgets.reynolds_degree_cap {
        return Err(Error::CapExceeded {
            what: "reynolds degree",
            cap: budgets.reynolds_degree_cap as u64,
            got: m.degree() as u64,
        });
    }
    let base = ExactPolynomial::monomial(group.dim, m.clone(), Cyclotomic::one(group.scalar_order));
    let mut acc = ExactPolynomial::zero(group.dim, group.scalar_order);
    // Summing g . f over all g means substituting every group element once.
    for h in group.elements() {
        acc = acc.add(&act_on_polynomial(h, &base)?)?;
    }
    Ok(acc)
}

/// True iff p is fixed by every generator (hence by the group).
pub fn verify_invariance(p: &ExactPolynomial, group: &MatrixGroup) -> Result<bool> {
    for g in group.generators() {
        let idx = group
            .element_index(g)
            .expect("generator is in its own closure");
        let g_inv = group.inverse_of(idx);
        if act_on_polynomial(g_inv, p)? != *p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Permutation matrices of left multiplication on the group algebra basis
/// {delta_g}: h . delta_g = delta_{hg}. Rational entries (order 1).
pub fn build_regular_representation(spec: &GroupSpec, budgets: &Budgets) -> Result<MatrixGroup> {
    let n = spec.order() as usize;
    if n as u64 > budgets.closure_cap as u64 {
        return Err(Error::CapExceeded {
            what: "matrix group closure",
            cap: budgets.closure_cap as u64,
            got: n as u64,
        });
    }
    let mut generators = Vec::new();
    for i in 0..spec.rank() {
        let mut gen_res = vec![0i64; spec.rank()];
        gen_res[i] = 1;
        let h = GroupElement::new(spec, &gen_res)?;
        generators.push(permutation_matrix_of(&h, spec));
    }
    MatrixGroup::generate(generators, budgets)
}

/// The permutation matrix of left multiplication by `h` on {delta_g}.
pub fn permutation_matrix_of(h: &GroupElement, spec: &GroupSpec) -> Matrix {
    let n = spec.order() as usize;
    let mut rows = vec![vec![Cyclotomic::zero(1); n]; n];
    for g in enumerate_elements(spec) {
        let from = g.index(spec);
        let to = h.add(&g, spec).index(spec);
        rows[to][from] = Cyclotomic::one(1);
    }
    Matrix::from_rows(1, rows).expect("square by construction")
}

/// Companion-matrix irreducible representation attached to a character over
/// a non-closed field.
#[derive(Debug, Clone)]
pub struct IrreducibleRealForm {
    /// d_chi: order of the character.
    pub character_order: u64,
    /// ell_chi: degree of the minimal polynomial of w_{d_chi} over the field.
    pub dimension: usize,
    /// Lex-least group element on which chi attains its full order.
    pub g_chi: GroupElement,
    /// Minimal polynomial of w_{d_chi}, monic, coefficients fixed by Gamma.
    pub min_poly: Vec<Cyclotomic>,
    /// Companion matrix of the minimal polynomial.
    pub companion: Matrix,
    /// Images of the standard generators e_i of the group.
    pub generator_images: Vec<Matrix>,
}

/// Builds the irreducible representation of `spec` over the field described
/// by `field` attached to the Galois orbit of `chi`.
pub fn irreducible_real_form(
    chi: &Character,
    spec: &GroupSpec,
    field: &FieldDescriptor,
) -> Result<IrreducibleRealForm> {
    let e = spec.exponent();
    let d = character_order(chi, spec);
    let gamma = galois_group(field, spec)?;
    // Units of Gamma reduced mod d: the exponents of the Galois orbit of w_d.
    let mut exps: Vec<u64> = gamma.units().iter().map(|&k| k % d.max(1)).collect();
    exps.sort_unstable();
    exps.dedup();
    let ell = exps.len();

    // min poly = prod_{u in exps} (x - w_e^{(e/d) u}), computed over Q(w_e).
    let mut poly = vec![Cyclotomic::one(e)];
    for &u in &exps {
        let root = Cyclotomic::root_of_unity(e, e / d * u % e);
        // multiply poly by (x - root)
        let mut next = vec![Cyclotomic::zero(e); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c)?;
            next[i] = next[i].sub(&c.mul(&root)?)?;
        }
        poly = next;
    }
    // poly is monic of degree ell, low-to-high; coefficients are Gamma-fixed.
    debug_assert!(poly[ell].is_one());

    let mut rows = vec![vec![Cyclotomic::zero(e); ell]; ell];
    for i in 0..ell {
        if i + 1 < ell {
            rows[i + 1][i] = Cyclotomic::one(e);
        }
        rows[i][ell - 1] = poly[i].neg();
    }
    let companion = Matrix::from_rows(e, rows)?;

    // Lex-least g with chi(g) of multiplicative order d.
    let mut g_chi = GroupElement::identity(spec);
    for g in enumerate_elements(spec) {
        let t = pairing_exponent(chi, &g, spec);
        if e / num_integer::gcd(e, t) == d {
            g_chi = g;
            break;
        }
    }

    // Generator images: e_i maps to companion^{t_i} with w_d^{t_i} = chi(e_i).
    let mut generator_images = Vec::new();
    for i in 0..spec.rank() {
        let n_i = spec.orders()[i];
        let c_i = chi.residues()[i];
        let t_i = ((d as u128 * c_i as u128 / n_i as u128) % d.max(1) as u128) as u64;
        generator_images.push(companion.pow(t_i)?);
    }

    Ok(IrreducibleRealForm {
        character_order: d,
        dimension: ell,
        g_chi,
        min_poly: poly,
        companion,
        generator_images,
    })
}

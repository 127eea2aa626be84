//! Finite abelian groups as products of cyclic groups, their elements,
//! characters, and the character pairing into roots of unity.
//!
//! The character group is identified with the group itself through the
//! self-duality of a product of cyclic groups: both elements and characters
//! are residue vectors, and the pairing is a dot-product formula.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// A finite abelian group Z/n_1 x ... x Z/n_r.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    orders: Vec<u64>,
}

pub const DEFAULT_GROUP_ORDER_CAP: u64 = 10_000;

impl GroupSpec {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        Self::with_cap(orders, DEFAULT_GROUP_ORDER_CAP)
    }

    pub fn with_cap(orders: Vec<u64>, cap: u64) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Invalid(
                "group spec needs at least one factor".into(),
            ));
        }
        if orders.contains(&0) {
            return Err(Error::Invalid("cyclic factor orders must be >= 1".into()));
        }
        let mut total: u64 = 1;
        for &n in &orders {
            total = total.checked_mul(n).ok_or(Error::CapExceeded {
                what: "group order",
                cap,
                got: u64::MAX,
            })?;
            if total > cap {
                return Err(Error::CapExceeded {
                    what: "group order",
                    cap,
                    got: total,
                });
            }
        }
        Ok(GroupSpec { orders })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// exp(G) = lcm of the cyclic factor orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| a.lcm(&b))
    }
}

/// Reduces a residue vector componentwise; errors on rank mismatch.
fn reduce_residues(spec: &GroupSpec, residues: &[i64]) -> Result<Vec<u64>> {
    if residues.len() != spec.rank() {
        return Err(Error::DimensionMismatch {
            expected: spec.rank(),
            got: residues.len(),
        });
    }
    Ok(residues
        .iter()
        .zip(spec.orders())
        .map(|(&r, &n)| r.rem_euclid(n as i64) as u64)
        .collect())
}

macro_rules! residue_vector_type {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub struct $name {
            residues: Vec<u64>,
        }

        impl $name {
            pub fn new(spec: &GroupSpec, residues: &[i64]) -> Result<Self> {
                Ok(Self {
                    residues: reduce_residues(spec, residues)?,
                })
            }

            pub fn identity(spec: &GroupSpec) -> Self {
                Self {
                    residues: vec![0; spec.rank()],
                }
            }

            pub fn residues(&self) -> &[u64] {
                &self.residues
            }

            pub fn is_identity(&self) -> bool {
                self.residues.iter().all(|&r| r == 0)
            }

            pub fn add(&self, other: &Self, spec: &GroupSpec) -> Self {
                let residues = self
                    .residues
                    .iter()
                    .zip(&other.residues)
                    .zip(spec.orders())
                    .map(|((&a, &b), &n)| (a + b) % n)
                    .collect();
                Self { residues }
            }

            pub fn neg(&self, spec: &GroupSpec) -> Self {
                let residues = self
                    .residues
                    .iter()
                    .zip(spec.orders())
                    .map(|(&a, &n)| (n - a) % n)
                    .collect();
                Self { residues }
            }

            /// k-fold sum, with k taken mod the componentwise orders.
            pub fn scale(&self, k: u64, spec: &GroupSpec) -> Self {
                let residues = self
                    .residues
                    .iter()
                    .zip(spec.orders())
                    .map(|(&a, &n)| ((a as u128 * k as u128) % n as u128) as u64)
                    .collect();
                Self { residues }
            }

            /// Position in the lexicographic enumeration (last coordinate fastest).
            pub fn index(&self, spec: &GroupSpec) -> usize {
                let mut idx: usize = 0;
                for (&r, &n) in self.residues.iter().zip(spec.orders()) {
                    idx = idx * n as usize + r as usize;
                }
                idx
            }

            pub fn from_index(spec: &GroupSpec, index: usize) -> Self {
                let mut idx = index;
                let mut residues = vec![0u64; spec.rank()];
                for i in (0..spec.rank()).rev() {
                    let n = spec.orders()[i] as usize;
                    residues[i] = (idx % n) as u64;
                    idx /= n;
                }
                Self { residues }
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "(")?;
                for (i, r) in self.residues.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    };
}

residue_vector_type!(GroupElement);
residue_vector_type!(Character);

/// chi(g) as a root of unity in Q(w_e), e = exp(G).
///
/// The exponent is t = sum_i (e/n_i) * chi_i * g_i mod e, making the pairing
/// bilinear: pairing(chi, g1 + g2) = pairing(chi, g1) * pairing(chi, g2).
pub fn pairing(chi: &Character, g: &GroupElement, spec: &GroupSpec) -> Result<Cyclotomic> {
    if chi.residues().len() != spec.rank() || g.residues().len() != spec.rank() {
        return Err(Error::DimensionMismatch {
            expected: spec.rank(),
            got: chi.residues().len().max(g.residues().len()),
        });
    }
    let e = spec.exponent();
    Ok(Cyclotomic::root_of_unity(e, pairing_exponent(chi, g, spec)))
}

/// The exponent t with chi(g) = w_e^t.
pub fn pairing_exponent(chi: &Character, g: &GroupElement, spec: &GroupSpec) -> u64 {
    let e = spec.exponent();
    let mut t: u128 = 0;
    for ((&c, &x), &n) in chi.residues().iter().zip(g.residues()).zip(spec.orders()) {
        t += (e / n) as u128 * c as u128 % e as u128 * x as u128 % e as u128;
    }
    (t % e as u128) as u64
}

/// Multiplicative order of chi in the character group.
pub fn character_order(chi: &Character, spec: &GroupSpec) -> u64 {
    chi.residues()
        .iter()
        .zip(spec.orders())
        .map(|(&c, &n)| n / n.gcd(&c))
        .fold(1u64, |a, b| a.lcm(&b))
}

/// All |G| characters in lexicographic residue order.
pub fn enumerate_characters(spec: &GroupSpec) -> Vec<Character> {
    (0..spec.order() as usize)
        .map(|i| Character::from_index(spec, i))
        .collect()
}

/// All |G| elements in lexicographic residue order.
pub fn enumerate_elements(spec: &GroupSpec) -> Vec<GroupElement> {
    (0..spec.order() as usize)
        .map(|i| GroupElement::from_index(spec, i))
        .collect()
}

/// Group automorphism given by the images of the standard generators e_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAutomorphism {
    gen_images: Vec<Character>,
}

impl GroupAutomorphism {
    pub fn apply(&self, chi: &Character, spec: &GroupSpec) -> Character {
        let mut out = Character::identity(spec);
        for (&r, img) in chi.residues().iter().zip(&self.gen_images) {
            out = out.add(&img.scale(r, spec), spec);
        }
        out
    }
}

/// All automorphisms of the abelian group, by brute force over generator
/// images. Intended for small groups (|G| <= a few hundred).
pub fn enumerate_automorphisms(spec: &GroupSpec) -> Vec<GroupAutomorphism> {
    let chars = enumerate_characters(spec);
    let rank = spec.rank();
    let order = spec.order() as usize;
    let mut out = Vec::new();
    let mut images = vec![0usize; rank];
    'outer: loop {
        let gen_images: Vec<Character> = images.iter().map(|&i| chars[i].clone()).collect();
        // Candidate must respect the relations n_i * e_i = 0: the image of e_i
        // must have order dividing n_i.
        let respects = gen_images
            .iter()
            .zip(spec.orders())
            .all(|(img, &n)| img.scale(n, spec).is_identity());
        if respects {
            let cand = GroupAutomorphism { gen_images };
            let mut seen = vec![false; order];
            let mut bijective = true;
            for chi in &chars {
                let idx = cand.apply(chi, spec).index(spec);
                if seen[idx] {
                    bijective = false;
                    break;
                }
                seen[idx] = true;
            }
            if bijective {
                out.push(cand);
            }
        }
        for i in (0..rank).rev() {
            images[i] += 1;
            if images[i] < order {
                continue 'outer;
            }
            images[i] = 0;
        }
        break;
    }
    out
}

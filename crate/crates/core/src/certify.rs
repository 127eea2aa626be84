//! Certification of separating degree bounds.
//!
//! For a degree d, the check runs over every Galois-stable subset I of the
//! character group: the integer span of the length-<=d block elements
//! supported in I must contain the whole kernel lattice A_I of the
//! character-sum map. The kernel lattice equals the integer span of the
//! block elements supported in I (an identity validated against brute-force
//! enumeration in the test suite), so containment of its basis vectors is
//! equivalent to containment of every block element.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blockmonoid::{build_s, enumerate_block_elements, is_product_one, restrict, ZSequence};
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::galois::{galois_group, orbit_partition, stable_subsets, FieldDescriptor};
use crate::group::{Character, GroupSpec};
use crate::lattice::{kernel_basis, lattice_of_sequences};
use crate::parse::{field_to_string, group_to_string, parse_field_descriptor, parse_group_spec};

/// Per-subset record of the condition check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetEvidence {
    /// Bitmask over the orbit partition (bit i = orbit i).
    pub orbit_mask: u64,
    /// Sorted character indices of the subset.
    pub subset: Vec<usize>,
    /// Kernel lattice basis, in full character coordinates.
    pub kernel_vectors: Vec<Vec<i64>>,
    /// HNF rows of the span of the degree-bounded block elements in the subset.
    pub hnf: Vec<Vec<i64>>,
    /// Whether every kernel vector lies in the span.
    pub contained: bool,
    /// A kernel vector outside the span, when `contained` is false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
}

/// Evidence that degree-d block monomials separate orbits over the field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub group: GroupSpec,
    pub field: FieldDescriptor,
    pub degree: u64,
    pub orbits: Vec<Vec<usize>>,
    pub subsets: Vec<SubsetEvidence>,
    pub valid: bool,
}

impl SeparationCertificate {
    /// The lex-least failing subset, if any.
    pub fn first_failure(&self) -> Option<&SubsetEvidence> {
        self.subsets.iter().find(|s| !s.contained)
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateWire {
    group: String,
    field: String,
    degree: u64,
    orbits: Vec<Vec<usize>>,
    subsets: Vec<SubsetEvidence>,
    valid: bool,
}

impl Serialize for SeparationCertificate {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        CertificateWire {
            group: group_to_string(&self.group),
            field: field_to_string(&self.field),
            degree: self.degree,
            orbits: self.orbits.clone(),
            subsets: self.subsets.clone(),
            valid: self.valid,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SeparationCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = CertificateWire::deserialize(deserializer)?;
        let group = parse_group_spec(&wire.group).map_err(|e| D::Error::custom(e.to_string()))?;
        let field =
            parse_field_descriptor(&wire.field).map_err(|e| D::Error::custom(e.to_string()))?;
        Ok(SeparationCertificate {
            group,
            field,
            degree: wire.degree,
            orbits: wire.orbits,
            subsets: wire.subsets,
            valid: wire.valid,
        })
    }
}

fn check_subset(
    mask: u64,
    subset: Vec<usize>,
    blocks: &[ZSequence],
    spec: &GroupSpec,
) -> Result<SubsetEvidence> {
    let dim = spec.order() as usize;
    let restricted = restrict(blocks, &subset);
    let span = lattice_of_sequences(dim, &restricted)?;
    let kernel = kernel_basis(&subset, spec)?;
    let mut witness = None;
    for v in kernel.basis() {
        if !span.contains_i64(v)? {
            witness = Some(v.clone());
            break;
        }
    }
    let hnf: Vec<Vec<i64>> = span
        .hnf_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow(format!("hnf entry {x}"))))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(SubsetEvidence {
        orbit_mask: mask,
        subset,
        kernel_vectors: kernel.basis().to_vec(),
        hnf,
        contained: witness.is_none(),
        witness,
    })
}

/// Checks condition (*) at degree `d`: for every Galois-stable subset I, the
/// integer span of the degree-<=d block elements supported in I contains the
/// kernel lattice of I.
pub fn check_condition_star(
    spec: &GroupSpec,
    field: &FieldDescriptor,
    degree: u64,
    budgets: &Budgets,
) -> Result<SeparationCertificate> {
    let gamma = galois_group(field, spec)?;
    let partition = orbit_partition(&gamma, spec);
    let blocks = enumerate_block_elements(spec, degree, budgets)?;
    let subsets: Vec<(u64, Vec<usize>)> = stable_subsets(&partition, budgets.orbit_cap)?.collect();

    let evidence: Vec<SubsetEvidence> = if budgets.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(budgets.workers)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
        pool.install(|| {
            subsets
                .into_par_iter()
                .map(|(mask, subset)| check_subset(mask, subset, &blocks, spec))
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        subsets
            .into_iter()
            .map(|(mask, subset)| check_subset(mask, subset, &blocks, spec))
            .collect::<Result<Vec<_>>>()?
    };
    // Masks ascend already (parallel collect preserves order); the first
    // failing entry is the lex-least failing subset.
    let valid = evidence.iter().all(|e| e.contained);
    Ok(SeparationCertificate {
        group: spec.clone(),
        field: field.clone(),
        degree,
        orbits: partition.orbits().to_vec(),
        subsets: evidence,
        valid,
    })
}

/// One failing degree on the way to the certified bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeFailure {
    pub degree: u64,
    pub orbit_mask: u64,
    pub subset: Vec<usize>,
    pub witness: Option<Vec<i64>>,
}

/// Searches degrees 1..=|G| upward and returns the first passing degree with
/// its certificate, plus the failing-witness trail below it.
///
/// Degree |G| always passes: every atom of the block monoid has length at
/// most the Davenport constant, which is bounded by |G|.
pub fn minimal_certified_degree(
    spec: &GroupSpec,
    field: &FieldDescriptor,
    budgets: &Budgets,
) -> Result<(u64, SeparationCertificate, Vec<DegreeFailure>)> {
    let mut trail = Vec::new();
    for d in 1..=spec.order() {
        let cert = check_condition_star(spec, field, d, budgets)?;
        if cert.valid {
            return Ok((d, cert, trail));
        }
        let fail = cert
            .first_failure()
            .expect("invalid certificate has a failure");
        trail.push(DegreeFailure {
            degree: d,
            orbit_mask: fail.orbit_mask,
            subset: fail.subset.clone(),
            witness: fail.witness.clone(),
        });
    }
    unreachable!("degree |G| always certifies");
}

/// Re-validates a certificate from its own evidence, without re-running the
/// block-element enumeration: masks must match the orbit partition, kernel
/// vectors must be product-one, supported in their subset, and contained in
/// the recorded HNF span exactly when flagged.
pub fn recheck_certificate(cert: &SeparationCertificate, budgets: &Budgets) -> Result<bool> {
    let gamma = galois_group(&cert.field, &cert.group)?;
    let partition = orbit_partition(&gamma, &cert.group);
    if partition.orbits() != cert.orbits.as_slice() {
        return Ok(false);
    }
    if partition.len() > budgets.orbit_cap {
        return Err(Error::TooManyOrbits {
            orbits: partition.len(),
            cap: budgets.orbit_cap,
        });
    }
    if cert.subsets.len() != 1usize << partition.len() {
        return Ok(false);
    }
    let dim = cert.group.order() as usize;
    for (expected_mask, ev) in cert.subsets.iter().enumerate() {
        if ev.orbit_mask != expected_mask as u64 {
            return Ok(false);
        }
        if ev.subset != partition.subset_for_mask(ev.orbit_mask) {
            return Ok(false);
        }
        let rows: Vec<Vec<BigInt>> = ev
            .hnf
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let span = crate::lattice::hermite_normal_form(dim, &rows)?;
        // The span rows themselves must be supported in the subset and
        // product-one (integer combinations of block elements are).
        for row in ev.hnf.iter().chain(&ev.kernel_vectors) {
            if row.len() != dim {
                return Ok(false);
            }
            let z = ZSequence::from_values(row.clone());
            if !z.supported_in(&ev.subset) || !is_product_one(&z, &cert.group) {
                return Ok(false);
            }
        }
        let fresh_kernel = kernel_basis(&ev.subset, &cert.group)?;
        if fresh_kernel.basis() != ev.kernel_vectors.as_slice() {
            return Ok(false);
        }
        let mut all_in = true;
        for v in &ev.kernel_vectors {
            if !span.contains_i64(v)? {
                all_in = false;
                break;
            }
        }
        if all_in != ev.contained {
            return Ok(false);
        }
        if let Some(w) = &ev.witness {
            if ev.contained || span.contains_i64(w)? {
                return Ok(false);
            }
        }
    }
    let valid = cert.subsets.iter().all(|e| e.contained);
    Ok(valid == cert.valid)
}

/// A decomposition of a product-one integer sequence over the set S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SDecomposition {
    pub target: ZSequence,
    pub terms: Vec<(i64, ZSequence)>,
}

impl SDecomposition {
    /// Exact recombination of the stored terms.
    pub fn recombine(&self) -> ZSequence {
        let mut acc = ZSequence::zero(self.target.len());
        for (c, el) in &self.terms {
            acc = acc.add(&el.scale(*c));
        }
        acc
    }
}

/// Decomposes a product-one sequence (any signs) into an integer combination
/// of elements of S, by induction on the length.
///
/// Strategy per step, mirroring the length induction: strip multiples of the
/// trivial-character delta; a length-2 remainder is (+-) an inverse pair; a
/// longer remainder gives up a triple delta_g + delta_h + delta_((gh)^-1)
/// from its dominant sign side, falling back to the inverse pair
/// delta_g + delta_(g^-1) when every available product gh is trivial.
pub fn decompose_into_s(s: &ZSequence, spec: &GroupSpec) -> Result<SDecomposition> {
    let n = spec.order() as usize;
    if s.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: s.len(),
        });
    }
    if !is_product_one(s, spec) {
        return Err(Error::NotProductOne);
    }
    let mut acc: std::collections::BTreeMap<ZSequence, i64> = std::collections::BTreeMap::new();
    let mut rest = s.clone();
    while !rest.is_zero() {
        let before = rest.length();
        let (coeff, element) = next_step(&rest, spec);
        debug_assert!(is_product_one(&element, spec));
        rest = rest.sub(&element.scale(coeff));
        *acc.entry(element).or_insert(0) += coeff;
        debug_assert!(rest.length() < before, "length must strictly decrease");
    }
    let terms: Vec<(i64, ZSequence)> = acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(el, c)| (c, el))
        .collect();
    let dec = SDecomposition {
        target: s.clone(),
        terms,
    };
    debug_assert_eq!(dec.recombine(), *s);
    Ok(dec)
}

/// One induction step: a coefficient and an S-element to subtract.
fn next_step(rest: &ZSequence, spec: &GroupSpec) -> (i64, ZSequence) {
    let n = rest.len();
    // Trivial-character coefficient first.
    if rest.get(0) != 0 {
        return (rest.get(0).signum(), ZSequence::delta(n, 0));
    }
    let pos_total: i64 = rest.values().iter().filter(|&&v| v > 0).sum();
    // Length 2 with no trivial part: rest = +-(delta_chi + delta_(chi^-1)).
    if rest.length() == 2 {
        let sign = if pos_total > 0 { 1 } else { -1 };
        let support = rest.support();
        let i = support[0];
        let chi = Character::from_index(spec, i);
        let inv = chi.neg(spec).index(spec);
        let pair = ZSequence::delta(n, i).add(&ZSequence::delta(n, inv));
        return (sign, pair);
    }
    // Length >= 3: work on the side with at least two entries (counted with
    // multiplicity).
    let sign = if pos_total >= 2 { 1 } else { -1 };
    let side: Vec<usize> = rest
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| if sign > 0 { v > 0 } else { v < 0 })
        .map(|(i, _)| i)
        .collect();
    // Prefer an inverse pair {g, g^-1} available on this side.
    for &i in &side {
        let chi = Character::from_index(spec, i);
        let inv = chi.neg(spec).index(spec);
        let available = if inv == i {
            rest.get(i).abs() >= 2
        } else {
            side.binary_search(&inv).is_ok()
        };
        if available {
            let pair = ZSequence::delta(n, i).add(&ZSequence::delta(n, inv));
            return (sign, pair);
        }
    }
    // Otherwise some g, h (with multiplicity) on the side has gh nontrivial.
    for (a_pos, &i) in side.iter().enumerate() {
        let gi = Character::from_index(spec, i);
        for &j in &side[a_pos..] {
            if i == j && rest.get(i).abs() < 2 {
                continue;
            }
            let gj = Character::from_index(spec, j);
            let prod = gi.add(&gj, spec);
            if prod.is_identity() {
                continue;
            }
            let third = prod.neg(spec).index(spec);
            let triple = ZSequence::delta(n, i)
                .add(&ZSequence::delta(n, j))
                .add(&ZSequence::delta(n, third));
            return (sign, triple);
        }
    }
    unreachable!("a side of total >= 2 with no inverse pair admits a nontrivial product");
}

/// The monomial exponents T = {x^s : s in S}; all nonnegative, degree <= 3.
pub fn build_t(spec: &GroupSpec) -> Vec<ZSequence> {
    build_s(spec).elements
}

//! The Galois group of K = F(w) over F as a unit subgroup of (Z/exp(G))^*,
//! its action on the character group, and enumeration of stable subsets.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Character, GroupSpec};

/// Description of the base field F, reduced to what determines the Galois
/// group of F(w_exp(G)) over F.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldDescriptor {
    /// F = Q: the full unit group (Z/e)^*.
    Rationals,
    /// F = R: {+-1 mod e}, generated by complex conjugation.
    Reals,
    /// F already contains all exp(G)-th roots of unity (e.g. F = C): trivial group.
    ContainsAllRoots,
    /// Explicit unit residues mod exp(G); closed under multiplication after
    /// the closure is taken.
    ExplicitUnits(Vec<u64>),
}

impl std::fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Reals => write!(f, "R"),
            FieldDescriptor::ContainsAllRoots => write!(f, "C"),
            FieldDescriptor::ExplicitUnits(us) => {
                write!(f, "units:")?;
                for (i, u) in us.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{u}")?;
                }
                Ok(())
            }
        }
    }
}

/// Subgroup of (Z/modulus)^* acting on characters by chi -> chi^k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisGroup {
    modulus: u64,
    units: Vec<u64>,
}

impl GaloisGroup {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Sorted unit residues; always contains the identity.
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The residue of complex conjugation, -1 mod modulus.
    pub fn conjugation_unit(&self) -> u64 {
        (self.modulus - 1) % self.modulus
    }

    pub fn contains(&self, unit: u64) -> bool {
        self.units.binary_search(&(unit % self.modulus)).is_ok()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn closure_of_units(modulus: u64, seed: &[u64]) -> Result<Vec<u64>> {
    let identity = 1 % modulus;
    let mut set = std::collections::BTreeSet::new();
    set.insert(identity);
    for &u in seed {
        let u = u % modulus;
        if u.gcd(&modulus) != 1 {
            return Err(Error::NonUnitResidue {
                residue: u,
                modulus,
            });
        }
        set.insert(u);
    }
    // Multiplicative closure; inverses come for free in a finite group.
    loop {
        let snapshot: Vec<u64> = set.iter().copied().collect();
        let before = set.len();
        for &a in &snapshot {
            for &b in &snapshot {
                set.insert(mul_mod(a, b, modulus));
            }
        }
        if set.len() == before {
            break;
        }
    }
    Ok(set.into_iter().collect())
}

/// The Galois group of F(w_e) over F for e = exp(G).
pub fn galois_group(field: &FieldDescriptor, spec: &GroupSpec) -> Result<GaloisGroup> {
    let e = spec.exponent();
    let units = match field {
        FieldDescriptor::Rationals => (0..e.max(1)).filter(|&k| k.gcd(&e) == 1).collect(),
        FieldDescriptor::Reals => {
            let mut us = vec![1 % e];
            let conj = (e - 1) % e;
            if conj != 1 % e {
                us.push(conj);
            }
            us.sort_unstable();
            us
        }
        FieldDescriptor::ContainsAllRoots => vec![1 % e],
        FieldDescriptor::ExplicitUnits(seed) => closure_of_units(e, seed)?,
    };
    Ok(GaloisGroup { modulus: e, units })
}

/// Partition of character indices into Galois orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    /// Disjoint sorted index lists, ordered by least member.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// The sorted union of the orbits selected by `mask` (bit i = orbit i).
    pub fn subset_for_mask(&self, mask: u64) -> Vec<usize> {
        let mut subset = Vec::new();
        for (i, orbit) in self.orbits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                subset.extend_from_slice(orbit);
            }
        }
        subset.sort_unstable();
        subset
    }
}

/// Orbits of the action chi -> chi^k on the character group, k over the units.
///
/// Deterministic: the orbit of the lexicographically least unvisited
/// character comes first.
pub fn orbit_partition(gamma: &GaloisGroup, spec: &GroupSpec) -> OrbitPartition {
    let n = spec.order() as usize;
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let chi = Character::from_index(spec, start);
        let mut orbit: Vec<usize> = gamma
            .units()
            .iter()
            .map(|&k| chi.scale(k, spec).index(spec))
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &i in &orbit {
            seen[i] = true;
        }
        orbits.push(orbit);
    }
    OrbitPartition { orbits }
}

/// Iterator over all unions of orbits, by ascending bitmask.
pub struct StableSubsets<'a> {
    partition: &'a OrbitPartition,
    next_mask: u64,
    end: u64,
}

impl<'a> Iterator for StableSubsets<'a> {
    type Item = (u64, Vec<usize>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next_mask >= self.end {
            return None;
        }
        let mask = self.next_mask;
        self.next_mask += 1;
        Some((mask, self.partition.subset_for_mask(mask)))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next_mask) as usize;
        (left, Some(left))
    }
}

/// All 2^(#orbits) Galois-stable subsets of the character group.
pub fn stable_subsets<'a>(
    partition: &'a OrbitPartition,
    orbit_cap: usize,
) -> Result<StableSubsets<'a>> {
    let k = partition.len();
    if k > orbit_cap {
        return Err(Error::TooManyOrbits {
            orbits: k,
            cap: orbit_cap,
        });
    }
    Ok(StableSubsets {
        partition,
        next_mask: 0,
        end: 1u64 << k,
    })
}

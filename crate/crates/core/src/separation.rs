//! Orbit separation for the regular representation of an abelian group (in
//! the character basis) and for general exact matrix groups (via Reynolds
//! orbit sums), plus the degree-3 torus criterion.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::blockmonoid::{enumerate_block_elements, ZSequence};
use crate::budget::Budgets;
use crate::cyclotomic::{Cyclotomic, GaloisAutomorphism};
use crate::error::{Error, Result};
use crate::galois::GaloisGroup;
use crate::group::{enumerate_characters, enumerate_elements, pairing_exponent, GroupSpec};
use crate::matgroup::MatrixGroup;
use crate::parse::format_zsequence;
use crate::poly::{monomials_up_to_degree, Monomial};
use crate::rational::Rational;

/// Point of the regular representation in the group-element basis {delta_g}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointInGroupBasis {
    pub coords: Vec<Rational>,
}

impl PointInGroupBasis {
    pub fn new(coords: Vec<Rational>) -> Self {
        PointInGroupBasis { coords }
    }

    pub fn from_integers(v: &[i64]) -> Self {
        PointInGroupBasis {
            coords: v
                .iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        PointInGroupBasis {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// The translate h . v with (h . v)_g = v_{h^-1 g}.
    pub fn translate(&self, h: &crate::group::GroupElement, spec: &GroupSpec) -> Self {
        let h_inv = h.neg(spec);
        let coords = enumerate_elements(spec)
            .iter()
            .map(|g| self.coords[h_inv.add(g, spec).index(spec)].clone())
            .collect();
        PointInGroupBasis { coords }
    }
}

/// Point in the character basis {e_chi}; coordinates live in Q(w_exp(G)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointInCharacterBasis {
    pub order: u64,
    pub coords: Vec<Cyclotomic>,
}

/// Exact discrete Fourier transform: c_chi = sum_g chi(g) v_g.
pub fn to_character_basis(
    v: &PointInGroupBasis,
    spec: &GroupSpec,
) -> Result<PointInCharacterBasis> {
    let n = spec.order() as usize;
    if v.coords.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.coords.len(),
        });
    }
    let e = spec.exponent();
    let elements = enumerate_elements(spec);
    let coords = enumerate_characters(spec)
        .iter()
        .map(|chi| {
            let mut acc = Cyclotomic::zero(e);
            for (g, vg) in elements.iter().zip(&v.coords) {
                if vg.is_zero() {
                    continue;
                }
                let root = Cyclotomic::root_of_unity(e, pairing_exponent(chi, g, spec));
                acc = acc.add(&root.scale(vg))?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PointInCharacterBasis { order: e, coords })
}

/// Inverse transform: v_g = (1/|G|) sum_chi chi(g)^-1 c_chi. Errors when the
/// result does not descend to rational coordinates.
pub fn from_character_basis(
    c: &PointInCharacterBasis,
    spec: &GroupSpec,
) -> Result<PointInGroupBasis> {
    let n = spec.order() as usize;
    if c.coords.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: c.coords.len(),
        });
    }
    let e = spec.exponent();
    let chars = enumerate_characters(spec);
    let scale = Rational::new(BigInt::from(1), BigInt::from(spec.order()));
    let mut coords = Vec::with_capacity(n);
    for g in enumerate_elements(spec) {
        let g_inv = g.neg(spec);
        let mut acc = Cyclotomic::zero(e);
        for (chi, cx) in chars.iter().zip(&c.coords) {
            if cx.is_zero() {
                continue;
            }
            let root = Cyclotomic::root_of_unity(e, pairing_exponent(chi, &g_inv, spec));
            acc = acc.add(&root.mul(cx)?)?;
        }
        let val = acc.scale(&scale);
        match val.as_rational() {
            Some(q) => coords.push(q),
            None => {
                return Err(Error::Invalid(
                    "character-basis point does not descend to the rational subspace".into(),
                ))
            }
        }
    }
    Ok(PointInGroupBasis { coords })
}

/// Galois compatibility c_{k.psi} = sigma_k(c_psi) for every unit k: exactly
/// the condition for the point to lie in the F-rational subspace.
pub fn verify_galois_compatibility(
    c: &PointInCharacterBasis,
    gamma: &GaloisGroup,
    spec: &GroupSpec,
) -> Result<bool> {
    let chars = enumerate_characters(spec);
    for &k in gamma.units() {
        let sigma = GaloisAutomorphism::new(c.order, k)?;
        for (chi, cx) in chars.iter().zip(&c.coords) {
            let moved = chi.scale(k, spec).index(spec);
            if c.coords[moved] != sigma.apply(cx)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// prod_psi c_psi^{b(psi)} for a nonnegative exponent sequence.
pub fn eval_monomial(b: &ZSequence, c: &PointInCharacterBasis) -> Result<Cyclotomic> {
    if b.len() != c.coords.len() {
        return Err(Error::DimensionMismatch {
            expected: c.coords.len(),
            got: b.len(),
        });
    }
    if !b.is_nonnegative() {
        return Err(Error::Invalid(
            "monomial exponents must be nonnegative".into(),
        ));
    }
    let mut acc = Cyclotomic::one(c.order);
    for (x, &e) in c.coords.iter().zip(b.values()) {
        if e > 0 {
            acc = acc.mul(&x.pow(e as u64)?)?;
        }
    }
    Ok(acc)
}

/// Orbit equality under the regular action, by enumerating all |G| translates.
pub fn same_orbit_regular(v: &PointInGroupBasis, w: &PointInGroupBasis, spec: &GroupSpec) -> bool {
    enumerate_elements(spec)
        .iter()
        .any(|h| v.translate(h, spec) == *w)
}

/// Orbit equality under the diagonal action g . c_chi = chi(g) c_chi in the
/// character basis.
pub fn same_orbit_character(
    v: &PointInCharacterBasis,
    w: &PointInCharacterBasis,
    spec: &GroupSpec,
) -> Result<bool> {
    let chars = enumerate_characters(spec);
    for g in enumerate_elements(spec) {
        let mut all = true;
        for (chi, (cv, cw)) in chars.iter().zip(v.coords.iter().zip(&w.coords)) {
            let root = Cyclotomic::root_of_unity(v.order, pairing_exponent(chi, &g, spec));
            if root.mul(cv)? != *cw {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Orbit equality under a matrix group, by full orbit enumeration.
pub fn same_orbit_matrix(v: &[Cyclotomic], w: &[Cyclotomic], group: &MatrixGroup) -> Result<bool> {
    for m in group.elements() {
        if m.apply(v)? == w {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The invariant that witnessed separation, with both values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparatingWitness {
    /// x^b in the character basis; rendered with the group's characters.
    BlockMonomial {
        exponents: ZSequence,
        description: String,
        value_v: Cyclotomic,
        value_w: Cyclotomic,
    },
    /// Group sum of a monomial in the matrix-action coordinates.
    OrbitSumMonomial {
        monomial: Monomial,
        description: String,
        value_v: Cyclotomic,
        value_w: Cyclotomic,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationOutcome {
    pub degree: u64,
    pub separated: bool,
    pub witness: Option<SeparatingWitness>,
}

/// Degree-d separation test for the regular representation: evaluates x^b
/// over all block elements b with |b| <= d in the character basis and
/// reports the first difference in (length, lex) order.
pub fn separated_by_degree_regular(
    v: &PointInGroupBasis,
    w: &PointInGroupBasis,
    spec: &GroupSpec,
    degree: u64,
    budgets: &Budgets,
) -> Result<SeparationOutcome> {
    let cv = to_character_basis(v, spec)?;
    let cw = to_character_basis(w, spec)?;
    for b in enumerate_block_elements(spec, degree, budgets)? {
        let xv = eval_monomial(&b, &cv)?;
        let xw = eval_monomial(&b, &cw)?;
        if xv != xw {
            let description = format!("x^[{}]", format_zsequence(&b, spec));
            return Ok(SeparationOutcome {
                degree,
                separated: true,
                witness: Some(SeparatingWitness::BlockMonomial {
                    exponents: b,
                    description,
                    value_v: xv,
                    value_w: xw,
                }),
            });
        }
    }
    Ok(SeparationOutcome {
        degree,
        separated: false,
        witness: None,
    })
}

/// Degree-d separation test for a matrix group: compares the group sums of
/// every monomial of degree <= d on both points, in graded-lex order.
///
/// The sum over the group of g . m evaluated at v equals the sum of m over
/// the orbit points of v, which is how it is computed here.
pub fn separated_by_degree_matrix(
    v: &[Cyclotomic],
    w: &[Cyclotomic],
    group: &MatrixGroup,
    degree: u64,
    budgets: &Budgets,
) -> Result<SeparationOutcome> {
    if degree > budgets.reynolds_degree_cap as u64 {
        return Err(Error::CapExceeded {
            what: "reynolds degree",
            cap: budgets.reynolds_degree_cap as u64,
            got: degree,
        });
    }
    let orbit_v: Vec<Vec<Cyclotomic>> = group
        .elements()
        .iter()
        .map(|m| m.apply(v))
        .collect::<Result<_>>()?;
    let orbit_w: Vec<Vec<Cyclotomic>> = group
        .elements()
        .iter()
        .map(|m| m.apply(w))
        .collect::<Result<_>>()?;
    for m in monomials_up_to_degree(group.dim, degree as u32) {
        let sv = sum_monomial_over(&orbit_v, &m, group.scalar_order)?;
        let sw = sum_monomial_over(&orbit_w, &m, group.scalar_order)?;
        if sv != sw {
            let description = format!("orbit sum of {m}");
            return Ok(SeparationOutcome {
                degree,
                separated: true,
                witness: Some(SeparatingWitness::OrbitSumMonomial {
                    monomial: m,
                    description,
                    value_v: sv,
                    value_w: sw,
                }),
            });
        }
    }
    Ok(SeparationOutcome {
        degree,
        separated: false,
        witness: None,
    })
}

fn sum_monomial_over(points: &[Vec<Cyclotomic>], m: &Monomial, order: u64) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::zero(order);
    for p in points {
        let mut term = Cyclotomic::one(order);
        for (x, &e) in p.iter().zip(&m.0) {
            if e > 0 {
                term = term.mul(&x.pow(e as u64)?)?;
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Torus criterion: on points whose nontrivial coordinates are all nonzero,
/// agreement of the length-<=3 set T decides orbit equality.
pub fn verify_torus_separation(
    v: &PointInCharacterBasis,
    w: &PointInCharacterBasis,
    spec: &GroupSpec,
) -> Result<bool> {
    for point in [v, w] {
        for (idx, c) in point.coords.iter().enumerate().skip(1) {
            if c.is_zero() {
                return Err(Error::NotInTorus { index: idx });
            }
        }
    }
    for t in crate::certify::build_t(spec) {
        if eval_monomial(&t, v)? != eval_monomial(&t, w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;
    use crate::rational::{rat, rat_int};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c3() -> GroupSpec {
        GroupSpec::cyclic(3).unwrap()
    }

    #[test]
    fn dft_examples() {
        let spec = c3();
        // delta at identity -> all-ones vector
        let v = PointInGroupBasis::from_integers(&[1, 0, 0]);
        let c = to_character_basis(&v, &spec).unwrap();
        assert!(c.coords.iter().all(|x| x.is_one()));

        // all-ones -> (|G|, 0, 0)
        let v = PointInGroupBasis::from_integers(&[1, 1, 1]);
        let c = to_character_basis(&v, &spec).unwrap();
        assert_eq!(c.coords[0], Cyclotomic::from_integer(3, 3));
        assert!(c.coords[1].is_zero());
        assert!(c.coords[2].is_zero());

        // delta_e - delta_g -> (0, 1 - w, 1 - w^2)
        let v = PointInGroupBasis::from_integers(&[1, -1, 0]);
        let c = to_character_basis(&v, &spec).unwrap();
        assert!(c.coords[0].is_zero());
        let one = Cyclotomic::one(3);
        assert_eq!(
            c.coords[1],
            one.sub(&Cyclotomic::root_of_unity(3, 1)).unwrap()
        );
        assert_eq!(
            c.coords[2],
            one.sub(&Cyclotomic::root_of_unity(3, 2)).unwrap()
        );
    }

    #[test]
    fn dft_roundtrip_random() {
        let mut rng = StdRng::seed_from_u64(11);
        for spec in [
            GroupSpec::cyclic(4).unwrap(),
            GroupSpec::new(vec![2, 2]).unwrap(),
            GroupSpec::new(vec![3, 3]).unwrap(),
        ] {
            let n = spec.order() as usize;
            for _ in 0..25 {
                let coords: Vec<Rational> = (0..n)
                    .map(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
                    .collect();
                let v = PointInGroupBasis::new(coords);
                let c = to_character_basis(&v, &spec).unwrap();
                let back = from_character_basis(&c, &spec).unwrap();
                assert_eq!(back, v);
            }
        }
    }

    #[test]
    fn galois_compatibility_detects_rational_points() {
        let spec = c3();
        let gamma =
            crate::galois::galois_group(&crate::galois::FieldDescriptor::Reals, &spec).unwrap();
        let v = PointInGroupBasis::from_integers(&[2, -1, 5]);
        let c = to_character_basis(&v, &spec).unwrap();
        assert!(verify_galois_compatibility(&c, &gamma, &spec).unwrap());

        // (0, 1-w, 1-w): second coordinate should be the conjugate 1-w^2.
        let one = Cyclotomic::one(3);
        let bad = PointInCharacterBasis {
            order: 3,
            coords: vec![
                Cyclotomic::zero(3),
                one.sub(&Cyclotomic::root_of_unity(3, 1)).unwrap(),
                one.sub(&Cyclotomic::root_of_unity(3, 1)).unwrap(),
            ],
        };
        assert!(!verify_galois_compatibility(&bad, &gamma, &spec).unwrap());

        let zero = PointInCharacterBasis {
            order: 3,
            coords: vec![Cyclotomic::zero(3); 3],
        };
        assert!(verify_galois_compatibility(&zero, &gamma, &spec).unwrap());
    }

    #[test]
    fn eval_monomial_example() {
        let spec = c3();
        let v = PointInGroupBasis::from_integers(&[1, -1, 0]);
        let c = to_character_basis(&v, &spec).unwrap();
        // x_chi * x_chi^2 evaluates to (1-w)(1-w^2) = 3
        let b = ZSequence::from_values(vec![0, 1, 1]);
        assert_eq!(
            eval_monomial(&b, &c).unwrap(),
            Cyclotomic::from_integer(3, 3)
        );
        // zero exponent -> 1
        let z = ZSequence::zero(3);
        assert!(eval_monomial(&z, &c).unwrap().is_one());
    }

    #[test]
    fn eval_constant_on_orbits() {
        let spec = GroupSpec::new(vec![2, 2]).unwrap();
        let b = Budgets::default();
        let blocks = enumerate_block_elements(&spec, 4, &b).unwrap();
        let v = PointInGroupBasis::from_integers(&[1, 2, -1, 3]);
        let cv = to_character_basis(&v, &spec).unwrap();
        for h in enumerate_elements(&spec) {
            let hv = v.translate(&h, &spec);
            let chv = to_character_basis(&hv, &spec).unwrap();
            for blk in &blocks {
                assert_eq!(
                    eval_monomial(blk, &cv).unwrap(),
                    eval_monomial(blk, &chv).unwrap()
                );
            }
        }
    }

    #[test]
    fn same_orbit_regular_examples() {
        let spec = GroupSpec::cyclic(4).unwrap();
        let v = PointInGroupBasis::from_integers(&[3, 4, -3, -4]);
        assert!(same_orbit_regular(&v, &v, &spec));
        let shifted = v.translate(&GroupElement::new(&spec, &[2]).unwrap(), &spec);
        assert!(same_orbit_regular(&v, &shifted, &spec));
        let w = PointInGroupBasis::from_integers(&[5, 0, -5, 0]);
        assert!(!same_orbit_regular(&v, &w, &spec));
    }

    #[test]
    fn separation_c4_paper_points() {
        let spec = GroupSpec::cyclic(4).unwrap();
        let b = Budgets::default();
        let v = PointInGroupBasis::from_integers(&[3, 4, -3, -4]);
        let w = PointInGroupBasis::from_integers(&[5, 0, -5, 0]);
        let at3 = separated_by_degree_regular(&v, &w, &spec, 3, &b).unwrap();
        assert!(!at3.separated);
        let at4 = separated_by_degree_regular(&v, &w, &spec, 4, &b).unwrap();
        assert!(at4.separated);
    }

    #[test]
    fn separation_completeness_at_group_order() {
        // not separated at |G| implies same orbit; separated implies different.
        let mut rng = StdRng::seed_from_u64(5);
        let b = Budgets::default();
        for spec in [
            GroupSpec::cyclic(2).unwrap(),
            GroupSpec::cyclic(3).unwrap(),
            GroupSpec::cyclic(4).unwrap(),
            GroupSpec::new(vec![2, 2]).unwrap(),
            GroupSpec::cyclic(5).unwrap(),
        ] {
            let n = spec.order() as usize;
            for trial in 0..30 {
                let v = PointInGroupBasis::from_integers(
                    &(0..n).map(|_| rng.gen_range(-2i64..=2)).collect::<Vec<_>>(),
                );
                // mix in known same-orbit pairs
                let w = if trial % 3 == 0 {
                    let h = GroupElement::from_index(&spec, rng.gen_range(0..n));
                    v.translate(&h, &spec)
                } else {
                    PointInGroupBasis::from_integers(
                        &(0..n).map(|_| rng.gen_range(-2i64..=2)).collect::<Vec<_>>(),
                    )
                };
                let outcome = separated_by_degree_regular(&v, &w, &spec, spec.order(), &b).unwrap();
                assert_eq!(
                    !outcome.separated,
                    same_orbit_regular(&v, &w, &spec),
                    "spec {spec:?} v {v:?} w {w:?}"
                );
            }
        }
    }

    #[test]
    fn torus_verification() {
        let spec = c3();
        let v = PointInGroupBasis::from_integers(&[1, -1, 0]);
        let cv = to_character_basis(&v, &spec).unwrap();
        // a translate agrees on T
        let hv = v.translate(&GroupElement::new(&spec, &[1]).unwrap(), &spec);
        let chv = to_character_basis(&hv, &spec).unwrap();
        assert!(verify_torus_separation(&cv, &chv, &spec).unwrap());

        // doubling fails: x_1 x_2 takes 3 vs 12
        let doubled = PointInCharacterBasis {
            order: 3,
            coords: cv.coords.iter().map(|c| c.scale(&rat_int(2))).collect(),
        };
        assert!(!verify_torus_separation(&cv, &doubled, &spec).unwrap());

        // precondition: nontrivial coordinates must be nonzero
        let all_ones = PointInGroupBasis::from_integers(&[1, 1, 1]);
        let bad = to_character_basis(&all_ones, &spec).unwrap();
        assert!(matches!(
            verify_torus_separation(&bad, &cv, &spec),
            Err(Error::NotInTorus { .. })
        ));
    }

    #[test]
    fn torus_agreement_iff_same_orbit_random() {
        let mut rng = StdRng::seed_from_u64(23);
        for spec in [
            c3(),
            GroupSpec::cyclic(4).unwrap(),
            GroupSpec::new(vec![2, 2]).unwrap(),
        ] {
            let n = spec.order() as usize;
            let mut tested = 0;
            while tested < 40 {
                let v = PointInGroupBasis::from_integers(
                    &(0..n).map(|_| rng.gen_range(-3i64..=3)).collect::<Vec<_>>(),
                );
                let cv = to_character_basis(&v, &spec).unwrap();
                if cv.coords.iter().skip(1).any(|c| c.is_zero()) {
                    continue;
                }
                let w = if tested % 2 == 0 {
                    let h = GroupElement::from_index(&spec, rng.gen_range(0..n));
                    v.translate(&h, &spec)
                } else {
                    PointInGroupBasis::from_integers(
                        &(0..n).map(|_| rng.gen_range(-3i64..=3)).collect::<Vec<_>>(),
                    )
                };
                let cw = to_character_basis(&w, &spec).unwrap();
                if cw.coords.iter().skip(1).any(|c| c.is_zero()) {
                    continue;
                }
                let agree = verify_torus_separation(&cv, &cw, &spec).unwrap();
                let same = same_orbit_character(&cv, &cw, &spec).unwrap();
                assert_eq!(agree, same);
                assert_eq!(same, same_orbit_regular(&v, &w, &spec));
                tested += 1;
            }
        }
    }

    #[test]
    fn support_lemma_property() {
        // x^m(v) != 0 iff supp(m) lies inside the union of Galois orbits
        // meeting the support of v.
        let mut rng = StdRng::seed_from_u64(31);
        let spec = GroupSpec::new(vec![3, 3]).unwrap();
        let field = crate::galois::FieldDescriptor::Reals;
        let gamma = crate::galois::galois_group(&field, &spec).unwrap();
        let part = crate::galois::orbit_partition(&gamma, &spec);
        let b = Budgets::default();
        let blocks = enumerate_block_elements(&spec, 4, &b).unwrap();
        for _ in 0..10 {
            let v = PointInGroupBasis::from_integers(
                &(0..9).map(|_| rng.gen_range(-3i64..=3)).collect::<Vec<_>>(),
            );
            let mut cv = to_character_basis(&v, &spec).unwrap();
            // kill a random set of orbits to shape the support
            for orbit in part.orbits() {
                if rng.gen_bool(0.4) {
                    for &i in orbit {
                        cv.coords[i] = Cyclotomic::zero(cv.order);
                    }
                }
            }
            assert!(verify_galois_compatibility(&cv, &gamma, &spec).unwrap());
            // within each orbit coordinates are all zero or all nonzero
            for orbit in part.orbits() {
                let zeros = orbit.iter().filter(|&&i| cv.coords[i].is_zero()).count();
                assert!(zeros == 0 || zeros == orbit.len());
            }
            let nonzero: Vec<usize> = (0..9).filter(|&i| !cv.coords[i].is_zero()).collect();
            for m in &blocks {
                let val = eval_monomial(m, &cv).unwrap();
                let inside = m.support().iter().all(|i| nonzero.contains(i));
                assert_eq!(!val.is_zero(), inside, "m = {m:?}");
            }
        }
    }
}

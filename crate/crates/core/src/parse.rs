//! Parsers for the external text surfaces: group specs (`C3xC3`), field
//! descriptors (`Q | R | C | units:k1,k2`), point CSVs of fraction strings,
//! and the sequence text form `2*(1,0)+2*(0,1)+1*(1,1)`.
//!
//! Every parser here is total over arbitrary input (errors, never panics);
//! they are the fuzzing entry points of the crate.

use crate::blockmonoid::ZSequence;
use crate::error::{Error, Result};
use crate::galois::FieldDescriptor;
use crate::group::{Character, GroupSpec};
use crate::rational::{format_rational, parse_rational, Rational};

/// `C3xC3`, `C5`, `C2xC4`; case-insensitive, `x` separated.
pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    parse_group_spec_with_cap(s, crate::group::DEFAULT_GROUP_ORDER_CAP)
}

pub fn parse_group_spec_with_cap(s: &str, cap: u64) -> Result<GroupSpec> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty group spec".into()));
    }
    let mut orders = Vec::new();
    for token in s.split(['x', 'X']) {
        let token = token.trim();
        let rest = token
            .strip_prefix('C')
            .or_else(|| token.strip_prefix('c'))
            .ok_or_else(|| Error::Parse(format!("expected `C<n>`, got `{token}`")))?;
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("expected `C<n>`, got `{token}`")));
        }
        let n: u64 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("order out of range in `{token}`")))?;
        if n == 0 {
            return Err(Error::Parse("cyclic order must be >= 1".into()));
        }
        orders.push(n);
    }
    GroupSpec::with_cap(orders, cap)
}

pub fn group_to_string(spec: &GroupSpec) -> String {
    spec.orders()
        .iter()
        .map(|n| format!("C{n}"))
        .collect::<Vec<_>>()
        .join("x")
}

/// `Q`, `R`, `C` (case-insensitive) or `units:k1,k2,...`.
pub fn parse_field_descriptor(s: &str) -> Result<FieldDescriptor> {
    let s = s.trim();
    match s.to_ascii_uppercase().as_str() {
        "Q" => return Ok(FieldDescriptor::Rationals),
        "R" => return Ok(FieldDescriptor::Reals),
        "C" => return Ok(FieldDescriptor::ContainsAllRoots),
        _ => {}
    }
    if let Some(list) = s
        .strip_prefix("units:")
        .or_else(|| s.strip_prefix("UNITS:"))
        .or_else(|| s.strip_prefix("Units:"))
    {
        let mut units = Vec::new();
        for tok in list.split(',') {
            let tok = tok.trim();
            let u: u64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad unit residue `{tok}`")))?;
            units.push(u);
        }
        if units.is_empty() {
            return Err(Error::Parse("empty unit list".into()));
        }
        return Ok(FieldDescriptor::ExplicitUnits(units));
    }
    Err(Error::Parse(format!(
        "unknown field `{s}` (expected Q, R, C, or units:k1,k2,...)"
    )))
}

pub fn field_to_string(field: &FieldDescriptor) -> String {
    field.to_string()
}

/// Comma-separated fraction strings: `3,4,-3,-4` or `1/2,-7/3`.
pub fn parse_point_csv(s: &str) -> Result<Vec<Rational>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty point".into()));
    }
    s.split(',').map(parse_rational).collect()
}

pub fn format_point_csv(coords: &[Rational]) -> String {
    coords
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(",")
}

/// Renders a sequence as signed `c*(r1,...,rk)` terms over its support.
pub fn format_zsequence(s: &ZSequence, spec: &GroupSpec) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, &v) in s.values().iter().enumerate() {
        if v == 0 {
            continue;
        }
        let chi = Character::from_index(spec, idx);
        if !out.is_empty() && v > 0 {
            out.push('+');
        }
        out.push_str(&format!("{v}*{chi}"));
    }
    out
}

/// Parses the text form produced by [`format_zsequence`].
pub fn parse_zsequence(s: &str, spec: &GroupSpec) -> Result<ZSequence> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let n = spec.order() as usize;
    if s.is_empty() {
        return Err(Error::Parse("empty sequence".into()));
    }
    if s == "0" {
        return Ok(ZSequence::zero(n));
    }
    let mut seq = ZSequence::zero(n);
    let mut rest = s.as_str();
    while !rest.is_empty() {
        // optional sign
        let (sign, after_sign) = match rest.as_bytes()[0] {
            b'+' => (1i64, &rest[1..]),
            b'-' => (-1i64, &rest[1..]),
            _ => (1i64, rest),
        };
        let star = after_sign
            .find('*')
            .ok_or_else(|| Error::Parse("expected `coeff*(residues)`".into()))?;
        let coeff: i64 = after_sign[..star]
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient `{}`", &after_sign[..star])))?;
        let after_star = &after_sign[star + 1..];
        if !after_star.starts_with('(') {
            return Err(Error::Parse("expected `(` after `*`".into()));
        }
        let close = after_star
            .find(')')
            .ok_or_else(|| Error::Parse("missing `)`".into()))?;
        let tuple = &after_star[1..close];
        let residues: Vec<i64> = tuple
            .split(',')
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad residue `{t}`")))
            })
            .collect::<Result<_>>()?;
        let chi = Character::new(spec, &residues)?;
        let idx = chi.index(spec);
        let add = coeff
            .checked_mul(sign)
            .ok_or_else(|| Error::Overflow("coefficient".into()))?;
        seq.values_mut()[idx] = seq.values()[idx]
            .checked_add(add)
            .ok_or_else(|| Error::Overflow("coefficient".into()))?;
        rest = &after_star[close + 1..];
    }
    Ok(seq)
}

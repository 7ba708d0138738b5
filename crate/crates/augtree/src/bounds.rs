//! Exact height and node bounds for the recursive tree constructions.
//!
//! The bounds compose three rules:
//!   * girth 4 is reached at height `2r + 1` exactly;
//!   * raising girth by two costs `2 + bound(d, d^2, g - 2)`;
//!   * raising the augmentation count costs `m1 + m2 - 1`, where `m1` is the
//!     least odd integer at least `bound(d, 1, g)` and `m2 = bound(d^m1, r-1, g)`.
//!
//! The values tower immediately (already at girth 6 the bounds involve
//! numbers like `2 * 2048^2 + 1`), so everything is arbitrary precision.
//! Beyond girth 6 the towers stop fitting in memory at all: a hard cap on
//! bit length keeps the arithmetic total, and exceeding it is reported as
//! [`BuildError::BoundTooLarge`] rather than an allocation failure.

use crate::error::BuildError;
use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive, Zero};

/// Numbers above this many bits (32 MiB) are not materialized.
pub const BIT_CAP: u64 = 1 << 28;

pub(crate) fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn is_power_of_two(x: &BigUint) -> bool {
    !x.is_zero() && x.count_ones() == 1
}

/// `a * b`, refusing results over the bit cap. Powers of two multiply by
/// shifting so the girth-6 towers stay fast.
pub(crate) fn checked_mul(a: &BigUint, b: &BigUint, cap: u64) -> Result<BigUint, BuildError> {
    if a.is_zero() || b.is_zero() {
        return Ok(BigUint::zero());
    }
    if a.bits() + b.bits() > cap + 1 {
        return Err(BuildError::BoundTooLarge);
    }
    if is_power_of_two(a) {
        return Ok(b << a.trailing_zeros().unwrap_or(0));
    }
    if is_power_of_two(b) {
        return Ok(a << b.trailing_zeros().unwrap_or(0));
    }
    Ok(a * b)
}

/// `base ^ exp`, refusing results over the bit cap.
pub(crate) fn checked_pow(base: &BigUint, exp: &BigUint, cap: u64) -> Result<BigUint, BuildError> {
    if exp.is_zero() {
        return Ok(BigUint::one());
    }
    if base.is_zero() || base.is_one() {
        return Ok(base.clone());
    }
    // bits(base^exp) <= exp * bits(base), so this guard is conservative.
    let est = exp * base.bits();
    if est > big(cap) {
        return Err(BuildError::BoundTooLarge);
    }
    let exp_u64 = exp.to_u64().expect("exponent under cap fits u64");
    if is_power_of_two(base) {
        let shift = base.trailing_zeros().unwrap_or(0) * exp_u64;
        return Ok(BigUint::one() << shift);
    }
    Ok(Pow::pow(base, exp_u64))
}

fn least_odd_geq(x: &BigUint) -> BigUint {
    // 2 * floor(x / 2) + 1
    ((x >> 1u32) << 1u32) + 1u32
}

pub(crate) fn validate_params(d: u64, r: u64, g: u64) -> Result<(), BuildError> {
    if d < 2 {
        return Err(BuildError::BadArity { d });
    }
    if r < 1 {
        return Err(BuildError::BadAugCount { r });
    }
    if g < 4 || g % 2 != 0 {
        return Err(BuildError::BadGirth { g });
    }
    Ok(())
}

/// Upper bound on the least height of a `(d, r, g)` construction, composed
/// exactly as the recursive scheme builds it (girth outer, augmentation
/// count inner). Deterministic and exact.
pub fn height_bound(d: u64, r: u64, g: u64) -> Result<BigUint, BuildError> {
    validate_params(d, r, g)?;
    bound_rec(&big(d), &big(r), g)
}

fn bound_rec(d: &BigUint, r: &BigUint, g: u64) -> Result<BigUint, BuildError> {
    if g == 4 {
        // Exact: augment each leaf to its r non-parent ancestors at odd distance.
        return Ok(checked_mul(r, &big(2), BIT_CAP)? + 1u32);
    }
    if r.is_one() {
        let d_sq = checked_mul(d, d, BIT_CAP)?;
        return Ok(bound_rec(d, &d_sq, g - 2)? + 2u32);
    }
    let m1 = least_odd_geq(&bound_rec(d, &BigUint::one(), g)?);
    let d_pow = checked_pow(d, &m1, BIT_CAP)?;
    let m2 = bound_rec(&d_pow, &(r - 1u32), g)?;
    Ok(m1 + m2 - 1u32)
}

/// Vertex count of a complete `d`-ary tree with the given height:
/// `sum_{i=0..=h} d^i`.
pub fn complete_tree_size(d: u64, height: &BigUint) -> Result<BigUint, BuildError> {
    let d = big(d);
    let top = checked_pow(&d, &(height + 1u32), BIT_CAP)?;
    Ok((top - 1u32) / (d - 1u32))
}

/// One step of the recursive construction trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanStep {
    /// Direct girth-4 base with the given arity and augmentation count.
    Base { d: BigUint, r: BigUint },
    /// Leaf replacement raising girth from `from_girth` to `from_girth + 2`.
    GirthStep { from_girth: u64 },
    /// Composition raising the augmentation count by one.
    AugStep { m1: BigUint, m2: BigUint },
}

/// Node bound of a plan; towers past girth 6 stop being materializable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeBound {
    Exact(BigUint),
    ExceedsCap,
}

impl NodeBound {
    pub fn fits_budget(&self, budget: u64) -> bool {
        match self {
            NodeBound::Exact(n) => *n <= big(budget),
            NodeBound::ExceedsCap => false,
        }
    }

    pub fn to_decimal_string(&self) -> String {
        match self {
            NodeBound::Exact(n) => n.to_string(),
            NodeBound::ExceedsCap => format!("> 2^{BIT_CAP}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub target: (u64, u64, u64),
    pub trace: Vec<PlanStep>,
    pub height_bound: BigUint,
    pub node_bound: NodeBound,
}

/// Builds the full recursion trace together with exact bounds.
pub fn make_plan(d: u64, r: u64, g: u64) -> Result<ConstructionPlan, BuildError> {
    validate_params(d, r, g)?;
    let mut trace = Vec::new();
    let height_bound = plan_rec(&big(d), &big(r), g, &mut trace)?;
    let node_bound = match complete_tree_size(d, &height_bound) {
        Ok(n) => NodeBound::Exact(n),
        Err(BuildError::BoundTooLarge) => NodeBound::ExceedsCap,
        Err(e) => return Err(e),
    };
    Ok(ConstructionPlan {
        target: (d, r, g),
        trace,
        height_bound,
        node_bound,
    })
}

fn plan_rec(
    d: &BigUint,
    r: &BigUint,
    g: u64,
    trace: &mut Vec<PlanStep>,
) -> Result<BigUint, BuildError> {
    if g == 4 {
        trace.push(PlanStep::Base {
            d: d.clone(),
            r: r.clone(),
        });
        return Ok(checked_mul(r, &big(2), BIT_CAP)? + 1u32);
    }
    if r.is_one() {
        let d_sq = checked_mul(d, d, BIT_CAP)?;
        let inner = plan_rec(d, &d_sq, g - 2, trace)?;
        trace.push(PlanStep::GirthStep { from_girth: g - 2 });
        return Ok(inner + 2u32);
    }
    let mut g1_trace = Vec::new();
    let m1 = least_odd_geq(&plan_rec(d, &BigUint::one(), g, &mut g1_trace)?);
    let d_pow = checked_pow(d, &m1, BIT_CAP)?;
    let m2 = plan_rec(&d_pow, &(r - 1u32), g, trace)?;
    trace.extend(g1_trace);
    trace.push(PlanStep::AugStep {
        m1: m1.clone(),
        m2: m2.clone(),
    });
    Ok(m1 + m2 - 1u32)
}

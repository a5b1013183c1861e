//! Chamber geometry for manifolds with `b₊ = 1`.
//!
//! The positive cone `{h : h² > 0}` has two components. A metric picks a
//! self-dual ray in each, and fixing one component `H₀` orients everything
//! else. The wall of a characteristic `c` is `(c − b)·h = 0`; the two
//! chambers on the `H₀` side are `C₊ = {(c − b)·h < 0}` and
//! `C₋ = {(c − b)·h > 0}`.
//!
//! Rays are rational and never normalized: all predicates only look at the
//! sign of a pairing against `h`, which is invariant under positive scaling.

use crate::error::{Error, Result};
use crate::lattice;
use crate::rational::{sign_of, Q};
use crate::topology::{CharacteristicElement, ManifoldTopology, Sign};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A positive ray in `H²(X;R)` and the component it is taken to represent.
///
/// `component_sign = Minus` means the point of `H₀` is `−h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodRay {
    h: Vec<Q>,
    component_sign: Sign,
}

impl PeriodRay {
    pub fn new(m: &ManifoldTopology, h: Vec<Q>, component_sign: Sign) -> Result<Self> {
        if h.len() != m.b2() {
            return Err(Error::DimensionMismatch {
                expected: m.b2(),
                found: h.len(),
            });
        }
        let sq = lattice::pair_q(&m.form, &h, &h);
        if !sq.is_positive() {
            return Err(Error::NonPositiveRay(sq.to_string()));
        }
        Ok(PeriodRay { h, component_sign })
    }

    pub(crate) fn from_parts(h: Vec<Q>, component_sign: Sign) -> Self {
        PeriodRay { h, component_sign }
    }

    pub fn h(&self) -> &[Q] {
        &self.h
    }

    pub fn component_sign(&self) -> Sign {
        self.component_sign
    }

    /// `component_sign · h`.
    pub fn representative(&self) -> Vec<Q> {
        match self.component_sign {
            Sign::Plus => self.h.clone(),
            Sign::Minus => self.h.iter().map(|x| -x).collect(),
        }
    }
}

/// Orientation of `H¹(X;R)` together with a component `H₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationData {
    pub o1_sign: Sign,
    /// `H₀` is the component containing `h0.representative()`.
    pub h0: PeriodRay,
}

impl OrientationData {
    /// Which component a positive vector lies in, relative to `H₀`.
    pub fn component_of(&self, m: &ManifoldTopology, v: &[Q]) -> Sign {
        let p = lattice::pair_q(&m.form, v, &self.h0.representative());
        // Two positive vectors lie in the same component iff they pair positively.
        if p.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// The ray in `H₀` spanning the same line as `v`.
    pub fn normalize_into_h0(&self, m: &ManifoldTopology, v: &[Q]) -> Vec<Q> {
        match self.component_of(m, v) {
            Sign::Plus => v.to_vec(),
            Sign::Minus => v.iter().map(|x| -x).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChamberSide {
    /// `(c − b)·h < 0`
    Plus,
    /// `(c − b)·h > 0`
    Minus,
    OnWall,
}

impl ChamberSide {
    pub fn flip(self) -> Self {
        match self {
            ChamberSide::Plus => ChamberSide::Minus,
            ChamberSide::Minus => ChamberSide::Plus,
            ChamberSide::OnWall => ChamberSide::OnWall,
        }
    }
}

impl fmt::Display for ChamberSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChamberSide::Plus => "C_plus",
            ChamberSide::Minus => "C_minus",
            ChamberSide::OnWall => "on_wall",
        })
    }
}

fn require_bplus_one(m: &ManifoldTopology) -> Result<()> {
    if m.bplus != 1 {
        return Err(Error::BplusNotOne(m.bplus));
    }
    Ok(())
}

/// `(c − b)ᵀ Q h`.
pub fn wall_pairing(m: &ManifoldTopology, c: &[i64], b: &[Q], h: &[Q]) -> Result<Q> {
    for v in [c.len(), b.len(), h.len()] {
        if v != m.b2() {
            return Err(Error::DimensionMismatch {
                expected: m.b2(),
                found: v,
            });
        }
    }
    let diff: Vec<Q> = c
        .iter()
        .zip(b)
        .map(|(&ci, bi)| Q::from_integer(ci.into()) - bi)
        .collect();
    Ok(lattice::pair_q(&m.form, &diff, h))
}

pub fn side_from_pairing(s: &Q) -> ChamberSide {
    match sign_of(s) {
        Ordering::Less => ChamberSide::Plus,
        Ordering::Greater => ChamberSide::Minus,
        Ordering::Equal => ChamberSide::OnWall,
    }
}

/// Classifies `(h, b)` relative to the wall of `c`, using `h` as supplied.
pub fn classify_chamber(
    m: &ManifoldTopology,
    c: &CharacteristicElement,
    h: &PeriodRay,
    b: &[Q],
) -> Result<ChamberSide> {
    require_bplus_one(m)?;
    let s = wall_pairing(m, c.as_slice(), b, h.h())?;
    Ok(side_from_pairing(&s))
}

/// Whether the harmonic representative of `c − b` is not anti-self-dual,
/// i.e. its self-dual (`h`) component is nonzero.
pub fn is_c_good(
    m: &ManifoldTopology,
    c: &CharacteristicElement,
    h: &PeriodRay,
    b: &[Q],
) -> Result<bool> {
    require_bplus_one(m)?;
    let s = wall_pairing(m, c.as_slice(), b, h.h())?;
    Ok(!s.is_zero())
}

//! Seiberg-Witten tables for `b₁ = 0`, `b₊ = 1` from geometric facts.
//!
//! Three arguments fill a table and nothing else is used:
//!
//! 1. negative expected dimension forces both invariants to vanish;
//! 2. a metric of positive scalar curvature with `b = 0` has empty moduli,
//!    so the invariant of its chamber vanishes and the wall-crossing
//!    difference fixes the other one;
//! 3. on a Kähler surface with `p_g = 0` the invariant of `c = 2m − K` is
//!    read off from whether `Dou(m)` is empty, decided here by membership
//!    of `m` in a rational effective cone.
//!
//! When several arguments apply they must agree; disagreement is an error.
//! Anything none of them reaches is reported as undetermined.

use crate::chambers::{side_from_pairing, wall_pairing, ChamberSide, OrientationData, PeriodRay};
use crate::cone;
use crate::error::{Error, Result};
use crate::extalg::{wall_crossing_delta, ExtForm};
use crate::rational::{q, Q};
use crate::topology::{CharacteristicElement, ManifoldTopology, Sign};
use num_traits::Zero;
use std::fmt;

/// Complex-geometric facts about a Kähler surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerFacts {
    /// `c₁(K_X)` in the `e`-basis.
    pub canonical_class: Vec<i64>,
    /// Integer vectors spanning `NS(X) ⊆ H²/Tors`; must be independent.
    pub ns_basis: Vec<Vec<i64>>,
    /// Generators of the effective cone, in `ns_basis` coordinates.
    pub effective_cone: Vec<Vec<Q>>,
    pub pg_zero: bool,
    /// Direction of a Kähler class `[ω_g]`.
    pub kahler_ray: PeriodRay,
}

impl KahlerFacts {
    pub fn validate(&self, m: &ManifoldTopology) -> Result<()> {
        let b2 = m.b2();
        if self.canonical_class.len() != b2 {
            return Err(Error::InvalidKahler(format!(
                "canonical_class has length {}, expected {b2}",
                self.canonical_class.len()
            )));
        }
        if !m.is_characteristic(&self.canonical_class)? {
            return Err(Error::InvalidKahler(
                "canonical_class is not characteristic".into(),
            ));
        }
        if let Some(row) = self.ns_basis.iter().find(|r| r.len() != b2) {
            return Err(Error::InvalidKahler(format!(
                "ns_basis row {row:?} has length {}, expected {b2}",
                row.len()
            )));
        }
        if !cone::is_linearly_independent(&self.ns_basis_q()) {
            return Err(Error::InvalidKahler(
                "ns_basis is linearly dependent".into(),
            ));
        }
        let rank = self.ns_basis.len();
        if let Some(g) = self.effective_cone.iter().find(|g| g.len() != rank) {
            return Err(Error::InvalidKahler(format!(
                "effective_cone generator of length {} in an NS lattice of rank {rank}",
                g.len()
            )));
        }
        if self.kahler_ray.h().len() != b2 {
            return Err(Error::DimensionMismatch {
                expected: b2,
                found: self.kahler_ray.h().len(),
            });
        }
        Ok(())
    }

    fn ns_basis_q(&self) -> Vec<Vec<Q>> {
        self.ns_basis
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    /// Integer coordinates of `m` in `ns_basis`, if `m ∈ NS(X)`.
    pub fn ns_coordinates(&self, m: &[i64]) -> Option<Vec<i64>> {
        let target: Vec<Q> = m.iter().map(|&x| q(x)).collect();
        let coords = cone::coordinates(&self.ns_basis_q(), &target)?;
        coords.iter().map(crate::rational::to_i64).collect()
    }
}

/// Which Douady space the abelian moduli space is identified with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DouadySide {
    /// `(2m − K − b)·[ω] < 0`: moduli `≅ Dou(m)`.
    DouM,
    /// `(2m − K − b)·[ω] > 0`: moduli `≅ Dou(K − m)`.
    DouKMinusM,
    OnWall,
}

impl fmt::Display for DouadySide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DouadySide::DouM => "dou_m",
            DouadySide::DouKMinusM => "dou_K_minus_m",
            DouadySide::OnWall => "on_wall",
        })
    }
}

fn two_m_minus_k(kf: &KahlerFacts, m: &[i64]) -> Vec<i64> {
    m.iter()
        .zip(&kf.canonical_class)
        .map(|(x, k)| 2 * x - k)
        .collect()
}

pub fn abelian_solvability_side(
    mt: &ManifoldTopology,
    kf: &KahlerFacts,
    m: &[i64],
    b: &[Q],
) -> Result<DouadySide> {
    if m.len() != mt.b2() {
        return Err(Error::DimensionMismatch {
            expected: mt.b2(),
            found: m.len(),
        });
    }
    let s = wall_pairing(mt, &two_m_minus_k(kf, m), b, kf.kahler_ray.h())?;
    Ok(match side_from_pairing(&s) {
        ChamberSide::Plus => DouadySide::DouM,
        ChamberSide::Minus => DouadySide::DouKMinusM,
        ChamberSide::OnWall => DouadySide::OnWall,
    })
}

/// `Dou(m) ≠ ∅`: `m ∈ NS(X)` and its coordinates lie in the effective cone.
pub fn douady_nonempty(kf: &KahlerFacts, m: &[i64]) -> bool {
    match kf.ns_coordinates(m) {
        None => false,
        Some(coords) => {
            let target: Vec<Q> = coords.iter().map(|&x| q(x)).collect();
            cone::in_cone(&kf.effective_cone, &target)
        }
    }
}

/// `(SW⁺, SW⁻)` of the Spin^c structure `c = 2m − K` on a Kähler surface
/// with `p_g = 0`, `b₁ = 0`, oriented by the component of Kähler classes.
pub fn sw_pg0_invariants(mt: &ManifoldTopology, kf: &KahlerFacts, m: &[i64]) -> Result<(i64, i64)> {
    if mt.b1 != 0 {
        return Err(Error::B1NotZero(mt.b1));
    }
    if mt.bplus != 1 {
        return Err(Error::BplusNotOne(mt.bplus));
    }
    if !kf.pg_zero {
        return Err(Error::PgNotZero);
    }
    if m.len() != mt.b2() {
        return Err(Error::DimensionMismatch {
            expected: mt.b2(),
            found: m.len(),
        });
    }
    let c = mt.characteristic(two_m_minus_k(kf, m))?;
    if mt.expected_dim_abelian(&c)? < 0 {
        return Ok((0, 0));
    }
    Ok(if douady_nonempty(kf, m) {
        (1, 0)
    } else {
        (0, -1)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwValue {
    Known(i64),
    Undetermined,
}

impl SwValue {
    pub fn known(self) -> Option<i64> {
        match self {
            SwValue::Known(v) => Some(v),
            SwValue::Undetermined => None,
        }
    }
}

impl fmt::Display for SwValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwValue::Known(v) => write!(f, "{v}"),
            SwValue::Undetermined => f.write_str("undetermined"),
        }
    }
}

/// Which argument produced a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Dimension,
    Psc,
    Kahler,
    PscAndKahler,
    Undetermined,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Dimension => "dimension",
            Source::Psc => "psc",
            Source::Kahler => "kahler",
            Source::PscAndKahler => "psc+kahler",
            Source::Undetermined => "none",
        })
    }
}

/// Bookkeeping from the Kähler description of a row. The orientation twist
/// `(−1)^{χ(M)}` of the `Dou(K − m)` identification is recorded but never
/// applied to invariant values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerRowMeta {
    pub m: Vec<i64>,
    pub side_at_zero: DouadySide,
    pub dou_m_nonempty: bool,
    pub orientation_twist: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwRow {
    pub c: Vec<i64>,
    pub w_c: i64,
    pub plus: SwValue,
    pub minus: SwValue,
    pub source: Source,
    /// `(SW⁺ − SW⁻)(1)` from the wall-crossing formula.
    pub delta: i64,
    pub kahler: Option<KahlerRowMeta>,
}

#[derive(Debug, Clone, Default)]
pub struct TableFacts {
    pub psc_ray: Option<PeriodRay>,
    pub kahler: Option<KahlerFacts>,
}

/// Which fact sources `sw_table` may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pipeline {
    #[default]
    All,
    PscOnly,
    KahlerOnly,
}

#[derive(Debug, Clone)]
pub struct SwTable {
    pub orientation: OrientationData,
    pub rows: Vec<SwRow>,
}

impl TableFacts {
    /// Orientation used for the table: `H₀` contains the PSC ray when one
    /// is given, otherwise the Kähler ray.
    pub fn orientation(&self, o1_sign: Sign, pipeline: Pipeline) -> Result<OrientationData> {
        let ray = match pipeline {
            Pipeline::All => self
                .psc_ray
                .as_ref()
                .or(self.kahler.as_ref().map(|k| &k.kahler_ray)),
            Pipeline::PscOnly => self.psc_ray.as_ref(),
            Pipeline::KahlerOnly => self.kahler.as_ref().map(|k| &k.kahler_ray),
        };
        let ray = ray.ok_or(Error::InsufficientFacts)?;
        let h0 = PeriodRay::from_parts(ray.representative(), Sign::Plus);
        Ok(OrientationData { o1_sign, h0 })
    }
}

fn psc_values(
    mt: &ManifoldTopology,
    psc: &PeriodRay,
    orient: &OrientationData,
    c: &CharacteristicElement,
    delta: i64,
) -> Result<Option<(i64, i64)>> {
    // The metric's self-dual line, pointed into H₀.
    let h = orient.normalize_into_h0(mt, psc.h());
    let zero = vec![Q::zero(); mt.b2()];
    let s = wall_pairing(mt, c.as_slice(), &zero, &h)?;
    Ok(match side_from_pairing(&s) {
        ChamberSide::Plus => Some((0, -delta)),
        ChamberSide::Minus => Some((delta, 0)),
        ChamberSide::OnWall => None,
    })
}

/// Kähler-side values for one row (already in the `H₀` orientation) and its metadata.
type KahlerCell = (Option<(i64, i64)>, Option<KahlerRowMeta>);

fn kahler_values(
    mt: &ManifoldTopology,
    kf: &KahlerFacts,
    orient: &OrientationData,
    c: &CharacteristicElement,
    w_c: i64,
) -> Result<KahlerCell> {
    let sum: Vec<i64> = c
        .as_slice()
        .iter()
        .zip(&kf.canonical_class)
        .map(|(a, b)| a + b)
        .collect();
    if sum.iter().any(|x| x % 2 != 0) || !kf.pg_zero {
        return Ok((None, None));
    }
    let m: Vec<i64> = sum.iter().map(|x| x / 2).collect();
    let (mut plus, mut minus) = sw_pg0_invariants(mt, kf, &m)?;
    // SW^±_{−H₀} = −SW^∓_{H₀}
    if orient.component_of(mt, &kf.kahler_ray.representative()) == Sign::Minus {
        (plus, minus) = (-minus, -plus);
    }
    let o = orient.o1_sign.as_i64();
    let zero = vec![Q::zero(); mt.b2()];
    let side_at_zero = abelian_solvability_side(mt, kf, &m, &zero)?;
    // χ(M) = χ(O_X) + m(m − K)/2 with χ(O_X) = 1 when p_g = q = 0, and
    // m(m − K) = w_c for c = 2m − K.
    let chi = 1 + w_c.div_euclid(2);
    let meta = KahlerRowMeta {
        m: m.clone(),
        side_at_zero,
        dou_m_nonempty: douady_nonempty(kf, &m),
        orientation_twist: if chi.rem_euclid(2) == 0 { 1 } else { -1 },
    };
    Ok((Some((o * plus, o * minus)), Some(meta)))
}

/// Fills `(SW⁺, SW⁻)` for each characteristic element of a manifold with
/// `b₁ = 0`, `b₊ = 1`. Rows keep the order of `chars`.
pub fn sw_table(
    mt: &ManifoldTopology,
    facts: &TableFacts,
    chars: &[CharacteristicElement],
    o1_sign: Sign,
    pipeline: Pipeline,
) -> Result<SwTable> {
    if mt.b1 != 0 {
        return Err(Error::B1NotZero(mt.b1));
    }
    if mt.bplus != 1 {
        return Err(Error::BplusNotOne(mt.bplus));
    }
    if let Some(kf) = &facts.kahler {
        kf.validate(mt)?;
    }
    let orient = facts.orientation(o1_sign, pipeline)?;
    let psc = facts
        .psc_ray
        .as_ref()
        .filter(|_| pipeline != Pipeline::KahlerOnly);
    let kahler = facts
        .kahler
        .as_ref()
        .filter(|_| pipeline != Pipeline::PscOnly);
    let one = ExtForm::one(0);

    let mut rows = Vec::with_capacity(chars.len());
    for c in chars {
        let w_c = mt.expected_dim_abelian(c)?;
        let delta = wall_crossing_delta(mt, c, &one, &orient)?;
        let (k_vals, k_meta) = match kahler {
            Some(kf) => kahler_values(mt, kf, &orient, c, w_c)?,
            None => (None, None),
        };
        let (plus, minus, source) = if w_c < 0 {
            (SwValue::Known(0), SwValue::Known(0), Source::Dimension)
        } else {
            let p_vals = match psc {
                Some(ray) => psc_values(mt, ray, &orient, c, delta)?,
                None => None,
            };
            match (p_vals, k_vals) {
                (Some(p), Some(k)) if p != k => {
                    return Err(Error::Inconsistent {
                        c: c.as_slice().to_vec(),
                        detail: format!("psc gives {p:?}, kahler gives {k:?}"),
                    })
                }
                (Some(p), Some(_)) => (
                    SwValue::Known(p.0),
                    SwValue::Known(p.1),
                    Source::PscAndKahler,
                ),
                (Some(p), None) => (SwValue::Known(p.0), SwValue::Known(p.1), Source::Psc),
                (None, Some(k)) => (SwValue::Known(k.0), SwValue::Known(k.1), Source::Kahler),
                (None, None) => (
                    SwValue::Undetermined,
                    SwValue::Undetermined,
                    Source::Undetermined,
                ),
            }
        };
        if let (SwValue::Known(p), SwValue::Known(n)) = (plus, minus) {
            if p - n != delta {
                return Err(Error::Inconsistent {
                    c: c.as_slice().to_vec(),
                    detail: format!("SW+ - SW- = {} but wall crossing gives {delta}", p - n),
                });
            }
        }
        rows.push(SwRow {
            c: c.as_slice().to_vec(),
            w_c,
            plus,
            minus,
            source,
            delta,
            kahler: k_meta,
        });
    }
    Ok(SwTable {
        orientation: orient,
        rows,
    })
}

/// All characteristic vectors whose coordinates lie in `[lo, hi]`, in
/// lexicographic order.
pub fn characteristic_box(mt: &ManifoldTopology, lo: i64, hi: i64) -> Vec<CharacteristicElement> {
    let b2 = mt.b2();
    let axis: Vec<Vec<i64>> = mt
        .w2
        .iter()
        .map(|&w| (lo..=hi).filter(|x| (x.rem_euclid(2) == 1) == w).collect())
        .collect();
    if axis.iter().any(|a| a.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; b2];
    loop {
        let c: Vec<i64> = idx.iter().zip(&axis).map(|(&i, a)| a[i]).collect();
        out.push(mt.characteristic(c).expect("built from w2 parity"));
        let mut k = b2;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < axis[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

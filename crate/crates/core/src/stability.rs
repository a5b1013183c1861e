//! Stability predicates for oriented pairs, in exact arithmetic.
//!
//! The sheaf-theoretic definitions quantify over all subsheaves. This module
//! cannot enumerate those, so every predicate takes caller-supplied witness
//! data: slopes, Hilbert polynomials, the maximal kernel subsheaf. A
//! predicate is only as complete as the witness list handed to it; when the
//! caller omits a destabilizing subsheaf the answer is "stable relative to
//! the witnesses", not "stable".

use crate::error::{Error, Result};
use crate::rational::Q;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Degree `c₁(det F) ∪ [ω]^{n−1}` and rank of a torsion-free sheaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeData {
    pub degree: Q,
    pub rank: u32,
}

impl SlopeData {
    pub fn new(degree: Q, rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(SlopeData { degree, rank })
    }
}

/// `μ = degree / rank`.
pub fn slope(d: &SlopeData) -> Q {
    &d.degree / BigInt::from(d.rank)
}

/// A polynomial with rational coefficients, lowest degree first, trimmed so
/// that the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HilbertPoly {
    coeffs: Vec<Q>,
}

impl HilbertPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HilbertPoly { coeffs }
    }

    pub fn zero() -> Self {
        HilbertPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &HilbertPoly) -> HilbertPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Q::zero();
        HilbertPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Q) -> HilbertPoly {
        HilbertPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn sub(&self, other: &HilbertPoly) -> HilbertPoly {
        self.add(&other.scale(&-Q::from_integer(1.into())))
    }
}

impl fmt::Display for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let one = a == Q::from_integer(1.into());
            match i {
                0 => write!(f, "{a}")?,
                1 if one => f.write_str("n")?,
                1 => write!(f, "{a}*n")?,
                _ if one => write!(f, "n^{i}")?,
                _ => write!(f, "{a}*n^{i}")?,
            }
        }
        Ok(())
    }
}

/// Eventual-dominance order: compare coefficients from the top degree down.
pub fn poly_compare(p: &HilbertPoly, q: &HilbertPoly) -> Ordering {
    let n = p.coeffs.len().max(q.coeffs.len());
    let z = Q::zero();
    for i in (0..n).rev() {
        let a = p.coeffs.get(i).unwrap_or(&z);
        let b = q.coeffs.get(i).unwrap_or(&z);
        match a.cmp(b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BundleStability {
    Stable,
    Polystable,
    Neither,
}

impl fmt::Display for BundleStability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BundleStability::Stable => "stable",
            BundleStability::Polystable => "polystable",
            BundleStability::Neither => "neither",
        })
    }
}

/// Stability of a rank-2 oriented pair `(E, φ)`.
///
/// `mu_div` is `μ(O_X(D_φ))` for the divisorial part of the zero locus and
/// must be given exactly when `φ ≠ 0`. A slope-stable `E` passed as
/// `Stable` also counts as polystable.
pub fn oriented_pair_status_rank2(
    phi_zero: bool,
    e_stability: BundleStability,
    mu_div: Option<&Q>,
    mu_e: &Q,
) -> Result<BundleStability> {
    match (phi_zero, mu_div) {
        (false, None) => Err(Error::MissingDivisorSlope),
        (true, Some(_)) => Err(Error::UnexpectedDivisorSlope),
        (true, None) => Ok(match e_stability {
            BundleStability::Stable => BundleStability::Stable,
            BundleStability::Polystable => BundleStability::Polystable,
            BundleStability::Neither => BundleStability::Neither,
        }),
        (false, Some(mu)) => Ok(if mu < mu_e {
            BundleStability::Stable
        } else {
            BundleStability::Neither
        }),
    }
}

/// The split pair `(O(D) ⊕ L(−D), φ)` with `φ` cutting out `D`. Its
/// divisorial zero component is `D` and `μ(E) = deg L / 2`.
pub fn split_pair_status(deg_d: &Q, deg_l: &Q) -> BundleStability {
    let mu_e = deg_l / BigInt::from(2);
    oriented_pair_status_rank2(false, BundleStability::Neither, Some(deg_d), &mu_e)
        .expect("divisor slope supplied for nonzero section")
}

/// Open interval `(m_under, m_over)` of parameters `ρ` making the pair
/// ρ-stable, or `None` when it is empty.
pub fn rho_interval(m_under: &Q, m_over: &Q) -> Option<(Q, Q)> {
    (m_under < m_over).then(|| (m_under.clone(), m_over.clone()))
}

/// `m_under = max(μ(E), sup μ(F'))` over the supplied reflexive subsheaves.
pub fn m_under(mu_e: &Q, subsheaf_slopes: &[Q]) -> Q {
    subsheaf_slopes.iter().fold(
        mu_e.clone(),
        |acc, s| if *s > acc { s.clone() } else { acc },
    )
}

/// `m_over = inf μ(E/F)` over the supplied subsheaves containing `φ`;
/// `None` when the list is empty (the infimum is `+∞`).
pub fn m_over(quotient_slopes: &[Q]) -> Option<Q> {
    quotient_slopes.iter().min().cloned()
}

/// `δ = P_E − (rk E / rk K) · P_K` for `K = ker(φ)_max`.
pub fn delta_e_phi(
    p_e: &HilbertPoly,
    rk_e: u32,
    p_ker: &HilbertPoly,
    rk_ker: u32,
) -> Result<HilbertPoly> {
    if rk_ker == 0 || rk_e == 0 {
        return Err(Error::ZeroRank);
    }
    let ratio = Q::new(BigInt::from(rk_e), BigInt::from(rk_ker));
    Ok(p_e.sub(&p_ker.scale(&ratio)))
}

/// A test subsheaf: rank and Hilbert polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsheaf {
    pub rank: u32,
    pub poly: HilbertPoly,
}

/// Witness data for the semistability of an oriented sheaf `(E, ε, φ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairProfile {
    pub rk_e: u32,
    pub p_e: HilbertPoly,
    pub phi_injective: bool,
    /// `ker(φ)_max`.
    pub kermax: Option<Subsheaf>,
    pub subsheaves: Vec<Subsheaf>,
    /// Whether the orientation `ε` is an isomorphism.
    pub epsilon_iso: bool,
}

impl PairProfile {
    pub fn validate(&self) -> Result<()> {
        if self.rk_e == 0 {
            return Err(Error::ZeroRank);
        }
        if let Some(k) = &self.kermax {
            if k.rank == 0 || k.rank >= self.rk_e {
                return Err(Error::InvalidProfile(format!(
                    "ker(phi)_max rank {} outside (0, {})",
                    k.rank, self.rk_e
                )));
            }
        }
        if let Some(f) = self
            .subsheaves
            .iter()
            .find(|f| f.rank == 0 || f.rank >= self.rk_e)
        {
            return Err(Error::InvalidProfile(format!(
                "subsheaf rank {} outside (0, {})",
                f.rank, self.rk_e
            )));
        }
        Ok(())
    }
}

/// `(P − δ) / rk`.
fn reduced(p: &HilbertPoly, delta: &HilbertPoly, rk: u32) -> HilbertPoly {
    p.sub(delta).scale(&Q::new(1.into(), BigInt::from(rk)))
}

/// Semistability of an oriented sheaf relative to the supplied witnesses:
/// either `φ` is injective, or `ε` is an isomorphism, `δ ≥ 0`, and every
/// listed subsheaf satisfies `(P_F − δ)/rk F ≤ (P_E − δ)/rk E`.
pub fn oriented_sheaf_semistable(p: &PairProfile) -> Result<bool> {
    p.validate()?;
    if p.phi_injective {
        return Ok(true);
    }
    if !p.epsilon_iso {
        return Ok(false);
    }
    let k = p.kermax.as_ref().ok_or(Error::MissingKernel)?;
    let delta = delta_e_phi(&p.p_e, p.rk_e, &k.poly, k.rank)?;
    if poly_compare(&delta, &HilbertPoly::zero()) == Ordering::Less {
        return Ok(false);
    }
    let rhs = reduced(&p.p_e, &delta, p.rk_e);
    Ok(p.subsheaves
        .iter()
        .all(|f| poly_compare(&reduced(&f.poly, &delta, f.rank), &rhs) != Ordering::Greater))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qvec, ratio};

    fn poly(c: &[i64]) -> HilbertPoly {
        HilbertPoly::new(qvec(c))
    }

    #[test]
    fn slopes() {
        assert_eq!(slope(&SlopeData::new(q(6), 2).unwrap()), q(3));
        assert_eq!(slope(&SlopeData::new(q(0), 5).unwrap()), q(0));
        assert_eq!(slope(&SlopeData::new(q(-3), 2).unwrap()), ratio(-3, 2));
        assert_eq!(SlopeData::new(q(1), 0), Err(Error::ZeroRank));
    }

    #[test]
    fn pair_status() {
        let s = oriented_pair_status_rank2(true, BundleStability::Stable, None, &q(0)).unwrap();
        assert_eq!(s, BundleStability::Stable);
        let s = oriented_pair_status_rank2(true, BundleStability::Polystable, None, &q(0)).unwrap();
        assert_eq!(s, BundleStability::Polystable);
        let s = oriented_pair_status_rank2(false, BundleStability::Neither, Some(&q(1)), &q(1))
            .unwrap();
        assert_eq!(s, BundleStability::Neither);
        assert_eq!(
            oriented_pair_status_rank2(false, BundleStability::Stable, None, &q(1)),
            Err(Error::MissingDivisorSlope)
        );
    }

    #[test]
    fn split_pair() {
        // stable iff 2 deg D < deg L
        assert_eq!(split_pair_status(&q(1), &q(3)), BundleStability::Stable);
        assert_eq!(split_pair_status(&q(1), &q(2)), BundleStability::Neither);
        assert_eq!(split_pair_status(&q(2), &q(3)), BundleStability::Neither);
    }

    #[test]
    fn rho() {
        assert_eq!(rho_interval(&q(1), &q(3)), Some((q(1), q(3))));
        assert_eq!(rho_interval(&q(3), &q(3)), None);
        assert_eq!(m_under(&ratio(1, 2), &[q(0), ratio(-1, 3)]), ratio(1, 2));
        assert_eq!(m_under(&q(0), &[q(2)]), q(2));
        assert_eq!(m_over(&[q(3), q(1)]), Some(q(1)));
        assert_eq!(m_over(&[]), None);
    }

    #[test]
    fn compare() {
        assert_eq!(
            poly_compare(&poly(&[0, 0, 1]), &poly(&[0, 100])),
            Ordering::Greater
        );
        assert_eq!(
            poly_compare(&poly(&[1, 2]), &poly(&[1, 2])),
            Ordering::Equal
        );
        assert_eq!(
            poly_compare(&poly(&[0, 0, -1]), &poly(&[5])),
            Ordering::Less
        );
        assert_eq!(
            poly_compare(&poly(&[1, 0, 0]), &poly(&[1])),
            Ordering::Equal
        );
    }

    #[test]
    fn delta() {
        let pk = poly(&[1, 2, 3]);
        let pe = pk.scale(&q(2));
        assert!(delta_e_phi(&pe, 4, &pk, 2).unwrap().is_zero());
        // x² + x − 2·½x² = x
        let d = delta_e_phi(
            &poly(&[0, 1, 1]),
            2,
            &HilbertPoly::new(vec![q(0), q(0), ratio(1, 2)]),
            1,
        )
        .unwrap();
        assert_eq!(d, poly(&[0, 1]));
        assert_eq!(delta_e_phi(&pk, 2, &pk, 0), Err(Error::ZeroRank));
    }

    #[test]
    fn semistable_paths() {
        let base = PairProfile {
            rk_e: 2,
            p_e: poly(&[0, 1, 1]),
            phi_injective: true,
            kermax: None,
            subsheaves: vec![],
            epsilon_iso: false,
        };
        assert!(oriented_sheaf_semistable(&base).unwrap());

        let mut p = base.clone();
        p.phi_injective = false;
        p.epsilon_iso = true;
        assert_eq!(oriented_sheaf_semistable(&p), Err(Error::MissingKernel));

        // δ = x²+x − 2·x² = −x² + x < 0
        p.kermax = Some(Subsheaf {
            rank: 1,
            poly: poly(&[0, 0, 1]),
        });
        assert!(!oriented_sheaf_semistable(&p).unwrap());

        // δ = x
        p.kermax = Some(Subsheaf {
            rank: 1,
            poly: HilbertPoly::new(vec![q(0), q(0), ratio(1, 2)]),
        });
        assert!(oriented_sheaf_semistable(&p).unwrap());
        // (P_E − δ)/2 = ½x². A subsheaf with P_F = x² + x: (x² + x − x)/1 = x² > ½x².
        p.subsheaves = vec![Subsheaf {
            rank: 1,
            poly: poly(&[0, 1, 1]),
        }];
        assert!(!oriented_sheaf_semistable(&p).unwrap());
        p.subsheaves = vec![Subsheaf {
            rank: 1,
            poly: HilbertPoly::new(vec![q(0), q(1), ratio(1, 2)]),
        }];
        assert!(oriented_sheaf_semistable(&p).unwrap());

        p.subsheaves = vec![Subsheaf {
            rank: 2,
            poly: poly(&[1]),
        }];
        assert!(matches!(
            oriented_sheaf_semistable(&p),
            Err(Error::InvalidProfile(_))
        ));
    }

    #[test]
    fn display_poly() {
        assert_eq!(
            HilbertPoly::new(vec![q(-1), q(1), ratio(1, 2)]).to_string(),
            "1/2*n^2 + n - 1"
        );
        assert_eq!(HilbertPoly::zero().to_string(), "0");
    }
}

//! Topological input for a closed oriented 4-manifold and the closed-form
//! dimension and admissibility formulas built on it.
//!
//! Everything here is integer arithmetic on the intersection lattice
//! `H²(X,Z)/Tors` in a fixed basis `e₁..e_{b₂}`. Torsion enters only
//! through the order of its 2-torsion subgroup.

use crate::error::{Error, Result};
use crate::lattice;
use crate::rational::{ratio, Q};
use std::fmt;

/// Cup-product data `T[i][j][k] = ⟨αᵢ ∪ αⱼ ∪ e_k, [X]⟩`, stored densely.
///
/// Indices are 0-based here; the manifold file uses 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TripleCup {
    b1: usize,
    b2: usize,
    values: Vec<i64>,
}

impl TripleCup {
    pub fn zeros(b1: usize, b2: usize) -> Self {
        TripleCup {
            b1,
            b2,
            values: vec![0; b1 * b1 * b2],
        }
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn b2(&self) -> usize {
        self.b2
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.values[(i * self.b1 + j) * self.b2 + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: i64) {
        self.values[(i * self.b1 + j) * self.b2 + k] = v;
    }

    /// Sets `T[i][j][k] = v` and `T[j][i][k] = -v`.
    pub fn set_antisymmetric(&mut self, i: usize, j: usize, k: usize, v: i64) {
        self.set(i, j, k, v);
        self.set(j, i, k, -v);
    }

    /// `Σ_k c_k T[i][j][k]`.
    pub fn contract(&self, i: usize, j: usize, c: &[i64]) -> i64 {
        (0..self.b2).map(|k| c[k] * self.get(i, j, k)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldTopology {
    pub name: String,
    pub b1: usize,
    pub bplus: usize,
    pub bminus: usize,
    /// Euler characteristic `e(X)`.
    pub euler: i64,
    /// Signature `σ(X)`.
    pub signature: i64,
    /// Intersection form on `H²/Tors`, a symmetric `b₂ × b₂` matrix.
    pub form: Vec<Vec<i64>>,
    /// Coordinates of an integral lift of `w₂(X)`, reduced mod 2.
    pub w2: Vec<bool>,
    /// Order of `Tors₂ H²(X,Z)`.
    pub tors2_order: u64,
    pub triple_cup: TripleCup,
}

/// One violated invariant of a [`ManifoldTopology`], with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    FormNotSquare,
    RankMismatch {
        b2: usize,
        bplus: usize,
        bminus: usize,
    },
    NotSymmetric {
        i: usize,
        j: usize,
    },
    NotUnimodular {
        det: String,
    },
    SignatureMismatch {
        computed: i64,
        declared: i64,
    },
    BplusMismatch {
        computed: usize,
        declared: usize,
    },
    BminusMismatch {
        computed: usize,
        declared: usize,
    },
    EulerMismatch {
        declared: i64,
        expected: i64,
    },
    W2Length {
        expected: usize,
        found: usize,
    },
    W2NotCharacteristic {
        witness: Vec<i64>,
        lhs: i64,
        rhs: i64,
    },
    Tors2Order {
        order: u64,
    },
    TripleCupShape {
        b1: usize,
        b2: usize,
    },
    TripleCupNotAntisymmetric {
        i: usize,
        j: usize,
        k: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            FormNotSquare => write!(f, "intersection form is not square"),
            RankMismatch { b2, bplus, bminus } => write!(
                f,
                "intersection form has size {b2} but bplus+bminus = {}",
                bplus + bminus
            ),
            NotSymmetric { i, j } => {
                write!(f, "intersection form not symmetric at ({}, {})", i + 1, j + 1)
            }
            NotUnimodular { det } => write!(f, "intersection form not unimodular: det = {det}"),
            SignatureMismatch { computed, declared } => {
                write!(f, "signature mismatch: form has {computed}, declared {declared}")
            }
            BplusMismatch { computed, declared } => {
                write!(f, "bplus mismatch: form has {computed}, declared {declared}")
            }
            BminusMismatch { computed, declared } => {
                write!(f, "bminus mismatch: form has {computed}, declared {declared}")
            }
            EulerMismatch { declared, expected } => write!(
                f,
                "euler ≠ 2−2b1+b2: declared {declared}, expected {expected}"
            ),
            W2Length { expected, found } => {
                write!(f, "w2 has length {found}, expected {expected}")
            }
            W2NotCharacteristic { witness, lhs, rhs } => write!(
                f,
                "w2 not characteristic: x = {witness:?} has x·x = {lhs} but w2·x = {rhs} (mod 2 differs)"
            ),
            Tors2Order { order } => write!(f, "tors2_order must be positive, got {order}"),
            TripleCupShape { b1, b2 } => {
                write!(f, "triple_cup has shape {b1}x{b1}x{b2}, inconsistent with b1/b2")
            }
            TripleCupNotAntisymmetric { i, j, k } => write!(
                f,
                "triple_cup not antisymmetric: T[{}][{}][{}] ≠ −T[{}][{}][{}]",
                i + 1,
                j + 1,
                k + 1,
                j + 1,
                i + 1,
                k + 1
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A characteristic vector `c ≡ w₂ (mod 2)`: the Chern class of a Spin^c
/// structure. Only constructible through [`ManifoldTopology::characteristic`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacteristicElement(Vec<i64>);

impl CharacteristicElement {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

/// `+` or `−`, used for spinor bundle halves and orientation choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One stratum `M_{p₁+4l} × Sˡ(X)` of the Uhlenbeck compactification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UhlenbeckStratum {
    pub l: u32,
    pub p1: i64,
    pub dim: i64,
}

fn exact_div(num: i64, den: i64, what: &'static str) -> Result<i64> {
    if num.rem_euclid(den) != 0 {
        return Err(Error::NonIntegral {
            what,
            value: ratio(num, den).to_string(),
        });
    }
    Ok(num.div_euclid(den))
}

impl ManifoldTopology {
    /// The complex projective plane with `h = c₁(O(1))` as basis.
    pub fn projective_plane() -> Self {
        ManifoldTopology {
            name: "CP2".into(),
            b1: 0,
            bplus: 1,
            bminus: 0,
            euler: 3,
            signature: 1,
            form: vec![vec![1]],
            w2: vec![true],
            tors2_order: 1,
            triple_cup: TripleCup::zeros(0, 1),
        }
    }

    pub fn b2(&self) -> usize {
        self.form.len()
    }

    /// Checks every structural invariant and reports each failure.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let b2 = self.form.len();

        if !lattice::is_square(&self.form) {
            v.push(Violation::FormNotSquare);
            return ValidationReport { violations: v };
        }
        if b2 != self.bplus + self.bminus {
            v.push(Violation::RankMismatch {
                b2,
                bplus: self.bplus,
                bminus: self.bminus,
            });
        }
        let symmetric = match lattice::is_symmetric(&self.form) {
            Some((i, j)) => {
                v.push(Violation::NotSymmetric { i, j });
                false
            }
            None => true,
        };
        let det = lattice::determinant(&self.form);
        if det != 1.into() && det != (-1).into() {
            v.push(Violation::NotUnimodular {
                det: det.to_string(),
            });
        }
        if symmetric {
            let inertia = lattice::inertia(&self.form);
            if inertia.signature() != self.signature {
                v.push(Violation::SignatureMismatch {
                    computed: inertia.signature(),
                    declared: self.signature,
                });
            }
            if inertia.positive != self.bplus {
                v.push(Violation::BplusMismatch {
                    computed: inertia.positive,
                    declared: self.bplus,
                });
            }
            if inertia.negative != self.bminus {
                v.push(Violation::BminusMismatch {
                    computed: inertia.negative,
                    declared: self.bminus,
                });
            }
        }
        let expected = 2 - 2 * self.b1 as i64 + b2 as i64;
        if self.euler != expected {
            v.push(Violation::EulerMismatch {
                declared: self.euler,
                expected,
            });
        }
        if self.w2.len() != b2 {
            v.push(Violation::W2Length {
                expected: b2,
                found: self.w2.len(),
            });
        } else if symmetric {
            // x·x ≡ Σ Q_ii x_i (mod 2), so the parity identity is linear in x
            // and it suffices to test basis vectors.
            let w = self.w2_lift();
            for i in 0..b2 {
                let mut x = vec![0i64; b2];
                x[i] = 1;
                let lhs = lattice::pair(&self.form, &x, &x);
                let rhs = lattice::pair(&self.form, &w, &x);
                if (lhs - rhs).rem_euclid(2) != 0 {
                    v.push(Violation::W2NotCharacteristic {
                        witness: x,
                        lhs,
                        rhs,
                    });
                    break;
                }
            }
        }
        if self.tors2_order == 0 {
            v.push(Violation::Tors2Order { order: 0 });
        }
        let t = &self.triple_cup;
        if t.b1() != self.b1 || t.b2() != b2 {
            v.push(Violation::TripleCupShape {
                b1: t.b1(),
                b2: t.b2(),
            });
        } else {
            'outer: for i in 0..self.b1 {
                for j in i..self.b1 {
                    for k in 0..b2 {
                        if t.get(i, j, k) != -t.get(j, i, k) {
                            v.push(Violation::TripleCupNotAntisymmetric { i, j, k });
                            break 'outer;
                        }
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    /// The 0/1 integral lift of `w₂` stored in the record.
    pub fn w2_lift(&self) -> Vec<i64> {
        self.w2.iter().map(|&b| b as i64).collect()
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        lattice::pair(&self.form, x, y)
    }

    pub fn square(&self, x: &[i64]) -> i64 {
        self.pair(x, x)
    }

    fn check_len(&self, c: &[i64]) -> Result<()> {
        if c.len() != self.b2() {
            return Err(Error::DimensionMismatch {
                expected: self.b2(),
                found: c.len(),
            });
        }
        Ok(())
    }

    pub fn is_characteristic(&self, c: &[i64]) -> Result<bool> {
        self.check_len(c)?;
        Ok(c.iter()
            .zip(&self.w2)
            .all(|(&x, &w)| (x.rem_euclid(2) == 1) == w))
    }

    pub fn characteristic(&self, c: Vec<i64>) -> Result<CharacteristicElement> {
        if !self.is_characteristic(&c)? {
            return Err(Error::NotCharacteristic(c));
        }
        Ok(CharacteristicElement(c))
    }

    /// Expected dimension `w_c = (c² − 3σ − 2e) / 4` of the abelian moduli space.
    pub fn expected_dim_abelian(&self, c: &CharacteristicElement) -> Result<i64> {
        let num = self.square(c.as_slice()) - 3 * self.signature - 2 * self.euler;
        exact_div(num, 4, "w_c")
    }

    /// `c₂(Σ±) = (c² − 3σ ∓ 2e) / 4`.
    pub fn c2_spinor_bundle(&self, c: &CharacteristicElement, sign: Sign) -> Result<Q> {
        let num = self.square(c.as_slice()) - 3 * self.signature - sign.as_i64() * 2 * self.euler;
        exact_div(num, 4, "c2 of spinor bundle").map(|v| ratio(v, 1))
    }

    /// Number of Spin^c classes sharing one Chern class.
    pub fn spinc_count_per_chern(&self) -> u64 {
        self.tors2_order
    }

    /// `p ≡ w₂² (mod 4)`. The square of a lift is well defined mod 4.
    pub fn spin_sp1_admissible(&self, p: i64) -> bool {
        let w = self.w2_lift();
        (p - self.square(&w)).rem_euclid(4) == 0
    }

    /// `p ≡ (w₂ + c)² (mod 4)`.
    pub fn spin_u2_admissible(&self, p: i64, c: &[i64]) -> Result<bool> {
        self.check_len(c)?;
        let s: Vec<i64> = self.w2_lift().iter().zip(c).map(|(w, x)| w + x).collect();
        Ok((p - self.square(&s)).rem_euclid(4) == 0)
    }

    /// Expected dimension of the PU(2)-monopole moduli space,
    /// `½(−3p₁ + c₁²) − ½(3e + 4σ)`.
    pub fn expected_dim_pu2(&self, p1: i64, c1: &[i64]) -> Result<i64> {
        if !self.spin_u2_admissible(p1, c1)? {
            return Err(Error::NotAdmissible {
                p1,
                c1: c1.to_vec(),
            });
        }
        let num = -3 * p1 + self.square(c1) - 3 * self.euler - 4 * self.signature;
        exact_div(num, 2, "PU(2) expected dimension")
    }

    /// Uhlenbeck strata for `(p₁, c₁)`: level `l` has `p₁ + 4l` and dimension
    /// `χ − 2l` (a moduli space of dimension `χ − 6l` times `Sˡ(X)`).
    ///
    /// Lists levels while the dimension stays non-negative, capped by `max_l`.
    pub fn uhlenbeck_strata(
        &self,
        p1: i64,
        c1: &[i64],
        max_l: Option<u32>,
    ) -> Result<Vec<UhlenbeckStratum>> {
        let chi = self.expected_dim_pu2(p1, c1)?;
        let mut out = Vec::new();
        let mut l = 0u32;
        loop {
            if max_l.is_some_and(|m| l > m) {
                break;
            }
            let dim = chi - 2 * l as i64;
            if dim < 0 {
                break;
            }
            out.push(UhlenbeckStratum {
                l,
                p1: p1 + 4 * l as i64,
                dim,
            });
            l += 1;
        }
        Ok(out)
    }
}

/// A-priori bound `sup|Ψ|² ≤ max(0, sup(−s + |4πβ⁺|))` on the spinor.
pub fn spinor_sup_bound(sup_term: &Q) -> Q {
    if *sup_term > Q::from_integer(0.into()) {
        sup_term.clone()
    } else {
        Q::from_integer(0.into())
    }
}

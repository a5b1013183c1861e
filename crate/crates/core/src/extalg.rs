//! The integer exterior algebra `Λ*(H₁(X,Z)/Tors)` on generators
//! `α₁..α_{b₁}`, the degree-2 class `u_c`, and the universal wall-crossing
//! difference for `b₊ = 1`.

use crate::chambers::OrientationData;
use crate::error::{Error, Result};
use crate::topology::{CharacteristicElement, ManifoldTopology};
use std::collections::BTreeMap;
use std::fmt;

/// A basis monomial `α_{i₁} ∧ … ∧ α_{i_k}` with `i₁ < … < i_k`, stored as a
/// bitmask (bit `i − 1` set for `αᵢ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u64);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// From strictly increasing 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut bits = 0u64;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > 64 || i <= last {
                return None;
            }
            bits |= 1 << (i - 1);
            last = i;
        }
        Some(Blade(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..64)
            .filter(|i| self.0 >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    fn top(rank: usize) -> Blade {
        if rank == 64 {
            Blade(u64::MAX)
        } else {
            Blade((1u64 << rank) - 1)
        }
    }

    /// `self ∧ other = sign · (self ∪ other)`, or `None` when they share an index.
    pub fn wedge(self, other: Blade) -> Option<(i64, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each generator of `other` moves left past every generator of `self`
        // with a larger index.
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let i = rest.trailing_zeros();
            swaps += (self.0 >> i).count_ones();
            rest &= rest - 1;
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Blade(self.0 | other.0)))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("a{i}")).collect();
        f.write_str(&parts.join("^"))
    }
}

/// An element of `Λ*(Z^{b₁})` with integer coefficients. Zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtForm {
    rank: usize,
    terms: BTreeMap<Blade, i64>,
}

impl ExtForm {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= 64, "exterior algebra rank above 64 is unsupported");
        ExtForm {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::scalar(rank, 1)
    }

    pub fn scalar(rank: usize, k: i64) -> Self {
        let mut f = Self::zero(rank);
        f.add_term(Blade::SCALAR, k)
            .expect("scalar term always fits");
        f
    }

    /// `coeff · α_{i₁} ∧ … ∧ α_{i_k}` for 1-based indices in any order;
    /// the coefficient absorbs the sorting sign.
    pub fn monomial(rank: usize, indices: &[usize], coeff: i64) -> Result<Self> {
        let mut f = Self::one(rank);
        for &i in indices {
            if i == 0 || i > rank {
                return Err(Error::IndexOutOfRange { index: i, rank });
            }
            let g = ExtForm::from_terms(rank, [(Blade(1 << (i - 1)), 1)])?;
            f = f.wedge(&g)?;
        }
        f.scale(coeff)
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Blade, i64)>) -> Result<Self> {
        let mut f = Self::zero(rank);
        for (b, k) in terms {
            if b.bits() & !Blade::top(rank).bits() != 0 {
                return Err(Error::IndexOutOfRange {
                    index: 64 - b.bits().leading_zeros() as usize,
                    rank,
                });
            }
            f.add_term(b, k)?;
        }
        Ok(f)
    }

    fn add_term(&mut self, b: Blade, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(b).or_insert(0);
        *entry = entry
            .checked_add(k)
            .ok_or(Error::Overflow("exterior form addition"))?;
        if *entry == 0 {
            self.terms.remove(&b);
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, i64)> + '_ {
        self.terms.iter().map(|(&b, &k)| (b, k))
    }

    pub fn coefficient(&self, b: Blade) -> i64 {
        self.terms.get(&b).copied().unwrap_or(0)
    }

    /// The degree if every term has the same degree; `None` for mixed forms
    /// and for zero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|b| b.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn homogeneous_part(&self, degree: usize) -> ExtForm {
        ExtForm {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == degree)
                .map(|(&b, &k)| (b, k))
                .collect(),
        }
    }

    /// Coefficient on `α₁ ∧ … ∧ α_{b₁}`.
    pub fn top_coefficient(&self) -> i64 {
        self.coefficient(Blade::top(self.rank))
    }

    fn check_rank(&self, other: &ExtForm) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn add(&self, other: &ExtForm) -> Result<ExtForm> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (b, k) in other.terms() {
            out.add_term(b, k)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Result<ExtForm> {
        let mut out = ExtForm::zero(self.rank);
        for (b, v) in self.terms() {
            out.add_term(
                b,
                v.checked_mul(k)
                    .ok_or(Error::Overflow("exterior form scaling"))?,
            )?;
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &ExtForm) -> Result<ExtForm> {
        self.check_rank(other)?;
        let mut out = ExtForm::zero(self.rank);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if let Some((s, ab)) = a.wedge(b) {
                    let v = x
                        .checked_mul(y)
                        .and_then(|v| v.checked_mul(s))
                        .ok_or(Error::Overflow("wedge product"))?;
                    out.add_term(ab, v)?;
                }
            }
        }
        Ok(out)
    }

    /// `self^{∧k}`; the zeroth power is `1`.
    pub fn power(&self, k: usize) -> Result<ExtForm> {
        let mut out = ExtForm::one(self.rank);
        for _ in 0..k {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    /// Exact division of every coefficient; `None` if some coefficient is
    /// not divisible.
    pub fn div_exact(&self, d: i64) -> Option<ExtForm> {
        let mut out = ExtForm::zero(self.rank);
        for (b, k) in self.terms() {
            if k % d != 0 {
                return None;
            }
            out.terms.insert(b, k / d);
        }
        Some(out)
    }
}

impl fmt::Display for ExtForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(b, _)| (b.degree(), b.indices()));
        for (n, (b, k)) in keys.into_iter().enumerate() {
            if n > 0 {
                f.write_str(if *k < 0 { " - " } else { " + " })?;
            } else if *k < 0 {
                f.write_str("-")?;
            }
            let a = k.unsigned_abs();
            if b.0 == 0 {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{b}")?;
            } else {
                write!(f, "{a}*{b}")?;
            }
        }
        Ok(())
    }
}

/// `u_c(αᵢ ∧ αⱼ) = ½⟨αᵢ ∪ αⱼ ∪ c, [X]⟩`, returned as a degree-2 form.
pub fn u_c(m: &ManifoldTopology, c: &CharacteristicElement) -> Result<ExtForm> {
    let t = &m.triple_cup;
    if t.b2() != m.b2() || t.b1() != m.b1 {
        return Err(Error::DimensionMismatch {
            expected: m.b1,
            found: t.b1(),
        });
    }
    let mut out = ExtForm::zero(m.b1);
    for i in 0..m.b1 {
        for j in (i + 1)..m.b1 {
            let v = t.contract(i, j, c.as_slice());
            if v % 2 != 0 {
                return Err(Error::UcNotIntegral {
                    i: i + 1,
                    j: j + 1,
                    value: v,
                });
            }
            out.add_term(Blade((1 << i) | (1 << j)), v / 2)?;
        }
    }
    Ok(out)
}

fn factorial(n: usize) -> Result<i64> {
    (1..=n as i64)
        .try_fold(1i64, |acc, k| acc.checked_mul(k))
        .ok_or(Error::Overflow("factorial"))
}

/// `(SW⁺ − SW⁻)(λ)` for a homogeneous `λ` of degree `r`:
///
/// `(−1)^k / k! · ⟨λ ∧ u_c^k, l_{O₁}⟩` with `k = (b₁ − r)/2` when
/// `r ≤ min(b₁, w_c)`, and `0` otherwise. The pairing with `l_{O₁}` is the
/// top coefficient times the orientation sign of `H¹`.
///
/// `u_c^k / k!` is computed as an integral divided power; a non-divisible
/// coefficient is reported as an error rather than rounded.
pub fn wall_crossing_delta(
    m: &ManifoldTopology,
    c: &CharacteristicElement,
    lambda: &ExtForm,
    orient: &OrientationData,
) -> Result<i64> {
    if m.bplus != 1 {
        return Err(Error::BplusNotOne(m.bplus));
    }
    if lambda.rank() != m.b1 {
        return Err(Error::RankMismatch(lambda.rank(), m.b1));
    }
    let w_c = m.expected_dim_abelian(c)?;
    let r = match lambda.degree() {
        Some(r) => r,
        None if lambda.is_zero() => return Ok(0),
        None => return Err(Error::NotHomogeneous),
    };
    if (r as i64 - w_c).rem_euclid(2) != 0 {
        return Err(Error::ParityMismatch { degree: r, w_c });
    }
    if r as i64 > (m.b1 as i64).min(w_c) {
        return Ok(0);
    }
    if !(m.b1 - r).is_multiple_of(2) {
        // Only reachable with inconsistent Betti data: w_c ≡ b₁ (mod 2) when b₊ = 1.
        return Err(Error::ParityMismatch { degree: r, w_c });
    }
    let k = (m.b1 - r) / 2;
    let u = u_c(m, c)?;
    let power = u.power(k)?;
    let divided = power
        .div_exact(factorial(k)?)
        .ok_or_else(|| Error::NonIntegralWallCrossing(format!("({power}) / {k}!")))?;
    let top = lambda.wedge(&divided)?.top_coefficient();
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    top.checked_mul(sign * orient.o1_sign.as_i64())
        .ok_or(Error::Overflow("wall crossing"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::PeriodRay;
    use crate::rational::qvec;
    use crate::topology::{Sign, TripleCup};

    fn blade(ix: &[usize]) -> Blade {
        Blade::from_indices(ix).unwrap()
    }

    #[test]
    fn basis_products() {
        let e1 = ExtForm::monomial(3, &[1], 1).unwrap();
        let e2 = ExtForm::monomial(3, &[2], 1).unwrap();
        let e13 = ExtForm::monomial(3, &[1, 3], 1).unwrap();
        assert_eq!(
            e1.wedge(&e2).unwrap(),
            ExtForm::monomial(3, &[1, 2], 1).unwrap()
        );
        assert!(e1.wedge(&e1).unwrap().is_zero());
        // (e₁ + e₂) ∧ e₁₃ = e₂ ∧ e₁ ∧ e₃ = −e₁₂₃
        let s = e1.add(&e2).unwrap().wedge(&e13).unwrap();
        assert_eq!(s.coefficient(blade(&[1, 2, 3])), -1);
        assert_eq!(s.terms().count(), 1);
        assert_eq!(
            ExtForm::monomial(3, &[3, 1], 1)
                .unwrap()
                .coefficient(blade(&[1, 3])),
            -1
        );
    }

    #[test]
    fn mismatched_rank() {
        assert_eq!(
            ExtForm::one(2).wedge(&ExtForm::one(3)),
            Err(Error::RankMismatch(2, 3))
        );
        assert!(ExtForm::monomial(2, &[3], 1).is_err());
    }

    #[test]
    fn display() {
        let f = ExtForm::monomial(3, &[1, 2], 3)
            .unwrap()
            .add(&ExtForm::monomial(3, &[3], -1).unwrap())
            .unwrap()
            .add(&ExtForm::one(3))
            .unwrap();
        assert_eq!(f.to_string(), "1 - a3 + 3*a1^a2");
        assert_eq!(ExtForm::zero(2).to_string(), "0");
    }

    fn torus_like(b1: usize, t12: i64) -> ManifoldTopology {
        // b₁ = 2, b₊ = 1, b₋ = 0: Betti data of a formal b₊ = 1 example.
        let mut triple = TripleCup::zeros(b1, 1);
        if b1 >= 2 {
            triple.set_antisymmetric(0, 1, 0, t12);
        }
        ManifoldTopology {
            name: "test".into(),
            b1,
            bplus: 1,
            bminus: 0,
            euler: 2 - 2 * b1 as i64 + 1,
            signature: 1,
            form: vec![vec![1]],
            w2: vec![true],
            tors2_order: 1,
            triple_cup: triple,
        }
    }

    fn orient(m: &ManifoldTopology, s: Sign) -> OrientationData {
        OrientationData {
            o1_sign: s,
            h0: PeriodRay::new(m, qvec(&[1]), Sign::Plus).unwrap(),
        }
    }

    #[test]
    fn u_c_values() {
        let m = ManifoldTopology::projective_plane();
        let c = m.characteristic(vec![3]).unwrap();
        assert!(u_c(&m, &c).unwrap().is_zero());

        let m = torus_like(2, 2);
        let c = m.characteristic(vec![3]).unwrap();
        // ½ · 3 · 2 = 3
        assert_eq!(
            u_c(&m, &c).unwrap(),
            ExtForm::monomial(2, &[1, 2], 3).unwrap()
        );

        let m = torus_like(2, 1);
        let c = m.characteristic(vec![3]).unwrap();
        assert_eq!(
            u_c(&m, &c),
            Err(Error::UcNotIntegral {
                i: 1,
                j: 2,
                value: 3
            })
        );
    }

    #[test]
    fn cp2_delta_is_one() {
        let m = ManifoldTopology::projective_plane();
        let o = orient(&m, Sign::Plus);
        let c = m.characteristic(vec![5]).unwrap();
        assert_eq!(
            wall_crossing_delta(&m, &c, &ExtForm::one(0), &o).unwrap(),
            1
        );
        let o = orient(&m, Sign::Minus);
        assert_eq!(
            wall_crossing_delta(&m, &c, &ExtForm::one(0), &o).unwrap(),
            -1
        );
        // w_c < 0 vanishes
        let c = m.characteristic(vec![1]).unwrap();
        assert_eq!(
            wall_crossing_delta(&m, &c, &ExtForm::one(0), &o).unwrap(),
            0
        );
    }

    #[test]
    fn b1_two_delta_is_minus_k() {
        // e = 2 − 4 + 1 = −1, σ = 1: w_c = (c² − 3 + 2)/4; c = 3 → w_c = 2.
        let m = torus_like(2, 2);
        let c = m.characteristic(vec![3]).unwrap();
        assert_eq!(m.expected_dim_abelian(&c).unwrap(), 2);
        let o = orient(&m, Sign::Plus);
        // u_c = 3 α₁∧α₂, k = 1 → −3
        assert_eq!(
            wall_crossing_delta(&m, &c, &ExtForm::one(2), &o).unwrap(),
            -3
        );
        // r = 2: λ = α₁∧α₂, k = 0 → +1
        let top = ExtForm::monomial(2, &[1, 2], 1).unwrap();
        assert_eq!(wall_crossing_delta(&m, &c, &top, &o).unwrap(), 1);
        // parity violation
        let deg1 = ExtForm::monomial(2, &[1], 1).unwrap();
        assert!(matches!(
            wall_crossing_delta(&m, &c, &deg1, &o),
            Err(Error::ParityMismatch { .. })
        ));
        // c = 1: w_c = 0, r = 0 ≤ min(2, 0) still nonzero
        let c1 = m.characteristic(vec![1]).unwrap();
        assert_eq!(m.expected_dim_abelian(&c1).unwrap(), 0);
        // u_1 = α₁∧α₂
        assert_eq!(
            wall_crossing_delta(&m, &c1, &ExtForm::one(2), &o).unwrap(),
            -1
        );
        // r = 2 > w_c = 0 → vanishes
        assert_eq!(wall_crossing_delta(&m, &c1, &top, &o).unwrap(), 0);
    }

    #[test]
    fn mixed_degree_rejected() {
        let m = torus_like(2, 2);
        let c = m.characteristic(vec![3]).unwrap();
        let mixed = ExtForm::one(2)
            .add(&ExtForm::monomial(2, &[1, 2], 1).unwrap())
            .unwrap();
        assert_eq!(
            wall_crossing_delta(&m, &c, &mixed, &orient(&m, Sign::Plus)),
            Err(Error::NotHomogeneous)
        );
    }
}

//! The integral group ring of an elementary abelian 2-group.
//!
//! `G = (Z/2)^k` is encoded by bit vectors: the element with index `g` is the
//! product of the generators `σ(i+1)` for every bit `i` set in `g`, so the group
//! law is XOR and generator `i` is `1 << i`. An element of `Z[G]` is the dense
//! vector of its `2^k` coefficients, indexed the same way.
//!
//! All coefficient arithmetic is checked; overflow is reported as
//! [`Error::Overflow`] rather than wrapping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Hard ceiling on the rank, independent of [`crate::Limits`]. Multiplication
/// is `O(4^k)`, so this only guards against absurd allocations.
pub const RANK_CEILING: u32 = 16;

fn check_rank(rank: u32) -> Result<()> {
    if rank > RANK_CEILING {
        return Err(Error::LimitExceeded {
            what: "group rank",
            value: rank as u64,
            ceiling: RANK_CEILING as u64,
        });
    }
    Ok(())
}

/// An element of `(Z/2)^k`, stored as its bit index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(u32);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub const fn from_index(index: u32) -> Self {
        GroupElement(index)
    }

    /// The `i`-th generator (zero based), printed as `σ(i+1)`.
    pub const fn generator(i: u32) -> Self {
        GroupElement(1 << i)
    }

    /// Product of the zero-based generators in `gens`.
    pub fn product_of(gens: &[u32]) -> Self {
        gens.iter()
            .fold(Self::IDENTITY, |acc, &i| acc * Self::generator(i))
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_identity(self) -> bool {
        self.0 == 0
    }

    pub const fn is_valid_for(self, rank: u32) -> bool {
        rank <= RANK_CEILING && (self.0 >> rank) == 0
    }

    /// Evaluates the character with bit mask `chi` at `self`, as an element of `Z/2`.
    pub fn character(self, chi: u32) -> u32 {
        (self.0 & chi).count_ones() & 1
    }

    /// All elements of `(Z/2)^rank` in index order.
    pub fn all(rank: u32) -> impl Iterator<Item = GroupElement> {
        (0..1u32 << rank).map(GroupElement)
    }
}

impl std::ops::Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: Self) -> Self {
        #[allow(clippy::suspicious_arithmetic_impl)] // XOR is the group law
        GroupElement(self.0 ^ rhs.0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let mut bits = self.0;
        while bits != 0 {
            let i = bits.trailing_zeros();
            write!(f, "σ{}", i + 1)?;
            bits &= bits - 1;
        }
        Ok(())
    }
}

/// An element of `Z[(Z/2)^k]` with exact integer coefficients.
///
/// Serializes as the JSON array of its `2^k` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GroupRingElt {
    rank: u32,
    coeffs: Vec<i64>,
}

impl TryFrom<Vec<i64>> for GroupRingElt {
    type Error = Error;

    fn try_from(coeffs: Vec<i64>) -> Result<Self> {
        GroupRingElt::from_coeffs(coeffs)
    }
}

impl From<GroupRingElt> for Vec<i64> {
    fn from(x: GroupRingElt) -> Self {
        x.coeffs
    }
}

impl GroupRingElt {
    pub fn zero(rank: u32) -> Result<Self> {
        check_rank(rank)?;
        Ok(GroupRingElt {
            rank,
            coeffs: vec![0; 1 << rank],
        })
    }

    pub fn one(rank: u32) -> Result<Self> {
        Self::from_element(rank, GroupElement::IDENTITY)
    }

    /// The group element `g` viewed as a ring element.
    pub fn from_element(rank: u32, g: GroupElement) -> Result<Self> {
        let mut x = Self::zero(rank)?;
        x.check_element(g)?;
        x.coeffs[g.index() as usize] = 1;
        Ok(x)
    }

    /// Builds an element from its coefficient vector; the length fixes the rank
    /// and must be a power of two.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self> {
        let len = coeffs.len();
        if !len.is_power_of_two() {
            return Err(Error::invalid(format!(
                "group ring element needs 2^k coefficients, got {len}"
            )));
        }
        let rank = len.trailing_zeros();
        check_rank(rank)?;
        Ok(GroupRingElt { rank, coeffs })
    }

    /// `Σ coefficient · g` over the given terms; repeated elements accumulate.
    pub fn from_terms(rank: u32, terms: &[(i64, GroupElement)]) -> Result<Self> {
        let mut x = Self::zero(rank)?;
        for &(a, g) in terms {
            x.check_element(g)?;
            let slot = &mut x.coeffs[g.index() as usize];
            *slot = slot.checked_add(a).ok_or(Error::Overflow("from_terms"))?;
        }
        Ok(x)
    }

    /// The element with coefficient `value` on every member of `support`.
    pub fn from_support<I>(rank: u32, support: I, value: i64) -> Result<Self>
    where
        I: IntoIterator<Item = GroupElement>,
    {
        let mut x = Self::zero(rank)?;
        for g in support {
            x.check_element(g)?;
            x.coeffs[g.index() as usize] = value;
        }
        Ok(x)
    }

    /// `Σ_{g ∈ G} g`, fixed by every translation.
    pub fn norm_element(rank: u32) -> Result<Self> {
        Self::constant(rank, 1)
    }

    /// The element with every coefficient equal to `value`.
    pub fn constant(rank: u32, value: i64) -> Result<Self> {
        check_rank(rank)?;
        Ok(GroupRingElt {
            rank,
            coeffs: vec![value; 1 << rank],
        })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: GroupElement) -> i64 {
        self.coeffs[g.index() as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&a| a >= 0)
    }

    /// Elements with a nonzero coefficient, in index order.
    pub fn support(&self) -> Vec<GroupElement> {
        self.terms().map(|(_, g)| g).collect()
    }

    /// Nonzero `(coefficient, element)` pairs in index order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, GroupElement)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| (a, GroupElement(i as u32)))
    }

    /// Augmentation: the sum of all coefficients.
    pub fn augmentation(&self) -> Result<i64> {
        self.coeffs
            .iter()
            .try_fold(0i64, |acc, &a| acc.checked_add(a))
            .ok_or(Error::Overflow("augmentation"))
    }

    pub fn min_coeff(&self) -> i64 {
        self.coeffs.iter().copied().min().unwrap_or(0)
    }

    fn check_element(&self, g: GroupElement) -> Result<()> {
        if g.is_valid_for(self.rank) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "group element {} is outside (Z/2)^{}",
                g.index(),
                self.rank
            )))
        }
    }

    fn check_same_rank(&self, other: &Self) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(i64, i64) -> Option<i64>,
    ) -> Result<Self> {
        self.check_same_rank(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow(op)))
            .collect::<Result<_>>()?;
        Ok(GroupRingElt {
            rank: self.rank,
            coeffs,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", i64::checked_sub)
    }

    pub fn neg(&self) -> Result<Self> {
        self.scale(-1)
    }

    pub fn scale(&self, factor: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(factor).ok_or(Error::Overflow("scale")))
            .collect::<Result<_>>()?;
        Ok(GroupRingElt {
            rank: self.rank,
            coeffs,
        })
    }

    /// Exact division of every coefficient by two.
    pub fn halve(&self) -> Result<Self> {
        if let Some(a) = self.coeffs.iter().find(|&&a| a % 2 != 0) {
            return Err(Error::invalid(format!(
                "cannot halve {self}: coefficient {a} is odd"
            )));
        }
        Ok(GroupRingElt {
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|a| a / 2).collect(),
        })
    }

    /// Ring product: XOR convolution, `result[g] = Σ_{a·b = g} x[a]·y[b]`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        let mut out = vec![0i64; self.coeffs.len()];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in other.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let term = x.checked_mul(y).ok_or(Error::Overflow("mul"))?;
                let slot = &mut out[a ^ b];
                *slot = slot.checked_add(term).ok_or(Error::Overflow("mul"))?;
            }
        }
        Ok(GroupRingElt {
            rank: self.rank,
            coeffs: out,
        })
    }

    /// Action of `g` by translation: `result[h] = x[g·h]`. This is the Galois
    /// action on divisors and coincides with multiplication by `g`.
    pub fn translate(&self, g: GroupElement) -> Result<Self> {
        self.check_element(g)?;
        let gi = g.index() as usize;
        let coeffs = (0..self.coeffs.len())
            .map(|h| self.coeffs[gi ^ h])
            .collect();
        Ok(GroupRingElt {
            rank: self.rank,
            coeffs,
        })
    }

    /// Elements where `self` falls short of `target`. Empty exactly when
    /// `self ≥ target` coefficientwise, i.e. when the divisor `self` is
    /// divisible by the divisor `target`.
    pub fn defect(&self, target: &Self) -> Result<Vec<GroupElement>> {
        self.check_same_rank(target)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&target.coeffs)
            .enumerate()
            .filter(|(_, (a, b))| a < b)
            .map(|(i, _)| GroupElement(i as u32))
            .collect())
    }

    /// Whether `self ≥ target` coefficientwise.
    pub fn dominates(&self, target: &Self) -> Result<bool> {
        Ok(self.defect(target)?.is_empty())
    }

    /// The isotropy group `{ g : g·x = x }`, in index order.
    pub fn stabilizer(&self) -> Vec<GroupElement> {
        let n = self.coeffs.len();
        (0..n)
            .filter(|&g| (0..n).all(|h| self.coeffs[g ^ h] == self.coeffs[h]))
            .map(|g| GroupElement(g as u32))
            .collect()
    }
}

impl fmt::Display for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, g) in self.terms() {
            let (sign, mag) = if a < 0 { ("-", -(a as i128)) } else { ("+", a as i128) };
            match (first, sign) {
                (true, "-") => f.write_str("-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            first = false;
            match (mag, g.is_identity()) {
                (m, true) => write!(f, "{m}")?,
                (1, false) => write!(f, "{g}")?,
                (m, false) => write!(f, "{m}{g}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Free-function form of [`GroupRingElt::norm_element`].
pub fn norm_element(rank: u32) -> Result<GroupRingElt> {
    GroupRingElt::norm_element(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S1: GroupElement = GroupElement::generator(0);
    const S2: GroupElement = GroupElement::generator(1);
    const S3: GroupElement = GroupElement::generator(2);
    const ONE: GroupElement = GroupElement::IDENTITY;

    fn elt(terms: &[(i64, GroupElement)]) -> GroupRingElt {
        GroupRingElt::from_terms(3, terms).unwrap()
    }

    #[test]
    fn product_of_two_quadratic_factors() {
        let a = elt(&[(1, ONE), (1, S2)]);
        let b = elt(&[(1, ONE), (1, S3)]);
        let expected = elt(&[(1, ONE), (1, S2), (1, S3), (1, S2 * S3)]);
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn one_is_neutral() {
        let x = elt(&[(3, ONE), (-2, S1), (7, S1 * S2 * S3)]);
        assert_eq!(x.mul(&GroupRingElt::one(3).unwrap()).unwrap(), x);
    }

    #[test]
    fn norm_squared() {
        let n = norm_element(3).unwrap();
        assert_eq!(n.mul(&n).unwrap(), n.scale(8).unwrap());
        for g in GroupElement::all(3) {
            let g = GroupRingElt::from_element(3, g).unwrap();
            assert_eq!(g.mul(&n).unwrap(), n);
        }
        assert_eq!(norm_element(0).unwrap().coeffs(), &[1]);
        assert_eq!(norm_element(3).unwrap().coeffs(), &[1; 8]);
    }

    #[test]
    fn translate_by_conjugation() {
        let c = S1 * S2 * S3;
        let x = elt(&[(1, ONE), (1, S1 * S2), (1, S1 * S3), (1, S2 * S3)]);
        let expected = elt(&[(1, c), (1, S3), (1, S2), (1, S1)]);
        assert_eq!(x.translate(c).unwrap(), expected);
        assert_eq!(x.translate(ONE).unwrap(), x);
        let n = norm_element(3).unwrap();
        assert_eq!(n.translate(c).unwrap(), n);
    }

    #[test]
    fn defect_reports_missing_summands() {
        let m = elt(&[
            (3, ONE),
            (2, S1),
            (2, S2),
            (2, S3),
            (1, S2 * S3),
            (1, S1 * S3),
            (1, S1 * S2),
        ]);
        let n = norm_element(3).unwrap();
        assert_eq!(m.defect(&n).unwrap(), vec![S1 * S2 * S3]);

        let m_prime = elt(&[
            (2, ONE),
            (1, S1),
            (1, S2),
            (3, S3),
            (2, S1 * S3),
            (2, S2 * S3),
            (1, S1 * S2 * S3),
        ]);
        assert_eq!(m_prime.defect(&n).unwrap(), vec![S1 * S2]);
        assert!(n.defect(&n).unwrap().is_empty());
    }

    #[test]
    fn stabilizers() {
        let a = elt(&[(1, ONE), (1, S2)]).mul(&elt(&[(1, ONE), (1, S3)])).unwrap();
        assert_eq!(a.stabilizer(), vec![ONE, S2, S3, S2 * S3]);
        let b = elt(&[(1, ONE), (1, S1), (1, S2), (1, S3)]);
        assert_eq!(b.stabilizer(), vec![ONE]);
        assert_eq!(norm_element(3).unwrap().stabilizer().len(), 8);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = GroupRingElt::one(2).unwrap();
        let b = GroupRingElt::one(3).unwrap();
        assert_eq!(a.mul(&b), Err(Error::RankMismatch { left: 2, right: 3 }));
        assert!(a.add(&b).is_err());
        assert!(a.defect(&b).is_err());
        assert!(a.translate(GroupElement::from_index(4)).is_err());
    }

    #[test]
    fn overflow_is_loud() {
        let big = GroupRingElt::constant(1, i64::MAX / 2 + 1).unwrap();
        assert_eq!(big.add(&big), Err(Error::Overflow("add")));
        assert!(big.mul(&big).is_err());
    }

    #[test]
    fn display_and_json() {
        let x = elt(&[(3, ONE), (-2, S1), (1, S1 * S2 * S3)]);
        assert_eq!(x.to_string(), "3 - 2σ1 + σ1σ2σ3");
        assert_eq!(GroupRingElt::zero(2).unwrap().to_string(), "0");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[3,-2,0,0,0,0,0,1]");
        let back: GroupRingElt = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<GroupRingElt>("[1,2,3]").is_err());
        assert_eq!(serde_json::to_string(&(S1 * S3)).unwrap(), "5");
    }

    #[test]
    fn halve_requires_even_coefficients() {
        let x = elt(&[(2, ONE), (4, S1)]);
        assert_eq!(x.halve().unwrap(), elt(&[(1, ONE), (2, S1)]));
        assert!(elt(&[(1, ONE)]).halve().is_err());
    }
}

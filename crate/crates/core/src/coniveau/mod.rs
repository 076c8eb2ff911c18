//! Frobenius eigenvalues on `H^n` of a product of elliptic curves and their
//! coniveau.
//!
//! For `X = ∏ E_i^{m_i}` the cohomology `H^n(X̄)` is `Λ^n H^1(X̄)`, and `H^1` of
//! each copy of `E_i` carries the eigenvalues `α_i` and `α_i^c`. An eigenvalue
//! on `H^n` is therefore a monomial `∏ α_i^{e_i} (α_i^c)^{ē_i}` with
//! `e_i, ē_i ≤ m_i` and total degree `n`.
//!
//! Two coniveau notions are compared:
//!
//! * **Tate coniveau**: the largest `j` with `q^j` dividing the eigenvalue, read
//!   off the divisor.
//! * **Witnessed coniveau**: the largest number of disjoint slot pairs whose
//!   product has the divisor of `q`. Each such pair is a divisor class on
//!   `E_i × E_j`, and cupping them produces algebraic cycles, so this is the
//!   coniveau that pair extraction can certify.
//!
//! Witnessed never exceeds Tate. A monomial where it is strictly smaller is a
//! *gap*: a candidate exotic Tate class.

mod verify;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group_ring::GroupRingElt;
use crate::weil::{FieldContext, WeilClass};
use crate::{Error, Limits, Result};

pub use verify::{
    verify_lemma1, verify_lemma1_with, verify_thm2, verify_thm2_with, Counterexample,
    StructuralCheck, VerificationReport,
};

/// One isogeny factor `E^multiplicity` of a product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Factor {
    pub class: WeilClass,
    pub multiplicity: u32,
}

impl Factor {
    pub fn new(class: WeilClass, multiplicity: u32) -> Self {
        Factor {
            class,
            multiplicity,
        }
    }
}

/// A product of elliptic curves over `F_q`, grouped by isogeny class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct ProductSpec {
    ctx: FieldContext,
    factors: Vec<Factor>,
    /// `[plain, conjugate]` divisor per factor, cached.
    slot_divisors: Vec<[GroupRingElt; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    context: FieldContext,
    factors: Vec<Factor>,
}

impl TryFrom<RawSpec> for ProductSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        ProductSpec::new(raw.context, raw.factors)
    }
}

impl From<ProductSpec> for RawSpec {
    fn from(spec: ProductSpec) -> Self {
        RawSpec {
            context: spec.ctx,
            factors: spec.factors,
        }
    }
}

/// Position of one eigenvalue in a monomial: `α_factor` or its conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub factor: usize,
    pub conjugate: bool,
}

/// Exponents of `α_i` and `α_i^c` for one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct SlotExponents {
    pub plain: u32,
    pub conjugate: u32,
}

impl From<[u32; 2]> for SlotExponents {
    fn from([plain, conjugate]: [u32; 2]) -> Self {
        SlotExponents { plain, conjugate }
    }
}

impl From<SlotExponents> for [u32; 2] {
    fn from(e: SlotExponents) -> Self {
        [e.plain, e.conjugate]
    }
}

/// A Frobenius eigenvalue on `H^n` of a product, as exponents per factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EigenvalueMonomial {
    pub exponents: Vec<SlotExponents>,
}

impl EigenvalueMonomial {
    pub fn new(exponents: Vec<SlotExponents>) -> Self {
        EigenvalueMonomial { exponents }
    }

    /// From `[plain, conjugate]` pairs.
    pub fn from_pairs(pairs: &[[u32; 2]]) -> Self {
        EigenvalueMonomial {
            exponents: pairs.iter().map(|&p| p.into()).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().map(|e| e.plain + e.conjugate).sum()
    }

    /// Global complex conjugate: swaps `α_i` and `α_i^c` everywhere.
    pub fn conjugate(&self) -> Self {
        EigenvalueMonomial {
            exponents: self
                .exponents
                .iter()
                .map(|e| SlotExponents {
                    plain: e.conjugate,
                    conjugate: e.plain,
                })
                .collect(),
        }
    }

    /// Concatenation of eigenvalue multisets (product of the monomials).
    pub fn times(&self, other: &Self) -> Result<Self> {
        if self.exponents.len() != other.exponents.len() {
            return Err(Error::invalid("monomials over different products"));
        }
        Ok(EigenvalueMonomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| SlotExponents {
                    plain: a.plain + b.plain,
                    conjugate: a.conjugate + b.conjugate,
                })
                .collect(),
        })
    }
}

/// Result of [`ProductSpec::witnessed_coniveau`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub level: u32,
    pub pairs: Vec<(Slot, Slot)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub name: String,
    pub exponents: EigenvalueMonomial,
    pub tate: u32,
    pub witnessed: u32,
    pub witness_pairs: Vec<[String; 2]>,
}

impl MonomialRecord {
    pub fn is_gap(&self) -> bool {
        self.tate > self.witnessed
    }
}

/// Per-monomial coniveau data for one cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConiveauReport {
    pub spec: ProductSpec,
    pub degree: u32,
    pub monomials: Vec<MonomialRecord>,
    /// Monomials with `tate > witnessed`: exotic candidates.
    pub gaps: Vec<MonomialRecord>,
}

impl ProductSpec {
    /// Validates the factors: multiplicities at least 1, unique labels, and every
    /// class an elliptic class of `ctx`.
    pub fn new(ctx: FieldContext, factors: Vec<Factor>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut slot_divisors = Vec::with_capacity(factors.len());
        for f in &factors {
            if f.multiplicity == 0 {
                return Err(Error::invalid(format!(
                    "factor {:?} has multiplicity 0",
                    f.class.label
                )));
            }
            if !seen.insert(f.class.label.as_str()) {
                return Err(Error::invalid(format!(
                    "duplicate class label {:?}",
                    f.class.label
                )));
            }
            if !f.class.classify(&ctx)?.is_elliptic {
                return Err(Error::invalid(format!(
                    "class {:?} is not elliptic; products must consist of elliptic curves",
                    f.class.label
                )));
            }
            slot_divisors.push([f.class.divisor.clone(), f.class.conjugate_divisor(&ctx)?]);
        }
        Ok(ProductSpec {
            ctx,
            factors,
            slot_divisors,
        })
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// `dim X`, the sum of the multiplicities.
    pub fn dimension(&self) -> u32 {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }

    pub fn check_limits(&self, limits: &Limits) -> Result<()> {
        Limits::check("group rank", self.ctx.rank() as u64, limits.max_rank as u64)?;
        Limits::check(
            "product dimension",
            self.dimension() as u64,
            limits.max_dimension as u64,
        )
    }

    pub fn slot_divisor(&self, slot: Slot) -> &GroupRingElt {
        &self.slot_divisors[slot.factor][slot.conjugate as usize]
    }

    pub fn slot_name(&self, slot: Slot) -> String {
        let label = &self.factors[slot.factor].class.label;
        if slot.conjugate {
            format!("{label}^c")
        } else {
            label.clone()
        }
    }

    pub fn check_monomial(&self, mon: &EigenvalueMonomial) -> Result<()> {
        if mon.exponents.len() != self.factors.len() {
            return Err(Error::invalid(format!(
                "monomial has {} exponent pairs for {} factors",
                mon.exponents.len(),
                self.factors.len()
            )));
        }
        for (f, e) in self.factors.iter().zip(&mon.exponents) {
            if e.plain > f.multiplicity || e.conjugate > f.multiplicity {
                return Err(Error::invalid(format!(
                    "exponents {:?} of {:?} exceed its multiplicity {}",
                    <[u32; 2]>::from(*e),
                    f.class.label,
                    f.multiplicity
                )));
            }
        }
        Ok(())
    }

    /// All eigenvalue monomials on `H^n`. Order: lexicographically descending
    /// on the flattened exponent vector `(e_1, ē_1, e_2, ē_2, …)`.
    pub fn eigenvalue_monomials(&self, n: u32) -> Result<Vec<EigenvalueMonomial>> {
        let top = 2 * self.dimension();
        if n > top {
            return Err(Error::invalid(format!(
                "degree {n} outside [0, {top}] for a product of dimension {}",
                self.dimension()
            )));
        }
        let caps: Vec<u32> = self
            .factors
            .iter()
            .flat_map(|f| [f.multiplicity, f.multiplicity])
            .collect();
        // suffix[i] = most that slots i.. can absorb
        let mut suffix = vec![0u32; caps.len() + 1];
        for i in (0..caps.len()).rev() {
            suffix[i] = suffix[i + 1] + caps[i];
        }

        let mut out = Vec::new();
        let mut current = vec![0u32; caps.len()];
        fn rec(
            i: usize,
            left: u32,
            caps: &[u32],
            suffix: &[u32],
            current: &mut Vec<u32>,
            out: &mut Vec<EigenvalueMonomial>,
        ) {
            if i == caps.len() {
                if left == 0 {
                    out.push(EigenvalueMonomial {
                        exponents: current
                            .chunks(2)
                            .map(|p| SlotExponents {
                                plain: p[0],
                                conjugate: p[1],
                            })
                            .collect(),
                    });
                }
                return;
            }
            let lo = left.saturating_sub(suffix[i + 1]);
            for e in (lo..=caps[i].min(left)).rev() {
                current[i] = e;
                rec(i + 1, left - e, caps, suffix, current, out);
            }
            current[i] = 0;
        }
        rec(0, n, &caps, &suffix, &mut current, &mut out);
        Ok(out)
    }

    /// `Σ_i e_i·div(α_i) + ē_i·c·div(α_i)`, in doubled units.
    pub fn divisor_of_monomial(&self, mon: &EigenvalueMonomial) -> Result<GroupRingElt> {
        self.check_monomial(mon)?;
        let mut acc = GroupRingElt::zero(self.ctx.rank())?;
        for (divs, e) in self.slot_divisors.iter().zip(&mon.exponents) {
            acc = acc.add(&divs[0].scale(e.plain as i64)?)?;
            acc = acc.add(&divs[1].scale(e.conjugate as i64)?)?;
        }
        Ok(acc)
    }

    /// Largest `j` with `[q^j]` dividing the eigenvalue: every doubled
    /// coefficient is at least `2j`.
    pub fn tate_coniveau(&self, mon: &EigenvalueMonomial) -> Result<u32> {
        let d = self.divisor_of_monomial(mon)?;
        Ok((d.min_coeff().max(0) / 2) as u32)
    }

    /// Maximum set of disjoint slot pairs, each with product divisor `[q]`.
    ///
    /// Divisor `d` pairs only with `2N − d`, so the compatibility graph on
    /// divisor types is a disjoint union of edges and loops and the greedy
    /// matching below is maximum.
    pub fn witnessed_coniveau(&self, mon: &EigenvalueMonomial) -> Result<Witness> {
        self.check_monomial(mon)?;
        let q = self.ctx.q_divisor();
        let mut by_divisor: BTreeMap<&GroupRingElt, Vec<Slot>> = BTreeMap::new();
        for (factor, e) in mon.exponents.iter().enumerate() {
            for (conjugate, count) in [(false, e.plain), (true, e.conjugate)] {
                let slot = Slot { factor, conjugate };
                let bucket = by_divisor.entry(self.slot_divisor(slot)).or_default();
                bucket.extend(std::iter::repeat(slot).take(count as usize));
            }
        }

        let mut pairs = Vec::new();
        let keys: Vec<&GroupRingElt> = by_divisor.keys().copied().collect();
        for d in keys {
            let complement = q.sub(d)?;
            match complement.cmp(d) {
                std::cmp::Ordering::Equal => {
                    let slots = &by_divisor[d];
                    pairs.extend(slots.chunks_exact(2).map(|p| (p[0], p[1])));
                }
                std::cmp::Ordering::Greater => {
                    if let Some(partners) = by_divisor.get(&complement) {
                        pairs.extend(by_divisor[d].iter().copied().zip(partners.iter().copied()));
                    }
                }
                std::cmp::Ordering::Less => {}
            }
        }
        for p in &mut pairs {
            if p.1 < p.0 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort();
        Ok(Witness {
            level: pairs.len() as u32,
            pairs,
        })
    }

    pub fn monomial_name(&self, mon: &EigenvalueMonomial) -> String {
        MonomialName { spec: self, mon }.to_string()
    }

    pub fn record(&self, mon: &EigenvalueMonomial) -> Result<MonomialRecord> {
        let tate = self.tate_coniveau(mon)?;
        let witness = self.witnessed_coniveau(mon)?;
        Ok(MonomialRecord {
            name: self.monomial_name(mon),
            exponents: mon.clone(),
            tate,
            witnessed: witness.level,
            witness_pairs: witness
                .pairs
                .iter()
                .map(|&(a, b)| [self.slot_name(a), self.slot_name(b)])
                .collect(),
        })
    }

    /// Both coniveaux for every monomial of degree `n`, plus the gap list.
    pub fn analyze(&self, n: u32) -> Result<ConiveauReport> {
        let monomials = self
            .eigenvalue_monomials(n)?
            .iter()
            .map(|m| self.record(m))
            .collect::<Result<Vec<_>>>()?;
        let gaps = monomials.iter().filter(|r| r.is_gap()).cloned().collect();
        Ok(ConiveauReport {
            spec: self.clone(),
            degree: n,
            monomials,
            gaps,
        })
    }
}

struct MonomialName<'a> {
    spec: &'a ProductSpec,
    mon: &'a EigenvalueMonomial,
}

impl fmt::Display for MonomialName<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (factor, e) in self.mon.exponents.iter().enumerate() {
            for (conjugate, power) in [(false, e.plain), (true, e.conjugate)] {
                if power == 0 {
                    continue;
                }
                if !first {
                    f.write_str("·")?;
                }
                first = false;
                let name = self.spec.slot_name(Slot { factor, conjugate });
                match (power, conjugate) {
                    (1, _) => f.write_str(&name)?,
                    (p, false) => write!(f, "{name}^{p}")?,
                    (p, true) => write!(f, "({name})^{p}")?,
                }
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

//! Exhaustive verifiers for the triple lemma and its multi-exponent
//! generalisation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::group_ring::{GroupElement, GroupRingElt};
use crate::weil::{elliptic_sections, standard_triple, FieldContext};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub context: FieldContext,
    /// Doubled-unit divisors of the classes involved.
    pub divisors: Vec<GroupRingElt>,
    pub detail: String,
}

/// An identity that must hold coefficientwise, independent of any bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralCheck {
    pub description: String,
    pub element: GroupElement,
    /// Coefficient of `element` in each summand; all must vanish.
    pub coefficients: Vec<i64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub configurations_checked: u64,
    /// Configurations in which the hypothesis was met (and the conclusion had
    /// to be checked).
    pub premises_met: u64,
    pub structural_checks: Vec<StructuralCheck>,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.structural_checks.iter().all(|c| c.holds)
    }
}

/// Checks the triple lemma for every rank `1 ≤ k ≤ kmax`, every nontrivial
/// conjugation `c`, and every unordered triple (with repetition) of elliptic
/// classes, i.e. the supersingular divisor together with all elliptic sections:
/// whenever the triple's divisor is divisible by `[q]`, some pair must have
/// divisor exactly `[q]`.
pub fn verify_lemma1(kmax: u32) -> Result<VerificationReport> {
    verify_lemma1_with(kmax, &Limits::default())
}

pub fn verify_lemma1_with(kmax: u32, limits: &Limits) -> Result<VerificationReport> {
    if kmax == 0 {
        return Err(Error::invalid("kmax must be at least 1"));
    }
    Limits::check("kmax", kmax as u64, limits.max_rank as u64)?;

    let contexts: Vec<FieldContext> = (1..=kmax)
        .flat_map(|k| {
            (1..1u32 << k).map(move |c| {
                FieldContext::new(k, GroupElement::from_index(c)).expect("nontrivial c")
            })
        })
        .collect();

    let parts: Vec<VerificationReport> = contexts.par_iter().map(lemma1_for_context).collect();

    let mut report = VerificationReport::default();
    for part in parts {
        report.configurations_checked += part.configurations_checked;
        report.premises_met += part.premises_met;
        report.counterexamples.extend(part.counterexamples);
    }
    Ok(report)
}

fn lemma1_for_context(ctx: &FieldContext) -> VerificationReport {
    let mut classes = vec![ctx.supersingular_divisor()];
    classes.extend(elliptic_sections(ctx));
    let q = ctx.q_divisor();
    let n = classes.len();
    let is_q = |a: &GroupRingElt, b: &GroupRingElt| {
        a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| x + y == 2)
    };

    let mut report = VerificationReport::default();
    for i in 0..n {
        for j in i..n {
            for l in j..n {
                report.configurations_checked += 1;
                let (a, b, c) = (&classes[i], &classes[j], &classes[l]);
                let divisible = (0..a.order())
                    .all(|g| a.coeffs()[g] + b.coeffs()[g] + c.coeffs()[g] >= q.coeffs()[g]);
                if !divisible {
                    continue;
                }
                report.premises_met += 1;
                if !(is_q(a, b) || is_q(a, c) || is_q(b, c)) {
                    report.counterexamples.push(Counterexample {
                        context: *ctx,
                        divisors: vec![a.clone(), b.clone(), c.clone()],
                        detail: "triple divisible by [q] but no pair has divisor [q]".into(),
                    });
                }
            }
        }
    }
    report
}

/// For the standard triple `m1, m2, m3` (halved units) checks that
/// `n1·m1 + n2·m2 + n3·m3` and `n1·m1 + n2·m2 + n3·c·m3` have a zero coefficient
/// for every `(n1, n2, n3) ∈ [0, bound]^3 \ {0}`, i.e. are not divisible by
/// `[p]`. The structural checks record that the coefficient at `c` (resp. at
/// `σ1σ2`) vanishes in every summand, which settles all exponents at once.
pub fn verify_thm2(ctx: &FieldContext, bound: u32) -> Result<VerificationReport> {
    verify_thm2_with(ctx, bound, &Limits::default())
}

pub fn verify_thm2_with(ctx: &FieldContext, bound: u32, limits: &Limits) -> Result<VerificationReport> {
    if bound == 0 {
        return Err(Error::invalid("bound must be at least 1"));
    }
    Limits::check("exponent bound", bound as u64, limits.max_exponent_bound as u64)?;
    let [a1, a2, a3] = standard_triple(ctx)?;
    let c = ctx.conjugation();
    let m1 = a1.divisor.halve()?;
    let m2 = a2.divisor.halve()?;
    let m3 = a3.divisor.halve()?;
    let m3c = m3.translate(c)?;
    let norm = ctx.norm();

    let variants = [
        ("m1, m2, m3", [&m1, &m2, &m3], c),
        ("m1, m2, c·m3", [&m1, &m2, &m3c], GroupElement::product_of(&[0, 1])),
    ];

    let mut report = VerificationReport::default();
    for (name, summands, witness) in variants {
        let coefficients: Vec<i64> = summands.iter().map(|m| m.coeff(witness)).collect();
        report.structural_checks.push(StructuralCheck {
            description: format!("coefficient at {witness} vanishes in each of {name}"),
            element: witness,
            holds: coefficients.iter().all(|&a| a == 0),
            coefficients,
        });

        for n1 in 0..=bound as i64 {
            for n2 in 0..=bound as i64 {
                for n3 in 0..=bound as i64 {
                    if n1 == 0 && n2 == 0 && n3 == 0 {
                        continue;
                    }
                    report.configurations_checked += 1;
                    let total = summands[0]
                        .scale(n1)?
                        .add(&summands[1].scale(n2)?)?
                        .add(&summands[2].scale(n3)?)?;
                    if total.dominates(&norm)? {
                        report.premises_met += 1;
                        report.counterexamples.push(Counterexample {
                            context: *ctx,
                            divisors: vec![total],
                            detail: format!("({n1}, {n2}, {n3}) over {name} is divisible by [p]"),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

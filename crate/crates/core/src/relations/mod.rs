//! Multiplicative relations between Weil numbers at divisor level.
//!
//! A relation `∏ γ^{e_γ} = q^j` over a generator set (every class together
//! with its complex conjugate) holds at divisor level exactly when
//! `Σ e_γ·div(γ) = j·div(q)`. Relations form a lattice in `Z^{slots} ⊕ Z`, the
//! last coordinate being `j`. The sublattice spanned by degree-2 relations
//! (pairs with product `q`, i.e. divisor classes on products of two curves)
//! is what products of degree-2 Tate classes can reach; a relation outside it
//! cannot be reduced to degree 2.

mod lattice;

use std::collections::{HashMap, HashSet};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::group_ring::GroupRingElt;
use crate::weil::{FieldContext, WeilClass};
use crate::{Error, Limits, Result};

pub use lattice::{Membership, RelationLattice};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSlot {
    pub name: String,
    pub class: String,
    pub conjugate: bool,
    pub divisor: GroupRingElt,
}

/// Slots `γ, γ^c` for each class, in class order. Slot `2i` is class `i` and
/// slot `2i + 1` its conjugate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    context: FieldContext,
    slots: Vec<GeneratorSlot>,
}

/// `∏ slot^{exponents[slot]} = q^{q_power}`. Exponents may be negative when
/// used as lattice vectors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub exponents: Vec<i64>,
    pub q_power: i64,
}

impl Relation {
    pub fn degree(&self) -> i64 {
        self.exponents.iter().sum()
    }

    /// `(exponents, q_power)` as one lattice vector.
    pub fn extended(&self) -> Vec<i64> {
        let mut v = self.exponents.clone();
        v.push(self.q_power);
        v
    }

    /// Applies complex conjugation to every slot.
    pub fn conjugate(&self) -> Relation {
        let mut exponents = self.exponents.clone();
        for pair in exponents.chunks_exact_mut(2) {
            pair.swap(0, 1);
        }
        Relation {
            exponents,
            q_power: self.q_power,
        }
    }
}

/// JSON form of a relation: nonzero exponents keyed by slot name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedRelation {
    pub name: String,
    pub exponents: IndexMap<String, i64>,
    pub q_power: i64,
}

/// A relation outside the degree-2 lattice, or inside it but outside the
/// nonnegative monoid generated by degree-2 relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExoticRelation {
    pub relation: NamedRelation,
    pub membership: Membership,
    pub in_monoid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSearch {
    pub max_degree: u32,
    /// Nonnegative relations of degree `1..=max_degree` found.
    pub relations_found: u64,
    pub degree2: Vec<NamedRelation>,
    /// Relations not in the integer span of degree-2 relations.
    pub exotic: Vec<ExoticRelation>,
    /// Relations in the integer span but not a sum of degree-2 relations.
    pub lattice_not_monoid: Vec<ExoticRelation>,
}

impl GeneratorSet {
    pub fn new(ctx: &FieldContext, classes: &[WeilClass]) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut slots = Vec::with_capacity(2 * classes.len());
        for class in classes {
            class.validate(ctx)?;
            if !seen.insert(class.label.as_str()) {
                return Err(Error::invalid(format!("duplicate class label {:?}", class.label)));
            }
            slots.push(GeneratorSlot {
                name: class.label.clone(),
                class: class.label.clone(),
                conjugate: false,
                divisor: class.divisor.clone(),
            });
            slots.push(GeneratorSlot {
                name: format!("{}^c", class.label),
                class: class.label.clone(),
                conjugate: true,
                divisor: class.conjugate_divisor(ctx)?,
            });
        }
        Ok(GeneratorSet {
            context: *ctx,
            slots,
        })
    }

    pub fn context(&self) -> &FieldContext {
        &self.context
    }

    pub fn slots(&self) -> &[GeneratorSlot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slot_index(&self, name: &str) -> Option<usize> {
        self.slots.iter().position(|s| s.name == name)
    }

    /// Builds a relation from `(slot name, exponent)` pairs.
    pub fn relation(&self, terms: &[(&str, i64)], q_power: i64) -> Result<Relation> {
        let mut exponents = vec![0; self.len()];
        for &(name, e) in terms {
            let i = self
                .slot_index(name)
                .ok_or_else(|| Error::invalid(format!("unknown slot {name:?}")))?;
            exponents[i] += e;
        }
        Ok(Relation { exponents, q_power })
    }

    fn check_len(&self, exponents: &[i64]) -> Result<()> {
        if exponents.len() != self.len() {
            return Err(Error::invalid(format!(
                "{} exponents for {} generator slots",
                exponents.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// `Σ e·div(slot)` in doubled units.
    pub fn divisor(&self, exponents: &[i64]) -> Result<GroupRingElt> {
        self.check_len(exponents)?;
        let mut acc = GroupRingElt::zero(self.context.rank())?;
        for (&e, slot) in exponents.iter().zip(&self.slots) {
            if e != 0 {
                acc = acc.add(&slot.divisor.scale(e)?)?;
            }
        }
        Ok(acc)
    }

    /// Whether `Σ e·div = j·div(q)`.
    pub fn is_relation(&self, exponents: &[i64], q_power: i64) -> Result<bool> {
        let d = self.divisor(exponents)?;
        let target = self.context.q_divisor().scale(q_power)?;
        Ok(d == target)
    }

    /// The `j` for which `∏ slot^e = q^j`, if the product is a power of `q`.
    pub fn q_power_of(&self, exponents: &[i64]) -> Result<Option<i64>> {
        let d = self.divisor(exponents)?;
        Ok(uniform_q_power(d.coeffs()))
    }

    pub fn check(&self, relation: &Relation) -> Result<bool> {
        self.is_relation(&relation.exponents, relation.q_power)
    }

    /// Slot pairs with product `q`, one representative per
    /// complex-conjugate pair of relations (`γδ` and `γ^c δ^c` are listed once,
    /// as the one whose sorted slot indices come first). The conjugate of each
    /// pair is an integer combination of the listed ones, so the representatives
    /// span the same lattice as the full list. A slot may pair with itself:
    /// a supersingular slot squares to `q`.
    pub fn degree2_relations(&self) -> Vec<Relation> {
        let q = self.context.q_divisor();
        let n = self.len();
        let mut out = Vec::new();
        for s in 0..n {
            for t in s..n {
                let (a, b) = (&self.slots[s].divisor, &self.slots[t].divisor);
                let complementary = a
                    .coeffs()
                    .iter()
                    .zip(b.coeffs())
                    .zip(q.coeffs())
                    .all(|((x, y), z)| x + y == *z);
                if !complementary {
                    continue;
                }
                let (cs, ct) = (s ^ 1, t ^ 1);
                if (s, t) > (cs.min(ct), cs.max(ct)) {
                    continue;
                }
                let mut exponents = vec![0; n];
                exponents[s] += 1;
                exponents[t] += 1;
                out.push(Relation {
                    exponents,
                    q_power: 1,
                });
            }
        }
        out
    }

    /// The degree-2 relations together with their conjugates, deduplicated.
    fn degree2_closure(&self) -> Vec<Relation> {
        let mut all: Vec<Relation> = self
            .degree2_relations()
            .into_iter()
            .flat_map(|r| [r.conjugate(), r])
            .collect();
        all.sort();
        all.dedup();
        all
    }

    fn coordinate_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.slots.iter().map(|s| s.name.clone()).collect();
        names.push("q".into());
        names
    }

    /// The integer span of [`degree2_relations`](Self::degree2_relations).
    pub fn degree2_lattice(&self) -> Result<RelationLattice> {
        let basis = self
            .degree2_relations()
            .iter()
            .map(Relation::extended)
            .collect();
        RelationLattice::new(basis, self.coordinate_names())
    }

    pub fn membership(&self, relation: &Relation, lattice: &RelationLattice) -> Result<Membership> {
        self.check_len(&relation.exponents)?;
        lattice.contains(&relation.extended())
    }

    /// Whether a nonnegative relation is a sum of degree-2 relations.
    pub fn in_degree2_monoid(&self, relation: &Relation) -> Result<bool> {
        self.check_len(&relation.exponents)?;
        if relation.exponents.iter().any(|&e| e < 0) || !self.check(relation)? {
            return Ok(false);
        }
        let gens = self.degree2_closure();
        let mut memo = HashMap::new();
        Ok(monoid_search(&relation.exponents, &gens, &mut memo))
    }

    pub fn named(&self, relation: &Relation) -> NamedRelation {
        let exponents: IndexMap<String, i64> = relation
            .exponents
            .iter()
            .zip(&self.slots)
            .filter(|(&e, _)| e != 0)
            .map(|(&e, s)| (s.name.clone(), e))
            .collect();
        let name = exponents
            .iter()
            .map(|(slot, &e)| match e {
                1 => slot.clone(),
                e if slot.ends_with("^c") => format!("({slot})^{e}"),
                e => format!("{slot}^{e}"),
            })
            .collect::<Vec<_>>()
            .join("·");
        let name = format!("{} = q^{}", if name.is_empty() { "1" } else { &name }, relation.q_power);
        NamedRelation {
            name,
            exponents,
            q_power: relation.q_power,
        }
    }

    /// All nonnegative relations of degree `1..=max_degree`, in order of
    /// degree and then lexicographically descending exponents.
    pub fn nonnegative_relations(&self, max_degree: u32, limits: &Limits) -> Result<Vec<Relation>> {
        Limits::check(
            "relation degree",
            max_degree as u64,
            limits.max_relation_degree as u64,
        )?;
        let rank = self.context.rank();
        let mut out = Vec::new();
        for degree in 1..=max_degree {
            let mut exps = vec![0i64; self.len()];
            let acc = GroupRingElt::zero(rank)?;
            self.compositions(0, degree as i64, &acc, &mut exps, &mut out)?;
        }
        Ok(out)
    }

    fn compositions(
        &self,
        slot: usize,
        left: i64,
        acc: &GroupRingElt,
        exps: &mut [i64],
        out: &mut Vec<Relation>,
    ) -> Result<()> {
        if slot == self.len() {
            if left == 0 {
                if let Some(j) = uniform_q_power(acc.coeffs()) {
                    out.push(Relation {
                        exponents: exps.to_vec(),
                        q_power: j,
                    });
                }
            }
            return Ok(());
        }
        let last = slot + 1 == self.len();
        let lo = if last { left } else { 0 };
        for e in (lo..=left).rev() {
            exps[slot] = e;
            let next = acc.add(&self.slots[slot].divisor.scale(e)?)?;
            self.compositions(slot + 1, left - e, &next, exps, out)?;
        }
        exps[slot] = 0;
        Ok(())
    }

    /// Relations up to `max_degree` that do not reduce to degree 2, together
    /// with the degree-2 relations themselves. `None` uses the default degree
    /// from `limits`.
    pub fn find_exotic(&self, max_degree: Option<u32>, limits: &Limits) -> Result<RelationSearch> {
        let max_degree = max_degree.unwrap_or(limits.default_relation_degree);
        if max_degree < 2 {
            return Err(Error::invalid("max_degree must be at least 2"));
        }
        let lattice = self.degree2_lattice()?;
        let found = self.nonnegative_relations(max_degree, limits)?;
        let mut exotic = Vec::new();
        let mut lattice_not_monoid = Vec::new();
        for rel in &found {
            let membership = self.membership(rel, &lattice)?;
            let in_monoid = membership.member && self.in_degree2_monoid(rel)?;
            let record = || ExoticRelation {
                relation: self.named(rel),
                membership: membership.clone(),
                in_monoid,
            };
            if !membership.member {
                exotic.push(record());
            } else if !in_monoid {
                lattice_not_monoid.push(record());
            }
        }
        Ok(RelationSearch {
            max_degree,
            relations_found: found.len() as u64,
            degree2: self.degree2_relations().iter().map(|r| self.named(r)).collect(),
            exotic,
            lattice_not_monoid,
        })
    }
}

fn uniform_q_power(coeffs: &[i64]) -> Option<i64> {
    let first = *coeffs.first()?;
    (first % 2 == 0 && coeffs.iter().all(|&a| a == first)).then_some(first / 2)
}

fn monoid_search(remaining: &[i64], gens: &[Relation], memo: &mut HashMap<Vec<i64>, bool>) -> bool {
    let Some(first) = remaining.iter().position(|&e| e != 0) else {
        return true;
    };
    if let Some(&known) = memo.get(remaining) {
        return known;
    }
    let mut found = false;
    for g in gens {
        if g.exponents[first] == 0 {
            continue;
        }
        if g.exponents.iter().zip(remaining).all(|(a, b)| a <= b) {
            let next: Vec<i64> = remaining.iter().zip(&g.exponents).map(|(a, b)| a - b).collect();
            if monoid_search(&next, gens, memo) {
                found = true;
                break;
            }
        }
    }
    memo.insert(remaining.to_vec(), found);
    found
}

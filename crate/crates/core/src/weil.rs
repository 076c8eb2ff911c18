//! Weil classes as divisors in a multiquadratic CM field.
//!
//! Fix a multiquadratic CM field `K` with Galois group `G = (Z/2)^k`, complex
//! conjugation `c ∈ G`, and a prime `𝔭` of `K` above `p`, assumed totally
//! split. The divisor of any `q`-power Weil number in `K` is then `𝔭^{r·m}` for
//! some `m ∈ Q[G]`, and dividing out by `r` leaves `m` itself. Divisors are
//! stored in *doubled units* (`2m`) so that both kinds of elliptic Weil numbers
//! have integral coordinates:
//!
//! * an ordinary Weil number has `m + c·m = N` with entries in `{0, 1}`, i.e. `m`
//!   picks one prime out of every `⟨c⟩`-coset (a *section*); stored entries are
//!   `{0, 2}`;
//! * a supersingular one, `±p^{r/2}`, has `m = N/2`; stored entries are all `1`.
//!
//! `q` itself has stored divisor `2N`, the all-2 vector.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group_ring::{GroupElement, GroupRingElt};
use crate::{Error, Limits, Result};

/// The Galois group of the ambient field together with its complex conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawContext", into = "RawContext")]
pub struct FieldContext {
    rank: u32,
    conjugation: GroupElement,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawContext {
    k: u32,
    c: GroupElement,
}

impl TryFrom<RawContext> for FieldContext {
    type Error = Error;

    fn try_from(raw: RawContext) -> Result<Self> {
        FieldContext::new(raw.k, raw.c)
    }
}

impl From<FieldContext> for RawContext {
    fn from(ctx: FieldContext) -> Self {
        RawContext {
            k: ctx.rank,
            c: ctx.conjugation,
        }
    }
}

impl FieldContext {
    pub fn new(rank: u32, conjugation: GroupElement) -> Result<Self> {
        if rank > crate::group_ring::RANK_CEILING {
            return Err(Error::LimitExceeded {
                what: "group rank",
                value: rank as u64,
                ceiling: crate::group_ring::RANK_CEILING as u64,
            });
        }
        if !conjugation.is_valid_for(rank) {
            return Err(Error::invalid(format!(
                "conjugation {} is not an element of (Z/2)^{rank}",
                conjugation.index()
            )));
        }
        if rank >= 1 && conjugation.is_identity() {
            return Err(Error::invalid(
                "complex conjugation must be nontrivial when k >= 1",
            ));
        }
        Ok(FieldContext { rank, conjugation })
    }

    /// The triquadratic context `k = 3`, `c = σ1σ2σ3`, in which the three
    /// generators are dual to the characters of three imaginary quadratic fields.
    pub fn standard() -> Self {
        FieldContext {
            rank: 3,
            conjugation: GroupElement::product_of(&[0, 1, 2]),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn conjugation(&self) -> GroupElement {
        self.conjugation
    }

    pub fn order(&self) -> usize {
        1 << self.rank
    }

    /// `Σ_{g ∈ G} g`.
    pub fn norm(&self) -> GroupRingElt {
        GroupRingElt::norm_element(self.rank).expect("rank checked at construction")
    }

    /// Divisor of `q` in doubled units: the all-2 vector.
    pub fn q_divisor(&self) -> GroupRingElt {
        GroupRingElt::constant(self.rank, 2).expect("rank checked at construction")
    }

    /// Divisor of `p^{r/2}` in doubled units: the all-1 vector.
    pub fn supersingular_divisor(&self) -> GroupRingElt {
        self.norm()
    }

    /// The `⟨c⟩`-cosets `{g, c·g}` ordered by their smaller element.
    pub fn cosets(&self) -> Vec<[GroupElement; 2]> {
        GroupElement::all(self.rank)
            .filter(|&g| g < g * self.conjugation || self.rank == 0)
            .map(|g| [g, g * self.conjugation])
            .collect()
    }

    pub fn conjugate(&self, divisor: &GroupRingElt) -> Result<GroupRingElt> {
        self.check(divisor)?;
        divisor.translate(self.conjugation)
    }

    pub(crate) fn check(&self, divisor: &GroupRingElt) -> Result<()> {
        if divisor.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: divisor.rank(),
                right: self.rank,
            });
        }
        Ok(())
    }

    /// Whether `m` (doubled units) has entries in `{0, 2}` and `m + c·m = 2N`.
    pub fn is_section(&self, m: &GroupRingElt) -> bool {
        if m.rank() != self.rank || self.rank == 0 {
            return false;
        }
        let c = self.conjugation;
        GroupElement::all(self.rank).all(|g| {
            let a = m.coeff(g);
            (a == 0 || a == 2) && a + m.coeff(c * g) == 2
        })
    }

    /// `gcd(γ, γ^c) = 1` at divisor level: `min(m[g], m[c·g]) = 0` everywhere.
    pub fn is_ordinary_divisor(&self, m: &GroupRingElt) -> bool {
        m.rank() == self.rank
            && GroupElement::all(self.rank)
                .all(|g| m.coeff(g).min(m.coeff(self.conjugation * g)) == 0)
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}, c={}", self.rank, self.conjugation)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeilKind {
    Ordinary,
    Supersingular,
}

/// An isogeny class, represented by the divisor of its Weil number.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeilClass {
    pub label: String,
    pub kind: WeilKind,
    /// Doubled units.
    pub divisor: GroupRingElt,
}

impl WeilClass {
    /// An ordinary class; `divisor` must be a section of `ctx`.
    pub fn ordinary(label: impl Into<String>, ctx: &FieldContext, divisor: GroupRingElt) -> Result<Self> {
        let class = WeilClass {
            label: label.into(),
            kind: WeilKind::Ordinary,
            divisor,
        };
        class.validate(ctx)?;
        Ok(class)
    }

    pub fn supersingular(label: impl Into<String>, ctx: &FieldContext) -> Self {
        WeilClass {
            label: label.into(),
            kind: WeilKind::Supersingular,
            divisor: ctx.supersingular_divisor(),
        }
    }

    /// Checks the divisor against the invariants of its kind.
    pub fn validate(&self, ctx: &FieldContext) -> Result<()> {
        ctx.check(&self.divisor)?;
        match self.kind {
            WeilKind::Ordinary if !ctx.is_section(&self.divisor) => Err(Error::invalid(format!(
                "ordinary class {:?} has divisor {} which is not a section for {ctx}",
                self.label, self.divisor
            ))),
            WeilKind::Supersingular if self.divisor != ctx.supersingular_divisor() => {
                Err(Error::invalid(format!(
                    "supersingular class {:?} must have the all-1 divisor",
                    self.label
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn conjugate_divisor(&self, ctx: &FieldContext) -> Result<GroupRingElt> {
        ctx.conjugate(&self.divisor)
    }

    pub fn classify(&self, ctx: &FieldContext) -> Result<SectionInfo> {
        self.validate(ctx)?;
        match self.kind {
            WeilKind::Ordinary => classify_section(ctx, &self.divisor),
            WeilKind::Supersingular => Ok(SectionInfo {
                stabilizer: GroupElement::all(ctx.rank()).collect(),
                field_degree: 1,
                is_elliptic: true,
                dimension: 1,
            }),
        }
    }
}

/// Honda–Tate data read off a divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionInfo {
    pub stabilizer: Vec<GroupElement>,
    /// Degree over `Q` of the field generated by the Weil number.
    pub field_degree: u32,
    pub is_elliptic: bool,
    /// Dimension of the simple abelian variety (ordinary case: half the degree).
    pub dimension: u32,
}

/// Every section of `ctx`, in lexicographic order of coefficient vectors.
///
/// There are `2^(2^(k-1))` of them; `k = 0` has none.
pub fn enumerate_sections(ctx: &FieldContext) -> Result<Vec<GroupRingElt>> {
    enumerate_sections_with(ctx, &Limits::default())
}

pub fn enumerate_sections_with(ctx: &FieldContext, limits: &Limits) -> Result<Vec<GroupRingElt>> {
    if ctx.rank() == 0 {
        return Ok(Vec::new());
    }
    Limits::check(
        "section enumeration rank",
        ctx.rank() as u64,
        limits.max_section_rank as u64,
    )?;
    let cosets = ctx.cosets();
    let count = 1u64 << cosets.len();
    let mut sections: Vec<GroupRingElt> = (0..count)
        .map(|choice| {
            let support = cosets
                .iter()
                .enumerate()
                .map(|(i, coset)| coset[((choice >> i) & 1) as usize]);
            GroupRingElt::from_support(ctx.rank(), support, 2).expect("elements from ctx")
        })
        .collect();
    sections.sort();
    Ok(sections)
}

/// The sections with stabilizer of index 2, i.e. divisors of ordinary elliptic
/// Weil numbers: for every character `χ` with `χ(c) = 1`, the two half-spaces
/// `{χ = 0}` and `{χ = 1}`. Lexicographic order. Unlike
/// [`enumerate_sections`] this is cheap at every rank.
pub fn elliptic_sections(ctx: &FieldContext) -> Vec<GroupRingElt> {
    let rank = ctx.rank();
    let mut out: Vec<GroupRingElt> = (1..1u32 << rank)
        .filter(|&chi| ctx.conjugation().character(chi) == 1)
        .flat_map(|chi| {
            [0, 1].map(|side| {
                let support = GroupElement::all(rank).filter(move |g| g.character(chi) == side);
                GroupRingElt::from_support(rank, support, 2).expect("elements from ctx")
            })
        })
        .collect();
    out.sort();
    out
}

pub fn classify_section(ctx: &FieldContext, m: &GroupRingElt) -> Result<SectionInfo> {
    if !ctx.is_section(m) {
        return Err(Error::invalid(format!("{m} is not a section for {ctx}")));
    }
    let stabilizer = m.stabilizer();
    let field_degree = (ctx.order() / stabilizer.len()) as u32;
    Ok(SectionInfo {
        stabilizer,
        field_degree,
        is_elliptic: field_degree == 2,
        dimension: field_degree / 2,
    })
}

/// One block of the partition computed by [`orbits`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Indices into the canonical section list, ascending. The first is the
    /// orbit representative.
    pub members: Vec<usize>,
    /// Number of distinct `{m, c·m}` pairs among the members.
    pub size_mod_c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionOrbits {
    pub sections: Vec<GroupRingElt>,
    pub orbits: Vec<Orbit>,
}

/// Partitions the sections of `ctx` under translation by `c` (if `mod_c`) and
/// by all of `G` (if `mod_galois`). Orbits are listed by representative.
pub fn orbits(ctx: &FieldContext, mod_c: bool, mod_galois: bool) -> Result<SectionOrbits> {
    let sections = enumerate_sections(ctx)?;
    let index: HashMap<&GroupRingElt, usize> =
        sections.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut moves: Vec<GroupElement> = Vec::new();
    if mod_c {
        moves.push(ctx.conjugation());
    }
    if mod_galois {
        moves.extend((0..ctx.rank()).map(GroupElement::generator));
    }

    let mut parent: Vec<usize> = (0..sections.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, m) in sections.iter().enumerate() {
        for &g in &moves {
            let j = index[&m.translate(g)?];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of: HashMap<usize, usize> = HashMap::new();
    for i in 0..sections.len() {
        let root = find(&mut parent, i);
        let b = *block_of.entry(root).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(i);
    }

    let orbits = blocks
        .into_iter()
        .map(|members| {
            let pairs = members
                .iter()
                .filter(|&&i| {
                    let conj = index[&sections[i].translate(ctx.conjugation()).expect("same rank")];
                    i <= conj || !members.contains(&conj)
                })
                .count();
            Orbit {
                members,
                size_mod_c: pairs,
            }
        })
        .collect();
    Ok(SectionOrbits { sections, orbits })
}

fn require_standard(ctx: &FieldContext) -> Result<()> {
    if *ctx != FieldContext::standard() {
        return Err(Error::invalid(format!(
            "this construction needs the standard context k=3, c=σ1σ2σ3, got {ctx}"
        )));
    }
    Ok(())
}

/// `2·(1+a)(1+b)` for two elements `a`, `b`.
fn doubled_quadratic(rank: u32, a: GroupElement, b: GroupElement) -> Result<GroupRingElt> {
    let one = GroupElement::IDENTITY;
    let x = GroupRingElt::from_terms(rank, &[(1, one), (1, a)])?;
    let y = GroupRingElt::from_terms(rank, &[(1, one), (1, b)])?;
    x.mul(&y)?.scale(2)
}

/// The three ordinary elliptic classes `alpha1, alpha2, alpha3` whose fields are
/// dual to the generators: `alpha_i` is fixed by the two other generators.
pub fn standard_triple(ctx: &FieldContext) -> Result<[WeilClass; 3]> {
    require_standard(ctx)?;
    let s = GroupElement::generator;
    let divisors = [
        doubled_quadratic(3, s(1), s(2))?,
        doubled_quadratic(3, s(0), s(2))?,
        doubled_quadratic(3, s(0), s(1))?,
    ];
    let [a, b, c] = divisors;
    Ok([
        WeilClass::ordinary("alpha1", ctx, a)?,
        WeilClass::ordinary("alpha2", ctx, b)?,
        WeilClass::ordinary("alpha3", ctx, c)?,
    ])
}

/// The standard triple plus `alpha4`, the elliptic class living in the fourth
/// imaginary quadratic subfield (the kernel of `χ1χ2χ3`).
pub fn standard_quadruple(ctx: &FieldContext) -> Result<[WeilClass; 4]> {
    let [a1, a2, a3] = standard_triple(ctx)?;
    let s = GroupElement::product_of;
    let a4 = WeilClass::ordinary("alpha4", ctx, doubled_quadratic(3, s(&[0, 1]), s(&[0, 2]))?)?;
    Ok([a1, a2, a3, a4])
}

/// The ordinary class `beta` with divisor `1 + σ1 + σ2 + σ3`: it has trivial
/// isotropy, so it generates all of `K` and belongs to a simple abelian fourfold.
pub fn construct_beta(ctx: &FieldContext) -> Result<WeilClass> {
    require_standard(ctx)?;
    let support = [0u32, 1, 2, 4].map(GroupElement::from_index);
    WeilClass::ordinary("beta", ctx, GroupRingElt::from_support(3, support, 2)?)
}

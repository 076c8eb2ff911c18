//! Scenario files: parsing, strict validation, and resolution into library
//! objects.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use tate_coniveau::coniveau::{Factor, ProductSpec};
use tate_coniveau::group_ring::GroupRingElt;
use tate_coniveau::weil::{
    construct_beta, enumerate_sections_with, standard_quadruple, standard_triple, FieldContext,
    WeilClass,
};
use tate_coniveau::Limits;

use crate::ConfigError;

/// The only accepted value of the `schema` field.
pub const SCHEMA_VERSION: &str = "coniveau-scenario/v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema: String,
    pub context: FieldContext,
    #[serde(default)]
    pub classes: Vec<ClassSpec>,
    #[serde(default)]
    pub product: Vec<ProductEntry>,
    pub tasks: Vec<TaskSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Option<Limits>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "from", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClassSpec {
    /// Ordinary class given by its doubled-unit divisor.
    Divisor { label: String, divisor: Vec<i64> },
    /// Index into the lexicographically sorted section list.
    Section { label: String, index: usize },
    Supersingular { label: String },
    Preset { preset: ClassPreset },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassPreset {
    /// `alpha1`, `alpha2`, `alpha3`.
    StandardTriple,
    /// `alpha1` .. `alpha4`.
    StandardQuadruple,
    Beta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub label: String,
    #[serde(default = "one")]
    pub multiplicity: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum TaskSpec {
    /// Sections of the context with classification and orbit structure.
    Enumerate {},
    /// Coniveau of every eigenvalue monomial of the product in one degree.
    Analyze {
        degree: u32,
        /// Gaps are reported but do not fail the run.
        #[serde(default)]
        expect_gaps: bool,
    },
    VerifyLemma1 { kmax: u32 },
    VerifyThm2 { bound: u32 },
    /// Exotic-relation search over the named classes (all classes if absent).
    Relations {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<u32>,
    },
}

impl TaskSpec {
    pub fn name(&self) -> &'static str {
        match self {
            TaskSpec::Enumerate {} => "enumerate",
            TaskSpec::Analyze { .. } => "analyze",
            TaskSpec::VerifyLemma1 { .. } => "verify_lemma1",
            TaskSpec::VerifyThm2 { .. } => "verify_thm2",
            TaskSpec::Relations { .. } => "relations",
        }
    }
}

/// A validated scenario: every class built, the product assembled, every
/// task checked against the ceilings.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub limits: Limits,
    pub classes: Vec<WeilClass>,
    pub product: Option<ProductSpec>,
}

impl Scenario {
    pub fn class(&self, label: &str) -> Option<&WeilClass> {
        self.classes.iter().find(|c| c.label == label)
    }

    /// Generator classes of a relations task, in config order.
    pub fn generators(&self, names: Option<&[String]>) -> Vec<WeilClass> {
        match names {
            None => self.classes.clone(),
            Some(names) => names.iter().filter_map(|n| self.class(n).cloned()).collect(),
        }
    }
}

/// Parses a scenario from JSON text. Errors carry the path of the offending
/// field, e.g. `tasks[1].degree`.
pub fn parse(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ConfigError::new(if path == "." { String::new() } else { path }, inner.to_string())
    })
}

fn err(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::new(path, message)
}

pub fn resolve(config: ScenarioConfig) -> Result<Scenario, ConfigError> {
    if config.schema != SCHEMA_VERSION {
        return Err(err("schema", format!("expected \"{SCHEMA_VERSION}\", found \"{}\"", config.schema)));
    }
    let limits = config.limits.unwrap_or_default();
    let ctx = config.context;
    if ctx.rank() > limits.max_rank {
        return Err(err(
            "context.k",
            format!("k = {} exceeds the configured ceiling {}", ctx.rank(), limits.max_rank),
        ));
    }

    let mut classes: Vec<WeilClass> = Vec::new();
    for (i, spec) in config.classes.iter().enumerate() {
        let at = |field: &str| format!("classes[{i}]{field}");
        let built = match spec {
            ClassSpec::Divisor { label, divisor } => {
                let d = GroupRingElt::from_coeffs(divisor.clone()).map_err(|e| err(at(".divisor"), e.to_string()))?;
                if d == ctx.supersingular_divisor() {
                    vec![WeilClass::supersingular(label.clone(), &ctx)]
                } else {
                    vec![WeilClass::ordinary(label.clone(), &ctx, d).map_err(|e| err(at(".divisor"), e.to_string()))?]
                }
            }
            ClassSpec::Section { label, index } => {
                let sections = enumerate_sections_with(&ctx, &limits).map_err(|e| err(at(""), e.to_string()))?;
                let m = sections.get(*index).ok_or_else(|| {
                    err(at(".index"), format!("index {index} out of range: the context has {} sections", sections.len()))
                })?;
                vec![WeilClass::ordinary(label.clone(), &ctx, m.clone()).map_err(|e| err(at(""), e.to_string()))?]
            }
            ClassSpec::Supersingular { label } => vec![WeilClass::supersingular(label.clone(), &ctx)],
            ClassSpec::Preset { preset } => {
                let built = match preset {
                    ClassPreset::StandardTriple => standard_triple(&ctx).map(|c| c.to_vec()),
                    ClassPreset::StandardQuadruple => standard_quadruple(&ctx).map(|c| c.to_vec()),
                    ClassPreset::Beta => construct_beta(&ctx).map(|c| vec![c]),
                };
                built.map_err(|e| err(at(".preset"), e.to_string()))?
            }
        };
        for class in built {
            if class.label.is_empty() {
                return Err(err(at(".label"), "empty label"));
            }
            if classes.iter().any(|c| c.label == class.label) {
                return Err(err(at(""), format!("duplicate label {:?}", class.label)));
            }
            classes.push(class);
        }
    }

    let mut factors = Vec::new();
    let mut seen = BTreeMap::new();
    for (i, entry) in config.product.iter().enumerate() {
        let class = classes
            .iter()
            .find(|c| c.label == entry.label)
            .ok_or_else(|| err(format!("product[{i}].label"), format!("unknown class {:?}", entry.label)))?;
        if seen.insert(entry.label.clone(), i).is_some() {
            return Err(err(format!("product[{i}].label"), format!("{:?} listed twice", entry.label)));
        }
        if entry.multiplicity == 0 {
            return Err(err(format!("product[{i}].multiplicity"), "must be at least 1"));
        }
        factors.push(Factor::new(class.clone(), entry.multiplicity));
    }
    let product = if factors.is_empty() {
        None
    } else {
        let spec = ProductSpec::new(ctx, factors).map_err(|e| err("product", e.to_string()))?;
        spec.check_limits(&limits).map_err(|e| err("product", e.to_string()))?;
        Some(spec)
    };

    let scenario = Scenario { config, limits, classes, product };
    for (i, task) in scenario.config.tasks.iter().enumerate() {
        check_task(&scenario, task).map_err(|(field, msg)| {
            err(if field.is_empty() { format!("tasks[{i}]") } else { format!("tasks[{i}].{field}") }, msg)
        })?;
    }
    Ok(scenario)
}

fn ceiling(value: u32, ceiling: u32, field: &'static str) -> Result<(), (&'static str, String)> {
    if value > ceiling {
        Err((field, format!("{field} = {value} exceeds the configured ceiling {ceiling}")))
    } else {
        Ok(())
    }
}

fn check_task(s: &Scenario, task: &TaskSpec) -> Result<(), (&'static str, String)> {
    let limits = &s.limits;
    let ctx = &s.config.context;
    match task {
        TaskSpec::Enumerate {} => ceiling(ctx.rank(), limits.max_section_rank, "k")
            .map_err(|(_, msg)| ("", format!("context {msg}"))),
        TaskSpec::Analyze { degree, .. } => {
            let spec = s.product.as_ref().ok_or(("", "analyze needs a non-empty product".to_string()))?;
            ceiling(*degree, 2 * spec.dimension(), "degree")
        }
        TaskSpec::VerifyLemma1 { kmax } => ceiling(*kmax, limits.max_rank, "kmax"),
        TaskSpec::VerifyThm2 { bound } => {
            if *ctx != FieldContext::standard() {
                return Err(("", format!("verify_thm2 runs over the standard context k=3, c=7, not {ctx}")));
            }
            ceiling(*bound, limits.max_exponent_bound, "bound")
        }
        TaskSpec::Relations { generators, max_degree } => {
            if let Some(names) = generators {
                for name in names {
                    if s.class(name).is_none() {
                        return Err(("generators", format!("unknown class {name:?}")));
                    }
                }
            }
            if s.generators(generators.as_deref()).is_empty() {
                return Err(("generators", "no generator classes".into()));
            }
            if let Some(d) = max_degree {
                if *d < 2 {
                    return Err(("max_degree", "must be at least 2".into()));
                }
                ceiling(*d, limits.max_relation_degree, "max_degree")?;
            }
            Ok(())
        }
    }
}

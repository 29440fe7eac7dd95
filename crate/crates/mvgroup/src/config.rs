//! Instance files: a group backend, automorphisms, the n-valued
//! construction and its generating set, as versioned JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use mvgroup_core::mvalued::{CosetGroup, DoubleCosetGroup, MultiValuedGroup, MvGroup, NatGroup};
use mvgroup_core::word::{is_generator_name, parse_word};
use mvgroup_core::{Automorphism, AutomorphismGroup, Backend, Budget, Element, Error as CoreError, Word};
use serde::Deserialize;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_RADIUS: usize = 8;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("syntax error at {path}, offset {offset}: {message}")]
    Syntax { path: String, offset: usize, message: String },
    #[error("invalid config at {path}: {message}")]
    Validation { path: String, message: String },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl ConfigError {
    fn schema(path: impl fmt::Display, message: impl Into<String>) -> Self {
        ConfigError::Schema { path: path.to_string(), message: message.into() }
    }

    fn validation(path: impl fmt::Display, message: impl Into<String>) -> Self {
        ConfigError::Validation { path: path.to_string(), message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Free {
        gens: Vec<String>,
    },
    FreeAbelian {
        gens: Vec<String>,
    },
    Heisenberg {
        gens: Vec<String>,
    },
    Cyclic {
        order: u64,
        gens: Vec<String>,
    },
    FiniteTable {
        table: Vec<Vec<u32>>,
        /// Table indices of the generators.
        generators: Vec<u32>,
        gens: Vec<String>,
    },
    Permutation {
        degree: usize,
        generators: Vec<Vec<u32>>,
        gens: Vec<String>,
    },
    DirectProduct {
        factors: Vec<GroupSpec>,
    },
    Semidirect {
        base: Box<GroupSpec>,
        automorphisms: Vec<AutomorphismSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismSpec {
    pub name: String,
    pub images: BTreeMap<String, String>,
    #[serde(default)]
    pub inverse_images: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MvSpec {
    Coset,
    DoubleCoset { subgroup: Vec<String> },
    BuiltinNat,
    /// `x * y = [x + y, x + y + 1]`, a negative control for the axiom checker.
    BuiltinNatMutated,
}

impl MvSpec {
    fn is_nat(&self) -> bool {
        matches!(self, MvSpec::BuiltinNat | MvSpec::BuiltinNatMutated)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Defaults {
    #[serde(default = "default_radius")]
    pub radius: usize,
    #[serde(default = "default_budget")]
    pub budget: usize,
}

fn default_radius() -> usize {
    DEFAULT_RADIUS
}

fn default_budget() -> usize {
    Budget::DEFAULT.0
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults { radius: DEFAULT_RADIUS, budget: Budget::DEFAULT.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    schema: u32,
    #[serde(default)]
    group: Option<GroupSpec>,
    #[serde(default)]
    automorphisms: Vec<AutomorphismSpec>,
    mv: MvSpec,
    #[serde(rename = "X_generators")]
    x_generators: Vec<String>,
    #[serde(default)]
    defaults: Defaults,
}

/// An element of the carrier as written in a config or on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementSpec {
    Nat(u64),
    Word(Word),
}

/// A validated instance file. Every embedded word has been parsed and its
/// generator names checked; the backend is only constructed by
/// [`InstanceConfig::build`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceConfig {
    pub group: Option<GroupSpec>,
    pub automorphisms: Vec<AutomorphismSpec>,
    pub mv: MvSpec,
    pub x_generators: Vec<ElementSpec>,
    pub defaults: Defaults,
}

pub fn parse_config(text: &str) -> Result<InstanceConfig, ConfigError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        ConfigError::schema(if path == "." { "$".into() } else { path }, e.into_inner().to_string())
    })?;
    de.end().map_err(|e| ConfigError::schema("$", e.to_string()))?;
    validate(doc)
}

fn validate(doc: Document) -> Result<InstanceConfig, ConfigError> {
    if doc.schema != SCHEMA_VERSION {
        return Err(ConfigError::schema("schema", format!("unsupported version {}, expected 1", doc.schema)));
    }
    if doc.x_generators.is_empty() {
        return Err(ConfigError::validation("X_generators", "generating set must be nonempty"));
    }
    let nat = doc.mv.is_nat();
    let names = match (&doc.group, nat) {
        (Some(_), true) => return Err(ConfigError::validation("group", "builtin_nat takes no group")),
        (None, false) => return Err(ConfigError::schema("group", "missing field `group`")),
        (None, true) => None,
        (Some(g), false) => Some(validate_group(g, "group")?.unwrap_or_default()),
    };
    if nat && !doc.automorphisms.is_empty() {
        return Err(ConfigError::validation("automorphisms", "builtin_nat takes no automorphisms"));
    }

    let x_generators = doc
        .x_generators
        .iter()
        .enumerate()
        .map(|(i, text)| {
            let path = format!("X_generators[{i}]");
            match &names {
                None => parse_nat(text, &path).map(ElementSpec::Nat),
                Some(names) => parse_checked(text, &path, names).map(ElementSpec::Word),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;

    if let Some(names) = &names {
        let known = (!names.is_empty()).then(|| names.clone());
        for (i, aut) in doc.automorphisms.iter().enumerate() {
            validate_automorphism(aut, &format!("automorphisms[{i}]"), &known)?;
        }
    }
    if let (MvSpec::DoubleCoset { subgroup }, Some(group), Some(names)) = (&doc.mv, &doc.group, &names) {
        if !is_finite(group) {
            return Err(ConfigError::validation("mv", "double_coset needs a finite group"));
        }
        if !doc.automorphisms.is_empty() {
            return Err(ConfigError::validation("automorphisms", "double_coset takes no automorphisms"));
        }
        for (i, w) in subgroup.iter().enumerate() {
            parse_checked(w, &format!("mv.subgroup[{i}]"), names)?;
        }
    }
    if doc.defaults.budget == 0 {
        return Err(ConfigError::validation("defaults.budget", "budget must be positive"));
    }
    Ok(InstanceConfig {
        group: doc.group,
        automorphisms: doc.automorphisms,
        mv: doc.mv,
        x_generators,
        defaults: doc.defaults,
    })
}

/// Generator names of the group, or `None` when they are only known after
/// construction (semidirect products).
fn validate_group(spec: &GroupSpec, path: &str) -> Result<Option<Vec<String>>, ConfigError> {
    let check_names = |gens: &[String], expected: Option<usize>| -> Result<Option<Vec<String>>, ConfigError> {
        let mut seen = BTreeSet::new();
        for (i, g) in gens.iter().enumerate() {
            if !is_generator_name(g) {
                return Err(ConfigError::validation(format!("{path}.gens[{i}]"), format!("`{g}` is not a generator name")));
            }
            if !seen.insert(g) {
                return Err(ConfigError::validation(format!("{path}.gens[{i}]"), format!("duplicate generator `{g}`")));
            }
        }
        if let Some(n) = expected {
            if gens.len() != n {
                return Err(ConfigError::validation(
                    format!("{path}.gens"),
                    format!("expected {n} generator names, got {}", gens.len()),
                ));
            }
        }
        Ok(Some(gens.to_vec()))
    };
    match spec {
        GroupSpec::Free { gens } | GroupSpec::FreeAbelian { gens } => check_names(gens, None),
        GroupSpec::Heisenberg { gens } => check_names(gens, Some(2)),
        GroupSpec::Cyclic { order, gens } => {
            if *order == 0 {
                return Err(ConfigError::validation(format!("{path}.order"), "order must be positive"));
            }
            check_names(gens, Some(1))
        }
        GroupSpec::FiniteTable { generators, gens, .. } => check_names(gens, Some(generators.len())),
        GroupSpec::Permutation { generators, gens, .. } => check_names(gens, Some(generators.len())),
        GroupSpec::DirectProduct { factors } => {
            if factors.is_empty() {
                return Err(ConfigError::validation(format!("{path}.factors"), "need at least one factor"));
            }
            let mut all = Vec::new();
            for (i, f) in factors.iter().enumerate() {
                match validate_group(f, &format!("{path}.factors[{i}]"))? {
                    Some(names) => all.extend(names),
                    None => return Ok(None),
                }
            }
            let distinct: BTreeSet<_> = all.iter().collect();
            if distinct.len() != all.len() {
                return Err(ConfigError::validation(format!("{path}.factors"), "generator names must be distinct"));
            }
            Ok(Some(all))
        }
        GroupSpec::Semidirect { base, automorphisms } => {
            if let Some(names) = validate_group(base, &format!("{path}.base"))? {
                for (i, aut) in automorphisms.iter().enumerate() {
                    validate_automorphism(aut, &format!("{path}.automorphisms[{i}]"), &Some(names.clone()))?;
                }
            }
            Ok(None)
        }
    }
}

fn validate_automorphism(aut: &AutomorphismSpec, path: &str, names: &Option<Vec<String>>) -> Result<(), ConfigError> {
    if aut.name.is_empty() {
        return Err(ConfigError::validation(format!("{path}.name"), "name must be nonempty"));
    }
    let maps = [("images", Some(&aut.images)), ("inverse_images", aut.inverse_images.as_ref())];
    for (field, map) in maps {
        let Some(map) = map else { continue };
        if let Some(names) = names {
            for g in names {
                if !map.contains_key(g) {
                    return Err(ConfigError::schema(format!("{path}.{field}"), format!("missing image for generator `{g}`")));
                }
            }
            for key in map.keys() {
                if !names.contains(key) {
                    return Err(ConfigError::validation(format!("{path}.{field}.{key}"), format!("unknown generator `{key}`")));
                }
            }
        }
        for (key, text) in map {
            parse_checked(text, &format!("{path}.{field}.{key}"), &names.clone().unwrap_or_default())?;
        }
    }
    Ok(())
}

fn is_finite(spec: &GroupSpec) -> bool {
    match spec {
        GroupSpec::Free { gens } | GroupSpec::FreeAbelian { gens } => gens.is_empty(),
        GroupSpec::Heisenberg { .. } => false,
        GroupSpec::Cyclic { .. } | GroupSpec::FiniteTable { .. } | GroupSpec::Permutation { .. } => true,
        GroupSpec::DirectProduct { factors } => factors.iter().all(is_finite),
        GroupSpec::Semidirect { base, .. } => is_finite(base),
    }
}

fn parse_nat(text: &str, path: &str) -> Result<u64, ConfigError> {
    text.trim().parse().map_err(|_| ConfigError::validation(path, format!("`{text}` is not a nonnegative integer")))
}

/// Parses a word and checks its names against `names` (skipped when empty).
fn parse_checked(text: &str, path: &str, names: &[String]) -> Result<Word, ConfigError> {
    let word = parse_word(text).map_err(|e| match e {
        CoreError::Syntax { offset, message } => ConfigError::Syntax { path: path.into(), offset, message },
        other => ConfigError::Core(other),
    })?;
    if !names.is_empty() {
        if let Some((g, _)) = word.letters().iter().find(|(g, _)| !names.contains(g)) {
            return Err(ConfigError::validation(path, format!("unknown generator `{g}`")));
        }
    }
    Ok(word)
}

/// A constructed instance: backend, automorphism group and carrier.
#[derive(Debug, Clone)]
pub struct Instance {
    pub config: InstanceConfig,
    pub backend: Option<Backend>,
    pub group: MvGroup,
    pub x_generators: Vec<Element>,
}

impl InstanceConfig {
    pub fn budget(&self) -> Budget {
        Budget(self.defaults.budget)
    }

    pub fn build(&self, budget: Budget) -> Result<Instance, ConfigError> {
        let (backend, group) = match &self.mv {
            MvSpec::BuiltinNat => (None, MvGroup::Nat(NatGroup::new())),
            MvSpec::BuiltinNatMutated => (None, MvGroup::Nat(NatGroup::mutated())),
            MvSpec::Coset => {
                let backend = build_group(self.group.as_ref().expect("validated"), "group", budget)?;
                let automorphisms = close_automorphisms(&backend, &self.automorphisms, "automorphisms")?;
                let group = CosetGroup::new(backend.clone(), automorphisms)?;
                (Some(backend), MvGroup::Coset(group))
            }
            MvSpec::DoubleCoset { subgroup } => {
                let backend = build_group(self.group.as_ref().expect("validated"), "group", budget)?;
                let gens = subgroup
                    .iter()
                    .enumerate()
                    .map(|(i, w)| eval_text(&backend, w, &format!("mv.subgroup[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let group = DoubleCosetGroup::new(backend.clone(), &gens, budget)?;
                (Some(backend), MvGroup::DoubleCoset(group))
            }
        };
        let mut instance = Instance { config: self.clone(), backend, group, x_generators: Vec::new() };
        instance.x_generators = self
            .x_generators
            .iter()
            .enumerate()
            .map(|(i, spec)| instance.element_from_spec(spec, &format!("X_generators[{i}]")))
            .collect::<Result<_, _>>()?;
        Ok(instance)
    }
}

fn build_group(spec: &GroupSpec, path: &str, budget: Budget) -> Result<Backend, ConfigError> {
    let invalid = |e: CoreError| match e {
        CoreError::InvalidBackend(m) => ConfigError::validation(path, m),
        other => ConfigError::Core(other),
    };
    match spec {
        GroupSpec::Free { gens } => Backend::free(gens.clone()).map_err(invalid),
        GroupSpec::FreeAbelian { gens } => Backend::free_abelian(gens.clone()).map_err(invalid),
        GroupSpec::Heisenberg { gens } => Backend::heisenberg(&gens[0], &gens[1]).map_err(invalid),
        GroupSpec::Cyclic { order, gens } => Backend::cyclic(*order, &gens[0]).map_err(invalid),
        GroupSpec::FiniteTable { table, generators, gens } => {
            Backend::finite_table(table, gens.clone(), generators).map_err(invalid)
        }
        GroupSpec::Permutation { degree, generators, gens } => {
            Backend::permutation(*degree, gens.clone(), generators.clone(), budget).map_err(invalid)
        }
        GroupSpec::DirectProduct { factors } => {
            let factors = factors
                .iter()
                .enumerate()
                .map(|(i, f)| build_group(f, &format!("{path}.factors[{i}]"), budget))
                .collect::<Result<Vec<_>, _>>()?;
            Backend::direct_product(factors).map_err(invalid)
        }
        GroupSpec::Semidirect { base, automorphisms } => {
            let base = build_group(base, &format!("{path}.base"), budget)?;
            let group = close_automorphisms(&base, automorphisms, &format!("{path}.automorphisms"))?;
            Backend::semidirect(base, group).map_err(invalid)
        }
    }
}

fn close_automorphisms(
    backend: &Backend,
    specs: &[AutomorphismSpec],
    path: &str,
) -> Result<AutomorphismGroup, ConfigError> {
    let seeds = specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let path = format!("{path}[{i}]");
            let words = |map: &BTreeMap<String, String>, field: &str| -> Result<BTreeMap<String, Word>, ConfigError> {
                map.iter()
                    .map(|(g, w)| Ok((g.clone(), parse_checked(w, &format!("{path}.{field}.{g}"), &[])?)))
                    .collect()
            };
            let images = words(&spec.images, "images")?;
            let inverse = spec.inverse_images.as_ref().map(|m| words(m, "inverse_images")).transpose()?;
            Automorphism::from_words(backend, &spec.name, &images, inverse.as_ref()).map_err(|e| match e {
                CoreError::NotAnAutomorphism { .. }
                | CoreError::InverseMissing { .. }
                | CoreError::UnknownGenerator(_)
                | CoreError::PreconditionViolated(_) => ConfigError::validation(&path, e.to_string()),
                other => ConfigError::Core(other),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AutomorphismGroup::close(backend, &seeds, AutomorphismGroup::DEFAULT_BOUND)?)
}

fn eval_text(backend: &Backend, text: &str, path: &str) -> Result<Element, ConfigError> {
    let word = parse_checked(text, path, &[])?;
    backend.eval_word(&word).map_err(|e| match e {
        CoreError::UnknownGenerator(g) => ConfigError::validation(path, format!("unknown generator `{g}`")),
        other => ConfigError::Core(other),
    })
}

impl Instance {
    /// Parses a carrier element given on the command line: an integer for
    /// builtin-nat, otherwise a word projected to its class.
    pub fn element(&self, text: &str, path: &str) -> Result<Element, ConfigError> {
        let spec = match &self.backend {
            None => ElementSpec::Nat(parse_nat(text, path)?),
            Some(_) => ElementSpec::Word(parse_checked(text, path, &[])?),
        };
        self.element_from_spec(&spec, path)
    }

    /// Lifts a word to the underlying group without projecting.
    pub fn lift(&self, text: &str, path: &str) -> Result<Element, ConfigError> {
        match &self.backend {
            Some(backend) => eval_text(backend, text, path),
            None => Err(ConfigError::validation(path, "builtin_nat has no underlying group")),
        }
    }

    fn element_from_spec(&self, spec: &ElementSpec, path: &str) -> Result<Element, ConfigError> {
        match (spec, &self.backend, &self.group) {
            (ElementSpec::Nat(v), None, _) => Ok(Element::Nat(*v)),
            (ElementSpec::Word(w), Some(backend), group) => {
                let g = backend.eval_word(w).map_err(|e| match e {
                    CoreError::UnknownGenerator(g) => ConfigError::validation(path, format!("unknown generator `{g}`")),
                    other => ConfigError::Core(other),
                })?;
                Ok(match group {
                    MvGroup::Coset(c) => c.project(&g)?,
                    MvGroup::DoubleCoset(d) => d.project(&g)?,
                    MvGroup::Nat(_) => g,
                })
            }
            _ => Err(ConfigError::validation(path, "element does not match the carrier")),
        }
    }

    pub fn render(&self, x: &Element) -> String {
        self.group.render(x)
    }

    pub fn coset(&self) -> Option<&CosetGroup> {
        match &self.group {
            MvGroup::Coset(c) => Some(c),
            _ => None,
        }
    }
}

//! The JSON inducing-datum document, its validation, and the two twist
//! queries that only depend on the datum: realizable twists and the inferred
//! `Ŵ(σ)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rgroup;
use crate::signed_weyl::{Root, RootKind, SignedPermutation};
use crate::twist_labels::{LabelAlgebra, PiTuple, RepLabel, TauData, Twist, TwistGroup};

/// Ranks beyond this make the brute-force enumeration of `W` impractical.
pub const MAX_DATUM_RANK: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub r: usize,
    pub blocks: Vec<u32>,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSpec {
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub eps: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelSpec {
    pub id: String,
    pub size: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub chi: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub eps: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauSpec {
    #[serde(default)]
    pub x_tau: Vec<String>,
    pub generic: bool,
    pub mult_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiSpec {
    pub components: Vec<String>,
    pub tau: TauSpec,
}

/// `"infer"` or an explicit list of twist words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WSigmaHatSpec {
    Infer,
    Explicit(Vec<String>),
}

impl Serialize for WSigmaHatSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            WSigmaHatSpec::Infer => serializer.serialize_str("infer"),
            WSigmaHatSpec::Explicit(words) => words.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for WSigmaHatSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Mode(String),
            List(Vec<String>),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Mode(s) if s == "infer" => Ok(WSigmaHatSpec::Infer),
            Raw::Mode(s) => Err(serde::de::Error::custom(format!(
                "w_sigma_hat must be \"infer\" or a list of twist words, got {s:?}"
            ))),
            Raw::List(words) => Ok(WSigmaHatSpec::Explicit(words)),
        }
    }
}

/// The document as written on disk. Field names are the CLI's contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumDocument {
    pub group: GroupSpec,
    pub twists: TwistSpec,
    pub labels: Vec<LabelSpec>,
    #[serde(default)]
    pub actions: ActionSpec,
    pub pi: PiSpec,
    #[serde(default)]
    pub delta_prime: Vec<String>,
    pub w_sigma_hat: WSigmaHatSpec,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl DatumDocument {
    /// Pretty JSON with a trailing newline; maps are key-sorted so the bytes
    /// are canonical.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("datum documents serialize");
        s.push('\n');
        s
    }
}

/// One broken rule, located by a JSON path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub location: String,
    pub message: String,
}

impl Violation {
    fn new(rule: &str, location: impl Into<String>, message: impl Into<String>) -> Violation {
        Violation { rule: rule.to_string(), location: location.into(), message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] at {}: {}", self.rule, self.location, self.message)
    }
}

/// The document echoed back with the violations found in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationOutput {
    #[serde(flatten)]
    pub document: DatumDocument,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Error)]
pub enum DatumError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{} validation violation(s)", .0.len())]
    Invalid(Vec<Violation>),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Also require `π_i ≃ π_j ⇒ e_i − e_j ∈ Δ′`.
    pub strict_diff_rule: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WSigmaHatMode {
    Explicit(Vec<Twist>),
    Infer,
}

/// A fully validated datum.
#[derive(Debug, Clone)]
pub struct InducingDatum {
    pub blocks: Vec<u32>,
    pub m: u32,
    pub parity: Parity,
    pub algebra: LabelAlgebra,
    pub pi: PiTuple,
    pub delta_prime: Vec<Root>,
    pub mode: WSigmaHatMode,
    /// `Ŵ(σ)` after resolving the mode, sorted.
    pub w_sigma_hat: Vec<Twist>,
    pub warnings: Vec<String>,
    pub notes: String,
    pub options: ParseOptions,
    pub document: DatumDocument,
}

pub fn parse_datum(text: &str, options: ParseOptions) -> Result<InducingDatum, DatumError> {
    let doc: DatumDocument = serde_json::from_str(text).map_err(|e| DatumError::Schema(e.to_string()))?;
    InducingDatum::from_document(doc, options)
}

impl InducingDatum {
    pub fn rank(&self) -> usize {
        self.blocks.len()
    }

    /// `n = 2 Σ n_i + m`.
    pub fn n(&self) -> u32 {
        2 * self.blocks.iter().sum::<u32>() + self.m
    }

    pub fn group(&self) -> &TwistGroup {
        self.algebra.group()
    }

    pub fn x_pi(&self) -> Vec<Twist> {
        self.algebra.stabilizer_x(&self.pi)
    }

    pub fn format_twist(&self, t: Twist) -> String {
        self.group().format(t)
    }

    pub fn from_document(doc: DatumDocument, options: ParseOptions) -> Result<InducingDatum, DatumError> {
        let mut v = Vec::new();
        let Some(structure) = build_structure(&doc, &mut v) else {
            return Err(DatumError::Invalid(v));
        };
        let mut delta_prime = Vec::new();
        for (k, word) in doc.delta_prime.iter().enumerate() {
            match word.parse::<Root>() {
                Ok(root) => delta_prime.push(root),
                Err(e) => v.push(Violation::new("schema", format!("delta_prime[{k}]"), e.to_string())),
            }
        }
        let group = structure.algebra.group();
        let mode = match &doc.w_sigma_hat {
            WSigmaHatSpec::Infer => WSigmaHatMode::Infer,
            WSigmaHatSpec::Explicit(words) => {
                let mut set = Vec::new();
                for (k, w) in words.iter().enumerate() {
                    match group.parse(w) {
                        Ok(t) => set.push(t),
                        Err(e) => v.push(Violation::new("schema", format!("w_sigma_hat[{k}]"), e.to_string())),
                    }
                }
                WSigmaHatMode::Explicit(set)
            }
        };
        if !v.is_empty() {
            return Err(DatumError::Invalid(v));
        }
        let notes = doc.notes.clone();
        assemble(structure, delta_prime, mode, notes, options, doc)
    }

    /// Validates a datum built in code. The echoed document is synthesized.
    pub fn from_parts(
        blocks: Vec<u32>,
        m: u32,
        algebra: LabelAlgebra,
        pi: PiTuple,
        delta_prime: Vec<Root>,
        mode: WSigmaHatMode,
        options: ParseOptions,
    ) -> Result<InducingDatum, DatumError> {
        let n = 2 * blocks.iter().sum::<u32>() + m;
        let parity = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
        let doc = synthesize_document(&blocks, m, parity, &algebra, &pi, &delta_prime, &mode);
        let structure = Structure { blocks, m, parity, algebra, pi };
        assemble(structure, delta_prime, mode, String::new(), options, doc)
    }

    /// All `(χ, w)` with `π^w ≃ π·χ`, one witness per `χ` (the least `w`).
    pub fn realizable_twists(&self) -> Vec<(Twist, SignedPermutation)> {
        realizable_twists_raw(&self.algebra, &self.pi)
    }

    /// Every `w ∈ W` with `π^w ≃ π·χ`, sorted.
    pub fn realizing_elements(&self, chi: Twist) -> Vec<SignedPermutation> {
        rgroup::realizing_elements(&self.algebra, &self.pi, chi)
    }

    /// The largest subset of realizable twists that the restriction lemmas
    /// prove to lie in `Ŵ(σ)`, plus any warnings.
    pub fn infer_w_sigma_hat(&self) -> (Vec<Twist>, Vec<String>) {
        infer_raw(&self.algebra, &self.pi, self.m)
    }
}

struct Structure {
    blocks: Vec<u32>,
    m: u32,
    parity: Parity,
    algebra: LabelAlgebra,
    pi: PiTuple,
}

fn assemble(
    structure: Structure,
    delta_prime: Vec<Root>,
    mode: WSigmaHatMode,
    notes: String,
    options: ParseOptions,
    document: DatumDocument,
) -> Result<InducingDatum, DatumError> {
    let Structure { blocks, m, parity, algebra, pi } = structure;
    let rank = blocks.len();
    let mut v = Vec::new();
    if pi.rank() != rank {
        v.push(Violation::new("pi-rank", "pi.components", format!("{} components for r = {rank}", pi.rank())));
        return Err(DatumError::Invalid(v));
    }
    for (i, (&l, &b)) in pi.components.iter().zip(&blocks).enumerate() {
        if algebra.labels()[l].block_size != b {
            v.push(Violation::new(
                "pi-block-size",
                format!("pi.components[{i}]"),
                format!("label {} does not have size {b}", algebra.label_id(l)),
            ));
        }
    }
    let mut seen = BTreeSet::new();
    for (k, root) in delta_prime.iter().enumerate() {
        let loc = format!("delta_prime[{k}]");
        if root.max_index() >= rank {
            v.push(Violation::new("root-range", loc, format!("{root} mentions an index beyond r = {rank}")));
        } else if !seen.insert(*root) {
            v.push(Violation::new("root-duplicate", loc, format!("{root} listed twice")));
        }
    }
    if !v.is_empty() {
        return Err(DatumError::Invalid(v));
    }
    check_delta_necessary(&algebra, &pi, &delta_prime, &mut v);
    if options.strict_diff_rule {
        for i in 0..rank {
            for j in i + 1..rank {
                if pi.components[i] == pi.components[j] && !delta_prime.contains(&Root::diff(i, j)) {
                    v.push(Violation::new(
                        "delta-diff-strict",
                        "delta_prime",
                        format!("pi_{} ~ pi_{} but {} is not in delta_prime", i + 1, j + 1, Root::diff(i, j)),
                    ));
                }
            }
        }
    }

    let group = algebra.group().clone();
    let x_pi = algebra.stabilizer_x(&pi);
    let realizable: BTreeSet<Twist> = realizable_twists_raw(&algebra, &pi).into_iter().map(|(t, _)| t).collect();
    let mut warnings = Vec::new();
    let w_sigma_hat = match &mode {
        WSigmaHatMode::Infer => {
            let (set, warn) = infer_raw(&algebra, &pi, m);
            warnings.extend(warn);
            set
        }
        WSigmaHatMode::Explicit(words) => {
            let set: Vec<Twist> = words.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
            if !group.is_subgroup(&set) {
                v.push(Violation::new(
                    "w-sigma-hat-subgroup",
                    "w_sigma_hat",
                    format!("{} is not a subgroup of the twist group", format_set(&group, &set)),
                ));
            }
            set
        }
    };
    for &chi in &x_pi {
        if !w_sigma_hat.contains(&chi) {
            v.push(Violation::new(
                "w-sigma-hat-contains-x-pi",
                "w_sigma_hat",
                format!("X(pi) element {} is missing", group.format(chi)),
            ));
        }
    }
    for &chi in &w_sigma_hat {
        if !realizable.contains(&chi) {
            v.push(Violation::new(
                "w-sigma-hat-realizable",
                "w_sigma_hat",
                format!("no w in W has pi^w ~ pi*{}", group.format(chi)),
            ));
        }
    }
    if v.is_empty() {
        check_against_w_sigma(&algebra, &pi, &w_sigma_hat, &delta_prime, &mut v);
    }
    if !v.is_empty() {
        return Err(DatumError::Invalid(v));
    }
    Ok(InducingDatum {
        blocks,
        m,
        parity,
        algebra,
        pi,
        delta_prime,
        mode,
        w_sigma_hat,
        warnings,
        notes,
        options,
        document,
    })
}

fn synthesize_document(
    blocks: &[u32],
    m: u32,
    parity: Parity,
    algebra: &LabelAlgebra,
    pi: &PiTuple,
    delta_prime: &[Root],
    mode: &WSigmaHatMode,
) -> DatumDocument {
    let group = algebra.group();
    let names = group.generator_names();
    let generators =
        names.iter().zip(group.generator_orders()).map(|(n, &o)| GeneratorSpec { name: n.clone(), order: o }).collect();
    let mut eps = BTreeMap::new();
    for (k, name) in names.iter().enumerate() {
        let g = group.generator(k);
        if group.eps(g) != g {
            eps.insert(name.clone(), group.format(group.eps(g)));
        }
    }
    let labels = algebra.labels().iter().map(|l| LabelSpec { id: l.id.clone(), size: l.block_size }).collect();
    let moved = |f: &dyn Fn(usize) -> usize| -> BTreeMap<String, String> {
        (0..algebra.labels().len())
            .filter(|&l| f(l) != l)
            .map(|l| (algebra.label_id(l).to_string(), algebra.label_id(f(l)).to_string()))
            .collect()
    };
    let mut chi = BTreeMap::new();
    for (k, name) in names.iter().enumerate() {
        let g = group.generator(k);
        let map = moved(&|l| algebra.twist_label(l, g));
        if !map.is_empty() {
            chi.insert(name.clone(), map);
        }
    }
    let actions = ActionSpec { chi, eps: moved(&|l| algebra.eps_label(l)) };
    let x_tau = if m == 0 {
        Vec::new()
    } else {
        pi.tau.x_tau.iter().filter(|&&t| !group.is_identity(t)).map(|&t| group.format(t)).collect()
    };
    DatumDocument {
        group: GroupSpec { r: blocks.len(), blocks: blocks.to_vec(), m, parity: Some(parity) },
        twists: TwistSpec { generators, eps },
        labels,
        actions,
        pi: PiSpec {
            components: pi.components.iter().map(|&l| algebra.label_id(l).to_string()).collect(),
            tau: TauSpec { x_tau, generic: pi.tau.generic, mult_one: pi.tau.mult_one },
        },
        delta_prime: delta_prime.iter().map(|r| r.to_string()).collect(),
        w_sigma_hat: match mode {
            WSigmaHatMode::Infer => WSigmaHatSpec::Infer,
            WSigmaHatMode::Explicit(set) => WSigmaHatSpec::Explicit(set.iter().map(|&t| group.format(t)).collect()),
        },
        notes: String::new(),
    }
}

fn build_structure(doc: &DatumDocument, v: &mut Vec<Violation>) -> Option<Structure> {
    let g = &doc.group;
    let start = v.len();
    if g.r == 0 {
        v.push(Violation::new("group-rank", "group.r", "r must be at least 1"));
    }
    if g.r > MAX_DATUM_RANK {
        v.push(Violation::new("group-rank", "group.r", format!("r = {} exceeds the limit {MAX_DATUM_RANK}", g.r)));
    }
    if g.blocks.len() != g.r {
        v.push(Violation::new(
            "group-blocks",
            "group.blocks",
            format!("{} block sizes given for r = {}", g.blocks.len(), g.r),
        ));
    }
    for (i, &b) in g.blocks.iter().enumerate() {
        if b == 0 {
            v.push(Violation::new("group-blocks", format!("group.blocks[{i}]"), "block sizes must be positive"));
        }
    }
    let n = 2 * g.blocks.iter().sum::<u32>() + g.m;
    let parity = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    if let Some(p) = g.parity {
        if p != parity {
            v.push(Violation::new(
                "group-parity",
                "group.parity",
                format!("n = {n} but parity is declared {p:?}"),
            ));
        }
    }

    let generators: Vec<(String, u32)> = doc.twists.generators.iter().map(|s| (s.name.clone(), s.order)).collect();
    let group = match TwistGroup::new(generators.clone()) {
        Ok(plain) => {
            let mut eps_images = Vec::new();
            for (k, (name, _)) in generators.iter().enumerate() {
                let image = match doc.twists.eps.get(name) {
                    None => plain.generator(k),
                    Some(word) => match plain.parse(word) {
                        Ok(t) => t,
                        Err(e) => {
                            v.push(Violation::new("schema", format!("twists.eps.{name}"), e.to_string()));
                            plain.generator(k)
                        }
                    },
                };
                eps_images.push(plain.exponents(image));
            }
            for key in doc.twists.eps.keys() {
                if !generators.iter().any(|(n, _)| n == key) {
                    v.push(Violation::new("schema", format!("twists.eps.{key}"), "unknown generator"));
                }
            }
            match TwistGroup::with_eps(generators, eps_images) {
                Ok(group) => Some(group),
                Err(e) => {
                    v.push(Violation::new("twist-group", "twists", e.to_string()));
                    None
                }
            }
        }
        Err(e) => {
            v.push(Violation::new("twist-group", "twists.generators", e.to_string()));
            None
        }
    };

    let labels: Vec<RepLabel> = doc.labels.iter().map(|l| RepLabel { id: l.id.clone(), block_size: l.size }).collect();
    let ids: BTreeMap<&str, usize> = doc.labels.iter().enumerate().map(|(i, l)| (l.id.as_str(), i)).collect();
    let permutation = |loc: &str, map: &BTreeMap<String, String>, v: &mut Vec<Violation>| -> Vec<usize> {
        let mut out: Vec<usize> = (0..labels.len()).collect();
        for (from, to) in map {
            match (ids.get(from.as_str()), ids.get(to.as_str())) {
                (Some(&a), Some(&b)) => out[a] = b,
                _ => v.push(Violation::new(
                    "label-closure",
                    format!("{loc}.{from}"),
                    format!("{from} -> {to} leaves the label set"),
                )),
            }
        }
        out
    };
    let algebra = group.and_then(|group| {
        let mut gen_actions = Vec::new();
        for name in group.generator_names() {
            let map = doc.actions.chi.get(name).cloned().unwrap_or_default();
            gen_actions.push(permutation(&format!("actions.chi.{name}"), &map, v));
        }
        for key in doc.actions.chi.keys() {
            if !group.generator_names().contains(key) {
                v.push(Violation::new("schema", format!("actions.chi.{key}"), "unknown generator"));
            }
        }
        let eps = permutation("actions.eps", &doc.actions.eps, v);
        match LabelAlgebra::new(group, labels.clone(), gen_actions, eps) {
            Ok(a) => Some(a),
            Err(e) => {
                v.push(Violation::new("label-algebra", "actions", e.to_string()));
                None
            }
        }
    })?;

    let pi_spec = &doc.pi;
    if pi_spec.components.len() != g.r {
        v.push(Violation::new(
            "pi-rank",
            "pi.components",
            format!("{} components given for r = {}", pi_spec.components.len(), g.r),
        ));
    }
    let mut components = Vec::new();
    for (i, id) in pi_spec.components.iter().enumerate() {
        match algebra.label_index(id) {
            Ok(l) => {
                let size = algebra.labels()[l].block_size;
                if let Some(&b) = g.blocks.get(i) {
                    if b != size {
                        v.push(Violation::new(
                            "pi-block-size",
                            format!("pi.components[{i}]"),
                            format!("label {id} has size {size} but block {} has size {b}", i + 1),
                        ));
                    }
                }
                components.push(l);
            }
            Err(e) => v.push(Violation::new("pi-label", format!("pi.components[{i}]"), e.to_string())),
        }
    }
    let group = algebra.group();
    let mut gens = Vec::new();
    for (k, w) in pi_spec.tau.x_tau.iter().enumerate() {
        match group.parse(w) {
            Ok(t) => gens.push(t),
            Err(e) => v.push(Violation::new("schema", format!("pi.tau.x_tau[{k}]"), e.to_string())),
        }
    }
    let x_tau = if g.m == 0 {
        let full: Vec<Twist> = group.elements().collect();
        if !gens.is_empty() && group.generated_subgroup(&gens) != full {
            v.push(Violation::new(
                "tau-absent",
                "pi.tau.x_tau",
                "m = 0 carries no tau; x_tau must be omitted or generate the whole twist group",
            ));
        }
        full
    } else {
        group.generated_subgroup(&gens)
    };
    if v.len() > start {
        return None;
    }
    let tau = TauData { x_tau, generic: pi_spec.tau.generic, mult_one: pi_spec.tau.mult_one };
    Some(Structure { blocks: g.blocks.clone(), m: g.m, parity, pi: PiTuple::new(components, tau), algebra })
}

fn check_delta_necessary(algebra: &LabelAlgebra, pi: &PiTuple, delta: &[Root], v: &mut Vec<Violation>) {
    let c = &pi.components;
    let id = |l: usize| algebra.label_id(l).to_string();
    for (k, root) in delta.iter().enumerate() {
        let loc = format!("delta_prime[{k}]");
        match root.kind {
            RootKind::Diff(i, j) if c[i] != c[j] => v.push(Violation::new(
                "delta-diff",
                loc,
                format!("{root} in delta_prime requires pi_{} ~ pi_{}, but they are {} and {}", i + 1, j + 1, id(c[i]), id(c[j])),
            )),
            RootKind::Sum(i, j) if c[j] != algebra.eps_label(c[i]) => v.push(Violation::new(
                "delta-sum",
                loc,
                format!(
                    "{root} in delta_prime requires pi_{} ~ eps(pi_{}), but pi_{} = {} and eps(pi_{}) = {}",
                    j + 1,
                    i + 1,
                    j + 1,
                    id(c[j]),
                    i + 1,
                    id(algebra.eps_label(c[i]))
                ),
            )),
            RootKind::Short(i) if algebra.eps_label(c[i]) != c[i] => v.push(Violation::new(
                "delta-short",
                loc,
                format!("{root} in delta_prime requires eps(pi_{0}) ~ pi_{0}, but pi_{0} = {1}", i + 1, id(c[i])),
            )),
            _ => {}
        }
    }
}

fn check_against_w_sigma(
    algebra: &LabelAlgebra,
    pi: &PiTuple,
    w_sigma_hat: &[Twist],
    delta: &[Root],
    v: &mut Vec<Violation>,
) {
    let w_sigma = rgroup::w_sigma_from(algebra, pi, w_sigma_hat);
    if let Some((a, b)) = crate::signed_weyl::find_non_closed_pair(&w_sigma) {
        v.push(Violation::new(
            "w-sigma-group",
            "w_sigma_hat",
            format!("W(sigma) is not closed: {a} * {b} falls outside"),
        ));
        return;
    }
    let delta_set: BTreeSet<Root> = delta.iter().copied().collect();
    'outer: for w in &w_sigma {
        for root in delta {
            let image = w.act_on_root(root).abs();
            if !delta_set.contains(&image) {
                v.push(Violation::new(
                    "delta-w-sigma-stable",
                    "delta_prime",
                    format!("{w} in W(sigma) maps {root} to ±{image}, which is not in delta_prime"),
                ));
                break 'outer;
            }
        }
    }
    let w_pi = rgroup::realizing_elements(algebra, pi, algebra.group().identity());
    let r_pi = rgroup::positive_part(&w_pi, delta);
    if let Err(bad) = rgroup::sign_change_support(&r_pi) {
        v.push(Violation::new(
            "r-pi-sign-form",
            "delta_prime",
            format!("R(pi) contains {bad}, so it is not generated by sign changes C_i"),
        ));
    }
}

pub(crate) fn format_set(group: &TwistGroup, set: &[Twist]) -> String {
    let words: Vec<String> = set.iter().map(|&t| group.format(t)).collect();
    format!("{{{}}}", words.join(", "))
}

pub fn realizable_twists_raw(
    algebra: &LabelAlgebra,
    pi: &PiTuple,
) -> Vec<(Twist, SignedPermutation)> {
    algebra
        .group()
        .elements()
        .filter_map(|chi| rgroup::realizing_elements(algebra, pi, chi).into_iter().next().map(|w| (chi, w)))
        .collect()
}

fn even_signs_in_every_cycle(w: &SignedPermutation) -> bool {
    w.cycle_decomposition().iter().all(|c| c.sign_count % 2 == 0)
}

fn infer_raw(algebra: &LabelAlgebra, pi: &PiTuple, m: u32) -> (Vec<Twist>, Vec<String>) {
    let group = algebra.group();
    let x_pi = algebra.stabilizer_x(pi);
    let mut warnings = Vec::new();
    let mut proven: BTreeSet<Twist> = x_pi.iter().copied().collect();
    if m == 1 {
        // σ = π|_M is irreducible, so every realizable twist stabilizes it.
        proven.extend(realizable_twists_raw(algebra, pi).into_iter().map(|(t, _)| t));
    } else if m == 0 || pi.tau.generic || pi.tau.mult_one {
        // w = s·c with an even number of sign changes in each cycle of s
        // stabilizes σ whenever π^w ≃ πχ.
        for chi in group.elements() {
            if rgroup::realizing_elements(algebra, pi, chi).iter().any(even_signs_in_every_cycle) {
                proven.insert(chi);
            }
        }
    } else {
        warnings.push(
            "no restriction rule applies (m >= 2, tau neither generic nor multiplicity one); \
             w_sigma_hat inferred as X(pi) only"
                .to_string(),
        );
    }
    let proven: Vec<Twist> = proven.into_iter().collect();
    if group.eps_is_trivial() {
        (group.generated_subgroup(&proven), warnings)
    } else {
        (proven, warnings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn prime3() -> InducingDatum {
        parse_datum(&fixtures::fixture_json("prime3").unwrap(), ParseOptions::default()).unwrap()
    }

    fn invalid(doc: DatumDocument) -> Vec<Violation> {
        match InducingDatum::from_document(doc, ParseOptions::default()) {
            Err(DatumError::Invalid(v)) => v,
            other => panic!("expected violations, got {other:?}"),
        }
    }

    #[test]
    fn prime3_parses() {
        let d = prime3();
        assert_eq!(d.rank(), 3);
        assert_eq!(d.blocks, vec![1, 1, 1]);
        assert_eq!(d.m, 2);
        assert!(d.delta_prime.is_empty());
        assert_eq!(d.parity, Parity::Even);
    }

    #[test]
    fn document_round_trips() {
        for name in fixtures::FIXTURE_NAMES {
            let text = fixtures::fixture_json(name).unwrap();
            let d = parse_datum(&text, ParseOptions::default()).unwrap();
            let again = d.document.to_canonical_json();
            assert_eq!(again, text, "{name}");
            let reparsed = parse_datum(&again, ParseOptions::default()).unwrap();
            assert_eq!(reparsed.document, d.document);
        }
    }

    #[test]
    fn diff_rule_violation_is_named() {
        let mut doc = prime3().document;
        doc.delta_prime = vec!["e1-e2".into()];
        let v = invalid(doc);
        assert!(v.iter().any(|x| x.rule == "delta-diff" && x.location == "delta_prime[0]"), "{v:?}");
    }

    #[test]
    fn sum_and_short_rules() {
        let mut doc = prime3().document;
        doc.delta_prime = vec!["e1+e2".into()];
        assert!(invalid(doc).iter().any(|x| x.rule == "delta-sum"));

        // l0 is eps-fixed, so short:1 passes the necessary condition but breaks
        // W(sigma)-stability: (1 2 3) moves it to short:2.
        let mut doc = prime3().document;
        doc.delta_prime = vec!["short:1".into()];
        assert!(invalid(doc).iter().any(|x| x.rule == "delta-w-sigma-stable"));
    }

    #[test]
    fn non_subgroup_w_sigma_hat_is_rejected() {
        let mut doc = prime3().document;
        doc.w_sigma_hat = WSigmaHatSpec::Explicit(vec!["1".into(), "chi".into()]);
        assert!(invalid(doc).iter().any(|x| x.rule == "w-sigma-hat-subgroup"));
    }

    #[test]
    fn schema_errors_are_separate() {
        assert!(matches!(parse_datum("{", ParseOptions::default()), Err(DatumError::Schema(_))));
        assert!(matches!(parse_datum("{\"group\": 3}", ParseOptions::default()), Err(DatumError::Schema(_))));
        let mut doc = prime3().document;
        doc.pi.components[0] = "nope".into();
        assert!(invalid(doc).iter().any(|x| x.rule == "pi-label"));
    }

    #[test]
    fn label_tables_must_be_closed() {
        let mut doc = prime3().document;
        doc.actions.chi.get_mut("chi").unwrap().insert("l2".into(), "ghost".into());
        assert!(invalid(doc).iter().any(|x| x.rule == "label-closure"));
    }

    #[test]
    fn realizable_twists_prime3() {
        let d = prime3();
        let g = d.group();
        let chi = g.generator(0);
        let found = d.realizable_twists();
        let twists: Vec<Twist> = found.iter().map(|(t, _)| *t).collect();
        assert_eq!(twists, vec![g.identity(), chi, g.pow(chi, 2)]);
        assert!(found[0].1.is_identity());
        assert_eq!(found[1].1.permutation_part(), SignedPermutation::from_cycles(3, &[&[1, 2, 3]], &[]).unwrap());
        assert_eq!(found[2].1.permutation_part(), SignedPermutation::from_cycles(3, &[&[1, 3, 2]], &[]).unwrap());
        // each twist is realized by exactly 8 elements (one permutation, any signs)
        for (t, _) in &found {
            assert_eq!(d.realizing_elements(*t).len(), 8);
        }
    }

    #[test]
    fn realizable_twists_siegel() {
        let d = parse_datum(&fixtures::fixture_json("siegel1").unwrap(), ParseOptions::default()).unwrap();
        let found = d.realizable_twists();
        assert_eq!(found.len(), 1);
        assert_eq!(d.realizing_elements(found[0].0).len(), 2);
    }

    #[test]
    fn unmatched_blocks_do_not_realize_a_twist() {
        // π_1 = a, π_2 = b, with the swap admissible but b not a twist of a.
        let text = r#"{
          "group": {"r": 2, "blocks": [1, 1], "m": 1},
          "twists": {"generators": [{"name": "chi", "order": 2}]},
          "labels": [{"id": "a", "size": 1}, {"id": "b", "size": 1}],
          "actions": {},
          "pi": {"components": ["a", "b"], "tau": {"x_tau": ["chi"], "generic": true, "mult_one": true}},
          "delta_prime": [],
          "w_sigma_hat": "infer"
        }"#;
        let d = parse_datum(text, ParseOptions::default()).unwrap();
        let chi = d.group().generator(0);
        // chi fixes both labels, so it lies in X(pi) and is realized by id only
        assert!(d.realizable_twists().iter().all(|(_, w)| w.is_pure_sign_change()));
        assert_eq!(d.x_pi(), vec![d.group().identity(), chi]);
    }

    #[test]
    fn inference_examples() {
        let d = prime3();
        let (set, warnings) = d.infer_w_sigma_hat();
        assert_eq!(set.len(), 3);
        assert!(warnings.is_empty());

        // m >= 2 with tau neither generic nor multiplicity one: nothing beyond X(pi)
        let mut doc = prime3().document;
        doc.pi.tau.generic = false;
        doc.pi.tau.mult_one = false;
        let d = InducingDatum::from_document(doc, ParseOptions::default()).unwrap();
        assert_eq!(d.w_sigma_hat, vec![d.group().identity()]);
        assert_eq!(d.warnings.len(), 1);
    }

    #[test]
    fn m_equal_one_takes_every_realizable_twist() {
        // the only realizing elements carry an odd number of signs in a cycle,
        // which the generic rule cannot use but m = 1 can
        let text = r#"{
          "group": {"r": 1, "blocks": [1], "m": 1},
          "twists": {"generators": [{"name": "chi", "order": 2}]},
          "labels": [{"id": "a", "size": 1}, {"id": "b", "size": 1}],
          "actions": {"chi": {"chi": {"a": "b", "b": "a"}}, "eps": {"a": "b", "b": "a"}},
          "pi": {"components": ["a"], "tau": {"x_tau": ["chi"], "generic": false, "mult_one": false}},
          "delta_prime": [],
          "w_sigma_hat": "infer"
        }"#;
        let d = parse_datum(text, ParseOptions::default()).unwrap();
        assert_eq!(d.w_sigma_hat.len(), 2);
        let generic = text.replace("\"m\": 1", "\"m\": 2").replace("\"generic\": false", "\"generic\": true");
        let d = parse_datum(&generic, ParseOptions::default()).unwrap();
        assert_eq!(d.w_sigma_hat, vec![d.group().identity()]);
    }

    #[test]
    fn strict_diff_rule_requires_the_converse() {
        let text = fixtures::fixture_json("gl-reducible").unwrap();
        let mut doc: DatumDocument = serde_json::from_str(&text).unwrap();
        assert!(parse_datum(&text, ParseOptions { strict_diff_rule: true }).is_ok());
        doc.delta_prime.clear();
        let err = InducingDatum::from_document(doc, ParseOptions { strict_diff_rule: true });
        match err {
            Err(DatumError::Invalid(v)) => assert!(v.iter().any(|x| x.rule == "delta-diff-strict")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn r_pi_must_be_sign_form() {
        let text = fixtures::fixture_json("gl-reducible").unwrap();
        let mut doc: DatumDocument = serde_json::from_str(&text).unwrap();
        doc.delta_prime.clear();
        // (1 2) now lies in R(pi)
        assert!(invalid(doc).iter().any(|x| x.rule == "r-pi-sign-form"));
    }

    #[test]
    fn validation_output_serializes_with_violations() {
        let doc = prime3().document;
        let out = ValidationOutput {
            document: doc.clone(),
            violations: vec![Violation::new("delta-diff", "delta_prime[0]", "x")],
        };
        let json = serde_json::to_string(&out).unwrap();
        let back: ValidationOutput = serde_json::from_str(&json).unwrap();
        assert_eq!(back, out);
        let plain: DatumDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(plain, doc);
    }
}

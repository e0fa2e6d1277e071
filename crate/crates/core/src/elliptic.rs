//! Elliptic constituents: `π(ρ)` is elliptic iff `θ_ρ` is nonzero somewhere
//! on `R(σ)_reg`, and appears in `i_{G,M}(σ)` with multiplicity `dim ρ`.

use serde::{Deserialize, Serialize};

use crate::datum::{InducingDatum, ParseOptions};
use crate::error::AnalysisError;
use crate::fixed_space::{regular_set, CoordinateModel};
use crate::fixtures::{prime_family_document, PRIME_FAMILY};
use crate::mackey::{character_table, CharacterTable, SemidirectPresentation};
use crate::rgroup::{analyze, RGroupAnalysis};
use crate::signed_weyl::SignedPermutation;

pub const SPLIT_COCYCLE_BANNER: &str =
    "split-cocycle assumed: tau is not marked generic, so the normalizing cocycle is taken to be trivial";
pub const SIEGEL_BANNER: &str =
    "Siegel Levi (r = 1, m = 0): R(sigma) is at most Z_2 and its nontrivial element C_1 is regular";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "element")]
pub enum EllipticWitness {
    /// A regular element where the character is nonzero.
    Regular(String),
    /// The character vanishes on every regular element.
    AllZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticComponent {
    pub irrep: usize,
    pub dim: usize,
    pub multiplicity: usize,
    pub elliptic: bool,
    pub witness: EllipticWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticReport {
    pub components: Vec<EllipticComponent>,
    pub regular_count: usize,
    pub has_elliptic: bool,
    pub all_elliptic: bool,
    pub mixed: bool,
    pub banners: Vec<String>,
}

impl EllipticReport {
    pub fn elliptic_count(&self) -> usize {
        self.components.iter().filter(|c| c.elliptic).count()
    }

    /// `(dim, elliptic)` pairs, sorted.
    pub fn split(&self) -> Vec<(usize, bool)> {
        let mut v: Vec<(usize, bool)> = self.components.iter().map(|c| (c.dim, c.elliptic)).collect();
        v.sort();
        v
    }
}

pub fn banners(d: &InducingDatum) -> Vec<String> {
    let mut out = Vec::new();
    if !d.pi.tau.generic {
        out.push(SPLIT_COCYCLE_BANNER.to_string());
    }
    if d.m == 0 && d.rank() == 1 {
        out.push(SIEGEL_BANNER.to_string());
    }
    out
}

/// Decides ellipticity by evaluating each character on `regulars`.
pub fn classify(
    presentation: &SemidirectPresentation,
    table: &CharacterTable,
    regulars: &[SignedPermutation],
    banners: Vec<String>,
) -> Result<EllipticReport, AnalysisError> {
    let group = &presentation.group;
    let regular_idx: Vec<usize> = regulars
        .iter()
        .map(|w| {
            group.index_of(w).ok_or_else(|| {
                AnalysisError::inconsistent("elliptic classification", "regular set inside R(sigma)", w.to_string())
            })
        })
        .collect::<Result<_, _>>()?;
    let mut components = Vec::new();
    for rho in &table.irreps {
        let witness = regular_idx.iter().find(|&&g| !table.field.is_zero(table.value(rho.id, g)));
        components.push(EllipticComponent {
            irrep: rho.id,
            dim: rho.dim,
            multiplicity: rho.dim,
            elliptic: witness.is_some(),
            witness: match witness {
                Some(&g) => EllipticWitness::Regular(group.element(g).to_string()),
                None => EllipticWitness::AllZero,
            },
        });
    }
    let total: usize = components.iter().map(|c| c.multiplicity * c.dim).sum();
    if total != group.order() {
        return Err(AnalysisError::inconsistent(
            "elliptic classification",
            "sum of multiplicity times dimension",
            format!("{total} != {}", group.order()),
        ));
    }
    let elliptic = components.iter().filter(|c| c.elliptic).count();
    Ok(EllipticReport {
        regular_count: regulars.len(),
        has_elliptic: elliptic > 0,
        all_elliptic: elliptic == components.len(),
        mixed: elliptic > 0 && elliptic < components.len(),
        components,
        banners,
    })
}

/// Existence of `s_χ C_B ∈ R(σ)` with `s_χ` an `r`-cycle and `|B|` odd, read
/// off the χ-table: the elements over `χ` are `w_χ C_S` with `S ⊆ B(π)`.
pub fn has_elliptic_closed_form(a: &RGroupAnalysis) -> bool {
    a.chi_table.iter().any(|e| {
        e.s_chi.is_full_cycle() && (e.w_chi.sign_count() % 2 == 1 || !a.b_pi.is_empty())
    })
}

/// `R(σ)_reg ≠ ∅`, cross-checked against the closed form.
pub fn has_elliptic(d: &InducingDatum, a: &RGroupAnalysis) -> Result<bool, AnalysisError> {
    let model = CoordinateModel::new(d.blocks.clone());
    let direct = !regular_set(&model, &a.r_sigma)?.is_empty();
    if direct != has_elliptic_closed_form(a) {
        return Err(AnalysisError::inconsistent(
            "elliptic classification",
            "regular set nonempty iff an r-cycle s_chi with |B| odd",
            format!("regular set nonempty = {direct}"),
        ));
    }
    Ok(direct)
}

/// Every stage from a validated datum to the elliptic report.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub analysis: RGroupAnalysis,
    pub presentation: SemidirectPresentation,
    pub table: CharacterTable,
    pub regulars: Vec<SignedPermutation>,
    pub report: EllipticReport,
}

pub fn run_pipeline(d: &InducingDatum) -> Result<Pipeline, AnalysisError> {
    let analysis = analyze(d)?;
    let presentation = SemidirectPresentation::from_analysis(&analysis)?;
    let table = character_table(&presentation)?;
    let model = CoordinateModel::new(d.blocks.clone());
    let regulars = regular_set(&model, &analysis.r_sigma)?;
    let report = classify(&presentation, &table, &regulars, banners(d))?;
    if report.has_elliptic != has_elliptic(d, &analysis)? {
        return Err(AnalysisError::inconsistent(
            "elliptic classification",
            "some component elliptic iff regular set nonempty",
            format!("{} regular elements", regulars.len()),
        ));
    }
    Ok(Pipeline { analysis, presentation, table, regulars, report })
}

pub fn prime_family_report(p: u32) -> Result<EllipticReport, AnalysisError> {
    if !PRIME_FAMILY.contains(&p) {
        return Err(AnalysisError::Unsupported(format!("prime family is available for p in {PRIME_FAMILY:?}, not {p}")));
    }
    let doc = prime_family_document(p).map_err(|e| AnalysisError::Unsupported(e.to_string()))?;
    let d = InducingDatum::from_document(doc, ParseOptions::default())
        .map_err(|e| AnalysisError::inconsistent("prime family", "fixture validates", e.to_string()))?;
    Ok(run_pipeline(&d)?.report)
}

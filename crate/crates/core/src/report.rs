//! The analysis report: a serializable document with every element written in
//! `s·C_B` normal form, and its plain-text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::datum::{DatumDocument, InducingDatum, ParseOptions};
use crate::elliptic::{run_pipeline, EllipticReport, Pipeline};
use crate::error::AnalysisError;
use crate::fixtures::{fixture_document, FIXTURE_NAMES};
use crate::mackey::induced_character;
use crate::oracle::{run_on_datum, ScopeResult};
use crate::rgroup::RGroupAnalysis;
use crate::signed_weyl::SignedPermutation;

pub const GAMMA_NOTE: &str = "Gamma is built from the least twist of each coset of W^(sigma)/X(pi); \
     another choice of representatives can give a different set of elements, but w_chi depends only on the coset \
     and the isomorphism class of Gamma does not change";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub datum: DatumDocument,
    pub warnings: Vec<String>,
    pub banners: Vec<String>,
    pub r_group: RGroupSection,
    pub character_table: CharacterTableSection,
    pub regular_set: Vec<String>,
    pub elliptic: EllipticReport,
    /// Present with `--with-oracle`.
    pub oracle: Option<OracleSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RGroupSection {
    pub rank: usize,
    pub blocks: Vec<u32>,
    /// For example `Z_3 x| Z_2^3`.
    pub structure: String,
    pub w_sigma_hat: Vec<String>,
    pub x_pi: Vec<String>,
    pub w_sigma: Vec<String>,
    pub w_prime: Vec<String>,
    pub w_pi: Vec<String>,
    pub r_pi: Vec<String>,
    /// 1-based.
    pub b_pi: Vec<usize>,
    pub r_sigma: Vec<String>,
    pub r_pi_sigma: Vec<String>,
    pub chi_table: Vec<ChiRow>,
    pub gamma: Vec<String>,
    pub gamma_note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiRow {
    pub chi: String,
    pub coset: Vec<String>,
    pub s_constructed: String,
    pub constructed: String,
    pub construction_in_r: bool,
    pub s_chi: String,
    /// 1-based.
    pub b_chi: Vec<usize>,
    pub w_chi: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableSection {
    /// Values are polynomials in `z = exp(2 pi i / field_order)`.
    pub field_order: u32,
    pub classes: Vec<ClassRow>,
    pub irreps: Vec<IrrepRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub representative: String,
    pub size: usize,
    pub regular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepRow {
    pub id: usize,
    /// Blocks `i` (1-based) with `kappa(C_i) = -1`.
    pub kappa: Vec<usize>,
    pub orbit: Vec<Vec<usize>>,
    pub stabilizer: Vec<String>,
    /// Exponents of `z`, aligned with `stabilizer`.
    pub lambda: Vec<u32>,
    pub dim: usize,
    /// One value per class.
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub suites: Vec<ScopeResult>,
    /// Shipped-fixture values, when the input is a shipped fixture.
    pub fixture: Option<String>,
    pub expectations: Vec<Expectation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub claim: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl ReportDocument {
    pub fn all_passed(&self) -> bool {
        self.oracle
            .as_ref()
            .is_none_or(|o| o.suites.iter().all(|s| s.passed) && o.expectations.iter().all(|e| e.passed))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn strings(elems: &[SignedPermutation]) -> Vec<String> {
    elems.iter().map(|w| w.to_string()).collect()
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// `Z_k x| Z_2^m` when `Γ` is cyclic, `Γ(order k) x| Z_2^m` otherwise.
pub fn structure_name(a: &RGroupAnalysis) -> String {
    let k = a.gamma.len();
    let cyclic = a.gamma.iter().any(|g| g.order() == k);
    let gamma = match (k, cyclic) {
        (1, _) => String::new(),
        (_, true) => format!("Z_{k}"),
        (_, false) => format!("Gamma(order {k})"),
    };
    let normal = match a.b_pi.len() {
        0 => String::new(),
        1 => "Z_2".to_string(),
        m => format!("Z_2^{m}"),
    };
    match (gamma.is_empty(), normal.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => gamma,
        (true, false) => normal,
        (false, false) => format!("{gamma} x| {normal}"),
    }
}

fn r_group_section(d: &InducingDatum, a: &RGroupAnalysis) -> RGroupSection {
    let words = |set: &[crate::twist_labels::Twist]| set.iter().map(|&t| d.format_twist(t)).collect::<Vec<_>>();
    RGroupSection {
        rank: a.rank,
        blocks: d.blocks.clone(),
        structure: structure_name(a),
        w_sigma_hat: words(&a.w_sigma_hat),
        x_pi: words(&a.x_pi),
        w_sigma: strings(&a.w_sigma),
        w_prime: strings(&a.w_prime),
        w_pi: strings(&a.w_pi),
        r_pi: strings(&a.r_pi),
        b_pi: one_based(&a.b_pi),
        r_sigma: strings(&a.r_sigma),
        r_pi_sigma: strings(&a.r_pi_sigma),
        chi_table: a
            .chi_table
            .iter()
            .map(|e| ChiRow {
                chi: d.format_twist(e.chi),
                coset: words(&e.coset),
                s_constructed: e.s_constructed.to_string(),
                constructed: e.constructed.to_string(),
                construction_in_r: e.construction_in_r,
                s_chi: e.s_chi.to_string(),
                b_chi: one_based(&e.b_chi),
                w_chi: e.w_chi.to_string(),
            })
            .collect(),
        gamma: strings(&a.gamma),
        gamma_note: GAMMA_NOTE.to_string(),
    }
}

fn character_section(p: &Pipeline) -> CharacterTableSection {
    let g = &p.presentation.group;
    let f = &p.table.field;
    CharacterTableSection {
        field_order: f.order(),
        classes: p
            .table
            .classes
            .iter()
            .map(|c| ClassRow {
                representative: g.element(c[0]).to_string(),
                size: c.len(),
                regular: p.regulars.binary_search(g.element(c[0])).is_ok(),
            })
            .collect(),
        irreps: p
            .table
            .irreps
            .iter()
            .map(|rho| IrrepRow {
                id: rho.id,
                kappa: mask_indices(rho.kappa),
                orbit: rho.orbit.iter().map(|&k| mask_indices(k)).collect(),
                stabilizer: rho.stabilizer.iter().map(|&x| g.element(x).to_string()).collect(),
                lambda: rho.lambda.clone(),
                dim: rho.dim,
                values: p.table.values[rho.id].iter().map(|v| f.format(v)).collect(),
            })
            .collect(),
    }
}

fn expect(out: &mut Vec<Expectation>, claim: &str, expected: impl ToString, actual: impl ToString) {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    out.push(Expectation { claim: claim.to_string(), passed: expected == actual, expected, actual });
}

/// The shipped fixture this datum is, if any.
pub fn identify_fixture(doc: &DatumDocument) -> Option<&'static str> {
    FIXTURE_NAMES.iter().copied().find(|name| fixture_document(name).is_ok_and(|f| &f == doc))
}

fn dims_summary(r: &EllipticReport, elliptic: bool) -> String {
    let mut dims: Vec<usize> = r.components.iter().filter(|c| c.elliptic == elliptic).map(|c| c.multiplicity).collect();
    dims.sort_unstable();
    format!("{dims:?}")
}

/// Known values for the shipped fixtures.
pub fn fixture_expectations(name: &str, p: &Pipeline) -> Vec<Expectation> {
    let a = &p.analysis;
    let r = &p.report;
    let mut out = Vec::new();
    let prime = name.strip_prefix("prime").and_then(|s| s.parse::<usize>().ok());
    if let Some(q) = prime {
        let non = ((1usize << q) - 2) / q;
        expect(&mut out, "|R(sigma)|", q << q, a.r_sigma.len());
        expect(&mut out, "structure", format!("Z_{q} x| Z_2^{q}"), structure_name(a));
        expect(&mut out, "number of irreducibles", 2 * q + non, p.table.irreps.len());
        expect(&mut out, "elliptic multiplicities", format!("{:?}", vec![1; 2 * q]), dims_summary(r, true));
        expect(&mut out, "non-elliptic multiplicities", format!("{:?}", vec![q; non]), dims_summary(r, false));
        expect(&mut out, "mixed elliptic spectrum", true, r.mixed);
    }
    match name {
        "prime3" => {
            expect(&mut out, "|W(sigma)|", 24, a.w_sigma.len());
            expect(&mut out, "B(pi)", "[1, 2, 3]", format!("{:?}", one_based(&a.b_pi)));
            expect(&mut out, "Gamma", "[\"1\", \"(1 2 3)\", \"(1 3 2)\"]", format!("{:?}", strings(&a.gamma)));
            expect(&mut out, "regular elements", 8, p.regulars.len());
            let field = &p.table.field;
            let group = &p.presentation.group;
            let zero_on_regular = p.table.irreps.iter().filter(|rho| rho.dim == 3).all(|rho| {
                p.regulars.iter().all(|w| {
                    let g = group.index_of(w).expect("regular elements lie in R(sigma)");
                    field.is_zero(&induced_character(&p.presentation, field, rho, g))
                })
            });
            expect(&mut out, "3-dimensional characters vanish on regular elements", true, zero_on_regular);
        }
        "gl-reducible" => {
            expect(&mut out, "|W'|", 2, a.w_prime.len());
            expect(&mut out, "|R(sigma)|", 1, a.r_sigma.len());
            expect(&mut out, "components", "[false]", format!("{:?}", r.components.iter().map(|c| c.elliptic).collect::<Vec<_>>()));
        }
        "siegel1" => {
            expect(&mut out, "|R(sigma)|", 2, a.r_sigma.len());
            expect(&mut out, "all components elliptic", true, r.all_elliptic);
            expect(&mut out, "components", 2, r.components.len());
        }
        "signonly" => {
            let e = a.chi_table.iter().find(|e| !e.w_chi.is_identity());
            expect(&mut out, "s_chi", "1", e.map_or("-".into(), |e| e.s_chi.to_string()));
            expect(&mut out, "w_chi", "C{1}", e.map_or("-".into(), |e| e.w_chi.to_string()));
        }
        _ => {}
    }
    out
}

pub fn build_report(d: &InducingDatum, with_oracle: bool) -> Result<ReportDocument, AnalysisError> {
    let p = run_pipeline(d)?;
    let oracle = with_oracle.then(|| {
        let fixture = identify_fixture(&d.document);
        OracleSection {
            suites: run_on_datum(d, &p.analysis),
            fixture: fixture.map(str::to_string),
            expectations: fixture.map(|f| fixture_expectations(f, &p)).unwrap_or_default(),
        }
    });
    Ok(ReportDocument {
        datum: d.document.clone(),
        warnings: d.warnings.clone(),
        banners: p.report.banners.clone(),
        r_group: r_group_section(d, &p.analysis),
        character_table: character_section(&p),
        regular_set: strings(&p.regulars),
        elliptic: p.report.clone(),
        oracle,
    })
}

/// Parses and reports in one step.
pub fn report_from_json(text: &str, options: ParseOptions, with_oracle: bool) -> Result<ReportDocument, String> {
    let d = crate::datum::parse_datum(text, options).map_err(|e| e.to_string())?;
    build_report(&d, with_oracle).map_err(|e| e.to_string())
}

fn list(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

pub fn render_text(rep: &ReportDocument) -> String {
    let mut s = String::new();
    let g = &rep.r_group;
    let _ = writeln!(s, "rank r = {}, blocks {:?}, m = {}", g.rank, g.blocks, rep.datum.group.m);
    for b in &rep.banners {
        let _ = writeln!(s, "note: {b}");
    }
    for w in &rep.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = writeln!(s, "\nW^(sigma) = {}   X(pi) = {}", list(&g.w_sigma_hat), list(&g.x_pi));
    let _ = writeln!(s, "|W(sigma)| = {}   |W'| = {}   |W(pi)| = {}", g.w_sigma.len(), g.w_prime.len(), g.w_pi.len());
    let b_pi: Vec<String> = g.b_pi.iter().map(|i| i.to_string()).collect();
    let _ = writeln!(s, "R(pi) = <C_i : i in B(pi)>, B(pi) = {}", list(&b_pi));
    let _ = writeln!(s, "R(sigma) = {}  (order {})", g.structure, g.r_sigma.len());
    if g.r_sigma.len() <= 64 {
        let _ = writeln!(s, "  {}", list(&g.r_sigma));
    }
    let _ = writeln!(s, "\nchi table:");
    for row in &g.chi_table {
        let b: Vec<String> = row.b_chi.iter().map(|i| i.to_string()).collect();
        let _ = write!(s, "  {:<10} s_chi = {:<12} B_chi = {:<10} w_chi = {}", row.chi, row.s_chi, list(&b), row.w_chi);
        if !row.construction_in_r {
            let _ = write!(s, "  (chain construction gave {}, outside R(sigma))", row.constructed);
        }
        s.push('\n');
    }
    let _ = writeln!(s, "Gamma = {}", list(&g.gamma));
    let _ = writeln!(s, "  {}", g.gamma_note);

    let t = &rep.character_table;
    let _ = writeln!(s, "\ncharacter table (z = exp(2 pi i / {})):", t.field_order);
    for (k, c) in t.classes.iter().enumerate() {
        let _ = writeln!(s, "  class {k}: {} x{}{}", c.representative, c.size, if c.regular { "  regular" } else { "" });
    }
    for rho in &t.irreps {
        let kappa: Vec<String> = rho.kappa.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(s, "  rho_{} dim {} kappa = {}: [{}]", rho.id, rho.dim, list(&kappa), rho.values.join(", "));
    }
    let _ = writeln!(s, "\nregular set ({} elements): {}", rep.regular_set.len(), list(&rep.regular_set));
    let e = &rep.elliptic;
    let _ = writeln!(s, "\nconstituents pi(rho) of the induced representation:");
    for c in &e.components {
        let why = match &c.witness {
            crate::elliptic::EllipticWitness::Regular(w) => format!("character nonzero at {w}"),
            crate::elliptic::EllipticWitness::AllZero => "character vanishes on the regular set".to_string(),
        };
        let _ = writeln!(
            s,
            "  rho_{}: multiplicity {}, {} ({why})",
            c.irrep,
            c.multiplicity,
            if c.elliptic { "elliptic" } else { "not elliptic" }
        );
    }
    let _ = writeln!(
        s,
        "elliptic: {} of {}; mixed = {}",
        e.components.iter().filter(|c| c.elliptic).count(),
        e.components.len(),
        e.mixed
    );
    if let Some(o) = &rep.oracle {
        let _ = writeln!(s, "\noracle:");
        for r in &o.suites {
            let _ = writeln!(s, "  {}", r.summary_line());
            if let Some(c) = &r.counterexample {
                let _ = writeln!(s, "    counterexample: {}", c.detail);
            }
        }
        if let Some(f) = &o.fixture {
            let _ = writeln!(s, "  fixture {f}:");
            for x in &o.expectations {
                let _ = writeln!(
                    s,
                    "    {} {}: expected {}, got {}",
                    if x.passed { "PASS" } else { "FAIL" },
                    x.claim,
                    x.expected,
                    x.actual
                );
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture_json;

    fn report(name: &str, oracle: bool) -> ReportDocument {
        report_from_json(&fixture_json(name).unwrap(), ParseOptions::default(), oracle).unwrap()
    }

    #[test]
    fn json_round_trip() {
        for name in ["prime3", "siegel1", "signonly"] {
            let rep = report(name, true);
            let back: ReportDocument = serde_json::from_str(&rep.to_json()).unwrap();
            assert_eq!(back, rep);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(report("prime3", true).to_json(), report("prime3", true).to_json());
        assert_eq!(render_text(&report("prime3", false)), render_text(&report("prime3", false)));
    }

    #[test]
    fn prime3_expectations() {
        let rep = report("prime3", true);
        let o = rep.oracle.as_ref().unwrap();
        assert_eq!(o.fixture.as_deref(), Some("prime3"));
        assert!(o.expectations.len() >= 10);
        assert!(rep.all_passed(), "{:?}", o);
        assert_eq!(rep.r_group.structure, "Z_3 x| Z_2^3");
        assert_eq!(rep.character_table.classes.len(), 8);
    }

    #[test]
    fn every_fixture_meets_its_expectations() {
        for name in FIXTURE_NAMES.iter().filter(|n| **n != "prime7") {
            let rep = report(name, true);
            assert!(rep.all_passed(), "{name}: {:?}", rep.oracle);
        }
    }

    #[test]
    fn structure_names() {
        assert_eq!(report("gl-reducible", false).r_group.structure, "1");
        assert_eq!(report("siegel1", false).r_group.structure, "Z_2");
        assert_eq!(report("signonly", false).r_group.structure, "Z_2 x| Z_2");
    }

    #[test]
    fn text_mentions_the_split() {
        let text = render_text(&report("prime3", false));
        assert!(text.contains("R(sigma) = Z_3 x| Z_2^3  (order 24)"));
        assert!(text.contains("elliptic: 6 of 8; mixed = true"));
        assert!(render_text(&report("siegel1", false)).contains("note: Siegel"));
    }
}
